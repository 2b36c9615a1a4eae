//! Todd-Coxeter coset enumeration, HLT strategy.
//!
//! Rows are scanned in order; every relator is traced from each live row and
//! the row is then filled. When the table reaches `max_cosets` rows a
//! lookahead pass (scan without defining) runs and dead rows are compacted
//! away; only if no row is freed does the enumeration stop with
//! [`TableStatus::Overflow`]. Completed tables are renumbered in BFS order
//! from the subgroup coset, so the result depends only on the input.

use std::fmt::Write as _;

use super::presentation::Presentation;
use super::word::Word;
use crate::permgroup::{PermError, PermGroup, Permutation};

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableStatus {
    Complete,
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("max_cosets must be at least 1")]
    ZeroCap,
    #[error("subgroup generator uses an undeclared generator")]
    BadSubgroupWord,
    #[error("coset table overflowed its bound of {0} rows")]
    Overflow(usize),
    #[error("the group does not act regularly on the cosets (subgroup is not trivial)")]
    NotRegular,
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A coset table: `entry(c, col)` is the image of coset `c` under column
/// `col`, where column `2g` is generator `g` and `2g + 1` its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generators: Vec<String>,
    rows: usize,
    entries: Vec<u32>,
    status: TableStatus,
}

impl CosetTable {
    pub fn status(&self) -> TableStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == TableStatus::Complete
    }

    /// Number of live cosets (the index when complete).
    pub fn len(&self) -> usize {
        self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    fn cols(&self) -> usize {
        2 * self.generators.len()
    }

    pub fn entry(&self, coset: usize, col: usize) -> Option<usize> {
        match self.entries[coset * self.cols() + col] {
            UNDEF => None,
            v => Some(v as usize),
        }
    }

    /// Follows `word` from `coset`; `None` if some entry is undefined.
    pub fn trace(&self, coset: usize, word: &Word) -> Option<usize> {
        word.letters()
            .iter()
            .try_fold(coset, |c, l| self.entry(c, l.column()))
    }

    /// Header of generator names and inverses, then one row per coset.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self
            .generators
            .iter()
            .flat_map(|g| [g.clone(), format!("{g}^-1")])
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for c in 0..self.rows {
            let row: Vec<String> = (0..self.cols())
                .map(|col| self.entry(c, col).map_or(String::new(), |v| v.to_string()))
                .collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    /// The permutation induced by generator `g` on the cosets.
    pub fn generator_permutation(&self, g: usize) -> Result<Permutation, EnumerationError> {
        if !self.is_complete() {
            return Err(EnumerationError::Overflow(self.rows));
        }
        let images = (0..self.rows)
            .map(|c| self.entry(c, 2 * g).expect("complete table"))
            .collect();
        Ok(Permutation::from_images(images)?)
    }
}

/// Enumerates the cosets of `<subgroup>` in the group given by `pres`.
pub fn enumerate_cosets(
    pres: &Presentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, EnumerationError> {
    if max_cosets == 0 {
        return Err(EnumerationError::ZeroCap);
    }
    let ngens = pres.generators().len();
    if subgroup.iter().any(|w| !w.uses_only(ngens)) {
        return Err(EnumerationError::BadSubgroupWord);
    }
    let relators: Vec<Vec<usize>> = pres
        .relators()
        .iter()
        .map(|r| r.cyclic_reduce().letters().iter().map(|l| l.column()).collect())
        .filter(|r: &Vec<usize>| !r.is_empty())
        .collect();
    let subgens: Vec<Vec<usize>> = subgroup
        .iter()
        .map(|w| w.free_reduce().letters().iter().map(|l| l.column()).collect())
        .collect();

    let mut e = Enumerator::new(2 * ngens, max_cosets);
    let complete = e.run(&relators, &subgens);
    Ok(e.finish(pres.generators().to_vec(), complete))
}

/// Permutation action of the generators on a complete table whose subgroup
/// is trivial, as a group acting regularly on the cosets.
pub fn regular_representation(table: &CosetTable) -> Result<PermGroup, EnumerationError> {
    if !table.is_complete() {
        return Err(EnumerationError::Overflow(table.len()));
    }
    let gens = (0..table.generators().len())
        .map(|g| Ok((table.generators()[g].clone(), table.generator_permutation(g)?)))
        .collect::<Result<Vec<_>, EnumerationError>>()?;
    let group = PermGroup::generate(table.len(), gens, table.len())
        .map_err(|_| EnumerationError::NotRegular)?;
    if group.order() != table.len() {
        return Err(EnumerationError::NotRegular);
    }
    Ok(group)
}

struct Full;

struct Enumerator {
    cols: usize,
    cap: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(cols: usize, cap: usize) -> Self {
        let mut e = Enumerator {
            cols,
            cap,
            table: Vec::new(),
            parent: Vec::new(),
            queue: Vec::new(),
        };
        e.alloc();
        e
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    fn alloc(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        id
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.cols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.cols + col] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, col: usize) -> Result<(), Full> {
        if self.allocated() >= self.cap {
            return Err(Full);
        }
        let d = self.alloc();
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, k: u32, l: u32) {
        let k = self.rep(k);
        let l = self.rep(l);
        if k == l {
            return;
        }
        let (lo, hi) = if k < l { (k, l) } else { (l, k) };
        self.parent[hi as usize] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                self.set(f, x ^ 1, UNDEF);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let e1x = self.get(e1, x);
                if e1x != UNDEF {
                    self.merge(f1, e1x);
                } else {
                    let f1x = self.get(f1, x ^ 1);
                    if f1x != UNDEF {
                        self.merge(e1, f1x);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x ^ 1, e1);
                    }
                }
            }
        }
    }

    /// Traces `w` from `c` forwards and backwards; fills the gap with new
    /// cosets when `fill` is set. Returns `Err(Full)` only when filling.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                let next = self.get(f, w[i]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                let next = self.get(b, w[j as usize] ^ 1);
                if next == UNDEF {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// One pass of scanning without definitions over every live row.
    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        let mut c = 0u32;
        while (c as usize) < self.allocated() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
            c += 1;
        }
    }

    /// Removes dead rows, preserving order. Returns the old-to-new map.
    fn compact(&mut self) -> Vec<u32> {
        let n = self.allocated();
        let mut map = vec![UNDEF; n];
        let mut next = 0u32;
        for c in 0..n as u32 {
            if self.is_live(c) {
                map[c as usize] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..n as u32 {
            if map[c as usize] == UNDEF {
                continue;
            }
            for x in 0..self.cols {
                let v = self.get(c, x);
                let nv = if v == UNDEF {
                    UNDEF
                } else {
                    map[self.rep(v) as usize]
                };
                table.push(nv);
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        map
    }

    /// Runs HLT. Returns whether the table closed.
    fn run(&mut self, relators: &[Vec<usize>], subgens: &[Vec<usize>]) -> bool {
        for w in subgens {
            if self.scan(0, w, true).is_err() && !self.recover(relators, None).0 {
                return false;
            }
        }
        let mut c = 0u32;
        while (c as usize) < self.allocated() {
            if self.is_live(c) && self.process_row(c, relators).is_err() {
                let (ok, new_c) = self.recover(relators, Some(c));
                if !ok {
                    return false;
                }
                c = new_c.expect("row position requested");
                continue;
            }
            c += 1;
        }
        true
    }

    fn process_row(&mut self, c: u32, relators: &[Vec<usize>]) -> Result<(), Full> {
        for r in relators {
            if !self.is_live(c) {
                return Ok(());
            }
            self.scan(c, r, true)?;
        }
        for x in 0..self.cols {
            if !self.is_live(c) {
                return Ok(());
            }
            if self.get(c, x) == UNDEF {
                self.define(c, x)?;
            }
        }
        Ok(())
    }

    /// Lookahead plus compaction after the table filled up. Returns whether
    /// space was freed and, if asked, where row `c` (or its successor) moved.
    fn recover(&mut self, relators: &[Vec<usize>], c: Option<u32>) -> (bool, Option<u32>) {
        self.lookahead(relators);
        let before = self.allocated();
        let map = self.compact();
        let freed = self.allocated() < before;
        let new_c = c.map(|c| {
            (c as usize..map.len())
                .map(|i| map[i])
                .find(|&v| v != UNDEF)
                .unwrap_or(self.allocated() as u32)
        });
        (freed, new_c)
    }

    fn finish(mut self, generators: Vec<String>, complete: bool) -> CosetTable {
        self.compact();
        let rows = self.allocated();
        let complete = complete && self.table.iter().all(|&v| v != UNDEF);
        if !complete {
            return CosetTable {
                generators,
                rows,
                entries: self.table,
                status: TableStatus::Overflow,
            };
        }
        // BFS renumbering from the subgroup coset
        let mut order = vec![UNDEF; rows];
        let mut seq = Vec::with_capacity(rows);
        order[0] = 0;
        seq.push(0u32);
        let mut i = 0;
        while i < seq.len() {
            let c = seq[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(c, x);
                if order[d as usize] == UNDEF {
                    order[d as usize] = seq.len() as u32;
                    seq.push(d);
                }
            }
        }
        let mut entries = Vec::with_capacity(rows * self.cols);
        for &c in &seq {
            for x in 0..self.cols {
                entries.push(order[self.get(c, x) as usize]);
            }
        }
        CosetTable {
            generators,
            rows,
            entries,
            status: TableStatus::Complete,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroups::parse_presentation;

    fn assert_relators_close(pres: &Presentation, table: &CosetTable) {
        for c in 0..table.len() {
            for r in pres.relators() {
                assert_eq!(table.trace(c, r), Some(c), "relator fails at coset {c}");
            }
        }
    }

    #[test]
    fn cyclic_group_of_order_three() {
        let p = parse_presentation("gens: a; relators: a^3").unwrap();
        let t = enumerate_cosets(&p, &[], 100).unwrap();
        assert!(t.is_complete());
        assert_eq!(t.len(), 3);
        let g = regular_representation(&t).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.generator("a").unwrap().cycles(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn s4_presentation_has_24_cosets() {
        let p = parse_presentation("gens: a,b; relators: a^4, b^2, (a*b)^3").unwrap();
        let t = enumerate_cosets(&p, &[], 100).unwrap();
        assert_eq!(t.len(), 24);
        assert_relators_close(&p, &t);
        let g = regular_representation(&t).unwrap();
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn subgroup_index() {
        let p = parse_presentation("gens: a,b; relators: a^4, b^2, (a*b)^3").unwrap();
        let h = p.parse_word("a").unwrap();
        let t = enumerate_cosets(&p, &[h], 100).unwrap();
        assert_eq!(t.len(), 6);
        assert_relators_close(&p, &t);
        assert!(matches!(
            regular_representation(&t),
            Err(EnumerationError::NotRegular)
        ));
    }

    #[test]
    fn overflow_is_reported() {
        let p = parse_presentation("gens: a,b; relators: a^4, b^2, (a*b)^3").unwrap();
        let t = enumerate_cosets(&p, &[], 10).unwrap();
        assert_eq!(t.status(), TableStatus::Overflow);
        assert!(matches!(
            regular_representation(&t),
            Err(EnumerationError::Overflow(_))
        ));
    }

    #[test]
    fn infinite_group_overflows() {
        let p = parse_presentation("gens: a,b; relators: [a,b]").unwrap();
        let t = enumerate_cosets(&p, &[], 500).unwrap();
        assert_eq!(t.status(), TableStatus::Overflow);
    }

    #[test]
    fn empty_relators_with_subgroup() {
        let p = parse_presentation("gens: a; relators:").unwrap();
        let t = enumerate_cosets(&p, &[p.parse_word("a").unwrap()], 10).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.is_complete());
    }

    #[test]
    fn deterministic_tables() {
        let p = parse_presentation("gens: a,b; relators: a^6, b^2, (a*b)^3, [a^2, b^-1*a^2*b]")
            .unwrap();
        let t1 = enumerate_cosets(&p, &[], 1000).unwrap();
        let t2 = enumerate_cosets(&p, &[], 1000).unwrap();
        assert_eq!(t1, t2);
        assert_relators_close(&p, &t1);
    }

    #[test]
    fn zero_cap_rejected() {
        let p = parse_presentation("gens: a; relators: a^3").unwrap();
        assert_eq!(
            enumerate_cosets(&p, &[], 0).unwrap_err(),
            EnumerationError::ZeroCap
        );
    }

    #[test]
    fn csv_export() {
        let p = parse_presentation("gens: a; relators: a^3").unwrap();
        let t = enumerate_cosets(&p, &[], 10).unwrap();
        assert_eq!(t.to_csv(), "a,a^-1\n1,2\n2,0\n0,1\n");
    }

    #[test]
    fn tight_cap_recovers_through_lookahead() {
        let p = parse_presentation("gens: a,b; relators: a^4, b^2, (a*b)^3").unwrap();
        let t = enumerate_cosets(&p, &[], 30).unwrap();
        assert!(t.is_complete());
        assert_eq!(t.len(), 24);
    }
}
