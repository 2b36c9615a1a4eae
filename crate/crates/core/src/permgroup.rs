//! Finite permutation groups at desk scale.
//!
//! Permutations act on the right: `p.then(&q)` (also `&p * &q`) applies `p`
//! first. Conjugation is `x^g = g^-1 x g`. Element sets are stored sorted
//! lexicographically by image array, so the identity is always element 0.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use crate::numtheory;

/// Default cap on the number of elements a closure may produce.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("permutations of different degrees ({0} and {1})")]
    DegreeMismatch(usize, usize),
    #[error("image array is not a bijection")]
    NotBijection,
    #[error("generating pair does not generate the group")]
    PairDoesNotGenerate,
    #[error("element is not in the group")]
    NotInGroup,
    #[error("subgroup is not normal")]
    NotNormal,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijection);
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (idx, &pt) in cycle.iter().enumerate() {
                if pt >= degree {
                    return Err(PermError::NotBijection);
                }
                images[pt] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 self g`.
    pub fn conj(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&s, &o)| other.images[s as usize] == self.images[o as usize])
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `k >= 1` with `self^k = 1`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| numtheory::lcm(acc, c.len() as u64))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

/// Cycle notation with 1-based points, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// All products of `gens`, sorted lexicographically. `degree` is only used
/// when `gens` is empty.
pub fn closure(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>, PermError> {
    let degree = gens.first().map_or(degree, Permutation::degree);
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(PermError::DegreeMismatch(degree, g.degree()));
    }
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(PermError::CapExceeded { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(elements)
}

/// Decides whether `from[i] -> to[i]` extends to an isomorphism
/// `<from> -> <to>`.
///
/// Walks the subgroup of the direct product generated by the pairs
/// `(from[i], to[i])`. That subgroup is the graph of an isomorphism exactly
/// when neither projection identifies two of its elements, so the walk stops
/// at the first collision.
pub fn pair_extends(from: &[Permutation], to: &[Permutation]) -> bool {
    assert_eq!(from.len(), to.len(), "generator lists differ in length");
    let (Some(f0), Some(t0)) = (from.first(), to.first()) else {
        return true;
    };
    let id_from = Permutation::identity(f0.degree());
    let id_to = Permutation::identity(t0.degree());
    let mut forward: HashMap<Permutation, Permutation> = HashMap::new();
    let mut backward: HashSet<Permutation> = HashSet::new();
    forward.insert(id_from.clone(), id_to.clone());
    backward.insert(id_to.clone());
    let mut queue = VecDeque::from([(id_from, id_to)]);
    while let Some((x, y)) = queue.pop_front() {
        for (g, h) in from.iter().zip(to) {
            let xg = x.then(g);
            let yh = y.then(h);
            match forward.get(&xg) {
                Some(existing) => {
                    if *existing != yh {
                        return false;
                    }
                }
                None => {
                    if !backward.insert(yh.clone()) {
                        return false;
                    }
                    forward.insert(xg.clone(), yh.clone());
                    queue.push_back((xg, yh));
                }
            }
        }
    }
    true
}

/// A permutation group with named generators and its cached element set.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<(String, Permutation)>,
    elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn generate(
        degree: usize,
        generators: Vec<(String, Permutation)>,
        cap: usize,
    ) -> Result<Self, PermError> {
        let perms: Vec<Permutation> = generators.iter().map(|(_, p)| p.clone()).collect();
        let elements = closure(degree, &perms, cap)?;
        let degree = elements[0].degree();
        Ok(PermGroup {
            degree,
            generators,
            elements,
        })
    }

    /// Generators get the names `g0, g1, ...`.
    pub fn from_perms(degree: usize, perms: &[Permutation], cap: usize) -> Result<Self, PermError> {
        let named = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("g{i}"), p.clone()))
            .collect();
        PermGroup::generate(degree, named, cap)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[(String, Permutation)] {
        &self.generators
    }

    pub fn generator_perms(&self) -> Vec<Permutation> {
        self.generators.iter().map(|(_, p)| p.clone()).collect()
    }

    pub fn generator(&self, name: &str) -> Option<&Permutation> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.elements.binary_search(p).is_ok()
    }

    /// Position of `p` in the sorted element list.
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// Whether `gens` generate the whole group.
    pub fn is_generated_by(&self, gens: &[Permutation]) -> Result<bool, PermError> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Ok(false);
        }
        let sub = closure(self.degree, gens, self.order())?;
        Ok(sub.len() == self.order())
    }

    /// Whether `a -> a2, b -> b2` extends to an automorphism of the group.
    pub fn extends_to_isomorphism(
        &self,
        from: (&Permutation, &Permutation),
        to: (&Permutation, &Permutation),
    ) -> Result<bool, PermError> {
        let from = [from.0.clone(), from.1.clone()];
        let to = [to.0.clone(), to.1.clone()];
        if !self.is_generated_by(&from)? || !self.is_generated_by(&to)? {
            return Err(PermError::PairDoesNotGenerate);
        }
        Ok(pair_extends(&from, &to))
    }

    /// Subgroup generated by `gens`, with normality, centralizer and center.
    pub fn subgroup_tools(&self, gens: &[Permutation]) -> Result<SubgroupReport, PermError> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(PermError::NotInGroup);
        }
        let subgroup = PermGroup::from_perms(self.degree, gens, self.order())?;
        let is_normal = self.normalizes(&subgroup);
        let centralizer: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|g| gens.iter().all(|s| g.commutes_with(s)))
            .cloned()
            .collect();
        let center: Vec<Permutation> = subgroup
            .elements
            .iter()
            .filter(|g| gens.iter().all(|s| g.commutes_with(s)))
            .cloned()
            .collect();
        Ok(SubgroupReport {
            subgroup,
            is_normal,
            centralizer,
            center,
        })
    }

    fn normalizes(&self, sub: &PermGroup) -> bool {
        self.generators.iter().all(|(_, g)| {
            sub.generators
                .iter()
                .all(|(_, s)| sub.contains(&s.conj(g)))
        })
    }

    /// Action on the right cosets of a normal subgroup.
    pub fn quotient_action(&self, normal: &PermGroup) -> Result<PermGroup, PermError> {
        if normal.elements.iter().any(|n| !self.contains(n)) {
            return Err(PermError::NotInGroup);
        }
        if !self.normalizes(normal) {
            return Err(PermError::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps: Vec<usize> = Vec::new();
        for (idx, g) in self.elements.iter().enumerate() {
            if coset_of[idx] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(idx);
            for n in &normal.elements {
                let ng = n.then(g);
                let j = self.index_of(&ng).expect("closed under products");
                coset_of[j] = id;
            }
        }
        let degree = reps.len();
        let mut gens = Vec::with_capacity(self.generators.len());
        for (name, s) in &self.generators {
            let images: Vec<usize> = reps
                .iter()
                .map(|&r| {
                    let rs = self.elements[r].then(s);
                    coset_of[self.index_of(&rs).expect("closed under products")]
                })
                .collect();
            gens.push((name.clone(), Permutation::from_images(images)?));
        }
        PermGroup::generate(degree, gens, self.order().max(1))
    }

    /// Sorted list of elements in cycle notation.
    pub fn dump_cycles(&self) -> String {
        let mut out = String::new();
        for e in &self.elements {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SubgroupReport {
    pub subgroup: PermGroup,
    pub is_normal: bool,
    pub centralizer: Vec<Permutation>,
    pub center: Vec<Permutation>,
}

/// The affine group `x -> u x + v` on `Z_m` as a permutation group.
pub fn affine_group(m: u64) -> PermGroup {
    let t = numtheory::smallest_primitive_root(m, 1);
    let mul = Permutation::from_images((0..m).map(|x| ((x * t) % m) as usize).collect())
        .expect("t is a unit");
    let shift = Permutation::from_images((0..m).map(|x| ((x + 1) % m) as usize).collect())
        .expect("translation");
    PermGroup::generate(
        m as usize,
        vec![("mul".into(), mul), ("shift".into(), shift)],
        DEFAULT_CLOSURE_CAP,
    )
    .expect("affine group is small")
}

/// Whether `q` is isomorphic to AGL(1, m) for a prime `m`.
pub fn is_agl1(q: &PermGroup, m: u64) -> bool {
    if q.order() as u64 != m * (m - 1) {
        return false;
    }
    let reference = affine_group(m);
    let from = reference.generator_perms();
    let orders: Vec<u64> = from.iter().map(Permutation::order).collect();
    let by_order = |o: u64| -> Vec<&Permutation> {
        q.elements().iter().filter(|e| e.order() == o).collect()
    };
    let firsts = by_order(orders[0]);
    let seconds = by_order(orders[1]);
    firsts.iter().any(|u| {
        seconds
            .iter()
            .any(|v| pair_extends(&from, &[(*u).clone(), (*v).clone()]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> PermGroup {
        let a = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        PermGroup::generate(4, vec![("a".into(), a), ("b".into(), b)], DEFAULT_CLOSURE_CAP)
            .unwrap()
    }

    /// Independent count: all 24 image arrays of 4 points are bijections.
    #[test]
    fn s4_closure_has_order_24() {
        let g = s4();
        assert_eq!(g.order(), 24);
        assert!(g.elements()[0].is_identity());
        let brute: usize = (0..4usize.pow(4))
            .filter(|code| {
                let imgs: Vec<usize> = (0..4).map(|i| (code / 4usize.pow(i)) % 4).collect();
                Permutation::from_images(imgs)
                    .map(|p| g.contains(&p))
                    .unwrap_or(false)
            })
            .count();
        assert_eq!(brute, 24);
    }

    #[test]
    fn identity_closure_is_trivial() {
        let g = PermGroup::from_perms(5, &[Permutation::identity(5)], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(closure(3, &[], 10).unwrap().len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let a = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        assert_eq!(
            closure(4, &[a, b], 10).unwrap_err(),
            PermError::CapExceeded { cap: 10 }
        );
    }

    #[test]
    fn element_orders() {
        assert_eq!(Permutation::identity(6).order(), 1);
        let p = Permutation::from_cycles(7, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.pow(6), Permutation::identity(7));
        assert_eq!(p.pow(-1), p.inverse());
    }

    #[test]
    fn display_uses_one_based_cycles() {
        let p = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert_eq!(p.to_string(), "(1 2 3 4)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn s4_pair_extension() {
        let g = s4();
        let a = g.generator("a").unwrap().clone();
        let b = g.generator("b").unwrap().clone();
        assert!(g.extends_to_isomorphism((&a, &b), (&a, &b)).unwrap());
        // Aut(S4) = Inn(S4), so brute force over conjugations decides it
        let ai = a.inverse();
        let brute = g
            .elements()
            .iter()
            .any(|h| a.conj(h) == ai && b.conj(h) == b);
        assert_eq!(g.extends_to_isomorphism((&a, &b), (&ai, &b)).unwrap(), brute);
        let id = g.identity();
        assert_eq!(
            g.extends_to_isomorphism((&a, &b), (&a, &id)).unwrap_err(),
            PermError::PairDoesNotGenerate
        );
    }

    #[test]
    fn subgroup_tools_trivial_subgroup() {
        let g = s4();
        let r = g.subgroup_tools(&[g.identity()]).unwrap();
        assert_eq!(r.subgroup.order(), 1);
        assert!(r.is_normal);
        assert_eq!(r.centralizer.len(), 24);
        assert_eq!(r.center.len(), 1);
    }

    #[test]
    fn klein_four_in_s4_is_normal_with_quotient_s3() {
        let g = s4();
        let v1 = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        let v2 = Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap();
        let r = g.subgroup_tools(&[v1, v2]).unwrap();
        assert_eq!(r.subgroup.order(), 4);
        assert!(r.is_normal);
        let q = g.quotient_action(&r.subgroup).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.degree(), 6);
        assert!(is_agl1(&q, 3));
    }

    #[test]
    fn quotient_by_whole_group_is_trivial() {
        let g = s4();
        let q = g.quotient_action(&g).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn quotient_by_non_normal_subgroup_fails() {
        let g = s4();
        let b = g.generator("b").unwrap().clone();
        let h = PermGroup::from_perms(4, &[b], 100).unwrap();
        assert_eq!(g.quotient_action(&h).unwrap_err(), PermError::NotNormal);
    }

    #[test]
    fn agl_reference_and_cyclic_group() {
        assert!(is_agl1(&affine_group(3), 3));
        assert!(is_agl1(&affine_group(5), 5));
        let c6 = Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap();
        let g = PermGroup::from_perms(6, &[c6], 100).unwrap();
        assert!(!is_agl1(&g, 3));
    }

    #[test]
    fn pair_extension_across_distinct_realizations() {
        // S3 on 3 points versus S3 acting regularly on 6 points
        let s = affine_group(3);
        let gens = s.generator_perms();
        let regular: Vec<Permutation> = gens
            .iter()
            .map(|g| {
                let imgs = s
                    .elements()
                    .iter()
                    .map(|x| s.index_of(&x.then(g)).unwrap())
                    .collect();
                Permutation::from_images(imgs).unwrap()
            })
            .collect();
        assert!(pair_extends(&gens, &regular));
        let swapped = [regular[1].clone(), regular[0].clone()];
        assert!(!pair_extends(&gens, &swapped));
    }
}
