//! Enumeration of the family maps for `K_{m[n]}`, classification up to
//! isomorphism, comparison with the tabulated counts, and a brute-force
//! search of `Aut(K_{m[n]}) = S_n wr S_m` for small cases.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::families::{
    build_group_with, default_cap, family_candidates, lemma21_check, table1_entry,
    table2_totals, BuildError, CheckError, Chirality, Family, GroupCache, MapParameters,
    ScopeError, Totals,
};
use crate::maps::{invariants, is_isomorphic, AlgebraicMap, MapError, MapInvariants};
use crate::numtheory::{euler_phi, split_prime_power};
use crate::permgroup::{closure, PermError, PermGroup, Permutation, DEFAULT_CLOSURE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CensusError {
    #[error("feasibility gate: {0}")]
    Gate(String),
    #[error("oracle base ({0}, {1}) is not an arc of the graph")]
    BadBase(usize, usize),
    #[error(transparent)]
    Scope(#[from] ScopeError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Oracle limits: `n <= max_n` and `m n <= max_mn`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleGate {
    pub max_n: u64,
    pub max_mn: u64,
}

impl Default for OracleGate {
    fn default() -> Self {
        OracleGate { max_n: 3, max_mn: 9 }
    }
}

impl std::str::FromStr for OracleGate {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| format!("expected N,MN but got `{s}`"))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad gate value `{t}`: {e}"))
        };
        Ok(OracleGate {
            max_n: parse(a)?,
            max_mn: parse(b)?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    /// Coset bound per family group; `None` means four times the group order.
    pub max_cosets: Option<usize>,
    /// Largest group the census will hold in memory.
    pub max_closure: usize,
    pub oracle_gate: OracleGate,
    /// Base vertex and neighbour for the oracle; `None` picks `(0, n)`.
    pub oracle_base: Option<(usize, usize)>,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            max_cosets: None,
            max_closure: DEFAULT_CLOSURE_CAP,
            oracle_gate: OracleGate::default(),
            oracle_base: None,
        }
    }
}

/// One map per admissible family tuple for `K_{m[n]}`, before deduplication.
pub fn enumerate_family_maps(
    m: u64,
    n: u64,
    config: &CensusConfig,
) -> Result<Vec<AlgebraicMap>, CensusError> {
    let candidates = family_candidates(m, n)?;
    let order = m * (m - 1) * n * n;
    if !candidates.is_empty() && order > config.max_closure as u64 {
        return Err(CensusError::Gate(format!(
            "group order {order} exceeds max closure {}",
            config.max_closure
        )));
    }
    let cache = GroupCache::new();
    candidates
        .iter()
        .map(|p| {
            let cap = config.max_cosets.unwrap_or_else(|| default_cap(p));
            let fg = build_group_with(p, cap, &cache)?;
            Ok(AlgebraicMap::from_family(&fg)?)
        })
        .collect()
}

/// An isomorphism class: indices into the input list, representative first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

type Fingerprint = (usize, u64, u64);

fn fingerprint(map: &AlgebraicMap) -> Fingerprint {
    (
        map.group().order(),
        map.a().then(map.b()).order(),
        map.a().order(),
    )
}

/// Partitions `maps` under [`is_isomorphic`]. Maps with parameters are
/// visited in parameter order (then input order), so each representative is
/// the least parameter tuple in its class.
pub fn dedup_by_isomorphism(maps: &[AlgebraicMap]) -> Vec<IsoClass> {
    let mut order: Vec<usize> = (0..maps.len()).collect();
    order.sort_by_key(|&i| (maps[i].params().map(MapParameters::sort_key).is_none(), maps[i].params().map(MapParameters::sort_key), i));
    let prints: Vec<Fingerprint> = maps.iter().map(fingerprint).collect();
    let mut classes: Vec<IsoClass> = Vec::new();
    for i in order {
        let home = classes.iter_mut().find(|c| {
            let r = c.representative;
            prints[r] == prints[i] && is_isomorphic(&maps[r], &maps[i])
        });
        match home {
            Some(c) => c.members.push(i),
            None => classes.push(IsoClass {
                representative: i,
                members: vec![i],
            }),
        }
    }
    classes
}

/// `Aut(K_{m[n]})` on points `part * n + index`, listed exhaustively.
pub fn wreath_automorphisms(m: usize, n: usize) -> Vec<Permutation> {
    let inner: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut out = Vec::new();
    for sigma in (0..m).permutations(m) {
        for taus in (0..m).map(|_| inner.iter()).multi_cartesian_product() {
            let images = (0..m * n)
                .map(|pt| sigma[pt / n] * n + taus[pt / n][pt % n])
                .collect();
            out.push(Permutation::from_images(images).expect("wreath element is a bijection"));
        }
    }
    out.sort();
    out
}

fn check_oracle_gate(m: u64, n: u64, gate: OracleGate) -> Result<(), CensusError> {
    if m < 3 || n < 2 {
        return Err(ScopeError::OutOfScope { m, n }.into());
    }
    if n > gate.max_n || m * n > gate.max_mn {
        return Err(CensusError::Gate(format!(
            "oracle needs n <= {} and mn <= {} (got m = {m}, n = {n})",
            gate.max_n, gate.max_mn
        )));
    }
    Ok(())
}

/// Every orientably-regular embedding of `K_{m[n]}`, found by search.
///
/// With base vertex `u` and neighbour `v`: `a` ranges over automorphisms
/// fixing `u` and cycling `N(u)` in one cycle, `b` over involutions swapping
/// `u` and `v`. Pairs generating a group of order `m(m-1)n^2` are kept,
/// reduced modulo conjugation by the stabilizer of the arc `(u, v)` and then
/// classified up to map isomorphism.
pub fn oracle_arc_regular(
    m: u64,
    n: u64,
    config: &CensusConfig,
) -> Result<Vec<AlgebraicMap>, CensusError> {
    check_oracle_gate(m, n, config.oracle_gate)?;
    let (m, n) = (m as usize, n as usize);
    let (u, v) = config.oracle_base.unwrap_or((0, n));
    if u / n == v / n || u >= m * n || v >= m * n {
        return Err(CensusError::BadBase(u, v));
    }
    let arcs = m * (m - 1) * n * n;
    let aut = wreath_automorphisms(m, n);
    let a_cands: Vec<&Permutation> = aut
        .iter()
        .filter(|g| g.image(u) == u && cycle_length(g, v) == (m - 1) * n)
        .collect();
    let b_cands: Vec<&Permutation> = aut
        .iter()
        .filter(|g| g.image(u) == v && g.image(v) == u && g.then(g).is_identity())
        .collect();
    let arc_stab: Vec<&Permutation> = aut
        .iter()
        .filter(|g| g.image(u) == u && g.image(v) == v)
        .collect();

    let pairs: Vec<(Permutation, Permutation)> = a_cands
        .par_iter()
        .map(|a| {
            b_cands
                .iter()
                .filter(|b| {
                    let gens = [(*a).clone(), (**b).clone()];
                    matches!(closure(m * n, &gens, arcs + 1), Ok(els) if els.len() == arcs)
                })
                .map(|b| canonical_pair(a, b, &arc_stab))
                .collect::<Vec<_>>()
        })
        .flatten()
        .collect();
    let unique: BTreeSet<(Permutation, Permutation)> = pairs.into_iter().collect();

    let maps = unique
        .into_iter()
        .map(|(a, b)| {
            let group = PermGroup::generate(
                m * n,
                vec![("a".into(), a.clone()), ("b".into(), b.clone())],
                arcs,
            )?;
            Ok(crate::maps::build_map(Arc::new(group), a, b)?)
        })
        .collect::<Result<Vec<_>, CensusError>>()?;
    let classes = dedup_by_isomorphism(&maps);
    Ok(classes
        .into_iter()
        .map(|c| maps[c.representative].clone())
        .collect())
}

fn cycle_length(g: &Permutation, start: usize) -> usize {
    let mut len = 1;
    let mut x = g.image(start);
    while x != start {
        x = g.image(x);
        len += 1;
    }
    len
}

fn canonical_pair(
    a: &Permutation,
    b: &Permutation,
    stab: &[&Permutation],
) -> (Permutation, Permutation) {
    stab.iter()
        .map(|g| (a.conj(g), b.conj(g)))
        .min()
        .expect("the identity stabilizes every arc")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INFO")]
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub item: String,
    pub expected: String,
    pub observed: String,
    pub status: Status,
}

impl Verdict {
    fn compare(item: impl Into<String>, expected: impl fmt::Display, observed: impl fmt::Display) -> Self {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let status = if expected == observed {
            Status::Pass
        } else {
            Status::Fail
        };
        Verdict {
            item: item.into(),
            expected,
            observed,
            status,
        }
    }

    fn info(item: impl Into<String>, observed: impl Into<String>) -> Self {
        Verdict {
            item: item.into(),
            expected: String::new(),
            observed: observed.into(),
            status: Status::Info,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub family: Option<Family>,
    pub params: Option<MapParameters>,
    pub label: String,
    #[serde(rename = "type")]
    pub map_type: [u64; 2],
    pub genus: u64,
    pub chirality: Chirality,
    /// Labels of every enumerated tuple in the class.
    pub members: Vec<String>,
    /// Family class isomorphic to this oracle class, if any.
    pub matches: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Families,
    Oracle,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub m: u64,
    pub n: u64,
    pub source: Source,
    pub candidates: usize,
    pub classes: Vec<ClassReport>,
    pub totals: Totals,
    pub verdicts: Vec<Verdict>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != Status::Fail)
    }

    pub fn verdict(&self, item: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.item == item)
    }
}

fn totals_of<'a>(invs: impl Iterator<Item = &'a MapInvariants>) -> Totals {
    let (mut r, mut c) = (0, 0);
    for inv in invs {
        match inv.chirality {
            Chirality::Reflexible => r += 1,
            Chirality::Chiral => c += 1,
        }
    }
    Totals::new(r, c)
}

fn class_report(
    maps: &[AlgebraicMap],
    invs: &[MapInvariants],
    class: &IsoClass,
) -> ClassReport {
    let rep = &maps[class.representative];
    let inv = &invs[class.representative];
    ClassReport {
        family: rep.params().map(|p| p.family),
        params: rep.params().cloned(),
        label: rep.label(),
        map_type: [inv.face_length, inv.valency],
        genus: inv.genus,
        chirality: inv.chirality,
        members: class.members.iter().map(|&i| maps[i].label()).collect(),
        matches: None,
    }
}

/// How the candidate tuples fall into isomorphism classes.
fn collapse_verdict(maps: &[AlgebraicMap], classes: &[IsoClass]) -> Verdict {
    let merged: Vec<String> = classes
        .iter()
        .filter(|c| c.members.len() > 1)
        .map(|c| {
            let labels: Vec<String> = c.members.iter().map(|&i| maps[i].label()).collect();
            labels.join(" = ")
        })
        .collect();
    let observed = if merged.is_empty() {
        format!("{} tuples, {} classes, all distinct", maps.len(), classes.len())
    } else {
        format!(
            "{} tuples collapse to {} classes: {}",
            maps.len(),
            classes.len(),
            merged.join("; ")
        )
    };
    Verdict::info("table1 tuples vs classes", observed)
}

/// Family maps for `K_{m[n]}` grouped into isomorphism classes.
pub fn enumerate_report(m: u64, n: u64, config: &CensusConfig) -> Result<CensusReport, CensusError> {
    let maps = enumerate_family_maps(m, n, config)?;
    let invs: Vec<MapInvariants> = maps.par_iter().map(invariants).collect();
    let classes = dedup_by_isomorphism(&maps);
    let class_invs: Vec<&MapInvariants> = classes.iter().map(|c| &invs[c.representative]).collect();
    Ok(CensusReport {
        m,
        n,
        source: Source::Families,
        candidates: maps.len(),
        classes: classes.iter().map(|c| class_report(&maps, &invs, c)).collect(),
        totals: totals_of(class_invs.into_iter()),
        verdicts: Vec::new(),
    })
}

/// Closed-form candidate counts per family.
fn table1_counts(m: u64, n: u64) -> Vec<(Family, u64)> {
    if m == 3 {
        let (e, _) = split_prime_power(n, 3);
        let m3 = if e >= 1 { 2 * 3u64.pow(e - 1) } else { 0 };
        let m4 = match e {
            0 => 1,
            1 => 1 + 2,
            _ => 1 + 2 + 2 + 4,
        };
        return vec![(Family::M3, m3), (Family::M4, m4)];
    }
    let (e, rest) = split_prime_power(n, m);
    if rest != 1 || e == 0 || !crate::numtheory::is_prime(m) {
        return Vec::new();
    }
    let phi = euler_phi(m - 1);
    vec![
        (Family::M1, m.pow(e - 1) * (m - 1) * phi),
        (Family::M2, if e == 1 { phi } else { 0 }),
    ]
}

/// Compares the family census with both tables.
pub fn verify_tables(m: u64, n: u64, config: &CensusConfig) -> Result<CensusReport, CensusError> {
    let maps = enumerate_family_maps(m, n, config)?;
    let invs: Vec<MapInvariants> = maps.par_iter().map(invariants).collect();
    let mut verdicts = Vec::new();

    for (family, expected) in table1_counts(m, n) {
        let observed = maps
            .iter()
            .filter(|x| x.params().map(|p| p.family) == Some(family))
            .count();
        verdicts.push(Verdict::compare(
            format!("table1 {family} candidates"),
            expected,
            observed,
        ));
    }
    for (map, inv) in maps.iter().zip(&invs) {
        let p = map.params().expect("family maps carry parameters");
        let want = table1_entry(p);
        verdicts.push(Verdict::compare(
            format!("table1 {} chirality", p.label()),
            format!("{:?}", want.chirality),
            format!("{:?}", inv.chirality),
        ));
        verdicts.push(Verdict::compare(
            format!("table1 {} type", p.label()),
            format!("{{{},{}}}", want.face_length, want.valency),
            format!("{{{},{}}}", inv.face_length, inv.valency),
        ));
    }

    let classes = dedup_by_isomorphism(&maps);
    let totals = totals_of(classes.iter().map(|c| &invs[c.representative]));
    let expected = table2_totals(m, n);
    verdicts.push(Verdict::compare("table2 reflexible", expected.reflexible, totals.reflexible));
    verdicts.push(Verdict::compare("table2 chiral", expected.chiral, totals.chiral));
    verdicts.push(Verdict::compare("table2 total", expected.total, totals.total));

    verdicts.push(collapse_verdict(&maps, &classes));

    Ok(CensusReport {
        m,
        n,
        source: Source::Families,
        candidates: maps.len(),
        classes: classes.iter().map(|c| class_report(&maps, &invs, c)).collect(),
        totals,
        verdicts,
    })
}

/// The oracle census, cross-referenced with the family classes.
pub fn census_report(m: u64, n: u64, config: &CensusConfig) -> Result<CensusReport, CensusError> {
    let oracle = oracle_arc_regular(m, n, config)?;
    let invs: Vec<MapInvariants> = oracle.par_iter().map(invariants).collect();
    let family_maps = enumerate_family_maps(m, n, config)?;
    let family_classes = dedup_by_isomorphism(&family_maps);

    let mut classes: Vec<ClassReport> = Vec::new();
    let mut matched_family: Vec<usize> = Vec::new();
    for (i, map) in oracle.iter().enumerate() {
        let hits: Vec<&crate::census::IsoClass> = family_classes
            .iter()
            .filter(|c| is_isomorphic(map, &family_maps[c.representative]))
            .collect();
        let matches = hits.first().map(|c| {
            matched_family.push(c.representative);
            family_maps[c.representative].label()
        });
        let members = hits
            .first()
            .map(|c| c.members.iter().map(|&j| family_maps[j].label()).collect())
            .unwrap_or_default();
        classes.push(ClassReport {
            family: None,
            params: None,
            label: format!("oracle#{i}"),
            map_type: [invs[i].face_length, invs[i].valency],
            genus: invs[i].genus,
            chirality: invs[i].chirality,
            members,
            matches,
        });
    }

    let totals = totals_of(invs.iter());
    let expected = table2_totals(m, n);
    let mut verdicts = vec![
        Verdict::compare("table2 reflexible", expected.reflexible, totals.reflexible),
        Verdict::compare("table2 chiral", expected.chiral, totals.chiral),
        Verdict::compare("table2 total", expected.total, totals.total),
    ];
    let distinct: BTreeSet<usize> = matched_family.iter().copied().collect();
    let bijective = classes.iter().all(|c| c.matches.is_some())
        && distinct.len() == oracle.len()
        && family_classes.len() == oracle.len();
    verdicts.push(Verdict::compare(
        "oracle classes match family classes",
        family_classes.len(),
        if bijective {
            oracle.len().to_string()
        } else {
            format!("{} (not a bijection)", oracle.len())
        },
    ));
    if crate::numtheory::is_prime(m) && n > 2 {
        let mut ok = 0;
        for map in &oracle {
            if lemma21_check(map.group(), map.a(), map.b(), m, n)? {
                ok += 1;
            }
        }
        verdicts.push(Verdict::compare("oracle maps pass structural checks", oracle.len(), ok));
    }
    verdicts.push(collapse_verdict(&family_maps, &family_classes));

    Ok(CensusReport {
        m,
        n,
        source: Source::Oracle,
        candidates: family_maps.len(),
        classes,
        totals,
        verdicts,
    })
}
