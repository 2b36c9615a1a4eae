//! The four group families `G1..G4`, their maps `M1..M4`, parameter
//! validation, normal-form arithmetic for `H`, and structural checkers.

mod checks;
mod normal_forms;
mod params;
mod presentations;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

pub use checks::{isobicyclic_check, lemma21_check, lemma21_report, CheckError, Lemma21Report};
pub use normal_forms::{HTriple, Metacyclic, NonabelianH, NormalFormError};
pub use params::{m4_menu, validate_params, Family, MapParameters, ParamError, RawParams};
pub use presentations::{g2_native, presentation_for};

use crate::fpgroups::{enumerate_cosets, regular_representation, EnumerationError};
use crate::numtheory::{euler_phi, gcd, is_prime, split_prime_power, units};
use crate::permgroup::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("coset enumeration for {label} overflowed {cap} cosets")]
    Overflow { label: String, cap: usize },
    #[error("construction defect for {label}: {message}")]
    Defect { label: String, message: String },
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

/// A family group in its regular representation with the map's
/// distinguished pair.
#[derive(Debug, Clone)]
pub struct FamilyGroup {
    pub params: MapParameters,
    pub group: Arc<PermGroup>,
    /// Image of the presentation generator `a`.
    pub a_base: Permutation,
    /// First generator of the map: `a^j` (for M2, `j` is already inside `a`).
    pub a: Permutation,
    pub b: Permutation,
}

/// Groups keyed by presentation text, shared across maps with the same group.
#[derive(Debug, Default)]
pub struct GroupCache {
    groups: Mutex<HashMap<String, Arc<PermGroup>>>,
}

impl GroupCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.groups.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Coset bound used when the caller gives none.
pub fn default_cap(params: &MapParameters) -> usize {
    4 * params.group_order() as usize
}

pub fn build_group(params: &MapParameters) -> Result<FamilyGroup, BuildError> {
    build_group_with(params, default_cap(params), &GroupCache::new())
}

pub fn build_group_with(
    params: &MapParameters,
    max_cosets: usize,
    cache: &GroupCache,
) -> Result<FamilyGroup, BuildError> {
    let label = params.label();
    let defect = |message: String| BuildError::Defect {
        label: label.clone(),
        message,
    };
    let pres = presentation_for(params);
    let key = pres.to_string();
    let cached = cache.groups.lock().expect("cache lock").get(&key).cloned();
    let group = match cached {
        Some(g) => g,
        None => {
            let table = enumerate_cosets(&pres, &[], max_cosets)?;
            if !table.is_complete() {
                return Err(BuildError::Overflow {
                    label,
                    cap: max_cosets,
                });
            }
            let g = Arc::new(regular_representation(&table)?);
            cache
                .groups
                .lock()
                .expect("cache lock")
                .insert(key, Arc::clone(&g));
            g
        }
    };
    let expected = params.group_order() as usize;
    if group.order() != expected {
        return Err(defect(format!(
            "group order {} differs from m(m-1)n^2 = {expected}",
            group.order()
        )));
    }
    let a_base = group.generator("a").expect("generator a").clone();
    let b = group.generator("b").expect("generator b").clone();
    let a = match params.family {
        Family::M2 => a_base.clone(),
        _ => a_base.pow(params.j),
    };
    if b.is_identity() || !b.then(&b).is_identity() {
        return Err(defect("b is not an involution".into()));
    }
    if !group
        .is_generated_by(&[a.clone(), b.clone()])
        .map_err(|e| defect(e.to_string()))?
    {
        return Err(defect("the distinguished pair does not generate".into()));
    }
    Ok(FamilyGroup {
        params: params.clone(),
        group,
        a_base,
        a,
        b,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Reflexible,
    Chiral,
}

/// Tabulated chirality and type `{s, t}` of one map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub chirality: Chirality,
    pub face_length: u64,
    pub valency: u64,
}

pub fn table1_entry(params: &MapParameters) -> TableEntry {
    let n = params.n;
    let (chirality, face_length, valency) = match params.family {
        Family::M1 | Family::M2 => {
            let t = n * (params.p - 1);
            let s = if params.p % 4 == 1 { t } else { t / 2 };
            (Chirality::Chiral, s, t)
        }
        Family::M3 => (Chirality::Chiral, 3u64.pow(params.e + 1), 2 * n),
        Family::M4 => match (params.i, params.l) {
            (0, 0) => (Chirality::Reflexible, 3, 2 * n),
            (_, 0) => (Chirality::Chiral, 3, 2 * n),
            _ => (Chirality::Chiral, 9, 2 * n),
        },
    };
    TableEntry {
        chirality,
        face_length,
        valency,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub reflexible: u64,
    pub chiral: u64,
    pub total: u64,
}

impl Totals {
    pub fn new(reflexible: u64, chiral: u64) -> Self {
        Totals {
            reflexible,
            chiral,
            total: reflexible + chiral,
        }
    }
}

/// Tabulated class totals for `K_{m[n]}`, `m >= 3`, `n >= 2`.
pub fn table2_totals(m: u64, n: u64) -> Totals {
    if m == 3 {
        let (e, _) = split_prime_power(n, 3);
        return match e {
            0 => Totals::new(1, 0),
            1 => Totals::new(1, 2),
            _ => Totals::new(1, 2 * 3u64.pow(e - 1) + 8),
        };
    }
    let (e, rest) = split_prime_power(n, m);
    if !is_prime(m) || rest != 1 || e == 0 {
        return Totals::new(0, 0);
    }
    let phi = euler_phi(m - 1);
    let m1 = m.pow(e - 1) * (m - 1) * phi;
    let m2 = if e == 1 { phi } else { 0 };
    Totals::new(0, m1 + m2)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScopeError {
    #[error("m = {m}, n = {n} is outside m >= 3, n >= 2")]
    OutOfScope { m: u64, n: u64 },
}

/// Every parameter tuple the families list for `K_{m[n]}`, canonical `j`
/// only. Empty when `(m, n)` fails the `m >= 4` gate.
pub fn family_candidates(m: u64, n: u64) -> Result<Vec<MapParameters>, ScopeError> {
    if m < 3 || n < 2 {
        return Err(ScopeError::OutOfScope { m, n });
    }
    let raw = |family: Family| RawParams {
        family: Some(family),
        m: Some(m as i64),
        n: Some(n as i64),
        ..RawParams::default()
    };
    let ok = |r: RawParams| validate_params(&r).expect("enumerated tuples are admissible");
    let mut out = Vec::new();
    if m == 3 {
        let (e, _) = split_prime_power(n, 3);
        if e >= 1 {
            let class_mod = 2 * 3u64.pow(e);
            for j in units(class_mod) {
                let j = (j..).step_by(class_mod as usize).find(|&c| gcd(c, 2 * n) == 1);
                out.push(ok(RawParams {
                    j: j.map(|j| j as i64),
                    ..raw(Family::M3)
                }));
            }
        }
        for &(i, l) in m4_menu(e) {
            let signs: &[i64] = if (i, l) == (0, 0) { &[1] } else { &[1, -1] };
            for &j in signs {
                out.push(ok(RawParams {
                    i: Some(i),
                    l: Some(l),
                    j: Some(j),
                    ..raw(Family::M4)
                }));
            }
        }
        return Ok(out);
    }
    let (e, rest) = split_prime_power(n, m);
    if !is_prime(m) || rest != 1 || e == 0 {
        return Ok(out);
    }
    for j in units(n * (m - 1)) {
        out.push(ok(RawParams {
            j: Some(j as i64),
            ..raw(Family::M1)
        }));
    }
    if e == 1 {
        for j in units(m - 1) {
            out.push(ok(RawParams {
                j: Some(j as i64),
                ..raw(Family::M2)
            }));
        }
    }
    Ok(out)
}
