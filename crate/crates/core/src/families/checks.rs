use std::collections::HashSet;

use crate::numtheory::is_prime;
use crate::permgroup::{is_agl1, pair_extends, PermError, PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("element is not in the group")]
    NotInGroup,
    #[error("hypotheses violated: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

fn powers(x: &Permutation) -> HashSet<Permutation> {
    let mut out = HashSet::new();
    let mut p = Permutation::identity(x.degree());
    loop {
        if !out.insert(p.clone()) {
            return out;
        }
        p = p.then(x);
    }
}

/// Whether `(H, x, y)` is an isobicyclic triple: `|x| = |y| = n`,
/// `<x> ∩ <y> = 1`, `|H| = n^2` and `x <-> y` extends to an automorphism.
pub fn isobicyclic_check(h: &PermGroup, x: &Permutation, y: &Permutation) -> Result<bool, CheckError> {
    if !h.contains(x) || !h.contains(y) {
        return Err(CheckError::NotInGroup);
    }
    let n = x.order();
    if y.order() != n || h.order() as u64 != n * n {
        return Ok(false);
    }
    let px = powers(x);
    if powers(y).iter().filter(|g| px.contains(*g)).count() != 1 {
        return Ok(false);
    }
    Ok(pair_extends(
        &[x.clone(), y.clone()],
        &[y.clone(), x.clone()],
    ))
}

/// Which of the sufficient conditions for embedding `K_{m[n]}` hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Lemma21Report {
    pub isobicyclic: bool,
    pub normal: bool,
    pub quotient_is_agl1: bool,
    pub centralizer_is_center: bool,
}

impl Lemma21Report {
    pub fn holds(&self) -> bool {
        self.isobicyclic && self.normal && self.quotient_is_agl1 && self.centralizer_is_center
    }
}

/// Evaluates the conditions with `x = a^(m-1)`, `y = x^b`, `H = <x, y>`.
pub fn lemma21_report(
    g: &PermGroup,
    a: &Permutation,
    b: &Permutation,
    m: u64,
    n: u64,
) -> Result<Lemma21Report, CheckError> {
    if m < 3 || !is_prime(m) {
        return Err(CheckError::Hypothesis(format!("m = {m} is not an odd prime")));
    }
    if n <= 2 {
        return Err(CheckError::Hypothesis(format!("n = {n} must exceed 2")));
    }
    if !g.contains(a) || !g.contains(b) {
        return Err(CheckError::NotInGroup);
    }
    if !b.then(b).is_identity() {
        return Err(CheckError::Hypothesis("b is not an involution".into()));
    }
    let x = a.pow(m as i64 - 1);
    let y = x.conj(b);
    let mut report = Lemma21Report::default();
    if x.order() != n {
        return Ok(report);
    }
    let sub = g.subgroup_tools(&[x.clone(), y.clone()])?;
    report.isobicyclic = isobicyclic_check(&sub.subgroup, &x, &y)?;
    report.normal = sub.is_normal;
    report.centralizer_is_center = sub.centralizer == sub.center;
    if sub.is_normal {
        let q = g.quotient_action(&sub.subgroup)?;
        report.quotient_is_agl1 = is_agl1(&q, m);
    }
    Ok(report)
}

pub fn lemma21_check(
    g: &PermGroup,
    a: &Permutation,
    b: &Permutation,
    m: u64,
    n: u64,
) -> Result<bool, CheckError> {
    Ok(lemma21_report(g, a, b, m, n)?.holds())
}
