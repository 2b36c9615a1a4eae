use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::numtheory::{
    gcd, is_prime, mod_inverse, reduce, smallest_primitive_root, split_prime_power,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    M1,
    M2,
    M3,
    M4,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::M1 => "M1",
            Family::M2 => "M2",
            Family::M3 => "M3",
            Family::M4 => "M4",
        })
    }
}

impl FromStr for Family {
    type Err = ParamError;
    fn from_str(s: &str) -> Result<Self, ParamError> {
        match s {
            "M1" | "m1" => Ok(Family::M1),
            "M2" | "m2" => Ok(Family::M2),
            "M3" | "m3" => Ok(Family::M3),
            "M4" | "m4" => Ok(Family::M4),
            other => Err(ParamError::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("missing parameter `{0}`")]
    Missing(&'static str),
    #[error("inconsistent parameters: {0}")]
    Inconsistent(String),
    #[error("m = {0} is composite; m >= 4 requires m prime and n a power of m")]
    CompositeM(u64),
    #[error("n = {n} is not a power of m = {m}")]
    NotPrimePower { m: u64, n: u64 },
    #[error("{0}")]
    Shape(String),
    #[error("(i,l) = ({i},{l}) is not admissible for e = {e}")]
    MenuViolation { e: u32, i: i64, l: i64 },
    #[error("j = {j} is not admissible (must be a unit modulo {modulus})")]
    NotUnit { j: i64, modulus: u64 },
    #[error("j = {j} is not admissible for M4 with (i,l) = ({i},{l})")]
    BadSign { j: i64, i: i64, l: i64 },
    #[error("invalid parameter JSON: {0}")]
    Json(String),
}

/// Parameters as supplied by a user; anything missing is derived when possible.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawParams {
    pub family: Option<Family>,
    pub m: Option<i64>,
    pub n: Option<i64>,
    pub p: Option<i64>,
    pub e: Option<i64>,
    pub k: Option<i64>,
    pub i: Option<i64>,
    pub l: Option<i64>,
    pub j: Option<i64>,
}

impl RawParams {
    pub fn from_json(text: &str) -> Result<Self, ParamError> {
        let raw: RawParams =
            serde_json::from_str(text).map_err(|e| ParamError::Json(e.to_string()))?;
        if raw.family.is_none() {
            return Err(ParamError::Missing("family"));
        }
        Ok(raw)
    }
}

/// A validated parameter set for one map of the four families.
///
/// `p` is the prime `m`, `n = p^e * k` with `p` not dividing `k` (so `k = 1`
/// for M1 and M2). `j` is the canonical representative of its isomorphism
/// class; `j_input` keeps what the caller asked for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MapParameters {
    pub family: Family,
    pub m: u64,
    pub n: u64,
    pub p: u64,
    pub e: u32,
    pub k: u64,
    pub i: i64,
    pub l: i64,
    pub j: i64,
    pub j_input: i64,
    /// Generator of the units modulo `p^(e+1)` (M1).
    pub r: Option<u64>,
    /// Generator of the units modulo `p` (M2).
    pub t: Option<u64>,
    /// Inverse of `3^e` modulo `k`, in `[0, k)` (M3).
    pub u: Option<u64>,
}

impl MapParameters {
    /// Number of arcs of `K_{m[n]}`, which is the order of the map's group.
    pub fn group_order(&self) -> u64 {
        self.m * (self.m - 1) * self.n * self.n
    }

    /// Sort key used to pick class representatives.
    pub fn sort_key(&self) -> (Family, u64, u64, u32, u64, i64, i64, i64) {
        (
            self.family, self.m, self.n, self.e, self.k, self.i, self.l, self.j,
        )
    }

    /// The family-specific tuple, e.g. `M4(1,2,1,-1,1)`.
    pub fn label(&self) -> String {
        match self.family {
            Family::M1 => format!("M1({},{},{})", self.p, self.e, self.j),
            Family::M2 => format!("M2({},{})", self.p, self.j),
            Family::M3 => format!("M3({},{},{})", self.k, self.e, self.j),
            Family::M4 => format!(
                "M4({},{},{},{},{})",
                self.k, self.e, self.i, self.l, self.j
            ),
        }
    }

    /// The group label, e.g. `G4(1,2,1,-1)`; for M2 the flattening depends on `j`.
    pub fn group_label(&self) -> String {
        match self.family {
            Family::M1 => format!("G1({},{})", self.p, self.e),
            Family::M2 => format!("G2({})", self.p),
            Family::M3 => format!("G3({},{})", self.k, self.e),
            Family::M4 => format!("G4({},{},{},{})", self.k, self.e, self.i, self.l),
        }
    }
}

impl fmt::Display for MapParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn nonneg(name: &'static str, v: i64) -> Result<u64, ParamError> {
    u64::try_from(v).map_err(|_| ParamError::Shape(format!("{name} must be non-negative")))
}

fn agree(name: &str, given: Option<i64>, derived: u64) -> Result<(), ParamError> {
    match given {
        Some(g) if g != derived as i64 => Err(ParamError::Inconsistent(format!(
            "{name} = {g} but the other parameters give {derived}"
        ))),
        _ => Ok(()),
    }
}

/// Checks a raw parameter set against the family menus and fills in the
/// derived constants.
pub fn validate_params(raw: &RawParams) -> Result<MapParameters, ParamError> {
    let family = raw.family.ok_or(ParamError::Missing("family"))?;
    if let Some(m) = raw.m {
        let m = nonneg("m", m)?;
        if m >= 4 && !is_prime(m) {
            return Err(ParamError::CompositeM(m));
        }
    }
    match family {
        Family::M1 => validate_m1(raw),
        Family::M2 => validate_m2(raw),
        Family::M3 => validate_m3(raw),
        Family::M4 => validate_m4(raw),
    }
}

fn prime_from(raw: &RawParams) -> Result<u64, ParamError> {
    let p = raw
        .p
        .or(raw.m)
        .ok_or(ParamError::Missing("p"))
        .and_then(|p| nonneg("p", p))?;
    agree("m", raw.m, p)?;
    if !is_prime(p) {
        return Err(if p >= 4 {
            ParamError::CompositeM(p)
        } else {
            ParamError::Shape(format!("m = p = {p} must be an odd prime"))
        });
    }
    if p < 3 {
        return Err(ParamError::Shape("m must be at least 3".into()));
    }
    Ok(p)
}

fn validate_m1(raw: &RawParams) -> Result<MapParameters, ParamError> {
    let p = prime_from(raw)?;
    let e = match (raw.e, raw.n) {
        (Some(e), _) => nonneg("e", e)? as u32,
        (None, Some(n)) => {
            let n = nonneg("n", n)?;
            let (e, rest) = split_prime_power(n, p);
            if rest != 1 {
                return Err(ParamError::NotPrimePower { m: p, n });
            }
            e
        }
        (None, None) => return Err(ParamError::Missing("e")),
    };
    if e == 0 {
        return Err(ParamError::Shape("M1 requires e >= 1".into()));
    }
    let n = p.pow(e);
    agree("n", raw.n, n)?;
    if raw.k.is_some_and(|k| k != 1) || raw.i.is_some_and(|i| i != 0) || raw.l.is_some_and(|l| l != 0)
    {
        return Err(ParamError::Inconsistent("M1 takes no k, i or l".into()));
    }
    if p == 3 {
        // G1(3,e) with r = 2 is G3(1,e)
        let alias = RawParams {
            family: Some(Family::M3),
            m: Some(3),
            n: Some(n as i64),
            e: Some(e as i64),
            k: Some(1),
            j: raw.j,
            ..RawParams::default()
        };
        return validate_m3(&alias);
    }
    let modulus = n * (p - 1);
    let j_input = raw.j.unwrap_or(1);
    let j = reduce(j_input, modulus);
    if gcd(j, modulus) != 1 {
        return Err(ParamError::NotUnit {
            j: j_input,
            modulus,
        });
    }
    Ok(MapParameters {
        family: Family::M1,
        m: p,
        n,
        p,
        e,
        k: 1,
        i: 0,
        l: 0,
        j: j as i64,
        j_input,
        r: Some(smallest_primitive_root(p, e + 1)),
        t: None,
        u: None,
    })
}

fn validate_m2(raw: &RawParams) -> Result<MapParameters, ParamError> {
    let p = match (raw.p, raw.m, raw.n) {
        (Some(p), _, _) | (None, Some(p), _) | (None, None, Some(p)) => p,
        _ => return Err(ParamError::Missing("p")),
    };
    let p = prime_from(&RawParams {
        p: Some(p),
        m: raw.m,
        ..RawParams::default()
    })?;
    agree("n", raw.n, p)?;
    agree("e", raw.e, 1)?;
    if p < 5 {
        return Err(ParamError::Shape("M2 requires p >= 5".into()));
    }
    if raw.k.is_some_and(|k| k != 1) || raw.i.is_some_and(|i| i != 0) || raw.l.is_some_and(|l| l != 0)
    {
        return Err(ParamError::Inconsistent("M2 takes no k, i or l".into()));
    }
    let modulus = p - 1;
    let j_input = raw.j.unwrap_or(1);
    let j = reduce(j_input, modulus);
    if gcd(j, modulus) != 1 {
        return Err(ParamError::NotUnit {
            j: j_input,
            modulus,
        });
    }
    Ok(MapParameters {
        family: Family::M2,
        m: p,
        n: p,
        p,
        e: 1,
        k: 1,
        i: 0,
        l: 0,
        j: j as i64,
        j_input,
        r: None,
        t: Some(smallest_primitive_root(p, 1)),
        u: None,
    })
}

/// `n = 3^e k` with `3 ∤ k`, from whichever of `n`, `(e, k)` is given.
fn three_shape(raw: &RawParams) -> Result<(u64, u32, u64), ParamError> {
    agree("m", raw.m, 3)?;
    agree("p", raw.p, 3)?;
    let (n, e, k) = match raw.n {
        Some(n) => {
            let n = nonneg("n", n)?;
            if n == 0 {
                return Err(ParamError::Shape("n must be positive".into()));
            }
            let (e, k) = split_prime_power(n, 3);
            agree("e", raw.e, e as u64)?;
            agree("k", raw.k, k)?;
            (n, e, k)
        }
        None => {
            let e = nonneg("e", raw.e.ok_or(ParamError::Missing("n"))?)? as u32;
            let k = nonneg("k", raw.k.unwrap_or(1))?;
            if k == 0 || k % 3 == 0 {
                return Err(ParamError::Shape(format!("k = {k} must be positive and prime to 3")));
            }
            (3u64.pow(e) * k, e, k)
        }
    };
    if n < 2 {
        return Err(ParamError::Shape("n must be at least 2".into()));
    }
    Ok((n, e, k))
}

fn validate_m3(raw: &RawParams) -> Result<MapParameters, ParamError> {
    let (n, e, k) = three_shape(raw)?;
    if e == 0 {
        return Err(ParamError::Shape("M3 requires 3 | n".into()));
    }
    if raw.i.is_some_and(|i| i != 0) || raw.l.is_some_and(|l| l != 0) {
        return Err(ParamError::Inconsistent("M3 takes no i or l".into()));
    }
    let modulus = 2 * n;
    let j_input = raw.j.unwrap_or(1);
    let j0 = reduce(j_input, modulus);
    if gcd(j0, modulus) != 1 {
        return Err(ParamError::NotUnit {
            j: j_input,
            modulus,
        });
    }
    // classes are residues modulo 2*3^e; pick the least unit in the class
    let class_mod = 2 * 3u64.pow(e);
    let j = (0..k)
        .map(|s| j0 % class_mod + s * class_mod)
        .find(|&c| gcd(c, modulus) == 1)
        .expect("every class modulo 2*3^e contains a unit modulo 2n");
    let u = if k == 1 {
        0
    } else {
        mod_inverse(3i64.pow(e), k).expect("3 is prime to k")
    };
    Ok(MapParameters {
        family: Family::M3,
        m: 3,
        n,
        p: 3,
        e,
        k,
        i: 0,
        l: 0,
        j: j as i64,
        j_input,
        r: None,
        t: None,
        u: Some(u),
    })
}

/// Admissible `(i, l)` pairs of M4 for a given `e`.
pub fn m4_menu(e: u32) -> &'static [(i64, i64)] {
    match e {
        0 => &[(0, 0)],
        1 => &[(0, 0), (0, 1)],
        _ => &[(0, 0), (0, 1), (1, 0), (1, 1), (1, -1)],
    }
}

fn validate_m4(raw: &RawParams) -> Result<MapParameters, ParamError> {
    let (n, e, k) = three_shape(raw)?;
    let i = raw.i.unwrap_or(0);
    let l = raw.l.unwrap_or(0);
    if !m4_menu(e).contains(&(i, l)) {
        return Err(ParamError::MenuViolation { e, i, l });
    }
    let modulus = 2 * n;
    let j_input = raw.j.unwrap_or(1);
    let j = match reduce(j_input, modulus) {
        1 => 1,
        r if r == modulus - 1 => -1,
        _ => {
            return Err(ParamError::BadSign {
                j: j_input,
                i,
                l,
            })
        }
    };
    if (i, l) == (0, 0) && j != 1 {
        return Err(ParamError::BadSign {
            j: j_input,
            i,
            l,
        });
    }
    Ok(MapParameters {
        family: Family::M4,
        m: 3,
        n,
        p: 3,
        e,
        k,
        i,
        l,
        j,
        j_input,
        r: None,
        t: None,
        u: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(family: Family) -> RawParams {
        RawParams {
            family: Some(family),
            ..RawParams::default()
        }
    }

    #[test]
    fn m4_on_k32_defaults() {
        let p = validate_params(&RawParams {
            m: Some(3),
            n: Some(2),
            ..raw(Family::M4)
        })
        .unwrap();
        assert_eq!((p.k, p.e, p.i, p.l, p.j), (2, 0, 0, 0, 1));
    }

    #[test]
    fn m1_p5() {
        let p = validate_params(&RawParams {
            p: Some(5),
            e: Some(1),
            j: Some(3),
            ..raw(Family::M1)
        })
        .unwrap();
        assert_eq!((p.m, p.n, p.j, p.r), (5, 5, 3, Some(2)));
    }

    #[test]
    fn m4_e1_menu_violation() {
        let err = validate_params(&RawParams {
            m: Some(3),
            n: Some(3),
            i: Some(1),
            l: Some(0),
            ..raw(Family::M4)
        })
        .unwrap_err();
        assert_eq!(err, ParamError::MenuViolation { e: 1, i: 1, l: 0 });
    }

    #[test]
    fn composite_m_rejected() {
        for family in [Family::M1, Family::M2, Family::M4] {
            let err = validate_params(&RawParams {
                m: Some(4),
                n: Some(2),
                ..raw(family)
            })
            .unwrap_err();
            assert_eq!(err, ParamError::CompositeM(4));
        }
    }

    #[test]
    fn j_must_be_a_unit() {
        let err = validate_params(&RawParams {
            p: Some(5),
            e: Some(1),
            j: Some(4),
            ..raw(Family::M1)
        })
        .unwrap_err();
        assert_eq!(err, ParamError::NotUnit { j: 4, modulus: 20 });
    }

    #[test]
    fn n_must_be_a_power_of_p() {
        let err = validate_params(&RawParams {
            p: Some(5),
            n: Some(10),
            ..raw(Family::M1)
        })
        .unwrap_err();
        assert_eq!(err, ParamError::NotPrimePower { m: 5, n: 10 });
    }

    #[test]
    fn m1_with_p3_is_m3() {
        let p = validate_params(&RawParams {
            p: Some(3),
            e: Some(2),
            j: Some(5),
            ..raw(Family::M1)
        })
        .unwrap();
        assert_eq!(p.family, Family::M3);
        assert_eq!((p.k, p.e, p.j), (1, 2, 5));
    }

    #[test]
    fn m3_j_reduced_to_class_representative() {
        // n = 6: classes modulo 6 among units modulo 12
        let p = validate_params(&RawParams {
            m: Some(3),
            n: Some(6),
            j: Some(7),
            ..raw(Family::M3)
        })
        .unwrap();
        assert_eq!((p.j, p.j_input, p.u), (1, 7, Some(1)));
        let p = validate_params(&RawParams {
            n: Some(6),
            j: Some(11),
            ..raw(Family::M3)
        })
        .unwrap();
        assert_eq!(p.j, 5);
    }

    #[test]
    fn m3_requires_three_dividing_n() {
        assert!(matches!(
            validate_params(&RawParams {
                n: Some(4),
                ..raw(Family::M3)
            }),
            Err(ParamError::Shape(_))
        ));
    }

    #[test]
    fn m3_u_is_inverse_of_power_of_three() {
        // n = 3^1 * 5: 3u = 1 mod 5 gives u = 2
        let p = validate_params(&RawParams {
            n: Some(15),
            ..raw(Family::M3)
        })
        .unwrap();
        assert_eq!(p.u, Some(2));
    }

    #[test]
    fn m4_signs() {
        let p = validate_params(&RawParams {
            n: Some(9),
            i: Some(1),
            l: Some(-1),
            j: Some(17),
            ..raw(Family::M4)
        })
        .unwrap();
        assert_eq!(p.j, -1);
        assert!(validate_params(&RawParams {
            n: Some(9),
            j: Some(-1),
            ..raw(Family::M4)
        })
        .is_err());
        assert!(validate_params(&RawParams {
            n: Some(9),
            i: Some(1),
            j: Some(5),
            ..raw(Family::M4)
        })
        .is_err());
    }

    #[test]
    fn m2_parameters() {
        let p = validate_params(&RawParams {
            p: Some(7),
            j: Some(5),
            ..raw(Family::M2)
        })
        .unwrap();
        assert_eq!((p.m, p.n, p.j, p.t), (7, 7, 5, Some(3)));
        assert!(validate_params(&RawParams {
            p: Some(3),
            ..raw(Family::M2)
        })
        .is_err());
    }

    #[test]
    fn json_rejects_unknown_fields() {
        assert!(matches!(
            RawParams::from_json(r#"{"family":"M4","m":3,"n":2,"q":1}"#),
            Err(ParamError::Json(_))
        ));
        let raw = RawParams::from_json(r#"{"family":"M1","m":5,"n":5,"p":5,"e":1,"j":1}"#)
            .unwrap();
        assert_eq!(validate_params(&raw).unwrap().label(), "M1(5,1,1)");
    }
}
