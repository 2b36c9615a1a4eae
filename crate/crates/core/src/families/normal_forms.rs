//! Normal-form arithmetic for the normal subgroup `H` of the families.
//!
//! [`Metacyclic`] multiplies `x^i z^j` in `<x, z | x^N = z^N = 1, z^x = z^q>`
//! with `N = p^e`, `q = 1 + p^f`. [`NonabelianH`] multiplies `x^i y^l w^ω`
//! with `w = [x, y]` central of order 3, and folds `w` into `x^(n/3) y^(-n/3)`
//! to give the order-`n^2` group `H`.

use crate::numtheory::{geometric_sum, pow_mod, reduce};
use crate::permgroup::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum NormalFormError {
    #[error("metacyclic parameters need p prime, e >= 1 and 1 <= f <= e (got p={p}, e={e}, f={f})")]
    Metacyclic { p: u64, e: u32, f: u32 },
    #[error("nonabelian H needs 9 | n (got n={0})")]
    Nonabelian(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metacyclic {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    modulus: u64,
    q: u64,
}

impl Metacyclic {
    pub fn new(p: u64, e: u32, f: u32) -> Result<Self, NormalFormError> {
        if !crate::numtheory::is_prime(p) || e == 0 || f == 0 || f > e {
            return Err(NormalFormError::Metacyclic { p, e, f });
        }
        let modulus = p.pow(e);
        Ok(Metacyclic {
            p,
            e,
            f,
            modulus,
            q: (1 + p.pow(f)) % modulus,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `(x^i z^j)(x^k z^l) = x^(i+k) z^(j q^k + l)`.
    pub fn mul(&self, u: (u64, u64), v: (u64, u64)) -> (u64, u64) {
        let n = self.modulus;
        let (i, j) = u;
        let (k, l) = v;
        (
            (i + k) % n,
            (j % n * pow_mod(self.q, k, n) + l) % n,
        )
    }

    /// `(x^i z^j)^k = x^(ik) z^(j (q^(ik) - 1) / (q^i - 1))`.
    pub fn pow(&self, u: (u64, u64), k: u64) -> (u64, u64) {
        let n = self.modulus;
        let (i, j) = u;
        let qi = pow_mod(self.q, i, n);
        (
            (i as u128 * k as u128 % n as u128) as u64,
            (j as u128 * geometric_sum(qi as i64, k, n) as u128 % n as u128) as u64,
        )
    }

    pub fn inverse(&self, u: (u64, u64)) -> (u64, u64) {
        let n = self.modulus;
        let i = (n - u.0 % n) % n;
        // (x^i z^j)^-1 = z^-j x^-i = x^-i z^(-j q^-i)
        let j = reduce(-((u.1 % n * pow_mod(self.q, i, n)) as i64), n);
        (i, j)
    }

    pub fn elements(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let n = self.modulus;
        (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
    }

    fn index(&self, u: (u64, u64)) -> usize {
        (u.0 * self.modulus + u.1) as usize
    }

    /// Right-regular permutations of `x = (1,0)` and `z = (0,1)`.
    pub fn regular_generators(&self) -> (Permutation, Permutation) {
        let right = |g: (u64, u64)| {
            let images = self.elements().map(|u| self.index(self.mul(u, g))).collect();
            Permutation::from_images(images).expect("right multiplication is a bijection")
        };
        (right((1, 0)), right((0, 1)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonabelianH {
    pub n: u64,
}

/// `(i, l, ω)` stands for `x^i y^l w^ω`.
pub type HTriple = (u64, u64, u64);

impl NonabelianH {
    pub fn new(n: u64) -> Result<Self, NormalFormError> {
        if n == 0 || !n.is_multiple_of(9) {
            return Err(NormalFormError::Nonabelian(n));
        }
        Ok(NonabelianH { n })
    }

    /// `(x^i y^l w^ω)(x^r y^d w^ω') = x^(i+r) y^(l+d) w^(ω+ω'-l r)`.
    pub fn mul(&self, u: HTriple, v: HTriple) -> HTriple {
        let n = self.n;
        let (i, l, w1) = u;
        let (r, d, w2) = v;
        (
            (i + r) % n,
            (l + d) % n,
            reduce(w1 as i64 + w2 as i64 - (l % 3 * (r % 3)) as i64, 3),
        )
    }

    /// `(x^i y^l)^r = x^(ri) y^(rl) w^(-r(r-1)/2 i l)`, times `w^(rω)`.
    pub fn pow(&self, u: HTriple, r: u64) -> HTriple {
        let n = self.n;
        let (i, l, w) = u;
        let tri = (r as u128 * (r as u128).saturating_sub(1) / 2 % 3) as i64;
        (
            (i as u128 * r as u128 % n as u128) as u64,
            (l as u128 * r as u128 % n as u128) as u64,
            reduce((w * (r % 3)) as i64 - tri * (i % 3 * (l % 3)) as i64, 3),
        )
    }

    pub fn commutator(&self, u: HTriple, v: HTriple) -> HTriple {
        let inv = |t: HTriple| self.pow(t, 3 * self.n - 1);
        self.mul(self.mul(inv(u), inv(v)), self.mul(u, v))
    }

    /// Folds `w^ω` into `x^(ωn/3) y^(-ωn/3)`.
    pub fn normalize(&self, u: HTriple) -> (u64, u64) {
        let n = self.n;
        let s = n / 3;
        let (i, l, w) = u;
        ((i + w * s) % n, (l + n - w * s % n) % n)
    }

    /// Product in `H`, elements written `x^i y^l`.
    pub fn h_mul(&self, u: (u64, u64), v: (u64, u64)) -> (u64, u64) {
        self.normalize(self.mul((u.0, u.1, 0), (v.0, v.1, 0)))
    }

    /// Right-regular permutations of `x` and `y` on the `n^2` elements of `H`.
    pub fn regular_generators(&self) -> (Permutation, Permutation) {
        let n = self.n;
        let right = |g: (u64, u64)| {
            let images = (0..n)
                .flat_map(|i| (0..n).map(move |l| (i, l)))
                .map(|u| {
                    let (i, l) = self.h_mul(u, g);
                    (i * n + l) as usize
                })
                .collect();
            Permutation::from_images(images).expect("right multiplication is a bijection")
        };
        (right((1, 0)), right((0, 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{PermGroup, DEFAULT_CLOSURE_CAP};
    use proptest::prelude::*;

    fn m321() -> Metacyclic {
        Metacyclic::new(3, 2, 1).unwrap()
    }

    #[test]
    fn metacyclic_examples() {
        let h = m321();
        assert_eq!(h.q(), 4);
        assert_eq!(h.mul((0, 0), (5, 7)), (5, 7));
        assert_eq!(h.mul((1, 1), (1, 0)), (2, 4));
        let mut acc = (0, 0);
        for _ in 0..9 {
            acc = h.mul(acc, (1, 1));
        }
        assert_eq!(acc, (0, 0));
        assert_eq!(h.pow((1, 1), 9), (0, 0));
        assert!(Metacyclic::new(3, 1, 2).is_err());
    }

    #[test]
    fn metacyclic_exponent_is_modulus() {
        let h = m321();
        let exp = h
            .elements()
            .map(|u| (1..=81).find(|&k| h.pow(u, k) == (0, 0)).unwrap())
            .max();
        assert_eq!(exp, Some(9));
    }

    #[test]
    fn metacyclic_associative_exhaustive() {
        let h = m321();
        let all: Vec<_> = h.elements().collect();
        for &u in &all {
            for &v in &all {
                for &w in &all {
                    assert_eq!(h.mul(h.mul(u, v), w), h.mul(u, h.mul(v, w)));
                }
            }
        }
    }

    #[test]
    fn metacyclic_regular_model_has_order_81() {
        let (x, z) = m321().regular_generators();
        let g = PermGroup::from_perms(81, &[x, z], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 81);
    }

    #[test]
    fn nonabelian_examples() {
        let h = NonabelianH::new(9).unwrap();
        let v = (4, 5, 2);
        assert_eq!(h.mul((0, 0, 0), v), v);
        let xy = h.mul((1, 0, 0), (0, 1, 0));
        let yx = h.mul((0, 1, 0), (1, 0, 0));
        assert_eq!((xy, yx), ((1, 1, 0), (1, 1, 2)));
        assert_eq!(h.pow((1, 1, 0), 3), (3, 3, 0));
        assert_eq!(h.commutator((1, 0, 0), (0, 1, 0)), (0, 0, 1));
        assert!(NonabelianH::new(6).is_err());
    }

    #[test]
    fn nonabelian_power_matches_repeated_product() {
        let h = NonabelianH::new(9).unwrap();
        for i in 0..9 {
            for l in 0..9 {
                let mut acc = (0, 0, 0);
                for r in 0..30 {
                    assert_eq!(h.pow((i, l, 0), r), acc);
                    acc = h.mul(acc, (i, l, 0));
                }
            }
        }
    }

    #[test]
    fn nonabelian_h_has_order_81_and_nontrivial_commutator() {
        let h = NonabelianH::new(9).unwrap();
        let (x, y) = h.regular_generators();
        assert!(!x.commutes_with(&y));
        let g = PermGroup::from_perms(81, &[x.clone(), y.clone()], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 81);
        let w = x.inverse().then(&y.inverse()).then(&x).then(&y);
        assert_eq!(w, x.pow(3).then(&y.pow(-3)));
        assert!(g.elements().iter().all(|e| e.commutes_with(&w)));
    }

    proptest! {
        #[test]
        fn nonabelian_associative(a in (0u64..18, 0u64..18, 0u64..3),
                                  b in (0u64..18, 0u64..18, 0u64..3),
                                  c in (0u64..18, 0u64..18, 0u64..3)) {
            let h = NonabelianH::new(18).unwrap();
            prop_assert_eq!(h.mul(h.mul(a, b), c), h.mul(a, h.mul(b, c)));
        }

        #[test]
        fn nonabelian_w_is_central(a in (0u64..9, 0u64..9, 0u64..3)) {
            let h = NonabelianH::new(9).unwrap();
            prop_assert_eq!(h.mul(a, (0, 0, 1)), h.mul((0, 0, 1), a));
        }

        #[test]
        fn metacyclic_inverse(i in 0u64..25, j in 0u64..25) {
            let h = Metacyclic::new(5, 2, 1).unwrap();
            prop_assert_eq!(h.mul((i, j), h.inverse((i, j))), (0, 0));
            prop_assert_eq!(h.mul(h.inverse((i, j)), (i, j)), (0, 0));
        }

        #[test]
        fn metacyclic_power_matches_repeated_product(i in 0u64..27, j in 0u64..27, k in 0u64..60) {
            let h = Metacyclic::new(3, 3, 2).unwrap();
            let mut acc = (0, 0);
            for _ in 0..k {
                acc = h.mul(acc, (i, j));
            }
            prop_assert_eq!(h.pow((i, j), k), acc);
        }
    }
}
