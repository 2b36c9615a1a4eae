//! Modular arithmetic for the family constructors.
//!
//! Everything is exact `u64`/`i64` arithmetic widened to 128 bits for each
//! product and reduced immediately.

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("{value} is not a unit modulo {modulus}")]
    NotUnit { value: i64, modulus: u64 },
    #[error("modulus must be positive")]
    ZeroModulus,
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Least non-negative residue of `a` modulo `m`.
pub fn reduce(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorization as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// `p`-adic valuation of `n > 0`, and the `p'`-part.
pub fn split_prime_power(n: u64, p: u64) -> (u32, u64) {
    let mut e = 0;
    let mut k = n;
    while k > 0 && k.is_multiple_of(p) {
        k /= p;
        e += 1;
    }
    (e, k)
}

/// Inverse of `a` modulo `m` in `[0, m)`, via the extended Euclidean algorithm.
pub fn mod_inverse(a: i64, m: u64) -> Result<u64, NumError> {
    if m == 0 {
        return Err(NumError::ZeroModulus);
    }
    if m == 1 {
        return Ok(0);
    }
    let (mut r0, mut r1) = (m as i128, reduce(a, m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(NumError::NotUnit { value: a, modulus: m });
    }
    Ok(s0.rem_euclid(m as i128) as u64)
}

/// Least `k >= 1` with `a^k = 1 (mod m)`.
pub fn multiplicative_order(a: i64, m: u64) -> Result<u64, NumError> {
    if m == 0 {
        return Err(NumError::ZeroModulus);
    }
    let a = reduce(a, m);
    if gcd(a, m) != 1 {
        return Err(NumError::NotUnit {
            value: a as i64,
            modulus: m,
        });
    }
    if m == 1 {
        return Ok(1);
    }
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, m);
        k += 1;
    }
    Ok(k)
}

/// Least `r >= 2` generating the unit group modulo `p^exponent`.
///
/// For `p = 2` with a unit group of order 1, returns 1.
pub fn smallest_primitive_root(p: u64, exponent: u32) -> u64 {
    let m = p.pow(exponent);
    let phi = euler_phi(m);
    if phi == 1 {
        return 1;
    }
    (2..m)
        .find(|&r| gcd(r, m) == 1 && multiplicative_order(r as i64, m) == Ok(phi))
        .expect("unit group modulo an odd prime power is cyclic")
}

/// `1 + q + ... + q^(k-1)` modulo `m`, by accumulation.
pub fn geometric_sum(q: i64, k: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let q = reduce(q, m);
    let mut term = 1 % m;
    let mut acc = 0;
    for _ in 0..k {
        acc = (acc + term) % m;
        term = mul_mod(term, q, m);
    }
    acc
}

/// The integers in `[1, m)` coprime to `m`.
pub fn units(m: u64) -> Vec<u64> {
    (1..m.max(2)).filter(|&j| gcd(j, m) == 1).collect()
}
