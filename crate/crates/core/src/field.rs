//! Exact coefficient domains.
//!
//! [`PrimeField`] is GF(q) for an odd prime q below 2^63, with elements kept in
//! Montgomery form so that multiplication needs no division. [`Rationals`] is
//! the field of arbitrary-precision rationals used in oracle mode.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Field operations used by the elimination kernels.
pub trait Field {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. `a` must be nonzero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    /// `a - f * b`
    fn mul_sub(&self, a: &Self::Elem, f: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(f, b))
    }

    /// `row[k] -= f * pivot[k]` for every `k`.
    fn row_mul_sub(&self, row: &mut [Self::Elem], f: &Self::Elem, pivot: &[Self::Elem]) {
        for (x, y) in row.iter_mut().zip(pivot) {
            *x = self.mul_sub(x, f, y);
        }
    }
}

/// GF(q) with Montgomery arithmetic (R = 2^64).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
    /// -q^{-1} mod 2^64
    q_neg_inv: u64,
    /// R^2 mod q
    r2: u64,
}

impl PrimeField {
    /// 2^61 - 1, a Mersenne prime.
    pub const DEFAULT_MODULUS: u64 = (1 << 61) - 1;

    pub fn new(q: u64) -> Result<Self> {
        if q < 3 || q >= 1 << 63 || !is_prime_u64(q) {
            return Err(Error::param(format!(
                "modulus {q} must be an odd prime below 2^63"
            )));
        }
        // Newton iteration for q^{-1} mod 2^64.
        let mut inv: u64 = q;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(q.wrapping_mul(inv)));
        }
        debug_assert_eq!(q.wrapping_mul(inv), 1);
        let r = ((1u128 << 64) % q as u128) as u64;
        let r2 = ((r as u128 * r as u128) % q as u128) as u64;
        Ok(PrimeField {
            q,
            q_neg_inv: inv.wrapping_neg(),
            r2,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.q_neg_inv);
        let u = ((t + m as u128 * self.q as u128) >> 64) as u64;
        if u >= self.q {
            u - self.q
        } else {
            u
        }
    }

    /// Internal representation of the canonical residue `x mod q`.
    #[inline]
    pub fn from_canonical(&self, x: u64) -> u64 {
        self.redc((x % self.q) as u128 * self.r2 as u128)
    }

    /// Canonical residue in `[0, q)` of an internal element.
    #[inline]
    pub fn to_canonical(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        let r = (x as i128).rem_euclid(self.q as i128) as u64;
        self.from_canonical(r)
    }

    /// Reduction of an arbitrary-precision integer.
    pub fn from_bigint(&self, x: &BigInt) -> u64 {
        let q = BigInt::from(self.q);
        let mut r = x % &q;
        if r.is_negative() {
            r += &q;
        }
        let digits = r.to_u64_digits().1;
        self.from_canonical(digits.first().copied().unwrap_or(0))
    }

    /// Image of a rational; `None` when q divides the denominator.
    pub fn from_rational(&self, x: &BigRational) -> Option<u64> {
        let den = self.from_bigint(x.denom());
        if den == 0 {
            return None;
        }
        Some(self.mul(&self.from_bigint(x.numer()), &self.inv(&den)))
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one();
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            exp >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField::new(Self::DEFAULT_MODULUS).expect("default modulus is prime")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline(always)]
    fn zero(&self) -> u64 {
        0
    }

    #[inline(always)]
    fn one(&self) -> u64 {
        self.from_canonical(1)
    }

    #[inline(always)]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    #[inline(always)]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        s.min(s.wrapping_sub(self.q))
    }

    #[inline(always)]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        let d = a.wrapping_sub(*b);
        d.min(d.wrapping_add(self.q))
    }

    #[inline(always)]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.redc(*a as u128 * *b as u128)
    }

    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.q - 2)
    }

    #[inline(always)]
    fn mul_sub(&self, a: &u64, f: &u64, b: &u64) -> u64 {
        let p = self.mul(f, b);
        self.sub(a, &p)
    }

    fn row_mul_sub(&self, row: &mut [u64], f: &u64, pivot: &[u64]) {
        // Shoup multiplication by the canonical value of f
        let q = self.q;
        let g = self.to_canonical(*f);
        let g_pre = (((g as u128) << 64) / q as u128) as u64;
        for (x, &y) in row.iter_mut().zip(pivot) {
            let est = ((y as u128 * g_pre as u128) >> 64) as u64;
            // branch-free: min(v, v - q) and min(d, d + q) pick the residue
            let p = g.wrapping_mul(y).wrapping_sub(est.wrapping_mul(q));
            let p = p.min(p.wrapping_sub(q));
            let d = x.wrapping_sub(p);
            *x = d.min(d.wrapping_add(q));
        }
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composite_and_even_moduli() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new((1 << 61) + 1).is_err());
        assert!(PrimeField::new(1_000_000_007).is_ok());
    }

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), trial(n), "n = {n}");
        }
        assert!(is_prime_u64(PrimeField::DEFAULT_MODULUS));
    }

    #[test]
    fn canonical_round_trip_and_inverse() {
        let f = PrimeField::default();
        for x in [0u64, 1, 2, 12345, f.modulus() - 1] {
            assert_eq!(f.to_canonical(f.from_canonical(x)), x);
        }
        let a = f.from_canonical(987_654_321);
        assert_eq!(f.to_canonical(f.mul(&a, &f.inv(&a))), 1);
        assert_eq!(f.to_canonical(f.from_i64(-1)), f.modulus() - 1);
    }

    proptest! {
        #[test]
        fn montgomery_matches_u128_arithmetic(a in 0u64..PrimeField::DEFAULT_MODULUS, b in 0u64..PrimeField::DEFAULT_MODULUS) {
            let f = PrimeField::default();
            let q = f.modulus();
            let (x, y) = (f.from_canonical(a), f.from_canonical(b));
            prop_assert_eq!(f.to_canonical(f.mul(&x, &y)), mul_mod(a, b, q));
            prop_assert_eq!(f.to_canonical(f.add(&x, &y)), ((a as u128 + b as u128) % q as u128) as u64);
            prop_assert_eq!(f.to_canonical(f.sub(&x, &y)), ((a as u128 + q as u128 - b as u128) % q as u128) as u64);
        }

        #[test]
        fn row_update_matches_elementwise(q_big in any::<bool>(), f in any::<u64>(), ys in proptest::collection::vec((any::<u64>(), any::<u64>()), 1..20)) {
            let field = if q_big { PrimeField::default() } else { PrimeField::new((1u64 << 63) - 25).unwrap() };
            let f = field.from_canonical(f);
            let mut row: Vec<u64> = ys.iter().map(|p| field.from_canonical(p.0)).collect();
            let pivot: Vec<u64> = ys.iter().map(|p| field.from_canonical(p.1)).collect();
            let expect: Vec<u64> = row.iter().zip(&pivot).map(|(x, y)| field.mul_sub(x, &f, y)).collect();
            field.row_mul_sub(&mut row, &f, &pivot);
            prop_assert_eq!(row, expect);
        }

        #[test]
        fn small_prime_arithmetic(a in 0u64..1_000_003, b in 1u64..1_000_003) {
            let f = PrimeField::new(1_000_003).unwrap();
            let (x, y) = (f.from_canonical(a), f.from_canonical(b));
            prop_assert_eq!(f.to_canonical(f.mul(&x, &y)), a * b % 1_000_003);
            prop_assert_eq!(f.mul(&f.mul(&x, &y), &f.inv(&y)), x);
        }
    }
}
