//! Coefficient rings: the integers and prime fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A commutative coefficient ring with exact division and a normalized gcd.
#[allow(clippy::wrong_self_convention)]
pub trait CoeffRing: Clone + fmt::Debug + PartialEq + Eq + Send + Sync {
    type Elem: Clone + fmt::Debug + fmt::Display + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `a / b` when `b` divides `a` exactly.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// Normalized gcd: non-negative over the integers, 0 or 1 over a field.
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// A unit `u` such that `u * a` is the normal representative of `a`'s associate class.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// The ring of rational integers with arbitrary-precision elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }
    fn normalizing_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
}

/// The prime field Z/pZ with canonical representatives in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// The caller is responsible for `p` being prime; see [`crate::arith::is_prime_u64`].
    pub fn new(p: u64) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = v.mod_floor(&m);
        r.try_into().expect("residue fits in u64")
    }

    #[inline]
    pub fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    #[inline]
    pub fn add_mod(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        // Fermat inverse
        Some(self.pow_mod(a, self.p - 2))
    }

    pub fn pow_mod(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(acc, base);
            }
            base = self.mul_mod(base, base);
            e >>= 1;
        }
        acc
    }
}

impl CoeffRing for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.add_mod(*a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add_mod(*a, self.p - b % self.p)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_mod(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        self.inv(*b).map(|bi| self.mul_mod(*a, bi))
    }
    fn gcd(&self, a: &u64, b: &u64) -> u64 {
        u64::from(*a != 0 || *b != 0)
    }
    fn normalizing_unit(&self, a: &u64) -> u64 {
        self.inv(*a).unwrap_or(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_inverse_roundtrip() {
        let f = PrimeField::new(271);
        for a in 1..271 {
            let ai = f.inv(a).unwrap();
            assert_eq!(f.mul_mod(a, ai), 1);
        }
        assert_eq!(f.inv(0), None);
    }

    #[test]
    fn integer_gcd_is_non_negative() {
        let z = Integers;
        assert_eq!(z.gcd(&BigInt::from(-6), &BigInt::from(4)), BigInt::from(2));
        assert_eq!(z.gcd(&BigInt::zero(), &BigInt::zero()), BigInt::zero());
    }

    #[test]
    fn reduce_negative_values() {
        let f = PrimeField::new(5);
        assert_eq!(f.reduce_i64(-3), 2);
        assert_eq!(f.reduce_bigint(&BigInt::from(-11)), 4);
    }
}
