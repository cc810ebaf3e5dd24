//! Evaluation kernels for the enumeration hot loops.
//!
//! [`IntEvaluator`] evaluates a family at machine-integer points with checked
//! 128-bit arithmetic and falls back to exact big-integer evaluation when a
//! value overflows. [`ModPEvaluator`] evaluates reduced families over `F_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{MPoly, Polynomial};
use crate::error::{Error, Result};

type SparseTerm<C> = (C, Vec<(usize, u32)>);

fn sparse_exponents(e: &[u32]) -> Vec<(usize, u32)> {
    e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| (i, x)).collect()
}

/// Family evaluator over integer points, sharing one sorted variable list.
#[derive(Clone, Debug)]
pub struct IntEvaluator {
    nvars: usize,
    exact: Vec<Polynomial>,
    /// `None` when some coefficient does not fit in `i128`.
    fast: Option<Vec<Vec<SparseTerm<i128>>>>,
}

impl IntEvaluator {
    pub fn new(polys: &[Polynomial]) -> Self {
        let exact = MPoly::unify_all(polys);
        let nvars = exact.first().map_or(0, |p| p.nvars());
        let fast = exact
            .iter()
            .map(|p| {
                p.terms()
                    .map(|(m, c)| Some((c.to_i128()?, sparse_exponents(m.exponents()))))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>();
        IntEvaluator { nvars, exact, fast }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.exact
    }

    pub fn vars(&self) -> &[String] {
        self.exact.first().map_or(&[], |p| p.vars())
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: len });
        }
        Ok(())
    }

    fn eval_fast(terms: &[SparseTerm<i128>], pt: &[i64]) -> Option<i128> {
        let mut acc: i128 = 0;
        for (c, exps) in terms {
            let mut v = *c;
            for &(i, e) in exps {
                v = v.checked_mul((pt[i] as i128).checked_pow(e)?)?;
            }
            acc = acc.checked_add(v)?;
        }
        Some(acc)
    }

    /// Exact values of every polynomial at `pt`.
    pub fn values(&self, pt: &[i64]) -> Result<Vec<BigInt>> {
        self.check_dim(pt.len())?;
        Ok((0..self.exact.len()).map(|i| self.value(i, pt)).collect())
    }

    fn value(&self, i: usize, pt: &[i64]) -> BigInt {
        if let Some(fast) = &self.fast {
            if let Some(v) = Self::eval_fast(&fast[i], pt) {
                return BigInt::from(v);
            }
        }
        self.exact[i].eval_i64(pt).expect("dimension checked")
    }

    /// `gcd` of the values when everything fits in 128 bits.
    fn gcd_small(&self, pt: &[i64]) -> Option<u128> {
        let fast = self.fast.as_ref()?;
        let mut g: u128 = 0;
        for terms in fast {
            let v = Self::eval_fast(terms, pt)?;
            g = g.gcd(&v.unsigned_abs());
            if g == 1 {
                return Some(1);
            }
        }
        Some(g)
    }

    /// `d_n = gcd(P_1(n), …, P_s(n))`, non-negative, `0` iff all values vanish.
    pub fn gcd_at(&self, pt: &[i64]) -> Result<BigInt> {
        self.check_dim(pt.len())?;
        if let Some(g) = self.gcd_small(pt) {
            return Ok(BigInt::from(g));
        }
        let mut g = BigInt::zero();
        for i in 0..self.exact.len() {
            g = g.gcd(&self.value(i, pt));
            if g == BigInt::from(1) {
                break;
            }
        }
        Ok(g)
    }

    /// Whether `d_n = 1`.
    pub fn is_coprime_at(&self, pt: &[i64]) -> bool {
        match self.gcd_small(pt) {
            Some(g) => g == 1,
            None => self.gcd_at(pt).map(|g| g == BigInt::from(1)).unwrap_or(false),
        }
    }

    /// Gcd at a point given by arbitrary-precision coordinates.
    pub fn gcd_at_big(&self, pt: &[BigInt]) -> Result<BigInt> {
        self.check_dim(pt.len())?;
        if let Some(small) = pt.iter().map(|v| v.to_i64()).collect::<Option<Vec<_>>>() {
            return self.gcd_at(&small);
        }
        let mut g = BigInt::zero();
        for p in &self.exact {
            g = g.gcd(&p.eval(pt)?);
        }
        Ok(g.abs())
    }
}

/// Family evaluator over `F_p` at residue points in `[0, p)^r`.
#[derive(Clone, Debug)]
pub struct ModPEvaluator {
    p: u64,
    nvars: usize,
    polys: Vec<Vec<SparseTerm<u64>>>,
}

impl ModPEvaluator {
    /// The family must already share one variable list; `p` must be prime and below `2^32`.
    pub fn new(polys: &[Polynomial], p: u64) -> Self {
        assert!(p < (1 << 32), "modulus too large for the residue kernel");
        let unified = MPoly::unify_all(polys);
        let nvars = unified.first().map_or(0, |q| q.nvars());
        let field = super::PrimeField::new(p);
        let polys = unified
            .iter()
            .map(|q| {
                q.terms()
                    .filter_map(|(m, c)| {
                        let r = field.reduce_bigint(c);
                        (r != 0).then(|| (r, sparse_exponents(m.exponents())))
                    })
                    .collect()
            })
            .collect();
        ModPEvaluator { p, nvars, polys }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u32) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p;
            }
            e >>= 1;
            if e > 0 {
                b = b * b % self.p;
            }
        }
        acc
    }

    pub fn eval_one(&self, i: usize, pt: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (c, exps) in &self.polys[i] {
            let mut v = *c;
            for &(j, e) in exps {
                v = v * self.pow(pt[j], e) % self.p;
            }
            acc = (acc + v) % self.p;
        }
        acc
    }

    /// Whether every polynomial of the family vanishes at `pt` modulo p.
    pub fn all_vanish(&self, pt: &[u64]) -> bool {
        (0..self.polys.len()).all(|i| self.eval_one(i, pt) == 0)
    }

    /// Whether some polynomial reduces to zero modulo p.
    pub fn has_zero_reduction(&self) -> bool {
        self.polys.iter().any(|t| t.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_family;

    #[test]
    fn cusp_pair_gcd_values() {
        let ev = IntEvaluator::new(&parse_family(&["x^2 - y^3", "x*(y+2) + 1"]).unwrap());
        assert_eq!(ev.gcd_at(&[5, 1]).unwrap(), BigInt::from(8));
        assert_eq!(ev.gcd_at(&[1, -3]).unwrap(), BigInt::from(28));
        assert_eq!(ev.gcd_at(&[5, 5]).unwrap(), BigInt::from(4));
    }

    #[test]
    fn overflow_falls_back_to_exact() {
        let fam = parse_family(&["x^40", "2*x^40"]).unwrap();
        let ev = IntEvaluator::new(&fam);
        let expected = BigInt::from(1_000_000_007i64).pow(40);
        assert_eq!(ev.gcd_at(&[1_000_000_007]).unwrap(), expected);
    }

    #[test]
    fn all_zero_gives_zero() {
        let ev = IntEvaluator::new(&parse_family(&["x", "y"]).unwrap());
        assert_eq!(ev.gcd_at(&[0, 0]).unwrap(), BigInt::zero());
        assert!(!ev.is_coprime_at(&[0, 0]));
        assert!(ev.is_coprime_at(&[0, 1]));
    }

    #[test]
    fn mod_p_matches_integer_evaluation() {
        let fam = parse_family(&["x^2 - y^3", "x*(y+2) + 1"]).unwrap();
        let ev = ModPEvaluator::new(&fam, 7);
        for a in 0..7i64 {
            for b in 0..7i64 {
                let v = fam[0].eval_i64(&[a, b]).unwrap().mod_floor(&BigInt::from(7));
                assert_eq!(BigInt::from(ev.eval_one(0, &[a as u64, b as u64])), v);
            }
        }
    }
}
