//! Dense univariate integer polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Degree, Polynomial};
use crate::error::{Error, Result};

/// Coefficients from the constant term upward, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &BigInt) -> Self {
        Self::new(vec![-r, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n as u32 - 1),
        }
    }

    /// Degree as an index; callers must rule out the zero polynomial.
    pub fn deg(&self) -> usize {
        self.coeffs.len().checked_sub(1).expect("degree of the zero polynomial")
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| -a).collect())
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        let c = if self.leading().is_some_and(|l| l.is_negative()) { -c } else { c };
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Exact quotient over the integers, or `None` if the division leaves a
    /// remainder or needs fractions.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return None;
        }
        let dl = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, rem) = top.div_rem(dl);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &qc * dc;
            }
            q[k] = qc;
        }
        r.iter().all(|c| c.is_zero()).then(|| Self::new(q))
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) · a mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "pseudo-remainder by zero");
        if self.coeffs.len() < d.coeffs.len() {
            return self.clone();
        }
        let dl = d.leading().unwrap().clone();
        let dd = d.deg();
        let mut r = self.coeffs.clone();
        let mut e = self.deg() - dd + 1;
        while r.len() > dd && !r.is_empty() {
            let top = r.last().unwrap().clone();
            let shift = r.len() - 1 - dd;
            for c in r.iter_mut() {
                *c *= &dl;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[shift + j] -= &top * dc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            e -= 1;
        }
        Self::new(r).scale(&dl.pow(e as u32))
    }

    /// Polynomial in the named variable.
    pub fn to_polynomial(&self, var: &str) -> Polynomial {
        let vars = vec![var.to_string()];
        Polynomial::from_terms(
            super::Integers,
            vars,
            self.coeffs.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())),
        )
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial("x"))
    }
}

/// Converts a family of polynomials in at most one common variable to dense form.
///
/// Returns the variable name (the unique occurring one, else the first
/// ambient variable, else `x`) and the dense polynomials.
pub fn univariate_family(polys: &[Polynomial]) -> Result<(String, Vec<UniPoly>)> {
    let mut occurring: Vec<String> = polys.iter().flat_map(|p| p.occurring_vars()).collect();
    occurring.sort();
    occurring.dedup();
    if occurring.len() > 1 {
        return Err(Error::NotUnivariate(occurring));
    }
    let var = occurring
        .first()
        .cloned()
        .or_else(|| polys.iter().find_map(|p| p.vars().first().cloned()))
        .unwrap_or_else(|| "x".to_string());
    let dense = polys
        .iter()
        .map(|p| {
            let idx = p.var_index(&var);
            let mut coeffs = Vec::new();
            for (m, c) in p.terms() {
                let k = idx.map_or(0, |i| m.exponents()[i]) as usize;
                if coeffs.len() <= k {
                    coeffs.resize(k + 1, BigInt::zero());
                }
                coeffs[k] = c.clone();
            }
            UniPoly::new(coeffs)
        })
        .collect();
    Ok((var, dense))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_polynomial;

    #[test]
    fn conversion_round_trip() {
        let p = parse_polynomial("25 - y^3").unwrap();
        let (v, d) = univariate_family(std::slice::from_ref(&p)).unwrap();
        assert_eq!(v, "y");
        assert_eq!(d[0], UniPoly::from_i64(&[25, 0, 0, -1]));
        assert_eq!(d[0].to_polynomial("y"), p);
    }

    #[test]
    fn rejects_two_variables() {
        let ps = [parse_polynomial("x").unwrap(), parse_polynomial("y").unwrap()];
        assert!(matches!(univariate_family(&ps), Err(Error::NotUnivariate(_))));
    }

    #[test]
    fn exact_division_and_pseudo_remainder() {
        let a = UniPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&UniPoly::from_i64(&[1, 1])), Some(UniPoly::from_i64(&[-1, 1])));
        assert_eq!(a.div_exact(&UniPoly::from_i64(&[1, 2])), None);
        // prem(x^2 + 1, 2x + 1) = 4 * (x^2+1) mod (2x+1) = 5
        let r = UniPoly::from_i64(&[1, 0, 1]).pseudo_rem(&UniPoly::from_i64(&[1, 2]));
        assert_eq!(r, UniPoly::from_i64(&[5]));
    }

    #[test]
    fn evaluation_uses_horner() {
        let p = UniPoly::from_i64(&[5, -5, -5, 5]);
        assert_eq!(p.eval_i64(2), BigInt::from(15));
        assert_eq!(p.content(), BigInt::from(5));
        assert_eq!(p.primitive(), UniPoly::from_i64(&[1, -1, -1, 1]));
    }
}
