//! Bézout identities `Σ B_i·P_i = δ` for coprime univariate integer polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::parse::parse_in;
use crate::poly::univariate::{univariate_family, UniPoly};
use crate::poly::Polynomial;

/// Dense polynomial over Q, constant term first, trimmed.
#[derive(Clone, Debug, PartialEq)]
struct QPoly(Vec<BigRational>);

impl QPoly {
    fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }

    fn from_int(p: &UniPoly) -> Self {
        Self::new(p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    fn zero() -> Self {
        QPoly(vec![])
    }

    fn one() -> Self {
        QPoly(vec![BigRational::one()])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn coeff(&self, i: usize) -> BigRational {
        self.0.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.0.iter().map(|a| a * c).collect())
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.0.last().expect("division by zero polynomial").clone();
        let dd = d.0.len() - 1;
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    fn monic_factor(&self) -> BigRational {
        self.0.last().map_or_else(BigRational::one, |l| l.recip())
    }
}

/// Extended Euclid: returns monic `g = gcd(a, b)` with `s·a + t·b = g`.
fn ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
    let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let f = r0.monic_factor();
    (r0.scale(&f), s0.scale(&f), t0.scale(&f))
}

/// Integer identity `Σ cofactors[i]·P_i = delta` in one variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutCertificate {
    pub variable: String,
    /// The `P_i`, formatted.
    pub polys: Vec<String>,
    /// The `B_i`, formatted.
    pub cofactors: Vec<String>,
    #[serde(with = "crate::serde_big")]
    pub delta: BigInt,
}

impl BezoutCertificate {
    /// Re-expands `Σ B_i·P_i − δ` and checks it is the zero polynomial.
    pub fn verify(&self) -> Result<()> {
        if self.delta.is_zero() {
            return Err(Error::Verification("Bezout delta is zero".into()));
        }
        if self.polys.len() != self.cofactors.len() {
            return Err(Error::Verification("cofactor count differs from polynomial count".into()));
        }
        let vars = vec![self.variable.clone()];
        let mut acc = Polynomial::int_constant(vars.clone(), -self.delta.clone());
        for (p, b) in self.polys.iter().zip(&self.cofactors) {
            let p = parse_in(p, &vars)?;
            let b = parse_in(b, &vars)?;
            acc = &acc + &(&p * &b);
        }
        if acc.is_zero() {
            Ok(())
        } else {
            Err(Error::Verification(format!("Bezout identity leaves remainder {acc}")))
        }
    }
}

/// Cofactors over Z and the positive integer δ with `Σ B_i·P_i = δ`.
///
/// Runs extended Euclid over Q, folding across the list, then clears
/// denominators and divides out the common content of the cofactors and δ.
pub fn bezout_integer(polys: &[UniPoly], var: &str) -> Result<(Vec<UniPoly>, BigInt)> {
    let nonzero: Vec<usize> = (0..polys.len()).filter(|&i| !polys[i].is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::ZeroPolynomial("all inputs are zero".into()));
    }
    let qs: Vec<QPoly> = polys.iter().map(QPoly::from_int).collect();
    let first = nonzero[0];
    let f = qs[first].monic_factor();
    let mut g = qs[first].scale(&f);
    let mut cof: Vec<QPoly> = vec![QPoly::zero(); polys.len()];
    cof[first] = QPoly(vec![f]);
    for &i in &nonzero[1..] {
        let (ng, s, t) = ext_gcd(&g, &qs[i]);
        for c in cof.iter_mut() {
            *c = c.mul(&s);
        }
        cof[i] = t;
        g = ng;
    }
    if g.0.len() != 1 {
        let common = UniPoly::new(
            g.0.iter().map(|c| (c * g.0.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))).to_integer()).collect(),
        );
        return Err(Error::NotCoprime(common.to_polynomial(var).to_string()));
    }
    let denom = cof
        .iter()
        .flat_map(|c| c.0.iter())
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut ints: Vec<UniPoly> = cof
        .iter()
        .map(|c| UniPoly::new(c.0.iter().map(|x| (x * &denom).to_integer()).collect()))
        .collect();
    let mut delta = denom;
    let common = ints.iter().fold(delta.clone(), |acc, b| acc.gcd(&b.content()));
    if !common.is_one() {
        ints = ints
            .iter()
            .map(|b| UniPoly::new(b.coeffs().iter().map(|c| c / &common).collect()))
            .collect();
        delta /= &common;
    }
    if delta.is_negative() {
        delta = -delta;
        ints = ints.iter().map(UniPoly::neg).collect();
    }
    Ok((ints, delta))
}

/// Bézout certificate for coprime polynomials in one common variable.
pub fn bezout_delta(polys: &[Polynomial]) -> Result<BezoutCertificate> {
    let (var, dense) = univariate_family(polys)?;
    let (cofactors, delta) = bezout_integer(&dense, &var)?;
    let cert = BezoutCertificate {
        polys: dense.iter().map(|p| p.to_polynomial(&var).to_string()).collect(),
        cofactors: cofactors.iter().map(|p| p.to_polynomial(&var).to_string()).collect(),
        variable: var,
        delta,
    };
    cert.verify()?;
    Ok(cert)
}
