//! Periods of `n ↦ d_n` for coprime one-variable families.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::bezout::bezout_integer;
use crate::algebra::resultant::resultant_prs;
use crate::error::{Error, Result};
use crate::poly::eval::IntEvaluator;
use crate::poly::univariate::{univariate_family, UniPoly};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeriodOrigin {
    Resultant,
    BezoutDelta,
}

/// A positive δ with `d_{n+δ} = d_n` for all integers n and `d_n | δ`.
///
/// Any δ with `Σ B_i·P_i = δ` works: `d_n` divides every `P_i(n)`, hence δ,
/// and `P_i(n+δ) ≡ P_i(n) (mod δ)` gives `gcd(d_n, δ) = gcd(d_{n+δ}, δ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodCertificate {
    pub variable: String,
    pub polys: Vec<String>,
    #[serde(with = "crate::serde_big")]
    pub delta: BigInt,
    pub origin: PeriodOrigin,
    /// The resultant (with sign) or the Bézout constant δ came from.
    #[serde(with = "crate::serde_big")]
    pub origin_value: BigInt,
    /// Inclusive range of n for which periodicity and `d_n | δ` were checked directly.
    pub window: Option<(i64, i64)>,
}

/// δ for a coprime dense family: `|Res|` for pairs, the Bézout constant otherwise.
pub(crate) fn period_delta(dense: &[UniPoly], var: &str) -> Result<(BigInt, PeriodOrigin, BigInt)> {
    let nonconstant = dense.iter().filter(|p| p.degree().or_zero() > 0).count();
    if nonconstant == 0 {
        let consts: Vec<BigInt> = dense.iter().map(|p| p.coeff(0)).collect();
        let g = crate::poly::gcd_all(&consts);
        if g.is_zero() {
            return Err(Error::ZeroPolynomial("period of an all-zero family".into()));
        }
        return Ok((g.clone(), PeriodOrigin::BezoutDelta, g));
    }
    if dense.len() == 2 && nonconstant > 0 {
        let r = resultant_prs(&dense[0], &dense[1]);
        if r.is_zero() {
            // a zero resultant means a common factor; the Bezout route names it
            bezout_integer(dense, var)?;
            return Err(Error::Verification("zero resultant for a coprime pair".into()));
        }
        return Ok((r.abs(), PeriodOrigin::Resultant, r));
    }
    let (_, delta) = bezout_integer(dense, var)?;
    Ok((delta.clone(), PeriodOrigin::BezoutDelta, delta))
}

/// Default cap on the number of n checked directly.
pub const DEFAULT_WINDOW_CAP: u64 = 4_000_001;

/// Period of a coprime univariate family, with direct verification of
/// `d_{n+δ} = d_n` and `d_n | δ` for n in `[−2δ, 2δ]`, shrunk to
/// `window_cap` points around 0 when δ is large (`window_cap = 0` skips it).
pub fn period_one_var(polys: &[Polynomial], window_cap: u64) -> Result<PeriodCertificate> {
    let (var, dense) = univariate_family(polys)?;
    if dense.iter().all(|p| p.is_zero()) {
        return Err(Error::ZeroPolynomial("period of an all-zero family".into()));
    }
    let (delta, origin, origin_value) = period_delta(&dense, &var)?;
    let mut cert = PeriodCertificate {
        polys: dense.iter().map(|p| p.to_polynomial(&var).to_string()).collect(),
        variable: var,
        delta,
        origin,
        origin_value,
        window: None,
    };
    if window_cap > 0 {
        let half = match cert.delta.to_u64() {
            Some(d) if d.saturating_mul(4).saturating_add(1) <= window_cap => 2 * d as i64,
            _ => (window_cap / 2) as i64,
        };
        check_window(&cert, polys, -half, half)?;
        cert.window = Some((-half, half));
    }
    Ok(cert)
}

fn check_window(cert: &PeriodCertificate, polys: &[Polynomial], lo: i64, hi: i64) -> Result<()> {
    let ev = IntEvaluator::new(polys);
    if ev.nvars() > 1 {
        return Err(Error::NotUnivariate(ev.vars().to_vec()));
    }
    let delta = &cert.delta;
    let d_small = delta.to_i64();
    let at = |n: &BigInt| -> BigInt {
        match (ev.nvars(), n.to_i64()) {
            (0, _) => ev.gcd_at(&[]).expect("no variables"),
            (_, Some(v)) => ev.gcd_at(&[v]).expect("one variable"),
            _ => ev.gcd_at_big(std::slice::from_ref(n)).expect("one variable"),
        }
    };
    let bad = (lo..=hi).into_par_iter().find_first(|&n| {
        let nb = BigInt::from(n);
        let shifted = match d_small.and_then(|d| n.checked_add(d)) {
            Some(v) => BigInt::from(v),
            None => &nb + delta,
        };
        let a = at(&nb);
        let b = at(&shifted);
        a != b || a.is_zero() || !delta.is_multiple_of(&a)
    });
    match bad {
        None => Ok(()),
        Some(n) => Err(Error::Verification(format!("period {delta} fails at n = {n}"))),
    }
}

impl PeriodCertificate {
    /// Re-derives δ from the recorded polynomials and re-runs the window check.
    pub fn verify(&self) -> Result<()> {
        let vars = vec![self.variable.clone()];
        let polys = self
            .polys
            .iter()
            .map(|p| crate::poly::parse::parse_in(p, &vars))
            .collect::<Result<Vec<_>>>()?;
        let (_, dense) = univariate_family(&polys)?;
        let (delta, origin, value) = period_delta(&dense, &self.variable)?;
        if delta != self.delta || origin != self.origin || value != self.origin_value {
            return Err(Error::Verification(format!("recomputed period {delta} differs from {}", self.delta)));
        }
        if let Some((lo, hi)) = self.window {
            check_window(self, &polys, lo, hi)?;
        }
        Ok(())
    }

    /// The values `d_0, …, d_{δ−1}` of one period (only for small δ).
    pub fn one_period(&self, polys: &[Polynomial]) -> Result<Vec<BigInt>> {
        let d = self
            .delta
            .to_i64()
            .filter(|&d| d <= 100_000_000)
            .ok_or_else(|| Error::Budget(format!("period {} too long to list", self.delta)))?;
        let ev = IntEvaluator::new(polys);
        Ok((0..d)
            .into_par_iter()
            .map(|n| if ev.nvars() == 0 { ev.gcd_at(&[]) } else { ev.gcd_at(&[n]) }.expect("univariate"))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_family;

    #[test]
    fn shifted_pair_period() {
        let f = parse_family(&["x", "x + 2"]).unwrap();
        let c = period_one_var(&f, DEFAULT_WINDOW_CAP).unwrap();
        assert_eq!(c.delta, BigInt::from(2));
        assert_eq!(c.origin, PeriodOrigin::Resultant);
        assert_eq!(c.one_period(&f).unwrap(), vec![BigInt::from(2), BigInt::from(1)]);
        assert_eq!(c.window, Some((-4, 4)));
        c.verify().unwrap();
    }

    #[test]
    fn bezout_constant_one() {
        let f = parse_family(&["x^2 + 1", "x"]).unwrap();
        assert_eq!(period_one_var(&f, DEFAULT_WINDOW_CAP).unwrap().delta, BigInt::from(1));
    }

    #[test]
    fn restricted_cusp_pair() {
        let f = parse_family(&["25 - y^3", "5*y + 11"]).unwrap();
        let c = period_one_var(&f, DEFAULT_WINDOW_CAP).unwrap();
        // |Res| = 5^3·25 + 11^3
        assert_eq!(c.delta, BigInt::from(125 * 25 + 1331));
        assert_eq!(c.window, Some((-2 * 4456, 2 * 4456)));
    }

    #[test]
    fn three_polys_and_constants() {
        let f = parse_family(&["x^2 - 1", "x^2 - 4", "x + 3"]).unwrap();
        let c = period_one_var(&f, DEFAULT_WINDOW_CAP).unwrap();
        assert_eq!(c.origin, PeriodOrigin::BezoutDelta);
        let f = parse_family(&["4", "6"]).unwrap();
        assert_eq!(period_one_var(&f, DEFAULT_WINDOW_CAP).unwrap().delta, BigInt::from(2));
    }

    #[test]
    fn non_coprime_rejected() {
        let f = parse_family(&["5*(x^2-1)*(x-1)", "(x^2-1)*x^2"]).unwrap();
        assert!(matches!(period_one_var(&f, 100), Err(Error::NotCoprime(_))));
    }
}
