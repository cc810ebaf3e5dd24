//! Witnesses that `gcd(d_m, d_n)` and `lcm(d_m, d_n)` are again values `d_w`.
//!
//! One variable: with `δ` a period, the prime-power congruences
//! `w ≡ m_p (mod p^(α_p+1))` pin `v_p(d_w) = α_p` for each prime of
//! `d_m·d_n`, where `m_p ∈ {m, n}` already has valuation `α_p`; the remaining
//! primes of `δ` are killed by `w ≡ m (mod E)`, where `E` is `δ` stripped of
//! the primes of `d_m·d_n`. Primes outside `δ` never divide a value.
//!
//! Several variables: translate `m` to the origin, pick a direction `a` such
//! that the restrictions to the lines `t·a` and `n + t·a` and to the plane
//! `u·n + t·a` stay coprime, and move along `a` by a multiple `t*` of both line
//! periods. On the line `u ↦ u·n + t*·a` the values at `u = 0` and `u = 1`
//! are `d_m` and `d_n`, so the one-variable construction finishes the job.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::period::{period_delta, PeriodOrigin};
use super::Mode;
use crate::algebra::gcd_q;
use crate::arith::{self, crt, strip_common_primes, valuation};
use crate::error::{Error, Result};
use crate::poly::eval::IntEvaluator;
use crate::poly::parse::parse_in;
use crate::poly::univariate::univariate_family;
use crate::poly::{Polynomial, SubstitutionScheme, LINE_VAR};

/// Search and size limits for witness construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessBudget {
    /// Largest max-norm of a candidate direction.
    pub max_direction_norm: u32,
    /// Largest multiplier k in `t* = k·δ1·δ2`.
    pub max_k: u64,
    /// Cap on the bit size of `δ1·δ2` and of one-variable periods.
    pub max_period_bits: u64,
    /// Cap on the bit size of the CRT modulus.
    pub max_modulus_bits: u64,
    /// Pollard-rho step budget for factoring values.
    pub rho_budget: u64,
}

impl Default for WitnessBudget {
    fn default() -> Self {
        WitnessBudget {
            max_direction_norm: 3,
            max_k: 64,
            max_period_bits: 4096,
            max_modulus_bits: 8192,
            rho_budget: arith::DEFAULT_RHO_BUDGET,
        }
    }
}

/// `w ≡ residue (mod modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtCondition {
    #[serde(with = "crate::serde_big")]
    pub modulus: BigInt,
    #[serde(with = "crate::serde_big")]
    pub residue: BigInt,
    /// The prime whose valuation this condition fixes; `None` for the cofactor of the period.
    #[serde(with = "crate::serde_big::option")]
    pub prime: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneVarTrace {
    #[serde(with = "crate::serde_big")]
    pub period: BigInt,
    pub period_origin: PeriodOrigin,
    pub conditions: Vec<CrtCondition>,
    #[serde(with = "crate::serde_big")]
    pub crt_modulus: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiVarTrace {
    #[serde(with = "crate::serde_big::vec")]
    pub direction: Vec<BigInt>,
    pub directions_tried: u64,
    #[serde(with = "crate::serde_big")]
    pub delta1: BigInt,
    #[serde(with = "crate::serde_big")]
    pub delta2: BigInt,
    pub k: u64,
    #[serde(with = "crate::serde_big")]
    pub t_star: BigInt,
    /// The one-variable witness on the line `u ↦ u·(n − m) + t*·a`.
    #[serde(with = "crate::serde_big")]
    pub ell: BigInt,
    pub line: OneVarTrace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessTrace {
    /// The target is already `d_m` or `d_n` (including the vanishing cases).
    Direct { reason: String },
    OneVar(OneVarTrace),
    MultiVar(MultiVarTrace),
    /// Found by looking the target up in an enumerated box.
    BoxSearch,
}

/// A point `w` with `d_w = gcd(d_m, d_n)` or `lcm(d_m, d_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub vars: Vec<String>,
    pub polys: Vec<String>,
    pub mode: Mode,
    #[serde(with = "crate::serde_big::vec")]
    pub m: Vec<BigInt>,
    #[serde(with = "crate::serde_big::vec")]
    pub n: Vec<BigInt>,
    #[serde(with = "crate::serde_big")]
    pub d_m: BigInt,
    #[serde(with = "crate::serde_big")]
    pub d_n: BigInt,
    #[serde(with = "crate::serde_big")]
    pub target: BigInt,
    #[serde(with = "crate::serde_big::vec")]
    pub witness: Vec<BigInt>,
    pub trace: WitnessTrace,
}

impl WitnessCertificate {
    /// Re-checks the certificate using only its own fields.
    pub fn verify(&self) -> Result<()> {
        let polys = self
            .polys
            .iter()
            .map(|p| parse_in(p, &self.vars))
            .collect::<Result<Vec<_>>>()?;
        let ev = IntEvaluator::new(&polys);
        let fail = |msg: String| Err(Error::Verification(msg));
        if ev.gcd_at_big(&self.m)? != self.d_m {
            return fail(format!("d at m is not {}", self.d_m));
        }
        if ev.gcd_at_big(&self.n)? != self.d_n {
            return fail(format!("d at n is not {}", self.d_n));
        }
        if self.mode.apply(&self.d_m, &self.d_n) != self.target {
            return fail(format!("{} of {} and {} is not {}", self.mode, self.d_m, self.d_n, self.target));
        }
        let d = ev.gcd_at_big(&self.witness)?;
        if d != self.target {
            return fail(format!("d at the witness is {d}, expected {}", self.target));
        }
        let one_var_check = |t: &OneVarTrace, w: &BigInt| {
            for c in &t.conditions {
                if (w - &c.residue).mod_floor(&c.modulus) != BigInt::zero() {
                    return Err(Error::Verification(format!("witness violates w ≡ {} mod {}", c.residue, c.modulus)));
                }
            }
            Ok(())
        };
        match &self.trace {
            WitnessTrace::OneVar(t) => one_var_check(t, &self.witness[0])?,
            WitnessTrace::MultiVar(t) => {
                let expect: Vec<BigInt> = (0..self.m.len())
                    .map(|i| &t.ell * (&self.n[i] - &self.m[i]) + &t.t_star * &t.direction[i] + &self.m[i])
                    .collect();
                if expect != self.witness {
                    return fail("witness differs from ell·(n − m) + t*·a + m".into());
                }
                if t.t_star != BigInt::from(t.k) * &t.delta1 * &t.delta2 {
                    return fail("t* differs from k·delta1·delta2".into());
                }
                one_var_check(&t.line, &t.ell)?;
            }
            WitnessTrace::Direct { .. } | WitnessTrace::BoxSearch => {}
        }
        Ok(())
    }
}

impl WitnessCertificate {
    /// Certificate for a witness found by direct search.
    pub(crate) fn from_search(
        polys: &[Polynomial],
        m: Vec<BigInt>,
        n: Vec<BigInt>,
        mode: Mode,
        witness: Vec<BigInt>,
    ) -> Result<Self> {
        let ev = IntEvaluator::new(polys);
        let (vars, polys) = family_strings(polys);
        let d_m = ev.gcd_at_big(&m)?;
        let d_n = ev.gcd_at_big(&n)?;
        let target = mode.apply(&d_m, &d_n);
        let cert = WitnessCertificate { vars, polys, mode, m, n, d_m, d_n, target, witness, trace: WitnessTrace::BoxSearch };
        cert.verify()?;
        Ok(cert)
    }
}

fn bits_check(v: &BigInt, cap: u64, what: &str) -> Result<()> {
    if v.bits() > cap {
        return Err(Error::Budget(format!("{what} has {} bits, cap is {cap}", v.bits())));
    }
    Ok(())
}

/// Centered representative of `x mod m` in `(−m/2, m/2]`.
fn centered(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Core of the one-variable construction; returns the parameter and its trace.
fn one_var_parameter(
    polys: &[Polynomial],
    n1: &BigInt,
    n2: &BigInt,
    mode: Mode,
    budget: &WitnessBudget,
) -> Result<(BigInt, OneVarTrace, BigInt, BigInt, BigInt)> {
    let (var, dense) = univariate_family(polys)?;
    if dense.iter().all(|p| p.is_zero()) {
        return Err(Error::ZeroPolynomial("witness for an all-zero family".into()));
    }
    let (delta, origin, _) = period_delta(&dense, &var)?;
    bits_check(&delta, budget.max_period_bits, "period")?;
    let d_at = |x: &BigInt| dense.iter().fold(BigInt::zero(), |g, p| g.gcd(&p.eval(x)));
    let d1 = d_at(n1);
    let d2 = d_at(n2);
    let target = mode.apply(&d1, &d2);
    let mut conditions = Vec::new();
    let primes = arith::factor(&d1.lcm(&d2), budget.rho_budget)?;
    for (p, _) in &primes {
        let alpha = valuation(&target, p);
        let source = if valuation(&d1, p) == alpha { n1 } else { n2 };
        let modulus = p.pow(alpha + 1);
        conditions.push(CrtCondition { residue: source.mod_floor(&modulus), modulus, prime: Some(p.clone()) });
    }
    let cofactor = strip_common_primes(&delta, &(&d1 * &d2));
    if !cofactor.is_one() {
        conditions.push(CrtCondition { residue: n1.mod_floor(&cofactor), modulus: cofactor, prime: None });
    }
    let pairs: Vec<(BigInt, BigInt)> = conditions.iter().map(|c| (c.residue.clone(), c.modulus.clone())).collect();
    let (x, modulus) = crt(&pairs)?;
    bits_check(&modulus, budget.max_modulus_bits, "CRT modulus")?;
    let w = centered(&x, &modulus);
    let got = d_at(&w);
    if got != target {
        return Err(Error::Verification(format!(
            "one-variable witness {w} gives {got}, expected {target}"
        )));
    }
    let trace = OneVarTrace { period: delta, period_origin: origin, conditions, crt_modulus: modulus };
    Ok((w, trace, d1, d2, target))
}

fn family_strings(polys: &[Polynomial]) -> (Vec<String>, Vec<String>) {
    let unified = Polynomial::unify_all(polys);
    let vars = unified.first().map(|p| p.vars().to_vec()).unwrap_or_default();
    (vars, unified.iter().map(|p| p.to_string()).collect())
}

/// Witness on a coprime one-variable family for `mode(d_{n1}, d_{n2})`.
pub fn witness_one_var(
    polys: &[Polynomial],
    n1: &BigInt,
    n2: &BigInt,
    mode: Mode,
    budget: &WitnessBudget,
) -> Result<WitnessCertificate> {
    let (w, trace, d1, d2, target) = one_var_parameter(polys, n1, n2, mode, budget)?;
    let (mut vars, strings) = family_strings(polys);
    if vars.is_empty() {
        vars.push(univariate_family(polys)?.0);
    }
    let cert = WitnessCertificate {
        vars,
        polys: strings,
        mode,
        m: vec![n1.clone()],
        n: vec![n2.clone()],
        d_m: d1,
        d_n: d2,
        target,
        witness: vec![w],
        trace: WitnessTrace::OneVar(trace),
    };
    cert.verify()?;
    Ok(cert)
}

/// Directions of max-norm exactly `norm`, in lexicographic order.
fn directions_of_norm(dim: usize, norm: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-norm; dim];
    loop {
        if v.iter().map(|x| x.abs()).max() == Some(norm) {
            out.push(v.clone());
        }
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < norm {
                v[i] += 1;
                break;
            }
            v[i] = -norm;
        }
    }
}

fn coprime_nonzero(polys: &[Polynomial]) -> bool {
    matches!(gcd_q(polys), Ok(g) if g.is_constant())
}

fn substitute_all(polys: &[Polynomial], scheme: &SubstitutionScheme) -> Result<Vec<Polynomial>> {
    polys.iter().map(|p| p.substitute(scheme)).collect()
}

/// Witness on a coprime family in several variables for `mode(d_m, d_n)`.
pub fn witness_multivar(
    polys: &[Polynomial],
    m: &[BigInt],
    n: &[BigInt],
    mode: Mode,
    budget: &WitnessBudget,
) -> Result<WitnessCertificate> {
    let polys = Polynomial::unify_all(polys);
    let ev = IntEvaluator::new(&polys);
    let r = ev.nvars();
    if r <= 1 && m.len() == 1 && n.len() == 1 {
        return witness_one_var(&polys, &m[0], &n[0], mode, budget);
    }
    for pt in [m, n] {
        if pt.len() != r {
            return Err(Error::DimensionMismatch { expected: r, found: pt.len() });
        }
    }
    let g = gcd_q(&polys)?;
    if !g.is_constant() {
        return Err(Error::NotCoprime(g.to_string()));
    }
    let (vars, strings) = family_strings(&polys);
    let d_m = ev.gcd_at_big(m)?;
    let d_n = ev.gcd_at_big(n)?;
    let target = mode.apply(&d_m, &d_n);
    let make = |witness: Vec<BigInt>, trace: WitnessTrace| WitnessCertificate {
        vars: vars.clone(),
        polys: strings.clone(),
        mode,
        m: m.to_vec(),
        n: n.to_vec(),
        d_m: d_m.clone(),
        d_n: d_n.clone(),
        target: target.clone(),
        witness,
        trace,
    };
    if target == d_m || target == d_n {
        let (w, reason) = if target == d_m {
            (m.to_vec(), format!("{mode}({d_m}, {d_n}) = d_m"))
        } else {
            (n.to_vec(), format!("{mode}({d_m}, {d_n}) = d_n"))
        };
        let cert = make(w, WitnessTrace::Direct { reason });
        cert.verify()?;
        return Ok(cert);
    }
    // d_m and d_n are now nonzero, distinct, and neither divides the other
    let shifted = substitute_all(&polys, &SubstitutionScheme::Translate { shift: m.to_vec() })?;
    let n_rel: Vec<BigInt> = n.iter().zip(m).map(|(a, b)| a - b).collect();
    let at_n = substitute_all(&shifted, &SubstitutionScheme::Translate { shift: n_rel.clone() })?;
    let mut tried = 0u64;
    let mut found = None;
    'search: for norm in 1..=budget.max_direction_norm as i64 {
        for a in directions_of_norm(r, norm) {
            tried += 1;
            let a: Vec<BigInt> = a.into_iter().map(BigInt::from).collect();
            let line0 = substitute_all(&shifted, &SubstitutionScheme::Line { direction: a.clone() })?;
            if !coprime_nonzero(&line0) {
                continue;
            }
            let line1 = substitute_all(&at_n, &SubstitutionScheme::Line { direction: a.clone() })?;
            if !coprime_nonzero(&line1) {
                continue;
            }
            let plane = substitute_all(
                &shifted,
                &SubstitutionScheme::Affine { base: n_rel.clone(), direction: a.clone() },
            )?;
            if !coprime_nonzero(&plane) {
                continue;
            }
            found = Some((a, line0, line1, plane));
            break 'search;
        }
    }
    let Some((a, line0, line1, plane)) = found else {
        return Err(Error::Budget(format!(
            "no admissible direction of max-norm <= {} ({tried} tried)",
            budget.max_direction_norm
        )));
    };
    let (v0, dense0) = univariate_family(&line0)?;
    let (delta1, _, _) = period_delta(&dense0, &v0)?;
    let (v1, dense1) = univariate_family(&line1)?;
    let (delta2, _, _) = period_delta(&dense1, &v1)?;
    let step = &delta1 * &delta2;
    bits_check(&step, budget.max_period_bits, "delta1·delta2")?;
    for k in 1..=budget.max_k {
        let t_star = &step * BigInt::from(k);
        let restricted = substitute_all(
            &plane,
            &SubstitutionScheme::Partial { values: vec![(LINE_VAR.to_string(), t_star.clone())] },
        )?;
        if !coprime_nonzero(&restricted) {
            continue;
        }
        let (ell, line_trace, _, _, _) =
            one_var_parameter(&restricted, &BigInt::zero(), &BigInt::one(), mode, budget)?;
        let w: Vec<BigInt> = (0..r).map(|i| &ell * &n_rel[i] + &t_star * &a[i] + &m[i]).collect();
        let trace = MultiVarTrace {
            direction: a,
            directions_tried: tried,
            delta1,
            delta2,
            k,
            t_star,
            ell,
            line: line_trace,
        };
        let cert = make(w, WitnessTrace::MultiVar(trace));
        cert.verify()?;
        return Ok(cert);
    }
    Err(Error::Budget(format!("no k <= {} keeps the line family coprime", budget.max_k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_family;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn shifted_pair_one_var() {
        let f = parse_family(&["x", "x + 2"]).unwrap();
        let b = WitnessBudget::default();
        let c = witness_one_var(&f, &BigInt::zero(), &BigInt::one(), Mode::Gcd, &b).unwrap();
        assert_eq!(c.target, BigInt::one());
        assert!(c.witness[0].is_odd());
        let c = witness_one_var(&f, &BigInt::zero(), &BigInt::one(), Mode::Lcm, &b).unwrap();
        assert_eq!(c.target, BigInt::from(2));
        assert!(c.witness[0].is_even());
    }

    #[test]
    fn cusp_pair_gcd_and_lcm() {
        let f = parse_family(&["x^2 - y^3", "x*(y+2) + 1"]).unwrap();
        let b = WitnessBudget::default();
        let c = witness_multivar(&f, &big(&[5, 1]), &big(&[1, -3]), Mode::Gcd, &b).unwrap();
        assert_eq!(c.target, BigInt::from(4));
        assert!(matches!(c.trace, WitnessTrace::MultiVar(_)));
        c.verify().unwrap();
        let c = witness_multivar(&f, &big(&[5, 1]), &big(&[1, -3]), Mode::Lcm, &b).unwrap();
        assert_eq!(c.target, BigInt::from(56));
        c.verify().unwrap();
    }

    #[test]
    fn vanishing_point_is_direct() {
        let f = parse_family(&["x", "y"]).unwrap();
        let b = WitnessBudget::default();
        let c = witness_multivar(&f, &big(&[0, 0]), &big(&[6, 4]), Mode::Gcd, &b).unwrap();
        assert_eq!(c.witness, big(&[6, 4]));
        assert_eq!(c.target, BigInt::from(2));
        let c = witness_multivar(&f, &big(&[0, 0]), &big(&[6, 4]), Mode::Lcm, &b).unwrap();
        assert_eq!(c.target, BigInt::zero());
        assert_eq!(c.witness, big(&[0, 0]));
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let f = parse_family(&["x^2 - y^3", "x*(y+2) + 1"]).unwrap();
        let mut c = witness_multivar(&f, &big(&[5, 1]), &big(&[1, -3]), Mode::Gcd, &WitnessBudget::default()).unwrap();
        c.witness[0] += 1;
        assert!(matches!(c.verify(), Err(Error::Verification(_))));
    }

    #[test]
    fn non_coprime_rejected() {
        let f = parse_family(&["x*(x - y)", "y*(x - y)"]).unwrap();
        let err = witness_multivar(&f, &big(&[1, 0]), &big(&[2, 0]), Mode::Gcd, &WitnessBudget::default());
        assert!(matches!(err, Err(Error::NotCoprime(_))));
    }

    #[test]
    fn direction_order() {
        let d = directions_of_norm(2, 1);
        assert_eq!(d.len(), 8);
        assert_eq!(d[0], vec![-1, -1]);
        assert_eq!(d[7], vec![1, 1]);
    }
}
