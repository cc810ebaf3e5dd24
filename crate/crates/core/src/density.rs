//! Densities of the set of points where the values are coprime.
//!
//! The density is the Euler product `Π_p (1 − c_p/p^r)`, where `c_p` counts
//! the common zeros of the family in `F_p^r`. Everything here is exact
//! rational arithmetic; decimals are left to the caller.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::require_coprime;
use crate::algebra::scan::{coprime_mod_p_scan, fixed_prime_divisors};
use crate::arith::{self, is_prime_u64, primes_up_to, strip_common_primes};
use crate::error::{Error, Result};
use crate::gcdset::period::{period_delta, PeriodOrigin};
use crate::grid::GridBox;
use crate::poly::eval::{IntEvaluator, ModPEvaluator};
use crate::poly::univariate::univariate_family;
use crate::poly::Polynomial;

/// Largest `p^r` enumerated for one local factor.
pub const CP_POINT_BUDGET: u128 = 100_000_000;

/// Largest box enumerated for an empirical density.
pub const EMPIRICAL_POINT_BUDGET: u128 = 400_000_000;

/// Largest period enumerated directly in [`exact_one_var`].
pub const PERIOD_ENUMERATION_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFactor {
    pub prime: u64,
    /// Number of common zeros in `F_p^r`.
    pub c_p: u64,
    /// `p^r`.
    pub points: u64,
    /// `1 − c_p/p^r`.
    #[serde(with = "crate::serde_big::ratio")]
    pub factor: BigRational,
}

impl LocalFactor {
    fn new(prime: u64, c_p: u64, points: u64) -> Self {
        let factor = BigRational::new(BigInt::from(points - c_p), BigInt::from(points));
        LocalFactor { prime, c_p, points, factor }
    }

    /// Every point is a common zero, so `p` divides every value.
    pub fn is_fixed_divisor(&self) -> bool {
        self.c_p == self.points
    }
}

fn point_count(p: u64, r: usize) -> Result<u64> {
    let n = (p as u128).checked_pow(r as u32).filter(|&n| n <= CP_POINT_BUDGET);
    n.map(|n| n as u64)
        .ok_or_else(|| Error::Budget(format!("{p}^{r} points exceed the local factor budget {CP_POINT_BUDGET}")))
}

/// Counts points of `[0, p)^r` where every evaluator of `evs` vanishes for at
/// least one family (a single family gives the usual `c_p`).
fn count_union(evs: &[ModPEvaluator], p: u64, r: usize) -> u64 {
    let hit = |pt: &[u64]| evs.iter().any(|e| e.all_vanish(pt));
    if r == 0 {
        return u64::from(hit(&[]));
    }
    (0..p)
        .into_par_iter()
        .map(|first| {
            let mut pt = vec![0u64; r];
            pt[0] = first;
            let mut count = 0u64;
            loop {
                count += u64::from(hit(&pt));
                let mut i = r - 1;
                loop {
                    if i == 0 {
                        return count;
                    }
                    pt[i] += 1;
                    if pt[i] < p {
                        break;
                    }
                    pt[i] = 0;
                    i -= 1;
                }
            }
        })
        .sum()
}

/// `c_p` by exhaustive evaluation over `[0, p)^r`.
pub fn count_cp(polys: &[Polynomial], p: u64) -> Result<LocalFactor> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let polys = Polynomial::unify_all(polys);
    let r = polys.first().map_or(0, |q| q.nvars());
    let points = point_count(p, r)?;
    let ev = ModPEvaluator::new(&polys, p);
    Ok(LocalFactor::new(p, count_union(std::slice::from_ref(&ev), p, r), points))
}

/// Which box an empirical density is counted over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoxKind {
    /// `[0, B)^r`.
    Quadrant,
    /// `[−B, B]^r`.
    Symmetric,
}

impl std::str::FromStr for BoxKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadrant" => Ok(BoxKind::Quadrant),
            "symmetric" => Ok(BoxKind::Symmetric),
            _ => Err(Error::Precondition(format!("unknown box kind {s:?}, expected quadrant or symmetric"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalCount {
    pub kind: BoxKind,
    pub b: i64,
    pub points: u64,
    /// Points with `d_n = 1`.
    pub hits: u64,
    #[serde(with = "crate::serde_big::ratio")]
    pub ratio: BigRational,
}

/// Exact proportion of points with `d_n = 1` in a quadrant or symmetric box.
pub fn empirical_density(polys: &[Polynomial], b: i64, kind: BoxKind) -> Result<EmpiricalCount> {
    if b < 1 {
        return Err(Error::Precondition(format!("box size must be at least 1, got {b}")));
    }
    let ev = IntEvaluator::new(polys);
    let grid = match kind {
        BoxKind::Quadrant => GridBox::quadrant(ev.nvars(), b)?,
        BoxKind::Symmetric => GridBox::symmetric(ev.nvars(), b)?,
    };
    let points = grid.count();
    if points > EMPIRICAL_POINT_BUDGET {
        return Err(Error::Budget(format!("{points} points exceed the box budget {EMPIRICAL_POINT_BUDGET}")));
    }
    let hits = grid.par_count(|pt| ev.is_coprime_at(pt));
    let points = points as u64;
    Ok(EmpiricalCount { kind, b, points, hits, ratio: BigRational::new(hits.into(), points.into()) })
}

/// Truncated Euler product with a bracket for the full product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub vars: Vec<String>,
    pub truncation: u64,
    /// Largest total degree `d` of the family.
    pub max_degree: u32,
    /// Number of polynomials `s`.
    pub family_size: usize,
    /// `d^s`, the constant in `c_p ≤ d^s·p^(r−2)`.
    #[serde(with = "crate::serde_big")]
    pub tail_constant: BigInt,
    pub local_factors: Vec<LocalFactor>,
    /// `Π_{p ≤ M} (1 − c_p/p^r)`.
    #[serde(with = "crate::serde_big::ratio")]
    pub partial: BigRational,
    /// `max(0, partial − d^s/M)`, using `Σ_{p > M} p^(−2) ≤ 1/M`.
    #[serde(with = "crate::serde_big::ratio")]
    pub lower: BigRational,
    #[serde(with = "crate::serde_big::ratio")]
    pub upper: BigRational,
    pub fixed_divisors: Vec<u64>,
    /// First prime past every bad or degenerate reduction prime up to M.
    pub cp_bound_from: u64,
    /// Primes in `[cp_bound_from, M]` with `c_p > d^s·p^(r−2)`; expected empty.
    pub cp_bound_violations: Vec<u64>,
    pub empirical: Vec<EmpiricalCount>,
}

impl DensityEstimate {
    pub fn brackets(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    /// Adds exact counts over `[0, B)^r` and `[−B, B]^r`.
    pub fn add_empirical(&mut self, polys: &[Polynomial], b: i64) -> Result<()> {
        for kind in [BoxKind::Quadrant, BoxKind::Symmetric] {
            self.empirical.push(empirical_density(polys, b, kind)?);
        }
        Ok(())
    }
}

/// Decimal value of an exact ratio, for display and tolerance checks.
pub fn ratio_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn product(factors: &[LocalFactor]) -> BigRational {
    factors.iter().fold(BigRational::one(), |acc, f| acc * &f.factor)
}

fn assemble(
    polys: &[Polynomial],
    truncation: u64,
    local_factors: Vec<LocalFactor>,
    fixed_divisors: Vec<u64>,
) -> Result<DensityEstimate> {
    let max_degree = polys.iter().map(|q| q.total_degree().or_zero()).max().unwrap_or(0);
    let family_size = polys.len();
    let tail_constant = BigInt::from(max_degree).pow(family_size as u32);
    let partial = product(&local_factors);
    let tail = BigRational::new(tail_constant.clone(), BigInt::from(truncation.max(1)));
    let lower = (&partial - tail).max(BigRational::zero());
    let scan = coprime_mod_p_scan(polys, truncation)?;
    let cp_bound_from = scan.largest_exceptional_prime().map_or(2, |p| p + 1);
    let cp_bound_violations = local_factors
        .iter()
        .filter(|f| f.prime >= cp_bound_from)
        .filter(|f| {
            // c_p·p^2 ≤ d^s·p^r
            BigInt::from(f.c_p) * BigInt::from(f.prime).pow(2) > &tail_constant * BigInt::from(f.points)
        })
        .map(|f| f.prime)
        .collect();
    Ok(DensityEstimate {
        vars: polys.first().map(|q| q.vars().to_vec()).unwrap_or_default(),
        truncation,
        max_degree,
        family_size,
        tail_constant,
        local_factors,
        upper: partial.clone(),
        partial,
        lower,
        fixed_divisors,
        cp_bound_from,
        cp_bound_violations,
        empirical: Vec::new(),
    })
}

/// `Π_{p ≤ M} (1 − c_p/p^r)` for a coprime family in at least two variables,
/// with the bracket `[partial − d^s/M, partial]` for the full product.
pub fn euler_product(polys: &[Polynomial], m: u64) -> Result<DensityEstimate> {
    let polys = Polynomial::unify_all(polys);
    let r = polys.first().map_or(0, |q| q.nvars());
    if r < 2 {
        return Err(Error::Precondition(
            "the Euler product bracket needs at least two variables; use the exact one-variable density".into(),
        ));
    }
    require_coprime(&polys)?;
    let factors = primes_up_to(m)
        .into_iter()
        .map(|p| count_cp(&polys, p))
        .collect::<Result<Vec<_>>>()?;
    let fixed = fixed_prime_divisors(&polys)?;
    assemble(&polys, m, factors, fixed)
}

/// Density of `d_n = 1` for a coprime one-variable family, computed exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneVarDensity {
    pub variable: String,
    #[serde(with = "crate::serde_big")]
    pub period: BigInt,
    pub period_origin: PeriodOrigin,
    /// `c_p` for every prime dividing the period.
    pub local_factors: Vec<LocalFactor>,
    /// `δ·Π_{p | δ} (1 − c_p/p)`.
    #[serde(with = "crate::serde_big")]
    pub formula_count: BigInt,
    /// `#{n ∈ [0, δ) : d_n = 1}` by direct evaluation, when δ is small enough.
    pub enumerated_count: Option<u64>,
    #[serde(with = "crate::serde_big::ratio")]
    pub density: BigRational,
}

/// Counts `n ∈ [0, δ)` with `d_n = 1` from the local factors at the primes of
/// δ and, for δ up to [`PERIOD_ENUMERATION_BUDGET`], by direct enumeration.
///
/// Since `d_n | δ` and `n ↦ [p | d_n]` only depends on `n mod p`, the CRT
/// splits the count into `Π (p^e − p^(e−1)·c_p)`.
pub fn exact_one_var(polys: &[Polynomial]) -> Result<OneVarDensity> {
    let (var, dense) = univariate_family(polys)?;
    if dense.iter().all(|p| p.is_zero()) {
        return Err(Error::ZeroPolynomial("density of an all-zero family".into()));
    }
    let (delta, origin, _) = period_delta(&dense, &var)?;
    let family: Vec<Polynomial> = dense.iter().map(|p| p.to_polynomial(&var)).collect();
    let mut local_factors = Vec::new();
    let mut formula = delta.clone();
    for (p, _) in arith::factor(&delta, arith::DEFAULT_RHO_BUDGET)? {
        let p = p
            .to_u64()
            .ok_or_else(|| Error::Budget(format!("prime {p} of the period is too large to count roots")))?;
        let f = count_cp(&family, p)?;
        formula = formula / BigInt::from(p) * BigInt::from(p - f.c_p);
        local_factors.push(f);
    }
    let enumerated_count = match delta.to_u64() {
        Some(d) if d <= PERIOD_ENUMERATION_BUDGET => {
            let ev = IntEvaluator::new(&family);
            let count = (0..d as i64)
                .into_par_iter()
                .filter(|&n| if ev.nvars() == 0 { ev.is_coprime_at(&[]) } else { ev.is_coprime_at(&[n]) })
                .count() as u64;
            if BigInt::from(count) != formula {
                return Err(Error::Verification(format!(
                    "local factors give {formula} coprime residues mod {delta}, enumeration gives {count}"
                )));
            }
            Some(count)
        }
        _ => None,
    };
    Ok(OneVarDensity {
        variable: var,
        density: BigRational::new(formula.clone(), delta.clone()),
        period: delta,
        period_origin: origin,
        local_factors,
        formula_count: formula,
        enumerated_count,
    })
}

/// Local factor of several families: `c_p` counts points where at least one
/// family vanishes entirely, cross-checked against the product family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDensity {
    /// Every product `A_1 ⋯ A_ℓ` with `A_j` taken from family j.
    pub product_family: Vec<String>,
    pub estimate: DensityEstimate,
    /// Primes at which the union count was compared with `c_p` of the product family.
    pub cross_checked_up_to: u64,
}

/// Cap on the primes where the union count is re-derived from the product family.
pub const PRODUCT_CROSS_CHECK_BOUND: u64 = 100;

fn product_family(families: &[Vec<Polynomial>]) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::int_constant(Vec::new(), 1)];
    for fam in families {
        out = out.iter().flat_map(|a| fam.iter().map(move |b| a * b)).collect();
    }
    out
}

/// Density of the points where every family has coprime values.
///
/// Fails with [`Error::Obstruction`] when some prime makes every point a
/// common zero of at least one family; the message names the prime and the
/// families (1-based) whose zeros cover `F_p^r`.
pub fn product_family_density(families: &[Vec<Polynomial>], m: u64) -> Result<FamilyDensity> {
    if families.is_empty() || families.iter().any(|f| f.is_empty()) {
        return Err(Error::Precondition("need at least one nonempty family".into()));
    }
    let all: Vec<Polynomial> = Polynomial::unify_all(&families.concat());
    let mut unified = Vec::new();
    let mut at = 0;
    for f in families {
        unified.push(all[at..at + f.len()].to_vec());
        at += f.len();
    }
    for (j, f) in unified.iter().enumerate() {
        require_coprime(f).map_err(|e| match e {
            Error::NotCoprime(g) => Error::NotCoprime(format!("family {}: {g}", j + 1)),
            e => e,
        })?;
    }
    let r = all.first().map_or(0, |q| q.nvars());
    if r < 2 {
        return Err(Error::Precondition("several families need at least two variables".into()));
    }
    let pi = Polynomial::unify_all(&product_family(&unified));
    let fixed = fixed_prime_divisors(&pi)?;
    if let Some(&p) = fixed.first() {
        let covering: Vec<String> = unified
            .iter()
            .enumerate()
            .filter(|(_, f)| fixed_prime_divisors(f).map(|d| d.contains(&p)).unwrap_or(false))
            .map(|(j, _)| (j + 1).to_string())
            .collect();
        let who = if covering.is_empty() {
            "the families jointly".to_string()
        } else {
            format!("family {}", covering.join(", "))
        };
        return Err(Error::Obstruction(format!("every value is divisible by {p} for {who}")));
    }
    let factors = primes_up_to(m)
        .into_iter()
        .map(|p| {
            let points = point_count(p, r)?;
            let evs: Vec<ModPEvaluator> = unified.iter().map(|f| ModPEvaluator::new(f, p)).collect();
            let c = count_union(&evs, p, r);
            if p <= PRODUCT_CROSS_CHECK_BOUND {
                let direct = count_union(&[ModPEvaluator::new(&pi, p)], p, r);
                if direct != c {
                    return Err(Error::Verification(format!(
                        "at p = {p} the union of zero sets has {c} points, the product family {direct}"
                    )));
                }
            }
            Ok(LocalFactor::new(p, c, points))
        })
        .collect::<Result<Vec<_>>>()?;
    let estimate = assemble(&pi, m, factors, fixed)?;
    Ok(FamilyDensity {
        product_family: pi.iter().map(|q| q.to_string()).collect(),
        estimate,
        cross_checked_up_to: m.min(PRODUCT_CROSS_CHECK_BOUND),
    })
}

/// Counts for the cover of `Q_{>B} ∩ [0, B)^r` by three sets, split along the
/// last variable `x_r`, with `P_i^0` the leading coefficient of `P_i` in `x_r`:
/// `S1 = {P_s = 0}`, `S2` where a prime `> B` divides `P_1^0, …, P_{s−1}^0, P_s`,
/// `S3` where `P_s ≠ 0` and a prime `> B` divides every `P_i` but not some `P_i^0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailDecomposition {
    pub b: i64,
    pub points: u64,
    /// Points where some prime `> B` divides `d_n` (including `d_n = 0`).
    pub q_beyond_b: u64,
    pub s1: u64,
    pub s2: u64,
    pub s3: u64,
    /// Points of `Q_{>B}` in none of the three sets; zero whenever the cover holds.
    pub uncovered: u64,
}

/// Largest box scanned by [`tail_decomposition`].
pub const TAIL_POINT_BUDGET: u128 = 4_000_000;

fn strip_small_primes(n: &BigInt, small: &[u64]) -> BigInt {
    let mut m = n.abs();
    for &p in small {
        let p = BigInt::from(p);
        while !m.is_zero() && m.is_multiple_of(&p) {
            m /= &p;
        }
    }
    m
}

/// Counts the three sets on `[0, B)^r` and checks that they cover `Q_{>B}`.
pub fn tail_decomposition(polys: &[Polynomial], b: i64) -> Result<TailDecomposition> {
    let polys = Polynomial::unify_all(polys);
    let r = polys.first().map_or(0, |q| q.nvars());
    if r == 0 || polys.len() < 2 {
        return Err(Error::Precondition("need at least two polynomials in at least one variable".into()));
    }
    let grid = GridBox::quadrant(r, b)?;
    if grid.count() > TAIL_POINT_BUDGET {
        return Err(Error::Budget(format!("{} points exceed the budget {TAIL_POINT_BUDGET}", grid.count())));
    }
    let s = polys.len();
    let leads: Vec<Polynomial> = polys[..s - 1]
        .iter()
        .map(|q| q.split_in(r - 1).pop().unwrap_or_else(|| q.clone()))
        .collect();
    let ev = IntEvaluator::new(&polys);
    let lead_ev = IntEvaluator::new(&Polynomial::unify_all(&leads));
    let small = primes_up_to(b as u64);
    let has_big_prime = |v: &BigInt| v.is_zero() || !strip_small_primes(v, &small).is_one();
    let tallies = grid.par_slices(
        || [0u64; 5],
        |acc, pt| {
            let vals = ev.values(pt).expect("dimension checked");
            let d = vals.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            if !has_big_prime(&d) {
                return;
            }
            acc[0] += 1;
            let ps = &vals[s - 1];
            let h = lead_ev
                .values(&pt[..lead_ev.nvars().min(pt.len())])
                .map(|v| v.iter().fold(BigInt::zero(), |g, x| g.gcd(x)))
                .expect("leading coefficients share the variables");
            let in_s1 = ps.is_zero();
            let in_s2 = !in_s1 && has_big_prime(&h.gcd(ps));
            let in_s3 = !in_s1 && !strip_common_primes(&strip_small_primes(&d, &small), &h).is_one();
            acc[1] += u64::from(in_s1);
            acc[2] += u64::from(in_s2);
            acc[3] += u64::from(in_s3);
            acc[4] += u64::from(!(in_s1 || in_s2 || in_s3));
        },
    );
    let t = tallies.iter().fold([0u64; 5], |mut a, x| {
        for i in 0..5 {
            a[i] += x[i];
        }
        a
    });
    let dec = TailDecomposition {
        b,
        points: grid.count() as u64,
        q_beyond_b: t[0],
        s1: t[1],
        s2: t[2],
        s3: t[3],
        uncovered: t[4],
    };
    if dec.uncovered > 0 {
        return Err(Error::Verification(format!("{} points of Q_>B escape the three sets", dec.uncovered)));
    }
    Ok(dec)
}
