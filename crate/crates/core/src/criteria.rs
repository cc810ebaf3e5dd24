//! Coprimality of polynomials decided from their values.
//!
//! Both criteria only ever certify coprimality; a failed search is reported as
//! inconclusive, never as "not coprime".

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridBox;
use crate::poly::eval::IntEvaluator;
use crate::poly::parse::parse_in;
use crate::poly::univariate::{univariate_family, UniPoly};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CoprimeCertified,
    Inconclusive,
    /// The value set was too large to count exactly; an estimate never certifies.
    SampledInconclusive,
}

/// Search for `n ≥ 2H + 3` with `d_n ≤ √n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightEvidence {
    /// Minimum normalized height over the family.
    #[serde(with = "crate::serde_big::ratio")]
    pub height: BigRational,
    /// `⌈2H + 3⌉`.
    pub start: u64,
    /// Largest n tried.
    pub limit: u64,
    pub witness: Option<u64>,
    #[serde(with = "crate::serde_big::option")]
    pub witness_gcd: Option<BigInt>,
}

/// Count of `n ∈ S^r` with `d_n ≤ k` against the threshold `(2k+1)ℓ/#S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueDensityEvidence {
    pub k: u64,
    /// Largest total degree.
    pub ell: u32,
    pub set: Vec<i64>,
    pub dim: usize,
    /// Points examined (all of `S^r`, or the sample size).
    pub examined: u64,
    /// Examined points with `d_n ≤ k`, counting `d_n = 0`.
    pub hits: u64,
    #[serde(with = "crate::serde_big::ratio")]
    pub pi_k: BigRational,
    #[serde(with = "crate::serde_big::ratio")]
    pub threshold: BigRational,
    pub sampled: bool,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "criterion", rename_all = "kebab-case")]
pub enum Evidence {
    Height(HeightEvidence),
    ValueDensity(ValueDensityEvidence),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimalityVerdict {
    pub verdict: Verdict,
    pub vars: Vec<String>,
    pub polys: Vec<String>,
    pub evidence: Evidence,
}

/// `max_{i<d} |a_i/a_d|` for `P = a_d x^d + … + a_0`; zero for constants and monomials.
pub fn normalized_height(p: &Polynomial) -> Result<BigRational> {
    let (_, dense) = univariate_family(std::slice::from_ref(p))?;
    uni_height(&dense[0])
}

fn uni_height(p: &UniPoly) -> Result<BigRational> {
    let lead = p.leading().ok_or_else(|| Error::ZeroPolynomial("height of the zero polynomial".into()))?;
    Ok(p.coeffs()[..p.deg()]
        .iter()
        .map(|a| BigRational::new(a.abs(), lead.abs()))
        .max()
        .unwrap_or_else(BigRational::zero))
}

fn require_nonzero(polys: &[Polynomial]) -> Result<()> {
    if polys.len() < 2 {
        return Err(Error::Precondition("the criteria need at least two polynomials".into()));
    }
    if let Some(i) = polys.iter().position(|p| p.is_zero()) {
        return Err(Error::ZeroPolynomial(format!("polynomial {} is zero", i + 1)));
    }
    Ok(())
}

fn family_strings(polys: &[Polynomial]) -> (Vec<String>, Vec<String>) {
    let polys = Polynomial::unify_all(polys);
    let vars = polys.first().map(|p| p.vars().to_vec()).unwrap_or_default();
    (vars, polys.iter().map(|p| p.to_string()).collect())
}

fn search_start(height: &BigRational) -> Result<u64> {
    let s = (height * BigInt::from(2) + BigInt::from(3)).ceil().to_integer();
    s.to_u64().ok_or_else(|| Error::Budget(format!("search start {s} is out of range")))
}

/// First `n` in `[start, limit]` with `d_n^2 ≤ n`.
fn height_search(ev: &IntEvaluator, start: u64, limit: u64) -> Option<(u64, BigInt)> {
    let at = |n: u64| -> BigInt {
        if ev.nvars() == 0 {
            ev.gcd_at(&[]).expect("no variables")
        } else {
            ev.gcd_at_big(&[BigInt::from(n)]).expect("one variable")
        }
    };
    if start > limit {
        return None;
    }
    (start..=limit)
        .into_par_iter()
        .find_first(|&n| {
            let d = at(n);
            &d * &d <= BigInt::from(n)
        })
        .map(|n| (n, at(n)))
}

/// Certifies a one-variable family coprime by finding `n ≥ 2H + 3` with
/// `d_n ≤ √n`, where H is the smallest normalized height; tries every n up
/// to `limit`.
pub fn coprime_test_one_var(polys: &[Polynomial], limit: u64) -> Result<CoprimalityVerdict> {
    require_nonzero(polys)?;
    let (var, dense) = univariate_family(polys)?;
    let family: Vec<Polynomial> = dense.iter().map(|p| p.to_polynomial(&var)).collect();
    let height = dense
        .iter()
        .map(uni_height)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("at least two polynomials");
    let start = search_start(&height)?;
    let ev = IntEvaluator::new(&family);
    let found = height_search(&ev, start, limit);
    let (vars, strings) = family_strings(&family);
    Ok(CoprimalityVerdict {
        verdict: if found.is_some() { Verdict::CoprimeCertified } else { Verdict::Inconclusive },
        vars,
        polys: strings,
        evidence: Evidence::Height(HeightEvidence {
            height,
            start,
            limit,
            witness: found.as_ref().map(|f| f.0),
            witness_gcd: found.map(|f| f.1),
        }),
    })
}

/// Largest `#S^r` counted exactly by [`coprime_test_multivar`].
pub const EXACT_COUNT_BUDGET: u128 = 100_000_000;

/// Options for the sampled fallback of [`coprime_test_multivar`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub samples: u64,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { samples: 1_000_000, seed: 0 }
    }
}

fn normalized_set(set: &[i64]) -> Result<Vec<i64>> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() {
        return Err(Error::Precondition("the sample set S is empty".into()));
    }
    Ok(s)
}

fn count_small(ev: &IntEvaluator, set: &[i64], k: u64) -> u64 {
    let r = ev.nvars();
    let index_box = GridBox::cube(r, 0, set.len() as i64 - 1).expect("nonempty set");
    let bound = BigInt::from(k);
    index_box.par_count(|idx| {
        let pt: Vec<i64> = idx.iter().map(|&i| set[i as usize]).collect();
        ev.gcd_at(&pt).expect("dimension matches") <= bound
    })
}

/// Certifies coprimality when `π_k = #{n ∈ S^r : d_n ≤ k}/#S^r` exceeds
/// `(2k+1)ℓ/#S`, with ℓ the largest total degree.
///
/// Common zeros (`d_n = 0`) count toward `π_k`. Above
/// [`EXACT_COUNT_BUDGET`] points the count is estimated from a seeded
/// uniform sample and the verdict is at best [`Verdict::SampledInconclusive`].
pub fn coprime_test_multivar(
    polys: &[Polynomial],
    set: &[i64],
    k: u64,
    sampling: SampleConfig,
) -> Result<CoprimalityVerdict> {
    require_nonzero(polys)?;
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let set = normalized_set(set)?;
    let polys = Polynomial::unify_all(polys);
    let ev = IntEvaluator::new(&polys);
    let r = ev.nvars();
    let ell = polys.iter().map(|p| p.total_degree().or_zero()).max().unwrap_or(0);
    let threshold = BigRational::new(BigInt::from(2 * k + 1) * BigInt::from(ell), BigInt::from(set.len()));
    let total = (set.len() as u128).checked_pow(r as u32);
    let exact = total.filter(|&t| t <= EXACT_COUNT_BUDGET);
    let (examined, hits, seed) = match exact {
        Some(t) => (t as u64, count_small(&ev, &set, k), None),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
            let pts: Vec<Vec<i64>> = (0..sampling.samples)
                .map(|_| (0..r).map(|_| set[rng.gen_range(0..set.len())]).collect())
                .collect();
            let bound = BigInt::from(k);
            let hits = pts.par_iter().filter(|pt| ev.gcd_at(pt).expect("dimension matches") <= bound).count();
            (sampling.samples, hits as u64, Some(sampling.seed))
        }
    };
    if examined == 0 {
        return Err(Error::Precondition("no points to examine".into()));
    }
    let pi_k = BigRational::new(BigInt::from(hits), BigInt::from(examined));
    let sampled = exact.is_none();
    let verdict = match (sampled, pi_k > threshold) {
        (false, true) => Verdict::CoprimeCertified,
        (false, false) => Verdict::Inconclusive,
        (true, _) => Verdict::SampledInconclusive,
    };
    let (vars, strings) = family_strings(&polys);
    Ok(CoprimalityVerdict {
        verdict,
        vars,
        polys: strings,
        evidence: Evidence::ValueDensity(ValueDensityEvidence {
            k,
            ell,
            set,
            dim: r,
            examined,
            hits,
            pi_k,
            threshold,
            sampled,
            seed,
        }),
    })
}

impl CoprimalityVerdict {
    /// Recomputes the evidence from the recorded polynomials and checks that
    /// it supports the verdict.
    pub fn verify(&self) -> Result<()> {
        let polys = self.polys.iter().map(|p| parse_in(p, &self.vars)).collect::<Result<Vec<_>>>()?;
        let fail = |m: String| Err(Error::Verification(m));
        match &self.evidence {
            Evidence::Height(e) => {
                let again = coprime_test_one_var(&polys, e.start.max(e.witness.unwrap_or(0)))?;
                let Evidence::Height(h) = &again.evidence else { unreachable!() };
                if h.height != e.height || h.start != e.start {
                    return fail(format!("recomputed height {} differs from {}", h.height, e.height));
                }
                match (self.verdict, e.witness, &e.witness_gcd) {
                    (Verdict::CoprimeCertified, Some(n), Some(d)) => {
                        let ev = IntEvaluator::new(&polys);
                        let got = if ev.nvars() == 0 { ev.gcd_at(&[])? } else { ev.gcd_at_big(&[n.into()])? };
                        if &got != d || n < e.start || d * d > BigInt::from(n) {
                            return fail(format!("n = {n} does not satisfy d_n ≤ √n"));
                        }
                        Ok(())
                    }
                    (Verdict::Inconclusive, None, None) => Ok(()),
                    _ => fail("verdict and witness disagree".into()),
                }
            }
            Evidence::ValueDensity(e) => {
                if e.sampled {
                    return if self.verdict == Verdict::SampledInconclusive {
                        Ok(())
                    } else {
                        fail("a sampled count cannot certify".into())
                    };
                }
                let again = coprime_test_multivar(&polys, &e.set, e.k, SampleConfig::default())?;
                let Evidence::ValueDensity(v) = &again.evidence else { unreachable!() };
                if v != e || again.verdict != self.verdict {
                    return fail(format!("recount gives {} of {}, report says {} of {}", v.hits, v.examined, e.hits, e.examined));
                }
                Ok(())
            }
        }
    }
}

/// Exhaustive zero count of a nonzero polynomial on `S^r` against the bound
/// `ℓ·#S^(r−1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SzCount {
    pub poly: String,
    pub set_size: usize,
    pub dim: usize,
    pub degree: u32,
    pub points: u64,
    pub zeros: u64,
    pub bound: u64,
    pub holds: bool,
}

pub fn schwartz_zippel_count(p: &Polynomial, set: &[i64]) -> Result<SzCount> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("zero count of the zero polynomial".into()));
    }
    let set = normalized_set(set)?;
    let r = p.nvars();
    let total = (set.len() as u128)
        .checked_pow(r as u32)
        .filter(|&t| t <= EXACT_COUNT_BUDGET)
        .ok_or_else(|| Error::Budget(format!("#S^r exceeds {EXACT_COUNT_BUDGET}")))?;
    let ev = IntEvaluator::new(std::slice::from_ref(p));
    let zeros = count_small(&ev, &set, 0);
    let degree = p.total_degree().or_zero();
    let bound = if r == 0 { 0 } else { u64::from(degree) * (set.len() as u64).pow(r as u32 - 1) };
    let out = SzCount {
        poly: p.to_string(),
        set_size: set.len(),
        dim: r,
        degree,
        points: total as u64,
        zeros,
        bound,
        holds: zeros <= bound,
    };
    if !out.holds {
        return Err(Error::Verification(format!("{} zeros exceed the bound {}", zeros, bound)));
    }
    Ok(out)
}
