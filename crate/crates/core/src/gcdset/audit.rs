//! Sampled checks that the values in a box are closed under gcd and lcm.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::witness::{witness_multivar, WitnessBudget, WitnessCertificate};
use super::{enumerate_gcd_set, GcdSetReport, Mode};
use crate::algebra::require_coprime;
use crate::error::{Error, Result};
use crate::grid::GridBox;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditConfig {
    pub pairs: usize,
    pub seed: u64,
    pub budget: WitnessBudget,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { pairs: 20, seed: 0, budget: WitnessBudget::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ClosureOutcome {
    Certified { certificate: Box<WitnessCertificate> },
    BudgetExhausted { message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairAudit {
    #[serde(with = "crate::serde_big")]
    pub first: BigInt,
    #[serde(with = "crate::serde_big")]
    pub second: BigInt,
    pub gcd: ClosureOutcome,
    pub lcm: ClosureOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub config: AuditConfig,
    pub attained_values: usize,
    pub pairs: Vec<PairAudit>,
    pub certified: usize,
    pub exhausted: usize,
}

impl AuditReport {
    pub fn all_certified(&self) -> bool {
        self.exhausted == 0
    }

    pub fn certificates(&self) -> impl Iterator<Item = &WitnessCertificate> {
        self.pairs.iter().flat_map(|p| [&p.gcd, &p.lcm]).filter_map(|o| match o {
            ClosureOutcome::Certified { certificate } => Some(certificate.as_ref()),
            ClosureOutcome::BudgetExhausted { .. } => None,
        })
    }
}

fn to_big(pt: &[i64]) -> Vec<BigInt> {
    pt.iter().map(|&v| BigInt::from(v)).collect()
}

fn close_pair(
    polys: &[Polynomial],
    set: &GcdSetReport,
    a: &(BigInt, Vec<i64>),
    b: &(BigInt, Vec<i64>),
    mode: Mode,
    budget: &WitnessBudget,
) -> Result<ClosureOutcome> {
    match witness_multivar(polys, &to_big(&a.1), &to_big(&b.1), mode, budget) {
        Ok(c) => Ok(ClosureOutcome::Certified { certificate: Box::new(c) }),
        Err(Error::Budget(message)) => {
            let target = mode.apply(&a.0, &b.0);
            match set.witness_of(&target) {
                Some(w) => {
                    let cert = WitnessCertificate::from_search(polys, to_big(&a.1), to_big(&b.1), mode, to_big(w))?;
                    Ok(ClosureOutcome::Certified { certificate: Box::new(cert) })
                }
                None => Ok(ClosureOutcome::BudgetExhausted { message }),
            }
        }
        Err(e) => Err(e),
    }
}

/// Enumerates the box, samples pairs of attained positive values, and
/// certifies that their gcd and lcm are attained.
///
/// Pairs are drawn with a seeded generator, so reports are reproducible.
/// Witness construction that runs out of budget falls back to looking the
/// target up in the enumerated box; if that fails too the pair is reported as
/// exhausted rather than as a counterexample.
pub fn closure_audit(polys: &[Polynomial], grid: &GridBox, config: &AuditConfig) -> Result<AuditReport> {
    let polys = Polynomial::unify_all(polys);
    require_coprime(&polys)?;
    let set = enumerate_gcd_set(&polys, grid)?;
    let values: Vec<(BigInt, Vec<i64>)> =
        set.values.iter().map(|a| (a.value.clone(), a.witness.clone())).collect();
    if values.is_empty() {
        return Err(Error::Precondition("no positive value attained in the box".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let picks: Vec<(usize, usize)> = (0..config.pairs)
        .map(|_| (rng.gen_range(0..values.len()), rng.gen_range(0..values.len())))
        .collect();
    let pairs = picks
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&values[i], &values[j]);
            Ok(PairAudit {
                first: a.0.clone(),
                second: b.0.clone(),
                gcd: close_pair(&polys, &set, a, b, Mode::Gcd, &config.budget)?,
                lcm: close_pair(&polys, &set, a, b, Mode::Lcm, &config.budget)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let certified = pairs
        .iter()
        .flat_map(|p| [&p.gcd, &p.lcm])
        .filter(|o| matches!(o, ClosureOutcome::Certified { .. }))
        .count();
    Ok(AuditReport {
        config: config.clone(),
        attained_values: values.len(),
        exhausted: 2 * pairs.len() - certified,
        certified,
        pairs,
    })
}
