//! The set of values `d_n = gcd(P_1(n), …, P_s(n))`.

pub mod audit;
pub mod period;
pub mod witness;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridBox;
use crate::poly::eval::IntEvaluator;
use crate::poly::Polynomial;

pub use audit::{closure_audit, AuditConfig, AuditReport};
pub use period::{period_one_var, PeriodCertificate, PeriodOrigin};
pub use witness::{witness_multivar, witness_one_var, WitnessBudget, WitnessCertificate};

/// Which lattice operation a witness realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Gcd,
    Lcm,
}

impl Mode {
    pub fn apply(self, a: &BigInt, b: &BigInt) -> BigInt {
        use num_integer::Integer;
        match self {
            Mode::Gcd => a.gcd(b),
            Mode::Lcm => a.lcm(b),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Gcd => "gcd",
            Mode::Lcm => "lcm",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gcd" => Ok(Mode::Gcd),
            "lcm" => Ok(Mode::Lcm),
            _ => Err(Error::Precondition(format!("unknown mode {s:?}, expected gcd or lcm"))),
        }
    }
}

/// `d_n` at an integer point.
pub fn value_gcd(polys: &[Polynomial], n: &[BigInt]) -> Result<BigInt> {
    IntEvaluator::new(polys).gcd_at_big(n)
}

/// One attained value with its lexicographically smallest witness in the box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttainedValue {
    #[serde(with = "crate::serde_big")]
    pub value: BigInt,
    pub witness: Vec<i64>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdSetReport {
    pub vars: Vec<String>,
    #[serde(rename = "box")]
    pub grid: GridBox,
    /// Positive attained values in ascending order.
    pub values: Vec<AttainedValue>,
    /// Smallest point where every polynomial vanishes, if any.
    pub zero_witness: Option<Vec<i64>>,
    pub zero_count: u64,
}

impl GcdSetReport {
    pub fn contains(&self, v: &BigInt) -> bool {
        self.values.binary_search_by(|a| a.value.cmp(v)).is_ok()
    }

    pub fn witness_of(&self, v: &BigInt) -> Option<&[i64]> {
        self.values
            .binary_search_by(|a| a.value.cmp(v))
            .ok()
            .map(|i| self.values[i].witness.as_slice())
    }

    pub fn value_list(&self) -> Vec<BigInt> {
        self.values.iter().map(|a| a.value.clone()).collect()
    }

    /// Re-evaluates every recorded witness.
    pub fn verify(&self, polys: &[Polynomial]) -> Result<()> {
        let ev = IntEvaluator::new(polys);
        for a in &self.values {
            let d = ev.gcd_at(&a.witness)?;
            if d != a.value {
                return Err(Error::Verification(format!(
                    "d at {:?} is {d}, report says {}",
                    a.witness, a.value
                )));
            }
        }
        if let Some(w) = &self.zero_witness {
            if ev.gcd_at(w)? != BigInt::from(0) {
                return Err(Error::Verification(format!("d at {w:?} is not 0")));
            }
        }
        Ok(())
    }
}

type Tally = BTreeMap<BigInt, (Vec<i64>, u64)>;

/// Exhaustive scan of a box: every attained value, its count and its
/// lexicographically smallest witness.
pub fn enumerate_gcd_set(polys: &[Polynomial], grid: &GridBox) -> Result<GcdSetReport> {
    let ev = IntEvaluator::new(polys);
    grid.check_dim(ev.nvars())?;
    let slices = grid.par_slices(Tally::new, |acc, pt| {
        let d = ev.gcd_at(pt).expect("dimension checked");
        acc.entry(d).and_modify(|e| e.1 += 1).or_insert_with(|| (pt.to_vec(), 1));
    });
    // slices arrive in ascending first coordinate, so the first witness seen is the smallest
    let mut merged = Tally::new();
    for slice in slices {
        for (d, (w, c)) in slice {
            merged.entry(d).and_modify(|e| e.1 += c).or_insert((w, c));
        }
    }
    let zero = merged.remove(&BigInt::from(0));
    let report = GcdSetReport {
        vars: ev.vars().to_vec(),
        grid: grid.clone(),
        values: merged
            .into_iter()
            .map(|(value, (witness, count))| AttainedValue { value, witness, count })
            .collect(),
        zero_count: zero.as_ref().map_or(0, |z| z.1),
        zero_witness: zero.map(|z| z.0),
    };
    Ok(report)
}
