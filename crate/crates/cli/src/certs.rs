//! Certificates carried by reports, re-checkable from the report alone.

use serde::{Deserialize, Serialize};
use valgcd_core::criteria::CoprimalityVerdict;
use valgcd_core::density::{exact_one_var, OneVarDensity};
use valgcd_core::gcdset::{GcdSetReport, PeriodCertificate, WitnessCertificate};
use valgcd_core::hilbert::{specialize_and_test, SpecializationOutcome};
use valgcd_core::{parse_in, Error, Polynomial, Result};

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Witness(WitnessCertificate),
    Period(PeriodCertificate),
    GcdSet { polys: Vec<String>, report: GcdSetReport },
    Coprimality(CoprimalityVerdict),
    OneVarDensity { polys: Vec<String>, density: OneVarDensity },
    Specialization { vars: Vec<String>, poly: String, y: String, degree_cap: u32, outcome: SpecializationOutcome },
}

fn parse_all(texts: &[String], vars: &[String]) -> Result<Vec<Polynomial>> {
    texts.iter().map(|p| parse_in(p, vars)).collect()
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Witness(_) => "witness",
            Certificate::Period(_) => "period",
            Certificate::GcdSet { .. } => "gcd-set",
            Certificate::Coprimality(_) => "coprimality",
            Certificate::OneVarDensity { .. } => "one-var-density",
            Certificate::Specialization { .. } => "specialization",
        }
    }

    pub fn verify(&self) -> Result<()> {
        match self {
            Certificate::Witness(c) => c.verify(),
            Certificate::Period(c) => c.verify(),
            Certificate::Coprimality(c) => c.verify(),
            Certificate::GcdSet { polys, report } => report.verify(&parse_all(polys, &report.vars)?),
            Certificate::OneVarDensity { polys, density } => {
                let again = exact_one_var(&parse_all(polys, std::slice::from_ref(&density.variable))?)?;
                if &again != density {
                    return Err(Error::Verification(format!(
                        "recomputed density {} differs from {}",
                        again.density, density.density
                    )));
                }
                Ok(())
            }
            Certificate::Specialization { vars, poly, y, degree_cap, outcome } => {
                let p = parse_in(poly, vars)?;
                let again = specialize_and_test(&p, y, &outcome.point, *degree_cap)?;
                if &again != outcome {
                    return Err(Error::Verification(format!("specialization at {:?} differs", outcome.point)));
                }
                if let (Some(f), Some(q)) = (&outcome.factor, &outcome.cofactor) {
                    let y = vec![y.clone()];
                    let prod = &parse_in(f, &y)? * &parse_in(q, &y)?;
                    if prod.to_string() != outcome.specialized {
                        return Err(Error::Verification(format!("({f})·({q}) is not {}", outcome.specialized)));
                    }
                }
                Ok(())
            }
        }
    }
}
