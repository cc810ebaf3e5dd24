//! One function per subcommand, each producing a report document.

use std::fs;
use std::io::Read;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};
use valgcd_core::algebra::{coprime_mod_p_scan, fixed_prime_divisors};
use valgcd_core::arith::DEFAULT_RHO_BUDGET;
use valgcd_core::criteria::{
    coprime_test_multivar, coprime_test_one_var, normalized_height, schwartz_zippel_count, SampleConfig,
};
use valgcd_core::density::{
    euler_product, exact_one_var, product_family_density, ratio_f64, tail_decomposition, DensityEstimate,
};
use valgcd_core::gcdset::{
    closure_audit, enumerate_gcd_set, period_one_var, witness_multivar, AuditConfig, Mode, WitnessBudget,
};
use valgcd_core::hilbert::{good_specialization_density, specialize_and_test};
use valgcd_core::{parse_polynomial, Error, Polynomial, Result};

use crate::args::{BudgetArgs, Command};
use crate::certs::Certificate;
use crate::input::{parse_box, parse_point, parse_set, read_polys, Family};
use crate::report::Document;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn family_vars(polys: &[Polynomial]) -> Vec<String> {
    Polynomial::unify_all(polys).first().map(|p| p.vars().to_vec()).unwrap_or_default()
}

fn poly_inputs(fam: &Family) -> Value {
    json!({ "polys": fam.texts, "vars": family_vars(&fam.polys) })
}

fn budget(b: &BudgetArgs) -> WitnessBudget {
    WitnessBudget {
        max_direction_norm: b.max_direction_norm,
        max_k: b.max_k,
        max_period_bits: b.max_period_bits,
        max_modulus_bits: b.max_modulus_bits,
        rho_budget: DEFAULT_RHO_BUDGET,
    }
}

fn density_diagnostics(e: &DensityEstimate) -> Value {
    json!({
        "partial": ratio_f64(&e.partial),
        "lower": ratio_f64(&e.lower),
        "upper": ratio_f64(&e.upper),
        "empirical": e.empirical.iter().map(|c| json!({
            "box": c.kind, "b": c.b, "ratio": ratio_f64(&c.ratio),
        })).collect::<Vec<_>>(),
    })
}

pub fn run(command: Command) -> Result<Document> {
    match command {
        Command::Gcdset { polys, grid } => {
            let fam = read_polys(&polys)?;
            let vars = family_vars(&fam.polys);
            let grid = parse_box(&grid, vars.len())?;
            let report = enumerate_gcd_set(&fam.polys, &grid)?;
            let texts = Polynomial::unify_all(&fam.polys).iter().map(|p| p.to_string()).collect();
            let values: Vec<String> = report.values.iter().map(|a| a.value.to_string()).collect();
            Ok(Document::new("gcdset", poly_inputs(&fam), to_value(&report))
                .with_diagnostics(json!({ "attained": values.len(), "value_list": values }))
                .with_certificates(vec![Certificate::GcdSet { polys: texts, report }]))
        }
        Command::Witness { polys, mode, at, and, budget: b } => {
            let fam = read_polys(&polys)?;
            let mode: Mode = mode.parse()?;
            let (m, n) = (parse_point(&at)?, parse_point(&and)?);
            let cert = witness_multivar(&fam.polys, &m, &n, mode, &budget(&b))?;
            let mut inputs = poly_inputs(&fam);
            inputs["mode"] = json!(mode);
            inputs["budget"] = to_value(&budget(&b));
            Ok(Document::new("witness", inputs, to_value(&cert)).with_certificates(vec![Certificate::Witness(cert)]))
        }
        Command::ClosureAudit { polys, grid, pairs, seed, budget: b } => {
            let fam = read_polys(&polys)?;
            let grid = parse_box(&grid, family_vars(&fam.polys).len())?;
            let config = AuditConfig { pairs, seed, budget: budget(&b) };
            let report = closure_audit(&fam.polys, &grid, &config)?;
            let certs = report.certificates().cloned().map(Certificate::Witness).collect();
            let mut inputs = poly_inputs(&fam);
            inputs["box"] = to_value(&grid);
            Ok(Document::new("closure-audit", inputs, to_value(&report))
                .with_diagnostics(json!({ "all_certified": report.all_certified() }))
                .with_certificates(certs))
        }
        Command::Period { polys, window_cap } => {
            let fam = read_polys(&polys)?;
            let cert = period_one_var(&fam.polys, window_cap)?;
            Ok(Document::new("period", poly_inputs(&fam), to_value(&cert)).with_certificates(vec![Certificate::Period(cert)]))
        }
        Command::Density { polys, truncate, empirical, tail_box } => {
            let fam = read_polys(&polys)?;
            let mut est = euler_product(&fam.polys, truncate)?;
            if let Some(b) = empirical {
                est.add_empirical(&fam.polys, b)?;
            }
            let mut result = to_value(&est);
            if let Some(b) = tail_box {
                result["tail"] = to_value(&tail_decomposition(&fam.polys, b)?);
            }
            let mut inputs = poly_inputs(&fam);
            inputs["truncate"] = json!(truncate);
            Ok(Document::new("density", inputs, result).with_diagnostics(density_diagnostics(&est)))
        }
        Command::DensityExact1 { polys } => {
            let fam = read_polys(&polys)?;
            let density = exact_one_var(&fam.polys)?;
            let texts: Vec<String> = fam.polys.iter().map(|p| p.embed(std::slice::from_ref(&density.variable)).map(|q| q.to_string())).collect::<Result<_>>()?;
            Ok(Document::new("density-exact1", poly_inputs(&fam), to_value(&density))
                .with_diagnostics(json!({ "density": ratio_f64(&density.density) }))
                .with_certificates(vec![Certificate::OneVarDensity { polys: texts, density }]))
        }
        Command::DensityFamilies { families, truncate } => {
            let parsed: Vec<Vec<Polynomial>> = families
                .iter()
                .map(|f| f.split(',').map(parse_polynomial).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            let report = product_family_density(&parsed, truncate)?;
            let diagnostics = density_diagnostics(&report.estimate);
            Ok(Document::new("density-families", json!({ "families": families, "truncate": truncate }), to_value(&report))
                .with_diagnostics(diagnostics))
        }
        Command::Criterion1Var { polys, limit } => {
            let fam = read_polys(&polys)?;
            let limit = match limit {
                Some(l) => l,
                None => default_height_limit(&fam.polys)?,
            };
            let verdict = coprime_test_one_var(&fam.polys, limit)?;
            let mut inputs = poly_inputs(&fam);
            inputs["limit"] = json!(limit);
            Ok(Document::new("criterion-1var", inputs, to_value(&verdict))
                .with_certificates(vec![Certificate::Coprimality(verdict)]))
        }
        Command::CriterionSample { polys, set, k, samples, seed } => {
            let fam = read_polys(&polys)?;
            let set = parse_set(&set)?;
            let verdict = coprime_test_multivar(&fam.polys, &set, k, SampleConfig { samples, seed })?;
            let mut inputs = poly_inputs(&fam);
            inputs["k"] = json!(k);
            let diagnostics = match &verdict.evidence {
                valgcd_core::criteria::Evidence::ValueDensity(e) => {
                    json!({ "pi_k": ratio_f64(&e.pi_k), "threshold": ratio_f64(&e.threshold) })
                }
                _ => Value::Null,
            };
            Ok(Document::new("criterion-sample", inputs, to_value(&verdict))
                .with_diagnostics(diagnostics)
                .with_certificates(vec![Certificate::Coprimality(verdict)]))
        }
        Command::SzCount { poly, set } => {
            let p = parse_polynomial(&poly)?;
            let set = parse_set(&set)?;
            let count = schwartz_zippel_count(&p, &set)?;
            Ok(Document::new("sz-count", json!({ "poly": poly }), to_value(&count)))
        }
        Command::ReduceScan { polys, bound } => {
            let fam = read_polys(&polys)?;
            let report = coprime_mod_p_scan(&fam.polys, bound)?;
            let mut inputs = poly_inputs(&fam);
            inputs["bound"] = json!(bound);
            Ok(Document::new("reduce-scan", inputs, to_value(&report)))
        }
        Command::FixedDivisors { polys } => {
            let fam = read_polys(&polys)?;
            let primes = fixed_prime_divisors(&fam.polys)?;
            Ok(Document::new("fixed-divisors", poly_inputs(&fam), json!({ "fixed_divisors": primes })))
        }
        Command::Hilbert { polys, y, grid, point, degree_cap, outcomes } => {
            let fam = read_polys(&polys)?;
            let unified = Polynomial::unify_all(&fam.polys);
            let vars = family_vars(&fam.polys);
            if !vars.contains(&y) {
                return Err(Error::Precondition(format!("variable {y} does not occur in the family")));
            }
            let x_dim = vars.len() - 1;
            let mut inputs = poly_inputs(&fam);
            inputs["y"] = json!(y);
            inputs["degree_cap"] = json!(degree_cap);
            match point {
                Some(pt) => {
                    let pt = parse_point(&pt)?;
                    if pt.len() != x_dim {
                        return Err(Error::DimensionMismatch { expected: x_dim, found: pt.len() });
                    }
                    let mut certs = Vec::new();
                    for p in &unified {
                        let outcome = specialize_and_test(p, &y, &pt, degree_cap)?;
                        certs.push(Certificate::Specialization {
                            vars: vars.clone(),
                            poly: p.to_string(),
                            y: y.clone(),
                            degree_cap,
                            outcome,
                        });
                    }
                    let outs: Vec<Value> = certs
                        .iter()
                        .map(|c| match c {
                            Certificate::Specialization { outcome, .. } => to_value(outcome),
                            _ => unreachable!(),
                        })
                        .collect();
                    Ok(Document::new("hilbert", inputs, json!({ "point": pt.iter().map(BigInt::to_string).collect::<Vec<_>>(), "outcomes": outs }))
                        .with_certificates(certs))
                }
                None => {
                    let grid = parse_box(&grid, x_dim)?;
                    let mut report = good_specialization_density(&unified, &y, &grid, degree_cap)?;
                    if !outcomes {
                        report.outcomes.clear();
                    }
                    let ratio = report.ratio_f64();
                    Ok(Document::new("hilbert", inputs, to_value(&report)).with_diagnostics(json!({ "ratio": ratio })))
                }
            }
        }
        Command::Verify { report } => {
            let text = if report.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::Precondition(format!("cannot read stdin: {e}")))?;
                s
            } else {
                fs::read_to_string(&report)
                    .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", report.display())))?
            };
            let doc: Document = serde_json::from_str(&text)
                .map_err(|e| Error::Syntax { column: e.column(), message: format!("not a report document: {e}") })?;
            if doc.schema != crate::report::SCHEMA {
                return Err(Error::Precondition(format!("unsupported schema {:?}", doc.schema)));
            }
            let mut checked = Vec::new();
            for (i, c) in doc.certificates.iter().enumerate() {
                c.verify().map_err(|e| {
                    let detail = match e {
                        Error::Verification(m) => m,
                        e => e.to_string(),
                    };
                    Error::Verification(format!("certificate {} ({}): {detail}", i + 1, c.kind()))
                })?;
                checked.push(json!({ "index": i + 1, "kind": c.kind(), "status": "ok" }));
            }
            Ok(Document::new(
                "verify",
                json!({ "report": report.display().to_string(), "command": doc.command }),
                json!({ "verified": checked.len(), "certificates": checked }),
            ))
        }
    }
}

/// `10·⌈2H+3⌉ + 1000`, with H the smallest normalized height of the family.
fn default_height_limit(polys: &[Polynomial]) -> Result<u64> {
    let mut h = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        let x = normalized_height(p)?;
        h = Some(match h {
            Some(m) if m < x => m,
            _ => x,
        });
    }
    let h = h.ok_or_else(|| Error::ZeroPolynomial("every polynomial is zero".into()))?;
    let start = (h * BigInt::from(2) + BigInt::from(3)).ceil().to_integer();
    start
        .to_u64()
        .and_then(|s| s.checked_mul(10))
        .and_then(|s| s.checked_add(1000))
        .ok_or_else(|| Error::Budget(format!("search start {start} is out of range")))
}

