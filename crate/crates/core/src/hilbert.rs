//! Integer specializations `P(n, y)` of polynomials in `(x_1, …, x_r, y)` and
//! their irreducibility in `Z[y]`.
//!
//! `P(n, y)` is irreducible in `Z[y]` exactly when it is primitive and
//! irreducible over Q. Primitivity fails for every n when a prime divides all
//! values of the y-coefficients of P, so such obstructions are detected first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::scan::fixed_prime_divisors;
use crate::arith::{self, DEFAULT_RHO_BUDGET};
use crate::error::{Error, Result};
use crate::grid::GridBox;
use crate::poly::univariate::UniPoly;
use crate::poly::Polynomial;

/// Default largest y-degree handled by the irreducibility test.
pub const DEFAULT_DEGREE_CAP: u32 = 6;

/// Cap on interpolation candidates tried by the Kronecker search.
pub const KRONECKER_CANDIDATE_BUDGET: u64 = 5_000_000;

fn split_vars(polys: &[Polynomial], y: &str) -> Result<(Vec<Polynomial>, Vec<String>, usize)> {
    let unified = Polynomial::unify_all(polys);
    let vars = unified.first().map(|p| p.vars().to_vec()).unwrap_or_default();
    let yi = vars
        .iter()
        .position(|v| v == y)
        .ok_or_else(|| Error::Precondition(format!("no polynomial involves {y}")))?;
    let xs = vars.iter().filter(|v| v.as_str() != y).cloned().collect();
    Ok((unified, xs, yi))
}

fn coefficient_family(p: &Polynomial, yi: usize, xs: &[String]) -> Result<Vec<Polynomial>> {
    let mut coeffs = p.split_in(yi);
    coeffs.reverse();
    coeffs
        .into_iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.compact().embed(xs))
        .collect()
}

/// The nonzero coefficients of P viewed as a polynomial in `y`, highest
/// y-degree first, as polynomials in the remaining variables.
pub fn y_coefficient_family(p: &Polynomial, y: &str) -> Result<Vec<Polynomial>> {
    let (unified, xs, yi) = split_vars(std::slice::from_ref(p), y)?;
    let p = &unified[0];
    if p.degree_in(yi).or_zero() == 0 {
        return Err(Error::Precondition(format!("{p} has degree 0 in {y}")));
    }
    coefficient_family(p, yi, &xs)
}

/// A prime dividing `Π_j P_j(n, y)` for every n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub prime: u64,
    /// 1-based index of a polynomial whose coefficients all take values
    /// divisible by `prime`; `None` when only the product is always divisible.
    pub family: Option<usize>,
}

fn product_of_families(fams: &[Vec<Polynomial>]) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::int_constant(Vec::new(), 1)];
    for fam in fams {
        out = out.iter().flat_map(|a| fam.iter().map(move |b| a * b)).collect();
    }
    Polynomial::unify_all(&out)
}

/// Primes p such that every `P_j(n, y)` product is `≡ 0 (mod p)` for all n.
///
/// Per-polynomial obstructions are the fixed prime divisors of each
/// y-coefficient family. A prime divides `Π_j P_j(n, y)` at n exactly when
/// some family vanishes at n modulo p, which is when every product of one
/// coefficient from each family vanishes there; so the mixed obstructions
/// are the fixed prime divisors of that product family, a finite set
/// computed exactly.
pub fn obstruction_primes(ps: &[Polynomial], y: &str) -> Result<Vec<Obstruction>> {
    let (unified, xs, yi) = split_vars(ps, y)?;
    let mut fams = Vec::new();
    for p in &unified {
        if p.degree_in(yi).or_zero() == 0 {
            return Err(Error::Precondition(format!("{p} has degree 0 in {y}")));
        }
        fams.push(coefficient_family(p, yi, &xs)?);
    }
    let mut out = Vec::new();
    for (j, fam) in fams.iter().enumerate() {
        for prime in fixed_prime_divisors(fam)? {
            out.push(Obstruction { prime, family: Some(j + 1) });
        }
    }
    if fams.len() > 1 {
        for prime in fixed_prime_divisors(&product_of_families(&fams))? {
            if !out.iter().any(|o| o.prime == prime) {
                out.push(Obstruction { prime, family: None });
            }
        }
    }
    out.sort_by_key(|o| (o.prime, o.family));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializationOutcome {
    #[serde(with = "crate::serde_big::vec")]
    pub point: Vec<BigInt>,
    pub specialized: String,
    /// Degree in y after specialization; `None` for the zero polynomial.
    pub degree: Option<u32>,
    /// Degree at most 0 after specialization: no verdict.
    pub degenerate: bool,
    #[serde(with = "crate::serde_big")]
    pub content: BigInt,
    pub primitive: bool,
    /// Smallest prime dividing the content.
    #[serde(with = "crate::serde_big::option")]
    pub obstruction_prime: Option<BigInt>,
    pub irreducible_q: Option<bool>,
    pub irreducible_z: bool,
    /// A factor of positive degree below the full degree, when reducible over Q.
    pub factor: Option<String>,
    /// The exact quotient of the specialized polynomial by `factor`.
    pub cofactor: Option<String>,
}

fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in arith::factor(&n.abs(), DEFAULT_RHO_BUDGET)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut q = d.clone();
            for _ in 0..=e {
                next.push(q.clone());
                q *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Lagrange interpolation through `(xs[i], vs[i])`, returned only when the
/// interpolant has integer coefficients.
fn interpolate(xs: &[i64], vs: &[BigInt]) -> Option<UniPoly> {
    let n = xs.len();
    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial Π_{j≠i} (y − x_j)/(x_i − x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for j in (0..n).filter(|&j| j != i) {
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(xs[j].into());
            }
            basis = next;
            denom *= BigInt::from(xs[i] - xs[j]);
        }
        let scale = BigRational::new(vs[i].clone(), denom);
        for (k, c) in basis.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    acc.iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<_>>>()
        .map(UniPoly::new)
}

/// Finds a factor of a primitive polynomial of positive degree below its own,
/// or `None` when it is irreducible over Q.
///
/// Rational roots are found from divisors of the extreme coefficients; factors
/// of degree g ≥ 2 by Kronecker's method: a factor h has `h(x_i) | f(x_i)` at
/// g + 1 integer points, which pins down finitely many interpolants.
pub fn find_factor(f: &UniPoly) -> Result<Option<UniPoly>> {
    let d = f.deg();
    if f.is_zero() || d <= 1 {
        return Ok(None);
    }
    let a0 = f.coeff(0);
    if a0.is_zero() {
        return Ok(Some(UniPoly::from_i64(&[0, 1])));
    }
    let lead = f.leading().expect("nonzero").clone();
    let num_divs = positive_divisors(&a0)?;
    let den_divs = positive_divisors(&lead)?;
    for q in &den_divs {
        for p in &num_divs {
            if !p.gcd(q).is_one() {
                continue;
            }
            for p in [p.clone(), -p] {
                // q^d·f(p/q)
                let mut acc = BigInt::zero();
                for (i, c) in f.coeffs().iter().enumerate() {
                    acc += c * p.pow(i as u32) * q.pow((d - i) as u32);
                }
                if acc.is_zero() {
                    return Ok(Some(UniPoly::new(vec![-p, q.clone()])));
                }
            }
        }
    }
    // no rational roots, so f is nonzero at every integer
    let points: Vec<i64> = (0..=d as i64 / 2).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }).collect();
    let mut spent = 0u64;
    for g in 2..=d / 2 {
        let xs = &points[..=g];
        let choices: Vec<Vec<BigInt>> = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let ds = positive_divisors(&f.eval_i64(x))?;
                // fix the sign of h(x_0); −h is a factor whenever h is
                Ok(if i == 0 { ds } else { ds.iter().flat_map(|v| [v.clone(), -v]).collect() })
            })
            .collect::<Result<_>>()?;
        let total = choices
            .iter()
            .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
            .filter(|&t| spent.saturating_add(t) <= KRONECKER_CANDIDATE_BUDGET)
            .ok_or_else(|| Error::Budget(format!("factor search over {f} exceeds {KRONECKER_CANDIDATE_BUDGET} candidates")))?;
        spent += total;
        let found = (0..total).into_par_iter().find_map_first(|mut idx| {
            let vs: Vec<BigInt> = choices
                .iter()
                .map(|c| {
                    let v = c[(idx % c.len() as u64) as usize].clone();
                    idx /= c.len() as u64;
                    v
                })
                .collect();
            let h = interpolate(xs, &vs)?;
            let hd = h.degree().or_zero() as usize;
            (hd >= 1 && hd < d && f.div_exact(&h).is_some()).then_some(h)
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Specializes the x-variables of P at `point` and decides irreducibility of
/// `P(n, y)` in `Z[y]`.
pub fn specialize_and_test(p: &Polynomial, y: &str, point: &[BigInt], degree_cap: u32) -> Result<SpecializationOutcome> {
    let fam = y_coefficient_family_dense(p, y)?;
    specialize_family(&fam, point, degree_cap)
}

/// The y-coefficients indexed by degree (lowest first, zeros kept) over the x-variables.
struct DenseFamily {
    y: String,
    coeffs: Vec<Polynomial>,
}

fn y_coefficient_family_dense(p: &Polynomial, y: &str) -> Result<DenseFamily> {
    let (unified, xs, yi) = split_vars(std::slice::from_ref(p), y)?;
    dense_family(&unified[0], yi, &xs, y)
}

fn dense_family(p: &Polynomial, yi: usize, xs: &[String], y: &str) -> Result<DenseFamily> {
    if p.degree_in(yi).or_zero() == 0 {
        return Err(Error::Precondition(format!("{p} has degree 0 in {y}")));
    }
    let coeffs = p.split_in(yi).into_iter().map(|c| c.compact().embed(xs)).collect::<Result<_>>()?;
    Ok(DenseFamily { y: y.to_string(), coeffs })
}

fn specialize_family(fam: &DenseFamily, point: &[BigInt], degree_cap: u32) -> Result<SpecializationOutcome> {
    let cap_deg = fam.coeffs.len() as u32 - 1;
    if cap_deg > degree_cap {
        return Err(Error::Budget(format!("degree {cap_deg} in y exceeds the cap {degree_cap}")));
    }
    let values = fam.coeffs.iter().map(|c| c.eval(point)).collect::<Result<Vec<_>>>()?;
    let f = UniPoly::new(values);
    let content = f.content();
    let degree = f.degree().finite();
    let degenerate = degree.is_none_or(|d| d == 0);
    let primitive = content.is_one();
    let obstruction_prime = if primitive || content.is_zero() {
        None
    } else {
        arith::factor(&content, DEFAULT_RHO_BUDGET)?.into_iter().map(|(q, _)| q).min()
    };
    let mut out = SpecializationOutcome {
        point: point.to_vec(),
        specialized: f.to_polynomial(&fam.y).to_string(),
        degree,
        degenerate,
        content: content.clone(),
        primitive,
        obstruction_prime,
        irreducible_q: None,
        irreducible_z: false,
        factor: None,
        cofactor: None,
    };
    if degenerate {
        return Ok(out);
    }
    let pp = f.primitive();
    match find_factor(&pp)? {
        Some(h) => {
            let q = f.div_exact(&h).expect("a factor of the primitive part divides f");
            out.irreducible_q = Some(false);
            out.factor = Some(h.to_polynomial(&fam.y).to_string());
            out.cofactor = Some(q.to_polynomial(&fam.y).to_string());
        }
        None => {
            out.irreducible_q = Some(true);
            out.irreducible_z = primitive;
        }
    }
    Ok(out)
}

/// One box point with the outcome for each polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub point: Vec<i64>,
    pub good: bool,
    pub outcomes: Vec<SpecializationOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodDensityReport {
    pub y: String,
    pub x_vars: Vec<String>,
    pub polys: Vec<String>,
    #[serde(rename = "box")]
    pub grid: GridBox,
    pub degree_cap: u32,
    pub points: u64,
    /// Points where every `P_j(n, y)` is irreducible in `Z[y]`.
    pub good: u64,
    /// Points where some `P_j(n, y)` has degree at most 0; counted as not good.
    pub degenerate: u64,
    #[serde(with = "crate::serde_big::ratio")]
    pub ratio: BigRational,
    pub outcomes: Vec<PointRecord>,
}

/// Largest box scanned for good specializations.
pub const HILBERT_POINT_BUDGET: u128 = 1_000_000;

/// Scans a box of x-points and reports the proportion where every
/// `P_j(n, y)` is irreducible in `Z[y]`.
pub fn good_specialization_density(
    ps: &[Polynomial],
    y: &str,
    grid: &GridBox,
    degree_cap: u32,
) -> Result<GoodDensityReport> {
    let obstructions = obstruction_primes(ps, y)?;
    if !obstructions.is_empty() {
        let list: Vec<String> = obstructions
            .iter()
            .map(|o| match o.family {
                Some(j) => format!("p = {} (polynomial {j})", o.prime),
                None => format!("p = {} (product)", o.prime),
            })
            .collect();
        return Err(Error::Obstruction(list.join(", ")));
    }
    let (unified, xs, yi) = split_vars(ps, y)?;
    grid.check_dim(xs.len())?;
    if grid.count() > HILBERT_POINT_BUDGET {
        return Err(Error::Budget(format!("{} points exceed the budget {HILBERT_POINT_BUDGET}", grid.count())));
    }
    let fams = unified.iter().map(|p| dense_family(p, yi, &xs, y)).collect::<Result<Vec<_>>>()?;
    let slices = grid.par_slices(
        || Ok(Vec::new()),
        |acc: &mut Result<Vec<PointRecord>>, pt| {
            if let Ok(records) = acc {
                let big: Vec<BigInt> = pt.iter().map(|&v| v.into()).collect();
                match fams.iter().map(|f| specialize_family(f, &big, degree_cap)).collect::<Result<Vec<_>>>() {
                    Ok(outcomes) => records.push(PointRecord {
                        point: pt.to_vec(),
                        good: outcomes.iter().all(|o| o.irreducible_z),
                        outcomes,
                    }),
                    Err(e) => *acc = Err(e),
                }
            }
        },
    );
    let mut outcomes = Vec::new();
    for s in slices {
        outcomes.extend(s?);
    }
    let points = outcomes.len() as u64;
    let good = outcomes.iter().filter(|r| r.good).count() as u64;
    let degenerate = outcomes.iter().filter(|r| r.outcomes.iter().any(|o| o.degenerate)).count() as u64;
    Ok(GoodDensityReport {
        y: y.to_string(),
        x_vars: xs,
        polys: unified.iter().map(|p| p.to_string()).collect(),
        grid: grid.clone(),
        degree_cap,
        points,
        good,
        degenerate,
        ratio: BigRational::new(good.into(), points.max(1).into()),
        outcomes,
    })
}

impl GoodDensityReport {
    pub fn ratio_f64(&self) -> f64 {
        self.ratio.to_f64().unwrap_or(f64::NAN)
    }
}
