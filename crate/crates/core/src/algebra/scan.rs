//! Reduction of coprime families modulo primes.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gcd::gcd_many;
use crate::arith::{self, primes_up_to};
use crate::error::{Error, Result};
use crate::poly::eval::ModPEvaluator;
use crate::poly::{gcd_all, PrimeField, Polynomial};

/// A prime at which the reduced family acquires a common factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPrime {
    pub prime: u64,
    /// Monic gcd of the reductions, formatted with representatives in `[0, p)`.
    pub gcd: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeScanReport {
    pub bound: u64,
    pub bad_primes: Vec<BadPrime>,
    /// Primes at which some polynomial of the family reduces to zero.
    pub degenerate_primes: Vec<u64>,
    pub fixed_divisors: Vec<u64>,
}

impl PrimeScanReport {
    pub fn largest_exceptional_prime(&self) -> Option<u64> {
        self.bad_primes
            .iter()
            .map(|b| b.prime)
            .chain(self.degenerate_primes.iter().copied())
            .max()
    }
}

enum PrimeOutcome {
    Good,
    Bad(String),
    Degenerate,
}

fn classify(polys: &[Polynomial], p: u64) -> PrimeOutcome {
    let field = PrimeField::new(p);
    let reduced: Vec<_> = polys.iter().map(|q| q.reduce_mod_p_unchecked(field)).collect();
    if reduced.iter().any(|q| q.is_zero()) {
        return PrimeOutcome::Degenerate;
    }
    let g = gcd_many(&reduced).expect("nonempty family");
    if g.is_constant() {
        PrimeOutcome::Good
    } else {
        PrimeOutcome::Bad(g.monic().lift().to_string())
    }
}

/// Scans every prime `p <= bound` for a nontrivial gcd of the reduced family.
///
/// The family must be coprime over Q. Primes are processed in parallel and
/// reported in ascending order.
pub fn coprime_mod_p_scan(polys: &[Polynomial], bound: u64) -> Result<PrimeScanReport> {
    let polys = Polynomial::unify_all(polys);
    let g = super::gcd_q(&polys)?;
    if !g.is_constant() {
        return Err(Error::NotCoprime(g.to_string()));
    }
    let primes = primes_up_to(bound);
    let outcomes: Vec<(u64, PrimeOutcome)> =
        primes.par_iter().map(|&p| (p, classify(&polys, p))).collect();
    let mut bad_primes = Vec::new();
    let mut degenerate_primes = Vec::new();
    for (p, o) in outcomes {
        match o {
            PrimeOutcome::Good => {}
            PrimeOutcome::Bad(gcd) => bad_primes.push(BadPrime { prime: p, gcd }),
            PrimeOutcome::Degenerate => degenerate_primes.push(p),
        }
    }
    Ok(PrimeScanReport { bound, bad_primes, degenerate_primes, fixed_divisors: fixed_prime_divisors(&polys)? })
}

/// Whether every polynomial vanishes at every point of `F_p^r`.
pub fn vanishes_identically(polys: &[Polynomial], p: u64) -> bool {
    let field = PrimeField::new(p);
    if polys.iter().all(|q| q.reduce_mod_p_unchecked(field).is_zero()) {
        return true;
    }
    let ev = ModPEvaluator::new(polys, p);
    let r = ev.nvars();
    let mut pt = vec![0u64; r];
    loop {
        if !ev.all_vanish(&pt) {
            return false;
        }
        let mut i = 0;
        loop {
            if i == r {
                return true;
            }
            pt[i] += 1;
            if pt[i] < p {
                break;
            }
            pt[i] = 0;
            i += 1;
        }
    }
}

/// The primes dividing every value of every polynomial of the family.
///
/// A candidate must divide all coefficients of each `P_i` or be at most its
/// total degree: a polynomial of total degree `d < p` that is nonzero modulo
/// `p` has every partial degree below `p`, so it is nonzero as a function on
/// `F_p^r` (Schwartz–Zippel gives at most `d·p^(r−1) < p^r` zeros). Primes
/// dividing every content are fixed divisors outright; the small candidates
/// are decided by exhaustive evaluation.
pub fn fixed_prime_divisors(polys: &[Polynomial]) -> Result<Vec<u64>> {
    if polys.iter().any(|p| p.is_zero()) {
        return Err(Error::ZeroPolynomial("fixed divisors need nonzero polynomials".into()));
    }
    let polys = Polynomial::unify_all(polys);
    let contents: Vec<BigInt> = polys.iter().map(|p| p.content().0).collect();
    let common = gcd_all(&contents);
    let mut out: Vec<u64> = Vec::new();
    if !common.is_zero() && common != BigInt::from(1) {
        for (p, _) in arith::factor(&common, arith::DEFAULT_RHO_BUDGET)? {
            let p = p
                .to_u64()
                .ok_or_else(|| Error::Budget(format!("fixed prime divisor {p} exceeds 64 bits")))?;
            out.push(p);
        }
    }
    let max_deg = polys.iter().map(|p| p.total_degree().or_zero()).max().unwrap_or(0);
    for p in primes_up_to(max_deg as u64) {
        if !out.contains(&p) && vanishes_identically(&polys, p) {
            out.push(p);
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_family;

    #[test]
    fn two_bad_primes_below_300() {
        let fam = parse_family(&["x^3*y - 3*x^3 - 2*x + 3*y + 2", "y*(2*x - 11)"]).unwrap();
        let rep = coprime_mod_p_scan(&fam, 300).unwrap();
        assert_eq!(
            rep.bad_primes,
            vec![
                BadPrime { prime: 5, gcd: "x + 2".into() },
                BadPrime { prime: 271, gcd: "x + 130".into() }
            ]
        );
    }

    #[test]
    fn shifted_pair_mod_two() {
        let fam = parse_family(&["x", "x + 2"]).unwrap();
        let rep = coprime_mod_p_scan(&fam, 100).unwrap();
        assert_eq!(rep.bad_primes, vec![BadPrime { prime: 2, gcd: "x".into() }]);
        assert!(rep.degenerate_primes.is_empty());
    }

    #[test]
    fn cusp_pair_has_no_bad_primes() {
        let fam = parse_family(&["x^2 - y^3", "x*(y+2) + 1"]).unwrap();
        assert!(coprime_mod_p_scan(&fam, 50).unwrap().bad_primes.is_empty());
    }

    #[test]
    fn non_coprime_scan_rejected() {
        let fam = parse_family(&["x^2 - 1", "x - 1"]).unwrap();
        assert!(matches!(coprime_mod_p_scan(&fam, 10), Err(Error::NotCoprime(_))));
    }

    #[test]
    fn fixed_divisor_examples() {
        assert_eq!(fixed_prime_divisors(&parse_family(&["x^2 - x", "x^2 - x + 2"]).unwrap()).unwrap(), vec![2]);
        assert!(fixed_prime_divisors(&parse_family(&["x^2 - y^3", "x*(y+2)+1"]).unwrap()).unwrap().is_empty());
        assert_eq!(fixed_prime_divisors(&parse_family(&["2*x", "2*y"]).unwrap()).unwrap(), vec![2]);
        assert_eq!(fixed_prime_divisors(&parse_family(&["x^3 - x", "6"]).unwrap()).unwrap(), vec![2, 3]);
    }
}
