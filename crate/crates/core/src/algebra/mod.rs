//! Gcds, Bézout identities and resultants over Q and F_p; bad and fixed primes.

pub mod bezout;
pub mod gcd;
pub mod resultant;
pub mod scan;

pub use bezout::{bezout_delta, BezoutCertificate};
pub use resultant::{resultant_prs, resultant_sylvester};
pub use scan::{coprime_mod_p_scan, fixed_prime_divisors, BadPrime, PrimeScanReport};

use crate::error::{Error, Result};
use crate::poly::univariate::univariate_family;
use crate::poly::Polynomial;
use num_bigint::BigInt;

/// Gcd over Q as a primitive integer polynomial with positive leading
/// coefficient; the constant 1 when the inputs are coprime.
pub fn gcd_q(polys: &[Polynomial]) -> Result<Polynomial> {
    if polys.iter().all(|p| p.is_zero()) {
        return Err(Error::ZeroPolynomial("gcd of zero polynomials".into()));
    }
    let g = gcd::gcd_many(polys).expect("nonempty");
    Ok(g.primitive_normalized())
}

pub fn is_coprime_q(polys: &[Polynomial]) -> Result<bool> {
    Ok(gcd_q(polys)?.is_constant())
}

/// Fails with [`Error::NotCoprime`] unless the family is coprime over Q.
pub fn require_coprime(polys: &[Polynomial]) -> Result<()> {
    let g = gcd_q(polys)?;
    if g.is_constant() {
        Ok(())
    } else {
        Err(Error::NotCoprime(g.to_string()))
    }
}

/// Resultant of two nonzero polynomials in one common variable.
pub fn resultant(p: &Polynomial, q: &Polynomial) -> Result<BigInt> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial("resultant needs nonzero inputs".into()));
    }
    let (_, dense) = univariate_family(&[p.clone(), q.clone()])?;
    let r = resultant_prs(&dense[0], &dense[1]);
    debug_assert_eq!(r, resultant_sylvester(&dense[0], &dense[1]));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::{parse_family, parse_polynomial};

    #[test]
    fn gcd_q_examples() {
        let f = parse_family(&["5*(x^2-1)*(x-1)", "(x^2-1)*x^2"]).unwrap();
        assert_eq!(gcd_q(&f).unwrap(), parse_polynomial("x^2 - 1").unwrap());
        let f = parse_family(&["x^2 - y^3", "x*(y+2) + 1"]).unwrap();
        assert_eq!(gcd_q(&f).unwrap().to_string(), "1");
        let p = parse_polynomial("-4*x^2 + 6*y").unwrap();
        assert_eq!(gcd_q(&[p.clone(), p]).unwrap(), parse_polynomial("2*x^2 - 3*y").unwrap());
        assert!(gcd_q(&[parse_polynomial("0").unwrap()]).is_err());
    }

    #[test]
    fn resultant_examples() {
        let r = |a: &str, b: &str| resultant(&parse_polynomial(a).unwrap(), &parse_polynomial(b).unwrap()).unwrap();
        assert_eq!(r("x", "x + 2"), BigInt::from(2));
        assert_eq!(r("x - 1", "x + 1"), BigInt::from(2));
        assert_eq!(r("x^2 + 1", "x^2 - 2"), BigInt::from(9));
    }
}
