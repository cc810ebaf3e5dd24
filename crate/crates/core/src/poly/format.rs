use std::fmt;

use num_traits::Signed;

use super::{CoeffRing, Integers, MPoly, PrimeField};

/// Rings whose elements print with an explicit sign.
pub trait SignedDisplay: CoeffRing {
    fn is_negative(&self, a: &Self::Elem) -> bool;
}

impl SignedDisplay for Integers {
    fn is_negative(&self, a: &Self::Elem) -> bool {
        a.is_negative()
    }
}

impl SignedDisplay for PrimeField {
    fn is_negative(&self, _: &u64) -> bool {
        false
    }
}

/// Writes terms in descending graded-lex order, e.g. `3*x^2*y - y + 7`.
pub(super) fn write_poly<R: SignedDisplay>(p: &MPoly<R>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let ring = p.ring();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = ring.is_negative(c);
        let abs = if neg { ring.neg(c) } else { c.clone() };
        match (i, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let unit = abs == ring.one();
        let mut first = true;
        if !unit || m.is_one() {
            write!(f, "{abs}")?;
            first = false;
        }
        for (v, &e) in p.vars().iter().zip(m.exponents()) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
    }
    Ok(())
}
