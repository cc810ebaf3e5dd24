//! Recursive multivariate gcd with subresultant remainder sequences.
//!
//! A polynomial is viewed as univariate in its main variable (the
//! highest-index variable occurring in either argument) with coefficients in
//! the remaining variables. The gcd is `gcd(contents) · gcd(primitive parts)`,
//! where the second factor is the primitive part of the last nonzero term of
//! the subresultant sequence. The same code runs over Z and over F_p.

use crate::poly::{CoeffRing, MPoly};

/// Coefficients in the main variable, constant term first, no trailing zeros.
type Rec<R> = Vec<MPoly<R>>;

fn trim<R: CoeffRing>(v: &mut Rec<R>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn split<R: CoeffRing>(p: &MPoly<R>, var: usize) -> Rec<R> {
    let mut v = p.split_in(var);
    trim(&mut v);
    v
}

fn join<R: CoeffRing>(v: &Rec<R>, var: usize, like: &MPoly<R>) -> MPoly<R> {
    MPoly::join_in(var, v, like.ring().clone(), like.vars().to_vec())
}

fn main_var<R: CoeffRing>(a: &MPoly<R>, b: &MPoly<R>) -> Option<usize> {
    (0..a.nvars()).rev().find(|&i| a.degree_in(i).or_zero() > 0 || b.degree_in(i).or_zero() > 0)
}

/// `lc(b)^(deg a − deg b + 1) · a mod b` in the main variable.
fn pseudo_rem<R: CoeffRing>(a: &Rec<R>, b: &Rec<R>) -> Rec<R> {
    let db = b.len() - 1;
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.clone();
    let mut e = a.len() - db;
    while r.len() > db && !r.is_empty() {
        let top = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&top * bc);
        }
        r.pop();
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn rec_div_exact<R: CoeffRing>(a: &Rec<R>, d: &MPoly<R>) -> Rec<R> {
    a.iter()
        .map(|c| c.div_exact(d).expect("subresultant division is exact"))
        .collect()
}

fn content_of<R: CoeffRing>(coeffs: &Rec<R>) -> MPoly<R> {
    let mut g = coeffs[0].clone();
    for c in &coeffs[1..] {
        g = gcd(&g, c);
    }
    g
}

/// Gcd in `R[x]`, normalized by [`MPoly::normalize_unit`]. Both arguments
/// must share one variable list. `gcd(0, 0) = 0`.
pub fn gcd<R: CoeffRing>(a: &MPoly<R>, b: &MPoly<R>) -> MPoly<R> {
    if a.vars() != b.vars() {
        let u = MPoly::unify_all(&[a.clone(), b.clone()]);
        return gcd(&u[0], &u[1]);
    }
    if a.is_zero() {
        return b.normalize_unit();
    }
    if b.is_zero() {
        return a.normalize_unit();
    }
    let Some(v) = main_var(a, b) else {
        let ring = a.ring();
        let g = ring.gcd(&a.constant_term(), &b.constant_term());
        return MPoly::constant(ring.clone(), a.vars().to_vec(), g);
    };
    let mut ra = split(a, v);
    let mut rb = split(b, v);
    let ca = content_of(&ra);
    let cb = content_of(&rb);
    let c = gcd(&ca, &cb);
    ra = rec_div_exact(&ra, &ca);
    rb = rec_div_exact(&rb, &cb);
    if ra.len() == 1 || rb.len() == 1 {
        return c.normalize_unit();
    }
    if ra.len() < rb.len() {
        std::mem::swap(&mut ra, &mut rb);
    }
    let one = MPoly::one(a.ring().clone(), a.vars().to_vec());
    let mut g = one.clone();
    let mut h = one;
    let last = loop {
        let delta = (ra.len() - rb.len()) as u32;
        let r = pseudo_rem(&ra, &rb);
        if r.is_empty() {
            break Some(rb);
        }
        if r.len() == 1 {
            break None;
        }
        let divisor = &g * &h.pow(delta);
        ra = rb;
        rb = rec_div_exact(&r, &divisor);
        g = ra.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant h update is exact"),
        };
    };
    match last {
        None => c.normalize_unit(),
        Some(mut rb) => {
            let cont = content_of(&rb);
            rb = rec_div_exact(&rb, &cont);
            (&c * &join(&rb, v, a)).normalize_unit()
        }
    }
}

/// Gcd of a list, folded pairwise.
pub fn gcd_many<R: CoeffRing>(polys: &[MPoly<R>]) -> Option<MPoly<R>> {
    let unified = MPoly::unify_all(polys);
    let mut it = unified.into_iter();
    let first = it.next()?;
    Some(it.fold(first.normalize_unit(), |g, p| gcd(&g, &p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::{parse_family, parse_polynomial};
    use crate::poly::Polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn univariate_integer_gcd() {
        let g = gcd(&p("5*(x^2-1)*(x-1)"), &p("(x^2-1)*x^2"));
        assert_eq!(g, p("x^2 - 1"));
        assert_eq!(gcd(&p("6*x+6"), &p("4*x+4")), p("2*x+2"));
    }

    #[test]
    fn bivariate_coprime_pair() {
        let fam = parse_family(&["x^2 - y^3", "x*(y+2) + 1"]).unwrap();
        assert!(gcd(&fam[0], &fam[1]).is_constant());
    }

    #[test]
    fn bivariate_common_factor() {
        let a = p("(x - y)*(x^2 + y + 3)");
        let b = p("(x - y)*(x*y - 7)");
        assert_eq!(gcd(&a, &b), p("x - y"));
        let c = p("(x*y + 1)^2*(x + y)");
        let d = p("(x*y + 1)*(x - y)^2");
        assert_eq!(gcd(&c, &d), p("x*y + 1"));
    }

    #[test]
    fn mod_p_gcd_is_monic() {
        let a = p("x^3*y - 3*x^3 - 2*x + 3*y + 2").reduce_mod_p(5).unwrap();
        let b = p("y*(2*x - 11)").reduce_mod_p(5).unwrap();
        assert_eq!(gcd(&a, &b).lift().compact(), p("x + 2"));
        let a = p("x^3*y - 3*x^3 - 2*x + 3*y + 2").reduce_mod_p(271).unwrap();
        let b = p("y*(2*x - 11)").reduce_mod_p(271).unwrap();
        assert_eq!(gcd(&a, &b).lift().compact(), p("x + 130"));
    }

    #[test]
    fn gcd_with_zero() {
        assert_eq!(gcd(&p("0"), &p("-2*x")), p("2*x"));
        assert!(gcd(&p("0"), &p("0")).is_zero());
    }
}
