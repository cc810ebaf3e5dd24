//! `find_factor` against a brute-force reducibility oracle for degree ≤ 4.
//!
//! The oracle looks for rational roots by scanning divisors and for
//! quadratic factors `(a x² + b x + c)(d x² + e x + g)` by solving for b and e
//! from the x³ and x² coefficients.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use valgcd_core::hilbert::find_factor;
use valgcd_core::poly::univariate::UniPoly;

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).flat_map(|d| [d, -d]).collect()
}

fn has_rational_root(c: &[i64]) -> bool {
    let (a0, lead) = (c[0], *c.last().unwrap());
    if a0 == 0 {
        return true;
    }
    for p in divisors(a0) {
        for q in divisors(lead).into_iter().filter(|q| *q > 0) {
            // q^deg · f(p/q)
            let deg = c.len() - 1;
            let mut acc = BigInt::zero();
            for (i, ci) in c.iter().enumerate() {
                acc += BigInt::from(*ci) * BigInt::from(p).pow(i as u32) * BigInt::from(q).pow((deg - i) as u32);
            }
            if acc.is_zero() {
                return true;
            }
        }
    }
    false
}

fn has_quadratic_factor(c: &[i64]) -> bool {
    if c.len() != 5 {
        return false;
    }
    let (f0, f2, f3, f4) = (c[0], c[2], c[3], c[4]);
    for a in divisors(f4).into_iter().filter(|a| *a > 0) {
        let d = f4 / a;
        for cc in divisors(f0) {
            let g = f0 / cc;
            // a·e + b·d = f3 and a·g + b·e + c·d = f2, so d·b² − f3·b + a·K = 0
            let k = f2 - a * g - cc * d;
            let disc = f3 * f3 - 4 * d * a * k;
            if disc < 0 {
                continue;
            }
            let s = disc.sqrt();
            if s * s != disc {
                continue;
            }
            for num in [f3 + s, f3 - s] {
                if num % (2 * d) != 0 {
                    continue;
                }
                let b = num / (2 * d);
                if (f3 - b * d) % a != 0 {
                    continue;
                }
                let e = (f3 - b * d) / a;
                let prod = UniPoly::from_i64(&[cc, b, a]).mul(&UniPoly::from_i64(&[g, e, d]));
                if prod == UniPoly::from_i64(c) {
                    return true;
                }
            }
        }
    }
    false
}

fn oracle_reducible(c: &[i64]) -> bool {
    c.len() > 2 && (has_rational_root(c) || has_quadratic_factor(c))
}

fn check(c: &[i64]) {
    let f = UniPoly::from_i64(c);
    if f.deg() < 1 || !f.content().is_one() {
        return;
    }
    let found = find_factor(&f).unwrap();
    assert_eq!(found.is_some(), oracle_reducible(c), "disagreement on {f}");
    if let Some(h) = found {
        assert!(h.deg() >= 1 && h.deg() < f.deg(), "factor {h} of {f} has the wrong degree");
        assert!(f.div_exact(&h).is_some(), "{h} does not divide {f}");
    }
}

#[test]
fn every_small_quartic_and_cubic() {
    let r = -2..=2i64;
    for c0 in r.clone() {
        for c1 in r.clone() {
            for c2 in r.clone() {
                for c3 in r.clone() {
                    for c4 in [-2i64, -1, 1, 2] {
                        check(&[c0, c1, c2, c3, c4]);
                    }
                    if c3 != 0 {
                        check(&[c0, c1, c2, c3]);
                    }
                }
            }
        }
    }
}

#[test]
fn products_of_random_quadratics() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..400 {
        let mut q = || -> Vec<i64> { vec![rng.gen_range(-9..=9), rng.gen_range(-9..=9), rng.gen_range(1..=5)] };
        let (a, b) = (q(), q());
        let f = UniPoly::from_i64(&a).mul(&UniPoly::from_i64(&b)).primitive();
        let c: Vec<i64> = f.coeffs().iter().map(|x| x.try_into().unwrap()).collect();
        check(&c);
        assert!(oracle_reducible(&c));
    }
}

#[test]
fn random_quartics_with_larger_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let mut c: Vec<i64> = (0..5).map(|_| rng.gen_range(-40..=40)).collect();
        if c[4] == 0 {
            c[4] = 1;
        }
        let g = c.iter().fold(0i64, |g, x| g.gcd(x));
        let c: Vec<i64> = c.iter().map(|x| x / g).collect();
        check(&c);
    }
}
