//! Resultants of univariate integer polynomials, by two independent routes.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::univariate::UniPoly;

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Sylvester matrix of `a` (degree m) and `b` (degree n): n shifted rows of
/// `a`'s coefficients followed by m shifted rows of `b`'s, highest degree first.
pub fn sylvester_matrix(a: &UniPoly, b: &UniPoly) -> Vec<Vec<BigInt>> {
    let m = a.deg();
    let n = b.deg();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in a.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in b.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant as the determinant of the Sylvester matrix.
pub fn resultant_sylvester(a: &UniPoly, b: &UniPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    if a.deg() == 0 && b.deg() == 0 {
        return BigInt::one();
    }
    determinant(sylvester_matrix(a, b))
}

/// Resultant via the subresultant pseudo-remainder sequence.
pub fn resultant_prs(a: &UniPoly, b: &UniPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = BigInt::one();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
    }
    let ca = a.content();
    let cb = b.content();
    let t = ca.pow(b.deg() as u32) * cb.pow(a.deg() as u32);
    a = UniPoly::new(a.coeffs().iter().map(|c| c / &ca).collect());
    b = UniPoly::new(b.coeffs().iter().map(|c| c / &cb).collect());
    if b.deg() == 0 {
        // b is the unit ±1 after removing its content
        return s * t * b.coeff(0).pow(a.deg() as u32);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (a.deg() - b.deg()) as u32;
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor = &g * h.pow(delta);
        b = UniPoly::new(r.coeffs().iter().map(|c| c / &divisor).collect());
        g = a.leading().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta) / h.pow(delta - 1),
        };
        if b.is_zero() {
            return BigInt::zero();
        }
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg() as u32;
    let lb = b.leading().unwrap();
    let h = if da == 0 { h } else { lb.pow(da) / h.pow(da - 1) };
    s * t * h
}

/// The resultant, computed by the remainder-sequence route; absolute value
/// is what the period and Bézout code consume.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> BigInt {
    resultant_prs(a, b)
}

/// `|Res(a, b)|`.
pub fn resultant_abs(a: &UniPoly, b: &UniPoly) -> BigInt {
    resultant(a, b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn small_resultants() {
        for route in [resultant_prs, resultant_sylvester] {
            assert_eq!(route(&u(&[0, 1]), &u(&[2, 1])), BigInt::from(2));
            assert_eq!(route(&u(&[-1, 1]), &u(&[1, 1])), BigInt::from(2));
            assert_eq!(route(&u(&[1, 0, 1]), &u(&[-2, 0, 1])), BigInt::from(9));
            assert_eq!(route(&u(&[-1, 0, 1]), &u(&[-1, 1])), BigInt::zero());
        }
    }

    #[test]
    fn routes_agree_with_constants_and_signs() {
        let cases = [
            (u(&[3]), u(&[1, 2, 3])),
            (u(&[1, 2, 3]), u(&[3])),
            (u(&[2, 0, 4]), u(&[6, 3])),
            (u(&[1, 1, 0, 5]), u(&[-2, 7, 1, 0, 2])),
            (u(&[25, 0, 0, -1]), u(&[11, 5])),
        ];
        for (a, b) in cases {
            assert_eq!(resultant_prs(&a, &b), resultant_sylvester(&a, &b), "{a} / {b}");
        }
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(3), BigInt::from(-1), BigInt::from(4)],
            vec![BigInt::from(5), BigInt::from(6), BigInt::from(0)],
        ];
        // 0*(0-24) - 2*(0-20) + 1*(18+5) = 63
        assert_eq!(determinant(m), BigInt::from(63));
    }
}
