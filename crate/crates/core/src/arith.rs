//! Integer utilities: primes, factorization, p-adic valuations and CRT.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Primes `p <= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin with the first 20 prime bases; exact below 2^64, probabilistic above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in primes_up_to(71) {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Trial division bound used before switching to Pollard rho.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

fn pollard_rho(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        let mut q = one.clone();
        let mut steps = 0u32;
        while d == one {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            q = (q * diff) % n;
            steps += 1;
            // batch gcds
            if steps.is_multiple_of(64) {
                d = q.gcd(n);
                if d.is_zero() {
                    d = n.clone();
                }
            }
            if q.is_zero() {
                d = n.clone();
            }
        }
        if &d != n {
            return Some(d);
        }
    }
    None
}

/// Prime factorization of `|n|` as `(prime, exponent)` pairs in ascending order.
///
/// Trial division up to [`TRIAL_DIVISION_BOUND`], then Pollard rho with a
/// step budget; exhausting it is a [`Error::Budget`] failure.
pub fn factor(n: &BigInt, rho_budget: u64) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::Precondition("cannot factor 0".into()));
    }
    let mut m = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, e: u32, out: &mut Vec<(BigInt, u32)>| {
        if let Some(entry) = out.iter_mut().find(|(q, _)| *q == p) {
            entry.1 += e;
        } else {
            out.push((p, e));
        }
    };
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            push(bp, e, &mut out);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    let mut budget = rho_budget;
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_probable_prime(&c) {
            push(c, 1, &mut out);
            continue;
        }
        let cu = c.to_biguint().expect("positive");
        let d = pollard_rho(&cu, &mut budget)
            .ok_or_else(|| Error::Budget(format!("factorization of {c} exceeded {rho_budget} rho steps")))?;
        let d = BigInt::from(d);
        let q = &c / &d;
        stack.push(d);
        stack.push(q);
    }
    out.sort();
    Ok(out)
}

/// Default Pollard-rho step budget.
pub const DEFAULT_RHO_BUDGET: u64 = 5_000_000;

/// Exponent of `p` in `n`; `u32::MAX` for `n = 0`.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let mut m = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}

/// Solves `x ≡ r_i (mod m_i)` for pairwise coprime positive moduli.
/// Returns `(x, M)` with `0 <= x < M = Π m_i`.
pub fn crt(residues: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, mi) in residues {
        if !mi.is_positive() {
            return Err(Error::Precondition(format!("CRT modulus {mi} must be positive")));
        }
        let eg = m.extended_gcd(mi);
        if !eg.gcd.is_one() {
            return Err(Error::Precondition(format!("CRT moduli {m} and {mi} are not coprime")));
        }
        // x + m·k ≡ r (mod mi)  ⇒  k ≡ (r − x)·m⁻¹
        let k = ((r - &x) * &eg.x).mod_floor(mi);
        x += &m * k;
        m *= mi;
        x = x.mod_floor(&m);
    }
    Ok((x, m))
}

/// Removes from `n` every prime factor it shares with `base`, without factoring either.
pub fn strip_common_primes(n: &BigInt, base: &BigInt) -> BigInt {
    let mut m = n.abs();
    if base.is_zero() {
        return BigInt::one();
    }
    loop {
        let g = m.gcd(base);
        if g.is_one() {
            return m;
        }
        while (&m % &g).is_zero() {
            m /= &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        let sieve = primes_up_to(10_000);
        for n in 0..10_000u64 {
            assert_eq!(is_prime_u64(n), sieve.binary_search(&n).is_ok(), "n = {n}");
        }
    }

    #[test]
    fn large_prime_checks() {
        assert!(is_prime_u64(1_000_000_007));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
        let m61 = (BigInt::one() << 61) - 1;
        let m89 = (BigInt::one() << 89) - 1;
        assert!(is_probable_prime(&m89));
        assert!(!is_probable_prime(&(&m61 * &m89)));
    }

    #[test]
    fn factor_products() {
        let n = BigInt::from(2u64.pow(5) * 3 * 271 * 271);
        assert_eq!(
            factor(&n, DEFAULT_RHO_BUDGET).unwrap(),
            vec![(BigInt::from(2), 5), (BigInt::from(3), 1), (BigInt::from(271), 2)]
        );
        let big = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64) * 12;
        let f = factor(&big, DEFAULT_RHO_BUDGET).unwrap();
        let back = f.iter().fold(BigInt::one(), |acc, (p, e)| acc * p.pow(*e));
        assert_eq!(back, big);
        assert!(f.iter().all(|(p, _)| is_probable_prime(p)));
    }

    #[test]
    fn crt_solution() {
        let (x, m) = crt(&[
            (BigInt::from(2), BigInt::from(3)),
            (BigInt::from(3), BigInt::from(5)),
            (BigInt::from(2), BigInt::from(7)),
        ])
        .unwrap();
        assert_eq!((x, m), (BigInt::from(23), BigInt::from(105)));
        assert!(crt(&[(BigInt::zero(), BigInt::from(4)), (BigInt::zero(), BigInt::from(6))]).is_err());
    }

    #[test]
    fn valuations_and_stripping() {
        assert_eq!(valuation(&BigInt::from(96), &BigInt::from(2)), 5);
        assert_eq!(valuation(&BigInt::from(7), &BigInt::from(2)), 0);
        assert_eq!(strip_common_primes(&BigInt::from(2 * 2 * 3 * 5 * 7), &BigInt::from(30)), BigInt::from(7));
    }
}
