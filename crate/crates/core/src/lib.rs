//! Gcds of values of integer polynomials.
//!
//! For integer polynomials `P_1, …, P_s` in `r` variables this crate studies
//! the set of values `d_n = gcd(P_1(n), …, P_s(n))` over integer points `n`:
//! enumeration over boxes, one-variable periods, witnesses showing the set is
//! closed under gcd and lcm, densities of points with coprime values, value
//! based coprimality criteria, reduction modulo primes, and integer
//! specializations of polynomials in an extra variable.
//!
//! Every routine that claims a point attains a value re-checks the claim by
//! direct evaluation before returning it.

pub mod algebra;
pub mod arith;
pub mod criteria;
pub mod density;
pub mod error;
pub mod gcdset;
pub mod grid;
pub mod hilbert;
pub mod poly;
pub mod serde_big;

pub use error::{Error, ErrorKind, Result};
pub use poly::parse::{parse_family, parse_in, parse_polynomial};
pub use poly::{Degree, FpPolynomial, Monomial, Polynomial, SubstitutionScheme};
