//! Sparse multivariate polynomials over the integers and over prime fields.
//!
//! Terms are kept in a map keyed by exponent vectors under graded
//! lexicographic order, so iteration, formatting and leading-term queries are
//! deterministic. Variable lists are always sorted by name; combining
//! polynomials over different variable lists first embeds both into the
//! sorted union.

mod format;
pub use format::SignedDisplay;
pub mod eval;
pub mod parse;
pub mod ring;
pub mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
pub use ring::{CoeffRing, Integers, PrimeField};

/// Exponent vector, one entry per ambient variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when every exponent of `other` is at most the matching one here.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the first variable dominates.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial degree. The zero polynomial has degree `MinusInfinity`, which
/// sorts below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::MinusInfinity => None,
        }
    }

    /// Finite degree or 0 for the zero polynomial; only for bounds where that is harmless.
    pub fn or_zero(self) -> u32 {
        self.finite().unwrap_or(0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse polynomial with coefficients in `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<R: CoeffRing> {
    ring: R,
    vars: Vec<String>,
    terms: BTreeMap<Monomial, R::Elem>,
}

/// Integer polynomial; the carrier for every input family.
pub type Polynomial = MPoly<Integers>;
/// Polynomial over Z/pZ.
pub type FpPolynomial = MPoly<PrimeField>;

fn is_sorted_unique(vars: &[String]) -> bool {
    vars.windows(2).all(|w| w[0] < w[1])
}

/// Sorted union of several variable lists.
pub fn union_vars<'a>(lists: impl IntoIterator<Item = &'a [String]>) -> Vec<String> {
    let mut all: Vec<String> = lists.into_iter().flatten().cloned().collect();
    all.sort();
    all.dedup();
    all
}

impl<R: CoeffRing> MPoly<R> {
    pub fn zero(ring: R, vars: Vec<String>) -> Self {
        let mut vars = vars;
        vars.sort();
        vars.dedup();
        MPoly { ring, vars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: R, vars: Vec<String>, c: R::Elem) -> Self {
        let mut p = Self::zero(ring, vars);
        let one = Monomial::one(p.vars.len());
        p.add_term(one, c);
        p
    }

    pub fn one(ring: R, vars: Vec<String>) -> Self {
        let c = ring.one();
        Self::constant(ring, vars, c)
    }

    /// The polynomial `name`; the variable is added to `vars` if absent.
    pub fn variable(ring: R, vars: Vec<String>, name: &str) -> Self {
        let mut vars = vars;
        if !vars.iter().any(|v| v == name) {
            vars.push(name.to_string());
        }
        let mut p = Self::zero(ring, vars);
        let idx = p.var_index(name).expect("variable present");
        let mut e = vec![0; p.vars.len()];
        e[idx] = 1;
        let one = p.ring.one();
        p.add_term(Monomial(e), one);
        p
    }

    /// Builds a polynomial from exponent vectors listed against `vars` in the given order.
    pub fn from_terms(
        ring: R,
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Vec<u32>, R::Elem)>,
    ) -> Self {
        let n = vars.len();
        if is_sorted_unique(&vars) {
            let mut p = MPoly { ring, vars, terms: BTreeMap::new() };
            for (e, c) in terms {
                assert_eq!(e.len(), n, "exponent vector length must match variable count");
                p.add_term(Monomial(e), c);
            }
            return p;
        }
        let target = union_vars([vars.as_slice()]);
        let map: Vec<usize> = vars
            .iter()
            .map(|v| target.binary_search(v).expect("variable in union"))
            .collect();
        let mut p = MPoly { ring, vars: target, terms: BTreeMap::new() };
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector length must match variable count");
            let mut ne = vec![0; p.vars.len()];
            for (i, &x) in e.iter().enumerate() {
                ne[map[i]] += x;
            }
            p.add_term(Monomial(ne), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.ring.add(existing, &c);
                if self.ring.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter().rev()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> R::Elem {
        self.coeff(&Monomial::one(self.nvars()))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&R::Elem> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::MinusInfinity, |m| Degree::Finite(m.total_degree()))
    }

    pub fn degree_in(&self, idx: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| m.0[idx])
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Variables with a positive exponent in some term, in sorted order.
    pub fn occurring_vars(&self) -> Vec<String> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .map(|i| self.vars[i].clone())
            .collect()
    }

    /// Re-expresses the polynomial over a larger sorted variable list.
    pub fn embed(&self, target: &[String]) -> Result<Self> {
        if target == self.vars.as_slice() {
            return Ok(self.clone());
        }
        let mut target_sorted = target.to_vec();
        target_sorted.sort();
        target_sorted.dedup();
        let map = self
            .vars
            .iter()
            .map(|v| target_sorted.binary_search(v))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| {
                Error::Precondition(format!(
                    "cannot embed polynomial over {:?} into variables {:?}",
                    self.vars, target_sorted
                ))
            })?;
        let n = target_sorted.len();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; n];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Ok(MPoly { ring: self.ring.clone(), vars: target_sorted, terms })
    }

    /// Drops variables that do not occur.
    pub fn compact(&self) -> Self {
        let keep: Vec<usize> = (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone()))
            .collect();
        MPoly { ring: self.ring.clone(), vars, terms }
    }

    /// Embeds every polynomial into the union of all variable lists.
    pub fn unify_all(polys: &[Self]) -> Vec<Self> {
        let target = union_vars(polys.iter().map(|p| p.vars.as_slice()));
        polys
            .iter()
            .map(|p| p.embed(&target).expect("union contains every list"))
            .collect()
    }

    fn unify_pair(&self, other: &Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let target = union_vars([self.vars.as_slice(), other.vars.as_slice()]);
        (
            self.embed(&target).expect("union"),
            other.embed(&target).expect("union"),
        )
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if self.vars != other.vars {
            let (a, b) = self.unify_pair(other);
            return a.add_impl(&b, negate);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let c = if negate { self.ring.neg(c) } else { c.clone() };
            out.add_term(m.clone(), c);
        }
        out
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.vars != other.vars {
            let (a, b) = self.unify_pair(other);
            return a.mul_impl(&b);
        }
        let mut out = Self::zero(self.ring.clone(), self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), self.ring.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.vars.clone());
        for (m, a) in &self.terms {
            out.add_term(m.clone(), self.ring.mul(a, c));
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect();
        MPoly { ring: self.ring.clone(), vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring.clone(), self.vars.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides out every coefficient by `c`, provided each division is exact.
    pub fn div_exact_scalar(&self, c: &R::Elem) -> Option<Self> {
        let mut out = Self::zero(self.ring.clone(), self.vars.clone());
        for (m, a) in &self.terms {
            out.add_term(m.clone(), self.ring.div_exact(a, c)?);
        }
        Some(out)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Leading-term division under graded-lex order; the remainder's leading
    /// monomial strictly decreases, so the loop terminates.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.vars != d.vars {
            let (a, b) = self.unify_pair(d);
            return a.div_exact(&b);
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        if d.num_terms() == 1 {
            let mut out = Self::zero(self.ring.clone(), self.vars.clone());
            for (m, c) in &self.terms {
                out.add_term(m.checked_div(&dm)?, self.ring.div_exact(c, &dc)?);
            }
            return Some(out);
        }
        let mut q = Self::zero(self.ring.clone(), self.vars.clone());
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading_term() {
            let m = rm.checked_div(&dm)?;
            let c = self.ring.div_exact(rc, &dc)?;
            for (tm, tc) in &d.terms {
                r.add_term(tm.mul(&m), self.ring.neg(&self.ring.mul(tc, &c)));
            }
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Evaluates at a point given in the order of [`MPoly::vars`].
    pub fn eval(&self, point: &[R::Elem]) -> Result<R::Elem> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: point.len() });
        }
        let mut cache: Vec<Vec<R::Elem>> = point.iter().map(|v| vec![self.ring.one(), v.clone()]).collect();
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = self.ring.mul(powers.last().unwrap(), &point[i]);
                    powers.push(next);
                }
                t = self.ring.mul(&t, &powers[e as usize]);
            }
            acc = self.ring.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for the i-th variable. All images must share one variable list,
    /// which becomes the variable list of the result.
    pub fn compose(&self, images: &[Self], out_vars: &[String]) -> Result<Self> {
        if images.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: images.len() });
        }
        let images: Vec<Self> = images.iter().map(|p| p.embed(out_vars)).collect::<Result<_>>()?;
        let out_vars = union_vars([out_vars]);
        let mut cache: Vec<Vec<Self>> = images
            .iter()
            .map(|p| vec![Self::one(self.ring.clone(), out_vars.clone()), p.clone()])
            .collect();
        let mut acc = Self::zero(self.ring.clone(), out_vars.clone());
        for (m, c) in &self.terms {
            let mut t = Self::constant(self.ring.clone(), out_vars.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &images[i];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Coefficients with respect to variable `idx`: entry `k` multiplies `x_idx^k`.
    /// The coefficient polynomials keep the full variable list with exponent 0 at `idx`.
    pub fn split_in(&self, idx: usize) -> Vec<Self> {
        let deg = self.degree_in(idx).finite().map_or(0, |d| d as usize + 1);
        let mut out = vec![Self::zero(self.ring.clone(), self.vars.clone()); deg];
        for (m, c) in &self.terms {
            let k = m.0[idx] as usize;
            let mut e = m.0.clone();
            e[idx] = 0;
            out[k].terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Inverse of [`MPoly::split_in`].
    pub fn join_in(idx: usize, coeffs: &[Self], ring: R, vars: Vec<String>) -> Self {
        let mut out = Self::zero(ring, vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut e = m.0.clone();
                e[idx] += k as u32;
                out.add_term(Monomial(e), a.clone());
            }
        }
        out
    }

    /// Multiplies by the unit that makes the leading coefficient normal
    /// (positive over Z, 1 over a field).
    pub fn normalize_unit(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let u = self.ring.normalizing_unit(lc);
                self.scale(&u)
            }
        }
    }
}

impl<R: CoeffRing> Add for &MPoly<R> {
    type Output = MPoly<R>;
    fn add(self, rhs: Self) -> MPoly<R> {
        self.add_impl(rhs, false)
    }
}

impl<R: CoeffRing> Sub for &MPoly<R> {
    type Output = MPoly<R>;
    fn sub(self, rhs: Self) -> MPoly<R> {
        self.add_impl(rhs, true)
    }
}

impl<R: CoeffRing> Mul for &MPoly<R> {
    type Output = MPoly<R>;
    fn mul(self, rhs: Self) -> MPoly<R> {
        self.mul_impl(rhs)
    }
}

impl<R: CoeffRing> Neg for &MPoly<R> {
    type Output = MPoly<R>;
    fn neg(self) -> MPoly<R> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.ring.neg(c))).collect();
        MPoly { ring: self.ring.clone(), vars: self.vars.clone(), terms }
    }
}

/// Which ring operation [`arith_op`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// Ring arithmetic on integer polynomials, unifying variable lists by name.
pub fn arith_op(lhs: &Polynomial, rhs: &Polynomial, kind: ArithKind) -> Polynomial {
    match kind {
        ArithKind::Add => lhs + rhs,
        ArithKind::Sub => lhs - rhs,
        ArithKind::Mul => lhs * rhs,
    }
}

/// Variable substitutions used to restrict a family to lines and planes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubstitutionScheme {
    /// `x ↦ t·a`, result in the single variable `t`.
    Line { direction: Vec<BigInt> },
    /// `x ↦ u·n + t·a`, result in the variables `t, u`.
    Affine { base: Vec<BigInt>, direction: Vec<BigInt> },
    /// `x ↦ x + c`.
    Translate { shift: Vec<BigInt> },
    /// Fixes the named variables to integer values; the others stay free.
    Partial { values: Vec<(String, BigInt)> },
}

pub const LINE_VAR: &str = "t";
pub const PLANE_VAR: &str = "u";

impl Polynomial {
    pub fn int_zero(vars: Vec<String>) -> Self {
        Self::zero(Integers, vars)
    }

    pub fn int_constant(vars: Vec<String>, c: impl Into<BigInt>) -> Self {
        Self::constant(Integers, vars, c.into())
    }

    pub fn int_var(vars: Vec<String>, name: &str) -> Self {
        Self::variable(Integers, vars, name)
    }

    pub fn from_i64_terms(vars: &[&str], terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            Integers,
            vars.iter().map(|s| s.to_string()).collect(),
            terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))),
        )
    }

    pub fn eval_i64(&self, point: &[i64]) -> Result<BigInt> {
        let pt: Vec<BigInt> = point.iter().map(|&v| BigInt::from(v)).collect();
        self.eval(&pt)
    }

    /// `(content, primitive part)` with non-negative content; `content(0) = (0, 0)`.
    pub fn content(&self) -> (BigInt, Polynomial) {
        let c = self.terms.values().fold(BigInt::zero(), |g, a| g.gcd(a));
        if c.is_zero() {
            return (c, self.clone());
        }
        let pp = self.div_exact_scalar(&c).expect("content divides every coefficient");
        (c, pp)
    }

    /// Primitive part with positive graded-lex leading coefficient.
    pub fn primitive_normalized(&self) -> Polynomial {
        self.content().1.normalize_unit()
    }

    pub fn reduce_mod_p(&self, p: u64) -> Result<FpPolynomial> {
        if !arith::is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(self.reduce_mod_p_unchecked(PrimeField::new(p)))
    }

    pub(crate) fn reduce_mod_p_unchecked(&self, field: PrimeField) -> FpPolynomial {
        let mut out = FpPolynomial::zero(field, self.vars.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), field.reduce_bigint(c));
        }
        out
    }

    pub fn substitute(&self, scheme: &SubstitutionScheme) -> Result<Polynomial> {
        let n = self.nvars();
        let check = |len: usize| {
            if len != n {
                Err(Error::DimensionMismatch { expected: n, found: len })
            } else {
                Ok(())
            }
        };
        match scheme {
            SubstitutionScheme::Line { direction } => {
                check(direction.len())?;
                let out = vec![LINE_VAR.to_string()];
                let t = Polynomial::int_var(out.clone(), LINE_VAR);
                let images: Vec<_> = direction.iter().map(|a| t.scale(a)).collect();
                self.compose(&images, &out)
            }
            SubstitutionScheme::Affine { base, direction } => {
                check(base.len())?;
                check(direction.len())?;
                let out = vec![LINE_VAR.to_string(), PLANE_VAR.to_string()];
                let t = Polynomial::int_var(out.clone(), LINE_VAR);
                let u = Polynomial::int_var(out.clone(), PLANE_VAR);
                let images: Vec<_> = base
                    .iter()
                    .zip(direction)
                    .map(|(b, a)| &u.scale(b) + &t.scale(a))
                    .collect();
                self.compose(&images, &out)
            }
            SubstitutionScheme::Translate { shift } => {
                check(shift.len())?;
                let out = self.vars.clone();
                let images: Vec<_> = self
                    .vars
                    .iter()
                    .zip(shift)
                    .map(|(v, c)| {
                        &Polynomial::int_var(out.clone(), v) + &Polynomial::int_constant(out.clone(), c.clone())
                    })
                    .collect();
                self.compose(&images, &out)
            }
            SubstitutionScheme::Partial { values } => {
                for (name, _) in values {
                    if self.var_index(name).is_none() {
                        return Err(Error::Precondition(format!("unknown variable {name}")));
                    }
                }
                let out: Vec<String> = self
                    .vars
                    .iter()
                    .filter(|v| !values.iter().any(|(name, _)| name == *v))
                    .cloned()
                    .collect();
                let images: Vec<_> = self
                    .vars
                    .iter()
                    .map(|v| match values.iter().find(|(name, _)| name == v) {
                        Some((_, c)) => Polynomial::int_constant(out.clone(), c.clone()),
                        None => Polynomial::int_var(out.clone(), v),
                    })
                    .collect();
                self.compose(&images, &out)
            }
        }
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

impl FpPolynomial {
    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    /// Evaluates at an integer point, reducing coordinates modulo p first.
    pub fn eval_residues(&self, point: &[u64]) -> Result<u64> {
        self.eval(point)
    }

    /// Canonical lift to integer coefficients in `[0, p)`.
    pub fn lift(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), BigInt::from(*c))).collect();
        MPoly { ring: Integers, vars: self.vars.clone(), terms }
    }

    /// Monic normalization under graded-lex order.
    pub fn monic(&self) -> FpPolynomial {
        self.normalize_unit()
    }
}

impl<R: CoeffRing> fmt::Display for MPoly<R>
where
    R: SignedDisplay,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format::write_poly(self, f)
    }
}

/// Integer gcd of several values, normalized non-negative; `gcd() = gcd(0,…,0) = 0`.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}
