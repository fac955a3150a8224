//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] lives in a [`VariableSpace`], an ordered list of named
//! variables each of which is either affine (exponents `>= 0`) or Laurent
//! (any integer exponent). Terms are kept in a `BTreeMap` keyed by exponent
//! vector, so the representation is canonical and equality is structural.

mod linalg;
mod parse;
mod univariate;

pub use linalg::{rank, solve, RowReduced};
pub use parse::{parse_expr, Evaluator, Expr, PolyEval};
pub use univariate::UniPoly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact scalars. Always reduced, denominator positive.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    Affine,
    Laurent,
}

/// Ordered, duplicate-free list of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableSpace {
    vars: Vec<(String, VarKind)>,
}

impl VariableSpace {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, VarKind)>) -> Result<Arc<Self>> {
        let mut out: Vec<(String, VarKind)> = Vec::new();
        for (name, kind) in vars {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(Error::Syntax(format!("invalid variable name `{name}`")));
            }
            if out.iter().any(|(n, _)| *n == name) {
                return Err(Error::DuplicateVariable(name));
            }
            out.push((name, kind));
        }
        Ok(Arc::new(VariableSpace { vars: out }))
    }

    /// Space of affine variables with the given names.
    ///
    /// Panics on duplicate or malformed names; intended for literals.
    pub fn affine(names: &[&str]) -> Arc<Self> {
        Self::new(names.iter().map(|n| (*n, VarKind::Affine))).expect("valid affine space")
    }

    pub fn laurent(names: &[&str]) -> Arc<Self> {
        Self::new(names.iter().map(|n| (*n, VarKind::Laurent))).expect("valid laurent space")
    }

    /// Parses a signature such as `"a:2,t:1"` into `x1, x2` (affine) and
    /// `t1` (Laurent). Explicit names are accepted too: `"x:a,t:t"`.
    pub fn from_signature(sig: &str) -> Result<Arc<Self>> {
        let mut vars = Vec::new();
        let mut affine_count = 0;
        let mut laurent_count = 0;
        for part in sig.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (left, right) = part
                .split_once(':')
                .ok_or_else(|| Error::Syntax(format!("bad space entry `{part}`")))?;
            let (left, right) = (left.trim(), right.trim());
            match (left, right.parse::<usize>()) {
                ("a", Ok(n)) => {
                    for _ in 0..n {
                        affine_count += 1;
                        vars.push((format!("x{affine_count}"), VarKind::Affine));
                    }
                }
                ("t", Ok(n)) => {
                    for _ in 0..n {
                        laurent_count += 1;
                        vars.push((format!("t{laurent_count}"), VarKind::Laurent));
                    }
                }
                (name, Err(_)) => {
                    let kind = match right {
                        "a" | "affine" => VarKind::Affine,
                        "t" | "laurent" => VarKind::Laurent,
                        _ => return Err(Error::Syntax(format!("bad variable kind `{right}`"))),
                    };
                    vars.push((name.to_string(), kind));
                }
                _ => return Err(Error::Syntax(format!("bad space entry `{part}`"))),
            }
        }
        if vars.is_empty() {
            return Err(Error::Syntax("empty variable space".into()));
        }
        Self::new(vars)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].0
    }

    pub fn kind(&self, i: usize) -> VarKind {
        self.vars[i].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|(n, _)| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, VarKind)> {
        self.vars.iter().map(|(n, k)| (n.as_str(), *k))
    }

    pub fn signature(&self) -> String {
        self.vars
            .iter()
            .map(|(n, k)| match k {
                VarKind::Affine => format!("{n}:a"),
                VarKind::Laurent => format!("{n}:t"),
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub type Exponents = Vec<i32>;

/// Sparse Laurent polynomial over a fixed variable space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    space: Arc<VariableSpace>,
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero(space: &Arc<VariableSpace>) -> Self {
        Polynomial {
            space: Arc::clone(space),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &Arc<VariableSpace>, c: Rational) -> Self {
        let mut p = Self::zero(space);
        if !c.is_zero() {
            p.terms.insert(vec![0; space.len()], c);
        }
        p
    }

    pub fn one(space: &Arc<VariableSpace>) -> Self {
        Self::constant(space, Rational::one())
    }

    pub fn var(space: &Arc<VariableSpace>, name: &str) -> Result<Self> {
        let i = space.require(name)?;
        let mut e = vec![0; space.len()];
        e[i] = 1;
        Self::monomial(space, e, Rational::one())
    }

    /// Single term `coeff * x^exps`; checks affine exponents.
    pub fn monomial(space: &Arc<VariableSpace>, exps: Exponents, coeff: Rational) -> Result<Self> {
        if exps.len() != space.len() {
            return Err(Error::MixedSpaces);
        }
        for (i, &e) in exps.iter().enumerate() {
            if e < 0 && space.kind(i) == VarKind::Affine {
                return Err(Error::NegativeExponentOnAffineVar(
                    space.name(i).to_string(),
                ));
            }
        }
        let mut p = Self::zero(space);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        Ok(p)
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, merging
    /// repeated exponents.
    pub fn from_terms(
        space: &Arc<VariableSpace>,
        terms: impl IntoIterator<Item = (Exponents, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(space);
        for (e, c) in terms {
            let m = Self::monomial(space, e, c)?;
            p.add_assign_terms(m.terms);
        }
        Ok(p)
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exponents, Rational> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&vec![0; self.space.len()])
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Returns the scalar if the polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree (sum of exponents) of the highest term; `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).sum())
            .max()
    }

    /// Highest exponent of variable `i`; `None` for zero.
    pub fn degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn min_degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    /// Indices of variables that occur with a nonzero exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.space.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] != 0))
            .collect()
    }

    fn add_assign_terms(&mut self, terms: BTreeMap<Exponents, Rational>) {
        for (e, c) in terms {
            add_term(&mut self.terms, e, c);
        }
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(Error::MixedSpaces)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            add_term(&mut out.terms, e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            add_term(&mut out.terms, e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut out = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                add_term(&mut out, e, c1 * c2);
            }
        }
        Ok(Polynomial {
            space: Arc::clone(&self.space),
            terms: out,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.space);
        }
        Polynomial {
            space: Arc::clone(&self.space),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift` (Laurent exponents allowed where
    /// the space permits them).
    pub fn shift(&self, shift: &[i32]) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()));
        Self::from_terms(&self.space, terms)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.space);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The single term as `(exponents, coefficient)` if this is a nonzero
    /// monomial.
    pub fn as_monomial(&self) -> Option<(&Exponents, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Multiplicative inverse, defined for monomials whose negated exponents
    /// are admissible in the space.
    pub fn inverse(&self) -> Result<Self> {
        let (e, c) = self
            .as_monomial()
            .ok_or_else(|| Error::NotInvertible(self.to_string()))?;
        Self::monomial(&self.space, e.iter().map(|x| -x).collect(), c.recip())
    }

    /// Integer power, negative exponents through [`Polynomial::inverse`].
    pub fn powi(&self, n: i64) -> Result<Self> {
        let mag = u32::try_from(n.unsigned_abs())
            .map_err(|_| Error::Syntax(format!("exponent {n} out of range")))?;
        if n >= 0 {
            Ok(self.pow(mag))
        } else {
            Ok(self.inverse()?.pow(mag))
        }
    }

    pub fn partial(&self, var: &str) -> Result<Self> {
        Ok(self.partial_idx(self.space.require(var)?))
    }

    pub fn partial_idx(&self, i: usize) -> Self {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                add_term(&mut out, e2, c * int(e[i] as i64));
            }
        }
        Polynomial {
            space: Arc::clone(&self.space),
            terms: out,
        }
    }

    /// Term-wise antiderivative with no constant of integration in `var`.
    pub fn antiderivative(&self, var: &str) -> Result<Self> {
        self.antiderivative_idx(self.space.require(var)?)
    }

    pub fn antiderivative_idx(&self, i: usize) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == -1 {
                return Err(Error::NonIntegrable(self.space.name(i).to_string()));
            }
            let mut e2 = e.clone();
            e2[i] += 1;
            add_term(&mut out, e2, c / int(e[i] as i64 + 1));
        }
        Ok(Polynomial {
            space: Arc::clone(&self.space),
            terms: out,
        })
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    /// Variables absent from `target` must not occur.
    pub fn embed(&self, target: &Arc<VariableSpace>) -> Result<Self> {
        if Arc::ptr_eq(&self.space, target) || *self.space == **target {
            return Ok(Polynomial {
                space: Arc::clone(target),
                terms: self.terms.clone(),
            });
        }
        let map = self.name_map(target, None)?;
        let terms = self.terms.iter().map(|(e, c)| {
            let mut out = vec![0; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    out[j] += x;
                }
            }
            (out, c.clone())
        });
        Self::from_terms(target, terms)
    }

    fn name_map(&self, target: &VariableSpace, skip: Option<usize>) -> Result<Vec<Option<usize>>> {
        let used = self.support_vars();
        (0..self.space.len())
            .map(|i| {
                if Some(i) == skip {
                    return Ok(None);
                }
                match target.index_of(self.space.name(i)) {
                    Some(j) => Ok(Some(j)),
                    None if !used.contains(&i) => Ok(None),
                    None => Err(Error::UnknownVariable(self.space.name(i).to_string())),
                }
            })
            .collect()
    }

    /// Replaces `var` by `q`. The result lives in `q`'s space; the remaining
    /// variables of `self` are carried over by name.
    pub fn substitute(&self, var: &str, q: &Polynomial) -> Result<Self> {
        let v = self.space.require(var)?;
        let target = q.space();
        let map = self.name_map(target, Some(v))?;
        let min_e = self.min_degree_in(v).unwrap_or(0);
        let max_e = self.degree_in(v).unwrap_or(0);
        let q_inv = if min_e < 0 {
            Some(q.inverse().map_err(|_| Error::NonInvertibleSubstitution)?)
        } else {
            None
        };
        // powers of q by exponent, computed once
        let mut powers: BTreeMap<i32, Polynomial> = BTreeMap::new();
        for e in min_e.min(0)..=max_e.max(0) {
            let pw = if e >= 0 {
                q.pow(e as u32)
            } else {
                q_inv.as_ref().unwrap().pow((-e) as u32)
            };
            powers.insert(e, pw);
        }
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut rest = vec![0; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    rest[j] += x;
                }
            }
            let mono = Polynomial::monomial(target, rest, c.clone())
                .map_err(|_| Error::NonInvertibleSubstitution)?;
            out = &out + &(&mono * &powers[&e[v]]);
        }
        Ok(out)
    }

    /// Evaluates every variable at a rational point (Laurent variables must
    /// not be evaluated at zero when they carry negative exponents).
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k < 0 {
                    if x.is_zero() {
                        return None;
                    }
                    t *= num_traits::pow(x.recip(), (-k) as usize);
                } else {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Coefficients of the powers of variable `i`: maps `k` to the
    /// polynomial `c_k` (with variable `i` absent) such that
    /// `self = sum_k c_k * x_i^k`.
    pub fn collect_in(&self, i: usize) -> BTreeMap<i32, Polynomial> {
        let mut out: BTreeMap<i32, Polynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            let entry = out
                .entry(k)
                .or_insert_with(|| Polynomial::zero(&self.space));
            add_term(&mut entry.terms, e2, c.clone());
        }
        out
    }

    /// Parses text in the shared grammar over `space`.
    pub fn parse(text: &str, space: &Arc<VariableSpace>) -> Result<Self> {
        parse_expr(text)?.to_polynomial(space)
    }

    /// Maximum absolute value of the numerators and denominators of the
    /// coefficients; used to keep random samples bounded.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .flat_map(|c| [c.numer().abs(), c.denom().abs()])
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

pub(crate) fn add_term(terms: &mut BTreeMap<Exponents, Rational>, e: Exponents, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for &Polynomial {
            type Output = Polynomial;
            /// Panics if the operands live in different spaces; use the
            /// `try_` variant to get an error instead.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$try(rhs)
                    .expect("polynomial operands in different variable spaces")
            }
        }
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            space: Arc::clone(&self.space),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn format_monomial(space: &VariableSpace, e: &[i32]) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| {
            if k == 1 {
                space.name(i).to_string()
            } else {
                format!("{}^{}", space.name(i), k)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Polynomial {
    /// Highest term first: `3*x^2*y^-1 + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(&self.space, e);
            if mono.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), mono)?;
            }
        }
        Ok(())
    }
}

/// Whether a univariate polynomial in an affine variable has no repeated
/// root, decided by an exact Euclidean gcd with its derivative.
pub fn squarefree_check(p: &Polynomial) -> Result<bool> {
    let u = UniPoly::from_polynomial(p)?;
    if u.is_zero() {
        return Ok(false);
    }
    Ok(u.gcd(&u.derivative()).degree() == Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<VariableSpace> {
        VariableSpace::new([("x", VarKind::Affine), ("y", VarKind::Laurent)]).unwrap()
    }

    #[test]
    fn cancellation_and_rational_products() {
        let s = VariableSpace::affine(&["x"]);
        let a = Polynomial::parse("x + 1", &s).unwrap();
        let b = Polynomial::parse("x - 1", &s).unwrap();
        assert_eq!(&a + &b, Polynomial::parse("2*x", &s).unwrap());
        let c = Polynomial::parse("1/2*x", &s).unwrap() * Polynomial::parse("2/3*x", &s).unwrap();
        assert_eq!(c, Polynomial::parse("1/3*x^2", &s).unwrap());
    }

    #[test]
    fn laurent_inverse_multiplies_to_one() {
        let s = VariableSpace::laurent(&["x"]);
        let x = Polynomial::var(&s, "x").unwrap();
        assert_eq!(&x * &x.inverse().unwrap(), Polynomial::one(&s));
    }

    #[test]
    fn mixed_spaces_rejected() {
        let a = Polynomial::one(&VariableSpace::affine(&["x"]));
        let b = Polynomial::one(&VariableSpace::affine(&["y"]));
        assert_eq!(a.try_add(&b), Err(Error::MixedSpaces));
        assert_eq!(a.try_mul(&b), Err(Error::MixedSpaces));
    }

    #[test]
    fn derivatives() {
        let s = VariableSpace::new([("x", VarKind::Laurent), ("z", VarKind::Affine)]).unwrap();
        let d = |t: &str, v: &str| Polynomial::parse(t, &s).unwrap().partial(v).unwrap();
        assert_eq!(d("x^3", "x"), Polynomial::parse("3*x^2", &s).unwrap());
        assert_eq!(d("x^-1", "x"), Polynomial::parse("-x^-2", &s).unwrap());
        assert_eq!(d("z^2 - 1", "z"), Polynomial::parse("2*z", &s).unwrap());
        assert_eq!(
            Polynomial::one(&s).partial("w"),
            Err(Error::UnknownVariable("w".into()))
        );
    }

    #[test]
    fn antiderivatives() {
        let s = VariableSpace::laurent(&["x"]);
        let i = |t: &str| Polynomial::parse(t, &s).unwrap().antiderivative("x");
        assert_eq!(i("x^2").unwrap(), Polynomial::parse("1/3*x^3", &s).unwrap());
        assert_eq!(i("x^-2").unwrap(), Polynomial::parse("-x^-1", &s).unwrap());
        assert_eq!(i("x^-1"), Err(Error::NonIntegrable("x".into())));
    }

    #[test]
    fn substitution() {
        let s = VariableSpace::affine(&["x", "y"]);
        let t = VariableSpace::affine(&["x", "z"]);
        let p = Polynomial::parse("x*y", &s).unwrap();
        let z = Polynomial::var(&t, "z").unwrap();
        assert_eq!(
            p.substitute("y", &z).unwrap(),
            Polynomial::parse("x*z", &t).unwrap()
        );

        let loc = VariableSpace::new([("x", VarKind::Laurent), ("z", VarKind::Affine)]).unwrap();
        let y2 = Polynomial::parse("y^2", &s).unwrap();
        let img = Polynomial::parse("(z^2 - 1)*x^-1", &loc).unwrap();
        assert_eq!(
            y2.substitute("y", &img).unwrap(),
            Polynomial::parse("(z^2-1)^2*x^-2", &loc).unwrap()
        );

        let l = VariableSpace::new([("x", VarKind::Laurent), ("z", VarKind::Affine)]).unwrap();
        let inv = Polynomial::parse("x^-1", &l).unwrap();
        let zp1 = Polynomial::parse("z + 1", &l).unwrap();
        assert_eq!(
            inv.substitute("x", &zp1),
            Err(Error::NonInvertibleSubstitution)
        );
    }

    #[test]
    fn squarefree() {
        let s = VariableSpace::affine(&["z"]);
        let sf = |t: &str| squarefree_check(&Polynomial::parse(t, &s).unwrap()).unwrap();
        assert!(sf("z^2 - 1"));
        assert!(!sf("z^2"));
        assert!(sf("z^3 - 1"));
        assert!(!sf("(z-1)^2*(z+2)"));
        let two = VariableSpace::affine(&["x", "y"]);
        assert_eq!(
            squarefree_check(&Polynomial::parse("x*y", &two).unwrap()),
            Err(Error::NotUnivariate)
        );
    }

    #[test]
    fn parse_and_format() {
        let s = xy();
        let p = Polynomial::parse("3*x^2*y^-1 + 1/2", &s).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.to_string(), "3*x^2*y^-1 + 1/2");
        assert_eq!(
            Polynomial::parse("x^-1", &s),
            Err(Error::NegativeExponentOnAffineVar("x".into()))
        );
        assert_eq!(Polynomial::parse("x + x", &s).unwrap().to_string(), "2*x");
        assert_eq!(
            Polynomial::parse("-x + 1/2*y - 3", &s).unwrap().to_string(),
            "-x + 1/2*y - 3"
        );
        assert!(matches!(
            Polynomial::parse("x +", &s),
            Err(Error::Syntax(_))
        ));
        assert!(matches!(
            Polynomial::parse("q", &s),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn signatures() {
        let s = VariableSpace::from_signature("a:2,t:1").unwrap();
        assert_eq!(s.signature(), "x1:a,x2:a,t1:t");
        let n = VariableSpace::from_signature("x:a,t:t").unwrap();
        assert_eq!(n.kind(1), VarKind::Laurent);
        assert!(VariableSpace::new([("x", VarKind::Affine), ("x", VarKind::Affine)]).is_err());
    }
}
