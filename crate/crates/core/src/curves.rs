//! Valuations at the place at infinity of `y^2 = h(x)`, the trivializing
//! field `tau = 2y d/dx + h'(x) d/dy`, and the certificates built on them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, rank, solve, Rational};
use crate::rings::{CurveElement, CurveRing};

/// Order at infinity; `Infinity` is the order of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinity
    }

    /// Saturating shift by an integer.
    pub fn offset(self, k: i64) -> Self {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v + k),
            Valuation::Infinity => Valuation::Infinity,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "+inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinity => s.serialize_str("+inf"),
        }
    }
}

fn check_ring(f: &CurveElement, g: &CurveElement) -> Result<()> {
    if Arc::ptr_eq(f.ring(), g.ring()) || f.ring() == g.ring() {
        Ok(())
    } else {
        Err(Error::MixedRings)
    }
}

/// `ord x = -2`, `ord y = -(2g+1)`; the two parts of `a + b y` have orders
/// of different parity, so the smaller one decides.
pub fn ord_inf(e: &CurveElement) -> Valuation {
    let odd = e.ring().h_degree() as i64;
    let a = e.a().degree().map(|d| -2 * d as i64);
    let b = e.b().degree().map(|d| -2 * d as i64 - odd);
    match a.into_iter().chain(b).min() {
        Some(v) => Valuation::Finite(v),
        None => Valuation::Infinity,
    }
}

/// Coefficient of the monomial that realizes `ord_inf`.
pub fn leading_coefficient(e: &CurveElement) -> Option<Rational> {
    match ord_inf(e) {
        Valuation::Infinity => None,
        Valuation::Finite(v) if v % 2 == 0 => Some(e.a().leading()),
        Valuation::Finite(_) => Some(e.b().leading()),
    }
}

/// `tau(a + b y) = (2 h b' + h' b) + 2 a' y`
pub fn tau_apply(e: &CurveElement) -> CurveElement {
    let h = e.ring().h();
    let two = Rational::from_integer(2.into());
    let a = h
        .mul(&e.b().derivative())
        .scale(&two)
        .add(&h.derivative().mul(e.b()));
    let b = e.a().derivative().scale(&two);
    CurveElement::new(e.ring(), a, b)
}

/// Coefficient of `[f tau, g tau] = (f tau(g) - g tau(f)) tau`.
pub fn field_bracket(f: &CurveElement, g: &CurveElement) -> Result<CurveElement> {
    check_ring(f, g)?;
    Ok(f.mul(&tau_apply(g)).sub(&g.mul(&tau_apply(f))))
}

/// `tau` has order `2 - 2g`, so `ord(f tau) = 2 - 2g + ord f`.
pub fn ord_field(f: &CurveElement) -> Valuation {
    ord_inf(f).offset(2 - 2 * f.ring().genus() as i64)
}

/// `f tau` on the curve.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveField {
    pub coeff: CurveElement,
}

impl CurveField {
    pub fn new(coeff: CurveElement) -> Self {
        CurveField { coeff }
    }

    pub fn ord(&self) -> Valuation {
        ord_field(&self.coeff)
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        Ok(CurveField::new(field_bracket(&self.coeff, &other.coeff)?))
    }

    /// The field applied to a function.
    pub fn apply(&self, u: &CurveElement) -> Result<CurveElement> {
        check_ring(&self.coeff, u)?;
        Ok(self.coeff.mul(&tau_apply(u)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    BracketIsZero,
    OrderMismatch,
}

/// Certificate that `[f tau, g tau]` is not `tau`.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionCertificate {
    /// `lambda` and `f - lambda g` when the orders of `f` and `g` agree.
    pub lambda_step: Option<(Rational, CurveElement)>,
    pub ord_f: Valuation,
    pub ord_g: Valuation,
    /// Order of the bracket field, computed directly.
    pub ord_bracket: Valuation,
    pub ord_tau: Valuation,
    pub conclusion: Conclusion,
    pub bracket: CurveElement,
    /// Direct check that the bracket coefficient differs from `1`.
    pub bracket_is_not_tau: bool,
}

impl ObstructionCertificate {
    /// Orders after reduction satisfy the bracket order law and the bracket
    /// has a strictly worse pole than `tau`.
    pub fn is_consistent(&self) -> bool {
        let structural = match self.conclusion {
            Conclusion::BracketIsZero => self.bracket.is_zero() && self.ord_bracket.is_infinite(),
            Conclusion::OrderMismatch => {
                let tau = self.ord_tau.finite().unwrap_or(0);
                let predicted = (self.ord_f + self.ord_g).offset(2 * tau - 1);
                self.ord_f != self.ord_g
                    && self.ord_bracket == predicted
                    && self.ord_bracket < self.ord_tau
            }
        };
        structural && self.bracket_is_not_tau
    }
}

/// Builds the order-mismatch certificate for `[f tau, g tau]`. When `f` and
/// `g` have the same order, `f` is first replaced by `f - lambda g`, which
/// leaves the bracket unchanged and raises the order of `f`.
pub fn obstruction_certificate(
    f: &CurveElement,
    g: &CurveElement,
) -> Result<ObstructionCertificate> {
    let bracket = field_bracket(f, g)?;
    let genus = f.ring().genus() as i64;
    let ord_tau = Valuation::Finite(2 - 2 * genus);
    let bracket_is_not_tau = !bracket.sub(&CurveElement::one(f.ring())).is_zero();
    let ord_bracket = ord_field(&bracket);
    let mut f_red = f.clone();
    let mut lambda_step = None;
    if !f.is_zero() && !g.is_zero() && ord_inf(f) == ord_inf(g) {
        let lambda =
            leading_coefficient(f).expect("nonzero") / leading_coefficient(g).expect("nonzero");
        f_red = f.sub(&g.scale(&lambda));
        debug_assert!(f_red.is_zero() || ord_inf(&f_red) > ord_inf(g));
        lambda_step = Some((lambda, f_red.clone()));
    }
    let conclusion = if f_red.is_zero() || g.is_zero() {
        Conclusion::BracketIsZero
    } else {
        Conclusion::OrderMismatch
    };
    Ok(ObstructionCertificate {
        lambda_step,
        ord_f: ord_inf(&f_red),
        ord_g: ord_inf(g),
        ord_bracket,
        ord_tau,
        conclusion,
        bracket,
        bracket_is_not_tau,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Centralizer {
    /// `g = lambda f`
    Proportional(Rational),
    /// `f` and `g` are independent; carries the nonzero bracket coefficient.
    Independent(CurveElement),
}

/// Decides whether `g tau` lies in the centralizer `k f tau` of `f tau`.
pub fn centralizer_check(f: &CurveElement, g: &CurveElement) -> Result<Centralizer> {
    check_ring(f, g)?;
    let (Some(lf), Some(lg)) = (leading_coefficient(f), leading_coefficient(g)) else {
        return Err(Error::ZeroInput);
    };
    if f.scale(&lg) == g.scale(&lf) {
        Ok(Centralizer::Proportional(lg / lf))
    } else {
        Ok(Centralizer::Independent(field_bracket(f, g)?))
    }
}

/// Outcome of checking `[f tau, g tau] != lambda g tau`.
#[derive(Clone, Debug, PartialEq)]
pub struct NoEigen {
    pub holds: bool,
    pub bracket: CurveElement,
    /// Order bookkeeping, present when `ord f != ord g`.
    pub remark: Option<String>,
}

pub fn no_eigen_check(f: &CurveElement, g: &CurveElement, lambda: &Rational) -> Result<NoEigen> {
    check_ring(f, g)?;
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if lambda.is_zero() {
        return Err(Error::InvalidParameter("lambda must be nonzero".into()));
    }
    let bracket = field_bracket(f, g)?;
    let holds = bracket != g.scale(lambda);
    let remark = (!f.is_zero() && ord_inf(f) != ord_inf(g)).then(|| {
        format!(
            "ord(f tau) = {}, ord(g tau) = {}, ord([f tau, g tau]) = {} != ord(lambda g tau) = {}",
            ord_field(f),
            ord_field(g),
            ord_field(&bracket),
            ord_field(g)
        )
    });
    Ok(NoEigen {
        holds,
        bracket,
        remark,
    })
}

/// Outcome of solving `tau(F) = f`.
#[derive(Clone, Debug, PartialEq)]
pub enum TauSolution {
    Solved(CurveElement),
    /// Appending `f` to the image of the search basis raises the rank.
    NoSolution {
        rank: usize,
        augmented_rank: usize,
    },
}

impl TauSolution {
    pub fn solution(&self) -> Option<&CurveElement> {
        match self {
            TauSolution::Solved(f) => Some(f),
            TauSolution::NoSolution { .. } => None,
        }
    }
}

/// Nonconstant basis monomials `x^i` and `x^i y` with pole order at most
/// `max_pole`, plus the constant when `with_constant`.
fn monomials(ring: &Arc<CurveRing>, max_pole: i64, with_constant: bool) -> Vec<CurveElement> {
    let odd = ring.h_degree() as i64;
    let mut out = Vec::new();
    let start = if with_constant { 0 } else { 1 };
    if max_pole >= 0 {
        for i in start..=max_pole / 2 {
            out.push(CurveElement::basis(ring, i as usize, false));
        }
    }
    let mut i = 0i64;
    while 2 * i + odd <= max_pole {
        out.push(CurveElement::basis(ring, i as usize, true));
        i += 1;
    }
    out
}

fn coordinates(elems: &[&CurveElement]) -> Vec<Vec<Rational>> {
    let la = elems
        .iter()
        .filter_map(|e| e.a().degree())
        .max()
        .map_or(0, |d| d + 1);
    let lb = elems
        .iter()
        .filter_map(|e| e.b().degree())
        .max()
        .map_or(0, |d| d + 1);
    (0..la)
        .map(|i| elems.iter().map(|e| e.a().coeff(i)).collect())
        .chain((0..lb).map(|i| elems.iter().map(|e| e.b().coeff(i)).collect()))
        .collect()
}

fn pole(v: Valuation) -> i64 {
    -v.finite().unwrap_or(0)
}

/// Finds `F` with `tau(F) = f`. Since `tau` lowers the order of every
/// nonconstant function by exactly `2g - 1`, a solution has pole order
/// `pole(f) - (2g - 1)`, and the search basis is finite.
pub fn solve_tau_equation(f: &CurveElement) -> TauSolution {
    let ring = f.ring();
    if f.is_zero() {
        return TauSolution::Solved(CurveElement::zero(ring));
    }
    let drop = 2 * ring.genus() as i64 - 1;
    let basis = monomials(ring, pole(ord_inf(f)) - drop, false);
    let images: Vec<CurveElement> = basis.iter().map(tau_apply).collect();
    let mut refs: Vec<&CurveElement> = images.iter().collect();
    refs.push(f);
    let full = coordinates(&refs);
    let matrix: Vec<Vec<Rational>> = full
        .iter()
        .map(|row| row[..images.len()].to_vec())
        .collect();
    let rhs: Vec<Rational> = full.iter().map(|row| row[images.len()].clone()).collect();
    match solve(&matrix, &rhs) {
        Some(c) => {
            let sol = basis
                .iter()
                .zip(&c)
                .fold(CurveElement::zero(ring), |acc, (m, k)| acc.add(&m.scale(k)));
            TauSolution::Solved(sol)
        }
        None => TauSolution::NoSolution {
            rank: rank(matrix),
            augmented_rank: rank(full),
        },
    }
}

/// Dimension of the functions with pole order at most `max_pole` modulo the
/// image of `tau`.
pub fn coker_dimension(ring: &Arc<CurveRing>, max_pole: usize) -> usize {
    let max_pole = max_pole as i64;
    let space = monomials(ring, max_pole, true);
    let drop = 2 * ring.genus() as i64 - 1;
    let images: Vec<CurveElement> = monomials(ring, max_pole - drop, false)
        .iter()
        .map(tau_apply)
        .collect();
    if images.is_empty() {
        return space.len();
    }
    let refs: Vec<&CurveElement> = images.iter().collect();
    let cols = coordinates(&refs);
    space.len() - rank(transpose(cols))
}

fn transpose(m: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = m.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

impl fmt::Display for ObstructionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((l, r)) = &self.lambda_step {
            write!(f, "lambda = {}, f - lambda g = {}; ", format_rational(l), r)?;
        }
        write!(
            f,
            "{:?}: ord f = {}, ord g = {}, ord bracket = {}, ord tau = {}",
            self.conclusion, self.ord_f, self.ord_g, self.ord_bracket, self.ord_tau
        )
    }
}
