//! The symplectic torus `(x, y)` with `{x^k y^l, x^m y^n} = (kn - lm) x^{k+m} y^{l+n}`.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, int, Polynomial, Rational, VariableSpace};

/// `k[x^{±1}, y^{±1}]`
pub fn torus_space() -> Arc<VariableSpace> {
    VariableSpace::laurent(&["x", "y"])
}

fn check_torus(f: &Polynomial) -> Result<()> {
    if f.space().as_ref() == torus_space().as_ref() {
        Ok(())
    } else {
        Err(Error::MixedSpaces)
    }
}

fn mono(space: &Arc<VariableSpace>, m: i32, n: i32, c: Rational) -> Polynomial {
    Polynomial::monomial(space, vec![m, n], c).expect("laurent exponents")
}

/// Poisson bracket on the torus, bilinear extension of the monomial rule.
pub fn pb_torus(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    check_torus(f)?;
    check_torus(g)?;
    let mut terms = Vec::new();
    for (e, a) in f.terms() {
        for (d, b) in g.terms() {
            let w = e[0] as i64 * d[1] as i64 - e[1] as i64 * d[0] as i64;
            if w != 0 {
                terms.push((vec![e[0] + d[0], e[1] + d[1]], a * b * int(w)));
            }
        }
    }
    Polynomial::from_terms(f.space(), terms)
}

/// `f = {x^k y^l, g}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusWidthOne {
    pub k: i32,
    pub l: i32,
    pub g: Polynomial,
}

impl TorusWidthOne {
    pub fn left(&self) -> Polynomial {
        mono(self.g.space(), self.k, self.l, Rational::one())
    }

    pub fn replay(&self) -> Result<Polynomial> {
        pb_torus(&self.left(), &self.g)
    }
}

fn check_reducible(f: &Polynomial) -> Result<()> {
    check_torus(f)?;
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    Ok(())
}

/// Candidate exponent pairs by increasing `|k| + |l|`, `k` descending,
/// positive `l` before negative.
fn exponent_pairs() -> impl Iterator<Item = (i32, i32)> {
    (1i32..).flat_map(|s| {
        (-s..=s).rev().flat_map(move |k| {
            let l = s - k.abs();
            let first = std::iter::once((k, l));
            let second = (l != 0).then_some((k, -l));
            first.chain(second)
        })
    })
}

/// Writes `f` as a single bracket `{x^k y^l, g}`.
pub fn width1_torus(f: &Polynomial) -> Result<TorusWidthOne> {
    check_reducible(f)?;
    let exps: Vec<(i64, i64)> = f
        .terms()
        .keys()
        .map(|e| (e[0] as i64, e[1] as i64))
        .collect();
    let (k, l) = exponent_pairs()
        .find(|&(k, l)| exps.iter().all(|&(a, b)| k as i64 * b - l as i64 * a != 0))
        .expect("finitely many excluded directions");
    let mut terms = Vec::new();
    for (e, c) in f.terms() {
        let w = k as i64 * e[1] as i64 - l as i64 * e[0] as i64;
        terms.push((vec![e[0] - k, e[1] - l], c / int(w)));
    }
    Ok(TorusWidthOne {
        k,
        l,
        g: Polynomial::from_terms(f.space(), terms)?,
    })
}

/// `result = scalar * {partner, previous}`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub partner: Polynomial,
    pub scalar: Rational,
    pub result: Polynomial,
}

/// Step record with every entry rendered in the polynomial grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStepRecord {
    pub partner: String,
    pub scalar: String,
    pub result: String,
}

/// Chain of brackets carrying `start` into the Lie ideal member `c * x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionChain {
    pub start: Polynomial,
    pub steps: Vec<ReductionStep>,
}

impl ReductionChain {
    pub fn last(&self) -> &Polynomial {
        self.steps.last().map(|s| &s.result).unwrap_or(&self.start)
    }

    /// Recomputes every step and checks the endpoint is a nonzero multiple of `x`.
    pub fn replay(&self) -> Result<bool> {
        let mut cur = self.start.clone();
        for s in &self.steps {
            let next = pb_torus(&s.partner, &cur)?.scale(&s.scalar);
            if next != s.result {
                return Ok(false);
            }
            cur = next;
        }
        Ok(is_multiple_of_x(&cur))
    }

    pub fn records(&self) -> Vec<ReductionStepRecord> {
        self.steps
            .iter()
            .map(|s| ReductionStepRecord {
                partner: s.partner.to_string(),
                scalar: format_rational(&s.scalar),
                result: s.result.to_string(),
            })
            .collect()
    }
}

fn is_multiple_of_x(f: &Polynomial) -> bool {
    matches!(f.as_monomial(), Some((e, c)) if e[..] == [1, 0] && !c.is_zero())
}

/// Builds a reduction chain from `f` to a multiple of `x`. Each bracket
/// with the monomial of one summand annihilates every summand parallel to
/// it; a single monomial `x^m y^n` is then walked to `x` through the
/// partners `y^{1-n}`, `x^{1-m}`, `y^-1`.
pub fn ideal_reduction_torus(f: &Polynomial) -> Result<ReductionChain> {
    check_reducible(f)?;
    let space = f.space().clone();
    let cap = 10 * f.num_terms() + 20;
    let mut chain = ReductionChain {
        start: f.clone(),
        steps: Vec::new(),
    };
    let mut cur = f.clone();
    let push =
        |chain: &mut ReductionChain, cur: &mut Polynomial, partner: Polynomial| -> Result<()> {
            if chain.steps.len() >= cap {
                return Err(Error::IncompleteReduction(cap));
            }
            let result = pb_torus(&partner, cur)?;
            debug_assert!(!result.is_zero());
            chain.steps.push(ReductionStep {
                partner,
                scalar: Rational::one(),
                result: result.clone(),
            });
            *cur = result;
            Ok(())
        };
    while cur.num_terms() > 1 {
        let (e0, _) = cur.terms().iter().next_back().expect("nonzero");
        let (a, b) = (e0[0] as i64, e0[1] as i64);
        let all_parallel = cur
            .terms()
            .keys()
            .all(|e| a * e[1] as i64 - b * e[0] as i64 == 0);
        let partner = if !all_parallel {
            mono(&space, e0[0], e0[1], Rational::one())
        } else if b != 0 {
            mono(&space, 1, 0, Rational::one())
        } else {
            mono(&space, 0, 1, Rational::one())
        };
        push(&mut chain, &mut cur, partner)?;
    }
    loop {
        let (e, _) = cur.as_monomial().expect("single term");
        let (m, n) = (e[0], e[1]);
        let partner = if (m, n) == (1, 0) {
            break;
        } else if m == 0 {
            mono(&space, 1, 0, Rational::one())
        } else if n != 1 {
            mono(&space, 0, 1 - n, Rational::one())
        } else if m != 1 {
            mono(&space, 1 - m, 0, Rational::one())
        } else {
            mono(&space, 0, -1, Rational::one())
        };
        push(&mut chain, &mut cur, partner)?;
    }
    Ok(chain)
}
