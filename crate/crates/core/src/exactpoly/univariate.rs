use std::sync::Arc;

use num_traits::{One, Zero};

use super::{int, Polynomial, Rational, VarKind, VariableSpace};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients from the constant term up.
/// Trailing zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - a`
    pub fn linear_root(a: &Rational) -> Self {
        Self::new(vec![-a.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Reads a polynomial that involves at most one variable, which must be
    /// affine.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let support = p.support_vars();
        if support.len() > 1 {
            return Err(Error::NotUnivariate);
        }
        let var = support.first().copied();
        if let Some(i) = var {
            if p.space().kind(i) != VarKind::Affine {
                return Err(Error::NotUnivariate);
            }
        }
        let mut coeffs = Vec::new();
        for (e, c) in p.terms() {
            let k = var.map_or(0, |i| e[i]) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] = c.clone();
        }
        Ok(Self::new(coeffs))
    }

    /// Polynomial in variable `var` of `space`.
    pub fn to_polynomial(&self, space: &Arc<VariableSpace>, var: &str) -> Result<Polynomial> {
        let i = space.require(var)?;
        let terms = self.coeffs.iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; space.len()];
            e[i] = k as i32;
            (e, c.clone())
        });
        Polynomial::from_terms(space, terms)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut out = vec![Rational::zero()];
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / int(k as i64 + 1)),
        );
        Self::new(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient if `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let l = a.leading().recip();
            a.scale(&l)
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Coefficients of `self(u + a)` in the variable `u`.
    pub fn taylor_shift(&self, a: &Rational) -> Self {
        // Horner in the shifted basis
        let mut out = Self::zero();
        let base = Self::new(vec![a.clone(), Rational::one()]);
        for c in self.coeffs.iter().rev() {
            out = out.mul(&base).add(&Self::constant(c.clone()));
        }
        out
    }

    /// First `n` coefficients of the power series `self / den` around 0.
    /// Requires `den(0) != 0`.
    pub fn series_div(&self, den: &Self, n: usize) -> Vec<Rational> {
        let d0 = den.coeff(0);
        assert!(
            !d0.is_zero(),
            "series division by a series with zero constant term"
        );
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeff(k);
            for (j, o) in out.iter().enumerate() {
                acc -= o * den.coeff(k - j);
            }
            out.push(acc / &d0);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn up(v: &[i64]) -> UniPoly {
        UniPoly::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = up(&[-1, 0, 1]); // x^2 - 1
        let b = up(&[-1, 1]); // x - 1
        assert_eq!(a.exact_div(&b), Some(up(&[1, 1])));
        assert_eq!(a.gcd(&a.derivative()), up(&[1]));
        let sq = up(&[1, 2, 1]);
        assert_eq!(sq.gcd(&sq.derivative()), up(&[1, 1]));
    }

    #[test]
    fn shift_and_series() {
        let p = up(&[0, 0, 1]); // x^2
        assert_eq!(p.taylor_shift(&int(1)), up(&[1, 2, 1]));
        // 1/(1 - u) = 1 + u + u^2 + ...
        let s = up(&[1]).series_div(&up(&[1, -1]), 4);
        assert_eq!(s, vec![int(1), int(1), int(1), int(1)]);
        assert_eq!(up(&[0, 2]).integral(), up(&[0, 0, 1]));
        assert_eq!(up(&[1, 1]).eval(&rat(1, 2)), rat(3, 2));
    }
}
