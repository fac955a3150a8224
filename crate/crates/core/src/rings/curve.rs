//! Coordinate ring of the hyperelliptic curve `y^2 = h(x)` with `h` monic,
//! squarefree and of odd degree `2g + 1`. Elements are `a(x) + b(x) y`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{squarefree_check, Polynomial, Rational, UniPoly, VariableSpace};

#[derive(Debug)]
pub struct CurveRing {
    h: UniPoly,
    genus: usize,
    raw: Arc<VariableSpace>,
    x: Arc<VariableSpace>,
}

impl PartialEq for CurveRing {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h
    }
}

impl CurveRing {
    pub fn new(h: &Polynomial) -> Result<Arc<Self>> {
        let h_uni = UniPoly::from_polynomial(h)?;
        let deg = h_uni.degree().unwrap_or(0);
        if deg < 3 || deg % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "h = {h} must have odd degree 2g+1 >= 3, got degree {deg}"
            )));
        }
        if !h_uni.leading().is_one() {
            return Err(Error::InvalidParameter(format!("h = {h} must be monic")));
        }
        if !squarefree_check(h)? {
            return Err(Error::NotSquarefree(h.to_string()));
        }
        Ok(Arc::new(CurveRing {
            h: h_uni,
            genus: (deg - 1) / 2,
            raw: VariableSpace::affine(&["x", "y"]),
            x: VariableSpace::affine(&["x"]),
        }))
    }

    pub fn parse(text: &str) -> Result<Arc<Self>> {
        Self::new(&Polynomial::parse(text, &VariableSpace::affine(&["x"]))?)
    }

    pub fn h(&self) -> &UniPoly {
        &self.h
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `2g + 1`
    pub fn h_degree(&self) -> usize {
        2 * self.genus + 1
    }

    pub fn raw_space(&self) -> &Arc<VariableSpace> {
        &self.raw
    }

    pub fn x_space(&self) -> &Arc<VariableSpace> {
        &self.x
    }

    pub fn h_polynomial(&self) -> Polynomial {
        self.h.to_polynomial(&self.x, "x").unwrap()
    }
}

#[derive(Clone, Debug)]
pub struct CurveElement {
    ring: Arc<CurveRing>,
    a: UniPoly,
    b: UniPoly,
}

impl PartialEq for CurveElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.a == other.a && self.b == other.b
    }
}

impl CurveElement {
    pub fn new(ring: &Arc<CurveRing>, a: UniPoly, b: UniPoly) -> Self {
        CurveElement {
            ring: Arc::clone(ring),
            a,
            b,
        }
    }

    pub fn zero(ring: &Arc<CurveRing>) -> Self {
        Self::new(ring, UniPoly::zero(), UniPoly::zero())
    }

    pub fn constant(ring: &Arc<CurveRing>, c: Rational) -> Self {
        Self::new(ring, UniPoly::constant(c), UniPoly::zero())
    }

    pub fn one(ring: &Arc<CurveRing>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn x(ring: &Arc<CurveRing>) -> Self {
        Self::new(
            ring,
            UniPoly::new(vec![Rational::zero(), Rational::one()]),
            UniPoly::zero(),
        )
    }

    pub fn y(ring: &Arc<CurveRing>) -> Self {
        Self::new(ring, UniPoly::zero(), UniPoly::constant(Rational::one()))
    }

    /// Basis monomial `x^i` (`with_y = false`) or `x^i y`.
    pub fn basis(ring: &Arc<CurveRing>, i: usize, with_y: bool) -> Self {
        let mut v = vec![Rational::zero(); i + 1];
        v[i] = Rational::one();
        if with_y {
            Self::new(ring, UniPoly::zero(), UniPoly::new(v))
        } else {
            Self::new(ring, UniPoly::new(v), UniPoly::zero())
        }
    }

    pub fn parse(ring: &Arc<CurveRing>, text: &str) -> Result<Self> {
        curve_normalize(ring, &Polynomial::parse(text, &ring.raw)?)
    }

    pub fn ring(&self) -> &Arc<CurveRing> {
        &self.ring
    }

    pub fn a(&self) -> &UniPoly {
        &self.a
    }

    pub fn b(&self) -> &UniPoly {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(Self::new(
            &self.ring,
            self.a.add(&other.a),
            self.b.add(&other.b),
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(Self::new(
            &self.ring,
            self.a.sub(&other.a),
            self.b.sub(&other.b),
        ))
    }

    /// `(a1 + b1 y)(a2 + b2 y) = a1 a2 + b1 b2 h + (a1 b2 + a2 b1) y`
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let a = self
            .a
            .mul(&other.a)
            .add(&self.b.mul(&other.b).mul(&self.ring.h));
        let b = self.a.mul(&other.b).add(&other.a.mul(&self.b));
        Ok(Self::new(&self.ring, a, b))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("elements of different curves")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("elements of different curves")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("elements of different curves")
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.ring, self.a.scale(k), self.b.scale(k))
    }

    pub fn to_raw(&self) -> Polynomial {
        let r = &self.ring.raw;
        let a = self.a.to_polynomial(r, "x").unwrap();
        let b = self.b.to_polynomial(r, "x").unwrap();
        &a + &(&b * &Polynomial::var(r, "y").unwrap())
    }
}

/// Reduces a polynomial in `x, y` modulo `y^2 - h(x)`.
pub fn curve_normalize(ring: &Arc<CurveRing>, raw: &Polynomial) -> Result<CurveElement> {
    let raw = raw.embed(&ring.raw)?;
    let mut a = UniPoly::zero();
    let mut b = UniPoly::zero();
    for (j, coeff) in raw.collect_in(1) {
        let cx = UniPoly::from_polynomial(&coeff)?;
        let hp = ring.h.pow((j / 2) as u32);
        let term = cx.mul(&hp);
        if j % 2 == 0 {
            a = a.add(&term);
        } else {
            b = b.add(&term);
        }
    }
    Ok(CurveElement::new(ring, a, b))
}

impl fmt::Display for CurveElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_raw())
    }
}
