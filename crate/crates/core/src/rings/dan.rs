//! Coordinate ring of the Danielewski surface `xy = p(z)`.
//!
//! Elements are stored in the normal form `x*A(x,z) + y*B(y,z) + c(z)`,
//! which is unique: every mixed monomial `x^i y^j` reduces through
//! `xy -> p(z)`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactpoly::{squarefree_check, Polynomial, Rational, UniPoly, VarKind, VariableSpace};

#[derive(Debug)]
pub struct DanRing {
    p: Polynomial,
    p_uni: UniPoly,
    degree: usize,
    raw: Arc<VariableSpace>,
    xz: Arc<VariableSpace>,
    yz: Arc<VariableSpace>,
    z: Arc<VariableSpace>,
    loc: Arc<VariableSpace>,
}

impl PartialEq for DanRing {
    fn eq(&self, other: &Self) -> bool {
        self.p_uni == other.p_uni
    }
}

impl DanRing {
    /// `p` must be a squarefree univariate polynomial of degree at least one;
    /// its variable is renamed to `z`.
    pub fn new(p: &Polynomial) -> Result<Arc<Self>> {
        let p_uni = UniPoly::from_polynomial(p)?;
        let degree = p_uni.degree().unwrap_or(0);
        if degree < 1 || p_uni.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "p = {p} must have degree >= 1"
            )));
        }
        if !squarefree_check(p)? {
            return Err(Error::NotSquarefree(p.to_string()));
        }
        let z = VariableSpace::affine(&["z"]);
        Ok(Arc::new(DanRing {
            p: p_uni.to_polynomial(&z, "z")?,
            p_uni,
            degree,
            raw: VariableSpace::affine(&["x", "y", "z"]),
            xz: VariableSpace::affine(&["x", "z"]),
            yz: VariableSpace::affine(&["y", "z"]),
            z,
            loc: VariableSpace::new([("x", VarKind::Laurent), ("z", VarKind::Affine)])?,
        }))
    }

    pub fn parse(text: &str) -> Result<Arc<Self>> {
        Self::new(&Polynomial::parse(text, &VariableSpace::affine(&["z"]))?)
    }

    /// `p(z)` over the space `(z)`.
    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn p_uni(&self) -> &UniPoly {
        &self.p_uni
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `(x, y, z)`, all affine.
    pub fn raw_space(&self) -> &Arc<VariableSpace> {
        &self.raw
    }

    /// `(x, z)` with `x` Laurent: the chart `x != 0`.
    pub fn loc_space(&self) -> &Arc<VariableSpace> {
        &self.loc
    }

    pub fn z_space(&self) -> &Arc<VariableSpace> {
        &self.z
    }

    pub fn xz_space(&self) -> &Arc<VariableSpace> {
        &self.xz
    }

    pub fn yz_space(&self) -> &Arc<VariableSpace> {
        &self.yz
    }

    pub fn p_prime(&self) -> Polynomial {
        self.p.partial_idx(0)
    }
}

#[derive(Clone, Debug)]
pub struct DanElement {
    ring: Arc<DanRing>,
    a: Polynomial,
    b: Polynomial,
    c: Polynomial,
}

impl PartialEq for DanElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.a == other.a && self.b == other.b && self.c == other.c
    }
}

impl DanElement {
    pub fn ring(&self) -> &Arc<DanRing> {
        &self.ring
    }

    /// `A(x,z)` in `x*A + y*B + c`.
    pub fn x_part(&self) -> &Polynomial {
        &self.a
    }

    /// `B(y,z)` in `x*A + y*B + c`.
    pub fn y_part(&self) -> &Polynomial {
        &self.b
    }

    /// `c(z)` in `x*A + y*B + c`.
    pub fn z_part(&self) -> &Polynomial {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn zero(ring: &Arc<DanRing>) -> Self {
        DanElement {
            ring: Arc::clone(ring),
            a: Polynomial::zero(&ring.xz),
            b: Polynomial::zero(&ring.yz),
            c: Polynomial::zero(&ring.z),
        }
    }

    pub fn constant(ring: &Arc<DanRing>, c: Rational) -> Self {
        let mut e = Self::zero(ring);
        e.c = Polynomial::constant(&ring.z, c);
        e
    }

    /// Generator `x`, `y` or `z`.
    pub fn generator(ring: &Arc<DanRing>, name: &str) -> Result<Self> {
        Ok(dan_normalize(ring, &Polynomial::var(&ring.raw, name)?))
    }

    pub fn from_z_poly(ring: &Arc<DanRing>, c: &Polynomial) -> Result<Self> {
        let mut e = Self::zero(ring);
        e.c = c.embed(&ring.z)?;
        Ok(e)
    }

    /// Parses any expression in `x, y, z` and reduces it.
    pub fn parse(ring: &Arc<DanRing>, text: &str) -> Result<Self> {
        Ok(dan_normalize(ring, &Polynomial::parse(text, &ring.raw)?))
    }

    /// Canonical representative `x*A + y*B + c` over `(x, y, z)`.
    pub fn to_raw(&self) -> Polynomial {
        let r = &self.ring.raw;
        let x = Polynomial::var(r, "x").unwrap();
        let y = Polynomial::var(r, "y").unwrap();
        let a = self.a.embed(r).unwrap();
        let b = self.b.embed(r).unwrap();
        let c = self.c.embed(r).unwrap();
        &(&(&x * &a) + &(&y * &b)) + &c
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
        Ok(DanElement {
            ring: Arc::clone(&self.ring),
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            c: &self.c + &other.c,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    /// Product in normal form.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(dan_normalize(
            &self.ring,
            &(&self.to_raw() * &other.to_raw()),
        ))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::from_integer(1.into()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        DanElement {
            ring: Arc::clone(&self.ring),
            a: self.a.scale(k),
            b: self.b.scale(k),
            c: self.c.scale(k),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other)
            .expect("elements of different Danielewski rings")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other)
            .expect("elements of different Danielewski rings")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other)
            .expect("elements of different Danielewski rings")
    }

    /// Image in `k[x, x^-1, z]` under `y -> p(z)/x`.
    pub fn localize(&self) -> Polynomial {
        dan_localize(self)
    }
}

/// Reduces a polynomial in `x, y, z` modulo `xy - p(z)`.
pub fn dan_normalize(ring: &Arc<DanRing>, raw: &Polynomial) -> DanElement {
    let raw = raw.embed(&ring.raw).expect("polynomial in x, y, z");
    let mut powers = vec![UniPoly::constant(Rational::from_integer(1.into()))];
    let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
    for (e, coeff) in raw.terms() {
        let (i, j, k) = (e[0], e[1], e[2]);
        let m = i.min(j);
        while powers.len() <= m as usize {
            let next = powers.last().unwrap().mul(&ring.p_uni);
            powers.push(next);
        }
        let (i, j) = (i - m, j - m);
        for (d, pc) in powers[m as usize].coeffs().iter().enumerate() {
            if pc.is_zero() {
                continue;
            }
            let v = coeff * pc;
            let kz = k + d as i32;
            if i > 0 {
                a.push((vec![i - 1, kz], v));
            } else if j > 0 {
                b.push((vec![j - 1, kz], v));
            } else {
                c.push((vec![kz], v));
            }
        }
    }
    DanElement {
        ring: Arc::clone(ring),
        a: Polynomial::from_terms(&ring.xz, a).unwrap(),
        b: Polynomial::from_terms(&ring.yz, b).unwrap(),
        c: Polynomial::from_terms(&ring.z, c).unwrap(),
    }
}

pub fn dan_mul(a: &DanElement, b: &DanElement) -> Result<DanElement> {
    a.try_mul(b)
}

pub fn dan_add(a: &DanElement, b: &DanElement) -> Result<DanElement> {
    a.try_add(b)
}

/// Substitutes `y = p(z) x^-1`; the result lives over `(x Laurent, z)`.
pub fn dan_localize(e: &DanElement) -> Polynomial {
    let ring = &e.ring;
    let y_img = &ring.p.embed(&ring.loc).unwrap() * &Polynomial::parse("x^-1", &ring.loc).unwrap();
    e.to_raw()
        .substitute("y", &y_img)
        .expect("localization is always defined")
}

/// Inverse of [`dan_localize`] on its image `k[x, z, p(z)/x]`.
pub fn dan_delocalize(ring: &Arc<DanRing>, q: &Polynomial) -> Result<DanElement> {
    let q = q.embed(&ring.loc)?;
    let mut a = Polynomial::zero(&ring.xz);
    let mut b = Polynomial::zero(&ring.yz);
    let mut c = Polynomial::zero(&ring.z);
    for (j, coeff) in q.collect_in(0) {
        let cz = coeff.embed(&ring.z)?;
        match j {
            0 => c = &c + &cz,
            j if j > 0 => a = &a + &cz.embed(&ring.xz)?.shift(&[j - 1, 0])?,
            j => {
                let s = (-j) as u32;
                let quot = UniPoly::from_polynomial(&cz)?
                    .exact_div(&ring.p_uni.pow(s))
                    .ok_or(Error::NotInImage)?;
                let quot = quot.to_polynomial(&ring.yz, "z")?;
                b = &b + &quot.shift(&[s as i32 - 1, 0])?;
            }
        }
    }
    Ok(DanElement {
        ring: Arc::clone(ring),
        a,
        b,
        c,
    })
}

impl fmt::Display for DanElement {
    /// `x*(A) + y*(B) + (c)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x*({}) + y*({}) + ({})", self.a, self.b, self.c)
    }
}

impl DanElement {
    /// Degree-like size used to bound random samples and test inputs.
    pub fn max_degree(&self) -> i64 {
        [&self.a, &self.b, &self.c]
            .iter()
            .filter_map(|p| p.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.as_constant().is_some()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.a.is_zero() && self.b.is_zero() {
            self.c.as_constant()
        } else {
            None
        }
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.constant_value().is_some_and(|c| !c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int;

    fn ring() -> Arc<DanRing> {
        DanRing::parse("z^2 - 1").unwrap()
    }

    fn el(r: &Arc<DanRing>, t: &str) -> DanElement {
        DanElement::parse(r, t).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let r = ring();
        let p = r.p().clone();
        let xy = el(&r, "x*y");
        assert!(xy.x_part().is_zero() && xy.y_part().is_zero());
        assert_eq!(xy.z_part(), &p);

        let x2y = el(&r, "x^2*y");
        assert_eq!(x2y.x_part(), &p.embed(r.xz_space()).unwrap());
        assert!(x2y.y_part().is_zero() && x2y.z_part().is_zero());

        let x2y2 = el(&r, "x^2*y^2");
        assert_eq!(x2y2.z_part(), &p.pow(2));
    }

    #[test]
    fn products() {
        let r = ring();
        assert_eq!(el(&r, "x").mul(&el(&r, "y")), el(&r, "z^2 - 1"));
        let e = el(&r, "x + y").mul(&el(&r, "z"));
        assert_eq!(e.x_part().to_string(), "z");
        assert_eq!(e.y_part().to_string(), "z");
        assert!(e.z_part().is_zero());
        let yy = el(&r, "y").mul(&el(&r, "y"));
        assert_eq!(yy.y_part().to_string(), "y");
    }

    #[test]
    fn localization_round_trip() {
        let r = ring();
        let loc = r.loc_space();
        assert_eq!(
            el(&r, "y").localize(),
            Polynomial::parse("(z^2-1)*x^-1", loc).unwrap()
        );
        assert_eq!(
            el(&r, "x*y").localize(),
            Polynomial::parse("z^2-1", loc).unwrap()
        );
        assert_eq!(
            el(&r, "x^2+z").localize(),
            Polynomial::parse("x^2+z", loc).unwrap()
        );

        let q = Polynomial::parse("(z^2-1)*x^-1", loc).unwrap();
        assert_eq!(dan_delocalize(&r, &q).unwrap(), el(&r, "y"));
        let bad = Polynomial::parse("z*x^-1", loc).unwrap();
        assert_eq!(dan_delocalize(&r, &bad), Err(Error::NotInImage));
        let x3 = Polynomial::parse("x^3", loc).unwrap();
        assert_eq!(dan_delocalize(&r, &x3).unwrap(), el(&r, "x^3"));
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(
            DanRing::parse("z^2"),
            Err(Error::NotSquarefree(_))
        ));
        assert!(matches!(
            DanRing::parse("3"),
            Err(Error::InvalidParameter(_))
        ));
        let s = VariableSpace::affine(&["x", "z"]);
        assert_eq!(
            DanRing::new(&Polynomial::parse("x*z", &s).unwrap()).err(),
            Some(Error::NotUnivariate)
        );
        let other = DanRing::parse("z^3 - z").unwrap();
        assert_eq!(
            DanElement::constant(&ring(), int(1)).try_mul(&DanElement::constant(&other, int(1))),
            Err(Error::MixedRings)
        );
    }

    #[test]
    fn display_round_trips() {
        let r = ring();
        let e = el(&r, "x^2*z + 3*y^2 - z/2 + x*y");
        let back = DanElement::parse(&r, &e.to_string()).unwrap();
        assert_eq!(back, e);
    }
}
