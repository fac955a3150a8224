//! Seeded random generators for the property suites. Coefficients are
//! rationals with numerator and denominator bounded by 10 in absolute value.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::exactpoly::{Polynomial, Rational, UniPoly, VarKind, VariableSpace};
use crate::poisson::torus_space;
use crate::rings::{
    dan_normalize, CurveElement, CurveRing, DanElement, DanRing, RatCurveElement, RatCurveRing,
};
use crate::vfields::{PTVectorField, RatCurveField};

/// Derives an independent 64-bit seed for `(base, label, index)` with a
/// splitmix-style finalizer, so suites do not depend on execution order.
pub fn derive_seed(base: u64, label: &str, index: u64) -> u64 {
    let mut h = base ^ 0x9e37_79b9_7f4a_7c15;
    for b in label.bytes().chain(index.to_le_bytes()) {
        h = splitmix(h ^ b as u64);
    }
    h
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    let n: i64 = rng.gen_range(-10..=10);
    let d: i64 = rng.gen_range(1..=10);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let q = rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Up to `max_terms` terms; affine exponents in `0..=degree`, Laurent
/// exponents in `-degree..=degree`.
pub fn polynomial<R: Rng>(
    rng: &mut R,
    space: &Arc<VariableSpace>,
    degree: u32,
    max_terms: usize,
) -> Polynomial {
    let d = degree as i32;
    let n = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<(Vec<i32>, Rational)> = (0..n)
        .map(|_| {
            let e = space
                .iter()
                .map(|(_, k)| match k {
                    VarKind::Affine => rng.gen_range(0..=d),
                    VarKind::Laurent => rng.gen_range(-d..=d),
                })
                .collect();
            (e, nonzero_rational(rng))
        })
        .collect();
    Polynomial::from_terms(space, terms).expect("exponents respect variable kinds")
}

pub fn nonzero_polynomial<R: Rng>(
    rng: &mut R,
    space: &Arc<VariableSpace>,
    degree: u32,
    max_terms: usize,
) -> Polynomial {
    loop {
        let p = polynomial(rng, space, degree, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn uni_poly<R: Rng>(rng: &mut R, degree: usize) -> UniPoly {
    UniPoly::new((0..=degree).map(|_| rational(rng)).collect())
}

/// A field with a random coefficient on each variable (some may vanish).
pub fn pt_field<R: Rng>(
    rng: &mut R,
    space: &Arc<VariableSpace>,
    degree: u32,
    max_terms: usize,
) -> PTVectorField {
    let names: Vec<String> = space.iter().map(|(n, _)| n.to_string()).collect();
    let comps: Vec<(String, Polynomial)> = names
        .into_iter()
        .map(|n| {
            let c = if rng.gen_bool(0.8) {
                polynomial(rng, space, degree, max_terms)
            } else {
                Polynomial::zero(space)
            };
            (n, c)
        })
        .collect();
    PTVectorField::new(space, comps.iter().map(|(n, c)| (n.as_str(), c.clone())))
        .expect("same space")
}

/// Divergence-free field `H_{x2} d/dx1 - H_{x1} d/dx2` on an affine space.
pub fn divfree_field<R: Rng>(
    rng: &mut R,
    space: &Arc<VariableSpace>,
    degree: u32,
    max_terms: usize,
) -> PTVectorField {
    let h = polynomial(rng, space, degree + 1, max_terms);
    let (a, b) = (space.name(0).to_string(), space.name(1).to_string());
    PTVectorField::new(
        space,
        [
            (a.as_str(), h.partial_idx(1)),
            (b.as_str(), -h.partial_idx(0)),
        ],
    )
    .expect("same space")
}

pub fn torus_element<R: Rng>(rng: &mut R, degree: u32, max_terms: usize) -> Polynomial {
    polynomial(rng, &torus_space(), degree, max_terms)
}

/// Nonzero torus element with zero constant term.
pub fn torus_reducible<R: Rng>(rng: &mut R, degree: u32, max_terms: usize) -> Polynomial {
    loop {
        let f = torus_element(rng, degree, max_terms);
        let c = f.constant_term();
        let f = &f - &Polynomial::constant(f.space(), c);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn dan_element<R: Rng>(
    rng: &mut R,
    ring: &Arc<DanRing>,
    degree: u32,
    max_terms: usize,
) -> DanElement {
    dan_normalize(ring, &polynomial(rng, ring.raw_space(), degree, max_terms))
}

/// Random member of the divergence image `x k[x,z] + y k[y,z] + (r p)'`.
pub fn e_omega_element<R: Rng>(
    rng: &mut R,
    ring: &Arc<DanRing>,
    degree: u32,
    max_terms: usize,
) -> DanElement {
    let raw = ring.raw_space();
    let a = polynomial(rng, ring.xz_space(), degree, max_terms)
        .embed(raw)
        .expect("x, z");
    let b = polynomial(rng, ring.yz_space(), degree, max_terms)
        .embed(raw)
        .expect("y, z");
    let x = Polynomial::var(raw, "x").expect("x");
    let y = Polynomial::var(raw, "y").expect("y");
    let dr = rng.gen_range(0..=degree as usize);
    let r = uni_poly(rng, dr);
    let c = r
        .mul(ring.p_uni())
        .derivative()
        .to_polynomial(raw, "z")
        .expect("z");
    dan_normalize(ring, &(&(&(&x * &a) + &(&y * &b)) + &c))
}

pub fn curve_element<R: Rng>(rng: &mut R, ring: &Arc<CurveRing>, degree: usize) -> CurveElement {
    let da = rng.gen_range(0..=degree);
    let db = rng.gen_range(0..=degree);
    let b = if rng.gen_bool(0.75) {
        uni_poly(rng, db)
    } else {
        UniPoly::zero()
    };
    CurveElement::new(ring, uni_poly(rng, da), b)
}

pub fn nonzero_curve_element<R: Rng>(
    rng: &mut R,
    ring: &Arc<CurveRing>,
    degree: usize,
) -> CurveElement {
    loop {
        let e = curve_element(rng, ring, degree);
        if !e.is_zero() {
            return e;
        }
    }
}

/// Polynomial part of degree at most `degree` plus polar terms of order at
/// most `max_order` at randomly chosen poles.
pub fn ratcurve_element<R: Rng>(
    rng: &mut R,
    ring: &Arc<RatCurveRing>,
    degree: usize,
    max_order: u32,
) -> RatCurveElement {
    let mut polar = Vec::new();
    for i in 0..ring.poles().len() {
        for j in 1..=max_order {
            if rng.gen_bool(0.6) {
                polar.push(((i, j), rational(rng)));
            }
        }
    }
    RatCurveElement::new(ring, uni_poly(rng, degree), polar).expect("declared poles")
}

pub fn ratcurve_field<R: Rng>(
    rng: &mut R,
    ring: &Arc<RatCurveRing>,
    degree: usize,
    max_order: u32,
) -> RatCurveField {
    RatCurveField::new(ratcurve_element(rng, ring, degree, max_order))
}
