//! The Poisson structure `{x, z} = x`, `{x, y} = p'(z)`, `{y, z} = -y` on a
//! Danielewski surface, its Hamiltonian and divergence calculus, and the
//! image of the divergence.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{rank, solve};
use crate::exactpoly::{Polynomial, Rational, UniPoly};
use crate::rings::{dan_delocalize, dan_localize, dan_normalize, DanElement, DanRing};

fn same_ring(f: &DanElement, g: &DanElement) -> Result<()> {
    if Arc::ptr_eq(f.ring(), g.ring()) || f.ring() == g.ring() {
        Ok(())
    } else {
        Err(Error::MixedRings)
    }
}

fn gen(ring: &Arc<DanRing>, name: &str) -> DanElement {
    DanElement::generator(ring, name).expect("generator of the surface")
}

/// `f_x g_z - f_z g_x` on the chart `(x, z)`, where `y = p(z)/x`.
pub fn jac_localized(f: &DanElement, g: &DanElement) -> Result<Polynomial> {
    same_ring(f, g)?;
    let (fl, gl) = (dan_localize(f), dan_localize(g));
    Ok(&(&fl.partial_idx(0) * &gl.partial_idx(1)) - &(&fl.partial_idx(1) * &gl.partial_idx(0)))
}

/// The Jacobian when it is a nonzero constant.
pub fn is_constant_jac(f: &DanElement, g: &DanElement) -> Result<Option<Rational>> {
    let j = jac_localized(f, g)?;
    Ok(j.as_constant().filter(|c| !c.is_zero()))
}

/// `{f, g} = x * Jac(f, g)` computed on the chart and pulled back.
pub fn pb_dan(f: &DanElement, g: &DanElement) -> Result<DanElement> {
    let j = jac_localized(f, g)?;
    let ring = f.ring();
    let x = Polynomial::var(ring.loc_space(), "x")?;
    Ok(dan_delocalize(ring, &(&x * &j)).expect("brackets of regular functions are regular"))
}

/// A derivation of `O(D_p)`, given by the images of `x`, `y`, `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct DanVectorField {
    imgs: [DanElement; 3],
}

impl DanVectorField {
    /// Checks tangency: the derivation must kill `xy - p(z)`.
    pub fn new(x: DanElement, y: DanElement, z: DanElement) -> Result<Self> {
        same_ring(&x, &y)?;
        same_ring(&x, &z)?;
        let ring = x.ring().clone();
        let pp = DanElement::from_z_poly(&ring, &ring.p_prime())?;
        let rel = gen(&ring, "y")
            .mul(&x)
            .add(&gen(&ring, "x").mul(&y))
            .sub(&pp.mul(&z));
        if !rel.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "field is not tangent to xy = p(z): {rel}"
            )));
        }
        Ok(DanVectorField { imgs: [x, y, z] })
    }

    pub fn zero(ring: &Arc<DanRing>) -> Self {
        let z = DanElement::zero(ring);
        DanVectorField {
            imgs: [z.clone(), z.clone(), z],
        }
    }

    pub fn ring(&self) -> &Arc<DanRing> {
        self.imgs[0].ring()
    }

    /// Images of `x`, `y`, `z`.
    pub fn images(&self) -> &[DanElement; 3] {
        &self.imgs
    }

    pub fn is_zero(&self) -> bool {
        self.imgs.iter().all(DanElement::is_zero)
    }

    fn map(&self, f: impl Fn(&DanElement) -> Result<DanElement>) -> Result<Self> {
        let [a, b, c] = &self.imgs;
        Ok(DanVectorField {
            imgs: [f(a)?, f(b)?, f(c)?],
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same_ring(&self.imgs[0], &other.imgs[0])?;
        let [a, b, c] = &self.imgs;
        let [d, e, f] = &other.imgs;
        Ok(DanVectorField {
            imgs: [a.add(d), b.add(e), c.add(f)],
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map(|e| Ok(e.scale(k))).expect("scaling")
    }

    /// `g * self`
    pub fn mul_fn(&self, g: &DanElement) -> Result<Self> {
        self.map(|e| g.try_mul(e))
    }

    /// The derivation applied to `f`, by the chain rule on a representative.
    pub fn apply(&self, f: &DanElement) -> Result<DanElement> {
        same_ring(f, &self.imgs[0])?;
        let ring = f.ring();
        let raw = f.to_raw();
        let mut acc = DanElement::zero(ring);
        for (i, img) in self.imgs.iter().enumerate() {
            let d = dan_normalize(ring, &raw.partial_idx(i));
            acc = acc.add(&d.mul(img));
        }
        Ok(acc)
    }

    /// `f theta_x + g theta_y + h theta_z`
    pub fn from_basis(f: &DanElement, g: &DanElement, h: &DanElement) -> Result<Self> {
        same_ring(f, g)?;
        same_ring(f, h)?;
        let ring = f.ring();
        let parts = [
            hamiltonian_dan(&gen(ring, "x")).mul_fn(f)?,
            hamiltonian_dan(&gen(ring, "y")).mul_fn(g)?,
            hamiltonian_dan(&gen(ring, "z")).mul_fn(h)?,
        ];
        parts[0].try_add(&parts[1])?.try_add(&parts[2])
    }
}

/// `theta_f = {f, .}`
pub fn hamiltonian_dan(f: &DanElement) -> DanVectorField {
    let ring = f.ring();
    let img = |n: &str| pb_dan(f, &gen(ring, n)).expect("same ring");
    DanVectorField {
        imgs: [img("x"), img("y"), img("z")],
    }
}

/// Commutator of two derivations.
pub fn dan_vf_bracket(mu: &DanVectorField, nu: &DanVectorField) -> Result<DanVectorField> {
    same_ring(&mu.imgs[0], &nu.imgs[0])?;
    let mut imgs = Vec::with_capacity(3);
    for i in 0..3 {
        imgs.push(mu.apply(&nu.imgs[i])?.sub(&nu.apply(&mu.imgs[i])?));
    }
    let [a, b, c]: [DanElement; 3] = imgs.try_into().expect("three images");
    Ok(DanVectorField { imgs: [a, b, c] })
}

/// Divergence with respect to the volume form `dx ^ dz / x`: on the chart,
/// with `u`, `w` the localized images of `x`, `z`, it is `u_x + w_z - u/x`.
pub fn div_dan(mu: &DanVectorField) -> DanElement {
    let ring = mu.ring();
    let u = dan_localize(&mu.imgs[0]);
    let w = dan_localize(&mu.imgs[2]);
    let u_over_x = u.shift(&[-1, 0]).expect("x is a Laurent variable");
    let d = &(&u.partial_idx(0) + &w.partial_idx(1)) - &u_over_x;
    dan_delocalize(ring, &d).expect("divergence of a regular field is regular")
}

/// Divergence of `f theta_x + g theta_y + h theta_z`, which is
/// `theta_x(f) + theta_y(g) + theta_z(h)` since Hamiltonian fields are
/// divergence free. Expanded:
/// `p'(f_y - g_x) + x(f_z - h_x) - y(g_z - h_y)`.
pub fn div_dan_basis(f: &DanElement, g: &DanElement, h: &DanElement) -> Result<DanElement> {
    same_ring(f, g)?;
    same_ring(f, h)?;
    let ring = f.ring();
    let a = pb_dan(&gen(ring, "x"), f)?;
    let b = pb_dan(&gen(ring, "y"), g)?;
    let c = pb_dan(&gen(ring, "z"), h)?;
    Ok(a.add(&b).add(&c))
}

/// Certificate that `e` lies in the image of the divergence.
#[derive(Clone, Debug, PartialEq)]
pub struct EOmegaWitness {
    /// `(r p)'` is the `k[z]`-component of `e`.
    pub r: Polynomial,
    /// Coefficients of the preimage in the basis `theta_x, theta_y, theta_z`.
    pub coefficients: [DanElement; 3],
    pub preimage: DanVectorField,
}

/// Rank data of the inconsistent system `(r p)' = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infeasible {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub augmented_rank: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    Member(EOmegaWitness),
    NotMember(Infeasible),
}

impl Membership {
    pub fn witness(&self) -> Option<&EOmegaWitness> {
        match self {
            Membership::Member(w) => Some(w),
            Membership::NotMember(_) => None,
        }
    }

    pub fn is_member(&self) -> bool {
        self.witness().is_some()
    }
}

/// Solves `(r p)' = c` for `r` of degree `deg c + 1 - deg p`.
fn solve_rp(ring: &DanRing, c: &UniPoly) -> std::result::Result<UniPoly, Infeasible> {
    let Some(dc) = c.degree() else {
        return Ok(UniPoly::zero());
    };
    let dp = ring.degree();
    if dc + 1 < dp {
        return Err(Infeasible {
            unknowns: 0,
            equations: dc + 1,
            rank: 0,
            augmented_rank: 1,
        });
    }
    let n = dc + 1 - dp + 1;
    let p = ring.p_uni();
    let cols: Vec<UniPoly> = (0..n)
        .map(|j| {
            let mut zj = vec![Rational::zero(); j + 1];
            zj[j] = Rational::one();
            UniPoly::new(zj).mul(p).derivative()
        })
        .collect();
    let matrix: Vec<Vec<Rational>> = (0..=dc)
        .map(|row| cols.iter().map(|col| col.coeff(row)).collect())
        .collect();
    let rhs: Vec<Rational> = (0..=dc).map(|row| c.coeff(row)).collect();
    match solve(&matrix, &rhs) {
        Some(r) => Ok(UniPoly::new(r)),
        None => {
            let augmented: Vec<Vec<Rational>> = matrix
                .iter()
                .zip(&rhs)
                .map(|(row, b)| row.iter().cloned().chain([b.clone()]).collect())
                .collect();
            Err(Infeasible {
                unknowns: n,
                equations: dc + 1,
                rank: rank(matrix),
                augmented_rank: rank(augmented),
            })
        }
    }
}

/// Decides whether `e = xA + yB + c` is a divergence, i.e. whether
/// `c = (r p)'` for some polynomial `r`, and builds the preimage
/// `(int A dz) theta_x - (int B dz + r x) theta_y`.
pub fn e_omega_member(e: &DanElement) -> Membership {
    let ring = e.ring();
    let c = UniPoly::from_polynomial(e.z_part()).expect("univariate in z");
    let r = match solve_rp(ring, &c) {
        Ok(r) => r,
        Err(info) => return Membership::NotMember(info),
    };
    let raw = ring.raw_space();
    let int_a = e
        .x_part()
        .antiderivative_idx(1)
        .expect("z is affine")
        .embed(raw)
        .expect("x, z");
    let int_b = e
        .y_part()
        .antiderivative_idx(1)
        .expect("z is affine")
        .embed(raw)
        .expect("y, z");
    let r_poly = r.to_polynomial(ring.z_space(), "z").expect("z");
    let rx = &r_poly.embed(raw).expect("z") * &Polynomial::var(raw, "x").expect("x");
    let f = dan_normalize(ring, &int_a);
    let g = dan_normalize(ring, &-(&int_b + &rx));
    let h = DanElement::zero(ring);
    let preimage = DanVectorField::from_basis(&f, &g, &h).expect("same ring");
    Membership::Member(EOmegaWitness {
        r: r_poly,
        coefficients: [f, g, h],
        preimage,
    })
}

/// Exact-rank codimension of the `k[z]`-components of brackets inside
/// `k[z]_{<d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codimension {
    pub truncation: usize,
    pub rank: usize,
    pub codim: usize,
}

/// Spans the `k[z]`-components of `{x z^a, y z^b}` for `a + b <= d - deg p`
/// and returns `d - rank`.
pub fn codimension(ring: &Arc<DanRing>, d: usize) -> Result<Codimension> {
    let dp = ring.degree();
    if d < dp {
        return Err(Error::InvalidParameter(format!(
            "truncation degree {d} is below deg p = {dp}"
        )));
    }
    let x = gen(ring, "x");
    let y = gen(ring, "y");
    let z = gen(ring, "z");
    let zpow = |k: usize| {
        (0..k).fold(DanElement::constant(ring, Rational::one()), |acc, _| {
            acc.mul(&z)
        })
    };
    let mut rows = Vec::new();
    for s in 0..=(d - dp) {
        for a in 0..=s {
            let br = pb_dan(&x.mul(&zpow(a)), &y.mul(&zpow(s - a)))?;
            let c = UniPoly::from_polynomial(br.z_part())?;
            rows.push((0..d).map(|i| c.coeff(i)).collect::<Vec<_>>());
        }
    }
    let rk = rank(rows);
    Ok(Codimension {
        truncation: d,
        rank: rk,
        codim: d - rk,
    })
}

/// `e = {g, z + a} + {x, y r}` for `deg p = 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct DanWidthTwo {
    /// `z + a = p'/(2 lead p)`
    pub a: Rational,
    pub g: DanElement,
    pub r: Polynomial,
}

impl DanWidthTwo {
    pub fn replay(&self) -> Result<DanElement> {
        let ring = self.g.ring();
        let za = gen(ring, "z").add(&DanElement::constant(ring, self.a.clone()));
        let yr = gen(ring, "y").mul(&DanElement::from_z_poly(ring, &self.r)?);
        Ok(pb_dan(&self.g, &za)?.add(&pb_dan(&gen(ring, "x"), &yr)?))
    }
}

/// Width-two decomposition of a divergence on a surface with `deg p = 2`.
pub fn width2_dan_deg2(e: &DanElement) -> Result<DanWidthTwo> {
    let ring = e.ring();
    if ring.degree() != 2 {
        return Err(Error::WrongDegree(format!(
            "deg p = {}, expected 2",
            ring.degree()
        )));
    }
    let Membership::Member(w) = e_omega_member(e) else {
        return Err(Error::NotInEOmega);
    };
    let p = ring.p_uni();
    let a = p.coeff(1) / (p.coeff(2) * Rational::from_integer(2.into()));
    let mut terms = Vec::new();
    for (ex, c) in e.x_part().terms() {
        let i = ex[0] + 1;
        terms.push((vec![i, 0, ex[1]], c / Rational::from_integer(i.into())));
    }
    for (ey, c) in e.y_part().terms() {
        let j = ey[0] + 1;
        terms.push((vec![0, j, ey[1]], -c / Rational::from_integer(j.into())));
    }
    let g = dan_normalize(ring, &Polynomial::from_terms(ring.raw_space(), terms)?);
    Ok(DanWidthTwo { a, g, r: w.r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int;

    fn ring(p: &str) -> Arc<DanRing> {
        DanRing::parse(p).unwrap()
    }

    fn el(r: &Arc<DanRing>, s: &str) -> DanElement {
        DanElement::parse(r, s).unwrap()
    }

    #[test]
    fn generator_relations() {
        let r = ring("z^2 - 1");
        let b = |f: &str, g: &str| pb_dan(&el(&r, f), &el(&r, g)).unwrap();
        assert_eq!(b("x", "z"), el(&r, "x"));
        assert_eq!(b("x", "y"), el(&r, "2*z"));
        assert_eq!(b("y", "z"), el(&r, "-y"));
        assert_eq!(b("x*z", "y"), el(&r, "3*z^2 - 1"));
        let other = ring("z^2 - 2");
        assert_eq!(
            pb_dan(&el(&r, "x"), &el(&other, "y")),
            Err(Error::MixedRings)
        );
    }

    #[test]
    fn hamiltonian_examples() {
        let r = ring("z^3 - z");
        let th = |s: &str| hamiltonian_dan(&el(&r, s));
        assert_eq!(
            th("x").images(),
            &[el(&r, "0"), el(&r, "3*z^2 - 1"), el(&r, "x")]
        );
        assert_eq!(
            th("y").images(),
            &[el(&r, "-(3*z^2 - 1)"), el(&r, "0"), el(&r, "-y")]
        );
        assert_eq!(th("z").images(), &[el(&r, "-x"), el(&r, "y"), el(&r, "0")]);
        assert!(th("7/2").is_zero());
        let t = th("x^2*y + z");
        assert!(DanVectorField::new(
            t.images()[0].clone(),
            t.images()[1].clone(),
            t.images()[2].clone()
        )
        .is_ok());
        assert!(DanVectorField::new(el(&r, "1"), el(&r, "0"), el(&r, "0")).is_err());
    }

    #[test]
    fn field_bracket_examples() {
        let r = ring("z^2 - 1");
        let th = |s: &str| hamiltonian_dan(&el(&r, s));
        assert_eq!(dan_vf_bracket(&th("x"), &th("y")).unwrap(), th("2*z"));
        assert_eq!(dan_vf_bracket(&th("x"), &th("z")).unwrap(), th("x"));
        let m = th("x^2 + y*z");
        assert!(dan_vf_bracket(&m, &m).unwrap().is_zero());
    }

    #[test]
    fn divergence_examples() {
        let r = ring("z^2 - 1");
        for s in ["x", "y", "z", "x^3*z + y^2", "x*y*z"] {
            assert!(div_dan(&hamiltonian_dan(&el(&r, s))).is_zero(), "{s}");
        }
        let zero = el(&r, "0");
        // div of x r(z) theta_y is -(r p)'
        let got = div_dan_basis(&zero, &el(&r, "x*(z + 2)"), &zero).unwrap();
        assert_eq!(got, el(&r, "-(3*z^2 + 4*z - 1)"));
        assert_eq!(
            div_dan_basis(&el(&r, "-z^2/2"), &zero, &zero).unwrap(),
            el(&r, "-x*z")
        );
        let f = DanVectorField::from_basis(&el(&r, "y"), &el(&r, "x*z"), &el(&r, "z^2")).unwrap();
        assert_eq!(
            div_dan(&f),
            div_dan_basis(&el(&r, "y"), &el(&r, "x*z"), &el(&r, "z^2")).unwrap()
        );
    }

    #[test]
    fn membership_examples() {
        let r = ring("z^2 - 1");
        let w = e_omega_member(&el(&r, "2*z"));
        let w = w.witness().unwrap();
        assert_eq!(w.r, Polynomial::parse("1", r.z_space()).unwrap());
        assert_eq!(
            w.preimage,
            hamiltonian_dan(&el(&r, "y")).mul_fn(&el(&r, "-x")).unwrap()
        );
        assert_eq!(div_dan(&w.preimage), el(&r, "2*z"));

        let w = e_omega_member(&el(&r, "x*z"));
        let w = w.witness().unwrap();
        assert!(w.r.is_zero());
        assert_eq!(w.coefficients[0], el(&r, "z^2/2"));
        assert_eq!(div_dan(&w.preimage), el(&r, "x*z"));

        for p in ["z^2 - 1", "z^3 - z", "z^4 - 1"] {
            let r = ring(p);
            assert!(!e_omega_member(&el(&r, "1")).is_member(), "{p}");
        }
        let r1 = ring("z");
        assert!(e_omega_member(&el(&r1, "1")).is_member());
    }

    #[test]
    fn codimension_examples() {
        for (p, dp) in [("z^2 - 1", 2), ("z^3 - z", 3), ("z^4 - 1", 4)] {
            let r = ring(p);
            for d in [2 * dp, 2 * dp + 3] {
                assert_eq!(codimension(&r, d).unwrap().codim, dp - 1, "{p} {d}");
            }
        }
    }

    #[test]
    fn width_two_examples() {
        let r = ring("z^2 - 1");
        let w = width2_dan_deg2(&el(&r, "x")).unwrap();
        assert_eq!((w.g.clone(), w.r.is_zero()), (el(&r, "x"), true));
        let w = width2_dan_deg2(&el(&r, "2*z")).unwrap();
        assert!(w.g.is_zero());
        assert_eq!(w.r.as_constant(), Some(int(1)));
        let e = el(&r, "x^2*z + y");
        let w = width2_dan_deg2(&e).unwrap();
        assert_eq!(w.g, el(&r, "z/2*x^2 - y"));
        assert_eq!(w.replay().unwrap(), e);
        assert_eq!(width2_dan_deg2(&el(&r, "1")), Err(Error::NotInEOmega));
        let r3 = ring("z^3 - z");
        assert!(matches!(
            width2_dan_deg2(&el(&r3, "x")),
            Err(Error::WrongDegree(_))
        ));
    }

    #[test]
    fn jacobian_examples() {
        let r = ring("z^2 - 1");
        let j = |f: &str, g: &str| jac_localized(&el(&r, f), &el(&r, g)).unwrap();
        assert_eq!(j("x", "z").as_constant(), Some(int(1)));
        assert_eq!(j("z", "x").as_constant(), Some(int(-1)));
        assert_eq!(
            j("x", "y"),
            Polynomial::parse("2*z*x^-1", r.loc_space()).unwrap()
        );
        let c = |f: &str, g: &str| is_constant_jac(&el(&r, f), &el(&r, g)).unwrap();
        assert_eq!(c("x", "z"), Some(int(1)));
        assert_eq!(c("x", "y"), None);
        assert_eq!(c("2*x", "z/2"), Some(int(1)));
    }
}
