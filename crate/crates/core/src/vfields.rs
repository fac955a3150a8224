//! Polynomial vector fields on products of affine lines and tori, their Lie
//! bracket and divergence, and the constructive single-bracket solvers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{
    int, parse_expr, Evaluator, PolyEval, Polynomial, Rational, VarKind, VariableSpace,
};
use crate::rings::RatCurveElement;

/// `sum_v coeffs[v] * d/dv` over a product of affine and torus factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTVectorField {
    space: Arc<VariableSpace>,
    coeffs: BTreeMap<usize, Polynomial>,
}

impl PTVectorField {
    pub fn zero(space: &Arc<VariableSpace>) -> Self {
        PTVectorField {
            space: Arc::clone(space),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn new<'a>(
        space: &Arc<VariableSpace>,
        comps: impl IntoIterator<Item = (&'a str, Polynomial)>,
    ) -> Result<Self> {
        let mut f = Self::zero(space);
        for (name, c) in comps {
            let i = space.require(name)?;
            if c.space() != space {
                return Err(Error::MixedSpaces);
            }
            f = f.try_add(&Self::single(space, i, c))?;
        }
        Ok(f)
    }

    fn single(space: &Arc<VariableSpace>, i: usize, c: Polynomial) -> Self {
        let mut f = Self::zero(space);
        if !c.is_zero() {
            f.coeffs.insert(i, c);
        }
        f
    }

    /// `d/dv`
    pub fn partial(space: &Arc<VariableSpace>, var: &str) -> Result<Self> {
        let i = space.require(var)?;
        Ok(Self::single(space, i, Polynomial::one(space)))
    }

    /// `coeff * d/dv`
    pub fn along(space: &Arc<VariableSpace>, var: &str, coeff: Polynomial) -> Result<Self> {
        Self::new(space, [(var, coeff)])
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn component(&self, i: usize) -> Polynomial {
        self.coeffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.space))
    }

    pub fn component_of(&self, var: &str) -> Result<Polynomial> {
        Ok(self.component(self.space.require(var)?))
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.coeffs.iter().map(|(i, p)| (*i, p))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::MixedSpaces)
        }
    }

    fn from_map(space: &Arc<VariableSpace>, mut coeffs: BTreeMap<usize, Polynomial>) -> Self {
        coeffs.retain(|_, p| !p.is_zero());
        PTVectorField {
            space: Arc::clone(space),
            coeffs,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut out = self.coeffs.clone();
        for (i, c) in &other.coeffs {
            let cur = out
                .remove(i)
                .unwrap_or_else(|| Polynomial::zero(&self.space));
            out.insert(*i, &cur + c);
        }
        Ok(Self::from_map(&self.space, out))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_map(
            &self.space,
            self.coeffs.iter().map(|(i, c)| (*i, c.scale(k))).collect(),
        )
    }

    /// `f * self`
    pub fn mul_fn(&self, f: &Polynomial) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (i, c) in &self.coeffs {
            out.insert(*i, f.try_mul(c)?);
        }
        Ok(Self::from_map(&self.space, out))
    }

    /// The derivation applied to a function: `sum_v coeff_v * df/dv`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.space() != &self.space {
            return Err(Error::MixedSpaces);
        }
        let mut acc = Polynomial::zero(&self.space);
        for (i, c) in &self.coeffs {
            acc = &acc + &(c * &f.partial_idx(*i));
        }
        Ok(acc)
    }

    pub fn parse(text: &str, space: &Arc<VariableSpace>) -> Result<Self> {
        parse_field(text, space)
    }
}

/// `[xi, nu]_j = xi(nu_j) - nu(xi_j)`.
pub fn vf_bracket(xi: &PTVectorField, nu: &PTVectorField) -> Result<PTVectorField> {
    xi.check_space(nu)?;
    let space = &xi.space;
    let mut out = BTreeMap::new();
    for j in 0..space.len() {
        let c = &xi.apply(&nu.component(j))? - &nu.apply(&xi.component(j))?;
        out.insert(j, c);
    }
    Ok(PTVectorField::from_map(space, out))
}

/// Divergence for the volume form `dx_1 ^ ... ^ dt/t ^ ...`: affine
/// factors contribute `d(c_v)/dv`, torus factors `d(c_t)/dt - c_t/t`.
pub fn vf_divergence(xi: &PTVectorField) -> Polynomial {
    let space = &xi.space;
    let mut acc = Polynomial::zero(space);
    for (i, c) in &xi.coeffs {
        acc = &acc + &c.partial_idx(*i);
        if space.kind(*i) == VarKind::Laurent {
            let mut shift = vec![0; space.len()];
            shift[*i] = -1;
            acc = &acc - &c.shift(&shift).expect("laurent shift");
        }
    }
    acc
}

/// `delta` with `[d/dv, delta] = mu`: componentwise antiderivative in the
/// affine variable `v`.
pub fn solve_bracket_affine(mu: &PTVectorField, var: &str) -> Result<PTVectorField> {
    let v = mu.space.require(var)?;
    if mu.space.kind(v) != VarKind::Affine {
        return Err(Error::WrongVariableKind(var.to_string()));
    }
    let mut out = BTreeMap::new();
    for (i, c) in &mu.coeffs {
        out.insert(*i, c.antiderivative_idx(v)?);
    }
    Ok(PTVectorField::from_map(&mu.space, out))
}

/// Output of [`solve_bracket_torus`]: `mu = [t^l d/dt, delta]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusBracket {
    pub l: u32,
    pub delta: PTVectorField,
}

impl TorusBracket {
    /// The left factor `t^l d/dt`.
    pub fn generator(&self, var: &str) -> Result<PTVectorField> {
        let space = self.delta.space();
        let t = space.require(var)?;
        let mut e = vec![0; space.len()];
        e[t] = self.l as i32;
        PTVectorField::along(space, var, Polynomial::monomial(space, e, Rational::one())?)
    }
}

/// Single-bracket decomposition along a torus variable `t`.
///
/// With `S` the set of `t`-exponents occurring in `mu`, picks the smallest
/// `l >= 1` such that neither `l - 1` nor `2l - 1` lies in `S`. A summand
/// `t^m f d/dt` is then matched by `t^{m-l+1} f / (m - 2l + 1) d/dt`, and a
/// summand `t^m f d/dv` (`v != t`) by `t^{m-l+1} f / (m - l + 1) d/dv`.
/// The zero field returns `l = 0`.
pub fn solve_bracket_torus(mu: &PTVectorField, var: &str) -> Result<TorusBracket> {
    let space = &mu.space;
    let t = space.require(var)?;
    if space.kind(t) != VarKind::Laurent {
        return Err(Error::WrongVariableKind(var.to_string()));
    }
    if mu.is_zero() {
        return Ok(TorusBracket {
            l: 0,
            delta: mu.clone(),
        });
    }
    let exps: std::collections::BTreeSet<i64> = mu
        .coeffs
        .values()
        .flat_map(|c| c.terms().keys().map(move |e| e[t] as i64))
        .collect();
    let l = (1i64..)
        .find(|&l| !exps.contains(&(l - 1)) && !exps.contains(&(2 * l - 1)))
        .expect("finite exponent set");
    let mut out = BTreeMap::new();
    for (i, c) in &mu.coeffs {
        let mut terms = Vec::new();
        for (e, coeff) in c.terms() {
            let m = e[t] as i64;
            let denom = if *i == t { m - 2 * l + 1 } else { m - l + 1 };
            debug_assert!(denom != 0);
            let mut e2 = e.clone();
            e2[t] = (m - l + 1) as i32;
            terms.push((e2, coeff / int(denom)));
        }
        out.insert(*i, Polynomial::from_terms(space, terms)?);
    }
    Ok(TorusBracket {
        l: l as u32,
        delta: PTVectorField::from_map(space, out),
    })
}

/// Divergence-free `eta` with `[d/dx_1, eta] = mu` for divergence-free `mu`
/// on affine space. The divergence of the plain antiderivative is removed
/// by a correction along the second variable.
pub fn solve_bracket_divfree(mu: &PTVectorField) -> Result<PTVectorField> {
    let space = &mu.space;
    if space.len() < 2 {
        return Err(Error::NeedTwoVariables);
    }
    if let Some((_, k)) = space.iter().find(|(_, k)| *k != VarKind::Affine) {
        debug_assert_eq!(k, VarKind::Laurent);
        let name = space.iter().find(|(_, k)| *k != VarKind::Affine).unwrap().0;
        return Err(Error::WrongVariableKind(name.to_string()));
    }
    if !vf_divergence(mu).is_zero() {
        return Err(Error::NotDivergenceFree);
    }
    let delta = solve_bracket_affine(mu, space.name(0))?;
    let c = vf_divergence(&delta);
    // d/dx_1 (Div delta) = Div mu = 0
    debug_assert!(c.partial_idx(0).is_zero());
    let correction = PTVectorField::single(space, 1, -c.antiderivative_idx(1)?);
    delta.try_add(&correction)
}

/// `coeff * d/dx` on a punctured line.
#[derive(Clone, Debug, PartialEq)]
pub struct RatCurveField {
    pub coeff: RatCurveElement,
}

impl RatCurveField {
    pub fn new(coeff: RatCurveElement) -> Self {
        RatCurveField { coeff }
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        let (a, b) = (&self.coeff, &other.coeff);
        let c = a
            .try_mul(&b.derivative())?
            .try_sub(&b.try_mul(&a.derivative())?)?;
        Ok(RatCurveField { coeff: c })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(RatCurveField {
            coeff: self.coeff.try_add(&other.coeff)?,
        })
    }

    /// `d/dx` on the same curve.
    pub fn partial(like: &RatCurveElement) -> Self {
        let ring = like.ring();
        let one = crate::exactpoly::UniPoly::constant(Rational::one());
        RatCurveField {
            coeff: RatCurveElement::from_poly(ring, one),
        }
    }

    /// `x d/dx` on the same curve.
    pub fn euler(like: &RatCurveElement) -> Self {
        let ring = like.ring();
        let x = crate::exactpoly::UniPoly::new(vec![Rational::zero(), Rational::one()]);
        RatCurveField {
            coeff: RatCurveElement::from_poly(ring, x),
        }
    }
}

impl fmt::Display for RatCurveField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "({})*d/dx", self.coeff)
        }
    }
}

/// Output of [`solve_width2_ratcurve`]: `mu = [d/dx, nu] + [x d/dx, delta]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatCurveWidth2 {
    pub nu: RatCurveField,
    pub delta: RatCurveField,
}

/// Writes `mu` as a sum of two brackets. `delta` absorbs the simple poles
/// (`[x d/dx, (x-p)^-1 d/dx] = -2 (x-p)^-1 - p (x-p)^-2`), and `nu` is an
/// antiderivative of what is left.
pub fn solve_width2_ratcurve(mu: &RatCurveField) -> Result<RatCurveWidth2> {
    let ring = mu.coeff.ring();
    let half = Rational::new(BigInt::from(-1), BigInt::from(2));
    let polar = (0..ring.poles().len()).map(|i| ((i, 1), mu.coeff.simple_pole_coeff(i) * &half));
    let delta = RatCurveField::new(RatCurveElement::new(ring, Default::default(), polar)?);
    let euler = RatCurveField::euler(&mu.coeff);
    let residual = mu.coeff.try_sub(&euler.bracket(&delta)?.coeff)?;
    debug_assert!((0..ring.poles().len()).all(|i| residual.simple_pole_coeff(i).is_zero()));
    let nu = RatCurveField::new(residual.antiderivative()?);
    Ok(RatCurveWidth2 { nu, delta })
}

/// Evaluator for vector-field text: each `d/dv` becomes a fresh variable,
/// and the result must be linear in those.
fn parse_field(text: &str, space: &Arc<VariableSpace>) -> Result<PTVectorField> {
    let mut vars: Vec<(String, VarKind)> = space.iter().map(|(n, k)| (n.to_string(), k)).collect();
    vars.extend(
        space
            .iter()
            .map(|(n, _)| (format!("__d_{n}"), VarKind::Affine)),
    );
    let ext = VariableSpace::new(vars)?;
    struct FieldEval<'a> {
        inner: PolyEval<'a>,
    }
    impl Evaluator for FieldEval<'_> {
        type Value = Polynomial;
        fn int(&self, n: &BigInt) -> Result<Polynomial> {
            self.inner.int(n)
        }
        fn var(&self, name: &str) -> Result<Polynomial> {
            if name.starts_with("__d_") {
                return Err(Error::UnknownVariable(name.to_string()));
            }
            self.inner.var(name)
        }
        fn deriv(&self, name: &str) -> Result<Polynomial> {
            Polynomial::var(self.inner.space, &format!("__d_{name}"))
                .map_err(|_| Error::UnknownVariable(name.to_string()))
        }
        fn neg(&self, a: Polynomial) -> Result<Polynomial> {
            self.inner.neg(a)
        }
        fn add(&self, a: Polynomial, b: Polynomial) -> Result<Polynomial> {
            self.inner.add(a, b)
        }
        fn mul(&self, a: Polynomial, b: Polynomial) -> Result<Polynomial> {
            self.inner.mul(a, b)
        }
        fn div(&self, a: Polynomial, b: Polynomial) -> Result<Polynomial> {
            self.inner.div(a, b)
        }
        fn pow(&self, a: Polynomial, n: i64) -> Result<Polynomial> {
            self.inner.pow(a, n)
        }
    }
    let p = parse_expr(text)?.eval(&FieldEval {
        inner: PolyEval { space: &ext },
    })?;
    let n = space.len();
    let mut comps: BTreeMap<usize, Vec<(Vec<i32>, Rational)>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let d = &e[n..];
        let which: Vec<usize> = d
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(i, _)| i)
            .collect();
        if which.len() != 1 || d[which[0]] != 1 {
            return Err(Error::Syntax(
                "vector field must be linear in the d/dv symbols".into(),
            ));
        }
        comps
            .entry(which[0])
            .or_default()
            .push((e[..n].to_vec(), c.clone()));
    }
    let mut out = BTreeMap::new();
    for (i, terms) in comps {
        out.insert(i, Polynomial::from_terms(space, terms)?);
    }
    Ok(PTVectorField::from_map(space, out))
}

impl fmt::Display for PTVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.coeffs.iter().enumerate() {
            let d = format!("d/d{}", self.space.name(*i));
            let body = if c.num_terms() == 1 {
                let s = c.to_string();
                let (neg, mag) = match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                };
                let term = if mag == "1" { d } else { format!("{mag}*{d}") };
                (neg, term)
            } else {
                (false, format!("({c})*{d}"))
            };
            match (n, body.0) {
                (0, true) => write!(f, "-{}", body.1)?,
                (0, false) => write!(f, "{}", body.1)?,
                (_, true) => write!(f, " - {}", body.1)?,
                (_, false) => write!(f, " + {}", body.1)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;
    use crate::rings::RatCurveRing;

    fn sp(sig: &str) -> Arc<VariableSpace> {
        VariableSpace::from_signature(sig).unwrap()
    }

    fn vf(text: &str, s: &Arc<VariableSpace>) -> PTVectorField {
        PTVectorField::parse(text, s).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let s = sp("x:a,y:a");
        let b = |a: &str, c: &str| vf_bracket(&vf(a, &s), &vf(c, &s)).unwrap();
        assert_eq!(b("d/dx", "x*d/dx"), vf("d/dx", &s));
        assert!(b("x*d/dx", "y*d/dy").is_zero());
        assert_eq!(b("d/dx", "x^2*d/dy"), vf("2*x*d/dy", &s));
        let other = sp("x:a");
        assert_eq!(
            vf_bracket(&vf("d/dx", &s), &vf("d/dx", &other)),
            Err(Error::MixedSpaces)
        );
    }

    #[test]
    fn divergence_examples() {
        let a = sp("x:a,y:a");
        assert_eq!(vf_divergence(&vf("x*d/dx", &a)).to_string(), "1");
        assert_eq!(
            vf_divergence(&vf("x^2*d/dx + x*y*d/dy", &a)).to_string(),
            "3*x"
        );
        let t = sp("t:t");
        assert!(vf_divergence(&vf("t*d/dt", &t)).is_zero());
    }

    #[test]
    fn affine_solver_examples() {
        let s = sp("x:a");
        assert_eq!(
            solve_bracket_affine(&vf("x^2*d/dx", &s), "x").unwrap(),
            vf("1/3*x^3*d/dx", &s)
        );
        assert_eq!(
            solve_bracket_affine(&vf("d/dx", &s), "x").unwrap(),
            vf("x*d/dx", &s)
        );
        let m = sp("x:a,t:t");
        let mu = vf("x*t^-1*d/dt", &m);
        let delta = solve_bracket_affine(&mu, "x").unwrap();
        assert_eq!(delta, vf("1/2*x^2*t^-1*d/dt", &m));
        let dx = PTVectorField::partial(&m, "x").unwrap();
        assert_eq!(vf_bracket(&dx, &delta).unwrap(), mu);
        assert_eq!(
            solve_bracket_affine(&mu, "t"),
            Err(Error::WrongVariableKind("t".into()))
        );
        assert_eq!(
            solve_bracket_affine(&mu, "q"),
            Err(Error::UnknownVariable("q".into()))
        );
    }

    #[test]
    fn torus_solver_examples() {
        let s = sp("t:t");
        let r = solve_bracket_torus(&vf("t^-1*d/dt", &s), "t").unwrap();
        assert_eq!(r.l, 1);
        assert_eq!(r.delta, vf("-1/2*t^-1*d/dt", &s));

        let r = solve_bracket_torus(&vf("d/dt", &s), "t").unwrap();
        assert_eq!(r.l, 2);
        assert_eq!(r.delta, vf("-1/3*t^-1*d/dt", &s));
        let g = r.generator("t").unwrap();
        assert_eq!(vf_bracket(&g, &r.delta).unwrap(), vf("d/dt", &s));

        let r = solve_bracket_torus(&PTVectorField::zero(&s), "t").unwrap();
        assert_eq!(r.l, 0);
        assert!(r.delta.is_zero());
    }

    #[test]
    fn divfree_solver_examples() {
        let s = sp("a:2");
        let cases = [
            ("x2*d/dx1", "x1*x2*d/dx1 - 1/2*x2^2*d/dx2"),
            ("d/dx1", "x1*d/dx1 - x2*d/dx2"),
            ("x1*d/dx2", "1/2*x1^2*d/dx2"),
        ];
        for (mu, eta) in cases {
            let out = solve_bracket_divfree(&vf(mu, &s)).unwrap();
            assert_eq!(out, vf(eta, &s), "{mu}");
            assert!(vf_divergence(&out).is_zero());
        }
        assert_eq!(
            solve_bracket_divfree(&vf("x1*d/dx1", &s)),
            Err(Error::NotDivergenceFree)
        );
        assert_eq!(
            solve_bracket_divfree(&vf("d/dx1", &sp("a:1"))),
            Err(Error::NeedTwoVariables)
        );
    }

    #[test]
    fn ratcurve_width_two_examples() {
        let r = RatCurveRing::parse_poles("0,1").unwrap();
        let f = |t: &str| RatCurveField::new(RatCurveElement::parse(&r, t).unwrap());
        let out = solve_width2_ratcurve(&f("(x-1)^-1")).unwrap();
        assert_eq!(out.delta, f("-1/2*(x-1)^-1"));
        assert_eq!(out.nu, f("1/2*(x-1)^-1"));

        let out = solve_width2_ratcurve(&f("x^2")).unwrap();
        assert!(out.delta.coeff.is_zero());
        assert_eq!(out.nu, f("x^3/3"));

        let r0 = RatCurveRing::parse_poles("0").unwrap();
        let mu = RatCurveField::new(RatCurveElement::parse(&r0, "x^-1").unwrap());
        let out = solve_width2_ratcurve(&mu).unwrap();
        assert_eq!(
            out.delta.coeff,
            RatCurveElement::parse(&r0, "-1/2*x^-1").unwrap()
        );
        assert!(out.nu.coeff.is_zero());
    }

    #[test]
    fn euler_bracket_identity() {
        // [x d/dx, (x-p)^-1 d/dx] = -2 (x-p)^-1 - p (x-p)^-2
        let r = RatCurveRing::new(vec![rat(3, 2)]).unwrap();
        let f = RatCurveField::new(RatCurveElement::parse(&r, "(x - 3/2)^-1").unwrap());
        let b = RatCurveField::euler(&f.coeff).bracket(&f).unwrap();
        let expected = RatCurveElement::parse(&r, "-2*(x-3/2)^-1 - 3/2*(x-3/2)^-2").unwrap();
        assert_eq!(b.coeff, expected);
    }

    #[test]
    fn field_text_round_trip() {
        let s = sp("x:a,t:t");
        let f = vf("x^2*d/dx + (1/2)*t^-1*d/dt", &s);
        assert_eq!(f.to_string(), "x^2*d/dx + 1/2*t^-1*d/dt");
        assert_eq!(vf(&f.to_string(), &s), f);
        let g = vf("-(x + t)*d/dt - d/dx", &s);
        assert_eq!(vf(&g.to_string(), &s), g);
        assert!(PTVectorField::parse("x*d/dx*d/dt", &s).is_err());
        assert!(PTVectorField::parse("x", &s).is_err());
    }
}
