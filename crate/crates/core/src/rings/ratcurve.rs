//! Coordinate ring of the punctured line `A^1 \ {p_1, ..., p_n}` in
//! partial-fraction normal form
//! `poly(x) + sum_{i,j} c_ij (x - p_i)^-j`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, int, parse_expr, Evaluator, Rational, UniPoly};

#[derive(Debug, PartialEq)]
pub struct RatCurveRing {
    poles: Vec<Rational>,
}

impl RatCurveRing {
    pub fn new(poles: Vec<Rational>) -> Result<Arc<Self>> {
        for (i, p) in poles.iter().enumerate() {
            if poles[..i].contains(p) {
                return Err(Error::InvalidParameter(format!(
                    "pole {} declared twice",
                    format_rational(p)
                )));
            }
        }
        Ok(Arc::new(RatCurveRing { poles }))
    }

    /// Comma separated rationals, e.g. `"0,1,-1/2"`.
    pub fn parse_poles(csv: &str) -> Result<Arc<Self>> {
        let poles = csv
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(poles)
    }

    pub fn poles(&self) -> &[Rational] {
        &self.poles
    }

    pub fn pole_index(&self, p: &Rational) -> Option<usize> {
        self.poles.iter().position(|q| q == p)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Syntax(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

#[derive(Clone, Debug)]
pub struct RatCurveElement {
    ring: Arc<RatCurveRing>,
    poly: UniPoly,
    polar: BTreeMap<(usize, u32), Rational>,
}

impl PartialEq for RatCurveElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.poly == other.poly && self.polar == other.polar
    }
}

impl RatCurveElement {
    pub fn new(
        ring: &Arc<RatCurveRing>,
        poly: UniPoly,
        polar: impl IntoIterator<Item = ((usize, u32), Rational)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((i, j), c) in polar {
            if i >= ring.poles.len() {
                return Err(Error::UndeclaredPole);
            }
            if j == 0 {
                return Err(Error::InvalidParameter("pole order must be >= 1".into()));
            }
            let slot: &mut Rational = map.entry((i, j)).or_insert_with(Rational::zero);
            *slot += c;
        }
        map.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(RatCurveElement {
            ring: Arc::clone(ring),
            poly,
            polar: map,
        })
    }

    pub fn zero(ring: &Arc<RatCurveRing>) -> Self {
        RatCurveElement {
            ring: Arc::clone(ring),
            poly: UniPoly::zero(),
            polar: BTreeMap::new(),
        }
    }

    pub fn from_poly(ring: &Arc<RatCurveRing>, poly: UniPoly) -> Self {
        RatCurveElement {
            ring: Arc::clone(ring),
            poly,
            polar: BTreeMap::new(),
        }
    }

    /// `c (x - p_i)^-j`
    pub fn polar_term(ring: &Arc<RatCurveRing>, i: usize, j: u32, c: Rational) -> Result<Self> {
        Self::new(ring, UniPoly::zero(), [((i, j), c)])
    }

    pub fn ring(&self) -> &Arc<RatCurveRing> {
        &self.ring
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn polar(&self) -> &BTreeMap<(usize, u32), Rational> {
        &self.polar
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero() && self.polar.is_empty()
    }

    /// Coefficient of `(x - p_i)^-1`.
    pub fn simple_pole_coeff(&self, i: usize) -> Rational {
        self.polar
            .get(&(i, 1))
            .cloned()
            .unwrap_or_else(Rational::zero)
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
        let polar = self
            .polar
            .iter()
            .chain(&other.polar)
            .map(|(k, v)| (*k, v.clone()));
        Self::new(&self.ring, self.poly.add(&other.poly), polar)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    /// Product computed over the common denominator and decomposed again.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let (n1, e1) = self.to_fraction();
        let (n2, e2) = other.to_fraction();
        let exps: Vec<u32> = e1.iter().zip(&e2).map(|(a, b)| a + b).collect();
        ratcurve_normalize_idx(&self.ring, &n1.mul(&n2), &exps)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other)
            .expect("elements of different punctured lines")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other)
            .expect("elements of different punctured lines")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other)
            .expect("elements of different punctured lines")
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let polar = self.polar.iter().map(|(key, v)| (*key, v * k));
        Self::new(&self.ring, self.poly.scale(k), polar).unwrap()
    }

    /// `d/dx`; stays in normal form term by term.
    pub fn derivative(&self) -> Self {
        let polar = self
            .polar
            .iter()
            .map(|(&(i, j), c)| ((i, j + 1), -c * int(j as i64)));
        Self::new(&self.ring, self.poly.derivative(), polar).unwrap()
    }

    /// Antiderivative with no constant term; fails on simple poles (their
    /// primitive is a logarithm).
    pub fn antiderivative(&self) -> Result<Self> {
        if self.polar.keys().any(|&(_, j)| j == 1) {
            return Err(Error::NonIntegrable("x".into()));
        }
        let polar = self
            .polar
            .iter()
            .map(|(&(i, j), c)| ((i, j - 1), c / int(1 - j as i64)));
        Self::new(&self.ring, self.poly.integral(), polar)
    }

    /// Numerator `N` and exponents `e_i` with
    /// `self = N / prod (x - p_i)^{e_i}`.
    pub fn to_fraction(&self) -> (UniPoly, Vec<u32>) {
        let n = self.ring.poles.len();
        let mut exps = vec![0u32; n];
        for &(i, j) in self.polar.keys() {
            exps[i] = exps[i].max(j);
        }
        let den = denominator(&self.ring, &exps);
        let mut num = self.poly.mul(&den);
        for (&(i, j), c) in &self.polar {
            let mut factor = UniPoly::constant(c.clone());
            for (k, p) in self.ring.poles.iter().enumerate() {
                let e = if k == i { exps[k] - j } else { exps[k] };
                factor = factor.mul(&UniPoly::linear_root(p).pow(e));
            }
            num = num.add(&factor);
        }
        (num, exps)
    }

    /// Value at a rational point that is not a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let mut acc = self.poly.eval(x);
        for (&(i, j), c) in &self.polar {
            let d = x - &self.ring.poles[i];
            if d.is_zero() {
                return None;
            }
            acc += c * num_traits::pow(d.recip(), j as usize);
        }
        Some(acc)
    }

    /// Parses an expression in `x`; denominators must factor over the
    /// declared poles.
    pub fn parse(ring: &Arc<RatCurveRing>, text: &str) -> Result<Self> {
        let (num, den) = parse_expr(text)?.eval(&FractionEval)?;
        from_fraction(ring, &num, &den)
    }

    /// Highest pole order and polynomial degree, for bounding samples.
    pub fn max_order(&self) -> (usize, u32) {
        (
            self.poly.degree().unwrap_or(0),
            self.polar.keys().map(|&(_, j)| j).max().unwrap_or(0),
        )
    }
}

fn denominator(ring: &RatCurveRing, exps: &[u32]) -> UniPoly {
    ring.poles
        .iter()
        .zip(exps)
        .fold(UniPoly::constant(Rational::one()), |acc, (p, &e)| {
            acc.mul(&UniPoly::linear_root(p).pow(e))
        })
}

/// Partial-fraction decomposition of `numerator / prod (x - p)^e` with the
/// denominator given as `(pole value, exponent)` pairs.
pub fn ratcurve_normalize(
    ring: &Arc<RatCurveRing>,
    numerator: &UniPoly,
    denominator: &[(Rational, u32)],
) -> Result<RatCurveElement> {
    let mut exps = vec![0u32; ring.poles.len()];
    for (p, e) in denominator {
        let i = ring.pole_index(p).ok_or(Error::UndeclaredPole)?;
        exps[i] += e;
    }
    ratcurve_normalize_idx(ring, numerator, &exps)
}

fn ratcurve_normalize_idx(
    ring: &Arc<RatCurveRing>,
    numerator: &UniPoly,
    exps: &[u32],
) -> Result<RatCurveElement> {
    let den = denominator(ring, exps);
    let (poly, rem) = numerator.div_rem(&den);
    let mut polar = Vec::new();
    for (i, p) in ring.poles.iter().enumerate() {
        let e = exps[i];
        if e == 0 {
            continue;
        }
        let cofactor = den
            .exact_div(&UniPoly::linear_root(p).pow(e))
            .expect("factor of denominator");
        let series = rem
            .taylor_shift(p)
            .series_div(&cofactor.taylor_shift(p), e as usize);
        for (k, c) in series.into_iter().enumerate() {
            polar.push(((i, e - k as u32), c));
        }
    }
    RatCurveElement::new(ring, poly, polar)
}

/// Splits `den` over the declared poles and decomposes `num / den`.
pub fn from_fraction(
    ring: &Arc<RatCurveRing>,
    num: &UniPoly,
    den: &UniPoly,
) -> Result<RatCurveElement> {
    if den.is_zero() {
        return Err(Error::NotInvertible("0".into()));
    }
    let mut rest = den.clone();
    let mut exps = vec![0u32; ring.poles.len()];
    for (i, p) in ring.poles.iter().enumerate() {
        let lin = UniPoly::linear_root(p);
        while rest.degree().unwrap_or(0) > 0 {
            match rest.exact_div(&lin) {
                Some(q) => {
                    rest = q;
                    exps[i] += 1;
                }
                None => break,
            }
        }
    }
    if rest.degree() != Some(0) {
        return Err(Error::UndeclaredPole);
    }
    let lead = rest.leading().recip();
    ratcurve_normalize_idx(ring, &num.scale(&lead), &exps)
}

/// Evaluates expressions in `x` into reduced fractions of univariate
/// polynomials.
struct FractionEval;

fn reduce(num: UniPoly, den: UniPoly) -> (UniPoly, UniPoly) {
    let g = num.gcd(&den);
    if g.degree().unwrap_or(0) == 0 {
        return (num, den);
    }
    (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
}

impl Evaluator for FractionEval {
    type Value = (UniPoly, UniPoly);

    fn int(&self, n: &BigInt) -> Result<Self::Value> {
        Ok((
            UniPoly::constant(Rational::from_integer(n.clone())),
            UniPoly::constant(Rational::one()),
        ))
    }

    fn var(&self, name: &str) -> Result<Self::Value> {
        if name != "x" {
            return Err(Error::UnknownVariable(name.to_string()));
        }
        Ok((
            UniPoly::linear_root(&Rational::zero()),
            UniPoly::constant(Rational::one()),
        ))
    }

    fn neg(&self, (n, d): Self::Value) -> Result<Self::Value> {
        Ok((n.scale(&-Rational::one()), d))
    }

    fn add(&self, (n1, d1): Self::Value, (n2, d2): Self::Value) -> Result<Self::Value> {
        Ok(reduce(n1.mul(&d2).add(&n2.mul(&d1)), d1.mul(&d2)))
    }

    fn mul(&self, (n1, d1): Self::Value, (n2, d2): Self::Value) -> Result<Self::Value> {
        Ok(reduce(n1.mul(&n2), d1.mul(&d2)))
    }

    fn div(&self, (n1, d1): Self::Value, (n2, d2): Self::Value) -> Result<Self::Value> {
        if n2.is_zero() {
            return Err(Error::NotInvertible("0".into()));
        }
        Ok(reduce(n1.mul(&d2), d1.mul(&n2)))
    }

    fn pow(&self, (n, d): Self::Value, e: i64) -> Result<Self::Value> {
        let k = u32::try_from(e.unsigned_abs())
            .map_err(|_| Error::Syntax("exponent out of range".into()))?;
        if e >= 0 {
            Ok((n.pow(k), d.pow(k)))
        } else if n.is_zero() {
            Err(Error::NotInvertible("0".into()))
        } else {
            Ok((d.pow(k), n.pow(k)))
        }
    }
}

fn format_pole(p: &Rational) -> String {
    if p.is_zero() {
        "x".to_string()
    } else if p.is_negative() {
        format!("(x + {})", format_rational(&-p.clone()))
    } else {
        format!("(x - {})", format_rational(p))
    }
}

impl fmt::Display for RatCurveElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.poly.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                k => format!("x^{k}"),
            };
            parts.push((c.is_negative(), with_coeff(&c.abs(), &mono)));
        }
        for (&(i, j), c) in &self.polar {
            let mono = format!("{}^-{}", format_pole(&self.ring.poles[i]), j);
            parts.push((c.is_negative(), with_coeff(&c.abs(), &mono)));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (n, (neg, s)) in parts.iter().enumerate() {
            match (n, neg) {
                (0, true) => write!(f, "-{s}")?,
                (0, false) => write!(f, "{s}")?,
                (_, true) => write!(f, " - {s}")?,
                (_, false) => write!(f, " + {s}")?,
            }
        }
        Ok(())
    }
}

fn with_coeff(c: &Rational, mono: &str) -> String {
    if mono.is_empty() {
        format_rational(c)
    } else if c.is_one() {
        mono.to_string()
    } else {
        format!("{}*{}", format_rational(c), mono)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn ring(poles: &str) -> Arc<RatCurveRing> {
        RatCurveRing::parse_poles(poles).unwrap()
    }

    fn up(v: &[i64]) -> UniPoly {
        UniPoly::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn decomposition_examples() {
        let r = ring("0,1");
        // 1/(x(x-1)) = -1/x + 1/(x-1)
        let e = ratcurve_normalize(&r, &up(&[1]), &[(int(0), 1), (int(1), 1)]).unwrap();
        assert_eq!(e.polar().get(&(0, 1)), Some(&int(-1)));
        assert_eq!(e.polar().get(&(1, 1)), Some(&int(1)));
        assert!(e.poly().is_zero());

        // x^2/(x-1) = x + 1 + 1/(x-1)
        let e = ratcurve_normalize(&r, &up(&[0, 0, 1]), &[(int(1), 1)]).unwrap();
        assert_eq!(e.poly(), &up(&[1, 1]));
        assert_eq!(e.polar().len(), 1);
        assert_eq!(e.simple_pole_coeff(1), int(1));

        let e = ratcurve_normalize(&r, &up(&[0, 0, 0, 1]), &[]).unwrap();
        assert_eq!(e.poly(), &up(&[0, 0, 0, 1]));

        assert_eq!(
            ratcurve_normalize(&r, &up(&[1]), &[(int(2), 1)]),
            Err(Error::UndeclaredPole)
        );
    }

    #[test]
    fn parse_and_display() {
        let r = ring("0,1,-1/2");
        let e = RatCurveElement::parse(&r, "(x-1)^-1 + x^2 - 3/(x + 1/2)^2").unwrap();
        assert_eq!(e.to_string(), "x^2 + (x - 1)^-1 - 3*(x + 1/2)^-2");
        assert_eq!(RatCurveElement::parse(&r, &e.to_string()).unwrap(), e);
        assert_eq!(
            RatCurveElement::parse(&r, "1/(x-2)"),
            Err(Error::UndeclaredPole)
        );
        // cancellation removes the apparent pole
        let c = RatCurveElement::parse(&r, "(x^2 - 1)/(x - 1)").unwrap();
        assert_eq!(c.poly(), &up(&[1, 1]));
        assert!(c.polar().is_empty());
    }

    #[test]
    fn product_against_point_evaluation() {
        let r = ring("0,1");
        let a = RatCurveElement::parse(&r, "x^2 + 1/x^2 - 2/(x-1)").unwrap();
        let b = RatCurveElement::parse(&r, "3/x + 1/(x-1)^3 - x").unwrap();
        let ab = a.mul(&b);
        for t in [rat(1, 3), rat(-2, 1), rat(5, 7)] {
            assert_eq!(
                ab.eval(&t).unwrap(),
                a.eval(&t).unwrap() * b.eval(&t).unwrap()
            );
        }
    }

    #[test]
    fn calculus() {
        let r = ring("0");
        let e = RatCurveElement::parse(&r, "x^-2").unwrap();
        assert_eq!(
            e.antiderivative().unwrap(),
            RatCurveElement::parse(&r, "-x^-1").unwrap()
        );
        assert_eq!(e.antiderivative().unwrap().derivative(), e);
        assert!(RatCurveElement::parse(&r, "x^-1")
            .unwrap()
            .antiderivative()
            .is_err());
        assert!(RatCurveRing::parse_poles("0,0").is_err());
        assert!(RatCurveRing::parse_poles("1/0").is_err());
    }
}
