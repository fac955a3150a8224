//! Single-shot decompositions printed together with their replay line.

use std::fmt::Write as _;

use bracketwidth::exactpoly::Polynomial;
use bracketwidth::poisson::{div_dan, e_omega_member, torus_space, width1_torus, width2_dan_deg2};
use bracketwidth::rings::{DanElement, DanRing, RatCurveElement, RatCurveRing};
use bracketwidth::vfields::{solve_width2_ratcurve, RatCurveField};

use crate::{ValidationError, DEFAULT_P, DEFAULT_POLES};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Context {
    Dan,
    Torus,
    RatCurve,
}

impl Context {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "dan" | "danielewski" => Some(Context::Dan),
            "torus" => Some(Context::Torus),
            "ratcurve" => Some(Context::RatCurve),
            _ => None,
        }
    }
}

fn replay_line(out: &mut String, ok: bool) {
    let verdict = if ok { "OK" } else { "MISMATCH" };
    writeln!(out, "replay: = input: {verdict}").unwrap();
}

/// Decomposes `element` and returns the printed witness. The second value
/// is `false` when the replay does not reproduce the input.
pub fn decompose(
    context: Context,
    element: &str,
    p: Option<&str>,
    poles: Option<&str>,
) -> Result<(String, bool), ValidationError> {
    let mut out = String::new();
    let ok = match context {
        Context::Dan => {
            let ring = DanRing::parse(p.unwrap_or(DEFAULT_P))?;
            let e = DanElement::parse(&ring, element)?;
            writeln!(out, "D_p: x*y = {}", ring.p()).unwrap();
            writeln!(out, "input: {}", e.to_raw()).unwrap();
            if ring.degree() == 2 {
                let w = width2_dan_deg2(&e)?;
                writeln!(out, "input = {{g, z + a}} + {{x, y*r}}").unwrap();
                writeln!(out, "g = {}", w.g.to_raw()).unwrap();
                writeln!(out, "a = {}", w.a).unwrap();
                writeln!(out, "r = {}", w.r).unwrap();
                w.replay()? == e
            } else {
                let m = e_omega_member(&e);
                let w = m.witness().ok_or(bracketwidth::Error::NotInEOmega)?;
                writeln!(out, "input = Div(f theta_x + g theta_y + h theta_z)").unwrap();
                for (name, c) in ["f", "g", "h"].iter().zip(&w.coefficients) {
                    writeln!(out, "{name} = {}", c.to_raw()).unwrap();
                }
                writeln!(out, "r = {}", w.r).unwrap();
                div_dan(&w.preimage) == e
            }
        }
        Context::Torus => {
            let f = Polynomial::parse(element, &torus_space())?;
            let w = width1_torus(&f)?;
            writeln!(out, "input: {f}").unwrap();
            writeln!(out, "input = {{x^k y^l, g}}").unwrap();
            writeln!(out, "k = {}", w.k).unwrap();
            writeln!(out, "l = {}", w.l).unwrap();
            writeln!(out, "g = {}", w.g).unwrap();
            w.replay()? == f
        }
        Context::RatCurve => {
            let ring = RatCurveRing::parse_poles(poles.unwrap_or(DEFAULT_POLES))?;
            let mu = RatCurveField::new(RatCurveElement::parse(&ring, element)?);
            let w = solve_width2_ratcurve(&mu)?;
            writeln!(out, "input: {mu}").unwrap();
            writeln!(out, "input = [d/dx, nu] + [x*d/dx, delta]").unwrap();
            writeln!(out, "nu = {}", w.nu).unwrap();
            writeln!(out, "delta = {}", w.delta).unwrap();
            let back = RatCurveField::partial(&mu.coeff)
                .bracket(&w.nu)?
                .try_add(&RatCurveField::euler(&mu.coeff).bracket(&w.delta)?)?;
            back == mu
        }
    };
    replay_line(&mut out, ok);
    Ok((out, ok))
}
