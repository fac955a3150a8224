use std::sync::Arc;

use bracketwidth::curves::{
    centralizer_check, coker_dimension, field_bracket, no_eigen_check, obstruction_certificate,
    ord_field, ord_inf, solve_tau_equation, tau_apply, Centralizer, TauSolution,
};
use bracketwidth::exactpoly::{Polynomial, Rational, VarKind, VariableSpace};
use bracketwidth::poisson::{
    codimension, div_dan, e_omega_member, ideal_reduction_torus, jac_localized, pb_dan, pb_torus,
    torus_space, width1_torus, width2_dan_deg2,
};
use bracketwidth::rings::{
    dan_localize, parse_rational, CurveElement, CurveRing, DanElement, DanRing, RatCurveElement,
    RatCurveRing,
};
use bracketwidth::sample;
use bracketwidth::vfields::{
    solve_bracket_affine, solve_bracket_divfree, solve_bracket_torus, solve_width2_ratcurve,
    vf_bracket, vf_divergence, PTVectorField, RatCurveField,
};

use crate::{Check, Inputs};

const TERMS: usize = 4;

fn inputs<const N: usize>(pairs: [(&str, String); N]) -> Inputs {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn field<'a>(inputs: &'a Inputs, key: &str) -> Result<&'a str, String> {
    inputs
        .get(key)
        .map(String::as_str)
        .ok_or_else(|| format!("missing input `{key}`"))
}

fn lib<T>(r: bracketwidth::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn torus_poly(inputs: &Inputs, key: &str) -> Result<Polynomial, String> {
    lib(Polynomial::parse(field(inputs, key)?, &torus_space()))
}

fn dan_el(ring: &Arc<DanRing>, inputs: &Inputs, key: &str) -> Result<DanElement, String> {
    lib(DanElement::parse(ring, field(inputs, key)?))
}

fn curve_el(ring: &Arc<CurveRing>, inputs: &Inputs, key: &str) -> Result<CurveElement, String> {
    lib(CurveElement::parse(ring, field(inputs, key)?))
}

fn rat_el(ring: &Arc<RatCurveRing>, inputs: &Inputs, key: &str) -> Result<RatCurveElement, String> {
    lib(RatCurveElement::parse(ring, field(inputs, key)?))
}

fn rational(inputs: &Inputs, key: &str) -> Result<Rational, String> {
    lib(parse_rational(field(inputs, key)?))
}

pub fn torus(degree: u32) -> Vec<Check> {
    let triple = move |rng: &mut rand_chacha::ChaCha8Rng| {
        inputs(["f", "g", "h"].map(|k| (k, sample::torus_element(rng, degree, TERMS).to_string())))
    };
    let reducible = move |rng: &mut rand_chacha::ChaCha8Rng| {
        inputs([("f", sample::torus_reducible(rng, degree, TERMS).to_string())])
    };
    vec![
        Check::sampled(
            "pb_torus.antisymmetry",
            "{f,g} + {g,f} = 0 on the symplectic torus",
            triple,
            |i| {
                let (f, g) = (torus_poly(i, "f")?, torus_poly(i, "g")?);
                let s = &lib(pb_torus(&f, &g))? + &lib(pb_torus(&g, &f))?;
                ensure(s.is_zero(), || format!("residual {s}"))?;
                Ok(String::new())
            },
        ),
        Check::sampled(
            "pb_torus.leibniz",
            "{f,gh} = {f,g}h + g{f,h}",
            triple,
            |i| {
                let (f, g, h) = (
                    torus_poly(i, "f")?,
                    torus_poly(i, "g")?,
                    torus_poly(i, "h")?,
                );
                let lhs = lib(pb_torus(&f, &(&g * &h)))?;
                let rhs = &(&lib(pb_torus(&f, &g))? * &h) + &(&g * &lib(pb_torus(&f, &h))?);
                let r = &lhs - &rhs;
                ensure(r.is_zero(), || format!("residual {r}"))?;
                Ok(String::new())
            },
        ),
        Check::sampled(
            "pb_torus.jacobi",
            "cyclic sum {f,{g,h}} vanishes",
            triple,
            |i| {
                let (f, g, h) = (
                    torus_poly(i, "f")?,
                    torus_poly(i, "g")?,
                    torus_poly(i, "h")?,
                );
                let b = |a: &Polynomial, c: &Polynomial| lib(pb_torus(a, c));
                let r = &(&b(&f, &b(&g, &h)?)? + &b(&g, &b(&h, &f)?)?) + &b(&h, &b(&f, &g)?)?;
                ensure(r.is_zero(), || format!("residual {r}"))?;
                Ok(String::new())
            },
        ),
        Check::sampled(
            "width1_torus.replay",
            "every f with zero constant term is one bracket {x^k y^l, g}",
            reducible,
            |i| {
                let f = torus_poly(i, "f")?;
                let w = lib(width1_torus(&f))?;
                let back = lib(w.replay())?;
                ensure(back == f, || {
                    format!("replay gave {back} with k={}, l={}", w.k, w.l)
                })?;
                Ok(String::new())
            },
        ),
        Check::sampled(
            "ideal_reduction_torus.chain",
            "a replayable bracket chain carries f to a nonzero multiple of x",
            reducible,
            |i| {
                let f = torus_poly(i, "f")?;
                let chain = lib(ideal_reduction_torus(&f))?;
                ensure(lib(chain.replay())?, || {
                    format!("chain of {} steps does not replay", chain.steps.len())
                })?;
                Ok(String::new())
            },
        ),
    ]
}

pub fn danielewski(ring: &Arc<DanRing>, degree: u32) -> Vec<Check> {
    let dp = ring.degree();
    let r = Arc::clone(ring);
    let triple = move |rng: &mut rand_chacha::ChaCha8Rng| {
        inputs(["f", "g", "h"].map(|k| {
            (
                k,
                sample::dan_element(rng, &r, degree, 3).to_raw().to_string(),
            )
        }))
    };
    let r = Arc::clone(ring);
    let member = move |rng: &mut rand_chacha::ChaCha8Rng| {
        inputs([(
            "e",
            sample::e_omega_element(rng, &r, degree, 3)
                .to_raw()
                .to_string(),
        )])
    };
    let mut checks = Vec::new();
    let r = Arc::clone(ring);
    checks.push(Check::sampled(
        "pb_dan.antisymmetry",
        "{f,g} + {g,f} = 0 on D_p",
        triple.clone(),
        move |i| {
            let (f, g) = (dan_el(&r, i, "f")?, dan_el(&r, i, "g")?);
            let s = lib(pb_dan(&f, &g))?.add(&lib(pb_dan(&g, &f))?);
            ensure(s.is_zero(), || format!("residual {}", s.to_raw()))?;
            Ok(String::new())
        },
    ));
    let r = Arc::clone(ring);
    checks.push(Check::sampled(
        "pb_dan.leibniz",
        "{f,gh} = {f,g}h + g{f,h} on D_p",
        triple.clone(),
        move |i| {
            let (f, g, h) = (
                dan_el(&r, i, "f")?,
                dan_el(&r, i, "g")?,
                dan_el(&r, i, "h")?,
            );
            let lhs = lib(pb_dan(&f, &g.mul(&h)))?;
            let rhs = lib(pb_dan(&f, &g))?
                .mul(&h)
                .add(&g.mul(&lib(pb_dan(&f, &h))?));
            let res = lhs.sub(&rhs);
            ensure(res.is_zero(), || format!("residual {}", res.to_raw()))?;
            Ok(String::new())
        },
    ));
    let r = Arc::clone(ring);
    checks.push(Check::sampled(
        "pb_dan.jacobi",
        "cyclic sum {f,{g,h}} vanishes on D_p",
        triple.clone(),
        move |i| {
            let (f, g, h) = (
                dan_el(&r, i, "f")?,
                dan_el(&r, i, "g")?,
                dan_el(&r, i, "h")?,
            );
            let b = |a: &DanElement, c: &DanElement| lib(pb_dan(a, c));
            let res = b(&f, &b(&g, &h)?)?
                .add(&b(&g, &b(&h, &f)?)?)
                .add(&b(&h, &b(&f, &g)?)?);
            ensure(res.is_zero(), || format!("residual {}", res.to_raw()))?;
            Ok(String::new())
        },
    ));
    let r = Arc::clone(ring);
    checks.push(Check::sampled(
        "jac_localized.identity",
        "the localized bracket equals x times the Jacobian in (x, z)",
        triple.clone(),
        move |i| {
            let (f, g) = (dan_el(&r, i, "f")?, dan_el(&r, i, "g")?);
            let x = lib(Polynomial::var(r.loc_space(), "x"))?;
            let lhs = dan_localize(&lib(pb_dan(&f, &g))?);
            let rhs = &x * &lib(jac_localized(&f, &g))?;
            ensure(lhs == rhs, || format!("{lhs} != {rhs}"))?;
            Ok(String::new())
        },
    ));
    let r = Arc::clone(ring);
    checks.push(Check::sampled(
        "e_omega.brackets",
        "every bracket lies in E_omega with a divergence witness",
        triple,
        move |i| {
            let (f, g) = (dan_el(&r, i, "f")?, dan_el(&r, i, "g")?);
            let e = lib(pb_dan(&f, &g))?;
            let m = e_omega_member(&e);
            let w = m
                .witness()
                .ok_or_else(|| format!("bracket {} rejected", e.to_raw()))?;
            ensure(div_dan(&w.preimage) == e, || {
                "witness does not replay".into()
            })?;
            Ok(String::new())
        },
    ));
    let r = Arc::clone(ring);
    checks.push(Check::sampled(
        "e_omega.members",
        "elements of x k[x,z] + y k[y,z] + (rp)' are accepted with replaying witnesses",
        member.clone(),
        move |i| {
            let e = dan_el(&r, i, "e")?;
            let m = e_omega_member(&e);
            let w = m
                .witness()
                .ok_or_else(|| format!("{} rejected", e.to_raw()))?;
            ensure(div_dan(&w.preimage) == e, || {
                "witness does not replay".into()
            })?;
            Ok(String::new())
        },
    ));
    let r = Arc::clone(ring);
    checks.push(Check::single(
        "e_omega.constant",
        "the constant 1 is not a divergence",
        inputs([("e", "1".to_string())]),
        move |i| {
            let e = dan_el(&r, i, "e")?;
            match e_omega_member(&e).witness() {
                Some(_) => Err(format!("{} accepted", e.to_raw())),
                None => Ok(format!("{} rejected", e.to_raw())),
            }
        },
    ));
    let r = Arc::clone(ring);
    checks.push(Check::single(
        "e_omega.codimension",
        "E_omega has codimension deg p - 1 in O(D_p)",
        inputs([("truncation", (2 * dp).to_string())]),
        move |i| {
            let d: usize = field(i, "truncation")?
                .parse()
                .map_err(|e| format!("truncation: {e}"))?;
            let c = lib(codimension(&r, d))?;
            ensure(c.codim == dp - 1, || {
                format!(
                    "codimension {} at truncation {d}, expected {}",
                    c.codim,
                    dp - 1
                )
            })?;
            Ok(format!("codimension {} (rank {} of {d})", c.codim, c.rank))
        },
    ));
    if dp == 2 {
        let r = Arc::clone(ring);
        checks.push(Check::sampled(
            "width2_dan.replay",
            "every element of E_omega is {g, z+a} + {x, y r}",
            member,
            move |i| {
                let e = dan_el(&r, i, "e")?;
                let w = lib(width2_dan_deg2(&e))?;
                let back = lib(w.replay())?;
                ensure(back == e, || format!("replay gave {}", back.to_raw()))?;
                Ok(String::new())
            },
        ));
    }
    checks
}

pub fn curve(ring: &Arc<CurveRing>, degree: u32) -> Vec<Check> {
    let d = degree as usize;
    let g = ring.genus();
    let r = Arc::clone(ring);
    let pair = move |rng: &mut rand_chacha::ChaCha8Rng| {
        inputs(["f", "g"].map(|k| (k, sample::curve_element(rng, &r, d).to_string())))
    };
    let r = Arc::clone(ring);
    let distinct_orders = move |rng: &mut rand_chacha::ChaCha8Rng| loop {
        let f = sample::nonzero_curve_element(rng, &r, d);
        let g = sample::nonzero_curve_element(rng, &r, d);
        if ord_inf(&f) != ord_inf(&g) {
            return inputs([("f", f.to_string()), ("g", g.to_string())]);
        }
    };
    let r = Arc::clone(ring);
    let with_scalar = move |rng: &mut rand_chacha::ChaCha8Rng| {
        let f = sample::nonzero_curve_element(rng, &r, d);
        let g = sample::nonzero_curve_element(rng, &r, d);
        let l = sample::nonzero_rational(rng);
        inputs([
            ("f", f.to_string()),
            ("g", g.to_string()),
            ("lambda", l.to_string()),
        ])
    };
    let mut checks = Vec::new();
    let r = Arc::clone(ring);
    checks.push(Check::sampled(
        "tau.derivation",
        "tau(fg) = tau(f) g + f tau(g)",
        pair.clone(),
        move |i| {
            let (f, g) = (curve_el(&r, i, "f")?, curve_el(&r, i, "g")?);
            let lhs = tau_apply(&f.mul(&g));
            let rhs = tau_apply(&f).mul(&g).add(&f.mul(&tau_apply(&g)));
            ensure(lhs == rhs, || format!("{lhs} != {rhs}"))?;
            Ok(String::new())
        },
    ));
    let r = Arc::clone(ring);
    checks.push(Check::sampled(
        "ord.valuation",
        "ord(fg) = ord f + ord g and ord(f+g) >= min",
        pair.clone(),
        move |i| {
            let (f, g) = (curve_el(&r, i, "f")?, curve_el(&r, i, "g")?);
            ensure(ord_inf(&f.mul(&g)) == ord_inf(&f) + ord_inf(&g), || {
                "product law".into()
            })?;
            ensure(ord_inf(&f.add(&g)) >= ord_inf(&f).min(ord_inf(&g)), || {
                "ultrametric law".into()
            })?;
            Ok(String::new())
        },
    ));
    let r = Arc::clone(ring);
    checks.push(Check::sampled(
        "certificate.no_tau",
        "obstruction certificates conclude and the bracket never equals tau",
        pair,
        move |i| {
            let (f, g) = (curve_el(&r, i, "f")?, curve_el(&r, i, "g")?);
            let c = lib(obstruction_certificate(&f, &g))?;
            ensure(c.is_consistent(), || {
                format!("inconsistent certificate {c}")
            })?;
            ensure(c.bracket_is_not_tau, || "bracket equals tau".into())?;
            Ok(String::new())
        },
    ));
    let r = Arc::clone(ring);
    checks.push(Check::sampled(
        "ord.bracket_law",
        "ord [f tau, g tau] = ord(f tau) + ord(g tau) - 1 when ord f != ord g",
        distinct_orders,
        move |i| {
            let (f, g) = (curve_el(&r, i, "f")?, curve_el(&r, i, "g")?);
            let b = lib(field_bracket(&f, &g))?;
            let (lhs, rhs) = (ord_field(&b), (ord_field(&f) + ord_field(&g)).offset(-1));
            ensure(lhs == rhs, || format!("{lhs} != {rhs}"))?;
            Ok(String::new())
        },
    ));
    let r = Arc::clone(ring);
    checks.push(Check::sampled(
        "centralizer.lines",
        "f tau and g tau commute only when g is a scalar multiple of f",
        with_scalar.clone(),
        move |i| {
            let (f, g, l) = (
                curve_el(&r, i, "f")?,
                curve_el(&r, i, "g")?,
                rational(i, "lambda")?,
            );
            match lib(centralizer_check(&f, &g))? {
                Centralizer::Proportional(m) => ensure(g == f.scale(&m), || {
                    format!("proportional with {m} but g != {m} f")
                })?,
                Centralizer::Independent(w) => ensure(!w.is_zero(), || "zero bracket".into())?,
            }
            let fl = f.scale(&l);
            ensure(
                lib(centralizer_check(&f, &fl))? == Centralizer::Proportional(l.clone()),
                || format!("f and {l} f not recognized as proportional"),
            )?;
            Ok(String::new())
        },
    ));
    let r = Arc::clone(ring);
    checks.push(Check::sampled(
        "no_eigen",
        "[f tau, g tau] != lambda g tau for nonzero lambda",
        with_scalar,
        move |i| {
            let (f, g, l) = (
                curve_el(&r, i, "f")?,
                curve_el(&r, i, "g")?,
                rational(i, "lambda")?,
            );
            let out = lib(no_eigen_check(&f, &g, &l))?;
            ensure(out.holds, || {
                format!("eigenvector found: bracket {}", out.bracket)
            })?;
            Ok(String::new())
        },
    ));
    let r = Arc::clone(ring);
    let gen_r = Arc::clone(ring);
    checks.push(Check::sampled(
        "tau.equation",
        "tau(F) = f is solved exactly for every image f",
        move |rng| inputs([("F", sample::curve_element(rng, &gen_r, d).to_string())]),
        move |i| {
            let big_f = curve_el(&r, i, "F")?;
            let f = tau_apply(&big_f);
            match solve_tau_equation(&f) {
                TauSolution::Solved(s) => {
                    ensure(tau_apply(&s) == f, || format!("tau({s}) != {f}"))?;
                    Ok(String::new())
                }
                TauSolution::NoSolution {
                    rank,
                    augmented_rank,
                } => Err(format!(
                    "image of {big_f} reported unsolvable (rank {rank} < {augmented_rank})"
                )),
            }
        },
    ));
    let r = Arc::clone(ring);
    checks.push(Check::single(
        "tau.cokernel",
        "the cokernel of tau has dimension 2g",
        inputs([("max_pole", (4 * g + 2).to_string())]),
        move |i| {
            let m: usize = field(i, "max_pole")?
                .parse()
                .map_err(|e| format!("max_pole: {e}"))?;
            let c = coker_dimension(&r, m);
            ensure(c == 2 * g, || {
                format!("cokernel {c} at max_pole {m}, expected {}", 2 * g)
            })?;
            Ok(format!("cokernel {c} at max_pole {m}"))
        },
    ));
    checks
}

pub fn width1(space: &Arc<VariableSpace>, degree: u32) -> Vec<Check> {
    let mut checks = Vec::new();
    let s = Arc::clone(space);
    let field_gen = move |rng: &mut rand_chacha::ChaCha8Rng| {
        inputs([("mu", sample::pt_field(rng, &s, degree, TERMS).to_string())])
    };
    for (name, kind) in space.iter() {
        let (name, s) = (name.to_string(), Arc::clone(space));
        checks.push(match kind {
            VarKind::Affine => Check::sampled(
                format!("affine.{name}"),
                format!("mu = [d/d{name}, delta] with delta solved by integration"),
                field_gen.clone(),
                move |i| {
                    let mu = lib(PTVectorField::parse(field(i, "mu")?, &s))?;
                    let delta = lib(solve_bracket_affine(&mu, &name))?;
                    let dx = lib(PTVectorField::partial(&s, &name))?;
                    let back = lib(vf_bracket(&dx, &delta))?;
                    ensure(back == mu, || format!("replay gave {back}"))?;
                    Ok(String::new())
                },
            ),
            VarKind::Laurent => Check::sampled(
                format!("torus.{name}"),
                format!("mu = [{name}^l d/d{name}, delta]"),
                field_gen.clone(),
                move |i| {
                    let mu = lib(PTVectorField::parse(field(i, "mu")?, &s))?;
                    let out = lib(solve_bracket_torus(&mu, &name))?;
                    let back = lib(vf_bracket(&lib(out.generator(&name))?, &out.delta))?;
                    ensure(back == mu, || {
                        format!("replay gave {back} with l = {}", out.l)
                    })?;
                    Ok(String::new())
                },
            ),
        });
    }
    let all_affine = space.iter().all(|(_, k)| k == VarKind::Affine);
    if space.len() >= 2 && all_affine {
        let (s, gen_s) = (Arc::clone(space), Arc::clone(space));
        let first = space.name(0).to_string();
        checks.push(Check::sampled(
            "divfree",
            format!("divergence-free mu = [d/d{first}, eta] with eta divergence free"),
            move |rng| {
                inputs([(
                    "mu",
                    sample::divfree_field(rng, &gen_s, degree, TERMS).to_string(),
                )])
            },
            move |i| {
                let mu = lib(PTVectorField::parse(field(i, "mu")?, &s))?;
                let eta = lib(solve_bracket_divfree(&mu))?;
                let dx = lib(PTVectorField::partial(&s, &first))?;
                let back = lib(vf_bracket(&dx, &eta))?;
                ensure(back == mu, || format!("replay gave {back}"))?;
                let div = vf_divergence(&eta);
                ensure(div.is_zero(), || format!("Div eta = {div}"))?;
                Ok(String::new())
            },
        ));
    }
    checks
}

pub fn ratcurve(ring: &Arc<RatCurveRing>, degree: u32) -> Vec<Check> {
    let d = degree as usize;
    let r = Arc::clone(ring);
    let fields = move |rng: &mut rand_chacha::ChaCha8Rng| {
        inputs(["a", "b", "c"].map(|k| (k, sample::ratcurve_element(rng, &r, d, 3).to_string())))
    };
    let r = Arc::clone(ring);
    let r2 = Arc::clone(ring);
    vec![
        Check::sampled(
            "width2.replay",
            "a d/dx = [d/dx, nu] + [x d/dx, delta]",
            fields.clone(),
            move |i| {
                let mu = RatCurveField::new(rat_el(&r, i, "a")?);
                let out = lib(solve_width2_ratcurve(&mu))?;
                let back = lib(RatCurveField::partial(&mu.coeff).bracket(&out.nu))?;
                let back =
                    lib(back.try_add(&lib(RatCurveField::euler(&mu.coeff).bracket(&out.delta))?))?;
                ensure(back == mu, || format!("replay gave {back}"))?;
                Ok(String::new())
            },
        ),
        Check::sampled(
            "bracket.jacobi",
            "antisymmetry and Jacobi for fields on the punctured line",
            fields,
            move |i| {
                let [a, b, c] = ["a", "b", "c"].map(|k| rat_el(&r2, i, k).map(RatCurveField::new));
                let (a, b, c) = (a?, b?, c?);
                let br = |u: &RatCurveField, v: &RatCurveField| lib(u.bracket(v));
                let anti = lib(br(&a, &b)?.try_add(&br(&b, &a)?))?;
                ensure(anti.coeff.is_zero(), || {
                    format!("antisymmetry residual {anti}")
                })?;
                let jac = lib(lib(br(&a, &br(&b, &c)?)?.try_add(&br(&b, &br(&c, &a)?)?))?
                    .try_add(&br(&c, &br(&a, &b)?)?))?;
                ensure(jac.coeff.is_zero(), || format!("Jacobi residual {jac}"))?;
                Ok(String::new())
            },
        ),
    ]
}
