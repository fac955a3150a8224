//! Batch verification harness for `bracketwidth`: seeded property suites,
//! constructive replays, deterministic JSON reports and decomposition demos.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::thread;

use bracketwidth::exactpoly::VariableSpace;
use bracketwidth::rings::{CurveRing, DanRing, RatCurveRing};
use bracketwidth::sample::derive_seed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

pub mod demo;
mod suites;

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Bad ring parameters, unparsable input, or a request the library rejects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationError(pub String);

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ValidationError {}

impl From<bracketwidth::Error> for ValidationError {
    fn from(e: bracketwidth::Error) -> Self {
        ValidationError(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    TorusPoisson,
    Danielewski,
    Curve,
    Width1,
    RatCurve,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::TorusPoisson,
        Suite::Danielewski,
        Suite::Curve,
        Suite::Width1,
        Suite::RatCurve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TorusPoisson => "torus-poisson",
            Suite::Danielewski => "danielewski",
            Suite::Curve => "curve",
            Suite::Width1 => "width1",
            Suite::RatCurve => "ratcurve",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Everything that determines a report. Ring parameters left as `None`
/// take the documented defaults.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub degree_bound: u32,
    pub p: Option<String>,
    pub h: Option<String>,
    pub poles: Option<String>,
    pub space: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            samples: 100,
            degree_bound: 4,
            p: None,
            h: None,
            poles: None,
            space: None,
        }
    }
}

pub const DEFAULT_P: &str = "z^2 - 1";
pub const DEFAULT_H: &str = "x^3 - 1";
pub const DEFAULT_POLES: &str = "0,1";
pub const DEFAULT_SPACE: &str = "a:2,t:1";

/// Validated ring parameters.
#[derive(Clone, Debug)]
pub struct Params {
    pub dan: Arc<DanRing>,
    pub curve: Arc<CurveRing>,
    pub rat: Arc<RatCurveRing>,
    pub space: Arc<VariableSpace>,
}

impl Params {
    pub fn from_config(config: &SuiteConfig) -> Result<Self, ValidationError> {
        let p = config.p.as_deref().unwrap_or(DEFAULT_P);
        let h = config.h.as_deref().unwrap_or(DEFAULT_H);
        let poles = config.poles.as_deref().unwrap_or(DEFAULT_POLES);
        let space = config.space.as_deref().unwrap_or(DEFAULT_SPACE);
        let field = |name: &str, e: bracketwidth::Error| ValidationError(format!("--{name}: {e}"));
        Ok(Params {
            dan: DanRing::parse(p).map_err(|e| field("p", e))?,
            curve: CurveRing::parse(h).map_err(|e| field("h", e))?,
            rat: RatCurveRing::parse_poles(poles).map_err(|e| field("poles", e))?,
            space: VariableSpace::from_signature(space).map_err(|e| field("space", e))?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    pub status: Status,
    pub details: String,
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub params: Value,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites
            .iter()
            .flat_map(|s| &s.checks)
            .all(|c| c.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (mut total, mut ok) = (0, 0);
        for suite in &self.suites {
            writeln!(f, "suite {} {}", suite.name, suite.params)?;
            for c in &suite.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                };
                writeln!(f, "  {tag} {}: {}", c.id, c.details)?;
                if let Some(ce) = &c.counterexample {
                    writeln!(f, "       counterexample: {ce}")?;
                }
                total += 1;
                ok += usize::from(c.status == Status::Pass);
            }
        }
        write!(f, "{ok} of {total} checks passed (seed {})", self.seed)
    }
}

/// Named string inputs of one sample; the counterexample of a failure.
pub type Inputs = BTreeMap<String, String>;

type Generate = Box<dyn Fn(&mut ChaCha8Rng) -> Inputs + Send + Sync>;
type Evaluate = Box<dyn Fn(&Inputs) -> Result<String, String> + Send + Sync>;

/// A check draws inputs from its own seeded stream and evaluates them from
/// their textual form, so any recorded failure replays from the report.
pub struct Check {
    pub id: String,
    pub description: String,
    /// Single-shot checks ignore the sample count.
    pub single: bool,
    generate: Generate,
    evaluate: Evaluate,
}

impl Check {
    pub fn sampled(
        id: impl Into<String>,
        description: impl Into<String>,
        generate: impl Fn(&mut ChaCha8Rng) -> Inputs + Send + Sync + 'static,
        evaluate: impl Fn(&Inputs) -> Result<String, String> + Send + Sync + 'static,
    ) -> Self {
        Check {
            id: id.into(),
            description: description.into(),
            single: false,
            generate: Box::new(generate),
            evaluate: Box::new(evaluate),
        }
    }

    pub fn single(
        id: impl Into<String>,
        description: impl Into<String>,
        inputs: Inputs,
        evaluate: impl Fn(&Inputs) -> Result<String, String> + Send + Sync + 'static,
    ) -> Self {
        Check {
            id: id.into(),
            description: description.into(),
            single: true,
            generate: Box::new(move |_| inputs.clone()),
            evaluate: Box::new(evaluate),
        }
    }

    pub fn evaluate(&self, inputs: &Inputs) -> Result<String, String> {
        (self.evaluate)(inputs)
    }

    /// Runs all samples; stops at the first failure.
    pub fn run(&self, seed: u64, samples: usize) -> CheckResult {
        let n = if self.single { 1 } else { samples };
        let mut last = String::new();
        for i in 0..n {
            let sample_seed = derive_seed(seed, &self.id, i as u64);
            let inputs = (self.generate)(&mut ChaCha8Rng::seed_from_u64(sample_seed));
            match self.evaluate(&inputs) {
                Ok(d) => last = d,
                Err(msg) => {
                    return CheckResult {
                        id: self.id.clone(),
                        description: self.description.clone(),
                        status: Status::Fail,
                        details: format!("sample {i}: {msg}"),
                        counterexample: Some(json!({
                            "sample": i,
                            "sample_seed": sample_seed,
                            "inputs": inputs,
                        })),
                    };
                }
            }
        }
        let details = match (self.single, last.is_empty()) {
            (true, _) => last,
            (false, true) => format!("{n} samples"),
            (false, false) => format!("{n} samples; {last}"),
        };
        CheckResult {
            id: self.id.clone(),
            description: self.description.clone(),
            status: Status::Pass,
            details,
            counterexample: None,
        }
    }
}

/// The checks of `suite` together with its `params` object.
pub fn suite_checks(suite: Suite, params: &Params, config: &SuiteConfig) -> (Value, Vec<Check>) {
    let common = json!({ "samples": config.samples, "degree_bound": config.degree_bound });
    let (mut extra, checks) = match suite {
        Suite::TorusPoisson => (json!({}), suites::torus(config.degree_bound)),
        Suite::Danielewski => (
            json!({ "p": params.dan.p().to_string() }),
            suites::danielewski(&params.dan, config.degree_bound),
        ),
        Suite::Curve => (
            json!({ "h": params.curve.h_polynomial().to_string(), "genus": params.curve.genus() }),
            suites::curve(&params.curve, config.degree_bound),
        ),
        Suite::Width1 => (
            json!({ "space": params.space.signature() }),
            suites::width1(&params.space, config.degree_bound),
        ),
        Suite::RatCurve => (
            json!({ "poles": params.rat.poles().iter().map(|q| q.to_string()).collect::<Vec<_>>() }),
            suites::ratcurve(&params.rat, config.degree_bound),
        ),
    };
    let obj = extra.as_object_mut().expect("object");
    for (k, v) in common.as_object().expect("object") {
        obj.insert(k.clone(), v.clone());
    }
    (extra, checks)
}

/// Runs one suite; checks run concurrently and are collected in order.
pub fn run_suite(suite: Suite, params: &Params, config: &SuiteConfig) -> SuiteReport {
    let (params_obj, checks) = suite_checks(suite, params, config);
    let seed = derive_seed(config.seed, suite.name(), 0);
    let checks = thread::scope(|s| {
        let handles: Vec<_> = checks
            .iter()
            .map(|c| s.spawn(move || c.run(seed, config.samples)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    });
    SuiteReport {
        name: suite.name().to_string(),
        params: params_obj,
        checks,
    }
}

/// Runs the selected suites (all of them for `None`).
pub fn verify(suite: Option<Suite>, config: &SuiteConfig) -> Result<Report, ValidationError> {
    let params = Params::from_config(config)?;
    let selected: Vec<Suite> = match suite {
        Some(s) => vec![s],
        None => Suite::ALL.to_vec(),
    };
    Ok(Report {
        version: REPORT_VERSION.to_string(),
        seed: config.seed,
        suites: selected
            .into_iter()
            .map(|s| run_suite(s, &params, config))
            .collect(),
    })
}

/// Re-evaluates a recorded counterexample of check `id` in `suite`.
pub fn replay_counterexample(
    suite: Suite,
    config: &SuiteConfig,
    id: &str,
    inputs: &Inputs,
) -> Result<Result<String, String>, ValidationError> {
    let params = Params::from_config(config)?;
    let (_, checks) = suite_checks(suite, &params, config);
    let check = checks.iter().find(|c| c.id == id).ok_or_else(|| {
        ValidationError(format!("unknown check `{id}` in suite {}", suite.name()))
    })?;
    Ok(check.evaluate(inputs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_carry_replayable_counterexamples() {
        let check = Check::sampled(
            "toy.even",
            "drawn numbers are even",
            |rng| {
                use rand::Rng;
                Inputs::from([("n".to_string(), rng.gen_range(0..100u32).to_string())])
            },
            |inputs| {
                let n: u32 = inputs["n"].parse().unwrap();
                if n.is_multiple_of(2) {
                    Ok(String::new())
                } else {
                    Err(format!("{n} is odd"))
                }
            },
        );
        let r = check.run(5, 50);
        assert_eq!(r.status, Status::Fail);
        let ce = r.counterexample.unwrap();
        let inputs: Inputs = serde_json::from_value(ce["inputs"].clone()).unwrap();
        assert!(check.evaluate(&inputs).is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn bad_parameters_are_rejected() {
        for (h, p) in [("x^2", None), ("z^2", None), ("x^3 - 1", Some("(z-1)^2"))] {
            let config = SuiteConfig {
                h: Some(h.into()),
                p: p.map(Into::into),
                ..SuiteConfig::default()
            };
            assert!(Params::from_config(&config).is_err(), "{h} {p:?}");
        }
    }
}
