//! The tester family. Every algorithm variant implements [`QualityTester`]
//! and is built by name from a [`TesterSpec`] through [`build`]; the CLI and
//! the experiment harness select variants at runtime this way.

pub mod clique;
pub mod graph_parameter;
pub mod induced_efficient;
pub mod motif_quality;
pub mod nc0;
pub(crate) mod shared;
pub mod noninduced;
pub mod verdict;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dist::DistError;
use crate::motif::Motif;
use crate::oracle::{OracleError, QueryOracle};
use crate::params::ScheduleError;

pub use clique::{CliqueQuality, CliqueQualityEfficient};
pub use graph_parameter::{GraphParameterBuildError, GraphParameterQuality};
pub use induced_efficient::InducedMotifQualityEfficient;
pub use motif_quality::{DistConfig, MotifQuality};
pub use nc0::{nc0_decompose, nc0_evaluate, Nc0Error, Nc0Term, Nc0Terms, PairLiteral};
pub use noninduced::NonInducedMotifQualityEfficient;
pub use verdict::{stage, Decision, FailingCheck, Verdict};

#[derive(Debug, Error, PartialEq)]
pub enum TesterError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Terms(#[from] Nc0Error),
    #[error("tester configured for {expected} vertices, oracle has {actual}")]
    SizeMismatch { expected: usize, actual: usize },
}

impl TesterError {
    /// True when the failure was the oracle budget running out (mapped to a
    /// default decision by the sweep harness, surfaced as exit code 3 by the
    /// CLI).
    pub fn is_budget_exhausted(&self) -> bool {
        matches!(
            self,
            TesterError::Oracle(OracleError::BudgetExhausted { .. })
        )
    }
}

impl From<GraphParameterBuildError> for TesterError {
    fn from(e: GraphParameterBuildError) -> Self {
        match e {
            GraphParameterBuildError::Terms(t) => TesterError::Terms(t),
            GraphParameterBuildError::Schedule(s) => TesterError::Schedule(s),
        }
    }
}

/// A quality-control algorithm: consumes only an oracle and an RNG stream,
/// produces a [`Verdict`]. Implementations are deterministic given the
/// target graph and the RNG seed.
pub trait QualityTester: Send + Sync {
    /// Registry name of the variant.
    fn id(&self) -> &'static str;

    fn run(&self, oracle: &mut QueryOracle, rng: &mut ChaCha8Rng) -> Result<Verdict, TesterError>;
}

/// Serializable tester configuration; `build` turns one into a boxed
/// [`QualityTester`]. Optional `s_star` / `delta` fields are the calibrated
/// overrides; absent means paper-mode formulas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "alg", rename_all = "kebab-case")]
pub enum TesterSpec {
    Clique {
        k: usize,
        p: f64,
        eps: f64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        s_star: Option<u64>,
        #[serde(default)]
        per_level_thresholds: bool,
    },
    CliqueEfficient {
        k: usize,
        p: f64,
        eps: f64,
        #[serde(default = "default_c")]
        c: f64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        s_star: Option<u64>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        delta: Option<f64>,
    },
    Motif {
        motif: Motif,
        #[serde(flatten)]
        dist: DistConfig,
        eps: f64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        s_star: Option<u64>,
    },
    MotifEfficient {
        motif: Motif,
        p: f64,
        eps: f64,
        #[serde(default = "default_c")]
        c: f64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        s_star: Option<u64>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        delta: Option<f64>,
    },
    GraphParameter {
        terms: Nc0Terms,
        p: f64,
        eps: f64,
        #[serde(default = "default_c")]
        c: f64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        s_star: Option<u64>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        delta: Option<f64>,
    },
    Triangle {
        p: f64,
        eps: f64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        step_cap: Option<u64>,
    },
}

fn default_c() -> f64 {
    1.0
}

/// Names accepted by the registry, in the order they are documented.
pub fn names() -> &'static [&'static str] {
    &[
        "clique",
        "clique-efficient",
        "motif",
        "motif-efficient",
        "graph-parameter",
        "triangle",
    ]
}

/// Builds the tester a spec names. Construction validates numeric domains
/// (`p`, `eps`, fan-in caps); graph-size-dependent checks happen at run time.
pub fn build(spec: &TesterSpec) -> Result<Box<dyn QualityTester>, TesterError> {
    Ok(match spec.clone() {
        TesterSpec::Clique {
            k,
            p,
            eps,
            s_star,
            per_level_thresholds,
        } => {
            let mut t = CliqueQuality::new(k, p, eps)?.with_per_level_thresholds(per_level_thresholds);
            if let Some(s) = s_star {
                t = t.with_s_star(s);
            }
            Box::new(t)
        }
        TesterSpec::CliqueEfficient {
            k,
            p,
            eps,
            c,
            s_star,
            delta,
        } => {
            let mut t = CliqueQualityEfficient::new(k, p, eps, c)?;
            if let Some(s) = s_star {
                t = t.with_s_star(s);
            }
            if let Some(d) = delta {
                t = t.with_delta(d);
            }
            Box::new(t)
        }
        TesterSpec::Motif {
            motif,
            dist,
            eps,
            s_star,
        } => {
            let mut t = MotifQuality::new(motif, dist, eps)?;
            if let Some(s) = s_star {
                t = t.with_s_star(s);
            }
            Box::new(t)
        }
        TesterSpec::MotifEfficient {
            motif,
            p,
            eps,
            c,
            s_star,
            delta,
        } => {
            let mut t = InducedMotifQualityEfficient::new(motif, p, eps, c)?;
            if let Some(s) = s_star {
                t = t.with_s_star(s);
            }
            if let Some(d) = delta {
                t = t.with_delta(d);
            }
            Box::new(t)
        }
        TesterSpec::GraphParameter {
            terms,
            p,
            eps,
            c,
            s_star,
            delta,
        } => {
            let mut t = GraphParameterQuality::new(terms, p, eps, c)?;
            if let Some(s) = s_star {
                t = t.with_s_star(s);
            }
            if let Some(d) = delta {
                t = t.with_delta(d);
            }
            Box::new(t)
        }
        TesterSpec::Triangle { p, eps, step_cap } => {
            let mut t = crate::triangle::TriangleQuality::new(p, eps);
            if let Some(cap) = step_cap {
                t = t.with_step_cap(cap);
            }
            Box::new(t)
        }
    })
}
