//! Quality control for bounded-fan-in graph parameters: every motif the
//! term decomposition can touch is checked with the efficient induced
//! tester. The driver is the same for all parameters with the same fan-in.

use rand_chacha::ChaCha8Rng;

use crate::motif::Motif;
use crate::oracle::QueryOracle;
use crate::testers::induced_efficient::InducedMotifQualityEfficient;
use crate::testers::nc0::{Nc0Error, Nc0Terms};
use crate::testers::shared::Timer;
use crate::testers::verdict::Verdict;
use crate::testers::{QualityTester, TesterError};

pub struct GraphParameterQuality {
    terms: Nc0Terms,
    p: f64,
    eps: f64,
    c: f64,
    s_star_override: Option<u64>,
    delta_override: Option<f64>,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GraphParameterBuildError {
    #[error(transparent)]
    Terms(#[from] Nc0Error),
    #[error(transparent)]
    Schedule(#[from] crate::params::ScheduleError),
}

impl GraphParameterQuality {
    pub fn new(
        terms: Nc0Terms,
        p: f64,
        eps: f64,
        c: f64,
    ) -> Result<Self, GraphParameterBuildError> {
        terms.check_support()?;
        // Validate the shared numeric parameters once up front.
        InducedMotifQualityEfficient::new(Motif::edge(), p, eps, c)?;
        Ok(GraphParameterQuality {
            terms,
            p,
            eps,
            c,
            s_star_override: None,
            delta_override: None,
        })
    }

    pub fn with_s_star(mut self, s_star: u64) -> Self {
        self.s_star_override = Some(s_star);
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta_override = Some(delta);
        self
    }

    /// The motifs covered: every edge set on up to `2 * max_pairs` labels.
    pub fn covered_motifs(&self) -> Vec<Motif> {
        let support = self.terms.support_bound().max(1);
        (1..=support).flat_map(Motif::enumerate_all).collect()
    }
}

impl QualityTester for GraphParameterQuality {
    fn id(&self) -> &'static str {
        "graph-parameter"
    }

    fn run(&self, oracle: &mut QueryOracle, rng: &mut ChaCha8Rng) -> Result<Verdict, TesterError> {
        let timer = Timer::start();
        for motif in self.covered_motifs() {
            let mut inner = InducedMotifQualityEfficient::new(motif, self.p, self.eps, self.c)?;
            if let Some(s) = self.s_star_override {
                inner = inner.with_s_star(s);
            }
            if let Some(d) = self.delta_override {
                inner = inner.with_delta(d);
            }
            let verdict = inner.run(oracle, rng)?;
            if !verdict.is_accept() {
                return Ok(Verdict {
                    wall_time_ms: timer.ms(),
                    queries: oracle.counts(),
                    ..verdict
                });
            }
        }
        Ok(Verdict::accept(oracle.counts(), timer.ms()))
    }
}
