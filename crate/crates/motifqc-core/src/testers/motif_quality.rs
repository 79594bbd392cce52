//! The general-distribution motif tester: one multiset, and for every level
//! every sub-pattern of the target motif is checked against its multiset
//! expectation under the reference distribution.

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::counting::count_in_weighted_subgraph;
use crate::dist::DistributionTable;
use crate::motif::Motif;
use crate::oracle::QueryOracle;
use crate::params::{self, ScheduleError};
use crate::testers::shared::{check_band, sample_and_materialize, Timer};
use crate::testers::verdict::{stage, Verdict};
use crate::testers::{QualityTester, TesterError};

/// How the reference distribution's densities are produced at run time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dist", rename_all = "kebab-case")]
pub enum DistConfig {
    Gnp { p: f64 },
    Sbm { sizes: Vec<usize>, probs: Vec<Vec<f64>> },
}

pub struct MotifQuality {
    motif: Motif,
    dist: DistConfig,
    eps: f64,
    s_star_override: Option<u64>,
}

impl MotifQuality {
    pub fn new(motif: Motif, dist: DistConfig, eps: f64) -> Result<Self, ScheduleError> {
        // The G(n,p) standing assumption; densities themselves only need the
        // motif and p, so this is checkable at construction.
        if let DistConfig::Gnp { p } = dist {
            if !(p > 0.0 && p <= 0.5) {
                return Err(ScheduleError::POutOfRange(p));
            }
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(ScheduleError::EpsOutOfRange(eps));
        }
        Ok(MotifQuality {
            motif,
            dist,
            eps,
            s_star_override: None,
        })
    }

    pub fn with_s_star(mut self, s_star: u64) -> Self {
        self.s_star_override = Some(s_star);
        self
    }

    fn table(&self, n: usize) -> Result<DistributionTable, TesterError> {
        match &self.dist {
            DistConfig::Gnp { p } => Ok(DistributionTable::gnp(&self.motif, n, *p)),
            DistConfig::Sbm { sizes, probs } => {
                let total: usize = sizes.iter().sum();
                if total != n {
                    return Err(TesterError::SizeMismatch {
                        expected: total,
                        actual: n,
                    });
                }
                Ok(DistributionTable::sbm(&self.motif, sizes, probs)?)
            }
        }
    }
}

impl QualityTester for MotifQuality {
    fn id(&self) -> &'static str {
        "motif"
    }

    fn run(&self, oracle: &mut QueryOracle, rng: &mut ChaCha8Rng) -> Result<Verdict, TesterError> {
        let timer = Timer::start();
        let n = oracle.n();
        let table = self.table(n)?;
        let mut schedule = params::general_schedule(&self.motif, &table, self.eps)?;
        if let Some(s) = self.s_star_override {
            schedule = schedule.with_s_star(s);
        }
        let s_star = schedule.s_star;
        let sub = sample_and_materialize(oracle, rng, s_star)?;

        for ell in 2..=self.motif.k() {
            let mut patterns = self.motif.subgraphs_on(ell);
            // Repeated label subsets give identical checks; deduplicate.
            patterns.sort_by_key(|m| format!("{m}"));
            patterns.dedup();
            for pattern in patterns {
                let observed =
                    count_in_weighted_subgraph(&sub.graph, &sub.mults, &pattern, true) as f64;
                let expected = table
                    .multiset_expectation(&pattern, s_star)
                    .expect("table covers all sub-patterns");
                if let Some(check) = check_band(
                    observed,
                    expected,
                    self.eps / 2.0,
                    ell as u32,
                    Some(pattern.to_string()),
                ) {
                    return Ok(Verdict::reject(
                        stage::COUNT_CHECK,
                        check,
                        oracle.counts(),
                        timer.ms(),
                    ));
                }
            }
        }
        Ok(Verdict::accept(oracle.counts(), timer.ms()))
    }
}
