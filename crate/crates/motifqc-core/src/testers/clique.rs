//! The sampling clique-count tester: one multiset, exact multiset clique
//! counts per level, flat `eps/2` acceptance bands.

use rand_chacha::ChaCha8Rng;

use crate::counting::count_cliques_weighted;
use crate::multiset::VertexMultiset;
use crate::oracle::QueryOracle;
use crate::params::{self, ParamTable, ScheduleError};
use crate::testers::shared::{check_band, sample_and_materialize, Timer};
use crate::testers::verdict::{stage, Verdict};
use crate::testers::{QualityTester, TesterError};

pub struct CliqueQuality {
    k: usize,
    p: f64,
    eps: f64,
    params: ParamTable,
    /// When set, level `ell` is checked against `(1 +- eps_{ell-1})` instead
    /// of the flat `(1 +- eps/2)` band. Experimental knob; the flat band is
    /// the printed algorithm.
    per_level_thresholds: bool,
}

impl CliqueQuality {
    pub fn new(k: usize, p: f64, eps: f64) -> Result<Self, ScheduleError> {
        Ok(CliqueQuality {
            k,
            p,
            eps,
            params: params::clique_schedule(k, p, eps)?,
            per_level_thresholds: false,
        })
    }

    /// Calibrated mode: override the sample size, keep the thresholds.
    pub fn with_s_star(mut self, s_star: u64) -> Self {
        self.params = self.params.with_s_star(s_star);
        self
    }

    pub fn with_per_level_thresholds(mut self, enabled: bool) -> Self {
        self.per_level_thresholds = enabled;
        self
    }

    pub fn params(&self) -> &ParamTable {
        &self.params
    }

    fn tolerance(&self, ell: usize) -> f64 {
        if self.per_level_thresholds {
            self.params.eps_at(ell - 1)
        } else {
            self.eps / 2.0
        }
    }

    /// The decision on an explicit multiset; `run` samples one and
    /// delegates here.
    pub fn test_with_multiset(
        &self,
        oracle: &mut QueryOracle,
        multiset: &VertexMultiset,
    ) -> Result<Verdict, TesterError> {
        let timer = Timer::start();
        let n = oracle.n();
        let s = multiset.len() as u64;
        let sub = oracle.induced_on(multiset)?;
        for ell in 2..=self.k {
            let observed =
                count_cliques_weighted(&sub.graph, &sub.mults, ell).expect("k is capped") as f64;
            let expected = params::e_s_ell(s, ell, n, self.p);
            if let Some(check) =
                check_band(observed, expected, self.tolerance(ell), ell as u32, None)
            {
                return Ok(Verdict::reject(
                    stage::COUNT_CHECK,
                    check,
                    oracle.counts(),
                    timer.ms(),
                ));
            }
        }
        Ok(Verdict::accept(oracle.counts(), timer.ms()))
    }
}

impl QualityTester for CliqueQuality {
    fn id(&self) -> &'static str {
        "clique"
    }

    fn run(&self, oracle: &mut QueryOracle, rng: &mut ChaCha8Rng) -> Result<Verdict, TesterError> {
        let ms = VertexMultiset::sample(rng, oracle.n(), self.params.s_star as usize);
        self.test_with_multiset(oracle, &ms)
    }
}

/// The jumbledness-screened variant: materializes the sample, checks every
/// degree and codegree of the sampled subgraph against `(p, delta)` bands,
/// then compares exact clique counts of the distinct-vertex subgraph at the
/// `5 eps / 8` tolerance.
pub struct CliqueQualityEfficient {
    k: usize,
    p: f64,
    eps: f64,
    params: ParamTable,
}

impl CliqueQualityEfficient {
    pub fn new(k: usize, p: f64, eps: f64, c: f64) -> Result<Self, ScheduleError> {
        Ok(CliqueQualityEfficient {
            k,
            p,
            eps,
            params: params::efficient_schedule(k, p, eps, c)?,
        })
    }

    pub fn with_s_star(mut self, s_star: u64) -> Self {
        self.params = self.params.with_s_star(s_star);
        self
    }

    /// Calibrated jumbledness slack (the formula value is far below sampling
    /// noise at desk scale).
    pub fn with_delta(mut self, delta: f64) -> Self {
        self.params = self.params.with_delta(delta);
        self
    }

    pub fn params(&self) -> &ParamTable {
        &self.params
    }
}

impl QualityTester for CliqueQualityEfficient {
    fn id(&self) -> &'static str {
        "clique-efficient"
    }

    fn run(&self, oracle: &mut QueryOracle, rng: &mut ChaCha8Rng) -> Result<Verdict, TesterError> {
        let timer = Timer::start();
        let n = oracle.n();
        let s_star = self.params.s_star;
        let delta = self.params.delta_jumbled.expect("efficient table has delta");
        let sub = sample_and_materialize(oracle, rng, s_star)?;

        if let Some(check) = jumbledness_violation(&sub.graph, s_star, self.p, delta) {
            let (stage_name, check) = check;
            return Ok(Verdict::reject(
                stage_name,
                check,
                oracle.counts(),
                timer.ms(),
            ));
        }

        // Count on the distinct-vertex subgraph; the expectation uses the
        // realized distinct count, which coincides with the multiset formula
        // when duplicates are negligible.
        let d = sub.distinct_count() as u64;
        for ell in 2..=self.k {
            let observed = crate::counting::count_cliques(&sub.graph, ell).expect("k capped") as f64;
            let expected = params::e_s_ell(d, ell, n, self.p);
            if let Some(check) = check_band(
                observed,
                expected,
                5.0 * self.eps / 8.0,
                ell as u32,
                None,
            ) {
                return Ok(Verdict::reject(
                    stage::COUNT_CHECK,
                    check,
                    oracle.counts(),
                    timer.ms(),
                ));
            }
        }
        Ok(Verdict::accept(oracle.counts(), timer.ms()))
    }
}

/// Degree/codegree screening of a sampled subgraph: every degree must lie in
/// `(s-1)(p +- delta)` and every distinct-pair codegree in
/// `(s-2)(p^2 +- delta)`, with `s` the multiset size. Returns the first
/// violation. Shared with the non-induced motif tester.
pub(crate) fn jumbledness_violation(
    sub: &crate::graph::Graph,
    s_star: u64,
    p: f64,
    delta: f64,
) -> Option<(&'static str, crate::testers::verdict::FailingCheck)> {
    let s = s_star as f64;
    let deg_lo = (s - 1.0) * (p - delta);
    let deg_hi = (s - 1.0) * (p + delta);
    for u in 0..sub.n() as u32 {
        let d = sub.degree(u) as f64;
        if d < deg_lo || d > deg_hi {
            return Some((
                stage::JUMBLEDNESS_DEGREE,
                crate::testers::verdict::FailingCheck {
                    level: 1,
                    pattern: None,
                    observed: d,
                    low: deg_lo,
                    high: deg_hi,
                },
            ));
        }
    }
    let co_lo = (s - 2.0) * (p * p - delta);
    let co_hi = (s - 2.0) * (p * p + delta);
    let words = sub.n().div_ceil(64).max(1);
    let _ = words;
    for u in 0..sub.n() as u32 {
        for v in (u + 1)..sub.n() as u32 {
            let co = sub
                .row(u)
                .iter()
                .zip(sub.row(v))
                .map(|(a, b)| (a & b).count_ones() as u64)
                .sum::<u64>() as f64;
            if co < co_lo || co > co_hi {
                return Some((
                    stage::JUMBLEDNESS_CODEGREE,
                    crate::testers::verdict::FailingCheck {
                        level: 2,
                        pattern: None,
                        observed: co,
                        low: co_lo,
                        high: co_hi,
                    },
                ));
            }
        }
    }
    None
}
