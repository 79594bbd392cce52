//! Jumbledness-screened non-induced motif tester against G(n, p): the inner
//! engine of the efficient induced tester. One sample, a degree/codegree
//! screen at slack `p^(2 ceil(sigma)) / (12 C^2)`, then exact non-induced
//! counts of every sub-pattern on the distinct-vertex subgraph at the
//! `5 eps / 8` tolerance.

use rand_chacha::ChaCha8Rng;

use crate::counting::count_in_weighted_subgraph;
use crate::models;
use crate::motif::Motif;
use crate::oracle::QueryOracle;
use crate::params::{a_s_ell, ScheduleError};
use crate::testers::clique::jumbledness_violation;
use crate::testers::shared::{check_band, sample_and_materialize, Timer};
use crate::testers::verdict::{stage, Verdict};
use crate::testers::{QualityTester, TesterError};

pub struct NonInducedMotifQualityEfficient {
    motif: Motif,
    p: f64,
    eps: f64,
    c: f64,
    s_star_override: Option<u64>,
    delta_override: Option<f64>,
}

impl NonInducedMotifQualityEfficient {
    pub fn new(motif: Motif, p: f64, eps: f64, c: f64) -> Result<Self, ScheduleError> {
        if !(p > 0.0 && p <= 0.5) {
            return Err(ScheduleError::POutOfRange(p));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(ScheduleError::EpsOutOfRange(eps));
        }
        if !(c > 0.0) {
            return Err(ScheduleError::BadConstant(c));
        }
        Ok(NonInducedMotifQualityEfficient {
            motif,
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

    /// Paper-form sample size, driven by `sigma` of the motif:
    /// `1200 C^2 k^2 1024 / (p^(5 sigma) eps^2) * 8 ln((6k)^k / (p^C(k+2,2) eps))`.
    pub fn s_star_paper(&self) -> u64 {
        let k = self.motif.k();
        let sigma = self.motif.stats().sigma;
        let lead =
            1200.0 * self.c * self.c * (k * k) as f64 * 1024.0 / (self.p.powf(5.0 * sigma) * self.eps * self.eps);
        let pairs = ((k + 2) * (k + 1) / 2) as i32;
        let log_arg = (6.0 * k as f64).powi(k as i32) / (self.p.powi(pairs) * self.eps);
        (lead * 8.0 * log_arg.ln()).ceil() as u64
    }

    fn s_star(&self) -> u64 {
        self.s_star_override.unwrap_or_else(|| self.s_star_paper())
    }

    fn delta(&self) -> f64 {
        self.delta_override.unwrap_or_else(|| {
            let j = self.motif.stats().sigma.ceil();
            self.p.powf(2.0 * j) / (12.0 * self.c * self.c)
        })
    }
}

impl QualityTester for NonInducedMotifQualityEfficient {
    fn id(&self) -> &'static str {
        "motif-noninduced-efficient"
    }

    fn run(&self, oracle: &mut QueryOracle, rng: &mut ChaCha8Rng) -> Result<Verdict, TesterError> {
        let timer = Timer::start();
        let n = oracle.n();
        let s_star = self.s_star();
        let sub = sample_and_materialize(oracle, rng, s_star)?;

        if let Some((stage_name, check)) =
            jumbledness_violation(&sub.graph, s_star, self.p, self.delta())
        {
            return Ok(Verdict::reject(
                stage_name,
                check,
                oracle.counts(),
                timer.ms(),
            ));
        }

        let d = sub.distinct_count() as u64;
        let unit = vec![1u64; sub.graph.n()];
        for ell in 2..=self.motif.k() {
            let mut patterns = self.motif.subgraphs_on(ell);
            patterns.sort_by_key(|m| format!("{m}"));
            patterns.dedup();
            for pattern in patterns {
                let observed =
                    count_in_weighted_subgraph(&sub.graph, &unit, &pattern, false) as f64;
                let expected = models::expected_count_gnp_noninduced(&pattern, n, self.p)
                    * a_s_ell(d, ell, n);
                if let Some(check) = check_band(
                    observed,
                    expected,
                    5.0 * self.eps / 8.0,
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
