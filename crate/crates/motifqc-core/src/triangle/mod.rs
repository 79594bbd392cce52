//! The triangle quality-control pipeline: arboricity and average-degree
//! screens followed by two threshold runs of the wedge-sampling estimator.
//! Triangle counts here are unlabeled, matching the pipeline's
//! `(1 - eps) C(n,3) p^3` threshold convention; conversions to the labeled
//! unit used elsewhere multiply by 3!.

pub mod estimator;
pub mod filters;

pub use estimator::{triangle_estimate, EstimateError, TriangleEstimate};
pub use filters::{
    arboricity_filter, avg_degree_filter, FilterContract, FilterOutcome,
    ARBORICITY_FILTER_CONTRACT, AVG_DEGREE_FILTER_CONTRACT, TRIANGLE_ESTIMATE_CONTRACT,
};

use rand_chacha::ChaCha8Rng;

use crate::oracle::QueryOracle;
use crate::testers::shared::Timer;
use crate::testers::verdict::{stage, FailingCheck, Verdict};
use crate::testers::{QualityTester, TesterError};

/// Default per-estimator-run cap on oracle operations (the pipeline's
/// step-timeout knob).
pub const DEFAULT_STEP_CAP: u64 = 1_000_000;

pub struct TriangleQuality {
    p: f64,
    eps: f64,
    step_cap: u64,
}

impl TriangleQuality {
    pub fn new(p: f64, eps: f64) -> Self {
        assert!(p > 0.0 && p < 1.0, "p must be in (0,1)");
        assert!(eps > 0.0 && eps < 1.0, "eps must be in (0,1)");
        TriangleQuality {
            p,
            eps,
            step_cap: DEFAULT_STEP_CAP,
        }
    }

    pub fn with_step_cap(mut self, cap: u64) -> Self {
        self.step_cap = cap;
        self
    }

    /// Unlabeled triangle expectation `C(n,3) p^3`.
    pub fn mu3(&self, n: usize) -> f64 {
        let nf = n as f64;
        nf * (nf - 1.0) * (nf - 2.0) / 6.0 * self.p.powi(3)
    }
}

impl QualityTester for TriangleQuality {
    fn id(&self) -> &'static str {
        "triangle"
    }

    fn run(&self, oracle: &mut QueryOracle, rng: &mut ChaCha8Rng) -> Result<Verdict, TesterError> {
        let timer = Timer::start();
        let n = oracle.n();
        let np = n as f64 * self.p;

        // Step 1: arboricity screen at alpha = 2 n p.
        if let FilterOutcome::Reject { observed, low, high } = arboricity_filter(oracle, 2.0 * np) {
            return Ok(Verdict::reject(
                stage::ARBORICITY_FILTER,
                FailingCheck {
                    level: 1,
                    pattern: None,
                    observed,
                    low,
                    high,
                },
                oracle.counts(),
                timer.ms(),
            ));
        }

        // Step 2: average-degree screen.
        if let FilterOutcome::Reject { observed, low, high } =
            avg_degree_filter(oracle, self.p, rng)?
        {
            return Ok(Verdict::reject(
                stage::AVG_DEGREE_FILTER,
                FailingCheck {
                    level: 2,
                    pattern: None,
                    observed,
                    low,
                    high,
                },
                oracle.counts(),
                timer.ms(),
            ));
        }

        let mu3 = self.mu3(n);
        let t = (1.0 - self.eps) * mu3;
        let delta = self.eps / 4.0;

        // Step 3: reject when the estimate lands below t.
        let step3 = triangle_estimate(oracle, t, delta, rng, self.step_cap);
        let t_hat3 = match step3 {
            Ok(TriangleEstimate::BelowThreshold { t_hat }) => {
                return Ok(Verdict::reject(
                    stage::TRIANGLE_LOW,
                    FailingCheck {
                        level: 3,
                        pattern: None,
                        observed: t_hat,
                        low: t,
                        high: f64::INFINITY,
                    },
                    oracle.counts(),
                    timer.ms(),
                ));
            }
            Ok(TriangleEstimate::Estimate { t_hat }) => t_hat,
            Err(EstimateError::StepLimit(_)) => {
                return Ok(Verdict::reject(
                    stage::STEP_LIMIT,
                    FailingCheck {
                        level: 3,
                        pattern: None,
                        observed: self.step_cap as f64,
                        low: 0.0,
                        high: self.step_cap as f64,
                    },
                    oracle.counts(),
                    timer.ms(),
                ));
            }
            Err(EstimateError::Oracle(e)) => return Err(e.into()),
        };
        let _ = t_hat3;

        // Step 4: a fresh estimate, rejected when it overshoots.
        let step4 = triangle_estimate(oracle, t, delta, rng, self.step_cap);
        match step4 {
            Ok(est) => {
                let t_hat = est.value();
                let high = (1.0 + self.eps / 2.0) * mu3;
                if t_hat > high {
                    return Ok(Verdict::reject(
                        stage::TRIANGLE_HIGH,
                        FailingCheck {
                            level: 3,
                            pattern: None,
                            observed: t_hat,
                            low: 0.0,
                            high,
                        },
                        oracle.counts(),
                        timer.ms(),
                    ));
                }
            }
            Err(EstimateError::StepLimit(_)) => {
                return Ok(Verdict::reject(
                    stage::STEP_LIMIT,
                    FailingCheck {
                        level: 4,
                        pattern: None,
                        observed: self.step_cap as f64,
                        low: 0.0,
                        high: self.step_cap as f64,
                    },
                    oracle.counts(),
                    timer.ms(),
                ));
            }
            Err(EstimateError::Oracle(e)) => return Err(e.into()),
        }
        Ok(Verdict::accept(oracle.counts(), timer.ms()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::seeds::derive_rng;

    #[test]
    fn empty_graph_rejected_at_average_degree() {
        let g = Graph::empty(400);
        let tester = TriangleQuality::new(0.1, 0.3);
        let mut o = QueryOracle::new(&g);
        let mut rng = derive_rng(1, &[]);
        let v = tester.run(&mut o, &mut rng).unwrap();
        assert!(!v.is_accept());
        assert_eq!(v.stage.as_deref(), Some(stage::AVG_DEGREE_FILTER));
    }

    #[test]
    fn complete_graph_rejected_by_a_screen() {
        let g = Graph::complete(400);
        let tester = TriangleQuality::new(0.1, 0.3);
        let mut o = QueryOracle::new(&g);
        let mut rng = derive_rng(2, &[]);
        let v = tester.run(&mut o, &mut rng).unwrap();
        assert!(!v.is_accept());
        let s = v.stage.as_deref().unwrap();
        assert!(
            s == stage::ARBORICITY_FILTER || s == stage::AVG_DEGREE_FILTER,
            "unexpected stage {s}"
        );
    }

    #[test]
    fn screen_order_irrelevant_on_deterministic_extremes() {
        // On the empty and complete graphs both screens are deterministic,
        // so running them in either order gives the same decision.
        for g in [Graph::empty(300), Graph::complete(300)] {
            let o = QueryOracle::new(&g);
            let arb = arboricity_filter(&o, 2.0 * 300.0 * 0.1);
            let mut o2 = QueryOracle::new(&g);
            let mut rng = derive_rng(3, &[]);
            let avg = avg_degree_filter(&mut o2, 0.1, &mut rng).unwrap();
            let rejected_any = arb != FilterOutcome::Accept || avg != FilterOutcome::Accept;
            let rejected_any_swapped =
                avg != FilterOutcome::Accept || arb != FilterOutcome::Accept;
            assert_eq!(rejected_any, rejected_any_swapped);
            assert!(rejected_any, "extreme graphs must fail a screen");
        }
    }
}
