//! Plumbing shared by the multiset-sampling testers.

use std::time::Instant;

use rand_chacha::ChaCha8Rng;

use crate::multiset::VertexMultiset;
use crate::oracle::{OracleError, QueryOracle, SampledSubgraph};
use crate::testers::verdict::FailingCheck;

pub(crate) struct Timer(Instant);

impl Timer {
    pub fn start() -> Self {
        Timer(Instant::now())
    }

    pub fn ms(&self) -> f64 {
        self.0.elapsed().as_secs_f64() * 1e3
    }
}

/// Draws a uniform multiset of size `s_star` (vertex sampling is free) and
/// materializes its induced subgraph through the oracle.
pub(crate) fn sample_and_materialize(
    oracle: &mut QueryOracle,
    rng: &mut ChaCha8Rng,
    s_star: u64,
) -> Result<SampledSubgraph, OracleError> {
    let ms = VertexMultiset::sample(rng, oracle.n(), s_star as usize);
    oracle.induced_on(&ms)
}

/// Checks `observed` against `(1 +- tol) * expected`, returning the failing
/// check on a miss.
pub(crate) fn check_band(
    observed: f64,
    expected: f64,
    tol: f64,
    level: u32,
    pattern: Option<String>,
) -> Option<FailingCheck> {
    let low = (1.0 - tol) * expected;
    let high = (1.0 + tol) * expected;
    if observed < low || observed > high {
        Some(FailingCheck {
            level,
            pattern,
            observed,
            low,
            high,
        })
    } else {
        None
    }
}
