//! Wedge-sampling triangle estimator with Horvitz-Thompson scale-up.
//!
//! A degree prefix table of about `sqrt(n) log n` uniformly sampled vertices
//! stands in for exact degree sums. Each draw picks a table entry
//! proportional to its degree, draws two distinct random neighbors through
//! list queries, and closes the wedge with one matrix query; conditioned on
//! the table the estimator is exactly unbiased for the (unlabeled) triangle
//! count, and the table itself is unbiased over its uniform sample.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::oracle::{OracleError, QueryOracle};

#[derive(Debug, Error, PartialEq)]
pub enum EstimateError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("estimator exceeded the step cap of {0} oracle operations")]
    StepLimit(u64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TriangleEstimate {
    /// The final estimate landed below the threshold `t`.
    BelowThreshold { t_hat: f64 },
    Estimate { t_hat: f64 },
}

impl TriangleEstimate {
    pub fn value(&self) -> f64 {
        match self {
            TriangleEstimate::BelowThreshold { t_hat } | TriangleEstimate::Estimate { t_hat } => {
                *t_hat
            }
        }
    }
}

/// Estimates the unlabeled triangle count against threshold `t` with target
/// relative error `delta` (failure probability <= 1/10 whenever the true
/// count is at least `t/4`). `max_ops` caps the oracle operations this call
/// may spend.
pub fn triangle_estimate(
    oracle: &mut QueryOracle,
    t: f64,
    delta: f64,
    rng: &mut ChaCha8Rng,
    max_ops: u64,
) -> Result<TriangleEstimate, EstimateError> {
    assert!(t > 0.0 && delta > 0.0);
    let n = oracle.n();
    let start_ops = oracle.counts().total();
    let ops_used = |o: &QueryOracle| o.counts().total() - start_ops;

    // Degree prefix table.
    let m0 = ((n as f64).sqrt() * (n as f64).ln()).ceil().max(1.0) as usize;
    let mut degrees = Vec::with_capacity(m0);
    let mut prefix = Vec::with_capacity(m0);
    let mut total_deg = 0u64;
    for _ in 0..m0 {
        if ops_used(oracle) + 1 > max_ops {
            return Err(EstimateError::StepLimit(max_ops));
        }
        let u = rng.gen_range(0..n as u32);
        let d = oracle.degree(u)? as u64;
        degrees.push((u, d));
        total_deg += d;
        prefix.push(total_deg);
    }
    if total_deg == 0 {
        // No edges seen at all: estimate zero.
        return Ok(TriangleEstimate::BelowThreshold { t_hat: 0.0 });
    }
    let scale = n as f64 / m0 as f64;
    let d_hat = scale * total_deg as f64; // estimated degree sum
    let w_hat: f64 = scale
        * degrees
            .iter()
            .map(|&(_, d)| (d * d.saturating_sub(1) / 2) as f64)
            .sum::<f64>();
    if w_hat == 0.0 {
        return Ok(TriangleEstimate::BelowThreshold { t_hat: 0.0 });
    }

    // Enough wedge draws for relative error delta at the t/4 floor.
    let m = ((4.0 * w_hat / (3.0 * t)) * 4.0 / (delta * delta)).ceil().max(100.0) as u64;
    let mut sum_contrib = 0.0f64;
    for _ in 0..m {
        // table entry proportional to degree
        let target = rng.gen_range(0..total_deg);
        let idx = prefix.partition_point(|&acc| acc <= target);
        let (v, d) = degrees[idx];
        if d < 2 {
            continue; // no wedge at this vertex; contributes zero
        }
        if ops_used(oracle) + 3 > max_ops {
            return Err(EstimateError::StepLimit(max_ops));
        }
        let i1 = rng.gen_range(1..=d);
        let mut i2 = rng.gen_range(1..=d - 1);
        if i2 >= i1 {
            i2 += 1;
        }
        let a = oracle.neighbor(v, i1)?.expect("index within queried degree");
        let b = oracle.neighbor(v, i2)?.expect("index within queried degree");
        if oracle.pair(a, b)? {
            sum_contrib += d_hat * (d - 1) as f64 / 2.0;
        }
    }
    let t_hat = sum_contrib / m as f64 / 3.0;
    if t_hat < t {
        Ok(TriangleEstimate::BelowThreshold { t_hat })
    } else {
        Ok(TriangleEstimate::Estimate { t_hat })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_cliques;
    use crate::graph::Graph;
    use crate::models::{sample, ModelSpec};
    use crate::seeds::derive_rng;

    #[test]
    fn triangle_free_reports_below_threshold() {
        let g = Graph::cycle(50);
        let mut o = QueryOracle::new(&g);
        let mut rng = derive_rng(1, &[]);
        match triangle_estimate(&mut o, 10.0, 0.25, &mut rng, 1_000_000).unwrap() {
            TriangleEstimate::BelowThreshold { t_hat } => assert_eq!(t_hat, 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn complete_graph_estimate_in_range() {
        // C3(K20) = C(20,3) = 1140 unlabeled triangles.
        let g = Graph::complete(20);
        let truth = (count_cliques(&g, 3).unwrap() / 6) as f64;
        let mut hits = 0;
        for seed in 0..20 {
            let mut o = QueryOracle::new(&g);
            let mut rng = derive_rng(seed, &[]);
            let est = triangle_estimate(&mut o, 100.0, 0.25, &mut rng, 10_000_000).unwrap();
            let v = est.value();
            if (v - truth).abs() <= 0.25 * truth {
                hits += 1;
            }
        }
        assert!(hits >= 18, "in range only {hits}/20");
    }

    #[test]
    fn gnp_estimate_tracks_truth() {
        let g = sample(&ModelSpec::Gnp { n: 500, p: 0.1 }, 3).unwrap();
        let truth = (count_cliques(&g, 3).unwrap() / 6) as f64;
        let t = 0.5 * truth;
        let mut hits = 0;
        for seed in 0..20 {
            let mut o = QueryOracle::new(&g);
            let mut rng = derive_rng(seed, &[11]);
            let est = triangle_estimate(&mut o, t, 0.25, &mut rng, 10_000_000).unwrap();
            if (est.value() - truth).abs() <= 0.25 * truth {
                hits += 1;
            }
        }
        assert!(hits >= 17, "in range only {hits}/20");
    }

    #[test]
    fn step_limit_trips() {
        let g = Graph::complete(50);
        let mut o = QueryOracle::new(&g);
        let mut rng = derive_rng(2, &[]);
        assert!(matches!(
            triangle_estimate(&mut o, 1.0, 0.1, &mut rng, 50),
            Err(EstimateError::StepLimit(50))
        ));
    }
}
