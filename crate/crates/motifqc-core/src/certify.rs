//! Empirical certification: exponentially robust quasirandomness estimation
//! and jumbledness verification, both exhaustive and via degree/codegree
//! conditions.

use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::counting::count_in_weighted_subgraph;
use crate::dist::DistributionTable;
use crate::graph::Graph;
use crate::motif::Motif;
use crate::multiset::VertexMultiset;

#[derive(Debug, Error, PartialEq)]
pub enum CertifyError {
    #[error("exhaustive jumbledness scan limited to n <= {1}, got n = {0}")]
    TooLarge(usize, usize),
    #[error("no expectation available for pattern {0}")]
    MissingExpectation(Motif),
}

/// Parameters of one empirical quasirandomness certification run: the
/// pattern, the tolerance `eps'`, the decay rate `alpha`, the minimum
/// multiset size, and the Monte Carlo trial count.
#[derive(Debug, Clone)]
pub struct QuasiSpec {
    pub pattern: Motif,
    pub tolerance: f64,
    pub rate: f64,
    pub min_multiset: u64,
    pub trials: usize,
}

impl QuasiSpec {
    pub fn validate(&self) {
        assert!(self.tolerance > 0.0, "tolerance must be positive");
        assert!(self.rate > 0.0, "rate must be positive");
        assert!(self.trials >= 100, "at least 100 trials required");
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpQrReport {
    /// Fraction of sampled multisets whose count left the tolerance band.
    pub deviation_rate: f64,
    /// The claimed rate `4^(ell+1) exp(-alpha s)`.
    pub bound: f64,
    /// Binomial standard error of the measured rate.
    pub std_err: f64,
    /// `deviation_rate <= bound + 3 * std_err`.
    pub satisfied: bool,
}

/// Estimates the deviation probability of the pattern count over random
/// size-`s` multisets and compares it against the exponential-quasirandomness
/// rate.
pub fn empirical_exp_qr(
    g: &Graph,
    spec: &QuasiSpec,
    dist: &DistributionTable,
    s: u64,
    rng: &mut ChaCha8Rng,
) -> Result<ExpQrReport, CertifyError> {
    let rates = empirical_exp_qr_multi(g, spec, dist, s, &[spec.tolerance], rng)?;
    Ok(rates[0])
}

/// Same as [`empirical_exp_qr`] but evaluates several tolerances against the
/// same sampled multisets, so rates are directly comparable (and monotone in
/// the tolerance by construction of the experiment).
pub fn empirical_exp_qr_multi(
    g: &Graph,
    spec: &QuasiSpec,
    dist: &DistributionTable,
    s: u64,
    tolerances: &[f64],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<ExpQrReport>, CertifyError> {
    spec.validate();
    assert!(s >= spec.min_multiset, "s below the spec's minimum size");
    let expected = dist
        .multiset_expectation(&spec.pattern, s)
        .ok_or(CertifyError::MissingExpectation(spec.pattern))?;
    let ell = spec.pattern.k();
    let mut deviations = vec![0usize; tolerances.len()];
    for _ in 0..spec.trials {
        let ms = VertexMultiset::sample(rng, g.n(), s as usize);
        let (verts, mults) = ms.distinct_with_mults();
        let sub = g.induced_subgraph(&verts);
        let count = count_in_weighted_subgraph(&sub, &mults, &spec.pattern, true) as f64;
        for (i, &tol) in tolerances.iter().enumerate() {
            if (count - expected).abs() > tol * expected {
                deviations[i] += 1;
            }
        }
    }
    let bound = 4.0f64.powi(ell as i32 + 1) * (-spec.rate * s as f64).exp();
    Ok(deviations
        .into_iter()
        .map(|dev| {
            let rate = dev as f64 / spec.trials as f64;
            let std_err = (rate * (1.0 - rate) / spec.trials as f64).sqrt();
            ExpQrReport {
                deviation_rate: rate,
                bound,
                std_err,
                satisfied: rate <= bound + 3.0 * std_err,
            }
        })
        .collect())
}

/// Worst offender of a degree/codegree scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WorstOffender {
    Degree { vertex: u32, value: u32 },
    Codegree { pair: (u32, u32), value: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegCodegReport {
    pub pass: bool,
    pub worst: Option<WorstOffender>,
    /// Jumbledness parameter implied by a pass:
    /// `beta = n sqrt(3 delta) + sqrt(n (delta + p))`.
    pub implied_beta: f64,
}

/// Exhaustively checks that every degree lies in `(n-1)(p +- delta)` and
/// every distinct-pair codegree in `(n-2)(p^2 +- delta)`. Intended for
/// sampled subgraphs (the codegree loop is cubic).
pub fn jumbledness_deg_codeg(g: &Graph, p: f64, delta: f64) -> DegCodegReport {
    let n = g.n() as f64;
    let implied_beta = n * (3.0 * delta).sqrt() + (n * (delta + p)).sqrt();
    let deg_lo = (n - 1.0) * (p - delta);
    let deg_hi = (n - 1.0) * (p + delta);
    let mut worst: Option<(f64, WorstOffender)> = None;
    let mut consider = |excess: f64, off: WorstOffender| {
        if excess > 0.0 && worst.as_ref().is_none_or(|(w, _)| excess > *w) {
            worst = Some((excess, off));
        }
    };
    for u in 0..g.n() as u32 {
        let d = g.degree(u) as f64;
        let excess = (deg_lo - d).max(d - deg_hi);
        consider(
            excess,
            WorstOffender::Degree {
                vertex: u,
                value: g.degree(u),
            },
        );
    }
    let co_lo = (n - 2.0) * (p * p - delta);
    let co_hi = (n - 2.0) * (p * p + delta);
    for u in 0..g.n() as u32 {
        for v in (u + 1)..g.n() as u32 {
            let c = codegree(g, u, v);
            let cf = c as f64;
            let excess = (co_lo - cf).max(cf - co_hi);
            consider(
                excess,
                WorstOffender::Codegree {
                    pair: (u, v),
                    value: c,
                },
            );
        }
    }
    DegCodegReport {
        pass: worst.is_none(),
        worst: worst.map(|(_, o)| o),
        implied_beta,
    }
}

fn codegree(g: &Graph, u: u32, v: u32) -> u32 {
    let (ru, rv) = (g.row(u), g.row(v));
    ru.iter()
        .zip(rv)
        .map(|(a, b)| (a & b).count_ones())
        .sum()
}

/// Maximum host size for the exhaustive jumbledness scan (4^n subset pairs).
pub const EXHAUSTIVE_CAP: usize = 12;

/// The minimal `beta` such that `|e(X, Y) - p |X||Y|| <= beta sqrt(|X||Y|)`
/// over every pair of nonempty vertex subsets. `e(X, Y)` counts ordered
/// pairs `(x, y)` in `X x Y` with an edge between them, so edges inside the
/// overlap contribute twice; this is the convention under which the
/// degree/codegree sufficiency bound is provable.
pub fn jumbledness_exhaustive(g: &Graph, p: f64) -> Result<f64, CertifyError> {
    let n = g.n();
    if n > EXHAUSTIVE_CAP {
        return Err(CertifyError::TooLarge(n, EXHAUSTIVE_CAP));
    }
    // Row masks as plain u64 (n <= 12).
    let rows: Vec<u64> = (0..n as u32).map(|u| g.row(u)[0]).collect();
    let mut beta = 0.0f64;
    for x in 1u64..(1 << n) {
        let xs = x.count_ones() as f64;
        for y in 1u64..(1 << n) {
            let mut e = 0u32;
            let mut bits = x;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                e += (rows[u] & y).count_ones();
            }
            let ys = y.count_ones() as f64;
            let dev = (e as f64 - p * xs * ys).abs() / (xs * ys).sqrt();
            beta = beta.max(dev);
        }
    }
    Ok(beta)
}
