//! Seeded generators for the graph distributions under test, plus exact
//! expectation formulas for motif counts under each.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::motif::Motif;
use crate::seeds;

/// Retry cap for the pairing-model regular-graph sampler. With naive
/// rejection the simple-graph probability decays like exp(-d^2/4), so
/// degrees beyond ~5 are impractical; callers wanting larger d need a
/// different sampler.
pub const D_REGULAR_MAX_ATTEMPTS: u32 = 1000;

const TAG_PLANTED: u64 = 0x706c_616e_7465_64; // "planted"
const TAG_DREG: u64 = 0x6472_6567; // "dreg"

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("probability {0} outside [0, 1]")]
    ProbOutOfRange(f64),
    #[error("block sizes must be nonempty and match the probability matrix")]
    BlockShape,
    #[error("probability matrix must be symmetric")]
    AsymmetricProbs,
    #[error("planted size {0} exceeds n = {1}")]
    PlantedTooLarge(usize, usize),
    #[error("d-regular needs d < n and d*n even (got n = {0}, d = {1})")]
    BadRegularSpec(usize, usize),
    #[error("pairing model failed to produce a simple graph in {D_REGULAR_MAX_ATTEMPTS} attempts")]
    RegularRetriesExceeded,
}

/// A graph distribution. Sampling is deterministic given a seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum ModelSpec {
    /// Erdos-Renyi: each pair independently with probability `p`.
    Gnp { n: usize, p: f64 },
    /// Stochastic block model; blocks occupy contiguous id ranges in order.
    /// `probs[a][b]` is the edge probability between blocks `a` and `b`.
    Sbm {
        sizes: Vec<usize>,
        probs: Vec<Vec<f64>>,
    },
    /// G(n, p) with all pairs inside a uniformly random `clique`-set forced
    /// to edges.
    PlantedClique { n: usize, p: f64, clique: usize },
    /// The two-block construction used as the motif lower-bound alternative:
    /// pairs clear of the planted set keep probability `p`, pairs touching
    /// it are resampled at 1/2. Equivalent to an SBM with sizes
    /// `(n - planted, planted)` and probabilities `(p, 1/2, 1/2)`.
    MotifNoDist { n: usize, p: f64, planted: usize },
    /// Pairing-model d-regular graph, rejected until simple.
    DRegular { n: usize, d: usize },
}

impl ModelSpec {
    pub fn n(&self) -> usize {
        match self {
            ModelSpec::Gnp { n, .. }
            | ModelSpec::PlantedClique { n, .. }
            | ModelSpec::MotifNoDist { n, .. }
            | ModelSpec::DRegular { n, .. } => *n,
            ModelSpec::Sbm { sizes, .. } => sizes.iter().sum(),
        }
    }

    /// Size of the planted structure, when the model has one. Used by the
    /// indistinguishability sweeps for the `2*q*ell/(n-ell)` bound.
    pub fn planted_size(&self) -> Option<usize> {
        match self {
            ModelSpec::PlantedClique { clique, .. } => Some(*clique),
            ModelSpec::MotifNoDist { planted, .. } => Some(*planted),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let check_p = |p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(ModelError::ProbOutOfRange(p))
            }
        };
        match self {
            ModelSpec::Gnp { p, .. } => check_p(*p),
            ModelSpec::Sbm { sizes, probs } => {
                if sizes.is_empty() || probs.len() != sizes.len() {
                    return Err(ModelError::BlockShape);
                }
                for row in probs {
                    if row.len() != sizes.len() {
                        return Err(ModelError::BlockShape);
                    }
                    for &p in row {
                        check_p(p)?;
                    }
                }
                for a in 0..probs.len() {
                    for b in 0..probs.len() {
                        if probs[a][b] != probs[b][a] {
                            return Err(ModelError::AsymmetricProbs);
                        }
                    }
                }
                Ok(())
            }
            ModelSpec::PlantedClique { n, p, clique } => {
                check_p(*p)?;
                if clique > n {
                    return Err(ModelError::PlantedTooLarge(*clique, *n));
                }
                Ok(())
            }
            ModelSpec::MotifNoDist { n, p, planted } => {
                check_p(*p)?;
                if planted > n {
                    return Err(ModelError::PlantedTooLarge(*planted, *n));
                }
                Ok(())
            }
            ModelSpec::DRegular { n, d } => {
                if *d >= *n || (*d * *n) % 2 != 0 {
                    return Err(ModelError::BadRegularSpec(*n, *d));
                }
                Ok(())
            }
        }
    }
}

/// Samples a graph from the model. Each pair's coin is a pure function of
/// `(seed, pair index)`, so the output is bit-identical for a given seed
/// regardless of scheduling.
pub fn sample(spec: &ModelSpec, seed: u64) -> Result<Graph, ModelError> {
    spec.validate()?;
    let n = spec.n();
    let nu = n as u64;
    Ok(match spec {
        ModelSpec::Gnp { p, .. } => {
            let p = *p;
            Graph::from_pair_fn(n, |u, v| {
                seeds::pair_coin(seed, seeds::pair_index(nu, u as u64, v as u64), p)
            })
        }
        ModelSpec::Sbm { sizes, probs } => sample_sbm(sizes, probs, seed),
        ModelSpec::PlantedClique { n, p, clique } => {
            let planted = choose_subset(seed, *n, *clique);
            let mut in_set = vec![false; *n];
            for &v in &planted {
                in_set[v as usize] = true;
            }
            let p = *p;
            Graph::from_pair_fn(*n, |u, v| {
                (in_set[u as usize] && in_set[v as usize])
                    || seeds::pair_coin(seed, seeds::pair_index(nu, u as u64, v as u64), p)
            })
        }
        ModelSpec::MotifNoDist { n, p, planted } => {
            let sizes = vec![n - planted, *planted];
            let probs = vec![vec![*p, 0.5], vec![0.5, 0.5]];
            sample_sbm(&sizes, &probs, seed)
        }
        ModelSpec::DRegular { n, d } => sample_d_regular(*n, *d, seed)?,
    })
}

fn sample_sbm(sizes: &[usize], probs: &[Vec<f64>], seed: u64) -> Graph {
    let n: usize = sizes.iter().sum();
    let nu = n as u64;
    let mut block_of = Vec::with_capacity(n);
    for (b, &sz) in sizes.iter().enumerate() {
        block_of.extend(std::iter::repeat(b).take(sz));
    }
    Graph::from_pair_fn(n, |u, v| {
        let p = probs[block_of[u as usize]][block_of[v as usize]];
        seeds::pair_coin(seed, seeds::pair_index(nu, u as u64, v as u64), p)
    })
}

/// A uniformly random size-`k` subset of `[n]`, by partial Fisher-Yates.
fn choose_subset(seed: u64, n: usize, k: usize) -> Vec<u32> {
    let mut rng = seeds::derive_rng(seed, &[TAG_PLANTED]);
    let mut ids: Vec<u32> = (0..n as u32).collect();
    let (chosen, _) = ids.partial_shuffle(&mut rng, k);
    let mut out = chosen.to_vec();
    out.sort_unstable();
    out
}

fn sample_d_regular(n: usize, d: usize, seed: u64) -> Result<Graph, ModelError> {
    for attempt in 0..D_REGULAR_MAX_ATTEMPTS {
        let mut rng = seeds::derive_rng(seed, &[TAG_DREG, attempt as u64]);
        let mut stubs: Vec<u32> = (0..n as u32).flat_map(|v| std::iter::repeat(v).take(d)).collect();
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(n * d / 2);
        let mut simple = true;
        let mut seen = std::collections::HashSet::with_capacity(n * d / 2);
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b {
                simple = false;
                break;
            }
            let key = if a < b { (a, b) } else { (b, a) };
            if !seen.insert(key) {
                simple = false;
                break;
            }
            edges.push(key);
        }
        if simple {
            return Ok(Graph::from_edges(n, &edges).expect("pairing produced a simple graph"));
        }
    }
    Err(ModelError::RegularRetriesExceeded)
}

fn falling_factorial(n: f64, k: usize) -> f64 {
    (0..k).map(|i| n - i as f64).product()
}

/// n-choose-k times k! as f64 (the number of ordered k-tuples).
pub fn ordered_tuples(n: usize, k: usize) -> f64 {
    falling_factorial(n as f64, k)
}

/// Expected labeled induced count of `h` under G(n, p):
/// `C(n,k) k! p^e (1-p)^(C(k,2)-e)`.
pub fn expected_count_gnp(h: &Motif, n: usize, p: f64) -> f64 {
    let k = h.k();
    let e = h.edge_count() as i32;
    let pairs = (k * (k - 1) / 2) as i32;
    ordered_tuples(n, k) * p.powi(e) * (1.0 - p).powi(pairs - e)
}

/// Non-induced variant: drops the (1-p) factor.
pub fn expected_count_gnp_noninduced(h: &Motif, n: usize, p: f64) -> f64 {
    ordered_tuples(n, h.k()) * p.powi(h.edge_count() as i32)
}

/// Exact expected labeled induced count of `h` under a general SBM: sum over
/// assignments of labels to blocks of (ways to pick distinct vertices) times
/// (probability the pattern is realized).
pub fn expected_count_sbm(h: &Motif, sizes: &[usize], probs: &[Vec<f64>]) -> Result<f64, ModelError> {
    ModelSpec::Sbm {
        sizes: sizes.to_vec(),
        probs: probs.to_vec(),
    }
    .validate()?;
    let k = h.k();
    let b = sizes.len();
    let mut total = 0.0f64;
    let mut assign = vec![0usize; k];
    loop {
        // ways to choose distinct vertices per block
        let mut counts = vec![0usize; b];
        for &a in &assign {
            counts[a] += 1;
        }
        let mut ways = 1.0f64;
        for (blk, &c) in counts.iter().enumerate() {
            ways *= falling_factorial(sizes[blk] as f64, c);
        }
        if ways > 0.0 {
            let mut prob = 1.0f64;
            for i in 0..k as u8 {
                for j in (i + 1)..k as u8 {
                    let pe = probs[assign[i as usize]][assign[j as usize]];
                    prob *= if h.has_edge(i, j) { pe } else { 1.0 - pe };
                }
            }
            total += ways * prob;
        }
        // next assignment in base-b
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(total);
            }
            assign[pos] += 1;
            if assign[pos] < b {
                break;
            }
            assign[pos] = 0;
            pos += 1;
        }
    }
}
