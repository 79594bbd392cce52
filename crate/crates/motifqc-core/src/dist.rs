//! Per-motif densities and expectations under a reference distribution, and
//! the density increments `r_ell` that drive the general schedules.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::models::{self, ModelError};
use crate::motif::Motif;
use crate::params::a_s_ell;

#[derive(Debug, Error, PartialEq)]
pub enum DistError {
    #[error("no density recorded for sub-motif {0}")]
    MissingDensity(Motif),
    #[error("all (ell-1)-subgraph densities of some level-{0} subgraph are zero")]
    ZeroDenominator(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// How a table's densities were produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum DensitySource {
    GnpClosedForm { p: f64 },
    SbmExact { sizes: Vec<usize>, probs: Vec<Vec<f64>> },
    UserSupplied,
}

/// Densities `F_D(P)` for every induced sub-pattern of a target motif,
/// over an `n`-vertex host. `F_D(P)` is the probability that a uniformly
/// random ordered `|P|`-set realizes `P`; expectations follow as
/// `E_D(P) = C(n, ell) ell! F_D(P)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionTable {
    motif: Motif,
    n: usize,
    source: DensitySource,
    densities: HashMap<Motif, f64>,
}

impl DistributionTable {
    /// Closed-form G(n, p) densities: `F = p^e (1-p)^(C(ell,2)-e)`.
    pub fn gnp(motif: &Motif, n: usize, p: f64) -> Self {
        let mut densities = HashMap::new();
        for ell in 1..=motif.k() {
            for sub in motif.subgraphs_on(ell) {
                densities.entry(sub).or_insert_with(|| {
                    let pairs = (ell * (ell - 1) / 2) as i32;
                    p.powi(sub.edge_count() as i32) * (1.0 - p).powi(pairs - sub.edge_count() as i32)
                });
            }
        }
        DistributionTable {
            motif: *motif,
            n,
            source: DensitySource::GnpClosedForm { p },
            densities,
        }
    }

    /// Exact SBM densities via the expectation formula divided by the
    /// ordered-tuple count.
    pub fn sbm(motif: &Motif, sizes: &[usize], probs: &[Vec<f64>]) -> Result<Self, DistError> {
        let n: usize = sizes.iter().sum();
        let mut densities = HashMap::new();
        for ell in 1..=motif.k() {
            for sub in motif.subgraphs_on(ell) {
                if !densities.contains_key(&sub) {
                    let e = models::expected_count_sbm(&sub, sizes, probs)?;
                    densities.insert(sub, e / models::ordered_tuples(n, ell));
                }
            }
        }
        Ok(DistributionTable {
            motif: *motif,
            n,
            source: DensitySource::SbmExact {
                sizes: sizes.to_vec(),
                probs: probs.to_vec(),
            },
            densities,
        })
    }

    /// Caller-supplied densities (must cover every induced sub-pattern of
    /// the motif).
    pub fn from_densities(
        motif: &Motif,
        n: usize,
        densities: HashMap<Motif, f64>,
    ) -> Result<Self, DistError> {
        for ell in 1..=motif.k() {
            for sub in motif.subgraphs_on(ell) {
                if !densities.contains_key(&sub) {
                    return Err(DistError::MissingDensity(sub));
                }
            }
        }
        Ok(DistributionTable {
            motif: *motif,
            n,
            source: DensitySource::UserSupplied,
            densities,
        })
    }

    pub fn motif(&self) -> &Motif {
        &self.motif
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> &DensitySource {
        &self.source
    }

    /// The G(n,p) parameter when this table came from the closed form.
    pub fn gnp_p(&self) -> Option<f64> {
        match &self.source {
            DensitySource::GnpClosedForm { p } => Some(*p),
            _ => None,
        }
    }

    pub fn density(&self, pattern: &Motif) -> Option<f64> {
        self.densities.get(pattern).copied()
    }

    /// `E_D(P) = C(n, ell) ell! F_D(P)`.
    pub fn expectation(&self, pattern: &Motif) -> Option<f64> {
        self.density(pattern)
            .map(|f| models::ordered_tuples(self.n, pattern.k()) * f)
    }

    /// `S_D(P, s) = E_D(P) A_{s, ell}`: expected copies of `P` in a uniform
    /// size-`s` multiset.
    pub fn multiset_expectation(&self, pattern: &Motif, s: u64) -> Option<f64> {
        self.expectation(pattern)
            .map(|e| e * a_s_ell(s, pattern.k(), self.n))
    }

    /// Density increment at level `ell`:
    /// `min over ell-subgraphs H1 of F(H1)^2 / max over (ell-1)-subgraphs H2 of H1 of F(H2)^2`.
    pub fn r_ell(&self, h: &Motif, ell: usize) -> Result<f64, DistError> {
        assert!((2..=h.k()).contains(&ell));
        let mut best = f64::INFINITY;
        for h1 in h.subgraphs_on(ell) {
            let f1 = self
                .density(&h1)
                .ok_or(DistError::MissingDensity(h1))?;
            let mut denom: f64 = 0.0;
            for h2 in h1.subgraphs_on(ell - 1) {
                let f2 = self
                    .density(&h2)
                    .ok_or(DistError::MissingDensity(h2))?;
                denom = denom.max(f2 * f2);
            }
            if denom == 0.0 {
                return Err(DistError::ZeroDenominator(ell));
            }
            best = best.min(f1 * f1 / denom);
        }
        Ok(best)
    }
}

/// Closed-form density increment for G(n, p) (valid for p <= 1/2):
/// `r_ell(H) = (1-p)^(2 ell - 2) min over ell-subgraphs H1 of (p / (1-p))^(2 max_degree(H1))`.
pub fn r_ell_gnp_closed(h: &Motif, ell: usize, p: f64) -> f64 {
    let min_term = h
        .subgraphs_on(ell)
        .iter()
        .map(|h1| (p / (1.0 - p)).powi(2 * h1.max_degree() as i32))
        .fold(f64::INFINITY, f64::min);
    (1.0 - p).powi(2 * ell as i32 - 2) * min_term
}

/// Top-level increment for G(n, p):
/// `r_k(H) = p^(2 Delta) (1-p)^(2k - 2 - 2 Delta)`.
pub fn r_k_gnp_closed(h: &Motif, p: f64) -> f64 {
    let delta = h.max_degree() as i32;
    let k = h.k() as i32;
    p.powi(2 * delta) * (1.0 - p).powi(2 * k - 2 - 2 * delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_increment_against_vertex_density() {
        let table = DistributionTable::gnp(&Motif::edge(), 100, 0.5);
        // F(edge)^2 / F(vertex)^2 with F(vertex) = 1.
        assert!((table.r_ell(&Motif::edge(), 2).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_definition_for_k4() {
        let h = Motif::complete(4);
        for &p in &[0.1, 0.3, 0.5] {
            let table = DistributionTable::gnp(&h, 500, p);
            for ell in 2..=4 {
                let def = table.r_ell(&h, ell).unwrap();
                let closed = r_ell_gnp_closed(&h, ell, p);
                assert!(
                    (def - closed).abs() <= 1e-9 * def.max(closed),
                    "mismatch at p={p} ell={ell}: {def} vs {closed}"
                );
            }
            let rk = table.r_ell(&h, 4).unwrap();
            assert!((rk - r_k_gnp_closed(&h, p)).abs() <= 1e-9 * rk);
        }
    }

    #[test]
    fn increment_examples() {
        // r_k(K3) at p = 1/2 -> p^4 = 0.0625.
        assert!((r_k_gnp_closed(&Motif::complete(3), 0.5) - 0.0625).abs() < 1e-12);
        // 4-star: Delta = 3, exponent 2k-2-2*Delta = 0, so r_4 = p^6.
        let star = Motif::star(4);
        assert!((r_k_gnp_closed(&star, 0.3) - 0.3f64.powi(6)).abs() < 1e-12);
    }

    #[test]
    fn increments_monotone_for_k5_gnp() {
        let h = Motif::complete(5);
        for &p in &[0.1, 0.3, 0.5] {
            let table = DistributionTable::gnp(&h, 200, p);
            let mut prev = table.r_ell(&h, 2).unwrap();
            for ell in 3..=5 {
                let cur = table.r_ell(&h, ell).unwrap();
                assert!(prev >= cur - 1e-12, "r not monotone at p={p} ell={ell}");
                prev = cur;
            }
        }
    }

    #[test]
    fn sbm_single_block_table_matches_gnp_table() {
        let h = Motif::path(3);
        let a = DistributionTable::gnp(&h, 20, 0.4);
        let b = DistributionTable::sbm(&h, &[20], &[vec![0.4]]).unwrap();
        for ell in 1..=3 {
            for sub in h.subgraphs_on(ell) {
                let fa = a.density(&sub).unwrap();
                let fb = b.density(&sub).unwrap();
                assert!((fa - fb).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn multiset_expectation_composes() {
        let h = Motif::edge();
        let t = DistributionTable::gnp(&h, 10, 0.5);
        // E(edge) = 45 * 2 * 0.5 = 45; A_{4,2,10} = 0.12
        assert!((t.multiset_expectation(&h, 4).unwrap() - 5.4).abs() < 1e-12);
    }
}
