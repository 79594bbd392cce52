//! Small labeled graph patterns and their combinatorics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::peel_degeneracy;

/// Largest supported motif size: counting is brute force, so patterns stay
/// small by construction.
pub const MOTIF_CAP: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MotifError {
    #[error("motif size {0} outside 1..={MOTIF_CAP}")]
    SizeOutOfRange(usize),
    #[error("label {0} out of range for k = {1}")]
    LabelOutOfRange(u8, u8),
    #[error("self-loop on label {0}")]
    SelfLoop(u8),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u8, u8),
    #[error("cannot parse motif from {0:?}")]
    Parse(String),
}

/// A labeled pattern on `k` labels with an edge set over unordered label
/// pairs, stored as a bitmask (k <= 8, so at most 28 pair bits).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Motif {
    k: u8,
    mask: u32,
}

/// Row-major index of the pair `(i, j)`, `i < j`, among pairs of `[k]`.
#[inline]
fn pair_bit(k: u8, i: u8, j: u8) -> u32 {
    debug_assert!(i < j && j < k);
    let (k, i, j) = (k as u32, i as u32, j as u32);
    i * (2 * k - i - 1) / 2 + (j - i - 1)
}

impl Motif {
    pub fn new(k: usize, edges: &[(u8, u8)]) -> Result<Self, MotifError> {
        if k == 0 || k > MOTIF_CAP {
            return Err(MotifError::SizeOutOfRange(k));
        }
        let mut m = Motif { k: k as u8, mask: 0 };
        for &(a, b) in edges {
            if a as usize >= k {
                return Err(MotifError::LabelOutOfRange(a, k as u8));
            }
            if b as usize >= k {
                return Err(MotifError::LabelOutOfRange(b, k as u8));
            }
            if a == b {
                return Err(MotifError::SelfLoop(a));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            let bit = 1u32 << pair_bit(m.k, i, j);
            if m.mask & bit != 0 {
                return Err(MotifError::DuplicateEdge(i, j));
            }
            m.mask |= bit;
        }
        Ok(m)
    }

    /// Complete pattern on `k` labels (`k`-clique).
    pub fn complete(k: usize) -> Self {
        let k8 = k as u8;
        let mut m = Motif::empty(k);
        for i in 0..k8 {
            for j in (i + 1)..k8 {
                m.mask |= 1 << pair_bit(k8, i, j);
            }
        }
        m
    }

    /// Edgeless pattern on `k` labels.
    pub fn empty(k: usize) -> Self {
        assert!(k >= 1 && k <= MOTIF_CAP, "motif size out of range");
        Motif { k: k as u8, mask: 0 }
    }

    /// Single edge on two labels.
    pub fn edge() -> Self {
        Motif::new(2, &[(0, 1)]).unwrap()
    }

    /// Path 0 - 1 - ... - (k-1).
    pub fn path(k: usize) -> Self {
        let edges: Vec<(u8, u8)> = (0..k as u8 - 1).map(|i| (i, i + 1)).collect();
        Motif::new(k, &edges).unwrap()
    }

    /// Cycle on `k` labels (k >= 3).
    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3);
        let mut edges: Vec<(u8, u8)> = (0..k as u8 - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, k as u8 - 1));
        Motif::new(k, &edges).unwrap()
    }

    /// Star with center 0 on `k` labels.
    pub fn star(k: usize) -> Self {
        let edges: Vec<(u8, u8)> = (1..k as u8).map(|i| (0, i)).collect();
        Motif::new(k, &edges).unwrap()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k as usize
    }

    #[inline]
    pub fn has_edge(&self, a: u8, b: u8) -> bool {
        debug_assert!(a != b);
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.mask >> pair_bit(self.k, i, j) & 1 == 1
    }

    #[inline]
    pub fn edge_count(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn edges(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::with_capacity(self.edge_count() as usize);
        for i in 0..self.k {
            for j in (i + 1)..self.k {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn degree(&self, label: u8) -> u32 {
        (0..self.k)
            .filter(|&j| j != label && self.has_edge(label, j))
            .count() as u32
    }

    pub fn max_degree(&self) -> u32 {
        (0..self.k).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() as usize == self.k() * (self.k() - 1) / 2
    }

    /// The induced sub-pattern on the given labels, relabeled to
    /// `0..labels.len()` preserving label order.
    pub fn subgraph_on(&self, labels: &[u8]) -> Motif {
        let l = labels.len();
        let mut sub = Motif::empty(l);
        for a in 0..l as u8 {
            for b in (a + 1)..l as u8 {
                if self.has_edge(labels[a as usize], labels[b as usize]) {
                    sub.mask |= 1 << pair_bit(l as u8, a, b);
                }
            }
        }
        sub
    }

    /// All induced sub-patterns on `ell` of the labels, one per label subset
    /// (no deduplication across subsets).
    pub fn subgraphs_on(&self, ell: usize) -> Vec<Motif> {
        assert!(ell >= 1 && ell <= self.k());
        let mut out = Vec::new();
        let mut subset: Vec<u8> = (0..ell as u8).collect();
        loop {
            out.push(self.subgraph_on(&subset));
            // next lexicographic combination
            let mut i = ell;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if subset[i] < (self.k - (ell - i) as u8) {
                    subset[i] += 1;
                    for j in i + 1..ell {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// All patterns on the same labels whose edge sets contain this one,
    /// paired with the number of added edges (for inclusion-exclusion signs).
    pub fn supergraphs_same_vertices(&self) -> Vec<(Motif, u32)> {
        let total_pairs = (self.k() * (self.k() - 1) / 2) as u32;
        let full: u32 = if total_pairs == 32 {
            u32::MAX
        } else {
            (1u32 << total_pairs) - 1
        };
        let free = full & !self.mask;
        let mut out = Vec::new();
        // Enumerate all subsets of the non-edges.
        let mut sub = 0u32;
        loop {
            out.push((
                Motif {
                    k: self.k,
                    mask: self.mask | sub,
                },
                sub.count_ones(),
            ));
            if sub == free {
                break;
            }
            sub = (sub.wrapping_sub(free)) & free;
        }
        out
    }

    /// Every motif on exactly `k` labels, one per edge set (identity up to
    /// edge sets, not isomorphism).
    pub fn enumerate_all(k: usize) -> impl Iterator<Item = Motif> {
        assert!(k >= 1 && k <= MOTIF_CAP);
        let pairs = k * (k - 1) / 2;
        (0u32..(1u32 << pairs)).map(move |mask| Motif { k: k as u8, mask })
    }

    /// Line graph: one vertex per edge, adjacency by shared endpoint.
    pub fn line_graph(&self) -> Vec<Vec<u32>> {
        let edges = self.edges();
        let mut adj = vec![Vec::new(); edges.len()];
        for (a, &(u1, v1)) in edges.iter().enumerate() {
            for (b, &(u2, v2)) in edges.iter().enumerate().skip(a + 1) {
                if u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2 {
                    adj[a].push(b as u32);
                    adj[b].push(a as u32);
                }
            }
        }
        adj
    }

    /// Structural statistics used by the parameter schedules.
    pub fn stats(&self) -> MotifStats {
        let line = self.line_graph();
        let line_max_degree = line.iter().map(|l| l.len()).max().unwrap_or(0);
        let line_degeneracy = peel_degeneracy(line.len(), |u| &line[u]) as usize;
        let sigma = f64::min(
            (line_max_degree as f64 + 4.0) / 2.0,
            (line_degeneracy as f64 + 6.0) / 2.0,
        );
        let m_h = self.max_density();
        let m_h_star = self
            .supergraphs_same_vertices()
            .iter()
            .map(|(h, _)| h.max_density())
            .fold(0.0f64, f64::max);
        MotifStats {
            max_degree: self.max_degree(),
            m_h,
            m_h_star,
            sigma,
            line_max_degree,
            line_degeneracy,
        }
    }

    /// max over nonempty label subsets of e(F)/v(F) for the induced
    /// sub-pattern F (removing edges only lowers the ratio, so induced
    /// subsets suffice).
    fn max_density(&self) -> f64 {
        let mut best = 0.0f64;
        for ell in 1..=self.k() {
            for sub in self.subgraphs_on(ell) {
                best = best.max(sub.edge_count() as f64 / ell as f64);
            }
        }
        best
    }
}

impl fmt::Display for Motif {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.k)?;
        for (idx, (i, j)) in self.edges().into_iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}-{j}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Motif {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Motif({self})")
    }
}

impl FromStr for Motif {
    type Err = MotifError;

    /// Parses `"k:u-v,u-v,..."`, e.g. `"3:0-1,1-2"` for the 3-path. An
    /// edgeless motif is `"k:"` or just `"k"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MotifError::Parse(s.to_string());
        let (k_part, edges_part) = match s.split_once(':') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        let k: usize = k_part.trim().parse().map_err(|_| bad())?;
        let mut edges = Vec::new();
        for tok in edges_part.split(',').filter(|t| !t.trim().is_empty()) {
            let (a, b) = tok.trim().split_once('-').ok_or_else(bad)?;
            edges.push((
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ));
        }
        Motif::new(k, &edges)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotifStats {
    pub max_degree: u32,
    /// max over subgraphs F of e(F)/v(F).
    pub m_h: f64,
    /// max of `m` over same-label edge supersets.
    pub m_h_star: f64,
    /// min((maxdeg(L)+4)/2, (degeneracy(L)+6)/2) over the line graph L.
    pub sigma: f64,
    pub line_max_degree: usize,
    pub line_degeneracy: usize,
}
