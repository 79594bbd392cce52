//! Exact labeled motif counting: induced, non-induced, cliques, and counts
//! inside vertex multisets with repetition.
//!
//! Everything here is deliberately brute force over small patterns
//! (`k <= MOTIF_CAP`), using bitset rows for the inner loops. Counts are
//! returned as `u128`; labeled counts are the unit everywhere.

use thiserror::Error;

use crate::graph::Graph;
use crate::motif::{Motif, MOTIF_CAP};
use crate::multiset::VertexMultiset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("clique size {0} outside 1..={MOTIF_CAP}")]
    SizeOutOfRange(usize),
    #[error("multiset id {0} out of range for n = {1}")]
    IdOutOfRange(u32, usize),
}

pub fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Number of ordered `ell`-tuples of distinct vertices forming a clique
/// (unordered cliques times `ell!`).
pub fn count_cliques(g: &Graph, ell: usize) -> Result<u128, CountError> {
    let mults = vec![1u64; g.n()];
    count_cliques_weighted(g, &mults, ell)
}

/// Multiset-weighted labeled clique count: sum over unordered `ell`-cliques
/// of the product of vertex multiplicities, times `ell!`.
pub fn count_cliques_weighted(g: &Graph, mults: &[u64], ell: usize) -> Result<u128, CountError> {
    if ell == 0 || ell > MOTIF_CAP {
        return Err(CountError::SizeOutOfRange(ell));
    }
    debug_assert_eq!(mults.len(), g.n());
    if ell > g.n() {
        return Ok(0);
    }
    if ell == 1 {
        return Ok(mults.iter().map(|&m| m as u128).sum());
    }
    let words = g.words_per_row();
    let mut all = vec![u64::MAX; words];
    mask_tail(&mut all, g.n());
    let mut total = 0u128;
    let mut scratch = vec![0u64; words * ell];
    clique_rec(g, mults, &all, ell, 1, &mut scratch, &mut total);
    Ok(total * factorial(ell))
}

/// Enumerates increasing cliques: `cand` holds vertices larger than the last
/// chosen one that are adjacent to all chosen ones; `weight` is the product
/// of multiplicities chosen so far.
fn clique_rec(
    g: &Graph,
    mults: &[u64],
    cand: &[u64],
    remaining: usize,
    weight: u128,
    scratch: &mut [u64],
    total: &mut u128,
) {
    let words = g.words_per_row();
    for (w, &bits0) in cand.iter().enumerate() {
        let mut bits = bits0;
        while bits != 0 {
            let v = (w * 64 + bits.trailing_zeros() as usize) as u32;
            bits &= bits - 1;
            let wv = weight * mults[v as usize] as u128;
            if remaining == 1 {
                *total += wv;
                continue;
            }
            let (child, rest) = scratch.split_at_mut(words);
            let row = g.row(v);
            for i in 0..words {
                child[i] = cand[i] & row[i];
            }
            // keep only vertices above v
            clear_below(child, v as usize + 1);
            clique_rec(g, mults, child, remaining - 1, wv, rest, total);
        }
    }
}

/// Count of injections of `h`'s labels into `g` matching all edges and all
/// non-edges of `h`.
pub fn count_labeled_induced(g: &Graph, h: &Motif) -> u128 {
    if h.is_complete() {
        return count_cliques(g, h.k()).expect("motif cap enforces clique cap");
    }
    let mults = vec![1u64; g.n()];
    backtrack_count(g, &mults, h, true)
}

/// Count of injections matching all edges of `h`; non-edges unconstrained.
pub fn count_labeled_noninduced(g: &Graph, h: &Motif) -> u128 {
    if h.is_complete() {
        return count_cliques(g, h.k()).expect("motif cap enforces clique cap");
    }
    let mults = vec![1u64; g.n()];
    backtrack_count(g, &mults, h, false)
}

/// Labeled induced copies of `h` inside the multiset `s`: ordered tuples of
/// distinct positions with distinct vertex values inducing `h`, i.e. the sum
/// over labeled induced copies of the product of vertex multiplicities.
pub fn count_in_multiset(g: &Graph, s: &VertexMultiset, h: &Motif) -> Result<u128, CountError> {
    if s.max_id() as usize >= g.n() {
        return Err(CountError::IdOutOfRange(s.max_id(), g.n()));
    }
    let (verts, mults) = s.distinct_with_mults();
    let sub = g.induced_subgraph(&verts);
    Ok(count_in_weighted_subgraph(&sub, &mults, h, true))
}

/// Weighted count on an already-materialized distinct-vertex subgraph
/// (`mults[i]` is the multiplicity of subgraph vertex `i`). `induced`
/// selects induced vs non-induced matching.
pub fn count_in_weighted_subgraph(sub: &Graph, mults: &[u64], h: &Motif, induced: bool) -> u128 {
    if h.is_complete() {
        return count_cliques_weighted(sub, mults, h.k()).expect("motif cap enforces clique cap");
    }
    backtrack_count(sub, mults, h, induced)
}

/// Backtracking over injective label assignments with per-depth candidate
/// bitsets. Labels are assigned in order 0..k.
fn backtrack_count(g: &Graph, mults: &[u64], h: &Motif, induced: bool) -> u128 {
    let k = h.k();
    let n = g.n();
    if k > n {
        return 0;
    }
    let words = g.words_per_row();
    let mut full = vec![u64::MAX; words];
    mask_tail(&mut full, n);

    let mut phi: Vec<u32> = Vec::with_capacity(k);
    let mut used = vec![0u64; words];
    let mut total = 0u128;
    let mut cand_stack = vec![0u64; words * k];

    fn descend(
        g: &Graph,
        mults: &[u64],
        h: &Motif,
        induced: bool,
        full: &[u64],
        phi: &mut Vec<u32>,
        used: &mut [u64],
        cand_stack: &mut [u64],
        weight: u128,
        total: &mut u128,
    ) {
        let words = g.words_per_row();
        let j = phi.len() as u8;
        let k = h.k() as u8;
        let (cand, rest) = cand_stack.split_at_mut(words);
        for (i, c) in cand.iter_mut().enumerate() {
            *c = full[i] & !used[i];
        }
        for i in 0..j {
            let row = g.row(phi[i as usize]);
            if h.has_edge(i, j) {
                for (c, &r) in cand.iter_mut().zip(row) {
                    *c &= r;
                }
            } else if induced {
                for (c, &r) in cand.iter_mut().zip(row) {
                    *c &= !r;
                }
            }
        }
        for w in 0..words {
            let mut bits = cand[w];
            while bits != 0 {
                let v = (w * 64 + bits.trailing_zeros() as usize) as u32;
                bits &= bits - 1;
                let wv = weight * mults[v as usize] as u128;
                if j + 1 == k {
                    *total += wv;
                    continue;
                }
                phi.push(v);
                used[v as usize / 64] |= 1u64 << (v % 64);
                descend(g, mults, h, induced, full, phi, used, rest, wv, total);
                used[v as usize / 64] &= !(1u64 << (v % 64));
                phi.pop();
            }
        }
    }

    descend(
        g,
        mults,
        h,
        induced,
        &full,
        &mut phi,
        &mut used,
        &mut cand_stack,
        1,
        &mut total,
    );
    total
}

#[inline]
fn mask_tail(bits: &mut [u64], n: usize) {
    let last = n / 64;
    for (w, b) in bits.iter_mut().enumerate() {
        if w > last {
            *b = 0;
        } else if w == last {
            let rem = n % 64;
            if rem != 0 {
                *b &= (1u64 << rem) - 1;
            } else if n == 0 {
                *b = 0;
            }
        }
    }
}

#[inline]
fn clear_below(bits: &mut [u64], from: usize) {
    let w = from / 64;
    for b in bits.iter_mut().take(w) {
        *b = 0;
    }
    if w < bits.len() {
        let rem = from % 64;
        if rem != 0 {
            bits[w] &= !((1u64 << rem) - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_counts_on_fixed_graphs() {
        assert_eq!(count_cliques(&Graph::complete(3), 3).unwrap(), 6);
        assert_eq!(count_cliques(&Graph::complete(4), 3).unwrap(), 24);
        assert_eq!(count_cliques(&Graph::cycle(5), 3).unwrap(), 0);
        assert_eq!(count_cliques(&Graph::complete(6), 4).unwrap(), 15 * 24);
        assert!(matches!(
            count_cliques(&Graph::complete(3), 9),
            Err(CountError::SizeOutOfRange(9))
        ));
    }

    #[test]
    fn induced_counts_on_fixed_graphs() {
        // P3 host, single-edge motif: 2 edges x 2 orders.
        assert_eq!(count_labeled_induced(&Graph::path(3), &Motif::edge()), 4);
        // K3 host, path motif: the non-edge is unmatchable.
        assert_eq!(
            count_labeled_induced(&Graph::complete(3), &Motif::path(3)),
            0
        );
        // P3 host, P3 motif: center fixed, two end orders.
        assert_eq!(count_labeled_induced(&Graph::path(3), &Motif::path(3)), 2);
    }

    #[test]
    fn noninduced_counts_on_fixed_graphs() {
        assert_eq!(
            count_labeled_noninduced(&Graph::complete(3), &Motif::edge()),
            6
        );
        assert_eq!(
            count_labeled_noninduced(&Graph::complete(3), &Motif::path(3)),
            6
        );
        assert_eq!(count_labeled_noninduced(&Graph::empty(5), &Motif::edge()), 0);
    }

    #[test]
    fn multiset_counts() {
        let edge_graph = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let ms = VertexMultiset::new(vec![0, 0, 1]);
        assert_eq!(count_in_multiset(&edge_graph, &ms, &Motif::edge()).unwrap(), 4);
        let ms2 = VertexMultiset::new(vec![0, 0]);
        assert_eq!(
            count_in_multiset(&edge_graph, &ms2, &Motif::edge()).unwrap(),
            0
        );
        let k3 = Graph::complete(3);
        let ms3 = VertexMultiset::new(vec![0, 1, 2]);
        assert_eq!(
            count_in_multiset(&k3, &ms3, &Motif::complete(3)).unwrap(),
            6
        );
        let bad = VertexMultiset::new(vec![5]);
        assert!(count_in_multiset(&k3, &bad, &Motif::edge()).is_err());
    }

    #[test]
    fn full_cover_multiset_equals_induced_count() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)]).unwrap();
        for h in [Motif::edge(), Motif::path(3), Motif::complete(3), Motif::empty(2)] {
            let ms = VertexMultiset::full_cover(g.n());
            assert_eq!(
                count_in_multiset(&g, &ms, &h).unwrap(),
                count_labeled_induced(&g, &h)
            );
        }
    }

    #[test]
    fn cliques_equal_complete_motif_counts() {
        let g = Graph::from_pair_fn(9, |u, v| (u * 7 + v * 3) % 4 != 0);
        for ell in 1..=4 {
            assert_eq!(
                count_cliques(&g, ell).unwrap(),
                backtrack_count(&g, &vec![1; g.n()], &Motif::complete(ell), true)
            );
        }
    }
}
