//! Naive reference enumerators used as independent oracles in tests.
//!
//! Everything here iterates ordered tuples directly and answers adjacency
//! through neighbor-list scans, deliberately sharing no code with
//! [`crate::counting`]. Production paths must never call into this module;
//! it exists so tests can cross-check the optimized counts against an
//! implementation too simple to be wrong.

use crate::graph::Graph;
use crate::motif::Motif;
use crate::multiset::VertexMultiset;
use crate::testers::nc0::Nc0Term;

fn adjacent(g: &Graph, u: u32, v: u32) -> bool {
    g.neighbors(u).contains(&v)
}

/// All ordered tuples of `k` distinct vertices, visited recursively.
fn for_each_tuple(n: usize, k: usize, f: &mut impl FnMut(&[u32])) {
    fn rec(n: usize, k: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for v in 0..n as u32 {
            if !cur.contains(&v) {
                cur.push(v);
                rec(n, k, cur, f);
                cur.pop();
            }
        }
    }
    rec(n, k, &mut Vec::new(), f);
}

fn tuple_matches(g: &Graph, tuple: &[u32], h: &Motif, induced: bool) -> bool {
    let k = h.k() as u8;
    for i in 0..k {
        for j in (i + 1)..k {
            let present = adjacent(g, tuple[i as usize], tuple[j as usize]);
            if h.has_edge(i, j) {
                if !present {
                    return false;
                }
            } else if induced && present {
                return false;
            }
        }
    }
    true
}

pub fn labeled_induced_naive(g: &Graph, h: &Motif) -> u128 {
    let mut count = 0u128;
    for_each_tuple(g.n(), h.k(), &mut |t| {
        if tuple_matches(g, t, h, true) {
            count += 1;
        }
    });
    count
}

pub fn labeled_noninduced_naive(g: &Graph, h: &Motif) -> u128 {
    let mut count = 0u128;
    for_each_tuple(g.n(), h.k(), &mut |t| {
        if tuple_matches(g, t, h, false) {
            count += 1;
        }
    });
    count
}

pub fn cliques_naive(g: &Graph, ell: usize) -> u128 {
    labeled_induced_naive(g, &Motif::complete(ell))
}

/// Ordered tuples of distinct positions of `s` whose vertex values are
/// distinct and induce `h`.
pub fn multiset_count_naive(g: &Graph, s: &VertexMultiset, h: &Motif) -> u128 {
    let verts = s.positions();
    let k = h.k();
    let mut count = 0u128;
    fn rec(
        g: &Graph,
        verts: &[u32],
        h: &Motif,
        k: usize,
        chosen: &mut Vec<usize>,
        count: &mut u128,
    ) {
        if chosen.len() == k {
            let tuple: Vec<u32> = chosen.iter().map(|&p| verts[p]).collect();
            let mut distinct = true;
            for a in 0..tuple.len() {
                for b in (a + 1)..tuple.len() {
                    if tuple[a] == tuple[b] {
                        distinct = false;
                    }
                }
            }
            if distinct && tuple_matches(g, &tuple, h, true) {
                *count += 1;
            }
            return;
        }
        for p in 0..verts.len() {
            if !chosen.contains(&p) {
                chosen.push(p);
                rec(g, verts, h, k, chosen, count);
                chosen.pop();
            }
        }
    }
    rec(g, verts, h, k, &mut Vec::new(), &mut count);
    count
}

/// Number of injective assignments of a term's touched vertices into `g`
/// satisfying every pair literal (the symmetrized tuple count of one
/// AND-of-literals term).
pub fn term_tuple_count_naive(term: &Nc0Term, g: &Graph) -> u128 {
    let slots = term.touched_vertices();
    let w = slots.len();
    let mut count = 0u128;
    for_each_tuple(g.n(), w, &mut |t| {
        let assign = |id: u32| -> u32 {
            let pos = slots.iter().position(|&s| s == id).unwrap();
            t[pos]
        };
        let ok = term.literals().iter().all(|lit| {
            let present = adjacent(g, assign(lit.u), assign(lit.v));
            present == lit.positive
        });
        if ok {
            count += 1;
        }
    });
    count
}
