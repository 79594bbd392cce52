//! Bounded-fan-in graph parameters: sums of AND-of-pair-literal terms, their
//! direct evaluation, and their decomposition into labeled induced motif
//! counts.

use std::collections::HashMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::motif::{Motif, MOTIF_CAP};

#[derive(Debug, Error, PartialEq)]
pub enum Nc0Error {
    #[error("pair literal with identical endpoints {0}")]
    SelfPair(u32),
    #[error("duplicate pair ({0}, {1}) in one term")]
    DuplicatePair(u32, u32),
    #[error("term touches {0} pairs, cap is {1}")]
    TooManyPairs(usize, usize),
    #[error("cannot parse terms from {0:?}")]
    Parse(String),
}

/// One pair literal: the unordered vertex pair and whether the edge must be
/// present (`positive`) or absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairLiteral {
    pub u: u32,
    pub v: u32,
    pub positive: bool,
}

/// An AND over pair literals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nc0Term(Vec<PairLiteral>);

impl Nc0Term {
    pub fn new(literals: Vec<PairLiteral>) -> Result<Self, Nc0Error> {
        let mut seen = Vec::new();
        for lit in &literals {
            if lit.u == lit.v {
                return Err(Nc0Error::SelfPair(lit.u));
            }
            let key = (lit.u.min(lit.v), lit.u.max(lit.v));
            if seen.contains(&key) {
                return Err(Nc0Error::DuplicatePair(key.0, key.1));
            }
            seen.push(key);
        }
        Ok(Nc0Term(literals))
    }

    pub fn literals(&self) -> &[PairLiteral] {
        &self.0
    }

    pub fn pair_count(&self) -> usize {
        self.0.len()
    }

    /// Distinct vertices touched by the term's pairs, in increasing order.
    pub fn touched_vertices(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.0.iter().flat_map(|l| [l.u, l.v]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn satisfied(&self, g: &Graph) -> bool {
        self.0.iter().all(|l| g.has_edge(l.u, l.v) == l.positive)
    }
}

/// A summation over AND terms: the graph parameters whose quality control
/// reduces to motif counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nc0Terms(Vec<Nc0Term>);

impl Nc0Terms {
    /// Validates that no term touches more than `max_pairs` pairs (the
    /// effective fan-in bound, so motifs stay within `2 * max_pairs` labels).
    pub fn new(terms: Vec<Nc0Term>, max_pairs: usize) -> Result<Self, Nc0Error> {
        for t in &terms {
            if t.pair_count() > max_pairs {
                return Err(Nc0Error::TooManyPairs(t.pair_count(), max_pairs));
            }
        }
        Ok(Nc0Terms(terms))
    }

    pub fn terms(&self) -> &[Nc0Term] {
        &self.0
    }

    pub fn max_pairs(&self) -> usize {
        self.0.iter().map(Nc0Term::pair_count).max().unwrap_or(0)
    }

    /// Largest motif size the decomposition can touch.
    pub fn support_bound(&self) -> usize {
        2 * self.max_pairs()
    }

    /// Requires the decomposition support to fit under the motif cap.
    pub fn check_support(&self) -> Result<(), Nc0Error> {
        if self.support_bound() > MOTIF_CAP {
            Err(Nc0Error::TooManyPairs(self.max_pairs(), MOTIF_CAP / 2))
        } else {
            Ok(())
        }
    }
}

/// Direct evaluation: the number of terms whose AND of literals is satisfied
/// by the graph's edge indicators.
pub fn nc0_evaluate(terms: &Nc0Terms, g: &Graph) -> u64 {
    terms.0.iter().filter(|t| t.satisfied(g)).count() as u64
}

/// Expresses the symmetrized tuple count of the terms as a sum of labeled
/// induced motif counts: for each term, the number of injective assignments
/// of its touched vertices realizing the literal pattern equals the sum of
/// `C_H` over all patterns `H` on the touched labels that agree with every
/// literal (unconstrained pairs free). Coefficients accumulate across terms.
pub fn nc0_decompose(terms: &Nc0Terms) -> HashMap<Motif, i64> {
    let mut coeffs: HashMap<Motif, i64> = HashMap::new();
    for term in &terms.0 {
        let slots = term.touched_vertices();
        let w = slots.len();
        let slot_of = |id: u32| slots.iter().position(|&s| s == id).unwrap() as u8;
        let positives: Vec<(u8, u8)> = term
            .literals()
            .iter()
            .filter(|l| l.positive)
            .map(|l| (slot_of(l.u), slot_of(l.v)))
            .collect();
        let constrained: Vec<(u8, u8)> = term
            .literals()
            .iter()
            .map(|l| {
                let (a, b) = (slot_of(l.u), slot_of(l.v));
                (a.min(b), a.max(b))
            })
            .collect();
        let mut free_pairs = Vec::new();
        for a in 0..w as u8 {
            for b in (a + 1)..w as u8 {
                if !constrained.contains(&(a, b)) {
                    free_pairs.push((a, b));
                }
            }
        }
        // every completion of the pattern over the free pairs
        for subset in 0u32..(1 << free_pairs.len()) {
            let mut edges = positives.clone();
            for (bit, &pair) in free_pairs.iter().enumerate() {
                if subset >> bit & 1 == 1 {
                    edges.push(pair);
                }
            }
            let motif = Motif::new(w, &edges).expect("slots fit the motif cap");
            *coeffs.entry(motif).or_insert(0) += 1;
        }
    }
    coeffs
}

impl FromStr for Nc0Terms {
    type Err = Nc0Error;

    /// Parses `"0-1:+,1-2:- ; 2-3:+"`: terms separated by `;`, literals by
    /// `,`, each literal `u-v:+` or `u-v:-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Nc0Error::Parse(s.to_string());
        let mut terms = Vec::new();
        for term_str in s.split(';').filter(|t| !t.trim().is_empty()) {
            let mut lits = Vec::new();
            for lit_str in term_str.split(',').filter(|t| !t.trim().is_empty()) {
                let (pair, sign) = lit_str.trim().split_once(':').ok_or_else(bad)?;
                let (u, v) = pair.trim().split_once('-').ok_or_else(bad)?;
                let positive = match sign.trim() {
                    "+" => true,
                    "-" => false,
                    _ => return Err(bad()),
                };
                lits.push(PairLiteral {
                    u: u.trim().parse().map_err(|_| bad())?,
                    v: v.trim().parse().map_err(|_| bad())?,
                    positive,
                });
            }
            terms.push(Nc0Term::new(lits)?);
        }
        let max = terms.iter().map(Nc0Term::pair_count).max().unwrap_or(0);
        Nc0Terms::new(terms, max)
    }
}
