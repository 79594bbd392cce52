//! Budgeted query access to a graph. Testers see graphs only through this
//! type, so their reported query counts are trustworthy by construction.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::multiset::VertexMultiset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryKind {
    Matrix,
    List,
    Degree,
}

/// Running query tallies, one counter per access kind.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryCounts {
    pub matrix: u64,
    pub list: u64,
    pub degree: u64,
}

impl QueryCounts {
    pub fn total(&self) -> u64 {
        self.matrix + self.list + self.degree
    }
}

/// Optional caps. `None` means unlimited. Budgets are checked before a query
/// is answered, so a failed query is not charged.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct QueryBudget {
    pub matrix: Option<u64>,
    pub list: Option<u64>,
    pub degree: Option<u64>,
    pub total: Option<u64>,
}

impl QueryBudget {
    pub fn unlimited() -> Self {
        QueryBudget::default()
    }

    pub fn total_cap(q: u64) -> Self {
        QueryBudget {
            total: Some(q),
            ..QueryBudget::default()
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("query budget exhausted (matrix {} list {} degree {})", .counts.matrix, .counts.list, .counts.degree)]
    BudgetExhausted { counts: QueryCounts },
    #[error("pair query on identical endpoints {0}")]
    SelfPair(u32),
    #[error("vertex {0} out of range for n = {1}")]
    VertexOutOfRange(u32, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryRecord {
    Pair(u32, u32),
    Neighbor(u32, u64),
    Degree(u32),
}

/// The induced graph on the distinct vertices of a sampled multiset,
/// together with the multiplicities and original ids. Subgraph vertex `i`
/// corresponds to `vertices[i]`.
#[derive(Debug, Clone)]
pub struct SampledSubgraph {
    pub graph: Graph,
    pub vertices: Vec<u32>,
    pub mults: Vec<u64>,
}

impl SampledSubgraph {
    /// Total multiset size (sum of multiplicities).
    pub fn multiset_size(&self) -> u64 {
        self.mults.iter().sum()
    }

    pub fn distinct_count(&self) -> usize {
        self.vertices.len()
    }
}

/// Access-controlled view of a graph with exact query accounting. Repeated
/// identical queries are charged every time; callers own their caches.
pub struct QueryOracle<'g> {
    graph: &'g Graph,
    counts: QueryCounts,
    budget: QueryBudget,
    trace: Option<Vec<QueryRecord>>,
}

impl<'g> QueryOracle<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self::with_budget(graph, QueryBudget::unlimited())
    }

    pub fn with_budget(graph: &'g Graph, budget: QueryBudget) -> Self {
        QueryOracle {
            graph,
            counts: QueryCounts::default(),
            budget,
            trace: None,
        }
    }

    /// Starts recording an ordered trace of every answered query.
    pub fn enable_trace(&mut self) {
        self.trace = Some(Vec::new());
    }

    pub fn trace(&self) -> Option<&[QueryRecord]> {
        self.trace.as_deref()
    }

    /// Vertex count; public knowledge, not a charged query.
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn counts(&self) -> QueryCounts {
        self.counts
    }

    pub fn budget(&self) -> QueryBudget {
        self.budget
    }

    fn charge(&mut self, kind: QueryKind, amount: u64) -> Result<(), OracleError> {
        let (counter, cap) = match kind {
            QueryKind::Matrix => (self.counts.matrix, self.budget.matrix),
            QueryKind::List => (self.counts.list, self.budget.list),
            QueryKind::Degree => (self.counts.degree, self.budget.degree),
        };
        let kind_ok = cap.is_none_or(|c| counter + amount <= c);
        let total_ok = self
            .budget
            .total
            .is_none_or(|c| self.counts.total() + amount <= c);
        if !kind_ok || !total_ok {
            return Err(OracleError::BudgetExhausted {
                counts: self.counts,
            });
        }
        match kind {
            QueryKind::Matrix => self.counts.matrix += amount,
            QueryKind::List => self.counts.list += amount,
            QueryKind::Degree => self.counts.degree += amount,
        }
        Ok(())
    }

    fn check_vertex(&self, u: u32) -> Result<(), OracleError> {
        if (u as usize) < self.graph.n() {
            Ok(())
        } else {
            Err(OracleError::VertexOutOfRange(u, self.graph.n()))
        }
    }

    /// Adjacency matrix query.
    pub fn pair(&mut self, u: u32, v: u32) -> Result<bool, OracleError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(OracleError::SelfPair(u));
        }
        self.charge(QueryKind::Matrix, 1)?;
        if let Some(t) = self.trace.as_mut() {
            t.push(QueryRecord::Pair(u, v));
        }
        Ok(self.graph.has_edge(u, v))
    }

    /// Adjacency list query: the `i`-th neighbor of `u` (1-indexed), or
    /// `None` when `u` has fewer than `i` neighbors.
    pub fn neighbor(&mut self, u: u32, i: u64) -> Result<Option<u32>, OracleError> {
        self.check_vertex(u)?;
        assert!(i >= 1, "adjacency list queries are 1-indexed");
        self.charge(QueryKind::List, 1)?;
        if let Some(t) = self.trace.as_mut() {
            t.push(QueryRecord::Neighbor(u, i));
        }
        Ok(self.graph.neighbors(u).get(i as usize - 1).copied())
    }

    /// Vertex degree query.
    pub fn degree(&mut self, u: u32) -> Result<u32, OracleError> {
        self.check_vertex(u)?;
        self.charge(QueryKind::Degree, 1)?;
        if let Some(t) = self.trace.as_mut() {
            t.push(QueryRecord::Degree(u));
        }
        Ok(self.graph.degree(u))
    }

    /// Materializes the induced subgraph on the distinct vertices of a
    /// multiset, charging exactly `C(d, 2)` matrix queries where `d` is the
    /// distinct vertex count. The whole batch is budget-checked up front.
    pub fn induced_on(&mut self, s: &VertexMultiset) -> Result<SampledSubgraph, OracleError> {
        self.check_vertex(s.max_id())?;
        let (vertices, mults) = s.distinct_with_mults();
        let d = vertices.len() as u64;
        self.charge(QueryKind::Matrix, d * (d - 1) / 2)?;
        if let Some(t) = self.trace.as_mut() {
            for i in 0..vertices.len() {
                for j in (i + 1)..vertices.len() {
                    t.push(QueryRecord::Pair(vertices[i], vertices[j]));
                }
            }
        }
        let graph = self.graph.induced_subgraph(&vertices);
        Ok(SampledSubgraph {
            graph,
            vertices,
            mults,
        })
    }

    /// Escape hatch for reference implementations that are documented as
    /// not sublinear (the arboricity filter) — bypasses all accounting.
    pub fn bypass_graph(&self) -> &'g Graph {
        self.graph
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_queries_count_and_answer() {
        let g = Graph::complete(3);
        let mut o = QueryOracle::new(&g);
        assert!(o.pair(0, 1).unwrap());
        assert_eq!(o.counts().matrix, 1);
        let empty = Graph::empty(3);
        let mut o2 = QueryOracle::new(&empty);
        assert!(!o2.pair(0, 1).unwrap());
        assert_eq!(o2.pair(1, 1), Err(OracleError::SelfPair(1)));
    }

    #[test]
    fn budget_enforced_on_third_call() {
        let g = Graph::complete(4);
        let mut o = QueryOracle::with_budget(&g, QueryBudget::total_cap(2));
        o.pair(0, 1).unwrap();
        o.pair(0, 2).unwrap();
        let err = o.pair(0, 3).unwrap_err();
        assert!(matches!(err, OracleError::BudgetExhausted { counts } if counts.matrix == 2));
        // failed query is not charged
        assert_eq!(o.counts().matrix, 2);
    }

    #[test]
    fn neighbor_queries() {
        let g = Graph::path(3);
        let mut o = QueryOracle::new(&g);
        assert_eq!(o.neighbor(1, 2).unwrap(), Some(2));
        assert_eq!(o.neighbor(0, 2).unwrap(), None);
        let k4 = Graph::complete(4);
        let mut o2 = QueryOracle::new(&k4);
        assert_eq!(o2.neighbor(3, 1).unwrap(), Some(0));
        assert_eq!(o2.counts().list, 1);
    }

    #[test]
    fn degree_queries() {
        let k4 = Graph::complete(4);
        let mut o = QueryOracle::new(&k4);
        assert_eq!(o.degree(0).unwrap(), 3);
        let empty = Graph::empty(2);
        let mut o2 = QueryOracle::new(&empty);
        assert_eq!(o2.degree(0).unwrap(), 0);
        let star = Graph::star(5);
        let mut o3 = QueryOracle::new(&star);
        assert_eq!(o3.degree(0).unwrap(), 4);
        assert_eq!(o3.counts().degree, 1);
    }

    #[test]
    fn induced_on_charges_pairs_among_distinct() {
        let g = Graph::complete(6);
        let mut o = QueryOracle::new(&g);
        let sub = o
            .induced_on(&VertexMultiset::new(vec![4, 1, 1, 2, 0]))
            .unwrap();
        assert_eq!(sub.distinct_count(), 4);
        assert_eq!(o.counts().matrix, 6);
        assert_eq!(sub.multiset_size(), 5);

        let mut o2 = QueryOracle::new(&g);
        let single = o2.induced_on(&VertexMultiset::new(vec![3])).unwrap();
        assert_eq!(o2.counts().matrix, 0);
        assert_eq!(single.graph.n(), 1);

        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut o3 = QueryOracle::new(&edge);
        let sub3 = o3.induced_on(&VertexMultiset::new(vec![0, 0, 1])).unwrap();
        assert_eq!(o3.counts().matrix, 1);
        assert_eq!(sub3.graph.edge_count(), 1);
        assert_eq!(sub3.mults, vec![2, 1]);
    }

    #[test]
    fn induced_on_budget_checked_upfront() {
        let g = Graph::complete(5);
        let mut o = QueryOracle::with_budget(&g, QueryBudget::total_cap(5));
        let err = o
            .induced_on(&VertexMultiset::new(vec![0, 1, 2, 3]))
            .unwrap_err();
        assert!(matches!(err, OracleError::BudgetExhausted { .. }));
        assert_eq!(o.counts().matrix, 0);
    }
}
