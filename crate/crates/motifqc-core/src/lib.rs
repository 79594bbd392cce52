//! Quality-control algorithms for motif counts against random-graph models.
//!
//! The library is organized around a small pipeline: seeded random-graph
//! generators ([`models`]), a query-counting oracle that is the only way the
//! testers may look at a graph ([`oracle`]), parameter schedules
//! ([`params`], [`dist`]), and a family of interchangeable quality-control
//! testers behind the [`testers::QualityTester`] trait, selected by name
//! through [`testers::build`].
//!
//! All randomized components are deterministic given a `u64` seed.

pub mod certify;
pub mod counting;
pub mod dist;
pub mod graph;
pub mod models;
pub mod motif;
pub mod multiset;
pub mod oracle;
pub mod params;
pub mod reference;
pub mod seeds;
pub mod testers;
pub mod triangle;

pub use graph::Graph;
pub use motif::Motif;
pub use multiset::VertexMultiset;
pub use oracle::{QueryCounts, QueryOracle};
pub use testers::{Decision, QualityTester, TesterSpec, Verdict};
