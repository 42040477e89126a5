//! Lexical metaphor resolution on synonym graphs.
//!
//! A metaphorical triple such as `V.déshabiller*|obj|N.pomme` is resolved by
//! crossing two axes:
//!
//! * the paradigmatic axis of the focus, i.e. the lexemes a short random walk
//!   on a synonym graph reaches most often ([`prox`]);
//! * the syntagmatic axis of the dependent, i.e. the governors a corpus
//!   attests with it under the same relation ([`triples`]).
//!
//! Lexemes in both sets are ordered by triple count ([`resolver`]). The
//! [`metrics`] and [`eval`] modules characterize input graphs and score
//! resolutions against gold data.

pub mod error;
pub mod eval;
pub mod format;
pub mod graph;
pub mod lexeme;
pub mod metrics;
pub mod oracle;
pub mod prox;
pub mod resolver;
pub mod triples;

pub use error::{Error, Result};
pub use eval::{evaluate, EvalReport, GoldData};
pub use graph::{ComponentMap, LexicalGraph, VertexId};
pub use lexeme::Lexeme;
pub use metrics::{PathSample, SmallWorldReport};
pub use prox::{diam, walk, RankedNeighborhood, WalkDistribution};
pub use resolver::{resolve, Diagnostic, MetaphorQuery, SlamParams, SolutionList};
pub use triples::{CandidateSet, Triple, TripleStore};
