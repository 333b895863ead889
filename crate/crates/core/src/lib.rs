//! Question answering over knowledge-graph facts and text corpora.
//!
//! The pipeline unifies KG facts and text-derived triples into one
//! question-specific weighted context graph, then computes top-k Group
//! Steiner Trees over anchor-node groups to extract and rank answer
//! entities with full explanation trees.
//!
//! Crate layout follows the pipeline stages:
//!
//! - [`graph`] — the typed weighted context graph
//! - [`store`] — KG fact parsing and the in-memory triple store
//! - [`text`] — snippet extraction and pattern-based triple extraction
//! - [`relevance`] — evidence scoring and top-ε selection
//! - [`xg`] — context-graph assembly (KG subgraph, text quasi-graph,
//!   alignment edges, heterogeneous merge)
//! - [`anchors`] — question tokenization and anchor-group detection
//! - [`gst`] — the exact top-k Group Steiner Tree solver plus baselines
//! - [`ranking`] — candidate extraction, ranking strategies, evaluation
//! - [`pipeline`] — end-to-end orchestration and batch evaluation
//! - [`export`] — JSON-lines, tree JSON, and DOT serialization

pub mod anchors;
pub mod error;
pub mod evidence;
pub mod export;
pub mod graph;
pub mod gst;
pub mod pipeline;
pub mod ranking;
pub mod relevance;
pub mod store;
pub mod text;
pub mod xg;

pub use error::{Error, Result};
