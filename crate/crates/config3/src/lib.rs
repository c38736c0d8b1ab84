//! Symmetric point-block configurations with block size 3.
//!
//! A configuration `v_3` consists of `v` points and `v` blocks of size 3
//! such that every point lies in exactly 3 blocks and every pair of points
//! lies in at most one block. This crate provides:
//!
//! * the data model with validation, compact and JSON text formats
//!   ([`config`]);
//! * canonical forms and isomorphism testing ([`canon`]);
//! * Levi and incidence graphs, girth and 6-cycle counting ([`graphs`]);
//! * fragment censuses, both counted directly and from closed formulas
//!   ([`census`]);
//! * triangle-free constructions for every admissible order and the
//!   Heawood-chain family with many triangles ([`construct`]);
//! * cyclic configurations from starter triples and their triangle
//!   classification ([`cyclic`]);
//! * isomorph-free exhaustive enumeration for small orders ([`enumerate`]).
//!
//! Everything is deterministic: canonical representatives, constructions
//! and enumeration orders are byte-stable across runs and thread counts.
//! The `parallel` feature (on by default) runs the data-parallel inner
//! loops on rayon; the sequential fallbacks produce identical results.

pub mod canon;
pub mod census;
pub mod config;
pub mod construct;
pub mod cyclic;
pub mod enumerate;
pub mod graphs;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use census::{
    census_from_formulas, count_fragments_direct, count_triangles, verify_census, CensusError,
    FragmentCensus,
};
pub use config::{
    is_connected, validate, Block, Configuration, ParseError, Rule, TooManyPoints,
    ValidationReport, Violation,
};
pub use construct::{
    cremona_richmond, extend_plus_five, find_ten_cycle, heawood_chain, seed_triangle_free,
    triangle_free, ConstructError, ExtensionTrace,
};
pub use cyclic::{
    classify_cyclic, cyclic_configuration, enumerate_cyclic, predict_cyclic_triangles, CyclicError,
    CyclicTriple,
};
pub use enumerate::{
    enumerate_all, enumerate_with, triangle_distribution, EnumerateError, TriangleDistribution,
};
pub use graphs::{
    configuration_from_levi, count_six_cycles, girth, incidence_graph, levi_graph, Girth,
    LeviError, LeviGraph, Side, SimpleGraph,
};
