//! Star-factor and path-factor analysis for small graphs.
//!
//! The library decides, for an undirected simple graph, whether it has a
//! spanning star factor (`S_n`), a path factor (`P>=2`, `P>=3`), or is
//! factor covered for those families, via the classical Tutte-type
//! characterizations; every negative verdict comes with a deleted-set
//! certificate that can be re-checked independently. A brute-force partition
//! search provides constructive ground truth, generators build the extremal
//! graphs showing each minimum-degree bound tight, and an enumeration
//! harness sweeps the statements over all small graphs.

pub mod analysis;
pub mod constructions;
pub mod error;
pub mod format;
pub mod graph;
pub mod harness;
pub mod matching;
pub mod search;

pub use analysis::{
    epsilon1, epsilon2, epsilon3, has_p2_factor, has_p3_factor, has_sn_factor,
    has_sn_factor_independent_form, is_p2_covered, is_p2p3_covered, is_p3_covered, is_sun,
    sun_count, Decision, Property, SunDecomposition, SunKind, ViolationWitness,
};
pub use constructions::{big_sun, odd_cycle, sharpness_graph, SharpnessCase, TheoremId};
pub use error::{Error, Result};
pub use format::{parse_edge_list, parse_graph6, write_graph6};
pub use graph::{
    canonical_form, components, delete_vertices, disjoint_union, find_induced_star,
    is_independent, is_k1r_free, isolated_count, join, make_named_graph, min_degree,
    neighborhood_of_set, Graph, InducedSubgraph, K1rWitness, NamedGraph, VertexSet,
};
pub use harness::{
    enumerate_graphs, oracle_crosscheck, verify_theorem, CrosscheckConfig, CrosscheckReport,
    SweepConfig, TheoremReport,
};
pub use matching::{
    has_perfect_matching, is_factor_critical, max_matching, max_matching_size, Matching,
};
pub use search::{
    find_factor, find_factor_covering_edge, find_pgek_factor, find_sn_factor,
    is_covered_bruteforce, verify_factor, ComponentKind, Factor, FactorComponent, FactorFamily,
};
