//! Domination in the bipartite graphs `G(k,l)` whose vertices are the `k`- and
//! `l`-element subsets of `{1..n}`, with an edge whenever the smaller set is
//! contained in the larger one.
//!
//! The crate is organised bottom-up:
//!
//! * [`setcore`]: word-sized subsets of `{1..n}`, level enumeration and ranking.
//! * [`levelgraph`]: the implicit graph, its statistics and opt-in materialisation.
//! * [`constructions`]: explicit dominating families and their verifiers.
//! * [`solver`]: greedy, brute-force and branch-and-bound domination numbers.
//! * [`experiments`]: parameter sweeps and report tables used by the CLI.

pub mod bitset;
pub mod constructions;
pub mod error;
pub mod experiments;
pub mod levelgraph;
pub mod setcore;
pub mod solver;

pub use constructions::{
    theorem1_construct, theorem2_construct, theorem2_lower_bound_witness, verify_certificate,
    verify_structural, verify_theorem1_structural, DominationCertificate, Provenance,
    StructuralVerdict, Theorem1Parts, Verification,
};
pub use error::{Error, Result};
pub use levelgraph::{graph_stats, GraphStats, Level, LevelGraphSpec, MaterializedGraph, VertexRef};
pub use setcore::{binomial, enumerate_k_subsets, rank, spanning_pairs, unrank, PairFamily, Subset};
pub use solver::{
    branch_and_bound_gamma, brute_force_gamma, counting_lower_bound, greedy_dominate, Method,
    SolveReport,
};
