//! Minimum k-cut solvers over undirected graphs with positive integer
//! weights.
//!
//! The crate provides four independent routes to a minimum k-cut, each with a
//! different trade-off between speed, generality and guarantees:
//!
//! * [`oracle`] — small exact and classical baselines: brute force over
//!   partitions, recursive random contraction, a global min-cut routine, a
//!   2-approximation by repeated splitting, and a reduction from maximum
//!   clique for adversarial test instances.
//! * [`packing`] + [`refine`] + [`tight`] — the randomized exact solver:
//!   pack spanning trees greedily under load-balancing, sample trees that
//!   cross some minimum k-cut few times, locally refine them until the cut
//!   only removes tree edges, then recover the best cut from one tree by
//!   dynamic programming and a triangle search.
//! * [`deterministic`] — the deterministic exact solver: reduce tree degrees,
//!   split the candidate tree edges into three balanced groups with small
//!   boundary, and search compatible group choices.
//! * [`approx`] + [`pvc`] — the (1+eps)-approximation: condense the tree to a
//!   small set of important vertices and run a tower of dynamic programs
//!   whose inner bottleneck is a partial vertex cover search.
//!
//! [`solver`] wires these into ready-to-run pipelines and [`corpus`]
//! generates the instance families used by the test suite and the CLI.

pub mod approx;
pub mod corpus;
pub mod deterministic;
pub mod graph;
pub mod oracle;
pub mod packing;
pub mod pvc;
pub mod refine;
pub mod solver;
pub mod tight;

pub use graph::{
    build_cross_table, build_graph, cut_weight, mix_seed, tree_cut, CrossWeightTable, Error,
    KCutSolution, Partition, Result, RootedSpanningTree, Weight, WeightedGraph,
};
