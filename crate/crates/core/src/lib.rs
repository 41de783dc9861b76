//! Leveled Reeb graphs and their tree decompositions.
//!
//! A Reeb graph is stored combinatorially: vertex sets over exact critical
//! values and edge sets between consecutive values. On top of that model the
//! crate provides critical-set minimization and refinement, the DAG view with
//! its Betti-number formulas, the decomposition into ordered trees, three
//! isomorphism deciders, cophenetic/Hausdorff distances between time-consistent
//! networks, and extended-Newick / JSON / DOT formats.
//!
//! Everything is generic over the level scalar (see [`Scalar`]); the default
//! is the arbitrary-precision [`Rational`].

pub mod critical;
pub mod dag;
pub mod decomposition;
pub mod error;
pub mod fixtures;
pub mod formats;
pub mod generate;
pub mod graph;
pub mod iso;
pub mod phylo;
pub mod scalar;

pub use critical::{
    edge_sequence, minimize_critical_set, refine_to_levels, same_edge_structure, EdgeSequence,
};
pub use dag::{betti_euler, betti_reticulation, build_dag_view, DagView, VertexClass, VertexKind};
pub use decomposition::{
    build_tree_factor, decompose, enumerate_cut_choices, factors, glue_back, CutChoice, CutChoices,
    TreeFactor,
};
pub use error::ReebError;
pub use formats::{
    network_to_reeb, parse_enewick, read_reeb_json, reeb_to_network, write_dot, write_enewick,
    write_reeb_json, FormatError, NetworkDocument,
};
pub use generate::{generate, GeneratorSpec};
pub use graph::{Edge, LevelPoset, ReebGraph, ReebGraphBuilder, ValidationReport, Violation};
pub use iso::{
    brute_force_iso, canonical_form, labelled_iso, reeb_iso, reeb_iso_report, verify_witness,
    CanonicalForm, IsoReport, MorphismWitness,
};
pub use phylo::{
    cophenetic_vector, hausdorff, lp_distance, network_distance, CopheneticVector, Distance,
    LeafOrdering, Norm, TimeConvention,
};
pub use scalar::{Rational, Scalar};

/// Graph over arbitrary-precision rational levels.
pub type RationalReebGraph = ReebGraph<Rational>;
/// Graph over 64-bit rational levels.
pub type SmallRationalReebGraph = ReebGraph<num_rational::Ratio<i64>>;
/// Graph over integer levels.
pub type IntReebGraph = ReebGraph<i64>;
