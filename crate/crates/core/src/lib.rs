//! Double successive rough-set approximations.
//!
//! Two equivalence relations `E₁`, `E₂` on a finite universe give four
//! operators `X ↦ op₂(op₁(X))`, with each `opᵢ` a lower or upper approximation.
//! This crate composes them into dense tables, recovers generating pairs from
//! tables, and decides when that pair is unique.
//!
//! ```
//! use roughpair::{compose, decompose, DecomposeOptions, OperatorKind, Partition, Universe};
//!
//! let u = Universe::parse("a,b,c,d,e").unwrap();
//! let e1 = Partition::parse(&u, "a,c|b|d,e").unwrap();
//! let e2 = Partition::parse(&u, "a,b|c,d|e").unwrap();
//! let t = compose(&e1, &e2, OperatorKind::LL).unwrap();
//! let sol = decompose(&t, &DecomposeOptions::default());
//! assert_eq!(sol.solution().unwrap().s, e1);
//! ```

pub mod approx;
pub mod decompose;
pub mod error;
pub mod optable;
pub mod oracle;
pub mod sets;
pub mod uniqueness;

pub use approx::{
    classify, dependency_degree, granule_cover, lower, pawlak_violations, pos_region, upper,
    Definability, DependencyDegree, PawlakProperty,
};
pub use decompose::{
    decompose, decompose_ll, decompose_ll_with, decompose_lu, decompose_lu_with, decompose_ul,
    decompose_ul_with, decompose_uu, decompose_uu_with, minimal_preimages, minimum_preimage,
    relation_from_family, DecompOutcome, DecomposeOptions, NoSolutionReason, Solution,
};
pub use error::{Error, Result};
pub use optable::{
    apply, compose, dual_transform, is_monotone, tables_equal, OpTable, OperatorKind,
};
pub use oracle::{
    all_solutions, enumerate_partitions, oracle_unique, sweep, PartitionEnumerator, SweepReport,
};
pub use sets::{intersect_ind, Partition, Subset, Universe, MAX_ELEMENTS};
pub use uniqueness::{
    has_forbidden_component, incidence_graph, independent, is_unique, is_unique_ll, is_unique_lu,
    is_unique_ul, is_unique_uu, singleton_transversal, split_witness, uniqueness_cardinality_ok,
    upper_images_distinct, Condition, ConditionId, ConditionReport, IncidenceGraph, Witness,
};
