//! Numerical semigroup invariants, Wilf-type bound checkers with their
//! partition witnesses, and exhaustive sweeps over the semigroup tree.

pub mod apery;
pub mod bounds;
pub mod enumerate;
pub mod error;
pub mod report;
pub mod semigroup;

pub use apery::{
    apery_set, is_almost_symmetric, pseudo_frobenius, symmetry_class, AperySet, PseudoFrobeniusSet,
    SymmetryClass,
};
pub use bounds::{
    apery_partition_witness, check_bound, full_report, pf_partition_witness, BoundId, BoundReport,
    FullReport, Scope, WitnessKind, WitnessPartition,
};
pub use enumerate::{
    brute_force_oracle, count_by_genus, enumerate_tree, oracle_crosscheck, sweep, SweepOptions,
    SweepSummary, TreeNode, TreeOptions,
};
pub use error::{Error, Result};
pub use semigroup::{GeneratorTuple, Invariants, Semigroup};
