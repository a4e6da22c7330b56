//! Finite alternating and symmetric group actions on closed surfaces.
//!
//! The crate works purely combinatorially: an action is encoded by a
//! generating vector of a Fuchsian signature, classified up to weak
//! conjugacy by the conjugacy classes of its elliptic images.

pub mod datasets;
pub mod enumerate;
pub mod error;
pub mod factors;
pub mod group;
pub mod lifting;
pub mod orbifold;
pub mod perm;
mod stabchain;
pub mod tables;

pub use datasets::{DataSetKind, Entry, GroupDataSet};
pub use enumerate::{
    enumerate_vectors, enumerate_weak_classes, find_vector, shortcut_class_multiset, GeneratingVector, SearchBudget,
    WeakClass, WeakClassList,
};
pub use error::{Clause, Error, Result};
pub use factors::{cyclic_factor, fixed_point_count, max_order_bound, obstruction_report, weakly_generates};
pub use group::{AltClassLabel, ClassKey, Family, GroupSpec};
pub use lifting::{
    admissible_permutations, decide_lift, free_action_analysis, index2_restrict, psi_map, self_normalizing,
    InvolutionDescent, LiftVerdict,
};
pub use orbifold::{enumerate_signatures, rh_genus, validate_cyclic, CyclicDataSet, Signature};
pub use perm::{class_splits, CycleType, Perm};
