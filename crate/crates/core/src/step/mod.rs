//! The step-function extension `G•` of a gyrogroup `G`.
//!
//! Elements are canonical step functions on `J = [0, 1)` with exact
//! rational breakpoints; every operation is pointwise on a common
//! refinement, and neighborhoods `O(V, ε)` are decided by exact measure.

mod base;
mod bullet;
mod embed;
mod function;
mod partition;
mod path;

pub use base::{
    check_hausdorff, check_intersection_condition, check_inverse_condition, check_sum_condition,
    hausdorff_witness,
};
pub use bullet::StepGyrogroup;
pub use embed::{embed_const, separation_witness, verify_separation, SeparationWitness};
pub use function::StepFunction;
pub use partition::Partition;
pub use path::path;
