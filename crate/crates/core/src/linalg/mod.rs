//! Exact integer linear algebra: matrices, Smith normal form, index, gcd of
//! minors, unimodular completion and abelian group canonicalization.

mod completion;
mod group;
mod matrix;
mod minors;
mod modular;
mod scalar;
mod snf;
pub mod text;

pub use completion::{
    unimodular_completion, unimodular_completion_with_strategy, CompletionStrategy,
};
pub use group::AbelianGroup;
pub use matrix::IntMatrix;
pub use minors::{gcd_minors, GCD_MINORS_MAX_DIM};
pub use snf::{index, is_unimodular, rank, smith_normal_form, SmithForm};

use num_bigint::BigInt;

/// Vertical concatenation of matrices sharing a column count.
pub fn stack(parts: &[IntMatrix]) -> crate::Result<IntMatrix> {
    IntMatrix::stack(parts)
}

/// Canonical group `⊕ (Z/|e|)^m`.
pub fn group_from_diagonal<I>(entries: I) -> AbelianGroup
where
    I: IntoIterator<Item = (BigInt, u64)>,
{
    AbelianGroup::from_diagonal(entries)
}
