//! Exact Smith groups and diagonal forms for subset intersection matrices
//! and for every integer matrix in the Bose–Mesner algebra of the Johnson
//! association scheme.
//!
//! The structured pipeline never touches the `C(n,k) × C(n,k)` matrix: each
//! scheme element reduces to at most `k + 1` small upper-triangular blocks
//! `M_s`, whose Smith forms are replicated with multiplicity
//! `μ_s − μ_{s−1}`. The [`oracle`] module rebuilds the full matrix for
//! cross-checking, and [`superstandard`] holds the experimental
//! super-standard basis machinery.

pub mod combinatorics;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod scheme;
pub mod superstandard;

pub use combinatorics::{binomial, mu, Subset, SubsetClass};
pub use error::{Error, Result};
pub use linalg::{AbelianGroup, IntMatrix, SmithForm};
pub use scheme::{SchemeElement, SchemeParams};

/// An arbitrary-precision integer as a JSON number.
pub fn json_int(v: &num_bigint::BigInt) -> serde_json::Value {
    serde_json::Value::Number(
        v.to_string()
            .parse()
            .expect("decimal integers are valid JSON numbers"),
    )
}
