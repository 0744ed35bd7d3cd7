//! Brute-force ground truth: the full scheme matrix is assembled entrywise and
//! handed to the dense Smith normal form, with no structure assumed.

mod bench;
mod closed_form;

pub use bench::{bench, BenchReport, Timing};
pub use closed_form::{johnson_k3_adjacency_x, verify_closed_form, Theorem};

use std::time::Instant;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::combinatorics::{enumerate_subsets, SubsetClass};
use crate::error::{Error, Result};
use crate::json_int;
use crate::linalg::{smith_normal_form, AbelianGroup, IntMatrix};
use crate::scheme::{smith_group, SchemeElement};

/// Default bound on `max(C(n,k_r), C(n,k_c))` for the dense SNF.
pub const DEFAULT_CAP: u64 = 3000;

/// The labeled `C(n,k_r) × C(n,k_c)` matrix `Σ_ℓ b_ℓ A_ℓ − λI`, built
/// entrywise from intersection sizes.
pub fn scheme_matrix(e: &SchemeElement) -> IntMatrix {
    let rows = enumerate_subsets(e.n(), e.k_r(), SubsetClass::Unrestricted);
    let cols = enumerate_subsets(e.n(), e.k_c(), SubsetClass::Unrestricted);
    let coeffs = e.coeffs();
    let mut m = IntMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        coeffs[rows[i].intersection_len(&cols[j])].clone()
    });
    if e.is_square() {
        for t in 0..rows.len() {
            let v = m.get(t, t) - e.lambda();
            m.set(t, t, v);
        }
    }
    m.with_labels(Some(rows), Some(cols))
        .expect("labels match by construction")
}

/// Smith group of the full matrix. Valid for every `n`, including the range
/// below `3k_c − 1` where the block reduction is unavailable.
pub fn brute_force_group(e: &SchemeElement, cap: u64) -> Result<AbelianGroup> {
    let size = e.rows().max(e.cols());
    if size > cap {
        return Err(Error::SizeCapExceeded { size, cap });
    }
    Ok(smith_normal_form(&scheme_matrix(e), false).group())
}

/// What a report is about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subject {
    pub theorem: Option<String>,
    pub n: u32,
    pub k_r: u32,
    pub k_c: u32,
    pub coeffs: Vec<BigInt>,
    pub lambda: BigInt,
}

impl Subject {
    pub fn of(e: &SchemeElement, theorem: Option<String>) -> Self {
        Subject {
            theorem,
            n: e.n(),
            k_r: e.k_r(),
            k_c: e.k_c(),
            coeffs: e.coeffs().to_vec(),
            lambda: e.lambda().clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem,
            "n": self.n,
            "k_r": self.k_r,
            "k_c": self.k_c,
            "coeffs": self.coeffs.iter().map(json_int).collect::<Vec<_>>(),
            "lambda": json_int(&self.lambda),
        })
    }
}

/// Pairwise comparisons; `None` when one side was not computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Agreement {
    pub structured_oracle: Option<bool>,
    pub closed_form_structured: Option<bool>,
    pub closed_form_oracle: Option<bool>,
}

impl Agreement {
    fn between(a: &Option<AbelianGroup>, b: &Option<AbelianGroup>) -> Option<bool> {
        Some(a.as_ref()? == b.as_ref()?)
    }

    fn flags(&self) -> [Option<bool>; 3] {
        [
            self.structured_oracle,
            self.closed_form_structured,
            self.closed_form_oracle,
        ]
    }
}

/// Wall-clock milliseconds per computation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Timings {
    pub structured_ms: Option<f64>,
    pub oracle_ms: Option<f64>,
    pub closed_form_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub subject: Subject,
    pub structured: Option<AbelianGroup>,
    /// Why the structured result is missing, if it is.
    pub structured_skipped: Option<String>,
    pub oracle: Option<AbelianGroup>,
    pub oracle_skipped: Option<String>,
    pub closed_form: Option<AbelianGroup>,
    pub agreement: Agreement,
    pub timings: Timings,
}

impl VerificationReport {
    /// True iff at least one pair was compared and every compared pair agrees.
    pub fn agrees(&self) -> bool {
        let flags = self.agreement.flags();
        flags.iter().any(Option::is_some) && flags.iter().flatten().all(|&ok| ok)
    }

    /// Timings are optional so that repeated runs can be byte-identical.
    pub fn to_json(&self, with_timings: bool) -> Value {
        let group = |g: &Option<AbelianGroup>| {
            g.as_ref()
                .map(|g| serde_json::to_value(g).expect("groups serialize"))
        };
        let mut v = json!({
            "subject": self.subject.to_json(),
            "structured": group(&self.structured),
            "structured_skipped": self.structured_skipped,
            "oracle": group(&self.oracle),
            "oracle_skipped": self.oracle_skipped,
            "closed_form": group(&self.closed_form),
            "agreement": {
                "structured_oracle": self.agreement.structured_oracle,
                "closed_form_structured": self.agreement.closed_form_structured,
                "closed_form_oracle": self.agreement.closed_form_oracle,
            },
            "agrees": self.agrees(),
        });
        if with_timings {
            v["timings_ms"] = json!({
                "structured": self.timings.structured_ms,
                "oracle": self.timings.oracle_ms,
                "closed_form": self.timings.closed_form_ms,
            });
        }
        v
    }
}

pub(crate) fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Runs the structured pipeline, treating a refused parameter range as a
/// skip rather than a failure.
pub(crate) fn try_structured(e: &SchemeElement) -> Result<(Option<AbelianGroup>, Option<String>)> {
    match smith_group(e) {
        Ok(r) => Ok((Some(r.group), None)),
        Err(Error::InvalidParameters(msg)) => Ok((None, Some(msg))),
        Err(other) => Err(other),
    }
}

pub(crate) fn try_oracle(
    e: &SchemeElement,
    cap: u64,
) -> Result<(Option<AbelianGroup>, Option<String>)> {
    match brute_force_group(e, cap) {
        Ok(g) => Ok((Some(g), None)),
        Err(err @ Error::SizeCapExceeded { .. }) => Ok((None, Some(err.to_string()))),
        Err(other) => Err(other),
    }
}

fn build_report(
    e: &SchemeElement,
    theorem: Option<String>,
    closed_form: Option<(AbelianGroup, f64)>,
    cap: u64,
) -> Result<VerificationReport> {
    let t = Instant::now();
    let (structured, structured_skipped) = try_structured(e)?;
    let structured_ms = structured.as_ref().map(|_| millis(t));
    let t = Instant::now();
    let (oracle, oracle_skipped) = try_oracle(e, cap)?;
    let oracle_ms = oracle.as_ref().map(|_| millis(t));
    let (closed_form, closed_form_ms) = match closed_form {
        Some((g, ms)) => (Some(g), Some(ms)),
        None => (None, None),
    };
    let agreement = Agreement {
        structured_oracle: Agreement::between(&structured, &oracle),
        closed_form_structured: Agreement::between(&closed_form, &structured),
        closed_form_oracle: Agreement::between(&closed_form, &oracle),
    };
    Ok(VerificationReport {
        subject: Subject::of(e, theorem),
        structured,
        structured_skipped,
        oracle,
        oracle_skipped,
        closed_form,
        agreement,
        timings: Timings {
            structured_ms,
            oracle_ms,
            closed_form_ms,
        },
    })
}

/// Structured result against the brute force, either side skipped when out of
/// range.
pub fn verify_element(e: &SchemeElement, cap: u64) -> Result<VerificationReport> {
    build_report(e, None, None, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::SchemeParams;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn worked_example() {
        let e = SchemeElement::from_i64(12, 3, &[0, 1, 3, 0], 0).unwrap();
        let g = brute_force_group(&e, DEFAULT_CAP).unwrap();
        let expected = AbelianGroup::from_diagonal([
            (b(3), 2),
            (b(14364), 1),
            (b(2), 10),
            (b(342), 10),
            (b(12), 43),
            (b(6), 100),
        ]);
        assert_eq!(g, expected);
        let r = verify_element(&e, DEFAULT_CAP).unwrap();
        assert!(r.agrees());
        assert_eq!(r.agreement.structured_oracle, Some(true));
    }

    #[test]
    fn petersen_and_identity() {
        let pet =
            SchemeElement::intersection(SchemeParams::square(5, 2, 0).unwrap(), b(0)).unwrap();
        let g = brute_force_group(&pet, 100).unwrap();
        // Eigenvalues 3, 1^5, (−2)^4 give |det| = 48.
        assert_eq!(g.torsion_order(), b(48));
        assert_eq!(g.free_rank(), 0);
        let id = SchemeElement::intersection(SchemeParams::square(7, 3, 3).unwrap(), b(0)).unwrap();
        assert!(brute_force_group(&id, 100).unwrap().is_trivial());
    }

    #[test]
    fn cap_and_small_n() {
        let e = SchemeElement::laplacian(16, 3, 2).unwrap();
        assert_eq!(
            brute_force_group(&e, 300),
            Err(Error::SizeCapExceeded {
                size: 560,
                cap: 300
            })
        );
        let r = verify_element(&e, 300).unwrap();
        assert!(r.oracle.is_none() && r.structured.is_some());
        let small = SchemeElement::laplacian(7, 3, 2).unwrap();
        let r = verify_element(&small, 300).unwrap();
        assert!(r.structured.is_none() && r.oracle.is_some());
        assert_eq!(r.oracle.unwrap().free_rank(), 1);
    }

    #[test]
    fn report_json_is_stable() {
        let e = SchemeElement::from_i64(6, 2, &[1, -1, 2], 1).unwrap();
        let r = verify_element(&e, 100).unwrap();
        let v = r.to_json(false);
        assert_eq!(v["subject"]["coeffs"], json!([1, -1, 2]));
        assert!(v.get("timings_ms").is_none());
        assert_eq!(v["agrees"], json!(true));
        assert!(r.to_json(true)["timings_ms"]["oracle"].is_number());
    }
}
