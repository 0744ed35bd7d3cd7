use std::time::Instant;

use serde_json::{json, Value};

use super::{millis, try_oracle, try_structured, Subject};
use crate::error::Result;
use crate::linalg::AbelianGroup;
use crate::scheme::SchemeElement;

/// Wall-clock statistics over repeated runs, in milliseconds.
#[derive(Clone, Debug, PartialEq)]
pub struct Timing {
    pub runs: Vec<f64>,
}

impl Timing {
    pub fn min_ms(&self) -> f64 {
        self.runs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn median_ms(&self) -> f64 {
        let mut v = self.runs.clone();
        v.sort_by(f64::total_cmp);
        v[v.len() / 2]
    }

    fn to_json(&self) -> Value {
        json!({ "runs": self.runs.len(), "min_ms": self.min_ms(), "median_ms": self.median_ms() })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub subject: Subject,
    pub structured: Option<Timing>,
    pub structured_skipped: Option<String>,
    pub oracle: Option<Timing>,
    pub oracle_skipped: Option<String>,
    /// Whether both arms returned the same group, when both ran.
    pub agree: Option<bool>,
}

impl BenchReport {
    /// Median brute-force time over median structured time.
    pub fn speedup(&self) -> Option<f64> {
        Some(self.oracle.as_ref()?.median_ms() / self.structured.as_ref()?.median_ms())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subject": self.subject.to_json(),
            "structured": self.structured.as_ref().map(Timing::to_json),
            "structured_skipped": self.structured_skipped,
            "oracle": self.oracle.as_ref().map(Timing::to_json),
            "oracle_skipped": self.oracle_skipped,
            "agree": self.agree,
            "speedup": self.speedup(),
        })
    }
}

type Arm = fn(&SchemeElement, u64) -> Result<(Option<AbelianGroup>, Option<String>)>;

fn run_arm(
    e: &SchemeElement,
    cap: u64,
    repeats: usize,
    arm: Arm,
) -> Result<(Option<AbelianGroup>, Option<Timing>, Option<String>)> {
    let mut runs = Vec::new();
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let t = Instant::now();
        let (g, skipped) = arm(e, cap)?;
        if skipped.is_some() {
            return Ok((None, None, skipped));
        }
        runs.push(millis(t));
        last = g;
    }
    Ok((last, Some(Timing { runs }), None))
}

/// Times the structured pipeline against the brute-force SNF. The brute-force
/// arm is skipped when the matrix exceeds `cap`; the structured arm is
/// skipped below its parameter range.
pub fn bench(e: &SchemeElement, repeats: usize, cap: u64) -> Result<BenchReport> {
    let (sg, structured, structured_skipped) = run_arm(e, cap, repeats, |e, _| try_structured(e))?;
    let (og, oracle, oracle_skipped) = run_arm(e, cap, repeats, try_oracle)?;
    let agree = match (&sg, &og) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    Ok(BenchReport {
        subject: Subject::of(e, None),
        structured,
        structured_skipped,
        oracle,
        oracle_skipped,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_case_skips_brute_force() {
        let e = SchemeElement::laplacian(16, 3, 2).unwrap();
        let r = bench(&e, 1, 300).unwrap();
        assert!(r.structured.is_some());
        assert!(r.oracle.is_none() && r.oracle_skipped.is_some());
        assert_eq!(r.agree, None);
        assert!(r.to_json()["speedup"].is_null());
    }

    #[test]
    fn trivial_case() {
        let e = SchemeElement::from_i64(3, 0, &[1], 0).unwrap();
        let r = bench(&e, 3, 10).unwrap();
        assert_eq!(r.agree, Some(true));
        assert_eq!(r.structured.unwrap().runs.len(), 3);
    }
}
