use std::fmt;
use std::str::FromStr;

use clap::Args;
use johnson_snf::scheme::degree;
use johnson_snf::{SchemeElement, SchemeParams};
use num_bigint::BigInt;

use crate::{usage, CliError};

/// The shift `λ`: an integer, or `degree` for the row sum of `A_{n,k,ℓ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Lambda {
    Degree,
    Value(BigInt),
}

impl FromStr for Lambda {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "degree" {
            return Ok(Lambda::Degree);
        }
        s.parse()
            .map(Lambda::Value)
            .map_err(|_| format!("expected an integer or `degree`, got `{s}`"))
    }
}

/// Flags naming one scheme element. All optional at parse time so that
/// `export-matrix` can reuse them; [`ElementArgs::to_element`] enforces the
/// combinations.
#[derive(Args, Clone, Debug, Default)]
pub(crate) struct ElementArgs {
    #[arg(long)]
    pub n: Option<u32>,
    /// Subset size for square elements.
    #[arg(long, conflicts_with_all = ["kr", "kc"])]
    pub k: Option<u32>,
    /// Row subset size (non-square).
    #[arg(long)]
    pub kr: Option<u32>,
    /// Column subset size (non-square).
    #[arg(long)]
    pub kc: Option<u32>,
    /// Single intersection size ℓ.
    #[arg(long, conflicts_with = "coeffs")]
    pub ell: Option<u32>,
    /// Coefficients b_0,…,b_k of Σ b_ℓ A_ℓ.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<BigInt>>,
    /// Shift λ: an integer or `degree` (needs --ell).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<Lambda>,
}

impl ElementArgs {
    pub(crate) fn to_element(&self) -> Result<SchemeElement, CliError> {
        let n = self.n.ok_or_else(|| usage("--n is required"))?;
        let (kr, kc) = match (self.k, self.kr, self.kc) {
            (Some(k), None, None) => (k, k),
            (None, Some(kr), Some(kc)) => (kr, kc),
            (None, None, None) => return Err(usage("one of --k or --kr/--kc is required")),
            _ => return Err(usage("--kr and --kc must be given together")),
        };
        match (self.ell, &self.coeffs) {
            (Some(ell), None) => {
                let p = SchemeParams::new(n, kr, kc, ell)?;
                let lambda = match &self.lambda {
                    None => BigInt::from(0),
                    Some(Lambda::Value(v)) => v.clone(),
                    Some(Lambda::Degree) if p.is_square() => degree(n, kr, ell),
                    Some(Lambda::Degree) => {
                        return Err(usage("--lambda degree needs a square element (--k)"))
                    }
                };
                Ok(SchemeElement::intersection(p, lambda)?)
            }
            (None, Some(coeffs)) => {
                if kr != kc {
                    return Err(usage(
                        "--coeffs needs --k; non-square elements take a single --ell",
                    ));
                }
                let lambda = match &self.lambda {
                    None => BigInt::from(0),
                    Some(Lambda::Value(v)) => v.clone(),
                    Some(Lambda::Degree) => {
                        return Err(usage(
                            "--lambda degree requires --ell, since the degree depends on ℓ",
                        ))
                    }
                };
                Ok(SchemeElement::new(n, kr, coeffs.clone(), lambda)?)
            }
            (None, None) => Err(usage("one of --ell or --coeffs is required")),
            (Some(_), Some(_)) => Err(usage("--ell and --coeffs are mutually exclusive")),
        }
    }
}

/// `n=12 k=3 coeffs=0,1,3,0 lambda=0`
pub(crate) struct Describe<'a>(pub &'a SchemeElement);

impl fmt::Display for Describe<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.0;
        write!(f, "n={} ", e.n())?;
        if e.is_square() {
            write!(f, "k={}", e.k_r())?;
        } else {
            write!(f, "kr={} kc={}", e.k_r(), e.k_c())?;
        }
        let coeffs: Vec<String> = e.coeffs().iter().map(ToString::to_string).collect();
        write!(f, " coeffs={} lambda={}", coeffs.join(","), e.lambda())
    }
}
