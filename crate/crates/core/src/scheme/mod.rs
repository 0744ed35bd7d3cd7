//! Matrices of the Johnson scheme and the reduction of their Smith groups to
//! the small `M_s` blocks.

mod basis;
mod matrices;
mod smith;

pub use basis::{d_diag, d_matrix, d_product, e_matrices, verify_basis_identity, DiagonalBlock};
pub use matrices::{bier_p, intersection_matrix, triangular_check, upper_block_matrix, w_matrix};
pub use smith::{
    eigenvalues, ms_matrices, ms_matrix, smith_group, smith_group_via_basis, BlockReport, MsMatrix,
    SmithGroupReport, SpectrumEntry,
};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};

/// Parameters `(n, k_r, k_c, ℓ)` of the intersection matrix `A_{n,k_r,k_c,ℓ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SchemeParams {
    pub n: u32,
    pub k_r: u32,
    pub k_c: u32,
    pub ell: u32,
}

impl SchemeParams {
    /// Checks `0 ≤ ℓ ≤ k_r ≤ k_c ≤ n`.
    pub fn new(n: u32, k_r: u32, k_c: u32, ell: u32) -> Result<Self> {
        if !(ell <= k_r && k_r <= k_c && k_c <= n) {
            return Err(Error::params(format!(
                "need 0 <= ell <= k_r <= k_c <= n, got n={n} k_r={k_r} k_c={k_c} ell={ell}"
            )));
        }
        Ok(SchemeParams { n, k_r, k_c, ell })
    }

    pub fn square(n: u32, k: u32, ell: u32) -> Result<Self> {
        Self::new(n, k, k, ell)
    }

    pub fn is_square(&self) -> bool {
        self.k_r == self.k_c
    }
}

/// `Σ_ℓ b_ℓ A_{n,k_r,k_c,ℓ} − λI`.
///
/// Linear combinations and a nonzero shift are only meaningful when
/// `k_r = k_c`; a rectangular element carries a single intersection size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchemeElement {
    n: u32,
    k_r: u32,
    k_c: u32,
    coeffs: Vec<BigInt>,
    lambda: BigInt,
}

impl SchemeElement {
    /// `Σ_{ℓ=0}^{k} b_ℓ A_{n,k,ℓ} − λI`, with `coeffs = [b_0, …, b_k]`.
    pub fn new(n: u32, k: u32, coeffs: Vec<BigInt>, lambda: BigInt) -> Result<Self> {
        if k > n {
            return Err(Error::params(format!("k={k} exceeds n={n}")));
        }
        if coeffs.len() != k as usize + 1 {
            return Err(Error::params(format!(
                "expected {} coefficients b_0..b_{k}, got {}",
                k + 1,
                coeffs.len()
            )));
        }
        Ok(SchemeElement {
            n,
            k_r: k,
            k_c: k,
            coeffs,
            lambda,
        })
    }

    pub fn from_i64(n: u32, k: u32, coeffs: &[i64], lambda: i64) -> Result<Self> {
        Self::new(
            n,
            k,
            coeffs.iter().copied().map(BigInt::from).collect(),
            BigInt::from(lambda),
        )
    }

    /// `A_{n,k_r,k_c,ℓ} − λI`; `λ` must vanish unless `k_r = k_c`.
    pub fn intersection(p: SchemeParams, lambda: BigInt) -> Result<Self> {
        if !p.is_square() && !lambda.is_zero() {
            return Err(Error::params("a nonzero shift needs k_r = k_c".to_string()));
        }
        let mut coeffs = vec![BigInt::zero(); p.k_r as usize + 1];
        coeffs[p.ell as usize] = BigInt::from(1);
        Ok(SchemeElement {
            n: p.n,
            k_r: p.k_r,
            k_c: p.k_c,
            coeffs,
            lambda,
        })
    }

    /// The graph Laplacian `A_{n,k,ℓ} − d·I` with `d` the degree.
    pub fn laplacian(n: u32, k: u32, ell: u32) -> Result<Self> {
        let p = SchemeParams::square(n, k, ell)?;
        Self::intersection(p, degree(n, k, ell))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k_r(&self) -> u32 {
        self.k_r
    }

    pub fn k_c(&self) -> u32 {
        self.k_c
    }

    pub fn is_square(&self) -> bool {
        self.k_r == self.k_c
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn lambda(&self) -> &BigInt {
        &self.lambda
    }

    /// Nonzero `(ℓ, b_ℓ)` pairs.
    pub(crate) fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .map(|(l, b)| (l as u32, b))
    }

    pub(crate) fn params_for(&self, ell: u32) -> SchemeParams {
        SchemeParams {
            n: self.n,
            k_r: self.k_r,
            k_c: self.k_c,
            ell,
        }
    }

    /// Number of columns, `C(n, k_c)`.
    pub fn cols(&self) -> u64 {
        crate::combinatorics::binomial_u64(self.n as i64, self.k_c as i64)
    }

    /// Number of rows, `C(n, k_r)`.
    pub fn rows(&self) -> u64 {
        crate::combinatorics::binomial_u64(self.n as i64, self.k_r as i64)
    }

    /// `Σ_ℓ b_ℓ f_i(j; ℓ)`
    pub(crate) fn combined_f(&self, i: u32, j: u32) -> BigInt {
        self.terms()
            .map(|(l, b)| b * f_coeff(i, j, self.params_for(l)))
            .sum()
    }
}

/// `C(n−k, k−ℓ)·C(k, ℓ)`, the common row sum of `A_{n,k,ℓ}`.
pub fn degree(n: u32, k: u32, ell: u32) -> BigInt {
    let (n, k, ell) = (n as i64, k as i64, ell as i64);
    binomial(n - k, k - ell) * binomial(k, ell)
}

/// `c_i(j) = C(k_r−i, ℓ−i)·C(n−k_r−j+i, k_c−ℓ−j+i)`
pub fn c_coeff(i: u32, j: u32, p: SchemeParams) -> BigInt {
    let (i, j) = (i as i64, j as i64);
    let (n, kr, kc, l) = (p.n as i64, p.k_r as i64, p.k_c as i64, p.ell as i64);
    binomial(kr - i, l - i) * binomial(n - kr - j + i, kc - l - j + i)
}

/// `f_i(j) = Σ_v (−1)^{i+v} C(i,v) c_v(j)`
pub fn f_coeff(i: u32, j: u32, p: SchemeParams) -> BigInt {
    (0..=i)
        .map(|v| {
            let term = binomial(i as i64, v as i64) * c_coeff(v, j, p);
            if (i + v).is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum()
}
