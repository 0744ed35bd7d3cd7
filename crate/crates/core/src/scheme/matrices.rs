use num_bigint::BigInt;
use num_traits::Zero;

use super::{SchemeElement, SchemeParams};
use crate::combinatorics::{enumerate_subsets, enumerate_subsets_up_to, Subset, SubsetClass};
use crate::error::Result;
use crate::linalg::IntMatrix;

pub(crate) fn inclusion_matrix(rows: &[Subset], cols: &[Subset]) -> IntMatrix {
    IntMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        BigInt::from(u8::from(rows[i].is_subset_of(&cols[j])))
    })
    .with_labels(Some(rows.to_vec()), Some(cols.to_vec()))
    .expect("labels match by construction")
}

/// `A_{n,k_r,k_c,ℓ}`: 1 where the row and column subsets meet in exactly `ℓ`
/// elements.
pub fn intersection_matrix(p: SchemeParams) -> IntMatrix {
    let rows = enumerate_subsets(p.n, p.k_r, SubsetClass::Unrestricted);
    let cols = enumerate_subsets(p.n, p.k_c, SubsetClass::Unrestricted);
    let ell = p.ell as usize;
    IntMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        BigInt::from(u8::from(rows[i].intersection_len(&cols[j]) == ell))
    })
    .with_labels(Some(rows), Some(cols))
    .expect("labels match by construction")
}

/// Inclusion of standard `(≤k)`-subsets (columns, size-ascending) in
/// unrestricted `k`-subsets (rows).
pub fn bier_p(n: u32, k: u32) -> IntMatrix {
    let rows = enumerate_subsets(n, k, SubsetClass::Unrestricted);
    let cols = enumerate_subsets_up_to(n, k, SubsetClass::Standard);
    IntMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        BigInt::from(u8::from(cols[j].is_subset_of(&rows[i])))
    })
    .with_labels(Some(rows), Some(cols))
    .expect("labels match by construction")
}

/// Inclusion of standard `i`-subsets in standard `j`-subsets. This is the
/// identity for `i = j` and zero for `i > j`.
pub fn w_matrix(n: u32, i: u32, j: u32) -> IntMatrix {
    let rows = enumerate_subsets(n, i, SubsetClass::Standard);
    if i > j {
        let cols = enumerate_subsets(n, j, SubsetClass::Standard);
        return IntMatrix::zeros(rows.len(), cols.len())
            .with_labels(Some(rows), Some(cols))
            .expect("labels match by construction");
    }
    let cols = enumerate_subsets(n, j, SubsetClass::Standard);
    inclusion_matrix(&rows, &cols)
}

/// The block upper-triangular matrix with block `(i, j)` equal to
/// `Σ_ℓ b_ℓ f_i(j; ℓ)·W_{i,j}`, minus `λ` on the diagonal. Rows are standard
/// `(≤k_r)`-subsets and columns standard `(≤k_c)`-subsets, size-ascending.
pub fn upper_block_matrix(e: &SchemeElement) -> IntMatrix {
    let rows = enumerate_subsets_up_to(e.n, e.k_r, SubsetClass::Standard);
    let cols = enumerate_subsets_up_to(e.n, e.k_c, SubsetClass::Standard);
    let f: Vec<Vec<BigInt>> = (0..=e.k_r)
        .map(|i| (0..=e.k_c).map(|j| e.combined_f(i, j)).collect())
        .collect();
    let mut m = IntMatrix::from_fn(rows.len(), cols.len(), |r, c| {
        let (a, b) = (&rows[r], &cols[c]);
        if a.len() <= b.len() && a.is_subset_of(b) {
            f[a.len()][b.len()].clone()
        } else {
            BigInt::zero()
        }
    });
    if !e.lambda.is_zero() {
        for t in 0..rows.len().min(cols.len()) {
            let v = m.get(t, t) - &e.lambda;
            m.set(t, t, v);
        }
    }
    m.with_labels(Some(rows), Some(cols))
        .expect("labels match by construction")
}

/// Checks `A·P_{k_c} = P_{k_r}·U` exactly, with `U` the block matrix of
/// [`upper_block_matrix`] for `A_{n,k_r,k_c,ℓ}`.
pub fn triangular_check(p: SchemeParams) -> Result<bool> {
    let a = intersection_matrix(p);
    let u = upper_block_matrix(&SchemeElement::intersection(p, BigInt::zero())?);
    let lhs = a.mul(&bier_p(p.n, p.k_c))?;
    let rhs = bier_p(p.n, p.k_r).mul(&u)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_unimodular;

    fn set(n: u32, e: &[u32]) -> Subset {
        Subset::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn petersen() {
        let a = intersection_matrix(SchemeParams::square(5, 2, 0).unwrap());
        assert_eq!((a.rows(), a.cols()), (10, 10));
        let labels = a.col_labels().unwrap();
        let ones: Vec<String> = (0..10)
            .filter(|&j| a[(0, j)] == BigInt::from(1))
            .map(|j| labels[j].to_string())
            .collect();
        assert_eq!(ones, ["{3,4}", "{3,5}", "{4,5}"]);
    }

    #[test]
    fn identity_when_ell_is_k() {
        let a = intersection_matrix(SchemeParams::square(6, 3, 3).unwrap());
        assert_eq!(a, IntMatrix::identity(20));
    }

    #[test]
    fn bier_first_row() {
        let p = bier_p(4, 2);
        assert_eq!(p.rows(), 6);
        assert_eq!(p.row_labels().unwrap()[0], set(4, &[1, 2]));
        let cols: Vec<String> = p
            .col_labels()
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(cols, ["{}", "{2}", "{3}", "{4}", "{2,4}", "{3,4}"]);
        let row: Vec<i64> = p.row(0).iter().map(|v| i64::try_from(v).unwrap()).collect();
        assert_eq!(row, [1, 1, 0, 0, 0, 0]);
        assert!(is_unimodular(&p));
        assert!(is_unimodular(&bier_p(8, 3)));
    }

    #[test]
    fn w_shapes() {
        let w = w_matrix(5, 1, 2);
        assert_eq!((w.rows(), w.cols()), (4, 5));
        let cols = w.col_labels().unwrap();
        let c = cols.iter().position(|s| *s == set(5, &[2, 4])).unwrap();
        assert_eq!(w[(0, c)], BigInt::from(1));
        assert_eq!(w[(1, c)], BigInt::zero());
        assert_eq!(w_matrix(9, 2, 2), IntMatrix::identity(27));
        let z = w_matrix(12, 4, 3);
        assert_eq!((z.rows(), z.cols()), (275, 154));
        assert!(z.is_zero());
    }

    #[test]
    fn triangular_small() {
        assert!(triangular_check(SchemeParams::new(7, 2, 3, 1).unwrap()).unwrap());
        assert!(triangular_check(SchemeParams::square(6, 2, 2).unwrap()).unwrap());
    }
}
