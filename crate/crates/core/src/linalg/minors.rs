use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntMatrix;
use crate::combinatorics::{enumerate_subsets, SubsetClass};
use crate::error::{Error, Result};

/// Largest dimension accepted by [`gcd_minors`].
pub const GCD_MINORS_MAX_DIM: usize = 8;

/// Gcd of all `i × i` minors (0 if they all vanish).
pub fn gcd_minors(m: &IntMatrix, i: usize) -> Result<BigInt> {
    if i == 0 || i > m.rows().min(m.cols()) {
        return Err(Error::params(format!(
            "minor order {i} out of range for a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows().max(m.cols()) > GCD_MINORS_MAX_DIM {
        return Err(Error::params(format!(
            "gcd_minors is limited to dimension {GCD_MINORS_MAX_DIM}"
        )));
    }
    let index_sets = |n: usize| -> Vec<Vec<usize>> {
        enumerate_subsets(n as u32, i as u32, SubsetClass::Unrestricted)
            .iter()
            .map(|s| s.elements().iter().map(|&e| e as usize - 1).collect())
            .collect()
    };
    let (row_sets, col_sets) = (index_sets(m.rows()), index_sets(m.cols()));
    let mut g = BigInt::zero();
    for rs in &row_sets {
        for cs in &col_sets {
            g = g.gcd(&m.select(rs, cs).determinant()?);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let id = IntMatrix::identity(3);
        assert_eq!(gcd_minors(&id, 3).unwrap(), BigInt::from(1));
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        assert_eq!(gcd_minors(&a, 1).unwrap(), BigInt::from(2));
        assert_eq!(gcd_minors(&a, 2).unwrap(), BigInt::from(8));
        assert_eq!(
            gcd_minors(&IntMatrix::zeros(2, 2), 1).unwrap(),
            BigInt::zero()
        );
        assert!(gcd_minors(&a, 3).is_err());
        assert!(gcd_minors(&a, 0).is_err());
    }
}
