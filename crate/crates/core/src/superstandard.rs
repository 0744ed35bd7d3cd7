//! Super-standard subsets and the matrices `W̃_{i,j}` and `P̃_{i,j}` built
//! from them, together with checks of the conjectured unimodularity of
//! `P̃_{k,k}` and of the boundary/interior structure used to attack it.
//!
//! Nothing here feeds the main pipeline: a `P̃`-based basis is only used
//! after it has been verified instance by instance.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::combinatorics::{enumerate_subsets, mu, Subset, SubsetClass};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::scheme::{d_matrix, w_matrix};

fn inclusion(rows: &[Subset], cols: &[Subset]) -> IntMatrix {
    IntMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        BigInt::from(u8::from(rows[i].is_subset_of(&cols[j])))
    })
    .with_labels(Some(rows.to_vec()), Some(cols.to_vec()))
    .expect("labels match by construction")
}

/// Row labels of `P̃_{i,·}(n)`: super-standard subsets of sizes `0..=i`,
/// size-ascending then lexicographic.
pub fn p_tilde_rows(n: u32, i: u32) -> Vec<Subset> {
    (0..=i)
        .flat_map(|s| enumerate_subsets(n, s, SubsetClass::SuperStandard))
        .collect()
}

/// Inclusion of super-standard `i`-subsets (rows) in standard `j`-subsets.
pub fn w_tilde(n: u32, i: u32, j: u32) -> IntMatrix {
    inclusion(
        &enumerate_subsets(n, i, SubsetClass::SuperStandard),
        &enumerate_subsets(n, j, SubsetClass::Standard),
    )
}

/// The stack of `W̃_{s,j}(n)` for `s = 0..=i`.
pub fn p_tilde(n: u32, i: u32, j: u32) -> IntMatrix {
    inclusion(
        &p_tilde_rows(n, i),
        &enumerate_subsets(n, j, SubsetClass::Standard),
    )
}

/// Outcome of checking the conjecture that `P̃_{i,j}(n)` is `μ_i × μ_j` of
/// index 1 and full rank whenever `i, j ≤ (n+1)/3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n: u32,
    pub i: u32,
    pub j: u32,
    pub rows: usize,
    pub cols: usize,
    pub expected_rows: u64,
    pub expected_cols: u64,
    pub rank: usize,
    pub index: BigInt,
    /// Square with determinant ±1.
    pub unimodular_when_square: bool,
    /// Whether `(n, i, j)` lies in the conjectured range.
    pub in_hypothesis: bool,
    pub holds: bool,
}

impl ConjectureReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "i": self.i,
            "j": self.j,
            "rows": self.rows,
            "cols": self.cols,
            "expected_rows": self.expected_rows,
            "expected_cols": self.expected_cols,
            "rank": self.rank,
            "index": crate::json_int(&self.index),
            "unimodular_when_square": self.unimodular_when_square,
            "in_hypothesis": self.in_hypothesis,
            "holds": self.holds,
        })
    }
}

pub fn check_conjecture(n: u32, i: u32, j: u32) -> ConjectureReport {
    let m = p_tilde(n, i, j);
    let snf = smith_normal_form(&m, false);
    let (rows, cols, rank) = (m.rows(), m.cols(), snf.rank());
    let index = snf.index();
    let (expected_rows, expected_cols) = (mu(n, i), mu(n, j));
    let holds = rows as u64 == expected_rows
        && cols as u64 == expected_cols
        && rank == rows.min(cols)
        && index.is_one();
    ConjectureReport {
        n,
        i,
        j,
        rows,
        cols,
        expected_rows,
        expected_cols,
        rank,
        unimodular_when_square: rows == cols && rank == rows && index.is_one(),
        index,
        in_hypothesis: 3 * i.max(j) <= n + 1,
        holds,
    }
}

/// Checks `P̃_{i,i} W_{i,j} = D_{i,j} P̃_{j,j}` for `i ≤ j ≤ (n+1)/3`.
pub fn check_simpler_lemma(n: u32, i: u32, j: u32) -> Result<bool> {
    if i > j || 3 * j > n + 1 {
        return Err(Error::params(format!(
            "need i <= j <= (n+1)/3, got n={n} i={i} j={j}"
        )));
    }
    let (pi, pj) = (p_tilde(n, i, i), p_tilde(n, j, j));
    if pi.rows() as u64 != mu(n, i) || pj.rows() as u64 != mu(n, j) {
        return Err(Error::DimensionMismatch(format!(
            "P~_{i},{i} or P~_{j},{j} is not square for n={n}"
        )));
    }
    Ok(pi.mul(&w_matrix(n, i, j))? == d_matrix(n, i, j)?.mul(&pj)?)
}

/// `P̃_{0,0}(n), …, P̃_{k,k}(n)`, usable as the `E_s` basis when each one
/// is unimodular.
pub fn p_tilde_basis(n: u32, k: u32) -> Vec<IntMatrix> {
    (0..=k).map(|s| p_tilde(n, s, s)).collect()
}

/// `P̃_{i,j}(n)` with rows and columns permuted boundary-first.
#[derive(Clone, Debug)]
pub struct BoundarySplit {
    pub matrix: IntMatrix,
    pub boundary_rows: usize,
    pub boundary_cols: usize,
    /// The boundary-row × interior-column block vanishes.
    pub mixed_block_zero: bool,
    /// The interior block, relabelled by subtracting 1, is `P̃_{i,j}(n−1)`.
    pub interior_matches: bool,
}

pub fn boundary_interior_split(n: u32, i: u32, j: u32) -> Result<BoundarySplit> {
    if n == 0 {
        return Err(Error::params("need n >= 1"));
    }
    let m = p_tilde(n, i, j);
    let (rl, cl) = (m.row_labels().unwrap(), m.col_labels().unwrap());
    let split = |labels: &[Subset]| -> Result<(Vec<usize>, Vec<usize>)> {
        let mut boundary = Vec::new();
        let mut interior = Vec::new();
        for (t, s) in labels.iter().enumerate() {
            if s.is_boundary()? {
                boundary.push(t);
            } else {
                interior.push(t);
            }
        }
        Ok((boundary, interior))
    };
    let (rb, ri) = split(rl)?;
    let (cb, ci) = split(cl)?;

    let mixed_block_zero = m.select(&rb, &ci).is_zero();

    let interior = m.select(&ri, &ci);
    let smaller = p_tilde(n - 1, i, j);
    let shifted = |labels: Option<&[Subset]>| -> Option<Vec<Subset>> {
        labels?.iter().map(Subset::shift_down).collect()
    };
    let interior_matches = interior == smaller
        && shifted(interior.row_labels()).as_deref() == smaller.row_labels()
        && shifted(interior.col_labels()).as_deref() == smaller.col_labels();

    let row_order: Vec<usize> = rb.iter().chain(&ri).copied().collect();
    let col_order: Vec<usize> = cb.iter().chain(&ci).copied().collect();
    Ok(BoundarySplit {
        matrix: m.select(&row_order, &col_order),
        boundary_rows: rb.len(),
        boundary_cols: cb.len(),
        mixed_block_zero,
        interior_matches,
    })
}

/// Applies `φ` to the boundary block of `P̃_{i,j}(n)` and checks that the
/// row images are exactly the rows of `P̃_{i−1,j−1}(n−1)` and that every
/// boundary column whose set contains 2 becomes the column of
/// `P̃_{i−1,j−1}(n−1)` indexed by its image.
pub fn check_phi_column_equivalence(n: u32, i: u32, j: u32) -> Result<bool> {
    if i == 0 || j == 0 || n < 2 {
        return Err(Error::params("need i, j >= 1 and n >= 2"));
    }
    let boundary = |v: Vec<Subset>| -> Result<Vec<Subset>> {
        let mut out = Vec::new();
        for s in v {
            if s.is_boundary()? {
                out.push(s);
            }
        }
        Ok(out)
    };
    let rows = boundary(p_tilde_rows(n, i))?;
    let cols = boundary(enumerate_subsets(n, j, SubsetClass::Standard))?;
    let row_images = rows.iter().map(Subset::phi).collect::<Result<Vec<_>>>()?;

    let mut sorted = row_images.clone();
    sorted.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    if sorted != p_tilde_rows(n - 1, i - 1) {
        return Ok(false);
    }
    for s in cols.iter().filter(|s| s.contains(2)) {
        let image = s.phi()?;
        for (r, r_image) in rows.iter().zip(&row_images) {
            if r.is_subset_of(s) != r_image.is_subset_of(&image) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Results of the `φ` bijection checks for `k`-subsets of `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiBijections {
    /// Boundary super-standard `k`-subsets of `n` → super-standard
    /// `(k−1)`-subsets of `n−1`.
    pub super_standard: bool,
    /// Boundary standard, non super-standard `k`-subsets of `n` → standard,
    /// non super-standard `(k−1)`-subsets of `n−1`.
    pub non_super_standard: bool,
    /// Boundary super-standard `(≤k)`-subsets of `n` → super-standard
    /// `(≤ k−1)`-subsets of `n−1`.
    pub up_to: bool,
    /// `φ⁻¹ ∘ φ` is the identity on every boundary standard `k`-subset.
    pub roundtrip: bool,
}

impl PhiBijections {
    pub fn all(&self) -> bool {
        self.super_standard && self.non_super_standard && self.up_to && self.roundtrip
    }
}

fn is_bijection_onto(images: Vec<Subset>, mut target: Vec<Subset>) -> bool {
    let mut images = images;
    images.sort();
    target.sort();
    images == target
}

pub fn check_phi_bijections(n: u32, k: u32) -> Result<PhiBijections> {
    if k == 0 || n < 2 {
        return Err(Error::params("need k >= 1 and n >= 2"));
    }
    let standard = enumerate_subsets(n, k, SubsetClass::Standard);
    let mut ss_images = Vec::new();
    let mut non_ss_images = Vec::new();
    let mut roundtrip = true;
    for s in &standard {
        if !s.is_boundary()? {
            continue;
        }
        let image = s.phi()?;
        roundtrip &= image.phi_inverse(n)? == *s;
        if s.is_super_standard() {
            ss_images.push(image);
        } else {
            non_ss_images.push(image);
        }
    }
    let smaller_standard = enumerate_subsets(n - 1, k - 1, SubsetClass::Standard);
    let smaller_non_ss: Vec<Subset> = smaller_standard
        .iter()
        .filter(|s| !s.is_super_standard())
        .cloned()
        .collect();

    let mut up_to_images = Vec::new();
    for s in p_tilde_rows(n, k) {
        if s.is_boundary()? {
            up_to_images.push(s.phi()?);
        }
    }
    Ok(PhiBijections {
        super_standard: is_bijection_onto(
            ss_images,
            enumerate_subsets(n - 1, k - 1, SubsetClass::SuperStandard),
        ),
        non_super_standard: is_bijection_onto(non_ss_images, smaller_non_ss),
        up_to: is_bijection_onto(up_to_images, p_tilde_rows(n - 1, k - 1)),
        roundtrip,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_shapes() {
        let w = w_tilde(10, 0, 2);
        assert_eq!(w.rows(), 1);
        assert!(w.row(0).iter().all(One::is_one));
        assert_eq!(p_tilde(7, 0, 0), IntMatrix::identity(1));
        let w = w_tilde(12, 3, 3);
        assert_eq!((w.rows(), w.cols()), (100, 154));
        let p = p_tilde(12, 3, 3);
        assert_eq!((p.rows(), p.cols()), (154, 154));
        let a = Subset::new(12, vec![2, 4]).unwrap();
        let b = Subset::new(12, vec![2, 4, 6]).unwrap();
        let m = w_tilde(12, 2, 3);
        let r = m
            .row_labels()
            .unwrap()
            .iter()
            .position(|s| *s == a)
            .unwrap();
        let c = m
            .col_labels()
            .unwrap()
            .iter()
            .position(|s| *s == b)
            .unwrap();
        assert!(m[(r, c)].is_one());
    }

    #[test]
    fn stated_counterexample() {
        let rep = check_conjecture(9, 3, 4);
        assert_eq!((rep.rows, rep.cols, rep.rank), (48, 42, 41));
        assert!(!rep.holds);
        assert!(!rep.in_hypothesis);
    }

    #[test]
    fn conjecture_small() {
        assert!(check_conjecture(5, 0, 0).holds);
        let rep = check_conjecture(12, 3, 3);
        assert!(rep.holds && rep.unimodular_when_square && rep.in_hypothesis);
    }

    #[test]
    fn simpler_lemma() {
        assert!(check_simpler_lemma(12, 2, 3).unwrap());
        assert!(check_simpler_lemma(10, 1, 3).unwrap());
        assert!(check_simpler_lemma(10, 2, 2).unwrap());
        assert!(check_simpler_lemma(10, 2, 4).is_err());
    }

    #[test]
    fn boundary_blocks() {
        for (n, i, j) in [(10, 2, 2), (12, 3, 3), (9, 0, 2)] {
            let split = boundary_interior_split(n, i, j).unwrap();
            assert!(split.mixed_block_zero, "{n} {i} {j}");
            assert!(split.interior_matches, "{n} {i} {j}");
        }
    }

    #[test]
    fn phi_checks() {
        assert!(check_phi_bijections(12, 3).unwrap().all());
        assert!(check_phi_column_equivalence(12, 3, 3).unwrap());
    }
}
