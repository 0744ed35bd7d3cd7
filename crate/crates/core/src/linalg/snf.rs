use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::group::AbelianGroup;
use super::matrix::IntMatrix;
use super::modular;
use super::scalar::{convert_rows, ext_gcd, Scalar};

/// Smith normal form of an integer matrix.
///
/// When transforms were requested, `left · M · right` equals the
/// `rows × cols` matrix carrying the invariant factors on its diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    invariant_factors: Vec<BigInt>,
    rows: usize,
    cols: usize,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
}

impl SmithForm {
    /// Positive invariant factors `d_1 | d_2 | … | d_r`, ones included.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn left_transform(&self) -> Option<&IntMatrix> {
        self.left.as_ref()
    }

    pub fn right_transform(&self) -> Option<&IntMatrix> {
        self.right.as_ref()
    }

    /// Product of the invariant factors (1 for rank 0).
    pub fn index(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// The diagonal matrix with the shape of the input.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(self.rows, self.cols, &self.invariant_factors)
            .expect("rank never exceeds min(rows, cols)")
    }

    /// The cokernel `Z^cols / rowZ(M)`.
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::from_diagonal(self.invariant_factors.iter().map(|d| (d.clone(), 1)).chain(
            std::iter::once((<BigInt as Zero>::zero(), (self.cols - self.rank()) as u64)),
        ))
    }
}

/// Computes the Smith normal form, optionally with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix, with_transforms: bool) -> SmithForm {
    let rows = m.to_row_vecs();
    if let Some(r) = convert_rows::<i64>(&rows).and_then(|a| reduce(a, m.cols(), with_transforms)) {
        return finish(r.into_big(), m.rows(), m.cols());
    }
    if !with_transforms {
        if let Some(invariant_factors) = modular::invariant_factors(&rows) {
            return SmithForm {
                invariant_factors,
                rows: m.rows(),
                cols: m.cols(),
                left: None,
                right: None,
            };
        }
    }
    let reduced =
        reduce(rows, m.cols(), with_transforms).expect("BigInt arithmetic cannot overflow");
    finish(reduced, m.rows(), m.cols())
}

/// Product of the invariant factors, `[Z(M) : rowZ(M)]`.
pub fn index(m: &IntMatrix) -> BigInt {
    smith_normal_form(m, false).index()
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m, false).rank()
}

/// True iff `m` is square with determinant ±1.
pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.is_square() && {
        let snf = smith_normal_form(m, false);
        snf.rank() == m.rows() && snf.invariant_factors().iter().all(One::is_one)
    }
}

struct Reduced<T> {
    diag: Vec<T>,
    left: Option<Vec<Vec<T>>>,
    /// Columns of the right transform.
    right: Option<Vec<Vec<T>>>,
}

impl Reduced<i64> {
    fn into_big(self) -> Reduced<BigInt> {
        let big = |v: Vec<Vec<i64>>| -> Vec<Vec<BigInt>> {
            v.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect()
        };
        Reduced {
            diag: self.diag.into_iter().map(BigInt::from).collect(),
            left: self.left.map(big),
            right: self.right.map(big),
        }
    }
}

fn identity<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

/// Position of a nonzero entry of least absolute value in `a[k..][k..]`.
fn min_pivot<T: Scalar>(a: &[Vec<T>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(k) {
        for (j, v) in row.iter().enumerate().skip(k) {
            if v.is_zero() {
                continue;
            }
            if v.is_unit() {
                return Some((i, j));
            }
            if best.is_none_or(|(bi, bj)| v.abs_lt(&a[bi][bj])) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// `rows[dst] -= q * rows[src]`
fn row_sub<T: Scalar>(rows: &mut [Vec<T>], dst: usize, src: usize, q: &T) -> Option<()> {
    let (s, d) = if src < dst {
        let (lo, hi) = rows.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    };
    for (x, y) in d.iter_mut().zip(s) {
        if !y.is_zero() {
            x.sub_mul(q, y)?;
        }
    }
    Some(())
}

/// Diagonalizes `a` by min-pivot elimination. Returns `None` on overflow.
fn reduce<T: Scalar>(mut a: Vec<Vec<T>>, cols: usize, transforms: bool) -> Option<Reduced<T>> {
    let rows = a.len();
    let mut left = transforms.then(|| identity::<T>(rows));
    let mut right = transforms.then(|| identity::<T>(cols));
    let mut diag = Vec::new();

    'outer: for k in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_pivot(&a, k) else {
                break 'outer;
            };
            if pi != k {
                a.swap(pi, k);
                if let Some(l) = left.as_mut() {
                    l.swap(pi, k);
                }
            }
            if pj != k {
                for row in a.iter_mut().skip(k) {
                    row.swap(pj, k);
                }
                if let Some(r) = right.as_mut() {
                    r.swap(pj, k);
                }
            }
            let p = a[k][k].clone();
            let support: Vec<usize> = (k..cols).filter(|&j| !a[k][j].is_zero()).collect();

            let mut clean = true;
            for i in k + 1..rows {
                if a[i][k].is_zero() {
                    continue;
                }
                let q = a[i][k].quot(&p)?;
                if !q.is_zero() {
                    let (lo, hi) = a.split_at_mut(i);
                    let (src, dst) = (&lo[k], &mut hi[0]);
                    for &j in &support {
                        dst[j].sub_mul(&q, &src[j])?;
                    }
                    if let Some(l) = left.as_mut() {
                        row_sub(l, i, k, &q)?;
                    }
                }
                clean &= a[i][k].is_zero();
            }
            if !clean {
                continue;
            }

            for (j, v) in a[k].iter_mut().enumerate().skip(k + 1) {
                if v.is_zero() {
                    continue;
                }
                let q = v.quot(&p)?;
                if !q.is_zero() {
                    v.sub_mul(&q, &p)?;
                    if let Some(r) = right.as_mut() {
                        row_sub(r, j, k, &q)?;
                    }
                }
                clean &= v.is_zero();
            }
            if clean {
                diag.push(p);
                break;
            }
        }
    }
    Some(Reduced { diag, left, right })
}

/// Normalizes signs and enforces the divisibility chain.
fn finish(r: Reduced<BigInt>, rows: usize, cols: usize) -> SmithForm {
    let Reduced {
        mut diag,
        mut left,
        mut right,
    } = r;

    for (t, d) in diag.iter_mut().enumerate() {
        if Signed::is_negative(d) {
            *d = -&*d;
            if let Some(l) = left.as_mut() {
                for v in &mut l[t] {
                    *v = -&*v;
                }
            }
        }
    }

    let r = diag.len();
    for i in 0..r {
        for j in i + 1..r {
            if diag[j].is_multiple_of(&diag[i]) {
                continue;
            }
            let (a, b) = (diag[i].clone(), diag[j].clone());
            let (g, x, y) = ext_gcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            diag[i] = g.clone();
            diag[j] = &a * &bg;
            if let Some(l) = left.as_mut() {
                let (li, lj) = (l[i].clone(), l[j].clone());
                for t in 0..rows {
                    l[i][t] = &x * &li[t] + &y * &lj[t];
                    l[j][t] = &ag * &lj[t] - &bg * &li[t];
                }
            }
            if let Some(rt) = right.as_mut() {
                let (ci, cj) = (rt[i].clone(), rt[j].clone());
                let (u, v) = (-(&y * &bg), &x * &ag);
                for t in 0..cols {
                    rt[i][t] = &ci[t] + &cj[t];
                    rt[j][t] = &u * &ci[t] + &v * &cj[t];
                }
            }
        }
    }

    SmithForm {
        invariant_factors: diag,
        rows,
        cols,
        left: left.map(|l| IntMatrix::from_row_vecs(rows, rows, l)),
        right: right.map(|c| IntMatrix::from_row_vecs(cols, cols, c).transpose()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    fn assert_transforms(a: &IntMatrix) -> SmithForm {
        let snf = smith_normal_form(a, true);
        let (e, f) = (
            snf.left_transform().unwrap(),
            snf.right_transform().unwrap(),
        );
        assert_eq!(e.mul(a).unwrap().mul(f).unwrap(), snf.diagonal_matrix());
        assert!(e.determinant().unwrap().magnitude().is_one());
        assert!(f.determinant().unwrap().magnitude().is_one());
        for w in snf.invariant_factors().windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        snf
    }

    #[test]
    fn padded_diagonal_example() {
        let a = m(&[vec![2, 0, 0, 0], vec![0, 3, 0, 0], vec![0, 0, 0, 0]]);
        let snf = assert_transforms(&a);
        assert_eq!(snf.invariant_factors(), ints(&[1, 6]).as_slice());
        assert_eq!(snf.rank(), 2);
        assert_eq!(snf.index(), BigInt::from(6));
        assert_eq!(snf.group().to_string(), "Z/6 ⊕ Z^2");
    }

    #[test]
    fn identity_and_rank_one() {
        let snf = assert_transforms(&IntMatrix::identity(5));
        assert_eq!(snf.invariant_factors(), ints(&[1; 5]).as_slice());
        let snf = assert_transforms(&m(&[vec![2, 4], vec![4, 8]]));
        assert_eq!(snf.invariant_factors(), ints(&[2]).as_slice());
        assert_eq!(snf.rank(), 1);
    }

    #[test]
    fn empty_and_zero() {
        let snf = smith_normal_form(&IntMatrix::zeros(0, 0), true);
        assert_eq!(snf.rank(), 0);
        assert_eq!(snf.index(), <BigInt as One>::one());
        let z = smith_normal_form(&IntMatrix::zeros(2, 3), false);
        assert_eq!(z.group().free_rank(), 3);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let a = m(&[vec![big, big - 1], vec![big - 7, big + 5]]);
        let snf = assert_transforms(&a);
        let det = a.determinant().unwrap();
        assert_eq!(snf.index(), det.abs());
    }

    #[test]
    fn negative_entries_normalized() {
        let snf = assert_transforms(&m(&[vec![-4, 0], vec![0, -6]]));
        assert_eq!(snf.invariant_factors(), ints(&[2, 12]).as_slice());
    }

    #[test]
    fn unimodularity() {
        assert!(is_unimodular(&IntMatrix::identity(3)));
        assert!(!is_unimodular(&m(&[vec![2, 0], vec![0, 1]])));
        assert!(!is_unimodular(&m(&[vec![1, 0, 0]])));
        assert!(is_unimodular(&m(&[vec![2, 1], vec![1, 1]])));
    }
}
