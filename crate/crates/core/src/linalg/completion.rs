use num_bigint::BigInt;

use super::matrix::IntMatrix;
use super::scalar::{convert_rows, Scalar};
use crate::error::{Error, Result};

/// How a completion was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionStrategy {
    /// Only rows of the identity were adjoined.
    IdentityRows,
    /// Some rows came from the inverse of the column transform.
    Transform,
}

/// Extends an index-1, full-row-rank `r × c` matrix to a `c × c` unimodular
/// matrix whose first `r` rows are `m`.
pub fn unimodular_completion(m: &IntMatrix) -> Result<IntMatrix> {
    unimodular_completion_with_strategy(m).map(|(c, _)| c)
}

pub fn unimodular_completion_with_strategy(
    m: &IntMatrix,
) -> Result<(IntMatrix, CompletionStrategy)> {
    if m.rows() > m.cols() {
        return Err(Error::RankDeficient {
            rank: m.cols(),
            expected: m.rows(),
        });
    }
    let rows = m.to_row_vecs();
    let attempt = convert_rows::<i64>(&rows)
        .and_then(|a| complete(a, m.cols()).map(|r| r.map(|(rows, s)| (big_rows(rows), s))));
    let (extra, strategy) = match attempt {
        Some(r) => r?,
        None => complete(rows.clone(), m.cols()).expect("BigInt arithmetic cannot overflow")?,
    };
    let mut all = rows;
    all.extend(extra);
    Ok((IntMatrix::from_row_vecs(m.cols(), m.cols(), all), strategy))
}

fn big_rows(v: Vec<Vec<i64>>) -> Vec<Vec<BigInt>> {
    v.into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect()
}

/// Column-echelon reduction `R V = [H | 0]` with `V` unimodular, tracking
/// `V⁻¹`. Then greedily adjoins identity rows `e_t` whose trailing part in
/// `V` is a primitive vector, and fills the remaining rows from `V⁻¹`.
///
/// Outer `None` signals overflow; inner `Err` a genuine failure.
#[allow(clippy::type_complexity)]
fn complete<T: Scalar>(
    mut w: Vec<Vec<T>>,
    c: usize,
) -> Option<Result<(Vec<Vec<T>>, CompletionStrategy)>> {
    let r = w.len();
    let identity = |n: usize| -> Vec<Vec<T>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { T::one() } else { T::zero() })
                    .collect()
            })
            .collect()
    };
    let mut v = identity(c);
    let mut v_inv = identity(c);

    // col_j -= q col_p on W and V; row_p += q row_j on V⁻¹.
    let col_op = |w: &mut Vec<Vec<T>>,
                  v: &mut Vec<Vec<T>>,
                  v_inv: &mut Vec<Vec<T>>,
                  j: usize,
                  p: usize,
                  q: &T|
     -> Option<()> {
        for row in w.iter_mut().chain(v.iter_mut()) {
            if !row[p].is_zero() {
                let x = row[p].clone();
                row[j].sub_mul(q, &x)?;
            }
        }
        let src = v_inv[j].clone();
        for (x, y) in v_inv[p].iter_mut().zip(&src) {
            if !y.is_zero() {
                x.add_mul(q, y)?;
            }
        }
        Some(())
    };
    let col_swap = |w: &mut Vec<Vec<T>>, v: &mut Vec<Vec<T>>, v_inv: &mut Vec<Vec<T>>, a, b| {
        for row in w.iter_mut().chain(v.iter_mut()) {
            row.swap(a, b);
        }
        v_inv.swap(a, b);
    };
    // Euclid on row `row` of `mat` over columns `from..c`, leaving the gcd at `from`.
    let reduce_row = |w: &mut Vec<Vec<T>>,
                      v: &mut Vec<Vec<T>>,
                      v_inv: &mut Vec<Vec<T>>,
                      in_v: bool,
                      row: usize,
                      from: usize|
     -> Option<bool> {
        loop {
            let target = if in_v { &v[row] } else { &w[row] };
            let mut best: Option<usize> = None;
            for j in from..c {
                if !target[j].is_zero() && best.is_none_or(|b| target[j].abs_lt(&target[b])) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { return Some(false) };
            if b != from {
                col_swap(w, v, v_inv, b, from);
            }
            let target = if in_v { &v[row] } else { &w[row] };
            let p = target[from].clone();
            let qs: Vec<(usize, T)> = (from + 1..c)
                .filter(|&j| !target[j].is_zero())
                .map(|j| target[j].quot(&p).map(|q| (j, q)))
                .collect::<Option<_>>()?;
            for (j, q) in &qs {
                if !q.is_zero() {
                    col_op(w, v, v_inv, *j, from, q)?;
                }
            }
            let target = if in_v { &v[row] } else { &w[row] };
            if (from + 1..c).all(|j| target[j].is_zero()) {
                return Some(true);
            }
        }
    };

    for p in 0..r {
        if !reduce_row(&mut w, &mut v, &mut v_inv, false, p, p)? {
            return Some(Err(Error::RankDeficient {
                rank: p,
                expected: r,
            }));
        }
        if !w[p][p].is_unit() {
            return Some(Err(Error::IndexNotOne(format!(
                "echelon pivot {} in row {p}",
                w[p][p].to_bigint()
            ))));
        }
    }

    let mut extra: Vec<Vec<T>> = Vec::new();
    let mut cur = r;
    for t in 0..c {
        if cur == c {
            break;
        }
        if !reduce_row(&mut w, &mut v, &mut v_inv, true, t, cur)? || !v[t][cur].is_unit() {
            continue;
        }
        if v[t][cur].is_negative() {
            for row in w.iter_mut().chain(v.iter_mut()) {
                row[cur] = row[cur].neg()?;
            }
            for x in v_inv[cur].iter_mut() {
                *x = x.neg()?;
            }
        }
        extra.push(
            (0..c)
                .map(|j| if j == t { T::one() } else { T::zero() })
                .collect(),
        );
        cur += 1;
    }
    let strategy = if cur < c {
        CompletionStrategy::Transform
    } else {
        CompletionStrategy::IdentityRows
    };
    extra.extend(v_inv.drain(cur..));
    Some(Ok((extra, strategy)))
}
