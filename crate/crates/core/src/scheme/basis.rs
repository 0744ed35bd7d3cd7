use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrices::w_matrix;
use crate::combinatorics::{binomial, mu, mu_increment};
use crate::error::{Error, Result};
use crate::linalg::{unimodular_completion, IntMatrix};

/// Diagonal entries of the `μ_i × μ_j` matrix `D_{i,j}`: each
/// `C(j−s, i−s)` with multiplicity `μ_s − μ_{s−1}` for `0 ≤ s ≤ i`, followed
/// by `zero_columns = μ_j − μ_i` empty columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalBlock {
    pub entries: Vec<(BigInt, u64)>,
    pub zero_columns: u64,
}

fn check_range(n: u32, i: u32, j: u32) -> Result<()> {
    if i > j || 3 * j > n + 1 {
        return Err(Error::params(format!(
            "need 0 <= i <= j <= (n+1)/3, got n={n} i={i} j={j}"
        )));
    }
    Ok(())
}

pub fn d_diag(n: u32, i: u32, j: u32) -> Result<DiagonalBlock> {
    check_range(n, i, j)?;
    Ok(DiagonalBlock {
        entries: (0..=i)
            .map(|s| (binomial((j - s) as i64, (i - s) as i64), mu_increment(n, s)))
            .collect(),
        zero_columns: mu(n, j) - mu(n, i),
    })
}

/// Level of each of the first `μ_i` basis positions: position `p` has level
/// `t` when `μ_{t−1} ≤ p < μ_t`.
pub(crate) fn levels(n: u32, i: u32) -> Vec<u32> {
    (0..=i)
        .flat_map(|t| std::iter::repeat_n(t, mu_increment(n, t) as usize))
        .collect()
}

/// `D_{i,j}` as a `μ_i × μ_j` matrix.
pub fn d_matrix(n: u32, i: u32, j: u32) -> Result<IntMatrix> {
    check_range(n, i, j)?;
    let lv = levels(n, i);
    let mut m = IntMatrix::zeros(lv.len(), mu(n, j) as usize);
    for (p, &t) in lv.iter().enumerate() {
        m.set(p, p, binomial((j - t) as i64, (i - t) as i64));
    }
    Ok(m)
}

/// `d_{i,j}(n) = Π_s C(j−s, i−s)^{μ_s − μ_{s−1}}`
pub fn d_product(n: u32, i: u32, j: u32) -> BigInt {
    (0..=i)
        .map(|s| {
            let base = binomial(j as i64 - s as i64, i as i64 - s as i64);
            num_traits::Pow::pow(&base, mu_increment(n, s))
        })
        .product()
}

type Cache = RwLock<HashMap<(u32, u32), Arc<Vec<IntMatrix>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The unimodular matrices `E_0, …, E_{k_max}` with `E_i W_{i,j} = D_{i,j} E_j`.
///
/// `E_0 = [1]`; `E_{s+1}` completes `(D'_{s,s+1})⁻¹ E_s W_{s,s+1}` (row `p`
/// of level `t` divided by `s+1−t`) to a unimodular matrix. Results are
/// cached per `(n, k_max)`; the first computation for a key wins.
pub fn e_matrices(n: u32, k_max: u32) -> Result<Arc<Vec<IntMatrix>>> {
    if 3 * k_max > n + 1 {
        return Err(Error::params(format!(
            "E matrices need k_max <= (n+1)/3, got n={n} k_max={k_max}"
        )));
    }
    if let Some(hit) = cache().read().expect("cache lock").get(&(n, k_max)) {
        return Ok(Arc::clone(hit));
    }
    let built = Arc::new(build_e(n, k_max)?);
    let mut w = cache().write().expect("cache lock");
    Ok(Arc::clone(w.entry((n, k_max)).or_insert(built)))
}

const RECURSION: &str = "E_i W_{i,j} = D_{i,j} E_j recursion";

fn build_e(n: u32, k_max: u32) -> Result<Vec<IntMatrix>> {
    let mut es = vec![IntMatrix::identity(1)];
    for s in 0..k_max {
        let mut scaled = es[s as usize].mul(&w_matrix(n, s, s + 1))?;
        for (p, t) in levels(n, s).into_iter().enumerate() {
            let d = BigInt::from(s + 1 - t);
            for v in scaled.row_mut(p) {
                let (q, r) = v.div_rem(&d);
                if !r.is_zero() {
                    return Err(Error::invariant(
                        RECURSION,
                        format!(
                            "row {p} of E_{s} W_{{{s},{}}} is not divisible by {d}",
                            s + 1
                        ),
                    ));
                }
                *v = q;
            }
        }
        let next = unimodular_completion(&scaled).map_err(|e| {
            Error::invariant(RECURSION, format!("completing E'_{{{s},{}}}: {e}", s + 1))
        })?;
        es.push(next);
    }
    Ok(es)
}

/// Checks `E_i W_{i,j} = D_{i,j} E_j` for the supplied basis matrices.
pub fn verify_basis_identity(n: u32, basis: &[IntMatrix], i: u32, j: u32) -> Result<bool> {
    let (ei, ej) = match (basis.get(i as usize), basis.get(j as usize)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::params(format!("basis has no E_{}", i.max(j)))),
    };
    let lhs = ei.mul(&w_matrix(n, i, j))?;
    let rhs = d_matrix(n, i, j)?.mul(ej)?;
    Ok(lhs == rhs)
}
