use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::basis::levels;
use super::matrices::upper_block_matrix;
use super::SchemeElement;
use crate::combinatorics::{binomial, mu, mu_increment};
use crate::error::{Error, Result};
use crate::linalg::{is_unimodular, smith_normal_form, AbelianGroup, IntMatrix};

/// The `(k_r−s+1) × (k_c−s+1)` block `M_s`, whose Smith form enters the
/// diagonal form `multiplicity = μ_s − μ_{s−1}` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MsMatrix {
    pub s: u32,
    pub matrix: IntMatrix,
    pub multiplicity: u64,
}

/// `M_s(i,j) = −λδ_{ij} + C(j−s, i−s)·Σ_ℓ b_ℓ f_i(j; ℓ)` for
/// `s ≤ i ≤ k_r`, `s ≤ j ≤ k_c`.
pub fn ms_matrix(s: u32, e: &SchemeElement) -> Result<MsMatrix> {
    if s > e.k_r {
        return Err(Error::params(format!("s={s} exceeds k_r={}", e.k_r)));
    }
    let f: Vec<Vec<BigInt>> = (s..=e.k_r)
        .map(|i| (s..=e.k_c).map(|j| e.combined_f(i, j)).collect())
        .collect();
    let matrix = IntMatrix::from_fn(
        (e.k_r - s + 1) as usize,
        (e.k_c - s + 1) as usize,
        |a, b| {
            let (i, j) = (s as i64 + a as i64, s as i64 + b as i64);
            let mut v = binomial(j - s as i64, i - s as i64) * &f[a][b];
            if a == b {
                v -= &e.lambda;
            }
            v
        },
    );
    Ok(MsMatrix {
        s,
        matrix,
        multiplicity: mu_increment(e.n, s),
    })
}

/// `M_0, …, M_{k_r}`.
pub fn ms_matrices(e: &SchemeElement) -> Result<Vec<MsMatrix>> {
    (0..=e.k_r).map(|s| ms_matrix(s, e)).collect()
}

/// One block of the structured computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockReport {
    pub s: u32,
    pub matrix: IntMatrix,
    pub multiplicity: u64,
    /// Smith form diagonal of `M_s`, zeros included up to `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithGroupReport {
    pub group: AbelianGroup,
    pub blocks: Vec<BlockReport>,
}

fn require_large_n(e: &SchemeElement) -> Result<()> {
    if e.n + 1 < 3 * e.k_c {
        return Err(Error::params(format!(
            "the block reduction needs n >= 3*k_c - 1 = {}, got n={}; use the brute-force oracle instead",
            3 * e.k_c - 1,
            e.n
        )));
    }
    Ok(())
}

/// Smith group of `Σ_ℓ b_ℓ A_ℓ − λI` assembled from the `M_s` blocks.
///
/// Free rank is `C(n, k_c) − Σ_s (μ_s − μ_{s−1})·rank(M_s)`.
pub fn smith_group(e: &SchemeElement) -> Result<SmithGroupReport> {
    require_large_n(e)?;
    let mut entries: Vec<(BigInt, u64)> = Vec::new();
    let mut used = 0u64;
    let mut blocks = Vec::new();
    for m in ms_matrices(e)? {
        let snf = smith_normal_form(&m.matrix, false);
        let rank = snf.rank();
        used += m.multiplicity * rank as u64;
        entries.extend(
            snf.invariant_factors()
                .iter()
                .map(|d| (d.clone(), m.multiplicity)),
        );
        let mut diagonal = snf.invariant_factors().to_vec();
        diagonal.resize(m.matrix.rows().min(m.matrix.cols()), BigInt::zero());
        blocks.push(BlockReport {
            s: m.s,
            matrix: m.matrix,
            multiplicity: m.multiplicity,
            diagonal,
            rank,
        });
    }
    entries.push((BigInt::zero(), e.cols() - used));
    Ok(SmithGroupReport {
        group: AbelianGroup::from_diagonal(entries),
        blocks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub eigenvalue: BigInt,
    pub multiplicity: u64,
}

/// Eigenvalues `e_i = Σ_ℓ b_ℓ f_i(i; ℓ) − λ` with multiplicity `μ_i`; equal
/// values are merged in order of first appearance.
pub fn eigenvalues(e: &SchemeElement) -> Result<Vec<SpectrumEntry>> {
    if !e.is_square() {
        return Err(Error::params("eigenvalues need k_r = k_c".to_string()));
    }
    require_large_n(e)?;
    let mut out: Vec<SpectrumEntry> = Vec::new();
    for i in 0..=e.k_r {
        let value = e.combined_f(i, i) - &e.lambda;
        let m = mu(e.n, i);
        match out.iter_mut().find(|x| x.eigenvalue == value) {
            Some(x) => x.multiplicity += m,
            None => out.push(SpectrumEntry {
                eigenvalue: value,
                multiplicity: m,
            }),
        }
    }
    Ok(out)
}

fn block_diagonal(parts: &[IntMatrix]) -> IntMatrix {
    let size: usize = parts.iter().map(IntMatrix::rows).sum();
    let mut m = IntMatrix::zeros(size, size);
    let mut off = 0;
    for p in parts {
        for i in 0..p.rows() {
            for j in 0..p.cols() {
                m.set(off + i, off + j, p.get(i, j).clone());
            }
        }
        off += p.rows();
    }
    m
}

const CONJUGATION: &str = "block diagonalization E·(U − λI) = D·E";

/// Smith group through an explicit basis `E_0, …, E_{k_c}` of unimodular
/// matrices satisfying `E_i W_{i,j} = D_{i,j} E_j`.
///
/// Builds the full block matrix `U − λI`, checks
/// `diag(E)·(U − λI) = D·diag(E)` entrywise, and reads the group off the
/// connected components of the sparse matrix `D`.
pub fn smith_group_via_basis(e: &SchemeElement, basis: &[IntMatrix]) -> Result<AbelianGroup> {
    require_large_n(e)?;
    if basis.len() <= e.k_c as usize {
        return Err(Error::params(format!("basis needs E_0..E_{}", e.k_c)));
    }
    for (s, b) in basis.iter().enumerate().take(e.k_c as usize + 1) {
        if b.rows() as u64 != mu(e.n, s as u32) || !is_unimodular(b) {
            return Err(Error::params(format!(
                "basis matrix E_{s} is not a unimodular {0}x{0} matrix",
                mu(e.n, s as u32)
            )));
        }
    }
    let u = upper_block_matrix(e);
    let er = block_diagonal(&basis[..=e.k_r as usize]);
    let ec = block_diagonal(&basis[..=e.k_c as usize]);

    let offsets = |k: u32| -> Vec<usize> {
        (0..=k)
            .scan(0usize, |acc, s| {
                let o = *acc;
                *acc += mu(e.n, s) as usize;
                Some(o)
            })
            .collect()
    };
    let (ro, co) = (offsets(e.k_r), offsets(e.k_c));
    let mut d = IntMatrix::zeros(u.rows(), u.cols());
    for i in 0..=e.k_r {
        for j in i..=e.k_c {
            let mut f = e.combined_f(i, j);
            if i == j {
                f -= &e.lambda;
            }
            if f.is_zero() {
                continue;
            }
            for (p, t) in levels(e.n, i).into_iter().enumerate() {
                let c = binomial((j - t) as i64, (i - t) as i64);
                d.set(ro[i as usize] + p, co[j as usize] + p, &c * &f);
            }
        }
    }
    if er.mul(&u)? != d.mul(&ec)? {
        return Err(Error::invariant(
            CONJUGATION,
            format!("basis fails for n={} k_c={}", e.n, e.k_c),
        ));
    }
    Ok(sparse_group(&d))
}

/// Cokernel of a matrix computed one connected component at a time.
pub(crate) fn sparse_group(d: &IntMatrix) -> AbelianGroup {
    let (r, c) = (d.rows(), d.cols());
    let mut parent: Vec<usize> = (0..r + c).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..r {
        for j in 0..c {
            if !d.get(i, j).is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, r + j));
                parent[a] = b;
            }
        }
    }
    let mut comps: HashMap<usize, (Vec<usize>, Vec<usize>)> = HashMap::new();
    for x in 0..r + c {
        let root = find(&mut parent, x);
        let entry = comps.entry(root).or_default();
        if x < r {
            entry.0.push(x);
        } else {
            entry.1.push(x - r);
        }
    }
    // Identical components (same shape and entries) are reduced once.
    type Shape = (usize, usize, Vec<BigInt>);
    let mut memo: HashMap<Shape, (Vec<BigInt>, usize)> = HashMap::new();
    let mut entries: Vec<(BigInt, u64)> = Vec::new();
    let mut free = 0u64;
    for (rows, cols) in comps.values() {
        let sub = d.select(rows, cols);
        let key = (sub.rows(), sub.cols(), sub.entries().to_vec());
        let (factors, rank) = memo
            .entry(key)
            .or_insert_with(|| {
                let snf = smith_normal_form(&sub, false);
                (snf.invariant_factors().to_vec(), snf.rank())
            })
            .clone();
        free += (cols.len() - rank) as u64;
        entries.extend(factors.into_iter().map(|f| (f, 1)));
    }
    entries.push((BigInt::zero(), free));
    AbelianGroup::from_diagonal(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{degree, e_matrices, SchemeParams};

    fn rows(m: &IntMatrix) -> Vec<Vec<i64>> {
        (0..m.rows())
            .map(|i| m.row(i).iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect()
    }

    fn example() -> SchemeElement {
        SchemeElement::from_i64(12, 3, &[0, 1, 3, 0], 0).unwrap()
    }

    #[test]
    fn example_blocks() {
        let ms = ms_matrices(&example()).unwrap();
        assert_eq!(
            rows(&ms[0].matrix),
            vec![
                vec![189, 33, 3, 0],
                vec![0, 57, 22, 3],
                vec![0, 0, 2, 3],
                vec![0, 0, 0, -6]
            ]
        );
        assert_eq!(rows(&ms[2].matrix), vec![vec![2, 1], vec![0, -6]]);
        assert_eq!(ms[2].multiplicity, 43);
        assert!(ms_matrix(4, &example()).is_err());
    }

    #[test]
    fn example_group() {
        let report = smith_group(&example()).unwrap();
        let stated = AbelianGroup::from_diagonal(
            [(3, 2), (14364, 1), (2, 10), (342, 10), (12, 43), (6, 100)]
                .map(|(a, m)| (BigInt::from(a), m)),
        );
        assert_eq!(report.group, stated);
        assert_eq!(
            report.group.to_string(),
            "(Z/2)^8 ⊕ (Z/6)^112 ⊕ (Z/12)^33 ⊕ (Z/684)^10 ⊕ Z/14364"
        );
    }

    #[test]
    fn kneser_adjacency_diagonal() {
        let e = SchemeElement::intersection(SchemeParams::square(8, 3, 0).unwrap(), BigInt::zero())
            .unwrap();
        let report = smith_group(&e).unwrap();
        let expect = AbelianGroup::from_diagonal(
            [(10, 1), (6, 7), (3, 20), (1, 28)].map(|(a, m)| (BigInt::from(a), m)),
        );
        assert_eq!(report.group, expect);
    }

    #[test]
    fn johnson_laplacian_n6() {
        let e = SchemeElement::laplacian(6, 2, 1).unwrap();
        assert_eq!(*e.lambda(), BigInt::from(8));
        let expect = AbelianGroup::from_diagonal(
            [(10, 4), (60, 4), (1, 4), (2, 2), (0, 1)].map(|(a, m)| (BigInt::from(a), m)),
        );
        assert_eq!(smith_group(&e).unwrap().group, expect);
    }

    #[test]
    fn refuses_small_n() {
        let e = SchemeElement::laplacian(7, 3, 2).unwrap();
        assert!(smith_group(&e).is_err());
    }

    #[test]
    fn spectra() {
        let n = 9u32;
        let e = SchemeElement::laplacian(n, 3, 2).unwrap();
        let spec = eigenvalues(&e).unwrap();
        let ni = n as i64;
        let expect: Vec<i64> = (0..=3).map(|i| -i * (ni - i + 1)).collect();
        let got: Vec<i64> = spec
            .iter()
            .map(|x| i64::try_from(&x.eigenvalue).unwrap())
            .collect();
        assert_eq!(got, expect);
        let total: u64 = spec.iter().map(|x| x.multiplicity).sum();
        assert_eq!(total, 84);

        let id =
            SchemeElement::intersection(SchemeParams::square(9, 3, 3).unwrap(), BigInt::zero())
                .unwrap();
        let spec = eigenvalues(&id).unwrap();
        assert_eq!(spec.len(), 1);
        assert_eq!(spec[0].multiplicity, 84);
        assert_eq!(spec[0].eigenvalue, BigInt::from(1));

        for n in 5..12i64 {
            let e = SchemeElement::laplacian(n as u32, 2, 0).unwrap();
            let got: Vec<BigInt> = eigenvalues(&e)
                .unwrap()
                .into_iter()
                .map(|x| x.eigenvalue)
                .collect();
            let expect = [0, -(n - 3) * n / 2, -(n - 1) * (n - 4) / 2].map(BigInt::from);
            assert_eq!(got, expect, "n={n}");
            assert_eq!(degree(n as u32, 2, 0), BigInt::from((n - 2) * (n - 3) / 2));
        }
    }

    #[test]
    fn basis_route_matches() {
        let e = example();
        let es = e_matrices(12, 3).unwrap();
        assert_eq!(
            smith_group_via_basis(&e, &es).unwrap(),
            smith_group(&e).unwrap().group
        );
    }
}
