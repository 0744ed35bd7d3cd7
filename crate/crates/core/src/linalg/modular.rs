//! Invariant factors without coefficient growth.
//!
//! Dense elimination over `Z` blows up on a few hundred rows. Instead:
//!
//! 1. the rank `r` is computed modulo word-size primes until their product
//!    exceeds the Hadamard bound on `(r+1)`-minors, which certifies it;
//! 2. a nonzero `r × r` minor `D` (a multiple of every invariant factor) is
//!    recovered by Chinese remaindering;
//! 3. for each prime `p^e ∥ D`, elimination over `Z/p^{e+1}` by least
//!    `p`-adic valuation gives the `p`-parts of the invariant factors.
//!
//! Everything is exact; when `D` has a prime factor beyond the trial-division
//! range the caller falls back to integer elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const SMALL_PRIME_BOUND: u64 = 1 << 16;
const MINOR_ATTEMPTS: usize = 3;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below `2^62`, descending.
fn large_primes() -> impl Iterator<Item = u64> {
    (0..)
        .map(|i| (1u64 << 62) - 1 - 2 * i)
        .filter(|&c| is_prime_u64(c))
}

fn small_primes() -> Vec<u64> {
    let n = SMALL_PRIME_BOUND as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            (i * i..=n).step_by(i).for_each(|j| sieve[j] = false);
        }
        i += 1;
    }
    (2..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

/// Inverse of a unit modulo `m`.
fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(m as i128) as u64
}

fn reduce(rows: &[Vec<BigInt>], m: u64) -> Vec<Vec<u64>> {
    let mb = BigInt::from(m);
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.mod_floor(&mb).to_u64().expect("reduced below modulus"))
                .collect()
        })
        .collect()
}

/// Gaussian elimination over `F_p`: rank, pivot rows and pivot columns in
/// original indices.
struct Echelon {
    rank: usize,
    pivot_rows: Vec<usize>,
    pivot_cols: Vec<usize>,
}

fn echelon_mod_p(mut a: Vec<Vec<u64>>, p: u64, row_order: &[usize]) -> Echelon {
    let cols = a.first().map_or(0, Vec::len);
    a = row_order
        .iter()
        .map(|&i| std::mem::take(&mut a[i]))
        .collect();
    let mut rows_idx: Vec<usize> = row_order.to_vec();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pi) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, pi);
        rows_idx.swap(rank, pi);
        let inv = inv_mod(a[rank][c], p);
        for i in rank + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let q = mul_mod(a[i][c], inv, p);
            let (lo, hi) = a.split_at_mut(i);
            let (src, dst) = (&lo[rank], &mut hi[0]);
            for j in c..cols {
                if src[j] != 0 {
                    dst[j] = (dst[j] + p - mul_mod(q, src[j], p)) % p;
                }
            }
        }
        pivot_cols.push(c);
        rank += 1;
    }
    rows_idx.truncate(rank);
    Echelon {
        rank,
        pivot_rows: rows_idx,
        pivot_cols,
    }
}

/// Determinant of a square matrix over `F_p`.
fn det_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(pi) = (c..n).find(|&i| a[i][c] != 0) else {
            return 0;
        };
        if pi != c {
            a.swap(pi, c);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[c][c], p);
        let inv = inv_mod(a[c][c], p);
        for i in c + 1..n {
            if a[i][c] == 0 {
                continue;
            }
            let q = mul_mod(a[i][c], inv, p);
            let (lo, hi) = a.split_at_mut(i);
            let (src, dst) = (&lo[c], &mut hi[0]);
            for j in c..n {
                if src[j] != 0 {
                    dst[j] = (dst[j] + p - mul_mod(q, src[j], p)) % p;
                }
            }
        }
    }
    det
}

/// Upper bounds on `log2` of the Euclidean norm of each row.
fn log_norms(rows: &[Vec<BigInt>]) -> Vec<f64> {
    rows.iter()
        .map(|r| {
            let widest = r.iter().map(BigInt::bits).max().unwrap_or(0);
            if widest > 500 {
                return widest as f64 + 0.5 * (r.len() as f64).log2();
            }
            let sq: f64 = r
                .iter()
                .map(|x| x.to_f64().expect("fits f64").powi(2))
                .sum();
            if sq > 0.0 {
                0.5 * sq.log2()
            } else {
                0.0
            }
        })
        .collect()
}

/// Bits needed to certify: the largest `k` row norms, plus slack.
fn hadamard_bits(mut logs: Vec<f64>, k: usize) -> f64 {
    logs.sort_by(|a, b| b.total_cmp(a));
    logs.iter().take(k).sum::<f64>() + 2.0
}

/// Certified rank and one set of pivot rows and columns.
fn certified_rank(rows: &[Vec<BigInt>]) -> Echelon {
    let order: Vec<usize> = (0..rows.len()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let logs = log_norms(rows);
    let mut best: Option<Echelon> = None;
    let mut bits = 0.0;
    for p in large_primes() {
        let e = echelon_mod_p(reduce(rows, p), p, &order);
        if best.as_ref().is_none_or(|b| e.rank > b.rank) {
            best = Some(e);
        }
        bits += (p as f64).log2();
        let r = best.as_ref().expect("set above").rank;
        if r == rows.len().min(cols) || bits > hadamard_bits(logs.clone(), r + 1) {
            break;
        }
    }
    best.expect("at least one prime")
}

/// The exact determinant of `rows[pr][pc]` by Chinese remaindering.
fn minor(rows: &[Vec<BigInt>], pr: &[usize], pc: &[usize]) -> BigInt {
    let sub: Vec<Vec<BigInt>> = pr
        .iter()
        .map(|&i| pc.iter().map(|&j| rows[i][j].clone()).collect())
        .collect();
    let need = hadamard_bits(log_norms(&sub), sub.len());
    let (mut x, mut modulus) = (BigInt::zero(), BigInt::one());
    let mut bits = 0.0;
    for p in large_primes() {
        let d = det_mod_p(reduce(&sub, p), p);
        // Garner step: x += modulus·((d − x)·modulus⁻¹ mod p)
        let pb = BigInt::from(p);
        let xm = x.mod_floor(&pb).to_u64().expect("below p");
        let mm = modulus.mod_floor(&pb).to_u64().expect("below p");
        let t = mul_mod((d + p - xm) % p, inv_mod(mm, p), p);
        x += &modulus * t;
        modulus *= p;
        bits += (p as f64).log2();
        if bits > need {
            break;
        }
    }
    if &x * 2 > modulus {
        x -= &modulus;
    }
    x
}

/// `(p, e)` with `p^e ∥ d`, or `None` if a composite cofactor above the
/// trial bound remains.
fn factor(d: &BigInt, primes: &[u64]) -> Option<Vec<(u64, u32)>> {
    let mut d = d.abs();
    let mut out = Vec::new();
    for &p in primes {
        let pb = BigInt::from(p);
        let mut e = 0;
        while d.is_multiple_of(&pb) {
            d /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        if d.is_one() {
            return Some(out);
        }
    }
    let rest = d.to_u64().filter(|&c| is_prime_u64(c))?;
    out.push((rest, 1));
    Some(out)
}

/// Valuations of the invariant factors at `p`, computed over `Z/p^m`:
/// ascending, one per invariant factor of valuation below `m`.
fn local_valuations(rows: &[Vec<BigInt>], p: u64, m: u32) -> Vec<u32> {
    let modulus = p.pow(m);
    let mut a = reduce(rows, modulus);
    let (nr, nc) = (a.len(), a.first().map_or(0, Vec::len));
    let val = |x: u64| -> u32 {
        let (mut x, mut v) = (x, 0);
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        v
    };
    let mut out = Vec::new();
    for k in 0..nr.min(nc) {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for (i, row) in a.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                if x == 0 {
                    continue;
                }
                let v = val(x);
                if best.is_none_or(|b| v < b.0) {
                    best = Some((v, i, j));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut().skip(k) {
                row.swap(pj, k);
            }
        }
        let pv = p.pow(v);
        let unit_inv = inv_mod(a[k][k] / pv, modulus);
        for i in k + 1..nr {
            if a[i][k] == 0 {
                continue;
            }
            let q = mul_mod(a[i][k] / pv, unit_inv, modulus);
            let (lo, hi) = a.split_at_mut(i);
            let (src, dst) = (&lo[k], &mut hi[0]);
            for j in k..nc {
                if src[j] != 0 {
                    dst[j] = (dst[j] + modulus - mul_mod(q, src[j], modulus)) % modulus;
                }
            }
        }
        // Row k beyond the pivot is cleared by column operations that touch
        // no other row, since column k is now zero below the pivot.
        out.push(v);
    }
    out.sort_unstable();
    out
}

/// Nonzero invariant factors, ascending, or `None` when the determinant
/// multiple cannot be factored by trial division.
pub(crate) fn invariant_factors(rows: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    let ech = certified_rank(rows);
    let r = ech.rank;
    if r == 0 {
        return Some(Vec::new());
    }
    let primes = small_primes();
    let mut d = minor(rows, &ech.pivot_rows, &ech.pivot_cols);
    let mut factored = factor(&d, &primes);
    let mut attempt = 1;
    while factored.is_none() && attempt < MINOR_ATTEMPTS {
        // A different pivot order gives a different minor; the gcd keeps
        // only what divides every invariant factor product.
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.rotate_left(attempt * rows.len() / MINOR_ATTEMPTS);
        if attempt % 2 == 1 {
            order.reverse();
        }
        let p = large_primes().next().expect("infinitely many primes");
        let e = echelon_mod_p(reduce(rows, p), p, &order);
        if e.rank == r {
            d = d.gcd(&minor(rows, &e.pivot_rows, &e.pivot_cols));
            factored = factor(&d, &primes);
        }
        attempt += 1;
    }
    let factored = factored?;

    let mut factors = vec![BigInt::one(); r];
    for (p, e) in factored {
        let cap = (62.0 / (p as f64).log2()).floor() as u32;
        let m = (e + 1).min(cap);
        let vals = local_valuations(rows, p, m);
        if vals.len() != r {
            return None;
        }
        for (f, v) in factors.iter_mut().zip(vals) {
            *f *= BigInt::from(p).pow(v);
        }
    }
    Some(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::strategy::Strategy;

    fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().copied().map(BigInt::from).collect())
            .collect()
    }

    #[test]
    fn primes() {
        assert!(is_prime_u64(2) && is_prime_u64(65537) && !is_prime_u64(65535));
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64(3_215_031_751));
        let ps: Vec<u64> = large_primes().take(3).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]) && ps[0] < 1 << 62);
    }

    #[test]
    fn small_examples() {
        let f = invariant_factors(&big(&[
            vec![2, 0, 0, 0],
            vec![0, 3, 0, 0],
            vec![0, 0, 0, 0],
        ]));
        assert_eq!(f.unwrap(), vec![BigInt::from(1), BigInt::from(6)]);
        let f = invariant_factors(&big(&[vec![-4, 0], vec![0, -6]]));
        assert_eq!(f.unwrap(), vec![BigInt::from(2), BigInt::from(12)]);
        assert_eq!(invariant_factors(&big(&[vec![0, 0]])).unwrap(), vec![]);
        let f = invariant_factors(&big(&[vec![1 << 40, 0], vec![0, 3 << 20]]));
        assert_eq!(
            f.unwrap(),
            vec![BigInt::from(1 << 20), BigInt::from(3i64 << 40)]
        );
    }

    #[test]
    fn large_prime_factors() {
        let f = invariant_factors(&big(&[vec![1_000_003, 0], vec![0, 2]]));
        assert_eq!(f.unwrap(), vec![BigInt::from(1), BigInt::from(2_000_006)]);
        assert_eq!(invariant_factors(&big(&[vec![65537 * 65537]])), None);
    }

    proptest::proptest! {
        #[test]
        fn agrees_with_integer_elimination(
            (r, c, v, dup) in (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
                (
                    proptest::strategy::Just(r),
                    proptest::strategy::Just(c),
                    proptest::collection::vec(-40i64..=40, r * c),
                    proptest::bool::ANY,
                )
            })
        ) {
            let mut rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            if dup && r > 1 {
                rows[r - 1] = rows[0].iter().map(|x| 3 * x).collect();
            }
            let m = crate::linalg::IntMatrix::from_rows(&rows).unwrap();
            let exact = crate::linalg::smith_normal_form(&m, true);
            let modular = invariant_factors(&big(&rows));
            if let Some(f) = modular {
                proptest::prop_assert_eq!(f.as_slice(), exact.invariant_factors());
            }
        }
    }
}
