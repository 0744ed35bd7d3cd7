use johnson_snf::linalg::{index, is_unimodular, rank, stack, IntMatrix};
use johnson_snf::scheme::{
    bier_p, d_product, e_matrices, triangular_check, verify_basis_identity, w_matrix,
};
use johnson_snf::{binomial, mu, SchemeParams};
use num_integer::Integer;
use num_traits::One;

#[test]
fn bier_matrices_are_unimodular() {
    for n in 1..=12u32 {
        for k in 0..=4u32.min(n) {
            if n + 1 < 2 * k {
                continue;
            }
            assert!(is_unimodular(&bier_p(n, k)), "P_{k}({n})");
        }
    }
}

#[test]
fn w_product_identity() {
    for n in 1..=12u32 {
        let top = n / 2;
        for j in 0..=top {
            let wj: Vec<IntMatrix> = (0..=j).map(|s| w_matrix(n, s, j)).collect();
            for i in 0..=j {
                let wij = &wj[i as usize];
                for s in 0..=i {
                    let lhs = w_matrix(n, s, i).mul(wij).unwrap();
                    let c = binomial((j - s) as i64, (i - s) as i64);
                    let w = &wj[s as usize];
                    let rhs = IntMatrix::from_fn(w.rows(), w.cols(), |a, b| &c * w.get(a, b));
                    assert_eq!(lhs, rhs, "n={n} s={s} i={i} j={j}");
                }
            }
        }
    }
}

#[test]
fn intersection_matrix_triangularizes() {
    for n in 1..=9u32 {
        for kc in 0..=n.min(4) {
            for kr in 0..=kc {
                for ell in 0..=kr {
                    let p = SchemeParams::new(n, kr, kc, ell).unwrap();
                    assert!(triangular_check(p).unwrap(), "{p:?}");
                }
            }
        }
    }
}

#[test]
fn e_basis_diagonalizes_w() {
    for n in 2..=13u32 {
        let k = (n + 1) / 3;
        let es = e_matrices(n, k).unwrap();
        for (s, e) in es.iter().enumerate() {
            assert!(is_unimodular(e), "E_{s}({n})");
        }
        for i in 0..=k {
            for j in i..=k {
                assert!(
                    verify_basis_identity(n, &es, i, j).unwrap(),
                    "n={n} i={i} j={j}"
                );
            }
        }
    }
}

#[test]
fn stacked_matrices_have_index_one() {
    for n in 1..=12u32 {
        for i in 0..=n {
            for j in i..=n {
                if 2 * j + i > n {
                    continue;
                }
                let parts: Vec<IntMatrix> = (0..=i).map(|s| w_matrix(n, s, j)).collect();
                let m = stack(&parts).unwrap();
                assert!(index(&m).is_one(), "M_{{{i},{j}}}({n})");
                assert_eq!(rank(&m) as u64, mu(n, i), "M_{{{i},{j}}}({n})");
            }
        }
    }
}

#[test]
fn w_index_divides_d() {
    for n in 1..=12u32 {
        for i in 0..=n {
            for j in i..=n {
                if 2 * j + i > n {
                    continue;
                }
                let idx = index(&w_matrix(n, i, j));
                assert!(d_product(n, i, j).is_multiple_of(&idx), "n={n} i={i} j={j}");
            }
        }
    }
}
