use johnson_snf::combinatorics::{enumerate_subsets, SubsetClass};
use johnson_snf::scheme::{degree, smith_group, smith_group_via_basis};
use johnson_snf::superstandard::{
    boundary_interior_split, check_conjecture, check_phi_bijections, check_phi_column_equivalence,
    check_simpler_lemma, p_tilde, p_tilde_basis, p_tilde_rows,
};
use johnson_snf::{mu, SchemeElement, SchemeParams};
use num_bigint::BigInt;

#[test]
fn range_counterexample() {
    let r = check_conjecture(9, 3, 4);
    assert_eq!((r.rows, r.cols, r.rank), (48, 42, 41));
    assert!(!r.in_hypothesis && !r.holds);
}

#[test]
fn conjecture_holds_up_to_thirteen() {
    for n in 0..=13u32 {
        let top = (n + 1) / 3;
        for j in 0..=top {
            for i in 0..=j {
                let r = check_conjecture(n, i, j);
                assert!(r.in_hypothesis && r.holds, "{}", r.to_json());
                if i == j {
                    assert!(r.unimodular_when_square, "n={n} i={i}");
                }
            }
        }
    }
}

#[test]
fn super_standard_counts() {
    for n in 2..=13u32 {
        for i in 0..=(n + 1) / 3 {
            assert_eq!(p_tilde_rows(n, i).len() as u64, mu(n, i), "n={n} i={i}");
        }
    }
    assert_eq!(
        enumerate_subsets(12, 3, SubsetClass::SuperStandard).len(),
        100
    );
    let m = p_tilde(12, 3, 3);
    assert_eq!((m.rows(), m.cols()), (154, 154));
}

// The bijections need n >= 3k. At n = 3k - 1 the counts already differ:
// {2,4} is the only boundary super-standard 2-subset of 5, while 4 has two
// super-standard 1-subsets.
#[test]
fn phi_bijections_exhaustive() {
    for n in 2..=12u32 {
        for k in 1..=4u32.min(n / 3) {
            let b = check_phi_bijections(n, k).unwrap();
            assert!(b.all(), "n={n} k={k}: {b:?}");
        }
    }
}

#[test]
fn phi_bijections_break_at_the_edge() {
    for k in 1..=4u32 {
        let b = check_phi_bijections(3 * k - 1, k).unwrap();
        assert!(b.roundtrip);
        assert!(!b.super_standard && !b.up_to, "k={k}: {b:?}");
    }
}

#[test]
fn phi_roundtrip_everywhere() {
    for n in 2..=12u32 {
        for k in 1..=n / 2 {
            assert!(check_phi_bijections(n, k).unwrap().roundtrip, "n={n} k={k}");
        }
    }
}

#[test]
fn phi_preserves_columns_through_two() {
    for n in 3..=12u32 {
        for j in 1..=3u32.min(n / 3) {
            for i in 1..=j {
                assert!(
                    check_phi_column_equivalence(n, i, j).unwrap(),
                    "n={n} i={i} j={j}"
                );
            }
        }
    }
}

#[test]
fn boundary_interior_structure() {
    for n in 1..=12u32 {
        for j in 0..=3u32 {
            for i in 0..=j {
                let s = boundary_interior_split(n, i, j).unwrap();
                assert!(
                    s.mixed_block_zero && s.interior_matches,
                    "n={n} i={i} j={j}"
                );
            }
        }
    }
}

#[test]
fn simpler_lemma() {
    for n in 2..=12u32 {
        for j in 0..=3u32.min((n + 1) / 3) {
            for i in 0..=j {
                assert!(check_simpler_lemma(n, i, j).unwrap(), "n={n} i={i} j={j}");
            }
        }
    }
}

#[test]
fn p_tilde_basis_reproduces_smith_groups() {
    for n in 2..=12u32 {
        for kc in 0..=3u32 {
            if n + 1 < 3 * kc {
                continue;
            }
            let basis = p_tilde_basis(n, kc);
            for kr in 0..=kc {
                for ell in 0..=kr {
                    let p = SchemeParams::new(n, kr, kc, ell).unwrap();
                    let shifts = if p.is_square() {
                        vec![
                            BigInt::from(0),
                            degree(n, kr, ell),
                            BigInt::from(1),
                            BigInt::from(-1),
                        ]
                    } else {
                        vec![BigInt::from(0)]
                    };
                    for lambda in shifts {
                        let e = SchemeElement::intersection(p, lambda).unwrap();
                        let via = smith_group_via_basis(&e, &basis).unwrap();
                        assert_eq!(via, smith_group(&e).unwrap().group, "{e:?}");
                    }
                }
            }
        }
    }
}
