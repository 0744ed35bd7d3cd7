use johnson_snf::oracle::{brute_force_group, DEFAULT_CAP};
use johnson_snf::scheme::{degree, smith_group};
use johnson_snf::{SchemeElement, SchemeParams};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_agree(e: &SchemeElement) {
    let structured = smith_group(e).unwrap().group;
    let oracle = brute_force_group(e, DEFAULT_CAP).unwrap();
    assert_eq!(structured, oracle, "{e:?}");
}

#[test]
fn intersection_matrices_and_shifts() {
    for n in 2..=10u32 {
        for kc in 0..=3u32 {
            if n + 1 < 3 * kc {
                continue;
            }
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
                        assert_agree(&SchemeElement::intersection(p, lambda).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn random_linear_combinations() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 2..=10u32 {
        for k in 0..=3u32 {
            if n + 1 < 3 * k {
                continue;
            }
            for t in 0..20 {
                let coeffs: Vec<i64> = (0..=k).map(|_| rng.gen_range(-3..=3)).collect();
                let lambda = [0, 1, -1][t % 3];
                assert_agree(&SchemeElement::from_i64(n, k, &coeffs, lambda).unwrap());
            }
        }
    }
}

#[test]
fn larger_matrices_up_to_five_hundred_columns() {
    for n in 11..=14u32 {
        for ell in 0..=3 {
            assert_agree(&SchemeElement::laplacian(n, 3, ell).unwrap());
        }
    }
}

#[test]
fn laplacian_has_free_part() {
    for n in 5..=10u32 {
        for k in 1..=3u32 {
            if n + 1 < 3 * k {
                continue;
            }
            for ell in 0..k {
                let e = SchemeElement::laplacian(n, k, ell).unwrap();
                let g = brute_force_group(&e, DEFAULT_CAP).unwrap();
                assert!(g.free_rank() >= 1, "n={n} k={k} ell={ell}");
                assert_eq!(smith_group(&e).unwrap().group.free_rank(), g.free_rank());
            }
        }
    }
}
