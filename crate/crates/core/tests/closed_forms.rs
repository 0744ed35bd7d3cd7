use johnson_snf::oracle::{johnson_k3_adjacency_x, verify_closed_form, Theorem, DEFAULT_CAP};

#[test]
fn every_theorem_up_to_thirteen() {
    let mut failures = Vec::new();
    for t in Theorem::catalog() {
        for n in t.min_n()..=13 {
            match verify_closed_form(t, n, DEFAULT_CAP) {
                Ok(r) if r.agrees() => {}
                Ok(r) => failures.push(r.to_json(false).to_string()),
                Err(e) => failures.push(format!("{t} n={n}: {e}")),
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn johnson_k3_adjacency_x_is_periodic() {
    for n in 7..=88u32 {
        assert_eq!(
            johnson_k3_adjacency_x(n),
            johnson_k3_adjacency_x(n + 12),
            "n={n}"
        );
    }
}
