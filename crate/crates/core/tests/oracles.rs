//! Closed forms and enumerators checked against brute force.

use circm_core::verifier::all_circulants;
use circm_core::{f_vector, family_f_vector, independence_complex, make_circulant, CirculantSpec, Graph};

/// Independent sets counted by size, straight from the definition.
fn brute_force_f(g: &Graph) -> Vec<i64> {
    let n = g.vertex_count();
    let mut f = vec![0i64; n + 1];
    for mask in 0u64..1 << n {
        let independent =
            (0..n).all(|u| mask >> u & 1 == 0 || (u + 1..n).all(|v| mask >> v & 1 == 0 || !g.is_edge(u, v)));
        if independent {
            f[mask.count_ones() as usize] += 1;
        }
    }
    while f.len() > 1 && f[f.len() - 1] == 0 {
        f.pop();
    }
    f
}

#[test]
fn enumerated_f_vectors_match_brute_force() {
    for spec in all_circulants(12) {
        let g = make_circulant(&spec);
        assert_eq!(f_vector(&independence_complex(&g)).f, brute_force_f(&g), "{spec}");
    }
}

#[test]
fn family_closed_form_matches_brute_force() {
    for n in 2..=16 {
        for d in 1..=n / 2 {
            let g = make_circulant(&CirculantSpec::contiguous(n, d).unwrap());
            assert_eq!(family_f_vector(n, d).unwrap().f, brute_force_f(&g), "n = {n}, d = {d}");
        }
    }
}

#[test]
fn h_vectors_invert_to_f_vectors() {
    // f_{i-1} = Σ_{k ≤ i} C(D - k, i - k) h_k with D = dim + 1.
    for spec in all_circulants(11) {
        let fh = f_vector(&independence_complex(&make_circulant(&spec)));
        let big_d = fh.f.len() - 1;
        let binom = |n: usize, k: usize| -> i64 { (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t as i64 + 1)) };
        for i in 0..=big_d {
            let sum: i64 = (0..=i).map(|k| binom(big_d - k, i - k) * fh.h[k]).sum();
            assert_eq!(sum, fh.f[i], "{spec}");
        }
    }
}
