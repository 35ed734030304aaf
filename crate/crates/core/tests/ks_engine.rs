use proptest::prelude::*;
use specker_core::ks::{
    find_noncontextual_assignment, parity_certificate, Assignment, CertificateResult,
    ContextHypergraph, RaySystem, SearchConfig, SignConvention, Witness,
};
use specker_core::linalg::{random_state, QuantumState};

/// Plain scan over every valuation; returns the maximum and the first
/// (lexicographically smallest) maximizer.
fn brute_force_bound(h: &ContextHypergraph, sign: i64) -> (i64, Assignment) {
    let n = h.vertex_count();
    let mut best = (i64::MIN, 0u64);
    for index in 0..1u64 << n {
        let mut sum = 0i64;
        for edge in h.edges() {
            let ones = edge
                .iter()
                .filter(|&&v| (index >> (n - 1 - v)) & 1 == 1)
                .count();
            sum += if ones % 2 == 0 { 1 } else { -1 };
        }
        let value = sign * sum;
        if value > best.0 {
            best = (value, index);
        }
    }
    (best.0, Assignment::from_index(best.1, n))
}

fn score(h: &ContextHypergraph, sign: i64, a: &Assignment) -> i64 {
    sign * h
        .edges()
        .iter()
        .map(|e| if a.ones_in(e).is_multiple_of(2) { 1 } else { -1 })
        .sum::<i64>()
}

fn brute_force_colorable(h: &ContextHypergraph) -> bool {
    let n = h.vertex_count();
    (0..1u64 << n).any(|i| Assignment::from_index(i, n).is_noncontextual_coloring(h))
}

#[test]
fn bundled_system_has_the_expected_incidence() {
    let s = RaySystem::ceg18();
    let h = s.hypergraph();
    assert_eq!(h.vertex_count(), 18);
    assert_eq!(h.edges().len(), 9);
    assert!(h.degrees().iter().all(|&d| d == 2));
    // Slots of basis 9 are shared with bases 3, 4, 7 and 8 (one-based).
    let at = |slot: usize, basis: usize| s.ray_at(basis - 1, slot - 1).unwrap();
    assert_eq!(at(1, 9), at(3, 3));
    assert_eq!(at(2, 9), at(3, 4));
    assert_eq!(at(3, 9), at(4, 7));
    assert_eq!(at(4, 9), at(2, 8));
}

#[test]
fn bundled_system_is_not_colorable() {
    let h = RaySystem::ceg18().hypergraph();
    assert_eq!(
        parity_certificate(&h),
        CertificateResult::ProofOfNoncolorability
    );
    for workers in [1, 2, 4, 7] {
        assert_eq!(
            find_noncontextual_assignment(&h, &SearchConfig::with_workers(workers)).unwrap(),
            None
        );
    }
    assert!(!brute_force_colorable(&h));
}

#[test]
fn bundled_bound_matches_plain_scan() {
    let s = RaySystem::ceg18();
    let (oracle, oracle_arg) = brute_force_bound(&s.hypergraph(), -1);
    assert_eq!(oracle, 7);
    let w = Witness::new(&s, SignConvention::Negated);
    for workers in [1, 3, 8] {
        let b = w
            .classical_bound(&SearchConfig::with_workers(workers))
            .unwrap();
        assert_eq!(b.bound, oracle);
        assert_eq!(b.arg, oracle_arg);
    }
}

#[test]
fn literal_sign_bound() {
    // Under the literal sign the all-zero valuation makes every product +1.
    let s = RaySystem::ceg18();
    let w = Witness::new(&s, SignConvention::Literal);
    let b = w.classical_bound(&SearchConfig::default()).unwrap();
    assert_eq!(b.bound, 9);
    assert_eq!(b.arg, Assignment::zeros(18));
    let psi = QuantumState::basis(4, 0).unwrap();
    assert!((w.quantum_value(&psi).unwrap() + 9.0).abs() < 1e-9);
}

#[test]
fn quantum_value_is_state_independent() {
    let s = RaySystem::ceg18();
    let w = Witness::new(&s, SignConvention::Negated);
    let values: Vec<f64> = (0..20)
        .map(|seed| w.quantum_value(&random_state(4, seed).unwrap()).unwrap())
        .collect();
    for v in &values {
        assert!((v - 9.0).abs() < 1e-9, "{v}");
    }
}

fn small_hypergraph() -> impl Strategy<Value = ContextHypergraph> {
    (2usize..5, 1usize..5)
        .prop_flat_map(|(rank, edges)| {
            let n = rank + 6;
            (
                Just(n),
                prop::collection::vec(Just((0..n).collect::<Vec<_>>()).prop_shuffle(), edges)
                    .prop_map(move |shuffles| {
                        shuffles
                            .into_iter()
                            .map(|s| s[..rank].to_vec())
                            .collect::<Vec<_>>()
                    }),
            )
        })
        .prop_map(|(n, edges)| ContextHypergraph::new(n, edges).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn search_agrees_with_enumeration(h in small_hypergraph(), workers in 1usize..5) {
        let found = find_noncontextual_assignment(&h, &SearchConfig::with_workers(workers)).unwrap();
        prop_assert_eq!(found.is_some(), brute_force_colorable(&h));
        if let Some(a) = &found {
            prop_assert!(a.is_noncontextual_coloring(&h));
        }
        // A parity proof must never coexist with a coloring.
        if parity_certificate(&h) == CertificateResult::ProofOfNoncolorability {
            prop_assert!(found.is_none());
        }
    }

    #[test]
    fn bound_matches_enumeration(h in small_hypergraph(), workers in 1usize..5, negate in any::<bool>()) {
        let sign = if negate { -1 } else { 1 };
        let oracle = brute_force_bound(&h, sign);
        let got = specker_core::ks::maximize_parity_sum(&h, sign, &SearchConfig::with_workers(workers)).unwrap();
        prop_assert_eq!(got, oracle);
    }

    #[test]
    fn bound_is_invariant_under_relabeling(
        perm in Just((0..18).collect::<Vec<usize>>()).prop_shuffle(),
        order in Just((0..9).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let h = RaySystem::ceg18().hypergraph();
        let relabeled = h.relabeled(&perm, &order).unwrap();
        let (bound, arg) =
            specker_core::ks::maximize_parity_sum(&relabeled, -1, &SearchConfig::default()).unwrap();
        prop_assert_eq!(bound, 7);
        prop_assert_eq!(score(&relabeled, -1, &arg), 7);
        prop_assert_eq!(
            parity_certificate(&relabeled),
            CertificateResult::ProofOfNoncolorability
        );
        prop_assert_eq!(
            find_noncontextual_assignment(&relabeled, &SearchConfig::default()).unwrap(),
            None
        );
    }
}
