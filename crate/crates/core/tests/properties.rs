mod common;

use common::*;
use num_traits::{ToPrimitive, Zero};
use plotkin_wef::bounds::{truncated_union_bound, union_bound_terms, ChannelPoint};
use plotkin_wef::codetree::CodeTree;
use plotkin_wef::oracle::{
    ensemble_wef_exhaustive, ensemble_wef_montecarlo, exact_wef_bruteforce, BinaryMatrix,
};
use plotkin_wef::plotkin::{combine, combine_partial};
use proptest::prelude::*;

fn arb_matrix(n: usize, max_k: usize) -> impl Strategy<Value = BinaryMatrix> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), n), 0..=max_k)
        .prop_map(move |rows| BinaryMatrix::from_bool_rows(n, &rows).unwrap())
}

fn arb_pair() -> impl Strategy<Value = (BinaryMatrix, BinaryMatrix)> {
    (1usize..=6, 0usize..=8).prop_flat_map(|(n, k0)| (arb_matrix(n, k0), arb_matrix(n, 8 - k0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exhaustive_average_equals_closed_form((g0, g1) in arb_pair()) {
        let oracle = ensemble_wef_exhaustive(&g0, &g1).unwrap();
        let closed = combine(&exact_wef_bruteforce(&g0).unwrap(), &exact_wef_bruteforce(&g1).unwrap()).unwrap();
        prop_assert_eq!(oracle, closed);
    }

    #[test]
    fn bruteforce_mass_is_two_to_the_rank(g in (1usize..=20).prop_flat_map(|n| arb_matrix(n, 10))) {
        let a = exact_wef_bruteforce(&g).unwrap();
        prop_assert_eq!(a.dimension(), Some(g.rank() as u64));
        prop_assert_eq!(a.coeff(0), ratio(1, 1));
    }

    #[test]
    fn bound_from_partial_spectrum_matches_full(r in 0i64..=4, m in 2u32..=6, db in -1.0f64..6.0, frac in 0.0f64..1.0) {
        let tree = CodeTree::reed_muller(r, m).unwrap();
        let full = tree.ensemble_wef();
        let max_w = 1 + ((tree.length() - 1) as f64 * frac) as usize;
        let rate = (tree.dimension().max(1) as f64 / tree.length() as f64).min(1.0);
        let ch = ChannelPoint::new(rate, db).unwrap();
        let (l, rt) = tree.children().unwrap();
        let head = combine_partial(&l.ensemble_wef(), &rt.ensemble_wef(), max_w).unwrap();
        prop_assert_eq!(&head[..], &full.coeffs()[..=max_w]);
        prop_assert_eq!(union_bound_terms(&head, ch), truncated_union_bound(&full, max_w, ch).unwrap());
    }
}

/// Codes invariant under every coordinate permutation: zero, repetition,
/// even-weight, and full space.
fn invariant_codes(n: usize) -> Vec<BinaryMatrix> {
    let unit = |i: usize| -> String { (0..n).map(|j| if j == i { '1' } else { '0' }).collect() };
    let rep: String = "1".repeat(n);
    let even: Vec<String> = (1..n)
        .map(|i| {
            (0..n)
                .map(|j| if j == 0 || j == i { '1' } else { '0' })
                .collect()
        })
        .collect();
    let full: Vec<String> = (0..n).map(unit).collect();
    vec![
        BinaryMatrix::empty(n),
        BinaryMatrix::from_strings(n, &[rep]).unwrap(),
        BinaryMatrix::from_strings(n, &even).unwrap(),
        BinaryMatrix::from_strings(n, &full).unwrap(),
    ]
}

#[test]
fn invariant_right_component_gives_exact_code_spectrum() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
    for n in 1..=7 {
        for g1 in invariant_codes(n) {
            for k0 in 0..=n.min(4) {
                let g0 = random_matrix(&mut rng, n, k0);
                // Generator of the identity-interleaver code {(u + v, v)}.
                let mut rows: Vec<String> = g0
                    .to_strings()
                    .into_iter()
                    .map(|r| r + &"0".repeat(n))
                    .collect();
                rows.extend(g1.to_strings().into_iter().map(|r| r.repeat(2)));
                let specific =
                    exact_wef_bruteforce(&BinaryMatrix::from_strings(2 * n, &rows).unwrap())
                        .unwrap();
                let ensemble = combine(
                    &exact_wef_bruteforce(&g0).unwrap(),
                    &exact_wef_bruteforce(&g1).unwrap(),
                )
                .unwrap();
                assert_eq!(
                    ensemble,
                    specific,
                    "n = {n}, g0 = {}, g1 = {}",
                    g0.to_json(),
                    g1.to_json()
                );
            }
        }
    }
}

#[test]
fn active_set_trees_match_rm_trees() {
    for m in 0..=6u32 {
        for r in -1..=m as i64 {
            let rm = CodeTree::reed_muller(r, m).unwrap();
            let active: Vec<usize> = (0..1usize << m)
                .filter(|i| i.count_ones() as i64 >= m as i64 - r)
                .collect();
            let t = CodeTree::from_active_set(m, &active).unwrap();
            assert_eq!(t, rm);
            assert_eq!(t.ensemble_wef(), rm.ensemble_wef());
        }
    }
}

/// Coverage of the 3-standard-error interval over 100 seeds. Slow; run with
/// `cargo test -- --ignored`.
#[test]
#[ignore]
fn montecarlo_interval_coverage() {
    let (g0, g1) = (mat(3, &["100"]), mat(3, &["110"]));
    let exact = ensemble_wef_exhaustive(&g0, &g1).unwrap();
    let target = exact.coeff(3).to_f64().unwrap();
    let covered = (0..100u64)
        .filter(|&seed| {
            let est = ensemble_wef_montecarlo(&g0, &g1, 6000, seed).unwrap();
            let a3 = est.mean.coeff(3).to_f64().unwrap();
            (a3 - target).abs() <= 3.0 * est.std_errors[3]
        })
        .count();
    assert!(covered >= 95, "{covered} of 100 seeds covered");
}

#[test]
fn montecarlo_zero_weights_have_zero_error() {
    let est = ensemble_wef_montecarlo(&mat(3, &["100"]), &mat(3, &["110"]), 500, 9).unwrap();
    for (w, c) in est.mean.coeffs().iter().enumerate() {
        if c.is_zero() {
            assert_eq!(est.std_errors[w], 0.0);
        }
    }
    assert_eq!(est.mean.coeff(4), ratio(1, 1));
    assert_eq!(est.std_errors[4], 0.0);
}

#[test]
fn bound_reference_value() {
    // 14 Q(sqrt(4 * 10^0.3)) + Q(sqrt(8 * 10^0.3)), evaluated with 40-digit arithmetic.
    const REFERENCE: f64 = 0.033_120_987_629_270_8;
    let a = poly("1 + 14x^4 + x^8", 8);
    let ch = ChannelPoint::new(0.5, 3.0).unwrap();
    let b = truncated_union_bound(&a, 8, ch).unwrap();
    assert!((b / REFERENCE - 1.0).abs() < 1e-12, "{b} vs {REFERENCE}");
}

#[test]
fn bound_reference_single_term() {
    // Q(sqrt(2 * 3 * 0.5 * 10^0.2)), 40-digit reference.
    const REFERENCE: f64 = 0.014_609_366_207_242_873;
    let ch = ChannelPoint::new(0.5, 2.0).unwrap();
    let b = truncated_union_bound(&poly("1 + x^3", 3), 3, ch).unwrap();
    assert!((b / REFERENCE - 1.0).abs() < 1e-12, "{b} vs {REFERENCE}");
}
