use peglab::adf::{
    adf_verdict, canonical_form, hypotheses_hold, hypothesis_i_holds, identity_suite, influence_free, ncs_check,
    random_instance, random_valid_instance, search_counterexamples, tap_check, winding_profile_wi, AdfInstance, NcsViolation, SearchConfig,
    SearchMode, XReal,
};
use peglab::gen::{random_admissible_triple, seeded_rng};
use proptest::prelude::*;

fn xreal() -> impl Strategy<Value = XReal<i64>> {
    prop_oneof![
        1 => Just(XReal::NegInf),
        1 => Just(XReal::PosInf),
        6 => (-4i64..=4).prop_map(XReal::Finite),
    ]
}

fn pairs(max: usize) -> impl Strategy<Value = Vec<[XReal<i64>; 2]>> {
    prop::collection::vec((xreal(), xreal()).prop_map(|(a, b)| [a, b]), 1..=max)
}

fn negate(v: &XReal<i64>) -> XReal<i64> {
    match v {
        XReal::NegInf => XReal::PosInf,
        XReal::PosInf => XReal::NegInf,
        XReal::Finite(x) => XReal::Finite(-x),
    }
}

fn instance() -> impl Strategy<Value = AdfInstance<i64>> {
    (any::<u64>(), 2i64..8).prop_map(|(seed, bound)| random_instance(&mut seeded_rng(seed), &[1, 3, 5], bound))
}

/// Draws until the instance meets hypothesis (i), or both hypotheses with
/// distinct gaps when `both` is set.
fn conditioned(both: bool) -> impl Strategy<Value = AdfInstance<i64>> {
    (any::<u64>(), 3i64..8).prop_map(move |(seed, bound)| {
        let mut rng = seeded_rng(seed);
        if both {
            return random_valid_instance(&mut rng, &[1, 3, 5], bound, 1_000_000).expect("valid instances are common");
        }
        loop {
            let inst = random_instance(&mut rng, &[1, 3, 5], bound);
            if hypothesis_i_holds(&inst) {
                return inst;
            }
        }
    })
}

fn reverse_lists(inst: &AdfInstance<i64>) -> AdfInstance<i64> {
    AdfInstance::new(inst.lists().clone().map(|mut l| {
        l.reverse();
        l
    }))
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn ncs_ignores_order_within_pairs(ps in pairs(3), flip in 0usize..3) {
        let mut swapped = ps.clone();
        let i = flip % swapped.len();
        swapped[i].swap(0, 1);
        prop_assert_eq!(ncs_check(&swapped), ncs_check(&ps));
    }

    #[test]
    fn ncs_ignores_pair_order(ps in pairs(3)) {
        let mut rotated = ps.clone();
        rotated.rotate_left(1);
        let mut reversed = ps.clone();
        reversed.reverse();
        prop_assert_eq!(ncs_check(&rotated), ncs_check(&ps));
        prop_assert_eq!(ncs_check(&reversed), ncs_check(&ps));
    }

    #[test]
    fn ncs_ignores_negation(ps in pairs(3)) {
        let neg: Vec<[XReal<i64>; 2]> = ps.iter().map(|[a, b]| [negate(a), negate(b)]).collect();
        prop_assert_eq!(ncs_check(&neg), ncs_check(&ps));
    }

    #[test]
    fn single_pair_needs_one_strict_sign(a in xreal(), b in xreal()) {
        let same_sign = a.sgn() != 0 && a.sgn() == b.sgn();
        prop_assert_eq!(ncs_check(&[[a.clone(), b.clone()]]).is_ok(), same_sign);
        if a.sgn() != 0 && b.sgn() != 0 && a.sgn() != b.sgn() {
            let expected = if a.is_finite() || b.is_finite() { NcsViolation::NoCancellation } else { NcsViolation::MixedInfinities };
            prop_assert_eq!(ncs_check(&[[a, b]]), Err(expected));
        }
    }

    #[test]
    fn smallest_gap_rule_agrees_with_definition(seed in any::<u64>(), bound in 1i64..12) {
        let t = random_admissible_triple(&mut seeded_rng(seed), bound);
        let xs: Vec<[XReal<i64>; 2]> = t.iter().map(|p| [XReal::Finite(p[0]), XReal::Finite(p[1])]).collect();
        prop_assert_eq!(influence_free(&t).unwrap(), ncs_check(&xs).is_ok());
    }

    #[test]
    fn hypotheses_ignore_list_order_and_reversal(inst in instance()) {
        let base = hypotheses_hold(&inst);
        prop_assert_eq!(hypotheses_hold(&inst.permuted([1, 2, 0])), base);
        prop_assert_eq!(hypotheses_hold(&inst.permuted([1, 0, 2])), base);
        prop_assert_eq!(hypotheses_hold(&reverse_lists(&inst)), base);
        prop_assert_eq!(hypotheses_hold(&canonical_form(&inst)), base);
        prop_assert_eq!(reverse_lists(&inst).alternating_sum(), inst.alternating_sum());
    }

    #[test]
    fn non_crossing_lists_have_binary_plateaus(inst in conditioned(false)) {
        for i in 0..3 {
            let plateaus = winding_profile_wi(&inst, i).plateaus();
            prop_assert!(plateaus.iter().all(|v| *v == 0 || *v == 1), "list {}: {:?}", i, plateaus);
        }
    }

    #[test]
    fn singletons_hold_exactly_for_negative_sums(a in -20i64..20, b in -20i64..20, c in -20i64..20) {
        let inst = AdfInstance::new([vec![a], vec![b], vec![c]]).unwrap();
        prop_assert_eq!(hypotheses_hold(&inst), a + b + c < 0);
    }

    #[test]
    fn identities_and_paths_hold_under_the_hypotheses(inst in conditioned(true)) {
        let report = identity_suite(&inst);
        let failures: Vec<_> = report.failures().collect();
        prop_assert!(failures.is_empty(), "{:?}", failures);
        let tap = tap_check(&inst);
        if tap.applicable {
            prop_assert!(tap.confirmed, "{:?}", tap);
        }
    }

    #[test]
    fn small_instances_meeting_the_hypotheses_have_negative_sum(inst in instance()) {
        let v = adf_verdict(&inst);
        prop_assert!(v.conjecture_consistent, "{:?} {:?}", inst, v);
    }
}

#[test]
fn random_search_is_reproducible() {
    let config = SearchConfig { lengths: vec![1, 3], mode: SearchMode::Random { bound: 4, budget: 2000, seed: 11 } };
    let a = search_counterexamples(&config).unwrap();
    let b = search_counterexamples(&config).unwrap();
    assert_eq!(a, b);
    assert!(a.counterexamples.is_empty());
}

#[test]
fn exhaustive_search_over_singletons_matches_the_count() {
    // Singletons over {-2..2}: the hypotheses hold exactly when the sum is
    // negative, counted here by hand.
    let grid: Vec<i64> = (-2..=2).collect();
    let mut expected = 0;
    for a in &grid {
        for b in &grid {
            expected += grid.iter().filter(|c| a + b + *c < 0).count();
        }
    }
    let config = SearchConfig { lengths: vec![1], mode: SearchMode::Exhaustive { grid, dedupe: false } };
    let report = search_counterexamples(&config).unwrap();
    assert_eq!(report.hypotheses_hold as usize, expected);
    assert!(report.counterexamples.is_empty());
}
