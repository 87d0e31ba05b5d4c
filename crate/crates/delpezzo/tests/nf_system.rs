//! The integer system end to end: engine agreement, the recorded search
//! oracle, normalization behavior, box-restriction semantics, descent
//! scalars, and input guards.

mod common;

use common::fixture_path;
use delpezzo::io;
use delpezzo::nfdescent::{
    constraint_audit, descent_step, elementary_transform, exhaustive_search,
    exhaustive_search_sequential, normalize, NfError, NfState, NormalizeOutcome, SearchBounds,
    TransformOutcome,
};

#[test]
fn parallel_and_sequential_engines_agree() {
    let mut custom = SearchBounds::for_a_max(7);
    custom.m_cap = Some(5);
    custom.n_max = 4;
    for bounds in [
        SearchBounds::for_a_max(4),
        SearchBounds::for_a_max(8),
        custom,
    ] {
        let parallel = exhaustive_search(&bounds);
        let sequential = exhaustive_search_sequential(&bounds);
        assert_eq!(parallel, sequential, "engines disagree on {:?}", bounds);
    }
}

#[test]
fn fixture_search_reproduces_recorded_hits() {
    let fixture = io::load_nf_fixture(&fixture_path("nf_search.json")).expect("fixture");
    let report = exhaustive_search_sequential(&fixture.bounds);
    let states: Vec<NfState> = report.hits.iter().map(|h| h.state.clone()).collect();
    assert_eq!(Some(&states), fixture.expected_hits.as_ref());
    // Candidate volume of the recorded box, pinned as a regression
    // anchor for the enumeration itself.
    assert_eq!(report.candidates, 3_852_196);
    for hit in &report.hits {
        assert!(hit.state.satisfies_system());
        assert!(hit.state.is_normalized());
        assert!(hit.audit.all_hold());
    }
}

#[test]
fn box_restrictions_filter_the_recorded_hits() {
    let fixture = io::load_nf_fixture(&fixture_path("nf_search.json")).expect("fixture");
    let recorded = fixture.expected_hits.as_ref().expect("recorded").clone();

    // Tighter |b| keeps exactly the recorded hits within the smaller box.
    let mut tight_b = fixture.bounds.clone();
    tight_b.b_abs_max = 3;
    let report = exhaustive_search_sequential(&tight_b);
    let expected: Vec<NfState> = recorded
        .iter()
        .filter(|s| s.b().abs() <= 3)
        .cloned()
        .collect();
    assert_eq!(
        report.hits.iter().map(|h| h.state.clone()).collect::<Vec<_>>(),
        expected
    );
    assert_eq!(expected.len(), 5, "five recorded hits have |b| <= 3");

    // A multiplicity cap below every recorded maximum empties the box.
    let mut capped = fixture.bounds.clone();
    capped.m_cap = Some(3);
    assert!(exhaustive_search_sequential(&capped).hits.is_empty());

    // Limiting the number of multiplicities keeps only the short states.
    let mut short = fixture.bounds.clone();
    short.n_max = 2;
    assert!(!short.complete_for_n());
    let report = exhaustive_search_sequential(&short);
    let expected: Vec<NfState> = recorded
        .iter()
        .filter(|s| s.mults().len() <= 2)
        .cloned()
        .collect();
    assert_eq!(
        report.hits.iter().map(|h| h.state.clone()).collect::<Vec<_>>(),
        expected
    );
    assert_eq!(expected.len(), 1, "only (5,-2,[5,3]) has two multiplicities");
}

#[test]
fn normalization_transforms_oversized_multiplicities() {
    // A hit pushed out of normal form comes back to it.
    let hit = NfState::new(5, -2, vec![5, 3]).expect("well-formed");
    let walked = match elementary_transform(&hit, 1).expect("system holds") {
        TransformOutcome::Transformed(s) => s,
        TransformOutcome::NonGeometric { .. } => unreachable!("2a - 3 = 7 > 0"),
    };
    assert_eq!(walked, NfState::new(5, 0, vec![5, 7]).expect("well-formed"));
    assert!(!walked.is_normalized());
    match normalize(&walked).expect("system holds") {
        NormalizeOutcome::Normalized(back) => assert_eq!(back, hit),
        NormalizeOutcome::Stuck(s) => panic!("should normalize, stuck at {}", s),
    }

    // The hand-checked states get stuck: their largest multiplicity
    // cannot be replaced by a positive value. The smaller one has no
    // transformable index at all; the bigger one first folds its middle
    // multiplicity down and then stalls on the 5.
    let tall = NfState::new(1, 2, vec![3, 1]).expect("well-formed");
    match normalize(&tall).expect("system holds") {
        NormalizeOutcome::Stuck(same) => assert_eq!(same, tall),
        NormalizeOutcome::Normalized(s) => panic!("unexpectedly normalized to {}", s),
    }
    let big = NfState::new(2, 3, vec![5, 3, 1]).expect("well-formed");
    match normalize(&big).expect("system holds") {
        NormalizeOutcome::Stuck(partial) => {
            assert_eq!(partial, NfState::new(2, 2, vec![5, 1, 1]).expect("well-formed"));
            assert!(partial.satisfies_system(), "partial progress keeps the system");
        }
        NormalizeOutcome::Normalized(s) => panic!("unexpectedly normalized to {}", s),
    }
}

#[test]
fn descent_scalars_match_their_formulas() {
    let fixture = io::load_nf_fixture(&fixture_path("nf_search.json")).expect("fixture");
    let report = exhaustive_search_sequential(&fixture.bounds);
    for hit in &report.hits {
        let state = &hit.state;
        let descent = hit.descent.expect("every recorded hit descends");
        let max = state.max_mult().expect("nonempty");
        assert_eq!(descent.a_next, 2 * state.a() + 2 * state.b() - max);
        assert_eq!(descent.b_next, max - state.a() - state.b());
        assert_eq!(descent.degenerate, descent.a_next == 0);
        assert_eq!(
            descent_step(state).expect("normalized, audit holds"),
            descent
        );
    }
}

#[test]
fn descent_requires_normal_form_and_the_predicates() {
    // Not normalized: multiplicity 3 exceeds a = 1.
    let tall = NfState::new(1, 2, vec![3, 1]).expect("well-formed");
    assert!(matches!(descent_step(&tall), Err(NfError::NotNormalized)));

    // Normalized but b >= 0 fails the audit.
    let calm = NfState::new(2, 1, vec![1]).expect("well-formed");
    assert!(calm.is_normalized());
    assert!(matches!(descent_step(&calm), Err(NfError::ConstraintsNotMet)));

    // The audit itself refuses states outside the solution set.
    assert!(matches!(
        constraint_audit(&calm),
        Err(NfError::SystemNotSatisfied)
    ));
    let hit = NfState::new(5, -2, vec![5, 3]).expect("well-formed");
    let audit = constraint_audit(&hit).expect("solution in normal form");
    assert!(audit.all_hold());
}

#[test]
fn malformed_states_and_transforms_are_rejected() {
    assert!(matches!(
        NfState::new(0, 1, vec![1]),
        Err(NfError::NonpositiveA { a: 0 })
    ));
    assert!(matches!(
        NfState::new(1, 1, vec![0]),
        Err(NfError::NonpositiveMultiplicity { value: 0 })
    ));
    let hit = NfState::new(5, -2, vec![5, 3]).expect("well-formed");
    assert!(matches!(
        elementary_transform(&hit, 2),
        Err(NfError::IndexOutOfRange { index: 2, len: 2 })
    ));
    let sour = NfState::new(5, -2, vec![5, 4]).expect("well-formed");
    assert!(!sour.satisfies_system());
    assert!(matches!(
        elementary_transform(&sour, 0),
        Err(NfError::SystemNotSatisfied)
    ));
    // A transform that would need a nonpositive replacement reports it
    // instead of producing a bogus state.
    let tall = NfState::new(1, 2, vec![3, 1]).expect("well-formed");
    assert!(matches!(
        elementary_transform(&tall, 0),
        Ok(TransformOutcome::NonGeometric { would_be: -1 })
    ));
}

#[test]
fn derived_cap_makes_boxes_complete() {
    let bounds = SearchBounds::for_a_max(10);
    assert!(bounds.complete_for_n());
    assert_eq!(bounds.b_abs_max, 20);
    assert_eq!(bounds.n_max, bounds.derived_n_cap());
    // Any solution's multiplicity sum is 3a + 2b - 3, which the cap
    // dominates throughout the box.
    assert_eq!(bounds.derived_n_cap(), (3 * 10 + 2 * 20 - 3) as usize);
}
