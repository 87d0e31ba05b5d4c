//! Integer states (a, b, {m_i}) constrained by the pair of equations
//!
//! ```text
//!   ∑ m_i  = 3a + 2b − 3
//!   ∑ m_i² = 3a² + 4ab − 1
//! ```
//!
//! with elementary transformations m_i ↦ 2a − m_i (which preserve both
//! equations exactly), normalization to max m_i ≤ a, a three-predicate
//! constraint audit, a descent step that strictly decreases a, and a
//! bounded exhaustive search over all normalized solutions.
//!
//! At a = 1 there are no normalized solutions: m_i ≤ 1 forces every
//! m_i = 1, so n = ∑m_i = 2b and n = ∑m_i² = 4b + 2, giving b = −1 and
//! n = −2 < 0. With an empty multiset the equations read 3a + 2b = 3 and
//! 3a² + 4ab = 1, which combine to 3a² − 6a + 1 = 0 with no integer root.
//! Solutions therefore need a ≥ 2 and at least one multiplicity.

use std::fmt;

/// Errors from state construction and the audit/descent pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NfError {
    NonpositiveA { a: i64 },
    NonpositiveMultiplicity { value: i64 },
    IndexOutOfRange { index: usize, len: usize },
    /// The state does not satisfy the two defining equations.
    SystemNotSatisfied,
    /// Some multiplicity exceeds a.
    NotNormalized,
    /// The audit predicates do not all hold.
    ConstraintsNotMet,
}

impl fmt::Display for NfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NfError::NonpositiveA { a } => write!(f, "a must be positive, got {a}"),
            NfError::NonpositiveMultiplicity { value } => {
                write!(f, "multiplicities must be positive, got {value}")
            }
            NfError::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for {len} multiplicities")
            }
            NfError::SystemNotSatisfied => {
                write!(f, "state does not satisfy the defining equations")
            }
            NfError::NotNormalized => write!(f, "state has a multiplicity above a"),
            NfError::ConstraintsNotMet => write!(f, "audit predicates do not all hold"),
        }
    }
}

impl std::error::Error for NfError {}

/// An integer state: a ≥ 1, b arbitrary, positive multiplicities in
/// input order (transformations address them by index).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NfState {
    a: i64,
    b: i64,
    mults: Vec<i64>,
}

/// Exact residuals of the two defining equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemResiduals {
    /// ∑m_i − (3a + 2b − 3)
    pub sum_residual: i64,
    /// ∑m_i² − (3a² + 4ab − 1)
    pub square_residual: i64,
}

impl SystemResiduals {
    pub fn satisfied(&self) -> bool {
        self.sum_residual == 0 && self.square_residual == 0
    }
}

impl NfState {
    pub fn new(a: i64, b: i64, mults: Vec<i64>) -> Result<NfState, NfError> {
        if a < 1 {
            return Err(NfError::NonpositiveA { a });
        }
        if let Some(&bad) = mults.iter().find(|&&m| m < 1) {
            return Err(NfError::NonpositiveMultiplicity { value: bad });
        }
        Ok(NfState { a, b, mults })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    pub fn mult_sum(&self) -> i64 {
        self.mults.iter().sum()
    }

    pub fn mult_square_sum(&self) -> i64 {
        self.mults.iter().map(|m| m * m).sum()
    }

    pub fn max_mult(&self) -> Option<i64> {
        self.mults.iter().copied().max()
    }

    /// Exact residuals of both equations.
    pub fn residuals(&self) -> SystemResiduals {
        SystemResiduals {
            sum_residual: self.mult_sum() - (3 * self.a + 2 * self.b - 3),
            square_residual: self.mult_square_sum() - (3 * self.a * self.a + 4 * self.a * self.b - 1),
        }
    }

    pub fn satisfies_system(&self) -> bool {
        self.residuals().satisfied()
    }

    /// Normalized means every multiplicity is at most a.
    pub fn is_normalized(&self) -> bool {
        self.mults.iter().all(|&m| m <= self.a)
    }

    /// The same state with multiplicities sorted descending — the
    /// canonical form used in search output.
    pub fn canonical(&self) -> NfState {
        let mut mults = self.mults.clone();
        mults.sort_unstable_by(|x, y| y.cmp(x));
        NfState {
            a: self.a,
            b: self.b,
            mults,
        }
    }
}

impl fmt::Display for NfState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, m={:?})", self.a, self.b, self.mults)
    }
}

/// Result of one elementary transformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformOutcome {
    Transformed(NfState),
    /// The replacement 2a − m_i would be ≤ 0.
    NonGeometric { would_be: i64 },
}

/// The elementary transformation at index i: m_i ↦ 2a − m_i and
/// b ↦ b + a − m_i. It preserves both defining equations exactly
/// (Δ∑m = 2(a − m_i) = 2Δb and Δ∑m² = 4a(a − m_i) = 4aΔb) and is an
/// involution at a fixed index. Requires a state satisfying the system.
pub fn elementary_transform(state: &NfState, index: usize) -> Result<TransformOutcome, NfError> {
    if index >= state.mults.len() {
        return Err(NfError::IndexOutOfRange {
            index,
            len: state.mults.len(),
        });
    }
    if !state.satisfies_system() {
        return Err(NfError::SystemNotSatisfied);
    }
    let m = state.mults[index];
    let replacement = 2 * state.a - m;
    if replacement <= 0 {
        return Ok(TransformOutcome::NonGeometric {
            would_be: replacement,
        });
    }
    let mut mults = state.mults.clone();
    mults[index] = replacement;
    Ok(TransformOutcome::Transformed(NfState {
        a: state.a,
        b: state.b + state.a - m,
        mults,
    }))
}

/// Result of driving the multiplicities below a.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizeOutcome {
    Normalized(NfState),
    /// Some oversized multiplicity cannot be transformed (2a − m ≤ 0);
    /// carries the state with every transformable index already done.
    Stuck(NfState),
}

/// Transform every multiplicity above a, one index at a time, until none
/// remain. Transforming an index moves it from above a to below a and
/// leaves the others unchanged (a never changes), so each index needs at
/// most one step and the loop terminates. An oversized multiplicity with
/// 2a − m ≤ 0 can never be fixed, so the state is stuck.
pub fn normalize(state: &NfState) -> Result<NormalizeOutcome, NfError> {
    if !state.satisfies_system() {
        return Err(NfError::SystemNotSatisfied);
    }
    let mut current = state.clone();
    loop {
        let oversized = current
            .mults
            .iter()
            .position(|&m| m > current.a && 2 * current.a - m > 0);
        match oversized {
            Some(index) => {
                match elementary_transform(&current, index)? {
                    TransformOutcome::Transformed(next) => current = next,
                    TransformOutcome::NonGeometric { .. } => {
                        unreachable!("index was chosen to be transformable")
                    }
                }
            }
            None => {
                return Ok(if current.is_normalized() {
                    NormalizeOutcome::Normalized(current)
                } else {
                    NormalizeOutcome::Stuck(current)
                });
            }
        }
    }
}

/// The three audited predicates on a normalized solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstraintAudit {
    /// b < 0
    pub b_negative: bool,
    /// a + 2b ≥ 0
    pub a_plus_two_b_nonnegative: bool,
    /// max m_i > a + b
    pub max_mult_exceeds_a_plus_b: bool,
}

impl ConstraintAudit {
    pub fn all_hold(&self) -> bool {
        self.b_negative && self.a_plus_two_b_nonnegative && self.max_mult_exceeds_a_plus_b
    }
}

/// Evaluate the three predicates. The state must satisfy the defining
/// equations and be normalized.
pub fn constraint_audit(state: &NfState) -> Result<ConstraintAudit, NfError> {
    if !state.satisfies_system() {
        return Err(NfError::SystemNotSatisfied);
    }
    if !state.is_normalized() {
        return Err(NfError::NotNormalized);
    }
    Ok(audit_predicates(state))
}

fn audit_predicates(state: &NfState) -> ConstraintAudit {
    let max = state.max_mult().unwrap_or(0);
    ConstraintAudit {
        b_negative: state.b < 0,
        a_plus_two_b_nonnegative: state.a + 2 * state.b >= 0,
        max_mult_exceeds_a_plus_b: max > state.a + state.b,
    }
}

/// The scalar outcome of one descent step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DescentReport {
    /// a' = 2a + 2b − max m; strictly below a whenever the audit holds.
    pub a_next: i64,
    /// b' = max m − a − b.
    pub b_next: i64,
    /// a' = 0: the boundary case (max m = a with a + 2b = 0), surfaced
    /// separately because the descent argument needs a' ≥ 1.
    pub degenerate: bool,
}

/// One descent step on a normalized state whose audit predicates hold;
/// checks the predicates directly (the defining equations are not needed
/// for the scalar formulas). Errors when normalization or a predicate
/// fails.
pub fn descent_step(state: &NfState) -> Result<DescentReport, NfError> {
    if !state.is_normalized() {
        return Err(NfError::NotNormalized);
    }
    if !audit_predicates(state).all_hold() {
        return Err(NfError::ConstraintsNotMet);
    }
    let m = state.max_mult().expect("audit guarantees a multiplicity");
    let a_next = 2 * state.a + 2 * state.b - m;
    let b_next = m - state.a - state.b;
    debug_assert!(a_next < state.a, "descent must decrease a");
    debug_assert!(a_next >= 0, "a' ≥ a + 2b ≥ 0");
    Ok(DescentReport {
        a_next,
        b_next,
        degenerate: a_next == 0,
    })
}

// ---------------------------------------------------------------------------
// Exhaustive search
// ---------------------------------------------------------------------------

/// Search box. All normalized solutions with a ≤ a_max, |b| ≤ b_abs_max,
/// at most n_max multiplicities, each at most min(a, m_cap), and
/// a + 2b ≥ 0 are enumerated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub a_max: i64,
    pub b_abs_max: i64,
    pub n_max: usize,
    /// Extra per-multiplicity cap; the effective cap is min(a, m_cap).
    pub m_cap: Option<i64>,
}

impl SearchBounds {
    /// Defaults: |b| ≤ 2·a_max and n_max at the derived cap, which makes
    /// the search complete for the box.
    pub fn for_a_max(a_max: i64) -> SearchBounds {
        let b_abs_max = 2 * a_max.max(0);
        let derived = (3 * a_max + 2 * b_abs_max - 3).max(0) as usize;
        SearchBounds {
            a_max,
            b_abs_max,
            n_max: derived,
            m_cap: None,
        }
    }

    /// Any solution in the box has n ≤ ∑m_i = 3a + 2b − 3 ≤ this.
    pub fn derived_n_cap(&self) -> usize {
        (3 * self.a_max + 2 * self.b_abs_max - 3).max(0) as usize
    }

    /// True when the configured n_max cannot exclude any solution of the
    /// (a, b) box.
    pub fn complete_for_n(&self) -> bool {
        self.n_max >= self.derived_n_cap()
    }
}

/// One solution found by the search, already canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub state: NfState,
    pub audit: ConstraintAudit,
    /// Present when the audit predicates all hold.
    pub descent: Option<DescentReport>,
}

/// Search output: the box, the number of multiset candidates that met
/// the linear equation (before the quadratic filter), and the hits in
/// canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub bounds: SearchBounds,
    pub candidates: u64,
    pub hits: Vec<SearchHit>,
}

/// Enumerate every normalized solution in the box, sequentially.
pub fn exhaustive_search_sequential(bounds: &SearchBounds) -> SearchReport {
    let per_cell: Vec<(u64, Vec<SearchHit>)> = cells(bounds)
        .into_iter()
        .map(|(a, b)| search_cell(a, b, bounds))
        .collect();
    merge_reports(bounds, per_cell)
}

/// Enumerate every normalized solution in the box, splitting the work by
/// (a, b) cell. The cells with the largest a carry most of the work, so
/// splitting by a alone would leave one long task at the end; per-cell
/// tasks keep every worker busy. The output is identical to the
/// sequential version.
#[cfg(feature = "parallel")]
pub fn exhaustive_search(bounds: &SearchBounds) -> SearchReport {
    use rayon::prelude::*;
    let per_cell: Vec<(u64, Vec<SearchHit>)> = cells(bounds)
        .into_par_iter()
        .map(|(a, b)| search_cell(a, b, bounds))
        .collect();
    merge_reports(bounds, per_cell)
}

/// Without the parallel feature the search is the sequential one.
#[cfg(not(feature = "parallel"))]
pub fn exhaustive_search(bounds: &SearchBounds) -> SearchReport {
    exhaustive_search_sequential(bounds)
}

/// Every (a, b) pair of the box that can hold solutions: a ≥ 1,
/// a + 2b ≥ 0, and a nonnegative multiplicity sum 3a + 2b − 3.
fn cells(bounds: &SearchBounds) -> Vec<(i64, i64)> {
    let mut cells = Vec::new();
    for a in 1..=bounds.a_max {
        let b_lo = (-(a / 2)).max(-bounds.b_abs_max);
        for b in b_lo..=bounds.b_abs_max {
            if 3 * a + 2 * b - 3 >= 0 {
                cells.push((a, b));
            }
        }
    }
    cells
}

fn merge_reports(bounds: &SearchBounds, per_a: Vec<(u64, Vec<SearchHit>)>) -> SearchReport {
    let mut candidates = 0u64;
    let mut hits = Vec::new();
    for (count, mut list) in per_a {
        candidates += count;
        hits.append(&mut list);
    }
    // Canonical order regardless of how the work was split.
    hits.sort_by(|x, y| x.state.cmp(&y.state));
    SearchReport {
        bounds: bounds.clone(),
        candidates,
        hits,
    }
}

/// All solutions of one (a, b) cell. Candidates are counted at every
/// completed multiset matching the linear equation; the quadratic
/// equation then filters them down to hits.
fn search_cell(a: i64, b: i64, bounds: &SearchBounds) -> (u64, Vec<SearchHit>) {
    let mut candidates = 0u64;
    let mut hits = Vec::new();
    let cap = bounds.m_cap.map_or(a, |c| c.min(a)).max(0);
    let target_sum = 3 * a + 2 * b - 3;
    let target_squares = 3 * a * a + 4 * a * b - 1;
    let mut parts: Vec<i64> = Vec::new();
    descend_partitions(
        target_sum,
        cap,
        bounds.n_max,
        0,
        &mut parts,
        &mut candidates,
        &mut |mults, square_sum| {
            if square_sum == target_squares {
                let state = NfState {
                    a,
                    b,
                    mults: mults.to_vec(),
                };
                debug_assert!(state.satisfies_system());
                debug_assert!(state.is_normalized());
                let audit = audit_predicates(&state);
                let descent = if audit.all_hold() {
                    Some(descent_step(&state).expect("audit holds"))
                } else {
                    None
                };
                hits.push(SearchHit {
                    state,
                    audit,
                    descent,
                });
            }
        },
    );
    (candidates, hits)
}

/// Enumerate partitions of `remaining` into at most `slots` parts, each
/// in 1..=max_part, non-increasing. Pruning uses sum feasibility only
/// (can the remaining slots still reach the remaining sum), so every
/// completed partition is counted as a candidate before the square
/// filter runs.
fn descend_partitions(
    remaining: i64,
    max_part: i64,
    slots: usize,
    square_sum: i64,
    parts: &mut Vec<i64>,
    candidates: &mut u64,
    found: &mut impl FnMut(&[i64], i64),
) {
    if remaining == 0 {
        *candidates += 1;
        found(parts, square_sum);
        return;
    }
    if slots == 0 || max_part < 1 {
        return;
    }
    let high = max_part.min(remaining);
    // Non-increasing parts: everything after p is ≤ p, so p·slots must
    // cover the remaining sum. Ceiling division (both operands positive).
    let slots_i = slots as i64;
    let low = ((remaining + slots_i - 1) / slots_i).max(1);
    let mut p = high;
    while p >= low {
        parts.push(p);
        descend_partitions(
            remaining - p,
            p,
            slots - 1,
            square_sum + p * p,
            parts,
            candidates,
            found,
        );
        parts.pop();
        p -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(a: i64, b: i64, mults: &[i64]) -> NfState {
        NfState::new(a, b, mults.to_vec()).unwrap()
    }

    // -- verification ------------------------------------------------------

    #[test]
    fn residuals_on_known_states() {
        let s = state(1, 2, &[3, 1]);
        assert!(s.satisfies_system(), "∑m = 4 = 3+4−3, ∑m² = 10 = 3+8−1");

        let t = state(2, 3, &[5, 3, 1]);
        assert!(t.satisfies_system(), "∑m = 9 = 6+6−3, ∑m² = 35 = 12+24−1");

        let u = state(1, 1, &[1, 1]);
        let r = u.residuals();
        assert_eq!(r.sum_residual, 0, "first equation holds: 2 = 3+2−3");
        assert_eq!(r.square_residual, 2 - 6, "second fails: 2 ≠ 6");
        assert!(!u.satisfies_system());
    }

    #[test]
    fn construction_rejects_nonpositive_entries() {
        assert_eq!(
            NfState::new(0, 1, vec![1]).unwrap_err(),
            NfError::NonpositiveA { a: 0 }
        );
        assert_eq!(
            NfState::new(1, 1, vec![1, 0]).unwrap_err(),
            NfError::NonpositiveMultiplicity { value: 0 }
        );
    }

    // -- elementary transformation ------------------------------------------

    #[test]
    fn transform_matches_hand_computation() {
        let s = state(2, 3, &[5, 3, 1]);
        match elementary_transform(&s, 1).unwrap() {
            TransformOutcome::Transformed(next) => {
                assert_eq!(next, state(2, 2, &[5, 1, 1]));
                assert!(next.satisfies_system());
            }
            TransformOutcome::NonGeometric { .. } => panic!("m = 3 < 2a = 4 is transformable"),
        }

        // 2a − m = 2 − 3 < 0.
        let t = state(1, 2, &[3, 1]);
        assert_eq!(
            elementary_transform(&t, 0).unwrap(),
            TransformOutcome::NonGeometric { would_be: -1 }
        );

        assert_eq!(
            elementary_transform(&s, 7).unwrap_err(),
            NfError::IndexOutOfRange { index: 7, len: 3 }
        );
        let broken = state(1, 1, &[1, 1]);
        assert_eq!(
            elementary_transform(&broken, 0).unwrap_err(),
            NfError::SystemNotSatisfied
        );
    }

    #[test]
    fn transform_fixed_point_and_involution() {
        // m_i = a is a fixed point.
        let s = state(5, -2, &[5, 3]);
        match elementary_transform(&s, 0).unwrap() {
            TransformOutcome::Transformed(next) => assert_eq!(next, s),
            _ => panic!("m = a transforms to itself"),
        }
        // Applying twice at the same index restores the state.
        let once = match elementary_transform(&s, 1).unwrap() {
            TransformOutcome::Transformed(next) => next,
            _ => panic!("m = 3 < 10"),
        };
        assert!(once.satisfies_system());
        let twice = match elementary_transform(&once, 1).unwrap() {
            TransformOutcome::Transformed(next) => next,
            _ => panic!("transformable again"),
        };
        assert_eq!(twice, s);
    }

    // -- normalization -------------------------------------------------------

    #[test]
    fn normalization_examples() {
        // Transforming m = 3 gives {5,1,1}; m = 5 ≥ 2a = 4 is then stuck.
        let s = state(2, 3, &[5, 3, 1]);
        assert_eq!(
            normalize(&s).unwrap(),
            NormalizeOutcome::Stuck(state(2, 2, &[5, 1, 1]))
        );

        let ok = state(5, -2, &[5, 3]);
        assert_eq!(normalize(&ok).unwrap(), NormalizeOutcome::Normalized(ok));

        // Immediately stuck: the only oversized m has 2a − m < 0.
        let t = state(1, 2, &[3, 1]);
        assert_eq!(normalize(&t).unwrap(), NormalizeOutcome::Stuck(t));
    }

    // -- audit and descent ----------------------------------------------------

    #[test]
    fn audit_on_a_search_hit() {
        let s = state(5, -2, &[5, 3]);
        let audit = constraint_audit(&s).unwrap();
        assert!(audit.b_negative);
        assert!(audit.a_plus_two_b_nonnegative, "a + 2b = 1");
        assert!(audit.max_mult_exceeds_a_plus_b, "5 > 3");
        assert!(audit.all_hold());
    }

    #[test]
    fn audit_preconditions() {
        assert_eq!(
            constraint_audit(&state(1, 1, &[1, 1])).unwrap_err(),
            NfError::SystemNotSatisfied
        );
        // Satisfies the system but not normalized: transform target.
        let s = state(2, 3, &[5, 3, 1]);
        assert_eq!(constraint_audit(&s).unwrap_err(), NfError::NotNormalized);
    }

    #[test]
    fn audit_can_report_failures() {
        // (3, −2, {1,1}): ∑m = 2 = 9−4−3, ∑m² = 2 = 27−24−1; normalized;
        // but a + 2b = −1 and max m = 1 = a + b.
        let s = state(3, -2, &[1, 1]);
        assert!(s.satisfies_system());
        let audit = constraint_audit(&s).unwrap();
        assert!(audit.b_negative);
        assert!(!audit.a_plus_two_b_nonnegative);
        assert!(!audit.max_mult_exceeds_a_plus_b);
        assert!(!audit.all_hold());
        assert_eq!(descent_step(&s).unwrap_err(), NfError::ConstraintsNotMet);
    }

    #[test]
    fn descent_decreases_a() {
        let s = state(5, -2, &[5, 3]);
        let report = descent_step(&s).unwrap();
        assert_eq!(report.a_next, 2 * 5 + 2 * (-2) - 5);
        assert_eq!(report.a_next, 1);
        assert_eq!(report.b_next, 5 - 5 + 2);
        assert!(!report.degenerate);
    }

    #[test]
    fn degenerate_descent_is_flagged() {
        // max m = a with a + 2b = 0 gives a' = 0. No such state satisfies
        // the defining equations, but the audit predicates hold and the
        // scalar step still applies.
        let s = state(2, -1, &[2]);
        assert!(!s.satisfies_system());
        let report = descent_step(&s).unwrap();
        assert_eq!(report.a_next, 0);
        assert_eq!(report.b_next, 1);
        assert!(report.degenerate);
    }

    // -- search -----------------------------------------------------------

    #[test]
    fn search_is_empty_below_a_five() {
        let mut bounds = SearchBounds::for_a_max(4);
        bounds.b_abs_max = 10;
        bounds.n_max = 30;
        let report = exhaustive_search_sequential(&bounds);
        assert!(report.hits.is_empty(), "hits: {:?}", report.hits);
        assert!(report.candidates > 0, "plenty of multisets meet the linear equation");
    }

    #[test]
    fn search_at_a_max_one_is_empty() {
        let report = exhaustive_search_sequential(&SearchBounds::for_a_max(1));
        assert!(report.hits.is_empty());
    }

    #[test]
    fn search_with_no_slots_is_empty() {
        let mut bounds = SearchBounds::for_a_max(6);
        bounds.n_max = 0;
        assert!(!bounds.complete_for_n());
        let report = exhaustive_search_sequential(&bounds);
        assert!(report.hits.is_empty());
    }

    #[test]
    fn first_hit_appears_at_a_five() {
        let mut bounds = SearchBounds::for_a_max(5);
        bounds.b_abs_max = 10;
        bounds.n_max = bounds.derived_n_cap();
        let report = exhaustive_search_sequential(&bounds);
        assert_eq!(report.hits.len(), 1);
        let hit = &report.hits[0];
        assert_eq!(hit.state, state(5, -2, &[5, 3]));
        assert!(hit.audit.all_hold());
        let descent = hit.descent.expect("audit holds");
        assert_eq!(descent.a_next, 1);
        assert!(!descent.degenerate);
    }

    #[test]
    fn search_report_is_reproducible() {
        let bounds = SearchBounds::for_a_max(6);
        let first = exhaustive_search_sequential(&bounds);
        let second = exhaustive_search_sequential(&bounds);
        assert_eq!(first, second);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_agree() {
        let bounds = SearchBounds::for_a_max(7);
        assert_eq!(
            exhaustive_search(&bounds),
            exhaustive_search_sequential(&bounds)
        );
    }

    #[test]
    fn every_hit_passes_the_full_pipeline() {
        let mut bounds = SearchBounds::for_a_max(8);
        bounds.b_abs_max = 16;
        bounds.n_max = bounds.derived_n_cap();
        let report = exhaustive_search_sequential(&bounds);
        assert!(!report.hits.is_empty(), "hits exist from a = 5 on");
        for hit in &report.hits {
            assert!(hit.state.satisfies_system());
            assert!(hit.state.is_normalized());
            assert!(hit.audit.b_negative, "{}", hit.state);
            assert!(hit.audit.all_hold(), "{}", hit.state);
            let descent = hit.descent.expect("audit holds");
            assert!(descent.a_next < hit.state.a(), "{}", hit.state);
            assert!(descent.a_next >= 0);
            // Multisets are canonical (non-increasing).
            let m = hit.state.mults();
            assert!(m.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn transform_preserves_the_system_on_search_hits() {
        let bounds = SearchBounds::for_a_max(7);
        let report = exhaustive_search_sequential(&bounds);
        for hit in &report.hits {
            for index in 0..hit.state.mults().len() {
                if let TransformOutcome::Transformed(next) =
                    elementary_transform(&hit.state, index).unwrap()
                {
                    assert!(next.satisfies_system(), "{} at {index}", hit.state);
                }
            }
        }
    }
}
