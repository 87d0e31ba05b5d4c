//! Independent cross-checks of the lattice enumerations. For small n the
//! classes are recomputed by scanning a coefficient box wide enough to
//! contain every solution (Cauchy–Schwarz on the defining equations
//! bounds every coefficient well inside ±3), so the fast enumerator and
//! the brute-force scan must agree exactly. For n = 6 the classical
//! incidence facts are checked directly.

use std::collections::BTreeSet;

use delpezzo::picard::{Lattice, LatticeClass};
use delpezzo::rational::{rat_int, Rat};

/// Every class whose coefficients all lie in [-3, 3] and which satisfies
/// d² = square and d·K = pairing.
fn brute_force_classes(lattice: &Lattice, square: i64, pairing: i64) -> BTreeSet<Vec<Rat>> {
    let dim = lattice.dim();
    let k = lattice.canonical_class();
    let mut found = BTreeSet::new();
    let mut coeffs = vec![-3i64; dim];
    loop {
        let class = LatticeClass::from_ints(&coeffs);
        let self_int = lattice.self_intersection(&class).expect("well-formed");
        let with_k = lattice.intersect(&class, &k).expect("well-formed");
        if self_int == rat_int(square) && with_k == rat_int(pairing) {
            found.insert(class.coeffs().to_vec());
        }
        // Odometer step through the box.
        let mut pos = 0;
        loop {
            if pos == dim {
                return found;
            }
            coeffs[pos] += 1;
            if coeffs[pos] <= 3 {
                break;
            }
            coeffs[pos] = -3;
            pos += 1;
        }
    }
}

fn as_set(classes: &[LatticeClass]) -> BTreeSet<Vec<Rat>> {
    classes.iter().map(|c| c.coeffs().to_vec()).collect()
}

#[test]
fn minus_one_classes_match_brute_force_up_to_n4() {
    for n in 0..=4 {
        let lattice = Lattice::new(n);
        let enumerated = as_set(&lattice.minus_one_classes().expect("enumeration"));
        let scanned = brute_force_classes(&lattice, -1, -1);
        assert_eq!(enumerated, scanned, "(-1)-classes disagree at n={}", n);
    }
}

#[test]
fn conic_classes_match_brute_force_up_to_n4() {
    for n in 0..=4 {
        let lattice = Lattice::new(n);
        let enumerated = as_set(&lattice.conic_classes().expect("enumeration"));
        let scanned = brute_force_classes(&lattice, 0, -2);
        assert_eq!(enumerated, scanned, "conic classes disagree at n={}", n);
    }
}

#[test]
fn roots_match_brute_force_up_to_n4() {
    for n in 0..=4 {
        let lattice = Lattice::new(n);
        let enumerated = as_set(&lattice.roots().expect("enumeration"));
        let scanned = brute_force_classes(&lattice, -2, 0);
        assert_eq!(enumerated, scanned, "roots disagree at n={}", n);
    }
}

#[test]
fn membership_predicates_agree_with_enumeration_at_n4() {
    let lattice = Lattice::new(4);
    let minus_ones = as_set(&lattice.minus_one_classes().expect("enumeration"));
    let roots = as_set(&lattice.roots().expect("enumeration"));
    let dim = lattice.dim();
    let mut coeffs = vec![-3i64; dim];
    loop {
        let class = LatticeClass::from_ints(&coeffs);
        let key = class.coeffs().to_vec();
        assert_eq!(
            lattice.is_minus_one_class(&class).expect("well-formed"),
            minus_ones.contains(&key),
            "(-1)-membership wrong at {:?}",
            coeffs
        );
        assert_eq!(
            lattice.is_root(&class).expect("well-formed"),
            roots.contains(&key),
            "root membership wrong at {:?}",
            coeffs
        );
        let mut pos = 0;
        loop {
            if pos == dim {
                return;
            }
            coeffs[pos] += 1;
            if coeffs[pos] <= 3 {
                break;
            }
            coeffs[pos] = -3;
            pos += 1;
        }
    }
}

#[test]
fn frozen_counts_for_all_ranks() {
    let minus_one_counts = [0, 1, 3, 6, 10, 16, 27, 56, 240];
    for (n, expected) in minus_one_counts.into_iter().enumerate() {
        let lattice = Lattice::new(n);
        assert_eq!(
            lattice.minus_one_classes().expect("enumeration").len(),
            expected,
            "(-1)-class count at n={}",
            n
        );
    }
    assert_eq!(Lattice::new(6).conic_classes().expect("enumeration").len(), 27);
    assert_eq!(Lattice::new(6).roots().expect("enumeration").len(), 72);
}

#[test]
fn twenty_seven_lines_meet_ten_others_each() {
    let lattice = Lattice::new(6);
    let lines = lattice.minus_one_classes().expect("enumeration");
    assert_eq!(lines.len(), 27);
    for a in &lines {
        let mut meets = 0;
        for b in &lines {
            if a == b {
                continue;
            }
            let pairing = lattice.intersect(a, b).expect("pairing");
            assert!(
                pairing == rat_int(0) || pairing == rat_int(1),
                "two distinct lines can only be disjoint or meet once, got {}",
                pairing
            );
            if pairing == rat_int(1) {
                meets += 1;
            }
        }
        assert_eq!(meets, 10, "every line must meet exactly ten others");
    }
}

#[test]
fn weyl_reflections_permute_the_lines() {
    let lattice = Lattice::new(6);
    let lines = as_set(&lattice.minus_one_classes().expect("enumeration"));
    let roots = lattice.roots().expect("enumeration");
    assert_eq!(roots.len(), 72);
    for root in &roots {
        for line in &lines {
            let class = LatticeClass::new(line.clone());
            let image = lattice.reflect(root, &class).expect("reflect");
            assert!(
                lines.contains(&image.coeffs().to_vec()),
                "reflection must map lines to lines"
            );
        }
    }
}

#[test]
fn anticanonical_degree_of_every_line_is_one() {
    for n in 1..=6 {
        let lattice = Lattice::new(n);
        let minus_k = lattice.minus_canonical();
        for line in lattice.minus_one_classes().expect("enumeration") {
            assert_eq!(
                lattice.intersect(&line, &minus_k).expect("pairing"),
                rat_int(1),
                "a (-1)-class has anticanonical degree one"
            );
        }
    }
}
