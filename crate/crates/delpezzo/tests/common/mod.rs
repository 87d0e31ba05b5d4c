//! Helpers shared by the integration test binaries: fixture paths,
//! seeded randomness, and the four randomized property suites. The
//! suites live here so that `property_suites.rs` can run each one on
//! its own and `acceptance.rs` can run them together; each returns the
//! number of cases it executed so callers can enforce minimum volume.
#![allow(dead_code)]

use std::path::PathBuf;

use delpezzo::dualgraph::Graph;
use delpezzo::groebner::{IdealPresentation, MonomialOrder, DEFAULT_PAIR_BUDGET};
use delpezzo::nfdescent::{
    elementary_transform, exhaustive_search_sequential, NfState, SearchBounds, TransformOutcome,
};
use delpezzo::picard::{Lattice, LatticeClass};
use delpezzo::poly::Poly;
use delpezzo::rational::{rat, rat_int, Rat};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Absolute path of a shipped fixture file.
pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn seeded_rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn random_class(rng: &mut StdRng, lattice: &Lattice) -> LatticeClass {
    let coeffs: Vec<i64> = (0..lattice.dim()).map(|_| rng.gen_range(-5..=5)).collect();
    LatticeClass::from_ints(&coeffs)
}

fn random_rat(rng: &mut StdRng) -> Rat {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=4))
}

/// Pairing properties on random classes: bilinearity and symmetry of
/// the intersection form, and Weyl reflections preserving the pairing,
/// fixing the canonical class, and squaring to the identity.
pub fn run_lattice_suite(cases: usize, seed: u64) -> usize {
    let mut rng = seeded_rng(seed);
    let mut executed = 0;
    let lattices: Vec<Lattice> = (2..=6).map(Lattice::new).collect();
    let roots_by_lattice: Vec<Vec<LatticeClass>> = lattices
        .iter()
        .map(|l| l.roots().expect("root enumeration"))
        .collect();
    for _ in 0..cases {
        let which = rng.gen_range(0..lattices.len());
        let lattice = lattices[which];
        let x = random_class(&mut rng, &lattice);
        let y = random_class(&mut rng, &lattice);
        let z = random_class(&mut rng, &lattice);
        let alpha = random_rat(&mut rng);

        // Bilinearity: (αx + y)·z = α(x·z) + y(z), checked exactly.
        let left = lattice
            .intersect(&x.scaled(&alpha).add(&y), &z)
            .expect("pairing");
        let right = alpha.clone() * lattice.intersect(&x, &z).expect("pairing")
            + lattice.intersect(&y, &z).expect("pairing");
        assert_eq!(left, right, "bilinearity failed on n={}", lattice.n());

        // Symmetry.
        assert_eq!(
            lattice.intersect(&x, &y).expect("pairing"),
            lattice.intersect(&y, &x).expect("pairing"),
            "symmetry failed on n={}",
            lattice.n()
        );

        // Weyl reflection in a random root.
        let roots = &roots_by_lattice[which];
        assert!(!roots.is_empty(), "n={} should have roots", lattice.n());
        let root = &roots[rng.gen_range(0..roots.len())];
        let sx = lattice.reflect(root, &x).expect("reflect");
        let sy = lattice.reflect(root, &y).expect("reflect");
        assert_eq!(
            lattice.intersect(&sx, &sy).expect("pairing"),
            lattice.intersect(&x, &y).expect("pairing"),
            "reflection broke the pairing on n={}",
            lattice.n()
        );
        let k = lattice.canonical_class();
        assert_eq!(
            lattice.reflect(root, &k).expect("reflect"),
            k,
            "reflection moved K on n={}",
            lattice.n()
        );
        assert_eq!(
            lattice.reflect(root, &sx).expect("reflect"),
            x,
            "reflection is not an involution on n={}",
            lattice.n()
        );
        executed += 1;
    }
    executed
}

/// Pool of system-satisfying states: the two hand-checked ones plus
/// everything an exhaustive box search finds.
fn transform_state_pool() -> Vec<NfState> {
    let mut pool = vec![
        NfState::new(1, 2, vec![3, 1]).expect("valid state"),
        NfState::new(2, 3, vec![5, 3, 1]).expect("valid state"),
    ];
    let report = exhaustive_search_sequential(&SearchBounds::for_a_max(8));
    pool.extend(report.hits.into_iter().map(|h| h.state));
    for state in &pool {
        assert!(state.satisfies_system());
    }
    pool
}

/// Elementary-transform properties: the result still satisfies both
/// equations, a is unchanged, and a second transform at the same index
/// undoes the first. Random walks from the pool diversify the inputs.
pub fn run_transform_suite(cases: usize, seed: u64) -> usize {
    let mut rng = seeded_rng(seed);
    let pool = transform_state_pool();
    let mut executed = 0;
    while executed < cases {
        let mut state = pool[rng.gen_range(0..pool.len())].clone();
        // A short random walk keeps the case pool from collapsing onto
        // the handful of search hits.
        for _ in 0..rng.gen_range(0..4) {
            let index = rng.gen_range(0..state.mults().len());
            if let TransformOutcome::Transformed(next) =
                elementary_transform(&state, index).expect("pool states satisfy the system")
            {
                state = next;
            }
        }
        let index = rng.gen_range(0..state.mults().len());
        match elementary_transform(&state, index).expect("walk preserves the system") {
            TransformOutcome::Transformed(next) => {
                assert!(next.satisfies_system(), "transform left the system: {}", next);
                assert_eq!(next.a(), state.a(), "transform changed a");
                let back = match elementary_transform(&next, index).expect("system holds") {
                    TransformOutcome::Transformed(back) => back,
                    TransformOutcome::NonGeometric { would_be } => panic!(
                        "inverse transform refused (would be {}) from {}",
                        would_be, next
                    ),
                };
                assert_eq!(back, state, "transform twice is not the identity");
            }
            TransformOutcome::NonGeometric { would_be } => {
                assert_eq!(would_be, 2 * state.a() - state.mults()[index]);
                assert!(would_be <= 0, "refusal must mean a nonpositive value");
            }
        }
        executed += 1;
    }
    executed
}

fn random_poly(rng: &mut StdRng, nvars: usize, max_degree: u32) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..rng.gen_range(1..=4) {
        let mut expts = vec![0u32; nvars];
        let mut budget = max_degree;
        for e in expts.iter_mut() {
            let step = rng.gen_range(0..=budget);
            *e = step;
            budget -= step;
        }
        let coeff = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        p = p.add(&Poly::monomial(nvars, expts, coeff));
    }
    p
}

/// Normal-form properties against random small ideals: idempotence,
/// membership of p − NF(p), and linearity of the canonical remainder.
pub fn run_groebner_suite(cases: usize, seed: u64) -> usize {
    let mut rng = seeded_rng(seed);
    let mut executed = 0;
    while executed < cases {
        let nvars = rng.gen_range(2..=3);
        let gens: Vec<Poly> = (0..rng.gen_range(1..=2))
            .map(|_| random_poly(&mut rng, nvars, 2))
            .collect();
        let order = if rng.gen_bool(0.5) {
            MonomialOrder::DegRevLex
        } else {
            MonomialOrder::Lex
        };
        let ideal = IdealPresentation::new(gens, order, DEFAULT_PAIR_BUDGET)
            .expect("small random ideals stay within budget");
        let p = random_poly(&mut rng, nvars, 3);
        let q = random_poly(&mut rng, nvars, 3);

        let nf_p = ideal.normal_form(&p);
        assert_eq!(ideal.normal_form(&nf_p), nf_p, "normal form not idempotent");
        assert!(
            ideal.contains(&p.sub(&nf_p)),
            "p minus its normal form must lie in the ideal"
        );
        let nf_q = ideal.normal_form(&q);
        assert_eq!(
            ideal.normal_form(&p.add(&q)),
            nf_p.add(&nf_q),
            "canonical remainder must be additive"
        );
        let scale = random_rat(&mut rng);
        assert_eq!(
            ideal.normal_form(&p.scale(&scale)),
            nf_p.scale(&scale),
            "canonical remainder must respect scaling"
        );
        executed += 1;
    }
    executed
}

fn random_graph(rng: &mut StdRng) -> Graph {
    let count = rng.gen_range(3..=7);
    let vertices: Vec<(String, i64)> = (0..count)
        .map(|i| (format!("v{}", i), rng.gen_range(-5..=0)))
        .collect();
    let mut edges: Vec<(String, String)> = Vec::new();
    // A random tree keeps the graph connected and simple.
    for i in 1..count {
        let parent = rng.gen_range(0..i);
        edges.push((format!("v{}", parent), format!("v{}", i)));
    }
    Graph::new(vertices, edges).expect("tree graph is always valid")
}

fn assert_weights_match(before: &Graph, after: &Graph) {
    assert_eq!(before.vertex_count(), after.vertex_count());
    assert_eq!(before.edge_count(), after.edge_count());
    for (name, weight) in before.vertices() {
        assert_eq!(
            after.weight(name),
            Some(weight),
            "weight of {} not restored",
            name
        );
    }
    assert!(before.is_isomorphic(after), "roundtrip graph not isomorphic");
}

/// Blowing up (at a vertex or at an edge) and contracting the new
/// (-1)-vertex must restore the original weighted graph exactly.
pub fn run_graph_suite(cases: usize, seed: u64) -> usize {
    let mut rng = seeded_rng(seed);
    let mut executed = 0;
    while executed < cases {
        let graph = random_graph(&mut rng);
        let vertex_names: Vec<String> = graph.vertices().map(|(n, _)| n.to_string()).collect();
        let edge_pairs: Vec<(String, String)> = graph
            .edges()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        if rng.gen_bool(0.5) {
            let center = &vertex_names[rng.gen_range(0..vertex_names.len())];
            let (blown, new_name) = graph.blowup_at_vertex(center, None).expect("blowup");
            assert_eq!(blown.weight(&new_name), Some(-1));
            assert_eq!(
                blown.weight(center),
                graph.weight(center).map(|w| w - 1),
                "center weight must drop by one"
            );
            let back = blown.blowdown(&new_name).expect("blowdown");
            assert_weights_match(&graph, &back);
        } else {
            let (a, b) = &edge_pairs[rng.gen_range(0..edge_pairs.len())];
            let (blown, new_name) = graph.blowup_at_edge(a, b, None).expect("blowup");
            assert_eq!(blown.weight(&new_name), Some(-1));
            assert!(!blown.has_edge(a, b), "blown-up edge must be subdivided");
            assert!(blown.has_edge(a, &new_name) && blown.has_edge(b, &new_name));
            let back = blown.blowdown(&new_name).expect("blowdown");
            assert_weights_match(&graph, &back);
        }
        executed += 1;
    }
    executed
}

/// Exact rational helpers re-exported for the test binaries.
pub fn exact(n: i64) -> Rat {
    rat_int(n)
}
