//! Dual-graph rewriting against the fixtures: step-by-step script
//! bookkeeping, fiber solving cross-checked by hand, guard rails on the
//! fiber interface, and randomized script inversion.

mod common;

use common::fixture_path;
use delpezzo::dualgraph::{run_script, FiberResolution, Graph, GraphError, Move};
use delpezzo::io;
use delpezzo::rational::{rat_int, Rat};
use num::Zero;
use rand::Rng;

#[test]
fn script_walks_the_expected_vertex_counts() {
    let frame = io::load_graph(&fixture_path("vero_d3.json")).expect("fixture");
    let script = io::load_script(&fixture_path("vero_d3_script.json")).expect("fixture");
    assert_eq!(frame.graph.vertex_count(), 1);
    assert_eq!(frame.graph.weight("S"), Some(3));

    let expected_counts = [2, 3, 4, 5, 4, 5, 4, 3, 2, 1];
    assert_eq!(script.moves.len(), expected_counts.len());
    let mut current = frame.graph.clone();
    for (mv, expected) in script.moves.iter().zip(expected_counts) {
        current = run_script(&current, std::slice::from_ref(mv)).expect("legal move");
        assert_eq!(current.vertex_count(), expected, "after {:?}", mv);
    }
    assert!(current.is_isomorphic(&frame.graph), "the script returns to the frame");
    let (name, weight) = current.vertices().next().expect("one vertex");
    assert_eq!((name, weight), ("T", 3), "the surviving curve is the transported one");
}

/// Pairing of two fiber components read directly off the graph:
/// the weight on the diagonal, 1 for an edge, 0 otherwise.
fn pairing(graph: &Graph, a: &str, b: &str) -> Rat {
    if a == b {
        rat_int(graph.weight(a).expect("vertex"))
    } else if graph.has_edge(a, b) {
        rat_int(1)
    } else {
        rat_int(0)
    }
}

#[test]
fn fiber_solutions_annihilate_every_component() {
    let fixture = io::load_graph(&fixture_path("ex11_graph.json")).expect("fixture");
    let section = fixture.section.as_deref().expect("section");
    for fiber in &fixture.fibers {
        let resolved = fixture
            .graph
            .fiber_multiplicities(fiber, section)
            .expect("well-posed");
        let FiberResolution::Solved {
            multiplicities,
            all_integral,
        } = &resolved
        else {
            panic!("fiber must solve: {:?}", resolved);
        };
        assert!(all_integral);
        // Independent check: the weighted fiber class pairs to zero with
        // every component of the fiber.
        for a in fiber {
            let mut total = Rat::zero();
            for b in fiber {
                total += multiplicities[b].clone() * pairing(&fixture.graph, a, b);
            }
            assert!(total.is_zero(), "fiber class must be orthogonal to {}", a);
        }
    }
}

#[test]
fn comb_fiber_has_unit_multiplicities() {
    let fixture = io::load_graph(&fixture_path("ex11_graph.json")).expect("fixture");
    let section = fixture.section.as_deref().expect("section");
    let comb = fixture
        .fibers
        .iter()
        .find(|f| f.contains(&"E1".to_string()))
        .expect("the comb fiber");
    assert_eq!(comb.len(), 6);
    let resolved = fixture
        .graph
        .fiber_multiplicities(comb, section)
        .expect("well-posed");
    match resolved {
        FiberResolution::Solved {
            multiplicities,
            all_integral,
        } => {
            assert!(all_integral);
            for (name, value) in &multiplicities {
                assert_eq!(value, &rat_int(1), "multiplicity of {}", name);
            }
        }
        FiberResolution::Inconsistent { reason } => panic!("unsolved: {}", reason),
    }
}

#[test]
fn degenerate_fibers_are_kernel_directions_not_definite() {
    let fixture = io::load_graph(&fixture_path("ex11_graph.json")).expect("fixture");
    for fiber in &fixture.fibers {
        assert!(
            !fixture
                .graph
                .is_negative_definite_on(fiber)
                .expect("components exist"),
            "a full fiber carries a kernel vector"
        );
        assert!(
            fixture.graph.zariski_fiber_check(fiber).expect("components"),
            "every fiber component is negative"
        );
    }
    let chain: Vec<String> = ["E2", "E3", "E4"].map(String::from).to_vec();
    assert!(fixture.graph.is_negative_definite_on(&chain).expect("chain"));
    let single: Vec<String> = vec!["E3".to_string()];
    assert!(fixture.graph.is_negative_definite_on(&single).expect("vertex"));
}

#[test]
fn fiber_interface_guards_malformed_requests() {
    let fixture = io::load_graph(&fixture_path("ex11_graph.json")).expect("fixture");
    let graph = &fixture.graph;
    let section = fixture.section.as_deref().expect("section");

    // The section inside the fiber.
    let with_section: Vec<String> = ["SW", "E2"].map(String::from).to_vec();
    assert!(matches!(
        graph.fiber_multiplicities(&with_section, section),
        Err(GraphError::SectionInFiber { .. })
    ));
    // Too small.
    let tiny: Vec<String> = vec!["E2".to_string()];
    assert!(matches!(
        graph.fiber_multiplicities(&tiny, section),
        Err(GraphError::FiberTooSmall { size: 1 })
    ));
    // The section must touch exactly one component: D0-E3 doesn't touch
    // SW at all.
    let detached: Vec<String> = ["E3", "D0"].map(String::from).to_vec();
    assert!(matches!(
        graph.fiber_multiplicities(&detached, section),
        Err(GraphError::SectionAdjacency { adjacent: 0 })
    ));
    // Unknown vertices are reported as such.
    let ghost: Vec<String> = ["E2", "Q9"].map(String::from).to_vec();
    assert!(graph.fiber_multiplicities(&ghost, section).is_err());
}

#[test]
fn zariski_check_rejects_nonnegative_components() {
    let graph = Graph::new(
        vec![("A".to_string(), 0), ("B".to_string(), -2)],
        vec![("A".to_string(), "B".to_string())],
    )
    .expect("well-formed");
    let fiber: Vec<String> = ["A", "B"].map(String::from).to_vec();
    assert!(!graph.zariski_fiber_check(&fiber).expect("components"));
}

#[test]
fn random_blowup_scripts_invert_exactly() {
    let mut rng = common::seeded_rng(0x9a4f);
    for _ in 0..200 {
        let start = random_graph(&mut rng);
        let mut forward: Vec<Move> = Vec::new();
        let mut current = start.clone();
        let steps = rng.gen_range(1..=5);
        for step in 0..steps {
            let name = format!("t{}", step);
            let vertices: Vec<String> = current.vertices().map(|(n, _)| n.to_string()).collect();
            let edges: Vec<(String, String)> = current
                .edges()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            let mv = if rng.gen_bool(0.5) || edges.is_empty() {
                Move::BlowupAtVertex {
                    vertex: vertices[rng.gen_range(0..vertices.len())].clone(),
                    name: Some(name),
                }
            } else {
                let (a, b) = edges[rng.gen_range(0..edges.len())].clone();
                Move::BlowupAtEdge {
                    a,
                    b,
                    name: Some(name),
                }
            };
            current = run_script(&current, std::slice::from_ref(&mv)).expect("legal blowup");
            forward.push(mv);
        }
        // Contract the created vertices in reverse creation order.
        for step in (0..steps).rev() {
            current = current.blowdown(&format!("t{}", step)).expect("legal blowdown");
        }
        assert_eq!(current.vertex_count(), start.vertex_count());
        for (name, weight) in start.vertices() {
            assert_eq!(current.weight(name), Some(weight), "weight of {}", name);
        }
        assert!(current.is_isomorphic(&start));
    }
}

#[test]
fn isomorphism_is_name_blind_but_weight_and_shape_sensitive() {
    let fixture = io::load_graph(&fixture_path("ex11_graph.json")).expect("fixture");
    let graph = &fixture.graph;

    // Same graph under fresh labels.
    let rename = |n: &str| format!("node_{}", n);
    let relabeled = Graph::new(
        graph.vertices().map(|(n, w)| (rename(n), w)).collect(),
        graph
            .edges()
            .map(|(a, b)| (rename(a), rename(b)))
            .collect(),
    )
    .expect("well-formed");
    assert!(graph.is_isomorphic(&relabeled));

    // One weight off.
    let skewed = Graph::new(
        graph
            .vertices()
            .map(|(n, w)| (n.to_string(), if n == "E3" { w - 1 } else { w }))
            .collect(),
        graph
            .edges()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    )
    .expect("well-formed");
    assert!(!graph.is_isomorphic(&skewed));

    // One edge missing.
    let sparser = Graph::new(
        graph.vertices().map(|(n, w)| (n.to_string(), w)).collect(),
        graph
            .edges()
            .filter(|(a, b)| !(*a == "E2" && *b == "E3" || *a == "E3" && *b == "E2"))
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    )
    .expect("well-formed");
    assert!(!graph.is_isomorphic(&sparser));
}

fn random_graph(rng: &mut rand::rngs::StdRng) -> Graph {
    let count = rng.gen_range(2..=6);
    let vertices: Vec<(String, i64)> = (0..count)
        .map(|i| (format!("v{}", i), rng.gen_range(-6..=2)))
        .collect();
    let mut edges: Vec<(String, String)> = Vec::new();
    for i in 1..count {
        let parent = rng.gen_range(0..i);
        edges.push((format!("v{}", parent), format!("v{}", i)));
    }
    Graph::new(vertices, edges).expect("tree graph")
}
