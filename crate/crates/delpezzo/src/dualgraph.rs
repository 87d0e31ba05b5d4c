//! Weighted dual graphs of curve configurations: blowup/blowdown
//! rewriting with scripted sequences, weighted graph isomorphism,
//! negative-definiteness of sub-configurations, and exact fiber
//! multiplicities relative to a section.
//!
//! Graphs are simple (no loops, no multi-edges); a blowdown whose two
//! neighbors are already adjacent would create a double edge and is
//! rejected rather than silently merged.

use crate::matrix::QMatrix;
use crate::rational::Rat;
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Errors from graph construction and rewriting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    DuplicateVertex { name: String },
    MissingVertex { name: String },
    MissingEdge { a: String, b: String },
    LoopEdge { name: String },
    DuplicateEdge { a: String, b: String },
    NameInUse { name: String },
    /// Blowdown needs self-intersection -1.
    NotContractible { name: String, weight: i64 },
    /// Blowdown keeps the configuration simple normal crossing only up
    /// to valence 2.
    TooManyNeighbors { name: String, valence: usize },
    /// Contracting here would join two already-adjacent vertices.
    WouldCreateMultiEdge { a: String, b: String },
    SectionInFiber { name: String },
    /// The section must touch the fiber in exactly one vertex.
    SectionAdjacency { adjacent: usize },
    FiberTooSmall { size: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::DuplicateVertex { name } => write!(f, "duplicate vertex {name:?}"),
            GraphError::MissingVertex { name } => write!(f, "no vertex named {name:?}"),
            GraphError::MissingEdge { a, b } => write!(f, "no edge between {a:?} and {b:?}"),
            GraphError::LoopEdge { name } => write!(f, "loop edge at {name:?}"),
            GraphError::DuplicateEdge { a, b } => {
                write!(f, "edge between {a:?} and {b:?} listed twice")
            }
            GraphError::NameInUse { name } => write!(f, "vertex name {name:?} already in use"),
            GraphError::NotContractible { name, weight } => {
                write!(f, "vertex {name:?} has weight {weight}, need -1 to contract")
            }
            GraphError::TooManyNeighbors { name, valence } => {
                write!(f, "vertex {name:?} has {valence} neighbors, at most 2 allowed")
            }
            GraphError::WouldCreateMultiEdge { a, b } => {
                write!(f, "contraction would doubly join {a:?} and {b:?}")
            }
            GraphError::SectionInFiber { name } => {
                write!(f, "section {name:?} listed among the fiber vertices")
            }
            GraphError::SectionAdjacency { adjacent } => {
                write!(f, "section touches {adjacent} fiber vertices, need exactly 1")
            }
            GraphError::FiberTooSmall { size } => {
                write!(f, "fiber needs at least 2 vertices, got {size}")
            }
        }
    }
}

impl std::error::Error for GraphError {}

/// A vertex-weighted simple graph; weights are self-intersections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    weights: BTreeMap<String, i64>,
    /// Normalized: each pair stored with the lexicographically smaller
    /// name first.
    edges: BTreeSet<(String, String)>,
}

fn norm_edge(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl Graph {
    pub fn new(
        vertices: Vec<(String, i64)>,
        edges: Vec<(String, String)>,
    ) -> Result<Graph, GraphError> {
        let mut weights = BTreeMap::new();
        for (name, w) in vertices {
            if weights.insert(name.clone(), w).is_some() {
                return Err(GraphError::DuplicateVertex { name });
            }
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::LoopEdge { name: a });
            }
            for end in [&a, &b] {
                if !weights.contains_key(end.as_str()) {
                    return Err(GraphError::MissingVertex { name: end.clone() });
                }
            }
            if !set.insert(norm_edge(&a, &b)) {
                return Err(GraphError::DuplicateEdge { a, b });
            }
        }
        Ok(Graph {
            weights,
            edges: set,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, name: &str) -> Option<i64> {
        self.weights.get(name).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (&str, i64)> {
        self.weights.iter().map(|(n, w)| (n.as_str(), *w))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        self.edges.contains(&norm_edge(a, b))
    }

    pub fn neighbors(&self, name: &str) -> Vec<String> {
        let mut out = Vec::new();
        for (a, b) in &self.edges {
            if a == name {
                out.push(b.clone());
            } else if b == name {
                out.push(a.clone());
            }
        }
        out
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.values().sum()
    }

    fn require_vertex(&self, name: &str) -> Result<(), GraphError> {
        if self.weights.contains_key(name) {
            Ok(())
        } else {
            Err(GraphError::MissingVertex {
                name: name.to_string(),
            })
        }
    }

    fn fresh_name(&self) -> String {
        for k in 1.. {
            let candidate = format!("b{k}");
            if !self.weights.contains_key(&candidate) {
                return candidate;
            }
        }
        unreachable!()
    }

    fn claim_name(&self, requested: Option<&str>) -> Result<String, GraphError> {
        match requested {
            Some(name) => {
                if self.weights.contains_key(name) {
                    Err(GraphError::NameInUse {
                        name: name.to_string(),
                    })
                } else {
                    Ok(name.to_string())
                }
            }
            None => Ok(self.fresh_name()),
        }
    }

    /// Blow up a point on the curve of `vertex`: its weight drops by 1
    /// and a new (-1)-vertex hangs off it. Returns the new graph and the
    /// created vertex's name.
    pub fn blowup_at_vertex(
        &self,
        vertex: &str,
        new_name: Option<&str>,
    ) -> Result<(Graph, String), GraphError> {
        self.require_vertex(vertex)?;
        let name = self.claim_name(new_name)?;
        let mut g = self.clone();
        *g.weights.get_mut(vertex).unwrap() -= 1;
        g.weights.insert(name.clone(), -1);
        g.edges.insert(norm_edge(vertex, &name));
        Ok((g, name))
    }

    /// Blow up the intersection point of two curves: both weights drop
    /// by 1 and the edge is replaced by a path through a new (-1)-vertex.
    pub fn blowup_at_edge(
        &self,
        a: &str,
        b: &str,
        new_name: Option<&str>,
    ) -> Result<(Graph, String), GraphError> {
        self.require_vertex(a)?;
        self.require_vertex(b)?;
        if !self.has_edge(a, b) {
            return Err(GraphError::MissingEdge {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        let name = self.claim_name(new_name)?;
        let mut g = self.clone();
        *g.weights.get_mut(a).unwrap() -= 1;
        *g.weights.get_mut(b).unwrap() -= 1;
        g.edges.remove(&norm_edge(a, b));
        g.edges.insert(norm_edge(a, &name));
        g.edges.insert(norm_edge(b, &name));
        g.weights.insert(name.clone(), -1);
        Ok((g, name))
    }

    /// Contract a (-1)-vertex of valence at most 2. Each neighbor gains
    /// 1; two neighbors become joined (error if they already are).
    pub fn blowdown(&self, vertex: &str) -> Result<Graph, GraphError> {
        self.require_vertex(vertex)?;
        let w = self.weights[vertex];
        if w != -1 {
            return Err(GraphError::NotContractible {
                name: vertex.to_string(),
                weight: w,
            });
        }
        let neighbors = self.neighbors(vertex);
        if neighbors.len() > 2 {
            return Err(GraphError::TooManyNeighbors {
                name: vertex.to_string(),
                valence: neighbors.len(),
            });
        }
        if let [a, b] = neighbors.as_slice() {
            if self.has_edge(a, b) {
                return Err(GraphError::WouldCreateMultiEdge {
                    a: a.clone(),
                    b: b.clone(),
                });
            }
        }
        let mut g = self.clone();
        g.weights.remove(vertex);
        g.edges.retain(|(a, b)| a != vertex && b != vertex);
        for nb in &neighbors {
            *g.weights.get_mut(nb).unwrap() += 1;
        }
        if let [a, b] = neighbors.as_slice() {
            g.edges.insert(norm_edge(a, b));
        }
        Ok(g)
    }

    /// The symmetric matrix with weights on the diagonal and 1 for each
    /// edge, rows/columns ordered by the returned name list.
    pub fn intersection_matrix(&self) -> (Vec<String>, QMatrix) {
        let names: Vec<String> = self.weights.keys().cloned().collect();
        (names.clone(), self.sub_matrix(&names))
    }

    fn sub_matrix(&self, names: &[String]) -> QMatrix {
        let index: BTreeMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let k = names.len();
        let mut m = QMatrix::zero(k, k);
        for (i, name) in names.iter().enumerate() {
            m.set(i, i, Rat::from_integer(self.weights[name].into()));
        }
        for (a, b) in &self.edges {
            if let (Some(&i), Some(&j)) = (index.get(a.as_str()), index.get(b.as_str())) {
                m.set(i, j, Rat::one());
                m.set(j, i, Rat::one());
            }
        }
        m
    }

    /// Negative definiteness of the whole configuration.
    pub fn is_negative_definite(&self) -> bool {
        let (_, m) = self.intersection_matrix();
        m.is_negative_definite()
    }

    /// Negative definiteness of the sub-configuration on `names`.
    pub fn is_negative_definite_on(&self, names: &[String]) -> Result<bool, GraphError> {
        for name in names {
            self.require_vertex(name)?;
        }
        Ok(self.sub_matrix(names).is_negative_definite())
    }

    /// Exact multiplicities of a degenerate fiber: the kernel vector m of
    /// the fiber's intersection matrix (F·C_v = 0 for every fiber vertex
    /// v), normalized so the fiber meets the section once (m = 1 at the
    /// unique section-adjacent fiber vertex). All entries must be
    /// positive; integrality is reported, not required.
    pub fn fiber_multiplicities(
        &self,
        fiber: &[String],
        section: &str,
    ) -> Result<FiberResolution, GraphError> {
        self.require_vertex(section)?;
        let mut seen = BTreeSet::new();
        for name in fiber {
            self.require_vertex(name)?;
            if name == section {
                return Err(GraphError::SectionInFiber { name: name.clone() });
            }
            if !seen.insert(name.clone()) {
                return Err(GraphError::DuplicateVertex { name: name.clone() });
            }
        }
        if fiber.len() < 2 {
            return Err(GraphError::FiberTooSmall { size: fiber.len() });
        }
        let touched: Vec<&String> = fiber
            .iter()
            .filter(|v| self.has_edge(section, v))
            .collect();
        if touched.len() != 1 {
            return Err(GraphError::SectionAdjacency {
                adjacent: touched.len(),
            });
        }
        let anchor = touched[0].clone();

        let kernel = self.sub_matrix(fiber).null_space();
        if kernel.len() != 1 {
            return Ok(FiberResolution::Inconsistent {
                reason: format!(
                    "fiber intersection matrix has kernel of dimension {}, need exactly 1",
                    kernel.len()
                ),
            });
        }
        let vector = &kernel[0];
        let anchor_idx = fiber.iter().position(|v| *v == anchor).unwrap();
        if vector[anchor_idx].is_zero() {
            return Ok(FiberResolution::Inconsistent {
                reason: "kernel vector vanishes at the section-adjacent vertex".to_string(),
            });
        }
        let scale = vector[anchor_idx].clone();
        let scaled: Vec<Rat> = vector.iter().map(|c| c / &scale).collect();
        if scaled.iter().any(|c| !c.is_positive()) {
            return Ok(FiberResolution::Inconsistent {
                reason: "normalized kernel vector has a nonpositive entry".to_string(),
            });
        }
        let all_integral = scaled.iter().all(|c| c.is_integer());
        let multiplicities = fiber.iter().cloned().zip(scaled).collect();
        Ok(FiberResolution::Solved {
            multiplicities,
            all_integral,
        })
    }

    /// Every component of a degenerate fiber (at least two components)
    /// must have negative self-intersection.
    pub fn zariski_fiber_check(&self, fiber: &[String]) -> Result<bool, GraphError> {
        if fiber.len() < 2 {
            return Err(GraphError::FiberTooSmall { size: fiber.len() });
        }
        for name in fiber {
            self.require_vertex(name)?;
        }
        Ok(fiber.iter().all(|name| self.weights[name] < 0))
    }

    /// Weight-respecting graph isomorphism, decided by backtracking with
    /// weight/valence pruning. Intended for small graphs (≤ 12 or so
    /// vertices).
    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        if self.vertex_count() != other.vertex_count()
            || self.edge_count() != other.edge_count()
        {
            return false;
        }
        // Sort both vertex lists by (weight, valence) signature; the
        // multisets must agree.
        let signature = |g: &Graph, name: &str| (g.weights[name], g.neighbors(name).len());
        let mut mine: Vec<String> = self.weights.keys().cloned().collect();
        let mut theirs: Vec<String> = other.weights.keys().cloned().collect();
        mine.sort_by_key(|n| signature(self, n));
        theirs.sort_by_key(|n| signature(other, n));
        let my_sigs: Vec<_> = mine.iter().map(|n| signature(self, n)).collect();
        let their_sigs: Vec<_> = theirs.iter().map(|n| signature(other, n)).collect();
        if my_sigs != their_sigs {
            return false;
        }
        let mut assignment: BTreeMap<String, String> = BTreeMap::new();
        let mut used: BTreeSet<String> = BTreeSet::new();
        self.match_vertices(other, &mine, &theirs, 0, &mut assignment, &mut used)
    }

    fn match_vertices(
        &self,
        other: &Graph,
        mine: &[String],
        theirs: &[String],
        depth: usize,
        assignment: &mut BTreeMap<String, String>,
        used: &mut BTreeSet<String>,
    ) -> bool {
        if depth == mine.len() {
            return true;
        }
        let v = &mine[depth];
        let sig = (self.weights[v], self.neighbors(v).len());
        for candidate in theirs {
            if used.contains(candidate) {
                continue;
            }
            if (other.weights[candidate], other.neighbors(candidate).len()) != sig {
                continue;
            }
            // Adjacency with everything already assigned must agree.
            let consistent = assignment.iter().all(|(mv, ov)| {
                self.has_edge(v, mv) == other.has_edge(candidate, ov)
            });
            if !consistent {
                continue;
            }
            assignment.insert(v.clone(), candidate.clone());
            used.insert(candidate.clone());
            if self.match_vertices(other, mine, theirs, depth + 1, assignment, used) {
                return true;
            }
            assignment.remove(v);
            used.remove(candidate);
        }
        false
    }
}

/// Rational fiber multiplicities, or the reason none exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberResolution {
    Solved {
        multiplicities: BTreeMap<String, Rat>,
        all_integral: bool,
    },
    Inconsistent {
        reason: String,
    },
}

impl FiberResolution {
    pub fn is_solved(&self) -> bool {
        matches!(self, FiberResolution::Solved { .. })
    }
}

/// One rewriting step. Blowups may name the created vertex so later
/// moves can refer to it; otherwise a fresh name is generated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    BlowupAtVertex { vertex: String, name: Option<String> },
    BlowupAtEdge { a: String, b: String, name: Option<String> },
    Blowdown { vertex: String },
}

/// Apply the moves in order, failing on the first illegal one.
pub fn run_script(start: &Graph, script: &[Move]) -> Result<Graph, GraphError> {
    let mut g = start.clone();
    for mv in script {
        g = match mv {
            Move::BlowupAtVertex { vertex, name } => {
                g.blowup_at_vertex(vertex, name.as_deref())?.0
            }
            Move::BlowupAtEdge { a, b, name } => g.blowup_at_edge(a, b, name.as_deref())?.0,
            Move::Blowdown { vertex } => g.blowdown(vertex)?,
        };
    }
    Ok(g)
}

/// Run the script and compare the result with `expected` up to
/// weight-respecting isomorphism.
pub fn verify_sequence(
    start: &Graph,
    script: &[Move],
    expected: &Graph,
) -> Result<bool, GraphError> {
    Ok(run_script(start, script)?.is_isomorphic(expected))
}
