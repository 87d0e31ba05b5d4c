//! JSON fixture loading.
//!
//! All inputs are plain JSON files walked by hand so that shape errors
//! carry the offending path and location. Rational values are written as
//! `"p/q"` strings (or bare integers); floating-point literals are
//! rejected everywhere, since every computation downstream is exact.
//!
//! Five fixture shapes are understood:
//!
//! * **certificate bundles** — an effective decomposition of a target
//!   class, optionally with ε-linear coefficients, plus an optional
//!   pencil section (degenerate members, base-point flags, declared
//!   lines through the base point);
//! * **ring fixtures** — variable names, ideal generators, and a set of
//!   named derivations given by their images on the variables;
//! * **graph fixtures** — a weighted dual graph with an optional section
//!   vertex and fiber vertex-sets;
//! * **script fixtures** — a list of blowup/blowdown moves;
//! * **Makar-Limanov fixtures** — named component sets for several
//!   pencils, with an optional expected common-component list;
//! * **search fixtures** — bounds for the integer search plus the
//!   recorded hit list.

use std::collections::BTreeSet;
use std::error::Error;
use std::fmt;
use std::fs;
use std::path::Path;

use serde_json::Value;

use crate::cylinder::{
    EpsCoeff, MemberComponent, ParamComponent, ParametricCertificate, Pencil,
};
use crate::dualgraph::{Graph, Move};
use crate::lnd::Derivation;
use crate::nfdescent::{NfState, SearchBounds};
use crate::picard::{Lattice, LatticeClass};
use crate::poly::{parse_poly, Poly};
use crate::rational::{parse_rat, Rat};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Failure while reading or interpreting a fixture file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IoError {
    /// The file could not be read.
    Read { path: String, message: String },
    /// The file is not valid JSON.
    Json { path: String, message: String },
    /// The JSON is well-formed but does not have the expected shape, or
    /// the data it carries is rejected by a domain constructor.
    Invalid { path: String, message: String },
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Read { path, message } => write!(f, "{path}: {message}"),
            IoError::Json { path, message } => {
                write!(f, "{path}: invalid JSON: {message}")
            }
            IoError::Invalid { path, message } => write!(f, "{path}: {message}"),
        }
    }
}

impl Error for IoError {}

fn invalid(path: &Path, message: impl Into<String>) -> IoError {
    IoError::Invalid {
        path: path.display().to_string(),
        message: message.into(),
    }
}

// ---------------------------------------------------------------------------
// Value-walking helpers
// ---------------------------------------------------------------------------

fn read_json(path: &Path) -> Result<Value, IoError> {
    let text = fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| IoError::Json {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn as_object<'a>(
    path: &Path,
    value: &'a Value,
    what: &str,
) -> Result<&'a serde_json::Map<String, Value>, IoError> {
    value
        .as_object()
        .ok_or_else(|| invalid(path, format!("{what}: expected an object")))
}

fn as_array<'a>(path: &Path, value: &'a Value, what: &str) -> Result<&'a [Value], IoError> {
    value
        .as_array()
        .map(|a| a.as_slice())
        .ok_or_else(|| invalid(path, format!("{what}: expected an array")))
}

fn as_str<'a>(path: &Path, value: &'a Value, what: &str) -> Result<&'a str, IoError> {
    value
        .as_str()
        .ok_or_else(|| invalid(path, format!("{what}: expected a string")))
}

fn as_int(path: &Path, value: &Value, what: &str) -> Result<i64, IoError> {
    value
        .as_i64()
        .ok_or_else(|| invalid(path, format!("{what}: expected an integer")))
}

fn as_bool(path: &Path, value: &Value, what: &str) -> Result<bool, IoError> {
    value
        .as_bool()
        .ok_or_else(|| invalid(path, format!("{what}: expected a boolean")))
}

fn get<'a>(
    path: &Path,
    obj: &'a serde_json::Map<String, Value>,
    key: &str,
    what: &str,
) -> Result<&'a Value, IoError> {
    obj.get(key)
        .ok_or_else(|| invalid(path, format!("{what}: missing field \"{key}\"")))
}

/// Rational from `"p/q"`, `"n"`, or a bare integer. Floats are rejected:
/// `0.5` must be written `"1/2"`.
fn value_to_rat(path: &Path, value: &Value, what: &str) -> Result<Rat, IoError> {
    match value {
        Value::String(s) => parse_rat(s)
            .map_err(|e| invalid(path, format!("{what}: {e}"))),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rat::from_integer(i.into())),
            None => Err(invalid(
                path,
                format!("{what}: write non-integer rationals as \"p/q\" strings"),
            )),
        },
        _ => Err(invalid(
            path,
            format!("{what}: expected an integer or a \"p/q\" string"),
        )),
    }
}

/// Lattice class from an array of rationals of length n+1.
fn value_to_class(
    path: &Path,
    value: &Value,
    lattice: &Lattice,
    what: &str,
) -> Result<LatticeClass, IoError> {
    let entries = as_array(path, value, what)?;
    if entries.len() != lattice.dim() {
        return Err(invalid(
            path,
            format!(
                "{what}: expected {} coefficients (lattice has n = {}), got {}",
                lattice.dim(),
                lattice.n(),
                entries.len()
            ),
        ));
    }
    let mut coeffs = Vec::with_capacity(entries.len());
    for (i, entry) in entries.iter().enumerate() {
        coeffs.push(value_to_rat(path, entry, &format!("{what}[{i}]"))?);
    }
    Ok(LatticeClass::new(coeffs))
}

fn value_to_coeff(path: &Path, value: &Value, what: &str) -> Result<EpsCoeff, IoError> {
    match value {
        Value::Object(map) => {
            for key in map.keys() {
                if key != "const" && key != "eps" {
                    return Err(invalid(
                        path,
                        format!("{what}: unknown coefficient field \"{key}\""),
                    ));
                }
            }
            let constant = match map.get("const") {
                Some(v) => value_to_rat(path, v, &format!("{what}.const"))?,
                None => Rat::from_integer(0.into()),
            };
            let eps = match map.get("eps") {
                Some(v) => value_to_rat(path, v, &format!("{what}.eps"))?,
                None => Rat::from_integer(0.into()),
            };
            Ok(EpsCoeff { constant, eps })
        }
        _ => Ok(EpsCoeff::exact(value_to_rat(path, value, what)?)),
    }
}

// ---------------------------------------------------------------------------
// Certificate bundles
// ---------------------------------------------------------------------------

/// A certificate fixture: the decomposition family, whether any
/// coefficient actually depends on ε, and the optional pencil section.
#[derive(Debug, Clone)]
pub struct CertificateBundle {
    pub source: Option<String>,
    pub lattice: Lattice,
    pub family: ParametricCertificate,
    /// True when some coefficient has a nonzero ε part.
    pub is_parametric: bool,
    pub pencil: Option<Pencil>,
}

/// Load a certificate bundle.
///
/// Shape:
/// ```json
/// {
///   "source": "optional provenance note",
///   "n": 4,
///   "target": "minus_K",            // or a class array
///   "components": [
///     { "name": "l1p", "class": [1,-1,-1,0,0], "coeff": "3/2" },
///     { "name": "e1",  "class": [0,1,0,0,0],
///       "coeff": { "const": "0", "eps": "1" } }
///   ],
///   "pencil_class": [1,0,0,0,0],    // optional, starts the pencil section
///   "members": [
///     [ { "name": "l1p", "mult": 1 },
///       { "name": "x",   "mult": 2, "class": [0,1,0,0,0] } ]
///   ],
///   "through_base_point": { "l1p": true, "e1": false },
///   "lines_through_p": [[0,1,0,0,0]]   // optional
/// }
/// ```
///
/// Member entries without an explicit `"class"` take the class of the
/// certificate component with the same name.
pub fn load_bundle(path: &Path) -> Result<CertificateBundle, IoError> {
    let root = read_json(path)?;
    let obj = as_object(path, &root, "bundle")?;
    let source = match obj.get("source") {
        Some(v) => Some(as_str(path, v, "source")?.to_string()),
        None => None,
    };
    let n = as_int(path, get(path, obj, "n", "bundle")?, "n")?;
    if n < 0 {
        return Err(invalid(path, "n: must be nonnegative"));
    }
    let lattice = Lattice::new(n as usize);

    let mut components = Vec::new();
    let mut is_parametric = false;
    for (i, entry) in as_array(path, get(path, obj, "components", "bundle")?, "components")?
        .iter()
        .enumerate()
    {
        let what = format!("components[{i}]");
        let comp = as_object(path, entry, &what)?;
        let name = as_str(path, get(path, comp, "name", &what)?, &format!("{what}.name"))?
            .to_string();
        let class = value_to_class(
            path,
            get(path, comp, "class", &what)?,
            &lattice,
            &format!("{what}.class"),
        )?;
        let coeff = value_to_coeff(
            path,
            get(path, comp, "coeff", &what)?,
            &format!("{what}.coeff"),
        )?;
        if !num::Zero::is_zero(&coeff.eps) {
            is_parametric = true;
        }
        components.push(ParamComponent { name, class, coeff });
    }

    let target_value = get(path, obj, "target", "bundle")?;
    let family = if target_value.as_str() == Some("minus_K") {
        ParametricCertificate::anticanonical(lattice, components)
    } else {
        let target = value_to_class(path, target_value, &lattice, "target")?;
        ParametricCertificate::new(lattice, components, target)
    }
    .map_err(|e| invalid(path, format!("components: {e}")))?;

    let pencil = match obj.get("pencil_class") {
        None => None,
        Some(pencil_value) => {
            let pencil_class = value_to_class(path, pencil_value, &lattice, "pencil_class")?;
            let mut members = Vec::new();
            for (i, member_value) in
                as_array(path, get(path, obj, "members", "bundle")?, "members")?
                    .iter()
                    .enumerate()
            {
                let mut member = Vec::new();
                for (j, piece_value) in
                    as_array(path, member_value, &format!("members[{i}]"))?
                        .iter()
                        .enumerate()
                {
                    let what = format!("members[{i}][{j}]");
                    let piece = as_object(path, piece_value, &what)?;
                    let name = as_str(
                        path,
                        get(path, piece, "name", &what)?,
                        &format!("{what}.name"),
                    )?
                    .to_string();
                    let mult = as_int(
                        path,
                        get(path, piece, "mult", &what)?,
                        &format!("{what}.mult"),
                    )?;
                    if mult <= 0 {
                        return Err(invalid(path, format!("{what}.mult: must be positive")));
                    }
                    let class = match piece.get("class") {
                        Some(v) => value_to_class(path, v, &lattice, &format!("{what}.class"))?,
                        None => family
                            .components()
                            .iter()
                            .find(|c| c.name == name)
                            .map(|c| c.class.clone())
                            .ok_or_else(|| {
                                invalid(
                                    path,
                                    format!(
                                        "{what}: \"{name}\" is not a certificate component \
                                         and has no explicit class"
                                    ),
                                )
                            })?,
                    };
                    member.push(MemberComponent {
                        name,
                        class,
                        multiplicity: mult as u64,
                    });
                }
                members.push(member);
            }

            let mut flags = std::collections::BTreeMap::new();
            if let Some(flag_value) = obj.get("through_base_point") {
                let map = as_object(path, flag_value, "through_base_point")?;
                for (name, v) in map {
                    flags.insert(
                        name.clone(),
                        as_bool(path, v, &format!("through_base_point.{name}"))?,
                    );
                }
            }

            let lines = match obj.get("lines_through_p") {
                None => None,
                Some(lines_value) => {
                    let mut lines = Vec::new();
                    for (i, v) in as_array(path, lines_value, "lines_through_p")?
                        .iter()
                        .enumerate()
                    {
                        lines.push(value_to_class(
                            path,
                            v,
                            &lattice,
                            &format!("lines_through_p[{i}]"),
                        )?);
                    }
                    Some(lines)
                }
            };

            Some(
                Pencil::new(lattice, pencil_class, members, flags, lines)
                    .map_err(|e| invalid(path, format!("pencil: {e}")))?,
            )
        }
    };

    Ok(CertificateBundle {
        source,
        lattice,
        family,
        is_parametric,
        pencil,
    })
}

// ---------------------------------------------------------------------------
// Ring fixtures
// ---------------------------------------------------------------------------

/// A polynomial ring presentation with named derivations.
#[derive(Debug, Clone)]
pub struct RingFixture {
    pub source: Option<String>,
    pub vars: Vec<String>,
    pub ideal_gens: Vec<Poly>,
    /// Name → derivation, in the file's (alphabetical) key order.
    pub derivations: Vec<(String, Derivation)>,
    pub pairwise_commute: bool,
    /// Upper bound every per-variable nilpotency order must respect,
    /// when the fixture declares one.
    pub max_order: Option<u32>,
}

/// Load a ring fixture.
///
/// Shape:
/// ```json
/// {
///   "source": "optional provenance note",
///   "vars": ["x", "y", "z", "u"],
///   "ideal": ["xy - zu"],
///   "derivations": { "d1": { "x": "u", "z": "y" } },
///   "pairwise_commute": true,
///   "max_order": 2                  // optional
/// }
/// ```
///
/// A derivation maps each listed variable to the polynomial image;
/// unlisted variables map to zero.
pub fn load_ring(path: &Path) -> Result<RingFixture, IoError> {
    let root = read_json(path)?;
    let obj = as_object(path, &root, "ring")?;
    let source = match obj.get("source") {
        Some(v) => Some(as_str(path, v, "source")?.to_string()),
        None => None,
    };

    let mut vars = Vec::new();
    for (i, v) in as_array(path, get(path, obj, "vars", "ring")?, "vars")?
        .iter()
        .enumerate()
    {
        vars.push(as_str(path, v, &format!("vars[{i}]"))?.to_string());
    }
    if vars.is_empty() {
        return Err(invalid(path, "vars: must list at least one variable"));
    }

    let parse = |src: &str, what: &str| -> Result<Poly, IoError> {
        parse_poly(src, &vars).map_err(|e| invalid(path, format!("{what}: {e}")))
    };

    let mut ideal_gens = Vec::new();
    if let Some(ideal_value) = obj.get("ideal") {
        for (i, v) in as_array(path, ideal_value, "ideal")?.iter().enumerate() {
            let what = format!("ideal[{i}]");
            ideal_gens.push(parse(as_str(path, v, &what)?, &what)?);
        }
    }

    let mut derivations = Vec::new();
    let derivation_map = as_object(
        path,
        get(path, obj, "derivations", "ring")?,
        "derivations",
    )?;
    for (name, images_value) in derivation_map {
        let what = format!("derivations.{name}");
        let images_obj = as_object(path, images_value, &what)?;
        let mut images = vec![Poly::zero(vars.len()); vars.len()];
        for (var, poly_value) in images_obj {
            let idx = vars.iter().position(|v| v == var).ok_or_else(|| {
                invalid(path, format!("{what}: unknown variable \"{var}\""))
            })?;
            let entry = format!("{what}.{var}");
            images[idx] = parse(as_str(path, poly_value, &entry)?, &entry)?;
        }
        let derivation = Derivation::new(vars.len(), images)
            .map_err(|e| invalid(path, format!("{what}: {e}")))?;
        derivations.push((name.clone(), derivation));
    }
    if derivations.is_empty() {
        return Err(invalid(path, "derivations: must name at least one"));
    }

    let pairwise_commute = match obj.get("pairwise_commute") {
        Some(v) => as_bool(path, v, "pairwise_commute")?,
        None => false,
    };
    let max_order = match obj.get("max_order") {
        Some(v) => {
            let raw = as_int(path, v, "max_order")?;
            if raw < 0 {
                return Err(invalid(path, "max_order: must be nonnegative"));
            }
            Some(raw as u32)
        }
        None => None,
    };

    Ok(RingFixture {
        source,
        vars,
        ideal_gens,
        derivations,
        pairwise_commute,
        max_order,
    })
}

// ---------------------------------------------------------------------------
// Graph and script fixtures
// ---------------------------------------------------------------------------

/// A weighted dual graph with optional fibration data.
#[derive(Debug, Clone)]
pub struct GraphFixture {
    pub source: Option<String>,
    pub graph: Graph,
    pub section: Option<String>,
    pub fibers: Vec<Vec<String>>,
}

/// Load a graph fixture.
///
/// Shape:
/// ```json
/// {
///   "source": "optional provenance note",
///   "vertices": [ { "name": "E1", "w": -5 } ],
///   "edges": [ ["SW", "E1"] ],
///   "section": "SW",                 // optional
///   "fibers": [ ["E1", "D1"] ]       // optional
/// }
/// ```
pub fn load_graph(path: &Path) -> Result<GraphFixture, IoError> {
    let root = read_json(path)?;
    let obj = as_object(path, &root, "graph")?;
    let source = match obj.get("source") {
        Some(v) => Some(as_str(path, v, "source")?.to_string()),
        None => None,
    };

    let mut vertices = Vec::new();
    for (i, v) in as_array(path, get(path, obj, "vertices", "graph")?, "vertices")?
        .iter()
        .enumerate()
    {
        let what = format!("vertices[{i}]");
        let vert = as_object(path, v, &what)?;
        let name = as_str(path, get(path, vert, "name", &what)?, &format!("{what}.name"))?;
        let w = as_int(path, get(path, vert, "w", &what)?, &format!("{what}.w"))?;
        vertices.push((name.to_string(), w));
    }

    let mut edges = Vec::new();
    if let Some(edges_value) = obj.get("edges") {
        for (i, v) in as_array(path, edges_value, "edges")?.iter().enumerate() {
            let what = format!("edges[{i}]");
            let pair = as_array(path, v, &what)?;
            if pair.len() != 2 {
                return Err(invalid(path, format!("{what}: expected [\"a\", \"b\"]")));
            }
            edges.push((
                as_str(path, &pair[0], &format!("{what}[0]"))?.to_string(),
                as_str(path, &pair[1], &format!("{what}[1]"))?.to_string(),
            ));
        }
    }

    let graph =
        Graph::new(vertices, edges).map_err(|e| invalid(path, format!("graph: {e}")))?;

    let section = match obj.get("section") {
        Some(v) => Some(as_str(path, v, "section")?.to_string()),
        None => None,
    };

    let mut fibers = Vec::new();
    if let Some(fibers_value) = obj.get("fibers") {
        for (i, fiber_value) in as_array(path, fibers_value, "fibers")?.iter().enumerate() {
            let mut fiber = Vec::new();
            for (j, v) in as_array(path, fiber_value, &format!("fibers[{i}]"))?
                .iter()
                .enumerate()
            {
                fiber.push(as_str(path, v, &format!("fibers[{i}][{j}]"))?.to_string());
            }
            fibers.push(fiber);
        }
    }

    Ok(GraphFixture {
        source,
        graph,
        section,
        fibers,
    })
}

/// A move script, with an optional expected final graph embedded by the
/// caller via a second graph fixture.
#[derive(Debug, Clone)]
pub struct ScriptFixture {
    pub source: Option<String>,
    pub moves: Vec<Move>,
}

/// Load a script fixture.
///
/// Shape:
/// ```json
/// {
///   "source": "optional provenance note",
///   "moves": [
///     { "op": "blowup_vertex", "vertex": "S", "name": "C1" },
///     { "op": "blowup_edge", "a": "S", "b": "C1", "name": "C2" },
///     { "op": "blowdown", "vertex": "S" }
///   ]
/// }
/// ```
///
/// The `"name"` on blowups is optional; when omitted a fresh name is
/// generated at run time.
pub fn load_script(path: &Path) -> Result<ScriptFixture, IoError> {
    let root = read_json(path)?;
    let obj = as_object(path, &root, "script")?;
    let source = match obj.get("source") {
        Some(v) => Some(as_str(path, v, "source")?.to_string()),
        None => None,
    };

    let mut moves = Vec::new();
    for (i, v) in as_array(path, get(path, obj, "moves", "script")?, "moves")?
        .iter()
        .enumerate()
    {
        let what = format!("moves[{i}]");
        let mv = as_object(path, v, &what)?;
        let op = as_str(path, get(path, mv, "op", &what)?, &format!("{what}.op"))?;
        let name = match mv.get("name") {
            Some(v) => Some(as_str(path, v, &format!("{what}.name"))?.to_string()),
            None => None,
        };
        let field = |key: &str| -> Result<String, IoError> {
            Ok(as_str(path, get(path, mv, key, &what)?, &format!("{what}.{key}"))?.to_string())
        };
        moves.push(match op {
            "blowup_vertex" => Move::BlowupAtVertex {
                vertex: field("vertex")?,
                name,
            },
            "blowup_edge" => Move::BlowupAtEdge {
                a: field("a")?,
                b: field("b")?,
                name,
            },
            "blowdown" => Move::Blowdown {
                vertex: field("vertex")?,
            },
            other => {
                return Err(invalid(
                    path,
                    format!("{what}.op: unknown operation \"{other}\""),
                ))
            }
        });
    }

    Ok(ScriptFixture { source, moves })
}

// ---------------------------------------------------------------------------
// Makar-Limanov fixtures
// ---------------------------------------------------------------------------

/// Component name-sets for a collection of pencils.
#[derive(Debug, Clone)]
pub struct MlFixture {
    pub source: Option<String>,
    /// (pencil name, component names), in file order.
    pub pencils: Vec<(String, BTreeSet<String>)>,
    pub expect: Option<BTreeSet<String>>,
}

/// Load a Makar-Limanov fixture.
///
/// Shape:
/// ```json
/// {
///   "source": "optional provenance note",
///   "pencils": [ { "name": "phi1", "components": ["E4", "C1"] } ],
///   "expect": ["E4"]                 // optional
/// }
/// ```
pub fn load_ml(path: &Path) -> Result<MlFixture, IoError> {
    let root = read_json(path)?;
    let obj = as_object(path, &root, "ml")?;
    let source = match obj.get("source") {
        Some(v) => Some(as_str(path, v, "source")?.to_string()),
        None => None,
    };

    let mut pencils = Vec::new();
    for (i, v) in as_array(path, get(path, obj, "pencils", "ml")?, "pencils")?
        .iter()
        .enumerate()
    {
        let what = format!("pencils[{i}]");
        let pencil = as_object(path, v, &what)?;
        let name = as_str(path, get(path, pencil, "name", &what)?, &format!("{what}.name"))?
            .to_string();
        let mut names = BTreeSet::new();
        for (j, c) in as_array(
            path,
            get(path, pencil, "components", &what)?,
            &format!("{what}.components"),
        )?
        .iter()
        .enumerate()
        {
            names.insert(as_str(path, c, &format!("{what}.components[{j}]"))?.to_string());
        }
        pencils.push((name, names));
    }

    let expect = match obj.get("expect") {
        None => None,
        Some(expect_value) => {
            let mut names = BTreeSet::new();
            for (i, v) in as_array(path, expect_value, "expect")?.iter().enumerate() {
                names.insert(as_str(path, v, &format!("expect[{i}]"))?.to_string());
            }
            Some(names)
        }
    };

    Ok(MlFixture {
        source,
        pencils,
        expect,
    })
}

// ---------------------------------------------------------------------------
// Search fixtures
// ---------------------------------------------------------------------------

/// Bounds for the integer search and the recorded hit list.
#[derive(Debug, Clone)]
pub struct NfFixture {
    pub source: Option<String>,
    pub bounds: SearchBounds,
    /// Canonically sorted states the search is expected to find, when
    /// the fixture records them.
    pub expected_hits: Option<Vec<NfState>>,
}

/// Load a search fixture.
///
/// Shape:
/// ```json
/// {
///   "source": "optional provenance note",
///   "bounds": { "a_max": 10, "b_abs_max": 20 },
///   "expected_hits": [ { "a": 5, "b": -2, "mults": [5, 3] } ]
/// }
/// ```
///
/// Omitted bound fields default as in [`SearchBounds::for_a_max`]:
/// `b_abs_max = 2·a_max`, `n_max` at the derived cap, no extra
/// multiplicity cap.
pub fn load_nf_fixture(path: &Path) -> Result<NfFixture, IoError> {
    let root = read_json(path)?;
    let obj = as_object(path, &root, "search")?;
    let source = match obj.get("source") {
        Some(v) => Some(as_str(path, v, "source")?.to_string()),
        None => None,
    };

    let bounds_obj = as_object(path, get(path, obj, "bounds", "search")?, "bounds")?;
    let a_max = as_int(path, get(path, bounds_obj, "a_max", "bounds")?, "bounds.a_max")?;
    let mut bounds = SearchBounds::for_a_max(a_max);
    if let Some(v) = bounds_obj.get("b_abs_max") {
        bounds.b_abs_max = as_int(path, v, "bounds.b_abs_max")?;
        bounds.n_max = bounds.derived_n_cap();
    }
    if let Some(v) = bounds_obj.get("n_max") {
        let raw = as_int(path, v, "bounds.n_max")?;
        if raw < 0 {
            return Err(invalid(path, "bounds.n_max: must be nonnegative"));
        }
        bounds.n_max = raw as usize;
    }
    if let Some(v) = bounds_obj.get("m_cap") {
        if !v.is_null() {
            bounds.m_cap = Some(as_int(path, v, "bounds.m_cap")?);
        }
    }

    let expected_hits = match obj.get("expected_hits") {
        None => None,
        Some(hits_value) => {
            let mut hits = Vec::new();
            for (i, v) in as_array(path, hits_value, "expected_hits")?.iter().enumerate() {
                let what = format!("expected_hits[{i}]");
                let hit = as_object(path, v, &what)?;
                let a = as_int(path, get(path, hit, "a", &what)?, &format!("{what}.a"))?;
                let b = as_int(path, get(path, hit, "b", &what)?, &format!("{what}.b"))?;
                let mut mults = Vec::new();
                for (j, m) in as_array(
                    path,
                    get(path, hit, "mults", &what)?,
                    &format!("{what}.mults"),
                )?
                .iter()
                .enumerate()
                {
                    mults.push(as_int(path, m, &format!("{what}.mults[{j}]"))?);
                }
                hits.push(
                    NfState::new(a, b, mults)
                        .map_err(|e| invalid(path, format!("{what}: {e}")))?,
                );
            }
            Some(hits)
        }
    };

    Ok(NfFixture {
        source,
        bounds,
        expected_hits,
    })
}

// ---------------------------------------------------------------------------
// Class specifications
// ---------------------------------------------------------------------------

/// Parse a class given either inline (`"[3,-1,-1]"`) or as a path to a
/// JSON file holding a bare array or an object with a `"class"` field.
pub fn parse_class_spec(spec: &str, lattice: &Lattice) -> Result<LatticeClass, IoError> {
    let trimmed = spec.trim();
    if trimmed.starts_with('[') {
        let path = Path::new("<inline class>");
        let value: Value = serde_json::from_str(trimmed).map_err(|e| IoError::Json {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        return value_to_class(path, &value, lattice, "class");
    }
    let path = Path::new(spec);
    let root = read_json(path)?;
    match &root {
        Value::Array(_) => value_to_class(path, &root, lattice, "class"),
        Value::Object(obj) => value_to_class(
            path,
            get(path, obj, "class", "class file")?,
            lattice,
            "class",
        ),
        _ => Err(invalid(
            path,
            "class file: expected an array or an object with a \"class\" field",
        )),
    }
}
