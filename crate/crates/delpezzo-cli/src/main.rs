//! Command-line front end for the `delpezzo` toolkit.
//!
//! Every subcommand reads JSON fixtures (or inline arguments), dispatches
//! to the library, and renders a report either as text or, with `--json`,
//! as a single machine-readable JSON object on stdout.
//!
//! Exit codes: `0` pass, `1` verification failure or mismatch, `2` input
//! or usage error, `3` computation budget exceeded. Timing information
//! goes to stderr so stdout stays deterministic.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::ToPrimitive;
use serde_json::{json, Map, Value};

use delpezzo::cylinder::{
    cubic_pencil_audit, ml_common_components, CertificateVerdict, CheckStatus, EpsInterval,
    ParametricVerdict, PencilVerdict,
};
use delpezzo::dualgraph::{run_script, FiberResolution, Graph};
use delpezzo::groebner::{GroebnerError, IdealPresentation, MonomialOrder, DEFAULT_PAIR_BUDGET};
use delpezzo::io::{
    self, load_bundle, load_graph, load_ml, load_nf_fixture, load_ring, load_script,
};
use delpezzo::lnd::LndError;
use delpezzo::nfdescent::{exhaustive_search, exhaustive_search_sequential, SearchBounds};
use delpezzo::picard::{AdjointKind, Lattice, LatticeClass};
use delpezzo::rational::{format_rat, parse_rat, Rat};

// ---------------------------------------------------------------------------
// Argument grammar
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "delpezzo",
    version,
    about = "Exact-arithmetic verification for del Pezzo lattice computations",
    propagate_version = true
)]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the (-1)-classes of Z^{1,n}.
    Lines(LinesArgs),
    /// Test a class for nefness (or ampleness) against the curve cone.
    Nef(NefArgs),
    /// Inverse nef value and adjoint classification of a nef class.
    Nefvalue(NefvalueArgs),
    /// Decomposition-certificate commands.
    #[command(subcommand)]
    Cyl(CylCommand),
    /// Derivation certification.
    #[command(subcommand)]
    Lnd(LndCommand),
    /// Dual-graph rewriting and fiber analysis.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// The degree/twist/multiplicity integer system.
    #[command(subcommand)]
    Nf(NfCommand),
}

#[derive(Args)]
struct LinesArgs {
    /// Number of exceptional classes (0 ≤ n ≤ 8).
    #[arg(long)]
    n: usize,
    /// Fail (exit 1) unless exactly this many classes are found.
    #[arg(long)]
    expect_count: Option<usize>,
}

#[derive(Args)]
struct NefArgs {
    /// Number of exceptional classes (0 ≤ n ≤ 8).
    #[arg(long)]
    n: usize,
    /// Class, inline ("[3,-1,-1]") or a path to a JSON file.
    #[arg(long)]
    class: String,
    /// Require ampleness (strict positivity) instead of nefness.
    #[arg(long)]
    ample: bool,
}

#[derive(Args)]
struct NefvalueArgs {
    /// Number of exceptional classes (0 ≤ n ≤ 8).
    #[arg(long)]
    n: usize,
    /// Class, inline ("[3,-1,-1]") or a path to a JSON file.
    #[arg(long)]
    class: String,
}

#[derive(Subcommand)]
enum CylCommand {
    /// Check that a certificate decomposes its target exactly.
    Verify(CylVerifyArgs),
    /// Run the degree-3 necessary-condition battery on a pencil bundle.
    Audit(CylAuditArgs),
    /// Exact admissible parameter interval of a certificate family.
    Eps(CylEpsArgs),
    /// Common components across pencils (Makar-Limanov style).
    Ml(CylMlArgs),
}

#[derive(Args)]
struct CylVerifyArgs {
    /// Certificate bundle fixture.
    file: PathBuf,
    /// Instantiate a parametric family at this value before checking.
    #[arg(long, value_name = "P/Q")]
    eps: Option<String>,
}

#[derive(Args)]
struct CylAuditArgs {
    /// Certificate bundle fixture with a pencil section (degree 3).
    file: PathBuf,
}

#[derive(Args)]
struct CylEpsArgs {
    /// Certificate bundle fixture.
    file: PathBuf,
    /// Also require every coefficient to stay strictly below 1.
    #[arg(long)]
    require_upper_bound: bool,
    /// Fail unless the interval matches, e.g. "(0, 1/2)" or "empty".
    #[arg(long, value_name = "INTERVAL")]
    expect: Option<String>,
}

#[derive(Args)]
struct CylMlArgs {
    /// Pencil component-set fixture.
    file: PathBuf,
}

#[derive(Subcommand)]
enum LndCommand {
    /// Certify derivations: ideal preservation, local nilpotency, commuting.
    Check(LndCheckArgs),
}

#[derive(Args)]
struct LndCheckArgs {
    /// Ring fixture: variables, ideal, derivations.
    file: PathBuf,
    /// Iteration ceiling for nilpotency certification.
    #[arg(long, default_value_t = 32)]
    bound: u32,
    /// S-pair reduction budget for the Gröbner basis.
    #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
    groebner_budget: usize,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Apply a move script, optionally comparing with an expected graph.
    Run(GraphRunArgs),
    /// Solve fiber multiplicities against a section.
    Fibers(GraphFibersArgs),
}

#[derive(Args)]
struct GraphRunArgs {
    /// Starting graph fixture.
    file: PathBuf,
    /// Move script fixture.
    #[arg(long)]
    script: PathBuf,
    /// Graph fixture the result must be isomorphic to.
    #[arg(long)]
    expect: Option<PathBuf>,
}

#[derive(Args)]
struct GraphFibersArgs {
    /// Graph fixture with "section" and "fibers" declared.
    file: PathBuf,
}

#[derive(Subcommand)]
enum NfCommand {
    /// Enumerate all normalized solutions in a bounded box.
    Search(NfSearchArgs),
}

#[derive(Args)]
struct NfSearchArgs {
    /// Largest degree parameter a to scan.
    #[arg(long, conflicts_with = "fixture")]
    a_max: Option<i64>,
    /// Bound on |b| (default 2·a_max).
    #[arg(long, conflicts_with = "fixture")]
    b_abs: Option<i64>,
    /// Cap on the number of multiplicities (default: derived, complete).
    #[arg(long, conflicts_with = "fixture")]
    n_max: Option<usize>,
    /// Search fixture carrying bounds and the recorded hit list.
    #[arg(long)]
    fixture: Option<PathBuf>,
    /// Use the sequential engine even when the parallel one is built.
    #[arg(long)]
    sequential: bool,
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// A finished command: exit code plus renderable content. `fields` keeps
/// the JSON object's insertion order for the text renderer.
struct Report {
    code: u8,
    verdict: &'static str,
    source: Option<String>,
    fields: Vec<(String, Value)>,
    /// Structured values included in JSON output only; the text renderer
    /// shows these through dedicated lines instead.
    json_fields: Vec<(String, Value)>,
    /// Extra preformatted text lines, printed after the fields.
    text: Vec<String>,
}

impl Report {
    fn new(code: u8, verdict: &'static str) -> Report {
        Report {
            code,
            verdict,
            source: None,
            fields: Vec::new(),
            json_fields: Vec::new(),
            text: Vec::new(),
        }
    }

    fn pass() -> Report {
        Report::new(EXIT_PASS, "pass")
    }

    fn fail() -> Report {
        Report::new(EXIT_FAIL, "fail")
    }

    fn source(mut self, source: &Option<String>) -> Report {
        self.source = source.clone();
        self
    }

    fn field(mut self, key: &str, value: Value) -> Report {
        self.fields.push((key.to_string(), value));
        self
    }

    fn json_field(mut self, key: &str, value: Value) -> Report {
        self.json_fields.push((key.to_string(), value));
        self
    }

    fn line(mut self, line: String) -> Report {
        self.text.push(line);
        self
    }

    fn render(&self, json_mode: bool) {
        if json_mode {
            let mut map = Map::new();
            map.insert("verdict".to_string(), json!(self.verdict));
            if let Some(source) = &self.source {
                map.insert("source".to_string(), json!(source));
            }
            for (key, value) in self.fields.iter().chain(&self.json_fields) {
                map.insert(key.clone(), value.clone());
            }
            println!("{}", Value::Object(map));
        } else {
            if let Some(source) = &self.source {
                println!("source: {source}");
            }
            for (key, value) in &self.fields {
                println!("{key}: {}", value_text(value));
            }
            for line in &self.text {
                println!("{line}");
            }
            println!("verdict: {}", self.verdict);
        }
    }
}

/// An error that short-circuits a command with a given exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Failure {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }

    fn budget(message: impl ToString) -> Failure {
        Failure {
            code: EXIT_BUDGET,
            message: message.to_string(),
        }
    }
}

impl From<io::IoError> for Failure {
    fn from(e: io::IoError) -> Failure {
        Failure::input(e)
    }
}

// ---------------------------------------------------------------------------
// Rendering helpers
// ---------------------------------------------------------------------------

/// Rationals become JSON integers when integral and small enough,
/// otherwise exact "p/q" strings — never floats.
fn rat_value(r: &Rat) -> Value {
    if r.is_integer() {
        if let Some(i) = r.to_integer().to_i64() {
            return json!(i);
        }
    }
    json!(format_rat(r))
}

fn class_value(c: &LatticeClass) -> Value {
    Value::Array(c.coeffs().iter().map(rat_value).collect())
}

fn class_text(c: &LatticeClass) -> String {
    let parts: Vec<String> = c.coeffs().iter().map(format_rat).collect();
    format!("[{}]", parts.join(", "))
}

/// Compact single-line text for a JSON value (identical to JSON except
/// that bare strings lose their quotes).
fn value_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(value_text).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn interval_value(interval: &EpsInterval) -> Value {
    match interval {
        EpsInterval::Empty => json!({ "empty": true }),
        EpsInterval::Interval { lo, hi } => json!({
            "empty": false,
            "lo": lo.as_ref().map(rat_value),
            "hi": hi.as_ref().map(rat_value),
        }),
    }
}

/// Parse "(lo, hi)" with "-inf"/"inf" for unbounded sides, or "empty" —
/// the same grammar the interval display produces.
fn parse_interval_spec(spec: &str) -> Result<EpsInterval, String> {
    let trimmed = spec.trim();
    if trimmed == "empty" {
        return Ok(EpsInterval::Empty);
    }
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| format!("expected \"empty\" or \"(lo, hi)\", got \"{spec}\""))?;
    let (lo_text, hi_text) = inner
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated endpoints in \"{spec}\""))?;
    let endpoint = |text: &str, open: &str| -> Result<Option<Rat>, String> {
        let text = text.trim();
        if text == open {
            Ok(None)
        } else {
            parse_rat(text).map(Some).map_err(|e| e.to_string())
        }
    };
    Ok(EpsInterval::Interval {
        lo: endpoint(lo_text, "-inf")?,
        hi: endpoint(hi_text, "inf")?,
    })
}

fn status_text(status: CheckStatus) -> &'static str {
    match status {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Untested => "UNTESTED",
    }
}

fn graph_fields(report: Report, key_prefix: &str, graph: &Graph) -> Report {
    let vertices: Vec<Value> = graph
        .vertices()
        .map(|(name, w)| json!({ "name": name, "w": w }))
        .collect();
    let edges: Vec<Value> = graph.edges().map(|(a, b)| json!([a, b])).collect();
    let vertex_text: Vec<String> = graph
        .vertices()
        .map(|(name, w)| format!("{name}({w})"))
        .collect();
    let edge_text: Vec<String> = graph
        .edges()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect();
    report
        .json_field(&format!("{key_prefix}_vertices"), Value::Array(vertices))
        .json_field(&format!("{key_prefix}_edges"), Value::Array(edges))
        .line(format!(
            "{key_prefix}: {} / {}",
            vertex_text.join(" "),
            if edge_text.is_empty() {
                "no edges".to_string()
            } else {
                edge_text.join(" ")
            }
        ))
}

// ---------------------------------------------------------------------------
// Subcommand implementations
// ---------------------------------------------------------------------------

fn cmd_lines(args: &LinesArgs) -> Result<Report, Failure> {
    let lattice = Lattice::new(args.n);
    let classes = lattice.minus_one_classes().map_err(Failure::input)?;
    let count = classes.len();
    let mut report = Report::pass()
        .field("n", json!(args.n))
        .field("count", json!(count));
    if let Some(expected) = args.expect_count {
        report = report.field("expected_count", json!(expected));
        if expected != count {
            report.code = EXIT_FAIL;
            report.verdict = "fail";
        }
    }
    report = report.json_field(
        "classes",
        Value::Array(classes.iter().map(class_value).collect()),
    );
    for class in &classes {
        report = report.line(class_text(class));
    }
    Ok(report)
}

fn cmd_nef(args: &NefArgs) -> Result<Report, Failure> {
    let lattice = Lattice::new(args.n);
    let class = io::parse_class_spec(&args.class, &lattice)?;
    let holds = if args.ample {
        lattice.is_ample(&class)
    } else {
        lattice.is_nef(&class)
    }
    .map_err(Failure::input)?;
    let mut report = if holds { Report::pass() } else { Report::fail() };
    report = report
        .field("n", json!(args.n))
        .field("class", class_value(&class))
        .field("property", json!(if args.ample { "ample" } else { "nef" }))
        .field("holds", json!(holds));
    Ok(report)
}

fn cmd_nefvalue(args: &NefvalueArgs) -> Result<Report, Failure> {
    let lattice = Lattice::new(args.n);
    let class = io::parse_class_spec(&args.class, &lattice)?;
    if !lattice.is_nef(&class).map_err(Failure::input)? {
        return Ok(Report::fail()
            .field("n", json!(args.n))
            .field("class", class_value(&class))
            .field("nef", json!(false))
            .line("class is not nef; no nef value exists".to_string()));
    }
    let adjoint = lattice.adjoint_class(&class).map_err(Failure::input)?;
    let kind = match adjoint.kind {
        AdjointKind::Zero => "zero",
        AdjointKind::Fiber => "fiber",
        AdjointKind::Big => "big",
    };
    Ok(Report::pass()
        .field("n", json!(args.n))
        .field("class", class_value(&class))
        .field("nef", json!(true))
        .field("inverse_nef_value", rat_value(&adjoint.nef_value))
        .field("adjoint_class", class_value(&adjoint.class))
        .field("adjoint_kind", json!(kind)))
}

fn cmd_cyl_verify(args: &CylVerifyArgs) -> Result<Report, Failure> {
    let bundle = load_bundle(&args.file)?;
    let mut report = Report::pass()
        .source(&bundle.source)
        .field("n", json!(bundle.lattice.n()))
        .field("parametric", json!(bundle.is_parametric))
        .field("target", class_value(bundle.family.target()))
        .field("components", json!(bundle.family.components().len()));

    let mut ok = true;

    match &args.eps {
        Some(eps_text) => {
            let eps = parse_rat(eps_text).map_err(Failure::input)?;
            report = report.field("eps", rat_value(&eps));
            match bundle.family.instantiate(&eps) {
                Ok(cert) => match cert.verify() {
                    CertificateVerdict::Valid => {
                        report = report.field("identity", json!("exact"));
                    }
                    CertificateVerdict::Mismatch { difference } => {
                        ok = false;
                        report = report
                            .field("identity", json!("mismatch"))
                            .field("difference", class_value(&difference))
                            .line(format!("difference: {}", class_text(&difference)));
                    }
                },
                Err(e) => {
                    ok = false;
                    report = report
                        .field("identity", json!("rejected"))
                        .line(format!("instantiation rejected: {e}"));
                }
            }
        }
        None if bundle.is_parametric => match bundle.family.verify_identity() {
            ParametricVerdict::Valid => {
                report = report.field("identity", json!("exact for every eps"));
            }
            ParametricVerdict::Mismatch {
                constant_defect,
                linear_defect,
            } => {
                ok = false;
                report = report
                    .field("identity", json!("mismatch"))
                    .field("constant_defect", class_value(&constant_defect))
                    .field("linear_defect", class_value(&linear_defect))
                    .line(format!(
                        "constant defect: {}, eps defect: {}",
                        class_text(&constant_defect),
                        class_text(&linear_defect)
                    ));
            }
        },
        None => match bundle
            .family
            .instantiate(&Rat::from_integer(0.into()))
        {
            Ok(cert) => match cert.verify() {
                CertificateVerdict::Valid => {
                    report = report.field("identity", json!("exact"));
                }
                CertificateVerdict::Mismatch { difference } => {
                    ok = false;
                    report = report
                        .field("identity", json!("mismatch"))
                        .field("difference", class_value(&difference))
                        .line(format!("difference: {}", class_text(&difference)));
                }
            },
            Err(e) => {
                ok = false;
                report = report
                    .field("identity", json!("rejected"))
                    .line(format!("certificate rejected: {e}"));
            }
        },
    }

    if let Some(pencil) = &bundle.pencil {
        match pencil.member_consistency() {
            PencilVerdict::Valid => {
                report = report.field("members_consistent", json!(true));
            }
            PencilVerdict::MemberMismatch { index, difference } => {
                ok = false;
                report = report
                    .field("members_consistent", json!(false))
                    .field("member_mismatch_index", json!(index))
                    .field("member_difference", class_value(&difference))
                    .line(format!(
                        "member {index} misses the pencil class by {}",
                        class_text(&difference)
                    ));
            }
        }
    }

    if !ok {
        report.code = EXIT_FAIL;
        report.verdict = "fail";
    }
    Ok(report)
}

fn cmd_cyl_audit(args: &CylAuditArgs) -> Result<Report, Failure> {
    let bundle = load_bundle(&args.file)?;
    let pencil = bundle
        .pencil
        .as_ref()
        .ok_or_else(|| Failure::input("audit requires a pencil section in the bundle"))?;
    if bundle.is_parametric {
        return Err(Failure::input(
            "audit requires an exact certificate, not a parametric family",
        ));
    }
    let cert = bundle
        .family
        .instantiate(&Rat::from_integer(0.into()))
        .map_err(Failure::input)?;
    let audit = cubic_pencil_audit(pencil, &cert).map_err(Failure::input)?;

    let mut report = if audit.all_tested_pass() {
        Report::pass()
    } else {
        Report::fail()
    }
    .source(&bundle.source)
    .field("n", json!(bundle.lattice.n()));

    let conditions: Vec<Value> = audit
        .conditions
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "status": status_text(c.status).to_lowercase(),
                "detail": c.detail,
            })
        })
        .collect();
    report = report.json_field("conditions", Value::Array(conditions));
    for c in &audit.conditions {
        report = report.line(format!(
            "condition {}: {} - {}",
            c.id,
            status_text(c.status),
            c.detail
        ));
    }
    Ok(report)
}

fn cmd_cyl_eps(args: &CylEpsArgs) -> Result<Report, Failure> {
    let bundle = load_bundle(&args.file)?;
    let interval = bundle
        .family
        .epsilon_interval(args.require_upper_bound)
        .map_err(Failure::input)?;
    let mut report = Report::pass()
        .source(&bundle.source)
        .field("n", json!(bundle.lattice.n()))
        .field("require_upper_bound", json!(args.require_upper_bound))
        .field("interval", json!(interval.to_string()))
        .json_field("interval_parts", interval_value(&interval));
    if let Some(expect_text) = &args.expect {
        let expected = parse_interval_spec(expect_text).map_err(Failure::input)?;
        report = report.field("expected", json!(expected.to_string()));
        if expected != interval {
            report.code = EXIT_FAIL;
            report.verdict = "fail";
            report = report.line(format!("expected {expected}, computed {interval}"));
        }
    }
    Ok(report)
}

fn cmd_cyl_ml(args: &CylMlArgs) -> Result<Report, Failure> {
    let fixture = load_ml(&args.file)?;
    let sets: Vec<BTreeSet<String>> = fixture
        .pencils
        .iter()
        .map(|(_, names)| names.clone())
        .collect();
    let common = ml_common_components(&sets).map_err(Failure::input)?;

    let mut report = Report::pass()
        .source(&fixture.source)
        .field("pencils", json!(fixture.pencils.len()))
        .field(
            "common_components",
            Value::Array(common.iter().map(|c| json!(c)).collect()),
        );
    for (name, components) in &fixture.pencils {
        let list: Vec<String> = components.iter().cloned().collect();
        report = report.line(format!("{name}: {}", list.join(", ")));
    }
    if let Some(expected) = &fixture.expect {
        report = report.field(
            "expected",
            Value::Array(expected.iter().map(|c| json!(c)).collect()),
        );
        if expected != &common {
            report.code = EXIT_FAIL;
            report.verdict = "fail";
        }
    }
    Ok(report)
}

fn cmd_lnd_check(args: &LndCheckArgs) -> Result<Report, Failure> {
    let ring = load_ring(&args.file)?;
    let order = MonomialOrder::DegRevLex;
    let presentation =
        IdealPresentation::new(ring.ideal_gens.clone(), order, args.groebner_budget).map_err(
            |e| match e {
                GroebnerError::BudgetExceeded { .. } => Failure::budget(e),
            },
        )?;

    let mut report = Report::pass()
        .source(&ring.source)
        .field("vars", json!(ring.vars))
        .field("ideal_generators", json!(ring.ideal_gens.len()))
        .field("nilpotency_bound", json!(args.bound));
    if let Some(max_order) = ring.max_order {
        report = report.field("max_order", json!(max_order));
    }

    let mut ok = true;
    let mut derivation_values = Vec::new();
    for (name, derivation) in &ring.derivations {
        let preserves = derivation.preserves_ideal(&presentation);
        let orders = derivation.variable_orders(args.bound).map_err(|e| match e {
            LndError::NilpotencyBoundExceeded { .. } => {
                Failure::budget(format!("derivation {name}: {e}"))
            }
            other => Failure::input(format!("derivation {name}: {other}")),
        })?;
        let within_max = ring
            .max_order
            .map(|cap| orders.iter().all(|&o| o <= cap));
        if !preserves || within_max == Some(false) {
            ok = false;
        }
        derivation_values.push(json!({
            "name": name,
            "preserves_ideal": preserves,
            "variable_orders": orders,
            "within_max_order": within_max,
        }));
        report = report.line(format!(
            "{name}: preserves ideal = {preserves}, orders = {orders:?}{}",
            match within_max {
                Some(true) => ", within max order".to_string(),
                Some(false) => ", EXCEEDS max order".to_string(),
                None => String::new(),
            }
        ));
    }
    report = report.json_field("derivations", Value::Array(derivation_values));

    if ring.pairwise_commute {
        let mut commuting = Vec::new();
        for i in 0..ring.derivations.len() {
            for j in (i + 1)..ring.derivations.len() {
                let (a_name, a) = &ring.derivations[i];
                let (b_name, b) = &ring.derivations[j];
                let commutes = a.commutator(b).is_zero();
                if !commutes {
                    ok = false;
                }
                commuting.push(json!({
                    "pair": [a_name, b_name],
                    "commutes": commutes,
                }));
                report = report.line(format!("[{a_name}, {b_name}] = 0: {commutes}"));
            }
        }
        report = report.json_field("commutators", Value::Array(commuting));
    }

    if !ok {
        report.code = EXIT_FAIL;
        report.verdict = "fail";
    }
    Ok(report)
}

fn cmd_graph_run(args: &GraphRunArgs) -> Result<Report, Failure> {
    let start = load_graph(&args.file)?;
    let script = load_script(&args.script)?;

    let mut report = Report::pass()
        .source(&start.source)
        .field("moves", json!(script.moves.len()));

    match run_script(&start.graph, &script.moves) {
        Ok(final_graph) => {
            report = graph_fields(report, "final", &final_graph);
            if let Some(expect_path) = &args.expect {
                let expected = load_graph(expect_path)?;
                let isomorphic = final_graph.is_isomorphic(&expected.graph);
                report = report.field("isomorphic_to_expected", json!(isomorphic));
                if !isomorphic {
                    report.code = EXIT_FAIL;
                    report.verdict = "fail";
                }
            }
        }
        Err(e) => {
            report.code = EXIT_FAIL;
            report.verdict = "fail";
            report = report
                .field("script_error", json!(e.to_string()))
                .line(format!("script fails: {e}"));
        }
    }
    Ok(report)
}

fn cmd_graph_fibers(args: &GraphFibersArgs) -> Result<Report, Failure> {
    let fixture = load_graph(&args.file)?;
    let section = fixture
        .section
        .as_ref()
        .ok_or_else(|| Failure::input("fixture declares no \"section\" vertex"))?;
    if fixture.fibers.is_empty() {
        return Err(Failure::input("fixture declares no \"fibers\""));
    }

    let mut report = Report::pass()
        .source(&fixture.source)
        .field("section", json!(section));

    let mut ok = true;
    let mut fiber_values = Vec::new();
    for fiber in &fixture.fibers {
        let zariski = fixture
            .graph
            .zariski_fiber_check(fiber)
            .map_err(Failure::input)?;
        match fixture
            .graph
            .fiber_multiplicities(fiber, section)
            .map_err(Failure::input)?
        {
            FiberResolution::Solved {
                multiplicities,
                all_integral,
            } => {
                if !zariski {
                    ok = false;
                }
                let mult_map: Map<String, Value> = multiplicities
                    .iter()
                    .map(|(name, m)| (name.clone(), rat_value(m)))
                    .collect();
                fiber_values.push(json!({
                    "fiber": fiber,
                    "multiplicities": mult_map,
                    "all_integral": all_integral,
                    "zariski_check": zariski,
                }));
                let rendered: Vec<String> = fiber
                    .iter()
                    .map(|name| format!("{name} -> {}", format_rat(&multiplicities[name])))
                    .collect();
                report = report.line(format!(
                    "fiber {{{}}}: {} (integral: {all_integral}, zariski: {zariski})",
                    fiber.join(", "),
                    rendered.join(", ")
                ));
            }
            FiberResolution::Inconsistent { reason } => {
                ok = false;
                fiber_values.push(json!({
                    "fiber": fiber,
                    "inconsistent": reason,
                    "zariski_check": zariski,
                }));
                report = report.line(format!(
                    "fiber {{{}}}: inconsistent - {reason}",
                    fiber.join(", ")
                ));
            }
        }
    }
    report = report.json_field("fibers", Value::Array(fiber_values));

    if !ok {
        report.code = EXIT_FAIL;
        report.verdict = "fail";
    }
    Ok(report)
}

fn cmd_nf_search(args: &NfSearchArgs) -> Result<Report, Failure> {
    let (bounds, expected, source) = match &args.fixture {
        Some(path) => {
            let fixture = load_nf_fixture(path)?;
            (fixture.bounds, fixture.expected_hits, fixture.source)
        }
        None => {
            let a_max = args
                .a_max
                .ok_or_else(|| Failure::input("pass --a-max or --fixture"))?;
            let mut bounds = SearchBounds::for_a_max(a_max);
            if let Some(b_abs) = args.b_abs {
                bounds.b_abs_max = b_abs;
                bounds.n_max = bounds.derived_n_cap();
            }
            if let Some(n_max) = args.n_max {
                bounds.n_max = n_max;
            }
            (bounds, None, None)
        }
    };

    let started = std::time::Instant::now();
    let result = if args.sequential {
        exhaustive_search_sequential(&bounds)
    } else {
        exhaustive_search(&bounds)
    };
    let elapsed = started.elapsed();
    eprintln!("search took {:.3}s", elapsed.as_secs_f64());

    let mut report = Report::pass()
        .field(
            "bounds",
            json!({
                "a_max": bounds.a_max,
                "b_abs_max": bounds.b_abs_max,
                "n_max": bounds.n_max,
                "m_cap": bounds.m_cap,
            }),
        )
        .field(
            "engine",
            json!(if args.sequential { "sequential" } else { "default" }),
        )
        .field("candidates", json!(result.candidates))
        .field("hit_count", json!(result.hits.len()));
    if let Some(source) = source {
        report = report.source(&Some(source));
    }

    let hits: Vec<Value> = result
        .hits
        .iter()
        .map(|hit| {
            json!({
                "a": hit.state.a(),
                "b": hit.state.b(),
                "mults": hit.state.mults(),
                "audit": {
                    "b_negative": hit.audit.b_negative,
                    "a_plus_two_b_nonnegative": hit.audit.a_plus_two_b_nonnegative,
                    "max_mult_exceeds_a_plus_b": hit.audit.max_mult_exceeds_a_plus_b,
                },
                "descent": hit.descent.as_ref().map(|d| json!({
                    "a_next": d.a_next,
                    "b_next": d.b_next,
                    "degenerate": d.degenerate,
                })),
            })
        })
        .collect();
    report = report.json_field("hits", Value::Array(hits));
    for hit in &result.hits {
        let descent = match &hit.descent {
            Some(d) => format!("descends to a' = {}, b' = {}", d.a_next, d.b_next),
            None => "no descent (audit fails)".to_string(),
        };
        report = report.line(format!("hit {}: {}", hit.state, descent));
    }

    if let Some(expected) = expected {
        let mut got: Vec<_> = result.hits.iter().map(|h| h.state.clone()).collect();
        let mut want = expected;
        got.sort();
        want.sort();
        let matches = got == want;
        report = report.field("matches_recorded_hits", json!(matches));
        if !matches {
            report.code = EXIT_FAIL;
            report.verdict = "fail";
            report = report.line(format!(
                "recorded {} hits, search found {}",
                want.len(),
                got.len()
            ));
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Lines(args) => cmd_lines(args),
        Command::Nef(args) => cmd_nef(args),
        Command::Nefvalue(args) => cmd_nefvalue(args),
        Command::Cyl(CylCommand::Verify(args)) => cmd_cyl_verify(args),
        Command::Cyl(CylCommand::Audit(args)) => cmd_cyl_audit(args),
        Command::Cyl(CylCommand::Eps(args)) => cmd_cyl_eps(args),
        Command::Cyl(CylCommand::Ml(args)) => cmd_cyl_ml(args),
        Command::Lnd(LndCommand::Check(args)) => cmd_lnd_check(args),
        Command::Graph(GraphCommand::Run(args)) => cmd_graph_run(args),
        Command::Graph(GraphCommand::Fibers(args)) => cmd_graph_fibers(args),
        Command::Nf(NfCommand::Search(args)) => cmd_nf_search(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            report.render(cli.json);
            ExitCode::from(report.code)
        }
        Err(failure) => {
            if cli.json {
                println!(
                    "{}",
                    json!({ "verdict": "error", "message": failure.message })
                );
            } else {
                eprintln!("error: {}", failure.message);
            }
            ExitCode::from(failure.code)
        }
    }
}
