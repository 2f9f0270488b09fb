//! Command-line front end: instance generation, single-stage commands and
//! the end-to-end pipeline, all emitting versioned JSON reports.

use std::fs;
use std::path::PathBuf;
use std::time::Duration;

use cfi_lasserre::cfi::{build_x, build_y, parity_isomorphism, CfiPair, TwistFunction};
use cfi_lasserre::graph::io::{parse_edge_list, write_dot, write_edge_list};
use cfi_lasserre::graph::{
    cutwidth, expansion_bounds, expansion_exact, graph_width, named, random_3regular, MAX_CUTWIDTH_VERTICES,
    MAX_EXACT_EXPANSION_VERTICES,
};
use cfi_lasserre::iso::{automorphisms, find_isomorphism, wl_refine, IsoOutcome, SearchBudget, WlVerdict};
use cfi_lasserre::lasserre::{vectors_from_isomorphisms, verify_all, IsoVerifyReport, LasserreInstance};
use cfi_lasserre::report::REPORT_SCHEMA;
use cfi_lasserre::resolution::{build_class_table, classes_sanity, refutation_width, ProjectedSystem, RefutationWidth};
use cfi_lasserre::scalar::Scalar;
use cfi_lasserre::xor::build_phi;
use cfi_lasserre::{ColoredGraph, Error, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub mod exit {
    pub const OK: i32 = 0;
    pub const CLAIM_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const INVALID_INPUT: i32 = 4;
    pub const BUDGET: i32 = 5;
    pub const IO: i32 = 6;
    pub const CONSTRUCTION: i32 = 7;
}

#[derive(Parser, Debug, Clone)]
#[command(name = "cfi-lasserre", version, about = "CFI instances and exact Lasserre verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for parallel sweeps (default: available cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Write a base graph as an edge list.
    GenGraph(GraphArgs),
    /// Build X_f(G) for a twist.
    BuildCfi {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long, value_enum, default_value_t = CfiFormat::Json)]
        format: CfiFormat,
        /// Drop the colors (Y_f(G)).
        #[arg(long)]
        uncolored: bool,
    },
    /// Search for an isomorphism between X_0(G) and X_f(G), or between two graph files.
    CheckIso {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        twist: TwistArgs,
        /// Compare `--graph` against this file instead.
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long)]
        uncolored: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Least refutation width of the system for X_0(G) vs X_f(G).
    RefutationWidth {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        twist: TwistArgs,
        /// Largest width to search.
        #[arg(long)]
        width: Option<usize>,
    },
    /// Class table and vectors v_σ for every σ up to the level.
    BuildVectors {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        twist: TwistArgs,
        #[command(flatten)]
        lasserre: LasserreArgs,
    },
    /// Verify (l1)-(l5) for the class-based vectors.
    VerifyLasserre {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        twist: TwistArgs,
        #[command(flatten)]
        lasserre: LasserreArgs,
    },
    /// Exact expansion (small graphs) and spectral/sampled bounds.
    Expansion {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Exact cutwidth with a witness ordering.
    Cutwidth(GraphArgs),
    /// k-dimensional Weisfeiler-Leman on the Y pair (or X pair with --colored).
    Wl {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(short, long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        colored: bool,
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Every stage end to end, one report.
    Pipeline {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        twist: TwistArgs,
        #[command(flatten)]
        lasserre: LasserreArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false, id = "source")]
pub struct GraphSource {
    /// Edge-list file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Random 3-regular graph on N vertices.
    #[arg(long, value_name = "N")]
    pub random: Option<usize>,
    /// A built-in graph: k4, petersen, prism, k33.
    #[arg(long)]
    pub named: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct TwistArgs {
    /// `zero`, `odd` (edge 0 twisted) or a file of 0/1 tokens per edge.
    #[arg(long, default_value = "odd")]
    pub twist: String,
}

#[derive(Args, Debug, Clone)]
pub struct LasserreArgs {
    /// Resolution parameter r (default: one below the refutation width, at most 9).
    #[arg(long)]
    pub width: Option<usize>,
    /// Vector level (default: r / 9).
    #[arg(long)]
    pub level: Option<usize>,
    /// Sampled σ's per check once families are too large to enumerate.
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Tolerance for float mode.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Search-tree node budget.
    #[arg(long, default_value_t = 1_000_000)]
    pub nodes: u64,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 120)]
    pub time: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget { max_nodes: self.nodes, max_time: Some(Duration::from_secs(self.time)) }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfiFormat {
    Json,
    Edges,
    Dot,
}

/// A failed stage with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub stage: &'static str,
    pub message: String,
}

impl Failure {
    fn io(stage: &'static str, e: std::io::Error) -> Self {
        Self { code: exit::IO, stage, message: e.to_string() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "schema": REPORT_SCHEMA, "error": { "stage": self.stage, "code": self.code, "message": self.message } })
    }
}

fn code_for(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Snapshot(_) => exit::PARSE,
        Error::BudgetExceeded(_) => exit::BUDGET,
        Error::IllDefinedGamma { .. } | Error::SignContradiction(_) | Error::LevelExceeded { .. } => exit::CONSTRUCTION,
        _ => exit::INVALID_INPUT,
    }
}

trait Stage<T> {
    fn at(self, stage: &'static str) -> Result<T, Failure>;
}

impl<T> Stage<T> for cfi_lasserre::Result<T> {
    fn at(self, stage: &'static str) -> Result<T, Failure> {
        self.map_err(|e| Failure { code: code_for(&e), stage, message: e.to_string() })
    }
}

/// What a command produced: the text to write and the exit code.
#[derive(Debug)]
pub struct Output {
    pub code: i32,
    pub body: String,
}

impl Output {
    fn report(report: Value) -> Self {
        let code = if all_claims_pass(&report) { exit::OK } else { exit::CLAIM_FAILED };
        Self { code, body: serde_json::to_string_pretty(&report).expect("reports serialize") + "\n" }
    }

    fn text(body: String) -> Self {
        Self { code: exit::OK, body }
    }
}

fn all_claims_pass(report: &Value) -> bool {
    match report.get("claims").and_then(Value::as_array) {
        Some(claims) => claims.iter().all(|c| c["status"] != "fail"),
        None => true,
    }
}

fn claim(name: &str, pass: bool, detail: Value) -> Value {
    json!({ "name": name, "status": if pass { "pass" } else { "fail" }, "detail": detail })
}

fn skipped(name: &str, why: &str) -> Value {
    json!({ "name": name, "status": "skipped", "detail": why })
}

fn render(x: &Rational) -> String {
    x.render()
}

pub fn load_graph(args: &GraphArgs) -> Result<ColoredGraph, Failure> {
    let s = &args.source;
    if let Some(path) = &s.graph {
        let text = fs::read_to_string(path).map_err(|e| Failure::io("load-graph", e))?;
        return parse_edge_list(&text).at("load-graph");
    }
    if let Some(n) = s.random {
        return random_3regular(n, args.seed).at("load-graph");
    }
    match s.named.as_deref() {
        Some("k4") => Ok(named::complete(4)),
        Some("petersen") => Ok(named::petersen()),
        Some("prism") => Ok(named::prism()),
        Some("k33") => Ok(named::complete_bipartite(3, 3)),
        other => Err(Failure { code: exit::INVALID_INPUT, stage: "load-graph", message: format!("unknown graph {other:?}") }),
    }
}

pub fn load_twist(args: &TwistArgs, edge_count: usize) -> Result<TwistFunction, Failure> {
    match args.twist.as_str() {
        "zero" => Ok(TwistFunction::zero(edge_count)),
        "odd" => Ok(TwistFunction::odd(edge_count)),
        path => {
            let text = fs::read_to_string(path).map_err(|e| Failure::io("load-twist", e))?;
            TwistFunction::parse(&text, edge_count).at("load-twist")
        }
    }
}

fn header(command: &str, g: &ColoredGraph) -> Value {
    json!({
        "schema": REPORT_SCHEMA,
        "command": command,
        "base": { "vertices": g.vertex_count(), "edges": g.edge_count() },
    })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Some(a), Value::Object(b)) = (a.as_object_mut(), b) {
        a.extend(b);
    }
    a
}

fn twist_json(t: &TwistFunction) -> Value {
    json!({ "bits": t.bits().iter().map(|&b| b as u8).collect::<Vec<_>>(), "parity": t.parity() as u8 })
}

fn width_json(w: RefutationWidth) -> Value {
    match w {
        RefutationWidth::Exact(x) => json!({ "exact": x }),
        RefutationWidth::AtLeast(x) => json!({ "at_least": x }),
    }
}

/// `r` from the flag, else one below the refutation width capped at 9.
fn choose_r(flag: Option<usize>, rw: RefutationWidth) -> usize {
    flag.unwrap_or(match rw {
        RefutationWidth::Exact(w) => (w - 1).min(9),
        RefutationWidth::AtLeast(w) => (w - 1).min(9),
    })
}

fn instance(g: &ColoredGraph, twist: &TwistFunction, args: &LasserreArgs) -> Result<(LasserreInstance, RefutationWidth, usize), Failure> {
    let zero = TwistFunction::zero(g.edge_count());
    let phi = build_phi(g, &zero, twist).at("build-phi")?;
    let sys = ProjectedSystem::from_xor(&phi).at("build-phi")?;
    let probe = args.width.map_or(g.edge_count(), |r| r.max(1));
    let rw = refutation_width(&sys, probe).at("refutation-width")?;
    let r = choose_r(args.width, rw);
    let table = build_class_table(&phi, r).at("class-table")?;
    let pair = CfiPair::build(g, &zero, twist).at("build-cfi")?;
    let inst = LasserreInstance::new(pair, table, args.level.unwrap_or(r / 9)).at("build-vectors")?;
    Ok((inst, rw, r))
}

fn iso_family_report(g: &ColoredGraph, twist: &TwistFunction, args: &LasserreArgs, budget: SearchBudget) -> Result<IsoVerifyReport, Failure> {
    let zero = TwistFunction::zero(g.edge_count());
    let pair = CfiPair::build(g, &zero, twist).at("build-cfi")?;
    let pi = parity_isomorphism(g, &zero, twist).at("iso-vectors")?;
    let mut isos = vec![pi.clone()];
    if let Ok(autos) = automorphisms(pair.xg.graph(), 2, budget) {
        if let Some(a) = autos.iter().find(|a| a.iter().enumerate().any(|(i, &x)| i != x)) {
            isos.push(pi.iter().map(|&x| a[x]).collect());
        }
    }
    let level = 3.min(pair.vertex_count());
    let (xf, xg) = (pair.xf.graph(), pair.xg.graph());
    Ok(match (args.mode, isos.len()) {
        (Mode::Exact, 1) => vectors_from_isomorphisms(xf, xg, &isos, &[Rational::from_integer(1)], 0.0)
            .at("iso-vectors")?
            .verify(level, args.samples, 0),
        (Mode::Exact, _) => vectors_from_isomorphisms(xf, xg, &isos, &[Rational::new(9, 25), Rational::new(16, 25)], 0.0)
            .at("iso-vectors")?
            .verify(level, args.samples, 0),
        (Mode::Float, 1) => vectors_from_isomorphisms(xf, xg, &isos, &[1.0], args.tol).at("iso-vectors")?.verify(level, args.samples, 0),
        (Mode::Float, _) => vectors_from_isomorphisms(xf, xg, &isos, &[1.0 / 3.0, 2.0 / 3.0], args.tol)
            .at("iso-vectors")?
            .verify(level, args.samples, 0),
    })
}

fn outcome_json(o: &IsoOutcome) -> Value {
    match o {
        IsoOutcome::Found(map) => json!({ "result": "found", "map": map }),
        IsoOutcome::NoneComplete => json!({ "result": "none-found", "complete": true }),
        IsoOutcome::Timeout => json!({ "result": "timeout", "complete": false }),
    }
}

fn verdict_json(v: WlVerdict) -> Value {
    match v {
        WlVerdict::Distinguished { round } => json!({ "verdict": "distinguished", "round": round }),
        WlVerdict::Indistinguishable => json!({ "verdict": "indistinguishable" }),
    }
}

fn expansion_json(g: &ColoredGraph, samples: usize, seed: u64) -> Result<Value, Failure> {
    let b = expansion_bounds(g, samples, seed).at("expansion")?;
    let exact = if g.vertex_count() <= MAX_EXACT_EXPANSION_VERTICES {
        let w = expansion_exact(g).at("expansion")?;
        json!({ "value": render(&w.value), "set": w.set })
    } else {
        Value::Null
    };
    Ok(json!({
        "exact": exact,
        "spectral_lower": b.lower,
        "lambda2": b.lambda2,
        "sampled_upper": render(&b.upper),
        "upper_set": b.upper_set,
        "samples": samples,
    }))
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::GenGraph(args) => Ok(Output::text(write_edge_list(&load_graph(args)?))),
        Command::BuildCfi { graph, twist, format, uncolored } => {
            let g = load_graph(graph)?;
            let t = load_twist(twist, g.edge_count())?;
            let x = build_x(&g, &t).at("build-cfi")?;
            let target = if *uncolored { build_y(&g, &t).at("build-cfi")? } else { x.graph().clone() };
            Ok(match format {
                CfiFormat::Edges => Output::text(write_edge_list(&target)),
                CfiFormat::Dot => {
                    let labels = x.labels();
                    Output::text(write_dot(&target, if *uncolored { None } else { Some(&labels) }))
                }
                CfiFormat::Json => Output::report(merge(
                    header("build-cfi", &g),
                    json!({
                        "twist": twist_json(&t),
                        "vertices": target.vertex_count(),
                        "edges": target.edge_count(),
                        "uncolored": uncolored,
                        "edge_list": write_edge_list(&target),
                        "sidecar": x.sidecar(),
                    }),
                )),
            })
        }
        Command::CheckIso { graph, twist, against, uncolored, budget } => {
            let g = load_graph(graph)?;
            let (a, b, t) = match against {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| Failure::io("load-graph", e))?;
                    (g.clone(), parse_edge_list(&text).at("load-graph")?, None)
                }
                None => {
                    let t = load_twist(twist, g.edge_count())?;
                    let zero = TwistFunction::zero(g.edge_count());
                    if *uncolored {
                        (build_y(&g, &zero).at("build-cfi")?, build_y(&g, &t).at("build-cfi")?, Some(t))
                    } else {
                        (build_x(&g, &zero).at("build-cfi")?.graph().clone(), build_x(&g, &t).at("build-cfi")?.graph().clone(), Some(t))
                    }
                }
            };
            let cert = find_isomorphism(&a, &b, budget.budget());
            let mut claims = Vec::new();
            if let Some(t) = &t {
                let expect_iso = !t.parity();
                let pass = match &cert.outcome {
                    IsoOutcome::Found(_) => expect_iso,
                    IsoOutcome::NoneComplete => !expect_iso,
                    IsoOutcome::Timeout => false,
                };
                claims.push(claim("isomorphic_iff_same_parity", pass, json!({ "expected_isomorphic": expect_iso })));
            }
            Ok(Output::report(merge(
                header("check-iso", &g),
                json!({
                    "twist": t.as_ref().map(twist_json),
                    "search": outcome_json(&cert.outcome),
                    "nodes": cert.nodes,
                    "claims": claims,
                }),
            )))
        }
        Command::RefutationWidth { graph, twist, width } => {
            let g = load_graph(graph)?;
            let t = load_twist(twist, g.edge_count())?;
            let sys = ProjectedSystem::from_edges(g.vertex_count(), g.edges(), edge_set(&t)).at("build-phi")?;
            let rw = refutation_width(&sys, width.unwrap_or(g.edge_count())).at("refutation-width")?;
            let mut claims = Vec::new();
            let cw = if g.vertex_count() <= MAX_CUTWIDTH_VERTICES && g.is_connected() {
                let cw = cutwidth(&g).at("cutwidth")?.0;
                if t.parity() {
                    claims.push(claim("width_at_least_cutwidth", rw.lower_bound() >= cw, json!({ "cutwidth": cw })));
                }
                Some(cw)
            } else {
                None
            };
            Ok(Output::report(merge(
                header("refutation-width", &g),
                json!({
                    "twist": twist_json(&t),
                    "satisfiable": sys.is_satisfiable(),
                    "refutation_width": width_json(rw),
                    "cutwidth": cw,
                    "claims": claims,
                }),
            )))
        }
        Command::BuildVectors { graph, twist, lasserre } => {
            let g = load_graph(graph)?;
            let t = load_twist(twist, g.edge_count())?;
            let (inst, rw, r) = instance(&g, &t, lasserre)?;
            let family = inst
                .sigma_family(inst.level(), lasserre.samples.max(1))
                .ok_or_else(|| Failure {
                    code: exit::BUDGET,
                    stage: "build-vectors",
                    message: format!("more than {} maps at level {}; raise --samples", lasserre.samples, inst.level()),
                })?;
            let vectors = family
                .iter()
                .map(|s| {
                    let v = inst.build_vector(s).at("build-vectors")?;
                    Ok(json!({ "sigma": s.key(), "coords": v.rendered() }))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            let classes: Vec<Value> = inst
                .table()
                .classes()
                .iter()
                .map(|c| json!({ "exemplar": c.exemplar.indices(), "size": c.members.len() }))
                .collect();
            Ok(Output::report(merge(
                header("build-vectors", &g),
                json!({
                    "twist": twist_json(&t),
                    "refutation_width": width_json(rw),
                    "r": r,
                    "level": inst.level(),
                    "size_budget": inst.table().size_budget(),
                    "width_budget": inst.table().width_budget(),
                    "classes": classes,
                    "vectors": vectors,
                }),
            )))
        }
        Command::VerifyLasserre { graph, twist, lasserre } => {
            let g = load_graph(graph)?;
            let t = load_twist(twist, g.edge_count())?;
            let (inst, rw, r) = instance(&g, &t, lasserre)?;
            let rep = verify_all(&inst, lasserre.samples, 0).at("verify-lasserre")?;
            let claims = vec![claim("lasserre_l1_l5", rep.passed(), json!({ "level": rep.level }))];
            Ok(Output::report(merge(
                header("verify-lasserre", &g),
                json!({
                    "twist": twist_json(&t),
                    "refutation_width": width_json(rw),
                    "r": r,
                    "report": rep,
                    "claims": claims,
                }),
            )))
        }
        Command::Expansion { graph, samples } => {
            let g = load_graph(graph)?;
            let e = expansion_json(&g, *samples, graph.seed)?;
            Ok(Output::report(merge(header("expansion", &g), json!({ "expansion": e }))))
        }
        Command::Cutwidth(args) => {
            let g = load_graph(args)?;
            let (cw, profile) = cutwidth(&g).at("cutwidth")?;
            let w = if g.vertex_count() <= 12 { Some(graph_width(&g).at("cutwidth")?) } else { None };
            let mut claims = Vec::new();
            if let Some(w) = w {
                claims.push(claim("cutwidth_equals_width", w == cw, json!({ "width": w })));
            }
            Ok(Output::report(merge(
                header("cutwidth", &g),
                json!({ "cutwidth": cw, "ordering": profile.ordering, "cuts": profile.cut_values, "width": w, "claims": claims }),
            )))
        }
        Command::Wl { graph, twist, k, colored, against } => {
            let g = load_graph(graph)?;
            let (a, b) = match against {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| Failure::io("load-graph", e))?;
                    (g.clone(), parse_edge_list(&text).at("load-graph")?)
                }
                None => {
                    let t = load_twist(twist, g.edge_count())?;
                    let zero = TwistFunction::zero(g.edge_count());
                    if *colored {
                        (build_x(&g, &zero).at("build-cfi")?.graph().clone(), build_x(&g, &t).at("build-cfi")?.graph().clone())
                    } else {
                        (build_y(&g, &zero).at("build-cfi")?, build_y(&g, &t).at("build-cfi")?)
                    }
                }
            };
            let res = wl_refine(&a, &b, *k).at("wl")?;
            Ok(Output::report(merge(
                header("wl", &g),
                json!({
                    "k": k,
                    "result": verdict_json(res.verdict),
                    "rounds": res.left.rounds,
                    "classes": res.left.class_count(),
                }),
            )))
        }
        Command::Pipeline { graph, twist, lasserre, budget } => pipeline(graph, twist, lasserre, budget).map(Output::report),
    }
}

fn edge_set(t: &TwistFunction) -> cfi_lasserre::resolution::EdgeSet {
    let on: Vec<usize> = (0..t.len()).filter(|&e| t.get(e)).collect();
    cfi_lasserre::resolution::EdgeSet::from_indices(&on)
}

/// The full chain for `X_0(G)` against `X_f(G)`.
pub fn pipeline(graph: &GraphArgs, twist: &TwistArgs, lasserre: &LasserreArgs, budget: &BudgetArgs) -> Result<Value, Failure> {
    let g = load_graph(graph)?;
    let t = load_twist(twist, g.edge_count())?;
    let zero = TwistFunction::zero(g.edge_count());
    let budget = budget.budget();
    let mut claims = Vec::new();
    let opposite = t.parity();

    let xa = build_x(&g, &zero).at("build-cfi")?;
    let xb = build_x(&g, &t).at("build-cfi")?;
    let ya = build_y(&g, &zero).at("build-cfi")?;
    let yb = build_y(&g, &t).at("build-cfi")?;

    let colored = find_isomorphism(xa.graph(), xb.graph(), budget);
    let iso_pass =
        matches!((&colored.outcome, opposite), (IsoOutcome::NoneComplete, true) | (IsoOutcome::Found(_), false));
    claims.push(claim(
        if opposite { "colored_non_isomorphic" } else { "isomorphism_certificate" },
        iso_pass,
        json!({ "search": outcome_json(&colored.outcome), "nodes": colored.nodes }),
    ));

    let mut wl = Vec::new();
    for k in 1..=2 {
        match wl_refine(&ya, &yb, k) {
            Ok(res) => {
                wl.push(json!({ "k": k, "result": verdict_json(res.verdict), "rounds": res.left.rounds }));
                claims.push(claim(&format!("wl{k}_indistinguishable"), res.verdict == WlVerdict::Indistinguishable, json!({ "k": k })));
            }
            Err(e @ Error::BudgetExceeded(_)) => claims.push(skipped(&format!("wl{k}_indistinguishable"), &e.to_string())),
            Err(e) => return Err(e).at("wl"),
        }
    }

    let (inst, rw, r) = instance(&g, &t, lasserre)?;
    let cw = if g.vertex_count() <= MAX_CUTWIDTH_VERTICES { Some(cutwidth(&g).at("cutwidth")?.0) } else { None };
    match (cw, opposite) {
        (Some(cw), true) => claims.push(claim("width_at_least_cutwidth", rw.lower_bound() >= cw, json!({ "cutwidth": cw }))),
        _ => claims.push(skipped("width_at_least_cutwidth", "needs an odd twist and an exact cutwidth")),
    }
    let sanity = classes_sanity(inst.table(), lasserre.samples, graph.seed).at("class-table")?;
    claims.push(claim("class_table_consistent", sanity.is_clean(), json!({ "pairs": sanity.pairs, "violations": sanity.violations })));

    let rep = verify_all(&inst, lasserre.samples, graph.seed).at("verify-lasserre")?;
    claims.push(claim("lasserre_l1_l5", rep.passed(), json!({ "level": rep.level, "classes": rep.classes })));

    let iso_vectors = if opposite {
        None
    } else {
        let rep = iso_family_report(&g, &t, lasserre, budget)?;
        claims.push(claim("isomorphism_vectors", rep.passed(), json!({ "level": rep.level, "exact": rep.exact })));
        Some(rep)
    };

    let base_expansion = expansion_json(&g, lasserre.samples, graph.seed)?;
    let cfi_bounds = expansion_bounds(xa.graph(), lasserre.samples, graph.seed).at("expansion")?;
    claims.push(claim("cfi_spectral_bound_positive", cfi_bounds.lower > 0.0, json!({ "lower": cfi_bounds.lower })));

    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Ok(merge(
        header("pipeline", &g),
        json!({
            "timestamp": timestamp,
            "seed": graph.seed,
            "mode": format!("{:?}", lasserre.mode).to_lowercase(),
            "twist": twist_json(&t),
            "cfi": { "vertices": xa.vertex_count(), "edges": xa.graph().edge_count() },
            "isomorphism": outcome_json(&colored.outcome),
            "wl": wl,
            "refutation_width": width_json(rw),
            "cutwidth": cw,
            "r": r,
            "lasserre": rep,
            "isomorphism_vectors": iso_vectors,
            "expansion": {
                "base": base_expansion,
                "cfi": { "spectral_lower": cfi_bounds.lower, "sampled_upper": render(&cfi_bounds.upper) },
            },
            "claims": claims,
        }),
    ))
}
