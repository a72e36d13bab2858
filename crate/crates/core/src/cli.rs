//! Command-line front end. Exit status: 0 when the verdict passes, 1 when it
//! fails, 2 on usage or resource errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::connectivity::{arc_lambda, directed_min_cut, lambda, min_cut};
use crate::decomposition::{breakpoints, verify_bond_faithful, verify_decomposition, Decomposition, DecompositionJson, FaithMode};
use crate::ends::{check_embedding, end_classes, vertex_end_count, DEFAULT_LOOKAHEAD};
use crate::error::{Error, Result};
use crate::expansion::{expand, ExpandConfig, ExpansionMode};
use crate::flimit::{
    build_limit_order, check_path_limit_degrees, extract_topological_path, orient_pipeline, serpentine, stable_limit,
    LimitConfig, PathSnapshot, PipelineConfig, Snapshot, StableLimit, DEFAULT_MARGIN,
};
use crate::graph::{split_top, EdgeId, MultiGraph};
use crate::lazy::{ball, ladder_through_end_orientation, outward_ray_orientation, LazyGraph};
use crate::orientation::{
    check_k_arc_connected, check_well_balanced, orient_eulerian, orient_exact, ExactOutcome, Mode, Orientation,
    OrientationJson, SearchConfig,
};
use crate::selftest::{run_criterion, run_suite, DEFAULT_SEED};
use crate::topo::TopoContext;

pub const EDGE_CAP_ENV: &str = "ORIENTKIT_EDGE_CAP";
pub const SEARCH_EDGES_ENV: &str = "ORIENTKIT_SEARCH_EDGES";
const PIPELINE_SEARCH_EDGES: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "orientkit", version, about = "Edge-connectivity, orientations and edge-ends of multigraphs")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every sampled choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a ball of a named family as a multigraph file.
    Gen(GenArgs),
    /// Local edge-connectivity, or arc-connectivity under an orientation.
    Lambda(LambdaArgs),
    /// Orient a finite multigraph.
    Orient(OrientArgs),
    /// Check an orientation against a mode.
    Check(CheckArgs),
    /// Replace vertices by rays.
    Expand(ExpandArgs),
    /// Verify edge decompositions.
    Decomp(DecompArgs),
    /// Edge-end classes of a family at finite resolution.
    Ends(EndsArgs),
    /// Reachability through ends.
    Toporeach(TopoArgs),
    /// Stable limits of sequences.
    Flimit(FlimitArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    depth: usize,
    /// Comma-separated roots; the family's default root when omitted.
    #[arg(long)]
    roots: Option<String>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LambdaArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
    /// Orientation JSON; switches to arc-disjoint paths.
    #[arg(long)]
    oriented: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Exact,
    Euler,
}

#[derive(Args, Debug)]
pub struct OrientArgs {
    #[arg(long)]
    graph: PathBuf,
    /// `wb` or `karc:K`.
    #[arg(long, default_value = "wb")]
    mode: String,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    method: Method,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    orient: PathBuf,
    #[arg(long, default_value = "wb")]
    mode: String,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Comma-separated vertices to expand.
    #[arg(long)]
    targets: String,
    /// `kray:L` or `expanding`.
    #[arg(long)]
    mode: String,
    /// Minimum number of ray vertices per target.
    #[arg(long)]
    ray_len: Option<usize>,
    #[arg(long)]
    emit: Option<PathBuf>,
    #[arg(long)]
    emit_map: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DecompAction {
    Verify,
    Bondfaithful,
    Breakpoints,
}

#[derive(Args, Debug)]
pub struct DecompArgs {
    #[arg(value_enum)]
    action: DecompAction,
    #[arg(long)]
    graph: PathBuf,
    /// Decomposition JSON `{"parts": [[edge ids], ...]}`.
    #[arg(long)]
    parts: PathBuf,
    #[arg(long, default_value_t = 3)]
    cap: usize,
    /// Also require every bond-sized cut of a part to stay a cut of the whole graph.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    source: Option<String>,
    #[arg(long)]
    target: Option<String>,
}

#[derive(Args, Debug)]
pub struct EndsArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    depth: usize,
    #[arg(long)]
    roots: Option<String>,
    /// Comma-separated edge ids inside the ball.
    #[arg(long, default_value = "")]
    cut: String,
    #[arg(long, default_value_t = DEFAULT_LOOKAHEAD)]
    lookahead: usize,
    /// Check the family as a subgraph of this family instead.
    #[arg(long)]
    embed_in: Option<String>,
    /// Largest cut examined by the embedding check.
    #[arg(long, default_value_t = 1)]
    cap: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Preset {
    LadderThroughEnd,
    OutwardRay,
}

#[derive(Args, Debug)]
pub struct TopoArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    roots: Option<String>,
    /// Orientation JSON of the ball of radius `--orient-depth`.
    #[arg(long)]
    orient: Option<PathBuf>,
    #[arg(long)]
    orient_depth: Option<usize>,
    /// Built-in orientation instead of a file.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
    /// Inner radius, or the lower end of a range with `--inner-to`.
    #[arg(long)]
    inner: usize,
    #[arg(long)]
    inner_to: Option<usize>,
    #[arg(long)]
    outer: usize,
    #[arg(long, default_value_t = DEFAULT_LOOKAHEAD)]
    lookahead: usize,
    #[arg(long, default_value = "")]
    forbid: String,
    /// Also compute the topological connectivity up to this cap.
    #[arg(long, num_args = 0..=1, default_missing_value = "4")]
    lambda: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlimitAction {
    Limit,
    Degrees,
    Order,
    Extract,
    Pipeline,
}

#[derive(Args, Debug)]
pub struct FlimitArgs {
    #[arg(value_enum)]
    action: FlimitAction,
    #[arg(long)]
    family: String,
    #[arg(long)]
    roots: Option<String>,
    /// Window radius.
    #[arg(long)]
    window: usize,
    /// Sequence length, or the last exhaustion step for `pipeline`.
    #[arg(long)]
    upto: usize,
    #[arg(long, default_value = "wb")]
    mode: String,
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    margin: usize,
    /// JSON array of paths, each an array of vertex names.
    #[arg(long)]
    paths: Option<PathBuf>,
    /// Use the serpentine path sequence through this many columns.
    #[arg(long)]
    serpentine: Option<usize>,
    /// Path endpoints for `degrees`; the first and last vertex of the last path by default.
    #[arg(long)]
    source: Option<String>,
    #[arg(long)]
    target: Option<String>,
    #[arg(long, default_value_t = DEFAULT_LOOKAHEAD)]
    lookahead: usize,
    /// Write the limit subgraph in DOT format.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    #[arg(long, default_value = "paper")]
    suite: String,
    /// Run a single criterion (1 to 14).
    #[arg(long)]
    only: Option<usize>,
}

#[derive(Serialize)]
struct RunReport {
    command: Vec<String>,
    config_hash: String,
    version: &'static str,
    verdict: bool,
    result: Value,
}

/// Outcome of one subcommand: verdict, JSON result, and a human summary.
struct Outcome {
    verdict: bool,
    result: Value,
    text: String,
}

impl Outcome {
    fn pass(result: Value, text: String) -> Self {
        Outcome {
            verdict: true,
            result,
            text,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<MultiGraph> {
    MultiGraph::parse(&read(path)?)
}

fn load_orientation(g: &MultiGraph, path: &Path) -> Result<Orientation> {
    let json: OrientationJson = serde_json::from_str(&read(path)?).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    Orientation::from_json(g, &json)
}

fn env_usize(var: &str) -> Result<Option<usize>> {
    match std::env::var(var) {
        Ok(v) => v.parse().map(Some).map_err(|_| Error::Malformed(format!("{var}={v} is not a count"))),
        Err(_) => Ok(None),
    }
}

fn family(spec: &str) -> Result<LazyGraph> {
    let g = LazyGraph::from_spec(spec)?;
    Ok(match env_usize(EDGE_CAP_ENV)? {
        Some(cap) => g.with_edge_cap(cap),
        None => g,
    })
}

fn search_config() -> Result<SearchConfig> {
    let mut cfg = SearchConfig::default();
    if let Some(m) = env_usize(SEARCH_EDGES_ENV)? {
        cfg.max_edges = m;
    }
    Ok(cfg)
}

fn split_list(s: &str) -> Vec<&str> {
    split_top(s, ',').into_iter().map(str::trim).filter(|x| !x.is_empty()).collect()
}

fn roots_of(g: &LazyGraph, roots: &Option<String>) -> Vec<String> {
    match roots {
        Some(r) => split_list(r).into_iter().map(String::from).collect(),
        None => vec![g.default_root()],
    }
}

fn parse_ids(list: &str) -> Result<Vec<EdgeId>> {
    split_list(list).into_iter().map(str::parse).collect()
}

fn to_dot(g: &MultiGraph, o: Option<&Orientation>) -> String {
    let mut out = String::from(if o.is_some() { "digraph limit {\n" } else { "graph limit {\n" });
    for v in g.names() {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for e in 0..g.edge_count() {
        let line = match o {
            Some(o) => format!("  \"{}\" -> \"{}\";", g.name(o.tail(g, e)), g.name(o.head(g, e))),
            None => {
                let ed = g.edge(e);
                format!("  \"{}\" -- \"{}\";", g.name(ed.u), g.name(ed.v))
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

fn cmd_gen(a: &GenArgs) -> Result<Outcome> {
    let g = family(&a.family)?;
    let roots = roots_of(&g, &a.roots);
    let r: Vec<&str> = roots.iter().map(String::as_str).collect();
    let b = ball(&g, &r, a.depth)?;
    let text = b.graph.to_text().trim_end().to_string();
    if let Some(p) = &a.out {
        write(p, &text)?;
    }
    let result = json!({
        "family": g.to_string(),
        "roots": roots,
        "depth": a.depth,
        "vertices": b.graph.vertex_count(),
        "edges": b.graph.edge_count(),
        "boundary": b.boundary_vertices().iter().map(|&v| b.graph.name(v)).collect::<Vec<_>>(),
        "hash": b.graph.content_hash(),
    });
    let summary = format!("{} ball of radius {}: {} vertices, {} edges", g, a.depth, b.graph.vertex_count(), b.graph.edge_count());
    Ok(Outcome::pass(result, if a.out.is_some() { summary } else { text }))
}

fn cmd_lambda(a: &LambdaArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph)?;
    let (x, y) = (g.require_vertex(&a.source)?, g.require_vertex(&a.target)?);
    let (value, cut) = match &a.oriented {
        Some(p) => {
            let o = load_orientation(&g, p)?;
            (arc_lambda(&g, &o, x, y)?, directed_min_cut(&g, &o, x, y)?)
        }
        None => (lambda(&g, x, y)?, min_cut(&g, x, y)?),
    };
    let result = json!({"source": a.source, "target": a.target, "oriented": a.oriented.is_some(), "lambda": value, "cut": cut.report(&g)});
    Ok(Outcome::pass(result, value.to_string()))
}

fn cmd_orient(a: &OrientArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph)?;
    let mode: Mode = a.mode.parse()?;
    let found = match a.method {
        Method::Euler => Ok(orient_eulerian(&g)?),
        Method::Exact => match orient_exact(&g, mode, &search_config()?)? {
            ExactOutcome::Found(o) => Ok(o),
            ExactOutcome::Unsat(c) => Err(json!({"status": "unsat", "certificate": c.report(&g)})),
            ExactOutcome::Budget { nodes } => return Err(Error::CapExceeded(format!("search budget exhausted after {nodes} nodes"))),
        },
    };
    match found {
        Ok(o) => {
            let oj = o.to_json(&g);
            let text = serde_json::to_string_pretty(&oj).expect("serializes");
            if let Some(p) = &a.out {
                write(p, &text)?;
            }
            Ok(Outcome::pass(json!({"status": "found", "mode": mode.to_string(), "orientation": oj}), text))
        }
        Err(cert) => {
            let text = format!("UNSAT: {}", cert["certificate"]);
            Ok(Outcome {
                verdict: false,
                result: cert,
                text,
            })
        }
    }
}

fn cmd_check(a: &CheckArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph)?;
    let o = load_orientation(&g, &a.orient)?;
    match a.mode.parse()? {
        Mode::WellBalanced => {
            let r = check_well_balanced(&g, &o)?;
            let text = format!("well-balanced: {} ({} violating pairs)", r.verdict, r.violations.len());
            Ok(Outcome {
                verdict: r.verdict,
                result: to_value(&r),
                text,
            })
        }
        Mode::KArc(k) => {
            let ok = check_k_arc_connected(&g, &o, k)?;
            Ok(Outcome {
                verdict: ok,
                result: json!({"mode": format!("karc:{k}"), "verdict": ok}),
                text: format!("{k}-arc-connected: {ok}"),
            })
        }
    }
}

fn cmd_expand(a: &ExpandArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph)?;
    let mode: ExpansionMode = a.mode.parse()?;
    let targets = split_list(&a.targets);
    let cfg = ExpandConfig {
        ray_len: a.ray_len,
        ..ExpandConfig::default()
    };
    let x = expand(&g, &targets, mode, &cfg)?;
    if let Some(p) = &a.emit {
        write(p, &x.graph.to_text())?;
    }
    let map = x.map_json();
    if let Some(p) = &a.emit_map {
        write(p, &serde_json::to_string_pretty(&map).expect("serializes"))?;
    }
    let text = format!("expanded {} with {}: {} vertices, {} edges", targets.join(","), mode, x.graph.vertex_count(), x.graph.edge_count());
    Ok(Outcome::pass(
        json!({"vertices": x.graph.vertex_count(), "edges": x.graph.edge_count(), "hash": x.graph.content_hash(), "map": map}),
        text,
    ))
}

fn cmd_decomp(a: &DecompArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph)?;
    let dj: DecompositionJson = serde_json::from_str(&read(&a.parts)?).map_err(|e| Error::Malformed(format!("{}: {e}", a.parts.display())))?;
    let d = Decomposition::from_json(g, &dj)?;
    match a.action {
        DecompAction::Verify => {
            let r = verify_decomposition(&d);
            let ok = r.partition && r.all_connected;
            let text = format!("partition: {}, parts connected: {}", r.partition, r.all_connected);
            Ok(Outcome {
                verdict: ok,
                result: to_value(&r),
                text,
            })
        }
        DecompAction::Bondfaithful => {
            let mode = if a.strict { FaithMode::Strict } else { FaithMode::Bond };
            let r = verify_bond_faithful(&d, a.cap, mode)?;
            let text = format!("bond-faithful up to size {}: {} ({} violations)", a.cap, r.verdict, r.violations.len());
            Ok(Outcome {
                verdict: r.verdict,
                result: to_value(&r),
                text,
            })
        }
        DecompAction::Breakpoints => {
            let (s, t) = match (&a.source, &a.target) {
                (Some(s), Some(t)) => (d.parent.require_vertex(s)?, d.parent.require_vertex(t)?),
                _ => return Err(Error::Malformed("breakpoints needs --source and --target".into())),
            };
            let r = breakpoints(&d, s, t, Some(a.cap))?;
            let text = format!("breakpoints {:?}, lambda {}: {}", r.breakpoints, r.lambda, r.verdict);
            Ok(Outcome {
                verdict: r.verdict,
                result: to_value(&r),
                text,
            })
        }
    }
}

fn cmd_ends(a: &EndsArgs) -> Result<Outcome> {
    let g = family(&a.family)?;
    let roots = roots_of(&g, &a.roots);
    let r: Vec<&str> = roots.iter().map(String::as_str).collect();
    if let Some(big) = &a.embed_in {
        let big = family(big)?;
        let rep = check_embedding(&g, &big, &r, a.depth, a.cap, a.lookahead)?;
        let text = format!(
            "{} in {}: bond-faithful {}, injective {}, verdict {}",
            g, big, rep.bond_faithful, rep.injective, rep.verdict
        );
        return Ok(Outcome {
            verdict: rep.verdict,
            result: to_value(&rep),
            text,
        });
    }
    let approx = end_classes(&g, &r, a.depth, &parse_ids(&a.cut)?, a.lookahead)?;
    let vertex_ends = vertex_end_count(&g, &r, a.depth, a.lookahead)?;
    let mut text = format!("{} classes, {} escaping; {} vertex-end components\n", approx.classes.len(), approx.escaping, vertex_ends);
    for (i, c) in approx.classes.iter().enumerate() {
        let _ = writeln!(text, "  class {i}{}: {}", if c.escaping { " (escaping)" } else { "" }, c.vertices.join(" "));
    }
    let mut result = to_value(&approx);
    result["vertex_end_components"] = json!(vertex_ends);
    Ok(Outcome::pass(result, text.trim_end().to_string()))
}

fn cmd_toporeach(a: &TopoArgs) -> Result<Outcome> {
    let g = family(&a.family)?;
    let roots = roots_of(&g, &a.roots);
    let r: Vec<&str> = roots.iter().map(String::as_str).collect();
    let oriented: Option<(MultiGraph, Orientation)> = match (&a.orient, a.preset) {
        (Some(_), Some(_)) => return Err(Error::Malformed("give either --orient or --preset".into())),
        (Some(p), None) => {
            let depth = a.orient_depth.unwrap_or(a.outer + a.lookahead);
            let b = ball(&g, &r, depth)?;
            let o = load_orientation(&b.graph, p)?;
            Some((b.graph, o))
        }
        (None, Some(preset)) => {
            let b = ball(&g, &r, a.outer + a.lookahead + 1)?;
            let o = match preset {
                Preset::LadderThroughEnd => ladder_through_end_orientation(&b)?,
                Preset::OutwardRay => outward_ray_orientation(&b)?,
            };
            Some((b.graph, o))
        }
        (None, None) => None,
    };
    let ctx = TopoContext::new(&g, &r, a.outer, a.lookahead, oriented.as_ref().map(|(g, o)| (g, o)))?;
    let (x, y) = (ctx.vertex(&a.source)?, ctx.vertex(&a.target)?);
    let forbid = ctx.forbid(&parse_ids(&a.forbid)?)?;
    let hi = a.inner_to.unwrap_or(a.inner);
    let rep = ctx.reach_report(x, y, a.inner..=hi, &forbid)?;
    let mut result = to_value(&rep);
    let mut text = format!(
        "{} -> {}: reachable {} (plain {}, stable across {}..={}: {})",
        a.source, a.target, rep.reachable, rep.plain, a.inner, hi, rep.stable
    );
    if let Some(cap) = a.lambda {
        let v = ctx.topo_lambda(x, y, a.inner, cap)?;
        result["topo_lambda"] = to_value(&v);
        let _ = write!(text, "; topological connectivity {v:?}");
    }
    Ok(Outcome {
        verdict: rep.reachable,
        result,
        text,
    })
}

fn path_sequence(a: &FlimitArgs) -> Result<Vec<PathSnapshot>> {
    match (&a.paths, a.serpentine) {
        (Some(p), None) => {
            let raw: Vec<Vec<String>> = serde_json::from_str(&read(p)?).map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))?;
            raw.iter().map(|v| PathSnapshot::through(v)).collect()
        }
        (None, Some(c)) => (0..a.upto).map(|n| serpentine(c, n)).collect(),
        _ => Err(Error::Malformed("give exactly one of --paths and --serpentine".into())),
    }
}

fn limit_of(a: &FlimitArgs, g: &LazyGraph, roots: &[&str], paths: &[PathSnapshot]) -> Result<StableLimit> {
    let window = ball(g, roots, a.window)?;
    let seq: Vec<Snapshot> = paths.iter().map(PathSnapshot::snapshot).collect();
    stable_limit(
        &window,
        &seq,
        &LimitConfig {
            tail: 0,
            margin: a.margin,
        },
    )
}

fn cmd_flimit(a: &FlimitArgs) -> Result<Outcome> {
    let g = family(&a.family)?;
    let roots = roots_of(&g, &a.roots);
    let r: Vec<&str> = roots.iter().map(String::as_str).collect();
    if let FlimitAction::Pipeline = a.action {
        let mut search = search_config()?;
        // balls of the exhaustion outgrow the default search limit quickly
        search.max_edges = search.max_edges.max(PIPELINE_SEARCH_EDGES);
        let cfg = PipelineConfig {
            roots: roots.clone(),
            window: a.window,
            upto: a.upto,
            mode: a.mode.parse()?,
            search,
            margin: a.margin,
            check_lookahead: Some(a.lookahead),
        };
        let rep = orient_pipeline(&g, &cfg)?;
        if let (Some(p), Some(oj)) = (&a.dot, &rep.orientation) {
            let w = ball(&g, &r, a.window)?;
            write(p, &to_dot(&w.graph, Some(&Orientation::from_json(&w.graph, oj)?)))?;
        }
        let text = format!(
            "{}: stabilized {} ({} stable edges, {} oscillating); half bound {}",
            rep.family,
            rep.stabilized,
            rep.stable_edges,
            rep.oscillating.len(),
            rep.half_bound.as_ref().map(|h| format!("{} with {} violations", h.verdict, h.violations)).unwrap_or_else(|| "not checked".into())
        );
        return Ok(Outcome {
            verdict: rep.verdict,
            result: to_value(&rep),
            text,
        });
    }
    let paths = path_sequence(a)?;
    let lim = limit_of(a, &g, &r, &paths)?;
    if let Some(p) = &a.dot {
        write(p, &to_dot(&lim.limit_graph(), None))?;
    }
    let last = paths.last().ok_or_else(|| Error::Malformed("empty path sequence".into()))?;
    let src = a.source.clone().unwrap_or_else(|| last.vertices[0].clone());
    let dst = a.target.clone().unwrap_or_else(|| last.vertices[last.vertices.len() - 1].clone());
    match a.action {
        FlimitAction::Limit => {
            let s = lim.summary();
            let text = format!(
                "{} stably-in vertices, {} stably-in edges, {} oscillating",
                lim.stably_in_vertices().len(),
                lim.stably_in_edges().len(),
                s.oscillating.len()
            );
            Ok(Outcome::pass(to_value(&s), text))
        }
        FlimitAction::Degrees => {
            let rep = check_path_limit_degrees(&lim, &src, &dst);
            let text = format!("degree rules: {} ({} violations)", rep.verdict, rep.violations.len());
            Ok(Outcome {
                verdict: rep.verdict,
                result: to_value(&rep),
                text,
            })
        }
        FlimitAction::Order => {
            let ord = build_limit_order(&lim, &paths, &g, a.lookahead)?;
            let ok = ord.unstable_pairs.is_empty() && ord.holes.is_empty() && ord.gaps.iter().all(|g| g.class.is_some());
            let text = format!("{} elements, {} gaps, {} unstable pairs", ord.elements.len(), ord.gaps.len(), ord.unstable_pairs.len());
            Ok(Outcome {
                verdict: ok,
                result: to_value(&ord),
                text,
            })
        }
        FlimitAction::Extract => {
            let ord = build_limit_order(&lim, &paths, &g, a.lookahead)?;
            let t = extract_topological_path(&ord)?;
            let window = ball(&g, &r, a.window)?;
            let problems = t.problems(&window);
            let mut text = String::new();
            for item in &t.items {
                match item {
                    crate::flimit::PathItem::Segment { vertices, .. } => {
                        let _ = writeln!(text, "[{}]", vertices.join(" "));
                    }
                    crate::flimit::PathItem::End { representative, .. } => {
                        let _ = writeln!(text, "<end beyond {representative}>");
                    }
                }
            }
            Ok(Outcome {
                verdict: problems.is_empty(),
                result: json!({"path": t, "problems": problems}),
                text: text.trim_end().to_string(),
            })
        }
        FlimitAction::Pipeline => unreachable!("handled above"),
    }
}

fn cmd_selftest(a: &SelftestArgs, seed: u64) -> Result<Outcome> {
    if a.suite != "paper" {
        return Err(Error::Malformed(format!("unknown suite `{}`", a.suite)));
    }
    let criteria = match a.only {
        Some(id) => vec![run_criterion(id, seed)?],
        None => run_suite(seed)?.criteria,
    };
    let mut text = String::new();
    for c in &criteria {
        let _ = writeln!(
            text,
            "{:2} {:<58} {} ({} checks, {} failures){}",
            c.id,
            c.name,
            if c.pass { "PASS" } else { "FAIL" },
            c.checked,
            c.failures,
            c.detail.as_deref().map(|d| format!(": {d}")).unwrap_or_default()
        );
    }
    Ok(Outcome {
        verdict: criteria.iter().all(|c| c.pass),
        result: json!({"suite": a.suite, "seed": seed, "criteria": criteria}),
        text: text.trim_end().to_string(),
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Lambda(a) => cmd_lambda(a),
        Command::Orient(a) => cmd_orient(a),
        Command::Check(a) => cmd_check(a),
        Command::Expand(a) => cmd_expand(a),
        Command::Decomp(a) => cmd_decomp(a),
        Command::Ends(a) => cmd_ends(a),
        Command::Toporeach(a) => cmd_toporeach(a),
        Command::Flimit(a) => cmd_flimit(a),
        Command::Selftest(a) => cmd_selftest(a, cli.seed),
    }
}

/// Runs the command line `argv` (program name first), writing the report to
/// `out` and diagnostics to `err`; returns the exit status.
pub fn run<I, S>(argv: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let started = Instant::now();
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    if cli.json {
        let command: Vec<String> = argv.iter().skip(1).cloned().collect();
        let report = RunReport {
            config_hash: Sha256::digest(command.join("\u{1f}").as_bytes()).iter().map(|b| format!("{b:02x}")).collect(),
            command,
            version: env!("CARGO_PKG_VERSION"),
            verdict: outcome.verdict,
            result: outcome.result,
        };
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializes"));
    } else {
        let _ = writeln!(out, "{}", outcome.text);
        let _ = writeln!(err, "verdict: {} ({:.2?})", if outcome.verdict { "pass" } else { "fail" }, started.elapsed());
    }
    i32::from(!outcome.verdict)
}

/// Entry point for the binary.
pub fn main() -> ! {
    let code = run(std::env::args(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code)
}
