//! Stable limits of subgraph sequences over a finite window.
//!
//! An element (vertex or edge of the window) is stably in when it belongs to
//! every member from some index on, stably out when it belongs to none from
//! some index on, and oscillating otherwise. Stable statuses agree with the
//! limit along any non-principal ultrafilter; oscillating ones are exactly
//! those that would depend on the choice, so they are reported and never
//! resolved. A finite sequence cannot witness "from some index on", so an
//! element only counts as stable when its last change happened at least
//! `margin` members before the end.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexIdx};
use crate::lazy::{ball, Ball, LazyGraph};
use crate::orientation::{orient_exact, Dir, ExactOutcome, Mode, Orientation, OrientationJson, SearchConfig};
use crate::topo::{check_half_bound, HalfBoundReport, TopoContext};

pub const DEFAULT_MARGIN: usize = 3;

/// One member of a sequence: a vertex set and an edge set, edges optionally directed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Snapshot {
    pub vertices: BTreeSet<String>,
    pub edges: BTreeMap<EdgeId, Option<Dir>>,
}

impl Snapshot {
    pub fn from_graph(g: &MultiGraph, o: Option<&Orientation>) -> Self {
        Snapshot {
            vertices: g.names().iter().cloned().collect(),
            edges: (0..g.edge_count()).map(|e| (g.edge_id(e), o.map(|o| o.dir(e)))).collect(),
        }
    }
}

/// A path given by its vertices and the edges between them, in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSnapshot {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeId>,
}

impl PathSnapshot {
    /// Path through `names`, always taking parallel edge 0.
    pub fn through<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let vertices: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let edges = vertices.windows(2).map(|w| EdgeId::new(w[0].clone(), w[1].clone(), 0)).collect::<Result<_>>()?;
        Ok(PathSnapshot { vertices, edges })
    }

    /// Membership snapshot; every edge is directed along the traversal.
    pub fn snapshot(&self) -> Snapshot {
        Snapshot {
            vertices: self.vertices.iter().cloned().collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(i, id)| (id.clone(), Some(if id.u == self.vertices[i] { Dir::Forward } else { Dir::Backward })))
                .collect(),
        }
    }

    /// Interleaved tokens `v0, e0, v1, e1, …`.
    fn tokens(&self) -> Vec<OrderItem> {
        let mut out = Vec::with_capacity(2 * self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            out.push(OrderItem::Vertex(v.clone()));
            if let Some(e) = self.edges.get(i) {
                out.push(OrderItem::Edge(e.clone()));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "since", rename_all = "snake_case")]
pub enum Status {
    StablyIn(usize),
    StablyOut(usize),
    /// Index of the last change.
    Oscillating(usize),
}

impl Status {
    pub fn is_in(self) -> bool {
        matches!(self, Status::StablyIn(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DirStatus {
    Stable { dir: Dir, since: usize },
    Oscillating { since: usize },
    /// The members carry no direction for this edge.
    Undirected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeStatus {
    pub membership: Status,
    pub direction: Option<DirStatus>,
}

#[derive(Clone, Copy, Debug)]
pub struct LimitConfig {
    /// First sequence index taken into account.
    pub tail: usize,
    pub margin: usize,
}

impl Default for LimitConfig {
    fn default() -> Self {
        LimitConfig {
            tail: 0,
            margin: DEFAULT_MARGIN,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StableLimit {
    pub window: Ball,
    pub len: usize,
    pub config: LimitConfig,
    pub vertices: BTreeMap<String, Status>,
    pub edges: BTreeMap<EdgeId, EdgeStatus>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitSummary {
    pub len: usize,
    pub tail: usize,
    pub margin: usize,
    pub vertices: BTreeMap<String, Status>,
    pub edges: BTreeMap<String, EdgeStatus>,
    pub oscillating: Vec<String>,
}

/// Index from which `values` is constant, counted from `tail`.
fn settle<T: PartialEq>(values: &[T], tail: usize) -> usize {
    let mut since = tail;
    for i in tail + 1..values.len() {
        if values[i] != values[i - 1] {
            since = i;
        }
    }
    since
}

fn classify(bits: &[bool], cfg: &LimitConfig) -> Status {
    let since = settle(bits, cfg.tail);
    if since + cfg.margin > bits.len() {
        Status::Oscillating(since)
    } else if bits[bits.len() - 1] {
        Status::StablyIn(since)
    } else {
        Status::StablyOut(since)
    }
}

/// Statuses of every window vertex and edge along `seq`. Members are
/// intersected with the window; a member naming a window edge whose endpoints
/// it lacks is rejected.
pub fn stable_limit(window: &Ball, seq: &[Snapshot], cfg: &LimitConfig) -> Result<StableLimit> {
    if seq.len() < cfg.tail + cfg.margin.max(1) {
        return Err(Error::Malformed(format!(
            "sequence of length {} is too short for tail {} and margin {}",
            seq.len(),
            cfg.tail,
            cfg.margin
        )));
    }
    let g = &window.graph;
    for s in seq {
        for id in s.edges.keys() {
            if g.edge_by_id(id).is_some() && !(s.vertices.contains(&id.u) && s.vertices.contains(&id.v)) {
                return Err(Error::WindowMismatch(id.to_string()));
            }
        }
    }
    let vertices = g
        .names()
        .iter()
        .map(|v| {
            let bits: Vec<bool> = seq.iter().map(|s| s.vertices.contains(v)).collect();
            (v.clone(), classify(&bits, cfg))
        })
        .collect();
    let edges = (0..g.edge_count())
        .map(|e| {
            let id = g.edge_id(e);
            let vals: Vec<Option<Option<Dir>>> = seq.iter().map(|s| s.edges.get(&id).copied()).collect();
            let bits: Vec<bool> = vals.iter().map(Option::is_some).collect();
            let membership = classify(&bits, cfg);
            let direction = if let Status::StablyIn(from) = membership {
                let start = from.max(cfg.tail);
                let dirs: Vec<Option<Dir>> = vals[start..].iter().map(|v| v.flatten()).collect();
                let since = settle(&dirs, 0) + start;
                Some(match dirs[dirs.len() - 1] {
                    None if dirs.iter().all(Option::is_none) => DirStatus::Undirected,
                    _ if since + cfg.margin > seq.len() => DirStatus::Oscillating { since },
                    Some(dir) => DirStatus::Stable { dir, since },
                    None => DirStatus::Oscillating { since },
                })
            } else {
                None
            };
            (id, EdgeStatus { membership, direction })
        })
        .collect();
    Ok(StableLimit {
        window: window.clone(),
        len: seq.len(),
        config: *cfg,
        vertices,
        edges,
    })
}

impl StableLimit {
    pub fn stably_in_vertices(&self) -> Vec<&str> {
        self.vertices.iter().filter(|(_, s)| s.is_in()).map(|(v, _)| v.as_str()).collect()
    }

    pub fn stably_in_edges(&self) -> Vec<&EdgeId> {
        self.edges.iter().filter(|(_, s)| s.membership.is_in()).map(|(e, _)| e).collect()
    }

    /// Oscillating vertices and edges, plus stably-in edges whose direction oscillates.
    pub fn oscillating(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .vertices
            .iter()
            .filter(|(_, s)| matches!(s, Status::Oscillating(_)))
            .map(|(v, _)| v.clone())
            .collect();
        for (id, s) in &self.edges {
            if matches!(s.membership, Status::Oscillating(_)) || matches!(s.direction, Some(DirStatus::Oscillating { .. })) {
                out.push(id.to_string());
            }
        }
        out
    }

    pub fn is_stable(&self) -> bool {
        self.oscillating().is_empty()
    }

    /// The stably-in subgraph.
    pub fn limit_graph(&self) -> MultiGraph {
        let mut b = MultiGraph::builder();
        for v in self.stably_in_vertices() {
            b.add_vertex(v).expect("window names are valid");
        }
        for id in self.stably_in_edges() {
            b.add_edge(&id.u, &id.v).expect("window edges are valid");
        }
        b.build()
    }

    /// Direction of every window edge, when all of them are stably in with a stable direction.
    pub fn limit_orientation(&self) -> Option<Orientation> {
        let g = &self.window.graph;
        let dirs = (0..g.edge_count())
            .map(|e| match self.edges[&g.edge_id(e)].direction {
                Some(DirStatus::Stable { dir, .. }) => Some(dir),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Orientation::new(g, dirs).ok()
    }

    pub fn summary(&self) -> LimitSummary {
        LimitSummary {
            len: self.len,
            tail: self.config.tail,
            margin: self.config.margin,
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            oscillating: self.oscillating(),
        }
    }

    /// Stably-in edges at a vertex, with their stable directions.
    fn limit_edges_at(&self, v: &str) -> Vec<(&EdgeId, Option<Dir>)> {
        self.edges
            .iter()
            .filter(|(id, s)| s.membership.is_in() && (id.u == v || id.v == v))
            .map(|(id, s)| {
                let d = match s.direction {
                    Some(DirStatus::Stable { dir, .. }) => Some(dir),
                    _ => None,
                };
                (id, d)
            })
            .collect()
    }
}

/// Majority vote over a seeded random subset of the tail indices. An
/// experiment only: the choice of subset plays the role of the ultrafilter.
pub fn pseudo_ultrafilter_limit(seq: &[Snapshot], tail: usize, picks: usize, seed: u64) -> Result<Snapshot> {
    let avail = seq.len().saturating_sub(tail);
    if picks == 0 || picks > avail {
        return Err(Error::Malformed(format!("cannot pick {picks} of {avail} tail members")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen: Vec<&Snapshot> = sample(&mut rng, avail, picks).into_iter().map(|i| &seq[tail + i]).collect();
    let half = picks / 2;
    let mut vcount: BTreeMap<&String, usize> = BTreeMap::new();
    let mut ecount: BTreeMap<&EdgeId, (usize, usize, usize)> = BTreeMap::new();
    for s in &chosen {
        for v in &s.vertices {
            *vcount.entry(v).or_default() += 1;
        }
        for (id, d) in &s.edges {
            let c = ecount.entry(id).or_default();
            c.0 += 1;
            match d {
                Some(Dir::Forward) => c.1 += 1,
                Some(Dir::Backward) => c.2 += 1,
                None => {}
            }
        }
    }
    Ok(Snapshot {
        vertices: vcount.into_iter().filter(|&(_, c)| c > half).map(|(v, _)| v.clone()).collect(),
        edges: ecount
            .into_iter()
            .filter(|&(_, c)| c.0 > half)
            .map(|(id, (_, f, b))| {
                let d = if f == 0 && b == 0 {
                    None
                } else if f >= b {
                    Some(Dir::Forward)
                } else {
                    Some(Dir::Backward)
                };
                (id.clone(), d)
            })
            .collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeViolation {
    pub vertex: String,
    pub degree: usize,
    pub in_degree: usize,
    pub out_degree: usize,
    pub rule: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub degrees: BTreeMap<String, usize>,
    pub violations: Vec<DegreeViolation>,
    pub oscillating_excluded: usize,
    pub verdict: bool,
}

/// Degree rules for a limit of `u`–`v` paths: every vertex has degree at most
/// two, `u` has out-degree one and in-degree zero, `v` the reverse, and every
/// other vertex has in- and out-degree one. Vertices on the window boundary
/// may lose limit edges to the outside, so only the upper bounds apply there.
pub fn check_path_limit_degrees(lim: &StableLimit, u: &str, v: &str) -> DegreeReport {
    let mut degrees = BTreeMap::new();
    let mut violations = Vec::new();
    for x in lim.stably_in_vertices() {
        let es = lim.limit_edges_at(x);
        let deg = es.len();
        let out = es
            .iter()
            .filter(|(id, d)| matches!(d, Some(Dir::Forward) if id.u == x) || matches!(d, Some(Dir::Backward) if id.v == x))
            .count();
        let inn = es.iter().filter(|(_, d)| d.is_some()).count() - out;
        degrees.insert(x.to_string(), deg);
        let boundary = lim.window.graph.vertex(x).is_some_and(|i| lim.window.is_boundary(i));
        let (want_in, want_out) = if x == u && x == v {
            (0, 0)
        } else if x == u {
            (0, 1)
        } else if x == v {
            (1, 0)
        } else {
            (1, 1)
        };
        let mut fail = |rule: &str| {
            violations.push(DegreeViolation {
                vertex: x.to_string(),
                degree: deg,
                in_degree: inn,
                out_degree: out,
                rule: rule.to_string(),
            })
        };
        if deg > 2 {
            fail("degree at most 2");
        } else if boundary {
            if inn > want_in.max(1) || out > want_out.max(1) {
                fail("boundary in/out at most 1");
            }
        } else if inn != want_in || out != want_out {
            fail(&format!("in-degree {want_in}, out-degree {want_out}"));
        }
    }
    let oscillating_excluded = lim.edges.values().filter(|s| matches!(s.membership, Status::Oscillating(_))).count();
    DegreeReport {
        verdict: violations.is_empty(),
        degrees,
        violations,
        oscillating_excluded,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderItem {
    Vertex(String),
    Edge(EdgeId),
}

impl OrderItem {
    fn label(&self) -> String {
        match self {
            OrderItem::Vertex(v) => v.clone(),
            OrderItem::Edge(e) => e.to_string(),
        }
    }
}

impl Serialize for EdgeId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A region beyond the window: a component of `ball(window + L) − V_window`
/// that reaches the boundary of the larger ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndRegion {
    pub representative: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gap {
    /// The gap sits between `elements[after]` and `elements[after + 1]`.
    pub after: usize,
    pub flanks: (Option<String>, Option<String>),
    pub class: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitOrder {
    pub start: String,
    pub end: String,
    pub elements: Vec<OrderItem>,
    pub gaps: Vec<Gap>,
    pub classes: Vec<EndRegion>,
    /// Pairs of stable elements whose relative order never settled.
    pub unstable_pairs: Vec<(String, String)>,
    /// Adjacent pairs separated by unstable window elements.
    pub holes: Vec<usize>,
}

/// Escaping regions beyond the window, by vertex name.
fn end_regions(family: &LazyGraph, window: &Ball, lookahead: usize) -> Result<(BTreeMap<String, usize>, Vec<EndRegion>)> {
    let roots: Vec<&str> = window.roots.iter().map(String::as_str).collect();
    let big = ball(family, &roots, window.depth + lookahead.max(1))?;
    let g = &big.graph;
    let rest: BTreeSet<VertexIdx> = g.vertices().filter(|&v| !window.contains(g.name(v))).collect();
    let sub = g.induced(&rest);
    let (n, label) = sub.components_without(&BTreeSet::new());
    let mut escaping = vec![false; n];
    for v in sub.vertices() {
        if big.is_boundary(g.vertex(sub.name(v)).expect("subset")) {
            escaping[label[v]] = true;
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut regions = Vec::new();
    for v in sub.vertices() {
        let c = label[v];
        if escaping[c] && index[c] == usize::MAX {
            index[c] = regions.len();
            regions.push(EndRegion {
                representative: sub.name(v).to_string(),
                size: 0,
            });
        }
        if escaping[c] {
            regions[index[c]].size += 1;
        }
    }
    let by_name = sub
        .vertices()
        .filter(|&v| escaping[label[v]])
        .map(|v| (sub.name(v).to_string(), index[label[v]]))
        .collect();
    Ok((by_name, regions))
}

/// The order of the stable elements of a path limit by stabilized position,
/// with gaps where the paths leave the window, and the end region each gap
/// runs through.
pub fn build_limit_order(lim: &StableLimit, seq: &[PathSnapshot], family: &LazyGraph, lookahead: usize) -> Result<LimitOrder> {
    if seq.len() != lim.len {
        return Err(Error::WindowMismatch(format!("{} paths for a limit over {} members", seq.len(), lim.len)));
    }
    let last = seq.last().ok_or_else(|| Error::Malformed("empty sequence".into()))?;
    let positions: Vec<BTreeMap<OrderItem, usize>> =
        seq.iter().map(|p| p.tokens().into_iter().enumerate().map(|(i, t)| (t, i)).collect()).collect();
    let mut stable: Vec<OrderItem> = lim
        .stably_in_vertices()
        .into_iter()
        .map(|v| OrderItem::Vertex(v.to_string()))
        .chain(lim.stably_in_edges().into_iter().map(|e| OrderItem::Edge(e.clone())))
        .collect();
    let last_pos = &positions[positions.len() - 1];
    for x in &stable {
        if !last_pos.contains_key(x) {
            return Err(Error::WindowMismatch(x.label()));
        }
    }
    stable.sort_by_key(|x| last_pos[x]);

    let tail = lim.config.tail;
    let margin = lim.config.margin;
    let mut unstable_pairs = Vec::new();
    for i in 0..stable.len() {
        for j in i + 1..stable.len() {
            let rel: Vec<Option<bool>> = positions
                .iter()
                .map(|p| match (p.get(&stable[i]), p.get(&stable[j])) {
                    (Some(a), Some(b)) => Some(a < b),
                    _ => None,
                })
                .collect();
            let since = settle(&rel, tail);
            if since + margin > rel.len() || rel[rel.len() - 1] != Some(true) {
                unstable_pairs.push((stable[i].label(), stable[j].label()));
            }
        }
    }

    let (region_of, classes) = end_regions(family, &lim.window, lookahead)?;
    let in_window = |t: &OrderItem| match t {
        OrderItem::Vertex(v) => lim.window.contains(v),
        OrderItem::Edge(e) => lim.window.graph.edge_by_id(e).is_some(),
    };
    let tokens = last.tokens();
    let mut gaps = Vec::new();
    let mut holes = Vec::new();
    for k in 0..stable.len().saturating_sub(1) {
        let (a, b) = (last_pos[&stable[k]], last_pos[&stable[k + 1]]);
        if b == a + 1 {
            continue;
        }
        let between = &tokens[a + 1..b];
        if between.iter().any(in_window) {
            holes.push(k);
            continue;
        }
        let first = between.iter().find_map(|t| match t {
            OrderItem::Vertex(v) => Some(v.clone()),
            _ => None,
        });
        let lastv = between.iter().rev().find_map(|t| match t {
            OrderItem::Vertex(v) => Some(v.clone()),
            _ => None,
        });
        let class = match (first.as_ref().and_then(|v| region_of.get(v)), lastv.as_ref().and_then(|v| region_of.get(v))) {
            (Some(x), Some(y)) if x == y => Some(*x),
            _ => None,
        };
        gaps.push(Gap {
            after: k,
            flanks: (first, lastv),
            class,
        });
    }
    Ok(LimitOrder {
        start: last.vertices[0].clone(),
        end: last.vertices[last.vertices.len() - 1].clone(),
        elements: stable,
        gaps,
        classes,
        unstable_pairs,
        holes,
    })
}

impl LimitOrder {
    /// No stable element sits strictly between an edge and either endpoint.
    pub fn incidence_coherent(&self) -> bool {
        let pos: BTreeMap<&OrderItem, usize> = self.elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        self.elements.iter().enumerate().all(|(i, x)| match x {
            OrderItem::Vertex(_) => true,
            OrderItem::Edge(e) => [&e.u, &e.v].iter().all(|v| {
                pos.get(&OrderItem::Vertex((*v).clone())).is_none_or(|&p| p + 1 == i || i + 1 == p)
            }),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PathItem {
    Segment { vertices: Vec<String>, edges: Vec<String> },
    End { class: usize, representative: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopologicalPathSeq {
    pub start: String,
    pub end: String,
    pub items: Vec<PathItem>,
    #[serde(skip)]
    classes: Vec<EndRegion>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Elem(OrderItem),
    Mark(usize),
}

fn contract(mut tokens: Vec<Token>) -> Vec<Token> {
    // outermost first: the first marker swallows everything up to the last
    // marker of the same region
    let mut i = 0;
    while i < tokens.len() {
        if let Token::Mark(c) = tokens[i] {
            let j = tokens.iter().rposition(|t| *t == Token::Mark(c)).expect("present");
            tokens.drain(i + 1..=j);
        }
        i += 1;
    }
    // cut out loops through a repeated vertex
    let mut out: Vec<Token> = Vec::new();
    for t in tokens {
        if let Token::Elem(OrderItem::Vertex(v)) = &t {
            if let Some(p) = out.iter().position(|x| matches!(x, Token::Elem(OrderItem::Vertex(w)) if w == v)) {
                out.truncate(p);
            }
        }
        out.push(t);
    }
    out
}

fn assemble(start: String, end: String, tokens: Vec<Token>, classes: &[EndRegion]) -> TopologicalPathSeq {
    let mut items = Vec::new();
    let (mut vs, mut es) = (Vec::new(), Vec::new());
    for t in tokens {
        match t {
            Token::Elem(OrderItem::Vertex(v)) => vs.push(v),
            Token::Elem(OrderItem::Edge(e)) => es.push(e.to_string()),
            Token::Mark(c) => {
                if !vs.is_empty() || !es.is_empty() {
                    items.push(PathItem::Segment {
                        vertices: std::mem::take(&mut vs),
                        edges: std::mem::take(&mut es),
                    });
                }
                items.push(PathItem::End {
                    class: c,
                    representative: classes[c].representative.clone(),
                });
            }
        }
    }
    if !vs.is_empty() || !es.is_empty() {
        items.push(PathItem::Segment { vertices: vs, edges: es });
    }
    TopologicalPathSeq {
        start,
        end,
        items,
        classes: classes.to_vec(),
    }
}

/// Contracts every interval between two gaps through the same end region to
/// a single end marker, and cuts out loops through repeated vertices.
pub fn extract_topological_path(ord: &LimitOrder) -> Result<TopologicalPathSeq> {
    let mut tokens = Vec::new();
    let mut gaps = ord.gaps.iter().peekable();
    for (i, x) in ord.elements.iter().enumerate() {
        tokens.push(Token::Elem(x.clone()));
        if let Some(g) = gaps.next_if(|g| g.after == i) {
            let c = g.class.ok_or_else(|| {
                Error::Malformed(format!(
                    "gap after `{}` has no end region (flanks {:?} / {:?})",
                    x.label(),
                    g.flanks.0,
                    g.flanks.1
                ))
            })?;
            tokens.push(Token::Mark(c));
        }
    }
    Ok(assemble(ord.start.clone(), ord.end.clone(), contract(tokens), &ord.classes))
}

impl TopologicalPathSeq {
    fn tokens(&self) -> Vec<Token> {
        let mut out = Vec::new();
        for item in &self.items {
            match item {
                PathItem::End { class, .. } => out.push(Token::Mark(*class)),
                PathItem::Segment { vertices, edges } => {
                    let ids: Vec<EdgeId> = edges
                        .iter()
                        .map(|s| {
                            let (rest, j) = s.rsplit_once('-').expect("edge id");
                            let k = vertices.iter().position(|v| rest.starts_with(v.as_str()) && rest[v.len()..].starts_with('-')).expect("endpoint in segment");
                            EdgeId { u: vertices[k].clone(), v: rest[vertices[k].len() + 1..].to_string(), j: j.parse().expect("index") }
                        })
                        .collect();
                    for (i, v) in vertices.iter().enumerate() {
                        out.push(Token::Elem(OrderItem::Vertex(v.clone())));
                        if let Some(e) = ids.get(i) {
                            out.push(Token::Elem(OrderItem::Edge(e.clone())));
                        }
                    }
                }
            }
        }
        out
    }

    /// Runs the contraction again; the identity on extracted sequences.
    pub fn extract(&self) -> TopologicalPathSeq {
        assemble(self.start.clone(), self.end.clone(), contract(self.tokens()), &self.classes)
    }

    /// Segments as vertex lists.
    pub fn segments(&self) -> Vec<&[String]> {
        self.items
            .iter()
            .filter_map(|i| match i {
                PathItem::Segment { vertices, .. } => Some(vertices.as_slice()),
                PathItem::End { .. } => None,
            })
            .collect()
    }

    pub fn markers(&self) -> usize {
        self.items.iter().filter(|i| matches!(i, PathItem::End { .. })).count()
    }

    /// Invariant check: no vertex repeats, the endpoints are preserved, and a
    /// segment next to an end marker meets it at the window boundary.
    pub fn problems(&self, window: &Ball) -> Vec<String> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for s in self.segments() {
            for v in s {
                if !seen.insert(v) {
                    out.push(format!("vertex `{v}` repeats"));
                }
            }
        }
        let segs = self.segments();
        if segs.first().and_then(|s| s.first()) != Some(&self.start) {
            out.push("start vertex lost".into());
        }
        if segs.last().and_then(|s| s.last()) != Some(&self.end) {
            out.push("end vertex lost".into());
        }
        for w in self.items.windows(2) {
            let v = match w {
                [PathItem::Segment { vertices, .. }, PathItem::End { .. }] => vertices.last(),
                [PathItem::End { .. }, PathItem::Segment { vertices, .. }] => vertices.first(),
                _ => None,
            };
            if let Some(v) = v {
                if !window.graph.vertex(v).is_some_and(|i| window.is_boundary(i)) {
                    out.push(format!("junction `{v}` is not on the window boundary"));
                }
            }
        }
        out
    }
}

/// The serpentine path on a ladder with an even number of columns: up the
/// first column to level `n`, across, down the second to level 0, across to
/// the third, and so on, ending at the bottom of the last column.
pub fn serpentine(columns: usize, n: usize) -> Result<PathSnapshot> {
    if columns == 0 || columns % 2 == 1 || columns > 26 {
        return Err(Error::Malformed(format!("serpentine needs an even column count, got {columns}")));
    }
    let name = |c: usize, i: usize| format!("{}:{i}", (b'a' + c as u8) as char);
    let mut vs = Vec::new();
    for c in 0..columns {
        if c % 2 == 0 {
            vs.extend((0..=n).map(|i| name(c, i)));
        } else {
            vs.extend((0..=n).rev().map(|i| name(c, i)));
        }
    }
    PathSnapshot::through(&vs)
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub roots: Vec<String>,
    pub window: usize,
    pub upto: usize,
    pub mode: Mode,
    pub search: SearchConfig,
    pub margin: usize,
    /// Run the half-bound check with this lookahead (outer radius `upto - lookahead`).
    pub check_lookahead: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub n: usize,
    pub edges: usize,
    pub outcome: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub family: String,
    pub window: usize,
    pub upto: usize,
    pub mode: String,
    pub steps: Vec<StepReport>,
    pub stabilized: bool,
    pub stable_edges: usize,
    pub oscillating: Vec<String>,
    pub orientation: Option<OrientationJson>,
    pub half_bound: Option<HalfBoundReport>,
    pub verdict: bool,
}

/// Orients each ball `G_n` (`n = 1..=upto`) exactly, takes the stable limit of
/// the orientations on the window, and optionally checks the half bound on the
/// last orientation through the ends.
pub fn orient_pipeline(g: &LazyGraph, cfg: &PipelineConfig) -> Result<PipelineReport> {
    if cfg.window == 0 || cfg.upto <= cfg.window {
        return Err(Error::Malformed("need 0 < window < upto".into()));
    }
    let roots: Vec<&str> = cfg.roots.iter().map(String::as_str).collect();
    let window = ball(g, &roots, cfg.window)?;
    let outcomes: Vec<(Ball, Result<ExactOutcome>)> = (1..=cfg.upto)
        .into_par_iter()
        .map(|n| -> Result<(Ball, Result<ExactOutcome>)> {
            let b = ball(g, &roots, n)?;
            let out = orient_exact(&b.graph, cfg.mode, &cfg.search);
            Ok((b, out))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut steps = Vec::new();
    let mut seq = Vec::new();
    let mut last: Option<(MultiGraph, Orientation)> = None;
    let mut failed = false;
    for (i, (b, out)) in outcomes.into_iter().enumerate() {
        let outcome = match out {
            Ok(ExactOutcome::Found(o)) => {
                seq.push(Snapshot::from_graph(&b.graph, Some(&o)));
                last = Some((b.graph.clone(), o));
                "found".to_string()
            }
            Ok(ExactOutcome::Unsat(c)) => {
                failed = true;
                format!("unsat: {} -> {}", b.graph.name(c.source), b.graph.name(c.target))
            }
            Ok(ExactOutcome::Budget { nodes }) => {
                failed = true;
                format!("budget exhausted after {nodes} nodes")
            }
            Err(e) => {
                failed = true;
                format!("error: {e}")
            }
        };
        steps.push(StepReport {
            n: i + 1,
            edges: b.graph.edge_count(),
            outcome,
        });
    }
    let mut report = PipelineReport {
        family: g.to_string(),
        window: cfg.window,
        upto: cfg.upto,
        mode: cfg.mode.to_string(),
        steps,
        stabilized: false,
        stable_edges: 0,
        oscillating: Vec::new(),
        orientation: None,
        half_bound: None,
        verdict: false,
    };
    if failed {
        return Ok(report);
    }
    let lim = stable_limit(
        &window,
        &seq,
        &LimitConfig {
            tail: cfg.window - 1,
            margin: cfg.margin,
        },
    )?;
    report.oscillating = lim.oscillating();
    report.stable_edges = lim
        .edges
        .values()
        .filter(|s| matches!(s.direction, Some(DirStatus::Stable { .. })))
        .count();
    let limit = lim.limit_orientation();
    report.stabilized = limit.is_some() && report.oscillating.is_empty();
    report.orientation = limit.as_ref().map(|o| o.to_json(&window.graph));
    if let (Some(l), Some((lg, lo))) = (cfg.check_lookahead, last.as_ref()) {
        let outer = cfg.upto.checked_sub(l).filter(|&o| o > cfg.window).ok_or_else(|| {
            Error::Malformed(format!("upto {} leaves no outer radius beyond the window with lookahead {l}", cfg.upto))
        })?;
        let ctx = TopoContext::new(g, &roots, outer, l, Some((lg, lo)))?;
        report.half_bound = Some(check_half_bound(&ctx, cfg.window..=outer - 1, None)?);
    }
    report.verdict = report.stabilized && report.half_bound.as_ref().is_none_or(|h| h.verdict && h.stable);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window4(m: usize) -> Ball {
        ball(&LazyGraph::k_column_ladder(4), &["a:0", "b:0", "c:0", "d:0"], m).unwrap()
    }

    fn serpentines(columns: usize, len: usize) -> Vec<PathSnapshot> {
        (0..len).map(|n| serpentine(columns, n).unwrap()).collect()
    }

    #[test]
    fn constant_and_alternating() {
        let w = ball(&LazyGraph::k_ray(1), &["r:0"], 2).unwrap();
        let full = Snapshot::from_graph(&w.graph, None);
        let lim = stable_limit(&w, &vec![full.clone(); 6], &LimitConfig::default()).unwrap();
        assert!(lim.vertices.values().all(|s| *s == Status::StablyIn(0)));
        assert!(lim.is_stable());
        let mut empty_edge = full.clone();
        let first = full.edges.keys().next().unwrap().clone();
        empty_edge.edges.remove(&first);
        let seq: Vec<Snapshot> = (0..8).map(|i| if i % 2 == 0 { full.clone() } else { empty_edge.clone() }).collect();
        let lim = stable_limit(&w, &seq, &LimitConfig::default()).unwrap();
        assert!(matches!(lim.edges[&first].membership, Status::Oscillating(7)));
        assert_eq!(lim.oscillating(), vec![first.to_string()]);
    }

    #[test]
    fn window_mismatch_rejected() {
        let w = ball(&LazyGraph::k_ray(1), &["r:0"], 2).unwrap();
        let mut s = Snapshot::default();
        s.edges.insert(EdgeId::new("r:0", "r:1", 0).unwrap(), None);
        assert!(matches!(stable_limit(&w, &vec![s; 4], &LimitConfig::default()), Err(Error::WindowMismatch(_))));
    }

    #[test]
    fn four_column_limit() {
        let m = 4;
        let w = window4(m);
        let paths = serpentines(4, m + 8);
        let seq: Vec<Snapshot> = paths.iter().map(PathSnapshot::snapshot).collect();
        let lim = stable_limit(&w, &seq, &LimitConfig::default()).unwrap();
        assert!(lim.is_stable());
        let in_edges: BTreeSet<String> = lim.stably_in_edges().iter().map(|e| e.to_string()).collect();
        let mut expect = BTreeSet::new();
        for c in ["a", "b", "c", "d"] {
            for i in 0..m {
                expect.insert(format!("{c}:{i}-{c}:{}-0", i + 1));
            }
        }
        expect.insert("b:0-c:0-0".to_string());
        assert_eq!(in_edges, expect);
        for i in 0..=m {
            assert!(matches!(lim.edges[&EdgeId::new(format!("a:{i}"), format!("b:{i}"), 0).unwrap()].membership, Status::StablyOut(_)));
        }
        assert_eq!(lim.stably_in_vertices().len(), 4 * (m + 1));

        let deg = check_path_limit_degrees(&lim, "a:0", "d:0");
        assert!(deg.verdict, "{:?}", deg.violations);
        assert_eq!(deg.degrees["a:0"], 1);
        assert_eq!(deg.degrees["d:0"], 1);
        assert_eq!(deg.degrees["b:0"], 2);
        assert_eq!(deg.degrees["c:2"], 2);

        let ord = build_limit_order(&lim, &paths, &LazyGraph::k_column_ladder(4), 2).unwrap();
        assert!(ord.unstable_pairs.is_empty() && ord.holes.is_empty());
        assert!(ord.incidence_coherent());
        assert_eq!(ord.gaps.len(), 2);
        assert_eq!(ord.classes.len(), 1);
        assert!(ord.gaps.iter().all(|g| g.class == Some(0)));
        assert_eq!(ord.elements[0], OrderItem::Vertex("a:0".into()));

        let t = extract_topological_path(&ord).unwrap();
        assert_eq!(t.markers(), 1);
        let segs = t.segments();
        assert_eq!(segs.len(), 2);
        assert_eq!(segs[0], (0..=m).map(|i| format!("a:{i}")).collect::<Vec<_>>().as_slice());
        assert_eq!(segs[1], (0..=m).rev().map(|i| format!("d:{i}")).collect::<Vec<_>>().as_slice());
        assert!(t.problems(&w).is_empty(), "{:?}", t.problems(&w));
        assert_eq!(t.extract(), t);
    }

    #[test]
    fn two_column_out_and_back() {
        let m = 3;
        let fam = LazyGraph::one_way_ladder();
        let w = ball(&fam, &["a:0", "b:0"], m).unwrap();
        let paths = serpentines(2, m + 6);
        let seq: Vec<Snapshot> = paths.iter().map(PathSnapshot::snapshot).collect();
        let lim = stable_limit(&w, &seq, &LimitConfig::default()).unwrap();
        let ord = build_limit_order(&lim, &paths, &fam, 2).unwrap();
        assert_eq!(ord.gaps.len(), 1);
        let t = extract_topological_path(&ord).unwrap();
        assert_eq!(t.markers(), 1);
        assert_eq!(t.segments()[1].last().unwrap(), "b:0");
        assert_eq!(t.extract(), t);
    }

    #[test]
    fn finite_constant_path_has_no_gaps() {
        let fam = LazyGraph::one_way_ladder();
        let w = ball(&fam, &["a:0", "b:0"], 3).unwrap();
        let p = PathSnapshot::through(&["a:0", "a:1", "b:1", "b:0"]).unwrap();
        let paths = vec![p.clone(); 5];
        let seq: Vec<Snapshot> = paths.iter().map(PathSnapshot::snapshot).collect();
        let lim = stable_limit(&w, &seq, &LimitConfig::default()).unwrap();
        let deg = check_path_limit_degrees(&lim, "a:0", "b:0");
        assert!(deg.verdict);
        let ord = build_limit_order(&lim, &paths, &fam, 2).unwrap();
        assert!(ord.gaps.is_empty());
        let t = extract_topological_path(&ord).unwrap();
        assert_eq!(t.segments(), vec![p.vertices.as_slice()]);
    }

    #[test]
    fn contraction_skips_loops() {
        let v = |s: &str| Token::Elem(OrderItem::Vertex(s.into()));
        let out = contract(vec![v("x"), v("y"), v("z"), v("y"), v("w")]);
        assert_eq!(out, vec![v("x"), v("y"), v("w")]);
        let out = contract(vec![v("x"), Token::Mark(0), v("y"), Token::Mark(1), v("z"), Token::Mark(0), v("w")]);
        assert_eq!(out, vec![v("x"), Token::Mark(0), v("w")]);
    }

    #[test]
    fn alternating_middle_edge_is_oscillation_not_degree_violation() {
        let fam = LazyGraph::one_way_ladder();
        let w = ball(&fam, &["a:0", "b:0"], 2).unwrap();
        let p = PathSnapshot::through(&["a:0", "a:1", "b:1", "b:0"]).unwrap();
        let q = PathSnapshot::through(&["a:0", "a:1", "a:2", "b:2", "b:1", "b:0"]).unwrap();
        let seq: Vec<Snapshot> = (0..8).map(|i| if i % 2 == 0 { p.snapshot() } else { q.snapshot() }).collect();
        let lim = stable_limit(&w, &seq, &LimitConfig::default()).unwrap();
        let deg = check_path_limit_degrees(&lim, "a:0", "b:0");
        assert!(deg.oscillating_excluded > 0);
        assert!(deg.violations.iter().all(|v| v.degree <= 2));
        assert!(!lim.oscillating().is_empty());
    }

    #[test]
    fn pseudo_ultrafilter_is_seeded() {
        let seq: Vec<Snapshot> = (0..10).map(|n| serpentine(2, n).unwrap().snapshot()).collect();
        let a = pseudo_ultrafilter_limit(&seq, 2, 5, 7).unwrap();
        let b = pseudo_ultrafilter_limit(&seq, 2, 5, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.vertices.contains("a:0"));
    }

    #[test]
    fn pipeline_on_one_way_ladder() {
        let cfg = PipelineConfig {
            roots: vec!["a:0".into(), "b:0".into()],
            window: 3,
            upto: 8,
            mode: Mode::WellBalanced,
            search: SearchConfig {
                max_edges: 64,
                ..SearchConfig::default()
            },
            margin: DEFAULT_MARGIN,
            check_lookahead: Some(2),
        };
        let r = orient_pipeline(&LazyGraph::one_way_ladder(), &cfg).unwrap();
        assert!(r.steps.iter().all(|s| s.outcome == "found"), "{:?}", r.steps);
        assert!(r.stabilized, "oscillating: {:?}", r.oscillating);
        let h = r.half_bound.as_ref().unwrap();
        assert!(h.verdict && h.stable);
    }
}
