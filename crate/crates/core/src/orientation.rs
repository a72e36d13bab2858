//! Orientations of multigraphs: checkers, exact search, Eulerian fast path
//! and gluing of part orientations.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectivity::{self, CutReport, CutSet, LambdaTable};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeIdx, GraphBuilder, MultiGraph, VertexIdx, Walk};

/// Direction of an edge relative to its canonical endpoint order `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dir {
    #[serde(rename = "uv")]
    Forward,
    #[serde(rename = "vu")]
    Backward,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }
}

/// A total direction assignment for the edges of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    graph: String,
    dirs: Vec<Option<Dir>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcEntry {
    pub id: String,
    pub dir: Dir,
}

/// Wire format: `{"graph": "<hash>", "edges": [{"id": "a-b-0", "dir": "uv"}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationJson {
    pub graph: String,
    pub edges: Vec<ArcEntry>,
}

impl Orientation {
    pub fn new(g: &MultiGraph, dirs: Vec<Dir>) -> Result<Self> {
        if dirs.len() != g.edge_count() {
            return Err(Error::OrientationMismatch);
        }
        Ok(Orientation {
            graph: g.content_hash(),
            dirs: dirs.into_iter().map(Some).collect(),
        })
    }

    pub(crate) fn from_partial(g: &MultiGraph, dirs: &[Option<Dir>]) -> Result<Self> {
        if let Some(e) = dirs.iter().position(Option::is_none) {
            return Err(Error::PartialOrientation(g.edge_id(e).to_string()));
        }
        Ok(Orientation {
            graph: g.content_hash(),
            dirs: dirs.to_vec(),
        })
    }

    /// All edges `uv`.
    pub fn uniform(g: &MultiGraph, d: Dir) -> Self {
        Orientation {
            graph: g.content_hash(),
            dirs: vec![Some(d); g.edge_count()],
        }
    }

    /// Orientation from `(tail, head)` pairs; each pair consumes the next
    /// unassigned parallel edge of that vertex pair in `j` order.
    pub fn from_arcs(g: &MultiGraph, arcs: &[(&str, &str)]) -> Result<Self> {
        let mut dirs = vec![None; g.edge_count()];
        for &(t, h) in arcs {
            let (tv, hv) = (g.require_vertex(t)?, g.require_vertex(h)?);
            let e = g
                .parallel(tv, hv)
                .into_iter()
                .find(|&e| dirs[e].is_none())
                .ok_or_else(|| Error::Malformed(format!("no free edge {t} - {h}")))?;
            dirs[e] = Some(if g.edge(e).u == tv { Dir::Forward } else { Dir::Backward });
        }
        Self::from_partial(g, &dirs)
    }

    /// Builds from an id-keyed map; every edge of `g` must be covered.
    pub fn from_ids(g: &MultiGraph, map: &BTreeMap<EdgeId, Dir>) -> Result<Self> {
        let mut dirs = vec![None; g.edge_count()];
        for (id, &d) in map {
            let e = g.edge_by_id(id).ok_or_else(|| Error::UnknownEdge(id.to_string()))?;
            dirs[e] = Some(d);
        }
        Self::from_partial(g, &dirs)
    }

    pub fn from_json(g: &MultiGraph, json: &OrientationJson) -> Result<Self> {
        if !json.graph.is_empty() && json.graph != g.content_hash() {
            return Err(Error::OrientationMismatch);
        }
        let mut dirs = vec![None; g.edge_count()];
        for entry in &json.edges {
            let e = g.parse_edge_id(&entry.id)?;
            dirs[e] = Some(entry.dir);
        }
        Self::from_partial(g, &dirs)
    }

    pub fn to_json(&self, g: &MultiGraph) -> OrientationJson {
        OrientationJson {
            graph: self.graph.clone(),
            edges: (0..g.edge_count())
                .map(|e| ArcEntry {
                    id: g.edge_id(e).to_string(),
                    dir: self.dir(e),
                })
                .collect(),
        }
    }

    pub fn graph_hash(&self) -> &str {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn dir(&self, e: EdgeIdx) -> Dir {
        self.dirs[e].expect("total orientation")
    }

    pub fn as_partial(&self) -> &[Option<Dir>] {
        &self.dirs
    }

    pub fn tail(&self, g: &MultiGraph, e: EdgeIdx) -> VertexIdx {
        let ed = g.edge(e);
        match self.dir(e) {
            Dir::Forward => ed.u,
            Dir::Backward => ed.v,
        }
    }

    pub fn head(&self, g: &MultiGraph, e: EdgeIdx) -> VertexIdx {
        g.edge(e).other(self.tail(g, e))
    }

    /// Errors unless this orientation was made for `g` and covers all of it.
    pub fn check_total(&self, g: &MultiGraph) -> Result<()> {
        if self.dirs.len() != g.edge_count() || self.graph != g.content_hash() {
            return Err(Error::OrientationMismatch);
        }
        Ok(())
    }

    pub fn out_degree(&self, g: &MultiGraph, v: VertexIdx) -> usize {
        g.incident(v).iter().filter(|&&e| self.tail(g, e) == v).count()
    }

    pub fn in_degree(&self, g: &MultiGraph, v: VertexIdx) -> usize {
        g.degree(v) - self.out_degree(g, v)
    }

    /// Plain directed reachability from `x`.
    pub fn reachable_from(&self, g: &MultiGraph, x: VertexIdx) -> Vec<bool> {
        let mut seen = vec![false; g.vertex_count()];
        seen[x] = true;
        let mut stack = vec![x];
        while let Some(a) = stack.pop() {
            for &e in g.incident(a) {
                if self.tail(g, e) == a {
                    let b = g.edge(e).other(a);
                    if !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen
    }

    /// Carries this orientation of `from` over to `to` by edge id. Every edge
    /// of `to` must exist in `from`.
    pub fn restrict(&self, from: &MultiGraph, to: &MultiGraph) -> Result<Orientation> {
        self.check_total(from)?;
        let dirs = (0..to.edge_count())
            .map(|e| {
                let id = to.edge_id(e);
                from.edge_by_id(&id).map(|f| self.dir(f)).ok_or_else(|| Error::PartialOrientation(id.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Orientation::new(to, dirs)
    }

    /// True when the walk traverses every edge tail-to-head.
    pub fn respects(&self, g: &MultiGraph, w: &Walk) -> bool {
        w.edges
            .iter()
            .enumerate()
            .all(|(i, &e)| self.tail(g, e) == w.vertices[i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub source: String,
    pub target: String,
    pub lambda: usize,
    pub arc_lambda: usize,
    pub demand: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellBalancedReport {
    pub verdict: bool,
    pub pairs: Vec<PairReport>,
    pub violations: Vec<PairReport>,
}

fn ordered_pairs(n: usize) -> Vec<(VertexIdx, VertexIdx)> {
    (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect()
}

/// Per ordered pair `(λ, λ⃗, ⌊λ/2⌋)`; verdict true iff `λ⃗ ≥ ⌊λ/2⌋` everywhere.
pub fn check_well_balanced(g: &MultiGraph, o: &Orientation) -> Result<WellBalancedReport> {
    o.check_total(g)?;
    let table = LambdaTable::new(g);
    let pairs: Vec<PairReport> = ordered_pairs(g.vertex_count())
        .par_iter()
        .map(|&(x, y)| {
            let lambda = table.get(x, y);
            PairReport {
                source: g.name(x).to_string(),
                target: g.name(y).to_string(),
                lambda,
                arc_lambda: connectivity::partial_arc_lambda(g, o.as_partial(), x, y, None, &BTreeSet::new()),
                demand: lambda / 2,
            }
        })
        .collect();
    let violations: Vec<PairReport> = pairs.iter().filter(|p| p.arc_lambda < p.demand).cloned().collect();
    Ok(WellBalancedReport {
        verdict: violations.is_empty(),
        pairs,
        violations,
    })
}

/// True iff every ordered pair has at least `k` arc-disjoint directed paths.
pub fn check_k_arc_connected(g: &MultiGraph, o: &Orientation, k: usize) -> Result<bool> {
    o.check_total(g)?;
    Ok(k_arc_violation(g, o.as_partial(), k).is_none())
}

/// First ordered pair (rooted at vertex 0) with fewer than `k` arc-disjoint paths.
fn k_arc_violation(g: &MultiGraph, dirs: &[Option<Dir>], k: usize) -> Option<(VertexIdx, VertexIdx)> {
    if k == 0 || g.vertex_count() < 2 {
        return None;
    }
    // λ⃗(0,v) ≥ k and λ⃗(v,0) ≥ k for all v gives every pair by transitivity
    let pairs: Vec<(VertexIdx, VertexIdx)> = (1..g.vertex_count()).flat_map(|v| [(0, v), (v, 0)]).collect();
    pairs
        .par_iter()
        .find_first(|&&(x, y)| connectivity::partial_arc_lambda(g, dirs, x, y, Some(k), &BTreeSet::new()) < k)
        .copied()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", content = "k")]
pub enum Mode {
    #[serde(rename = "wb")]
    WellBalanced,
    #[serde(rename = "karc")]
    KArc(usize),
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::WellBalanced => write!(f, "wb"),
            Mode::KArc(k) => write!(f, "karc:{k}"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wb" | "well_balanced" => Ok(Mode::WellBalanced),
            _ => {
                let k = s
                    .strip_prefix("karc:")
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| Error::Malformed(format!("unknown mode `{s}` (expected wb or karc:K)")))?;
                Ok(Mode::KArc(k))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest edge count the exact search accepts.
    pub max_edges: usize,
    /// Search nodes visited before giving up with [`ExactOutcome::Budget`].
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_edges: 24,
            node_budget: 2_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnsatCertificate {
    pub source: VertexIdx,
    pub target: VertexIdx,
    pub cut: CutSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnsatReport {
    pub source: String,
    pub target: String,
    pub cut: CutReport,
}

impl UnsatCertificate {
    pub fn report(&self, g: &MultiGraph) -> UnsatReport {
        UnsatReport {
            source: g.name(self.source).to_string(),
            target: g.name(self.target).to_string(),
            cut: self.cut.report(g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactOutcome {
    Found(Orientation),
    Unsat(UnsatCertificate),
    Budget { nodes: u64 },
}

/// A demand `λ⃗(x,y) ≥ need` plus the arcs its last witness flow used.
struct Demand {
    x: VertexIdx,
    y: VertexIdx,
    need: usize,
    uses: Vec<(EdgeIdx, Dir)>,
}

fn witness_uses(g: &MultiGraph, dirs: &[Option<Dir>], x: VertexIdx, y: VertexIdx, need: usize) -> Option<Vec<(EdgeIdx, Dir)>> {
    if connectivity::partial_arc_lambda(g, dirs, x, y, Some(need), &BTreeSet::new()) < need {
        return None;
    }
    let tmp = Orientation {
        graph: String::new(),
        dirs: dirs.to_vec(),
    };
    let walks = partial_paths(g, &tmp, x, y, need);
    let mut uses = Vec::new();
    for w in walks {
        for (i, &e) in w.edges.iter().enumerate() {
            let d = if g.edge(e).u == w.vertices[i] { Dir::Forward } else { Dir::Backward };
            uses.push((e, d));
        }
    }
    Some(uses)
}

fn partial_paths(g: &MultiGraph, o: &Orientation, x: VertexIdx, y: VertexIdx, need: usize) -> Vec<Walk> {
    connectivity::partial_disjoint_paths(g, o.as_partial(), x, y, Some(need))
}

struct Search<'a> {
    g: &'a MultiGraph,
    dirs: Vec<Option<Dir>>,
    demands: Vec<Demand>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Found,
    Exhausted,
    Budget,
}

impl Search<'_> {
    /// Re-validates the demands whose witness used `e` against direction `d`.
    fn consistent_after(&mut self, e: EdgeIdx, d: Dir) -> bool {
        for i in 0..self.demands.len() {
            let stale = self.demands[i].uses.iter().any(|&(f, fd)| f == e && fd != d);
            if !stale {
                continue;
            }
            let dm = &self.demands[i];
            match witness_uses(self.g, &self.dirs, dm.x, dm.y, dm.need) {
                Some(uses) => self.demands[i].uses = uses,
                None => {
                    // failing demands first next time
                    let failed = self.demands.remove(i);
                    self.demands.insert(0, failed);
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, e: EdgeIdx) -> Step {
        if e == self.g.edge_count() {
            return Step::Found;
        }
        for d in [Dir::Forward, Dir::Backward] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::Budget;
            }
            self.dirs[e] = Some(d);
            if self.consistent_after(e, d) {
                match self.run(e + 1) {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            self.dirs[e] = None;
        }
        Step::Exhausted
    }
}

/// Exact backtracking search for a well-balanced or `k`-arc-connected
/// orientation. Edges are branched in canonical order, `uv` before `vu`, and
/// every partial assignment is pruned by max-flow on the relaxation where
/// undecided edges stay two-way; the first orientation found is therefore the
/// lexicographically least valid one.
pub fn orient_exact(g: &MultiGraph, mode: Mode, cfg: &SearchConfig) -> Result<ExactOutcome> {
    if g.edge_count() > cfg.max_edges {
        return Err(Error::CapExceeded(format!(
            "{} edges exceed the exact-search bound {}",
            g.edge_count(),
            cfg.max_edges
        )));
    }
    let n = g.vertex_count();
    let pairs: Vec<(VertexIdx, VertexIdx, usize)> = match mode {
        Mode::WellBalanced => {
            let table = LambdaTable::new(g);
            ordered_pairs(n)
                .into_iter()
                .map(|(x, y)| (x, y, table.get(x, y) / 2))
                .filter(|p| p.2 > 0)
                .collect()
        }
        Mode::KArc(k) => {
            if k > 0 && n >= 2 {
                // an orientation needs k arcs each way across every cut
                let weak = (1..n)
                    .map(|v| (v, connectivity::lambda_unchecked(g, 0, v, Some(2 * k), &BTreeSet::new())))
                    .find(|&(_, l)| l < 2 * k);
                if let Some((v, _)) = weak {
                    let cut = connectivity::min_cut(g, 0, v)?;
                    return Ok(ExactOutcome::Unsat(UnsatCertificate {
                        source: 0,
                        target: v,
                        cut,
                    }));
                }
            }
            if k == 0 {
                Vec::new()
            } else {
                (1..n).flat_map(|v| [(0, v, k), (v, 0, k)]).collect()
            }
        }
    };
    let free = vec![None; g.edge_count()];
    let mut demands = Vec::with_capacity(pairs.len());
    for (x, y, need) in pairs {
        match witness_uses(g, &free, x, y, need) {
            Some(uses) => demands.push(Demand { x, y, need, uses }),
            None => {
                let cut = connectivity::min_cut(g, x, y)?;
                return Ok(ExactOutcome::Unsat(UnsatCertificate { source: x, target: y, cut }));
            }
        }
    }
    let mut search = Search {
        g,
        dirs: free,
        demands,
        nodes: 0,
        budget: cfg.node_budget,
    };
    match search.run(0) {
        Step::Found => {
            let o = Orientation::from_partial(g, &search.dirs)?;
            // re-certify independently of the incremental bookkeeping
            let ok = match mode {
                Mode::WellBalanced => check_well_balanced(g, &o)?.verdict,
                Mode::KArc(k) => check_k_arc_connected(g, &o, k)?,
            };
            if !ok {
                return Err(Error::Malformed("exact search produced an uncertified orientation".into()));
            }
            Ok(ExactOutcome::Found(o))
        }
        Step::Budget => Ok(ExactOutcome::Budget { nodes: search.nodes }),
        Step::Exhausted => {
            let d = &search.demands[0];
            let cut = connectivity::directed_cut_partial(g, &vec![None; g.edge_count()], d.x, d.y);
            Ok(ExactOutcome::Unsat(UnsatCertificate {
                source: d.x,
                target: d.y,
                cut,
            }))
        }
    }
}

/// Orients `g` along a closed Eulerian trail (Hierholzer from the lowest
/// vertex, lowest free edge first). Isolated vertices are ignored.
pub fn orient_eulerian(g: &MultiGraph) -> Result<Orientation> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) % 2 == 1) {
        return Err(Error::OddDegree(g.name(v).to_string()));
    }
    let start = match g.vertices().find(|&v| g.degree(v) > 0) {
        Some(s) => s,
        None => return Orientation::new(g, Vec::new()),
    };
    let mut dirs = vec![None; g.edge_count()];
    let mut next = vec![0usize; g.vertex_count()];
    // stack of (vertex, edge used to arrive)
    let mut stack: Vec<(VertexIdx, Option<EdgeIdx>)> = vec![(start, None)];
    while let Some(&(v, _)) = stack.last() {
        let inc = g.incident(v);
        while next[v] < inc.len() && dirs[inc[next[v]]].is_some() {
            next[v] += 1;
        }
        if next[v] < inc.len() {
            let e = inc[next[v]];
            let ed = g.edge(e);
            dirs[e] = Some(if ed.u == v { Dir::Forward } else { Dir::Backward });
            stack.push((ed.other(v), Some(e)));
        } else {
            stack.pop();
        }
    }
    if dirs.iter().any(Option::is_none) {
        return Err(Error::Disconnected);
    }
    Orientation::from_partial(g, &dirs)
}

/// Union of part orientations over the union graph, matched by edge id.
/// Parts must be edge-disjoint.
pub fn glue(parts: &[(MultiGraph, Orientation)]) -> Result<(MultiGraph, Orientation)> {
    let mut by_id: BTreeMap<EdgeId, Dir> = BTreeMap::new();
    let mut isolated = BTreeSet::new();
    for (g, o) in parts {
        o.check_total(g)?;
        for e in 0..g.edge_count() {
            let id = g.edge_id(e);
            if by_id.insert(id.clone(), o.dir(e)).is_some() {
                return Err(Error::Overlap(id.to_string()));
            }
        }
        for v in g.vertices() {
            isolated.insert(g.name(v).to_string());
        }
    }
    let mut b = GraphBuilder::new();
    for v in &isolated {
        b.add_vertex(v.clone())?;
    }
    for id in by_id.keys() {
        b.add_edge(&id.u, &id.v)?;
    }
    let union = b.build();
    let o = Orientation::from_ids(&union, &by_id)?;
    Ok((union, o))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(g: &MultiGraph, o: &Orientation) -> Vec<(String, String)> {
        (0..g.edge_count())
            .map(|e| (g.name(o.tail(g, e)).to_string(), g.name(o.head(g, e)).to_string()))
            .collect()
    }

    fn cycle4() -> MultiGraph {
        MultiGraph::from_pairs([("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("a", "d", 1)]).unwrap()
    }

    fn figure_eight() -> MultiGraph {
        MultiGraph::from_pairs([
            ("a", "w", 1),
            ("a", "b", 1),
            ("b", "w", 1),
            ("c", "w", 1),
            ("c", "d", 1),
            ("d", "w", 1),
        ])
        .unwrap()
    }

    #[test]
    fn directed_four_cycle_is_well_balanced() {
        let g = cycle4();
        let o = Orientation::from_arcs(&g, &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
        let r = check_well_balanced(&g, &o).unwrap();
        assert!(r.verdict);
        assert!(r.pairs.iter().all(|p| p.lambda == 2 && p.demand == 1 && p.arc_lambda == 1));
    }

    #[test]
    fn floor_kills_odd_demand() {
        let g = MultiGraph::from_pairs([("a", "b", 1), ("b", "c", 1)]).unwrap();
        let o = Orientation::from_arcs(&g, &[("a", "b"), ("c", "b")]).unwrap();
        let r = check_well_balanced(&g, &o).unwrap();
        assert!(r.verdict);
        let ac = r.pairs.iter().find(|p| p.source == "a" && p.target == "c").unwrap();
        assert_eq!((ac.lambda, ac.demand, ac.arc_lambda), (1, 0, 0));
    }

    #[test]
    fn doubled_triangle_same_direction_pair_fails() {
        let g = MultiGraph::from_pairs([("a", "b", 2), ("b", "c", 2), ("a", "c", 2)]).unwrap();
        let o = Orientation::from_arcs(
            &g,
            &[("a", "b"), ("a", "b"), ("b", "c"), ("c", "b"), ("a", "c"), ("c", "a")],
        )
        .unwrap();
        let r = check_well_balanced(&g, &o).unwrap();
        assert!(!r.verdict);
        assert!(r.violations.iter().all(|p| p.lambda == 4 && p.arc_lambda < 2));
    }

    #[test]
    fn partial_orientation_rejected() {
        let g = cycle4();
        let json = OrientationJson {
            graph: g.content_hash(),
            edges: vec![ArcEntry {
                id: "a-b-0".into(),
                dir: Dir::Forward,
            }],
        };
        assert!(matches!(Orientation::from_json(&g, &json), Err(Error::PartialOrientation(_))));
    }

    #[test]
    fn json_round_trip() {
        let g = cycle4();
        let o = Orientation::from_arcs(&g, &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
        let text = serde_json::to_string(&o.to_json(&g)).unwrap();
        assert!(text.contains(r#"{"id":"a-d-0","dir":"vu"}"#));
        let back: OrientationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Orientation::from_json(&g, &back).unwrap(), o);
    }

    #[test]
    fn k_arc_examples() {
        let tri = MultiGraph::from_pairs([("a", "b", 1), ("b", "c", 1), ("a", "c", 1)]).unwrap();
        let o = Orientation::from_arcs(&tri, &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        assert!(check_k_arc_connected(&tri, &o, 1).unwrap());
        assert!(!check_k_arc_connected(&tri, &o, 2).unwrap());
        let dt = MultiGraph::from_pairs([("a", "b", 2), ("b", "c", 2), ("a", "c", 2)]).unwrap();
        let o = Orientation::from_arcs(
            &dt,
            &[("a", "b"), ("b", "a"), ("b", "c"), ("c", "b"), ("a", "c"), ("c", "a")],
        )
        .unwrap();
        assert!(check_k_arc_connected(&dt, &o, 2).unwrap());
    }

    #[test]
    fn exact_four_cycle_gives_directed_cycle() {
        let g = cycle4();
        let ExactOutcome::Found(o) = orient_exact(&g, Mode::WellBalanced, &SearchConfig::default()).unwrap() else {
            panic!("expected an orientation");
        };
        // canonical edge order a-b, a-d, b-c, c-d; a-d must point into a
        assert_eq!(
            names(&g, &o),
            [("a", "b"), ("d", "a"), ("b", "c"), ("c", "d")]
                .map(|(x, y)| (x.to_string(), y.to_string()))
        );
    }

    #[test]
    fn exact_bridge_is_unsat() {
        let g = MultiGraph::from_pairs([("a", "b", 1)]).unwrap();
        let ExactOutcome::Unsat(cert) = orient_exact(&g, Mode::KArc(1), &SearchConfig::default()).unwrap() else {
            panic!("expected UNSAT");
        };
        assert_eq!(cert.cut.len(), 1);
    }

    /// Every total orientation of `g` that passes `ok`, in lexicographic order.
    fn brute_valid(g: &MultiGraph, ok: impl Fn(&Orientation) -> bool) -> Vec<Orientation> {
        let m = g.edge_count();
        (0u32..1 << m)
            .map(|mask| {
                // bit m-1-e set means edge e is reversed, so numeric order is lexicographic
                let dirs = (0..m)
                    .map(|e| if mask >> (m - 1 - e) & 1 == 1 { Dir::Backward } else { Dir::Forward })
                    .collect();
                Orientation::new(g, dirs).unwrap()
            })
            .filter(|o| ok(o))
            .collect()
    }

    #[test]
    fn exact_doubled_triangle_matches_brute_force() {
        let g = MultiGraph::from_pairs([("a", "b", 2), ("b", "c", 2), ("a", "c", 2)]).unwrap();
        let ExactOutcome::Found(o) = orient_exact(&g, Mode::KArc(2), &SearchConfig::default()).unwrap() else {
            panic!("expected an orientation");
        };
        let valid = brute_valid(&g, |o| check_k_arc_connected(&g, o, 2).unwrap());
        assert_eq!(o, valid[0]);
        // the split orientation is valid too; the doubled directed cycle is lexicographically first
        let split = Orientation::from_arcs(
            &g,
            &[("a", "b"), ("b", "a"), ("a", "c"), ("c", "a"), ("b", "c"), ("c", "b")],
        )
        .unwrap();
        assert!(valid.contains(&split));
        assert!(check_k_arc_connected(&g, &o, 2).unwrap());
    }

    #[test]
    fn exact_four_cycle_matches_brute_force() {
        let g = cycle4();
        let ExactOutcome::Found(o) = orient_exact(&g, Mode::WellBalanced, &SearchConfig::default()).unwrap() else {
            panic!("expected an orientation");
        };
        let valid = brute_valid(&g, |o| check_well_balanced(&g, o).unwrap().verdict);
        assert_eq!(valid.len(), 2);
        assert_eq!(o, valid[0]);
    }

    #[test]
    fn exact_respects_edge_bound_and_budget() {
        let g = MultiGraph::from_pairs([("a", "b", 30)]).unwrap();
        assert!(matches!(
            orient_exact(&g, Mode::WellBalanced, &SearchConfig::default()),
            Err(Error::CapExceeded(_))
        ));
        let cfg = SearchConfig {
            max_edges: 30,
            node_budget: 3,
        };
        assert!(matches!(
            orient_exact(&g, Mode::WellBalanced, &cfg).unwrap(),
            ExactOutcome::Budget { .. }
        ));
    }

    #[test]
    fn eulerian_examples() {
        let g = cycle4();
        let o = orient_eulerian(&g).unwrap();
        assert!(g.vertices().all(|v| o.in_degree(&g, v) == 1 && o.out_degree(&g, v) == 1));
        let f8 = figure_eight();
        let o = orient_eulerian(&f8).unwrap();
        assert!(check_well_balanced(&f8, &o).unwrap().verdict);
        let k4 = MultiGraph::from_pairs([("a", "b", 1), ("a", "c", 1), ("a", "d", 1), ("b", "c", 1), ("b", "d", 1), ("c", "d", 1)])
            .unwrap();
        assert_eq!(orient_eulerian(&k4), Err(Error::OddDegree("a".into())));
    }

    #[test]
    fn eulerian_disconnected_rejected() {
        let g = MultiGraph::from_pairs([("a", "b", 2), ("c", "d", 2)]).unwrap();
        assert_eq!(orient_eulerian(&g), Err(Error::Disconnected));
    }

    #[test]
    fn glue_two_triangles() {
        let t1 = MultiGraph::from_pairs([("a", "w", 1), ("a", "b", 1), ("b", "w", 1)]).unwrap();
        let o1 = Orientation::from_arcs(&t1, &[("w", "a"), ("a", "b"), ("b", "w")]).unwrap();
        let t2 = MultiGraph::from_pairs([("c", "w", 1), ("c", "d", 1), ("d", "w", 1)]).unwrap();
        let o2 = Orientation::from_arcs(&t2, &[("w", "c"), ("c", "d"), ("d", "w")]).unwrap();
        let (g, o) = glue(&[(t1.clone(), o1.clone()), (t2, o2)]).unwrap();
        assert_eq!(g, figure_eight());
        assert!(check_k_arc_connected(&g, &o, 1).unwrap());

        let (single, so) = glue(&[(t1.clone(), o1.clone())]).unwrap();
        assert_eq!((single, so), (t1.clone(), o1.clone()));

        assert!(matches!(glue(&[(t1.clone(), o1.clone()), (t1, o1)]), Err(Error::Overlap(_))));
    }
}
