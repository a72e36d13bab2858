//! Reachability and connectivity through ends, at finite resolution.
//!
//! Work happens in the ball `B_d` (the outer radius) with a fixed orientation.
//! The region beyond an inner radius `d' < d` is condensed: each component of
//! `ball(d + L) − V_{d'} − F` that reaches the boundary of `ball(d + L)` becomes
//! a node. A boundary vertex of `B_d` lying in such a component may step into
//! the node and the node may step out to any boundary vertex of the same
//! component. A directed walk in this augmented graph stands for a walk that
//! runs out along an oriented ray, passes through the end, and comes back.
//! Verdicts are only sound as `d` grows, so they are reported per inner
//! radius together with whether they agree.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::connectivity::{lambda_unchecked, partial_arc_lambda};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeIdx, MultiGraph, VertexIdx};
use crate::lazy::{ball, Ball, LazyGraph};
use crate::orientation::{Dir, Orientation};

pub const DEFAULT_CUT_CAP: usize = 4;
const NODE_BUDGET: usize = 2_000_000;

/// An oriented ball `B_d` together with the larger ball used to decide which
/// outside regions escape.
#[derive(Clone, Debug)]
pub struct TopoContext {
    pub ball: Ball,
    pub big: Ball,
    pub lookahead: usize,
    dirs: Option<Vec<Dir>>,
    to_big_vertex: Vec<VertexIdx>,
    to_big_edge: Vec<EdgeIdx>,
    from_big_edge: Vec<Option<EdgeIdx>>,
    from_big_vertex: Vec<Option<VertexIdx>>,
}

#[derive(Clone, Copy, Debug)]
struct Attachment {
    /// Boundary vertex of `B_d`.
    vertex: VertexIdx,
    /// Condensation node index.
    node: usize,
    /// Vertex of the big ball where the component is entered.
    entry: VertexIdx,
}

struct Condensation {
    /// Component label per big-ball vertex, `usize::MAX` inside `V_{d'}`.
    label: Vec<usize>,
    /// Escaping component label of each node.
    nodes: Vec<usize>,
    attachments: Vec<Attachment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WitnessStep {
    /// Vertices of a walk inside the ball.
    Path { vertices: Vec<String> },
    /// Passage through the end region entered at `from` and left at `to`.
    End { from: String, to: String, region: Vec<String> },
}

#[derive(Clone, Debug, Serialize)]
pub struct ReachResult {
    pub inner: usize,
    pub reachable: bool,
    pub witness: Vec<WitnessStep>,
    /// Number of condensation nodes at this inner radius.
    pub end_nodes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReachReport {
    pub source: String,
    pub target: String,
    pub outer: usize,
    pub plain: bool,
    pub per_inner: Vec<ReachResult>,
    pub reachable: bool,
    pub stable: bool,
}

/// Result of a capped separator search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum TopoValue {
    Exact(usize),
    /// No separator of size `< value` exists; larger ones were not searched.
    AtLeast(usize),
}

impl TopoValue {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            TopoValue::Exact(v) | TopoValue::AtLeast(v) => v >= k,
        }
    }
}

/// Raw search outcome: edges on the witness plus what hitting it would need.
struct RawWitness {
    steps: Vec<Step>,
    support: BTreeSet<EdgeIdx>,
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Edge(EdgeIdx, VertexIdx),
    Enter(usize),
    Leave(usize),
}

impl TopoContext {
    /// `orientation` is given on `o_graph` and restricted to `B_d` by edge id;
    /// `None` treats every edge as two-way.
    pub fn new(
        g: &LazyGraph,
        roots: &[&str],
        outer: usize,
        lookahead: usize,
        orientation: Option<(&MultiGraph, &Orientation)>,
    ) -> Result<Self> {
        let b = ball(g, roots, outer)?;
        let big = ball(g, roots, outer + lookahead.max(1))?;
        let dirs = match orientation {
            None => None,
            Some((og, o)) => {
                let r = o.restrict(og, &b.graph)?;
                Some((0..b.graph.edge_count()).map(|e| r.dir(e)).collect())
            }
        };
        let to_big_vertex: Vec<VertexIdx> = b.graph.names().iter().map(|n| big.graph.vertex(n).expect("nested")).collect();
        let to_big_edge: Vec<EdgeIdx> = (0..b.graph.edge_count())
            .map(|e| big.graph.edge_by_id(&b.graph.edge_id(e)).expect("nested"))
            .collect();
        let mut from_big_edge = vec![None; big.graph.edge_count()];
        for (e, &f) in to_big_edge.iter().enumerate() {
            from_big_edge[f] = Some(e);
        }
        let mut from_big_vertex = vec![None; big.graph.vertex_count()];
        for (v, &w) in to_big_vertex.iter().enumerate() {
            from_big_vertex[w] = Some(v);
        }
        Ok(TopoContext {
            ball: b,
            big,
            lookahead: lookahead.max(1),
            dirs,
            to_big_vertex,
            to_big_edge,
            from_big_edge,
            from_big_vertex,
        })
    }

    pub fn outer(&self) -> usize {
        self.ball.depth
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.ball.graph
    }

    pub fn orientation(&self) -> Option<Orientation> {
        self.dirs.as_ref().map(|d| Orientation::new(&self.ball.graph, d.clone()).expect("sized to ball"))
    }

    pub fn vertex(&self, name: &str) -> Result<VertexIdx> {
        let v = self.ball.graph.require_vertex(name)?;
        if self.ball.is_boundary(v) {
            return Err(Error::BoundaryVertex(name.to_string()));
        }
        Ok(v)
    }

    pub fn forbid(&self, ids: &[EdgeId]) -> Result<BTreeSet<EdgeIdx>> {
        ids.iter()
            .map(|id| self.ball.graph.edge_by_id(id).ok_or_else(|| Error::OutsideBall(id.to_string())))
            .collect()
    }

    fn can_traverse(&self, e: EdgeIdx, from: VertexIdx) -> bool {
        match &self.dirs {
            None => true,
            Some(d) => {
                let ed = self.ball.graph.edge(e);
                (d[e] == Dir::Forward) == (ed.u == from)
            }
        }
    }

    fn condense(&self, inner: usize, forbid: &BTreeSet<EdgeIdx>) -> Condensation {
        let bg = &self.big.graph;
        let cut: HashSet<EdgeIdx> = forbid.iter().map(|&e| self.to_big_edge[e]).collect();
        let core = |v: VertexIdx| self.big.distance(v) <= inner;
        let mut label = vec![usize::MAX; bg.vertex_count()];
        let mut escaping = Vec::new();
        for s in bg.vertices() {
            if core(s) || label[s] != usize::MAX {
                continue;
            }
            let id = escaping.len();
            let mut esc = false;
            label[s] = id;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                esc |= self.big.is_boundary(v);
                for &e in bg.incident(v) {
                    let w = bg.edge(e).other(v);
                    if !cut.contains(&e) && !core(w) && label[w] == usize::MAX {
                        label[w] = id;
                        stack.push(w);
                    }
                }
            }
            escaping.push(esc);
        }
        let mut node_of = vec![usize::MAX; escaping.len()];
        let mut nodes = Vec::new();
        for (c, &esc) in escaping.iter().enumerate() {
            if esc {
                node_of[c] = nodes.len();
                nodes.push(c);
            }
        }
        let mut attachments = Vec::new();
        let mut seen = BTreeSet::new();
        for v in self.ball.boundary_vertices() {
            let bv = self.to_big_vertex[v];
            let mut add = |entry: VertexIdx| {
                let c = label[entry];
                if c != usize::MAX && node_of[c] != usize::MAX && seen.insert((v, node_of[c])) {
                    attachments.push(Attachment {
                        vertex: v,
                        node: node_of[c],
                        entry,
                    });
                }
            };
            if !core(bv) {
                add(bv);
            } else {
                // a vertex of infinite degree inside the core reaches the
                // outside along edges that the ball does not contain
                for &e in bg.incident(bv) {
                    if self.from_big_edge[e].is_none() && !cut.contains(&e) {
                        add(bg.edge(e).other(bv));
                    }
                }
            }
        }
        Condensation {
            label,
            nodes,
            attachments,
        }
    }

    /// Breadth-first search in the augmented graph.
    fn search(&self, x: VertexIdx, y: VertexIdx, inner: usize, forbid: &BTreeSet<EdgeIdx>, cond: &Condensation) -> Option<Vec<Step>> {
        let g = &self.ball.graph;
        let n = g.vertex_count();
        let total = n + cond.nodes.len();
        let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut by_node: Vec<Vec<usize>> = vec![Vec::new(); cond.nodes.len()];
        for (i, a) in cond.attachments.iter().enumerate() {
            by_vertex[a.vertex].push(i);
            by_node[a.node].push(i);
        }
        let _ = inner;
        let mut pred: Vec<Option<(usize, Step)>> = vec![None; total];
        let mut seen = vec![false; total];
        seen[x] = true;
        let mut q = VecDeque::from([x]);
        while let Some(a) = q.pop_front() {
            if a == y {
                break;
            }
            let mut visit = |b: usize, s: Step, q: &mut VecDeque<usize>| {
                if !seen[b] {
                    seen[b] = true;
                    pred[b] = Some((a, s));
                    q.push_back(b);
                }
            };
            if a < n {
                for &e in g.incident(a) {
                    if !forbid.contains(&e) && self.can_traverse(e, a) {
                        visit(g.edge(e).other(a), Step::Edge(e, a), &mut q);
                    }
                }
                for &i in &by_vertex[a] {
                    visit(n + cond.attachments[i].node, Step::Enter(i), &mut q);
                }
            } else {
                for &i in &by_node[a - n] {
                    visit(cond.attachments[i].vertex, Step::Leave(i), &mut q);
                }
            }
        }
        if !seen[y] {
            return None;
        }
        let mut steps = Vec::new();
        let mut cur = y;
        while let Some((p, s)) = pred[cur] {
            steps.push(s);
            cur = p;
        }
        steps.reverse();
        Some(steps)
    }

    /// Big-ball path inside one region, avoiding `V_{d'}` and the cut.
    fn region_path(&self, cond: &Condensation, from: VertexIdx, to: impl Fn(VertexIdx) -> bool, forbid: &BTreeSet<EdgeIdx>) -> Vec<EdgeIdx> {
        let bg = &self.big.graph;
        let region = cond.label[from];
        let cut: HashSet<EdgeIdx> = forbid.iter().map(|&e| self.to_big_edge[e]).collect();
        let mut pred: Vec<Option<(VertexIdx, EdgeIdx)>> = vec![None; bg.vertex_count()];
        let mut seen = vec![false; bg.vertex_count()];
        seen[from] = true;
        let mut q = VecDeque::from([from]);
        let mut hit = None;
        while let Some(v) = q.pop_front() {
            if to(v) {
                hit = Some(v);
                break;
            }
            for &e in bg.incident(v) {
                let w = bg.edge(e).other(v);
                if !cut.contains(&e) && cond.label[w] == region && !seen[w] {
                    seen[w] = true;
                    pred[w] = Some((v, e));
                    q.push_back(w);
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = hit.expect("target lies in the same region");
        while let Some((p, e)) = pred[cur] {
            out.push(e);
            cur = p;
        }
        out
    }

    fn witness(&self, x: VertexIdx, y: VertexIdx, inner: usize, forbid: &BTreeSet<EdgeIdx>) -> Option<(RawWitness, Condensation)> {
        let cond = self.condense(inner, forbid);
        let steps = self.search(x, y, inner, forbid, &cond)?;
        let mut support = BTreeSet::new();
        let mut pending: Option<usize> = None;
        for s in &steps {
            match *s {
                Step::Edge(e, _) => {
                    support.insert(e);
                }
                Step::Enter(i) => pending = Some(i),
                Step::Leave(j) => {
                    let i = pending.take().expect("enter precedes leave");
                    let (a, b) = (cond.attachments[i].entry, cond.attachments[j].entry);
                    let through = self.region_path(&cond, a, |v| v == b, forbid);
                    let out = self.region_path(&cond, a, |v| self.big.is_boundary(v), forbid);
                    for e in through.into_iter().chain(out) {
                        if let Some(f) = self.from_big_edge[e] {
                            support.insert(f);
                        }
                    }
                }
            }
        }
        Some((RawWitness { steps, support }, cond))
    }

    fn render(&self, x: VertexIdx, w: &RawWitness, cond: &Condensation) -> Vec<WitnessStep> {
        let g = &self.ball.graph;
        let bg = &self.big.graph;
        let mut out = Vec::new();
        let mut path = vec![g.name(x).to_string()];
        let mut from = String::new();
        for s in &w.steps {
            match *s {
                Step::Edge(e, a) => path.push(g.name(g.edge(e).other(a)).to_string()),
                Step::Enter(i) => {
                    out.push(WitnessStep::Path { vertices: std::mem::take(&mut path) });
                    from = g.name(cond.attachments[i].vertex).to_string();
                }
                Step::Leave(j) => {
                    let a = cond.attachments[j];
                    let comp = cond.nodes[a.node];
                    let region: Vec<String> = bg
                        .vertices()
                        .filter(|&v| cond.label[v] == comp && self.from_big_vertex[v].is_some())
                        .take(4)
                        .map(|v| bg.name(v).to_string())
                        .collect();
                    out.push(WitnessStep::End {
                        from: std::mem::take(&mut from),
                        to: g.name(a.vertex).to_string(),
                        region,
                    });
                    path.push(g.name(a.vertex).to_string());
                }
            }
        }
        out.push(WitnessStep::Path { vertices: path });
        out
    }

    /// Reachability from `x` to `y` avoiding `forbid`, with the region beyond
    /// `inner` condensed.
    pub fn reach(&self, x: VertexIdx, y: VertexIdx, inner: usize, forbid: &BTreeSet<EdgeIdx>) -> Result<ReachResult> {
        self.check_inner(inner)?;
        let end_nodes = self.condense(inner, forbid).nodes.len();
        Ok(match self.witness(x, y, inner, forbid) {
            None => ReachResult {
                inner,
                reachable: false,
                witness: Vec::new(),
                end_nodes,
            },
            Some((w, cond)) => ReachResult {
                inner,
                reachable: true,
                witness: self.render(x, &w, &cond),
                end_nodes,
            },
        })
    }

    fn check_inner(&self, inner: usize) -> Result<()> {
        if inner >= self.outer() {
            return Err(Error::Malformed(format!(
                "inner radius {inner} must be below the outer radius {}",
                self.outer()
            )));
        }
        Ok(())
    }

    /// Plain directed reachability inside the ball.
    pub fn plain_reach(&self, x: VertexIdx, y: VertexIdx, forbid: &BTreeSet<EdgeIdx>) -> bool {
        let none = Condensation {
            label: Vec::new(),
            nodes: Vec::new(),
            attachments: Vec::new(),
        };
        self.search(x, y, 0, forbid, &none).is_some()
    }

    /// Runs [`Self::reach`] for every inner radius in `inners` and reports agreement.
    pub fn reach_report(&self, x: VertexIdx, y: VertexIdx, inners: std::ops::RangeInclusive<usize>, forbid: &BTreeSet<EdgeIdx>) -> Result<ReachReport> {
        let per_inner = inners.map(|i| self.reach(x, y, i, forbid)).collect::<Result<Vec<_>>>()?;
        let reachable = per_inner.last().is_some_and(|r| r.reachable);
        let stable = per_inner.iter().all(|r| r.reachable == reachable);
        Ok(ReachReport {
            source: self.ball.graph.name(x).to_string(),
            target: self.ball.graph.name(y).to_string(),
            outer: self.outer(),
            plain: self.plain_reach(x, y, forbid),
            per_inner,
            reachable,
            stable,
        })
    }

    fn plain_bound(&self, x: VertexIdx, y: VertexIdx, forbid: &BTreeSet<EdgeIdx>, limit: usize) -> usize {
        let g = &self.ball.graph;
        match &self.dirs {
            None => lambda_unchecked(g, x, y, Some(limit), forbid),
            Some(d) => {
                let partial: Vec<Option<Dir>> = d.iter().map(|&x| Some(x)).collect();
                partial_arc_lambda(g, &partial, x, y, Some(limit), forbid)
            }
        }
    }

    /// Smallest number of ball edges whose removal destroys every witness,
    /// searched up to `cap`. Uses the orientation when the context has one.
    pub fn topo_lambda(&self, x: VertexIdx, y: VertexIdx, inner: usize, cap: usize) -> Result<TopoValue> {
        self.check_inner(inner)?;
        if x == y {
            return Err(Error::SameEndpoints(self.ball.graph.name(x).to_string()));
        }
        let lower = self.plain_bound(x, y, &BTreeSet::new(), cap + 1);
        let mut nodes = 0usize;
        for budget in lower..=cap {
            let mut seen = HashSet::new();
            if self.hit(x, y, inner, &mut BTreeSet::new(), budget, &mut seen, &mut nodes)? {
                return Ok(TopoValue::Exact(budget));
            }
        }
        Ok(TopoValue::AtLeast(cap + 1))
    }

    /// Can at most `budget` edges (beyond `forbid`) kill every witness?
    #[allow(clippy::too_many_arguments)]
    fn hit(
        &self,
        x: VertexIdx,
        y: VertexIdx,
        inner: usize,
        forbid: &mut BTreeSet<EdgeIdx>,
        budget: usize,
        seen: &mut HashSet<Vec<EdgeIdx>>,
        nodes: &mut usize,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > NODE_BUDGET {
            return Err(Error::CapExceeded(format!("separator search exceeded {NODE_BUDGET} nodes")));
        }
        if !seen.insert(forbid.iter().copied().collect()) {
            return Ok(false);
        }
        let Some((w, _)) = self.witness(x, y, inner, forbid) else {
            return Ok(true);
        };
        if budget == 0 || self.plain_bound(x, y, forbid, budget + 1) > budget {
            return Ok(false);
        }
        for e in w.support {
            forbid.insert(e);
            let ok = self.hit(x, y, inner, forbid, budget - 1, seen, nodes)?;
            forbid.remove(&e);
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairBound {
    pub source: String,
    pub target: String,
    pub lambda: usize,
    pub required: usize,
    pub plain_arc_lambda: usize,
    /// Verdict per inner radius.
    pub holds: Vec<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HalfBoundReport {
    pub outer: usize,
    pub inner: Vec<usize>,
    pub pairs: Vec<PairBound>,
    pub violations: usize,
    pub stable: bool,
    pub verdict: bool,
}

/// Checks that the oriented topological connectivity is at least
/// `⌊λ(x, y) / 2⌋` for every ordered pair of interior vertices, where `λ` is
/// measured in `ball(outer + lookahead)`.
pub fn check_half_bound(ctx: &TopoContext, inners: std::ops::RangeInclusive<usize>, pairs: Option<&[(VertexIdx, VertexIdx)]>) -> Result<HalfBoundReport> {
    use rayon::prelude::*;
    let g = &ctx.ball.graph;
    let interior = ctx.ball.interior_vertices();
    let all: Vec<(VertexIdx, VertexIdx)> = match pairs {
        Some(p) => p.to_vec(),
        None => interior
            .iter()
            .flat_map(|&x| interior.iter().filter(move |&&y| y != x).map(move |&y| (x, y)))
            .collect(),
    };
    let inner: Vec<usize> = inners.collect();
    for &i in &inner {
        ctx.check_inner(i)?;
    }
    let big = &ctx.big.graph;
    let results = all
        .par_iter()
        .map(|&(x, y)| -> Result<PairBound> {
            let (bx, by) = (ctx.to_big_vertex[x], ctx.to_big_vertex[y]);
            let lam = lambda_unchecked(big, bx, by, None, &BTreeSet::new());
            let required = lam / 2;
            let plain = ctx.plain_bound(x, y, &BTreeSet::new(), usize::MAX);
            let holds = inner
                .iter()
                .map(|&i| {
                    if required == 0 {
                        return Ok(true);
                    }
                    Ok(ctx.topo_lambda(x, y, i, required - 1)?.at_least(required))
                })
                .collect::<Result<Vec<bool>>>()?;
            Ok(PairBound {
                source: g.name(x).to_string(),
                target: g.name(y).to_string(),
                lambda: lam,
                required,
                plain_arc_lambda: plain,
                holds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = results.iter().filter(|p| !p.holds.iter().all(|&h| h)).count();
    let stable = results.iter().all(|p| p.holds.iter().all(|&h| h == p.holds[0]));
    Ok(HalfBoundReport {
        outer: ctx.outer(),
        inner,
        pairs: results,
        violations,
        stable,
        verdict: violations == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{arc_lambda, lambda};
    use crate::lazy::{ladder_through_end_orientation, outward_ray_orientation};

    fn ladder_ctx(outer: usize) -> TopoContext {
        let g = LazyGraph::one_way_ladder();
        let b = ball(&g, &["a:0", "b:0"], outer + 3).unwrap();
        let o = ladder_through_end_orientation(&b).unwrap();
        TopoContext::new(&g, &["a:0", "b:0"], outer, 2, Some((&b.graph, &o))).unwrap()
    }

    #[test]
    fn ladder_reaches_through_the_end() {
        let ctx = ladder_ctx(8);
        let (a0, b0) = (ctx.vertex("a:0").unwrap(), ctx.vertex("b:0").unwrap());
        let o = ctx.orientation().unwrap();
        assert_eq!(arc_lambda(ctx.graph(), &o, a0, b0).unwrap(), 0);
        let r = ctx.reach_report(a0, b0, 3..=7, &BTreeSet::new()).unwrap();
        assert!(!r.plain);
        assert!(r.reachable && r.stable);
        let w = &r.per_inner[0].witness;
        assert_eq!(w.len(), 3);
        assert!(matches!(&w[1], WitnessStep::End { .. }));
        assert!(ctx.topo_lambda(a0, b0, 5, 2).unwrap().at_least(1));
    }

    #[test]
    fn one_way_ray_cannot_come_back() {
        let g = LazyGraph::k_ray(1);
        let b = ball(&g, &["r:0"], 10).unwrap();
        let o = outward_ray_orientation(&b).unwrap();
        for outer in [6, 8] {
            let ctx = TopoContext::new(&g, &["r:0"], outer, 2, Some((&b.graph, &o))).unwrap();
            let (x, y) = (ctx.vertex("r:5").unwrap(), ctx.vertex("r:0").unwrap());
            let r = ctx.reach_report(x, y, 0..=outer - 1, &BTreeSet::new()).unwrap();
            assert!(!r.reachable && r.stable);
            assert!(ctx.reach(y, x, 2, &BTreeSet::new()).unwrap().reachable);
        }
    }

    #[test]
    fn finite_graphs_match_plain_connectivity() {
        let k4 = MultiGraph::from_pairs([("a", "b", 1), ("a", "c", 1), ("a", "d", 1), ("b", "c", 1), ("b", "d", 1), ("c", "d", 1)]).unwrap();
        let g = LazyGraph::finite(k4.clone());
        let ctx = TopoContext::new(&g, &["a"], 2, 1, None).unwrap();
        let (a, b) = (ctx.vertex("a").unwrap(), ctx.vertex("b").unwrap());
        assert_eq!(ctx.topo_lambda(a, b, 1, 4).unwrap(), TopoValue::Exact(3));
        assert_eq!(lambda(&k4, a, b).unwrap(), 3);
        assert_eq!(ctx.topo_lambda(a, b, 1, 2).unwrap(), TopoValue::AtLeast(3));
    }

    #[test]
    fn undirected_ray_has_single_edge_separators() {
        let g = LazyGraph::k_ray(1);
        let ctx = TopoContext::new(&g, &["r:0"], 8, 2, None).unwrap();
        let (x, y) = (ctx.vertex("r:0").unwrap(), ctx.vertex("r:3").unwrap());
        assert_eq!(ctx.topo_lambda(x, y, 5, 4).unwrap(), TopoValue::Exact(1));
    }

    #[test]
    fn boundary_and_forbidden_edges() {
        let ctx = ladder_ctx(6);
        assert!(matches!(ctx.vertex("a:6"), Err(Error::BoundaryVertex(_))));
        let (a0, b0) = (ctx.vertex("a:0").unwrap(), ctx.vertex("b:0").unwrap());
        let cut = ctx.forbid(&[EdgeId::new("a:0", "a:1", 0).unwrap()]).unwrap();
        assert!(!ctx.reach(a0, b0, 3, &cut).unwrap().reachable);
        assert!(ctx.forbid(&[EdgeId::new("a:20", "a:21", 0).unwrap()]).is_err());
        assert!(ctx.reach(a0, b0, 6, &BTreeSet::new()).is_err());
    }

    #[test]
    fn half_bound_on_ladder_preset() {
        let ctx = ladder_ctx(6);
        let r = check_half_bound(&ctx, 3..=5, None).unwrap();
        assert!(r.verdict && r.stable, "{} violations", r.violations);
    }
}
