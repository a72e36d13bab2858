//! Vertex expansion into rays.
//!
//! A target vertex `v` with incident edges `e^v_0, e^v_1, …` is replaced by a
//! ray `(v,0), (v,1), …` and `e^v_i` is re-attached at `(v,i)`. In k-ray
//! mode every ray step carries `l` parallel edges; in expanding mode the step
//! between `(v,i-1)` and `(v,i)` carries `i`. Rays are truncated: by default a
//! target gets exactly `deg(v)` ray vertices.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::connectivity::lambda;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeIdx, GraphBuilder, MultiGraph, VertexIdx, Walk};
use crate::orientation::{Dir, Orientation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionMode {
    KRay(u32),
    Expanding,
}

impl ExpansionMode {
    /// Parallel edges between ray vertices `step - 1` and `step`.
    pub fn step_multiplicity(self, step: usize) -> u32 {
        match self {
            ExpansionMode::KRay(l) => l,
            ExpansionMode::Expanding => step as u32,
        }
    }
}

impl std::str::FromStr for ExpansionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "expanding" {
            return Ok(ExpansionMode::Expanding);
        }
        s.strip_prefix("kray:")
            .and_then(|l| l.parse().ok())
            .filter(|&l: &u32| l > 0)
            .map(ExpansionMode::KRay)
            .ok_or_else(|| Error::Malformed(format!("unknown expansion mode `{s}` (kray:L or expanding)")))
    }
}

impl std::fmt::Display for ExpansionMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExpansionMode::KRay(l) => write!(f, "kray:{l}"),
            ExpansionMode::Expanding => write!(f, "expanding"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ExpandConfig {
    /// Minimum number of ray vertices per target; the ray is never shorter than `deg(v)`.
    pub ray_len: Option<usize>,
    /// Attachment order overrides: target name to its incident edge ids in order.
    pub orders: BTreeMap<String, Vec<EdgeId>>,
}

pub fn ray_vertex(v: &str, i: usize) -> String {
    format!("({v},{i})")
}

#[derive(Clone, Debug)]
struct Ray {
    len: usize,
    /// Origin edges in attachment order.
    order: Vec<EdgeIdx>,
    /// `steps[s]` holds the parallels between `(v,s)` and `(v,s+1)`.
    steps: Vec<Vec<EdgeIdx>>,
}

#[derive(Clone, Debug)]
pub struct ExpandedGraph {
    pub graph: MultiGraph,
    pub origin: MultiGraph,
    pub mode: ExpansionMode,
    rays: BTreeMap<VertexIdx, Ray>,
    edge_map: Vec<EdgeIdx>,
    origin_edge: Vec<Option<EdgeIdx>>,
    projection: Vec<VertexIdx>,
    ray_index: Vec<Option<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RayMap {
    pub vertex: String,
    pub length: usize,
    pub order: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgePair {
    pub origin: String,
    pub expansion: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionMapJson {
    pub mode: String,
    pub origin: String,
    pub expansion: String,
    pub rays: Vec<RayMap>,
    pub edges: Vec<EdgePair>,
}

/// Replaces every target by a truncated ray.
pub fn expand(g: &MultiGraph, targets: &[&str], mode: ExpansionMode, cfg: &ExpandConfig) -> Result<ExpandedGraph> {
    if mode == ExpansionMode::KRay(0) {
        return Err(Error::Malformed("kray multiplicity must be positive".into()));
    }
    let mut rays: BTreeMap<VertexIdx, Ray> = BTreeMap::new();
    for t in targets {
        let v = g.require_vertex(t)?;
        let deg = g.degree(v);
        if deg < 2 {
            return Err(Error::DegenerateExpansion {
                vertex: t.to_string(),
                degree: deg,
            });
        }
        let order = match cfg.orders.get(*t) {
            None => g.incident(v).to_vec(),
            Some(ids) => {
                let order = ids.iter().map(|id| g.edge_by_id(id).ok_or_else(|| Error::UnknownEdge(id.to_string()))).collect::<Result<Vec<_>>>()?;
                let given: BTreeSet<EdgeIdx> = order.iter().copied().collect();
                let actual: BTreeSet<EdgeIdx> = g.incident(v).iter().copied().collect();
                if given != actual || order.len() != deg {
                    return Err(Error::Malformed(format!("attachment order for `{t}` must list each incident edge once")));
                }
                order
            }
        };
        let len = deg.max(cfg.ray_len.unwrap_or(0));
        rays.insert(v, Ray { len, order, steps: Vec::new() });
    }
    let mut attach: HashMap<(VertexIdx, EdgeIdx), usize> = HashMap::new();
    for (&v, ray) in &rays {
        for (i, &e) in ray.order.iter().enumerate() {
            attach.insert((v, e), i);
        }
    }
    let image = |v: VertexIdx, e: EdgeIdx| -> String {
        match attach.get(&(v, e)) {
            Some(&i) => ray_vertex(g.name(v), i),
            None => g.name(v).to_string(),
        }
    };

    // Add edges one at a time so that each receives a predictable parallel index.
    let mut b = GraphBuilder::new();
    let mut counts: BTreeMap<(String, String), u32> = BTreeMap::new();
    let mut push = |b: &mut GraphBuilder, x: &str, y: &str| -> Result<EdgeId> {
        b.add_edge(x, y)?;
        let key = if x < y { (x.to_string(), y.to_string()) } else { (y.to_string(), x.to_string()) };
        let c = counts.entry(key).or_insert(0);
        *c += 1;
        EdgeId::new(x, y, *c - 1)
    };
    for v in g.vertices() {
        if let Some(ray) = rays.get(&v) {
            for i in 0..ray.len {
                let name = ray_vertex(g.name(v), i);
                if g.vertex(&name).is_some() {
                    return Err(Error::Malformed(format!("ray vertex `{name}` collides with an existing vertex")));
                }
                b.add_vertex(name)?;
            }
        } else {
            b.add_vertex(g.name(v).to_string())?;
        }
    }
    let mut origin_ids = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() {
        let ed = g.edge(e);
        origin_ids.push(push(&mut b, &image(ed.u, e), &image(ed.v, e))?);
    }
    let mut step_ids: BTreeMap<(VertexIdx, usize), Vec<EdgeId>> = BTreeMap::new();
    for (&v, ray) in &rays {
        for s in 1..ray.len {
            for _ in 0..mode.step_multiplicity(s) {
                let id = push(&mut b, &ray_vertex(g.name(v), s - 1), &ray_vertex(g.name(v), s))?;
                step_ids.entry((v, s - 1)).or_default().push(id);
            }
        }
    }
    let graph = b.build();
    let lookup = |id: &EdgeId| graph.edge_by_id(id).expect("edge just added");
    let edge_map: Vec<EdgeIdx> = origin_ids.iter().map(lookup).collect();
    let mut origin_edge = vec![None; graph.edge_count()];
    for (e, &f) in edge_map.iter().enumerate() {
        origin_edge[f] = Some(e);
    }
    for (&v, ray) in rays.iter_mut() {
        ray.steps = (0..ray.len.saturating_sub(1))
            .map(|s| step_ids.get(&(v, s)).map_or_else(Vec::new, |ids| ids.iter().map(lookup).collect()))
            .collect();
    }
    let mut projection = vec![0; graph.vertex_count()];
    let mut ray_index = vec![None; graph.vertex_count()];
    for x in graph.vertices() {
        match g.vertex(graph.name(x)) {
            Some(v) => projection[x] = v,
            None => {
                let (v, i) = split_ray_vertex(graph.name(x)).expect("ray vertex name");
                projection[x] = g.vertex(v).expect("target exists");
                ray_index[x] = Some(i);
            }
        }
    }
    Ok(ExpandedGraph {
        graph,
        origin: g.clone(),
        mode,
        rays,
        edge_map,
        origin_edge,
        projection,
        ray_index,
    })
}

fn split_ray_vertex(name: &str) -> Option<(&str, usize)> {
    let inner = name.strip_prefix('(')?.strip_suffix(')')?;
    let (v, i) = inner.rsplit_once(',')?;
    Some((v, i.parse().ok()?))
}

impl ExpandedGraph {
    /// The vertex projection `π` onto the origin.
    pub fn project(&self, x: VertexIdx) -> VertexIdx {
        self.projection[x]
    }

    pub fn ray_index(&self, x: VertexIdx) -> Option<usize> {
        self.ray_index[x]
    }

    pub fn is_target(&self, v: VertexIdx) -> bool {
        self.rays.contains_key(&v)
    }

    pub fn ray_len(&self, v: VertexIdx) -> Option<usize> {
        self.rays.get(&v).map(|r| r.len)
    }

    /// Expansion edge carrying origin edge `e`.
    pub fn image_edge(&self, e: EdgeIdx) -> EdgeIdx {
        self.edge_map[e]
    }

    /// Origin edge carried by an expansion edge, `None` for ray edges.
    pub fn origin_edge(&self, f: EdgeIdx) -> Option<EdgeIdx> {
        self.origin_edge[f]
    }

    pub fn is_ray_edge(&self, f: EdgeIdx) -> bool {
        self.origin_edge[f].is_none()
    }

    /// Parallels between `(v,step)` and `(v,step+1)`.
    pub fn ray_step(&self, v: VertexIdx, step: usize) -> &[EdgeIdx] {
        &self.rays[&v].steps[step]
    }

    /// Ray index at which origin edge `e` attaches to target `v`.
    pub fn attachment(&self, v: VertexIdx, e: EdgeIdx) -> Option<usize> {
        self.rays.get(&v)?.order.iter().position(|&x| x == e)
    }

    /// All expansion vertices projecting to `v`.
    pub fn preimage(&self, v: VertexIdx) -> Vec<VertexIdx> {
        self.graph.vertices().filter(|&x| self.projection[x] == v).collect()
    }

    fn image_vertex(&self, v: VertexIdx, i: usize) -> VertexIdx {
        if self.is_target(v) {
            self.graph
                .vertex(&ray_vertex(self.origin.name(v), i))
                .expect("index within ray")
        } else {
            self.graph.vertex(self.origin.name(v)).expect("untouched vertex")
        }
    }

    /// Lifts an origin path, walking along rays between attachment points.
    /// Each ray step uses the lowest parallel edge not in `forbidden`.
    pub fn lift_path(&self, p: &Walk, forbidden: &BTreeSet<EdgeIdx>) -> Result<Walk> {
        if !p.is_valid_in(&self.origin) {
            return Err(Error::Malformed("not a walk of the origin graph".into()));
        }
        let mut out = Walk::default();
        let n = p.vertices.len();
        for k in 0..n {
            let v = p.vertices[k];
            let enter = (k > 0).then(|| p.edges[k - 1]);
            let leave = (k + 1 < n).then(|| p.edges[k]);
            let pos = |e: Option<EdgeIdx>| e.and_then(|e| self.attachment(v, e));
            let from = pos(enter).or(pos(leave)).unwrap_or(0);
            let to = pos(leave).or(pos(enter)).unwrap_or(0);
            if let Some(e) = enter {
                let f = self.edge_map[e];
                if forbidden.contains(&f) {
                    return Err(Error::Routing(format!("edge `{}` is forbidden", self.graph.edge_id(f))));
                }
                out.edges.push(f);
            }
            out.vertices.push(self.image_vertex(v, from));
            if self.is_target(v) && from != to {
                let range: Vec<(usize, usize)> = if from < to {
                    (from..to).map(|s| (s, s + 1)).collect()
                } else {
                    (to..from).rev().map(|s| (s + 1, s)).collect()
                };
                for (a, b) in range {
                    let step = self.ray_step(v, a.min(b));
                    let f = *step.iter().find(|f| !forbidden.contains(f)).ok_or_else(|| {
                        Error::Routing(format!(
                            "every parallel between {} and {} is forbidden",
                            ray_vertex(self.origin.name(v), a),
                            ray_vertex(self.origin.name(v), b)
                        ))
                    })?;
                    out.edges.push(f);
                    out.vertices.push(self.image_vertex(v, b));
                }
            }
        }
        Ok(out)
    }

    /// Drops ray edges and projects vertices. Returns the origin trail and a
    /// path extracted from it by cutting out cycles.
    pub fn project_path(&self, q: &Walk) -> Result<(Walk, Walk)> {
        if !q.is_valid_in(&self.graph) {
            return Err(Error::Malformed("not a walk of the expansion".into()));
        }
        let mut trail = Walk::single(self.projection[q.vertices[0]]);
        for (i, &f) in q.edges.iter().enumerate() {
            if let Some(e) = self.origin_edge[f] {
                trail.edges.push(e);
                trail.vertices.push(self.projection[q.vertices[i + 1]]);
            }
        }
        Ok((trail.clone(), remove_cycles(&trail)))
    }

    /// Restricts an orientation of the expansion to the origin edges.
    pub fn induce_orientation(&self, o: &Orientation) -> Result<Orientation> {
        o.check_total(&self.graph)?;
        let dirs = (0..self.origin.edge_count())
            .map(|e| {
                let tail = self.projection[o.tail(&self.graph, self.edge_map[e])];
                if tail == self.origin.edge(e).u {
                    Dir::Forward
                } else {
                    Dir::Backward
                }
            })
            .collect();
        Orientation::new(&self.origin, dirs)
    }

    /// Returns `(u', v')` in the preimages of `u` and `v` with the same local
    /// edge-connectivity as `u, v`: a target `w` is replaced by `(w, m)` where
    /// `m = λ(u, v)`.
    pub fn connectivity_witness_pair(&self, u: VertexIdx, v: VertexIdx) -> Result<(VertexIdx, VertexIdx)> {
        let m = lambda(&self.origin, u, v)?;
        let pick = |w: VertexIdx| -> Result<VertexIdx> {
            match self.rays.get(&w) {
                None => Ok(self.image_vertex(w, 0)),
                Some(r) if m < r.len => Ok(self.image_vertex(w, m)),
                Some(_) => Err(Error::TruncationTooShort {
                    vertex: self.origin.name(w).to_string(),
                    required: m + 1,
                }),
            }
        };
        Ok((pick(u)?, pick(v)?))
    }

    pub fn map_json(&self) -> ExpansionMapJson {
        ExpansionMapJson {
            mode: self.mode.to_string(),
            origin: self.origin.content_hash(),
            expansion: self.graph.content_hash(),
            rays: self
                .rays
                .iter()
                .map(|(&v, r)| RayMap {
                    vertex: self.origin.name(v).to_string(),
                    length: r.len,
                    order: r.order.iter().map(|&e| self.origin.edge_id(e).to_string()).collect(),
                })
                .collect(),
            edges: (0..self.origin.edge_count())
                .map(|e| EdgePair {
                    origin: self.origin.edge_id(e).to_string(),
                    expansion: self.graph.edge_id(self.edge_map[e]).to_string(),
                })
                .collect(),
        }
    }
}

/// Shortcuts a walk to a path: whenever a vertex repeats, the closed
/// sub-walk between its two visits is dropped.
pub fn remove_cycles(w: &Walk) -> Walk {
    let mut out = Walk::single(w.vertices[0]);
    for (i, &e) in w.edges.iter().enumerate() {
        let next = w.vertices[i + 1];
        if let Some(p) = out.vertices.iter().position(|&x| x == next) {
            out.vertices.truncate(p + 1);
            out.edges.truncate(p);
        } else {
            out.edges.push(e);
            out.vertices.push(next);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{edge_connectivity, lambda};
    use crate::orientation::{check_k_arc_connected, check_well_balanced, orient_exact, ExactOutcome, Mode, SearchConfig};

    fn wheel(n: usize) -> MultiGraph {
        let mut b = GraphBuilder::new();
        for i in 0..n {
            let (x, y) = (format!("r{i}"), format!("r{}", (i + 1) % n));
            b.add_edge(&x, &y).unwrap();
            b.add_edge("h", &x).unwrap();
        }
        b.build()
    }

    #[test]
    fn wheel_hub_into_two_ray() {
        let g = wheel(4);
        let x = expand(&g, &["h"], ExpansionMode::KRay(2), &ExpandConfig::default()).unwrap();
        assert_eq!(x.graph.vertex_count(), 8);
        assert_eq!(x.graph.edge_count(), 14);
        let h = g.vertex("h").unwrap();
        for (i, &e) in g.incident(h).iter().enumerate() {
            assert_eq!(x.attachment(h, e), Some(i));
            let f = x.graph.edge(x.image_edge(e));
            let ends = [x.graph.name(f.u), x.graph.name(f.v)];
            assert!(ends.contains(&ray_vertex("h", i).as_str()));
        }
        for s in 0..3 {
            assert_eq!(x.ray_step(h, s).len(), 2);
        }
    }

    #[test]
    fn degenerate_target_rejected() {
        let g = MultiGraph::from_pairs([("a", "b", 1), ("b", "c", 1)]).unwrap();
        assert!(matches!(
            expand(&g, &["a"], ExpansionMode::KRay(2), &ExpandConfig::default()),
            Err(Error::DegenerateExpansion { degree: 1, .. })
        ));
    }

    #[test]
    fn expanding_steps_grow() {
        let g = MultiGraph::from_pairs([("u", "v", 4)]).unwrap();
        let x = expand(&g, &["u"], ExpansionMode::Expanding, &ExpandConfig::default()).unwrap();
        let u = g.vertex("u").unwrap();
        assert_eq!(x.ray_len(u), Some(4));
        let steps: Vec<usize> = (0..3).map(|s| x.ray_step(u, s).len()).collect();
        assert_eq!(steps, vec![1, 2, 3]);
        assert_eq!(x.graph.edge_count(), 4 + 6);
    }

    #[test]
    fn lift_and_project_round_trip() {
        let g = wheel(4);
        let x = expand(&g, &["h"], ExpansionMode::KRay(2), &ExpandConfig::default()).unwrap();
        let p = Walk::through(&g, &["r0", "h", "r2"]).unwrap();
        let q = x.lift_path(&p, &BTreeSet::new()).unwrap();
        assert_eq!(q.names(&x.graph), vec!["r0", "(h,0)", "(h,1)", "(h,2)", "r2"]);
        let (trail, path) = x.project_path(&q).unwrap();
        assert_eq!(trail, p);
        assert_eq!(path, p);

        // forbid the first parallel of the first step
        let h = g.vertex("h").unwrap();
        let blocked = x.ray_step(h, 0)[0];
        let q2 = x.lift_path(&p, &BTreeSet::from([blocked])).unwrap();
        assert_eq!(q2.edges[1], x.ray_step(h, 0)[1]);
        let both: BTreeSet<EdgeIdx> = x.ray_step(h, 0).iter().copied().collect();
        assert!(matches!(x.lift_path(&p, &both), Err(Error::Routing(_))));

        let off = Walk::through(&g, &["r0", "r1", "r2"]).unwrap();
        let lifted = x.lift_path(&off, &BTreeSet::new()).unwrap();
        assert_eq!(lifted.names(&x.graph), vec!["r0", "r1", "r2"]);
    }

    #[test]
    fn projection_skips_excursions() {
        let g = wheel(4);
        let x = expand(&g, &["h"], ExpansionMode::KRay(2), &ExpandConfig::default()).unwrap();
        // r0 (h,0) (h,1) r1 r2 (h,2) (h,3) r3
        let q = Walk::through(&x.graph, &["r0", "(h,0)", "(h,1)", "r1", "r2", "(h,2)", "(h,3)", "r3"]).unwrap();
        let (trail, path) = x.project_path(&q).unwrap();
        assert_eq!(trail.names(&g), vec!["r0", "h", "r1", "r2", "h", "r3"]);
        assert_eq!(path.names(&g), vec!["r0", "h", "r3"]);
        let inside = Walk::through(&x.graph, &["(h,0)", "(h,1)", "(h,2)"]).unwrap();
        let (trail, path) = x.project_path(&inside).unwrap();
        assert!(trail.edges.is_empty());
        assert_eq!(path.names(&g), vec!["h"]);
    }

    #[test]
    fn induced_orientation_restricts() {
        let g = MultiGraph::from_pairs([("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("a", "d", 2)]).unwrap();
        let x = expand(&g, &["a"], ExpansionMode::KRay(2), &ExpandConfig::default()).unwrap();
        let ExactOutcome::Found(o) = orient_exact(&x.graph, Mode::KArc(1), &SearchConfig::default()).unwrap() else {
            panic!("expansion of a 4-edge-connected graph has a strong orientation");
        };
        let induced = x.induce_orientation(&o).unwrap();
        for e in 0..g.edge_count() {
            let f = x.image_edge(e);
            assert_eq!(x.project(o.tail(&x.graph, f)), induced.tail(&g, e));
        }
        assert!(check_k_arc_connected(&g, &induced, 1).unwrap());
    }

    #[test]
    fn witness_pair_matches_lambda() {
        let g = MultiGraph::from_pairs([("u", "v", 3)]).unwrap();
        let short = expand(&g, &["u"], ExpansionMode::Expanding, &ExpandConfig::default()).unwrap();
        let (u, v) = (g.vertex("u").unwrap(), g.vertex("v").unwrap());
        assert!(matches!(
            short.connectivity_witness_pair(u, v),
            Err(Error::TruncationTooShort { required: 4, .. })
        ));
        let cfg = ExpandConfig { ray_len: Some(4), ..Default::default() };
        let x = expand(&g, &["u"], ExpansionMode::Expanding, &cfg).unwrap();
        let (a, b) = x.connectivity_witness_pair(u, v).unwrap();
        assert_eq!(x.graph.name(a), "(u,3)");
        assert_eq!(lambda(&x.graph, a, b).unwrap(), 3);

        let w = wheel(5);
        let cfg = ExpandConfig { ray_len: Some(6), ..Default::default() };
        let x = expand(&w, &["h"], ExpansionMode::Expanding, &cfg).unwrap();
        for (p, q) in [("r0", "r2"), ("r1", "h"), ("h", "r4")] {
            let (p, q) = (w.vertex(p).unwrap(), w.vertex(q).unwrap());
            let (a, b) = x.connectivity_witness_pair(p, q).unwrap();
            assert_eq!(lambda(&x.graph, a, b).unwrap(), lambda(&w, p, q).unwrap());
            for &a in &x.preimage(p) {
                for &b in &x.preimage(q) {
                    assert!(lambda(&x.graph, a, b).unwrap() <= lambda(&w, p, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn kray_expansion_stays_edge_connected() {
        // doubled 4-cycle is 4-edge-connected; kray(4) keeps that
        let g = MultiGraph::from_pairs([("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("a", "d", 2)]).unwrap();
        let x = expand(&g, &["a", "c"], ExpansionMode::KRay(4), &ExpandConfig::default()).unwrap();
        assert_eq!(edge_connectivity(&x.graph), 4);
    }

    #[test]
    fn induced_well_balanced_chain() {
        let g = MultiGraph::from_pairs([("a", "b", 2), ("b", "c", 1), ("a", "c", 1)]).unwrap();
        let x = expand(&g, &["a"], ExpansionMode::Expanding, &ExpandConfig::default()).unwrap();
        let ExactOutcome::Found(o) = orient_exact(&x.graph, Mode::WellBalanced, &SearchConfig::default()).unwrap() else {
            panic!("well-balanced orientation exists");
        };
        let induced = x.induce_orientation(&o).unwrap();
        assert!(check_well_balanced(&g, &induced).unwrap().verdict);
    }

    #[test]
    fn custom_attachment_order() {
        let g = wheel(4);
        let h = g.vertex("h").unwrap();
        let mut ids: Vec<EdgeId> = g.incident(h).iter().map(|&e| g.edge_id(e)).collect();
        ids.reverse();
        let cfg = ExpandConfig {
            orders: BTreeMap::from([("h".to_string(), ids.clone())]),
            ..Default::default()
        };
        let x = expand(&g, &["h"], ExpansionMode::KRay(1), &cfg).unwrap();
        assert_eq!(x.attachment(h, g.edge_by_id(&ids[0]).unwrap()), Some(0));
        ids.pop();
        let bad = ExpandConfig {
            orders: BTreeMap::from([("h".to_string(), ids)]),
            ..Default::default()
        };
        assert!(expand(&g, &["h"], ExpansionMode::KRay(1), &bad).is_err());
    }
}
