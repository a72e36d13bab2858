//! Edge-ends at finite resolution.
//!
//! A resolution is a depth `d` ball together with a lookahead `L`. For a finite
//! edge set `F` inside the depth-`d` ball, the classes are the components of
//! `ball(d + L) − F` that meet `ball(d)`; a class escapes when it reaches the
//! boundary of the larger ball. The lookahead keeps vertices near the inner
//! boundary from looking isolated just because their far side was truncated.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::connectivity::{for_each_subset, is_bond};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeIdx, VertexIdx};
use crate::lazy::{ball, Ball, LazyGraph};

pub const DEFAULT_LOOKAHEAD: usize = 2;

#[derive(Clone, Debug)]
pub struct Resolution {
    pub family: String,
    pub inner: Ball,
    pub outer: Ball,
    pub lookahead: usize,
    /// Outer index of every inner edge, in inner order.
    inner_edges: Vec<EdgeIdx>,
    in_inner: Vec<bool>,
    connected: bool,
    boundary_total: usize,
    inner_total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndClass {
    /// Vertices of the inner ball in this class.
    pub vertices: Vec<String>,
    pub escaping: bool,
    /// Infinite-degree vertices in the class. A class that keeps containing the
    /// same such vertex under refinement is evidence of edge-domination.
    pub infinite_degree: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EndApprox {
    pub family: String,
    pub roots: Vec<String>,
    pub depth: usize,
    pub lookahead: usize,
    pub cut: Vec<String>,
    pub classes: Vec<EndClass>,
    pub escaping: usize,
}

impl EndApprox {
    /// Index of the class holding an inner vertex.
    pub fn class_of(&self, v: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.vertices.iter().any(|x| x == v))
    }
}

impl Resolution {
    pub fn new(g: &LazyGraph, roots: &[&str], depth: usize, lookahead: usize) -> Result<Self> {
        let inner = ball(g, roots, depth)?;
        let outer = ball(g, roots, depth + lookahead)?;
        let inner_edges = (0..inner.graph.edge_count())
            .map(|e| outer.graph.edge_by_id(&inner.graph.edge_id(e)).expect("balls are nested"))
            .collect();
        let in_inner: Vec<bool> = outer.graph.names().iter().map(|n| inner.contains(n)).collect();
        Ok(Resolution {
            family: g.to_string(),
            connected: outer.graph.is_connected(),
            boundary_total: outer.boundary_vertices().len(),
            inner_total: in_inner.iter().filter(|&&b| b).count(),
            inner,
            outer,
            lookahead,
            inner_edges,
            in_inner,
        })
    }

    /// Outer indices of the edges of the inner ball.
    pub fn inner_edges(&self) -> &[EdgeIdx] {
        &self.inner_edges
    }

    pub fn is_inner(&self, v: VertexIdx) -> bool {
        self.in_inner[v]
    }

    /// Translates edge ids to outer indices; every edge must lie in the inner ball.
    pub fn cut_from_ids(&self, ids: &[EdgeId]) -> Result<BTreeSet<EdgeIdx>> {
        ids.iter()
            .map(|id| {
                self.inner
                    .graph
                    .edge_by_id(id)
                    .map(|e| self.inner_edges[e])
                    .ok_or_else(|| Error::OutsideBall(id.to_string()))
            })
            .collect()
    }

    /// Outer component labels after removing `cut`, with an escape flag per label.
    pub fn labels(&self, cut: &BTreeSet<EdgeIdx>) -> (Vec<usize>, Vec<bool>) {
        let g = &self.outer.graph;
        let (n, label) = g.components_without(cut);
        let mut escaping = vec![false; n];
        for v in self.outer.boundary_vertices() {
            escaping[label[v]] = true;
        }
        (label, escaping)
    }

    /// Number of escaping classes that meet the inner ball.
    ///
    /// Every component of `outer − F` holds an endpoint of `F`, so searches
    /// from those endpoints are interleaved until at most one is still
    /// growing; that one is the rest of the graph. The cost is bounded by the
    /// small components rather than the whole ball.
    pub fn escaping_count(&self, cut: &BTreeSet<EdgeIdx>) -> usize {
        let g = &self.outer.graph;
        if cut.is_empty() || !self.connected {
            return self.escaping_count_full(cut);
        }
        let mut owner: HashMap<VertexIdx, usize> = HashMap::new();
        let mut parent: Vec<usize> = Vec::new();
        let mut queues: Vec<VecDeque<VertexIdx>> = Vec::new();
        let mut members: Vec<Vec<VertexIdx>> = Vec::new();
        for &e in cut {
            let ed = g.edge(e);
            for v in [ed.u, ed.v] {
                if let std::collections::hash_map::Entry::Vacant(slot) = owner.entry(v) {
                    slot.insert(parent.len());
                    parent.push(parent.len());
                    queues.push(VecDeque::from([v]));
                    members.push(vec![v]);
                }
            }
        }
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        loop {
            let active: Vec<usize> = (0..parent.len()).filter(|&i| parent[i] == i && !queues[i].is_empty()).collect();
            if active.len() <= 1 {
                break;
            }
            for i in active {
                if find(&mut parent, i) != i {
                    continue;
                }
                let Some(v) = queues[i].pop_front() else { continue };
                for &e in g.incident(v) {
                    if cut.contains(&e) {
                        continue;
                    }
                    let w = g.edge(e).other(v);
                    match owner.get(&w) {
                        None => {
                            let r = find(&mut parent, i);
                            owner.insert(w, r);
                            queues[r].push_back(w);
                            members[r].push(w);
                        }
                        Some(&o) => {
                            let j = find(&mut parent, o);
                            let r = find(&mut parent, i);
                            if j != r {
                                let (big, small) = if members[r].len() >= members[j].len() { (r, j) } else { (j, r) };
                                parent[small] = big;
                                let q = std::mem::take(&mut queues[small]);
                                queues[big].extend(q);
                                let m = std::mem::take(&mut members[small]);
                                members[big].extend(m);
                            }
                        }
                    }
                }
            }
        }
        let (boundary_total, inner_total) = (self.boundary_total, self.inner_total);
        let (mut boundary_done, mut inner_done, mut count) = (0, 0, 0);
        let mut open = false;
        for i in 0..parent.len() {
            if parent[i] != i {
                continue;
            }
            if !queues[i].is_empty() {
                open = true;
                continue;
            }
            let b = members[i].iter().filter(|&&v| self.outer.is_boundary(v)).count();
            let n = members[i].iter().filter(|&&v| self.in_inner[v]).count();
            boundary_done += b;
            inner_done += n;
            if b > 0 && n > 0 {
                count += 1;
            }
        }
        // the unfinished search, if any, owns every vertex not yet assigned
        if open && boundary_total > boundary_done && inner_total > inner_done {
            count += 1;
        }
        count
    }

    fn escaping_count_full(&self, cut: &BTreeSet<EdgeIdx>) -> usize {
        let (label, escaping) = self.labels(cut);
        let met: BTreeSet<usize> = (0..label.len()).filter(|&v| self.in_inner[v]).map(|v| label[v]).collect();
        met.into_iter().filter(|&c| escaping[c]).count()
    }

    pub fn classes(&self, cut: &BTreeSet<EdgeIdx>) -> Vec<EndClass> {
        let g = &self.outer.graph;
        let (label, escaping) = self.labels(cut);
        let mut by_label: BTreeMap<usize, EndClass> = BTreeMap::new();
        for v in g.vertices().filter(|&v| self.in_inner[v]) {
            let c = by_label.entry(label[v]).or_insert_with(|| EndClass {
                vertices: Vec::new(),
                escaping: escaping[label[v]],
                infinite_degree: Vec::new(),
            });
            c.vertices.push(g.name(v).to_string());
        }
        for v in g.vertices().filter(|&v| self.outer.is_boundary(v) && self.in_inner[v]) {
            // boundary vertices inside the inner ball have infinite degree
            if let Some(c) = by_label.get_mut(&label[v]) {
                c.infinite_degree.push(g.name(v).to_string());
            }
        }
        let mut out: Vec<EndClass> = by_label.into_values().collect();
        out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        out
    }

    pub fn approx(&self, cut: &BTreeSet<EdgeIdx>) -> EndApprox {
        let classes = self.classes(cut);
        EndApprox {
            family: self.family.clone(),
            roots: self.inner.roots.clone(),
            depth: self.inner.depth,
            lookahead: self.lookahead,
            cut: cut.iter().map(|&e| self.outer.graph.edge_id(e).to_string()).collect(),
            escaping: classes.iter().filter(|c| c.escaping).count(),
            classes,
        }
    }
}

/// Classes of `ball(depth + lookahead) − F` meeting `ball(depth)`.
pub fn end_classes(g: &LazyGraph, roots: &[&str], depth: usize, cut: &[EdgeId], lookahead: usize) -> Result<EndApprox> {
    let res = Resolution::new(g, roots, depth, lookahead)?;
    let f = res.cut_from_ids(cut)?;
    Ok(res.approx(&f))
}

#[derive(Clone, Debug, Serialize)]
pub struct Refinement {
    /// Coarse class of each fine class (`None` if it meets no coarse class).
    pub map: Vec<Option<usize>>,
    /// Every fine class meets at most one coarse class, and escaping fine
    /// classes land in escaping coarse classes.
    pub coherent: bool,
}

/// Maps the classes of a finer resolution (deeper ball, larger cut) onto a coarser one.
pub fn refine(fine: &EndApprox, coarse: &EndApprox) -> Refinement {
    let mut coherent = fine.depth >= coarse.depth && coarse.cut.iter().all(|e| fine.cut.contains(e));
    let map = fine
        .classes
        .iter()
        .map(|c| {
            let hits: BTreeSet<usize> = c.vertices.iter().filter_map(|v| coarse.class_of(v)).collect();
            if hits.len() > 1 {
                coherent = false;
            }
            let first = hits.into_iter().next();
            if let Some(k) = first {
                if c.escaping && !coarse.classes[k].escaping {
                    coherent = false;
                }
            }
            first
        })
        .collect();
    Refinement { map, coherent }
}

/// Escaping components of `G − V_depth`, a lower bound on the vertex-ends
/// that the finite separator `V_depth` distinguishes.
pub fn vertex_end_count(g: &LazyGraph, roots: &[&str], depth: usize, lookahead: usize) -> Result<usize> {
    let res = Resolution::new(g, roots, depth, lookahead.max(1))?;
    let og = &res.outer.graph;
    let rest: BTreeSet<VertexIdx> = og.vertices().filter(|&v| !res.in_inner[v]).collect();
    let sub = og.induced(&rest);
    let (n, label) = sub.components_without(&BTreeSet::new());
    let mut escaping = vec![false; n];
    for v in sub.vertices() {
        if res.outer.is_boundary(og.vertex(sub.name(v)).expect("subset")) {
            escaping[label[v]] = true;
        }
    }
    Ok(escaping.into_iter().filter(|&e| e).count())
}

#[derive(Clone, Debug, Serialize)]
pub struct Merge {
    pub cut: Vec<String>,
    pub h_classes: Vec<Vec<String>>,
    pub g_class: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub depth: usize,
    pub cap: usize,
    pub bond_faithful: bool,
    /// `h`-bonds (inside the `h` ball, size ≤ cap) that are not `g`-bonds.
    pub bond_failures: Vec<Vec<String>>,
    pub cuts_checked: usize,
    pub injective: bool,
    pub merges: Vec<Merge>,
    /// Every checked cut left `h` with no more escaping classes than `g`.
    pub class_counts_ok: bool,
    pub verdict: bool,
}

const REPORT_LIMIT: usize = 10;

/// Checks at resolution whether the inclusion of `h` into `g` behaves like a
/// topological embedding of edge-end spaces: (a) bonds of `h` are bonds of `g`;
/// (b) distinct escaping classes of `h` stay distinct in `g`, over all cuts of
/// size ≤ `cap` inside the `h` ball.
pub fn check_embedding(
    h: &LazyGraph,
    g: &LazyGraph,
    roots: &[&str],
    depth: usize,
    cap: usize,
    lookahead: usize,
) -> Result<EmbeddingReport> {
    if cap > crate::connectivity::DEFAULT_BOND_BOUND {
        return Err(Error::CapExceeded(format!("cut size cap {cap}")));
    }
    let hr = Resolution::new(h, roots, depth, lookahead)?;
    let gr = Resolution::new(g, roots, depth, lookahead)?;
    let hg = &hr.outer.graph;
    let gg = &gr.outer.graph;
    // h-ball edges in g's outer indices
    let to_g: Vec<EdgeIdx> = hr
        .inner_edges()
        .iter()
        .map(|&e| {
            let id = hg.edge_id(e);
            gr.inner.graph.edge_by_id(&id).map(|_| gg.edge_by_id(&id).expect("nested")).ok_or(Error::OutsideBall(id.to_string()))
        })
        .collect::<Result<_>>()?;
    let m = to_g.len();
    let mut cuts: Vec<Vec<usize>> = vec![Vec::new()];
    for size in 1..=cap.min(m) {
        for_each_subset(m, size, |s| cuts.push(s.to_vec()));
    }
    if cuts.len() > 5_000_000 {
        return Err(Error::CapExceeded(format!("{} candidate cuts", cuts.len())));
    }
    struct Outcome {
        bond_failure: Option<Vec<String>>,
        merges: Vec<Merge>,
        counts_ok: bool,
    }
    let outcomes: Vec<Outcome> = cuts
        .par_iter()
        .map(|s| {
            let hf: BTreeSet<EdgeIdx> = s.iter().map(|&i| hr.inner_edges()[i]).collect();
            let gf: BTreeSet<EdgeIdx> = s.iter().map(|&i| to_g[i]).collect();
            let names: Vec<String> = hf.iter().map(|&e| hg.edge_id(e).to_string()).collect();
            let bond_failure = (!hf.is_empty() && is_bond(hg, &hf) && !is_bond(gg, &gf)).then(|| names.clone());
            let hc = hr.classes(&hf);
            let gc = gr.classes(&gf);
            let mut image: BTreeMap<usize, Vec<Vec<String>>> = BTreeMap::new();
            for c in hc.iter().filter(|c| c.escaping) {
                let k = gc.iter().position(|x| x.vertices.contains(&c.vertices[0])).expect("h vertices lie in g");
                image.entry(k).or_default().push(c.vertices.clone());
            }
            let merges = image
                .into_iter()
                .filter(|(_, v)| v.len() > 1)
                .map(|(k, v)| Merge {
                    cut: names.clone(),
                    h_classes: v,
                    g_class: gc[k].vertices.clone(),
                })
                .collect();
            let counts_ok = hc.iter().filter(|c| c.escaping).count() <= gc.iter().filter(|c| c.escaping).count();
            Outcome {
                bond_failure,
                merges,
                counts_ok,
            }
        })
        .collect();
    let bond_failures: Vec<Vec<String>> = outcomes.iter().filter_map(|o| o.bond_failure.clone()).collect();
    let merges: Vec<Merge> = outcomes.iter().flat_map(|o| o.merges.iter().cloned()).collect();
    let counts_ok = outcomes.iter().all(|o| o.counts_ok);
    let bond_faithful = bond_failures.is_empty();
    let injective = merges.is_empty();
    Ok(EmbeddingReport {
        depth,
        cap,
        bond_faithful,
        bond_failures: bond_failures.into_iter().take(REPORT_LIMIT).collect(),
        cuts_checked: cuts.len(),
        injective,
        merges: merges.into_iter().take(REPORT_LIMIT).collect(),
        class_counts_ok: counts_ok,
        verdict: bond_faithful && injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> EdgeId {
        let (rest, j) = s.rsplit_once('-').unwrap();
        let (u, v) = rest.split_once('-').unwrap();
        EdgeId::new(u, v, j.parse().unwrap()).unwrap()
    }

    #[test]
    fn binary_tree_root_cut() {
        let g = LazyGraph::binary_tree();
        let a = end_classes(&g, &["t"], 5, &[id("t-t0-0"), id("t-t1-0")], 0).unwrap();
        assert_eq!((a.classes.len(), a.escaping), (3, 2));
        let a = end_classes(&g, &["t"], 5, &[id("t-t0-0"), id("t-t1-0")], 2).unwrap();
        assert_eq!((a.classes.len(), a.escaping), (3, 2));
    }

    #[test]
    fn empty_cut_single_class() {
        for g in [LazyGraph::grid(), LazyGraph::one_way_ladder(), LazyGraph::binary_tree()] {
            let a = end_classes(&g, &[&g.default_root()], 3, &[], 2).unwrap();
            assert_eq!((a.classes.len(), a.escaping), (1, 1));
        }
    }

    #[test]
    fn cut_outside_ball_rejected() {
        let g = LazyGraph::binary_tree();
        assert!(matches!(end_classes(&g, &["t"], 1, &[id("t0-t00-0")], 2), Err(Error::OutsideBall(_))));
    }

    #[test]
    fn cubic_tree_plus_root_has_one_edge_end() {
        let g = LazyGraph::cubic_tree_plus_root();
        let res = Resolution::new(&g, &["r"], 4, DEFAULT_LOOKAHEAD).unwrap();
        let m = res.inner_edges().len();
        for size in 1..=2 {
            for_each_subset(m, size, |s| {
                let f: BTreeSet<EdgeIdx> = s.iter().map(|&i| res.inner_edges()[i]).collect();
                assert_eq!(res.escaping_count(&f), 1);
            });
        }
        let counts: Vec<usize> = (1..5).map(|d| vertex_end_count(&g, &["r"], d, 2).unwrap()).collect();
        assert_eq!(counts, vec![6, 12, 24, 48]);
    }

    #[test]
    fn local_count_matches_full_labelling() {
        for g in [LazyGraph::cubic_tree_plus_root(), LazyGraph::binary_tree(), LazyGraph::one_way_ladder(), LazyGraph::grid()] {
            let root = g.default_root();
            let res = Resolution::new(&g, &[&root], 2, 1).unwrap();
            let m = res.inner_edges().len();
            for size in 1..=2 {
                for_each_subset(m, size, |s| {
                    let f: BTreeSet<EdgeIdx> = s.iter().map(|&i| res.inner_edges()[i]).collect();
                    assert_eq!(res.escaping_count(&f), res.escaping_count_full(&f), "{g} {f:?}");
                });
            }
        }
    }

    #[test]
    fn leaf_cut_needs_lookahead() {
        // cutting a depth-2 leaf from its parent and from r
        let g = LazyGraph::cubic_tree_plus_root();
        let cut = [id("r0-r00-0"), id("r-r00-0")];
        let truncated = end_classes(&g, &["r"], 2, &cut, 0).unwrap();
        assert_eq!(truncated.escaping, 2);
        let a = end_classes(&g, &["r"], 2, &cut, 2).unwrap();
        assert_eq!(a.escaping, 1);
        assert!(a.classes[0].infinite_degree.contains(&"r".to_string()));
    }

    #[test]
    fn refinement_is_coherent() {
        let g = LazyGraph::binary_tree();
        let coarse = end_classes(&g, &["t"], 3, &[id("t-t0-0")], 2).unwrap();
        let fine = end_classes(&g, &["t"], 4, &[id("t-t0-0"), id("t1-t10-0")], 2).unwrap();
        let r = refine(&fine, &coarse);
        assert!(r.coherent);
        assert!(fine.escaping >= coarse.escaping);
        assert!(r.map.iter().all(Option::is_some));
        assert!(!refine(&coarse, &fine).coherent);
    }

    #[test]
    fn double_ray_in_grid() {
        let r = check_embedding(&LazyGraph::grid_row(0), &LazyGraph::grid(), &["(0,0)"], 4, 1, 2).unwrap();
        assert!(!r.bond_faithful && !r.injective && !r.verdict);
        assert_eq!(r.merges[0].h_classes.len(), 2);
        let same = check_embedding(&LazyGraph::grid(), &LazyGraph::grid(), &["(0,0)"], 3, 1, 2).unwrap();
        assert!(same.verdict && same.class_counts_ok);
    }

    #[test]
    fn ladder_column() {
        let r = check_embedding(&LazyGraph::ladder_column(3, 0), &LazyGraph::k_column_ladder(3), &["a:0"], 4, 1, 2).unwrap();
        assert!(!r.bond_faithful);
        // a one-way ray has a single end, so a single cut edge splits off a
        // finite piece rather than a second escaping class
        assert!(r.injective);
    }
}
