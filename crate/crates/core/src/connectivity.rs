//! Exact edge- and arc-connectivity, minimum cuts and bond enumeration.
//!
//! Everything here is the oracle the rest of the crate certifies against.
//! Parallel edges become integer capacities inside the flow solver; cut and
//! path witnesses are always reported as explicit edge indices.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{EdgeIdx, MultiGraph, VertexIdx, Walk};
use crate::orientation::{Dir, Orientation};

/// Largest bond size `enumerate_bonds` accepts unless the caller raises it.
pub const DEFAULT_BOND_BOUND: usize = 6;

/// Edge subsets examined before bond enumeration refuses to continue.
const SUBSET_BUDGET: u64 = 20_000_000;

/// An edge cut with a witnessing bipartition of the vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSet {
    pub edges: BTreeSet<EdgeIdx>,
    pub source_side: BTreeSet<VertexIdx>,
    pub sink_side: BTreeSet<VertexIdx>,
    pub bond: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutReport {
    pub edges: Vec<String>,
    pub source_side: Vec<String>,
    pub sink_side: Vec<String>,
    pub bond: bool,
}

impl CutSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn report(&self, g: &MultiGraph) -> CutReport {
        CutReport {
            edges: self.edges.iter().map(|&e| g.edge_id(e).to_string()).collect(),
            source_side: self.source_side.iter().map(|&v| g.name(v).to_string()).collect(),
            sink_side: self.sink_side.iter().map(|&v| g.name(v).to_string()).collect(),
            bond: self.bond,
        }
    }
}

/// Per adjacent pair: the flow-network arc plus which parallel edges can carry
/// flow in each direction.
struct PairBundle {
    arc: usize,
    u: VertexIdx,
    v: VertexIdx,
    forward: Vec<EdgeIdx>,
    backward: Vec<EdgeIdx>,
    free: Vec<EdgeIdx>,
}

struct Network {
    net: FlowNetwork,
    bundles: Vec<PairBundle>,
}

/// `dirs[e] = None` leaves edge `e` usable in both directions.
fn build_network(g: &MultiGraph, dirs: Option<&[Option<Dir>]>, skip: &BTreeSet<EdgeIdx>) -> Network {
    let mut net = FlowNetwork::new(g.vertex_count());
    // per endpoint pair: forward arcs, backward arcs, undirected edges
    type Groups = BTreeMap<(VertexIdx, VertexIdx), (Vec<EdgeIdx>, Vec<EdgeIdx>, Vec<EdgeIdx>)>;
    let mut groups: Groups = BTreeMap::new();
    for (e, ed) in g.edges().iter().enumerate() {
        if skip.contains(&e) {
            continue;
        }
        let entry = groups.entry((ed.u, ed.v)).or_default();
        match dirs.and_then(|d| d[e]) {
            Some(Dir::Forward) => entry.0.push(e),
            Some(Dir::Backward) => entry.1.push(e),
            None => entry.2.push(e),
        }
    }
    let bundles = groups
        .into_iter()
        .map(|((u, v), (forward, backward, free))| {
            let c = free.len() as i64;
            let arc = net.add_pair(u, v, forward.len() as i64 + c, backward.len() as i64 + c);
            PairBundle {
                arc,
                u,
                v,
                forward,
                backward,
                free,
            }
        })
        .collect();
    Network { net, bundles }
}

fn check_pair(g: &MultiGraph, x: VertexIdx, y: VertexIdx) -> Result<()> {
    if x >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{x}")));
    }
    if y >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{y}")));
    }
    if x == y {
        return Err(Error::SameEndpoints(g.name(x).to_string()));
    }
    Ok(())
}

/// Maximum number of pairwise edge-disjoint `x`-`y` paths.
pub fn lambda(g: &MultiGraph, x: VertexIdx, y: VertexIdx) -> Result<usize> {
    check_pair(g, x, y)?;
    Ok(lambda_unchecked(g, x, y, None, &BTreeSet::new()))
}

pub(crate) fn lambda_unchecked(
    g: &MultiGraph,
    x: VertexIdx,
    y: VertexIdx,
    limit: Option<usize>,
    skip: &BTreeSet<EdgeIdx>,
) -> usize {
    let mut n = build_network(g, None, skip);
    n.net.max_flow(x, y, limit.map(|l| l as i64)) as usize
}

/// Maximum number of arc-disjoint directed `x -> y` paths under `o`.
pub fn arc_lambda(g: &MultiGraph, o: &Orientation, x: VertexIdx, y: VertexIdx) -> Result<usize> {
    check_pair(g, x, y)?;
    o.check_total(g)?;
    Ok(partial_arc_lambda(g, o.as_partial(), x, y, None, &BTreeSet::new()))
}

/// Arc-connectivity where undecided edges may be used in either direction.
/// With `limit`, stops as soon as `limit` disjoint paths were found.
pub(crate) fn partial_arc_lambda(
    g: &MultiGraph,
    dirs: &[Option<Dir>],
    x: VertexIdx,
    y: VertexIdx,
    limit: Option<usize>,
    skip: &BTreeSet<EdgeIdx>,
) -> usize {
    let mut n = build_network(g, Some(dirs), skip);
    n.net.max_flow(x, y, limit.map(|l| l as i64)) as usize
}

fn cut_from_residual(g: &MultiGraph, n: &Network, x: VertexIdx, directed: bool) -> CutSet {
    let side = n.net.residual_reach(x);
    let source_side: BTreeSet<VertexIdx> = g.vertices().filter(|&v| side[v]).collect();
    let sink_side: BTreeSet<VertexIdx> = g.vertices().filter(|&v| !side[v]).collect();
    let mut edges = BTreeSet::new();
    for b in &n.bundles {
        if side[b.u] != side[b.v] {
            let u_out = side[b.u];
            if directed {
                // only arcs leaving the source side are part of a directed cut
                edges.extend(b.free.iter().copied());
                edges.extend(if u_out { b.forward.iter() } else { b.backward.iter() }.copied());
            } else {
                edges.extend(b.free.iter().copied());
            }
        }
    }
    let bond = !directed && is_bond(g, &edges);
    CutSet {
        edges,
        source_side,
        sink_side,
        bond,
    }
}

/// A minimum `x`-`y` edge cut. Its size equals `lambda(g, x, y)`.
pub fn min_cut(g: &MultiGraph, x: VertexIdx, y: VertexIdx) -> Result<CutSet> {
    check_pair(g, x, y)?;
    let mut n = build_network(g, None, &BTreeSet::new());
    n.net.max_flow(x, y, None);
    Ok(cut_from_residual(g, &n, x, false))
}

/// A minimum directed `x -> y` cut: the arcs leaving the returned source side.
pub fn directed_min_cut(g: &MultiGraph, o: &Orientation, x: VertexIdx, y: VertexIdx) -> Result<CutSet> {
    check_pair(g, x, y)?;
    o.check_total(g)?;
    Ok(directed_cut_partial(g, o.as_partial(), x, y))
}

pub(crate) fn directed_cut_partial(g: &MultiGraph, dirs: &[Option<Dir>], x: VertexIdx, y: VertexIdx) -> CutSet {
    let mut n = build_network(g, Some(dirs), &BTreeSet::new());
    n.net.max_flow(x, y, None);
    cut_from_residual(g, &n, x, true)
}

fn decompose(g: &MultiGraph, n: &Network, x: VertexIdx, y: VertexIdx) -> Vec<Walk> {
    // unit queues: (tail vertex) -> list of (head, edge)
    let mut out: Vec<Vec<(VertexIdx, EdgeIdx)>> = vec![Vec::new(); g.vertex_count()];
    for b in &n.bundles {
        let f = n.net.net_flow(b.arc);
        let (tail, head, preferred) = if f > 0 {
            (b.u, b.v, &b.forward)
        } else {
            (b.v, b.u, &b.backward)
        };
        let mut pool: Vec<EdgeIdx> = preferred.iter().chain(b.free.iter()).copied().collect();
        pool.truncate(f.unsigned_abs() as usize);
        for e in pool.into_iter().rev() {
            out[tail].push((head, e));
        }
    }
    for list in &mut out {
        list.reverse();
    }
    let mut walks = Vec::new();
    loop {
        if out[x].is_empty() {
            break;
        }
        let mut w = Walk::single(x);
        let mut cur = x;
        while cur != y {
            let Some((next, e)) = out[cur].pop() else {
                break;
            };
            if let Some(p) = w.vertices.iter().position(|&v| v == next) {
                w.vertices.truncate(p + 1);
                w.edges.truncate(p);
            } else {
                w.vertices.push(next);
                w.edges.push(e);
            }
            cur = next;
        }
        if cur != y {
            break;
        }
        walks.push(w);
    }
    walks
}

/// `lambda(g, x, y)` pairwise edge-disjoint paths, as explicit walks.
pub fn edge_disjoint_paths(g: &MultiGraph, x: VertexIdx, y: VertexIdx) -> Result<Vec<Walk>> {
    check_pair(g, x, y)?;
    let mut n = build_network(g, None, &BTreeSet::new());
    n.net.max_flow(x, y, None);
    Ok(decompose(g, &n, x, y))
}

/// `arc_lambda(g, o, x, y)` arc-disjoint directed paths.
pub fn arc_disjoint_paths(g: &MultiGraph, o: &Orientation, x: VertexIdx, y: VertexIdx) -> Result<Vec<Walk>> {
    check_pair(g, x, y)?;
    o.check_total(g)?;
    let mut n = build_network(g, Some(o.as_partial()), &BTreeSet::new());
    n.net.max_flow(x, y, None);
    Ok(decompose(g, &n, x, y))
}

pub(crate) fn partial_disjoint_paths(
    g: &MultiGraph,
    dirs: &[Option<Dir>],
    x: VertexIdx,
    y: VertexIdx,
    limit: Option<usize>,
) -> Vec<Walk> {
    let mut n = build_network(g, Some(dirs), &BTreeSet::new());
    n.net.max_flow(x, y, limit.map(|l| l as i64));
    decompose(g, &n, x, y)
}

/// Global edge-connectivity (0 for disconnected or single-vertex graphs).
pub fn edge_connectivity(g: &MultiGraph) -> usize {
    if g.vertex_count() < 2 {
        return 0;
    }
    // every global min cut separates vertex 0 from someone
    (1..g.vertex_count())
        .into_par_iter()
        .map(|v| lambda_unchecked(g, 0, v, None, &BTreeSet::new()))
        .min()
        .unwrap_or(0)
}

pub fn is_k_edge_connected(g: &MultiGraph, k: usize) -> bool {
    if g.vertex_count() < 2 {
        return true;
    }
    (1..g.vertex_count())
        .into_par_iter()
        .all(|v| lambda_unchecked(g, 0, v, Some(k), &BTreeSet::new()) >= k)
}

/// All-pairs local edge-connectivity, computed once and shared.
#[derive(Clone, Debug)]
pub struct LambdaTable {
    n: usize,
    values: Vec<usize>,
}

impl LambdaTable {
    pub fn new(g: &MultiGraph) -> Self {
        let n = g.vertex_count();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
        let vals: Vec<usize> = pairs
            .par_iter()
            .map(|&(x, y)| lambda_unchecked(g, x, y, None, &BTreeSet::new()))
            .collect();
        let mut values = vec![0; n * n];
        for (&(x, y), &l) in pairs.iter().zip(&vals) {
            values[x * n + y] = l;
            values[y * n + x] = l;
        }
        LambdaTable { n, values }
    }

    pub fn get(&self, x: VertexIdx, y: VertexIdx) -> usize {
        self.values[x * self.n + y]
    }
}

/// True iff `edges` is a bond: removing it splits exactly one component into
/// two and every removed edge joins the two halves.
pub fn is_bond(g: &MultiGraph, edges: &BTreeSet<EdgeIdx>) -> bool {
    if edges.is_empty() {
        return false;
    }
    let (c0, _) = g.components_without(&BTreeSet::new());
    let (c1, label) = g.components_without(edges);
    if c1 != c0 + 1 {
        return false;
    }
    edges.iter().all(|&e| {
        let ed = g.edge(e);
        label[ed.u] != label[ed.v]
    })
}

/// Bipartition witnessing a bond (the side containing the lower endpoint of
/// the first edge), or `None` when `edges` is not a bond.
pub fn bond_witness(g: &MultiGraph, edges: &BTreeSet<EdgeIdx>) -> Option<CutSet> {
    if !is_bond(g, edges) {
        return None;
    }
    let (_, label) = g.components_without(edges);
    let first = g.edge(*edges.iter().next()?);
    let (a, b) = (label[first.u], label[first.v]);
    Some(CutSet {
        edges: edges.clone(),
        source_side: g.vertices().filter(|&v| label[v] == a).collect(),
        sink_side: g.vertices().filter(|&v| label[v] == b).collect(),
        bond: true,
    })
}

fn binomial_sum(n: usize, k: usize) -> u64 {
    let mut total: u64 = 0;
    let mut c: u64 = 1;
    for i in 0..=k.min(n) {
        if i > 0 {
            c = c.saturating_mul((n - i + 1) as u64) / i as u64;
        }
        total = total.saturating_add(c);
    }
    total
}

/// Visits every `size`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(&[usize])) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        f(&idx);
        let mut i = size;
        while i > 0 && idx[i - 1] == n - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every bond with at most `max_size` edges, each exactly once, in
/// (size, lexicographic) order. Refuses rather than truncating when
/// `max_size > bound` or the subset space is too large.
pub fn enumerate_bonds(g: &MultiGraph, max_size: usize, bound: usize) -> Result<Vec<CutSet>> {
    if max_size > bound {
        return Err(Error::CapExceeded(format!(
            "bond size {max_size} exceeds configured bound {bound}"
        )));
    }
    let m = g.edge_count();
    if binomial_sum(m, max_size) > SUBSET_BUDGET {
        return Err(Error::CapExceeded(format!(
            "bond enumeration over {m} edges up to size {max_size} exceeds subset budget"
        )));
    }
    let mut out = Vec::new();
    for size in 1..=max_size.min(m) {
        let mut found: Vec<Vec<usize>> = Vec::new();
        for_each_subset(m, size, |s| {
            let set: BTreeSet<EdgeIdx> = s.iter().copied().collect();
            if is_bond(g, &set) {
                found.push(s.to_vec());
            }
        });
        for s in found {
            let set: BTreeSet<EdgeIdx> = s.into_iter().collect();
            out.push(bond_witness(g, &set).expect("checked bond"));
        }
    }
    Ok(out)
}

/// Every distinct nonempty cut `δ(S)` with at most `max_size` edges, bond or not.
/// Enumerates vertex bipartitions, so it refuses graphs with more than 20 vertices.
pub fn enumerate_cuts(g: &MultiGraph, max_size: usize) -> Result<Vec<BTreeSet<EdgeIdx>>> {
    let n = g.vertex_count();
    if n > 20 {
        return Err(Error::CapExceeded(format!("cut enumeration over {n} vertices")));
    }
    let mut seen = BTreeSet::new();
    if n < 2 {
        return Ok(Vec::new());
    }
    // vertex n-1 always on the far side, so each bipartition is visited once
    for mask in 1u32..(1u32 << (n - 1)) {
        let cut: BTreeSet<EdgeIdx> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, ed)| ((mask >> ed.u) & 1) != ((mask >> ed.v) & 1))
            .map(|(e, _)| e)
            .collect();
        if !cut.is_empty() && cut.len() <= max_size {
            seen.insert(cut);
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> MultiGraph {
        MultiGraph::from_pairs([("a", "b", 1), ("a", "c", 1), ("a", "d", 1), ("b", "c", 1), ("b", "d", 1), ("c", "d", 1)])
            .unwrap()
    }

    fn v(g: &MultiGraph, n: &str) -> VertexIdx {
        g.vertex(n).unwrap()
    }

    /// Brute force: smallest edge subset whose removal separates x from y.
    fn brute_lambda(g: &MultiGraph, x: VertexIdx, y: VertexIdx) -> usize {
        let m = g.edge_count();
        (0u32..1 << m)
            .filter(|mask| {
                let removed: BTreeSet<_> = (0..m).filter(|e| mask >> e & 1 == 1).collect();
                let (_, label) = g.components_without(&removed);
                label[x] != label[y]
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    #[test]
    fn k4_pairs_match_brute_force() {
        let g = k4();
        for x in 0..4 {
            for y in 0..4 {
                if x != y {
                    assert_eq!(brute_lambda(&g, x, y), 3);
                    assert_eq!(lambda(&g, x, y).unwrap(), 3);
                }
            }
        }
    }

    #[test]
    fn parallel_and_cycle_examples() {
        let g = MultiGraph::from_pairs([("a", "b", 5)]).unwrap();
        assert_eq!(lambda(&g, 0, 1).unwrap(), 5);
        let c4 = MultiGraph::from_pairs([("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("a", "d", 1)]).unwrap();
        assert_eq!(lambda(&c4, v(&c4, "a"), v(&c4, "c")).unwrap(), 2);
    }

    #[test]
    fn same_endpoint_rejected_and_disconnected_is_zero() {
        let g = MultiGraph::parse("e a b 1\ne c d 1").unwrap();
        assert!(matches!(lambda(&g, 0, 0), Err(Error::SameEndpoints(_))));
        assert_eq!(lambda(&g, v(&g, "a"), v(&g, "c")).unwrap(), 0);
    }

    #[test]
    fn bridge_is_min_cut_and_bond() {
        let g = MultiGraph::from_pairs([
            ("a", "b", 1),
            ("b", "c", 1),
            ("a", "c", 1),
            ("c", "x", 1),
            ("x", "y", 1),
            ("y", "z", 1),
            ("x", "z", 1),
        ])
        .unwrap();
        let cut = min_cut(&g, v(&g, "a"), v(&g, "z")).unwrap();
        assert!(cut.bond);
        let ids: Vec<String> = cut.edges.iter().map(|&e| g.edge_id(e).to_string()).collect();
        assert_eq!(ids, ["c-x-0"]);
    }

    #[test]
    fn figure_eight_small_bonds() {
        let g = MultiGraph::from_pairs([
            ("a", "w", 1),
            ("a", "b", 1),
            ("b", "w", 1),
            ("c", "w", 1),
            ("c", "d", 1),
            ("d", "w", 1),
        ])
        .unwrap();
        let bonds = enumerate_bonds(&g, 2, DEFAULT_BOND_BOUND).unwrap();
        let names: BTreeSet<Vec<String>> = bonds
            .iter()
            .map(|b| b.edges.iter().map(|&e| g.edge_id(e).to_string()).collect())
            .collect();
        for expect in [
            ["a-w-0", "a-b-0"],
            ["a-w-0", "b-w-0"],
            ["a-b-0", "b-w-0"],
            ["c-w-0", "c-d-0"],
            ["c-w-0", "d-w-0"],
            ["c-d-0", "d-w-0"],
        ] {
            let mut e: Vec<String> = expect.iter().map(|s| s.to_string()).collect();
            e.sort();
            assert!(names.contains(&e), "missing {e:?}");
        }
        let wa_wc: Vec<String> = vec!["a-w-0".into(), "c-w-0".into()];
        assert!(!names.contains(&wa_wc));
        assert_eq!(names.len(), 6);
    }

    #[test]
    fn k4_global_connectivity() {
        let g = k4();
        assert!(is_k_edge_connected(&g, 3));
        assert!(!is_k_edge_connected(&g, 4));
        assert_eq!(edge_connectivity(&g), 3);
    }

    #[test]
    fn bond_bound_refusal() {
        let g = k4();
        assert!(matches!(enumerate_bonds(&g, 7, DEFAULT_BOND_BOUND), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn directed_examples() {
        let c4 = MultiGraph::from_pairs([("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("a", "d", 1)]).unwrap();
        let o = Orientation::from_arcs(&c4, &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                if x != y {
                    assert_eq!(arc_lambda(&c4, &o, x, y).unwrap(), 1);
                }
            }
        }
        let one = MultiGraph::from_pairs([("a", "b", 1)]).unwrap();
        let o = Orientation::from_arcs(&one, &[("a", "b")]).unwrap();
        assert_eq!(arc_lambda(&one, &o, 1, 0).unwrap(), 0);
    }

    #[test]
    fn doubled_triangle_split_orientation() {
        let g = MultiGraph::from_pairs([("a", "b", 2), ("b", "c", 2), ("a", "c", 2)]).unwrap();
        let o = Orientation::from_arcs(
            &g,
            &[("a", "b"), ("b", "a"), ("b", "c"), ("c", "b"), ("a", "c"), ("c", "a")],
        )
        .unwrap();
        for x in 0..3 {
            for y in 0..3 {
                if x != y {
                    assert_eq!(arc_lambda(&g, &o, x, y).unwrap(), 2);
                }
            }
        }
    }

    #[test]
    fn witnesses_agree_with_value() {
        let g = k4();
        let paths = edge_disjoint_paths(&g, 0, 3).unwrap();
        assert_eq!(paths.len(), 3);
        let mut used = BTreeSet::new();
        for p in &paths {
            assert!(p.is_valid_in(&g) && p.is_path());
            assert_eq!((p.vertices[0], *p.vertices.last().unwrap()), (0, 3));
            for &e in &p.edges {
                assert!(used.insert(e));
            }
        }
        assert_eq!(min_cut(&g, 0, 3).unwrap().len(), 3);
    }

    #[test]
    fn subsets_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut count = 0;
        for_each_subset(5, 0, |_| count += 1);
        assert_eq!(count, 1);
    }
}
