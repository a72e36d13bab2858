//! The acceptance suite: fifteen property checks on finite truncations, each
//! certified by the exact connectivity oracle, seeded and reproducible.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::connectivity::{arc_lambda, for_each_subset, is_k_edge_connected, lambda};
use crate::decomposition::{verify_bond_faithful, Decomposition, FaithMode};
use crate::ends::{check_embedding, vertex_end_count, Resolution, DEFAULT_LOOKAHEAD};
use crate::error::Result;
use crate::expansion::{expand, ExpandConfig, ExpansionMode};
use crate::flimit::{
    build_limit_order, check_path_limit_degrees, extract_topological_path, orient_pipeline, serpentine, stable_limit,
    LimitConfig, PathSnapshot, PipelineConfig, Snapshot, Status, DEFAULT_MARGIN,
};
use crate::graph::{EdgeIdx, MultiGraph, VertexIdx};
use crate::lazy::{ball, ladder_through_end_orientation, LazyGraph};
use crate::orientation::{
    check_k_arc_connected, check_well_balanced, orient_eulerian, orient_exact, Dir, ExactOutcome, Mode, Orientation,
    SearchConfig,
};
use crate::topo::{TopoContext, TopoValue};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const CRITERIA: usize = 15;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    /// First failure, if any.
    pub detail: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub seed: u64,
    pub criteria: Vec<Criterion>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Tally of checks within one criterion.
struct Tally {
    checked: usize,
    failures: usize,
    detail: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: 0,
            detail: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.detail.is_none() {
                self.detail = Some(what());
            }
        }
    }

    fn fail(&mut self, what: String) {
        self.check(false, || what);
    }

    fn finish(self, id: usize) -> Criterion {
        Criterion {
            id,
            name: NAMES[id - 1],
            pass: self.failures == 0 && self.checked > 0,
            checked: self.checked,
            failures: self.failures,
            detail: self.detail,
        }
    }
}

const NAMES: [&str; CRITERIA] = [
    "oracle soundness",
    "k-arc orientations of 2k-edge-connected graphs",
    "eulerian orientations are well-balanced",
    "k-ray expansion keeps 2k-edge-connectivity",
    "expanding rays preserve local connectivity",
    "induced orientations stay well-balanced",
    "gluing k-arc-connected parts",
    "bond-faithful decompositions",
    "cubic tree plus root has one edge-end",
    "double ray in grid versus grid in grid",
    "ladder reaches through its end",
    "topological and plain connectivity agree on finite graphs",
    "serpentine path limit on the 4-column ladder",
    "exhaustion pipeline on ladders",
    "determinism",
];

fn rng_for(seed: u64, id: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(id as u64))
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Random multigraph on `n` vertices with `m` edges between distinct endpoints.
pub fn random_multigraph(rng: &mut impl Rng, n: usize, m: usize) -> MultiGraph {
    let vs = names(n);
    let mut b = MultiGraph::builder();
    for v in &vs {
        b.add_vertex(v.as_str()).expect("valid name");
    }
    for _ in 0..m {
        let x = rng.gen_range(0..n);
        let y = (x + rng.gen_range(1..n)) % n;
        b.add_edge(&vs[x], &vs[y]).expect("distinct endpoints");
    }
    b.build()
}

/// Connected random multigraph: a random spanning tree plus extra edges.
pub fn random_connected(rng: &mut impl Rng, n: usize, m: usize) -> MultiGraph {
    let vs = names(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut b = MultiGraph::builder();
    for v in &vs {
        b.add_vertex(v.as_str()).expect("valid name");
    }
    for i in 1..n {
        let p = order[rng.gen_range(0..i)];
        b.add_edge(&vs[order[i]], &vs[p]).expect("distinct endpoints");
    }
    for _ in n.saturating_sub(1)..m {
        let x = rng.gen_range(0..n);
        let y = (x + rng.gen_range(1..n)) % n;
        b.add_edge(&vs[x], &vs[y]).expect("distinct endpoints");
    }
    b.build()
}

/// A `2k`-edge-connected multigraph with at most `max_edges` edges: random
/// graphs are tried first, a random cycle with every edge taken `k` times
/// plus chords is the fallback.
pub fn random_2k_connected(rng: &mut impl Rng, n: usize, k: usize, max_edges: usize) -> MultiGraph {
    for _ in 0..40 {
        let m = rng.gen_range(k * n..=max_edges.max(k * n));
        let g = random_multigraph(rng, n, m);
        if is_k_edge_connected(&g, 2 * k) {
            return g;
        }
    }
    let vs = names(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut b = MultiGraph::builder();
    for i in 0..n {
        b.add_edges(&vs[order[i]], &vs[order[(i + 1) % n]], k as u32).expect("distinct endpoints");
    }
    let extra = rng.gen_range(0..=max_edges.saturating_sub(k * n).min(4));
    for _ in 0..extra {
        let x = rng.gen_range(0..n);
        let y = (x + rng.gen_range(1..n)) % n;
        b.add_edge(&vs[x], &vs[y]).expect("distinct endpoints");
    }
    b.build()
}

/// Connected multigraph with every degree even: a spanning cycle plus random closed walks.
pub fn random_eulerian(rng: &mut impl Rng, n: usize) -> MultiGraph {
    let vs = names(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut b = MultiGraph::builder();
    for i in 0..n {
        b.add_edge(&vs[order[i]], &vs[order[(i + 1) % n]]).expect("distinct endpoints");
    }
    for _ in 0..rng.gen_range(0..=3) {
        let len = rng.gen_range(2..=n);
        let mut cyc: Vec<usize> = (0..n).collect();
        cyc.shuffle(rng);
        cyc.truncate(len);
        for i in 0..len {
            b.add_edge(&vs[cyc[i]], &vs[cyc[(i + 1) % len]]).expect("distinct endpoints");
        }
    }
    b.build()
}

fn random_orientation(rng: &mut impl Rng, g: &MultiGraph) -> Orientation {
    let dirs = (0..g.edge_count()).map(|_| if rng.gen() { Dir::Forward } else { Dir::Backward }).collect();
    Orientation::new(g, dirs).expect("total")
}

/// Smallest edge set separating `x` from `y`, by exhaustion over edge subsets.
pub fn brute_lambda(g: &MultiGraph, x: VertexIdx, y: VertexIdx) -> usize {
    let m = g.edge_count();
    assert!(m <= 16, "brute force limited to 16 edges");
    let mut best = m;
    for mask in 0u32..1 << m {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let mut seen = vec![false; g.vertex_count()];
        let mut stack = vec![x];
        seen[x] = true;
        while let Some(v) = stack.pop() {
            for (e, ed) in g.edges().iter().enumerate() {
                if mask >> e & 1 == 1 || (ed.u != v && ed.v != v) {
                    continue;
                }
                let w = ed.other(v);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if !seen[y] {
            best = size;
        }
    }
    best
}

/// Largest family of arc-disjoint directed `x`–`y` paths, by enumerating
/// every simple directed path and packing them exhaustively.
pub fn brute_arc_lambda(g: &MultiGraph, o: &Orientation, x: VertexIdx, y: VertexIdx) -> usize {
    fn paths(g: &MultiGraph, o: &Orientation, v: VertexIdx, y: VertexIdx, used: u32, on: &mut Vec<bool>, out: &mut Vec<u32>) {
        if v == y {
            out.push(used);
            return;
        }
        for (e, _) in g.edges().iter().enumerate() {
            if o.tail(g, e) != v {
                continue;
            }
            let w = o.head(g, e);
            if !on[w] {
                on[w] = true;
                paths(g, o, w, y, used | 1 << e, on, out);
                on[w] = false;
            }
        }
    }
    fn pack(ps: &[u32], i: usize, used: u32) -> usize {
        if i == ps.len() {
            return 0;
        }
        let skip = pack(ps, i + 1, used);
        if ps[i] & used == 0 {
            skip.max(1 + pack(ps, i + 1, used | ps[i]))
        } else {
            skip
        }
    }
    let mut on = vec![false; g.vertex_count()];
    on[x] = true;
    let mut ps = Vec::new();
    paths(g, o, x, y, 0, &mut on, &mut ps);
    pack(&ps, 0, 0)
}

fn search_cfg(max_edges: usize) -> SearchConfig {
    SearchConfig {
        max_edges,
        ..SearchConfig::default()
    }
}

fn c1(seed: u64) -> Result<Criterion> {
    let mut rng = rng_for(seed, 1);
    let mut t = Tally::new();
    for inst in 0..200 {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(0..=8);
        let g = random_multigraph(&mut rng, n, m);
        let o = random_orientation(&mut rng, &g);
        for x in g.vertices() {
            for y in g.vertices().filter(|&y| y != x) {
                let (l, bl) = (lambda(&g, x, y)?, brute_lambda(&g, x, y));
                t.check(l == bl, || format!("instance {inst}: lambda {l} vs brute force {bl}"));
                let (a, ba) = (arc_lambda(&g, &o, x, y)?, brute_arc_lambda(&g, &o, x, y));
                t.check(a == ba, || format!("instance {inst}: arc_lambda {a} vs brute force {ba}"));
            }
        }
    }
    Ok(t.finish(1))
}

fn c2(seed: u64) -> Result<Criterion> {
    let mut rng = rng_for(seed, 2);
    let mut t = Tally::new();
    for inst in 0..100 {
        let k = 1 + inst % 2;
        let n = rng.gen_range(3..=if k == 1 { 10 } else { 7 });
        let g = random_2k_connected(&mut rng, n, k, 24);
        match orient_exact(&g, Mode::KArc(k), &search_cfg(24))? {
            ExactOutcome::Found(o) => {
                let ok = check_k_arc_connected(&g, &o, k)?;
                t.check(ok, || format!("instance {inst}: orientation fails the {k}-arc check"));
            }
            ExactOutcome::Unsat(_) => t.fail(format!("instance {inst}: UNSAT for k = {k}")),
            ExactOutcome::Budget { nodes } => t.fail(format!("instance {inst}: budget exhausted after {nodes} nodes")),
        }
    }
    Ok(t.finish(2))
}

fn c3(seed: u64) -> Result<Criterion> {
    let mut rng = rng_for(seed, 3);
    let mut t = Tally::new();
    for inst in 0..100 {
        let n = rng.gen_range(2..=12);
        let g = random_eulerian(&mut rng, n);
        let o = orient_eulerian(&g)?;
        let r = check_well_balanced(&g, &o)?;
        t.check(r.verdict, || format!("instance {inst}: {} violating pairs", r.violations.len()));
    }
    Ok(t.finish(3))
}

/// Vertex of largest degree, first by name on ties.
fn hub(g: &MultiGraph) -> VertexIdx {
    g.vertices().max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).expect("non-empty")
}

fn c4(seed: u64) -> Result<Criterion> {
    let mut rng = rng_for(seed, 4);
    let mut t = Tally::new();
    for inst in 0..50 {
        let k = 1 + inst % 2;
        let n = rng.gen_range(3..=5);
        let g = random_2k_connected(&mut rng, n, k, 4 * k + 4);
        let h = g.name(hub(&g)).to_string();
        let x = expand(&g, &[&h], ExpansionMode::KRay(2 * k as u32), &ExpandConfig::default())?;
        let xg = &x.graph;
        let m = xg.edge_count();
        let mut sets: Vec<BTreeSet<EdgeIdx>> = Vec::new();
        let total: u128 = (0..2 * k).map(|s| binomial(m, s)).sum();
        if total <= 500 {
            for s in 0..2 * k {
                for_each_subset(m, s, |sub| sets.push(sub.iter().copied().collect()));
            }
        } else {
            for _ in 0..500 {
                let s = rng.gen_range(0..2 * k);
                sets.push(rand::seq::index::sample(&mut rng, m, s).into_iter().collect());
            }
        }
        for f in sets {
            let (c, _) = xg.components_without(&f);
            t.check(c == 1, || {
                let ids: Vec<String> = f.iter().map(|&e| xg.edge_id(e).to_string()).collect();
                format!("instance {inst}: removing {{{}}} disconnects the expansion", ids.join(", "))
            });
        }
    }
    Ok(t.finish(4))
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn c5(seed: u64) -> Result<Criterion> {
    let mut rng = rng_for(seed, 5);
    let mut t = Tally::new();
    for inst in 0..50 {
        let n = rng.gen_range(3..=6);
        let m = rng.gen_range(n..=2 * n + 2);
        let g = random_connected(&mut rng, n, m);
        let hv = hub(&g);
        let h = g.name(hv).to_string();
        let cfg = ExpandConfig {
            ray_len: Some(g.degree(hv) + 1),
            ..ExpandConfig::default()
        };
        let x = expand(&g, &[&h], ExpansionMode::Expanding, &cfg)?;
        for u in g.vertices() {
            for v in g.vertices().filter(|&v| v > u) {
                let (a, b) = x.connectivity_witness_pair(u, v)?;
                let (le, lo) = (lambda(&x.graph, a, b)?, lambda(&g, u, v)?);
                t.check(le == lo, || {
                    format!(
                        "instance {inst}: witness {}-{} has lambda {le}, origin {}-{} has {lo}",
                        x.graph.name(a),
                        x.graph.name(b),
                        g.name(u),
                        g.name(v)
                    )
                });
            }
        }
        let nv = x.graph.vertex_count();
        let mut sampled = 0;
        while sampled < 20 {
            let (a, b) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
            let (pa, pb) = (x.project(a), x.project(b));
            if pa == pb {
                continue;
            }
            sampled += 1;
            let (le, lo) = (lambda(&x.graph, a, b)?, lambda(&g, pa, pb)?);
            t.check(le <= lo, || {
                format!("instance {inst}: {}-{} has lambda {le} above the origin's {lo}", x.graph.name(a), x.graph.name(b))
            });
        }
    }
    Ok(t.finish(5))
}

fn c6(seed: u64) -> Result<Criterion> {
    let mut rng = rng_for(seed, 6);
    let mut t = Tally::new();
    let mut inst = 0;
    while inst < 30 {
        let n = rng.gen_range(3..=5);
        let m = rng.gen_range(n..=n + 3);
        let g = random_connected(&mut rng, n, m);
        let hv = hub(&g);
        let len = g.degree(hv) + 1;
        if g.edge_count() + len * (len - 1) / 2 > 24 {
            continue;
        }
        inst += 1;
        let cfg = ExpandConfig {
            ray_len: Some(len),
            ..ExpandConfig::default()
        };
        let x = expand(&g, &[g.name(hv)], ExpansionMode::Expanding, &cfg)?;
        match orient_exact(&x.graph, Mode::WellBalanced, &search_cfg(24))? {
            ExactOutcome::Found(o) => {
                let induced = x.induce_orientation(&o)?;
                let r = check_well_balanced(&g, &induced)?;
                t.check(r.verdict, || format!("instance {inst}: induced orientation has {} violations", r.violations.len()));
            }
            ExactOutcome::Unsat(_) => t.fail(format!("instance {inst}: expansion has no well-balanced orientation")),
            ExactOutcome::Budget { nodes } => t.fail(format!("instance {inst}: budget exhausted after {nodes} nodes")),
        }
    }
    Ok(t.finish(6))
}

fn c7(seed: u64) -> Result<Criterion> {
    let mut rng = rng_for(seed, 7);
    let mut t = Tally::new();
    for inst in 0..30 {
        let k = 1 + inst % 2;
        let parts = rng.gen_range(2..=3);
        let mut pool = 0usize;
        let mut part_edges: Vec<Vec<(String, String)>> = Vec::new();
        for p in 0..parts {
            let n = rng.gen_range(2..=4);
            let piece = random_2k_connected(&mut rng, n, k, 4 * k + 2);
            // share one vertex with what exists, the rest are fresh
            let shared = if p == 0 { None } else { Some(rng.gen_range(0..pool)) };
            let fresh = usize::from(shared.is_some());
            let label = |i: usize| match (i, shared) {
                (0, Some(s)) => format!("v{s}"),
                _ => format!("v{}", pool + i - fresh),
            };
            let es = piece.edges().iter().map(|e| (label(e.u), label(e.v))).collect();
            pool += n - fresh;
            part_edges.push(es);
        }
        let mut b = MultiGraph::builder();
        for es in &part_edges {
            for (u, v) in es {
                b.add_edge(u, v)?;
            }
        }
        let parent = b.build();
        // parallel copies are handed out in part order, matching the builder
        let mut next: BTreeMap<(String, String), u32> = BTreeMap::new();
        let mut parts_idx = Vec::new();
        for es in &part_edges {
            let mut idx = Vec::new();
            for (u, v) in es {
                let key = if u < v { (u.clone(), v.clone()) } else { (v.clone(), u.clone()) };
                let j = next.entry(key.clone()).or_default();
                let id = crate::graph::EdgeId::new(key.0, key.1, *j)?;
                *j += 1;
                idx.push(parent.edge_by_id(&id).expect("built from the same list"));
            }
            parts_idx.push(idx);
        }
        let d = Decomposition::new(parent, parts_idx)?;
        let mut os = Vec::new();
        for i in 0..d.parts.len() {
            let (pg, _) = d.part_graph(i);
            match orient_exact(&pg, Mode::KArc(k), &search_cfg(24))? {
                ExactOutcome::Found(o) => os.push(o),
                _ => {
                    t.fail(format!("instance {inst}: part {i} has no {k}-arc-connected orientation"));
                    break;
                }
            }
        }
        if os.len() == d.parts.len() {
            let glued = d.glue(&os)?;
            let ok = check_k_arc_connected(&d.parent, &glued, k)?;
            t.check(ok, || format!("instance {inst}: glued orientation is not {k}-arc-connected"));
        }
    }
    Ok(t.finish(7))
}

fn c8() -> Result<Criterion> {
    let mut t = Tally::new();
    let fig8 = MultiGraph::from_pairs([("w", "a", 1), ("a", "b", 1), ("b", "w", 1), ("w", "c", 1), ("c", "d", 1), ("d", "w", 1)])?;
    let parts = vec![
        ["a-w-0", "a-b-0", "b-w-0"].iter().map(|s| fig8.parse_edge_id(s)).collect::<Result<Vec<_>>>()?,
        ["c-w-0", "c-d-0", "d-w-0"].iter().map(|s| fig8.parse_edge_id(s)).collect::<Result<Vec<_>>>()?,
    ];
    let r = verify_bond_faithful(&Decomposition::new(fig8, parts)?, 3, FaithMode::Bond)?;
    t.check(r.verdict, || format!("figure-eight: {} violations", r.violations.len()));
    let k4 = MultiGraph::from_pairs([("a", "b", 1), ("a", "c", 1), ("a", "d", 1), ("b", "c", 1), ("b", "d", 1), ("c", "d", 1)])?;
    let parts = vec![
        ["a-b-0", "b-c-0", "c-d-0", "a-d-0"].iter().map(|s| k4.parse_edge_id(s)).collect::<Result<Vec<_>>>()?,
        ["a-c-0", "b-d-0"].iter().map(|s| k4.parse_edge_id(s)).collect::<Result<Vec<_>>>()?,
    ];
    let r = verify_bond_faithful(&Decomposition::new(k4, parts)?, 3, FaithMode::Bond)?;
    t.check(!r.verdict && !r.violations.is_empty(), || "K4 split: expected a failing bond".into());
    Ok(t.finish(8))
}

fn c9(seed: u64) -> Result<Criterion> {
    let mut rng = rng_for(seed, 9);
    let mut t = Tally::new();
    let g = LazyGraph::cubic_tree_plus_root();
    let mut counts = Vec::new();
    for depth in 4..=7 {
        let res = Resolution::new(&g, &["r"], depth, DEFAULT_LOOKAHEAD)?;
        let inner = res.inner_edges().to_vec();
        let m = inner.len();
        for size in 1..=2 {
            for_each_subset(m, size, |s| {
                let f: BTreeSet<EdgeIdx> = s.iter().map(|&i| inner[i]).collect();
                let c = res.escaping_count(&f);
                t.check(c == 1, || format!("depth {depth}: {c} escaping classes after removing {f:?}"));
            });
        }
        for _ in 0..200 {
            let f: BTreeSet<EdgeIdx> = rand::seq::index::sample(&mut rng, m, 3).into_iter().map(|i| inner[i]).collect();
            let c = res.escaping_count(&f);
            t.check(c == 1, || format!("depth {depth}: {c} escaping classes after removing {f:?}"));
        }
        counts.push(vertex_end_count(&g, &["r"], depth, DEFAULT_LOOKAHEAD)?);
    }
    let grows = counts.windows(2).all(|w| w[0] < w[1]);
    t.check(grows, || format!("component counts {counts:?} do not grow"));
    Ok(t.finish(9))
}

fn c10() -> Result<Criterion> {
    let mut t = Tally::new();
    let r = check_embedding(&LazyGraph::grid_row(0), &LazyGraph::grid(), &["(0,0)"], 4, 1, DEFAULT_LOOKAHEAD)?;
    t.check(!r.bond_faithful, || "double ray in grid: bond-faithful".into());
    t.check(!r.injective && !r.merges.is_empty(), || "double ray in grid: no classes merged".into());
    let r = check_embedding(&LazyGraph::grid(), &LazyGraph::grid(), &["(0,0)"], 3, 1, DEFAULT_LOOKAHEAD)?;
    t.check(r.verdict, || "grid in grid: embedding check failed".into());
    Ok(t.finish(10))
}

fn c11(seed: u64) -> Result<Criterion> {
    let mut rng = rng_for(seed, 11);
    let mut t = Tally::new();
    let g = LazyGraph::one_way_ladder();
    let outer = 8;
    let big = ball(&g, &["a:0", "b:0"], outer + DEFAULT_LOOKAHEAD + 1)?;
    let o = ladder_through_end_orientation(&big)?;
    let ctx = TopoContext::new(&g, &["a:0", "b:0"], outer, DEFAULT_LOOKAHEAD, Some((&big.graph, &o)))?;
    let (a0, b0) = (ctx.vertex("a:0")?, ctx.vertex("b:0")?);
    let oo = ctx.orientation().expect("oriented");
    let plain = arc_lambda(ctx.graph(), &oo, a0, b0)?;
    t.check(plain == 0, || format!("plain arc_lambda(a:0, b:0) = {plain}"));
    let none = BTreeSet::new();
    let r = ctx.reach_report(a0, b0, 3..=7, &none)?;
    t.check(r.reachable && r.stable, || "a:0 does not reach b:0 stably through the end".into());
    let interior: Vec<VertexIdx> = ctx.ball.interior_vertices();
    let mut sampled = 0;
    while sampled < 20 {
        let (x, y) = (*interior.choose(&mut rng).expect("interior"), *interior.choose(&mut rng).expect("interior"));
        if x == y {
            continue;
        }
        sampled += 1;
        let r = ctx.reach_report(x, y, 3..=7, &none)?;
        t.check(r.reachable, || format!("{} does not reach {}", ctx.graph().name(x), ctx.graph().name(y)));
    }
    Ok(t.finish(11))
}

fn c12(seed: u64) -> Result<Criterion> {
    let mut rng = rng_for(seed, 12);
    let mut t = Tally::new();
    for inst in 0..50 {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(n - 1..=n + 4);
        let g = random_connected(&mut rng, n, m);
        let family = LazyGraph::finite(g.clone());
        let outer = n + 1;
        let ctx = TopoContext::new(&family, &[g.name(0)], outer, 1, None)?;
        let cap = g.vertices().map(|v| g.degree(v)).max().unwrap_or(0);
        for x in g.vertices() {
            for y in g.vertices().filter(|&y| y > x) {
                let (cx, cy) = (ctx.vertex(g.name(x))?, ctx.vertex(g.name(y))?);
                let topo = ctx.topo_lambda(cx, cy, outer - 1, cap)?;
                let l = lambda(&g, x, y)?;
                t.check(topo == TopoValue::Exact(l), || {
                    format!("instance {inst}: {}-{} topological {topo:?} vs lambda {l}", g.name(x), g.name(y))
                });
            }
        }
    }
    Ok(t.finish(12))
}

fn c13() -> Result<Criterion> {
    let mut t = Tally::new();
    let m = 4;
    let family = LazyGraph::k_column_ladder(4);
    let window = ball(&family, &["a:0", "b:0", "c:0", "d:0"], m)?;
    let paths: Vec<PathSnapshot> = (0..m + 8).map(|n| serpentine(4, n)).collect::<Result<_>>()?;
    let seq: Vec<Snapshot> = paths.iter().map(PathSnapshot::snapshot).collect();
    let lim = stable_limit(&window, &seq, &LimitConfig::default())?;
    for (id, s) in &lim.edges {
        let column = id.u[..1] == id.v[..1];
        let expect_in = column || id.to_string() == "b:0-c:0-0";
        t.check(s.membership.is_in() == expect_in && !matches!(s.membership, Status::Oscillating(_)), || {
            format!("edge {id}: {:?}", s.membership)
        });
    }
    t.check(lim.vertices.values().all(|s| s.is_in()), || "a window vertex is not stably in".into());
    let deg = check_path_limit_degrees(&lim, "a:0", "d:0");
    t.check(deg.verdict, || format!("degree violations: {:?}", deg.violations));
    let ord = build_limit_order(&lim, &paths, &family, DEFAULT_LOOKAHEAD)?;
    let seqp = extract_topological_path(&ord)?;
    let col = |c: &str, up: bool| -> Vec<String> {
        let v: Vec<String> = (0..=m).map(|i| format!("{c}:{i}")).collect();
        if up {
            v
        } else {
            v.into_iter().rev().collect()
        }
    };
    let segs = seqp.segments();
    t.check(
        segs.len() == 2 && seqp.markers() == 1 && segs[0] == col("a", true).as_slice() && segs[1] == col("d", false).as_slice(),
        || format!("extracted {:?}", seqp.items),
    );
    t.check(seqp.problems(&window).is_empty() && seqp.extract() == seqp, || "extraction invariants".into());
    Ok(t.finish(13))
}

fn c14() -> Result<Criterion> {
    let mut t = Tally::new();
    for family in [LazyGraph::one_way_ladder(), LazyGraph::doubled_rail_ladder()] {
        let cfg = PipelineConfig {
            roots: vec!["a:0".into(), "b:0".into()],
            window: 4,
            upto: 10,
            mode: Mode::WellBalanced,
            search: SearchConfig {
                max_edges: 64,
                node_budget: 5_000_000,
            },
            margin: DEFAULT_MARGIN,
            check_lookahead: Some(DEFAULT_LOOKAHEAD),
        };
        let r = orient_pipeline(&family, &cfg)?;
        t.check(r.stabilized, || {
            let bad: Vec<_> = r.steps.iter().filter(|s| s.outcome != "found").map(|s| format!("G_{}: {}", s.n, s.outcome)).collect();
            format!("{family}: not stabilized; oscillating {:?}; {}", r.oscillating, bad.join("; "))
        });
        match &r.half_bound {
            Some(h) => t.check(h.verdict && h.stable, || format!("{family}: {} half-bound violations", h.violations)),
            None => t.fail(format!("{family}: half bound not checked")),
        }
    }
    Ok(t.finish(14))
}

/// Runs one criterion (1 through 14); 15 is the rerun comparison done by [`run_suite`].
pub fn run_criterion(id: usize, seed: u64) -> Result<Criterion> {
    match id {
        1 => c1(seed),
        2 => c2(seed),
        3 => c3(seed),
        4 => c4(seed),
        5 => c5(seed),
        6 => c6(seed),
        7 => c7(seed),
        8 => c8(),
        9 => c9(seed),
        10 => c10(),
        11 => c11(seed),
        12 => c12(seed),
        13 => c13(),
        14 => c14(),
        _ => Err(crate::error::Error::Malformed(format!("no criterion {id}"))),
    }
}

fn report(seed: u64, criteria: Vec<Criterion>) -> SuiteReport {
    SuiteReport {
        suite: "paper",
        seed,
        pass: criteria.iter().all(|c| c.pass),
        criteria,
    }
}

/// Criteria 1–14, then 15: a second run must serialize byte-identically.
pub fn run_suite(seed: u64) -> Result<SuiteReport> {
    let first: Vec<Criterion> = (1..CRITERIA).map(|i| run_criterion(i, seed)).collect::<Result<_>>()?;
    let second: Vec<Criterion> = (1..CRITERIA).map(|i| run_criterion(i, seed)).collect::<Result<_>>()?;
    let (a, b) = (report(seed, first.clone()).to_json(), report(seed, second).to_json());
    let mut t = Tally::new();
    t.check(a == b, || "reruns differ".into());
    let mut all = first;
    all.push(t.finish(CRITERIA));
    Ok(report(seed, all))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_oracles_on_known_graphs() {
        let g = MultiGraph::from_pairs([("a", "b", 2), ("b", "c", 1), ("a", "c", 1)]).unwrap();
        let (a, b, c) = (0, 1, 2);
        assert_eq!(brute_lambda(&g, a, b), 3);
        assert_eq!(brute_lambda(&g, a, c), 2);
        let o = Orientation::from_arcs(&g, &[("a", "b"), ("b", "a"), ("b", "c"), ("c", "a")]).unwrap();
        assert_eq!(brute_arc_lambda(&g, &o, a, b), 1);
        assert_eq!(brute_arc_lambda(&g, &o, b, a), 2);
        assert_eq!(brute_arc_lambda(&g, &o, a, c), 1);
    }

    #[test]
    fn generators_meet_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let g = random_2k_connected(&mut rng, 5, 2, 24);
            assert!(is_k_edge_connected(&g, 4) && g.edge_count() <= 24);
            let e = random_eulerian(&mut rng, 6);
            assert!(e.is_connected() && e.vertices().all(|v| e.degree(v) % 2 == 0));
            assert!(random_connected(&mut rng, 6, 7).is_connected());
        }
    }

    #[test]
    fn small_criteria_pass() {
        for id in [8, 10, 13] {
            let c = run_criterion(id, DEFAULT_SEED).unwrap();
            assert!(c.pass, "{c:?}");
        }
    }
}
