//! Deterministic generators for infinite graphs and their finite depth balls.
//!
//! A [`LazyGraph`] answers local questions only: which vertices exist, the
//! neighbours of a finite-degree vertex, and the enumeration `e^v_0, e^v_1, …`
//! of the edges at any vertex. Vertices of infinite degree expose a finite
//! skeleton of neighbours that breadth-first balls follow, so every ball stays
//! finite; all other edges at such a vertex enter a ball from their
//! finite-degree endpoint.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, GraphBuilder, MultiGraph, VertexIdx};
use crate::orientation::{Dir, Orientation};

pub const DEFAULT_EDGE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    /// The double ray `y = row` inside the grid.
    GridRow(i64),
    /// One rail of a ladder.
    LadderColumn(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// One-way infinite ladder with `columns` rails named `a`, `b`, …;
    /// consecutive rails are joined by rungs at every level.
    Ladder { columns: usize, rail_mult: u32, rung_mult: u32 },
    /// The square grid on `Z × Z`.
    Grid,
    /// A ray whose every edge is replaced by `k` parallel edges.
    KRay { k: u32 },
    /// A ray whose `n`-th edge (1-based) is replaced by `n` parallel edges.
    ExpandingRay,
    /// Cubic tree with a distinguished vertex `r` joined to every other vertex.
    CubicTreePlusRoot,
    /// Rooted binary tree (root degree 2).
    BinaryTree,
    /// A finite graph seen through the lazy interface.
    Finite(MultiGraph),
    Subgraph { parent: Box<LazyGraph>, selector: Selector },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Neighborhood {
    /// Every neighbour with its edge multiplicity.
    Finite(Vec<(String, u32)>),
    /// Infinite degree; `skeleton` is what breadth-first search follows.
    Infinite { skeleton: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LazyGraph {
    family: Family,
    edge_cap: usize,
}

fn ladder_name(col: usize, i: u64) -> String {
    format!("{}:{i}", (b'a' + col as u8) as char)
}

fn parse_ladder(v: &str, columns: usize) -> Option<(usize, u64)> {
    let (c, i) = v.split_once(':')?;
    let mut chars = c.chars();
    let ch = chars.next()?;
    if chars.next().is_some() || !ch.is_ascii_lowercase() {
        return None;
    }
    let col = (ch as u8 - b'a') as usize;
    let n: u64 = i.parse().ok()?;
    (col < columns && n.to_string() == i).then_some((col, n))
}

fn parse_indexed(v: &str, prefix: &str) -> Option<u64> {
    let rest = v.strip_prefix(prefix)?;
    let i: u64 = rest.parse().ok()?;
    (i.to_string() == rest).then_some(i)
}

fn grid_name(x: i64, y: i64) -> String {
    format!("({x},{y})")
}

fn parse_grid(v: &str) -> Option<(i64, i64)> {
    let inner = v.strip_prefix('(')?.strip_suffix(')')?;
    let (x, y) = inner.split_once(',')?;
    let (x, y): (i64, i64) = (x.parse().ok()?, y.parse().ok()?);
    (grid_name(x, y) == v).then_some((x, y))
}

/// Tree vertex `prefix` + digits; the root has no digits. The root has
/// `root_children` children, every other vertex two.
fn parse_tree(v: &str, prefix: char, root_children: u8) -> Option<Vec<u8>> {
    let rest = v.strip_prefix(prefix)?;
    let digits: Vec<u8> = rest.bytes().map(|b| b.wrapping_sub(b'0')).collect();
    for (i, &d) in digits.iter().enumerate() {
        let limit = if i == 0 { root_children } else { 2 };
        if d >= limit {
            return None;
        }
    }
    Some(digits)
}

fn tree_name(prefix: char, digits: &[u8]) -> String {
    let mut s = String::from(prefix);
    for d in digits {
        s.push((b'0' + d) as char);
    }
    s
}

fn tree_neighbors(prefix: char, root_children: u8, digits: &[u8]) -> Vec<String> {
    let mut out = Vec::new();
    if !digits.is_empty() {
        out.push(tree_name(prefix, &digits[..digits.len() - 1]));
    }
    let kids = if digits.is_empty() { root_children } else { 2 };
    for c in 0..kids {
        let mut d = digits.to_vec();
        d.push(c);
        out.push(tree_name(prefix, &d));
    }
    out
}

impl LazyGraph {
    pub fn new(family: Family) -> Self {
        LazyGraph {
            family,
            edge_cap: DEFAULT_EDGE_CAP,
        }
    }

    pub fn with_edge_cap(mut self, cap: usize) -> Self {
        self.edge_cap = cap;
        self
    }

    pub fn one_way_ladder() -> Self {
        Self::new(Family::Ladder {
            columns: 2,
            rail_mult: 1,
            rung_mult: 1,
        })
    }

    pub fn k_column_ladder(columns: usize) -> Self {
        Self::new(Family::Ladder {
            columns,
            rail_mult: 1,
            rung_mult: 1,
        })
    }

    /// Two-rail ladder whose rails are doubled.
    pub fn doubled_rail_ladder() -> Self {
        Self::new(Family::Ladder {
            columns: 2,
            rail_mult: 2,
            rung_mult: 1,
        })
    }

    pub fn grid() -> Self {
        Self::new(Family::Grid)
    }

    pub fn k_ray(k: u32) -> Self {
        Self::new(Family::KRay { k })
    }

    pub fn expanding_ray() -> Self {
        Self::new(Family::ExpandingRay)
    }

    pub fn cubic_tree_plus_root() -> Self {
        Self::new(Family::CubicTreePlusRoot)
    }

    pub fn binary_tree() -> Self {
        Self::new(Family::BinaryTree)
    }

    pub fn finite(g: MultiGraph) -> Self {
        Self::new(Family::Finite(g))
    }

    pub fn grid_row(y: i64) -> Self {
        Self::new(Family::Subgraph {
            parent: Box::new(Self::grid()),
            selector: Selector::GridRow(y),
        })
    }

    pub fn ladder_column(columns: usize, col: usize) -> Self {
        Self::new(Family::Subgraph {
            parent: Box::new(Self::k_column_ladder(columns)),
            selector: Selector::LadderColumn(col),
        })
    }

    /// Parses a family spec such as `one_way_ladder`, `k_column_ladder:4`,
    /// `ladder:2:2:1`, `k_ray:3`, `grid_row:0` or `ladder_column:3:0`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let bad = || Error::UnknownFamily(spec.to_string());
        let parts: Vec<&str> = spec.split(':').collect();
        let num = |i: usize| -> Result<u64> { parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad) };
        let g = match parts[0] {
            "one_way_ladder" if parts.len() == 1 => Self::one_way_ladder(),
            "doubled_rail_ladder" if parts.len() == 1 => Self::doubled_rail_ladder(),
            "k_column_ladder" if parts.len() == 2 => Self::k_column_ladder(num(1)? as usize),
            "ladder" if parts.len() == 4 => Self::new(Family::Ladder {
                columns: num(1)? as usize,
                rail_mult: num(2)? as u32,
                rung_mult: num(3)? as u32,
            }),
            "grid" if parts.len() == 1 => Self::grid(),
            "ray" if parts.len() == 1 => Self::k_ray(1),
            "k_ray" if parts.len() == 2 => Self::k_ray(num(1)? as u32),
            "expanding_ray" if parts.len() == 1 => Self::expanding_ray(),
            "cubic_tree_plus_root" if parts.len() == 1 => Self::cubic_tree_plus_root(),
            "binary_tree" if parts.len() == 1 => Self::binary_tree(),
            "grid_row" if parts.len() == 2 => {
                let y: i64 = parts[1].parse().map_err(|_| bad())?;
                Self::grid_row(y)
            }
            "ladder_column" if parts.len() == 3 => Self::ladder_column(num(1)? as usize, num(2)? as usize),
            _ => return Err(bad()),
        };
        if let Family::Ladder { columns, .. } = g.family {
            if !(1..=26).contains(&columns) {
                return Err(bad());
            }
        }
        Ok(g)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn edge_cap(&self) -> usize {
        self.edge_cap
    }

    pub fn default_root(&self) -> String {
        match &self.family {
            Family::Ladder { .. } => ladder_name(0, 0),
            Family::Grid => grid_name(0, 0),
            Family::KRay { .. } | Family::ExpandingRay => "r:0".into(),
            Family::CubicTreePlusRoot => "r".into(),
            Family::BinaryTree => "t".into(),
            Family::Finite(g) => g.names().first().cloned().unwrap_or_default(),
            Family::Subgraph { parent, selector } => match selector {
                Selector::GridRow(y) => grid_name(0, *y),
                Selector::LadderColumn(c) => {
                    let _ = parent;
                    ladder_name(*c, 0)
                }
            },
        }
    }

    pub fn contains(&self, v: &str) -> bool {
        match &self.family {
            Family::Ladder { columns, .. } => parse_ladder(v, *columns).is_some(),
            Family::Grid => parse_grid(v).is_some(),
            Family::KRay { .. } | Family::ExpandingRay => parse_indexed(v, "r:").is_some(),
            Family::CubicTreePlusRoot => parse_tree(v, 'r', 3).is_some(),
            Family::BinaryTree => parse_tree(v, 't', 2).is_some(),
            Family::Finite(g) => g.vertex(v).is_some(),
            Family::Subgraph { parent, selector } => {
                parent.contains(v)
                    && match selector {
                        Selector::GridRow(y) => parse_grid(v).is_some_and(|(_, vy)| vy == *y),
                        Selector::LadderColumn(c) => v.split_once(':').is_some_and(|(col, _)| {
                            col.len() == 1 && (col.as_bytes()[0] - b'a') as usize == *c
                        }),
                    }
            }
        }
    }

    fn require(&self, v: &str) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    pub fn neighborhood(&self, v: &str) -> Result<Neighborhood> {
        self.require(v)?;
        let fin = |list: Vec<(String, u32)>| Ok(Neighborhood::Finite(list.into_iter().filter(|p| p.1 > 0).collect()));
        match &self.family {
            Family::Ladder {
                columns,
                rail_mult,
                rung_mult,
            } => {
                let (c, i) = parse_ladder(v, *columns).expect("checked");
                let mut out = Vec::new();
                if i > 0 {
                    out.push((ladder_name(c, i - 1), *rail_mult));
                }
                out.push((ladder_name(c, i + 1), *rail_mult));
                if c > 0 {
                    out.push((ladder_name(c - 1, i), *rung_mult));
                }
                if c + 1 < *columns {
                    out.push((ladder_name(c + 1, i), *rung_mult));
                }
                fin(out)
            }
            Family::Grid => {
                let (x, y) = parse_grid(v).expect("checked");
                fin(vec![
                    (grid_name(x - 1, y), 1),
                    (grid_name(x + 1, y), 1),
                    (grid_name(x, y - 1), 1),
                    (grid_name(x, y + 1), 1),
                ])
            }
            Family::KRay { k } => {
                let i = parse_indexed(v, "r:").expect("checked");
                let mut out = Vec::new();
                if i > 0 {
                    out.push((format!("r:{}", i - 1), *k));
                }
                out.push((format!("r:{}", i + 1), *k));
                fin(out)
            }
            Family::ExpandingRay => {
                let i = parse_indexed(v, "r:").expect("checked");
                let mut out = Vec::new();
                if i > 0 {
                    out.push((format!("r:{}", i - 1), i as u32));
                }
                out.push((format!("r:{}", i + 1), i as u32 + 1));
                fin(out)
            }
            Family::CubicTreePlusRoot => {
                let digits = parse_tree(v, 'r', 3).expect("checked");
                if digits.is_empty() {
                    return Ok(Neighborhood::Infinite {
                        skeleton: tree_neighbors('r', 3, &digits),
                    });
                }
                let mut out: Vec<(String, u32)> = tree_neighbors('r', 3, &digits)
                    .into_iter()
                    .map(|n| (n, 1))
                    .collect();
                if digits.len() == 1 {
                    // the chord to r runs parallel to the tree edge
                    out[0].1 = 2;
                } else {
                    out.push(("r".into(), 1));
                }
                fin(out)
            }
            Family::BinaryTree => {
                let digits = parse_tree(v, 't', 2).expect("checked");
                fin(tree_neighbors('t', 2, &digits).into_iter().map(|n| (n, 1)).collect())
            }
            Family::Finite(g) => {
                let x = g.vertex(v).expect("checked");
                fin(g
                    .neighbors(x)
                    .into_iter()
                    .map(|(y, m)| (g.name(y).to_string(), m as u32))
                    .collect())
            }
            Family::Subgraph { parent, .. } => match parent.neighborhood(v)? {
                Neighborhood::Finite(list) => {
                    fin(list.into_iter().filter(|(w, _)| self.contains(w)).collect())
                }
                Neighborhood::Infinite { skeleton } => Ok(Neighborhood::Infinite {
                    skeleton: skeleton.into_iter().filter(|w| self.contains(w)).collect(),
                }),
            },
        }
    }

    pub fn is_finite_degree(&self, v: &str) -> Result<bool> {
        Ok(matches!(self.neighborhood(v)?, Neighborhood::Finite(_)))
    }

    /// Number of parallel edges between `u` and `v`.
    pub fn multiplicity(&self, u: &str, v: &str) -> Result<u32> {
        for (a, b) in [(u, v), (v, u)] {
            if let Neighborhood::Finite(list) = self.neighborhood(a)? {
                return Ok(list.iter().find(|(w, _)| w == b).map_or(0, |p| p.1));
            }
        }
        self.require(v)?;
        Ok(0)
    }

    /// The enumeration `e^v_0, e^v_1, …` of edges at `v`. Finite for
    /// finite-degree vertices (canonical id order), infinite otherwise.
    pub fn incident(&self, v: &str) -> Result<Box<dyn Iterator<Item = EdgeId> + '_>> {
        match self.neighborhood(v)? {
            Neighborhood::Finite(list) => {
                let mut ids: Vec<EdgeId> = list
                    .iter()
                    .flat_map(|(w, m)| (0..*m).map(move |j| EdgeId::new(v, w.clone(), j).expect("no loops")))
                    .collect();
                ids.sort();
                Ok(Box::new(ids.into_iter()))
            }
            Neighborhood::Infinite { .. } => {
                // only the distinguished tree vertex has infinite degree: walk the
                // tree breadth-first and emit every edge back to it
                let root = v.to_string();
                let tree = TreeBfs::new('r', 3);
                Ok(Box::new(tree.skip(1).flat_map(move |t| {
                    let m = if t.len() == 2 { 2 } else { 1 };
                    let root = root.clone();
                    (0..m).map(move |j| EdgeId::new(root.clone(), t.clone(), j).expect("no loops"))
                })))
            }
        }
    }
}

impl fmt::Display for LazyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Ladder {
                columns,
                rail_mult,
                rung_mult,
            } => match (columns, rail_mult, rung_mult) {
                (2, 1, 1) => write!(f, "one_way_ladder"),
                (2, 2, 1) => write!(f, "doubled_rail_ladder"),
                (c, 1, 1) => write!(f, "k_column_ladder:{c}"),
                (c, r, u) => write!(f, "ladder:{c}:{r}:{u}"),
            },
            Family::Grid => write!(f, "grid"),
            Family::KRay { k } => write!(f, "k_ray:{k}"),
            Family::ExpandingRay => write!(f, "expanding_ray"),
            Family::CubicTreePlusRoot => write!(f, "cubic_tree_plus_root"),
            Family::BinaryTree => write!(f, "binary_tree"),
            Family::Finite(g) => write!(f, "finite:{}", g.content_hash()),
            Family::Subgraph { parent, selector } => match (selector, &parent.family) {
                (Selector::GridRow(y), _) => write!(f, "grid_row:{y}"),
                (Selector::LadderColumn(c), Family::Ladder { columns, .. }) => {
                    write!(f, "ladder_column:{columns}:{c}")
                }
                (Selector::LadderColumn(c), _) => write!(f, "column:{c}"),
            },
        }
    }
}

/// Breadth-first enumeration of tree vertex names, root first.
struct TreeBfs {
    prefix: char,
    root_children: u8,
    queue: VecDeque<Vec<u8>>,
}

impl TreeBfs {
    fn new(prefix: char, root_children: u8) -> Self {
        TreeBfs {
            prefix,
            root_children,
            queue: VecDeque::from([Vec::new()]),
        }
    }
}

impl Iterator for TreeBfs {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        let d = self.queue.pop_front()?;
        let kids = if d.is_empty() { self.root_children } else { 2 };
        for c in 0..kids {
            let mut k = d.clone();
            k.push(c);
            self.queue.push_back(k);
        }
        Some(tree_name(self.prefix, &d))
    }
}

/// The induced finite subgraph on `V_n`, where `V_0` is the root set and
/// `V_{k+1} = V_k ∪ N(V_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub roots: Vec<String>,
    pub depth: usize,
    pub graph: MultiGraph,
    boundary: Vec<bool>,
    dist: Vec<usize>,
}

impl Ball {
    /// True when the vertex has neighbours outside the ball (or infinite degree).
    pub fn is_boundary(&self, v: VertexIdx) -> bool {
        self.boundary[v]
    }

    pub fn distance(&self, v: VertexIdx) -> usize {
        self.dist[v]
    }

    pub fn boundary_vertices(&self) -> Vec<VertexIdx> {
        self.graph.vertices().filter(|&v| self.boundary[v]).collect()
    }

    pub fn interior_vertices(&self) -> Vec<VertexIdx> {
        self.graph.vertices().filter(|&v| !self.boundary[v]).collect()
    }

    /// Vertices within distance `r` of the roots.
    pub fn within(&self, r: usize) -> BTreeSet<VertexIdx> {
        self.graph.vertices().filter(|&v| self.dist[v] <= r).collect()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.graph.vertex(name).is_some()
    }
}

/// Builds the depth-`depth` ball around `roots`. Refuses once the ball would
/// exceed the family's edge cap.
pub fn ball(g: &LazyGraph, roots: &[&str], depth: usize) -> Result<Ball> {
    if roots.is_empty() {
        return Err(Error::Malformed("ball needs at least one root".into()));
    }
    let mut dist: BTreeMap<String, usize> = BTreeMap::new();
    let mut hoods: BTreeMap<String, Neighborhood> = BTreeMap::new();
    let mut frontier: Vec<String> = Vec::new();
    for r in roots {
        g.require(r)?;
        if dist.insert(r.to_string(), 0).is_none() {
            frontier.push(r.to_string());
        }
    }
    let mut budget: usize = 0;
    for level in 0..=depth {
        let mut next = Vec::new();
        for v in &frontier {
            let hood = g.neighborhood(v)?;
            let follow: Vec<String> = match &hood {
                Neighborhood::Finite(list) => {
                    budget += list.iter().map(|p| p.1 as usize).sum::<usize>();
                    list.iter().map(|p| p.0.clone()).collect()
                }
                Neighborhood::Infinite { skeleton } => skeleton.clone(),
            };
            if budget > 2 * g.edge_cap {
                return Err(Error::CapExceeded(format!(
                    "ball of depth {depth} in {g} exceeds {} edges",
                    g.edge_cap
                )));
            }
            if level < depth {
                for w in follow {
                    if !dist.contains_key(&w) {
                        dist.insert(w.clone(), level + 1);
                        next.push(w);
                    }
                }
            }
            hoods.insert(v.clone(), hood);
        }
        frontier = next;
    }
    let mut b = GraphBuilder::new();
    let mut boundary_names = BTreeSet::new();
    for (v, hood) in &hoods {
        b.add_vertex(v.clone())?;
        match hood {
            Neighborhood::Finite(list) => {
                for (w, m) in list {
                    match hoods.get(w) {
                        None => {
                            boundary_names.insert(v.clone());
                        }
                        Some(Neighborhood::Infinite { .. }) => {
                            b.add_edges(v, w, *m)?;
                        }
                        Some(Neighborhood::Finite(_)) if v < w => {
                            b.add_edges(v, w, *m)?;
                        }
                        Some(_) => {}
                    }
                }
            }
            Neighborhood::Infinite { .. } => {
                boundary_names.insert(v.clone());
            }
        }
    }
    if let Family::Finite(fg) = &g.family {
        for v in fg.vertices().filter(|&v| fg.is_declared_infinite(v)) {
            if hoods.contains_key(fg.name(v)) {
                boundary_names.insert(fg.name(v).to_string());
            }
        }
    }
    let graph = b.build();
    if graph.edge_count() > g.edge_cap {
        return Err(Error::CapExceeded(format!(
            "ball of depth {depth} in {g} has {} edges (cap {})",
            graph.edge_count(),
            g.edge_cap
        )));
    }
    let boundary = graph.names().iter().map(|n| boundary_names.contains(n)).collect();
    let dist = graph.names().iter().map(|n| dist[n]).collect();
    Ok(Ball {
        roots: roots.iter().map(|r| r.to_string()).collect(),
        depth,
        graph,
        boundary,
        dist,
    })
}

/// The orientation of the two-rail ladder used to show that reachability
/// through the end differs from plain reachability: rail `a` points away from
/// level 0, rail `b` points toward it, and every rung points from `b` to `a`.
pub fn ladder_through_end_orientation(b: &Ball) -> Result<Orientation> {
    let g = &b.graph;
    let dirs = (0..g.edge_count())
        .map(|e| {
            let id = g.edge_id(e);
            let (cu, iu) = parse_ladder(&id.u, 26).ok_or_else(|| Error::UnknownVertex(id.u.clone()))?;
            let (cv, iv) = parse_ladder(&id.v, 26).ok_or_else(|| Error::UnknownVertex(id.v.clone()))?;
            let (tail_is_u, ok) = match (cu, cv) {
                (0, 0) => (iu < iv, true),
                (1, 1) => (iu > iv, true),
                (1, 0) => (true, iu == iv),
                (0, 1) => (false, iu == iv),
                _ => (true, false),
            };
            if !ok {
                return Err(Error::Malformed(format!("`{id}` is not an edge of the two-rail ladder")));
            }
            Ok(if tail_is_u { Dir::Forward } else { Dir::Backward })
        })
        .collect::<Result<Vec<Dir>>>()?;
    Orientation::new(g, dirs)
}

/// Orients every edge of a ray ball away from `r:0`.
pub fn outward_ray_orientation(b: &Ball) -> Result<Orientation> {
    let g = &b.graph;
    let dirs = (0..g.edge_count())
        .map(|e| {
            let id = g.edge_id(e);
            let (iu, iv) = (
                parse_indexed(&id.u, "r:").ok_or_else(|| Error::UnknownVertex(id.u.clone()))?,
                parse_indexed(&id.v, "r:").ok_or_else(|| Error::UnknownVertex(id.v.clone()))?,
            );
            Ok(if iu < iv { Dir::Forward } else { Dir::Backward })
        })
        .collect::<Result<Vec<Dir>>>()?;
    Orientation::new(g, dirs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(b: &Ball) -> BTreeSet<String> {
        b.graph.names().iter().cloned().collect()
    }

    #[test]
    fn ladder_depth_two() {
        let g = LazyGraph::one_way_ladder();
        let b = ball(&g, &["a:0"], 2).unwrap();
        let expect: BTreeSet<String> = ["a:0", "a:1", "a:2", "b:0", "b:1"].iter().map(|s| s.to_string()).collect();
        // b:2 sits at distance 3 from a:0
        assert_eq!(names(&b), expect);
        assert_eq!(b.graph.edge_count(), 5);
        let level = ball(&g, &["a:0", "b:0"], 2).unwrap();
        let expect: BTreeSet<String> =
            ["a:0", "a:1", "a:2", "b:0", "b:1", "b:2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(names(&level), expect);
        assert_eq!(level.graph.edge_count(), 7);
    }

    #[test]
    fn depth_zero_is_the_root() {
        for g in [LazyGraph::grid(), LazyGraph::cubic_tree_plus_root(), LazyGraph::k_ray(3)] {
            let b = ball(&g, &[&g.default_root()], 0).unwrap();
            assert_eq!((b.graph.vertex_count(), b.graph.edge_count()), (1, 0));
        }
    }

    #[test]
    fn cubic_tree_plus_root_depth_one() {
        let g = LazyGraph::cubic_tree_plus_root();
        let b = ball(&g, &["r"], 1).unwrap();
        let expect: BTreeSet<String> = ["r", "r0", "r1", "r2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(names(&b), expect);
        // tree edge plus parallel chord to each neighbour
        assert_eq!(b.graph.edge_count(), 6);
        assert!(b.is_boundary(b.graph.vertex("r").unwrap()));
        let b2 = ball(&g, &["r"], 2).unwrap();
        // 9 tree edges, 9 chords
        assert_eq!(b2.graph.edge_count(), 18);
    }

    #[test]
    fn ray_edge_counts() {
        for n in 0..8 {
            let b = ball(&LazyGraph::k_ray(3), &["r:0"], n).unwrap();
            assert_eq!((b.graph.vertex_count(), b.graph.edge_count()), (n + 1, 3 * n));
            let e = ball(&LazyGraph::expanding_ray(), &["r:0"], n).unwrap();
            assert_eq!(e.graph.edge_count(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn balls_are_nested_induced_subgraphs() {
        for g in [
            LazyGraph::one_way_ladder(),
            LazyGraph::grid(),
            LazyGraph::cubic_tree_plus_root(),
            LazyGraph::expanding_ray(),
            LazyGraph::k_column_ladder(3),
        ] {
            let root = g.default_root();
            for n in 0..4 {
                let small = ball(&g, &[&root], n).unwrap();
                let big = ball(&g, &[&root], n + 1).unwrap();
                let keep: BTreeSet<usize> = small.graph.names().iter().map(|v| big.graph.vertex(v).unwrap()).collect();
                assert_eq!(big.graph.induced(&keep), small.graph, "{g} depth {n}");
            }
        }
    }

    #[test]
    fn interior_degrees_match_family() {
        for g in [LazyGraph::one_way_ladder(), LazyGraph::grid(), LazyGraph::cubic_tree_plus_root()] {
            let b = ball(&g, &[&g.default_root()], 3).unwrap();
            for v in b.interior_vertices() {
                let Neighborhood::Finite(list) = g.neighborhood(b.graph.name(v)).unwrap() else {
                    panic!("interior vertex of infinite degree");
                };
                let deg: u32 = list.iter().map(|p| p.1).sum();
                assert_eq!(b.graph.degree(v), deg as usize);
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic_and_symmetric() {
        let g = LazyGraph::cubic_tree_plus_root();
        let first: Vec<EdgeId> = g.incident("r").unwrap().take(10).collect();
        let again: Vec<EdgeId> = g.incident("r").unwrap().take(10).collect();
        assert_eq!(first, again);
        assert_eq!(first[0].to_string(), "r-r0-0");
        assert_eq!(first[1].to_string(), "r-r0-1");
        assert_eq!(first[6].to_string(), "r-r00-0");
        for id in &first {
            let other = id.other("r").unwrap();
            assert!(g.incident(other).unwrap().any(|e| &e == id));
        }
    }

    #[test]
    fn edge_cap_refuses() {
        let g = LazyGraph::grid().with_edge_cap(50);
        assert!(matches!(ball(&g, &["(0,0)"], 10), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn unknown_root_and_family() {
        assert!(matches!(ball(&LazyGraph::grid(), &["a:0"], 1), Err(Error::UnknownVertex(_))));
        assert!(LazyGraph::from_spec("nonsense").is_err());
        for spec in ["one_way_ladder", "k_column_ladder:4", "ladder:3:2:1", "grid_row:0", "ladder_column:3:1", "k_ray:2"] {
            assert_eq!(LazyGraph::from_spec(spec).unwrap().to_string(), spec);
        }
    }

    #[test]
    fn subgraph_families() {
        let row = LazyGraph::grid_row(0);
        assert!(row.contains("(5,0)") && !row.contains("(5,1)"));
        let b = ball(&row, &["(0,0)"], 3).unwrap();
        assert_eq!((b.graph.vertex_count(), b.graph.edge_count()), (7, 6));
        let col = LazyGraph::ladder_column(3, 1);
        assert!(col.contains("b:4") && !col.contains("a:4"));
    }

    #[test]
    fn preset_ladder_orientation() {
        let g = LazyGraph::one_way_ladder();
        let b = ball(&g, &["a:0"], 3).unwrap();
        let o = ladder_through_end_orientation(&b).unwrap();
        let gr = &b.graph;
        let a0 = gr.vertex("a:0").unwrap();
        let reach = o.reachable_from(gr, a0);
        assert!(!reach[gr.vertex("b:0").unwrap()]);
        assert!(reach[gr.vertex("a:3").unwrap()]);
    }
}
