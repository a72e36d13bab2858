//! Finite undirected multigraphs with canonical edge ids.
//!
//! Vertices are opaque strings without whitespace. Parallel edges between
//! `u < v` are numbered `0..mult`, giving the canonical id `u-v-j`. Loops are
//! never representable. Vertex and edge indices follow canonical order, so
//! iterating `0..edge_count()` visits edges in lexicographic id order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub type VertexIdx = usize;
pub type EdgeIdx = usize;

/// Canonical edge identifier `(u, v, j)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId {
    pub u: String,
    pub v: String,
    pub j: u32,
}

impl EdgeId {
    /// Builds a canonical id, swapping the endpoints if needed.
    pub fn new(a: impl Into<String>, b: impl Into<String>, j: u32) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a == b {
            return Err(Error::Loop(a));
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Ok(EdgeId { u, v, j })
    }

    pub fn other(&self, x: &str) -> Option<&str> {
        if self.u == x {
            Some(&self.v)
        } else if self.v == x {
            Some(&self.u)
        } else {
            None
        }
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}-{}", self.u, self.v, self.j)
    }
}

/// Splits at top-level occurrences of `sep`, ignoring any inside parentheses.
pub fn split_top(s: &str, sep: char) -> Vec<&str> {
    let (mut depth, mut start, mut out) = (0i32, 0, Vec::new());
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl std::str::FromStr for EdgeId {
    type Err = Error;

    /// Parses `u-v-j`; a `-` inside parentheses belongs to the vertex name.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownEdge(s.to_string());
        match split_top(s, '-').as_slice() {
            [u, v, j] => EdgeId::new(*u, *v, j.parse().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexIdx,
    pub v: VertexIdx,
    pub j: u32,
}

impl Edge {
    pub fn other(&self, x: VertexIdx) -> VertexIdx {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    names: Vec<String>,
    index: HashMap<String, VertexIdx>,
    edges: Vec<Edge>,
    adj: Vec<Vec<EdgeIdx>>,
    infinite: BTreeSet<VertexIdx>,
}

/// Accumulates vertices and parallel edges before freezing them into a
/// [`MultiGraph`]. Repeated `add_edges` calls on the same pair add up.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    vertices: BTreeSet<String>,
    infinite: BTreeSet<String>,
    mult: BTreeMap<(String, String), u32>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: impl Into<String>) -> Result<&mut Self> {
        let v = v.into();
        check_vertex_name(&v)?;
        self.vertices.insert(v);
        Ok(self)
    }

    pub fn mark_infinite(&mut self, v: impl Into<String>) -> Result<&mut Self> {
        let v = v.into();
        check_vertex_name(&v)?;
        self.vertices.insert(v.clone());
        self.infinite.insert(v);
        Ok(self)
    }

    pub fn add_edges(&mut self, a: &str, b: &str, mult: u32) -> Result<&mut Self> {
        check_vertex_name(a)?;
        check_vertex_name(b)?;
        if a == b {
            return Err(Error::Loop(a.to_string()));
        }
        self.vertices.insert(a.to_string());
        self.vertices.insert(b.to_string());
        if mult > 0 {
            let key = if a < b {
                (a.to_string(), b.to_string())
            } else {
                (b.to_string(), a.to_string())
            };
            *self.mult.entry(key).or_insert(0) += mult;
        }
        Ok(self)
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<&mut Self> {
        self.add_edges(a, b, 1)
    }

    pub fn build(&self) -> MultiGraph {
        let names: Vec<String> = self.vertices.iter().cloned().collect();
        let index: HashMap<String, VertexIdx> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut edges = Vec::new();
        let mut adj = vec![Vec::new(); names.len()];
        for ((a, b), &m) in &self.mult {
            let (u, v) = (index[a], index[b]);
            for j in 0..m {
                adj[u].push(edges.len());
                adj[v].push(edges.len());
                edges.push(Edge { u, v, j });
            }
        }
        let infinite = self.infinite.iter().map(|n| index[n]).collect();
        MultiGraph {
            names,
            index,
            edges,
            adj,
            infinite,
        }
    }
}

fn check_vertex_name(v: &str) -> Result<()> {
    if v.is_empty() || v.chars().any(char::is_whitespace) || v.starts_with('#') {
        return Err(Error::InvalidVertex(v.to_string()));
    }
    Ok(())
}

impl MultiGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    /// Builds a graph from `(u, v, multiplicity)` triples.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str, u32)>) -> Result<Self> {
        let mut b = GraphBuilder::new();
        for (u, v, m) in pairs {
            b.add_edges(u, v, m)?;
        }
        Ok(b.build())
    }

    /// Subgraph formed by a subset of edges (and their endpoints). The second
    /// value maps each subgraph edge index to the parent edge index; parallel
    /// edges may be renumbered, so ids must be translated through it.
    pub fn edge_subgraph(&self, keep: impl IntoIterator<Item = EdgeIdx>) -> (MultiGraph, Vec<EdgeIdx>) {
        let kept: BTreeSet<EdgeIdx> = keep.into_iter().collect();
        let mut b = GraphBuilder::new();
        for &e in &kept {
            let ed = self.edges[e];
            b.add_edges(&self.names[ed.u], &self.names[ed.v], 1)
                .expect("edges of a valid graph");
        }
        (b.build(), kept.into_iter().collect())
    }

    /// Induced subgraph on a vertex subset.
    pub fn induced(&self, keep: &BTreeSet<VertexIdx>) -> MultiGraph {
        let mut b = GraphBuilder::new();
        for &v in keep {
            b.add_vertex(self.names[v].clone()).expect("valid name");
            if self.infinite.contains(&v) {
                b.mark_infinite(self.names[v].clone()).expect("valid name");
            }
        }
        for e in &self.edges {
            if keep.contains(&e.u) && keep.contains(&e.v) {
                b.add_edges(&self.names[e.u], &self.names[e.v], 1).expect("valid edge");
            }
        }
        b.build()
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexIdx> {
        0..self.names.len()
    }

    pub fn name(&self, v: VertexIdx) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<VertexIdx> {
        self.index.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<VertexIdx> {
        self.vertex(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, e: EdgeIdx) -> Edge {
        self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn incident(&self, v: VertexIdx) -> &[EdgeIdx] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexIdx) -> usize {
        self.adj[v].len()
    }

    pub fn is_declared_infinite(&self, v: VertexIdx) -> bool {
        self.infinite.contains(&v)
    }

    pub fn edge_id(&self, e: EdgeIdx) -> EdgeId {
        let ed = self.edges[e];
        EdgeId {
            u: self.names[ed.u].clone(),
            v: self.names[ed.v].clone(),
            j: ed.j,
        }
    }

    pub fn edge_by_id(&self, id: &EdgeId) -> Option<EdgeIdx> {
        let u = self.vertex(&id.u)?;
        let v = self.vertex(&id.v)?;
        self.adj[u]
            .iter()
            .copied()
            .find(|&e| self.edges[e].v == v && self.edges[e].u == u && self.edges[e].j == id.j)
    }

    /// Resolves a textual edge id `u-v-j`. Vertex names may themselves contain
    /// `-`, so every split point is tried against the vertex set.
    pub fn parse_edge_id(&self, s: &str) -> Result<EdgeIdx> {
        let bad = || Error::UnknownEdge(s.to_string());
        let (uv, j) = s.rsplit_once('-').ok_or_else(bad)?;
        let j: u32 = j.parse().map_err(|_| bad())?;
        let mut found = None;
        for (pos, _) in uv.match_indices('-') {
            let (u, v) = (&uv[..pos], &uv[pos + 1..]);
            if self.vertex(u).is_some() && self.vertex(v).is_some() {
                if let Some(e) = EdgeId::new(u, v, j).ok().and_then(|id| self.edge_by_id(&id)) {
                    if found.replace(e).is_some() {
                        return Err(bad());
                    }
                }
            }
        }
        found.ok_or_else(bad)
    }

    /// All edges joining `u` and `v`, in `j` order.
    pub fn parallel(&self, u: VertexIdx, v: VertexIdx) -> Vec<EdgeIdx> {
        self.adj[u]
            .iter()
            .copied()
            .filter(|&e| self.edges[e].other(u) == v)
            .collect()
    }

    pub fn multiplicity(&self, u: VertexIdx, v: VertexIdx) -> usize {
        self.parallel(u, v).len()
    }

    /// Distinct neighbours with multiplicities, in vertex order.
    pub fn neighbors(&self, v: VertexIdx) -> BTreeMap<VertexIdx, usize> {
        let mut out = BTreeMap::new();
        for &e in &self.adj[v] {
            *out.entry(self.edges[e].other(v)).or_insert(0) += 1;
        }
        out
    }

    /// Component label per vertex, ignoring the edges in `removed`.
    pub fn components_without(&self, removed: &BTreeSet<EdgeIdx>) -> (usize, Vec<usize>) {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &e in &self.adj[x] {
                    if removed.contains(&e) {
                        continue;
                    }
                    let y = self.edges[e].other(x);
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components_without(&BTreeSet::new()).0 == 1
    }

    /// Stable content hash of the canonical text form (first 16 hex digits of SHA-256).
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// Canonical text form: every vertex on a `v` line, then one `e` line per
    /// adjacent pair with its multiplicity.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            out.push_str("v ");
            out.push_str(&self.names[v]);
            if self.infinite.contains(&v) {
                out.push_str(" inf");
            }
            out.push('\n');
        }
        let mut i = 0;
        while i < self.edges.len() {
            let e = self.edges[i];
            let mut m = 1;
            while i + m < self.edges.len() && self.edges[i + m].u == e.u && self.edges[i + m].v == e.v {
                m += 1;
            }
            out.push_str(&format!("e {} {} {}\n", self.names[e.u], self.names[e.v], m));
            i += m;
        }
        out
    }

    /// Parses the multigraph text format (`v <id> [inf]`, `e <u> <v> <mult>`, `#` comments).
    pub fn parse(text: &str) -> Result<Self> {
        let mut b = GraphBuilder::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: lineno + 1,
                msg: msg.to_string(),
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["v", id] => {
                    b.add_vertex(*id).map_err(|e| err(&e.to_string()))?;
                }
                ["v", id, "inf"] => {
                    b.mark_infinite(*id).map_err(|e| err(&e.to_string()))?;
                }
                ["e", u, v, mult] => {
                    let m: u32 = mult
                        .parse()
                        .map_err(|_| err(&format!("bad multiplicity `{mult}`")))?;
                    if u == v {
                        return Err(err(&format!("loop edge at `{u}` rejected")));
                    }
                    b.add_edges(u, v, m).map_err(|e| err(&e.to_string()))?;
                }
                _ => return Err(err(&format!("unrecognized line `{line}`"))),
            }
        }
        Ok(b.build())
    }
}

/// A walk given by its vertex sequence and the specific parallel edge taken at each step.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Walk {
    pub vertices: Vec<VertexIdx>,
    pub edges: Vec<EdgeIdx>,
}

impl Walk {
    pub fn single(v: VertexIdx) -> Self {
        Walk {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    /// Follows `names`, taking the lowest-`j` parallel edge at every step.
    pub fn through(g: &MultiGraph, names: &[&str]) -> Result<Self> {
        let mut w = Walk::default();
        for (i, n) in names.iter().enumerate() {
            let v = g.require_vertex(n)?;
            if i > 0 {
                let prev = *w.vertices.last().unwrap();
                let e = *g
                    .parallel(prev, v)
                    .first()
                    .ok_or_else(|| Error::Malformed(format!("no edge {} - {}", names[i - 1], n)))?;
                w.edges.push(e);
            }
            w.vertices.push(v);
        }
        Ok(w)
    }

    pub fn is_valid_in(&self, g: &MultiGraph) -> bool {
        if self.vertices.is_empty() || self.edges.len() + 1 != self.vertices.len() {
            return false;
        }
        self.edges.iter().enumerate().all(|(i, &e)| {
            e < g.edge_count() && {
                let ed = g.edge(e);
                let (a, b) = (self.vertices[i], self.vertices[i + 1]);
                (ed.u == a && ed.v == b) || (ed.u == b && ed.v == a)
            }
        })
    }

    pub fn is_path(&self) -> bool {
        let set: BTreeSet<_> = self.vertices.iter().collect();
        set.len() == self.vertices.len()
    }

    pub fn names<'a>(&self, g: &'a MultiGraph) -> Vec<&'a str> {
        self.vertices.iter().map(|&v| g.name(v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_id_text_round_trip() {
        for s in ["a-b-0", "(0,-1)-(0,0)-2", "a:3-b:3-1"] {
            let id: EdgeId = s.parse().unwrap();
            assert_eq!(id.to_string(), s);
        }
        assert!("a-b".parse::<EdgeId>().is_err());
        assert_eq!(split_top("(0,0),(1,0)", ','), vec!["(0,0)", "(1,0)"]);
    }

    #[test]
    fn parallel_edges_from_one_line() {
        let g = MultiGraph::parse("e a b 3").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 3);
        let ids: Vec<String> = (0..3).map(|e| g.edge_id(e).to_string()).collect();
        assert_eq!(ids, ["a-b-0", "a-b-1", "a-b-2"]);
    }

    #[test]
    fn loop_rejected_with_line_number() {
        let err = MultiGraph::parse("# header\ne a a 1").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn k4_source() {
        let src = "e a b 1\ne a c 1\ne a d 1\ne b c 1\ne b d 1\ne c d 1\n";
        let g = MultiGraph::parse(src).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 6));
    }

    #[test]
    fn endpoints_are_canonicalized() {
        let g = MultiGraph::parse("e z a 1\ne a z 1").unwrap();
        assert_eq!(g.edge_id(1).to_string(), "a-z-1");
    }

    #[test]
    fn edge_ids_with_dashes_in_names() {
        let g = MultiGraph::parse("e (0,-1) (0,0) 2").unwrap();
        let e = g.parse_edge_id("(0,-1)-(0,0)-1").unwrap();
        assert_eq!(g.edge_id(e).j, 1);
        assert!(g.parse_edge_id("(0,-1)-(0,0)-2").is_err());
    }

    #[test]
    fn text_round_trip_keeps_flags() {
        let g = MultiGraph::parse("v h inf\nv lone\ne h a 2\ne a b 1").unwrap();
        let again = MultiGraph::parse(&g.to_text()).unwrap();
        assert_eq!(g, again);
        assert!(again.is_declared_infinite(again.vertex("h").unwrap()));
        assert_eq!(g.content_hash(), again.content_hash());
    }

    #[test]
    fn bad_lines_are_reported() {
        assert!(matches!(MultiGraph::parse("e a b x"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(MultiGraph::parse("x a"), Err(Error::Parse { line: 1, .. })));
    }
}
