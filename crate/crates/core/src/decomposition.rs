//! Edge decompositions of a finite multigraph: partition and connectivity
//! checks, bond-faithfulness, breakpoint segmentation of paths, and gluing
//! per-part orientations back onto the parent.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectivity::{enumerate_bonds, enumerate_cuts, is_bond, lambda, DEFAULT_BOND_BOUND};
use crate::error::{Error, Result};
use crate::graph::{EdgeIdx, MultiGraph, VertexIdx};
use crate::orientation::{Dir, Orientation};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DecompositionJson {
    pub parts: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub parent: MultiGraph,
    pub parts: Vec<Vec<EdgeIdx>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartReport {
    pub index: usize,
    pub edges: usize,
    pub connected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub partition: bool,
    /// Edges claimed by more than one part.
    pub duplicated: Vec<String>,
    /// Parent edges covered by no part.
    pub missing: Vec<String>,
    pub parts: Vec<PartReport>,
    pub all_connected: bool,
}

/// Which parent edge sets must lie inside a single part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaithMode {
    /// Every bond (minimal cut).
    Bond,
    /// Every cut, minimal or not.
    Strict,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub kind: String,
    pub part: Option<usize>,
    pub edges: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BondFaithfulReport {
    pub verdict: bool,
    pub cap: usize,
    pub mode: String,
    pub part_bonds_checked: usize,
    pub parent_sets_checked: usize,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Segment {
    pub from: String,
    pub to: String,
    pub part: usize,
    pub edges: Vec<String>,
    pub part_lambda: usize,
    pub required: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BreakpointReport {
    pub path: Vec<String>,
    pub breakpoints: Vec<String>,
    pub lambda: usize,
    pub segments: Vec<Segment>,
    pub verdict: bool,
}

impl Decomposition {
    pub fn new(parent: MultiGraph, parts: Vec<Vec<EdgeIdx>>) -> Result<Self> {
        for p in &parts {
            if let Some(&e) = p.iter().find(|&&e| e >= parent.edge_count()) {
                return Err(Error::UnknownEdge(format!("#{e}")));
            }
        }
        Ok(Decomposition { parent, parts })
    }

    pub fn from_json(parent: MultiGraph, json: &DecompositionJson) -> Result<Self> {
        let parts = json
            .parts
            .iter()
            .map(|p| p.iter().map(|id| parent.parse_edge_id(id)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(parent, parts)
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            parts: self
                .parts
                .iter()
                .map(|p| p.iter().map(|&e| self.parent.edge_id(e).to_string()).collect())
                .collect(),
        }
    }

    /// The subgraph of part `i` and its edge map back into the parent.
    pub fn part_graph(&self, i: usize) -> (MultiGraph, Vec<EdgeIdx>) {
        self.parent.edge_subgraph(self.parts[i].iter().copied())
    }

    /// Index of the part owning each parent edge (the first one if duplicated).
    pub fn owner(&self) -> Vec<Option<usize>> {
        let mut own = vec![None; self.parent.edge_count()];
        for (i, p) in self.parts.iter().enumerate() {
            for &e in p {
                own[e].get_or_insert(i);
            }
        }
        own
    }

    /// Orients the parent by taking each edge's direction from its part.
    pub fn glue(&self, orientations: &[Orientation]) -> Result<Orientation> {
        if orientations.len() != self.parts.len() {
            return Err(Error::Malformed(format!(
                "{} orientations for {} parts",
                orientations.len(),
                self.parts.len()
            )));
        }
        let mut dirs: Vec<Option<Dir>> = vec![None; self.parent.edge_count()];
        for (i, o) in orientations.iter().enumerate() {
            let (h, map) = self.part_graph(i);
            o.check_total(&h)?;
            for (k, &e) in map.iter().enumerate() {
                if dirs[e].is_some() {
                    return Err(Error::Overlap(self.parent.edge_id(e).to_string()));
                }
                let tail = h.name(o.tail(&h, k));
                let pe = self.parent.edge(e);
                dirs[e] = Some(if tail == self.parent.name(pe.u) { Dir::Forward } else { Dir::Backward });
            }
        }
        let dirs = dirs
            .into_iter()
            .enumerate()
            .map(|(e, d)| d.ok_or_else(|| Error::PartialOrientation(self.parent.edge_id(e).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Orientation::new(&self.parent, dirs)
    }
}

pub fn verify_decomposition(d: &Decomposition) -> PartitionReport {
    let g = &d.parent;
    let mut count = vec![0usize; g.edge_count()];
    for p in &d.parts {
        let mut seen = BTreeSet::new();
        for &e in p {
            if seen.insert(e) {
                count[e] += 1;
            } else {
                count[e] += 2;
            }
        }
    }
    let ids = |pred: &dyn Fn(usize) -> bool| -> Vec<String> {
        (0..g.edge_count()).filter(|&e| pred(count[e])).map(|e| g.edge_id(e).to_string()).collect()
    };
    let duplicated = ids(&|c| c > 1);
    let missing = ids(&|c| c == 0);
    let parts: Vec<PartReport> = (0..d.parts.len())
        .map(|i| {
            let (h, _) = d.part_graph(i);
            PartReport {
                index: i,
                edges: h.edge_count(),
                connected: h.is_connected(),
            }
        })
        .collect();
    PartitionReport {
        partition: duplicated.is_empty() && missing.is_empty(),
        all_connected: parts.iter().all(|p| p.connected),
        duplicated,
        missing,
        parts,
    }
}

/// Checks, up to size `cap`, that (a) every bond of every part is a bond of
/// the parent and (b) every parent bond (every parent cut in strict mode)
/// lies inside a single part.
pub fn verify_bond_faithful(d: &Decomposition, cap: usize, mode: FaithMode) -> Result<BondFaithfulReport> {
    if cap > DEFAULT_BOND_BOUND {
        return Err(Error::CapExceeded(format!("bond size cap {cap} exceeds {DEFAULT_BOND_BOUND}")));
    }
    let g = &d.parent;
    let name_set = |s: &BTreeSet<EdgeIdx>| s.iter().map(|&e| g.edge_id(e).to_string()).collect::<Vec<_>>();
    let per_part: Vec<(usize, Vec<Violation>)> = (0..d.parts.len())
        .into_par_iter()
        .map(|i| -> Result<(usize, Vec<Violation>)> {
            let (h, map) = d.part_graph(i);
            let bonds = enumerate_bonds(&h, cap, DEFAULT_BOND_BOUND)?;
            let mut bad = Vec::new();
            for b in &bonds {
                let image: BTreeSet<EdgeIdx> = b.edges.iter().map(|&k| map[k]).collect();
                if !is_bond(g, &image) {
                    bad.push(Violation {
                        kind: "part bond is not a parent bond".into(),
                        part: Some(i),
                        edges: name_set(&image),
                    });
                }
            }
            Ok((bonds.len(), bad))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut violations = Vec::new();
    let mut part_bonds_checked = 0;
    for (n, v) in per_part {
        part_bonds_checked += n;
        violations.extend(v);
    }
    let parent_sets: Vec<BTreeSet<EdgeIdx>> = match mode {
        FaithMode::Bond => enumerate_bonds(g, cap, DEFAULT_BOND_BOUND)?.into_iter().map(|c| c.edges).collect(),
        FaithMode::Strict => enumerate_cuts(g, cap)?,
    };
    let owner = d.owner();
    for s in &parent_sets {
        let owners: BTreeSet<Option<usize>> = s.iter().map(|&e| owner[e]).collect();
        if owners.len() != 1 || owners.contains(&None) {
            violations.push(Violation {
                kind: match mode {
                    FaithMode::Bond => "parent bond spans several parts".into(),
                    FaithMode::Strict => "parent cut spans several parts".into(),
                },
                part: None,
                edges: name_set(s),
            });
        }
    }
    Ok(BondFaithfulReport {
        verdict: violations.is_empty(),
        cap,
        mode: match mode {
            FaithMode::Bond => "bond".into(),
            FaithMode::Strict => "strict".into(),
        },
        part_bonds_checked,
        parent_sets_checked: parent_sets.len(),
        violations,
    })
}

/// Shortest `x`–`y` path, lowest edge index first on ties.
fn shortest_path(g: &MultiGraph, x: VertexIdx, y: VertexIdx) -> Option<(Vec<VertexIdx>, Vec<EdgeIdx>)> {
    let mut pred: Vec<Option<(VertexIdx, EdgeIdx)>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[x] = true;
    let mut q = VecDeque::from([x]);
    while let Some(v) = q.pop_front() {
        for &e in g.incident(v) {
            let w = g.edge(e).other(v);
            if !seen[w] {
                seen[w] = true;
                pred[w] = Some((v, e));
                q.push_back(w);
            }
        }
    }
    if !seen[y] {
        return None;
    }
    let (mut vs, mut es) = (vec![y], Vec::new());
    let mut cur = y;
    while let Some((p, e)) = pred[cur] {
        vs.push(p);
        es.push(e);
        cur = p;
    }
    vs.reverse();
    es.reverse();
    Some((vs, es))
}

/// Splits a shortest `x`–`y` path into maximal runs inside one part and checks
/// `λ_part(x_m, x_{m+1}) ≥ min(λ(x, y), cap)` for every run.
pub fn breakpoints(d: &Decomposition, x: VertexIdx, y: VertexIdx, cap: Option<usize>) -> Result<BreakpointReport> {
    let g = &d.parent;
    let lam = lambda(g, x, y)?;
    let (vs, es) = shortest_path(g, x, y).ok_or(Error::Disconnected)?;
    let owner = d.owner();
    let required = cap.map_or(lam, |c| lam.min(c));
    let mut segments = Vec::new();
    let mut start = 0;
    for k in 1..=es.len() {
        if k == es.len() || owner[es[k]] != owner[es[start]] {
            let part = owner[es[start]].ok_or_else(|| Error::UnknownEdge(g.edge_id(es[start]).to_string()))?;
            let (h, _) = d.part_graph(part);
            let (a, b) = (g.name(vs[start]), g.name(vs[k]));
            let pl = lambda(&h, h.require_vertex(a)?, h.require_vertex(b)?)?;
            segments.push(Segment {
                from: a.to_string(),
                to: b.to_string(),
                part,
                edges: es[start..k].iter().map(|&e| g.edge_id(e).to_string()).collect(),
                part_lambda: pl,
                required,
            });
            start = k;
        }
    }
    let mut bps: Vec<String> = segments.iter().map(|s| s.from.clone()).collect();
    bps.push(g.name(y).to_string());
    Ok(BreakpointReport {
        path: vs.iter().map(|&v| g.name(v).to_string()).collect(),
        breakpoints: bps,
        lambda: lam,
        verdict: segments.iter().all(|s| s.part_lambda >= s.required),
        segments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::check_k_arc_connected;

    fn figure_eight() -> Decomposition {
        let g = MultiGraph::from_pairs([("w", "a", 1), ("a", "b", 1), ("b", "w", 1), ("w", "c", 1), ("c", "d", 1), ("d", "w", 1)]).unwrap();
        let ids = |names: [&str; 3]| names.iter().map(|s| g.parse_edge_id(s).unwrap()).collect::<Vec<_>>();
        let parts = vec![ids(["a-w-0", "a-b-0", "b-w-0"]), ids(["c-w-0", "c-d-0", "d-w-0"])];
        Decomposition::new(g, parts).unwrap()
    }

    fn k4_split() -> Decomposition {
        let g = MultiGraph::from_pairs([("a", "b", 1), ("a", "c", 1), ("a", "d", 1), ("b", "c", 1), ("b", "d", 1), ("c", "d", 1)]).unwrap();
        let ids = |names: &[&str]| names.iter().map(|s| g.parse_edge_id(s).unwrap()).collect::<Vec<_>>();
        let parts = vec![ids(&["a-b-0", "b-c-0", "c-d-0", "a-d-0"]), ids(&["a-c-0", "b-d-0"])];
        Decomposition::new(g, parts).unwrap()
    }

    #[test]
    fn partition_reports() {
        let r = verify_decomposition(&k4_split());
        assert!(r.partition);
        assert!(r.parts[0].connected && !r.parts[1].connected);
        let r = verify_decomposition(&figure_eight());
        assert!(r.partition && r.all_connected);
        let mut d = figure_eight();
        let e = d.parts[0][0];
        d.parts[1].push(e);
        let r = verify_decomposition(&d);
        assert!(!r.partition);
        assert_eq!(r.duplicated, vec![d.parent.edge_id(e).to_string()]);
    }

    #[test]
    fn bond_faithfulness() {
        let r = verify_bond_faithful(&figure_eight(), 3, FaithMode::Bond).unwrap();
        assert!(r.verdict, "{:?}", r.violations);
        let r = verify_bond_faithful(&k4_split(), 2, FaithMode::Bond).unwrap();
        assert!(!r.verdict);
        // 2-edge bonds of the 4-cycle, and each matching edge is a bridge of its part
        let sizes: Vec<(Option<usize>, usize)> = r.violations.iter().map(|v| (v.part, v.edges.len())).collect();
        assert!(sizes.contains(&(Some(0), 2)) && sizes.contains(&(Some(1), 1)));
        assert!(sizes.iter().all(|&(p, n)| (p == Some(0) && n == 2) || (p == Some(1) && n == 1)));
        let single = Decomposition::new(figure_eight().parent, vec![(0..6).collect()]).unwrap();
        assert!(verify_bond_faithful(&single, 3, FaithMode::Bond).unwrap().verdict);
        assert!(verify_bond_faithful(&single, 7, FaithMode::Bond).is_err());
    }

    #[test]
    fn strict_reading_rejects_star_cut() {
        let d = figure_eight();
        assert!(verify_bond_faithful(&d, 3, FaithMode::Strict).unwrap().verdict);
        let r = verify_bond_faithful(&d, 4, FaithMode::Strict).unwrap();
        assert!(!r.verdict);
        assert!(verify_bond_faithful(&d, 4, FaithMode::Bond).unwrap().verdict);
    }

    #[test]
    fn monotone_in_cap() {
        for d in [figure_eight(), k4_split()] {
            let verdicts: Vec<bool> = (1..=5).map(|c| verify_bond_faithful(&d, c, FaithMode::Bond).unwrap().verdict).collect();
            for w in verdicts.windows(2) {
                assert!(w[0] || !w[1]);
            }
        }
    }

    #[test]
    fn breakpoints_cross_parts() {
        let d = figure_eight();
        let g = &d.parent;
        let r = breakpoints(&d, g.vertex("a").unwrap(), g.vertex("c").unwrap(), None).unwrap();
        assert_eq!(r.breakpoints, vec!["a", "w", "c"]);
        assert_eq!(r.lambda, 2);
        assert!(r.verdict);
        assert_eq!(r.segments[0].part_lambda, 2);
        let r = breakpoints(&d, g.vertex("a").unwrap(), g.vertex("b").unwrap(), None).unwrap();
        assert_eq!(r.segments.len(), 1);
    }

    #[test]
    fn chain_of_triangles() {
        let g = MultiGraph::from_pairs([
            ("x", "a", 1), ("a", "p", 1), ("p", "x", 1),
            ("p", "b", 1), ("b", "q", 1), ("q", "p", 1),
            ("q", "c", 1), ("c", "y", 1), ("y", "q", 1),
        ])
        .unwrap();
        let tri = |v: [&str; 3]| -> Vec<EdgeIdx> {
            (0..g.edge_count())
                .filter(|&e| {
                    let ed = g.edge(e);
                    v.contains(&g.name(ed.u)) && v.contains(&g.name(ed.v))
                })
                .collect()
        };
        let parts = vec![tri(["x", "a", "p"]), tri(["p", "b", "q"]), tri(["q", "c", "y"])];
        let d = Decomposition::new(g.clone(), parts).unwrap();
        let r = breakpoints(&d, g.vertex("x").unwrap(), g.vertex("y").unwrap(), None).unwrap();
        assert_eq!(r.breakpoints, vec!["x", "p", "q", "y"]);
        assert!(r.verdict);
    }

    #[test]
    fn glue_two_directed_triangles() {
        let d = figure_eight();
        let orients: Vec<Orientation> = (0..2)
            .map(|i| {
                let (h, _) = d.part_graph(i);
                let names: Vec<&str> = h.names().iter().map(String::as_str).collect();
                let cyc = [(names[0], names[1]), (names[1], names[2]), (names[2], names[0])];
                Orientation::from_arcs(&h, &cyc).unwrap()
            })
            .collect();
        let o = d.glue(&orients).unwrap();
        assert!(check_k_arc_connected(&d.parent, &o, 1).unwrap());
        assert!(d.glue(&orients[..1]).is_err());
    }

    #[test]
    fn glue_keeps_parallel_edges_apart() {
        let g = MultiGraph::from_pairs([("a", "b", 2), ("b", "c", 2), ("a", "c", 2)]).unwrap();
        let pick = |j: u32| (0..g.edge_count()).filter(|&e| g.edge(e).j == j).collect::<Vec<_>>();
        let d = Decomposition::new(g.clone(), vec![pick(0), pick(1)]).unwrap();
        let forward = |h: &MultiGraph| Orientation::from_arcs(h, &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        let backward = |h: &MultiGraph| Orientation::from_arcs(h, &[("b", "a"), ("c", "b"), ("a", "c")]).unwrap();
        let o = d.glue(&[forward(&d.part_graph(0).0), backward(&d.part_graph(1).0)]).unwrap();
        assert!(check_k_arc_connected(&g, &o, 2).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let d = figure_eight();
        let j = d.to_json();
        let back = Decomposition::from_json(d.parent.clone(), &j).unwrap();
        assert_eq!(back.parts, d.parts);
    }
}
