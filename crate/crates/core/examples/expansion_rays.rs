//! Replacing a hub by a ray: k-ray mode keeps 2k-edge-connectivity, expanding
//! mode keeps each local connectivity at the witness pair.

use orientkit::connectivity::{edge_connectivity, lambda};
use orientkit::expansion::{expand, ExpandConfig, ExpansionMode};
use orientkit::MultiGraph;

fn main() -> orientkit::Result<()> {
    // 4-edge-connected: a doubled triangle plus a doubled pendant cycle through h
    let g = MultiGraph::from_pairs([("h", "a", 2), ("a", "b", 2), ("b", "h", 2), ("h", "c", 2), ("c", "a", 2)])?;
    println!("origin: {} edges, edge-connectivity {}", g.edge_count(), edge_connectivity(&g));

    let x = expand(&g, &["h"], ExpansionMode::KRay(4), &ExpandConfig::default())?;
    println!("kray:4 -> {} vertices, edge-connectivity {}", x.graph.vertex_count(), edge_connectivity(&x.graph));

    let h = g.require_vertex("h")?;
    let cfg = ExpandConfig {
        ray_len: Some(g.degree(h) + 1),
        ..ExpandConfig::default()
    };
    let x = expand(&g, &["h"], ExpansionMode::Expanding, &cfg)?;
    for v in g.vertices().filter(|&v| v != h) {
        let (hu, vu) = x.connectivity_witness_pair(h, v)?;
        println!(
            "lambda(h, {}) = {}; at ({}, {}) in the expansion: {}",
            g.name(v),
            lambda(&g, h, v)?,
            x.graph.name(hu),
            x.graph.name(vu),
            lambda(&x.graph, hu, vu)?
        );
    }
    Ok(())
}
