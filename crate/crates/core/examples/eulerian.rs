//! Eulerian orientations balance every vertex, and are therefore well-balanced.

use orientkit::orientation::{check_well_balanced, orient_eulerian};
use orientkit::MultiGraph;

fn main() -> orientkit::Result<()> {
    // two triangles through c, and a tripled edge a-b
    let g = MultiGraph::from_pairs([("a", "b", 3), ("b", "c", 1), ("c", "a", 1), ("c", "d", 1), ("d", "e", 1), ("e", "c", 1)])?;
    let o = orient_eulerian(&g)?;
    for v in g.vertices() {
        println!("{}: in {} out {}", g.name(v), o.in_degree(&g, v), o.out_degree(&g, v));
    }
    let r = check_well_balanced(&g, &o)?;
    let tight = r.pairs.iter().filter(|p| p.arc_lambda == p.demand).count();
    println!("well-balanced: {} ({} of {} ordered pairs are tight)", r.verdict, tight, r.pairs.len());

    let odd = MultiGraph::from_pairs([("a", "b", 1), ("b", "c", 1)])?;
    println!("path a-b-c: {}", orient_eulerian(&odd).unwrap_err());
    Ok(())
}
