//! Local edge-connectivity with a witness cut, and the same pair under an orientation.
//!
//! Run with `cargo run --example lambda_oracle`.

use orientkit::connectivity::{arc_lambda, edge_disjoint_paths, min_cut, LambdaTable};
use orientkit::{MultiGraph, Orientation};

fn main() -> orientkit::Result<()> {
    // two triangles sharing `w`, one of them with a doubled edge
    let g = MultiGraph::from_pairs([("w", "a", 2), ("a", "b", 1), ("b", "w", 1), ("w", "c", 1), ("c", "d", 1), ("d", "w", 1)])?;
    let (a, c) = (g.require_vertex("a")?, g.require_vertex("c")?);

    let cut = min_cut(&g, a, c)?;
    println!("lambda(a, c) = {}", cut.len());
    println!("witness cut: {:?}", cut.report(&g).edges);
    for p in edge_disjoint_paths(&g, a, c)? {
        println!("  path {}", p.names(&g).join(" "));
    }

    let table = LambdaTable::new(&g);
    for x in g.vertices() {
        let row: Vec<String> = g.vertices().map(|y| if x == y { "-".into() } else { table.get(x, y).to_string() }).collect();
        println!("{:>2} {}", g.name(x), row.join(" "));
    }

    let o = Orientation::from_arcs(&g, &[("a", "w"), ("w", "a"), ("a", "b"), ("b", "w"), ("w", "c"), ("c", "d"), ("d", "w")])?;
    println!("arc_lambda(a, c) = {}, arc_lambda(c, a) = {}", arc_lambda(&g, &o, a, c)?, arc_lambda(&g, &o, c, a)?);
    Ok(())
}
