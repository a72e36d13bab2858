//! One rail up, the other down: no directed path joins the bottom corners in
//! any finite ball, but a path through the ladder's end does.

use std::collections::BTreeSet;

use orientkit::connectivity::arc_lambda;
use orientkit::lazy::{ball, ladder_through_end_orientation, LazyGraph};
use orientkit::topo::{TopoContext, WitnessStep};

fn main() -> orientkit::Result<()> {
    let g = LazyGraph::one_way_ladder();
    let roots = ["a:0", "b:0"];
    let outer = 8;
    let big = ball(&g, &roots, outer + 3)?;
    let o = ladder_through_end_orientation(&big)?;
    let ctx = TopoContext::new(&g, &roots, outer, 2, Some((&big.graph, &o)))?;
    let (a0, b0) = (ctx.vertex("a:0")?, ctx.vertex("b:0")?);

    println!("arc_lambda(a:0, b:0) in the ball: {}", arc_lambda(ctx.graph(), &ctx.orientation().unwrap(), a0, b0)?);
    let r = ctx.reach_report(a0, b0, 3..=7, &BTreeSet::new())?;
    println!("through the end: {} (stable over inner radii 3..=7: {})", r.reachable, r.stable);
    for step in &r.per_inner[0].witness {
        match step {
            WitnessStep::Path { vertices } => println!("  path {}", vertices.join(" ")),
            WitnessStep::End { from, to, .. } => println!("  end  {from} ~> {to}"),
        }
    }
    println!("topological arc-connectivity: {:?}", ctx.topo_lambda(a0, b0, 5, 3)?);
    Ok(())
}
