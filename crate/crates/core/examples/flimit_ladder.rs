//! Limit of the serpentine paths on a 4-column ladder. Up column a, down b,
//! across, up c, down d; the limit loses the b-c loop through the end.

use orientkit::flimit::{
    build_limit_order, check_path_limit_degrees, extract_topological_path, serpentine, stable_limit, LimitConfig, PathItem, PathSnapshot,
};
use orientkit::lazy::{ball, LazyGraph};

fn main() -> orientkit::Result<()> {
    let g = LazyGraph::k_column_ladder(4);
    let window = ball(&g, &["a:0", "b:0", "c:0", "d:0"], 3)?;
    let paths: Vec<PathSnapshot> = (0..12).map(|n| serpentine(4, n)).collect::<orientkit::Result<_>>()?;
    let seq: Vec<_> = paths.iter().map(PathSnapshot::snapshot).collect();

    let lim = stable_limit(&window, &seq, &LimitConfig::default())?;
    println!("stably in: {} edges; oscillating: {:?}", lim.stably_in_edges().len(), lim.oscillating());
    println!("degree rules hold: {}", check_path_limit_degrees(&lim, "a:0", "d:0").verdict);

    let order = build_limit_order(&lim, &paths, &g, 2)?;
    println!("{} ordered elements, {} gaps", order.elements.len(), order.gaps.len());
    for item in extract_topological_path(&order)?.items {
        match item {
            PathItem::Segment { vertices, .. } => println!("  {}", vertices.join(" ")),
            PathItem::End { representative, .. } => println!("  (end beyond {representative})"),
        }
    }
    Ok(())
}
