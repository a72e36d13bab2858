//! Edge-ends at finite resolution. The binary tree splits into one class per
//! side of a cut; adding a root joined to everything glues all rays into one
//! edge-end even though vertex separators still split it.

use orientkit::ends::{check_embedding, end_classes, vertex_end_count, DEFAULT_LOOKAHEAD};
use orientkit::lazy::LazyGraph;
use orientkit::EdgeId;

fn main() -> orientkit::Result<()> {
    let tree = LazyGraph::binary_tree();
    let cut = [EdgeId::new("t", "t0", 0)?, EdgeId::new("t", "t1", 0)?];
    let a = end_classes(&tree, &["t"], 5, &cut, DEFAULT_LOOKAHEAD)?;
    println!("binary tree minus both root edges: {} escaping classes", a.escaping);

    let g = LazyGraph::cubic_tree_plus_root();
    let cut = [EdgeId::new("r0", "r00", 0)?, EdgeId::new("r", "r00", 0)?];
    let a = end_classes(&g, &["r"], 3, &cut, DEFAULT_LOOKAHEAD)?;
    println!("cubic tree plus root, leaf cut: {} escaping class", a.escaping);
    for d in 1..=4 {
        println!("  depth {d}: {} vertex-end components", vertex_end_count(&g, &["r"], d, DEFAULT_LOOKAHEAD)?);
    }

    let row = check_embedding(&LazyGraph::grid_row(0), &LazyGraph::grid(), &["(0,0)"], 4, 1, DEFAULT_LOOKAHEAD)?;
    println!("double ray in grid: bond-faithful {}, classes kept apart {}", row.bond_faithful, row.injective);
    Ok(())
}
