//! Orient the parts of an edge decomposition separately and glue.

use orientkit::decomposition::{verify_bond_faithful, verify_decomposition, Decomposition, FaithMode};
use orientkit::orientation::{check_k_arc_connected, orient_exact, ExactOutcome, SearchConfig};
use orientkit::{Mode, MultiGraph};

fn main() -> orientkit::Result<()> {
    let g = MultiGraph::from_pairs([("w", "a", 1), ("a", "b", 1), ("b", "w", 1), ("w", "c", 1), ("c", "d", 1), ("d", "w", 1)])?;
    let part = |ids: &[&str]| ids.iter().map(|s| g.parse_edge_id(s)).collect::<orientkit::Result<Vec<_>>>();
    let parts = vec![part(&["a-w-0", "a-b-0", "b-w-0"])?, part(&["c-w-0", "c-d-0", "d-w-0"])?];
    let d = Decomposition::new(g.clone(), parts)?;

    let p = verify_decomposition(&d);
    println!("partition {}, parts connected {}", p.partition, p.all_connected);
    println!("bond-faithful up to 3 edges: {}", verify_bond_faithful(&d, 3, FaithMode::Bond)?.verdict);

    let mut orientations = Vec::new();
    for i in 0..d.parts.len() {
        let (pg, _) = d.part_graph(i);
        let ExactOutcome::Found(o) = orient_exact(&pg, Mode::KArc(1), &SearchConfig::default())? else {
            panic!("a triangle is always strongly orientable");
        };
        orientations.push(o);
    }
    let glued = d.glue(&orientations)?;
    println!("glued orientation strongly connected: {}", check_k_arc_connected(&d.parent, &glued, 1)?);
    Ok(())
}
