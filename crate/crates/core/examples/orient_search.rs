//! Exact orientation search: a well-balanced orientation of K4 with a doubled
//! edge, a 2-arc-connected orientation of a 4-edge-connected graph, and the
//! certificate returned when no orientation exists.

use orientkit::orientation::{check_k_arc_connected, check_well_balanced, orient_exact, ExactOutcome, SearchConfig};
use orientkit::{Mode, MultiGraph};

fn show(name: &str, g: &MultiGraph, mode: Mode) -> orientkit::Result<()> {
    match orient_exact(g, mode, &SearchConfig::default())? {
        ExactOutcome::Found(o) => {
            let arcs: Vec<String> = (0..g.edge_count()).map(|e| format!("{}->{}", g.name(o.tail(g, e)), g.name(o.head(g, e)))).collect();
            println!("{name} [{mode}]: {}", arcs.join(" "));
            match mode {
                Mode::WellBalanced => println!("  well-balanced: {}", check_well_balanced(g, &o)?.verdict),
                Mode::KArc(k) => println!("  {k}-arc-connected: {}", check_k_arc_connected(g, &o, k)?),
            }
        }
        ExactOutcome::Unsat(c) => {
            let r = c.report(g);
            println!("{name} [{mode}]: none; {} -> {} blocked by {:?}", r.source, r.target, r.cut.edges);
        }
        ExactOutcome::Budget { nodes } => println!("{name} [{mode}]: gave up after {nodes} nodes"),
    }
    Ok(())
}

fn main() -> orientkit::Result<()> {
    let k4 = MultiGraph::from_pairs([("a", "b", 2), ("a", "c", 1), ("a", "d", 1), ("b", "c", 1), ("b", "d", 1), ("c", "d", 1)])?;
    show("K4+", &k4, Mode::WellBalanced)?;

    let doubled_cycle = MultiGraph::from_pairs([("p", "q", 2), ("q", "r", 2), ("r", "s", 2), ("s", "p", 2)])?;
    show("doubled 4-cycle", &doubled_cycle, Mode::KArc(2))?;

    let bridge = MultiGraph::from_pairs([("a", "b", 1), ("b", "c", 1), ("c", "a", 1), ("c", "x", 1)])?;
    show("triangle with pendant", &bridge, Mode::KArc(1))?;
    Ok(())
}
