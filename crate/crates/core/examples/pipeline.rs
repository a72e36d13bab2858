//! Orient growing balls of a ladder, take the stable limit on a window, and
//! check the half bound on topological connectivity.

use orientkit::flimit::{orient_pipeline, PipelineConfig, DEFAULT_MARGIN};
use orientkit::lazy::LazyGraph;
use orientkit::orientation::SearchConfig;
use orientkit::Mode;

fn main() -> orientkit::Result<()> {
    for family in [LazyGraph::one_way_ladder(), LazyGraph::doubled_rail_ladder()] {
        let cfg = PipelineConfig {
            roots: vec!["a:0".into(), "b:0".into()],
            window: 4,
            upto: 10,
            mode: Mode::WellBalanced,
            search: SearchConfig {
                max_edges: 64,
                ..SearchConfig::default()
            },
            margin: DEFAULT_MARGIN,
            check_lookahead: Some(2),
        };
        let r = orient_pipeline(&family, &cfg)?;
        println!("{family}: stabilized {} with {} stable edges", r.stabilized, r.stable_edges);
        if let Some(h) = &r.half_bound {
            println!("  half bound over {} pairs: {} ({} violations)", h.pairs.len(), h.verdict, h.violations);
        }
    }
    Ok(())
}
