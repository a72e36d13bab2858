use std::collections::BTreeSet;

use orientkit::connectivity::{arc_lambda, lambda, min_cut};
use orientkit::orientation::{check_well_balanced, orient_eulerian, Dir, Orientation};
use orientkit::MultiGraph;
use proptest::prelude::*;

fn multigraph() -> impl Strategy<Value = MultiGraph> {
    (2usize..6).prop_flat_map(|n| {
        prop::collection::vec((0..n, 1..n), 0..10).prop_map(move |pairs| {
            let mut b = MultiGraph::builder();
            for i in 0..n {
                b.add_vertex(format!("v{i}")).unwrap();
            }
            for (x, d) in pairs {
                b.add_edge(&format!("v{x}"), &format!("v{}", (x + d) % n)).unwrap();
            }
            b.build()
        })
    })
}

proptest! {
    #[test]
    fn lambda_is_symmetric_and_bounded(g in multigraph()) {
        for x in g.vertices() {
            for y in g.vertices().filter(|&y| y != x) {
                let l = lambda(&g, x, y).unwrap();
                prop_assert_eq!(l, lambda(&g, y, x).unwrap());
                prop_assert!(l <= g.degree(x).min(g.degree(y)));
            }
        }
    }

    #[test]
    fn min_cut_separates(g in multigraph()) {
        let (x, y) = (0, g.vertex_count() - 1);
        let cut = min_cut(&g, x, y).unwrap();
        prop_assert_eq!(cut.len(), lambda(&g, x, y).unwrap());
        let removed: BTreeSet<usize> = cut.edges.iter().copied().collect();
        let (_, label) = g.components_without(&removed);
        prop_assert_ne!(label[x], label[y]);
    }

    #[test]
    fn arc_lambda_never_exceeds_lambda(g in multigraph(), bits in prop::collection::vec(any::<bool>(), 10)) {
        let dirs = (0..g.edge_count()).map(|e| if bits[e] { Dir::Forward } else { Dir::Backward }).collect();
        let o = Orientation::new(&g, dirs).unwrap();
        for x in g.vertices() {
            for y in g.vertices().filter(|&y| y != x) {
                prop_assert!(arc_lambda(&g, &o, x, y).unwrap() <= lambda(&g, x, y).unwrap());
            }
        }
    }

    #[test]
    fn text_round_trip(g in multigraph()) {
        let back = MultiGraph::parse(&g.to_text()).unwrap();
        prop_assert_eq!(back.content_hash(), g.content_hash());
    }

    #[test]
    fn doubled_graphs_orient_eulerian_and_balanced(g in multigraph()) {
        // doubling every edge makes all degrees even
        let mut b = MultiGraph::builder();
        for v in g.names() {
            b.add_vertex(v.as_str()).unwrap();
        }
        for e in g.edges() {
            b.add_edges(g.name(e.u), g.name(e.v), 2).unwrap();
        }
        let d = b.build();
        if d.is_connected() {
            let o = orient_eulerian(&d).unwrap();
            for v in d.vertices() {
                prop_assert_eq!(o.in_degree(&d, v), o.out_degree(&d, v));
            }
            prop_assert!(check_well_balanced(&d, &o).unwrap().verdict);
        }
    }
}
