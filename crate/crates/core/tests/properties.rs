use atlab::atsolver::{bounded_outdegree_orientation, degeneracy_orientation};
use atlab::density::{max_density, max_density_bruteforce};
use atlab::eulerian::{eulerian_diff_poly, eulerian_tally_enumerate, magnitude};
use atlab::graph::{cartesian_product, corona};
use atlab::{Budget, Graph, Orientation};
use proptest::prelude::*;

/// A simple graph on `2..=max_n` vertices, each pair present with probability 1/2.
fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&p, _)| p)
                .collect();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn oriented(max_n: usize) -> impl Strategy<Value = Orientation> {
    graph(max_n).prop_flat_map(|g| {
        let m = g.edge_count();
        proptest::collection::vec(any::<bool>(), m)
            .prop_map(move |fwd| Orientation::from_forward(g.clone(), &fwd).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn engines_agree(d in oriented(7)) {
        let b = Budget::default();
        let tally = eulerian_tally_enumerate(&d, &b).unwrap();
        prop_assert_eq!(eulerian_diff_poly(&d, &b).unwrap(), tally.diff);
        // the empty subdigraph is always even
        prop_assert!(tally.even >= 1);
    }

    #[test]
    fn reversal_keeps_magnitude(d in oriented(7)) {
        let b = Budget::default();
        let a = eulerian_tally_enumerate(&d, &b).unwrap().diff;
        let r = eulerian_tally_enumerate(&d.reversed(), &b).unwrap().diff;
        prop_assert_eq!(magnitude(&a), magnitude(&r));
    }

    #[test]
    fn bipartite_diff_is_positive(d in oriented(7)) {
        prop_assume!(d.graph().is_bipartite());
        let t = eulerian_tally_enumerate(&d, &Budget::default()).unwrap();
        prop_assert_eq!(t.odd, 0);
    }

    #[test]
    fn density_matches_bruteforce(g in graph(9)) {
        let fast = max_density(&g).unwrap();
        let slow = max_density_bruteforce(&g).unwrap();
        prop_assert_eq!(fast.density, slow.density);
        prop_assert!(fast.is_valid_for(&g));
    }

    #[test]
    fn density_is_monotone_under_deletion(g in graph(8), drop in any::<prop::sample::Index>()) {
        prop_assume!(g.edge_count() > 0);
        let skip = drop.index(g.edge_count());
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &e)| e)
            .collect();
        let h = Graph::from_edges(g.vertex_count(), edges).unwrap();
        prop_assert!(max_density(&h).unwrap().density <= max_density(&g).unwrap().density);
    }

    #[test]
    fn bounded_orientation_iff_cap_meets_ceiling(g in graph(9), slack in 0usize..3) {
        let ceil = max_density(&g).unwrap().ceiling();
        if ceil > 0 {
            prop_assert!(bounded_outdegree_orientation(g.clone(), ceil - 1).is_none());
        }
        let cap = ceil + slack;
        let o = bounded_outdegree_orientation(g.clone(), cap).expect("cap at the ceiling");
        prop_assert!(o.max_outdegree() <= cap);
        prop_assert_eq!(o.arcs().len(), g.edge_count());
    }

    #[test]
    fn degeneracy_orientation_meets_degeneracy(g in graph(9)) {
        let (_, k) = g.degeneracy_order();
        prop_assert!(degeneracy_orientation(g.clone()).max_outdegree() <= k);
    }

    #[test]
    fn product_counts(g in graph(5), h in graph(5)) {
        let p = cartesian_product(&g, &h).unwrap();
        let (n1, m1, n2, m2) = (g.vertex_count(), g.edge_count(), h.vertex_count(), h.edge_count());
        prop_assert_eq!(p.vertex_count(), n1 * n2);
        prop_assert_eq!(p.edge_count(), n1 * m2 + m1 * n2);
        prop_assert_eq!(p.is_bipartite(), g.is_bipartite() && h.is_bipartite());
    }

    #[test]
    fn corona_counts(g in graph(5), h in graph(5)) {
        let c = corona(&g, &h).unwrap();
        let (n1, m1, n2, m2) = (g.vertex_count(), g.edge_count(), h.vertex_count(), h.edge_count());
        prop_assert_eq!(c.vertex_count(), n1 * (1 + n2));
        prop_assert_eq!(c.edge_count(), m1 + n1 * (m2 + n2));
    }
}
