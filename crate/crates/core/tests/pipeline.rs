use proptest::prelude::*;
use triwalk::graph::{gen_complete, gen_double_cone, parse_edge_list};
use triwalk::spectral::eigen::{eig_symmetric, kernel};
use triwalk::spectral::eigenspaces::birth_basis;
use triwalk::spectral::{half_kernel_dim, verify_mapping};
use triwalk::triangulation::{find_partition, parse_partition, validate_partition};
use triwalk::{Graph, OperatorSet, Tolerances, TrianglePartition};

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::new(
        g.n_vertices(),
        g.edges().iter().map(|&(u, v)| (perm[u], perm[v])),
    )
    .unwrap()
}

fn base_graph(which: usize, n: usize) -> Graph {
    match which {
        0 => gen_complete(4).unwrap(),
        1 => gen_complete(7).unwrap(),
        _ => gen_double_cone(n).unwrap(),
    }
}

fn shuffled(len: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..len).collect::<Vec<_>>()).prop_shuffle()
}

fn case() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    (0usize..3, 3usize..9).prop_flat_map(|(which, n)| {
        let g = base_graph(which, n);
        let len = g.n_vertices();
        (Just(g), shuffled(len))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabelled_graphs_keep_their_spectral_invariants((g, perm) in case()) {
        let tols = Tolerances::default();
        let h = relabel(&g, &perm);
        let pi = find_partition(&h, None).unwrap();
        prop_assert!(validate_partition(&h, pi.triangles()).is_valid());

        let report = verify_mapping(&h, &pi, &tols).unwrap();
        prop_assert!(report.matched, "max pairing error {}", report.max_pairing_error);
        prop_assert_eq!(report.totals, (h.n_arcs(), h.n_arcs()));

        let t_g = eig_symmetric(&OperatorSet::build(&g, &find_partition(&g, None).unwrap()).unwrap().t, 1e-12).unwrap();
        let ops = OperatorSet::build(&h, &pi).unwrap();
        let t_h = eig_symmetric(&ops.t, 1e-12).unwrap();
        for (a, b) in t_g.values.iter().zip(&t_h.values) {
            prop_assert!((a - b).abs() <= 1e-10);
        }
        prop_assert!(t_h.values[0] >= -0.5 - 1e-10);

        let b = half_kernel_dim(&ops.t, &tols);
        let ker_r = kernel(&ops.r.map(|x| x as f64), tols.rank_tol).ncols();
        prop_assert_eq!(ker_r + h.n_vertices(), pi.len() + b);
        prop_assert_eq!(birth_basis(&ops, 0, &tols).unwrap().dim(), ker_r);
        let expect = (h.n_arcs() + 2 - 2 * h.n_vertices() - pi.len()) / 2;
        prop_assert_eq!(birth_basis(&ops, 1, &tols).unwrap().dim(), expect);
        prop_assert_eq!(birth_basis(&ops, 2, &tols).unwrap().dim(), expect);
    }

    #[test]
    fn text_formats_round_trip((g, perm) in case()) {
        let h = relabel(&g, &perm);
        let back = parse_edge_list(&h.to_edge_list()).unwrap();
        prop_assert_eq!(back.edges(), h.edges());
        let pi = find_partition(&h, None).unwrap();
        let tris = parse_partition(&pi.to_text()).unwrap();
        let again = TrianglePartition::new(&h, tris).unwrap();
        prop_assert_eq!(again.tau(), pi.tau());
    }
}

#[test]
fn user_partition_overrides_search() {
    // the reversed orientation of every K4 triangle is also a partition
    let g = gen_complete(4).unwrap();
    let found = find_partition(&g, None).unwrap();
    let reversed: Vec<_> = found
        .triangles()
        .iter()
        .map(|t| {
            let [u, v, w] = t.vertices();
            triwalk::DirectedTriangle::from_vertices(u, w, v)
        })
        .collect();
    let pi = TrianglePartition::new(&g, reversed).unwrap();
    assert_ne!(pi.tau(), found.tau());
    let report = verify_mapping(&g, &pi, &Tolerances::default()).unwrap();
    assert!(report.matched);
}
