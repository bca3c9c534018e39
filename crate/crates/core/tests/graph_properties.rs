use std::collections::BTreeSet;

use proptest::prelude::*;
use rtgraph::coloring::{dsatur, greedy_clique};
use rtgraph::formula::structure_expr;
use rtgraph::verify::{verify_structure_theorem, Status, VerifyOptions};
use rtgraph::{
    build_distance_graph, chromatic_number, find_isomorphism, is_isomorphism, DistanceSet, Graph, GraphExpr,
    Limits, SpaceSpec,
};

fn edge_set(g: &Graph) -> BTreeSet<(usize, usize)> {
    g.edges().collect()
}

#[test]
fn edge_sets_split_along_distance_sets() {
    for space in ["zq:q=2,n=4", "zq:q=3,n=3", "sn:n=4", "product:sizes=2,3,2"] {
        let space: SpaceSpec = space.parse().unwrap();
        let values = space.distance_values();
        let full = DistanceSet::new(values.clone()).unwrap();
        let combined = edge_set(&build_distance_graph(&space, &full, &Limits::default()).unwrap());
        for mask in 0u32..(1 << values.len()) {
            let (left, right): (Vec<(usize, usize)>, Vec<_>) =
                values.iter().copied().enumerate().partition(|(i, _)| mask & (1 << i) != 0);
            let left = left.into_iter().map(|(_, d)| d).collect();
            let right = right.into_iter().map(|(_, d)| d).collect();
            let a = edge_set(&build(&space, left));
            let b = edge_set(&build(&space, right));
            assert!(a.is_disjoint(&b));
            let union: BTreeSet<_> = a.union(&b).copied().collect();
            assert_eq!(union, combined);
        }
    }
}

fn build(space: &SpaceSpec, d: Vec<usize>) -> Graph {
    build_distance_graph(space, &DistanceSet::new(d).unwrap(), &Limits::default()).unwrap()
}

#[test]
fn product_degree_and_components_follow_position_sizes() {
    for sizes in [vec![2, 3], vec![3, 2], vec![2, 3, 2], vec![2, 2, 3, 2], vec![4, 2, 3]] {
        let space = SpaceSpec::product(sizes.clone()).unwrap();
        for d in DistanceSet::all_nonempty_for(&space) {
            let g = build_distance_graph(&space, &d, &Limits::default()).unwrap();
            let degree: usize = d
                .values()
                .iter()
                .map(|&di| (sizes[di - 1] as usize - 1) * sizes[..di - 1].iter().map(|&s| s as usize).product::<usize>())
                .sum();
            assert_eq!(g.is_regular(), Some(degree));
            let top = d.largest().unwrap();
            let count: usize = sizes[top..].iter().map(|&s| s as usize).product();
            assert_eq!(g.connected_components().component_count(), count);
        }
    }
}

#[test]
fn expression_chromatic_number_matches_exact_solver() {
    let limits = Limits::default();
    for space in ["zq:q=2,n=4", "zq:q=3,n=3", "sn:n=4", "product:sizes=2,3,2"] {
        let space: SpaceSpec = space.parse().unwrap();
        for d in DistanceSet::all_nonempty_for(&space) {
            let expr = structure_expr(&space, &d).unwrap();
            let evaluated = expr.evaluate(limits.max_points, limits.max_edges).unwrap();
            let exact = chromatic_number(&evaluated, &limits).unwrap().exact().unwrap();
            assert_eq!(num_bigint::BigUint::from(exact), expr.chromatic_number(), "{space} {d}");
        }
    }
}

/// Tries every bijection.
fn brute_force_isomorphic(g: &Graph, h: &Graph) -> bool {
    fn extend(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let v = map.len();
        if v == g.vertex_count() {
            return g.edge_count() == h.edge_count() && g.edges().all(|(a, b)| h.has_edge(map[a], map[b]));
        }
        for w in 0..h.vertex_count() {
            if used[w] || (0..v).any(|u| g.has_edge(u, v) != h.has_edge(map[u], w)) {
                continue;
            }
            used[w] = true;
            map.push(w);
            if extend(g, h, map, used) {
                return true;
            }
            map.pop();
            used[w] = false;
        }
        false
    }
    g.vertex_count() == h.vertex_count() && extend(g, h, &mut Vec::new(), &mut vec![false; h.vertex_count()])
}

/// Smallest k admitting a proper k-coloring, by exhaustive search.
fn brute_force_chromatic(g: &Graph) -> usize {
    fn colorable(g: &Graph, k: usize, colors: &mut Vec<usize>) -> bool {
        let v = colors.len();
        if v == g.vertex_count() {
            return true;
        }
        for c in 0..k {
            if g.neighbors(v).iter().any(|&w| (w as usize) < v && colors[w as usize] == c) {
                continue;
            }
            colors.push(c);
            if colorable(g, k, colors) {
                return true;
            }
            colors.pop();
        }
        false
    }
    (0..=g.vertex_count()).find(|&k| colorable(g, k, &mut Vec::new())).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        prop::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges: Vec<_> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.vertex_count(), &edges).unwrap()
}

fn arb_relabelled_pair(max_n: usize) -> impl Strategy<Value = (Graph, Graph)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |perm| (g.clone(), relabel(&g, &perm)))
    })
}

fn arb_product_instance() -> impl Strategy<Value = (SpaceSpec, DistanceSet)> {
    prop::collection::vec(2u32..=4, 1..=4).prop_flat_map(|sizes| {
        let n = sizes.len();
        (Just(sizes), 1u32..(1 << n)).prop_map(move |(sizes, mask)| {
            let d: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            (SpaceSpec::product(sizes).unwrap(), DistanceSet::new(d).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn isomorphism_finds_relabellings((g, h) in arb_relabelled_pair(12)) {
        let limits = Limits::default();
        let forward = find_isomorphism(&g, &h, &limits).unwrap();
        let backward = find_isomorphism(&h, &g, &limits).unwrap();
        prop_assert!(forward.as_ref().is_some_and(|m| is_isomorphism(&g, &h, m)));
        prop_assert!(backward.as_ref().is_some_and(|m| is_isomorphism(&h, &g, m)));
        let itself = find_isomorphism(&g, &g, &limits).unwrap();
        prop_assert!(itself.is_some_and(|m| is_isomorphism(&g, &g, &m)));
    }

    #[test]
    fn isomorphism_agrees_with_brute_force(g in arb_graph(6), h in arb_graph(6)) {
        let limits = Limits::default();
        let found = find_isomorphism(&g, &h, &limits).unwrap();
        prop_assert_eq!(found.is_some(), brute_force_isomorphic(&g, &h));
        prop_assert_eq!(found.is_some(), find_isomorphism(&h, &g, &limits).unwrap().is_some());
        if let Some(map) = found {
            prop_assert!(is_isomorphism(&g, &h, &map));
        }
    }

    #[test]
    fn chromatic_number_agrees_with_brute_force(g in arb_graph(8)) {
        let result = chromatic_number(&g, &Limits::default()).unwrap();
        let exact = result.exact().unwrap();
        prop_assert_eq!(exact, brute_force_chromatic(&g));
        prop_assert!(result.witness().is_proper(&g));
        prop_assert_eq!(result.witness().color_count, exact);
        prop_assert!(greedy_clique(&g).len() <= exact);
        prop_assert!(exact <= dsatur(&g).color_count);
    }

    #[test]
    fn product_spaces_match_their_structure_expression((space, d) in arb_product_instance()) {
        let report = verify_structure_theorem(&space, &d, &VerifyOptions::default()).unwrap();
        prop_assert_eq!(report.status, Status::Verified);
    }

    #[test]
    fn structure_expressions_evaluate_to_the_right_size(
        (space, d) in arb_product_instance()
    ) {
        let expr: GraphExpr = structure_expr(&space, &d).unwrap();
        let g = expr.evaluate(10_000, 10_000_000).unwrap();
        prop_assert_eq!(num_bigint::BigUint::from(g.vertex_count()), space.cardinality());
        prop_assert_eq!(expr.to_string().parse::<GraphExpr>().unwrap(), expr);
    }
}
