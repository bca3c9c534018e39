//! Isomorphism search by color refinement with individualization.
//!
//! Both graphs are colored jointly so that color ids mean the same thing on
//! either side. Refinement replaces each color by the pair (old color, sorted
//! multiset of neighbor colors) until the number of classes stops growing.
//! When the partition is not discrete, the first smallest non-singleton class
//! is split by pinning its lowest `g` vertex against each `h` candidate in
//! turn. Any mapping produced is checked edge by edge before it is returned.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

/// An explicit isomorphism `g → h` (vertex `v` of `g` maps to `map[v]`), or
/// `None` when the graphs are not isomorphic.
pub fn find_isomorphism(g: &Graph, h: &Graph, limits: &Limits) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    let largest = n.max(h.vertex_count());
    if largest > limits.max_isomorphism_vertices {
        return Err(Error::SizeLimit {
            what: "isomorphism input".into(),
            size: largest.to_string(),
            limit: limits.max_isomorphism_vertices,
        });
    }
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let mut dg = g.degree_sequence();
    let mut dh = h.degree_sequence();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(None);
    }

    // Dense graphs are searched through their complements, which have the
    // same isomorphisms and far fewer edges to refine over.
    let pairs = n * n.saturating_sub(1) / 2;
    let complement = 2 * g.edge_count() > pairs;
    let adjacency = JointAdjacency::new(g, h, complement);

    let colors: Vec<u32> = (0..2 * n).map(|v| adjacency.degree(v) as u32).collect();
    let Some(map) = search(&adjacency, colors) else {
        return Ok(None);
    };
    if !is_isomorphism(g, h, &map) {
        // refinement guarantees this never happens; refuse to report it anyway
        return Ok(None);
    }
    Ok(Some(map))
}

/// True iff `map` is a bijection `V(g) → V(h)` preserving adjacency and
/// non-adjacency.
pub fn is_isomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || map.len() != n || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut seen = vec![false; n];
    for &image in map {
        if image >= n || std::mem::replace(&mut seen[image], true) {
            return false;
        }
    }
    // equal edge counts plus every edge mapping onto an edge forces equality
    g.edges().all(|(u, v)| h.has_edge(map[u], map[v]))
}

/// Vertices `0..n` are `g`, `n..2n` are `h`.
struct JointAdjacency {
    n: usize,
    neighbors: Vec<Vec<u32>>,
}

impl JointAdjacency {
    fn new(g: &Graph, h: &Graph, complement: bool) -> Self {
        let n = g.vertex_count();
        let mut neighbors = Vec::with_capacity(2 * n);
        for (graph, offset) in [(g, 0u32), (h, n as u32)] {
            for v in 0..n {
                let row: Vec<u32> = if complement {
                    (0..n)
                        .filter(|&w| w != v && !graph.has_edge(v, w))
                        .map(|w| w as u32 + offset)
                        .collect()
                } else {
                    graph.neighbors(v).iter().map(|&w| w + offset).collect()
                };
                neighbors.push(row);
            }
        }
        JointAdjacency { n, neighbors }
    }

    fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }
}

/// Refines `colors` to a stable partition and renumbers classes densely in
/// signature order. Returns the class count, or `None` when some class has
/// unequal numbers of `g` and `h` vertices.
fn refine(adjacency: &JointAdjacency, colors: &mut [u32]) -> Option<usize> {
    let total = colors.len();
    let mut class_count = usize::MAX;
    let mut order: Vec<usize> = (0..total).collect();
    let mut signatures: Vec<(u32, Vec<u32>)> = vec![(0, Vec::new()); total];
    loop {
        for (v, signature) in signatures.iter_mut().enumerate() {
            signature.0 = colors[v];
            signature.1.clear();
            signature.1.extend(adjacency.neighbors[v].iter().map(|&w| colors[w as usize]));
            signature.1.sort_unstable();
        }
        order.sort_by(|&a, &b| signatures[a].cmp(&signatures[b]));
        let mut next = 0u32;
        for i in 0..total {
            if i > 0 && signatures[order[i]] != signatures[order[i - 1]] {
                next += 1;
            }
            colors[order[i]] = next;
        }
        let count = next as usize + 1;
        if count == class_count {
            break;
        }
        class_count = count;
    }

    let mut balance = vec![0i64; class_count];
    for (v, &c) in colors.iter().enumerate() {
        balance[c as usize] += if v < adjacency.n { 1 } else { -1 };
    }
    balance.iter().all(|&b| b == 0).then_some(class_count)
}

fn search(adjacency: &JointAdjacency, mut colors: Vec<u32>) -> Option<Vec<usize>> {
    let n = adjacency.n;
    if n == 0 {
        return Some(Vec::new());
    }
    let class_count = refine(adjacency, &mut colors)?;
    if class_count == n {
        let mut g_of_color = vec![0usize; n];
        for v in 0..n {
            g_of_color[colors[v] as usize] = v;
        }
        let mut map = vec![0usize; n];
        for w in n..2 * n {
            map[g_of_color[colors[w] as usize]] = w - n;
        }
        return Some(map);
    }

    let mut sizes = vec![0usize; class_count];
    for &c in &colors[..n] {
        sizes[c as usize] += 1;
    }
    let target = (0..class_count)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c))
        .expect("a non-discrete partition has a non-singleton class") as u32;
    let pinned = (0..n).find(|&v| colors[v] == target).expect("class is nonempty");
    let fresh = class_count as u32;
    for candidate in (n..2 * n).filter(|&w| colors[w] == target) {
        let mut trial = colors.clone();
        trial[pinned] = fresh;
        trial[candidate] = fresh;
        if let Some(map) = search(adjacency, trial) {
            return Some(map);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn iso(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
        find_isomorphism(g, h, &Limits::default()).unwrap()
    }

    #[test]
    fn graph_is_isomorphic_to_itself() {
        let g = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]);
        let map = iso(&g, &g).unwrap();
        assert!(is_isomorphism(&g, &g, &map));
    }

    #[test]
    fn invariant_mismatch() {
        let two_edges = graph(4, &[(0, 1), (2, 3)]);
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(iso(&two_edges, &c4).is_none());
    }

    #[test]
    fn relabelled_four_cycle() {
        // G(Z_2^2, {2}) has edges 0-2, 0-3, 1-2, 1-3
        let g = graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let map = iso(&g, &c4).unwrap();
        assert!(is_isomorphism(&g, &c4, &map));
    }

    #[test]
    fn regular_non_isomorphic_pair() {
        // C6 versus two triangles: same degrees, refinement alone cannot tell
        let c6 = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let triangles = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(iso(&c6, &triangles).is_none());
        assert!(iso(&triangles, &c6).is_none());
    }

    #[test]
    fn dense_graphs_use_complements() {
        let edges: Vec<_> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
        let k6 = graph(6, &edges);
        let map = iso(&k6, &k6).unwrap();
        assert!(is_isomorphism(&k6, &k6, &map));
        let mut minus_one = edges.clone();
        minus_one.pop();
        let mut minus_other = edges;
        minus_other.remove(0);
        let a = graph(6, &minus_one);
        let b = graph(6, &minus_other);
        assert!(is_isomorphism(&a, &b, &iso(&a, &b).unwrap()));
    }

    #[test]
    fn rejects_bad_mappings() {
        let g = graph(3, &[(0, 1)]);
        assert!(!is_isomorphism(&g, &g, &[0, 0, 1]));
        assert!(!is_isomorphism(&g, &g, &[0, 2, 1]));
        assert!(is_isomorphism(&g, &g, &[1, 0, 2]));
        assert!(!is_isomorphism(&g, &g, &[0, 1]));
    }

    #[test]
    fn size_limit() {
        let limits = Limits {
            max_isomorphism_vertices: 2,
            ..Limits::default()
        };
        let g = graph(3, &[]);
        assert!(find_isomorphism(&g, &g, &limits).is_err());
    }

    #[test]
    fn empty_graphs() {
        assert_eq!(iso(&Graph::empty(0), &Graph::empty(0)), Some(vec![]));
        assert!(iso(&Graph::empty(2), &Graph::empty(2)).is_some());
    }
}
