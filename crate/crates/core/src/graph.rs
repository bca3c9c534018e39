//! Concrete undirected simple graphs and brute-force distance graphs.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::space::{perm_invert, DistanceSet, Point, SpaceSpec};

/// Graphs up to this many vertices also keep a dense adjacency bit matrix.
pub const DENSE_THRESHOLD: usize = 4096;

/// An undirected simple graph on vertices `0..vertex_count`.
///
/// Neighbor lists are sorted. Graphs built from a space keep the points as
/// labels together with the space and distance set they came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    neighbors: Vec<Vec<u32>>,
    dense: Option<BitMatrix>,
    edge_count: usize,
    labels: Option<Vec<Point>>,
    origin: Option<(SpaceSpec, DistanceSet)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitMatrix {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn from_neighbors(neighbors: &[Vec<u32>]) -> Self {
        let n = neighbors.len();
        let words_per_row = n.div_ceil(64);
        let mut bits = vec![0u64; n * words_per_row];
        for (u, row) in neighbors.iter().enumerate() {
            for &v in row {
                let v = v as usize;
                bits[u * words_per_row + v / 64] |= 1 << (v % 64);
            }
        }
        BitMatrix {
            words_per_row,
            bits,
        }
    }

    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words_per_row + v / 64] & (1 << (v % 64)) != 0
    }
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicate edges
    /// and out-of-range endpoints.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut neighbors = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            neighbors[u].push(v as u32);
            neighbors[v].push(u as u32);
        }
        for (u, row) in neighbors.iter_mut().enumerate() {
            row.sort_unstable();
            if let Some(w) = row.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({u}, {})",
                    w[0]
                )));
            }
        }
        Ok(Self::from_sorted_neighbors(neighbors))
    }

    /// `neighbors` must already be sorted, symmetric and loop-free.
    pub(crate) fn from_sorted_neighbors(neighbors: Vec<Vec<u32>>) -> Self {
        let edge_count = neighbors.iter().map(Vec::len).sum::<usize>() / 2;
        let dense = (neighbors.len() <= DENSE_THRESHOLD).then(|| BitMatrix::from_neighbors(&neighbors));
        Graph {
            neighbors,
            dense,
            edge_count,
            labels: None,
            origin: None,
        }
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self::from_sorted_neighbors(vec![Vec::new(); vertex_count])
    }

    pub fn with_labels(mut self, labels: Vec<Point>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.dense {
            Some(m) => m.get(u, v),
            None => self.neighbors[u].binary_search(&(v as u32)).is_ok(),
        }
    }

    pub fn is_dense(&self) -> bool {
        self.dense.is_some()
    }

    pub fn labels(&self) -> Option<&[Point]> {
        self.labels.as_deref()
    }

    pub fn space(&self) -> Option<&SpaceSpec> {
        self.origin.as_ref().map(|(s, _)| s)
    }

    pub fn distances(&self) -> Option<&DistanceSet> {
        self.origin.as_ref().map(|(_, d)| d)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(u, row)| {
            row.iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    /// The common degree if every vertex has the same degree. The graph on
    /// zero vertices counts as 0-regular.
    pub fn is_regular(&self) -> Option<usize> {
        let first = self.neighbors.first().map_or(0, Vec::len);
        self.neighbors
            .iter()
            .all(|row| row.len() == first)
            .then_some(first)
    }

    pub fn connected_components(&self) -> ComponentPartition {
        let n = self.vertex_count();
        let mut component_of = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if component_of[start] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            component_of[start] = id;
            stack.push(start);
            let mut size = 0;
            while let Some(u) = stack.pop() {
                size += 1;
                for &v in &self.neighbors[u] {
                    let v = v as usize;
                    if component_of[v] == usize::MAX {
                        component_of[v] = id;
                        stack.push(v);
                    }
                }
            }
            sizes.push(size);
        }
        ComponentPartition {
            component_of,
            sizes,
        }
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`. Labels are carried over, the origin is dropped.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut position = vec![u32::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i as u32;
        }
        let neighbors = vertices
            .iter()
            .map(|&v| {
                let mut row: Vec<u32> = self.neighbors[v]
                    .iter()
                    .map(|&w| position[w as usize])
                    .filter(|&p| p != u32::MAX)
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        let mut sub = Graph::from_sorted_neighbors(neighbors);
        sub.labels = self
            .labels
            .as_ref()
            .map(|labels| vertices.iter().map(|&v| labels[v].clone()).collect());
        sub
    }

    /// Graph JSON document with edges sorted lexicographically.
    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            space: self.space().map(ToString::to_string),
            distances: self.distances().map(|d| d.values().to_vec()),
            vertex_count: self.vertex_count(),
            labels: self
                .labels
                .as_ref()
                .map(|ls| ls.iter().map(|p| p.coords().to_vec()).collect()),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("graph documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDocument = serde_json::from_str(text)
            .map_err(|e| Error::InvalidGraph(format!("malformed graph JSON: {e}")))?;
        Graph::from_document(doc)
    }

    pub fn from_document(doc: GraphDocument) -> Result<Self> {
        let edges: Vec<(usize, usize)> = doc.edges.iter().map(|&[u, v]| (u, v)).collect();
        let mut graph = Graph::from_edges(doc.vertex_count, &edges)?;
        let origin = match (doc.space, doc.distances) {
            (Some(space), Some(distances)) => {
                let space: SpaceSpec = space.parse()?;
                let distances = DistanceSet::new(distances)?;
                distances.check_for(&space)?;
                Some((space, distances))
            }
            (None, None) => None,
            _ => {
                return Err(Error::InvalidGraph(
                    "space and distances must be given together".into(),
                ))
            }
        };
        if let Some(labels) = doc.labels {
            let labels: Vec<Point> = labels.into_iter().map(Point::new).collect();
            if let Some((space, _)) = &origin {
                for label in &labels {
                    space.check_point(label)?;
                }
            }
            graph = graph.with_labels(labels)?;
        }
        graph.origin = origin;
        Ok(graph)
    }

    /// Undirected DOT; labeled vertices show their comma-joined coordinates.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count() {
            match &self.labels {
                Some(labels) => writeln!(out, "  {v} [label=\"{}\"];", labels[v]),
                None => writeln!(out, "  {v};"),
            }
            .expect("writing to a String cannot fail");
        }
        for (u, v) in self.edges() {
            writeln!(out, "  {u} -- {v};").expect("writing to a String cannot fail");
        }
        out.push_str("}\n");
        out
    }
}

/// Serialized form of a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub space: Option<String>,
    pub distances: Option<Vec<usize>>,
    pub vertex_count: usize,
    pub labels: Option<Vec<Vec<u32>>>,
    pub edges: Vec<[usize; 2]>,
}

/// Connected components; ids are numbered by smallest member vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub component_of: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ComponentPartition {
    pub fn component_count(&self) -> usize {
        self.sizes.len()
    }

    /// Vertex lists per component, each in increasing order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut members: Vec<Vec<usize>> = self.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (v, &c) in self.component_of.iter().enumerate() {
            members[c].push(v);
        }
        members
    }
}

/// `G(X, D)`: vertices are the points of `space` in canonical order, with an
/// edge between two points exactly when their RT distance lies in `D`.
pub fn build_distance_graph(space: &SpaceSpec, distances: &DistanceSet, limits: &Limits) -> Result<Graph> {
    distances.check_for(space)?;
    let points = space.enumerate(limits.max_points)?;
    // memory guard only: every vertex has exactly this many neighbors
    let edges = crate::formula::regular_degree(space, distances)? * BigUint::from(points.len()) / 2u32;
    if edges.to_usize().is_none_or(|e| e > limits.max_edges) {
        return Err(Error::SizeLimit {
            what: format!("edges of G({}, {{{distances}}})", space.math_name()),
            size: edges.to_string(),
            limit: limits.max_edges,
        });
    }
    let mut wanted = vec![false; space.length() + 1];
    for &d in distances.values() {
        wanted[d] = true;
    }

    let neighbors: Vec<Vec<u32>> = match space {
        SpaceSpec::Sn { .. } => points
            .par_iter()
            .map(|alpha| {
                let inverse = perm_invert(alpha.coords());
                points
                    .iter()
                    .enumerate()
                    .filter(|(_, beta)| {
                        wanted[crate::space::perm_distance_with_inverse(&inverse, beta.coords())]
                    })
                    .map(|(j, _)| j as u32)
                    .collect()
            })
            .collect(),
        SpaceSpec::Zq { q, .. } => {
            let q = *q;
            points
                .par_iter()
                .map(|x| {
                    points
                        .iter()
                        .enumerate()
                        .filter(|(_, y)| wanted[crate::space::zq_distance(q, x.coords(), y.coords())])
                        .map(|(j, _)| j as u32)
                        .collect()
                })
                .collect()
        }
        SpaceSpec::Product { .. } => points
            .par_iter()
            .map(|x| {
                points
                    .iter()
                    .enumerate()
                    .filter(|(_, y)| wanted[crate::space::disagreement_distance(x.coords(), y.coords())])
                    .map(|(j, _)| j as u32)
                    .collect()
            })
            .collect(),
    };
    // distance 0 is never wanted, so rows exclude the vertex itself

    let mut graph = Graph::from_sorted_neighbors(neighbors);
    graph.labels = Some(points);
    graph.origin = Some((space.clone(), distances.clone()));
    Ok(graph)
}

/// True iff the injective `map` sends every edge of `g` to an edge of `h`.
pub fn verify_embedding(g: &Graph, h: &Graph, map: &[usize]) -> Result<bool> {
    if map.len() != g.vertex_count() {
        return Err(Error::LengthMismatch {
            left: map.len(),
            right: g.vertex_count(),
        });
    }
    let mut preimage = vec![usize::MAX; h.vertex_count()];
    for (v, &image) in map.iter().enumerate() {
        if image >= h.vertex_count() {
            return Err(Error::InvalidGraph(format!(
                "vertex {v} maps to {image}, outside the target graph"
            )));
        }
        if preimage[image] != usize::MAX {
            return Err(Error::NotInjective(preimage[image], v, image));
        }
        preimage[image] = v;
    }
    Ok(g.edges().all(|(u, v)| h.has_edge(map[u], map[v])))
}
