/// Resource limits shared by the brute-force paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest space that will be enumerated or turned into a graph.
    pub max_points: usize,
    /// Largest connected component handed to the exact coloring solver.
    pub max_coloring_component: usize,
    /// Search nodes the coloring branch-and-bound may visit per component.
    pub coloring_node_budget: u64,
    /// Largest vertex count (per graph) accepted by the isomorphism search.
    pub max_isomorphism_vertices: usize,
    /// Largest edge count a concrete graph may be built with.
    pub max_edges: usize,
}

pub const DEFAULT_MAX_POINTS: usize = 100_000;
pub const MAX_POINTS_ENV: &str = "RTDG_MAX_POINTS";

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: DEFAULT_MAX_POINTS,
            max_coloring_component: 200,
            coloring_node_budget: 2_000_000,
            max_isomorphism_vertices: 10_000,
            max_edges: 50_000_000,
        }
    }
}

impl Limits {
    /// Defaults with `max_points` taken from `RTDG_MAX_POINTS` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var(MAX_POINTS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            limits.max_points = v;
        }
        limits
    }
}
