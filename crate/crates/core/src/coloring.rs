//! Exact chromatic number with a proper-coloring witness.
//!
//! Each connected component is solved on its own: a greedy clique gives the
//! lower bound, DSATUR the upper bound, and a DSATUR-ordered branch and bound
//! closes any gap. The search is bounded by a node budget; running out of
//! budget yields [`ChromaticResult::Inconclusive`], never a guessed value.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

/// Proper vertex coloring with colors `0..color_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub color_count: usize,
}

impl Coloring {
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.vertex_count() && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChromaticResult {
    Exact {
        chromatic_number: usize,
        witness: Coloring,
    },
    Inconclusive {
        lower: usize,
        upper: usize,
        witness: Coloring,
    },
}

impl ChromaticResult {
    pub fn exact(&self) -> Option<usize> {
        match self {
            ChromaticResult::Exact {
                chromatic_number, ..
            } => Some(*chromatic_number),
            ChromaticResult::Inconclusive { .. } => None,
        }
    }

    pub fn bounds(&self) -> (usize, usize) {
        match self {
            ChromaticResult::Exact {
                chromatic_number, ..
            } => (*chromatic_number, *chromatic_number),
            ChromaticResult::Inconclusive { lower, upper, .. } => (*lower, *upper),
        }
    }

    pub fn witness(&self) -> &Coloring {
        match self {
            ChromaticResult::Exact { witness, .. } | ChromaticResult::Inconclusive { witness, .. } => {
                witness
            }
        }
    }
}

/// Chromatic number of `g`, solved per connected component.
///
/// Fails with a size-limit error when some component exceeds
/// `limits.max_coloring_component`.
pub fn chromatic_number(g: &Graph, limits: &Limits) -> Result<ChromaticResult> {
    let partition = g.connected_components();
    if let Some(&largest) = partition.sizes.iter().max() {
        if largest > limits.max_coloring_component {
            return Err(Error::SizeLimit {
                what: "connected component".into(),
                size: largest.to_string(),
                limit: limits.max_coloring_component,
            });
        }
    }

    let mut colors = vec![0usize; g.vertex_count()];
    let (mut lower, mut upper) = (0, 0);
    for members in partition.members() {
        let component = ComponentSolver::new(g, &members);
        let outcome = component.solve(limits.coloring_node_budget);
        lower = lower.max(outcome.lower);
        upper = upper.max(outcome.upper);
        for (local, &v) in members.iter().enumerate() {
            colors[v] = outcome.colors[local];
        }
    }
    let witness = Coloring {
        color_count: upper,
        colors,
    };
    debug_assert!(witness.is_proper(g));
    Ok(if lower == upper {
        ChromaticResult::Exact {
            chromatic_number: upper,
            witness,
        }
    } else {
        ChromaticResult::Inconclusive {
            lower,
            upper,
            witness,
        }
    })
}

/// DSATUR coloring: saturation first, then largest degree, then lowest id.
pub fn dsatur(g: &Graph) -> Coloring {
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let solver = ComponentSolver::new(g, &all);
    let (colors, color_count) = solver.dsatur();
    Coloring {
        colors,
        color_count,
    }
}

/// Largest clique found by greedy growth from every start vertex.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    ComponentSolver::new(g, &all).greedy_clique(usize::MAX)
}

struct ComponentOutcome {
    lower: usize,
    upper: usize,
    colors: Vec<usize>,
}

/// Local copy of one component with bitset adjacency rows.
struct ComponentSolver {
    n: usize,
    rows: Vec<Vec<u64>>,
    adjacency: Vec<Vec<usize>>,
}

impl ComponentSolver {
    fn new(g: &Graph, members: &[usize]) -> Self {
        let sub = g.induced_subgraph(members);
        let n = sub.vertex_count();
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; words]; n];
        let adjacency: Vec<Vec<usize>> = (0..n)
            .map(|v| sub.neighbors(v).iter().map(|&w| w as usize).collect())
            .collect();
        for (v, row) in rows.iter_mut().enumerate() {
            for &w in &adjacency[v] {
                row[w / 64] |= 1 << (w % 64);
            }
        }
        ComponentSolver {
            n,
            rows,
            adjacency,
        }
    }

    fn solve(&self, budget: u64) -> ComponentOutcome {
        let (colors, upper) = self.dsatur();
        let lower = self.greedy_clique(upper).len();
        if lower == upper {
            return ComponentOutcome {
                lower,
                upper,
                colors,
            };
        }
        let mut search = BranchAndBound::new(self, lower, upper, colors, budget);
        search.run();
        let exhausted = search.exhausted;
        ComponentOutcome {
            lower: if exhausted { lower } else { search.best },
            upper: search.best,
            colors: search.best_colors,
        }
    }

    fn dsatur(&self) -> (Vec<usize>, usize) {
        let n = self.n;
        if n == 0 {
            return (Vec::new(), 0);
        }
        let mut colors = vec![usize::MAX; n];
        let mut neighbor_colors = vec![vec![0u32; n]; n];
        let mut saturation = vec![0usize; n];
        let mut used = 0;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| colors[v] == usize::MAX)
                .max_by(|&a, &b| {
                    (saturation[a], self.adjacency[a].len())
                        .cmp(&(saturation[b], self.adjacency[b].len()))
                        .then(b.cmp(&a))
                })
                .expect("an uncolored vertex remains");
            let c = (0..).find(|&c| neighbor_colors[v][c] == 0).expect("some color is free");
            colors[v] = c;
            used = used.max(c + 1);
            for &w in &self.adjacency[v] {
                if neighbor_colors[w][c] == 0 {
                    saturation[w] += 1;
                }
                neighbor_colors[w][c] += 1;
            }
        }
        (colors, used)
    }

    /// Greedy clique from each start vertex; stops early once `target` is
    /// reached.
    fn greedy_clique(&self, target: usize) -> Vec<usize> {
        let mut best = Vec::new();
        for start in 0..self.n {
            let mut clique = vec![start];
            let mut candidates = self.rows[start].clone();
            loop {
                let pick = ones(&candidates)
                    .map(|v| (intersection_size(&self.rows[v], &candidates), v))
                    .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
                let Some((_, v)) = pick else { break };
                clique.push(v);
                for (c, r) in candidates.iter_mut().zip(&self.rows[v]) {
                    *c &= r;
                }
            }
            if clique.len() > best.len() {
                best = clique;
                if best.len() >= target {
                    break;
                }
            }
        }
        debug_assert!(best.iter().enumerate().all(|(i, &u)| {
            best[i + 1..].iter().all(|&v| self.rows[u][v / 64] & (1 << (v % 64)) != 0)
        }));
        best
    }
}

fn ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            (word != 0).then(|| {
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                w * 64 + bit
            })
        })
    })
}

fn intersection_size(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

/// DSATUR-ordered exact search for a coloring with fewer than `best` colors.
struct BranchAndBound<'a> {
    solver: &'a ComponentSolver,
    lower: usize,
    best: usize,
    best_colors: Vec<usize>,
    colors: Vec<usize>,
    neighbor_colors: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl<'a> BranchAndBound<'a> {
    fn new(solver: &'a ComponentSolver, lower: usize, best: usize, best_colors: Vec<usize>, budget: u64) -> Self {
        let n = solver.n;
        BranchAndBound {
            solver,
            lower,
            best,
            best_colors,
            colors: vec![usize::MAX; n],
            neighbor_colors: vec![vec![0u32; n + 1]; n],
            saturation: vec![0; n],
            nodes: 0,
            budget,
            exhausted: false,
        }
    }

    fn run(&mut self) {
        self.search(0, 0);
    }

    /// Returns true when the search should stop (optimum proven or budget
    /// spent).
    fn search(&mut self, colored: usize, used: usize) -> bool {
        if used >= self.best {
            return false;
        }
        if colored == self.solver.n {
            self.best = used;
            self.best_colors.clone_from(&self.colors);
            return self.best <= self.lower;
        }
        let v = self.select();
        // a new color is only worth opening if it stays below the incumbent
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if self.neighbor_colors[v][c] != 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return true;
            }
            self.assign(v, c);
            let stop = self.search(colored + 1, used.max(c + 1));
            self.unassign(v, c);
            if stop {
                return true;
            }
        }
        false
    }

    fn select(&self) -> usize {
        let adjacency = &self.solver.adjacency;
        (0..self.solver.n)
            .filter(|&v| self.colors[v] == usize::MAX)
            .max_by(|&a, &b| {
                (self.saturation[a], adjacency[a].len())
                    .cmp(&(self.saturation[b], adjacency[b].len()))
                    .then(b.cmp(&a))
            })
            .expect("an uncolored vertex remains")
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for &w in &self.solver.adjacency[v] {
            if self.neighbor_colors[w][c] == 0 {
                self.saturation[w] += 1;
            }
            self.neighbor_colors[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = usize::MAX;
        for &w in &self.solver.adjacency[v] {
            self.neighbor_colors[w][c] -= 1;
            if self.neighbor_colors[w][c] == 0 {
                self.saturation[w] -= 1;
            }
        }
    }
}
