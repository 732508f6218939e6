//! Spread samplers for dense ordinary graphs: edge-spread perfect matchings
//! in balanced bipartite graphs and vertex-spread Hamilton cycles.
//!
//! The matching sampler follows the sketch behind the edge-spread matching
//! lemma: sample a constant number of incident edges per vertex (with
//! replacement) into a sparse random subgraph, then return a perfect
//! matching of that subgraph if one exists, resampling otherwise. The
//! augmenting-path search is itself order-randomized; a deterministic
//! matcher would concentrate probability on its preferred edges, which is
//! measurable at desk scale.
//!
//! The Hamilton cycle sampler runs a randomized greedy walk with Pósa
//! rotations and full restarts, then rejects unless the two path endpoints
//! are adjacent (the conditioning step that turns spread Hamilton paths
//! into spread Hamilton cycles).

use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::hypergraph::Vertex;

/// Balanced bipartite graph, left-indexed adjacency over right vertices.
#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    pub left_n: usize,
    pub right_n: usize,
    adj: Vec<Vec<Vertex>>,
}

impl BipartiteGraph {
    pub fn new(left_n: usize, right_n: usize, adj: Vec<Vec<Vertex>>) -> Result<Self> {
        if adj.len() != left_n {
            return Err(Error::Parameter("adjacency must have one row per left vertex"));
        }
        let mut adj = adj;
        for row in &mut adj {
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parameter("duplicate neighbor in bipartite adjacency"));
            }
            if row.last().is_some_and(|&r| r as usize >= right_n) {
                return Err(Error::Parameter("right vertex out of range"));
            }
        }
        Ok(Self {
            left_n,
            right_n,
            adj,
        })
    }

    pub fn complete(n: usize) -> Self {
        let row: Vec<Vertex> = (0..n as Vertex).collect();
        Self {
            left_n: n,
            right_n: n,
            adj: alloc::vec![row; n],
        }
    }

    pub fn adj(&self) -> &[Vec<Vertex>] {
        &self.adj
    }

    pub fn min_degree(&self) -> usize {
        let mut right_deg = alloc::vec![0usize; self.right_n];
        for row in &self.adj {
            for &r in row {
                right_deg[r as usize] += 1;
            }
        }
        self.adj
            .iter()
            .map(Vec::len)
            .chain(right_deg)
            .min()
            .unwrap_or(0)
    }

    fn right_adj(&self) -> Vec<Vec<Vertex>> {
        let mut out = alloc::vec![Vec::new(); self.right_n];
        for (l, row) in self.adj.iter().enumerate() {
            for &r in row {
                out[r as usize].push(l as Vertex);
            }
        }
        out
    }
}

/// A perfect matching: `pairs[l]` is the right vertex matched to left `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<Vertex>,
}

impl Matching {
    pub fn is_perfect_in(&self, b: &BipartiteGraph) -> bool {
        if self.pairs.len() != b.left_n || b.left_n != b.right_n {
            return false;
        }
        let mut seen = alloc::vec![false; b.right_n];
        for (l, &r) in self.pairs.iter().enumerate() {
            if (r as usize) >= b.right_n || seen[r as usize] || b.adj[l].binary_search(&r).is_err() {
                return false;
            }
            seen[r as usize] = true;
        }
        true
    }
}

/// A returned matching plus the number of attempts it took (each attempt is
/// one sampled subgraph G′, so the per-attempt Hall-success rate equals
/// runs / Σ attempts over repeated runs).
#[derive(Clone, Debug)]
pub struct MatchingSample {
    pub matching: Matching,
    pub attempts: usize,
}

/// Kuhn augmenting-path matching over pre-shuffled adjacency and vertex
/// order. Returns the left→right assignment (u32::MAX where unmatched).
fn maximum_matching(right_n: usize, adj: &[Vec<Vertex>], order: &[usize]) -> Vec<Vertex> {
    let mut match_l = alloc::vec![u32::MAX; adj.len()];
    let mut match_r = alloc::vec![u32::MAX; right_n];
    fn augment(
        l: usize,
        adj: &[Vec<Vertex>],
        match_l: &mut [Vertex],
        match_r: &mut [Vertex],
        visited: &mut [bool],
    ) -> bool {
        for &r in &adj[l] {
            if visited[r as usize] {
                continue;
            }
            visited[r as usize] = true;
            let owner = match_r[r as usize];
            if owner == u32::MAX || augment(owner as usize, adj, match_l, match_r, visited) {
                match_l[l] = r;
                match_r[r as usize] = l as Vertex;
                return true;
            }
        }
        false
    }
    for &l in order {
        let mut visited = alloc::vec![false; right_n];
        augment(l, adj, &mut match_l, &mut match_r, &mut visited);
    }
    match_l
}

/// Sample a perfect matching of `b` from the edge-spread construction:
/// `samples_per_vertex` incident edges per vertex (with replacement, both
/// sides) form G′; a randomized augmenting-path search looks for a perfect
/// matching of G′; on failure G′ is resampled, up to `retry_budget`
/// attempts. The returned matching uses only sampled edges.
pub fn spread_perfect_matching(
    b: &BipartiteGraph,
    samples_per_vertex: usize,
    retry_budget: usize,
    rng: &mut ChaCha12Rng,
) -> Result<MatchingSample> {
    if b.left_n != b.right_n {
        return Err(Error::Parameter("matching sampler needs a balanced bipartite graph"));
    }
    let n = b.left_n;
    if n == 0 {
        return Err(Error::Parameter("matching sampler needs a non-empty graph"));
    }
    if samples_per_vertex == 0 || retry_budget == 0 {
        return Err(Error::Parameter("samples_per_vertex and retry_budget must be positive"));
    }
    if b.min_degree() * 4 < 3 * n {
        log::warn!(
            "spread_perfect_matching: min degree {} below recommended 3n/4 = {}",
            b.min_degree(),
            (3 * n).div_ceil(4)
        );
    }
    if b.adj.iter().any(Vec::is_empty) {
        return Err(Error::Sampler("isolated left vertex: no perfect matching exists"));
    }
    let right = b.right_adj();
    if right.iter().any(Vec::is_empty) {
        return Err(Error::Sampler("isolated right vertex: no perfect matching exists"));
    }

    for attempt in 1..=retry_budget {
        // G′: samples_per_vertex incident edges from each side, with
        // replacement ("we allow edges to be selected twice")
        let mut sampled: Vec<Vec<Vertex>> = alloc::vec![Vec::new(); n];
        for (l, row) in b.adj.iter().enumerate() {
            for _ in 0..samples_per_vertex {
                sampled[l].push(*row.choose(rng).expect("nonempty row"));
            }
        }
        for (r, col) in right.iter().enumerate() {
            for _ in 0..samples_per_vertex {
                let &l = col.choose(rng).expect("nonempty column");
                sampled[l as usize].push(r as Vertex);
            }
        }
        for row in &mut sampled {
            row.sort_unstable();
            row.dedup();
            row.shuffle(rng);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let match_l = maximum_matching(n, &sampled, &order);
        if match_l.iter().all(|&r| r != u32::MAX) {
            let m = Matching { pairs: match_l };
            debug_assert!(m.is_perfect_in(b));
            return Ok(MatchingSample {
                matching: m,
                attempts: attempt,
            });
        }
    }
    Err(Error::Sampler("matching retry budget exhausted"))
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug)]
pub struct SimpleGraph {
    pub n: usize,
    adj: Vec<Vec<Vertex>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut adj = alloc::vec![Vec::new(); n];
        for (a, b) in edges {
            if a == b || a as usize >= n || b as usize >= n {
                return Err(Error::Parameter("bad graph edge"));
            }
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        Ok(Self { n, adj })
    }

    pub fn complete(n: usize) -> Self {
        let mut adj = Vec::with_capacity(n);
        for v in 0..n as Vertex {
            adj.push((0..n as Vertex).filter(|&u| u != v).collect());
        }
        Self { n, adj }
    }

    pub fn adj(&self) -> &[Vec<Vertex>] {
        &self.adj
    }

    pub fn is_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_hamilton_cycle(&self, order: &[Vertex]) -> bool {
        if order.len() != self.n {
            return false;
        }
        let mut seen = alloc::vec![false; self.n];
        for &v in order {
            if seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        (0..self.n).all(|i| self.is_edge(order[i], order[(i + 1) % self.n]))
    }
}

/// Edge-density fraction below which [`spread_hamilton_cycle`] warns: the
/// conditioning argument behind the endpoint rejection assumes
/// e(G) ≥ (1 − 1/C)·C(n,2) for a constant C around 10.
pub const HAM_CYCLE_DENSITY_WARN: f64 = 0.9;

const ROTATIONS_PER_RESTART: usize = 64;

/// Sample a Hamilton cycle of a dense graph: randomized greedy path growth
/// (uniform start, uniformly random unvisited neighbor next), Pósa
/// rotations when stuck, full restart after a bounded number of rotations.
/// A spanning path is accepted only if its endpoints are adjacent; the
/// cycle is returned as its cyclic vertex order.
pub fn spread_hamilton_cycle(
    g: &SimpleGraph,
    retry_budget: usize,
    rng: &mut ChaCha12Rng,
) -> Result<Vec<Vertex>> {
    let n = g.n;
    if n < 3 {
        return Err(Error::Parameter("Hamilton cycle needs at least 3 vertices"));
    }
    if retry_budget == 0 {
        return Err(Error::Parameter("retry_budget must be positive"));
    }
    if g.min_degree() * 4 < 3 * n {
        log::warn!(
            "spread_hamilton_cycle: min degree {} below recommended 3n/4 = {}",
            g.min_degree(),
            (3 * n).div_ceil(4)
        );
    }
    if (g.edge_count() as f64) < HAM_CYCLE_DENSITY_WARN * (n * (n - 1) / 2) as f64 {
        log::warn!(
            "spread_hamilton_cycle: edge count {} below recommended {:.0}% of C(n,2)",
            g.edge_count(),
            HAM_CYCLE_DENSITY_WARN * 100.0
        );
    }
    if g.min_degree() < 2 {
        return Err(Error::Sampler("a vertex of degree < 2 admits no Hamilton cycle"));
    }

    for _ in 0..retry_budget {
        if let Some(path) = random_hamilton_path(g, rng) {
            if g.is_edge(path[0], path[n - 1]) {
                debug_assert!(g.is_hamilton_cycle(&path));
                return Ok(path);
            }
            // endpoints not adjacent: reject and resample
        }
    }
    Err(Error::Sampler("Hamilton cycle retry budget exhausted"))
}

fn random_hamilton_path(g: &SimpleGraph, rng: &mut ChaCha12Rng) -> Option<Vec<Vertex>> {
    let n = g.n;
    let mut path: Vec<Vertex> = Vec::with_capacity(n);
    let mut on_path = alloc::vec![false; n];
    let start = rng.gen_range(0..n) as Vertex;
    path.push(start);
    on_path[start as usize] = true;
    let mut rotations = 0usize;

    while path.len() < n {
        let end = *path.last().expect("nonempty") as usize;
        let fresh: Vec<Vertex> = g.adj[end]
            .iter()
            .copied()
            .filter(|&v| !on_path[v as usize])
            .collect();
        if let Some(&v) = fresh.choose(rng) {
            path.push(v);
            on_path[v as usize] = true;
            continue;
        }
        // stuck: Pósa rotation around a random on-path neighbor of the end
        rotations += 1;
        if rotations > ROTATIONS_PER_RESTART {
            return None;
        }
        let pivots: Vec<usize> = g.adj[end]
            .iter()
            .filter_map(|&v| {
                let i = path.iter().position(|&p| p == v)?;
                (i + 2 < path.len()).then_some(i)
            })
            .collect();
        let &i = pivots.choose(rng)?;
        path[i + 1..].reverse();
    }
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive;
    use alloc::collections::BTreeSet;

    #[test]
    fn matching_on_complete_bipartite() {
        let b = BipartiteGraph::complete(8);
        let mut rng = derive(1, "pm", 0);
        let s = spread_perfect_matching(&b, 5, 100, &mut rng).unwrap();
        assert!(s.matching.is_perfect_in(&b));
    }

    #[test]
    fn matching_on_a_single_matching_graph() {
        // B = one perfect matching as a graph: that matching, always
        let adj: Vec<Vec<Vertex>> = (0..6).map(|l| alloc::vec![(5 - l) as Vertex]).collect();
        let b = BipartiteGraph::new(6, 6, adj).unwrap();
        let mut rng = derive(1, "pm", 1);
        for _ in 0..10 {
            let s = spread_perfect_matching(&b, 2, 100, &mut rng).unwrap();
            assert_eq!(s.matching.pairs, alloc::vec![5, 4, 3, 2, 1, 0]);
        }
    }

    #[test]
    fn isolated_left_vertex_fails() {
        let adj = alloc::vec![alloc::vec![0, 1], Vec::new(), alloc::vec![0, 2]];
        let b = BipartiteGraph::new(3, 3, adj).unwrap();
        let mut rng = derive(1, "pm", 2);
        assert!(matches!(
            spread_perfect_matching(&b, 3, 10, &mut rng),
            Err(Error::Sampler(_))
        ));
    }

    #[test]
    fn matching_marginals_near_uniform_on_k88() {
        // on K_{n,n} the single-edge probability is exactly 1/n by symmetry
        let b = BipartiteGraph::complete(8);
        let trials = 20_000u32;
        let mut hits = [[0u32; 8]; 8];
        for t in 0..trials {
            let mut rng = derive(42, "pm-marginal", t as u64);
            let s = spread_perfect_matching(&b, 5, 100, &mut rng).unwrap();
            for (l, &r) in s.matching.pairs.iter().enumerate() {
                hits[l][r as usize] += 1;
            }
        }
        let expect = trials as f64 / 8.0;
        let sigma = libm::sqrt(trials as f64 * (1.0 / 8.0) * (7.0 / 8.0));
        for row in &hits {
            for &h in row {
                assert!(
                    (h as f64 - expect).abs() < 5.0 * sigma,
                    "edge frequency {h} too far from {expect}"
                );
            }
        }
    }

    #[test]
    fn k5_cycle_support_is_full() {
        // all 12 = (5−1)!/2 Hamilton cycles of K5 appear
        let g = SimpleGraph::complete(5);
        let mut seen: BTreeSet<Vec<Vertex>> = BTreeSet::new();
        for t in 0..2000u64 {
            let mut rng = derive(7, "ham", t);
            let cyc = spread_hamilton_cycle(&g, 100, &mut rng).unwrap();
            seen.insert(crate::spread::canonical_cycle(&cyc));
        }
        assert_eq!(seen.len(), 12);
    }

    #[test]
    fn five_cycle_returns_itself() {
        let g = SimpleGraph::new(5, (0..5).map(|i| (i as Vertex, ((i + 1) % 5) as Vertex))).unwrap();
        let mut rng = derive(7, "ham", 99);
        let cyc = spread_hamilton_cycle(&g, 200, &mut rng).unwrap();
        assert_eq!(
            crate::spread::canonical_cycle(&cyc),
            alloc::vec![0, 1, 2, 3, 4]
        );
    }

    #[test]
    fn cycle_output_is_always_valid() {
        let g = SimpleGraph::complete(9);
        for t in 0..200u64 {
            let mut rng = derive(8, "ham-valid", t);
            let cyc = spread_hamilton_cycle(&g, 100, &mut rng).unwrap();
            assert!(g.is_hamilton_cycle(&cyc));
        }
    }
}
