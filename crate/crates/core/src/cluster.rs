//! The random clustering pipeline: window partition of a random
//! permutation, bad-cluster classification, and spread redistribution via
//! a bipartite matching sampled from an edge-spread distribution.
//!
//! A successful [`ClusterPartition`] satisfies the clustering lemma's
//! deterministic properties by construction (sizes, induced minimum degree,
//! connector neighbourhoods); its vertex-spread property is a distributional
//! claim assessed empirically by the `spread` module. The lemma's
//! conditioning on high-probability events is implemented as
//! rejection-resampling of the permutation with validated post-conditions.

use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{binom, min_d_degree_within, Hypergraph, Vertex};
use crate::sampling::{spread_perfect_matching, BipartiteGraph};

/// The three bad-cluster cutoffs, as configurable fractions. Defaults are
/// computed from the formulas behind the clustering lemma even when
/// numerically loose at small C.
#[derive(Clone, Copy, Debug)]
pub struct Thresholds {
    /// A cluster is degree-bad when δ_d(H[V_i]) < degree_fraction·C(|V_i|, k−d).
    pub degree_fraction: f64,
    /// A cluster is bipartite-degree-bad when at least this fraction of all
    /// vertices v fail the δ_d(H[V_i ∪ {v}]) degree test.
    pub bad_vertex_fraction: f64,
    /// A cluster is in-neighbourhood-bad when |N_i^−| < this fraction of m.
    pub in_neighborhood_fraction: f64,
}

impl Thresholds {
    /// Defaults: degree cutoff δ+2α/3, bad-vertex fraction exp(−α²C/500),
    /// in-neighbourhood fraction 1−1/√C.
    pub fn from_formulas(c: usize, delta: f64, alpha: f64) -> Self {
        Self {
            degree_fraction: delta + 2.0 * alpha / 3.0,
            bad_vertex_fraction: libm::exp(-alpha * alpha * c as f64 / 500.0),
            in_neighborhood_fraction: 1.0 - 1.0 / libm::sqrt(c as f64),
        }
    }
}

/// All tunables of the clustering pipeline.
#[derive(Clone, Debug)]
pub struct ClusterConfig {
    /// Final cluster size C (non-exceptional clusters).
    pub c: usize,
    /// Connector set size t.
    pub t: usize,
    /// Degree parameter d (1 ≤ d ≤ k−1).
    pub d: usize,
    /// Degree slack α.
    pub alpha: f64,
    /// Target degree fraction δ.
    pub delta: f64,
    /// Neighbourhood deficiency bound ε: |N_i| ≥ (1−ε)m is required.
    pub eps: f64,
    pub thresholds: Thresholds,
    /// samples-per-vertex for the redistribution matching sampler.
    pub matching_samples: usize,
    pub retry_budget: usize,
    /// Master seed recorded for replay; the pipeline operations themselves
    /// draw from a caller-supplied stream.
    pub seed: u64,
}

impl ClusterConfig {
    pub fn new(c: usize, t: usize, d: usize, delta: f64, alpha: f64, eps: f64) -> Self {
        Self {
            c,
            t,
            d,
            alpha,
            delta,
            eps,
            thresholds: Thresholds::from_formulas(c, delta, alpha),
            matching_samples: 5,
            retry_budget: 64,
            seed: 0,
        }
    }

    pub fn validate(&self, k: usize) -> Result<()> {
        if self.c < 2 {
            return Err(Error::Parameter("cluster size C must be at least 2"));
        }
        if self.t < 1 || self.t > self.c - 1 {
            return Err(Error::Parameter("connector size t must satisfy 1 ≤ t ≤ C−1"));
        }
        if self.d < 1 || self.d >= k {
            return Err(Error::Parameter("degree parameter d must satisfy 1 ≤ d ≤ k−1"));
        }
        if !(0.0 < self.eps && self.eps <= 1.0) {
            return Err(Error::Parameter("eps must lie in (0, 1]"));
        }
        if self.matching_samples == 0 || self.retry_budget == 0 {
            return Err(Error::Parameter("matching_samples and retry_budget must be positive"));
        }
        Ok(())
    }
}

/// Consecutive index windows of [n]: W_1 = [r] with
/// r = (C−1)C + (n mod (C−1)C); later windows have length C−1 before
/// redistribution and length C after it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowLayout {
    pub n: usize,
    pub c: usize,
    pub r: usize,
    /// Number of windows before redistribution.
    pub m_initial: usize,
    /// Number of clusters after redistribution (m′ + 1).
    pub m_final: usize,
}

impl WindowLayout {
    pub fn new(n: usize, c: usize) -> Result<Self> {
        let block = (c - 1) * c;
        if n <= 2 * block {
            return Err(Error::Parameter("n must exceed 2·C(C−1) for the window partition"));
        }
        let r = block + n % block;
        let m_initial = (n - r) / (c - 1) + 1;
        let m_final = (n - r) / c + 1;
        Ok(Self {
            n,
            c,
            r,
            m_initial,
            m_final,
        })
    }

    /// Positions (0-based, half-open) of initial window `i` (0-based).
    pub fn initial_window(&self, i: usize) -> core::ops::Range<usize> {
        if i == 0 {
            0..self.r
        } else {
            let s = self.r + (self.c - 1) * (i - 1);
            s..s + self.c - 1
        }
    }

    /// Positions of final window `i` (0-based): W_1 = [r], then length C.
    pub fn final_window(&self, i: usize) -> core::ops::Range<usize> {
        if i == 0 {
            0..self.r
        } else {
            let s = self.r + self.c * (i - 1);
            s..s + self.c
        }
    }
}

/// The window partition of a uniformly random permutation: V_i is the
/// preimage of window W_i.
#[derive(Clone, Debug)]
pub struct RawPartition {
    pub layout: WindowLayout,
    /// placed[p] = the vertex at permutation position p.
    pub placed: Vec<Vertex>,
    /// Raw clusters V_1..V_m (sorted vertex lists).
    pub clusters: Vec<Vec<Vertex>>,
    /// Connector sets T_i: the first t positions of each window (the fixed
    /// sub-window W′_i, chosen irrespective of the permutation).
    pub t_sets: Vec<Vec<Vertex>>,
}

/// Uniformly random permutation and its window preimages.
pub fn window_partition(
    n: usize,
    cfg: &ClusterConfig,
    rng: &mut ChaCha12Rng,
) -> Result<RawPartition> {
    let layout = WindowLayout::new(n, cfg.c)?;
    let mut placed: Vec<Vertex> = (0..n as Vertex).collect();
    placed.shuffle(rng);
    let collect = |range: core::ops::Range<usize>| {
        let mut v: Vec<Vertex> = placed[range].to_vec();
        v.sort_unstable();
        v
    };
    let mut clusters = Vec::with_capacity(layout.m_initial);
    let mut t_sets = Vec::with_capacity(layout.m_initial);
    for i in 0..layout.m_initial {
        let w = layout.initial_window(i);
        clusters.push(collect(w.clone()));
        t_sets.push(collect(w.start..w.start + cfg.t));
    }
    Ok(RawPartition {
        layout,
        placed,
        clusters,
        t_sets,
    })
}

/// Per-cluster diagnostics from classification.
#[derive(Clone, Debug, Default)]
pub struct ClusterDiagnostics {
    pub degree_bad: bool,
    pub bad_vertex_count: usize,
    pub bipartite_bad: bool,
    pub in_neighborhood_size: usize,
    pub in_neighborhood_bad: bool,
}

impl ClusterDiagnostics {
    pub fn naturally_bad(&self) -> bool {
        self.degree_bad || self.bipartite_bad || self.in_neighborhood_bad
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    /// Final bad set (initial cluster indices ≥ 1), padded deterministically
    /// to exactly m_initial − 1 − m′ entries, sorted.
    pub bad: Vec<usize>,
    pub naturally_bad: Vec<usize>,
    pub diagnostics: Vec<ClusterDiagnostics>,
}

fn degree_ok(h: &Hypergraph, set: &[Vertex], d: usize, fraction: f64) -> bool {
    let threshold = fraction * binom(set.len(), h.k() - d) as f64;
    min_d_degree_within(h, set, d) as f64 >= threshold
}

/// Minimum d-degree over an explicit list of edges known to lie inside a
/// set of `set_size` vertices.
fn min_d_degree_over_edges<'a>(
    edges: impl Iterator<Item = &'a [Vertex]>,
    set_size: usize,
    d: usize,
) -> usize {
    let total = binom(set_size, d);
    let mut counts: alloc::collections::BTreeMap<u128, usize> = alloc::collections::BTreeMap::new();
    let mut scratch: Vec<Vertex> = Vec::with_capacity(d);
    for e in edges {
        for_each_d_subset(e, d, &mut scratch, &mut |mask| {
            *counts.entry(mask).or_insert(0) += 1;
        });
    }
    if (counts.len() as u128) < total {
        return 0;
    }
    counts.values().copied().min().unwrap_or(0)
}

fn for_each_d_subset(items: &[Vertex], d: usize, scratch: &mut Vec<Vertex>, f: &mut impl FnMut(u128)) {
    if scratch.len() == d {
        f(scratch.iter().fold(0u128, |m, &v| m | (1u128 << (v % 128))));
        return;
    }
    let need = d - scratch.len();
    for (i, &v) in items.iter().enumerate() {
        if items.len() - i < need {
            break;
        }
        scratch.push(v);
        for_each_d_subset(&items[i + 1..], d, scratch, f);
        scratch.pop();
    }
}

fn union_sorted(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort_unstable();
    out.dedup();
    out
}

/// Mark each non-exceptional cluster bad iff it violates one of the three
/// cutoff conditions, then pad (lowest index first) to exactly
/// m_initial − 1 − m′ bad clusters. More naturally-bad clusters than that,
/// or an unhealthy exceptional cluster, is a classification failure that
/// triggers a resample upstream.
pub fn classify_clusters(
    h: &Hypergraph,
    raw: &RawPartition,
    cfg: &ClusterConfig,
) -> Result<Classification> {
    let m = raw.layout.m_initial;
    let n = raw.layout.n;
    let th = &cfg.thresholds;
    let required_bad = m - 1 - (raw.layout.m_final - 1);

    let mut diagnostics: Vec<ClusterDiagnostics> = Vec::with_capacity(m);
    for i in 0..m {
        let vi = &raw.clusters[i];
        let mut diag = ClusterDiagnostics {
            degree_bad: !degree_ok(h, vi, cfg.d, th.degree_fraction),
            ..Default::default()
        };
        // count vertices v with δ_d(H[V_i ∪ {v}]) below the cutoff
        let mut bad_vertices = 0usize;
        for v in 0..n as Vertex {
            let set = union_sorted(vi, &[v]);
            if !degree_ok(h, &set, cfg.d, th.degree_fraction) {
                bad_vertices += 1;
            }
        }
        diag.bad_vertex_count = bad_vertices;
        diag.bipartite_bad = (bad_vertices as f64) >= th.bad_vertex_fraction * n as f64;
        // N_i^−: clusters j ≠ i with δ_d(H[V_i ∪ T_j]) above the cutoff
        let mut in_nbhd = 0usize;
        for j in 0..m {
            if j != i && degree_ok(h, &union_sorted(vi, &raw.t_sets[j]), cfg.d, th.degree_fraction) {
                in_nbhd += 1;
            }
        }
        diag.in_neighborhood_size = in_nbhd;
        diag.in_neighborhood_bad = (in_nbhd as f64) < th.in_neighborhood_fraction * m as f64;
        diagnostics.push(diag);
    }

    if diagnostics[0].degree_bad || diagnostics[0].in_neighborhood_bad {
        return Err(Error::Classification("exceptional cluster V_1 fails its degree conditions"));
    }
    let naturally_bad: Vec<usize> = (1..m).filter(|&i| diagnostics[i].naturally_bad()).collect();
    if naturally_bad.len() > required_bad {
        return Err(Error::Classification("more naturally bad clusters than the redistribution can absorb"));
    }
    let mut bad = naturally_bad.clone();
    for i in 1..m {
        if bad.len() == required_bad {
            break;
        }
        if !bad.contains(&i) {
            bad.push(i);
        }
    }
    bad.sort_unstable();
    Ok(Classification {
        bad,
        naturally_bad,
        diagnostics,
    })
}

/// The output of the clustering pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterPartition {
    /// Nominal cluster size C.
    pub c: usize,
    /// Connector size t.
    pub t: usize,
    /// Clusters U_1..U_m, cluster 0 exceptional of size r.
    pub clusters: Vec<Vec<Vertex>>,
    /// Designated vertex u_i per cluster.
    pub u: Vec<Vertex>,
    /// Connector sets T_i ⊆ U_i ∖ {u_i}.
    pub t_sets: Vec<Vec<Vertex>>,
    /// Neighbourhood lists N_i (cluster indices), mutual by construction.
    pub nbhd: Vec<Vec<usize>>,
}

impl ClusterPartition {
    pub fn m(&self) -> usize {
        self.clusters.len()
    }

    pub fn n(&self) -> usize {
        self.clusters.iter().map(Vec::len).sum()
    }

    /// A trivial single-cluster partition: used by the degenerate embedding
    /// mode when n is too small for the window machinery.
    pub fn single_cluster(n: usize) -> Self {
        let all: Vec<Vertex> = (0..n as Vertex).collect();
        Self {
            c: n,
            t: 0,
            clusters: alloc::vec![all],
            u: alloc::vec![0],
            t_sets: alloc::vec![Vec::new()],
            nbhd: alloc::vec![Vec::new()],
        }
    }
}

/// The displayed property-(3) inequality:
/// δ_d(H[(U_i ∪ T_j) ∖ {u_i}]) ≥ (δ+α/2)·C(|U_i ∪ T_j|, k−d).
fn connector_ok(
    h: &Hypergraph,
    cfg: &ClusterConfig,
    cluster: &[Vertex],
    u: Vertex,
    t_other: &[Vertex],
) -> bool {
    let joined = union_sorted(cluster, t_other);
    let full_size = joined.len();
    let trimmed: Vec<Vertex> = joined.into_iter().filter(|&v| v != u).collect();
    let threshold = (cfg.delta + cfg.alpha / 2.0) * binom(full_size, h.k() - cfg.d) as f64;
    min_d_degree_within(h, &trimmed, cfg.d) as f64 >= threshold
}

/// Redistribute the bad clusters' vertices through the bipartite graph G_π
/// via a spread perfect matching, producing the final partition with
/// designated vertices, connector sets and neighbourhood lists.
pub fn redistribute(
    h: &Hypergraph,
    raw: &RawPartition,
    cls: &Classification,
    cfg: &ClusterConfig,
    rng: &mut ChaCha12Rng,
) -> Result<ClusterPartition> {
    let th = &cfg.thresholds;
    let good: Vec<usize> = (1..raw.layout.m_initial).filter(|i| !cls.bad.contains(i)).collect();
    let mut displaced: Vec<Vertex> = cls
        .bad
        .iter()
        .flat_map(|&i| raw.clusters[i].iter().copied())
        .collect();
    displaced.sort_unstable();

    if displaced.len() != good.len() {
        return Err(Error::Redistribution("redistribution bipartite graph is unbalanced"));
    }

    // G_π: v ~ V_i iff the degree test on V_i ∪ {v} passes
    let adj: Vec<Vec<Vertex>> = displaced
        .iter()
        .map(|&v| {
            good.iter()
                .enumerate()
                .filter(|&(_, &gi)| {
                    degree_ok(h, &union_sorted(&raw.clusters[gi], &[v]), cfg.d, th.degree_fraction)
                })
                .map(|(slot, _)| slot as Vertex)
                .collect()
        })
        .collect();
    let g_pi = BipartiteGraph::new(displaced.len(), good.len(), adj)?;
    let sample = spread_perfect_matching(&g_pi, cfg.matching_samples, cfg.retry_budget, rng)
        .map_err(|_| Error::Redistribution("matching sampler failed on the redistribution graph"))?;

    let m_final = raw.layout.m_final;
    let mut clusters: Vec<Vec<Vertex>> = Vec::with_capacity(m_final);
    let mut u: Vec<Vertex> = Vec::with_capacity(m_final);
    let mut t_sets: Vec<Vec<Vertex>> = Vec::with_capacity(m_final);

    // exceptional cluster: U_1 = V_1, u_1 the smallest vertex outside T_1
    let t1 = raw.t_sets[0].clone();
    let u1 = raw.clusters[0]
        .iter()
        .copied()
        .find(|v| !t1.contains(v))
        .ok_or(Error::Redistribution("V_1 has no vertex outside T_1"))?;
    clusters.push(raw.clusters[0].clone());
    u.push(u1);
    t_sets.push(t1);

    let mut slot_of_good = alloc::vec![u32::MAX; good.len()];
    for (li, &slot) in sample.matching.pairs.iter().enumerate() {
        slot_of_good[slot as usize] = li as u32;
    }
    for (slot, &gi) in good.iter().enumerate() {
        let li = slot_of_good[slot];
        debug_assert_ne!(li, u32::MAX);
        let added = displaced[li as usize];
        clusters.push(union_sorted(&raw.clusters[gi], &[added]));
        u.push(added);
        t_sets.push(raw.t_sets[gi].clone());
    }

    // N_i via the mutual connector-degree test of property (3)
    let mut nbhd: Vec<Vec<usize>> = alloc::vec![Vec::new(); m_final];
    for i in 0..m_final {
        for j in i + 1..m_final {
            if connector_ok(h, cfg, &clusters[i], u[i], &t_sets[j])
                && connector_ok(h, cfg, &clusters[j], u[j], &t_sets[i])
            {
                nbhd[i].push(j);
                nbhd[j].push(i);
            }
        }
    }

    Ok(ClusterPartition {
        c: cfg.c,
        t: cfg.t,
        clusters,
        u,
        t_sets,
        nbhd,
    })
}

/// Deterministic re-check of the clustering lemma's properties (1)–(3) on a
/// partition.
pub fn validate_partition(
    h: &Hypergraph,
    part: &ClusterPartition,
    cfg: &ClusterConfig,
) -> Result<()> {
    let n = h.n();
    let layout = WindowLayout::new(n, cfg.c)?;
    let m = part.m();
    if m != layout.m_final {
        return Err(Error::Validation("wrong cluster count"));
    }
    // property (1): sizes
    if part.clusters[0].len() != layout.r {
        return Err(Error::Validation("exceptional cluster has the wrong size"));
    }
    if part.clusters[1..].iter().any(|c| c.len() != cfg.c) {
        return Err(Error::Validation("non-exceptional cluster has the wrong size"));
    }
    // partition property
    let mut all: Vec<Vertex> = part.clusters.iter().flatten().copied().collect();
    all.sort_unstable();
    if all.len() != n || all.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Validation("clusters do not partition the vertex set"));
    }
    // u_i, T_i membership
    for i in 0..m {
        if part.clusters[i].binary_search(&part.u[i]).is_err() {
            return Err(Error::Validation("designated vertex outside its cluster"));
        }
        if part.t_sets[i].len() != cfg.t {
            return Err(Error::Validation("connector set has the wrong size"));
        }
        if part.t_sets[i].iter().any(|v| {
            *v == part.u[i] || part.clusters[i].binary_search(v).is_err()
        }) {
            return Err(Error::Validation("connector set must lie in U_i ∖ {u_i}"));
        }
    }
    // property (2): induced minimum degree at δ+α/2
    let fraction = cfg.delta + cfg.alpha / 2.0;
    for cluster in &part.clusters {
        if !degree_ok(h, cluster, cfg.d, fraction) {
            return Err(Error::Validation("cluster fails the induced degree bound"));
        }
    }
    // property (3): neighbourhood sizes and the displayed inequalities
    for i in 0..m {
        if (part.nbhd[i].len() as f64) < (1.0 - cfg.eps) * m as f64 {
            return Err(Error::Validation("neighbourhood list is too small"));
        }
        for &j in &part.nbhd[i] {
            if !connector_ok(h, cfg, &part.clusters[i], part.u[i], &part.t_sets[j])
                || !connector_ok(h, cfg, &part.clusters[j], part.u[j], &part.t_sets[i])
            {
                return Err(Error::Validation("neighbourhood pair fails the connector inequalities"));
            }
        }
    }
    Ok(())
}

/// Full pipeline: window partition → classify (rejection-resample on
/// failure) → redistribute → validate, bounded by `cfg.retry_budget`.
pub fn sample_cluster_partition(
    h: &Hypergraph,
    cfg: &ClusterConfig,
    rng: &mut ChaCha12Rng,
) -> Result<ClusterPartition> {
    cfg.validate(h.k())?;
    let n = h.n();
    let host_floor = (cfg.delta + cfg.alpha) * binom(n - cfg.d, h.k() - cfg.d) as f64;
    if (h.min_d_degree(cfg.d)? as f64) < host_floor {
        log::warn!(
            "sample_cluster_partition: host min {}-degree below (δ+α)·C(n−d, k−d) = {:.1}",
            cfg.d,
            host_floor
        );
    }
    let mut last = Error::Pipeline("cluster pipeline retry budget exhausted");
    for _ in 0..cfg.retry_budget {
        let raw = window_partition(n, cfg, rng)?;
        let cls = match classify_clusters(h, &raw, cfg) {
            Ok(c) => c,
            Err(e) => {
                last = e;
                continue;
            }
        };
        let part = match redistribute(h, &raw, &cls, cfg, rng) {
            Ok(p) => p,
            Err(e) => {
                last = e;
                continue;
            }
        };
        match validate_partition(h, &part, cfg) {
            Ok(()) => return Ok(part),
            Err(e) => last = e,
        }
    }
    log::warn!("sample_cluster_partition failed: {last}");
    Err(Error::Pipeline("cluster pipeline retry budget exhausted"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive;

    #[test]
    fn window_formulas() {
        // n=100, C=5: r = 20, m_initial = 21
        let l = WindowLayout::new(100, 5).unwrap();
        assert_eq!(l.r, 20);
        assert_eq!(l.m_initial, 21);
        assert_eq!(l.m_final, 17);

        // n=44, C=3: r = 8, 18 windows of 2 follow
        let l = WindowLayout::new(44, 3).unwrap();
        assert_eq!(l.r, 8);
        assert_eq!(l.m_initial, 19);
        for i in 1..l.m_initial {
            assert_eq!(l.initial_window(i).len(), 2);
        }

        // n=62, C=6: |U_1| = 32
        let l = WindowLayout::new(62, 6).unwrap();
        assert_eq!(l.r, 32);
        assert_eq!(l.m_final, 6);
    }

    #[test]
    fn window_partition_too_small_errors() {
        let cfg = ClusterConfig::new(5, 2, 1, 0.5, 0.2, 0.2);
        let mut rng = derive(0, "wp", 0);
        assert!(window_partition(40, &cfg, &mut rng).is_err());
    }

    #[test]
    fn permutation_marginals_are_exact() {
        // P(v ∈ V_i) = |W_i| / n under the uniform permutation
        let cfg = ClusterConfig::new(3, 1, 1, 0.5, 0.2, 0.2);
        let n = 20;
        let trials = 40_000;
        let mut hits_w0 = 0u64; // vertex 7 in window 0 (r = 14)
        let mut hits_w1 = 0u64;
        for t in 0..trials {
            let mut rng = derive(3, "marginal", t);
            let raw = window_partition(n, &cfg, &mut rng).unwrap();
            if raw.clusters[0].contains(&7) {
                hits_w0 += 1;
            }
            if raw.clusters[1].contains(&7) {
                hits_w1 += 1;
            }
        }
        let l = WindowLayout::new(n, 3).unwrap();
        let p0 = l.r as f64 / n as f64;
        let p1 = 2.0 / n as f64;
        let f0 = hits_w0 as f64 / trials as f64;
        let f1 = hits_w1 as f64 / trials as f64;
        let s0 = libm::sqrt(p0 * (1.0 - p0) / trials as f64);
        let s1 = libm::sqrt(p1 * (1.0 - p1) / trials as f64);
        assert!((f0 - p0).abs() < 4.0 * s0, "{f0} vs {p0}");
        assert!((f1 - p1).abs() < 4.0 * s1, "{f1} vs {p1}");
    }

    #[test]
    fn complete_host_classifies_with_padding_only() {
        let h = Hypergraph::complete(62, 3);
        let cfg = ClusterConfig::new(6, 4, 1, 0.5, 0.2, 0.2);
        let mut rng = derive(1, "classify", 0);
        let raw = window_partition(62, &cfg, &mut rng).unwrap();
        let cls = classify_clusters(&h, &raw, &cfg).unwrap();
        assert!(cls.naturally_bad.is_empty());
        assert_eq!(cls.bad.len(), raw.layout.m_initial - raw.layout.m_final);
    }

    #[test]
    fn isolated_vertex_cluster_is_degree_bad() {
        // K_44^(2) minus all edges at vertex 43
        let edges: Vec<Vec<Vertex>> = Hypergraph::complete(44, 2)
            .edges()
            .iter()
            .filter(|e| !e.contains(&43))
            .cloned()
            .collect();
        let h = Hypergraph::new(44, 2, edges, false).unwrap();
        let cfg = ClusterConfig::new(3, 1, 1, 0.5, 0.2, 0.2);
        let mut rng = derive(2, "isolated", 0);
        let raw = window_partition(44, &cfg, &mut rng).unwrap();
        let idx = raw
            .clusters
            .iter()
            .position(|c| c.contains(&43))
            .expect("vertex 43 somewhere");
        let cls = classify_clusters(&h, &raw, &cfg);
        match cls {
            Ok(c) => assert!(c.diagnostics[idx].degree_bad),
            // vertex 43 landing in V_1 fails classification outright
            Err(Error::Classification(_)) => assert_eq!(idx, 0),
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn full_pipeline_on_complete_host() {
        let h = Hypergraph::complete(62, 3);
        let cfg = ClusterConfig::new(6, 4, 1, 0.5, 0.2, 0.2);
        let mut rng = derive(4, "pipeline", 0);
        let part = sample_cluster_partition(&h, &cfg, &mut rng).unwrap();
        assert_eq!(part.clusters[0].len(), 32);
        assert!(part.clusters[1..].iter().all(|c| c.len() == 6));
        validate_partition(&h, &part, &cfg).unwrap();
        // complete host: every N_i is all other clusters
        for (i, nb) in part.nbhd.iter().enumerate() {
            assert_eq!(nb.len(), part.m() - 1, "cluster {i}");
        }
    }

    #[test]
    fn sub_threshold_host_fails_or_warns() {
        // two disjoint K_31^(3) cliques: δ_1 far below half of C(60,2)
        let mut edges: Vec<Vec<Vertex>> = Hypergraph::complete(31, 3).edges().to_vec();
        edges.extend(
            Hypergraph::complete(31, 3)
                .edges()
                .iter()
                .map(|e| e.iter().map(|&v| v + 31).collect::<Vec<_>>()),
        );
        let h = Hypergraph::new(62, 3, edges, false).unwrap();
        let mut cfg = ClusterConfig::new(6, 4, 1, 0.9, 0.05, 0.2);
        cfg.retry_budget = 4;
        let mut rng = derive(5, "subthresh", 0);
        assert!(sample_cluster_partition(&h, &cfg, &mut rng).is_err());
    }
}
