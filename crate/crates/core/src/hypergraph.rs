//! k-uniform hypergraphs, ℓ-cycle/ℓ-path templates, degrees and densities.
//!
//! Vertices are 0-based `u32` indices below `n`. Edges are kept as sorted
//! vertex lists in a canonical (lexicographic) order; when `n ≤ 128` a
//! bitset per edge is kept alongside for fast intersection work. The dual
//! representation is internal — equality and serialization always go
//! through the sorted lists.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};

pub type Vertex = u32;

/// Largest vertex count for which per-edge bitsets are maintained.
pub const BITSET_LIMIT: usize = 128;

/// Default cap on `|E(H)|` for the exhaustive subgraph enumeration behind
/// [`m1`] and [`is_strictly_one_balanced`].
pub const DEFAULT_DENSITY_EDGE_CAP: usize = 16;

/// Binomial coefficient in u128, saturating on overflow.
pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// A k-uniform hypergraph on vertex set `{0, …, n−1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    multi: bool,
    /// Sorted vertex lists, lexicographically ordered.
    edges: Vec<Vec<Vertex>>,
    /// One bit per vertex, present when `n ≤ BITSET_LIMIT`.
    masks: Option<Vec<u128>>,
}

impl core::fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "Hypergraph(k={}, n={}, m={}{})",
            self.k,
            self.n,
            self.edges.len(),
            if self.multi { ", multi" } else { "" }
        )
    }
}

pub(crate) fn mask_of(verts: &[Vertex]) -> u128 {
    verts.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

impl Hypergraph {
    /// Build a hypergraph from arbitrary edge lists. Each edge must have
    /// exactly `k` distinct vertices below `n`. Edges are sorted and, unless
    /// `multi` is set, deduplicated.
    pub fn new(
        n: usize,
        k: usize,
        edges: impl IntoIterator<Item = Vec<Vertex>>,
        multi: bool,
    ) -> Result<Self> {
        if k < 1 {
            return Err(Error::Parameter("uniformity k must be at least 1"));
        }
        let mut sorted: Vec<Vec<Vertex>> = Vec::new();
        for mut e in edges {
            e.sort_unstable();
            if e.len() != k {
                return Err(Error::Parameter("edge is not k-uniform"));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parameter("edge has a repeated vertex"));
            }
            if e.last().is_some_and(|&v| v as usize >= n) {
                return Err(Error::Parameter("edge vertex out of range"));
            }
            sorted.push(e);
        }
        sorted.sort_unstable();
        if !multi {
            sorted.dedup();
        }
        let masks = (n <= BITSET_LIMIT).then(|| sorted.iter().map(|e| mask_of(e)).collect());
        Ok(Self {
            k,
            n,
            multi,
            edges: sorted,
            masks,
        })
    }

    pub fn empty(n: usize, k: usize) -> Self {
        Self::new(n, k, core::iter::empty(), false).expect("empty hypergraph")
    }

    /// The complete k-uniform hypergraph K_n^(k).
    pub fn complete(n: usize, k: usize) -> Self {
        let mut edges = Vec::with_capacity(binom(n, k) as usize);
        let mut cur: Vec<Vertex> = (0..k as Vertex).collect();
        if k <= n {
            loop {
                edges.push(cur.clone());
                // next k-combination of {0..n-1}
                let mut i = k;
                loop {
                    if i == 0 {
                        return Self::new(n, k, edges, false).expect("complete hypergraph");
                    }
                    i -= 1;
                    if (cur[i] as usize) < n - (k - i) {
                        cur[i] += 1;
                        for j in i + 1..k {
                            cur[j] = cur[j - 1] + 1;
                        }
                        break;
                    }
                }
            }
        }
        Self::empty(n, k)
    }

    /// Binomial random hypergraph: every k-set kept independently with
    /// probability `p`.
    pub fn random_uniform(n: usize, k: usize, p: f64, rng: &mut impl Rng) -> Self {
        let complete = Self::complete(n, k);
        let edges = complete
            .edges
            .iter()
            .filter(|_| rng.gen::<f64>() < p)
            .cloned()
            .collect::<Vec<_>>();
        Self::new(n, k, edges, false).expect("random hypergraph")
    }

    /// Circulant graph (k = 2): `{i, i+d mod n}` for every `d` in `dists`.
    pub fn circulant(n: usize, dists: &[usize]) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..n {
            for &d in dists {
                if d == 0 || d > n / 2 {
                    return Err(Error::Parameter("circulant distance out of range"));
                }
                let j = (i + d) % n;
                if i != j {
                    edges.push(alloc::vec![i as Vertex, j as Vertex]);
                }
            }
        }
        Self::new(n, 2, edges, false)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_multi(&self) -> bool {
        self.multi
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub(crate) fn masks(&self) -> Option<&[u128]> {
        self.masks.as_deref()
    }

    /// Membership test; `e` need not be sorted.
    pub fn contains_edge(&self, e: &[Vertex]) -> bool {
        let mut probe = e.to_vec();
        probe.sort_unstable();
        self.edges.binary_search(&probe).is_ok()
    }

    pub(crate) fn contains_sorted_edge(&self, e: &[Vertex]) -> bool {
        self.edges.binary_search_by(|x| x.as_slice().cmp(e)).is_ok()
    }

    /// Number of edges containing every vertex of `set`.
    pub fn degree_of_set(&self, set: &[Vertex]) -> usize {
        if self.n <= BITSET_LIMIT {
            let want = mask_of(set);
            self.masks
                .as_ref()
                .map(|ms| ms.iter().filter(|&&m| m & want == want).count())
                .unwrap_or(0)
        } else {
            self.edges
                .iter()
                .filter(|e| set.iter().all(|v| e.binary_search(v).is_ok()))
                .count()
        }
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = alloc::vec![0usize; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.vertex_degrees().into_iter().max().unwrap_or(0)
    }

    /// Minimum d-degree δ_d(H): the least number of edges containing any
    /// d-set of vertices.
    pub fn min_d_degree(&self, d: usize) -> Result<usize> {
        if self.n == 0 {
            return Err(Error::Parameter("min_d_degree needs a non-empty vertex set"));
        }
        if d < 1 || d >= self.k {
            return Err(Error::Parameter("degree parameter d must satisfy 1 ≤ d ≤ k−1"));
        }
        let all: Vec<Vertex> = (0..self.n as Vertex).collect();
        Ok(min_d_degree_within(self, &all, d))
    }
}

/// δ_d(H[subset]): minimum d-degree of the induced subhypergraph. `subset`
/// must be sorted and duplicate-free; d-sets lying in no induced edge count
/// as degree 0.
pub fn min_d_degree_within(h: &Hypergraph, subset: &[Vertex], d: usize) -> usize {
    debug_assert!(d >= 1 && d < h.k());
    if subset.len() < d {
        return 0;
    }
    let total = binom(subset.len(), d);
    let mut counts: BTreeMap<u128, usize> = BTreeMap::new();
    let sub_mask = (h.n() <= BITSET_LIMIT).then(|| mask_of(subset));
    let mut scratch = Vec::with_capacity(d);
    let mut record = |edge: &[Vertex]| {
        for_each_subset(edge, d, &mut scratch, &mut |sub| {
            *counts.entry(mask_of(sub)).or_insert(0) += 1;
        });
    };
    match (sub_mask, h.masks()) {
        (Some(sm), Some(ms)) => {
            for (e, &m) in h.edges().iter().zip(ms) {
                if m & sm == m {
                    record(e);
                }
            }
        }
        _ => {
            for e in h.edges() {
                if e.iter().all(|v| subset.binary_search(v).is_ok()) {
                    record(e);
                }
            }
        }
    }
    if (counts.len() as u128) < total {
        return 0;
    }
    counts.values().copied().min().unwrap_or(0)
}

fn for_each_subset(items: &[Vertex], d: usize, scratch: &mut Vec<Vertex>, f: &mut impl FnMut(&[Vertex])) {
    if scratch.len() == d {
        f(scratch);
        return;
    }
    let need = d - scratch.len();
    for (i, &v) in items.iter().enumerate() {
        if items.len() - i < need {
            break;
        }
        scratch.push(v);
        for_each_subset(&items[i + 1..], d, scratch, f);
        scratch.pop();
    }
}

/// Specification of the ℓ-cycle C_{n,k,ℓ}, or its ℓ-shifted variant
/// C′_{n,k,ℓ} when `shifted` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EllCycleSpec {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub shifted: bool,
}

impl EllCycleSpec {
    pub fn new(n: usize, k: usize, ell: usize) -> Self {
        Self {
            n,
            k,
            ell,
            shifted: false,
        }
    }

    pub fn shifted(n: usize, k: usize, ell: usize) -> Self {
        Self {
            n,
            k,
            ell,
            shifted: true,
        }
    }
}

/// The ℓ-cycle with edge set {[k+(k−ℓ)(i−1)] ∖ [(k−ℓ)(i−1)] : i ∈ [n/(k−ℓ)]},
/// indices mod n (0-based internally). With `shifted`, every edge index is
/// decreased by ℓ mod n.
pub fn build_ell_cycle(spec: &EllCycleSpec) -> Result<Hypergraph> {
    let EllCycleSpec { n, k, ell, shifted } = *spec;
    if ell >= k {
        return Err(Error::Parameter("cycle overlap ℓ must satisfy 0 ≤ ℓ < k"));
    }
    if n < k || n % (k - ell) != 0 {
        return Err(Error::Divisibility("k−ℓ must divide n and n ≥ k"));
    }
    let stride = k - ell;
    let offset = if shifted { n - ell % n } else { 0 };
    let edges = (0..n / stride)
        .map(|i| {
            (0..k)
                .map(|j| ((stride * i + j + offset) % n) as Vertex)
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    Hypergraph::new(n, k, edges, false)
}

/// The ℓ-path P_{n,k,ℓ}: the cycle edge formula without wraparound. The
/// first ℓ and last ℓ vertices are its endpoints.
pub fn build_ell_path(n: usize, k: usize, ell: usize) -> Result<Hypergraph> {
    if ell >= k {
        return Err(Error::Parameter("path overlap ℓ must satisfy 0 ≤ ℓ < k"));
    }
    if n < k || (n - ell) % (k - ell) != 0 {
        return Err(Error::Divisibility("path needs n ≡ ℓ (mod k−ℓ) and n ≥ k"));
    }
    let stride = k - ell;
    let edges = (0..(n - ell) / stride)
        .map(|i| (0..k).map(|j| (stride * i + j) as Vertex).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    Hypergraph::new(n, k, edges, false)
}

/// f(k,ℓ) = ⌈(2k−ℓ)/(k−ℓ)⌉, the connector length used by the cycle
/// embedding: an ℓ-path with f(k,ℓ) edges has its final ℓ vertices disjoint
/// from its first ℓ.
pub fn f_param(k: usize, ell: usize) -> usize {
    debug_assert!(ell >= 1 && ell < k);
    (2 * k - ell).div_ceil(k - ell)
}

/// (k,ℓ)-path-divisibility: k−ℓ divides |S|−ℓ.
pub fn is_path_divisible(size: usize, k: usize, ell: usize) -> bool {
    size >= ell && (size - ell) % (k - ell) == 0
}

/// Internal variant: k−ℓ divides |S|+ℓ.
pub fn is_internal_path_divisible(size: usize, k: usize, ell: usize) -> bool {
    (size + ell) % (k - ell) == 0
}

/// 1-density d₁(H) = |E| / (|V|−1) as an exact rational.
pub fn one_density(h: &Hypergraph) -> Result<Ratio<i64>> {
    if h.n() <= 1 {
        return Err(Error::Parameter("1-density needs |V| > 1"));
    }
    Ok(Ratio::new(h.edge_count() as i64, h.n() as i64 - 1))
}

struct SubgraphScan {
    /// max d₁ over subgraphs (V(E'), E'), E' ≠ ∅, |V| > 1
    max_density: Option<Ratio<i64>>,
    /// whether every proper nonempty E' ⊊ E has d₁ strictly below d₁(H)
    strictly_balanced: bool,
}

fn scan_subgraphs(h: &Hypergraph, cap: usize) -> Result<SubgraphScan> {
    let m = h.edge_count();
    if m > cap.min(30) {
        return Err(Error::Capacity {
            context: "subgraph density enumeration",
            cap: cap.min(30),
            got: m,
        });
    }
    let full = one_density(h)?;
    let mut max_density: Option<Ratio<i64>> = None;
    let mut strictly_balanced = true;
    // all nonempty edge subsets
    for bits in 1u64..(1u64 << m) {
        let mut verts: Vec<Vertex> = Vec::new();
        let mut t = 0i64;
        for (i, e) in h.edges().iter().enumerate() {
            if bits >> i & 1 == 1 {
                t += 1;
                verts.extend_from_slice(e);
            }
        }
        verts.sort_unstable();
        verts.dedup();
        let v = verts.len() as i64;
        if v <= 1 {
            continue;
        }
        let d1 = Ratio::new(t, v - 1);
        if max_density.is_none_or(|m| d1 > m) {
            max_density = Some(d1);
        }
        if bits != (1u64 << m) - 1 && d1 >= full {
            strictly_balanced = false;
        }
    }
    Ok(SubgraphScan {
        max_density,
        strictly_balanced,
    })
}

/// m₁(H): the maximum 1-density over subgraphs with more than one vertex
/// and no isolated vertices, found by exhaustive enumeration.
pub fn m1(h: &Hypergraph) -> Result<Ratio<i64>> {
    m1_capped(h, DEFAULT_DENSITY_EDGE_CAP)
}

pub fn m1_capped(h: &Hypergraph, cap: usize) -> Result<Ratio<i64>> {
    scan_subgraphs(h, cap)?
        .max_density
        .ok_or(Error::Parameter("m1 needs at least one edge on ≥ 2 vertices"))
}

/// Strict 1-balancedness: d₁(F′) < d₁(F) for every proper subgraph F′ with
/// at least one edge. A hypergraph with an isolated vertex cannot be
/// strictly 1-balanced (dropping the vertex raises d₁).
pub fn is_strictly_one_balanced(h: &Hypergraph) -> Result<bool> {
    if h.edge_count() == 0 {
        return Err(Error::Parameter("balancedness needs at least one edge"));
    }
    if h.vertex_degrees().iter().any(|&d| d == 0) {
        return Ok(false);
    }
    Ok(scan_subgraphs(h, DEFAULT_DENSITY_EDGE_CAP)?.strictly_balanced)
}

/// An injection from template vertices `0..target_n` into host vertices,
/// certifying edge-to-edge mapping when checked by [`is_embedding`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub image: Vec<Vertex>,
}

impl Embedding {
    pub fn new(image: Vec<Vertex>) -> Self {
        Self { image }
    }

    pub fn target_n(&self) -> usize {
        self.image.len()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.image.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.image[v as usize]
    }
}

/// True iff `e` is injective and maps every template edge to a host edge.
/// Malformed embeddings return false rather than erroring.
pub fn is_embedding(template: &Hypergraph, host: &Hypergraph, e: &Embedding) -> bool {
    if e.target_n() != template.n() || !e.is_injective() {
        return false;
    }
    if e.image.iter().any(|&v| (v as usize) >= host.n()) {
        return false;
    }
    template.edges().iter().all(|t| {
        let mapped: Vec<Vertex> = t.iter().map(|&v| e.apply(v)).collect();
        host.contains_edge(&mapped)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(a: i64, b: i64) -> Ratio<i64> {
        Ratio::new(a, b)
    }

    #[test]
    fn complete_k5_3_min_1_degree() {
        let h = Hypergraph::complete(5, 3);
        assert_eq!(h.edge_count(), 10);
        assert_eq!(h.min_d_degree(1).unwrap(), 6); // C(4,2)
    }

    #[test]
    fn tight_cycle_c632_min_1_degree() {
        let h = build_ell_cycle(&EllCycleSpec::new(6, 3, 2)).unwrap();
        assert_eq!(h.edge_count(), 6);
        assert_eq!(h.min_d_degree(1).unwrap(), 3);
    }

    #[test]
    fn loose_cycle_c631_min_2_degree_is_zero() {
        let h = build_ell_cycle(&EllCycleSpec::new(6, 3, 1)).unwrap();
        // non-adjacent pairs lie in no edge
        assert_eq!(h.min_d_degree(2).unwrap(), 0);
    }

    #[test]
    fn min_d_degree_rejects_bad_d() {
        let h = Hypergraph::complete(5, 3);
        assert!(h.min_d_degree(0).is_err());
        assert!(h.min_d_degree(3).is_err());
    }

    #[test]
    fn loose_cycle_edges() {
        let h = build_ell_cycle(&EllCycleSpec::new(6, 3, 1)).unwrap();
        assert_eq!(
            h.edges(),
            &[vec![0, 1, 2], vec![0, 4, 5], vec![2, 3, 4]] // canonical order
        );
    }

    #[test]
    fn tight_cycle_degrees() {
        let h = build_ell_cycle(&EllCycleSpec::new(6, 3, 2)).unwrap();
        assert_eq!(h.edge_count(), 6);
        assert!(h.vertex_degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn graph_cycle_case() {
        let h = build_ell_cycle(&EllCycleSpec::new(4, 2, 1)).unwrap();
        assert_eq!(
            h.edges(),
            &[vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]
        );
    }

    #[test]
    fn shifted_cycle_contains_wrap_edge() {
        // C'_{6,3,1}: first edge {n−ℓ, 0, …, k−ℓ−1} = {5, 0, 1}
        let h = build_ell_cycle(&EllCycleSpec::shifted(6, 3, 1)).unwrap();
        assert!(h.contains_edge(&[5, 0, 1]));
        assert_eq!(h.edge_count(), 3);
    }

    #[test]
    fn ell_paths() {
        let p = build_ell_path(5, 3, 1).unwrap();
        assert_eq!(p.edges(), &[vec![0, 1, 2], vec![2, 3, 4]]);
        let single = build_ell_path(3, 3, 1).unwrap();
        assert_eq!(single.edges(), &[vec![0, 1, 2]]);
        let tight = build_ell_path(7, 3, 2).unwrap();
        assert_eq!(tight.edge_count(), 5);
        for i in 0..5u32 {
            assert!(tight.contains_edge(&[i, i + 1, i + 2]));
        }
        assert!(build_ell_path(4, 3, 1).is_err());
    }

    #[test]
    fn f_param_values() {
        assert_eq!(f_param(3, 1), 3);
        assert_eq!(f_param(3, 2), 4);
        assert_eq!(f_param(2, 1), 3);
    }

    #[test]
    fn path_divisibility() {
        assert!(is_path_divisible(5, 3, 1));
        assert!(is_path_divisible(5, 3, 2));
        assert!(is_internal_path_divisible(5, 3, 2));
        assert!(!is_path_divisible(4, 3, 1));
    }

    #[test]
    fn densities() {
        let single = build_ell_path(3, 3, 1).unwrap();
        assert_eq!(one_density(&single).unwrap(), ratio(1, 2));
        assert!(is_strictly_one_balanced(&single).unwrap());

        let tight = build_ell_cycle(&EllCycleSpec::new(6, 3, 2)).unwrap();
        assert_eq!(m1(&tight).unwrap(), ratio(6, 5));

        let k4 = Hypergraph::complete(4, 2);
        assert_eq!(one_density(&k4).unwrap(), ratio(2, 1));
        assert!(is_strictly_one_balanced(&k4).unwrap());
    }

    #[test]
    fn density_cap_is_hard() {
        let h = Hypergraph::complete(7, 2); // 21 edges > 16
        assert!(matches!(m1(&h), Err(Error::Capacity { .. })));
    }

    #[test]
    fn embedding_checks() {
        let k4 = Hypergraph::complete(4, 2);
        let id = Embedding::new(vec![0, 1, 2, 3]);
        assert!(is_embedding(&k4, &k4, &id));

        let c631 = build_ell_cycle(&EllCycleSpec::new(6, 3, 1)).unwrap();
        let host = Hypergraph::complete(6, 3);
        assert!(is_embedding(&c631, &host, &Embedding::new(vec![3, 1, 4, 0, 5, 2])));

        let collapsing = Embedding::new(vec![0, 0, 1, 2]);
        assert!(!is_embedding(&k4, &k4, &collapsing));
    }

    #[test]
    fn cycle_edge_count_and_degree_shape() {
        for k in 2..=4usize {
            for ell in 0..k {
                let stride = k - ell;
                for n in (k + 1..=12).filter(|n| n % stride == 0) {
                    let h = build_ell_cycle(&EllCycleSpec::new(n, k, ell)).unwrap();
                    assert_eq!(h.edge_count(), n / stride, "n={n} k={k} ell={ell}");
                    let lo = k / stride;
                    let hi = k.div_ceil(stride);
                    assert!(
                        h.vertex_degrees().iter().all(|&d| d == lo || d == hi),
                        "degrees out of shape for n={n} k={k} ell={ell}"
                    );
                }
            }
        }
    }

    #[test]
    fn complete_min_degree_formula_exhaustive() {
        for k in 2..=4usize {
            for n in k..=8usize {
                let h = Hypergraph::complete(n, k);
                for d in 1..k {
                    assert_eq!(
                        h.min_d_degree(d).unwrap() as u128,
                        binom(n - d, k - d),
                        "K_{n}^({k}), d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn m1_formula_for_cycles() {
        // m1(C_{n,k,ℓ}) = n / ((k−ℓ)(n−1)) for ℓ ≥ 1
        for k in 2..=4usize {
            for ell in 1..k {
                let stride = k - ell;
                for n in (k + 1..=10).filter(|n| n % stride == 0) {
                    let h = build_ell_cycle(&EllCycleSpec::new(n, k, ell)).unwrap();
                    assert_eq!(
                        m1(&h).unwrap(),
                        ratio(n as i64, (stride * (n - 1)) as i64),
                        "n={n} k={k} ell={ell}"
                    );
                }
            }
        }
    }

    #[test]
    fn circulant_degrees() {
        let h = Hypergraph::circulant(16, &[4, 5, 6, 7]).unwrap();
        assert!(h.vertex_degrees().iter().all(|&d| d == 8));
    }

    #[test]
    fn multi_edges_kept_when_flagged() {
        let edges = vec![vec![0, 1, 2], vec![2, 1, 0]];
        let multi = Hypergraph::new(4, 3, edges.clone(), true).unwrap();
        assert_eq!(multi.edge_count(), 2);
        let simple = Hypergraph::new(4, 3, edges, false).unwrap();
        assert_eq!(simple.edge_count(), 1);
    }
}
