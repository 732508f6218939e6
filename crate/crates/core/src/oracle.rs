//! Exhaustive brute-force enumerators and randomized single-solution
//! searches: Hamilton ℓ-cycles, ℓ-paths with prescribed endpoints, F-factor
//! decompositions, partial-embedding and cycle-subgraph counts.
//!
//! All searches are plain backtracking; cluster sizes are constants, so the
//! exponential work is confined to O(1)-size instances. Passing an RNG
//! shuffles the branching order, which makes the returned solution a random
//! element of the solution set (uniformity over solutions is NOT claimed).
//! Without an RNG the branching is lexicographic and deterministic.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{binom, is_path_divisible, Hypergraph, Vertex};

/// Hard enumeration caps. Exceeding a cap is an error, never a silent
/// truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    /// Cap for full enumeration (`all_*` operations).
    pub enumeration_n: usize,
    /// Cap for single-solution searches inside clusters.
    pub search_n: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self {
            enumeration_n: 14,
            search_n: 24,
        }
    }
}

type Rng<'a> = Option<&'a mut ChaCha12Rng>;

fn maybe_shuffle<T>(v: &mut [T], rng: &mut Rng<'_>) {
    if let Some(r) = rng {
        v.shuffle(&mut **r);
    }
}

/// The edge sets of the Hamilton ℓ-cycle given by a cyclic vertex order:
/// windows of length k at stride k−ℓ, including the wrapping ones.
pub fn cycle_edges_of_order(seq: &[Vertex], k: usize, ell: usize) -> Vec<Vec<Vertex>> {
    let n = seq.len();
    let stride = k - ell;
    debug_assert_eq!(n % stride, 0);
    (0..n / stride)
        .map(|i| {
            let mut e: Vec<Vertex> = (0..k).map(|j| seq[(i * stride + j) % n]).collect();
            e.sort_unstable();
            e
        })
        .collect()
}

/// The edges of an ℓ-path given by its vertex order.
pub fn path_edges_of_order(seq: &[Vertex], k: usize, ell: usize) -> Vec<Vec<Vertex>> {
    let stride = k - ell;
    debug_assert!(seq.len() >= k && (seq.len() - ell) % stride == 0);
    (0..(seq.len() - ell) / stride)
        .map(|i| {
            let mut e: Vec<Vertex> = seq[i * stride..i * stride + k].to_vec();
            e.sort_unstable();
            e
        })
        .collect()
}

struct CycleSearch<'a> {
    h: &'a Hypergraph,
    k: usize,
    stride: usize,
    n: usize,
    seq: Vec<Vertex>,
    used: Vec<bool>,
}

impl<'a> CycleSearch<'a> {
    fn new(h: &'a Hypergraph, ell: usize) -> Self {
        let n = h.n();
        Self {
            h,
            k: h.k(),
            stride: h.k() - ell,
            n,
            seq: alloc::vec![0; n],
            used: alloc::vec![false; n],
        }
    }

    fn window_ok(&self, w: usize) -> bool {
        let mut e: Vec<Vertex> = (0..self.k).map(|j| self.seq[(w + j) % self.n]).collect();
        e.sort_unstable();
        self.h.contains_sorted_edge(&e)
    }

    fn wrap_windows_ok(&self) -> bool {
        let mut w = 0;
        while w < self.n {
            if w + self.k > self.n && !self.window_ok(w) {
                return false;
            }
            w += self.stride;
        }
        true
    }

    /// Fill positions `p..n`, calling `on_solution` for every completed
    /// cyclic order. Position `pin_pos` (if < n) is fixed by the driver.
    /// `on_solution` returns true to stop the whole search.
    fn fill(
        &mut self,
        p: usize,
        pin_pos: usize,
        rng: &mut Rng<'_>,
        on_solution: &mut impl FnMut(&[Vertex]) -> bool,
    ) -> bool {
        if p == self.n {
            return self.wrap_windows_ok() && on_solution(&self.seq);
        }
        if p == pin_pos {
            return self.check_and_descend(p, pin_pos, rng, on_solution);
        }
        let mut cands: Vec<Vertex> = (0..self.n as Vertex).filter(|&v| !self.used[v as usize]).collect();
        maybe_shuffle(&mut cands, rng);
        for v in cands {
            self.seq[p] = v;
            self.used[v as usize] = true;
            let ok = self.check_and_descend(p, pin_pos, rng, on_solution);
            self.used[v as usize] = false;
            if ok {
                return true;
            }
        }
        false
    }

    fn check_and_descend(
        &mut self,
        p: usize,
        pin_pos: usize,
        rng: &mut Rng<'_>,
        on_solution: &mut impl FnMut(&[Vertex]) -> bool,
    ) -> bool {
        if p + 1 >= self.k && (p + 1 - self.k) % self.stride == 0 && !self.window_ok(p + 1 - self.k) {
            return false;
        }
        self.fill(p + 1, pin_pos, rng, on_solution)
    }
}

fn cycle_preconditions(h: &Hypergraph, ell: usize) -> Result<usize> {
    let k = h.k();
    if ell >= k {
        return Err(Error::Parameter("cycle overlap ℓ must satisfy 0 ≤ ℓ < k"));
    }
    let stride = k - ell;
    if h.n() % stride != 0 {
        return Err(Error::Divisibility("k−ℓ must divide n for a Hamilton ℓ-cycle"));
    }
    Ok(stride)
}

/// A cheap necessary condition: every vertex of a Hamilton ℓ-cycle lies in
/// at least ⌊k/(k−ℓ)⌋ cycle edges.
fn degree_prune(h: &Hypergraph, stride: usize) -> bool {
    let need = h.k() / stride;
    h.vertex_degrees().iter().all(|&d| d >= need)
}

/// Every Hamilton ℓ-cycle of `h`, each reported once as a sorted set of
/// edges, in deterministic (lexicographic) order.
pub fn all_hamilton_ell_cycles(h: &Hypergraph, ell: usize, caps: &OracleCaps) -> Result<Vec<Vec<Vec<Vertex>>>> {
    let stride = cycle_preconditions(h, ell)?;
    if h.n() > caps.enumeration_n {
        return Err(Error::Capacity {
            context: "Hamilton cycle enumeration",
            cap: caps.enumeration_n,
            got: h.n(),
        });
    }
    if h.n() < h.k() || !degree_prune(h, stride) {
        return Ok(Vec::new());
    }
    let mut seen: BTreeSet<Vec<Vec<Vertex>>> = BTreeSet::new();
    // Rotating by k−ℓ preserves the edge set, so vertex 0 can always be
    // brought to one of the first k−ℓ positions.
    for pin in 0..stride {
        let mut s = CycleSearch::new(h, ell);
        s.seq[pin] = 0;
        s.used[0] = true;
        s.fill(0, pin, &mut None, &mut |seq| {
            let mut edges = cycle_edges_of_order(seq, h.k(), ell);
            edges.sort_unstable();
            seen.insert(edges);
            false
        });
    }
    Ok(seen.into_iter().collect())
}

/// One Hamilton ℓ-cycle of `h` as a cyclic vertex order, or None. With an
/// RNG the branching is shuffled, so repeated calls randomize over cyclic
/// orders; without one the search is deterministic (used for decisions).
pub fn find_hamilton_ell_cycle(
    h: &Hypergraph,
    ell: usize,
    caps: &OracleCaps,
    mut rng: Rng<'_>,
) -> Result<Option<Vec<Vertex>>> {
    let stride = cycle_preconditions(h, ell)?;
    if h.n() > caps.search_n {
        return Err(Error::Capacity {
            context: "Hamilton cycle search",
            cap: caps.search_n,
            got: h.n(),
        });
    }
    if h.n() < h.k() || h.edge_count() < h.n() / stride || !degree_prune(h, stride) {
        return Ok(None);
    }
    let mut found: Option<Vec<Vertex>> = None;
    if rng.is_some() {
        // no pinning: the returned cyclic order itself should be spread
        let mut s = CycleSearch::new(h, ell);
        s.fill(0, h.n(), &mut rng, &mut |seq| {
            found = Some(seq.to_vec());
            true
        });
    } else {
        for pin in 0..stride {
            let mut s = CycleSearch::new(h, ell);
            s.seq[pin] = 0;
            s.used[0] = true;
            s.fill(0, pin, &mut None, &mut |seq| {
                found = Some(seq.to_vec());
                true
            });
            if found.is_some() {
                break;
            }
        }
    }
    Ok(found)
}

/// An ℓ-path query: span `vertices` (or lay down `required_edges` edges)
/// starting with the ordered ℓ-sequence `start` and, if given, ending with
/// the ordered ℓ-sequence `end`.
///
/// Endpoint sequences are ordered because the embedding pipeline glues
/// paths on shared ℓ-sets: for 2ℓ > k the internal order changes the edge
/// set of the glued cycle.
#[derive(Clone, Debug)]
pub struct PathQuery {
    pub vertices: Vec<Vertex>,
    pub ell: usize,
    pub start: Vec<Vertex>,
    pub end: Option<Vec<Vertex>>,
    pub required_edges: Option<usize>,
}

impl PathQuery {
    /// Spanning (Hamilton) ℓ-path on `vertices` with prescribed endpoint
    /// sequences.
    pub fn spanning(vertices: Vec<Vertex>, ell: usize, start: Vec<Vertex>, end: Vec<Vertex>) -> Self {
        Self {
            vertices,
            ell,
            start,
            end: Some(end),
            required_edges: None,
        }
    }

    /// Length-limited ℓ-path: exactly `edges` edges, free far endpoint.
    pub fn rooted(vertices: Vec<Vertex>, ell: usize, start: Vec<Vertex>, edges: usize) -> Self {
        Self {
            vertices,
            ell,
            start,
            end: None,
            required_edges: Some(edges),
        }
    }
}

/// Backtracking search for an ℓ-path satisfying `q`. Returns the vertex
/// order, or None (a normal outcome, not an error).
pub fn find_ell_path_with_endpoints(
    h: &Hypergraph,
    q: &PathQuery,
    mut rng: Rng<'_>,
) -> Result<Option<Vec<Vertex>>> {
    let k = h.k();
    let ell = q.ell;
    if ell < 1 || ell >= k {
        return Err(Error::Parameter("path overlap ℓ must satisfy 1 ≤ ℓ < k"));
    }
    let stride = k - ell;
    let mut verts = q.vertices.clone();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() != q.vertices.len() {
        return Err(Error::Parameter("path query vertex set has duplicates"));
    }
    let in_set = |v: &Vertex| verts.binary_search(v).is_ok();
    if q.start.len() != ell || !q.start.iter().all(in_set) {
        return Err(Error::Parameter("start sequence must be an ℓ-subset of the query vertices"));
    }
    if let Some(end) = &q.end {
        if end.len() != ell || !end.iter().all(in_set) {
            return Err(Error::Parameter("end sequence must be an ℓ-subset of the query vertices"));
        }
        if end.iter().any(|v| q.start.contains(v)) {
            return Err(Error::Parameter("start and end sequences must be disjoint"));
        }
    }
    let total = match q.required_edges {
        Some(s) => {
            let t = s * stride + ell;
            if t > verts.len() {
                return Err(Error::Parameter("required path length exceeds the query vertex set"));
            }
            t
        }
        None => {
            if !is_path_divisible(verts.len(), k, ell) {
                return Err(Error::Divisibility("spanning ℓ-path needs k−ℓ | (|S|−ℓ)"));
            }
            verts.len()
        }
    };
    if total < k {
        // a path with zero edges is only the degenerate ℓ-set itself
        return Err(Error::Parameter("path must have at least one edge"));
    }

    let mut seq: Vec<Vertex> = alloc::vec![0; total];
    let mut used: BTreeSet<Vertex> = BTreeSet::new();
    for (i, &v) in q.start.iter().enumerate() {
        seq[i] = v;
        if !used.insert(v) {
            return Err(Error::Parameter("start sequence has duplicates"));
        }
    }
    let end_positions_from = total - ell;
    let reserved: BTreeSet<Vertex> = q.end.iter().flatten().copied().collect();

    fn window_ok(h: &Hypergraph, seq: &[Vertex], w: usize, k: usize) -> bool {
        let mut e = seq[w..w + k].to_vec();
        e.sort_unstable();
        h.contains_sorted_edge(&e)
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        h: &Hypergraph,
        verts: &[Vertex],
        seq: &mut Vec<Vertex>,
        used: &mut BTreeSet<Vertex>,
        reserved: &BTreeSet<Vertex>,
        end: Option<&[Vertex]>,
        end_from: usize,
        p: usize,
        k: usize,
        stride: usize,
        rng: &mut Rng<'_>,
    ) -> bool {
        let total = seq.len();
        if p == total {
            return true;
        }
        let mut cands: Vec<Vertex> = if p >= end_from {
            let v = end.expect("end positions occur only with a prescribed end")[p - end_from];
            if used.contains(&v) {
                return false;
            }
            alloc::vec![v]
        } else {
            verts
                .iter()
                .copied()
                .filter(|v| !used.contains(v) && !reserved.contains(v))
                .collect()
        };
        maybe_shuffle(&mut cands, rng);
        for v in cands {
            seq[p] = v;
            used.insert(v);
            let window_fine = p + 1 < k
                || (p + 1 - k) % stride != 0
                || window_ok(h, seq, p + 1 - k, k);
            if window_fine
                && go(h, verts, seq, used, reserved, end, end_from, p + 1, k, stride, rng)
            {
                used.remove(&v);
                return true;
            }
            used.remove(&v);
        }
        false
    }

    let found = go(
        h,
        &verts,
        &mut seq,
        &mut used,
        &reserved,
        q.end.as_deref(),
        if q.end.is_some() { end_positions_from } else { total },
        ell,
        k,
        stride,
        &mut rng,
    );
    Ok(found.then_some(seq))
}

/// One block of an F-factor: `vertices` sorted, and a labeling where
/// `labeling[i]` is the host vertex playing F-vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorBlock {
    pub vertices: Vec<Vertex>,
    pub labeling: Vec<Vertex>,
}

/// All edge-preserving bijections from V(F) onto `block` (F-edges must land
/// on host edges).
pub fn block_labelings(h: &Hypergraph, f: &Hypergraph, block: &[Vertex]) -> Vec<Vec<Vertex>> {
    let r = f.n();
    debug_assert_eq!(block.len(), r);
    let mut out = Vec::new();
    let mut assign: Vec<Vertex> = alloc::vec![u32::MAX; r];
    let mut used = alloc::vec![false; r];
    fn go(
        h: &Hypergraph,
        f: &Hypergraph,
        block: &[Vertex],
        assign: &mut Vec<Vertex>,
        used: &mut Vec<bool>,
        i: usize,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let r = f.n();
        if i == r {
            out.push(assign.clone());
            return;
        }
        for b in 0..r {
            if used[b] {
                continue;
            }
            assign[i] = block[b];
            used[b] = true;
            let ok = f.edges().iter().all(|e| {
                if e.iter().any(|&v| v as usize > i) {
                    return true; // not fully assigned yet
                }
                let mapped: Vec<Vertex> = e.iter().map(|&v| assign[v as usize]).collect();
                h.contains_edge(&mapped)
            });
            if ok {
                go(h, f, block, assign, used, i + 1, out);
            }
            used[b] = false;
        }
        assign[i] = u32::MAX;
    }
    go(h, f, block, &mut assign, &mut used, 0, &mut out);
    out
}

fn factor_preconditions(h: &Hypergraph, f: &Hypergraph, count: usize) -> Result<usize> {
    if f.k() != h.k() {
        return Err(Error::Parameter("factor template must have the host's uniformity"));
    }
    let r = f.n();
    if r == 0 || f.edge_count() == 0 {
        return Err(Error::Parameter("factor template must have at least one edge"));
    }
    if count % r != 0 {
        return Err(Error::Divisibility("|V(F)| must divide the queried vertex count"));
    }
    Ok(r)
}

fn factor_search(
    h: &Hypergraph,
    f: &Hypergraph,
    avail: &[Vertex],
    rng: &mut Rng<'_>,
    all: bool,
    out: &mut Vec<Vec<FactorBlock>>,
) {
    let r = f.n();
    fn go(
        h: &Hypergraph,
        f: &Hypergraph,
        r: usize,
        remaining: &mut Vec<Vertex>,
        blocks: &mut Vec<FactorBlock>,
        rng: &mut Rng<'_>,
        all: bool,
        out: &mut Vec<Vec<FactorBlock>>,
    ) -> bool {
        if remaining.is_empty() {
            out.push(blocks.clone());
            return !all;
        }
        let anchor = remaining[0];
        let pool: Vec<Vertex> = remaining[1..].to_vec();
        // choose r−1 companions for the anchor
        let mut combos: Vec<Vec<Vertex>> = Vec::new();
        combinations(&pool, r - 1, &mut Vec::new(), &mut combos);
        maybe_shuffle(&mut combos, rng);
        for companions in combos {
            let mut block: Vec<Vertex> = companions.clone();
            block.push(anchor);
            block.sort_unstable();
            let mut labelings = block_labelings(h, f, &block);
            if labelings.is_empty() {
                continue;
            }
            maybe_shuffle(&mut labelings, rng);
            let labeling = labelings.into_iter().next().expect("nonempty");
            let next: Vec<Vertex> = remaining
                .iter()
                .copied()
                .filter(|v| !block.contains(v))
                .collect();
            blocks.push(FactorBlock {
                vertices: block,
                labeling,
            });
            let mut next = next;
            let stop = go(h, f, r, &mut next, blocks, rng, all, out);
            blocks.pop();
            if stop {
                return true;
            }
        }
        false
    }
    let mut remaining = avail.to_vec();
    let mut blocks = Vec::new();
    go(h, f, r, &mut remaining, &mut blocks, rng, all, out);
}

fn combinations(pool: &[Vertex], take: usize, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
    if cur.len() == take {
        out.push(cur.clone());
        return;
    }
    let need = take - cur.len();
    for (i, &v) in pool.iter().enumerate() {
        if pool.len() - i < need {
            break;
        }
        cur.push(v);
        combinations(&pool[i + 1..], take, cur, out);
        cur.pop();
    }
}

/// All partitions of V(H) into blocks each carrying a spanning copy of F,
/// in deterministic order. Each block records one witness labeling.
pub fn all_f_factors(h: &Hypergraph, f: &Hypergraph, caps: &OracleCaps) -> Result<Vec<Vec<FactorBlock>>> {
    factor_preconditions(h, f, h.n())?;
    if h.n() > caps.enumeration_n {
        return Err(Error::Capacity {
            context: "F-factor enumeration",
            cap: caps.enumeration_n,
            got: h.n(),
        });
    }
    let avail: Vec<Vertex> = (0..h.n() as Vertex).collect();
    let mut out = Vec::new();
    factor_search(h, f, &avail, &mut None, true, &mut out);
    Ok(out)
}

/// A random F-factor of `H[subset]`, or None. The exact-cover backtracking
/// explores blocks and labelings in rng-shuffled order.
pub fn find_f_factor(
    h: &Hypergraph,
    subset: &[Vertex],
    f: &Hypergraph,
    mut rng: Rng<'_>,
    caps: &OracleCaps,
) -> Result<Option<Vec<FactorBlock>>> {
    factor_preconditions(h, f, subset.len())?;
    if subset.len() > caps.search_n {
        return Err(Error::Capacity {
            context: "F-factor search",
            cap: caps.search_n,
            got: subset.len(),
        });
    }
    let mut avail = subset.to_vec();
    avail.sort_unstable();
    let mut out = Vec::new();
    factor_search(h, f, &avail, &mut rng, false, &mut out);
    Ok(out.into_iter().next())
}

/// The number of injections of V(F_sub) into V(G) under which every edge of
/// F_sub lands on an edge of G — the partial-embedding count bounded by
/// n^c (kΔ(G))^{v−c}.
pub fn count_partial_embeddings(g: &Hypergraph, f_sub: &Hypergraph, caps: &OracleCaps) -> Result<u128> {
    if f_sub.edge_count() > 0 && f_sub.k() != g.k() {
        return Err(Error::Parameter("partial-embedding count needs matching uniformities"));
    }
    if f_sub.n() > caps.enumeration_n || g.n() > caps.enumeration_n {
        return Err(Error::Capacity {
            context: "partial-embedding enumeration",
            cap: caps.enumeration_n,
            got: f_sub.n().max(g.n()),
        });
    }
    let v = f_sub.n();
    if v == 0 {
        return Ok(1);
    }
    if v > g.n() {
        return Ok(0);
    }
    // connected order within each component for early edge checks
    let order = connected_order(f_sub);
    let mut assign: Vec<Vertex> = alloc::vec![u32::MAX; v];
    let mut used = alloc::vec![false; g.n()];
    fn go(
        g: &Hypergraph,
        f_sub: &Hypergraph,
        order: &[usize],
        oi: usize,
        assign: &mut Vec<Vertex>,
        used: &mut Vec<bool>,
    ) -> u128 {
        if oi == order.len() {
            return 1;
        }
        let fv = order[oi];
        let mut total = 0u128;
        for gv in 0..g.n() as Vertex {
            if used[gv as usize] {
                continue;
            }
            assign[fv] = gv;
            used[gv as usize] = true;
            let ok = f_sub.edges().iter().all(|e| {
                if e.iter().any(|&x| assign[x as usize] == u32::MAX) {
                    return true;
                }
                let mapped: Vec<Vertex> = e.iter().map(|&x| assign[x as usize]).collect();
                g.contains_edge(&mapped)
            });
            if ok {
                total += go(g, f_sub, order, oi + 1, assign, used);
            }
            used[gv as usize] = false;
            assign[fv] = u32::MAX;
        }
        total
    }
    Ok(go(g, f_sub, &order, 0, &mut assign, &mut used))
}

/// Vertices of `h` ordered so that within each component every vertex after
/// the first shares an edge with an earlier one.
fn connected_order(h: &Hypergraph) -> Vec<usize> {
    let n = h.n();
    let mut seen = alloc::vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        order.push(root);
        let mut frontier = alloc::vec![root];
        while let Some(u) = frontier.pop() {
            for e in h.edges() {
                if e.binary_search(&(u as Vertex)).is_ok() {
                    for &w in e {
                        if !seen[w as usize] {
                            seen[w as usize] = true;
                            order.push(w as usize);
                            frontier.push(w as usize);
                        }
                    }
                }
            }
        }
    }
    order
}

/// Number of subgraphs of C_{n,k,ℓ} with exactly `t` edges, all drawn from
/// the edge subset `s` (indices into the cycle's canonical edge order), no
/// isolated vertices, and exactly `c` components.
pub fn count_cycle_subgraphs(
    cycle: &Hypergraph,
    s: &[usize],
    t: usize,
    c: usize,
) -> Result<u64> {
    if s.iter().any(|&i| i >= cycle.edge_count()) {
        return Err(Error::Parameter("edge index out of range"));
    }
    if t == 0 {
        return Ok(u64::from(c == 0));
    }
    if t > s.len() {
        return Ok(0);
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(t);
    let mut count = 0u64;
    fn components(cycle: &Hypergraph, chosen: &[usize]) -> usize {
        let mut verts: BTreeSet<Vertex> = BTreeSet::new();
        let mut uf: alloc::collections::BTreeMap<Vertex, Vertex> = alloc::collections::BTreeMap::new();
        fn find(uf: &mut alloc::collections::BTreeMap<Vertex, Vertex>, v: Vertex) -> Vertex {
            let p = uf[&v];
            if p == v {
                v
            } else {
                let r = find(uf, p);
                uf.insert(v, r);
                r
            }
        }
        for &ei in chosen {
            for &v in &cycle.edges()[ei] {
                verts.insert(v);
                uf.entry(v).or_insert(v);
            }
        }
        for &ei in chosen {
            let e = &cycle.edges()[ei];
            let r0 = find(&mut uf, e[0]);
            for &v in &e[1..] {
                let rv = find(&mut uf, v);
                if rv != r0 {
                    uf.insert(rv, r0);
                }
            }
        }
        let roots: BTreeSet<Vertex> = verts.iter().map(|&v| find(&mut uf, v)).collect();
        roots.len()
    }
    fn go(
        cycle: &Hypergraph,
        s: &[usize],
        from: usize,
        t: usize,
        c: usize,
        chosen: &mut Vec<usize>,
        count: &mut u64,
    ) {
        if chosen.len() == t {
            if components(cycle, chosen) == c {
                *count += 1;
            }
            return;
        }
        let need = t - chosen.len();
        for i in from..s.len() {
            if s.len() - i < need {
                break;
            }
            chosen.push(s[i]);
            go(cycle, s, i + 1, t, c, chosen, count);
            chosen.pop();
        }
    }
    go(cycle, s, 0, t, c, &mut chosen, &mut count);
    Ok(count)
}

/// The bound of the cycle-subgraph counting lemma: C(k|S|, c)·(2·16^k)^t,
/// saturating at u128::MAX.
pub fn cycle_subgraph_bound(k: usize, s_len: usize, t: usize, c: usize) -> u128 {
    let base = 2u128.saturating_mul(16u128.saturating_pow(k as u32));
    binom(k * s_len, c).saturating_mul(base.saturating_pow(t as u32))
}

/// The partial-embedding bound n^c (kΔ(G))^{v−c}, saturating at u128::MAX.
pub fn partial_embedding_bound(n: usize, k: usize, max_deg: usize, v: usize, c: usize) -> u128 {
    (n as u128)
        .saturating_pow(c as u32)
        .saturating_mul(((k * max_deg) as u128).saturating_pow((v - c) as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{build_ell_cycle, build_ell_path, EllCycleSpec};
    use crate::rng::derive;

    #[test]
    fn k4_has_three_hamilton_cycles() {
        let k4 = Hypergraph::complete(4, 2);
        let cycles = all_hamilton_ell_cycles(&k4, 1, &OracleCaps::default()).unwrap();
        assert_eq!(cycles.len(), 3); // (4−1)!/2
    }

    #[test]
    fn loose_cycle_is_its_own_unique_hamilton_cycle() {
        let c = build_ell_cycle(&EllCycleSpec::new(6, 3, 1)).unwrap();
        let cycles = all_hamilton_ell_cycles(&c, 1, &OracleCaps::default()).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0], c.edges().to_vec());
    }

    #[test]
    fn complete_k6_loose_count_matches_automorphism_formula() {
        // independent oracle: count automorphisms of C_{6,3,1} by brute
        // force over all 720 vertex permutations, then check
        //   #cycles * aut = 6!
        let host = Hypergraph::complete(6, 3);
        let cycles = all_hamilton_ell_cycles(&host, 1, &OracleCaps::default()).unwrap();
        let template = build_ell_cycle(&EllCycleSpec::new(6, 3, 1)).unwrap();
        let mut aut = 0usize;
        let mut perm: Vec<Vertex> = (0..6).collect();
        loop {
            let emb = crate::hypergraph::Embedding::new(perm.clone());
            if crate::hypergraph::is_embedding(&template, &template, &emb) {
                aut += 1;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        assert_eq!(cycles.len() * aut, 720);
    }

    fn next_permutation(p: &mut [Vertex]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn cap_is_enforced() {
        let big = Hypergraph::complete(15, 2);
        assert!(matches!(
            all_hamilton_ell_cycles(&big, 1, &OracleCaps::default()),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn identity_path_found() {
        let p = build_ell_path(5, 3, 1).unwrap();
        let q = PathQuery::spanning((0..5).collect(), 1, alloc::vec![0], alloc::vec![4]);
        let seq = find_ell_path_with_endpoints(&p, &q, None).unwrap().unwrap();
        assert_eq!(seq.first(), Some(&0));
        assert_eq!(seq.last(), Some(&4));
        for e in path_edges_of_order(&seq, 3, 1) {
            assert!(p.contains_edge(&e));
        }
    }

    #[test]
    fn dense_tight_path_with_any_endpoints() {
        let host = Hypergraph::complete(7, 3);
        let mut rng = derive(11, "test", 0);
        let q = PathQuery::spanning((0..7).collect(), 2, alloc::vec![0, 1], alloc::vec![5, 6]);
        let seq = find_ell_path_with_endpoints(&host, &q, Some(&mut rng)).unwrap().unwrap();
        assert_eq!(&seq[0..2], &[0, 1]);
        assert_eq!(&seq[5..7], &[5, 6]);
        let all: BTreeSet<Vertex> = seq.iter().copied().collect();
        assert_eq!(all.len(), 7);
    }

    #[test]
    fn empty_host_path_not_found() {
        let host = Hypergraph::empty(5, 3);
        let q = PathQuery::spanning((0..5).collect(), 1, alloc::vec![0], alloc::vec![4]);
        assert_eq!(find_ell_path_with_endpoints(&host, &q, None).unwrap(), None);
    }

    #[test]
    fn rooted_path_has_requested_length() {
        let host = Hypergraph::complete(9, 3);
        let mut rng = derive(3, "test", 1);
        let q = PathQuery::rooted((0..9).collect(), 1, alloc::vec![4], 3);
        let seq = find_ell_path_with_endpoints(&host, &q, Some(&mut rng)).unwrap().unwrap();
        assert_eq!(seq.len(), 3 * 2 + 1);
        assert_eq!(seq[0], 4);
    }

    #[test]
    fn two_disjoint_triangles_have_one_factor() {
        let h = Hypergraph::new(6, 2, alloc::vec![
            alloc::vec![0, 1], alloc::vec![1, 2], alloc::vec![0, 2],
            alloc::vec![3, 4], alloc::vec![4, 5], alloc::vec![3, 5],
        ], false).unwrap();
        let triangle = Hypergraph::complete(3, 2);
        let sols = all_f_factors(&h, &triangle, &OracleCaps::default()).unwrap();
        assert_eq!(sols.len(), 1);
    }

    #[test]
    fn k6_triangle_factors() {
        let h = Hypergraph::complete(6, 2);
        let triangle = Hypergraph::complete(3, 2);
        let sols = all_f_factors(&h, &triangle, &OracleCaps::default()).unwrap();
        assert_eq!(sols.len(), 10); // C(6,3)/2 partitions, all present in K6
    }

    #[test]
    fn k6_3_perfect_matchings() {
        let h = Hypergraph::complete(6, 3);
        let edge = Hypergraph::complete(3, 3);
        let sols = all_f_factors(&h, &edge, &OracleCaps::default()).unwrap();
        assert_eq!(sols.len(), 10);
    }

    #[test]
    fn factor_divisibility_error() {
        let h = Hypergraph::complete(5, 2);
        let triangle = Hypergraph::complete(3, 2);
        assert!(matches!(
            all_f_factors(&h, &triangle, &OracleCaps::default()),
            Err(Error::Divisibility(_))
        ));
    }

    #[test]
    fn partial_embedding_counts() {
        let g = build_ell_cycle(&EllCycleSpec::new(6, 3, 1)).unwrap();
        let single_edge = Hypergraph::new(3, 3, alloc::vec![alloc::vec![0, 1, 2]], false).unwrap();
        // 3 edges × 3! orderings
        assert_eq!(count_partial_embeddings(&g, &single_edge, &OracleCaps::default()).unwrap(), 18);

        let empty = Hypergraph::empty(0, 3);
        assert_eq!(count_partial_embeddings(&g, &empty, &OracleCaps::default()).unwrap(), 1);

        let g8 = build_ell_cycle(&EllCycleSpec::new(8, 3, 1)).unwrap();
        let two_disjoint = Hypergraph::new(
            6,
            3,
            alloc::vec![alloc::vec![0, 1, 2], alloc::vec![3, 4, 5]],
            false,
        )
        .unwrap();
        let count = count_partial_embeddings(&g8, &two_disjoint, &OracleCaps::default()).unwrap();
        assert_eq!(count, 144); // 4 ordered disjoint edge pairs × (3!)²
        assert!(count <= partial_embedding_bound(8, 3, g8.max_degree(), 6, 2));
    }

    #[test]
    fn cycle_subgraph_counts() {
        let c8 = build_ell_cycle(&EllCycleSpec::new(8, 3, 1)).unwrap();
        let all: Vec<usize> = (0..c8.edge_count()).collect();
        // t=1, c=1 → |S|
        assert_eq!(count_cycle_subgraphs(&c8, &all, 1, 1).unwrap(), all.len() as u64);
        // t=2, c=2 → vertex-disjoint pairs: {0,1,2}&{4,5,6}, {2,3,4}&{6,7,0}
        assert_eq!(count_cycle_subgraphs(&c8, &all, 2, 2).unwrap(), 2);
        // t=0 → 1 iff c=0
        assert_eq!(count_cycle_subgraphs(&c8, &all, 0, 0).unwrap(), 1);
        assert_eq!(count_cycle_subgraphs(&c8, &all, 0, 1).unwrap(), 0);
    }

    #[test]
    fn decision_equivalence_on_small_instances() {
        // single-solution search finds a Hamilton ℓ-cycle iff exhaustive
        // enumeration does
        let caps = OracleCaps::default();
        let mut rng = derive(99, "equiv", 0);
        for trial in 0..40u64 {
            let p = 0.3 + 0.05 * (trial % 10) as f64;
            let h = Hypergraph::random_uniform(8, 3, p, &mut rng);
            for ell in [1usize, 2] {
                let all = all_hamilton_ell_cycles(&h, ell, &caps).unwrap();
                let one = find_hamilton_ell_cycle(&h, ell, &caps, None).unwrap();
                assert_eq!(all.is_empty(), one.is_none(), "trial {trial} ell {ell}");
                if let Some(seq) = one {
                    let mut edges = cycle_edges_of_order(&seq, 3, ell);
                    edges.sort_unstable();
                    assert!(all.contains(&edges));
                }
            }
        }
    }
}
