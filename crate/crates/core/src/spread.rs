//! Monte-Carlo spread estimation: vertex-spread probes over embedding
//! samplers, push-forward edge-spread, restricted Spiro-spread checks, and
//! support-size measurements via canonical output forms.
//!
//! All intervals are Wilson score intervals at 99%; acceptance logic
//! upstream compares the upper confidence bound against its target, never
//! the point estimate.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{Embedding, Vertex};

/// Two-sided 99% normal quantile used by all Wilson intervals.
pub const Z99: f64 = 2.575_829_303_548_901;

/// Wilson score interval for `hits` successes in `trials` Bernoulli trials.
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let spread = z * libm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    (
        ((center - spread) / denom).max(0.0),
        ((center + spread) / denom).min(1.0),
    )
}

/// A vertex-spread probe: require ψ(x_i) = y_i for every listed pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpreadProbe {
    pub pairs: Vec<(Vertex, Vertex)>,
}

impl SpreadProbe {
    pub fn new(pairs: Vec<(Vertex, Vertex)>) -> Result<Self> {
        let mut xs: Vec<Vertex> = pairs.iter().map(|p| p.0).collect();
        let mut ys: Vec<Vertex> = pairs.iter().map(|p| p.1).collect();
        xs.sort_unstable();
        ys.sort_unstable();
        if xs.windows(2).any(|w| w[0] == w[1]) || ys.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parameter("probe sides must each be distinct"));
        }
        Ok(Self { pairs })
    }

    pub fn s(&self) -> usize {
        self.pairs.len()
    }

    pub fn hits(&self, e: &Embedding) -> bool {
        self.pairs
            .iter()
            .all(|&(x, y)| (x as usize) < e.target_n() && e.apply(x) == y)
    }
}

/// All n·n′ probes of size one.
pub fn all_single_probes(template_n: usize, host_n: usize) -> Vec<SpreadProbe> {
    let mut out = Vec::with_capacity(template_n * host_n);
    for x in 0..template_n as Vertex {
        for y in 0..host_n as Vertex {
            out.push(SpreadProbe {
                pairs: alloc::vec![(x, y)],
            });
        }
    }
    out
}

/// Uniformly random probes of size two.
pub fn random_pair_probes(
    template_n: usize,
    host_n: usize,
    count: usize,
    rng: &mut ChaCha12Rng,
) -> Vec<SpreadProbe> {
    let mut out = Vec::with_capacity(count);
    let xs: Vec<Vertex> = (0..template_n as Vertex).collect();
    let ys: Vec<Vertex> = (0..host_n as Vertex).collect();
    while out.len() < count {
        let x: Vec<Vertex> = xs.choose_multiple(rng, 2).copied().collect();
        let y: Vec<Vertex> = ys.choose_multiple(rng, 2).copied().collect();
        if x.len() == 2 && y.len() == 2 {
            out.push(SpreadProbe {
                pairs: alloc::vec![(x[0], y[0]), (x[1], y[1])],
            });
        }
    }
    out
}

/// Per-probe statistics.
#[derive(Clone, Debug)]
pub struct ProbeStat {
    pub probe: SpreadProbe,
    pub hits: u64,
    pub freq: f64,
    /// Upper Wilson radius at 99%: `upper − freq`.
    pub radius: f64,
    pub upper: f64,
}

/// Empirical spread statistics from repeated sampler runs.
#[derive(Clone, Debug)]
pub struct SpreadReport {
    pub trials: u64,
    pub failures: u64,
    pub stats: Vec<ProbeStat>,
    pub max_freq: f64,
    /// For each probe size s present, max over probes of freq^{1/s}.
    pub per_s_normalized_max: Vec<(usize, f64)>,
}

impl SpreadReport {
    pub fn max_upper(&self) -> f64 {
        self.stats.iter().map(|s| s.upper).fold(0.0, f64::max)
    }
}

fn report_from_counts(
    probes: Vec<SpreadProbe>,
    counts: Vec<u64>,
    trials: u64,
    failures: u64,
) -> SpreadReport {
    let stats: Vec<ProbeStat> = probes
        .into_iter()
        .zip(counts)
        .map(|(probe, hits)| {
            let freq = hits as f64 / trials as f64;
            let (_, upper) = wilson_interval(hits, trials, Z99);
            ProbeStat {
                probe,
                hits,
                freq,
                radius: upper - freq,
                upper,
            }
        })
        .collect();
    let max_freq = stats.iter().map(|s| s.freq).fold(0.0, f64::max);
    let mut sizes: Vec<usize> = stats.iter().map(|s| s.probe.s()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let per_s_normalized_max = sizes
        .into_iter()
        .map(|s| {
            let m = stats
                .iter()
                .filter(|st| st.probe.s() == s)
                .map(|st| st.freq)
                .fold(0.0, f64::max);
            (s, libm::pow(m, 1.0 / s as f64))
        })
        .collect();
    SpreadReport {
        trials,
        failures,
        stats,
        max_freq,
        per_s_normalized_max,
    }
}

/// Default cap on the sampler failure rate before estimation aborts.
pub const DEFAULT_FAILURE_CAP: f64 = 0.05;

/// Run `sampler` once per trial index and count, per probe, the runs whose
/// embedding extends every pair. Aborts if the sampler failure rate
/// exceeds `failure_cap`.
pub fn estimate_vertex_spread(
    mut sampler: impl FnMut(u64) -> Option<Embedding>,
    probes: Vec<SpreadProbe>,
    trials: u64,
    failure_cap: f64,
) -> Result<SpreadReport> {
    if probes.is_empty() {
        return Err(Error::Parameter("probe set must be nonempty"));
    }
    if trials == 0 {
        return Err(Error::Parameter("trials must be positive"));
    }
    let mut counts = alloc::vec![0u64; probes.len()];
    let mut failures = 0u64;
    for t in 0..trials {
        match sampler(t) {
            Some(e) => {
                for (i, p) in probes.iter().enumerate() {
                    if p.hits(&e) {
                        counts[i] += 1;
                    }
                }
            }
            None => failures += 1,
        }
    }
    if failures as f64 > failure_cap * trials as f64 {
        return Err(Error::Estimation("sampler failure rate above the configured cap"));
    }
    Ok(report_from_counts(probes, counts, trials, failures))
}

/// Merge externally accumulated per-probe counts into a report. Used by
/// the parallel drivers: counts are associative and order-independent.
pub fn report_from_parallel_counts(
    probes: Vec<SpreadProbe>,
    counts: Vec<u64>,
    trials: u64,
    failures: u64,
    failure_cap: f64,
) -> Result<SpreadReport> {
    if failures as f64 > failure_cap * trials as f64 {
        return Err(Error::Estimation("sampler failure rate above the configured cap"));
    }
    Ok(report_from_counts(probes, counts, trials, failures))
}

/// One row of an edge-set spread report.
#[derive(Clone, Debug)]
pub struct EdgeSetStat {
    pub edge_set: Vec<Vec<Vertex>>,
    pub hits: u64,
    pub freq: f64,
    pub radius: f64,
    pub upper: f64,
}

#[derive(Clone, Debug)]
pub struct EdgeSpreadReport {
    pub trials: u64,
    pub failures: u64,
    pub stats: Vec<EdgeSetStat>,
}

/// Empirical edge-spread of the push-forward distribution: count runs whose
/// image edge set contains each queried subset S.
pub fn push_forward_edge_spread(
    mut sampler: impl FnMut(u64) -> Option<Vec<Vec<Vertex>>>,
    edge_sets: &[Vec<Vec<Vertex>>],
    trials: u64,
    failure_cap: f64,
) -> Result<EdgeSpreadReport> {
    if trials == 0 {
        return Err(Error::Parameter("trials must be positive"));
    }
    let targets: Vec<Vec<Vec<Vertex>>> = edge_sets
        .iter()
        .map(|s| {
            let mut t: Vec<Vec<Vertex>> = s
                .iter()
                .map(|e| {
                    let mut e = e.clone();
                    e.sort_unstable();
                    e
                })
                .collect();
            t.sort_unstable();
            t
        })
        .collect();
    let mut counts = alloc::vec![0u64; targets.len()];
    let mut failures = 0u64;
    for t in 0..trials {
        match sampler(t) {
            Some(image) => {
                let image: BTreeSet<Vec<Vertex>> = image
                    .into_iter()
                    .map(|mut e| {
                        e.sort_unstable();
                        e
                    })
                    .collect();
                for (i, s) in targets.iter().enumerate() {
                    if s.iter().all(|e| image.contains(e)) {
                        counts[i] += 1;
                    }
                }
            }
            None => failures += 1,
        }
    }
    if failures as f64 > failure_cap * trials as f64 {
        return Err(Error::Estimation("sampler failure rate above the configured cap"));
    }
    let stats = targets
        .into_iter()
        .zip(counts)
        .map(|(edge_set, hits)| {
            let freq = hits as f64 / trials as f64;
            let (_, upper) = wilson_interval(hits, trials, Z99);
            EdgeSetStat {
                edge_set,
                hits,
                freq,
                radius: upper - freq,
                upper,
            }
        })
        .collect();
    Ok(EdgeSpreadReport {
        trials,
        failures,
        stats,
    })
}

/// One row of the restricted Spiro-spread check: a sub-selection S of a
/// reference output, |S| = t, with the empirical P(|output ∩ S| = t).
#[derive(Clone, Debug)]
pub struct SpiroRow {
    pub t: usize,
    pub hits: u64,
    pub freq: f64,
    pub upper: f64,
    pub target: f64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct SpiroReport {
    pub trials: u64,
    pub failures: u64,
    pub q: f64,
    pub rows: Vec<SpiroRow>,
    pub pass: bool,
}

/// Restricted Spiro-spread probe of a Hamilton ℓ-cycle sampler: draw one
/// reference edge set E*, pick a random S_t ⊆ E* of each size t in
/// [1, t_max], then estimate P(|output ∩ S_t| = t) and compare its Wilson
/// upper bound against q^t. Targets q^t ≥ 1 pass vacuously.
pub fn check_restricted_spiro_spread(
    mut sampler: impl FnMut(u64) -> Option<Vec<Vec<Vertex>>>,
    q: f64,
    t_max: usize,
    trials: u64,
    selection_rng: &mut ChaCha12Rng,
    failure_cap: f64,
) -> Result<SpiroReport> {
    let reference = (0..32u64)
        .find_map(|i| sampler(u64::MAX - i))
        .ok_or(Error::Estimation("no reference output obtained"))?;
    let reference: Vec<Vec<Vertex>> = reference
        .into_iter()
        .map(|mut e| {
            e.sort_unstable();
            e
        })
        .collect();
    let t_max = t_max.min(reference.len());
    if t_max == 0 {
        return Err(Error::Parameter("reference output has no edges"));
    }
    let mut selections: Vec<Vec<Vec<Vertex>>> = Vec::with_capacity(t_max);
    for t in 1..=t_max {
        let mut s: Vec<Vec<Vertex>> = reference
            .choose_multiple(selection_rng, t)
            .cloned()
            .collect();
        s.sort_unstable();
        selections.push(s);
    }
    let mut counts = alloc::vec![0u64; t_max];
    let mut failures = 0u64;
    for trial in 0..trials {
        match sampler(trial) {
            Some(out) => {
                let image: BTreeSet<Vec<Vertex>> = out
                    .into_iter()
                    .map(|mut e| {
                        e.sort_unstable();
                        e
                    })
                    .collect();
                for (i, s) in selections.iter().enumerate() {
                    let overlap = s.iter().filter(|e| image.contains(*e)).count();
                    if overlap == s.len() {
                        counts[i] += 1;
                    }
                }
            }
            None => failures += 1,
        }
    }
    if failures as f64 > failure_cap * trials as f64 {
        return Err(Error::Estimation("sampler failure rate above the configured cap"));
    }
    let rows: Vec<SpiroRow> = counts
        .iter()
        .enumerate()
        .map(|(i, &hits)| {
            let t = i + 1;
            let freq = hits as f64 / trials as f64;
            let (_, upper) = wilson_interval(hits, trials, Z99);
            let target = libm::pow(q, t as f64);
            let pass = target >= 1.0 || upper <= target;
            SpiroRow {
                t,
                hits,
                freq,
                upper,
                target,
                pass,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    Ok(SpiroReport {
        trials,
        failures,
        q,
        rows,
        pass,
    })
}

#[derive(Clone, Debug)]
pub struct DistinctReport {
    pub trials: u64,
    pub failures: u64,
    pub distinct: usize,
    pub collisions: u64,
    /// Birthday-style support estimate C(successes,2)/collisions under a
    /// uniformity assumption; None when no collision was seen.
    pub support_estimate: Option<f64>,
}

/// Count distinct canonical outputs over repeated runs.
pub fn count_distinct_outputs(
    mut sampler: impl FnMut(u64) -> Option<Vec<u8>>,
    trials: u64,
) -> DistinctReport {
    let mut seen: alloc::collections::BTreeMap<Vec<u8>, u64> = alloc::collections::BTreeMap::new();
    let mut failures = 0u64;
    for t in 0..trials {
        match sampler(t) {
            Some(canon) => *seen.entry(canon).or_insert(0) += 1,
            None => failures += 1,
        }
    }
    let successes = trials - failures;
    let collisions: u64 = seen.values().map(|&c| c * (c - 1) / 2).sum();
    let support_estimate = (collisions > 0)
        .then(|| (successes as f64 * (successes as f64 - 1.0) / 2.0) / collisions as f64);
    DistinctReport {
        trials,
        failures,
        distinct: seen.len(),
        collisions,
        support_estimate,
    }
}

/// Lexicographically minimal rotation/reflection of a cyclic vertex order.
pub fn canonical_cycle(seq: &[Vertex]) -> Vec<Vertex> {
    let n = seq.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best: Option<Vec<Vertex>> = None;
    let mut consider = |candidate: Vec<Vertex>| {
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    };
    let reversed: Vec<Vertex> = seq.iter().rev().copied().collect();
    for dir in [seq, reversed.as_slice()] {
        for start in 0..n {
            let rot: Vec<Vertex> = (0..n).map(|i| dir[(start + i) % n]).collect();
            consider(rot);
        }
    }
    best.expect("nonempty")
}

/// Canonical byte encoding of a sorted edge list.
pub fn canonical_edge_set_bytes(edges: &[Vec<Vertex>]) -> Vec<u8> {
    let mut sorted: Vec<Vec<Vertex>> = edges
        .iter()
        .map(|e| {
            let mut e = e.clone();
            e.sort_unstable();
            e
        })
        .collect();
    sorted.sort_unstable();
    let mut out = Vec::new();
    for e in sorted {
        for v in e {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out.push(0xff);
    }
    out
}

/// Canonical byte encoding of a cyclic vertex order.
pub fn canonical_cycle_bytes(seq: &[Vertex]) -> Vec<u8> {
    canonical_cycle(seq)
        .into_iter()
        .flat_map(|v| v.to_le_bytes())
        .collect()
}

/// Human-readable probe label ("x→y, x→y") for serialization.
pub fn probe_label(p: &SpreadProbe) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, (x, y)) in p.pairs.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x}->{y}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive;
    use rand::seq::SliceRandom;
    use rand::Rng;

    #[test]
    fn wilson_sanity() {
        let (lo, hi) = wilson_interval(50, 100, Z99);
        assert!(lo < 0.5 && 0.5 < hi);
        assert!(hi - 0.5 < 0.14);
        let (lo0, hi0) = wilson_interval(0, 100, Z99);
        assert_eq!(lo0, 0.0);
        assert!(hi0 > 0.0 && hi0 < 0.1);
    }

    #[test]
    fn uniform_bijection_calibration() {
        // sampler = uniform random bijection [10]→[10]: every probe
        // frequency ≈ 1/10
        let probes = all_single_probes(10, 10);
        let report = estimate_vertex_spread(
            |t| {
                let mut rng = derive(5, "bij", t);
                let mut image: Vec<Vertex> = (0..10).collect();
                image.shuffle(&mut rng);
                Some(Embedding::new(image))
            },
            probes,
            20_000,
            0.0,
        )
        .unwrap();
        for st in &report.stats {
            assert!((st.freq - 0.1).abs() < 3.0 * (st.upper - st.freq) + 1e-12);
        }
    }

    #[test]
    fn constant_sampler_hits_matching_probe() {
        let probes = alloc::vec![
            SpreadProbe::new(alloc::vec![(0, 3)]).unwrap(),
            SpreadProbe::new(alloc::vec![(0, 1)]).unwrap(),
        ];
        let report = estimate_vertex_spread(
            |_| Some(Embedding::new(alloc::vec![3, 2, 1, 0])),
            probes,
            1000,
            0.0,
        )
        .unwrap();
        assert_eq!(report.stats[0].freq, 1.0);
        assert_eq!(report.stats[1].freq, 0.0);
    }

    #[test]
    fn failure_cap_aborts() {
        let probes = alloc::vec![SpreadProbe::new(alloc::vec![(0, 0)]).unwrap()];
        let r = estimate_vertex_spread(|t| (t % 2 == 0).then(|| Embedding::new(alloc::vec![0])), probes, 100, 0.1);
        assert!(matches!(r, Err(Error::Estimation(_))));
    }

    #[test]
    fn monotonicity_adding_a_pair_never_increases_hits() {
        let single = SpreadProbe::new(alloc::vec![(0, 0)]).unwrap();
        let pair = SpreadProbe::new(alloc::vec![(0, 0), (1, 1)]).unwrap();
        let sampler = |t: u64| {
            let mut rng = derive(6, "mono", t);
            let mut image: Vec<Vertex> = (0..6).collect();
            image.shuffle(&mut rng);
            Some(Embedding::new(image))
        };
        let report =
            estimate_vertex_spread(sampler, alloc::vec![single, pair], 5000, 0.0).unwrap();
        assert!(report.stats[0].hits >= report.stats[1].hits);
    }

    #[test]
    fn empty_edge_set_always_contained() {
        let report = push_forward_edge_spread(
            |_| Some(alloc::vec![alloc::vec![0, 1, 2]]),
            &[Vec::new()],
            100,
            0.0,
        )
        .unwrap();
        assert_eq!(report.stats[0].freq, 1.0);
    }

    #[test]
    fn canonical_cycle_is_rotation_reflection_invariant() {
        let a = canonical_cycle(&[2, 0, 1, 4, 3]);
        let b = canonical_cycle(&[4, 1, 0, 2, 3]); // reflection + rotation
        assert_eq!(a, b);
        assert_eq!(a[0], 0);
    }

    #[test]
    fn distinct_outputs_constant_and_uniform() {
        let constant = count_distinct_outputs(|_| Some(alloc::vec![1, 2, 3]), 50);
        assert_eq!(constant.distinct, 1);
        // uniform over 3 values: all 3 seen for trials ≥ 30 with prob ≈ 1
        let three = count_distinct_outputs(
            |t| {
                let mut rng = derive(9, "three", t);
                Some(alloc::vec![rng.gen_range(0..3u8)])
            },
            60,
        );
        assert_eq!(three.distinct, 3);
        assert!(three.support_estimate.is_some());
    }
}
