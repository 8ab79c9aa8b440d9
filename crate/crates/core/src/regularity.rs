//! Sampled regularity estimation on given partitions, reduced-graph
//! construction, and the constructive pipeline that turns a fractional
//! hom(Y)-tiling of the reduced graph into an integral tiling of the host.
//!
//! The weak regularity lemma itself is not implemented: its guaranteed
//! cluster bounds are astronomically large. The pipeline instead accepts a
//! partition from the caller and certifies what sampling can certify:
//! rejection comes with a witness sub-triple and is sound, acceptance is a
//! sampled verdict.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fractional::{verify_fractional, FractionalError, FractionalTiling};
use crate::hypergraph::{Hypergraph, HypergraphError};
use crate::tiling::{PatternCopy, Tiling};

#[derive(Debug, Error)]
pub enum RegularityError {
    #[error("partition invalid: {0}")]
    BadPartition(String),
    #[error("parts must be disjoint and within range")]
    BadParts,
    #[error("delta must lie in (0, 1], got {0}")]
    BadDelta(String),
    #[error("part of size {size} is below ceil(1/delta) = {needed}; sub-parts cannot reach delta fraction")]
    PartTooSmall { size: usize, needed: usize },
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("part sizes ({0}, {1}, {2}) violate |V3| <= 3|V1| - |V2| after sorting")]
    SplitPrecondition(usize, usize, usize),
    #[error("cluster subdivision overflow: cluster {cluster} needs {want} more vertices")]
    SubdivisionOverflow { cluster: usize, want: usize },
    #[error(transparent)]
    Graph(#[from] HypergraphError),
    #[error("fractional input invalid: {0}")]
    Fractional(#[from] FractionalError),
}

/// Cluster decomposition V0 ∪ V1 ∪ ... ∪ Vt with equal cluster sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub exceptional: Vec<usize>,
    pub clusters: Vec<Vec<usize>>,
}

impl Partition {
    /// Validates disjointness, coverage of 0..n, and equal cluster sizes;
    /// returns the common cluster size.
    pub fn validate(&self, n: usize) -> Result<usize, RegularityError> {
        let mut seen = vec![false; n];
        let mut mark = |v: usize| -> Result<(), RegularityError> {
            if v >= n {
                return Err(RegularityError::BadPartition(format!("vertex {v} out of range")));
            }
            if seen[v] {
                return Err(RegularityError::BadPartition(format!("vertex {v} appears twice")));
            }
            seen[v] = true;
            Ok(())
        };
        for &v in &self.exceptional {
            mark(v)?;
        }
        let m = self.clusters.first().map(|c| c.len()).unwrap_or(0);
        for (i, cluster) in self.clusters.iter().enumerate() {
            if cluster.len() != m {
                return Err(RegularityError::BadPartition(format!(
                    "cluster {i} has size {} != {m}",
                    cluster.len()
                )));
            }
            for &v in cluster {
                mark(v)?;
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(RegularityError::BadPartition(format!("vertex {v} is uncovered")));
        }
        Ok(m)
    }

    /// t clusters of size floor(n/t) over a seeded shuffle; leftovers go to
    /// the exceptional set.
    pub fn random_equal(n: usize, t: usize, seed: u64) -> Self {
        use rand::seq::SliceRandom;
        let mut verts: Vec<usize> = (0..n).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        verts.shuffle(&mut rng);
        let m = n.checked_div(t).unwrap_or(0);
        let mut clusters = Vec::with_capacity(t);
        for i in 0..t {
            let mut c = verts[i * m..(i + 1) * m].to_vec();
            c.sort_unstable();
            clusters.push(c);
        }
        let mut exceptional = verts[t * m..].to_vec();
        exceptional.sort_unstable();
        Partition { exceptional, clusters }
    }

    /// t clusters of consecutive vertex ranges.
    pub fn contiguous(n: usize, t: usize) -> Self {
        let m = n.checked_div(t).unwrap_or(0);
        let clusters: Vec<Vec<usize>> =
            (0..t).map(|i| (i * m..(i + 1) * m).collect()).collect();
        let exceptional: Vec<usize> = (t * m..n).collect();
        Partition { exceptional, clusters }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("partition serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Outcome of the sampled regularity estimate. Rejection is sound (the
/// witness sub-triple deviates by more than delta); acceptance only says no
/// sampled sub-triple deviated.
#[derive(Debug, Clone)]
pub struct RegularityVerdict {
    pub accepted: bool,
    pub whole_density: BigRational,
    pub worst_deviation: BigRational,
    pub witness: Option<[Vec<usize>; 3]>,
    pub trials: usize,
}

fn ceil_mul(delta: &BigRational, size: usize) -> usize {
    (delta * BigRational::from(BigInt::from(size))).ceil().to_integer().to_usize().unwrap_or(0)
}

/// Samples `trials` sub-triples with |A_i'| = ceil(delta |A_i|) and compares
/// their densities against the whole triple's density.
pub fn regularity_estimate(
    h: &Hypergraph,
    a1: &[usize],
    a2: &[usize],
    a3: &[usize],
    delta: &BigRational,
    trials: usize,
    seed: u64,
) -> Result<RegularityVerdict, RegularityError> {
    if !delta.is_positive() || delta > &BigRational::one() {
        return Err(RegularityError::BadDelta(delta.to_string()));
    }
    if trials == 0 {
        return Err(RegularityError::NoTrials);
    }
    let inv_delta = ceil_of(&delta.recip());
    for part in [a1, a2, a3] {
        if part.len() < inv_delta {
            return Err(RegularityError::PartTooSmall { size: part.len(), needed: inv_delta });
        }
    }
    let sets: [BTreeSet<usize>; 3] = [
        a1.iter().copied().collect(),
        a2.iter().copied().collect(),
        a3.iter().copied().collect(),
    ];
    let (_, whole) = h.density_triple(&sets[0], &sets[1], &sets[2])?;

    let parts = [a1, a2, a3];
    let sub_sizes = [ceil_mul(delta, a1.len()), ceil_mul(delta, a2.len()), ceil_mul(delta, a3.len())];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = BigRational::zero();
    let mut witness: Option<[Vec<usize>; 3]> = None;
    for _ in 0..trials {
        let mut subs: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for i in 0..3 {
            let picks = rand::seq::index::sample(&mut rng, parts[i].len(), sub_sizes[i]);
            let mut sub: Vec<usize> = picks.iter().map(|p| parts[i][p]).collect();
            sub.sort_unstable();
            subs[i] = sub;
        }
        let sub_sets: [BTreeSet<usize>; 3] = [
            subs[0].iter().copied().collect(),
            subs[1].iter().copied().collect(),
            subs[2].iter().copied().collect(),
        ];
        let (_, d_sub) = h.density_triple(&sub_sets[0], &sub_sets[1], &sub_sets[2])?;
        let dev = (&d_sub - &whole).abs();
        if dev > worst {
            worst = dev;
            witness = Some(subs);
        }
    }
    let accepted = worst <= *delta;
    Ok(RegularityVerdict {
        accepted,
        whole_density: whole,
        worst_deviation: worst,
        witness: if accepted { None } else { witness },
        trials,
    })
}

fn ceil_of(r: &BigRational) -> usize {
    r.ceil().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// The reduced 3-graph on cluster indices: a cluster triple is an edge when
/// its density is at least d and the sampled regularity estimate accepts.
#[derive(Debug, Clone)]
pub struct ReducedGraph {
    pub graph: Hypergraph,
    pub partition: Partition,
    pub delta: BigRational,
    pub d: BigRational,
    pub cluster_size: usize,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Per-triple sub-seed so the verdicts do not depend on iteration order.
fn triple_seed(seed: u64, i: usize, j: usize, l: usize) -> u64 {
    splitmix64(seed ^ splitmix64(i as u64 ^ splitmix64(j as u64 ^ splitmix64(l as u64))))
}

pub fn reduced_graph(
    h: &Hypergraph,
    partition: &Partition,
    delta: &BigRational,
    d: &BigRational,
    trials: usize,
    seed: u64,
) -> Result<ReducedGraph, RegularityError> {
    let cluster_size = partition.validate(h.n())?;
    let t = partition.clusters.len();
    let mut edges: Vec<[usize; 3]> = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            for l in j + 1..t {
                let sets: [BTreeSet<usize>; 3] = [
                    partition.clusters[i].iter().copied().collect(),
                    partition.clusters[j].iter().copied().collect(),
                    partition.clusters[l].iter().copied().collect(),
                ];
                let (_, density) = h.density_triple(&sets[0], &sets[1], &sets[2])?;
                if density < *d {
                    continue;
                }
                let verdict = regularity_estimate(
                    h,
                    &partition.clusters[i],
                    &partition.clusters[j],
                    &partition.clusters[l],
                    delta,
                    trials,
                    triple_seed(seed, i, j, l),
                )?;
                if verdict.accepted {
                    edges.push([i, j, l]);
                }
            }
        }
    }
    let graph = Hypergraph::build(t, 3, edges)?;
    Ok(ReducedGraph {
        graph,
        partition: partition.clone(),
        delta: delta.clone(),
        d: d.clone(),
        cluster_size,
    })
}

/// The per-part double-hit targets of the regular-triple tiling: with sizes
/// sorted ascending, x1 = (3|V1| - |V2| - |V3|)/4 and cyclically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSplit {
    pub sizes: [usize; 3],
    pub x: [BigRational; 3],
}

impl TripleSplit {
    /// Requires sizes sorted ascending with |V3| <= 3|V1| - |V2|.
    pub fn new(sizes: [usize; 3]) -> Result<Self, RegularityError> {
        let [s1, s2, s3] = sizes;
        if !(s1 <= s2 && s2 <= s3) || 3 * s1 < s2 + s3 {
            return Err(RegularityError::SplitPrecondition(s1, s2, s3));
        }
        let big = |v: usize| BigRational::from(BigInt::from(v));
        let four = big(4);
        let x = [
            (big(3 * s1) - big(s2) - big(s3)) / &four,
            (big(3 * s2) - big(s1) - big(s3)) / &four,
            (big(3 * s3) - big(s1) - big(s2)) / &four,
        ];
        Ok(TripleSplit { sizes, x })
    }

    /// 2x1 + x2 + x3 = |V1| and cyclically, plus 4(x1+x2+x3) = total.
    pub fn identities_hold(&self) -> bool {
        let big = |v: usize| BigRational::from(BigInt::from(v));
        let [s1, s2, s3] = self.sizes;
        let [x1, x2, x3] = &self.x;
        let two = big(2);
        &two * x1 + x2 + x3 == big(s1)
            && x1 + &two * x2 + x3 == big(s2)
            && x1 + x2 + &two * x3 == big(s3)
            && big(4) * (x1 + x2 + x3) == big(s1 + s2 + s3)
    }

    pub fn floors(&self) -> [usize; 3] {
        [
            self.x[0].floor().to_integer().to_usize().unwrap_or(0),
            self.x[1].floor().to_integer().to_usize().unwrap_or(0),
            self.x[2].floor().to_integer().to_usize().unwrap_or(0),
        ]
    }
}

/// What the greedy regular-triple tiling did.
#[derive(Debug, Clone)]
pub struct TripleTilingOutcome {
    pub tiling: Tiling,
    pub split: TripleSplit,
    /// Copies extracted per phase; phase p places two vertices in the p-th
    /// part of the size-sorted order.
    pub phase_counts: [usize; 3],
    pub phase_targets: [usize; 3],
    pub covered: usize,
    /// All three phases reached their targets.
    pub complete: bool,
}

/// Greedily tiles a (supposedly regular) triple: floor(x1) copies doubled in
/// the smallest part, then floor(x2) doubled in the middle part, then up to
/// floor(x3) doubled in the largest. A copy is found by scanning pairs
/// across the two non-designated parts in lexicographic order for a pair
/// with two common co-neighbors in the designated part, taking the two
/// smallest.
pub fn greedy_triple_tiling(
    h: &Hypergraph,
    v1: &[usize],
    v2: &[usize],
    v3: &[usize],
    _delta: &BigRational,
) -> Result<TripleTilingOutcome, RegularityError> {
    if h.k() != 3 {
        return Err(HypergraphError::NotThreeUniform(h.k()).into());
    }
    let mut parts: [Vec<usize>; 3] = [v1.to_vec(), v2.to_vec(), v3.to_vec()];
    for p in &mut parts {
        p.sort_unstable();
    }
    parts.sort_by_key(|p| p.len());
    {
        let all: BTreeSet<usize> = parts.iter().flatten().copied().collect();
        if all.len() != parts.iter().map(|p| p.len()).sum::<usize>() {
            return Err(RegularityError::BadParts);
        }
        if all.last().is_some_and(|&v| v >= h.n()) {
            return Err(RegularityError::BadParts);
        }
    }
    let split = TripleSplit::new([parts[0].len(), parts[1].len(), parts[2].len()])?;
    let targets = split.floors();

    let mut avail: [Vec<usize>; 3] = parts.clone();
    let mut copies: Vec<PatternCopy> = Vec::new();
    let mut phase_counts = [0usize; 3];
    for phase in 0..3 {
        let (q1, q2) = match phase {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        while phase_counts[phase] < targets[phase] {
            match find_doubled_copy(h, &avail, phase, q1, q2) {
                Some((u, v, w1, w2)) => {
                    let ea = h.edge_index(&[u, v, w1]).expect("edge exists");
                    let eb = h.edge_index(&[u, v, w2]).expect("edge exists");
                    copies.push(
                        PatternCopy::new(h, crate::hypergraph::Pattern::y32(), ea, eb)
                            .expect("two edges sharing the scanned pair form a copy"),
                    );
                    for (part, x) in [(q1, u), (q2, v), (phase, w1), (phase, w2)] {
                        let pos = avail[part].binary_search(&x).expect("vertex available");
                        avail[part].remove(pos);
                    }
                    phase_counts[phase] += 1;
                }
                None => break,
            }
        }
    }
    let covered = 4 * copies.len();
    let complete = phase_counts == targets;
    Ok(TripleTilingOutcome {
        tiling: Tiling { copies },
        split,
        phase_counts,
        phase_targets: targets,
        covered,
        complete,
    })
}

/// Scans pairs (u, v) across the two non-designated parts lexicographically
/// for one with codegree at least 2 into the designated part.
fn find_doubled_copy(
    h: &Hypergraph,
    avail: &[Vec<usize>; 3],
    designated: usize,
    q1: usize,
    q2: usize,
) -> Option<(usize, usize, usize, usize)> {
    for &u in &avail[q1] {
        for &v in &avail[q2] {
            let mut first: Option<usize> = None;
            for &w in &avail[designated] {
                if h.has_edge(&[u, v, w]) {
                    match first {
                        None => first = Some(w),
                        Some(w1) => return Some((u, v, w1, w)),
                    }
                }
            }
        }
    }
    None
}

/// Per reduced edge, how the fractional weights were rounded into sub-parts
/// and what the greedy tiling achieved there.
#[derive(Debug, Clone)]
pub struct EdgeConversion {
    pub reduced_edge: usize,
    pub sub_sizes: [usize; 3],
    pub copies: usize,
    pub complete: bool,
    pub skipped: bool,
}

#[derive(Debug, Clone)]
pub struct ConversionOutcome {
    pub tiling: Tiling,
    pub covered: usize,
    /// (1 - 4 delta) w(h) m, the paper's coverage yardstick.
    pub target: BigRational,
    pub met_target: bool,
    pub edges: Vec<EdgeConversion>,
}

/// Converts a fractional hom(Y)-tiling of the reduced graph into an integral
/// tiling of the host: each cluster is subdivided into sets of size
/// floor(h(V_i, e) m) taken from a per-cluster pool, and each reduced edge's
/// sub-triple is tiled greedily. Rounding can break the sorted-size
/// precondition |V3| <= 3|V1| - |V2| by up to 3 vertices, in which case the
/// oversized parts are trimmed and the trimmed vertices stay unused.
pub fn fractional_to_integral(
    h: &Hypergraph,
    reduced: &ReducedGraph,
    hfrac: &FractionalTiling,
) -> Result<ConversionOutcome, RegularityError> {
    verify_fractional(&reduced.graph, hfrac)?;
    let m = reduced.cluster_size;
    let m_rat = BigRational::from(BigInt::from(m));
    let mut cursor = vec![0usize; reduced.partition.clusters.len()];
    let mut copies: Vec<PatternCopy> = Vec::new();
    let mut edge_reports = Vec::new();
    for e in 0..reduced.graph.edge_count() {
        let clusters = reduced.graph.edge(e);
        let mut sub_parts: Vec<(usize, Vec<usize>)> = Vec::with_capacity(3);
        for &c in clusters {
            let want =
                (hfrac.get(c, e) * &m_rat).floor().to_integer().to_usize().unwrap_or(0);
            let pool = &reduced.partition.clusters[c];
            if cursor[c] + want > pool.len() {
                return Err(RegularityError::SubdivisionOverflow {
                    cluster: c,
                    want: cursor[c] + want - pool.len(),
                });
            }
            let slice = pool[cursor[c]..cursor[c] + want].to_vec();
            cursor[c] += want;
            sub_parts.push((c, slice));
        }
        sub_parts.sort_by_key(|(_, s)| s.len());
        let mut sizes = [sub_parts[0].1.len(), sub_parts[1].1.len(), sub_parts[2].1.len()];
        if sizes[0] == 0 {
            edge_reports.push(EdgeConversion {
                reduced_edge: e,
                sub_sizes: sizes,
                copies: 0,
                complete: false,
                skipped: true,
            });
            continue;
        }
        // trim the floor-rounding excess over |V3| <= 3|V1| - |V2|
        while sizes[2] + sizes[1] > 3 * sizes[0] {
            if sizes[2] > sizes[1] {
                sizes[2] -= 1;
            } else {
                sizes[1] -= 1;
            }
        }
        let outcome = greedy_triple_tiling(
            h,
            &sub_parts[0].1[..sizes[0]],
            &sub_parts[1].1[..sizes[1]],
            &sub_parts[2].1[..sizes[2]],
            &reduced.delta,
        )?;
        edge_reports.push(EdgeConversion {
            reduced_edge: e,
            sub_sizes: sizes,
            copies: outcome.tiling.size(),
            complete: outcome.complete,
            skipped: false,
        });
        copies.extend(outcome.tiling.copies);
    }
    let covered = 4 * copies.len();
    let four = BigRational::from(BigInt::from(4));
    let target = (BigRational::one() - &four * &reduced.delta) * hfrac.weight() * &m_rat;
    let met_target = BigRational::from(BigInt::from(covered)) >= target;
    Ok(ConversionOutcome { tiling: Tiling { copies }, covered, target, met_target, edges: edge_reports })
}
