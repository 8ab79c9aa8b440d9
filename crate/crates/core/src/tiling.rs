//! Pattern copies, tilings, mixed tilings, and the non-exact machinery:
//! copy enumeration, greedy packing, swap-based local search, verification.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{for_each_ksubset, Hypergraph, Pattern};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TilingViolation {
    #[error("copy {copy}: edge index {edge} out of range")]
    EdgeOutOfRange { copy: usize, edge: usize },
    #[error("copy {copy}: edges share {got} vertices, pattern requires {expected}")]
    BadOverlap { copy: usize, got: usize, expected: usize },
    #[error("copy {copy}: stored footprint does not match its edges")]
    BadFootprint { copy: usize },
    #[error("copies {first} and {second} share a vertex")]
    OverlappingCopies { first: usize, second: usize },
    #[error("single edge {single} out of range")]
    SingleOutOfRange { single: usize },
    #[error("single edge {single} overlaps an earlier component")]
    OverlappingSingle { single: usize },
    #[error("pattern uniformity {pattern} does not match host uniformity {host}")]
    UniformityMismatch { pattern: usize, host: usize },
}

/// One copy of Y_{k,b}: two host edges meeting in exactly b vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternCopy {
    pub edge_a: usize,
    pub edge_b: usize,
    /// Sorted union of the two edges; 2k-b vertices.
    pub footprint: Vec<usize>,
}

impl PatternCopy {
    pub fn new(
        h: &Hypergraph,
        pattern: Pattern,
        edge_a: usize,
        edge_b: usize,
    ) -> Result<Self, TilingViolation> {
        let (edge_a, edge_b) = if edge_a <= edge_b { (edge_a, edge_b) } else { (edge_b, edge_a) };
        if edge_b >= h.edge_count() || edge_a == edge_b {
            return Err(TilingViolation::EdgeOutOfRange { copy: 0, edge: edge_b });
        }
        let got = intersection_size(h.edge(edge_a), h.edge(edge_b));
        if got != pattern.b() {
            return Err(TilingViolation::BadOverlap { copy: 0, got, expected: pattern.b() });
        }
        let footprint = sorted_union(h.edge(edge_a), h.edge(edge_b));
        Ok(PatternCopy { edge_a, edge_b, footprint })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub copies: Vec<PatternCopy>,
}

impl Tiling {
    pub fn size(&self) -> usize {
        self.copies.len()
    }

    pub fn covered_vertices(&self) -> usize {
        self.copies.iter().map(|c| c.footprint.len()).sum()
    }
}

/// Vertex-disjoint union of pattern copies and single edges, measured by
/// covered vertices (2k-b per copy, k per edge).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedTiling {
    pub copies: Vec<PatternCopy>,
    pub singles: Vec<usize>,
}

impl MixedTiling {
    pub fn coverage(&self, k: usize) -> usize {
        self.copies.iter().map(|c| c.footprint.len()).sum::<usize>() + k * self.singles.len()
    }

    pub fn components(&self) -> usize {
        self.copies.len() + self.singles.len()
    }
}

/// Size of the intersection of two sorted vertex lists.
pub fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

pub(crate) fn sorted_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut u: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

/// All copies of the pattern in `h`: unordered pairs of edges meeting in
/// exactly b vertices. Sorted by (footprint, edge_a, edge_b), which is the
/// branch order used by the exact solvers.
pub fn enumerate_copies(h: &Hypergraph, pattern: Pattern) -> Vec<PatternCopy> {
    assert_eq!(h.k(), pattern.k(), "pattern uniformity must match host");
    let m = h.edge_count();
    let mut copies = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if intersection_size(h.edge(i), h.edge(j)) == pattern.b() {
                copies.push(PatternCopy {
                    edge_a: i,
                    edge_b: j,
                    footprint: sorted_union(h.edge(i), h.edge(j)),
                });
            }
        }
    }
    copies.sort();
    copies
}

/// Checks copy validity (edge membership, exact b-overlap, footprint) and
/// pairwise disjointness, reporting the first violation encountered.
pub fn verify_tiling(h: &Hypergraph, pattern: Pattern, t: &Tiling) -> Result<(), TilingViolation> {
    if h.k() != pattern.k() {
        return Err(TilingViolation::UniformityMismatch { pattern: pattern.k(), host: h.k() });
    }
    let mut used = vec![usize::MAX; h.n()];
    for (ci, c) in t.copies.iter().enumerate() {
        check_copy(h, pattern, ci, c)?;
        for &v in &c.footprint {
            if used[v] != usize::MAX {
                return Err(TilingViolation::OverlappingCopies { first: used[v], second: ci });
            }
            used[v] = ci;
        }
    }
    Ok(())
}

pub fn verify_mixed_tiling(
    h: &Hypergraph,
    pattern: Pattern,
    t: &MixedTiling,
) -> Result<(), TilingViolation> {
    verify_tiling(h, pattern, &Tiling { copies: t.copies.clone() })?;
    let mut used = vec![false; h.n()];
    for c in &t.copies {
        for &v in &c.footprint {
            used[v] = true;
        }
    }
    for &s in &t.singles {
        if s >= h.edge_count() {
            return Err(TilingViolation::SingleOutOfRange { single: s });
        }
        for &v in h.edge(s) {
            if used[v] {
                return Err(TilingViolation::OverlappingSingle { single: s });
            }
            used[v] = true;
        }
    }
    Ok(())
}

fn check_copy(
    h: &Hypergraph,
    pattern: Pattern,
    ci: usize,
    c: &PatternCopy,
) -> Result<(), TilingViolation> {
    for &e in [&c.edge_a, &c.edge_b] {
        if e >= h.edge_count() {
            return Err(TilingViolation::EdgeOutOfRange { copy: ci, edge: e });
        }
    }
    let got = intersection_size(h.edge(c.edge_a), h.edge(c.edge_b));
    if got != pattern.b() {
        return Err(TilingViolation::BadOverlap { copy: ci, got, expected: pattern.b() });
    }
    if c.footprint != sorted_union(h.edge(c.edge_a), h.edge(c.edge_b)) {
        return Err(TilingViolation::BadFootprint { copy: ci });
    }
    Ok(())
}

/// Takes the first copy (in footprint order) disjoint from everything chosen
/// so far, until none fits. A cheap feasible lower bound for the exact
/// solver.
pub fn greedy_tiling(h: &Hypergraph, pattern: Pattern) -> Tiling {
    let copies = enumerate_copies(h, pattern);
    greedy_from_copies(h.n(), &copies)
}

pub(crate) fn greedy_from_copies(n: usize, copies: &[PatternCopy]) -> Tiling {
    let mut free = vec![true; n];
    let mut chosen = Vec::new();
    for c in copies {
        if c.footprint.iter().all(|&v| free[v]) {
            for &v in &c.footprint {
                free[v] = false;
            }
            chosen.push(c.clone());
        }
    }
    Tiling { copies: chosen }
}

/// Hill climbing with remove-r / add-(r+1) swaps for r up to `radius`.
/// Output never shrinks and stays a valid tiling.
pub fn local_search_improve(
    h: &Hypergraph,
    pattern: Pattern,
    start: &Tiling,
    radius: usize,
) -> Tiling {
    let copies = enumerate_copies(h, pattern);
    let mut current = start.clone();
    loop {
        let mut improved = false;
        'radius: for r in 0..=radius.min(current.size()) {
            let mut subset_found: Option<(Vec<usize>, Vec<PatternCopy>)> = None;
            for_each_ksubset(current.size(), r, |removed| {
                if subset_found.is_some() {
                    return;
                }
                let mut free = vec![true; h.n()];
                for (i, c) in current.copies.iter().enumerate() {
                    if !removed.contains(&i) {
                        for &v in &c.footprint {
                            free[v] = false;
                        }
                    }
                }
                if let Some(added) = find_disjoint_copies(&copies, &mut free, r + 1, 0) {
                    subset_found = Some((removed.to_vec(), added));
                }
            });
            if let Some((removed, added)) = subset_found {
                let mut kept: Vec<PatternCopy> = current
                    .copies
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !removed.contains(i))
                    .map(|(_, c)| c.clone())
                    .collect();
                kept.extend(added);
                kept.sort();
                current = Tiling { copies: kept };
                improved = true;
                break 'radius;
            }
        }
        if !improved {
            return current;
        }
    }
}

/// First set of `want` pairwise-disjoint copies inside the free vertices,
/// scanning in copy order.
fn find_disjoint_copies(
    copies: &[PatternCopy],
    free: &mut [bool],
    want: usize,
    from: usize,
) -> Option<Vec<PatternCopy>> {
    if want == 0 {
        return Some(Vec::new());
    }
    for i in from..copies.len() {
        let c = &copies[i];
        if c.footprint.iter().all(|&v| free[v]) {
            for &v in &c.footprint {
                free[v] = false;
            }
            if let Some(mut rest) = find_disjoint_copies(copies, free, want - 1, i + 1) {
                rest.insert(0, c.clone());
                return Some(rest);
            }
            for &v in &c.footprint {
                free[v] = true;
            }
        }
    }
    None
}
