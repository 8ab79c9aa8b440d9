//! Executable forms of the proof's combinatorial subroutines: the greedy
//! construction that grows the extended uncovered set W, Y-freeness checks,
//! link graphs between tiling copies, triple profiles with their crossing
//! covers, and the exact local improvement search.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bipartite::{BipartiteError, BipartiteGraph};
use crate::hypergraph::{Hypergraph, HypergraphError, Pattern};
use crate::solver::{max_mixed_tiling_exact, SearchStats};
use crate::tiling::{
    intersection_size, verify_tiling, MixedTiling, PatternCopy, Tiling, TilingViolation,
};

pub const DEFAULT_W_CAP: usize = 12;

#[derive(Debug, Error)]
pub enum ProcedureError {
    #[error("tiling invalid: {0}")]
    BadTiling(#[from] TilingViolation),
    #[error("uncovered set intersects the tiling at vertex {0}")]
    UncoveredOverlapsTiling(usize),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("threshold must be positive")]
    ZeroThreshold,
    #[error("copies must be disjoint from each other and from W (vertex {0} repeats)")]
    OverlappingBlocks(usize),
    #[error(transparent)]
    Graph(#[from] HypergraphError),
    #[error(transparent)]
    Bipartite(#[from] BipartiteError),
}

/// Output of the W-growing construction: selected vertices v_1..v_t1, the
/// extended set W, and the tiling relabeled so moved copies come first.
#[derive(Debug, Clone)]
pub struct RConstruction {
    pub r_vertices: Vec<usize>,
    pub w: BTreeSet<usize>,
    /// Y_1..Y_{t1+t2}: the moved copies in move order, then the untouched
    /// copies in their original order.
    pub ordered_copies: Vec<PatternCopy>,
    pub t1: usize,
    pub t2: usize,
    pub threshold: usize,
}

impl RConstruction {
    /// Re-checks every invariant from scratch against the host and the
    /// original uncovered set.
    pub fn check_invariants(
        &self,
        h: &Hypergraph,
        original_u: &BTreeSet<usize>,
    ) -> Result<(), String> {
        if self.t1 + self.t2 != self.ordered_copies.len() {
            return Err("t1 + t2 does not match the copy count".into());
        }
        if self.r_vertices.len() != self.t1 {
            return Err("|R| != t1".into());
        }
        let mut expected_w = original_u.clone();
        for (i, v) in self.r_vertices.iter().enumerate() {
            let copy = &self.ordered_copies[i];
            if !copy.footprint.contains(v) {
                return Err(format!("selected vertex {v} not in copy {i}"));
            }
            expected_w.extend(copy.footprint.iter().filter(|&&u| u != *v));
        }
        if expected_w != self.w {
            return Err("W != U plus the moved copies minus their selected vertices".into());
        }
        for copy in &self.ordered_copies[self.t1..] {
            for &v in &copy.footprint {
                let deg = h.degree_into_set(v, &self.w).map_err(|e| e.to_string())?;
                if deg >= self.threshold {
                    return Err(format!(
                        "remaining-copy vertex {v} has degree {deg} >= threshold {}",
                        self.threshold
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Greedy W-growing loop: while some vertex v of a remaining copy satisfies
/// deg(v, W) >= threshold, move that copy (v joins R, the other three join
/// W). Scanning is by copy index, then vertex id, so runs are reproducible.
/// The threshold is the absolute stand-in for the paper-scale quadratic
/// degree bound.
pub fn construct_r(
    h: &Hypergraph,
    tiling: &Tiling,
    uncovered: &BTreeSet<usize>,
    threshold: usize,
) -> Result<RConstruction, ProcedureError> {
    if threshold == 0 {
        return Err(ProcedureError::ZeroThreshold);
    }
    verify_tiling(h, Pattern::y32(), tiling)?;
    if let Some(&v) = uncovered.iter().next_back() {
        if v >= h.n() {
            return Err(ProcedureError::OutOfRange(v));
        }
    }
    for copy in &tiling.copies {
        for &v in &copy.footprint {
            if uncovered.contains(&v) {
                return Err(ProcedureError::UncoveredOverlapsTiling(v));
            }
        }
    }

    let mut w = uncovered.clone();
    let mut remaining: Vec<PatternCopy> = tiling.copies.clone();
    let mut moved: Vec<PatternCopy> = Vec::new();
    let mut r_vertices: Vec<usize> = Vec::new();
    loop {
        let mut pick: Option<(usize, usize)> = None;
        'scan: for (ci, copy) in remaining.iter().enumerate() {
            for &v in &copy.footprint {
                if h.degree_into_set(v, &w)? >= threshold {
                    pick = Some((ci, v));
                    break 'scan;
                }
            }
        }
        match pick {
            None => break,
            Some((ci, v)) => {
                let copy = remaining.remove(ci);
                w.extend(copy.footprint.iter().filter(|&&u| u != v));
                r_vertices.push(v);
                moved.push(copy);
            }
        }
    }
    let t1 = moved.len();
    let t2 = remaining.len();
    let mut ordered_copies = moved;
    ordered_copies.extend(remaining);
    Ok(RConstruction { r_vertices, w, ordered_copies, t1, t2, threshold })
}

/// Searches for a pattern copy with both edges inside `s`; None means the
/// set is pattern-free.
pub fn y_free_check(h: &Hypergraph, s: &BTreeSet<usize>, pattern: Pattern) -> Option<PatternCopy> {
    let inside: Vec<usize> = (0..h.edge_count())
        .filter(|&e| h.edge(e).iter().all(|v| s.contains(v)))
        .collect();
    for (i, &ea) in inside.iter().enumerate() {
        for &eb in &inside[i + 1..] {
            if intersection_size(h.edge(ea), h.edge(eb)) == pattern.b() {
                return Some(
                    PatternCopy::new(h, pattern, ea, eb)
                        .expect("edges with exact b-overlap form a copy"),
                );
            }
        }
    }
    None
}

/// Bipartite link graph between the blocks of two copies: {u, v} is an edge
/// when at least `tau` vertices w of W complete {u, v, w} to a host edge.
#[derive(Debug, Clone)]
pub struct LinkGraph {
    pub graph: BipartiteGraph,
    pub left_vertices: Vec<usize>,
    pub right_vertices: Vec<usize>,
    pub tau: usize,
}

impl LinkGraph {
    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }
}

fn codegree_into(h: &Hypergraph, u: usize, v: usize, w: &BTreeSet<usize>) -> usize {
    h.edges()
        .iter()
        .filter(|e| {
            e.contains(&u) && e.contains(&v) && e.iter().any(|x| w.contains(x) && *x != u && *x != v)
        })
        .count()
}

pub fn link_graph(
    h: &Hypergraph,
    w: &BTreeSet<usize>,
    p: &PatternCopy,
    q: &PatternCopy,
    tau: usize,
) -> Result<LinkGraph, ProcedureError> {
    let mut seen = BTreeSet::new();
    for &v in p.footprint.iter().chain(q.footprint.iter()) {
        if !seen.insert(v) || w.contains(&v) {
            return Err(ProcedureError::OverlappingBlocks(v));
        }
    }
    let left = p.footprint.clone();
    let right = q.footprint.clone();
    let mut edges = Vec::new();
    for (i, &u) in left.iter().enumerate() {
        for (j, &v) in right.iter().enumerate() {
            if codegree_into(h, u, v, w) >= tau {
                edges.push((i, j));
            }
        }
    }
    let graph = BipartiteGraph::new(left.len(), right.len(), &edges)?;
    Ok(LinkGraph { graph, left_vertices: left, right_vertices: right, tau })
}

/// Why a pair's link edges were kept or dropped from the triple profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStatus {
    Kept,
    /// At least 6 edges with a two-vertex cover inside one side; such pairs
    /// are excluded from the profile counts.
    DEmptied,
    /// A matching of size 3 in the link graph: the triple admits a local
    /// improvement, so the profile empties the pair and flags it.
    Improvable,
}

/// Profile of a copy triple: the three pairwise link graphs after emptying,
/// x_T = e(G_T), f = e(Q_T), and an optional crossing vertex cover.
#[derive(Debug)]
pub struct TripleProfile {
    pub links: [LinkGraph; 3],
    pub status: [PairStatus; 3],
    pub matchings: [usize; 3],
    /// e(G_T) summed over kept pairs; at most 24.
    pub x_t: usize,
    /// Crossing edge count of the host on the three blocks; at most 64.
    pub f: usize,
    /// One vertex per block covering every kept link edge, if any triple of
    /// block vertices does.
    pub crossing_cover: Option<[usize; 3]>,
}

/// A two-vertex cover within a single side, if one exists.
fn same_side_two_cover(g: &BipartiteGraph) -> bool {
    let sides = [g.left(), g.right()];
    for side in 0..2 {
        let count = sides[side];
        for a in 0..count {
            for b in a + 1..count {
                let covers = g.edges().all(|(u, v)| {
                    let x = if side == 0 { u } else { v };
                    x == a || x == b
                });
                if covers {
                    return true;
                }
            }
        }
    }
    false
}

pub fn triple_profile(
    h: &Hypergraph,
    w: &BTreeSet<usize>,
    ci: &PatternCopy,
    cj: &PatternCopy,
    ck: &PatternCopy,
    tau: usize,
) -> Result<TripleProfile, ProcedureError> {
    let links = [
        link_graph(h, w, ci, cj, tau)?,
        link_graph(h, w, cj, ck, tau)?,
        link_graph(h, w, ck, ci, tau)?,
    ];
    // the pairwise link_graph calls verified i/j, j/k, k/i disjointness, so
    // the three blocks are mutually disjoint and disjoint from W
    let mut status = [PairStatus::Kept; 3];
    let mut matchings = [0usize; 3];
    let mut x_t = 0usize;
    for (idx, link) in links.iter().enumerate() {
        let mc = link.graph.matching_and_cover();
        matchings[idx] = mc.matching.len();
        if mc.matching.len() >= 3 {
            status[idx] = PairStatus::Improvable;
        } else if link.edge_count() >= 6 && same_side_two_cover(&link.graph) {
            status[idx] = PairStatus::DEmptied;
        } else {
            x_t += link.edge_count();
        }
    }

    let blocks = [&ci.footprint, &cj.footprint, &ck.footprint];
    let mut f = 0usize;
    for &a in blocks[0] {
        for &b in blocks[1] {
            for &c in blocks[2] {
                if h.has_edge(&[a, b, c]) {
                    f += 1;
                }
            }
        }
    }

    // all 4^3 crossing triples as cover candidates over the kept link edges
    let kept_edges: Vec<(usize, usize)> = links
        .iter()
        .enumerate()
        .filter(|(idx, _)| status[*idx] == PairStatus::Kept)
        .flat_map(|(_, link)| {
            link.graph
                .edges()
                .map(|(u, v)| (link.left_vertices[u], link.right_vertices[v]))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut crossing_cover = None;
    'search: for &a in blocks[0] {
        for &b in blocks[1] {
            for &c in blocks[2] {
                if kept_edges.iter().all(|&(u, v)| {
                    u == a || u == b || u == c || v == a || v == b || v == c
                }) {
                    crossing_cover = Some([a, b, c]);
                    break 'search;
                }
            }
        }
    }

    Ok(TripleProfile { links, status, matchings, x_t, f, crossing_cover })
}

/// Outcome of the exact local improvement search on V(T) ∪ W.
#[derive(Debug)]
pub struct ImprovementOutcome {
    /// A {Y, E}-tiling on the induced sub-hypergraph covering at least 13
    /// vertices, mapped back to host edge indices.
    pub improvement: Option<MixedTiling>,
    pub coverage: usize,
    pub w_used: Vec<usize>,
    pub stats: SearchStats,
}

/// Runs the exact mixed-tiling solver on the sub-hypergraph induced by the
/// triple's twelve vertices plus at most `w_cap` vertices of W (smallest
/// ids first), looking for coverage of more than 12 vertices.
pub fn improvement_search(
    h: &Hypergraph,
    w: &BTreeSet<usize>,
    triple: [&PatternCopy; 3],
    w_cap: usize,
    budget: u64,
) -> Result<ImprovementOutcome, ProcedureError> {
    let mut verts = BTreeSet::new();
    for copy in triple {
        for &v in &copy.footprint {
            if !verts.insert(v) || w.contains(&v) {
                return Err(ProcedureError::OverlappingBlocks(v));
            }
        }
    }
    let w_used: Vec<usize> = w.iter().copied().take(w_cap).collect();
    verts.extend(w_used.iter().copied());
    let sub_vertices: Vec<usize> = verts.iter().copied().collect();
    let (sub, back) = h.induced(&sub_vertices)?;
    let (mixed, stats) = max_mixed_tiling_exact(&sub, Pattern::y32(), budget);
    let coverage = mixed.coverage(3);
    let improvement = if coverage >= 13 {
        // translate edge indices back to the host
        let map_edge = |e: usize| -> usize {
            let verts: Vec<usize> = sub.edge(e).iter().map(|&v| back[v]).collect();
            h.edge_index(&verts).expect("induced edge exists in host")
        };
        let copies = mixed
            .copies
            .iter()
            .map(|c| {
                PatternCopy::new(h, Pattern::y32(), map_edge(c.edge_a), map_edge(c.edge_b))
                    .expect("mapped edges keep their overlap")
            })
            .collect();
        let singles = mixed.singles.iter().map(|&e| map_edge(e)).collect();
        Some(MixedTiling { copies, singles })
    } else {
        None
    };
    Ok(ImprovementOutcome { improvement, coverage, w_used, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::gen_random;
    use crate::solver::{max_tiling_exact, DEFAULT_NODE_BUDGET};
    use crate::tiling::greedy_tiling;

    fn uncovered_set(h: &Hypergraph, t: &Tiling) -> BTreeSet<usize> {
        let mut u: BTreeSet<usize> = (0..h.n()).collect();
        for c in &t.copies {
            for v in &c.footprint {
                u.remove(v);
            }
        }
        u
    }

    #[test]
    fn construct_r_no_moves_below_threshold() {
        let h = gen_random(16, 3, 0.2, 4).unwrap();
        let t = greedy_tiling(&h, Pattern::y32());
        let u = uncovered_set(&h, &t);
        let out = construct_r(&h, &t, &u, 1_000).unwrap();
        assert_eq!(out.t1, 0);
        assert_eq!(out.w, u);
        assert_eq!(out.t2, t.size());
        out.check_invariants(&h, &u).unwrap();
    }

    #[test]
    fn construct_r_moves_an_engineered_copy() {
        // copy on {0,1,2,3}; vertex 0 sees many edges into U = {8..16}
        let mut edges = vec![vec![0, 1, 2], vec![0, 1, 3], vec![4, 5, 6], vec![4, 5, 7]];
        for a in 8..16 {
            for b in (a + 1)..16 {
                edges.push(vec![0, a, b]);
            }
        }
        let h = Hypergraph::build(16, 3, edges).unwrap();
        let copies = vec![
            PatternCopy::new(
                &h,
                Pattern::y32(),
                h.edge_index(&[0, 1, 2]).unwrap(),
                h.edge_index(&[0, 1, 3]).unwrap(),
            )
            .unwrap(),
            PatternCopy::new(
                &h,
                Pattern::y32(),
                h.edge_index(&[4, 5, 6]).unwrap(),
                h.edge_index(&[4, 5, 7]).unwrap(),
            )
            .unwrap(),
        ];
        let t = Tiling { copies };
        let u = uncovered_set(&h, &t);
        assert_eq!(u.len(), 8);
        let out = construct_r(&h, &t, &u, 20).unwrap();
        assert_eq!(out.t1, 1);
        assert_eq!(out.r_vertices, vec![0]);
        assert!(out.w.contains(&1) && out.w.contains(&2) && out.w.contains(&3));
        assert_eq!(out.t2, 1);
        out.check_invariants(&h, &u).unwrap();

        // re-application from the output state is a fixed point
        let remaining = Tiling { copies: out.ordered_copies[out.t1..].to_vec() };
        let again = construct_r(&h, &remaining, &out.w, 20).unwrap();
        assert_eq!(again.t1, 0);
        assert_eq!(again.w, out.w);
    }

    #[test]
    fn construct_r_rejects_bad_uncovered() {
        let h = Hypergraph::complete(8, 3).unwrap();
        let (t, _) = max_tiling_exact(&h, Pattern::y32(), DEFAULT_NODE_BUDGET);
        let mut u = uncovered_set(&h, &t);
        u.insert(t.copies[0].footprint[0]);
        assert!(matches!(
            construct_r(&h, &t, &u, 5),
            Err(ProcedureError::UncoveredOverlapsTiling(_))
        ));
    }

    #[test]
    fn uncovered_set_of_a_maximum_tiling_is_y_free() {
        // with nothing moved, W = U, and a copy inside U would extend the
        // maximum tiling
        for seed in 0..8 {
            let h = gen_random(10, 3, 0.45, 300 + seed).unwrap();
            let (t, stats) = max_tiling_exact(&h, Pattern::y32(), DEFAULT_NODE_BUDGET);
            assert!(stats.optimal);
            let u = uncovered_set(&h, &t);
            assert!(y_free_check(&h, &u, Pattern::y32()).is_none(), "seed {seed}");
        }
    }

    #[test]
    fn y_free_detection() {
        let h = Hypergraph::build(6, 3, [[0, 1, 2], [0, 1, 3], [3, 4, 5]]).unwrap();
        let all: BTreeSet<usize> = (0..6).collect();
        let witness = y_free_check(&h, &all, Pattern::y32()).unwrap();
        assert_eq!(witness.footprint, vec![0, 1, 2, 3]);

        let small: BTreeSet<usize> = [0, 1, 2].into_iter().collect();
        assert!(y_free_check(&h, &small, Pattern::y32()).is_none());

        let off: BTreeSet<usize> = [2, 3, 4, 5].into_iter().collect();
        assert!(y_free_check(&h, &off, Pattern::y32()).is_none());
    }

    /// Host on 8 + |W| vertices where selected cross pairs have exactly the
    /// requested number of W-witnesses.
    fn linked_pair_host(pairs: &[(usize, usize, usize)], w_size: usize) -> Hypergraph {
        // copies on {0,1,2,3} and {4,5,6,7}; W = {8..8+w_size}
        let mut edges = vec![vec![0, 1, 2], vec![0, 1, 3], vec![4, 5, 6], vec![4, 5, 7]];
        for &(u, v, count) in pairs {
            for w in 0..count {
                edges.push(vec![u, v, 8 + w]);
            }
        }
        Hypergraph::build(8 + w_size, 3, edges).unwrap()
    }

    fn two_copies(h: &Hypergraph) -> (PatternCopy, PatternCopy) {
        let a = h.edge_index(&[0, 1, 2]).unwrap();
        let b = h.edge_index(&[0, 1, 3]).unwrap();
        let c = h.edge_index(&[4, 5, 6]).unwrap();
        let d = h.edge_index(&[4, 5, 7]).unwrap();
        (
            PatternCopy::new(h, Pattern::y32(), a, b).unwrap(),
            PatternCopy::new(h, Pattern::y32(), c, d).unwrap(),
        )
    }

    #[test]
    fn link_graph_thresholds() {
        let h = linked_pair_host(&[(0, 4, 3), (1, 5, 2)], 4);
        let w: BTreeSet<usize> = (8..12).collect();
        let (p, q) = two_copies(&h);

        let link = link_graph(&h, &w, &p, &q, 3).unwrap();
        assert_eq!(link.edge_count(), 1);
        assert!(link.graph.has_edge(0, 0)); // block positions of 0 and 4

        let link = link_graph(&h, &w, &p, &q, 2).unwrap();
        assert_eq!(link.edge_count(), 2);

        // tau larger than |W| can never be met
        let link = link_graph(&h, &w, &p, &q, 5).unwrap();
        assert_eq!(link.edge_count(), 0);
    }

    #[test]
    fn link_graph_complete_when_everything_links() {
        let mut edges = vec![vec![0, 1, 2], vec![0, 1, 3], vec![4, 5, 6], vec![4, 5, 7]];
        for u in 0..4usize {
            for v in 4..8usize {
                for w in 8..11usize {
                    edges.push(vec![u, v, w]);
                }
            }
        }
        let h = Hypergraph::build(11, 3, edges).unwrap();
        let w: BTreeSet<usize> = (8..11).collect();
        let (p, q) = two_copies(&h);
        let link = link_graph(&h, &w, &p, &q, 3).unwrap();
        assert_eq!(link.edge_count(), 16);

        // overlap rejection
        let bad_w: BTreeSet<usize> = [0, 9].into_iter().collect();
        assert!(link_graph(&h, &bad_w, &p, &q, 1).is_err());
    }

    fn three_blocks_host(
        links: &[(usize, usize, usize)],
        extra: &[Vec<usize>],
        n: usize,
    ) -> (Hypergraph, [PatternCopy; 3], BTreeSet<usize>) {
        // blocks {0..4}, {4..8}, {8..12}; W = {12..n}
        let mut edges = vec![
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![4, 5, 6],
            vec![4, 5, 7],
            vec![8, 9, 10],
            vec![8, 9, 11],
        ];
        for &(u, v, count) in links {
            for w in 0..count {
                edges.push(vec![u, v, 12 + w]);
            }
        }
        edges.extend(extra.iter().cloned());
        edges.sort_unstable();
        edges.dedup();
        let h = Hypergraph::build(n, 3, edges).unwrap();
        let copies = [
            PatternCopy::new(
                &h,
                Pattern::y32(),
                h.edge_index(&[0, 1, 2]).unwrap(),
                h.edge_index(&[0, 1, 3]).unwrap(),
            )
            .unwrap(),
            PatternCopy::new(
                &h,
                Pattern::y32(),
                h.edge_index(&[4, 5, 6]).unwrap(),
                h.edge_index(&[4, 5, 7]).unwrap(),
            )
            .unwrap(),
            PatternCopy::new(
                &h,
                Pattern::y32(),
                h.edge_index(&[8, 9, 10]).unwrap(),
                h.edge_index(&[8, 9, 11]).unwrap(),
            )
            .unwrap(),
        ];
        let w: BTreeSet<usize> = (12..n).collect();
        (h, copies, w)
    }

    #[test]
    fn triple_profile_counts_and_cover() {
        // one link edge between blocks 0-1 through vertex pair (0, 4)
        let (h, copies, w) = three_blocks_host(&[(0, 4, 2)], &[], 16);
        let profile = triple_profile(&h, &w, &copies[0], &copies[1], &copies[2], 2).unwrap();
        assert_eq!(profile.x_t, 1);
        assert_eq!(profile.status, [PairStatus::Kept; 3]);
        // Q_T: no crossing edges among the blocks in this host
        assert_eq!(profile.f, 0);
        let cover = profile.crossing_cover.unwrap();
        assert!(cover[0] == 0 || cover[1] == 4);
        // removing the cover leaves the kept link edges empty
        for (idx, link) in profile.links.iter().enumerate() {
            if profile.status[idx] != PairStatus::Kept {
                continue;
            }
            for (u, v) in link.graph.edges() {
                let endpoints = [link.left_vertices[u], link.right_vertices[v]];
                assert!(endpoints.iter().any(|x| cover.contains(x)));
            }
        }

        // x_T <= 24 even on an absurdly linked host
        let mut links = Vec::new();
        for u in 0..4usize {
            for v in 4..8usize {
                links.push((u, v, 3));
            }
        }
        let (h, copies, w) = three_blocks_host(&links, &[], 16);
        let profile = triple_profile(&h, &w, &copies[0], &copies[1], &copies[2], 3).unwrap();
        assert_eq!(profile.status[0], PairStatus::Improvable);
        assert_eq!(profile.matchings[0], 4);
        assert!(profile.x_t <= 24);
    }

    #[test]
    fn triple_profile_d_rule_empties_pair() {
        // six link edges between blocks 0-1 covered by {0, 1} on the left side
        let links = [
            (0, 4, 1),
            (0, 5, 1),
            (0, 6, 1),
            (1, 5, 1),
            (1, 6, 1),
            (1, 7, 1),
        ];
        let (h, copies, w) = three_blocks_host(&links, &[], 16);
        let profile = triple_profile(&h, &w, &copies[0], &copies[1], &copies[2], 1).unwrap();
        assert_eq!(profile.status[0], PairStatus::DEmptied);
        assert_eq!(profile.x_t, 0);
        assert!(profile.matchings[0] < 3);
    }

    #[test]
    fn improvement_search_finds_and_misses() {
        // bare triple with an edgeless W-neighborhood: nothing beats 12
        let (h, copies, w) = three_blocks_host(&[], &[], 14);
        let out =
            improvement_search(&h, &w, [&copies[0], &copies[1], &copies[2]], DEFAULT_W_CAP, 1 << 20)
                .unwrap();
        assert_eq!(out.coverage, 12);
        assert!(out.improvement.is_none());

        // two W-vertices turn the pair (0,4) into a fourth copy, and spare
        // edges mop up the displaced block vertices: coverage 4+3+3+4 = 14
        let extra =
            vec![vec![0, 4, 12], vec![0, 4, 13], vec![1, 2, 3], vec![5, 6, 7]];
        let (h, copies, w) = three_blocks_host(&[], &extra, 14);
        let out =
            improvement_search(&h, &w, [&copies[0], &copies[1], &copies[2]], DEFAULT_W_CAP, 1 << 20)
                .unwrap();
        assert!(out.coverage >= 13);
        let improved = out.improvement.unwrap();
        crate::tiling::verify_mixed_tiling(&h, Pattern::y32(), &improved).unwrap();
        assert!(improved.coverage(3) >= 13);
    }

    #[test]
    fn improvement_search_on_matching_of_three() {
        // three disjoint link pairs, each with two fresh W-witnesses: the
        // matching lifts to three disjoint copies spanning both blocks
        let links = [(0, 4, 2), (1, 5, 2), (2, 6, 2)];
        // give each pair its own witnesses to keep the copies disjoint
        let mut edges = vec![
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![4, 5, 6],
            vec![4, 5, 7],
            vec![8, 9, 10],
            vec![8, 9, 11],
        ];
        let mut next_w = 12;
        for &(u, v, count) in &links {
            for _ in 0..count {
                edges.push(vec![u, v, next_w]);
                next_w += 1;
            }
        }
        let h = Hypergraph::build(next_w, 3, edges).unwrap();
        let copies = [
            PatternCopy::new(
                &h,
                Pattern::y32(),
                h.edge_index(&[0, 1, 2]).unwrap(),
                h.edge_index(&[0, 1, 3]).unwrap(),
            )
            .unwrap(),
            PatternCopy::new(
                &h,
                Pattern::y32(),
                h.edge_index(&[4, 5, 6]).unwrap(),
                h.edge_index(&[4, 5, 7]).unwrap(),
            )
            .unwrap(),
            PatternCopy::new(
                &h,
                Pattern::y32(),
                h.edge_index(&[8, 9, 10]).unwrap(),
                h.edge_index(&[8, 9, 11]).unwrap(),
            )
            .unwrap(),
        ];
        let w: BTreeSet<usize> = (12..next_w).collect();
        let out =
            improvement_search(&h, &w, [&copies[0], &copies[1], &copies[2]], DEFAULT_W_CAP, 1 << 22)
                .unwrap();
        // three cross copies (12 vertices each 4 = 12) plus the third block's
        // own copy: at least 16 covered
        assert!(out.coverage >= 13, "coverage {}", out.coverage);
        assert!(out.improvement.is_some());
    }
}
