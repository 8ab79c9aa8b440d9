//! Ordered 3-graphs and greedy tilings by the ordered pattern of two triples
//! intersecting exactly in their shared third coordinate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderedError {
    #[error("edge {0:?} repeats a vertex")]
    RepeatedVertex([usize; 3]),
    #[error("edge {0:?} out of range (n = {1})")]
    OutOfRange([usize; 3], usize),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge([usize; 3]),
}

/// A 3-graph whose edges are ordered triples of distinct vertices.
#[derive(Debug, Clone)]
pub struct OrderedTripleGraph {
    n: usize,
    edges: Vec<[usize; 3]>,
}

/// Two ordered edges meeting exactly in their (common) third coordinate;
/// five vertices in total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VCopy {
    pub first: [usize; 3],
    pub second: [usize; 3],
}

impl VCopy {
    pub fn vertices(&self) -> [usize; 5] {
        [self.first[0], self.first[1], self.second[0], self.second[1], self.first[2]]
    }
}

impl OrderedTripleGraph {
    pub fn new(n: usize, edges: &[[usize; 3]]) -> Result<Self, OrderedError> {
        let mut sorted = edges.to_vec();
        for e in &sorted {
            if e[0] == e[1] || e[0] == e[2] || e[1] == e[2] {
                return Err(OrderedError::RepeatedVertex(*e));
            }
            if e.iter().any(|&v| v >= n) {
                return Err(OrderedError::OutOfRange(*e, n));
            }
        }
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(OrderedError::DuplicateEdge(w[0]));
            }
        }
        Ok(OrderedTripleGraph { n, edges: sorted })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    /// Number of edges whose third coordinate is `v`.
    pub fn third_in_count(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e[2] == v).count()
    }

    /// Greedy vertex-disjoint tiling by copies of the two-edges-sharing-a-
    /// third-vertex pattern.
    ///
    /// First, edges whose third vertex has a positive third-position count
    /// below `prune_threshold` are deleted, repeating until stable (the
    /// default threshold 0 disables this). Then edges are scanned in
    /// lexicographic order; each is paired with the first other edge sharing
    /// exactly its third coordinate and otherwise vertex-fresh. Stops at
    /// `target` copies; the flag reports whether the target was met.
    pub fn v_tiling(&self, target: usize, prune_threshold: usize) -> (Vec<VCopy>, bool) {
        let mut edges: Vec<[usize; 3]> = self.edges.clone();
        if prune_threshold > 0 {
            loop {
                let mut counts = vec![0usize; self.n];
                for e in &edges {
                    counts[e[2]] += 1;
                }
                let before = edges.len();
                edges.retain(|e| counts[e[2]] >= prune_threshold);
                if edges.len() == before {
                    break;
                }
            }
        }

        let mut used = vec![false; self.n];
        let mut copies = Vec::new();
        'outer: for i in 0..edges.len() {
            if copies.len() >= target {
                break;
            }
            let e = edges[i];
            if e.iter().any(|&v| used[v]) {
                continue;
            }
            for (j, f) in edges.iter().enumerate() {
                if j == i || f[2] != e[2] {
                    continue;
                }
                if f[0] == e[0] || f[0] == e[1] || f[1] == e[0] || f[1] == e[1] {
                    continue;
                }
                if used[f[0]] || used[f[1]] {
                    continue;
                }
                let copy = VCopy { first: e, second: *f };
                for v in copy.vertices() {
                    used[v] = true;
                }
                copies.push(copy);
                continue 'outer;
            }
        }
        let reached = copies.len() >= target;
        (copies, reached)
    }
}
