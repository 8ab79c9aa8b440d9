//! Bipartite graphs with maximum matching and the matching-size minimum
//! vertex cover that König's theorem pairs with it.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BipartiteError {
    #[error("edge ({0}, {1}) out of range")]
    EdgeOutOfRange(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
}

/// Bipartite graph with sides L = 0..left and R = 0..right. Edges always run
/// between the sides, so non-bipartite input is unrepresentable; the
/// constructor still validates ranges and rejects duplicates.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

/// A maximum matching plus a minimum vertex cover of equal size.
#[derive(Debug, Clone)]
pub struct MatchingCover {
    pub matching: Vec<(usize, usize)>,
    pub cover_left: Vec<usize>,
    pub cover_right: Vec<usize>,
}

impl MatchingCover {
    pub fn cover_size(&self) -> usize {
        self.cover_left.len() + self.cover_right.len()
    }
}

impl BipartiteGraph {
    pub fn new(
        left: usize,
        right: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, BipartiteError> {
        let mut adj = vec![Vec::new(); left];
        for &(u, v) in edges {
            if u >= left || v >= right {
                return Err(BipartiteError::EdgeOutOfRange(u, v));
            }
            if adj[u].contains(&v) {
                return Err(BipartiteError::DuplicateEdge(u, v));
            }
            adj[u].push(v);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(BipartiteGraph { left, right, adj, edge_count: edges.len() })
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    /// Maximum matching by augmenting paths, then the König cover: with Z
    /// the set of vertices alternating-reachable from unmatched left
    /// vertices, the cover is (L \ Z) on the left and (R ∩ Z) on the right.
    pub fn matching_and_cover(&self) -> MatchingCover {
        let mut match_left: Vec<Option<usize>> = vec![None; self.left];
        let mut match_right: Vec<Option<usize>> = vec![None; self.right];
        for u in 0..self.left {
            let mut seen = vec![false; self.right];
            self.augment(u, &mut seen, &mut match_left, &mut match_right);
        }

        let mut reach_left = vec![false; self.left];
        let mut reach_right = vec![false; self.right];
        let mut stack: Vec<usize> =
            (0..self.left).filter(|&u| match_left[u].is_none()).collect();
        for &u in &stack {
            reach_left[u] = true;
        }
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if reach_right[v] {
                    continue;
                }
                reach_right[v] = true;
                if let Some(u2) = match_right[v] {
                    if !reach_left[u2] {
                        reach_left[u2] = true;
                        stack.push(u2);
                    }
                }
            }
        }

        let matching: Vec<(usize, usize)> =
            (0..self.left).filter_map(|u| match_left[u].map(|v| (u, v))).collect();
        let cover_left: Vec<usize> = (0..self.left).filter(|&u| !reach_left[u]).collect();
        let cover_right: Vec<usize> = (0..self.right).filter(|&v| reach_right[v]).collect();
        MatchingCover { matching, cover_left, cover_right }
    }

    fn augment(
        &self,
        u: usize,
        seen: &mut [bool],
        match_left: &mut [Option<usize>],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for &v in &self.adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if match_right[v].is_none()
                || self.augment(match_right[v].unwrap(), seen, match_left, match_right)
            {
                match_left[u] = Some(v);
                match_right[v] = Some(u);
                return true;
            }
        }
        false
    }

    /// True when removing the listed vertices deletes every edge.
    pub fn is_cover(&self, cover_left: &[usize], cover_right: &[usize]) -> bool {
        self.edges()
            .all(|(u, v)| cover_left.contains(&u) || cover_right.contains(&v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k23_matching_and_cover() {
        let mut edges = Vec::new();
        for u in 0..2 {
            for v in 0..3 {
                edges.push((u, v));
            }
        }
        let g = BipartiteGraph::new(2, 3, &edges).unwrap();
        let mc = g.matching_and_cover();
        assert_eq!(mc.matching.len(), 2);
        assert_eq!(mc.cover_size(), 2);
        assert!(g.is_cover(&mc.cover_left, &mc.cover_right));
    }

    #[test]
    fn single_edge() {
        let g = BipartiteGraph::new(1, 1, &[(0, 0)]).unwrap();
        let mc = g.matching_and_cover();
        assert_eq!(mc.matching.len(), 1);
        assert_eq!(mc.cover_size(), 1);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            BipartiteGraph::new(2, 2, &[(0, 5)]).unwrap_err(),
            BipartiteError::EdgeOutOfRange(0, 5)
        );
        assert_eq!(
            BipartiteGraph::new(2, 2, &[(0, 0), (0, 0)]).unwrap_err(),
            BipartiteError::DuplicateEdge(0, 0)
        );
    }

    #[test]
    fn empty_graph() {
        let g = BipartiteGraph::new(3, 3, &[]).unwrap();
        let mc = g.matching_and_cover();
        assert!(mc.matching.is_empty());
        assert_eq!(mc.cover_size(), 0);
    }
}
