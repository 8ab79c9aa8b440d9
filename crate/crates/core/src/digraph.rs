//! Simple digraphs and the K+_{2,3} finder: an oriented complete bipartite
//! K_{2,3} with all six arcs leaving the side of size two.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DigraphError {
    #[error("arc ({0}, {1}) out of range")]
    ArcOutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
}

#[derive(Debug, Clone)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<usize>>,
    arc_count: usize,
}

/// Five vertices witnessing K+_{2,3}: every arc runs source -> sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K23Plus {
    pub sources: [usize; 2],
    pub sinks: [usize; 3],
}

impl Digraph {
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self, DigraphError> {
        let mut out = vec![Vec::new(); n];
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(DigraphError::ArcOutOfRange(u, v));
            }
            if u == v {
                return Err(DigraphError::Loop(u));
            }
            if out[u].contains(&v) {
                return Err(DigraphError::DuplicateArc(u, v));
            }
            out[u].push(v);
        }
        for list in &mut out {
            list.sort_unstable();
        }
        Ok(Digraph { n, out, arc_count: arcs.len() })
    }

    /// i -> j for all i < j.
    pub fn transitive_tournament(n: usize) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut arc_count = 0;
        for i in 0..n {
            for j in i + 1..n {
                out[i].push(j);
                arc_count += 1;
            }
        }
        Digraph { n, out, arc_count }
    }

    pub fn complete(n: usize) -> Self {
        let mut out = vec![Vec::new(); n];
        for i in 0..n {
            out[i] = (0..n).filter(|&j| j != i).collect();
        }
        Digraph { n, out, arc_count: n * n.saturating_sub(1) }
    }

    /// Every ordered pair becomes an arc independently with probability p.
    pub fn random(n: usize, p: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    let x: f64 = rng.gen();
                    if x < p {
                        arcs.push((u, v));
                    }
                }
            }
        }
        Digraph::new(n, &arcs).expect("generated arcs are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    /// First K+_{2,3} in lexicographic source-pair order: intersect the
    /// out-neighborhoods of each pair and keep the three smallest common
    /// out-neighbors distinct from the pair.
    pub fn find_k23_plus(&self) -> Option<K23Plus> {
        for a in 0..self.n {
            for b in a + 1..self.n {
                let mut sinks = [0usize; 3];
                let mut found = 0;
                let (mut i, mut j) = (0, 0);
                let (oa, ob) = (&self.out[a], &self.out[b]);
                while i < oa.len() && j < ob.len() && found < 3 {
                    match oa[i].cmp(&ob[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            let c = oa[i];
                            if c != a && c != b {
                                sinks[found] = c;
                                found += 1;
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                }
                if found == 3 {
                    return Some(K23Plus { sources: [a, b], sinks });
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_digraph_has_copy() {
        assert!(Digraph::complete(5).find_k23_plus().is_some());
    }

    #[test]
    fn transitive_tournament_on_five() {
        let d = Digraph::transitive_tournament(5);
        let k = d.find_k23_plus().unwrap();
        assert_eq!(k.sources, [0, 1]);
        assert_eq!(k.sinks, [2, 3, 4]);
    }

    #[test]
    fn edgeless_and_too_small_have_none() {
        assert!(Digraph::new(6, &[]).unwrap().find_k23_plus().is_none());
        assert!(Digraph::complete(4).find_k23_plus().is_none());
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert_eq!(Digraph::new(3, &[(1, 1)]).unwrap_err(), DigraphError::Loop(1));
        assert_eq!(
            Digraph::new(3, &[(0, 1), (0, 1)]).unwrap_err(),
            DigraphError::DuplicateArc(0, 1)
        );
    }

    #[test]
    fn random_is_deterministic() {
        let a = Digraph::random(6, 0.5, 11);
        let b = Digraph::random(6, 0.5, 11);
        assert_eq!(a.arc_count(), b.arc_count());
        for u in 0..6 {
            assert_eq!(a.out_neighbors(u), b.out_neighbors(u));
        }
    }
}
