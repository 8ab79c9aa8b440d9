//! Immutable k-uniform hypergraphs, the standard generators, and elementary
//! counting measures (degrees into sets, cross densities, blow-ups).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("edge {index} has arity {got}, expected {expected}")]
    WrongArity { index: usize, got: usize, expected: usize },
    #[error("edge {index} repeats vertex {vertex}")]
    RepeatedVertex { index: usize, vertex: usize },
    #[error("edge {index} contains out-of-range vertex {vertex} (n = {n})")]
    OutOfRange { index: usize, vertex: usize, n: usize },
    #[error("edge {index} duplicates an earlier edge")]
    DuplicateEdge { index: usize },
    #[error("uniformity k = {0} must be at least 2")]
    BadUniformity(usize),
    #[error("n = {n} is too small, need at least {needed}")]
    TooFewVertices { n: usize, needed: usize },
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("density parts must be nonempty and pairwise disjoint")]
    BadDensityParts,
    #[error("operation requires k = 3, got k = {0}")]
    NotThreeUniform(usize),
}

/// An immutable k-uniform hypergraph on vertices `0..n`.
///
/// Edges are stored as strictly increasing k-tuples, sorted lexicographically
/// with no duplicates, so equality of edge lists is equality of hypergraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Canonicalizes and validates a raw edge list. Duplicate edges are an
    /// error, not silently merged: a generator emitting the same edge twice
    /// is a bug we want surfaced.
    pub fn build<I, E>(n: usize, k: usize, raw_edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if k < 2 {
            return Err(HypergraphError::BadUniformity(k));
        }
        let mut edges: Vec<Vec<usize>> = Vec::new();
        for (index, raw) in raw_edges.into_iter().enumerate() {
            let raw = raw.as_ref();
            if raw.len() != k {
                return Err(HypergraphError::WrongArity { index, got: raw.len(), expected: k });
            }
            let mut e = raw.to_vec();
            e.sort_unstable();
            for w in e.windows(2) {
                if w[0] == w[1] {
                    return Err(HypergraphError::RepeatedVertex { index, vertex: w[0] });
                }
            }
            if let Some(&v) = e.last() {
                if v >= n {
                    return Err(HypergraphError::OutOfRange { index, vertex: v, n });
                }
            }
            edges.push(e);
        }
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by(|&a, &b| edges[a].cmp(&edges[b]));
        for w in order.windows(2) {
            if edges[w[0]] == edges[w[1]] {
                return Err(HypergraphError::DuplicateEdge { index: w[0].max(w[1]) });
            }
        }
        edges.sort_unstable();
        Ok(Hypergraph { n, k, edges })
    }

    pub fn edgeless(n: usize, k: usize) -> Self {
        Hypergraph { n, k: k.max(2), edges: Vec::new() }
    }

    /// Complete k-graph on `n` vertices.
    pub fn complete(n: usize, k: usize) -> Result<Self, HypergraphError> {
        if k < 2 {
            return Err(HypergraphError::BadUniformity(k));
        }
        let mut edges = Vec::new();
        for_each_ksubset(n, k, |e| edges.push(e.to_vec()));
        Ok(Hypergraph { n, k, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &[usize] {
        &self.edges[index]
    }

    /// Index of an edge given as an arbitrary-order vertex set.
    pub fn edge_index(&self, verts: &[usize]) -> Option<usize> {
        let mut key = verts.to_vec();
        key.sort_unstable();
        self.edges.binary_search_by(|e| e.as_slice().cmp(key.as_slice())).ok()
    }

    pub fn has_edge(&self, verts: &[usize]) -> bool {
        self.edge_index(verts).is_some()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    /// Number of edges containing `v` whose other two vertices both lie in
    /// `set`. Only defined for 3-graphs.
    pub fn degree_into_set(&self, v: usize, set: &BTreeSet<usize>) -> Result<usize, HypergraphError> {
        if self.k != 3 {
            return Err(HypergraphError::NotThreeUniform(self.k));
        }
        let count = self
            .edges
            .iter()
            .filter(|e| e.contains(&v) && e.iter().filter(|&&u| u != v).all(|u| set.contains(u)))
            .count();
        Ok(count)
    }

    /// Induced subgraph on `sub` (any order, deduplicated), relabeled onto
    /// `0..sub.len()`. Returns the graph together with the map from new ids
    /// back to original ids.
    pub fn induced(&self, sub: &[usize]) -> Result<(Hypergraph, Vec<usize>), HypergraphError> {
        let verts: BTreeSet<usize> = sub.iter().copied().collect();
        if let Some(&v) = verts.iter().next_back() {
            if v >= self.n {
                return Err(HypergraphError::OutOfRange { index: 0, vertex: v, n: self.n });
            }
        }
        let back: Vec<usize> = verts.iter().copied().collect();
        let fwd: std::collections::HashMap<usize, usize> =
            back.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|v| verts.contains(v)))
            .map(|e| e.iter().map(|v| fwd[v]).collect())
            .collect();
        let h = Hypergraph { n: back.len(), k: self.k, edges };
        Ok((h, back))
    }

    /// Number of crossing edges with one vertex in each part, plus the exact
    /// density e(A1,A2,A3) / (|A1||A2||A3|). Only defined for 3-graphs.
    pub fn density_triple(
        &self,
        a1: &BTreeSet<usize>,
        a2: &BTreeSet<usize>,
        a3: &BTreeSet<usize>,
    ) -> Result<(usize, BigRational), HypergraphError> {
        if self.k != 3 {
            return Err(HypergraphError::NotThreeUniform(self.k));
        }
        if a1.is_empty() || a2.is_empty() || a3.is_empty() {
            return Err(HypergraphError::BadDensityParts);
        }
        if a1.intersection(a2).next().is_some()
            || a2.intersection(a3).next().is_some()
            || a1.intersection(a3).next().is_some()
        {
            return Err(HypergraphError::BadDensityParts);
        }
        let count = self
            .edges
            .iter()
            .filter(|e| {
                e.iter().filter(|v| a1.contains(v)).count() == 1
                    && e.iter().filter(|v| a2.contains(v)).count() == 1
                    && e.iter().filter(|v| a3.contains(v)).count() == 1
            })
            .count();
        let denom = BigUint::from(a1.len()) * BigUint::from(a2.len()) * BigUint::from(a3.len());
        let d = BigRational::new(BigUint::from(count).into(), denom.into());
        Ok((count, d))
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, k={}, m={})", self.n, self.k, self.edges.len())
    }
}

/// The pattern Y_{k,b}: two k-edges intersecting in exactly b vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pattern {
    k: usize,
    b: usize,
}

impl Pattern {
    pub fn new(k: usize, b: usize) -> Result<Self, HypergraphError> {
        if k < 2 {
            return Err(HypergraphError::BadUniformity(k));
        }
        if b == 0 || b >= k {
            return Err(HypergraphError::BadParameter(format!(
                "pattern overlap b = {b} must satisfy 0 < b < k = {k}"
            )));
        }
        Ok(Pattern { k, b })
    }

    /// Y = Y_{3,2}, the central pattern of this crate.
    pub fn y32() -> Self {
        Pattern { k: 3, b: 2 }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Vertices in one copy: 2k - b.
    pub fn footprint_size(&self) -> usize {
        2 * self.k - self.b
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y_{{{},{}}}", self.k, self.b)
    }
}

/// Result of a b-blow-up: the blown-up graph plus both clone maps.
#[derive(Debug, Clone)]
pub struct BlowUp {
    pub graph: Hypergraph,
    /// `clone_of[v']` is the original vertex that `v'` clones.
    pub clone_of: Vec<usize>,
    /// `clones[v]` lists the clones of original vertex `v`, in id order.
    pub clones: Vec<Vec<usize>>,
}

/// The b-blow-up F{b}: vertex v becomes clones b*v..b*v+b, and a clone tuple
/// is an edge exactly when the originals form an edge of F.
pub fn blow_up(f: &Hypergraph, b: usize) -> Result<BlowUp, HypergraphError> {
    if b == 0 {
        return Err(HypergraphError::BadParameter("blow-up factor must be >= 1".into()));
    }
    let n = f.n() * b;
    let clone_of: Vec<usize> = (0..n).map(|v| v / b).collect();
    let clones: Vec<Vec<usize>> = (0..f.n()).map(|v| (v * b..(v + 1) * b).collect()).collect();
    let k = f.k();
    let mut edges = Vec::with_capacity(f.edge_count() * b.pow(k as u32));
    for e in f.edges() {
        let mut choice = vec![0usize; k];
        loop {
            let clone_edge: Vec<usize> = e.iter().zip(&choice).map(|(&v, &c)| v * b + c).collect();
            edges.push(clone_edge);
            let mut pos = k;
            while pos > 0 {
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < b {
                    break;
                }
                choice[pos] = 0;
            }
            if choice.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    let graph = Hypergraph::build(n, k, edges)?;
    Ok(BlowUp { graph, clone_of, clones })
}

/// Complete k-graph on the first (2k-b)(s+1)-1 vertices, remaining vertices
/// isolated. One of the two extremal constructions for the tiling bound.
pub fn gen_clique_plus_isolated(
    n: usize,
    s: usize,
    k: usize,
    b: usize,
) -> Result<Hypergraph, HypergraphError> {
    let pattern = Pattern::new(k, b)?;
    let core = pattern.footprint_size() * (s + 1) - 1;
    if n < core {
        return Err(HypergraphError::TooFewVertices { n, needed: core });
    }
    let mut edges = Vec::new();
    for_each_ksubset(core, k, |e| edges.push(e.to_vec()));
    Hypergraph::build(n, k, edges)
}

/// All k-sets meeting the cover set {0..s-1}: the complete k-graph minus a
/// complete k-graph on the other n-s vertices.
pub fn gen_cover_construction(n: usize, s: usize, k: usize) -> Result<Hypergraph, HypergraphError> {
    if k < 2 {
        return Err(HypergraphError::BadUniformity(k));
    }
    if s > n {
        return Err(HypergraphError::BadParameter(format!("s = {s} exceeds n = {n}")));
    }
    let mut edges = Vec::new();
    for_each_ksubset(n, k, |e| {
        if e[0] < s {
            edges.push(e.to_vec());
        }
    });
    Hypergraph::build(n, k, edges)
}

/// K^(k)_{t,n}: the complete k-partite k-graph with one part of size t and
/// the other k-1 parts of size n, together with the n-t isolated vertices
/// that pad the small part up to n. Layout: part 0 occupies ids 0..n with
/// only 0..t active; part i occupies i*n..(i+1)*n.
///
/// With `minus` set, the lexicographically first edge {0, n, 2n, ...} is
/// removed (any single removal gives an isomorphic graph; fixing the first
/// keeps output reproducible).
pub fn gen_kpartite_extremal(
    k: usize,
    n: usize,
    t: usize,
    minus: bool,
) -> Result<Hypergraph, HypergraphError> {
    if k < 2 {
        return Err(HypergraphError::BadUniformity(k));
    }
    if t == 0 || t >= n {
        return Err(HypergraphError::BadParameter(format!(
            "part size t = {t} must satisfy 1 <= t <= n-1 = {}",
            n.saturating_sub(1)
        )));
    }
    let mut edges = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        let in_range = choice[0] < t;
        if in_range {
            let e: Vec<usize> = choice.iter().enumerate().map(|(i, &c)| i * n + c).collect();
            edges.push(e);
        }
        let mut pos = k;
        let mut done = true;
        while pos > 0 {
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < n {
                done = false;
                break;
            }
            choice[pos] = 0;
        }
        if done {
            break;
        }
    }
    if minus {
        edges.sort_unstable();
        edges.remove(0);
    }
    Hypergraph::build(k * n, k, edges)
}

/// Binomial random k-graph: every k-set kept independently with probability
/// p. Identical seeds give identical graphs.
pub fn gen_random(n: usize, k: usize, p: f64, seed: u64) -> Result<Hypergraph, HypergraphError> {
    if k < 2 {
        return Err(HypergraphError::BadUniformity(k));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(HypergraphError::BadParameter(format!("probability p = {p} not in [0,1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for_each_ksubset(n, k, |e| {
        let x: f64 = rng.gen();
        if x < p {
            edges.push(e.to_vec());
        }
    });
    Hypergraph::build(n, k, edges)
}

/// Which of the two extremal constructions attains the conjectured maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundRegime {
    Clique,
    Cover,
    Tie,
}

/// The conjectured maximum edge count of an n-vertex k-graph with no
/// Y_{k,b}-tiling of size s+1, without the o(n^k) slack term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureBound {
    pub value: BigUint,
    pub clique_term: BigUint,
    pub cover_term: BigUint,
    pub regime: BoundRegime,
    /// The conjectured bound carries an o(n^k) additive term that this exact
    /// evaluation omits; reports must surface that.
    pub asymptotic_slack_omitted: bool,
}

/// max{ C((2k-b)(s+1)-1, k), C(n,k) - C(n-s,k) }, in exact integers.
pub fn conjecture_bound(
    n: usize,
    s: usize,
    k: usize,
    b: usize,
) -> Result<ConjectureBound, HypergraphError> {
    let pattern = Pattern::new(k, b)?;
    let threshold = pattern.footprint_size() * (s + 1) - 1;
    if n < threshold {
        return Err(HypergraphError::TooFewVertices { n, needed: threshold });
    }
    let clique_term = binomial(threshold, k);
    let cover_term = binomial(n, k) - binomial(n - s, k);
    let (value, regime) = match clique_term.cmp(&cover_term) {
        std::cmp::Ordering::Greater => (clique_term.clone(), BoundRegime::Clique),
        std::cmp::Ordering::Less => (cover_term.clone(), BoundRegime::Cover),
        std::cmp::Ordering::Equal => (clique_term.clone(), BoundRegime::Tie),
    };
    Ok(ConjectureBound { value, clique_term, cover_term, regime, asymptotic_slack_omitted: true })
}

/// C(n, k) in arbitrary precision.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Visits all k-subsets of {0..n} as sorted slices, in lexicographic order.
pub fn for_each_ksubset<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // rightmost position that can still advance
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
