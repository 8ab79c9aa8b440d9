//! Exact solvers: maximum Y-tilings, maximum-coverage {Y,E}-tilings, and the
//! maximum edge count of a pattern-free k-graph.
//!
//! The tiling solvers branch on the lexicographically first uncovered vertex
//! that still lies in an available copy, trying copies in footprint order and
//! then the branch that leaves the vertex uncovered. Subproblems are keyed on
//! the set of available vertices and memoized, and a node is settled without
//! branching whenever greedy completion meets the floor(remaining/(2k-b))
//! bound. A node budget caps the search; exhausting it downgrades the result
//! to a flagged lower bound.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::hypergraph::{Hypergraph, Pattern};
use crate::tiling::{enumerate_copies, MixedTiling, Tiling};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Search accounting attached to every exact result.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    /// False only when the node budget ran out; the result is then just the
    /// best certified lower bound.
    pub optimal: bool,
}

/// Solver output in the wire format shared with the CLI.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveResult {
    pub size: usize,
    pub coverage: usize,
    pub copies: Vec<[usize; 2]>,
    pub singles: Vec<usize>,
    pub optimal: bool,
    pub nodes: u64,
}

impl SolveResult {
    pub fn from_tiling(t: &Tiling, stats: SearchStats) -> Self {
        SolveResult {
            size: t.size(),
            coverage: t.covered_vertices(),
            copies: t.copies.iter().map(|c| [c.edge_a, c.edge_b]).collect(),
            singles: Vec::new(),
            optimal: stats.optimal,
            nodes: stats.nodes,
        }
    }

    pub fn from_mixed(t: &MixedTiling, k: usize, stats: SearchStats) -> Self {
        SolveResult {
            size: t.copies.len(),
            coverage: t.coverage(k),
            copies: t.copies.iter().map(|c| [c.edge_a, c.edge_b]).collect(),
            singles: t.singles.clone(),
            optimal: stats.optimal,
            nodes: stats.nodes,
        }
    }
}

/// Fixed-width bitset over the host's vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Mask(Box<[u64]>);

impl Mask {
    fn full(n: usize) -> Self {
        let words = n.div_ceil(64);
        let mut w = vec![u64::MAX; words];
        if !n.is_multiple_of(64) && words > 0 {
            w[words - 1] = (1u64 << (n % 64)) - 1;
        }
        Mask(w.into_boxed_slice())
    }

    fn empty(n: usize) -> Self {
        Mask(vec![0u64; n.div_ceil(64)].into_boxed_slice())
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn without(&self, i: usize) -> Mask {
        let mut m = self.clone();
        m.0[i / 64] &= !(1 << (i % 64));
        m
    }

    fn contains_all(&self, other: &Mask) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & b == *b)
    }

    fn minus(&self, other: &Mask) -> Mask {
        Mask(self.0.iter().zip(other.0.iter()).map(|(a, b)| a & !b).collect())
    }

    fn and_popcount(&self, other: &Mask) -> usize {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// An item the mixed solver can place: a pattern copy or a single edge.
struct Item {
    fp: Mask,
    vertices: Vec<usize>,
    coverage: u32,
    /// Index into the copy list, or the host edge index for singles.
    source: u32,
    is_copy: bool,
}

#[derive(Clone, Copy)]
enum Decision {
    Leaf,
    Greedy,
    Skip(u32),
    Take(u32),
}

/// Value ordering for the mixed solver: more covered vertices first, then
/// fewer components.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Value {
    coverage: u32,
    components: u32,
}

impl Value {
    const ZERO: Value = Value { coverage: 0, components: 0 };

    fn beats(self, other: Value) -> bool {
        self.coverage > other.coverage
            || (self.coverage == other.coverage && self.components < other.components)
    }

    fn plus_item(self, item_cov: u32) -> Value {
        Value { coverage: self.coverage + item_cov, components: self.components + 1 }
    }
}

struct PackSolver {
    items: Vec<Item>,
    of_vertex: Vec<Vec<u32>>,
    active: Mask,
    /// Some(footprint size) enables the floor(remaining/size) bound for the
    /// uniform (pure tiling) case; the mixed case uses plain popcount.
    uniform: Option<u32>,
    memo: HashMap<Mask, (Value, Decision)>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl PackSolver {
    fn new(n: usize, items: Vec<Item>, uniform: Option<u32>, budget: u64) -> Self {
        let mut of_vertex = vec![Vec::new(); n];
        let mut active = Mask::empty(n);
        for (i, item) in items.iter().enumerate() {
            for &v in &item.vertices {
                active.set(v);
                of_vertex[v].push(i as u32);
            }
        }
        PackSolver {
            items,
            of_vertex,
            active,
            uniform,
            memo: HashMap::new(),
            nodes: 0,
            budget,
            exhausted: false,
        }
    }

    /// First available vertex with at least one fully available item.
    fn branch_vertex(&self, mask: &Mask) -> Option<usize> {
        mask.iter_ones()
            .find(|&v| self.of_vertex[v].iter().any(|&i| mask.contains_all(&self.items[i as usize].fp)))
    }

    fn greedy(&self, mask: &Mask) -> (Value, Vec<u32>) {
        let mut mask = mask.clone();
        let mut out = Vec::new();
        let mut value = Value::ZERO;
        for (i, item) in self.items.iter().enumerate() {
            if mask.contains_all(&item.fp) {
                mask = mask.minus(&item.fp);
                value = value.plus_item(item.coverage);
                out.push(i as u32);
            }
        }
        (value, out)
    }

    fn upper_bound(&self, mask: &Mask) -> u32 {
        let reachable = mask.and_popcount(&self.active) as u32;
        match self.uniform {
            Some(fp) => reachable / fp * fp,
            None => reachable,
        }
    }

    fn best(&mut self, mask: &Mask) -> Value {
        if let Some(&(v, _)) = self.memo.get(mask) {
            return v;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
        }
        if self.exhausted {
            return self.greedy(mask).0;
        }
        let v = match self.branch_vertex(mask) {
            None => {
                self.memo.insert(mask.clone(), (Value::ZERO, Decision::Leaf));
                return Value::ZERO;
            }
            Some(v) => v,
        };
        let (greedy_value, _) = self.greedy(mask);
        if greedy_value.coverage == self.upper_bound(mask) {
            self.memo.insert(mask.clone(), (greedy_value, Decision::Greedy));
            return greedy_value;
        }
        let mut best = Value { coverage: 0, components: u32::MAX };
        let mut decision = Decision::Leaf;
        let candidates: Vec<u32> = self.of_vertex[v]
            .iter()
            .copied()
            .filter(|&i| mask.contains_all(&self.items[i as usize].fp))
            .collect();
        for i in candidates {
            let item_cov = self.items[i as usize].coverage;
            let sub = mask.minus(&self.items[i as usize].fp);
            let val = self.best(&sub).plus_item(item_cov);
            if val.beats(best) {
                best = val;
                decision = Decision::Take(i);
            }
        }
        let skip = self.best(&mask.without(v));
        if skip.beats(best) {
            best = skip;
            decision = Decision::Skip(v as u32);
        }
        if !self.exhausted {
            self.memo.insert(mask.clone(), (best, decision));
        }
        best
    }

    /// Replays memoized decisions from `mask`, falling back to greedy in any
    /// region the budget cut off.
    fn reconstruct(&self, mask: &Mask, out: &mut Vec<u32>) {
        let mut mask = mask.clone();
        loop {
            match self.memo.get(&mask) {
                None => {
                    // budget cut this region off; fall back to greedy
                    let (_, picks) = self.greedy(&mask);
                    out.extend(picks);
                    return;
                }
                Some(&(_, Decision::Leaf)) => return,
                Some(&(_, Decision::Greedy)) => {
                    let (_, picks) = self.greedy(&mask);
                    out.extend(picks);
                    return;
                }
                Some(&(_, Decision::Skip(v))) => {
                    mask = mask.without(v as usize);
                }
                Some(&(_, Decision::Take(i))) => {
                    out.push(i);
                    mask = mask.minus(&self.items[i as usize].fp);
                }
            }
        }
    }

    fn stats(&self) -> SearchStats {
        SearchStats { nodes: self.nodes, optimal: !self.exhausted }
    }
}

/// A maximum-cardinality family of vertex-disjoint pattern copies.
pub fn max_tiling_exact(h: &Hypergraph, pattern: Pattern, budget: u64) -> (Tiling, SearchStats) {
    let copies = enumerate_copies(h, pattern);
    let items: Vec<Item> = copies
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut fp = Mask::empty(h.n());
            for &v in &c.footprint {
                fp.set(v);
            }
            Item {
                fp,
                vertices: c.footprint.clone(),
                coverage: pattern.footprint_size() as u32,
                source: i as u32,
                is_copy: true,
            }
        })
        .collect();
    let mut solver = PackSolver::new(h.n(), items, Some(pattern.footprint_size() as u32), budget);
    let full = Mask::full(h.n());
    let value = solver.best(&full);
    let mut picks = Vec::new();
    solver.reconstruct(&full, &mut picks);
    let tiling = Tiling {
        copies: picks.iter().map(|&i| copies[solver.items[i as usize].source as usize].clone()).collect(),
    };
    let stats = solver.stats();
    debug_assert!(!stats.optimal || tiling.covered_vertices() as u32 == value.coverage);
    (tiling, stats)
}

/// A {pattern, edge}-tiling maximizing covered vertices (2k-b per copy, k
/// per single edge), ties broken toward fewer components.
pub fn max_mixed_tiling_exact(
    h: &Hypergraph,
    pattern: Pattern,
    budget: u64,
) -> (MixedTiling, SearchStats) {
    let copies = enumerate_copies(h, pattern);
    let mut items: Vec<Item> = Vec::with_capacity(copies.len() + h.edge_count());
    for (i, c) in copies.iter().enumerate() {
        let mut fp = Mask::empty(h.n());
        for &v in &c.footprint {
            fp.set(v);
        }
        items.push(Item {
            fp,
            vertices: c.footprint.clone(),
            coverage: pattern.footprint_size() as u32,
            source: i as u32,
            is_copy: true,
        });
    }
    for (e, verts) in h.edges().iter().enumerate() {
        let mut fp = Mask::empty(h.n());
        for &v in verts {
            fp.set(v);
        }
        items.push(Item {
            fp,
            vertices: verts.clone(),
            coverage: h.k() as u32,
            source: e as u32,
            is_copy: false,
        });
    }
    let mut solver = PackSolver::new(h.n(), items, None, budget);
    let full = Mask::full(h.n());
    let value = solver.best(&full);
    let mut picks = Vec::new();
    solver.reconstruct(&full, &mut picks);
    let mut tiling = MixedTiling::default();
    for &i in &picks {
        let item = &solver.items[i as usize];
        if item.is_copy {
            tiling.copies.push(copies[item.source as usize].clone());
        } else {
            tiling.singles.push(item.source as usize);
        }
    }
    tiling.copies.sort();
    tiling.singles.sort_unstable();
    let stats = solver.stats();
    debug_assert!(!stats.optimal || tiling.coverage(h.k()) as u32 == value.coverage);
    (tiling, stats)
}

/// Result of the pattern-free extremal search.
#[derive(Debug, Clone)]
pub struct PatternFreeResult {
    pub max_edges: usize,
    pub witness: Hypergraph,
    pub stats: SearchStats,
}

/// Maximum edge count of a pattern-free k-graph on n vertices, with a
/// witness. For Y_{3,2} this is the largest triple system with pairwise edge
/// intersections at most one.
///
/// Branch and bound over candidate edges in lexicographic order. When
/// b = k-1, two edges conflict exactly when they share a (k-1)-set, so each
/// chosen edge consumes k fresh (k-1)-sets and floor(free/(k)) bounds the
/// remaining gain.
pub fn max_pattern_free_edges(n: usize, pattern: Pattern, budget: u64) -> PatternFreeResult {
    let k = pattern.k();
    let b = pattern.b();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    crate::hypergraph::for_each_ksubset(n, k, |e| candidates.push(e.to_vec()));

    // sub-structure accounting for the b = k-1 bound
    let shell_bound = b + 1 == k;
    let mut shell_ids: Vec<Vec<usize>> = Vec::new();
    let mut shell_count = 0usize;
    if shell_bound {
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        crate::hypergraph::for_each_ksubset(n, k - 1, |s| {
            let id = index.len();
            index.insert(s.to_vec(), id);
        });
        shell_count = index.len();
        for e in &candidates {
            let mut ids = Vec::with_capacity(k);
            for drop in 0..k {
                let shell: Vec<usize> =
                    e.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                ids.push(index[&shell]);
            }
            shell_ids.push(ids);
        }
    }

    struct Search<'a> {
        candidates: &'a [Vec<usize>],
        shell_ids: &'a [Vec<usize>],
        shell_used: Vec<bool>,
        shell_free: usize,
        shell_bound: bool,
        k: usize,
        b: usize,
        chosen: Vec<usize>,
        best: Vec<usize>,
        nodes: u64,
        budget: u64,
        exhausted: bool,
    }

    impl Search<'_> {
        fn conflicts(&self, idx: usize) -> bool {
            if self.shell_bound {
                self.shell_ids[idx].iter().any(|&s| self.shell_used[s])
            } else {
                self.chosen.iter().any(|&c| {
                    crate::tiling::intersection_size(&self.candidates[c], &self.candidates[idx])
                        == self.b
                })
            }
        }

        fn upper_bound(&self, from: usize) -> usize {
            let rest = self.candidates.len() - from;
            if self.shell_bound {
                rest.min(self.shell_free / self.k)
            } else {
                rest
            }
        }

        fn run(&mut self, from: usize) {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
            }
            if self.exhausted {
                return;
            }
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
            if from == self.candidates.len()
                || self.chosen.len() + self.upper_bound(from) <= self.best.len()
            {
                return;
            }
            if !self.conflicts(from) {
                self.chosen.push(from);
                if self.shell_bound {
                    for &s in &self.shell_ids[from] {
                        self.shell_used[s] = true;
                    }
                    self.shell_free -= self.k;
                }
                self.run(from + 1);
                self.chosen.pop();
                if self.shell_bound {
                    for &s in &self.shell_ids[from] {
                        self.shell_used[s] = false;
                    }
                    self.shell_free += self.k;
                }
            }
            self.run(from + 1);
        }
    }

    let mut search = Search {
        candidates: &candidates,
        shell_ids: &shell_ids,
        shell_used: vec![false; shell_count],
        shell_free: shell_count,
        shell_bound,
        k,
        b,
        chosen: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget,
        exhausted: false,
    };
    // greedy seed in lexicographic order
    for i in 0..candidates.len() {
        if !search.conflicts(i) {
            search.chosen.push(i);
            if shell_bound {
                for &s in &shell_ids[i] {
                    search.shell_used[s] = true;
                }
                search.shell_free -= k;
            }
        }
    }
    search.best = search.chosen.clone();
    search.chosen.clear();
    if shell_bound {
        search.shell_used.iter_mut().for_each(|u| *u = false);
        search.shell_free = shell_count;
    }
    search.run(0);

    let witness_edges: Vec<Vec<usize>> = search.best.iter().map(|&i| candidates[i].clone()).collect();
    let witness = Hypergraph::build(n, k, witness_edges).expect("witness edges are valid");
    PatternFreeResult {
        max_edges: search.best.len(),
        witness,
        stats: SearchStats { nodes: search.nodes, optimal: !search.exhausted },
    }
}
