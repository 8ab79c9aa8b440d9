//! Independent oracles for the exact solvers: plain exhaustive searches with
//! none of the branching, bounding, or memoization machinery under test.

use ytiling::digraph::Digraph;
use ytiling::hypergraph::{for_each_ksubset, gen_random, Hypergraph, Pattern};
use ytiling::solver::{
    max_mixed_tiling_exact, max_pattern_free_edges, max_tiling_exact, DEFAULT_NODE_BUDGET,
};
use ytiling::tiling::{enumerate_copies, intersection_size};

/// Largest number of pairwise Y-free triples on n vertices, by enumerating
/// every subset of the candidate edge list.
fn pattern_free_oracle(n: usize) -> usize {
    let mut triples: Vec<Vec<usize>> = Vec::new();
    for_each_ksubset(n, 3, |e| triples.push(e.to_vec()));
    let m = triples.len();
    assert!(m <= 20, "oracle only meant for tiny n");
    let mut best = 0usize;
    for mask in 0u32..(1 << m) {
        let chosen: Vec<&Vec<usize>> =
            (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| &triples[i]).collect();
        if chosen.len() <= best {
            continue;
        }
        let ok = chosen
            .iter()
            .enumerate()
            .all(|(i, a)| chosen[i + 1..].iter().all(|b| intersection_size(a, b) != 2));
        if ok {
            best = chosen.len();
        }
    }
    best
}

#[test]
fn pattern_free_matches_exhaustive_oracle() {
    assert_eq!(pattern_free_oracle(5), 2);
    assert_eq!(pattern_free_oracle(6), 4);
    for n in [5, 6] {
        let r = max_pattern_free_edges(n, Pattern::y32(), DEFAULT_NODE_BUDGET);
        assert!(r.stats.optimal);
        assert_eq!(r.max_edges, pattern_free_oracle(n), "n = {n}");
    }
}

/// Maximum tiling size by raw depth-first choice over copy subsets.
fn tiling_oracle(h: &Hypergraph) -> usize {
    let copies = enumerate_copies(h, Pattern::y32());
    fn go(copies: &[ytiling::PatternCopy], used: &mut Vec<bool>, from: usize) -> usize {
        let mut best = 0;
        for i in from..copies.len() {
            if copies[i].footprint.iter().all(|&v| !used[v]) {
                for &v in &copies[i].footprint {
                    used[v] = true;
                }
                best = best.max(1 + go(copies, used, i + 1));
                for &v in &copies[i].footprint {
                    used[v] = false;
                }
            }
        }
        best
    }
    go(&copies, &mut vec![false; h.n()], 0)
}

#[test]
fn exact_tiling_matches_oracle_on_small_randoms() {
    for seed in 0..20 {
        let n = 8 + (seed as usize % 3);
        let p = if seed % 2 == 0 { 0.35 } else { 0.55 };
        let h = gen_random(n, 3, p, seed).unwrap();
        let (t, stats) = max_tiling_exact(&h, Pattern::y32(), DEFAULT_NODE_BUDGET);
        assert!(stats.optimal);
        assert_eq!(t.size(), tiling_oracle(&h), "seed {seed}");
    }
}

/// Maximum mixed coverage by raw depth-first choice over copies and edges.
fn mixed_oracle(h: &Hypergraph) -> usize {
    let copies = enumerate_copies(h, Pattern::y32());
    let mut items: Vec<(Vec<usize>, usize)> = copies
        .iter()
        .map(|c| (c.footprint.clone(), 4))
        .chain(h.edges().iter().map(|e| (e.clone(), 3)))
        .collect();
    items.sort();
    fn go(items: &[(Vec<usize>, usize)], used: &mut Vec<bool>, from: usize) -> usize {
        let mut best = 0;
        for i in from..items.len() {
            if items[i].0.iter().all(|&v| !used[v]) {
                for &v in &items[i].0 {
                    used[v] = true;
                }
                best = best.max(items[i].1 + go(items, used, i + 1));
                for &v in &items[i].0 {
                    used[v] = false;
                }
            }
        }
        best
    }
    go(&items, &mut vec![false; h.n()], 0)
}

#[test]
fn mixed_tiling_matches_oracle_on_small_randoms() {
    for seed in 0..12 {
        let n = 7 + (seed as usize % 2);
        let h = gen_random(n, 3, 0.4, 1000 + seed).unwrap();
        let (t, stats) = max_mixed_tiling_exact(&h, Pattern::y32(), DEFAULT_NODE_BUDGET);
        assert!(stats.optimal);
        assert_eq!(t.coverage(3), mixed_oracle(&h), "seed {seed}");
    }
}

/// Is there a K+_{2,3}, by trying every source pair and sink triple?
fn k23_oracle(d: &Digraph) -> bool {
    let n = d.n();
    for a in 0..n {
        for b in a + 1..n {
            let rest: Vec<usize> = (0..n).filter(|&v| v != a && v != b).collect();
            for i in 0..rest.len() {
                for j in i + 1..rest.len() {
                    for l in j + 1..rest.len() {
                        let sinks = [rest[i], rest[j], rest[l]];
                        if sinks
                            .iter()
                            .all(|&s| d.has_arc(a, s) && d.has_arc(b, s))
                        {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

#[test]
fn k23_finder_agrees_with_oracle_on_all_four_vertex_digraphs() {
    // 12 possible arcs on 4 labeled vertices
    let arcs: Vec<(usize, usize)> = (0..4)
        .flat_map(|u| (0..4).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    assert_eq!(arcs.len(), 12);
    for mask in 0u32..(1 << 12) {
        let chosen: Vec<(usize, usize)> =
            (0..12).filter(|&i| mask >> i & 1 == 1).map(|i| arcs[i]).collect();
        let d = Digraph::new(4, &chosen).unwrap();
        let found = d.find_k23_plus().is_some();
        assert_eq!(found, k23_oracle(&d), "mask {mask}");
        assert!(!found, "no five-vertex structure fits in four vertices");
    }
}

#[test]
fn k23_finder_agrees_with_oracle_on_five_vertex_samples() {
    for seed in 0..500u64 {
        let p = match seed % 3 {
            0 => 0.3,
            1 => 0.5,
            _ => 0.7,
        };
        let d = Digraph::random(5, p, seed);
        assert_eq!(d.find_k23_plus().is_some(), k23_oracle(&d), "seed {seed}");
    }
}
