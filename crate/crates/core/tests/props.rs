//! Property tests for the structural invariants: serialization stability,
//! the two forms of the per-edge weight constraint, embedding weights, and
//! König equality.

use num_rational::BigRational;
use proptest::prelude::*;
use ytiling::bipartite::BipartiteGraph;
use ytiling::fractional::{chain_feasible, from_integral, linearized_feasible, verify_fractional};
use ytiling::hypergraph::{for_each_ksubset, Hypergraph, Pattern};
use ytiling::io::{parse_hg, parse_json, write_hg, write_json};
use ytiling::solver::max_tiling_exact;
use ytiling::tiling::{enumerate_copies, greedy_tiling, intersection_size};

fn arb_graph() -> impl Strategy<Value = Hypergraph> {
    (4usize..10, any::<u64>()).prop_map(|(n, seed)| {
        let mut triples = Vec::new();
        for_each_ksubset(n, 3, |e| triples.push(e.to_vec()));
        // keep roughly 40% of the triples, picked by the seed bits
        let chosen: Vec<Vec<usize>> = triples
            .into_iter()
            .enumerate()
            .filter(|(i, _)| (seed >> (i % 64)) & 1 == 1 || i % 5 == 0)
            .map(|(_, e)| e)
            .collect();
        Hypergraph::build(n, 3, chosen).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hg_and_json_round_trips_are_stable(h in arb_graph()) {
        let text = write_hg(&h);
        let back = parse_hg(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(write_hg(&back), text);

        let json = write_json(&h);
        prop_assert_eq!(parse_json(&json).unwrap(), h);
    }

    #[test]
    fn copy_enumeration_matches_pairwise_definition(h in arb_graph()) {
        let copies = enumerate_copies(&h, Pattern::y32());
        let mut brute = 0usize;
        for i in 0..h.edge_count() {
            for j in i + 1..h.edge_count() {
                if intersection_size(h.edge(i), h.edge(j)) == 2 {
                    brute += 1;
                }
            }
        }
        prop_assert_eq!(copies.len(), brute);
    }

    #[test]
    fn greedy_never_beats_exact(h in arb_graph()) {
        let greedy = greedy_tiling(&h, Pattern::y32());
        let (exact, stats) = max_tiling_exact(&h, Pattern::y32(), 1 << 22);
        prop_assert!(stats.optimal);
        prop_assert!(greedy.size() <= exact.size());
        prop_assert!(exact.size() <= h.n() / 4);
    }

    #[test]
    fn integral_embeddings_always_verify(h in arb_graph()) {
        let (t, _) = max_tiling_exact(&h, Pattern::y32(), 1 << 22);
        let f = from_integral(&h, &t).unwrap();
        let report = verify_fractional(&h, &f).unwrap();
        prop_assert_eq!(report.weight, BigRational::from_integer((4 * t.size()).into()));
        if t.size() > 0 {
            prop_assert_eq!(report.h_min, Some(BigRational::new(1.into(), 2.into())));
        }
    }

    #[test]
    fn chain_and_linearized_forms_agree(
        nums in prop::array::uniform3(0i64..=24),
        dens in prop::array::uniform3(1i64..=24),
    ) {
        let triple = [
            BigRational::new(nums[0].min(dens[0]).into(), dens[0].into()),
            BigRational::new(nums[1].min(dens[1]).into(), dens[1].into()),
            BigRational::new(nums[2].min(dens[2]).into(), dens[2].into()),
        ];
        prop_assert_eq!(chain_feasible(&triple), linearized_feasible(&triple));
    }

    #[test]
    fn koenig_equality_on_random_bipartite(
        left in 1usize..8,
        right in 1usize..8,
        seed in any::<u64>(),
    ) {
        let mut edges = Vec::new();
        for u in 0..left {
            for v in 0..right {
                if (seed >> ((u * right + v) % 64)) & 1 == 1 {
                    edges.push((u, v));
                }
            }
        }
        let g = BipartiteGraph::new(left, right, &edges).unwrap();
        let mc = g.matching_and_cover();
        prop_assert_eq!(mc.matching.len(), mc.cover_size());
        prop_assert!(g.is_cover(&mc.cover_left, &mc.cover_right));
    }
}
