mod common;

use common::*;
use dynmincut::static_cactus::{build_cactus, build_cactus_seeded, oracle_all_min_cuts, static_min_cut};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn cactus_matches_oracle_on_random_graphs() {
    let mut rng = StdRng::seed_from_u64(11);
    for round in 0..600 {
        let n = rng.gen_range(2..=12);
        let p = [0.2, 0.4, 0.7][round % 3];
        let max_w = if round % 2 == 0 { 1 } else { 8 };
        let g = gnp(&mut rng, n, p, max_w);
        let oracle = oracle_all_min_cuts(&g).unwrap();
        let c = build_cactus_seeded(&g, round as u64);
        c.check_invariants().unwrap_or_else(|e| panic!("round {round}: {e}\n{}", c.to_text()));
        assert_eq!(c.lambda(), oracle.lambda, "round {round}");
        assert_eq!(static_min_cut(&g), oracle.lambda, "round {round}");
        if oracle.lambda > 0 || c.n_star() <= 12 {
            assert_eq!(c.enumerate_cuts(), oracle.cuts, "round {round}\n{}", c.to_text());
        }
    }
}

#[test]
fn structured_graphs() {
    let mut graphs = vec![cycle(5), cycle(9), clique(4, 1), clique(6, 2)];
    // two cliques joined by a bridge, and a chain of triangles
    let mut g = clique(8, 1);
    for a in 0..8 {
        for b in a + 1..8 {
            if (a < 4) != (b < 4) {
                g.delete_edge(a, b).unwrap();
            }
        }
    }
    g.insert_edge(3, 4, 1).unwrap();
    graphs.push(g);
    let mut t = dynmincut::graph::DynGraph::new(9);
    for k in 0..3 {
        let b = 3 * k;
        t.insert_edge(b, b + 1, 1).unwrap();
        t.insert_edge(b + 1, b + 2, 1).unwrap();
        t.insert_edge(b + 2, b, 1).unwrap();
        if k > 0 {
            t.insert_edge(b - 1, b, 1).unwrap();
        }
    }
    graphs.push(t);
    for g in graphs {
        let oracle = oracle_all_min_cuts(&g).unwrap();
        let c = build_cactus(&g);
        c.check_invariants().unwrap();
        assert_eq!(c.enumerate_cuts(), oracle.cuts, "\n{}", c.to_text());
    }
}

// Too large for the exhaustive oracle: checks that every represented cut is
// minimum, that every trivial minimum cut is represented, and that the cut
// count does not depend on the seed.
#[test]
fn large_graphs_are_seed_independent() {
    let mut rng = StdRng::seed_from_u64(12);
    let mut graphs = vec![cycle(300)];
    for _ in 0..12 {
        let n = rng.gen_range(80..400);
        let m = n * rng.gen_range(2..5);
        graphs.push(dynmincut::bench::gen_gnm(n, m, 3, rng.gen()).unwrap());
    }
    for (gi, g) in graphs.iter().enumerate() {
        let n = g.num_vertices();
        let lambda = static_min_cut(g);
        let mut counts = Vec::new();
        for seed in 0..3 {
            let c = build_cactus_seeded(g, seed);
            c.check_invariants().unwrap();
            assert_eq!(c.lambda(), lambda);
            let cuts = c.enumerate_cuts();
            for side in &cuts {
                assert_eq!(g.cut_weight_of(side), lambda, "graph {gi} seed {seed}");
            }
            let singles = cuts.iter().filter(|s| s.len() == 1 || s.len() == n - 1).count();
            let trivial = (0..n).filter(|&v| g.degree(v) == lambda).count();
            assert_eq!(singles, trivial, "graph {gi} seed {seed}");
            counts.push(cuts.len());
        }
        assert!(counts.iter().all(|&k| k == counts[0]), "graph {gi}: {counts:?}");
        if gi == 0 {
            assert_eq!(counts[0], 300 * 299 / 2);
        }
    }
}
