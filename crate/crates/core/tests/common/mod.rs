//! Independent reference algorithms and graph generators shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use dynmincut::graph::{DynGraph, VertexId, Weight};
use rand::rngs::StdRng;
use rand::Rng;

/// G(n, p) with weights drawn from `1..=max_w`.
pub fn gnp(rng: &mut StdRng, n: usize, p: f64, max_w: Weight) -> DynGraph {
    let mut g = DynGraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.insert_edge(a, b, rng.gen_range(1..=max_w)).unwrap();
            }
        }
    }
    g
}

/// Like [`gnp`] but with a random spanning tree added first.
pub fn connected_gnp(rng: &mut StdRng, n: usize, p: f64, max_w: Weight) -> DynGraph {
    let mut g = gnp(rng, n, p, max_w);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        if !g.has_edge(u, v) {
            g.insert_edge(u, v, rng.gen_range(1..=max_w)).unwrap();
        }
    }
    g
}

pub fn cycle(n: usize) -> DynGraph {
    DynGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1))).unwrap()
}

pub fn clique(n: usize, w: Weight) -> DynGraph {
    let mut g = DynGraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            g.insert_edge(a, b, w).unwrap();
        }
    }
    g
}

/// Edmonds-Karp on a dense capacity matrix.
pub fn edmonds_karp(g: &DynGraph, s: VertexId, t: VertexId) -> Weight {
    let n = g.num_vertices();
    let mut cap = vec![vec![0i64; n]; n];
    for (u, v, w) in g.edges() {
        cap[u][v] += w as i64;
        cap[v][u] += w as i64;
    }
    let mut total = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for y in 0..n {
                if prev[y] == usize::MAX && cap[x][y] > 0 {
                    prev[y] = x;
                    q.push_back(y);
                }
            }
        }
        if prev[t] == usize::MAX {
            return total as Weight;
        }
        let mut push = i64::MAX;
        let mut y = t;
        while y != s {
            push = push.min(cap[prev[y]][y]);
            y = prev[y];
        }
        y = t;
        while y != s {
            cap[prev[y]][y] -= push;
            cap[y][prev[y]] += push;
            y = prev[y];
        }
        total += push;
    }
}

/// Minimum s-t cut by trying every bipartition.
pub fn brute_st_cut(g: &DynGraph, s: VertexId, t: VertexId) -> Weight {
    let n = g.num_vertices();
    let edges: Vec<_> = g.edges().collect();
    let mut best = Weight::MAX;
    for mask in 0u32..(1 << n) {
        if mask >> s & 1 == 0 || mask >> t & 1 == 1 {
            continue;
        }
        let w = edges
            .iter()
            .filter(|&&(a, b, _)| (mask >> a) & 1 != (mask >> b) & 1)
            .map(|&(_, _, w)| w)
            .sum();
        best = best.min(w);
    }
    best
}

/// Size of the smaller side of a cut.
pub fn balance(side_len: usize, n: usize) -> usize {
    side_len.min(n - side_len)
}
