//! Maximum-adjacency orderings and the contraction-based minimum cut.

use std::collections::BinaryHeap;

use petgraph::unionfind::UnionFind;

use crate::graph::{DynGraph, VertexId, Weight};

/// One maximum-adjacency scan. `order[i]` is the i-th extracted vertex and
/// `attach[i]` its adjacency to the vertices extracted before it.
pub(crate) struct MaScan {
    pub order: Vec<VertexId>,
    pub attach: Vec<Weight>,
}

/// Scans a connected graph from `start`. `on_edge(x, y, q)` fires for every
/// edge when its earlier endpoint `x` is extracted, with `q` the adjacency of
/// `y` right after counting the edge; λ(x, y) ≥ q.
pub(crate) fn ma_scan(
    g: &DynGraph,
    start: VertexId,
    mut on_edge: impl FnMut(VertexId, VertexId, Weight),
) -> MaScan {
    let n = g.num_vertices();
    let mut r = vec![0 as Weight; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::with_capacity(n);
    heap.push((0, start));
    let mut order = Vec::with_capacity(n);
    let mut attach = Vec::with_capacity(n);
    while let Some((key, x)) = heap.pop() {
        if done[x] || key != r[x] {
            continue;
        }
        done[x] = true;
        order.push(x);
        attach.push(r[x]);
        for (y, w) in g.neighbors(x) {
            if !done[y] {
                r[y] += w;
                on_edge(x, y, r[y]);
                heap.push((r[y], y));
            }
        }
    }
    MaScan { order, attach }
}

fn min_degree(g: &DynGraph) -> Weight {
    (0..g.num_vertices()).map(|v| g.degree(v)).min().unwrap_or(0)
}

fn partition(uf: &UnionFind<usize>, n: usize) -> (Vec<VertexId>, usize) {
    let mut id = vec![usize::MAX; n];
    let mut part = vec![0; n];
    let mut next = 0;
    for (v, p) in part.iter_mut().enumerate() {
        let r = uf.find(v);
        if id[r] == usize::MAX {
            id[r] = next;
            next += 1;
        }
        *p = id[r];
    }
    (part, next)
}

/// Weight of a global minimum cut; 0 for disconnected graphs and for graphs
/// with fewer than two vertices.
pub fn static_min_cut(g: &DynGraph) -> Weight {
    if g.num_vertices() <= 1 || g.components().1 > 1 {
        return 0;
    }
    let mut best = min_degree(g);
    let mut h = g.clone();
    while h.num_vertices() > 1 {
        let n = h.num_vertices();
        let mut marked = Vec::new();
        let scan = ma_scan(&h, 0, |x, y, q| {
            if q >= best {
                marked.push((x, y, q));
            }
        });
        let mut prefix = 0;
        for (i, &x) in scan.order.iter().enumerate().take(n - 1) {
            prefix = prefix + h.degree(x) - 2 * scan.attach[i];
            best = best.min(prefix);
        }
        let mut uf = UnionFind::new(n);
        for (x, y, q) in marked {
            if q >= best {
                uf.union(x, y);
            }
        }
        uf.union(scan.order[n - 1], scan.order[n - 2]);
        let (part, k) = partition(&uf, n);
        h = h.quotient(&part, k);
    }
    best
}

/// Contracts vertex pairs whose connectivity provably exceeds `lambda`,
/// repeating MA phases while they still shrink the graph noticeably. Returns the contracted graph and the map from vertices of `g` to it. Every
/// cut of weight `lambda` survives.
pub(crate) fn kernelize(g: &DynGraph, lambda: Weight) -> (DynGraph, Vec<VertexId>) {
    let mut map: Vec<VertexId> = (0..g.num_vertices()).collect();
    let mut h = g.clone();
    let threshold = lambda + 1;
    while h.num_vertices() > 1 {
        let n = h.num_vertices();
        let mut uf = UnionFind::new(n);
        let mut merged = false;
        let scan = ma_scan(&h, 0, |x, y, q| {
            if q >= threshold {
                merged |= uf.union(x, y);
            }
        });
        if scan.order.len() == n && scan.attach[n - 1] >= threshold {
            merged |= uf.union(scan.order[n - 1], scan.order[n - 2]);
        }
        if !merged {
            break;
        }
        let (part, k) = partition(&uf, n);
        // phases that barely shrink the graph cost more than the flows they save
        let stalled = n - k < n / 64;
        h = h.quotient(&part, k);
        for m in map.iter_mut() {
            *m = part[*m];
        }
        if stalled {
            break;
        }
    }
    (h, map)
}
