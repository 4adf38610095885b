//! Recursive construction of the cactus of all minimum cuts, and the chain
//! cactus of minimum u-v cuts.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use super::ma_order::{kernelize, static_min_cut};
use crate::cactus::{Cactus, NodeId};
use crate::flow::{FlowNetwork, FlowResult};
use crate::graph::{DynGraph, VertexId, Weight};

pub const DEFAULT_SEED: u64 = 0x5eed_cac7;

// Graphs above this size are built on a thread with a large stack, since the
// recursion depth can grow linearly in the kernel size.
const BIG_STACK_THRESHOLD: usize = 2_000;
const BIG_STACK_BYTES: usize = 1 << 30;
const SAMPLE_TRIES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("expected lambda({u}, {v}) = {expected}, flow found {found}")]
    LambdaMismatch {
        u: VertexId,
        v: VertexId,
        expected: Weight,
        found: Weight,
    },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("u and v must differ")]
    SameVertex,
}

/// Splits the vertex set into the chain of pieces cut out by the nested
/// minimum s-t cuts of a completed max flow: the source-reachable set, the
/// strongly connected components of the residual middle in an order where
/// every prefix is closed, and the sink-reaching set.
pub(crate) fn min_cut_chain(
    g: &DynGraph,
    net: &FlowNetwork,
    s: VertexId,
    t: VertexId,
) -> Vec<Vec<VertexId>> {
    let n = g.num_vertices();
    let to_sink = net.residual_reaches(g, t);
    let mut from_source = vec![false; n];
    from_source[s] = true;
    let mut stack = vec![s];
    while let Some(x) = stack.pop() {
        for (i, a) in g.adjacency(x).iter().enumerate() {
            if !from_source[a.to] && net.residual(g, x, i) > 0 {
                from_source[a.to] = true;
                stack.push(a.to);
            }
        }
    }
    let mut pieces = vec![(0..n).filter(|&x| from_source[x]).collect::<Vec<_>>()];
    let middle: Vec<VertexId> = (0..n).filter(|&x| !from_source[x] && !to_sink[x]).collect();
    if !middle.is_empty() {
        let mut local = vec![usize::MAX; n];
        let mut dg = DiGraph::<VertexId, ()>::with_capacity(middle.len(), 0);
        for &x in &middle {
            local[x] = dg.add_node(x).index();
        }
        for &x in &middle {
            for (i, a) in g.adjacency(x).iter().enumerate() {
                if local[a.to] != usize::MAX && net.residual(g, x, i) > 0 {
                    dg.add_edge(NodeIndex::new(local[x]), NodeIndex::new(local[a.to]), ());
                }
            }
        }
        for comp in tarjan_scc(&dg) {
            pieces.push(comp.into_iter().map(|ix| dg[ix]).collect());
        }
    }
    pieces.push((0..n).filter(|&x| to_sink[x]).collect());
    pieces
}

/// Copies the live nodes and edges of `src` into `dst`. Vertex `x` of `src`
/// expands to `groups[x]`; `skip` names a vertex dropped on the way. Returns
/// the node id map.
fn absorb(dst: &mut Cactus, src: &Cactus, groups: &[Vec<VertexId>], skip: Option<VertexId>) -> Vec<NodeId> {
    let mut map = vec![usize::MAX; src.node_ids().last().map_or(0, |x| x + 1)];
    for x in src.node_ids() {
        let members = src
            .members(x)
            .iter()
            .filter(|&&v| Some(v) != skip)
            .flat_map(|&v| groups[v].iter().copied())
            .collect();
        map[x] = dst.add_node(members);
    }
    for x in src.node_ids() {
        for &y in src.tree_neighbors(x) {
            if x < y {
                dst.add_tree_edge(map[x], map[y]);
            }
        }
    }
    for cid in src.cycle_ids() {
        dst.add_cycle(src.cycle(cid).unwrap().iter().map(|&x| map[x]).collect());
    }
    map
}

/// The subgraph induced by `piece` with every other vertex merged into one
/// extra vertex, which gets the last id.
fn piece_graph(g: &DynGraph, piece: &[VertexId], local: &mut [usize]) -> DynGraph {
    let z = piece.len();
    for (i, &x) in piece.iter().enumerate() {
        local[x] = i;
    }
    let mut h = DynGraph::new(z + 1);
    for &x in piece {
        for (y, w) in g.neighbors(x) {
            let ly = local[y];
            if ly == usize::MAX {
                h.insert_edge(local[x], z, w).expect("valid piece edge");
            } else if x < y {
                h.insert_edge(local[x], ly, w).expect("valid piece edge");
            }
        }
    }
    for &x in piece {
        local[x] = usize::MAX;
    }
    h
}

/// Detaches the contracted outside vertex `z` from a piece cactus and
/// returns the node where the piece hangs onto the chain skeleton.
fn attachment(c: &mut Cactus, z: VertexId, separable: bool) -> NodeId {
    let zn = c.locate(z);
    if !separable {
        return zn;
    }
    let alone = c.members(zn).len() == 1;
    if alone && c.tree_neighbors(zn).len() == 1 && c.cycles_of(zn).is_empty() {
        let w = c.tree_neighbors(zn)[0];
        c.remove_tree_edge(zn, w);
        c.kill(zn);
        return w;
    }
    if alone && c.tree_neighbors(zn).is_empty() && c.cycles_of(zn).len() == 1 {
        let cid = c.cycles_of(zn)[0];
        if c.cycle(cid).unwrap().len() == 3 {
            let ring = c.remove_cycle(cid);
            let center = c.add_node(Vec::new());
            for x in ring.into_iter().filter(|&x| x != zn) {
                c.add_tree_edge(center, x);
            }
            c.kill(zn);
            return center;
        }
    }
    debug_assert!(false, "outside vertex is not a detachable leaf");
    zn
}

// Renumbers the live vertices of `w` densely, dropping the isolated rest.
fn compact(w: &mut DynGraph, groups: &mut Vec<Vec<VertexId>>, live: &mut Vec<VertexId>, pos: &mut Vec<usize>) {
    let mut part = vec![usize::MAX; w.num_vertices()];
    live.sort_unstable();
    for (i, &x) in live.iter().enumerate() {
        part[x] = i;
    }
    *w = w.quotient(&part, live.len());
    *groups = live.iter().map(|&x| std::mem::take(&mut groups[x])).collect();
    *live = (0..groups.len()).collect();
    *pos = (0..groups.len()).collect();
}

/// Cactus of all cuts of weight exactly `lambda` in `h`, whose cuts all weigh
/// at least `lambda`.
fn build_rec(h: &DynGraph, lambda: Weight, rng: &mut StdRng) -> Cactus {
    let n = h.num_vertices();
    if n == 2 {
        let mut c = Cactus::empty(2, lambda);
        if h.edge_weight(0, 1) == Some(lambda) {
            let (a, b) = (c.add_node(vec![0]), c.add_node(vec![1]));
            c.add_tree_edge(a, b);
        } else {
            c.add_node(vec![0, 1]);
        }
        return c;
    }
    // Contractions happen in place; merged-away vertices stay behind isolated
    // until the graph is compacted. Edges between vertices of degree above
    // lambda are tried first so that trivial cuts are peeled off a small graph.
    let mut w = h.clone();
    let mut groups: Vec<Vec<VertexId>> = (0..n).map(|v| vec![v]).collect();
    let mut live: Vec<VertexId> = (0..n).collect();
    let mut pos: Vec<usize> = (0..n).collect();
    let mut leaves: Vec<Vec<VertexId>> = Vec::new();
    let mut net = FlowNetwork::new();
    let mut result = loop {
        if live.len() == 1 {
            break Cactus::single(n, lambda);
        }
        if live.len() >= 64 && 2 * live.len() <= w.num_vertices() {
            compact(&mut w, &mut groups, &mut live, &mut pos);
        }
        let mut u = live[rng.gen_range(0..live.len())];
        for _ in 0..SAMPLE_TRIES {
            if w.degree(u) > lambda {
                break;
            }
            u = live[rng.gen_range(0..live.len())];
        }
        let adj = w.adjacency(u);
        debug_assert!(!adj.is_empty(), "piece graph is connected");
        let mut v = adj[rng.gen_range(0..adj.len())].to;
        for _ in 0..SAMPLE_TRIES {
            if w.degree(v) > lambda {
                break;
            }
            v = adj[rng.gen_range(0..adj.len())].to;
        }
        let res = net.max_flow_bounded(&w, u, v, Some(lambda + 1), 1);
        let single_side = match res {
            FlowResult::ReachedBound(_) => None,
            FlowResult::Exact { value, .. } => {
                debug_assert_eq!(value, lambda);
                let mut pieces = min_cut_chain(&w, &net, u, v);
                if live.len() < w.num_vertices() {
                    for p in &mut pieces {
                        p.retain(|&x| !groups[x].is_empty());
                    }
                    pieces.retain(|p| !p.is_empty());
                }
                if pieces.len() == 2 && (pieces[0].len() == 1 || pieces[1].len() == 1) {
                    Some(if pieces[0].len() == 1 { u } else { v })
                } else {
                    break build_chain(&w, &groups, &pieces, n, lambda, rng);
                }
            }
        };
        if let Some(x) = single_side {
            leaves.push(groups[x].clone());
        }
        let keep = w.merge_vertices(u, v).expect("edge endpoints are valid");
        let gone = if keep == u { v } else { u };
        let mut moved = std::mem::take(&mut groups[gone]);
        if moved.len() > groups[keep].len() {
            std::mem::swap(&mut moved, &mut groups[keep]);
        }
        groups[keep].extend(moved);
        let i = pos[gone];
        live.swap_remove(i);
        if i < live.len() {
            pos[live[i]] = i;
        }
    };
    for leaf in leaves.into_iter().rev() {
        let at = result.locate(leaf[0]);
        let node = result.add_node(Vec::new());
        result.reassign(&leaf, node);
        result.add_tree_edge(at, node);
    }
    result
}

// Assembles the cactus of `w` from the cacti of its chain pieces.
fn build_chain(
    w: &DynGraph,
    groups: &[Vec<VertexId>],
    pieces: &[Vec<VertexId>],
    n: usize,
    lambda: Weight,
    rng: &mut StdRng,
) -> Cactus {
    let k = pieces.len();
    let mut local = vec![usize::MAX; w.num_vertices()];
    let mut result = Cactus::empty(n, lambda);
    let mut hooks = Vec::with_capacity(k);
    let mut interior = vec![false; k];
    for (i, piece) in pieces.iter().enumerate() {
        let hi = piece_graph(w, piece, &mut local);
        let z = piece.len();
        let end = i == 0 || i == k - 1;
        interior[i] = !end && hi.degree(z) == lambda;
        let mut ci = build_rec(&hi, lambda, rng);
        let hook = attachment(&mut ci, z, end || interior[i]);
        let piece_groups: Vec<Vec<VertexId>> = piece
            .iter()
            .map(|&x| groups[x].clone())
            .chain(std::iter::once(Vec::new()))
            .collect();
        let map = absorb(&mut result, &ci, &piece_groups, Some(z));
        hooks.push(map[hook]);
    }
    let mut i = 0;
    while i + 1 < k {
        if interior[i + 1] {
            let mut j = i + 1;
            while interior[j] {
                j += 1;
            }
            result.add_cycle(hooks[i..=j].to_vec());
            i = j;
        } else {
            result.add_tree_edge(hooks[i], hooks[i + 1]);
            i += 1;
        }
    }
    result
}

fn run_with_stack<T: Send>(big: bool, f: impl FnOnce() -> T + Send) -> T {
    if !big {
        return f();
    }
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(BIG_STACK_BYTES)
            .spawn_scoped(s, f)
            .expect("spawn builder thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

/// Cactus representing every minimum cut of `g`.
pub fn build_cactus(g: &DynGraph) -> Cactus {
    build_cactus_seeded(g, DEFAULT_SEED)
}

/// [`build_cactus`] with an explicit seed for the random edge choices.
pub fn build_cactus_seeded(g: &DynGraph, seed: u64) -> Cactus {
    let n = g.num_vertices();
    if n <= 1 {
        return Cactus::single(n, 0);
    }
    let (comp, count) = g.components();
    if count > 1 {
        return Cactus::from_components(&comp, count);
    }
    let lambda = static_min_cut(g);
    let (kernel, map) = kernelize(g, lambda);
    let mut groups = vec![Vec::new(); kernel.num_vertices()];
    for (v, &k) in map.iter().enumerate() {
        groups[k].push(v);
    }
    let kc = run_with_stack(kernel.num_vertices() > BIG_STACK_THRESHOLD, || {
        let mut rng = StdRng::seed_from_u64(seed);
        build_rec(&kernel, lambda, &mut rng)
    });
    let mut c = Cactus::empty(n, lambda);
    absorb(&mut c, &kc, &groups, None);
    c
}

/// Chain cactus of the nested minimum u-v cuts of `g`. Every represented cut
/// weighs `lambda`; crossing minimum u-v cuts may be missing.
pub fn build_uv_cactus(g: &DynGraph, u: VertexId, v: VertexId, lambda: Weight) -> Result<Cactus, BuildError> {
    let n = g.num_vertices();
    for x in [u, v] {
        if x >= n {
            return Err(BuildError::VertexOutOfRange(x));
        }
    }
    if u == v {
        return Err(BuildError::SameVertex);
    }
    let mut net = FlowNetwork::new();
    let found = net.max_flow_bounded(g, u, v, None, 1).value();
    if found != lambda {
        return Err(BuildError::LambdaMismatch {
            u,
            v,
            expected: lambda,
            found,
        });
    }
    Ok(uv_cactus_from_flow(g, &net, u, v, lambda))
}

/// [`build_uv_cactus`] reusing a completed max flow from `u` to `v` that is
/// still held by `net`.
pub fn uv_cactus_from_flow(g: &DynGraph, net: &FlowNetwork, u: VertexId, v: VertexId, lambda: Weight) -> Cactus {
    let mut c = Cactus::empty(g.num_vertices(), lambda);
    let mut prev = None;
    for piece in min_cut_chain(g, net, u, v) {
        let node = c.add_node(piece);
        if let Some(p) = prev {
            c.add_tree_edge(p, node);
        }
        prev = Some(node);
    }
    c
}
