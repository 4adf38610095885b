//! Synthetic graphs and update workloads.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use super::io::{Op, Update, UpdateStream};
use crate::dynamic::DynamicMinCut;
use crate::graph::{DynGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorkloadError {
    #[error("insertion and deletion rates must be in [0, 1) and sum below 1")]
    BadRates,
    #[error("could only reserve {got} of {want} edges without isolating a vertex")]
    Unsatisfiable { want: usize, got: usize },
    #[error("cannot place {m} edges on {n} vertices with minimum degree {min_degree}")]
    BadShape { n: usize, m: usize, min_degree: usize },
    #[error("no pair of vertices is separated by a minimum cut")]
    NoSeparatedPair,
    #[error("more deletions ({n_del}) than insertions ({n_ins})")]
    TooManyDeletions { n_ins: usize, n_del: usize },
}

/// Random unit-weight simple graph with exactly `m` edges in which every
/// vertex has degree at least `min_degree`.
pub fn gen_gnm(n: usize, m: usize, min_degree: usize, seed: u64) -> Result<DynGraph, WorkloadError> {
    let max_edges = n * n.saturating_sub(1) / 2;
    if m > max_edges || min_degree >= n.max(1) || n * min_degree > 2 * m {
        return Err(WorkloadError::BadShape { n, m, min_degree });
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut g = DynGraph::new(n);
    let add = |g: &mut DynGraph, u: VertexId, v: VertexId| -> bool {
        u != v && !g.has_edge(u, v) && g.insert_edge(u, v, 1).is_ok()
    };
    for u in 0..n {
        while g.adjacency(u).len() < min_degree {
            let v = rng.gen_range(0..n);
            add(&mut g, u, v);
        }
    }
    if g.num_edges() > m {
        return Err(WorkloadError::BadShape { n, m, min_degree });
    }
    while g.num_edges() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        add(&mut g, u, v);
    }
    Ok(g)
}

/// Picks disjoint edge sets E_ins and E_del of sizes ⌊α_ins·m⌋ and
/// ⌊α_del·m⌋ such that every vertex keeps an untouched incident edge. The
/// initial graph is `g` without E_ins; the stream is both sets shuffled
/// together, one update per timestamp.
pub fn gen_random_workload(
    g: &DynGraph,
    alpha_ins: f64,
    alpha_del: f64,
    seed: u64,
) -> Result<(DynGraph, UpdateStream), WorkloadError> {
    let ok = |a: f64| (0.0..1.0).contains(&a);
    if !ok(alpha_ins) || !ok(alpha_del) || alpha_ins + alpha_del >= 1.0 {
        return Err(WorkloadError::BadRates);
    }
    let m = g.num_edges();
    let want_ins = (alpha_ins * m as f64).floor() as usize;
    let want_del = (alpha_del * m as f64).floor() as usize;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut edges: Vec<_> = g.edges().collect();
    edges.sort_unstable();
    edges.shuffle(&mut rng);
    let mut untouched: Vec<usize> = (0..g.num_vertices()).map(|v| g.adjacency(v).len()).collect();
    let (mut ins, mut del) = (Vec::with_capacity(want_ins), Vec::with_capacity(want_del));
    for e @ (u, v, _) in edges {
        if ins.len() == want_ins && del.len() == want_del {
            break;
        }
        if untouched[u] < 2 || untouched[v] < 2 {
            continue;
        }
        untouched[u] -= 1;
        untouched[v] -= 1;
        if ins.len() < want_ins {
            ins.push(e);
        } else {
            del.push(e);
        }
    }
    if ins.len() + del.len() < want_ins + want_del {
        return Err(WorkloadError::Unsatisfiable {
            want: want_ins + want_del,
            got: ins.len() + del.len(),
        });
    }
    let mut initial = g.clone();
    for &(u, v, _) in &ins {
        initial.delete_edge(u, v).expect("edge was sampled from g");
    }
    let mut ups: Vec<Update> = ins
        .into_iter()
        .map(|(u, v, w)| (Op::Insert, u, v, w))
        .chain(del.into_iter().map(|(u, v, w)| (Op::Delete, u, v, w)))
        .map(|(op, u, v, w)| Update { time: 0, op, u, v, w, line: 0 })
        .collect();
    ups.shuffle(&mut rng);
    for (i, up) in ups.iter_mut().enumerate() {
        up.time = i as u64 + 1;
    }
    Ok((
        initial,
        UpdateStream {
            n: g.num_vertices(),
            updates: ups,
        },
    ))
}

// Samples an edge whose endpoints lie in different non-empty cactus nodes,
// preferring pairs not yet joined by an edge.
fn separated_pair(d: &DynamicMinCut, rng: &mut StdRng) -> Option<(VertexId, VertexId)> {
    let c = d.cactus();
    let nodes: Vec<_> = c.node_ids().filter(|&x| !c.members(x).is_empty()).collect();
    if nodes.len() < 2 {
        return None;
    }
    let mut fallback = None;
    for _ in 0..32 {
        let (a, b) = loop {
            let a = *nodes.choose(rng).unwrap();
            let b = *nodes.choose(rng).unwrap();
            if a != b {
                break (a, b);
            }
        };
        let u = *c.members(a).choose(rng).unwrap();
        let v = *c.members(b).choose(rng).unwrap();
        if !d.graph().has_edge(u, v) {
            return Some((u, v));
        }
        fallback.get_or_insert((u, v));
    }
    fallback
}

/// Builds an adversarial stream online against `d`: every insertion joins
/// two vertices currently separated by a represented minimum cut, and every
/// deletion removes an edge inserted earlier in the stream. Deletions are
/// spread uniformly among insertions. `d` ends in the final state.
pub fn gen_worstcase_workload(
    d: &mut DynamicMinCut,
    n_ins: usize,
    n_del: usize,
    seed: u64,
) -> Result<UpdateStream, WorkloadError> {
    if n_del > n_ins {
        return Err(WorkloadError::TooManyDeletions { n_ins, n_del });
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut ins_left, mut del_left) = (n_ins, n_del);
    let mut live: Vec<(VertexId, VertexId)> = Vec::new();
    let mut updates = Vec::with_capacity(n_ins + n_del);
    while ins_left + del_left > 0 {
        if live.is_empty() && ins_left == 0 {
            // remaining deletions lost their edges to repeated insertions
            break;
        }
        let delete = !live.is_empty() && rng.gen_range(0..ins_left + del_left) < del_left;
        let time = updates.len() as u64 + 1;
        if delete {
            let (u, v) = live.swap_remove(rng.gen_range(0..live.len()));
            d.delete(u, v).expect("edge inserted earlier");
            updates.push(Update { time, op: Op::Delete, u, v, w: 1, line: 0 });
            del_left -= 1;
        } else {
            let (u, v) = separated_pair(d, &mut rng).ok_or(WorkloadError::NoSeparatedPair)?;
            d.insert(u, v, 1).expect("distinct endpoints");
            let key = (u.min(v), u.max(v));
            if !live.contains(&key) {
                live.push(key);
            }
            updates.push(Update { time, op: Op::Insert, u, v, w: 1, line: 0 });
            ins_left -= 1;
        }
    }
    Ok(UpdateStream {
        n: d.graph().num_vertices(),
        updates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> DynGraph {
        DynGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1))).unwrap()
    }

    #[test]
    fn gnm_shape() {
        let g = gen_gnm(200, 1000, 3, 1).unwrap();
        assert_eq!(g.num_edges(), 1000);
        assert!((0..200).all(|v| g.adjacency(v).len() >= 3));
        assert!(gen_gnm(10, 10, 3, 1).is_err());
    }

    #[test]
    fn random_workload_rates() {
        let g = gen_gnm(2000, 10_000, 3, 2).unwrap();
        let (init, s) = gen_random_workload(&g, 0.01, 0.0, 3).unwrap();
        assert_eq!(s.updates.len(), 100);
        assert!(s.updates.iter().all(|u| u.op == Op::Insert));
        assert_eq!(init.num_edges(), 9_900);
        let (_, dec) = gen_random_workload(&g, 0.0, 0.01, 3).unwrap();
        assert!(dec.updates.iter().all(|u| u.op == Op::Delete));
        let (a, b) = (gen_random_workload(&g, 0.01, 0.01, 9).unwrap(), gen_random_workload(&g, 0.01, 0.01, 9).unwrap());
        assert_eq!(a.1, b.1);
        assert!(matches!(gen_random_workload(&g, 0.6, 0.5, 1), Err(WorkloadError::BadRates)));
    }

    #[test]
    fn random_workload_keeps_untouched_edges() {
        let g = gen_gnm(300, 900, 3, 4).unwrap();
        let (_, s) = gen_random_workload(&g, 0.2, 0.2, 5).unwrap();
        let mut touched = vec![0; 300];
        for up in &s.updates {
            touched[up.u] += 1;
            touched[up.v] += 1;
        }
        assert!((0..300).all(|v| touched[v] < g.adjacency(v).len()));
        assert!(matches!(
            gen_random_workload(&cycle(10), 0.5, 0.0, 1),
            Err(WorkloadError::Unsatisfiable { .. })
        ));
    }

    #[test]
    fn worstcase_single_chord() {
        let mut d = DynamicMinCut::new(cycle(5));
        let s = gen_worstcase_workload(&mut d, 1, 0, 1).unwrap();
        assert_eq!(s.updates.len(), 1);
        assert_eq!(d.stats().separated_insertions, 1);
    }
}
