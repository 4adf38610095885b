//! Mutable weighted undirected simple graph.
//!
//! Every undirected edge is stored as two directed arcs, one in each endpoint's
//! adjacency list, and each arc knows the position of its twin. A hash index
//! maps ordered vertex pairs to arc positions so that lookups, weight
//! accumulation and deletion are O(1) expected.
//!
//! Deletion swap-removes arcs, so arc positions are only stable between
//! mutations.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;
use thiserror::Error;

pub type VertexId = usize;
pub type Weight = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0} rejected")]
    SelfLoop(VertexId),
    #[error("edge ({0}, {1}) must have positive weight")]
    ZeroWeight(VertexId, VertexId),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("edge ({0}, {1}) does not exist")]
    MissingEdge(VertexId, VertexId),
}

/// One direction of an undirected edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub to: VertexId,
    pub weight: Weight,
    /// Position of the twin arc in `adjacency(to)`.
    pub rev: usize,
}

#[derive(Debug, Clone, Default)]
pub struct DynGraph {
    adj: Vec<Vec<Arc>>,
    index: FxHashMap<u64, usize>,
    degree: Vec<Weight>,
    total_weight: Weight,
    m: usize,
}

#[inline]
fn key(u: VertexId, v: VertexId) -> u64 {
    ((u as u64) << 32) | v as u64
}

impl DynGraph {
    pub fn new(n: usize) -> Self {
        assert!(n < u32::MAX as usize, "vertex count exceeds 32-bit id space");
        DynGraph {
            adj: vec![Vec::new(); n],
            index: FxHashMap::default(),
            degree: vec![0; n],
            total_weight: 0,
            m: 0,
        }
    }

    /// Builds a graph from a list of weighted edges; repeated pairs accumulate.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Weight)>,
    ) -> Result<Self, GraphError> {
        let mut g = DynGraph::new(n);
        for (u, v, w) in edges {
            g.insert_edge(u, v, w)?;
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.m
    }

    pub fn total_weight(&self) -> Weight {
        self.total_weight
    }

    /// Weighted degree c(v).
    pub fn degree(&self, v: VertexId) -> Weight {
        self.degree[v]
    }

    pub fn adjacency(&self, v: VertexId) -> &[Arc] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, Weight)> + '_ {
        self.adj[v].iter().map(|a| (a.to, a.weight))
    }

    pub fn edge_weight(&self, u: VertexId, v: VertexId) -> Option<Weight> {
        if u >= self.adj.len() || v >= self.adj.len() {
            return None;
        }
        self.index.get(&key(u, v)).map(|&i| self.adj[u][i].weight)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_weight(u, v).is_some()
    }

    /// Iterates every undirected edge once, as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, Weight)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, arcs)| {
            arcs.iter()
                .filter(move |a| u < a.to)
                .map(move |a| (u, a.to, a.weight))
        })
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v >= self.adj.len() {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.adj.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Adds edge `(u, v)` with weight `w`, or adds `w` to the existing edge.
    pub fn insert_edge(&mut self, u: VertexId, v: VertexId, w: Weight) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if w == 0 {
            return Err(GraphError::ZeroWeight(u, v));
        }
        if let Some(&i) = self.index.get(&key(u, v)) {
            let rev = self.adj[u][i].rev;
            self.adj[u][i].weight += w;
            self.adj[v][rev].weight += w;
        } else {
            let iu = self.adj[u].len();
            let iv = self.adj[v].len();
            self.adj[u].push(Arc { to: v, weight: w, rev: iv });
            self.adj[v].push(Arc { to: u, weight: w, rev: iu });
            self.index.insert(key(u, v), iu);
            self.index.insert(key(v, u), iv);
            self.m += 1;
        }
        self.degree[u] += w;
        self.degree[v] += w;
        self.total_weight += w;
        Ok(())
    }

    /// Removes edge `(u, v)` entirely and returns its former weight.
    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<Weight, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let iu = *self
            .index
            .get(&key(u, v))
            .ok_or(GraphError::MissingEdge(u, v))?;
        let iv = self.adj[u][iu].rev;
        let w = self.adj[u][iu].weight;
        self.remove_arc(u, iu);
        self.remove_arc(v, iv);
        self.index.remove(&key(u, v));
        self.index.remove(&key(v, u));
        self.degree[u] -= w;
        self.degree[v] -= w;
        self.total_weight -= w;
        self.m -= 1;
        Ok(w)
    }

    // swap-remove arc `i` of `x` and repoint whatever moved into slot `i`
    fn remove_arc(&mut self, x: VertexId, i: usize) {
        let last = self.adj[x].len() - 1;
        self.adj[x].swap_remove(i);
        if i != last {
            let moved = self.adj[x][i];
            self.adj[moved.to][moved.rev].rev = i;
            self.index.insert(key(x, moved.to), i);
        }
    }

    /// Builds the quotient graph in which vertex `x` becomes `part[x]`.
    /// Parallel edges are merged by weight summation and self-loops dropped.
    /// Contracts `u` and `v` in place: the endpoint with the shorter
    /// adjacency list loses all its edges to the other, which is returned.
    /// Parallel edges merge and the u-v edge disappears. Costs O(deg) of
    /// the smaller side.
    pub fn merge_vertices(&mut self, u: VertexId, v: VertexId) -> Result<VertexId, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let (keep, gone) = if self.adj[u].len() >= self.adj[v].len() { (u, v) } else { (v, u) };
        while let Some(a) = self.adj[gone].last().copied() {
            self.delete_edge(gone, a.to).expect("arc is indexed");
            if a.to != keep {
                self.insert_edge(keep, a.to, a.weight).expect("endpoints are distinct");
            }
        }
        Ok(keep)
    }

    pub fn quotient(&self, part: &[VertexId], new_n: usize) -> DynGraph {
        debug_assert_eq!(part.len(), self.num_vertices());
        let mut g = DynGraph::new(new_n);
        for (u, v, w) in self.edges() {
            let (pu, pv) = (part[u], part[v]);
            if pu != pv {
                g.insert_edge(pu, pv, w).expect("quotient edge is valid");
            }
        }
        g
    }

    /// Contracts `v` into `u`. Returns the contracted graph together with the
    /// map from old vertex ids to new ones.
    pub fn contract(&self, u: VertexId, v: VertexId) -> Result<(DynGraph, Vec<VertexId>), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let mut map = Vec::with_capacity(self.num_vertices());
        let mut next = 0;
        for x in 0..self.num_vertices() {
            if x == v {
                map.push(usize::MAX);
            } else {
                map.push(next);
                next += 1;
            }
        }
        map[v] = map[u];
        Ok((self.quotient(&map, next), map))
    }

    /// Weight of the cut between `side` and its complement.
    pub fn cut_weight(&self, side: &[bool]) -> Weight {
        self.edges()
            .filter(|&(u, v, _)| side[u] != side[v])
            .map(|(_, _, w)| w)
            .sum()
    }

    /// Weight of the cut induced by a vertex list.
    pub fn cut_weight_of(&self, side: &[VertexId]) -> Weight {
        let mut mask = vec![false; self.num_vertices()];
        for &v in side {
            mask[v] = true;
        }
        side.iter()
            .flat_map(|&v| self.adj[v].iter())
            .filter(|a| !mask[a.to])
            .map(|a| a.weight)
            .sum()
    }

    /// Connected component id per vertex, plus the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for a in &self.adj[x] {
                    if comp[a.to] == usize::MAX {
                        comp[a.to] = count;
                        queue.push_back(a.to);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }
}
