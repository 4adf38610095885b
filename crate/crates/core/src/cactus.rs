//! The minimum-cut cactus.
//!
//! A cactus is a connected multigraph-free graph in which every edge lies on
//! at most one simple cycle. Each cactus node owns a (possibly empty) set of
//! original vertices, and the node sets partition the vertex set. Removing one
//! tree edge, or two edges of the same cycle, splits the cactus in two; the
//! union of the node sets on either side is a minimum cut of the graph.
//!
//! Cycles are stored as rings of node ids and tree edges as per-node adjacency
//! lists. Node ids are never reused: contracted nodes become dead slots.
//!
//! With λ = 0 the cactus has no edges and one node per connected component.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::graph::{VertexId, Weight};

pub type NodeId = usize;
pub type CycleId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CactusError {
    #[error("cactus nodes {0} and {1} lie in different components")]
    Disconnected(NodeId, NodeId),
    #[error("path endpoints must differ")]
    SameEndpoint,
    #[error("component merge requires lambda = 0, cactus has lambda = {0}")]
    NotDisconnected(Weight),
    #[error("malformed cactus text at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Default)]
struct Node {
    members: Vec<VertexId>,
    tree: Vec<NodeId>,
    cycles: Vec<CycleId>,
    alive: bool,
}

/// One hop of a cactus path: either a tree edge or a traversal of a cycle
/// from the node where the path enters it to the node where it leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathStep {
    Tree { from: NodeId, to: NodeId },
    Cycle { cycle: CycleId, entry: NodeId, exit: NodeId },
}

impl PathStep {
    pub fn end(&self) -> NodeId {
        match *self {
            PathStep::Tree { to, .. } => to,
            PathStep::Cycle { exit, .. } => exit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CactusPath {
    pub start: NodeId,
    pub steps: Vec<PathStep>,
}

impl CactusPath {
    /// Nodes that get merged by a contraction: the start node plus the end
    /// of every step.
    pub fn skeleton(&self) -> Vec<NodeId> {
        std::iter::once(self.start)
            .chain(self.steps.iter().map(PathStep::end))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Cactus {
    lambda: Weight,
    nodes: Vec<Node>,
    pi: Vec<NodeId>,
    cycles: Vec<Option<Vec<NodeId>>>,
    live: usize,
    nonempty: usize,
    tree_edges: usize,
}

/// How a node hangs off the rooted traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Parent {
    Root,
    Tree(NodeId),
    Cycle(CycleId),
}

// Rooted view of a connected cactus: preorder, parents and subtree weights.
struct Rooted {
    order: Vec<NodeId>,
    parent: Vec<Parent>,
    kids: Vec<Vec<NodeId>>,
    weight: Vec<usize>,
    // (root, other ring nodes in ring order) per cycle
    cycle_roots: Vec<(CycleId, NodeId, Vec<NodeId>)>,
}

impl Cactus {
    /// A cactus over `n` vertices with no nodes yet; vertices are unassigned
    /// until placed with [`Cactus::add_node`].
    pub fn empty(n: usize, lambda: Weight) -> Self {
        Cactus {
            lambda,
            nodes: Vec::new(),
            pi: vec![usize::MAX; n],
            cycles: Vec::new(),
            live: 0,
            nonempty: 0,
            tree_edges: 0,
        }
    }

    /// One node holding every vertex.
    pub fn single(n: usize, lambda: Weight) -> Self {
        let mut c = Cactus::empty(n, lambda);
        if n > 0 {
            c.add_node((0..n).collect());
        }
        c
    }

    /// The λ = 0 cactus: one node per connected component, no edges.
    pub fn from_components(comp: &[usize], count: usize) -> Self {
        let mut sets = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            sets[c].push(v);
        }
        let mut c = Cactus::empty(comp.len(), 0);
        for s in sets {
            c.add_node(s);
        }
        c
    }

    pub fn lambda(&self) -> Weight {
        self.lambda
    }

    pub fn set_lambda(&mut self, lambda: Weight) {
        self.lambda = lambda;
    }

    pub fn num_vertices(&self) -> usize {
        self.pi.len()
    }

    /// Number of live cactus nodes (n*).
    pub fn n_star(&self) -> usize {
        self.live
    }

    /// Number of cactus edges (m*), counting every cycle edge.
    pub fn m_star(&self) -> usize {
        self.tree_edges + self.cycles.iter().flatten().map(Vec::len).sum::<usize>()
    }

    pub fn nonempty_nodes(&self) -> usize {
        self.nonempty
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles.iter().flatten().count()
    }

    pub fn num_tree_edges(&self) -> usize {
        self.tree_edges
    }

    /// Π(v).
    #[inline]
    pub fn locate(&self, v: VertexId) -> NodeId {
        self.pi[v]
    }

    pub fn members(&self, node: NodeId) -> &[VertexId] {
        &self.nodes[node].members
    }

    pub fn is_alive(&self, node: NodeId) -> bool {
        self.nodes.get(node).is_some_and(|n| n.alive)
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.iter().enumerate().filter(|(_, n)| n.alive).map(|(i, _)| i)
    }

    pub fn tree_neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.nodes[node].tree
    }

    pub fn cycles_of(&self, node: NodeId) -> &[CycleId] {
        &self.nodes[node].cycles
    }

    pub fn cycle(&self, id: CycleId) -> Option<&[NodeId]> {
        self.cycles.get(id).and_then(|c| c.as_deref())
    }

    pub fn cycle_ids(&self) -> impl Iterator<Item = CycleId> + '_ {
        self.cycles.iter().enumerate().filter(|(_, c)| c.is_some()).map(|(i, _)| i)
    }

    // ---- construction primitives ----

    pub fn add_node(&mut self, members: Vec<VertexId>) -> NodeId {
        let id = self.nodes.len();
        for &v in &members {
            self.pi[v] = id;
        }
        if !members.is_empty() {
            self.nonempty += 1;
        }
        self.nodes.push(Node {
            members,
            tree: Vec::new(),
            cycles: Vec::new(),
            alive: true,
        });
        self.live += 1;
        id
    }

    pub fn add_tree_edge(&mut self, a: NodeId, b: NodeId) {
        debug_assert!(a != b && !self.nodes[a].tree.contains(&b));
        self.nodes[a].tree.push(b);
        self.nodes[b].tree.push(a);
        self.tree_edges += 1;
    }

    pub fn remove_tree_edge(&mut self, a: NodeId, b: NodeId) {
        let before = self.nodes[a].tree.len();
        self.nodes[a].tree.retain(|&x| x != b);
        self.nodes[b].tree.retain(|&x| x != a);
        if self.nodes[a].tree.len() != before {
            self.tree_edges -= 1;
        }
    }

    /// Adds a ring. Rings of two nodes become a tree edge and shorter rings
    /// vanish; the returned id is only set for real cycles.
    pub fn add_cycle(&mut self, ring: Vec<NodeId>) -> Option<CycleId> {
        match ring.len() {
            0 | 1 => None,
            2 => {
                self.add_tree_edge(ring[0], ring[1]);
                None
            }
            _ => {
                let id = self.cycles.len();
                for &x in &ring {
                    self.nodes[x].cycles.push(id);
                }
                self.cycles.push(Some(ring));
                Some(id)
            }
        }
    }

    pub fn remove_cycle(&mut self, id: CycleId) -> Vec<NodeId> {
        let ring = self.cycles[id].take().expect("cycle is live");
        for &x in &ring {
            self.nodes[x].cycles.retain(|&c| c != id);
        }
        ring
    }

    /// Moves every member of `from` into `to`.
    pub fn move_members(&mut self, from: NodeId, to: NodeId) {
        if from == to || self.nodes[from].members.is_empty() {
            return;
        }
        let moved = std::mem::take(&mut self.nodes[from].members);
        for &v in &moved {
            self.pi[v] = to;
        }
        if self.nodes[to].members.is_empty() {
            self.nonempty += 1;
        }
        self.nonempty -= 1;
        self.nodes[to].members.extend(moved);
    }

    /// Moves the listed vertices out of their node into `to`.
    pub fn reassign(&mut self, vertices: &[VertexId], to: NodeId) {
        for &v in vertices {
            let from = self.pi[v];
            if from == to {
                continue;
            }
            let f = &mut self.nodes[from].members;
            if let Some(p) = f.iter().position(|&x| x == v) {
                f.swap_remove(p);
            }
            if f.is_empty() {
                self.nonempty -= 1;
            }
            if self.nodes[to].members.is_empty() {
                self.nonempty += 1;
            }
            self.nodes[to].members.push(v);
            self.pi[v] = to;
        }
    }

    /// Merges node `from` into node `to`, rewiring its tree edges and rings.
    /// The two nodes must not be adjacent.
    pub fn merge_nodes(&mut self, from: NodeId, to: NodeId) {
        if from == to {
            return;
        }
        self.move_members(from, to);
        let tree = std::mem::take(&mut self.nodes[from].tree);
        for nb in tree {
            debug_assert_ne!(nb, to, "merging adjacent nodes");
            for x in self.nodes[nb].tree.iter_mut() {
                if *x == from {
                    *x = to;
                }
            }
            self.nodes[to].tree.push(nb);
        }
        let cycles = std::mem::take(&mut self.nodes[from].cycles);
        for cid in cycles {
            for x in self.cycles[cid].as_mut().expect("cycle is live").iter_mut() {
                if *x == from {
                    *x = to;
                }
            }
            self.nodes[to].cycles.push(cid);
        }
        self.kill(from);
    }

    /// Removes an isolated node.
    pub fn kill(&mut self, node: NodeId) {
        let n = &mut self.nodes[node];
        debug_assert!(n.tree.is_empty() && n.cycles.is_empty());
        if n.alive {
            n.alive = false;
            self.live -= 1;
            if !n.members.is_empty() {
                self.nonempty -= 1;
                n.members.clear();
            }
        }
    }

    fn node_neighbors(&self, x: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let n = &self.nodes[x];
        n.tree.iter().copied().chain(n.cycles.iter().flat_map(move |&cid| {
            let ring = self.cycles[cid].as_ref().unwrap();
            let p = ring.iter().position(|&y| y == x).unwrap();
            let l = ring.len();
            [ring[(p + 1) % l], ring[(p + l - 1) % l]]
        }))
    }

    fn common_cycle(&self, a: NodeId, b: NodeId) -> Option<CycleId> {
        self.nodes[a]
            .cycles
            .iter()
            .copied()
            .find(|c| self.nodes[b].cycles.contains(c))
    }

    // ---- incremental maintenance ----

    /// Finds the path between two nodes in the tree obtained by shrinking
    /// every cycle to a point, recording per traversed cycle where the path
    /// enters and leaves it. Searches alternately from both ends.
    pub fn find_path(&self, a: NodeId, b: NodeId) -> Result<CactusPath, CactusError> {
        if a == b {
            return Err(CactusError::SameEndpoint);
        }
        let mut par: [FxHashMap<NodeId, NodeId>; 2] = [FxHashMap::default(), FxHashMap::default()];
        par[0].insert(a, a);
        par[1].insert(b, b);
        let mut frontier = [vec![a], vec![b]];
        let meet = 'search: loop {
            if frontier[0].is_empty() || frontier[1].is_empty() {
                return Err(CactusError::Disconnected(a, b));
            }
            let side = usize::from(frontier[1].len() < frontier[0].len());
            let mut next = Vec::new();
            for &x in &frontier[side] {
                for y in self.node_neighbors(x) {
                    if par[side].contains_key(&y) {
                        continue;
                    }
                    par[side].insert(y, x);
                    if par[1 - side].contains_key(&y) {
                        break 'search y;
                    }
                    next.push(y);
                }
            }
            frontier[side] = next;
        };
        let mut nodes = vec![meet];
        let mut x = meet;
        while x != a {
            x = par[0][&x];
            nodes.push(x);
        }
        nodes.reverse();
        x = meet;
        while x != b {
            x = par[1][&x];
            nodes.push(x);
        }

        let mut steps: Vec<PathStep> = Vec::new();
        for w in nodes.windows(2) {
            let (p, q) = (w[0], w[1]);
            if self.nodes[p].tree.contains(&q) {
                steps.push(PathStep::Tree { from: p, to: q });
                continue;
            }
            let cid = self.common_cycle(p, q).expect("adjacent nodes share an edge");
            match steps.last_mut() {
                Some(PathStep::Cycle { cycle, exit, .. }) if *cycle == cid => *exit = q,
                _ => steps.push(PathStep::Cycle {
                    cycle: cid,
                    entry: p,
                    exit: q,
                }),
            }
        }
        Ok(CactusPath { start: a, steps })
    }

    /// Removes every cut that separates the two ends of `path`: tree edges on
    /// the path are contracted and each traversed cycle is squeezed by merging
    /// its entry and exit node, which splits it into up to two smaller cycles.
    /// All skeleton nodes end up in the one owning the most vertices, which is
    /// returned.
    pub fn contract_path(&mut self, path: &CactusPath) -> NodeId {
        let skeleton = path.skeleton();
        let survivor = *skeleton
            .iter()
            .max_by_key(|&&x| self.nodes[x].members.len())
            .unwrap();
        for step in &path.steps {
            match *step {
                PathStep::Tree { from, to } => self.remove_tree_edge(from, to),
                PathStep::Cycle { cycle, entry, exit } => {
                    let ring = self.remove_cycle(cycle);
                    let l = ring.len();
                    let pe = ring.iter().position(|&x| x == entry).unwrap();
                    let px = ring.iter().position(|&x| x == exit).unwrap();
                    let arc = |from: usize, to: usize| -> Vec<NodeId> {
                        let mut r = vec![survivor];
                        let mut i = (from + 1) % l;
                        while i != to {
                            r.push(ring[i]);
                            i = (i + 1) % l;
                        }
                        r
                    };
                    let (first, second) = (arc(pe, px), arc(px, pe));
                    self.add_cycle(first);
                    self.add_cycle(second);
                }
            }
        }
        for &x in &skeleton {
            if x != survivor && self.nodes[x].alive {
                self.merge_nodes(x, survivor);
            }
        }
        survivor
    }

    /// Joins two component nodes of a λ = 0 cactus.
    pub fn merge_components(&mut self, a: NodeId, b: NodeId) -> Result<NodeId, CactusError> {
        if self.lambda != 0 {
            return Err(CactusError::NotDisconnected(self.lambda));
        }
        if a == b {
            return Err(CactusError::SameEndpoint);
        }
        let (big, small) = if self.nodes[a].members.len() >= self.nodes[b].members.len() {
            (a, b)
        } else {
            (b, a)
        };
        self.merge_nodes(small, big);
        Ok(big)
    }

    // ---- cut extraction ----

    fn rooted(&self) -> Option<Rooted> {
        let root = self.node_ids().next()?;
        let size = self.nodes.len();
        let mut parent = vec![Parent::Root; size];
        let mut seen = vec![false; size];
        let mut kids = vec![Vec::new(); size];
        let mut claimed = vec![false; self.cycles.len()];
        let mut cycle_roots = Vec::new();
        let mut order = Vec::with_capacity(self.live);
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &self.nodes[x].tree {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Parent::Tree(x);
                    kids[x].push(y);
                    stack.push(y);
                }
            }
            for &cid in &self.nodes[x].cycles {
                if claimed[cid] {
                    continue;
                }
                claimed[cid] = true;
                let ring = self.cycles[cid].as_ref().unwrap();
                let p = ring.iter().position(|&y| y == x).unwrap();
                let rest: Vec<NodeId> = (1..ring.len()).map(|k| ring[(p + k) % ring.len()]).collect();
                for &y in &rest {
                    seen[y] = true;
                    parent[y] = Parent::Cycle(cid);
                    kids[x].push(y);
                    stack.push(y);
                }
                cycle_roots.push((cid, x, rest));
            }
        }
        let mut weight = vec![0usize; size];
        for &x in order.iter().rev() {
            weight[x] += self.nodes[x].members.len();
            for &k in &kids[x] {
                weight[x] += weight[k];
            }
        }
        Some(Rooted {
            order,
            parent,
            kids,
            weight,
            cycle_roots,
        })
    }

    fn collect(&self, rooted: &Rooted, tops: &[NodeId]) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = tops.to_vec();
        while let Some(x) = stack.pop() {
            out.extend_from_slice(&self.nodes[x].members);
            stack.extend_from_slice(&rooted.kids[x]);
        }
        out.sort_unstable();
        out
    }

    fn is_connected(&self, rooted: &Rooted) -> bool {
        rooted.order.len() == self.live
    }

    /// Some represented minimum cut, as a sorted vertex set. With λ = 0 this is
    /// one connected component.
    pub fn any_cut(&self) -> Option<Vec<VertexId>> {
        let n = self.num_vertices();
        let rooted = self.rooted()?;
        if !self.is_connected(&rooted) {
            let x = self.node_ids().find(|&x| !self.nodes[x].members.is_empty())?;
            let mut side = self.nodes[x].members.clone();
            side.sort_unstable();
            return Some(side);
        }
        let x = rooted.order.iter().copied().find(|&x| {
            rooted.parent[x] != Parent::Root && rooted.weight[x] > 0 && rooted.weight[x] < n
        })?;
        Some(self.collect(&rooted, &[x]))
    }

    /// Every represented cut once, each given by its side containing vertex 0
    /// (sorted). Exponential in the number of nodes when λ = 0.
    pub fn enumerate_cuts(&self) -> Vec<Vec<VertexId>> {
        let n = self.num_vertices();
        let mut out = BTreeSet::new();
        let mut push = |side: Vec<VertexId>| {
            if side.is_empty() || side.len() == n {
                return;
            }
            let canon = if side.binary_search(&0).is_ok() {
                side
            } else {
                let mut mask = vec![true; n];
                for v in side {
                    mask[v] = false;
                }
                (0..n).filter(|&v| mask[v]).collect()
            };
            out.insert(canon);
        };
        let Some(rooted) = self.rooted() else {
            return Vec::new();
        };
        if !self.is_connected(&rooted) {
            let comps: Vec<NodeId> = self.node_ids().collect();
            assert!(comps.len() <= 24, "too many components to enumerate");
            for mask in 1u64..(1 << comps.len()) - 1 {
                let mut side: Vec<VertexId> = comps
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .flat_map(|(_, &c)| self.nodes[c].members.iter().copied())
                    .collect();
                side.sort_unstable();
                push(side);
            }
            return out.into_iter().collect();
        }
        for &x in &rooted.order {
            if let Parent::Tree(_) = rooted.parent[x] {
                push(self.collect(&rooted, &[x]));
            }
        }
        for (_, _, rest) in &rooted.cycle_roots {
            for a in 0..rest.len() {
                for b in a..rest.len() {
                    push(self.collect(&rooted, &rest[a..=b]));
                }
            }
        }
        out.into_iter().collect()
    }

    /// The represented cut whose smaller side is largest, found in time linear
    /// in the cactus size: subtree weights give every tree-edge cut, and a
    /// sliding window over each ring gives the best cycle cut.
    pub fn most_balanced_cut(&self) -> Option<Vec<VertexId>> {
        let n = self.num_vertices();
        let rooted = self.rooted()?;
        if !self.is_connected(&rooted) {
            return self.any_cut();
        }
        let score = |s: usize| if s == 0 || s >= n { 0 } else { s.min(n - s) };
        let mut best: (usize, Vec<NodeId>) = (0, Vec::new());
        for &x in &rooted.order {
            if let Parent::Tree(_) = rooted.parent[x] {
                let s = score(rooted.weight[x]);
                if s > best.0 {
                    best = (s, vec![x]);
                }
            }
        }
        let half = n / 2;
        for (_, _, rest) in &rooted.cycle_roots {
            let w: Vec<usize> = rest.iter().map(|&x| rooted.weight[x]).collect();
            // smallest `a` with sum(w[a..=b]) <= half
            let mut a = 0;
            let mut sum = 0;
            for b in 0..w.len() {
                sum += w[b];
                while sum > half && a < b {
                    sum -= w[a];
                    a += 1;
                }
                let mut cands = vec![(sum, a)];
                if a > 0 {
                    cands.push((sum + w[a - 1], a - 1));
                }
                for (s, from) in cands {
                    let sc = score(s);
                    if sc > best.0 {
                        best = (sc, rest[from..=b].to_vec());
                    }
                }
            }
        }
        if best.0 == 0 {
            return None;
        }
        Some(self.collect(&rooted, &best.1))
    }

    // ---- validation ----

    /// Checks the structural invariants; returns a description of the first
    /// violation found.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut live = 0;
        let mut nonempty = 0;
        for (id, node) in self.nodes.iter().enumerate() {
            if !node.alive {
                if !node.members.is_empty() || !node.tree.is_empty() || !node.cycles.is_empty() {
                    return Err(format!("dead node {id} still has content"));
                }
                continue;
            }
            live += 1;
            if !node.members.is_empty() {
                nonempty += 1;
            }
            for &v in &node.members {
                if seen[v] || self.pi[v] != id {
                    return Err(format!("vertex {v} mapped inconsistently"));
                }
                seen[v] = true;
            }
            for &y in &node.tree {
                if !self.is_alive(y) || !self.nodes[y].tree.contains(&id) || y == id {
                    return Err(format!("bad tree edge {id}-{y}"));
                }
            }
            let distinct: FxHashSet<NodeId> = node.tree.iter().copied().collect();
            if distinct.len() != node.tree.len() {
                return Err(format!("duplicate tree edge at {id}"));
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(format!("vertex {v} unassigned"));
        }
        if live != self.live || nonempty != self.nonempty {
            return Err("node counters out of sync".into());
        }
        let mut ring_edges = 0;
        let mut pair_owner: FxHashMap<(NodeId, NodeId), CycleId> = FxHashMap::default();
        for cid in self.cycle_ids() {
            let ring = self.cycle(cid).unwrap();
            if ring.len() < 3 {
                return Err(format!("cycle {cid} shorter than 3"));
            }
            let distinct: FxHashSet<NodeId> = ring.iter().copied().collect();
            if distinct.len() != ring.len() {
                return Err(format!("cycle {cid} repeats a node"));
            }
            for &x in ring {
                if !self.is_alive(x) || !self.nodes[x].cycles.contains(&cid) {
                    return Err(format!("cycle {cid} references bad node {x}"));
                }
            }
            for i in 0..ring.len() {
                let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
                if self.nodes[a].tree.contains(&b) {
                    return Err(format!("edge {a}-{b} is both tree and cycle edge"));
                }
            }
            ring_edges += ring.len();
            // two cycles may share at most one node
            for (i, &a) in ring.iter().enumerate() {
                for &b in &ring[i + 1..] {
                    let key = (a.min(b), a.max(b));
                    if let Some(other) = pair_owner.insert(key, cid) {
                        return Err(format!("cycles {other} and {cid} share two nodes"));
                    }
                }
            }
        }
        if self.lambda > 0 && live > 0 {
            let rooted = self.rooted().unwrap();
            if !self.is_connected(&rooted) {
                return Err("cactus with positive lambda is disconnected".into());
            }
            // a connected graph is a cactus iff its blocks form a tree
            let cycle_count = self.num_cycles();
            if self.tree_edges + ring_edges - cycle_count != live - 1 {
                return Err("cactus contains a cycle not recorded as a ring".into());
            }
        } else if self.lambda == 0 && (self.tree_edges > 0 || ring_edges > 0) {
            return Err("cactus with lambda = 0 has edges".into());
        }
        if n > 0 && live > 2 * n {
            return Err(format!("{live} nodes exceed 2n = {}", 2 * n));
        }
        Ok(())
    }

    // ---- text form ----

    /// Plain-text dump: a `# lambda=<λ> n=<n>` header, one `id: v1 v2 ...`
    /// line per node and one `a b tree` or `a b cycle:<cid>` line per edge.
    /// Ids are renumbered densely.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut id = vec![usize::MAX; self.nodes.len()];
        for (k, x) in self.node_ids().enumerate() {
            id[x] = k;
        }
        let _ = writeln!(out, "# lambda={} n={}", self.lambda, self.num_vertices());
        for x in self.node_ids() {
            let mut m = self.nodes[x].members.clone();
            m.sort_unstable();
            let _ = write!(out, "{}:", id[x]);
            for v in m {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        for x in self.node_ids() {
            for &y in &self.nodes[x].tree {
                if x < y {
                    let _ = writeln!(out, "{} {} tree", id[x], id[y]);
                }
            }
        }
        for (k, cid) in self.cycle_ids().enumerate() {
            let ring = self.cycle(cid).unwrap();
            for i in 0..ring.len() {
                let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
                let _ = writeln!(out, "{} {} cycle:{k}", id[a], id[b]);
            }
        }
        out
    }

    /// Parses the output of [`Cactus::to_text`].
    pub fn from_text(text: &str) -> Result<Self, CactusError> {
        let err = |line: usize, msg: &str| CactusError::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut lambda = 0;
        let mut n = None;
        let mut nodes: Vec<Vec<VertexId>> = Vec::new();
        let mut tree = Vec::new();
        let mut cyc: std::collections::BTreeMap<usize, Vec<(NodeId, NodeId)>> = Default::default();
        for (ln, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
            if line.is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('#') {
                for tok in h.split_whitespace() {
                    if let Some(v) = tok.strip_prefix("lambda=") {
                        lambda = v.parse().map_err(|_| err(ln, "bad lambda"))?;
                    } else if let Some(v) = tok.strip_prefix("n=") {
                        n = Some(v.parse::<usize>().map_err(|_| err(ln, "bad n"))?);
                    }
                }
                continue;
            }
            if let Some((id, rest)) = line.split_once(':').filter(|(a, _)| !a.contains(' ')) {
                let id: usize = id.parse().map_err(|_| err(ln, "bad node id"))?;
                if id != nodes.len() {
                    return Err(err(ln, "node ids must be dense and ordered"));
                }
                let members = rest
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| err(ln, "bad vertex")))
                    .collect::<Result<Vec<_>, _>>()?;
                nodes.push(members);
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(err(ln, "expected `a b tree|cycle:<cid>`"));
            }
            let a: usize = toks[0].parse().map_err(|_| err(ln, "bad node"))?;
            let b: usize = toks[1].parse().map_err(|_| err(ln, "bad node"))?;
            if a >= nodes.len() || b >= nodes.len() {
                return Err(err(ln, "edge references unknown node"));
            }
            if toks[2] == "tree" {
                tree.push((a, b));
            } else if let Some(c) = toks[2].strip_prefix("cycle:") {
                let c: usize = c.parse().map_err(|_| err(ln, "bad cycle id"))?;
                cyc.entry(c).or_default().push((a, b));
            } else {
                return Err(err(ln, "unknown edge kind"));
            }
        }
        let n = n.unwrap_or_else(|| nodes.iter().flatten().map(|&v| v + 1).max().unwrap_or(0));
        let mut c = Cactus::empty(n, lambda);
        for m in nodes {
            if m.iter().any(|&v| v >= n) {
                return Err(err(0, "vertex out of range"));
            }
            c.add_node(m);
        }
        for (a, b) in tree {
            c.add_tree_edge(a, b);
        }
        for (_, edges) in cyc {
            // walk the ring from its first edge
            let mut ring = vec![edges[0].0, edges[0].1];
            let mut used = vec![false; edges.len()];
            used[0] = true;
            loop {
                let last = *ring.last().unwrap();
                let next = edges.iter().enumerate().find(|(i, &(a, b))| !used[*i] && (a == last || b == last));
                match next {
                    Some((i, &(a, b))) => {
                        used[i] = true;
                        let other = if a == last { b } else { a };
                        if other == ring[0] {
                            break;
                        }
                        ring.push(other);
                    }
                    None => return Err(err(0, "cycle edges do not close")),
                }
            }
            c.add_cycle(ring);
        }
        c.check_invariants().map_err(|m| err(0, &m))?;
        Ok(c)
    }
}
