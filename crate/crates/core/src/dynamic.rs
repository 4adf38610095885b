//! Fully dynamic exact minimum cut.
//!
//! Insertions contract the cactus path between the endpoints. Deletions run
//! a push-relabel flow that stops once λ units arrive, and only rebuild when
//! the flow proves a smaller cut. The cactus in use before a drop is cached
//! and restored if λ climbs back to its old value before too many insertions
//! have piled up.

use std::collections::VecDeque;

use thiserror::Error;

use crate::cactus::Cactus;
use crate::flow::{FlowNetwork, FlowResult};
use crate::graph::{DynGraph, GraphError, VertexId, Weight};
use crate::static_cactus::{build_cactus_seeded, static_min_cut, uv_cactus_from_flow, DEFAULT_SEED};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicConfig {
    /// Depth of the initial backward search in the deletion flow.
    pub gamma: usize,
    /// Restore the cached cactus only while pending insertions per cached
    /// cactus node stay below this ratio.
    pub delta: f64,
    pub seed: u64,
}

impl Default for DynamicConfig {
    fn default() -> Self {
        DynamicConfig {
            gamma: 1,
            delta: 2.0,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DynamicStats {
    pub insertions: u64,
    pub deletions: u64,
    /// Insertions whose endpoints sat in different cactus nodes.
    pub separated_insertions: u64,
    pub flow_calls: u64,
    pub early_terminations: u64,
    pub exact_results: u64,
    /// Calls to the full cactus construction, including the initial one.
    pub full_recomputes: u64,
    pub uv_rebuilds: u64,
    pub cache_restores: u64,
    pub component_merges: u64,
    pub component_splits: u64,
}

#[derive(Debug, Clone)]
pub struct CactusCache {
    pub cached: Cactus,
    pub lambda1: Weight,
    pub pending: Vec<(VertexId, VertexId, Weight)>,
    pub delta: f64,
}

#[derive(Debug, Error)]
pub enum DynamicError {
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone)]
pub struct DynamicMinCut {
    graph: DynGraph,
    cactus: Cactus,
    cache: Option<CactusCache>,
    net: FlowNetwork,
    config: DynamicConfig,
    stats: DynamicStats,
}

impl DynamicMinCut {
    pub fn new(graph: DynGraph) -> Self {
        Self::with_config(graph, DynamicConfig::default())
    }

    pub fn with_config(graph: DynGraph, config: DynamicConfig) -> Self {
        let mut d = DynamicMinCut {
            cactus: Cactus::empty(0, 0),
            graph,
            cache: None,
            net: FlowNetwork::new(),
            config,
            stats: DynamicStats::default(),
        };
        d.full_rebuild();
        d
    }

    pub fn graph(&self) -> &DynGraph {
        &self.graph
    }

    pub fn cactus(&self) -> &Cactus {
        &self.cactus
    }

    pub fn cache(&self) -> Option<&CactusCache> {
        self.cache.as_ref()
    }

    pub fn config(&self) -> &DynamicConfig {
        &self.config
    }

    pub fn stats(&self) -> &DynamicStats {
        &self.stats
    }

    pub fn current_lambda(&self) -> Weight {
        self.cactus.lambda()
    }

    /// Some minimum cut side, or one connected component when λ = 0.
    pub fn current_cut(&self) -> Option<Vec<VertexId>> {
        self.cactus.any_cut()
    }

    /// The represented minimum cut with the largest smaller side.
    pub fn current_most_balanced(&self) -> Option<Vec<VertexId>> {
        self.cactus.most_balanced_cut()
    }

    fn full_rebuild(&mut self) {
        let seed = self.config.seed.wrapping_add(self.stats.full_recomputes);
        self.cactus = build_cactus_seeded(&self.graph, seed);
        self.stats.full_recomputes += 1;
    }

    pub fn insert(&mut self, u: VertexId, v: VertexId, w: Weight) -> Result<(), DynamicError> {
        self.graph.insert_edge(u, v, w)?;
        self.stats.insertions += 1;
        if let Some(cache) = &mut self.cache {
            cache.pending.push((u, v, w));
        }
        if self.cactus.locate(u) != self.cactus.locate(v) {
            self.stats.separated_insertions += 1;
        }
        if self.contract_for(u, v) {
            self.on_collapse();
        }
        Ok(())
    }

    // Drops every represented cut separating u and v. Returns true when the
    // cactus has run out of cuts.
    fn contract_for(&mut self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = (self.cactus.locate(u), self.cactus.locate(v));
        if a == b {
            return false;
        }
        if self.cactus.lambda() == 0 {
            self.cactus.merge_components(a, b).expect("lambda is zero");
            self.stats.component_merges += 1;
        } else {
            let path = self.cactus.find_path(a, b).expect("cactus is connected");
            self.cactus.contract_path(&path);
        }
        self.cactus.nonempty_nodes() <= 1
    }

    // λ may have grown: recompute it, then restore the cache or rebuild.
    fn on_collapse(&mut self) {
        let lambda = static_min_cut(&self.graph);
        if let Some(cache) = self.cache.take() {
            if lambda < cache.lambda1 {
                self.cache = Some(cache);
            } else if lambda == cache.lambda1
                && (cache.pending.len() as f64) < cache.delta * cache.cached.n_star() as f64
            {
                self.cactus = cache.cached;
                self.stats.cache_restores += 1;
                let collapsed = cache.pending.iter().any(|&(u, v, _)| self.contract_for(u, v));
                if !collapsed {
                    return;
                }
            }
        }
        self.full_rebuild();
    }

    pub fn delete(&mut self, u: VertexId, v: VertexId) -> Result<(), DynamicError> {
        self.graph.delete_edge(u, v)?;
        self.stats.deletions += 1;
        let lambda = self.cactus.lambda();
        if lambda == 0 {
            self.split_if_disconnected(u, v);
            return Ok(());
        }
        self.stats.flow_calls += 1;
        let res = self
            .net
            .max_flow_bounded(&self.graph, u, v, Some(lambda), self.config.gamma);
        let value = match res {
            FlowResult::ReachedBound(_) => {
                self.stats.early_terminations += 1;
                return Ok(());
            }
            FlowResult::Exact { value, .. } => value,
        };
        self.stats.exact_results += 1;
        if value >= lambda {
            return Ok(());
        }
        let next = if value == 0 {
            let (comp, count) = self.graph.components();
            Cactus::from_components(&comp, count)
        } else {
            self.stats.uv_rebuilds += 1;
            uv_cactus_from_flow(&self.graph, &self.net, u, v, value)
        };
        let old = std::mem::replace(&mut self.cactus, next);
        self.cache = Some(CactusCache {
            cached: old,
            lambda1: lambda,
            pending: Vec::new(),
            delta: self.config.delta,
        });
        Ok(())
    }

    fn split_if_disconnected(&mut self, u: VertexId, v: VertexId) {
        let n = self.graph.num_vertices();
        let mut seen = vec![false; n];
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        let mut side = Vec::new();
        while let Some(x) = queue.pop_front() {
            side.push(x);
            for (y, _) in self.graph.neighbors(x) {
                if !seen[y] {
                    if y == v {
                        return;
                    }
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let node = self.cactus.add_node(Vec::new());
        self.cactus.reassign(&side, node);
        self.stats.component_splits += 1;
    }

    /// Checks the cactus invariants and that the reported cut weighs λ.
    pub fn validate(&self) -> Result<(), String> {
        self.cactus.check_invariants()?;
        if let Some(side) = self.current_cut() {
            let w = self.graph.cut_weight_of(&side);
            if w != self.current_lambda() {
                return Err(format!("reported cut weighs {w}, lambda is {}", self.current_lambda()));
            }
        }
        Ok(())
    }
}
