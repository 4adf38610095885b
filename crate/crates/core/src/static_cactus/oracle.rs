//! Exhaustive minimum cut enumeration for small graphs.

use thiserror::Error;

use crate::graph::{DynGraph, VertexId, Weight};

pub const ORACLE_MAX_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("exhaustive enumeration supports at most {ORACLE_MAX_VERTICES} vertices, got {0}")]
pub struct OracleTooLarge(pub usize);

/// λ and every minimum cut, each as the sorted side containing vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutOracleResult {
    pub lambda: Weight,
    pub cuts: Vec<Vec<VertexId>>,
}

/// Tries all 2^(n-1) - 1 bipartitions.
pub fn oracle_all_min_cuts(g: &DynGraph) -> Result<CutOracleResult, OracleTooLarge> {
    let n = g.num_vertices();
    if n > ORACLE_MAX_VERTICES {
        return Err(OracleTooLarge(n));
    }
    if n < 2 {
        return Ok(CutOracleResult { lambda: 0, cuts: Vec::new() });
    }
    let edges: Vec<(VertexId, VertexId, Weight)> = g.edges().collect();
    let full = (1u32 << (n - 1)) - 1;
    let mut lambda = Weight::MAX;
    let mut masks = Vec::new();
    // bit i of `rest` puts vertex i + 1 on vertex 0's side
    for rest in 0..full {
        let side = (rest << 1) | 1;
        let w: Weight = edges
            .iter()
            .filter(|&&(a, b, _)| (side >> a) & 1 != (side >> b) & 1)
            .map(|&(_, _, w)| w)
            .sum();
        if w < lambda {
            lambda = w;
            masks.clear();
        }
        if w == lambda {
            masks.push(side);
        }
    }
    let mut cuts: Vec<Vec<VertexId>> = masks
        .into_iter()
        .map(|m| (0..n).filter(|&v| (m >> v) & 1 == 1).collect())
        .collect();
    cuts.sort();
    Ok(CutOracleResult { lambda, cuts })
}
