//! Replays an update stream through the dynamic algorithm and through
//! per-batch static recomputation, and reports timings.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use super::io::{Op, UpdateStream};
use crate::dynamic::{DynamicConfig, DynamicError, DynamicMinCut, DynamicStats};
use crate::graph::{DynGraph, GraphError, VertexId, Weight};
use crate::static_cactus::static_min_cut;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Dynamic,
    Static,
    Both,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dynamic" => Ok(Mode::Dynamic),
            "static" => Ok(Mode::Static),
            "both" => Ok(Mode::Both),
            _ => Err(format!("unknown mode `{s}` (expected dynamic, static or both)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub mode: Mode,
    pub config: DynamicConfig,
    /// Wall-clock budget for the static baseline; the rest is extrapolated.
    pub timeout: Option<Duration>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            mode: Mode::Both,
            config: DynamicConfig::default(),
            timeout: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("stream declares {stream} vertices but the initial graph has {graph}")]
    VertexCount { graph: usize, stream: usize },
    #[error("update {index} (line {line}): {source}")]
    Replay {
        index: usize,
        line: usize,
        source: GraphError,
    },
    #[error("lambda mismatch after batch {batch}: dynamic {dynamic}, static {fresh}")]
    Mismatch { batch: usize, dynamic: Weight, fresh: Weight },
}

/// One CSV row. `op` is `init`, `+`, `-` or `batch`.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub update_idx: usize,
    pub batch_idx: usize,
    pub op: &'static str,
    pub edge: Option<(VertexId, VertexId, Weight)>,
    pub lambda: Weight,
    pub micros: f64,
}

#[derive(Debug, Clone)]
pub struct DynamicSummary {
    pub init_micros: f64,
    pub total_micros: f64,
    /// Summed update time per batch.
    pub batch_micros: Vec<f64>,
    pub stats: DynamicStats,
}

#[derive(Debug, Clone)]
pub struct StaticSummary {
    pub init_micros: f64,
    pub measured_micros: f64,
    pub batches_measured: usize,
    /// Measured time, scaled up to all batches when the timeout hit.
    pub estimated_total_micros: f64,
    pub extrapolated: bool,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub mode: Mode,
    pub updates: usize,
    pub batches: usize,
    pub dynamic_rows: Vec<Row>,
    pub static_rows: Vec<Row>,
    pub dynamic: Option<DynamicSummary>,
    pub fixed: Option<StaticSummary>,
}

fn micros(d: Duration) -> f64 {
    d.as_secs_f64() * 1e6
}

pub fn geometric_mean(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut k) = (0.0, 0usize);
    for x in xs {
        sum += x.max(1e-3).ln();
        k += 1;
    }
    if k == 0 {
        0.0
    } else {
        (sum / k as f64).exp()
    }
}

impl RunReport {
    /// Static over dynamic total update time.
    pub fn speedup(&self) -> Option<f64> {
        let (d, s) = (self.dynamic.as_ref()?, self.fixed.as_ref()?);
        Some(s.estimated_total_micros / d.total_micros.max(1e-3))
    }

    /// Ratio of per-batch geometric means over the measured batches.
    pub fn geomean_speedup(&self) -> Option<f64> {
        let (d, s) = (self.dynamic.as_ref()?, self.fixed.as_ref()?);
        let k = s.batches_measured;
        let dyn_gm = geometric_mean(d.batch_micros[..k].iter().copied());
        let static_gm = geometric_mean(self.static_rows.iter().skip(1).map(|r| r.micros));
        Some(static_gm / dyn_gm.max(1e-3))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("update_idx,batch_idx,op,u,v,w,lambda,micros\n");
        for r in self.dynamic_rows.iter().chain(&self.static_rows) {
            let (u, v, w) = match r.edge {
                Some((u, v, w)) => (u.to_string(), v.to_string(), w.to_string()),
                None => Default::default(),
            };
            let _ = writeln!(
                out,
                "{},{},{},{u},{v},{w},{},{:.3}",
                r.update_idx, r.batch_idx, r.op, r.lambda, r.micros
            );
        }
        let mode = match self.mode {
            Mode::Dynamic => "dynamic",
            Mode::Static => "static",
            Mode::Both => "both",
        };
        let _ = writeln!(out, "# mode={mode} updates={} batches={}", self.updates, self.batches);
        if let Some(d) = &self.dynamic {
            let _ = writeln!(
                out,
                "# dynamic init_micros={:.3} total_micros={:.3} geomean_batch_micros={:.3}",
                d.init_micros,
                d.total_micros,
                geometric_mean(d.batch_micros.iter().copied())
            );
            let s = d.stats;
            let _ = writeln!(
                out,
                "# stats insertions={} deletions={} separated_insertions={} flow_calls={} \
                 early_terminations={} exact_results={} full_recomputes={} uv_rebuilds={} \
                 cache_restores={} component_merges={} component_splits={}",
                s.insertions,
                s.deletions,
                s.separated_insertions,
                s.flow_calls,
                s.early_terminations,
                s.exact_results,
                s.full_recomputes,
                s.uv_rebuilds,
                s.cache_restores,
                s.component_merges,
                s.component_splits
            );
        }
        if let Some(s) = &self.fixed {
            let _ = writeln!(
                out,
                "# static init_micros={:.3} measured_micros={:.3} batches_measured={}/{} \
                 estimated_total_micros={:.3} extrapolated={}",
                s.init_micros,
                s.measured_micros,
                s.batches_measured,
                self.batches,
                s.estimated_total_micros,
                s.extrapolated
            );
        }
        if let (Some(a), Some(b)) = (self.speedup(), self.geomean_speedup()) {
            let _ = writeln!(out, "# speedup total={a:.2} geomean={b:.2}");
        }
        if self.mode == Mode::Both {
            out.push_str("# lambda_mismatches=0\n");
        }
        out
    }
}

fn run_dynamic(
    initial: &DynGraph,
    stream: &UpdateStream,
    config: DynamicConfig,
) -> Result<(Vec<Row>, DynamicSummary, Vec<Weight>), RunError> {
    let t0 = Instant::now();
    let mut d = DynamicMinCut::with_config(initial.clone(), config);
    let init_micros = micros(t0.elapsed());
    let mut rows = vec![Row {
        update_idx: 0,
        batch_idx: 0,
        op: "init",
        edge: None,
        lambda: d.current_lambda(),
        micros: init_micros,
    }];
    let batches = stream.batches();
    let mut batch_micros = Vec::with_capacity(batches.len());
    let mut lambdas = Vec::with_capacity(batches.len());
    for (b, range) in batches.into_iter().enumerate() {
        let mut spent = 0.0;
        for i in range {
            let up = &stream.updates[i];
            let t = Instant::now();
            let res = match up.op {
                Op::Insert => d.insert(up.u, up.v, up.w),
                Op::Delete => d.delete(up.u, up.v),
            };
            let us = micros(t.elapsed());
            res.map_err(|DynamicError::Graph(source)| RunError::Replay {
                index: i + 1,
                line: up.line,
                source,
            })?;
            spent += us;
            rows.push(Row {
                update_idx: i + 1,
                batch_idx: b + 1,
                op: if up.op == Op::Insert { "+" } else { "-" },
                edge: Some((up.u, up.v, up.w)),
                lambda: d.current_lambda(),
                micros: us,
            });
        }
        batch_micros.push(spent);
        lambdas.push(d.current_lambda());
    }
    let summary = DynamicSummary {
        init_micros,
        total_micros: batch_micros.iter().sum(),
        batch_micros,
        stats: *d.stats(),
    };
    Ok((rows, summary, lambdas))
}

fn run_static(
    initial: &DynGraph,
    stream: &UpdateStream,
    timeout: Option<Duration>,
) -> Result<(Vec<Row>, StaticSummary, Vec<Weight>), RunError> {
    let mut g = initial.clone();
    let t0 = Instant::now();
    let lambda0 = static_min_cut(&g);
    let init_micros = micros(t0.elapsed());
    let mut rows = vec![Row {
        update_idx: 0,
        batch_idx: 0,
        op: "init",
        edge: None,
        lambda: lambda0,
        micros: init_micros,
    }];
    let batches = stream.batches();
    let total_batches = batches.len();
    let mut lambdas = Vec::new();
    let mut measured = 0.0;
    for (b, range) in batches.into_iter().enumerate() {
        if b > 0 && timeout.is_some_and(|limit| measured >= micros(limit)) {
            break;
        }
        let t = Instant::now();
        let last = range.end;
        for i in range {
            let up = &stream.updates[i];
            let res = match up.op {
                Op::Insert => g.insert_edge(up.u, up.v, up.w),
                Op::Delete => g.delete_edge(up.u, up.v).map(|_| ()),
            };
            res.map_err(|source| RunError::Replay {
                index: i + 1,
                line: up.line,
                source,
            })?;
        }
        let lambda = static_min_cut(&g);
        let us = micros(t.elapsed());
        measured += us;
        lambdas.push(lambda);
        rows.push(Row {
            update_idx: last,
            batch_idx: b + 1,
            op: "batch",
            edge: None,
            lambda,
            micros: us,
        });
    }
    let k = lambdas.len();
    let extrapolated = k < total_batches;
    let estimated_total_micros = if extrapolated && k > 0 {
        measured / k as f64 * total_batches as f64
    } else {
        measured
    };
    let summary = StaticSummary {
        init_micros,
        measured_micros: measured,
        batches_measured: k,
        estimated_total_micros,
        extrapolated,
    };
    Ok((rows, summary, lambdas))
}

/// Replays `stream` on top of `initial` in the requested mode. In `Both`
/// mode λ is compared after every batch the static baseline measured.
pub fn run_compare(initial: &DynGraph, stream: &UpdateStream, opts: &RunOptions) -> Result<RunReport, RunError> {
    if stream.n != initial.num_vertices() {
        return Err(RunError::VertexCount {
            graph: initial.num_vertices(),
            stream: stream.n,
        });
    }
    let mut report = RunReport {
        mode: opts.mode,
        updates: stream.updates.len(),
        batches: stream.batches().len(),
        dynamic_rows: Vec::new(),
        static_rows: Vec::new(),
        dynamic: None,
        fixed: None,
    };
    let mut dyn_lambdas = Vec::new();
    if opts.mode != Mode::Static {
        let (rows, summary, lambdas) = run_dynamic(initial, stream, opts.config)?;
        report.dynamic_rows = rows;
        report.dynamic = Some(summary);
        dyn_lambdas = lambdas;
    }
    if opts.mode != Mode::Dynamic {
        let (rows, summary, lambdas) = run_static(initial, stream, opts.timeout)?;
        if opts.mode == Mode::Both {
            if report.dynamic_rows[0].lambda != rows[0].lambda {
                return Err(RunError::Mismatch {
                    batch: 0,
                    dynamic: report.dynamic_rows[0].lambda,
                    fresh: rows[0].lambda,
                });
            }
            for (b, (&x, &y)) in dyn_lambdas.iter().zip(&lambdas).enumerate() {
                if x != y {
                    return Err(RunError::Mismatch {
                        batch: b + 1,
                        dynamic: x,
                        fresh: y,
                    });
                }
            }
        }
        report.static_rows = rows;
        report.fixed = Some(summary);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::io::parse_stream_str;
    use super::*;

    fn cycle(n: usize) -> DynGraph {
        DynGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1))).unwrap()
    }

    #[test]
    fn cycle_delete_reinsert() {
        let s = parse_stream_str("n 5\n1 - 0 1\n2 + 0 1 1\n").unwrap();
        let r = run_compare(&cycle(5), &s, &RunOptions::default()).unwrap();
        let dyn_l: Vec<_> = r.dynamic_rows.iter().map(|x| x.lambda).collect();
        let st_l: Vec<_> = r.static_rows.iter().map(|x| x.lambda).collect();
        assert_eq!(dyn_l, vec![2, 1, 2]);
        assert_eq!(st_l, vec![2, 1, 2]);
        let csv = r.to_csv();
        assert!(csv.starts_with("update_idx,batch_idx,op,u,v,w,lambda,micros\n0,0,init,,,,2,"));
        assert!(csv.contains("# lambda_mismatches=0"));
    }

    #[test]
    fn empty_stream() {
        let s = parse_stream_str("n 5\n").unwrap();
        let r = run_compare(&cycle(5), &s, &RunOptions::default()).unwrap();
        assert_eq!((r.dynamic_rows.len(), r.static_rows.len()), (1, 1));
    }

    #[test]
    fn replay_errors_name_the_line() {
        let s = parse_stream_str("n 5\n1 - 0 2\n").unwrap();
        let err = run_compare(&cycle(5), &s, &RunOptions::default()).unwrap_err();
        assert!(matches!(err, RunError::Replay { line: 2, .. }), "{err}");
    }

    #[test]
    fn timeout_extrapolates() {
        let s = parse_stream_str("n 5\n1 - 0 1\n2 + 0 1\n3 - 2 3\n4 + 2 3\n").unwrap();
        let opts = RunOptions {
            mode: Mode::Static,
            timeout: Some(Duration::ZERO),
            ..RunOptions::default()
        };
        let r = run_compare(&cycle(5), &s, &opts).unwrap();
        let st = r.fixed.unwrap();
        assert!(st.extrapolated);
        assert_eq!(st.batches_measured, 1);
        assert!((st.estimated_total_micros - 4.0 * st.measured_micros).abs() < 1e-6);
    }
}
