use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use dynmincut::bench::io::write_metis;
use dynmincut::bench::{
    gen_gnm, gen_random_workload, gen_worstcase_workload, parse_graph, parse_stream, run_compare, GraphFormat, Mode,
    RunError, RunOptions,
};
use dynmincut::graph::DynGraph;
use dynmincut::static_cactus::DEFAULT_SEED;
use dynmincut::{DynamicConfig, DynamicMinCut};

#[derive(Parser)]
#[command(name = "dynmincut", version, about = "Exact fully dynamic minimum cut")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Tuning {
    /// Depth of the backward search seeding flow labels.
    #[arg(long, default_value_t = 1)]
    gamma: usize,
    /// Cache restore threshold on pending insertions per cactus node.
    #[arg(long, default_value_t = 2.0)]
    delta: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl Tuning {
    fn config(&self) -> DynamicConfig {
        DynamicConfig {
            gamma: self.gamma,
            delta: self.delta,
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct GraphInput {
    /// Graph file.
    graph: PathBuf,
    /// metis or edgelist; guessed from the extension when omitted.
    #[arg(long)]
    format: Option<GraphFormat>,
}

impl GraphInput {
    fn load(&self) -> Result<DynGraph> {
        load_graph(&self.graph, self.format)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the initial cactus and print its statistics.
    InitStats {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Replay an update stream and write a CSV report.
    Run {
        /// Update stream file.
        stream: PathBuf,
        /// Initial graph; an empty graph on the stream's vertex count if omitted.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        format: Option<GraphFormat>,
        #[arg(long, default_value = "both")]
        mode: Mode,
        /// Wall-clock budget for the static baseline before extrapolating.
        #[arg(long)]
        timeout_secs: Option<f64>,
        /// CSV destination; standard output if omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Sample a random insertion/deletion workload from a graph.
    GenRandom {
        /// Source graph; a random graph is generated when omitted.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        format: Option<GraphFormat>,
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        min_degree: usize,
        #[arg(long, default_value_t = 0.0005)]
        alpha_ins: f64,
        #[arg(long, default_value_t = 0.0005)]
        alpha_del: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Where to write the initial graph (METIS).
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_stream: PathBuf,
    },
    /// Generate an adversarial stream against a live dynamic instance.
    GenWorstcase {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 1000)]
        n_ins: usize,
        #[arg(long, default_value_t = 0)]
        n_del: usize,
        #[arg(long)]
        out_stream: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Print the cactus of all minimum cuts.
    DumpCactus {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        tuning: Tuning,
    },
}

fn load_graph(path: &Path, format: Option<GraphFormat>) -> Result<DynGraph> {
    let format = format.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("graph" | "metis") => GraphFormat::Metis,
        _ => GraphFormat::EdgeList,
    });
    parse_graph(path, format).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::InitStats { input, tuning } => {
            let g = input.load()?;
            let t = Instant::now();
            let d = DynamicMinCut::with_config(g, tuning.config());
            let secs = t.elapsed().as_secs_f64();
            let c = d.cactus();
            println!("n={} m={}", d.graph().num_vertices(), d.graph().num_edges());
            println!("lambda={}", d.current_lambda());
            println!(
                "cactus_nodes={} nonempty_nodes={} cactus_edges={} cycles={} tree_edges={}",
                c.n_star(),
                c.nonempty_nodes(),
                c.m_star(),
                c.num_cycles(),
                c.num_tree_edges()
            );
            if let Some(side) = d.current_most_balanced() {
                let n = d.graph().num_vertices();
                println!("most_balanced_smaller_side={}", side.len().min(n - side.len()));
            }
            println!("init_seconds={secs:.6}");
        }
        Command::Run {
            stream,
            graph,
            format,
            mode,
            timeout_secs,
            out,
            tuning,
        } => {
            let s = parse_stream(&stream).with_context(|| format!("reading {}", stream.display()))?;
            let initial = match graph {
                Some(p) => load_graph(&p, format)?,
                None => DynGraph::new(s.n),
            };
            let opts = RunOptions {
                mode,
                config: tuning.config(),
                timeout: timeout_secs.map(Duration::from_secs_f64),
            };
            let report = match run_compare(&initial, &s, &opts) {
                Ok(r) => r,
                Err(e @ RunError::Mismatch { .. }) => bail!("correctness failure: {e}"),
                Err(e) => return Err(e.into()),
            };
            let csv = report.to_csv();
            match out {
                Some(p) => fs::write(&p, csv).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{csv}"),
            }
        }
        Command::GenRandom {
            graph,
            format,
            n,
            m,
            min_degree,
            alpha_ins,
            alpha_del,
            seed,
            out_graph,
            out_stream,
        } => {
            let g = match graph {
                Some(p) => load_graph(&p, format)?,
                None => gen_gnm(n, m, min_degree, seed)?,
            };
            let (initial, s) = gen_random_workload(&g, alpha_ins, alpha_del, seed)?;
            fs::write(&out_graph, write_metis(&initial))?;
            fs::write(&out_stream, s.to_text())?;
            eprintln!("wrote {} updates", s.updates.len());
        }
        Command::GenWorstcase {
            input,
            n_ins,
            n_del,
            out_stream,
            tuning,
        } => {
            let g = input.load()?;
            let mut d = DynamicMinCut::with_config(g, tuning.config());
            let s = gen_worstcase_workload(&mut d, n_ins, n_del, tuning.seed)?;
            fs::write(&out_stream, s.to_text())?;
            eprintln!("wrote {} updates", s.updates.len());
        }
        Command::DumpCactus { input, tuning } => {
            let g = input.load()?;
            let d = DynamicMinCut::with_config(g, tuning.config());
            print!("{}", d.cactus().to_text());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
