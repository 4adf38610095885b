//! Benchmark plumbing: file formats, workload generators and the
//! dynamic-versus-static comparison.

pub mod harness;
pub mod io;
pub mod workload;

pub use harness::{run_compare, Mode, RunError, RunOptions, RunReport};
pub use io::{parse_graph, parse_stream, GraphFormat, Op, ParseError, Update, UpdateStream};
pub use workload::{gen_gnm, gen_random_workload, gen_worstcase_workload, WorkloadError};
