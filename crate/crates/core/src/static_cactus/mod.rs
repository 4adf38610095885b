//! From-scratch computation of λ and of the minimum cut cactus.

mod build;
mod ma_order;
mod oracle;

pub use build::{build_cactus, build_cactus_seeded, build_uv_cactus, uv_cactus_from_flow, BuildError, DEFAULT_SEED};
pub use ma_order::static_min_cut;
pub use oracle::{oracle_all_min_cuts, CutOracleResult, OracleTooLarge, ORACLE_MAX_VERTICES};
