//! Uncapacitated facility location toolkit.
//!
//! Generates instances from four random models, solves them with
//! steepest-descent local search (LS) and randomised local search (RLS)
//! over the single-flip neighbourhood, computes exact optima of small
//! instances, exports the integer program for external MILP solvers and
//! runs a reproducible benchmark protocol with box-plot summaries.
//!
//! The core is generic over an exact integer [`Cost`] scalar; the aliases
//! below fix it to `i64`, which is what the benchmark harness and CLI use.

pub mod cost;
pub mod error;
pub mod eval;
pub mod exact;
pub mod experiment;
pub mod instance;
pub mod search;

pub use cost::Cost;
pub use error::{Error, ParseError, Result, SolutionError};
pub use eval::{evaluate_full, OpenSet, SearchState};
pub use exact::{brute_force_naive, brute_force_opt, export_lp, import_open_set, ExactResult};
pub use instance::{generate, parse_instance, write_instance, Instance, ModelId, Rng64};
pub use search::{ls_run, multi_start, rls_run, Algorithm, RunRecord, TracePoint};

pub type Instance64 = Instance<i64>;
pub type Instance32 = Instance<i32>;
pub type SearchState64<'a> = SearchState<'a, i64>;
pub type RunRecord64 = RunRecord<i64>;
pub type ExactResult64 = ExactResult<i64>;
