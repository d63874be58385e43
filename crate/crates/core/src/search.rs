//! Steepest-descent local search (LS) and randomised local search (RLS)
//! over the single-flip neighbourhood.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::eval::{OpenSet, SearchState};
use crate::instance::{Instance, Rng64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "LS")]
    Ls,
    #[serde(rename = "RLS")]
    Rls,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ls => "LS",
            Algorithm::Rls => "RLS",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ls" => Ok(Algorithm::Ls),
            "rls" => Ok(Algorithm::Rls),
            other => Err(Error::Config(format!(
                "unknown algorithm {other:?}, expected ls or rls"
            ))),
        }
    }
}

/// An accepted move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TracePoint<C> {
    /// 1-based iteration in which the move was accepted.
    pub iteration: usize,
    /// Zero-based facility that was flipped.
    pub facility: usize,
    /// Objective after the move.
    pub objective: C,
}

/// Outcome of one LS or RLS run.
#[derive(Debug, Clone)]
pub struct RunRecord<C = i64> {
    pub algorithm: Algorithm,
    /// RLS seed; LS is deterministic and has none.
    pub seed: Option<u64>,
    pub initial_objective: C,
    pub final_objective: C,
    pub final_open: OpenSet,
    pub iterations_used: usize,
    pub accepted_moves: usize,
    /// Number of feasible flips whose delta was computed.
    pub flip_evaluations: usize,
    pub trace: Vec<TracePoint<C>>,
    pub wall_time_ms: f64,
}

impl<C: Cost> RunRecord<C> {
    /// Equality of everything except wall time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        self.algorithm == other.algorithm
            && self.seed == other.seed
            && self.initial_objective == other.initial_objective
            && self.final_objective == other.final_objective
            && self.final_open == other.final_open
            && self.iterations_used == other.iterations_used
            && self.accepted_moves == other.accepted_moves
            && self.flip_evaluations == other.flip_evaluations
            && self.trace == other.trace
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_micros() as f64 / 1e3
}

/// Steepest-descent local search from the all-open solution.
///
/// Each iteration evaluates every feasible flip and applies the one with
/// the smallest delta (lowest index on ties) if it strictly improves the
/// objective; otherwise the run stops at a local optimum. At most `n`
/// iterations.
pub fn ls_run<C: Cost>(inst: &Instance<C>) -> RunRecord<C> {
    let start = Instant::now();
    let n = inst.n();
    let mut state = SearchState::init_all_open(inst);
    let initial_objective = state.objective();
    let mut trace = Vec::new();
    let mut iterations_used = 0;
    let mut flip_evaluations = 0;

    for iteration in 1..=n {
        iterations_used = iteration;
        let mut best: Option<(C, usize)> = None;
        for i in 0..n {
            if let Some(d) = state.delta(i) {
                flip_evaluations += 1;
                if best.is_none_or(|(b, _)| d < b) {
                    best = Some((d, i));
                }
            }
        }
        match best {
            Some((d, i)) if d < C::zero() => {
                state.flip(i);
                trace.push(TracePoint {
                    iteration,
                    facility: i,
                    objective: state.objective(),
                });
            }
            _ => break,
        }
    }

    RunRecord {
        algorithm: Algorithm::Ls,
        seed: None,
        initial_objective,
        final_objective: state.objective(),
        final_open: state.open_set().clone(),
        iterations_used,
        accepted_moves: trace.len(),
        flip_evaluations,
        trace,
        wall_time_ms: elapsed_ms(start),
    }
}

/// Randomised local search from the all-open solution.
///
/// Exactly `n²` iterations; each proposes flipping a uniformly random
/// facility and accepts it when the objective does not increase. Proposals
/// that would close the last open facility are rejected but still use up
/// their iteration.
pub fn rls_run<C: Cost>(inst: &Instance<C>, seed: u64) -> RunRecord<C> {
    let start = Instant::now();
    let n = inst.n();
    let mut rng = Rng64::new(seed);
    let mut state = SearchState::init_all_open(inst);
    let initial_objective = state.objective();
    let mut trace = Vec::new();
    let mut flip_evaluations = 0;
    let budget = n * n;

    for iteration in 1..=budget {
        let i = rng.below(n as u64) as usize;
        let Some(d) = state.delta(i) else { continue };
        flip_evaluations += 1;
        if d <= C::zero() {
            state.flip(i);
            trace.push(TracePoint {
                iteration,
                facility: i,
                objective: state.objective(),
            });
        }
    }

    RunRecord {
        algorithm: Algorithm::Rls,
        seed: Some(seed),
        initial_objective,
        final_objective: state.objective(),
        final_open: state.open_set().clone(),
        iterations_used: budget,
        accepted_moves: trace.len(),
        flip_evaluations,
        trace,
        wall_time_ms: elapsed_ms(start),
    }
}

/// Runs `alg` once; `seed` is ignored by LS.
pub fn run<C: Cost>(inst: &Instance<C>, alg: Algorithm, seed: u64) -> RunRecord<C> {
    match alg {
        Algorithm::Ls => ls_run(inst),
        Algorithm::Rls => rls_run(inst, seed),
    }
}

/// Seed of run `run_index` in a multi-start batch.
pub fn run_seed(base_seed: u64, run_index: usize) -> u64 {
    Rng64::derive(base_seed, run_index as u64)
}

/// Independent runs of one algorithm, returned in run order.
///
/// Runs execute on the current rayon pool.
pub fn multi_start<C: Cost>(
    inst: &Instance<C>,
    alg: Algorithm,
    runs: usize,
    base_seed: u64,
) -> Result<Vec<RunRecord<C>>> {
    if runs == 0 {
        return Err(Error::Config("runs must be at least 1".into()));
    }
    if alg == Algorithm::Ls && runs > 1 {
        warn!("LS is deterministic; all {runs} runs will be identical");
    }
    Ok((0..runs)
        .into_par_iter()
        .map(|r| run(inst, alg, run_seed(base_seed, r)))
        .collect())
}
