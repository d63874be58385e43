//! The benchmark protocol: a grid of facility counts, several generated
//! instances per size, many runs of each algorithm per instance, and the
//! per-instance summaries and algorithm comparisons computed from them.

mod config;
mod report;
mod stats;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use config::ExperimentConfig;
pub use report::{read_runs, write_comparison, write_pairings, write_runs, write_summary};
pub use stats::{summarize, BoxStats};

use crate::error::{Error, Result};
use crate::instance::{generate, Instance, ModelId, Rng64};
use crate::search::{ls_run, multi_start, run_seed, Algorithm, RunRecord};

/// One row of `runs.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    /// Instance model number, empty for instances loaded from a file.
    pub model: Option<u8>,
    pub n: usize,
    pub m: usize,
    pub instance_seed: Option<u64>,
    pub instance_index: usize,
    pub algorithm: Algorithm,
    pub run_index: usize,
    pub run_seed: Option<u64>,
    pub objective: i64,
    pub iterations_used: usize,
    pub accepted_moves: usize,
    pub wall_time_ms: f64,
}

impl RunRow {
    pub fn from_record(
        record: &RunRecord<i64>,
        model: Option<ModelId>,
        inst: &Instance<i64>,
        instance_seed: Option<u64>,
        instance_index: usize,
        run_index: usize,
    ) -> Self {
        Self {
            model: model.map(ModelId::number),
            n: inst.n(),
            m: inst.m(),
            instance_seed,
            instance_index,
            algorithm: record.algorithm,
            run_index,
            run_seed: record.seed,
            objective: record.final_objective,
            iterations_used: record.iterations_used,
            accepted_moves: record.accepted_moves,
            wall_time_ms: record.wall_time_ms,
        }
    }

    /// Equality ignoring wall time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        Self {
            wall_time_ms: 0.0,
            ..self.clone()
        } == Self {
            wall_time_ms: 0.0,
            ..other.clone()
        }
    }

    fn instance_key(&self) -> InstanceKey {
        InstanceKey {
            model: self.model,
            n: self.n,
            m: self.m,
            instance_index: self.instance_index,
        }
    }

    fn sort_key(&self) -> (InstanceKey, Algorithm, usize) {
        (self.instance_key(), self.algorithm, self.run_index)
    }
}

/// Identifies one generated instance within an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InstanceKey {
    pub model: Option<u8>,
    pub n: usize,
    pub m: usize,
    pub instance_index: usize,
}

/// Seed of instance `instance_index` in the `(model, n)` cell, chained from
/// the master seed.
pub fn instance_seed(master_seed: u64, model: ModelId, n: usize, instance_index: usize) -> u64 {
    let s = Rng64::derive(master_seed, u64::from(model.number()));
    let s = Rng64::derive(s, n as u64);
    Rng64::derive(s, instance_index as u64)
}

/// Base seed of the RLS runs on one instance. Uses the complement of the
/// instance seed so run seeds do not replay the generator's stream.
pub fn runs_base_seed(instance_seed: u64) -> u64 {
    Rng64::derive(!instance_seed, 0)
}

/// Runs the whole protocol described by `cfg` on the current rayon pool.
///
/// Rows are sorted by instance, algorithm and run index. LS is
/// deterministic, so it is executed once per instance and its row repeated
/// `runs_per_algorithm` times.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunRow>> {
    cfg.validate()?;
    let cells: Vec<(usize, usize)> = cfg
        .facility_counts
        .iter()
        .flat_map(|&n| (0..cfg.instances_per_cell).map(move |k| (n, k)))
        .collect();

    let per_cell: Vec<Vec<RunRow>> = cells
        .par_iter()
        .map(|&(n, index)| run_cell(cfg, n, index))
        .collect::<Result<_>>()?;

    let mut rows: Vec<RunRow> = per_cell.into_iter().flatten().collect();
    rows.sort_by_key(RunRow::sort_key);
    Ok(rows)
}

fn run_cell(cfg: &ExperimentConfig, n: usize, index: usize) -> Result<Vec<RunRow>> {
    let seed = instance_seed(cfg.master_seed, cfg.model, n, index);
    let inst = generate::<i64>(cfg.model, n, cfg.m, seed)?;
    let runs = cfg.runs_per_algorithm;
    let row = |rec: &RunRecord<i64>, r| {
        RunRow::from_record(rec, Some(cfg.model), &inst, Some(seed), index, r)
    };

    let mut rows = Vec::with_capacity(runs * cfg.algorithms.len());
    for &alg in &cfg.algorithms {
        match alg {
            Algorithm::Ls => {
                let rec = ls_run(&inst);
                rows.extend((0..runs).map(|r| row(&rec, r)));
            }
            Algorithm::Rls => {
                let base = runs_base_seed(seed);
                let recs: Vec<RunRow> = (0..runs)
                    .into_par_iter()
                    .map(|r| row(&crate::search::rls_run(&inst, run_seed(base, r)), r))
                    .collect();
                rows.extend(recs);
            }
        }
    }
    Ok(rows)
}

/// Convenience wrapper used by callers that already hold an instance.
pub fn solve_rows(
    inst: &Instance<i64>,
    alg: Algorithm,
    runs: usize,
    base_seed: u64,
) -> Result<Vec<RunRow>> {
    Ok(multi_start(inst, alg, runs, base_seed)?
        .iter()
        .enumerate()
        .map(|(r, rec)| RunRow::from_record(rec, None, inst, None, 0, r))
        .collect())
}

/// One row of `summary.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub key: InstanceKey,
    pub algorithm: Algorithm,
    pub stats: BoxStats<i64>,
}

fn group_objectives(rows: &[RunRow]) -> BTreeMap<(InstanceKey, Algorithm), Vec<i64>> {
    let mut groups: BTreeMap<(InstanceKey, Algorithm), Vec<i64>> = BTreeMap::new();
    for r in rows {
        groups
            .entry((r.instance_key(), r.algorithm))
            .or_default()
            .push(r.objective);
    }
    groups
}

/// Box statistics per instance and algorithm.
pub fn summarize_runs(rows: &[RunRow]) -> Result<Vec<SummaryRow>> {
    group_objectives(rows)
        .into_iter()
        .map(|((key, algorithm), objectives)| {
            Ok(SummaryRow {
                key,
                algorithm,
                stats: summarize(&objectives)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    Ls,
    Rls,
    Tie,
}

impl Winner {
    fn lower<T: PartialOrd>(ls: T, rls: T) -> Self {
        if ls < rls {
            Winner::Ls
        } else if rls < ls {
            Winner::Rls
        } else {
            Winner::Tie
        }
    }
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::Ls => "LS",
            Winner::Rls => "RLS",
            Winner::Tie => "tie",
        })
    }
}

/// LS against RLS on one instance. Lower objectives win.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub key: InstanceKey,
    pub ls_median: f64,
    pub rls_median: f64,
    pub ls_best: i64,
    pub rls_best: i64,
    pub winner_by_median: Winner,
    pub winner_by_best: Winner,
    pub reference: Option<i64>,
}

/// Run `run_index` of LS next to run `run_index` of RLS on the same
/// instance, with the reference objective repeated on every line.
#[derive(Debug, Clone, PartialEq)]
pub struct Pairing {
    pub key: InstanceKey,
    pub run_index: usize,
    pub ls_objective: i64,
    pub rls_objective: i64,
    pub reference: Option<i64>,
}

/// LS rows and RLS rows of each instance.
type SplitRuns<'a> = BTreeMap<InstanceKey, (Vec<&'a RunRow>, Vec<&'a RunRow>)>;

fn split_by_algorithm(rows: &[RunRow]) -> Result<SplitRuns<'_>> {
    let mut by_instance = SplitRuns::new();
    for r in rows {
        let entry = by_instance.entry(r.instance_key()).or_default();
        match r.algorithm {
            Algorithm::Ls => entry.0.push(r),
            Algorithm::Rls => entry.1.push(r),
        }
    }
    for (key, (ls, rls)) in &by_instance {
        for (runs, alg) in [(ls, Algorithm::Ls), (rls, Algorithm::Rls)] {
            if runs.is_empty() {
                return Err(Error::MissingAlgorithm {
                    n: key.n,
                    instance_index: key.instance_index,
                    algorithm: alg.name(),
                });
            }
        }
    }
    Ok(by_instance)
}

/// Per-instance comparison of LS and RLS. `references` optionally supplies
/// an externally verified objective per instance.
pub fn compare_algorithms(
    rows: &[RunRow],
    references: &HashMap<InstanceKey, i64>,
) -> Result<Vec<Comparison>> {
    split_by_algorithm(rows)?
        .into_iter()
        .map(|(key, (ls, rls))| {
            let ls: Vec<i64> = ls.iter().map(|r| r.objective).collect();
            let rls: Vec<i64> = rls.iter().map(|r| r.objective).collect();
            let (ls_stats, rls_stats) = (summarize(&ls)?, summarize(&rls)?);
            Ok(Comparison {
                key,
                ls_median: ls_stats.median,
                rls_median: rls_stats.median,
                ls_best: ls_stats.min,
                rls_best: rls_stats.min,
                winner_by_median: Winner::lower(ls_stats.median, rls_stats.median),
                winner_by_best: Winner::lower(ls_stats.min, rls_stats.min),
                reference: references.get(&key).copied(),
            })
        })
        .collect()
}

/// Pairs runs by index; instances with unequal run counts are paired up to
/// the shorter list.
pub fn pair_runs(rows: &[RunRow], references: &HashMap<InstanceKey, i64>) -> Result<Vec<Pairing>> {
    let mut out = Vec::new();
    for (key, (mut ls, mut rls)) in split_by_algorithm(rows)? {
        ls.sort_by_key(|r| r.run_index);
        rls.sort_by_key(|r| r.run_index);
        out.extend(ls.iter().zip(&rls).map(|(a, b)| Pairing {
            key,
            run_index: a.run_index,
            ls_objective: a.objective,
            rls_objective: b.objective,
            reference: references.get(&key).copied(),
        }));
    }
    Ok(out)
}
