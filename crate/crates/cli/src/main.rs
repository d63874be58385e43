use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use uflp::experiment::{
    compare_algorithms, pair_runs, read_runs, run_experiment, solve_rows, summarize_runs,
    write_comparison, write_pairings, write_runs, write_summary, ExperimentConfig,
};
use uflp::{
    brute_force_opt, export_lp, generate, import_open_set, parse_instance, write_instance,
    Algorithm, Instance, ModelId,
};

#[derive(Parser)]
#[command(
    name = "uflp",
    version,
    about = "Uncapacitated facility location toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Gen {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        model: u8,
        #[arg(long)]
        facilities: usize,
        #[arg(long)]
        customers: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run LS or RLS on an instance file and write runs.csv.
    Solve {
        #[arg(long)]
        alg: Algorithm,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact optimum by exhaustive search (at most 25 facilities).
    Oracle {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Write the integer program in CPLEX LP format.
    ExportLp {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify an externally computed open set (n tokens of 0/1).
    ImportSol {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Run the benchmark protocol and write runs, summary and comparison CSVs.
    Bench {
        /// key=value config file; the full 1000-customer grid over all four
        /// models when omitted.
        #[arg(long, conflicts_with = "small")]
        config: Option<PathBuf>,
        /// Desk-scale preset: 100 customers, 10/15/20 facilities, 5
        /// instances, 100 runs.
        #[arg(long)]
        small: bool,
        #[arg(long)]
        out_dir: PathBuf,
        /// Concurrent workers.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        /// Optional file of `model,n,instance_index,objective` reference
        /// objectives to place next to the runs in the comparison.
        #[arg(long)]
        references: Option<PathBuf>,
    },
    /// Box statistics per instance and algorithm from a runs.csv.
    Stats {
        #[arg(long)]
        runs: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Usage errors exit with 1, data and feasibility errors with 2.
enum Failure {
    Usage(String),
    Data(String),
}

impl From<uflp::Error> for Failure {
    fn from(e: uflp::Error) -> Self {
        match e {
            uflp::Error::Config(msg) => Failure::Usage(msg),
            other => Failure::Data(other.to_string()),
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> CliResult<Instance<i64>> {
    parse_instance(&read_text(path)?).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the target directory and renames it
/// into place, or streams to standard output when `path` is `None`.
fn emit(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> uflp::Result<()>) -> CliResult {
    let io_err = |p: &Path, e: io::Error| Failure::Data(format!("{}: {e}", p.display()));
    match path {
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            match body(&mut lock) {
                // A closed pipe (`| head`) is not an error.
                Err(uflp::Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                other => Ok(other?),
            }
        }
        Some(p) => {
            let dir = match p.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_err(p, e))?;
            body(tmp.as_file_mut())?;
            tmp.persist(p).map_err(|e| io_err(p, e.error))?;
            Ok(())
        }
    }
}

/// `(model, n, instance_index)` to reference objective.
type References = HashMap<(Option<u8>, usize, usize), i64>;

fn parse_references(text: &str) -> CliResult<References> {
    let mut refs = HashMap::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("model") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed = match fields[..] {
            [model, n, index, objective] => (|| {
                let model = if model.is_empty() {
                    None
                } else {
                    Some(model.parse().ok()?)
                };
                Some((
                    (model, n.parse().ok()?, index.parse().ok()?),
                    objective.parse().ok()?,
                ))
            })(),
            _ => None,
        };
        let (key, value) = parsed.ok_or_else(|| {
            Failure::Data(format!(
                "references line {}: expected model,n,instance_index,objective",
                k + 1
            ))
        })?;
        refs.insert(key, value);
    }
    Ok(refs)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Gen {
            model,
            facilities,
            customers,
            seed,
            out,
        } => {
            let model = ModelId::from_number(model).expect("clap restricts the range");
            let inst = generate::<i64>(model, facilities, customers, seed)?;
            emit(out.as_deref(), |w| Ok(write_instance(&inst, w)?))
        }
        Command::Solve {
            alg,
            instance,
            runs,
            seed,
            out,
        } => {
            if runs == 0 {
                return Err(Failure::Usage("--runs must be at least 1, got 0".into()));
            }
            let inst = load_instance(&instance)?;
            let rows = solve_rows(&inst, alg, runs, seed)?;
            emit(out.as_deref(), |w| write_runs(&rows, w))?;
            if out.is_some() {
                let best = rows.iter().map(|r| r.objective).min().unwrap_or_default();
                println!("{alg}: {runs} runs, best objective {best}");
            }
            Ok(())
        }
        Command::Oracle { instance } => {
            let inst = load_instance(&instance)?;
            let r = brute_force_opt(&inst)?;
            println!("{}", r.optimal_objective);
            println!("{}", r.optimal_open_set);
            Ok(())
        }
        Command::ExportLp { instance, out } => {
            let inst = load_instance(&instance)?;
            emit(out.as_deref(), |w| Ok(export_lp(&inst, w)?))
        }
        Command::ImportSol { instance, solution } => {
            let inst = load_instance(&instance)?;
            let (_, objective) = import_open_set(&inst, &read_text(&solution)?)?;
            println!("{objective}");
            Ok(())
        }
        Command::Bench {
            config,
            small,
            out_dir,
            jobs,
            references,
        } => {
            let configs = match (config, small) {
                (Some(path), _) => ExperimentConfig::parse(&read_text(&path)?)?,
                (None, true) => ModelId::all().map(ExperimentConfig::small).to_vec(),
                (None, false) => ModelId::all().map(ExperimentConfig::full).to_vec(),
            };
            let refs = match references {
                Some(p) => parse_references(&read_text(&p)?)?,
                None => HashMap::new(),
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs as usize)
                .build()
                .map_err(|e| Failure::Data(e.to_string()))?;
            let mut rows = Vec::new();
            for cfg in &configs {
                eprintln!(
                    "model {}: {} customers, facilities {:?}, {} instances, {} runs",
                    cfg.model,
                    cfg.m,
                    cfg.facility_counts,
                    cfg.instances_per_cell,
                    cfg.runs_per_algorithm
                );
                rows.extend(pool.install(|| run_experiment(cfg))?);
            }
            fs::create_dir_all(&out_dir)
                .map_err(|e| Failure::Data(format!("{}: {e}", out_dir.display())))?;
            let summary = summarize_runs(&rows)?;
            emit(Some(&out_dir.join("runs.csv")), |w| write_runs(&rows, w))?;
            emit(Some(&out_dir.join("summary.csv")), |w| {
                write_summary(&summary, w)
            })?;

            let has_both = configs.iter().all(|c| {
                c.algorithms.contains(&Algorithm::Ls) && c.algorithms.contains(&Algorithm::Rls)
            });
            if has_both {
                let keyed = rows
                    .iter()
                    .filter_map(|r| {
                        refs.get(&(r.model, r.n, r.instance_index)).map(|&v| {
                            (
                                uflp::experiment::InstanceKey {
                                    model: r.model,
                                    n: r.n,
                                    m: r.m,
                                    instance_index: r.instance_index,
                                },
                                v,
                            )
                        })
                    })
                    .collect();
                let comparison = compare_algorithms(&rows, &keyed)?;
                let pairs = pair_runs(&rows, &keyed)?;
                emit(Some(&out_dir.join("comparison.csv")), |w| {
                    write_comparison(&comparison, w)
                })?;
                emit(Some(&out_dir.join("pairs.csv")), |w| {
                    write_pairings(&pairs, w)
                })?;
            } else {
                eprintln!("comparison.csv skipped: config does not run both LS and RLS");
            }
            eprintln!("wrote {} runs to {}", rows.len(), out_dir.display());
            Ok(())
        }
        Command::Stats { runs, out } => {
            let file = fs::File::open(&runs)
                .map_err(|e| Failure::Data(format!("{}: {e}", runs.display())))?;
            let rows = read_runs(io::BufReader::new(file))?;
            let summary = summarize_runs(&rows)?;
            emit(out.as_deref(), |w| write_summary(&summary, w))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
