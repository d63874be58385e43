//! Exact baselines: exhaustive search for small instances, LP export for
//! external MILP solvers and import of their open sets.

use std::io::{self, Write};

use crate::cost::Cost;
use crate::error::{Error, Result, SolutionError};
use crate::eval::{evaluate_full, OpenSet, SearchState};
use crate::instance::Instance;

/// Largest facility count accepted by the exhaustive search.
pub const BRUTE_FORCE_LIMIT: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult<C = i64> {
    pub optimal_objective: C,
    pub optimal_open_set: OpenSet,
    /// Number of non-empty open sets examined, `2^n - 1`.
    pub enumerated_count: u64,
}

fn guard(n: usize) -> Result<()> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(())
}

/// Optimum over every non-empty open set.
///
/// Walks the subsets in reflected Gray-code order so consecutive sets differ
/// by one facility and each step is a single incremental flip. Among equal
/// objectives the open set with the smallest mask wins, where facility `i`
/// is bit `i`; this prefers sets built from low-index facilities.
pub fn brute_force_opt<C: Cost>(inst: &Instance<C>) -> Result<ExactResult<C>> {
    let n = inst.n();
    guard(n)?;
    let total = (1u64 << n) - 1;
    // Gray code of 1 is {facility 0}.
    let mut state = SearchState::from_open_set(inst, OpenSet::from_mask(n, 1))?;
    let mut best = (state.objective(), 1u64);
    for k in 1..total {
        let bit = (k + 1).trailing_zeros() as usize;
        state.flip(bit);
        let next = k + 1;
        let mask = next ^ (next >> 1);
        let candidate = (state.objective(), mask);
        if candidate < best {
            best = candidate;
        }
    }
    Ok(ExactResult {
        optimal_objective: best.0,
        optimal_open_set: OpenSet::from_mask(n, best.1),
        enumerated_count: total,
    })
}

/// Same contract as [`brute_force_opt`], by plain binary counting and full
/// re-evaluation of every subset. Slower; kept as a cross-check.
pub fn brute_force_naive<C: Cost>(inst: &Instance<C>) -> Result<ExactResult<C>> {
    let n = inst.n();
    guard(n)?;
    let total = (1u64 << n) - 1;
    let mut best: Option<(C, u64)> = None;
    for mask in 1..=total {
        let value = evaluate_full(inst, &OpenSet::from_mask(n, mask))?;
        if best.is_none_or(|(b, _)| value < b) {
            best = Some((value, mask));
        }
    }
    let (optimal_objective, mask) = best.expect("n >= 1");
    Ok(ExactResult {
        optimal_objective,
        optimal_open_set: OpenSet::from_mask(n, mask),
        enumerated_count: total,
    })
}

fn term<W: Write, C: Cost>(out: &mut W, first: bool, coef: C, var: &str) -> io::Result<()> {
    if !first {
        out.write_all(b" + ")?;
    }
    if coef == C::one() {
        write!(out, "{var}")
    } else {
        write!(out, "{coef} {var}")
    }
}

/// Writes the integer program in CPLEX LP format.
///
/// Variables are `y<i>` (facility `i` open) and `x<i>_<j>` (customer `j`
/// served by facility `i`), both 1-based, facility first.
pub fn export_lp<C: Cost, W: Write>(inst: &Instance<C>, mut out: W) -> io::Result<()> {
    let (n, m) = (inst.n(), inst.m());
    writeln!(
        out,
        "\\ uncapacitated facility location, {n} facilities, {m} customers"
    )?;
    writeln!(out, "Minimize")?;
    write!(out, "obj: ")?;
    let mut first = true;
    for i in 0..n {
        term(
            &mut out,
            first,
            inst.opening_cost(i),
            &format!("y{}", i + 1),
        )?;
        first = false;
    }
    for i in 0..n {
        for j in 0..m {
            term(
                &mut out,
                false,
                inst.service_cost(i, j),
                &format!("x{}_{}", i + 1, j + 1),
            )?;
        }
    }
    writeln!(out)?;

    writeln!(out, "Subject To")?;
    for j in 1..=m {
        write!(out, "assign_{j}: ")?;
        for i in 1..=n {
            if i > 1 {
                out.write_all(b" + ")?;
            }
            write!(out, "x{i}_{j}")?;
        }
        writeln!(out, " = 1")?;
    }
    for i in 1..=n {
        for j in 1..=m {
            writeln!(out, "link_{i}_{j}: x{i}_{j} - y{i} <= 0")?;
        }
    }

    writeln!(out, "Binary")?;
    for i in 1..=n {
        writeln!(out, "y{i}")?;
    }
    for i in 1..=n {
        for j in 1..=m {
            writeln!(out, "x{i}_{j}")?;
        }
    }
    writeln!(out, "End")?;
    out.flush()
}

/// Parses `n` whitespace-separated `0`/`1` tokens.
pub fn parse_open_set(n: usize, text: &str) -> Result<OpenSet, SolutionError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != n {
        return Err(SolutionError::TokenCount {
            expected: n,
            found: tokens.len(),
        });
    }
    let bits = tokens
        .iter()
        .enumerate()
        .map(|(index, &tok)| match tok {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(SolutionError::NonBinary {
                index: index + 1,
                token: tok.to_string(),
            }),
        })
        .collect::<Result<Vec<bool>, _>>()?;
    if !bits.contains(&true) {
        return Err(SolutionError::AllClosed);
    }
    Ok(OpenSet::from_bools(bits))
}

/// Reads an externally computed open set and returns it with its verified
/// objective.
pub fn import_open_set<C: Cost>(inst: &Instance<C>, text: &str) -> Result<(OpenSet, C)> {
    let open = parse_open_set(inst.n(), text)?;
    let objective = evaluate_full(inst, &open)?;
    Ok((open, objective))
}
