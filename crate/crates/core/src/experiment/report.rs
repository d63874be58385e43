//! CSV output. Every file has a header row, `.` decimals and LF endings.

use std::io::{Read, Write};

use super::{Comparison, Pairing, RunRow, SummaryRow};
use crate::error::Result;

fn writer<W: Write>(sink: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Quartiles print without a trailing `.0` when whole; means and standard
/// deviations always carry a decimal point.
fn decimal(v: f64) -> String {
    format!("{v:?}")
}

pub fn write_runs<W: Write>(rows: &[RunRow], sink: W) -> Result<()> {
    let mut w = writer(sink);
    if rows.is_empty() {
        w.write_record([
            "model",
            "n",
            "m",
            "instance_seed",
            "instance_index",
            "algorithm",
            "run_index",
            "run_seed",
            "objective",
            "iterations_used",
            "accepted_moves",
            "wall_time_ms",
        ])?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_runs<R: Read>(source: R) -> Result<Vec<RunRow>> {
    let mut rdr = csv::Reader::from_reader(source);
    let rows = rdr.deserialize().collect::<Result<Vec<RunRow>, _>>()?;
    Ok(rows)
}

pub fn write_summary<W: Write>(rows: &[SummaryRow], sink: W) -> Result<()> {
    let mut w = writer(sink);
    w.write_record([
        "model",
        "n",
        "m",
        "instance_index",
        "algorithm",
        "count",
        "min",
        "q1",
        "median",
        "q3",
        "max",
        "lo_whisker",
        "hi_whisker",
        "mean",
        "stddev",
        "n_outliers",
    ])?;
    for r in rows {
        let s = &r.stats;
        w.write_record([
            opt(r.key.model),
            r.key.n.to_string(),
            r.key.m.to_string(),
            r.key.instance_index.to_string(),
            r.algorithm.to_string(),
            s.count.to_string(),
            s.min.to_string(),
            s.q1.to_string(),
            s.median.to_string(),
            s.q3.to_string(),
            s.max.to_string(),
            s.lo_whisker.to_string(),
            s.hi_whisker.to_string(),
            decimal(s.mean),
            decimal(s.stddev),
            s.outliers.len().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_comparison<W: Write>(rows: &[Comparison], sink: W) -> Result<()> {
    let mut w = writer(sink);
    w.write_record([
        "model",
        "n",
        "m",
        "instance_index",
        "ls_median",
        "rls_median",
        "ls_best",
        "rls_best",
        "winner_median",
        "winner_best",
        "reference",
    ])?;
    for c in rows {
        w.write_record([
            opt(c.key.model),
            c.key.n.to_string(),
            c.key.m.to_string(),
            c.key.instance_index.to_string(),
            c.ls_median.to_string(),
            c.rls_median.to_string(),
            c.ls_best.to_string(),
            c.rls_best.to_string(),
            c.winner_by_median.to_string(),
            c.winner_by_best.to_string(),
            opt(c.reference),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_pairings<W: Write>(rows: &[Pairing], sink: W) -> Result<()> {
    let mut w = writer(sink);
    w.write_record([
        "model",
        "n",
        "m",
        "instance_index",
        "run_index",
        "ls_objective",
        "rls_objective",
        "reference",
    ])?;
    for p in rows {
        w.write_record([
            opt(p.key.model),
            p.key.n.to_string(),
            p.key.m.to_string(),
            p.key.instance_index.to_string(),
            p.run_index.to_string(),
            p.ls_objective.to_string(),
            p.rls_objective.to_string(),
            opt(p.reference),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::{summarize_runs, InstanceKey};
    use crate::search::Algorithm;

    fn rows() -> Vec<RunRow> {
        (0..3)
            .map(|r| RunRow {
                model: Some(2),
                n: 5,
                m: 9,
                instance_seed: Some(u64::MAX - r as u64),
                instance_index: 1,
                algorithm: Algorithm::Rls,
                run_index: r,
                run_seed: if r == 1 { None } else { Some(r as u64 * 31) },
                objective: 7,
                iterations_used: 25,
                accepted_moves: r,
                wall_time_ms: 0.1 + r as f64 / 3.0,
            })
            .collect()
    }

    fn text(f: impl FnOnce(&mut Vec<u8>)) -> String {
        let mut out = Vec::new();
        f(&mut out);
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn runs_header_and_lines() {
        let t = text(|o| write_runs(&rows(), o).unwrap());
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(
            lines[0],
            "model,n,m,instance_seed,instance_index,algorithm,run_index,run_seed,objective,iterations_used,accepted_moves,wall_time_ms"
        );
        assert!(lines[2].starts_with("2,5,9,18446744073709551614,1,RLS,1,,7,25,1,"));
        assert!(!t.contains('\r'));
        let empty = text(|o| write_runs(&[], o).unwrap());
        assert_eq!(empty.lines().count(), 1);
    }

    #[test]
    fn runs_round_trip() {
        let t = text(|o| write_runs(&rows(), o).unwrap());
        assert_eq!(read_runs(t.as_bytes()).unwrap(), rows());
    }

    #[test]
    fn degenerate_summary_line() {
        let summary = summarize_runs(&rows()).unwrap();
        assert_eq!(
            summary[0].key,
            InstanceKey {
                model: Some(2),
                n: 5,
                m: 9,
                instance_index: 1
            }
        );
        let t = text(|o| write_summary(&summary, o).unwrap());
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "2,5,9,1,RLS,3,7,7,7,7,7,7,7,7.0,0.0,0");
    }

    #[test]
    fn half_quartiles() {
        let mut rs = rows();
        rs[0].objective = 8;
        rs.push(RunRow {
            run_index: 3,
            objective: 10,
            ..rs[0].clone()
        });
        let t = text(|o| write_summary(&summarize_runs(&rs).unwrap(), o).unwrap());
        // 7 7 8 10: hinges 7 and 9, median 7.5
        assert!(t
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("2,5,9,1,RLS,4,7,7,7.5,9,10,7,10,8.0,"));
    }
}
