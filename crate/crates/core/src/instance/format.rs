//! Canonical instance text format.
//!
//! ```text
//! # optional comment lines
//! n m
//! f_1 .. f_n
//! c_1_1 .. c_1_m
//! ..
//! c_n_1 .. c_n_m
//! ```

use std::io::{self, BufRead, Write};

use super::Instance;
use crate::cost::Cost;
use crate::error::{Error, ParseError, Result};

pub fn write_instance<C: Cost, W: Write>(inst: &Instance<C>, mut sink: W) -> io::Result<()> {
    writeln!(sink, "{} {}", inst.n(), inst.m())?;
    write_row(&mut sink, inst.opening_costs())?;
    for i in 0..inst.n() {
        write_row(&mut sink, inst.facility_row(i))?;
    }
    sink.flush()
}

fn write_row<C: Cost, W: Write>(sink: &mut W, row: &[C]) -> io::Result<()> {
    let mut first = true;
    for v in row {
        if !first {
            sink.write_all(b" ")?;
        }
        write!(sink, "{v}")?;
        first = false;
    }
    sink.write_all(b"\n")
}

pub fn read_instance<C: Cost, R: BufRead>(mut source: R) -> Result<Instance<C>> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    Ok(parse_instance(&text)?)
}

pub fn parse_instance<C: Cost>(text: &str) -> Result<Instance<C>, ParseError> {
    // Data lines with their 1-based line numbers. Comments are allowed only
    // before the header.
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();
    while lines.peek().is_some_and(|(_, l)| l.starts_with('#')) {
        lines.next();
    }

    let (line, header) = lines
        .next()
        .ok_or(ParseError::MissingLine { what: "header" })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| ParseError::MalformedHeader { line })?;
    let [n, m] = dims[..] else {
        return Err(ParseError::MalformedHeader { line });
    };
    if n == 0 || m == 0 {
        return Err(ParseError::Invariant {
            line,
            detail: format!("dimensions must be at least 1, got n = {n}, m = {m}"),
        });
    }

    let (line, f_line) = lines.next().ok_or(ParseError::MissingLine {
        what: "opening cost line",
    })?;
    let opening = parse_row::<C>(line, f_line, n)?;
    if let Some(i) = opening.iter().position(|f| *f < C::zero()) {
        return Err(ParseError::Invariant {
            line,
            detail: format!("opening cost of facility {} is negative", i + 1),
        });
    }

    let mut service = Vec::with_capacity(n * m);
    for i in 0..n {
        let (line, row) = lines.next().ok_or(ParseError::MissingLine {
            what: "service cost row",
        })?;
        let row = parse_row::<C>(line, row, m)?;
        if let Some(j) = row.iter().position(|c| *c < C::one()) {
            return Err(ParseError::Invariant {
                line,
                detail: format!("service cost c[{}][{}] is below 1", i + 1, j + 1),
            });
        }
        service.extend(row);
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::TrailingData { line });
    }

    Instance::from_row_major(n, m, opening, service).map_err(|e| match e {
        Error::Parse(p) => p,
        other => ParseError::Invariant {
            line: 0,
            detail: other.to_string(),
        },
    })
}

fn parse_row<C: Cost>(line: usize, text: &str, expected: usize) -> Result<Vec<C>, ParseError> {
    let row = text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<C>().map_err(|_| ParseError::BadToken {
                line,
                token: tok.to_string(),
            })
        })
        .collect::<Result<Vec<C>, _>>()?;
    if row.len() != expected {
        return Err(ParseError::RowLength {
            line,
            expected,
            found: row.len(),
        });
    }
    Ok(row)
}
