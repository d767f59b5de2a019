//! Command implementations and the codeword file format.
//!
//! A codeword file is a header line `FIBQ1 b=<rows>` followed by one line per
//! row, `d b1 b2 b4`, as single-space separated base-10 integers.
//!
//! ```text
//! FIBQ1 b=1
//! 84 15 3 10
//! ```

use std::str::FromStr;

use thiserror::Error;

use crate::alphabet::letter_table;
use crate::blocking::exact_sqrt;
use crate::codec::{decode, encode, CodedRow, Codeword, DecodeError, EncodeError, DET_BOUND};
use crate::integrity::{detection_sweep, SweepError, SweepMode, DEFAULT_SAMPLES};

pub const MAGIC: &str = "FIBQ1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("missing header")]
    MissingHeader,
    #[error("bad header {0:?}, expected \"{MAGIC} b=<rows>\"")]
    BadHeader(String),
    #[error("header declares b={declared} but file has {actual} rows")]
    CountMismatch { declared: usize, actual: usize },
    #[error("b={0} is not a perfect square")]
    NonSquare(usize),
    #[error("row {row}: expected 4 integers \"d b1 b2 b4\", got {line:?}")]
    BadRow { row: usize, line: String },
    #[error("row {row}: {field}={value} out of range {min}..={max}")]
    OutOfRange {
        row: usize,
        field: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error("malformed codeword file: {0}")]
    Format(#[from] FormatError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error("table shift must be at least 3, got {0}")]
    TableShift(u64),
    #[error("--seed only applies to sampled mode")]
    SeedWithoutSampling,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Serializes a codeword in the `FIBQ1` line format.
pub fn format_codeword(codeword: &Codeword) -> String {
    let mut out = format!("{MAGIC} b={}\n", codeword.block_count());
    for row in codeword.rows() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

/// Parses a base-10 integer in canonical form (no sign prefix `+`, no
/// leading zeros, no `-0`).
fn canonical<T: FromStr + ToString>(token: &str) -> Option<T> {
    let v = token.parse::<T>().ok()?;
    (v.to_string() == token).then_some(v)
}

fn parse_row(row: usize, line: &str) -> Result<CodedRow, FormatError> {
    let bad = || FormatError::BadRow {
        row,
        line: line.to_string(),
    };
    let fields: Vec<i64> = line
        .split(' ')
        .map(canonical::<i64>)
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    let [d, b1, b2, b4] = <[i64; 4]>::try_from(fields).map_err(|_| bad())?;

    let bound = DET_BOUND as i64;
    if !(-bound..=bound).contains(&d) {
        return Err(FormatError::OutOfRange {
            row,
            field: "d",
            value: d,
            min: -bound,
            max: bound,
        });
    }
    for (field, value) in [("b1", b1), ("b2", b2), ("b4", b4)] {
        if !(0..=26).contains(&value) {
            return Err(FormatError::OutOfRange {
                row,
                field,
                value,
                min: 0,
                max: 26,
            });
        }
    }
    Ok(CodedRow::from_ints(d as i32, b1, b2, b4).expect("ranges checked"))
}

/// Parses a `FIBQ1` codeword file. A missing final newline is tolerated.
pub fn parse_codeword(text: &str) -> Result<Codeword, FormatError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.is_empty() {
        return Err(FormatError::MissingHeader);
    }
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or_default();
    let declared = header
        .strip_prefix(MAGIC)
        .and_then(|rest| rest.strip_prefix(" b="))
        .and_then(canonical::<usize>)
        .ok_or_else(|| FormatError::BadHeader(header.to_string()))?;

    let rows = lines
        .enumerate()
        .map(|(i, line)| parse_row(i, line))
        .collect::<Result<Vec<_>, _>>()?;
    if rows.len() != declared {
        return Err(FormatError::CountMismatch {
            declared,
            actual: rows.len(),
        });
    }
    if exact_sqrt(declared).is_none() {
        return Err(FormatError::NonSquare(declared));
    }
    Ok(Codeword::from_rows(rows))
}

/// Removes the line terminator(s) that text files conventionally end with.
fn strip_line_end(input: &str) -> &str {
    input.trim_end_matches(['\n', '\r'])
}

/// `encode`: message text in, codeword file out.
pub fn encode_command(input: &str) -> Result<String, CliError> {
    Ok(format_codeword(&encode(strip_line_end(input))?))
}

/// `decode`: codeword file in, message text (plus newline) out.
pub fn decode_command(input: &str) -> Result<String, CliError> {
    let decoded = decode(&parse_codeword(input)?)?;
    Ok(format!("{}\n", decoded.text()))
}

/// `table`: the 27 `<symbol> <value>` lines for shift `n`.
pub fn table_command(n: u64) -> Result<String, CliError> {
    if n < 3 {
        return Err(CliError::TableShift(n));
    }
    Ok(letter_table(n)
        .into_iter()
        .map(|(s, v)| format!("{s} {v}\n"))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimulateMode {
    Exhaustive,
    Sampled,
}

/// `simulate`: encode `input`, sweep single-field corruptions, report.
///
/// Without an explicit mode the row count picks one.
pub fn simulate_command(
    input: &str,
    mode: Option<SimulateMode>,
    seed: Option<u64>,
    samples: Option<usize>,
) -> Result<String, CliError> {
    let message = strip_line_end(input);
    let codeword = encode(message)?;
    let sampled = |seed: Option<u64>| SweepMode::Sampled {
        seed: seed.unwrap_or(0),
        samples: samples.unwrap_or(DEFAULT_SAMPLES),
    };
    let sweep_mode = match mode {
        Some(SimulateMode::Exhaustive) if seed.is_some() => {
            return Err(CliError::SeedWithoutSampling)
        }
        Some(SimulateMode::Exhaustive) => SweepMode::Exhaustive,
        Some(SimulateMode::Sampled) => sampled(seed),
        None => match SweepMode::auto(codeword.block_count(), seed.unwrap_or(0)) {
            SweepMode::Exhaustive if seed.is_some() => return Err(CliError::SeedWithoutSampling),
            SweepMode::Exhaustive => SweepMode::Exhaustive,
            SweepMode::Sampled { .. } => sampled(seed),
        },
    };
    Ok(detection_sweep(&codeword, message, sweep_mode)?.report())
}
