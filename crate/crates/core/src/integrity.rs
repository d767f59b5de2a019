//! Channel corruption and error-detection measurement.
//!
//! The channel overwrites codeword fields with other legal values: symbol
//! fields stay in `0..=26` and determinants in `-676..=676`. Detection relies
//! only on what the decoder itself can see (degenerate equation, non-integer
//! or out-of-range solution); no checksum is added.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::alphabet::{Symbol, SymbolValue};
use crate::blocking::Block;
use crate::codec::{
    decode, decode_row, encode, render_text, trim_padding, Codeword, DecodeError, EncodeError,
    RowError, DET_BOUND,
};
use crate::fibonacci::q_power;

/// Codewords with at most this many rows are swept exhaustively by default.
pub const EXHAUSTIVE_ROW_LIMIT: usize = 16;

/// Sample count used by [`SweepMode::auto`] above the exhaustive limit.
pub const DEFAULT_SAMPLES: usize = 10_000;

const D_CANDIDATES: usize = 2 * DET_BOUND as usize;
const SYMBOL_CANDIDATES: usize = 26;
/// Single-field corruptions available per row.
pub const CANDIDATES_PER_ROW: usize = D_CANDIDATES + 3 * SYMBOL_CANDIDATES;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    D,
    B1,
    B2,
    B4,
}

impl Field {
    pub const ALL: [Field; 4] = [Field::D, Field::B1, Field::B2, Field::B4];
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::D => "d",
            Field::B1 => "b1",
            Field::B2 => "b2",
            Field::B4 => "b4",
        })
    }
}

/// Overwrite one field of one row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Corruption {
    pub row: usize,
    pub field: Field,
    pub value: i32,
}

impl Corruption {
    pub fn new(row: usize, field: Field, value: i32) -> Corruption {
        Corruption { row, field, value }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorruptionError {
    #[error("row {row} out of bounds for codeword with {rows} rows")]
    RowOutOfBounds { row: usize, rows: usize },
    #[error("value {value} out of range for field {field}")]
    ValueOutOfRange { field: Field, value: i32 },
    #[error("row {row} field {field} already holds {value}")]
    Unchanged {
        row: usize,
        field: Field,
        value: i32,
    },
}

fn field_value(c: &Codeword, row: usize, field: Field) -> i32 {
    let r = &c.rows()[row];
    match field {
        Field::D => r.d,
        Field::B1 => r.b1.get() as i32,
        Field::B2 => r.b2.get() as i32,
        Field::B4 => r.b4.get() as i32,
    }
}

/// Returns a copy of `codeword` with every listed corruption applied in order.
pub fn corrupt(codeword: &Codeword, list: &[Corruption]) -> Result<Codeword, CorruptionError> {
    let mut out = codeword.clone();
    let rows = out.block_count();
    for &Corruption { row, field, value } in list {
        if row >= rows {
            return Err(CorruptionError::RowOutOfBounds { row, rows });
        }
        if field_value(&out, row, field) == value {
            return Err(CorruptionError::Unchanged { row, field, value });
        }
        let target = &mut out.rows_mut()[row];
        if field == Field::D {
            if value.abs() > DET_BOUND {
                return Err(CorruptionError::ValueOutOfRange { field, value });
            }
            target.d = value;
            continue;
        }
        let v = SymbolValue::new(value as i64)
            .map_err(|_| CorruptionError::ValueOutOfRange { field, value })?;
        match field {
            Field::B1 => target.b1 = v,
            Field::B2 => target.b2 = v,
            Field::B4 => target.b4 = v,
            Field::D => unreachable!(),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutcomeKind {
    Ok,
    OkUnverified,
    Detected,
    SilentMiscorrection,
}

impl fmt::Display for OutcomeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutcomeKind::Ok => "ok",
            OutcomeKind::OkUnverified => "ok-unverified",
            OutcomeKind::Detected => "detected",
            OutcomeKind::SilentMiscorrection => "silent_miscorrection",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    Ok {
        text: String,
    },
    /// Decoded, but no reference was given to compare against.
    OkUnverified {
        text: String,
    },
    Detected {
        error: DecodeError,
    },
    SilentMiscorrection {
        decoded: String,
        expected: String,
    },
}

impl DecodeOutcome {
    pub fn kind(&self) -> OutcomeKind {
        match self {
            DecodeOutcome::Ok { .. } => OutcomeKind::Ok,
            DecodeOutcome::OkUnverified { .. } => OutcomeKind::OkUnverified,
            DecodeOutcome::Detected { .. } => OutcomeKind::Detected,
            DecodeOutcome::SilentMiscorrection { .. } => OutcomeKind::SilentMiscorrection,
        }
    }
}

/// Decodes and classifies against an optional normalized reference message.
pub fn decode_checked(codeword: &Codeword, reference: Option<&[Symbol]>) -> DecodeOutcome {
    let decoded = match decode(codeword) {
        Ok(d) => d,
        Err(error) => return DecodeOutcome::Detected { error },
    };
    let text = decoded.text();
    match reference {
        None => DecodeOutcome::OkUnverified { text },
        Some(expected) if decoded.message() == trim_padding(expected) => DecodeOutcome::Ok { text },
        Some(expected) => DecodeOutcome::SilentMiscorrection {
            decoded: text,
            expected: render_text(expected),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    Sampled { seed: u64, samples: usize },
}

impl SweepMode {
    /// Exhaustive up to [`EXHAUSTIVE_ROW_LIMIT`] rows, sampled beyond.
    pub fn auto(rows: usize, seed: u64) -> SweepMode {
        if rows <= EXHAUSTIVE_ROW_LIMIT {
            SweepMode::Exhaustive
        } else {
            SweepMode::Sampled {
                seed,
                samples: DEFAULT_SAMPLES,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub total: u64,
    pub ok: u64,
    pub detected: u64,
    pub silent: u64,
    pub degenerate: u64,
    pub non_integer: u64,
    pub out_of_range: u64,
}

impl SweepStats {
    /// Share of corruptions the decoder flagged.
    pub fn fraction(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.detected as f64 / self.total as f64
        }
    }

    /// Flat `key=value` report.
    pub fn report(&self) -> String {
        format!(
            "total={}\ndetected={}\nsilent={}\nfraction={:.4}\n",
            self.total,
            self.detected,
            self.silent,
            self.fraction()
        )
    }

    fn record(&mut self, outcome: &Result<bool, RowError>) {
        self.total += 1;
        match outcome {
            Ok(true) => self.ok += 1,
            Ok(false) => self.silent += 1,
            Err(e) => {
                self.detected += 1;
                match e {
                    RowError::Degenerate => self.degenerate += 1,
                    RowError::NonInteger(_) => self.non_integer += 1,
                    RowError::OutOfRange(_) => self.out_of_range += 1,
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("reference does not encode: {0}")]
    Reference(#[from] EncodeError),
    #[error("reference message does not encode to the given codeword")]
    ReferenceMismatch,
}

/// Maps `0..CANDIDATES_PER_ROW` onto every legal value of every field other
/// than the one currently held.
fn nth_candidate(codeword: &Codeword, index: usize) -> Corruption {
    let row = index / CANDIDATES_PER_ROW;
    let mut k = index % CANDIDATES_PER_ROW;
    let (field, range_start, range_len) = if k < D_CANDIDATES {
        (Field::D, -DET_BOUND, D_CANDIDATES)
    } else {
        k -= D_CANDIDATES;
        let field = [Field::B1, Field::B2, Field::B4][k / SYMBOL_CANDIDATES];
        k %= SYMBOL_CANDIDATES;
        (field, 0, SYMBOL_CANDIDATES)
    };
    debug_assert!(k < range_len);
    let original = field_value(codeword, row, field);
    // skip the original value
    let mut value = range_start + k as i32;
    if value >= original {
        value += 1;
    }
    Corruption::new(row, field, value)
}

/// Enumerates every single-field corruption of `codeword`.
pub fn single_corruptions(codeword: &Codeword) -> impl Iterator<Item = Corruption> + '_ {
    (0..codeword.block_count() * CANDIDATES_PER_ROW).map(move |i| nth_candidate(codeword, i))
}

/// Measures how many single-field corruptions the decoder catches.
///
/// A single corruption touches one row, so only that row is re-decoded and
/// compared with the reference block; the remaining rows decode unchanged.
pub fn detection_sweep(
    codeword: &Codeword,
    reference: &str,
    mode: SweepMode,
) -> Result<SweepStats, SweepError> {
    if &encode(reference)? != codeword {
        return Err(SweepError::ReferenceMismatch);
    }
    let q = q_power(codeword.n()).expect("n >= 3");
    let expected: Vec<Block<SymbolValue>> = codeword
        .rows()
        .iter()
        .map(|r| decode_row(r, &q).expect("freshly encoded rows decode"))
        .collect();

    let classify = |c: Corruption| -> Result<bool, RowError> {
        let single = Codeword::from_rows(vec![codeword.rows()[c.row]]);
        let corrupted =
            corrupt(&single, &[Corruption { row: 0, ..c }]).expect("candidates are legal");
        decode_row(&corrupted.rows()[0], &q).map(|block| block == expected[c.row])
    };

    let mut stats = SweepStats::default();
    match mode {
        SweepMode::Exhaustive => {
            for c in single_corruptions(codeword) {
                stats.record(&classify(c));
            }
        }
        SweepMode::Sampled { seed, samples } => {
            let space = codeword.block_count() * CANDIDATES_PER_ROW;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let c = nth_candidate(codeword, rng.gen_range(0..space));
                stats.record(&classify(c));
            }
        }
    }
    Ok(stats)
}
