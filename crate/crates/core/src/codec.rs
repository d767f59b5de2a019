//! Block encoding with determinant side information, and recovery of the
//! omitted element through the `Q^n` identity.
//!
//! Each 2x2 block `[[b1, b2], [b3, b4]]` is transmitted as `(det, b1, b2, b4)`.
//! The decoder forms `e1 = q1*b1 + q3*b2`, `e2 = q2*b1 + q4*b2` from
//! `Q^n = [[q1, q2], [q3, q4]]` and solves
//!
//! ```text
//! (-1)^n * d = e1 * (q2*x + q4*b4) - e2 * (q1*x + q3*b4)
//! ```
//!
//! for `x = b3`. The `x` coefficient is `(-1)^(n+1) * b2`, so a row with
//! `b2 = 0` cannot be decoded and such messages are rejected at encode time.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::alphabet::{
    normalize_text, symbol_of, value_of, AlphabetError, Symbol, SymbolValue, ZERO,
};
use crate::blocking::{
    build_matrix, choose_n, exact_sqrt, join_blocks, split_blocks, Block, BlockingError,
    MessageMatrix,
};
use crate::fibonacci::{q_power, QMatrix};

/// Largest magnitude of a 2x2 determinant over `0..=26`.
pub const DET_BOUND: i32 = 26 * 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error(transparent)]
    Blocking(#[from] BlockingError),
    /// The block's `b2` cell values to 0, so its `b3` could not be recovered.
    #[error("block {block}: b2 cell holds value 0 ({symbol} under n={n}), omitted element would be unrecoverable")]
    ZeroPivot {
        block: usize,
        symbol: Symbol,
        n: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RowError {
    #[error("degenerate equation")]
    Degenerate,
    #[error("non-integer solution x = {0}")]
    NonInteger(BigRational),
    #[error("solution x = {0} out of range")]
    OutOfRange(BigInt),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("row count {rows} is not a perfect square")]
    Shape { rows: usize },
    #[error("row {row}: {source}")]
    Row { row: usize, source: RowError },
}

/// One transmitted record `(d, b1, b2, b4)`; `b3` is omitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodedRow {
    pub d: i32,
    pub b1: SymbolValue,
    pub b2: SymbolValue,
    pub b4: SymbolValue,
}

impl CodedRow {
    pub fn new(d: i32, b1: SymbolValue, b2: SymbolValue, b4: SymbolValue) -> CodedRow {
        CodedRow { d, b1, b2, b4 }
    }

    /// Convenience constructor from plain integers; checks the symbol fields.
    pub fn from_ints(d: i32, b1: i64, b2: i64, b4: i64) -> Result<CodedRow, AlphabetError> {
        Ok(CodedRow {
            d,
            b1: SymbolValue::new(b1)?,
            b2: SymbolValue::new(b2)?,
            b4: SymbolValue::new(b4)?,
        })
    }
}

impl fmt::Display for CodedRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.d, self.b1, self.b2, self.b4)
    }
}

/// The code matrix: one [`CodedRow`] per block, in block order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    rows: Vec<CodedRow>,
}

impl Codeword {
    /// Wraps rows as received. Shape is checked by [`decode`].
    pub fn from_rows(rows: Vec<CodedRow>) -> Codeword {
        Codeword { rows }
    }

    pub fn rows(&self) -> &[CodedRow] {
        &self.rows
    }

    pub fn rows_mut(&mut self) -> &mut [CodedRow] {
        &mut self.rows
    }

    pub fn into_rows(self) -> Vec<CodedRow> {
        self.rows
    }

    /// Row count `b`.
    pub fn block_count(&self) -> usize {
        self.rows.len()
    }

    /// `sqrt(b)` when the row count is a perfect square.
    pub fn m(&self) -> Option<usize> {
        exact_sqrt(self.rows.len())
    }

    /// Key exponent derived from the row count.
    pub fn n(&self) -> u64 {
        choose_n(self.rows.len() as u64)
    }
}

fn det(block: &Block<SymbolValue>) -> i32 {
    let [b1, b2, b3, b4] = [block.b1, block.b2, block.b3, block.b4].map(|v| v.get() as i32);
    b1 * b4 - b2 * b3
}

/// `(det B, b1, b2, b4)`.
pub fn encode_block(block: &Block<SymbolValue>) -> CodedRow {
    CodedRow::new(det(block), block.b1, block.b2, block.b4)
}

/// Encodes an already-normalized symbol sequence.
pub fn encode_symbols(symbols: &[Symbol]) -> Result<Codeword, EncodeError> {
    let matrix = build_matrix(symbols)?;
    let m = matrix.m();
    let n = choose_n((m * m) as u64);
    let blocks = split_blocks(&matrix);
    let mut rows = Vec::with_capacity(blocks.len());
    for (index, block) in blocks.into_iter().enumerate() {
        let valued = block.map(|s| value_of(s, n));
        if valued.b2.get() == 0 {
            return Err(EncodeError::ZeroPivot {
                block: index,
                symbol: block.b2,
                n,
            });
        }
        rows.push(encode_block(&valued));
    }
    Ok(Codeword { rows })
}

/// Normalizes `raw` and encodes it.
pub fn encode(raw: &str) -> Result<Codeword, EncodeError> {
    encode_symbols(&normalize_text(raw)?)
}

/// Values computed while decoding a single row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeIntermediates {
    pub e1: BigInt,
    pub e2: BigInt,
    /// Exact solution of the row equation; not yet checked for integrality.
    pub x: BigRational,
}

/// Solves the row equation for `x` without validating the result.
pub fn solve_row(row: &CodedRow, q: &QMatrix) -> Result<DecodeIntermediates, RowError> {
    let b1 = BigInt::from(row.b1.get());
    let b2 = BigInt::from(row.b2.get());
    let b4 = BigInt::from(row.b4.get());
    let e1 = q.q1() * &b1 + q.q3() * &b2;
    let e2 = q.q2() * &b1 + q.q4() * &b2;

    // e1*(q2 x + q4 b4) - e2*(q1 x + q3 b4) = coeff * x + constant
    let coeff = &e1 * q.q2() - &e2 * q.q1();
    let constant = (&e1 * q.q4() - &e2 * q.q3()) * &b4;
    if coeff.is_zero() {
        return Err(RowError::Degenerate);
    }
    let lhs = q.sign() * BigInt::from(row.d);
    let x = BigRational::new(lhs - constant, coeff);
    Ok(DecodeIntermediates { e1, e2, x })
}

/// Recovers the full block, rejecting non-integral or out-of-range `x`.
pub fn decode_row(row: &CodedRow, q: &QMatrix) -> Result<Block<SymbolValue>, RowError> {
    let DecodeIntermediates { x, .. } = solve_row(row, q)?;
    if !x.is_integer() {
        return Err(RowError::NonInteger(x));
    }
    let x = x.to_integer();
    let b3 = x
        .to_i64()
        .and_then(|v| SymbolValue::new(v).ok())
        .ok_or(RowError::OutOfRange(x))?;
    Ok(Block::new(row.b1, row.b2, b3, row.b4))
}

/// Output of [`decode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub n: u64,
    pub values: MessageMatrix<SymbolValue>,
    pub matrix: MessageMatrix<Symbol>,
}

impl Decoded {
    /// Matrix cells with the trailing run of zero characters removed.
    pub fn message(&self) -> &[Symbol] {
        trim_padding(self.matrix.cells())
    }

    /// Presentation form: padding stripped, interior zeros shown as spaces.
    pub fn text(&self) -> String {
        render_text(self.matrix.cells())
    }
}

/// Drops the trailing run of zero characters.
pub fn trim_padding(symbols: &[Symbol]) -> &[Symbol] {
    let end = symbols
        .iter()
        .rposition(|&s| s != ZERO)
        .map_or(0, |i| i + 1);
    &symbols[..end]
}

/// Strips trailing padding and renders each remaining zero as a space.
pub fn render_text(symbols: &[Symbol]) -> String {
    trim_padding(symbols)
        .iter()
        .map(|&s| if s == ZERO { ' ' } else { s.to_char() })
        .collect()
}

/// Decodes a codeword, deriving `n` from its row count.
pub fn decode(codeword: &Codeword) -> Result<Decoded, DecodeError> {
    let rows = codeword.rows();
    let m = codeword
        .m()
        .ok_or(DecodeError::Shape { rows: rows.len() })?;
    let n = codeword.n();
    let q = q_power(n).expect("choose_n never returns 0");
    let blocks = rows
        .iter()
        .enumerate()
        .map(|(i, row)| decode_row(row, &q).map_err(|source| DecodeError::Row { row: i, source }))
        .collect::<Result<Vec<_>, _>>()?;
    let values = join_blocks(&blocks, m).expect("row count checked above");
    let matrix = values.map(|v| symbol_of(v, n));
    Ok(Decoded { n, values, matrix })
}
