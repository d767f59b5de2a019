//! The 27-symbol alphabet (`A`..`Z` plus the zero character) and the
//! shifted mod-27 letter table.

use std::fmt;

use thiserror::Error;

/// Number of symbols in the alphabet.
pub const ALPHABET_SIZE: u8 = 27;

/// The zero character, used as word separator and padding.
pub const ZERO: Symbol = Symbol(26);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("unsupported character {ch:?} at position {position}")]
    UnsupportedCharacter { ch: char, position: usize },
    #[error("empty message")]
    EmptyMessage,
    #[error("symbol value {0} outside 0..=26")]
    ValueOutOfRange(i64),
}

/// One of the 27 characters, stored as its canonical index
/// (`A` = 0, ..., `Z` = 25, `0` = 26).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u8);

impl Symbol {
    pub fn from_index(index: u8) -> Option<Symbol> {
        (index < ALPHABET_SIZE).then_some(Symbol(index))
    }

    /// Accepts `A`-`Z`, `a`-`z` and `0`.
    pub fn from_char(ch: char) -> Option<Symbol> {
        match ch {
            'A'..='Z' => Some(Symbol(ch as u8 - b'A')),
            'a'..='z' => Some(Symbol(ch as u8 - b'a')),
            '0' => Some(ZERO),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn to_char(self) -> char {
        if self == ZERO {
            '0'
        } else {
            (b'A' + self.0) as char
        }
    }

    pub fn all() -> impl Iterator<Item = Symbol> {
        (0..ALPHABET_SIZE).map(Symbol)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A letter-table entry: an integer in `0..=26`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolValue(u8);

impl SymbolValue {
    pub fn new(value: i64) -> Result<SymbolValue, AlphabetError> {
        if (0..ALPHABET_SIZE as i64).contains(&value) {
            Ok(SymbolValue(value as u8))
        } else {
            Err(AlphabetError::ValueOutOfRange(value))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<SymbolValue> for i64 {
    fn from(v: SymbolValue) -> i64 {
        v.0 as i64
    }
}

fn shift(n: u64) -> u8 {
    (n % ALPHABET_SIZE as u64) as u8
}

/// Table value of `s` under shift `n`: `(n + index(s)) mod 27`.
pub fn value_of(s: Symbol, n: u64) -> SymbolValue {
    SymbolValue((shift(n) + s.0) % ALPHABET_SIZE)
}

/// Inverse of [`value_of`] for a fixed `n`.
pub fn symbol_of(v: SymbolValue, n: u64) -> Symbol {
    Symbol((v.0 + ALPHABET_SIZE - shift(n)) % ALPHABET_SIZE)
}

/// Case-folds letters and maps spaces to the zero character.
///
/// Literal `'0'` passes through unchanged. Any other character is rejected
/// with its (character) position.
pub fn normalize_text(raw: &str) -> Result<Vec<Symbol>, AlphabetError> {
    let symbols = raw
        .chars()
        .enumerate()
        .map(|(position, ch)| match ch {
            ' ' => Ok(ZERO),
            _ => Symbol::from_char(ch).ok_or(AlphabetError::UnsupportedCharacter { ch, position }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if symbols.is_empty() {
        return Err(AlphabetError::EmptyMessage);
    }
    Ok(symbols)
}

/// Renders symbols with `'0'` kept literal.
pub fn symbols_to_string(symbols: &[Symbol]) -> String {
    symbols.iter().map(|s| s.to_char()).collect()
}

/// The full letter table for shift `n`, in canonical symbol order.
pub fn letter_table(n: u64) -> Vec<(Symbol, SymbolValue)> {
    Symbol::all().map(|s| (s, value_of(s, n))).collect()
}
