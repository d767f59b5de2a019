//! Fibonacci Q-matrix block codec.
//!
//! A text message is laid out in a square matrix, tiled into 2x2 blocks, and
//! each block is sent as its determinant plus three of its four entries. The
//! receiver recovers the missing entry from `Q^n`, where `n` depends only on
//! the number of blocks. Inconsistent rows (non-integral or out-of-range
//! solutions) reveal channel corruption.
//!
//! ```
//! let codeword = fibq::encode("MATH").unwrap();
//! assert_eq!(codeword.rows()[0].to_string(), "84 15 3 10");
//! assert_eq!(fibq::decode(&codeword).unwrap().text(), "MATH");
//! ```

pub mod alphabet;
pub mod blocking;
pub mod cli;
pub mod codec;
pub mod fibonacci;
pub mod integrity;

pub use alphabet::{normalize_text, symbol_of, value_of, Symbol, SymbolValue};
pub use blocking::{build_matrix, choose_n, join_blocks, split_blocks, Block, MessageMatrix};
pub use codec::{decode, decode_row, encode, encode_block, CodedRow, Codeword, Decoded};
pub use fibonacci::{fib, q_power, QMatrix};
