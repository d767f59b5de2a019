//! Square message matrices and their 2x2 tiling.

use num_integer::Roots;
use thiserror::Error;

use crate::alphabet::{Symbol, ZERO};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockingError {
    #[error("empty message")]
    EmptyMessage,
    #[error("expected {expected} blocks for m={m}, got {actual}")]
    Shape {
        m: usize,
        expected: usize,
        actual: usize,
    },
}

/// A `2m x 2m` grid stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageMatrix<T> {
    m: usize,
    cells: Vec<T>,
}

impl<T: Copy> MessageMatrix<T> {
    /// Builds a matrix from row-major cells; `cells.len()` must be `4m^2`.
    pub fn from_cells(m: usize, cells: Vec<T>) -> Option<MessageMatrix<T>> {
        (m > 0 && cells.len() == 4 * m * m).then_some(MessageMatrix { m, cells })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Side length `2m`.
    pub fn side(&self) -> usize {
        2 * self.m
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.cells[row * self.side() + col]
    }

    pub fn cells(&self) -> &[T] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.cells.chunks(self.side())
    }

    pub fn map<U: Copy>(&self, f: impl FnMut(T) -> U) -> MessageMatrix<U> {
        MessageMatrix {
            m: self.m,
            cells: self.cells.iter().copied().map(f).collect(),
        }
    }
}

/// A 2x2 tile `[[b1, b2], [b3, b4]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block<T> {
    pub b1: T,
    pub b2: T,
    pub b3: T,
    pub b4: T,
}

impl<T: Copy> Block<T> {
    pub fn new(b1: T, b2: T, b3: T, b4: T) -> Block<T> {
        Block { b1, b2, b3, b4 }
    }

    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> Block<U> {
        Block {
            b1: f(self.b1),
            b2: f(self.b2),
            b3: f(self.b3),
            b4: f(self.b4),
        }
    }
}

/// Smallest `m` with `(2m)^2 >= len`.
fn min_half_side(len: usize) -> usize {
    let mut m = 1;
    while 4 * m * m < len {
        m += 1;
    }
    m
}

/// Fills the smallest even square row-major, padding with the zero character.
pub fn build_matrix(symbols: &[Symbol]) -> Result<MessageMatrix<Symbol>, BlockingError> {
    if symbols.is_empty() {
        return Err(BlockingError::EmptyMessage);
    }
    let m = min_half_side(symbols.len());
    let mut cells = symbols.to_vec();
    cells.resize(4 * m * m, ZERO);
    Ok(MessageMatrix { m, cells })
}

/// Tiles left to right within a tile row, tile rows top to bottom.
pub fn split_blocks<T: Copy>(matrix: &MessageMatrix<T>) -> Vec<Block<T>> {
    let m = matrix.m();
    let mut blocks = Vec::with_capacity(m * m);
    for r in 0..m {
        for c in 0..m {
            let (row, col) = (2 * r, 2 * c);
            blocks.push(Block::new(
                matrix.get(row, col),
                matrix.get(row, col + 1),
                matrix.get(row + 1, col),
                matrix.get(row + 1, col + 1),
            ));
        }
    }
    blocks
}

/// Inverse of [`split_blocks`].
pub fn join_blocks<T: Copy>(
    blocks: &[Block<T>],
    m: usize,
) -> Result<MessageMatrix<T>, BlockingError> {
    let expected = m * m;
    if m == 0 || blocks.len() != expected {
        return Err(BlockingError::Shape {
            m,
            expected,
            actual: blocks.len(),
        });
    }
    let side = 2 * m;
    let mut cells = Vec::with_capacity(side * side);
    for tile_row in blocks.chunks(m) {
        cells.extend(tile_row.iter().flat_map(|b| [b.b1, b.b2]));
        cells.extend(tile_row.iter().flat_map(|b| [b.b3, b.b4]));
    }
    Ok(MessageMatrix { m, cells })
}

/// Key exponent for a message with `b` blocks: 3 when `b <= 3`, else `b`.
pub fn choose_n(b: u64) -> u64 {
    if b <= 3 {
        3
    } else {
        b
    }
}

/// `Some(m)` when `b = m^2` with `m >= 1`.
pub fn exact_sqrt(b: usize) -> Option<usize> {
    if b == 0 {
        return None;
    }
    let m = b.sqrt();
    (m * m == b).then_some(m)
}
