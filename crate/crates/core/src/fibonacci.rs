//! Exact Fibonacci numbers and powers of the Fibonacci Q-matrix.
//!
//! The decoder needs `Q^n` with `n` equal to the block count of the message,
//! so entries outgrow 64 bits quickly. Everything here is arbitrary precision.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibError {
    /// `Q^0` would need `F(-1)`.
    #[error("Q-matrix exponent must be at least 1, got {0}")]
    ZeroExponent(u64),
}

/// Returns the pair `(F(n), F(n+1))` by fast doubling.
fn fib_pair(n: u64) -> (BigUint, BigUint) {
    let mut a = BigUint::zero(); // F(k)
    let mut b = BigUint::one(); // F(k+1)
    if n == 0 {
        return (a, b);
    }
    for bit in (0..u64::BITS - n.leading_zeros()).rev() {
        // F(2k) = F(k) * (2F(k+1) - F(k)); F(2k+1) = F(k)^2 + F(k+1)^2
        let twice = (&b << 1u32) - &a;
        let even = &a * twice;
        let odd = &a * &a + &b * &b;
        if (n >> bit) & 1 == 0 {
            a = even;
            b = odd;
        } else {
            b = &even + &odd;
            a = odd;
        }
    }
    (a, b)
}

/// The `n`-th Fibonacci number with `F(0) = 0`, `F(1) = 1`.
pub fn fib(n: u64) -> BigUint {
    fib_pair(n).0
}

/// `Q^n = [[F(n+1), F(n)], [F(n), F(n-1)]]` for `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    n: u64,
    q1: BigInt,
    q2: BigInt,
    q3: BigInt,
    q4: BigInt,
}

impl QMatrix {
    /// The exponent this matrix was raised to.
    pub fn exponent(&self) -> u64 {
        self.n
    }

    pub fn q1(&self) -> &BigInt {
        &self.q1
    }

    pub fn q2(&self) -> &BigInt {
        &self.q2
    }

    pub fn q3(&self) -> &BigInt {
        &self.q3
    }

    pub fn q4(&self) -> &BigInt {
        &self.q4
    }

    /// Entries as `[[q1, q2], [q3, q4]]`.
    pub fn entries(&self) -> [[&BigInt; 2]; 2] {
        [[&self.q1, &self.q2], [&self.q3, &self.q4]]
    }

    /// `q1*q4 - q2*q3`, which is always `(-1)^n`.
    pub fn det(&self) -> BigInt {
        &self.q1 * &self.q4 - &self.q2 * &self.q3
    }

    /// `(-1)^n` for this exponent.
    pub fn sign(&self) -> BigInt {
        if self.n.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    }

    /// Left-multiplies by `Q`, giving `Q^(n+1)`.
    pub fn next(&self) -> QMatrix {
        QMatrix {
            n: self.n + 1,
            q1: &self.q1 + &self.q3,
            q2: &self.q2 + &self.q4,
            q3: self.q1.clone(),
            q4: self.q2.clone(),
        }
    }
}

/// Computes `Q^n` exactly. Rejects `n = 0`.
pub fn q_power(n: u64) -> Result<QMatrix, FibError> {
    if n == 0 {
        return Err(FibError::ZeroExponent(n));
    }
    let (f_n, f_next) = fib_pair(n);
    let f_prev = &f_next - &f_n;
    let f_n = BigInt::from(f_n);
    Ok(QMatrix {
        n,
        q1: BigInt::from(f_next),
        q2: f_n.clone(),
        q3: f_n,
        q4: BigInt::from(f_prev),
    })
}
