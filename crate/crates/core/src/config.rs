//! Matrix definition.
//!
//! The scaled matrix `T̂_n` has `b̄` on both corners, `b̂` on the rest of the
//! diagonal and `ĉ` on both off-diagonals. Dividing by `-ĉ` gives the
//! normalized matrix `T̃_n = tridiag(-1, b, -1)` with corners `b̃`, which is
//! what every formula in this crate is stated for.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest admissible matrix order.
pub const MIN_ORDER: usize = 4;

/// Toeplitz diagonal `b` of the normalized matrix, restricted to `±2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Diagonal {
    PlusTwo,
    MinusTwo,
}

impl Diagonal {
    pub fn value(self) -> f64 {
        match self {
            Diagonal::PlusTwo => 2.0,
            Diagonal::MinusTwo => -2.0,
        }
    }

    pub fn as_int(self) -> i32 {
        match self {
            Diagonal::PlusTwo => 2,
            Diagonal::MinusTwo => -2,
        }
    }

    /// `sgn(b)`, which is also `2 / b`.
    pub fn sign(self) -> f64 {
        match self {
            Diagonal::PlusTwo => 1.0,
            Diagonal::MinusTwo => -1.0,
        }
    }

    /// `(2/b)^k` evaluated as a parity sign.
    pub fn ratio_pow(self, k: i64) -> f64 {
        match self {
            Diagonal::PlusTwo => 1.0,
            Diagonal::MinusTwo => {
                if k.rem_euclid(2) == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }

    pub fn flipped(self) -> Diagonal {
        match self {
            Diagonal::PlusTwo => Diagonal::MinusTwo,
            Diagonal::MinusTwo => Diagonal::PlusTwo,
        }
    }
}

impl TryFrom<i32> for Diagonal {
    type Error = Error;

    fn try_from(b: i32) -> Result<Self> {
        match b {
            2 => Ok(Diagonal::PlusTwo),
            -2 => Ok(Diagonal::MinusTwo),
            other => Err(Error::InvalidConfig(format!("b must be 2 or -2, got {other}"))),
        }
    }
}

/// The quadruple `(n, b, b̃, ĉ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixConfig {
    n: usize,
    b: Diagonal,
    b_tilde: f64,
    c_hat: f64,
}

impl MatrixConfig {
    /// Normalized configuration with `ĉ = -1`, so that `T̂_n = T̃_n`.
    pub fn new(n: usize, b: i32, b_tilde: f64) -> Result<Self> {
        Self::with_scale(n, b, b_tilde, -1.0)
    }

    pub fn with_scale(n: usize, b: i32, b_tilde: f64, c_hat: f64) -> Result<Self> {
        if n < MIN_ORDER {
            return Err(Error::InvalidConfig(format!("order n must be at least {MIN_ORDER}, got {n}")));
        }
        let b = Diagonal::try_from(b)?;
        if !b_tilde.is_finite() {
            return Err(Error::InvalidConfig(format!("btilde must be finite, got {b_tilde}")));
        }
        if c_hat == 0.0 || !c_hat.is_finite() {
            return Err(Error::InvalidConfig(format!("c_hat must be finite and nonzero, got {c_hat}")));
        }
        Ok(MatrixConfig { n, b, b_tilde, c_hat })
    }

    /// Builds the configuration from the entries of the scaled matrix:
    /// corner `b̄`, interior diagonal `b̂`, off-diagonal `ĉ`.
    pub fn from_scaled(n: usize, b_bar: f64, b_hat: f64, c_hat: f64) -> Result<Self> {
        if c_hat == 0.0 {
            return Err(Error::InvalidConfig("c_hat must be nonzero".into()));
        }
        let b = -b_hat / c_hat;
        if b != 2.0 && b != -2.0 {
            return Err(Error::InvalidConfig(format!("-b_hat / c_hat must be exactly ±2, got {b}")));
        }
        Self::with_scale(n, b as i32, -b_bar / c_hat, c_hat)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonal(&self) -> Diagonal {
        self.b
    }

    pub fn b(&self) -> f64 {
        self.b.value()
    }

    pub fn b_tilde(&self) -> f64 {
        self.b_tilde
    }

    pub fn c_hat(&self) -> f64 {
        self.c_hat
    }

    /// Interior diagonal of `T̂_n`, `b̂ = -ĉ b`.
    pub fn b_hat(&self) -> f64 {
        -self.c_hat * self.b()
    }

    /// Corner diagonal of `T̂_n`, `b̄ = -ĉ b̃`.
    pub fn b_bar(&self) -> f64 {
        -self.c_hat * self.b_tilde
    }

    /// `β = b̃ - b`.
    pub fn beta(&self) -> f64 {
        self.b_tilde - self.b()
    }

    /// The configuration with `b → -b` and `b̃ → -b̃`. Its inverse entries
    /// differ from ours only by the sign `(-1)^(i+1-j)`.
    pub fn mirrored(&self) -> MatrixConfig {
        MatrixConfig { n: self.n, b: self.b.flipped(), b_tilde: -self.b_tilde, c_hat: self.c_hat }
    }

    /// Corner value seen from the `b = +2` side: `b̃` for `b = 2`, `-b̃` for `b = -2`.
    pub fn b_tilde_plus(&self) -> f64 {
        self.b.sign() * self.b_tilde
    }

    pub(crate) fn check_index(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::IndexOutOfRange { i, j, n: self.n });
        }
        Ok(())
    }
}
