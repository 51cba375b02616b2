//! Closed-form entries of `T_n⁻¹` and `T̃_n⁻¹`, and dense assembly.
//!
//! All indices are 1-based.

use serde::Serialize;

use crate::config::{Diagonal, MatrixConfig};
use crate::error::{Error, Result};
use crate::params::{derived_params, ensure_nonsingular};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InverseSource {
    ClosedForm,
    Oracle,
}

/// Dense `n×n` inverse, row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InverseMatrix {
    n: usize,
    entries: Vec<f64>,
    source: InverseSource,
}

impl InverseMatrix {
    pub(crate) fn from_row_major(n: usize, entries: Vec<f64>, source: InverseSource) -> Self {
        assert_eq!(entries.len(), n * n);
        InverseMatrix { n, entries, source }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> InverseSource {
        self.source
    }

    /// Entry `(i, j)`, 1-based. Panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i >= 1 && j >= 1 && i <= self.n && j <= self.n, "index out of range");
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// Row `i`, 1-based.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[(i - 1) * self.n..i * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks(self.n)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (1..=self.n).map(|i| self.get(i, i)).sum()
    }

    /// Multiplies every entry by `factor`, e.g. `1/(-ĉ)` to pass from `T̃⁻¹` to `T̂⁻¹`.
    pub fn scaled(&self, factor: f64) -> InverseMatrix {
        InverseMatrix { n: self.n, entries: self.entries.iter().map(|v| v * factor).collect(), source: self.source }
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 1..=self.n {
            for j in 1..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Largest `|a_ij - a_{n+1-i, n+1-j}|` relative to the largest entry.
    pub fn centrosymmetry_defect(&self) -> f64 {
        let n = self.n;
        let scale = self.entries.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
        let mut worst = 0.0f64;
        for i in 1..=n {
            for j in 1..=n {
                worst = worst.max((self.get(i, j) - self.get(n + 1 - i, n + 1 - j)).abs());
            }
        }
        worst / scale
    }

    /// `max |a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &InverseMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.entries.iter().zip(&other.entries).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Entry `(i, j)` of `T_n⁻¹` for `T_n = tridiag(-1, b, -1)`, `b = ±2`:
/// `(2/b)^(i+1-j) j(n+1-i)/(n+1)` for `i ≥ j`, mirrored otherwise.
pub fn toeplitz_inverse_entry(n: usize, b: i32, i: usize, j: usize) -> Result<f64> {
    let diag = Diagonal::try_from(b)?;
    if n == 0 || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::IndexOutOfRange { i, j, n });
    }
    Ok(toeplitz_entry(n, diag, i, j))
}

pub(crate) fn toeplitz_entry(n: usize, diag: Diagonal, i: usize, j: usize) -> f64 {
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    let sign = diag.ratio_pow((i + 1 - j) as i64);
    sign * (j * (n + 1 - i)) as f64 / (n + 1) as f64
}

/// Entry `(i, j)` of `T̃_n⁻¹`.
pub fn near_toeplitz_inverse_entry(cfg: &MatrixConfig, i: usize, j: usize) -> Result<f64> {
    cfg.check_index(i, j)?;
    ensure_nonsingular(cfg)?;
    Ok(entry_unchecked(cfg, i, j))
}

/// Entry `(i, j)` of `T̂_n⁻¹ = T̃_n⁻¹ / (-ĉ)`.
pub fn scaled_inverse_entry(cfg: &MatrixConfig, i: usize, j: usize) -> Result<f64> {
    Ok(near_toeplitz_inverse_entry(cfg, i, j)? / -cfg.c_hat())
}

/// Closed-form entry with `a = 2β/b`:
///
/// ```text
/// (2/b)^(i+1-j) (j(1+a) - a)((n-i)(1+a) + 1) / ((1+a)(n+1 + a(n-1))),  i ≥ j
/// ```
pub(crate) fn entry_unchecked(cfg: &MatrixConfig, i: usize, j: usize) -> f64 {
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    let n = cfg.n() as f64;
    let a = 2.0 * cfg.beta() / cfg.b();
    let one_a = 1.0 + a;
    let sign = cfg.diagonal().ratio_pow((i + 1 - j) as i64);
    let (fi, fj) = (i as f64, j as f64);
    let num = (fj * one_a - a) * ((n - fi) * one_a + 1.0);
    let den = one_a * (n + 1.0 + a * (n - 1.0));
    sign * num / den
}

/// The `b = 2` entry written through `γ`:
/// `(j - γ)((n-i)(1-b̃) - 1)/((n-1)(1-b̃) - 2)` for `i ≥ j`.
pub fn gamma_form_entry(cfg: &MatrixConfig, i: usize, j: usize) -> Result<f64> {
    if cfg.diagonal() != Diagonal::PlusTwo {
        return Err(Error::Unsupported("gamma form is stated for b = 2 only".into()));
    }
    cfg.check_index(i, j)?;
    ensure_nonsingular(cfg)?;
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    let n = cfg.n() as f64;
    let bt = cfg.b_tilde();
    let gamma = (2.0 - bt) / (1.0 - bt);
    let w = 1.0 - bt;
    Ok((j as f64 - gamma) * ((n - i as f64) * w - 1.0) / ((n - 1.0) * w - 2.0))
}

/// Entry evaluated through the rank-2 update itself, from `T_n⁻¹`, `m11`,
/// `m12` and `Δ`:
///
/// ```text
/// t_ij - β/Δ [ t_i1 (m11 t_1j - m12 t_nj) + t_in (-m12 t_1j + m11 t_nj) ]
/// ```
pub fn sherman_morrison_entry(cfg: &MatrixConfig, i: usize, j: usize) -> Result<f64> {
    cfg.check_index(i, j)?;
    ensure_nonsingular(cfg)?;
    let n = cfg.n();
    let d = cfg.diagonal();
    let p = derived_params(cfg);
    let t = |r, c| toeplitz_entry(n, d, r, c);
    let bracket = t(i, 1) * (p.m11 * t(1, j) - p.m12 * t(n, j)) + t(i, n) * (-p.m12 * t(1, j) + p.m11 * t(n, j));
    Ok(t(i, j) - p.beta / p.delta * bracket)
}

/// Materializes `T̃_n⁻¹` from the closed-form entries. Only `i ≥ j` is
/// evaluated; the upper triangle is a copy.
pub fn assemble_inverse(cfg: &MatrixConfig) -> Result<InverseMatrix> {
    ensure_nonsingular(cfg)?;
    let n = cfg.n();
    let mut entries = vec![0.0; n * n];
    for i in 1..=n {
        for j in 1..=i {
            let v = entry_unchecked(cfg, i, j);
            entries[(i - 1) * n + (j - 1)] = v;
            entries[(j - 1) * n + (i - 1)] = v;
        }
    }
    Ok(InverseMatrix::from_row_major(n, entries, InverseSource::ClosedForm))
}
