//! Brute-force reference: the matrix written out densely and inverted by
//! Gaussian elimination with partial pivoting.
//!
//! Nothing here touches the closed-form code paths, so it can serve as
//! ground truth for them.

use crate::config::MatrixConfig;
use crate::error::{Error, Result};
use crate::inverse::{InverseMatrix, InverseSource};

/// Pivots below this multiple of `max |a_ij|` are treated as breakdown.
pub const PIVOT_RTOL: f64 = 1e-13;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            data.extend_from_slice(r);
        }
        DenseMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based access.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// `max |(self · other - I)_ij|`.
    pub fn identity_residual(&self, other: &InverseMatrix) -> f64 {
        let n = self.n;
        assert_eq!(n, other.n());
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += self.data[i * n + k] * other.as_slice()[k * n + j];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - target).abs());
            }
        }
        worst
    }
}

/// `T̃_n` (or `T̂_n = -ĉ T̃_n` when `scaled`) as a dense matrix.
pub fn build_matrix(cfg: &MatrixConfig, scaled: bool) -> DenseMatrix {
    let n = cfg.n();
    let factor = if scaled { -cfg.c_hat() } else { 1.0 };
    let mut m = DenseMatrix::zeros(n);
    for i in 1..=n {
        let d = if i == 1 || i == n { cfg.b_tilde() } else { cfg.b() };
        m.set(i, i, factor * d);
        if i > 1 {
            m.set(i, i - 1, -factor);
            m.set(i - 1, i, -factor);
        }
    }
    m
}

/// Inverse by LU factorization with row pivoting, solved column by column.
pub fn reference_inverse(m: &DenseMatrix) -> Result<InverseMatrix> {
    let n = m.n;
    let threshold = PIVOT_RTOL * m.max_abs();
    let mut lu = m.data.clone();
    let mut perm: Vec<usize> = (0..n).collect();

    for k in 0..n {
        let (p, pivot) =
            (k..n)
                .map(|r| (r, lu[r * n + k].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot <= threshold {
            return Err(Error::PivotBreakdown { step: k + 1, pivot });
        }
        if p != k {
            for c in 0..n {
                lu.swap(k * n + c, p * n + c);
            }
            perm.swap(k, p);
        }
        let d = lu[k * n + k];
        for r in k + 1..n {
            let l = lu[r * n + k] / d;
            lu[r * n + k] = l;
            if l != 0.0 {
                for c in k + 1..n {
                    lu[r * n + c] -= l * lu[k * n + c];
                }
            }
        }
    }

    let mut inv = vec![0.0; n * n];
    let mut x = vec![0.0; n];
    for col in 0..n {
        // forward substitution on P e_col
        for r in 0..n {
            let mut v = if perm[r] == col { 1.0 } else { 0.0 };
            for c in 0..r {
                v -= lu[r * n + c] * x[c];
            }
            x[r] = v;
        }
        for r in (0..n).rev() {
            let mut v = x[r];
            for c in r + 1..n {
                v -= lu[r * n + c] * x[c];
            }
            x[r] = v / lu[r * n + r];
        }
        for r in 0..n {
            inv[r * n + col] = x[r];
        }
    }
    Ok(InverseMatrix::from_row_major(n, inv, InverseSource::Oracle))
}

/// `max_i Σ_j |a⁻¹_ij|`.
pub fn reference_norm(m: &DenseMatrix) -> Result<f64> {
    let inv = reference_inverse(m)?;
    Ok(inv.rows().map(|row| row.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max))
}

pub fn reference_trace(m: &DenseMatrix) -> Result<f64> {
    Ok(reference_inverse(m)?.trace())
}

pub fn reference_rowsums(m: &DenseMatrix) -> Result<Vec<f64>> {
    Ok(reference_inverse(m)?.rows().map(|row| row.iter().sum()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian3() -> DenseMatrix {
        DenseMatrix::from_rows(&[vec![2.0, -1.0, 0.0], vec![-1.0, 2.0, -1.0], vec![0.0, -1.0, 2.0]])
    }

    #[test]
    fn hand_computed_3x3() {
        let inv = reference_inverse(&laplacian3()).unwrap();
        let expected = [[3.0, 2.0, 1.0], [2.0, 4.0, 2.0], [1.0, 2.0, 3.0]];
        for (i, row) in expected.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert!((inv.get(i + 1, j + 1) - want / 4.0).abs() < 1e-15);
            }
        }
        assert_eq!(inv.source(), InverseSource::Oracle);
        assert!((reference_norm(&laplacian3()).unwrap() - 2.0).abs() < 1e-15);
        assert!((reference_trace(&laplacian3()).unwrap() - 2.5).abs() < 1e-15);
    }

    #[test]
    fn identity_is_its_own_inverse() {
        let id = DenseMatrix::identity(4);
        let inv = reference_inverse(&id).unwrap();
        assert_eq!(inv.as_slice(), id.data.as_slice());
        assert_eq!(reference_norm(&id).unwrap(), 1.0);
        assert_eq!(reference_trace(&id).unwrap(), 4.0);
        assert_eq!(reference_rowsums(&id).unwrap(), vec![1.0; 4]);
    }

    #[test]
    fn build_examples() {
        let c = MatrixConfig::new(4, 2, 2.0).unwrap();
        let m = build_matrix(&c, false);
        for i in 1..=4 {
            assert_eq!(m.get(i, i), 2.0);
            if i < 4 {
                assert_eq!(m.get(i, i + 1), -1.0);
                assert_eq!(m.get(i + 1, i), -1.0);
            }
        }
        assert_eq!(m.get(1, 3), 0.0);

        let c = MatrixConfig::with_scale(4, 2, 7.0, -1.0).unwrap();
        assert_eq!(build_matrix(&c, true), build_matrix(&c, false));

        let c = MatrixConfig::new(4, -2, 0.5).unwrap();
        let m = build_matrix(&c, false);
        let diag: Vec<f64> = (1..=4).map(|i| m.get(i, i)).collect();
        assert_eq!(diag, vec![0.5, -2.0, -2.0, 0.5]);

        let c = MatrixConfig::with_scale(4, -2, 0.5, 2.0).unwrap();
        let m = build_matrix(&c, true);
        assert_eq!(m.get(1, 1), -1.0);
        assert_eq!(m.get(2, 2), 4.0);
        assert_eq!(m.get(1, 2), 2.0);
    }

    #[test]
    fn singular_configuration_breaks_down() {
        let c = MatrixConfig::new(5, 2, 1.0).unwrap();
        assert!(matches!(reference_inverse(&build_matrix(&c, false)), Err(Error::PivotBreakdown { .. })));
    }

    #[test]
    fn residual_is_small() {
        for &(n, b, bt) in &[(10, 2, 5.93), (30, -2, 0.1), (17, 2, -7.0)] {
            let m = build_matrix(&MatrixConfig::new(n, b, bt).unwrap(), false);
            let inv = reference_inverse(&m).unwrap();
            assert!(m.identity_residual(&inv) <= 1e-10 * n as f64);
        }
    }
}
