//! O(n) LU factorization of a general tridiagonal matrix with partial
//! pivoting (row interchanges between neighbours). Plain Thomas elimination
//! is not enough here: nonsingular near-Toeplitz matrices with `|b̃| < 1` are
//! indefinite and can produce a zero pivot without interchanges.

use crate::config::MatrixConfig;
use crate::error::{Error, Result};

const PIVOT_RTOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>) -> Self {
        let n = diag.len();
        assert!(n >= 1);
        assert_eq!(sub.len(), n - 1);
        assert_eq!(sup.len(), n - 1);
        Tridiagonal { sub, diag, sup }
    }

    /// `T̃_n`, or `T̂_n = -ĉ T̃_n` when `scaled`.
    pub fn from_config(cfg: &MatrixConfig, scaled: bool) -> Self {
        let n = cfg.n();
        let f = if scaled { -cfg.c_hat() } else { 1.0 };
        let mut diag = vec![f * cfg.b(); n];
        diag[0] = f * cfg.b_tilde();
        diag[n - 1] = f * cfg.b_tilde();
        Tridiagonal::new(vec![-f; n - 1], diag, vec![-f; n - 1])
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * x[i];
                if i > 0 {
                    v += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    v += self.sup[i] * x[i + 1];
                }
                v
            })
            .collect()
    }

    pub fn factor(&self) -> Result<TridiagonalLu> {
        TridiagonalLu::new(self)
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let lu = self.factor()?;
        let mut x = rhs.to_vec();
        lu.solve_in_place(&mut x);
        Ok(x)
    }
}

/// `P A = L U` with `U` having two superdiagonals.
#[derive(Debug, Clone)]
pub struct TridiagonalLu {
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    l: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    fn new(a: &Tridiagonal) -> Result<Self> {
        let n = a.n();
        let mut d = a.diag.clone();
        let mut du = a.sup.clone();
        let mut l = a.sub.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];

        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= l[i].abs() {
                if d[i] != 0.0 {
                    let fact = l[i] / d[i];
                    l[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / l[i];
                d[i] = l[i];
                l[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }

        let scale = a.diag.iter().chain(&a.sub).chain(&a.sup).fold(0.0f64, |m, v| m.max(v.abs()));
        if let Some((step, pivot)) = d.iter().enumerate().find(|(_, p)| p.abs() <= PIVOT_RTOL * scale) {
            return Err(Error::PivotBreakdown { step: step + 1, pivot: pivot.abs() });
        }
        Ok(TridiagonalLu { d, du, du2, l, swapped })
    }

    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.d.len();
        assert_eq!(b.len(), n);
        for i in 0..n - 1 {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.l[i] * b[i];
            } else {
                b[i + 1] -= self.l[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}
