use serde::Serialize;

use crate::config::{Diagonal, MatrixConfig};
use crate::error::{Error, Result};
use crate::params::ensure_nonsingular;

/// `Tr(T̃_n⁻¹)` with `a = 2β/b`:
///
/// ```text
/// n(n+2)/(3b) - 2βn/(3(1+a)) + βn/(3(1+a)(n+1 + a(n-1)))
/// ```
pub fn trace_inverse(cfg: &MatrixConfig) -> Result<f64> {
    ensure_nonsingular(cfg)?;
    let n = cfg.n() as f64;
    let b = cfg.b();
    let beta = cfg.beta();
    let a = 2.0 * beta / b;
    Ok(n * (n + 2.0) / (3.0 * b) - 2.0 * beta * n / (3.0 * (1.0 + a))
        + beta * n / (3.0 * (1.0 + a) * (n + 1.0 + a * (n - 1.0))))
}

/// Sum of row `i` (1-based) of `T̃_n⁻¹`.
pub fn rowsum(cfg: &MatrixConfig, i: usize) -> Result<f64> {
    cfg.check_index(i, 1)?;
    ensure_nonsingular(cfg)?;
    Ok(rowsum_unchecked(cfg, i))
}

fn rowsum_unchecked(cfg: &MatrixConfig, i: usize) -> f64 {
    let n = cfg.n() as f64;
    let fi = i as f64;
    let bt = cfg.b_tilde();
    match cfg.diagonal() {
        Diagonal::PlusTwo => 0.5 * fi * (n + 1.0 - fi) - 0.5 * n * (bt - 2.0) / (bt - 1.0),
        Diagonal::MinusTwo => {
            let beta = bt + 2.0;
            let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
            let base = (sign - 1.0) / 4.0;
            if cfg.n().is_multiple_of(2) {
                base + sign * (beta * n - fi * (beta + 1.0)) / (2.0 * (n + 1.0 - beta * (n - 1.0)))
            } else {
                base + sign * beta / (2.0 * (1.0 - beta))
            }
        }
    }
}

/// Bounds on every row sum, valid for `b = 2`:
/// `n/(2(b̃-1)) ≤ rowsum_i ≤ (n+1)²/8 - n(b̃-2)/(2(b̃-1))`.
pub fn rowsum_bounds(cfg: &MatrixConfig) -> Result<(f64, f64)> {
    if cfg.diagonal() != Diagonal::PlusTwo {
        return Err(Error::Unsupported("row-sum bounds are available for b = 2 only".into()));
    }
    ensure_nonsingular(cfg)?;
    let n = cfg.n() as f64;
    let bt = cfg.b_tilde();
    let lower = n / (2.0 * (bt - 1.0));
    let upper = (n + 1.0).powi(2) / 8.0 - n * (bt - 2.0) / (2.0 * (bt - 1.0));
    Ok((lower, upper))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowSumReport {
    pub n: usize,
    pub values: Vec<f64>,
    /// Present for `b = 2` only.
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

pub fn rowsum_report(cfg: &MatrixConfig) -> Result<RowSumReport> {
    ensure_nonsingular(cfg)?;
    let values = (1..=cfg.n()).map(|i| rowsum_unchecked(cfg, i)).collect();
    let (lower, upper) = match rowsum_bounds(cfg) {
        Ok((l, u)) => (Some(l), Some(u)),
        Err(Error::Unsupported(_)) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(RowSumReport { n: cfg.n(), values, lower, upper })
}
