//! Scalar parameters of the rank-2 update and the singularity test.
//!
//! Writing `T̃_n = T_n + β U Uᵀ` with `U = [e_1, e_n]`, the inverse needs only
//! the 2×2 capacitance matrix `M = I + β Uᵀ T_n⁻¹ U`. For `|b| = 2` its entries
//! are closed-form in `n` and `β`.

use serde::Serialize;

use crate::config::MatrixConfig;
use crate::error::{Error, Result};

/// Default distance from a singular corner value below which a
/// configuration is treated as singular.
pub const SINGULAR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedParams {
    pub beta: f64,
    /// `γ = (2 - b̃)/(1 - b̃)`, only for `b = 2`, `b̃ ≠ 1`.
    pub gamma: Option<f64>,
    /// `γ₊ = (2 + b̃)/(1 + b̃)`, only for `b = -2`, `b̃ ≠ -1`.
    pub gamma_plus: Option<f64>,
    pub m11: f64,
    pub m12: f64,
    /// `m11² - m12²`.
    pub delta: f64,
    /// The same determinant from its factored quadratic in `b̃`.
    pub delta_factored: f64,
}

impl DerivedParams {
    /// Relative disagreement between the two determinant evaluations.
    pub fn delta_mismatch(&self) -> f64 {
        let scale = self.delta.abs().max(self.delta_factored.abs()).max(f64::MIN_POSITIVE);
        (self.delta - self.delta_factored).abs() / scale
    }
}

pub fn derived_params(cfg: &MatrixConfig) -> DerivedParams {
    let n = cfg.n() as f64;
    let b = cfg.b();
    let bt = cfg.b_tilde();
    let s = cfg.diagonal().sign();
    let beta = cfg.beta();

    let m11 = 1.0 + (2.0 * beta / b) * n / (n + 1.0);
    let m12 = beta * cfg.diagonal().ratio_pow(cfg.n() as i64) / (n + 1.0);
    let delta = m11 * m11 - m12 * m12;
    let (r1, r2) = singular_corners(cfg);
    let delta_factored = (n - 1.0) / (n + 1.0) * (bt - r1) * (bt - r2);

    let gamma = (s > 0.0 && bt != 1.0).then(|| (2.0 - bt) / (1.0 - bt));
    let gamma_plus = (s < 0.0 && bt != -1.0).then(|| (2.0 + bt) / (1.0 + bt));

    DerivedParams { beta, gamma, gamma_plus, m11, m12, delta, delta_factored }
}

/// The two corner values `sgn(b)` and `sgn(b)(n-3)/(n-1)` at which `T̃_n` is singular.
pub fn singular_corners(cfg: &MatrixConfig) -> (f64, f64) {
    let n = cfg.n() as f64;
    let s = cfg.diagonal().sign();
    (s, s * (n - 3.0) / (n - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularityCheck {
    pub singular: bool,
    /// `|b̃ - r| ≤ tol` for one of the singular corners `r`.
    pub by_distance: bool,
    /// `|Δ|` below the threshold induced by `tol`.
    pub by_delta: bool,
    pub distance: f64,
    pub delta: f64,
}

/// Singularity test on the corner value. The `Δ` threshold is `tol` times
/// `|dΔ/db̃|` at the roots, i.e. `tol · 2/(n+1)`.
pub fn is_singular(cfg: &MatrixConfig, tol: f64) -> SingularityCheck {
    let (r1, r2) = singular_corners(cfg);
    let bt = cfg.b_tilde();
    let distance = (bt - r1).abs().min((bt - r2).abs());
    let by_distance = distance <= tol;

    let n = cfg.n() as f64;
    let p = derived_params(cfg);
    let slope = (n - 1.0) / (n + 1.0) * (r1 - r2).abs();
    let by_delta = p.delta.abs() <= tol * slope;

    SingularityCheck { singular: by_distance, by_distance, by_delta, distance, delta: p.delta }
}

pub(crate) fn ensure_nonsingular(cfg: &MatrixConfig) -> Result<()> {
    if is_singular(cfg, SINGULAR_TOL).singular {
        return Err(Error::Singular { n: cfg.n(), b: cfg.diagonal().as_int(), b_tilde: cfg.b_tilde() });
    }
    Ok(())
}
