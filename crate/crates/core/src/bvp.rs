//! Fixed-point solver for the discretized two-point problem `u'' = f(u)`.
//!
//! Central differences on `n` interior nodes give `T̂_n u = h² f(u)`; the
//! iteration is `u^{k+1} = h² T̂_n⁻¹ f(u^k)`. Successive differences contract
//! by at most `h² ‖T̂_n⁻¹‖_∞ L_c`, so the upper bound on the norm predicts
//! the convergence rate.

use serde::Serialize;

use crate::analysis::upper_bound;
use crate::config::MatrixConfig;
use crate::error::{Error, Result};
use crate::params::ensure_nonsingular;
use crate::tridiag::{Tridiagonal, TridiagonalLu};

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_MAX_ITER: usize = 10_000;
/// Consecutive growing steps that count as divergence.
pub const DIVERGENCE_STREAK: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Nonlinearity {
    /// `f(u) = k u (1 - u)`
    Fisher,
    /// `f(u) = k eᵘ`
    Bratu,
}

impl Nonlinearity {
    pub fn eval(self, k: f64, u: f64) -> f64 {
        match self {
            Nonlinearity::Fisher => k * u * (1.0 - u),
            Nonlinearity::Bratu => k * u.exp(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Nonlinearity::Fisher => "fisher",
            Nonlinearity::Bratu => "bratu",
        }
    }
}

impl std::str::FromStr for Nonlinearity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fisher" => Ok(Nonlinearity::Fisher),
            "bratu" => Ok(Nonlinearity::Bratu),
            other => Err(Error::InvalidArgument(format!("unknown nonlinearity '{other}'"))),
        }
    }
}

/// Lipschitz constant of `f` over `[lo, hi]`. Fisher defaults to `[0, 1]`;
/// Bratu has no global constant and needs a range.
pub fn lipschitz_constant(nl: Nonlinearity, k: f64, range: Option<(f64, f64)>) -> Result<f64> {
    match (nl, range) {
        (_, Some((lo, hi))) if !(lo.is_finite() && hi.is_finite()) || lo > hi => {
            Err(Error::InvalidArgument(format!("iterate range [{lo}, {hi}] is not a finite interval")))
        }
        (Nonlinearity::Fisher, range) => {
            let (lo, hi) = range.unwrap_or((0.0, 1.0));
            Ok(k.abs() * (1.0 - 2.0 * lo).abs().max((1.0 - 2.0 * hi).abs()))
        }
        (Nonlinearity::Bratu, Some((_, hi))) => Ok(k.abs() * hi.exp()),
        (Nonlinearity::Bratu, None) => Err(Error::UnboundedRange("bratu")),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BvpProblem {
    pub cfg: MatrixConfig,
    /// Domain length; the grid spacing is `l_dom / n`.
    pub l_dom: f64,
    pub k_coef: f64,
    pub nonlinearity: Nonlinearity,
    pub bc_left: f64,
    pub bc_right: f64,
    /// Range assumed for the iterates when computing `L_c`.
    pub iterate_range: Option<(f64, f64)>,
}

impl BvpProblem {
    pub fn new(cfg: MatrixConfig, l_dom: f64, k_coef: f64, nonlinearity: Nonlinearity) -> Result<Self> {
        if !(l_dom > 0.0 && l_dom.is_finite()) {
            return Err(Error::InvalidArgument(format!("domain length must be positive, got {l_dom}")));
        }
        if !k_coef.is_finite() {
            return Err(Error::InvalidArgument(format!("k must be finite, got {k_coef}")));
        }
        Ok(BvpProblem { cfg, l_dom, k_coef, nonlinearity, bc_left: 0.0, bc_right: 0.0, iterate_range: None })
    }

    pub fn with_boundary(mut self, left: f64, right: f64) -> Self {
        self.bc_left = left;
        self.bc_right = right;
        self
    }

    pub fn with_iterate_range(mut self, lo: f64, hi: f64) -> Self {
        self.iterate_range = Some((lo, hi));
        self
    }

    pub fn n(&self) -> usize {
        self.cfg.n()
    }

    pub fn h(&self) -> f64 {
        self.l_dom / self.cfg.n() as f64
    }

    pub fn lipschitz(&self) -> Result<f64> {
        lipschitz_constant(self.nonlinearity, self.k_coef, self.iterate_range)
    }
}

/// `h² U L_c / |ĉ|`, with `U` the upper bound on `‖T̃_n⁻¹‖_∞`.
pub fn expected_rate(prob: &BvpProblem) -> Result<f64> {
    let u = upper_bound(&prob.cfg)?.value;
    let h = prob.h();
    Ok(h * h * u * prob.lipschitz()? / prob.cfg.c_hat().abs())
}

/// `u⁰_i = (1 + s_i sin(πi/(n+1)))/4` with `s_i = (2/b)^i`: the principal
/// eigenvector of the Toeplitz part shifted into `[0, 1/2]`.
pub fn default_initial_guess(cfg: &MatrixConfig) -> Vec<f64> {
    let n = cfg.n();
    (1..=n)
        .map(|i| {
            let s = cfg.diagonal().ratio_pow(i as i64);
            let phase = std::f64::consts::PI * i as f64 / (n + 1) as f64;
            0.25 * (1.0 + s * phase.sin())
        })
        .collect()
}

/// One application of `u ↦ h² T̂⁻¹ f(u)` with boundary corrections, using a
/// factorization computed once.
#[derive(Debug, Clone)]
pub struct FixedPointMap {
    lu: TridiagonalLu,
    h2: f64,
    k: f64,
    nl: Nonlinearity,
    left: f64,
    right: f64,
}

impl FixedPointMap {
    pub fn new(prob: &BvpProblem) -> Result<Self> {
        ensure_nonsingular(&prob.cfg)?;
        let lu = Tridiagonal::from_config(&prob.cfg, true).factor()?;
        let h = prob.h();
        // the dropped off-diagonal entries ĉ·u_0 and ĉ·u_{n+1} move to the rhs
        let c = prob.cfg.c_hat();
        Ok(FixedPointMap {
            lu,
            h2: h * h,
            k: prob.k_coef,
            nl: prob.nonlinearity,
            left: -c * prob.bc_left,
            right: -c * prob.bc_right,
        })
    }

    /// The right-hand side `h² f(u)` plus boundary terms.
    pub fn rhs(&self, u: &[f64]) -> Vec<f64> {
        let mut rhs: Vec<f64> = u.iter().map(|&v| self.h2 * self.nl.eval(self.k, v)).collect();
        let n = rhs.len();
        rhs[0] += self.left;
        rhs[n - 1] += self.right;
        rhs
    }

    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        let mut next = self.rhs(u);
        self.lu.solve_in_place(&mut next);
        next
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BvpResult {
    pub solution: Vec<f64>,
    pub iterations: usize,
    /// Largest `‖u^{k+1}-u^k‖_∞ / ‖u^k-u^{k-1}‖_∞` after the first step.
    pub observed_rate: f64,
    pub expected_rate: f64,
    pub converged: bool,
    /// `‖u^{k+1}-u^k‖_∞` per iteration.
    pub diffs: Vec<f64>,
}

pub fn solve_fixed_point(prob: &BvpProblem, u0: &[f64], tol: f64, max_iter: usize) -> Result<BvpResult> {
    if u0.len() != prob.n() {
        return Err(Error::InvalidArgument(format!("initial iterate has length {}, expected {}", u0.len(), prob.n())));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let map = FixedPointMap::new(prob)?;
    let expected = expected_rate(prob)?;

    let mut u = u0.to_vec();
    let mut diffs: Vec<f64> = Vec::new();
    let mut observed = 0.0f64;
    let mut growing = 0;
    let mut converged = false;

    while diffs.len() < max_iter {
        let next = map.apply(&u);
        let d = next.iter().zip(&u).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        if !d.is_finite() {
            diffs.push(d);
            return Err(Error::Divergence { iterations: diffs.len(), diffs });
        }
        if let Some(&prev) = diffs.last() {
            if prev > 0.0 {
                observed = observed.max(d / prev);
            }
            growing = if d > prev { growing + 1 } else { 0 };
        }
        diffs.push(d);
        u = next;
        if d <= tol {
            converged = true;
            break;
        }
        if growing >= DIVERGENCE_STREAK {
            return Err(Error::Divergence { iterations: diffs.len(), diffs });
        }
    }

    Ok(BvpResult {
        solution: u,
        iterations: diffs.len(),
        observed_rate: observed,
        expected_rate: expected,
        converged,
        diffs,
    })
}
