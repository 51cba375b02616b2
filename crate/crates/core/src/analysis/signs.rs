use serde::Serialize;

use crate::config::{Diagonal, MatrixConfig};
use crate::error::{Error, Result};
use crate::params::ensure_nonsingular;

/// Predicted sign of every entry of `T̃_n⁻¹`, values in `{-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignPattern {
    pub n: usize,
    pattern: Vec<i8>,
}

impl SignPattern {
    /// 1-based.
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.pattern[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.pattern.chunks(self.n)
    }
}

/// Sign pattern for `b = 2`, `b̃ ≤ 0`.
///
/// For `b̃ < 0` the interior block `{2..n-1}²` and the two anti-corners are
/// positive, everything else negative. At `b̃ = 0` rows and columns `2` and
/// `n-1` vanish except at `(1,2)`, `(2,1)`, `(n-1,n)`, `(n,n-1)`, which stay
/// negative, and the positive block shrinks to `{3..n-2}²`.
pub fn sign_pattern(cfg: &MatrixConfig) -> Result<SignPattern> {
    let bt = cfg.b_tilde();
    if cfg.diagonal() != Diagonal::PlusTwo || bt > 0.0 {
        return Err(Error::Unsupported("sign pattern is characterized for b = 2 and btilde <= 0 only".into()));
    }
    ensure_nonsingular(cfg)?;
    let n = cfg.n();
    let anti_corner = |i: usize, j: usize| (i, j) == (1, n) || (i, j) == (n, 1);
    let mut pattern = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let s = if bt < 0.0 {
                let interior = (2..n).contains(&i) && (2..n).contains(&j);
                if interior || anti_corner(i, j) {
                    1
                } else {
                    -1
                }
            } else {
                let on_zero_line = i == 2 || i == n - 1 || j == 2 || j == n - 1;
                let excluded = matches!((i, j), (1, 2) | (2, 1)) || (i, j) == (n - 1, n) || (i, j) == (n, n - 1);
                let inner = (3..n - 1).contains(&i) && (3..n - 1).contains(&j);
                if on_zero_line && !excluded {
                    0
                } else if inner || anti_corner(i, j) {
                    1
                } else {
                    -1
                }
            };
            pattern.push(s);
        }
    }
    Ok(SignPattern { n, pattern })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{build_matrix, reference_inverse};

    fn cfg(n: usize, bt: f64) -> MatrixConfig {
        MatrixConfig::new(n, 2, bt).unwrap()
    }

    fn oracle_signs(c: &MatrixConfig) -> Vec<i8> {
        let inv = reference_inverse(&build_matrix(c, false)).unwrap();
        inv.as_slice()
            .iter()
            .map(|&v| {
                if v.abs() <= 1e-12 {
                    0
                } else if v > 0.0 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    #[test]
    fn documented_examples() {
        let p = sign_pattern(&cfg(5, -1.0)).unwrap();
        assert_eq!(p.get(1, 1), -1);
        assert_eq!(p.get(3, 3), 1);
        assert_eq!(p.get(1, 5), 1);

        let p = sign_pattern(&cfg(6, 0.0)).unwrap();
        assert_eq!(p.get(2, 4), 0);
        assert_eq!(p.get(1, 2), -1);
        assert_eq!(p.get(3, 4), 1);
    }

    #[test]
    fn matches_oracle() {
        for n in 4..=12 {
            for bt in [-3.0, -1.0, -0.5, -1e-3, 0.0] {
                let c = cfg(n, bt);
                let p = sign_pattern(&c).unwrap();
                assert_eq!(p.pattern, oracle_signs(&c), "n={n} bt={bt}");
            }
        }
    }

    #[test]
    fn symmetric_and_centrosymmetric() {
        for bt in [-2.0, 0.0] {
            let p = sign_pattern(&cfg(9, bt)).unwrap();
            for i in 1..=9 {
                for j in 1..=9 {
                    assert_eq!(p.get(i, j), p.get(j, i));
                    assert_eq!(p.get(i, j), p.get(10 - i, 10 - j));
                }
            }
        }
    }

    #[test]
    fn unsupported_cases() {
        assert!(matches!(sign_pattern(&cfg(6, 0.2)), Err(Error::Unsupported(_))));
        let c = MatrixConfig::new(6, -2, -1.0).unwrap();
        assert!(matches!(sign_pattern(&c), Err(Error::Unsupported(_))));
    }
}
