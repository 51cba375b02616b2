//! Exact scalar summaries of `T̃_n⁻¹` and the infinity-norm bounds.

mod bounds;
mod signs;
mod sums;

pub use bounds::{
    bounds_report, exact_infinity_norm, lower_bound, upper_bound, BoundTerms, BoundsReport, Branch, UpperBound,
};
pub use signs::{sign_pattern, SignPattern};
pub use sums::{rowsum, rowsum_bounds, rowsum_report, trace_inverse, RowSumReport};

/// Pairwise summation; rows with mixed signs lose less to cancellation.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 8;
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

#[cfg(test)]
mod tests {
    use super::pairwise_sum;

    #[test]
    fn pairwise_matches_naive_on_integers() {
        let v: Vec<f64> = (1..=1000).map(|k| k as f64).collect();
        assert_eq!(pairwise_sum(&v), 500_500.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }
}
