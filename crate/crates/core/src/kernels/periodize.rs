use std::f64::consts::PI;

use super::theta::{periodization_tail_1d, telescoped_tail, ThetaFunction};
use crate::error::{Result, SummaError};
use crate::numeric::pairwise_sum;

/// Periodized kernel value with an upper bound on the omitted translates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodizedValue {
    pub value: f64,
    pub tail: f64,
}

const TAIL_LIMIT: f64 = 1e-6;

/// `(2π)^d (Π n_j) Σ_{‖k‖_∞ ≤ R} θ^(n_1(x_1 + 2πk_1), …, n_d(x_d + 2πk_d))` for
/// tensor-type θ with a known transform; the sum factorizes per axis.
pub fn theta_kernel_periodized(theta: &ThetaFunction, n: &[usize], x: &[f64], truncation_radius: usize) -> Result<PeriodizedValue> {
    if n.len() != x.len() || n.is_empty() {
        return Err(SummaError::Shape(format!("{} indices for a {}-dimensional point", n.len(), x.len())));
    }
    if !theta.is_tensor() || !theta.has_fourier_transform() {
        return Err(SummaError::Unsupported(format!(
            "periodization needs a tensor-type theta with a known transform ({})",
            theta.catalog_id
        )));
    }
    let r = truncation_radius as i64;
    let mut values = Vec::with_capacity(n.len());
    let mut abs_sums = Vec::with_capacity(n.len());
    let mut tails = Vec::with_capacity(n.len());
    for (&nj, &xj) in n.iter().zip(x) {
        let nf = nj as f64;
        // reduce to [-π, π] so the translate bound applies
        let xr = xj - 2.0 * PI * (xj / (2.0 * PI)).round();
        let terms: Vec<f64> = (-r..=r)
            .map(|k| 2.0 * PI * nf * theta.fourier_transform_1d(nf * (xr + 2.0 * PI * k as f64)).unwrap_or(0.0))
            .collect();
        let abs: Vec<f64> = terms.iter().map(|v| v.abs()).collect();
        let tail = periodization_tail_1d(theta.ft_decay(), nf, truncation_radius);
        values.push(pairwise_sum(&terms));
        abs_sums.push(pairwise_sum(&abs) + tail);
        tails.push(tail);
    }
    let tail = telescoped_tail(&abs_sums, &tails);
    if !(tail <= TAIL_LIMIT) {
        return Err(SummaError::NonConvergence {
            what: "periodized kernel",
            tail,
            limit: TAIL_LIMIT,
        });
    }
    Ok(PeriodizedValue {
        value: values.iter().product(),
        tail,
    })
}
