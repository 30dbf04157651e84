//! Shared fixtures for the benchmarks.

use summa_core::{GridFunction, Result};

/// Smooth, non-separable test function on a d-dimensional G-grid.
pub fn smooth(d: usize, g: usize) -> Result<GridFunction> {
    GridFunction::from_fn(d, g, |x| {
        let s: f64 = x.iter().map(|t| t.cos()).sum();
        (s + x.iter().map(|t| (2.0 * t).sin()).product::<f64>()).exp()
    })
}

/// Narrow spike at the origin, the worst case for maximal operators.
pub fn spike(d: usize, g: usize) -> Result<GridFunction> {
    GridFunction::from_fn(d, g, |x| if x.iter().all(|t| t.abs() < 0.3) { 1.0 } else { 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(smooth(2, 8).unwrap().len(), 64);
        assert!(spike(1, 16).unwrap().re().contains(&1.0));
    }
}
