use num_complex::Complex64;

use super::dirichlet::lattice_sum;
use super::spec::KernelSpec;
use crate::error::{Result, SummaError};
use crate::numeric::pairwise_sum;
use crate::spectral::kernel_on_grid;

/// `K(x) = Σ_k m(k) e^{ik·x}` for the method's multiplier, as a complex
/// number; the imaginary part vanishes by symmetry.
pub fn summability_kernel_complex(spec: &KernelSpec, x: &[f64]) -> Result<Complex64> {
    let m = spec.multiplier()?;
    if x.len() != spec.d {
        return Err(SummaError::Shape(format!("point has {} coordinates, kernel is {}-dimensional", x.len(), spec.d)));
    }
    Ok(lattice_sum(&m, x))
}

/// Real value of the summability kernel at x.
pub fn summability_kernel(spec: &KernelSpec, x: &[f64]) -> Result<f64> {
    Ok(summability_kernel_complex(spec, x)?.re)
}

/// `A_k^α = (α+1)(α+2)…(α+k)/k!`.
pub fn cesaro_coefficient(k: usize, alpha: f64) -> Result<f64> {
    if !alpha.is_finite() {
        return Err(crate::error::domain("cesaro_coefficient", "alpha must be finite"));
    }
    if alpha < 0.0 && alpha.fract() == 0.0 {
        return Err(SummaError::Pole(alpha));
    }
    let mut a = 1.0;
    for i in 1..=k {
        a *= (alpha + i as f64) / i as f64;
    }
    Ok(a)
}

/// Grid approximation of ∫_{T^d} |K| on G^d points.
pub fn kernel_l1_norm(spec: &KernelSpec, grid_points_per_dim: usize) -> Result<f64> {
    spec.validate()?;
    let need = 8 * spec.max_n();
    if grid_points_per_dim < need {
        return Err(SummaError::UnderResolution(format!(
            "{grid_points_per_dim} points per dimension, at least {need} needed for n = {}",
            spec.max_n()
        )));
    }
    let k = kernel_on_grid(spec, spec.d, grid_points_per_dim)?;
    let abs: Vec<f64> = k.samples.iter().map(|v| v.re.abs()).collect();
    Ok(pairwise_sum(&abs) * k.cell_volume())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Q;
    use std::f64::consts::PI;

    #[test]
    fn fejer_at_origin() {
        let v = summability_kernel(&KernelSpec::fejer(1, Q::One, 5), &[0.0]).unwrap();
        assert!((v - 5.0).abs() < 1e-12);
    }

    #[test]
    fn cesaro_values() {
        assert!((cesaro_coefficient(3, 1.0).unwrap() - 4.0).abs() < 1e-15);
        assert!((cesaro_coefficient(2, 0.5).unwrap() - 15.0 / 8.0).abs() < 1e-15);
        let diff = cesaro_coefficient(5, 0.7).unwrap() - cesaro_coefficient(4, 0.7).unwrap();
        assert!((diff - cesaro_coefficient(5, -0.3).unwrap()).abs() < 1e-12);
        assert!(matches!(cesaro_coefficient(3, -2.0), Err(SummaError::Pole(_))));
        assert_eq!(cesaro_coefficient(0, -2.5).unwrap(), 1.0);
    }

    #[test]
    fn fejer_l1_norm_is_two_pi() {
        let v = kernel_l1_norm(&KernelSpec::fejer(1, Q::One, 16), 1024).unwrap();
        assert!((v - 2.0 * PI).abs() < 1e-6);
    }

    #[test]
    fn under_resolution_is_reported() {
        let r = kernel_l1_norm(&KernelSpec::fejer(1, Q::One, 16), 64);
        assert!(matches!(r, Err(SummaError::UnderResolution(_))));
    }
}
