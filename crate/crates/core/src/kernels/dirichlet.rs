use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::divided::{DividedDifferenceForm, COLLISION_THRESHOLD};
use super::spec::{KernelSpec, Method, Multiplier, Region};
use crate::error::{Result, SummaError};
use crate::lattice::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMode {
    ClosedForm,
    LatticeSum,
}

/// Below this |sin(x/2)| the 1-D quotient is replaced by its limit.
const REMOVABLE: f64 = 1e-9;

/// `sin((n+1/2)x) / sin(x/2)`, with value 2n+1 at x ≡ 0.
pub fn dirichlet_1d(n: usize, x: f64) -> f64 {
    let s = (0.5 * x).sin();
    if s.abs() < REMOVABLE {
        // the limit at every x ≡ 0 mod 2π
        return (2 * n + 1) as f64;
    }
    ((n as f64 + 0.5) * x).sin() / s
}

/// `Σ_k m(k) e^{ik·x}` over the multiplier's box, with per-axis phase tables.
pub fn lattice_sum(m: &Multiplier, x: &[f64]) -> Complex64 {
    let d = x.len();
    let tables: Vec<Vec<Complex64>> = (0..d)
        .map(|j| {
            let r = m.radii[j];
            (-r..=r).map(|k| Complex64::from_polar(1.0, k as f64 * x[j])).collect()
        })
        .collect();
    let mut k = vec![0i64; d];
    sum_axis(m, &tables, &mut k, 0, Complex64::new(1.0, 0.0))
}

fn sum_axis(m: &Multiplier, tables: &[Vec<Complex64>], k: &mut [i64], axis: usize, phase: Complex64) -> Complex64 {
    let r = m.radii[axis];
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, t) in tables[axis].iter().enumerate() {
        k[axis] = i as i64 - r;
        let p = phase * t;
        if axis + 1 == k.len() {
            let w = m.eval(k);
            if w != 0.0 {
                acc += p * w;
            }
        } else {
            acc += sum_axis(m, tables, k, axis + 1, p);
        }
    }
    acc
}

/// `[cos x_1, cos x_2] G_n` written out for d = 2.
pub fn triangular_d2(n: usize, x1: f64, x2: f64) -> Result<f64> {
    let den = x1.cos() - x2.cos();
    if den.abs() < COLLISION_THRESHOLD {
        return Err(SummaError::NearCollision { i: 0, j: 1, gap: den.abs() });
    }
    let m = n as f64 + 0.5;
    Ok(2.0 * ((0.5 * x1).cos() * (m * x1).cos() - (0.5 * x2).cos() * (m * x2).cos()) / den)
}

/// Dirichlet kernel `Σ_{‖k‖_q ≤ n} e^{ik·x}` (or the rectangular product).
///
/// The closed form exists in one dimension, for q = 1 (divided differences,
/// with a lattice-sum fallback when two cos x_i nearly coincide) and for
/// q = ∞ and rectangles (products of 1-D kernels).
pub fn dirichlet_kernel(spec: &KernelSpec, x: &[f64], mode: EvalMode) -> Result<f64> {
    if spec.method != Method::Dirichlet {
        return Err(SummaError::InvalidSpec(format!(
            "dirichlet_kernel needs the dirichlet method, got {}",
            spec.method
        )));
    }
    spec.validate()?;
    if x.len() != spec.d {
        return Err(SummaError::Shape(format!("point has {} coordinates, kernel is {}-dimensional", x.len(), spec.d)));
    }
    match mode {
        EvalMode::LatticeSum => Ok(lattice_sum(&spec.multiplier()?, x).re),
        EvalMode::ClosedForm => match spec.region {
            Region::Rectangular => Ok(x.iter().zip(&spec.n).map(|(&xi, &ni)| dirichlet_1d(ni, xi)).product()),
            Region::EllQ(q) => {
                let n = spec.n[0];
                if spec.d == 1 {
                    return Ok(dirichlet_1d(n, x[0]));
                }
                match q {
                    Q::Inf => Ok(x.iter().map(|&xi| dirichlet_1d(n, xi)).product()),
                    Q::One => match DividedDifferenceForm::new(spec.d, n).evaluate(x) {
                        Ok(v) => Ok(v),
                        Err(SummaError::NearCollision { .. }) => Ok(lattice_sum(&spec.multiplier()?, x).re),
                        Err(e) => Err(e),
                    },
                    Q::Two => Err(SummaError::Unsupported(
                        "no closed form for the circular Dirichlet kernel on the torus; use the lattice sum".into(),
                    )),
                }
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn origin_values() {
        let e = |spec: KernelSpec, x: &[f64], mode| dirichlet_kernel(&spec, x, mode).unwrap();
        assert_eq!(e(KernelSpec::dirichlet(1, Q::One, 5), &[0.0], EvalMode::ClosedForm), 11.0);
        assert_eq!(e(KernelSpec::dirichlet(2, Q::Inf, 1), &[0.0, 0.0], EvalMode::ClosedForm), 9.0);
        assert_eq!(e(KernelSpec::dirichlet(2, Q::One, 4), &[0.0, 0.0], EvalMode::LatticeSum), 41.0);
        assert_eq!(e(KernelSpec::dirichlet(2, Q::Two, 1), &[0.0, 0.0], EvalMode::LatticeSum), 5.0);
        // the q = 1 closed form falls back to the lattice sum at the collision x1 = x2
        assert!((e(KernelSpec::dirichlet(2, Q::One, 4), &[0.0, 0.0], EvalMode::ClosedForm) - 41.0).abs() < 1e-9);
    }

    #[test]
    fn removable_singularity_at_two_pi() {
        assert!((dirichlet_1d(3, 2.0 * PI) - 7.0).abs() < 1e-12);
        assert!((dirichlet_1d(3, -2.0 * PI) - 7.0).abs() < 1e-12);
    }

    #[test]
    fn circular_closed_form_is_unsupported() {
        let r = dirichlet_kernel(&KernelSpec::dirichlet(2, Q::Two, 3), &[0.1, 0.2], EvalMode::ClosedForm);
        assert!(matches!(r, Err(SummaError::Unsupported(_))));
    }

    #[test]
    fn d2_explicit_form_matches_divided_difference() {
        let form = DividedDifferenceForm::new(2, 6);
        for (a, b) in [(0.3, 1.1), (-2.0, 0.4), (3.0, -0.1)] {
            let v = triangular_d2(6, a, b).unwrap();
            let w = form.evaluate(&[a, b]).unwrap();
            assert!((v - w).abs() < 1e-10);
        }
    }
}
