//! Divided differences and the trigonometric identities behind the
//! triangular Dirichlet kernel.

use crate::error::{Result, SummaError};

/// Nodes closer than this are treated as colliding.
pub const COLLISION_THRESHOLD: f64 = 1e-6;

fn check_nodes(nodes: &[f64]) -> Result<()> {
    if nodes.is_empty() {
        return Err(crate::error::domain("divided_difference", "at least one node is required"));
    }
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            let gap = (nodes[i] - nodes[j]).abs();
            if gap < COLLISION_THRESHOLD {
                return Err(SummaError::NearCollision { i, j, gap });
            }
        }
    }
    Ok(())
}

/// `[x_1, …, x_n] f = Σ_k f(x_k) / Π_{j≠k} (x_k - x_j)`.
pub fn divided_difference<F: Fn(f64) -> f64>(nodes: &[f64], f: F) -> Result<f64> {
    check_nodes(nodes)?;
    let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    Ok(divided_difference_values(nodes, &values))
}

/// Explicit sum with precomputed function values. No collision check.
pub(crate) fn divided_difference_values(nodes: &[f64], values: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (k, (&xk, &vk)) in nodes.iter().zip(values).enumerate() {
        let mut den = 1.0;
        for (j, &xj) in nodes.iter().enumerate() {
            if j != k {
                den *= xk - xj;
            }
        }
        acc += vk / den;
    }
    acc
}

/// The recursive definition, in Newton's tableau form.
pub fn divided_difference_recursive<F: Fn(f64) -> f64>(nodes: &[f64], f: F) -> Result<f64> {
    check_nodes(nodes)?;
    let n = nodes.len();
    let mut table: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    // after pass `level`, table[i] = [x_i, …, x_{i+level}] f
    for level in 1..n {
        for i in 0..(n - level) {
            table[i] = (table[i] - table[i + 1]) / (nodes[i] - nodes[i + level]);
        }
    }
    Ok(table[0])
}

/// The function G_n with `G_n(cos x) = (-1)^{⌊(d-1)/2⌋} 2 cos(x/2) (sin x)^{d-2} soc((n+1/2)x)`,
/// where soc is cos for even d and sin for odd d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DividedDifferenceForm {
    pub d: usize,
    pub n: usize,
}

impl DividedDifferenceForm {
    pub fn new(d: usize, n: usize) -> Self {
        Self { d, n }
    }

    pub fn soc_is_cosine(&self) -> bool {
        self.d % 2 == 0
    }

    /// G_n evaluated at cos x, for x ∈ [0, π].
    pub fn g_at_angle(&self, x: f64) -> f64 {
        let sign = if ((self.d - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let arg = (self.n as f64 + 0.5) * x;
        let soc = if self.soc_is_cosine() { arg.cos() } else { arg.sin() };
        let sin_pow = if self.d >= 2 {
            x.sin().powi(self.d as i32 - 2)
        } else {
            1.0 / x.sin()
        };
        sign * 2.0 * (0.5 * x).cos() * sin_pow * soc
    }

    /// `[cos x_1, …, cos x_d] G_n` by the explicit sum.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        let nodes: Vec<f64> = x.iter().map(|v| v.cos()).collect();
        check_nodes(&nodes)?;
        // G_n(cos x) is even in x, so any representative angle works
        let values: Vec<f64> = x.iter().map(|&v| self.g_at_angle(v.abs())).collect();
        Ok(divided_difference_values(&nodes, &values))
    }
}

fn eps(k: usize) -> f64 {
    if k == 0 {
        0.5
    } else {
        1.0
    }
}

/// Left and right sides of the sine identity
/// `Σ_{k=0}^n ε_k cos(ky) sin((n-k+1/2)x) = sin(x/2) [cos(x/2)cos((n+1/2)x) - cos(y/2)cos((n+1/2)y)] / (cos x - cos y)`.
pub fn trig_identity_sine(n: usize, x: f64, y: f64) -> (f64, f64) {
    let lhs: f64 = (0..=n)
        .map(|k| eps(k) * (k as f64 * y).cos() * (((n - k) as f64 + 0.5) * x).sin())
        .sum();
    let m = n as f64 + 0.5;
    let rhs = (0.5 * x).sin() * ((0.5 * x).cos() * (m * x).cos() - (0.5 * y).cos() * (m * y).cos())
        / (x.cos() - y.cos());
    (lhs, rhs)
}

/// Left and right sides of the cosine identity
/// `Σ_{k=0}^n ε_k cos(ky) cos((n-k+1/2)x) = cos(x/2) [sin(y/2)sin((n+1/2)y) - sin(x/2)sin((n+1/2)x)] / (cos x - cos y)`.
pub fn trig_identity_cosine(n: usize, x: f64, y: f64) -> (f64, f64) {
    let lhs: f64 = (0..=n)
        .map(|k| eps(k) * (k as f64 * y).cos() * (((n - k) as f64 + 0.5) * x).cos())
        .sum();
    let m = n as f64 + 0.5;
    let rhs = (0.5 * x).cos() * ((0.5 * y).sin() * (m * y).sin() - (0.5 * x).sin() * (m * x).sin())
        / (x.cos() - y.cos());
    (lhs, rhs)
}
