//! Grid ↔ spectrum transforms on T^d and Fourier multipliers.
//!
//! Grid points are x_j = -π + 2πj/G per coordinate (so 0 is a grid point),
//! stored row-major with the last coordinate fastest. Coefficients are kept
//! in signed order k_i = -G/2, …, G/2 - 1.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{Result, SummaError};
use crate::kernels::{KernelSpec, Multiplier};
use crate::lattice::{for_each_in_box, Q};

/// Samples of a function on the uniform grid of T^d.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub d: usize,
    pub g: usize,
    pub samples: Vec<Complex64>,
}

/// Fourier coefficients ĉ(k), -G/2 ≤ k_i < G/2.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub d: usize,
    pub g: usize,
    pub coeffs: Vec<Complex64>,
}

pub(crate) fn check_grid(g: usize) -> Result<()> {
    if g < 4 || !g.is_power_of_two() {
        return Err(SummaError::GridSize(g));
    }
    Ok(())
}

/// Coordinate of grid index j.
pub fn grid_point(g: usize, j: usize) -> f64 {
    -std::f64::consts::PI + 2.0 * std::f64::consts::PI * j as f64 / g as f64
}

/// Multi-index of a flat position (per-axis grid indices).
pub fn unflatten(d: usize, g: usize, mut flat: usize) -> Vec<usize> {
    let mut idx = vec![0; d];
    for a in (0..d).rev() {
        idx[a] = flat % g;
        flat /= g;
    }
    idx
}

pub fn flatten(g: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * g + i)
}

impl GridFunction {
    pub fn zeros(d: usize, g: usize) -> Result<Self> {
        check_grid(g)?;
        if d == 0 {
            return Err(SummaError::Shape("dimension must be at least 1".into()));
        }
        Ok(Self {
            d,
            g,
            samples: vec![Complex64::new(0.0, 0.0); g.pow(d as u32)],
        })
    }

    /// Sample a real function of the point x ∈ [-π, π)^d.
    pub fn from_fn<F: Fn(&[f64]) -> f64 + Sync>(d: usize, g: usize, f: F) -> Result<Self> {
        Self::from_complex_fn(d, g, |x| Complex64::new(f(x), 0.0))
    }

    pub fn from_complex_fn<F: Fn(&[f64]) -> Complex64 + Sync>(d: usize, g: usize, f: F) -> Result<Self> {
        let mut out = Self::zeros(d, g)?;
        out.samples.par_iter_mut().enumerate().for_each(|(flat, s)| {
            let x: Vec<f64> = unflatten(d, g, flat).iter().map(|&j| grid_point(g, j)).collect();
            *s = f(&x);
        });
        Ok(out)
    }

    pub fn from_real(d: usize, g: usize, values: &[f64]) -> Result<Self> {
        check_grid(g)?;
        if values.len() != g.pow(d as u32) {
            return Err(SummaError::Shape(format!("{} samples for a {}^{} grid", values.len(), g, d)));
        }
        Ok(Self {
            d,
            g,
            samples: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Grid point of a flat index.
    pub fn point(&self, flat: usize) -> Vec<f64> {
        unflatten(self.d, self.g, flat).iter().map(|&j| grid_point(self.g, j)).collect()
    }

    pub fn re(&self) -> Vec<f64> {
        self.samples.iter().map(|c| c.re).collect()
    }

    pub fn abs(&self) -> Vec<f64> {
        self.samples.iter().map(|c| c.norm()).collect()
    }

    /// Largest |imaginary part|.
    pub fn max_imag(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, c| m.max(c.im.abs()))
    }

    pub fn max_abs_diff(&self, other: &GridFunction) -> f64 {
        self.samples
            .iter()
            .zip(&other.samples)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// Cell volume (2π/G)^d.
    pub fn cell_volume(&self) -> f64 {
        (2.0 * std::f64::consts::PI / self.g as f64).powi(self.d as i32)
    }

    fn same_shape(&self, other: &GridFunction) -> Result<()> {
        if self.d != other.d || self.g != other.g {
            return Err(SummaError::Shape(format!(
                "grids {}^{} and {}^{} differ",
                self.g, self.d, other.g, other.d
            )));
        }
        Ok(())
    }
}

impl Spectrum {
    pub fn zeros(d: usize, g: usize) -> Result<Self> {
        let f = GridFunction::zeros(d, g)?;
        Ok(Self {
            d,
            g,
            coeffs: f.samples,
        })
    }

    fn offset(&self) -> i64 {
        (self.g / 2) as i64
    }

    /// Flat position of k, or None when k lies outside the stored band.
    pub fn index_of(&self, k: &[i64]) -> Option<usize> {
        let h = self.offset();
        let mut flat = 0usize;
        for &kj in k {
            if kj < -h || kj >= h {
                return None;
            }
            flat = flat * self.g + (kj + h) as usize;
        }
        Some(flat)
    }

    pub fn k_of(&self, flat: usize) -> Vec<i64> {
        let h = self.offset();
        unflatten(self.d, self.g, flat).iter().map(|&i| i as i64 - h).collect()
    }

    pub fn get(&self, k: &[i64]) -> Complex64 {
        self.index_of(k).map_or(Complex64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    pub fn set(&mut self, k: &[i64], v: Complex64) -> Result<()> {
        let i = self
            .index_of(k)
            .ok_or(SummaError::Aliasing { support: k.iter().map(|v| v.abs()).max().unwrap_or(0) as f64, grid: self.g })?;
        self.coeffs[i] = v;
        Ok(())
    }

    /// Multiply every coefficient by m(k).
    pub fn map_k<F: Fn(&[i64]) -> Complex64 + Sync>(&self, f: F) -> Spectrum {
        let mut out = self.clone();
        let (d, g, h) = (self.d, self.g, self.offset());
        out.coeffs.par_iter_mut().enumerate().for_each(|(flat, c)| {
            let k: Vec<i64> = unflatten(d, g, flat).iter().map(|&i| i as i64 - h).collect();
            *c *= f(&k);
        });
        out
    }

    pub fn max_abs_diff(&self, other: &Spectrum) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}

fn fft_along_axes(data: &mut [Complex64], d: usize, g: usize, direction: FftDirection) {
    let mut planner = FftPlanner::<f64>::new();
    let fft: Arc<dyn Fft<f64>> = planner.plan_fft(g, direction);
    for axis in 0..d {
        let stride = g.pow((d - 1 - axis) as u32);
        if stride == 1 {
            data.par_chunks_mut(g).for_each(|line| fft.process(line));
            continue;
        }
        // lines along `axis`: blocks of g*stride, each holding `stride` interleaved lines
        data.par_chunks_mut(g * stride).for_each(|block| {
            let mut line = vec![Complex64::new(0.0, 0.0); g];
            for offset in 0..stride {
                for (i, v) in line.iter_mut().enumerate() {
                    *v = block[offset + i * stride];
                }
                fft.process(&mut line);
                for (i, v) in line.iter().enumerate() {
                    block[offset + i * stride] = *v;
                }
            }
        });
    }
}

/// Position of signed frequency k in the FFT's wrapped order.
fn wrap(k: i64, g: usize) -> usize {
    k.rem_euclid(g as i64) as usize
}

/// ĉ(k) = G^{-d} Σ_j f(x_j) e^{-ik·x_j}.
pub fn analyze(f: &GridFunction) -> Result<Spectrum> {
    check_grid(f.g)?;
    let (d, g) = (f.d, f.g);
    let mut data = f.samples.clone();
    fft_along_axes(&mut data, d, g, FftDirection::Forward);
    let scale = 1.0 / (g as f64).powi(d as i32);
    let h = (g / 2) as i64;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); data.len()];
    coeffs.par_iter_mut().enumerate().for_each(|(flat, c)| {
        let idx = unflatten(d, g, flat);
        let mut src = 0usize;
        let mut parity = 0i64;
        for &i in &idx {
            let k = i as i64 - h;
            src = src * g + wrap(k, g);
            parity += k;
        }
        // x_j carries the offset -π, contributing e^{ikπ} = (-1)^k
        let sign = if parity.rem_euclid(2) == 0 { scale } else { -scale };
        *c = data[src] * sign;
    });
    Ok(Spectrum { d, g, coeffs })
}

/// f(x_j) = Σ_k ĉ(k) e^{ik·x_j}.
pub fn synthesize(c: &Spectrum) -> Result<GridFunction> {
    check_grid(c.g)?;
    let (d, g) = (c.d, c.g);
    if c.coeffs.len() != g.pow(d as u32) {
        return Err(SummaError::Shape("spectrum length does not match its grid".into()));
    }
    let h = (g / 2) as i64;
    let mut data = vec![Complex64::new(0.0, 0.0); c.coeffs.len()];
    // scatter with the (-1)^k phase into wrapped order
    let mut order: Vec<(usize, Complex64)> = c
        .coeffs
        .par_iter()
        .enumerate()
        .map(|(flat, &v)| {
            let idx = unflatten(d, g, flat);
            let mut dst = 0usize;
            let mut parity = 0i64;
            for &i in &idx {
                let k = i as i64 - h;
                dst = dst * g + wrap(k, g);
                parity += k;
            }
            (dst, if parity.rem_euclid(2) == 0 { v } else { -v })
        })
        .collect();
    for (dst, v) in order.drain(..) {
        data[dst] = v;
    }
    fft_along_axes(&mut data, d, g, FftDirection::Inverse);
    Ok(GridFunction { d, g, samples: data })
}

/// Summation region of a partial sum.
#[derive(Debug, Clone, PartialEq)]
pub enum PartialRegion {
    EllQ { q: Q, n: usize },
    Rectangle(Vec<usize>),
}

fn check_band(support: &[i64], g: usize) -> Result<()> {
    let h = (g / 2) as i64;
    for &s in support {
        if s > h - 1 {
            return Err(SummaError::Aliasing { support: s as f64, grid: g });
        }
    }
    Ok(())
}

/// Largest |k_i| per axis with m(k) ≠ 0, scanning the multiplier's box.
fn multiplier_support(m: &Multiplier, d: usize) -> Vec<i64> {
    if !m.exact_support {
        return m.radii.clone();
    }
    let mut sup = vec![0i64; d];
    for_each_in_box(&m.radii, |k| {
        if m.eval(k) != 0.0 {
            for (s, &kj) in sup.iter_mut().zip(k) {
                *s = (*s).max(kj.abs());
            }
        }
    });
    sup
}

/// Multiply by m(k) on the stored band and synthesize. Compactly supported
/// multipliers must fit strictly inside the band; multipliers with unbounded
/// support require n < G/2 and act on the stored band only.
pub fn apply_multiplier(c: &Spectrum, spec: &KernelSpec) -> Result<GridFunction> {
    let m = spec.multiplier()?;
    if spec.d != c.d {
        return Err(SummaError::Shape(format!("{}-dimensional kernel on a {}-dimensional spectrum", spec.d, c.d)));
    }
    if m.exact_support {
        check_band(&multiplier_support(&m, c.d), c.g)?;
    } else {
        let ns: Vec<i64> = spec.n_per_axis().iter().map(|&v| v as i64).collect();
        check_band(&ns, c.g)?;
    }
    let scaled = c.map_k(|k| Complex64::new(m.eval(k), 0.0));
    synthesize(&scaled)
}

/// ℓq or rectangular partial sum.
pub fn partial_sum(c: &Spectrum, region: &PartialRegion) -> Result<GridFunction> {
    let spec = match region {
        PartialRegion::EllQ { q, n } => KernelSpec::dirichlet(c.d, *q, *n),
        PartialRegion::Rectangle(n) => {
            KernelSpec::rectangular(crate::kernels::Method::Dirichlet, n.clone(), 0.0, 1.0)
        }
    };
    apply_multiplier(c, &spec)
}

/// σ_n f for the method described by `spec`.
pub fn summability_mean(c: &Spectrum, spec: &KernelSpec) -> Result<GridFunction> {
    apply_multiplier(c, spec)
}

/// Conjugate-function multipliers.
#[derive(Debug, Clone, PartialEq)]
pub enum ConjugateKind {
    /// -i k_i/‖k‖_2, zero at k = 0
    Riesz(usize),
    /// Π (-i sign k_i)^{j_i}
    Product(Vec<bool>),
}

pub fn conjugate_transform(c: &Spectrum, kind: &ConjugateKind) -> Result<Spectrum> {
    match kind {
        ConjugateKind::Riesz(i) => {
            if *i >= c.d {
                return Err(SummaError::Shape(format!("coordinate {i} out of range for d = {}", c.d)));
            }
            let i = *i;
            Ok(c.map_k(|k| {
                let r2: i64 = k.iter().map(|v| v * v).sum();
                if r2 == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(0.0, -(k[i] as f64) / (r2 as f64).sqrt())
                }
            }))
        }
        ConjugateKind::Product(j) => {
            if j.len() != c.d {
                return Err(SummaError::Shape(format!("{} selectors for d = {}", j.len(), c.d)));
            }
            let j = j.clone();
            Ok(c.map_k(|k| {
                let mut v = Complex64::new(1.0, 0.0);
                for (&kj, &on) in k.iter().zip(&j) {
                    if on {
                        v *= Complex64::new(0.0, -(kj.signum() as f64));
                    }
                }
                v
            }))
        }
    }
}

/// Normalized convolution (2π)^{-d} ∫ f(x-u) g(u) du on the grid.
pub fn convolve(f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    f.same_shape(g)?;
    let a = analyze(f)?;
    let b = analyze(g)?;
    let mut prod = a.clone();
    prod.coeffs.iter_mut().zip(&b.coeffs).for_each(|(x, y)| *x *= y);
    synthesize(&prod)
}

/// Kernel samples on the grid, obtained by folding every lattice frequency
/// of the multiplier onto the band (exact sampling of the kernel, up to the
/// multiplier's truncation tail).
pub fn kernel_on_grid(spec: &KernelSpec, d: usize, g: usize) -> Result<GridFunction> {
    check_grid(g)?;
    if spec.d != d {
        return Err(SummaError::Shape(format!("{}-dimensional kernel on a {}-dimensional grid", spec.d, d)));
    }
    let m = spec.multiplier()?;
    let mut folded = Spectrum::zeros(d, g)?;
    let h = (g / 2) as i64;
    let gi = g as i64;
    for_each_in_box(&m.radii, |k| {
        let w = m.eval(k);
        if w != 0.0 {
            let mut flat = 0usize;
            for &kj in k {
                flat = flat * g + ((kj + h).rem_euclid(gi)) as usize;
            }
            folded.coeffs[flat] += w;
        }
    });
    synthesize(&folded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Q;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn single_mode_analysis() {
        let f = GridFunction::from_complex_fn(1, 16, |x| Complex64::from_polar(1.0, 3.0 * x[0])).unwrap();
        let c = analyze(&f).unwrap();
        for (flat, v) in c.coeffs.iter().enumerate() {
            let k = c.k_of(flat)[0];
            let want = if k == 3 { 1.0 } else { 0.0 };
            assert!(close(*v, Complex64::new(want, 0.0), 1e-12), "k = {k}");
        }
    }

    #[test]
    fn constant_and_zero() {
        let one = GridFunction::from_fn(2, 8, |_| 1.0).unwrap();
        let c = analyze(&one).unwrap();
        assert!(close(c.get(&[0, 0]), Complex64::new(1.0, 0.0), 1e-14));
        let mut delta = Spectrum::zeros(2, 8).unwrap();
        delta.set(&[0, 0], Complex64::new(1.0, 0.0)).unwrap();
        let s = synthesize(&delta).unwrap();
        assert!(s.samples.iter().all(|v| close(*v, Complex64::new(1.0, 0.0), 1e-14)));
        let z = synthesize(&Spectrum::zeros(1, 8).unwrap()).unwrap();
        assert!(z.samples.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn three_dimensional_single_mode() {
        let f = GridFunction::from_complex_fn(3, 8, |x| Complex64::from_polar(1.0, x[0] - 2.0 * x[1] + 3.0 * x[2]))
            .unwrap();
        let c = analyze(&f).unwrap();
        assert!(close(c.get(&[1, -2, 3]), Complex64::new(1.0, 0.0), 1e-12));
        let total: f64 = c.coeffs.iter().map(|v| v.norm()).sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn non_power_of_two_rejected() {
        assert!(matches!(GridFunction::zeros(1, 12), Err(SummaError::GridSize(12))));
    }

    #[test]
    fn fejer_multiplier_on_single_mode() {
        let f = GridFunction::from_complex_fn(1, 32, |x| Complex64::from_polar(1.0, x[0])).unwrap();
        let c = analyze(&f).unwrap();
        let s = summability_mean(&c, &KernelSpec::fejer(1, Q::One, 4)).unwrap();
        for (i, v) in s.samples.iter().enumerate() {
            let want = Complex64::from_polar(0.75, f.point(i)[0]);
            assert!(close(*v, want, 1e-12));
        }
    }

    #[test]
    fn partial_sum_aliasing_error() {
        let c = Spectrum::zeros(1, 16).unwrap();
        assert!(matches!(
            partial_sum(&c, &PartialRegion::EllQ { q: Q::One, n: 8 }),
            Err(SummaError::Aliasing { .. })
        ));
        assert!(partial_sum(&c, &PartialRegion::EllQ { q: Q::One, n: 7 }).is_ok());
        // Fejér at n = G/2 vanishes on the band edge, so it still fits
        assert!(summability_mean(&c, &KernelSpec::fejer(1, Q::One, 8)).is_ok());
    }

    #[test]
    fn hilbert_of_cosine_is_sine() {
        let f = GridFunction::from_fn(1, 16, |x| x[0].cos()).unwrap();
        let h = conjugate_transform(&analyze(&f).unwrap(), &ConjugateKind::Product(vec![true])).unwrap();
        let s = synthesize(&h).unwrap();
        for (i, v) in s.samples.iter().enumerate() {
            assert!(close(*v, Complex64::new(f.point(i)[0].sin(), 0.0), 1e-12));
        }
    }

    #[test]
    fn kernel_on_grid_matches_closed_form() {
        let k = kernel_on_grid(&KernelSpec::dirichlet(1, Q::One, 5), 1, 64).unwrap();
        for (i, v) in k.samples.iter().enumerate() {
            let x = k.point(i)[0];
            assert!((v.re - crate::kernels::dirichlet_1d(5, x)).abs() < 1e-11);
        }
    }
}
