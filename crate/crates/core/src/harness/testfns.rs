//! Built-in test functions for the experiments.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SummaError};
use crate::lattice::for_each_in_box;
use crate::spectral::{analyze, synthesize, GridFunction, Spectrum};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FSpec {
    /// real trigonometric polynomial, ‖k‖_∞ ≤ degree, seeded coefficients
    TrigPoly { degree: usize, seed: u64 },
    /// Σ_{‖k‖_∞ ≤ degree} 2^{-‖k‖_1} e^{ik·x}, all coefficients positive
    CosSeries { degree: usize },
    Constant { value: f64 },
    /// exp(1 - 1/(1 - (‖x‖_2/radius)²)) inside the ball
    Bump { radius: f64 },
    /// indicator of x_1 ∈ [0, π)
    Jump,
    /// ‖x‖_2
    Corner,
    /// indicator of ‖x‖_∞ < width
    Spike { width: f64 },
    /// indicator of radius - width ≤ ‖x‖_∞ < radius
    Ring { radius: f64, width: f64 },
    /// min(‖x‖_2^{-power}, 1e3)
    Singular { power: f64 },
}

impl fmt::Display for FSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FSpec::TrigPoly { degree, seed } => write!(f, "trig({degree},{seed})"),
            FSpec::CosSeries { degree } => write!(f, "cos({degree})"),
            FSpec::Constant { value } => write!(f, "const({value})"),
            FSpec::Bump { radius } => write!(f, "bump({radius})"),
            FSpec::Jump => f.write_str("jump"),
            FSpec::Corner => f.write_str("corner"),
            FSpec::Spike { width } => write!(f, "spike({width})"),
            FSpec::Ring { radius, width } => write!(f, "ring({radius},{width})"),
            FSpec::Singular { power } => write!(f, "singular({power})"),
        }
    }
}

impl FromStr for FSpec {
    type Err = SummaError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || SummaError::UnknownTestFunction(s.to_string());
        let (name, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], &s[i + 1..s.len() - 1]),
            Some(_) => return Err(unknown()),
            None => (s, ""),
        };
        let nums: Vec<f64> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| a.trim().parse::<f64>().map_err(|_| unknown()))
                .collect::<Result<_>>()?
        };
        let as_usize = |v: f64| -> Result<usize> {
            if v >= 0.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                Err(unknown())
            }
        };
        let spec = match (name, nums.as_slice()) {
            ("trig", [d, s]) => FSpec::TrigPoly {
                degree: as_usize(*d)?,
                seed: as_usize(*s)? as u64,
            },
            ("cos", [d]) => FSpec::CosSeries { degree: as_usize(*d)? },
            ("const", [v]) => FSpec::Constant { value: *v },
            ("bump", [r]) if *r > 0.0 && *r < PI => FSpec::Bump { radius: *r },
            ("bump", []) => FSpec::Bump { radius: 2.0 },
            ("jump", []) => FSpec::Jump,
            ("corner", []) => FSpec::Corner,
            ("spike", [w]) if *w > 0.0 => FSpec::Spike { width: *w },
            ("ring", [r, w]) if *w > 0.0 && r > w => FSpec::Ring { radius: *r, width: *w },
            ("singular", [p]) if *p > 0.0 => FSpec::Singular { power: *p },
            _ => return Err(unknown()),
        };
        Ok(spec)
    }
}

/// Kind of a sample point for pointwise convergence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointClass {
    Continuity,
    Jump { left: f64, right: f64 },
}

fn reduce(x: f64) -> f64 {
    (x + PI).rem_euclid(2.0 * PI) - PI
}

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| reduce(*v).powi(2)).sum::<f64>().sqrt()
}

fn norm_inf(x: &[f64]) -> f64 {
    x.iter().fold(0.0f64, |m, v| m.max(reduce(*v).abs()))
}

type Evaluator = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

impl FSpec {
    /// Exact Fourier coefficients of the trigonometric polynomials.
    pub fn coefficients(&self, d: usize) -> Option<Vec<(Vec<i64>, Complex64)>> {
        match *self {
            FSpec::Constant { value } => Some(vec![(vec![0; d], Complex64::new(value, 0.0))]),
            FSpec::CosSeries { degree } => {
                let mut out = Vec::new();
                for_each_in_box(&vec![degree as i64; d], |k| {
                    let l1: i64 = k.iter().map(|v| v.abs()).sum();
                    out.push((k.to_vec(), Complex64::new(0.5f64.powi(l1 as i32), 0.0)));
                });
                Some(out)
            }
            FSpec::TrigPoly { degree, seed } => {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let mut raw = Vec::new();
                for_each_in_box(&vec![degree as i64; d], |k| {
                    let k2: i64 = k.iter().map(|v| v * v).sum();
                    let a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) / (1.0 + k2 as f64);
                    raw.push(a);
                });
                // box order is symmetric: the mirror of entry i is entry len-1-i
                let len = raw.len();
                let mut out = Vec::with_capacity(len);
                let mut i = 0;
                for_each_in_box(&vec![degree as i64; d], |k| {
                    out.push((k.to_vec(), 0.5 * (raw[i] + raw[len - 1 - i].conj())));
                    i += 1;
                });
                Some(out)
            }
            _ => None,
        }
    }

    pub fn evaluator(&self, d: usize) -> Evaluator {
        if let Some(coeffs) = self.coefficients(d) {
            return Box::new(move |x: &[f64]| {
                coeffs
                    .iter()
                    .map(|(k, c)| {
                        let phase: f64 = k.iter().zip(x).map(|(&kj, &xj)| kj as f64 * xj).sum();
                        (c * Complex64::from_polar(1.0, phase)).re
                    })
                    .sum()
            });
        }
        match *self {
            FSpec::Bump { radius } => Box::new(move |x: &[f64]| {
                let r = norm2(x) / radius;
                if r < 1.0 {
                    (1.0 - 1.0 / (1.0 - r * r)).exp()
                } else {
                    0.0
                }
            }),
            FSpec::Jump => Box::new(|x: &[f64]| if reduce(x[0]) >= 0.0 { 1.0 } else { 0.0 }),
            FSpec::Corner => Box::new(|x: &[f64]| norm2(x)),
            FSpec::Spike { width } => Box::new(move |x: &[f64]| if norm_inf(x) < width { 1.0 } else { 0.0 }),
            FSpec::Ring { radius, width } => Box::new(move |x: &[f64]| {
                let m = norm_inf(x);
                if m >= radius - width && m < radius {
                    1.0
                } else {
                    0.0
                }
            }),
            FSpec::Singular { power } => Box::new(move |x: &[f64]| {
                let r = norm2(x);
                if r == 0.0 {
                    1e3
                } else {
                    r.powf(-power).min(1e3)
                }
            }),
            _ => unreachable!("trigonometric polynomials are handled above"),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.evaluator(x.len())(x)
    }

    pub fn sample(&self, d: usize, g: usize) -> Result<GridFunction> {
        if self.coefficients(d).is_some() {
            let f = synthesize(&self.spectrum(d, g)?)?;
            let re = f.re();
            return GridFunction::from_real(d, g, &re);
        }
        let e = self.evaluator(d);
        GridFunction::from_fn(d, g, |x| e(x))
    }

    /// Coefficients on the grid band: exact for polynomials, the truncated
    /// analytic series for the jump, the discrete transform otherwise.
    pub fn spectrum(&self, d: usize, g: usize) -> Result<Spectrum> {
        if let Some(coeffs) = self.coefficients(d) {
            let mut s = Spectrum::zeros(d, g)?;
            for (k, c) in coeffs {
                if k.iter().any(|&kj| kj.abs() >= (g / 2) as i64) {
                    return Err(SummaError::Aliasing {
                        support: k.iter().map(|v| v.abs()).max().unwrap_or(0) as f64,
                        grid: g,
                    });
                }
                s.set(&k, c)?;
            }
            return Ok(s);
        }
        if *self == FSpec::Jump {
            let mut s = Spectrum::zeros(d, g)?;
            let h = (g / 2) as i64;
            let mut k = vec![0i64; d];
            for k1 in 1 - h..h {
                k[0] = k1;
                match k1 {
                    0 => s.set(&k, Complex64::new(0.5, 0.0))?,
                    _ if k1 % 2 != 0 => s.set(&k, Complex64::new(0.0, -1.0 / (PI * k1 as f64)))?,
                    _ => {}
                }
            }
            return Ok(s);
        }
        analyze(&self.sample(d, g)?)
    }

    /// Distance from x to the set where the function is not continuous.
    pub fn singular_distance(&self, x: &[f64]) -> f64 {
        match *self {
            FSpec::Jump => {
                let a = reduce(x[0]).abs();
                a.min(PI - a)
            }
            FSpec::Spike { width } => (norm_inf(x) - width).abs(),
            FSpec::Ring { radius, width } => (norm_inf(x) - radius).abs().min((norm_inf(x) - radius + width).abs()),
            FSpec::Singular { .. } => norm2(x),
            _ => f64::INFINITY,
        }
    }

    pub fn classify(&self, x: &[f64]) -> PointClass {
        if *self == FSpec::Jump && self.singular_distance(x) < 1e-12 {
            let at_zero = reduce(x[0]).abs() < 1.0;
            let (left, right) = if at_zero { (0.0, 1.0) } else { (1.0, 0.0) };
            return PointClass::Jump { left, right };
        }
        PointClass::Continuity
    }
}

/// The ten functions of the weak-type battery.
pub fn weak_type_battery() -> Vec<FSpec> {
    vec![
        FSpec::Spike { width: 0.05 },
        FSpec::Spike { width: 0.3 },
        FSpec::Jump,
        FSpec::Constant { value: 1.0 },
        FSpec::Bump { radius: 1.0 },
        FSpec::Corner,
        FSpec::TrigPoly { degree: 4, seed: 1 },
        FSpec::TrigPoly { degree: 12, seed: 2 },
        FSpec::Singular { power: 0.5 },
        FSpec::Ring { radius: 2.0, width: 0.2 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for f in weak_type_battery().into_iter().chain([FSpec::CosSeries { degree: 3 }]) {
            assert_eq!(f.to_string().parse::<FSpec>().unwrap(), f);
        }
        assert!(matches!("wavelet".parse::<FSpec>(), Err(SummaError::UnknownTestFunction(_))));
    }

    #[test]
    fn trig_poly_is_real_and_matches_spectrum() {
        let f = FSpec::TrigPoly { degree: 3, seed: 9 };
        let s = f.spectrum(2, 16).unwrap();
        let g = synthesize(&s).unwrap();
        assert!(g.max_imag() < 1e-13);
        let x = g.point(37);
        assert!((f.eval(&x) - g.samples[37].re).abs() < 1e-12);
    }

    #[test]
    fn jump_spectrum_partial_sum_at_zero_is_half() {
        let s = FSpec::Jump.spectrum(1, 64).unwrap();
        let g = synthesize(&s).unwrap();
        assert!((g.samples[32].re - 0.5).abs() < 1e-12);
        assert_eq!(FSpec::Jump.classify(&[0.0]), PointClass::Jump { left: 0.0, right: 1.0 });
    }
}
