use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::theta::ThetaFunction;
use crate::error::{Result, SummaError};
use crate::lattice::Q;

/// Summation region of a kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    EllQ(Q),
    Rectangular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dirichlet,
    Fejer,
    Riesz,
    Cesaro,
    Theta,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Dirichlet => "dirichlet",
            Method::Fejer => "fejer",
            Method::Riesz => "riesz",
            Method::Cesaro => "cesaro",
            Method::Theta => "theta",
        })
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "dirichlet" => Ok(Method::Dirichlet),
            "fejer" => Ok(Method::Fejer),
            "riesz" => Ok(Method::Riesz),
            "cesaro" => Ok(Method::Cesaro),
            "theta" => Ok(Method::Theta),
            other => Err(format!(
                "method must be one of dirichlet, fejer, riesz, cesaro, theta (got '{other}')"
            )),
        }
    }
}

/// Full description of a summability kernel.
///
/// For ℓq regions `n` holds a single radius; for rectangular regions it
/// holds one index per coordinate.
#[derive(Debug, Clone)]
pub struct KernelSpec {
    pub d: usize,
    pub region: Region,
    pub method: Method,
    pub alpha: f64,
    pub gamma_exp: f64,
    pub n: Vec<usize>,
    pub theta: Option<ThetaFunction>,
}

impl KernelSpec {
    fn ellq(d: usize, q: Q, method: Method, n: usize, alpha: f64, gamma_exp: f64) -> Self {
        Self {
            d,
            region: Region::EllQ(q),
            method,
            alpha,
            gamma_exp,
            n: vec![n],
            theta: None,
        }
    }

    pub fn dirichlet(d: usize, q: Q, n: usize) -> Self {
        Self::ellq(d, q, Method::Dirichlet, n, 0.0, 1.0)
    }

    pub fn fejer(d: usize, q: Q, n: usize) -> Self {
        Self::ellq(d, q, Method::Fejer, n, 1.0, 1.0)
    }

    pub fn riesz(d: usize, q: Q, n: usize, alpha: f64, gamma_exp: f64) -> Self {
        Self::ellq(d, q, Method::Riesz, n, alpha, gamma_exp)
    }

    /// Bochner-Riesz: q = γ = 2.
    pub fn bochner_riesz(d: usize, n: usize, alpha: f64) -> Self {
        Self::ellq(d, Q::Two, Method::Riesz, n, alpha, 2.0)
    }

    pub fn cesaro(d: usize, q: Q, n: usize, alpha: f64) -> Self {
        Self::ellq(d, q, Method::Cesaro, n, alpha, 1.0)
    }

    /// ℓq θ-kernel with multiplier θ(‖k‖_q / n).
    pub fn theta_ellq(d: usize, q: Q, n: usize, theta: ThetaFunction) -> Self {
        let mut s = Self::ellq(d, q, Method::Theta, n, 0.0, 1.0);
        s.theta = Some(theta);
        s
    }

    /// Rectangular kernel: product multiplier for the classical methods,
    /// θ(-k_1/n_1, …, -k_d/n_d) for θ.
    pub fn rectangular(method: Method, n: Vec<usize>, alpha: f64, gamma_exp: f64) -> Self {
        Self {
            d: n.len(),
            region: Region::Rectangular,
            method,
            alpha,
            gamma_exp,
            n,
            theta: None,
        }
    }

    pub fn theta_rectangular(n: Vec<usize>, theta: ThetaFunction) -> Self {
        let mut s = Self::rectangular(Method::Theta, n, 0.0, 1.0);
        s.theta = Some(theta);
        s
    }

    /// Same kernel family at a different index.
    pub fn with_n(&self, n: Vec<usize>) -> Self {
        let mut s = self.clone();
        s.n = n;
        s
    }

    /// Largest index component.
    pub fn max_n(&self) -> usize {
        self.n.iter().copied().max().unwrap_or(0)
    }

    /// Per-coordinate indices (the ℓq radius repeated d times).
    pub fn n_per_axis(&self) -> Vec<usize> {
        match self.region {
            Region::EllQ(_) => vec![self.n[0]; self.d],
            Region::Rectangular => self.n.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(SummaError::InvalidSpec(m));
        if self.d == 0 {
            return bad("dimension must be at least 1".into());
        }
        match self.region {
            Region::EllQ(_) if self.n.len() != 1 => {
                return bad(format!("an lq kernel takes one index, got {}", self.n.len()))
            }
            Region::Rectangular if self.n.len() != self.d => {
                return bad(format!("a rectangular kernel in d = {} takes {} indices", self.d, self.d))
            }
            _ => {}
        }
        if self.n.iter().any(|&v| v == 0) {
            return bad("indices must be positive".into());
        }
        if !self.alpha.is_finite() || self.alpha < 0.0 {
            return bad(format!("alpha = {} must be nonnegative", self.alpha));
        }
        match self.method {
            Method::Dirichlet => {
                if self.alpha != 0.0 {
                    return bad("the Dirichlet method corresponds to alpha = 0".into());
                }
            }
            Method::Fejer => {}
            Method::Riesz => {
                if !(self.alpha > 0.0) || !(self.gamma_exp >= 1.0) || !self.gamma_exp.is_finite() {
                    return bad(format!(
                        "riesz requires alpha > 0 and gamma >= 1 (got {}, {})",
                        self.alpha, self.gamma_exp
                    ));
                }
                if self.region == Region::EllQ(Q::Two) && self.gamma_exp.fract() != 0.0 {
                    return bad(format!("q = 2 requires an integer gamma (got {})", self.gamma_exp));
                }
            }
            Method::Cesaro => {
                if self.region == Region::EllQ(Q::Two) {
                    return bad("Cesaro means are defined for q = 1 and q = inf".into());
                }
            }
            Method::Theta => {
                if self.theta.is_none() {
                    return bad("theta method without a theta function".into());
                }
            }
        }
        Ok(())
    }

    /// Validate and build the multiplier m(k).
    pub fn multiplier(&self) -> Result<Multiplier> {
        self.validate()?;
        Multiplier::new(self)
    }
}

/// A prepared multiplier m(k) with the box |k_i| ≤ radii[i] outside which it
/// vanishes or is negligible (below the reported tail bound).
#[derive(Clone)]
pub struct Multiplier {
    eval: Arc<dyn Fn(&[i64]) -> f64 + Send + Sync>,
    pub radii: Vec<i64>,
    /// Upper bound on Σ |m(k)| outside the box.
    pub tail: f64,
    /// Whether the box holds the whole support.
    pub exact_support: bool,
}

const THETA_TRUNCATION: f64 = 1e-8;
const MAX_LATTICE_POINTS: f64 = 2e8;

/// (C, α) ratio table r[m] = A^α_{n-1-m}/A^α_{n-1}, m = 0..=n.
fn cesaro_ratios(n: usize, alpha: f64) -> Vec<f64> {
    // A_{n-1}/A_{n-1-m} = Π_{i=n-m}^{n-1} (α+i)/i
    let mut r = vec![0.0; n + 1];
    r[0] = 1.0;
    for m in 1..n {
        let i = (n - m) as f64;
        r[m] = r[m - 1] * i / (alpha + i);
    }
    r
}

fn riesz_1d(t: f64, alpha: f64, gamma_exp: f64) -> f64 {
    if t >= 1.0 {
        0.0
    } else {
        let base = 1.0 - t.powf(gamma_exp);
        if alpha == 1.0 {
            base
        } else {
            base.powf(alpha)
        }
    }
}

impl Multiplier {
    pub fn eval(&self, k: &[i64]) -> f64 {
        (self.eval)(k)
    }

    fn new(spec: &KernelSpec) -> Result<Self> {
        let d = spec.d;
        let alpha = spec.alpha;
        let gamma_exp = spec.gamma_exp;
        let (eval, radii): (Arc<dyn Fn(&[i64]) -> f64 + Send + Sync>, Vec<i64>) = match (spec.region, spec.method) {
            (Region::EllQ(q), Method::Theta) => {
                let n = spec.n[0] as f64;
                let th = spec.theta.clone().expect("validated");
                let radius = theta_radius(&th, &vec![n; d], false)?;
                let th2 = th.clone();
                let r = (radius * n).floor() as i64;
                return Ok(Self {
                    eval: Arc::new(move |k: &[i64]| th2.profile(q.norm(k) / n)),
                    radii: vec![r; d],
                    tail: th.lattice_tail_bound(&vec![n; d], radius, false),
                    exact_support: th.support_radius().is_some(),
                });
            }
            (Region::EllQ(q), method) => {
                let n = spec.n[0] as i64;
                let nf = n as f64;
                let f: Arc<dyn Fn(&[i64]) -> f64 + Send + Sync> = match method {
                    Method::Dirichlet => Arc::new(move |k: &[i64]| if q.in_ball(k, n) { 1.0 } else { 0.0 }),
                    Method::Fejer => Arc::new(move |k: &[i64]| {
                        if q.in_ball(k, n) {
                            1.0 - q.norm(k) / nf
                        } else {
                            0.0
                        }
                    }),
                    Method::Riesz => {
                        if q == Q::Two && gamma_exp.fract() == 0.0 && (gamma_exp as i64) % 2 == 0 {
                            // exact rational power of the squared norm
                            let half = gamma_exp as i32 / 2;
                            Arc::new(move |k: &[i64]| {
                                let u = q.int_norm(k);
                                if u >= n * n {
                                    return 0.0;
                                }
                                let base = 1.0 - (u as f64 / (nf * nf)).powi(half);
                                if alpha == 1.0 {
                                    base
                                } else {
                                    base.powf(alpha)
                                }
                            })
                        } else {
                            Arc::new(move |k: &[i64]| {
                                if q.in_ball(k, n) {
                                    riesz_1d(q.norm(k) / nf, alpha, gamma_exp)
                                } else {
                                    0.0
                                }
                            })
                        }
                    }
                    Method::Cesaro => {
                        let table = cesaro_ratios(n as usize, alpha);
                        Arc::new(move |k: &[i64]| {
                            let m = q.int_norm(k);
                            if m <= n {
                                table[m as usize]
                            } else {
                                0.0
                            }
                        })
                    }
                    Method::Theta => unreachable!(),
                };
                (f, vec![n; d])
            }
            (Region::Rectangular, Method::Theta) => {
                let n: Vec<f64> = spec.n.iter().map(|&v| v as f64).collect();
                let th = spec.theta.clone().expect("validated");
                let radius = theta_radius(&th, &n, true)?;
                let radii = n.iter().map(|v| (radius * v).floor() as i64).collect();
                let th2 = th.clone();
                let n2 = n.clone();
                return Ok(Self {
                    eval: Arc::new(move |k: &[i64]| {
                        let t: Vec<f64> = k.iter().zip(&n2).map(|(&kj, nj)| -(kj as f64) / nj).collect();
                        th2.eval(&t)
                    }),
                    radii,
                    tail: th.lattice_tail_bound(&n, radius, true),
                    exact_support: th.support_radius().is_some(),
                });
            }
            (Region::Rectangular, method) => {
                let n: Vec<i64> = spec.n.iter().map(|&v| v as i64).collect();
                let tables: Vec<Vec<f64>> = n
                    .iter()
                    .map(|&nj| {
                        (0..=nj)
                            .map(|m| {
                                let t = m as f64 / nj as f64;
                                match method {
                                    Method::Dirichlet => 1.0,
                                    Method::Fejer => 1.0 - t,
                                    Method::Riesz => riesz_1d(t, alpha, gamma_exp),
                                    Method::Cesaro => cesaro_ratios(nj as usize, alpha)[m as usize],
                                    Method::Theta => unreachable!(),
                                }
                            })
                            .collect()
                    })
                    .collect();
                let n2 = n.clone();
                (
                    Arc::new(move |k: &[i64]| {
                        let mut v = 1.0;
                        for (j, &kj) in k.iter().enumerate() {
                            let a = kj.abs();
                            if a > n2[j] {
                                return 0.0;
                            }
                            v *= tables[j][a as usize];
                        }
                        v
                    }),
                    n,
                )
            }
        };
        Ok(Self {
            eval,
            radii,
            tail: 0.0,
            exact_support: true,
        })
    }
}

/// Smallest radius R (in units of n) whose lattice tail is below the
/// truncation threshold.
fn theta_radius(th: &ThetaFunction, n: &[f64], tensor_bound: bool) -> Result<f64> {
    if let Some(c) = th.support_radius() {
        return Ok(c);
    }
    let mut r = 1.0;
    loop {
        let points: f64 = n.iter().map(|v| 2.0 * r * v + 1.0).product();
        if points > MAX_LATTICE_POINTS {
            let tail = th.lattice_tail_bound(n, r, tensor_bound);
            return Err(SummaError::NonConvergence {
                what: "theta lattice truncation",
                tail,
                limit: THETA_TRUNCATION,
            });
        }
        let tail = th.lattice_tail_bound(n, r, tensor_bound);
        if tail < THETA_TRUNCATION {
            return Ok(r);
        }
        r += if r < 16.0 { 1.0 } else { r / 8.0 };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rules() {
        assert!(KernelSpec::riesz(2, Q::Two, 4, 1.0, 1.5).validate().is_err());
        assert!(KernelSpec::riesz(2, Q::Two, 4, 1.0, 2.0).validate().is_ok());
        assert!(KernelSpec::riesz(1, Q::One, 4, 0.0, 1.0).validate().is_err());
        assert!(KernelSpec::riesz(1, Q::One, 4, 1.0, 0.5).validate().is_err());
        assert!(KernelSpec::cesaro(2, Q::Two, 4, 1.0).validate().is_err());
        assert!(KernelSpec::dirichlet(2, Q::One, 0).validate().is_err());
        let mut s = KernelSpec::dirichlet(1, Q::One, 3);
        s.alpha = 1.0;
        assert!(s.validate().is_err());
        let mut t = KernelSpec::fejer(1, Q::One, 3);
        t.method = Method::Theta;
        assert!(t.validate().is_err());
        assert!(KernelSpec::rectangular(Method::Fejer, vec![3, 5], 1.0, 1.0).validate().is_ok());
    }

    #[test]
    fn fejer_and_riesz_one_one_multipliers_coincide() {
        let f = KernelSpec::fejer(2, Q::One, 7).multiplier().unwrap();
        let r = KernelSpec::riesz(2, Q::One, 7, 1.0, 1.0).multiplier().unwrap();
        crate::lattice::for_each_in_box(&[8, 8], |k| assert_eq!(f.eval(k), r.eval(k)));
    }

    #[test]
    fn cesaro_one_is_fejer() {
        let n = 9;
        let c = KernelSpec::cesaro(1, Q::Inf, n, 1.0).multiplier().unwrap();
        for k in 0..=10i64 {
            let want = if k <= n as i64 { 1.0 - k as f64 / n as f64 } else { 0.0 };
            assert!((c.eval(&[k]) - want).abs() < 1e-15);
        }
    }

    #[test]
    fn weierstrass_truncation_reaches_threshold() {
        let th = ThetaFunction::weierstrass(1.0).unwrap();
        let m = KernelSpec::theta_ellq(1, Q::Inf, 8, th).multiplier().unwrap();
        assert!(m.tail < 1e-8);
        assert!(!m.exact_support);
    }
}
