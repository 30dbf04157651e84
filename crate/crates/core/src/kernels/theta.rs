//! Summation functions θ and their catalog.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Result, SummaError};
use crate::special::gamma;

type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type MultiEval = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Identity of a catalog entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ThetaCatalog {
    Fejer,
    Riesz { alpha: f64, gamma: f64 },
    DeLaValleePoussin,
    JacksonDlvp,
    PiecewisePoly { knots: Vec<f64>, values: Vec<f64> },
    Rogosinski { j: u32 },
    Weierstrass { gamma: f64 },
    ExpComposite { q: f64, gamma: f64 },
    PicardBessel { alpha: f64, gamma: f64 },
    RadialRiesz { alpha: f64, gamma: f64 },
    RadialWeierstrass { p: f64 },
    Custom(String),
}

impl fmt::Display for ThetaCatalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaCatalog::Fejer => write!(f, "fejer"),
            ThetaCatalog::Riesz { alpha, gamma } => write!(f, "riesz({alpha},{gamma})"),
            ThetaCatalog::DeLaValleePoussin => write!(f, "de-la-vallee-poussin"),
            ThetaCatalog::JacksonDlvp => write!(f, "jackson-dlvp"),
            ThetaCatalog::PiecewisePoly { knots, values } => {
                let parts: Vec<String> =
                    knots.iter().zip(values).map(|(a, b)| format!("{a}:{b}")).collect();
                write!(f, "piecewise-poly({})", parts.join(","))
            }
            ThetaCatalog::Rogosinski { j } => write!(f, "rogosinski({j})"),
            ThetaCatalog::Weierstrass { gamma } => write!(f, "weierstrass({gamma})"),
            ThetaCatalog::ExpComposite { q, gamma } => write!(f, "exp-composite({q},{gamma})"),
            ThetaCatalog::PicardBessel { alpha, gamma } => {
                write!(f, "picard-bessel({alpha},{gamma})")
            }
            ThetaCatalog::RadialRiesz { alpha, gamma } => write!(f, "radial-riesz({alpha},{gamma})"),
            ThetaCatalog::RadialWeierstrass { p } => write!(f, "radial-weierstrass({p})"),
            ThetaCatalog::Custom(name) => write!(f, "{name}"),
        }
    }
}

/// How the one-variable profile extends to R^d.
#[derive(Clone)]
enum Shape {
    /// θ(t) = Π φ(t_j)
    Tensor,
    /// θ(t) = φ(‖t‖_2)
    Radial,
    /// θ(t) = h(Σ |t_j|^r), with φ(t) = h(|t|^r)
    PowerSum { r: f64, h: Profile },
    General(MultiEval),
}

/// Majorant class of a monotone envelope, used for tail bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// vanishes beyond the radius
    Compact(f64),
    /// ≤ a·exp(-b |t|^p)
    Exp { a: f64, b: f64, p: f64 },
    /// ≤ a·|t|^{-s}
    Power { a: f64, s: f64 },
    Unknown,
}

/// A summation function θ together with what is known about it.
#[derive(Clone)]
pub struct ThetaFunction {
    pub catalog_id: ThetaCatalog,
    profile: Profile,
    shape: Shape,
    ft: Option<Profile>,
    ft_decay: Decay,
    decay: Decay,
    monotone: bool,
}

impl fmt::Debug for ThetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThetaFunction")
            .field("catalog_id", &self.catalog_id)
            .field("decay", &self.decay)
            .field("monotone", &self.monotone)
            .finish()
    }
}

fn sinc_half(x: f64) -> f64 {
    // sin(x/2)/(x/2)
    if x.abs() < 1e-6 {
        1.0 - x * x / 24.0
    } else {
        (0.5 * x).sin() / (0.5 * x)
    }
}

fn fejer_ft(x: f64) -> f64 {
    let s = sinc_half(x);
    s * s / (2.0 * PI)
}

/// `∫_T^∞ exp(-b t^p) dt` bounded through the upper incomplete gamma function.
pub(crate) fn exp_tail_integral(b: f64, p: f64, t: f64) -> f64 {
    let s = 1.0 / p;
    let x = b * t.max(0.0).powf(p);
    let upper_gamma = if s <= 1.0 {
        if x == 0.0 {
            gamma(s).unwrap_or(f64::INFINITY)
        } else {
            x.powf(s - 1.0) * (-x).exp()
        }
    } else if x > 2.0 * (s - 1.0) {
        x.powf(s - 1.0) * (-x).exp() / (1.0 - (s - 1.0) / x)
    } else {
        gamma(s).unwrap_or(f64::INFINITY)
    };
    s * b.powf(-s) * upper_gamma
}

impl Decay {
    fn envelope(&self, t: f64) -> f64 {
        match *self {
            Decay::Compact(c) => {
                if t > c {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            Decay::Exp { a, b, p } => a * (-b * t.abs().powf(p)).exp(),
            Decay::Power { a, s } => a * t.abs().powf(-s),
            Decay::Unknown => f64::INFINITY,
        }
    }

    /// Upper bound for `∫_T^∞ envelope`.
    fn tail_integral(&self, t: f64) -> f64 {
        match *self {
            Decay::Compact(c) => {
                if t >= c {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            Decay::Exp { a, b, p } => a * exp_tail_integral(b, p, t),
            Decay::Power { a, s } => {
                if s <= 1.0 || t <= 0.0 {
                    f64::INFINITY
                } else {
                    a * t.powf(1.0 - s) / (s - 1.0)
                }
            }
            Decay::Unknown => f64::INFINITY,
        }
    }

    /// Envelope of `φ^{1/e}` given the envelope of φ (φ ≤ 1 assumed).
    fn root(&self, e: f64) -> Decay {
        match *self {
            Decay::Exp { a, b, p } => Decay::Exp {
                a: a.powf(1.0 / e),
                b: b / e,
                p,
            },
            Decay::Power { a, s } => Decay::Power {
                a: a.powf(1.0 / e),
                s: s / e,
            },
            other => other,
        }
    }
}

/// Upper bound for Σ_{k > K} ψ(k/n) with ψ = |φ|^{1/e} monotone beyond K/n.
fn lattice_tail_1d(phi: &Profile, decay: Decay, e: f64, n: f64, k0: i64) -> f64 {
    let env = decay.root(e);
    let psi = |t: f64| phi(t).abs().powf(1.0 / e);
    if let Decay::Compact(c) = decay {
        let last = (c * n).floor() as i64;
        let mut acc = 0.0;
        for k in (k0 + 1)..=last {
            acc += psi(k as f64 / n);
        }
        return acc;
    }
    let mut acc = 0.0;
    let mut k = k0 + 1;
    let cap = k0 + 1 + 2_000_000;
    loop {
        // explicit terms in chunks, then a monotone integral bound for the rest
        for _ in 0..256 {
            acc += psi(k as f64 / n);
            k += 1;
        }
        let rest = n * env.tail_integral((k - 1) as f64 / n);
        if rest <= 1e-3 * acc || rest < 1e-300 || k >= cap {
            return acc + rest;
        }
    }
}

impl ThetaFunction {
    fn build(catalog_id: ThetaCatalog, profile: Profile, shape: Shape, decay: Decay, monotone: bool) -> Self {
        Self {
            catalog_id,
            profile,
            shape,
            ft: None,
            ft_decay: Decay::Unknown,
            decay,
            monotone,
        }
    }

    fn with_ft(mut self, ft: Profile, ft_decay: Decay) -> Self {
        self.ft = Some(ft);
        self.ft_decay = ft_decay;
        self
    }

    /// Attach a known one-variable transform and an envelope of its modulus.
    pub fn with_fourier_transform<F>(self, ft: F, ft_decay: Decay) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.with_ft(Arc::new(ft), ft_decay)
    }

    /// θ(t) = (1 - |t|)_+
    pub fn fejer() -> Self {
        Self::build(
            ThetaCatalog::Fejer,
            Arc::new(|t: f64| (1.0 - t.abs()).max(0.0)),
            Shape::Tensor,
            Decay::Compact(1.0),
            true,
        )
        .with_ft(Arc::new(fejer_ft), Decay::Power { a: 2.0 / PI, s: 2.0 })
    }

    /// θ(t) = (1 - |t|^γ)_+^α
    pub fn riesz(alpha: f64, gamma_exp: f64) -> Result<Self> {
        if !(alpha > 0.0 && gamma_exp >= 1.0) {
            return Err(SummaError::InvalidSpec(format!(
                "riesz theta needs alpha > 0 and gamma >= 1 (got {alpha}, {gamma_exp})"
            )));
        }
        if alpha == 1.0 && gamma_exp == 1.0 {
            let mut f = Self::fejer();
            f.catalog_id = ThetaCatalog::Riesz { alpha, gamma: gamma_exp };
            return Ok(f);
        }
        Ok(Self::build(
            ThetaCatalog::Riesz { alpha, gamma: gamma_exp },
            Arc::new(move |t: f64| {
                let a = t.abs();
                if a < 1.0 {
                    (1.0 - a.powf(gamma_exp)).powf(alpha)
                } else {
                    0.0
                }
            }),
            Shape::Tensor,
            Decay::Compact(1.0),
            true,
        ))
    }

    pub fn de_la_vallee_poussin() -> Self {
        Self::build(
            ThetaCatalog::DeLaValleePoussin,
            Arc::new(|t: f64| {
                let a = t.abs();
                if a <= 0.5 {
                    1.0
                } else if a <= 1.0 {
                    2.0 - 2.0 * a
                } else {
                    0.0
                }
            }),
            Shape::Tensor,
            Decay::Compact(1.0),
            true,
        )
        // θ = 2(1-|t|)_+ - (1-2|t|)_+
        .with_ft(
            Arc::new(|x: f64| 2.0 * fejer_ft(x) - 0.5 * fejer_ft(0.5 * x)),
            Decay::Power { a: 8.0 / PI, s: 2.0 },
        )
    }

    pub fn jackson_dlvp() -> Self {
        Self::build(
            ThetaCatalog::JacksonDlvp,
            Arc::new(|t: f64| {
                let a = t.abs();
                if a <= 1.0 {
                    1.0 - 1.5 * a * a + 0.75 * a * a * a
                } else if a <= 2.0 {
                    (2.0 - a).powi(3) / 4.0
                } else {
                    0.0
                }
            }),
            Shape::Tensor,
            Decay::Compact(2.0),
            true,
        )
        // 3/2 times the centred cubic B-spline
        .with_ft(
            Arc::new(|x: f64| 1.5 * sinc_half(x).powi(4) / (2.0 * PI)),
            Decay::Power { a: 12.0 / PI, s: 4.0 },
        )
    }

    /// Even, piecewise linear θ through (knots[i], values[i]) with knots[0] = 0,
    /// values[0] = 1 and values[last] = 0.
    pub fn piecewise_poly(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let ok = knots.len() >= 2
            && knots.len() == values.len()
            && knots[0] == 0.0
            && values[0] == 1.0
            && *values.last().unwrap() == 0.0
            && knots.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(SummaError::InvalidSpec(
                "piecewise-poly needs increasing knots from 0, value 1 at 0 and 0 at the last knot"
                    .into(),
            ));
        }
        let c = *knots.last().unwrap();
        let monotone = values.windows(2).all(|w| w[0] >= w[1]) && values.iter().all(|&v| v >= 0.0);
        let (k2, v2) = (knots.clone(), values.clone());
        Ok(Self::build(
            ThetaCatalog::PiecewisePoly { knots, values },
            Arc::new(move |t: f64| {
                let a = t.abs();
                if a >= c {
                    return 0.0;
                }
                let i = k2.partition_point(|&k| k <= a) - 1;
                let w = (a - k2[i]) / (k2[i + 1] - k2[i]);
                v2[i] + w * (v2[i + 1] - v2[i])
            }),
            Shape::Tensor,
            Decay::Compact(c),
            monotone,
        ))
    }

    /// θ(t) = cos(πt/2) on |t| ≤ 1 + 2j.
    pub fn rogosinski(j: u32) -> Self {
        let l = 1.0 + 2.0 * j as f64;
        let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
        Self::build(
            ThetaCatalog::Rogosinski { j },
            Arc::new(move |t: f64| if t.abs() <= l { (0.5 * PI * t).cos() } else { 0.0 }),
            Shape::Tensor,
            Decay::Compact(l),
            j == 0,
        )
        .with_ft(
            Arc::new(move |x: f64| {
                let den = x * x - 0.25 * PI * PI;
                if den.abs() > 0.1 {
                    sign * (l * x).cos() / (2.0 * den)
                } else {
                    let term = |a: f64| if a.abs() < 1e-12 { l } else { (a * l).sin() / a };
                    (term(x - 0.5 * PI) + term(x + 0.5 * PI)) / (2.0 * PI)
                }
            }),
            Decay::Power { a: 1.0, s: 2.0 },
        )
    }

    /// θ(t) = exp(-|t|^γ); γ = 1 gives the Abel means.
    pub fn weierstrass(gamma_exp: f64) -> Result<Self> {
        if !(gamma_exp >= 1.0) {
            return Err(SummaError::InvalidSpec(format!("weierstrass needs gamma >= 1 (got {gamma_exp})")));
        }
        let th = Self::build(
            ThetaCatalog::Weierstrass { gamma: gamma_exp },
            Arc::new(move |t: f64| (-t.abs().powf(gamma_exp)).exp()),
            Shape::Tensor,
            Decay::Exp { a: 1.0, b: 1.0, p: gamma_exp },
            true,
        );
        Ok(if gamma_exp == 1.0 {
            th.with_ft(
                Arc::new(|x: f64| 1.0 / (PI * (1.0 + x * x))),
                Decay::Power { a: 1.0 / PI, s: 2.0 },
            )
        } else if gamma_exp == 2.0 {
            th.with_ft(
                Arc::new(|x: f64| (-0.25 * x * x).exp() / (2.0 * PI.sqrt())),
                Decay::Exp { a: 0.5 / PI.sqrt(), b: 0.25, p: 2.0 },
            )
        } else {
            th
        })
    }

    /// θ(t) = exp(-π t^2), which is its own transform up to the (2π)^{-1} factor.
    pub fn gaussian() -> Self {
        Self::build(
            ThetaCatalog::Custom("gaussian".into()),
            Arc::new(|t: f64| (-PI * t * t).exp()),
            Shape::Tensor,
            Decay::Exp { a: 1.0, b: PI, p: 2.0 },
            true,
        )
        .with_ft(
            Arc::new(|x: f64| (-x * x / (4.0 * PI)).exp() / (2.0 * PI)),
            Decay::Exp { a: 0.5 / PI, b: 0.25 / PI, p: 2.0 },
        )
    }

    /// θ(t) = exp(-(1 + ‖t‖_q^q)^γ). Note θ(0) = e^{-1}.
    pub fn exp_composite(q: f64, gamma_exp: f64) -> Result<Self> {
        if !(q >= 1.0 && gamma_exp > 0.0) {
            return Err(SummaError::InvalidSpec(format!(
                "exp-composite needs q >= 1 and gamma > 0 (got {q}, {gamma_exp})"
            )));
        }
        let h: Profile = Arc::new(move |s: f64| (-(1.0 + s).powf(gamma_exp)).exp());
        let h1 = h.clone();
        Ok(Self::build(
            ThetaCatalog::ExpComposite { q, gamma: gamma_exp },
            Arc::new(move |t: f64| h1(t.abs().powf(q))),
            Shape::PowerSum { r: q, h },
            // (1+u)^γ ≥ u^γ
            Decay::Exp { a: 1.0, b: 1.0, p: q * gamma_exp },
            true,
        ))
    }

    /// θ(t) = (1 + ‖t‖_γ^γ)^{-α}, admissible in dimension d when αγ > d.
    pub fn picard_bessel(alpha: f64, gamma_exp: f64) -> Result<Self> {
        if !(alpha > 0.0 && gamma_exp >= 1.0 && alpha * gamma_exp > 1.0) {
            return Err(SummaError::InvalidSpec(format!(
                "picard-bessel needs alpha > 0, gamma >= 1, alpha*gamma > d (got {alpha}, {gamma_exp})"
            )));
        }
        let h: Profile = Arc::new(move |s: f64| (1.0 + s).powf(-alpha));
        let h1 = h.clone();
        let th = Self::build(
            ThetaCatalog::PicardBessel { alpha, gamma: gamma_exp },
            Arc::new(move |t: f64| h1(t.abs().powf(gamma_exp))),
            Shape::PowerSum { r: gamma_exp, h },
            Decay::Power { a: 1.0, s: alpha * gamma_exp },
            true,
        );
        Ok(if alpha == 1.0 && gamma_exp == 2.0 {
            th.with_ft(
                Arc::new(|x: f64| 0.5 * (-x.abs()).exp()),
                Decay::Exp { a: 0.5, b: 1.0, p: 1.0 },
            )
        } else {
            th
        })
    }

    /// θ(t) = (1 - ‖t‖_2^γ)_+^α
    pub fn radial_riesz(alpha: f64, gamma_exp: f64) -> Result<Self> {
        if !(alpha > 0.0 && gamma_exp >= 1.0) {
            return Err(SummaError::InvalidSpec(format!(
                "radial riesz needs alpha > 0 and gamma >= 1 (got {alpha}, {gamma_exp})"
            )));
        }
        Ok(Self::build(
            ThetaCatalog::RadialRiesz { alpha, gamma: gamma_exp },
            Arc::new(move |t: f64| {
                let a = t.abs();
                if a < 1.0 {
                    (1.0 - a.powf(gamma_exp)).powf(alpha)
                } else {
                    0.0
                }
            }),
            Shape::Radial,
            Decay::Compact(1.0),
            true,
        ))
    }

    /// θ(t) = exp(-‖t‖_2^p)
    pub fn radial_weierstrass(p: f64) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(SummaError::InvalidSpec(format!("radial weierstrass needs p >= 1 (got {p})")));
        }
        Ok(Self::build(
            ThetaCatalog::RadialWeierstrass { p },
            Arc::new(move |t: f64| (-t.abs().powf(p)).exp()),
            Shape::Radial,
            Decay::Exp { a: 1.0, b: 1.0, p },
            true,
        ))
    }

    /// A user-supplied even profile φ extended as the tensor product Π φ(t_j).
    pub fn custom_tensor<P>(name: &str, profile: P, decay: Decay, monotone: bool) -> Self
    where
        P: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::build(ThetaCatalog::Custom(name.to_string()), Arc::new(profile), Shape::Tensor, decay, monotone)
    }

    /// A user-supplied θ of d variables with a one-variable restriction
    /// `profile` (used for ℓq methods) and a declared envelope.
    pub fn custom<P, M>(name: &str, profile: P, eval: M, decay: Decay, monotone: bool) -> Self
    where
        P: Fn(f64) -> f64 + Send + Sync + 'static,
        M: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::build(
            ThetaCatalog::Custom(name.to_string()),
            Arc::new(profile),
            Shape::General(Arc::new(eval)),
            decay,
            monotone,
        )
    }

    /// Parse a catalog id such as `fejer`, `riesz(1,2)`, `weierstrass(1)`,
    /// `rogosinski(0)`, `piecewise-poly(0:1,0.5:0.8,1:0)`.
    pub fn from_id(id: &str) -> Result<Self> {
        let id = id.trim();
        let (name, args) = match id.find('(') {
            Some(i) if id.ends_with(')') => (&id[..i], &id[i + 1..id.len() - 1]),
            Some(_) => return Err(SummaError::InvalidSpec(format!("malformed theta id '{id}'"))),
            None => (id, ""),
        };
        let nums = || -> Result<Vec<f64>> {
            if args.is_empty() {
                return Ok(Vec::new());
            }
            args.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| SummaError::InvalidSpec(format!("bad number '{s}' in '{id}'")))
                })
                .collect()
        };
        let want = |v: Vec<f64>, k: usize| -> Result<Vec<f64>> {
            if v.len() == k {
                Ok(v)
            } else {
                Err(SummaError::InvalidSpec(format!("'{name}' takes {k} parameter(s)")))
            }
        };
        match name {
            "fejer" => Ok(Self::fejer()),
            "gaussian" => Ok(Self::gaussian()),
            "de-la-vallee-poussin" | "dlvp" => Ok(Self::de_la_vallee_poussin()),
            "jackson-dlvp" => Ok(Self::jackson_dlvp()),
            "riesz" => {
                let v = want(nums()?, 2)?;
                Self::riesz(v[0], v[1])
            }
            "rogosinski" => {
                let v = want(nums()?, 1)?;
                if v[0] < 0.0 || v[0].fract() != 0.0 {
                    return Err(SummaError::InvalidSpec("rogosinski index must be a natural number".into()));
                }
                Ok(Self::rogosinski(v[0] as u32))
            }
            "weierstrass" => {
                let v = if args.is_empty() { vec![1.0] } else { want(nums()?, 1)? };
                Self::weierstrass(v[0])
            }
            "exp-composite" => {
                let v = want(nums()?, 2)?;
                Self::exp_composite(v[0], v[1])
            }
            "picard-bessel" => {
                let v = want(nums()?, 2)?;
                Self::picard_bessel(v[0], v[1])
            }
            "radial-riesz" => {
                let v = want(nums()?, 2)?;
                Self::radial_riesz(v[0], v[1])
            }
            "radial-weierstrass" => {
                let v = if args.is_empty() { vec![1.0] } else { want(nums()?, 1)? };
                Self::radial_weierstrass(v[0])
            }
            "piecewise-poly" => {
                let mut knots = Vec::new();
                let mut values = Vec::new();
                for pair in args.split(',') {
                    let (a, b) = pair
                        .split_once(':')
                        .ok_or_else(|| SummaError::InvalidSpec(format!("bad knot '{pair}'")))?;
                    let parse = |s: &str| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|_| SummaError::InvalidSpec(format!("bad knot '{pair}'")))
                    };
                    knots.push(parse(a)?);
                    values.push(parse(b)?);
                }
                Self::piecewise_poly(knots, values)
            }
            _ => Err(SummaError::InvalidSpec(format!("unknown theta catalog id '{id}'"))),
        }
    }

    /// The one-variable profile φ (θ on R, or the radial profile).
    pub fn profile(&self, t: f64) -> f64 {
        (self.profile)(t)
    }

    /// θ on R^d.
    pub fn eval(&self, t: &[f64]) -> f64 {
        match &self.shape {
            Shape::Tensor => t.iter().map(|&x| (self.profile)(x)).product(),
            Shape::Radial => (self.profile)(t.iter().map(|x| x * x).sum::<f64>().sqrt()),
            Shape::PowerSum { r, h } => h(t.iter().map(|x| x.abs().powf(*r)).sum()),
            Shape::General(f) => f(t),
        }
    }

    pub fn is_tensor(&self) -> bool {
        matches!(self.shape, Shape::Tensor)
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    /// Support radius of the profile, `None` when unbounded.
    pub fn support_radius(&self) -> Option<f64> {
        match self.decay {
            Decay::Compact(c) => Some(c),
            _ => None,
        }
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    pub fn has_fourier_transform(&self) -> bool {
        self.ft.is_some()
    }

    /// One-variable transform φ^(x) = (2π)^{-1} ∫ φ(t) e^{-ixt} dt.
    pub fn fourier_transform_1d(&self, x: f64) -> Option<f64> {
        self.ft.as_ref().map(|f| f(x))
    }

    pub(crate) fn ft_decay(&self) -> Decay {
        self.ft_decay
    }

    /// θ^ on R^d for tensor-type θ.
    pub fn fourier_transform(&self, x: &[f64]) -> Option<f64> {
        if !self.is_tensor() {
            return None;
        }
        let f = self.ft.as_ref()?;
        Some(x.iter().map(|&v| f(v)).product())
    }

    /// Exponent e such that θ(t) ≤ Π_j φ(|t_j|)^{1/e}: 1 for tensor θ and
    /// d otherwise, using θ(t) ≤ φ(‖t‖_∞) and φ(max) ≤ Π φ^{1/d}.
    fn root_exponent(&self, d: usize) -> f64 {
        if self.is_tensor() {
            1.0
        } else {
            d as f64
        }
    }

    /// Upper bound on Σ_{k ∉ box} |θ(k_1/n_1, …, k_d/n_d)| where the box is
    /// |k_j| ≤ radius·n_j. For ℓq methods pass `tensor_bound = false`.
    pub fn lattice_tail_bound(&self, n: &[f64], radius: f64, tensor_bound: bool) -> f64 {
        let d = n.len();
        let e = if tensor_bound { self.root_exponent(d) } else { d as f64 };
        if let Decay::Compact(c) = self.decay {
            if radius >= c {
                return 0.0;
            }
        }
        if self.decay == Decay::Unknown {
            return f64::INFINITY;
        }
        let psi0 = self.profile(0.0).abs().powf(1.0 / e);
        let mut full = Vec::with_capacity(d);
        let mut tails = Vec::with_capacity(d);
        for &nj in n {
            let s = psi0 + 2.0 * lattice_tail_1d(&self.profile, self.decay, e, nj, 0);
            let k0 = (radius * nj).floor() as i64;
            full.push(s);
            tails.push(2.0 * lattice_tail_1d(&self.profile, self.decay, e, nj, k0));
        }
        telescoped_tail(&full, &tails)
    }

    /// Upper bound on the Wiener amalgam tail Σ_{‖k‖_∞ > R} sup_{[0,1)^d + k} |θ| in R^d.
    pub fn wiener_tail_bound(&self, radius: usize, d: usize) -> f64 {
        let r = radius as f64;
        if let Decay::Compact(c) = self.decay {
            if r >= c {
                return 0.0;
            }
        }
        if self.decay == Decay::Unknown {
            return f64::INFINITY;
        }
        let e = self.root_exponent(d);
        let psi = |t: f64| self.profile(t).abs().powf(1.0 / e);
        // 1-D cells [k, k+1): sup is ψ(k) for k ≥ 0 and ψ(|k|-1) for k < 0
        let beyond = lattice_tail_1d(&self.profile, self.decay, e, 1.0, radius as i64);
        let tail1 = psi(r) + 2.0 * beyond;
        let total1 = 2.0 * psi(0.0) + 2.0 * lattice_tail_1d(&self.profile, self.decay, e, 1.0, 0);
        telescoped_tail(&vec![total1; d], &vec![tail1; d])
    }

    /// Envelope of |φ| at t.
    pub fn envelope(&self, t: f64) -> f64 {
        self.decay.envelope(t)
    }
}

/// Π S_j - Π (S_j - T_j) without cancellation.
pub(crate) fn telescoped_tail(full: &[f64], tails: &[f64]) -> f64 {
    let mut acc = 0.0;
    for j in 0..full.len() {
        let mut term = tails[j];
        for (i, (&s, &t)) in full.iter().zip(tails).enumerate() {
            if i < j {
                term *= s - t;
            } else if i > j {
                term *= s;
            }
        }
        acc += term;
    }
    acc
}

/// Upper bound on Σ_{|k| > R} |2π n φ^(n(x + 2πk))| for |x| ≤ π.
pub(crate) fn periodization_tail_1d(decay: Decay, n: f64, radius: usize) -> f64 {
    let r = radius as f64;
    if radius == 0 {
        return f64::INFINITY;
    }
    match decay {
        Decay::Power { a, s } => {
            if s <= 1.0 {
                return f64::INFINITY;
            }
            // |x + 2πk| ≥ π(2|k| - 1); compare the sum with an integral
            4.0 * PI * a * n.powf(1.0 - s) * PI.powf(-s) * (2.0 * r - 1.0).max(1.0).powf(1.0 - s)
                / (2.0 * (s - 1.0))
        }
        Decay::Exp { a, b, p } => {
            // terms decrease in k, so the sum from R+1 is below the integral from R
            let from = n * PI * (2.0 * r - 1.0);
            2.0 * a * exp_tail_integral(b, p, from)
        }
        Decay::Compact(c) => {
            if n * PI * (2.0 * r - 1.0) >= c {
                0.0
            } else {
                f64::INFINITY
            }
        }
        Decay::Unknown => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog() -> Vec<ThetaFunction> {
        vec![
            ThetaFunction::fejer(),
            ThetaFunction::riesz(2.0, 1.5).unwrap(),
            ThetaFunction::de_la_vallee_poussin(),
            ThetaFunction::jackson_dlvp(),
            ThetaFunction::piecewise_poly(vec![0.0, 0.5, 1.0], vec![1.0, 0.75, 0.0]).unwrap(),
            ThetaFunction::rogosinski(0),
            ThetaFunction::rogosinski(2),
            ThetaFunction::weierstrass(1.0).unwrap(),
            ThetaFunction::weierstrass(2.0).unwrap(),
            ThetaFunction::picard_bessel(1.0, 2.0).unwrap(),
            ThetaFunction::radial_riesz(1.0, 2.0).unwrap(),
            ThetaFunction::radial_weierstrass(2.0).unwrap(),
        ]
    }

    #[test]
    fn catalog_entries_are_one_at_origin_and_even() {
        for th in catalog() {
            assert_eq!(th.eval(&[0.0, 0.0]), 1.0, "{}", th.catalog_id);
            for t in [0.1, 0.37, 0.9, 1.4, 2.5] {
                let a = th.eval(&[t, -0.2]);
                let b = th.eval(&[-t, 0.2]);
                assert!((a - b).abs() < 1e-15, "{}", th.catalog_id);
            }
        }
    }

    #[test]
    fn exp_composite_is_e_inverse_at_origin() {
        let th = ThetaFunction::exp_composite(2.0, 2.0).unwrap();
        assert!((th.eval(&[0.0, 0.0]) - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn catalog_ids_round_trip() {
        for th in catalog() {
            let id = th.catalog_id.to_string();
            let back = ThetaFunction::from_id(&id).unwrap();
            assert_eq!(back.catalog_id, th.catalog_id, "{id}");
        }
        assert!(ThetaFunction::from_id("nonsense").is_err());
        assert!(ThetaFunction::from_id("riesz(1)").is_err());
    }

    /// Quadrature oracle for φ^(x) = (1/π)∫_0^∞ φ(t) cos(xt) dt.
    fn ft_oracle(th: &ThetaFunction, x: f64, upper: f64) -> f64 {
        crate::numeric::composite_gl(0.0, upper, (upper * 8.0).ceil() as usize + 64, |t| {
            th.profile(t) * (x * t).cos()
        }) / PI
    }

    #[test]
    fn known_transforms_match_quadrature() {
        let cases = [
            (ThetaFunction::fejer(), 1.0),
            (ThetaFunction::de_la_vallee_poussin(), 1.0),
            (ThetaFunction::jackson_dlvp(), 2.0),
            (ThetaFunction::rogosinski(1), 3.0),
            (ThetaFunction::weierstrass(2.0).unwrap(), 12.0),
            (ThetaFunction::gaussian(), 8.0),
        ];
        for (th, upper) in cases {
            for x in [0.0, 0.3, PI / 2.0, 2.0, 7.5, 31.0] {
                let want = ft_oracle(&th, x, upper);
                let got = th.fourier_transform_1d(x).unwrap();
                assert!((got - want).abs() < 1e-10, "{} at {x}: {got} vs {want}", th.catalog_id);
            }
        }
    }

    #[test]
    fn slowly_decaying_transforms_match_quadrature() {
        // e^{-|t|} and 1/(1+t^2): integrate far enough that the remainder is negligible
        let w = ThetaFunction::weierstrass(1.0).unwrap();
        let p = ThetaFunction::picard_bessel(1.0, 2.0).unwrap();
        for x in [0.0, 0.5, 3.0] {
            let want = ft_oracle(&w, x, 60.0);
            assert!((w.fourier_transform_1d(x).unwrap() - want).abs() < 1e-10);
        }
        // the 1/t^2 tail of the Picard profile converges slowly; compare with a loose bound
        for x in [0.5, 3.0] {
            let want = ft_oracle(&p, x, 4000.0);
            assert!((p.fourier_transform_1d(x).unwrap() - want).abs() < 1e-4);
        }
    }

    #[test]
    fn lattice_tail_bound_dominates_the_actual_tail() {
        let th = ThetaFunction::weierstrass(1.0).unwrap();
        let n = 8.0;
        let r = 3.0;
        let k0 = (r * n) as i64;
        let actual: f64 = (k0 + 1..20_000).map(|k| 2.0 * (-(k as f64) / n).exp()).sum();
        let bound = th.lattice_tail_bound(&[n], r, true);
        assert!(bound >= actual && bound < 1.01 * actual + 1e-12, "{bound} vs {actual}");
    }

    #[test]
    fn wiener_tail_is_zero_beyond_compact_support() {
        assert_eq!(ThetaFunction::fejer().wiener_tail_bound(1, 2), 0.0);
        assert!(ThetaFunction::weierstrass(1.0).unwrap().wiener_tail_bound(5, 1) > 0.0);
    }

    #[test]
    fn telescoped_tail_matches_direct_difference() {
        let full = [3.0, 2.0, 5.0];
        let tails = [0.5, 0.25, 1.0];
        let direct = 30.0 - 2.5 * 1.75 * 4.0;
        assert!((telescoped_tail(&full, &tails) - direct).abs() < 1e-12);
    }
}
