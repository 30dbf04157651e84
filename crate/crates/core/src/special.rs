//! Gamma, Beta and Bessel functions, and the Bessel-form Fourier transform
//! of radial functions on R^d.
//!
//! The Fourier transform convention throughout is
//! `f^(x) = (2 pi)^{-d} \int f(t) e^{-i x.t} dt`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result, SummaError};
use crate::numeric::{pairwise_sum, DoubleDouble, GaussLegendre};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Above this argument Gamma overflows an f64.
const GAMMA_OVERFLOW: f64 = 171.6;

/// Bessel arguments are accepted up to this value.
pub const BESSEL_GUARD: f64 = 1e4;

/// Below this argument the power series is summed; above it the Hankel
/// asymptotic expansion is used.
const BESSEL_SERIES_LIMIT: f64 = 30.0;

/// Cap on the number of series terms.
const BESSEL_MAX_TERMS: usize = 500;

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument (x - 1) of the classic formulation.
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    acc
}

/// Gamma function for positive finite arguments.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(domain("gamma", format!("x = {x} must be positive and finite")));
    }
    if x > GAMMA_OVERFLOW {
        return Err(SummaError::Overflow {
            function: "gamma",
            value: x,
            guard: GAMMA_OVERFLOW,
        });
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // reflection keeps the Lanczos sum in its accurate range
        return PI / ((PI * x).sin() * gamma_unchecked(1.0 - x));
    }
    if x == x.floor() && x <= 23.0 {
        let mut f = 1.0;
        let mut i = 2.0;
        while i < x {
            f *= i;
            i += 1.0;
        }
        return f;
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * lanczos_sum(z)
}

/// Natural logarithm of Gamma for positive arguments.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(domain("ln_gamma", format!("x = {x} must be positive and finite")));
    }
    if x < 0.5 {
        return Ok((PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)?);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

/// Beta function `B(x, y) = \int_0^1 s^{x-1} (1-s)^{y-1} ds`.
pub fn beta(x: f64, y: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0 && y.is_finite() && y > 0.0) {
        return Err(domain("beta", format!("arguments ({x}, {y}) must be positive")));
    }
    if x + y < GAMMA_OVERFLOW {
        Ok(gamma_unchecked(x) * gamma_unchecked(y) / gamma_unchecked(x + y))
    } else {
        Ok((ln_gamma(x)? + ln_gamma(y)? - ln_gamma(x + y)?).exp())
    }
}

/// Bessel function of the first kind `J_k(t)` for real order `k > -1/2`
/// and `0 <= t <= 1e4`.
///
/// For `t <= 30` the power series
/// `J_k(t) = (t/2)^k / Gamma(1/2) * sum_j (-1)^j Gamma(j+1/2)/Gamma(j+k+1) t^{2j}/(2j)!`
/// is summed in double-double arithmetic, which absorbs the cancellation
/// between the large alternating terms. Beyond that the Hankel asymptotic
/// expansion is accurate to well below f64 resolution.
pub fn bessel_j(k: f64, t: f64) -> Result<f64> {
    if !k.is_finite() || k <= -0.5 {
        return Err(domain("bessel_j", format!("order {k} must exceed -1/2")));
    }
    if !t.is_finite() || t < 0.0 {
        return Err(domain("bessel_j", format!("argument {t} must be nonnegative")));
    }
    if t > BESSEL_GUARD {
        return Err(SummaError::Overflow {
            function: "bessel_j",
            value: t,
            guard: BESSEL_GUARD,
        });
    }
    if t == 0.0 {
        return if k == 0.0 {
            Ok(1.0)
        } else if k > 0.0 {
            Ok(0.0)
        } else {
            Err(domain("bessel_j", "J_k(0) is unbounded for -1/2 < k < 0"))
        };
    }
    if t <= BESSEL_SERIES_LIMIT {
        return bessel_series(k, t);
    }
    match bessel_hankel(k, t) {
        Some(v) => Ok(v),
        None if t <= 36.0 => bessel_series(k, t),
        None => Err(SummaError::NonConvergence {
            what: "Bessel asymptotic expansion",
            tail: f64::INFINITY,
            limit: 1e-16,
        }),
    }
}

fn bessel_series(k: f64, t: f64) -> Result<f64> {
    let prefactor = (0.5 * t).powf(k) / gamma(k + 1.0)?;
    let x = DoubleDouble::from_f64(0.5 * t) * DoubleDouble::from_f64(0.5 * t);
    let kp1 = DoubleDouble::from_f64(k + 1.0);
    let mut term = DoubleDouble::from_f64(1.0);
    let mut sum = term;
    for j in 0..BESSEL_MAX_TERMS {
        let jp1 = DoubleDouble::from_f64(j as f64 + 1.0);
        let denom = jp1 * (DoubleDouble::from_f64(j as f64) + kp1);
        term = (-(term * x)).div(denom);
        sum = sum + term;
        // terms grow until (j+1)(j+k+1) passes (t/2)^2, then decay
        let past_peak = (j as f64 + 1.0) * (j as f64 + k + 1.0) > 0.25 * t * t;
        if past_peak && (term.abs().hi < 1e-17 * sum.abs().hi || term.hi == 0.0) {
            return Ok(prefactor * sum.to_f64());
        }
    }
    Err(SummaError::NonConvergence {
        what: "Bessel power series",
        tail: term.abs().to_f64(),
        limit: 1e-16,
    })
}

fn bessel_hankel(nu: f64, t: f64) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    let mut converged = false;
    for m in 1..200 {
        let odd = (2 * m - 1) as f64;
        a *= (mu - odd * odd) / (m as f64 * 8.0 * t);
        let mag = a.abs();
        if mag > last && m > 2 {
            break;
        }
        last = mag;
        // a_m / t^m enters P with sign (-1)^{m/2} for even m and Q with
        // (-1)^{(m-1)/2} for odd m
        match m % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
        if mag < 1e-17 {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    let phase = (0.5 * nu + 0.25) * PI;
    let (st, ct) = t.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = ct * cp + st * sp;
    let sin_chi = st * cp - ct * sp;
    Some((2.0 / (PI * t)).sqrt() * (p * cos_chi - q * sin_chi))
}

/// A radial profile `theta(s)`, `s >= 0`, defining `theta_0(x) = theta(|x|_2)`.
#[derive(Clone)]
pub struct RadialProfile {
    evaluator: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// `None` for unbounded support.
    pub support_radius: Option<f64>,
    pub description: String,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("support_radius", &self.support_radius)
            .field("description", &self.description)
            .finish()
    }
}

impl RadialProfile {
    pub fn new<F>(evaluator: F, support_radius: Option<f64>, description: impl Into<String>) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            evaluator: Arc::new(evaluator),
            support_radius,
            description: description.into(),
        }
    }

    /// `(1 - s^gamma)_+^alpha`
    pub fn riesz(alpha: f64, gamma: f64) -> Self {
        Self::new(
            move |s| if s < 1.0 { (1.0 - s.powf(gamma)).powf(alpha) } else { 0.0 },
            Some(1.0),
            format!("riesz(alpha={alpha}, gamma={gamma})"),
        )
    }

    /// `exp(-a s^2)`
    pub fn gaussian(a: f64) -> Self {
        Self::new(move |s| (-a * s * s).exp(), None, format!("gaussian(a={a})"))
    }

    pub fn zero() -> Self {
        Self::new(|_| 0.0, Some(1.0), "zero")
    }

    pub fn eval(&self, s: f64) -> f64 {
        match self.support_radius {
            Some(c) if s > c => 0.0,
            _ => (self.evaluator)(s),
        }
    }
}

const RADIAL_TAIL_LIMIT: f64 = 1e-8;
const RADIAL_MAX_RADIUS: f64 = 1e4;

/// Integrate `g` over [0, c] with a graded mesh towards c, which handles
/// the algebraic endpoint singularities of compactly supported profiles.
fn integrate_compact<F: Fn(f64) -> f64>(c: f64, per_unit: usize, g: &F) -> f64 {
    let rule = GaussLegendre::order64();
    let mut parts = Vec::new();
    let body = (c - 0.5).max(0.0);
    if body > 0.0 {
        let pieces = ((body.ceil() as usize) * per_unit).max(1);
        let h = body / pieces as f64;
        for i in 0..pieces {
            let lo = h * i as f64;
            parts.push(rule.integrate(lo, lo + h, g));
        }
    }
    let mut lo = body;
    let mut width = c - body;
    for _ in 0..40 {
        let hi = lo + 0.5 * width;
        let pieces = (((hi - lo) * per_unit as f64).ceil() as usize).max(1);
        let h = (hi - lo) / pieces as f64;
        for i in 0..pieces {
            let a = lo + h * i as f64;
            parts.push(rule.integrate(a, a + h, g));
        }
        lo = hi;
        width *= 0.5;
    }
    pairwise_sum(&parts)
}

/// Integrate `g` over [0, inf) unit by unit, stopping once the geometric
/// extrapolation of the absolute mass of the remaining tail is negligible.
/// Returns the integral and the tail estimate.
fn integrate_unbounded<F: Fn(f64) -> f64, A: Fn(f64) -> f64>(
    per_unit: usize,
    g: &F,
    abs_g: &A,
    scale: f64,
) -> Result<(f64, f64)> {
    let rule = GaussLegendre::order64();
    let mut parts = Vec::new();
    let mut prev_mass = f64::INFINITY;
    let mut m = 0.0;
    let mut tail = f64::INFINITY;
    while m < RADIAL_MAX_RADIUS {
        let h = 1.0 / per_unit as f64;
        let mut mass = 0.0;
        for i in 0..per_unit {
            let a = m + h * i as f64;
            parts.push(rule.integrate(a, a + h, g));
            mass += rule.integrate(a, a + h, abs_g);
        }
        m += 1.0;
        let ratio = if prev_mass > 0.0 { mass / prev_mass } else { 0.0 };
        prev_mass = mass;
        if m >= 2.0 && ratio < 1.0 {
            tail = scale * mass * ratio / (1.0 - ratio);
            if tail < 1e-13 || mass == 0.0 {
                return Ok((pairwise_sum(&parts), tail));
            }
        }
    }
    if tail > RADIAL_TAIL_LIMIT || !tail.is_finite() {
        return Err(SummaError::NonConvergence {
            what: "radial Fourier transform",
            tail,
            limit: RADIAL_TAIL_LIMIT,
        });
    }
    Ok((pairwise_sum(&parts), tail))
}

fn unit_ball_surface(d: usize) -> f64 {
    // surface area of the unit sphere in R^d
    2.0 * PI.powf(0.5 * d as f64) / gamma_unchecked(0.5 * d as f64)
}

/// Fourier transform of `theta(|x|_2)` at any `x` with `|x|_2 = r`:
/// `(2 pi)^{-d/2} r^{1-d/2} \int_0^inf theta(s) J_{d/2-1}(r s) s^{d/2} ds`.
pub fn radial_fourier_transform(theta: &RadialProfile, r: f64, d: usize) -> Result<f64> {
    if d == 0 {
        return Err(domain("radial_fourier_transform", "dimension must be >= 1"));
    }
    if !r.is_finite() || r < 0.0 {
        return Err(domain("radial_fourier_transform", format!("radius {r} must be >= 0")));
    }
    let df = d as f64;
    let per_unit = ((r / 8.0).ceil() as usize).max(1);
    if r == 0.0 {
        let pref = (2.0 * PI).powf(-df) * unit_ball_surface(d);
        let g = |s: f64| theta.eval(s) * s.powf(df - 1.0);
        let integral = match theta.support_radius {
            Some(c) => integrate_compact(c, per_unit, &g),
            None => integrate_unbounded(per_unit, &g, &|s| g(s).abs(), pref)?.0,
        };
        return Ok(pref * integral);
    }
    if r > BESSEL_GUARD {
        return Err(SummaError::Overflow {
            function: "radial_fourier_transform",
            value: r,
            guard: BESSEL_GUARD,
        });
    }
    let (pref, g): (f64, Box<dyn Fn(f64) -> f64 + '_>) = if d == 1 {
        // J_{-1/2}(x) = sqrt(2/(pi x)) cos x collapses the formula to a
        // cosine transform
        (1.0 / PI, Box::new(move |s: f64| theta.eval(s) * (r * s).cos()))
    } else {
        let nu = 0.5 * df - 1.0;
        let pref = (2.0 * PI).powf(-0.5 * df) * r.powf(1.0 - 0.5 * df);
        (
            pref,
            Box::new(move |s: f64| {
                let th = theta.eval(s);
                if th == 0.0 {
                    return 0.0;
                }
                // arguments are within the guard by construction
                th * bessel_j(nu, r * s).unwrap_or(f64::NAN) * s.powf(0.5 * df)
            }),
        )
    };
    let integral = match theta.support_radius {
        Some(c) => integrate_compact(c, per_unit, &g),
        None => {
            let abs = |s: f64| theta.eval(s).abs() * s.powf(0.5 * df).max(1.0);
            integrate_unbounded(per_unit, &g, &abs, pref)?.0
        }
    };
    if !integral.is_finite() {
        return Err(SummaError::NonConvergence {
            what: "radial Fourier transform",
            tail: f64::INFINITY,
            limit: RADIAL_TAIL_LIMIT,
        });
    }
    Ok(pref * integral)
}

/// Closed-form Fourier transform of the Bochner-Riesz profile
/// `(1 - |x|_2^2)_+^alpha` on R^d at radius `r > 0`.
pub fn bochner_riesz_ft(alpha: f64, d: usize, r: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(domain("bochner_riesz_ft", format!("alpha = {alpha} must be positive")));
    }
    if d == 0 {
        return Err(domain("bochner_riesz_ft", "dimension must be >= 1"));
    }
    if !(r > 0.0) {
        return Err(domain(
            "bochner_riesz_ft",
            "r must be positive; use radial_fourier_transform at the origin",
        ));
    }
    let df = d as f64;
    let order = 0.5 * df + alpha;
    Ok((2.0 * PI).powf(-0.5 * df)
        * 2f64.powf(alpha)
        * gamma(alpha + 1.0)?
        * r.powf(-order)
        * bessel_j(order, r)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_anchor_values() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert!((gamma(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert_eq!(gamma(5.0).unwrap(), 24.0);
        assert!((gamma(10.5).unwrap() / 1_133_278.388_948_785_2 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn gamma_recursion() {
        for x in [0.5, 1.5, 2.5, 4.5, 0.01, 7.3, 33.3] {
            let r = gamma(x + 1.0).unwrap() / gamma(x).unwrap();
            assert!((r / x - 1.0).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn gamma_rejects_nonpositive() {
        assert!(gamma(0.0).is_err());
        assert!(gamma(-1.5).is_err());
        assert!(gamma(f64::NAN).is_err());
        assert!(matches!(gamma(200.0), Err(SummaError::Overflow { .. })));
    }

    #[test]
    fn beta_values() {
        assert!((beta(1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((beta(2.0, 3.0).unwrap() - 1.0 / 12.0).abs() < 1e-15);
        assert!((beta(0.5, 0.5).unwrap() - PI).abs() < 1e-13);
        assert!(beta(0.0, 1.0).is_err());
        // large arguments go through ln_gamma
        let b = beta(100.0, 100.0).unwrap();
        let direct = (ln_gamma(100.0).unwrap() * 2.0 - ln_gamma(200.0).unwrap()).exp();
        assert!((b / direct - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bessel_trivial_values() {
        assert_eq!(bessel_j(1.0, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        let v = bessel_j(0.5, std::f64::consts::FRAC_PI_2).unwrap();
        assert!((v - 2.0 / PI).abs() < 1e-14);
    }

    #[test]
    fn bessel_half_order_closed_form_across_branches() {
        for t in [0.1, 1.0, 7.0, 29.0, 31.0, 80.0, 500.0, 9999.0] {
            let exact = (2.0 / (PI * t)).sqrt() * t.sin();
            let got = bessel_j(0.5, t).unwrap();
            assert!((got - exact).abs() < 1e-13, "t = {t}: {got} vs {exact}");
        }
    }

    #[test]
    fn bessel_domain_errors() {
        assert!(bessel_j(-0.5, 1.0).is_err());
        assert!(bessel_j(1.0, -1.0).is_err());
        assert!(matches!(bessel_j(0.0, 2e4), Err(SummaError::Overflow { .. })));
        assert!(bessel_j(-0.25, 0.0).is_err());
    }

    #[test]
    fn bessel_series_and_asymptotic_agree_at_the_switch() {
        for k in [0.0, 1.0, 2.5, 3.0] {
            let s = bessel_series(k, 30.0).unwrap();
            let h = bessel_hankel(k, 30.0).unwrap();
            assert!((s - h).abs() < 1e-14, "k = {k}: {s} vs {h}");
        }
    }

    #[test]
    fn radial_transform_of_zero_is_zero() {
        let z = RadialProfile::zero();
        for r in [0.0, 0.5, 3.0] {
            assert_eq!(radial_fourier_transform(&z, r, 2).unwrap(), 0.0);
        }
    }

    #[test]
    fn radial_transform_gaussian_origin() {
        let g = RadialProfile::gaussian(PI);
        let v = radial_fourier_transform(&g, 0.0, 2).unwrap();
        assert!((v - 0.025_330_295_910_584_444).abs() < 1e-12);
    }

    #[test]
    fn radial_transform_gaussian_off_origin() {
        // e^{-pi |t|^2} transforms to (2 pi)^{-d} e^{-|x|^2/(4 pi)} under this convention
        let g = RadialProfile::gaussian(PI);
        for d in [1usize, 2, 3] {
            for r in [0.5, 2.0, 6.0] {
                let got = radial_fourier_transform(&g, r, d).unwrap();
                let want = (2.0 * PI).powi(-(d as i32)) * (-r * r / (4.0 * PI)).exp();
                assert!((got - want).abs() < 1e-11, "d = {d}, r = {r}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn bochner_riesz_small_radius_is_finite_positive() {
        let v = bochner_riesz_ft(1.0, 2, 1e-3).unwrap();
        assert!(v.is_finite() && v > 0.0);
        assert!(bochner_riesz_ft(1.0, 2, 0.0).is_err());
        assert!(bochner_riesz_ft(0.0, 2, 1.0).is_err());
    }
}
