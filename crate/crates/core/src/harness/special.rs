use serde::{Deserialize, Serialize};
use serde_json::json;

use super::report::{ExperimentReport, ReportBuilder};
use crate::error::Result;
use crate::numeric::composite_gl;
use crate::special::{bessel_j, bochner_riesz_ft, gamma, radial_fourier_transform, RadialProfile};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SpecialConfig {
    pub derivative_step: f64,
    pub derivative_tolerance: f64,
    pub sonine_tolerance: f64,
    pub radial_tolerance: f64,
    pub radial_points: Vec<f64>,
}

impl Default for SpecialConfig {
    fn default() -> Self {
        Self {
            derivative_step: 1e-5,
            derivative_tolerance: 1e-6,
            sonine_tolerance: 1e-7,
            radial_tolerance: 1e-6,
            radial_points: vec![0.5, 1.0, 2.0, 5.0],
        }
    }
}

/// Right side of J_{k+l+1}(t) = t^{l+1} / (2^l Γ(l+1)) ∫_0^1 J_k(ts) s^{k+1} (1-s²)^l ds.
pub fn sonine_rhs(k: f64, l: f64, t: f64) -> Result<f64> {
    let err = std::cell::RefCell::new(None);
    let integral = composite_gl(0.0, 1.0, 8, |s| match bessel_j(k, t * s) {
        Ok(j) => j * s.powf(k + 1.0) * (1.0 - s * s).powf(l),
        Err(e) => {
            *err.borrow_mut() = Some(e);
            0.0
        }
    });
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    Ok(t.powf(l + 1.0) / (2f64.powf(l) * gamma(l + 1.0)?) * integral)
}

/// sup over t ∈ (0, 100] of |J_k(t)| max(t^{-k}, t^{1/2}), on a log grid.
pub fn bessel_scaled_sup(k: f64) -> Result<f64> {
    let mut best = 0.0f64;
    for i in 0..=4000 {
        let t = 1e-3 * 1e5f64.powf(i as f64 / 4000.0);
        let j = bessel_j(k, t)?;
        best = best.max(j.abs() * t.powf(-k).max(t.sqrt()));
    }
    Ok(best)
}

/// Bessel identities, the scaled bound and the radial transform.
pub fn run_special_suite(config: &SpecialConfig) -> ExperimentReport {
    let mut rep = ReportBuilder::new("special", serde_json::to_value(config).unwrap_or_default());
    let h = config.derivative_step;
    let mut worst = (0.0f64, json!({}));
    for k in [0.0, 0.5, 1.0, 1.5] {
        for t in [0.5, 1.0, 5.0, 20.0] {
            let r = (|| -> Result<f64> {
                let fd = (bessel_j(k, t + h)? - bessel_j(k, t - h)?) / (2.0 * h);
                Ok((fd - (k / t * bessel_j(k, t)? - bessel_j(k + 1.0, t)?)).abs())
            })();
            match r {
                Ok(v) if v >= worst.0 => worst = (v, json!({"k": k, "t": t})),
                Ok(_) => {}
                Err(e) => rep.fail(json!({"k": k, "t": t}), None, e.to_string()),
            }
        }
    }
    rep.check("derivative_residual", worst.0, config.derivative_tolerance, worst.1, None);
    let mut worst = (0.0f64, json!({}));
    for k in [0.0, 1.0] {
        for l in [0.0, 1.0] {
            for t in [1.0, 5.0] {
                let r = (|| -> Result<f64> { Ok((bessel_j(k + l + 1.0, t)? - sonine_rhs(k, l, t)?).abs()) })();
                match r {
                    Ok(v) if v >= worst.0 => worst = (v, json!({"k": k, "l": l, "t": t})),
                    Ok(_) => {}
                    Err(e) => rep.fail(json!({"k": k, "l": l, "t": t}), None, e.to_string()),
                }
            }
        }
    }
    rep.check("sonine_residual", worst.0, config.sonine_tolerance, worst.1, None);
    for k in [0.0, 0.5, 1.0, 1.5] {
        match bessel_scaled_sup(k) {
            Ok(c) => {
                rep.record(format!("bessel_bound_constant[k={k}]"), c);
                if !c.is_finite() {
                    rep.fail(json!({"k": k}), None, "scaled Bessel sup is not finite");
                }
            }
            Err(e) => rep.fail(json!({"k": k}), None, e.to_string()),
        }
    }
    let profile = RadialProfile::riesz(1.0, 2.0);
    let mut worst = (0.0f64, json!({}));
    for &r in &config.radial_points {
        let diff = (|| -> Result<f64> {
            Ok((radial_fourier_transform(&profile, r, 2)? - bochner_riesz_ft(1.0, 2, r)?).abs())
        })();
        match diff {
            Ok(v) if v >= worst.0 => worst = (v, json!({"r": r})),
            Ok(_) => {}
            Err(e) => rep.fail(json!({"r": r}), None, e.to_string()),
        }
    }
    rep.check("radial_vs_closed_form", worst.0, config.radial_tolerance, worst.1, None);
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let r = run_special_suite(&SpecialConfig::default());
        assert!(r.pass, "{}", r.to_json());
    }
}
