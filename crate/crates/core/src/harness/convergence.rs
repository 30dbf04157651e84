use serde::{Deserialize, Serialize};
use serde_json::json;

use super::report::{ExperimentReport, ReportBuilder};
use super::testfns::FSpec;
use super::FamilySpec;
use crate::error::Result;
use crate::kernels::Method;
use crate::lattice::Q;
use crate::norms::{lp_norm, LpKind};
use crate::spectral::{summability_mean, GridFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormChoice {
    Sup,
    L1,
    L2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Converge,
    /// the error is expected to stay above the tolerance
    Diverge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ConvergenceConfig {
    pub f: FSpec,
    pub family: FamilySpec,
    pub norm: NormChoice,
    pub ladder: Vec<usize>,
    pub grid: usize,
    pub tolerance: f64,
    pub expect: Expectation,
}

impl Default for ConvergenceConfig {
    fn default() -> Self {
        Self {
            f: FSpec::Bump { radius: 2.0 },
            family: FamilySpec::ellq(2, Q::Two, Method::Riesz, 1.0, 2.0),
            norm: NormChoice::L2,
            ladder: vec![16, 32, 64, 128],
            grid: 256,
            tolerance: 1e-3,
            expect: Expectation::Converge,
        }
    }
}

fn norm_of(f: &GridFunction, norm: NormChoice) -> Result<f64> {
    match norm {
        NormChoice::Sup => lp_norm(f, f64::INFINITY, LpKind::Strong),
        NormChoice::L1 => lp_norm(f, 1.0, LpKind::Strong),
        NormChoice::L2 => lp_norm(f, 2.0, LpKind::Strong),
    }
}

/// ‖σ_n f - f‖ along the ladder.
pub fn run_convergence_experiment(config: &ConvergenceConfig) -> ExperimentReport {
    let mut rep = ReportBuilder::new("convergence", serde_json::to_value(config).unwrap_or_default());
    let d = config.family.d;
    let setup = config
        .f
        .spectrum(d, config.grid)
        .and_then(|c| config.f.sample(d, config.grid).map(|f| (c, f)));
    let (c, reference) = match setup {
        Ok(v) => v,
        Err(e) => {
            rep.fail(json!({"f": config.f.to_string()}), None, e.to_string());
            return rep.finish();
        }
    };
    let coeffs = config.f.coefficients(d);
    let mut errors = Vec::new();
    for &n in &config.ladder {
        let params = json!({"f": config.f.to_string(), "n": n, "grid": config.grid});
        let result = config.family.kernel(n).and_then(|spec| {
            let mean = summability_mean(&c, &spec)?;
            let diff: Vec<f64> = mean.samples.iter().zip(&reference.samples).map(|(a, b)| a.re - b.re).collect();
            let diff = GridFunction::from_real(d, config.grid, &diff)?;
            let peak = mean.samples.iter().fold(f64::NEG_INFINITY, |m, v| m.max(v.re));
            Ok((norm_of(&diff, config.norm)?, peak))
        });
        match result {
            Ok((err, peak)) => {
                rep.record(format!("error[n={n}]"), err);
                if config.f == FSpec::Jump {
                    rep.record(format!("overshoot[n={n}]"), peak - 1.0);
                }
                // Fejér deficit: |σ_n f - f| ≤ Σ |ĉ(k)| ‖k‖_q / n
                if let (Some(cs), Some(q), Method::Fejer, NormChoice::Sup) =
                    (&coeffs, config.family.q, config.family.method, config.norm)
                {
                    let bound: f64 = cs
                        .iter()
                        .map(|(k, v)| v.norm() * (q.norm(k) / n as f64).min(1.0))
                        .sum();
                    rep.record(format!("fejer_bound[n={n}]"), bound);
                    rep.check(format!("fejer_excess[n={n}]"), err - bound, 1e-12, params, None);
                }
                errors.push(err);
            }
            Err(e) => rep.fail(params, None, e.to_string()),
        }
    }
    if let Some(&last) = errors.last() {
        let params = json!({"f": config.f.to_string(), "n": config.ladder.last()});
        match config.expect {
            Expectation::Converge => {
                rep.check("final_error", last, config.tolerance, params.clone(), None);
                if errors.len() >= 2 && last > errors[errors.len() - 2] * (1.0 + 1e-9) + 1e-15 {
                    rep.fail(params, None, "error curve is not eventually decreasing");
                }
            }
            Expectation::Diverge => {
                rep.record("final_error", last);
                if last <= config.tolerance {
                    rep.fail(params, None, format!("expected non-convergence but the error fell to {last:e}"));
                }
            }
        }
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fejer_deficit_is_exact_for_positive_coefficients() {
        let cfg = ConvergenceConfig {
            f: FSpec::CosSeries { degree: 3 },
            family: FamilySpec::ellq(1, Q::One, Method::Fejer, 1.0, 1.0),
            norm: NormChoice::Sup,
            ladder: vec![4, 8, 16, 32],
            grid: 128,
            tolerance: 0.1,
            expect: Expectation::Converge,
        };
        let r = run_convergence_experiment(&cfg);
        assert!(r.pass, "{}", r.to_json());
        for n in [4, 8, 16, 32] {
            let e = r.metric(&format!("error[n={n}]")).unwrap();
            let b = r.metric(&format!("fejer_bound[n={n}]")).unwrap();
            assert!((e - b).abs() < 1e-12);
        }
        // the rate is 1/n
        let ratio = r.metric("error[n=16]").unwrap() / r.metric("error[n=32]").unwrap();
        assert!((ratio - 2.0).abs() < 1e-9);
    }

    #[test]
    fn dirichlet_on_a_jump_does_not_converge() {
        let cfg = ConvergenceConfig {
            f: FSpec::Jump,
            family: FamilySpec::ellq(1, Q::One, Method::Dirichlet, 0.0, 1.0),
            norm: NormChoice::Sup,
            ladder: vec![16, 32, 64],
            grid: 256,
            tolerance: 0.05,
            expect: Expectation::Diverge,
        };
        let r = run_convergence_experiment(&cfg);
        assert!(r.pass, "{}", r.to_json());
        assert!(r.metric("overshoot[n=64]").unwrap() > 0.07);
    }
}
