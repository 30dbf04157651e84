use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::report::{ExperimentReport, ReportBuilder};
use crate::error::Result;
use crate::kernels::{dirichlet_kernel, lattice_sum, triangular_d2, EvalMode, KernelSpec};
use crate::lattice::Q;
use crate::spectral::grid_point;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCase {
    pub d: usize,
    pub q: Q,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IdentityConfig {
    pub cases: Vec<IdentityCase>,
    pub grid: usize,
    pub points: usize,
    pub seed: u64,
    /// points with |cos x_i - cos x_j| below this count as collisions
    pub min_gap: f64,
    pub tolerance: f64,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        let mut cases = Vec::new();
        for d in [1, 2] {
            for q in [Q::One, Q::Inf] {
                for n in [2, 4, 8, 16] {
                    cases.push(IdentityCase { d, q, n });
                }
            }
        }
        Self {
            cases,
            grid: 256,
            points: 1000,
            seed: 1,
            min_gap: 1e-3,
            tolerance: 1e-8,
        }
    }
}

impl IdentityConfig {
    pub fn empty() -> Self {
        Self {
            cases: Vec::new(),
            ..Self::default()
        }
    }
}

pub type ClosedForm<'a> = &'a (dyn Fn(&KernelSpec, &[f64]) -> Result<f64> + Sync);

/// Closed forms against lattice sums with the library's own closed forms.
pub fn run_identity_suite(config: &IdentityConfig) -> ExperimentReport {
    run_identity_suite_with(config, &|s: &KernelSpec, x: &[f64]| dirichlet_kernel(s, x, EvalMode::ClosedForm))
}

fn off_collision(x: &[f64], q: Q, gap: f64) -> bool {
    if q != Q::One {
        return true;
    }
    for i in 0..x.len() {
        for j in (i + 1)..x.len() {
            if (x[i].cos() - x[j].cos()).abs() < gap {
                return false;
            }
        }
    }
    true
}

/// As [`run_identity_suite`] with an injected closed-form evaluator.
///
/// The error at a point is |closed - lattice| / max(|lattice|, 1).
pub fn run_identity_suite_with(config: &IdentityConfig, closed: ClosedForm<'_>) -> ExperimentReport {
    let mut rep = ReportBuilder::new("identity", serde_json::to_value(config).unwrap_or_default());
    let mut compared = 0usize;
    let mut worst = 0.0f64;
    for (ci, case) in config.cases.iter().enumerate() {
        let params = json!({"d": case.d, "q": case.q, "n": case.n, "grid": config.grid});
        let spec = KernelSpec::dirichlet(case.d, case.q, case.n);
        let m = match spec.multiplier() {
            Ok(m) => m,
            Err(e) => {
                rep.fail(params, None, e.to_string());
                continue;
            }
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(ci as u64));
        let mut case_worst = (0.0f64, Vec::new());
        let mut found = 0;
        let mut attempts = 0;
        while found < config.points && attempts < 100 * config.points.max(1) {
            attempts += 1;
            let x: Vec<f64> = (0..case.d).map(|_| grid_point(config.grid, rng.gen_range(0..config.grid))).collect();
            if !off_collision(&x, case.q, config.min_gap) {
                continue;
            }
            found += 1;
            let reference = lattice_sum(&m, &x).re;
            let scale = reference.abs().max(1.0);
            let mut values = vec![closed(&spec, &x)];
            if case.d == 2 && case.q == Q::One {
                values.push(triangular_d2(case.n, x[0], x[1]));
            }
            for v in values {
                match v {
                    Ok(v) => {
                        let err = (v - reference).abs() / scale;
                        let err = if err.is_nan() { f64::INFINITY } else { err };
                        if err > case_worst.0 {
                            case_worst = (err, x.clone());
                        }
                    }
                    Err(e) => rep.fail(params.clone(), Some(x.clone()), e.to_string()),
                }
            }
        }
        compared += found;
        worst = worst.max(case_worst.0);
        if case_worst.0 > config.tolerance {
            rep.fail(
                params,
                Some(case_worst.1),
                format!("relative error {:e} exceeds {:e}", case_worst.0, config.tolerance),
            );
        }
    }
    rep.record("points_compared", compared as f64);
    rep.record("cases", config.cases.len() as f64);
    if !config.cases.is_empty() {
        rep.check("max_relative_error", worst, config.tolerance, json!({}), None);
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> IdentityConfig {
        IdentityConfig {
            points: 50,
            ..IdentityConfig::default()
        }
    }

    #[test]
    fn default_passes() {
        let r = run_identity_suite(&small());
        assert!(r.pass, "{}", r.to_json());
    }

    #[test]
    fn corrupted_closed_form_is_located() {
        let bad = |s: &KernelSpec, x: &[f64]| dirichlet_kernel(s, x, EvalMode::ClosedForm).map(|v| v + 1e-3);
        let r = run_identity_suite_with(&small(), &bad);
        assert!(!r.pass);
        let f = &r.failures[0];
        assert!(f.point.is_some() && f.parameters.get("n").is_some());
    }

    #[test]
    fn empty_config_passes_vacuously() {
        let r = run_identity_suite(&IdentityConfig::empty());
        assert!(r.pass);
        assert_eq!(r.metric("points_compared"), Some(0.0));
    }
}
