use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::report::{ExperimentReport, ReportBuilder};
use super::testfns::{FSpec, PointClass};
use super::FamilySpec;
use crate::maximal::{IndexSet, Ladder};
use crate::spectral::{flatten, grid_point, summability_mean};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LebesgueConfig {
    pub f: FSpec,
    pub d: usize,
    pub theta: String,
    pub tau: f64,
    /// values of n_1 (and, through the cone, of the other indices)
    pub ladder: Vec<usize>,
    pub grid: usize,
    pub samples: usize,
    pub seed: u64,
    /// continuity samples keep this distance from discontinuities
    pub margin: f64,
    pub tolerance: f64,
}

impl Default for LebesgueConfig {
    fn default() -> Self {
        Self {
            f: FSpec::Jump,
            d: 1,
            theta: "fejer".into(),
            tau: 2.0,
            ladder: vec![64, 128, 256, 512],
            grid: 2048,
            samples: 100,
            seed: 1,
            margin: 0.25,
            tolerance: 0.01,
        }
    }
}

/// Pointwise errors of θ-means at continuity and jump points.
pub fn run_lebesgue_experiment(config: &LebesgueConfig) -> ExperimentReport {
    let mut rep = ReportBuilder::new("lebesgue", serde_json::to_value(config).unwrap_or_default());
    let (d, g) = (config.d, config.grid);
    let family = FamilySpec::theta_rectangular(d, &config.theta);
    let top = config.ladder.iter().copied().max().unwrap_or(0);
    let indices = if d == 1 {
        Ok(IndexSet::explicit(config.ladder.iter().map(|&n| vec![n]).collect()))
    } else {
        IndexSet::cone(config.tau, vec![top; d], &Ladder::Values(config.ladder.clone()))
    };
    let setup = indices.and_then(|set| config.f.spectrum(d, g).map(|c| (set, c)));
    let (set, c) = match setup {
        Ok(v) => v,
        Err(e) => {
            rep.fail(json!({"f": config.f.to_string()}), None, e.to_string());
            return rep.finish();
        }
    };
    // continuity sample on grid points away from discontinuities
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
    let mut continuity = Vec::new();
    let mut attempts = 0;
    while continuity.len() < config.samples && attempts < 1000 * config.samples.max(1) {
        attempts += 1;
        let idx: Vec<usize> = (0..d).map(|_| rng.gen_range(0..g)).collect();
        let x: Vec<f64> = idx.iter().map(|&j| grid_point(g, j)).collect();
        if config.f.singular_distance(&x) >= config.margin {
            continuity.push((flatten(g, &idx), x));
        }
    }
    let eval = config.f.evaluator(d);
    let exact: Vec<f64> = continuity.iter().map(|(_, x)| eval(x)).collect();
    // jump points of the 1-D jump function: x = 0 and x = -π
    let mut jumps = Vec::new();
    if d == 1 {
        for j in [0, g / 2] {
            let x = vec![grid_point(g, j)];
            if let PointClass::Jump { left, right } = config.f.classify(&x) {
                jumps.push((j, x, 0.5 * (left + right)));
            }
        }
    }
    let mut level_errors: std::collections::BTreeMap<usize, (f64, f64)> = Default::default();
    let mut worst_cont = (0.0f64, None, None);
    let mut worst_jump = (0.0f64, None, None);
    for n in &set.members {
        let params = json!({"f": config.f.to_string(), "n": n, "grid": g});
        let mean = match family.kernel_multi(n).and_then(|s| summability_mean(&c, &s)) {
            Ok(m) => m,
            Err(e) => {
                rep.fail(params, None, e.to_string());
                continue;
            }
        };
        let entry = level_errors.entry(n[0]).or_insert((0.0, 0.0));
        for ((flat, x), fx) in continuity.iter().zip(&exact) {
            let err = (mean.samples[*flat].re - fx).abs();
            entry.0 = entry.0.max(err);
            if n[0] == top && err >= worst_cont.0 {
                worst_cont = (err, Some(x.clone()), Some(params.clone()));
            }
        }
        for (flat, x, mid) in &jumps {
            let err = (mean.samples[*flat].re - mid).abs();
            entry.1 = entry.1.max(err);
            if n[0] == top && err >= worst_jump.0 {
                worst_jump = (err, Some(x.clone()), Some(params.clone()));
            }
        }
    }
    for (n1, (ce, je)) in &level_errors {
        rep.record(format!("continuity_error[n1={n1}]"), *ce);
        if !jumps.is_empty() {
            rep.record(format!("jump_error[n1={n1}]"), *je);
        }
    }
    rep.record("continuity_points", continuity.len() as f64);
    rep.check(
        "max_continuity_error",
        worst_cont.0,
        config.tolerance,
        worst_cont.2.unwrap_or_default(),
        worst_cont.1,
    );
    if !jumps.is_empty() {
        rep.check("max_jump_error", worst_jump.0, config.tolerance, worst_jump.2.unwrap_or_default(), worst_jump.1);
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_has_zero_error() {
        let cfg = LebesgueConfig {
            f: FSpec::Constant { value: 2.0 },
            ladder: vec![4, 8],
            grid: 64,
            samples: 20,
            ..LebesgueConfig::default()
        };
        let r = run_lebesgue_experiment(&cfg);
        assert!(r.pass);
        assert!(r.metric("max_continuity_error").unwrap() < 1e-13);
    }
}
