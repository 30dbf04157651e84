use serde::{Deserialize, Serialize};
use serde_json::json;

use super::report::{ExperimentReport, ReportBuilder};
use super::testfns::FSpec;
use super::FamilySpec;
use crate::error::Result;
use crate::maximal::{maximal_function, maximal_mean, IndexSet, Ladder, MaximalVariant};
use crate::norms::{herz_norm, HerzDomain, HerzInput, HerzVariant};
use crate::spectral::{kernel_on_grid, synthesize, GridFunction};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DominationConfig {
    pub theta: String,
    pub tau: f64,
    pub d: usize,
    pub grid: usize,
    pub batch: Vec<FSpec>,
    pub safety: f64,
}

impl Default for DominationConfig {
    fn default() -> Self {
        let mut batch = vec![FSpec::Constant { value: 1.0 }, FSpec::Bump { radius: 1.5 }];
        batch.extend((1..=6).map(|seed| FSpec::TrigPoly { degree: 6, seed }));
        Self {
            theta: "fejer".into(),
            tau: 2.0,
            d: 2,
            grid: 64,
            batch,
            safety: 4.0,
        }
    }
}

/// Dyadic cone indices up to G/4.
pub(crate) fn cone_indices(tau: f64, d: usize, g: usize) -> Result<IndexSet> {
    IndexSet::cone(tau, vec![g / 4; d], &Ladder::Dyadic)
}

/// sup_n ‖K_n^θ‖_{E_∞} (or E'_∞) over the cone.
pub(crate) fn kernel_constant(family: &FamilySpec, set: &IndexSet, g: usize, variant: HerzVariant) -> Result<(f64, Vec<usize>)> {
    let mut best = (0.0f64, Vec::new());
    for n in &set.members {
        let k = kernel_on_grid(&family.kernel_multi(n)?, family.d, g)?;
        let v = herz_norm(HerzInput::Grid(&k), f64::INFINITY, variant, HerzDomain::Torus { k_min: None })?.value;
        if v > best.0 {
            best = (v, n.clone());
        }
    }
    Ok(best)
}

/// σ_□^θ f against M_□ f over a batch of functions.
pub fn run_domination_experiment(config: &DominationConfig) -> ExperimentReport {
    let mut rep = ReportBuilder::new("domination", serde_json::to_value(config).unwrap_or_default());
    let (d, g) = (config.d, config.grid);
    let family = FamilySpec::theta_rectangular(d, &config.theta);
    let setup = cone_indices(config.tau, d, g).and_then(|set| kernel_constant(&family, &set, g, HerzVariant::E).map(|k| (set, k)));
    let (set, (constant, argmax)) = match setup {
        Ok(v) => v,
        Err(e) => {
            rep.fail(json!({"theta": config.theta, "grid": g}), None, e.to_string());
            return rep.finish();
        }
    };
    rep.record("kernel_constant", constant);
    rep.record("kernel_constant_argmax_n1", argmax.first().copied().unwrap_or(0) as f64);
    rep.record("cone_members", set.len() as f64);
    // tensor θ̂ with |x|^-2 decay sits in E'_∞ but only borderline outside E_∞
    match kernel_constant(&family, &set, g, HerzVariant::EPrime) {
        Ok((c, _)) => rep.record("kernel_constant_product", c),
        Err(e) => rep.fail(json!({"theta": config.theta, "grid": g}), None, e.to_string()),
    }
    let bound = config.safety * constant;
    let mut overall = 0.0f64;
    for f in &config.batch {
        let params = json!({"f": f.to_string(), "theta": config.theta, "tau": config.tau, "grid": g});
        let result = (|| -> Result<(f64, Vec<f64>)> {
            let c = f.spectrum(d, g)?;
            let sample = GridFunction::from_real(d, g, &synthesize(&c)?.re())?;
            let sigma = maximal_mean(&c, &family.kernel(1)?, &set, false)?;
            let m = maximal_function(&sample, MaximalVariant::Cone(config.tau))?;
            let peak = m.samples.iter().fold(0.0f64, |a, v| a.max(v.re));
            let mut worst = (0.0f64, 0usize);
            for (i, (s, mv)) in sigma.samples.iter().zip(&m.samples).enumerate() {
                if mv.re > 1e-12 * peak {
                    let r = s.re / mv.re;
                    if r > worst.0 {
                        worst = (r, i);
                    }
                }
            }
            Ok((worst.0, sample.point(worst.1)))
        })();
        match result {
            Ok((ratio, point)) => {
                overall = overall.max(ratio);
                rep.check(format!("ratio[{f}]"), ratio, bound, params, Some(point));
            }
            Err(e) => rep.fail(params, None, e.to_string()),
        }
    }
    rep.record("max_ratio", overall);
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_ratio_is_one() {
        let cfg = DominationConfig {
            batch: vec![FSpec::Constant { value: 1.0 }],
            grid: 32,
            ..DominationConfig::default()
        };
        let r = run_domination_experiment(&cfg);
        assert!(r.pass, "{}", r.to_json());
        assert!((r.metric("ratio[const(1)]").unwrap() - 1.0).abs() < 1e-12);
    }
}
