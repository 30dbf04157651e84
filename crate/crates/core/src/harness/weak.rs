use serde::{Deserialize, Serialize};
use serde_json::json;

use super::report::{ExperimentReport, ReportBuilder};
use super::testfns::{weak_type_battery, FSpec};
use crate::error::Result;
use crate::maximal::{maximal_function, MaximalVariant};
use crate::norms::{lp_norm, LpKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct WeakConfig {
    /// (d, G) pairs
    pub grids: Vec<(usize, usize)>,
    pub battery: Vec<FSpec>,
}

impl Default for WeakConfig {
    fn default() -> Self {
        Self {
            grids: vec![(1, 256), (2, 64)],
            battery: weak_type_battery(),
        }
    }
}

/// ‖Mf‖_{1,∞} / ‖f‖_1 for the cube maximal function.
pub fn weak_type_ratio(f: &FSpec, d: usize, g: usize) -> Result<f64> {
    let sample = f.sample(d, g)?;
    let m = maximal_function(&sample, MaximalVariant::Cube)?;
    Ok(lp_norm(&m, 1.0, LpKind::Weak)? / lp_norm(&sample, 1.0, LpKind::Strong)?)
}

/// Weak type (1,1) of the cube maximal function against 2^{d+1}.
pub fn run_weak_type_check(config: &WeakConfig) -> ExperimentReport {
    let mut rep = ReportBuilder::new("weak", serde_json::to_value(config).unwrap_or_default());
    for &(d, g) in &config.grids {
        let bound = 2f64.powi(d as i32 + 1);
        let mut worst = 0.0f64;
        for f in &config.battery {
            let params = json!({"f": f.to_string(), "d": d, "grid": g});
            match weak_type_ratio(f, d, g) {
                Ok(r) => {
                    worst = worst.max(r);
                    rep.check(format!("ratio[d={d},{f}]"), r, bound, params, None);
                }
                Err(e) => rep.fail(params, None, e.to_string()),
            }
        }
        rep.record(format!("max_ratio[d={d}]"), worst);
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_ratio_is_one() {
        let r = weak_type_ratio(&FSpec::Constant { value: 3.0 }, 1, 64).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
    }
}
