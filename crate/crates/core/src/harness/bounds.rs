use serde::{Deserialize, Serialize};
use serde_json::json;

use super::report::{ExperimentReport, ReportBuilder};
use super::FamilySpec;
use crate::kernels::{kernel_l1_norm, Method};
use crate::lattice::Q;
use crate::numeric::fit_line;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundFamily {
    pub family: FamilySpec,
    pub ladder: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BoundConfig {
    pub families: Vec<BoundFamily>,
    /// allowed relative growth over the top octave
    pub growth_tolerance: f64,
    pub r2_min: f64,
}

impl Default for BoundConfig {
    fn default() -> Self {
        let ladder = vec![8, 16, 32, 64, 128];
        Self {
            families: vec![
                BoundFamily {
                    family: FamilySpec::ellq(1, Q::One, Method::Fejer, 1.0, 1.0),
                    ladder: ladder.clone(),
                },
                BoundFamily {
                    family: FamilySpec::ellq(2, Q::Inf, Method::Fejer, 1.0, 1.0),
                    ladder,
                },
                BoundFamily {
                    family: FamilySpec::ellq(1, Q::One, Method::Dirichlet, 0.0, 1.0),
                    ladder: (2..=9).map(|k| 1 << k).collect(),
                },
            ],
            growth_tolerance: 0.05,
            r2_min: 0.99,
        }
    }
}

/// Grid used for a kernel of index n: at least 8n points per dimension.
pub(crate) fn grid_for(n: usize) -> usize {
    (8 * n).next_power_of_two().max(64)
}

fn asserts_bounded(f: &FamilySpec) -> bool {
    match f.method {
        Method::Dirichlet | Method::Theta => false,
        Method::Riesz if f.q == Some(Q::Two) => f.alpha > (f.d as f64 - 1.0) / 2.0,
        _ => true,
    }
}

fn label(f: &FamilySpec) -> String {
    let q = f.q.map_or("rect".to_string(), |q| q.to_string());
    format!("{}[d={},q={},alpha={},gamma={}]", f.method, f.d, q, f.alpha, f.gamma)
}

/// L1 norms of kernels along index ladders.
pub fn run_bound_sweep(config: &BoundConfig) -> ExperimentReport {
    let mut rep = ReportBuilder::new("bounds", serde_json::to_value(config).unwrap_or_default());
    for fam in &config.families {
        let name = label(&fam.family);
        let mut ladder = fam.ladder.clone();
        ladder.sort_unstable();
        ladder.dedup();
        let mut norms = Vec::new();
        for &n in &ladder {
            let params = json!({"family": fam.family, "n": n});
            let value = fam.family.kernel(n).and_then(|s| kernel_l1_norm(&s, grid_for(n)));
            match value {
                Ok(v) => {
                    rep.record(format!("{name}.l1[n={n}]"), v);
                    if fam.family.method == Method::Fejer && fam.family.d == 1 {
                        rep.check(
                            format!("{name}.fejer_deviation[n={n}]"),
                            (v - 2.0 * std::f64::consts::PI).abs(),
                            1e-6,
                            params,
                            None,
                        );
                    }
                    norms.push((n, v));
                }
                Err(e) => rep.fail(params, None, e.to_string()),
            }
        }
        if norms.len() < 2 {
            continue;
        }
        if fam.family.method == Method::Dirichlet {
            let xs: Vec<f64> = norms.iter().map(|(n, _)| (*n as f64).ln()).collect();
            let ys: Vec<f64> = norms.iter().map(|(_, v)| *v).collect();
            let fit = fit_line(&xs, &ys);
            rep.record(format!("{name}.log_slope"), fit.slope);
            rep.check(format!("{name}.r2_deficit"), 1.0 - fit.r_squared, 1.0 - config.r2_min, json!({"family": fam.family}), None);
            if !(fit.slope > 0.0) {
                rep.fail(json!({"family": fam.family}), None, format!("log slope {} is not positive", fit.slope));
            }
        } else {
            let (top, vt) = norms[norms.len() - 1];
            let (half, vh) = norms
                .iter()
                .rev()
                .find(|(n, _)| 2 * n == top)
                .copied()
                .unwrap_or(norms[norms.len() - 2]);
            let growth = vt / vh - 1.0;
            let params = json!({"family": fam.family, "n": [half, top]});
            if asserts_bounded(&fam.family) {
                rep.check(format!("{name}.top_octave_growth"), growth, config.growth_tolerance, params, None);
            } else {
                rep.record(format!("{name}.top_octave_growth"), growth);
            }
        }
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let cfg = BoundConfig {
            families: vec![
                BoundFamily {
                    family: FamilySpec::ellq(1, Q::One, Method::Fejer, 1.0, 1.0),
                    ladder: vec![4, 8, 16],
                },
                BoundFamily {
                    family: FamilySpec::ellq(1, Q::One, Method::Dirichlet, 0.0, 1.0),
                    ladder: vec![4, 8, 16, 32, 64],
                },
            ],
            ..BoundConfig::default()
        };
        let r = run_bound_sweep(&cfg);
        assert!(r.pass, "{}", r.to_json());
        assert!(r.metric("dirichlet[d=1,q=1,alpha=0,gamma=1].log_slope").unwrap() > 0.0);
    }
}
