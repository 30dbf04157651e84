//! Verification experiments. Each suite returns an [`ExperimentReport`].

mod bounds;
mod convergence;
mod domination;
mod identity;
mod lebesgue;
mod report;
mod rotation;
mod special;
pub mod testfns;
mod weak;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SummaError};
use crate::kernels::{KernelSpec, Method, ThetaFunction};
use crate::lattice::Q;

pub use bounds::{run_bound_sweep, BoundConfig, BoundFamily};
pub use convergence::{run_convergence_experiment, ConvergenceConfig, Expectation, NormChoice};
pub use domination::{run_domination_experiment, DominationConfig};
pub use identity::{run_identity_suite, run_identity_suite_with, IdentityCase, IdentityConfig};
pub use lebesgue::{run_lebesgue_experiment, LebesgueConfig};
pub use report::{ExperimentReport, Failure, Metric};
pub use rotation::{run_rotation_check, support_bijection_holds, RotationConfig};
pub use special::{run_special_suite, SpecialConfig};
pub use testfns::{FSpec, PointClass};
pub use weak::{run_weak_type_check, WeakConfig};

fn one() -> f64 {
    1.0
}

/// Serializable description of a kernel family; the index is supplied later.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub d: usize,
    /// `None` selects the rectangular region.
    #[serde(default)]
    pub q: Option<Q>,
    pub method: Method,
    #[serde(default = "one")]
    pub alpha: f64,
    #[serde(default = "one")]
    pub gamma: f64,
    #[serde(default)]
    pub theta: Option<String>,
}

impl FamilySpec {
    pub fn ellq(d: usize, q: Q, method: Method, alpha: f64, gamma: f64) -> Self {
        Self {
            d,
            q: Some(q),
            method,
            alpha,
            gamma,
            theta: None,
        }
    }

    pub fn theta_rectangular(d: usize, theta: &str) -> Self {
        Self {
            d,
            q: None,
            method: Method::Theta,
            alpha: 1.0,
            gamma: 1.0,
            theta: Some(theta.to_string()),
        }
    }

    fn theta_fn(&self) -> Result<Option<ThetaFunction>> {
        self.theta.as_deref().map(ThetaFunction::from_id).transpose()
    }

    /// The kernel at index n (n on every axis for rectangular regions).
    pub fn kernel(&self, n: usize) -> Result<KernelSpec> {
        self.kernel_multi(&vec![n; self.d])
    }

    pub fn kernel_multi(&self, n: &[usize]) -> Result<KernelSpec> {
        let (alpha, gamma) = match self.method {
            Method::Dirichlet => (0.0, 1.0),
            Method::Fejer => (1.0, 1.0),
            _ => (self.alpha, self.gamma),
        };
        let mut spec = match self.q {
            Some(q) => {
                let mut s = KernelSpec::riesz(self.d, q, n[0], alpha, gamma);
                s.method = self.method;
                s
            }
            None => KernelSpec::rectangular(self.method, n.to_vec(), alpha, gamma),
        };
        if self.method == Method::Theta {
            spec.theta = Some(
                self.theta_fn()?
                    .ok_or_else(|| SummaError::InvalidSpec("the theta method needs a theta id".into()))?,
            );
        }
        spec.validate()?;
        Ok(spec)
    }
}

pub const SUITES: [&str; 8] = [
    "identity",
    "bounds",
    "convergence",
    "lebesgue",
    "domination",
    "rotation",
    "weak",
    "special",
];

fn parse<T: serde::de::DeserializeOwned + Default>(config: Option<serde_json::Value>) -> Result<T> {
    match config {
        None => Ok(T::default()),
        Some(v) => serde_json::from_value(v).map_err(|e| SummaError::InvalidSpec(format!("suite config: {e}"))),
    }
}

/// Runs a suite by name with an optional JSON config (defaults otherwise).
pub fn run_suite(id: &str, config: Option<serde_json::Value>) -> Result<ExperimentReport> {
    Ok(match id {
        "identity" => run_identity_suite(&parse(config)?),
        "bounds" => run_bound_sweep(&parse(config)?),
        "convergence" => run_convergence_experiment(&parse(config)?),
        "lebesgue" => run_lebesgue_experiment(&parse(config)?),
        "domination" => run_domination_experiment(&parse(config)?),
        "rotation" => run_rotation_check(&parse(config)?),
        "weak" => run_weak_type_check(&parse(config)?),
        "special" => run_special_suite(&parse(config)?),
        other => {
            return Err(SummaError::InvalidSpec(format!(
                "unknown suite '{other}' (expected one of {})",
                SUITES.join(", ")
            )))
        }
    })
}
