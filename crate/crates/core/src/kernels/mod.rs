//! Summability kernels: Dirichlet, Fejér, Riesz, Cesàro and θ-kernels over
//! ℓq balls and rectangles, divided differences and periodization.

mod dirichlet;
mod divided;
mod periodize;
mod spec;
mod summability;
mod theta;

pub use dirichlet::{dirichlet_1d, dirichlet_kernel, lattice_sum, triangular_d2, EvalMode};
pub use divided::{
    divided_difference, divided_difference_recursive, trig_identity_cosine, trig_identity_sine,
    DividedDifferenceForm, COLLISION_THRESHOLD,
};
pub use periodize::{theta_kernel_periodized, PeriodizedValue};
pub use spec::{KernelSpec, Method, Multiplier, Region};
pub use summability::{cesaro_coefficient, kernel_l1_norm, summability_kernel, summability_kernel_complex};
pub use theta::{Decay, ThetaCatalog, ThetaFunction};
