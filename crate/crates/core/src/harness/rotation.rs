use std::collections::HashSet;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::report::{ExperimentReport, ReportBuilder};
use super::testfns::FSpec;
use crate::lattice::{ball_indices, Q};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RotationConfig {
    pub n: usize,
    pub trials: usize,
    /// degree of the random polynomials; above n so the truncation matters
    pub degree: usize,
    pub points: usize,
    pub seed: u64,
    /// the support bijection is enumerated for every radius up to this
    pub enumerate_up_to: usize,
}

impl Default for RotationConfig {
    fn default() -> Self {
        Self {
            n: 4,
            trials: 20,
            degree: 7,
            points: 16,
            seed: 1,
            enumerate_up_to: 16,
        }
    }
}

/// (k, l) ↦ (k + l, l - k) maps the ℓ1 ball of radius n one-to-one onto the
/// points of the ℓ∞ ball with k + l even.
pub fn support_bijection_holds(n: usize) -> (usize, bool) {
    let ball = ball_indices(Q::One, 2, n as i64);
    let r = n as i64;
    let mut images = HashSet::new();
    let mut inside = true;
    for k in &ball {
        let (a, b) = (k[0] + k[1], k[1] - k[0]);
        inside &= a.abs() <= r && b.abs() <= r;
        images.insert((a, b));
    }
    let mut parity_points = 0;
    for a in -r..=r {
        for b in -r..=r {
            if (a + b) % 2 == 0 {
                parity_points += 1;
                inside &= images.contains(&(a, b));
            }
        }
    }
    (ball.len(), inside && images.len() == ball.len() && parity_points == ball.len())
}

fn partial_sum_at(coeffs: &[(Vec<i64>, Complex64)], keep: impl Fn(&[i64]) -> bool, x: &[f64]) -> f64 {
    coeffs
        .iter()
        .filter(|(k, _)| keep(k))
        .map(|(k, c)| (c * Complex64::from_polar(1.0, k[0] as f64 * x[0] + k[1] as f64 * x[1])).re)
        .sum()
}

/// Support bijection and the factor between s_n^1 f(x, y) and s_n^∞ g(u, v),
/// g(u, v) = f(u - v, u + v).
pub fn run_rotation_check(config: &RotationConfig) -> ExperimentReport {
    let mut rep = ReportBuilder::new("rotation", serde_json::to_value(config).unwrap_or_default());
    let mut bad = 0.0;
    for m in 0..=config.enumerate_up_to {
        let (count, ok) = support_bijection_holds(m);
        if !ok {
            bad += 1.0;
            rep.fail(json!({"n": m}), None, "support map is not a bijection onto the even sublattice");
        }
        if m == config.n {
            rep.record("l1_ball_size", count as f64);
        }
    }
    rep.check("bijection_failures", bad, 0.0, json!({}), None);
    let n = config.n as i64;
    let mut factors = Vec::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
    for t in 0..config.trials {
        let f = FSpec::TrigPoly {
            degree: config.degree,
            seed: config.seed.wrapping_mul(1000).wrapping_add(t as u64),
        };
        let coeffs = f.coefficients(2).expect("polynomial");
        // ĝ(k + l, l - k) = f̂(k, l)
        let g_coeffs: Vec<(Vec<i64>, Complex64)> = coeffs.iter().map(|(k, c)| (vec![k[0] + k[1], k[1] - k[0]], *c)).collect();
        let (mut num, mut den) = (0.0, 0.0);
        for _ in 0..config.points {
            let x = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
            let uv = [0.5 * (x[0] + x[1]), 0.5 * (x[1] - x[0])];
            let a = partial_sum_at(&coeffs, |k| k[0].abs() + k[1].abs() <= n, &x);
            let b = partial_sum_at(&g_coeffs, |k| k[0].abs() <= n && k[1].abs() <= n, &uv);
            num += a * b;
            den += b * b;
        }
        factors.push(num / den);
    }
    if !factors.is_empty() {
        let mean = factors.iter().sum::<f64>() / factors.len() as f64;
        let var = factors.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / factors.len() as f64;
        rep.record("factor", mean);
        rep.check("factor_variance", var, 1e-10, json!({"n": config.n, "trials": config.trials}), None);
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_of_four() {
        assert_eq!(support_bijection_holds(4), (41, true));
    }

    #[test]
    fn single_mode() {
        // f = e^{ix}: g(u, v) = e^{i(u - v)}, coefficient at (1, -1)
        let coeffs = vec![(vec![1i64, 0], Complex64::new(1.0, 0.0))];
        let g = vec![(vec![1i64, -1], Complex64::new(1.0, 0.0))];
        let x = [0.3, -1.2];
        let uv = [0.5 * (x[0] + x[1]), 0.5 * (x[1] - x[0])];
        let a = partial_sum_at(&coeffs, |k| k[0].abs() + k[1].abs() <= 2, &x);
        let b = partial_sum_at(&g, |k| k[0].abs() <= 2 && k[1].abs() <= 2, &uv);
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn default_check_passes() {
        let r = run_rotation_check(&RotationConfig::default());
        assert!(r.pass, "{}", r.to_json());
        assert!((r.metric("factor").unwrap() - 1.0).abs() < 1e-12);
    }
}
