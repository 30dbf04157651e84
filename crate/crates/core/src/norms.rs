//! Function-space norms on grid functions and on evaluators over R^d.
//!
//! Dyadic shells are P_k = {2^{k-1}π ≤ ‖x‖_∞ < 2^kπ}. On the torus the
//! shells run over k ≤ 0 (points with ‖x‖_∞ = π are put in P_0) down to the
//! finest resolvable shell k_min; everything inside 2^{k_min-1}π is the core.
//! The shells inside the core are accounted for by assuming |f|^q is spread
//! uniformly over the core, which makes E_1 equal L_1 and is exact for
//! constants.

use serde::Serialize;

use crate::error::{domain, Result, SummaError};
use crate::kernels::ThetaFunction;
use crate::numeric::pairwise_sum;
use crate::special::gamma;
use crate::spectral::GridFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub d: usize,
    pub g: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Truncation {
    pub cutoff: String,
    pub tail: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormReport {
    pub value: f64,
    pub norm_id: String,
    pub resolution: Option<Resolution>,
    pub truncation: Option<Truncation>,
}

impl NormReport {
    pub fn new(norm_id: impl Into<String>, value: f64) -> Self {
        Self {
            value,
            norm_id: norm_id.into(),
            resolution: None,
            truncation: None,
        }
    }

    /// True when no tail is reported or it is below 1e-6·value.
    pub fn converged(&self) -> bool {
        match self.truncation.as_ref().and_then(|t| t.tail) {
            None => true,
            Some(t) => t <= 1e-6 * self.value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpKind {
    Strong,
    Weak,
}

/// ((2π/G)^d Σ|f|^p)^{1/p}, or sup_ρ ρ·λ(|f| > ρ)^{1/p} for `Weak`.
///
/// The weak supremum is taken over the limits ρ ↑ ρ_i at each distinct
/// sample magnitude, where it equals ρ_i·λ(|f| ≥ ρ_i)^{1/p}.
pub fn lp_norm(f: &GridFunction, p: f64, kind: LpKind) -> Result<f64> {
    if !(p > 0.0) {
        return Err(domain("lp_norm", format!("p = {p} must be positive")));
    }
    let abs = f.abs();
    let sup = abs.iter().fold(0.0f64, |m, &v| m.max(v));
    if p.is_infinite() {
        return Ok(sup);
    }
    let cell = f.cell_volume();
    match kind {
        LpKind::Strong => {
            let powered: Vec<f64> = abs.iter().map(|v| v.powf(p)).collect();
            Ok((cell * pairwise_sum(&powered)).powf(1.0 / p))
        }
        LpKind::Weak => {
            let mut sorted = abs;
            sorted.sort_by(|a, b| b.total_cmp(a));
            let mut best = 0.0f64;
            let mut i = 0;
            while i < sorted.len() {
                let rho = sorted[i];
                if rho == 0.0 {
                    break;
                }
                let mut j = i;
                while j < sorted.len() && sorted[j] == rho {
                    j += 1;
                }
                best = best.max(rho * (cell * j as f64).powf(1.0 / p));
                i = j;
            }
            Ok(best)
        }
    }
}

/// ∫ |f| (log⁺|f|)^power on the grid.
pub fn llogl_norm(f: &GridFunction, power: u32) -> f64 {
    let terms: Vec<f64> = f
        .samples
        .iter()
        .map(|v| {
            let a = v.norm();
            a * a.ln().max(0.0).powi(power as i32)
        })
        .collect();
    f.cell_volume() * pairwise_sum(&terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HerzVariant {
    /// shells of ‖x‖_∞
    E,
    /// per-coordinate product shells 2^{k_j-1}π ≤ |x_j| < 2^{k_j}π
    EPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum HerzDomain {
    /// k ≤ 0; `k_min` defaults to the finest resolvable shell
    Torus { k_min: Option<i32> },
    /// R^d, shells k_min ≤ k ≤ k_max, each sampled on `samples` points per dimension
    Line { k_min: i32, k_max: i32, samples: usize },
}

pub enum HerzInput<'a> {
    Grid(&'a GridFunction),
    Evaluator { d: usize, f: &'a (dyn Fn(&[f64]) -> f64 + Sync) },
}

fn check_q(function: &'static str, q: f64) -> Result<()> {
    if !(q >= 1.0) {
        return Err(domain(function, format!("q = {q} must lie in [1, inf]")));
    }
    Ok(())
}

fn log2_exact(g: usize) -> i32 {
    g.trailing_zeros() as i32
}

/// Finest shell index resolvable on a G-grid: G ≥ 2^{|k_min|+3}.
pub fn finest_shell(g: usize) -> i32 {
    3 - log2_exact(g)
}

fn resolve_k_min(g: usize, k_min: Option<i32>) -> Result<i32> {
    let finest = finest_shell(g);
    match k_min {
        None if finest > 0 => Err(SummaError::UnderResolution(format!("a grid of {g} points resolves no dyadic shell"))),
        None => Ok(finest),
        Some(k) if k > 0 => Err(domain("herz_norm", format!("k_min = {k} must be <= 0 on the torus"))),
        Some(k) if k < finest => Err(SummaError::UnderResolution(format!(
            "shell P_{k} has fewer than 4 grid points per dimension on a grid of {g}"
        ))),
        Some(k) => Ok(k),
    }
}

/// Torus shell index of a grid coordinate, `None` inside the core.
fn axis_shell(g: usize, j: usize, k_min: i32) -> Option<i32> {
    let half = g / 2;
    let m = j.abs_diff(half);
    if m == 0 {
        return None;
    }
    let l = log2_exact(half);
    let k = (usize::BITS - 1 - m.leading_zeros()) as i32 + 1 - l;
    let k = k.min(0);
    (k >= k_min).then_some(k)
}

/// Σ over the core sub-shells of 2^{k·dim(1-1/q)}‖f 1_{P_k}‖_q, given the
/// core's q-mass (or sup for q = ∞) and spreading it uniformly.
fn core_term(mass: f64, q: f64, k_min: i32, dim: usize) -> f64 {
    let dimf = dim as f64;
    let frac = 1.0 - 2f64.powf(-dimf);
    if q.is_infinite() {
        return 2f64.powf((k_min - 1) as f64 * dimf) * mass / frac;
    }
    2f64.powf((k_min - 1) as f64 * dimf * (1.0 - 1.0 / q)) * mass.powf(1.0 / q) * frac.powf(1.0 / q - 1.0)
}

/// Accumulates q-masses (or sups) per shell label.
struct ShellAccumulator {
    q: f64,
    values: std::collections::BTreeMap<Vec<i32>, Vec<f64>>,
}

impl ShellAccumulator {
    fn new(q: f64) -> Self {
        Self {
            q,
            values: Default::default(),
        }
    }

    fn push(&mut self, key: Vec<i32>, abs: f64, weight: f64) {
        let v = if self.q.is_infinite() { abs } else { abs.powf(self.q) * weight };
        self.values.entry(key).or_default().push(v);
    }

    fn totals(&self) -> Vec<(Vec<i32>, f64)> {
        self.values
            .iter()
            .map(|(k, v)| {
                let t = if self.q.is_infinite() {
                    v.iter().fold(0.0f64, |m, &x| m.max(x))
                } else {
                    pairwise_sum(v)
                };
                (k.clone(), t)
            })
            .collect()
    }
}

const CORE: i32 = i32::MIN;

fn herz_sum(totals: &[(Vec<i32>, f64)], q: f64, variant: HerzVariant, k_min: i32, d: usize) -> f64 {
    let expo = 1.0 - 1.0 / q;
    let norm_q = |mass: f64| if q.is_infinite() { mass } else { mass.powf(1.0 / q) };
    let terms: Vec<f64> = totals
        .iter()
        .map(|(key, mass)| match variant {
            HerzVariant::E => {
                if key[0] == CORE {
                    core_term(*mass, q, k_min, d)
                } else {
                    2f64.powf(key[0] as f64 * d as f64 * expo) * norm_q(*mass)
                }
            }
            HerzVariant::EPrime => {
                // a core coordinate contributes the 1-D core factor 2^{k_min(1-1/q)}
                let weight: f64 = key
                    .iter()
                    .map(|&k| if k == CORE { 2f64.powf(k_min as f64 * expo) } else { 2f64.powf(k as f64 * expo) })
                    .product();
                weight * norm_q(*mass)
            }
        })
        .collect();
    pairwise_sum(&terms)
}

/// Herz norm Σ_k 2^{kd(1-1/q)}‖f 1_{P_k}‖_q, or its product-shell analogue.
pub fn herz_norm(input: HerzInput<'_>, q: f64, variant: HerzVariant, dom: HerzDomain) -> Result<NormReport> {
    check_q("herz_norm", q)?;
    match (input, dom) {
        (HerzInput::Grid(f), HerzDomain::Torus { k_min }) => herz_torus(f, q, variant, k_min),
        (HerzInput::Evaluator { d, f }, HerzDomain::Line { k_min, k_max, samples }) => {
            herz_line(f, d, q, variant, k_min, k_max, samples)
        }
        (HerzInput::Evaluator { .. }, HerzDomain::Torus { .. }) => Err(SummaError::Unsupported(
            "sample the evaluator on a grid for the torus norm".into(),
        )),
        (HerzInput::Grid(_), HerzDomain::Line { .. }) => {
            Err(SummaError::Unsupported("a grid function lives on the torus; use an evaluator on R^d".into()))
        }
    }
}

fn herz_torus(f: &GridFunction, q: f64, variant: HerzVariant, k_min: Option<i32>) -> Result<NormReport> {
    let (d, g) = (f.d, f.g);
    let k_min = resolve_k_min(g, k_min)?;
    let cell = f.cell_volume();
    let mut acc = ShellAccumulator::new(q);
    for flat in 0..f.len() {
        let idx = crate::spectral::unflatten(d, g, flat);
        let shells: Vec<Option<i32>> = idx.iter().map(|&j| axis_shell(g, j, k_min)).collect();
        let key = match variant {
            HerzVariant::E => {
                if shells.iter().all(|s| s.is_none()) {
                    vec![CORE]
                } else {
                    vec![shells.iter().flatten().copied().max().unwrap()]
                }
            }
            HerzVariant::EPrime => shells.iter().map(|s| s.unwrap_or(CORE)).collect(),
        };
        acc.push(key, f.samples[flat].norm(), cell);
    }
    let value = herz_sum(&acc.totals(), q, variant, k_min, d);
    Ok(NormReport {
        value,
        norm_id: format!("herz-{}-q{}", variant_label(variant), q_label(q)),
        resolution: Some(Resolution { d, g }),
        truncation: Some(Truncation {
            cutoff: format!("shells {k_min}..=0, uniform core"),
            tail: None,
        }),
    })
}

fn variant_label(v: HerzVariant) -> &'static str {
    match v {
        HerzVariant::E => "E",
        HerzVariant::EPrime => "Eprime",
    }
}

fn q_label(q: f64) -> String {
    if q.is_infinite() {
        "inf".into()
    } else {
        format!("{q}")
    }
}

/// Midpoints of the two intervals 2^{k-1}π ≤ |t| < 2^kπ, m each, with weights.
fn axis_shell_nodes(k: i32, m: usize) -> Vec<(f64, f64)> {
    let lo = 2f64.powi(k - 1) * std::f64::consts::PI;
    let h = lo / m as f64;
    let mut out = Vec::with_capacity(2 * m);
    for i in 0..m {
        let t = lo + (i as f64 + 0.5) * h;
        out.push((t, h));
        out.push((-t, h));
    }
    out
}

fn herz_line(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    d: usize,
    q: f64,
    variant: HerzVariant,
    k_min: i32,
    k_max: i32,
    samples: usize,
) -> Result<NormReport> {
    if d == 0 || k_min > k_max || samples < 4 {
        return Err(domain("herz_norm", "need d >= 1, k_min <= k_max and at least 4 samples per dimension"));
    }
    // per-axis nodes: shells k_min..=k_max plus the core |t| < 2^{k_min-1}π
    let mut axis: Vec<(i32, f64, f64)> = Vec::new();
    let core_half = 2f64.powi(k_min - 1) * std::f64::consts::PI;
    let hc = 2.0 * core_half / samples as f64;
    for i in 0..samples {
        axis.push((CORE, -core_half + (i as f64 + 0.5) * hc, hc));
    }
    for k in k_min..=k_max {
        for (t, w) in axis_shell_nodes(k, samples / 2) {
            axis.push((k, t, w));
        }
    }
    let mut acc = ShellAccumulator::new(q);
    let mut idx = vec![0usize; d];
    let mut point = vec![0.0; d];
    let mut last_shell = 0.0f64;
    let expo = 1.0 - 1.0 / q;
    'outer: loop {
        let mut w = 1.0;
        let mut labels = Vec::with_capacity(d);
        for a in 0..d {
            let (k, t, h) = axis[idx[a]];
            point[a] = t;
            w *= h;
            labels.push(k);
        }
        let v = f(&point).abs();
        let key = match variant {
            HerzVariant::E => vec![*labels.iter().max().unwrap()],
            HerzVariant::EPrime => labels,
        };
        if variant == HerzVariant::E && key[0] == k_max {
            last_shell = last_shell.max(v);
        }
        acc.push(key, v, w);
        for a in (0..d).rev() {
            idx[a] += 1;
            if idx[a] < axis.len() {
                continue 'outer;
            }
            idx[a] = 0;
        }
        break;
    }
    let value = herz_sum(&acc.totals(), q, variant, k_min, d);
    // geometric guess for shells beyond k_max from the outermost sup
    let tail = (variant == HerzVariant::E).then(|| {
        2f64.powf(k_max as f64 * d as f64 * expo) * last_shell * (2f64.powi(k_max) * std::f64::consts::PI).powf(d as f64 / q)
    });
    Ok(NormReport {
        value,
        norm_id: format!("herz-{}-q{}-line", variant_label(variant), q_label(q)),
        resolution: Some(Resolution { d, g: samples }),
        truncation: Some(Truncation {
            cutoff: format!("shells {k_min}..={k_max}, uniform core"),
            tail,
        }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DpForm {
    /// sup over dyadic r of (r^{-d} ∫_{[-r,r]^d} |f|^p)^{1/p}
    Integral,
    /// sup_{k ≤ 0} 2^{-kd/p}‖f 1_{P_k}‖_p
    Shell,
}

pub fn dp_norm(f: &GridFunction, p: f64, form: DpForm) -> Result<f64> {
    if !(p >= 1.0) || p.is_infinite() {
        return Err(domain("dp_norm", format!("p = {p} must lie in [1, inf)")));
    }
    let (d, g) = (f.d, f.g);
    let k_min = resolve_k_min(g, None)?;
    let cell = f.cell_volume();
    let dimf = d as f64;
    let mut shells = ShellAccumulator::new(p);
    for flat in 0..f.len() {
        let idx = crate::spectral::unflatten(d, g, flat);
        let k = idx.iter().filter_map(|&j| axis_shell(g, j, k_min)).max().unwrap_or(CORE);
        shells.push(vec![k], f.samples[flat].norm(), cell);
    }
    let totals = shells.totals();
    let mass_of = |k: i32| totals.iter().find(|(key, _)| key[0] == k).map_or(0.0, |(_, m)| *m);
    match form {
        DpForm::Shell => {
            let mut best = 0.0f64;
            for k in k_min..=0 {
                best = best.max((2f64.powf(-(k as f64) * dimf) * mass_of(k)).powf(1.0 / p));
            }
            // every core sub-shell gives the same value under the uniform spread
            let core = mass_of(CORE) * 2f64.powf((1 - k_min) as f64 * dimf) * (1.0 - 2f64.powf(-dimf));
            Ok(best.max(core.powf(1.0 / p)))
        }
        DpForm::Integral => {
            // [-r, r)^d with r = 2^k π is the core plus shells k_min..=k
            let mut cum = mass_of(CORE);
            let mut best = 0.0f64;
            for k in k_min..=0 {
                cum += mass_of(k);
                let r = 2f64.powi(k) * std::f64::consts::PI;
                best = best.max((cum / r.powf(dimf)).powf(1.0 / p));
            }
            Ok(best)
        }
    }
}

/// Σ_{‖k‖_∞ ≤ R} sup_{[0,1)^d + k} |θ| plus the catalog tail bound.
///
/// Monotone θ use the exact corner value; others are sampled at 65 points
/// per cell and dimension.
pub fn wiener_amalgam_norm(theta: &ThetaFunction, d: usize, truncation_radius: usize) -> Result<NormReport> {
    if d == 0 || truncation_radius == 0 {
        return Err(domain("wiener_amalgam_norm", "need d >= 1 and a positive radius"));
    }
    let tail = theta.wiener_tail_bound(truncation_radius, d);
    if !(tail <= 1e-6) {
        return Err(SummaError::NonConvergence {
            what: "Wiener amalgam tail",
            tail,
            limit: 1e-6,
        });
    }
    let r = truncation_radius as i64;
    let mut sups = Vec::new();
    let samples: Vec<f64> = (0..=64).map(|i| i as f64 / 64.0).collect();
    crate::lattice::for_each_in_box(&vec![r; d], |k| {
        let s = if theta.is_monotone() {
            let corner: Vec<f64> = k.iter().map(|&kj| if kj >= 0 { kj as f64 } else { (kj + 1) as f64 }).collect();
            theta.eval(&corner).abs()
        } else if theta.is_tensor() {
            k.iter()
                .map(|&kj| samples.iter().fold(0.0f64, |m, &u| m.max(theta.profile(kj as f64 + u).abs())))
                .product()
        } else {
            let mut best = 0.0f64;
            let mut pt = vec![0.0; d];
            let mut idx = vec![0usize; d];
            'cell: loop {
                for a in 0..d {
                    pt[a] = k[a] as f64 + samples[idx[a]];
                }
                best = best.max(theta.eval(&pt).abs());
                for a in (0..d).rev() {
                    idx[a] += 1;
                    if idx[a] < samples.len() {
                        continue 'cell;
                    }
                    idx[a] = 0;
                }
                break;
            }
            best
        };
        sups.push(s);
    });
    Ok(NormReport {
        value: pairwise_sum(&sups),
        norm_id: format!("wiener-{}", theta.catalog_id),
        resolution: None,
        truncation: Some(Truncation {
            cutoff: format!("|k|_inf <= {truncation_radius}"),
            tail: Some(tail),
        }),
    })
}

/// Volume of the unit ℓ_r ball in R^d.
pub fn unit_ball_volume(d: usize, r: f64) -> f64 {
    if r.is_infinite() {
        return 2f64.powi(d as i32);
    }
    let one = gamma(1.0 + 1.0 / r).expect("finite");
    (2.0 * one).powi(d as i32) / gamma(1.0 + d as f64 / r).expect("finite")
}

fn norm_r(x: &[f64], r: f64) -> f64 {
    if r.is_infinite() {
        x.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    } else {
        x.iter().map(|v| v.abs().powf(r)).sum::<f64>().powf(1.0 / r)
    }
}

/// Unit ℓ_r directions: the surface of [-1,1]^d at `m` points per edge, rescaled.
fn sphere_directions(d: usize, r: f64, m: usize) -> Vec<Vec<f64>> {
    if d == 1 {
        return vec![vec![1.0], vec![-1.0]];
    }
    let ticks: Vec<f64> = (0..=m).map(|i| -1.0 + 2.0 * i as f64 / m as f64).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; d];
    'outer: loop {
        if idx.iter().any(|&i| i == 0 || i == m) {
            let v: Vec<f64> = idx.iter().map(|&i| ticks[i]).collect();
            let n = norm_r(&v, r);
            out.push(v.iter().map(|c| c / n).collect());
        }
        for a in (0..d).rev() {
            idx[a] += 1;
            if idx[a] <= m {
                continue 'outer;
            }
            idx[a] = 0;
        }
        break;
    }
    out
}

/// ‖η‖_1 for η(x) = sup_{‖t‖_r ≥ ‖x‖_r} |f(t)| on R^d, with ‖x‖_r ≤ `radius`
/// sampled at `shells` equally spaced radii.
pub fn nonincreasing_majorant_l1(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    d: usize,
    r: f64,
    radius: f64,
    shells: usize,
) -> Result<NormReport> {
    if !(r >= 1.0) || d == 0 || !(radius > 0.0) || shells < 4 {
        return Err(domain("nonincreasing_majorant_l1", "need r in [1, inf], d >= 1, radius > 0, >= 4 shells"));
    }
    let dirs = sphere_directions(d, r, 64);
    let h = radius / shells as f64;
    let shell_sup: Vec<f64> = (0..=shells)
        .map(|i| {
            let rho = i as f64 * h;
            dirs.iter()
                .map(|u| {
                    let x: Vec<f64> = u.iter().map(|c| c * rho).collect();
                    f(&x).abs()
                })
                .fold(0.0f64, f64::max)
        })
        .collect();
    let mut eta = shell_sup.clone();
    for i in (0..shells).rev() {
        eta[i] = eta[i].max(eta[i + 1]);
    }
    // trapezoid in ρ against dV = d·ω·ρ^{d-1} dρ
    let omega = unit_ball_volume(d, r);
    let terms: Vec<f64> = (0..=shells)
        .map(|i| {
            let rho = i as f64 * h;
            let w = if i == 0 || i == shells { 0.5 } else { 1.0 };
            w * eta[i] * d as f64 * omega * rho.powi(d as i32 - 1) * h
        })
        .collect();
    Ok(NormReport {
        value: pairwise_sum(&terms),
        norm_id: format!("majorant-l1-r{}", q_label(r)),
        resolution: None,
        truncation: Some(Truncation {
            cutoff: format!("|x|_r <= {radius}"),
            tail: Some(eta[shells] * omega * radius.powi(d as i32)),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn random(d: usize, g: usize, seed: u64) -> GridFunction {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<f64> = (0..g.pow(d as u32)).map(|_| rng.gen_range(-2.0..2.0)).collect();
        GridFunction::from_real(d, g, &v).unwrap()
    }

    #[test]
    fn indicator_strong_equals_weak() {
        let f = GridFunction::from_fn(1, 64, |x| if x[0] >= 0.0 { 1.0 } else { 0.0 }).unwrap();
        for p in [0.5, 1.0, 3.0] {
            let s = lp_norm(&f, p, LpKind::Strong).unwrap();
            let w = lp_norm(&f, p, LpKind::Weak).unwrap();
            assert!((s - PI.powf(1.0 / p)).abs() < 1e-12 && (s - w).abs() < 1e-12);
        }
        let one = GridFunction::from_fn(2, 8, |_| 1.0).unwrap();
        assert_eq!(lp_norm(&one, f64::INFINITY, LpKind::Strong).unwrap(), 1.0);
    }

    #[test]
    fn weak_below_strong() {
        for seed in 0..20 {
            let f = random(1, 64, seed);
            assert!(lp_norm(&f, 1.5, LpKind::Weak).unwrap() <= lp_norm(&f, 1.5, LpKind::Strong).unwrap() + 1e-12);
        }
    }

    #[test]
    fn llogl_examples() {
        let f = GridFunction::from_fn(1, 16, |_| E).unwrap();
        assert!((llogl_norm(&f, 1) - 2.0 * PI * E).abs() < 1e-12);
        let one = GridFunction::from_fn(1, 16, |_| 1.0).unwrap();
        assert_eq!(llogl_norm(&one, 2), 0.0);
        let r = random(2, 16, 3);
        assert!((llogl_norm(&r, 0) - lp_norm(&r, 1.0, LpKind::Strong).unwrap()).abs() < 1e-12);
    }

    fn torus(f: &GridFunction, q: f64, v: HerzVariant) -> f64 {
        herz_norm(HerzInput::Grid(f), q, v, HerzDomain::Torus { k_min: None }).unwrap().value
    }

    #[test]
    fn herz_examples() {
        let one = GridFunction::from_fn(1, 64, |_| 1.0).unwrap();
        assert!((torus(&one, f64::INFINITY, HerzVariant::E) - 2.0).abs() < 1e-12);
        for seed in 0..5 {
            let f = random(2, 32, seed);
            let l1 = lp_norm(&f, 1.0, LpKind::Strong).unwrap();
            assert!((torus(&f, 1.0, HerzVariant::E) - l1).abs() < 1e-10);
            assert!((torus(&f, 1.0, HerzVariant::EPrime) - l1).abs() < 1e-10);
        }
        // supported on P_{-2}: π/8 ≤ |x|_∞ < π/4
        let g = GridFunction::from_fn(2, 64, |x| {
            let m = x[0].abs().max(x[1].abs());
            if m >= PI / 8.0 && m < PI / 4.0 {
                3.0
            } else {
                0.0
            }
        })
        .unwrap();
        assert!((torus(&g, f64::INFINITY, HerzVariant::E) - 3.0 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn herz_resolution_errors() {
        let f = GridFunction::from_fn(1, 16, |_| 1.0).unwrap();
        let r = herz_norm(HerzInput::Grid(&f), 2.0, HerzVariant::E, HerzDomain::Torus { k_min: Some(-5) });
        assert!(matches!(r, Err(SummaError::UnderResolution(_))));
    }

    #[test]
    fn herz_monotone_in_q() {
        let f = random(2, 32, 11);
        let e1 = torus(&f, 1.0, HerzVariant::E);
        let e2 = torus(&f, 2.0, HerzVariant::E);
        let ei = torus(&f, f64::INFINITY, HerzVariant::E);
        // Hölder on P_k gives constants (|P_k| 2^{-kd})^{1-1/q} ≤ (2π)^{d(1-1/q)}
        let c = (2.0 * PI).powi(2);
        assert!(e1 <= c.sqrt() * e2 * (1.0 + 1e-12) && e2 <= c.sqrt() * ei * (1.0 + 1e-12), "{e1} {e2} {ei}");
    }

    #[test]
    fn dp_examples() {
        let one = GridFunction::from_fn(1, 64, |_| 1.0).unwrap();
        assert!((dp_norm(&one, 1.0, DpForm::Integral).unwrap() - 2.0).abs() < 1e-12);
        let ring = GridFunction::from_fn(1, 64, |x| if x[0].abs() >= PI / 2.0 { 2.0 } else { 0.0 }).unwrap();
        let ring_p = lp_norm(&ring, 2.0, LpKind::Strong).unwrap();
        assert!((dp_norm(&ring, 2.0, DpForm::Shell).unwrap() - ring_p).abs() < 1e-12);
        assert!((dp_norm(&ring, 2.0, DpForm::Integral).unwrap() - ring_p / PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn wiener_examples() {
        let fejer = ThetaFunction::fejer();
        let w = wiener_amalgam_norm(&fejer, 1, 3).unwrap();
        assert!((w.value - 2.0).abs() < 1e-12);
        let weier = ThetaFunction::weierstrass(1.0).unwrap();
        let w = wiener_amalgam_norm(&weier, 1, 40).unwrap();
        let exact = 2.0 / (1.0 - (-1.0f64).exp());
        assert!((w.value - exact).abs() < 2e-6, "{}", w.value);
        assert!(w.value >= 1.0);
    }

    #[test]
    fn majorant_of_radial_decreasing() {
        let f = |x: &[f64]| (-(x[0] * x[0] + x[1] * x[1])).exp();
        let r = nonincreasing_majorant_l1(&f, 2, 2.0, 8.0, 4000).unwrap();
        assert!((r.value - PI).abs() < 1e-4, "{}", r.value);
        let zero = |_: &[f64]| 0.0;
        assert_eq!(nonincreasing_majorant_l1(&zero, 1, 1.0, 1.0, 8).unwrap().value, 0.0);
    }
}
