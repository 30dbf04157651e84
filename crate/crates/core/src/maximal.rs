//! Discrete maximal functions and maximal summability means.
//!
//! Rectangle averages are grid aligned: a rectangle is a product of runs of
//! consecutive grid cells (periodically wrapped) whose lengths come from a
//! side ladder. Grid values therefore approximate the continuum suprema from
//! below.

use std::collections::VecDeque;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result, SummaError};
use crate::kernels::{KernelSpec, Region};
use crate::spectral::{analyze, convolve, kernel_on_grid, summability_mean, GridFunction, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum MaximalVariant {
    /// equal side lengths
    Cube,
    /// side ratios within [1/τ, τ]
    Cone(f64),
    /// all rectangles
    Strong,
}

/// Admissible side lengths, in grid cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SideLadder {
    /// 2^j and 2^j + 1 up to G/2
    DyadicPlusOdd,
    /// every length 1, …, G/2
    Exhaustive,
}

impl SideLadder {
    pub fn sides(&self, g: usize) -> Vec<usize> {
        let top = (g / 2).max(1);
        match self {
            SideLadder::Exhaustive => (1..=top).collect(),
            SideLadder::DyadicPlusOdd => {
                let mut v = Vec::new();
                let mut p = 1;
                while p <= top {
                    v.push(p);
                    if p + 1 <= top && p > 1 {
                        v.push(p + 1);
                    }
                    p *= 2;
                }
                v.sort_unstable();
                v.dedup();
                v
            }
        }
    }
}

/// All side vectors admitted by the variant.
pub fn side_vectors(variant: MaximalVariant, d: usize, sides: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; d];
    fn rec(axis: usize, sides: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, keep: &dyn Fn(&[usize]) -> bool) {
        if axis == cur.len() {
            if keep(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for &s in sides {
            cur[axis] = s;
            rec(axis + 1, sides, cur, out, keep);
        }
    }
    let keep: Box<dyn Fn(&[usize]) -> bool> = match variant {
        MaximalVariant::Cube => Box::new(|s: &[usize]| s.iter().all(|&v| v == s[0])),
        MaximalVariant::Strong => Box::new(|_: &[usize]| true),
        MaximalVariant::Cone(tau) => Box::new(move |s: &[usize]| {
            let lo = *s.iter().min().unwrap() as f64;
            let hi = *s.iter().max().unwrap() as f64;
            hi <= tau * lo * (1.0 + 1e-12)
        }),
    };
    rec(0, sides, &mut current, &mut out, keep.as_ref());
    out
}

/// Summed-area table of |f| on the doubled periodic domain, (2G+1)^d entries.
struct PrefixTable {
    d: usize,
    g: usize,
    ext: usize,
    table: Vec<f64>,
}

impl PrefixTable {
    fn new(values: &[f64], d: usize, g: usize) -> Self {
        let ext = 2 * g + 1;
        let size = ext.pow(d as u32);
        let mut table = vec![0.0; size];
        // fill T[i+1] = |f|((i) mod G) then integrate along each axis
        for (pos, slot) in table.iter_mut().enumerate() {
            let mut rem = pos;
            let mut src = 0usize;
            let mut inside = true;
            let mut idx = vec![0usize; d];
            for a in (0..d).rev() {
                idx[a] = rem % ext;
                rem /= ext;
            }
            for &i in &idx {
                if i == 0 {
                    inside = false;
                    break;
                }
                src = src * g + (i - 1) % g;
            }
            if inside {
                *slot = values[src];
            }
        }
        for axis in 0..d {
            let stride = ext.pow((d - 1 - axis) as u32);
            for pos in 0..size {
                if (pos / stride) % ext != 0 {
                    table[pos] += table[pos - stride];
                }
            }
        }
        Self { d, g, ext, table }
    }

    /// Box averages for all start positions, for one side vector.
    fn averages(&self, sides: &[usize]) -> Vec<f64> {
        let (d, g, ext) = (self.d, self.g, self.ext);
        let strides: Vec<usize> = (0..d).map(|a| ext.pow((d - 1 - a) as u32)).collect();
        let corners: Vec<(usize, f64)> = (0..(1usize << d))
            .map(|mask| {
                let mut off = 0;
                let mut count = 0;
                for a in 0..d {
                    if mask & (1 << a) != 0 {
                        off += sides[a] * strides[a];
                        count += 1;
                    }
                }
                (off, if (d - count) % 2 == 0 { 1.0 } else { -1.0 })
            })
            .collect();
        let vol: f64 = sides.iter().map(|&s| s as f64).product();
        (0..g.pow(d as u32))
            .map(|flat| {
                let mut rem = flat;
                let mut base = 0;
                for a in (0..d).rev() {
                    base += (rem % g) * strides[a];
                    rem /= g;
                }
                let mut s = 0.0;
                for &(off, sign) in &corners {
                    s += sign * self.table[base + off];
                }
                s / vol
            })
            .collect()
    }
}

/// out[p] = max_{a ∈ [p-w+1, p]} line[a], periodic.
fn sliding_max_back(line: &[f64], w: usize, out: &mut [f64]) {
    let g = line.len();
    let mut dq: VecDeque<usize> = VecDeque::new();
    // positions -(w-1) .. g-1, indexed by shifting by g
    let start = g as isize - (w as isize - 1);
    for t in 0..(g + w - 1) {
        let pos = start + t as isize; // in [g-w+1, 2g-1]
        let v = line[(pos as usize) % g];
        while let Some(&back) = dq.back() {
            if line[back % g] <= v {
                dq.pop_back();
            } else {
                break;
            }
        }
        dq.push_back(pos as usize);
        let p = pos - g as isize; // current right end in [-(w-1), g-1]
        if p >= 0 {
            while let Some(&front) = dq.front() {
                if (front as isize) < pos - (w as isize - 1) {
                    dq.pop_front();
                } else {
                    break;
                }
            }
            out[p as usize] = line[dq.front().copied().unwrap() % g];
        }
    }
}

fn max_over_containing(avg: Vec<f64>, sides: &[usize], d: usize, g: usize) -> Vec<f64> {
    let mut cur = avg;
    let mut line = vec![0.0; g];
    let mut out = vec![0.0; g];
    for axis in 0..d {
        let w = sides[axis];
        if w == 1 {
            continue;
        }
        let stride = g.pow((d - 1 - axis) as u32);
        let mut next = cur.clone();
        for block in 0..(cur.len() / (g * stride)) {
            for offset in 0..stride {
                let base = block * g * stride + offset;
                for i in 0..g {
                    line[i] = cur[base + i * stride];
                }
                sliding_max_back(&line, w, &mut out);
                for i in 0..g {
                    next[base + i * stride] = out[i];
                }
            }
        }
        cur = next;
    }
    cur
}

/// Maximal function of |f| over grid-aligned rectangles containing each
/// point, with the default dyadic-plus-odd side ladder.
pub fn maximal_function(f: &GridFunction, variant: MaximalVariant) -> Result<GridFunction> {
    maximal_function_with(f, variant, &SideLadder::DyadicPlusOdd)
}

pub fn maximal_function_with(f: &GridFunction, variant: MaximalVariant, ladder: &SideLadder) -> Result<GridFunction> {
    if let MaximalVariant::Cone(tau) = variant {
        if !(tau >= 1.0) {
            return Err(domain("maximal_function", format!("cone aperture {tau} must be >= 1")));
        }
    }
    if f.max_imag() > 1e-9 * f.abs().iter().fold(1.0f64, |m, &v| m.max(v)) {
        return Err(domain("maximal_function", "input must be real-valued"));
    }
    let (d, g) = (f.d, f.g);
    let values: Vec<f64> = f.samples.iter().map(|c| c.re.abs()).collect();
    let table = PrefixTable::new(&values, d, g);
    let sides = ladder.sides(g);
    let vectors = side_vectors(variant, d, &sides);
    let best = vectors
        .par_iter()
        .map(|s| max_over_containing(table.averages(s), s, d, g))
        .reduce(
            || vec![0.0; values.len()],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x = x.max(*y);
                }
                a
            },
        );
    GridFunction::from_real(d, g, &best)
}

/// Per-coordinate candidate values for mean indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Ladder {
    All,
    /// powers of two
    Dyadic,
    Values(Vec<usize>),
}

impl Ladder {
    fn values(&self, top: usize) -> Vec<usize> {
        match self {
            Ladder::All => (1..=top).collect(),
            Ladder::Dyadic => {
                let mut v = Vec::new();
                let mut p = 1;
                while p <= top {
                    v.push(p);
                    p *= 2;
                }
                v
            }
            Ladder::Values(vals) => {
                let mut v: Vec<usize> = vals.iter().copied().filter(|&x| x >= 1 && x <= top).collect();
                v.sort_unstable();
                v.dedup();
                v
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum IndexKind {
    Box { n_max: Vec<usize> },
    Cone { tau: f64, n_max: Vec<usize> },
    /// γ_j(x) = x^{p_j} for j = 2, …, d
    ConeLike { exponents: Vec<f64>, taus: Vec<f64>, n_max: Vec<usize> },
    Explicit,
}

/// Growth constants of a cone-like γ(x) = x^p at ratio ξ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConeLikeConstants {
    pub c1: f64,
    pub c2: f64,
    pub omega1: f64,
    pub omega2: f64,
}

/// A family of mean indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexSet {
    pub kind: IndexKind,
    pub members: Vec<Vec<usize>>,
}

fn product_members(lists: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for l in lists {
        let mut next = Vec::new();
        for prefix in &out {
            for &v in l {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

impl IndexSet {
    pub fn single(n: Vec<usize>) -> Self {
        Self {
            kind: IndexKind::Explicit,
            members: vec![n],
        }
    }

    pub fn explicit(members: Vec<Vec<usize>>) -> Self {
        Self {
            kind: IndexKind::Explicit,
            members,
        }
    }

    /// All n with 1 ≤ n_i ≤ N_i on the ladder.
    pub fn boxed(n_max: Vec<usize>, ladder: &Ladder) -> Self {
        let lists: Vec<Vec<usize>> = n_max.iter().map(|&t| ladder.values(t)).collect();
        Self {
            members: product_members(&lists),
            kind: IndexKind::Box { n_max },
        }
    }

    /// n on the ladder with τ^{-1} ≤ n_i/n_j ≤ τ.
    pub fn cone(tau: f64, n_max: Vec<usize>, ladder: &Ladder) -> Result<Self> {
        if !(tau >= 1.0) {
            return Err(domain("IndexSet::cone", format!("tau = {tau} must be >= 1")));
        }
        let lists: Vec<Vec<usize>> = n_max.iter().map(|&t| ladder.values(t)).collect();
        let members = product_members(&lists)
            .into_iter()
            .filter(|n| {
                let lo = *n.iter().min().unwrap() as f64;
                let hi = *n.iter().max().unwrap() as f64;
                hi <= tau * lo * (1.0 + 1e-12)
            })
            .collect();
        Ok(Self {
            kind: IndexKind::Cone { tau, n_max },
            members,
        })
    }

    /// n with τ_j^{-1} n_1^{p_j} ≤ n_j ≤ τ_j n_1^{p_j}, j ≥ 2.
    pub fn cone_like(exponents: Vec<f64>, taus: Vec<f64>, n_max: Vec<usize>, ladder: &Ladder) -> Result<Self> {
        let d = n_max.len();
        if exponents.len() + 1 != d || taus.len() + 1 != d {
            return Err(SummaError::Shape(format!(
                "cone-like set in d = {d} needs {} exponents and taus",
                d.saturating_sub(1)
            )));
        }
        for (&p, &t) in exponents.iter().zip(&taus) {
            if !(p > 0.0) || !(t >= 1.0) {
                return Err(domain("IndexSet::cone_like", format!("need p > 0 and tau >= 1 (got {p}, {t})")));
            }
            let c = cone_like_constants(p, 2.0);
            if !(c.c1 > 1.0) || !c.c2.is_finite() {
                return Err(domain("IndexSet::cone_like", format!("gamma(x) = x^{p} is not admissible")));
            }
        }
        let lists: Vec<Vec<usize>> = n_max.iter().map(|&t| ladder.values(t)).collect();
        let members = product_members(&lists)
            .into_iter()
            .filter(|n| {
                let n1 = n[0] as f64;
                n.iter().skip(1).zip(exponents.iter().zip(&taus)).all(|(&nj, (&p, &t))| {
                    let g = n1.powf(p);
                    let nj = nj as f64;
                    nj >= g / t * (1.0 - 1e-12) && nj <= t * g * (1.0 + 1e-12)
                })
            })
            .collect();
        Ok(Self {
            kind: IndexKind::ConeLike { exponents, taus, n_max },
            members,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Sampled c_1 = inf γ(ξx)/γ(x) and c_2 = sup over x ∈ [2^-20, 2^20] for
/// γ(x) = x^p, with ω_i = log c_i / log ξ.
pub fn cone_like_constants(p: f64, xi: f64) -> ConeLikeConstants {
    let gamma = |x: f64| x.powf(p);
    let mut c1 = f64::INFINITY;
    let mut c2 = 0.0f64;
    for i in -80..=80 {
        let x = 2f64.powf(i as f64 / 4.0);
        let r = gamma(xi * x) / gamma(x);
        c1 = c1.min(r);
        c2 = c2.max(r);
    }
    ConeLikeConstants {
        c1,
        c2,
        omega1: c1.ln() / xi.ln(),
        omega2: c2.ln() / xi.ln(),
    }
}

fn pointwise_max(a: Vec<f64>, b: Vec<f64>) -> Vec<f64> {
    a.into_iter().zip(b).map(|(x, y)| x.max(y)).collect()
}

/// sup_{n ∈ indices} |σ_n f|, or with `absolute` the operator |f| * |K_n|
/// (one-dimensional kernels only).
pub fn maximal_mean(c: &Spectrum, family: &KernelSpec, indices: &IndexSet, absolute: bool) -> Result<GridFunction> {
    if indices.is_empty() {
        return Err(SummaError::EmptyIndexSet);
    }
    let expect = match family.region {
        Region::EllQ(_) => 1,
        Region::Rectangular => family.d,
    };
    if let Some(bad) = indices.members.iter().find(|n| n.len() != expect) {
        return Err(SummaError::Shape(format!("index {bad:?} does not fit a kernel taking {expect} indices")));
    }
    let abs_f = if absolute {
        if c.d != 1 {
            return Err(SummaError::Unsupported("the absolute-kernel operator is one-dimensional".into()));
        }
        let f = crate::spectral::synthesize(c)?;
        let a: Vec<f64> = f.samples.iter().map(|v| v.norm()).collect();
        Some(GridFunction::from_real(1, c.g, &a)?)
    } else {
        None
    };
    let results: Vec<Result<Vec<f64>>> = indices
        .members
        .par_iter()
        .map(|n| {
            let spec = family.with_n(n.clone());
            match &abs_f {
                None => Ok(summability_mean(c, &spec)?.abs()),
                Some(af) => {
                    let k = kernel_on_grid(&spec, 1, c.g)?;
                    let ak: Vec<f64> = k.samples.iter().map(|v| v.re.abs()).collect();
                    let conv = convolve(af, &GridFunction::from_real(1, c.g, &ak)?)?;
                    Ok(conv.samples.iter().map(|v| v.re).collect())
                }
            }
        })
        .collect();
    let mut best = vec![0.0; c.g.pow(c.d as u32)];
    for r in results {
        best = pointwise_max(best, r?);
    }
    GridFunction::from_real(c.d, c.g, &best)
}

/// 32 geometric points in [1e-3, 4].
pub fn default_t_grid() -> Vec<f64> {
    let (lo, hi) = (1e-3f64, 4.0f64);
    (0..32).map(|i| lo * (hi / lo).powf(i as f64 / 31.0)).collect()
}

const POISSON_T_MIN: f64 = 1e-4;
const POISSON_T_MAX: f64 = 10.0;

fn check_t(t: f64) -> Result<()> {
    if !(t > POISSON_T_MIN && t <= POISSON_T_MAX) {
        return Err(domain("poisson", format!("t = {t} outside (1e-4, 10]")));
    }
    Ok(())
}

/// Periodic Poisson kernel Σ_k e^{-t‖k‖_2} e^{ik·x} by a truncated lattice sum.
pub fn poisson_kernel(t: f64, x: &[f64]) -> Result<f64> {
    check_t(t)?;
    let d = x.len();
    // ‖k‖_2 ≥ ‖k‖_∞ bounds the shell m by #shell(m)·e^{-tm}
    let shell = |m: f64| ((2.0 * m + 1.0).powi(d as i32) - (2.0 * m - 1.0).powi(d as i32)) * (-t * m).exp();
    let mut radius = 0usize;
    loop {
        radius += 1;
        let mut tail = 0.0;
        let mut m = radius as f64 + 1.0;
        loop {
            let s = shell(m);
            tail += s;
            if s < 1e-18 * tail.max(1e-300) || s == 0.0 {
                break;
            }
            m += 1.0;
        }
        if tail < 1e-10 {
            break;
        }
        if (2 * radius + 1).pow(d as u32) > 50_000_000 {
            return Err(SummaError::NonConvergence {
                what: "Poisson lattice sum",
                tail,
                limit: 1e-10,
            });
        }
    }
    let r = radius as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    crate::lattice::for_each_in_box(&vec![r; d], |k| {
        let norm = (k.iter().map(|v| v * v).sum::<i64>() as f64).sqrt();
        let phase: f64 = k.iter().zip(x).map(|(&kj, &xj)| kj as f64 * xj).sum();
        acc += Complex64::from_polar((-t * norm).exp(), phase);
    });
    Ok(acc.re)
}

/// max over t of |f * P_t| (normalized convolution), applying the
/// multiplier e^{-t‖k‖_2} to the grid spectrum of f.
pub fn poisson_maximal(f: &GridFunction, t_grid: &[f64]) -> Result<GridFunction> {
    if t_grid.is_empty() {
        return Err(domain("poisson_maximal", "t_grid must be nonempty"));
    }
    for &t in t_grid {
        check_t(t)?;
    }
    let c = analyze(f)?;
    let results: Vec<Result<Vec<f64>>> = t_grid
        .par_iter()
        .map(|&t| {
            let s = c.map_k(|k| {
                let norm = (k.iter().map(|v| v * v).sum::<i64>() as f64).sqrt();
                Complex64::new((-t * norm).exp(), 0.0)
            });
            Ok(crate::spectral::synthesize(&s)?.abs())
        })
        .collect();
    let mut best = vec![0.0; f.len()];
    for r in results {
        best = pointwise_max(best, r?);
    }
    GridFunction::from_real(f.d, f.g, &best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ladder_contents() {
        assert_eq!(SideLadder::DyadicPlusOdd.sides(32), vec![1, 2, 3, 4, 5, 8, 9, 16]);
        assert_eq!(SideLadder::Exhaustive.sides(8), vec![1, 2, 3, 4]);
    }

    #[test]
    fn sliding_max_periodic() {
        let line = [5.0, 1.0, 2.0, 0.0, 3.0];
        let mut out = [0.0; 5];
        sliding_max_back(&line, 2, &mut out);
        assert_eq!(out, [5.0, 5.0, 2.0, 2.0, 3.0]);
        sliding_max_back(&line, 3, &mut out);
        assert_eq!(out, [5.0, 5.0, 5.0, 2.0, 3.0]);
    }

    fn brute(values: &[f64], g: usize, variant: MaximalVariant, sides: &[usize]) -> Vec<f64> {
        // 2-D: average over every rectangle containing each point
        let mut out = vec![0.0f64; g * g];
        for s in side_vectors(variant, 2, sides) {
            for a0 in 0..g {
                for a1 in 0..g {
                    let mut sum = 0.0;
                    for i in 0..s[0] {
                        for j in 0..s[1] {
                            sum += values[((a0 + i) % g) * g + (a1 + j) % g];
                        }
                    }
                    let avg = sum / (s[0] * s[1]) as f64;
                    for i in 0..s[0] {
                        for j in 0..s[1] {
                            let p = ((a0 + i) % g) * g + (a1 + j) % g;
                            out[p] = out[p].max(avg);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g = 8;
        let values: Vec<f64> = (0..g * g).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = GridFunction::from_real(2, g, &values).unwrap();
        let abs: Vec<f64> = values.iter().map(|v| v.abs()).collect();
        for variant in [MaximalVariant::Cube, MaximalVariant::Cone(2.0), MaximalVariant::Strong] {
            let m = maximal_function_with(&f, variant, &SideLadder::Exhaustive).unwrap();
            let b = brute(&abs, g, variant, &SideLadder::Exhaustive.sides(g));
            for (x, y) in m.samples.iter().zip(&b) {
                assert!((x.re - y).abs() < 1e-12, "{variant:?}");
            }
        }
    }

    #[test]
    fn constant_is_fixed() {
        let f = GridFunction::from_fn(2, 16, |_| 2.5).unwrap();
        let m = maximal_function(&f, MaximalVariant::Strong).unwrap();
        assert!(m.samples.iter().all(|v| (v.re - 2.5).abs() < 1e-12));
    }

    #[test]
    fn cone_of_aperture_one_is_the_diagonal() {
        let s = IndexSet::cone(1.0, vec![8, 8], &Ladder::All).unwrap();
        assert_eq!(s.len(), 8);
        assert!(s.members.iter().all(|n| n[0] == n[1]));
    }

    #[test]
    fn cone_like_constants_for_powers() {
        let c = cone_like_constants(1.5, 2.0);
        assert!((c.omega1 - 1.5).abs() < 1e-12 && (c.omega2 - 1.5).abs() < 1e-12);
        assert!(IndexSet::cone_like(vec![2.0], vec![2.0], vec![8, 64], &Ladder::All).unwrap().len() > 0);
    }

    #[test]
    fn empty_index_set_error() {
        let c = Spectrum::zeros(1, 16).unwrap();
        let r = maximal_mean(&c, &KernelSpec::fejer(1, crate::lattice::Q::One, 2), &IndexSet::explicit(vec![]), false);
        assert!(matches!(r, Err(SummaError::EmptyIndexSet)));
    }

    #[test]
    fn poisson_kernel_at_origin_matches_closed_form() {
        let t = 1.0f64;
        let r = (-t).exp();
        let v = poisson_kernel(t, &[0.0]).unwrap();
        assert!((v - (1.0 + r) / (1.0 - r)).abs() < 1e-10);
        let x = 0.7;
        let w = poisson_kernel(t, &[x]).unwrap();
        assert!((w - (1.0 - r * r) / (1.0 - 2.0 * r * x.cos() + r * r)).abs() < 1e-10);
        assert!(poisson_kernel(1e-5, &[0.0]).is_err());
        let _ = PI;
    }

    #[test]
    fn poisson_maximal_of_constant() {
        let f = GridFunction::from_fn(2, 16, |_| 1.0).unwrap();
        let m = poisson_maximal(&f, &default_t_grid()).unwrap();
        assert!(m.samples.iter().all(|v| (v.re - 1.0).abs() < 1e-12));
    }
}
