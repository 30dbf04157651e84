use summa_core::harness::{run_suite, FSpec, SUITES};
use summa_core::maximal::{maximal_function, maximal_mean, poisson_maximal, default_t_grid, IndexSet, Ladder, MaximalVariant};
use summa_core::norms::{
    dp_norm, herz_norm, llogl_norm, lp_norm, wiener_amalgam_norm, DpForm, HerzDomain, HerzInput, HerzVariant, LpKind,
    NormReport,
};
use summa_core::spectral::{grid_point, kernel_on_grid, summability_mean, synthesize};
use summa_core::{GridFunction, KernelSpec, Method, Region, ThetaFunction, Q};

use crate::args::{Common, Format, MaxopArgs, MeansArgs, NormArgs, VerifyArgs};
use crate::output::{emit, Table};
use crate::CliError;

pub fn grid_size(g: Option<i64>, default: usize) -> Result<usize, CliError> {
    match g {
        None => Ok(default),
        Some(v) if v >= 4 && (v as u64).is_power_of_two() => Ok(v as usize),
        Some(v) => Err(CliError::usage("--grid", format!("must be a power of two >= 4 (got {v})"))),
    }
}

fn dimension(c: &Common) -> Result<usize, CliError> {
    match c.d.unwrap_or(1) {
        0 => Err(CliError::usage("--d", "must be at least 1")),
        d => Ok(d),
    }
}

fn theta(c: &Common) -> Result<Option<ThetaFunction>, CliError> {
    c.theta
        .as_deref()
        .map(|id| ThetaFunction::from_id(id).map_err(|e| CliError::usage("--theta", e.to_string())))
        .transpose()
}

/// Kernel spec described by the common flags.
pub fn kernel_spec(c: &Common) -> Result<KernelSpec, CliError> {
    let d = dimension(c)?;
    let method: Method = c
        .method
        .as_deref()
        .unwrap_or("dirichlet")
        .parse()
        .map_err(|e: String| CliError::usage("--method", e))?;
    if c.n.is_empty() {
        return Err(CliError::usage("--n", "an index is required"));
    }
    if c.n.len() != 1 && c.n.len() != d {
        return Err(CliError::usage("--n", format!("give one index or {d} (got {})", c.n.len())));
    }
    let rect = match c.q.as_deref() {
        None => c.n.len() > 1,
        Some("rect") | Some("rectangular") => true,
        Some(_) => false,
    };
    if !rect && c.n.len() > 1 {
        return Err(CliError::usage("--n", "a multi-index needs --q rect"));
    }
    let (alpha_default, gamma_default) = match method {
        Method::Dirichlet => (0.0, 1.0),
        _ => (1.0, 1.0),
    };
    let alpha = c.alpha.unwrap_or(alpha_default);
    let gamma = c.gamma.unwrap_or(gamma_default);
    if !(alpha >= 0.0) {
        return Err(CliError::usage("--alpha", format!("must be nonnegative (got {alpha})")));
    }
    if !(gamma >= 1.0) {
        return Err(CliError::usage("--gamma", format!("must be at least 1 (got {gamma})")));
    }
    let th = theta(c)?;
    if method == Method::Theta && th.is_none() {
        return Err(CliError::usage("--theta", "the theta method needs a catalog id"));
    }
    let mut spec = if rect {
        let n = if c.n.len() == 1 { vec![c.n[0]; d] } else { c.n.clone() };
        KernelSpec::rectangular(method, n, alpha, gamma)
    } else {
        let q: Q = c.q.as_deref().unwrap_or("inf").parse().map_err(|e: String| CliError::usage("--q", e))?;
        let mut s = KernelSpec::riesz(d, q, c.n[0], alpha, gamma);
        s.method = method;
        s
    };
    spec.theta = th;
    spec.validate().map_err(|e| CliError::usage(flag_for(&spec), e.to_string()))?;
    Ok(spec)
}

fn flag_for(spec: &KernelSpec) -> &'static str {
    match (spec.method, &spec.region) {
        (Method::Theta, _) => "--theta",
        (Method::Cesaro, Region::EllQ(_)) => "--q",
        (Method::Riesz, Region::EllQ(Q::Two)) => "--gamma",
        _ => "--method",
    }
}

fn describe(c: &Common, spec: &KernelSpec, g: usize) -> String {
    let q = match &spec.region {
        Region::EllQ(q) => q.to_string(),
        Region::Rectangular => "rect".into(),
    };
    let n: Vec<String> = spec.n.iter().map(|v| v.to_string()).collect();
    let mut s = format!(
        "d={} q={} method={} n={} alpha={} gamma={} grid={}",
        spec.d,
        q,
        spec.method,
        n.join(":"),
        spec.alpha,
        spec.gamma_exp,
        g
    );
    if let Some(t) = &c.theta {
        s.push_str(&format!(" theta={t}"));
    }
    s
}

fn axis_names(d: usize) -> Vec<String> {
    match d {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        _ => (1..=d).map(|i| format!("x{i}")).collect(),
    }
}

/// Rows over the closed grid (G + 1 points per axis, the last repeating the
/// first), x-major.
pub fn closed_grid_rows(d: usize, g: usize, columns: &[&GridFunction]) -> Vec<Vec<f64>> {
    let m = g + 1;
    let total = m.pow(d as u32);
    let mut rows = Vec::with_capacity(total);
    let mut idx = vec![0usize; d];
    for _ in 0..total {
        let mut row: Vec<f64> = idx.iter().map(|&j| if j == g { std::f64::consts::PI } else { grid_point(g, j) }).collect();
        let flat = idx.iter().fold(0usize, |acc, &j| acc * g + j % g);
        row.extend(columns.iter().map(|f| f.samples[flat].re));
        rows.push(row);
        for a in (0..d).rev() {
            idx[a] += 1;
            if idx[a] < m {
                break;
            }
            idx[a] = 0;
        }
    }
    rows
}

fn test_function(f: &Option<String>, default: &str) -> Result<FSpec, CliError> {
    f.as_deref()
        .unwrap_or(default)
        .parse::<FSpec>()
        .map_err(|e| CliError::usage("--f", e.to_string()))
}

fn write_table(t: &Table, c: &Common) -> Result<(), CliError> {
    let text = t.render(c.format.unwrap_or(Format::Csv))?;
    emit(&text, c.out.as_deref())
}

pub fn kernel_table(c: &Common, default_grid: usize) -> Result<Table, CliError> {
    let spec = kernel_spec(c)?;
    let g = grid_size(c.grid, default_grid)?;
    let k = kernel_on_grid(&spec, spec.d, g)?;
    let mut columns = axis_names(spec.d);
    columns.push("value".into());
    Ok(Table {
        subcommand: "kernel".into(),
        params: describe(c, &spec, g),
        columns,
        rows: closed_grid_rows(spec.d, g, &[&k]),
        surface: (spec.d == 2).then_some(g + 1),
    })
}

pub fn kernel(c: &Common) -> Result<(), CliError> {
    write_table(&kernel_table(c, 256)?, c)
}

pub fn means(a: &MeansArgs) -> Result<(), CliError> {
    let c = &a.common;
    let spec = kernel_spec(c)?;
    let g = grid_size(c.grid, 256)?;
    let f = test_function(&a.f, "bump(2)")?;
    let coeffs = f.spectrum(spec.d, g)?;
    let sample = synthesize(&coeffs)?;
    let mean = summability_mean(&coeffs, &spec)?;
    let mut columns = axis_names(spec.d);
    columns.extend(["f".to_string(), "mean".to_string()]);
    let t = Table {
        subcommand: "means".into(),
        params: format!("{} f={f}", describe(c, &spec, g)),
        columns,
        rows: closed_grid_rows(spec.d, g, &[&sample, &mean]),
        surface: (spec.d == 2).then_some(g + 1),
    };
    write_table(&t, c)
}

pub fn maxop(a: &MaxopArgs) -> Result<(), CliError> {
    let c = &a.common;
    let d = dimension(c)?;
    let g = grid_size(c.grid, 64)?;
    let f = test_function(&a.f, "spike(0.3)")?;
    let tau = c.tau.unwrap_or(2.0);
    if !(tau >= 1.0) {
        return Err(CliError::usage("--tau", format!("must be at least 1 (got {tau})")));
    }
    let op = a.operator.as_deref().unwrap_or("strong");
    let coeffs = f.spectrum(d, g)?;
    let sample = GridFunction::from_real(d, g, &synthesize(&coeffs)?.re())?;
    let (value, extra) = match op {
        "cube" => (maximal_function(&sample, MaximalVariant::Cube)?, String::new()),
        "cone" => (maximal_function(&sample, MaximalVariant::Cone(tau))?, format!(" tau={tau}")),
        "strong" => (maximal_function(&sample, MaximalVariant::Strong)?, String::new()),
        "poisson" => (poisson_maximal(&sample, &default_t_grid())?, String::new()),
        "theta-cone" | "theta-box" => {
            let mut cc = c.clone();
            if cc.method.is_none() {
                cc.method = Some("fejer".into());
            }
            cc.q = Some("rect".into());
            let spec = kernel_spec(&Common { d: Some(d), ..cc })?;
            let n_max = spec.n_per_axis();
            let set = if op == "theta-cone" {
                IndexSet::cone(tau, n_max, &Ladder::Dyadic)?
            } else {
                IndexSet::boxed(n_max, &Ladder::Dyadic)
            };
            let fam = spec.with_n(vec![1; spec.n.len()]);
            (maximal_mean(&coeffs, &fam, &set, false)?, format!(" {} tau={tau}", describe(c, &spec, g)))
        }
        other => {
            return Err(CliError::usage(
                "--operator",
                format!("unknown operator '{other}' (cube, cone, strong, poisson, theta-cone, theta-box)"),
            ))
        }
    };
    let mut columns = axis_names(d);
    columns.extend(["f".to_string(), "value".to_string()]);
    let t = Table {
        subcommand: "maxop".into(),
        params: format!("d={d} grid={g} operator={op} f={f}{extra}"),
        columns,
        rows: closed_grid_rows(d, g, &[&sample, &value]),
        surface: (d == 2).then_some(g + 1),
    };
    write_table(&t, c)
}

pub fn norm(a: &NormArgs) -> Result<(), CliError> {
    let c = &a.common;
    let d = dimension(c)?;
    let which = a.norm.as_deref().unwrap_or("lp");
    let p = a.p.unwrap_or(1.0);
    let report = if which == "wiener" {
        let th = theta(c)?.ok_or_else(|| CliError::usage("--theta", "the wiener norm needs a catalog id"))?;
        wiener_amalgam_norm(&th, d, 256)?
    } else {
        let g = grid_size(c.grid, if d == 1 { 1024 } else { 128 })?;
        let f = test_function(&a.f, "bump(2)")?;
        let s = f.sample(d, g)?;
        let torus = HerzDomain::Torus { k_min: None };
        match which {
            "lp" => NormReport::new(format!("L{p}"), lp_norm(&s, p, LpKind::Strong)?),
            "weak" => NormReport::new(format!("weak-L{p}"), lp_norm(&s, p, LpKind::Weak)?),
            "llogl" => {
                if !(p >= 0.0 && p.fract() == 0.0) {
                    return Err(CliError::usage("--p", "the L log L power must be a natural number"));
                }
                NormReport::new(format!("LlogL^{p}"), llogl_norm(&s, p as u32))
            }
            "herz" => herz_norm(HerzInput::Grid(&s), p, HerzVariant::E, torus)?,
            "herz-prime" => herz_norm(HerzInput::Grid(&s), p, HerzVariant::EPrime, torus)?,
            "dp" => NormReport::new(format!("D{p}"), dp_norm(&s, p, DpForm::Integral)?),
            "dp-shell" => NormReport::new(format!("D{p}-shell"), dp_norm(&s, p, DpForm::Shell)?),
            other => {
                return Err(CliError::usage(
                    "--norm",
                    format!("unknown norm '{other}' (lp, weak, llogl, herz, herz-prime, dp, dp-shell, wiener)"),
                ))
            }
        }
    };
    let text = match c.format.unwrap_or(Format::Csv) {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).unwrap_or_default();
            s.push('\n');
            s
        }
        Format::Csv => Table {
            subcommand: "norm".into(),
            params: match which {
                "wiener" => format!("d={d} norm=wiener theta={}", c.theta.as_deref().unwrap_or("")),
                _ => format!("d={d} norm={which} p={p} f={}", a.f.as_deref().unwrap_or("bump(2)")),
            },
            columns: vec!["value".into(), "tail".into()],
            rows: vec![vec![report.value, report.truncation.as_ref().and_then(|t| t.tail).unwrap_or(0.0)]],
            surface: None,
        }
        .to_csv(),
        Format::Svg => return Err(CliError::usage("--format", "a norm is a single number; use csv or json")),
    };
    emit(&text, c.out.as_deref())
}

pub fn verify(a: &VerifyArgs) -> Result<bool, CliError> {
    let id = a.suite.as_deref().unwrap_or("all");
    let ids: Vec<&str> = if id == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&id) {
        vec![id]
    } else {
        return Err(CliError::usage("--suite", format!("unknown suite '{id}' (one of {}, all)", SUITES.join(", "))));
    };
    if a.suite_config.is_some() && ids.len() > 1 {
        return Err(CliError::usage("--config", "suite_config needs a single --suite"));
    }
    let mut reports = Vec::new();
    for s in ids {
        let r = run_suite(s, a.suite_config.clone())?;
        let r = if a.no_timing { r.without_timing() } else { r };
        eprintln!("{s}: {}", if r.pass { "pass" } else { "FAIL" });
        reports.push(r);
    }
    let pass = reports.iter().all(|r| r.pass);
    let mut text = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        serde_json::to_string_pretty(&reports).unwrap_or_default()
    };
    text.push('\n');
    emit(&text, a.report.as_deref())?;
    Ok(pass)
}
