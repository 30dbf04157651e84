use summa_core::ThetaFunction;

use crate::args::{Common, FigureArgs, Format};
use crate::commands::{grid_size, kernel_table};
use crate::output::{emit, Table};
use crate::CliError;

enum Figure {
    Kernel {
        d: usize,
        q: &'static str,
        method: &'static str,
        n: &'static [usize],
        alpha: f64,
        gamma: f64,
    },
    Theta {
        id: &'static str,
        extent: f64,
    },
}

fn kernel(d: usize, q: &'static str, method: &'static str, n: &'static [usize], alpha: f64, gamma: f64) -> Figure {
    Figure::Kernel { d, q, method, n, alpha, gamma }
}

fn lookup(id: &str) -> Option<(Figure, &'static str)> {
    Some(match id {
        "f13" => (kernel(1, "1", "dirichlet", &[5], 0.0, 1.0), "Dirichlet kernel, n = 5"),
        "f14" => (kernel(1, "1", "fejer", &[5], 1.0, 1.0), "Fejer kernel, n = 5"),
        "f15" => (kernel(2, "1", "dirichlet", &[4], 0.0, 1.0), "Dirichlet kernel, d = 2, q = 1, n = 4"),
        "f16" => (kernel(2, "2", "dirichlet", &[4], 0.0, 1.0), "Dirichlet kernel, d = 2, q = 2, n = 4"),
        "f17" => (kernel(2, "inf", "dirichlet", &[4], 0.0, 1.0), "Dirichlet kernel, d = 2, q = inf, n = 4"),
        "f18" => (kernel(2, "1", "riesz", &[4], 1.0, 1.0), "Riesz kernel, d = 2, q = 1, n = 4"),
        "f19" => (kernel(2, "inf", "riesz", &[4], 1.0, 1.0), "Riesz kernel, d = 2, q = inf, n = 4"),
        "f20" => (kernel(2, "2", "riesz", &[4], 1.0, 1.0), "Riesz kernel, d = 2, q = 2, n = 4"),
        "f21" => (kernel(2, "2", "riesz", &[4], 1.0, 2.0), "Bochner-Riesz kernel, n = 4, alpha = 1"),
        "f22" => (kernel(2, "2", "riesz", &[4], 0.5, 2.0), "Bochner-Riesz kernel, n = 4, alpha = 1/2"),
        "f23" => (kernel(2, "rect", "dirichlet", &[3, 5], 0.0, 1.0), "rectangular Dirichlet kernel, n = (3, 5)"),
        "f24" => (kernel(2, "rect", "fejer", &[3, 5], 1.0, 1.0), "rectangular Fejer kernel, n = (3, 5)"),
        "f25" => (Figure::Theta { id: "radial-riesz(1,2)", extent: 1.5 }, "Riesz summability function"),
        "f26" => (Figure::Theta { id: "radial-weierstrass(2)", extent: 2.5 }, "Weierstrass summability function"),
        "f27" => (Figure::Theta { id: "exp-composite(2,2)", extent: 2.0 }, "exp(-(1 + |t|^2)^2)"),
        "f28" => (Figure::Theta { id: "picard-bessel(2,2)", extent: 4.0 }, "Picard-Bessel summability function"),
        _ => return None,
    })
}

pub const CATALOG: [&str; 16] = [
    "f13", "f14", "f15", "f16", "f17", "f18", "f19", "f20", "f21", "f22", "f23", "f24", "f25", "f26", "f27", "f28",
];

fn theta_surface(id: &str, extent: f64, m: usize) -> Result<Table, CliError> {
    let th = ThetaFunction::from_id(id)?;
    let mut rows = Vec::with_capacity(m * m);
    let at = |i: usize| -extent + 2.0 * extent * i as f64 / (m - 1) as f64;
    for i in 0..m {
        for j in 0..m {
            let t = [at(i), at(j)];
            rows.push(vec![t[0], t[1], th.eval(&t)]);
        }
    }
    Ok(Table {
        subcommand: "figure".into(),
        params: String::new(),
        columns: vec!["t1".into(), "t2".into(), "value".into()],
        rows,
        surface: Some(m),
    })
}

pub fn figure(a: &FigureArgs) -> Result<(), CliError> {
    let id = a
        .id
        .as_deref()
        .ok_or_else(|| CliError::usage("<ID>", format!("a figure id is required ({})", CATALOG.join(", "))))?;
    let (fig, caption) =
        lookup(id).ok_or_else(|| CliError::usage("<ID>", format!("unknown figure '{id}' ({})", CATALOG.join(", "))))?;
    let mut table = match fig {
        Figure::Kernel { d, q, method, n, alpha, gamma } => {
            let c = Common {
                d: Some(d),
                q: Some(q.into()),
                method: Some(method.into()),
                alpha: Some(alpha),
                gamma: Some(gamma),
                n: n.to_vec(),
                grid: a.grid,
                ..Common::default()
            };
            kernel_table(&c, if d == 1 { 512 } else { 64 })?
        }
        Figure::Theta { id, extent } => {
            let g = grid_size(a.grid, 64)?;
            let mut t = theta_surface(id, extent, g + 1)?;
            t.params = format!("theta={id} grid={g}");
            t
        }
    };
    table.subcommand = "figure".into();
    table.params = format!("{id} ({caption}), {}", table.params);
    emit(&table.render(a.format.unwrap_or(Format::Csv))?, a.out.as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_complete() {
        for id in CATALOG {
            assert!(lookup(id).is_some(), "{id}");
        }
        assert!(lookup("f12").is_none());
    }

    #[test]
    fn theta_surfaces_build() {
        for id in ["f25", "f26", "f27", "f28"] {
            let Some((Figure::Theta { id, extent }, _)) = lookup(id) else { panic!() };
            let t = theta_surface(id, extent, 9).unwrap();
            assert_eq!(t.rows.len(), 81);
            assert!(t.rows.iter().all(|r| r[2].is_finite()));
        }
    }
}
