use proptest::prelude::*;

use summa_core::harness::FSpec;
use summa_core::kernels::{cesaro_coefficient, dirichlet_kernel, lattice_sum, EvalMode};
use summa_core::maximal::{maximal_function, maximal_mean, poisson_maximal, IndexSet, Ladder, MaximalVariant};
use summa_core::norms::{herz_norm, lp_norm, HerzDomain, HerzInput, HerzVariant, LpKind};
use summa_core::spectral::{analyze, convolve, kernel_on_grid, partial_sum, summability_mean, synthesize, PartialRegion};
use summa_core::{GridFunction, KernelSpec, Q};

fn grid_values(d: usize, g: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, g.pow(d as u32))
}

fn q_any() -> impl Strategy<Value = Q> {
    prop_oneof![Just(Q::One), Just(Q::Two), Just(Q::Inf)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn round_trip(values in grid_values(2, 16)) {
        let f = GridFunction::from_real(2, 16, &values).unwrap();
        let back = synthesize(&analyze(&f).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&f) < 1e-12);
    }

    #[test]
    fn parseval(values in grid_values(1, 64)) {
        let f = GridFunction::from_real(1, 64, &values).unwrap();
        let c = analyze(&f).unwrap();
        let energy: f64 = c.coeffs.iter().map(|z| z.norm_sqr()).sum();
        let mean_sq = values.iter().map(|v| v * v).sum::<f64>() / 64.0;
        prop_assert!((energy - mean_sq).abs() < 1e-10 * mean_sq.max(1.0));
    }

    #[test]
    fn real_input_is_conjugate_symmetric(values in grid_values(2, 8)) {
        let c = analyze(&GridFunction::from_real(2, 8, &values).unwrap()).unwrap();
        for k1 in -3i64..=3 {
            for k2 in -3i64..=3 {
                prop_assert!((c.get(&[k1, k2]) - c.get(&[-k1, -k2]).conj()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn convolution_with_kernel_is_the_mean(seed in 0u64..1000, n in 1usize..12, q in q_any()) {
        let g = 32;
        let c = FSpec::TrigPoly { degree: 10, seed }.spectrum(1, g).unwrap();
        let f = synthesize(&c).unwrap();
        let spec = KernelSpec::fejer(1, q, n);
        let k = kernel_on_grid(&spec, 1, g).unwrap();
        let a = convolve(&f, &k).unwrap();
        let b = summability_mean(&c, &spec).unwrap();
        prop_assert!(a.max_abs_diff(&b) < 1e-11);
    }

    #[test]
    fn closed_form_matches_lattice(n in 1usize..16, x in -3.1f64..3.1, y in -3.1f64..3.1) {
        let spec = KernelSpec::dirichlet(2, Q::Inf, n);
        let closed = dirichlet_kernel(&spec, &[x, y], EvalMode::ClosedForm).unwrap();
        let direct = lattice_sum(&spec.multiplier().unwrap(), &[x, y]).re;
        prop_assert!((closed - direct).abs() <= 1e-8 * direct.abs().max(1.0));
    }

    #[test]
    fn dirichlet_is_symmetric(n in 1usize..10, x in -3.1f64..3.1, y in -3.1f64..3.1) {
        let spec = KernelSpec::dirichlet(2, Q::One, n);
        let m = spec.multiplier().unwrap();
        let base = lattice_sum(&m, &[x, y]).re;
        for p in [[y, x], [-x, y], [x, -y], [-y, -x]] {
            prop_assert!((lattice_sum(&m, &p).re - base).abs() < 1e-10);
        }
    }

    #[test]
    fn partial_sums_are_projections(seed in 0u64..1000, n in 1usize..7, q in q_any()) {
        let c = FSpec::TrigPoly { degree: 7, seed }.spectrum(2, 16).unwrap();
        let region = PartialRegion::EllQ { q, n };
        let once = partial_sum(&c, &region).unwrap();
        let twice = partial_sum(&analyze(&once).unwrap(), &region).unwrap();
        prop_assert!(once.max_abs_diff(&twice) < 1e-12);
    }

    #[test]
    fn cesaro_one_is_fejer(seed in 0u64..1000, n in 1usize..30) {
        let c = FSpec::TrigPoly { degree: 30, seed }.spectrum(1, 64).unwrap();
        let a = summability_mean(&c, &KernelSpec::cesaro(1, Q::One, n, 1.0)).unwrap();
        let b = summability_mean(&c, &KernelSpec::fejer(1, Q::One, n)).unwrap();
        prop_assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn cesaro_binomials_are_positive(k in 0usize..200, alpha in 0.0f64..4.0) {
        prop_assert!(cesaro_coefficient(k, alpha).unwrap() > 0.0);
    }

    #[test]
    fn maximal_dominates_modulus(values in grid_values(2, 16)) {
        let f = GridFunction::from_real(2, 16, &values).unwrap();
        let m = maximal_function(&f, MaximalVariant::Cube).unwrap();
        for (a, b) in m.samples.iter().zip(&values) {
            prop_assert!(a.re >= b.abs() - 1e-12);
        }
    }

    #[test]
    fn maximal_variants_are_ordered(values in grid_values(2, 16)) {
        let f = GridFunction::from_real(2, 16, &values).unwrap();
        let cube = maximal_function(&f, MaximalVariant::Cube).unwrap();
        let cone = maximal_function(&f, MaximalVariant::Cone(2.0)).unwrap();
        let strong = maximal_function(&f, MaximalVariant::Strong).unwrap();
        for i in 0..values.len() {
            prop_assert!(cube.samples[i].re <= cone.samples[i].re + 1e-12);
            prop_assert!(cone.samples[i].re <= strong.samples[i].re + 1e-12);
        }
    }

    #[test]
    fn maximal_is_sublinear(a in grid_values(1, 64), b in grid_values(1, 64), s in -3.0f64..3.0) {
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let scaled: Vec<f64> = a.iter().map(|x| s * x).collect();
        let m = |v: &[f64]| maximal_function(&GridFunction::from_real(1, 64, v).unwrap(), MaximalVariant::Strong).unwrap();
        let (ma, mb, ms, mk) = (m(&a), m(&b), m(&sum), m(&scaled));
        for i in 0..64 {
            prop_assert!(ms.samples[i].re <= ma.samples[i].re + mb.samples[i].re + 1e-12);
            prop_assert!((mk.samples[i].re - s.abs() * ma.samples[i].re).abs() < 1e-12);
        }
    }

    #[test]
    fn restricted_mean_below_unrestricted(seed in 0u64..1000) {
        let c = FSpec::TrigPoly { degree: 6, seed }.spectrum(2, 32).unwrap();
        let fam = KernelSpec::rectangular(summa_core::Method::Fejer, vec![1, 1], 1.0, 1.0);
        let cone = IndexSet::cone(2.0, vec![8, 8], &Ladder::All).unwrap();
        let all = IndexSet::boxed(vec![8, 8], &Ladder::All);
        let a = maximal_mean(&c, &fam, &cone, false).unwrap();
        let b = maximal_mean(&c, &fam, &all, false).unwrap();
        for (x, y) in a.samples.iter().zip(&b.samples) {
            prop_assert!(x.re <= y.re + 1e-12);
        }
    }

    #[test]
    fn poisson_refinement_is_monotone(values in grid_values(1, 64)) {
        let f = GridFunction::from_real(1, 64, &values).unwrap();
        let coarse = poisson_maximal(&f, &[0.1, 1.0]).unwrap();
        let fine = poisson_maximal(&f, &[0.05, 0.1, 0.5, 1.0]).unwrap();
        for (a, b) in coarse.samples.iter().zip(&fine.samples) {
            prop_assert!(a.re <= b.re + 1e-12);
        }
    }

    #[test]
    fn weak_below_strong(values in grid_values(1, 64), p in 1.0f64..4.0) {
        let f = GridFunction::from_real(1, 64, &values).unwrap();
        let weak = lp_norm(&f, p, LpKind::Weak).unwrap();
        let strong = lp_norm(&f, p, LpKind::Strong).unwrap();
        prop_assert!(weak <= strong * (1.0 + 1e-12));
    }

    #[test]
    fn herz_one_is_l1(values in grid_values(2, 16)) {
        let f = GridFunction::from_real(2, 16, &values).unwrap();
        let e1 = herz_norm(HerzInput::Grid(&f), 1.0, HerzVariant::E, HerzDomain::Torus { k_min: None }).unwrap().value;
        let l1 = lp_norm(&f, 1.0, LpKind::Strong).unwrap();
        prop_assert!((e1 - l1).abs() < 1e-10 * l1.max(1.0));
    }

    #[test]
    fn herz_chain(values in grid_values(1, 64)) {
        let f = GridFunction::from_real(1, 64, &values).unwrap();
        let norm = |q: f64| herz_norm(HerzInput::Grid(&f), q, HerzVariant::E, HerzDomain::Torus { k_min: None }).unwrap().value;
        let (e1, e2, einf) = (norm(1.0), norm(2.0), norm(f64::INFINITY));
        let two_pi = 2.0 * std::f64::consts::PI;
        prop_assert!(e1 <= two_pi.sqrt() * e2 * (1.0 + 1e-12));
        prop_assert!(e2 <= two_pi.sqrt() * einf * (1.0 + 1e-12));
    }

    #[test]
    fn conjugate_symmetric_means_stay_real(seed in 0u64..1000, n in 1usize..8) {
        let c = FSpec::TrigPoly { degree: 7, seed }.spectrum(2, 16).unwrap();
        let m = summability_mean(&c, &KernelSpec::riesz(2, Q::Two, n, 1.0, 2.0)).unwrap();
        prop_assert!(m.max_imag() < 1e-12);
    }
}
