use std::f64::consts::PI;

use proptest::prelude::*;
use spectra_core::angular::{
    reconstruct_u2_theta, theta_to_z, transform_u2, z_identities, z_to_theta,
};
use spectra_core::assembler::{
    double_closure_defect, ell_eff_double, ell_eff_ring, ring_closure_defect, Branch,
};
use spectra_core::catalog::{self, AnsatzShape};
use spectra_core::oracle::SymTridiagonal;
use spectra_core::perturbation::solve_exact_delta;
use spectra_core::potential::is_ordered;
use spectra_core::susy::{ladder_spectrum, riccati_residual};
use spectra_core::{AngularForm, ClosedFormW, Grid1D, GridKind, PotentialFamily, Superpotential};

fn valid_ring() -> impl Strategy<Value = (i32, f64, f64, u32)> {
    (-3..=3i32, 0.0..4.0f64, -1.0..1.0f64, 0..4u32)
        .prop_map(|(m, beta, u, n)| (m, beta, u * (f64::from(m * m) + beta), n))
}

proptest! {
    #[test]
    fn grid_spacing_matches_bounds(lo in -50.0..0.0f64, width in 0.1..100.0f64, n in 16..5000usize) {
        let g = Grid1D::new(GridKind::FullLine, lo, lo + width, n).unwrap();
        prop_assert!((g.spacing() * (n - 1) as f64 - width).abs() <= 1e-12 * width.max(1.0));
        prop_assert!((g.point(n - 1) - (lo + width)).abs() <= 1e-12 * (lo.abs() + width));
        let r = g.refined();
        prop_assert_eq!(r.len(), 2 * n - 1);
        prop_assert!((r.spacing() * 2.0 - g.spacing()).abs() < 1e-15 * width);
    }

    #[test]
    fn theta_round_trip(theta in 0.05..(PI - 0.05)) {
        let z = theta_to_z(theta).unwrap();
        prop_assert!((z_to_theta(z) - theta).abs() < 1e-12);
        let (s, c) = z_identities(z);
        prop_assert!((s - theta.sin()).abs() < 1e-12);
        prop_assert!((c - theta.cos()).abs() < 1e-12);
    }

    #[test]
    fn theta_to_z_is_increasing(a in 0.01..3.1f64, d in 1e-6..0.03f64) {
        prop_assert!(theta_to_z(a + d).unwrap() > theta_to_z(a).unwrap());
    }

    #[test]
    fn ring_closure((m, beta, gamma, n) in valid_ring()) {
        let ell = ell_eff_ring(m, beta, gamma, n).unwrap();
        prop_assert!(ell >= 0.0);
        prop_assert!(ring_closure_defect(m, beta, gamma, n, ell) < 1e-10);
    }

    #[test]
    fn double_closure(m in -3..=3i32, delta in 0.0..4.0f64, c in 0.0..6.0f64, n in 0..4u32) {
        let ell = ell_eff_double(m, delta, c, n, Branch::Plus).unwrap();
        prop_assert!(ell >= 0.0);
        prop_assert!(double_closure_defect(m, delta, c, n, ell) < 1e-10);
    }

    #[test]
    fn angular_forms_round_trip(beta in -1.0..4.0f64, gamma in -3.0..3.0f64, delta in 0.0..3.0f64, c in 0.0..5.0f64) {
        for form in [AngularForm::ring(beta, gamma).unwrap(), AngularForm::double(delta, c).unwrap()] {
            let back = reconstruct_u2_theta(&transform_u2(&form).unwrap()).unwrap();
            prop_assert_eq!(back, form);
        }
    }

    #[test]
    fn ladders_are_ordered_and_bound(ell in 0.5..6.0f64, gamma in -4.0..4.0f64) {
        for fam in [
            PotentialFamily::poschl_teller_i(ell).unwrap(),
            PotentialFamily::rosen_morse_ii(ell, gamma).unwrap(),
        ] {
            let l = ladder_spectrum(&fam, 12).unwrap();
            prop_assert!(is_ordered(&l.levels));
            for lev in &l.levels {
                prop_assert!(lev.energy < fam.continuum_threshold());
            }
        }
    }

    #[test]
    fn tridiagonal_trace(diag in prop::collection::vec(-5.0..5.0f64, 2..40), seed in 0.0..1.0f64) {
        let off: Vec<f64> = (1..diag.len()).map(|i| ((i as f64 + seed) * 1.7).sin()).collect();
        let t = SymTridiagonal::new(diag.clone(), off);
        let eig = t.lowest(diag.len());
        let trace: f64 = diag.iter().sum();
        prop_assert!((eig.iter().sum::<f64>() - trace).abs() < 1e-8 * diag.len() as f64);
        prop_assert!(eig.windows(2).all(|w| w[0] <= w[1]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn catalog_riccati(ell in 0.5..5.0f64, gamma in -3.0..3.0f64) {
        let grid = Grid1D::symmetric(20.0, 1e-2).unwrap();
        for fam in [
            PotentialFamily::poschl_teller_i(ell).unwrap(),
            PotentialFamily::rosen_morse_ii(ell, gamma).unwrap(),
        ] {
            let w = fam.superpotential().unwrap();
            let v = grid.sample(|z| fam.value(z));
            let r = riccati_residual(&w, &v, fam.ladder_energy(0).unwrap(), &grid).unwrap();
            prop_assert!(r.max_abs_interior < 1e-8);
        }
    }

    #[test]
    fn constant_ansatz_identifies_rosen_morse(ell in 1.0..5.0f64, gamma in -2.0..2.0f64) {
        prop_assume!(gamma.abs() > 1e-3);
        let grid = Grid1D::symmetric(20.0, 1e-2).unwrap();
        let w = Superpotential::closed(ClosedFormW::tanh(ell, 0.0), GridKind::FullLine);
        let dv = grid.sample(|z| -gamma * z.tanh());
        let x = solve_exact_delta(&w, &dv, &grid, Some(AnsatzShape::Constant)).unwrap();
        let b = x.parameter.unwrap();
        prop_assert!((b + gamma / (2.0 * ell)).abs() < 1e-10);
        let id = catalog::identify(&AnsatzShape::Constant.with_parameter(b), ell).unwrap();
        match id.family {
            PotentialFamily::RosenMorseII { ell: l, gamma: g } => {
                prop_assert!((l - ell).abs() < 1e-12);
                prop_assert!((g - gamma).abs() < 1e-9);
            }
            other => prop_assert!(false, "{:?}", other),
        }
        prop_assert!((x.delta_eps - id.delta_eps).abs() < 1e-10);
    }

    #[test]
    fn series_matches_first_order_shift(ell in 1.0..4.0f64, c in -2.0..2.0f64) {
        // a constant shift is exact at first order
        let grid = Grid1D::symmetric(20.0, 1e-2).unwrap();
        let w = Superpotential::closed(ClosedFormW::tanh(ell, 0.0), GridKind::FullLine);
        let x = solve_exact_delta(&w, &vec![c; grid.len()], &grid, None).unwrap();
        prop_assert!((x.delta_eps - c).abs() < 1e-10);
        prop_assert!(x.series.unwrap().terminated);
    }
}
