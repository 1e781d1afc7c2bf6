use spectra_core::angular::{self, AngularFragment};
use spectra_core::assembler::{self, CheckStatus, VerifyTolerances};
use spectra_core::catalog;
use spectra_core::oracle;
use spectra_core::perturbation::{self, PerturbationSeries};
use spectra_core::susy::{self, ClosedFormW};
use spectra_core::{AngularForm, Grid1D, GridKind, PotentialFamily, Superpotential};

use crate::config::{Command, ConfigError, RunConfig};
use crate::report::{Cell, Report, Table};

/// Default energy tolerance of `verify`.
pub const VERIFY_TOLERANCE: f64 = 1e-5;
/// Default agreement required between series and exact `Δε` in `perturb`.
pub const PERTURB_TOLERANCE: f64 = 1e-8;
/// Default tolerance on mapping identities and round trips in `transform`.
pub const TRANSFORM_TOLERANCE: f64 = 1e-12;

fn err(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

/// Runs `command`; errors are configuration or usage problems, while a
/// failed verification is reported through [`Report::passed`].
pub fn run(
    command: Command,
    cfg: &RunConfig,
    tolerance: Option<f64>,
) -> Result<Report, ConfigError> {
    if let Some(c) = cfg.run.command {
        if c != command {
            return Err(err(format!(
                "config: [run] command = \"{c}\" but \"{command}\" was requested"
            )));
        }
    }
    let tol = tolerance.or(cfg.run.tolerance).unwrap_or(match command {
        Command::Spectrum | Command::Verify => VERIFY_TOLERANCE,
        Command::Perturb => PERTURB_TOLERANCE,
        Command::Transform => TRANSFORM_TOLERANCE,
    });
    let mut resolved = cfg.clone();
    resolved.run.command = Some(command);
    resolved.run.tolerance = Some(tol);
    let mut report = Report::new(command, &resolved);
    match command {
        Command::Spectrum => spectrum(cfg, &mut report)?,
        Command::Verify => verify(cfg, tol, &mut report)?,
        Command::Perturb => perturb(cfg, tol, &mut report)?,
        Command::Transform => transform(cfg, tol, &mut report)?,
    }
    Ok(report)
}

/// The grid a one-dimensional family is solved on.
pub fn family_grid(cfg: &RunConfig, family: &PotentialFamily) -> Result<Grid1D, ConfigError> {
    let g = &cfg.grid;
    let grid = match family.definition().domain {
        GridKind::FullLine => Grid1D::symmetric(g.extent, g.spacing_for(2.0 * g.extent))?,
        GridKind::HalfLine => Grid1D::from_offset(
            GridKind::HalfLine,
            g.offset,
            g.extent,
            g.spacing_for(g.extent - g.offset),
        )?,
        GridKind::Radial => {
            let ell = family.ell().unwrap_or(0.0);
            cfg.settings()
                .radial_grid(family, ell, cfg.run.n_max as u32)?
        }
        GridKind::Angular => {
            return Err(err(
                "angular grids are not used for one-dimensional families",
            ))
        }
    };
    Ok(grid)
}

fn spectrum(cfg: &RunConfig, report: &mut Report) -> Result<(), ConfigError> {
    if let Some(spec) = cfg.spec()? {
        let entries = assembler::total_spectrum_with(&spec, &cfg.ranges(), &cfg.settings());
        let mut t = Table::new(
            "spectrum",
            &[
                "n_r",
                "n_theta",
                "m",
                "ell_eff",
                "energy",
                "angular_provenance",
                "radial_provenance",
                "secondary_ell_eff",
                "error",
            ],
        );
        for e in &entries {
            t.push(vec![
                e.qn.n_r.into(),
                e.qn.n_theta.into(),
                e.qn.m.into(),
                e.ell_eff.into(),
                e.energy.into(),
                provenance(e.angular_provenance),
                provenance(e.radial_provenance),
                e.secondary_ell_eff.into(),
                e.error.clone().map_or(Cell::Missing, Cell::Text),
            ]);
        }
        report.note("entries", entries.len());
        report.note(
            "errors",
            entries.iter().filter(|e| e.error.is_some()).count(),
        );
        report.tables.push(t);
        return Ok(());
    }
    let Some(fc) = &cfg.potential.family else {
        return Err(err(
            "spectrum needs [potential] or [potential.radial] with [potential.angular]",
        ));
    };
    let family = fc.build()?;
    let ladder = susy::ladder_spectrum(&family, cfg.run.n_max)?;
    let mut t = Table::new("ladder", &["n", "energy", "provenance"]);
    for l in &ladder.levels {
        t.push(vec![l.n.into(), l.energy.into(), provenance(l.provenance)]);
    }
    report.note("family", family.tag().name());
    report.note("levels", ladder.levels.len());
    report.note("pruned_by_bound_state_criterion", ladder.pruned);
    report.note("continuum_threshold", family.continuum_threshold());
    report.tables.push(t);
    Ok(())
}

fn provenance(p: spectra_core::Provenance) -> Cell {
    Cell::Text(
        match p {
            spectra_core::Provenance::AnalyticLadder => "analytic_ladder",
            spectra_core::Provenance::Perturbative => "perturbative",
            spectra_core::Provenance::NumericOracle => "numeric_oracle",
        }
        .into(),
    )
}

fn verify(cfg: &RunConfig, tol: f64, report: &mut Report) -> Result<(), ConfigError> {
    let spec = cfg.spec()?;
    if spec.is_none() && cfg.potential.family.is_none() {
        return Err(err(
            "verify needs [potential] or [potential.radial] with [potential.angular]",
        ));
    }
    report.tolerance("energy", tol);
    if let Some(fc) = &cfg.potential.family {
        let family = fc.build()?;
        verify_family(cfg, &family, tol, report)?;
    }
    if let Some(spec) = spec {
        let settings = cfg.settings();
        let tolerances = VerifyTolerances {
            angular: cfg.run.angular_tolerance,
            radial: tol,
        };
        report.tolerance("angular", tolerances.angular);
        let entries = assembler::total_spectrum_with(&spec, &cfg.ranges(), &settings);
        if let Ok(g) = settings.angular_grid(&spec.angular) {
            report.grid("angular", &g);
        }
        let v = assembler::verify_spectrum(&spec, &entries, &tolerances, &settings);
        let mut t = Table::new(
            "verification",
            &[
                "n_r",
                "n_theta",
                "m",
                "ell_eff",
                "energy",
                "ell_ell_plus_one",
                "angular_oracle",
                "angular_residual",
                "angular_certified",
                "radial_oracle",
                "radial_residual",
                "radial_certified",
                "status",
                "note",
            ],
        );
        for r in &v.rows {
            let energy = entries.iter().find(|e| e.qn == r.qn).and_then(|e| e.energy);
            t.push(vec![
                r.qn.n_r.into(),
                r.qn.n_theta.into(),
                r.qn.m.into(),
                r.ell_eff.into(),
                energy.into(),
                r.angular.map(|a| a.analytic).into(),
                r.angular.map(|a| a.oracle).into(),
                r.angular.map(|a| a.residual).into(),
                r.angular.map(|a| a.certified).into(),
                r.radial.map(|a| a.oracle).into(),
                r.radial.map(|a| a.residual).into(),
                r.radial.map(|a| a.certified).into(),
                match r.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::Unresolvable => "unresolvable",
                }
                .into(),
                r.note.clone().map_or(Cell::Missing, Cell::Text),
            ]);
        }
        report.note("entries_passed", v.passed);
        report.note("entries_failed", v.failed);
        report.note("entries_unresolvable", v.unresolvable);
        report.passed &= v.all_pass();
        report.tables.push(t);
    }
    Ok(())
}

fn verify_family(
    cfg: &RunConfig,
    family: &PotentialFamily,
    tol: f64,
    report: &mut Report,
) -> Result<(), ConfigError> {
    let ladder = susy::ladder_spectrum(family, cfg.run.n_max)?;
    let grid = family_grid(cfg, family)?;
    report.grid("oracle_coarse", &grid);
    report.grid("oracle_fine", &grid.refined());
    let want = ladder.levels.len() + usize::from(ladder.pruned);
    let r = oracle::eigen_solve_family(family, &grid, want.max(1))?;
    let mut t = Table::new(
        "ladder_vs_oracle",
        &["n", "ladder", "oracle", "residual", "certified", "pass"],
    );
    let mut max_residual = 0.0_f64;
    let mut all = true;
    for l in &ladder.levels {
        let (o, c) = (r.energy(l.n), r.tolerance(l.n));
        let residual = o.map(|o| (o - l.energy).abs());
        let pass = residual.is_some_and(|x| x <= tol);
        if let Some(x) = residual {
            max_residual = max_residual.max(x);
        }
        all &= pass;
        t.push(vec![
            l.n.into(),
            l.energy.into(),
            o.into(),
            residual.into(),
            c.into(),
            pass.into(),
        ]);
    }
    // a pruned ladder claims the full bound spectrum, so the counts must agree
    let count_match = if ladder.pruned {
        r.levels.len() == ladder.levels.len()
    } else {
        r.levels.len() >= ladder.levels.len()
    };
    report.note("family", family.tag().name());
    report.note("ladder_levels", ladder.levels.len());
    report.note("oracle_levels", r.levels.len());
    report.note("pruned_by_bound_state_criterion", ladder.pruned);
    report.note("count_match", count_match);
    report.note("max_residual", max_residual);
    report.note("continuum_threshold", r.threshold);
    report.passed &= all && count_match;
    report.tables.push(t);
    Ok(())
}

fn perturb(cfg: &RunConfig, tol: f64, report: &mut Report) -> Result<(), ConfigError> {
    let Some(p) = &cfg.perturbation else {
        return Err(err("perturb needs a [perturbation] section"));
    };
    let g = &cfg.grid;
    let (kind, grid) = if p.half_line() {
        let grid = Grid1D::from_offset(
            GridKind::HalfLine,
            g.offset,
            g.extent,
            g.spacing_for(g.extent - g.offset),
        )?;
        (GridKind::HalfLine, grid)
    } else {
        (
            GridKind::FullLine,
            Grid1D::symmetric(g.extent, g.spacing_for(2.0 * g.extent))?,
        )
    };
    report.grid("perturbation", &grid);
    report.tolerance("series_vs_exact", tol);
    report.tolerance("vanishing_order", perturbation::VANISHING);
    report.tolerance("ansatz_spread", perturbation::ANSATZ_TOLERANCE);
    let w = Superpotential::closed(ClosedFormW::tanh(p.ell, 0.0), kind);
    let dv_form = p.delta_potential();
    let dv = dv_form.sample(&grid)?;
    let eps0 = -p.ell * p.ell;

    let mut series_eps = None;
    let series = susy::ground_state_wavefunction(&w, &grid).and_then(|chi| {
        perturbation::run_series(&w, &chi, std::slice::from_ref(&dv), p.k_max, &grid)
    });
    match series {
        Ok(s) => {
            let v_total: Vec<f64> = grid
                .points()
                .zip(&dv)
                .map(|(z, d)| -p.ell * (p.ell + 1.0) / z.cosh().powi(2) + d)
                .collect();
            let residual = perturbation::backbone_residual(&w, &s, &v_total, eps0, &grid)?;
            report.note("terminated", s.terminated);
            report.note("last_significant_order", s.last_significant_order());
            report.note("series_delta_eps", s.total_delta_eps());
            report.note("backbone_residual", residual.max_abs_interior);
            series_eps = Some(s.total_delta_eps());
            report.tables.push(orders_table(&s));
            report
                .tables
                .push(profile_table(&grid, &w, &s, p.profile_stride)?);
        }
        Err(e) => report.note("series_error", e.to_string()),
    }
    if let Some(a) = p.ansatz {
        match perturbation::solve_exact_delta(&w, &dv, &grid, Some(a.into())) {
            Ok(x) => {
                let param = x.parameter.unwrap_or(0.0);
                report.note("ansatz", a);
                report.note("ansatz_parameter", param);
                report.note("exact_delta_eps", x.delta_eps);
                let shape: catalog::AnsatzShape = a.into();
                if let Ok(id) = catalog::identify(&shape.with_parameter(param), p.ell) {
                    report.note("identified_family", &id.family);
                    if let Some(e) = id.family.ladder_energy(0) {
                        report.note("identified_ground_energy", e);
                    }
                }
                if let Some(se) = series_eps {
                    let diff = (se - x.delta_eps).abs();
                    report.note("series_minus_exact", diff);
                    report.passed &= diff <= tol;
                }
            }
            Err(e) => {
                report.note("ansatz_error", e.to_string());
                report.passed = false;
            }
        }
    }
    Ok(())
}

fn orders_table(s: &PerturbationSeries) -> Table {
    let mut t = Table::new(
        "orders",
        &[
            "k",
            "delta_eps",
            "partial_sum",
            "max_abs_delta_w",
            "coarse_delta_eps",
        ],
    );
    for (o, sum) in s.orders.iter().zip(&s.partial_sums) {
        t.push(vec![
            o.k.into(),
            o.delta_eps.into(),
            (*sum).into(),
            o.max_abs_delta_w.into(),
            o.coarse_delta_eps.into(),
        ]);
    }
    t
}

const ORDER_COLUMNS: [&str; 12] = [
    "delta_w_1",
    "delta_w_2",
    "delta_w_3",
    "delta_w_4",
    "delta_w_5",
    "delta_w_6",
    "delta_w_7",
    "delta_w_8",
    "delta_w_9",
    "delta_w_10",
    "delta_w_11",
    "delta_w_12",
];

fn profile_table(
    grid: &Grid1D,
    w: &Superpotential,
    s: &PerturbationSeries,
    stride: usize,
) -> Result<Table, ConfigError> {
    let shown = s.orders.len().min(ORDER_COLUMNS.len());
    let mut cols = vec!["z", "w"];
    cols.extend_from_slice(&ORDER_COLUMNS[..shown]);
    cols.push("delta_w_sum");
    let mut t = Table::new("profile", &cols);
    let ws = w.sample(grid)?;
    let sum = s.total_delta_w(grid.len());
    let mut idx: Vec<usize> = (0..grid.len()).step_by(stride).collect();
    if idx.last() != Some(&(grid.len() - 1)) {
        idx.push(grid.len() - 1);
    }
    for i in idx {
        let mut row: Vec<Cell> = vec![grid.point(i).into(), ws[i].into()];
        row.extend(s.orders[..shown].iter().map(|o| Cell::from(o.delta_w[i])));
        row.push(sum[i].into());
        t.push(row);
    }
    Ok(t)
}

fn transform(cfg: &RunConfig, tol: f64, report: &mut Report) -> Result<(), ConfigError> {
    let Some(ac) = &cfg.potential.angular else {
        return Err(err("transform needs a [potential.angular] section"));
    };
    let form = ac.build()?;
    report.tolerance("identities", tol);
    let fragment = angular::transform_u2(&form)?;
    let back = angular::reconstruct_u2_theta(&fragment)?;
    let round_trip = same_form(&form, &back, tol);
    report.note("form", &form);
    report.note("delta_v", &fragment.shifted_u2);
    report.note("constant_shift", fragment.constant_shift);
    report.note("domain", fragment.domain.to_string());
    report.note("reconstructed", &back);
    report.note("round_trip", round_trip);

    let (z_lo, z_hi) = match fragment.domain {
        GridKind::HalfLine => (cfg.grid.offset, cfg.grid.extent.min(5.0)),
        _ => (-cfg.grid.extent.min(5.0), cfg.grid.extent.min(5.0)),
    };
    let n = cfg.run.samples.max(2);
    let mut t = Table::new(
        "identities",
        &[
            "z",
            "theta",
            "sin_theta",
            "sech_z",
            "cos_theta",
            "minus_tanh_z",
            "u2_theta",
            "sech2_u2",
            "delta_v_plus_shift",
        ],
    );
    let mut worst = 0.0_f64;
    let mut worst_potential = 0.0_f64;
    for i in 0..n {
        let z = z_lo + (z_hi - z_lo) * i as f64 / (n - 1) as f64;
        let theta = angular::z_to_theta(z);
        let (s, c) = angular::z_identities(z);
        worst = worst
            .max((s - theta.sin()).abs())
            .max((c - theta.cos()).abs());
        let u2 = form.value(theta);
        let mapped = s * s * u2;
        let split = fragment_value(&fragment, z);
        worst_potential = worst_potential.max((mapped - split).abs() / split.abs().max(1.0));
        t.push(vec![
            z.into(),
            theta.into(),
            theta.sin().into(),
            s.into(),
            theta.cos().into(),
            c.into(),
            u2.into(),
            mapped.into(),
            split.into(),
        ]);
    }
    report.note("max_identity_defect", worst);
    report.note("max_potential_defect", worst_potential);
    // the potential check is a relative one at trig-rounding level
    report.passed &= round_trip && worst <= tol && worst_potential <= 1e3 * tol;
    report.tables.push(t);
    Ok(())
}

fn fragment_value(f: &AngularFragment, z: f64) -> f64 {
    f.shifted_u2.value(z) + f.constant_shift
}

fn same_form(a: &AngularForm, b: &AngularForm, tol: f64) -> bool {
    let close = |x: f64, y: f64| (x - y).abs() <= tol;
    match (a, b) {
        (
            AngularForm::RingTrig {
                beta: b1,
                gamma: g1,
            },
            AngularForm::RingTrig {
                beta: b2,
                gamma: g2,
            },
        ) => close(*b1, *b2) && close(*g1, *g2),
        (
            AngularForm::DoubleTrig { delta: d1, c: c1 },
            AngularForm::DoubleTrig { delta: d2, c: c2 },
        ) => close(*d1, *d2) && close(*c1, *c2),
        _ => false,
    }
}
