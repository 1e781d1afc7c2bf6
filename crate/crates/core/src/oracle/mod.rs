//! Independent finite-difference eigensolver for `-ψ'' + V ψ = E ψ`.
//!
//! Second-order central differences give a symmetric tridiagonal matrix whose
//! lowest eigenvalues are found by Sturm bisection. Every solve runs on the
//! requested grid and on one with half the spacing; the reported energy is
//! the Richardson extrapolation `E_f + (E_f - E_c)/3` and the certified
//! tolerance is `|E_f - E_c| / 3`.

pub mod tridiag;

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Grid1D, GridKind};
use crate::potential::{AngularForm, PotentialFamily, Provenance, SpectrumLevel};
use crate::quadrature;

pub use tridiag::SymTridiagonal;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    /// Bound levels, Richardson-extrapolated.
    pub levels: Vec<SpectrumLevel>,
    /// `|E_fine - E_coarse| / 3` per reported level.
    pub certified_tolerance: Vec<f64>,
    pub coarse_energies: Vec<f64>,
    pub fine_energies: Vec<f64>,
    pub grid_pair: (Grid1D, Grid1D),
    /// Continuum threshold used to filter levels (`+inf` if none).
    pub threshold: f64,
    /// Fewer bound levels were found than requested.
    pub truncated: bool,
}

impl OracleResult {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn energy(&self, n: usize) -> Option<f64> {
        self.levels.get(n).map(|l| l.energy)
    }

    pub fn tolerance(&self, n: usize) -> Option<f64> {
        self.certified_tolerance.get(n).copied()
    }
}

/// Lowest `k_levels` bound states of `-ψ'' + V ψ` with Dirichlet walls at
/// both grid ends. `grid` fixes the coarse spacing; the potential is also
/// evaluated on the refined grid.
pub fn eigen_solve<V: Fn(f64) -> f64>(
    potential: V,
    grid: &Grid1D,
    k_levels: usize,
) -> Result<OracleResult> {
    if grid.kind() == GridKind::Angular {
        return Err(Error::InvalidGrid(
            "angular grids are handled by solve_angular_direct".into(),
        ));
    }
    let fine = grid.refined();
    let coarse_op = vertex_operator(&potential, grid)?;
    let fine_op = vertex_operator(&potential, &fine)?;
    let threshold = open_end_threshold(&potential, grid);
    let mut result = extract(
        &coarse_op,
        &fine_op,
        grid.clone(),
        fine.clone(),
        k_levels,
        threshold,
    );
    attach_wavefunctions(&mut result, &fine_op, &fine);
    Ok(result)
}

/// [`eigen_solve`] on tabulated values. The samples are read on `grid`
/// itself (the fine grid); the coarse grid takes every other node, so
/// `grid.len()` must be odd.
pub fn eigen_solve_samples(v: &[f64], grid: &Grid1D, k_levels: usize) -> Result<OracleResult> {
    grid.check_len(v)?;
    if grid.len().is_multiple_of(2) {
        return Err(Error::InvalidGrid(
            "sampled oracle needs an odd number of nodes to form the coarse grid".into(),
        ));
    }
    let coarse = Grid1D::new(
        grid.kind(),
        grid.z_min(),
        grid.z_max(),
        grid.len().div_ceil(2),
    )?;
    let coarse_v: Vec<f64> = v.iter().step_by(2).copied().collect();
    let fine_op = vertex_matrix(v, grid.spacing())?;
    let coarse_op = vertex_matrix(&coarse_v, coarse.spacing())?;
    let mut threshold = f64::INFINITY;
    if grid.lower_end_open() {
        threshold = threshold.min(v[0]);
    }
    if grid.upper_end_open() {
        threshold = threshold.min(v[v.len() - 1]);
    }
    let mut result = extract(
        &coarse_op,
        &fine_op,
        coarse,
        grid.clone(),
        k_levels,
        threshold,
    );
    attach_wavefunctions(&mut result, &fine_op, grid);
    Ok(result)
}

/// Oracle on a catalog family (domain checked).
pub fn eigen_solve_family(
    family: &PotentialFamily,
    grid: &Grid1D,
    k_levels: usize,
) -> Result<OracleResult> {
    family.check_domain(grid)?;
    eigen_solve(|z| family.value(z), grid, k_levels)
}

/// Reduced radial problem `-u'' + [U1 + l(l+1)/r^2] u = E u` at a real
/// effective angular momentum.
pub fn radial_solve(
    u1: &PotentialFamily,
    ell_eff: f64,
    grid: &Grid1D,
    k_levels: usize,
) -> Result<OracleResult> {
    if grid.kind() != GridKind::Radial {
        return Err(Error::DomainMismatch {
            family: u1.tag().name(),
            kind: grid.kind(),
            reason: "radial_solve needs a radial grid".into(),
        });
    }
    if !ell_eff.is_finite() {
        return Err(Error::InvalidParameter {
            name: "ell_eff",
            value: ell_eff,
            reason: "must be finite".into(),
        });
    }
    let barrier = ell_eff * (ell_eff + 1.0);
    if barrier < -0.25 {
        return Err(Error::FallToCenter(barrier));
    }
    match u1 {
        PotentialFamily::RadialCoulomb { .. } | PotentialFamily::RadialOscillator { .. } => {
            let fam = u1.with_ell(ell_eff).expect("closed radial family");
            eigen_solve_family(&fam, grid, k_levels)
        }
        PotentialFamily::CustomSampled(s) => {
            u1.check_domain(grid)?;
            let r0 = grid.z_min();
            let strength = r0 * r0 * s.interpolate(r0) + barrier;
            if strength < -0.25 {
                return Err(Error::FallToCenter(strength));
            }
            eigen_solve(|r| s.interpolate(r) + barrier / (r * r), grid, k_levels)
        }
        other => Err(Error::DomainMismatch {
            family: other.tag().name(),
            kind: GridKind::Radial,
            reason: "not a radial potential".into(),
        }),
    }
}

/// Solves the polar equation
/// `P'' + cot θ P' + [λ - m²/sin²θ - U2(θ)] P = 0` directly in θ for the
/// separation constant `λ = l(l+1)`.
///
/// The grid is read as cell centres. Near a pole `P ~ θ^μ` with the indicial
/// exponent `μ = sqrt(m² + lim sin²θ U2)`, and near a `c/cos²θ` wall
/// `P ~ |cos θ|^α` with `α(α-1) = c`. Writing
/// `P = sin^a(θ/2) cos^b(θ/2) |cos θ|^p F` with those exponents leaves a
/// smooth `F` and the flux-form problem `-(w F')' + w q F = λ w F`,
/// `w = sin θ · g²`, symmetrized with `√w F`. Faces at poles and at the
/// `c/cos²θ` wall carry no flux; any other outer face is a Dirichlet wall.
pub fn solve_angular_direct(
    m: i32,
    form: &AngularForm,
    grid: &Grid1D,
    k_levels: usize,
) -> Result<OracleResult> {
    if grid.kind() != GridKind::Angular {
        return Err(Error::DomainMismatch {
            family: form.name(),
            kind: grid.kind(),
            reason: "solve_angular_direct needs an angular grid".into(),
        });
    }
    let (lo, hi) = grid.faces();
    let tol = 1e-9;
    if lo < -tol || hi > PI + tol {
        return Err(Error::InvalidGrid(format!(
            "angular cells [{lo}, {hi}] extend past the poles"
        )));
    }
    match form {
        AngularForm::DoubleTrig { .. } if lo < 0.5 * PI - tol && hi > 0.5 * PI + tol => {
            return Err(Error::DomainMismatch {
                family: form.name(),
                kind: grid.kind(),
                reason: "the c/cos^2 wall at pi/2 splits the interval; use (pi/2, pi)".into(),
            });
        }
        AngularForm::Custom(s) if !(s.covers(grid.z_min()) && s.covers(grid.z_max())) => {
            return Err(Error::DomainMismatch {
                family: form.name(),
                kind: grid.kind(),
                reason: "grid extends beyond the tabulated range".into(),
            });
        }
        _ => {}
    }
    let fine = grid.refined_cells();
    let coarse_op = angular_operator(m, form, grid);
    let fine_op = angular_operator(m, form, &fine);
    Ok(extract(
        &coarse_op,
        &fine_op,
        grid.clone(),
        fine,
        k_levels,
        f64::INFINITY,
    ))
}

fn vertex_operator<V: Fn(f64) -> f64>(potential: &V, grid: &Grid1D) -> Result<SymTridiagonal> {
    let v: Vec<f64> = grid.sample(potential);
    vertex_matrix(&v, grid.spacing())
}

/// Interior rows of `-d²/dz² + V`; the end nodes are Dirichlet walls.
fn vertex_matrix(v: &[f64], h: f64) -> Result<SymTridiagonal> {
    let inner = &v[1..v.len() - 1];
    if let Some(bad) = inner.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "potential",
            value: *bad,
            reason: "potential must be finite on interior nodes".into(),
        });
    }
    let k = 1.0 / (h * h);
    let diag: Vec<f64> = inner.iter().map(|x| 2.0 * k + x).collect();
    let off = vec![-k; diag.len() - 1];
    Ok(SymTridiagonal::new(diag, off))
}

/// Indicial exponent `sqrt(m^2 + lim sin^2(θ) U2(θ))` at a pole.
fn pole_exponent(m2: f64, form: &AngularForm, at_zero: bool, grid: &Grid1D) -> f64 {
    let strength = match form {
        AngularForm::RingTrig { beta, gamma } => {
            if at_zero {
                beta + gamma
            } else {
                beta - gamma
            }
        }
        AngularForm::DoubleTrig { delta, .. } => *delta,
        AngularForm::Custom(s) => {
            let t = if at_zero { grid.z_min() } else { grid.z_max() };
            t.sin().powi(2) * s.interpolate(t)
        }
    };
    (m2 + strength).max(0.0).sqrt()
}

fn angular_operator(m: i32, form: &AngularForm, grid: &Grid1D) -> SymTridiagonal {
    let n = grid.len();
    let h = grid.spacing();
    let (lo, hi) = grid.faces();
    let near = |x: f64, y: f64| (x - y).abs() < 1e-9;
    let m2 = f64::from(m) * f64::from(m);
    // P = sin^a(θ/2) cos^b(θ/2) |cos θ|^p F, exponents from the local
    // behaviour at the poles and at a c/cos^2 wall
    let a = if near(lo, 0.0) {
        pole_exponent(m2, form, true, grid)
    } else {
        0.0
    };
    let b = if near(hi, PI) {
        pole_exponent(m2, form, false, grid)
    } else {
        0.0
    };
    let p = match form {
        AngularForm::DoubleTrig { c, .. } if near(lo, 0.5 * PI) || near(hi, 0.5 * PI) => {
            crate::potential::alpha_from_c(*c)
        }
        _ => 0.0,
    };
    let natural = |f: f64| near(f, 0.0) || near(f, PI) || (p > 0.0 && near(f, 0.5 * PI));
    let weight = |t: f64| {
        let (su, cu) = (0.5 * t).sin_cos();
        t.sin() * su.abs().powf(2.0 * a) * cu.abs().powf(2.0 * b) * t.cos().abs().powf(2.0 * p)
    };
    // (s g')' / (s g) = L'' + L'^2 + cot θ L' with L = ln g
    let factor_term = |t: f64| {
        let (su, cu) = (0.5 * t).sin_cos();
        let tan_t = t.tan();
        let d1 = 0.5 * a * cu / su - 0.5 * b * su / cu - p * tan_t;
        let d2 = -0.25 * a / (su * su) - 0.25 * b / (cu * cu) - p * (1.0 + tan_t * tan_t);
        d2 + d1 * d1 + d1 / tan_t
    };
    let centres: Vec<f64> = grid.points().collect();
    let w: Vec<f64> = centres.iter().map(|&t| weight(t)).collect();
    // face i sits between cells i-1 and i; face 0 and face n are the outer ones
    let mut face_w: Vec<f64> = (0..=n).map(|i| weight(lo + i as f64 * h)).collect();
    let lower_wall = if natural(lo) {
        face_w[0] = 0.0;
        1.0
    } else {
        2.0
    };
    let upper_wall = if natural(hi) {
        face_w[n] = 0.0;
        1.0
    } else {
        2.0
    };
    let k = 1.0 / (h * h);
    let diag: Vec<f64> = (0..n)
        .map(|i| {
            let t = centres[i];
            let s = t.sin();
            let left = if i == 0 {
                lower_wall * face_w[0]
            } else {
                face_w[i]
            };
            let right = if i + 1 == n {
                upper_wall * face_w[n]
            } else {
                face_w[i + 1]
            };
            k * (left + right) / w[i] + m2 / (s * s) + form.value(t) - factor_term(t)
        })
        .collect();
    let off: Vec<f64> = (0..n - 1)
        .map(|i| -k * face_w[i + 1] / (w[i] * w[i + 1]).sqrt())
        .collect();
    SymTridiagonal::new(diag, off)
}

fn open_end_threshold<V: Fn(f64) -> f64>(potential: &V, grid: &Grid1D) -> f64 {
    let mut t = f64::INFINITY;
    if grid.lower_end_open() {
        t = t.min(potential(grid.z_min()));
    }
    if grid.upper_end_open() {
        t = t.min(potential(grid.z_max()));
    }
    t
}

fn extract(
    coarse: &SymTridiagonal,
    fine: &SymTridiagonal,
    coarse_grid: Grid1D,
    fine_grid: Grid1D,
    k_levels: usize,
    threshold: f64,
) -> OracleResult {
    let below = fine
        .sturm_count(threshold)
        .min(coarse.sturm_count(threshold));
    let k = k_levels.min(below);
    let fine_e = fine.lowest(k);
    let coarse_e = coarse.lowest(k);
    let mut levels = Vec::with_capacity(k);
    let mut certified = Vec::with_capacity(k);
    for (n, (&ef, &ec)) in fine_e.iter().zip(&coarse_e).enumerate() {
        let extrapolated = ef + (ef - ec) / 3.0;
        if !(extrapolated < threshold) {
            break;
        }
        levels.push(SpectrumLevel::new(
            n,
            extrapolated,
            Provenance::NumericOracle,
        ));
        certified.push((ef - ec).abs() / 3.0);
    }
    let found = levels.len();
    OracleResult {
        levels,
        certified_tolerance: certified,
        coarse_energies: coarse_e[..found].to_vec(),
        fine_energies: fine_e[..found].to_vec(),
        grid_pair: (coarse_grid, fine_grid),
        threshold,
        truncated: found < k_levels,
    }
}

fn attach_wavefunctions(result: &mut OracleResult, fine_op: &SymTridiagonal, fine: &Grid1D) {
    for (level, &e) in result.levels.iter_mut().zip(&result.fine_energies) {
        let inner = fine_op.eigenvector(e);
        let mut psi = Vec::with_capacity(fine.len());
        psi.push(0.0);
        psi.extend(inner);
        psi.push(0.0);
        quadrature::normalize_l2(&mut psi, fine.spacing());
        level.wavefunction = Some(psi);
    }
}
