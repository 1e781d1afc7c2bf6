//! Full spectra of separable non-central potentials
//! `U₁(r) + U₂(θ)/r²`.
//!
//! The polar problem fixes an effective, generally non-integer `ℓ` for every
//! `(n_θ, m)`; the radial ladder is then evaluated at that `ℓ`.

use std::cmp::Ordering;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Grid1D, GridKind};
use crate::oracle;
use crate::potential::{
    AngularForm, PotentialFamily, PotentialSpec, Provenance, QuantumNumbers, QuantumRanges,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

/// `ℓ` for the ring form `(β + γ cos θ)/sin²θ`: the larger root of
/// `(ℓ-n)⁴ - (m²+β)(ℓ-n)² + γ²/4 = 0`.
pub fn ell_eff_ring(m: i32, beta: f64, gamma: f64, n_theta: u32) -> Result<f64> {
    let (s, disc) = ring_radicands(m, beta, gamma)?;
    Ok(f64::from(n_theta) + (0.5 * (s + disc.sqrt())).sqrt())
}

/// The smaller root of the same quadratic, when it describes a bound
/// z-space state (`k > 0`, `k² > |γ|/2`).
pub fn ell_eff_ring_secondary(m: i32, beta: f64, gamma: f64, n_theta: u32) -> Option<f64> {
    let (s, disc) = ring_radicands(m, beta, gamma).ok()?;
    let k2 = 0.5 * (s - disc.sqrt());
    (k2 > 0.0 && k2 > 0.5 * gamma.abs()).then(|| f64::from(n_theta) + k2.sqrt())
}

fn ring_radicands(m: i32, beta: f64, gamma: f64) -> Result<(f64, f64)> {
    let s = f64::from(m * m) + beta;
    let disc = s * s - gamma * gamma;
    if disc < 0.0 || s + disc.max(0.0).sqrt() < 0.0 || s < gamma.abs() {
        return Err(Error::NoRealEllEff(format!(
            "ring form with m = {m}, beta = {beta}, gamma = {gamma}: m^2 + beta must be at least |gamma|"
        )));
    }
    Ok((s, disc))
}

/// `ℓ` for the double form `δ/sin²θ + c/cos²θ`:
/// `2n + (1/2 ± sqrt(1/4 + c)) + sqrt(m² + δ)`.
pub fn ell_eff_double(m: i32, delta: f64, c: f64, n_theta: u32, branch: Branch) -> Result<f64> {
    let wall = 0.25 + c;
    let pole = f64::from(m * m) + delta;
    if wall < 0.0 || pole < 0.0 {
        return Err(Error::NoRealEllEff(format!(
            "double form with m = {m}, delta = {delta}, c = {c}: needs c >= -1/4 and m^2 + delta >= 0"
        )));
    }
    let alpha = match branch {
        Branch::Plus => 0.5 + wall.sqrt(),
        Branch::Minus => 0.5 - wall.sqrt(),
    };
    Ok(2.0 * f64::from(n_theta) + alpha + pole.sqrt())
}

/// `|-(ℓ-n)² - γ²/(4(ℓ-n)²) + m² + β|`.
pub fn ring_closure_defect(m: i32, beta: f64, gamma: f64, n_theta: u32, ell: f64) -> f64 {
    let k2 = (ell - f64::from(n_theta)).powi(2);
    (-k2 - gamma * gamma / (4.0 * k2) + f64::from(m * m) + beta).abs()
}

/// `|(ℓ - α - 2n)² - (m² + δ)|` with `α = 1/2 + sqrt(1/4 + c)`.
pub fn double_closure_defect(m: i32, delta: f64, c: f64, n_theta: u32, ell: f64) -> f64 {
    let alpha = 0.5 + (0.25 + c).sqrt();
    ((ell - alpha - 2.0 * f64::from(n_theta)).powi(2) - (f64::from(m * m) + delta)).abs()
}

/// Grid and branch choices for the numeric parts of assembly and
/// verification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleSettings {
    pub branch: Branch,
    /// Cells over the full polar interval `(0, π)`; half intervals get half.
    pub angular_cells: usize,
    pub radial_offset: f64,
    pub radial_spacing: f64,
    /// Outer radius; chosen from the level's decay length when absent.
    pub radial_extent: Option<f64>,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self {
            branch: Branch::Plus,
            angular_cells: 1000,
            radial_offset: 1e-6,
            radial_spacing: 1e-2,
            radial_extent: None,
        }
    }
}

impl OracleSettings {
    pub fn angular_grid(&self, form: &AngularForm) -> Result<Grid1D> {
        let (lo, hi) = form.theta_interval();
        let cells = ((self.angular_cells as f64) * (hi - lo) / PI).round() as usize;
        Grid1D::angular_cells(lo, hi, cells.max(crate::grid::MIN_POINTS))
    }

    /// Radial grid wide enough for level `n_r` at `ell`.
    pub fn radial_grid(&self, u1: &PotentialFamily, ell: f64, n_r: u32) -> Result<Grid1D> {
        if let PotentialFamily::CustomSampled(s) = u1 {
            let g = s.grid();
            let n = ((g.z_max() - g.z_min()) / self.radial_spacing).round() as usize + 1;
            return Grid1D::new(
                GridKind::Radial,
                g.z_min(),
                g.z_max(),
                n.max(crate::grid::MIN_POINTS),
            );
        }
        let extent = match self.radial_extent {
            Some(e) => e,
            None => default_extent(u1, ell, n_r),
        };
        Grid1D::from_offset(
            GridKind::Radial,
            self.radial_offset,
            extent,
            self.radial_spacing,
        )
    }
}

fn default_extent(u1: &PotentialFamily, ell: f64, n_r: u32) -> f64 {
    match *u1 {
        PotentialFamily::RadialCoulomb { strength, .. } => {
            // u ~ ρ^N e^{-ρ} with ρ = A r / (2N)
            let big_n = f64::from(n_r) + ell + 1.0;
            let rho = (8.0 * big_n).max(40.0);
            (2.0 * big_n * rho / strength).max(40.0)
        }
        PotentialFamily::RadialOscillator { omega, .. } => {
            let e = omega * (2.0 * f64::from(n_r) + ell + 1.5);
            (2.0 * (e + 400.0).sqrt() / omega).max(10.0)
        }
        _ => 40.0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FullSpectrumEntry {
    pub qn: QuantumNumbers,
    pub ell_eff: Option<f64>,
    pub energy: Option<f64>,
    pub angular_provenance: Provenance,
    pub radial_provenance: Provenance,
    /// Smaller root of the ring quadratic when it is also admissible.
    pub secondary_ell_eff: Option<f64>,
    pub error: Option<String>,
}

/// `ℓ` for `(n_θ, m)` from the closed forms, or from the polar oracle for
/// tabulated `U₂`.
pub fn ell_eff(
    form: &AngularForm,
    m: i32,
    n_theta: u32,
    settings: &OracleSettings,
) -> Result<(f64, Provenance)> {
    match form {
        AngularForm::RingTrig { beta, gamma } => Ok((
            ell_eff_ring(m, *beta, *gamma, n_theta)?,
            Provenance::AnalyticLadder,
        )),
        AngularForm::DoubleTrig { delta, c } => Ok((
            ell_eff_double(m, *delta, *c, n_theta, settings.branch)?,
            Provenance::AnalyticLadder,
        )),
        AngularForm::Custom(_) => {
            let grid = settings.angular_grid(form)?;
            let r = oracle::solve_angular_direct(m, form, &grid, n_theta as usize + 1)?;
            let lambda = r.energy(n_theta as usize).ok_or_else(|| {
                Error::NoRealEllEff(format!("polar oracle found no level {n_theta} for m = {m}"))
            })?;
            if lambda < -0.25 {
                return Err(Error::NoRealEllEff(format!(
                    "separation constant {lambda} below -1/4"
                )));
            }
            Ok(((0.25 + lambda).sqrt() - 0.5, Provenance::NumericOracle))
        }
    }
}

/// Energy of radial level `n_r` at real `ℓ`.
pub fn radial_energy(
    u1: &PotentialFamily,
    ell: f64,
    n_r: u32,
    settings: &OracleSettings,
) -> Result<(f64, Provenance)> {
    if let Some(e) = u1.with_ell(ell).and_then(|f| f.ladder_energy(n_r as usize)) {
        return Ok((e, Provenance::AnalyticLadder));
    }
    let grid = settings.radial_grid(u1, ell, n_r)?;
    let r = oracle::radial_solve(u1, ell, &grid, n_r as usize + 1)?;
    let e = r
        .energy(n_r as usize)
        .ok_or_else(|| Error::InvalidParameter {
            name: "n_r",
            value: f64::from(n_r),
            reason: "no such bound radial level".into(),
        })?;
    Ok((e, Provenance::NumericOracle))
}

pub fn total_spectrum(spec: &PotentialSpec, ranges: &QuantumRanges) -> Vec<FullSpectrumEntry> {
    total_spectrum_with(spec, ranges, &OracleSettings::default())
}

/// All `(n_r, n_θ, m)` in range, sorted by energy; entries whose `ℓ` or
/// energy could not be formed carry the error and sort last.
pub fn total_spectrum_with(
    spec: &PotentialSpec,
    ranges: &QuantumRanges,
    settings: &OracleSettings,
) -> Vec<FullSpectrumEntry> {
    let mut qns = Vec::new();
    for m in spec.m_range.clone() {
        for n_theta in ranges.n_theta.clone() {
            for n_r in ranges.n_r.clone() {
                qns.push(QuantumNumbers { n_r, n_theta, m });
            }
        }
    }
    let mut entries: Vec<FullSpectrumEntry> = qns
        .par_iter()
        .map(|qn| entry(spec, *qn, settings))
        .collect();
    entries.sort_by(|a, b| {
        match (a.energy, b.energy) {
            (Some(x), Some(y)) => x.total_cmp(&y),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        }
        .then_with(|| (a.qn.n_r, a.qn.n_theta, a.qn.m).cmp(&(b.qn.n_r, b.qn.n_theta, b.qn.m)))
    });
    entries
}

fn entry(spec: &PotentialSpec, qn: QuantumNumbers, settings: &OracleSettings) -> FullSpectrumEntry {
    let mut out = FullSpectrumEntry {
        qn,
        ell_eff: None,
        energy: None,
        angular_provenance: Provenance::AnalyticLadder,
        radial_provenance: Provenance::AnalyticLadder,
        secondary_ell_eff: None,
        error: None,
    };
    if let AngularForm::RingTrig { beta, gamma } = spec.angular {
        out.secondary_ell_eff = ell_eff_ring_secondary(qn.m, beta, gamma, qn.n_theta);
    }
    let ell = match ell_eff(&spec.angular, qn.m, qn.n_theta, settings) {
        Ok((ell, prov)) => {
            out.angular_provenance = prov;
            out.ell_eff = Some(ell);
            ell
        }
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    match radial_energy(&spec.radial, ell, qn.n_r, settings) {
        Ok((e, prov)) => {
            out.energy = Some(e);
            out.radial_provenance = prov;
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyTolerances {
    /// On `ℓ(ℓ+1)` against the polar oracle's separation constant.
    pub angular: f64,
    /// On the energy against the radial oracle.
    pub radial: f64,
}

impl Default for VerifyTolerances {
    fn default() -> Self {
        Self {
            angular: 1e-4,
            radial: 1e-5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorCheck {
    pub analytic: f64,
    pub oracle: f64,
    pub residual: f64,
    pub certified: f64,
    pub pass: bool,
}

impl FactorCheck {
    fn new(analytic: f64, oracle: f64, certified: f64, tol: f64) -> Self {
        let residual = (analytic - oracle).abs();
        Self {
            analytic,
            oracle,
            residual,
            certified,
            pass: residual <= tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Unresolvable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRow {
    pub qn: QuantumNumbers,
    pub ell_eff: Option<f64>,
    pub angular: Option<FactorCheck>,
    pub radial: Option<FactorCheck>,
    pub status: CheckStatus,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<VerificationRow>,
    pub tolerances: VerifyTolerances,
    pub passed: usize,
    pub failed: usize,
    pub unresolvable: usize,
}

impl VerificationReport {
    /// True when no resolvable entry failed; unresolvable entries do not
    /// count either way.
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

/// Checks every entry against the polar and radial oracles.
pub fn verify_spectrum(
    spec: &PotentialSpec,
    entries: &[FullSpectrumEntry],
    tolerances: &VerifyTolerances,
    settings: &OracleSettings,
) -> VerificationReport {
    let rows: Vec<VerificationRow> = entries
        .par_iter()
        .map(|e| verify_entry(spec, e, tolerances, settings))
        .collect();
    let count = |s: CheckStatus| rows.iter().filter(|r| r.status == s).count();
    VerificationReport {
        passed: count(CheckStatus::Pass),
        failed: count(CheckStatus::Fail),
        unresolvable: count(CheckStatus::Unresolvable),
        rows,
        tolerances: *tolerances,
    }
}

fn verify_entry(
    spec: &PotentialSpec,
    e: &FullSpectrumEntry,
    tol: &VerifyTolerances,
    settings: &OracleSettings,
) -> VerificationRow {
    let mut row = VerificationRow {
        qn: e.qn,
        ell_eff: e.ell_eff,
        angular: None,
        radial: None,
        status: CheckStatus::Unresolvable,
        note: e.error.clone(),
    };
    let (Some(ell), Some(energy)) = (e.ell_eff, e.energy) else {
        return row;
    };
    let n_theta = e.qn.n_theta as usize;
    let angular = settings
        .angular_grid(&spec.angular)
        .and_then(|g| oracle::solve_angular_direct(e.qn.m, &spec.angular, &g, n_theta + 1));
    match angular {
        Ok(r) => match (r.energy(n_theta), r.tolerance(n_theta)) {
            (Some(lambda), Some(cert)) => {
                row.angular = Some(FactorCheck::new(
                    ell * (ell + 1.0),
                    lambda,
                    cert,
                    tol.angular,
                ));
            }
            _ => row.note = Some(format!("polar oracle found no level {n_theta}")),
        },
        Err(err) => row.note = Some(err.to_string()),
    }
    let n_r = e.qn.n_r as usize;
    let radial = settings
        .radial_grid(&spec.radial, ell, e.qn.n_r)
        .and_then(|g| oracle::radial_solve(&spec.radial, ell, &g, n_r + 1));
    match radial {
        Ok(r) => match (r.energy(n_r), r.tolerance(n_r)) {
            (Some(oracle_e), Some(cert)) => {
                row.radial = Some(FactorCheck::new(energy, oracle_e, cert, tol.radial));
            }
            _ => row.note = Some(format!("radial oracle found no level {n_r}")),
        },
        Err(err) => row.note = Some(err.to_string()),
    }
    row.status = match (row.angular, row.radial) {
        (Some(a), Some(r)) if a.pass && r.pass => CheckStatus::Pass,
        _ => CheckStatus::Fail,
    };
    row
}
