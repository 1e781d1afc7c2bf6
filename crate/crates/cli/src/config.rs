//! Run configuration: a TOML file with `[run]`, `[potential]`,
//! `[potential.radial]`, `[potential.angular]`, `[perturbation]` and `[grid]`
//! sections. Unknown keys are rejected; family parameters have no defaults.

use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use spectra_core::assembler::{Branch, OracleSettings, VerifyTolerances};
use spectra_core::catalog::AnsatzShape;
use spectra_core::{AngularForm, DeltaPotential, PotentialFamily, PotentialSpec, QuantumRanges};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Spectrum,
    Verify,
    Perturb,
    Transform,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Spectrum => "spectrum",
            Command::Verify => "verify",
            Command::Perturb => "perturb",
            Command::Transform => "transform",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

impl From<spectra_core::Error> for ConfigError {
    fn from(e: spectra_core::Error) -> Self {
        ConfigError(e.to_string())
    }
}

fn err(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

/// One-dimensional family, `[potential]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyConfig {
    #[serde(rename = "poschl_teller_i")]
    PoschlTellerI { ell: f64 },
    #[serde(rename = "rosen_morse_ii")]
    RosenMorseII { ell: f64, gamma: f64 },
    #[serde(rename = "poschl_teller_ii")]
    PoschlTellerII {
        ell: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alpha: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c: Option<f64>,
    },
    #[serde(alias = "coulomb")]
    RadialCoulomb { strength: f64, ell: f64 },
    #[serde(alias = "oscillator")]
    RadialOscillator { omega: f64, ell: f64 },
}

impl FamilyConfig {
    pub fn build(&self) -> Result<PotentialFamily, ConfigError> {
        Ok(match *self {
            Self::PoschlTellerI { ell } => PotentialFamily::poschl_teller_i(ell)?,
            Self::RosenMorseII { ell, gamma } => PotentialFamily::rosen_morse_ii(ell, gamma)?,
            Self::PoschlTellerII { ell, alpha, c } => {
                PotentialFamily::poschl_teller_ii(ell, alpha, c)?
            }
            Self::RadialCoulomb { strength, ell } => {
                PotentialFamily::radial_coulomb(strength, ell)?
            }
            Self::RadialOscillator { omega, ell } => {
                PotentialFamily::radial_oscillator(omega, ell)?
            }
        })
    }
}

/// `U₁(r)` of a non-central problem; `ℓ` comes from the polar part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum RadialConfig {
    #[serde(alias = "coulomb")]
    RadialCoulomb { strength: f64 },
    #[serde(alias = "oscillator")]
    RadialOscillator { omega: f64 },
}

impl RadialConfig {
    pub fn build(&self) -> Result<PotentialFamily, ConfigError> {
        Ok(match *self {
            Self::RadialCoulomb { strength } => PotentialFamily::radial_coulomb(strength, 0.0)?,
            Self::RadialOscillator { omega } => PotentialFamily::radial_oscillator(omega, 0.0)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
pub enum AngularConfig {
    #[serde(alias = "ring")]
    RingTrig { beta: f64, gamma: f64 },
    #[serde(alias = "double")]
    DoubleTrig { delta: f64, c: f64 },
}

impl AngularConfig {
    pub fn build(&self) -> Result<AngularForm, ConfigError> {
        Ok(match *self {
            Self::RingTrig { beta, gamma } => AngularForm::ring(beta, gamma)?,
            Self::DoubleTrig { delta, c } => AngularForm::double(delta, c)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaShape {
    Zero,
    Constant,
    Tanh,
    Sech2,
    Csch2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnsatzConfig {
    Constant,
    Coth,
}

impl From<AnsatzConfig> for AnsatzShape {
    fn from(a: AnsatzConfig) -> Self {
        match a {
            AnsatzConfig::Constant => AnsatzShape::Constant,
            AnsatzConfig::Coth => AnsatzShape::Coth,
        }
    }
}

/// `[perturbation]`: base `W = ℓ tanh z` plus `ΔV = coeff · shape(z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbationConfig {
    pub ell: f64,
    pub delta_v: DeltaShape,
    #[serde(default)]
    pub coeff: f64,
    #[serde(default = "default_k_max")]
    pub k_max: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ansatz: Option<AnsatzConfig>,
    /// Every `stride`-th grid point goes into the ΔW profile table.
    #[serde(default = "default_stride")]
    pub profile_stride: usize,
}

fn default_k_max() -> usize {
    6
}

fn default_stride() -> usize {
    20
}

impl PerturbationConfig {
    pub fn delta_potential(&self) -> DeltaPotential {
        let coeff = self.coeff;
        match self.delta_v {
            DeltaShape::Zero => DeltaPotential::Zero,
            DeltaShape::Constant => DeltaPotential::Constant { value: coeff },
            DeltaShape::Tanh => DeltaPotential::Tanh { coeff },
            DeltaShape::Sech2 => DeltaPotential::Sech2 { coeff },
            DeltaShape::Csch2 => DeltaPotential::Csch2 { coeff },
        }
    }

    pub fn half_line(&self) -> bool {
        self.delta_v == DeltaShape::Csch2 || self.ansatz == Some(AnsatzConfig::Coth)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    pub format: Format,
    /// Energy tolerance for `verify`, and for the checks `perturb` and
    /// `transform` run.
    pub tolerance: Option<f64>,
    pub angular_tolerance: f64,
    /// Ladder depth for single-family verification.
    pub n_max: usize,
    pub n_r: [u32; 2],
    pub n_theta: [u32; 2],
    pub m: [i32; 2],
    pub branch: Branch,
    /// Sample count for the `transform` identities table.
    pub samples: usize,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            command: None,
            format: Format::Csv,
            tolerance: None,
            angular_tolerance: VerifyTolerances::default().angular,
            n_max: 10,
            n_r: [0, 1],
            n_theta: [0, 1],
            m: [0, 1],
            branch: Branch::Plus,
            samples: 41,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    /// Half-width `L` of full-line grids and outer edge of half-line grids.
    pub extent: f64,
    pub spacing: f64,
    /// Overrides `spacing` when present.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_points: Option<usize>,
    /// Distance of the first half-line node from `z = 0`.
    pub offset: f64,
    pub radial_offset: f64,
    pub radial_spacing: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radial_extent: Option<f64>,
    pub angular_cells: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        let o = OracleSettings::default();
        Self {
            extent: 20.0,
            spacing: 1e-2,
            n_points: None,
            offset: spectra_core::grid::DEFAULT_OFFSET,
            radial_offset: o.radial_offset,
            radial_spacing: o.radial_spacing,
            radial_extent: o.radial_extent,
            angular_cells: o.angular_cells,
        }
    }
}

impl GridSection {
    pub fn settings(&self, branch: Branch) -> OracleSettings {
        OracleSettings {
            branch,
            angular_cells: self.angular_cells,
            radial_offset: self.radial_offset,
            radial_spacing: self.radial_spacing,
            radial_extent: self.radial_extent,
        }
    }

    /// Spacing on an interval of length `span`.
    pub fn spacing_for(&self, span: f64) -> f64 {
        match self.n_points {
            Some(n) if n > 1 => span / (n - 1) as f64,
            _ => self.spacing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct PotentialSection {
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radial: Option<RadialConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angular: Option<AngularConfig>,
}

/// The resolved configuration, defaults filled in. It is echoed into every
/// report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub run: RunSection,
    pub potential: PotentialSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<PerturbationConfig>,
    pub grid: GridSection,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    run: RunSection,
    #[serde(default)]
    potential: Option<toml::Table>,
    #[serde(default)]
    perturbation: Option<PerturbationConfig>,
    #[serde(default)]
    grid: GridSection,
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| err(format!("config: {e}")))?;
    let mut potential = PotentialSection::default();
    if let Some(mut table) = raw.potential {
        if let Some(v) = table.remove("radial") {
            potential.radial = Some(
                v.try_into()
                    .map_err(|e| err(format!("config: [potential.radial]: {e}")))?,
            );
        }
        if let Some(v) = table.remove("angular") {
            potential.angular = Some(
                v.try_into()
                    .map_err(|e| err(format!("config: [potential.angular]: {e}")))?,
            );
        }
        if !table.is_empty() {
            potential.family = Some(
                toml::Value::Table(table)
                    .try_into()
                    .map_err(|e| err(format!("config: [potential]: {e}")))?,
            );
        }
    }
    let cfg = RunConfig {
        run: raw.run,
        potential,
        perturbation: raw.perturbation,
        grid: raw.grid,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn range<T: Copy + PartialOrd + fmt::Display>(
    key: &str,
    r: [T; 2],
) -> Result<RangeInclusive<T>, ConfigError> {
    if r[0] > r[1] {
        return Err(err(format!(
            "config: [run] {key} = [{}, {}] is reversed",
            r[0], r[1]
        )));
    }
    Ok(r[0]..=r[1])
}

impl RunConfig {
    /// Checks everything that can be checked without running a solver.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(f) = &self.potential.family {
            f.build()?;
        }
        if let Some(r) = &self.potential.radial {
            r.build()?;
        }
        if let Some(a) = &self.potential.angular {
            a.build()?;
        }
        if self.potential.radial.is_some() && self.potential.angular.is_none() {
            return Err(err(
                "config: [potential.radial] needs a [potential.angular] section",
            ));
        }
        range("n_r", self.run.n_r)?;
        range("n_theta", self.run.n_theta)?;
        range("m", self.run.m)?;
        let g = &self.grid;
        for (key, v) in [
            ("extent", g.extent),
            ("spacing", g.spacing),
            ("offset", g.offset),
            ("radial_offset", g.radial_offset),
            ("radial_spacing", g.radial_spacing),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(err(format!("config: [grid] {key} = {v} must be positive")));
            }
        }
        if let Some(t) = self.run.tolerance {
            check_tolerance("[run] tolerance", t)?;
        }
        check_tolerance("[run] angular_tolerance", self.run.angular_tolerance)?;
        if let Some(p) = &self.perturbation {
            if !(p.ell > 0.0 && p.ell.is_finite()) {
                return Err(err(format!(
                    "config: [perturbation] ell = {} must be positive",
                    p.ell
                )));
            }
            if p.k_max == 0 || p.profile_stride == 0 {
                return Err(err(
                    "config: [perturbation] k_max and profile_stride must be at least 1",
                ));
            }
        }
        Ok(())
    }

    pub fn ranges(&self) -> QuantumRanges {
        QuantumRanges {
            n_r: self.run.n_r[0]..=self.run.n_r[1],
            n_theta: self.run.n_theta[0]..=self.run.n_theta[1],
        }
    }

    pub fn spec(&self) -> Result<Option<PotentialSpec>, ConfigError> {
        let (Some(r), Some(a)) = (&self.potential.radial, &self.potential.angular) else {
            return Ok(None);
        };
        Ok(Some(PotentialSpec::new(
            r.build()?,
            a.build()?,
            self.run.m[0]..=self.run.m[1],
        )?))
    }

    pub fn settings(&self) -> OracleSettings {
        self.grid.settings(self.run.branch)
    }
}

pub fn check_tolerance(what: &str, t: f64) -> Result<(), ConfigError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(err(format!("{what} = {t} must be a positive number")));
    }
    Ok(())
}
