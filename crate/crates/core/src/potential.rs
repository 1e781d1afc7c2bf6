//! Shared data model: potential families, separable potential specifications
//! and spectra.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Grid1D, GridKind};

/// Closed-form potential families known to the crate, plus a sampled escape
/// hatch. Units are ħ = 2m = 1 throughout.
///
/// Radial families carry the angular momentum `ell` of the centrifugal
/// barrier; their potential includes `ell (ell + 1) / r^2`. The angular
/// families are written in the mapped coordinate `z` of the polar equation.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum PotentialFamily {
    /// `-ell (ell + 1) sech^2 z`
    #[serde(rename = "poschl_teller_i")]
    PoschlTellerI {
        ell: f64,
    },
    /// `-ell (ell + 1) sech^2 z - gamma tanh z`
    #[serde(rename = "rosen_morse_ii")]
    RosenMorseII {
        ell: f64,
        gamma: f64,
    },
    /// `-ell (ell + 1) sech^2 z + alpha (alpha - 1) csch^2 z`, z > 0
    #[serde(rename = "poschl_teller_ii")]
    PoschlTellerII {
        ell: f64,
        alpha: f64,
    },
    /// `-strength / r + ell (ell + 1) / r^2`
    RadialCoulomb {
        strength: f64,
        ell: f64,
    },
    /// `omega^2 r^2 / 4 + ell (ell + 1) / r^2`
    RadialOscillator {
        omega: f64,
        ell: f64,
    },
    CustomSampled(SampledPotential),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    #[serde(rename = "poschl_teller_i")]
    PoschlTellerI,
    #[serde(rename = "rosen_morse_ii")]
    RosenMorseII,
    #[serde(rename = "poschl_teller_ii")]
    PoschlTellerII,
    RadialCoulomb,
    RadialOscillator,
    CustomSampled,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 6] = [
        FamilyTag::PoschlTellerI,
        FamilyTag::RosenMorseII,
        FamilyTag::PoschlTellerII,
        FamilyTag::RadialCoulomb,
        FamilyTag::RadialOscillator,
        FamilyTag::CustomSampled,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::PoschlTellerI => "poschl_teller_i",
            FamilyTag::RosenMorseII => "rosen_morse_ii",
            FamilyTag::PoschlTellerII => "poschl_teller_ii",
            FamilyTag::RadialCoulomb => "radial_coulomb",
            FamilyTag::RadialOscillator => "radial_oscillator",
            FamilyTag::CustomSampled => "custom_sampled",
        }
    }
}

impl std::str::FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

/// Potential values tabulated on a grid, resampled by linear interpolation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledPotential {
    #[serde(skip)]
    grid: Grid1D,
    samples: Vec<f64>,
}

impl SampledPotential {
    pub fn new(grid: Grid1D, samples: Vec<f64>) -> Result<Self> {
        grid.check_len(&samples)?;
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid(
                "sampled potential has non-finite values".into(),
            ));
        }
        Ok(Self { grid, samples })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn covers(&self, z: f64) -> bool {
        let slack = 1e-9 * self.grid.spacing();
        z >= self.grid.z_min() - slack && z <= self.grid.z_max() + slack
    }

    /// Linear interpolation; callers check [`covers`](Self::covers) first.
    pub fn interpolate(&self, z: f64) -> f64 {
        let n = self.samples.len();
        let t = ((z - self.grid.z_min()) / self.grid.spacing()).clamp(0.0, (n - 1) as f64);
        let i = (t.floor() as usize).min(n - 2);
        let frac = t - i as f64;
        self.samples[i] * (1.0 - frac) + self.samples[i + 1] * frac
    }
}

impl PotentialFamily {
    pub fn poschl_teller_i(ell: f64) -> Result<Self> {
        check_nonneg("ell", ell)?;
        Ok(Self::PoschlTellerI { ell })
    }

    pub fn rosen_morse_ii(ell: f64, gamma: f64) -> Result<Self> {
        check_nonneg("ell", ell)?;
        check_finite("gamma", gamma)?;
        Ok(Self::RosenMorseII { ell, gamma })
    }

    /// Pöschl–Teller II from either `alpha`, `c = alpha (alpha - 1)`, or both.
    /// With `c` the root `alpha = 1/2 + sqrt(1/4 + c)` is taken.
    pub fn poschl_teller_ii(ell: f64, alpha: Option<f64>, c: Option<f64>) -> Result<Self> {
        check_nonneg("ell", ell)?;
        let alpha = match (alpha, c) {
            (None, None) => {
                return Err(Error::InvalidParameter {
                    name: "alpha",
                    value: f64::NAN,
                    reason: "either alpha or c must be given".into(),
                })
            }
            (Some(a), None) => a,
            (a, Some(c)) => {
                check_nonneg("c", c)?;
                let from_c = alpha_from_c(c);
                if let Some(a) = a {
                    if (a - from_c).abs() > 1e-12 {
                        return Err(Error::InvalidParameter {
                            name: "alpha",
                            value: a,
                            reason: format!("inconsistent with c = {c} (expected {from_c})"),
                        });
                    }
                }
                from_c
            }
        };
        if !(alpha >= 1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "alpha >= 1 required so that c = alpha (alpha - 1) >= 0".into(),
            });
        }
        Ok(Self::PoschlTellerII { ell, alpha })
    }

    pub fn radial_coulomb(strength: f64, ell: f64) -> Result<Self> {
        check_positive("strength", strength)?;
        check_nonneg("ell", ell)?;
        Ok(Self::RadialCoulomb { strength, ell })
    }

    pub fn radial_oscillator(omega: f64, ell: f64) -> Result<Self> {
        check_positive("omega", omega)?;
        check_nonneg("ell", ell)?;
        Ok(Self::RadialOscillator { omega, ell })
    }

    pub fn tag(&self) -> FamilyTag {
        match self {
            Self::PoschlTellerI { .. } => FamilyTag::PoschlTellerI,
            Self::RosenMorseII { .. } => FamilyTag::RosenMorseII,
            Self::PoschlTellerII { .. } => FamilyTag::PoschlTellerII,
            Self::RadialCoulomb { .. } => FamilyTag::RadialCoulomb,
            Self::RadialOscillator { .. } => FamilyTag::RadialOscillator,
            Self::CustomSampled(_) => FamilyTag::CustomSampled,
        }
    }

    /// Angular momentum parameter, when the family has one.
    pub fn ell(&self) -> Option<f64> {
        match *self {
            Self::PoschlTellerI { ell }
            | Self::RosenMorseII { ell, .. }
            | Self::PoschlTellerII { ell, .. }
            | Self::RadialCoulomb { ell, .. }
            | Self::RadialOscillator { ell, .. } => Some(ell),
            Self::CustomSampled(_) => None,
        }
    }

    /// Copy with the angular momentum replaced; `None` for sampled potentials.
    pub fn with_ell(&self, ell: f64) -> Option<Self> {
        let mut out = self.clone();
        match &mut out {
            Self::PoschlTellerI { ell: l }
            | Self::RosenMorseII { ell: l, .. }
            | Self::PoschlTellerII { ell: l, .. }
            | Self::RadialCoulomb { ell: l, .. }
            | Self::RadialOscillator { ell: l, .. } => *l = ell,
            Self::CustomSampled(_) => return None,
        }
        Some(out)
    }
}

/// `alpha = 1/2 + sqrt(1/4 + c)`, the root with `alpha >= 1/2`.
pub fn alpha_from_c(c: f64) -> f64 {
    0.5 + (0.25 + c).sqrt()
}

/// Evaluates a family pointwise on a grid. Sampled families are resampled by
/// linear interpolation.
pub fn sample_potential(family: &PotentialFamily, grid: &Grid1D) -> Result<Vec<f64>> {
    family.check_domain(grid)?;
    Ok(grid.sample(|z| family.value(z)))
}

/// Perturbing pieces of a z-space potential (the `ΔV` of a decomposition
/// `V = V0 + ΔV`).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum DeltaPotential {
    Zero,
    Constant {
        value: f64,
    },
    /// `coeff * tanh z`
    Tanh {
        coeff: f64,
    },
    /// `coeff * sech^2 z`
    Sech2 {
        coeff: f64,
    },
    /// `coeff * csch^2 z`, half line only
    Csch2 {
        coeff: f64,
    },
    Sampled(SampledPotential),
}

impl DeltaPotential {
    pub fn value(&self, z: f64) -> f64 {
        match self {
            Self::Zero => 0.0,
            Self::Constant { value } => *value,
            Self::Tanh { coeff } => coeff * z.tanh(),
            Self::Sech2 { coeff } => {
                let s = 1.0 / z.cosh();
                coeff * s * s
            }
            Self::Csch2 { coeff } => {
                let s = 1.0 / z.sinh();
                coeff * s * s
            }
            Self::Sampled(s) => s.interpolate(z),
        }
    }

    pub fn sample(&self, grid: &Grid1D) -> Result<Vec<f64>> {
        match self {
            Self::Csch2 { coeff } if *coeff != 0.0 && grid.z_min() <= 0.0 => {
                Err(Error::DomainMismatch {
                    family: "csch^2",
                    kind: grid.kind(),
                    reason: "csch^2 z is singular at z = 0".into(),
                })
            }
            Self::Sampled(s) if !(s.covers(grid.z_min()) && s.covers(grid.z_max())) => {
                Err(Error::DomainMismatch {
                    family: "sampled",
                    kind: grid.kind(),
                    reason: "grid extends beyond the tabulated range".into(),
                })
            }
            _ => Ok(grid.sample(|z| self.value(z))),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Zero => true,
            Self::Constant { value } => *value == 0.0,
            Self::Tanh { coeff } | Self::Sech2 { coeff } | Self::Csch2 { coeff } => *coeff == 0.0,
            Self::Sampled(s) => s.samples().iter().all(|v| *v == 0.0),
        }
    }
}

/// Polar-angle potentials `U2(theta)`, entering the Schrödinger equation as
/// `U2(theta) / r^2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum AngularForm {
    /// `(beta + gamma cos theta) / sin^2 theta`
    RingTrig { beta: f64, gamma: f64 },
    /// `delta / sin^2 theta + c / cos^2 theta`
    DoubleTrig { delta: f64, c: f64 },
    /// Tabulated on an angular grid.
    Custom(SampledPotential),
}

impl AngularForm {
    pub fn ring(beta: f64, gamma: f64) -> Result<Self> {
        check_finite("beta", beta)?;
        check_finite("gamma", gamma)?;
        Ok(Self::RingTrig { beta, gamma })
    }

    pub fn double(delta: f64, c: f64) -> Result<Self> {
        check_finite("delta", delta)?;
        check_nonneg("c", c)?;
        Ok(Self::DoubleTrig { delta, c })
    }

    pub fn custom(samples: SampledPotential) -> Result<Self> {
        if samples.grid().kind() != GridKind::Angular {
            return Err(Error::DomainMismatch {
                family: "custom angular",
                kind: samples.grid().kind(),
                reason: "theta-space tables need an angular grid".into(),
            });
        }
        Ok(Self::Custom(samples))
    }

    pub fn value(&self, theta: f64) -> f64 {
        match self {
            Self::RingTrig { beta, gamma } => {
                let s = theta.sin();
                (beta + gamma * theta.cos()) / (s * s)
            }
            Self::DoubleTrig { delta, c } => {
                let (s, co) = theta.sin_cos();
                delta / (s * s) + c / (co * co)
            }
            Self::Custom(s) => s.interpolate(theta),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::RingTrig { .. } => "ring_trig",
            Self::DoubleTrig { .. } => "double_trig",
            Self::Custom(_) => "custom",
        }
    }

    /// Natural polar interval for the direct angular problem: the whole of
    /// (0, pi), or (pi/2, pi) when a `c / cos^2` wall splits it.
    pub fn theta_interval(&self) -> (f64, f64) {
        match self {
            Self::DoubleTrig { .. } => (0.5 * PI, PI),
            Self::Custom(s) => {
                let (lo, hi) = s.grid().faces();
                (lo.max(0.0), hi.min(PI))
            }
            Self::RingTrig { .. } => (0.0, PI),
        }
    }
}

/// A separable potential `U1(r) + U2(theta)/r^2` with a free azimuthal part.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialSpec {
    pub radial: PotentialFamily,
    pub angular: AngularForm,
    pub m_range: RangeInclusive<i32>,
}

impl PotentialSpec {
    pub fn new(
        radial: PotentialFamily,
        angular: AngularForm,
        m_range: RangeInclusive<i32>,
    ) -> Result<Self> {
        if !matches!(
            radial,
            PotentialFamily::RadialCoulomb { .. }
                | PotentialFamily::RadialOscillator { .. }
                | PotentialFamily::CustomSampled(_)
        ) {
            return Err(Error::DomainMismatch {
                family: radial.tag().name(),
                kind: GridKind::Radial,
                reason: "the radial factor must be a radial family".into(),
            });
        }
        if m_range.is_empty() {
            return Err(Error::InvalidParameter {
                name: "m",
                value: *m_range.start() as f64,
                reason: "empty azimuthal range".into(),
            });
        }
        Ok(Self {
            radial,
            angular,
            m_range,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    AnalyticLadder,
    Perturbative,
    NumericOracle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumLevel {
    pub n: usize,
    pub energy: f64,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavefunction: Option<Vec<f64>>,
}

impl SpectrumLevel {
    pub fn new(n: usize, energy: f64, provenance: Provenance) -> Self {
        Self {
            n,
            energy,
            provenance,
            wavefunction: None,
        }
    }
}

/// Energies strictly increase with `n`.
pub fn is_ordered(levels: &[SpectrumLevel]) -> bool {
    levels
        .windows(2)
        .all(|w| w[1].n > w[0].n && w[1].energy > w[0].energy)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuantumNumbers {
    pub n_r: u32,
    pub n_theta: u32,
    pub m: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumRanges {
    pub n_r: RangeInclusive<u32>,
    pub n_theta: RangeInclusive<u32>,
}

impl QuantumRanges {
    pub fn new(n_r: RangeInclusive<u32>, n_theta: RangeInclusive<u32>) -> Self {
        Self { n_r, n_theta }
    }
}

fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite".into(),
        })
    }
}

fn check_nonneg(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be a finite value >= 0".into(),
        })
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be > 0".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;

    #[test]
    fn closed_form_values_at_origin() {
        let g = make_grid(GridKind::FullLine, -1.0, 1.0, 21).unwrap();
        let pt = sample_potential(&PotentialFamily::poschl_teller_i(1.0).unwrap(), &g).unwrap();
        assert!((pt[10] + 2.0).abs() < 1e-15);
        let rm = sample_potential(&PotentialFamily::rosen_morse_ii(2.0, 1.0).unwrap(), &g).unwrap();
        assert!((rm[10] + 6.0).abs() < 1e-15);
    }

    #[test]
    fn poschl_teller_ii_decays_from_below() {
        let fam = PotentialFamily::poschl_teller_ii(6.0, Some(2.0), None).unwrap();
        let g = make_grid(GridKind::HalfLine, 5.0, 15.0, 101).unwrap();
        let v = sample_potential(&fam, &g).unwrap();
        assert!(v.iter().all(|&x| x < 0.0));
        // 4 e^{-2z}(c - l(l+1)) is the leading tail
        for (z, x) in g.points().zip(&v).skip(50) {
            let lead = 4.0 * (-2.0 * z).exp() * (2.0 - 42.0);
            assert!((x / lead - 1.0).abs() < 1e-3);
        }
        assert!(v.last().unwrap().abs() < 1e-10);
    }

    #[test]
    fn poschl_teller_ii_rejected_on_full_line() {
        let fam = PotentialFamily::poschl_teller_ii(6.0, Some(2.0), None).unwrap();
        let g = make_grid(GridKind::FullLine, -5.0, 5.0, 101).unwrap();
        assert!(matches!(
            sample_potential(&fam, &g),
            Err(Error::DomainMismatch { .. })
        ));
    }

    #[test]
    fn poschl_teller_ii_parameter_consistency() {
        assert!(PotentialFamily::poschl_teller_ii(6.0, Some(2.0), Some(2.0)).is_ok());
        assert!(PotentialFamily::poschl_teller_ii(6.0, Some(2.1), Some(2.0)).is_err());
        assert!(PotentialFamily::poschl_teller_ii(6.0, None, Some(-1.0)).is_err());
        let PotentialFamily::PoschlTellerII { alpha, .. } =
            PotentialFamily::poschl_teller_ii(6.0, None, Some(6.0)).unwrap()
        else {
            unreachable!()
        };
        assert!((alpha - 3.0).abs() < 1e-15);
    }

    #[test]
    fn even_family_is_symmetric() {
        let g = make_grid(GridKind::FullLine, -20.0, 20.0, 4001).unwrap();
        let v = sample_potential(&PotentialFamily::poschl_teller_i(3.0).unwrap(), &g).unwrap();
        let n = v.len();
        for i in 0..n {
            assert!((v[i] - v[n - 1 - i]).abs() <= 1e-12);
        }
    }

    #[test]
    fn custom_resampling_on_own_grid_is_identity() {
        let g = make_grid(GridKind::FullLine, -3.0, 4.0, 701).unwrap();
        let samples: Vec<f64> = g.points().map(|z| (z * 1.3).sin() * z.exp()).collect();
        let fam = PotentialFamily::CustomSampled(
            SampledPotential::new(g.clone(), samples.clone()).unwrap(),
        );
        let back = sample_potential(&fam, &g).unwrap();
        for (a, b) in samples.iter().zip(&back) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn tag_round_trip() {
        for tag in FamilyTag::ALL {
            assert_eq!(tag.name().parse::<FamilyTag>().unwrap(), tag);
        }
        assert!("morse".parse::<FamilyTag>().is_err());
    }
}
