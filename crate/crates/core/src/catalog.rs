//! Registry of the closed-form families: potentials, superpotential chains,
//! ladder energies, bound-state criteria and the ΔW ansatz dictionary.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Grid1D, GridKind};
use crate::potential::{DeltaPotential, FamilyTag, PotentialFamily};
use crate::susy::{ClosedFormW, Superpotential};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyDefinition {
    pub tag: FamilyTag,
    pub domain: GridKind,
    pub potential: &'static str,
    pub superpotential: &'static str,
    pub step_rule: &'static str,
    pub energy: &'static str,
    pub theta_form: Option<&'static str>,
    pub constraints: &'static str,
}

static DEFINITIONS: [FamilyDefinition; 6] = [
    FamilyDefinition {
        tag: FamilyTag::PoschlTellerI,
        domain: GridKind::FullLine,
        potential: "-l(l+1) sech^2 z",
        superpotential: "l tanh z",
        step_rule: "l -> l - 1",
        energy: "-(l - n)^2",
        theta_form: Some("0 (free polar motion)"),
        constraints: "l > 0",
    },
    FamilyDefinition {
        tag: FamilyTag::RosenMorseII,
        domain: GridKind::FullLine,
        potential: "-l(l+1) sech^2 z - gamma tanh z",
        superpotential: "l tanh z - gamma / (2 l)",
        step_rule: "l -> l - 1, gamma fixed",
        energy: "-(l - n)^2 - gamma^2 / (4 (l - n)^2)",
        theta_form: Some("(beta + gamma cos theta) / sin^2 theta"),
        constraints: "l > 0; levels need (l - n)^2 > |gamma| / 2",
    },
    FamilyDefinition {
        tag: FamilyTag::PoschlTellerII,
        domain: GridKind::HalfLine,
        potential: "-l(l+1) sech^2 z + alpha(alpha-1) csch^2 z",
        superpotential: "l tanh z - alpha coth z",
        step_rule: "l -> l - 1, alpha -> alpha + 1",
        energy: "-(l - alpha - 2n)^2",
        theta_form: Some("delta / sin^2 theta + c / cos^2 theta, c = alpha(alpha-1)"),
        constraints: "l > 0; alpha >= 1; levels need l - alpha - 2n > 0",
    },
    FamilyDefinition {
        tag: FamilyTag::RadialCoulomb,
        domain: GridKind::Radial,
        potential: "-A / r + l(l+1) / r^2",
        superpotential: "A / (2(l+1)) - (l+1) / r",
        step_rule: "l -> l + 1",
        energy: "-A^2 / (4 (n + l + 1)^2)",
        theta_form: None,
        constraints: "A > 0; l >= 0",
    },
    FamilyDefinition {
        tag: FamilyTag::RadialOscillator,
        domain: GridKind::Radial,
        potential: "omega^2 r^2 / 4 + l(l+1) / r^2",
        superpotential: "omega r / 2 - (l+1) / r",
        step_rule: "l -> l + 1",
        energy: "omega (2n + l + 3/2)",
        theta_form: None,
        constraints: "omega > 0; l >= 0",
    },
    FamilyDefinition {
        tag: FamilyTag::CustomSampled,
        domain: GridKind::FullLine,
        potential: "tabulated, linear interpolation",
        superpotential: "none",
        step_rule: "none",
        energy: "numeric only",
        theta_form: None,
        constraints: "samples match their grid",
    },
];

pub fn lookup(tag: FamilyTag) -> &'static FamilyDefinition {
    DEFINITIONS
        .iter()
        .find(|d| d.tag == tag)
        .expect("every tag has a definition")
}

pub fn lookup_name(name: &str) -> Result<&'static FamilyDefinition> {
    Ok(lookup(name.parse()?))
}

/// Parameters at which the catalog is checked against the oracle.
pub fn reference_families() -> Vec<PotentialFamily> {
    vec![
        PotentialFamily::PoschlTellerI { ell: 3.0 },
        PotentialFamily::RosenMorseII {
            ell: 3.0,
            gamma: 1.0,
        },
        PotentialFamily::PoschlTellerII {
            ell: 6.0,
            alpha: 2.0,
        },
        PotentialFamily::RadialCoulomb {
            strength: 2.0,
            ell: 0.0,
        },
        PotentialFamily::RadialOscillator {
            omega: 2.0,
            ell: 0.0,
        },
    ]
}

fn sech2(z: f64) -> f64 {
    let s = 1.0 / z.cosh();
    s * s
}

fn csch2(z: f64) -> f64 {
    let s = 1.0 / z.sinh();
    s * s
}

impl PotentialFamily {
    pub fn definition(&self) -> &'static FamilyDefinition {
        lookup(self.tag())
    }

    /// Closed-form value at `z` (or `r`).
    pub fn value(&self, z: f64) -> f64 {
        match self {
            Self::PoschlTellerI { ell } => -ell * (ell + 1.0) * sech2(z),
            Self::RosenMorseII { ell, gamma } => -ell * (ell + 1.0) * sech2(z) - gamma * z.tanh(),
            Self::PoschlTellerII { ell, alpha } => {
                -ell * (ell + 1.0) * sech2(z) + alpha * (alpha - 1.0) * csch2(z)
            }
            Self::RadialCoulomb { strength, ell } => -strength / z + ell * (ell + 1.0) / (z * z),
            Self::RadialOscillator { omega, ell } => {
                0.25 * omega * omega * z * z + ell * (ell + 1.0) / (z * z)
            }
            Self::CustomSampled(s) => s.interpolate(z),
        }
    }

    pub fn check_domain(&self, grid: &Grid1D) -> Result<()> {
        let kind = grid.kind();
        let mismatch = |reason: &str| Error::DomainMismatch {
            family: self.tag().name(),
            kind,
            reason: reason.to_string(),
        };
        match self {
            Self::PoschlTellerI { .. } | Self::RosenMorseII { .. } => match kind {
                GridKind::FullLine | GridKind::HalfLine => Ok(()),
                _ => Err(mismatch("defined in the mapped coordinate z")),
            },
            Self::PoschlTellerII { .. } => match kind {
                GridKind::HalfLine => Ok(()),
                _ => Err(mismatch(
                    "csch^2 z is singular at z = 0; use a half-line grid",
                )),
            },
            Self::RadialCoulomb { .. } | Self::RadialOscillator { .. } => match kind {
                GridKind::Radial => Ok(()),
                _ => Err(mismatch("radial potentials need a radial grid")),
            },
            Self::CustomSampled(s) => {
                if s.grid().kind() != kind {
                    Err(mismatch("tabulated on a grid of a different kind"))
                } else if !(s.covers(grid.z_min()) && s.covers(grid.z_max())) {
                    Err(mismatch("grid extends beyond the tabulated range"))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub(crate) fn check_ladder_params(&self) -> Result<()> {
        match self {
            Self::PoschlTellerI { ell }
            | Self::RosenMorseII { ell, .. }
            | Self::PoschlTellerII { ell, .. } => {
                if !(*ell > 0.0) {
                    return Err(Error::InvalidParameter {
                        name: "ell",
                        value: *ell,
                        reason: "angular families need ell > 0".into(),
                    });
                }
                Ok(())
            }
            Self::RadialCoulomb { .. } | Self::RadialOscillator { .. } => Ok(()),
            Self::CustomSampled(_) => Err(Error::UnsupportedFamily(self.tag().name())),
        }
    }

    /// Superpotential of the `n`-th step of the shape-invariance chain, whose
    /// ground state is level `n` of this family.
    pub fn step_superpotential(&self, n: usize) -> Option<ClosedFormW> {
        let n = n as f64;
        match *self {
            Self::PoschlTellerI { ell } => Some(ClosedFormW::tanh(ell - n, 0.0)),
            Self::RosenMorseII { ell, gamma } => {
                let k = ell - n;
                (k > 0.0).then(|| ClosedFormW::tanh(k, -gamma / (2.0 * k)))
            }
            Self::PoschlTellerII { ell, alpha } => Some(ClosedFormW {
                tanh: ell - n,
                coth: -(alpha + n),
                ..Default::default()
            }),
            Self::RadialCoulomb { strength, ell } => {
                let k = ell + n + 1.0;
                Some(ClosedFormW {
                    constant: strength / (2.0 * k),
                    inverse: -k,
                    ..Default::default()
                })
            }
            Self::RadialOscillator { omega, ell } => Some(ClosedFormW {
                linear: 0.5 * omega,
                inverse: -(ell + n + 1.0),
                ..Default::default()
            }),
            Self::CustomSampled(_) => None,
        }
    }

    /// `W0`, solving `W^2 - W' = V - E0`.
    pub fn superpotential(&self) -> Option<Superpotential> {
        self.step_superpotential(0)
            .map(|w| Superpotential::closed(w, self.definition().domain))
    }

    pub fn ladder_energy(&self, n: usize) -> Option<f64> {
        let nf = n as f64;
        match *self {
            Self::PoschlTellerI { ell } => Some(-(ell - nf).powi(2)),
            Self::RosenMorseII { ell, gamma } => {
                let k2 = (ell - nf).powi(2);
                Some(-k2 - gamma * gamma / (4.0 * k2))
            }
            Self::PoschlTellerII { ell, alpha } => Some(-(ell - alpha - 2.0 * nf).powi(2)),
            Self::RadialCoulomb { strength, ell } => {
                Some(-strength * strength / (4.0 * (nf + ell + 1.0).powi(2)))
            }
            Self::RadialOscillator { omega, ell } => Some(omega * (2.0 * nf + ell + 1.5)),
            Self::CustomSampled(_) => None,
        }
    }

    /// Smallest limit of the potential over the open (infinite) ends of its
    /// domain; `+inf` when the spectrum is purely discrete.
    pub fn continuum_threshold(&self) -> f64 {
        match *self {
            Self::PoschlTellerI { .. }
            | Self::PoschlTellerII { .. }
            | Self::RadialCoulomb { .. } => 0.0,
            Self::RosenMorseII { gamma, .. } => -gamma.abs(),
            Self::RadialOscillator { .. } => f64::INFINITY,
            Self::CustomSampled(ref s) => {
                let v = s.samples();
                let upper = v[v.len() - 1];
                if s.grid().lower_end_open() {
                    upper.min(v[0])
                } else {
                    upper
                }
            }
        }
    }

    /// Bound-state criterion for ladder level `n`: the step superpotential is
    /// normalizable and the energy lies strictly below the continuum.
    pub fn accepts_level(&self, n: usize) -> bool {
        let (Some(w), Some(e)) = (self.step_superpotential(n), self.ladder_energy(n)) else {
            return false;
        };
        let normalizable = Superpotential::closed(w, self.definition().domain).is_normalizable();
        let threshold = self.continuum_threshold();
        let slack = 1e-12 * threshold.abs().max(1.0);
        normalizable && e < threshold - slack
    }
}

/// The two ΔW shapes of the exact decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnsatzShape {
    /// `ΔW = b`
    Constant,
    /// `ΔW = a coth z`
    Coth,
}

impl AnsatzShape {
    pub fn name(self) -> &'static str {
        match self {
            AnsatzShape::Constant => "constant",
            AnsatzShape::Coth => "coth",
        }
    }

    pub fn with_parameter(self, p: f64) -> ClosedFormW {
        match self {
            AnsatzShape::Constant => ClosedFormW::constant(p),
            AnsatzShape::Coth => ClosedFormW::coth(p),
        }
    }
}

/// Result of identifying a ΔW ansatz on a `poschl_teller_i` base.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Identified {
    pub family: PotentialFamily,
    pub delta_v: DeltaPotential,
    pub delta_eps: f64,
}

/// Maps a closed-form ΔW on the base `W = ell tanh z` to the total family it
/// generates, with the implied `ΔV` and `Δε`.
pub fn identify(delta_w: &ClosedFormW, base_ell: f64) -> Result<Identified> {
    let ClosedFormW {
        tanh,
        coth,
        constant,
        linear,
        inverse,
    } = *delta_w;
    if !(base_ell > 0.0) {
        return Err(Error::InvalidParameter {
            name: "ell",
            value: base_ell,
            reason: "base ell must be positive".into(),
        });
    }
    if tanh != 0.0 || linear != 0.0 || inverse != 0.0 || (coth != 0.0 && constant != 0.0) {
        return Err(Error::UnknownTag(format!(
            "unrecognized ansatz {delta_w:?}; known shapes are b and a coth z"
        )));
    }
    if coth == 0.0 {
        if constant == 0.0 {
            return Ok(Identified {
                family: PotentialFamily::PoschlTellerI { ell: base_ell },
                delta_v: DeltaPotential::Zero,
                delta_eps: 0.0,
            });
        }
        let gamma = -2.0 * base_ell * constant;
        return Ok(Identified {
            family: PotentialFamily::RosenMorseII {
                ell: base_ell,
                gamma,
            },
            delta_v: DeltaPotential::Tanh { coeff: -gamma },
            delta_eps: -constant * constant,
        });
    }
    let alpha = -coth;
    let family = PotentialFamily::poschl_teller_ii(base_ell, Some(alpha), None)?;
    Ok(Identified {
        family,
        delta_v: DeltaPotential::Csch2 {
            coeff: alpha * (alpha - 1.0),
        },
        delta_eps: -alpha * (alpha - 2.0 * base_ell),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::sample_potential;
    use crate::susy::riccati_residual;

    #[test]
    fn lookup_by_name() {
        let d = lookup_name("poschl_teller_i").unwrap();
        assert_eq!(d.superpotential, "l tanh z");
        assert_eq!(d.energy, "-(l - n)^2");
        assert_eq!(
            lookup_name("rosen_morse_ii").unwrap().superpotential,
            "l tanh z - gamma / (2 l)"
        );
        assert_eq!(
            lookup_name("poschl_teller_ii").unwrap().energy,
            "-(l - alpha - 2n)^2"
        );
        assert!(matches!(lookup_name("eckart"), Err(Error::UnknownTag(_))));
    }

    fn grid_for(f: &PotentialFamily) -> Grid1D {
        match f.definition().domain {
            GridKind::FullLine => Grid1D::symmetric(20.0, 0.01).unwrap(),
            GridKind::HalfLine => {
                Grid1D::from_offset(GridKind::HalfLine, 0.01, 20.0, 0.01).unwrap()
            }
            _ => Grid1D::from_offset(GridKind::Radial, 0.01, 40.0, 0.01).unwrap(),
        }
    }

    #[test]
    fn every_family_closes_the_riccati_equation() {
        for f in reference_families() {
            let g = grid_for(&f);
            let v = sample_potential(&f, &g).unwrap();
            let w = f.superpotential().unwrap();
            let r = riccati_residual(&w, &v, f.ladder_energy(0).unwrap(), &g).unwrap();
            assert!(
                r.max_abs_interior <= 1e-8,
                "{:?}: {}",
                f.tag(),
                r.max_abs_interior
            );
        }
    }

    #[test]
    fn identify_constant_gives_rosen_morse() {
        let id = identify(&ClosedFormW::constant(-1.0 / 6.0), 3.0).unwrap();
        assert_eq!(
            id.family,
            PotentialFamily::RosenMorseII {
                ell: 3.0,
                gamma: 1.0
            }
        );
        assert_eq!(id.delta_v, DeltaPotential::Tanh { coeff: -1.0 });
        assert!((id.delta_eps + 1.0 / 36.0).abs() < 1e-15);
    }

    #[test]
    fn identify_coth_gives_poschl_teller_ii() {
        let id = identify(&ClosedFormW::coth(-2.0), 6.0).unwrap();
        assert_eq!(
            id.family,
            PotentialFamily::PoschlTellerII {
                ell: 6.0,
                alpha: 2.0
            }
        );
        assert_eq!(id.delta_v, DeltaPotential::Csch2 { coeff: 2.0 });
        assert_eq!(id.delta_eps, 20.0);
    }

    #[test]
    fn identify_zero_is_unchanged() {
        let id = identify(&ClosedFormW::default(), 2.0).unwrap();
        assert_eq!(id.family, PotentialFamily::PoschlTellerI { ell: 2.0 });
        assert_eq!(id.delta_eps, 0.0);
    }

    #[test]
    fn identify_rejects_other_shapes() {
        assert!(identify(&ClosedFormW::tanh(1.0, 0.5), 2.0).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(
            PotentialFamily::RosenMorseII {
                ell: 3.0,
                gamma: -2.0
            }
            .continuum_threshold(),
            -2.0
        );
        assert!(PotentialFamily::RadialOscillator {
            omega: 1.0,
            ell: 0.0
        }
        .continuum_threshold()
        .is_infinite());
    }
}
