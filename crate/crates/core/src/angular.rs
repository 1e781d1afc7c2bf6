//! The polar equation in `z = ln tan(θ/2)`.
//!
//! Under `θ = 2 arctan(e^z)` the first-derivative term of the polar equation
//! drops out, `sin θ = sech z` and `cos θ = -tanh z`, and `U₂(θ)` enters as
//! `sech²z · U₂(θ(z))`. The result is a one-dimensional problem
//! `-P'' + [ΔV(z) - ℓ(ℓ+1) sech²z] P = -(m² + shift) P`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Grid1D, GridKind};
use crate::potential::{AngularForm, DeltaPotential, SampledPotential};

/// `ln tan(θ/2)` for `θ` strictly inside `(0, π)`.
pub fn theta_to_z(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::InvalidParameter {
            name: "theta",
            value: theta,
            reason: "must lie strictly inside (0, pi)".into(),
        });
    }
    Ok((0.5 * theta).tan().ln())
}

pub fn z_to_theta(z: f64) -> f64 {
    2.0 * z.exp().atan()
}

/// `(sin θ, cos θ)` at `θ(z)`, evaluated as `(sech z, -tanh z)`.
pub fn z_identities(z: f64) -> (f64, f64) {
    (1.0 / z.cosh(), -z.tanh())
}

/// The z-space image of a `U₂(θ)`: the part left in the potential and the
/// constant that moves into the eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngularFragment {
    pub shifted_u2: DeltaPotential,
    pub constant_shift: f64,
    /// `HalfLine` when the problem lives on `z > 0` only.
    pub domain: GridKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngularProblem {
    pub ell: f64,
    pub m: i32,
    pub shifted_u2: DeltaPotential,
    pub constant_shift: f64,
    pub domain: GridKind,
}

impl AngularProblem {
    /// The level of the z-space problem that `ℓ` must reproduce.
    pub fn target_eigenvalue(&self) -> f64 {
        let m = f64::from(self.m);
        -(m * m + self.constant_shift)
    }

    /// `ΔV(z) - ℓ(ℓ+1) sech²z`, without the constant shift.
    pub fn potential(&self, z: f64) -> f64 {
        let s = 1.0 / z.cosh();
        self.shifted_u2.value(z) - self.ell * (self.ell + 1.0) * s * s
    }

    pub fn sample_potential(&self, grid: &Grid1D) -> Result<Vec<f64>> {
        if grid.kind() != self.domain {
            return Err(Error::DomainMismatch {
                family: "angular problem",
                kind: grid.kind(),
                reason: format!("expected a {} grid", self.domain),
            });
        }
        let dv = self.shifted_u2.sample(grid)?;
        Ok(grid
            .points()
            .zip(dv)
            .map(|(z, d)| {
                let s = 1.0 / z.cosh();
                d - self.ell * (self.ell + 1.0) * s * s
            })
            .collect())
    }
}

pub fn transform_u2(form: &AngularForm) -> Result<AngularFragment> {
    match form {
        AngularForm::RingTrig { beta, gamma } => Ok(AngularFragment {
            shifted_u2: tanh_or_zero(-gamma),
            constant_shift: *beta,
            domain: GridKind::FullLine,
        }),
        AngularForm::DoubleTrig { delta, c } => {
            if *c < 0.0 {
                return Err(Error::InvalidParameter {
                    name: "c",
                    value: *c,
                    reason: "needs c = alpha(alpha - 1) with real alpha".into(),
                });
            }
            Ok(AngularFragment {
                shifted_u2: if *c == 0.0 {
                    DeltaPotential::Zero
                } else {
                    DeltaPotential::Csch2 { coeff: *c }
                },
                constant_shift: *delta,
                domain: GridKind::HalfLine,
            })
        }
        AngularForm::Custom(table) => {
            let g = table.grid();
            let (z_lo, z_hi) = (theta_to_z(g.z_min())?, theta_to_z(g.z_max())?);
            let kind = if z_lo > 0.0 {
                GridKind::HalfLine
            } else {
                GridKind::FullLine
            };
            let zg = Grid1D::new(kind, z_lo, z_hi, g.len())?;
            let samples = zg.sample(|z| {
                let (s, _) = z_identities(z);
                s * s * table.interpolate(z_to_theta(z))
            });
            Ok(AngularFragment {
                shifted_u2: DeltaPotential::Sampled(SampledPotential::new(zg, samples)?),
                constant_shift: 0.0,
                domain: kind,
            })
        }
    }
}

fn tanh_or_zero(coeff: f64) -> DeltaPotential {
    if coeff == 0.0 {
        DeltaPotential::Zero
    } else {
        DeltaPotential::Tanh { coeff }
    }
}

/// Inverse of [`transform_u2`]. Shapes without a closed θ-space form come
/// back as a θ-sampled table.
pub fn reconstruct_u2_theta(fragment: &AngularFragment) -> Result<AngularForm> {
    let shift = fragment.constant_shift;
    let half = fragment.domain == GridKind::HalfLine;
    match &fragment.shifted_u2 {
        DeltaPotential::Zero if half => AngularForm::double(shift, 0.0),
        DeltaPotential::Zero => AngularForm::ring(shift, 0.0),
        DeltaPotential::Constant { value } if !half => AngularForm::ring(shift + value, 0.0),
        DeltaPotential::Tanh { coeff } if !half => AngularForm::ring(shift, -coeff),
        DeltaPotential::Csch2 { coeff } => AngularForm::double(shift, *coeff),
        other => {
            let (z_lo, z_hi) = match other {
                DeltaPotential::Sampled(s) => (s.grid().z_min(), s.grid().z_max()),
                _ if half => (crate::grid::DEFAULT_OFFSET, RESAMPLE_EXTENT),
                _ => (-RESAMPLE_EXTENT, RESAMPLE_EXTENT),
            };
            let n = match other {
                DeltaPotential::Sampled(s) => s.grid().len(),
                _ => RESAMPLE_POINTS,
            };
            let tg = Grid1D::new(GridKind::Angular, z_to_theta(z_lo), z_to_theta(z_hi), n)?;
            let samples = tg.sample(|theta| {
                let z = (0.5 * theta).tan().ln();
                let s = theta.sin();
                (other.value(z) + shift) / (s * s)
            });
            AngularForm::custom(SampledPotential::new(tg, samples)?)
        }
    }
}

const RESAMPLE_EXTENT: f64 = 10.0;
const RESAMPLE_POINTS: usize = 1001;

pub fn build_angular_equation(ell: f64, m: i32, form: &AngularForm) -> Result<AngularProblem> {
    if !(ell >= 0.0 && ell.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "ell",
            value: ell,
            reason: "must be finite and non-negative".into(),
        });
    }
    let f = transform_u2(form)?;
    Ok(AngularProblem {
        ell,
        m,
        shifted_u2: f.shifted_u2,
        constant_shift: f.constant_shift,
        domain: f.domain,
    })
}
