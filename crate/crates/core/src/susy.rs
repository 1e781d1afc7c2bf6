//! Superpotentials, the Riccati relation, ground states and the
//! shape-invariance ladder.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Grid1D, GridKind};
use crate::potential::{PotentialFamily, Provenance, SpectrumLevel};
use crate::quadrature;

/// Edge nodes left out of "interior" residual checks.
pub const EDGE_POINTS: usize = 3;

/// Linear combination
/// `tanh·tanh z + coth·coth z + constant + linear·z + inverse/z`.
///
/// Every superpotential of the catalog, and both ansatz shapes of the
/// perturbative decomposition, are of this form.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ClosedFormW {
    pub tanh: f64,
    pub coth: f64,
    pub constant: f64,
    pub linear: f64,
    pub inverse: f64,
}

impl ClosedFormW {
    pub fn tanh(scale: f64, shift: f64) -> Self {
        Self {
            tanh: scale,
            constant: shift,
            ..Self::default()
        }
    }

    pub fn constant(value: f64) -> Self {
        Self {
            constant: value,
            ..Self::default()
        }
    }

    pub fn coth(scale: f64) -> Self {
        Self {
            coth: scale,
            ..Self::default()
        }
    }

    pub fn value(&self, z: f64) -> f64 {
        let mut w = self.constant + self.linear * z;
        if self.tanh != 0.0 {
            w += self.tanh * z.tanh();
        }
        if self.coth != 0.0 {
            w += self.coth / z.tanh();
        }
        if self.inverse != 0.0 {
            w += self.inverse / z;
        }
        w
    }

    pub fn derivative(&self, z: f64) -> f64 {
        let mut d = self.linear;
        if self.tanh != 0.0 {
            let s = 1.0 / z.cosh();
            d += self.tanh * s * s;
        }
        if self.coth != 0.0 {
            let s = 1.0 / z.sinh();
            d -= self.coth * s * s;
        }
        if self.inverse != 0.0 {
            d -= self.inverse / (z * z);
        }
        d
    }

    fn singular_at_origin(&self) -> bool {
        self.coth != 0.0 || self.inverse != 0.0
    }

    /// Limits at the upper and lower ends of a domain of the given kind.
    fn limits(&self, domain: GridKind) -> (f64, f64) {
        let upper = if self.linear != 0.0 {
            f64::INFINITY.copysign(self.linear)
        } else {
            self.tanh + self.coth + self.constant
        };
        let lower = match domain {
            GridKind::FullLine => {
                if self.linear != 0.0 {
                    f64::INFINITY.copysign(-self.linear)
                } else {
                    -self.tanh - self.coth + self.constant
                }
            }
            _ => {
                let pole = self.coth + self.inverse;
                if pole != 0.0 {
                    f64::INFINITY.copysign(pole)
                } else {
                    self.constant
                }
            }
        };
        (upper, lower)
    }
}

impl std::ops::Add for ClosedFormW {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            tanh: self.tanh + o.tanh,
            coth: self.coth + o.coth,
            constant: self.constant + o.constant,
            linear: self.linear + o.linear,
            inverse: self.inverse + o.inverse,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum SuperpotentialForm {
    Closed(ClosedFormW),
    Sampled {
        #[serde(skip)]
        grid: Grid1D,
        samples: Vec<f64>,
    },
}

/// A superpotential `W` together with its limits at both ends of its domain.
///
/// `asymptotic_plus` is the limit towards the upper end, `asymptotic_minus`
/// towards the lower end (`-inf` on the full line, the wall on a half line).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Superpotential {
    pub form: SuperpotentialForm,
    pub domain: GridKind,
    pub asymptotic_plus: f64,
    pub asymptotic_minus: f64,
}

impl Superpotential {
    pub fn closed(w: ClosedFormW, domain: GridKind) -> Self {
        let (plus, minus) = w.limits(domain);
        Self {
            form: SuperpotentialForm::Closed(w),
            domain,
            asymptotic_plus: plus,
            asymptotic_minus: minus,
        }
    }

    /// Grid-sampled superpotential; the limits are read off the end samples.
    pub fn sampled(grid: Grid1D, samples: Vec<f64>) -> Result<Self> {
        grid.check_len(&samples)?;
        let plus = *samples.last().expect("grid has at least 16 points");
        let minus = samples[0];
        Ok(Self {
            domain: grid.kind(),
            form: SuperpotentialForm::Sampled { grid, samples },
            asymptotic_plus: plus,
            asymptotic_minus: minus,
        })
    }

    pub fn zero(domain: GridKind) -> Self {
        Self::closed(ClosedFormW::default(), domain)
    }

    pub fn closed_form(&self) -> Option<&ClosedFormW> {
        match &self.form {
            SuperpotentialForm::Closed(w) => Some(w),
            SuperpotentialForm::Sampled { .. } => None,
        }
    }

    /// Checks the sign conditions for `exp(-∫W)` to be square integrable and
    /// to vanish at a wall. Returns the offending end on failure.
    pub fn check_normalizable(&self) -> Result<()> {
        if !(self.asymptotic_plus > 0.0) {
            return Err(Error::NotNormalizable {
                end: "upper",
                limit: self.asymptotic_plus,
            });
        }
        let lower_ok = match (&self.form, self.domain) {
            (_, GridKind::FullLine) => self.asymptotic_minus < 0.0,
            // at a wall the state must vanish, so W has to diverge to -inf
            (SuperpotentialForm::Closed(_), _) => self.asymptotic_minus == f64::NEG_INFINITY,
            (SuperpotentialForm::Sampled { .. }, _) => self.asymptotic_minus < 0.0,
        };
        if !lower_ok {
            return Err(Error::NotNormalizable {
                end: "lower",
                limit: self.asymptotic_minus,
            });
        }
        Ok(())
    }

    pub fn is_normalizable(&self) -> bool {
        self.check_normalizable().is_ok()
    }

    fn check_grid(&self, grid: &Grid1D) -> Result<()> {
        match &self.form {
            SuperpotentialForm::Closed(w) => {
                if w.singular_at_origin() && grid.z_min() <= 0.0 {
                    return Err(Error::DomainMismatch {
                        family: "superpotential",
                        kind: grid.kind(),
                        reason: "coth z and 1/z terms need z > 0".into(),
                    });
                }
                Ok(())
            }
            SuperpotentialForm::Sampled { grid: own, .. } => {
                if own != grid {
                    return Err(Error::InvalidGrid(
                        "sampled superpotential lives on a different grid".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// `W` at every node of `grid`.
    pub fn sample(&self, grid: &Grid1D) -> Result<Vec<f64>> {
        self.check_grid(grid)?;
        Ok(match &self.form {
            SuperpotentialForm::Closed(w) => grid.sample(|z| w.value(z)),
            SuperpotentialForm::Sampled { samples, .. } => samples.clone(),
        })
    }

    /// `W'` at every node: analytic for closed forms, central differences
    /// otherwise.
    pub fn sample_derivative(&self, grid: &Grid1D) -> Result<Vec<f64>> {
        self.check_grid(grid)?;
        Ok(match &self.form {
            SuperpotentialForm::Closed(w) => grid.sample(|z| w.derivative(z)),
            SuperpotentialForm::Sampled { samples, .. } => {
                quadrature::derivative(samples, grid.spacing())
            }
        })
    }
}

/// Pointwise Riccati defect `W^2 - W' - V + E0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiccatiResidual {
    pub values: Vec<f64>,
    /// Largest `|defect|` ignoring [`EDGE_POINTS`] nodes at each end.
    pub max_abs_interior: f64,
}

pub fn riccati_residual(
    w: &Superpotential,
    v: &[f64],
    e0: f64,
    grid: &Grid1D,
) -> Result<RiccatiResidual> {
    grid.check_len(v)?;
    let ws = w.sample(grid)?;
    let dws = w.sample_derivative(grid)?;
    let values: Vec<f64> = ws
        .iter()
        .zip(&dws)
        .zip(v)
        .map(|((w, dw), v)| w * w - dw - v + e0)
        .collect();
    let max_abs_interior = interior_max_abs(&values);
    Ok(RiccatiResidual {
        values,
        max_abs_interior,
    })
}

pub(crate) fn interior_max_abs(values: &[f64]) -> f64 {
    let n = values.len();
    if n <= 2 * EDGE_POINTS {
        return quadrature::max_abs(values);
    }
    quadrature::max_abs(&values[EDGE_POINTS..n - EDGE_POINTS])
}

/// `N exp(-∫W)` on the grid with unit L2 norm. The exponent is accumulated
/// with the derivative-corrected trapezoid rule.
pub fn ground_state_wavefunction(w: &Superpotential, grid: &Grid1D) -> Result<Vec<f64>> {
    w.check_normalizable()?;
    let ws = w.sample(grid)?;
    let dws = w.sample_derivative(grid)?;
    let integral = quadrature::cumulative_corrected(&ws, &dws, grid.spacing());
    let peak = integral.iter().copied().fold(f64::INFINITY, f64::min);
    let mut psi: Vec<f64> = integral.iter().map(|s| (peak - s).exp()).collect();
    quadrature::normalize_l2(&mut psi, grid.spacing());
    Ok(psi)
}

/// Supersymmetric partner `W^2 + W'`.
pub fn partner_potential(w: &Superpotential, grid: &Grid1D) -> Result<Vec<f64>> {
    let ws = w.sample(grid)?;
    let dws = w.sample_derivative(grid)?;
    Ok(ws.iter().zip(&dws).map(|(w, dw)| w * w + dw).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderSpectrum {
    pub levels: Vec<SpectrumLevel>,
    /// True when the bound-state criterion stopped the ladder before `n_max`.
    pub pruned: bool,
}

impl LadderSpectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }
}

/// Analytic spectrum from the shape-invariance chain, levels `0..=n_max`
/// that pass the bound-state criterion (normalizable step superpotential and
/// energy strictly below the continuum threshold).
pub fn ladder_spectrum(family: &PotentialFamily, n_max: usize) -> Result<LadderSpectrum> {
    family.check_ladder_params()?;
    let mut levels = Vec::new();
    let mut pruned = false;
    for n in 0..=n_max {
        if !family.accepts_level(n) {
            pruned = true;
            break;
        }
        let energy = family
            .ladder_energy(n)
            .ok_or(Error::UnsupportedFamily(family.tag().name()))?;
        levels.push(SpectrumLevel::new(n, energy, Provenance::AnalyticLadder));
    }
    Ok(LadderSpectrum { levels, pruned })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;

    fn line() -> Grid1D {
        Grid1D::symmetric(20.0, 0.01).unwrap()
    }

    fn sech2(z: f64) -> f64 {
        let s = 1.0 / z.cosh();
        s * s
    }

    #[test]
    fn residual_poschl_teller_ell_two() {
        let g = line();
        let w = Superpotential::closed(ClosedFormW::tanh(2.0, 0.0), GridKind::FullLine);
        let v = g.sample(|z| -6.0 * sech2(z));
        let r = riccati_residual(&w, &v, -4.0, &g).unwrap();
        assert!(r.max_abs_interior <= 1e-10);
    }

    #[test]
    fn residual_rosen_morse() {
        let g = line();
        let w = Superpotential::closed(ClosedFormW::tanh(3.0, -1.0 / 6.0), GridKind::FullLine);
        let v = g.sample(|z| -12.0 * sech2(z) - z.tanh());
        let r = riccati_residual(&w, &v, -9.0 - 1.0 / 36.0, &g).unwrap();
        assert!(r.max_abs_interior <= 1e-10, "{}", r.max_abs_interior);
    }

    #[test]
    fn residual_zero() {
        let g = line();
        let r = riccati_residual(
            &Superpotential::zero(GridKind::FullLine),
            &vec![0.0; g.len()],
            0.0,
            &g,
        )
        .unwrap();
        assert!(r.values.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn residual_grid_mismatch() {
        let g = line();
        let w = Superpotential::zero(GridKind::FullLine);
        assert!(matches!(
            riccati_residual(&w, &[0.0; 10], 0.0, &g),
            Err(Error::LengthMismatch { .. })
        ));
        let other = make_grid(GridKind::FullLine, -1.0, 1.0, 50).unwrap();
        let sampled = Superpotential::sampled(other.clone(), vec![0.0; 50]).unwrap();
        assert!(riccati_residual(&sampled, &vec![0.0; g.len()], 0.0, &g).is_err());
    }

    #[test]
    fn ground_state_of_tanh_is_sech() {
        let g = line();
        let w = Superpotential::closed(ClosedFormW::tanh(1.0, 0.0), GridKind::FullLine);
        let psi = ground_state_wavefunction(&w, &g).unwrap();
        let ratios: Vec<f64> = g.points().zip(&psi).map(|(z, p)| p * z.cosh()).collect();
        let r0 = ratios[ratios.len() / 2];
        assert!((r0 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-8);
        for r in &ratios {
            assert!((r / r0 - 1.0).abs() < 1e-8);
        }
        assert!((quadrature::l2_norm(&psi, g.spacing()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ground_state_of_shifted_tanh_is_normalizable() {
        let g = Grid1D::symmetric(30.0, 0.01).unwrap();
        let w = Superpotential::closed(ClosedFormW::tanh(1.0, -0.5), GridKind::FullLine);
        let psi = ground_state_wavefunction(&w, &g).unwrap();
        assert!(psi.iter().all(|&p| p > 0.0));
        // proportional to sech z e^{z/2}
        let shape: Vec<f64> = g.points().map(|z| (0.5 * z).exp() / z.cosh()).collect();
        let k = psi[g.len() / 2] / shape[g.len() / 2];
        for (p, s) in psi.iter().zip(&shape) {
            assert!((p - k * s).abs() < 1e-8);
        }
        // both tails are small
        assert!(psi[0] < 1e-10 && *psi.last().unwrap() < 1e-5);
    }

    #[test]
    fn non_normalizable_is_rejected() {
        let g = line();
        let w = Superpotential::closed(ClosedFormW::tanh(-1.0, 0.0), GridKind::FullLine);
        assert!(w.asymptotic_plus < 0.0);
        assert!(matches!(
            ground_state_wavefunction(&w, &g),
            Err(Error::NotNormalizable { end: "upper", .. })
        ));
        let w = Superpotential::closed(ClosedFormW::tanh(1.0, 2.0), GridKind::FullLine);
        assert!(matches!(
            ground_state_wavefunction(&w, &g),
            Err(Error::NotNormalizable { end: "lower", .. })
        ));
    }

    #[test]
    fn partner_of_tanh_is_one() {
        let g = line();
        let w = Superpotential::closed(ClosedFormW::tanh(1.0, 0.0), GridKind::FullLine);
        let p = partner_potential(&w, &g).unwrap();
        assert!(p.iter().all(|&x| (x - 1.0).abs() < 1e-14));
        let p0 = partner_potential(&Superpotential::zero(GridKind::FullLine), &g).unwrap();
        assert!(p0.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn asymptotics_of_catalog_forms() {
        let w = Superpotential::closed(ClosedFormW::tanh(3.0, 0.0), GridKind::FullLine);
        assert_eq!((w.asymptotic_plus, w.asymptotic_minus), (3.0, -3.0));
        let osc = ClosedFormW {
            linear: 1.0,
            inverse: -2.0,
            ..Default::default()
        };
        let w = Superpotential::closed(osc, GridKind::Radial);
        assert_eq!(w.asymptotic_plus, f64::INFINITY);
        assert_eq!(w.asymptotic_minus, f64::NEG_INFINITY);
        assert!(w.is_normalizable());
    }
}
