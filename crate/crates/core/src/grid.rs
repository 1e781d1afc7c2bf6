//! Uniform one-dimensional grids.
//!
//! Every ODE, quadrature and eigenvalue routine in the crate works on a
//! [`Grid1D`]. Singular endpoints (the origin of a half line or radial
//! coordinate, the poles of the polar angle) are never part of a grid; they
//! are excluded by a small offset and treated as Dirichlet walls.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest grid the crate accepts.
pub const MIN_POINTS: usize = 16;

/// Default distance kept from singular endpoints.
pub const DEFAULT_OFFSET: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    FullLine,
    HalfLine,
    Radial,
    Angular,
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GridKind::FullLine => "full_line",
            GridKind::HalfLine => "half_line",
            GridKind::Radial => "radial",
            GridKind::Angular => "angular",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid1D {
    kind: GridKind,
    z_min: f64,
    z_max: f64,
    n_points: usize,
    spacing: f64,
}

/// Builds a validated uniform grid with `n_points` nodes including both ends.
pub fn make_grid(kind: GridKind, z_min: f64, z_max: f64, n_points: usize) -> Result<Grid1D> {
    Grid1D::new(kind, z_min, z_max, n_points)
}

impl Grid1D {
    pub fn new(kind: GridKind, z_min: f64, z_max: f64, n_points: usize) -> Result<Self> {
        if n_points < MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "{n_points} points requested, at least {MIN_POINTS} required"
            )));
        }
        if !(z_min.is_finite() && z_max.is_finite()) {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if z_min >= z_max {
            return Err(Error::InvalidGrid(format!(
                "reversed or empty bounds [{z_min}, {z_max}]"
            )));
        }
        match kind {
            GridKind::HalfLine | GridKind::Radial if z_min <= 0.0 => {
                return Err(Error::InvalidGrid(format!(
                    "{kind} grid includes the singular endpoint (z_min = {z_min}); use a positive offset"
                )));
            }
            GridKind::Angular if z_min <= 0.0 || z_max >= PI => {
                return Err(Error::InvalidGrid(format!(
                    "angular grid [{z_min}, {z_max}] must lie strictly inside (0, pi)"
                )));
            }
            _ => {}
        }
        Ok(Self {
            kind,
            z_min,
            z_max,
            n_points,
            spacing: (z_max - z_min) / (n_points - 1) as f64,
        })
    }

    /// Grid on `[-extent, extent]` with the requested spacing (rounded so the
    /// interval is covered exactly).
    pub fn symmetric(extent: f64, spacing: f64) -> Result<Self> {
        let n = points_for(2.0 * extent, spacing);
        Self::new(GridKind::FullLine, -extent, extent, n)
    }

    /// Grid on `[offset, extent]` for a half-line or radial coordinate.
    pub fn from_offset(kind: GridKind, offset: f64, extent: f64, spacing: f64) -> Result<Self> {
        let n = points_for(extent - offset, spacing);
        Self::new(kind, offset, extent, n)
    }

    /// Cell-centred polar grid: `n_cells` cells of equal width between the
    /// faces `theta_lo` and `theta_hi`, nodes at the cell centres.
    pub fn angular_cells(theta_lo: f64, theta_hi: f64, n_cells: usize) -> Result<Self> {
        if !(theta_lo < theta_hi) {
            return Err(Error::InvalidGrid(format!(
                "reversed angular faces [{theta_lo}, {theta_hi}]"
            )));
        }
        let width = (theta_hi - theta_lo) / n_cells as f64;
        Self::new(
            GridKind::Angular,
            theta_lo + 0.5 * width,
            theta_hi - 0.5 * width,
            n_cells,
        )
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn z_min(&self) -> f64 {
        self.z_min
    }

    pub fn z_max(&self) -> f64 {
        self.z_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.z_max
        } else {
            self.z_min + i as f64 * self.spacing
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.point(i))
    }

    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.points().map(f).collect()
    }

    /// True when the nodes are mirror images of each other about z = 0.
    pub fn is_symmetric(&self) -> bool {
        (self.z_min + self.z_max).abs() <= 1e-12 * self.z_max.abs().max(1.0)
    }

    /// Same interval with half the spacing (`2n - 1` nodes, shared endpoints).
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * self.n_points - 1,
            spacing: 0.5 * self.spacing,
            ..self.clone()
        }
    }

    /// Cell-centred refinement: the outer faces stay fixed and every cell is
    /// split in two (`2n` nodes).
    pub fn refined_cells(&self) -> Self {
        let (lo, hi) = self.faces();
        let n_cells = 2 * self.n_points;
        let width = (hi - lo) / n_cells as f64;
        Self {
            z_min: lo + 0.5 * width,
            z_max: hi - 0.5 * width,
            n_points: n_cells,
            spacing: width,
            ..self.clone()
        }
    }

    /// Outer faces of the grid viewed as cell centres.
    pub fn faces(&self) -> (f64, f64) {
        (
            self.z_min - 0.5 * self.spacing,
            self.z_max + 0.5 * self.spacing,
        )
    }

    /// Whether the lower end of the grid stands for an infinite (open) end
    /// rather than a wall at a singular point.
    pub fn lower_end_open(&self) -> bool {
        self.kind == GridKind::FullLine
    }

    /// Whether the upper end of the grid stands for an open end.
    pub fn upper_end_open(&self) -> bool {
        self.kind != GridKind::Angular
    }

    /// Checks that `samples` has one value per node.
    pub fn check_len(&self, samples: &[f64]) -> Result<()> {
        if samples.len() != self.n_points {
            return Err(Error::LengthMismatch {
                expected: self.n_points,
                got: samples.len(),
            });
        }
        Ok(())
    }
}

fn points_for(length: f64, spacing: f64) -> usize {
    (length / spacing).round() as usize + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_line_spacing() {
        let g = make_grid(GridKind::FullLine, -20.0, 20.0, 4001).unwrap();
        assert!((g.spacing() - 0.01).abs() < 1e-15);
        assert_eq!(g.point(0), -20.0);
        assert_eq!(g.point(4000), 20.0);
        assert!(g.is_symmetric());
    }

    #[test]
    fn half_line_rejects_singular_endpoint() {
        let err = make_grid(GridKind::HalfLine, 0.0, 15.0, 1000).unwrap_err();
        assert!(matches!(err, Error::InvalidGrid(msg) if msg.contains("singular")));
        assert!(make_grid(GridKind::Radial, -1.0, 15.0, 1000).is_err());
    }

    #[test]
    fn angular_grid_inside_open_interval() {
        assert!(make_grid(GridKind::Angular, 0.01, PI - 0.01, 2001).is_ok());
        assert!(make_grid(GridKind::Angular, 0.0, PI - 0.01, 2001).is_err());
        assert!(make_grid(GridKind::Angular, 0.01, PI, 2001).is_err());
    }

    #[test]
    fn rejects_small_and_reversed() {
        assert!(make_grid(GridKind::FullLine, -1.0, 1.0, 15).is_err());
        assert!(make_grid(GridKind::FullLine, 1.0, -1.0, 100).is_err());
        assert!(make_grid(GridKind::FullLine, 1.0, 1.0, 100).is_err());
    }

    #[test]
    fn refinement_keeps_endpoints() {
        let g = make_grid(GridKind::Radial, 0.01, 10.0, 101).unwrap();
        let f = g.refined();
        assert_eq!(f.len(), 201);
        assert_eq!(f.z_max(), g.z_max());
        assert!((f.point(2) - g.point(1)).abs() < 1e-14);
    }

    #[test]
    fn angular_cells_touch_the_poles() {
        let g = Grid1D::angular_cells(0.0, PI, 400).unwrap();
        let (lo, hi) = g.faces();
        assert!(lo.abs() < 1e-14 && (hi - PI).abs() < 1e-14);
        let f = g.refined_cells();
        assert_eq!(f.len(), 800);
        let (flo, fhi) = f.faces();
        assert!(flo.abs() < 1e-14 && (fhi - PI).abs() < 1e-14);
    }
}
