//! Decomposition `W_total = W + ΔW` of a superpotential around a solved base.
//!
//! With `χ0 = exp(-∫W)` known, the correction obeys
//! `ΔW² - ΔW' + 2WΔW = ΔV - Δε`. It is either solved exactly by fitting a
//! closed-form ansatz, or expanded in powers of the perturbation,
//! `2WΔW_k - ΔW_k' = ΔV_k - Σ_{j<k} ΔW_j ΔW_{k-j} - Δε_k`, one order at a
//! time. Each order is a linear first-order equation whose solution is
//! `χ0² ΔW_k = -∫ χ0² (rhs_k - Δε_k)`, and `Δε_k` is the value that keeps
//! `ΔW_k` bounded at both ends.

use serde::Serialize;

use crate::catalog::AnsatzShape;
use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::quadrature;
use crate::susy::{self, RiccatiResidual, Superpotential, EDGE_POINTS};

/// Threshold below which an order counts as vanishing.
pub const VANISHING: f64 = 1e-10;

/// Allowed variation of the ansatz residual over the grid, relative to
/// `max(1, max|ΔV|)`.
pub const ANSATZ_TOLERANCE: f64 = 1e-8;

/// Default number of orders when an exact solve falls back to the series.
pub const DEFAULT_ORDERS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderSolution {
    pub delta_w: Vec<f64>,
    pub delta_eps: f64,
    /// `Δε` recomputed with every other node; the difference estimates the
    /// quadrature error.
    pub coarse_delta_eps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesOrder {
    pub k: usize,
    pub delta_w: Vec<f64>,
    pub delta_eps: f64,
    pub max_abs_delta_w: f64,
    pub coarse_delta_eps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbationSeries {
    pub orders: Vec<SeriesOrder>,
    /// Two consecutive orders vanished and no perturbation is left to feed in.
    pub terminated: bool,
    /// Running sums of `Δε_k`.
    pub partial_sums: Vec<f64>,
}

impl PerturbationSeries {
    pub fn total_delta_eps(&self) -> f64 {
        self.partial_sums.last().copied().unwrap_or(0.0)
    }

    /// `Σ_k ΔW_k` pointwise.
    pub fn total_delta_w(&self, len: usize) -> Vec<f64> {
        let mut sum = vec![0.0; len];
        for o in &self.orders {
            sum.iter_mut().zip(&o.delta_w).for_each(|(s, d)| *s += d);
        }
        sum
    }

    /// Highest order with a non-vanishing contribution (0 if none).
    pub fn last_significant_order(&self) -> usize {
        self.orders
            .iter()
            .filter(|o| !vanishes(o))
            .map(|o| o.k)
            .max()
            .unwrap_or(0)
    }
}

fn vanishes(o: &SeriesOrder) -> bool {
    o.max_abs_delta_w < VANISHING && o.delta_eps.abs() < VANISHING
}

/// One order of the hierarchy. `chi0_sq` is the squared ground state of `W`
/// on `grid`; `rhs` is `ΔV_k - Σ_{j<k} ΔW_j ΔW_{k-j}`.
pub fn solve_order(
    w: &Superpotential,
    chi0_sq: &[f64],
    rhs: &[f64],
    grid: &Grid1D,
) -> Result<OrderSolution> {
    grid.check_len(chi0_sq)?;
    grid.check_len(rhs)?;
    let ws = w.sample(grid)?;
    let h = grid.spacing();
    let n = grid.len();

    let weighted: Vec<f64> = chi0_sq.iter().zip(rhs).map(|(c, r)| c * r).collect();
    let norm = quadrature::trapezoid(chi0_sq, h);
    let delta_eps = quadrature::trapezoid(&weighted, h) / norm;
    let coarse_delta_eps = coarse_ratio(&weighted, chi0_sq, h);

    // g = χ² f with f = rhs - Δε; derivatives follow from χ²' = -2Wχ²
    let dws = w.sample_derivative(grid)?;
    let f: Vec<f64> = rhs.iter().map(|r| r - delta_eps).collect();
    let (df, d2f) = quadrature::derivatives4(&f, h);
    let g: Vec<f64> = chi0_sq.iter().zip(&f).map(|(c, f)| c * f).collect();
    let dg: Vec<f64> = (0..n)
        .map(|i| chi0_sq[i] * (df[i] - 2.0 * ws[i] * f[i]))
        .collect();
    let d2g: Vec<f64> = (0..n)
        .map(|i| {
            let wi = ws[i];
            chi0_sq[i] * (d2f[i] - 4.0 * wi * df[i] + (4.0 * wi * wi - 2.0 * dws[i]) * f[i])
        })
        .collect();

    // tails beyond the grid, assuming χ² ~ exp(∓2∫W) and f constant there
    let rate_lo = -2.0 * ws[0];
    let tail_lo = if rate_lo > 0.0 { g[0] / rate_lo } else { 0.0 };
    let rate_hi = 2.0 * ws[n - 1];
    let tail_hi = if rate_hi > 0.0 {
        g[n - 1] / rate_hi
    } else {
        0.0
    };

    // accumulate from each end separately so neither side suffers cancellation
    let cells = quadrature::hermite5_cells(&g, &dg, &d2g, h);
    let mut from_lo = vec![0.0; n];
    let mut from_hi = vec![0.0; n];
    for i in 1..n {
        from_lo[i] = from_lo[i - 1] + cells[i - 1];
        from_hi[n - 1 - i] = from_hi[n - i] + cells[n - 1 - i];
    }
    let total = from_lo[n - 1];
    let peak = chi0_sq
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &c)| {
            if c > best.1 {
                (i, c)
            } else {
                best
            }
        })
        .0;

    // integrate towards the peak from whichever side is closer
    let delta_w: Vec<f64> = (0..n)
        .map(|i| {
            let chi_dw = if i <= peak {
                -(tail_lo + from_lo[i])
            } else {
                from_hi[i] + tail_hi
            };
            chi_dw / chi0_sq[i]
        })
        .collect();

    for (end, idx) in [("lower", 0), ("upper", n - 1)] {
        let v = delta_w[idx];
        if !v.is_finite() {
            return Err(Error::UnboundedCorrection {
                order: 0,
                end,
                magnitude: v.abs(),
            });
        }
    }
    // a leak through the far end means Δε did not close the integral
    let scale: f64 = weighted.iter().map(|x| x.abs()).sum::<f64>() * h;
    let leak = (tail_lo + total + tail_hi).abs();
    if scale > 0.0 && leak > 1e-6 * scale {
        let magnitude = leak / chi0_sq[n - 1].max(f64::MIN_POSITIVE);
        return Err(Error::UnboundedCorrection {
            order: 0,
            end: "upper",
            magnitude,
        });
    }
    Ok(OrderSolution {
        delta_w,
        delta_eps,
        coarse_delta_eps,
    })
}

fn coarse_ratio(weighted: &[f64], chi0_sq: &[f64], h: f64) -> f64 {
    let num: Vec<f64> = weighted.iter().step_by(2).copied().collect();
    let den: Vec<f64> = chi0_sq.iter().step_by(2).copied().collect();
    quadrature::trapezoid(&num, 2.0 * h) / quadrature::trapezoid(&den, 2.0 * h)
}

/// Runs orders `1..=k_max`. `delta_v_by_order[k-1]` is `ΔV_k`; missing
/// orders are zero. Stops early once two consecutive orders vanish and no
/// further `ΔV_k` remains.
pub fn run_series(
    w: &Superpotential,
    chi0: &[f64],
    delta_v_by_order: &[Vec<f64>],
    k_max: usize,
    grid: &Grid1D,
) -> Result<PerturbationSeries> {
    grid.check_len(chi0)?;
    for dv in delta_v_by_order {
        grid.check_len(dv)?;
    }
    let n = grid.len();
    let chi0_sq: Vec<f64> = chi0.iter().map(|c| c * c).collect();
    let mut orders: Vec<SeriesOrder> = Vec::new();
    let mut partial_sums = Vec::new();
    let mut terminated = false;
    let mut sum = 0.0;
    for k in 1..=k_max {
        let mut rhs = delta_v_by_order
            .get(k - 1)
            .cloned()
            .unwrap_or_else(|| vec![0.0; n]);
        for j in 1..k {
            let (a, b) = (&orders[j - 1].delta_w, &orders[k - j - 1].delta_w);
            rhs.iter_mut()
                .zip(a.iter().zip(b))
                .for_each(|(r, (x, y))| *r -= x * y);
        }
        let sol = solve_order(w, &chi0_sq, &rhs, grid).map_err(|e| match e {
            Error::UnboundedCorrection { end, magnitude, .. } => Error::UnboundedCorrection {
                order: k,
                end,
                magnitude,
            },
            other => other,
        })?;
        sum += sol.delta_eps;
        partial_sums.push(sum);
        orders.push(SeriesOrder {
            k,
            max_abs_delta_w: susy::interior_max_abs(&sol.delta_w),
            delta_w: sol.delta_w,
            delta_eps: sol.delta_eps,
            coarse_delta_eps: sol.coarse_delta_eps,
        });
        let quiet = orders.len() >= 2 && orders[orders.len() - 2..].iter().all(vanishes);
        if quiet && delta_v_by_order.len() <= k {
            terminated = true;
            break;
        }
    }
    Ok(PerturbationSeries {
        orders,
        terminated,
        partial_sums,
    })
}

/// Riccati defect of the summed superpotential,
/// `(W + ΣΔW)² - (W + ΣΔW)' - (V - ε0 - ΣΔε)`, with `V` the full potential.
pub fn backbone_residual(
    w: &Superpotential,
    series: &PerturbationSeries,
    v_total: &[f64],
    eps0: f64,
    grid: &Grid1D,
) -> Result<RiccatiResidual> {
    grid.check_len(v_total)?;
    let dw_sum = series.total_delta_w(grid.len());
    backbone_defect(w, &dw_sum, series.total_delta_eps(), v_total, eps0, grid)
}

fn backbone_defect(
    w: &Superpotential,
    dw_sum: &[f64],
    delta_eps: f64,
    v_total: &[f64],
    eps0: f64,
    grid: &Grid1D,
) -> Result<RiccatiResidual> {
    let ws = w.sample(grid)?;
    let dws = w.sample_derivative(grid)?;
    let d_dw = quadrature::derivative(dw_sum, grid.spacing());
    let values: Vec<f64> = (0..grid.len())
        .map(|i| {
            let wt = ws[i] + dw_sum[i];
            wt * wt - (dws[i] + d_dw[i]) - (v_total[i] - eps0 - delta_eps)
        })
        .collect();
    let max_abs_interior = susy::interior_max_abs(&values);
    Ok(RiccatiResidual {
        values,
        max_abs_interior,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactDelta {
    pub delta_w: Vec<f64>,
    pub delta_eps: f64,
    pub ansatz: Option<AnsatzShape>,
    /// Fitted `b` (constant) or `a` (coth) when an ansatz was used.
    pub parameter: Option<f64>,
    /// Present when no ansatz was given and the series was summed instead.
    pub series: Option<PerturbationSeries>,
}

/// Solves `ΔW² - ΔW' + 2WΔW = ΔV - Δε` on the grid.
///
/// With an ansatz its parameter is fitted so that the left side minus `ΔV`
/// is constant; that constant is `-Δε`. Without one the perturbation series
/// is summed.
pub fn solve_exact_delta(
    w: &Superpotential,
    delta_v: &[f64],
    grid: &Grid1D,
    ansatz: Option<AnsatzShape>,
) -> Result<ExactDelta> {
    grid.check_len(delta_v)?;
    let Some(shape) = ansatz else {
        let chi0 = susy::ground_state_wavefunction(w, grid)?;
        let series = run_series(w, &chi0, &[delta_v.to_vec()], DEFAULT_ORDERS, grid)?;
        return Ok(ExactDelta {
            delta_w: series.total_delta_w(grid.len()),
            delta_eps: series.total_delta_eps(),
            ansatz: None,
            parameter: None,
            series: Some(series),
        });
    };
    let ws = w.sample(grid)?;
    let range = interior(grid.len());
    let parameter = match shape {
        AnsatzShape::Constant => fit_constant(&ws[range.clone()], &delta_v[range.clone()]),
        AnsatzShape::Coth => {
            if grid.z_min() <= 0.0 {
                return Err(Error::DomainMismatch {
                    family: "coth ansatz",
                    kind: grid.kind(),
                    reason: "coth z is singular at z = 0".into(),
                });
            }
            let zs: Vec<f64> = grid.points().collect();
            fit_coth(
                &zs[range.clone()],
                &ws[range.clone()],
                &delta_v[range.clone()],
            )
        }
    };
    let dw = shape.with_parameter(parameter);
    let residual: Vec<f64> = grid
        .points()
        .zip(&ws)
        .zip(delta_v)
        .map(|((z, w), dv)| {
            let d = dw.value(z);
            d * d - dw.derivative(z) + 2.0 * w * d - dv
        })
        .collect();
    let inner = &residual[range];
    let mean = inner.iter().sum::<f64>() / inner.len() as f64;
    let spread = inner.iter().fold(0.0_f64, |m, r| m.max((r - mean).abs()));
    let scale = quadrature::max_abs(delta_v).max(1.0);
    if spread > ANSATZ_TOLERANCE * scale {
        return Err(Error::NotExactlySolvable {
            ansatz: shape.name(),
            spread,
            residual,
        });
    }
    Ok(ExactDelta {
        delta_w: grid.sample(|z| dw.value(z)),
        delta_eps: -mean,
        ansatz: Some(shape),
        parameter: Some(parameter),
        series: None,
    })
}

fn interior(n: usize) -> std::ops::Range<usize> {
    if n > 2 * EDGE_POINTS {
        EDGE_POINTS..n - EDGE_POINTS
    } else {
        0..n
    }
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

fn cov(x: &[f64], y: &[f64]) -> f64 {
    let (mx, my) = (mean(x), mean(y));
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - mx) * (b - my))
        .sum::<f64>()
        / x.len() as f64
}

/// `b` minimizing the variance of `b² + 2bW - ΔV`.
fn fit_constant(ws: &[f64], dv: &[f64]) -> f64 {
    let var_w = cov(ws, ws);
    if var_w <= 0.0 {
        return 0.0;
    }
    cov(ws, dv) / (2.0 * var_w)
}

/// `a` minimizing the variance of `a² coth² + a (csch² + 2W coth) - ΔV`.
fn fit_coth(zs: &[f64], ws: &[f64], dv: &[f64]) -> f64 {
    let x: Vec<f64> = zs.iter().map(|z| (1.0 / z.tanh()).powi(2)).collect();
    let y: Vec<f64> = zs
        .iter()
        .zip(ws)
        .map(|(z, w)| (1.0 / z.sinh()).powi(2) + 2.0 * w / z.tanh())
        .collect();
    let (vxx, vxy, vyy) = (cov(&x, &x), cov(&x, &y), cov(&y, &y));
    let (vxz, vyz) = (cov(&x, dv), cov(&y, dv));
    let variance = |a: f64| {
        let r: Vec<f64> = x
            .iter()
            .zip(&y)
            .zip(dv)
            .map(|((x, y), z)| a * a * x + a * y - z)
            .collect();
        cov(&r, &r)
    };
    // stationary points of the quartic variance; two exact fits can exist,
    // and only a < 0 keeps exp(-∫ΔW) regular at z = 0
    let mut fits: Vec<(f64, f64)> = real_cubic_roots(2.0 * vxx, 3.0 * vxy, vyy - 2.0 * vxz, -vyz)
        .into_iter()
        .map(|a| (a, variance(a)))
        .collect();
    fits.sort_by(|p, q| p.1.total_cmp(&q.1));
    let best = fits.first().map_or(0.0, |f| f.1);
    let level = (ANSATZ_TOLERANCE * ANSATZ_TOLERANCE).max(best);
    fits.iter()
        .filter(|f| f.1 <= level && f.0 < 0.0)
        .map(|f| f.0)
        .next()
        .unwrap_or_else(|| fits.first().map_or(0.0, |f| f.0))
}

/// Real roots of `c3 x³ + c2 x² + c1 x + c0`, each polished by Newton steps.
fn real_cubic_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> Vec<f64> {
    let poly = |x: f64| ((c3 * x + c2) * x + c1) * x + c0;
    let dpoly = |x: f64| (3.0 * c3 * x + 2.0 * c2) * x + c1;
    let mut roots = Vec::new();
    if c3.abs() < 1e-300 {
        if c2.abs() > 0.0 {
            let disc = c1 * c1 - 4.0 * c2 * c0;
            if disc >= 0.0 {
                roots.push((-c1 + disc.sqrt()) / (2.0 * c2));
                roots.push((-c1 - disc.sqrt()) / (2.0 * c2));
            }
        } else if c1 != 0.0 {
            roots.push(-c0 / c1);
        }
    } else {
        // depressed cubic t³ + p t + q with x = t - b/3
        let (b, c, d) = (c2 / c3, c1 / c3, c0 / c3);
        let p = c - b * b / 3.0;
        let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
        let disc = q * q / 4.0 + p * p * p / 27.0;
        if disc > 0.0 {
            let s = disc.sqrt();
            roots.push((-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt() - b / 3.0);
        } else if p == 0.0 {
            roots.push(-b / 3.0);
        } else {
            let r = (-p / 3.0).sqrt();
            let phi = (-q / (2.0 * r * r * r)).clamp(-1.0, 1.0).acos();
            for k in 0..3 {
                let t = 2.0 * r * ((phi - 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos();
                roots.push(t - b / 3.0);
            }
        }
    }
    roots
        .into_iter()
        .map(|mut x| {
            for _ in 0..3 {
                let d = dpoly(x);
                if d != 0.0 {
                    x -= poly(x) / d;
                }
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridKind;
    use crate::susy::ClosedFormW;

    fn line() -> Grid1D {
        Grid1D::symmetric(20.0, 0.01).unwrap()
    }

    fn tanh_w(ell: f64) -> Superpotential {
        Superpotential::closed(ClosedFormW::tanh(ell, 0.0), GridKind::FullLine)
    }

    #[test]
    fn constant_ansatz_on_ell_two() {
        let g = line();
        let dv = g.sample(|z| -z.tanh());
        let r = solve_exact_delta(&tanh_w(2.0), &dv, &g, Some(AnsatzShape::Constant)).unwrap();
        assert!((r.parameter.unwrap() + 0.25).abs() < 1e-12);
        assert!((r.delta_eps + 1.0 / 16.0).abs() < 1e-12);
        assert!(r.delta_w.iter().all(|d| (d + 0.25).abs() < 1e-12));
    }

    #[test]
    fn coth_ansatz_on_ell_six() {
        let g = Grid1D::from_offset(GridKind::HalfLine, 0.01, 20.0, 0.01).unwrap();
        let dv = g.sample(|z| 2.0 / z.sinh().powi(2));
        let r = solve_exact_delta(&tanh_w(6.0), &dv, &g, Some(AnsatzShape::Coth)).unwrap();
        assert!(
            (r.parameter.unwrap() + 2.0).abs() < 1e-8,
            "{:?}",
            r.parameter
        );
        assert!((r.delta_eps - 20.0).abs() < 1e-8, "{}", r.delta_eps);
    }

    #[test]
    fn zero_perturbation() {
        let g = line();
        let dv = vec![0.0; g.len()];
        for shape in [None, Some(AnsatzShape::Constant)] {
            let r = solve_exact_delta(&tanh_w(2.0), &dv, &g, shape).unwrap();
            assert_eq!(r.delta_eps, 0.0);
            assert!(r.delta_w.iter().all(|d| *d == 0.0));
        }
    }

    #[test]
    fn wrong_ansatz_is_reported() {
        let g = line();
        let dv = g.sample(|z| 1.0 / z.cosh().powi(2));
        let err =
            solve_exact_delta(&tanh_w(2.0), &dv, &g, Some(AnsatzShape::Constant)).unwrap_err();
        match err {
            Error::NotExactlySolvable {
                spread, residual, ..
            } => {
                assert!(spread > 1e-3);
                assert_eq!(residual.len(), g.len());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn first_order_rosen_morse() {
        let g = line();
        let w = tanh_w(3.0);
        let chi = susy::ground_state_wavefunction(&w, &g).unwrap();
        let chi_sq: Vec<f64> = chi.iter().map(|c| c * c).collect();
        let rhs = g.sample(|z| -z.tanh());
        let o = solve_order(&w, &chi_sq, &rhs, &g).unwrap();
        assert!(o.delta_eps.abs() < 1e-10);
        for d in &o.delta_w[EDGE_POINTS..g.len() - EDGE_POINTS] {
            assert!((d + 1.0 / 6.0).abs() < 1e-8, "{d}");
        }
        // second order: rhs = -ΔW1²
        let rhs2: Vec<f64> = o.delta_w.iter().map(|d| -d * d).collect();
        let o2 = solve_order(&w, &chi_sq, &rhs2, &g).unwrap();
        assert!((o2.delta_eps + 1.0 / 36.0).abs() < 1e-10);
        assert!(susy::interior_max_abs(&o2.delta_w) < 1e-8);
    }

    #[test]
    fn constant_perturbation_shifts_energy() {
        let g = line();
        let w = tanh_w(2.0);
        let chi = susy::ground_state_wavefunction(&w, &g).unwrap();
        let chi_sq: Vec<f64> = chi.iter().map(|c| c * c).collect();
        let o = solve_order(&w, &chi_sq, &vec![0.7; g.len()], &g).unwrap();
        assert!((o.delta_eps - 0.7).abs() < 1e-12);
        assert!(quadrature::max_abs(&o.delta_w) < 1e-10);
    }

    #[test]
    fn sech2_first_order_on_ell_one() {
        // <sech^2> over sech^2: ∫sech^4 / ∫sech^2 = (4/3) / 2
        let g = line();
        let w = tanh_w(1.0);
        let chi = susy::ground_state_wavefunction(&w, &g).unwrap();
        let dv = g.sample(|z| 1.0 / z.cosh().powi(2));
        let s = run_series(&w, &chi, &[dv], 1, &g).unwrap();
        assert!((s.orders[0].delta_eps - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn series_terminates_for_rosen_morse() {
        let g = line();
        let w = tanh_w(3.0);
        let chi = susy::ground_state_wavefunction(&w, &g).unwrap();
        let dv = g.sample(|z| -z.tanh());
        let s = run_series(&w, &chi, &[dv], 5, &g).unwrap();
        assert!(
            s.terminated,
            "{:?}",
            s.orders
                .iter()
                .map(|o| (o.delta_eps, o.max_abs_delta_w))
                .collect::<Vec<_>>()
        );
        assert_eq!(s.last_significant_order(), 2);
        assert!((s.total_delta_eps() + 1.0 / 36.0).abs() < 1e-10);
        let v = g.sample(|z| -12.0 / z.cosh().powi(2) - z.tanh());
        let r = backbone_residual(&w, &s, &v, -9.0, &g).unwrap();
        assert!(r.max_abs_interior < 1e-6, "{}", r.max_abs_interior);
    }

    #[test]
    fn empty_perturbation_terminates_immediately() {
        let g = line();
        let w = tanh_w(2.0);
        let chi = susy::ground_state_wavefunction(&w, &g).unwrap();
        let s = run_series(&w, &chi, &[vec![0.0; g.len()]], 6, &g).unwrap();
        assert!(s.terminated);
        assert_eq!(s.orders.len(), 2);
        assert_eq!(s.last_significant_order(), 0);
    }

    #[test]
    fn cubic_roots() {
        let mut r = real_cubic_roots(1.0, -6.0, 11.0, -6.0);
        r.sort_by(f64::total_cmp);
        for (x, e) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - e).abs() < 1e-12);
        }
        let r = real_cubic_roots(2.0, 0.0, 0.0, -16.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 2.0).abs() < 1e-12);
    }
}
