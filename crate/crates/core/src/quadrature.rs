//! Trapezoid-family quadrature and finite differences on uniform grids.

/// Composite trapezoid rule.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => {
            let inner: f64 = values[1..n - 1].iter().sum();
            h * (inner + 0.5 * (values[0] + values[n - 1]))
        }
    }
}

/// Running integral from the first node using the trapezoid rule with the
/// endpoint derivative correction on every panel,
/// `h/2 (f_i + f_{i+1}) - h^2/12 (f'_{i+1} - f'_i)`, which is fourth order.
pub fn cumulative_corrected(values: &[f64], derivs: &[f64], h: f64) -> Vec<f64> {
    debug_assert_eq!(values.len(), derivs.len());
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    out.push(acc);
    for i in 1..values.len() {
        acc += 0.5 * h * (values[i - 1] + values[i]) - h * h / 12.0 * (derivs[i] - derivs[i - 1]);
        out.push(acc);
    }
    out
}

/// Second-order central differences, one-sided second-order stencils at the
/// ends.
/// Cell integrals from quintic Hermite interpolation, using first and second
/// derivatives at the nodes. Entry `i` covers `[x_i, x_{i+1}]`.
pub fn hermite5_cells(values: &[f64], d1: &[f64], d2: &[f64], h: f64) -> Vec<f64> {
    debug_assert_eq!(values.len(), d1.len());
    debug_assert_eq!(values.len(), d2.len());
    (1..values.len())
        .map(|i| {
            0.5 * h * (values[i - 1] + values[i])
                + h * h / 10.0 * (d1[i - 1] - d1[i])
                + h * h * h / 120.0 * (d2[i - 1] + d2[i])
        })
        .collect()
}

/// Fourth-order first and second derivatives of uniformly spaced samples;
/// five-point one-sided stencils at the two nodes nearest each end.
pub fn derivatives4(values: &[f64], h: f64) -> (Vec<f64>, Vec<f64>) {
    let n = values.len();
    if n < 6 {
        let d1 = derivative(values, h);
        let d2 = derivative(&d1, h);
        return (d1, d2);
    }
    let f = |i: usize| values[i];
    let mut d1 = vec![0.0; n];
    let mut d2 = vec![0.0; n];
    for i in 2..n - 2 {
        d1[i] = (f(i - 2) - 8.0 * f(i - 1) + 8.0 * f(i + 1) - f(i + 2)) / (12.0 * h);
        d2[i] = (-f(i - 2) + 16.0 * f(i - 1) - 30.0 * f(i) + 16.0 * f(i + 1) - f(i + 2))
            / (12.0 * h * h);
    }
    // forward stencils on 6 points, mirrored at the upper end
    let one_sided = |g: &dyn Fn(usize) -> f64, j: usize| -> (f64, f64) {
        match j {
            0 => (
                (-25.0 * g(0) + 48.0 * g(1) - 36.0 * g(2) + 16.0 * g(3) - 3.0 * g(4)) / (12.0 * h),
                (45.0 * g(0) - 154.0 * g(1) + 214.0 * g(2) - 156.0 * g(3) + 61.0 * g(4)
                    - 10.0 * g(5))
                    / (12.0 * h * h),
            ),
            _ => (
                (-3.0 * g(0) - 10.0 * g(1) + 18.0 * g(2) - 6.0 * g(3) + g(4)) / (12.0 * h),
                (10.0 * g(0) - 15.0 * g(1) - 4.0 * g(2) + 14.0 * g(3) - 6.0 * g(4) + g(5))
                    / (12.0 * h * h),
            ),
        }
    };
    let lo = |k: usize| values[k];
    let hi = |k: usize| values[n - 1 - k];
    for j in 0..2 {
        let (a, b) = one_sided(&lo, j);
        d1[j] = a;
        d2[j] = b;
        let (a, b) = one_sided(&hi, j);
        d1[n - 1 - j] = -a;
        d2[n - 1 - j] = b;
    }
    (d1, d2)
}

pub fn derivative(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    if n < 3 {
        return vec![0.0; n];
    }
    let mut d = Vec::with_capacity(n);
    d.push((-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h));
    for i in 1..n - 1 {
        d.push((values[i + 1] - values[i - 1]) / (2.0 * h));
    }
    d.push((3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h));
    d
}

/// Scales `values` in place to unit L2 norm under the trapezoid rule and
/// returns the norm it had.
pub fn normalize_l2(values: &mut [f64], h: f64) -> f64 {
    let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
    let norm = trapezoid(&sq, h).sqrt();
    if norm > 0.0 {
        values.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

pub fn l2_norm(values: &[f64], h: f64) -> f64 {
    let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
    trapezoid(&sq, h).sqrt()
}

pub fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite5_integrates_exponential() {
        let h = 0.01;
        let xs: Vec<f64> = (0..=500).map(|i| i as f64 * h).collect();
        let f: Vec<f64> = xs.iter().map(|x| (-6.0 * x).exp()).collect();
        let d1: Vec<f64> = f.iter().map(|v| -6.0 * v).collect();
        let d2: Vec<f64> = f.iter().map(|v| 36.0 * v).collect();
        let total: f64 = hermite5_cells(&f, &d1, &d2, h).iter().sum();
        let exact = (1.0 - (-30.0_f64).exp()) / 6.0;
        assert!((total - exact).abs() < 1e-12);
    }

    #[test]
    fn fourth_order_derivatives_of_quartic() {
        let h = 0.1;
        let f: Vec<f64> = (0..20).map(|i| (i as f64 * h).powi(4)).collect();
        let (d1, d2) = derivatives4(&f, h);
        for (i, (a, b)) in d1.iter().zip(&d2).enumerate() {
            let x = i as f64 * h;
            assert!((a - 4.0 * x.powi(3)).abs() < 1e-10, "{i}");
            assert!((b - 12.0 * x * x).abs() < 1e-8, "{i}");
        }
    }

    #[test]
    fn trapezoid_exact_for_linear() {
        let h = 0.1;
        let v: Vec<f64> = (0..11).map(|i| 2.0 * i as f64 * h + 1.0).collect();
        assert!((trapezoid(&v, h) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn corrected_rule_is_fourth_order() {
        let err = |n: usize| {
            let h = 1.0 / (n - 1) as f64;
            let z: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
            let f: Vec<f64> = z.iter().map(|x| x.exp()).collect();
            let c = cumulative_corrected(&f, &f, h);
            (c[n - 1] - (1.0_f64.exp() - 1.0)).abs()
        };
        let ratio = err(11) / err(21);
        assert!(ratio > 14.0 && ratio < 18.0, "ratio {ratio}");
    }

    #[test]
    fn derivative_of_quadratic_is_exact() {
        let h = 0.25;
        let v: Vec<f64> = (0..9).map(|i| (i as f64 * h).powi(2)).collect();
        for (i, d) in derivative(&v, h).iter().enumerate() {
            assert!((d - 2.0 * i as f64 * h).abs() < 1e-12);
        }
    }
}
