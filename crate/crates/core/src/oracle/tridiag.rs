//! Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for
//! eigenvalues, inverse iteration for eigenvectors.

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty());
        assert_eq!(off.len() + 1, diag.len());
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of the
    /// LDLᵀ factorization of `T - x`).
    pub fn sturm_count(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let e = self.off[i - 1];
            let q_prev = if q == 0.0 {
                f64::EPSILON * (e.abs() + 1.0)
            } else {
                q
            };
            q = self.diag[i] - x - e * e / q_prev;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (lo, hi) = self.gershgorin();
        self.bisect(k, lo, hi)
    }

    /// The `k` smallest eigenvalues in ascending order.
    pub fn lowest(&self, k: usize) -> Vec<f64> {
        let k = k.min(self.len());
        let (glo, ghi) = self.gershgorin();
        let mut out = Vec::with_capacity(k);
        let mut lo = glo;
        for j in 0..k {
            let e = self.bisect(j, lo, ghi);
            out.push(e);
            lo = e;
        }
        out
    }

    fn bisect(&self, k: usize, mut lo: f64, mut hi: f64) -> f64 {
        // invariant: count(lo) <= k < count(hi)
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        let pad = 2.0 * f64::EPSILON * scale;
        lo -= pad;
        hi += pad;
        for _ in 0..256 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Unit-norm (Euclidean) eigenvector for the eigenvalue `lambda`, by
    /// inverse iteration with a partially pivoted tridiagonal solve.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.len();
        let scale = self
            .gershgorin()
            .1
            .abs()
            .max(self.gershgorin().0.abs())
            .max(1.0);
        let shift = lambda + 4.0 * f64::EPSILON * scale;
        let lu = PivotedLu::factor(&self.diag, &self.off, shift);
        // deterministic start with components of both parities
        let mut x: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64)
            .collect();
        for _ in 0..4 {
            x = lu.solve(&x);
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= norm);
        }
        // sign convention: first component of significant size is positive
        let big = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if let Some(first) = x.iter().find(|v| v.abs() > 1e-3 * big) {
            if *first < 0.0 {
                x.iter_mut().for_each(|v| *v = -*v);
            }
        }
        x
    }
}

/// LU factorization with partial pivoting of `T - shift·I`.
struct PivotedLu {
    // U has up to two superdiagonals after row swaps
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    l: Vec<f64>,
    swapped: Vec<bool>,
}

impl PivotedLu {
    fn factor(diag: &[f64], off: &[f64], shift: f64) -> Self {
        let n = diag.len();
        let tiny = f64::EPSILON * diag.iter().fold(1.0_f64, |m, d| m.max(d.abs()));
        let mut u0: Vec<f64> = diag.iter().map(|d| d - shift).collect();
        let mut u1: Vec<f64> = off.to_vec();
        u1.push(0.0);
        let mut u2 = vec![0.0; n];
        let mut sub: Vec<f64> = off.to_vec();
        let mut l = vec![0.0; n];
        let mut swapped = vec![false; n];
        for i in 0..n.saturating_sub(1) {
            if sub[i].abs() > u0[i].abs() {
                // swap rows i and i + 1
                swapped[i] = true;
                let (a0, a1, a2) = (u0[i], u1[i], u2[i]);
                u0[i] = sub[i];
                u1[i] = u0[i + 1];
                u2[i] = u1[i + 1];
                let m = a0 / u0[i];
                l[i] = m;
                u0[i + 1] = a1 - m * u1[i];
                u1[i + 1] = a2 - m * u2[i];
                sub[i] = a0;
            } else {
                if u0[i] == 0.0 {
                    u0[i] = tiny;
                }
                let m = sub[i] / u0[i];
                l[i] = m;
                u0[i + 1] -= m * u1[i];
                u1[i + 1] -= m * u2[i];
            }
        }
        if u0[n - 1] == 0.0 {
            u0[n - 1] = tiny;
        }
        Self {
            u0,
            u1,
            u2,
            l,
            swapped,
        }
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = b.len();
        let mut y = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                y.swap(i, i + 1);
            }
            y[i + 1] -= self.l[i] * y[i];
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = y[i];
            if i + 1 < n {
                s -= self.u1[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= self.u2[i] * x[i + 2];
            }
            x[i] = s / self.u0[i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// The discrete Laplacian `tridiag(-1, 2, -1)` has eigenvalues
    /// `2 - 2 cos(k pi / (n + 1))`.
    fn laplacian(n: usize) -> SymTridiagonal {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1])
    }

    #[test]
    fn laplacian_spectrum() {
        let n = 50;
        let t = laplacian(n);
        let ev = t.lowest(n);
        for (k, e) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * PI / (n + 1) as f64).cos();
            assert!((e - exact).abs() < 1e-13, "{k}: {e} vs {exact}");
        }
        assert_eq!(t.sturm_count(10.0), n);
        assert_eq!(t.sturm_count(-1.0), 0);
    }

    #[test]
    fn eigenvectors_satisfy_the_equation() {
        let n = 40;
        let diag: Vec<f64> = (0..n).map(|i| ((i as f64) * 0.37).sin() * 3.0).collect();
        let off: Vec<f64> = (0..n - 1)
            .map(|i| 1.0 + 0.5 * ((i as f64) * 0.11).cos())
            .collect();
        let t = SymTridiagonal::new(diag.clone(), off.clone());
        for k in [0, 1, 5, 20, 39] {
            let lam = t.eigenvalue(k);
            let v = t.eigenvector(lam);
            let mut res = 0.0_f64;
            for i in 0..n {
                let mut tv = diag[i] * v[i];
                if i > 0 {
                    tv += off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    tv += off[i] * v[i + 1];
                }
                res = res.max((tv - lam * v[i]).abs());
            }
            assert!(res < 1e-10, "k={k} residual {res}");
        }
    }

    #[test]
    fn single_element() {
        let t = SymTridiagonal::new(vec![3.5], vec![]);
        assert!((t.eigenvalue(0) - 3.5).abs() < 1e-14);
        assert_eq!(t.eigenvector(3.5), vec![1.0]);
    }
}
