//! Real symmetric tridiagonal eigensolvers.
//!
//! Every Hamiltonian in this crate is, after a diagonal gauge rotation, a real
//! symmetric tridiagonal matrix, so two small kernels cover all needs:
//!
//! * [`lowest_eigenvalues`] + [`eigenvector`]: Sturm-sequence bisection to
//!   full precision followed by inverse iteration. Used on the hot paths
//!   (ground states along loops, curvature grids) where only the bottom of the
//!   spectrum matters.
//! * [`eigh`]: implicit QL with Wilkinson shifts for the complete
//!   eigen-decomposition. Used for propagators and full spectra.
//!
//! Diagonal `d` has length `n`, off-diagonal `e` has length `n - 1`.

use crate::error::{Error, Result};

/// Eigen-decomposition `T = V diag(values) Vᵀ`; `vectors` is column-major,
/// column `j` (`vectors[j*n..(j+1)*n]`) belongs to `values[j]`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

impl Eigen {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, j: usize) -> &[f64] {
        let n = self.dim();
        &self.vectors[j * n..(j + 1) * n]
    }
}

fn check_shape(d: &[f64], e: &[f64]) {
    assert!(!d.is_empty(), "empty tridiagonal matrix");
    assert_eq!(e.len() + 1, d.len(), "off-diagonal must have length n - 1");
}

fn gershgorin(d: &[f64], e: &[f64]) -> (f64, f64) {
    let n = d.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { e[i - 1].abs() } else { 0.0 } + if i + 1 < n { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    (lo, hi)
}

fn pivmin(e: &[f64]) -> f64 {
    let emax = e.iter().fold(1.0f64, |m, x| m.max(x * x));
    f64::MIN_POSITIVE * emax
}

/// Number of eigenvalues strictly below `x` (Sturm count via the LDLᵀ
/// pivots of `T - x`).
pub fn count_below(d: &[f64], e: &[f64], x: f64) -> usize {
    check_shape(d, e);
    sturm(d, e, x, pivmin(e))
}

fn sturm(d: &[f64], e: &[f64], x: f64, pmin: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - x;
    if q.abs() < pmin {
        q = -pmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if q.abs() < pmin {
            q = -pmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues in ascending order, each bisected to
/// machine precision.
pub fn lowest_eigenvalues(d: &[f64], e: &[f64], k: usize) -> Vec<f64> {
    check_shape(d, e);
    let k = k.min(d.len());
    let pmin = pivmin(e);
    let (glo, mut ghi) = gershgorin(d, e);
    // Interlacing: the k-th eigenvalue lies below the largest Gershgorin
    // bound of the principal submatrix on the k smallest diagonal entries.
    let mut sorted = d.to_vec();
    sorted.sort_by(f64::total_cmp);
    let emax = e.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if k > 0 {
        ghi = ghi.min(sorted[k - 1] + 2.0 * emax);
    }
    let pad = 2.0 * f64::EPSILON * glo.abs().max(ghi.abs()) + pmin;
    let (glo, ghi) = (glo - pad, ghi + pad);

    let mut out = Vec::with_capacity(k);
    let mut lo_bound = glo;
    for idx in 0..k {
        let mut lo = lo_bound;
        let mut hi = ghi;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let tol = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + pmin;
            if hi - lo <= tol || mid <= lo || mid >= hi {
                break;
            }
            if sturm(d, e, mid, pmin) > idx {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let lam = 0.5 * (lo + hi);
        out.push(lam);
        lo_bound = lo;
    }
    out
}

/// Unit eigenvector for an (accurately known) eigenvalue `lambda` by inverse
/// iteration with a partially pivoted tridiagonal LU.
///
/// The sign is fixed so that the largest-magnitude component is positive.
pub fn eigenvector(d: &[f64], e: &[f64], lambda: f64) -> Result<Vec<f64>> {
    check_shape(d, e);
    let n = d.len();
    if n == 1 {
        return Ok(vec![1.0]);
    }
    let (glo, ghi) = gershgorin(d, e);
    let scale = glo.abs().max(ghi.abs()).max(f64::MIN_POSITIVE);
    let lu = TridiagLu::factor(d, e, lambda, scale);

    // Deterministic start vector with no special symmetry.
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.25 * ((i as f64) * 0.7548776662466927).fract()).collect();
    for _ in 0..4 {
        lu.solve(&mut x);
        let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !nrm.is_finite() || nrm == 0.0 {
            return Err(Error::NoConvergence { context: "inverse iteration" });
        }
        x.iter_mut().for_each(|v| *v /= nrm);
    }
    let imax =
        x.iter().enumerate().fold((0, 0.0f64), |(bi, bv), (i, v)| if v.abs() > bv { (i, v.abs()) } else { (bi, bv) }).0;
    if x[imax] < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    Ok(x)
}

/// LU factors of `T - lambda I` with row interchanges (the LAPACK `gttrf`
/// layout: unit lower bidiagonal `L`, upper triangular `U` with two
/// super-diagonals).
struct TridiagLu {
    l: Vec<f64>,
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn factor(d: &[f64], e: &[f64], lambda: f64, scale: f64) -> Self {
        let n = d.len();
        let mut l = e.to_vec();
        let mut u0: Vec<f64> = d.iter().map(|x| x - lambda).collect();
        let mut u1 = e.to_vec();
        let mut u2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n - 1];
        // Exactly singular pivots are nudged; inverse iteration wants the
        // near-singular solve anyway.
        let tiny = f64::EPSILON * scale;
        for i in 0..n - 1 {
            if u0[i].abs() >= l[i].abs() {
                if u0[i] == 0.0 {
                    u0[i] = tiny;
                }
                let f = l[i] / u0[i];
                l[i] = f;
                u0[i + 1] -= f * u1[i];
            } else {
                let f = u0[i] / l[i];
                u0[i] = l[i];
                l[i] = f;
                let t = u1[i];
                u1[i] = u0[i + 1];
                u0[i + 1] = t - f * u0[i + 1];
                if i + 1 < n - 1 {
                    u2[i] = u1[i + 1];
                    u1[i + 1] *= -f;
                }
                swapped[i] = true;
            }
        }
        if u0[n - 1] == 0.0 {
            u0[n - 1] = tiny;
        }
        Self { l, u0, u1, u2, swapped }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                let t = b[i];
                b[i] = b[i + 1];
                b[i + 1] = t - self.l[i] * b[i];
            } else {
                b[i + 1] -= self.l[i] * b[i];
            }
        }
        b[n - 1] /= self.u0[n - 1];
        b[n - 2] = (b[n - 2] - self.u1[n - 2] * b[n - 1]) / self.u0[n - 2];
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.u1[i] * b[i + 1] - self.u2[i] * b[i + 2]) / self.u0[i];
        }
    }
}

/// Full eigen-decomposition by the implicit QL algorithm. Eigenvalues are
/// returned in ascending order.
pub fn eigh(d: &[f64], e: &[f64]) -> Result<Eigen> {
    check_shape(d, e);
    let n = d.len();
    let mut w = d.to_vec();
    let mut off = vec![0.0; n];
    off[..n - 1].copy_from_slice(e);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = w[m].abs() + w[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence { context: "implicit QL" });
            }
            let mut g = (w[l + 1] - w[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = w[m] - w[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    w[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = w[i + 1] - p;
                r = (w[i] - g) * s + 2.0 * c * b;
                p = s * r;
                w[i + 1] = g + p;
                g = c * r - b;
                let (lo, hi) = z.split_at_mut((i + 1) * n);
                let zi = &mut lo[i * n..];
                let zj = &mut hi[..n];
                for k in 0..n {
                    let f = zj[k];
                    zj[k] = s * zi[k] + c * f;
                    zi[k] = c * zi[k] - s * f;
                }
            }
            if underflow {
                continue;
            }
            w[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| w[a].total_cmp(&w[b]));
    let values = order.iter().map(|&j| w[j]).collect();
    let mut vectors = Vec::with_capacity(n * n);
    for &j in &order {
        vectors.extend_from_slice(&z[j * n..(j + 1) * n]);
    }
    Ok(Eigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn dense(d: &[f64], e: &[f64]) -> DMatrix<f64> {
        let n = d.len();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = d[i];
            if i + 1 < n {
                m[(i, i + 1)] = e[i];
                m[(i + 1, i)] = e[i];
            }
        }
        m
    }

    fn sample(n: usize) -> (Vec<f64>, Vec<f64>) {
        let d = (0..n).map(|i| ((i as f64) - 3.3).powi(2) * 0.7 - 1.0).collect();
        let e = (0..n - 1).map(|i| -0.9 - 0.1 * (i as f64).sin()).collect();
        (d, e)
    }

    #[test]
    fn ql_matches_dense_oracle() {
        let (d, e) = sample(17);
        let ours = eigh(&d, &e).unwrap();
        let mut theirs: Vec<f64> = dense(&d, &e).symmetric_eigen().eigenvalues.iter().copied().collect();
        theirs.sort_by(f64::total_cmp);
        for (a, b) in ours.values.iter().zip(&theirs) {
            assert!((a - b).abs() < 1e-11, "{a} vs {b}");
        }
        // Residuals and orthonormality.
        let m = dense(&d, &e);
        for j in 0..17 {
            let v = nalgebra::DVector::from_column_slice(ours.vector(j));
            let res = &m * &v - &v * ours.values[j];
            assert!(res.norm() < 1e-11);
            for k in 0..17 {
                let dot: f64 = ours.vector(j).iter().zip(ours.vector(k)).map(|(a, b)| a * b).sum();
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bisection_agrees_with_ql() {
        let (d, e) = sample(41);
        let full = eigh(&d, &e).unwrap();
        let low = lowest_eigenvalues(&d, &e, 4);
        for (a, b) in low.iter().zip(&full.values) {
            assert!((a - b).abs() < 1e-12 * b.abs().max(1.0));
        }
    }

    #[test]
    fn inverse_iteration_vector_is_eigenvector() {
        let (d, e) = sample(41);
        let lam = lowest_eigenvalues(&d, &e, 1)[0];
        let v = eigenvector(&d, &e, lam).unwrap();
        let m = dense(&d, &e);
        let v = nalgebra::DVector::from_vec(v);
        assert!((&m * &v - &v * lam).norm() < 1e-12);
        assert!((v.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn one_by_one_and_decoupled_blocks() {
        let e = eigh(&[2.5], &[]).unwrap();
        assert_eq!(e.values, vec![2.5]);
        let e = eigh(&[3.0, 1.0, 2.0], &[0.0, 0.0]).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        assert_eq!(count_below(&[3.0, 1.0, 2.0], &[0.0, 0.0], 2.5), 2);
    }
}
