//! Small dense complex linear algebra helpers shared by the physics modules.
//!
//! Everything here targets Hermitian matrices of dimension at most a few
//! hundred, which is all the toolkit ever needs.

use crate::{CMat, CVec, C64};

/// Hermitian eigendecomposition, eigenvalues ascending, by cyclic Jacobi
/// rotations on the complex matrix.
///
/// The input is symmetrized as `(a + a^dagger)/2` first so that callers can
/// pass matrices carrying round-off asymmetry. Jacobi is unconditionally
/// convergent and keeps full accuracy under degenerate spectra, which the
/// matrices here (tensor-product Hamiltonians, projectors) hit routinely.
pub fn eigh(a: &CMat) -> (Vec<f64>, CMat) {
    let n = a.nrows();
    let mut m = (a + a.adjoint()) * C64::new(0.5, 0.0);
    let mut v = CMat::identity(n, n);
    let fro: f64 = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let tol = (fro * 1e-15).max(1e-300);

    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let c_pq = m[(p, q)];
                let abs_c = c_pq.norm();
                if abs_c <= tol / (n as f64) {
                    continue;
                }
                // phase u aligns the off-diagonal entry with the real axis
                let u = c_pq / C64::new(abs_c, 0.0);
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                // stable small-angle root of t^2 + 2 zeta t - 1 = 0 that
                // zeroes the (p,q) entry of the rotated block
                let zeta = (app - aqq) / (2.0 * abs_c);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let cos = 1.0 / (1.0 + t * t).sqrt();
                let sin = t * cos;
                // columns p, q of M and V rotate by
                // G = [[cos, -sin u], [sin conj(u), cos]]
                let (g_pp, g_pq) = (C64::new(cos, 0.0), -u * sin);
                let (g_qp, g_qq) = (u.conj() * sin, C64::new(cos, 0.0));
                for r in 0..n {
                    let (mrp, mrq) = (m[(r, p)], m[(r, q)]);
                    m[(r, p)] = mrp * g_pp + mrq * g_qp;
                    m[(r, q)] = mrp * g_pq + mrq * g_qq;
                    let (vrp, vrq) = (v[(r, p)], v[(r, q)]);
                    v[(r, p)] = vrp * g_pp + vrq * g_qp;
                    v[(r, q)] = vrp * g_pq + vrq * g_qq;
                }
                // rows p, q of M rotate by G^dagger
                for s in 0..n {
                    let (mps, mqs) = (m[(p, s)], m[(q, s)]);
                    m[(p, s)] = g_pp.conj() * mps + g_qp.conj() * mqs;
                    m[(q, s)] = g_pq.conj() * mps + g_qq.conj() * mqs;
                }
                m[(p, q)] = C64::new(0.0, 0.0);
                m[(q, p)] = C64::new(0.0, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vecs = CMat::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vecs.set_column(col, &v.column(i));
    }
    (vals, vecs)
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(a: &CMat) -> Vec<f64> {
    eigh(a).0
}

/// Apply a real scalar function to a Hermitian matrix through its spectrum.
pub fn func_hermitian(a: &CMat, f: impl Fn(f64) -> f64) -> CMat {
    let (vals, vecs) = eigh(a);
    spectral_apply(&vals, &vecs, |x| C64::new(f(x), 0.0))
}

/// Apply a complex scalar function to the (real) spectrum of a Hermitian matrix.
pub fn func_hermitian_c(a: &CMat, f: impl Fn(f64) -> C64) -> CMat {
    let (vals, vecs) = eigh(a);
    spectral_apply(&vals, &vecs, f)
}

fn spectral_apply(vals: &[f64], vecs: &CMat, f: impl Fn(f64) -> C64) -> CMat {
    let n = vals.len();
    let mut d = CMat::zeros(n, n);
    for i in 0..n {
        d[(i, i)] = f(vals[i]);
    }
    vecs * d * vecs.adjoint()
}

/// `exp(-i H t)` for Hermitian `H`.
pub fn expm_i_hermitian(h: &CMat, t: f64) -> CMat {
    func_hermitian_c(h, |e| C64::new(0.0, -e * t).exp())
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues slightly below zero are clipped.
pub fn sqrtm_psd(a: &CMat) -> CMat {
    func_hermitian(a, |e| e.max(0.0).sqrt())
}

/// Kronecker product.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Identity matrix of size n.
pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Frobenius-norm of the anti-Hermitian part, used in validity checks.
pub fn hermiticity_defect(a: &CMat) -> f64 {
    let d = a - a.adjoint();
    d.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / 2.0
}

/// `<u, v>` with conjugation on the left argument.
pub fn inner(u: &CVec, v: &CVec) -> C64 {
    u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum()
}
