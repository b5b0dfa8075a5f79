//! Largest eigenvalue of a small Hermitian matrix, tuned for the radius
//! solver's inner loop.
//!
//! A Householder pass reduces the matrix to real symmetric tridiagonal
//! form (the subdiagonal phases are removed by a diagonal unitary
//! similarity, which leaves the spectrum unchanged); the top eigenvalue is
//! then isolated by bisection on the LDL^T inertia count. This route needs
//! no eigenvectors and is several times faster than a full
//! eigendecomposition at the dimensions the solver sweeps over.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Reusable buffers for repeated `lambda_max` calls on same-size matrices.
#[derive(Clone, Debug)]
pub struct LambdaMaxWorkspace {
    n: usize,
    a: Vec<Complex64>,
    d: Vec<f64>,
    e: Vec<f64>,
    v: Vec<Complex64>,
    p: Vec<Complex64>,
}

impl LambdaMaxWorkspace {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            a: vec![Complex64::new(0.0, 0.0); n * n],
            d: vec![0.0; n],
            e: vec![0.0; n.saturating_sub(1)],
            v: vec![Complex64::new(0.0, 0.0); n],
            p: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Largest eigenvalue of the Hermitian matrix written into the
    /// column-major buffer by `fill`. The buffer contents are destroyed.
    pub fn lambda_max_with(&mut self, fill: impl FnOnce(&mut [Complex64])) -> f64 {
        fill(&mut self.a);
        lambda_max_in_place(&mut self.a, self.n, &mut self.d, &mut self.e, &mut self.v, &mut self.p)
    }
}

/// Largest eigenvalue of a Hermitian matrix. Only the Hermitian part of
/// the input participates (off-diagonal conjugate pairs are averaged by
/// the reduction), so callers must pass an (at least numerically)
/// Hermitian matrix.
pub fn hermitian_lambda_max(h: &DMatrix<Complex64>) -> f64 {
    let n = h.nrows();
    debug_assert_eq!(n, h.ncols());
    let mut ws = LambdaMaxWorkspace::new(n);
    ws.lambda_max_with(|buf| buf.copy_from_slice(h.as_slice()))
}

fn lambda_max_in_place(
    a: &mut [Complex64],
    n: usize,
    d: &mut [f64],
    e: &mut [f64],
    v: &mut [Complex64],
    p: &mut [Complex64],
) -> f64 {
    match n {
        0 => f64::NEG_INFINITY,
        1 => a[0].re,
        2 => {
            let x = a[0].re;
            let y = a[3].re;
            let b = a[2]; // entry (0,1) in column-major
            let half_diff = 0.5 * (x - y);
            let rad = (half_diff * half_diff + b.norm_sqr()).sqrt();
            0.5 * (x + y) + rad
        }
        _ => {
            tridiagonalize(a, n, d, e, v, p);
            tridiag_lambda_max(d, e)
        }
    }
}

/// Householder reduction of a Hermitian matrix (column-major, length n*n)
/// to tridiagonal form. Writes the diagonal into `d` and the subdiagonal
/// moduli into `e`.
fn tridiagonalize(a: &mut [Complex64], n: usize, d: &mut [f64], e: &mut [f64], v: &mut [Complex64], p: &mut [Complex64]) {
    let idx = |i: usize, j: usize| i + j * n;
    for k in 0..n - 2 {
        // Norm of the column below the diagonal.
        let mut nrm2 = 0.0;
        for i in k + 1..n {
            nrm2 += a[idx(i, k)].norm_sqr();
        }
        let nrm = nrm2.sqrt();
        if nrm == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let x0 = a[idx(k + 1, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * nrm;
        // Reflector direction u = x - alpha*e1, normalized into v.
        v[k + 1] = x0 - alpha;
        let mut unrm2 = v[k + 1].norm_sqr();
        for i in k + 2..n {
            v[i] = a[idx(i, k)];
            unrm2 += v[i].norm_sqr();
        }
        if unrm2 == 0.0 {
            e[k] = nrm;
            continue;
        }
        let inv = 1.0 / unrm2.sqrt();
        for i in k + 1..n {
            v[i] *= inv;
        }
        // p = H v on the trailing block, beta = Re(v^H p), q = p - beta v,
        // H <- H - 2 v q^H - 2 q v^H.
        for i in k + 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in k + 1..n {
                acc += a[idx(i, j)] * v[j];
            }
            p[i] = acc;
        }
        let mut beta = 0.0;
        for i in k + 1..n {
            beta += (v[i].conj() * p[i]).re;
        }
        for i in k + 1..n {
            p[i] -= beta * v[i]; // p now holds q
        }
        for j in k + 1..n {
            let vj = v[j].conj();
            let qj = p[j].conj();
            for i in k + 1..n {
                a[idx(i, j)] -= 2.0 * (v[i] * qj + p[i] * vj);
            }
        }
        a[idx(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[idx(i, k)] = Complex64::new(0.0, 0.0);
        }
        e[k] = nrm;
    }
    for i in 0..n {
        d[i] = a[idx(i, i)].re;
    }
    e[n - 2] = a[idx(n - 1, n - 2)].norm();
}

/// Largest eigenvalue of a real symmetric tridiagonal matrix by bisection
/// on the count of eigenvalues below a pivot.
fn tridiag_lambda_max(d: &[f64], e: &[f64]) -> f64 {
    let n = d.len();
    if n == 1 {
        return d[0];
    }
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut emax = 0.0f64;
    for i in 0..n {
        let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
        let right = if i < n - 1 { e[i].abs() } else { 0.0 };
        lo = lo.max(d[i]); // Rayleigh quotient of a basis vector
        hi = hi.max(d[i] + left + right); // Gershgorin
        emax = emax.max(left).max(right);
    }
    let scale = lo.abs().max(hi.abs()).max(1e-300);
    let pivmin = (f64::MIN_POSITIVE).max(emax * emax * f64::EPSILON * f64::EPSILON);
    let tol = 2.0 * f64::EPSILON * scale;
    for _ in 0..64 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        // LDL^T inertia: count of eigenvalues strictly below mid.
        let mut q = d[0] - mid;
        let mut below = usize::from(q < 0.0);
        for i in 1..n {
            if q.abs() < pivmin {
                q = -pivmin;
            }
            q = d[i] - mid - e[i - 1] * e[i - 1] / q;
            if q < 0.0 {
                below += 1;
            }
        }
        if below == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
