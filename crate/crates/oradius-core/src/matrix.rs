//! Dense complex square matrices and the operator-level primitives the
//! bound evaluators are built on: adjoint, Hermitian eigendecomposition,
//! operator absolute value, spectral functional calculus, Cartesian
//! decomposition, and off-diagonal block composition.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eigmax;

/// Relative tolerance for the Hermitian symmetry residual.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues of nominally PSD matrices in `[-PSD_CLAMP_TOL * scale, 0)`
/// are clamped to zero; anything more negative is a domain error.
pub const PSD_CLAMP_TOL: f64 = 1e-12;
/// Per-eigensolve error allowance folded into downstream budgets.
pub const EIG_ALLOWANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimension must be at least 1")]
    Empty,
    #[error("entry ({row},{col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("matrix is not Hermitian: symmetry residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { residual: f64, tolerance: f64 },
    #[error("eigenvalue {value:.6e} is below the PSD clamping range (min allowed {min_allowed:.6e})")]
    DomainError { value: f64, min_allowed: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("scalar function overflowed on eigenvalue {eigenvalue:.6e}")]
    Overflow { eigenvalue: f64 },
    #[error("invalid matrix JSON: {0}")]
    Json(String),
}

/// A validated dense square matrix of complex scalars: the operator `A`
/// at desk scale. Entries are always finite and the matrix is square of
/// dimension at least one.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl ComplexMatrix {
    /// Validate and wrap a matrix.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self, MatrixError> {
        if m.nrows() != m.ncols() {
            return Err(MatrixError::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(MatrixError::Empty);
        }
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                let z = m[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(MatrixError::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        Ok(Self { inner: m })
    }

    /// Wrap a matrix known to be square. Internal arithmetic may produce
    /// transient non-finite entries after an Orlicz overflow; those are
    /// surfaced as overflow verdicts downstream, so only shape is asserted
    /// here.
    pub(crate) fn from_valid(m: DMatrix<Complex64>) -> Self {
        debug_assert!(m.is_square() && m.nrows() >= 1);
        Self { inner: m }
    }

    /// Build from row-major complex entries.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, MatrixError> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(MatrixError::NotSquare { rows: n, cols: r.len() });
            }
        }
        let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        Self::new(m)
    }

    /// Build from row-major real entries (imaginary parts zero).
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self, MatrixError> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(MatrixError::NotSquare { rows: n, cols: r.len() });
            }
        }
        let m = DMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j], 0.0));
        Self::new(m)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_valid(DMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_valid(DMatrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn inner(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.inner
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    /// Conjugate transpose `A^*`.
    pub fn adjoint(&self) -> Self {
        Self::from_valid(self.inner.adjoint())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_dim(other)?;
        Ok(Self::from_valid(&self.inner + &other.inner))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_dim(other)?;
        Ok(Self::from_valid(&self.inner * &other.inner))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_valid(&self.inner * c)
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// `A^H A`, formed directly (exactly Hermitian in floating point).
    pub fn gram(&self) -> Self {
        Self::from_valid(self.inner.adjoint() * &self.inner)
    }

    /// `A A^H`.
    pub fn cogram(&self) -> Self {
        Self::from_valid(&self.inner * self.inner.adjoint())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.norm()
    }

    fn check_same_dim(&self, other: &Self) -> Result<(), MatrixError> {
        if self.dim() != other.dim() {
            return Err(MatrixError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    /// Operator (spectral) norm: the square root of the largest eigenvalue
    /// of `A^H A`.
    pub fn operator_norm(&self) -> f64 {
        let g = self.inner.adjoint() * &self.inner;
        eigmax::hermitian_lambda_max(&g).max(0.0).sqrt()
    }

    /// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
    pub fn hermitian_eig(&self) -> Result<HermitianEig, MatrixError> {
        let residual = (&self.inner - self.inner.adjoint()).norm();
        let tolerance = HERMITIAN_TOL * self.inner.norm().max(1.0);
        if residual > tolerance {
            return Err(MatrixError::NotHermitian { residual, tolerance });
        }
        // Symmetrize before factoring so roundoff in the input cannot leak
        // into the decomposition.
        let sym = (&self.inner + self.inner.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = sym.symmetric_eigen();
        let n = self.dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut basis = DMatrix::<Complex64>::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            basis.set_column(dst, &eig.eigenvectors.column(src));
        }
        Ok(HermitianEig {
            eigenvalues,
            basis: ComplexMatrix::from_valid(basis),
        })
    }

    /// Operator absolute value `|A| = (A^H A)^{1/2}`.
    pub fn abs_value(&self) -> Self {
        let g = self.gram();
        let eig = g.hermitian_eig().expect("gram matrix is Hermitian by construction");
        eig.reassemble(|lambda| lambda.max(0.0).sqrt())
    }

    /// Spectral functional calculus: apply a scalar function to a Hermitian
    /// positive semidefinite matrix through its eigendecomposition.
    /// Eigenvalues within the clamping band below zero are snapped to zero
    /// before `phi` is applied.
    pub fn func_calc(&self, phi: impl Fn(f64) -> f64) -> Result<Self, MatrixError> {
        let eig = self.hermitian_eig()?;
        let scale = eig
            .eigenvalues
            .iter()
            .fold(0.0f64, |acc, &l| acc.max(l.abs()));
        let min_allowed = -PSD_CLAMP_TOL * scale;
        let mut mapped = Vec::with_capacity(eig.eigenvalues.len());
        for &l in &eig.eigenvalues {
            if l < min_allowed {
                return Err(MatrixError::DomainError { value: l, min_allowed });
            }
            let clamped = l.max(0.0);
            let y = phi(clamped);
            if !y.is_finite() {
                return Err(MatrixError::Overflow { eigenvalue: clamped });
            }
            mapped.push(y);
        }
        Ok(eig.reassemble_values(&mapped))
    }

    /// Cartesian decomposition `A = Re(A) + i Im(A)` with both parts
    /// Hermitian.
    pub fn cartesian_parts(&self) -> (Self, Self) {
        let re = (&self.inner + self.inner.adjoint()) * Complex64::new(0.5, 0.0);
        let im = (&self.inner - self.inner.adjoint()) * Complex64::new(0.0, -0.5);
        (Self::from_valid(re), Self::from_valid(im))
    }

    /// The `2n x 2n` off-diagonal block matrix `[[0, P], [Q, 0]]`.
    pub fn block_compose(p: &Self, q: &Self) -> Result<Self, MatrixError> {
        p.check_same_dim(q)?;
        let n = p.dim();
        let mut m = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
        m.view_mut((0, n), (n, n)).copy_from(&p.inner);
        m.view_mut((n, 0), (n, n)).copy_from(&q.inner);
        Ok(Self::from_valid(m))
    }

    /// Parse the CLI matrix file format:
    /// `{"n": int, "entries": [[[re, im], ...], ...]}`.
    pub fn from_json_str(s: &str) -> Result<Self, MatrixError> {
        let raw: MatrixJson =
            serde_json::from_str(s).map_err(|e| MatrixError::Json(e.to_string()))?;
        raw.try_into()
    }

    pub fn to_json_string(&self) -> String {
        let raw = MatrixJson {
            n: self.dim(),
            entries: (0..self.dim())
                .map(|i| {
                    (0..self.dim())
                        .map(|j| {
                            let z = self.inner[(i, j)];
                            (z.re, z.im)
                        })
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("matrix serialization cannot fail")
    }
}

/// Eigendata of a Hermitian matrix: ascending eigenvalues and an
/// orthonormal basis of eigenvectors (as columns).
#[derive(Clone, Debug)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub basis: ComplexMatrix,
}

impl HermitianEig {
    /// `basis * diag(f(lambda_i)) * basis^H`, re-symmetrized.
    pub fn reassemble(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let vals: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.reassemble_values(&vals)
    }

    fn reassemble_values(&self, vals: &[f64]) -> ComplexMatrix {
        let b = self.basis.inner();
        let diag = DMatrix::from_diagonal(&DVector::from_iterator(
            vals.len(),
            vals.iter().map(|&v| Complex64::new(v, 0.0)),
        ));
        let m = b * diag * b.adjoint();
        let sym = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        ComplexMatrix::from_valid(sym)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    entries: Vec<Vec<(f64, f64)>>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = MatrixError;

    fn try_from(raw: MatrixJson) -> Result<Self, MatrixError> {
        if raw.n == 0 {
            return Err(MatrixError::Json("dimension n must be at least 1".into()));
        }
        if raw.entries.len() != raw.n {
            return Err(MatrixError::Json(format!(
                "expected {} rows, got {}",
                raw.n,
                raw.entries.len()
            )));
        }
        for (i, row) in raw.entries.iter().enumerate() {
            if row.len() != raw.n {
                return Err(MatrixError::Json(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    raw.n
                )));
            }
            for (j, &(re, im)) in row.iter().enumerate() {
                if !re.is_finite() || !im.is_finite() {
                    return Err(MatrixError::Json(format!(
                        "entry ({i},{j}) is not finite"
                    )));
                }
            }
        }
        let m = DMatrix::from_fn(raw.n, raw.n, |i, j| {
            let (re, im) = raw.entries[i][j];
            Complex64::new(re, im)
        });
        ComplexMatrix::new(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn nilpotent2() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap()
    }

    fn rand_matrix(n: usize, state: &mut u64) -> ComplexMatrix {
        let next = |s: &mut u64| {
            *s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((*s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let m = DMatrix::from_fn(n, n, |_, _| c(next(state), next(state)));
        ComplexMatrix::from_valid(m)
    }

    #[test]
    fn adjoint_transposes_and_conjugates() {
        let a = nilpotent2();
        let adj = a.adjoint();
        assert_eq!(adj.entry(0, 0), c(0.0, 0.0));
        assert_eq!(adj.entry(1, 0), c(1.0, 0.0));
        assert_eq!(adj.entry(0, 1), c(0.0, 0.0));
        let h = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, -3.0)],
            vec![c(1.0, 3.0), c(-1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(h.adjoint(), h);
        let mut state = 7u64;
        let m = rand_matrix(5, &mut state);
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn hermitian_eig_on_closed_forms() {
        let d = ComplexMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, -1.0]]).unwrap();
        let eig = d.hermitian_eig().unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 3.0).abs() < 1e-14);
        let pauli = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let eig = pauli.hermitian_eig().unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hermitian_eig_reconstruction_residual() {
        let mut state = 11u64;
        for n in 1..=10 {
            let g = rand_matrix(n, &mut state);
            let h = g.add(&g.adjoint()).unwrap().scale_re(0.5);
            let eig = h.hermitian_eig().unwrap();
            let recon = eig.reassemble(|l| l);
            let resid = (recon.inner() - h.inner()).norm();
            assert!(resid <= 1e-12 * h.frobenius_norm().max(1.0), "n={n} resid={resid:e}");
            let ortho = (eig.basis.inner().adjoint() * eig.basis.inner()
                - DMatrix::<Complex64>::identity(n, n))
            .norm();
            assert!(ortho <= 1e-12, "n={n} ortho={ortho:e}");
            // ascending order
            for w in eig.eigenvalues.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn hermitian_eig_rejects_asymmetric_input() {
        let a = nilpotent2();
        assert!(matches!(a.hermitian_eig(), Err(MatrixError::NotHermitian { .. })));
    }

    #[test]
    fn operator_norm_closed_forms() {
        let d = ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, -5.0]]).unwrap();
        assert!((d.operator_norm() - 5.0).abs() < 1e-12);
        let r1 = ComplexMatrix::from_real_rows(&[&[0.0, 3.0], &[0.0, 0.0]]).unwrap();
        assert!((r1.operator_norm() - 3.0).abs() < 1e-12);
        // Largest singular value of [[1,1],[0,1]] is the golden ratio:
        // sqrt of the larger root of l^2 - 3l + 1 = 0.
        let j = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        let golden = 0.5 * (1.0 + 5.0f64.sqrt());
        assert!((j.operator_norm() - golden).abs() < 1e-10);
    }

    #[test]
    fn abs_value_on_nilpotent_and_psd() {
        let a = nilpotent2();
        let abs_a = a.abs_value();
        let abs_adj = a.adjoint().abs_value();
        for (m, d00, d11) in [(&abs_a, 0.0, 1.0), (&abs_adj, 1.0, 0.0)] {
            assert!((m.entry(0, 0).re - d00).abs() < 1e-12);
            assert!((m.entry(1, 1).re - d11).abs() < 1e-12);
            assert!(m.entry(0, 1).norm() < 1e-12);
        }
        let mut state = 3u64;
        let g = rand_matrix(4, &mut state);
        let p = g.gram();
        let diff = (p.abs_value().inner() - p.inner()).norm();
        assert!(diff <= 1e-10 * p.frobenius_norm());
    }

    #[test]
    fn abs_value_squares_back_to_gram() {
        let mut state = 17u64;
        for n in 2..=8 {
            let a = rand_matrix(n, &mut state);
            let abs_a = a.abs_value();
            let sq = abs_a.mul(&abs_a).unwrap();
            let g = a.gram();
            let norm = a.operator_norm();
            assert!((sq.inner() - g.inner()).norm() <= 1e-10 * (norm * norm).max(1e-30));
        }
    }

    #[test]
    fn func_calc_identity_and_square() {
        let mut state = 23u64;
        let p = rand_matrix(4, &mut state).gram();
        let id = p.func_calc(|t| t).unwrap();
        assert!((id.inner() - p.inner()).norm() <= 1e-11 * p.frobenius_norm().max(1.0));
        let d = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 2.0]]).unwrap();
        let sq = d.func_calc(|t| t * t).unwrap();
        assert!((sq.entry(0, 0).re - 1.0).abs() < 1e-13);
        assert!((sq.entry(1, 1).re - 4.0).abs() < 1e-13);
        let p2 = p.func_calc(|t| t * t).unwrap();
        let direct = p.mul(&p).unwrap();
        let scale = p.operator_norm().powi(2);
        assert!((p2.inner() - direct.inner()).norm() <= 1e-10 * scale.max(1e-30));
    }

    #[test]
    fn func_calc_rejects_indefinite_input() {
        let h = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap();
        assert!(matches!(
            h.func_calc(|t| t),
            Err(MatrixError::DomainError { .. })
        ));
    }

    #[test]
    fn func_calc_flags_overflow() {
        let h = ComplexMatrix::from_real_rows(&[&[900.0, 0.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(
            h.func_calc(|t| t.exp()),
            Err(MatrixError::Overflow { .. })
        ));
    }

    #[test]
    fn cartesian_parts_reconstruct() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 1.0)],
            vec![c(2.0, -1.0), c(0.5, 0.0)],
        ])
        .unwrap();
        let (re, im) = h.cartesian_parts();
        assert!((re.inner() - h.inner()).norm() < 1e-15);
        assert!(im.frobenius_norm() < 1e-15);

        let a = nilpotent2();
        let (re, im) = a.cartesian_parts();
        assert!((re.entry(0, 1) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((im.entry(0, 1) - c(0.0, -0.5)).norm() < 1e-15);
        assert!((im.entry(1, 0) - c(0.0, 0.5)).norm() < 1e-15);

        let mut state = 31u64;
        let m = rand_matrix(6, &mut state);
        let (re, im) = m.cartesian_parts();
        let recon = re.inner() + im.inner() * c(0.0, 1.0);
        assert!((recon - m.inner()).norm() <= 1e-15 * m.frobenius_norm());
        assert!((re.inner() - re.inner().adjoint()).norm() == 0.0);
        assert!((im.inner() - im.inner().adjoint()).norm() == 0.0);
    }

    #[test]
    fn block_compose_layout_and_abs_identity() {
        let p = ComplexMatrix::from_real_rows(&[&[1.0]]).unwrap();
        let q = ComplexMatrix::from_real_rows(&[&[1.0]]).unwrap();
        let b = ComplexMatrix::block_compose(&p, &q).unwrap();
        assert_eq!(b.entry(0, 1), c(1.0, 0.0));
        assert_eq!(b.entry(1, 0), c(1.0, 0.0));
        assert_eq!(b.entry(0, 0), c(0.0, 0.0));

        let z = ComplexMatrix::from_real_rows(&[&[0.0]]).unwrap();
        let nb = ComplexMatrix::block_compose(&p, &z).unwrap();
        assert_eq!(nb.entry(0, 1), c(1.0, 0.0));
        assert_eq!(nb.entry(1, 0), c(0.0, 0.0));

        // |[[0,P],[Q,0]]| = diag(|Q|, |P|)
        let mut state = 41u64;
        for n in 1..=4 {
            let p = rand_matrix(n, &mut state);
            let q = rand_matrix(n, &mut state);
            let block = ComplexMatrix::block_compose(&p, &q).unwrap();
            let abs_block = block.abs_value();
            let expect = {
                let mut m = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
                m.view_mut((0, 0), (n, n)).copy_from(q.abs_value().inner());
                m.view_mut((n, n), (n, n)).copy_from(p.abs_value().inner());
                m
            };
            assert!((abs_block.inner() - expect).norm() <= 1e-10);
        }

        let bad = ComplexMatrix::block_compose(&p, &nilpotent2());
        assert!(matches!(bad, Err(MatrixError::DimensionMismatch { .. })));
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let a = ComplexMatrix::from_json_str(
            r#"{"n": 2, "entries": [[[0.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]}"#,
        )
        .unwrap();
        assert_eq!(a, nilpotent2());
        let back = ComplexMatrix::from_json_str(&a.to_json_string()).unwrap();
        assert_eq!(back, a);

        // ragged rows
        assert!(ComplexMatrix::from_json_str(
            r#"{"n": 2, "entries": [[[0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]}"#
        )
        .is_err());
        // wrong row count
        assert!(ComplexMatrix::from_json_str(r#"{"n": 2, "entries": [[[0.0, 0.0], [0.0, 0.0]]]}"#).is_err());
        // non-finite after parse (overflowing literal)
        assert!(ComplexMatrix::from_json_str(r#"{"n": 1, "entries": [[[1e999, 0.0]]]}"#).is_err());
        // zero dimension
        assert!(ComplexMatrix::from_json_str(r#"{"n": 0, "entries": []}"#).is_err());
    }

    #[test]
    fn norm_is_adjoint_invariant() {
        let mut state = 59u64;
        for n in 1..=8 {
            let a = rand_matrix(n, &mut state);
            let na = a.operator_norm();
            let nadj = a.adjoint().operator_norm();
            assert!((na - nadj).abs() <= 1e-10 * na.max(1e-30));
        }
    }

    #[test]
    fn norm_triangle_and_submultiplicative() {
        let mut state = 61u64;
        for _ in 0..20 {
            let a = rand_matrix(5, &mut state);
            let b = rand_matrix(5, &mut state);
            let na = a.operator_norm();
            let nb = b.operator_norm();
            let scale = (na + nb).max(1.0);
            assert!(a.add(&b).unwrap().operator_norm() <= na + nb + 1e-10 * scale);
            assert!(a.mul(&b).unwrap().operator_norm() <= na * nb + 1e-10 * (na * nb).max(1.0));
        }
    }

    #[test]
    fn singular_values_match_between_abs_and_abs_adjoint() {
        let mut state = 67u64;
        for n in 2..=6 {
            let a = rand_matrix(n, &mut state);
            let sv1 = a.abs_value().hermitian_eig().unwrap().eigenvalues;
            let sv2 = a.adjoint().abs_value().hermitian_eig().unwrap().eigenvalues;
            let scale = a.operator_norm().max(1e-30);
            for (x, y) in sv1.iter().zip(&sv2) {
                assert!((x - y).abs() <= 1e-10 * scale);
            }
        }
    }
}
