//! Dense kernels shared by every other module: subspaces, projectors,
//! pseudo-inverses, spectral bounds and the tolerance policy.
//!
//! All matrices are stored over `Complex<f64>`. Real data simply carries zero
//! imaginary parts; products of such matrices stay exactly real, so the
//! [`Field`] tag only matters for sampling and serialization.

use nalgebra::{Complex, DMatrix, DVector};
use ndarray::Array2;
use ndarray_linalg::{EigValsh, JobSvd, SVDDC, UPLO};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type Mat = DMatrix<C64>;
pub type Vector = DVector<C64>;

/// Scalar field a family lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    #[default]
    Complex,
}

impl Field {
    /// `Real` when every entry has a zero imaginary part.
    pub fn of(m: &Mat) -> Field {
        if m.iter().all(|z| z.im == 0.0) {
            Field::Real
        } else {
            Field::Complex
        }
    }

    /// Common field of two operands; real data embeds into the complex field.
    pub fn join(self, other: Field) -> Field {
        if self == Field::Real && other == Field::Real {
            Field::Real
        } else {
            Field::Complex
        }
    }
}

/// Numerical tolerance policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tol {
    /// Relative tolerance for operator identities such as `T_V Q T_W* = I`.
    pub identity: f64,
    /// Rank factor: a singular value counts when `σ ≥ rank · σ_max · max(rows, cols)`.
    pub rank: f64,
    /// Slack for positivity and norm inequalities.
    pub psd: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol {
            identity: 1e-8,
            rank: 1e-12,
            psd: 1e-10,
        }
    }
}

impl Tol {
    pub fn new(identity: f64, rank: f64, psd: f64) -> Result<Tol> {
        for (name, v) in [("identity", identity), ("rank", rank), ("psd", psd)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} tolerance must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Tol {
            identity,
            rank,
            psd,
        })
    }

    /// Same policy with a different identity tolerance.
    pub fn with_identity(self, identity: f64) -> Result<Tol> {
        Tol::new(identity, self.rank, self.psd)
    }

    /// Cut-off below which singular values of a `rows × cols` matrix are zero.
    pub fn rank_threshold(&self, sigma_max: f64, rows: usize, cols: usize) -> f64 {
        self.rank * sigma_max * rows.max(cols).max(1) as f64
    }
}

/// Outcome of a numerical identity check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub holds: bool,
    pub residual: f64,
}

impl Check {
    pub fn at_most(residual: f64, bound: f64) -> Check {
        Check {
            holds: residual.is_finite() && residual <= bound,
            residual,
        }
    }
}

pub fn c64(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Builds a matrix from row-major real entries.
pub fn real_matrix(rows: usize, cols: usize, entries: &[f64]) -> Mat {
    assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
    Mat::from_fn(rows, cols, |i, j| c64(entries[i * cols + j]))
}

pub fn real_vector(entries: &[f64]) -> Vector {
    Vector::from_iterator(entries.len(), entries.iter().map(|&x| c64(x)))
}

/// Builds a matrix whose columns are the given real vectors.
pub fn real_columns(columns: &[&[f64]]) -> Mat {
    let rows = columns.first().map_or(0, |c| c.len());
    Mat::from_fn(rows, columns.len(), |i, j| c64(columns[j][i]))
}

pub fn is_finite(m: &Mat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// `⟨x, y⟩`, linear in the first argument.
pub fn inner(x: &Vector, y: &Vector) -> C64 {
    y.dotc(x)
}

// Decompositions go through LAPACK: nalgebra's bidiagonal SVD occasionally
// returns factors that do not reproduce rank-deficient inputs.

fn to_ndarray(m: &Mat) -> Array2<C64> {
    Array2::from_shape_fn((m.nrows(), m.ncols()), |(i, j)| m[(i, j)])
}

fn from_ndarray(a: &Array2<C64>) -> Mat {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[[i, j]])
}

/// Thin SVD `M = U Σ V*`, singular values in descending order.
pub(crate) struct Svd {
    pub(crate) u: Mat,
    pub(crate) sigma: Vec<f64>,
    pub(crate) v_t: Mat,
}

pub(crate) fn svd(m: &Mat, vectors: bool) -> Svd {
    let flag = if vectors { JobSvd::Some } else { JobSvd::None };
    match to_ndarray(m).svddc(flag) {
        Ok((u, sigma, v_t)) => Svd {
            u: u.as_ref().map_or_else(|| Mat::zeros(0, 0), from_ndarray),
            sigma: sigma.to_vec(),
            v_t: v_t.as_ref().map_or_else(|| Mat::zeros(0, 0), from_ndarray),
        },
        Err(_) => {
            let fallback = m.clone().svd(vectors, vectors);
            Svd {
                u: fallback.u.unwrap_or_else(|| Mat::zeros(0, 0)),
                sigma: fallback.singular_values.iter().copied().collect(),
                v_t: fallback.v_t.unwrap_or_else(|| Mat::zeros(0, 0)),
            }
        }
    }
}

/// Singular values in descending order.
pub fn singular_values(m: &Mat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv = svd(m, false).sigma;
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Spectral norm.
pub fn op_norm(m: &Mat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

pub fn numerical_rank(m: &Mat, tol: &Tol) -> usize {
    let sv = singular_values(m);
    let Some(&top) = sv.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    let cut = tol.rank_threshold(top, m.nrows(), m.ncols());
    sv.iter().filter(|&&s| s >= cut).count()
}

/// Smallest singular value above the rank cut-off, i.e. the reduced minimum
/// modulus of the operator. Zero for the zero operator.
pub fn reduced_minimum_modulus(m: &Mat, tol: &Tol) -> f64 {
    let sv = singular_values(m);
    let Some(&top) = sv.first() else { return 0.0 };
    if top == 0.0 {
        return 0.0;
    }
    let cut = tol.rank_threshold(top, m.nrows(), m.ncols());
    sv.iter()
        .copied()
        .filter(|&s| s >= cut)
        .fold(f64::INFINITY, f64::min)
}

/// A subspace of the ambient space, stored through an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: Mat,
}

impl Subspace {
    /// Wraps a basis that is already orthonormal, checking `B*B = I`.
    pub fn from_orthonormal(basis: Mat, tol: &Tol) -> Result<Subspace> {
        if basis.ncols() == 0 || basis.ncols() > basis.nrows() {
            return Err(Error::ShapeMismatch {
                what: "subspace basis",
                expected: format!("1..={} columns", basis.nrows()),
                found: basis.ncols().to_string(),
            });
        }
        if !is_finite(&basis) {
            return Err(Error::NonFinite("subspace basis"));
        }
        let gram = basis.adjoint() * &basis;
        let defect = op_norm(&(gram - Mat::identity(basis.ncols(), basis.ncols())));
        if defect > tol.identity {
            return Err(Error::Invalid(format!(
                "basis is not orthonormal (||B*B - I|| = {defect:.3e})"
            )));
        }
        Ok(Subspace { basis })
    }

    /// Coordinate subspace spanned by the given standard basis vectors.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Subspace {
        let mut basis = Mat::zeros(ambient_dim, indices.len());
        for (col, &idx) in indices.iter().enumerate() {
            basis[(idx, col)] = c64(1.0);
        }
        Subspace { basis }
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn projection(&self) -> Mat {
        projection_matrix(self)
    }

    /// `||P_self - P_other||₂`, a basis-independent distance.
    pub fn distance(&self, other: &Subspace) -> f64 {
        if self.ambient_dim() != other.ambient_dim() {
            return f64::INFINITY;
        }
        op_norm(&(self.projection() - other.projection()))
    }

    pub fn same_as(&self, other: &Subspace, tol: &Tol) -> bool {
        self.distance(other) <= tol.identity
    }

    /// Distance of `v` from the subspace.
    pub fn residual_of(&self, v: &Vector) -> f64 {
        let proj = &self.basis * (self.basis.adjoint() * v);
        (v - proj).norm()
    }
}

/// Orthonormal basis of the column space of `vectors`.
///
/// When the columns are linearly independent the result is the Gram-Schmidt
/// basis (QR with a positive diagonal), so orientation of the input is kept.
/// Otherwise the leading left singular vectors are used, each rotated so its
/// largest entry is real and positive.
pub fn orthonormal_basis(vectors: &Mat, tol: &Tol) -> Result<Subspace> {
    let (rows, cols) = vectors.shape();
    if cols == 0 || rows == 0 {
        return Err(Error::ZeroSpan);
    }
    if !is_finite(vectors) {
        return Err(Error::NonFinite("spanning vectors"));
    }
    let svd = svd(vectors, true);
    let sigma = &svd.sigma;
    let top = sigma.iter().copied().fold(0.0, f64::max);
    // Absolute floor: columns of unit scale or smaller whose largest singular
    // value falls below the rank cut-off are treated as zero.
    if top <= tol.rank_threshold(1.0, rows, cols) {
        return Err(Error::ZeroSpan);
    }
    let cut = tol.rank_threshold(top, rows, cols);
    let kept: Vec<usize> = {
        let mut idx: Vec<usize> = (0..sigma.len()).filter(|&i| sigma[i] >= cut).collect();
        idx.sort_by(|&a, &b| sigma[b].total_cmp(&sigma[a]));
        idx
    };

    if kept.len() == cols {
        let qr = vectors.clone().qr();
        let mut q = qr.q();
        let r = qr.r();
        for j in 0..cols {
            let d = r[(j, j)];
            let modulus = d.norm();
            if modulus > 0.0 {
                let phase = d / modulus;
                let scaled = q.column(j) * phase;
                q.set_column(j, &scaled);
            }
        }
        return Ok(Subspace { basis: q });
    }

    let u = &svd.u;
    let mut basis = Mat::zeros(rows, kept.len());
    for (col, &i) in kept.iter().enumerate() {
        let mut v = u.column(i).into_owned();
        let pivot = v
            .iter()
            .copied()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .unwrap_or(c64(1.0));
        if pivot.norm() > 0.0 {
            v *= pivot.conj() / pivot.norm();
        }
        basis.set_column(col, &v);
    }
    Ok(Subspace { basis })
}

/// Orthogonal projector onto the subspace, `P = B B*`.
pub fn projection_matrix(s: &Subspace) -> Mat {
    &s.basis * s.basis.adjoint()
}

/// Moore–Penrose pseudo-inverse via the SVD; singular values below the rank
/// cut-off are treated as zero.
pub fn pseudo_inverse(m: &Mat, tol: &Tol) -> Mat {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Mat::zeros(cols, rows);
    }
    let svd = svd(m, true);
    let (u, v_t) = (&svd.u, &svd.v_t);
    let top = svd.sigma.iter().copied().fold(0.0, f64::max);
    let cut = tol.rank_threshold(top, rows, cols);
    let mut out = Mat::zeros(cols, rows);
    if top == 0.0 {
        return out;
    }
    for (i, &s) in svd.sigma.iter().enumerate() {
        if s >= cut && s > 0.0 {
            let vi = v_t.row(i).adjoint();
            let ui = u.column(i).adjoint();
            out += (vi * ui) * c64(1.0 / s);
        }
    }
    out
}

/// Inverse of a Hermitian positive definite matrix.
pub fn hpd_inverse(m: &Mat) -> Option<Mat> {
    m.clone().cholesky().map(|c| c.inverse())
}

/// `||H - H*||₂`.
pub fn hermitian_defect(h: &Mat) -> f64 {
    op_norm(&(h - h.adjoint()))
}

/// Smallest and largest eigenvalue of a Hermitian matrix.
pub fn spectral_bounds(h: &Mat, tol: &Tol) -> Result<(f64, f64)> {
    if h.nrows() != h.ncols() {
        return Err(Error::ShapeMismatch {
            what: "spectral_bounds",
            expected: "square matrix".into(),
            found: format!("{}x{}", h.nrows(), h.ncols()),
        });
    }
    if h.nrows() == 0 {
        return Err(Error::ShapeMismatch {
            what: "spectral_bounds",
            expected: "non-empty matrix".into(),
            found: "0x0".into(),
        });
    }
    if !is_finite(h) {
        return Err(Error::NonFinite("spectral_bounds"));
    }
    let asymmetry = hermitian_defect(h);
    if asymmetry > tol.identity * op_norm(h).max(1.0) {
        return Err(Error::NotHermitian { asymmetry });
    }
    let sym = (h + h.adjoint()) * c64(0.5);
    let eigenvalues: Vec<f64> = match to_ndarray(&sym).eigvalsh(UPLO::Lower) {
        Ok(values) => values.to_vec(),
        Err(_) => sym.symmetric_eigenvalues().iter().copied().collect(),
    };
    let lo = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((lo, hi))
}
