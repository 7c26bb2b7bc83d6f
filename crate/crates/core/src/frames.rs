//! Classical vector frames.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hpd_inverse, is_finite, op_norm, spectral_bounds, Check, Field, Mat, Tol};

/// A finite family of vectors `{f_i}`, stored as the columns of a matrix.
/// Zero columns are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    vectors: Mat,
    field: Field,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub alpha: f64,
    pub beta: f64,
    pub is_frame: bool,
    /// A frame with as many vectors as dimensions is a Riesz basis.
    pub basis: bool,
}

impl Frame {
    pub fn new(vectors: Mat, field: Field) -> Result<Frame> {
        if vectors.nrows() == 0 || vectors.ncols() == 0 {
            return Err(Error::ShapeMismatch {
                what: "frame",
                expected: "at least one vector of positive dimension".into(),
                found: format!("{}x{}", vectors.nrows(), vectors.ncols()),
            });
        }
        if !is_finite(&vectors) {
            return Err(Error::NonFinite("frame vectors"));
        }
        if field == Field::Real && Field::of(&vectors) == Field::Complex {
            return Err(Error::FieldMismatch(
                "real frame has entries with non-zero imaginary part".into(),
            ));
        }
        Ok(Frame { vectors, field })
    }

    /// Frame whose field is inferred from the entries.
    pub fn from_vectors(vectors: Mat) -> Result<Frame> {
        let field = Field::of(&vectors);
        Frame::new(vectors, field)
    }

    pub fn vectors(&self) -> &Mat {
        &self.vectors
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn len(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Synthesis operator `c ↦ Σ c_i f_i`.
    pub fn synthesis(&self) -> &Mat {
        &self.vectors
    }

    /// Analysis operator `f ↦ {⟨f, f_i⟩}`.
    pub fn analysis(&self) -> Mat {
        self.vectors.adjoint()
    }

    /// Frame operator `S = T T*`.
    pub fn frame_operator(&self) -> Mat {
        &self.vectors * self.vectors.adjoint()
    }
}

/// Optimal frame bounds: the extreme eigenvalues of the frame operator.
pub fn frame_bounds(frame: &Frame, tol: &Tol) -> FrameBounds {
    let s = frame.frame_operator();
    let (alpha, beta) = spectral_bounds(&s, tol).expect("frame operator is Hermitian");
    let alpha = alpha.max(0.0);
    let threshold = frame.ambient_dim() as f64 * f64::EPSILON * beta;
    let is_frame = beta > 0.0 && alpha > threshold;
    FrameBounds {
        alpha,
        beta,
        is_frame,
        basis: is_frame && frame.len() == frame.ambient_dim(),
    }
}

/// The canonical dual `{S⁻¹ f_i}`.
pub fn canonical_dual_frame(frame: &Frame, tol: &Tol) -> Result<Frame> {
    let bounds = frame_bounds(frame, tol);
    if !bounds.is_frame {
        return Err(Error::NotAFrame {
            alpha: bounds.alpha,
        });
    }
    let s_inv = hpd_inverse(&frame.frame_operator()).ok_or(Error::NotAFrame {
        alpha: bounds.alpha,
    })?;
    Frame::new(s_inv * frame.vectors(), frame.field())
}

/// Checks the reconstruction `f = Σ ⟨f, f_i⟩ g_i`, i.e. `||T_G T_F* - I|| ≤ tol`.
pub fn dual_pair_check(f: &Frame, g: &Frame, tol: &Tol) -> Result<Check> {
    if f.ambient_dim() != g.ambient_dim() || f.len() != g.len() {
        return Err(Error::ShapeMismatch {
            what: "dual pair",
            expected: format!("{} vectors in dimension {}", f.len(), f.ambient_dim()),
            found: format!("{} vectors in dimension {}", g.len(), g.ambient_dim()),
        });
    }
    let n = f.ambient_dim();
    let residual = op_norm(&(g.synthesis() * f.analysis() - Mat::identity(n, n)));
    Ok(Check::at_most(residual, tol.identity))
}

pub fn is_dual_pair(f: &Frame, g: &Frame, tol: &Tol) -> Result<bool> {
    dual_pair_check(f, g, tol).map(|c| c.holds)
}
