//! JSON file formats for frames, fusion frames, local-frame systems and
//! block operators.
//!
//! Vectors are lists of scalars; a list of vectors (`vectors`, `basis`,
//! `local_frame`) holds one vector per entry. Matrices (`entries`, `R`) are
//! row-major. A scalar is either a bare number or a `[re, im]` pair. Files
//! tagged `"field": "real"` are written with bare numbers and reject entries
//! with a non-zero imaginary part.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::duality::{canonical_left_inverse, parametrized_left_inverse, q_from_left_inverse};
use crate::error::{Error, Result};
use crate::frames::Frame;
use crate::fusion::{BlockOp, FusionFrame};
use crate::linalg::{Field, Mat, Tol, C64};
use crate::local_lift::LocalFrameSystem;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl Scalar {
    fn value(self) -> C64 {
        match self {
            Scalar::Real(x) => C64::new(x, 0.0),
            Scalar::Complex([re, im]) => C64::new(re, im),
        }
    }

    fn encode(z: C64, field: Field) -> Scalar {
        match field {
            Field::Real => Scalar::Real(z.re),
            Field::Complex => Scalar::Complex([z.re, z.im]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameFile {
    pub dim: usize,
    #[serde(default)]
    pub field: Field,
    pub vectors: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubspaceEntry {
    pub basis: Vec<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_frame: Option<Vec<Vec<Scalar>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FusionFrameFile {
    pub dim: usize,
    #[serde(default)]
    pub field: Field,
    pub subspaces: Vec<SubspaceEntry>,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QFile {
    Matrix {
        domain_layout: Vec<usize>,
        codomain_layout: Vec<usize>,
        entries: Vec<Vec<Scalar>>,
    },
    Canonical,
    LeftInverse {
        #[serde(rename = "R")]
        r: Vec<Vec<Scalar>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights_v: Option<Vec<f64>>,
    },
}

fn check_field(z: C64, field: Field, path: &str) -> Result<C64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Invalid(format!("{path}: non-finite entry")));
    }
    if field == Field::Real && z.im != 0.0 {
        return Err(Error::FieldMismatch(format!(
            "{path}: complex entry in a real-field file"
        )));
    }
    Ok(z)
}

/// A list of vectors of length `dim` as the columns of a matrix.
fn columns_from(vectors: &[Vec<Scalar>], dim: usize, field: Field, path: &str) -> Result<Mat> {
    if vectors.is_empty() {
        return Err(Error::Invalid(format!("{path}: at least one vector is required")));
    }
    let mut m = Mat::zeros(dim, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::Invalid(format!(
                "{path}[{j}]: expected {dim} entries, found {}",
                v.len()
            )));
        }
        for (i, s) in v.iter().enumerate() {
            m[(i, j)] = check_field(s.value(), field, &format!("{path}[{j}][{i}]"))?;
        }
    }
    Ok(m)
}

fn columns_to(m: &Mat, field: Field) -> Vec<Vec<Scalar>> {
    m.column_iter()
        .map(|c| c.iter().map(|&z| Scalar::encode(z, field)).collect())
        .collect()
}

/// Row-major matrix; `cols` is inferred from the first row when `None`.
fn rows_from(rows: &[Vec<Scalar>], nrows: usize, ncols: Option<usize>, path: &str) -> Result<Mat> {
    if rows.len() != nrows {
        return Err(Error::Invalid(format!(
            "{path}: expected {nrows} rows, found {}",
            rows.len()
        )));
    }
    let ncols = ncols.unwrap_or_else(|| rows.first().map_or(0, Vec::len));
    let mut m = Mat::zeros(nrows, ncols);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != ncols {
            return Err(Error::Invalid(format!(
                "{path}[{i}]: expected {ncols} entries, found {}",
                r.len()
            )));
        }
        for (j, s) in r.iter().enumerate() {
            m[(i, j)] = check_field(s.value(), Field::Complex, &format!("{path}[{i}][{j}]"))?;
        }
    }
    Ok(m)
}

fn rows_to(m: &Mat, field: Field) -> Vec<Vec<Scalar>> {
    m.row_iter()
        .map(|r| r.iter().map(|&z| Scalar::encode(z, field)).collect())
        .collect()
}

impl FrameFile {
    pub fn to_frame(&self) -> Result<Frame> {
        if self.dim == 0 {
            return Err(Error::Invalid("dim: must be positive".into()));
        }
        Frame::new(columns_from(&self.vectors, self.dim, self.field, "vectors")?, self.field)
    }

    pub fn from_frame(frame: &Frame) -> FrameFile {
        FrameFile {
            dim: frame.ambient_dim(),
            field: frame.field(),
            vectors: columns_to(frame.vectors(), frame.field()),
        }
    }
}

impl FusionFrameFile {
    fn check_header(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Invalid("dim: must be positive".into()));
        }
        if self.subspaces.is_empty() {
            return Err(Error::Invalid("subspaces: at least one subspace is required".into()));
        }
        if self.weights.len() != self.subspaces.len() {
            return Err(Error::Invalid(format!(
                "weights: expected {} entries, found {}",
                self.subspaces.len(),
                self.weights.len()
            )));
        }
        if let Some((i, w)) = self
            .weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(Error::WeightError(format!("weights[{i}] = {w}")));
        }
        Ok(())
    }

    fn spanning_sets(&self) -> Result<Vec<Mat>> {
        self.subspaces
            .iter()
            .enumerate()
            .map(|(i, s)| columns_from(&s.basis, self.dim, self.field, &format!("subspaces[{i}].basis")))
            .collect()
    }

    /// Orthonormalizes each basis; `d_i` is the numerical rank of the given vectors.
    pub fn to_fusion_frame(&self, tol: &Tol) -> Result<FusionFrame> {
        self.check_header()?;
        let spanning = self.spanning_sets()?;
        for (i, m) in spanning.iter().enumerate() {
            crate::linalg::orthonormal_basis(m, tol)
                .map_err(|e| Error::Invalid(format!("subspaces[{i}].basis: {e}")))?;
        }
        FusionFrame::from_spanning_sets(&spanning, self.weights.clone(), self.field, tol)
    }

    pub fn has_local_frames(&self) -> bool {
        self.subspaces.iter().all(|s| s.local_frame.is_some())
    }

    pub fn to_local_system(&self, tol: &Tol) -> Result<LocalFrameSystem> {
        let fusion = self.to_fusion_frame(tol)?;
        let locals = self
            .subspaces
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let lf = s
                    .local_frame
                    .as_ref()
                    .ok_or_else(|| Error::Invalid(format!("subspaces[{i}].local_frame: missing local frames")))?;
                columns_from(lf, self.dim, self.field, &format!("subspaces[{i}].local_frame"))
            })
            .collect::<Result<Vec<_>>>()?;
        LocalFrameSystem::new(fusion, locals, tol)
    }

    pub fn from_fusion_frame(ff: &FusionFrame) -> FusionFrameFile {
        FusionFrameFile {
            dim: ff.ambient_dim(),
            field: ff.field(),
            subspaces: ff
                .subspaces()
                .iter()
                .map(|s| SubspaceEntry {
                    basis: columns_to(s.basis(), ff.field()),
                    local_frame: None,
                })
                .collect(),
            weights: ff.weights().to_vec(),
        }
    }

    pub fn from_local_system(sys: &LocalFrameSystem) -> FusionFrameFile {
        let mut file = FusionFrameFile::from_fusion_frame(sys.fusion());
        for (entry, f) in file.subspaces.iter_mut().zip(sys.local_frames()) {
            entry.local_frame = Some(columns_to(f.vectors(), sys.fusion().field()));
        }
        file
    }
}

impl QFile {
    pub fn from_block_op(q: &BlockOp, field: Field) -> QFile {
        QFile::Matrix {
            domain_layout: q.domain_layout().to_vec(),
            codomain_layout: q.codomain_layout().to_vec(),
            entries: rows_to(q.matrix(), field),
        }
    }

    /// Materializes `Q: ⊕W_i → ⊕V_i`. The `canonical` and `left_inverse`
    /// kinds are expressed in the coordinates of the given `V`.
    pub fn resolve(&self, w: &FusionFrame, v: &FusionFrame, tol: &Tol) -> Result<BlockOp> {
        match self {
            QFile::Matrix {
                domain_layout,
                codomain_layout,
                entries,
            } => {
                let rows: usize = codomain_layout.iter().sum();
                let cols: usize = domain_layout.iter().sum();
                let m = rows_from(entries, rows, Some(cols), "entries")?;
                BlockOp::new(domain_layout.clone(), codomain_layout.clone(), m)
            }
            QFile::Canonical => {
                let a = canonical_left_inverse(w, tol)?;
                q_from_left_inverse(w, v, &a, w.weights())
            }
            QFile::LeftInverse { r, weights_v } => {
                let r = rows_from(r, w.ambient_dim(), Some(w.total_dim()), "R")?;
                let a = parametrized_left_inverse(w, &r, tol)?;
                let weights = weights_v.clone().unwrap_or_else(|| v.weights().to_vec());
                q_from_left_inverse(w, v, &a, &weights)
            }
        }
    }
}

/// Reads a row-major real or complex matrix, e.g. a parameter `R`.
pub fn matrix_from_rows(rows: &[Vec<Scalar>]) -> Result<Mat> {
    rows_from(rows, rows.len(), None, "matrix")
}

pub fn matrix_to_rows(m: &Mat, field: Field) -> Vec<Vec<Scalar>> {
    rows_to(m, field)
}

pub fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("file models serialize infallibly")
}

pub fn load_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    from_json_str(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn save_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    let mut text = to_json_string(value);
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
