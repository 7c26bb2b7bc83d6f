//! Fusion frames and the operators on their direct-sum space `⊕ W_i`.
//!
//! Elements of the direct sum are stored in local coordinates: block `i` holds
//! the coefficients of `f_i ∈ W_i` with respect to the orthonormal basis kept
//! for `W_i`. With that convention the synthesis operator is a plain matrix
//! and the block projection `p_i` is a coordinate mask.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::random_vector;
use crate::linalg::{
    c64, hpd_inverse, is_finite, numerical_rank, op_norm, orthonormal_basis, pseudo_inverse,
    spectral_bounds, Field, Mat, Subspace, Tol, Vector,
};

/// A weighted family of subspaces `{(W_i, w_i)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionFrame {
    ambient_dim: usize,
    subspaces: Vec<Subspace>,
    weights: Vec<f64>,
    field: Field,
}

impl FusionFrame {
    pub fn new(subspaces: Vec<Subspace>, weights: Vec<f64>, field: Field) -> Result<FusionFrame> {
        let Some(first) = subspaces.first() else {
            return Err(Error::Invalid("a fusion frame needs at least one subspace".into()));
        };
        let ambient_dim = first.ambient_dim();
        if let Some((i, s)) = subspaces
            .iter()
            .enumerate()
            .find(|(_, s)| s.ambient_dim() != ambient_dim)
        {
            return Err(Error::ShapeMismatch {
                what: "subspace ambient dimension",
                expected: ambient_dim.to_string(),
                found: format!("{} (subspace {i})", s.ambient_dim()),
            });
        }
        check_weights(&weights, subspaces.len())?;
        if field == Field::Real && subspaces.iter().any(|s| Field::of(s.basis()) == Field::Complex) {
            return Err(Error::FieldMismatch(
                "real fusion frame has a complex subspace basis".into(),
            ));
        }
        Ok(FusionFrame {
            ambient_dim,
            subspaces,
            weights,
            field,
        })
    }

    /// Builds each `W_i` as the span of the given (not necessarily orthonormal) vectors.
    pub fn from_spanning_sets(
        spanning: &[Mat],
        weights: Vec<f64>,
        field: Field,
        tol: &Tol,
    ) -> Result<FusionFrame> {
        let subspaces = spanning
            .iter()
            .map(|m| orthonormal_basis(m, tol))
            .collect::<Result<Vec<_>>>()?;
        FusionFrame::new(subspaces, weights, field)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of subspaces.
    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    /// Block dimensions `d_i = dim W_i`.
    pub fn layout(&self) -> Vec<usize> {
        self.subspaces.iter().map(Subspace::dim).collect()
    }

    /// Dimension of the direct sum, `Σ d_i`.
    pub fn total_dim(&self) -> usize {
        self.subspaces.iter().map(Subspace::dim).sum()
    }

    /// Same subspaces with new weights.
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<FusionFrame> {
        FusionFrame::new(self.subspaces.clone(), weights, self.field)
    }
}

pub(crate) fn check_weights(weights: &[f64], k: usize) -> Result<()> {
    if weights.len() != k {
        return Err(Error::ShapeMismatch {
            what: "weights",
            expected: format!("{k} weights"),
            found: weights.len().to_string(),
        });
    }
    if let Some((i, w)) = weights
        .iter()
        .enumerate()
        .find(|(_, w)| !(w.is_finite() && **w > 0.0))
    {
        return Err(Error::WeightError(format!("weight {i} is {w}")));
    }
    Ok(())
}

/// Start offset of every block in the stacked coordinate vector.
pub fn block_offsets(layout: &[usize]) -> Vec<usize> {
    layout
        .iter()
        .scan(0, |acc, &d| {
            let start = *acc;
            *acc += d;
            Some(start)
        })
        .collect()
}

/// An element of a direct-sum space, one coordinate vector per block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockVec {
    blocks: Vec<Vector>,
}

impl BlockVec {
    pub fn new(blocks: Vec<Vector>) -> BlockVec {
        BlockVec { blocks }
    }

    pub fn zeros(layout: &[usize]) -> BlockVec {
        BlockVec {
            blocks: layout.iter().map(|&d| Vector::zeros(d)).collect(),
        }
    }

    pub fn from_stacked(layout: &[usize], stacked: &Vector) -> Result<BlockVec> {
        let total: usize = layout.iter().sum();
        if stacked.len() != total {
            return Err(Error::ShapeMismatch {
                what: "stacked block vector",
                expected: total.to_string(),
                found: stacked.len().to_string(),
            });
        }
        let blocks = block_offsets(layout)
            .into_iter()
            .zip(layout)
            .map(|(start, &d)| stacked.rows(start, d).into_owned())
            .collect();
        Ok(BlockVec { blocks })
    }

    pub fn blocks(&self) -> &[Vector] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &Vector {
        &self.blocks[i]
    }

    pub fn layout(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    pub fn stacked(&self) -> Vector {
        let total = self.blocks.iter().map(|b| b.len()).sum();
        Vector::from_iterator(total, self.blocks.iter().flat_map(|b| b.iter().copied()))
    }

    /// Norm in the direct sum, `(Σ ||f_i||²)^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(|b| b.norm_squared()).sum::<f64>().sqrt()
    }
}

/// A linear map between two direct-sum spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOp {
    domain_layout: Vec<usize>,
    codomain_layout: Vec<usize>,
    matrix: Mat,
}

impl BlockOp {
    pub fn new(domain_layout: Vec<usize>, codomain_layout: Vec<usize>, matrix: Mat) -> Result<BlockOp> {
        let rows: usize = codomain_layout.iter().sum();
        let cols: usize = domain_layout.iter().sum();
        if matrix.shape() != (rows, cols) {
            return Err(Error::LayoutMismatch(format!(
                "matrix is {}x{} but layouts require {rows}x{cols}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if !is_finite(&matrix) {
            return Err(Error::NonFinite("block operator"));
        }
        Ok(BlockOp {
            domain_layout,
            codomain_layout,
            matrix,
        })
    }

    pub fn identity(layout: &[usize]) -> BlockOp {
        let n = layout.iter().sum();
        BlockOp {
            domain_layout: layout.to_vec(),
            codomain_layout: layout.to_vec(),
            matrix: Mat::identity(n, n),
        }
    }

    pub fn zeros(domain_layout: &[usize], codomain_layout: &[usize]) -> BlockOp {
        BlockOp {
            domain_layout: domain_layout.to_vec(),
            codomain_layout: codomain_layout.to_vec(),
            matrix: Mat::zeros(codomain_layout.iter().sum(), domain_layout.iter().sum()),
        }
    }

    /// Block-diagonal operator; block `i` maps domain block `i` to codomain block `i`.
    pub fn block_diagonal(blocks: &[Mat]) -> BlockOp {
        let domain_layout: Vec<usize> = blocks.iter().map(|b| b.ncols()).collect();
        let codomain_layout: Vec<usize> = blocks.iter().map(|b| b.nrows()).collect();
        let mut matrix = Mat::zeros(codomain_layout.iter().sum(), domain_layout.iter().sum());
        let rows = block_offsets(&codomain_layout);
        let cols = block_offsets(&domain_layout);
        for (i, b) in blocks.iter().enumerate() {
            matrix.view_mut((rows[i], cols[i]), b.shape()).copy_from(b);
        }
        BlockOp {
            domain_layout,
            codomain_layout,
            matrix,
        }
    }

    /// The coordinate projection `p_i` on a direct sum.
    pub fn block_projection(layout: &[usize], i: usize) -> BlockOp {
        let n = layout.iter().sum();
        let start = block_offsets(layout)[i];
        let mut matrix = Mat::zeros(n, n);
        for j in start..start + layout[i] {
            matrix[(j, j)] = c64(1.0);
        }
        BlockOp {
            domain_layout: layout.to_vec(),
            codomain_layout: layout.to_vec(),
            matrix,
        }
    }

    pub fn domain_layout(&self) -> &[usize] {
        &self.domain_layout
    }

    pub fn codomain_layout(&self) -> &[usize] {
        &self.codomain_layout
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    /// Block `(i, j)`: the part mapping domain block `j` into codomain block `i`.
    pub fn block(&self, i: usize, j: usize) -> Mat {
        let rows = block_offsets(&self.codomain_layout)[i];
        let cols = block_offsets(&self.domain_layout)[j];
        self.matrix
            .view((rows, cols), (self.codomain_layout[i], self.domain_layout[j]))
            .into_owned()
    }

    pub fn adjoint(&self) -> BlockOp {
        BlockOp {
            domain_layout: self.codomain_layout.clone(),
            codomain_layout: self.domain_layout.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn apply(&self, x: &BlockVec) -> Result<BlockVec> {
        if x.layout() != self.domain_layout {
            return Err(Error::LayoutMismatch(format!(
                "vector layout {:?} does not match operator domain {:?}",
                x.layout(),
                self.domain_layout
            )));
        }
        BlockVec::from_stacked(&self.codomain_layout, &(&self.matrix * x.stacked()))
    }

    pub fn norm(&self) -> f64 {
        op_norm(&self.matrix)
    }

    pub fn scaled(&self, factor: f64) -> BlockOp {
        BlockOp {
            domain_layout: self.domain_layout.clone(),
            codomain_layout: self.codomain_layout.clone(),
            matrix: &self.matrix * c64(factor),
        }
    }
}

/// Summary of a fusion frame's bounds and classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FusionReport {
    pub alpha: f64,
    pub beta: f64,
    pub is_fusion_frame: bool,
    pub is_tight: bool,
    pub is_parseval: bool,
    pub is_uniform: bool,
}

/// Synthesis operator: block `i` of columns is `w_i · basis(W_i)`.
pub fn synthesis_matrix(ff: &FusionFrame) -> Mat {
    let mut t = Mat::zeros(ff.ambient_dim(), ff.total_dim());
    let offsets = block_offsets(&ff.layout());
    for ((s, &w), start) in ff.subspaces().iter().zip(ff.weights()).zip(offsets) {
        t.view_mut((0, start), (ff.ambient_dim(), s.dim()))
            .copy_from(&(s.basis() * c64(w)));
    }
    t
}

/// Analysis operator `T*` as a matrix.
pub fn analysis_matrix(ff: &FusionFrame) -> Mat {
    synthesis_matrix(ff).adjoint()
}

fn check_ambient(ff: &FusionFrame, f: &Vector) -> Result<()> {
    if f.len() != ff.ambient_dim() {
        return Err(Error::ShapeMismatch {
            what: "ambient vector",
            expected: ff.ambient_dim().to_string(),
            found: f.len().to_string(),
        });
    }
    Ok(())
}

/// `T* f = {w_i π_{W_i} f}`, in local coordinates.
pub fn analysis(ff: &FusionFrame, f: &Vector) -> Result<BlockVec> {
    check_ambient(ff, f)?;
    Ok(BlockVec::new(
        ff.subspaces()
            .iter()
            .zip(ff.weights())
            .map(|(s, &w)| s.basis().adjoint() * f * c64(w))
            .collect(),
    ))
}

/// `T {f_i} = Σ w_i f_i`.
pub fn synthesize(ff: &FusionFrame, x: &BlockVec) -> Result<Vector> {
    if x.layout() != ff.layout() {
        return Err(Error::LayoutMismatch(format!(
            "block vector layout {:?} does not match fusion frame layout {:?}",
            x.layout(),
            ff.layout()
        )));
    }
    let mut out = Vector::zeros(ff.ambient_dim());
    for ((s, &w), b) in ff.subspaces().iter().zip(ff.weights()).zip(x.blocks()) {
        out += s.basis() * b * c64(w);
    }
    Ok(out)
}

/// `S = Σ w_i² P_{W_i}`.
pub fn frame_operator(ff: &FusionFrame) -> Mat {
    let n = ff.ambient_dim();
    ff.subspaces()
        .iter()
        .zip(ff.weights())
        .fold(Mat::zeros(n, n), |acc, (s, &w)| acc + s.projection() * c64(w * w))
}

/// Bounds and flags of a weighted family of subspaces.
///
/// `is_fusion_frame` is decided by full row rank of the synthesis matrix. A
/// family that fails it is a Bessel fusion sequence with bound `beta`.
pub fn validate(ff: &FusionFrame, tol: &Tol) -> FusionReport {
    let n = ff.ambient_dim();
    let s = frame_operator(ff);
    let (alpha, beta) = spectral_bounds(&s, tol).expect("frame operator is Hermitian");
    let alpha = alpha.max(0.0);
    let is_fusion_frame = numerical_rank(&synthesis_matrix(ff), tol) == n;
    let is_tight = is_fusion_frame && beta - alpha <= tol.identity * beta;
    let parseval_defect = op_norm(&(&s - Mat::identity(n, n)));
    let is_parseval = is_tight && parseval_defect <= tol.identity;
    let w0 = ff.weights()[0];
    let is_uniform = ff
        .weights()
        .iter()
        .all(|&w| (w - w0).abs() <= tol.identity * w0);
    FusionReport {
        alpha,
        beta,
        is_fusion_frame,
        is_tight,
        is_parseval,
        is_uniform,
    }
}

/// `S⁻¹`, or `NotAFusionFrame` when the family has no positive lower bound.
pub fn inverse_frame_operator(ff: &FusionFrame, tol: &Tol) -> Result<Mat> {
    let report = validate(ff, tol);
    if !report.is_fusion_frame {
        return Err(Error::NotAFusionFrame {
            alpha: report.alpha,
        });
    }
    hpd_inverse(&frame_operator(ff)).ok_or(Error::NotAFusionFrame {
        alpha: report.alpha,
    })
}

/// The canonical dual `(S⁻¹W, w)` together with the block-diagonal `Q`
/// sending `{f_i}` to `{S⁻¹ f_i}`.
pub fn canonical_dual(ff: &FusionFrame, tol: &Tol) -> Result<(FusionFrame, BlockOp)> {
    let s_inv = inverse_frame_operator(ff, tol)?;
    let mut subspaces = Vec::with_capacity(ff.len());
    let mut blocks = Vec::with_capacity(ff.len());
    for w_i in ff.subspaces() {
        let image = &s_inv * w_i.basis();
        let v_i = orthonormal_basis(&image, tol)?;
        blocks.push(v_i.basis().adjoint() * &image);
        subspaces.push(v_i);
    }
    let dual = FusionFrame::new(subspaces, ff.weights().to_vec(), ff.field())?;
    Ok((dual, BlockOp::block_diagonal(&blocks)))
}

/// Fusion frame coefficients `T* S⁻¹ f`.
pub fn fusion_coefficients(ff: &FusionFrame, f: &Vector, tol: &Tol) -> Result<BlockVec> {
    check_ambient(ff, f)?;
    let s_inv = inverse_frame_operator(ff, tol)?;
    analysis(ff, &(s_inv * f))
}

/// Result of sampling preimages of `f` under the synthesis operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinimalNormReport {
    pub holds: bool,
    pub trials: usize,
    pub violations: usize,
    pub coefficient_norm: f64,
    /// Smallest `||c + z|| - ||c||` over all sampled null-space directions `z`.
    pub worst_margin: f64,
}

/// Checks that the fusion frame coefficients have the smallest norm among
/// sampled preimages `c + z`, `z ∈ N(T)`.
pub fn minimal_norm_report(
    ff: &FusionFrame,
    f: &Vector,
    trials: usize,
    seed: u64,
    tol: &Tol,
) -> Result<MinimalNormReport> {
    if trials == 0 {
        return Err(Error::Invalid("at least one trial is required".into()));
    }
    let coeffs = fusion_coefficients(ff, f, tol)?.stacked();
    let t = synthesis_matrix(ff);
    let dim = t.ncols();
    let null_projector = Mat::identity(dim, dim) - pseudo_inverse(&t, tol) * &t;
    let c_norm = coeffs.norm();
    let slack = tol.psd * c_norm.max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for _ in 0..trials {
        let g = random_vector(&mut rng, dim, ff.field());
        let scale = 10f64.powf(rng.random_range(-3.0..1.0)) * c_norm.max(1.0);
        let z = &null_projector * g * c64(scale);
        let margin = (&coeffs + z).norm() - c_norm;
        worst = worst.min(margin);
        if margin < -slack {
            violations += 1;
        }
    }
    Ok(MinimalNormReport {
        holds: violations == 0,
        trials,
        violations,
        coefficient_norm: c_norm,
        worst_margin: worst,
    })
}

pub fn verify_minimal_norm(
    ff: &FusionFrame,
    f: &Vector,
    trials: usize,
    seed: u64,
    tol: &Tol,
) -> Result<bool> {
    minimal_norm_report(ff, f, trials, seed, tol).map(|r| r.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{real_columns, real_matrix, real_vector};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn tol() -> Tol {
        Tol::default()
    }

    fn coordinate_basis(n: usize, w: &[f64]) -> FusionFrame {
        let subspaces = (0..n).map(|i| Subspace::coordinate(n, &[i])).collect();
        FusionFrame::new(subspaces, w.to_vec(), Field::Real).unwrap()
    }

    /// `span e₁`, `span e₂`, `span (1,1)/√2` in ℝ², all weights 1.
    fn three_lines() -> FusionFrame {
        FusionFrame::from_spanning_sets(
            &[
                real_columns(&[&[1.0, 0.0]]),
                real_columns(&[&[0.0, 1.0]]),
                real_columns(&[&[1.0, 1.0]]),
            ],
            vec![1.0; 3],
            Field::Real,
            &tol(),
        )
        .unwrap()
    }

    #[test]
    fn rejects_non_positive_weights() {
        let s = vec![Subspace::coordinate(2, &[0]), Subspace::coordinate(2, &[1])];
        assert!(matches!(
            FusionFrame::new(s.clone(), vec![1.0, 0.0], Field::Real),
            Err(Error::WeightError(_))
        ));
        assert!(matches!(
            FusionFrame::new(s, vec![1.0, -2.0], Field::Real),
            Err(Error::WeightError(_))
        ));
    }

    #[test]
    fn synthesis_matrix_examples() {
        assert_eq!(synthesis_matrix(&coordinate_basis(2, &[1.0, 1.0])), Mat::identity(2, 2));
        assert_eq!(
            synthesis_matrix(&coordinate_basis(2, &[2.0, 3.0])),
            real_matrix(2, 2, &[2.0, 0.0, 0.0, 3.0])
        );
        let h = FRAC_1_SQRT_2;
        let expected = real_matrix(2, 3, &[1.0, 0.0, h, 0.0, 1.0, h]);
        assert!((synthesis_matrix(&three_lines()) - expected).norm() < 1e-15);
    }

    #[test]
    fn analysis_examples() {
        let onb = coordinate_basis(3, &[1.0; 3]);
        let a = analysis(&onb, &real_vector(&[1.0, 0.0, 0.0])).unwrap();
        assert_eq!(a.stacked(), real_vector(&[1.0, 0.0, 0.0]));

        let a = analysis(&three_lines(), &real_vector(&[1.0, 0.0])).unwrap();
        let expected = real_vector(&[1.0, 0.0, FRAC_1_SQRT_2]);
        assert!((a.stacked() - expected).norm() < 1e-15);

        let zero = analysis(&three_lines(), &Vector::zeros(2)).unwrap();
        assert_eq!(zero, BlockVec::zeros(&[1, 1, 1]));

        assert!(matches!(
            analysis(&three_lines(), &Vector::zeros(3)),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn frame_operator_examples() {
        assert!((frame_operator(&coordinate_basis(3, &[1.0; 3])) - Mat::identity(3, 3)).norm() < 1e-15);
        let expected = real_matrix(2, 2, &[1.5, 0.5, 0.5, 1.5]);
        assert!((frame_operator(&three_lines()) - expected).norm() < 1e-15);
    }

    #[test]
    fn validate_examples() {
        let r = validate(&coordinate_basis(2, &[1.0, 1.0]), &tol());
        assert!(r.is_fusion_frame && r.is_tight && r.is_parseval && r.is_uniform);
        assert_eq!((r.alpha, r.beta), (1.0, 1.0));

        let r = validate(&three_lines(), &tol());
        assert!((r.alpha - 1.0).abs() < 1e-14 && (r.beta - 2.0).abs() < 1e-14);
        assert!(r.is_fusion_frame && !r.is_tight && !r.is_parseval && r.is_uniform);

        let r = validate(&coordinate_basis(2, &[2.0, 3.0]), &tol());
        assert!(!r.is_uniform && !r.is_tight);
    }

    #[test]
    fn bessel_only_family_reports_upper_bound() {
        let ff = FusionFrame::new(vec![Subspace::coordinate(3, &[0, 1])], vec![2.0], Field::Real).unwrap();
        let r = validate(&ff, &tol());
        assert!(!r.is_fusion_frame);
        assert!((r.beta - 4.0).abs() < 1e-14);
        assert!(matches!(canonical_dual(&ff, &tol()), Err(Error::NotAFusionFrame { .. })));
    }

    #[test]
    fn canonical_dual_of_parseval_is_itself() {
        let ff = coordinate_basis(3, &[1.0; 3]);
        let (dual, q) = canonical_dual(&ff, &tol()).unwrap();
        for (a, b) in ff.subspaces().iter().zip(dual.subspaces()) {
            assert!(a.distance(b) < 1e-15);
        }
        assert!((q.matrix() - Mat::identity(3, 3)).norm() < 1e-15);
    }

    #[test]
    fn canonical_dual_of_three_lines() {
        let (dual, q) = canonical_dual(&three_lines(), &tol()).unwrap();
        // S⁻¹ = [[0.75, -0.25], [-0.25, 0.75]], so S⁻¹e₁ ∝ (3, -1).
        let expected = orthonormal_basis(&real_columns(&[&[3.0, -1.0]]), &tol()).unwrap();
        assert!(dual.subspaces()[0].distance(&expected) < 1e-14);
        let t_w = analysis_matrix(&three_lines());
        let t_v = synthesis_matrix(&dual);
        let residual = op_norm(&(t_v * q.matrix() * t_w - Mat::identity(2, 2)));
        assert!(residual < 1e-14);
    }

    #[test]
    fn fusion_coefficients_of_three_lines() {
        let c = fusion_coefficients(&three_lines(), &real_vector(&[1.0, 0.0]), &tol()).unwrap();
        let expected = analysis(&three_lines(), &real_vector(&[0.75, -0.25])).unwrap();
        assert!((c.stacked() - expected.stacked()).norm() < 1e-15);
        let back = synthesize(&three_lines(), &c).unwrap();
        assert!((back - real_vector(&[1.0, 0.0])).norm() < 1e-14);
    }

    #[test]
    fn fusion_coefficients_on_parseval_equal_analysis() {
        let ff = coordinate_basis(3, &[1.0; 3]);
        let f = real_vector(&[1.0, -2.0, 0.5]);
        let c = fusion_coefficients(&ff, &f, &tol()).unwrap();
        assert_eq!(c, analysis(&ff, &f).unwrap());
    }

    #[test]
    fn minimal_norm_examples() {
        let onb = coordinate_basis(3, &[1.0; 3]);
        let r = minimal_norm_report(&onb, &real_vector(&[1.0, 2.0, 3.0]), 20, 7, &tol()).unwrap();
        assert!(r.holds);
        assert!(r.worst_margin.abs() < 1e-14);

        let r = minimal_norm_report(&three_lines(), &real_vector(&[1.0, 0.0]), 100, 11, &tol()).unwrap();
        assert!(r.holds && r.worst_margin > 0.0);
    }

    #[test]
    fn block_op_blocks_and_adjoint() {
        let q = BlockOp::block_diagonal(&[real_matrix(1, 2, &[1.0, 2.0]), real_matrix(2, 1, &[3.0, 4.0])]);
        assert_eq!(q.domain_layout(), &[2, 1]);
        assert_eq!(q.codomain_layout(), &[1, 2]);
        assert_eq!(q.block(1, 1), real_matrix(2, 1, &[3.0, 4.0]));
        assert_eq!(q.block(0, 1), Mat::zeros(1, 1));
        let adj = q.adjoint();
        assert_eq!(adj.block(0, 0), real_matrix(2, 1, &[1.0, 2.0]));
        let p = BlockOp::block_projection(&[2, 1], 1);
        let x = BlockVec::new(vec![real_vector(&[1.0, 2.0]), real_vector(&[3.0])]);
        assert_eq!(p.apply(&x).unwrap().stacked(), real_vector(&[0.0, 0.0, 3.0]));
        assert!(BlockOp::new(vec![1], vec![1], Mat::zeros(2, 1)).is_err());
    }
}
