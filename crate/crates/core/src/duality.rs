//! Q-dual fusion frames.
//!
//! `(V, v)` is a Q-dual of `(W, w)` when `T_V Q T_W* = I` for a block operator
//! `Q: ⊕W_i → ⊕V_i`. This module checks that identity together with its four
//! equivalent reformulations, builds component-preserving duals out of left
//! inverses of `T_W*`, parametrizes all of those left inverses, and reports
//! the norm bounds that keep the construction well conditioned.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{
    analysis_matrix, block_offsets, check_weights, synthesis_matrix, validate, BlockOp, FusionFrame,
};
use crate::generators::random_unit_vector;
use crate::linalg::{
    c64, inner, numerical_rank, op_norm, orthonormal_basis, reduced_minimum_modulus, svd, Check,
    Mat, Subspace, Svd, Tol,
};

/// Default number of random `(f, g)` pairs used for the inner-product condition.
pub const INNER_PRODUCT_SAMPLES: usize = 32;

/// Where a left inverse came from.
#[derive(Debug, Clone, PartialEq)]
pub enum LeftInverseSource {
    /// `S⁻¹ T`.
    Canonical,
    /// `S⁻¹ T + R (I - T* S⁻¹ T)` for the stored `R`.
    Parametrized(Mat),
    Custom,
}

/// A left inverse `A` of the analysis operator, `A T* = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeftInverse {
    matrix: Mat,
    source: LeftInverseSource,
}

impl LeftInverse {
    /// Checks `||A T* - I||` against `tol.identity`, scaled by `max(1, ||A|| ||T||)`.
    pub fn new(ff: &FusionFrame, matrix: Mat, source: LeftInverseSource, tol: &Tol) -> Result<LeftInverse> {
        let n = ff.ambient_dim();
        if matrix.shape() != (n, ff.total_dim()) {
            return Err(Error::ShapeMismatch {
                what: "left inverse",
                expected: format!("{n}x{}", ff.total_dim()),
                found: format!("{}x{}", matrix.nrows(), matrix.ncols()),
            });
        }
        let t_star = analysis_matrix(ff);
        let residual = op_norm(&(&matrix * &t_star - Mat::identity(n, n)));
        let scale = (op_norm(&matrix) * op_norm(&t_star)).max(1.0);
        if residual > tol.identity * scale {
            return Err(Error::NotLeftInverse { residual });
        }
        Ok(LeftInverse { matrix, source })
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn source(&self) -> &LeftInverseSource {
        &self.source
    }

    /// Columns of `A` acting on block `i`, i.e. `A p_i` in local coordinates.
    pub fn block(&self, layout: &[usize], i: usize) -> Mat {
        let start = block_offsets(layout)[i];
        self.matrix.columns(start, layout[i]).into_owned()
    }
}

/// `S⁻¹T = (T*)⁺` and the projector `I - T* S⁻¹ T` onto `N(T)`, both read off
/// an SVD of `T` so the conditioning of `S = T T*` never enters.
fn left_inverse_parts(ff: &FusionFrame, tol: &Tol) -> Result<(Mat, Mat)> {
    let report = validate(ff, tol);
    if !report.is_fusion_frame {
        return Err(Error::NotAFusionFrame { alpha: report.alpha });
    }
    let t = synthesis_matrix(ff);
    let (n, dim) = t.shape();
    let Svd { u, sigma, v_t } = svd(&t, true);
    let v = v_t.rows(0, n).adjoint();
    let scaled = Mat::from_fn(n, n, |i, j| if i == j { c64(1.0 / sigma[i]) } else { c64(0.0) });
    let canonical = u.columns(0, n) * scaled * v.adjoint();
    let complement = Mat::identity(dim, dim) - &v * v.adjoint();
    Ok((canonical, complement))
}

/// The canonical left inverse `S⁻¹ T`.
pub fn canonical_left_inverse(ff: &FusionFrame, tol: &Tol) -> Result<LeftInverse> {
    let (canonical, _) = left_inverse_parts(ff, tol)?;
    LeftInverse::new(ff, canonical, LeftInverseSource::Canonical, tol)
}

/// `A = S⁻¹T + R (I - T* S⁻¹ T)`. Every left inverse of `T*` has this form,
/// and `R = A` reproduces `A` itself.
pub fn parametrized_left_inverse(ff: &FusionFrame, r: &Mat, tol: &Tol) -> Result<LeftInverse> {
    let n = ff.ambient_dim();
    let dim = ff.total_dim();
    if r.shape() != (n, dim) {
        return Err(Error::ShapeMismatch {
            what: "parameter R",
            expected: format!("{n}x{dim}"),
            found: format!("{}x{}", r.nrows(), r.ncols()),
        });
    }
    let (canonical, complement) = left_inverse_parts(ff, tol)?;
    let a = canonical + r * complement;
    LeftInverse::new(ff, a, LeftInverseSource::Parametrized(r.clone()), tol)
}

fn check_layouts(w: &FusionFrame, v: &FusionFrame, q: &BlockOp) -> Result<()> {
    if w.ambient_dim() != v.ambient_dim() {
        return Err(Error::LayoutMismatch(format!(
            "ambient dimensions differ: {} vs {}",
            w.ambient_dim(),
            v.ambient_dim()
        )));
    }
    if q.domain_layout() != w.layout().as_slice() {
        return Err(Error::LayoutMismatch(format!(
            "Q domain layout {:?} does not match W layout {:?}",
            q.domain_layout(),
            w.layout()
        )));
    }
    if q.codomain_layout() != v.layout().as_slice() {
        return Err(Error::LayoutMismatch(format!(
            "Q codomain layout {:?} does not match V layout {:?}",
            q.codomain_layout(),
            v.layout()
        )));
    }
    Ok(())
}

/// `||T_V Q T_W* - I|| ≤ tol.identity`.
pub fn verify_q_dual(w: &FusionFrame, v: &FusionFrame, q: &BlockOp, tol: &Tol) -> Result<Check> {
    check_layouts(w, v, q)?;
    let n = w.ambient_dim();
    let m = synthesis_matrix(v) * q.matrix() * analysis_matrix(w);
    Ok(Check::at_most(op_norm(&(m - Mat::identity(n, n))), tol.identity))
}

/// The mixed-Gram form of the duality identity: `T_A*` injective, `T_B Q`
/// surjective and `G = T_A* T_B Q` idempotent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramCondition {
    pub holds: bool,
    pub injective: bool,
    pub surjective: bool,
    /// `||G² - G||` divided by `||T_A*|| ||T_B Q||`.
    pub residual: f64,
}

/// Each of the five equivalent characterizations of Q-duality, evaluated
/// independently.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    /// `T_V Q T_W* = I`.
    pub cond1: Check,
    /// `T_W Q* T_V* = I`.
    pub cond2: Check,
    /// Mixed Gram `T_W* T_V Q` is a projection.
    pub cond3: GramCondition,
    /// Mixed Gram `T_V* T_W Q*` is a projection.
    pub cond4: GramCondition,
    /// `⟨f, g⟩ = ⟨Q T_W* f, T_V* g⟩ = ⟨Q* T_V* f, T_W* g⟩` on random pairs.
    pub cond5: Check,
    pub is_dual: bool,
    /// `(W, w)` is a `Q*`-dual of `(V, v)`.
    pub q_star_dual_of_swap: bool,
    pub w_is_fusion_frame: bool,
    pub v_is_fusion_frame: bool,
}

impl DualityReport {
    pub fn flags(&self) -> [bool; 5] {
        [
            self.cond1.holds,
            self.cond2.holds,
            self.cond3.holds,
            self.cond4.holds,
            self.cond5.holds,
        ]
    }

    /// All five conditions agree.
    pub fn consistent(&self) -> bool {
        let f = self.flags();
        f.iter().all(|&b| b == f[0])
    }
}

fn gram_condition(t_a_star: &Mat, t_b_q: &Mat, n: usize, tol: &Tol) -> GramCondition {
    let injective = numerical_rank(t_a_star, tol) == n;
    let surjective = numerical_rank(t_b_q, tol) == n;
    let g = t_a_star * t_b_q;
    let defect = op_norm(&(&g * &g - &g));
    let scale = (op_norm(t_a_star) * op_norm(t_b_q)).max(f64::MIN_POSITIVE);
    let residual = defect / scale;
    GramCondition {
        holds: injective && surjective && residual <= tol.identity,
        injective,
        surjective,
        residual,
    }
}

pub fn duality_equivalences(w: &FusionFrame, v: &FusionFrame, q: &BlockOp, tol: &Tol) -> Result<DualityReport> {
    duality_equivalences_seeded(w, v, q, tol, 0, INNER_PRODUCT_SAMPLES)
}

pub fn duality_equivalences_seeded(
    w: &FusionFrame,
    v: &FusionFrame,
    q: &BlockOp,
    tol: &Tol,
    seed: u64,
    samples: usize,
) -> Result<DualityReport> {
    check_layouts(w, v, q)?;
    let n = w.ambient_dim();
    let id = Mat::identity(n, n);
    let t_w = synthesis_matrix(w);
    let t_v = synthesis_matrix(v);
    let t_w_star = t_w.adjoint();
    let t_v_star = t_v.adjoint();
    let q_m = q.matrix();
    let q_star = q_m.adjoint();

    let cond1 = Check::at_most(op_norm(&(&t_v * q_m * &t_w_star - &id)), tol.identity);
    let cond2 = Check::at_most(op_norm(&(&t_w * &q_star * &t_v_star - &id)), tol.identity);
    let cond3 = gram_condition(&t_w_star, &(&t_v * q_m), n, tol);
    let cond4 = gram_condition(&t_v_star, &(&t_w * &q_star), n, tol);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = w.field().join(v.field());
    let mut worst: f64 = 0.0;
    for _ in 0..samples.max(1) {
        let f = random_unit_vector(&mut rng, n, field);
        let g = random_unit_vector(&mut rng, n, field);
        let direct = inner(&f, &g);
        let via_q = inner(&(q_m * (&t_w_star * &f)), &(&t_v_star * &g));
        let via_q_star = inner(&(&q_star * (&t_v_star * &f)), &(&t_w_star * &g));
        worst = worst.max((direct - via_q).norm()).max((direct - via_q_star).norm());
    }
    let cond5 = Check::at_most(worst, tol.identity);

    let swap = verify_q_dual(v, w, &q.adjoint(), tol)?;
    Ok(DualityReport {
        cond1,
        cond2,
        cond3,
        cond4,
        cond5,
        is_dual: cond1.holds,
        q_star_dual_of_swap: swap.holds,
        w_is_fusion_frame: validate(w, tol).is_fusion_frame,
        v_is_fusion_frame: validate(v, tol).is_fusion_frame,
    })
}

/// `Q p_i 𝒲 = p_i 𝒱` for every `i`: `Q` is block diagonal and each diagonal
/// block is onto its codomain block.
pub fn is_component_preserving(q: &BlockOp, w: &FusionFrame, v: &FusionFrame, tol: &Tol) -> Result<bool> {
    check_layouts(w, v, q)?;
    let k = w.len();
    if v.len() != k {
        return Err(Error::LayoutMismatch(format!(
            "W has {k} blocks but V has {}",
            v.len()
        )));
    }
    let off_tol = tol.identity * q.norm().max(1.0);
    for i in 0..k {
        for j in 0..k {
            let b = q.block(i, j);
            if i == j {
                if numerical_rank(&b, tol) != b.nrows() {
                    return Ok(false);
                }
            } else if op_norm(&b) > off_tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Q_{A,v}` written in the coordinates of a given `V`: block `i` is
/// `(1/v_i) C_i* A p_i`, `C_i` the basis of `V_i`.
pub fn q_from_left_inverse(
    w: &FusionFrame,
    v: &FusionFrame,
    a: &LeftInverse,
    weights_v: &[f64],
) -> Result<BlockOp> {
    if v.len() != w.len() {
        return Err(Error::LayoutMismatch(format!(
            "W has {} blocks but V has {}",
            w.len(),
            v.len()
        )));
    }
    if a.matrix().shape() != (w.ambient_dim(), w.total_dim()) || v.ambient_dim() != w.ambient_dim() {
        return Err(Error::LayoutMismatch("left inverse does not act on W's direct sum".into()));
    }
    check_weights(weights_v, w.len())?;
    let layout = w.layout();
    let blocks: Vec<Mat> = v
        .subspaces()
        .iter()
        .zip(weights_v)
        .enumerate()
        .map(|(i, (s, &vi))| s.basis().adjoint() * a.block(&layout, i) * c64(1.0 / vi))
        .collect();
    Ok(BlockOp::block_diagonal(&blocks))
}

/// The subspaces `A p_i 𝒲`.
pub fn block_images(w: &FusionFrame, a: &Mat, tol: &Tol) -> Result<Vec<Subspace>> {
    let layout = w.layout();
    let scale = op_norm(a);
    block_offsets(&layout)
        .into_iter()
        .zip(&layout)
        .enumerate()
        .map(|(i, (start, &d))| {
            let block = a.columns(start, d).into_owned();
            if op_norm(&block) <= tol.rank_threshold(scale, a.nrows(), a.ncols()) {
                return Err(Error::DegenerateBlock { index: i });
            }
            orthonormal_basis(&block, tol).map_err(|e| match e {
                Error::ZeroSpan => Error::DegenerateBlock { index: i },
                other => other,
            })
        })
        .collect()
}

/// The component-preserving dual `(V, v)` with `V_i = A p_i 𝒲` and its
/// operator `Q_{A,v} {f_j} = {(1/v_i) A p_i {f_j}}`.
pub fn dual_from_left_inverse(
    w: &FusionFrame,
    a: &LeftInverse,
    weights_v: &[f64],
    tol: &Tol,
) -> Result<(FusionFrame, BlockOp)> {
    check_weights(weights_v, w.len())?;
    let subspaces = block_images(w, a.matrix(), tol)?;
    let v = FusionFrame::new(subspaces, weights_v.to_vec(), w.field())?;
    let q = q_from_left_inverse(w, &v, a, weights_v)?;
    Ok((v, q))
}

/// `A = T_V Q`, the left inverse induced by a Q-dual.
pub fn left_inverse_from_dual(v: &FusionFrame, q: &BlockOp) -> Result<Mat> {
    if q.codomain_layout() != v.layout().as_slice() {
        return Err(Error::LayoutMismatch(format!(
            "Q codomain layout {:?} does not match V layout {:?}",
            q.codomain_layout(),
            v.layout()
        )));
    }
    Ok(synthesis_matrix(v) * q.matrix())
}

/// Norm bounds for the component-preserving dual built from `A` and `v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundDiagnostics {
    /// Reduced minimum modulus of each `A p_i`.
    pub gamma: Vec<f64>,
    /// `min_i v_i`.
    pub delta: f64,
    pub a_norm: f64,
    /// `||A||² / min_i (γ_i² / v_i²)`, an upper Bessel bound for `(V, v)`.
    pub bessel_bound: f64,
    /// Optimal upper bound of `(V, v)`, measured.
    pub measured_beta: f64,
    /// `||A|| / δ`.
    pub q_norm_bound: f64,
    /// `||Q_{A,v}||`, measured.
    pub q_norm: f64,
    pub q_norm_within_bound: bool,
    pub bessel_within_bound: bool,
}

pub fn bound_diagnostics(
    w: &FusionFrame,
    a: &LeftInverse,
    weights_v: &[f64],
    tol: &Tol,
) -> Result<BoundDiagnostics> {
    check_weights(weights_v, w.len())?;
    let layout = w.layout();
    let gamma: Vec<f64> = (0..w.len())
        .map(|i| reduced_minimum_modulus(&a.block(&layout, i), tol))
        .collect();
    let delta = weights_v.iter().copied().fold(f64::INFINITY, f64::min);
    let a_norm = op_norm(a.matrix());
    let bessel_delta = gamma
        .iter()
        .zip(weights_v)
        .map(|(g, v)| (g / v).powi(2))
        .fold(f64::INFINITY, f64::min);
    let bessel_bound = if bessel_delta > 0.0 {
        a_norm * a_norm / bessel_delta
    } else {
        f64::INFINITY
    };
    let q_norm_bound = a_norm / delta;
    let (v, q) = dual_from_left_inverse(w, a, weights_v, tol)?;
    let q_norm = q.norm();
    let measured_beta = validate(&v, tol).beta;
    Ok(BoundDiagnostics {
        gamma,
        delta,
        a_norm,
        bessel_bound,
        measured_beta,
        q_norm_bound,
        q_norm,
        q_norm_within_bound: q_norm <= q_norm_bound * (1.0 + tol.psd),
        bessel_within_bound: measured_beta <= bessel_bound * (1.0 + tol.psd),
    })
}
