//! Dual fusion frames lifted from local frames.
//!
//! Given frames `{f_i^l}_l` for each `W_i` and `{f̃_i^l}_l` for each `V_i`,
//! the block-diagonal operator `Q{h_i} = {Σ_l ⟨h_i, f_i^l⟩ f̃_i^l}` makes
//! `(V, v)` a Q-dual of `(W, w)` exactly when the weighted global families
//! `{w_i f_i^l}` and `{v_i f̃_i^l}` are dual frames.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{dual_pair_check, Frame};
use crate::fusion::{BlockOp, BlockVec, FusionFrame};
use crate::linalg::{c64, numerical_rank, orthonormal_basis, spectral_bounds, Check, Field, Mat, Tol};

/// A fusion frame together with a frame for each of its subspaces.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalFrameSystem {
    fusion: FusionFrame,
    local_frames: Vec<Frame>,
    bounds: Vec<(f64, f64)>,
}

impl LocalFrameSystem {
    /// Local frame vectors are given in ambient coordinates and must lie in
    /// their subspace and span it.
    pub fn new(fusion: FusionFrame, local_frames: Vec<Mat>, tol: &Tol) -> Result<LocalFrameSystem> {
        if local_frames.len() != fusion.len() {
            return Err(Error::IndexMismatch(format!(
                "{} local frames for {} subspaces",
                local_frames.len(),
                fusion.len()
            )));
        }
        let mut frames = Vec::with_capacity(local_frames.len());
        let mut bounds = Vec::with_capacity(local_frames.len());
        for (i, (vectors, s)) in local_frames.into_iter().zip(fusion.subspaces()).enumerate() {
            if vectors.nrows() != fusion.ambient_dim() {
                return Err(Error::ShapeMismatch {
                    what: "local frame vectors",
                    expected: fusion.ambient_dim().to_string(),
                    found: format!("{} (block {i})", vectors.nrows()),
                });
            }
            for (l, col) in vectors.column_iter().enumerate() {
                let col = col.into_owned();
                let distance = s.residual_of(&col);
                if distance > tol.identity * col.norm().max(1.0) {
                    return Err(Error::NotInSubspace {
                        block: i,
                        vector: l,
                        distance,
                    });
                }
            }
            let local = s.basis().adjoint() * &vectors;
            if numerical_rank(&local, tol) != s.dim() {
                return Err(Error::LocalFrameNotSpanning { block: i });
            }
            let (alpha, beta) = spectral_bounds(&(&local * local.adjoint()), tol)?;
            bounds.push((alpha, beta));
            frames.push(Frame::new(vectors, fusion.field())?);
        }
        Ok(LocalFrameSystem {
            fusion,
            local_frames: frames,
            bounds,
        })
    }

    /// System whose subspaces are the spans of the given local frames.
    pub fn from_local_frames(
        local_frames: Vec<Mat>,
        weights: Vec<f64>,
        field: Field,
        tol: &Tol,
    ) -> Result<LocalFrameSystem> {
        let subspaces = local_frames
            .iter()
            .map(|m| orthonormal_basis(m, tol))
            .collect::<Result<Vec<_>>>()?;
        let fusion = FusionFrame::new(subspaces, weights, field)?;
        LocalFrameSystem::new(fusion, local_frames, tol)
    }

    pub fn fusion(&self) -> &FusionFrame {
        &self.fusion
    }

    pub fn local_frames(&self) -> &[Frame] {
        &self.local_frames
    }

    /// Optimal frame bounds `(α_i, β_i)` of each local frame within its subspace.
    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// `inf_i α_i`.
    pub fn alpha(&self) -> f64 {
        self.bounds.iter().map(|b| b.0).fold(f64::INFINITY, f64::min)
    }

    /// `sup_i β_i`.
    pub fn beta(&self) -> f64 {
        self.bounds.iter().map(|b| b.1).fold(0.0, f64::max)
    }

    pub fn local_counts(&self) -> Vec<usize> {
        self.local_frames.iter().map(Frame::len).collect()
    }
}

fn check_compatible(w: &LocalFrameSystem, v: &LocalFrameSystem) -> Result<()> {
    if w.fusion.len() != v.fusion.len() {
        return Err(Error::IndexMismatch(format!(
            "{} subspaces on the W side, {} on the V side",
            w.fusion.len(),
            v.fusion.len()
        )));
    }
    if w.fusion.ambient_dim() != v.fusion.ambient_dim() {
        return Err(Error::IndexMismatch(format!(
            "ambient dimensions differ: {} vs {}",
            w.fusion.ambient_dim(),
            v.fusion.ambient_dim()
        )));
    }
    let (wc, vc) = (w.local_counts(), v.local_counts());
    if let Some(i) = (0..wc.len()).find(|&i| wc[i] != vc[i]) {
        return Err(Error::IndexMismatch(format!(
            "block {i} pairs {} W-side vectors with {} V-side vectors",
            wc[i], vc[i]
        )));
    }
    Ok(())
}

/// Block-diagonal `Q` with block `i` realizing `h ↦ Σ_l ⟨h, f_i^l⟩ f̃_i^l`
/// from local coordinates of `W_i` to local coordinates of `V_i`.
pub fn q_from_local_frames(w: &LocalFrameSystem, v: &LocalFrameSystem) -> Result<BlockOp> {
    check_compatible(w, v)?;
    let blocks: Vec<Mat> = w
        .fusion
        .subspaces()
        .iter()
        .zip(v.fusion.subspaces())
        .zip(w.local_frames.iter().zip(&v.local_frames))
        .map(|((ws, vs), (f, g))| vs.basis().adjoint() * g.vectors() * f.vectors().adjoint() * ws.basis())
        .collect();
    Ok(BlockOp::block_diagonal(&blocks))
}

/// The weighted global family `{w_i f_i^l}` and where each column came from.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalFamily {
    pub frame: Frame,
    /// `(i, l)` for each column.
    pub index: Vec<(usize, usize)>,
}

pub fn global_weighted_family(sys: &LocalFrameSystem) -> GlobalFamily {
    let n = sys.fusion.ambient_dim();
    let total: usize = sys.local_counts().iter().sum();
    let mut vectors = Mat::zeros(n, total);
    let mut index = Vec::with_capacity(total);
    let mut col = 0;
    for (i, (f, &w)) in sys.local_frames.iter().zip(sys.fusion.weights()).enumerate() {
        for l in 0..f.len() {
            vectors.set_column(col, &(f.vectors().column(l) * c64(w)));
            index.push((i, l));
            col += 1;
        }
    }
    GlobalFamily {
        frame: Frame::new(vectors, sys.fusion.field()).expect("local frames are finite and non-empty"),
        index,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalDualityReport {
    /// The weighted global families are dual frames.
    pub global_dual: Check,
    /// `(V, v)` is a Q-dual of `(W, w)` for the lifted `Q`.
    pub q_dual: Check,
    pub agree: bool,
}

/// Evaluates both sides of the local-to-global equivalence independently.
pub fn local_duality_check(w: &LocalFrameSystem, v: &LocalFrameSystem, tol: &Tol) -> Result<LocalDualityReport> {
    check_compatible(w, v)?;
    let global_dual = dual_pair_check(&global_weighted_family(w).frame, &global_weighted_family(v).frame, tol)?;
    let q = q_from_local_frames(w, v)?;
    let q_dual = crate::duality::verify_q_dual(&w.fusion, &v.fusion, &q, tol)?;
    Ok(LocalDualityReport {
        global_dual,
        q_dual,
        agree: global_dual.holds == q_dual.holds,
    })
}

/// Both sides of the Bessel estimate for the lifted `Q` at one block vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselEstimate {
    /// `Σ_i ||Σ_l ⟨h_i, f_i^l⟩ f̃_i^l||²`.
    pub lhs: f64,
    /// `Σ_i β̃_i β_i ||h_i||²`.
    pub per_block_bound: f64,
    /// `β̃² β² Σ_i ||h_i||²`.
    pub squared_bound: f64,
}

pub fn bessel_estimate(w: &LocalFrameSystem, v: &LocalFrameSystem, h: &BlockVec) -> Result<BesselEstimate> {
    let q = q_from_local_frames(w, v)?;
    let image = q.apply(h)?;
    let lhs = image.blocks().iter().map(|b| b.norm_squared()).sum();
    let per_block_bound = h
        .blocks()
        .iter()
        .zip(w.bounds().iter().zip(v.bounds()))
        .map(|(hi, (wb, vb))| vb.1 * wb.1 * hi.norm_squared())
        .sum();
    let squared_bound = (v.beta() * w.beta()).powi(2) * h.norm().powi(2);
    Ok(BesselEstimate {
        lhs,
        per_block_bound,
        squared_bound,
    })
}
