//! Reproducible fixture constructors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::duality::{LeftInverse, LeftInverseSource};
use crate::error::{Error, Result};
use crate::fusion::{block_offsets, synthesis_matrix, FusionFrame};
use crate::linalg::{c64, numerical_rank, orthonormal_basis, Field, Mat, Subspace, Tol, Vector, C64};

const MAX_RETRIES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    SlidingWindow,
    CyclicWindow,
    Random,
}

/// Parameters for [`generate`]. Mirrors the `gen` JSON input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub dim: usize,
    #[serde(default = "default_window")]
    pub window: usize,
    #[serde(default)]
    pub k: usize,
    #[serde(default)]
    pub dims_per_subspace: Vec<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub field: Field,
}

fn default_window() -> usize {
    1
}

impl GenSpec {
    pub fn random(dim: usize, dims_per_subspace: Vec<usize>, seed: u64) -> GenSpec {
        GenSpec {
            kind: GenKind::Random,
            dim,
            window: 1,
            k: dims_per_subspace.len(),
            dims_per_subspace,
            seed,
            field: Field::Complex,
        }
    }

    pub fn with_field(mut self, field: Field) -> GenSpec {
        self.field = field;
        self
    }
}

pub fn generate(spec: &GenSpec) -> Result<FusionFrame> {
    match spec.kind {
        GenKind::SlidingWindow | GenKind::CyclicWindow => {
            let ff = sliding_window_frame(spec.dim, spec.window, spec.kind == GenKind::CyclicWindow)?;
            FusionFrame::new(ff.subspaces().to_vec(), ff.weights().to_vec(), spec.field)
        }
        GenKind::Random => random_fusion_frame(spec),
    }
}

fn check_window(n: usize, window: usize) -> Result<()> {
    if window == 0 || window > n {
        return Err(Error::BadWindow(format!(
            "window must satisfy 1 <= window <= dim, got window={window}, dim={n}"
        )));
    }
    Ok(())
}

/// Zero-based indices spanning window `j` (also zero-based), in increasing
/// order so the newest index comes last.
fn window_indices(n: usize, window: usize, j: usize, cyclic: bool) -> Vec<usize> {
    if cyclic {
        (0..window).rev().map(|back| (j + n - back) % n).collect()
    } else {
        (j.saturating_sub(window - 1)..=j).collect()
    }
}

/// Sliding-window fusion frame on `ℂⁿ` with unit weights: `W_j` is spanned by
/// the `window` standard basis vectors ending at `e_j`. The truncated variant
/// clips windows at the first coordinate; the cyclic variant wraps around.
pub fn sliding_window_frame(n: usize, window: usize, cyclic: bool) -> Result<FusionFrame> {
    check_window(n, window)?;
    let subspaces = (0..n)
        .map(|j| Subspace::coordinate(n, &window_indices(n, window, j, cyclic)))
        .collect();
    FusionFrame::new(subspaces, vec![1.0; n], Field::Complex)
}

/// Left inverse of the truncated sliding-window analysis operator that reads
/// the newest coefficient (the one on `e_j`) out of each block `j`.
pub fn newest_coefficient_left_inverse(n: usize, window: usize) -> Result<LeftInverse> {
    let ff = sliding_window_frame(n, window, false)?;
    let layout = ff.layout();
    let mut a = Mat::zeros(n, ff.total_dim());
    for (j, start) in block_offsets(&layout).into_iter().enumerate() {
        a[(j, start + layout[j] - 1)] = c64(1.0);
    }
    LeftInverse::new(&ff, a, LeftInverseSource::Custom, &Tol::default())
}

/// Seeded random fusion frame: Gaussian spanning sets orthonormalized, weights
/// log-uniform in `[0.5, 2]`. When `Σ d_i ≥ dim` the draw is repeated until
/// the synthesis matrix has full row rank; otherwise the result is a Bessel
/// fusion sequence and returned as is.
pub fn random_fusion_frame(spec: &GenSpec) -> Result<FusionFrame> {
    let dims = resolve_dims(spec)?;
    let tol = Tol::default();
    let total: usize = dims.iter().sum();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..MAX_RETRIES {
        let subspaces = dims
            .iter()
            .map(|&d| orthonormal_basis(&random_matrix(&mut rng, spec.dim, d, spec.field), &tol))
            .collect::<Result<Vec<_>>>()?;
        if subspaces.iter().zip(&dims).any(|(s, &d)| s.dim() != d) {
            continue;
        }
        let weights = dims
            .iter()
            .map(|_| rng.random_range(0.5f64.ln()..=2.0f64.ln()).exp())
            .collect();
        let ff = FusionFrame::new(subspaces, weights, spec.field)?;
        if total < spec.dim || numerical_rank(&synthesis_matrix(&ff), &tol) == spec.dim {
            return Ok(ff);
        }
    }
    Err(Error::InfeasibleSpec(format!(
        "no full-rank draw after {MAX_RETRIES} attempts"
    )))
}

fn resolve_dims(spec: &GenSpec) -> Result<Vec<usize>> {
    if spec.dim == 0 {
        return Err(Error::InfeasibleSpec("dim must be positive".into()));
    }
    let k = if spec.k == 0 {
        spec.dims_per_subspace.len()
    } else {
        spec.k
    };
    let dims = match spec.dims_per_subspace.len() {
        0 => return Err(Error::InfeasibleSpec("dims_per_subspace is empty".into())),
        1 => vec![spec.dims_per_subspace[0]; k],
        len if len == k => spec.dims_per_subspace.clone(),
        len => {
            return Err(Error::InfeasibleSpec(format!(
                "dims_per_subspace has {len} entries but k = {k}"
            )))
        }
    };
    if k == 0 {
        return Err(Error::InfeasibleSpec("k must be positive".into()));
    }
    if let Some(&d) = dims.iter().find(|&&d| d == 0 || d > spec.dim) {
        return Err(Error::InfeasibleSpec(format!(
            "subspace dimension {d} outside 1..={}",
            spec.dim
        )));
    }
    Ok(dims)
}

fn normal(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Gaussian scalar; complex draws have unit total variance.
pub fn random_scalar(rng: &mut impl Rng, field: Field) -> C64 {
    match field {
        Field::Real => c64(normal(rng)),
        Field::Complex => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            C64::new(s * normal(rng), s * normal(rng))
        }
    }
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, field: Field) -> Mat {
    Mat::from_fn(rows, cols, |_, _| random_scalar(rng, field))
}

pub fn random_vector(rng: &mut impl Rng, n: usize, field: Field) -> Vector {
    Vector::from_fn(n, |_, _| random_scalar(rng, field))
}

/// Uniformly distributed unit vector.
pub fn random_unit_vector(rng: &mut impl Rng, n: usize, field: Field) -> Vector {
    loop {
        let v = random_vector(rng, n, field);
        let norm = v.norm();
        if norm > 1e-12 {
            return v / c64(norm);
        }
    }
}
