//! Acceptance suite: one PASS/FAIL line per criterion.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use fusionframe::duality::{
    bound_diagnostics, canonical_left_inverse, dual_from_left_inverse, duality_equivalences_seeded,
    is_component_preserving, left_inverse_from_dual, parametrized_left_inverse, verify_q_dual,
    LeftInverse, LeftInverseSource, INNER_PRODUCT_SAMPLES,
};
use fusionframe::fusion::{
    canonical_dual, frame_operator, fusion_coefficients, minimal_norm_report, synthesis_matrix,
    validate, BlockOp, BlockVec, FusionFrame,
};
use fusionframe::generators::{
    newest_coefficient_left_inverse, random_fusion_frame, random_matrix, random_unit_vector,
    random_vector, sliding_window_frame, GenSpec,
};
use fusionframe::io::{from_json_str, load_json, to_json_string, FusionFrameFile, QFile, Scalar};
use fusionframe::linalg::{c64, op_norm, orthonormal_basis, projection_matrix, Field, Mat, Subspace, Tol};
use fusionframe::local_lift::{bessel_estimate, local_duality_check, LocalFrameSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const C1_RESIDUAL: f64 = 1e-9;
const C1_RUNTIME_SECS: f64 = 30.0;
const C2_TOL: f64 = 1e-8;
const C3_TOL: f64 = 1e-10;
const C4_PROJECTOR_TOL: f64 = 1e-8;
const C5_SLACK: f64 = 1e-10;
const C6_TOL: f64 = 1e-8;
const C7_TOL: f64 = 1e-12;
const C8_GAMMA_REL: f64 = 0.05;
const C8_NORM_SLACK: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn field_of(r: &mut ChaCha8Rng) -> Field {
    if r.random_bool(0.5) {
        Field::Real
    } else {
        Field::Complex
    }
}

/// Random fusion frame with `dim ≤ max_dim`, `k ≤ max_k` and `Σ d_i ≥ dim`.
fn random_frame(r: &mut ChaCha8Rng, max_dim: usize, max_k: usize, max_d: usize) -> FusionFrame {
    let field = field_of(r);
    random_frame_over(r, max_dim, max_k, max_d, field)
}

fn random_frame_over(r: &mut ChaCha8Rng, max_dim: usize, max_k: usize, max_d: usize, field: Field) -> FusionFrame {
    loop {
        let dim = r.random_range(1..=max_dim);
        let k = r.random_range(1..=max_k);
        let lo = dim.div_ceil(k);
        let hi = dim.min(max_d.max(lo));
        let dims: Vec<usize> = (0..k).map(|_| r.random_range(lo..=hi)).collect();
        let spec = GenSpec::random(dim, dims, r.random()).with_field(field);
        let ff = random_fusion_frame(&spec).expect("feasible spec");
        if validate(&ff, &Tol::default()).is_fusion_frame {
            return ff;
        }
    }
}

fn random_weights(r: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    (0..k).map(|_| r.random_range(0.5..=2.0)).collect()
}

fn random_left_inverse(r: &mut ChaCha8Rng, w: &FusionFrame, tol: &Tol) -> LeftInverse {
    let z = random_matrix(r, w.ambient_dim(), w.total_dim(), w.field());
    parametrized_left_inverse(w, &z, tol).expect("fusion frame")
}

fn c1_canonical_reconstruction() -> Outcome {
    let tol = Tol::default().with_identity(C1_RESIDUAL).unwrap();
    let mut r = rng(1);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for _ in 0..200 {
        let w = random_frame(&mut r, 50, 10, 50);
        let (v, q) = canonical_dual(&w, &tol).unwrap();
        let check = verify_q_dual(&w, &v, &q, &tol).unwrap();
        worst = worst.max(check.residual);
        if !(check.residual <= C1_RESIDUAL) {
            failures += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: failures == 0 && secs < C1_RUNTIME_SECS,
        detail: format!("200 frames, worst residual {worst:.2e} (<= {C1_RESIDUAL:e}), {failures} failures, {secs:.1}s"),
    }
}

fn c2_equivalences() -> Outcome {
    let tol = Tol::default().with_identity(C2_TOL).unwrap();
    let mut r = rng(2);
    let (mut disagreements, mut swap_mismatch, mut duals, mut non_duals) = (0, 0, 0, 0);
    for case in 0..200 {
        let w = random_frame(&mut r, 8, 5, 4);
        let (v, q) = if r.random_bool(0.5) {
            canonical_dual(&w, &tol).unwrap()
        } else {
            let a = random_left_inverse(&mut r, &w, &tol);
            let weights = random_weights(&mut r, w.len());
            dual_from_left_inverse(&w, &a, &weights, &tol).unwrap()
        };
        let q = if case % 2 == 1 {
            let e = random_matrix(&mut r, q.matrix().nrows(), q.matrix().ncols(), w.field());
            let size = 10f64.powf(r.random_range(-4.0..0.0)) * q.norm() / op_norm(&e);
            BlockOp::new(q.domain_layout().to_vec(), q.codomain_layout().to_vec(), q.matrix() + e * c64(size))
                .unwrap()
        } else {
            q
        };
        let report = duality_equivalences_seeded(&w, &v, &q, &tol, case, INNER_PRODUCT_SAMPLES).unwrap();
        if !report.consistent() {
            disagreements += 1;
        }
        if report.q_star_dual_of_swap != report.cond2.holds {
            swap_mismatch += 1;
        }
        if report.is_dual == (case % 2 == 0) {
            if report.is_dual {
                duals += 1;
            } else {
                non_duals += 1;
            }
        }
    }
    Outcome {
        pass: disagreements == 0 && swap_mismatch == 0 && duals == 100 && non_duals == 100,
        detail: format!(
            "{disagreements} inconsistent reports, {swap_mismatch} swap mismatches, {duals}/100 duals and {non_duals}/100 perturbed classified"
        ),
    }
}

fn c3_parametrization() -> Outcome {
    let tol = Tol::default();
    let mut r = rng(3);
    let (mut worst_repro, mut worst_inverse): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let w = random_frame(&mut r, 10, 5, 4);
        let a0 = canonical_left_inverse(&w, &tol).unwrap();
        let t = synthesis_matrix(&w);
        let dim = w.total_dim();
        let z = random_matrix(&mut r, w.ambient_dim(), dim, w.field());
        let a = a0.matrix() + z * (Mat::identity(dim, dim) - t.adjoint() * a0.matrix());
        let custom = LeftInverse::new(&w, a.clone(), LeftInverseSource::Custom, &tol).unwrap();
        let again = parametrized_left_inverse(&w, custom.matrix(), &tol).unwrap();
        worst_repro = worst_repro.max(op_norm(&(again.matrix() - &a)));
        let n = w.ambient_dim();
        for m in [&a, again.matrix()] {
            worst_inverse = worst_inverse.max(op_norm(&(m * t.adjoint() - Mat::identity(n, n))));
        }
    }
    Outcome {
        pass: worst_repro <= C3_TOL && worst_inverse <= C3_TOL,
        detail: format!(
            "100 custom left inverses, reproduction {worst_repro:.2e}, ||A T* - I|| {worst_inverse:.2e} (<= {C3_TOL:e})"
        ),
    }
}

fn c4_component_preserving() -> Outcome {
    let tol = Tol::default();
    let mut r = rng(4);
    let (mut not_cp, mut not_dual) = (0, 0);
    let mut worst_proj: f64 = 0.0;
    for _ in 0..100 {
        let w = random_frame(&mut r, 10, 6, 4);
        let a = random_left_inverse(&mut r, &w, &tol);
        let weights = random_weights(&mut r, w.len());
        let (v, q) = dual_from_left_inverse(&w, &a, &weights, &tol).unwrap();
        if !is_component_preserving(&q, &w, &v, &tol).unwrap() {
            not_cp += 1;
        }
        if !verify_q_dual(&w, &v, &q, &tol).unwrap().holds {
            not_dual += 1;
        }
        let back = left_inverse_from_dual(&v, &q).unwrap();
        let layout = w.layout();
        let mut start = 0;
        for (i, v_i) in v.subspaces().iter().enumerate() {
            let image = orthonormal_basis(&back.columns(start, layout[i]).into_owned(), &tol).unwrap();
            worst_proj = worst_proj.max(op_norm(&(projection_matrix(&image) - projection_matrix(v_i))));
            start += layout[i];
        }
    }
    Outcome {
        pass: not_cp == 0 && not_dual == 0 && worst_proj <= C4_PROJECTOR_TOL,
        detail: format!(
            "100 pipelines, {not_cp} not component preserving, {not_dual} not dual, projector gap {worst_proj:.2e} (<= {C4_PROJECTOR_TOL:e})"
        ),
    }
}

fn c5_minimal_norm() -> Outcome {
    let tol = Tol::default();
    let mut r = rng(5);
    let mut violations = 0;
    let mut library_violations = 0;
    let mut worst_margin = f64::INFINITY;
    let mut samples = 0;
    for _ in 0..50 {
        let w = random_frame(&mut r, 8, 5, 4);
        let t = synthesis_matrix(&w);
        let dim = t.ncols();
        // N(T) is the orthogonal complement of the range of T*.
        let null = match orthonormal_basis(&t.adjoint(), &tol) {
            Ok(range) => Mat::identity(dim, dim) - projection_matrix(&range),
            Err(_) => Mat::identity(dim, dim),
        };
        for _ in 0..20 {
            let f = random_vector(&mut r, w.ambient_dim(), w.field());
            let c = fusion_coefficients(&w, &f, &tol).unwrap().stacked();
            if !minimal_norm_report(&w, &f, 50, r.random(), &tol).unwrap().holds {
                library_violations += 1;
            }
            for _ in 0..50 {
                let g = random_vector(&mut r, dim, w.field());
                let z = &null * g * c64(10f64.powf(r.random_range(-3.0..1.0)));
                let margin = (&c + z).norm() - c.norm();
                worst_margin = worst_margin.min(margin);
                samples += 1;
                if margin < -C5_SLACK {
                    violations += 1;
                }
            }
        }
    }
    Outcome {
        pass: violations == 0 && library_violations == 0,
        detail: format!(
            "{samples} perturbed preimages, {violations} violations (slack {C5_SLACK:e}), worst margin {worst_margin:.2e}, {library_violations} library-report violations"
        ),
    }
}

/// Random local-frame system and a V side built from the canonical dual of
/// the weighted global family; `violate` scales one V-side vector.
fn local_pair(r: &mut ChaCha8Rng, violate: bool, tol: &Tol) -> (LocalFrameSystem, LocalFrameSystem) {
    loop {
        let n: usize = r.random_range(2..=6);
        let k = r.random_range(1..=4);
        let field = field_of(r);
        let dims: Vec<usize> = (0..k).map(|_| r.random_range(n.div_ceil(k)..=n)).collect();
        let counts: Vec<usize> = dims.iter().map(|&d| d + r.random_range(0..=2)).collect();
        let w_weights = random_weights(r, k);
        let v_weights = random_weights(r, k);
        let frames: Vec<Mat> = dims
            .iter()
            .zip(&counts)
            .map(|(&d, &m)| random_matrix(r, n, d, field) * random_matrix(r, d, m, field))
            .collect();
        let Ok(w) = LocalFrameSystem::from_local_frames(frames.clone(), w_weights.clone(), field, tol) else {
            continue;
        };
        if !validate(w.fusion(), tol).is_fusion_frame {
            continue;
        }
        let phi: Vec<Mat> = frames.iter().zip(&w_weights).map(|(f, &wi)| f * c64(wi)).collect();
        let s = phi.iter().fold(Mat::zeros(n, n), |acc, p| acc + p * p.adjoint());
        let s_inv = s.try_inverse().expect("global family is a frame");
        let mut duals: Vec<Mat> = phi.iter().zip(&v_weights).map(|(p, &vi)| &s_inv * p * c64(1.0 / vi)).collect();
        if violate {
            let i = r.random_range(0..k);
            let l = r.random_range(0..counts[i]);
            duals[i].column_mut(l).scale_mut(1.0 + r.random_range(0.1..1.0));
        }
        let v = LocalFrameSystem::from_local_frames(duals, v_weights, field, tol).expect("dual local frames span");
        return (w, v);
    }
}

fn c6_local_lift() -> Outcome {
    let tol = Tol::default().with_identity(C6_TOL).unwrap();
    let mut r = rng(6);
    let (mut disagreements, mut misclassified) = (0, 0);
    let (mut squared_violations, mut sharp_violations, mut below_one) = (0, 0, 0);
    for case in 0..100 {
        let violate = case % 2 == 1;
        let (w, v) = local_pair(&mut r, violate, &tol);
        let report = local_duality_check(&w, &v, &tol).unwrap();
        if !report.agree {
            disagreements += 1;
        }
        if report.q_dual.holds == violate {
            misclassified += 1;
        }
        if w.beta() * v.beta() < 1.0 {
            below_one += 1;
        }
        for _ in 0..32 {
            let h = BlockVec::new(
                w.fusion().layout().iter().map(|&d| random_vector(&mut r, d, w.fusion().field())).collect(),
            );
            let est = bessel_estimate(&w, &v, &h).unwrap();
            if est.lhs > est.squared_bound * (1.0 + 1e-12) {
                squared_violations += 1;
            }
            if est.lhs > est.per_block_bound * (1.0 + 1e-12) {
                sharp_violations += 1;
            }
        }
    }
    Outcome {
        pass: disagreements == 0 && misclassified == 0 && squared_violations == 0 && sharp_violations == 0,
        detail: format!(
            "100 systems, {disagreements} disagreements, {misclassified} misclassified; 3200 block vectors: {squared_violations} violations of the squared bound ({below_one} systems with beta~ beta < 1), {sharp_violations} of the per-block bound"
        ),
    }
}

fn c7_sliding_window() -> Outcome {
    let tol = Tol::default();
    let (n, window) = (12, 3);
    let w = sliding_window_frame(n, window, false).unwrap();
    let coverage: Vec<f64> = (0..n)
        .map(|m| (0..n).filter(|&j| m <= j && j < m + window).count() as f64)
        .collect();
    let s = frame_operator(&w);
    let exact_s = s == Mat::from_diagonal(&fusionframe::Vector::from_iterator(n, coverage.iter().map(|&c| c64(c))));
    let lo = coverage.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = coverage.iter().copied().fold(0.0, f64::max);
    let report = validate(&w, &tol);
    let bounds_ok = lo == 1.0 && hi == 3.0 && (report.alpha - lo).abs() <= C7_TOL && (report.beta - hi).abs() <= C7_TOL;

    let cyclic = frame_operator(&sliding_window_frame(n, window, true).unwrap());
    let cyclic_gap = op_norm(&(cyclic - Mat::identity(n, n) * c64(3.0)));

    let a = newest_coefficient_left_inverse(n, window).unwrap();
    let (v, _) = dual_from_left_inverse(&w, &a, &vec![1.0; n], &tol).unwrap();
    let proj_gap = v
        .subspaces()
        .iter()
        .enumerate()
        .map(|(j, v_j)| op_norm(&(projection_matrix(v_j) - projection_matrix(&Subspace::coordinate(n, &[j])))))
        .fold(0.0, f64::max);
    let diag = bound_diagnostics(&w, &a, &vec![1.0; n], &tol).unwrap();
    let gamma_gap = diag.gamma.iter().map(|g| (g - 1.0).abs()).fold(0.0, f64::max);
    Outcome {
        pass: exact_s && bounds_ok && cyclic_gap <= C7_TOL && proj_gap <= C7_TOL && gamma_gap <= C7_TOL,
        detail: format!(
            "S equals coverage diag: {exact_s}, bounds ({}, {}), cyclic ||S - 3I|| {cyclic_gap:.1e}, projector gap {proj_gap:.1e}, max |gamma - 1| {gamma_gap:.1e}",
            report.alpha, report.beta
        ),
    }
}

/// Smallest `||B x||` over `samples` random unit `x` in `N(B)^⊥`, found
/// through an orthonormal basis of the range of `B*`.
fn brute_force_gamma(r: &mut ChaCha8Rng, block: &Mat, field: Field, samples: usize) -> f64 {
    let rows = orthonormal_basis(&block.adjoint(), &Tol::default()).unwrap();
    (0..samples)
        .map(|_| {
            let c = random_unit_vector(r, rows.dim(), field);
            (block * (rows.basis() * c)).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

fn c8_bound_diagnostics() -> Outcome {
    let tol = Tol::default();
    let mut r = rng(8);
    let (mut norm_violations, mut gamma_misses) = (0, 0);
    let mut min_slack = f64::INFINITY;
    let mut worst_gamma_rel: f64 = 0.0;
    let mut blocks = 0;
    // Uniform sampling only gets within 5% of the minimum when N(A p_i)^⊥ is
    // low dimensional, so the matching instances use real blocks with d_i <= 2.
    for _ in 0..100 {
        let w = random_frame_over(&mut r, 6, 4, 2, Field::Real);
        let a = random_left_inverse(&mut r, &w, &tol);
        let weights = random_weights(&mut r, w.len());
        let diag = bound_diagnostics(&w, &a, &weights, &tol).unwrap();
        min_slack = min_slack.min(diag.q_norm_bound - diag.q_norm);
        if diag.q_norm > diag.q_norm_bound * (1.0 + C8_NORM_SLACK) {
            norm_violations += 1;
        }
        let layout = w.layout();
        for (i, &gamma) in diag.gamma.iter().enumerate() {
            let brute = brute_force_gamma(&mut r, &a.block(&layout, i), w.field(), 1000);
            let rel = (brute - gamma) / gamma;
            worst_gamma_rel = worst_gamma_rel.max(rel.abs());
            blocks += 1;
            if !(rel >= -1e-9 && rel <= C8_GAMMA_REL) {
                gamma_misses += 1;
            }
        }
    }
    // General instances: gamma must still be a lower bound for every sample.
    let (mut undercuts, mut general_blocks, mut general_hits) = (0, 0, 0);
    for _ in 0..100 {
        let w = random_frame(&mut r, 6, 4, 3);
        let a = random_left_inverse(&mut r, &w, &tol);
        let weights = random_weights(&mut r, w.len());
        let diag = bound_diagnostics(&w, &a, &weights, &tol).unwrap();
        if diag.q_norm > diag.q_norm_bound * (1.0 + C8_NORM_SLACK) {
            norm_violations += 1;
        }
        let layout = w.layout();
        for (i, &gamma) in diag.gamma.iter().enumerate() {
            let brute = brute_force_gamma(&mut r, &a.block(&layout, i), w.field(), 1000);
            general_blocks += 1;
            if brute < gamma * (1.0 - 1e-9) {
                undercuts += 1;
            }
            if brute <= gamma * (1.0 + C8_GAMMA_REL) {
                general_hits += 1;
            }
        }
    }
    Outcome {
        pass: norm_violations == 0 && gamma_misses == 0 && undercuts == 0,
        detail: format!(
            "200 instances, {norm_violations} norm-bound violations (min slack {min_slack:.2e}); real d<=2: {gamma_misses}/{blocks} gamma mismatches (worst relative gap {worst_gamma_rel:.3}); complex/real d<=3: {undercuts} samples below gamma, {general_hits}/{general_blocks} within 5%"
        ),
    }
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fusionframe"))
        .current_dir(fixtures())
        .args(args)
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap_or(-1), text)
}

/// Load, save and reload a fixture; the two saved texts must be identical
/// and the reloaded model equal to the first load.
fn round_trips(path: &Path) -> bool {
    fn check<T: serde::Serialize + serde::de::DeserializeOwned + PartialEq>(path: &Path) -> Option<bool> {
        let first: T = load_json(path).ok()?;
        let text = to_json_string(&first);
        let second: T = from_json_str(&text).ok()?;
        Some(second == first && to_json_string(&second) == text)
    }
    check::<FusionFrameFile>(path)
        .or_else(|| check::<QFile>(path))
        .or_else(|| check::<GenSpec>(path))
        .or_else(|| check::<Vec<Vec<Scalar>>>(path))
        .unwrap_or(false)
}

fn c9_cli() -> Outcome {
    let dir = std::env::temp_dir().join(format!("fusionframe-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = |name: &str| dir.join(name).display().to_string();
    let cases: Vec<(Vec<String>, i32, &str)> = vec![
        (vec!["validate".into(), "parseval.json".into()], 0, "alpha=1 beta=1 parseval=true"),
        (vec!["validate".into(), "complex_plane.json".into()], 0, "parseval=true"),
        (vec!["validate".into(), "three_lines.json".into()], 0, "alpha=1 beta=2"),
        (vec!["validate".into(), "not_a_frame.json".into()], 1, "fusion_frame=false"),
        (vec!["validate".into(), "weight_zero.json".into()], 2, "weights must be positive"),
        (vec!["validate".into(), "wrong_length.json".into()], 2, "subspaces[1].basis[0]"),
        (vec!["validate".into(), "malformed.json".into()], 2, "line 3"),
        (vec!["dual".into(), "parseval.json".into(), "--out".into(), out("p.json")], 0, "dual=true"),
        (vec!["dual".into(), "three_lines.json".into(), "--out".into(), out("c.json")], 0, "dual=true"),
        (
            vec!["dual".into(), "three_lines.json".into(), "--mode".into(), "left-inverse".into(), "--r".into(), "r_zero.json".into(), "--out".into(), out("l.json")],
            0,
            "dual=true",
        ),
        (vec!["dual".into(), "not_a_frame.json".into(), "--out".into(), out("n.json")], 1, "not a fusion frame"),
        (vec!["verify".into(), "three_lines.json".into(), "canonical_v.json".into(), "canonical_q.json".into()], 0, "dual=true"),
        (vec!["verify".into(), "three_lines.json".into(), "canonical_v.json".into(), "canonical_q_kind.json".into()], 0, "dual=true"),
        (vec!["verify".into(), "three_lines.json".into(), "canonical_v.json".into(), "zero_q.json".into()], 1, "dual=false"),
        (vec!["verify".into(), "three_lines.json".into(), "canonical_v.json".into(), "bad_layout_q.json".into()], 2, "layout"),
        (vec!["verify".into(), "window_w.json".into(), "window_v.json".into(), "window_q.json".into()], 0, "dual=true"),
        (vec!["local-lift".into(), "onb_partition.json".into(), "onb_partition.json".into()], 0, "global_dual=true q_dual=true"),
        (vec!["local-lift".into(), "parseval_partition.json".into(), "parseval_partition.json".into()], 0, "global_dual=true q_dual=true"),
        (vec!["local-lift".into(), "onb_partition.json".into(), "perturbed_v.json".into()], 1, "global_dual=false q_dual=false"),
        (vec!["local-lift".into(), "three_lines.json".into(), "three_lines.json".into()], 2, "missing local frames"),
        (vec!["gen".into(), "--spec".into(), "cyclic_spec.json".into(), "--out".into(), out("g.json")], 0, "wrote"),
    ];
    let mut failures = Vec::new();
    for (args, code, needle) in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (got, text) = run_cli(&args);
        if got != *code || !text.contains(needle) {
            failures.push(format!("{} -> exit {got}", args.join(" ")));
        }
    }

    // Canonical duals produced by the CLI.
    let tol = Tol::default();
    let dual_of = |name: &str| load_json::<FusionFrameFile>(dir.join(name)).unwrap().to_fusion_frame(&tol).unwrap();
    let parseval = load_json::<FusionFrameFile>(fixtures().join("parseval.json")).unwrap().to_fusion_frame(&tol).unwrap();
    let same = |a: &FusionFrame, b: &FusionFrame| a.subspaces().iter().zip(b.subspaces()).all(|(x, y)| x.distance(y) <= 1e-10);
    if !same(&dual_of("p.json"), &parseval) {
        failures.push("canonical dual of a Parseval frame differs from the input".into());
    }
    let three = dual_of("c.json");
    let expected = orthonormal_basis(&fusionframe::linalg::real_columns(&[&[3.0, -1.0]]), &tol).unwrap();
    if three.subspaces()[0].distance(&expected) > 1e-10 {
        failures.push("canonical dual of three lines lacks span{(3,-1)}".into());
    }
    if !same(&three, &dual_of("l.json")) {
        failures.push("left-inverse mode with R = 0 differs from canonical mode".into());
    }
    let (got, _) = run_cli(&["validate", &out("g.json")]);
    if got != 0 {
        failures.push("generated cyclic window does not validate".into());
    }

    let mut files: Vec<PathBuf> = std::fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json") && !p.ends_with("malformed.json"))
        .collect();
    files.sort();
    let bad_round_trips: Vec<String> = files
        .iter()
        .filter(|p| !round_trips(p))
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    std::fs::remove_dir_all(&dir).ok();
    let pass = failures.is_empty() && bad_round_trips.is_empty() && files.len() >= 10;
    Outcome {
        pass,
        detail: format!(
            "{} CLI cases, {} fixtures round-tripped; failures: {:?} {:?}",
            cases.len(),
            files.len(),
            failures,
            bad_round_trips
        ),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("canonical-dual reconstruction", c1_canonical_reconstruction),
        ("duality condition equivalence", c2_equivalences),
        ("left-inverse parametrization", c3_parametrization),
        ("component-preserving pipeline", c4_component_preserving),
        ("minimal-norm coefficients", c5_minimal_norm),
        ("local-frame lift", c6_local_lift),
        ("sliding-window example", c7_sliding_window),
        ("bound diagnostics", c8_bound_diagnostics),
        ("cli end-to-end", c9_cli),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {} {name}: {status} ({})", i + 1, outcome.detail);
        if !outcome.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
