use std::path::{Path, PathBuf};

use fusionframe::duality::{duality_equivalences_seeded, DualityReport};
use fusionframe::generators::{generate, GenSpec};
use fusionframe::io::{
    load_json, matrix_from_rows, save_json, to_json_string, FusionFrameFile, QFile, Scalar,
};
use fusionframe::{
    canonical_dual, dual_from_left_inverse, local_duality_check, parametrized_left_inverse, validate,
    verify_q_dual, Error, Field, FusionFrame, Mat, Tol,
};
use serde_json::{json, Value};

use crate::render::{emit, num, sci, Report};
use crate::{Cli, Command, DualMode};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

/// Mathematical failures exit with 1, everything else the input's fault with 2.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotAFusionFrame { .. }
        | Error::NotAFrame { .. }
        | Error::NotLeftInverse { .. }
        | Error::DegenerateBlock { .. } => EXIT_FAILURE,
        _ => EXIT_INPUT,
    }
}

pub fn run(cli: &Cli) -> u8 {
    let tol = match cli.tol() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let result = match &cli.command {
        Command::Validate { path } => cmd_validate(path, &tol).map(|r| (r, cli.out.clone())),
        Command::Dual {
            path,
            mode,
            r,
            v,
            q_out,
        } => cmd_dual(path, *mode, r.as_deref(), v.as_deref(), cli.out.as_deref(), q_out.as_deref(), &tol)
            .map(|r| (r, None)),
        Command::Verify {
            w,
            v,
            q,
            batch: Some(dir),
        } => {
            debug_assert!(w.is_none() && v.is_none() && q.is_none());
            cmd_verify_batch(dir, &tol, cli.seed).map(|r| (r, cli.out.clone()))
        }
        Command::Verify {
            w: Some(w),
            v: Some(v),
            q: Some(q),
            batch: None,
        } => cmd_verify(w, v, q, &tol, cli.seed).map(|r| (r, cli.out.clone())),
        Command::Verify { .. } => Err(Error::Invalid("verify needs W, V and Q paths or --batch".into())),
        Command::LocalLift { w, v } => cmd_local_lift(w, v, &tol).map(|r| (r, cli.out.clone())),
        Command::Gen {
            spec,
            kind,
            dim,
            window,
            k,
            dims,
            field,
        } => {
            let spec = match spec {
                Some(path) => load_json::<GenSpec>(path),
                None => Ok(GenSpec {
                    kind: kind.expect("required by clap").into(),
                    dim: dim.expect("required by clap"),
                    window: *window,
                    k: *k,
                    dims_per_subspace: dims.clone(),
                    seed: cli.seed,
                    field: (*field).into(),
                }),
            };
            spec.and_then(|s| cmd_gen(&s, cli.out.as_deref()))
        }
    };
    match result {
        Ok(((report, code), out)) => {
            if let Err(e) = emit(out.as_deref(), &report.render(cli.format)) {
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

type Outcome = fusionframe::Result<(Report, u8)>;

fn load_fusion_frame(path: &Path, tol: &Tol) -> fusionframe::Result<(FusionFrameFile, FusionFrame)> {
    let file: FusionFrameFile = load_json(path)?;
    let ff = file
        .to_fusion_frame(tol)
        .map_err(|e| with_path(path, e))?;
    Ok((file, ff))
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Invalid(msg) => Error::Invalid(format!("{}: {msg}", path.display())),
        Error::WeightError(msg) => Error::WeightError(format!("{}: {msg}", path.display())),
        Error::FieldMismatch(msg) => Error::FieldMismatch(format!("{}: {msg}", path.display())),
        other => other,
    }
}

fn tol_json(tol: &Tol) -> Value {
    serde_json::to_value(tol).expect("tolerances serialize")
}

pub fn cmd_validate(path: &Path, tol: &Tol) -> Outcome {
    let (_, ff) = load_fusion_frame(path, tol)?;
    let r = validate(&ff, tol);
    let text = format!(
        "alpha={} beta={} parseval={} tight={} uniform={} fusion_frame={}",
        num(r.alpha),
        num(r.beta),
        r.is_parseval,
        r.is_tight,
        r.is_uniform,
        r.is_fusion_frame
    );
    let json = json!({
        "command": "validate",
        "input": path.display().to_string(),
        "tol": tol_json(tol),
        "dim": ff.ambient_dim(),
        "layout": ff.layout(),
        "report": r,
    });
    let code = if r.is_fusion_frame { EXIT_OK } else { EXIT_FAILURE };
    Ok((Report { text: vec![text], json }, code))
}

fn default_dual_path(input: &Path) -> PathBuf {
    let stem = input.file_stem().map_or("frame".into(), |s| s.to_string_lossy().into_owned());
    input.with_file_name(format!("{stem}.dual.json"))
}

fn default_q_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map_or("dual".into(), |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}.q.json"))
}

pub fn cmd_dual(
    path: &Path,
    mode: DualMode,
    r_path: Option<&Path>,
    weights_v: Option<&[f64]>,
    out: Option<&Path>,
    q_out: Option<&Path>,
    tol: &Tol,
) -> Outcome {
    let (_, w) = load_fusion_frame(path, tol)?;
    let (v, q) = match mode {
        DualMode::Canonical => {
            if r_path.is_some() || weights_v.is_some() {
                return Err(Error::Invalid("--r and --v apply to --mode left-inverse only".into()));
            }
            canonical_dual(&w, tol)?
        }
        DualMode::LeftInverse => {
            let r = match r_path {
                Some(p) => {
                    let rows: Vec<Vec<Scalar>> = load_json(p)?;
                    matrix_from_rows(&rows)?
                }
                None => Mat::zeros(w.ambient_dim(), w.total_dim()),
            };
            let a = parametrized_left_inverse(&w, &r, tol)?;
            let weights = weights_v.map_or_else(|| w.weights().to_vec(), <[f64]>::to_vec);
            dual_from_left_inverse(&w, &a, &weights, tol)?
        }
    };
    let check = verify_q_dual(&w, &v, &q, tol)?;

    let out = out.map_or_else(|| default_dual_path(path), Path::to_path_buf);
    let q_out = q_out.map_or_else(|| default_q_path(&out), Path::to_path_buf);
    save_json(&out, &FusionFrameFile::from_fusion_frame(&v))?;
    save_json(&q_out, &QFile::from_block_op(&q, Field::of(q.matrix())))?;

    let text = vec![
        format!("residual={} dual={}", sci(check.residual), check.holds),
        format!("wrote {}", out.display()),
        format!("wrote {}", q_out.display()),
    ];
    let json = json!({
        "command": "dual",
        "mode": match mode { DualMode::Canonical => "canonical", DualMode::LeftInverse => "left_inverse" },
        "input": path.display().to_string(),
        "tol": tol_json(tol),
        "residual": check.residual,
        "is_dual": check.holds,
        "dual_path": out.display().to_string(),
        "q_path": q_out.display().to_string(),
    });
    let code = if check.holds { EXIT_OK } else { EXIT_FAILURE };
    Ok((Report { text, json }, code))
}

fn duality(w: &Path, v: &Path, q: &Path, tol: &Tol, seed: u64) -> fusionframe::Result<DualityReport> {
    let (_, wf) = load_fusion_frame(w, tol)?;
    let (_, vf) = load_fusion_frame(v, tol)?;
    let qf: QFile = load_json(q)?;
    let q_op = qf.resolve(&wf, &vf, tol).map_err(|e| with_path(q, e))?;
    duality_equivalences_seeded(&wf, &vf, &q_op, tol, seed, fusionframe::duality::INNER_PRODUCT_SAMPLES)
}

fn duality_lines(r: &DualityReport) -> Vec<String> {
    vec![
        format!("cond1 T_V Q T_W* = I: {} residual={}", r.cond1.holds, sci(r.cond1.residual)),
        format!("cond2 T_W Q* T_V* = I: {} residual={}", r.cond2.holds, sci(r.cond2.residual)),
        format!(
            "cond3 T_W* injective, T_V Q onto, Gram idempotent: {} residual={}",
            r.cond3.holds,
            sci(r.cond3.residual)
        ),
        format!(
            "cond4 T_V* injective, T_W Q* onto, Gram idempotent: {} residual={}",
            r.cond4.holds,
            sci(r.cond4.residual)
        ),
        format!("cond5 <f,g> = <Q T_W* f, T_V* g>: {} residual={}", r.cond5.holds, sci(r.cond5.residual)),
        format!("swap={}", r.q_star_dual_of_swap),
        format!(
            "dual={} consistent={} w_fusion_frame={} v_fusion_frame={}",
            r.is_dual,
            r.consistent(),
            r.w_is_fusion_frame,
            r.v_is_fusion_frame
        ),
    ]
}

pub fn cmd_verify(w: &Path, v: &Path, q: &Path, tol: &Tol, seed: u64) -> Outcome {
    let r = duality(w, v, q, tol, seed)?;
    let json = json!({
        "command": "verify",
        "inputs": [w.display().to_string(), v.display().to_string(), q.display().to_string()],
        "tol": tol_json(tol),
        "report": r,
        "consistent": r.consistent(),
    });
    let code = if r.is_dual { EXIT_OK } else { EXIT_FAILURE };
    Ok((Report { text: duality_lines(&r), json }, code))
}

pub fn cmd_verify_batch(dir: &Path, tol: &Tol, seed: u64) -> Outcome {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut cases: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| ["w.json", "v.json", "q.json"].iter().all(|f| p.join(f).is_file()))
        .collect();
    cases.sort();
    if cases.is_empty() {
        return Err(Error::Invalid(format!(
            "{}: no subdirectory holds w.json, v.json and q.json",
            dir.display()
        )));
    }
    let results: Vec<fusionframe::Result<DualityReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .iter()
            .map(|c| s.spawn(move || duality(&c.join("w.json"), &c.join("v.json"), &c.join("q.json"), tol, seed)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("verify worker panicked")).collect()
    });

    let mut code = EXIT_OK;
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for (case, result) in cases.iter().zip(results) {
        let name = case.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
        match result {
            Ok(r) => {
                if !r.is_dual {
                    code = code.max(EXIT_FAILURE);
                }
                text.push(format!(
                    "{name}: dual={} residual={} consistent={}",
                    r.is_dual,
                    sci(r.cond1.residual),
                    r.consistent()
                ));
                rows.push(json!({"case": name, "report": r, "consistent": r.consistent()}));
            }
            Err(e) => {
                code = code.max(exit_code(&e));
                text.push(format!("{name}: error: {e}"));
                rows.push(json!({"case": name, "error": e.to_string()}));
            }
        }
    }
    let json = json!({"command": "verify", "batch": dir.display().to_string(), "tol": tol_json(tol), "cases": rows});
    Ok((Report { text, json }, code))
}

pub fn cmd_local_lift(w: &Path, v: &Path, tol: &Tol) -> Outcome {
    let load = |path: &Path| -> fusionframe::Result<_> {
        let file: FusionFrameFile = load_json(path)?;
        file.to_local_system(tol).map_err(|e| with_path(path, e))
    };
    let ws = load(w)?;
    let vs = load(v)?;
    let r = local_duality_check(&ws, &vs, tol)?;
    let text = vec![format!(
        "global_dual={} q_dual={} agree={} global_residual={} q_residual={}",
        r.global_dual.holds,
        r.q_dual.holds,
        r.agree,
        sci(r.global_dual.residual),
        sci(r.q_dual.residual)
    )];
    let json = json!({
        "command": "local-lift",
        "inputs": [w.display().to_string(), v.display().to_string()],
        "tol": tol_json(tol),
        "report": r,
    });
    let code = if r.global_dual.holds && r.q_dual.holds { EXIT_OK } else { EXIT_FAILURE };
    Ok((Report { text, json }, code))
}

/// Prints the generated fusion frame, or writes it to `out`.
pub fn cmd_gen(spec: &GenSpec, out: Option<&Path>) -> fusionframe::Result<((Report, u8), Option<PathBuf>)> {
    let ff = generate(spec)?;
    let file = FusionFrameFile::from_fusion_frame(&ff);
    let report = match out {
        Some(path) => {
            save_json(path, &file)?;
            Report {
                text: vec![format!("wrote {}", path.display())],
                json: json!({"command": "gen", "spec": spec, "path": path.display().to_string()}),
            }
        }
        None => Report {
            text: vec![to_json_string(&file)],
            json: serde_json::to_value(&file).expect("fusion frame files serialize"),
        },
    };
    Ok(((report, EXIT_OK), None))
}
