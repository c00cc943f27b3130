use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use pptfarm::analysis::{
    bound_report, dims_for_epsilon, ppt_audit, verify_lemma1, AuditConfig, AuditReport, Lemma1Check,
    SCALING_CSV_HEADER,
};
use pptfarm::family::{build_mixture, support_orthogonality_check, BlockLayout, OrthogonalityReport};
use pptfarm::tensor::{format_float, matrix_to_json, validate_density, write_matrix, DensityReport};

use crate::source::{resolve, Family};
use crate::{AuditArgs, BoundsArgs, BuildArgs, Failure, Format, LayoutArgs, ScanArgs, VerifyArgs};

/// Largest accepted `|‖ρ − ρ⁽⁰⁾‖₁ − 2q|`.
const LEMMA1_TOL: f64 = 1e-8;

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn unsupported(format: Format, command: &str) -> Failure {
    Failure::Input(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn weights(given: &[f64], family: &Family, command: &str) -> Result<Vec<f64>, Failure> {
    if !given.is_empty() {
        return Ok(given.to_vec());
    }
    family
        .file_q
        .map(|q| vec![q])
        .ok_or_else(|| Failure::Input(format!("{command} needs -q (or a family file with q)")))
}

pub fn build(args: BuildArgs) -> Result<(), Failure> {
    let family = resolve(&args.family)?;
    let given: Vec<f64> = args.q.into_iter().collect();
    let q = weights(&given, &family, "build")?[0];
    let params = family.params.with_q(q)?;
    let rho = build_mixture(&params, &family.blocks)?;
    let (diagonal, off_diagonal) = BlockLayout::new(params.n, params.d_a)?.placement_counts();
    let summary = format!(
        "order {}\ntrace {}\nblocks {}\n",
        rho.order(),
        format_float(rho.trace()),
        diagonal + off_diagonal
    );
    match &args.output.out {
        Some(path) => {
            write_matrix(path, &rho)?;
            print!("{summary}");
        }
        None => {
            print!("{}", matrix_to_json(&rho)?);
            eprint!("{summary}");
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyPoint {
    q: f64,
    density: DensityReport,
    orthogonality: OrthogonalityReport,
    lemma1: Lemma1Check,
    lemma1_pass: bool,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    n: usize,
    d_a: usize,
    d_b: usize,
    blocks: &'static str,
    tol: f64,
    lemma1_tol: f64,
    points: Vec<VerifyPoint>,
    pass: bool,
}

pub fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let family = resolve(&args.family)?;
    let grid = weights(&args.q_grid, &family, "verify")?;
    let orthogonality = support_orthogonality_check(&family.params, &family.blocks)?;
    let mut points = Vec::with_capacity(grid.len());
    for q in grid {
        let params = family.params.with_q(q)?;
        let rho = build_mixture(&params, &family.blocks)?;
        let density = validate_density(&rho, args.tol)?;
        let lemma1 = verify_lemma1(&params, &family.blocks)?;
        let lemma1_pass = lemma1.residual <= LEMMA1_TOL;
        points.push(VerifyPoint {
            q,
            density,
            orthogonality,
            lemma1,
            lemma1_pass,
            pass: density.pass && orthogonality.pass && lemma1_pass,
        });
    }
    let pass = points.iter().all(|p| p.pass);
    let report = VerifyReport {
        n: family.params.n,
        d_a: family.params.d_a,
        d_b: family.params.d_b,
        blocks: family.origin,
        tol: args.tol,
        lemma1_tol: LEMMA1_TOL,
        points,
        pass,
    };
    emit(&args.output.out, &to_json(&report)?)?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Checks("verification failed".into()))
    }
}

fn audit_csv(report: &AuditReport) -> String {
    let mut out = String::from("q,rho_min_eig");
    for cut in &report.cuts {
        let names: Vec<String> = cut.parties.iter().map(usize::to_string).collect();
        let _ = write!(out, ",cut_{}", names.join("_"));
    }
    out.push_str(",min_eig,feasible\n");
    for p in &report.points {
        let _ = write!(out, "{},{}", format_float(p.q), format_float(p.rho_min_eig));
        for c in &p.cuts {
            let _ = write!(out, ",{}", format_float(c.min_eig));
        }
        let _ = writeln!(out, ",{},{}", format_float(p.min_eig), p.feasible);
    }
    out
}

pub fn audit(args: AuditArgs) -> Result<(), Failure> {
    let family = resolve(&args.family)?;
    let mut config = AuditConfig {
        a_side_diagnostics: args.a_side,
        tol: args.tol,
        ..AuditConfig::default()
    };
    if !args.q_grid.is_empty() {
        config.q_grid = args.q_grid.clone();
    }
    let report = ppt_audit(&family.params, &family.blocks, &config)?;
    let text = match args.format {
        Format::Json => to_json(&report)?,
        Format::Csv => audit_csv(&report),
        Format::Text => return Err(unsupported(args.format, "audit")),
    };
    emit(&args.output.out, &text)
}

pub fn bounds(args: BoundsArgs) -> Result<(), Failure> {
    let r = bound_report(args.n, args.d_a, args.d_b)?;
    let text = match args.format {
        Format::Json => to_json(&r)?,
        Format::Csv => {
            let reals = [r.q_star, r.lemma1_distance, r.rho0_sep_bound, r.lemma3_bound, r.c_n];
            let reals: Vec<String> = reals.iter().map(|&v| format_float(v)).collect();
            format!(
                "n,d_a,d_b,q_star,lemma1_distance,rho0_sep_bound,lemma3_bound,c_n\n{},{},{},{}\n",
                r.n,
                r.d_a,
                r.d_b,
                reals.join(",")
            )
        }
        Format::Text => return Err(unsupported(args.format, "bounds")),
    };
    emit(&args.output.out, &text)
}

pub fn scan(args: ScanArgs) -> Result<(), Failure> {
    let mut rows = Vec::with_capacity(args.n.len() * args.epsilon.len());
    for &n in &args.n {
        for &eps in &args.epsilon {
            rows.push(dims_for_epsilon(n, eps)?);
        }
    }
    let text = match args.format {
        Format::Csv => {
            let mut out = format!("{SCALING_CSV_HEADER}\n");
            for row in &rows {
                out.push_str(&row.csv_line());
                out.push('\n');
            }
            out
        }
        Format::Json => to_json(&rows)?,
        Format::Text => return Err(unsupported(args.format, "scan")),
    };
    emit(&args.output.out, &text)
}

pub fn layout(args: LayoutArgs) -> Result<(), Failure> {
    let layout = BlockLayout::new(args.n, args.d_a)?;
    let text = match args.format {
        Format::Text => layout.render_text(),
        Format::Json => to_json(&layout.to_report())?,
        Format::Csv => return Err(unsupported(args.format, "layout")),
    };
    emit(&args.output.out, &text)
}
