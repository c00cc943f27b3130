//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pptfarm::analysis::{
    analytic_conditions, assemble_x_block, assemble_y_block, binding_q, canonical_cuts, dims_for_epsilon,
    ppt_audit, q_star, sep_distance_lower_bound, verify_lemma1, AuditConfig, AuditReport, ConditionMargins,
    Margin,
};
use pptfarm::family::{count_patterns, payload_space, LabelMap};
use pptfarm::tensor::{eigenvalues, partial_transpose};
use pptfarm::{BlockPair, FactorSpace, FamilyParams, SymMatrix};

const EXAMPLE: &str = include_str!("../../core/tests/data/example_layout_n3_dA3.txt");

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_budget(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed < budget, || format!("took {elapsed:?}, budget {budget:?}"))
}

fn canonical(n: usize, d_a: usize, d_b: usize, q: f64) -> (FamilyParams, BlockPair) {
    let p = FamilyParams::new(n, d_a, d_b, q).unwrap();
    let b = BlockPair::canonical(&p).unwrap();
    (p, b)
}

fn combinatorics() -> Outcome {
    let start = Instant::now();
    for (n, want) in [(2, 1), (3, 3), (4, 7)] {
        let got = count_patterns(n).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("count_patterns({n}) = {got}, want {want}"))?;
    }
    let mut labels = 0;
    for n in 2..=4 {
        for d_a in 2..=4 {
            let map = LabelMap::new(n, d_a).map_err(|e| e.to_string())?;
            let want = count_patterns(n).unwrap() * d_a * (d_a - 1) / 2;
            ensure(map.len() == want, || format!("({n},{d_a}): {} labels, want {want}", map.len()))?;
            for label in map.iter() {
                let back = map.label_of(&label.alpha, label.i, label.j).map_err(|e| e.to_string())?;
                ensure(back == label.l, || format!("({n},{d_a}): label {} maps back to {back}", label.l))?;
                let (v, w) = label.alpha.apply(label.i, label.j);
                ensure(v == label.v && w == label.w, || format!("({n},{d_a}): support of label {}", label.l))?;
            }
            labels += map.len();
        }
    }
    within_budget(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{labels} labels round-trip, {:?}", start.elapsed()))
}

fn golden_layout() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_pptfarm"))
        .args(["layout", "-n", "3", "--dA", "3"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("exit {:?}", out.status.code()))?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    ensure(text == EXAMPLE, || "grid differs from the stored example pattern".into())?;
    let grid: Vec<Vec<&str>> = text.lines().map(|l| l.split(' ').collect()).collect();
    for (l, k) in [2, 3, 4, 5, 7, 9, 15, 17, 18].into_iter().enumerate() {
        let want = (l + 1).to_string();
        ensure(grid[k - 1][k - 1] == want, || format!("block ({k},{k}) is not label {want}"))?;
    }
    for r in [1, 14, 27] {
        for c in [1, 14, 27] {
            ensure(grid[r - 1][c - 1] == "a", || format!("block ({r},{c}) is not a rho0 block"))?;
        }
    }
    Ok("27x27 grid identical to the example".into())
}

fn trace_distance_to_rho0() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (n, d_a, d_b) in [(2, 2, 2), (2, 3, 2), (3, 3, 2)] {
        for q in [0.0, 0.25, q_star(n, d_a, d_b).unwrap(), 1.0] {
            let (p, b) = canonical(n, d_a, d_b, q);
            let check = verify_lemma1(&p, &b).map_err(|e| e.to_string())?;
            ensure(check.residual <= 1e-8, || format!("({n},{d_a},{d_b}) q={q}: residual {}", check.residual))?;
            worst = worst.max(check.residual);
        }
    }
    within_budget(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("max residual {worst:e}, {:?}", start.elapsed()))
}

fn block_spectra() -> Outcome {
    let mut configs = 0;
    for n in 2..=6 {
        for d_b in 2..=8usize {
            let m = d_b.pow(n as u32);
            if m > 64 {
                continue;
            }
            for d_a in 2..=4 {
                let (p, blocks) = canonical(n, d_a, d_b, 0.0);
                let nu = 1.0 / (d_a * m) as f64;
                let ev_a = eigenvalues(blocks.a()).map_err(|e| e.to_string())?;
                ensure(ev_a.iter().all(|v| (v - nu).abs() <= 1e-12), || {
                    format!("({n},{d_a},{d_b}): spec(a) not uniform at {nu}")
                })?;
                let ev_b = eigenvalues(blocks.b()).map_err(|e| e.to_string())?;
                let top = ev_b[m - 1];
                ensure((top - 0.5).abs() <= 1e-12, || format!("({n},{d_a},{d_b}): top eigenvalue of b {top}"))?;
                ensure(ev_b[..m - 1].iter().all(|v| v.abs() <= 1e-12), || {
                    format!("({n},{d_a},{d_b}): b has a nonzero eigenvalue besides 1/2")
                })?;
                ensure(p.b_dim() == Some(m), || "payload order".into())?;
                configs += 1;
            }
        }
    }
    Ok(format!("{configs} configurations with d_B^n <= 64"))
}

fn formula_regression() -> Outcome {
    let checks = [
        ("q_star(2,2,2)", q_star(2, 2, 2), 1.0 / 5.0),
        ("q_star(3,3,2)", q_star(3, 3, 2), 3.0 / 7.0),
        ("bound(2,2,2)", sep_distance_lower_bound(2, 2, 2), 11.0 / 20.0),
        ("bound(3,3,2)", sep_distance_lower_bound(3, 3, 2), 1.0 - 1.0 / 27.0 - 3.0 / 7.0),
    ];
    let mut failures = Vec::new();
    for (name, got, want) in checks {
        let got = got.map_err(|e| e.to_string())?;
        if (got - want).abs() > 1e-12 {
            failures.push(format!("{name} = {got}, want {want}"));
        }
    }
    let reference = sep_distance_lower_bound(2, 2, 2).unwrap();
    let mut minimum = (reference, (2, 2, 2));
    let mut below = 0;
    for n in 2..=4 {
        for d_a in 2..=4 {
            for d_b in 2..=4 {
                let v = sep_distance_lower_bound(n, d_a, d_b).unwrap();
                if v < reference - 1e-12 {
                    below += 1;
                }
                if v < minimum.0 {
                    minimum = (v, (n, d_a, d_b));
                }
            }
        }
    }
    if below > 0 {
        failures.push(format!(
            "bound(2,2,2) = {reference} is not the grid minimum: {below} configurations lie below it, \
             smallest {} at (n,d_A,d_B) = {:?}",
            minimum.0, minimum.1
        ));
    }
    if failures.is_empty() {
        Ok("four closed forms exact; (2,2,2) is the grid minimum".into())
    } else {
        Err(format!("closed forms exact to 1e-12 except as listed; {}", failures.join("; ")))
    }
}

/// Full-mode margins expanded by multiplicity, sorted.
fn expanded(families: &[&[Margin]]) -> Vec<f64> {
    let mut out: Vec<f64> = families
        .iter()
        .flat_map(|f| f.iter().flat_map(|m| std::iter::repeat_n(m.value, m.multiplicity)))
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

fn margins_in_spectrum(margins: &ConditionMargins, x_ev: &[f64], y_ev: &[f64]) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for (name, family) in margins.families() {
        let spectrum = if name.starts_with('x') { x_ev } else { y_ev };
        for m in family {
            let gap = spectrum.iter().map(|e| (e - m.value).abs()).fold(f64::INFINITY, f64::min);
            ensure(gap <= 1e-10, || format!("{:?} {name} margin {} not an eigenvalue", margins.mode, m.value))?;
            worst = worst.max(gap);
        }
    }
    Ok(worst)
}

fn condition_fidelity() -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_q = 0.0f64;
    for (n, d_a, d_b) in [(2, 2, 2), (2, 3, 2), (3, 2, 2), (3, 3, 2), (2, 2, 3), (4, 2, 2), (3, 4, 2)] {
        for q in [0.0, 0.2, q_star(n, d_a, d_b).unwrap(), 0.6, 1.0] {
            let (p, b) = canonical(n, d_a, d_b, q);
            let margins = analytic_conditions(&p, &b).map_err(|e| e.to_string())?;
            let x_ev = eigenvalues(&assemble_x_block(&p, &b).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let y_ev = eigenvalues(&assemble_y_block(&p, &b).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            worst = worst.max(margins_in_spectrum(&margins.top, &x_ev, &y_ev)?);
            worst = worst.max(margins_in_spectrum(&margins.full, &x_ev, &y_ev)?);
            let full = &margins.full;
            let x_all = expanded(&[&full.x_plus, &full.x_minus]);
            let y_all = expanded(&[&full.y_plus, &full.y_minus]);
            ensure(x_all.len() == x_ev.len() && y_all.len() == y_ev.len(), || {
                format!("({n},{d_a},{d_b}) q={q}: multiplicities do not cover the spectrum")
            })?;
            for (a, e) in x_all.iter().chain(&y_all).zip(x_ev.iter().chain(&y_ev)) {
                ensure((a - e).abs() <= 1e-10, || format!("({n},{d_a},{d_b}) q={q}: {a} vs {e}"))?;
            }
        }
        let (p, b) = canonical(n, d_a, d_b, 0.0);
        let q = binding_q(&p, &b).map_err(|e| e.to_string())?;
        let star = q_star(n, d_a, d_b).unwrap();
        ensure((q - star).abs() <= 1e-12, || format!("({n},{d_a},{d_b}): binding q {q} vs q* {star}"))?;
        worst_q = worst_q.max((q - star).abs());
    }
    Ok(format!("margin/eigenvalue gap {worst:e}, binding q gap {worst_q:e}"))
}

fn random_symmetric(rng: &mut ChaCha8Rng, dims: &[usize]) -> SymMatrix {
    let space = FactorSpace::plain(dims.to_vec()).unwrap();
    SymMatrix::from_upper_fn(space, |_, _| rng.gen_range(-1.0..1.0))
}

fn sorted_entries(m: &SymMatrix) -> Vec<f64> {
    let mut v = m.entries().to_vec();
    v.sort_by(f64::total_cmp);
    v
}

fn partial_transpose_correctness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let dims = [2, 2, 2];
    let subsets: Vec<Vec<usize>> = (0u8..8).map(|m| (0..3).filter(|k| m >> k & 1 == 1).collect()).collect();
    let mut spectrum_gap = 0.0f64;
    for trial in 0..50 {
        let a = random_symmetric(&mut rng, &dims);
        let b = random_symmetric(&mut rng, &dims);
        let s: f64 = rng.gen_range(-2.0..2.0);
        for set in &subsets {
            let pa = partial_transpose(&a, set).map_err(|e| e.to_string())?;
            let twice = partial_transpose(&pa, set).map_err(|e| e.to_string())?;
            ensure(twice.entries() == a.entries(), || format!("trial {trial} {set:?}: not an involution"))?;
            let lhs = partial_transpose(&a.combine(s, &b, 1.0).unwrap(), set).unwrap();
            let rhs = pa.combine(s, &partial_transpose(&b, set).unwrap(), 1.0).unwrap();
            ensure(lhs.entries() == rhs.entries(), || format!("trial {trial} {set:?}: not linear"))?;
            ensure(pa.trace() == a.trace(), || format!("trial {trial} {set:?}: trace changed"))?;
            ensure(sorted_entries(&pa) == sorted_entries(&a), || {
                format!("trial {trial} {set:?}: entries are not a permutation, Frobenius norm not preserved")
            })?;
            let naive = common::naive_partial_transpose(&dims, a.entries(), set);
            ensure(pa.entries() == &naive[..], || format!("trial {trial} {set:?}: differs from naive oracle"))?;
        }
        let full = partial_transpose(&a, &[0, 1, 2]).unwrap();
        let (ea, ef) = (eigenvalues(&a).unwrap(), eigenvalues(&full).unwrap());
        for (x, y) in ea.iter().zip(&ef) {
            spectrum_gap = spectrum_gap.max((x - y).abs());
        }
    }
    ensure(spectrum_gap <= 1e-10, || format!("full transpose spectrum gap {spectrum_gap:e}"))?;
    Ok(format!("50 random matrices x 8 factor subsets, full-transpose spectrum gap {spectrum_gap:e}"))
}

fn check_interval(report: &AuditReport) -> Result<(), String> {
    ensure(report.search.resolution <= 1e-6, || format!("resolution {}", report.search.resolution))?;
    if let Some([lo, hi]) = report.feasible_q {
        ensure((0.0..=1.0).contains(&lo) && lo <= hi && hi <= 1.0, || format!("interval [{lo}, {hi}]"))?;
    }
    Ok(())
}

fn audit_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut intervals = Vec::new();
    for (n, d_a, d_b, grid) in [(2, 2, 2, vec![0.0, 0.2, 1.0]), (3, 3, 2, vec![0.0, 3.0 / 7.0, 1.0])] {
        let (p, b) = canonical(n, d_a, d_b, 0.0);
        let config = AuditConfig {
            q_grid: grid.clone(),
            ..AuditConfig::default()
        };
        let report = ppt_audit(&p, &b, &config).map_err(|e| e.to_string())?;
        let cuts = canonical_cuts(&FactorSpace::family(n, d_a, d_b).unwrap()).unwrap();
        ensure(report.cuts == cuts, || "cut list differs from the canonical cuts".into())?;
        for (point, &q) in report.points.iter().zip(&grid) {
            let (rho_min, cut_mins) = common::brute_force_minima(n, d_a, d_b, q);
            worst = worst.max((point.rho_min_eig - rho_min).abs());
            for (c, want) in point.cuts.iter().zip(&cut_mins) {
                worst = worst.max((c.min_eig - want).abs());
            }
        }
        check_interval(&report)?;
        intervals.push(format!("({n},{d_a},{d_b}) feasible_q {:?}", report.feasible_q));
    }
    ensure(worst <= 1e-10, || format!("audit vs brute force gap {worst:e}"))?;

    // control with a nonempty feasible set: a = 𝟙/(d_A·d_B^n), b = 𝟙/(2·d_B^n).
    // PPT forces x·b = p·a, so the set is the single point q = 1/2; the
    // oracle must confirm feasibility inside and infeasibility just outside.
    let (n, d_a, d_b) = (2, 2, 2);
    let p = FamilyParams::new(n, d_a, d_b, 0.0).unwrap();
    let space = payload_space(&p).unwrap();
    let m = space.total_dim();
    let a = SymMatrix::scaled_identity(space.clone(), 1.0 / (d_a * m) as f64);
    let b = SymMatrix::scaled_identity(space, 1.0 / (2 * m) as f64);
    let blocks = BlockPair::new(&p, a.clone(), b.clone(), 1e-9).map_err(|e| e.to_string())?;
    let report = ppt_audit(&p, &blocks, &AuditConfig::default()).map_err(|e| e.to_string())?;
    check_interval(&report)?;
    let [lo, hi] = report.feasible_q.ok_or("control configuration reported an empty interval")?;
    let oracle_min = |q: f64| {
        let mat = common::family_matrix_with(n, d_a, d_b, q, a.entries(), b.entries());
        let (rho, cuts) = common::minima_of(n, d_a, d_b, &mat);
        cuts.into_iter().fold(rho, f64::min)
    };
    let mid = 0.5 * (lo + hi);
    ensure((mid - 0.5).abs() <= 1e-6, || format!("control interval [{lo}, {hi}] misses q = 1/2"))?;
    ensure(oracle_min(mid) >= report.psd_threshold, || format!("q={mid} should be feasible"))?;
    for outside in [lo - 1e-5, hi + 1e-5] {
        ensure(oracle_min(outside) < report.psd_threshold, || format!("q={outside} should be infeasible"))?;
    }
    intervals.push(format!("control feasible_q [{lo:.9}, {hi:.9}]"));
    within_budget(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("gap {worst:e}; {}; {:?}", intervals.join("; "), start.elapsed()))
}

fn dimension_scaling() -> Outcome {
    let grid = [1e-1, 1e-2, 1e-3, 1e-4];
    let mut notes = Vec::new();
    for n in 2..=4 {
        let c = pptfarm::analysis::c_n(n).unwrap();
        let mut prev: Option<(f64, f64)> = None;
        for &eps in &grid {
            let row = dims_for_epsilon(n, eps).map_err(|e| e.to_string())?;
            ensure(row.d_ideal <= row.d_bound * (1.0 + 1e-9), || {
                format!("n={n} eps={eps}: d_ideal {} > bound {}", row.d_ideal, row.d_bound)
            })?;
            ensure(row.d_closed_form <= row.d_bound * (1.0 + 1e-9), || {
                format!("n={n} eps={eps}: closed form {} > bound {}", row.d_closed_form, row.d_bound)
            })?;
            let scaled = row.d_ideal * eps.powf(2.0 + 1.0 / n as f64);
            let scaled_cf = row.d_closed_form * eps.powf(2.0 + 1.0 / n as f64);
            if let Some((s, s_cf)) = prev {
                // ε decreases along the grid, so the scaled values must not decrease
                ensure(scaled >= s * (1.0 - 1e-9) && scaled_cf >= s_cf * (1.0 - 1e-9), || {
                    format!("n={n}: scaled dimension decreases at eps={eps}")
                })?;
            }
            ensure(scaled_cf <= c * (1.0 + 1e-9), || format!("n={n} eps={eps}: {scaled_cf} above C(n) {c}"))?;
            prev = Some((scaled, scaled_cf));
        }
        let (s, s_cf) = prev.unwrap();
        notes.push(format!("n={n}: d*eps^(2+1/n) -> {s:.4} (closed form {s_cf:.4}) <= C(n) = {c:.4}"));
    }
    Ok(notes.join("; "))
}

fn run_cli(args: &[String], out: Option<&std::path::Path>) -> Result<Vec<u8>, String> {
    let mut full: Vec<String> = args.to_vec();
    if let Some(path) = out {
        full.push("-o".into());
        full.push(path.display().to_string());
    }
    let res = Command::new(env!("CARGO_BIN_EXE_pptfarm"))
        .args(&full)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(res.status.success(), || format!("{full:?} exited with {:?}", res.status.code()))?;
    let mut bytes = res.stdout;
    if let Some(path) = out {
        bytes.extend(std::fs::read(path).map_err(|e| e.to_string())?);
    }
    Ok(bytes)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let invocations: [&str; 9] = [
        "build -n 3 --dA 3 --dB 2 -q 0.3",
        "verify -n 2 --dA 3 --dB 2 -q 0,0.25,1",
        "audit -n 3 --dA 2 --dB 2 -q 0,0.5,1",
        "audit -n 2 --dA 2 --dB 2 --format csv",
        "bounds -n 3 --dA 3 --dB 2",
        "bounds -n 2 --dA 4 --dB 3 --format csv",
        "scan",
        "layout -n 3 --dA 3",
        "layout -n 2 --dA 3 --format json",
    ];
    for (k, line) in invocations.iter().enumerate() {
        let args: Vec<String> = line.split(' ').map(String::from).collect();
        let first = run_cli(&args, None)?;
        let second = run_cli(&args, None)?;
        ensure(first == second, || format!("`{line}` differs between runs"))?;
        let (p1, p2) = (dir.path().join(format!("{k}a")), dir.path().join(format!("{k}b")));
        let first = run_cli(&args, Some(&p1))?;
        let second = run_cli(&args, Some(&p2))?;
        ensure(first == second, || format!("`{line} -o FILE` differs between runs"))?;
    }
    Ok(format!("{} invocations byte-identical, stdout and file output", invocations.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("combinatorics", combinatorics),
        ("golden layout", golden_layout),
        ("trace distance to rho0", trace_distance_to_rho0),
        ("canonical block spectra", block_spectra),
        ("formula regression", formula_regression),
        ("margin fidelity", condition_fidelity),
        ("partial transpose", partial_transpose_correctness),
        ("audit oracle equivalence", audit_equivalence),
        ("dimension scaling", dimension_scaling),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
