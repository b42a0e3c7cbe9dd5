//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use cli::{suites, CliError, FamilyArg, RunConfig, Suite};
use pva::CheckRecord;
use scalars::ratio;
use winterp::Param;

type Runs = Vec<(Suite, RunConfig)>;

fn base() -> RunConfig {
    RunConfig::default()
}

fn lie(family: FamilyArg, rank: usize) -> RunConfig {
    base().with_family(family).with_rank(rank)
}

fn criteria() -> Vec<(u32, &'static str, Runs)> {
    use FamilyArg::*;
    let t = |n: i64| Param::int(n);
    vec![
        (1, "Q coefficients against binomial ratios, l <= m <= 6, n <= 10", vec![(Suite::Qcoeff, base())]),
        (2, "operator products, adjoints, symbols and inverses on seeded samples", vec![(Suite::Invert, base())]),
        (3, "skew-symmetry of W(gl_T) with T symbolic, offsets <= 3 (horizon 8)", vec![(Suite::Skew, base())]),
        (
            4,
            "Jacobi identity in W(gl_2), W(gl_3), W(po_2)",
            vec![
                (Suite::Jacobi, base().with_param(t(2))),
                (Suite::Jacobi, base().with_param(t(3))),
                (Suite::Jacobi, base().with_family(PoT).with_param(t(2)).with_horizon(10)),
            ],
        ),
        (5, "self-adjoint operator of W(po_T), p_1 and even constraints to horizon 8", vec![(Suite::Selfadj, base())]),
        (6, "evaluation then truncation equals the classical bracket, n = 2, 3, 4", vec![(Suite::Evpr, base())]),
        (
            7,
            "parity anti-isomorphism at alpha = 5/2 (gl) and alpha = 3 (po)",
            vec![
                (Suite::Pi, base().with_param(Param::Value(ratio(5, 2)))),
                (Suite::Pi, base().with_family(PoT).with_param(t(3))),
            ],
        ),
        (
            8,
            "Segal-Sugawara vectors central at the critical level: gl_2, gl_3, sp_2, so_3",
            vec![
                (Suite::Central, lie(Gl, 2)),
                (Suite::Central, lie(Gl, 3)),
                (Suite::Central, lie(Sp, 1)),
                (Suite::Central, lie(So, 1)),
            ],
        ),
        (
            9,
            "interpolated vectors evaluate to the classical ones, n = 2, 3",
            vec![(Suite::Interp, lie(Gl, 2)), (Suite::Interp, lie(Gl, 3)), (Suite::Interp, lie(Sp, 1)), (Suite::Interp, lie(So, 1))],
        ),
        (
            10,
            "Harish-Chandra images equal Miura generators: gl_2, gl_3, so_3, sp_2",
            vec![(Suite::Ff, lie(Gl, 2)), (Suite::Ff, lie(Gl, 3)), (Suite::Ff, lie(So, 1)), (Suite::Ff, lie(Sp, 1))],
        ),
        (
            11,
            "interpolated and classical correspondences commute: gl_2, gl_3, sp_2, so_3",
            vec![(Suite::Square, lie(Gl, 2)), (Suite::Square, lie(Gl, 3)), (Suite::Square, lie(Sp, 1)), (Suite::Square, lie(So, 1))],
        ),
        (12, "diagram idempotent, realization multiplicativity, rank above threshold", vec![(Suite::Diagrams, base())]),
        (13, "bracket of central vectors matches the W(gl_2) bracket", vec![(Suite::Center, lie(Gl, 2))]),
    ]
}

fn run_all(runs: &Runs) -> Result<Vec<CheckRecord>, CliError> {
    let mut out = Vec::new();
    for (suite, cfg) in runs {
        out.extend(suites::run(*suite, cfg)?);
    }
    Ok(out)
}

fn main() -> ExitCode {
    let mut ok = true;
    for (id, label, runs) in criteria() {
        if id == 13 && !cfg!(feature = "center-bracket") {
            println!("SKIP {id:>2}  {label} (center-bracket feature disabled)");
            continue;
        }
        let start = Instant::now();
        let result = run_all(&runs);
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(records) => {
                let failed: Vec<&CheckRecord> = records.iter().filter(|r| !r.pass).collect();
                let pass = failed.is_empty() && !records.is_empty();
                ok &= pass;
                let mark = if pass { "PASS" } else { "FAIL" };
                println!("{mark} {id:>2}  {label} [{} checks, {secs:.1}s]", records.len());
                for r in failed.iter().take(3) {
                    println!("       {} {} residual {}", r.check, r.inputs, r.residual);
                }
            }
            Err(e) => {
                ok = false;
                println!("FAIL {id:>2}  {label} [error: {e}]");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
