//! Acceptance runner: one PASS/FAIL line per criterion. Every tolerance is
//! exact; the runtime bound of each criterion is printed beside its result.

mod suites;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use misere::catalog::{verify_published, Catalog, VerifyLimits};
use misere::games::{parse_game_expr, parse_octal_code, Alphabet};
use misere::heaps::{solve_octal, OctalLimits};
use misere::periodic::ApGame;
use misere::report::SolveReport;
use misere::solver::{solve_closed_set, SolverConfig};

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Solves at least `min` heaps and then until a period is observed.
fn solve_report(code: &str, min: usize) -> Result<SolveReport, String> {
    let code = parse_octal_code(code).map_err(|e| e.to_string())?;
    let limits = OctalLimits {
        min_heaps: min,
        ..OctalLimits::until_period(120)
    };
    let sol = solve_octal(&code, limits, &SolverConfig::default());
    ensure(sol.converged, || format!("{code}: {}", sol.stop_reason.clone().unwrap_or_default()))?;
    SolveReport::new(&code, &sol).map_err(|e| e.to_string())
}

fn published_match(r: &SolveReport) -> Result<(), String> {
    let p = r.published.as_ref().ok_or("no builtin record")?;
    ensure(p.isomorphic, || format!("not isomorphic to {}", p.label))?;
    ensure(p.row_matches, || format!("row differs from {}", p.label))
}

fn three_way() -> Result<String, String> {
    suites::three_way(ApGame::G026, 3, 25);
    suites::three_way(ApGame::G47, 3, 14);
    Ok("0.26 on 3 heaps <= 25, 4.7 on 3 heaps <= 14".into())
}

fn octal_075() -> Result<String, String> {
    let r = solve_report("0.75", 13)?;
    ensure(r.order == 8, || format!("order {}", r.order))?;
    ensure(r.record.claimed_name.as_deref() == Some("R8"), || format!("name {:?}", r.record.claimed_name))?;
    published_match(&r)?;
    let row: Vec<&str> = r.record.phi.words[..13].iter().map(String::as_str).collect();
    let row = row.join(" ");
    ensure(row == "a b a b c b c b ab2 b ab2 b ab2", || format!("row {row}"))?;
    let period = r.period.map(|p| p.period);
    ensure(period == Some(2), || format!("period {period:?}"))?;
    Ok(format!("order 8, R8, row {row}, period 2"))
}

fn octal_034() -> Result<String, String> {
    let r = solve_report("0.34", 40)?;
    ensure(r.record.claimed_name.as_deref() == Some("S12"), || format!("name {:?}", r.record.claimed_name))?;
    published_match(&r)?;
    let period = r.period.map(|p| p.period);
    ensure(period == Some(8), || format!("period {period:?}"))?;
    Ok(format!("S12, period 8, row matches through heap {}", r.heaps))
}

fn day4() -> Result<String, String> {
    let catalog = Catalog::builtin();
    let mut found = Vec::new();
    for (expr, order, name) in [("0", 1, "T0"), ("*", 2, "T1"), ("*2", 6, "T2"), ("*4", 10, "T3")] {
        let dag = parse_game_expr(expr).map_err(|e| e.to_string())?;
        let alphabet = Alphabet::for_dag(&dag, &dag.followers(dag.summands())).map_err(|e| e.to_string())?;
        let sol = solve_closed_set(&alphabet, &SolverConfig::default());
        ensure(sol.converged, || format!("{expr} did not converge"))?;
        let got = sol.candidate.order();
        ensure(got == order, || format!("{expr}: order {got}"))?;
        let named = catalog.name_of(sol.candidate.monoid());
        ensure(named == Some(name), || format!("{expr}: named {named:?}"))?;
        found.push(format!("{expr}->{got} {name}"));
    }
    Ok(found.join(", "))
}

fn quaternary() -> Result<String, String> {
    let r = solve_report("0.123(0)", 14)?;
    published_match(&r)?;
    let period = r.period.map(|p| p.period);
    ensure(period == Some(5), || format!("period {period:?}"))?;
    Ok(format!("order {}, row matches through heap {}, period 5", r.order, r.heaps))
}

fn repeated_3310() -> Result<String, String> {
    let mut seen = Vec::new();
    for rec in &Catalog::builtin().orders {
        let code = parse_octal_code(&rec.code).map_err(|e| e.to_string())?;
        let sol = solve_octal(&code, OctalLimits::until_period(200), &SolverConfig::default());
        ensure(sol.converged, || format!("{}: did not converge", rec.code))?;
        let order = sol.candidate.order();
        let period = sol.period.map(|p| p.period);
        ensure(order == rec.order, || format!("{}: order {order}, want {}", rec.code, rec.order))?;
        ensure(period == Some(rec.period), || format!("{}: period {period:?}", rec.code))?;
        seen.push(order.to_string());
    }
    Ok(format!("orders {}", seen.join(", ")))
}

fn verify_all() -> Result<String, String> {
    let records = &Catalog::builtin().solutions;
    for rec in records {
        let v = verify_published(rec, VerifyLimits::default());
        ensure(v.error.is_none(), || format!("{}: {:?}", rec.code, v.error))?;
        ensure(v.consistent, || format!("{}: inconsistent at {:?}", rec.code, v.witness))?;
        ensure(v.reduced, || format!("{}: not reduced", rec.code))?;
        ensure(v.iso_match != Some(false), || format!("{}: claimed name fails", rec.code))?;
    }
    Ok(format!("{} records consistent and reduced at 20 beans", records.len()))
}

fn properties() -> Result<String, String> {
    suites::reduction_is_idempotent_and_separates_classes();
    suites::pruned_n_verification_matches_exhaustive_sweep();
    suites::failure_traces_increase_in_lex_order();
    suites::shortcuts_do_not_change_the_quotient();
    suites::every_pair_of_normal_forms_is_separated();
    Ok("reduction, pruning, traces, shortcuts, witnesses".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, Check); 8] = [
        ("1 three-way agreement", 120, three_way),
        ("2 0.75 is R8", 10, octal_075),
        ("3 0.34 is S12", 60, octal_034),
        ("4 day-4 representatives", 10, day4),
        ("5 quaternary 0.123(0)", 300, quaternary),
        ("6 0.(3310)^n orders", 1800, repeated_3310),
        ("7 builtin records verify", 1200, verify_all),
        ("8 property suites", 3600, properties),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (label, limit, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let took = start.elapsed();
        let result = result.and_then(|msg| {
            ensure(took <= Duration::from_secs(limit), || format!("took {took:.1?}"))?;
            Ok(msg)
        });
        let (status, msg) = match result {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!("{status} {label:<26} {:>7.1}s <= {limit}s  {msg}", took.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
