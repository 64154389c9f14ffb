use misere::catalog::{match_candidate, verify_published, Catalog, PublishedSolution, VerifyLimits};
use misere::games::parse_octal_code;
use misere::heaps::{solve_octal, OctalLimits};
use misere::report::SolveReport;
use misere::solver::SolverConfig;

#[test]
fn builtin_records_round_trip_through_json() {
    let catalog = Catalog::builtin();
    assert_eq!(catalog.solutions.len(), 27);
    for rec in &catalog.solutions {
        rec.check().unwrap();
        let text = serde_json::to_string(rec).unwrap();
        let back: PublishedSolution = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, rec);
    }
}

#[test]
fn a_mutated_record_is_caught() {
    let code = parse_octal_code("0.75").unwrap();
    let mut rec = Catalog::builtin().solution(&code).unwrap().clone();
    rec.pset.retain(|w| w != "b2");
    let report = verify_published(
        &rec,
        VerifyLimits {
            beans: 14,
            ..VerifyLimits::default()
        },
    );
    assert!(!report.consistent);
    assert!(report.witness.is_some());
    assert_eq!(report.iso_match, Some(false));
}

#[test]
fn computed_0_3101_is_r14() {
    let code = parse_octal_code("0.3101").unwrap();
    let sol = solve_octal(&code, OctalLimits::heaps(20), &SolverConfig::default());
    assert!(sol.converged);
    assert_eq!(Catalog::builtin().name_of(sol.candidate.monoid()), Some("R14"));
    let rec = Catalog::builtin().solution(&code).unwrap();
    assert!(match_candidate(&sol.candidate, rec, 4096).unwrap().isomorphic);
}

#[test]
fn solve_report_round_trips_and_reads_as_a_record() {
    let code = parse_octal_code("0.75").unwrap();
    let sol = solve_octal(&code, OctalLimits::until_period(64), &SolverConfig::default());
    let report = SolveReport::new(&code, &sol).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: SolveReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);

    // The computed record verifies like a published one.
    let rec: PublishedSolution = serde_json::from_str(&text).unwrap();
    let v = verify_published(&rec, VerifyLimits::default());
    assert!(v.consistent && v.reduced, "{v:?}");
    assert_eq!(v.claimed_name.as_deref(), Some("R8"));
    assert_eq!(v.iso_match, Some(true));
}
