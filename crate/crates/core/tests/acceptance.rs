//! The acceptance criteria, one pass/fail line each.

use qbgg::qfield::RankMode;
use qbgg::report::{CheckRecord, Status};
use qbgg::suite::*;

fn line(n: usize, name: &str, rec: &CheckRecord) -> bool {
    let pass = rec.status == Status::Pass;
    println!(
        "criterion {n:>2} {name:<28} {} ({} ms)",
        if pass { "PASS" } else { "FAIL" },
        rec.elapsed_ms
    );
    if !pass {
        println!("    witness: {}", rec.witness);
    }
    pass
}

#[test]
fn acceptance() {
    let cfg = SuiteConfig::acceptance();
    let mode = RankMode::Symbolic;
    let podles = cfg.podles.expect("sphere configured");
    let bgg_flags: Vec<FlagSpec> = cfg.bgg.iter().map(|(f, _)| f.clone()).collect();

    let results = [
        line(1, "dimension identity", &check_dimension_identity(&cfg.family)),
        line(2, "incomparability", &check_incomparability(&cfg.family, true)),
        line(3, "sign assignment", &check_signs(&cfg.family)),
        line(4, "PBW dimensions", &check_pbw(&cfg.pbw_types, cfg.pbw_height)),
        line(5, "singular vectors", &check_singular_vectors(&bgg_flags)),
        line(6, "BGG complex", &check_bgg(&cfg.bgg, mode)),
        line(7, "double complex", &check_double(&cfg.double)),
        line(8, "rows and columns", &check_rows_columns(&cfg.double, mode)),
        line(9, "quantum sphere", &check_podles(podles)),
        line(10, "engine cross-validation", &check_cross_validation(&cfg.bgg, &cfg.double, mode)),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria pass", results.len());
    assert_eq!(passed, results.len());
}
