use std::time::Instant;

use affsphere::suite::{
    all_passed, check_ids, render_report, run_suite, CheckResult, ReportFormat, Suite,
    SuiteConfig, SuiteError,
};

#[test]
fn cone_suite_passes_with_defaults() {
    let results = run_suite("cone", &SuiteConfig::default()).unwrap();
    assert_eq!(results.len(), check_ids(Suite::Cone).len());
    assert!(results.iter().all(|r| r.pass), "{results:#?}");
}

#[test]
fn every_suite_passes_with_defaults() {
    let results = run_suite("all", &SuiteConfig::default()).unwrap();
    let failing: Vec<_> = results.iter().filter(|r| !r.pass).collect();
    assert!(failing.is_empty(), "{failing:#?}");
    assert!(all_passed(&results));
    let mut ids: Vec<_> = results.iter().map(|r| r.check_id.as_str()).collect();
    let n = ids.len();
    ids.dedup();
    assert_eq!(ids.len(), n, "check ids are unique and grouped");
}

#[test]
fn smoke_run_is_fast() {
    let cfg = SuiteConfig { samples: 1, ..Default::default() };
    let t = Instant::now();
    let results = run_suite("all", &cfg).unwrap();
    assert!(t.elapsed().as_secs_f64() < 1.0);
    assert!(results.iter().all(|r| r.points_tested >= 1));
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(matches!(
        run_suite("bogus", &SuiteConfig::default()),
        Err(SuiteError::UnknownSuite(_))
    ));
}

#[test]
fn invalid_config_is_rejected() {
    let cfg = SuiteConfig { samples: 0, ..Default::default() };
    assert!(matches!(run_suite("cone", &cfg), Err(SuiteError::InvalidConfig(_))));
    let cfg = SuiteConfig { max_degree: 2, ..Default::default() };
    assert!(matches!(run_suite("harmonic", &cfg), Err(SuiteError::InvalidConfig(_))));
}

#[test]
fn results_do_not_depend_on_suite_selection() {
    let cfg = SuiteConfig { samples: 15, ..Default::default() };
    let all = run_suite("all", &cfg).unwrap();
    let duality = run_suite("duality", &cfg).unwrap();
    for r in &duality {
        let same = all.iter().find(|a| a.check_id == r.check_id).unwrap();
        assert_eq!(same.max_residual.to_bits(), r.max_residual.to_bits());
    }
}

#[test]
fn json_report_for_single_result() {
    let r = CheckResult {
        check_id: "bundle.sixteen_at_i".into(),
        paper_anchor: "=16y^{2}".into(),
        points_tested: 1,
        max_residual: 0.0,
        tolerance: 1e-10,
        pass: true,
        wall_time_ms: 0,
    };
    let bytes = render_report(&[r], &SuiteConfig::default(), ReportFormat::Json).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(v["results"][0]["pass"], true);
    assert_eq!(v["results"][0]["check_id"], "bundle.sixteen_at_i");
    assert!(matches!(
        render_report(&[], &SuiteConfig::default(), ReportFormat::Json),
        Err(SuiteError::EmptyResults)
    ));
}

#[test]
fn markdown_carries_anchors() {
    let results = run_suite("all", &SuiteConfig { samples: 2, ..Default::default() }).unwrap();
    let md = String::from_utf8(render_report(&results, &SuiteConfig::default(), ReportFormat::Markdown).unwrap()).unwrap();
    assert!(md.contains("=16y^{2}"));
    for s in Suite::MODULES {
        assert!(md.contains(&format!("## {}", s.name())), "{}", s.name());
    }
}
