//! Cartier matrix dumps against checked-in files. `UPDATE_GOLDEN=1` rewrites them.

use std::path::PathBuf;

use dwork_core::driver::{self, lambda_dump, PlannedTask, RunConfig};
use dwork_core::verify::{StatementId, TwistMiddle, Verdict, VerifyTask};

const CASES: [(u64, u32, bool); 5] = [(5, 1, false), (5, 2, false), (7, 1, false), (7, 2, false), (5, 1, true)];
const CAP: usize = 40;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/v1")
}

fn file_name(p: u64, s: u32, twisted: bool) -> String {
    format!("lambda_p{p}_s{s}_n{CAP}{}.txt", if twisted { "_twisted" } else { "" })
}

#[test]
fn lambda_dumps_match_golden_files() {
    let dir = golden_dir();
    let update = std::env::var("UPDATE_GOLDEN").is_ok_and(|v| v == "1");
    for (p, s, twisted) in CASES {
        let path = dir.join(file_name(p, s, twisted));
        let got = lambda_dump(p, s, CAP, twisted, 0).unwrap();
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let expect = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(got, expect, "{}", path.display());
    }
}

#[test]
fn sweep_attaches_golden_comparison() {
    let tasks = CASES
        .iter()
        .map(|&(p, s, twisted)| {
            let mut task = VerifyTask::new(StatementId::LambdaCrosscheck, p, s, 1, CAP).unwrap();
            if twisted {
                task = task.with_twist(TwistMiddle::UnitEps);
            }
            PlannedTask { task, expect: Verdict::Pass }
        })
        .collect();
    let outcome = driver::run(&RunConfig { tasks, golden: Some(golden_dir()), ..RunConfig::default() }).unwrap();
    assert_eq!(outcome.exit_code(), 0, "{}", outcome.render());
    for entry in &outcome.reports {
        assert!(entry.report.diagnosis.as_deref().unwrap_or("").contains("golden dump matches"), "{}", entry.report.summary());
    }
}
