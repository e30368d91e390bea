//! Batch runs: task grids from a config file, parallel execution, ordered JSON reports,
//! text dumps and golden-file comparison.
//!
//! The config is TOML with top-level `seed`, `jobs`, `output`, `golden` and any number of
//! `[[grid]]` tables. Each grid key takes a scalar or a list; a grid expands to the
//! cartesian product of its lists:
//!
//! ```toml
//! seed = 7
//!
//! [[grid]]
//! statement = "rank1"
//! series = "dwork"
//! p = [5, 7, 11, 13]
//! s = [1, 2]
//! deg = 150
//! ```
//!
//! Optional grid keys: `m` (default 1), `deg` (default `max(150, m p^s + 50)`), `series`,
//! `generator`, `twisted`, `middle` (`unit-eps` or `eps-unit`), `lift`, `control`
//! (`corrupt:<degree>`, `corrupt:random` or `negate-eps`) and `expect` (`pass`, `fail` or
//! `not-applicable`, default `pass`).

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::crystal::{lambda_twisted, lambda_untwisted};
use crate::error::{Error, Result};
use crate::hypergeometric::{build_scr_y, build_y, hyp_series, lookup_series};
use crate::laurent::{generator, laurent_pow_ct};
use crate::ring::{Padic, Ring, Zmod};
use crate::series::{SeriesMatrix, TruncatedSeries};
use crate::verify::{run_task, Control, StatementId, TwistMiddle, Verdict, VerificationReport, VerifyTask};

pub const SCHEMA_VERSION: u32 = 1;
pub const JOBS_ENV: &str = "DWORK_JOBS";

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    fn values(&self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

fn list<T: Clone>(v: &Option<OneOrMany<T>>, default: T) -> Vec<T> {
    v.as_ref().map_or_else(|| vec![default], OneOrMany::values)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridSpec {
    statement: OneOrMany<String>,
    series: Option<OneOrMany<String>>,
    generator: Option<OneOrMany<String>>,
    p: OneOrMany<u64>,
    s: Option<OneOrMany<u32>>,
    m: Option<OneOrMany<usize>>,
    deg: Option<OneOrMany<usize>>,
    twisted: Option<OneOrMany<bool>>,
    middle: Option<OneOrMany<TwistMiddle>>,
    lift: Option<OneOrMany<i64>>,
    control: Option<OneOrMany<String>>,
    expect: Option<Verdict>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    seed: Option<u64>,
    jobs: Option<usize>,
    output: Option<PathBuf>,
    golden: Option<PathBuf>,
    #[serde(default)]
    grid: Vec<GridSpec>,
}

/// A task with the verdict it must produce for the run to succeed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlannedTask {
    pub task: VerifyTask,
    pub expect: Verdict,
}

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub tasks: Vec<PlannedTask>,
    pub output: Option<PathBuf>,
    pub golden: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Usage(format!("config: {e}")))?;
        let seed = file.seed.unwrap_or(0);
        let mut tasks = Vec::new();
        for grid in &file.grid {
            expand_grid(grid, seed, &mut tasks)?;
        }
        Ok(RunConfig { tasks, output: file.output, golden: file.golden, jobs: file.jobs, seed })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }
}

fn optional_list(v: &Option<OneOrMany<String>>) -> Vec<Option<String>> {
    v.as_ref().map_or_else(|| vec![None], |v| v.values().into_iter().map(Some).collect())
}

fn parse_control(text: &str, seed: u64, index: usize, cap: usize) -> Result<Control> {
    if text == "corrupt:random" {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        return Ok(Control::Corrupt { degree: rng.gen_range(1..(cap / 2).max(2)) });
    }
    text.parse()
}

fn expand_grid(grid: &GridSpec, seed: u64, out: &mut Vec<PlannedTask>) -> Result<()> {
    let statements: Vec<StatementId> = grid.statement.values().iter().map(|s| s.parse()).collect::<Result<_>>()?;
    let controls = optional_list(&grid.control);
    for statement in statements {
        for series in optional_list(&grid.series) {
            for gen in optional_list(&grid.generator) {
                for p in grid.p.values() {
                    for s in list(&grid.s, 1) {
                        for m in list(&grid.m, 1) {
                            let caps = grid.deg.as_ref().map_or_else(|| vec![statement.default_cap(p, s, m)], OneOrMany::values);
                            for cap in caps {
                                for twisted in list(&grid.twisted, false) {
                                    for middle in list(&grid.middle, TwistMiddle::UnitEps) {
                                        for lift in list(&grid.lift, 0) {
                                            for control in &controls {
                                                let mut task = VerifyTask::new(statement, p, s, m, cap)?.with_lift(lift);
                                                task.series = series.clone();
                                                task.generator = gen.clone();
                                                if twisted {
                                                    task = task.with_twist(middle);
                                                }
                                                if let Some(c) = control {
                                                    task = task.with_control(parse_control(c, seed, out.len(), cap)?);
                                                }
                                                out.push(PlannedTask { task, expect: grid.expect.unwrap_or(Verdict::Pass) });
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunEntry {
    #[serde(flatten)]
    pub report: VerificationReport,
    pub expected: Verdict,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunSummary {
    pub tasks: usize,
    pub ok: usize,
    pub unexpected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunOutcome {
    pub schema: u32,
    pub summary: RunSummary,
    pub reports: Vec<RunEntry>,
}

impl RunOutcome {
    /// 0 when every task produced its expected verdict, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.unexpected == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.reports {
            let mark = if e.ok { "ok " } else { "BAD" };
            out.push_str(&format!("{mark} {}\n", e.report.summary()));
        }
        out.push_str(&format!("{} tasks, {} as expected, {} unexpected\n", self.summary.tasks, self.summary.ok, self.summary.unexpected));
        out
    }
}

/// Worker count: the config value, else the environment variable, else rayon's default.
pub fn resolve_jobs(config: Option<usize>) -> Result<Option<usize>> {
    if config.is_some() {
        return Ok(config);
    }
    match std::env::var(JOBS_ENV) {
        Ok(v) => v.trim().parse::<usize>().map(Some).map_err(|_| Error::Usage(format!("{JOBS_ENV}={v} is not a number"))),
        Err(_) => Ok(None),
    }
}

fn golden_path(dir: &Path, task: &VerifyTask) -> PathBuf {
    let tw = if task.twisted { "_twisted" } else { "" };
    dir.join(format!("lambda_p{}_s{}_n{}{tw}.txt", task.p, task.s, task.cap))
}

fn attach_golden(mut report: VerificationReport, dir: &Path) -> Result<VerificationReport> {
    let task = &report.task;
    let path = golden_path(dir, task);
    let note = match std::fs::read_to_string(&path) {
        Err(_) => format!("no golden file {}", path.display()),
        Ok(expect) => {
            if lambda_dump(task.p, task.s, task.cap, task.twisted, task.lift)? == expect {
                "golden dump matches".to_string()
            } else {
                report.verdict = Verdict::Fail;
                format!("golden dump {} differs", path.display())
            }
        }
    };
    report.diagnosis = Some(match report.diagnosis.take() {
        Some(d) => format!("{d}; {note}"),
        None => note,
    });
    Ok(report)
}

pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let jobs = resolve_jobs(config.jobs)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let results: Vec<Result<VerificationReport>> = pool.install(|| {
        config
            .tasks
            .par_iter()
            .map(|planned| {
                let report = run_task(&planned.task)?;
                match &config.golden {
                    Some(dir) if planned.task.statement == StatementId::LambdaCrosscheck && report.verdict == Verdict::Pass => {
                        attach_golden(report, dir)
                    }
                    _ => Ok(report),
                }
            })
            .collect()
    });
    let mut reports = Vec::with_capacity(results.len());
    for (planned, r) in config.tasks.iter().zip(results) {
        let report = r?;
        let ok = report.verdict == planned.expect;
        reports.push(RunEntry { report, expected: planned.expect, ok });
    }
    let ok = reports.iter().filter(|e| e.ok).count();
    let outcome =
        RunOutcome { schema: SCHEMA_VERSION, summary: RunSummary { tasks: reports.len(), ok, unexpected: reports.len() - ok }, reports };
    if let Some(path) = &config.output {
        std::fs::write(path, outcome.to_json()).map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(outcome)
}

/// The Cartier matrix in the series dump format.
pub fn lambda_dump(p: u64, s: u32, cap: usize, twisted: bool, lift: i64) -> Result<String> {
    Ok(if twisted { lambda_twisted(p, s, cap, lift)?.dump() } else { lambda_untwisted(p, s, cap, lift)?.dump() })
}

/// Names accepted by [`dump`].
pub const DUMP_NAMES: &str =
    "Y, scrY, E, lambda, lambda-twisted, a series name (dwork, mixed, corollary1:k, corollary2:k) or ct:<generator>";

/// Text dump of a named series or matrix reduced mod `p^s` at cap `cap`.
pub fn dump(name: &str, p: u64, s: u32, cap: usize) -> Result<String> {
    let base = Zmod::with_ps(p, s)?;
    match name {
        "Y" => Ok(build_y(&base, cap)?.dump()),
        "scrY" => Ok(build_scr_y(&base, cap)?.dump()),
        "E" => {
            let eps = base.from_int(i64::from(base.ctx().eps()?));
            Ok(SeriesMatrix::diag(base.clone(), eps, base.one(), cap).dump())
        }
        "lambda" => lambda_dump(p, s, cap, false, 0),
        "lambda-twisted" => lambda_dump(p, s, cap, true, 0),
        _ => {
            if let Some(g) = name.strip_prefix("ct:") {
                let values = laurent_pow_ct(&generator(g)?, cap.saturating_sub(1)).values;
                return Ok(TruncatedSeries::from_rationals(base, &values, cap)?.dump());
            }
            let spec = lookup_series(name).map_err(|_| Error::Usage(format!("unknown dump name {name}; expected {DUMP_NAMES}")))?;
            Ok(hyp_series(&spec, &base, cap)?.dump())
        }
    }
}
