use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dwork_core::driver::{self, PlannedTask, RunConfig, JOBS_ENV, SCHEMA_VERSION};
use dwork_core::verify::{Control, StatementId, TwistMiddle, Verdict, VerifyTask};
use dwork_core::Error;
use serde_json::json;

#[derive(Parser)]
#[command(name = "dwork", version, about = "Exact verification of Dwork-type congruences mod p^s")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Also write a JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check one statement at one parameter set.
    Verify(VerifyArgs),
    /// Run every task of a config grid.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Worker threads; overrides the config and the environment.
        #[arg(long, env = JOBS_ENV)]
        jobs: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Print a named series or matrix reduced mod p^s.
    Dump {
        name: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, default_value_t = 20)]
        deg: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Print the Cartier matrix of x^3 - x - t (or of the twisted family).
    Lambda {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, default_value_t = 40)]
        deg: usize,
        #[arg(long)]
        twisted: bool,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        lift: i64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// One of rank1, rank1bis, dwork-modm-matrix, theorem-main, lambda-crosscheck, ode-exact,
    /// ode-congruence, residue-tables, mv-theorem.
    statement: String,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Degree cap N; for residue-tables the largest table index.
    #[arg(long)]
    deg: Option<usize>,
    #[arg(long, conflicts_with = "generator")]
    series: Option<String>,
    #[arg(long)]
    generator: Option<String>,
    #[arg(long)]
    twisted: bool,
    /// Middle factor of the twisted quotient: unit-eps or eps-unit.
    #[arg(long, default_value = "unit-eps")]
    middle: String,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    lift: i64,
    /// corrupt:<degree> or negate-eps.
    #[arg(long)]
    control: Option<String>,
    /// The verdict that counts as success: pass, fail or not-applicable.
    #[arg(long, default_value = "pass")]
    expect: String,
    #[command(flatten)]
    out: Output,
}

fn parse_middle(text: &str) -> Result<TwistMiddle, Error> {
    match text {
        "unit-eps" => Ok(TwistMiddle::UnitEps),
        "eps-unit" => Ok(TwistMiddle::EpsUnit),
        _ => Err(Error::Usage(format!("unknown middle {text}; expected unit-eps or eps-unit"))),
    }
}

fn parse_verdict(text: &str) -> Result<Verdict, Error> {
    match text {
        "pass" => Ok(Verdict::Pass),
        "fail" => Ok(Verdict::Fail),
        "not-applicable" => Ok(Verdict::NotApplicable),
        _ => Err(Error::Usage(format!("unknown verdict {text}"))),
    }
}

fn verify_config(a: &VerifyArgs) -> Result<RunConfig, Error> {
    let id: StatementId = a.statement.parse()?;
    let cap = a.deg.unwrap_or_else(|| id.default_cap(a.p, a.s, a.m));
    let mut task = VerifyTask::new(id, a.p, a.s, a.m, cap)?.with_lift(a.lift);
    task.series = a.series.clone();
    task.generator = a.generator.clone();
    if task.series.is_none() && task.generator.is_none() && matches!(id, StatementId::Rank1 | StatementId::Rank1bis) {
        task.series = Some("dwork".into());
    }
    if a.twisted {
        task = task.with_twist(parse_middle(&a.middle)?);
    }
    if let Some(c) = &a.control {
        task = task.with_control(c.parse::<Control>()?);
    }
    Ok(RunConfig {
        tasks: vec![PlannedTask { task, expect: parse_verdict(&a.expect)? }],
        output: a.out.json.clone(),
        ..RunConfig::default()
    })
}

fn write_json(path: &Option<PathBuf>, value: serde_json::Value) -> anyhow::Result<()> {
    if let Some(path) = path {
        std::fs::write(path, serde_json::to_string_pretty(&value)? + "\n")?;
    }
    Ok(())
}

fn execute(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Verify(args) => {
            let outcome = driver::run(&verify_config(&args)?)?;
            print!("{}", outcome.render());
            Ok(outcome.exit_code())
        }
        Command::Sweep { config, jobs, out } => {
            let mut cfg = RunConfig::load(&config)?;
            if jobs.is_some() {
                cfg.jobs = jobs;
            }
            if out.json.is_some() {
                cfg.output = out.json;
            }
            let outcome = driver::run(&cfg)?;
            print!("{}", outcome.render());
            Ok(outcome.exit_code())
        }
        Command::Dump { name, p, s, deg, out } => {
            let text = driver::dump(&name, p, s, deg)?;
            print!("{text}");
            write_json(&out.json, json!({"schema": SCHEMA_VERSION, "name": name, "p": p, "s": s, "deg": deg, "dump": text}))?;
            Ok(0)
        }
        Command::Lambda { p, s, deg, twisted, lift, out } => {
            let text = driver::lambda_dump(p, s, deg, twisted, lift)?;
            print!("{text}");
            write_json(
                &out.json,
                json!({"schema": SCHEMA_VERSION, "name": if twisted { "lambda-twisted" } else { "lambda" }, "p": p, "s": s, "deg": deg, "lift": lift, "dump": text}),
            )?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
