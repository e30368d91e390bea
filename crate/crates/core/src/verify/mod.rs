//! Both sides of every congruence, compared coefficient by coefficient mod `p^s` up to a
//! degree cap, with localized failure reports.

mod matrix;
mod ode;
mod ratio;
mod tables;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::series::{SeriesMatrix, TruncatedSeries};

pub use matrix::{crosscheck_lambda, verify_dwork_modm_matrix, verify_theorem_main};
pub use ode::{ode_residual, verify_ode, verify_ode_congruence};
pub use ratio::{ratio_congruence, verify_mv, verify_rank1, verify_rank1bis, Formulation};
pub use tables::verify_residue_tables;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatementId {
    Rank1,
    Rank1bis,
    DworkModmMatrix,
    TheoremMain,
    LambdaCrosscheck,
    OdeExact,
    OdeCongruence,
    ResidueTables,
    MvTheorem,
}

impl StatementId {
    pub const ALL: [StatementId; 9] = [
        StatementId::Rank1,
        StatementId::Rank1bis,
        StatementId::DworkModmMatrix,
        StatementId::TheoremMain,
        StatementId::LambdaCrosscheck,
        StatementId::OdeExact,
        StatementId::OdeCongruence,
        StatementId::ResidueTables,
        StatementId::MvTheorem,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatementId::Rank1 => "rank1",
            StatementId::Rank1bis => "rank1bis",
            StatementId::DworkModmMatrix => "dwork-modm-matrix",
            StatementId::TheoremMain => "theorem-main",
            StatementId::LambdaCrosscheck => "lambda-crosscheck",
            StatementId::OdeExact => "ode-exact",
            StatementId::OdeCongruence => "ode-congruence",
            StatementId::ResidueTables => "residue-tables",
            StatementId::MvTheorem => "mv-theorem",
        }
    }

    /// Statements that compare truncations at `m p^s` and so need `cap >= m p^s`.
    pub fn truncates(self) -> bool {
        matches!(
            self,
            StatementId::Rank1 | StatementId::Rank1bis | StatementId::MvTheorem | StatementId::TheoremMain | StatementId::DworkModmMatrix
        )
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StatementId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| Error::Usage(format!("unknown statement id {s}")))
    }
}

/// Deliberate breakage whose verdict must be a failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Control {
    /// Adds `p^{s-1}` to the coefficient of `t^degree`.
    Corrupt { degree: usize },
    /// Replaces `eps_p` by `-eps_p`.
    NegateEps,
}

impl fmt::Display for Control {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Control::Corrupt { degree } => write!(f, "corrupt:{degree}"),
            Control::NegateEps => f.write_str("negate-eps"),
        }
    }
}

impl FromStr for Control {
    type Err = Error;

    /// `corrupt:<degree>` or `negate-eps`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "negate-eps" {
            return Ok(Control::NegateEps);
        }
        s.strip_prefix("corrupt:")
            .and_then(|d| d.parse().ok())
            .map(|degree| Control::Corrupt { degree })
            .ok_or_else(|| Error::Usage(format!("unknown control {s}; expected corrupt:<degree> or negate-eps")))
    }
}

/// The middle factor of the twisted period quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwistMiddle {
    /// `diag(1, eps_p)`, forced by the Cartier matrix at `t = 0`.
    #[default]
    UnitEps,
    /// `diag(eps_p, 1)`, the displayed reading.
    EpsUnit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyTask {
    pub statement: StatementId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    pub p: u64,
    pub s: u32,
    pub m: usize,
    pub cap: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub twisted: bool,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub lift: i64,
    #[serde(default, skip_serializing_if = "is_default_middle")]
    pub middle: TwistMiddle,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub control: Option<Control>,
}

fn is_zero(v: &i64) -> bool {
    *v == 0
}

fn is_default_middle(m: &TwistMiddle) -> bool {
    *m == TwistMiddle::UnitEps
}

/// `max(150, m p^s + 50)`.
pub fn default_cap(p: u64, s: u32, m: usize) -> usize {
    150.max(m * p.pow(s) as usize + 50)
}

impl StatementId {
    /// The cap used when none is given: `default_cap`, raised where the statement needs more,
    /// and the table size for residue-tables.
    pub fn default_cap(self, p: u64, s: u32, m: usize) -> usize {
        let pow = p.pow(s) as usize;
        match self {
            StatementId::ResidueTables => 20,
            StatementId::LambdaCrosscheck => 40,
            StatementId::OdeExact => 202,
            StatementId::TheoremMain => default_cap(p, s, m).max(m * pow + pow),
            _ => default_cap(p, s, m),
        }
    }
}

impl VerifyTask {
    pub fn new(statement: StatementId, p: u64, s: u32, m: usize, cap: usize) -> Result<Self> {
        let task = VerifyTask {
            statement,
            series: None,
            generator: None,
            p,
            s,
            m,
            cap,
            twisted: false,
            lift: 0,
            middle: TwistMiddle::UnitEps,
            control: None,
        };
        task.validate()?;
        Ok(task)
    }

    pub fn with_series(mut self, name: &str) -> Self {
        self.series = Some(name.to_string());
        self
    }

    pub fn with_generator(mut self, name: &str) -> Self {
        self.generator = Some(name.to_string());
        self
    }

    pub fn with_twist(mut self, middle: TwistMiddle) -> Self {
        self.twisted = true;
        self.middle = middle;
        self
    }

    pub fn with_lift(mut self, lift: i64) -> Self {
        self.lift = lift;
        self
    }

    pub fn with_control(mut self, control: Control) -> Self {
        self.control = Some(control);
        self
    }

    /// `m p^s`.
    pub fn truncation(&self) -> usize {
        self.m * self.p.pow(self.s) as usize
    }

    /// `m p^{s-1}`.
    pub fn truncation_below(&self) -> usize {
        self.m * self.p.pow(self.s - 1) as usize
    }

    pub fn validate(&self) -> Result<()> {
        if self.s == 0 || self.m == 0 || self.cap == 0 {
            return Err(Error::param("s, m and the degree cap must be positive"));
        }
        if self.p.checked_pow(self.s).is_none_or(|q| q > 1 << 40) {
            return Err(Error::param(format!("p^s = {}^{} is out of range", self.p, self.s)));
        }
        if self.statement.truncates() && self.cap < self.truncation() {
            return Err(Error::param(format!(
                "{}: cap {} is below m p^s = {}, so the statement is vacuous",
                self.statement,
                self.cap,
                self.truncation()
            )));
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        let mut out = format!("{} p={} s={} m={} N={}", self.statement, self.p, self.s, self.m, self.cap);
        if let Some(name) = self.series.as_ref().or(self.generator.as_ref()) {
            out.push_str(&format!(" [{name}]"));
        }
        if self.twisted {
            out.push_str(" twisted");
            if self.middle == TwistMiddle::EpsUnit {
                out.push_str(" middle=eps-unit");
            }
        }
        if self.lift != 0 {
            out.push_str(&format!(" lift={}", self.lift));
        }
        if let Some(c) = &self.control {
            out.push_str(&format!(" control={c}"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// The lowest-degree disagreement; `entry` is 1-based and absent for scalar statements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstFailure {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<(usize, usize)>,
    pub degree: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision {
    /// `p^s` as text, or `exact` over the rationals.
    pub modulus: String,
    pub cap: usize,
    /// Inclusive range of compared degrees.
    pub checked: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub task: VerifyTask,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<FirstFailure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnosis: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<Precision>,
}

impl VerificationReport {
    pub fn not_applicable(task: &VerifyTask, why: impl Into<String>) -> Self {
        VerificationReport {
            task: task.clone(),
            verdict: Verdict::NotApplicable,
            first_failure: None,
            diagnosis: Some(why.into()),
            precision: None,
        }
    }

    fn with_diagnosis(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        self.diagnosis = Some(match self.diagnosis.take() {
            Some(old) => format!("{old}; {note}"),
            None => note,
        });
        self
    }

    /// One line: verdict, task and the failure location if any.
    pub fn summary(&self) -> String {
        let mut out = format!("{:<14} {}", self.verdict.to_string().to_uppercase(), self.task.label());
        if let Some(f) = &self.first_failure {
            match f.entry {
                Some((i, j)) => out.push_str(&format!(" | entry ({i},{j}) t^{}: {} vs {}", f.degree, f.lhs, f.rhs)),
                None => out.push_str(&format!(" | t^{}: {} vs {}", f.degree, f.lhs, f.rhs)),
            }
        }
        if let Some(d) = &self.diagnosis {
            out.push_str(&format!(" | {d}"));
        }
        out
    }
}

fn modulus_label(p: u64, s: u32) -> String {
    format!("{p}^{s}")
}

/// Pass/fail from a series comparison over the whole cap.
pub(crate) fn series_report<B: Ring>(
    task: &VerifyTask,
    modulus: String,
    lhs: &TruncatedSeries<B>,
    rhs: &TruncatedSeries<B>,
) -> Result<VerificationReport> {
    let cap = lhs.cap();
    let first_failure = lhs.first_mismatch(rhs)?.map(|d| FirstFailure {
        entry: None,
        degree: d,
        lhs: lhs.base().format(lhs.coeff(d)),
        rhs: rhs.base().format(rhs.coeff(d)),
    });
    Ok(VerificationReport {
        task: task.clone(),
        verdict: if first_failure.is_some() { Verdict::Fail } else { Verdict::Pass },
        first_failure,
        diagnosis: None,
        precision: Some(Precision { modulus, cap, checked: (0, cap - 1) }),
    })
}

pub(crate) fn matrix_report<B: Ring>(
    task: &VerifyTask,
    modulus: String,
    lhs: &SeriesMatrix<B>,
    rhs: &SeriesMatrix<B>,
) -> Result<VerificationReport> {
    let cap = lhs.cap();
    let first_failure = lhs.first_mismatch(rhs)?.map(|m| {
        let (l, r) = (lhs.entry(m.row - 1, m.col - 1), rhs.entry(m.row - 1, m.col - 1));
        FirstFailure {
            entry: Some((m.row, m.col)),
            degree: m.degree,
            lhs: lhs.base().format(l.coeff(m.degree)),
            rhs: rhs.base().format(r.coeff(m.degree)),
        }
    });
    Ok(VerificationReport {
        task: task.clone(),
        verdict: if first_failure.is_some() { Verdict::Fail } else { Verdict::Pass },
        first_failure,
        diagnosis: None,
        precision: Some(Precision { modulus, cap, checked: (0, cap - 1) }),
    })
}

/// Runs one task. Preconditions the mathematics imposes (p-integrality, the interior
/// hypothesis, `s < p`) surface as not-applicable; malformed tasks are errors.
pub fn run_task(task: &VerifyTask) -> Result<VerificationReport> {
    task.validate()?;
    let out = match task.statement {
        StatementId::Rank1 => verify_rank1(task),
        StatementId::Rank1bis => verify_rank1bis(task),
        StatementId::MvTheorem => verify_mv(task),
        StatementId::TheoremMain => verify_theorem_main(task),
        StatementId::DworkModmMatrix => verify_dwork_modm_matrix(task),
        StatementId::LambdaCrosscheck => crosscheck_lambda(task),
        StatementId::OdeExact => verify_ode(task),
        StatementId::OdeCongruence => verify_ode_congruence(task),
        StatementId::ResidueTables => verify_residue_tables(task),
    };
    match out {
        Err(e @ (Error::NotPIntegral { .. } | Error::UnsupportedPrecision { .. } | Error::Degenerate(_) | Error::DiscNotUnit)) => {
            Ok(VerificationReport::not_applicable(task, e.to_string()))
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statement_ids_round_trip_through_text() {
        for id in StatementId::ALL {
            assert_eq!(id.as_str().parse::<StatementId>().unwrap(), id);
        }
        assert!(matches!("rank2".parse::<StatementId>(), Err(Error::Usage(_))));
    }

    #[test]
    fn vacuous_truncation_is_rejected() {
        assert!(VerifyTask::new(StatementId::Rank1, 5, 2, 1, 20).is_err());
        assert!(VerifyTask::new(StatementId::Rank1, 5, 2, 1, 25).is_ok());
        assert!(VerifyTask::new(StatementId::OdeExact, 5, 2, 1, 10).is_ok());
    }

    #[test]
    fn controls_parse() {
        assert_eq!("corrupt:7".parse::<Control>().unwrap(), Control::Corrupt { degree: 7 });
        assert_eq!("negate-eps".parse::<Control>().unwrap(), Control::NegateEps);
        assert!("flip".parse::<Control>().is_err());
    }

    #[test]
    fn default_cap_grid() {
        assert_eq!(default_cap(5, 1, 1), 150);
        assert_eq!(default_cap(13, 2, 2), 388);
    }
}
