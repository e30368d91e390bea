use super::{matrix_report, modulus_label, Precision, VerificationReport, VerifyTask};
use crate::error::{Error, Result};
use crate::hypergeometric::{hyp_coeffs, scr_y_specs};
use crate::ring::{Rationals, Ring, Zmod};
use crate::series::{SeriesMatrix, TruncatedSeries};

/// `3 (1 - t^2) Y' - [[2t, -1], [-2, t]] Y`, with the cap of `Y'`.
pub fn ode_residual<B: Ring>(y: &SeriesMatrix<B>) -> Result<SeriesMatrix<B>> {
    let base = y.base().clone();
    let dy = y.derivative()?;
    let cap = dy.cap();
    let y = y.with_cap(cap)?;
    let poly = |c: &[i64]| TruncatedSeries::from_ints(base.clone(), c, cap);
    let scale = poly(&[3, 0, -3]);
    let system = SeriesMatrix::from_rows(poly(&[0, 2]), poly(&[-1]), poly(&[-2]), poly(&[0, 1]))?;
    dy.series_mul(&scale)?.try_sub(&system.try_mul(&y)?)
}

/// The twisted period matrix, with every entry cut below `keep` before reduction.
fn truncated_scr_y<B: Ring>(base: &B, keep: usize, cap: usize) -> Result<SeriesMatrix<B>> {
    let [[a, b], [c, d]] = scr_y_specs();
    let entry = |spec| -> Result<TruncatedSeries<B>> {
        let coeffs = hyp_coeffs(&spec, keep)?;
        TruncatedSeries::from_rationals(base.clone(), &coeffs, cap)
    };
    SeriesMatrix::from_rows(entry(a)?, entry(b)?, entry(c)?, entry(d)?)
}

fn reject_control(task: &VerifyTask) -> Result<()> {
    if task.control.is_some() {
        return Err(Error::param(format!("{} takes no negative control", task.statement)));
    }
    Ok(())
}

/// The differential system over the rationals through degree `cap - 2`.
pub fn verify_ode(task: &VerifyTask) -> Result<VerificationReport> {
    reject_control(task)?;
    if task.cap < 2 {
        return Err(Error::param("ode-exact needs N >= 2"));
    }
    let y = truncated_scr_y(&Rationals, task.cap, task.cap)?;
    let residual = ode_residual(&y)?;
    let zero = SeriesMatrix::identity(Rationals, residual.cap()).scalar_mul(&Rationals.zero());
    let mut report = matrix_report(task, "exact".into(), &residual, &zero)?;
    report.precision = Some(Precision { modulus: "exact".into(), cap: task.cap, checked: (0, task.cap - 2) });
    Ok(report)
}

/// The system for `Y_{mp^s}` mod `p^s`. The residual of the truncation is a polynomial of
/// degree at most `m p^s`, so every coefficient of it is checked.
pub fn verify_ode_congruence(task: &VerifyTask) -> Result<VerificationReport> {
    reject_control(task)?;
    let (p, s) = (task.p, task.s);
    let keep = task.truncation();
    let base = Zmod::with_ps(p, s)?;
    let y = truncated_scr_y(&base, keep, keep + 2)?;
    let residual = ode_residual(&y)?;
    let zero = SeriesMatrix::identity(base.clone(), residual.cap()).scalar_mul(&base.zero());
    let mut report = matrix_report(task, modulus_label(p, s), &residual, &zero)?;
    report.precision = Some(Precision { modulus: modulus_label(p, s), cap: keep + 2, checked: (0, keep) });
    Ok(report.with_diagnosis(format!("checked the full residual polynomial, degrees 0..={keep}")))
}
