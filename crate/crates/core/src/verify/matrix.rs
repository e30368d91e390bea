use super::{matrix_report, modulus_label, Control, Precision, TwistMiddle, Verdict, VerificationReport, VerifyTask};
use crate::crystal::{lambda_twisted, lambda_untwisted};
use crate::error::{Error, Result};
use crate::hypergeometric::{build_scr_y, build_y};
use crate::ring::{Padic, QuadExt, Ring, Zmod};
use crate::series::SeriesMatrix;

/// `left * middle * right(t^p)^{-1}`.
fn frobenius_quotient<B: Ring>(
    left: &SeriesMatrix<B>,
    middle: &SeriesMatrix<B>,
    right: &SeriesMatrix<B>,
    p: u64,
) -> Result<SeriesMatrix<B>> {
    left.try_mul(middle)?.try_mul(&right.substitute_power(p as usize).invert()?)
}

fn eps_of(task: &VerifyTask, base: &impl Padic) -> Result<i64> {
    let eps = i64::from(base.ctx().eps()?);
    Ok(if task.control == Some(Control::NegateEps) { -eps } else { eps })
}

fn reject_corruption(task: &VerifyTask) -> Result<()> {
    if matches!(task.control, Some(Control::Corrupt { .. })) {
        return Err(Error::param(format!("{} has no scalar coefficient list to corrupt", task.statement)));
    }
    Ok(())
}

/// `Y_{mp^s}(t) E Y_{mp^{s-1}}(t^p)^{-1} == Y(t) E Y(t^p)^{-1}` for the twisted period
/// matrix with `E = diag(eps_p, 1)`.
pub fn verify_theorem_main(task: &VerifyTask) -> Result<VerificationReport> {
    reject_corruption(task)?;
    let (p, s, cap) = (task.p, task.s, task.cap);
    if p <= 3 {
        return Err(Error::param("theorem-main needs p > 3"));
    }
    let pow = p.pow(s) as usize;
    if cap < task.truncation() + pow {
        return Err(Error::param(format!("theorem-main needs N >= m p^s + p^s = {}", task.truncation() + pow)));
    }
    let base = Zmod::with_ps(p, s)?;
    let eps = base.from_int(eps_of(task, &base)?);
    let middle = SeriesMatrix::diag(base.clone(), eps, base.one(), cap);
    let y = build_scr_y(&base, cap)?;
    let lhs = frobenius_quotient(&y.truncate_at(task.truncation())?, &middle, &y.truncate_at(task.truncation_below())?, p)?;
    let rhs = frobenius_quotient(&y, &middle, &y, p)?;
    matrix_report(task, modulus_label(p, s), &lhs, &rhs)
}

/// `Y_{mp^s}(t) == (Y(t) Y(t^p)^{-1}) Y_{mp^{s-1}}(t^p)`.
pub fn verify_dwork_modm_matrix(task: &VerifyTask) -> Result<VerificationReport> {
    reject_corruption(task)?;
    if task.control.is_some() {
        return Err(Error::param("dwork-modm-matrix has no eps_p to negate"));
    }
    let (p, s, cap) = (task.p, task.s, task.cap);
    let base = Zmod::with_ps(p, s)?;
    let y = build_y(&base, cap)?;
    let lambda = frobenius_quotient(&y, &SeriesMatrix::identity(base.clone(), cap), &y, p)?;
    let lhs = y.truncate_at(task.truncation())?;
    let rhs = lambda.try_mul(&y.truncate_at(task.truncation_below())?.substitute_power(p as usize))?;
    matrix_report(task, modulus_label(p, s), &lhs, &rhs)
}

/// The Cartier matrix from the crystal side against the period quotient from the
/// hypergeometric side. The twisted variant also demands that every `u`-component vanish.
pub fn crosscheck_lambda(task: &VerifyTask) -> Result<VerificationReport> {
    reject_corruption(task)?;
    let (p, s, cap) = (task.p, task.s, task.cap);
    if !task.twisted {
        if task.control.is_some() {
            return Err(Error::param("the untwisted crosscheck has no eps_p to negate"));
        }
        let base = Zmod::with_ps(p, s)?;
        let y = build_y(&base, cap)?;
        let expect = frobenius_quotient(&y, &SeriesMatrix::identity(base.clone(), cap), &y, p)?;
        let got = lambda_untwisted(p, s, cap, task.lift)?;
        return matrix_report(task, modulus_label(p, s), &got, &expect);
    }
    let base = QuadExt::new(Zmod::with_ps(p, s)?);
    let eps = base.from_int(eps_of(task, &base)?);
    let middle = match task.middle {
        TwistMiddle::UnitEps => SeriesMatrix::diag(base.clone(), base.one(), eps, cap),
        TwistMiddle::EpsUnit => SeriesMatrix::diag(base.clone(), eps, base.one(), cap),
    };
    let y = build_scr_y(&base, cap)?;
    let expect = frobenius_quotient(&y, &middle, &y, p)?;
    let got = lambda_twisted(p, s, cap, task.lift)?;
    let report = matrix_report(task, modulus_label(p, s), &got, &expect)?;
    let u_part = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .find_map(|(i, j)| got.entry(i, j).coeffs().iter().position(|c| c.1 != 0).map(|d| (i + 1, j + 1, d)));
    Ok(match u_part {
        None => report.with_diagnosis("all u-components vanish"),
        Some((i, j, d)) => VerificationReport {
            verdict: Verdict::Fail,
            precision: Some(Precision { modulus: modulus_label(p, s), cap, checked: (0, cap - 1) }),
            ..report
        }
        .with_diagnosis(format!("entry ({i},{j}) has a nonzero u-component at t^{d}")),
    })
}
