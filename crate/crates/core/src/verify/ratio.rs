use num_bigint::BigInt;
use num_rational::BigRational;

use super::{modulus_label, series_report, Control, VerificationReport, VerifyTask};
use crate::error::{Error, Result};
use crate::hypergeometric::{hyp_coeffs, lookup_series};
use crate::laurent::{generator, interior_check, laurent_pow_ct};
use crate::ring::Zmod;
use crate::series::TruncatedSeries;

/// How a ratio congruence `A/B == C/D` is compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    /// `A D == C B`; needs no inversion.
    CrossMultiplied,
    /// `A B^{-1} == C D^{-1}`.
    Inverted,
}

/// `F(t) / F(t^p) == F_{m p^s}(t) / F_{m p^{s-1}}(t^p)` mod `(p^s, t^cap)`.
pub fn ratio_congruence(task: &VerifyTask, coeffs: &[BigRational], formulation: Formulation) -> Result<VerificationReport> {
    let (p, s, cap) = (task.p, task.s, task.cap);
    let base = Zmod::with_ps(p, s)?;
    let mut coeffs = coeffs.to_vec();
    coeffs.resize(cap, BigRational::default());
    if let Some(Control::Corrupt { degree }) = task.control {
        if degree >= cap {
            return Err(Error::param(format!("corrupted degree {degree} is outside the cap {cap}")));
        }
        coeffs[degree] += BigRational::from_integer(BigInt::from(p).pow(s - 1));
    }
    let f = TruncatedSeries::from_rationals(base.clone(), &coeffs, cap)?;
    let f_p = f.substitute_power(p as usize);
    let head = f.truncate_at(task.truncation())?;
    let tail_p = f.truncate_at(task.truncation_below())?.substitute_power(p as usize);
    let (lhs, rhs) = match formulation {
        Formulation::CrossMultiplied => (f.try_mul(&tail_p)?, head.try_mul(&f_p)?),
        Formulation::Inverted => (f.try_mul(&f_p.invert()?)?, head.try_mul(&tail_p.invert()?)?),
    };
    let report = series_report(task, modulus_label(p, s), &lhs, &rhs)?;
    Ok(match task.control {
        // Below the truncation the perturbation cancels until it meets the first term where
        // `F_{m p^{s-1}}(t^p)` and `F(t^p)` differ.
        Some(Control::Corrupt { degree }) if degree < task.truncation() => {
            report.with_diagnosis(format!("p^{} added at t^{degree}; it first shows at t^{degree} + m p^s", s - 1))
        }
        Some(Control::Corrupt { degree }) => report.with_diagnosis(format!("p^{} added at t^{degree}", s - 1)),
        _ => report,
    })
}

fn named_coefficients(task: &VerifyTask) -> Result<Vec<BigRational>> {
    match (&task.series, &task.generator) {
        (Some(name), None) => hyp_coeffs(&lookup_series(name)?, task.cap),
        (None, Some(name)) => Ok(laurent_pow_ct(&generator(name)?, task.cap - 1).values),
        _ => Err(Error::Usage(format!("{}: give exactly one of a series or a generator", task.statement))),
    }
}

/// The rank-1 congruence at truncation `p^s`.
pub fn verify_rank1(task: &VerifyTask) -> Result<VerificationReport> {
    if task.m != 1 {
        return Err(Error::param("rank1 is the m = 1 case; use rank1bis for m > 1"));
    }
    ratio_congruence(task, &named_coefficients(task)?, Formulation::CrossMultiplied)
}

/// The rank-1 congruence at truncation `m p^s`.
pub fn verify_rank1bis(task: &VerifyTask) -> Result<VerificationReport> {
    ratio_congruence(task, &named_coefficients(task)?, Formulation::CrossMultiplied)
}

/// The constant-term congruence for a generator whose Newton polytope has the origin as its
/// only interior lattice point.
pub fn verify_mv(task: &VerifyTask) -> Result<VerificationReport> {
    let name = task.generator.as_deref().ok_or_else(|| Error::Usage("mv-theorem needs a generator".into()))?;
    let g = generator(name)?;
    let check = interior_check(&g)?;
    if !check.ok {
        return Ok(VerificationReport::not_applicable(task, check.describe()));
    }
    let values = laurent_pow_ct(&g, task.cap - 1).values;
    ratio_congruence(task, &values, Formulation::CrossMultiplied)
}
