use num_traits::Zero;

use super::{FirstFailure, Precision, Verdict, VerificationReport, VerifyTask};
use crate::crystal::{residue_closed_form, ResidueKind, ResidueTable};
use crate::error::{Error, Result};

/// Parity zeros are checked at least this far.
const PARITY_REACH: usize = 41;

/// Closed forms against local expansions for `n <= task.cap`, i.e. pole orders `r + 1` with
/// `r <= max(2 cap + 1, 41)`, plus the three-residue sum rule.
pub fn verify_residue_tables(task: &VerifyTask) -> Result<VerificationReport> {
    if task.control.is_some() {
        return Err(Error::param("residue-tables takes no negative control"));
    }
    let n_max = task.cap;
    let r_max = (2 * n_max + 1).max(PARITY_REACH);
    let table = ResidueTable::new(r_max + 1);
    let mut first_failure = None;
    let mut diagnosis = None;
    'scan: for r in 0..=r_max {
        for u in 1..=2 {
            for (k, kind) in [ResidueKind::AtZero, ResidueKind::PlusMinus].into_iter().enumerate() {
                let engine = table.residue(kind, u - 1, r + 1)?;
                let closed = residue_closed_form(kind, u, r);
                if engine != closed {
                    first_failure =
                        Some(FirstFailure { entry: Some((u, k + 1)), degree: r, lhs: engine.to_string(), rhs: closed.to_string() });
                    diagnosis = Some(format!("{kind:?} residue of x^{} dx/(x^3-x)^{}", u - 1, r + 1));
                    break 'scan;
                }
            }
            let sum = table.residue_at(0, u - 1, r + 1)? + table.residue_at(1, u - 1, r + 1)? + table.residue_at(-1, u - 1, r + 1)?;
            if !sum.is_zero() {
                first_failure = Some(FirstFailure { entry: Some((u, 0)), degree: r, lhs: sum.to_string(), rhs: "0".into() });
                diagnosis = Some("residues at 0, 1, -1 do not sum to zero".into());
                break 'scan;
            }
        }
    }
    Ok(VerificationReport {
        task: task.clone(),
        verdict: if first_failure.is_some() { Verdict::Fail } else { Verdict::Pass },
        first_failure,
        diagnosis: diagnosis.or(Some("entry (u, k): k = 1 residue at 0, k = 2 residue difference at 1 and -1, k = 0 sum rule".into())),
        precision: Some(Precision { modulus: "exact".into(), cap: n_max, checked: (0, r_max) }),
    })
}
