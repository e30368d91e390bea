use serde::Serialize;

use super::form::DiffForm;
use crate::error::{Error, Result};
use crate::hypergeometric::factorial;
use crate::ring::{ord_p, Padic, Ring};
use num_rational::BigRational;

/// `sum_{m=1}^{depth} a_m x^{-m} dx/x`; `coeffs[0]` is the (always zero) `dx/x` term.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalExpansion<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

/// Outcome of the exactness test; `first_violation` is the smallest failing index `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KatzCheck {
    pub pass: bool,
    pub first_violation: Option<usize>,
}

impl<R: Ring> FormalExpansion<R> {
    pub fn zero(ring: R, depth: usize) -> Self {
        let coeffs = vec![ring.zero(); depth + 1];
        FormalExpansion { ring, coeffs }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^{-m} dx/x`.
    pub fn coeff(&self, m: usize) -> &R::Elem {
        &self.coeffs[m]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.depth() != other.depth() {
            return Err(Error::param("formal expansions of different depth"));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.ring.add(a, b)).collect();
        Ok(FormalExpansion { ring: self.ring.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.depth() != other.depth() {
            return Err(Error::param("formal expansions of different depth"));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.ring.sub(a, b)).collect();
        Ok(FormalExpansion { ring: self.ring.clone(), coeffs })
    }

    /// The Cartier operator on expansions, `a_m -> a_{pm}`, applied `times` times.
    pub fn cartier_iterate(&self, p: u64, times: u32) -> Self {
        let step = (p as usize).pow(times);
        let depth = self.depth() / step;
        let coeffs = (0..=depth).map(|m| self.coeffs[m * step].clone()).collect();
        FormalExpansion { ring: self.ring.clone(), coeffs }
    }
}

impl<R: Padic> FormalExpansion<R> {
    /// A formal derivative exactly when every `a_m` is divisible by `p^{ord_p(m)}`, capped at
    /// the working precision.
    pub fn katz_exact(&self) -> KatzCheck {
        let ctx = self.ring.ctx();
        let (p, s) = (ctx.p(), ctx.s());
        let first_violation = (1..self.coeffs.len()).find(|&m| {
            let need = ord_p(m as i64, p).min(s);
            !self.ring.divisible_by_p_pow(&self.coeffs[m], need)
        });
        KatzCheck { pass: first_violation.is_none(), first_violation }
    }

    /// For an exact form, `s` Cartier steps land in `p^s`; returns the first index that is not.
    pub fn iterated_cartier_violation(&self, times: u32) -> Option<usize> {
        let p = self.ring.ctx().p();
        let img = self.cartier_iterate(p, times);
        (1..img.coeffs.len()).find(|&m| !self.ring.divisible_by_p_pow(&img.coeffs[m], times))
    }
}

/// Power series in `z` truncated after `z^depth`.
fn z_mul<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len();
    let mut out = vec![ring.zero(); n];
    for (i, x) in a.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().take(n - i).enumerate() {
            if !ring.is_zero(y) {
                out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
            }
        }
    }
    out
}

/// Inverse of a series with constant term 1.
fn z_inv_monic<R: Ring>(ring: &R, a: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len();
    let mut out = vec![ring.zero(); n];
    out[0] = ring.one();
    for k in 1..n {
        let mut acc = ring.zero();
        for i in 1..=k {
            acc = ring.add(&acc, &ring.mul(&a[i], &out[k - i]));
        }
        out[k] = ring.neg(&acc);
    }
    out
}

/// Expands `omega` in `z = 1/x` to depth `depth`, writing `g = x^d h(z)` with `h(0) = 1`.
pub fn formal_expand<R: Ring>(omega: &DiffForm<R>, depth: usize) -> Result<FormalExpansion<R>> {
    omega.check_window()?;
    let ring = omega.ring().clone();
    let g = omega.denominator();
    let d = g.degree().ok_or_else(|| Error::param("zero denominator"))?;
    if !ring.is_zero(&ring.sub(&g.coeff(d), &ring.one())) {
        return Err(Error::param("formal expansion needs a monic denominator"));
    }
    let n = depth + 1;
    let h: Vec<R::Elem> = (0..n).map(|k| if k <= d { g.coeff(d - k) } else { ring.zero() }).collect();
    let h_inv = z_inv_monic(&ring, &h);
    let mut out = FormalExpansion::zero(ring.clone(), depth);
    let mut power = vec![ring.zero(); n];
    power[0] = ring.one();
    let mut level = 0;
    for (&l, q) in omega.levels() {
        while level <= l {
            power = z_mul(&ring, &power, &h_inv);
            level += 1;
        }
        let weight = ring.from_rational(&BigRational::from_integer(factorial(l as u64)))?;
        for (i, c) in q.coeffs().iter().enumerate() {
            if ring.is_zero(c) {
                continue;
            }
            let shift = d * (l + 1) - i - 1;
            let c = ring.mul(c, &weight);
            for m in shift..n {
                let term = ring.mul(&c, &power[m - shift]);
                out.coeffs[m] = ring.add(&out.coeffs[m], &term);
            }
        }
    }
    Ok(out)
}
