use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::form::DiffForm;
use crate::error::{Error, Result};
use crate::hypergeometric::{binomial, factorial, rising};
use crate::ring::{rat, Ring};
use crate::series::{SeriesRing, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidueKind {
    /// The residue at `x = 0`.
    AtZero,
    /// `res_{x=1} - res_{x=-1}`.
    PlusMinus,
}

/// Which period map; the truncated variants apply `1 - lambda^m/(x^3 - x)^m` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodVariant {
    Zero,
    PlusMinus,
    ZeroTruncated(usize),
    PlusMinusTruncated(usize),
}

impl PeriodVariant {
    fn kind(self) -> ResidueKind {
        match self {
            PeriodVariant::Zero | PeriodVariant::ZeroTruncated(_) => ResidueKind::AtZero,
            PeriodVariant::PlusMinus | PeriodVariant::PlusMinusTruncated(_) => ResidueKind::PlusMinus,
        }
    }

    fn truncation(self) -> Option<usize> {
        match self {
            PeriodVariant::ZeroTruncated(m) | PeriodVariant::PlusMinusTruncated(m) => Some(m),
            _ => None,
        }
    }
}

const CENTERS: [i64; 3] = [0, 1, -1];

/// Local expansions `h_c(e)^{-n}` at `x = c + e` for `c in {0, 1, -1}`, where
/// `x^3 - x = e h_c(e)` and `h_c = (3c^2 - 1) + 3c e + e^2`. Row `n` keeps degrees `< n`.
#[derive(Debug, Clone)]
pub struct ResidueTable {
    nmax: usize,
    inverse_powers: [Vec<Vec<BigRational>>; 3],
}

impl ResidueTable {
    pub fn new(nmax: usize) -> Self {
        let inverse_powers = CENTERS.map(|c| {
            let h = [
                BigRational::from_integer(BigInt::from(3 * c * c - 1)),
                BigRational::from_integer(BigInt::from(3 * c)),
                BigRational::one(),
            ];
            let h0_inv = h[0].recip();
            let mut running = vec![BigRational::zero(); nmax];
            if nmax > 0 {
                running[0] = BigRational::one();
            }
            let mut rows = vec![Vec::new()];
            for n in 1..=nmax {
                // h * next = running, solved degree by degree.
                let mut next = vec![BigRational::zero(); nmax];
                for k in 0..nmax {
                    let mut v = running[k].clone();
                    if k >= 1 {
                        v -= &h[1] * &next[k - 1];
                    }
                    if k >= 2 {
                        v -= &next[k - 2];
                    }
                    next[k] = v * &h0_inv;
                }
                rows.push(next[..n].to_vec());
                running = next;
            }
            rows
        });
        ResidueTable { nmax, inverse_powers }
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    /// Residue of `x^j dx / (x^3 - x)^n` at `x = center`.
    pub fn residue_at(&self, center: i64, j: usize, n: usize) -> Result<BigRational> {
        let idx = CENTERS.iter().position(|&c| c == center).ok_or_else(|| Error::param(format!("no residue table at x = {center}")))?;
        if n == 0 || n > self.nmax {
            return Err(Error::param(format!("pole order {n} outside 1..={}", self.nmax)));
        }
        let row = &self.inverse_powers[idx][n];
        let c = BigInt::from(center);
        let mut acc = BigRational::zero();
        for k in 0..=j.min(n - 1) {
            let weight = binomial(j as u64, k as u64) * c.pow((j - k) as u32);
            acc += BigRational::from_integer(weight) * &row[n - 1 - k];
        }
        Ok(acc)
    }

    pub fn residue(&self, kind: ResidueKind, j: usize, n: usize) -> Result<BigRational> {
        match kind {
            ResidueKind::AtZero => self.residue_at(0, j, n),
            ResidueKind::PlusMinus => Ok(self.residue_at(1, j, n)? - self.residue_at(-1, j, n)?),
        }
    }

    /// The period kernel: `-res_0` for the zero period and `res_1 - res_{-1}` for the other.
    pub fn kernel(&self, kind: ResidueKind, j: usize, n: usize) -> Result<BigRational> {
        let r = self.residue(kind, j, n)?;
        Ok(match kind {
            ResidueKind::AtZero => -r,
            ResidueKind::PlusMinus => r,
        })
    }
}

/// Residue of `x^{u-1} dx / (x^3 - x)^{r+1}` of the given kind.
pub fn residues(kind: ResidueKind, u: usize, r: usize) -> Result<BigRational> {
    if !(1..=2).contains(&u) {
        return Err(Error::param(format!("monomial index u must be 1 or 2, got {u}")));
    }
    ResidueTable::new(r + 1).residue(kind, u - 1, r + 1)
}

fn rational_pow(a: &BigRational, n: usize) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, _| acc * a)
}

/// The closed forms of the four residue tables, including their parity zeros.
pub fn residue_closed_form(kind: ResidueKind, u: usize, r: usize) -> BigRational {
    let n = r / 2;
    let nn = n as u64;
    let z = rational_pow(&rat(27, 4), n);
    let nf = BigRational::from_integer(factorial(nn));
    match (kind, u, r % 2) {
        (ResidueKind::AtZero, 1, 0) => -BigRational::from_integer(binomial(3 * nn, nn)),
        (ResidueKind::AtZero, 2, 1) => BigRational::from_integer(binomial(3 * nn + 1, nn)),
        (ResidueKind::PlusMinus, 1, 1) => rat(-3, 2) * rising(&rat(7, 6), nn) * rising(&rat(5, 6), nn) / (rising(&rat(3, 2), nn) * nf) * z,
        (ResidueKind::PlusMinus, 2, 0) => rising(&rat(1, 6), nn) * rising(&rat(5, 6), nn) / (rising(&rat(1, 2), nn) * nf) * z,
        _ => BigRational::zero(),
    }
}

/// The period of `omega`, whose denominator must be `x^3 - x - lambda(t)` with `lambda(0) = 0`.
///
/// Expands `1/(x^3 - x - lambda)^{l+1} = sum_R C(R+l, l) lambda^R / (x^3 - x)^{R+l+1}` and
/// takes residues termwise; the truncated variant drops `C(R-m+l, l)` for `R >= m`.
pub fn form_period<B: Ring>(omega: &DiffForm<SeriesRing<B>>, variant: PeriodVariant, table: &ResidueTable) -> Result<TruncatedSeries<B>> {
    let ring = omega.ring().clone();
    let base = ring.base().clone();
    let cap = ring.cap();
    let lambda = cubic_parameter(omega)?;
    if variant.truncation() == Some(0) {
        return Err(Error::param("truncated periods need m >= 1"));
    }
    let kind = variant.kind();
    let mut lambda_pows = vec![ring.one()];
    while lambda_pows.len() < cap {
        let next = ring.mul(lambda_pows.last().expect("nonempty"), &lambda);
        if ring.is_zero(&next) {
            break;
        }
        lambda_pows.push(next);
    }
    let mut total = ring.zero();
    for (&l, q) in omega.levels() {
        let l_fact = BigRational::from_integer(factorial(l as u64));
        for (j, c) in q.coeffs().iter().enumerate() {
            if ring.is_zero(c) {
                continue;
            }
            let mut period = ring.zero();
            for (big_r, pow) in lambda_pows.iter().enumerate() {
                let mut weight = binomial((big_r + l) as u64, l as u64);
                if let Some(m) = variant.truncation() {
                    if big_r >= m {
                        weight -= binomial((big_r - m + l) as u64, l as u64);
                    }
                }
                if weight.is_zero() {
                    continue;
                }
                let n = big_r + l + 1;
                let value = table.kernel(kind, j, n)? * &l_fact * BigRational::from_integer(weight);
                if value.is_zero() {
                    continue;
                }
                period = ring.add(&period, &ring.scale(pow, &base.from_rational(&value)?));
            }
            total = ring.add(&total, &ring.mul(c, &period));
        }
    }
    Ok(TruncatedSeries::new(base, total))
}

/// Largest pole order `form_period` can touch for forms over this ring with levels `< levels`.
pub fn table_size(cap: usize, levels: usize) -> usize {
    cap + levels + 1
}

fn cubic_parameter<B: Ring>(omega: &DiffForm<SeriesRing<B>>) -> Result<Vec<B::Elem>> {
    let ring = omega.ring();
    let g = omega.denominator();
    let shape_ok = g.degree() == Some(3) && g.coeff(3) == ring.one() && g.coeff(2) == ring.zero() && g.coeff(1) == ring.from_int(-1);
    let lambda = ring.neg(&g.coeff(0));
    if !shape_ok || !ring.base().is_zero(&lambda[0]) {
        return Err(Error::param("periods are defined for x^3 - x - lambda(t) with lambda(0) = 0"));
    }
    Ok(lambda)
}
