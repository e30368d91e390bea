//! Multivariate Laurent polynomials, constant-term sequences of their powers, Newton
//! polytopes and Hasse-Witt matrices.

mod generators;
mod hasse_witt;
mod parse;
mod polytope;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Rationals, Ring};
use crate::series::TruncatedSeries;

pub use generators::{generator, mixed_identification, MixedIdentification, MIXED_NORMALIZER_DEN};
pub use hasse_witt::{cubic_family, hasse_witt, HasseWitt};
pub use parse::parse_laurent;
pub use polytope::{interior_check, InteriorCheck, NewtonPolytope};

pub type Exponent = Vec<i64>;

/// A Laurent polynomial in `dim` variables; zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<R: Ring> {
    ring: R,
    dim: usize,
    terms: BTreeMap<Exponent, R::Elem>,
}

impl<R: Ring> std::fmt::Debug for LaurentPoly<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LaurentPoly({})", self.format())
    }
}

impl<R: Ring> LaurentPoly<R> {
    pub fn zero(ring: R, dim: usize) -> Self {
        LaurentPoly { ring, dim, terms: BTreeMap::new() }
    }

    pub fn one(ring: R, dim: usize) -> Self {
        let c = ring.one();
        Self::monomial(ring, c, vec![0; dim])
    }

    pub fn monomial(ring: R, c: R::Elem, exp: Exponent) -> Self {
        let dim = exp.len();
        let mut p = Self::zero(ring, dim);
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(ring: R, dim: usize, terms: impl IntoIterator<Item = (Exponent, R::Elem)>) -> Result<Self> {
        let mut p = Self::zero(ring, dim);
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::param(format!("exponent {e:?} does not have dimension {dim}")));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, R::Elem> {
        &self.terms
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, exp: &[i64]) -> R::Elem {
        self.terms.get(exp).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> R::Elem {
        self.coeff(&vec![0; self.dim])
    }

    fn add_term(&mut self, exp: Exponent, c: R::Elem) {
        let r = &self.ring;
        let sum = match self.terms.remove(&exp) {
            Some(old) => r.add(&old, &c),
            None => c,
        };
        if !r.is_zero(&sum) {
            self.terms.insert(exp, sum);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.ring != other.ring {
            return Err(Error::param("Laurent polynomials over different rings or dimensions"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.dim);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), self.ring.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.ring.clone(), self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.dim);
        for _ in 0..n {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Terms joined by ` + `, each `c * x1^a1 x2^a2`; the zero polynomial prints as `0`.
    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a != 0)
                    .map(|(i, a)| if *a == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, a) })
                    .collect();
                let c = self.ring.format(c);
                if mono.is_empty() {
                    c
                } else {
                    format!("{c} * {}", mono.join(" "))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// `f_0, .., f_rmax` with `f_r` the constant term of `g^r`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantTermSeq {
    pub values: Vec<BigRational>,
}

impl ConstantTermSeq {
    pub fn to_series<B: Ring>(&self, base: &B, cap: usize) -> Result<TruncatedSeries<B>> {
        TruncatedSeries::from_rationals(base.clone(), &self.values, cap)
    }
}

/// Constant terms of `g^r` for `r <= rmax`.
///
/// Works with the integer polynomial `D g` for `D` the common denominator and keeps one
/// running power. After step `r` a monomial with `|e_i| > w_i (rmax - r)`, where `w_i` is the
/// largest `|e_i|` on the support of `g`, can no longer reach the origin and is dropped.
pub fn laurent_pow_ct(g: &LaurentPoly<Rationals>, rmax: usize) -> ConstantTermSeq {
    let dim = g.dim();
    let den = g.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let h: Vec<(Exponent, BigInt)> =
        g.terms.iter().map(|(e, c)| (e.clone(), (c * BigRational::from_integer(den.clone())).to_integer())).collect();
    let reach: Vec<i64> = (0..dim).map(|i| h.iter().map(|(e, _)| e[i].abs()).max().unwrap_or(0)).collect();
    let origin = vec![0i64; dim];

    let mut values = Vec::with_capacity(rmax + 1);
    let mut power: HashMap<Exponent, BigInt> = HashMap::from([(origin.clone(), BigInt::one())]);
    let mut den_pow = BigInt::one();
    values.push(BigRational::one());
    for r in 1..=rmax {
        let slack = (rmax - r) as i64;
        let mut next: HashMap<Exponent, BigInt> = HashMap::with_capacity(power.len() * 2);
        for (e1, c1) in &power {
            for (e2, c2) in &h {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if e.iter().zip(&reach).any(|(a, w)| a.abs() > w * slack) {
                    continue;
                }
                let prod = c1 * c2;
                match next.get_mut(&e) {
                    Some(v) => *v += prod,
                    None => {
                        next.insert(e, prod);
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        power = next;
        den_pow *= &den;
        let ct = power.get(&origin).cloned().unwrap_or_default();
        values.push(BigRational::new(ct, den_pow.clone()));
    }
    ConstantTermSeq { values }
}
