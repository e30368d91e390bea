use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{laurent_pow_ct, parse_laurent, LaurentPoly};
use crate::error::{Error, Result};
use crate::hypergeometric::{hyp_coeffs, lookup_series};
use crate::ring::{rat, Rationals, Ring};

/// The mixed generator is divided by this constant; it brings the exponential growth of
/// `f_{6l}` down to that of the hypergeometric coefficients.
pub const MIXED_NORMALIZER_DEN: i64 = 6;

fn index(name: &str, family: &str) -> Option<Result<usize>> {
    let k = name.strip_prefix(family)?.strip_prefix(':')?;
    Some(match k.parse::<usize>() {
        Ok(k) if k >= 2 => Ok(k),
        _ => Err(Error::Usage(format!("bad index in generator {name}"))),
    })
}

fn product(factors: &[LaurentPoly<Rationals>]) -> LaurentPoly<Rationals> {
    let dim = factors[0].dim();
    factors.iter().fold(LaurentPoly::one(Rationals, dim), |acc, f| acc.mul(f).expect("same dimension"))
}

/// `x_{offset+1} + .. + x_{offset+n} + 1/(x_{offset+1} .. x_{offset+n})` inside `dim` variables.
fn simplex_sum(dim: usize, offset: usize, n: usize) -> LaurentPoly<Rationals> {
    let mut terms: Vec<(Vec<i64>, BigRational)> = (0..n)
        .map(|i| {
            let mut e = vec![0; dim];
            e[offset + i] = 1;
            (e, BigRational::one())
        })
        .collect();
    let mut e = vec![0; dim];
    e[offset..offset + n].iter_mut().for_each(|a| *a = -1);
    terms.push((e, BigRational::one()));
    LaurentPoly::from_terms(Rationals, dim, terms).expect("consistent dimension")
}

/// Laurent generators by name: `corollary1:k`, `corollary2:k`, `mixed` and `mixed:raw`, the
/// interior-hypothesis violator `wide`, or a literal polynomial in the text format.
pub fn generator(name: &str) -> Result<LaurentPoly<Rationals>> {
    if let Some(k) = index(name, "corollary1") {
        let k = k?;
        return Ok(simplex_sum(k - 1, 0, k - 1).scale(&rat(1, k as i64)));
    }
    if let Some(k) = index(name, "corollary2") {
        let k = k?;
        let factors: Vec<_> = (0..k).map(|i| simplex_sum(k, i, 1)).collect();
        return Ok(product(&factors).scale(&BigRational::new(1.into(), num_bigint::BigInt::from(2).pow(k as u32))));
    }
    match name {
        "mixed" => Ok(generator("mixed:raw")?.scale(&rat(1, MIXED_NORMALIZER_DEN))),
        "mixed:raw" => Ok(product(&[simplex_sum(3, 0, 1), simplex_sum(3, 1, 2)])),
        "wide" => parse_laurent("x^2 + x^-2", None),
        _ if name.contains('x') => parse_laurent(name, None),
        _ => Err(Error::Usage(format!("unknown generator {name}"))),
    }
}

/// Comparison of the normalized mixed constant-term sequence with the coefficients of
/// `3F2(1/2, 1/3, 2/3; 1, 1 | t)`.
#[derive(Debug, Clone, Serialize)]
pub struct MixedIdentification {
    pub terms: usize,
    /// Whether `f_r = 0` for every `r` not divisible by 6 in range.
    pub support_in_multiples_of_six: bool,
    /// `f_{6l} / a_l` when it is the same for all `l` in range.
    pub constant_scaling: Option<String>,
    /// Whether the termwise product of the constant terms of the two factors equals `a_l`.
    pub factor_product_matches: bool,
}

impl MixedIdentification {
    pub fn summary(&self) -> String {
        let scaling = match &self.constant_scaling {
            Some(c) => format!("f_6l = {c} * a_l"),
            None => "no constant c with f_6l = c * a_l".into(),
        };
        format!(
            "mixed generator over {} terms: support in 6Z = {}; {}; factorwise product equals a_l = {}",
            self.terms, self.support_in_multiples_of_six, scaling, self.factor_product_matches
        )
    }
}

pub fn mixed_identification(terms: usize) -> Result<MixedIdentification> {
    let rmax = 6 * (terms - 1);
    let f = laurent_pow_ct(&generator("mixed")?, rmax).values;
    let a = hyp_coeffs(&lookup_series("mixed")?, terms)?;
    let support_in_multiples_of_six = f.iter().enumerate().all(|(r, v)| r % 6 == 0 || v.is_zero());
    let ratios: Vec<BigRational> = (0..terms).map(|l| &f[6 * l] / &a[l]).collect();
    let constant_scaling = ratios.iter().all(|q| q == &ratios[0]).then(|| Rationals.format(&ratios[0]));

    let x_part = laurent_pow_ct(&simplex_sum(1, 0, 1).scale(&rat(1, 2)), 2 * terms).values;
    let y_part = laurent_pow_ct(&simplex_sum(2, 0, 2).scale(&rat(1, 3)), 3 * terms).values;
    let factor_product_matches = (0..terms).all(|l| &x_part[2 * l] * &y_part[3 * l] == a[l]);
    Ok(MixedIdentification { terms, support_in_multiples_of_six, constant_scaling, factor_product_matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeometric::{binomial, factorial};

    #[test]
    fn corollary_generators_match_hypergeometric_route() {
        for (name, k) in [("corollary1:2", 2), ("corollary1:3", 3), ("corollary1:4", 4)] {
            let f = laurent_pow_ct(&generator(name).unwrap(), 24).values;
            let h = hyp_coeffs(&lookup_series(name).unwrap(), 24 / k + 1).unwrap();
            for r in 0..=24 {
                let expect = if r % k == 0 { h[r / k].clone() } else { BigRational::zero() };
                assert_eq!(f[r], expect, "{name}, r = {r}");
            }
        }
        for name in ["corollary2:2", "corollary2:3"] {
            let f = laurent_pow_ct(&generator(name).unwrap(), 20).values;
            let h = hyp_coeffs(&lookup_series(name).unwrap(), 11).unwrap();
            for r in 0..=20 {
                let expect = if r % 2 == 0 { h[r / 2].clone() } else { BigRational::zero() };
                assert_eq!(f[r], expect, "{name}, r = {r}");
            }
        }
    }

    #[test]
    fn mixed_closed_form() {
        let f = laurent_pow_ct(&generator("mixed:raw").unwrap(), 18).values;
        for l in 0..=3u64 {
            let closed = binomial(6 * l, 3 * l) * factorial(6 * l) / factorial(2 * l).pow(3);
            assert_eq!(f[6 * l as usize], BigRational::from_integer(closed));
        }
        assert!(f.iter().enumerate().all(|(r, v)| r % 6 == 0 || v.is_zero()));
    }

    #[test]
    fn mixed_is_the_factorwise_product() {
        let id = mixed_identification(20).unwrap();
        assert!(id.support_in_multiples_of_six);
        assert_eq!(id.constant_scaling, None);
        assert!(id.factor_product_matches);
        assert!(id.summary().contains("no constant"));
    }

    #[test]
    fn registry() {
        assert_eq!(generator("corollary2:4").unwrap().dim(), 4);
        assert_eq!(generator("corollary1:4").unwrap().dim(), 3);
        assert_eq!(generator("mixed").unwrap().terms().len(), 6);
        assert_eq!(generator("x + x^-1").unwrap().dim(), 1);
        assert!(matches!(generator("bogus"), Err(Error::Usage(_))));
        assert_eq!(generator("corollary2:3").unwrap().constant_term(), BigRational::zero());
    }
}
