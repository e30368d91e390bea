//! Generalized hypergeometric series with rational parameters, and the named series and
//! period matrices built from them.
//!
//! Coefficients are always produced as exact rationals from the Pochhammer recurrence and
//! reduced into a coefficient ring afterwards: the recurrence divides by `n + 1`, which is
//! periodically a non-unit mod p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{rat, Ring};
use crate::series::{SeriesMatrix, TruncatedSeries};

/// `prefactor * t^prefactor_power * sum_n c_n (scale * t^arg_power)^n` with
/// `c_n = prod (a_i)_n / prod (b_j)_n`. The lower list includes the final parameter 1
/// that produces the `n!`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypSpec {
    pub upper: Vec<BigRational>,
    pub lower: Vec<BigRational>,
    pub scale: BigRational,
    pub arg_power: usize,
    pub prefactor: BigRational,
    pub prefactor_power: usize,
}

impl HypSpec {
    pub fn new(upper: Vec<BigRational>, lower: Vec<BigRational>) -> Result<Self> {
        if let Some(b) = lower.iter().find(|b| b.is_integer() && !b.is_positive()) {
            return Err(Error::param(format!("lower parameter {b} is a non-positive integer")));
        }
        Ok(HypSpec { upper, lower, scale: BigRational::one(), arg_power: 1, prefactor: BigRational::one(), prefactor_power: 0 })
    }

    /// Gauss's `F(a, b, c | t) = 2F1(a, b; c; t)` in the three-slot notation.
    pub fn gauss(a: BigRational, b: BigRational, c: BigRational) -> Result<Self> {
        Self::new(vec![a, b], vec![c, BigRational::one()])
    }

    /// Replaces the argument `t` by `scale * t^power`.
    pub fn argument(mut self, scale: BigRational, power: usize) -> Self {
        assert!(power >= 1, "argument power must be positive");
        self.scale = scale;
        self.arg_power = power;
        self
    }

    pub fn prefactor(mut self, c: BigRational, power: usize) -> Self {
        self.prefactor = c;
        self.prefactor_power = power;
        self
    }

    /// Every denominator appearing in the parameters, argument scale and prefactor.
    pub fn denominators(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .upper
            .iter()
            .chain(&self.lower)
            .chain([&self.scale, &self.prefactor])
            .filter_map(|q| q.denom().to_u64())
            .filter(|&d| d > 1)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn pochhammer(&self) -> PochhammerStream<'_> {
        PochhammerStream { spec: self, n: 0, current: BigRational::one() }
    }
}

/// Running value of `c_n`, advanced by `c_{n+1} = c_n prod(a_i + n) / prod(b_j + n)`.
pub struct PochhammerStream<'a> {
    spec: &'a HypSpec,
    n: u64,
    current: BigRational,
}

impl Iterator for PochhammerStream<'_> {
    type Item = BigRational;

    fn next(&mut self) -> Option<BigRational> {
        let out = self.current.clone();
        let n = BigRational::from_integer(BigInt::from(self.n));
        let mut num = BigRational::one();
        for a in &self.spec.upper {
            num *= a + &n;
        }
        let mut den = BigRational::one();
        for b in &self.spec.lower {
            den *= b + &n;
        }
        self.current = if num.is_zero() { num } else { &self.current * num / den };
        self.n += 1;
        Some(out)
    }
}

/// Coefficients of `t^0 .. t^{n-1}` of the fully transformed series.
pub fn hyp_coeffs(spec: &HypSpec, n: usize) -> Result<Vec<BigRational>> {
    if n == 0 {
        return Err(Error::param("hyp_coeffs needs N >= 1"));
    }
    let mut out = vec![BigRational::zero(); n];
    let pre = spec.prefactor_power;
    if pre >= n {
        return Ok(out);
    }
    let terms = (n - 1 - pre) / spec.arg_power + 1;
    let mut scale_pow = BigRational::one();
    for (k, c) in spec.pochhammer().take(terms).enumerate() {
        out[pre + k * spec.arg_power] = &spec.prefactor * &c * &scale_pow;
        scale_pow *= &spec.scale;
    }
    Ok(out)
}

pub fn hyp_series<B: Ring>(spec: &HypSpec, base: &B, cap: usize) -> Result<TruncatedSeries<B>> {
    TruncatedSeries::from_rationals(base.clone(), &hyp_coeffs(spec, cap)?, cap)
}

/// Parses names of the form `family:k`.
fn family_index(name: &str, family: &str) -> Option<Result<u64>> {
    let rest = name.strip_prefix(family)?.strip_prefix(':')?;
    Some(rest.parse::<u64>().map_err(|_| Error::Usage(format!("bad index in {name}"))).and_then(|k| {
        if k >= 2 {
            Ok(k)
        } else {
            Err(Error::Usage(format!("{name}: k must be at least 2")))
        }
    }))
}

/// The named scalar series: `dwork`, `corollary1:k`, `corollary2:k`, `mixed`.
///
/// `corollary1:k` is `(k-1)F(k-2)(1/k, .., (k-1)/k; 1, .., 1 | t)` and `corollary2:k` is the
/// series whose coefficients are `((1/2)_l / l!)^k`; both in the variable `t` of the
/// hypergeometric display (their constant-term counterparts live in `t^k` resp. `t^2`).
pub fn lookup_series(name: &str) -> Result<HypSpec> {
    let one = BigRational::one;
    match name {
        "dwork" => HypSpec::gauss(rat(1, 2), rat(1, 2), one()),
        "mixed" => HypSpec::new(vec![rat(1, 2), rat(1, 3), rat(2, 3)], vec![one(), one(), one()]),
        _ => {
            if let Some(k) = family_index(name, "corollary1") {
                let k = k? as i64;
                HypSpec::new((1..k).map(|j| rat(j, k)).collect(), vec![one(); (k - 1) as usize])
            } else if let Some(k) = family_index(name, "corollary2") {
                let k = k? as usize;
                HypSpec::new(vec![rat(1, 2); k], vec![one(); k])
            } else {
                Err(Error::Usage(format!("unknown series name {name}")))
            }
        }
    }
}

/// The power of `t` in which the constant-term sequence of the matching generator lives.
pub fn constant_term_variable_power(name: &str) -> Result<usize> {
    if let Some(k) = family_index(name, "corollary1") {
        return Ok(k? as usize);
    }
    if family_index(name, "corollary2").is_some() {
        return Ok(2);
    }
    Err(Error::Usage(format!("{name} has no constant-term counterpart in this form")))
}

fn gauss_entry(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> HypSpec {
    HypSpec::gauss(rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1)).expect("valid parameters")
}

/// The four specs of the period matrix `Y(t)` of `x^3 - x - t`; row 1 holds the
/// periods of `dx/f`, row 2 those of `x dx/f`; column 1 is `rho_0`, column 2 `rho_pm`.
pub fn y_specs() -> [[HypSpec; 2]; 2] {
    let z = rat(27, 4);
    [
        [
            gauss_entry((1, 3), (2, 3), (1, 2)).argument(z.clone(), 2),
            gauss_entry((7, 6), (5, 6), (3, 2)).argument(z.clone(), 2).prefactor(rat(-3, 2), 1),
        ],
        [
            gauss_entry((2, 3), (4, 3), (3, 2)).argument(z.clone(), 2).prefactor(rat(-1, 1), 1),
            gauss_entry((1, 6), (5, 6), (1, 2)).argument(z, 2),
        ],
    ]
}

/// The four specs of the rescaled period matrix appearing in the matrix congruence.
pub fn scr_y_specs() -> [[HypSpec; 2]; 2] {
    let one = BigRational::one();
    [
        [
            gauss_entry((1, 3), (2, 3), (1, 2)).argument(one.clone(), 2),
            gauss_entry((7, 6), (5, 6), (3, 2)).argument(one.clone(), 2).prefactor(rat(-1, 3), 1),
        ],
        [
            gauss_entry((2, 3), (4, 3), (3, 2)).argument(one.clone(), 2).prefactor(rat(-2, 3), 1),
            gauss_entry((1, 6), (5, 6), (1, 2)).argument(one, 2),
        ],
    ]
}

fn build_matrix<B: Ring>(specs: [[HypSpec; 2]; 2], base: &B, cap: usize) -> Result<SeriesMatrix<B>> {
    let [[a, b], [c, d]] = specs;
    SeriesMatrix::from_rows(hyp_series(&a, base, cap)?, hyp_series(&b, base, cap)?, hyp_series(&c, base, cap)?, hyp_series(&d, base, cap)?)
}

/// `Y(t)` reduced into `base` at cap `cap`. A `NotPIntegral` error here means a
/// coefficient failed to reduce, which must not happen for p > 3.
pub fn build_y<B: Ring>(base: &B, cap: usize) -> Result<SeriesMatrix<B>> {
    build_matrix(y_specs(), base, cap)
}

pub fn build_scr_y<B: Ring>(base: &B, cap: usize) -> Result<SeriesMatrix<B>> {
    build_matrix(scr_y_specs(), base, cap)
}

/// Exact binomial coefficient, used by tests and the residue tables.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(a)_n`, the rising factorial.
pub fn rising(a: &BigRational, n: u64) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, i| acc * (a + BigRational::from_integer(BigInt::from(i))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Rationals, Zmod};

    fn int(n: i64) -> BigRational {
        rat(n, 1)
    }

    #[test]
    fn dwork_first_coefficient() {
        let c = hyp_coeffs(&lookup_series("dwork").unwrap(), 3).unwrap();
        assert_eq!(c, vec![int(1), rat(1, 4), rat(9, 64)]);
    }

    #[test]
    fn y_entry_examples() {
        let [[y11, _], [y21, _]] = y_specs();
        assert_eq!(hyp_coeffs(&y11, 3).unwrap()[2], int(3));
        assert_eq!(hyp_coeffs(&y21, 4).unwrap()[3], int(-4));
    }

    #[test]
    fn rejects_non_positive_lower_parameter() {
        assert!(HypSpec::new(vec![rat(1, 2)], vec![int(-2)]).is_err());
        assert!(HypSpec::new(vec![rat(1, 2)], vec![int(0)]).is_err());
        assert!(HypSpec::new(vec![rat(1, 2)], vec![rat(-1, 2)]).is_ok());
    }

    #[test]
    fn y_and_scr_y_at_origin() {
        let r = Zmod::with_ps(5, 2).unwrap();
        let y = build_y(&r, 8).unwrap();
        let id = SeriesMatrix::identity(r.clone(), 8);
        assert_eq!(y.with_cap(1).unwrap(), id.with_cap(1).unwrap());
        let sy = build_scr_y(&r, 8).unwrap();
        assert_eq!(sy.with_cap(1).unwrap(), id.with_cap(1).unwrap());
        // Entry (1,1) of Y through t^4 is 1 + 3t^2 + 15t^4.
        assert_eq!(&y.entry(0, 0).coeffs()[..5], &[1, 0, 3, 0, 15]);
        assert_eq!(*y.entry(0, 1).coeff(1), r.from_rational(&rat(-3, 2)).unwrap());
        assert_eq!(*sy.entry(1, 0).coeff(1), r.from_rational(&rat(-2, 3)).unwrap());
    }

    #[test]
    fn scr_y_derivative_at_origin() {
        let sy = build_scr_y(&Rationals, 4).unwrap();
        let d = sy.derivative().unwrap();
        let at0 = |i, j| d.entry(i, j).coeff(0).clone();
        assert_eq!(at0(0, 0), int(0));
        assert_eq!(at0(0, 1), rat(-1, 3));
        assert_eq!(at0(1, 0), rat(-2, 3));
        assert_eq!(at0(1, 1), int(0));
    }

    #[test]
    fn binomial_identities() {
        let [[y11, _], [y21, _]] = y_specs();
        let a = hyp_coeffs(&y11, 62).unwrap();
        let b = hyp_coeffs(&y21.prefactor(int(1), 1), 62).unwrap();
        for n in 0..=30u64 {
            assert_eq!(a[2 * n as usize], BigRational::from_integer(binomial(3 * n, n)), "n = {n}");
            assert_eq!(b[2 * n as usize + 1], BigRational::from_integer(binomial(3 * n + 1, n)), "n = {n}");
            if n < 30 {
                assert!(a[2 * n as usize + 1].is_zero());
            }
        }
    }

    #[test]
    fn first_corollary_product_form() {
        for k in 2..=5u64 {
            let spec = lookup_series(&format!("corollary1:{k}")).unwrap();
            let c = hyp_coeffs(&spec, 21).unwrap();
            for l in 0..=20u64 {
                let multinomial = BigRational::new(factorial(k * l), factorial(l).pow(k as u32) * BigInt::from(k).pow((k * l) as u32));
                let pochhammer = (1..k)
                    .fold(BigRational::one(), |acc, j| acc * rising(&rat(j as i64, k as i64), l) / BigRational::from_integer(factorial(l)));
                assert_eq!(c[l as usize], multinomial, "k = {k}, l = {l}");
                assert_eq!(c[l as usize], pochhammer, "k = {k}, l = {l}");
            }
        }
    }

    #[test]
    fn named_series_are_p_integral() {
        let mut names: Vec<String> = vec!["dwork".into(), "mixed".into()];
        for k in 2..=5 {
            names.push(format!("corollary1:{k}"));
            names.push(format!("corollary2:{k}"));
        }
        for p in [5u64, 7, 11, 13] {
            let r = Zmod::with_ps(p, 2).unwrap();
            for name in &names {
                if name == "corollary1:5" && p == 5 {
                    continue;
                }
                hyp_series(&lookup_series(name).unwrap(), &r, 200).unwrap();
            }
            build_y(&r, 200).unwrap();
            build_scr_y(&r, 200).unwrap();
        }
        assert!(matches!(
            hyp_series(&lookup_series("corollary1:5").unwrap(), &Zmod::with_ps(5, 1).unwrap(), 10),
            Err(Error::NotPIntegral { .. })
        ));
    }

    #[test]
    fn registry_errors() {
        assert!(matches!(lookup_series("nope"), Err(Error::Usage(_))));
        assert!(matches!(lookup_series("corollary1:x"), Err(Error::Usage(_))));
        assert!(matches!(lookup_series("corollary1:1"), Err(Error::Usage(_))));
        assert_eq!(constant_term_variable_power("corollary1:3").unwrap(), 3);
        assert_eq!(constant_term_variable_power("corollary2:4").unwrap(), 2);
    }

    #[test]
    fn denominators_recorded() {
        let [[_, y12], _] = y_specs();
        assert_eq!(y12.denominators(), vec![2, 4, 6]);
    }
}
