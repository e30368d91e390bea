//! Dense power series in `t` truncated at a fixed cap `N` (terms of degree `>= N` absent),
//! and 2x2 matrices of them.
//!
//! [`SeriesRing`] makes `R[t]/(t^N)` itself a [`Ring`], so polynomials in `x` over it are
//! available to the crystal engine. [`TruncatedSeries`] is the value type carrying its ring.

mod matrix;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

pub use matrix::{MatrixMismatch, SeriesMatrix};

use crate::error::{Error, Result};
use crate::ring::{ModulusContext, Padic, Ring};

/// The truncated power-series ring `B[t]/(t^cap)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesRing<B> {
    base: B,
    cap: usize,
}

impl<B: Ring> SeriesRing<B> {
    pub fn new(base: B, cap: usize) -> Self {
        assert!(cap >= 1, "series cap must be positive");
        SeriesRing { base, cap }
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn constant(&self, c: B::Elem) -> Vec<B::Elem> {
        let mut v = vec![self.base.zero(); self.cap];
        v[0] = c;
        v
    }

    /// `c t^k` (zero when `k >= cap`).
    pub fn monomial(&self, c: B::Elem, k: usize) -> Vec<B::Elem> {
        let mut v = vec![self.base.zero(); self.cap];
        if k < self.cap {
            v[k] = c;
        }
        v
    }

    pub fn scale(&self, a: &[B::Elem], c: &B::Elem) -> Vec<B::Elem> {
        a.iter().map(|x| self.base.mul(x, c)).collect()
    }

    /// `t -> t^k` without touching coefficients.
    pub fn substitute_power(&self, a: &[B::Elem], k: usize) -> Vec<B::Elem> {
        let mut out = vec![self.base.zero(); self.cap];
        for (i, c) in a.iter().enumerate() {
            match i.checked_mul(k) {
                Some(j) if j < self.cap => out[j] = c.clone(),
                _ => break,
            }
        }
        out
    }

    pub fn derivative(&self, a: &[B::Elem]) -> Vec<B::Elem> {
        (1..a.len()).map(|i| self.base.mul_int(&a[i], i as i64)).collect()
    }
}

impl<B: Ring> Ring for SeriesRing<B> {
    type Elem = Vec<B::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.cap]
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem> {
        Ok(self.constant(self.base.from_rational(q)?))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = self.cap;
        let mut out = vec![self.base.zero(); n];
        let b_len = b.iter().rposition(|c| !self.base.is_zero(c)).map_or(0, |i| i + 1);
        for (i, x) in a.iter().enumerate().take(n) {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(b_len.min(n - i)) {
                let prod = self.base.mul(x, y);
                out[i + j] = self.base.add(&out[i + j], &prod);
            }
        }
        out
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.base.is_unit(&a[0])
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let b0 = self.base.inv(&a[0])?;
        let mut out = Vec::with_capacity(self.cap);
        out.push(b0.clone());
        for n in 1..self.cap {
            let mut acc = self.base.zero();
            for i in 1..=n {
                acc = self.base.add(&acc, &self.base.mul(&a[i], &out[n - i]));
            }
            out.push(self.base.neg(&self.base.mul(&b0, &acc)));
        }
        Some(out)
    }
    fn format(&self, a: &Self::Elem) -> String {
        let terms: Vec<String> =
            a.iter().enumerate().filter(|(_, c)| !self.base.is_zero(c)).map(|(i, c)| format!("({})t^{}", self.base.format(c), i)).collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl<B: Padic> Padic for SeriesRing<B> {
    fn ctx(&self) -> &ModulusContext {
        self.base.ctx()
    }
    fn at_precision(&self, s: u32) -> Result<Self> {
        Ok(SeriesRing::new(self.base.at_precision(s)?, self.cap))
    }
    fn project(&self, a: &Self::Elem, target: &Self) -> Self::Elem {
        a.iter().take(target.cap).map(|c| self.base.project(c, &target.base)).collect()
    }
    fn divide_by_p(&self, a: &Self::Elem, target: &Self) -> Option<Self::Elem> {
        a.iter().take(target.cap).map(|c| self.base.divide_by_p(c, &target.base)).collect()
    }
    fn divisible_by_p_pow(&self, a: &Self::Elem, k: u32) -> bool {
        a.iter().all(|c| self.base.divisible_by_p_pow(c, k))
    }
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        let p = self.ctx().p() as usize;
        let twisted: Vec<B::Elem> = a.iter().map(|c| self.base.frobenius(c)).collect();
        self.substitute_power(&twisted, p)
    }
}

/// A power series `sum_{i < N} c_i t^i` over `B`; index `i` holds the coefficient of `t^i`.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<B: Ring> {
    base: B,
    coeffs: Vec<B::Elem>,
}

impl<B: Ring> fmt::Debug for TruncatedSeries<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[cap {}]({})", self.cap(), self.ring().format(&self.coeffs))
    }
}

impl<B: Ring> TruncatedSeries<B> {
    pub fn new(base: B, coeffs: Vec<B::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "series cap must be positive");
        TruncatedSeries { base, coeffs }
    }

    pub fn zero(base: B, cap: usize) -> Self {
        let coeffs = vec![base.zero(); cap];
        Self::new(base, coeffs)
    }

    pub fn one(base: B, cap: usize) -> Self {
        let ring = SeriesRing::new(base.clone(), cap);
        Self::new(base, ring.one())
    }

    pub fn monomial(base: B, c: B::Elem, k: usize, cap: usize) -> Self {
        let ring = SeriesRing::new(base.clone(), cap);
        Self::new(base, ring.monomial(c, k))
    }

    /// Reduces exact rational coefficients into `base`, zero-padding or cutting to `cap`.
    pub fn from_rationals(base: B, coeffs: &[BigRational], cap: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(cap);
        for i in 0..cap {
            out.push(match coeffs.get(i) {
                Some(q) => base.from_rational(q)?,
                None => base.zero(),
            });
        }
        Ok(Self::new(base, out))
    }

    /// Integer coefficients, for tests and small literals.
    pub fn from_ints(base: B, coeffs: &[i64], cap: usize) -> Self {
        let c = (0..cap).map(|i| base.from_int(coeffs.get(i).copied().unwrap_or(0))).collect();
        Self::new(base, c)
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn ring(&self) -> SeriesRing<B> {
        SeriesRing::new(self.base.clone(), self.cap())
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[B::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<B::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &B::Elem {
        &self.coeffs[i]
    }

    pub fn set_coeff(&mut self, i: usize, c: B::Elem) {
        self.coeffs[i] = c;
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(Error::param("series over different coefficient rings"));
        }
        if self.cap() != other.cap() {
            return Err(Error::param(format!("series caps differ ({} vs {})", self.cap(), other.cap())));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::new(self.base.clone(), self.ring().add(&self.coeffs, &other.coeffs)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::new(self.base.clone(), self.ring().sub(&self.coeffs, &other.coeffs)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::new(self.base.clone(), self.ring().mul(&self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, c: &B::Elem) -> Self {
        Self::new(self.base.clone(), self.ring().scale(&self.coeffs, c))
    }

    pub fn is_unit(&self) -> bool {
        self.base.is_unit(&self.coeffs[0])
    }

    pub fn invert(&self) -> Result<Self> {
        self.ring()
            .inv(&self.coeffs)
            .map(|c| Self::new(self.base.clone(), c))
            .ok_or_else(|| Error::NotInvertible(format!("constant term {} is not a unit", self.base.format(&self.coeffs[0]))))
    }

    /// Deletes all terms of degree `>= m`, keeping the cap.
    pub fn truncate_at(&self, m: usize) -> Result<Self> {
        if m > self.cap() {
            return Err(Error::Precision { requested: m, cap: self.cap() });
        }
        let mut c = self.coeffs.clone();
        for x in c.iter_mut().skip(m) {
            *x = self.base.zero();
        }
        Ok(Self::new(self.base.clone(), c))
    }

    /// `t -> t^k` with coefficients untouched.
    pub fn substitute_power(&self, k: usize) -> Self {
        Self::new(self.base.clone(), self.ring().substitute_power(&self.coeffs, k))
    }

    /// `d/dt`; the result is known only through degree `cap - 2`, so its cap is `cap - 1`.
    pub fn derivative(&self) -> Result<Self> {
        if self.cap() < 2 {
            return Err(Error::Precision { requested: 1, cap: self.cap() });
        }
        Ok(Self::new(self.base.clone(), self.ring().derivative(&self.coeffs)))
    }

    /// Restricts to a smaller cap.
    pub fn with_cap(&self, cap: usize) -> Result<Self> {
        if cap > self.cap() {
            return Err(Error::Precision { requested: cap, cap: self.cap() });
        }
        Ok(Self::new(self.base.clone(), self.coeffs[..cap].to_vec()))
    }

    pub fn map<C: Ring>(&self, target: C, f: impl Fn(&B::Elem) -> C::Elem) -> TruncatedSeries<C> {
        TruncatedSeries::new(target, self.coeffs.iter().map(f).collect())
    }

    /// First degree at which the two series differ.
    pub fn first_mismatch(&self, other: &Self) -> Result<Option<usize>> {
        self.check_compatible(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b))
    }

    /// One line `t^i: <coefficient>` per nonzero coefficient, ascending degree.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !self.base.is_zero(c) {
                out.push_str(&format!("t^{}: {}\n", i, self.base.format(c)));
            }
        }
        out
    }
}

impl<B: Padic> TruncatedSeries<B> {
    /// `a(t) -> a^sigma(t^p)`: coefficient `i` moves to degree `p i` with the Frobenius
    /// applied; the cap is preserved.
    pub fn substitute_tp(&self) -> Self {
        Self::new(self.base.clone(), self.ring().frobenius(&self.coeffs))
    }

    pub fn project(&self, target: &B) -> Self {
        self.map(target.clone(), |c| self.base.project(c, target))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<B: Ring> $trait for &TruncatedSeries<B> {
            type Output = TruncatedSeries<B>;
            fn $method(self, rhs: Self) -> TruncatedSeries<B> {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<B: Ring> Neg for &TruncatedSeries<B> {
    type Output = TruncatedSeries<B>;
    fn neg(self) -> TruncatedSeries<B> {
        TruncatedSeries::new(self.base.clone(), self.ring().neg(&self.coeffs))
    }
}
