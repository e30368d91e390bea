use num_rational::BigRational;

use super::{ModulusContext, Padic, Ring};
use crate::error::{Error, Result};

/// The free rank-2 ring `B[u]/(u^2 - 3)`; elements are pairs `(c0, c1)` for `c0 + c1 u`.
///
/// The ring is used even when 3 is a square mod p (it then splits); all formulas stay valid.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadExt<B> {
    base: B,
}

impl<B: Ring> QuadExt<B> {
    pub fn new(base: B) -> Self {
        QuadExt { base }
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    /// The generator `u` with `u^2 = 3`.
    pub fn u(&self) -> (B::Elem, B::Elem) {
        (self.base.zero(), self.base.one())
    }

    pub fn embed(&self, c: B::Elem) -> (B::Elem, B::Elem) {
        (c, self.base.zero())
    }

    fn norm(&self, a: &(B::Elem, B::Elem)) -> B::Elem {
        let b = &self.base;
        b.sub(&b.mul(&a.0, &a.0), &b.mul_int(&b.mul(&a.1, &a.1), 3))
    }
}

impl<B: Ring> Ring for QuadExt<B> {
    type Elem = (B::Elem, B::Elem);

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        (self.base.one(), self.base.zero())
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        (self.base.from_int(n), self.base.zero())
    }
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem> {
        Ok((self.base.from_rational(q)?, self.base.zero()))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.sub(&a.0, &b.0), self.base.sub(&a.1, &b.1))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let r = &self.base;
        let c0 = r.add(&r.mul(&a.0, &b.0), &r.mul_int(&r.mul(&a.1, &b.1), 3));
        let c1 = r.add(&r.mul(&a.0, &b.1), &r.mul(&a.1, &b.0));
        (c0, c1)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.0) && self.base.is_zero(&a.1)
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.base.is_unit(&self.norm(a))
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let n_inv = self.base.inv(&self.norm(a))?;
        let r = &self.base;
        Some((r.mul(&a.0, &n_inv), r.neg(&r.mul(&a.1, &n_inv))))
    }
    fn format(&self, a: &Self::Elem) -> String {
        format!("{} + {}*u", self.base.format(&a.0), self.base.format(&a.1))
    }
}

impl<B: Padic> QuadExt<B> {
    /// `sigma(c0 + c1 u) = c0 + eps_p c1 u` on constants.
    pub fn frobenius_const(&self, a: &(B::Elem, B::Elem)) -> Result<(B::Elem, B::Elem)> {
        let eps = self.base.ctx().eps()?;
        let c1 = self.base.frobenius(&a.1);
        let c1 = if eps < 0 { self.base.neg(&c1) } else { c1 };
        Ok((self.base.frobenius(&a.0), c1))
    }
}

impl<B: Padic> Padic for QuadExt<B> {
    fn ctx(&self) -> &ModulusContext {
        self.base.ctx()
    }
    fn at_precision(&self, s: u32) -> Result<Self> {
        Ok(QuadExt::new(self.base.at_precision(s)?))
    }
    fn project(&self, a: &Self::Elem, target: &Self) -> Self::Elem {
        (self.base.project(&a.0, &target.base), self.base.project(&a.1, &target.base))
    }
    fn divide_by_p(&self, a: &Self::Elem, target: &Self) -> Option<Self::Elem> {
        Some((self.base.divide_by_p(&a.0, &target.base)?, self.base.divide_by_p(&a.1, &target.base)?))
    }
    fn divisible_by_p_pow(&self, a: &Self::Elem, k: u32) -> bool {
        self.base.divisible_by_p_pow(&a.0, k) && self.base.divisible_by_p_pow(&a.1, k)
    }
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.frobenius_const(a).map_err(|e: Error| e.to_string()).expect("Frobenius on the sqrt(3) extension needs p > 3")
    }
}
