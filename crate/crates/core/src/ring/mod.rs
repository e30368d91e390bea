//! Coefficient rings: residues modulo p^s (word-sized and arbitrary precision), the
//! rank-2 extension `Z/p^s[u]/(u^2 - 3)`, and exact rationals.
//!
//! Rings are passed as explicit context values; elements are plain data. Every ring is
//! immutable and `Send + Sync`.

mod context;
mod quad;
mod rational;
mod zmod;

use std::fmt::Debug;

use num_rational::BigRational;

pub use context::{is_prime, legendre_eps, ord_p, ModulusContext, WORD_MODULUS_LIMIT};
pub use quad::QuadExt;
pub use rational::{rat, Rationals};
pub use zmod::{reduce_rational, BigZmod, Residue, Zmod};

use crate::error::Result;

pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Decimal rendering used by the series dump format.
    fn format(&self, a: &Self::Elem) -> String;

    fn mul_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(a, &self.from_int(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }
}

/// Rings that are finite-precision shadows of a p-adic ring: residues mod p^s and
/// everything built on top of them.
pub trait Padic: Ring {
    fn ctx(&self) -> &ModulusContext;

    /// The same ring shape at precision p^s.
    fn at_precision(&self, s: u32) -> Result<Self>;

    /// Reduction to a ring of the same shape and lower (or equal) precision.
    fn project(&self, a: &Self::Elem, target: &Self) -> Self::Elem;

    /// `a / p` in `target` (precision one lower), if `a` is divisible by p.
    fn divide_by_p(&self, a: &Self::Elem, target: &Self) -> Option<Self::Elem>;

    fn divisible_by_p_pow(&self, a: &Self::Elem, k: u32) -> bool;

    /// The Frobenius lift: identity on Z/p^s, `u -> eps_p u`, `t -> t^p`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem;
}
