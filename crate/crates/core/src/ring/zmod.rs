use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{ModulusContext, Padic, Ring};
use crate::error::{Error, Result};

/// A residue modulo p^s, always stored fully reduced in `[0, p^s)`.
pub type Residue = u64;

/// `numerator * denominator^-1 mod p^s`.
pub fn reduce_rational(q: &BigRational, ctx: &ModulusContext) -> Result<BigUint> {
    let m = BigInt::from_biguint(Sign::Plus, ctx.modulus().clone());
    if (q.denom() % BigInt::from(ctx.p())).is_zero() {
        return Err(Error::NotPIntegral { rational: q.clone(), p: ctx.p() });
    }
    let num = q.numer().mod_floor(&m);
    let den = q.denom().mod_floor(&m);
    let ext = den.extended_gcd(&m);
    debug_assert!(ext.gcd.is_one());
    let inv = ext.x.mod_floor(&m);
    Ok((num * inv).mod_floor(&m).to_biguint().expect("non-negative after mod_floor"))
}

fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    let ext = (a as i128).extended_gcd(&(m as i128));
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(m as i128) as u64)
}

/// Integers modulo p^s with p^s below the single-word guard.
#[derive(Debug, Clone, PartialEq)]
pub struct Zmod {
    ctx: Arc<ModulusContext>,
    m: u64,
}

impl Zmod {
    pub fn new(ctx: ModulusContext) -> Result<Self> {
        let m = ctx
            .word_modulus()
            .ok_or_else(|| Error::param(format!("p^s = {} exceeds the single-word guard; use BigZmod", ctx.modulus())))?;
        Ok(Zmod { ctx: Arc::new(ctx), m })
    }

    pub fn with_ps(p: u64, s: u32) -> Result<Self> {
        Self::new(ModulusContext::new(p, s)?)
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    #[inline]
    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.m as i128) as u64
    }
}

impl Ring for Zmod {
    type Elem = Residue;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.m
    }
    fn from_int(&self, n: i64) -> u64 {
        self.reduce_i128(n as i128)
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        reduce_rational(q, &self.ctx).map(|v| v.to_u64().expect("residue below word modulus"))
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.m - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.m as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u64) -> bool {
        a % self.ctx.p() != 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        inv_mod_u64(*a, self.m)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Padic for Zmod {
    fn ctx(&self) -> &ModulusContext {
        &self.ctx
    }
    fn at_precision(&self, s: u32) -> Result<Self> {
        Zmod::new(self.ctx.at_precision(s)?)
    }
    fn project(&self, a: &u64, target: &Self) -> u64 {
        debug_assert!(self.m % target.m == 0);
        a % target.m
    }
    fn divide_by_p(&self, a: &u64, target: &Self) -> Option<u64> {
        let p = self.ctx.p();
        (a % p == 0).then(|| (a / p) % target.m)
    }
    fn divisible_by_p_pow(&self, a: &u64, k: u32) -> bool {
        if k >= self.ctx.s() {
            return *a == 0;
        }
        a % self.ctx.p().pow(k) == 0
    }
    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }
}

/// Integers modulo p^s backed by arbitrary-precision integers, for moduli beyond the
/// single-word guard.
#[derive(Debug, Clone, PartialEq)]
pub struct BigZmod {
    ctx: Arc<ModulusContext>,
}

impl BigZmod {
    pub fn new(ctx: ModulusContext) -> Self {
        BigZmod { ctx: Arc::new(ctx) }
    }

    fn m(&self) -> &BigUint {
        self.ctx.modulus()
    }
}

impl Ring for BigZmod {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one() % self.m()
    }
    fn from_int(&self, n: i64) -> BigUint {
        let m = BigInt::from_biguint(Sign::Plus, self.m().clone());
        BigInt::from(n).mod_floor(&m).to_biguint().expect("non-negative")
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigUint> {
        reduce_rational(q, &self.ctx)
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a + b) % self.m()
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + self.m() - b
        }
    }
    fn neg(&self, a: &BigUint) -> BigUint {
        if a.is_zero() {
            BigUint::zero()
        } else {
            self.m() - a
        }
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % self.m()
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigUint) -> bool {
        !(a % BigUint::from(self.ctx.p())).is_zero()
    }
    fn inv(&self, a: &BigUint) -> Option<BigUint> {
        if !self.is_unit(a) {
            return None;
        }
        let m = BigInt::from_biguint(Sign::Plus, self.m().clone());
        let ext = BigInt::from_biguint(Sign::Plus, a.clone()).extended_gcd(&m);
        ext.x.mod_floor(&m).to_biguint()
    }
    fn format(&self, a: &BigUint) -> String {
        a.to_string()
    }
}

impl Padic for BigZmod {
    fn ctx(&self) -> &ModulusContext {
        &self.ctx
    }
    fn at_precision(&self, s: u32) -> Result<Self> {
        Ok(BigZmod::new(self.ctx.at_precision(s)?))
    }
    fn project(&self, a: &BigUint, target: &Self) -> BigUint {
        a % target.m()
    }
    fn divide_by_p(&self, a: &BigUint, target: &Self) -> Option<BigUint> {
        let p = BigUint::from(self.ctx.p());
        let (q, r) = a.div_rem(&p);
        r.is_zero().then(|| q % target.m())
    }
    fn divisible_by_p_pow(&self, a: &BigUint, k: u32) -> bool {
        if k >= self.ctx.s() {
            return a.is_zero();
        }
        (a % self.ctx.p_pow(k)).is_zero()
    }
    fn frobenius(&self, a: &BigUint) -> BigUint {
        a.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use proptest::prelude::*;

    #[test]
    fn reduce_examples() {
        let z25 = Zmod::with_ps(5, 2).unwrap();
        assert_eq!(z25.from_rational(&rat(0, 1)).unwrap(), 0);
        assert_eq!(z25.from_rational(&rat(1, 2)).unwrap(), 13);
        let z7 = Zmod::with_ps(7, 1).unwrap();
        assert_eq!(z7.from_rational(&rat(4, 9)).unwrap(), 2);
        assert_eq!(z7.from_rational(&rat(-1, 1)).unwrap(), 6);
    }

    #[test]
    fn reduce_rejects_p_in_denominator() {
        let z = Zmod::with_ps(5, 3).unwrap();
        match z.from_rational(&rat(3, 10)) {
            Err(Error::NotPIntegral { rational, p }) => {
                assert_eq!(rational, rat(3, 10));
                assert_eq!(p, 5);
            }
            other => panic!("expected NotPIntegral, got {other:?}"),
        }
    }

    #[test]
    fn word_guard() {
        let big = ModulusContext::new(97, 10).unwrap();
        assert!(Zmod::new(big.clone()).is_err());
        let r = BigZmod::new(big);
        let half = r.from_rational(&rat(1, 2)).unwrap();
        assert_eq!(r.mul(&half, &r.from_int(2)), r.one());
    }

    #[test]
    fn divide_by_p_roundtrip() {
        let hi = Zmod::with_ps(7, 3).unwrap();
        let lo = hi.at_precision(2).unwrap();
        assert_eq!(hi.divide_by_p(&(7 * 30), &lo), Some(30));
        assert_eq!(hi.divide_by_p(&5, &lo), None);
        assert!(hi.divisible_by_p_pow(&49, 2));
        assert!(!hi.divisible_by_p_pow(&7, 2));
    }

    proptest! {
        #[test]
        fn reduction_is_a_ring_homomorphism(a in -500i64..500, b in 1i64..60, c in -500i64..500, d in 1i64..60) {
            let z = Zmod::with_ps(7, 2).unwrap();
            prop_assume!(b % 7 != 0 && d % 7 != 0);
            let (x, y) = (rat(a, b), rat(c, d));
            let rx = z.from_rational(&x).unwrap();
            let ry = z.from_rational(&y).unwrap();
            prop_assert_eq!(z.from_rational(&(&x + &y)).unwrap(), z.add(&rx, &ry));
            prop_assert_eq!(z.from_rational(&(&x * &y)).unwrap(), z.mul(&rx, &ry));
            prop_assert_eq!(z.from_rational(&(&x - &y)).unwrap(), z.sub(&rx, &ry));
        }

        #[test]
        fn word_and_big_agree(a in 0u64..15625, b in 0u64..15625) {
            let ctx = ModulusContext::new(5, 6).unwrap();
            let w = Zmod::new(ctx.clone()).unwrap();
            let g = BigZmod::new(ctx);
            let (ba, bb) = (BigUint::from(a), BigUint::from(b));
            prop_assert_eq!(BigUint::from(w.mul(&a, &b)), g.mul(&ba, &bb));
            prop_assert_eq!(BigUint::from(w.sub(&a, &b)), g.sub(&ba, &bb));
            if let Some(i) = w.inv(&a) {
                prop_assert_eq!(w.mul(&a, &i), 1);
                prop_assert_eq!(g.inv(&ba), Some(BigUint::from(i)));
            }
        }
    }
}
