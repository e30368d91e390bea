use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus handled with single-word residues.
pub const WORD_MODULUS_LIMIT: u64 = 1 << 63;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol of 3 modulo `p`, by Euler's criterion.
pub fn legendre_eps(p: u64) -> Result<i8> {
    if p == 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::param(format!("legendre_eps needs an odd prime other than 3, got {p}")));
    }
    let r = pow_mod(3, (p - 1) / 2, p);
    Ok(if r == 1 { 1 } else { -1 })
}

/// The precision data (p, s) shared by every mod-p^s computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModulusContext {
    p: u64,
    s: u32,
    #[serde(serialize_with = "ser_biguint")]
    modulus: BigUint,
    eps: Option<i8>,
}

fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl ModulusContext {
    pub fn new(p: u64, s: u32) -> Result<Self> {
        if p % 2 == 0 || !is_prime(p) {
            return Err(Error::param(format!("p = {p} is not an odd prime")));
        }
        if s == 0 {
            return Err(Error::param("precision exponent s must be at least 1"));
        }
        let eps = if p == 3 { None } else { Some(legendre_eps(p)?) };
        Ok(ModulusContext { p, s, modulus: BigUint::from(p).pow(s), eps })
    }

    /// Like [`ModulusContext::new`], additionally rejecting primes that divide one of the
    /// declared parameter denominators.
    pub fn with_denominators(p: u64, s: u32, denominators: &[u64]) -> Result<Self> {
        let ctx = Self::new(p, s)?;
        if let Some(d) = denominators.iter().find(|&&d| d % p == 0) {
            return Err(Error::param(format!("p = {p} divides the parameter denominator {d}")));
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// `Some(p^s)` when the modulus passes the single-word guard.
    pub fn word_modulus(&self) -> Option<u64> {
        self.modulus.to_u64().filter(|&m| m < WORD_MODULUS_LIMIT)
    }

    pub fn eps(&self) -> Result<i8> {
        self.eps.ok_or_else(|| Error::param("epsilon_p is undefined for p = 3"))
    }

    pub fn at_precision(&self, s: u32) -> Result<Self> {
        Self::new(self.p, s)
    }

    pub(crate) fn p_pow(&self, k: u32) -> BigUint {
        if k == 0 {
            BigUint::one()
        } else {
            BigUint::from(self.p).pow(k)
        }
    }
}

/// p-adic valuation of a nonzero integer.
pub fn ord_p(n: i64, p: u64) -> u32 {
    assert!(n != 0, "ord_p(0) is infinite");
    let mut n = n.unsigned_abs();
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squares_mod(p: u64) -> Vec<u64> {
        (1..p).map(|x| x * x % p).collect()
    }

    #[test]
    fn eps_matches_enumeration() {
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 97] {
            let brute = if squares_mod(p).contains(&3) { 1 } else { -1 };
            let by_residue = if p % 12 == 1 || p % 12 == 11 { 1 } else { -1 };
            assert_eq!(legendre_eps(p).unwrap(), brute, "p = {p}");
            assert_eq!(brute, by_residue, "p = {p}");
        }
        assert_eq!(legendre_eps(5).unwrap(), -1);
        assert_eq!(legendre_eps(7).unwrap(), -1);
        assert_eq!(legendre_eps(11).unwrap(), 1);
        assert_eq!(legendre_eps(13).unwrap(), 1);
    }

    #[test]
    fn eps_rejects_bad_primes() {
        assert!(legendre_eps(3).is_err());
        assert!(legendre_eps(9).is_err());
        assert!(legendre_eps(2).is_err());
        assert!(legendre_eps(1).is_err());
    }

    #[test]
    fn context_guards() {
        let ctx = ModulusContext::new(5, 2).unwrap();
        assert_eq!(ctx.word_modulus(), Some(25));
        assert_eq!(ctx.eps().unwrap(), -1);
        assert!(ModulusContext::new(4, 1).is_err());
        assert!(ModulusContext::new(5, 0).is_err());
        assert!(ModulusContext::new(3, 1).unwrap().eps().is_err());
        // 97^10 > 2^63
        assert_eq!(ModulusContext::new(97, 10).unwrap().word_modulus(), None);
        assert!(ModulusContext::with_denominators(5, 1, &[2, 3]).is_ok());
        assert!(ModulusContext::with_denominators(5, 1, &[2, 10]).is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(ord_p(25, 5), 2);
        assert_eq!(ord_p(-50, 5), 2);
        assert_eq!(ord_p(7, 5), 0);
    }
}
