use crate::ring::{Padic, Ring};

/// Dense polynomial in `x` over a ring; `coeffs[i]` is the coefficient of `x^i` and the
/// leading stored coefficient is nonzero (the zero polynomial is empty).
#[derive(Clone, PartialEq)]
pub struct Poly<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> std::fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().enumerate().map(|(i, c)| format!("[{}]x^{i}", self.ring.format(c))).collect();
        write!(f, "Poly({})", terms.join(" + "))
    }
}

impl<R: Ring> Poly<R> {
    pub fn new(ring: R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly { ring, coeffs }
    }

    pub fn zero(ring: R) -> Self {
        Poly { ring, coeffs: Vec::new() }
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::new(ring, vec![c])
    }

    /// `c x^k`.
    pub fn monomial(ring: R, c: R::Elem, k: usize) -> Self {
        let mut v = vec![ring.zero(); k + 1];
        v[k] = c;
        Self::new(ring, v)
    }

    pub fn x(ring: R) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, 1)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| self.ring.add(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(self.ring.clone(), v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| self.ring.sub(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(self.ring.clone(), v)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.ring.clone(), self.coeffs.iter().map(|c| self.ring.neg(c)).collect())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Self::new(self.ring.clone(), self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring.clone());
        }
        let r = &self.ring;
        let mut out = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !r.is_zero(b) {
                    out[i + j] = r.add(&out[i + j], &r.mul(a, b));
                }
            }
        }
        Self::new(r.clone(), out)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::constant(self.ring.clone(), self.ring.one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = (1..self.coeffs.len()).map(|i| self.ring.mul_int(&self.coeffs[i], i as i64)).collect();
        Self::new(self.ring.clone(), v)
    }

    /// `self(inner(x))` by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero(self.ring.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(self.ring.clone(), c.clone()));
        }
        acc
    }

    /// `self(x + a)`.
    pub fn shift(&self, a: i64) -> Self {
        let lin = Self::new(self.ring.clone(), vec![self.ring.from_int(a), self.ring.one()]);
        self.compose(&lin)
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.ring.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(self.ring.clone(), v)
    }

    /// Exact division by `x - a`; `None` if the remainder is nonzero.
    pub fn div_linear(&self, a: i64) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let r = &self.ring;
        let a = r.from_int(a);
        let n = self.coeffs.len();
        let mut q = vec![r.zero(); n - 1];
        let mut carry = r.zero();
        for i in (0..n).rev() {
            let v = r.add(&self.coeffs[i], &r.mul(&carry, &a));
            if i == 0 {
                return r.is_zero(&v).then(|| Self::new(r.clone(), q));
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    pub fn map<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S> {
        let v = self.coeffs.iter().map(f).collect();
        Poly::new(target, v)
    }
}

impl<R: Padic> Poly<R> {
    /// Coefficientwise Frobenius lift.
    pub fn frobenius(&self) -> Self {
        self.map(self.ring.clone(), |c| self.ring.frobenius(c))
    }

    pub fn project(&self, target: &R) -> Self {
        self.map(target.clone(), |c| self.ring.project(c, target))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Zmod;

    fn z(v: &[i64]) -> Poly<Zmod> {
        let r = Zmod::with_ps(7, 2).unwrap();
        Poly::new(r.clone(), v.iter().map(|&c| r.from_int(c)).collect())
    }

    #[test]
    fn arithmetic() {
        assert_eq!(z(&[1, 1]).mul(&z(&[-1, 1])), z(&[-1, 0, 1]));
        assert_eq!(z(&[1, 1]).pow(3), z(&[1, 3, 3, 1]));
        assert_eq!(z(&[0, 0, 0, 1]).derivative(), z(&[0, 0, 3]));
        assert_eq!(z(&[0, 1]).sub(&z(&[0, 1])), z(&[]));
        assert_eq!(z(&[5, 0, 0]).degree(), Some(0));
    }

    #[test]
    fn shift_and_division() {
        let p = z(&[0, 0, 1]);
        assert_eq!(p.shift(1), z(&[1, 2, 1]));
        assert_eq!(p.shift(1).shift(-1), p);
        assert_eq!(z(&[-1, 0, 1]).div_linear(1), Some(z(&[1, 1])));
        assert_eq!(z(&[1, 0, 1]).div_linear(1), None);
        assert_eq!(z(&[1, 2]).compose(&z(&[0, 0, 1])), z(&[1, 0, 2]));
    }
}
