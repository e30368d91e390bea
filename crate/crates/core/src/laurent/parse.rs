use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Exponent, LaurentPoly};
use crate::error::{Error, Result};
use crate::ring::Rationals;

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        (self.i > start).then(|| String::from_utf8_lossy(&self.s[start..self.i]).into_owned())
    }

    fn err(&self, what: &str) -> Error {
        Error::Usage(format!("cannot parse Laurent polynomial at byte {}: {what}", self.i))
    }

    fn signed_int(&mut self) -> Result<i64> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let d = self.digits().ok_or_else(|| self.err("expected an exponent"))?;
        let v: i64 = d.parse().map_err(|_| self.err("exponent out of range"))?;
        if paren && !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        Ok(if neg { -v } else { v })
    }
}

/// Parses `c * x1^a1 x2^a2 + ...`. Coefficients are integers or fractions `n/d`, `x` alone
/// names `x1`, exponents may be negative (`x1^-1` or `x1^(-1)`), and `-` may join terms.
/// The dimension is the largest variable index unless given.
pub fn parse_laurent(text: &str, dim: Option<usize>) -> Result<LaurentPoly<Rationals>> {
    let mut cur = Cursor { s: text.as_bytes(), i: 0 };
    let mut terms: Vec<(Vec<(usize, i64)>, BigRational)> = Vec::new();
    let mut sign: i64 = 1;
    loop {
        if cur.eat(b'-') {
            sign = -sign;
        }
        let mut coeff = BigRational::one();
        let digits = cur.digits();
        let had_coeff = digits.is_some();
        if let Some(n) = digits {
            let n: BigInt = n.parse().expect("digits");
            let d: BigInt = if cur.eat(b'/') {
                cur.digits().ok_or_else(|| cur.err("expected a denominator"))?.parse().expect("digits")
            } else {
                BigInt::one()
            };
            if d.is_zero() {
                return Err(cur.err("zero denominator"));
            }
            coeff = BigRational::new(n, d);
            cur.eat(b'*');
        }
        let mut mono = Vec::new();
        while cur.peek() == Some(b'x') {
            cur.i += 1;
            let idx = match cur.digits() {
                Some(d) => d.parse::<usize>().map_err(|_| cur.err("bad variable index"))?,
                None => 1,
            };
            if idx == 0 {
                return Err(cur.err("variables are numbered from 1"));
            }
            let e = if cur.eat(b'^') { cur.signed_int()? } else { 1 };
            mono.push((idx, e));
            cur.eat(b'*');
        }
        if mono.is_empty() && !had_coeff {
            return Err(cur.err("empty term"));
        }
        terms.push((mono, coeff * BigRational::from_integer(sign.into())));
        match cur.peek() {
            None => break,
            Some(b'+') => sign = 1,
            Some(b'-') => sign = -1,
            Some(_) => return Err(cur.err("expected '+' or '-'")),
        }
        cur.i += 1;
    }
    let max_idx = terms.iter().flat_map(|(m, _)| m.iter().map(|(i, _)| *i)).max().unwrap_or(1);
    let dim = match dim {
        Some(d) if d < max_idx => return Err(Error::Usage(format!("variable x{max_idx} exceeds dimension {d}"))),
        Some(d) => d,
        None => max_idx,
    };
    let terms = terms.into_iter().map(|(mono, c)| {
        let mut e: Exponent = vec![0; dim];
        for (i, a) in mono {
            e[i - 1] += a;
        }
        (e, c)
    });
    LaurentPoly::from_terms(Rationals, dim, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn parses_terms_and_exponents() {
        let g = parse_laurent("1/3 * x1 + x2 - 2 x1^-1 x2^(-1) + 5", None).unwrap();
        assert_eq!(g.dim(), 2);
        assert_eq!(g.coeff(&[1, 0]), rat(1, 3));
        assert_eq!(g.coeff(&[0, 1]), rat(1, 1));
        assert_eq!(g.coeff(&[-1, -1]), rat(-2, 1));
        assert_eq!(g.constant_term(), rat(5, 1));
    }

    #[test]
    fn format_roundtrips_through_parser() {
        let g = parse_laurent("x^2 + 3/4 * x^-1", None).unwrap();
        assert_eq!(parse_laurent(&g.format(), None).unwrap(), g);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_laurent("x1 + + x2", None).is_err());
        assert!(parse_laurent("x1 ? x2", None).is_err());
        assert!(parse_laurent("x3", Some(2)).is_err());
        assert!(parse_laurent("1/0", None).is_err());
    }
}
