use std::collections::BTreeMap;

use super::linalg::solve_local;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// `sum_l l! Q_l(x) dx / g^{l+1}` for a monic `g` kept alongside.
#[derive(Clone, PartialEq)]
pub struct DiffForm<R: Ring> {
    g: Poly<R>,
    levels: BTreeMap<usize, Poly<R>>,
}

impl<R: Ring> std::fmt::Debug for DiffForm<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.levels.iter()).finish()
    }
}

impl<R: Ring> DiffForm<R> {
    pub fn zero(g: Poly<R>) -> Self {
        DiffForm { g, levels: BTreeMap::new() }
    }

    /// `l! q dx / g^{l+1}`.
    pub fn level_form(g: Poly<R>, l: usize, q: Poly<R>) -> Self {
        let mut f = Self::zero(g);
        f.add_level(l, &q);
        f
    }

    /// `x^{u-1} dx / g`.
    pub fn basis(g: Poly<R>, u: usize) -> Self {
        let ring = g.ring().clone();
        let one = ring.one();
        Self::level_form(g, 0, Poly::monomial(ring, one, u - 1))
    }

    pub fn denominator(&self) -> &Poly<R> {
        &self.g
    }

    pub fn ring(&self) -> &R {
        self.g.ring()
    }

    pub fn levels(&self) -> &BTreeMap<usize, Poly<R>> {
        &self.levels
    }

    pub fn level(&self, l: usize) -> Poly<R> {
        self.levels.get(&l).cloned().unwrap_or_else(|| Poly::zero(self.ring().clone()))
    }

    pub fn add_level(&mut self, l: usize, q: &Poly<R>) {
        let sum = self.level(l).add(q);
        if sum.is_zero() {
            self.levels.remove(&l);
        } else {
            self.levels.insert(l, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, q) in &other.levels {
            out.add_level(*l, q);
        }
        out
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.g.clone());
        for (l, q) in &self.levels {
            out.add_level(*l, &q.scale(c));
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.g.degree().unwrap_or(0)
    }

    /// Every level satisfies `deg Q_l <= d(l+1) - 2`.
    pub fn check_window(&self) -> Result<()> {
        let d = self.degree();
        for (l, q) in &self.levels {
            if let Some(deg) = q.degree() {
                if deg + 2 > d * (l + 1) {
                    return Err(Error::MalformedForm(format!("level {l} numerator has degree {deg} > {}", d * (l + 1) - 2)));
                }
            }
        }
        Ok(())
    }

    /// The exact form `d(l! a / g^{l+1})`, which places `a'` at level `l` and `-a g'` at
    /// level `l + 1`. Requires `deg a <= d(l+1) - 1`.
    pub fn exact(g: Poly<R>, l: usize, a: &Poly<R>) -> Self {
        let gp = g.derivative();
        let mut f = Self::zero(g);
        f.add_level(l, &a.derivative());
        f.add_level(l + 1, &a.mul(&gp).neg());
        f
    }
}

/// `(A, B)` with `q = A g' + B g`, `deg A <= d - 1`, `deg B <= max(d - 2, deg q - d)`.
pub fn bezout_solve<R: Ring>(q: &Poly<R>, g: &Poly<R>) -> Result<(Poly<R>, Poly<R>)> {
    let ring = g.ring().clone();
    let d = g.degree().filter(|&d| d >= 2).ok_or_else(|| Error::param("bezout_solve needs deg g >= 2"))?;
    let dq = q.degree().unwrap_or(0);
    let nb = (d - 2).max(dq.saturating_sub(d)) + 1;
    let n = d + nb;
    debug_assert_eq!(n, dq.max(2 * d - 2) + 1);
    let gp = g.derivative();
    let mut m = vec![vec![ring.zero(); n]; n];
    for j in 0..d {
        for (i, c) in gp.coeffs().iter().enumerate() {
            m[i + j][j] = c.clone();
        }
    }
    for j in 0..nb {
        for (i, c) in g.coeffs().iter().enumerate() {
            m[i + j][d + j] = c.clone();
        }
    }
    let rhs: Vec<R::Elem> = (0..n).map(|i| q.coeff(i)).collect();
    let v = solve_local(&ring, m, rhs).map_err(|e| match e {
        Error::NotInvertible(_) => Error::DiscNotUnit,
        e => e,
    })?;
    let a = Poly::new(ring.clone(), v[..d].to_vec());
    let b = Poly::new(ring, v[d..].to_vec());
    Ok((a, b))
}

/// Reduces `omega` modulo exact forms to `Q dx/g` with `deg Q <= d - 2`, lowering the top
/// level `l` through `l! Q / g^{l+1} = (l-1)! (A' + l B) / g^l` plus an exact form.
pub fn griffiths_reduce<R: Ring>(omega: &DiffForm<R>) -> Result<Poly<R>> {
    omega.check_window()?;
    let ring = omega.ring().clone();
    let g = omega.denominator();
    let mut form = omega.clone();
    while let Some((&l, _)) = form.levels.iter().next_back() {
        if l == 0 {
            break;
        }
        let q = form.levels.remove(&l).expect("present");
        let (a, b) = bezout_solve(&q, g)?;
        let lowered = a.derivative().add(&b.scale(&ring.from_int(l as i64)));
        form.add_level(l - 1, &lowered);
    }
    Ok(form.level(0))
}
