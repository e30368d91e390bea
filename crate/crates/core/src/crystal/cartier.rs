use super::form::{griffiths_reduce, DiffForm};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::hypergeometric::factorial;
use crate::ring::{rat, Padic, QuadExt, Ring, Zmod};
use crate::series::{SeriesMatrix, SeriesRing, TruncatedSeries};
use num_bigint::BigInt;
use num_rational::BigRational;

pub type SeriesPoly<B> = Poly<SeriesRing<B>>;

/// `x^3 - x - c t` over `B[t]/(t^cap)`.
pub fn cubic<B: Ring>(ring: &SeriesRing<B>, c: &B::Elem) -> SeriesPoly<B> {
    let b = ring.base();
    Poly::new(ring.clone(), vec![ring.monomial(b.neg(c), 1), ring.from_int(-1), ring.zero(), ring.one()])
}

/// `f^p = F_a + p G_a` with `F_a = f^sigma(a + (x - a)^p)`, both reduced to working precision.
#[derive(Debug, Clone)]
pub struct FrobeniusSplit<B: Ring> {
    pub lift: i64,
    pub f_lift: SeriesPoly<B>,
    pub g_lift: SeriesPoly<B>,
}

/// Splits `f^p`, where `f_hi` is given at one digit more precision than `target`.
pub fn frobenius_split<B: Padic>(f_hi: &SeriesPoly<B>, lift: i64, target: &SeriesRing<B>) -> Result<FrobeniusSplit<B>> {
    if ![-1, 0, 1].contains(&lift) {
        return Err(Error::param(format!("lift point must be 0 or +-1, got {lift}")));
    }
    let hi = f_hi.ring().clone();
    let p = hi.ctx().p();
    if p <= 3 {
        return Err(Error::param(format!("Frobenius split needs p > 3, got {p}")));
    }
    let inner = Poly::x(hi.clone()).shift(-lift).pow(p).add(&Poly::constant(hi.clone(), hi.from_int(lift)));
    let f_lift = f_hi.frobenius().compose(&inner);
    let diff = f_hi.pow(p).sub(&f_lift);
    let g: Option<Vec<_>> = diff.coeffs().iter().map(|c| hi.divide_by_p(c, target)).collect();
    let g = g.ok_or_else(|| Error::Internal("f^p - F_a is not divisible by p".into()))?;
    Ok(FrobeniusSplit { lift, f_lift: f_lift.project(target), g_lift: Poly::new(target.clone(), g) })
}

/// With `P = sum c_i (x - a)^i`, returns `sum c_{pi} (x - a)^i`.
pub fn cartier_extract<R: Ring>(poly: &Poly<R>, lift: i64, p: u64) -> Poly<R> {
    let local = poly.shift(lift);
    let p = p as usize;
    let kept: Vec<R::Elem> = local.coeffs().iter().step_by(p).cloned().collect();
    Poly::new(poly.ring().clone(), kept).shift(-lift)
}

fn check_precision(ctx_p: u64, s: u32) -> Result<()> {
    if u64::from(s) >= ctx_p {
        return Err(Error::UnsupportedPrecision { p: ctx_p, s });
    }
    Ok(())
}

/// The lifted Cartier operator centred at `split.lift` applied to `x^{u-1} dx / f`, as a form
/// over `f^sigma` with levels `k < s`.
///
/// Uses `1/f = f^{p-1} sum_k (-p)^k G^k / F^{k+1}`; `F` is a function of `(x - a)^p`, so the
/// operator passes through its powers and level `k` carries `(-p)^k / k!` times the extracted
/// numerator. Terms with `k >= s` vanish mod `p^s`.
pub fn cartier_form<B: Padic>(f: &SeriesPoly<B>, split: &FrobeniusSplit<B>, u: usize) -> Result<DiffForm<SeriesRing<B>>> {
    let ring = f.ring().clone();
    let (p, s) = (ring.ctx().p(), ring.ctx().s());
    check_precision(p, s)?;
    if !(1..=2).contains(&u) {
        return Err(Error::param(format!("basis index u must be 1 or 2, got {u}")));
    }
    let a = split.lift;
    let head = Poly::x(ring.clone()).shift(-a).mul(&Poly::monomial(ring.clone(), ring.one(), u - 1)).mul(&f.pow(p - 1));
    let mut form = DiffForm::zero(f.frobenius());
    let mut g_pow = Poly::constant(ring.clone(), ring.one());
    for k in 0..s as u64 {
        let extracted = cartier_extract(&head.mul(&g_pow), a, p);
        let numerator = extracted.div_linear(a).ok_or_else(|| Error::Internal("extracted numerator not divisible by x - a".into()))?;
        let weight = BigRational::new(BigInt::from(-(p as i64)).pow(k as u32), factorial(k));
        form.add_level(k as usize, &numerator.scale(&ring.from_rational(&weight)?));
        g_pow = g_pow.mul(&split.g_lift);
    }
    Ok(form)
}

/// Rows `u = 1, 2` hold the coordinates of the reduced `Cartier(x^{u-1} dx/f)` on
/// `(dx/f^sigma, x dx/f^sigma)`, for `f = x^3 - x - c t` with `c = coeff(ring)`.
pub fn cartier_matrix<B: Padic>(base: &B, cap: usize, lift: i64, coeff: impl Fn(&B) -> Result<B::Elem>) -> Result<SeriesMatrix<B>> {
    let (p, s) = (base.ctx().p(), base.ctx().s());
    check_precision(p, s)?;
    let hi = base.at_precision(s + 1)?;
    let ring_hi = SeriesRing::new(hi.clone(), cap);
    let ring = SeriesRing::new(base.clone(), cap);
    let f_hi = cubic(&ring_hi, &coeff(&hi)?);
    let f = f_hi.project(&ring);
    let split = frobenius_split(&f_hi, lift, &ring)?;
    let mut rows = Vec::with_capacity(2);
    for u in 1..=2 {
        let reduced = griffiths_reduce(&cartier_form(&f, &split, u)?)?;
        rows.push([0, 1].map(|i| TruncatedSeries::new(base.clone(), reduced.coeff(i))));
    }
    let [[a, b], [c, d]] = [rows[0].clone(), rows[1].clone()];
    SeriesMatrix::from_rows(a, b, c, d)
}

/// `Lambda_p` for `x^3 - x - t` over `Z/p^s`.
pub fn lambda_untwisted(p: u64, s: u32, cap: usize, lift: i64) -> Result<SeriesMatrix<Zmod>> {
    cartier_matrix(&Zmod::with_ps(p, s)?, cap, lift, |r| Ok(r.one()))
}

/// `x^3 - x - (2u/9) t`, `u^2 = 3`, with the Cartier matrix taken on `(dx/f, x dx/f)`.
pub fn cartier_matrix_twisted_raw(p: u64, s: u32, cap: usize, lift: i64) -> Result<SeriesMatrix<QuadExt<Zmod>>> {
    let base = QuadExt::new(Zmod::with_ps(p, s)?);
    base.ctx().eps()?;
    cartier_matrix(&base, cap, lift, |q: &QuadExt<Zmod>| Ok(q.mul(&q.u(), &q.from_rational(&rat(2, 9))?)))
}

/// `Lambda_p` of the twisted family on the basis `b = (dx/f, u x dx/f)`, defined by
/// `Cartier(b) = Lambda b^sigma` with `b^sigma = (dx/f^sigma, eps u x dx/f^sigma)`.
/// From raw rows `(c0', c1')`, `(c0, c1)` this is `[[c0', eps u c1'/3], [u c0, eps c1]]`.
pub fn lambda_twisted(p: u64, s: u32, cap: usize, lift: i64) -> Result<SeriesMatrix<QuadExt<Zmod>>> {
    let raw = cartier_matrix_twisted_raw(p, s, cap, lift)?;
    let q = raw.base().clone();
    let eps = q.from_int(i64::from(q.ctx().eps()?));
    let u = q.u();
    let eps_u_third = q.mul(&q.mul(&eps, &u), &q.from_rational(&rat(1, 3))?);
    let e = raw.entries();
    SeriesMatrix::from_rows(e[0][0].clone(), e[0][1].scale(&eps_u_third), e[1][0].scale(&u), e[1][1].scale(&eps))
}
