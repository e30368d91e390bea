use super::{Exponent, LaurentPoly, NewtonPolytope};
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::series::{SeriesMatrix, SeriesRing, TruncatedSeries};

/// `matrix[i][j]` is the coefficient of `x^{p u_i - u_j}` in `f^{p-1}`, where `u_i` runs over
/// `points`, the interior lattice points of the Newton polytope in sorted order.
#[derive(Debug, Clone)]
pub struct HasseWitt<R: Ring> {
    pub points: Vec<Exponent>,
    pub matrix: Vec<Vec<R::Elem>>,
}

pub fn hasse_witt<R: Ring>(f: &LaurentPoly<R>, p: u64) -> Result<HasseWitt<R>> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::param(format!("Hasse-Witt matrix needs an odd prime, got {p}")));
    }
    let points = NewtonPolytope::of(f)?.interior;
    if points.is_empty() {
        return Err(Error::Degenerate("Newton polytope has no interior lattice points".into()));
    }
    let power = f.pow(p - 1);
    let p = p as i64;
    let matrix = points
        .iter()
        .map(|u| {
            points
                .iter()
                .map(|v| {
                    let e: Exponent = u.iter().zip(v).map(|(a, b)| p * a - b).collect();
                    power.coeff(&e)
                })
                .collect()
        })
        .collect();
    Ok(HasseWitt { points, matrix })
}

impl<B: Ring> HasseWitt<SeriesRing<B>> {
    /// The matrix as series in `t` when `h = 2`.
    pub fn to_series_matrix(&self, ring: &SeriesRing<B>) -> Result<SeriesMatrix<B>> {
        if self.points.len() != 2 {
            return Err(Error::param(format!("expected h = 2, got h = {}", self.points.len())));
        }
        let s = |i: usize, j: usize| TruncatedSeries::new(ring.base().clone(), self.matrix[i][j].clone());
        SeriesMatrix::from_rows(s(0, 0), s(0, 1), s(1, 0), s(1, 1))
    }
}

/// `x^3 - x - c t` in one variable over the series ring.
pub fn cubic_family<B: Ring>(ring: &SeriesRing<B>, c: B::Elem) -> LaurentPoly<SeriesRing<B>> {
    let b = ring.base();
    let terms = [(vec![3], ring.constant(b.one())), (vec![1], ring.constant(b.from_int(-1))), (vec![0], ring.monomial(b.neg(&c), 1))];
    LaurentPoly::from_terms(ring.clone(), 1, terms).expect("one variable")
}
