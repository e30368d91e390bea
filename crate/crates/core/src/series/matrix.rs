use serde::Serialize;

use super::TruncatedSeries;
use crate::error::{Error, Result};
use crate::ring::{Padic, Ring};

/// A 2x2 matrix of series sharing one coefficient ring and cap.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMatrix<B: Ring> {
    entries: [[TruncatedSeries<B>; 2]; 2],
}

/// Location of the first disagreement between two matrices (1-based entry indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixMismatch {
    pub row: usize,
    pub col: usize,
    pub degree: usize,
}

impl<B: Ring> SeriesMatrix<B> {
    pub fn new(entries: [[TruncatedSeries<B>; 2]; 2]) -> Result<Self> {
        let cap = entries[0][0].cap();
        let base = entries[0][0].base().clone();
        for e in entries.iter().flatten() {
            if e.cap() != cap || e.base() != &base {
                return Err(Error::param("matrix entries must share ring and cap"));
            }
        }
        Ok(SeriesMatrix { entries })
    }

    pub fn from_rows(a: TruncatedSeries<B>, b: TruncatedSeries<B>, c: TruncatedSeries<B>, d: TruncatedSeries<B>) -> Result<Self> {
        Self::new([[a, b], [c, d]])
    }

    pub fn diag(base: B, d0: B::Elem, d1: B::Elem, cap: usize) -> Self {
        let z = TruncatedSeries::zero(base.clone(), cap);
        let a = TruncatedSeries::monomial(base.clone(), d0, 0, cap);
        let d = TruncatedSeries::monomial(base, d1, 0, cap);
        SeriesMatrix { entries: [[a, z.clone()], [z, d]] }
    }

    pub fn identity(base: B, cap: usize) -> Self {
        let one = base.one();
        Self::diag(base, one.clone(), one, cap)
    }

    pub fn entry(&self, row: usize, col: usize) -> &TruncatedSeries<B> {
        &self.entries[row][col]
    }

    pub fn entries(&self) -> &[[TruncatedSeries<B>; 2]; 2] {
        &self.entries
    }

    pub fn cap(&self) -> usize {
        self.entries[0][0].cap()
    }

    pub fn base(&self) -> &B {
        self.entries[0][0].base()
    }

    pub fn map_entries(&self, f: impl Fn(&TruncatedSeries<B>) -> Result<TruncatedSeries<B>>) -> Result<Self> {
        let [[a, b], [c, d]] = &self.entries;
        Self::new([[f(a)?, f(b)?], [f(c)?, f(d)?]])
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let e = &self.entries;
        let o = &other.entries;
        let entry = |i: usize, j: usize| -> Result<TruncatedSeries<B>> { e[i][0].try_mul(&o[0][j])?.try_add(&e[i][1].try_mul(&o[1][j])?) };
        Self::new([[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]])
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let e = &self.entries;
        let o = &other.entries;
        Self::new([[e[0][0].try_add(&o[0][0])?, e[0][1].try_add(&o[0][1])?], [e[1][0].try_add(&o[1][0])?, e[1][1].try_add(&o[1][1])?]])
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let e = &self.entries;
        let o = &other.entries;
        Self::new([[e[0][0].try_sub(&o[0][0])?, e[0][1].try_sub(&o[0][1])?], [e[1][0].try_sub(&o[1][0])?, e[1][1].try_sub(&o[1][1])?]])
    }

    pub fn scalar_mul(&self, c: &B::Elem) -> Self {
        self.map_entries(|e| Ok(e.scale(c))).expect("shape preserved")
    }

    /// Left multiplication of every entry by a series.
    pub fn series_mul(&self, s: &TruncatedSeries<B>) -> Result<Self> {
        self.map_entries(|e| s.try_mul(e))
    }

    pub fn det(&self) -> TruncatedSeries<B> {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }

    /// Adjugate times the inverse determinant.
    pub fn invert(&self) -> Result<Self> {
        let det_inv = self.det().invert()?;
        let e = &self.entries;
        Self::new([[&e[1][1] * &det_inv, &(-&e[0][1]) * &det_inv], [&(-&e[1][0]) * &det_inv, &e[0][0] * &det_inv]])
    }

    /// Entrywise `d/dt`; the cap drops by one.
    pub fn derivative(&self) -> Result<Self> {
        self.map_entries(|e| e.derivative())
    }

    pub fn truncate_at(&self, m: usize) -> Result<Self> {
        self.map_entries(|e| e.truncate_at(m))
    }

    pub fn substitute_power(&self, k: usize) -> Self {
        self.map_entries(|e| Ok(e.substitute_power(k))).expect("shape preserved")
    }

    pub fn with_cap(&self, cap: usize) -> Result<Self> {
        self.map_entries(|e| e.with_cap(cap))
    }

    /// Scans entries in row-major order, each by ascending degree, and reports the
    /// lowest-degree disagreement (ties broken by entry order).
    pub fn first_mismatch(&self, other: &Self) -> Result<Option<MatrixMismatch>> {
        let mut best: Option<MatrixMismatch> = None;
        for i in 0..2 {
            for j in 0..2 {
                if let Some(d) = self.entries[i][j].first_mismatch(&other.entries[i][j])? {
                    if best.as_ref().is_none_or(|b| d < b.degree) {
                        best = Some(MatrixMismatch { row: i + 1, col: j + 1, degree: d });
                    }
                }
            }
        }
        Ok(best)
    }

    /// Four entry blocks, each headed `entry (i,j):` and followed by the series dump.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for i in 0..2 {
            for j in 0..2 {
                out.push_str(&format!("entry ({},{}):\n", i + 1, j + 1));
                out.push_str(&self.entries[i][j].dump());
            }
        }
        out
    }
}

impl<B: Padic> SeriesMatrix<B> {
    pub fn substitute_tp(&self) -> Self {
        self.map_entries(|e| Ok(e.substitute_tp())).expect("shape preserved")
    }

    pub fn project(&self, target: &B) -> Self {
        self.map_entries(|e| Ok(e.project(target))).expect("shape preserved")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Zmod;
    use proptest::prelude::*;

    fn unit_matrix(r: &Zmod, c: [Vec<u64>; 4]) -> SeriesMatrix<Zmod> {
        let [mut a, b, c, mut d] = c;
        // Constant term congruent to the identity, so the determinant is a unit.
        a[0] = 1;
        d[0] = 1;
        let mk = |v: Vec<u64>| TruncatedSeries::new(r.clone(), v);
        let mut b = b;
        let mut c = c;
        b[0] %= 5;
        c[0] = 0;
        SeriesMatrix::from_rows(mk(a), mk(b), mk(c), mk(d)).unwrap()
    }

    #[test]
    fn diag_det() {
        let r = Zmod::with_ps(5, 2).unwrap();
        let e = SeriesMatrix::diag(r.clone(), r.from_int(-1), r.one(), 5);
        assert_eq!(e.det(), TruncatedSeries::from_ints(r, &[-1], 5));
    }

    #[test]
    fn non_unit_det_is_rejected() {
        let r = Zmod::with_ps(5, 2).unwrap();
        let m = SeriesMatrix::diag(r.clone(), r.from_int(5), r.one(), 5);
        assert!(matches!(m.invert(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn mismatch_prefers_lowest_degree() {
        let r = Zmod::with_ps(5, 1).unwrap();
        let a = SeriesMatrix::identity(r.clone(), 6);
        let mut e = a.entries().clone();
        e[1][1].set_coeff(2, 3);
        e[0][1].set_coeff(4, 1);
        let b = SeriesMatrix::new(e).unwrap();
        assert_eq!(a.first_mismatch(&b).unwrap(), Some(MatrixMismatch { row: 2, col: 2, degree: 2 }));
        assert_eq!(a.first_mismatch(&a).unwrap(), None);
    }

    fn arb_entries() -> impl Strategy<Value = [Vec<u64>; 4]> {
        let v = || proptest::collection::vec(0u64..25, 12);
        (v(), v(), v(), v()).prop_map(|(a, b, c, d)| [a, b, c, d])
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(c in arb_entries()) {
            let r = Zmod::with_ps(5, 2).unwrap();
            let m = unit_matrix(&r, c);
            let id = SeriesMatrix::identity(r, 12);
            prop_assert_eq!(m.try_mul(&m.invert().unwrap()).unwrap(), id.clone());
            prop_assert_eq!(m.invert().unwrap().try_mul(&m).unwrap(), id);
        }

        #[test]
        fn det_is_multiplicative(c1 in arb_entries(), c2 in arb_entries()) {
            let r = Zmod::with_ps(5, 2).unwrap();
            let (a, b) = (unit_matrix(&r, c1), unit_matrix(&r, c2));
            prop_assert_eq!(a.try_mul(&b).unwrap().det(), &a.det() * &b.det());
        }
    }
}
