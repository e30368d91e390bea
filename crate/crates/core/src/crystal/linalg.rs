use crate::error::{Error, Result};
use crate::ring::Ring;

/// Solves the square system `m v = rhs` over a local ring by Gauss-Jordan elimination,
/// pivoting only on units. Over a local ring a unit pivot exists in every column exactly
/// when the determinant is a unit.
pub fn solve_local<R: Ring>(ring: &R, mut m: Vec<Vec<R::Elem>>, mut rhs: Vec<R::Elem>) -> Result<Vec<R::Elem>> {
    let n = m.len();
    if rhs.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(Error::param("solve_local needs a square system"));
    }
    for col in 0..n {
        let piv =
            (col..n).find(|&r| ring.is_unit(&m[r][col])).ok_or_else(|| Error::NotInvertible(format!("no unit pivot in column {col}")))?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = ring.inv(&m[col][col]).expect("pivot is a unit");
        for k in col..n {
            m[col][k] = ring.mul(&m[col][k], &inv);
        }
        rhs[col] = ring.mul(&rhs[col], &inv);
        for r in 0..n {
            if r == col || ring.is_zero(&m[r][col]) {
                continue;
            }
            let factor = m[r][col].clone();
            for k in col..n {
                let delta = ring.mul(&factor, &m[col][k]);
                m[r][k] = ring.sub(&m[r][k], &delta);
            }
            let delta = ring.mul(&factor, &rhs[col]);
            rhs[r] = ring.sub(&rhs[r], &delta);
        }
    }
    Ok(rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Zmod;

    #[test]
    fn pivots_past_non_units() {
        let r = Zmod::with_ps(5, 2).unwrap();
        // First column starts with 5, a non-unit; the solver must pivot on the 1.
        let m = vec![vec![5, 1], vec![1, 3]];
        let x = solve_local(&r, m.clone(), vec![7, 11]).unwrap();
        for (row, b) in m.iter().zip([7u64, 11]) {
            let lhs = r.add(&r.mul(&row[0], &x[0]), &r.mul(&row[1], &x[1]));
            assert_eq!(lhs, b);
        }
    }

    #[test]
    fn singular_mod_p_is_rejected() {
        let r = Zmod::with_ps(5, 2).unwrap();
        let m = vec![vec![1, 2], vec![2, 9]];
        assert!(matches!(solve_local(&r, m, vec![1, 1]), Err(Error::NotInvertible(_))));
    }
}
