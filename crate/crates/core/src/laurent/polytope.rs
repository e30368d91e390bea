use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use super::{Exponent, LaurentPoly};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Convex hull of a finite lattice point set, as facet inequalities `normal . x <= offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonPolytope {
    pub dim: usize,
    pub vertices: Vec<Exponent>,
    pub facets: Vec<(Vec<i64>, i64)>,
    pub interior: Vec<Exponent>,
}

fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut acc = 0i128;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect()).collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc += sign * m[0][j] as i128 * det(&minor);
    }
    acc
}

fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                for k in 0..cols {
                    m[r][k] = m[r][k] * a - m[rank][k] * b;
                }
                let g = m[r].iter().fold(0i128, |g, v| g.gcd(v));
                if g > 1 {
                    m[r].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl NewtonPolytope {
    /// Hull of `points` by brute force over all `dim`-subsets. Degenerate when the points
    /// do not affinely span the ambient space.
    pub fn from_points(points: &[Exponent], dim: usize) -> Result<Self> {
        if points.is_empty() || points.iter().any(|p| p.len() != dim) {
            return Err(Error::Degenerate("empty support or inconsistent dimension".into()));
        }
        let diffs: Vec<Vec<i64>> = points[1..].iter().map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect()).collect();
        if rank(&diffs) < dim {
            return Err(Error::Degenerate(format!("support spans less than {dim} dimensions")));
        }
        let mut facets = BTreeSet::new();
        for subset in combinations(points.len(), dim) {
            let base = &points[subset[0]];
            let rows: Vec<Vec<i64>> = subset[1..].iter().map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
            let mut normal: Vec<i64> = (0..dim)
                .map(|j| {
                    let minor: Vec<Vec<i64>> =
                        rows.iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect()).collect();
                    let d = det(&minor) as i64;
                    if j % 2 == 0 {
                        d
                    } else {
                        -d
                    }
                })
                .collect();
            let g = normal.iter().fold(0i64, |g, v| g.gcd(v));
            if g == 0 {
                continue;
            }
            normal.iter_mut().for_each(|v| *v /= g);
            let offset = dot(&normal, base);
            let values: Vec<i64> = points.iter().map(|p| dot(&normal, p)).collect();
            if values.iter().all(|&v| v <= offset) {
                facets.insert((normal, offset));
            } else if values.iter().all(|&v| v >= offset) {
                facets.insert((normal.iter().map(|v| -v).collect(), -offset));
            }
        }
        let facets: Vec<(Vec<i64>, i64)> = facets.into_iter().collect();

        let mut vertices: Vec<Exponent> = points
            .iter()
            .filter(|p| {
                let tight: Vec<Vec<i64>> = facets.iter().filter(|(n, b)| dot(n, p) == *b).map(|(n, _)| n.clone()).collect();
                rank(&tight) == dim
            })
            .cloned()
            .collect();
        vertices.sort();
        vertices.dedup();

        let lo: Vec<i64> = (0..dim).map(|i| points.iter().map(|p| p[i]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..dim).map(|i| points.iter().map(|p| p[i]).max().unwrap()).collect();
        let mut interior = Vec::new();
        let mut cur = lo.clone();
        'outer: loop {
            if facets.iter().all(|(n, b)| dot(n, &cur) < *b) {
                interior.push(cur.clone());
            }
            for i in 0..dim {
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    continue 'outer;
                }
                cur[i] = lo[i];
            }
            break;
        }
        interior.sort();
        Ok(NewtonPolytope { dim, vertices, facets, interior })
    }

    pub fn of<R: Ring>(g: &LaurentPoly<R>) -> Result<Self> {
        Self::from_points(&g.support(), g.dim())
    }

    /// Number of interior lattice points.
    pub fn h(&self) -> usize {
        self.interior.len()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|(n, b)| dot(n, x) <= *b)
    }
}

/// Outcome of the unique-interior-point hypothesis check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InteriorCheck {
    pub ok: bool,
    pub interior: Vec<Exponent>,
}

impl InteriorCheck {
    pub fn describe(&self) -> String {
        if self.ok {
            "origin is the unique interior lattice point".into()
        } else {
            format!("interior lattice points {:?}, expected only the origin", self.interior)
        }
    }
}

pub fn interior_check<R: Ring>(g: &LaurentPoly<R>) -> Result<InteriorCheck> {
    let poly = NewtonPolytope::of(g)?;
    let ok = poly.interior == vec![vec![0; g.dim()]];
    Ok(InteriorCheck { ok, interior: poly.interior })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_laurent;

    #[test]
    fn segment() {
        let c = interior_check(&parse_laurent("x + x^-1", None).unwrap()).unwrap();
        assert!(c.ok);
        assert_eq!(c.interior, vec![vec![0]]);
    }

    #[test]
    fn triangle() {
        let g = parse_laurent("x1 + x2 + x1^-1 x2^-1", None).unwrap();
        let poly = NewtonPolytope::of(&g).unwrap();
        assert_eq!(poly.facets.len(), 3);
        assert_eq!(poly.vertices.len(), 3);
        assert!(interior_check(&g).unwrap().ok);
    }

    #[test]
    fn wide_segment_violates() {
        let c = interior_check(&parse_laurent("x^2 + x^-2", None).unwrap()).unwrap();
        assert!(!c.ok);
        assert_eq!(c.interior, vec![vec![-1], vec![0], vec![1]]);
        assert!(c.describe().contains("[-1]"));
    }

    #[test]
    fn prism_and_cube() {
        let mixed = parse_laurent("x1 x2 + x1 x3 + x1 x2^-1 x3^-1 + x1^-1 x2 + x1^-1 x3 + x1^-1 x2^-1 x3^-1", None).unwrap();
        let poly = NewtonPolytope::of(&mixed).unwrap();
        assert_eq!(poly.vertices.len(), 6);
        assert_eq!(poly.facets.len(), 5);
        assert_eq!(poly.interior, vec![vec![0, 0, 0]]);

        let pts: Vec<Exponent> = (0..16).map(|m: i64| (0..4).map(|i| if m >> i & 1 == 1 { 1 } else { -1 }).collect()).collect();
        let cube = NewtonPolytope::from_points(&pts, 4).unwrap();
        assert_eq!(cube.facets.len(), 8);
        assert_eq!(cube.interior, vec![vec![0; 4]]);
    }

    #[test]
    fn degenerate_support_is_rejected() {
        let g = parse_laurent("x1 x2 + x1^-1 x2^-1", None).unwrap();
        assert!(matches!(interior_check(&g), Err(Error::Degenerate(_))));
    }

    #[test]
    fn support_points_satisfy_facets() {
        let g = parse_laurent("x1^2 x2 + 3 * x2^-1 + x1^-1 + x1 x2^2 + 7", None).unwrap();
        let poly = NewtonPolytope::of(&g).unwrap();
        for pt in g.support() {
            assert!(poly.contains(&pt));
        }
        for pt in &poly.interior {
            assert!(poly.facets.iter().all(|(n, b)| dot(n, pt) < *b));
        }
    }
}
