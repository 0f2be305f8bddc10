//! Small dense linear algebra over the rationals.

// row operations read most clearly with explicit indices
#![allow(clippy::needless_range_loop)]

use super::{MPoly, PolyError, Rational};
use num_traits::{One, Zero};

pub type QMatrix = Vec<Vec<Rational>>;

/// Row echelon form in place; returns pivot columns.
fn echelon(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / m[r][c].clone();
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn matrix_rank(m: &QMatrix) -> usize {
    let mut a = m.clone();
    echelon(&mut a).len()
}

/// Basis of the right kernel `{v : m v = 0}`.
pub fn kernel_basis(m: &QMatrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let pivots = echelon(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solve `m x = b`; `None` when inconsistent. Picks free variables as zero.
pub fn solve(m: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut a: QMatrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut a);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][cols].clone();
    }
    Some(x)
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = Rational::zero();
                    for t in 0..k {
                        s += &a[i][t] * &b[t][j];
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &QMatrix) -> QMatrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let mut aug: QMatrix = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            for j in 0..n {
                row.push(if i == j { Rational::one() } else { Rational::zero() });
            }
            row
        })
        .collect();
    let piv = echelon(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Symmetric Gram matrix of a homogeneous quadratic form.
pub fn symmetric_matrix_of_quadric(q: &MPoly) -> Result<QMatrix, PolyError> {
    if q.is_zero() || !q.is_homogeneous() || q.total_degree() != Some(2) {
        return Err(PolyError::Domain("expected a nonzero homogeneous quadratic form".into()));
    }
    let n = q.nvars();
    let mut m = vec![vec![Rational::zero(); n]; n];
    let half = Rational::new(1.into(), 2.into());
    for (e, c) in q.terms() {
        let idx: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        if idx.len() == 1 {
            m[idx[0]][idx[0]] = c.clone();
        } else {
            m[idx[0]][idx[1]] = c * &half;
            m[idx[1]][idx[0]] = c * &half;
        }
    }
    Ok(m)
}

/// Congruence diagonalization: returns `(p, d)` with `p^T a p = diag(d)` and
/// `p` invertible.
pub fn diagonalize_symmetric(a: &QMatrix) -> (QMatrix, Vec<Rational>) {
    let n = a.len();
    let mut m = a.clone();
    let mut p: QMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    // apply column op col_j += c col_i to p, and the symmetric op to m
    fn add_multiple(m: &mut QMatrix, p: &mut QMatrix, i: usize, j: usize, c: &Rational) {
        let n = m.len();
        for r in 0..n {
            let v = &m[r][i] * c;
            m[r][j] += v;
        }
        for r in 0..n {
            let v = &m[i][r] * c;
            m[j][r] += v;
        }
        for r in 0..n {
            let v = &p[r][i] * c;
            p[r][j] += v;
        }
    }
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                // swap k and j
                m.swap(k, j);
                for r in m.iter_mut() {
                    r.swap(k, j);
                }
                for r in p.iter_mut() {
                    r.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                // e_k += e_j makes the diagonal entry 2 m[k][j] != 0
                let one = Rational::one();
                add_multiple(&mut m, &mut p, j, k, &one);
            } else {
                continue;
            }
        }
        let pivot = m[k][k].clone();
        for j in k + 1..n {
            if !m[k][j].is_zero() {
                let c = -(&m[k][j] / &pivot);
                add_multiple(&mut m, &mut p, k, j, &c);
            }
        }
    }
    let d = (0..n).map(|i| m[i][i].clone()).collect();
    (p, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, q, VarTable};

    #[test]
    fn ranks_of_quadrics() {
        let v = VarTable::unweighted(&["x0", "x1", "x2", "x3"]);
        for (s, r) in [("x0*x3 - x1*x2", 4), ("x2^2 - x1*x3", 3), ("x0*x3", 2), ("x0^2", 1)] {
            let m = symmetric_matrix_of_quadric(&parse_poly(s, &v).unwrap()).unwrap();
            assert_eq!(matrix_rank(&m), r, "{s}");
        }
        assert!(symmetric_matrix_of_quadric(&parse_poly("x0^3", &v).unwrap()).is_err());
    }

    #[test]
    fn diagonalization_is_congruence() {
        let v = VarTable::unweighted(&["x0", "x1", "x2", "x3"]);
        let a = symmetric_matrix_of_quadric(&parse_poly("x0*x3 - x1*x2 + x0*x1", &v).unwrap()).unwrap();
        let (p, d) = diagonalize_symmetric(&a);
        let pt = transpose(&p);
        let r = mat_mul(&mat_mul(&pt, &a), &p);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { d[i].clone() } else { q(0) };
                assert_eq!(r[i][j], want);
            }
        }
        assert!(inverse(&p).is_some());
    }

    #[test]
    fn kernel_and_solve() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let k = kernel_basis(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Rational = m[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert_eq!(s, q(0));
        }
        assert_eq!(solve(&m, &[q(1), q(2)]), Some(vec![q(1), q(0), q(0)]));
        assert_eq!(solve(&m, &[q(1), q(3)]), None);
    }
}
