//! Sylvester resultants with fraction-free determinants.
//!
//! Sign convention: the Sylvester matrix has the coefficients of `f` (highest
//! degree first) in its top `deg g` rows and those of `g` below, so that
//! `Res_y(y^2 - x^3, y) = -x^3`.

use super::{MPoly, PolyError};

/// Sylvester matrix of `f` and `g` with respect to variable `v`.
pub fn sylvester_matrix(f: &MPoly, g: &MPoly, v: usize) -> Vec<Vec<MPoly>> {
    let fc = f.coefficients_in(v);
    let gc = g.coefficients_in(v);
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let size = m + n;
    let zero = MPoly::zero(f.vars());
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in fc.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in gc.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant by Bareiss elimination with exact multivariate division.
pub fn determinant(mut m: Vec<Vec<MPoly>>, vars: &std::sync::Arc<super::VarTable>) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one(vars);
    }
    let mut sign = false;
    let mut prev = MPoly::one(vars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return MPoly::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// `Res_v(f, g)`. A factor constant in `v` contributes its power; both
/// constant is a domain error.
pub fn resultant(f: &MPoly, g: &MPoly, v: usize) -> Result<MPoly, PolyError> {
    if *f.vars() != *g.vars() {
        return Err(PolyError::VarTableMismatch);
    }
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::Domain("resultant of a zero polynomial".into()));
    }
    let m = f.degree_in(v).unwrap_or(0);
    let n = g.degree_in(v).unwrap_or(0);
    match (m, n) {
        (0, 0) => Err(PolyError::Domain(format!(
            "both polynomials are constant in `{}`",
            f.vars().name(v)
        ))),
        (0, _) => Ok(f.pow(n)),
        (_, 0) => Ok(g.pow(m)),
        _ => Ok(determinant(sylvester_matrix(f, g, v), f.vars())),
    }
}
