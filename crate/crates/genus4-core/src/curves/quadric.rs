//! Rational normal forms of quadrics in P3.
//!
//! Rank 4 (split over Q): a basis `E0..E3` with `[s u : s v : t u : t v]`
//! parametrizing the quadric. Rank 3: the cone is the image of `P(1,1,2)`
//! under `[x:y:z] -> z v + a x^2 e1 + x y e2 + y^2 e3`. Rank 2: the quadric
//! is a product of two rational linear forms.

use super::CurveError;
use crate::polyring::{
    diagonalize_symmetric, inverse, kernel_basis, matrix_rank, rational_sqrt, symmetric_matrix_of_quadric,
    MPoly, QMatrix, Rational, VarTable,
};
use num_traits::{One, Zero};
use std::sync::Arc;

/// Largest coordinate tried when searching for a rational point.
pub const POINT_SEARCH_HEIGHT: i64 = 25;

#[derive(Debug, Clone, PartialEq)]
pub enum QuadricForm {
    /// `(s, t, u, v) -> s u E0 + s v E1 + t u E2 + t v E3`.
    Segre { basis: [Vec<Rational>; 4] },
    /// `(x, y, z) -> z vertex + alpha x^2 e1 + x y e2 + y^2 e3`.
    Cone {
        vertex: Vec<Rational>,
        e1: Vec<Rational>,
        e2: Vec<Rational>,
        e3: Vec<Rational>,
        alpha: Rational,
    },
    /// `Q = c l1 l2` with `l1, l2` coefficient vectors of linear forms.
    Planes { l1: Vec<Rational>, l2: Vec<Rational> },
}

fn bilinear(a: &QMatrix, x: &[Rational], y: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for i in 0..x.len() {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..y.len() {
            if !a[i][j].is_zero() && !y[j].is_zero() {
                s += &x[i] * &a[i][j] * &y[j];
            }
        }
    }
    s
}

fn qval(a: &QMatrix, x: &[Rational]) -> Rational {
    bilinear(a, x, x)
}

fn mat_vec(a: &QMatrix, x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

fn axpy(a: &Rational, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(p, q)| a * p + q).collect()
}

fn scale(a: &Rational, x: &[Rational]) -> Vec<Rational> {
    x.iter().map(|p| a * p).collect()
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
}

fn independent(vs: &[&Vec<Rational>]) -> bool {
    let m: QMatrix = vs.iter().map(|v| (*v).clone()).collect();
    matrix_rank(&m) == vs.len()
}

/// A nonzero rational isotropic vector, not proportional to `avoid`.
///
/// Unit vectors are tried first, then integer vectors of growing height with
/// the last usable coordinate solved from the quadratic equation.
pub fn find_isotropic(a: &QMatrix, avoid: Option<&Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = a.len();
    let ok = |v: &Vec<Rational>| match avoid {
        Some(w) => independent(&[v, w]),
        None => v.iter().any(|c| !c.is_zero()),
    };
    for (i, row) in a.iter().enumerate() {
        let e = unit(n, i);
        if row[i].is_zero() && ok(&e) {
            return Some(e);
        }
    }
    let k = (0..n).find(|&i| !a[i][i].is_zero())?;
    let others: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    let akk = a[k][k].clone();
    for h in 1..=POINT_SEARCH_HEIGHT {
        let side = (2 * h + 1) as usize;
        let total = side.pow(others.len() as u32);
        for idx in 0..total {
            let mut rem = idx;
            let mut vals = Vec::with_capacity(others.len());
            for _ in 0..others.len() {
                vals.push((rem % side) as i64 - h);
                rem /= side;
            }
            if vals.iter().all(|v| v.abs() < h) {
                continue;
            }
            let mut x = vec![Rational::zero(); n];
            for (o, v) in others.iter().zip(&vals) {
                x[*o] = Rational::from_integer((*v).into());
            }
            // akk t^2 + 2 b t + c = 0
            let b: Rational = others.iter().map(|&i| &a[k][i] * &x[i]).sum();
            let c = qval(a, &x);
            let disc = &b * &b - &akk * &c;
            if let Some(r) = rational_sqrt(&disc) {
                for sign in [1, -1] {
                    let t = (-&b + Rational::from_integer(sign.into()) * &r) / &akk;
                    let mut y = x.clone();
                    y[k] = t;
                    if ok(&y) {
                        debug_assert!(qval(a, &y).is_zero());
                        return Some(y);
                    }
                }
            }
        }
    }
    None
}

/// Coordinates of the point `sum coeffs[k] basis[k]` as polynomials.
pub(crate) fn linear_images(target: &Arc<VarTable>, terms: &[(MPoly, &Vec<Rational>)], n: usize) -> Vec<MPoly> {
    (0..n)
        .map(|i| {
            let mut acc = MPoly::zero(target);
            for (c, v) in terms {
                if !v[i].is_zero() {
                    acc = &acc + &c.scale(&v[i]);
                }
            }
            acc
        })
        .collect()
}

impl QuadricForm {
    /// Pull a form on P3 back along the parametrization. Only meaningful for
    /// the Segre and cone forms; the target tables are `s,t,u,v` and
    /// `x,y,z` with weights `(1,1,2)`.
    pub fn pullback(&self, k: &MPoly) -> Result<MPoly, CurveError> {
        let n = k.nvars();
        match self {
            QuadricForm::Segre { basis } => {
                let t = VarTable::unweighted(&["s", "t", "u", "v"]);
                let [s, tt, u, v] = [0, 1, 2, 3].map(|i| MPoly::var_at(&t, i));
                let terms = [
                    (&s * &u, &basis[0]),
                    (&s * &v, &basis[1]),
                    (&tt * &u, &basis[2]),
                    (&tt * &v, &basis[3]),
                ];
                Ok(k.substitute_all(&linear_images(&t, &terms, n), &t)?)
            }
            QuadricForm::Cone { vertex, e1, e2, e3, alpha } => {
                let t = VarTable::new(&["x", "y", "z"], &[1, 1, 2]).expect("valid table");
                let [x, y, z] = [0, 1, 2].map(|i| MPoly::var_at(&t, i));
                let terms = [
                    (z.clone(), vertex),
                    (x.pow(2).scale(alpha), e1),
                    (&x * &y, e2),
                    (y.pow(2), e3),
                ];
                Ok(k.substitute_all(&linear_images(&t, &terms, n), &t)?)
            }
            QuadricForm::Planes { .. } => Err(CurveError::Domain("a pair of planes has no single parametrization".into())),
        }
    }

    /// Ambient point of a parameter point.
    pub fn point(&self, p: &[Rational]) -> Vec<Rational> {
        match self {
            QuadricForm::Segre { basis } => {
                let (s, t, u, v) = (&p[0], &p[1], &p[2], &p[3]);
                let cs = [s * u, s * v, t * u, t * v];
                let mut out = vec![Rational::zero(); basis[0].len()];
                for (c, b) in cs.iter().zip(basis.iter()) {
                    out = axpy(c, b, &out);
                }
                out
            }
            QuadricForm::Cone { vertex, e1, e2, e3, alpha } => {
                let (x, y, z) = (&p[0], &p[1], &p[2]);
                let cs = [z.clone(), alpha * x * x, x * y, y * y];
                let mut out = vec![Rational::zero(); vertex.len()];
                for (c, b) in cs.iter().zip([vertex, e1, e2, e3]) {
                    out = axpy(c, b, &out);
                }
                out
            }
            QuadricForm::Planes { .. } => p.to_vec(),
        }
    }
}

/// Normal form of a quadric of rank 2, 3 or 4 in four variables.
pub fn quadric_normal_form(q: &MPoly) -> Result<QuadricForm, CurveError> {
    let a = symmetric_matrix_of_quadric(q)?;
    let n = a.len();
    if n != 4 {
        return Err(CurveError::Domain("quadric must be in four variables".into()));
    }
    match matrix_rank(&a) {
        4 => segre_form(q, &a),
        3 => cone_form(q, &a),
        2 => planes_form(&a),
        r => Err(CurveError::Unsupported(format!("quadric of rank {r}"))),
    }
}

fn segre_form(q: &MPoly, a: &QMatrix) -> Result<QuadricForm, CurveError> {
    let identity = QuadricForm::Segre {
        basis: [unit(4, 0), unit(4, 1), unit(4, 2), unit(4, 3)],
    };
    if identity.pullback(q)?.is_zero() {
        return Ok(identity);
    }
    let p = find_isotropic(a, None)
        .ok_or_else(|| CurveError::Unsupported("no rational point found on the quadric".into()))?;
    let ap = mat_vec(a, &p);
    let tangent = kernel_basis(&vec![ap], 4);
    let mut pair = None;
    'outer: for i in 0..tangent.len() {
        for j in i + 1..tangent.len() {
            if independent(&[&p, &tangent[i], &tangent[j]]) {
                pair = Some((tangent[i].clone(), tangent[j].clone()));
                break 'outer;
            }
        }
    }
    let (w1, w2) = pair.expect("tangent plane is three-dimensional");
    let a11 = qval(a, &w1);
    let a12 = bilinear(a, &w1, &w2);
    let a22 = qval(a, &w2);
    let disc = &a12 * &a12 - &a11 * &a22;
    let r = rational_sqrt(&disc)
        .ok_or_else(|| CurveError::Unsupported("rank-4 quadric is not split over Q".into()))?;
    let (la, lb) = if a11.is_zero() {
        (w1.clone(), axpy(&a22, &w1, &scale(&(-&a12 * Rational::from_integer(2.into())), &w2)))
    } else {
        let al1 = (-&a12 + &r) / &a11;
        let al2 = (-&a12 - &r) / &a11;
        (axpy(&al1, &w1, &w2), axpy(&al2, &w1, &w2))
    };
    let gamma = bilinear(a, &la, &lb);
    let comp = kernel_basis(&vec![mat_vec(a, &la), mat_vec(a, &lb)], 4);
    let w = comp
        .into_iter()
        .find(|w| !bilinear(a, w, &p).is_zero())
        .expect("hyperbolic complement");
    let bwp = bilinear(a, &w, &p);
    let e3 = axpy(&(-qval(a, &w) / (Rational::from_integer(2.into()) * &bwp)), &p, &w);
    let beta = bilinear(a, &p, &e3);
    let e3 = scale(&(-&gamma / &beta), &e3);
    let form = QuadricForm::Segre { basis: [p, la, lb, e3] };
    debug_assert!(form.pullback(q)?.is_zero());
    if !form.pullback(q)?.is_zero() {
        return Err(CurveError::Domain("internal: Segre basis does not parametrize the quadric".into()));
    }
    Ok(form)
}

fn cone_form(q: &MPoly, a: &QMatrix) -> Result<QuadricForm, CurveError> {
    let vertex = kernel_basis(a, 4).remove(0);
    let e1 = find_isotropic(a, Some(&vertex))
        .ok_or_else(|| CurveError::Unsupported("no rational point found on the conic".into()))?;
    let w = (0..4)
        .map(|i| unit(4, i))
        .find(|w| !bilinear(a, &e1, w).is_zero())
        .expect("e1 is not in the kernel");
    let b0 = bilinear(a, &e1, &w);
    let e3 = axpy(&(-qval(a, &w) / (Rational::from_integer(2.into()) * &b0)), &e1, &w);
    let b = bilinear(a, &e1, &e3);
    let e2 = kernel_basis(&vec![mat_vec(a, &e1), mat_vec(a, &e3)], 4)
        .into_iter()
        .find(|v| !qval(a, v).is_zero())
        .expect("orthogonal complement is not isotropic");
    let c2 = qval(a, &e2);
    let alpha = -c2 / (Rational::from_integer(2.into()) * b);
    let form = QuadricForm::Cone { vertex, e1, e2, e3, alpha };
    if !form.pullback(q)?.is_zero() {
        return Err(CurveError::Domain("internal: cone map does not land on the quadric".into()));
    }
    Ok(form)
}

fn planes_form(a: &QMatrix) -> Result<QuadricForm, CurveError> {
    let (p, d) = diagonalize_symmetric(a);
    let nz: Vec<usize> = (0..d.len()).filter(|&i| !d[i].is_zero()).collect();
    let (i, j) = (nz[0], nz[1]);
    let r = rational_sqrt(&(-&d[j] / &d[i]))
        .ok_or_else(|| CurveError::Unsupported("rank-2 quadric splits only over a quadratic field".into()))?;
    let pinv = inverse(&p).expect("congruence is invertible");
    let l1 = axpy(&-r.clone(), &pinv[j], &pinv[i]);
    let l2 = axpy(&r, &pinv[j], &pinv[i]);
    Ok(QuadricForm::Planes { l1, l2 })
}
