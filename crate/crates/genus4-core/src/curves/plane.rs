//! Singular points of affine plane curves with rational coordinates, and
//! the chart atlases built on top of that search.

use super::{CurveError, InventoryEntry, Location};
use crate::germ::{classify_germ, classify_vertex, Germ, VertexGerm};
use crate::polyring::{resultant, MPoly, PointQ, Rational, UPoly, VarTable};
use num_traits::{One, Zero};
use std::sync::Arc;

/// Rational singular points of the affine curve `f(u, v) = 0`.
///
/// Candidate `u`-values are the rational roots of the content of `f` in
/// `v` and of the discriminant of the primitive part; each candidate is
/// resolved by the gcd of `f`, `f_u`, `f_v` restricted to that vertical
/// line.
pub fn affine_singular_points(f: &MPoly) -> Result<Vec<PointQ>, CurveError> {
    assert_eq!(f.nvars(), 2);
    if f.is_zero() {
        return Err(CurveError::NonReduced);
    }
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let vars = f.vars().clone();
    let coeffs = f.coefficients_in(1);
    let mut content = UPoly::zero();
    for c in &coeffs {
        content = content.gcd(&c.to_upoly(0)?);
    }
    let content_poly = MPoly::from_upoly(&vars, 0, &content);
    let f1 = f.div_exact(&content_poly)?;
    if content.squarefree().iter().any(|(_, m)| *m > 1) {
        return Err(CurveError::NonReduced);
    }
    let mut xs: Vec<Rational> = content.rational_roots();
    if f1.degree_in(1).unwrap_or(0) > 0 {
        let disc = resultant(&f1, &f1.partial_derivative(1), 1)?;
        if disc.is_zero() {
            return Err(CurveError::NonReduced);
        }
        xs.extend(disc.to_upoly(0)?.rational_roots());
    }
    xs.sort();
    xs.dedup();
    let fu = f.partial_derivative(0);
    let fv = f.partial_derivative(1);
    let mut out = Vec::new();
    for x0 in xs {
        let restrict = |p: &MPoly| -> Result<UPoly, CurveError> { Ok(p.specialize(0, &x0).to_upoly(1)?) };
        let g = restrict(f)?.gcd(&restrict(&fu)?).gcd(&restrict(&fv)?);
        if g.is_zero() {
            return Err(CurveError::NonReduced);
        }
        for y0 in g.rational_roots() {
            out.push(PointQ(vec![x0.clone(), y0]));
        }
    }
    Ok(out)
}

type PointFn<T> = Box<dyn Fn(&PointQ) -> T>;

/// One affine chart of a planar ambient.
pub(crate) struct PlanarChart {
    pub id: String,
    /// Equation in the two chart coordinates.
    pub poly: MPoly,
    /// Points outside this predicate belong to an earlier chart.
    pub keep: PointFn<bool>,
    /// Chart point to ambient coordinates.
    pub lift: PointFn<Vec<Rational>>,
    /// The chart is the double cover of the vertex of a `(1, 1, 2)` plane:
    /// only its origin is examined, through the vertex rule.
    pub vertex: bool,
}

/// Table with the two given names for chart coordinates.
pub(crate) fn chart_vars(a: &str, b: &str) -> Arc<VarTable> {
    VarTable::unweighted(&[a, b])
}

/// Images of the ambient variables when variable `fixed[i].0` is set to a
/// constant and the remaining ones map to chart variables in order.
pub(crate) fn chart_images(ambient: &Arc<VarTable>, chart: &Arc<VarTable>, free: &[usize], fixed: &[(usize, Rational)]) -> Vec<MPoly> {
    let mut images = vec![MPoly::zero(chart); ambient.len()];
    for (k, &i) in free.iter().enumerate() {
        images[i] = MPoly::var_at(chart, k);
    }
    for (i, c) in fixed {
        images[*i] = MPoly::constant(chart, c.clone());
    }
    images
}

/// Singular entries found across a list of charts.
pub(crate) fn analyze_charts(charts: &[PlanarChart], location_of: &dyn Fn(&PlanarChart) -> Location) -> Result<Vec<InventoryEntry>, CurveError> {
    let mut entries = Vec::new();
    for ch in charts {
        if ch.vertex {
            let origin = PointQ::origin(2);
            if !ch.poly.evaluate(&origin.0).is_zero() {
                continue;
            }
            let vg = VertexGerm::new(ch.poly.clone()).map_err(|e| CurveError::at(&ch.id, &origin, e))?;
            let class = classify_vertex(&vg).map_err(|e| CurveError::at(&ch.id, &origin, e))?;
            if class.kind != crate::germ::GermKind::Smooth {
                entries.push(InventoryEntry {
                    chart: ch.id.clone(),
                    point: Some(origin.clone()),
                    projective: Some((ch.lift)(&origin)),
                    class,
                    orbit: None,
                    location: Location::Vertex,
                });
            }
            continue;
        }
        for p in affine_singular_points(&ch.poly)? {
            if !(ch.keep)(&p) {
                continue;
            }
            let germ = Germ::new(ch.poly.clone(), p.clone()).map_err(|e| CurveError::at(&ch.id, &p, e))?;
            let class = classify_germ(&germ).map_err(|e| CurveError::at(&ch.id, &p, e))?;
            entries.push(InventoryEntry {
                chart: ch.id.clone(),
                point: Some(p.clone()),
                projective: Some((ch.lift)(&p)),
                class,
                orbit: None,
                location: location_of(ch),
            });
        }
    }
    Ok(entries)
}

/// Charts of the weighted plane `P(1, 1, c)` with coordinates `x, y, z`:
/// `x = 1` with affine coordinates `(y, z)`, `y = 1` restricted to `x = 0`,
/// and the vertex `[0:0:1]` through its double cover when `c = 2`.
pub(crate) fn weighted_plane_charts(f: &MPoly) -> Result<Vec<PlanarChart>, CurveError> {
    let vars = f.vars().clone();
    let w = vars.weights();
    if vars.len() != 3 || w[0] != 1 || w[1] != 1 {
        return Err(CurveError::Domain("weighted plane must have weights (1, 1, c)".into()));
    }
    let c = w[2];
    let names = vars.names();
    let one = Rational::one();
    let zero = Rational::zero();
    let mut charts = Vec::new();

    let cv = chart_vars(&names[1], &names[2]);
    let poly = f.substitute_all(&chart_images(&vars, &cv, &[1, 2], &[(0, one.clone())]), &cv)?;
    charts.push(PlanarChart {
        id: format!("{}=1", names[0]),
        poly,
        keep: Box::new(|_| true),
        lift: Box::new(|p| vec![Rational::one(), p.0[0].clone(), p.0[1].clone()]),
        vertex: false,
    });

    let cv = chart_vars(&names[0], &names[2]);
    let poly = f.substitute_all(&chart_images(&vars, &cv, &[0, 2], &[(1, one.clone())]), &cv)?;
    charts.push(PlanarChart {
        id: format!("{}=1", names[1]),
        poly,
        keep: Box::new(|p| p.0[0].is_zero()),
        lift: Box::new(|p| vec![Rational::zero(), Rational::one(), p.0[1].clone()]),
        vertex: false,
    });

    let passes_vertex = f.evaluate(&[zero.clone(), zero.clone(), one.clone()]).is_zero();
    if passes_vertex {
        if c == 1 {
            let cv = chart_vars(&names[0], &names[1]);
            let poly = f.substitute_all(&chart_images(&vars, &cv, &[0, 1], &[(2, one.clone())]), &cv)?;
            charts.push(PlanarChart {
                id: format!("{}=1", names[2]),
                poly,
                keep: Box::new(|p| p.0[0].is_zero() && p.0[1].is_zero()),
                lift: Box::new(|_| vec![Rational::zero(), Rational::zero(), Rational::one()]),
                vertex: false,
            });
        } else if c == 2 {
            let cv = chart_vars(&names[0], &names[1]);
            let poly = f.substitute_all(&chart_images(&vars, &cv, &[0, 1], &[(2, one.clone())]), &cv)?;
            charts.push(PlanarChart {
                id: "vertex".into(),
                poly,
                keep: Box::new(|_| true),
                lift: Box::new(|_| vec![Rational::zero(), Rational::zero(), Rational::one()]),
                vertex: true,
            });
        } else {
            return Err(CurveError::Unsupported(format!(
                "curve passes through the vertex of P(1,1,{c})"
            )));
        }
    }
    Ok(charts)
}

/// The four bi-affine charts of `P1 x P1`; the first two table variables are
/// the first factor.
pub(crate) fn p1xp1_charts(f: &MPoly) -> Result<Vec<PlanarChart>, CurveError> {
    let vars = f.vars().clone();
    if vars.len() != 4 {
        return Err(CurveError::Domain("P1xP1 needs four variables".into()));
    }
    let names = vars.names().to_vec();
    let mut charts = Vec::new();
    for i in [0usize, 1] {
        for j in [2usize, 3] {
            let fi = 1 - i;
            let fj = 5 - j;
            let cv = chart_vars(&names[fi], &names[fj]);
            let poly = f.substitute_all(
                &chart_images(&vars, &cv, &[fi, fj], &[(i, Rational::one()), (j, Rational::one())]),
                &cv,
            )?;
            charts.push(PlanarChart {
                id: format!("{}=1,{}=1", names[i], names[j]),
                poly,
                // a point belongs to the first chart (in order) containing it
                keep: Box::new(move |p| (i == 0 || p.0[0].is_zero()) && (j == 2 || p.0[1].is_zero())),
                lift: Box::new(move |p| {
                    let mut out = vec![Rational::zero(); 4];
                    out[i] = Rational::one();
                    out[fi] = p.0[0].clone();
                    out[j] = Rational::one();
                    out[fj] = p.0[1].clone();
                    out
                }),
                vertex: false,
            });
        }
    }
    Ok(charts)
}

/// Charts of the projective plane with coordinates `a, b, c`.
pub(crate) fn p2_charts(f: &MPoly) -> Result<Vec<PlanarChart>, CurveError> {
    let vars = f.vars().clone();
    if vars.len() != 3 {
        return Err(CurveError::Domain("P2 needs three variables".into()));
    }
    let names = vars.names().to_vec();
    let one = Rational::one();
    let mut charts = Vec::new();
    let specs: [(usize, [usize; 2]); 3] = [(0, [1, 2]), (1, [0, 2]), (2, [0, 1])];
    for (k, (fix, free)) in specs.into_iter().enumerate() {
        let cv = chart_vars(&names[free[0]], &names[free[1]]);
        let poly = f.substitute_all(&chart_images(&vars, &cv, &free, &[(fix, one.clone())]), &cv)?;
        charts.push(PlanarChart {
            id: format!("{}=1", names[fix]),
            poly,
            keep: Box::new(move |p| match k {
                0 => true,
                1 => p.0[0].is_zero(),
                _ => p.0[0].is_zero() && p.0[1].is_zero(),
            }),
            lift: Box::new(move |p| {
                let mut out = vec![Rational::zero(); 3];
                out[fix] = Rational::one();
                out[free[0]] = p.0[0].clone();
                out[free[1]] = p.0[1].clone();
                out
            }),
            vertex: false,
        });
    }
    Ok(charts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, q};

    #[test]
    fn nodal_cubic_and_vertical_components() {
        let v = chart_vars("u", "v");
        let f = parse_poly("v^2 - u^2*(u + 1)", &v).unwrap();
        assert_eq!(affine_singular_points(&f).unwrap(), vec![PointQ(vec![q(0), q(0)])]);
        // two vertical lines and a horizontal one
        let g = parse_poly("u*(u - 1)*(v - 2)", &v).unwrap();
        let pts = affine_singular_points(&g).unwrap();
        assert_eq!(pts, vec![PointQ(vec![q(0), q(2)]), PointQ(vec![q(1), q(2)])]);
        let h = parse_poly("u^2*(v - 1)", &v).unwrap();
        assert_eq!(affine_singular_points(&h), Err(CurveError::NonReduced));
        let s = parse_poly("v - u^3", &v).unwrap();
        assert!(affine_singular_points(&s).unwrap().is_empty());
    }
}
