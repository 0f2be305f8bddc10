//! Global analysis of curves: ambient spaces, arithmetic genus, rational
//! singular points, singularity inventories and genus budgets.

mod json;
mod model;
pub mod named;
pub mod plane;
pub mod quadric;
mod weierstrass;

pub use json::{CurveSpecJson, ComponentJson, IncidenceJson, OrbitJson};
pub use model::{
    build_component_model, genus_budget_check, separating_check, Component, ComponentModel, Incidence,
};
pub use quadric::{find_isotropic, quadric_normal_form, QuadricForm};
pub use weierstrass::{weierstrass_component_model, weierstrass_singularities, WeierstrassCurve};

use crate::germ::{GermClass, GermError};
use crate::polyring::{
    fmt_projective, fmt_rational, kernel_basis, matrix_rank, normalize_projective, symmetric_matrix_of_quadric,
    MPoly, PointQ, PolyError, Rational, VarTable,
};
use num_traits::{One, Zero};
use plane::{analyze_charts, p1xp1_charts, p2_charts, weighted_plane_charts};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("{0}")]
    Domain(String),
    #[error("curve is non-reduced")]
    NonReduced,
    #[error("binary form is zero: the input is a ribbon")]
    RibbonInput,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("at {point} in chart {chart}: {source}")]
    AtPoint {
        chart: String,
        point: String,
        source: GermError,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl CurveError {
    pub(crate) fn at(chart: &str, p: &PointQ, e: GermError) -> Self {
        CurveError::AtPoint {
            chart: chart.to_string(),
            point: p.to_string(),
            source: e,
        }
    }
}

/// Ambient surface of a curve.
#[derive(Debug, Clone, PartialEq)]
pub enum Ambient {
    /// Coordinates: the first two table variables, then the last two.
    P1xP1,
    WeightedPlane { weights: [u32; 3] },
    /// The curve is cut out by the quadric and the equation (a cubic).
    CompleteIntersectionP3 { quadric: MPoly },
}

/// Where on the ambient a singular point sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Location {
    Smooth,
    Vertex,
    DoubleLine,
}

/// A Galois orbit of conjugate singular points, described by type and size.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orbit {
    pub label: String,
    pub size: u32,
    pub member: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSpec {
    pub label: String,
    pub size: u32,
    pub class: GermClass,
    pub location: Location,
}

/// A component of the curve as supplied by a fixture.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSpec {
    pub label: String,
    /// Planar ambients: one equation. Complete intersections: equations
    /// cutting the component out together with the quadric.
    pub equations: Vec<MPoly>,
    pub multiplicity: u32,
    /// Geometric genus of each geometric member.
    pub genus: u32,
    /// Number of geometric members (conjugate components over Q).
    pub count: u32,
    /// Degree of each member in the ambient embedding.
    pub degree: Option<u32>,
}

/// Which inventory entry an explicit incidence refers to.
#[derive(Debug, Clone, PartialEq)]
pub enum EntryRef {
    Point(Vec<Rational>),
    Orbit { label: String, member: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceSpec {
    pub entry: EntryRef,
    pub component: String,
    pub member: Option<u32>,
    pub branches: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub ambient: Ambient,
    pub equation: MPoly,
    pub components: Option<Vec<ComponentSpec>>,
    pub orbits: Vec<OrbitSpec>,
    pub incidences: Vec<IncidenceSpec>,
    pub tags: Vec<String>,
}

impl CurveSpec {
    pub fn new(ambient: Ambient, equation: MPoly) -> Result<Self, CurveError> {
        let c = CurveSpec {
            ambient,
            equation,
            components: None,
            orbits: Vec::new(),
            incidences: Vec::new(),
            tags: Vec::new(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn has_tag(&self, t: &str) -> bool {
        self.tags.iter().any(|x| x == t)
    }

    /// Structural checks on degrees, tables and component products.
    pub fn validate(&self) -> Result<(), CurveError> {
        let f = &self.equation;
        if f.is_zero() {
            return Err(CurveError::Domain("equation is zero".into()));
        }
        match &self.ambient {
            Ambient::P1xP1 => {
                bidegree(f)?;
            }
            Ambient::WeightedPlane { weights } => {
                if f.nvars() != 3 || f.vars().weights() != weights {
                    return Err(CurveError::Domain("equation table does not match the plane weights".into()));
                }
                if !f.is_weighted_homogeneous() {
                    return Err(CurveError::Domain("equation is not weighted homogeneous".into()));
                }
            }
            Ambient::CompleteIntersectionP3 { quadric } => {
                if f.nvars() != 4 || quadric.vars() != f.vars() {
                    return Err(CurveError::Domain("complete intersection needs four shared variables".into()));
                }
                if !quadric.is_homogeneous() || quadric.total_degree() != Some(2) {
                    return Err(CurveError::Domain("quadric must be homogeneous of degree 2".into()));
                }
                if !f.is_homogeneous() || f.total_degree() != Some(3) {
                    return Err(CurveError::Domain("cubic must be homogeneous of degree 3".into()));
                }
                if f.div_exact(quadric).is_ok() {
                    return Err(CurveError::Domain("cubic is divisible by the quadric".into()));
                }
            }
        }
        if let (Some(comps), false) = (&self.components, self.is_ci()) {
            let mut prod = MPoly::one(f.vars());
            for c in comps {
                if c.equations.len() != 1 {
                    return Err(CurveError::Domain(format!("planar component `{}` needs one equation", c.label)));
                }
                prod = &prod * &c.equations[0].pow(c.multiplicity);
            }
            if prod.monic() != f.monic() {
                return Err(CurveError::Domain("component product differs from the equation".into()));
            }
        }
        Ok(())
    }

    pub fn is_ci(&self) -> bool {
        matches!(self.ambient, Ambient::CompleteIntersectionP3 { .. })
    }

    pub fn quadric(&self) -> Option<&MPoly> {
        match &self.ambient {
            Ambient::CompleteIntersectionP3 { quadric } => Some(quadric),
            _ => None,
        }
    }
}

/// Bidegree of a bihomogeneous form on `P1 x P1`.
pub fn bidegree(f: &MPoly) -> Result<(u32, u32), CurveError> {
    if f.nvars() != 4 {
        return Err(CurveError::Domain("P1xP1 equation needs four variables".into()));
    }
    let mut d: Option<(u32, u32)> = None;
    for (e, _) in f.terms() {
        let cur = (e[0] + e[1], e[2] + e[3]);
        match d {
            None => d = Some(cur),
            Some(x) if x != cur => return Err(CurveError::Domain("equation is not bihomogeneous".into())),
            _ => {}
        }
    }
    d.ok_or_else(|| CurveError::Domain("equation is zero".into()))
}

/// Arithmetic genus from the ambient and degree.
pub fn arithmetic_genus(c: &CurveSpec) -> Result<i64, CurveError> {
    match &c.ambient {
        Ambient::P1xP1 => {
            let (a, b) = bidegree(&c.equation)?;
            Ok((a as i64 - 1) * (b as i64 - 1))
        }
        Ambient::WeightedPlane { weights } => {
            let d = c.equation.weighted_degree().unwrap_or(0) as i64;
            weighted_plane_genus(*weights, d)
        }
        Ambient::CompleteIntersectionP3 { .. } => Ok(4),
    }
}

/// `d (d - a - b - c) / (2abc) + 1` for a degree-`d` curve on `P(a,b,c)`,
/// valid when every weight divides `d`.
pub fn weighted_plane_genus(w: [u32; 3], d: i64) -> Result<i64, CurveError> {
    if w.iter().any(|&x| d % x as i64 != 0) {
        return Err(CurveError::Unsupported(format!(
            "degree {d} on P({},{},{}) is not a multiple of every weight",
            w[0], w[1], w[2]
        )));
    }
    let s: i64 = w.iter().map(|&x| x as i64).sum();
    let prod: i64 = w.iter().map(|&x| x as i64).product();
    let num = d * (d - s);
    if num % (2 * prod) != 0 {
        return Err(CurveError::Domain("adjunction value is not an integer".into()));
    }
    Ok(num / (2 * prod) + 1)
}

/// Rank of the symmetric matrix of a quadratic form in four variables.
pub fn quadric_rank(q: &MPoly) -> Result<usize, CurveError> {
    if q.nvars() != 4 {
        return Err(CurveError::Domain("quadric must be in four variables".into()));
    }
    Ok(matrix_rank(&symmetric_matrix_of_quadric(q)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InventoryEntry {
    pub chart: String,
    pub point: Option<PointQ>,
    /// Coordinates in the ambient (P3 for complete intersections).
    #[serde(with = "crate::polyring::qserde::opt_vec", default)]
    pub projective: Option<Vec<Rational>>,
    pub class: GermClass,
    pub orbit: Option<Orbit>,
    pub location: Location,
}

impl InventoryEntry {
    pub fn describe(&self) -> String {
        let at = match (&self.projective, &self.orbit) {
            (Some(p), _) => fmt_projective(&normalize_projective(p)),
            (None, Some(o)) => format!("{} #{}/{}", o.label, o.member + 1, o.size),
            _ => "?".into(),
        };
        format!("{} at {}", self.class.label(), at)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityInventory {
    pub entries: Vec<InventoryEntry>,
    pub total_delta: u32,
    pub certified_complete: bool,
}

impl SingularityInventory {
    pub fn new(entries: Vec<InventoryEntry>) -> Self {
        let total_delta = entries.iter().map(|e| e.class.delta).sum();
        SingularityInventory {
            entries,
            total_delta,
            certified_complete: false,
        }
    }

    /// Sorted labels of all entries, e.g. `["A1", "A1", "D4"]`.
    pub fn labels(&self) -> Vec<String> {
        let mut v: Vec<String> = self.entries.iter().map(|e| e.class.label()).collect();
        v.sort();
        v
    }

    /// Index of the entry at the given ambient point.
    pub fn find_point(&self, p: &[Rational]) -> Option<usize> {
        let target = normalize_projective(p);
        self.entries
            .iter()
            .position(|e| e.projective.as_ref().is_some_and(|q| normalize_projective(q) == target))
    }

    pub fn find_orbit(&self, label: &str, member: u32) -> Option<usize> {
        self.entries
            .iter()
            .position(|e| e.orbit.as_ref().is_some_and(|o| o.label == label && o.member == member))
    }
}

/// Extra data from the analysis of a complete intersection.
#[derive(Debug, Clone, PartialEq)]
pub struct CiInfo {
    pub rank: usize,
    pub form: QuadricForm,
    /// Rank 2 only: the cubic meets the double line in three distinct points.
    pub triborough: Option<bool>,
}

fn orbit_entries(orbits: &[OrbitSpec]) -> Vec<InventoryEntry> {
    let mut out = Vec::new();
    for o in orbits {
        for m in 0..o.size {
            out.push(InventoryEntry {
                chart: "orbit".into(),
                point: None,
                projective: None,
                class: o.class.clone(),
                orbit: Some(Orbit {
                    label: o.label.clone(),
                    size: o.size,
                    member: m,
                }),
                location: o.location,
            });
        }
    }
    out
}

/// Singular entries of the curve, before any budget certification.
pub fn singularity_inventory(c: &CurveSpec) -> Result<SingularityInventory, CurveError> {
    Ok(analyze_inventory(c)?.0)
}

/// Inventory plus complete-intersection data.
pub fn analyze_inventory(c: &CurveSpec) -> Result<(SingularityInventory, Option<CiInfo>), CurveError> {
    c.validate()?;
    if c.has_tag("ribbon") || c.has_tag("nonreduced") {
        return Err(CurveError::NonReduced);
    }
    let (mut entries, info) = match &c.ambient {
        Ambient::P1xP1 => {
            let charts = p1xp1_charts(&c.equation)?;
            (analyze_charts(&charts, &|_| Location::Smooth)?, None)
        }
        Ambient::WeightedPlane { .. } => {
            let charts = weighted_plane_charts(&c.equation)?;
            (analyze_charts(&charts, &|_| Location::Smooth)?, None)
        }
        Ambient::CompleteIntersectionP3 { quadric } => {
            let (e, i) = ci_entries(quadric, &c.equation)?;
            (e, Some(i))
        }
    };
    entries.extend(orbit_entries(&c.orbits));
    Ok((SingularityInventory::new(entries), info))
}

/// Rational singular points with their chart ids.
pub fn rational_singular_points(c: &CurveSpec) -> Result<Vec<(String, PointQ)>, CurveError> {
    let inv = singularity_inventory(c)?;
    Ok(inv
        .entries
        .into_iter()
        .filter_map(|e| e.point.map(|p| (e.chart, p)))
        .collect())
}

fn lift_entries(entries: Vec<InventoryEntry>, form: &QuadricForm, prefix: &str) -> Vec<InventoryEntry> {
    entries
        .into_iter()
        .map(|mut e| {
            if let Some(p) = &e.projective {
                e.projective = Some(normalize_projective(&form.point(p)));
            }
            e.chart = format!("{prefix}{}", e.chart);
            e
        })
        .collect()
}

fn ci_entries(q: &MPoly, k: &MPoly) -> Result<(Vec<InventoryEntry>, CiInfo), CurveError> {
    let rank = quadric_rank(q)?;
    let form = quadric_normal_form(q)?;
    match &form {
        QuadricForm::Segre { .. } => {
            let f = form.pullback(k)?;
            let charts = p1xp1_charts(&f)?;
            let e = analyze_charts(&charts, &|_| Location::Smooth)?;
            Ok((lift_entries(e, &form, "segre:"), CiInfo { rank, form, triborough: None }))
        }
        QuadricForm::Cone { .. } => {
            let f = form.pullback(k)?;
            let charts = weighted_plane_charts(&f)?;
            let e = analyze_charts(&charts, &|ch| if ch.vertex { Location::Vertex } else { Location::Smooth })?;
            Ok((lift_entries(e, &form, "cone:"), CiInfo { rank, form, triborough: None }))
        }
        QuadricForm::Planes { l1, l2 } => {
            let (e, tri) = two_planes_entries(k, l1, l2)?;
            Ok((e, CiInfo { rank, form: form.clone(), triborough: Some(tri) }))
        }
    }
}

fn linear_form(vars: &Arc<VarTable>, l: &[Rational]) -> MPoly {
    let mut m = MPoly::zero(vars);
    for (i, c) in l.iter().enumerate() {
        m = &m + &MPoly::var_at(vars, i).scale(c);
    }
    m
}

fn combination(coeffs: &[Rational], basis: &[Vec<Rational>]) -> Vec<Rational> {
    let n = basis[0].len();
    let mut out = vec![Rational::zero(); n];
    for (c, b) in coeffs.iter().zip(basis) {
        for i in 0..n {
            out[i] += c * &b[i];
        }
    }
    out
}

/// Rational roots `[a : b]` of a squarefree binary form and the degree of
/// what is left after removing them.
pub(crate) fn binary_roots(p: &MPoly) -> Result<(Vec<[Rational; 2]>, u32), CurveError> {
    let d = p.total_degree().unwrap_or(0);
    let mut roots = Vec::new();
    let affine = p.specialize(1, &Rational::one());
    let u = affine.to_upoly(0)?;
    let du = u.degree().unwrap_or(0) as u32;
    if du < d {
        roots.push([Rational::one(), Rational::zero()]);
    }
    for r in u.rational_roots() {
        roots.push([r, Rational::one()]);
    }
    let n = roots.len() as u32;
    Ok((roots, d - n))
}

/// The cubic restricted to the double line of a rank-2 quadric, as a binary
/// form in `s, t`, together with the line's basis.
pub fn double_line_cubic(k: &MPoly, l1: &[Rational], l2: &[Rational]) -> (MPoly, Vec<Vec<Rational>>) {
    let basis = kernel_basis(&vec![l1.to_vec(), l2.to_vec()], 4);
    let t = VarTable::unweighted(&["s", "t"]);
    let s = MPoly::var_at(&t, 0);
    let tt = MPoly::var_at(&t, 1);
    let terms = [(s, &basis[0]), (tt, &basis[1])];
    let images = quadric::linear_images(&t, &terms, 4);
    (k.substitute_all(&images, &t).expect("same table"), basis)
}

/// Singular points of `V(l1 l2, K)`: the two plane cubics away from the
/// double line, and the points where the cubic meets the double line. A
/// simple point of `K` on the line is a node formed by one smooth branch in
/// each plane; a multiple one is reported as unsupported.
fn two_planes_entries(k: &MPoly, l1: &[Rational], l2: &[Rational]) -> Result<(Vec<InventoryEntry>, bool), CurveError> {
    let vars = k.vars().clone();
    let lf1 = linear_form(&vars, l1);
    let lf2 = linear_form(&vars, l2);
    let mut entries = Vec::new();
    let pt = VarTable::unweighted(&["a", "b", "c"]);
    for (idx, l) in [l1, l2].into_iter().enumerate() {
        let basis = kernel_basis(&vec![l.to_vec()], 4);
        let [a, b, c] = [0, 1, 2].map(|i| MPoly::var_at(&pt, i));
        let terms = [(a, &basis[0]), (b, &basis[1]), (c, &basis[2])];
        let cubic = k.substitute_all(&quadric::linear_images(&pt, &terms, 4), &pt)?;
        if cubic.is_zero() {
            return Err(CurveError::NonReduced);
        }
        let charts = p2_charts(&cubic)?;
        for mut e in analyze_charts(&charts, &|_| Location::Smooth)? {
            let p = combination(e.projective.as_ref().unwrap(), &basis);
            if lf1.evaluate(&p).is_zero() && lf2.evaluate(&p).is_zero() {
                continue;
            }
            e.projective = Some(normalize_projective(&p));
            e.chart = format!("plane{}:{}", idx + 1, e.chart);
            entries.push(e);
        }
    }
    let (restricted, basis) = double_line_cubic(k, l1, l2);
    if restricted.is_zero() {
        return Err(CurveError::Unsupported("the double line lies on the cubic".into()));
    }
    let factors = crate::polyring::squarefree_factor(&restricted)?;
    if factors.iter().any(|(_, m)| *m > 1) {
        return Err(CurveError::Unsupported(
            "cubic is tangent to the double line of the quadric".into(),
        ));
    }
    let mut orbit_no = 0;
    for (f, _) in &factors {
        let (roots, rest) = binary_roots(f)?;
        for st in roots {
            let st = st.to_vec();
            let p = combination(&st, &basis);
            entries.push(InventoryEntry {
                chart: "double line".into(),
                point: Some(PointQ(st)),
                projective: Some(normalize_projective(&p)),
                class: GermClass::a(1),
                orbit: None,
                location: Location::DoubleLine,
            });
        }
        if rest > 0 {
            orbit_no += 1;
            let label = format!("double line orbit {orbit_no}");
            entries.extend(orbit_entries(&[OrbitSpec {
                label,
                size: rest,
                class: GermClass::a(1),
                location: Location::DoubleLine,
            }]));
        }
    }
    let distinct: u32 = factors.iter().map(|(f, _)| f.total_degree().unwrap_or(0)).sum();
    Ok((entries, distinct == 3))
}

/// Full analysis: inventory, component model, arithmetic genus and the
/// budget check.
#[derive(Debug, Clone)]
pub struct CurveAnalysis {
    pub inventory: SingularityInventory,
    pub model: Option<ComponentModel>,
    pub arithmetic_genus: i64,
    pub ci: Option<CiInfo>,
}

pub fn analyze_curve(c: &CurveSpec) -> Result<CurveAnalysis, CurveError> {
    let (mut inv, ci) = analyze_inventory(c)?;
    let pa = arithmetic_genus(c)?;
    let model = match &c.components {
        Some(_) => Some(build_component_model(c, &inv)?),
        None => None,
    };
    if let Some(m) = &model {
        inv.certified_complete = genus_budget_check(&inv, m, pa);
    }
    Ok(CurveAnalysis {
        inventory: inv,
        model,
        arithmetic_genus: pa,
        ci,
    })
}

/// Render a rational vector as `(a, b, c)`.
pub fn fmt_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, q};

    fn wp(w: [u32; 3], eq: &str) -> CurveSpec {
        let v = VarTable::new(&["x", "y", "z"], &w).unwrap();
        CurveSpec::new(Ambient::WeightedPlane { weights: w }, parse_poly(eq, &v).unwrap()).unwrap()
    }

    #[test]
    fn genus_examples() {
        let v = VarTable::unweighted(&["x0", "x1", "y0", "y1"]);
        let f = parse_poly("x0^3*y0^3 + x1^3*y1^3 + x0*x1^2*y0^2*y1", &v).unwrap();
        let c = CurveSpec::new(Ambient::P1xP1, f).unwrap();
        assert_eq!(arithmetic_genus(&c).unwrap(), 4);
        assert_eq!(arithmetic_genus(&wp([1, 1, 2], "z^3 + x^6 + y^6")).unwrap(), 4);
        assert_eq!(weighted_plane_genus([1, 1, 5], 10).unwrap(), 4);
        assert!(weighted_plane_genus([1, 1, 2], 5).is_err());
    }

    #[test]
    fn rank_examples() {
        let v = VarTable::unweighted(&["x0", "x1", "x2", "x3"]);
        let r = |s: &str| quadric_rank(&parse_poly(s, &v).unwrap()).unwrap();
        assert_eq!(r("x0*x3 - x1*x2"), 4);
        assert_eq!(r("x2^2 - x1*x3"), 3);
        assert_eq!(r("x0*x3"), 2);
    }

    #[test]
    fn c_ab_points() {
        let c = wp([1, 1, 2], "y^2*z^2 + x^6");
        let mut inv = singularity_inventory(&c).unwrap();
        inv.entries.sort_by_key(|e| e.class.label());
        assert_eq!(inv.labels(), vec!["A3", "A5"]);
        let a3 = &inv.entries[0];
        assert_eq!(a3.location, Location::Vertex);
        assert_eq!(a3.projective.as_ref().unwrap(), &vec![q(0), q(0), q(1)]);
        assert_eq!(inv.entries[1].projective.as_ref().unwrap(), &vec![q(0), q(1), q(0)]);
        assert_eq!(inv.total_delta, 5);
    }

    #[test]
    fn smooth_curve_has_no_points() {
        let v = VarTable::unweighted(&["x0", "x1", "y0", "y1"]);
        // a smooth (3,3) form
        let f = parse_poly("x0^3*y0^3 + x1^3*y1^3 + x0^3*y1^3 + x1^3*y0^3 + x0*x1^2*y0^2*y1", &v).unwrap();
        let c = CurveSpec::new(Ambient::P1xP1, f).unwrap();
        assert!(rational_singular_points(&c).unwrap().is_empty());
    }
}
