//! Plane-curve germs at rational points.
//!
//! Intersection numbers come from Fulton's recursion, the Milnor number is
//! the intersection number of the two partials, and the type is read off
//! from the multiplicity and tangent cone.

use crate::polyring::{squarefree_factor, MPoly, PointQ, PolyError, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GermError {
    #[error("germ polynomial is zero")]
    ZeroPolynomial,
    #[error("germ needs a polynomial in exactly two variables")]
    NotPlanar,
    #[error("base point does not lie on the curve")]
    NotOnCurve,
    #[error("germ is non-reduced (repeated component through the point)")]
    NonReduced,
    #[error("singularity is not isolated")]
    NonIsolated,
    #[error("cover germ is not invariant under (x, y) -> (-x, -y)")]
    NotInvariant,
    #[error("inconsistent cover germ: {0}")]
    Inconsistent(String),
    #[error("unsupported germ: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Local intersection number, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IntersectionNumber {
    Finite(u64),
    Infinite,
}

impl IntersectionNumber {
    pub fn finite(self) -> Option<u64> {
        match self {
            IntersectionNumber::Finite(n) => Some(n),
            IntersectionNumber::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GermKind {
    Smooth,
    A(u32),
    D4,
    Other,
}

/// Invariants of a classified germ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GermClass {
    pub kind: GermKind,
    pub mu: u32,
    pub delta: u32,
    pub branches: u32,
    pub multiplicity: u32,
    /// For `Other`: degrees-with-multiplicity of the tangent cone factors.
    pub tangent_cone: Option<Vec<(u32, u32)>>,
    /// For `Other`: the branch count is only a lower bound.
    pub branches_lower_bound: bool,
}

impl GermClass {
    pub fn smooth() -> Self {
        GermClass {
            kind: GermKind::Smooth,
            mu: 0,
            delta: 0,
            branches: 1,
            multiplicity: 1,
            tangent_cone: None,
            branches_lower_bound: false,
        }
    }

    pub fn a(k: u32) -> Self {
        assert!(k >= 1);
        GermClass {
            kind: GermKind::A(k),
            mu: k,
            delta: k.div_ceil(2),
            branches: if k % 2 == 1 { 2 } else { 1 },
            multiplicity: 2,
            tangent_cone: None,
            branches_lower_bound: false,
        }
    }

    pub fn d4() -> Self {
        GermClass {
            kind: GermKind::D4,
            mu: 4,
            delta: 3,
            branches: 3,
            multiplicity: 3,
            tangent_cone: None,
            branches_lower_bound: false,
        }
    }

    /// Short label: `smooth`, `A5`, `D4`, `other(m=4,mu=9)`.
    pub fn label(&self) -> String {
        match self.kind {
            GermKind::Smooth => "smooth".into(),
            GermKind::A(k) => format!("A{k}"),
            GermKind::D4 => "D4".into(),
            GermKind::Other => format!("other(m={},mu={})", self.multiplicity, self.mu),
        }
    }

    /// Parse `smooth`, `A<k>` or `D4`.
    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "smooth" | "Smooth" => Some(Self::smooth()),
            "D4" => Some(Self::d4()),
            _ => {
                let k: u32 = s.strip_prefix('A')?.parse().ok()?;
                if k == 0 {
                    None
                } else {
                    Some(Self::a(k))
                }
            }
        }
    }

    /// `mu = 2 delta - branches + 1`.
    pub fn milnor_formula_holds(&self) -> bool {
        self.mu as i64 == 2 * self.delta as i64 - self.branches as i64 + 1
    }

    pub fn a_index(&self) -> Option<u32> {
        match self.kind {
            GermKind::A(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for GermClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[derive(Serialize, Deserialize)]
struct GermClassJson {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    k: Option<u32>,
    mu: u32,
    delta: u32,
    branches: u32,
    multiplicity: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    tangent_cone: Option<Vec<(u32, u32)>>,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    branches_lower_bound: bool,
}

impl Serialize for GermClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (kind, k) = match self.kind {
            GermKind::Smooth => ("Smooth", None),
            GermKind::A(k) => ("A", Some(k)),
            GermKind::D4 => ("D4", None),
            GermKind::Other => ("Other", None),
        };
        GermClassJson {
            kind: kind.into(),
            k,
            mu: self.mu,
            delta: self.delta,
            branches: self.branches,
            multiplicity: self.multiplicity,
            tangent_cone: self.tangent_cone.clone(),
            branches_lower_bound: self.branches_lower_bound,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GermClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GermClassJson::deserialize(d)?;
        let kind = match (j.kind.as_str(), j.k) {
            ("Smooth", _) => GermKind::Smooth,
            ("A", Some(k)) => GermKind::A(k),
            ("D4", _) => GermKind::D4,
            ("Other", _) => GermKind::Other,
            _ => return Err(serde::de::Error::custom("unknown germ kind")),
        };
        Ok(GermClass {
            kind,
            mu: j.mu,
            delta: j.delta,
            branches: j.branches,
            multiplicity: j.multiplicity,
            tangent_cone: j.tangent_cone,
            branches_lower_bound: j.branches_lower_bound,
        })
    }
}

/// A plane-curve germ: a two-variable polynomial and a point on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    f: MPoly,
    base: PointQ,
}

impl Germ {
    pub fn new(f: MPoly, base: PointQ) -> Result<Self, GermError> {
        if f.nvars() != 2 || base.0.len() != 2 {
            return Err(GermError::NotPlanar);
        }
        if f.is_zero() {
            return Err(GermError::ZeroPolynomial);
        }
        if !f.evaluate(&base.0).is_zero() {
            return Err(GermError::NotOnCurve);
        }
        Ok(Germ { f, base })
    }

    pub fn at_origin(f: MPoly) -> Result<Self, GermError> {
        Self::new(f, PointQ::origin(2))
    }

    pub fn f(&self) -> &MPoly {
        &self.f
    }

    pub fn base(&self) -> &PointQ {
        &self.base
    }

    /// The equation moved so the base point is the origin.
    pub fn local(&self) -> MPoly {
        self.f.translate(&self.base.0)
    }
}

/// Lowest total degree after moving the base point to the origin.
pub fn multiplicity(g: &Germ) -> u32 {
    g.local().order().expect("germ polynomial is nonzero")
}

/// Local intersection number at `p` of two plane curves.
pub fn intersection_multiplicity(f: &MPoly, g: &MPoly, p: &PointQ) -> Result<IntersectionNumber, GermError> {
    if f.nvars() != 2 || g.nvars() != 2 || p.0.len() != 2 {
        return Err(GermError::NotPlanar);
    }
    if *f.vars() != *g.vars() {
        return Err(GermError::Poly(PolyError::VarTableMismatch));
    }
    Ok(fulton_at_origin(f.translate(&p.0), g.translate(&p.0)))
}

/// Leading coefficient and degree of `F(x, 0)`.
fn x_axis_restriction(f: &MPoly) -> Option<(u32, Rational, u32)> {
    // (degree, leading coefficient, order)
    let mut deg: Option<(u32, Rational)> = None;
    let mut ord: Option<u32> = None;
    for (e, c) in f.terms() {
        if e[1] == 0 {
            if deg.as_ref().is_none_or(|(d, _)| e[0] > *d) {
                deg = Some((e[0], c.clone()));
            }
            if ord.is_none_or(|o| e[0] < o) {
                ord = Some(e[0]);
            }
        }
    }
    deg.map(|(d, c)| (d, c, ord.unwrap()))
}

fn fulton_at_origin(mut f: MPoly, mut g: MPoly) -> IntersectionNumber {
    let mut acc: u64 = 0;
    loop {
        if f.is_zero() || g.is_zero() {
            return IntersectionNumber::Infinite;
        }
        if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
            return IntersectionNumber::Finite(acc);
        }
        let rf = x_axis_restriction(&f);
        let rg = x_axis_restriction(&g);
        match (rf, rg) {
            (None, None) => return IntersectionNumber::Infinite,
            (None, Some((_, _, ord))) => {
                // f = y^k h and I(y, g) = ord_x g(x, 0)
                let (h, k) = f.strip_var_power(1);
                acc += k as u64 * ord as u64;
                f = h;
            }
            (Some((_, _, ord)), None) => {
                let (h, k) = g.strip_var_power(1);
                acc += k as u64 * ord as u64;
                g = h;
            }
            (Some((r, lf, _)), Some((s, lg, _))) => {
                if r <= s {
                    let m = vec![s - r, 0];
                    g = &g - &f.shift(&m).scale(&(&lg / &lf));
                } else {
                    let m = vec![r - s, 0];
                    f = &f - &g.shift(&m).scale(&(&lf / &lg));
                }
            }
        }
    }
}

/// Milnor number `I(f_x, f_y)` at the base point.
pub fn milnor_number(g: &Germ) -> Result<u32, GermError> {
    let f = g.local();
    let fx = f.partial_derivative(0);
    let fy = f.partial_derivative(1);
    match fulton_at_origin(fx, fy) {
        IntersectionNumber::Finite(n) => Ok(n as u32),
        IntersectionNumber::Infinite => Err(GermError::NonIsolated),
    }
}

/// Change coordinates so that the rational tangent line `a x + b y` becomes
/// `y = 0`, then blow up once in the chart `y = x y1` and return the strict
/// transform at the origin of that chart.
fn blow_up_along(f: &MPoly, a: &Rational, b: &Rational, m: u32) -> MPoly {
    let vars = f.vars();
    let u = MPoly::var_at(vars, 0);
    let v = MPoly::var_at(vars, 1);
    let aligned = if !b.is_zero() {
        // x = u, y = (v - a u)/b
        let yimg = (&v - &u.scale(a)).scale(&(Rational::one() / b));
        f.substitute_all(&[u.clone(), yimg], vars).unwrap()
    } else {
        // the line is x = 0: swap
        f.substitute_all(&[v.clone(), u.clone()], vars).unwrap()
    };
    let bl = aligned
        .substitute_all(&[u.clone(), &u * &v], vars)
        .unwrap();
    let (st, k) = bl.strip_var_power(0);
    debug_assert!(k >= m);
    st
}

/// Count branches: distinct tangent directions, each multiple rational
/// direction refined by one blow-up. Returns (count, exact).
fn count_branches(f: &MPoly, m: u32) -> (u32, bool, Vec<(u32, u32)>) {
    let cone = f.lowest_form();
    let factors = squarefree_factor(&cone).unwrap_or_default();
    let shape: Vec<(u32, u32)> = factors
        .iter()
        .map(|(p, mult)| (p.total_degree().unwrap_or(0), *mult))
        .collect();
    let mut count = 0;
    let mut exact = true;
    for (p, mult) in &factors {
        let d = p.total_degree().unwrap_or(0);
        if *mult == 1 {
            count += d;
            continue;
        }
        // each direction in this factor has multiplicity `mult`
        if d == 1 {
            let a = p.coeff(&[1, 0]);
            let b = p.coeff(&[0, 1]);
            let st = blow_up_along(f, &a, &b, m);
            if !st.constant_term().is_zero() {
                // cannot happen: the direction lies on the strict transform
                count += 1;
                exact = false;
                continue;
            }
            let ord = st.order().unwrap_or(0);
            if ord == 1 {
                count += 1;
                continue;
            }
            let sub = squarefree_factor(&st.lowest_form()).unwrap_or_default();
            let distinct: u32 = sub.iter().map(|(q, _)| q.total_degree().unwrap_or(0)).sum();
            if sub.iter().any(|(_, k)| *k > 1) {
                exact = false;
            }
            count += distinct;
        } else {
            count += d;
            exact = false;
        }
    }
    (count, exact, shape)
}

/// Classify a reduced plane-curve germ.
pub fn classify_germ(g: &Germ) -> Result<GermClass, GermError> {
    let f = g.local();
    let m = f.order().ok_or(GermError::ZeroPolynomial)?;
    if m == 0 {
        return Err(GermError::NotOnCurve);
    }
    if m == 1 {
        return Ok(GermClass::smooth());
    }
    let mu = match fulton_at_origin(f.partial_derivative(0), f.partial_derivative(1)) {
        IntersectionNumber::Finite(n) => n as u32,
        IntersectionNumber::Infinite => return Err(GermError::NonReduced),
    };
    if m == 2 {
        return Ok(GermClass::a(mu));
    }
    if m == 3 {
        let cone = f.lowest_form();
        let sf = squarefree_factor(&cone)?;
        if sf.iter().all(|(_, k)| *k == 1) {
            if mu != 4 {
                return Err(GermError::Inconsistent(format!(
                    "ordinary triple point with Milnor number {mu}"
                )));
            }
            return Ok(GermClass::d4());
        }
    }
    let (r, exact, shape) = count_branches(&f, m);
    let r = r.max(1);
    // delta from mu = 2 delta - r + 1
    let num = mu + r - 1;
    let delta = num.div_ceil(2);
    let r = if num % 2 == 1 { r + 1 } else { r };
    Ok(GermClass {
        kind: GermKind::Other,
        mu,
        delta,
        branches: r,
        multiplicity: m,
        tangent_cone: Some(shape),
        branches_lower_bound: !exact || num % 2 == 1,
    })
}

/// The double-cover germ at the vertex of a weighted plane with weights
/// `(1, 1, 2)`: a polynomial in the two weight-one coordinates that is even or
/// odd under `(x, y) -> (-x, -y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexGerm {
    cover: Germ,
}

impl VertexGerm {
    pub fn new(f: MPoly) -> Result<Self, GermError> {
        let cover = Germ::at_origin(f)?;
        let mut parity = None;
        for (e, _) in cover.f.terms() {
            let p = (e[0] + e[1]) % 2;
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return Err(GermError::NotInvariant),
                _ => {}
            }
        }
        Ok(VertexGerm { cover })
    }

    pub fn cover(&self) -> &Germ {
        &self.cover
    }
}

/// Type of the curve at the vertex from the type of its invariant cover:
/// a smooth cover gives a smooth point and `A(2k-1)` gives `A(k)`.
pub fn classify_vertex(v: &VertexGerm) -> Result<GermClass, GermError> {
    let c = classify_germ(&v.cover)?;
    match c.kind {
        GermKind::Smooth => Ok(GermClass::smooth()),
        GermKind::A(k) if k % 2 == 1 => Ok(GermClass::a(k.div_ceil(2))),
        GermKind::A(k) => Err(GermError::Inconsistent(format!(
            "invariant cover germ classified as A{k}"
        ))),
        _ => Err(GermError::Unsupported(format!(
            "vertex cover of type {}",
            c.label()
        ))),
    }
}

/// Two-variable table `x, y` for local computations.
pub fn local_vars() -> Arc<crate::polyring::VarTable> {
    crate::polyring::VarTable::unweighted(&["x", "y"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, q, VarTable};

    fn p(s: &str) -> MPoly {
        parse_poly(s, &local_vars()).unwrap()
    }

    fn im(f: &str, g: &str) -> IntersectionNumber {
        intersection_multiplicity(&p(f), &p(g), &PointQ::origin(2)).unwrap()
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(im("x", "y"), IntersectionNumber::Finite(1));
        assert_eq!(im("y", "y - x^2"), IntersectionNumber::Finite(2));
        assert_eq!(im("y^2 - x^3", "3*x^2"), IntersectionNumber::Finite(4));
        assert_eq!(im("x + 1", "y"), IntersectionNumber::Finite(0));
        assert_eq!(im("x*y", "y*(x + y)"), IntersectionNumber::Infinite);
        // away from the origin
        let r = intersection_multiplicity(&p("y - 1"), &p("(x - 2)^2 + y - 1"), &PointQ(vec![q(2), q(1)]));
        assert_eq!(r.unwrap(), IntersectionNumber::Finite(2));
    }

    #[test]
    fn milnor_examples() {
        let mu = |s: &str| milnor_number(&Germ::at_origin(p(s)).unwrap()).unwrap();
        assert_eq!(mu("y^2 - x^3"), 2);
        assert_eq!(mu("y^2 - x^6"), 5);
        assert_eq!(mu("x^3 + y^3"), 4);
        assert_eq!(
            milnor_number(&Germ::at_origin(p("y^2")).unwrap()),
            Err(GermError::NonIsolated)
        );
    }

    #[test]
    fn multiplicity_examples() {
        let m = |s: &str| multiplicity(&Germ::at_origin(p(s)).unwrap());
        assert_eq!(m("y^2 - x^3"), 2);
        assert_eq!(m("x^3 + y^3"), 3);
        assert_eq!(m("x"), 1);
    }

    #[test]
    fn classify_examples() {
        let c = |s: &str| classify_germ(&Germ::at_origin(p(s)).unwrap()).unwrap();
        assert_eq!(c("x*y"), GermClass::a(1));
        assert_eq!(c("x^3 + y^3"), GermClass::d4());
        assert_eq!(c("y - x^2"), GermClass::smooth());
        assert_eq!(c("y^2 - x^10"), GermClass::a(9));
        assert_eq!(c("y^2 - x^5 + x*y^3"), GermClass::a(4));
        assert_eq!(
            classify_germ(&Germ::at_origin(p("y^2*(x - y)")).unwrap()),
            Err(GermError::NonReduced)
        );
    }

    #[test]
    fn other_types_keep_milnor_formula() {
        // E6: y^3 - x^4 (one branch), D5: x^2 y - y^4 (two branches)
        let e6 = classify_germ(&Germ::at_origin(p("y^3 - x^4")).unwrap()).unwrap();
        assert_eq!((e6.kind, e6.mu, e6.branches, e6.delta), (GermKind::Other, 6, 1, 3));
        assert!(!e6.branches_lower_bound);
        let d5 = classify_germ(&Germ::at_origin(p("x^2*y - y^4")).unwrap()).unwrap();
        assert_eq!((d5.mu, d5.branches, d5.delta), (5, 2, 3));
        // ordinary quadruple point
        let x4 = classify_germ(&Germ::at_origin(p("x*y*(x - y)*(x + y)")).unwrap()).unwrap();
        assert_eq!((x4.mu, x4.branches, x4.delta), (9, 4, 6));
        for g in [e6, d5, x4] {
            assert!(g.milnor_formula_holds());
        }
    }

    #[test]
    fn vertex_rule() {
        let v = |s: &str| classify_vertex(&VertexGerm::new(p(s)).unwrap());
        assert_eq!(v("y^2 - x^6").unwrap(), GermClass::a(3));
        assert_eq!(v("y^2 - x^8").unwrap(), GermClass::a(4));
        assert_eq!(v("x*y").unwrap(), GermClass::a(1));
        assert_eq!(v("x + y^3").unwrap(), GermClass::smooth());
        assert_eq!(VertexGerm::new(p("y^2 - x^3")), Err(GermError::NotInvariant));
    }

    #[test]
    fn node_cover_image_is_planar_node() {
        // branches x = 0 and y = 0 of the cover xy, pushed to (u, v, w) =
        // (x^2, xy, y^2), both lie in v = 0 and there cut out u w = 0
        let w = VarTable::unweighted(&["u", "w"]);
        let image = parse_poly("u*w", &w).unwrap();
        let c = classify_germ(&Germ::at_origin(image).unwrap()).unwrap();
        assert_eq!(c.delta, 1);
        assert_eq!(c, GermClass::a(1));
        let cover = classify_vertex(&VertexGerm::new(p("x*y")).unwrap()).unwrap();
        assert_eq!(cover.delta, c.delta);
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&GermClass::a(5)).unwrap();
        assert_eq!(s, r#"{"kind":"A","k":5,"mu":5,"delta":3,"branches":2,"multiplicity":2}"#);
        let back: GermClass = serde_json::from_str(&s).unwrap();
        assert_eq!(back, GermClass::a(5));
    }
}
