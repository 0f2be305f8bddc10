//! One-parameter-subgroup limits, normal forms of sextics on `P(1,1,2)` with
//! an `A3` or `A4` point at the vertex, and verification of explicit test
//! configurations.
//!
//! Convention for a 1-PS with weights `w`: the curve `rho(t)_* C` has equation
//! `F(t^{-w_0} x_0, ..., t^{-w_n} x_n)`, so the term `x^e` picks up
//! `t^{-w.e}`. Clearing the lowest power of `t` and setting `t = 0` keeps the
//! terms of largest `w.e`. Example: for `[x, y, z] -> [x, t^-1 y, t z]`, that
//! is `w = (0, -1, 1)`, the term `y^2 x^4` gets `t^{2}` and disappears while
//! `y^2 z^2` gets `t^0` and survives.

use crate::germ::{classify_germ, classify_vertex, local_vars, Germ, GermError, GermKind, VertexGerm};
use crate::polyring::{fmt_rational, parse_poly, q, MPoly, PolyError, Rational, VarTable};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegenError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("4A = B^2: the standard form is a double curve (ribbon direction)")]
    RibbonDirection,
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Germ(#[from] GermError),
}

/// Integer weight of each coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnePS {
    pub weights: BTreeMap<String, i64>,
}

impl OnePS {
    pub fn new<S: AsRef<str>>(pairs: &[(S, i64)]) -> Self {
        OnePS {
            weights: pairs.iter().map(|(n, w)| (n.as_ref().to_string(), *w)).collect(),
        }
    }

    fn vector(&self, vars: &VarTable) -> Result<Vec<i64>, DegenError> {
        vars.names()
            .iter()
            .map(|n| {
                self.weights
                    .get(n)
                    .copied()
                    .ok_or_else(|| DegenError::Domain(format!("no weight for variable `{n}`")))
            })
            .collect()
    }
}

/// Weight `w.e` of every term.
pub fn term_weights(f: &MPoly, rho: &OnePS) -> Result<Vec<i64>, DegenError> {
    let w = rho.vector(f.vars())?;
    Ok(f.monomial_weights(&w).into_iter().map(|(_, k)| k).collect())
}

/// All terms have the same weight.
pub fn is_invariant(f: &MPoly, rho: &OnePS) -> Result<bool, DegenError> {
    let ws = term_weights(f, rho)?;
    Ok(ws.windows(2).all(|p| p[0] == p[1]))
}

/// `lim_{t -> 0} rho(t)_* V(f)`: the terms of largest weight.
pub fn one_ps_limit(f: &MPoly, rho: &OnePS) -> Result<MPoly, DegenError> {
    let w = rho.vector(f.vars())?;
    let Some(top) = f.monomial_weights(&w).into_iter().map(|(_, k)| k).max() else {
        return Ok(f.clone());
    };
    Ok(f.filter_terms(|e| e.iter().zip(&w).map(|(&a, &b)| a as i64 * b).sum::<i64>() == top))
}

/// `F = y^2 z^2 + B x^3 y z + A x^6 + y^2 h4(x, y)` together with the change
/// of coordinates that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormA3 {
    pub a: Rational,
    pub b: Rational,
    /// Binary quartic in the first two variables of the input table.
    pub h4: MPoly,
    pub v: Rational,
    /// Quadratic form in the first two variables.
    pub q: MPoly,
    /// `(x_old, y_old) = M (x, y)`, applied before the unipotent step.
    pub alignment: [[Rational; 2]; 2],
    /// The aligned equation was divided by this constant.
    pub scale: Rational,
    pub standard: MPoly,
}

/// `y^2 z^2 + B x^3 y z + A x^6 + y^2 h4` over a table `x, y, z`.
pub fn a3_standard_form(vars: &Arc<VarTable>, a: &Rational, b: &Rational, h4: &MPoly) -> MPoly {
    let x = MPoly::var_at(vars, 0);
    let y = MPoly::var_at(vars, 1);
    let z = MPoly::var_at(vars, 2);
    let y2 = y.pow(2);
    &(&(&(&y2 * &z.pow(2)) + &(&(&x.pow(3) * &y) * &z).scale(b)) + &x.pow(6).scale(a)) + &(&y2 * h4)
}

/// `F(x - v y, y, z - q(x - v y, y))`: undo the unipotent change
/// `(x, y, z) -> (x + v y, y, z + q(x, y))`.
pub fn unipotent_scramble(f: &MPoly, v: &Rational, q2: &MPoly) -> Result<MPoly, DegenError> {
    let vars = f.vars().clone();
    let x = MPoly::var_at(&vars, 0);
    let y = MPoly::var_at(&vars, 1);
    let z = MPoly::var_at(&vars, 2);
    let xs = &x - &y.scale(v);
    let qs = q2.substitute_all(&[xs.clone(), y.clone(), z.clone()], &vars)?;
    Ok(f.substitute_all(&[xs, y, &z - &qs], &vars)?)
}

fn apply_unipotent(f: &MPoly, v: &Rational, q2: &MPoly) -> Result<MPoly, DegenError> {
    let vars = f.vars().clone();
    let x = MPoly::var_at(&vars, 0);
    let y = MPoly::var_at(&vars, 1);
    let z = MPoly::var_at(&vars, 2);
    Ok(f.substitute_all(&[&x + &y.scale(v), y, &z + q2], &vars)?)
}

/// Equation after moving the rank-one `z^2` coefficient to `y^2`.
struct Aligned {
    f: MPoly,
    alignment: [[Rational; 2]; 2],
    scale: Rational,
}

fn coeff_xy(f: &MPoly, i: u32, j: u32, k: u32) -> Rational {
    f.coeff(&[i, j, k])
}

fn check_cone_sextic(f: &MPoly) -> Result<(), DegenError> {
    let w = f.vars().weights();
    if w != [1, 1, 2] {
        return Err(DegenError::Domain("expected a table with weights (1, 1, 2)".into()));
    }
    if f.is_zero() || !f.is_weighted_homogeneous() || f.weighted_degree() != Some(6) {
        return Err(DegenError::Domain("expected a sextic on P(1,1,2)".into()));
    }
    Ok(())
}

/// Move the tangent line at the vertex to `y = 0` and scale so that the
/// `z^2` coefficient is `y^2`.
fn align_vertex(f: &MPoly) -> Result<Aligned, DegenError> {
    check_cone_sextic(f)?;
    let vars = f.vars().clone();
    if !coeff_xy(f, 0, 0, 3).is_zero() {
        return Err(DegenError::Precondition("the vertex is not on the curve".into()));
    }
    let (p, r, s) = (coeff_xy(f, 2, 0, 2), coeff_xy(f, 1, 1, 2), coeff_xy(f, 0, 2, 2));
    if p.is_zero() && r.is_zero() && s.is_zero() {
        return Err(DegenError::Precondition("no z^2 term: the vertex is worse than an A singularity".into()));
    }
    if &r * &r != q(4) * &p * &s {
        return Err(DegenError::Precondition("the z^2 coefficient has rank two: the vertex is a node".into()));
    }
    // the z^2 coefficient is a multiple of l^2, l = alpha x + beta y
    let (alpha, beta) = if !p.is_zero() {
        (Rational::one(), &r / (q(2) * &p))
    } else {
        (Rational::zero(), Rational::one())
    };
    let x = MPoly::var_at(&vars, 0);
    let y = MPoly::var_at(&vars, 1);
    let z = MPoly::var_at(&vars, 2);
    let (images, m) = if !alpha.is_zero() {
        // x_old = (y - beta x) / alpha, y_old = x
        (
            vec![(&y - &x.scale(&beta)).scale(&alpha.recip()), x.clone(), z],
            [[-&beta / &alpha, alpha.recip()], [Rational::one(), Rational::zero()]],
        )
    } else {
        (
            vec![x.clone(), y.scale(&beta.recip()), z],
            [[Rational::one(), Rational::zero()], [Rational::zero(), beta.recip()]],
        )
    };
    let g = f.substitute_all(&images, &vars)?;
    let lead = coeff_xy(&g, 0, 2, 2);
    debug_assert!(!lead.is_zero());
    Ok(Aligned {
        f: g.scale(&lead.recip()),
        alignment: m,
        scale: lead,
    })
}

/// The cover germ `F(x, y, 1)` at the origin.
fn vertex_class(f: &MPoly) -> Result<crate::germ::GermClass, DegenError> {
    let t = local_vars();
    let images = vec![MPoly::var_at(&t, 0), MPoly::var_at(&t, 1), MPoly::one(&t)];
    let cover = f.substitute_all(&images, &t)?;
    Ok(classify_vertex(&VertexGerm::new(cover)?)?)
}

fn cover_class(f: &MPoly) -> Result<crate::germ::GermClass, DegenError> {
    let t = local_vars();
    let images = vec![MPoly::var_at(&t, 0), MPoly::var_at(&t, 1), MPoly::one(&t)];
    let cover = f.substitute_all(&images, &t)?;
    Ok(classify_germ(&Germ::at_origin(cover)?)?)
}

/// Put a sextic with an `A3` point at the vertex into the standard form.
pub fn a3_normal_form(f: &MPoly) -> Result<NormalFormA3, DegenError> {
    let al = align_vertex(f)?;
    let g = &al.f;
    let vars = g.vars().clone();
    if !coeff_xy(g, 4, 0, 1).is_zero() {
        return Err(DegenError::Precondition("x^4 z term present: the vertex is A2".into()));
    }
    let b = coeff_xy(g, 3, 1, 1);
    let a = coeff_xy(g, 6, 0, 0);
    let disc = q(4) * &a - &b * &b;
    if disc.is_zero() {
        return Err(DegenError::RibbonDirection);
    }
    let vc = vertex_class(g)?;
    if vc.kind != GermKind::A(3) {
        return Err(DegenError::Precondition(format!("vertex is {}, not A3", vc.label())));
    }
    let a2 = coeff_xy(g, 2, 2, 1);
    let b5 = coeff_xy(g, 5, 1, 0);
    let v = -(&b5 - &b * &a2 / q(2)) / (qf32() * &disc);

    let x = MPoly::var_at(&vars, 0);
    let y = MPoly::var_at(&vars, 1);
    let z = MPoly::var_at(&vars, 2);
    let g4 = z_coefficient(g, 1);
    let g4v = g4.substitute_all(&[&x + &y.scale(&v), y.clone(), z.clone()], &vars)?;
    let num = &(&x.pow(3) * &y).scale(&b) - &g4v;
    let q2 = num.div_exact(&y.pow(2).scale(&q(2)))?;
    let moved = apply_unipotent(g, &v, &q2)?;
    let g6s = z_coefficient(&moved, 0);
    let h4 = (&g6s - &x.pow(6).scale(&a)).div_exact(&y.pow(2))?;
    let standard = a3_standard_form(&vars, &a, &b, &h4);
    if moved != standard {
        return Err(DegenError::Domain("unipotent step did not reach the standard form".into()));
    }
    Ok(NormalFormA3 {
        a,
        b,
        h4,
        v,
        q: q2,
        alignment: al.alignment,
        scale: al.scale,
        standard,
    })
}

fn qf32() -> Rational {
    Rational::new(3.into(), 2.into())
}

/// Coefficient of `z^k` as a polynomial over the same table.
fn z_coefficient(f: &MPoly, k: usize) -> MPoly {
    f.coefficients_in(2).get(k).cloned().unwrap_or_else(|| MPoly::zero(f.vars()))
}

/// `y^2 z^2 - 2 x^3 y z + x^6 - x^5 y + y^2 h4`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormA4 {
    pub equation: MPoly,
    pub h4: MPoly,
}

/// Normalize a sextic with an `A4` point at the vertex.
///
/// After aligning the tangent line, `z -> z + q` removes every `z`-linear term
/// except `c3 x^3 y z`, and the diagonal change `(x, y, z) -> (x, mu y, nu z)`
/// with `nu = -b5 / u`, `mu = -u^2 / b5` (where `c3 = -2u`) brings the
/// coefficients of `x^3 y z` and `x^5 y` to `-2` and `-1`.
pub fn a4_vertex_normal_form(f: &MPoly) -> Result<NormalFormA4, DegenError> {
    let al = align_vertex(f)?;
    let g = &al.f;
    let vars = g.vars().clone();
    let vc = vertex_class(g)?;
    if vc.kind != GermKind::A(4) {
        return Err(DegenError::Precondition(format!("vertex is {}, not A4", vc.label())));
    }
    let x = MPoly::var_at(&vars, 0);
    let y = MPoly::var_at(&vars, 1);
    let z = MPoly::var_at(&vars, 2);
    let c3 = coeff_xy(g, 3, 1, 1);
    let g4 = z_coefficient(g, 1);
    let rest = &g4 - &(&x.pow(3) * &y).scale(&c3);
    let q2 = rest.div_exact(&y.pow(2).scale(&q(-2)))?;
    let g2 = apply_unipotent(g, &Rational::zero(), &q2)?;
    let u = -&c3 / q(2);
    let b5 = coeff_xy(&g2, 5, 1, 0);
    if u.is_zero() || b5.is_zero() {
        return Err(DegenError::Precondition("b5 = 0 after alignment, which contradicts an A4 vertex".into()));
    }
    if coeff_xy(&g2, 6, 0, 0) != &u * &u {
        return Err(DegenError::Precondition("x^6 coefficient is not u^2".into()));
    }
    let nu = -&b5 / &u;
    let mu = -(&u * &u) / &b5;
    let scaled = g2.substitute_all(&[x.clone(), y.scale(&mu), z.scale(&nu)], &vars)?;
    let lead = coeff_xy(&scaled, 0, 2, 2);
    let out = scaled.scale(&lead.recip());
    let head = parse_in("y^2*z^2 - 2*x^3*y*z + x^6 - x^5*y", &rename_xyz(&vars))?;
    let head = head.substitute_all(&[x.clone(), y.clone(), z.clone()], &vars)?;
    let h4 = (&out - &head).div_exact(&y.pow(2))?;
    if h4.degree_in(2).unwrap_or(0) > 0 || !(h4.is_zero() || h4.total_degree() == Some(4)) {
        return Err(DegenError::Domain("remainder is not a binary quartic".into()));
    }
    for (e, want) in [([6, 0, 0], 1), ([5, 1, 0], -1), ([3, 1, 1], -2), ([0, 2, 2], 1)] {
        if out.coeff(&e) != q(want) {
            return Err(DegenError::Domain("rescaling did not reach the normal form".into()));
        }
    }
    let cover = cover_class(&out)?;
    if cover.kind != GermKind::A(7) {
        return Err(DegenError::Domain(format!("normalized cover is {}, not A7", cover.label())));
    }
    Ok(NormalFormA4 { equation: out, h4 })
}

/// A table named `x, y, z` with weights `(1, 1, 2)`, for parsing fixed forms.
fn rename_xyz(_: &Arc<VarTable>) -> Arc<VarTable> {
    VarTable::new(&["x", "y", "z"], &[1, 1, 2]).expect("valid table")
}

/// A named substitution from `source` coordinates into `target` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub source: Vec<String>,
    pub source_grading: Vec<u32>,
    pub target: Vec<String>,
    pub target_grading: Vec<u32>,
    /// Target variable -> polynomial in the source variables.
    pub map: BTreeMap<String, String>,
}

/// Pull the family back to the fiber over `parameter_value` along an
/// embedding; the ambient equations must vanish and the curve equation must
/// be proportional to `expected` (written in the source variables).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCheck {
    pub name: String,
    pub parameter_value: String,
    pub embedding: String,
    pub expected: String,
}

/// Re-embed the fiber of `fiber` into a second ambient: the ambient equation
/// pulls back to zero, the relation `eliminate - (...)` pulls back to the
/// fiber curve, and eliminating gives `expected`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetCheck {
    pub name: String,
    pub fiber: String,
    pub embedding: String,
    pub ambient: String,
    pub relation: String,
    pub eliminate: String,
    pub expected: String,
}

/// A family over the affine line with a torus action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestConfiguration {
    pub variables: Vec<String>,
    /// Projective weights; the parameter has weight 0.
    pub grading: Vec<u32>,
    pub parameter: String,
    /// Torus weight of every variable, parameter included.
    pub weights: BTreeMap<String, i64>,
    /// Ambient equations first, the curve equation last.
    pub equations: Vec<String>,
    pub embeddings: BTreeMap<String, Embedding>,
    pub fibers: Vec<FiberCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestConfigurationReport {
    pub checks: Vec<CheckOutcome>,
}

impl TestConfigurationReport {
    pub fn all_passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// `a = c b` for some nonzero rational `c`.
pub fn proportional(a: &MPoly, b: &MPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (e, cb) = b.terms().next().expect("nonzero");
    let ca = a.coeff(e);
    if ca.is_zero() {
        return false;
    }
    *a == b.scale(&(&ca / cb))
}

fn parse_in(s: &str, vars: &Arc<VarTable>) -> Result<MPoly, DegenError> {
    parse_poly(s, vars).map_err(|e| DegenError::Domain(format!("cannot parse `{s}`: {e}")))
}

fn graded_degrees(f: &MPoly, grading: &[i64]) -> Vec<i64> {
    let mut d: Vec<i64> = f.monomial_weights(grading).into_iter().map(|(_, k)| k).collect();
    d.sort();
    d.dedup();
    d
}

fn outcome(name: String, passed: bool, lhs: String, rhs: String) -> CheckOutcome {
    CheckOutcome { name, passed, lhs, rhs }
}

struct LoadedEmbedding {
    source: Arc<VarTable>,
    bindings: HashMap<String, MPoly>,
}

fn load_embedding(name: &str, e: &Embedding, report: &mut Vec<CheckOutcome>) -> Result<LoadedEmbedding, DegenError> {
    let source = VarTable::new(&e.source, &e.source_grading)?;
    let mut bindings = HashMap::new();
    let mut ratio: Option<Rational> = None;
    let mut graded = true;
    for (t, w) in e.target.iter().zip(&e.target_grading) {
        let img = e
            .map
            .get(t)
            .ok_or_else(|| DegenError::Domain(format!("embedding `{name}` has no image for `{t}`")))?;
        let p = parse_in(img, &source)?;
        match p.weighted_degree() {
            Some(d) if p.is_weighted_homogeneous() => {
                let r = Rational::new((d as i64).into(), (*w as i64).into());
                if ratio.get_or_insert(r.clone()) != &r {
                    graded = false;
                }
            }
            _ => graded = false,
        }
        bindings.insert(t.clone(), p);
    }
    report.push(outcome(
        format!("{name} respects the weighted gradings"),
        graded,
        e.map.iter().map(|(k, v)| format!("{k} -> {v}")).collect::<Vec<_>>().join(", "),
        ratio.map(|r| format!("degree ratio {}", fmt_rational(&r))).unwrap_or_default(),
    ));
    Ok(LoadedEmbedding { source, bindings })
}

/// Check torus invariance of the family and every stated fiber identity by
/// exact substitution.
pub fn verify_test_configuration(tc: &TestConfiguration) -> Result<TestConfigurationReport, DegenError> {
    let n = tc.variables.len();
    if tc.grading.len() != n {
        return Err(DegenError::Domain("grading and variables differ in length".into()));
    }
    let family = VarTable::unweighted(&tc.variables);
    let p_idx = family
        .index(&tc.parameter)
        .ok_or_else(|| DegenError::Domain(format!("parameter `{}` is not a variable", tc.parameter)))?;
    let eqs: Vec<MPoly> = tc.equations.iter().map(|s| parse_in(s, &family)).collect::<Result<_, _>>()?;
    if eqs.is_empty() {
        return Err(DegenError::Domain("no equations".into()));
    }
    let rho = OnePS {
        weights: tc.weights.clone(),
    };
    let grading: Vec<i64> = tc.grading.iter().map(|&g| g as i64).collect();
    let mut checks = Vec::new();
    for (i, (s, f)) in tc.equations.iter().zip(&eqs).enumerate() {
        let tw = {
            let mut v = term_weights(f, &rho)?;
            v.sort();
            v.dedup();
            v
        };
        checks.push(outcome(
            format!("equation {} is torus semi-invariant", i + 1),
            tw.len() == 1,
            s.clone(),
            format!("torus weights {tw:?}"),
        ));
        let gd = graded_degrees(f, &grading);
        checks.push(outcome(
            format!("equation {} is weighted homogeneous", i + 1),
            gd.len() == 1,
            s.clone(),
            format!("degrees {gd:?}"),
        ));
    }
    let mut loaded = BTreeMap::new();
    for (name, e) in &tc.embeddings {
        loaded.insert(name.clone(), load_embedding(name, e, &mut checks)?);
    }
    let mut fiber_curves: BTreeMap<String, MPoly> = BTreeMap::new();
    for fc in &tc.fibers {
        let emb = loaded
            .get(&fc.embedding)
            .ok_or_else(|| DegenError::Domain(format!("unknown embedding `{}`", fc.embedding)))?;
        let value = crate::polyring::parse_rational(&fc.parameter_value)
            .ok_or_else(|| DegenError::Domain(format!("bad parameter value `{}`", fc.parameter_value)))?;
        let mut pulled = Vec::new();
        for f in &eqs {
            let fs = f.specialize(p_idx, &value);
            pulled.push(fs.substitute(&emb.bindings, &emb.source)?);
        }
        let curve = pulled.pop().expect("nonempty");
        for (i, amb) in pulled.iter().enumerate() {
            checks.push(outcome(
                format!("{}: ambient equation {} vanishes on the image", fc.name, i + 1),
                amb.is_zero(),
                amb.to_string(),
                "0".into(),
            ));
        }
        let expected = parse_in(&fc.expected, &emb.source)?;
        checks.push(outcome(
            format!("{}: curve equation", fc.name),
            proportional(&curve, &expected),
            curve.to_string(),
            expected.to_string(),
        ));
        fiber_curves.insert(fc.name.clone(), curve);
    }
    if let Some(t) = &tc.target {
        let emb = loaded
            .get(&t.embedding)
            .ok_or_else(|| DegenError::Domain(format!("unknown embedding `{}`", t.embedding)))?;
        let e = &tc.embeddings[&t.embedding];
        let target = VarTable::new(&e.target, &e.target_grading)?;
        let ambient = parse_in(&t.ambient, &target)?;
        let relation = parse_in(&t.relation, &target)?;
        let expected = parse_in(&t.expected, &target)?;
        let fiber = fiber_curves
            .get(&t.fiber)
            .ok_or_else(|| DegenError::Domain(format!("unknown fiber `{}`", t.fiber)))?;
        let amb_pb = ambient.substitute(&emb.bindings, &emb.source)?;
        checks.push(outcome(
            format!("{}: ambient pulls back to zero", t.name),
            amb_pb.is_zero(),
            amb_pb.to_string(),
            "0".into(),
        ));
        let rel_pb = relation.substitute(&emb.bindings, &emb.source)?;
        checks.push(outcome(
            format!("{}: relation pulls back to the fiber curve", t.name),
            proportional(&rel_pb, fiber),
            rel_pb.to_string(),
            fiber.to_string(),
        ));
        let k = target
            .index(&t.eliminate)
            .ok_or_else(|| DegenError::Domain(format!("unknown variable `{}`", t.eliminate)))?;
        let coeffs = relation.coefficients_in(k);
        if coeffs.len() != 2 || !coeffs[1].is_constant() || coeffs[1].is_zero() {
            return Err(DegenError::Domain("relation must be linear in the eliminated variable".into()));
        }
        let solved = coeffs[0].scale(&(-coeffs[1].constant_term()).recip());
        let mut b = HashMap::new();
        b.insert(t.eliminate.clone(), solved);
        let eliminated = ambient.substitute(&b, &target)?;
        checks.push(outcome(
            format!("{}: eliminated equation", t.name),
            proportional(&eliminated, &expected),
            eliminated.to_string(),
            expected.to_string(),
        ));
    }
    Ok(TestConfigurationReport { checks })
}

/// The family degenerating a sextic with an `A4` vertex to `x2^2 = x0^5 x1^5`,
/// with `h4 = sum b_i x^i y^(4-i)`.
pub fn a4_cone_test_configuration(b: &[Rational; 5]) -> TestConfiguration {
    let names = ["z0", "z1", "z2", "z3", "s"];
    let fam = VarTable::unweighted(&names);
    let mut curve = parse_poly("z3^2 - z0^2*z1^2*z2 - s*z0*z1^2*z3", &fam).expect("fixed form");
    for (i, bi) in b.iter().enumerate() {
        let i = i as u32;
        curve = &curve + &MPoly::monomial(&fam, vec![6 - i, i, 0, 0, 10 - 2 * i], bi.clone());
    }
    let cone = VarTable::new(&["x", "y", "z"], &[1, 1, 2]).expect("valid table");
    let mut general = parse_poly("y^2*z^2 - 2*x^3*y*z + x^6 - x^5*y", &cone).expect("fixed form");
    for (i, bi) in b.iter().enumerate() {
        let i = i as u32;
        general = &general + &MPoly::monomial(&cone, vec![i, 6 - i, 0], bi.clone());
    }
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let map = |v: &[(&str, &str)]| v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let mut embeddings = BTreeMap::new();
    embeddings.insert(
        "iota".to_string(),
        Embedding {
            source: s(&["x", "y", "z"]),
            source_grading: vec![1, 1, 2],
            target: s(&["z0", "z1", "z2", "z3"]),
            target_grading: vec![1, 1, 2, 3],
            map: map(&[("z0", "y"), ("z1", "x"), ("z2", "z"), ("z3", "x^3 - y*z")]),
        },
    );
    embeddings.insert(
        "iota_special".to_string(),
        Embedding {
            source: s(&["y0", "y1", "y2"]),
            source_grading: vec![1, 2, 9],
            target: s(&["z0", "z1", "z2", "z3"]),
            target_grading: vec![1, 1, 2, 3],
            map: map(&[("z0", "y0^3"), ("z1", "y0*y1"), ("z2", "y1^3"), ("z3", "y2")]),
        },
    );
    embeddings.insert(
        "iota_target".to_string(),
        Embedding {
            source: s(&["y0", "y1", "y2"]),
            source_grading: vec![1, 2, 9],
            target: s(&["x0", "x1", "x2", "x3"]),
            target_grading: vec![1, 1, 5, 9],
            map: map(&[("x0", "y0^2"), ("x1", "y1"), ("x2", "y0*y2"), ("x3", "y2^2")]),
        },
    );
    TestConfiguration {
        variables: s(&names),
        grading: vec![1, 1, 2, 3, 0],
        parameter: "s".into(),
        weights: [("z0", 0), ("z1", 2), ("z2", 6), ("z3", 5), ("s", 1)]
            .iter()
            .map(|(a, w)| (a.to_string(), *w))
            .collect(),
        equations: vec!["s*z3 - z1^3 + z0*z2".into(), curve.to_string()],
        embeddings,
        fibers: vec![
            FiberCheck {
                name: "general fiber".into(),
                parameter_value: "1".into(),
                embedding: "iota".into(),
                expected: general.to_string(),
            },
            FiberCheck {
                name: "special fiber".into(),
                parameter_value: "0".into(),
                embedding: "iota_special".into(),
                expected: "y2^2 - y0^8*y1^5".into(),
            },
        ],
        target: Some(TargetCheck {
            name: "hyperelliptic model".into(),
            fiber: "special fiber".into(),
            embedding: "iota_target".into(),
            ambient: "x2^2 - x0*x3".into(),
            relation: "x3 - x0^4*x1^5".into(),
            eliminate: "x3".into(),
            expected: "x2^2 - x0^5*x1^5".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::qf;

    fn cone() -> Arc<VarTable> {
        VarTable::new(&["x", "y", "z"], &[1, 1, 2]).unwrap()
    }

    fn p(s: &str) -> MPoly {
        parse_poly(s, &cone()).unwrap()
    }

    #[test]
    fn a3_limit_drops_h4() {
        let f = p("y^2*z^2 + 3*x^3*y*z + x^6 + y^2*(x^4 - 2*x*y^3 + y^4)");
        let rho = OnePS::new(&[("x", 0), ("y", -1), ("z", 1)]);
        let lim = one_ps_limit(&f, &rho).unwrap();
        assert_eq!(lim, p("y^2*z^2 + 3*x^3*y*z + x^6"));
        assert!(is_invariant(&lim, &rho).unwrap());
        assert_eq!(one_ps_limit(&lim, &rho).unwrap(), lim);
    }

    #[test]
    fn standard_form_is_fixed() {
        let f = p("y^2*z^2 + x^3*y*z + 2*x^6 + y^2*(x^4 + 5*x^2*y^2)");
        let nf = a3_normal_form(&f).unwrap();
        assert_eq!(nf.a, q(2));
        assert_eq!(nf.b, q(1));
        assert!(nf.v.is_zero());
        assert!(nf.q.is_zero());
        assert_eq!(nf.standard, f);
    }

    #[test]
    fn scrambled_form_is_recovered() {
        let std = p("y^2*z^2 - x^3*y*z + x^6 + y^2*(2*x^3*y - y^4)");
        let q0 = p("x^2 - 3*x*y + 1/2*y^2");
        let v0 = qf(2, 3);
        let f = unipotent_scramble(&std, &v0, &q0).unwrap();
        let nf = a3_normal_form(&f).unwrap();
        assert_eq!(nf.v, v0);
        assert_eq!(nf.q, q0);
        assert_eq!(nf.standard, std);
    }

    #[test]
    fn ribbon_direction() {
        let f = p("y^2*z^2 + 2*x^3*y*z + x^6 + y^2*x^4");
        assert_eq!(a3_normal_form(&f), Err(DegenError::RibbonDirection));
    }

    #[test]
    fn a4_normal_form_is_idempotent_under_rescaling() {
        let std = p("y^2*z^2 - 2*x^3*y*z + x^6 - x^5*y + y^2*(x^4 + 3*x*y^3)");
        let nf = a4_vertex_normal_form(&std).unwrap();
        assert_eq!(nf.equation, std);
        let x = MPoly::var_at(&cone(), 0);
        let y = MPoly::var_at(&cone(), 1);
        let z = MPoly::var_at(&cone(), 2);
        let scaled = std.substitute_all(&[x.scale(&q(2)), y.scale(&q(8)), z], &cone()).unwrap();
        assert_eq!(a4_vertex_normal_form(&scaled).unwrap().equation, std);
    }

    #[test]
    fn a4_rejects_a3_vertex() {
        let f = p("y^2*z^2 + x^3*y*z + x^6 + y^2*x^4");
        assert!(matches!(a4_vertex_normal_form(&f), Err(DegenError::Precondition(_))));
    }

    #[test]
    fn test_configuration_with_zero_quartic() {
        let tc = a4_cone_test_configuration(&[q(0), q(0), q(0), q(0), q(0)]);
        let r = verify_test_configuration(&tc).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures());
    }
}
