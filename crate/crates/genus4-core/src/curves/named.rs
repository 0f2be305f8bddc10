//! The named complete intersections, with component data so that their
//! singularity inventories are certified by the genus budget.

use super::{CurveError, CurveSpec, CurveSpecJson};
use crate::polyring::{fmt_rational, q, rational_sqrt, Rational};
use num_traits::Zero;

pub const C_2A5_JSON: &str = r#"{
  "ambient": "CI",
  "equations": ["x0*x3 - x1*x2", "x0*x2^2 + x1^2*x3"],
  "components": [
    {"label": "s", "equations": ["x0", "x1"], "degree": 1},
    {"label": "t", "equations": ["x2", "x3"], "degree": 1},
    {"label": "quartic", "equations": ["x0^2*x2 + x1^3", "x2^3 + x1*x3^2", "x0*x2^2 + x1^2*x3"], "degree": 4}
  ],
  "incidences": [
    {"point": ["0","0","0","1"], "component": "s", "branches": 1},
    {"point": ["0","0","0","1"], "component": "quartic", "branches": 1},
    {"point": ["1","0","0","0"], "component": "t", "branches": 1},
    {"point": ["1","0","0","0"], "component": "quartic", "branches": 1}
  ]
}"#;

pub const C_D_JSON: &str = r#"{
  "ambient": "CI",
  "equations": ["x0*x3", "x1^3 + x2^3"],
  "components": [
    {"label": "L", "equations": ["x0", "x1 + x2"], "degree": 1},
    {"label": "Lc", "equations": ["x0", "x1^2 - x1*x2 + x2^2"], "count": 2, "degree": 1},
    {"label": "M", "equations": ["x3", "x1 + x2"], "degree": 1},
    {"label": "Mc", "equations": ["x3", "x1^2 - x1*x2 + x2^2"], "count": 2, "degree": 1}
  ],
  "incidences": [
    {"point": ["0","0","0","1"], "component": "L", "branches": 1},
    {"point": ["0","0","0","1"], "component": "Lc", "branches": 2},
    {"point": ["1","0","0","0"], "component": "M", "branches": 1},
    {"point": ["1","0","0","0"], "component": "Mc", "branches": 2},
    {"point": ["0","1","-1","0"], "component": "L", "branches": 1},
    {"point": ["0","1","-1","0"], "component": "M", "branches": 1},
    {"orbit": "double line orbit 1", "orbit_member": 0, "component": "Lc", "member": 0, "branches": 1},
    {"orbit": "double line orbit 1", "orbit_member": 0, "component": "Mc", "member": 0, "branches": 1},
    {"orbit": "double line orbit 1", "orbit_member": 1, "component": "Lc", "member": 1, "branches": 1},
    {"orbit": "double line orbit 1", "orbit_member": 1, "component": "Mc", "member": 1, "branches": 1}
  ]
}"#;

fn from_json(s: &str) -> Result<CurveSpec, CurveError> {
    serde_json::from_str::<CurveSpecJson>(s)
        .map_err(|e| CurveError::Domain(format!("bad curve JSON: {e}")))?
        .to_spec()
}

pub fn c_2a5() -> CurveSpec {
    from_json(C_2A5_JSON).expect("fixed fixture")
}

pub fn c_d() -> CurveSpec {
    from_json(C_D_JSON).expect("fixed fixture")
}

/// `V(x2^2 - x1 x3, A x1^3 + B x0 x1 x2 + x0^2 x3)`.
///
/// On the cone `[x0 : x1 : x2 : x3] = [s : t^2 : t w : w^2]` the cubic is
/// `(s w + r1 t^3)(s w + r2 t^3)` with `r1 + r2 = B`, `r1 r2 = A`, which
/// gives the components. `4A = B^2` is the ribbon.
pub fn c_ab_json(a: &Rational, b: &Rational) -> Result<String, CurveError> {
    if a.is_zero() && b.is_zero() {
        return Err(CurveError::Domain("(A, B) must not both vanish".into()));
    }
    let (fa, fb) = (fmt_rational(a), fmt_rational(b));
    let eqs = format!(r#""equations": ["x2^2 - x1*x3", "({fa})*x1^3 + ({fb})*x0*x1*x2 + x0^2*x3"]"#);
    let disc = b * b - q(4) * a;
    let cubic = |r: &Rational| {
        let r = fmt_rational(r);
        format!(r#"["x0*x2 + ({r})*x1^2", "x0*x3 + ({r})*x1*x2"]"#)
    };
    let inc = |p: &str, c: &str, n: u32| format!(r#"{{"point": {p}, "component": "{c}", "branches": {n}}}"#);
    let (vertex, a5) = (r#"["1","0","0","0"]"#, r#"["0","0","0","1"]"#);
    let body = if disc.is_zero() {
        r#""tags": ["ribbon"]"#.to_string()
    } else if a.is_zero() {
        let node = r#"["0","1","0","0"]"#;
        format!(
            r#""components": [
    {{"label": "conic", "equations": ["x0"], "degree": 2}},
    {{"label": "ruling", "equations": ["x2", "x3"], "degree": 1}},
    {{"label": "cubic", "equations": {}, "degree": 3}}
  ],
  "incidences": [{}, {}, {}, {}, {}, {}]"#,
            cubic(b),
            inc(vertex, "ruling", 1),
            inc(vertex, "cubic", 1),
            inc(a5, "conic", 1),
            inc(a5, "cubic", 1),
            inc(node, "conic", 1),
            inc(node, "ruling", 1)
        )
    } else if let Some(root) = rational_sqrt(&disc) {
        let r1 = (b + &root) / q(2);
        let r2 = (b - &root) / q(2);
        format!(
            r#""components": [
    {{"label": "first", "equations": {}, "degree": 3}},
    {{"label": "second", "equations": {}, "degree": 3}}
  ],
  "incidences": [{}, {}, {}, {}]"#,
            cubic(&r1),
            cubic(&r2),
            inc(vertex, "first", 1),
            inc(vertex, "second", 1),
            inc(a5, "first", 1),
            inc(a5, "second", 1)
        )
    } else {
        format!(
            r#""components": [{{"label": "pair", "equations": [], "count": 2, "degree": 3}}],
  "incidences": [{}, {}]"#,
            inc(vertex, "pair", 2),
            inc(a5, "pair", 2)
        )
    };
    Ok(format!("{{\n  \"ambient\": \"CI\",\n  {eqs},\n  {body}\n}}"))
}

pub fn c_ab(a: &Rational, b: &Rational) -> Result<CurveSpec, CurveError> {
    from_json(&c_ab_json(a, b)?)
}
