//! Text form of curves.
//!
//! ```text
//! ambient ci_p3; eq x0*x3 - x1*x2; eq x0*x2^2 + x1^2*x3
//! ambient wp 1 1 5; weierstrass x^5*y^5
//! ambient wp 1 1 2; eq y^2*(x^4 - z^2); component (y)*2; component x^2 - z; component x^2 + z
//! ```
//!
//! Statements are separated by `;` or newlines and `#` starts a comment.
//!
//! * `ambient ci_p3 | p1xp1 | wp a b c` comes first.
//! * `vars n1 n2 ...` overrides the default variable names.
//! * `eq <poly>` gives the equation; `ci_p3` takes the quadric then the cubic.
//! * `weierstrass <form>` gives `z^2 = form` in `P(1, 1, g+1)`.
//! * `component <poly>[*m] [genus g] [count n] [degree d]`, where `*m` is the
//!   multiplicity and applies only after a parenthesized polynomial
//!   `(...)*m`. On `ci_p3` the component takes comma-separated equations.
//!   A Galois orbit of conjugate components may omit the equations and give
//!   only `count`.
//! * `tag <word>`.

use genus4_core::curves::{Ambient, ComponentSpec, CurveSpec, WeierstrassCurve};
use genus4_core::polyring::{parse_poly, MPoly, VarTable};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub enum CurveInput {
    Curve(CurveSpec),
    Weierstrass(WeierstrassCurve),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrammarError {
    Syntax { line: usize, column: usize, message: String },
    Semantic(String),
}

impl fmt::Display for GrammarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrammarError::Syntax { line, column, message } => write!(f, "syntax error at {line}:{column}: {message}"),
            GrammarError::Semantic(m) => write!(f, "invalid curve: {m}"),
        }
    }
}

impl std::error::Error for GrammarError {}

struct Stmt<'a> {
    line: usize,
    column: usize,
    keyword: &'a str,
    /// Rest of the statement and its column.
    rest: &'a str,
    rest_column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> GrammarError {
    GrammarError::Syntax { line, column, message: message.into() }
}

fn statements(text: &str) -> Vec<Stmt<'_>> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut start = 0;
        for piece in line.split(';') {
            let lead = piece.len() - piece.trim_start().len();
            let body = piece.trim();
            if !body.is_empty() {
                let column = start + lead + 1;
                let kw_len = body.find(char::is_whitespace).unwrap_or(body.len());
                let after = &body[kw_len..];
                let gap = after.len() - after.trim_start().len();
                out.push(Stmt {
                    line: li + 1,
                    column,
                    keyword: &body[..kw_len],
                    rest: after.trim(),
                    rest_column: column + kw_len + gap,
                });
            }
            start += piece.len() + 1;
        }
    }
    out
}

fn default_names(ambient: &Ambient) -> Vec<String> {
    let v: &[&str] = match ambient {
        Ambient::P1xP1 => &["x0", "x1", "y0", "y1"],
        Ambient::CompleteIntersectionP3 { .. } => &["x0", "x1", "x2", "x3"],
        Ambient::WeightedPlane { .. } => &["x", "y", "z"],
    };
    v.iter().map(|s| s.to_string()).collect()
}

enum AmbientKind {
    Ci,
    P1xP1,
    Wp([u32; 3]),
}

fn parse_poly_at(s: &str, vars: &Arc<VarTable>, line: usize, column: usize) -> Result<MPoly, GrammarError> {
    parse_poly(s, vars).map_err(|e| syntax(line, column + e.column.saturating_sub(1), e.message))
}

struct ComponentText {
    equations: Vec<(String, usize)>,
    multiplicity: u32,
    genus: u32,
    count: u32,
    degree: Option<u32>,
}

fn parse_component(st: &Stmt<'_>) -> Result<ComponentText, GrammarError> {
    let mut words: Vec<&str> = st.rest.split_whitespace().collect();
    let (mut genus, mut count, mut degree) = (0, 1, None);
    while words.len() >= 2 {
        let n = words.len();
        let key = words[n - 2];
        if !matches!(key, "genus" | "count" | "degree") {
            break;
        }
        let val: u32 = words[n - 1]
            .parse()
            .map_err(|_| syntax(st.line, st.rest_column, format!("`{key}` needs a non-negative integer")))?;
        match key {
            "genus" => genus = val,
            "count" => count = val,
            _ => degree = Some(val),
        }
        words.truncate(n - 2);
    }
    let body = words.join(" ");
    let (body, multiplicity) = split_multiplicity(&body);
    let mut equations = Vec::new();
    if body.is_empty() {
        // a Galois orbit of components with no rational equations
        if count < 2 {
            return Err(syntax(st.line, st.rest_column, "a component without equations needs `count`"));
        }
        return Ok(ComponentText { equations, multiplicity, genus, count, degree });
    }
    let mut offset = 0;
    for part in body.split(',') {
        let lead = part.len() - part.trim_start().len();
        if part.trim().is_empty() {
            return Err(syntax(st.line, st.rest_column + offset, "empty component equation"));
        }
        equations.push((part.trim().to_string(), st.rest_column + offset + lead));
        offset += part.len() + 1;
    }
    if count == 0 {
        return Err(syntax(st.line, st.rest_column, "`count` must be positive"));
    }
    Ok(ComponentText { equations, multiplicity, genus, count, degree })
}

/// `(p)*m` gives `(p, m)`; anything else has multiplicity one.
fn split_multiplicity(s: &str) -> (String, u32) {
    if let Some(star) = s.rfind(")*") {
        let (head, tail) = (&s[..=star], &s[star + 2..]);
        if let Ok(m) = tail.trim().parse::<u32>() {
            if head.starts_with('(') && balanced_outer(head) {
                return (head[1..head.len() - 1].to_string(), m);
            }
        }
    }
    (s.to_string(), 1)
}

/// Whether the first `(` closes at the last character.
fn balanced_outer(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return i == s.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}

pub fn parse_curve(text: &str) -> Result<CurveInput, GrammarError> {
    let stmts = statements(text);
    let first = stmts.first().ok_or_else(|| syntax(1, 1, "empty input"))?;
    if first.keyword != "ambient" {
        return Err(syntax(first.line, first.column, format!("expected `ambient`, found `{}`", first.keyword)));
    }
    let words: Vec<&str> = first.rest.split_whitespace().collect();
    let kind = match words.as_slice() {
        ["ci_p3"] => AmbientKind::Ci,
        ["p1xp1"] => AmbientKind::P1xP1,
        ["wp", a, b, c] => {
            let w: Option<Vec<u32>> = [a, b, c].iter().map(|t| t.parse().ok().filter(|x| *x > 0)).collect();
            let w = w.ok_or_else(|| syntax(first.line, first.rest_column, "weights must be positive integers"))?;
            AmbientKind::Wp([w[0], w[1], w[2]])
        }
        _ => {
            return Err(syntax(
                first.line,
                first.rest_column,
                format!("unknown ambient `{}`; expected ci_p3, p1xp1 or wp a b c", first.rest),
            ))
        }
    };
    let placeholder = match kind {
        AmbientKind::Ci => Ambient::CompleteIntersectionP3 { quadric: MPoly::zero(&VarTable::unweighted(&["x"])) },
        AmbientKind::P1xP1 => Ambient::P1xP1,
        AmbientKind::Wp(weights) => Ambient::WeightedPlane { weights },
    };
    let mut names = default_names(&placeholder);
    let mut rest = &stmts[1..];
    if let Some(st) = rest.first().filter(|s| s.keyword == "vars") {
        let given: Vec<String> = st.rest.split_whitespace().map(String::from).collect();
        if given.len() != names.len() {
            return Err(GrammarError::Semantic(format!(
                "ambient needs {} variables, `vars` gives {}",
                names.len(),
                given.len()
            )));
        }
        names = given;
        rest = &rest[1..];
    }
    let grading = match kind {
        AmbientKind::Wp(w) => w.to_vec(),
        _ => vec![1; 4],
    };
    let vars = VarTable::new(&names, &grading).map_err(|e| GrammarError::Semantic(e.to_string()))?;

    let mut eqs = Vec::new();
    let mut weier = None;
    let mut comps = Vec::new();
    let mut tags = Vec::new();
    for st in rest {
        match st.keyword {
            "eq" => eqs.push(parse_poly_at(st.rest, &vars, st.line, st.rest_column)?),
            "weierstrass" => {
                let AmbientKind::Wp(w) = kind else {
                    return Err(GrammarError::Semantic("`weierstrass` needs ambient wp 1 1 g+1".into()));
                };
                if w[0] != 1 || w[1] != 1 || w[2] < 3 {
                    return Err(GrammarError::Semantic("`weierstrass` needs ambient wp 1 1 g+1 with g >= 2".into()));
                }
                let bin = VarTable::unweighted(&names[..2]);
                weier = Some((w[2] - 1, parse_poly_at(st.rest, &bin, st.line, st.rest_column)?));
            }
            "component" => {
                let ct = parse_component(st)?;
                let equations = ct
                    .equations
                    .iter()
                    .map(|(e, col)| parse_poly_at(e, &vars, st.line, *col))
                    .collect::<Result<Vec<_>, _>>()?;
                comps.push(ComponentSpec {
                    label: format!("c{}", comps.len() + 1),
                    equations,
                    multiplicity: ct.multiplicity,
                    genus: ct.genus,
                    count: ct.count,
                    degree: ct.degree,
                });
            }
            "tag" => tags.push(st.rest.to_string()),
            "ambient" | "vars" => {
                return Err(syntax(st.line, st.column, format!("`{}` must come first", st.keyword)));
            }
            other => return Err(syntax(st.line, st.column, format!("unknown statement `{other}`"))),
        }
    }

    if let Some((g, f)) = weier {
        if !eqs.is_empty() || !comps.is_empty() {
            return Err(GrammarError::Semantic("`weierstrass` cannot be combined with `eq` or `component`".into()));
        }
        return WeierstrassCurve::new(g, f)
            .map(CurveInput::Weierstrass)
            .map_err(|e| GrammarError::Semantic(e.to_string()));
    }
    let ambient = match kind {
        AmbientKind::Ci => {
            if eqs.len() != 2 {
                return Err(GrammarError::Semantic(format!(
                    "ci_p3 needs two equations (quadric, cubic), found {}",
                    eqs.len()
                )));
            }
            Ambient::CompleteIntersectionP3 { quadric: eqs.remove(0) }
        }
        _ => {
            if eqs.len() != 1 {
                return Err(GrammarError::Semantic(format!("expected one equation, found {}", eqs.len())));
            }
            placeholder
        }
    };
    let spec = CurveSpec {
        ambient,
        equation: eqs.remove(0),
        components: (!comps.is_empty()).then_some(comps),
        orbits: Vec::new(),
        incidences: Vec::new(),
        tags,
    };
    spec.validate().map_err(|e| GrammarError::Semantic(e.to_string()))?;
    Ok(CurveInput::Curve(spec))
}

/// Text form accepted by [`parse_curve`]. Galois orbits and explicit
/// incidences have no text form; a curve carrying them is printed without
/// its component data, which keeps the singularity labels but not the
/// separating test.
pub fn print_curve(c: &CurveInput) -> String {
    let mut lines = Vec::new();
    match c {
        CurveInput::Weierstrass(w) => {
            lines.push(format!("ambient wp 1 1 {}", w.g + 1));
            let names = w.f.vars().names();
            if names != ["x", "y"] {
                lines.push(format!("vars {} {} z", names[0], names[1]));
            }
            lines.push(format!("weierstrass {}", w.f));
        }
        CurveInput::Curve(s) => {
            lines.push(match &s.ambient {
                Ambient::CompleteIntersectionP3 { .. } => "ambient ci_p3".to_string(),
                Ambient::P1xP1 => "ambient p1xp1".to_string(),
                Ambient::WeightedPlane { weights: w } => format!("ambient wp {} {} {}", w[0], w[1], w[2]),
            });
            let names = s.equation.vars().names();
            if names != default_names(&s.ambient).as_slice() {
                lines.push(format!("vars {}", names.join(" ")));
            }
            if let Some(q) = s.quadric() {
                lines.push(format!("eq {q}"));
            }
            lines.push(format!("eq {}", s.equation));
            let comps = if s.orbits.is_empty() && s.incidences.is_empty() { s.components.as_deref() } else { None };
            for comp in comps.into_iter().flatten() {
                let eqs: Vec<String> = comp.equations.iter().map(|e| e.to_string()).collect();
                let mut line = if eqs.is_empty() {
                    "component".to_string()
                } else if comp.multiplicity > 1 {
                    format!("component ({})*{}", eqs.join(", "), comp.multiplicity)
                } else {
                    format!("component {}", eqs.join(", "))
                };
                if comp.genus > 0 {
                    line += &format!(" genus {}", comp.genus);
                }
                if comp.count > 1 {
                    line += &format!(" count {}", comp.count);
                }
                if let Some(d) = comp.degree {
                    line += &format!(" degree {d}");
                }
                lines.push(line);
            }
            for t in &s.tags {
                lines.push(format!("tag {t}"));
            }
        }
    }
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicity_suffix() {
        assert_eq!(split_multiplicity("(x - y)*2"), ("x - y".to_string(), 2));
        assert_eq!(split_multiplicity("(x)*(y)*2").1, 1);
        assert_eq!(split_multiplicity("x*2"), ("x*2".to_string(), 1));
    }

    #[test]
    fn statement_columns() {
        let s = statements("ambient ci_p3;  eq x0\n# c\neq  x1");
        assert_eq!((s[1].line, s[1].column, s[1].rest_column), (1, 17, 20));
        assert_eq!((s[2].line, s[2].rest_column), (3, 5));
    }
}
