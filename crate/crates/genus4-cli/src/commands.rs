//! Command implementations. Each returns a [`Report`] or a [`CliError`].

use crate::grammar::{parse_curve, print_curve, CurveInput};
use crate::report::{domain, parse_err, CliError, Report};
use genus4_core::curves::named::{c_2a5, c_ab, c_d};
use genus4_core::curves::{
    analyze_curve, arithmetic_genus, genus_budget_check, separating_check, weierstrass_component_model,
    weierstrass_singularities, ComponentModel, CurveError, CurveSpec, CurveSpecJson, Location, SingularityInventory,
};
use genus4_core::degeneration::{
    a3_normal_form, a4_cone_test_configuration, a4_vertex_normal_form, is_invariant, one_ps_limit,
    verify_test_configuration, DegenError, OnePS, TestConfiguration,
};
use genus4_core::picard::{
    alpha_of_t, canonical_class, hk_divisor, l_alpha, t_of_alpha, verify_identities, vgit_pullback, walls,
    VgitPolarizationParams,
};
use genus4_core::polyring::{fmt_rational, parse_poly, parse_poly_infer, parse_rational, q, MPoly, Rational, VarTable};
use genus4_core::stability::{
    alpha_stability, binary_form_git, chamber_of, chow_stability, chow_stability_of_curve, last_chamber_vgit,
    last_chamber_vgit_of_curve, s2a5_family_filter, AlphaArg, ChowSummary, CombCurve, StabilityError,
    StabilityVerdict, CHAMBERS,
};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::Path;

/// Where a command reads its curve or data from.
#[derive(Debug, Clone, Default)]
pub struct Source {
    /// Positional arguments, e.g. `C_AB 1 0`.
    pub args: Vec<String>,
    pub expr: Option<String>,
    pub input: Option<std::path::PathBuf>,
}

impl Source {
    pub fn text(&self) -> Result<Option<String>, CliError> {
        if let Some(e) = &self.expr {
            return Ok(Some(e.clone()));
        }
        match &self.input {
            Some(p) => std::fs::read_to_string(p)
                .map(Some)
                .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", p.display()))),
            None => Ok(None),
        }
    }
}

pub fn rational_arg(s: &str) -> Result<Rational, CliError> {
    parse_rational(s.trim()).ok_or_else(|| CliError::Parse(format!("not a rational number: `{s}`")))
}

fn stability_err(e: StabilityError) -> CliError {
    match e {
        StabilityError::Invalid(m) => CliError::Parse(m),
        other => domain(other),
    }
}

fn degen_err(e: DegenError) -> CliError {
    domain(e)
}

/// A named curve: `C_2A5`, `C_D`, `C_AB A B` or `ribbon` (`C_AB 1 2`).
pub fn named_curve(args: &[String]) -> Result<Option<CurveSpec>, CliError> {
    let Some(name) = args.first() else { return Ok(None) };
    let spec = match name.as_str() {
        "C_2A5" => c_2a5(),
        "C_D" => c_d(),
        "ribbon" => c_ab(&q(1), &q(2)).map_err(domain)?,
        "C_AB" => {
            if args.len() != 3 {
                return Err(CliError::Parse("C_AB needs two rational parameters A B".into()));
            }
            c_ab(&rational_arg(&args[1])?, &rational_arg(&args[2])?).map_err(domain)?
        }
        other => return Err(CliError::Parse(format!("unknown curve `{other}`"))),
    };
    Ok(Some(spec))
}

/// Read a curve from a JSON spec or the text grammar.
pub fn curve_from_text(text: &str) -> Result<CurveInput, CliError> {
    if text.trim_start().starts_with('{') {
        let j: CurveSpecJson = serde_json::from_str(text).map_err(parse_err)?;
        return j.to_spec().map(CurveInput::Curve).map_err(domain);
    }
    parse_curve(text).map_err(|e| match e {
        crate::grammar::GrammarError::Syntax { .. } => CliError::Parse(e.to_string()),
        crate::grammar::GrammarError::Semantic(_) => CliError::Domain(e.to_string()),
    })
}

pub fn load_curve(src: &Source) -> Result<CurveInput, CliError> {
    if let Some(c) = named_curve(&src.args)? {
        return Ok(CurveInput::Curve(c));
    }
    match src.text()? {
        Some(t) => curve_from_text(&t),
        None => Err(CliError::Parse("no curve given: name one, or use --expr or --input".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryView {
    pub label: String,
    pub at: String,
    pub location: Location,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_size: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separating: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub arithmetic_genus: i64,
    pub non_reduced: bool,
    pub labels: Vec<String>,
    pub singularities: Vec<EntryView>,
    pub total_delta: u32,
    /// Number of geometric components, when component data was supplied.
    pub components: Option<u32>,
    pub certified_complete: bool,
}

fn views(inv: &SingularityInventory, model: Option<&ComponentModel>) -> Result<Vec<EntryView>, CliError> {
    let mut out = Vec::new();
    for (i, e) in inv.entries.iter().enumerate() {
        let separating = match model {
            Some(m) if e.class.branches == 2 => Some(separating_check(inv, i, m).map_err(domain)?),
            _ => None,
        };
        let full = e.describe();
        let at = full.split_once(" at ").map(|(_, a)| a.to_string()).unwrap_or(full);
        out.push(EntryView {
            label: e.class.label(),
            at,
            location: e.location,
            orbit_size: e.orbit.as_ref().map(|o| o.size),
            separating,
        });
    }
    Ok(out)
}

pub fn classify(c: &CurveInput) -> Result<Classification, CliError> {
    match c {
        CurveInput::Weierstrass(w) => {
            let inv = weierstrass_singularities(w).map_err(domain)?;
            let model = weierstrass_component_model(w, &inv).map_err(domain)?;
            let pa = w.arithmetic_genus();
            Ok(Classification {
                arithmetic_genus: pa,
                non_reduced: false,
                labels: inv.labels(),
                singularities: views(&inv, Some(&model))?,
                total_delta: inv.total_delta,
                components: Some(model.geometric_count()),
                certified_complete: genus_budget_check(&inv, &model, pa),
            })
        }
        CurveInput::Curve(spec) => match analyze_curve(spec) {
            Err(CurveError::NonReduced) => Ok(Classification {
                arithmetic_genus: arithmetic_genus(spec).map_err(domain)?,
                non_reduced: true,
                labels: Vec::new(),
                singularities: Vec::new(),
                total_delta: 0,
                components: None,
                certified_complete: false,
            }),
            Err(e) => Err(domain(e)),
            Ok(an) => Ok(Classification {
                arithmetic_genus: an.arithmetic_genus,
                non_reduced: false,
                labels: an.inventory.labels(),
                singularities: views(&an.inventory, an.model.as_ref())?,
                total_delta: an.inventory.total_delta,
                components: an.model.as_ref().map(|m| m.geometric_count()),
                certified_complete: an.inventory.certified_complete,
            }),
        },
    }
}

fn curve_anchors(src: &Source) -> Vec<&'static str> {
    match src.args.first().map(String::as_str) {
        Some("C_2A5") => vec!["curve.c2a5"],
        Some("C_D") => vec!["curve.cd"],
        Some("C_AB") => vec!["curve.cab"],
        Some("ribbon") => vec!["curve.cab_ribbon"],
        _ => vec![],
    }
}

pub fn cmd_classify(src: &Source) -> Result<Report, CliError> {
    let c = load_curve(src)?;
    let cl = classify(&c)?;
    let mut result = serde_json::to_value(&cl).expect("plain data");
    result["curve"] = Value::String(print_curve(&c));
    Ok(Report::new(command_line("classify", src), result).with_anchors(&curve_anchors(src)))
}

fn command_line(cmd: &str, src: &Source) -> String {
    let mut s = format!("genus4 {cmd}");
    for a in &src.args {
        s += &format!(" {a}");
    }
    if let Some(e) = &src.expr {
        s += &format!(" --expr '{e}'");
    }
    if let Some(p) = &src.input {
        s += &format!(" --input {}", p.display());
    }
    s
}

fn verdict_value(v: &StabilityVerdict) -> Value {
    serde_json::to_value(v).expect("plain data")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityMode {
    Chow,
    Vgit,
    Git,
    Alpha,
    S2a5,
}

impl StabilityMode {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "chow" => StabilityMode::Chow,
            "vgit" => StabilityMode::Vgit,
            "git" => StabilityMode::Git,
            "alpha" => StabilityMode::Alpha,
            "s2a5" => StabilityMode::S2a5,
            other => return Err(CliError::Parse(format!("unknown stability mode `{other}`"))),
        })
    }
}

/// Chow or last-chamber VGIT verdict on a curve or on a JSON summary
/// (`{"rank": ..}`).
pub fn chow_like(src: &Source, vgit: bool) -> Result<StabilityVerdict, CliError> {
    if src.args.is_empty() {
        if let Some(t) = src.text()? {
            if let Ok(sm) = serde_json::from_str::<ChowSummary>(&t) {
                let input = sm.to_input().map_err(stability_err)?;
                return if vgit { last_chamber_vgit(&input) } else { chow_stability(&input) }.map_err(stability_err);
            }
        }
    }
    let CurveInput::Curve(c) = load_curve(src)? else {
        return Err(CliError::Domain("Chow stability needs a (2,3) complete intersection".into()));
    };
    if vgit { last_chamber_vgit_of_curve(&c) } else { chow_stability_of_curve(&c) }.map_err(stability_err)
}

pub fn cmd_stability(mode: StabilityMode, alpha: Option<&str>, src: &Source) -> Result<Report, CliError> {
    let cmd = command_line(&format!("stability {}", mode_name(mode)), src);
    let (verdict, extra) = match mode {
        StabilityMode::Chow => (chow_like(src, false)?, json!({})),
        StabilityMode::Vgit => (chow_like(src, true)?, json!({})),
        StabilityMode::Git => {
            let CurveInput::Weierstrass(w) = load_curve(src)? else {
                return Err(CliError::Domain("binary-form GIT needs a `weierstrass` curve".into()));
            };
            (binary_form_git(&w).map_err(stability_err)?, json!({}))
        }
        StabilityMode::Alpha => {
            let a = alpha.ok_or_else(|| CliError::Parse("alpha stability needs --alpha".into()))?;
            let arg = AlphaArg::parse(a).map_err(stability_err)?;
            let text = src.text()?.ok_or_else(|| CliError::Parse("alpha stability needs a curve via --expr or --input".into()))?;
            let c: CombCurve = serde_json::from_str(&text).map_err(parse_err)?;
            let chamber = CHAMBERS[chamber_of(&arg).map_err(stability_err)?].id;
            (alpha_stability(&c, &arg).map_err(stability_err)?, json!({"alpha": arg.to_string(), "chamber": chamber}))
        }
        StabilityMode::S2a5 => {
            if src.args.len() != 10 {
                return Err(CliError::Parse("s2a5 needs ten rationals: a b0 b1 b2 b3 for each component".into()));
            }
            let r: Vec<Rational> = src.args.iter().map(|s| rational_arg(s)).collect::<Result<_, _>>()?;
            let p1: [Rational; 5] = r[..5].to_vec().try_into().expect("five");
            let p2: [Rational; 5] = r[5..].to_vec().try_into().expect("five");
            (s2a5_family_filter(&[p1, p2]).map_err(stability_err)?, json!({}))
        }
    };
    let mut result = verdict_value(&verdict);
    if let (Value::Object(m), Value::Object(x)) = (&mut result, extra) {
        m.extend(x);
    }
    Ok(Report::new(cmd, result))
}

fn mode_name(m: StabilityMode) -> &'static str {
    match m {
        StabilityMode::Chow => "chow",
        StabilityMode::Vgit => "vgit",
        StabilityMode::Git => "git",
        StabilityMode::Alpha => "alpha",
        StabilityMode::S2a5 => "s2a5",
    }
}

/// `x=0,y=-1,z=1`.
pub fn parse_weights(s: &str) -> Result<OnePS, CliError> {
    let mut pairs = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (name, w) = part
            .split_once('=')
            .ok_or_else(|| CliError::Parse(format!("weight `{part}` is not name=integer")))?;
        let w: i64 = w.trim().parse().map_err(|_| CliError::Parse(format!("weight `{part}` is not name=integer")))?;
        pairs.push((name.trim().to_string(), w));
    }
    Ok(OnePS::new(&pairs))
}

fn limit_of(f: &MPoly, rho: &OnePS) -> Result<Value, CliError> {
    let lim = one_ps_limit(f, rho).map_err(degen_err)?;
    let invariant = is_invariant(&lim, rho).map_err(degen_err)?;
    Ok(json!({"input": f.to_string(), "limit": lim.to_string(), "limit_is_invariant": invariant}))
}

/// One-parameter-subgroup limit of each equation, or verification of a
/// test configuration given as JSON.
pub fn cmd_limit(weights: Option<&str>, src: &Source) -> Result<Report, CliError> {
    let cmd = command_line("limit", src);
    let text = src.text()?.ok_or_else(|| CliError::Parse("limit needs --expr or --input".into()))?;
    if text.trim_start().starts_with('{') {
        let tc: TestConfiguration = serde_json::from_str(&text).map_err(parse_err)?;
        return test_configuration_report(cmd, &tc);
    }
    let rho = parse_weights(weights.ok_or_else(|| CliError::Parse("limit needs --weights".into()))?)?;
    let result = if text.trim_start().starts_with("ambient") {
        let CurveInput::Curve(c) = curve_from_text(&text)? else {
            return Err(CliError::Domain("limit of a weierstrass curve: pass its equation instead".into()));
        };
        let mut eqs = Vec::new();
        if let Some(qd) = c.quadric() {
            eqs.push(limit_of(qd, &rho)?);
        }
        eqs.push(limit_of(&c.equation, &rho)?);
        json!({"equations": eqs})
    } else {
        limit_of(&parse_poly_infer(&text).map_err(parse_err)?, &rho)?
    };
    Ok(Report::new(cmd, result).with_anchors(&["degen.a3_limit"]))
}

pub fn test_configuration_report(cmd: String, tc: &TestConfiguration) -> Result<Report, CliError> {
    let rep = verify_test_configuration(tc).map_err(degen_err)?;
    let mut r = Report::new(cmd, serde_json::to_value(&rep).expect("plain data"))
        .with_anchors(&["degen.a4_invariant", "degen.a4_target"]);
    r.passed = rep.all_passed();
    Ok(r)
}

/// The cone test configuration for `h4 = sum b_i x^i y^(4-i)`.
pub fn cmd_a4_cone(params: &[String], emit: bool) -> Result<Report, CliError> {
    if params.len() != 5 {
        return Err(CliError::Parse("a4-cone needs five rationals b0..b4".into()));
    }
    let b: Vec<Rational> = params.iter().map(|s| rational_arg(s)).collect::<Result<_, _>>()?;
    let tc = a4_cone_test_configuration(&b.try_into().expect("five"));
    let cmd = format!("genus4 limit --a4-cone {}", params.join(" "));
    if emit {
        return Ok(Report::new(cmd, serde_json::to_value(&tc).expect("plain data")));
    }
    test_configuration_report(cmd, &tc)
}

fn cone_poly(text: &str) -> Result<MPoly, CliError> {
    if text.trim_start().starts_with("ambient") {
        return match curve_from_text(text)? {
            CurveInput::Curve(c) => Ok(c.equation),
            CurveInput::Weierstrass(_) => Err(CliError::Domain("normal forms take a sextic on P(1,1,2)".into())),
        };
    }
    let v = VarTable::new(&["x", "y", "z"], &[1, 1, 2]).map_err(domain)?;
    parse_poly(text, &v).map_err(parse_err)
}

pub fn cmd_normalform(kind: &str, src: &Source) -> Result<Report, CliError> {
    let cmd = command_line(&format!("normalform {kind}"), src);
    let text = src.text()?.ok_or_else(|| CliError::Parse("normalform needs --expr or --input".into()))?;
    let f = cone_poly(&text)?;
    match kind {
        "a3" => {
            let nf = a3_normal_form(&f).map_err(degen_err)?;
            let m = &nf.alignment;
            Ok(Report::new(
                cmd,
                json!({
                    "A": fmt_rational(&nf.a),
                    "B": fmt_rational(&nf.b),
                    "h4": nf.h4.to_string(),
                    "v": fmt_rational(&nf.v),
                    "q": nf.q.to_string(),
                    "alignment": [[fmt_rational(&m[0][0]), fmt_rational(&m[0][1])], [fmt_rational(&m[1][0]), fmt_rational(&m[1][1])]],
                    "scale": fmt_rational(&nf.scale),
                    "standard": nf.standard.to_string(),
                }),
            )
            .with_anchors(&["degen.a3_form", "degen.a3_unique"]))
        }
        "a4" => {
            let nf = a4_vertex_normal_form(&f).map_err(degen_err)?;
            Ok(Report::new(cmd, json!({"equation": nf.equation.to_string(), "h4": nf.h4.to_string()}))
                .with_anchors(&["degen.a4_rescale", "degen.a4_form"]))
        }
        other => Err(CliError::Parse(format!("unknown normal form `{other}`; expected a3 or a4"))),
    }
}

pub fn cmd_picard(sub: &str, args: &[String]) -> Result<Report, CliError> {
    let cmd = format!("genus4 picard {sub} {}", args.join(" ")).trim_end().to_string();
    let one_arg = || -> Result<Rational, CliError> {
        match args {
            [a] => rational_arg(a),
            _ => Err(CliError::Parse(format!("picard {sub} needs one rational argument"))),
        }
    };
    let class = |d: genus4_core::picard::DivClass| json!({"class": d.to_string(), "coordinates": d});
    let report = match sub {
        "walls" => Report::new(cmd, serde_json::to_value(walls()).expect("plain data"))
            .with_anchors(&["picard.walls", "picard.table"]),
        "identities" => {
            let rep = verify_identities();
            let mut r = Report::new(cmd, rep.to_json()).with_anchors(&["picard.combination", "picard.pullback"]);
            r.passed = rep.all_passed();
            r
        }
        "canonical" => Report::new(cmd, class(canonical_class())).with_anchors(&["picard.canonical"]),
        "hk" => Report::new(cmd, class(hk_divisor(&one_arg()?))).with_anchors(&["picard.delta"]),
        "l-alpha" => {
            let a = match args {
                [a] => AlphaArg::parse(a).map_err(stability_err)?,
                _ => return Err(CliError::Parse("picard l-alpha needs one alpha".into())),
            };
            Report::new(cmd, class(l_alpha(&a).map_err(domain)?)).with_anchors(&["picard.l_lower", "picard.l_upper"])
        }
        "vgit" => {
            let p = VgitPolarizationParams::from_s(one_arg()?);
            Report::new(cmd, class(vgit_pullback(&p))).with_anchors(&["picard.vgit"])
        }
        "slope" => {
            let a = one_arg()?;
            let t = t_of_alpha(&a).map_err(domain)?;
            Report::new(cmd, json!({"alpha": fmt_rational(&a), "t": fmt_rational(&t)})).with_anchors(&["picard.slope"])
        }
        "alpha-of-t" => {
            let t = one_arg()?;
            let a = alpha_of_t(&t).map_err(domain)?;
            Report::new(cmd, json!({"t": fmt_rational(&t), "alpha": fmt_rational(&a)})).with_anchors(&["picard.slope"])
        }
        other => {
            return Err(CliError::Parse(format!(
                "unknown picard subcommand `{other}`; expected walls, identities, canonical, hk, l-alpha, vgit, slope or alpha-of-t"
            )))
        }
    };
    Ok(report)
}

/// Compare a report field against `--expect`.
pub fn apply_expectation(mut r: Report, field: &str, expected: &str) -> Report {
    let actual = r.result.get(field).map(|v| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    });
    let ok = actual.as_deref() == Some(expected);
    r.result["expectation"] = json!({"field": field, "expected": expected, "actual": actual, "passed": ok});
    r.passed &= ok;
    r
}

pub fn read_path(p: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(p).map_err(|e| CliError::Domain(format!("cannot read {}: {e}", p.display())))
}
