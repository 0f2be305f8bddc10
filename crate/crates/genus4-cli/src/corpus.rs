//! Fixture corpus: loading, anchor validation and parallel verification.

use crate::commands::{chow_like, classify, curve_from_text, named_curve, rational_arg, Source};
use crate::grammar::CurveInput;
use crate::report::{domain, parse_err, CliError, Report};
use genus4_core::anchors::anchor;
use genus4_core::curves::{CurveSpecJson, WeierstrassCurve};
use genus4_core::degeneration::{a3_normal_form, a4_cone_test_configuration, one_ps_limit, verify_test_configuration, DegenError, OnePS, TestConfiguration};
use genus4_core::picard::{alpha_of_t, t_of_alpha, verify_identities, walls};
use genus4_core::polyring::{fmt_rational, parse_poly, Rational, VarTable};
use genus4_core::stability::{
    alpha_stability, binary_form_git, chow_stability, last_chamber_vgit, s2a5_branch_form, s2a5_family_filter, AlphaArg,
    ChowSummary, CombCurve, Status, StabilityVerdict,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixtureSpec {
    /// `C_2A5`, `C_D`, `C_AB` with parameters, or `ribbon`.
    Named { name: String, #[serde(default)] params: Vec<String> },
    CurveJson { curve: CurveSpecJson },
    CurveText { text: String },
    /// `z^2 = form` in `P(1, 1, genus + 1)`, form in `x, y`.
    Weierstrass { genus: u32, form: String },
    ChowSummary { summary: ChowSummary },
    Comb { curve: CombCurve },
    /// Limit of `equation` over `variables` with `grading`.
    Limit { variables: Vec<String>, grading: Vec<u32>, equation: String, weights: BTreeMap<String, i64> },
    /// A sextic on `P(1,1,2)` in `x, y, z`.
    A3NormalForm { equation: String },
    /// The cone test configuration with `h4` coefficients `b0..b4`.
    A4Cone { params: Vec<String> },
    TestConfiguration { configuration: TestConfiguration },
    /// Two parameter vectors `(a, b0, b1, b2, b3)`.
    S2a5Family { params: Vec<Vec<String>> },
    /// The double cover `x2^2 = f` of one component curve, in `P(1,1,3)`.
    S2a5Component { params: Vec<String> },
    Slope { alpha: String },
    Picard {},
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    /// Anchor ids; every expectation must cite at least one.
    pub anchors: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Sorted labels of the separating entries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separating: Option<Vec<String>>,
    /// Label of the entry at the cone vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_sizes: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_a: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_reduced: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chow: Option<Status>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vgit_last: Option<Status>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub git: Option<Status>,
    /// alpha (or `2/3-eps`) -> verdict.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub alpha: BTreeMap<String, Status>,
    /// Rule ids that must appear among the reasons, per alpha.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fired: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s2a5: Option<Status>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h4: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks_pass: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_count: Option<usize>,
    /// Expected error kind: `parse`, `domain` or a core error name such
    /// as `RibbonDirection`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub id: String,
    #[serde(flatten)]
    pub spec: FixtureSpec,
    pub expected: Expected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureResult {
    pub id: String,
    pub anchors: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub fixtures: Vec<FixtureResult>,
    pub passed: usize,
    pub failed: usize,
}

/// Every `*.json` file in `dir` holds an array of entries. Ids must be
/// unique and every anchor id must resolve.
pub fn load_corpus(dir: &Path) -> Result<Vec<FixtureEntry>, CliError> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Domain(format!("cannot read corpus {}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for f in files {
        let text = crate::commands::read_path(&f)?;
        let entries: Vec<FixtureEntry> =
            serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", f.display())))?;
        for e in entries {
            validate_entry(&e)?;
            if !seen.insert(e.id.clone()) {
                return Err(CliError::Parse(format!("duplicate fixture id `{}`", e.id)));
            }
            out.push(e);
        }
    }
    Ok(out)
}

pub fn validate_entry(e: &FixtureEntry) -> Result<(), CliError> {
    if e.expected.anchors.is_empty() {
        return Err(CliError::Parse(format!("fixture `{}` cites no anchor", e.id)));
    }
    for a in &e.expected.anchors {
        if anchor(a).is_none() {
            return Err(CliError::Parse(format!("fixture `{}` cites unknown anchor `{a}`", e.id)));
        }
    }
    Ok(())
}

struct Checker {
    checks: Vec<Check>,
}

impl Checker {
    fn eq<T: std::fmt::Debug + PartialEq>(&mut self, name: &str, expected: &Option<T>, actual: &T) {
        if let Some(x) = expected {
            self.push(name, format!("{x:?}"), format!("{actual:?}"), x == actual);
        }
    }

    fn push(&mut self, name: &str, expected: String, actual: String, passed: bool) {
        self.checks.push(Check { name: name.into(), expected, actual, passed });
    }
}

fn rationals(v: &[String], n: usize) -> Result<Vec<Rational>, CliError> {
    if v.len() != n {
        return Err(CliError::Parse(format!("expected {n} parameters, found {}", v.len())));
    }
    v.iter().map(|s| rational_arg(s)).collect()
}

fn check_classification(c: &CurveInput, ex: &Expected, ck: &mut Checker) -> Result<(), CliError> {
    let cl = classify(c)?;
    ck.eq("labels", &ex.labels, &cl.labels);
    let mut sep: Vec<String> = cl
        .singularities
        .iter()
        .filter(|s| s.separating == Some(true))
        .map(|s| s.label.clone())
        .collect();
    sep.sort();
    ck.eq("separating", &ex.separating, &sep);
    let vertex = cl
        .singularities
        .iter()
        .find(|s| s.location == genus4_core::curves::Location::Vertex)
        .map(|s| s.label.clone())
        .unwrap_or_default();
    ck.eq("vertex", &ex.vertex, &vertex);
    let mut orbits: Vec<u32> = cl.singularities.iter().filter_map(|s| s.orbit_size).collect();
    orbits.sort();
    orbits.dedup();
    ck.eq("orbit_sizes", &ex.orbit_sizes, &orbits);
    ck.eq("p_a", &ex.p_a, &cl.arithmetic_genus);
    ck.eq("certified", &ex.certified, &cl.certified_complete);
    ck.eq("components", &ex.components, &cl.components.unwrap_or(0));
    ck.eq("non_reduced", &ex.non_reduced, &cl.non_reduced);
    Ok(())
}

fn check_chow(src: &Source, ex: &Expected, ck: &mut Checker) -> Result<(), CliError> {
    if ex.chow.is_some() {
        ck.eq("chow", &ex.chow, &chow_like(src, false)?.status);
    }
    if ex.vgit_last.is_some() {
        ck.eq("vgit_last", &ex.vgit_last, &chow_like(src, true)?.status);
    }
    Ok(())
}

fn status_of(v: Result<StabilityVerdict, genus4_core::stability::StabilityError>) -> Result<Status, CliError> {
    v.map(|v| v.status).map_err(domain)
}

fn degen_kind(e: &DegenError) -> String {
    match e {
        DegenError::Precondition(_) => "Precondition".into(),
        DegenError::RibbonDirection => "RibbonDirection".into(),
        DegenError::Domain(_) => "Domain".into(),
        _ => "Other".into(),
    }
}

fn run_fixture(e: &FixtureEntry) -> Result<Vec<Check>, CliError> {
    let ex = &e.expected;
    let mut ck = Checker { checks: Vec::new() };
    match &e.spec {
        FixtureSpec::Named { name, params } => {
            let mut args = vec![name.clone()];
            args.extend(params.iter().cloned());
            let spec = named_curve(&args)?.ok_or_else(|| CliError::Parse("empty curve name".into()))?;
            check_classification(&CurveInput::Curve(spec), ex, &mut ck)?;
            check_chow(&Source { args, ..Default::default() }, ex, &mut ck)?;
        }
        FixtureSpec::CurveJson { curve } => {
            let text = serde_json::to_string(curve).map_err(parse_err)?;
            check_classification(&curve_from_text(&text)?, ex, &mut ck)?;
            check_chow(&Source { expr: Some(text), ..Default::default() }, ex, &mut ck)?;
        }
        FixtureSpec::CurveText { text } => {
            let c = curve_from_text(text)?;
            check_classification(&c, ex, &mut ck)?;
            if let CurveInput::Weierstrass(w) = &c {
                if ex.git.is_some() {
                    ck.eq("git", &ex.git, &status_of(binary_form_git(w))?);
                }
            } else {
                check_chow(&Source { expr: Some(text.clone()), ..Default::default() }, ex, &mut ck)?;
            }
        }
        FixtureSpec::Weierstrass { genus, form } => {
            let v = VarTable::unweighted(&["x", "y"]);
            let f = parse_poly(form, &v).map_err(parse_err)?;
            let w = WeierstrassCurve::new(*genus, f).map_err(domain)?;
            if ex.git.is_some() {
                ck.eq("git", &ex.git, &status_of(binary_form_git(&w))?);
            }
            check_classification(&CurveInput::Weierstrass(w), ex, &mut ck)?;
        }
        FixtureSpec::ChowSummary { summary } => {
            let input = summary.to_input().map_err(domain)?;
            if ex.chow.is_some() {
                ck.eq("chow", &ex.chow, &status_of(chow_stability(&input))?);
            }
            if ex.vgit_last.is_some() {
                ck.eq("vgit_last", &ex.vgit_last, &status_of(last_chamber_vgit(&input))?);
            }
        }
        FixtureSpec::Comb { curve } => {
            for (a, want) in &ex.alpha {
                let arg = AlphaArg::parse(a).map_err(domain)?;
                let v = alpha_stability(curve, &arg).map_err(domain)?;
                ck.push(&format!("alpha {a}"), format!("{want:?}"), format!("{:?}", v.status), v.status == *want);
                if let Some(rule) = ex.fired.get(a) {
                    ck.push(&format!("fired {a}"), rule.clone(), format!("{:?}", v.reasons.iter().map(|r| &r.rule).collect::<Vec<_>>()), v.fired(rule));
                }
            }
        }
        FixtureSpec::Limit { variables, grading, equation, weights } => {
            let v = VarTable::new(variables, grading).map_err(domain)?;
            let f = parse_poly(equation, &v).map_err(parse_err)?;
            let pairs: Vec<(String, i64)> = weights.iter().map(|(k, w)| (k.clone(), *w)).collect();
            let lim = one_ps_limit(&f, &OnePS::new(&pairs)).map_err(domain)?;
            if let Some(want) = &ex.limit {
                let want_p = parse_poly(want, &v).map_err(parse_err)?;
                ck.push("limit", want_p.to_string(), lim.to_string(), lim == want_p);
            }
        }
        FixtureSpec::A3NormalForm { equation } => {
            let v = VarTable::new(&["x", "y", "z"], &[1, 1, 2]).map_err(domain)?;
            let f = parse_poly(equation, &v).map_err(parse_err)?;
            match a3_normal_form(&f) {
                Ok(nf) => {
                    ck.eq("error", &ex.error, &String::new());
                    ck.eq("a", &ex.a, &fmt_rational(&nf.a));
                    ck.eq("b", &ex.b, &fmt_rational(&nf.b));
                    if let Some(h) = &ex.h4 {
                        let hp = parse_poly(h, &v).map_err(parse_err)?;
                        ck.push("h4", hp.to_string(), nf.h4.to_string(), hp == nf.h4);
                    }
                }
                Err(err) => {
                    let kind = degen_kind(&err);
                    match &ex.error {
                        Some(want) => ck.push("error", want.clone(), kind.clone(), *want == kind),
                        None => return Err(domain(err)),
                    }
                }
            }
        }
        FixtureSpec::A4Cone { params } => {
            let b = rationals(params, 5)?;
            let tc = a4_cone_test_configuration(&b.try_into().expect("five"));
            let rep = verify_test_configuration(&tc).map_err(domain)?;
            ck.eq("checks_pass", &ex.checks_pass, &rep.all_passed());
        }
        FixtureSpec::TestConfiguration { configuration } => {
            let rep = verify_test_configuration(configuration).map_err(domain)?;
            ck.eq("checks_pass", &ex.checks_pass, &rep.all_passed());
        }
        FixtureSpec::S2a5Family { params } => {
            if params.len() != 2 {
                return Err(CliError::Parse("s2a5 family needs two parameter vectors".into()));
            }
            let p1: [Rational; 5] = rationals(&params[0], 5)?.try_into().expect("five");
            let p2: [Rational; 5] = rationals(&params[1], 5)?.try_into().expect("five");
            ck.eq("s2a5", &ex.s2a5, &status_of(s2a5_family_filter(&[p1, p2]))?);
        }
        FixtureSpec::S2a5Component { params } => {
            let p: [Rational; 5] = rationals(params, 5)?.try_into().expect("five");
            let w = WeierstrassCurve::new(2, s2a5_branch_form(&p)).map_err(domain)?;
            check_classification(&CurveInput::Weierstrass(w), ex, &mut ck)?;
        }
        FixtureSpec::Slope { alpha } => {
            let a = rational_arg(alpha)?;
            let t = t_of_alpha(&a).map_err(domain)?;
            let back = alpha_of_t(&t).map_err(domain)?;
            ck.eq("t", &ex.t, &fmt_rational(&t));
            ck.push("inverse", fmt_rational(&a), fmt_rational(&back), back == a);
        }
        FixtureSpec::Picard {} => {
            let rep = verify_identities();
            for c in &rep.checks {
                ck.push(&c.name, c.rhs.clone(), c.lhs.clone(), c.passed);
            }
            ck.eq("wall_count", &ex.wall_count, &walls().len());
        }
    }
    if ck.checks.is_empty() {
        return Err(CliError::Parse(format!("fixture `{}` asserts nothing", e.id)));
    }
    Ok(ck.checks)
}

pub fn verify_entry(e: &FixtureEntry) -> FixtureResult {
    let checks = match run_fixture(e) {
        Ok(c) => c,
        Err(err) => {
            let want = e.expected.error.clone().unwrap_or_default();
            vec![Check {
                name: "error".into(),
                expected: want.clone(),
                actual: format!("{}: {err}", err.kind()),
                passed: !want.is_empty() && want == err.kind(),
            }]
        }
    };
    let passed = checks.iter().all(|c| c.passed);
    FixtureResult {
        id: e.id.clone(),
        anchors: e.expected.anchors.iter().filter_map(|a| anchor(a).map(|x| x.quote.to_string())).collect(),
        checks,
        passed,
    }
}

/// Verify every entry in parallel; the report is sorted by id.
pub fn verify_corpus(entries: &[FixtureEntry]) -> CorpusReport {
    let mut fixtures: Vec<FixtureResult> = entries.par_iter().map(verify_entry).collect();
    fixtures.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = fixtures.iter().filter(|f| f.passed).count();
    CorpusReport { failed: fixtures.len() - passed, passed, fixtures }
}

pub fn cmd_corpus(dir: &Path) -> Result<Report, CliError> {
    let entries = load_corpus(dir)?;
    let rep = verify_corpus(&entries);
    let mut r = Report::new(format!("genus4 corpus --corpus {}", dir.display()), serde_json::to_value(&rep).expect("plain data"));
    r.passed = rep.failed == 0;
    Ok(r)
}

/// Convenience for tests: one fixture from JSON.
pub fn entry_from_json(v: Value) -> Result<FixtureEntry, CliError> {
    let e: FixtureEntry = serde_json::from_value(v).map_err(parse_err)?;
    validate_entry(&e)?;
    Ok(e)
}
