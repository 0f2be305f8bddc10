//! Stability deciders: binary forms, Chow stability of (2,3) complete
//! intersections, the last VGIT chamber, alpha-stability of combinatorial
//! curve models and the S2A5 family filter.

use crate::anchors;
use crate::curves::{
    analyze_curve, CurveError, CurveSpec, InventoryEntry, Location, QuadricForm, SingularityInventory,
    WeierstrassCurve, weierstrass_singularities,
};
use crate::degeneration::{a3_normal_form, DegenError};
use crate::germ::{GermClass, GermKind};
use crate::polyring::{binary_form_root_profile, fmt_rational, parse_rational, qf, MPoly, PolyError, Rational, VarTable};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilityError {
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("singularity inventory is not certified complete")]
    Uncertified,
    #[error("component degrees are needed to decide: {0}")]
    NeedComponentDegrees(String),
    #[error("alpha out of range: {0}")]
    OutOfRange(String),
    #[error("binary form is zero (ribbon)")]
    RibbonInput,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Degen(#[from] DegenError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Stable,
    StrictlySemistable,
    Polystable,
    Unstable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Stable => "Stable",
            Status::StrictlySemistable => "StrictlySemistable",
            Status::Polystable => "Polystable",
            Status::Unstable => "Unstable",
        };
        f.write_str(s)
    }
}

/// One applied rule: its id, what was checked and the quoted source clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reason {
    pub rule: String,
    pub clause: String,
    pub anchor: String,
}

impl Reason {
    pub fn new(rule: &str, clause: impl Into<String>) -> Self {
        Reason {
            rule: rule.to_string(),
            clause: clause.into(),
            anchor: anchors::quote(rule).to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub status: Status,
    pub reasons: Vec<Reason>,
}

impl StabilityVerdict {
    fn new(status: Status, reasons: Vec<Reason>) -> Self {
        StabilityVerdict { status, reasons }
    }

    pub fn fired(&self, rule: &str) -> bool {
        self.reasons.iter().any(|r| r.rule == rule)
    }
}

// ---------------------------------------------------------------- binary forms

/// GIT stability of a binary form of degree `2g + 2` from its root
/// multiplicities over the algebraic closure.
pub fn binary_form_git(w: &WeierstrassCurve) -> Result<StabilityVerdict, StabilityError> {
    if w.f.is_zero() {
        return Err(StabilityError::RibbonInput);
    }
    let g = w.g;
    let profile = binary_form_root_profile(&w.f)?;
    let max = profile.iter().map(|&(m, _)| m).max().unwrap_or(0);
    let distinct: u32 = profile.iter().map(|&(_, c)| c).sum();
    let desc = profile
        .iter()
        .map(|(m, c)| format!("{c} root(s) of multiplicity {m}"))
        .collect::<Vec<_>>()
        .join(", ");
    let v = if max >= g + 2 {
        StabilityVerdict::new(
            Status::Unstable,
            vec![Reason::new("binary.git", format!("a root of multiplicity {max} >= g + 2 ({desc})"))],
        )
    } else if max == g + 1 && distinct == 2 {
        StabilityVerdict::new(
            Status::Polystable,
            vec![Reason::new(
                "binary.polystable",
                format!("two distinct roots, each of multiplicity g + 1 = {}", g + 1),
            )],
        )
    } else if max == g + 1 {
        StabilityVerdict::new(
            Status::StrictlySemistable,
            vec![Reason::new("binary.git", format!("a root of multiplicity g + 1 = {} ({desc})", g + 1))],
        )
    } else {
        StabilityVerdict::new(
            Status::Stable,
            vec![Reason::new("binary.git", format!("all root multiplicities <= g = {g}"))],
        )
    };
    Ok(v)
}

// ---------------------------------------------------------------- Chow

/// The strictly semistable orbits with closed orbits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolystableOrbit {
    C2A5,
    CD,
    CAB,
}

/// Structural summary of a (2,3) complete intersection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowInput {
    pub quadric_rank: u32,
    pub reduced: bool,
    pub ribbon: bool,
    pub inventory: SingularityInventory,
    /// Degrees of the geometric components, when known.
    pub component_degrees: Option<Vec<u32>>,
    pub vertex_entry: Option<GermClass>,
    pub triborough: bool,
    /// Claimed membership in a polystable orbit, checked against the data.
    pub orbit: Option<PolystableOrbit>,
    /// Proceed without a certified inventory; recorded in the reasons.
    #[serde(default)]
    pub allow_uncertified: bool,
}

/// Compact hand-written form of a [`ChowInput`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowSummary {
    pub rank: u32,
    #[serde(default = "yes")]
    pub reduced: bool,
    #[serde(default)]
    pub ribbon: bool,
    /// Labels of the singularities at smooth points of the quadric.
    #[serde(default)]
    pub smooth: Vec<String>,
    #[serde(default)]
    pub vertex: Option<String>,
    #[serde(default)]
    pub degrees: Option<Vec<u32>>,
    #[serde(default)]
    pub triborough: bool,
    #[serde(default)]
    pub orbit: Option<PolystableOrbit>,
}

fn yes() -> bool {
    true
}

fn class_of(label: &str) -> Result<GermClass, StabilityError> {
    GermClass::from_label(label).ok_or_else(|| StabilityError::Invalid(format!("unknown singularity `{label}`")))
}

impl ChowSummary {
    pub fn to_input(&self) -> Result<ChowInput, StabilityError> {
        let entry = |class: GermClass, location: Location| InventoryEntry {
            chart: "summary".into(),
            point: None,
            projective: None,
            class,
            orbit: None,
            location,
        };
        let mut entries = Vec::new();
        for s in &self.smooth {
            let loc = if self.rank == 2 && s == "A1" && self.triborough {
                Location::DoubleLine
            } else {
                Location::Smooth
            };
            entries.push(entry(class_of(s)?, loc));
        }
        let vertex_entry = match &self.vertex {
            Some(v) => {
                let c = class_of(v)?;
                entries.push(entry(c.clone(), Location::Vertex));
                Some(c)
            }
            None => None,
        };
        let mut inventory = SingularityInventory::new(entries);
        inventory.certified_complete = true;
        Ok(ChowInput {
            quadric_rank: self.rank,
            reduced: self.reduced,
            ribbon: self.ribbon,
            inventory,
            component_degrees: self.degrees.clone(),
            vertex_entry,
            triborough: self.triborough,
            orbit: self.orbit,
            allow_uncertified: false,
        })
    }
}

fn validate_chow(ci: &ChowInput) -> Result<(), StabilityError> {
    let bad = |m: &str| Err(StabilityError::Inconsistent(m.to_string()));
    if !(2..=4).contains(&ci.quadric_rank) {
        return bad("quadric rank must be 2, 3 or 4");
    }
    if ci.ribbon && ci.reduced {
        return bad("a ribbon is not reduced");
    }
    if ci.vertex_entry.is_some() && ci.quadric_rank != 3 {
        return bad("a vertex entry needs a rank-3 quadric");
    }
    if ci.triborough && ci.quadric_rank != 2 {
        return bad("a triborough lies on a rank-2 quadric");
    }
    let vertices: Vec<&InventoryEntry> =
        ci.inventory.entries.iter().filter(|e| e.location == Location::Vertex).collect();
    match (vertices.as_slice(), &ci.vertex_entry) {
        ([], None) => {}
        ([e], Some(v)) if &e.class == v => {}
        _ => return bad("vertex entry does not match the inventory"),
    }
    if ci.quadric_rank != 2 && ci.inventory.entries.iter().any(|e| e.location == Location::DoubleLine) {
        return bad("double-line entries need a rank-2 quadric");
    }
    Ok(())
}

fn smooth_entries(ci: &ChowInput) -> impl Iterator<Item = &GermClass> {
    ci.inventory
        .entries
        .iter()
        .filter(|e| e.location != Location::Vertex)
        .map(|e| &e.class)
}

fn a_at_most(c: &GermClass, k: u32) -> bool {
    matches!(c.kind, GermKind::A(j) if j <= k) || c.kind == GermKind::Smooth
}

fn has_d4_or_a5<'a>(mut it: impl Iterator<Item = &'a GermClass>) -> bool {
    it.any(|c| c.kind == GermKind::D4 || c.kind == GermKind::A(5))
}

fn has_a_at_least<'a>(mut it: impl Iterator<Item = &'a GermClass>, k: u32) -> bool {
    it.any(|c| matches!(c.kind, GermKind::A(j) if j >= k))
}

/// Check a claimed polystable orbit against the summary.
fn check_orbit(ci: &ChowInput, o: PolystableOrbit) -> Result<(), StabilityError> {
    let labels = ci.inventory.labels();
    let ok = match o {
        PolystableOrbit::C2A5 => {
            let mut d = ci.component_degrees.clone().unwrap_or_default();
            d.sort();
            ci.quadric_rank == 4 && labels == ["A5", "A5"] && d == [1, 1, 4]
        }
        PolystableOrbit::CD => {
            ci.quadric_rank == 2 && ci.triborough && labels == ["A1", "A1", "A1", "D4", "D4"]
        }
        PolystableOrbit::CAB => {
            ci.quadric_rank == 3
                && ci.vertex_entry.as_ref().map(|v| v.kind) == Some(GermKind::A(3))
                && smooth_entries(ci).any(|c| c.kind == GermKind::A(5))
        }
    };
    if ok {
        Ok(())
    } else {
        Err(StabilityError::Inconsistent(format!("data do not match the {o:?} orbit")))
    }
}

/// Chow stability of a (2,3) complete intersection by the clause list.
pub fn chow_stability(ci: &ChowInput) -> Result<StabilityVerdict, StabilityError> {
    validate_chow(ci)?;
    if let Some(o) = ci.orbit {
        check_orbit(ci, o)?;
    }
    if !ci.reduced {
        return Ok(if ci.ribbon {
            StabilityVerdict::new(
                Status::Polystable,
                vec![
                    Reason::new("chow.ribbon", "non-reduced semistable cycle: a genus 4 ribbon"),
                    Reason::new("chow.ribbon_point", "the ribbon is the special point of the curve of C_{A,B}"),
                ],
            )
        } else {
            StabilityVerdict::new(
                Status::Unstable,
                vec![Reason::new("chow.ribbon", "non-reduced and not a ribbon")],
            )
        });
    }
    let mut reasons = Vec::new();
    if !ci.inventory.certified_complete {
        if !ci.allow_uncertified {
            return Err(StabilityError::Uncertified);
        }
        reasons.push(Reason::new(
            "chow.stable",
            "warning: singularity inventory not certified complete; verdict assumes it is",
        ));
    }
    let rank = ci.quadric_rank;
    let smooth_ok = smooth_entries(ci).all(|c| a_at_most(c, 4));
    let vertex_ok = ci.vertex_entry.as_ref().is_none_or(|v| a_at_most(v, 2));
    if rank >= 3 && smooth_ok && vertex_ok {
        reasons.push(Reason::new(
            "chow.stable",
            format!("rank {rank}, A<=4 at smooth points, A<=2 at the vertex"),
        ));
        return Ok(StabilityVerdict::new(Status::Stable, reasons));
    }
    let degrees = |why: &str| {
        ci.component_degrees
            .clone()
            .ok_or_else(|| StabilityError::NeedComponentDegrees(why.to_string()))
    };
    let semistable = match rank {
        4 => {
            if has_d4_or_a5(smooth_entries(ci)) {
                reasons.push(Reason::new("chow.rank4", "(a): contains a D4 or A5 singularity"));
                true
            } else if has_a_at_least(smooth_entries(ci), 6) {
                let d = degrees("rank 4 with an A_k, k >= 6")?;
                if d.iter().all(|&x| x > 2) {
                    reasons.push(Reason::new(
                        "chow.rank4",
                        "(b): no component of degree <= 2 and an A_k with k >= 6",
                    ));
                    true
                } else {
                    reasons.push(Reason::new("chow.rank4", "A_k with k >= 6 but a component of degree <= 2"));
                    false
                }
            } else {
                reasons.push(Reason::new("chow.rank4", "neither (a) nor (b) holds"));
                false
            }
        }
        3 => {
            let vertex_a = ci.vertex_entry.as_ref().is_none_or(|v| v.a_index().is_some());
            let va = ci.vertex_entry.as_ref().and_then(|v| v.a_index()).unwrap_or(0);
            if !vertex_a {
                reasons.push(Reason::new("chow.rank3", "the vertex singularity is not of type A"));
                false
            } else if has_d4_or_a5(smooth_entries(ci)) || va == 3 {
                reasons.push(Reason::new(
                    "chow.rank3",
                    "(a): D4 or A5 at a smooth point, or A3 at the vertex",
                ));
                true
            } else if has_a_at_least(smooth_entries(ci), 6) || va >= 4 {
                let d = degrees("rank 3 with A_k, k >= 6 at a smooth point or k >= 4 at the vertex")?;
                if d.iter().all(|&x| x != 1) {
                    reasons.push(Reason::new(
                        "chow.rank3",
                        "(b): no line component, and A_k with k >= 6 at a smooth point or k >= 4 at the vertex",
                    ));
                    true
                } else {
                    reasons.push(Reason::new("chow.rank3", "(b) fails: the curve contains a line"));
                    false
                }
            } else {
                reasons.push(Reason::new("chow.rank3", "neither (a) nor (b) holds"));
                false
            }
        }
        _ => {
            if ci.triborough {
                reasons.push(Reason::new("chow.rank2", "meets the double line in 3 distinct points"));
                true
            } else {
                reasons.push(Reason::new("chow.rank2", "does not meet the double line in 3 distinct points"));
                false
            }
        }
    };
    if !semistable {
        return Ok(StabilityVerdict::new(Status::Unstable, reasons));
    }
    match ci.orbit {
        Some(o) => {
            reasons.push(Reason::new("chow.polystable", format!("member of the {o:?} orbit")));
            Ok(StabilityVerdict::new(Status::Polystable, reasons))
        }
        None => {
            reasons.push(Reason::new(
                "chow.polystable",
                "not matched to a polystable orbit; polystability not decided",
            ));
            Ok(StabilityVerdict::new(Status::StrictlySemistable, reasons))
        }
    }
}

/// Chow verdict with ribbons, triboroughs and A3 vertices removed.
pub fn last_chamber_vgit(ci: &ChowInput) -> Result<StabilityVerdict, StabilityError> {
    let mut v = chow_stability(ci)?;
    if v.status == Status::Unstable {
        return Ok(v);
    }
    let why = if ci.ribbon {
        Some("ribbon")
    } else if ci.triborough {
        Some("elliptic triborough")
    } else if ci.vertex_entry.as_ref().map(|c| c.kind) == Some(GermKind::A(3)) {
        Some("tacnode at the cone vertex")
    } else {
        None
    };
    match why {
        Some(w) => {
            v.status = Status::Unstable;
            v.reasons.push(Reason::new("vgit.last", format!("removed in the last chamber: {w}")));
        }
        None => v.reasons.push(Reason::new("vgit.last_semistable", "kept from the Chow quotient")),
    }
    Ok(v)
}

/// Build a [`ChowInput`] from a complete intersection, matching the
/// polystable orbits by their invariants. A curve on the cone with an A3
/// vertex and an A5 point belongs to the C_{A,B} orbit exactly when its
/// normal form has vanishing quartic part.
pub fn chow_input_from_curve(c: &CurveSpec) -> Result<ChowInput, StabilityError> {
    let quadric = c
        .quadric()
        .ok_or_else(|| StabilityError::Invalid("Chow stability needs a (2,3) complete intersection".into()))?;
    let rank = crate::curves::quadric_rank(quadric)? as u32;
    let nonreduced = c.has_tag("ribbon") || c.has_tag("nonreduced");
    if nonreduced {
        let mut inventory = SingularityInventory::new(Vec::new());
        inventory.certified_complete = true;
        return Ok(ChowInput {
            quadric_rank: rank,
            reduced: false,
            ribbon: c.has_tag("ribbon"),
            inventory,
            component_degrees: None,
            vertex_entry: None,
            triborough: false,
            orbit: None,
            allow_uncertified: false,
        });
    }
    let a = analyze_curve(c)?;
    let ci = a.ci.as_ref().expect("complete intersection");
    let vertex_entry = a
        .inventory
        .entries
        .iter()
        .find(|e| e.location == Location::Vertex)
        .map(|e| e.class.clone());
    let component_degrees = a.model.as_ref().and_then(|m| {
        let d = m.member_degrees();
        (d.len() == m.geometric_count() as usize).then_some(d)
    });
    let mut input = ChowInput {
        quadric_rank: rank,
        reduced: true,
        ribbon: false,
        inventory: a.inventory.clone(),
        component_degrees,
        vertex_entry,
        triborough: ci.triborough.unwrap_or(false),
        orbit: None,
        allow_uncertified: false,
    };
    let candidates = [PolystableOrbit::C2A5, PolystableOrbit::CD, PolystableOrbit::CAB];
    for o in candidates {
        if check_orbit(&input, o).is_err() {
            continue;
        }
        let confirmed = match o {
            PolystableOrbit::C2A5 => {
                // both A5 points separate the curve
                let model = a.model.as_ref();
                model.is_some_and(|m| {
                    (0..a.inventory.entries.len())
                        .all(|i| crate::curves::separating_check(&a.inventory, i, m).unwrap_or(false))
                })
            }
            PolystableOrbit::CD => true,
            PolystableOrbit::CAB => match &ci.form {
                QuadricForm::Cone { .. } => {
                    let sextic = ci.form.pullback(&c.equation)?;
                    matches!(a3_normal_form(&sextic), Ok(nf) if nf.h4.is_zero())
                }
                _ => false,
            },
        };
        if confirmed {
            input.orbit = Some(o);
            break;
        }
    }
    Ok(input)
}

pub fn chow_stability_of_curve(c: &CurveSpec) -> Result<StabilityVerdict, StabilityError> {
    chow_stability(&chow_input_from_curve(c)?)
}

pub fn last_chamber_vgit_of_curve(c: &CurveSpec) -> Result<StabilityVerdict, StabilityError> {
    last_chamber_vgit(&chow_input_from_curve(c)?)
}

// ---------------------------------------------------------------- alpha

/// A point of alpha in the supported range: an exact rational in
/// `[2/3, 1]` or the open chamber just below `2/3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaArg {
    Exact(Rational),
    BelowTwoThirds,
}

pub const BELOW_TWO_THIRDS_TAG: &str = "2/3-eps";

impl AlphaArg {
    pub fn parse(s: &str) -> Result<Self, StabilityError> {
        let t = s.trim();
        if t == BELOW_TWO_THIRDS_TAG {
            return Ok(AlphaArg::BelowTwoThirds);
        }
        parse_rational(t)
            .map(AlphaArg::Exact)
            .ok_or_else(|| StabilityError::Invalid(format!("cannot read alpha `{s}`")))
    }
}

impl fmt::Display for AlphaArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaArg::Exact(r) => f.write_str(&fmt_rational(r)),
            AlphaArg::BelowTwoThirds => f.write_str(BELOW_TWO_THIRDS_TAG),
        }
    }
}

/// One row of the chamber table, in decreasing alpha.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub id: &'static str,
    /// `(lower, upper)` as `(num, den)`; equal bounds mark a wall.
    pub lower: (i64, i64),
    pub upper: (i64, i64),
    pub upper_closed: bool,
    pub max_a: u32,
    pub tails: &'static [u32],
    pub chains: &'static [(u32, u32)],
    pub weierstrass: &'static [u32],
    pub anchor: &'static str,
}

impl Chamber {
    pub fn is_wall(&self) -> bool {
        self.lower == self.upper
    }

    fn contains(&self, a: &Rational) -> bool {
        let lo = qf(self.lower.0, self.lower.1);
        let hi = qf(self.upper.0, self.upper.1);
        if self.is_wall() {
            return *a == lo;
        }
        *a > lo && (*a < hi || (self.upper_closed && *a == hi))
    }
}

/// The singularity and configuration clauses per chamber.
pub const CHAMBERS: &[Chamber] = &[
    Chamber {
        id: "(9/11, 1]",
        lower: (9, 11),
        upper: (1, 1),
        upper_closed: true,
        max_a: 1,
        tails: &[],
        chains: &[],
        weierstrass: &[],
        anchor: "alpha.c1",
    },
    Chamber {
        id: "9/11",
        lower: (9, 11),
        upper: (9, 11),
        upper_closed: true,
        max_a: 2,
        tails: &[],
        chains: &[],
        weierstrass: &[],
        anchor: "alpha.w1",
    },
    Chamber {
        id: "(7/10, 9/11)",
        lower: (7, 10),
        upper: (9, 11),
        upper_closed: false,
        max_a: 2,
        tails: &[1],
        chains: &[],
        weierstrass: &[],
        anchor: "alpha.c2",
    },
    Chamber {
        id: "7/10",
        lower: (7, 10),
        upper: (7, 10),
        upper_closed: true,
        max_a: 3,
        tails: &[1, 3],
        chains: &[],
        weierstrass: &[],
        anchor: "alpha.w2",
    },
    Chamber {
        id: "(2/3, 7/10)",
        lower: (2, 3),
        upper: (7, 10),
        upper_closed: false,
        max_a: 3,
        tails: &[1, 3],
        chains: &[(1, 1)],
        weierstrass: &[],
        anchor: "alpha.c3",
    },
    Chamber {
        id: "2/3",
        lower: (2, 3),
        upper: (2, 3),
        upper_closed: true,
        max_a: 4,
        tails: &[1, 3, 4],
        chains: &[(1, 1), (1, 4), (4, 4)],
        weierstrass: &[],
        anchor: "alpha.w3",
    },
    Chamber {
        id: "(2/3-eps, 2/3)",
        lower: (2, 3),
        upper: (2, 3),
        upper_closed: false,
        max_a: 4,
        tails: &[1, 3, 4],
        chains: &[(1, 1), (1, 4), (4, 4)],
        weierstrass: &[1],
        anchor: "alpha.c4",
    },
];

/// Index into [`CHAMBERS`].
pub fn chamber_of(alpha: &AlphaArg) -> Result<usize, StabilityError> {
    match alpha {
        AlphaArg::BelowTwoThirds => Ok(CHAMBERS.len() - 1),
        AlphaArg::Exact(a) => CHAMBERS[..CHAMBERS.len() - 1]
            .iter()
            .position(|c| c.contains(a))
            .ok_or_else(|| {
                StabilityError::OutOfRange(format!(
                    "alpha = {} is outside [2/3, 1]; use `{BELOW_TWO_THIRDS_TAG}` for the chamber below 2/3",
                    fmt_rational(a)
                ))
            }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombComponent {
    pub label: String,
    /// Geometric genus.
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombBranch {
    pub component: String,
    /// The branch passes through a Weierstrass point of its component.
    #[serde(default)]
    pub weierstrass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombSingularity {
    /// `A<k>` or `D4`.
    pub kind: String,
    pub branches: Vec<CombBranch>,
}

/// Dual-graph model of a curve: components with geometric genera and
/// singular points with the components their branches lie on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombCurve {
    pub components: Vec<CombComponent>,
    pub singularities: Vec<CombSingularity>,
}

struct Sing {
    class: GermClass,
    comps: Vec<usize>,
    weierstrass: Vec<bool>,
}

struct Graph {
    genus: Vec<u32>,
    sings: Vec<Sing>,
}

/// A forbidden sub-configuration found on a curve.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Configuration {
    /// Elliptic tail attached at an `A_k`.
    Tail { k: u32, components: Vec<String> },
    /// Elliptic chain of length `length` attached at `A_k` and `A_l`.
    Chain { k: u32, l: u32, length: usize, components: Vec<String> },
    /// Weierstrass chain attached at an `A_k`.
    Weierstrass { k: u32, components: Vec<String> },
}

impl Graph {
    fn build(c: &CombCurve) -> Result<Self, StabilityError> {
        if c.components.is_empty() {
            return Err(StabilityError::Invalid("curve has no components".into()));
        }
        if c.components.len() > 16 {
            return Err(StabilityError::Invalid("at most 16 components are supported".into()));
        }
        let idx = |l: &str| {
            c.components
                .iter()
                .position(|x| x.label == l)
                .ok_or_else(|| StabilityError::Invalid(format!("unknown component `{l}`")))
        };
        let mut sings = Vec::new();
        for s in &c.singularities {
            let class = class_of(&s.kind)?;
            if !matches!(class.kind, GermKind::A(_) | GermKind::D4) {
                return Err(StabilityError::Invalid(format!("unsupported singularity `{}`", s.kind)));
            }
            if s.branches.len() as u32 != class.branches {
                return Err(StabilityError::Invalid(format!(
                    "{} has {} branches, not {}",
                    s.kind,
                    class.branches,
                    s.branches.len()
                )));
            }
            sings.push(Sing {
                comps: s.branches.iter().map(|b| idx(&b.component)).collect::<Result<_, _>>()?,
                weierstrass: s.branches.iter().map(|b| b.weierstrass).collect(),
                class,
            });
        }
        let g = Graph {
            genus: c.components.iter().map(|x| x.genus).collect(),
            sings,
        };
        let all = (1u32 << g.genus.len()) - 1;
        if !g.connected(all, &[]) {
            return Err(StabilityError::Invalid("curve is not connected".into()));
        }
        Ok(g)
    }

    fn n(&self) -> usize {
        self.genus.len()
    }

    fn inside(set: u32, i: usize) -> bool {
        set & (1 << i) != 0
    }

    /// Connected through singularities not in `cut`.
    fn connected(&self, set: u32, cut: &[usize]) -> bool {
        let members: Vec<usize> = (0..self.n()).filter(|&i| Self::inside(set, i)).collect();
        let Some(&first) = members.first() else { return false };
        let mut seen = 1u32 << first;
        loop {
            let mut grew = false;
            for (k, s) in self.sings.iter().enumerate() {
                if cut.contains(&k) {
                    continue;
                }
                let inner: Vec<usize> = s.comps.iter().copied().filter(|&c| Self::inside(set, c)).collect();
                if inner.iter().any(|&c| Self::inside(seen, c)) {
                    for c in inner {
                        if !Self::inside(seen, c) {
                            seen |= 1 << c;
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        seen == set
    }

    /// Local delta of the branches of `s` lying in `set`.
    fn local_delta(&self, s: &Sing, set: u32) -> u32 {
        let b = s.comps.iter().filter(|&&c| Self::inside(set, c)).count() as u32;
        if b == s.class.branches {
            s.class.delta
        } else if s.class.kind == GermKind::D4 && b == 2 {
            1
        } else {
            0
        }
    }

    /// Arithmetic genus of a connected subcurve, ignoring `skip`.
    fn p_a(&self, set: u32, skip: &[usize]) -> i64 {
        let comps = (0..self.n()).filter(|&i| Self::inside(set, i));
        let g: i64 = comps.clone().map(|i| self.genus[i] as i64).sum();
        let d: i64 = self
            .sings
            .iter()
            .enumerate()
            .filter(|(k, _)| !skip.contains(k))
            .map(|(_, s)| self.local_delta(s, set) as i64)
            .sum();
        g + d - comps.count() as i64 + 1
    }

    /// Singularities with branches both in and out of `set`.
    fn boundary(&self, set: u32) -> Vec<usize> {
        (0..self.sings.len())
            .filter(|&k| {
                let s = &self.sings[k];
                s.comps.iter().any(|&c| Self::inside(set, c)) && s.comps.iter().any(|&c| !Self::inside(set, c))
            })
            .collect()
    }

    /// `deg omega_C` restricted to each component.
    fn omega_degrees(&self) -> Vec<i64> {
        (0..self.n())
            .map(|z| {
                let mut d = 2 * self.genus[z] as i64 - 2;
                for s in &self.sings {
                    let b = s.comps.iter().filter(|&&c| c == z).count() as i64;
                    if b == 0 {
                        continue;
                    }
                    let total = s.class.branches as i64;
                    let z_delta = self.local_delta(s, 1 << z) as i64;
                    // intersection of the branches on z with the others
                    let meet = match s.class.kind {
                        GermKind::A(k) if b < total => k.div_ceil(2) as i64,
                        GermKind::D4 => b * (total - b),
                        _ => 0,
                    };
                    d += 2 * z_delta + meet;
                }
                d
            })
            .collect()
    }

    fn labels(&self, set: u32, names: &[String]) -> Vec<String> {
        (0..self.n()).filter(|&i| Self::inside(set, i)).map(|i| names[i].clone()).collect()
    }

    fn a_index(&self, k: usize) -> Option<u32> {
        self.sings[k].class.a_index()
    }

    /// Split `set` along the tacnodes `links` into pieces forming a path.
    fn path_pieces(&self, set: u32, links: &[usize]) -> Option<Vec<u32>> {
        let mut pieces: Vec<u32> = Vec::new();
        let mut rest = set;
        while rest != 0 {
            let first = rest.trailing_zeros() as usize;
            let mut piece = 1u32 << first;
            loop {
                let mut grew = false;
                for (k, s) in self.sings.iter().enumerate() {
                    if links.contains(&k) {
                        continue;
                    }
                    if s.comps.iter().any(|&c| Self::inside(piece, c)) {
                        for &c in &s.comps {
                            if Self::inside(set, c) && !Self::inside(piece, c) {
                                piece |= 1 << c;
                                grew = true;
                            }
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            pieces.push(piece);
            rest &= !piece;
        }
        if pieces.len() != links.len() + 1 {
            return None;
        }
        // each link joins two different pieces; the pieces graph is a path
        let piece_of = |c: usize| pieces.iter().position(|&p| Self::inside(p, c)).expect("covered");
        let mut adj = vec![Vec::new(); pieces.len()];
        for &l in links {
            let s = &self.sings[l];
            let (a, b) = (piece_of(s.comps[0]), piece_of(s.comps[1]));
            if a == b || adj[a].contains(&b) {
                return None;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        if pieces.len() == 1 {
            return Some(pieces);
        }
        let start = (0..pieces.len()).find(|&i| adj[i].len() == 1)?;
        if adj.iter().any(|a| a.len() > 2) {
            return None;
        }
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        (order.len() == pieces.len()).then(|| order.into_iter().map(|i| pieces[i]).collect())
    }

    /// Every elliptic tail, elliptic chain and Weierstrass chain.
    fn configurations(&self, names: &[String]) -> Vec<Configuration> {
        let mut out = BTreeSet::new();
        let n = self.n();
        for set in 1u32..(1 << n) {
            if !self.connected(set, &[]) {
                continue;
            }
            let boundary = self.boundary(set);
            // odd attachments: one branch inside, the others outside
            let odd_ok = boundary.iter().all(|&k| {
                let s = &self.sings[k];
                s.class.branches == 2 && s.comps.iter().filter(|&&c| Self::inside(set, c)).count() == 1
            });
            if !odd_ok || boundary.len() > 2 {
                continue;
            }
            let comps = self.labels(set, names);
            // even attachments: a unibranch singularity inside the subcurve
            let evens: Vec<usize> = (0..self.sings.len())
                .filter(|&k| self.sings[k].class.branches == 1 && Self::inside(set, self.sings[k].comps[0]))
                .collect();
            let attach_sets: Vec<Vec<usize>> = match boundary.len() {
                2 => vec![boundary.clone()],
                1 => std::iter::once(boundary.clone())
                    .chain(evens.iter().map(|&e| vec![boundary[0], e]))
                    .collect(),
                _ => {
                    let mut v: Vec<Vec<usize>> = evens.iter().map(|&e| vec![e]).collect();
                    for (i, &a) in evens.iter().enumerate() {
                        for &b in &evens[i + 1..] {
                            v.push(vec![a, b]);
                        }
                    }
                    v
                }
            };
            for attach in attach_sets {
                let even: Vec<usize> = attach.iter().copied().filter(|k| !boundary.contains(k)).collect();
                if attach.len() == 1 {
                    let k = self.a_index(attach[0]).unwrap_or(0);
                    if self.p_a(set, &even) == 1 {
                        out.insert(Configuration::Tail { k, components: comps.clone() });
                    }
                    // Weierstrass chains: genus 2 attached at a Weierstrass point
                    if even.is_empty() && self.p_a(set, &[]) == 2 {
                        let s = &self.sings[attach[0]];
                        let w = s
                            .comps
                            .iter()
                            .zip(&s.weierstrass)
                            .any(|(&c, &w)| Self::inside(set, c) && w);
                        if w {
                            out.insert(Configuration::Weierstrass { k, components: comps.clone() });
                        }
                    }
                    continue;
                }
                // chains: choose the tacnodes that separate consecutive pieces
                let candidates: Vec<usize> = (0..self.sings.len())
                    .filter(|&k| {
                        let s = &self.sings[k];
                        s.class.kind == GermKind::A(3)
                            && s.comps.iter().all(|&c| Self::inside(set, c))
                            && s.comps[0] != s.comps[1]
                    })
                    .collect();
                for mask in 0u32..(1 << candidates.len()) {
                    let links: Vec<usize> = (0..candidates.len())
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| candidates[i])
                        .collect();
                    let Some(pieces) = self.path_pieces(set, &links) else { continue };
                    let mut skip = links.clone();
                    skip.extend(&even);
                    if pieces.iter().any(|&p| self.p_a(p, &skip) != 1) {
                        continue;
                    }
                    let on = |k: usize, p: u32| self.sings[k].comps.iter().any(|&c| Self::inside(p, c));
                    let (a, b) = (attach[0], attach[1]);
                    let ends_ok = if pieces.len() == 1 {
                        true
                    } else {
                        let (first, last) = (pieces[0], *pieces.last().expect("nonempty"));
                        (on(a, first) && on(b, last)) || (on(b, first) && on(a, last))
                    };
                    // attachments may not touch the middle pieces
                    let middle_ok = pieces.len() <= 2
                        || pieces[1..pieces.len() - 1].iter().all(|&p| !on(a, p) && !on(b, p));
                    if ends_ok && middle_ok {
                        let mut kl = [self.a_index(a).unwrap_or(0), self.a_index(b).unwrap_or(0)];
                        kl.sort();
                        out.insert(Configuration::Chain {
                            k: kl[0],
                            l: kl[1],
                            length: pieces.len(),
                            components: comps.clone(),
                        });
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

/// Arithmetic genus of the whole curve.
pub fn comb_arithmetic_genus(c: &CombCurve) -> Result<i64, StabilityError> {
    let g = Graph::build(c)?;
    Ok(g.p_a((1 << g.n()) - 1, &[]))
}

/// All elliptic tails, elliptic chains and Weierstrass chains.
pub fn comb_configurations(c: &CombCurve) -> Result<Vec<Configuration>, StabilityError> {
    let g = Graph::build(c)?;
    let names: Vec<String> = c.components.iter().map(|x| x.label.clone()).collect();
    Ok(g.configurations(&names))
}

/// Whether the curve is parameterized by the alpha-stable stack.
pub fn alpha_stability(c: &CombCurve, alpha: &AlphaArg) -> Result<StabilityVerdict, StabilityError> {
    let idx = chamber_of(alpha)?;
    let ch = &CHAMBERS[idx];
    let g = Graph::build(c)?;
    let names: Vec<String> = c.components.iter().map(|x| x.label.clone()).collect();
    let mut reasons = vec![Reason::new(
        ch.anchor,
        format!(
            "alpha = {alpha} lies in {} {}",
            if ch.is_wall() { "the wall" } else { "the chamber" },
            ch.id
        ),
    )];
    let pa = g.p_a((1 << g.n()) - 1, &[]);
    let unstable = |mut reasons: Vec<Reason>, r: Reason| {
        reasons.push(r);
        Ok(StabilityVerdict::new(Status::Unstable, reasons))
    };
    if pa < 4 {
        return unstable(reasons, Reason::new("alpha.ample", format!("arithmetic genus {pa} < 4")));
    }
    let degs = g.omega_degrees();
    if let Some(z) = degs.iter().position(|&d| d <= 0) {
        return unstable(
            reasons,
            Reason::new(
                "alpha.ample",
                format!("omega has degree {} on component `{}`", degs[z], names[z]),
            ),
        );
    }
    for s in &g.sings {
        let ok = matches!(s.class.kind, GermKind::A(k) if k <= ch.max_a);
        if !ok {
            return unstable(
                reasons,
                Reason::new(ch.anchor, format!("{} is not allowed (only A<={})", s.class.label(), ch.max_a)),
            );
        }
    }
    for conf in g.configurations(&names) {
        let hit = match &conf {
            Configuration::Tail { k, .. } => ch.tails.contains(k).then(|| {
                Reason::new(
                    if *k == 4 { "alpha.tail_a4" } else { "alpha.tail" },
                    format!("contains an A{k}-attached elliptic tail {conf:?}"),
                )
            }),
            Configuration::Chain { k, l, .. } => ch.chains.contains(&(*k, *l)).then(|| {
                Reason::new(
                    if (*k, *l) == (1, 1) { "alpha.chain_a1a1" } else { "alpha.chain_a4" },
                    format!("contains an A{k}/A{l}-attached elliptic chain {conf:?}"),
                )
            }),
            Configuration::Weierstrass { k, .. } => ch.weierstrass.contains(k).then(|| {
                Reason::new(
                    "alpha.weierstrass_chain",
                    format!("contains an A{k}-attached Weierstrass chain {conf:?}"),
                )
            }),
        };
        if let Some(r) = hit {
            return unstable(reasons, r);
        }
    }
    reasons.push(Reason::new(ch.anchor, "all singularity and configuration clauses hold"));
    Ok(StabilityVerdict::new(Status::Stable, reasons))
}

// ---------------------------------------------------------------- S2A5

/// The genus-2 double cover `x2^2 = f` of one component curve after
/// completing the square: `f = c^2 / 4 - B` with `c = x0^3 - a x0 x1^2` and
/// `B = b0 x1^6 + b1 x0 x1^5 + b2 x0^2 x1^4 + b3 x0^3 x1^3`.
pub fn s2a5_branch_form(p: &[Rational; 5]) -> MPoly {
    let v = VarTable::unweighted(&["x0", "x1"]);
    let x0 = MPoly::var_at(&v, 0);
    let x1 = MPoly::var_at(&v, 1);
    let c = &x0.pow(3) - &(&x0 * &x1.pow(2)).scale(&p[0]);
    let mut b = MPoly::zero(&v);
    for (i, bi) in p[1..].iter().enumerate() {
        let i = i as u32;
        b = &b + &(&x0.pow(i) * &x1.pow(6 - i)).scale(bi);
    }
    &c.pow(2).scale(&qf(1, 4)) - &b
}

/// Both component curves have at worst A4 singularities exactly when both
/// parameter vectors are nonzero; cross-checked on the branch forms.
pub fn s2a5_family_filter(params: &[[Rational; 5]; 2]) -> Result<StabilityVerdict, StabilityError> {
    let mut reasons = Vec::new();
    let mut all_ok = true;
    for (i, p) in params.iter().enumerate() {
        let nonzero = p.iter().any(|x| !x.is_zero());
        let w = WeierstrassCurve::new(2, s2a5_branch_form(p))?;
        let inv = weierstrass_singularities(&w)?;
        let worst = inv.entries.iter().filter_map(|e| e.class.a_index()).max().unwrap_or(0);
        let mild = worst <= 4;
        if mild != nonzero {
            return Err(StabilityError::Inconsistent(format!(
                "component {}: parameters {} but the branch form gives A{worst}",
                i + 1,
                if nonzero { "nonzero" } else { "zero" }
            )));
        }
        let labels = inv.labels();
        reasons.push(Reason::new(
            "s2a5.filter",
            format!(
                "component {}: parameters {}, singularities [{}]",
                i + 1,
                if nonzero { "not all zero" } else { "all zero" },
                labels.join(", ")
            ),
        ));
        all_ok &= nonzero;
    }
    let status = if all_ok { Status::Stable } else { Status::Unstable };
    Ok(StabilityVerdict::new(status, reasons))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, q};

    fn wc(g: u32, s: &str) -> WeierstrassCurve {
        let v = VarTable::unweighted(&["x", "y"]);
        WeierstrassCurve::new(g, parse_poly(s, &v).unwrap()).unwrap()
    }

    #[test]
    fn binary_examples() {
        assert_eq!(binary_form_git(&wc(4, "x^5*y^5")).unwrap().status, Status::Polystable);
        assert_eq!(binary_form_git(&wc(4, "x^6*(y^4 + x*y^3)")).unwrap().status, Status::Unstable);
        assert_eq!(binary_form_git(&wc(4, "x^10 + x*y^9 + y^10")).unwrap().status, Status::Stable);
        assert_eq!(
            binary_form_git(&wc(4, "x^5*y^3*(x + y)*(x - y)")).unwrap().status,
            Status::StrictlySemistable
        );
    }

    fn summary(s: &str) -> StabilityVerdict {
        let sm: ChowSummary = serde_json::from_str(s).unwrap();
        chow_stability(&sm.to_input().unwrap()).unwrap()
    }

    #[test]
    fn chow_clauses() {
        assert_eq!(summary(r#"{"rank": 4, "smooth": ["A2"]}"#).status, Status::Stable);
        assert_eq!(summary(r#"{"rank": 4, "smooth": ["A5"]}"#).status, Status::StrictlySemistable);
        assert_eq!(summary(r#"{"rank": 3, "vertex": "A2", "smooth": ["A4"]}"#).status, Status::Stable);
        assert_eq!(summary(r#"{"rank": 3, "vertex": "A3"}"#).status, Status::StrictlySemistable);
        assert_eq!(summary(r#"{"rank": 2, "triborough": true}"#).status, Status::StrictlySemistable);
        assert_eq!(summary(r#"{"rank": 2}"#).status, Status::Unstable);
        assert_eq!(summary(r#"{"rank": 3, "reduced": false, "ribbon": true}"#).status, Status::Polystable);
    }

    #[test]
    fn degrees_needed() {
        let sm: ChowSummary = serde_json::from_str(r#"{"rank": 4, "smooth": ["A7"]}"#).unwrap();
        assert!(matches!(
            chow_stability(&sm.to_input().unwrap()),
            Err(StabilityError::NeedComponentDegrees(_))
        ));
    }

    #[test]
    fn chamber_lookup() {
        let at = |s: &str| CHAMBERS[chamber_of(&AlphaArg::parse(s).unwrap()).unwrap()].id;
        assert_eq!(at("1"), "(9/11, 1]");
        assert_eq!(at("9/11"), "9/11");
        assert_eq!(at("4/5"), "(7/10, 9/11)");
        assert_eq!(at("7/10"), "7/10");
        assert_eq!(at("69/100"), "(2/3, 7/10)");
        assert_eq!(at("2/3"), "2/3");
        assert_eq!(at("2/3-eps"), "(2/3-eps, 2/3)");
        assert!(matches!(chamber_of(&AlphaArg::Exact(qf(3, 5))), Err(StabilityError::OutOfRange(_))));
        assert!(matches!(chamber_of(&AlphaArg::Exact(qf(11, 10))), Err(StabilityError::OutOfRange(_))));
    }

    #[test]
    fn s2a5_examples() {
        let z = || [q(0), q(0), q(0), q(0), q(0)];
        let mut a = z();
        a[0] = q(1);
        let mut b = z();
        b[1] = q(1);
        assert_eq!(s2a5_family_filter(&[a.clone(), b]).unwrap().status, Status::Stable);
        assert_eq!(s2a5_family_filter(&[z(), a]).unwrap().status, Status::Unstable);
    }
}
