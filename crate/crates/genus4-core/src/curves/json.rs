//! JSON form of [`CurveSpec`]: `{ambient, equations[], components?[], tags[]}`
//! plus optional Galois-orbit and incidence data.

use super::{Ambient, ComponentSpec, CurveError, CurveSpec, EntryRef, IncidenceSpec, Location, OrbitSpec};
use crate::germ::GermClass;
use crate::polyring::{parse_poly, parse_rational, MPoly, VarTable};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub label: String,
    pub equations: Vec<String>,
    #[serde(default = "one")]
    pub multiplicity: u32,
    #[serde(default)]
    pub genus: u32,
    #[serde(default = "one")]
    pub count: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub label: String,
    pub size: u32,
    /// Germ label such as `A1`.
    pub class: String,
    #[serde(default = "smooth_location")]
    pub location: Location,
}

/// Exactly one of `point` and `orbit` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncidenceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<String>,
    #[serde(default)]
    pub orbit_member: u32,
    pub component: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub member: Option<u32>,
    pub branches: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSpecJson {
    /// `P1xP1`, `P(a,b,c)` or `CI`.
    pub ambient: String,
    /// Variable names; defaults depend on the ambient.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    /// One equation, or the quadric then the cubic for `CI`.
    pub equations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentJson>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orbits: Vec<OrbitJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub incidences: Vec<IncidenceJson>,
    #[serde(default)]
    pub tags: Vec<String>,
}

fn one() -> u32 {
    1
}

fn smooth_location() -> Location {
    Location::Smooth
}

/// Parse `P(a,b,c)`.
fn parse_weights(s: &str) -> Option<[u32; 3]> {
    let inner = s.trim().strip_prefix("P(")?.strip_suffix(')')?;
    let w: Vec<u32> = inner.split(',').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?;
    let w: [u32; 3] = w.try_into().ok()?;
    if w.contains(&0) {
        None
    } else {
        Some(w)
    }
}

fn default_names(ambient: &str) -> Vec<String> {
    let v: &[&str] = match ambient {
        "P1xP1" => &["x0", "x1", "y0", "y1"],
        "CI" => &["x0", "x1", "x2", "x3"],
        _ => &["x", "y", "z"],
    };
    v.iter().map(|s| s.to_string()).collect()
}

fn parse_in(s: &str, vars: &Arc<VarTable>) -> Result<MPoly, CurveError> {
    parse_poly(s, vars).map_err(|e| CurveError::Domain(format!("cannot parse `{s}`: {e}")))
}

impl CurveSpecJson {
    pub fn to_spec(&self) -> Result<CurveSpec, CurveError> {
        let names = self.variables.clone().unwrap_or_else(|| default_names(&self.ambient));
        let (ambient, vars) = match self.ambient.as_str() {
            "P1xP1" | "CI" => {
                if names.len() != 4 {
                    return Err(CurveError::Domain("ambient needs four variables".into()));
                }
                let vars = VarTable::new(&names, &[1, 1, 1, 1])?;
                if self.ambient == "CI" {
                    if self.equations.len() != 2 {
                        return Err(CurveError::Domain("CI needs a quadric and a cubic".into()));
                    }
                    let quadric = parse_in(&self.equations[0], &vars)?;
                    (Ambient::CompleteIntersectionP3 { quadric }, vars)
                } else {
                    (Ambient::P1xP1, vars)
                }
            }
            other => {
                let weights = parse_weights(other).ok_or_else(|| CurveError::Domain(format!("unknown ambient `{other}`")))?;
                if names.len() != 3 {
                    return Err(CurveError::Domain("weighted plane needs three variables".into()));
                }
                (Ambient::WeightedPlane { weights }, VarTable::new(&names, &weights)?)
            }
        };
        let expected = if ambient_is_ci(&ambient) { 2 } else { 1 };
        if self.equations.len() != expected {
            return Err(CurveError::Domain(format!("expected {expected} equation(s)")));
        }
        let equation = parse_in(self.equations.last().unwrap(), &vars)?;
        let components = match &self.components {
            None => None,
            Some(cs) => Some(
                cs.iter()
                    .map(|c| {
                        Ok(ComponentSpec {
                            label: c.label.clone(),
                            equations: c.equations.iter().map(|e| parse_in(e, &vars)).collect::<Result<_, _>>()?,
                            multiplicity: c.multiplicity,
                            genus: c.genus,
                            count: c.count,
                            degree: c.degree,
                        })
                    })
                    .collect::<Result<Vec<_>, CurveError>>()?,
            ),
        };
        let orbits = self
            .orbits
            .iter()
            .map(|o| {
                Ok(OrbitSpec {
                    label: o.label.clone(),
                    size: o.size,
                    class: GermClass::from_label(&o.class)
                        .ok_or_else(|| CurveError::Domain(format!("unknown germ label `{}`", o.class)))?,
                    location: o.location,
                })
            })
            .collect::<Result<Vec<_>, CurveError>>()?;
        let incidences = self
            .incidences
            .iter()
            .map(|i| {
                let entry = match (&i.point, &i.orbit) {
                    (Some(p), None) => EntryRef::Point(
                        p.iter()
                            .map(|t| parse_rational(t).ok_or_else(|| CurveError::Domain(format!("bad rational `{t}`"))))
                            .collect::<Result<_, _>>()?,
                    ),
                    (None, Some(o)) => EntryRef::Orbit {
                        label: o.clone(),
                        member: i.orbit_member,
                    },
                    _ => return Err(CurveError::Domain("incidence needs exactly one of point and orbit".into())),
                };
                Ok(IncidenceSpec {
                    entry,
                    component: i.component.clone(),
                    member: i.member,
                    branches: i.branches,
                })
            })
            .collect::<Result<Vec<_>, CurveError>>()?;
        let spec = CurveSpec {
            ambient,
            equation,
            components,
            orbits,
            incidences,
            tags: self.tags.clone(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_spec(c: &CurveSpec) -> Self {
        let vars = c.equation.vars();
        let ambient = match &c.ambient {
            Ambient::P1xP1 => "P1xP1".to_string(),
            Ambient::WeightedPlane { weights: w } => format!("P({},{},{})", w[0], w[1], w[2]),
            Ambient::CompleteIntersectionP3 { .. } => "CI".to_string(),
        };
        let mut equations = Vec::new();
        if let Some(q) = c.quadric() {
            equations.push(q.to_string());
        }
        equations.push(c.equation.to_string());
        CurveSpecJson {
            ambient,
            variables: Some(vars.names().to_vec()),
            equations,
            components: c.components.as_ref().map(|cs| {
                cs.iter()
                    .map(|s| ComponentJson {
                        label: s.label.clone(),
                        equations: s.equations.iter().map(|e| e.to_string()).collect(),
                        multiplicity: s.multiplicity,
                        genus: s.genus,
                        count: s.count,
                        degree: s.degree,
                    })
                    .collect()
            }),
            orbits: c
                .orbits
                .iter()
                .map(|o| OrbitJson {
                    label: o.label.clone(),
                    size: o.size,
                    class: o.class.label(),
                    location: o.location,
                })
                .collect(),
            incidences: c
                .incidences
                .iter()
                .map(|i| {
                    let (point, orbit, orbit_member) = match &i.entry {
                        EntryRef::Point(p) => (Some(p.iter().map(crate::polyring::fmt_rational).collect()), None, 0),
                        EntryRef::Orbit { label, member } => (None, Some(label.clone()), *member),
                    };
                    IncidenceJson {
                        point,
                        orbit,
                        orbit_member,
                        component: i.component.clone(),
                        member: i.member,
                        branches: i.branches,
                    }
                })
                .collect(),
            tags: c.tags.clone(),
        }
    }
}

fn ambient_is_ci(a: &Ambient) -> bool {
    matches!(a, Ambient::CompleteIntersectionP3 { .. })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"ambient":"P(1,1,2)","equations":["y^2*z^2 + x^6"],"tags":["figure"]}"#;
        let j: CurveSpecJson = serde_json::from_str(text).unwrap();
        let spec = j.to_spec().unwrap();
        let back = CurveSpecJson::from_spec(&spec).to_spec().unwrap();
        assert_eq!(spec, back);
        assert!(spec.has_tag("figure"));
    }

    #[test]
    fn rejects_bad_ambient() {
        let j = CurveSpecJson {
            ambient: "P(1,0,2)".into(),
            variables: None,
            equations: vec!["x".into()],
            components: None,
            orbits: vec![],
            incidences: vec![],
            tags: vec![],
        };
        assert!(j.to_spec().is_err());
    }
}
