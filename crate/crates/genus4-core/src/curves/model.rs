//! Components, incidences, the genus budget and separating singularities.

use super::plane::{p1xp1_charts, weighted_plane_charts, PlanarChart};
use super::{Ambient, CurveError, CurveSpec, EntryRef, Location, SingularityInventory};
use crate::germ::{classify_germ, classify_vertex, Germ, VertexGerm};
use crate::polyring::{MPoly, PointQ};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub label: String,
    /// Geometric genus of each member.
    pub genus: u32,
    /// Number of geometric members.
    pub count: u32,
    pub degree: Option<u32>,
    pub multiplicity: u32,
}

/// `branches` branches of `entry` lie on `component`; with `member` unset
/// they are spread evenly over the conjugate members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub entry: usize,
    pub component: usize,
    pub member: Option<u32>,
    pub branches: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentModel {
    pub components: Vec<Component>,
    pub incidences: Vec<Incidence>,
}

impl ComponentModel {
    /// Number of geometric components.
    pub fn geometric_count(&self) -> u32 {
        self.components.iter().map(|c| c.count).sum()
    }

    /// Degrees of all geometric members, where known.
    pub fn member_degrees(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for c in &self.components {
            if let Some(d) = c.degree {
                for _ in 0..c.count {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Check that branch counts add up at every entry.
    pub fn check_branches(&self, inv: &SingularityInventory) -> Result<(), CurveError> {
        for (i, e) in inv.entries.iter().enumerate() {
            let s: u32 = self.incidences.iter().filter(|x| x.entry == i).map(|x| x.branches).sum();
            if s != e.class.branches {
                return Err(CurveError::Domain(format!(
                    "branches at {} sum to {s}, expected {}",
                    e.describe(),
                    e.class.branches
                )));
            }
        }
        for x in &self.incidences {
            let c = &self.components[x.component];
            if let Some(m) = x.member {
                if m >= c.count {
                    return Err(CurveError::Domain(format!("component `{}` has no member {m}", c.label)));
                }
            } else if x.branches % c.count != 0 {
                return Err(CurveError::Domain(format!(
                    "{} branches cannot be spread over {} conjugate members of `{}`",
                    x.branches, c.count, c.label
                )));
            }
        }
        Ok(())
    }

    fn node_index(&self) -> Vec<usize> {
        let mut start = Vec::with_capacity(self.components.len());
        let mut k = 0;
        for c in &self.components {
            start.push(k);
            k += c.count as usize;
        }
        start
    }

    /// Geometric members touched by an entry.
    fn touched(&self, entry: usize, start: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        for x in self.incidences.iter().filter(|x| x.entry == entry && x.branches > 0) {
            let c = &self.components[x.component];
            match x.member {
                Some(m) => out.push(start[x.component] + m as usize),
                None => out.extend((0..c.count as usize).map(|m| start[x.component] + m)),
            }
        }
        out
    }

    /// Number of connected pieces after dropping the entries in `skip`.
    pub fn connected_pieces(&self, entries: usize, skip: Option<usize>) -> usize {
        let start = self.node_index();
        let n = self.geometric_count() as usize;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for e in 0..entries {
            if Some(e) == skip {
                continue;
            }
            let t = self.touched(e, &start);
            for w in t.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count()
    }
}

/// `sum g * count + delta - count + 1 == p_a`.
pub fn genus_budget_check(inv: &SingularityInventory, model: &ComponentModel, p_a: i64) -> bool {
    let g: i64 = model.components.iter().map(|c| c.genus as i64 * c.count as i64).sum();
    let c = model.geometric_count() as i64;
    g + inv.total_delta as i64 - c + 1 == p_a
}

/// Whether normalizing the two-branch entry `idx` disconnects the curve.
pub fn separating_check(inv: &SingularityInventory, idx: usize, model: &ComponentModel) -> Result<bool, CurveError> {
    let e = inv
        .entries
        .get(idx)
        .ok_or_else(|| CurveError::Domain(format!("no inventory entry {idx}")))?;
    if e.class.branches != 2 {
        return Err(CurveError::Domain(format!(
            "{} does not have exactly two branches",
            e.class.label()
        )));
    }
    let n = inv.entries.len();
    let before = model.connected_pieces(n, None);
    let after = model.connected_pieces(n, Some(idx));
    Ok(after > before)
}

fn charts_for(ambient: &Ambient, f: &MPoly) -> Result<Vec<PlanarChart>, CurveError> {
    match ambient {
        Ambient::P1xP1 => p1xp1_charts(f),
        Ambient::WeightedPlane { .. } => weighted_plane_charts(f),
        Ambient::CompleteIntersectionP3 { .. } => Err(CurveError::Domain("not a planar ambient".into())),
    }
}

/// Branches of the component `g` at a planar entry.
fn planar_branches(ambient: &Ambient, g: &MPoly, chart: &str, point: &PointQ, loc: Location) -> Result<u32, CurveError> {
    let charts = charts_for(ambient, g)?;
    if loc == Location::Vertex {
        let Some(ch) = charts.iter().find(|c| c.vertex) else {
            return Ok(0);
        };
        let vg = VertexGerm::new(ch.poly.clone()).map_err(|e| CurveError::at(chart, point, e))?;
        return Ok(classify_vertex(&vg).map_err(|e| CurveError::at(chart, point, e))?.branches);
    }
    let ch = charts
        .iter()
        .find(|c| c.id == chart)
        .ok_or_else(|| CurveError::Domain(format!("unknown chart `{chart}`")))?;
    if !ch.poly.evaluate(&point.0).is_zero() {
        return Ok(0);
    }
    let germ = Germ::new(ch.poly.clone(), point.clone()).map_err(|e| CurveError::at(chart, point, e))?;
    Ok(classify_germ(&germ).map_err(|e| CurveError::at(chart, point, e))?.branches)
}

fn planar_degree(ambient: &Ambient, g: &MPoly) -> Option<u32> {
    match ambient {
        Ambient::P1xP1 => super::bidegree(g).ok().map(|(a, b)| a + b),
        Ambient::WeightedPlane { weights } => {
            // degree under the embedding by O(c) for P(1,1,c)
            let d = g.weighted_degree()? as u32;
            if weights[0] == 1 && weights[1] == 1 {
                Some(d)
            } else {
                None
            }
        }
        Ambient::CompleteIntersectionP3 { .. } => None,
    }
}

/// Component model from the fixture's component data. Planar incidences
/// are computed from the component equations; complete intersections use
/// the explicit incidences, checked against the component equations.
pub fn build_component_model(c: &CurveSpec, inv: &SingularityInventory) -> Result<ComponentModel, CurveError> {
    let specs = c
        .components
        .as_ref()
        .ok_or_else(|| CurveError::Domain("curve has no component data".into()))?;
    if specs.iter().any(|s| s.multiplicity != 1) {
        return Err(CurveError::NonReduced);
    }
    let components: Vec<Component> = specs
        .iter()
        .map(|s| Component {
            label: s.label.clone(),
            genus: s.genus,
            count: s.count,
            degree: s.degree.or_else(|| {
                if c.is_ci() {
                    None
                } else {
                    planar_degree(&c.ambient, &s.equations[0])
                }
            }),
            multiplicity: s.multiplicity,
        })
        .collect();
    let mut incidences = Vec::new();
    let find_comp = |label: &str| {
        components
            .iter()
            .position(|x| x.label == label)
            .ok_or_else(|| CurveError::Domain(format!("unknown component `{label}`")))
    };
    for x in &c.incidences {
        let entry = match &x.entry {
            EntryRef::Point(p) => inv.find_point(p),
            EntryRef::Orbit { label, member } => inv.find_orbit(label, *member),
        }
        .ok_or_else(|| CurveError::Domain(format!("incidence refers to a missing entry {:?}", x.entry)))?;
        incidences.push(super::model::Incidence {
            entry,
            component: find_comp(&x.component)?,
            member: x.member,
            branches: x.branches,
        });
    }
    if c.is_ci() {
        // point evaluation: declared incidences must lie on the component,
        // and a component through a rational entry must be declared
        for (i, e) in inv.entries.iter().enumerate() {
            let Some(p) = &e.projective else { continue };
            for (k, s) in specs.iter().enumerate() {
                if s.equations.is_empty() {
                    continue;
                }
                let on = s.equations.iter().all(|g| g.evaluate(p).is_zero());
                let declared = incidences.iter().any(|x| x.entry == i && x.component == k);
                if on != declared {
                    return Err(CurveError::Domain(format!(
                        "component `{}` {} {} but the fixture says otherwise",
                        s.label,
                        if on { "passes through" } else { "misses" },
                        e.describe()
                    )));
                }
            }
        }
    } else {
        for (i, e) in inv.entries.iter().enumerate() {
            if incidences.iter().any(|x| x.entry == i) {
                continue;
            }
            let Some(p) = &e.point else {
                return Err(CurveError::Domain(format!("orbit entry {} needs explicit incidences", e.describe())));
            };
            for (k, s) in specs.iter().enumerate() {
                let b = planar_branches(&c.ambient, &s.equations[0], &e.chart, p, e.location)?;
                if b > 0 {
                    incidences.push(Incidence {
                        entry: i,
                        component: k,
                        member: None,
                        branches: b,
                    });
                }
            }
        }
    }
    let model = ComponentModel { components, incidences };
    model.check_branches(inv)?;
    Ok(model)
}
