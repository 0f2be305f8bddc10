//! Curves `z^2 = f(x, y)` in `P(1, 1, g+1)`.

use super::model::{Component, ComponentModel, Incidence};
use super::{binary_roots, CurveError, InventoryEntry, Location, Orbit, SingularityInventory};
use crate::germ::{classify_germ, Germ, GermClass};
use crate::polyring::{squarefree_factor, MPoly, PointQ, Rational, VarTable};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassCurve {
    pub g: u32,
    /// Binary form of degree `2g + 2` in two variables, or zero.
    pub f: MPoly,
}

impl WeierstrassCurve {
    pub fn new(g: u32, f: MPoly) -> Result<Self, CurveError> {
        if g < 2 {
            return Err(CurveError::Domain("genus must be at least 2".into()));
        }
        if f.nvars() != 2 {
            return Err(CurveError::Domain("binary form needs two variables".into()));
        }
        if !f.is_zero() && (!f.is_homogeneous() || f.total_degree() != Some(2 * g + 2)) {
            return Err(CurveError::Domain(format!("binary form must have degree {}", 2 * g + 2)));
        }
        Ok(WeierstrassCurve { g, f })
    }

    pub fn arithmetic_genus(&self) -> i64 {
        self.g as i64
    }
}

/// Germ of `z^2 = f` at the rational root `[a : b]` of `f`.
fn chart_germ(f: &MPoly, root: &[Rational; 2]) -> Result<GermClass, CurveError> {
    let t = VarTable::unweighted(&["u", "z"]);
    let u = MPoly::var_at(&t, 0);
    let z = MPoly::var_at(&t, 1);
    let one = MPoly::one(&t);
    // use the chart where the nonzero root coordinate is 1
    let (images, point) = if !root[1].is_zero() {
        (vec![u, one], PointQ(vec![&root[0] / &root[1], Rational::zero()]))
    } else {
        (vec![one, u], PointQ(vec![Rational::zero(), Rational::zero()]))
    };
    let h = f.substitute_all(&images, &t)?;
    let eq = &z.pow(2) - &h;
    let g = Germ::new(eq, point.clone()).map_err(|e| CurveError::at("weierstrass", &point, e))?;
    classify_germ(&g).map_err(|e| CurveError::at("weierstrass", &point, e))
}

/// Each root of multiplicity `m >= 2` gives an `A(m-1)` point. Rational
/// roots are cross-checked against the chart germ; irrational roots become
/// Galois-orbit entries.
pub fn weierstrass_singularities(w: &WeierstrassCurve) -> Result<SingularityInventory, CurveError> {
    if w.f.is_zero() {
        return Err(CurveError::RibbonInput);
    }
    let mut entries = Vec::new();
    let mut orbit_no = 0;
    for (p, m) in squarefree_factor(&w.f)? {
        if m < 2 {
            continue;
        }
        let class = GermClass::a(m - 1);
        let (roots, rest) = binary_roots(&p)?;
        for root in roots {
            let chart = chart_germ(&w.f, &root)?;
            if chart != class {
                return Err(CurveError::Domain(format!(
                    "root multiplicity rule gives {} but the chart germ is {}",
                    class.label(),
                    chart.label()
                )));
            }
            entries.push(InventoryEntry {
                chart: "weierstrass".into(),
                point: Some(PointQ(root.to_vec())),
                projective: Some(vec![root[0].clone(), root[1].clone(), Rational::zero()]),
                class: class.clone(),
                orbit: None,
                location: Location::Smooth,
            });
        }
        if rest > 0 {
            orbit_no += 1;
            for member in 0..rest {
                entries.push(InventoryEntry {
                    chart: "weierstrass".into(),
                    point: None,
                    projective: None,
                    class: class.clone(),
                    orbit: Some(Orbit {
                        label: format!("root orbit {orbit_no}"),
                        size: rest,
                        member,
                    }),
                    location: Location::Smooth,
                });
            }
        }
    }
    let mut inv = SingularityInventory::new(entries);
    let model = weierstrass_component_model(w, &inv)?;
    inv.certified_complete = super::genus_budget_check(&inv, &model, w.arithmetic_genus());
    Ok(inv)
}

/// The normalization is the double cover branched over the roots of odd
/// multiplicity; with none of them the curve splits into two rational
/// components `z = +-sqrt(c) h`.
pub fn weierstrass_component_model(w: &WeierstrassCurve, inv: &SingularityInventory) -> Result<ComponentModel, CurveError> {
    let odd: u32 = squarefree_factor(&w.f)?
        .iter()
        .filter(|(_, m)| m % 2 == 1)
        .map(|(p, _)| p.total_degree().unwrap_or(0))
        .sum();
    let (components, split) = if odd > 0 {
        (
            vec![Component {
                label: "normalization".into(),
                genus: odd / 2 - 1,
                count: 1,
                degree: None,
                multiplicity: 1,
            }],
            false,
        )
    } else {
        (
            vec![Component {
                label: "sheets".into(),
                genus: 0,
                count: 2,
                degree: None,
                multiplicity: 1,
            }],
            true,
        )
    };
    let incidences = inv
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| Incidence {
            entry: i,
            component: 0,
            member: None,
            branches: e.class.branches,
        })
        .collect();
    let model = ComponentModel { components, incidences };
    if !split {
        model.check_branches(inv)?;
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn wc(s: &str) -> WeierstrassCurve {
        let v = VarTable::unweighted(&["x", "y"]);
        WeierstrassCurve::new(4, parse_poly(s, &v).unwrap()).unwrap()
    }

    #[test]
    fn two_a4_points() {
        let inv = weierstrass_singularities(&wc("x^5*y^5")).unwrap();
        assert_eq!(inv.labels(), vec!["A4", "A4"]);
        assert!(inv.certified_complete);
    }

    #[test]
    fn squarefree_is_smooth() {
        let inv = weierstrass_singularities(&wc("x^10 + y^10 + x*y^9")).unwrap();
        assert!(inv.entries.is_empty());
        assert!(inv.certified_complete);
    }

    #[test]
    fn double_root_gives_node() {
        let inv = weierstrass_singularities(&wc("x^2*(x^8 + y^8 + x*y^7)")).unwrap();
        assert_eq!(inv.labels(), vec!["A1"]);
        assert!(inv.certified_complete);
    }

    #[test]
    fn square_form_splits() {
        let inv = weierstrass_singularities(&wc("(x^5 + 2*y^5)^2")).unwrap();
        assert_eq!(inv.entries.len(), 5);
        assert!(inv.certified_complete);
        assert!(matches!(
            weierstrass_singularities(&WeierstrassCurve::new(4, MPoly::zero(&VarTable::unweighted(&["x", "y"]))).unwrap()),
            Err(CurveError::RibbonInput)
        ));
    }
}
