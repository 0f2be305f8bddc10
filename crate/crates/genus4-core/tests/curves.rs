use genus4_core::curves::*;
use genus4_core::polyring::{q, Rational};

fn spec(json: &str) -> CurveSpec {
    serde_json::from_str::<CurveSpecJson>(json).unwrap().to_spec().unwrap()
}

fn pt(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

const C_2A5: &str = r#"{
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

const C_D: &str = r#"{
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

#[test]
fn c_2a5_two_separating_a5() {
    let c = spec(C_2A5);
    let a = analyze_curve(&c).unwrap();
    assert_eq!(a.inventory.labels(), vec!["A5", "A5"]);
    assert_eq!(a.inventory.total_delta, 6);
    assert!(a.inventory.certified_complete);
    assert_eq!(a.arithmetic_genus, 4);
    assert_eq!(a.ci.as_ref().unwrap().rank, 4);
    let model = a.model.unwrap();
    for p in [pt(&[0, 0, 0, 1]), pt(&[1, 0, 0, 0])] {
        let i = a.inventory.find_point(&p).unwrap();
        assert!(separating_check(&a.inventory, i, &model).unwrap());
    }
}

#[test]
fn c_d_two_d4_three_a1() {
    let c = spec(C_D);
    let a = analyze_curve(&c).unwrap();
    assert_eq!(a.inventory.labels(), vec!["A1", "A1", "A1", "D4", "D4"]);
    assert_eq!(a.inventory.total_delta, 9);
    assert!(a.inventory.certified_complete);
    let ci = a.ci.unwrap();
    assert_eq!(ci.rank, 2);
    assert_eq!(ci.triborough, Some(true));
    let mut pts: Vec<_> = rational_singular_points(&c)
        .unwrap()
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    pts.sort_by_key(|p| p.to_string());
    let mut proj: Vec<Vec<Rational>> = a
        .inventory
        .entries
        .iter()
        .filter_map(|e| e.projective.clone())
        .collect();
    proj.sort();
    let mut want = vec![pt(&[1, 0, 0, 0]), pt(&[0, 0, 0, 1]), pt(&[0, 1, -1, 0])];
    want.sort();
    assert_eq!(proj, want);
    assert_eq!(pts.len(), 3);
}

#[test]
fn c_d_wrong_incidence_is_rejected() {
    let bad = C_D.replace(
        r#"{"point": ["0","1","-1","0"], "component": "M", "branches": 1},"#,
        r#"{"point": ["0","1","-1","0"], "component": "Mc", "branches": 1},"#,
    );
    assert!(analyze_curve(&spec(&bad)).is_err());
}

fn c_ab(a: i64, b: i64) -> CurveSpec {
    spec(&format!(
        r#"{{"ambient": "CI", "equations": ["x2^2 - x1*x3", "{a}*x1^3 + {b}*x0*x1*x2 + x0^2*x3"]}}"#
    ))
}

#[test]
fn c_ab_on_the_cone() {
    for (a, b) in [(1, 0), (1, 1), (2, 1), (-3, 5)] {
        let inv = singularity_inventory(&c_ab(a, b)).unwrap();
        let mut labels: Vec<(String, Location)> = inv.entries.iter().map(|e| (e.class.label(), e.location)).collect();
        labels.sort_by_key(|x| x.0.clone());
        assert_eq!(
            labels,
            vec![("A3".to_string(), Location::Vertex), ("A5".to_string(), Location::Smooth)],
            "A={a} B={b}"
        );
        assert_eq!(inv.find_point(&pt(&[0, 0, 0, 1])).map(|i| inv.entries[i].class.label()), Some("A5".into()));
        assert_eq!(inv.find_point(&pt(&[1, 0, 0, 0])).map(|i| inv.entries[i].class.label()), Some("A3".into()));
    }
    let inv = singularity_inventory(&c_ab(0, 1)).unwrap();
    assert_eq!(inv.labels(), vec!["A1", "A3", "A5"]);
}

#[test]
fn c_ab_budget_on_the_weighted_plane() {
    // (1, 0): y^2 z^2 + x^6 = (yz + i x^3)(yz - i x^3), two conjugate rational curves
    let c = spec(
        r#"{"ambient": "P(1,1,2)", "equations": ["y^2*z^2 + x^6"],
            "components": [{"label": "pair", "equations": ["y^2*z^2 + x^6"], "count": 2}]}"#,
    );
    let a = analyze_curve(&c).unwrap();
    assert!(a.inventory.certified_complete);
    let m = a.model.unwrap();
    assert_eq!(m.member_degrees(), vec![6, 6]);

    let c = spec(
        r#"{"ambient": "P(1,1,2)", "equations": ["x^3*y*z + y^2*z^2"],
            "components": [{"label": "conic", "equations": ["z"]},
                           {"label": "ruling", "equations": ["y"]},
                           {"label": "cubic", "equations": ["x^3 + y*z"]}]}"#,
    );
    let a = analyze_curve(&c).unwrap();
    assert_eq!(a.inventory.labels(), vec!["A1", "A3", "A5"]);
    assert!(a.inventory.certified_complete);
    let m = a.model.unwrap();
    let mut d = m.member_degrees();
    d.sort();
    assert_eq!(d, vec![1, 2, 3]);
}

#[test]
fn ribbon_is_non_reduced() {
    let c = c_ab(1, 2);
    assert!(singularity_inventory(&c).is_err());
    let mut t = c.clone();
    t.tags.push("ribbon".into());
    assert_eq!(singularity_inventory(&t), Err(CurveError::NonReduced));
}

#[test]
fn weierstrass_x5y5() {
    let v = genus4_core::polyring::VarTable::unweighted(&["x", "y"]);
    let f = genus4_core::polyring::parse_poly("x^5*y^5", &v).unwrap();
    let w = WeierstrassCurve::new(4, f).unwrap();
    let inv = weierstrass_singularities(&w).unwrap();
    assert_eq!(inv.labels(), vec!["A4", "A4"]);
    assert!(inv.certified_complete);
}

