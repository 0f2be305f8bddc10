use genus4_cli::grammar::{parse_curve, print_curve, CurveInput, GrammarError};
use genus4_core::curves::named::{c_2a5, c_ab, c_d};
use genus4_core::polyring::q;

fn round_trip(text: &str) -> CurveInput {
    let c = parse_curve(text).unwrap_or_else(|e| panic!("{text}: {e}"));
    let printed = print_curve(&c);
    let again = parse_curve(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
    assert_eq!(again, c, "{printed}");
    assert_eq!(print_curve(&again), printed);
    c
}

#[test]
fn texts_round_trip() {
    round_trip("ambient ci_p3; eq x0*x3 - x1*x2; eq x0*x2^2 + x1^2*x3");
    round_trip("ambient wp 1 1 5\nweierstrass x^5*y^5");
    round_trip("ambient wp 1 1 3; vars s t w; weierstrass s^6 - t^6");
    round_trip("ambient p1xp1; eq x0^3*y0^3 + x1^3*y1^3");
    round_trip("ambient wp 1 1 2; eq y^2*(x^4 - z^2); component (y)*2; component x^2 - z; component x^2 + z; tag split");
    let c = round_trip(
        "ambient ci_p3\n# the plane section\neq x0*x3\neq x1^3 + x2^3\n\
         component x0, x1 + x2 degree 1\ncomponent x0, x1^2 - x1*x2 + x2^2 count 2 degree 1",
    );
    let CurveInput::Curve(s) = c else { panic!() };
    let comps = s.components.unwrap();
    assert_eq!((comps[1].count, comps[1].degree, comps[1].label.as_str()), (2, Some(1), "c2"));
}

#[test]
fn named_curves_print_and_reparse() {
    for spec in [c_2a5(), c_d(), c_ab(&q(2), &q(3)).unwrap(), c_ab(&q(1), &q(2)).unwrap()] {
        let c = CurveInput::Curve(spec.clone());
        let back = parse_curve(&print_curve(&c)).unwrap();
        let CurveInput::Curve(b) = back else { panic!() };
        assert_eq!(b.equation, spec.equation);
        assert_eq!(b.quadric(), spec.quadric());
        assert_eq!(b.tags, spec.tags);
    }
}

#[test]
fn multiplicity_and_keywords() {
    let CurveInput::Curve(s) = parse_curve("ambient wp 1 1 2; eq y^2*(x^4 - z^2); component (y)*2 genus 0; component x^4 - z^2 count 1 genus 0").unwrap() else {
        panic!()
    };
    let comps = s.components.unwrap();
    assert_eq!(comps[0].multiplicity, 2);
    assert_eq!(comps[1].multiplicity, 1);
}

fn syntax_at(text: &str) -> (usize, usize) {
    match parse_curve(text) {
        Err(GrammarError::Syntax { line, column, .. }) => (line, column),
        other => panic!("{text}: expected a syntax error, got {other:?}"),
    }
}

#[test]
fn errors_carry_line_and_column() {
    assert_eq!(syntax_at("eq x0"), (1, 1));
    assert_eq!(syntax_at("ambient p3"), (1, 9));
    assert_eq!(syntax_at("ambient ci_p3\neq x0*x3\neq x1 + + x2"), (3, 9));
    assert_eq!(syntax_at("ambient ci_p3; eq x0 $ x1"), (1, 22));
    assert_eq!(syntax_at("ambient ci_p3; eq x0; frob x1"), (1, 23));
    assert_eq!(syntax_at("ambient ci_p3; eq x0; ambient p1xp1"), (1, 23));
    assert_eq!(syntax_at("ambient wp 1 0 2"), (1, 9));
    assert_eq!(syntax_at(""), (1, 1));
}

#[test]
fn semantic_errors() {
    for text in [
        "ambient ci_p3; eq x0*x3 - x1*x2",
        "ambient p1xp1; weierstrass x^4",
        "ambient wp 1 1 5; weierstrass x^5*y^4",
        "ambient wp 1 1 5; weierstrass x^10 - y^10; eq z",
        "ambient ci_p3; vars a b c",
        "ambient ci_p3; eq x0*x3 - x1*x2; eq x0^2",
    ] {
        assert!(matches!(parse_curve(text), Err(GrammarError::Semantic(_))), "{text}");
    }
}
