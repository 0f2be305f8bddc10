use genus4_core::picard::*;
use genus4_core::polyring::{q, qf, Rational};
use genus4_core::stability::AlphaArg;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dc(c: [Rational; 4]) -> DivClass {
    DivClass::from_coords(&c)
}

#[test]
fn canonical_and_hk() {
    assert_eq!(canonical_class(), DivClass::from_ints([13, -2, -2, -2]));
    assert_eq!(&canonical_class() + &DivClass::delta().scale(&q(2)), DivClass::from_ints([13, 0, 0, 0]));
    assert_eq!(hk_divisor(&q(1)), DivClass::from_ints([13, -1, -1, -1]));
    let c = -qf(4, 3);
    assert_eq!(hk_divisor(&qf(2, 3)), dc([q(13), c.clone(), c.clone(), c]));
    let c = -qf(39, 29);
    assert_eq!(hk_divisor(&qf(19, 29)), dc([q(13), c.clone(), c.clone(), c]));
}

#[test]
fn polarization_by_chamber() {
    let l = |a: Rational| l_alpha(&AlphaArg::Exact(a));
    assert_eq!(l(qf(19, 29)).unwrap(), dc([q(13), -qf(39, 29), q(0), q(0)]));
    assert_eq!(l(qf(3, 5)).unwrap(), dc([q(13), -qf(7, 5), q(0), q(0)]));
    assert_eq!(l(qf(13, 20)).unwrap().d2, q(0));
    assert_eq!(l(qf(33, 50)).unwrap(), dc([q(13), -qf(67, 50), q(0), -qf(67, 50)]));
    assert_eq!(l_alpha(&AlphaArg::BelowTwoThirds).unwrap(), dc([q(13), -qf(4, 3), q(0), -qf(4, 3)]));
    for bad in [qf(5, 9), qf(2, 3), q(1), qf(1, 2)] {
        assert!(matches!(l(bad), Err(PicardError::OutOfRange(_))));
    }
}

#[test]
fn vgit_pullback_values() {
    let p = |s: Rational| vgit_pullback(&VgitPolarizationParams::from_s(s));
    assert_eq!(p(qf(3, 2)), DivClass::from_ints([18, -2, -6, -6]));
    let r = p(qf(17, 14));
    assert_eq!((r.lambda.clone(), r.d0.clone(), r.d2.clone()), (qf(58, 7), -qf(6, 7), -qf(6, 7)));
    // s = 1 by direct substitution into the linear form
    assert_eq!(p(q(1)), DivClass::from_ints([1, 0, 1, 3]));
    let v = VgitPolarizationParams::from_t(qf(2, 5)).unwrap();
    assert_eq!(v.s, qf(5, 2));
    assert!(v.in_chamber_range());
    assert!(!VgitPolarizationParams::from_t(qf(2, 3)).unwrap().in_chamber_range());
}

#[test]
fn linearity_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut r = || qf(rng.gen_range(-50..=50), rng.gen_range(1..=20));
    for _ in 0..20 {
        let (s1, s2, c) = (r(), r(), r());
        let p = |s: Rational| vgit_pullback(&VgitPolarizationParams::from_s(s));
        // affine in s: p(s1) - p(s2) scales with s1 - s2
        let lhs = &p(&s1 + &c * (&s2 - &s1)) - &p(s1.clone());
        let rhs = (&p(s2.clone()) - &p(s1.clone())).scale(&c);
        assert_eq!(lhs, rhs);
        let (a, b) = (r(), r());
        let h = &hk_divisor(&(&a + &b)) - &hk_divisor(&a);
        assert_eq!(h, DivClass::delta().scale(&b));
    }
}

#[test]
fn slope_map() {
    for (a, t) in [(qf(5, 9), qf(2, 3)), (qf(23, 44), qf(6, 11)), (qf(1, 2), qf(2, 5)), (qf(29, 60), qf(2, 9)), (qf(8, 17), q(0))] {
        assert_eq!(t_of_alpha(&a).unwrap(), t);
        assert_eq!(alpha_of_t(&t).unwrap(), a);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut n = 0;
    while n < 20 {
        let t = qf(rng.gen_range(-200..=200), rng.gen_range(1..=97));
        let Ok(a) = alpha_of_t(&t) else { continue };
        let Ok(back) = t_of_alpha(&a) else { continue };
        assert_eq!(back, t);
        n += 1;
    }
}

#[test]
fn wall_table() {
    let w = walls();
    assert_eq!(w.len(), 9);
    let alphas: Vec<Rational> = w.iter().map(|r| r.alpha.clone()).collect();
    let expected = [qf(9, 11), qf(7, 10), qf(2, 3), qf(19, 29), qf(5, 9), qf(23, 44), qf(1, 2), qf(29, 60), qf(8, 17)];
    assert_eq!(alphas, expected);
    assert!(alphas.windows(2).all(|p| p[0] > p[1]));
    assert_eq!(w[3].locus_removed, "\u{3b4}\u{2082}, i.e. general genus two tails");
    assert_eq!(w[3].singularity_introduced, "A\u{2085}^sep");
    let rows = w[4].sub_rows();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2], ("elliptic triboroughs", "D\u{2084}"));
    assert!(rows[1].0.contains("hyperelliptic"));
}

#[test]
fn identities_hold() {
    let r = verify_identities();
    for c in &r.checks {
        assert!(c.passed, "{}: {} vs {}", c.name, c.lhs, c.rhs);
    }
    let j = r.to_json();
    assert_eq!(j["restriction_ratio"]["lhs"], "58/91");
    assert_eq!(
        r.get("combination_two_thirds").unwrap().rhs,
        "29\u{3bb} \u{2212} 3 \u{3b4}0 + 0 \u{3b4}1 \u{2212} 11/3 \u{3b4}2"
    );
    assert_eq!(r.get("pullback_lambda").unwrap().lhs, "\u{3bb} + 0 \u{3b4}0 + 0 \u{3b4}1 + 3 \u{3b4}2");
}

#[test]
fn epsilon_identity_is_sensitive_to_coefficients() {
    use genus4_core::polyring::UPoly;
    let k = |n: i64| RatFunc::constant(q(n));
    let eps = RatFunc::poly(UPoly::x());
    let den = RatFunc::poly(UPoly::from_ints(&[1, -9]));
    let a = RatFunc::poly(UPoly::from_ints(&[1, -87])).div(&den.mul(&k(3)));
    let c = RatFunc::constant(-qf(4, 3)).sub(&eps);
    let l_eps = SymbolicClass([k(13), c.clone(), k(0), c]);
    let half = SymbolicClass::constant(&DivClass::from_ints([9, -1, 0, -3]));
    let rhs = SymbolicClass::constant(&l_plus(&qf(19, 29)).scale(&qf(29, 13)))
        .sub(&SymbolicClass::constant(&DivClass::delta2()).scale(&a.mul(&k(2))));
    let good = half.scale(&a).add(&l_eps.scale(&k(2).div(&den)));
    assert_eq!(good, rhs);
    let bad = half.scale(&a).add(&l_eps.scale(&k(2)));
    assert_ne!(bad, rhs);
    // at ε = 0 the identity reduces to the 2/3 combination
    assert_eq!(good.eval(&q(0)).unwrap(), DivClass::new(q(29), q(-3), q(0), -qf(1, 3) * q(2) - q(3)));
}
