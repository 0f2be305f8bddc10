//! Divisor classes on the moduli of genus four curves in the basis
//! `(λ, δ0, δ1, δ2)`, the slope map between α and the VGIT parameter t,
//! the wall table, and the identities used in the projectivity argument.

use crate::anchors::quote;
use crate::polyring::{fmt_rational, q, qf, solve, Rational, UPoly};
use crate::stability::AlphaArg;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PicardError {
    #[error("alpha out of range: {0}")]
    OutOfRange(String),
    #[error("slope map has a pole at {0}")]
    Pole(String),
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

/// A class `λ·lambda + d0·δ0 + d1·δ1 + d2·δ2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DivClass {
    #[serde(with = "crate::polyring::qserde")]
    pub lambda: Rational,
    #[serde(with = "crate::polyring::qserde")]
    pub d0: Rational,
    #[serde(with = "crate::polyring::qserde")]
    pub d1: Rational,
    #[serde(with = "crate::polyring::qserde")]
    pub d2: Rational,
}

impl DivClass {
    pub fn new(lambda: Rational, d0: Rational, d1: Rational, d2: Rational) -> Self {
        DivClass { lambda, d0, d1, d2 }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        DivClass::new(q(c[0]), q(c[1]), q(c[2]), q(c[3]))
    }

    pub fn zero() -> Self {
        DivClass::from_ints([0, 0, 0, 0])
    }

    pub fn lambda() -> Self {
        DivClass::from_ints([1, 0, 0, 0])
    }

    pub fn delta0() -> Self {
        DivClass::from_ints([0, 1, 0, 0])
    }

    pub fn delta1() -> Self {
        DivClass::from_ints([0, 0, 1, 0])
    }

    pub fn delta2() -> Self {
        DivClass::from_ints([0, 0, 0, 1])
    }

    /// `δ = δ0 + δ1 + δ2`.
    pub fn delta() -> Self {
        DivClass::from_ints([0, 1, 1, 1])
    }

    pub fn coords(&self) -> [Rational; 4] {
        [self.lambda.clone(), self.d0.clone(), self.d1.clone(), self.d2.clone()]
    }

    pub fn from_coords(c: &[Rational]) -> Self {
        DivClass::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DivClass::new(&self.lambda * c, &self.d0 * c, &self.d1 * c, &self.d2 * c)
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    /// The ratio `c` with `self = c·other`, if one exists.
    pub fn ratio_to(&self, other: &DivClass) -> Option<Rational> {
        let (a, b) = (self.coords(), other.coords());
        let i = b.iter().position(|x| !x.is_zero())?;
        let c = &a[i] / &b[i];
        (other.scale(&c) == *self).then_some(c)
    }

    /// Drop the δ1 coordinate.
    pub fn without_d1(&self) -> DivClass {
        DivClass::new(self.lambda.clone(), self.d0.clone(), Rational::zero(), self.d2.clone())
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, o: &DivClass) -> DivClass {
        DivClass::new(&self.lambda + &o.lambda, &self.d0 + &o.d0, &self.d1 + &o.d1, &self.d2 + &o.d2)
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, o: &DivClass) -> DivClass {
        DivClass::new(&self.lambda - &o.lambda, &self.d0 - &o.d0, &self.d1 - &o.d1, &self.d2 - &o.d2)
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        self.scale(&q(-1))
    }
}

impl Mul<&DivClass> for &Rational {
    type Output = DivClass;
    fn mul(self, d: &DivClass) -> DivClass {
        d.scale(self)
    }
}

fn signed_term(c: &Rational, name: &str, first: bool) -> String {
    let neg = c < &Rational::zero();
    let mag = if neg { -c } else { c.clone() };
    let body = if first {
        if mag.is_one() { name.to_string() } else { format!("{}{name}", fmt_rational(&mag)) }
    } else {
        format!("{} {name}", fmt_rational(&mag))
    };
    match (first, neg) {
        (true, true) => format!("\u{2212}{body}"),
        (true, false) => body,
        (false, true) => format!(" \u{2212} {body}"),
        (false, false) => format!(" + {body}"),
    }
}

impl fmt::Display for DivClass {
    /// `13λ − 39/29 δ0 + 0 δ1 + 0 δ2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}{}",
            signed_term(&self.lambda, "\u{3bb}", true),
            signed_term(&self.d0, "\u{3b4}0", false),
            signed_term(&self.d1, "\u{3b4}1", false),
            signed_term(&self.d2, "\u{3b4}2", false)
        )
    }
}

/// `K = 13λ − 2δ`.
pub fn canonical_class() -> DivClass {
    &DivClass::from_ints([13, 0, 0, 0]) - &DivClass::delta().scale(&q(2))
}

/// `K + αδ`.
pub fn hk_divisor(alpha: &Rational) -> DivClass {
    &canonical_class() + &DivClass::delta().scale(alpha)
}

fn in_open(x: &Rational, lo: &Rational, hi: &Rational) -> bool {
    lo < x && x < hi
}

/// The polarization on the α-stable model for α in `(5/9, 2/3)`, written
/// in the pushed-forward classes. δ1 is contracted, and so is δ2 for
/// `α ≤ 19/29`; contracted classes get a zero coordinate.
pub fn l_alpha(alpha: &AlphaArg) -> Result<DivClass, PicardError> {
    let a = match alpha {
        AlphaArg::BelowTwoThirds => {
            let c = -qf(4, 3);
            return Ok(DivClass::new(q(13), c.clone(), Rational::zero(), c));
        }
        AlphaArg::Exact(a) => a.clone(),
    };
    if !in_open(&a, &qf(5, 9), &qf(2, 3)) {
        return Err(PicardError::OutOfRange(format!("{} is not in (5/9, 2/3)", fmt_rational(&a))));
    }
    let c = &a - q(2);
    let d2 = if a <= qf(19, 29) { Rational::zero() } else { c.clone() };
    Ok(DivClass::new(q(13), c, Rational::zero(), d2))
}

/// `13λ − (2 − α)(δ0 + δ2)`, the class used on both sides of the 19/29 wall.
pub fn l_plus(alpha: &Rational) -> DivClass {
    let c = alpha - q(2);
    DivClass::new(q(13), c.clone(), Rational::zero(), c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VgitPolarizationParams {
    /// `s = 1/t`.
    pub s: Rational,
    pub t: Option<Rational>,
}

impl VgitPolarizationParams {
    pub fn from_s(s: Rational) -> Self {
        let t = (!s.is_zero()).then(|| s.recip());
        VgitPolarizationParams { s, t }
    }

    pub fn from_t(t: Rational) -> Result<Self, PicardError> {
        if t.is_zero() {
            return Err(PicardError::Invalid("t = 0 has no s = 1/t".into()));
        }
        Ok(VgitPolarizationParams { s: t.recip(), t: Some(t) })
    }

    /// Whether `t` lies in the chamber range `(0, 2/3)`.
    pub fn in_chamber_range(&self) -> bool {
        self.t.as_ref().is_some_and(|t| in_open(t, &Rational::zero(), &qf(2, 3)))
    }
}

/// Pullback of `4sη + 4ξ` to the moduli of stable curves.
pub fn vgit_pullback(p: &VgitPolarizationParams) -> DivClass {
    let s = &p.s;
    DivClass::new(
        q(34) * s - q(33),
        -(q(4) * s - q(4)),
        -(q(14) * s - q(15)),
        -(q(18) * s - q(21)),
    )
}

/// `t(α) = (34α − 16)/(33α − 14)`.
pub fn t_of_alpha(alpha: &Rational) -> Result<Rational, PicardError> {
    let den = q(33) * alpha - q(14);
    if den.is_zero() {
        return Err(PicardError::Pole(fmt_rational(alpha)));
    }
    Ok((q(34) * alpha - q(16)) / den)
}

/// Inverse of [`t_of_alpha`]: `α = (14t − 16)/(33t − 34)`.
pub fn alpha_of_t(t: &Rational) -> Result<Rational, PicardError> {
    let den = q(33) * t - q(34);
    if den.is_zero() {
        return Err(PicardError::Pole(fmt_rational(t)));
    }
    Ok((q(14) * t - q(16)) / den)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallRecord {
    pub index: u32,
    #[serde(with = "crate::polyring::qserde")]
    pub alpha: Rational,
    /// Table rows sharing one wall are joined with `; `.
    pub locus_removed: String,
    pub singularity_introduced: String,
}

impl WallRecord {
    pub fn sub_rows(&self) -> Vec<(&str, &str)> {
        self.locus_removed.split("; ").zip(self.singularity_introduced.split("; ")).collect()
    }
}

const WALL_ROWS: [(u32, i64, i64, &str, &str); 11] = [
    (1, 9, 11, "elliptic tails", "A\u{2082}"),
    (2, 7, 10, "elliptic bridges", "A\u{2083}"),
    (3, 2, 3, "genus two tails attached at a Weierstrass point", "A\u{2084}"),
    (4, 19, 29, "\u{3b4}\u{2082}, i.e. general genus two tails", "A\u{2085}^sep"),
    (5, 5, 9, "tacnodal curves glued at conjugate points", "A\u{2085}^nsep"),
    (5, 5, 9, "hyperelliptic curves", "A\u{2086}, A\u{2087}^nsep, A\u{2088}, A\u{2089}"),
    (5, 5, 9, "elliptic triboroughs", "D\u{2084}"),
    (6, 23, 44, "cuspidal curves with hyperelliptic normalization", "A\u{2087}^sep"),
    (7, 1, 2, "nodal curves with hyperelliptic normalization", "double conic + transversal conic"),
    (8, 29, 60, "Gieseker-Petri divisor", "triple conic"),
    (9, 8, 17, "everything", "terminal model"),
];

/// The nine walls of the program in genus four, in decreasing α.
pub fn walls() -> Vec<WallRecord> {
    let mut out: Vec<WallRecord> = Vec::new();
    for (i, n, d, locus, sing) in WALL_ROWS {
        match out.last_mut() {
            Some(w) if w.index == i => {
                w.locus_removed = format!("{}; {locus}", w.locus_removed);
                w.singularity_introduced = format!("{}; {sing}", w.singularity_introduced);
            }
            _ => out.push(WallRecord {
                index: i,
                alpha: qf(n, d),
                locus_removed: locus.into(),
                singularity_introduced: sing.into(),
            }),
        }
    }
    out
}

/// A quotient of univariate polynomials, kept with a nonzero denominator.
#[derive(Debug, Clone)]
pub struct RatFunc {
    pub num: UPoly,
    pub den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatFunc { num, den }
    }

    pub fn poly(p: UPoly) -> Self {
        RatFunc::new(p, UPoly::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::poly(UPoly::constant(c))
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).reduced()
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc::new(self.num.scale(&q(-1)), self.den.clone())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den)).reduced()
    }

    pub fn div(&self, o: &RatFunc) -> RatFunc {
        assert!(!o.num.is_zero(), "division by zero rational function");
        RatFunc::new(self.num.mul(&o.den), self.den.mul(&o.num)).reduced()
    }

    /// Lowest terms with a monic denominator.
    pub fn reduced(&self) -> RatFunc {
        if self.num.is_zero() {
            return RatFunc::new(UPoly::zero(), UPoly::one());
        }
        let g = self.num.gcd(&self.den);
        let (n, d) = (self.num.div_exact(&g), self.den.div_exact(&g));
        let lc = d.lead().recip();
        RatFunc::new(n.scale(&lc), d.scale(&lc))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn fmt_in(&self, var: &str) -> String {
        let r = self.reduced();
        let n = fmt_upoly(&r.num, var);
        if r.den == UPoly::one() {
            n
        } else {
            format!("({n})/({})", fmt_upoly(&r.den, var))
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &RatFunc) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

pub fn fmt_upoly(p: &UPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let cs = fmt_rational(c);
        parts.push(match (i, cs.as_str()) {
            (0, _) => cs,
            (_, "1") => mono,
            (_, "-1") => format!("-{mono}"),
            _ => format!("{cs}*{mono}"),
        });
    }
    parts.join(" + ").replace("+ -", "- ")
}

/// A class whose coordinates are rational functions of one parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicClass(pub [RatFunc; 4]);

impl SymbolicClass {
    pub fn constant(d: &DivClass) -> Self {
        SymbolicClass(d.coords().map(RatFunc::constant))
    }

    pub fn add(&self, o: &SymbolicClass) -> Self {
        SymbolicClass(std::array::from_fn(|i| self.0[i].add(&o.0[i])))
    }

    pub fn sub(&self, o: &SymbolicClass) -> Self {
        SymbolicClass(std::array::from_fn(|i| self.0[i].sub(&o.0[i])))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        SymbolicClass(std::array::from_fn(|i| self.0[i].mul(c)))
    }

    pub fn eval(&self, x: &Rational) -> Option<DivClass> {
        let c: Option<Vec<Rational>> = self.0.iter().map(|f| f.eval(x)).collect();
        c.map(|c| DivClass::from_coords(&c))
    }

    pub fn fmt_in(&self, var: &str) -> String {
        let names = ["\u{3bb}", "\u{3b4}0", "\u{3b4}1", "\u{3b4}2"];
        let parts: Vec<String> = self.0.iter().zip(names).map(|(c, n)| format!("({}) {n}", c.fmt_in(var))).collect();
        parts.join(" + ")
    }
}

/// Pullback along the contraction of δ1 (and of δ2 when `contract_d2`),
/// acting on classes of the model. Fixed by `φ*λ = λ + δ1`,
/// `φ*δ0 = δ0 + 12δ1` and, through the δ2 contraction, `j*λ = λ' + 3δ2'`,
/// `j*δ0 = δ0' + 30δ2'`.
pub fn contraction_pullback(model: &SymbolicClass, contract_d2: bool) -> SymbolicClass {
    let [l, d0, _, d2] = &model.0;
    let k = |n: i64| RatFunc::constant(q(n));
    let (l3, d30) = if contract_d2 { (k(3), k(30)) } else { (k(0), k(0)) };
    let d2_part = if contract_d2 { k(0) } else { d2.clone() };
    SymbolicClass([
        l.clone(),
        d0.clone(),
        l.add(&d0.mul(&k(12))),
        l.mul(&l3).add(&d0.mul(&d30)).add(&d2_part),
    ])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub anchor: String,
    pub lhs: String,
    pub rhs: String,
    pub passed: bool,
}

impl IdentityCheck {
    fn new(name: &str, anchor_id: &str, lhs: String, rhs: String, passed: bool) -> Self {
        IdentityCheck { name: name.into(), anchor: quote(anchor_id).into(), lhs, rhs, passed }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// JSON object keyed by identity name.
    pub fn to_json(&self) -> serde_json::Value {
        let map = self
            .checks
            .iter()
            .map(|c| (c.name.clone(), serde_json::to_value(c).expect("plain data")))
            .collect::<serde_json::Map<_, _>>();
        serde_json::Value::Object(map)
    }
}

fn compare(name: &str, anchor_id: &str, lhs: &DivClass, rhs: &DivClass) -> IdentityCheck {
    IdentityCheck::new(name, anchor_id, lhs.to_string(), rhs.to_string(), lhs == rhs)
}

fn compare_symbolic(name: &str, anchor_id: &str, var: &str, lhs: &SymbolicClass, rhs: &SymbolicClass) -> IdentityCheck {
    IdentityCheck::new(name, anchor_id, lhs.fmt_in(var), rhs.fmt_in(var), lhs == rhs)
}

/// `9λ − δ0 − 3δ2`, half the pullback of the VGIT polarization at `s = 3/2`.
pub fn vgit_half_class() -> DivClass {
    DivClass::from_ints([9, -1, 0, -3])
}

/// Every class identity of the projectivity argument, checked exactly.
pub fn verify_identities() -> IdentityReport {
    let mut checks = Vec::new();
    let l19 = l_plus(&qf(19, 29));
    let d2 = DivClass::delta2();

    // VGIT pullback at s = 3/2, away from δ1
    let p32 = vgit_pullback(&VgitPolarizationParams::from_s(qf(3, 2))).without_d1();
    checks.push(compare("vgit_three_halves", "picard.vgit_three_halves", &p32, &vgit_half_class().scale(&q(2))));

    // (1/3)(9λ − δ0 − 3δ2) + 2 L⁻_{2/3}
    let l23 = l_alpha(&AlphaArg::BelowTwoThirds).expect("tag is in range");
    let lhs = &vgit_half_class().scale(&qf(1, 3)) + &l23.scale(&q(2));
    let mid = DivClass::new(q(29), q(-3), Rational::zero(), qf(-11, 3));
    let rhs = &l19.scale(&qf(29, 13)) - &d2.scale(&qf(2, 3));
    checks.push(compare("combination_two_thirds", "picard.combination", &lhs, &mid));
    checks.push(compare("combination_two_thirds_rhs", "picard.combination", &mid, &rhs));

    // the same combination for L_{2/3 − ε}, as rational functions of ε
    let eps = RatFunc::poly(UPoly::x());
    let k = |n: i64| RatFunc::constant(q(n));
    let one_minus_9e = RatFunc::poly(UPoly::from_ints(&[1, -9]));
    let a = RatFunc::poly(UPoly::from_ints(&[1, -87])).div(&one_minus_9e.mul(&k(3)));
    let b = k(2).div(&one_minus_9e);
    let c = RatFunc::constant(-qf(4, 3)).sub(&eps);
    let l_eps = SymbolicClass([k(13), c.clone(), k(0), c]);
    let lhs = SymbolicClass::constant(&vgit_half_class()).scale(&a).add(&l_eps.scale(&b));
    let rhs = SymbolicClass::constant(&l19.scale(&qf(29, 13))).sub(&SymbolicClass::constant(&d2).scale(&a.mul(&k(2))));
    checks.push(compare_symbolic("combination_epsilon", "picard.epsilon", "\u{3b5}", &lhs, &rhs));

    // 9 j*λ − j*δ0 and 29 j*λ − 3 j*δ0 given; solve for the pullbacks
    let m = vec![vec![q(9), q(-1)], vec![q(29), q(-3)]];
    let first = vgit_half_class();
    let second = DivClass::from_ints([29, -3, 0, -3]);
    let (fc, sc) = (first.coords(), second.coords());
    let mut cols = [Vec::new(), Vec::new()];
    for i in 0..4 {
        let x = solve(&m, &[fc[i].clone(), sc[i].clone()]).expect("invertible 2x2 system");
        cols[0].push(x[0].clone());
        cols[1].push(x[1].clone());
    }
    let (jl, jd0) = (DivClass::from_coords(&cols[0]), DivClass::from_coords(&cols[1]));
    checks.push(compare("pullback_lambda", "picard.pullback", &jl, &DivClass::from_ints([1, 0, 0, 3])));
    checks.push(compare("pullback_delta0", "picard.pullback", &jd0, &DivClass::from_ints([0, 1, 0, 30])));

    // K + αδ − φ*L_α as a class in symbolic α
    let al = RatFunc::poly(UPoly::x());
    let two_minus = k(2).sub(&al);
    let k_alpha = SymbolicClass([k(13), al.sub(&k(2)), al.sub(&k(2)), al.sub(&k(2))]);
    let neg = two_minus.neg();
    let l_upper = SymbolicClass([k(13), neg.clone(), k(0), neg.clone()]);
    let l_lower = SymbolicClass([k(13), neg, k(0), k(0)]);
    let lin = |c: [i64; 2]| RatFunc::poly(UPoly::from_ints(&c));
    let upper = k_alpha.sub(&contraction_pullback(&l_upper, false));
    let upper_rhs = SymbolicClass([k(0), k(0), lin([9, -11]), k(0)]);
    checks.push(compare_symbolic("decomposition_upper", "picard.decomposition_upper", "\u{3b1}", &upper, &upper_rhs));
    let lower = k_alpha.sub(&contraction_pullback(&l_lower, true));
    let lower_rhs = SymbolicClass([k(0), k(0), lin([9, -11]), lin([19, -29])]);
    checks.push(compare_symbolic("decomposition_lower", "picard.decomposition_lower", "\u{3b1}", &lower, &lower_rhs));
    let vanish = |x: Rational, idx: usize| lower_rhs.0[idx].eval(&x).is_some_and(|v| v.is_zero());
    checks.push(IdentityCheck::new(
        "decomposition_zeros",
        "picard.decomposition_lower",
        "residues at 19/29 (\u{3b4}2) and 9/11 (\u{3b4}1)".into(),
        "0, 0".into(),
        vanish(qf(19, 29), 3) && vanish(qf(9, 11), 2),
    ));

    // s = 17/14 restricted to δ2: proportional to L⁺_{19/29}
    let p = vgit_pullback(&VgitPolarizationParams::from_s(qf(17, 14))).without_d1();
    let expected = DivClass::new(qf(58, 7), qf(-6, 7), Rational::zero(), qf(-6, 7));
    checks.push(compare("restriction_value", "picard.restriction", &p, &expected));
    let ratio = p.ratio_to(&l19);
    checks.push(IdentityCheck::new(
        "restriction_ratio",
        "picard.restriction",
        ratio.as_ref().map(fmt_rational).unwrap_or_else(|| "not proportional".into()),
        "58/91".into(),
        ratio == Some(qf(58, 91)),
    ));

    IdentityReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_format() {
        let l = l_alpha(&AlphaArg::Exact(qf(19, 29))).unwrap();
        assert_eq!(l.to_string(), "13\u{3bb} \u{2212} 39/29 \u{3b4}0 + 0 \u{3b4}1 + 0 \u{3b4}2");
    }

    #[test]
    fn ratfunc_reduces() {
        let f = RatFunc::new(UPoly::from_ints(&[-1, 0, 1]), UPoly::from_ints(&[2, 2]));
        let r = f.reduced();
        assert_eq!(r.den, UPoly::one());
        assert_eq!(r.num, UPoly::new(vec![qf(-1, 2), qf(1, 2)]));
    }

    #[test]
    fn slope_pole() {
        assert!(matches!(t_of_alpha(&qf(14, 33)), Err(PicardError::Pole(_))));
        assert!(matches!(alpha_of_t(&qf(34, 33)), Err(PicardError::Pole(_))));
    }
}
