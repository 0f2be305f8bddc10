//! Sparse multivariate polynomials over the rationals.
//!
//! Every variable carries a positive integer weight. Polynomials built over
//! the same [`VarTable`] can be combined; mixing tables is a structural error.

mod linalg;
mod parse;
mod resultant;
mod upoly;

pub use linalg::{
    diagonalize_symmetric, inverse, kernel_basis, mat_mul, matrix_rank, solve, symmetric_matrix_of_quadric,
    transpose, QMatrix,
};
pub use parse::{parse_poly, parse_poly_infer, ParseError};
pub use resultant::{determinant, resultant, sylvester_matrix};
pub use upoly::UPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

pub type Rational = BigRational;

/// Shorthand for an integer rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics on `d == 0`.
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text of a rational: `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable tables differ")]
    VarTableMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable table: {0}")]
    InvalidVarTable(String),
    #[error("{0}")]
    Domain(String),
    #[error("division is not exact")]
    NotDivisible,
}

/// Ordered variable names with positive weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarTable {
    pub fn new<S: AsRef<str>>(names: &[S], weights: &[u32]) -> Result<Arc<Self>, PolyError> {
        if names.len() != weights.len() {
            return Err(PolyError::InvalidVarTable(
                "names and weights differ in length".into(),
            ));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(PolyError::InvalidVarTable(format!("bad name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(PolyError::InvalidVarTable(format!("duplicate name `{n}`")));
            }
        }
        if weights.contains(&0) {
            return Err(PolyError::InvalidVarTable("weights must be positive".into()));
        }
        Ok(Arc::new(VarTable {
            names,
            weights: weights.to_vec(),
        }))
    }

    /// All weights equal to one.
    pub fn unweighted<S: AsRef<str>>(names: &[S]) -> Arc<Self> {
        Self::new(names, &vec![1; names.len()]).expect("valid names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
}

/// Exponent vector of a monomial.
pub type Exps = Vec<u32>;

/// A polynomial with rational coefficients over a [`VarTable`].
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Arc<VarTable>,
    terms: BTreeMap<Exps, Rational>,
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self)
    }
}

impl MPoly {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarTable>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The variable with index `i`.
    pub fn var_at(vars: &Arc<VarTable>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn var(vars: &Arc<VarTable>, name: &str) -> Result<Self, PolyError> {
        let i = vars
            .index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(vars, i))
    }

    pub fn monomial(vars: &Arc<VarTable>, exps: Exps, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent length mismatch");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, Rational)>>(vars: &Arc<VarTable>, it: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: Exps, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(e.len(), self.vars.len());
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&vec![0; self.nvars()])
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn weighted_degree_of(&self, e: &[u32]) -> u64 {
        e.iter()
            .zip(self.vars.weights())
            .map(|(&a, &w)| a as u64 * w as u64)
            .sum()
    }

    /// Largest weighted degree of a term.
    pub fn weighted_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| self.weighted_degree_of(e)).max()
    }

    pub fn is_weighted_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| self.weighted_degree_of(e));
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    /// Indices of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    fn check(&self, other: &MPoly) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars {
            Ok(())
        } else {
            Err(PolyError::VarTableMismatch)
        }
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check(other)?;
        let mut r = MPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut result = MPoly::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiply by the monomial with exponents `e`.
    pub fn shift(&self, e: &[u32]) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), v.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> MPoly {
        let mut r = MPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, c * Rational::from_integer(BigInt::from(e[i])));
            }
        }
        r
    }

    pub fn derivative_by_name(&self, name: &str) -> Result<MPoly, PolyError> {
        let i = self
            .vars
            .index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(self.partial_derivative(i))
    }

    /// Split into weighted-homogeneous pieces keyed by weighted degree.
    pub fn weighted_components(&self) -> BTreeMap<u64, MPoly> {
        let mut out: BTreeMap<u64, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = self.weighted_degree_of(e);
            out.entry(d)
                .or_insert_with(|| MPoly::zero(&self.vars))
                .add_term(e.clone(), c.clone());
        }
        out
    }

    /// Split into pieces of equal total degree (all weights one).
    pub fn homogeneous_components(&self) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d: u32 = e.iter().sum();
            out.entry(d)
                .or_insert_with(|| MPoly::zero(&self.vars))
                .add_term(e.clone(), c.clone());
        }
        out
    }

    /// Part of lowest total degree.
    pub fn lowest_form(&self) -> MPoly {
        self.homogeneous_components()
            .into_iter()
            .next()
            .map(|(_, p)| p)
            .unwrap_or_else(|| MPoly::zero(&self.vars))
    }

    /// Substitute polynomials for variables.
    ///
    /// `images[i]` is the image of variable `i`; every image must live over
    /// `target`. Constants and powers are expanded exactly.
    pub fn substitute_all(&self, images: &[MPoly], target: &Arc<VarTable>) -> Result<MPoly, PolyError> {
        if images.len() != self.nvars() {
            return Err(PolyError::Domain(format!(
                "expected {} images, got {}",
                self.nvars(),
                images.len()
            )));
        }
        for im in images {
            if *im.vars != **target {
                return Err(PolyError::VarTableMismatch);
            }
        }
        let mut cache: Vec<Vec<MPoly>> = vec![vec![MPoly::one(target)]; self.nvars()];
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k as usize];
            }
            for (k, v) in t.terms {
                out.add_term(k, v);
            }
        }
        Ok(out)
    }

    /// Substitute by variable name. Unbound variables are carried over by
    /// name into `target`; if `target` lacks such a name the call fails.
    pub fn substitute(&self, bindings: &HashMap<String, MPoly>, target: &Arc<VarTable>) -> Result<MPoly, PolyError> {
        for k in bindings.keys() {
            if self.vars.index(k).is_none() {
                return Err(PolyError::UnknownVariable(k.clone()));
            }
        }
        let mut images = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.names().iter().enumerate() {
            match bindings.get(name) {
                Some(p) => images.push(p.clone()),
                None => {
                    if self.degree_in(i).unwrap_or(0) == 0 {
                        images.push(MPoly::zero(target));
                        continue;
                    }
                    let j = target.index(name).ok_or_else(|| {
                        PolyError::Domain(format!("variable `{name}` is unbound and absent from the target"))
                    })?;
                    images.push(MPoly::var_at(target, j));
                }
            }
        }
        self.substitute_all(&images, target)
    }

    /// Replace variable `i` by the constant `c`, keeping the table.
    pub fn specialize(&self, i: usize, c: &Rational) -> MPoly {
        let mut r = MPoly::zero(&self.vars);
        for (e, v) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            r.add_term(e2, v * pow_q(c, k));
        }
        r
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars());
        let mut s = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= pow_q(x, k);
                }
            }
            s += t;
        }
        s
    }

    /// `f(x + p)`: move the point `p` to the origin.
    pub fn translate(&self, p: &[Rational]) -> MPoly {
        if p.iter().all(|c| c.is_zero()) {
            return self.clone();
        }
        let images: Vec<MPoly> = (0..self.nvars())
            .map(|i| &MPoly::var_at(&self.vars, i) + &MPoly::constant(&self.vars, p[i].clone()))
            .collect();
        self.substitute_all(&images, &self.vars).expect("same table")
    }

    /// Re-express over another table that contains every occurring variable.
    pub fn embed(&self, target: &Arc<VarTable>) -> Result<MPoly, PolyError> {
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.names().iter().enumerate() {
            match target.index(name) {
                Some(j) => map.push(Some(j)),
                None if self.degree_in(i).unwrap_or(0) == 0 => map.push(None),
                None => return Err(PolyError::UnknownVariable(name.clone())),
            }
        }
        let mut r = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    e2[j] += k;
                }
            }
            r.add_term(e2, c.clone());
        }
        Ok(r)
    }

    /// View as a polynomial in variable `i` with coefficients in the rest.
    /// Entry `k` is the coefficient of `x_i^k`.
    pub fn coefficients_in(&self, i: usize) -> Vec<MPoly> {
        let d = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(&self.vars); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// Univariate view when only variable `i` can occur.
    pub fn to_upoly(&self, i: usize) -> Result<UPoly, PolyError> {
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return Err(PolyError::Domain(format!(
                    "polynomial is not univariate in `{}`",
                    self.vars.name(i)
                )));
            }
            let k = e[i] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] = c.clone();
        }
        Ok(UPoly::new(coeffs))
    }

    pub fn from_upoly(vars: &Arc<VarTable>, i: usize, u: &UPoly) -> MPoly {
        let mut p = MPoly::zero(vars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Leading term in lexicographic order of the exponent vectors.
    pub fn lex_leading(&self) -> Option<(&Exps, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `NotDivisible`.
    pub fn div_exact(&self, d: &MPoly) -> Result<MPoly, PolyError> {
        self.check(d)?;
        let (de, dc) = match d.lex_leading() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => return Err(PolyError::Domain("division by zero".into())),
        };
        if d.terms.len() == 1 {
            let mut out = MPoly::zero(&self.vars);
            for (e, c) in &self.terms {
                if e.iter().zip(&de).any(|(a, b)| a < b) {
                    return Err(PolyError::NotDivisible);
                }
                out.add_term(e.iter().zip(&de).map(|(a, b)| a - b).collect(), c / &dc);
            }
            return Ok(out);
        }
        let mut rem = self.clone();
        let mut quo = MPoly::zero(&self.vars);
        while let Some((re, rc)) = rem.lex_leading().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return Err(PolyError::NotDivisible);
            }
            let qe: Exps = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let qc = &rc / &dc;
            for (e, c) in &d.terms {
                let e2: Exps = e.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(e2, -(c * &qc));
            }
            quo.add_term(qe, qc);
        }
        Ok(quo)
    }

    /// Divide by the largest power of variable `i` that divides every term.
    pub fn strip_var_power(&self, i: usize) -> (MPoly, u32) {
        let k = self.terms.keys().map(|e| e[i]).min().unwrap_or(0);
        if k == 0 {
            return (self.clone(), 0);
        }
        let mut r = MPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] -= k;
            r.add_term(e2, c.clone());
        }
        (r, k)
    }

    /// Scale so that the leading coefficient in graded-lex order is one.
    pub fn monic(&self) -> MPoly {
        match self.grlex_terms().first() {
            Some((_, c)) => self.scale(&(Rational::one() / (*c).clone())),
            None => self.clone(),
        }
    }

    /// Multiply by a rational so that coefficients are coprime integers with
    /// a positive leading coefficient in graded-lex order.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = (c * Rational::from_integer(den.clone())).to_integer();
            g = num_integer::Integer::gcd(&g, &n);
        }
        let mut s = Rational::new(den, g);
        if self.grlex_terms()[0].1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Terms sorted by descending total degree, then descending lex.
    pub fn grlex_terms(&self) -> Vec<(&Exps, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }

    /// Weight of each monomial under integer weights `w`: the sum of `w_i e_i`.
    pub fn monomial_weights(&self, w: &[i64]) -> Vec<(Exps, i64)> {
        self.terms
            .keys()
            .map(|e| (e.clone(), e.iter().zip(w).map(|(&a, &b)| a as i64 * b).sum()))
            .collect()
    }

    /// Keep only the terms for which `keep` returns true.
    pub fn filter_terms<F: Fn(&Exps) -> bool>(&self, keep: F) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Parse against this polynomial's variable table.
    pub fn parse(text: &str, vars: &Arc<VarTable>) -> Result<MPoly, ParseError> {
        parse_poly(text, vars)
    }
}

pub fn pow_q(c: &Rational, k: u32) -> Rational {
    num_traits::pow::pow(c.clone(), k as usize)
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.grlex_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&k| k == 0);
            if !a.is_one() || is_const {
                factors.push(fmt_rational(&a));
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), k)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                self.$f(rhs).expect("variable tables differ")
            }
        }
        impl std::ops::$tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$f(&rhs).expect("variable tables differ")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        (&self).neg()
    }
}

/// A point of an affine chart, given by rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointQ(pub Vec<Rational>);

impl PointQ {
    pub fn origin(n: usize) -> Self {
        PointQ(vec![Rational::zero(); n])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for PointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl serde::Serialize for PointQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        qserde::vec::serialize(&self.0, s)
    }
}

impl<'de> serde::Deserialize<'de> for PointQ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(PointQ(qserde::vec::deserialize(d)?))
    }
}

/// Parse `"3"`, `"-3/4"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    s.trim().parse::<Rational>().ok()
}

/// Serde helpers writing rationals as strings such as `"-3/4"`.
pub mod qserde {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let t = String::deserialize(d)?;
        parse_rational(&t).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{t}`")))
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&fmt_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|t| parse_rational(t).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{t}`"))))
                .collect()
        }
    }

    pub mod opt_vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => super::vec::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
            let v = Option::<Vec<String>>::deserialize(d)?;
            match v {
                None => Ok(None),
                Some(v) => v
                    .iter()
                    .map(|t| parse_rational(t).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()
                    .map(Some),
            }
        }
    }
}

/// Projective point printed as `[a:b:c]`, scaled to coprime integers.
pub fn normalize_projective(p: &[Rational]) -> Vec<Rational> {
    let mut den = BigInt::one();
    for c in p {
        den = num_integer::Integer::lcm(&den, c.denom());
    }
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = num_integer::Integer::gcd(&g, n);
    }
    if g.is_zero() {
        return p.to_vec();
    }
    let first_sign = ints.iter().find(|n| !n.is_zero()).map(|n| n.is_negative()).unwrap_or(false);
    ints.into_iter()
        .map(|n| {
            let v = Rational::from_integer(n / &g);
            if first_sign {
                -v
            } else {
                v
            }
        })
        .collect()
}

pub fn fmt_projective(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(fmt_rational).collect();
    format!("[{}]", parts.join(":"))
}

/// Squarefree decomposition of a univariate polynomial or a binary form.
///
/// Returns pairwise coprime squarefree factors with their multiplicities; the
/// product of `factor^multiplicity` equals `f` up to a nonzero rational. For a
/// binary form the factor of the root at infinity is the second variable.
pub fn squarefree_factor(f: &MPoly) -> Result<Vec<(MPoly, u32)>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::Domain("squarefree factorization of zero".into()));
    }
    let support = f.support_vars();
    match support.len() {
        0 => Ok(Vec::new()),
        1 => {
            let i = support[0];
            let u = f.to_upoly(i)?;
            Ok(u
                .squarefree()
                .into_iter()
                .map(|(p, m)| (MPoly::from_upoly(f.vars(), i, &p).primitive(), m))
                .collect())
        }
        2 => {
            if !f.is_homogeneous() {
                return Err(PolyError::Domain(
                    "two-variable input must be a binary form".into(),
                ));
            }
            let (i, j) = (support[0], support[1]);
            let n = f.total_degree().unwrap();
            let dehom = f.specialize(j, &Rational::one());
            let u = dehom.to_upoly(i)?;
            let mut out = Vec::new();
            for (p, m) in u.squarefree() {
                let d = p.degree().unwrap_or(0) as u32;
                // rehomogenize: y^d p(x/y)
                let mut h = MPoly::zero(f.vars());
                for (k, c) in p.coeffs().iter().enumerate() {
                    let mut e = vec![0; f.nvars()];
                    e[i] = k as u32;
                    e[j] = d - k as u32;
                    h.add_term(e, c.clone());
                }
                out.push((h.primitive(), m));
            }
            let at_inf = n - u.degree().unwrap_or(0) as u32;
            if at_inf > 0 {
                out.push((MPoly::var_at(f.vars(), j), at_inf));
            }
            Ok(out)
        }
        _ => Err(PolyError::Domain(
            "squarefree factorization needs a univariate polynomial or binary form".into(),
        )),
    }
}

/// Root multiplicities of a nonzero binary form, one entry per root over the
/// algebraic closure, grouped as (multiplicity, number of roots with it).
pub fn binary_form_root_profile(f: &MPoly) -> Result<Vec<(u32, u32)>, PolyError> {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for (p, m) in squarefree_factor(f)? {
        let d = p.total_degree().unwrap_or(0);
        *counts.entry(m).or_insert(0) += d;
    }
    Ok(counts.into_iter().collect())
}

/// Exact square root of a non-negative rational, if it is a square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Convert an integer-like rational to `i64` if it fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    num_traits::ToPrimitive::to_i64(r.numer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<VarTable> {
        VarTable::unweighted(&["x", "y"])
    }

    #[test]
    fn cancellation_and_products() {
        let v = xy();
        let x = MPoly::var(&v, "x").unwrap();
        let y = MPoly::var(&v, "y").unwrap();
        let s = &(&x + &y) + &(&x - &y);
        assert_eq!(s, x.scale(&q(2)));
        let v3 = VarTable::unweighted(&["y", "z"]);
        let y3 = MPoly::var(&v3, "y").unwrap();
        let z3 = MPoly::var(&v3, "z").unwrap();
        assert_eq!((&y3.pow(2) * &z3.pow(2)).to_string(), "y^2*z^2");
    }

    #[test]
    fn mismatched_tables_error() {
        let a = MPoly::var(&xy(), "x").unwrap();
        let b = MPoly::var(&VarTable::unweighted(&["x", "z"]), "x").unwrap();
        assert_eq!(a.try_add(&b), Err(PolyError::VarTableMismatch));
    }

    #[test]
    fn substitution_example() {
        let v = xy();
        let t = VarTable::unweighted(&["t"]);
        let f = parse_poly("x^2 + y", &v).unwrap();
        let tt = MPoly::var(&t, "t").unwrap();
        let mut b = HashMap::new();
        b.insert("x".to_string(), tt.pow(2));
        b.insert("y".to_string(), &tt - &tt.pow(4));
        assert_eq!(f.substitute(&b, &t).unwrap(), tt);
        let c = MPoly::constant(&v, qf(3, 7));
        assert_eq!(c.substitute(&b, &t).unwrap(), MPoly::constant(&t, qf(3, 7)));
    }

    #[test]
    fn unbound_variable_without_carry_over_fails() {
        let v = xy();
        let t = VarTable::unweighted(&["t"]);
        let f = parse_poly("x + y", &v).unwrap();
        let mut b = HashMap::new();
        b.insert("x".to_string(), MPoly::var(&t, "t").unwrap());
        assert!(f.substitute(&b, &t).is_err());
    }

    #[test]
    fn derivatives() {
        let v = VarTable::unweighted(&["x0", "x1", "x2", "x3"]);
        let f = parse_poly("x0*x2^2 + x1^2*x3", &v).unwrap();
        assert_eq!(f.partial_derivative(2).to_string(), "2*x0*x2");
        let g = parse_poly("y^2 - x^3", &xy()).unwrap();
        assert_eq!(g.partial_derivative(0).to_string(), "-3*x^2");
        assert!(MPoly::constant(&xy(), q(5)).partial_derivative(1).is_zero());
    }

    #[test]
    fn weighted_components_examples() {
        let v = VarTable::new(&["x", "y", "A", "B"], &[1, 3, 1, 1]).unwrap();
        // coefficients A, B are treated as constants here by giving them no role
        let f = parse_poly("y^2 + 2*x^3*y + 5*x^6", &v).unwrap();
        let comps = f.weighted_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(*comps.keys().next().unwrap(), 6);
        let w = VarTable::unweighted(&["x"]);
        let g = parse_poly("x + x^2", &w).unwrap();
        let c = g.weighted_components();
        assert_eq!(c[&1].to_string(), "x");
        assert_eq!(c[&2].to_string(), "x^2");
        assert!(MPoly::zero(&w).weighted_components().is_empty());
    }

    #[test]
    fn squarefree_examples() {
        let v = xy();
        let f = parse_poly("x^5*y^5", &v).unwrap();
        let mut sf = squarefree_factor(&f).unwrap();
        sf.sort_by_key(|(p, _)| p.to_string());
        assert_eq!(sf.len(), 2);
        assert_eq!((sf[0].0.to_string(), sf[0].1), ("x".to_string(), 5));
        assert_eq!((sf[1].0.to_string(), sf[1].1), ("y".to_string(), 5));
        let g = parse_poly("(x - y)^2*(x + y)^3", &v).unwrap();
        let mut sg = squarefree_factor(&g).unwrap();
        sg.sort_by_key(|(_, m)| *m);
        assert_eq!((sg[0].0.to_string(), sg[0].1), ("x - y".to_string(), 2));
        assert_eq!((sg[1].0.to_string(), sg[1].1), ("x + y".to_string(), 3));
        assert!(squarefree_factor(&MPoly::zero(&v)).is_err());
    }

    #[test]
    fn div_exact_roundtrip() {
        let v = xy();
        let a = parse_poly("x^2 - 3*x*y + 1/2", &v).unwrap();
        let b = parse_poly("y^3 + x - 7", &v).unwrap();
        let p = &a * &b;
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(a.div_exact(&b).is_err());
    }

    #[test]
    fn normalize_projective_points() {
        let p = normalize_projective(&[qf(-1, 2), q(0), qf(3, 4)]);
        assert_eq!(fmt_projective(&p), "[2:0:-3]");
    }
}
