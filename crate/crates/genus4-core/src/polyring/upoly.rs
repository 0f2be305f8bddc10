//! Dense univariate polynomials over the rationals.

use super::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    c: Vec<Rational>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(super::fmt_rational).collect();
        write!(f, "UPoly[{}]", parts.join(", "))
    }
}

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| super::q(n)).collect())
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn lead(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let z = Rational::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut r = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        UPoly::new(r)
    }

    pub fn scale(&self, s: &Rational) -> UPoly {
        UPoly::new(self.c.iter().map(|a| a * s).collect())
    }

    pub fn pow(&self, n: u32) -> UPoly {
        let mut r = UPoly::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let lc = d.lead();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quo = vec![Rational::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let coef = &r[k + dd] / &lc;
            if !coef.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &coef * b;
                }
            }
            quo[k] = coef;
        }
        r.truncate(dd);
        (UPoly::new(quo), UPoly::new(r))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.lead()))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Yun's algorithm: monic squarefree, pairwise coprime factors with
    /// multiplicities. Constant input gives an empty list.
    pub fn squarefree(&self) -> Vec<(UPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0);
        let mut c = fp.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a);
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_exact(&a);
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> UPoly {
        let mut r = UPoly::one();
        for (p, _) in self.squarefree() {
            r = r.mul(&p);
        }
        r
    }

    /// Scale to integer coefficients with gcd one and positive leading term.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let mut den = BigInt::one();
        for a in &self.c {
            den = den.lcm(a.denom());
        }
        let ints: Vec<BigInt> = self
            .c
            .iter()
            .map(|a| (a * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for n in &ints {
            g = g.gcd(n);
        }
        if g.is_zero() {
            return ints;
        }
        let neg = ints.last().is_some_and(|n| n.is_negative());
        ints.into_iter()
            .map(|n| if neg { -(n / &g) } else { n / &g })
            .collect()
    }

    fn sturm_chain(&self) -> Vec<UPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].divrem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(r.scale(&-Rational::one()));
        }
        chain
    }

    fn sign_changes(chain: &[UPoly], x: &Rational) -> usize {
        let mut last = 0i8;
        let mut n = 0;
        for p in chain {
            let v = p.eval(x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    n += 1;
                }
                last = s;
            }
        }
        n
    }

    /// Distinct rational roots in increasing order.
    ///
    /// Roots are isolated by a Sturm sequence and narrowed by bisection until
    /// the interval is shorter than `1/D^2` (`D` the leading coefficient of
    /// the primitive integer form); the simplest fraction in the interval is
    /// then the only possible rational root there and is tested exactly.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sf = self.squarefree_part();
        let ints = sf.primitive_integer();
        let p = UPoly::new(ints.iter().map(|n| Rational::from_integer(n.clone())).collect());
        let lead = ints.last().unwrap().abs();
        let mut bound = Rational::one();
        for a in &ints[..ints.len() - 1] {
            let r = Rational::new(a.abs(), lead.clone());
            if r > Rational::zero() {
                bound = bound.max(r + Rational::one());
            }
        }
        bound += Rational::one();
        let width = Rational::new(BigInt::one(), &lead * &lead);
        let chain = p.sturm_chain();
        let mut roots = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((a, b)) = stack.pop() {
            let count = Self::sign_changes(&chain, &a) - Self::sign_changes(&chain, &b);
            if count == 0 {
                continue;
            }
            if count > 1 {
                let m = (&a + &b) / Rational::from_integer(BigInt::from(2));
                stack.push((a, m.clone()));
                stack.push((m, b));
                continue;
            }
            // exactly one root in (a, b]
            if p.eval(&b).is_zero() {
                roots.push(b);
                continue;
            }
            let (mut lo, mut hi) = (a, b);
            let mut found = None;
            while &hi - &lo >= width {
                let m = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
                if p.eval(&m).is_zero() {
                    found = Some(m);
                    break;
                }
                if Self::sign_changes(&chain, &m) - Self::sign_changes(&chain, &hi) == 1 {
                    lo = m;
                } else {
                    hi = m;
                }
            }
            let cand = match found {
                Some(r) => r,
                None => simplest_between(&lo, &hi),
            };
            if p.eval(&cand).is_zero() {
                roots.push(cand);
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// Rational roots with their multiplicities in `self`.
    pub fn rational_roots_with_multiplicity(&self) -> Vec<(Rational, u32)> {
        let mut out = Vec::new();
        for (p, m) in self.squarefree() {
            for r in p.rational_roots() {
                out.push((r, m));
            }
        }
        out.sort();
        out
    }
}

/// The fraction with the smallest denominator in the closed interval `[a, b]`.
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    assert!(a <= b);
    let fl = a.floor();
    if &fl == a {
        return a.clone();
    }
    let c = &fl + Rational::one();
    if &c <= b {
        // smallest-magnitude integer in range
        if c.is_positive() || b.is_negative() {
            if b.is_negative() {
                return b.floor();
            }
            return c;
        }
        return Rational::zero();
    }
    let inner = simplest_between(&(Rational::one() / (b - &fl)), &(Rational::one() / (a - &fl)));
    fl + Rational::one() / inner
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{q, qf};

    #[test]
    fn yun_decomposition() {
        // (x-1)^2 (x+2)^3 x
        let f = UPoly::from_ints(&[-1, 1])
            .pow(2)
            .mul(&UPoly::from_ints(&[2, 1]).pow(3))
            .mul(&UPoly::x());
        let sf = f.squarefree();
        assert_eq!(sf.len(), 3);
        assert_eq!(sf[0], (UPoly::from_ints(&[0, 1]), 1));
        assert_eq!(sf[1], (UPoly::from_ints(&[-1, 1]), 2));
        assert_eq!(sf[2], (UPoly::from_ints(&[2, 1]), 3));
    }

    #[test]
    fn rational_roots_found() {
        // (3x - 2)(x + 5)(x^2 - 2)(7x+1)^2
        let f = UPoly::from_ints(&[-2, 3])
            .mul(&UPoly::from_ints(&[5, 1]))
            .mul(&UPoly::from_ints(&[-2, 0, 1]))
            .mul(&UPoly::from_ints(&[1, 7]).pow(2));
        assert_eq!(f.rational_roots(), vec![q(-5), qf(-1, 7), qf(2, 3)]);
        let m = f.rational_roots_with_multiplicity();
        assert!(m.contains(&(qf(-1, 7), 2)));
        assert!(UPoly::from_ints(&[1, 0, 1]).rational_roots().is_empty());
        assert_eq!(UPoly::from_ints(&[0, 0, 1]).rational_roots(), vec![q(0)]);
    }

    #[test]
    fn close_roots_separated() {
        // roots 1/1000 and 1/999
        let f = UPoly::from_ints(&[-1, 1000]).mul(&UPoly::from_ints(&[-1, 999]));
        assert_eq!(f.rational_roots(), vec![qf(1, 1000), qf(1, 999)]);
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_between(&qf(3, 10), &qf(4, 10)), qf(1, 3));
        assert_eq!(simplest_between(&qf(-4, 10), &qf(-3, 10)), qf(-1, 3));
        assert_eq!(simplest_between(&qf(-1, 2), &qf(1, 2)), q(0));
        assert_eq!(simplest_between(&qf(5, 2), &qf(7, 2)), q(3));
    }
}
