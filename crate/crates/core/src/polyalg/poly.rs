//! Sparse multivariate polynomials over ℚ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::order::MonomialOrder;
use crate::rational::Q;

/// Exponent vector, one entry per ambient variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl std::ops::Index<usize> for Monomial {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

/// A polynomial in `nvars` variables. Zero coefficients are never stored and
/// the term map is sorted, so derived equality and hashing are canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(nvars, Monomial::var(nvars, i), Q::one())
    }

    pub fn term(nvars: usize, m: Monomial, c: Q) -> Self {
        assert_eq!(m.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn monomial(nvars: usize, exps: &[u32]) -> Self {
        Self::term(nvars, Monomial(exps.to_vec()), Q::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(nvars: usize, it: I) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.len(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m[var]).max().unwrap_or(0)
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &Q)> {
        let mut best: Option<(&Monomial, &Q)> = None;
        for (m, c) in &self.terms {
            best = match best {
                Some((bm, _)) if order.cmp(&bm.0, &m.0) != std::cmp::Ordering::Less => best,
                _ => Some((m, c)),
            };
        }
        best
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.mul(m), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Make monic with respect to `order` (zero stays zero).
    pub fn monic(&self, order: &MonomialOrder) -> Poly {
        match self.leading(order) {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, c * Q::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Substitute variable `var` by `value` (a polynomial in the same ring).
    pub fn substitute(&self, var: usize, value: &Poly) -> Poly {
        let max_e = self.degree_in(var);
        let mut powers = vec![Poly::one(self.nvars)];
        for i in 1..=max_e as usize {
            let next = &powers[i - 1] * value;
            powers.push(next);
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m[var] as usize;
            let mut m2 = m.clone();
            m2.0[var] = 0;
            let t = powers[e].mul_term(&m2, c);
            out = &out + &t;
        }
        out
    }

    /// Substitute a rational value for `var`.
    pub fn eval_var(&self, var: usize, value: &Q) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m[var];
            let mut m2 = m.clone();
            m2.0[var] = 0;
            let mut f = c.clone();
            for _ in 0..e {
                f *= value;
            }
            out.add_term(m2, f);
        }
        out
    }

    /// Evaluate at a full point.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-embed into a ring of `nvars` variables; variable `i` goes to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Drop trailing variables, which must not occur.
    pub fn truncate_vars(&self, nvars: usize) -> Option<Poly> {
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            if m.0[nvars..].iter().any(|&e| e != 0) {
                return None;
            }
            out.add_term(Monomial(m.0[..nvars].to_vec()), c.clone());
        }
        Some(out)
    }

    /// Scale to an integer polynomial with unit content and a positive
    /// coefficient on the largest term in the canonical (lex) term order.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            let v = (c * Q::from_integer(den.clone())).to_integer();
            num = num.gcd(&v);
        }
        let mut s = Q::new(den, num);
        if self.terms.values().next_back().map(|c| c.is_negative()) == Some(true) {
            s = -s;
        }
        self.scale(&s)
    }

    /// Exact division; returns `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let order = super::order::TermOrder::Lex.matrix(self.nvars);
        let (lm, lc) = {
            let (m, c) = divisor.leading(&order).unwrap();
            (m.clone(), c.clone())
        };
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.leading(&order) {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = c / &lc;
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to variable `var`: `self = Σ_e coeff_e · var^e`.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2.0[var];
            m2.0[var] = 0;
            out.entry(e)
                .or_insert_with(|| Poly::zero(self.nvars))
                .add_term(m2, c.clone());
        }
        out
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch in add");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch in sub");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch in mul");
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = super::parse::default_names(self.nvars);
        write!(f, "{}", super::parse::render(self, &names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }

    #[test]
    fn arithmetic() {
        let p = &x() + &y();
        let sq = &p * &p;
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.coeff(&Monomial(vec![1, 1])), q(2));
        assert!((&sq - &sq).is_zero());
    }

    #[test]
    fn exact_division() {
        let f = &x().pow(2) + &y().pow(3);
        let g = &f * &(&x() - &y());
        assert_eq!(g.exact_div(&f).unwrap(), &x() - &y());
        assert!(g.exact_div(&(&f + &Poly::one(2))).is_none());
    }

    #[test]
    fn substitution_and_derivative() {
        let f = &x().pow(2) + &y().pow(3);
        assert_eq!(f.derivative(1), y().pow(2).scale(&q(3)));
        let g = f.eval_var(0, &qf(1, 2));
        assert_eq!(g, &Poly::constant(2, qf(1, 4)) + &y().pow(3));
        let h = f.substitute(1, &x());
        assert_eq!(h, &x().pow(2) + &x().pow(3));
    }

    #[test]
    fn primitive_form() {
        let p = &x().scale(&qf(2, 3)) + &y().scale(&qf(-4, 3));
        // canonical largest term under lex-sorted storage is x
        assert_eq!(p.primitive(), &x() - &y().scale(&q(2)));
    }
}
