//! Weyl algebras D_n, D_n[s], D_n⟨t,∂_t⟩ and D_n⟨∂_t,s⟩.
//!
//! All algebras share one exponent layout
//! `[x_1..x_n, ∂_1..∂_n, t, s, ∂_t, h]`, and a stored exponent vector always
//! denotes the normally ordered monomial `x^a ∂^b t^c s^e ∂_t^d h^g`.

mod groebner;

pub use groebner::{initial_form, weighted_groebner, LeftGb, WeylGbOptions};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyalg::parse::{render_monomial, render_terms};
use crate::polyalg::{Monomial, MonomialOrder, Poly};
use crate::rational::{binomial, factorial, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraKind {
    /// D_n.
    Dn,
    /// D_n[s] with s central.
    DnS,
    /// D_{n+1} = D_n⟨t, ∂_t⟩.
    Dn1,
    /// D_n⟨∂_t, s⟩ with s ∂_t = ∂_t (s + 1).
    Bm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Algebra {
    pub kind: AlgebraKind,
    pub n: usize,
    /// Homogenized algebra: central h with [∂, x] = h².
    pub homogenized: bool,
}

impl Algebra {
    pub fn new(kind: AlgebraKind, n: usize) -> Self {
        Algebra {
            kind,
            n,
            homogenized: false,
        }
    }

    pub fn homogenized(self) -> Self {
        Algebra {
            homogenized: true,
            ..self
        }
    }

    pub fn dehomogenized(self) -> Self {
        Algebra {
            homogenized: false,
            ..self
        }
    }

    pub fn len(&self) -> usize {
        2 * self.n + 4
    }

    pub fn x(&self, i: usize) -> usize {
        i
    }

    pub fn d(&self, i: usize) -> usize {
        self.n + i
    }

    pub fn t(&self) -> usize {
        2 * self.n
    }

    pub fn s(&self) -> usize {
        2 * self.n + 1
    }

    pub fn dt(&self) -> usize {
        2 * self.n + 2
    }

    pub fn h(&self) -> usize {
        2 * self.n + 3
    }

    fn has(&self, var: usize) -> bool {
        let n2 = 2 * self.n;
        if var < n2 {
            return true;
        }
        match var - n2 {
            0 => self.kind == AlgebraKind::Dn1,
            1 => matches!(self.kind, AlgebraKind::DnS | AlgebraKind::Bm),
            2 => matches!(self.kind, AlgebraKind::Dn1 | AlgebraKind::Bm),
            _ => self.homogenized,
        }
    }

    /// Default order: grevlex on the whole layout, h last.
    pub fn grevlex(&self) -> MonomialOrder {
        MonomialOrder::grevlex(self.len())
    }

    /// Block order eliminating the given layout variables.
    pub fn elimination(&self, vars: &[usize]) -> MonomialOrder {
        let mut block = vec![0i64; self.len()];
        for &v in vars {
            block[v] = 1;
        }
        MonomialOrder::from_rows(vec![block, vec![1; self.len()]])
    }

    pub fn var_names(&self, xs: &[String]) -> Vec<String> {
        let mut names: Vec<String> = xs.to_vec();
        names.extend(xs.iter().map(|x| format!("d{x}")));
        names.extend(["t", "s", "dt", "h"].iter().map(|s| s.to_string()));
        names
    }
}

fn small(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Normally ordered product of two monomials.
pub fn mono_mul(alg: &Algebra, a: &[u32], b: &[u32]) -> Vec<(Vec<u32>, Q)> {
    let base: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    let mut cur: Vec<(Vec<u32>, Q)> = vec![(base, Q::one())];
    let commute = |cur: &mut Vec<(Vec<u32>, Q)>, xv: usize, dv: usize| {
        let p = a[dv];
        let q = b[xv];
        if p == 0 || q == 0 {
            return;
        }
        let mut next = Vec::with_capacity(cur.len() * (p.min(q) as usize + 1));
        for (e, c) in cur.iter() {
            for k in 0..=p.min(q) {
                let w = binomial(p, k) * binomial(q, k) * factorial(k);
                let mut e2 = e.clone();
                e2[xv] -= k;
                e2[dv] -= k;
                if alg.homogenized {
                    e2[alg.h()] += 2 * k;
                }
                next.push((e2, c * Q::from_integer(w)));
            }
        }
        *cur = next;
    };
    for i in 0..alg.n {
        commute(&mut cur, alg.x(i), alg.d(i));
    }
    match alg.kind {
        AlgebraKind::Dn1 => commute(&mut cur, alg.t(), alg.dt()),
        AlgebraKind::Bm => {
            // ∂_t^d s^e = (s - d)^e ∂_t^d.
            let d = a[alg.dt()];
            let e = b[alg.s()];
            if d > 0 && e > 0 {
                let mut next = Vec::new();
                for (ex, c) in cur.iter() {
                    for j in 0..=e {
                        let w = Q::from_integer(binomial(e, j)) * num_traits::pow(small(-(d as i64)), (e - j) as usize);
                        let mut e2 = ex.clone();
                        e2[alg.s()] -= e - j;
                        if alg.homogenized {
                            e2[alg.h()] += e - j;
                        }
                        next.push((e2, c * w));
                    }
                }
                cur = next;
            }
        }
        _ => {}
    }
    cur
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElem {
    alg: Algebra,
    terms: BTreeMap<Monomial, Q>,
}

impl WeylElem {
    pub fn zero(alg: Algebra) -> Self {
        WeylElem {
            alg,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(alg: Algebra, c: Q) -> Self {
        let mut e = WeylElem::zero(alg);
        e.add_term(Monomial::one(alg.len()), c);
        e
    }

    pub fn one(alg: Algebra) -> Self {
        WeylElem::constant(alg, Q::one())
    }

    /// The generator at a layout position.
    pub fn var(alg: Algebra, v: usize) -> Result<Self> {
        if !alg.has(v) {
            return Err(Error::AlgebraMismatch(format!(
                "variable {v} not in {:?}",
                alg.kind
            )));
        }
        Ok(WeylElem::monomial(alg, Monomial::var(alg.len(), v), Q::one()))
    }

    pub fn x(alg: Algebra, i: usize) -> Self {
        WeylElem::var(alg, alg.x(i)).unwrap()
    }

    pub fn dx(alg: Algebra, i: usize) -> Self {
        WeylElem::var(alg, alg.d(i)).unwrap()
    }

    /// `s`: a variable in D_n[s] and D_n⟨∂_t,s⟩, and `-∂_t t` in D_{n+1}.
    pub fn s(alg: Algebra) -> Result<Self> {
        match alg.kind {
            AlgebraKind::DnS | AlgebraKind::Bm => WeylElem::var(alg, alg.s()),
            AlgebraKind::Dn1 => {
                let t = WeylElem::var(alg, alg.t())?;
                let dt = WeylElem::var(alg, alg.dt())?;
                Ok(-&dt.mul(&t)?)
            }
            AlgebraKind::Dn => Err(Error::AlgebraMismatch("D_n has no s".into())),
        }
    }

    pub fn monomial(alg: Algebra, m: Monomial, c: Q) -> Self {
        let mut e = WeylElem::zero(alg);
        e.add_term(m, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(alg: Algebra, it: I) -> Self {
        let mut e = WeylElem::zero(alg);
        for (m, c) in it {
            e.add_term(m, c);
        }
        e
    }

    /// Embed a polynomial in the x-variables.
    pub fn from_poly(alg: Algebra, p: &Poly) -> Self {
        assert_eq!(p.nvars(), alg.n, "polynomial ring does not match algebra");
        WeylElem::from_terms(
            alg,
            p.terms().map(|(m, c)| {
                let mut e = vec![0u32; alg.len()];
                e[..alg.n].copy_from_slice(&m.0);
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Embed a polynomial in `(x, s)` (s as the last variable) into D_n[s] or D_n⟨∂_t,s⟩.
    pub fn from_poly_s(alg: Algebra, p: &Poly) -> Self {
        assert_eq!(p.nvars(), alg.n + 1);
        WeylElem::from_terms(
            alg,
            p.terms().map(|(m, c)| {
                let mut e = vec![0u32; alg.len()];
                e[..alg.n].copy_from_slice(&m.0[..alg.n]);
                e[alg.s()] = m.0[alg.n];
                (Monomial(e), c.clone())
            }),
        )
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return WeylElem::zero(self.alg);
        }
        WeylElem {
            alg: self.alg,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn check(&self, o: &WeylElem) -> Result<()> {
        if self.alg != o.alg {
            return Err(Error::AlgebraMismatch(format!(
                "{:?} vs {:?}",
                self.alg, o.alg
            )));
        }
        Ok(())
    }

    pub fn mul(&self, o: &WeylElem) -> Result<WeylElem> {
        self.check(o)?;
        let mut out = WeylElem::zero(self.alg);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let cab = ca * cb;
                for (e, c) in mono_mul(&self.alg, &ma.0, &mb.0) {
                    out.add_term(Monomial(e), c * &cab);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<WeylElem> {
        let mut acc = WeylElem::one(self.alg);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `[self, o] = self·o − o·self`.
    pub fn commutator(&self, o: &WeylElem) -> Result<WeylElem> {
        Ok(&self.mul(o)? - &o.mul(self)?)
    }

    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &Q)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0 .0, &b.0 .0))
    }

    /// Sum of all weights `w·e` over the layout, maximized over terms.
    pub fn max_weight(&self, w: &[i64]) -> Option<i64> {
        self.terms.keys().map(|m| weight(w, m)).max()
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m[v]).max().unwrap_or(0)
    }

    /// Multiply each term by the power of h making it homogeneous of the top degree.
    pub fn homogenize(&self) -> WeylElem {
        let alg = self.alg.homogenized();
        let top = self.total_degree().max(0) as u32;
        WeylElem::from_terms(
            alg,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.0.clone();
                let h = alg.h();
                e[h] += top - m.degree();
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Set h = 1.
    pub fn dehomogenize(&self) -> WeylElem {
        let alg = self.alg.dehomogenized();
        WeylElem::from_terms(
            alg,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.0.clone();
                e[alg.h()] = 0;
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Reinterpret in another algebra with the same layout.
    pub fn with_algebra(&self, alg: Algebra) -> Result<WeylElem> {
        if alg.n != self.alg.n {
            return Err(Error::AlgebraMismatch("different n".into()));
        }
        for m in self.terms.keys() {
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 && !alg.has(v) {
                    return Err(Error::AlgebraMismatch(format!(
                        "variable {v} not in {:?}",
                        alg.kind
                    )));
                }
            }
        }
        Ok(WeylElem {
            alg,
            terms: self.terms.clone(),
        })
    }

    /// Substitute `s → s + a` (s central or Bm-ordered on the left of ∂_t).
    pub fn shift_s(&self, a: &Q) -> WeylElem {
        let sv = self.alg.s();
        let mut out = WeylElem::zero(self.alg);
        for (m, c) in &self.terms {
            let e = m[sv];
            for j in 0..=e {
                let w = Q::from_integer(binomial(e, j)) * num_traits::pow(a.clone(), (e - j) as usize);
                let mut ex = m.0.clone();
                ex[sv] = j;
                out.add_term(Monomial(ex), c * &w);
            }
        }
        out
    }

    pub fn render(&self, xs: &[String]) -> String {
        let names = self.alg.var_names(xs);
        let order = self.alg.grevlex();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp(&b.0 .0, &a.0 .0));
        let r: Vec<(String, Q)> = terms
            .into_iter()
            .map(|(m, c)| (render_monomial(&m.0, &names), c.clone()))
            .collect();
        render_terms(&r)
    }
}

pub(crate) fn weight(w: &[i64], m: &Monomial) -> i64 {
    w.iter().zip(&m.0).map(|(a, &b)| a * b as i64).sum()
}

/// The V-weight along t: t ↦ −1, ∂_t ↦ +1.
pub fn v_weight(alg: &Algebra) -> Vec<i64> {
    let mut w = vec![0i64; alg.len()];
    w[alg.t()] = -1;
    w[alg.dt()] = 1;
    w
}

impl<'a> std::ops::Add<&'a WeylElem> for &'a WeylElem {
    type Output = WeylElem;
    fn add(self, o: &WeylElem) -> WeylElem {
        assert_eq!(self.alg, o.alg, "algebra mismatch");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a WeylElem> for &'a WeylElem {
    type Output = WeylElem;
    fn sub(self, o: &WeylElem) -> WeylElem {
        assert_eq!(self.alg, o.alg, "algebra mismatch");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &WeylElem {
    type Output = WeylElem;
    fn neg(self) -> WeylElem {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs = crate::polyalg::parse::default_names(self.alg.n);
        write!(f, "{}", self.render(&xs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn d1() -> Algebra {
        Algebra::new(AlgebraKind::Dn1, 1)
    }

    #[test]
    fn canonical_commutation() {
        let a = Algebra::new(AlgebraKind::Dn, 1);
        let p = WeylElem::dx(a, 0).mul(&WeylElem::x(a, 0)).unwrap();
        assert_eq!(p.render(&["x".into()]), "x*dx + 1");
    }

    #[test]
    fn dt_t_squared() {
        let a = d1();
        let t = WeylElem::var(a, a.t()).unwrap();
        let dt = WeylElem::var(a, a.dt()).unwrap();
        let p = dt.mul(&t.pow(2).unwrap()).unwrap();
        assert_eq!(p.render(&["x".into()]), "t^2*dt + 2*t");
    }

    #[test]
    fn s_squared_in_graph_algebra() {
        let a = d1();
        let s = WeylElem::s(a).unwrap();
        let s2 = s.mul(&s).unwrap();
        assert_eq!(s2.render(&["x".into()]), "t^2*dt^2 + 3*t*dt + 1");
    }

    #[test]
    fn bm_relation() {
        let a = Algebra::new(AlgebraKind::Bm, 1);
        let s = WeylElem::s(a).unwrap();
        let dt = WeylElem::var(a, a.dt()).unwrap();
        // s·∂_t = ∂_t·(s + 1) and ∂_t·s = (s − 1)·∂_t.
        let lhs = dt.mul(&s).unwrap();
        let rhs = (&s - &WeylElem::one(a)).mul(&dt).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(s.mul(&dt).unwrap().render(&["x".into()]), "s*dt");
        assert_eq!(s.shift_s(&q(2)).render(&["x".into()]), "s + 2");
    }

    #[test]
    fn homogenized_commutator() {
        let a = Algebra::new(AlgebraKind::Dn, 1).homogenized();
        let c = WeylElem::dx(a, 0).commutator(&WeylElem::x(a, 0)).unwrap();
        assert_eq!(c.render(&["x".into()]), "h^2");
        assert!(WeylElem::var(Algebra::new(AlgebraKind::Dn, 1), 2).is_err());
    }
}
