//! Buchberger's algorithm for commutative polynomials over ℚ.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::order::MonomialOrder;
use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::rational::Q;

/// Terms sorted in descending order under a fixed monomial order.
#[derive(Clone, Debug)]
pub(crate) struct Sorted {
    pub terms: Vec<(Monomial, Q)>,
}

impl Sorted {
    pub fn from_poly(p: &Poly, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Q)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0 .0, &a.0 .0));
        Sorted { terms }
    }

    pub fn to_poly(&self, nvars: usize) -> Poly {
        Poly::from_terms(nvars, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Q {
        &self.terms[0].1
    }

    pub fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let inv = self.terms[0].1.recip();
        if inv.is_one() {
            return;
        }
        for t in &mut self.terms {
            t.1 *= &inv;
        }
    }

    /// `self - c * m * g`, merging two sorted term lists.
    pub fn sub_mul(&self, c: &Q, m: &Monomial, g: &Sorted, order: &MonomialOrder) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (bm, bc) = b.next().unwrap();
                    out.push((bm, -bc));
                }
                (Some(x), Some(y)) => match order.cmp(&x.0 .0, &y.0 .0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (bm, bc) = b.next().unwrap();
                        out.push((bm, -bc));
                    }
                    Ordering::Equal => {
                        let (am, ac) = a.next().unwrap();
                        let (_, bc) = b.next().unwrap();
                        let v = ac - bc;
                        if !v.is_zero() {
                            out.push((am.clone(), v));
                        }
                    }
                },
            }
        }
        Sorted { terms: out }
    }
}

/// Full reduction of `p` modulo `basis` (all monic).
pub(crate) fn reduce_sorted(p: &Sorted, basis: &[Sorted], order: &MonomialOrder) -> Sorted {
    let mut rem: Vec<(Monomial, Q)> = Vec::new();
    let mut cur = p.clone();
    while !cur.is_zero() {
        let (lm, lc) = (cur.lm().clone(), cur.lc().clone());
        match basis.iter().find(|g| g.lm().divides(&lm)) {
            Some(g) => {
                let m = lm.div(g.lm());
                cur = cur.sub_mul(&lc, &m, g, order);
            }
            None => {
                rem.push(cur.terms.remove(0));
            }
        }
    }
    Sorted { terms: rem }
}

/// A reduced Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    sorted: Vec<Sorted>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Basis polynomials, sorted by ascending leading monomial.
    pub fn polys(&self) -> Vec<Poly> {
        self.sorted.iter().map(|s| s.to_poly(self.nvars)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|s| s.lm().clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.sorted.iter().any(|s| s.lm().is_one())
    }

    pub fn reduce(&self, p: &Poly) -> Result<Poly> {
        if p.nvars() != self.nvars {
            return Err(Error::RingMismatch(format!(
                "polynomial has {} variables, basis has {}",
                p.nvars(),
                self.nvars
            )));
        }
        let s = Sorted::from_poly(p, &self.order);
        Ok(reduce_sorted(&s, &self.sorted, &self.order).to_poly(self.nvars))
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GbOptions {
    /// Maximum number of critical pairs to reduce.
    pub pair_budget: usize,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            pair_budget: 200_000,
        }
    }
}

/// Buchberger with the coprime and chain criteria; returns the reduced basis.
pub fn groebner(gens: &[Poly], order: &MonomialOrder, opts: GbOptions) -> Result<GroebnerBasis> {
    let nvars = gens.first().map(|g| g.nvars()).unwrap_or(0);
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::RingMismatch("generators in different rings".into()));
        }
    }
    let mut basis: Vec<Sorted> = Vec::new();
    let mut input: Vec<Sorted> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut s = Sorted::from_poly(g, order);
            s.make_monic();
            s
        })
        .collect();
    // Deterministic processing independent of generator order.
    input.sort_by(|a, b| {
        order
            .cmp(&a.lm().0, &b.lm().0)
            .then_with(|| cmp_sorted(a, b, order))
    });
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut processed = 0usize;

    let add = |basis: &mut Vec<Sorted>, pending: &mut BTreeSet<(usize, usize)>, g: Sorted| {
        let idx = basis.len();
        basis.push(g);
        for i in 0..idx {
            pending.insert((i, idx));
        }
    };

    for g in input {
        let r = reduce_sorted(&g, &basis, order);
        if !r.is_zero() {
            let mut r = r;
            r.make_monic();
            add(&mut basis, &mut pending, r);
        }
    }

    while !pending.is_empty() {
        // Normal strategy: smallest lcm degree, then smallest lcm under the order.
        let &(i, j) = pending
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let l1 = basis[a].lm().lcm(basis[b].lm());
                let l2 = basis[c].lm().lcm(basis[d].lm());
                l1.degree()
                    .cmp(&l2.degree())
                    .then_with(|| order.cmp(&l1.0, &l2.0))
                    .then_with(|| (a, b).cmp(&(c, d)))
            })
            .unwrap();
        pending.remove(&(i, j));
        let (lmi, lmj) = (basis[i].lm().clone(), basis[j].lm().clone());
        if lmi.coprime(&lmj) {
            continue;
        }
        let l = lmi.lcm(&lmj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        processed += 1;
        if processed > opts.pair_budget {
            return Err(Error::Budget(format!(
                "commutative Buchberger exceeded {} pairs",
                opts.pair_budget
            )));
        }
        let mi = l.div(&lmi);
        let mj = l.div(&lmj);
        let zero = Sorted { terms: vec![] };
        let s = zero
            .sub_mul(&-Q::one(), &mi, &basis[i], order)
            .sub_mul(&Q::one(), &mj, &basis[j], order);
        let r = reduce_sorted(&s, &basis, order);
        if !r.is_zero() {
            let mut r = r;
            r.make_monic();
            add(&mut basis, &mut pending, r);
        }
    }

    Ok(GroebnerBasis {
        nvars,
        order: order.clone(),
        sorted: interreduce(basis, order),
    })
}

fn cmp_sorted(a: &Sorted, b: &Sorted, order: &MonomialOrder) -> Ordering {
    for (x, y) in a.terms.iter().zip(&b.terms) {
        match order.cmp(&x.0 .0, &y.0 .0) {
            Ordering::Equal => match x.1.cmp(&y.1) {
                Ordering::Equal => {}
                o => return o,
            },
            o => return o,
        }
    }
    a.terms.len().cmp(&b.terms.len())
}

/// Minimalize and fully reduce; output sorted by ascending leading monomial.
pub(crate) fn interreduce(basis: Vec<Sorted>, order: &MonomialOrder) -> Vec<Sorted> {
    let mut minimal: Vec<Sorted> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| order.cmp(&a.lm().0, &b.lm().0));
    for g in sorted {
        if minimal.iter().any(|h| h.lm().divides(g.lm())) {
            continue;
        }
        minimal.push(g);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let head = Sorted {
            terms: vec![minimal[i].terms[0].clone()],
        };
        let tail = Sorted {
            terms: minimal[i].terms[1..].to_vec(),
        };
        let rt = reduce_sorted(&tail, &others, order);
        let mut terms = head.terms;
        terms.extend(rt.terms);
        let mut s = Sorted { terms };
        s.make_monic();
        out.push(s);
    }
    out
}

/// Normal form of `p` modulo a Gröbner basis.
pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Result<Poly> {
    gb.reduce(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::order::TermOrder;
    use crate::polyalg::parse::parse_poly;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &vars()).unwrap()
    }

    #[test]
    fn already_a_basis() {
        let gb = groebner(&[p("x^2"), p("x*y")], &MonomialOrder::grevlex(2), GbOptions::default()).unwrap();
        assert_eq!(gb.polys(), vec![p("x*y"), p("x^2")]);
    }

    #[test]
    fn lex_linear() {
        let gb = groebner(
            &[p("x - y"), p("y^2")],
            &TermOrder::Lex.matrix(2),
            GbOptions::default(),
        )
        .unwrap();
        assert_eq!(gb.polys(), vec![p("y^2"), p("x - y")]);
    }

    #[test]
    fn membership() {
        let gb = groebner(&[p("x^3"), p("x^2*y")], &MonomialOrder::grevlex(2), GbOptions::default()).unwrap();
        assert!(gb.reduce(&p("x^3")).unwrap().is_zero());
        let gb2 = groebner(&[p("x"), p("y")], &MonomialOrder::grevlex(2), GbOptions::default()).unwrap();
        assert_eq!(gb2.reduce(&p("1")).unwrap(), p("1"));
    }

    #[test]
    fn limit_ideal_excludes_y4() {
        let gb = groebner(
            &[p("x^3"), p("x^2*y^2"), p("x*y^3"), p("y^5"), p("x^2*y")],
            &MonomialOrder::grevlex(2),
            GbOptions::default(),
        )
        .unwrap();
        assert_eq!(gb.reduce(&p("y^4")).unwrap(), p("y^4"));
    }

    #[test]
    fn budget_aborts() {
        let r = groebner(
            &[p("x^3 - y^2"), p("x^2*y - 1")],
            &MonomialOrder::grevlex(2),
            GbOptions { pair_budget: 0 },
        );
        assert!(matches!(r, Err(Error::Budget(_))));
    }

    #[test]
    fn ring_mismatch() {
        let gb = groebner(&[p("x")], &MonomialOrder::grevlex(2), GbOptions::default()).unwrap();
        assert!(matches!(
            gb.reduce(&Poly::var(3, 0)),
            Err(Error::RingMismatch(_))
        ));
    }
}
