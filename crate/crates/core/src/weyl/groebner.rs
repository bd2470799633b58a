//! Left Gröbner bases in the Weyl-type algebras.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::{mono_mul, weight, Algebra, AlgebraKind, WeylElem};
use crate::error::{Error, Result};
use crate::polyalg::{Monomial, MonomialOrder};
use crate::rational::Q;

#[derive(Clone, Copy, Debug)]
pub struct WeylGbOptions {
    pub pair_budget: usize,
}

impl Default for WeylGbOptions {
    fn default() -> Self {
        WeylGbOptions { pair_budget: 50_000 }
    }
}

#[derive(Clone, Debug)]
struct Ws {
    terms: Vec<(Monomial, Q)>,
}

impl Ws {
    fn from_elem(e: &WeylElem, order: &MonomialOrder) -> Ws {
        let mut terms: Vec<(Monomial, Q)> = e.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0 .0, &a.0 .0));
        Ws { terms }
    }

    fn to_elem(&self, alg: Algebra) -> WeylElem {
        WeylElem::from_terms(alg, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn monic(&mut self) -> Q {
        let inv = self.terms[0].1.recip();
        if !inv.is_one() {
            for t in &mut self.terms {
                t.1 *= &inv;
            }
        }
        inv
    }
}

/// Whether left multiplication by `m` is a plain exponent shift.
fn acts_commutatively(alg: &Algebra, m: &[u32]) -> bool {
    let mut left = (0..alg.n).map(|i| alg.d(i)).collect::<Vec<_>>();
    match alg.kind {
        AlgebraKind::Dn1 | AlgebraKind::Bm => left.push(alg.dt()),
        _ => {}
    }
    left.into_iter().all(|v| m[v] == 0)
}

/// `c · m · g`, sorted under `order`.
fn left_mul(alg: &Algebra, order: &MonomialOrder, m: &[u32], c: &Q, g: &Ws) -> Ws {
    if acts_commutatively(alg, m) {
        let terms = g
            .terms
            .iter()
            .map(|(gm, gc)| (Monomial(gm.0.iter().zip(m).map(|(a, b)| a + b).collect()), gc * c))
            .collect();
        return Ws { terms };
    }
    let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
    for (gm, gc) in &g.terms {
        let cc = gc * c;
        for (e, w) in mono_mul(alg, m, &gm.0) {
            let ent = acc.entry(Monomial(e)).or_insert_with(Q::zero);
            *ent += &w * &cc;
        }
    }
    let mut terms: Vec<(Monomial, Q)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_by(|a, b| order.cmp(&b.0 .0, &a.0 .0));
    Ws { terms }
}

fn sub(a: &Ws, b: &Ws, order: &MonomialOrder) -> Ws {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let ord = if i == a.terms.len() {
            Ordering::Less
        } else if j == b.terms.len() {
            Ordering::Greater
        } else {
            order.cmp(&a.terms[i].0 .0, &b.terms[j].0 .0)
        };
        match ord {
            Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b.terms[j].0.clone(), -b.terms[j].1.clone()));
                j += 1;
            }
            Ordering::Equal => {
                let v = &a.terms[i].1 - &b.terms[j].1;
                if !v.is_zero() {
                    out.push((a.terms[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    Ws { terms: out }
}

fn mono_elem(alg: Algebra, m: &Monomial, c: &Q) -> WeylElem {
    WeylElem::monomial(alg, m.clone(), c.clone())
}

/// A left Gröbner basis, optionally recording for each element a cofactor
/// `c` with `g ≡ c·f` modulo the untracked generators.
#[derive(Clone, Debug)]
pub struct LeftGb {
    alg: Algebra,
    order: MonomialOrder,
    basis: Vec<Ws>,
    cofactors: Option<Vec<WeylElem>>,
}

struct Builder<'a> {
    alg: Algebra,
    order: &'a MonomialOrder,
    basis: Vec<Ws>,
    cofs: Option<Vec<WeylElem>>,
}

impl<'a> Builder<'a> {
    fn reduce(&self, p: &Ws, cof: Option<WeylElem>, full: bool) -> (Ws, Option<WeylElem>) {
        reduce_with(&self.alg, self.order, &self.basis, self.cofs.as_deref(), p, cof, full)
    }
}

#[allow(clippy::too_many_arguments)]
fn reduce_with(
    alg: &Algebra,
    order: &MonomialOrder,
    basis: &[Ws],
    cofs: Option<&[WeylElem]>,
    p: &Ws,
    mut cof: Option<WeylElem>,
    full: bool,
) -> (Ws, Option<WeylElem>) {
    let mut rem = Vec::new();
    let mut cur = p.clone();
    while !cur.is_zero() {
        let lm = cur.lm().clone();
        let lc = cur.terms[0].1.clone();
        match basis.iter().position(|g| g.lm().divides(&lm)) {
            Some(k) => {
                let m = lm.div(basis[k].lm());
                let prod = left_mul(alg, order, &m.0, &lc, &basis[k]);
                cur = sub(&cur, &prod, order);
                if let (Some(c), Some(cs)) = (cof.as_mut(), cofs) {
                    let step = mono_elem(*alg, &m, &lc).mul(&cs[k]).expect("same algebra");
                    *c = &*c - &step;
                }
            }
            None => {
                if !full {
                    break;
                }
                rem.push(cur.terms.remove(0));
            }
        }
    }
    rem.extend(cur.terms);
    (Ws { terms: rem }, cof)
}

impl LeftGb {
    /// Gröbner basis of the left ideal generated by `gens` under a well-order.
    pub fn compute(gens: &[WeylElem], order: &MonomialOrder, opts: WeylGbOptions) -> Result<LeftGb> {
        Self::build(gens, None, order, opts)
    }

    /// As [`LeftGb::compute`] for `gens + (f)`, tracking cofactors of `f`.
    pub fn compute_tracked(
        gens: &[WeylElem],
        f: &WeylElem,
        order: &MonomialOrder,
        opts: WeylGbOptions,
    ) -> Result<LeftGb> {
        Self::build(gens, Some(f), order, opts)
    }

    fn build(
        gens: &[WeylElem],
        tracked: Option<&WeylElem>,
        order: &MonomialOrder,
        opts: WeylGbOptions,
    ) -> Result<LeftGb> {
        let alg = gens
            .first()
            .or(tracked)
            .map(|g| g.algebra())
            .ok_or_else(|| Error::Invalid("empty generator list".into()))?;
        for g in gens.iter().chain(tracked) {
            if g.algebra() != alg {
                return Err(Error::AlgebraMismatch("generators in different algebras".into()));
            }
        }
        let track = tracked.is_some();
        let mut input: Vec<(Ws, WeylElem)> = Vec::new();
        for g in gens.iter().filter(|g| !g.is_zero()) {
            input.push((Ws::from_elem(g, order), WeylElem::zero(alg)));
        }
        if let Some(f) = tracked {
            if !f.is_zero() {
                input.push((Ws::from_elem(f, order), WeylElem::one(alg)));
            }
        }
        input.sort_by(|a, b| order.cmp(&a.0.lm().0, &b.0.lm().0));

        let mut bld = Builder {
            alg,
            order,
            basis: Vec::new(),
            cofs: if track { Some(Vec::new()) } else { None },
        };
        let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();

        fn push(bld: &mut Builder, pending: &mut BTreeSet<(usize, usize)>, mut g: Ws, cof: Option<WeylElem>) {
            let inv = g.monic();
            let idx = bld.basis.len();
            bld.basis.push(g);
            if let (Some(cs), Some(c)) = (bld.cofs.as_mut(), cof) {
                cs.push(c.scale(&inv));
            }
            for i in 0..idx {
                pending.insert((i, idx));
            }
        }

        for (g, c) in input {
            let (r, c) = bld.reduce(&g, track.then_some(c), true);
            if !r.is_zero() {
                push(&mut bld, &mut pending, r, c);
            }
        }

        let mut processed = 0usize;
        while !pending.is_empty() {
            let &(i, j) = pending
                .iter()
                .min_by(|&&(a, b), &&(c, d)| {
                    let l1 = bld.basis[a].lm().lcm(bld.basis[b].lm());
                    let l2 = bld.basis[c].lm().lcm(bld.basis[d].lm());
                    l1.degree()
                        .cmp(&l2.degree())
                        .then_with(|| order.cmp(&l1.0, &l2.0))
                        .then_with(|| (a, b).cmp(&(c, d)))
                })
                .unwrap();
            pending.remove(&(i, j));
            let (lmi, lmj) = (bld.basis[i].lm().clone(), bld.basis[j].lm().clone());
            let l = lmi.lcm(&lmj);
            let chain = (0..bld.basis.len()).any(|k| {
                k != i
                    && k != j
                    && bld.basis[k].lm().divides(&l)
                    && !pending.contains(&(i.min(k), i.max(k)))
                    && !pending.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            processed += 1;
            if processed > opts.pair_budget {
                return Err(Error::Budget(format!(
                    "left Gröbner basis exceeded {} pairs",
                    opts.pair_budget
                )));
            }
            let mi = l.div(&lmi);
            let mj = l.div(&lmj);
            let a = left_mul(&alg, order, &mi.0, &Q::one(), &bld.basis[i]);
            let b = left_mul(&alg, order, &mj.0, &Q::one(), &bld.basis[j]);
            let s = sub(&a, &b, order);
            let cof = bld.cofs.as_ref().map(|cs| {
                let ca = mono_elem(alg, &mi, &Q::one()).mul(&cs[i]).unwrap();
                let cb = mono_elem(alg, &mj, &Q::one()).mul(&cs[j]).unwrap();
                &ca - &cb
            });
            let (r, c) = bld.reduce(&s, cof, true);
            if !r.is_zero() {
                push(&mut bld, &mut pending, r, c);
            }
        }

        // Minimalize and interreduce.
        let mut idx: Vec<usize> = (0..bld.basis.len()).collect();
        idx.sort_by(|&a, &b| order.cmp(&bld.basis[a].lm().0, &bld.basis[b].lm().0));
        let mut keep: Vec<usize> = Vec::new();
        for i in idx {
            if keep.iter().any(|&k| bld.basis[k].lm().divides(bld.basis[i].lm())) {
                continue;
            }
            keep.push(i);
        }
        let min_basis: Vec<Ws> = keep.iter().map(|&i| bld.basis[i].clone()).collect();
        let min_cofs: Option<Vec<WeylElem>> = bld
            .cofs
            .as_ref()
            .map(|cs| keep.iter().map(|&i| cs[i].clone()).collect());
        let mut basis = Vec::with_capacity(min_basis.len());
        let mut cofs = min_cofs.as_ref().map(|_| Vec::new());
        for i in 0..min_basis.len() {
            let others: Vec<Ws> = min_basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let other_cofs: Option<Vec<WeylElem>> = min_cofs.as_ref().map(|cs| {
                cs.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, c)| c.clone())
                    .collect()
            });
            let head = Ws {
                terms: vec![min_basis[i].terms[0].clone()],
            };
            let tail = Ws {
                terms: min_basis[i].terms[1..].to_vec(),
            };
            let (rt, c) = reduce_with(
                &alg,
                order,
                &others,
                other_cofs.as_deref(),
                &tail,
                min_cofs.as_ref().map(|cs| cs[i].clone()),
                true,
            );
            let mut terms = head.terms;
            terms.extend(rt.terms);
            basis.push(Ws { terms });
            if let (Some(out), Some(c)) = (cofs.as_mut(), c) {
                out.push(c);
            }
        }
        Ok(LeftGb {
            alg,
            order: order.clone(),
            basis,
            cofactors: cofs,
        })
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn elements(&self) -> Vec<WeylElem> {
        self.basis.iter().map(|g| g.to_elem(self.alg)).collect()
    }

    pub fn cofactors(&self) -> Option<&[WeylElem]> {
        self.cofactors.as_deref()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.lm().clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.lm().is_one())
    }

    fn check(&self, p: &WeylElem) -> Result<()> {
        if p.algebra() != self.alg {
            return Err(Error::AlgebraMismatch(format!(
                "{:?} vs {:?}",
                p.algebra(),
                self.alg
            )));
        }
        Ok(())
    }

    /// Normal form (full reduction).
    pub fn reduce(&self, p: &WeylElem) -> Result<WeylElem> {
        self.check(p)?;
        let ws = Ws::from_elem(p, &self.order);
        let (r, _) = reduce_with(&self.alg, &self.order, &self.basis, None, &ws, None, true);
        Ok(r.to_elem(self.alg))
    }

    /// Normal form `r` and cofactor `c` with `p − r ≡ c·f` modulo the untracked generators.
    pub fn reduce_tracked(&self, p: &WeylElem) -> Result<(WeylElem, WeylElem)> {
        self.check(p)?;
        let cs = self
            .cofactors
            .as_deref()
            .ok_or_else(|| Error::Invalid("basis has no cofactors".into()))?;
        let ws = Ws::from_elem(p, &self.order);
        let (r, c) = reduce_with(
            &self.alg,
            &self.order,
            &self.basis,
            Some(cs),
            &ws,
            Some(WeylElem::zero(self.alg)),
            true,
        );
        // The running cofactor tracks r − p; negate for p − r.
        Ok((r.to_elem(self.alg), -&c.unwrap()))
    }

    pub fn contains(&self, p: &WeylElem) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }
}

/// Homogenize, compute under (total degree, `weight`, grevlex), dehomogenize.
///
/// The initial forms of the output with respect to `weight` generate the
/// initial ideal of the input.
pub fn weighted_groebner(gens: &[WeylElem], weight_vec: &[i64], opts: WeylGbOptions) -> Result<Vec<WeylElem>> {
    let alg = gens
        .first()
        .map(|g| g.algebra())
        .ok_or_else(|| Error::Invalid("empty generator list".into()))?;
    let len = alg.len();
    assert_eq!(weight_vec.len(), len);
    let order = MonomialOrder::from_rows(vec![vec![1; len], weight_vec.to_vec(), vec![1; len]]);
    let hom: Vec<WeylElem> = gens.iter().map(|g| g.homogenize()).collect();
    let gb = LeftGb::compute(&hom, &order, opts)?;
    let mut out: Vec<WeylElem> = gb.elements().iter().map(|g| g.dehomogenize()).collect();
    out.retain(|g| !g.is_zero());
    Ok(out)
}

/// Terms of maximal `weight`.
pub fn initial_form(p: &WeylElem, weight_vec: &[i64]) -> WeylElem {
    match p.max_weight(weight_vec) {
        None => p.clone(),
        Some(top) => WeylElem::from_terms(
            p.algebra(),
            p.terms()
                .filter(|(m, _)| weight(weight_vec, m) == top)
                .map(|(m, c)| (m.clone(), c.clone())),
        ),
    }
}
