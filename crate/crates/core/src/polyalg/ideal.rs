//! Ideals of ℚ[x_1..x_n] with a cached grevlex Gröbner basis.

use std::sync::OnceLock;

use super::groebner::{groebner, GbOptions, GroebnerBasis};
use super::order::MonomialOrder;
use super::parse::render;
use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Poly>,
    opts: GbOptions,
    gb: OnceLock<GroebnerBasis>,
}

impl Ideal {
    pub fn new(nvars: usize, gens: Vec<Poly>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != nvars {
                return Err(Error::RingMismatch(format!(
                    "generator in {} variables, ideal in {}",
                    g.nvars(),
                    nvars
                )));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            nvars,
            gens,
            opts: GbOptions::default(),
            gb: OnceLock::new(),
        })
    }

    pub fn unit(nvars: usize) -> Self {
        Ideal::new(nvars, vec![Poly::one(nvars)]).unwrap()
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal::new(nvars, vec![]).unwrap()
    }

    pub fn with_options(mut self, opts: GbOptions) -> Self {
        self.opts = opts;
        self.gb = OnceLock::new();
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced grevlex basis, computed once.
    pub fn gb(&self) -> Result<&GroebnerBasis> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = groebner(&self.gens, &MonomialOrder::grevlex(self.nvars), self.opts)?;
        let g = if self.gens.is_empty() { empty_basis(self.nvars) } else { g };
        Ok(self.gb.get_or_init(|| g))
    }

    pub fn groebner(&self, order: &MonomialOrder) -> Result<GroebnerBasis> {
        if self.gens.is_empty() {
            return groebner_empty(self.nvars, order);
        }
        groebner(&self.gens, order, self.opts)
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        self.gb()?.reduce(p)
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in other.gens() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit())
    }

    /// Reduced grevlex generators, ascending by leading monomial.
    pub fn reduced_gens(&self) -> Result<Vec<Poly>> {
        Ok(self.gb()?.polys())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(self.nvars, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ideal::new(self.nvars, g)
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch(format!(
                "ideals in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    /// Intersection with the variables in `vars`, as an ideal of the same ring.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Ideal> {
        let n = self.nvars;
        let mut block = vec![0i64; n];
        for &v in vars {
            block[v] = 1;
        }
        let order = MonomialOrder::from_rows(vec![block, vec![1; n]]);
        let gb = self.groebner(&order)?;
        let kept = gb
            .polys()
            .into_iter()
            .filter(|p| vars.iter().all(|&v| p.degree_in(v) == 0))
            .collect();
        Ideal::new(n, kept)
    }

    fn extended(&self, extra: usize) -> Vec<usize> {
        (0..self.nvars).map(|i| i + extra).collect()
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let n = self.nvars;
        let map = self.extended(1);
        let t = Poly::var(n + 1, 0);
        let one_minus_t = &Poly::one(n + 1) - &t;
        let mut g = Vec::new();
        for a in &self.gens {
            g.push(&t * &a.embed(n + 1, &map));
        }
        for b in &other.gens {
            g.push(&one_minus_t * &b.embed(n + 1, &map));
        }
        let e = Ideal::new(n + 1, g)?.with_options(self.opts).eliminate(&[0])?;
        drop_first(&e, n)
    }

    /// `I : g`.
    pub fn colon(&self, g: &Poly) -> Result<Ideal> {
        if g.is_zero() {
            return Ok(Ideal::unit(self.nvars));
        }
        let gi = Ideal::new(self.nvars, vec![g.clone()])?;
        let inter = self.intersect(&gi)?;
        let mut q = Vec::new();
        for h in inter.reduced_gens()? {
            q.push(h.exact_div(g).ok_or_else(|| {
                Error::Invalid("intersection generator not divisible".into())
            })?);
        }
        Ideal::new(self.nvars, q)
    }

    pub fn colon_ideal(&self, other: &Ideal) -> Result<Ideal> {
        let mut acc = Ideal::unit(self.nvars);
        for g in other.gens() {
            acc = acc.intersect(&self.colon(g)?)?;
        }
        Ok(acc)
    }

    /// `I : g^∞`, via `(I + (1 - y g)) ∩ R`.
    pub fn saturate(&self, g: &Poly) -> Result<Ideal> {
        let n = self.nvars;
        let map = self.extended(1);
        let y = Poly::var(n + 1, 0);
        let mut gens: Vec<Poly> = self.gens.iter().map(|a| a.embed(n + 1, &map)).collect();
        gens.push(&Poly::one(n + 1) - &(&y * &g.embed(n + 1, &map)));
        let e = Ideal::new(n + 1, gens)?.with_options(self.opts).eliminate(&[0])?;
        drop_first(&e, n)
    }

    /// Substitute `value` for variable `var`; the ring keeps its arity.
    pub fn specialize(&self, var: usize, value: &crate::rational::Q) -> Result<Ideal> {
        Ideal::new(
            self.nvars,
            self.gens.iter().map(|g| g.eval_var(var, value)).collect(),
        )
    }

    /// Leading monomials of the reduced basis under `order`.
    pub fn leading_ideal(&self, order: &MonomialOrder) -> Result<Vec<Monomial>> {
        Ok(self.groebner(order)?.leading_monomials())
    }

    pub fn is_zero_dimensional(&self) -> Result<bool> {
        let lms = self.gb()?.leading_monomials();
        Ok(pure_powers(&lms, self.nvars).is_some())
    }

    /// `dim_ℚ R/I`, or `None` if `I` is not zero-dimensional.
    pub fn colength(&self) -> Result<Option<u64>> {
        let lms = self.gb()?.leading_monomials();
        Ok(standard_monomials(&lms, self.nvars).map(|v| v.len() as u64))
    }

    pub fn standard_monomials(&self) -> Result<Option<Vec<Monomial>>> {
        let lms = self.gb()?.leading_monomials();
        Ok(standard_monomials(&lms, self.nvars))
    }

    pub fn render(&self, names: &[String]) -> Result<Vec<String>> {
        Ok(self.reduced_gens()?.iter().map(|p| render(p, names)).collect())
    }
}

fn groebner_empty(nvars: usize, order: &MonomialOrder) -> Result<GroebnerBasis> {
    groebner(&[Poly::zero(nvars)], order, GbOptions::default())
}

fn empty_basis(nvars: usize) -> GroebnerBasis {
    groebner_empty(nvars, &MonomialOrder::grevlex(nvars)).unwrap()
}

fn drop_first(e: &Ideal, n: usize) -> Result<Ideal> {
    let mut out = Vec::new();
    for p in e.gens() {
        let terms = p.terms().map(|(m, c)| (Monomial(m.0[1..].to_vec()), c.clone()));
        out.push(Poly::from_terms(n, terms));
    }
    Ideal::new(n, out)
}

fn pure_powers(lms: &[Monomial], n: usize) -> Option<Vec<u32>> {
    let mut bounds = vec![None; n];
    for m in lms {
        let nz: Vec<usize> = (0..n).filter(|&i| m[i] > 0).collect();
        if nz.is_empty() {
            return Some(vec![0; n]);
        }
        if nz.len() == 1 {
            let i = nz[0];
            let e = m[i];
            bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
        }
    }
    bounds.into_iter().collect()
}

/// Monomials outside the monomial ideal generated by `lms`, if finitely many.
pub fn standard_monomials(lms: &[Monomial], n: usize) -> Option<Vec<Monomial>> {
    let bounds = pure_powers(lms, n)?;
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    if bounds.iter().any(|&b| b == 0) {
        return Some(out);
    }
    loop {
        let m = Monomial(cur.clone());
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == n {
                return Some(out);
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}
