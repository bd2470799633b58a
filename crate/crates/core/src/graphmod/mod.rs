//! The two sides of the Malgrange isomorphism for O_X(*D):
//! `O_X(*D)[s]f^s` and the graph pushforward `⊕_ℓ O_X(*D) ⊗ ∂_t^ℓ`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyalg::parse::{default_names, render};
use crate::polyalg::{Monomial, Poly};
use crate::rational::{fmt_rational, Q};
use crate::weyl::{Algebra, AlgebraKind, WeylElem};

/// The hypersurface `f` together with its partial derivatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyper {
    f: Poly,
    grad: Vec<Poly>,
    /// `f` embedded into ℚ[x, s].
    f_s: Poly,
}

impl Hyper {
    pub fn new(f: Poly) -> Result<Self> {
        if f.is_constant() {
            return Err(Error::ConstantF);
        }
        let n = f.nvars();
        let grad = (0..n).map(|i| f.derivative(i)).collect();
        let f_s = embed_s(&f);
        Ok(Hyper { f, grad, f_s })
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.f.nvars()
    }

    pub fn partial(&self, i: usize) -> &Poly {
        &self.grad[i]
    }

    pub fn f_pow(&self, e: u32) -> Poly {
        self.f.pow(e)
    }
}

/// `p(x)` viewed in ℚ[x, s].
pub fn embed_s(p: &Poly) -> Poly {
    let n = p.nvars();
    p.embed(n + 1, &(0..n).collect::<Vec<_>>())
}

/// Exact division by powers of `f` until the numerator is no longer divisible.
fn strip_f(num: &Poly, mut pow: u32, f: &Poly) -> (Poly, u32) {
    let mut num = num.clone();
    while pow > 0 && !num.is_zero() {
        match num.exact_div(f) {
            Some(q) => {
                num = q;
                pow -= 1;
            }
            None => break,
        }
    }
    if num.is_zero() {
        pow = 0;
    }
    (num, pow)
}

/// `num / f^pow`, with `num` not divisible by `f` unless `pow = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalizedPoly {
    num: Poly,
    pow: u32,
}

impl LocalizedPoly {
    pub fn new(num: Poly, pow: u32, hy: &Hyper) -> Self {
        let (num, pow) = strip_f(&num, pow, hy.f());
        LocalizedPoly { num, pow }
    }

    pub fn poly(p: Poly) -> Self {
        LocalizedPoly { num: p, pow: 0 }
    }

    pub fn zero(n: usize) -> Self {
        LocalizedPoly::poly(Poly::zero(n))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn f_power(&self) -> u32 {
        self.pow
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        (self.pow == 0).then_some(&self.num)
    }

    /// Numerator over `f^target` (requires `target ≥ pow`).
    pub fn numerator_at(&self, target: u32, hy: &Hyper) -> Poly {
        assert!(target >= self.pow);
        &self.num * &hy.f_pow(target - self.pow)
    }

    pub fn add(&self, o: &LocalizedPoly, hy: &Hyper) -> LocalizedPoly {
        let p = self.pow.max(o.pow);
        LocalizedPoly::new(&self.numerator_at(p, hy) + &o.numerator_at(p, hy), p, hy)
    }

    pub fn mul_poly(&self, g: &Poly, hy: &Hyper) -> LocalizedPoly {
        LocalizedPoly::new(&self.num * g, self.pow, hy)
    }

    pub fn scale(&self, c: &Q) -> LocalizedPoly {
        LocalizedPoly {
            num: self.num.scale(c),
            pow: if c.is_zero() { 0 } else { self.pow },
        }
    }

    /// `∂_i (p / f^N) = (f ∂_i p − N f_i p) / f^{N+1}`.
    pub fn derivative(&self, i: usize, hy: &Hyper) -> LocalizedPoly {
        if self.pow == 0 {
            return LocalizedPoly::poly(self.num.derivative(i));
        }
        let a = &hy.f * &self.num.derivative(i);
        let b = (&hy.grad[i] * &self.num).scale(&Q::from_integer(BigInt::from(self.pow)));
        LocalizedPoly::new(&a - &b, self.pow + 1, hy)
    }

    pub fn render(&self, names: &[String]) -> String {
        let p = render(&self.num, names);
        if self.pow == 0 {
            p
        } else if self.pow == 1 {
            format!("({p})/f")
        } else {
            format!("({p})/f^{}", self.pow)
        }
    }
}

/// `(u(x, s) / f^N) · f^s`, where `u` lives in ℚ[x, s] with `s` last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SFsElem {
    num: Poly,
    pow: u32,
}

impl SFsElem {
    pub fn new(num: Poly, pow: u32, hy: &Hyper) -> Self {
        assert_eq!(num.nvars(), hy.n() + 1, "SFs numerator lives in Q[x, s]");
        let (num, pow) = strip_f(&num, pow, &hy.f_s);
        SFsElem { num, pow }
    }

    pub fn zero(hy: &Hyper) -> Self {
        SFsElem {
            num: Poly::zero(hy.n() + 1),
            pow: 0,
        }
    }

    /// `f^s` itself.
    pub fn fs(hy: &Hyper) -> Self {
        SFsElem {
            num: Poly::one(hy.n() + 1),
            pow: 0,
        }
    }

    /// `f^{s+k}` for any integer `k`.
    pub fn fs_shift(hy: &Hyper, k: i64) -> Self {
        if k >= 0 {
            SFsElem::new(embed_s(&hy.f_pow(k as u32)), 0, hy)
        } else {
            SFsElem::new(Poly::one(hy.n() + 1), (-k) as u32, hy)
        }
    }

    /// From coefficients `j ↦ u_j` of `Σ u_j s^j f^s`.
    pub fn from_coeffs(coeffs: &BTreeMap<u32, LocalizedPoly>, hy: &Hyper) -> Self {
        let n = hy.n();
        let p = coeffs.values().map(|c| c.pow).max().unwrap_or(0);
        let mut num = Poly::zero(n + 1);
        for (&j, c) in coeffs {
            let u = embed_s(&c.numerator_at(p, hy));
            let sj = Poly::var(n + 1, n).pow(j);
            num = &num + &(&u * &sj);
        }
        SFsElem::new(num, p, hy)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn f_power(&self) -> u32 {
        self.pow
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Coefficients of the powers of `s`.
    pub fn coeffs(&self, hy: &Hyper) -> BTreeMap<u32, LocalizedPoly> {
        let n = hy.n();
        self.num
            .coefficients_in(n)
            .into_iter()
            .map(|(j, c)| (j, LocalizedPoly::new(c.truncate_vars(n).unwrap(), self.pow, hy)))
            .collect()
    }

    fn at(&self, p: u32, hy: &Hyper) -> Poly {
        &self.num * &embed_s(&hy.f_pow(p - self.pow))
    }

    pub fn add(&self, o: &SFsElem, hy: &Hyper) -> SFsElem {
        let p = self.pow.max(o.pow);
        SFsElem::new(&self.at(p, hy) + &o.at(p, hy), p, hy)
    }

    pub fn sub(&self, o: &SFsElem, hy: &Hyper) -> SFsElem {
        self.add(&o.scale(&-Q::one()), hy)
    }

    pub fn scale(&self, c: &Q) -> SFsElem {
        SFsElem {
            num: self.num.scale(c),
            pow: if c.is_zero() { 0 } else { self.pow },
        }
    }

    /// Multiply by a polynomial in ℚ[x, s].
    pub fn mul_xs(&self, g: &Poly, hy: &Hyper) -> SFsElem {
        SFsElem::new(&self.num * g, self.pow, hy)
    }

    fn s_poly(hy: &Hyper) -> Poly {
        Poly::var(hy.n() + 1, hy.n())
    }

    fn shift_s(&self, a: i64, hy: &Hyper) -> Poly {
        let n = hy.n();
        let sub = &Self::s_poly(hy) + &Poly::constant(n + 1, Q::from_integer(BigInt::from(a)));
        self.num.substitute(n, &sub)
    }

    /// `∂_i · (u f^{s−N}) = (f ∂_i u + (s − N) f_i u) f^{s−N−1}`.
    pub fn apply_d(&self, i: usize, hy: &Hyper) -> SFsElem {
        let n = hy.n();
        let fi = embed_s(hy.partial(i));
        let smn = &Self::s_poly(hy) - &Poly::constant(n + 1, Q::from_integer(BigInt::from(self.pow)));
        let a = &hy.f_s * &self.num.derivative(i);
        let b = &(&smn * &fi) * &self.num;
        SFsElem::new(&a + &b, self.pow + 1, hy)
    }

    /// `t · u(s) f^s = f u(s + 1) f^s`.
    pub fn apply_t(&self, hy: &Hyper) -> SFsElem {
        let u = self.shift_s(1, hy);
        if self.pow > 0 {
            SFsElem::new(u, self.pow - 1, hy)
        } else {
            SFsElem::new(&u * &hy.f_s, 0, hy)
        }
    }

    /// `∂_t · u(s) f^s = −s u(s − 1) f^{s−1}`.
    pub fn apply_dt(&self, hy: &Hyper) -> SFsElem {
        let u = self.shift_s(-1, hy);
        let v = &u * &Self::s_poly(hy);
        SFsElem::new(v.scale(&-Q::one()), self.pow + 1, hy)
    }

    pub fn apply_s(&self, hy: &Hyper) -> SFsElem {
        SFsElem::new(&self.num * &Self::s_poly(hy), self.pow, hy)
    }

    pub fn apply_x(&self, i: usize, hy: &Hyper) -> SFsElem {
        let n = hy.n();
        SFsElem::new(&self.num * &Poly::var(n + 1, i), self.pow, hy)
    }

    /// Substitute `s = −α`.
    pub fn ev(&self, alpha: &Q, hy: &Hyper) -> LocalizedPoly {
        let n = hy.n();
        let v = self.num.eval_var(n, &-alpha.clone());
        LocalizedPoly::new(v.truncate_vars(n).unwrap(), self.pow, hy)
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut ns = names.to_vec();
        ns.push("s".into());
        let p = render(&self.num, &ns);
        match self.pow {
            0 => format!("({p})*f^s"),
            1 => format!("({p}/f)*f^s"),
            e => format!("({p}/f^{e})*f^s"),
        }
    }
}

/// `Σ_ℓ g_ℓ ⊗ ∂_t^ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphElem {
    coeffs: BTreeMap<u32, LocalizedPoly>,
}

impl GraphElem {
    pub fn zero() -> Self {
        GraphElem {
            coeffs: BTreeMap::new(),
        }
    }

    /// `δ = 1 ⊗ 1`.
    pub fn delta(hy: &Hyper) -> Self {
        GraphElem::term(0, LocalizedPoly::poly(Poly::one(hy.n())))
    }

    pub fn term(level: u32, g: LocalizedPoly) -> Self {
        let mut e = GraphElem::zero();
        if !g.is_zero() {
            e.coeffs.insert(level, g);
        }
        e
    }

    /// From polynomial coefficients by level.
    pub fn from_polys(levels: &[Poly]) -> Self {
        let mut e = GraphElem::zero();
        for (l, g) in levels.iter().enumerate() {
            if !g.is_zero() {
                e.coeffs.insert(l as u32, LocalizedPoly::poly(g.clone()));
            }
        }
        e
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, LocalizedPoly> {
        &self.coeffs
    }

    pub fn coeff(&self, level: u32) -> Option<&LocalizedPoly> {
        self.coeffs.get(&level)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest level present.
    pub fn level(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Polynomial coefficients, if no level has a pole.
    pub fn is_polynomial(&self) -> bool {
        self.coeffs.values().all(|c| c.f_power() == 0)
    }

    fn add_at(&mut self, level: u32, g: LocalizedPoly, hy: &Hyper) {
        if g.is_zero() {
            return;
        }
        let v = match self.coeffs.remove(&level) {
            Some(old) => old.add(&g, hy),
            None => g,
        };
        if !v.is_zero() {
            self.coeffs.insert(level, v);
        }
    }

    pub fn add(&self, o: &GraphElem, hy: &Hyper) -> GraphElem {
        let mut out = self.clone();
        for (&l, g) in &o.coeffs {
            out.add_at(l, g.clone(), hy);
        }
        out
    }

    pub fn sub(&self, o: &GraphElem, hy: &Hyper) -> GraphElem {
        self.add(&o.scale(&-Q::one()), hy)
    }

    pub fn scale(&self, c: &Q) -> GraphElem {
        if c.is_zero() {
            return GraphElem::zero();
        }
        GraphElem {
            coeffs: self.coeffs.iter().map(|(&l, g)| (l, g.scale(c))).collect(),
        }
    }

    pub fn mul_poly(&self, p: &Poly, hy: &Hyper) -> GraphElem {
        let mut out = GraphElem::zero();
        for (&l, g) in &self.coeffs {
            out.add_at(l, g.mul_poly(p, hy), hy);
        }
        out
    }

    pub fn mul_localized(&self, u: &LocalizedPoly, hy: &Hyper) -> GraphElem {
        let mut out = GraphElem::zero();
        for (&l, g) in &self.coeffs {
            let p = LocalizedPoly::new(&g.num * &u.num, g.pow + u.pow, hy);
            out.add_at(l, p, hy);
        }
        out
    }

    pub fn apply_x(&self, i: usize, hy: &Hyper) -> GraphElem {
        self.mul_poly(&Poly::var(hy.n(), i), hy)
    }

    /// `∂_i(u ⊗ ∂_t^ℓ) = ∂_i u ⊗ ∂_t^ℓ − f_i u ⊗ ∂_t^{ℓ+1}`.
    pub fn apply_d(&self, i: usize, hy: &Hyper) -> GraphElem {
        let mut out = GraphElem::zero();
        for (&l, g) in &self.coeffs {
            out.add_at(l, g.derivative(i, hy), hy);
            out.add_at(l + 1, g.mul_poly(hy.partial(i), hy).scale(&-Q::one()), hy);
        }
        out
    }

    /// `t(u ⊗ ∂_t^ℓ) = f u ⊗ ∂_t^ℓ − ℓ u ⊗ ∂_t^{ℓ−1}`.
    pub fn apply_t(&self, hy: &Hyper) -> GraphElem {
        let mut out = GraphElem::zero();
        for (&l, g) in &self.coeffs {
            out.add_at(l, g.mul_poly(hy.f(), hy), hy);
            if l > 0 {
                out.add_at(l - 1, g.scale(&Q::from_integer(BigInt::from(-(l as i64)))), hy);
            }
        }
        out
    }

    pub fn apply_dt(&self) -> GraphElem {
        GraphElem {
            coeffs: self.coeffs.iter().map(|(&l, g)| (l + 1, g.clone())).collect(),
        }
    }

    /// `s = −∂_t t`.
    pub fn apply_s(&self, hy: &Hyper) -> GraphElem {
        self.apply_t(hy).apply_dt().scale(&-Q::one())
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&l, g)| {
                let c = g.render(names);
                let c = if g.f_power() == 0 && g.num.num_terms() > 1 && l > 0 {
                    format!("({c})")
                } else {
                    c
                };
                match l {
                    0 => c,
                    1 => format!("{c}*dt"),
                    _ => format!("{c}*dt^{l}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for GraphElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self
            .coeffs
            .values()
            .next()
            .map(|c| c.num.nvars())
            .unwrap_or(0);
        write!(f, "{}", self.render(&default_names(n)))
    }
}

/// `ρ(u s^j f^s) = u ⊗ (−∂_t t)^j`.
pub fn rho(e: &SFsElem, hy: &Hyper) -> GraphElem {
    let mut out = GraphElem::zero();
    let coeffs = e.coeffs(hy);
    let top = coeffs.keys().next_back().copied().unwrap_or(0);
    let mut sj = GraphElem::delta(hy);
    for j in 0..=top {
        if let Some(u) = coeffs.get(&j) {
            out = out.add(&sj.mul_localized(u, hy), hy);
        }
        sj = sj.apply_s(hy);
    }
    out
}

/// `∏_{i<j} (−s + i)` in ℚ[x, s].
pub fn falling_s(hy: &Hyper, j: u32) -> Poly {
    let n = hy.n();
    let s = Poly::var(n + 1, n);
    let mut acc = Poly::one(n + 1);
    for i in 0..j {
        let fac = &Poly::constant(n + 1, Q::from_integer(BigInt::from(i))) - &s;
        acc = &acc * &fac;
    }
    acc
}

/// `u ⊗ ∂_t^j ↦ (u / f^j) ∏_{i<j} (−s + i) f^s`.
pub fn rho_inv(e: &GraphElem, hy: &Hyper) -> SFsElem {
    let mut out = SFsElem::zero(hy);
    for (&j, u) in &e.coeffs {
        let num = &embed_s(&u.num) * &falling_s(hy, j);
        out = out.add(&SFsElem::new(num, u.pow + j, hy), hy);
    }
    out
}

/// A module on which Weyl operators act.
pub trait WeylModule: Sized + Clone {
    fn zero_like(&self, hy: &Hyper) -> Self;
    fn plus(&self, o: &Self, hy: &Hyper) -> Self;
    fn times(&self, c: &Q) -> Self;
    fn x(&self, i: usize, hy: &Hyper) -> Self;
    fn d(&self, i: usize, hy: &Hyper) -> Self;
    fn t(&self, hy: &Hyper) -> Self;
    fn dt(&self, hy: &Hyper) -> Self;
    fn s(&self, hy: &Hyper) -> Self;
}

impl WeylModule for SFsElem {
    fn zero_like(&self, hy: &Hyper) -> Self {
        SFsElem::zero(hy)
    }
    fn plus(&self, o: &Self, hy: &Hyper) -> Self {
        self.add(o, hy)
    }
    fn times(&self, c: &Q) -> Self {
        self.scale(c)
    }
    fn x(&self, i: usize, hy: &Hyper) -> Self {
        self.apply_x(i, hy)
    }
    fn d(&self, i: usize, hy: &Hyper) -> Self {
        self.apply_d(i, hy)
    }
    fn t(&self, hy: &Hyper) -> Self {
        self.apply_t(hy)
    }
    fn dt(&self, hy: &Hyper) -> Self {
        self.apply_dt(hy)
    }
    fn s(&self, hy: &Hyper) -> Self {
        self.apply_s(hy)
    }
}

impl WeylModule for GraphElem {
    fn zero_like(&self, _: &Hyper) -> Self {
        GraphElem::zero()
    }
    fn plus(&self, o: &Self, hy: &Hyper) -> Self {
        self.add(o, hy)
    }
    fn times(&self, c: &Q) -> Self {
        self.scale(c)
    }
    fn x(&self, i: usize, hy: &Hyper) -> Self {
        self.apply_x(i, hy)
    }
    fn d(&self, i: usize, hy: &Hyper) -> Self {
        self.apply_d(i, hy)
    }
    fn t(&self, hy: &Hyper) -> Self {
        self.apply_t(hy)
    }
    fn dt(&self, _: &Hyper) -> Self {
        self.apply_dt()
    }
    fn s(&self, hy: &Hyper) -> Self {
        self.apply_s(hy)
    }
}

/// Apply a normally ordered monomial, rightmost factor first.
fn act_monomial<M: WeylModule>(alg: &Algebra, m: &Monomial, e: &M, hy: &Hyper) -> M {
    let mut cur = e.clone();
    for _ in 0..m[alg.dt()] {
        cur = cur.dt(hy);
    }
    for _ in 0..m[alg.s()] {
        cur = cur.s(hy);
    }
    for _ in 0..m[alg.t()] {
        cur = cur.t(hy);
    }
    for i in 0..alg.n {
        for _ in 0..m[alg.d(i)] {
            cur = cur.d(i, hy);
        }
    }
    for i in 0..alg.n {
        for _ in 0..m[alg.x(i)] {
            cur = cur.x(i, hy);
        }
    }
    cur
}

/// `P · e` for any non-homogenized algebra.
pub fn act<M: WeylModule>(p: &WeylElem, e: &M, hy: &Hyper) -> Result<M> {
    let alg = p.algebra();
    if alg.homogenized {
        return Err(Error::AlgebraMismatch("cannot act with a homogenized operator".into()));
    }
    if alg.n != hy.n() {
        return Err(Error::AlgebraMismatch(format!(
            "operator in {} variables, module in {}",
            alg.n,
            hy.n()
        )));
    }
    let mut out = e.zero_like(hy);
    for (m, c) in p.terms() {
        out = out.plus(&act_monomial(&alg, m, e, hy).times(c), hy);
    }
    Ok(out)
}

/// `ev_{s=−α}(ρ⁻¹ e) · f^k`, required to be a polynomial.
pub fn hodge_normalize(e: &GraphElem, k: u32, alpha: &Q, hy: &Hyper) -> Result<Poly> {
    if !e.is_polynomial() || e.level().is_some_and(|l| l > k) {
        return Err(Error::NotInHodgePiece(format!(
            "element {} is not in F_{}",
            e,
            k + 1
        )));
    }
    let v = rho_inv(e, hy).ev(alpha, hy);
    let lifted = LocalizedPoly::new(&v.num * &hy.f_pow(k), v.pow, hy);
    lifted
        .as_poly()
        .cloned()
        .ok_or_else(|| Error::NotInHodgePiece("denominators do not clear".into()))
}

/// Closed form `Σ_ℓ g_ℓ f^{k−ℓ} ∏_{i<ℓ} (α + i)` for polynomial level data.
pub fn hodge_closed(levels: &[Poly], k: u32, alpha: &Q, hy: &Hyper) -> Poly {
    let n = hy.n();
    let mut acc = Poly::zero(n);
    let mut qa = Q::one();
    for (l, g) in levels.iter().enumerate() {
        if l as u32 > k {
            break;
        }
        if !g.is_zero() {
            acc = &acc + &(g * &hy.f_pow(k - l as u32)).scale(&qa);
        }
        qa *= alpha + Q::from_integer(BigInt::from(l));
    }
    acc
}

/// Same closed form with a symbolic parameter: returns a polynomial in
/// ℚ[x, β] (β last) with `∏_{i<ℓ} (β + i)`.
pub fn hodge_closed_param(levels: &[Poly], k: u32, hy: &Hyper) -> Poly {
    let n = hy.n();
    let beta = Poly::var(n + 1, n);
    let mut acc = Poly::zero(n + 1);
    let mut qb = Poly::one(n + 1);
    for (l, g) in levels.iter().enumerate() {
        if l as u32 > k {
            break;
        }
        if !g.is_zero() {
            acc = &acc + &(&embed_s(&(g * &hy.f_pow(k - l as u32))) * &qb);
        }
        qb = &qb * &(&beta + &Poly::constant(n + 1, Q::from_integer(BigInt::from(l))));
    }
    acc
}

/// The basis `{binom(s, ℓ) f^s / f^ℓ}_{ℓ ≤ k}` of `F_{k+1}` in s-coordinates.
#[derive(Clone, Debug)]
pub struct HodgePieceBasis {
    pub k: u32,
}

impl HodgePieceBasis {
    pub fn new(k: u32) -> Self {
        HodgePieceBasis { k }
    }

    /// Row ℓ: the coordinates of `f^ℓ ρ⁻¹(1 ⊗ ∂_t^ℓ)` in the binomial basis.
    pub fn matrix(&self, hy: &Hyper) -> Vec<Vec<Q>> {
        let n = hy.n();
        (0..=self.k)
            .map(|l| {
                let p = falling_s(hy, l);
                let univ: Vec<Q> = (0..=self.k)
                    .map(|j| {
                        let mut e = vec![0u32; n + 1];
                        e[n] = j;
                        p.coeff(&Monomial(e))
                    })
                    .collect();
                to_binomial_basis(&univ)
            })
            .collect()
    }

    /// `(Σ_ℓ g_ℓ binom(s,ℓ) f^{−ℓ}) f^s` as a graph element.
    pub fn to_graph(&self, gs: &[Poly], hy: &Hyper) -> Result<GraphElem> {
        let mut out = SFsElem::zero(hy);
        let n = hy.n();
        for (l, g) in gs.iter().enumerate() {
            let b = binomial_s(n, l as u32);
            out = out.add(&SFsElem::new(&embed_s(g) * &b, l as u32, hy), hy);
        }
        Ok(rho(&out, hy))
    }
}

/// `binom(s, j)` in ℚ[x, s].
pub fn binomial_s(n: usize, j: u32) -> Poly {
    let s = Poly::var(n + 1, n);
    let mut acc = Poly::one(n + 1);
    let mut fact = BigInt::one();
    for i in 0..j {
        acc = &acc * &(&s - &Poly::constant(n + 1, Q::from_integer(BigInt::from(i))));
        fact *= BigInt::from(i + 1);
    }
    acc.scale(&Q::new(BigInt::one(), fact))
}

/// Coordinates of a polynomial in `s` (ascending coefficients) in the basis `binom(s, j)`.
fn to_binomial_basis(c: &[Q]) -> Vec<Q> {
    // Newton forward differences at s = 0, 1, 2, ...
    let m = c.len();
    let eval = |x: i64| -> Q {
        let mut acc = Q::zero();
        for a in c.iter().rev() {
            acc = acc * Q::from_integer(BigInt::from(x)) + a;
        }
        acc
    };
    let mut vals: Vec<Q> = (0..m as i64).map(eval).collect();
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(vals[0].clone());
        vals = vals.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// Human-readable form of a tagged value `v · f^{−α}`.
pub fn render_tagged(v: &LocalizedPoly, alpha: &Q, names: &[String]) -> String {
    format!("{}*f^(-{})", v.render(names), fmt_rational(alpha))
}

/// The D_n[s] algebra matching a hypersurface.
pub fn dns(hy: &Hyper) -> Algebra {
    Algebra::new(AlgebraKind::DnS, hy.n())
}

#[cfg(test)]
mod tests;
