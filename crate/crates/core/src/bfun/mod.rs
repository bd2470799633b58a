//! Bernstein–Sato polynomials: the graph ideal, Ann f^s, global and
//! per-element b-functions.

mod parametric;

pub use parametric::{parametric_element_bfunction, AffineSubspace, ParamElement, Stratum, StratumBFunction};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphmod::{act, embed_s, rho_inv, GraphElem, Hyper, SFsElem};
use crate::par;
use crate::polyalg::linalg::{Echelon, SparseVec};
use crate::polyalg::{Monomial, Poly, UnivariatePoly};
use crate::rational::{fmt_rational, Q};
use crate::weyl::{initial_form, v_weight, weighted_groebner, Algebra, AlgebraKind, LeftGb, WeylElem, WeylGbOptions};

#[derive(Clone, Copy, Debug)]
pub struct BfOptions {
    pub gb: WeylGbOptions,
    /// Largest b-function degree searched before giving up.
    pub max_degree: usize,
}

impl Default for BfOptions {
    fn default() -> Self {
        BfOptions {
            gb: WeylGbOptions::default(),
            max_degree: 64,
        }
    }
}

/// `{t − f, ∂_i + f_i ∂_t}` in D_{n+1}.
#[derive(Clone, Debug)]
pub struct GraphIdeal {
    pub f: Poly,
    pub gens: Vec<WeylElem>,
}

pub fn graph_ideal(f: &Poly) -> Result<GraphIdeal> {
    let hy = Hyper::new(f.clone())?;
    let alg = Algebra::new(AlgebraKind::Dn1, hy.n());
    let t = WeylElem::var(alg, alg.t())?;
    let dt = WeylElem::var(alg, alg.dt())?;
    let mut gens = vec![&t - &WeylElem::from_poly(alg, f)];
    for i in 0..hy.n() {
        let fi = WeylElem::from_poly(alg, hy.partial(i));
        gens.push(&WeylElem::dx(alg, i) + &fi.mul(&dt)?);
    }
    Ok(GraphIdeal { f: f.clone(), gens })
}

/// `Ann_{D_n[s]} f^s` with its grevlex Gröbner basis.
#[derive(Clone, Debug)]
pub struct AnnFs {
    hy: Hyper,
    gb: LeftGb,
}

impl AnnFs {
    pub fn hyper(&self) -> &Hyper {
        &self.hy
    }

    pub fn algebra(&self) -> Algebra {
        self.gb.algebra()
    }

    pub fn gb(&self) -> &LeftGb {
        &self.gb
    }

    pub fn generators(&self) -> Vec<WeylElem> {
        self.gb.elements()
    }

    /// Generators of `Ann f^{s+a}`, i.e. `s ↦ s + a` applied to Ann f^s.
    pub fn shifted(&self, a: i64) -> Vec<WeylElem> {
        let sh = Q::from_integer(a.into());
        self.gb.elements().iter().map(|g| g.shift_s(&sh)).collect()
    }
}

/// Briançon–Maisonobe: eliminate ∂_t from `(s + f∂_t, ∂_i + f_i∂_t)` in D_n⟨∂_t, s⟩.
pub fn ann_fs(f: &Poly, opts: &BfOptions) -> Result<AnnFs> {
    let hy = Hyper::new(f.clone())?;
    let n = hy.n();
    let bm = Algebra::new(AlgebraKind::Bm, n);
    let dt = WeylElem::var(bm, bm.dt())?;
    let s = WeylElem::s(bm)?;
    let mut gens = vec![&s + &WeylElem::from_poly(bm, f).mul(&dt)?];
    for i in 0..n {
        let fi = WeylElem::from_poly(bm, hy.partial(i));
        gens.push(&WeylElem::dx(bm, i) + &fi.mul(&dt)?);
    }
    let order = bm.elimination(&[bm.dt()]);
    let gb = LeftGb::compute(&gens, &order, opts.gb)?;
    let dns = Algebra::new(AlgebraKind::DnS, n);
    let mut ann = Vec::new();
    for g in gb.elements() {
        if g.degree_in(bm.dt()) == 0 {
            ann.push(g.with_algebra(dns)?);
        }
    }
    let gb = LeftGb::compute(&ann, &dns.grevlex(), opts.gb)?;
    Ok(AnnFs { hy, gb })
}

/// Every generator must kill f^s.
pub fn kill_check(ann: &AnnFs) -> Result<bool> {
    let fs = SFsElem::fs(&ann.hy);
    for g in ann.generators() {
        if !act(&g, &fs, &ann.hy)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFunction {
    pub b: UnivariatePoly,
    /// Rational roots with multiplicities, decreasing.
    pub roots: Vec<(Q, u32)>,
    pub certificate: Option<WeylElem>,
}

impl BFunction {
    pub fn from_poly(b: UnivariatePoly, certificate: Option<WeylElem>) -> Result<Self> {
        let b = b.monic();
        let (roots, rest) = b.rational_roots();
        if rest.degree() > 0 {
            return Err(Error::NonRationalRoots(rest.to_string()));
        }
        Ok(BFunction {
            b,
            roots,
            certificate,
        })
    }

    pub fn factored(&self) -> String {
        self.b.factored().expect("roots are rational")
    }

    /// The V-positions `−λ`, increasing.
    pub fn positions(&self) -> Vec<(Q, u32)> {
        let mut p: Vec<(Q, u32)> = self.roots.iter().map(|(r, m)| (-r, *m)).collect();
        p.sort();
        p
    }

    /// Largest root.
    pub fn max_root(&self) -> Option<Q> {
        self.roots.first().map(|r| r.0.clone())
    }

    /// All roots λ satisfy λ ≤ −α.
    pub fn in_v(&self, alpha: &Q) -> bool {
        self.roots.iter().all(|(r, _)| r <= &-alpha.clone())
    }

    /// All roots λ satisfy λ < −α.
    pub fn in_v_strict(&self, alpha: &Q) -> bool {
        self.roots.iter().all(|(r, _)| r < &-alpha.clone())
    }

    pub fn roots_text(&self) -> Vec<String> {
        self.roots.iter().map(|(r, _)| fmt_rational(r)).collect()
    }
}

/// Smallest monic `b` with `b(s)·u` in the left ideal of `gb`.
fn min_poly_of_s(gb: &LeftGb, u: &WeylElem, max_degree: usize, tracked: bool) -> Result<(UnivariatePoly, Option<WeylElem>)> {
    let alg = gb.algebra();
    let s = WeylElem::s(alg)?;
    let mut cur = u.clone();
    let mut ech: Echelon<Monomial> = Echelon::new();
    let mut cofs: Vec<WeylElem> = Vec::new();
    for _ in 0..=max_degree {
        let (nf, cof) = if tracked {
            let (r, c) = gb.reduce_tracked(&cur)?;
            (r, Some(c))
        } else {
            (gb.reduce(&cur)?, None)
        };
        if let Some(c) = cof {
            cofs.push(c);
        }
        let v: SparseVec<Monomial> = nf.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        if let Some(rel) = ech.insert(v) {
            let top = ech.inserted() - 1;
            let mut coeffs = vec![Q::zero(); top + 1];
            for (i, c) in &rel {
                coeffs[*i] = c.clone();
            }
            let b = UnivariatePoly::new(coeffs);
            let cert = if tracked {
                let mut p = WeylElem::zero(alg);
                for (i, c) in &rel {
                    p = &p + &cofs[*i].scale(c);
                }
                Some(p)
            } else {
                None
            };
            let lead = b.leading();
            let inv = lead.recip();
            return Ok((b.scale(&inv), cert.map(|p| p.scale(&inv))));
        }
        cur = s.mul(&cur)?;
    }
    Err(Error::Budget(format!("no b-function of degree ≤ {max_degree}")))
}

/// The global b-function with its functional-equation certificate.
#[derive(Clone, Debug)]
pub struct GlobalBFunction {
    pub bfunction: BFunction,
    pub certificate: WeylElem,
    pub certificate_verified: bool,
    /// For each distinct root: the root and whether dropping it is infeasible
    /// at the degree bound.
    pub minimality: Vec<(Q, bool)>,
    pub degree_bound: u32,
}

pub fn global_bfunction(f: &Poly, opts: &BfOptions) -> Result<GlobalBFunction> {
    let ann = ann_fs(f, opts)?;
    global_bfunction_with(&ann, opts)
}

pub fn global_bfunction_with(ann: &AnnFs, opts: &BfOptions) -> Result<GlobalBFunction> {
    let hy = &ann.hy;
    let alg = ann.algebra();
    let fw = WeylElem::from_poly(alg, hy.f());
    let gb = LeftGb::compute_tracked(&ann.generators(), &fw, &alg.grevlex(), opts.gb)?;
    let (b, cert) = min_poly_of_s(&gb, &WeylElem::one(alg), opts.max_degree, true)?;
    let cert = cert.expect("tracked");
    let verified = verify_functional_equation(hy, &b, &cert)?;
    if !verified {
        return Err(Error::CertificateFailed(format!(
            "P·f^(s+1) ≠ b(s)f^s for b = {b}"
        )));
    }
    let bf = BFunction::from_poly(b, Some(cert.clone()))?;
    let bound = operator_degree(&cert) + 2;
    let minimality = minimality_check(hy, &bf, bound.min(MINIMALITY_CAP))?;
    Ok(GlobalBFunction {
        bfunction: bf,
        certificate: cert,
        certificate_verified: verified,
        minimality,
        degree_bound: bound.min(MINIMALITY_CAP),
    })
}

/// Degree cap for the infeasibility solves.
const MINIMALITY_CAP: u32 = 8;

/// `P · f^{s+1} = b(s) f^s`, checked by the module action.
pub fn verify_functional_equation(hy: &Hyper, b: &UnivariatePoly, p: &WeylElem) -> Result<bool> {
    let lhs = act(p, &SFsElem::fs_shift(hy, 1), hy)?;
    let rhs = SFsElem::new(univariate_in_s(hy.n(), b), 0, hy);
    Ok(lhs == rhs)
}

/// `b(s)` in ℚ[x, s].
pub fn univariate_in_s(n: usize, b: &UnivariatePoly) -> Poly {
    let s = Poly::var(n + 1, n);
    let mut acc = Poly::zero(n + 1);
    for (i, c) in b.coeffs().iter().enumerate() {
        acc = &acc + &s.pow(i as u32).scale(c);
    }
    acc
}

/// Total degree in (x, ∂, s).
pub fn operator_degree(p: &WeylElem) -> u32 {
    p.terms().map(|(m, _)| m.degree()).max().unwrap_or(0)
}

/// Is there an operator of total degree ≤ `deg` with `P f^{s+1} = b(s) f^s`?
pub fn functional_equation_solvable(hy: &Hyper, b: &UnivariatePoly, deg: u32) -> Result<bool> {
    let n = hy.n();
    let alg = Algebra::new(AlgebraKind::DnS, n);
    // Operator monomials x^a ∂^c s^e of total degree ≤ deg.
    let mut monos: Vec<Monomial> = Vec::new();
    let vars: Vec<usize> = (0..n).map(|i| alg.x(i)).chain((0..n).map(|i| alg.d(i))).chain([alg.s()]).collect();
    enumerate_monomials(&vars, alg.len(), deg, &mut monos);
    let f1 = SFsElem::fs_shift(hy, 1);
    let cols: Vec<SFsElem> = par::map(&monos, |m| {
        act(&WeylElem::monomial(alg, m.clone(), Q::one()), &f1, hy).expect("same ring")
    });
    let target = SFsElem::new(univariate_in_s(n, b), 0, hy);
    let pow = cols.iter().map(|c| c.f_power()).chain([target.f_power()]).max().unwrap_or(0);
    let to_vec = |e: &SFsElem| -> SparseVec<Monomial> {
        let num = e.numerator() * &embed_s(&hy.f_pow(pow - e.f_power()));
        num.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
    };
    let mut ech = Echelon::new();
    for c in &cols {
        ech.insert(to_vec(c));
    }
    Ok(ech.in_span(&to_vec(&target)))
}

fn enumerate_monomials(vars: &[usize], len: usize, deg: u32, out: &mut Vec<Monomial>) {
    fn rec(vars: &[usize], len: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => out.push(Monomial(cur.clone())),
            Some((&v, rest)) => {
                for e in 0..=left {
                    cur[v] = e;
                    rec(rest, len, left - e, cur, out);
                }
                cur[v] = 0;
            }
        }
    }
    let mut cur = vec![0u32; len];
    rec(vars, len, deg, &mut cur, out);
}

/// For each distinct root, whether `b / (s − λ)` has no certificate at `deg`.
pub fn minimality_check(hy: &Hyper, bf: &BFunction, deg: u32) -> Result<Vec<(Q, bool)>> {
    let mut out = Vec::new();
    for (r, _) in &bf.roots {
        let (q, rem) = bf.b.div_rem(&UnivariatePoly::linear(-r.clone()));
        debug_assert!(rem.is_zero());
        out.push((r.clone(), !functional_equation_solvable(hy, &q, deg)?));
    }
    Ok(out)
}

/// Independent route: the b-function of the graph ideal along t, from the
/// initial ideal for the weight (t: −1, ∂_t: +1), with `b_f(s) = B(−s − 1)`.
pub fn bfunction_via_initial_ideal(f: &Poly, opts: &BfOptions) -> Result<UnivariatePoly> {
    let gi = graph_ideal(f)?;
    let alg = gi.gens[0].algebra();
    let w = v_weight(&alg);
    let gb = weighted_groebner(&gi.gens, &w, opts.gb)?;
    let ins: Vec<WeylElem> = gb.iter().map(|g| initial_form(g, &w)).collect();
    let igb = LeftGb::compute(&ins, &alg.grevlex(), opts.gb)?;
    let theta = WeylElem::var(alg, alg.t())?.mul(&WeylElem::var(alg, alg.dt())?)?;
    let mut cur = WeylElem::one(alg);
    let mut ech: Echelon<Monomial> = Echelon::new();
    for _ in 0..=opts.max_degree {
        let nf = igb.reduce(&cur)?;
        let v: SparseVec<Monomial> = nf.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        if let Some(rel) = ech.insert(v) {
            let mut coeffs = vec![Q::zero(); ech.inserted()];
            for (i, c) in &rel {
                coeffs[*i] = c.clone();
            }
            let big_b = UnivariatePoly::new(coeffs);
            // b(s) = B(−s − 1).
            let mut acc = UnivariatePoly::zero();
            let lin = UnivariatePoly::new(vec![-Q::one(), -Q::one()]);
            for c in big_b.coeffs().iter().rev() {
                acc = &(&acc * &lin) + &UnivariatePoly::constant(c.clone());
            }
            return Ok(acc.monic());
        }
        cur = theta.mul(&cur)?;
    }
    Err(Error::Budget("initial-ideal b-function degree".into()))
}

/// `(u, N)` with `ρ⁻¹(m) = u(x, s) f^{s−N}`.
pub fn s_form(m: &GraphElem, hy: &Hyper) -> (Poly, u32) {
    let e = rho_inv(m, hy);
    (e.numerator().clone(), e.f_power())
}

/// b_{f,m}: the minimal polynomial of s on the class of `u` modulo
/// `Ann f^{s−N} + Σ_{j≥1} D[s] f^j u(s+j)`.
pub fn element_bfunction(ann: &AnnFs, m: &GraphElem, opts: &BfOptions) -> Result<BFunction> {
    if m.is_zero() {
        return Err(Error::ZeroElement);
    }
    let hy = &ann.hy;
    let (u, big_n) = s_form(m, hy);
    element_bfunction_s(ann, &u, big_n, opts)
}

/// As [`element_bfunction`] for `u(x, s) f^{s−N}` given directly.
pub fn element_bfunction_s(ann: &AnnFs, u: &Poly, big_n: u32, opts: &BfOptions) -> Result<BFunction> {
    if u.is_zero() {
        return Err(Error::ZeroElement);
    }
    let hy = &ann.hy;
    let n = hy.n();
    let alg = ann.algebra();
    let mut gens = ann.shifted(-(big_n as i64));
    let fw = embed_s(hy.f());
    let mut j = 1u32;
    let mut gb = LeftGb::compute(&gens, &alg.grevlex(), opts.gb)?;
    loop {
        let shift = &Poly::var(n + 1, n) + &Poly::constant(n + 1, Q::from_integer(j.into()));
        let g = &fw.pow(j) * &u.substitute(n, &shift);
        let gw = WeylElem::from_poly_s(alg, &g);
        if gb.contains(&gw)? && j > 1 {
            break;
        }
        gens.push(gw);
        gb = LeftGb::compute(&gens, &alg.grevlex(), opts.gb)?;
        j += 1;
        if j as usize > opts.max_degree + 2 {
            return Err(Error::Budget("t-orbit did not stabilize".into()));
        }
    }
    let uw = WeylElem::from_poly_s(alg, u);
    let (b, _) = min_poly_of_s(&gb, &uw, opts.max_degree, false)?;
    BFunction::from_poly(b, None)
}

/// Serializable summary of a b-function.
#[derive(Clone, Debug, Serialize)]
pub struct BFunctionReport {
    pub factored: String,
    pub expanded: String,
    pub roots: Vec<String>,
}

impl From<&BFunction> for BFunctionReport {
    fn from(b: &BFunction) -> Self {
        BFunctionReport {
            factored: b.factored(),
            expanded: b.b.to_string(),
            roots: b.roots_text(),
        }
    }
}
