//! Families of ideals over ℙ¹: flat extension, fibers, and the limit at β = ∞.

mod build;

pub use build::{build_family_from_hodge, theorem_1_2_check, FamilyBuild, Thm12Report};

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::par;
use crate::polyalg::{render, Ideal, Monomial, MonomialOrder, Poly, UnivariatePoly};
use crate::rational::{fmt_rational, Q};

/// The β-coefficients of `p`, one univariate polynomial per x-monomial.
fn beta_coefficients(p: &Poly, n: usize) -> BTreeMap<Monomial, UnivariatePoly> {
    let mut acc: BTreeMap<Monomial, Vec<Q>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.0[n] as usize;
        let key = Monomial(m.0[..n].to_vec());
        let v = acc.entry(key).or_default();
        if v.len() <= e {
            v.resize(e + 1, Q::zero());
        }
        v[e] = c.clone();
    }
    acc.into_iter().map(|(k, v)| (k, UnivariatePoly::new(v))).collect()
}

fn from_beta_coefficients(n: usize, parts: &BTreeMap<Monomial, UnivariatePoly>) -> Poly {
    let mut out = Poly::zero(n + 1);
    for (m, u) in parts {
        for (e, c) in u.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let mut exps = m.0.clone();
                exps.push(e as u32);
                out.add_term(Monomial(exps), c.clone());
            }
        }
    }
    out
}

fn univariate_to_poly(n: usize, u: &UnivariatePoly) -> Poly {
    from_beta_coefficients(n, &BTreeMap::from([(Monomial(vec![0; n]), u.clone())]))
}

/// Divide out the common ℚ[β]-factor of the coefficients.
fn content_free(p: &Poly, n: usize) -> Poly {
    let parts = beta_coefficients(p, n);
    let mut g = UnivariatePoly::zero();
    for u in parts.values() {
        g = g.gcd(u);
    }
    if g.degree() <= 0 {
        return p.primitive();
    }
    let divided = parts.iter().map(|(m, u)| (m.clone(), u.div_rem(&g).0)).collect();
    from_beta_coefficients(n, &divided).primitive()
}

/// `p(x, 1/v)·v^{deg_v p}` in the last variable.
fn reverse_last(p: &Poly, n: usize) -> Poly {
    let d = p.degree_in(n);
    Poly::from_terms(
        n + 1,
        p.terms().map(|(m, c)| {
            let mut e = m.0.clone();
            e[n] = d - e[n];
            (Monomial(e), c.clone())
        }),
    )
}

fn term_key(p: &Poly) -> Vec<(Monomial, Q)> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn drop_last(p: &Poly, n: usize) -> Poly {
    p.truncate_vars(n).expect("last variable specialized")
}

/// An ideal of ℚ[β][x₁..x_n]; β is variable `n`.
#[derive(Clone, Debug)]
pub struct ParamIdeal {
    n: usize,
    gens: Vec<Poly>,
}

impl ParamIdeal {
    pub fn new(n: usize, gens: Vec<Poly>) -> Result<Self> {
        let mut out = Vec::new();
        for g in gens {
            if g.nvars() != n + 1 {
                return Err(Error::RingMismatch(format!("expected {} variables, got {}", n + 1, g.nvars())));
            }
            if !g.is_zero() {
                out.push(content_free(&g, n));
            }
        }
        out.sort_by_key(term_key);
        out.dedup();
        Ok(ParamIdeal { n, gens: out })
    }

    /// A family that does not depend on β.
    pub fn constant(ideal: &Ideal) -> Result<Self> {
        let n = ideal.nvars();
        let map: Vec<usize> = (0..n).collect();
        ParamIdeal::new(n, ideal.gens().iter().map(|g| g.embed(n + 1, &map)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Substitute β = β₀ without any flat correction.
    pub fn specialize(&self, beta: &Q) -> Result<Ideal> {
        Ideal::new(self.n, self.gens.iter().map(|g| drop_last(&g.eval_var(self.n, beta), self.n)).collect())
    }

    pub fn render(&self, names: &[String]) -> Vec<String> {
        self.gens.iter().map(|g| render(g, names)).collect()
    }
}

/// Result of comparing the two charts over β ∉ {0, ∞}.
#[derive(Clone, Debug, Serialize)]
pub struct Gluing {
    pub u_in_beta: bool,
    pub beta_in_u: bool,
}

impl Gluing {
    pub fn passed(&self) -> bool {
        self.u_in_beta && self.beta_in_u
    }
}

/// A flat family over ℙ¹ given on the charts β and u = 1/β.
#[derive(Clone, Debug)]
pub struct P1Family {
    n: usize,
    pub chart_beta: Ideal,
    pub chart_u: Ideal,
    /// Rational roots of the factor the β-chart was saturated by.
    pub bad_betas: Vec<Q>,
    bad: UnivariatePoly,
    pub gluing: Gluing,
}

/// x-block before β: the leading x-monomial of each element has a
/// ℚ[β] coefficient.
/// Grevlex on the x-block, then β.
fn block_order(n: usize) -> MonomialOrder {
    let mut rows = Vec::new();
    let mut first = vec![1i64; n + 1];
    first[n] = 0;
    rows.push(first);
    for i in (1..n).rev() {
        let mut r = vec![0i64; n + 1];
        r[i] = -1;
        rows.push(r);
    }
    let mut last = vec![0i64; n + 1];
    last[n] = 1;
    rows.push(last);
    MonomialOrder::from_rows(rows)
}

/// Product of the leading ℚ[β]-coefficients of a block GB.
fn bad_locus(ideal: &Ideal, n: usize) -> Result<UnivariatePoly> {
    let order = block_order(n);
    let gb = ideal.groebner(&order)?;
    let mut h = UnivariatePoly::one();
    for g in gb.polys() {
        let (lm, _) = g.leading(&order).expect("nonzero");
        let key = Monomial(lm.0[..n].to_vec());
        let lc = beta_coefficients(&g, n).remove(&key).expect("leading x-monomial");
        if lc.degree() > 0 {
            // Square-free part is enough for saturation.
            let common = h.gcd(&lc);
            h = &h * &lc.div_rem(&common).0;
        }
    }
    Ok(h.monic())
}

fn beta_var(n: usize) -> Poly {
    Poly::var(n + 1, n)
}

pub fn extend_over_p1(family: &ParamIdeal) -> Result<P1Family> {
    if family.is_zero() {
        return Err(Error::Invalid("the zero family has no flat extension".into()));
    }
    let n = family.n;
    let raw = Ideal::new(n + 1, family.gens.clone())?;
    let mut bad = UnivariatePoly::one();
    let mut chart_beta = raw;
    // Saturate until the block GB has no new bad factor.
    loop {
        let h = bad_locus(&chart_beta, n)?;
        let fresh = h.div_rem(&h.gcd(&bad)).0;
        if fresh.degree() <= 0 {
            break;
        }
        chart_beta = chart_beta.saturate(&univariate_to_poly(n, &fresh))?;
        bad = &bad * &fresh;
    }
    let chart_beta = Ideal::new(n + 1, chart_beta.reduced_gens()?)?;

    let u = beta_var(n);
    let reversed: Vec<Poly> = chart_beta.gens().iter().map(|g| reverse_last(g, n)).collect();
    let chart_u = Ideal::new(n + 1, reversed)?.saturate(&u)?;
    let chart_u = Ideal::new(n + 1, chart_u.reduced_gens()?)?;

    let gluing = glue(&chart_beta, &chart_u, n)?;
    if !gluing.passed() {
        return Err(Error::GluingFailure(format!(
            "charts disagree over β ≠ 0, ∞ (u in β: {}, β in u: {})",
            gluing.u_in_beta, gluing.beta_in_u
        )));
    }
    let (roots, _) = bad.rational_roots();
    Ok(P1Family {
        n,
        chart_beta,
        chart_u,
        bad_betas: roots.into_iter().map(|r| r.0).collect(),
        bad,
        gluing,
    })
}

fn glue(chart_beta: &Ideal, chart_u: &Ideal, n: usize) -> Result<Gluing> {
    let beta_local = chart_beta.saturate(&beta_var(n))?;
    let mut u_in_beta = true;
    for g in chart_u.gens() {
        u_in_beta &= beta_local.contains(&reverse_last(g, n))?;
    }
    let mut beta_in_u = true;
    for g in chart_beta.gens() {
        beta_in_u &= chart_u.contains(&reverse_last(g, n))?;
    }
    Ok(Gluing { u_in_beta, beta_in_u })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberPoint {
    Beta(Q),
    Infinity,
}

impl FiberPoint {
    pub fn label(&self) -> String {
        match self {
            FiberPoint::Beta(b) => fmt_rational(b),
            FiberPoint::Infinity => "infinity".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlatnessMethod {
    Colength,
    /// Affine Hilbert function of the grevlex leading-term ideal.
    LeadingTerms,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatnessCertificate {
    pub method: FlatnessMethod,
    /// The generic sample points actually used.
    pub samples: Vec<String>,
    pub colength: Option<u64>,
    pub generic_colength: Option<u64>,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct Fiber {
    pub point: FiberPoint,
    pub ideal: Ideal,
    pub certificate: FlatnessCertificate,
}

impl Fiber {
    pub fn to_json(&self, names: &[String]) -> Result<Value> {
        Ok(json!({
            "point": self.point.label(),
            "value": self.ideal.render(names)?,
            "colength": self.ideal.colength()?,
            "certificate": self.certificate,
        }))
    }
}

/// Standard monomials of degree `≤ e`, for `e = 0..=top`.
fn affine_hilbert(ideal: &Ideal, top: u32) -> Result<Vec<usize>> {
    let lms = ideal.gb()?.leading_monomials();
    let n = ideal.nvars();
    let mut counts = vec![0usize; top as usize + 1];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, lms: &[Monomial], counts: &mut [usize]) {
        if i == cur.len() {
            let m = Monomial(cur.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                for c in counts.iter_mut().skip(m.degree() as usize) {
                    *c += 1;
                }
            }
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, lms, counts);
        }
        cur[i] = 0;
    }
    rec(0, top, &mut vec![0; n], &lms, &mut counts);
    Ok(counts)
}

impl P1Family {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Substitution in the chart containing the point; no flatness check.
    pub fn raw_fiber(&self, point: &FiberPoint) -> Result<Ideal> {
        let n = self.n;
        let (chart, v) = match point {
            FiberPoint::Beta(b) => (&self.chart_beta, b.clone()),
            FiberPoint::Infinity => (&self.chart_u, Q::zero()),
        };
        let gens = chart.gens().iter().map(|g| drop_last(&g.eval_var(n, &v), n)).collect();
        Ideal::new(n, gens)
    }

    /// `{2, 3, 5}`, each moved up past roots of the saturation factor.
    pub fn generic_samples(&self) -> Vec<Q> {
        let mut out: Vec<Q> = Vec::new();
        for start in [2i64, 3, 5] {
            let mut b = Q::from_integer(start.into());
            while self.bad.eval(&b).is_zero() || out.contains(&b) {
                b += Q::from_integer(1.into());
            }
            out.push(b);
        }
        out
    }

    pub fn fiber(&self, point: &FiberPoint) -> Result<Fiber> {
        let ideal = self.raw_fiber(point)?;
        let samples = self.generic_samples();
        let generic: Vec<Ideal> = par::map(&samples, |b| self.raw_fiber(&FiberPoint::Beta(b.clone())))
            .into_iter()
            .collect::<Result<_>>()?;
        let labels = samples.iter().map(fmt_rational).collect();
        let colength = ideal.colength()?;
        let generic_colength = generic[0].colength()?;
        let certificate = if generic_colength.is_some() {
            let mut passed = colength == generic_colength;
            for g in &generic[1..] {
                passed &= g.colength()? == generic_colength;
            }
            FlatnessCertificate {
                method: FlatnessMethod::Colength,
                samples: labels,
                colength,
                generic_colength,
                passed,
            }
        } else {
            let all: Vec<&Ideal> = std::iter::once(&ideal).chain(&generic).collect();
            let mut top = 0;
            for i in &all {
                for m in i.gb()?.leading_monomials() {
                    top = top.max(m.degree());
                }
            }
            let target = affine_hilbert(&generic[0], top + 2)?;
            let mut passed = true;
            for i in &all {
                passed &= affine_hilbert(i, top + 2)? == target;
            }
            FlatnessCertificate {
                method: FlatnessMethod::LeadingTerms,
                samples: labels,
                colength,
                generic_colength,
                passed,
            }
        };
        if !certificate.passed {
            return Err(Error::FlatnessCertificateFailed(format!(
                "fiber at {} does not match the generic fiber",
                point.label()
            )));
        }
        Ok(Fiber {
            point: point.clone(),
            ideal,
            certificate,
        })
    }

    /// Chart names are `x…, beta` and `x…, u`.
    pub fn to_json(&self, names: &[String], fibers: &[Fiber]) -> Result<Value> {
        let mut bn = names[..self.n].to_vec();
        bn.push("beta".into());
        let mut un = names[..self.n].to_vec();
        un.push("u".into());
        let mut fj = serde_json::Map::new();
        for f in fibers {
            fj.insert(f.point.label(), f.to_json(&names[..self.n])?);
        }
        Ok(json!({
            "charts": {
                "beta": self.chart_beta.render(&bn)?,
                "u": self.chart_u.render(&un)?,
            },
            "bad_betas": self.bad_betas.iter().map(fmt_rational).collect::<Vec<_>>(),
            "gluing": self.gluing,
            "fibers": fj,
        }))
    }
}
