use serde::Serialize;
use serde_json::{json, Value};

use super::{v_member, MembershipCertificate, Plan, VContext};
use crate::bfun::BFunctionReport;
use crate::error::{Error, Result};
use crate::graphmod::{hodge_closed, GraphElem, LocalizedPoly};
use crate::par;
use crate::polyalg::linalg::{kernel, span_basis, Combination, Echelon, SparseVec};
use crate::polyalg::{render, Ideal, Monomial, MonomialOrder, Poly};
use crate::rational::{fmt_rational, Q};

/// The finite window: leading coefficient degree `d`, tail degree, level `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationParams {
    pub deg_bound: u32,
    pub tail_deg: u32,
    pub k: u32,
}

impl TruncationParams {
    pub fn new(k: u32, deg_bound: u32, tail_deg: Option<u32>, deg_f: u32) -> Result<Self> {
        let tail_deg = tail_deg.unwrap_or(deg_bound + deg_f);
        if tail_deg < deg_bound {
            return Err(Error::Invalid(format!("tail_deg {tail_deg} < deg_bound {deg_bound}")));
        }
        Ok(TruncationParams { deg_bound, tail_deg, k })
    }

    pub fn default_for(k: u32, deg_f: u32) -> Self {
        TruncationParams::new(k, 8, None, deg_f).unwrap()
    }
}

fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; n], &mut out);
    let ord = MonomialOrder::grevlex(n);
    out.sort_by(|a, b| ord.cmp(&a.0, &b.0));
    out
}

/// All elements of `F_{k+1}V^α` (or `V^{>α}`) inside a window, as the kernel
/// of the splitting test.
pub struct Window {
    pub params: TruncationParams,
    pub alpha: Q,
    pub strict: bool,
    columns: Vec<(u32, Monomial)>,
    basis: Vec<SparseVec<usize>>,
    n: usize,
}

impl Window {
    pub fn compute(ctx: &VContext, params: TruncationParams, alpha: &Q, strict: bool) -> Result<Window> {
        let n = ctx.n();
        let k = params.k;
        let mut columns = Vec::new();
        for l in 0..k {
            for m in monomials_up_to(n, params.tail_deg) {
                columns.push((l, m));
            }
        }
        for m in monomials_up_to(n, params.deg_bound) {
            columns.push((k, m));
        }
        let plan: Plan = ctx.plan(k, alpha, strict);
        ctx.lattice(plan.k + plan.big_k)?;
        let cols: Vec<Result<SparseVec<Monomial>>> = par::map(&columns, |(l, m)| {
            let e = GraphElem::term(*l, LocalizedPoly::poly(Poly::term(n, m.clone(), Q::from_integer(1.into()))));
            let u = ctx.numerator_over(&e, k)?;
            ctx.column(&plan, &u)
        });
        let cols = cols.into_iter().collect::<Result<Vec<_>>>()?;
        let ker: Vec<SparseVec<usize>> = kernel(cols).into_iter().collect();
        let basis = span_basis(ker);
        Ok(Window {
            params,
            alpha: alpha.clone(),
            strict,
            columns,
            basis,
            n,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<usize>] {
        &self.basis
    }

    pub fn element(&self, v: &Combination) -> GraphElem {
        let mut levels = vec![Poly::zero(self.n); self.params.k as usize + 1];
        for (i, c) in v {
            let (l, m) = &self.columns[*i];
            levels[*l as usize].add_term(m.clone(), c.clone());
        }
        GraphElem::from_polys(&levels)
    }

    pub fn elements(&self) -> Vec<GraphElem> {
        self.basis.iter().map(|v| self.element(v)).collect()
    }

    fn level_part(&self, v: &Combination, level: u32) -> Poly {
        let mut p = Poly::zero(self.n);
        for (i, c) in v {
            let (l, m) = &self.columns[*i];
            if *l == level {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    }

    /// Levels `0..=k` of a window vector as polynomials.
    pub fn levels(&self, v: &Combination) -> Vec<Poly> {
        (0..=self.params.k).map(|l| self.level_part(v, l)).collect()
    }

    /// Basis vectors with nonzero level-k part; their leading coefficients
    /// span the window part of `gr^F_{k+1}`.
    pub fn top_vectors(&self) -> Vec<(Poly, &Combination)> {
        self.basis
            .iter()
            .map(|v| (self.level_part(v, self.params.k), v))
            .filter(|(p, _)| !p.is_zero())
            .collect()
    }

    /// `hodge_closed` images of the whole basis.
    pub fn hodge_images(&self, ctx: &VContext) -> Vec<Poly> {
        let alpha = self.alpha.clone();
        let k = self.params.k;
        par::map(&self.basis, |v| hodge_closed(&self.levels(v), k, &alpha, ctx.hyper()))
    }
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub generator: Poly,
    pub element: GraphElem,
    pub certificate: Option<MembershipCertificate>,
}

/// An ideal together with window witnesses for its generators.
#[derive(Clone, Debug)]
pub struct CertifiedIdeal {
    pub ideal: Ideal,
    pub generators: Vec<Poly>,
    pub window: TruncationParams,
    pub alpha: Q,
    pub witnesses: Vec<Option<Witness>>,
    /// Every generator has a witness that passed membership.
    pub complete_up_to_window: bool,
}

impl CertifiedIdeal {
    pub fn generator_strings(&self, names: &[String]) -> Vec<String> {
        let mut v: Vec<String> = self.generators.iter().map(|g| render(g, names)).collect();
        v.sort();
        v
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        let mut gens: Vec<(String, Value)> = self
            .generators
            .iter()
            .zip(&self.witnesses)
            .map(|(g, w)| {
                let wj = match w {
                    None => Value::Null,
                    Some(w) => json!({
                        "element": w.element.render(names),
                        "bfunction": w.certificate.as_ref().map(|c| BFunctionReport::from(&c.bfunction)),
                        "verdict": w.certificate.as_ref().map(|c| c.verdict),
                    }),
                };
                let g = render(g, names);
                (g.clone(), json!({"generator": g, "witness": wj}))
            })
            .collect();
        gens.sort_by(|a, b| a.0.cmp(&b.0));
        json!({
            "alpha": fmt_rational(&self.alpha),
            "generators": self.generator_strings(names),
            "window": self.window,
            "witnesses": gens.into_iter().map(|g| g.1).collect::<Vec<_>>(),
            "complete_up_to_window": self.complete_up_to_window,
        })
    }
}

/// Reduced generators, with the window witness that produces each one.
fn certify(
    ctx: &VContext,
    window: &Window,
    images: &[(Poly, GraphElem)],
    certify_witnesses: bool,
) -> Result<CertifiedIdeal> {
    let n = window.n;
    let ideal = Ideal::new(n, images.iter().map(|p| p.0.clone()).collect())?;
    let generators = ideal.reduced_gens()?;
    let mut ech: Echelon<Monomial> = Echelon::new();
    for (p, _) in images {
        ech.insert(p.terms().map(|(m, c)| (m.clone(), c.clone())).collect());
    }
    let mut witnesses = Vec::new();
    let mut complete = true;
    for g in &generators {
        let target: SparseVec<Monomial> = g.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        let w = match ech.solve(&target) {
            None => None,
            Some(comb) => {
                let mut e = GraphElem::zero();
                for (i, c) in &comb {
                    e = e.add(&images[*i].1.scale(c), ctx.hyper());
                }
                let certificate = if certify_witnesses {
                    Some(v_member(ctx, &e, &window.alpha)?)
                } else {
                    None
                };
                Some(Witness {
                    generator: g.clone(),
                    element: e,
                    certificate,
                })
            }
        };
        let ok = match &w {
            None => false,
            Some(w) => w.certificate.as_ref().map_or(true, |c| c.in_v()),
        };
        complete &= ok;
        witnesses.push(w);
    }
    Ok(CertifiedIdeal {
        ideal,
        generators,
        window: window.params,
        alpha: window.alpha.clone(),
        witnesses,
        complete_up_to_window: complete,
    })
}

fn check_alpha(alpha: &Q) -> Result<()> {
    if alpha <= &Q::from_integer(0.into()) {
        return Err(Error::Invalid("α must be positive".into()));
    }
    Ok(())
}

/// Ĩ_k(αD): leading coefficients of window elements of `F_{k+1}V^α`.
pub fn higher_multiplier_ideal(ctx: &VContext, alpha: &Q, params: TruncationParams, certify_witnesses: bool) -> Result<CertifiedIdeal> {
    check_alpha(alpha)?;
    let w = Window::compute(ctx, params, alpha, false)?;
    let images: Vec<(Poly, GraphElem)> = w.top_vectors().into_iter().map(|(p, v)| (p, w.element(v))).collect();
    certify(ctx, &w, &images, certify_witnesses)
}

/// I_k(αD): `ev_{s=−α}` images of window elements of `F_{k+1}V^α`, times f^k.
pub fn hodge_ideal(ctx: &VContext, alpha: &Q, params: TruncationParams, certify_witnesses: bool) -> Result<CertifiedIdeal> {
    check_alpha(alpha)?;
    let w = Window::compute(ctx, params, alpha, false)?;
    hodge_from_window(ctx, &w, certify_witnesses)
}

pub(crate) fn hodge_from_window(ctx: &VContext, w: &Window, certify_witnesses: bool) -> Result<CertifiedIdeal> {
    let imgs = w.hodge_images(ctx);
    let images: Vec<(Poly, GraphElem)> = imgs
        .into_iter()
        .zip(w.elements())
        .filter(|(p, _)| !p.is_zero())
        .collect();
    certify(ctx, w, &images, certify_witnesses)
}
