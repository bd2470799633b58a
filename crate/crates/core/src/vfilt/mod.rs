//! The V-filtration along t = 0 on ι_+𝒪: membership, windows, higher
//! multiplier ideals and Hodge ideals.

mod checks;
mod window;

pub use checks::{
    jumping_walls, left_continuity_test, left_delta, strictness_check, verify_claimed_ideal, ClaimVerdict, ClaimReport,
    LeftContinuity, StrictnessReport, WallInterval, Walls,
};
pub use window::{higher_multiplier_ideal, hodge_ideal, CertifiedIdeal, TruncationParams, Window, Witness};

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::bfun::{element_bfunction, global_bfunction_with, s_form, univariate_in_s, AnnFs, BFunction, BfOptions, GlobalBFunction};
use crate::error::{Error, Result};
use crate::graphmod::{embed_s, GraphElem, Hyper};
use crate::polyalg::linalg::SparseVec;
use crate::polyalg::{Monomial, Poly, UnivariatePoly};
use crate::rational::{ceil_int, Q};
use crate::weyl::{LeftGb, WeylElem};

/// Everything about f that the V-filtration computations share.
pub struct VContext {
    ann: AnnFs,
    bfun: GlobalBFunction,
    opts: BfOptions,
    lattices: Mutex<BTreeMap<u32, Arc<LeftGb>>>,
}

impl VContext {
    pub fn new(f: &Poly, opts: &BfOptions) -> Result<Self> {
        let ann = crate::bfun::ann_fs(f, opts)?;
        let bfun = global_bfunction_with(&ann, opts)?;
        Ok(VContext {
            ann,
            bfun,
            opts: *opts,
            lattices: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn hyper(&self) -> &Hyper {
        self.ann.hyper()
    }

    pub fn n(&self) -> usize {
        self.hyper().n()
    }

    pub fn ann(&self) -> &AnnFs {
        &self.ann
    }

    pub fn bfunction(&self) -> &GlobalBFunction {
        &self.bfun
    }

    pub fn options(&self) -> &BfOptions {
        &self.opts
    }

    /// Positions `−λ` of the roots of b_f with multiplicity, increasing.
    pub fn positions(&self) -> Vec<(Q, u32)> {
        self.bfun.bfunction.positions()
    }

    /// Candidate walls `β + j` (j ≥ −k) in `(lo, hi]`, increasing.
    pub fn candidate_walls(&self, k: u32, lo: &Q, hi: &Q) -> Vec<Q> {
        let mut out = Vec::new();
        for (b, _) in self.positions() {
            let mut j = -(k as i64);
            loop {
                let w = &b + Q::from_integer(j.into());
                if &w > hi {
                    break;
                }
                if &w > lo && !out.contains(&w) {
                    out.push(w);
                }
                j += 1;
            }
        }
        out.sort();
        out
    }

    /// Left GB of `Ann f^{s−M} + D[s]·f^M`.
    pub(crate) fn lattice(&self, m: u32) -> Result<Arc<LeftGb>> {
        if let Some(gb) = self.lattices.lock().unwrap().get(&m) {
            return Ok(gb.clone());
        }
        let alg = self.ann.algebra();
        let mut gens = self.ann.shifted(-(m as i64));
        gens.push(WeylElem::from_poly(alg, &self.hyper().f_pow(m)));
        let gb = Arc::new(LeftGb::compute(&gens, &alg.grevlex(), self.opts.gb)?);
        self.lattices.lock().unwrap().insert(m, gb.clone());
        Ok(gb)
    }

    /// The splitting test for elements `u f^{s−k}`, at `α` (or `> α` when `strict`).
    pub fn plan(&self, k: u32, alpha: &Q, strict: bool) -> Plan {
        let pos = self.positions();
        let min = pos[0].0.clone();
        let gap = alpha - &min;
        let mut big_k = ceil_int(&gap).max(0);
        if strict && Q::from_integer(big_k.into()) + &min <= *alpha {
            big_k += 1;
        }
        let mut p = UnivariatePoly::one();
        for j in -(k as i64)..big_k {
            for (b, mult) in &pos {
                let w = b + Q::from_integer(j.into());
                let keep = if strict { &w > alpha } else { &w >= alpha };
                if keep {
                    for _ in 0..*mult {
                        p = &p * &UnivariatePoly::linear(w.clone());
                    }
                }
            }
        }
        Plan {
            k,
            big_k: big_k as u32,
            p,
            p_xs: None,
        }
        .with_poly(self.n())
    }

    /// `NF(q)` for the element `u f^{s−k}`; zero exactly on members.
    pub(crate) fn column(&self, plan: &Plan, u: &Poly) -> Result<SparseVec<Monomial>> {
        let n = self.n();
        let gb = self.lattice(plan.k + plan.big_k)?;
        let g = plan.p_xs.as_ref().expect("prepared") * u;
        let shift = &Poly::var(n + 1, n) - &Poly::constant(n + 1, Q::from_integer(plan.big_k.into()));
        let qk = g.substitute(n, &shift);
        let nf = gb.reduce(&WeylElem::from_poly_s(self.ann.algebra(), &qk))?;
        Ok(nf.terms().map(|(m, c)| (m.clone(), c.clone())).collect())
    }

    /// The ℚ[x, s] numerator of `m` over `f^{s−k}`.
    pub(crate) fn numerator_over(&self, m: &GraphElem, k: u32) -> Result<Poly> {
        let (u, big_n) = s_form(m, self.hyper());
        if big_n > k {
            return Err(Error::Invalid(format!("element has pole order {big_n} > {k}")));
        }
        Ok(&u * &embed_s(&self.hyper().f_pow(k - big_n)))
    }

    /// Linear-algebra membership `m ∈ V^α` (or `V^{>α}`).
    pub fn member_linear(&self, m: &GraphElem, alpha: &Q, strict: bool) -> Result<bool> {
        if m.is_zero() {
            return Ok(true);
        }
        let (_, big_n) = s_form(m, self.hyper());
        let plan = self.plan(big_n, alpha, strict);
        let u = self.numerator_over(m, big_n)?;
        Ok(self.column(&plan, &u)?.is_empty())
    }
}

/// `b(s)` and the target lattice for one membership test.
#[derive(Clone, Debug)]
pub struct Plan {
    pub k: u32,
    pub big_k: u32,
    pub p: UnivariatePoly,
    p_xs: Option<Poly>,
}

impl Plan {
    fn with_poly(mut self, n: usize) -> Self {
        self.p_xs = Some(univariate_in_s(n, &self.p));
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    InVGreater,
    InV,
    NotInV,
}

#[derive(Clone, Debug)]
pub struct MembershipCertificate {
    pub element: GraphElem,
    pub alpha: Q,
    pub bfunction: BFunction,
    pub verdict: Verdict,
}

impl MembershipCertificate {
    pub fn in_v(&self) -> bool {
        self.verdict != Verdict::NotInV
    }
}

/// Membership read off the element b-function.
pub fn v_member(ctx: &VContext, m: &GraphElem, alpha: &Q) -> Result<MembershipCertificate> {
    let b = element_bfunction(&ctx.ann, m, &ctx.opts)?;
    let verdict = if b.in_v_strict(alpha) {
        Verdict::InVGreater
    } else if b.in_v(alpha) {
        Verdict::InV
    } else {
        Verdict::NotInV
    };
    Ok(MembershipCertificate {
        element: m.clone(),
        alpha: alpha.clone(),
        bfunction: b,
        verdict,
    })
}

#[cfg(test)]
mod tests;
