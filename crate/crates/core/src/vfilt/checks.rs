use serde::Serialize;

use super::window::{hodge_from_window, Window};
use super::{v_member, CertifiedIdeal, TruncationParams, VContext};
use crate::error::{Error, Result};
use crate::graphmod::{hodge_normalize, rho, GraphElem, SFsElem};
use crate::polyalg::linalg::{kernel, Echelon, SparseVec};
use crate::polyalg::{Ideal, Monomial, Poly};
use crate::rational::Q;

fn graph_vec(e: &GraphElem) -> Option<SparseVec<(u32, Monomial)>> {
    let mut v = SparseVec::new();
    for (l, c) in e.coeffs() {
        for (m, a) in c.as_poly()?.terms() {
            v.insert((*l, m.clone()), a.clone());
        }
    }
    Some(v)
}

fn poly_vec(p: &Poly) -> SparseVec<Monomial> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct StrictnessReport {
    pub k: u32,
    pub window_dim: usize,
    pub injective: bool,
    pub ev_image_matches: bool,
    pub ev_kernel_dim: usize,
    /// Not checked at α = 0, where the window sits in ι_+𝒪 but the
    /// splitting test sees V^0 ι_+𝒪(*D).
    pub kernel_matches: Option<bool>,
    pub passed: bool,
}

/// The sequence `F_k V^α →(s+α) F_{k+1} V^α →ev F_k(𝒪 f^{−α})`, inside a window.
pub fn strictness_check(ctx: &VContext, alpha: &Q, params: TruncationParams) -> Result<StrictnessReport> {
    if alpha < &Q::from_integer(0.into()) {
        return Err(Error::Invalid("α must be non-negative".into()));
    }
    let hy = ctx.hyper();
    let k = params.k;
    let w = Window::compute(ctx, params, alpha, false)?;
    let elems = w.elements();

    // (i) s + α is injective on the window.
    let mut images = Vec::new();
    for e in &elems {
        let img = e.apply_s(hy).add(&e.scale(alpha), hy);
        images.push(graph_vec(&img).ok_or_else(|| Error::Invalid("non-polynomial image".into()))?);
    }
    let injective = kernel(images).is_empty();

    // (ii) ev images generate the Hodge ideal.
    let mut ev = Vec::new();
    for e in &elems {
        ev.push(hodge_normalize(e, k, alpha, hy)?);
    }
    let ev_ideal = Ideal::new(ctx.n(), ev.clone())?;
    let hodge = hodge_from_window(ctx, &w, false)?;
    let ev_image_matches = ev_ideal.equals(&hodge.ideal)?;

    // (iii) ker ev = (s + α)·F_k V^α.
    let ker = kernel(ev.iter().map(poly_vec).collect());
    let mut kernel_matches = true;
    let n = ctx.n();
    let check_kernel = alpha > &Q::from_integer(0.into());
    let lin = &Poly::var(n + 1, n) + &Poly::constant(n + 1, alpha.clone());
    for comb in ker.iter().filter(|_| check_kernel) {
        let mut x = GraphElem::zero();
        for (i, c) in comb {
            x = x.add(&elems[*i].scale(c), hy);
        }
        let u = ctx.numerator_over(&x, k)?;
        let Some(u1) = u.exact_div(&lin) else {
            kernel_matches = false;
            break;
        };
        let m = rho(&SFsElem::new(u1, k, hy), hy);
        let low = m.level().map_or(true, |l| l + 1 <= k) && m.is_polynomial();
        let back = m.apply_s(hy).add(&m.scale(alpha), hy);
        if !low || back != x || !ctx.member_linear(&m, alpha, false)? {
            kernel_matches = false;
            break;
        }
    }
    Ok(StrictnessReport {
        k,
        window_dim: w.dim(),
        injective,
        ev_image_matches,
        ev_kernel_dim: ker.len(),
        kernel_matches: check_kernel.then_some(kernel_matches),
        passed: injective && ev_image_matches && kernel_matches,
    })
}

#[derive(Clone, Debug)]
pub struct WallInterval {
    pub lo: Q,
    pub hi: Q,
    pub ideal: CertifiedIdeal,
}

#[derive(Clone, Debug)]
pub struct Walls {
    pub intervals: Vec<WallInterval>,
    /// Points where the ideal changes.
    pub walls: Vec<Q>,
}

/// Ĩ_k on each interval `(previous wall, wall]` of `(lo, hi]`.
pub fn jumping_walls(ctx: &VContext, lo: &Q, hi: &Q, params: TruncationParams) -> Result<Walls> {
    if lo < &Q::from_integer(0.into()) || hi <= lo {
        return Err(Error::Invalid("range must satisfy 0 ≤ lo < hi".into()));
    }
    let mut pts = ctx.candidate_walls(params.k, lo, hi);
    if pts.last() != Some(hi) {
        pts.push(hi.clone());
    }
    let ideals = pts
        .iter()
        .map(|p| super::higher_multiplier_ideal(ctx, p, params, false))
        .collect::<Result<Vec<_>>>()?;
    let mut intervals: Vec<WallInterval> = Vec::new();
    let mut prev = lo.clone();
    for (p, id) in pts.into_iter().zip(ideals) {
        if let Some(last) = intervals.last_mut() {
            if last.ideal.ideal.equals(&id.ideal)? {
                last.hi = p.clone();
                last.ideal = id;
                prev = p;
                continue;
            }
        }
        intervals.push(WallInterval {
            lo: prev.clone(),
            hi: p.clone(),
            ideal: id,
        });
        prev = p;
    }
    let mut walls: Vec<Q> = intervals.iter().map(|i| i.hi.clone()).collect();
    walls.pop();
    Ok(Walls { intervals, walls })
}

#[derive(Clone, Debug)]
pub struct LeftContinuity {
    pub alpha: Q,
    pub delta: Q,
    pub at_alpha: CertifiedIdeal,
    pub below: CertifiedIdeal,
    pub equal: bool,
    /// Direct comparison of Ĩ_k(αD) with I_k(αD).
    pub higher_equals_hodge: bool,
}

/// Half the gap from α to the nearest candidate wall below it.
pub fn left_delta(ctx: &VContext, k: u32, alpha: &Q) -> Q {
    let zero = Q::from_integer(0.into());
    let below: Vec<Q> = ctx.candidate_walls(k, &zero, alpha).into_iter().filter(|w| w < alpha).collect();
    let nearest = below.last().cloned().unwrap_or(zero);
    (alpha - nearest) / Q::from_integer(2.into())
}

pub fn left_continuity_test(ctx: &VContext, alpha: &Q, params: TruncationParams) -> Result<LeftContinuity> {
    let delta = left_delta(ctx, params.k, alpha);
    let below_alpha = alpha - &delta;
    let at_alpha = super::hodge_ideal(ctx, alpha, params, false)?;
    let below = super::hodge_ideal(ctx, &below_alpha, params, false)?;
    let equal = at_alpha.ideal.equals(&below.ideal)?;
    let higher = super::higher_multiplier_ideal(ctx, alpha, params, false)?;
    let higher_equals_hodge = higher.ideal.equals(&at_alpha.ideal)?;
    Ok(LeftContinuity {
        alpha: alpha.clone(),
        delta,
        at_alpha,
        below,
        equal,
        higher_equals_hodge,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimVerdict {
    VerifiedInWindow,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct ClaimReport {
    pub verdict: ClaimVerdict,
    /// Per claimed generator: a certified witness was found.
    pub soundness: Vec<bool>,
    /// A window element of Ĩ_k outside the claim, with its witness.
    pub counterexample: Option<(Poly, GraphElem)>,
    pub reason: String,
}

/// Soundness and window-completeness of a claimed Ĩ_k(αD).
pub fn verify_claimed_ideal(ctx: &VContext, claimed: &Ideal, alpha: &Q, params: TruncationParams) -> Result<ClaimReport> {
    match verify_inner(ctx, claimed, alpha, params) {
        Err(Error::Budget(msg)) => Ok(ClaimReport {
            verdict: ClaimVerdict::Inconclusive,
            soundness: vec![],
            counterexample: None,
            reason: format!("budget: {msg}"),
        }),
        r => r,
    }
}

fn verify_inner(ctx: &VContext, claimed: &Ideal, alpha: &Q, params: TruncationParams) -> Result<ClaimReport> {
    let w = Window::compute(ctx, params, alpha, false)?;
    let tops = w.top_vectors();
    let mut ech: Echelon<Monomial> = Echelon::new();
    for (p, _) in &tops {
        ech.insert(poly_vec(p));
    }
    let mut soundness = Vec::new();
    for g in claimed.gens() {
        let ok = match ech.solve(&poly_vec(g)) {
            None => false,
            Some(comb) => {
                let mut e = GraphElem::zero();
                for (i, c) in &comb {
                    e = e.add(&w.element(tops[*i].1).scale(c), ctx.hyper());
                }
                v_member(ctx, &e, alpha)?.in_v()
            }
        };
        soundness.push(ok);
    }
    for (p, v) in &tops {
        if !claimed.contains(p)? {
            let e = w.element(v);
            if v_member(ctx, &e, alpha)?.in_v() {
                return Ok(ClaimReport {
                    verdict: ClaimVerdict::Refuted,
                    soundness,
                    counterexample: Some((p.clone(), e)),
                    reason: "window element outside the claimed ideal".into(),
                });
            }
            return Err(Error::CertificateFailed("window witness failed membership".into()));
        }
    }
    if soundness.iter().all(|s| *s) {
        Ok(ClaimReport {
            verdict: ClaimVerdict::VerifiedInWindow,
            soundness,
            counterexample: None,
            reason: "all generators witnessed; no window element outside the claim".into(),
        })
    } else {
        Ok(ClaimReport {
            verdict: ClaimVerdict::Inconclusive,
            soundness,
            counterexample: None,
            reason: "some claimed generator has no witness inside the window".into(),
        })
    }
}
