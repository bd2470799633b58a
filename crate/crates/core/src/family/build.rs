use num_traits::Zero;
use serde_json::{json, Value};

use super::{extend_over_p1, Fiber, FiberPoint, P1Family, ParamIdeal};
use crate::error::{Error, Result};
use crate::graphmod::hodge_closed_param;
use crate::par;
use crate::polyalg::linalg::{Echelon, SparseVec};
use crate::polyalg::{Ideal, Monomial, Poly};
use crate::rational::{fmt_rational, Q};
use crate::vfilt::{higher_multiplier_ideal, hodge_ideal, CertifiedIdeal, TruncationParams, VContext, Window};

/// The parametric Hodge ideal on `(lo, hi]`, where V^β does not move.
#[derive(Clone, Debug)]
pub struct FamilyBuild {
    pub ideal: ParamIdeal,
    pub lo: Q,
    pub hi: Q,
    /// Points of `(lo, hi)` where the specialization was compared with `hodge_ideal`.
    pub checked_at: Vec<Q>,
}

impl FamilyBuild {
    pub fn to_json(&self, names: &[String]) -> Value {
        let mut bn = names.to_vec();
        bn.push("beta".into());
        json!({
            "interval": [fmt_rational(&self.lo), fmt_rational(&self.hi)],
            "generators": self.ideal.render(&bn),
            "checked_at": self.checked_at.iter().map(fmt_rational).collect::<Vec<_>>(),
        })
    }
}

/// The candidate wall just below α, or 0.
fn previous_wall(ctx: &VContext, k: u32, alpha: &Q) -> Q {
    let zero = Q::zero();
    ctx.candidate_walls(k, &zero, alpha)
        .into_iter()
        .filter(|w| w < alpha)
        .last()
        .unwrap_or(zero)
}

pub fn build_family_from_hodge(ctx: &VContext, alpha: &Q, params: TruncationParams) -> Result<FamilyBuild> {
    if alpha <= &Q::zero() {
        return Err(Error::Invalid("α must be positive".into()));
    }
    let n = ctx.n();
    let k = params.k;
    let lo = previous_wall(ctx, k, alpha);
    let w = Window::compute(ctx, params, alpha, false)?;
    let images: Vec<Poly> = par::map(w.basis(), |v| hodge_closed_param(&w.levels(v), k, ctx.hyper()));
    let mut ech: Echelon<Monomial> = Echelon::new();
    let mut gens = Vec::new();
    for p in images.into_iter().filter(|p| !p.is_zero()) {
        let v: SparseVec<Monomial> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        if ech.insert(v).is_none() {
            gens.push(p);
        }
    }
    // Alternate reduced GB and content removal until both are stable.
    let mut ideal = ParamIdeal::new(n, gens)?;
    loop {
        let next = ParamIdeal::new(n, Ideal::new(n + 1, ideal.gens().to_vec())?.reduced_gens()?)?;
        if next.gens() == ideal.gens() {
            break;
        }
        ideal = next;
    }
    let span = alpha - &lo;
    let checked_at = vec![
        &lo + &span / Q::from_integer(2.into()),
        &lo + &span * Q::new(2.into(), 3.into()),
    ];
    for b in &checked_at {
        let direct = hodge_ideal(ctx, b, params, false)?;
        if !ideal.specialize(b)?.equals(&direct.ideal)? {
            return Err(Error::WindowIncomplete(format!(
                "parametric Hodge ideal disagrees with the direct computation at β = {}",
                fmt_rational(b)
            )));
        }
    }
    Ok(FamilyBuild {
        ideal,
        lo,
        hi: alpha.clone(),
        checked_at,
    })
}

#[derive(Clone, Debug)]
pub struct Thm12Report {
    pub build: FamilyBuild,
    pub family: P1Family,
    pub limit: Fiber,
    pub higher: CertifiedIdeal,
    pub equal: bool,
    /// Both sides come from the same window; an incomplete window can make
    /// the family a subfamily.
    pub window_complete: bool,
}

impl Thm12Report {
    pub fn to_json(&self, names: &[String]) -> Result<Value> {
        Ok(json!({
            "family": self.build.to_json(names),
            "p1": self.family.to_json(names, std::slice::from_ref(&self.limit))?,
            "limit_at_infinity": self.limit.ideal.render(names)?,
            "higher_multiplier_ideal": self.higher.generator_strings(names),
            "equal": self.equal,
            "window_complete": self.window_complete,
        }))
    }
}

/// The limit at ∞ of the parametric Hodge ideal against Ĩ_k(αD).
pub fn theorem_1_2_check(ctx: &VContext, alpha: &Q, params: TruncationParams) -> Result<Thm12Report> {
    let build = build_family_from_hodge(ctx, alpha, params)?;
    let family = extend_over_p1(&build.ideal)?;
    let limit = family.fiber(&FiberPoint::Infinity)?;
    let higher = higher_multiplier_ideal(ctx, alpha, params, false)?;
    let equal = limit.ideal.equals(&higher.ideal)?;
    let window_complete = higher.complete_up_to_window;
    Ok(Thm12Report {
        build,
        family,
        limit,
        higher,
        equal,
        window_complete,
    })
}

