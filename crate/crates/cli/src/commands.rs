use serde_json::{json, Value};
use vf_core::bfun::{ann_fs, global_bfunction, kill_check, BFunctionReport};
use vf_core::family::{extend_over_p1, theorem_1_2_check, FiberPoint, ParamIdeal};
use vf_core::graphmod::GraphElem;
use vf_core::polyalg::{parse_poly, render, Ideal};
use vf_core::rational::fmt_rational;
use vf_core::vfilt::{
    higher_multiplier_ideal, hodge_ideal, jumping_walls, left_continuity_test, v_member, verify_claimed_ideal,
    CertifiedIdeal, ClaimVerdict, VContext,
};
use vf_core::{Error, Result};

use crate::session::{alpha, monomial_order, parse_q, parse_vars, split_gens, Common, Session};

/// A finished command: JSON result, text rendering, and whether every
/// check it ran passed.
pub struct Outcome {
    pub result: Value,
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(result: Value, text: String) -> Self {
        Outcome { result, text, passed: true }
    }
}

/// Reduced generators under the chosen order, sorted by leading term then string.
pub fn ordered_gens(ideal: &Ideal, c: &Common, names: &[String]) -> Result<Vec<String>> {
    let order = monomial_order(c.order, ideal.nvars());
    let mut gens: Vec<(Vec<u32>, String)> = ideal
        .groebner(&order)?
        .polys()
        .into_iter()
        .map(|p| {
            let lm = p.leading(&order).map(|(m, _)| m.0.clone()).unwrap_or_default();
            (lm, render(&p, names))
        })
        .collect();
    gens.sort_by(|a, b| order.cmp(&a.0, &b.0).then_with(|| a.1.cmp(&b.1)));
    Ok(gens.into_iter().map(|g| g.1).collect())
}

fn context(s: &Session) -> Result<VContext> {
    VContext::new(&s.f, &s.opts)
}

pub fn bfun(c: &Common) -> Result<Outcome> {
    let s = Session::new(c)?;
    let g = global_bfunction(&s.f, &s.opts)?;
    let rep = BFunctionReport::from(&g.bfunction);
    let minimal = g.minimality.iter().all(|m| m.1);
    let result = json!({
        "bfunction": rep,
        "certificate": {
            "operator": g.certificate.render(&s.vars),
            "verified": g.certificate_verified,
        },
        "minimality": {
            "degree_bound": g.degree_bound,
            "roots": g.minimality.iter().map(|(r, ok)| json!({"root": fmt_rational(r), "infeasible_without": ok})).collect::<Vec<_>>(),
        },
    });
    let text = format!(
        "b_f(s) = {}\ncertificate verified: {}\nminimal within degree {}: {}\n",
        rep.factored, g.certificate_verified, g.degree_bound, minimal
    );
    Ok(Outcome {
        result,
        text,
        passed: g.certificate_verified,
    })
}

pub fn annfs(c: &Common) -> Result<Outcome> {
    let s = Session::new(c)?;
    let ann = ann_fs(&s.f, &s.opts)?;
    let gens: Vec<String> = ann.generators().iter().map(|g| g.render(&s.vars)).collect();
    let kills = kill_check(&ann)?;
    let text = format!("{}\nannihilates f^s: {kills}\n", gens.join("\n"));
    Ok(Outcome {
        result: json!({"generators": gens, "kill_check": kills}),
        text,
        passed: kills,
    })
}

/// `--gens "g0; g1; …"` is read as `Σ g_ℓ ∂_t^ℓ δ`.
pub fn vmember(c: &Common) -> Result<Outcome> {
    let s = Session::new(c)?;
    let a = alpha(c)?;
    let src = c.gens.as_deref().ok_or_else(|| Error::Invalid("--gens is required (level coefficients of the element)".into()))?;
    let levels = split_gens(src).iter().map(|g| parse_poly(g, &s.vars)).collect::<Result<Vec<_>>>()?;
    let e = GraphElem::from_polys(&levels);
    let ctx = context(&s)?;
    let cert = v_member(&ctx, &e, &a)?;
    let rep = BFunctionReport::from(&cert.bfunction);
    let text = format!("{}: {:?}\nb_m(s) = {}\n", e.render(&s.vars), cert.verdict, rep.factored);
    Ok(Outcome::ok(
        json!({
            "element": e.render(&s.vars),
            "alpha": fmt_rational(&a),
            "verdict": cert.verdict,
            "in_v": cert.in_v(),
            "bfunction": rep,
        }),
        text,
    ))
}

fn given_ideal(s: &Session, c: &Common) -> Result<Option<Vec<String>>> {
    match &c.verify {
        None => Ok(None),
        Some(path) => {
            let src = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {path}: {e}")))?;
            let gens = split_gens(&src);
            for g in &gens {
                parse_poly(g, &s.vars)?;
            }
            Ok(Some(gens))
        }
    }
}

fn ideal_outcome(s: &Session, c: &Common, ctx: &VContext, id: &CertifiedIdeal, label: &str) -> Result<Outcome> {
    let mut result = id.to_json(&s.vars);
    let gens = ordered_gens(&id.ideal, c, &s.vars)?;
    result["generators"] = json!(gens);
    result["k"] = json!(c.k);
    let mut text = format!("{label} = ({})\n", gens.join(", "));
    let mut passed = true;
    if let Some(given) = given_ideal(s, c)? {
        let gi = s.parse_gens(&given.join(";"))?;
        let mut redundant = Vec::new();
        for (i, g) in gi.gens().iter().enumerate() {
            let others: Vec<_> = gi.gens().iter().enumerate().filter(|(j, _)| *j != i).map(|p| p.1.clone()).collect();
            if Ideal::new(s.n(), others)?.contains(g)? {
                redundant.push(given[i].clone());
            }
        }
        let matches = gi.equals(&id.ideal)?;
        let claim = if label.starts_with('Ĩ') {
            let r = verify_claimed_ideal(ctx, &gi, &id.alpha, id.window)?;
            Some(r.verdict)
        } else {
            None
        };
        passed = matches;
        text += &format!("given generators match: {matches}\n");
        if !redundant.is_empty() {
            text += &format!("redundant given generators: {}\n", redundant.join(", "));
        }
        result["verify"] = json!({
            "given": given,
            "redundant_given": redundant,
            "matches": matches,
            "claim_verdict": claim,
        });
    }
    Ok(Outcome { result, text, passed })
}

pub fn hmi(c: &Common) -> Result<Outcome> {
    let s = Session::new(c)?;
    let a = alpha(c)?;
    let ctx = context(&s)?;
    let id = higher_multiplier_ideal(&ctx, &a, s.window(c)?, true)?;
    let label = format!("Ĩ_{}({}·D)", c.k, fmt_rational(&a));
    ideal_outcome(&s, c, &ctx, &id, &label)
}

pub fn hodge(c: &Common) -> Result<Outcome> {
    let s = Session::new(c)?;
    let a = alpha(c)?;
    let ctx = context(&s)?;
    let id = hodge_ideal(&ctx, &a, s.window(c)?, true)?;
    let label = format!("I_{}({}·D)", c.k, fmt_rational(&a));
    ideal_outcome(&s, c, &ctx, &id, &label)
}

pub fn walls(c: &Common) -> Result<Outcome> {
    let s = Session::new(c)?;
    let (lo, hi) = (parse_q(&c.lo)?, parse_q(&c.hi)?);
    let ctx = context(&s)?;
    let w = jumping_walls(&ctx, &lo, &hi, s.window(c)?)?;
    let mut text = String::new();
    let mut intervals = Vec::new();
    for i in &w.intervals {
        let gens = ordered_gens(&i.ideal.ideal, c, &s.vars)?;
        text += &format!("({}, {}]: ({})\n", fmt_rational(&i.lo), fmt_rational(&i.hi), gens.join(", "));
        intervals.push(json!({"lo": fmt_rational(&i.lo), "hi": fmt_rational(&i.hi), "generators": gens}));
    }
    let walls: Vec<String> = w.walls.iter().map(fmt_rational).collect();
    text += &format!("walls: {}\n", walls.join(", "));
    Ok(Outcome::ok(json!({"k": c.k, "intervals": intervals, "walls": walls}), text))
}

pub fn leftcont(c: &Common) -> Result<Outcome> {
    let s = Session::new(c)?;
    let a = alpha(c)?;
    let ctx = context(&s)?;
    let r = left_continuity_test(&ctx, &a, s.window(c)?)?;
    let at = ordered_gens(&r.at_alpha.ideal, c, &s.vars)?;
    let below = ordered_gens(&r.below.ideal, c, &s.vars)?;
    let text = format!(
        "I_{k}({a}·D) = ({})\nI_{k}(({a} - {d})·D) = ({})\nequal: {}\nĨ_{k} = I_{k}: {}\n",
        at.join(", "),
        below.join(", "),
        r.equal,
        r.higher_equals_hodge,
        k = c.k,
        a = fmt_rational(&a),
        d = fmt_rational(&r.delta),
    );
    Ok(Outcome::ok(
        json!({
            "alpha": fmt_rational(&a),
            "delta": fmt_rational(&r.delta),
            "at_alpha": at,
            "below": below,
            "equal": r.equal,
            "higher_equals_hodge": r.higher_equals_hodge,
        }),
        text,
    ))
}

/// `--gens` in the variables of `--vars` (default `x,y`) and `beta`.
pub fn family_limit(c: &Common) -> Result<Outcome> {
    let vars = parse_vars(c.vars.as_deref().unwrap_or("x,y"))?;
    let n = vars.len();
    let mut names = vars.clone();
    names.push("beta".into());
    let src = c.gens.as_deref().ok_or_else(|| Error::Invalid("--gens is required".into()))?;
    let gens = split_gens(src).iter().map(|g| parse_poly(g, &names)).collect::<Result<Vec<_>>>()?;
    let fam = extend_over_p1(&ParamIdeal::new(n, gens)?)?;
    let mut points = vec![FiberPoint::Infinity];
    if let Some(at) = &c.at {
        for b in at.split(',').filter(|b| !b.trim().is_empty()) {
            points.push(FiberPoint::Beta(parse_q(b)?));
        }
    }
    let fibers = points.iter().map(|p| fam.fiber(p)).collect::<Result<Vec<_>>>()?;
    let mut result = fam.to_json(&vars, &fibers)?;
    let mut text = String::new();
    for f in &fibers {
        let g = ordered_gens(&f.ideal, c, &vars)?;
        result["fibers"][f.point.label()]["value"] = json!(g);
        text += &format!(
            "β = {}: ({}), colength {}\n",
            f.point.label(),
            g.join(", "),
            f.certificate.colength.map_or("∞".into(), |v| v.to_string())
        );
    }
    Ok(Outcome::ok(result, text))
}

pub fn thm12(c: &Common) -> Result<Outcome> {
    let s = Session::new(c)?;
    let a = alpha(c)?;
    let ctx = context(&s)?;
    let r = theorem_1_2_check(&ctx, &a, s.window(c)?)?;
    let mut result = r.to_json(&s.vars)?;
    let limit = ordered_gens(&r.limit.ideal, c, &s.vars)?;
    let higher = ordered_gens(&r.higher.ideal, c, &s.vars)?;
    result["limit_at_infinity"] = json!(limit);
    result["higher_multiplier_ideal"] = json!(higher);
    let text = format!(
        "family on ({}, {}]\nlimit at ∞: ({})\nĨ_{}: ({})\nequal: {}\nwindow complete: {}\n",
        fmt_rational(&r.build.lo),
        fmt_rational(&r.build.hi),
        limit.join(", "),
        c.k,
        higher.join(", "),
        r.equal,
        r.window_complete
    );
    Ok(Outcome {
        result,
        text,
        passed: r.equal,
    })
}

/// A claimed Ĩ_k from `--gens` or the `--verify` file.
pub fn verify(c: &Common) -> Result<Outcome> {
    let s = Session::new(c)?;
    let a = alpha(c)?;
    let src = match (&c.gens, &c.verify) {
        (Some(g), _) => g.clone(),
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| Error::Invalid(format!("cannot read {p}: {e}")))?,
        (None, None) => return Err(Error::Invalid("--gens or --verify is required".into())),
    };
    let claimed = s.parse_gens(&src)?;
    let ctx = context(&s)?;
    let r = verify_claimed_ideal(&ctx, &claimed, &a, s.window(c)?)?;
    if r.verdict == ClaimVerdict::Inconclusive && r.reason.starts_with("budget") {
        return Err(Error::Budget(r.reason));
    }
    let counter = r.counterexample.as_ref().map(|(p, e)| json!({"generator": render(p, &s.vars), "element": e.render(&s.vars)}));
    let text = format!("{:?}: {}\n", r.verdict, r.reason);
    Ok(Outcome {
        result: json!({
            "alpha": fmt_rational(&a),
            "k": c.k,
            "claimed": split_gens(&src),
            "verdict": r.verdict,
            "soundness": r.soundness,
            "counterexample": counter,
            "reason": r.reason,
        }),
        text,
        passed: r.verdict == ClaimVerdict::VerifiedInWindow,
    })
}

