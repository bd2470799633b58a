use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{element_bfunction, s_form, BFunction};
use crate::error::{Error, Result};
use crate::graphmod::GraphElem;
use crate::polyalg::Monomial;
use crate::rational::{fmt_rational, Q};
use crate::vfilt::VContext;

/// `m(c) = base + Σ c_i·directions[i]`.
#[derive(Clone, Debug)]
pub struct ParamElement {
    pub base: GraphElem,
    pub directions: Vec<GraphElem>,
}

impl ParamElement {
    pub fn new(base: GraphElem, directions: Vec<GraphElem>) -> Self {
        ParamElement { base, directions }
    }

    pub fn nparams(&self) -> usize {
        self.directions.len()
    }

    pub fn at(&self, c: &[Q], ctx: &VContext) -> GraphElem {
        let mut e = self.base.clone();
        for (ci, d) in c.iter().zip(&self.directions) {
            e = e.add(&d.scale(ci), ctx.hyper());
        }
        e
    }
}

/// `{c : a·c = b for every row}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    pub dim_ambient: usize,
    pub equations: Vec<(Vec<Q>, Q)>,
}

impl AffineSubspace {
    pub fn whole(r: usize) -> Self {
        AffineSubspace {
            dim_ambient: r,
            equations: Vec::new(),
        }
    }

    pub fn with(&self, eqs: Vec<(Vec<Q>, Q)>) -> Self {
        let mut e = self.equations.clone();
        e.extend(eqs);
        AffineSubspace {
            dim_ambient: self.dim_ambient,
            equations: e,
        }
        .reduced()
    }

    /// Reduced row echelon form of the system.
    fn reduced(mut self) -> Self {
        let r = self.dim_ambient;
        let mut rows: Vec<(Vec<Q>, Q)> = std::mem::take(&mut self.equations);
        let mut out: Vec<(Vec<Q>, Q)> = Vec::new();
        let mut col = 0;
        while col <= r && !rows.is_empty() {
            let piv = if col < r {
                rows.iter().position(|row| !row.0[col].is_zero())
            } else {
                rows.iter().position(|row| !row.1.is_zero())
            };
            if let Some(i) = piv {
                let mut p = rows.swap_remove(i);
                let inv = if col < r { p.0[col].recip() } else { p.1.recip() };
                for a in p.0.iter_mut() {
                    *a *= &inv;
                }
                p.1 *= &inv;
                for row in rows.iter_mut().chain(out.iter_mut()) {
                    let c = if col < r { row.0[col].clone() } else { row.1.clone() };
                    if !c.is_zero() {
                        for (a, b) in row.0.iter_mut().zip(&p.0) {
                            *a -= &c * b;
                        }
                        row.1 -= &c * &p.1;
                    }
                }
                out.push(p);
            }
            rows.retain(|row| row.0.iter().any(|a| !a.is_zero()) || !row.1.is_zero());
            col += 1;
        }
        self.equations = out;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.equations.iter().any(|(a, b)| a.iter().all(|x| x.is_zero()) && !b.is_zero())
    }

    pub fn contains(&self, c: &[Q]) -> bool {
        self.equations.iter().all(|(a, b)| {
            let v: Q = a.iter().zip(c).map(|(x, y)| x * y).sum();
            &v == b
        })
    }

    /// A point and a basis of directions.
    pub fn parametrize(&self) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
        if self.is_empty() {
            return None;
        }
        let r = self.dim_ambient;
        let mut point = vec![Q::zero(); r];
        let mut pivots = BTreeSet::new();
        for (a, b) in &self.equations {
            let p = a.iter().position(|x| !x.is_zero()).expect("nonzero row");
            pivots.insert(p);
            point[p] = b.clone();
        }
        let mut dirs = Vec::new();
        for free in (0..r).filter(|i| !pivots.contains(i)) {
            let mut d = vec![Q::zero(); r];
            d[free] = Q::one();
            for (a, _) in &self.equations {
                let p = a.iter().position(|x| !x.is_zero()).unwrap();
                d[p] = -a[free].clone();
            }
            dirs.push(d);
        }
        Some((point, dirs))
    }

    pub fn dim(&self) -> Option<usize> {
        self.parametrize().map(|(_, d)| d.len())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Option<Vec<Q>> {
        let (mut p, dirs) = self.parametrize()?;
        for d in dirs {
            let t = Q::from_integer(rng.gen_range(-997i64..=997).into());
            for (x, y) in p.iter_mut().zip(&d) {
                *x += &t * y;
            }
        }
        Some(p)
    }

    pub fn render(&self, names: &[String]) -> Vec<String> {
        self.equations
            .iter()
            .map(|(a, b)| {
                let mut terms = Vec::new();
                for (i, x) in a.iter().enumerate() {
                    if !x.is_zero() {
                        let coef = if x.is_one() { String::new() } else { format!("{}*", fmt_rational(x)) };
                        terms.push(format!("{coef}{}", names[i]));
                    }
                }
                format!("{} = {}", terms.join(" + "), fmt_rational(b))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratumBFunction {
    BFunction(BFunction),
    /// `m(c) = 0` on the whole stratum.
    ZeroElement,
}

/// `c ∈ inside` and, when present, `c ∉ excluded`.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub inside: AffineSubspace,
    pub excluded: Option<AffineSubspace>,
    pub bfunction: StratumBFunction,
}

fn key_vectors(ctx: &VContext, elems: &[GraphElem], alpha: &Q, strict: bool) -> Result<Vec<crate::polyalg::linalg::SparseVec<Monomial>>> {
    let k = elems.iter().map(|e| s_form(e, ctx.hyper()).1).max().unwrap_or(0);
    let plan = ctx.plan(k, alpha, strict);
    let mut out = Vec::new();
    for e in elems {
        let u = ctx.numerator_over(e, k)?;
        out.push(ctx.column(&plan, &u)?);
    }
    Ok(out)
}

/// Equations for `Σ c_i v_i + v_0 = 0`.
fn linear_equations<K: Ord + Clone>(v0: &std::collections::BTreeMap<K, Q>, vs: &[std::collections::BTreeMap<K, Q>]) -> Vec<(Vec<Q>, Q)> {
    let mut keys: BTreeSet<K> = v0.keys().cloned().collect();
    for v in vs {
        keys.extend(v.keys().cloned());
    }
    keys.into_iter()
        .map(|key| {
            let a = vs.iter().map(|v| v.get(&key).cloned().unwrap_or_else(Q::zero)).collect();
            (a, -v0.get(&key).cloned().unwrap_or_else(Q::zero))
        })
        .collect()
}

/// Case split of `b_{f, m(c)}` over the parameter space.
pub fn parametric_element_bfunction(ctx: &VContext, m: &ParamElement) -> Result<Vec<Stratum>> {
    let r = m.nparams();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    // The zero locus, compared over a common pole order.
    let big_n = std::iter::once(&m.base)
        .chain(&m.directions)
        .map(|e| s_form(e, ctx.hyper()).1)
        .max()
        .unwrap_or(0);
    let common = |e: &GraphElem| -> Result<std::collections::BTreeMap<Monomial, Q>> {
        Ok(ctx.numerator_over(e, big_n)?.terms().map(|(a, b)| (a.clone(), b.clone())).collect())
    };
    let z0 = common(&m.base)?;
    let zs = m.directions.iter().map(&common).collect::<Result<Vec<_>>>()?;
    let zero_locus = AffineSubspace::whole(r).with(linear_equations(&z0, &zs));

    let mut all: Vec<GraphElem> = vec![m.base.clone()];
    all.extend(m.directions.iter().cloned());
    let mut strata = Vec::new();
    let mut a = AffineSubspace::whole(r);
    loop {
        let inside_zero = {
            let (p, dirs) = a.parametrize().expect("nonempty");
            zero_locus.contains(&p)
                && dirs.iter().all(|d| {
                    let shifted: Vec<Q> = p.iter().zip(d).map(|(x, y)| x + y).collect();
                    zero_locus.contains(&shifted)
                })
        };
        if inside_zero {
            strata.push(Stratum {
                inside: a,
                excluded: None,
                bfunction: StratumBFunction::ZeroElement,
            });
            break;
        }
        let mut c1 = None;
        for _ in 0..16 {
            let c = a.sample(&mut rng).expect("nonempty");
            if !zero_locus.contains(&c) {
                c1 = Some(c);
                break;
            }
        }
        let c1 = c1.ok_or_else(|| Error::Invalid("could not sample a nonzero element".into()))?;
        let b1 = element_bfunction(ctx.ann(), &m.at(&c1, ctx), ctx.options())?;
        let gamma = -b1.max_root().expect("nonconstant b-function");
        let cols = key_vectors(ctx, &all, &gamma, true)?;
        let next = a.with(linear_equations(&cols[0], &cols[1..]));
        let mut c2 = None;
        for _ in 0..16 {
            let c = a.sample(&mut rng).expect("nonempty");
            if !next.contains(&c) && !zero_locus.contains(&c) && c != c1 {
                c2 = Some(c);
                break;
            }
        }
        if let Some(c2) = c2 {
            let b2 = element_bfunction(ctx.ann(), &m.at(&c2, ctx), ctx.options())?;
            if b2 != b1 {
                return Err(Error::Invalid(format!(
                    "b-function is not constant on a V-stratum: {} vs {}",
                    b1.factored(),
                    b2.factored()
                )));
            }
        }
        let done = next.is_empty();
        strata.push(Stratum {
            inside: a.clone(),
            excluded: (!done).then(|| next.clone()),
            bfunction: StratumBFunction::BFunction(b1),
        });
        if done {
            break;
        }
        a = next;
    }
    Ok(strata)
}
