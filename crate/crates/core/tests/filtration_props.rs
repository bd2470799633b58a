use vf_core::bfun::BfOptions;
use vf_core::graphmod::GraphElem;
use vf_core::polyalg::parse::default_names;
use vf_core::polyalg::{parse_poly, Ideal, Monomial, Poly};
use vf_core::vfilt::{higher_multiplier_ideal, strictness_check, v_member, TruncationParams, VContext};
use vf_core::Q;

fn q(a: i64, b: i64) -> Q {
    Q::new(a.into(), b.into())
}

fn ctx(src: &str, n: usize) -> VContext {
    VContext::new(&parse_poly(src, &default_names(n)).unwrap(), &BfOptions::default()).unwrap()
}

const CORPUS: [(&str, usize); 3] = [("x", 1), ("x*y", 2), ("x^2 + y^3", 2)];

fn alphas() -> Vec<Q> {
    [(1, 3), (1, 2), (5, 6), (9, 10), (1, 1), (7, 6), (3, 2)].iter().map(|(a, b)| q(*a, *b)).collect()
}

fn window(c: &VContext, k: u32) -> TruncationParams {
    let deg_f = 3.min(c.hyper().f().total_degree() as u32);
    TruncationParams::new(k, 4, None, deg_f).unwrap()
}

#[test]
fn higher_multiplier_ideals_decrease() {
    for (src, n) in CORPUS {
        let c = ctx(src, n);
        for k in 0..=1 {
            let ideals: Vec<Ideal> = alphas()
                .iter()
                .map(|a| higher_multiplier_ideal(&c, a, window(&c, k), false).unwrap().ideal)
                .collect();
            for w in ideals.windows(2) {
                assert!(w[0].contains_ideal(&w[1]).unwrap(), "f = {src}, k = {k}");
            }
        }
    }
}

#[test]
fn higher_multiplier_ideals_are_left_continuous() {
    for (src, n) in CORPUS {
        let c = ctx(src, n);
        for k in 0..=1 {
            for a in alphas() {
                let zero = Q::from_integer(0.into());
                let below = c.candidate_walls(k, &zero, &a).into_iter().filter(|w| w < &a).last().unwrap_or(zero);
                let delta = (&a - &below) / Q::from_integer(3.into());
                let at = higher_multiplier_ideal(&c, &a, window(&c, k), false).unwrap();
                let left = higher_multiplier_ideal(&c, &(&a - &delta), window(&c, k), false).unwrap();
                assert!(at.ideal.equals(&left.ideal).unwrap(), "f = {src}, k = {k}, α = {a}");
            }
        }
    }
}

#[test]
fn witnesses_are_closed_under_x_and_shift_under_t() {
    for (src, n) in CORPUS {
        let c = ctx(src, n);
        let hy = c.hyper().clone();
        for a in [q(5, 6), q(1, 1)] {
            let id = higher_multiplier_ideal(&c, &a, window(&c, 1), true).unwrap();
            let next = &a + Q::from_integer(1.into());
            for w in id.witnesses.iter().flatten() {
                assert!(w.certificate.as_ref().unwrap().in_v());
                for i in 0..n {
                    let xm = w.element.mul_poly(&Poly::var(n, i), &hy);
                    assert!(v_member(&c, &xm, &a).unwrap().in_v(), "x-closure, f = {src}");
                }
                let tm = w.element.apply_t(&hy);
                assert!(v_member(&c, &tm, &next).unwrap().in_v(), "t-shift, f = {src}");
            }
        }
    }
}

/// `{g : g·δ ∈ V^α}` over candidates `m` and `m·f`, from the element b-function.
fn multiplier_ideal_by_translates(c: &VContext, a: &Q, d: u32) -> Ideal {
    let n = c.n();
    let hy = c.hyper().clone();
    let mut gens = Vec::new();
    let mut mons = Vec::new();
    for tot in 0..=d {
        for i in 0..=tot {
            let mut e = vec![0; n];
            if n == 1 {
                if i > 0 {
                    continue;
                }
                e[0] = tot;
            } else {
                e[0] = i;
                e[1] = tot - i;
            }
            mons.push(Monomial(e));
        }
    }
    let f = hy.f().clone();
    let mut cands: Vec<Poly> = mons.iter().map(|m| Poly::monomial(n, &m.0)).collect();
    cands.extend(mons.iter().filter(|m| m.0.iter().sum::<u32>() <= 1).map(|m| &Poly::monomial(n, &m.0) * &f));
    for g in cands {
        let e = GraphElem::delta(&hy).mul_poly(&g, &hy);
        if v_member(c, &e, a).unwrap().in_v() {
            gens.push(g);
        }
    }
    Ideal::new(n, gens).unwrap()
}

#[test]
fn two_routes_to_multiplier_ideals() {
    for (src, n) in CORPUS {
        let c = ctx(src, n);
        for a in alphas() {
            let from_window = higher_multiplier_ideal(&c, &a, window(&c, 0), false).unwrap();
            let direct = multiplier_ideal_by_translates(&c, &a, 4);
            assert!(from_window.ideal.equals(&direct).unwrap(), "f = {src}, α = {a}");
        }
    }
}

#[test]
fn strictness_on_the_corpus() {
    for (src, n) in CORPUS {
        let c = ctx(src, n);
        for k in 0..=1 {
            for a in [q(1, 2), q(1, 1)] {
                let r = strictness_check(&c, &a, window(&c, k)).unwrap();
                assert!(r.passed, "f = {src}, k = {k}, α = {a}: {r:?}");
            }
        }
    }
}
