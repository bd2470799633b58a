use super::*;
use crate::polyalg::parse::default_names;
use crate::polyalg::{parse_poly, Ideal};
use crate::rational::{q, qf};

fn poly(src: &str, n: usize) -> Poly {
    parse_poly(src, &default_names(n)).unwrap()
}

fn ideal(gens: &[&str], n: usize) -> Ideal {
    Ideal::new(n, gens.iter().map(|g| poly(g, n)).collect()).unwrap()
}

fn ctx(src: &str, n: usize) -> VContext {
    VContext::new(&poly(src, n), &BfOptions::default()).unwrap()
}

#[test]
fn membership_smooth() {
    let c = ctx("x", 1);
    let hy = c.hyper().clone();
    let d = GraphElem::delta(&hy);
    let cert = v_member(&c, &d, &q(1)).unwrap();
    assert_eq!(cert.verdict, Verdict::InV);
    assert!(c.member_linear(&d, &q(1), false).unwrap());
    assert!(!c.member_linear(&d, &q(1), true).unwrap());
    let xd = d.mul_poly(&poly("x", 1), &hy);
    assert!(v_member(&c, &xd, &q(2)).unwrap().in_v());
    assert!(c.member_linear(&xd, &q(2), false).unwrap());
    assert!(!c.member_linear(&xd, &qf(5, 2), false).unwrap());
}

#[test]
fn membership_cusp_delta() {
    let c = ctx("x^2 + y^3", 2);
    let d = GraphElem::delta(c.hyper());
    assert!(v_member(&c, &d, &qf(5, 6)).unwrap().in_v());
    assert!(!v_member(&c, &d, &qf(5001, 6000)).unwrap().in_v());
    assert!(c.member_linear(&d, &qf(5, 6), false).unwrap());
    assert!(!c.member_linear(&d, &qf(5001, 6000), false).unwrap());
}

#[test]
fn multiplier_ideals_k0() {
    let c = ctx("x", 1);
    let w = |k| TruncationParams::default_for(k, 1);
    let i = higher_multiplier_ideal(&c, &q(1), w(0), true).unwrap();
    assert!(i.ideal.is_unit().unwrap());
    assert!(i.complete_up_to_window);
    let i = higher_multiplier_ideal(&c, &qf(3, 2), w(0), true).unwrap();
    assert!(i.ideal.equals(&ideal(&["x"], 1)).unwrap());
    let c = ctx("x^2 + y^3", 2);
    let w = TruncationParams::default_for(0, 3);
    assert!(higher_multiplier_ideal(&c, &qf(5, 6), w, true).unwrap().ideal.is_unit().unwrap());
    let i = higher_multiplier_ideal(&c, &qf(9, 10), w, true).unwrap();
    assert!(i.ideal.equals(&ideal(&["x", "y"], 2)).unwrap());
}

#[test]
fn cusp_level_two_interior() {
    let c = ctx("x^2 + y^3", 2);
    let w = TruncationParams::new(2, 6, None, 3).unwrap();
    let i = higher_multiplier_ideal(&c, &qf(9, 10), w, true).unwrap();
    let expect = ideal(&["x^3", "x^2*y^2", "x*y^3", "y^5", "x^2*y"], 2);
    assert!(i.ideal.equals(&expect).unwrap(), "{:?}", i.generator_strings(&default_names(2)));
    assert!(i.complete_up_to_window);
    for (a, coef) in [(qf(9, 10), "14/5"), (qf(11, 12), "17/6"), (q(1), "3")] {
        let h = hodge_ideal(&c, &a, w, false).unwrap();
        let last = format!("y^4 - {coef}*x^2*y");
        let expect = ideal(&["x^3", "x^2*y^2", "x*y^3", &last], 2);
        assert!(h.ideal.equals(&expect).unwrap(), "{:?}", h.generator_strings(&default_names(2)));
    }
}

#[test]
fn cusp_level_two_at_the_wall() {
    // ∂_x²δ = 4x²∂_t²δ − 2∂_tδ lies in V^{5/6} because δ does.
    let c = ctx("x^2 + y^3", 2);
    let hy = c.hyper().clone();
    let alg = crate::graphmod::dns(&hy);
    let dx2 = crate::weyl::WeylElem::dx(alg, 0).pow(2).unwrap();
    let e = crate::graphmod::act(&dx2, &GraphElem::delta(&hy), &hy).unwrap();
    assert_eq!(e.coeff(2).unwrap().as_poly().unwrap(), &poly("4*x^2", 2));
    assert!(c.member_linear(&e, &qf(5, 6), false).unwrap());
    let w = TruncationParams::new(2, 6, None, 3).unwrap();
    let i = higher_multiplier_ideal(&c, &qf(5, 6), w, true).unwrap();
    assert!(i.ideal.equals(&ideal(&["x^2", "x*y^2", "y^4"], 2)).unwrap());
    let h = hodge_ideal(&c, &qf(5, 6), w, false).unwrap();
    assert!(h.ideal.contains(&poly("y^3 - 8/3*x^2", 2)).unwrap());
}

#[test]
fn walls_k0() {
    let c = ctx("x^2 + y^3", 2);
    let w = TruncationParams::default_for(0, 3);
    let r = jumping_walls(&c, &q(0), &q(1), w).unwrap();
    assert_eq!(r.walls, vec![qf(5, 6)]);
    assert!(r.intervals[0].ideal.ideal.is_unit().unwrap());
    assert!(r.intervals[1].ideal.ideal.equals(&ideal(&["x", "y"], 2)).unwrap());
    let c = ctx("x", 1);
    let r = jumping_walls(&c, &q(0), &q(2), TruncationParams::default_for(0, 1)).unwrap();
    assert_eq!(r.walls, vec![q(1)]);
}

#[test]
fn left_continuity() {
    let c = ctx("x^2 + y^3", 2);
    let w = TruncationParams::new(2, 6, None, 3).unwrap();
    let r = left_continuity_test(&c, &qf(9, 10), w).unwrap();
    assert_eq!(r.delta, qf(1, 30));
    assert!(!r.equal);
    assert!(!r.higher_equals_hodge);
    let r = left_continuity_test(&c, &qf(1, 2), TruncationParams::default_for(0, 3)).unwrap();
    assert!(r.equal && r.higher_equals_hodge);
    assert!(r.at_alpha.ideal.is_unit().unwrap());
}

#[test]
fn strictness_smooth_and_cusp() {
    let c = ctx("x", 1);
    for k in 0..=2 {
        for a in [qf(1, 2), q(1), q(0)] {
            let r = strictness_check(&c, &a, TruncationParams::new(k, 4, None, 1).unwrap()).unwrap();
            assert!(r.passed, "k={k} a={a} {r:?}");
        }
    }
    let c = ctx("x^2 + y^3", 2);
    let r = strictness_check(&c, &qf(5, 6), TruncationParams::new(2, 6, None, 3).unwrap()).unwrap();
    assert!(r.passed, "{r:?}");
    assert!(r.ev_kernel_dim > 0);
}

#[test]
fn claimed_ideals() {
    let c = ctx("x^2 + y^2 + z^2", 3);
    assert_eq!(c.bfunction().bfunction.factored(), "(s+1)(s+3/2)");
    let w = TruncationParams::new(1, 4, None, 2).unwrap();
    let r = verify_claimed_ideal(&c, &Ideal::unit(3), &qf(1, 2), w).unwrap();
    assert_eq!(r.verdict, ClaimVerdict::VerifiedInWindow);
    let r = verify_claimed_ideal(&c, &ideal(&["x", "y", "z"], 3), &q(1), w).unwrap();
    assert_eq!(r.verdict, ClaimVerdict::VerifiedInWindow, "{}", r.reason);
    let r = verify_claimed_ideal(&c, &ideal(&["x^2", "y", "z"], 3), &q(1), w).unwrap();
    assert_eq!(r.verdict, ClaimVerdict::Refuted);
}
