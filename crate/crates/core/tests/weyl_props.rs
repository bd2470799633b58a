use proptest::prelude::*;
use vf_core::polyalg::{Monomial, Poly};
use vf_core::weyl::{Algebra, AlgebraKind, LeftGb, WeylElem, WeylGbOptions};
use vf_core::Q;

fn dn(n: usize) -> Algebra {
    Algebra::new(AlgebraKind::Dn, n)
}

fn elem(alg: Algebra, max_deg: u32) -> impl Strategy<Value = WeylElem> {
    let n = alg.n;
    prop::collection::vec((prop::collection::vec(0..=max_deg, 2 * n), -4i64..=4), 1..=4).prop_map(move |terms| {
        let mut w = WeylElem::zero(alg);
        for (mut e, c) in terms {
            while e.iter().sum::<u32>() > max_deg {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            let mut m = vec![0; alg.len()];
            m[..2 * n].copy_from_slice(&e);
            w.add_term(Monomial(m), Q::from_integer(c.into()));
        }
        w
    })
}

/// Top total-degree part, read as a commutative polynomial.
fn symbol(p: &WeylElem) -> Poly {
    let alg = p.algebra();
    let top = p.total_degree();
    Poly::from_terms(
        alg.len(),
        p.terms().filter(|(m, _)| m.degree() as i64 == top).map(|(m, c)| (m.clone(), c.clone())),
    )
}

#[test]
fn canonical_commutation_relations() {
    let alg = dn(3);
    let one = WeylElem::one(alg);
    for i in 0..3 {
        for j in 0..3 {
            let (xi, xj) = (WeylElem::x(alg, i), WeylElem::x(alg, j));
            let (di, dj) = (WeylElem::dx(alg, i), WeylElem::dx(alg, j));
            let expect = if i == j { one.clone() } else { WeylElem::zero(alg) };
            assert_eq!(di.commutator(&xj).unwrap(), expect);
            assert!(di.commutator(&dj).unwrap().is_zero());
            assert!(xi.commutator(&xj).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_is_associative(a in elem(dn(2), 3), b in elem(dn(2), 3), c in elem(dn(2), 3)) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn symbol_is_multiplicative(a in elem(dn(2), 3), b in elem(dn(2), 3)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(symbol(&ab), &symbol(&a) * &symbol(&b));
    }

    #[test]
    fn leibniz_rule(a in elem(dn(2), 3)) {
        // [∂_1, P] is the coefficient-wise x_1-derivative of P.
        let alg = a.algebra();
        let d = WeylElem::dx(alg, 0);
        let c = d.commutator(&a).unwrap();
        let mut expect = WeylElem::zero(alg);
        for (m, k) in a.terms() {
            let e = m.0[alg.x(0)];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[alg.x(0)] -= 1;
                expect.add_term(m2, k * Q::from_integer(e.into()));
            }
        }
        prop_assert_eq!(c, expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn principal_left_ideal_cofactors(g in elem(dn(1), 2)) {
        prop_assume!(!g.is_zero());
        let alg = g.algebra();
        let gb = LeftGb::compute_tracked(&[], &g, &alg.grevlex(), WeylGbOptions::default()).unwrap();
        let cofs = gb.cofactors().unwrap().to_vec();
        for (e, c) in gb.elements().iter().zip(&cofs) {
            prop_assert_eq!(&c.mul(&g).unwrap(), e);
        }
        prop_assert!(gb.contains(&g).unwrap());
    }

    #[test]
    fn left_ideal_is_order_independent(a in elem(dn(1), 2), b in elem(dn(1), 2)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let alg = a.algebra();
        let opts = WeylGbOptions::default();
        let g1 = LeftGb::compute(&[a.clone(), b.clone()], &alg.grevlex(), opts).unwrap();
        let g2 = LeftGb::compute(&[b.clone(), a.clone()], &alg.elimination(&[alg.d(0)]), opts).unwrap();
        for e in g1.elements() {
            prop_assert!(g2.contains(&e).unwrap());
        }
        for e in g2.elements() {
            prop_assert!(g1.contains(&e).unwrap());
        }
        prop_assert!(g1.contains(&a).unwrap() && g1.contains(&b).unwrap());
    }
}
