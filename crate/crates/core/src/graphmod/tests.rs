use super::*;
use crate::polyalg::parse_poly;
use crate::rational::{q, qf};

fn names(n: usize) -> Vec<String> {
    default_names(n)
}

fn hx() -> Hyper {
    Hyper::new(parse_poly("x", &names(1)).unwrap()).unwrap()
}

fn cusp() -> Hyper {
    Hyper::new(parse_poly("x^2 + y^3", &names(2)).unwrap()).unwrap()
}

fn xs(src: &str, n: usize) -> Poly {
    let mut v = names(n);
    v.push("s".into());
    parse_poly(src, &v).unwrap()
}

#[test]
fn rho_of_plain_and_s() {
    let hy = hx();
    let u = SFsElem::new(xs("x^2 + 1", 1), 0, &hy);
    assert_eq!(
        rho(&u, &hy),
        GraphElem::from_polys(&[parse_poly("x^2 + 1", &names(1)).unwrap()])
    );
    let s = SFsElem::new(xs("s", 1), 0, &hy);
    let expect = GraphElem::term(1, LocalizedPoly::poly(parse_poly("-x", &names(1)).unwrap()));
    assert_eq!(rho(&s, &hy), expect);
}

#[test]
fn rho_inv_matches_inverse_formula() {
    let hy = cusp();
    let u = parse_poly("y", &names(2)).unwrap();
    let e1 = GraphElem::term(1, LocalizedPoly::poly(u.clone()));
    assert_eq!(rho_inv(&e1, &hy), SFsElem::new(xs("-y*s", 2), 1, &hy));
    let e2 = GraphElem::term(2, LocalizedPoly::poly(u));
    assert_eq!(rho_inv(&e2, &hy), SFsElem::new(xs("y*s^2 - y*s", 2), 2, &hy));
    assert_eq!(rho(&rho_inv(&e2, &hy), &hy), e2);
}

#[test]
fn actions_on_fs() {
    let hy = hx();
    let a = dns(&hy);
    let fs = SFsElem::fs(&hy);
    let dfs = act(&WeylElem::dx(a, 0), &fs, &hy).unwrap();
    assert_eq!(dfs, SFsElem::new(xs("s", 1), 1, &hy));
    let euler = &WeylElem::x(a, 0).mul(&WeylElem::dx(a, 0)).unwrap() - &WeylElem::s(a).unwrap();
    assert!(act(&euler, &fs, &hy).unwrap().is_zero());
    let sfs = SFsElem::new(xs("s", 1), 0, &hy);
    assert_eq!(sfs.apply_t(&hy), SFsElem::new(xs("x*s + x", 1), 0, &hy));
}

#[test]
fn ev_examples() {
    let hy = cusp();
    let s = SFsElem::new(xs("s", 2), 0, &hy);
    assert_eq!(
        s.ev(&qf(1, 2), &hy),
        LocalizedPoly::poly(Poly::constant(2, qf(-1, 2)))
    );
    let u = parse_poly("x + y", &names(2)).unwrap();
    let e = GraphElem::term(1, LocalizedPoly::poly(u.clone()));
    let alpha = qf(5, 6);
    assert_eq!(
        rho_inv(&e, &hy).ev(&alpha, &hy),
        LocalizedPoly::new(u.scale(&alpha), 1, &hy)
    );
    let k = SFsElem::new(xs("(s + 5/6)*(x*s + y)", 2), 1, &hy);
    assert!(k.ev(&alpha, &hy).is_zero());
}

#[test]
fn hodge_normalize_smooth() {
    let hy = hx();
    let g = parse_poly("x^3 + 2", &names(1)).unwrap();
    let alpha = qf(1, 3);
    let e = GraphElem::term(2, LocalizedPoly::poly(g.clone()));
    let h = hodge_normalize(&e, 2, &alpha, &hy).unwrap();
    assert_eq!(h, g.scale(&(alpha.clone() * (alpha.clone() + q(1)))));
    assert_eq!(hodge_closed(&[Poly::zero(1), Poly::zero(1), g], 2, &alpha, &hy), h);
    assert_eq!(
        hodge_normalize(&GraphElem::delta(&hy), 0, &alpha, &hy).unwrap(),
        Poly::one(1)
    );
    assert!(hodge_normalize(&e, 1, &alpha, &hy).is_err());
}

#[test]
fn hodge_basis_triangular() {
    let hy = cusp();
    for k in 0..=4 {
        let m = HodgePieceBasis::new(k).matrix(&hy);
        for (l, row) in m.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if j != l {
                    assert!(c.is_zero());
                }
            }
            let fact: BigInt = (1..=l as i64).map(BigInt::from).product();
            let sign = if l % 2 == 0 { 1 } else { -1 };
            assert_eq!(row[l], Q::from_integer(fact * sign));
        }
    }
}

#[test]
fn to_graph_roundtrip() {
    let hy = cusp();
    let g = vec![parse_poly("x", &names(2)).unwrap(), parse_poly("y", &names(2)).unwrap()];
    let e = HodgePieceBasis::new(1).to_graph(&g, &hy).unwrap();
    // binom(s,1) y / f · f^s = −y ⊗ ∂_t.
    let expect = GraphElem::from_polys(&[g[0].clone(), g[1].scale(&q(-1))]);
    assert_eq!(e, expect);
}
