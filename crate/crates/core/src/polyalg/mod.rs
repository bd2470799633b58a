//! Commutative polynomial algebra over ℚ.

pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod order;
pub mod parse;
pub mod poly;
pub mod univariate;

pub use groebner::{groebner, normal_form, GbOptions, GroebnerBasis};
pub use ideal::Ideal;
pub use order::{MonomialOrder, TermOrder};
pub use parse::{parse_poly, render};
pub use poly::{Monomial, Poly};
pub use univariate::UnivariatePoly;
