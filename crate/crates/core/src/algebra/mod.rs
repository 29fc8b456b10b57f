//! Polynomials over F_q and W2(F_q), Groebner bases, presented algebras.

mod fpalgebra;
mod groebner;
mod hom;
mod monomial;
mod parse;
mod poly;

pub use fpalgebra::{reduce_coeffs, teich_coeffs, FpAlgebra, Localization, ReducedAlgebra};
pub use groebner::groebner_basis;
pub use hom::AlgebraHom;
pub use monomial::{monomials_up_to, Monomial, MonomialOrder};
pub use parse::parse_into;
pub use poly::{Poly, PolyRing};
