//! Exact arithmetic in F_q and W2(F_q).

mod fq;
mod upoly;
mod w2;

pub use fq::{default_modulus, Fq, FqElem, MAX_PRIME};
pub use w2::{cp_eval, CpCoeffs, W2Elem, W2};
