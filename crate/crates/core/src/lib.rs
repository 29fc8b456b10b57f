//! Total p-differentials over length-2 Witt vectors: exact arithmetic in
//! W2(F_q), presented algebras, the module of total p-differentials,
//! Frobenius lifts, and Cech classes of glued schemes.

pub mod algebra;
pub mod biring;
pub mod cech;
pub mod coefficients;
pub mod differentials;
pub mod error;
pub mod linalg;
pub mod properties;
pub mod ring;
pub mod witt_interp;

pub use error::{Error, Result};
pub use ring::CommRing;
