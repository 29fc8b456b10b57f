//! Restriction of functionals along localizations and isomorphisms.

use super::{DiffModule, Functional};
use crate::algebra::{AlgebraHom, Localization, Poly};
use crate::coefficients::FqElem;
use crate::error::{Error, Result};
use crate::ring::CommRing;

/// Carries functionals on Omega_S to functionals on Omega_T for an etale
/// map S -> T: new value on generator z is sum_k matrix[z][k] hom0(u_k).
#[derive(Clone, Debug)]
pub struct SectionMap {
    pub source: DiffModule,
    pub target: DiffModule,
    /// Images of the source variables in T0.
    pub hom0: Vec<Poly<FqElem>>,
    pub matrix: Vec<Vec<Poly<FqElem>>>,
}

impl SectionMap {
    /// Along A -> A[1/t].
    pub fn localization(source: &DiffModule, target: &DiffModule, loc: &Localization) -> Result<Self> {
        Self::extend(source, target, &loc.inclusion, loc)
    }

    /// Along S -> T where T = A[1/t] and S is A or a localization of A whose
    /// first variables are those of A, fixed by `hom`. The value on d t^-1 is
    /// forced by t t^-1 = 1.
    pub fn extend(source: &DiffModule, target: &DiffModule, hom: &AlgebraHom, loc: &Localization) -> Result<Self> {
        target.algebra().ensure_same(&loc.algebra)?;
        source.algebra().ensure_same(hom.source())?;
        target.algebra().ensure_same(hom.target())?;
        let na = loc.inv_var;
        let t = target.algebra();
        for i in 0..na {
            if i >= hom.images().len() || hom.images()[i] != t.var(i) {
                return Err(Error::UnsupportedMap(format!("map does not fix {}", t.names()[i])));
            }
        }
        let b0 = target.base();
        let ns = source.rank();
        let p = t.p() as u64;
        let mut matrix = vec![vec![Poly::zero(); ns]; target.rank()];
        for (z, row) in matrix.iter_mut().enumerate().take(na + 1) {
            row[z] = b0.one();
        }
        let c = target.dtot(&loc.s);
        let inv = b0.var(na);
        let scale = b0.neg(&b0.pow(&inv, 2 * p));
        for k in 0..=na {
            matrix[na + 1][k] = b0.mul(&scale, &c.0[k]);
        }
        Ok(SectionMap { source: source.clone(), target: target.clone(), hom0: hom.images0(), matrix })
    }

    /// Along an isomorphism R -> L (`to_left`) with inverse `to_right`.
    pub fn transport(source: &DiffModule, target: &DiffModule, to_left: &AlgebraHom, to_right: &AlgebraHom) -> Result<Self> {
        source.algebra().ensure_same(to_left.source())?;
        target.algebra().ensure_same(to_left.target())?;
        let mut matrix = vec![vec![Poly::zero(); source.rank()]; target.rank()];
        matrix[0][0] = target.base().one();
        for (z, img) in to_right.images().iter().enumerate() {
            let c = source.dtot(img);
            for (k, ck) in c.0.iter().enumerate() {
                matrix[z + 1][k] = to_left.apply_mod_p(ck);
            }
        }
        Ok(SectionMap { source: source.clone(), target: target.clone(), hom0: to_left.images0(), matrix })
    }

    /// Restriction of a function.
    pub fn apply_fn(&self, f: &Poly<FqElem>) -> Poly<FqElem> {
        let b0 = self.target.base();
        self.source.base().ring().substitute(f, b0, &self.hom0, |c| b0.constant(*c))
    }

    pub fn apply(&self, u: &Functional) -> Functional {
        let b0 = self.target.base();
        let mapped: Vec<Poly<FqElem>> = u.values.iter().map(|v| self.apply_fn(v)).collect();
        let values = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(&mapped).fold(b0.zero(), |acc, (a, b)| b0.add(&acc, &b0.mul(a, b))))
            .collect();
        Functional { values }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &SectionMap) -> SectionMap {
        let b0 = next.target.base();
        let hom0 = self.hom0.iter().map(|h| next.apply_fn(h)).collect();
        let mapped: Vec<Vec<Poly<FqElem>>> =
            self.matrix.iter().map(|row| row.iter().map(|e| next.apply_fn(e)).collect()).collect();
        let matrix = next
            .matrix
            .iter()
            .map(|nrow| {
                (0..self.source.rank())
                    .map(|k| {
                        nrow.iter()
                            .zip(&mapped)
                            .fold(b0.zero(), |acc, (a, row)| b0.add(&acc, &b0.mul(a, &row[k])))
                    })
                    .collect()
            })
            .collect();
        SectionMap { source: self.source.clone(), target: next.target.clone(), hom0, matrix }
    }
}
