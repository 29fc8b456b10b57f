use super::fpalgebra::FpAlgebra;
use super::poly::Poly;
use crate::coefficients::{FqElem, W2Elem};
use crate::error::{Error, Result};

/// A W2-algebra homomorphism between presented algebras, given by the
/// images of the source variables.
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    source: FpAlgebra,
    target: FpAlgebra,
    images: Vec<Poly<W2Elem>>,
}

impl AlgebraHom {
    /// Checks that every relation of the source maps to zero.
    pub fn new(source: FpAlgebra, target: FpAlgebra, images: Vec<Poly<W2Elem>>) -> Result<Self> {
        source.base().ensure_same(target.base())?;
        if images.len() != source.nvars() {
            return Err(Error::InvalidHom(format!(
                "{} images for {} variables",
                images.len(),
                source.nvars()
            )));
        }
        let images: Vec<Poly<W2Elem>> = images.iter().map(|e| target.nf(e)).collect();
        let hom = AlgebraHom { source, target, images };
        for g in hom.source.gens() {
            let v = hom.apply(g);
            if !v.is_zero() {
                return Err(Error::InvalidHom(format!(
                    "relation {} maps to {}",
                    hom.source.format(g),
                    hom.target.format(&v)
                )));
            }
        }
        Ok(hom)
    }

    /// Images given as polynomial strings in the target variables.
    pub fn parse(source: &FpAlgebra, target: &FpAlgebra, images: &[&str]) -> Result<Self> {
        let imgs = images.iter().map(|s| target.parse_elem(s)).collect::<Result<Vec<_>>>()?;
        Self::new(source.clone(), target.clone(), imgs)
    }

    pub fn identity(a: &FpAlgebra) -> Self {
        let images = (0..a.nvars()).map(|i| a.var(i)).collect();
        AlgebraHom { source: a.clone(), target: a.clone(), images }
    }

    pub fn source(&self) -> &FpAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FpAlgebra {
        &self.target
    }

    pub fn images(&self) -> &[Poly<W2Elem>] {
        &self.images
    }

    /// Images of the variables reduced mod p.
    pub fn images0(&self) -> Vec<Poly<FqElem>> {
        self.images.iter().map(|e| self.target.reduce(e)).collect()
    }

    /// Applies the map to a polynomial in the source's ambient ring.
    pub fn apply(&self, e: &Poly<W2Elem>) -> Poly<W2Elem> {
        let t = &self.target;
        self.source.ambient().substitute(e, t, &self.images, |c| t.constant(*c))
    }

    /// The induced map A0 -> B0.
    pub fn apply_mod_p(&self, e0: &Poly<FqElem>) -> Poly<FqElem> {
        let t0 = self.target.reduced();
        let imgs = self.images0();
        self.source.reduced().ring().substitute(e0, t0, &imgs, |c| t0.constant(*c))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &AlgebraHom) -> Result<AlgebraHom> {
        self.target.ensure_same(&next.source)?;
        let images = self.images.iter().map(|e| next.apply(e)).collect();
        Ok(AlgebraHom { source: self.source.clone(), target: next.target.clone(), images })
    }

    /// True when both maps agree on every variable.
    pub fn agrees_with(&self, other: &AlgebraHom) -> bool {
        self.source.same(&other.source) && self.target.same(&other.target) && self.images == other.images
    }

    pub fn format(&self) -> Vec<String> {
        self.source
            .names()
            .iter()
            .zip(&self.images)
            .map(|(n, e)| format!("{n} -> {}", self.target.format(e)))
            .collect()
    }
}
