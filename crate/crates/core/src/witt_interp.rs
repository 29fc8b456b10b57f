//! The interpolated rings U_c(D0) on D0 x D0 and total p-derivations viewed
//! as algebra maps into them.

use crate::algebra::{AlgebraHom, FpAlgebra, Poly, ReducedAlgebra};
use crate::coefficients::{CpCoeffs, FqElem, W2Elem};
use crate::error::{Error, Result};
use crate::ring::CommRing;

/// An element (x0, x1) of U_c(D0); components are in normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct UcElem {
    pub x0: Poly<FqElem>,
    pub x1: Poly<FqElem>,
}

/// The ring U_c(D0).
#[derive(Clone, Debug)]
pub struct UcRing {
    d0: ReducedAlgebra,
    c: Poly<FqElem>,
    cp: CpCoeffs,
}

impl UcRing {
    pub fn new(d0: &ReducedAlgebra, c: Poly<FqElem>) -> Result<Self> {
        let cp = CpCoeffs::new(d0.field().p() as u64)?;
        Ok(UcRing { c: d0.nf(&c), d0: d0.clone(), cp })
    }

    /// U_c with c a constant of F_q.
    pub fn with_scalar(d0: &ReducedAlgebra, c: FqElem) -> Result<Self> {
        Self::new(d0, d0.constant(c))
    }

    pub fn d0(&self) -> &ReducedAlgebra {
        &self.d0
    }

    pub fn c(&self) -> &Poly<FqElem> {
        &self.c
    }

    pub fn same(&self, other: &UcRing) -> bool {
        self.d0.same(&other.d0) && self.c == other.c
    }

    pub fn ensure_same(&self, other: &UcRing) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch("U_c rings differ in D0 or c".into()))
        }
    }

    pub fn elem(&self, x0: Poly<FqElem>, x1: Poly<FqElem>) -> UcElem {
        UcElem { x0: self.d0.nf(&x0), x1: self.d0.nf(&x1) }
    }

    /// r * (1, 0) = (r0, c * (phi(r) - r^p)/p).
    pub fn scalar(&self, w2: &crate::coefficients::W2, r: &W2Elem) -> UcElem {
        let d = &self.d0;
        UcElem { x0: d.constant(r.w0), x1: d.mul(&self.c, &d.constant(w2.delta(r))) }
    }

    /// The ring map U_c(D0) -> U_{ce}(D0), (x0, x1) -> (x0, e x1).
    pub fn rescale(&self, e: &Poly<FqElem>) -> UcRing {
        UcRing { d0: self.d0.clone(), c: self.d0.mul(&self.c, e), cp: self.cp.clone() }
    }

    pub fn rescale_elem(&self, e: &Poly<FqElem>, a: &UcElem) -> UcElem {
        UcElem { x0: a.x0.clone(), x1: self.d0.mul(e, &a.x1) }
    }

    /// Projection onto the first coordinate.
    pub fn project(&self, a: &UcElem) -> Poly<FqElem> {
        a.x0.clone()
    }
}

impl CommRing for UcRing {
    type Elem = UcElem;

    fn zero(&self) -> UcElem {
        UcElem { x0: Poly::zero(), x1: Poly::zero() }
    }
    fn one(&self) -> UcElem {
        UcElem { x0: self.d0.one(), x1: Poly::zero() }
    }
    fn add(&self, a: &UcElem, b: &UcElem) -> UcElem {
        let d = &self.d0;
        let corr = d.mul(&self.c, &self.cp.eval(d, &a.x0, &b.x0));
        UcElem { x0: d.add(&a.x0, &b.x0), x1: d.add(&d.add(&a.x1, &b.x1), &corr) }
    }
    fn neg(&self, a: &UcElem) -> UcElem {
        // C_p(x, -x) = 0 for odd p
        UcElem { x0: self.d0.neg(&a.x0), x1: self.d0.neg(&a.x1) }
    }
    fn mul(&self, a: &UcElem, b: &UcElem) -> UcElem {
        let d = &self.d0;
        let p = self.cp.p();
        let x1 = d.add(&d.mul(&d.pow(&a.x0, p), &b.x1), &d.mul(&d.pow(&b.x0, p), &a.x1));
        UcElem { x0: d.mul(&a.x0, &b.x0), x1 }
    }
}

/// A total p-derivation of A into D0, where D0 is an A0-algebra via
/// `structure` (images of the variables of A).
#[derive(Clone, Debug)]
pub struct TotalDerivation {
    source: FpAlgebra,
    uc: UcRing,
    structure: Vec<Poly<FqElem>>,
    values: Vec<Poly<FqElem>>,
}

impl TotalDerivation {
    /// Checks that the induced map A -> U_c(D0) kills every relation.
    pub fn new(
        source: &FpAlgebra,
        target: &ReducedAlgebra,
        structure: Vec<Poly<FqElem>>,
        c: Poly<FqElem>,
        values: Vec<Poly<FqElem>>,
    ) -> Result<Self> {
        let n = source.nvars();
        if structure.len() != n || values.len() != n {
            return Err(Error::InvalidDerivation(format!("expected {n} structure images and values")));
        }
        if source.field() != target.field() {
            return Err(Error::RingMismatch("source and target fields differ".into()));
        }
        let uc = UcRing::new(target, c)?;
        let structure = structure.iter().map(|e| target.nf(e)).collect();
        let values = values.iter().map(|e| target.nf(e)).collect();
        let d = TotalDerivation { source: source.clone(), uc, structure, values };
        for g in source.gens() {
            let img = d.to_hom_apply(g);
            if !img.x0.is_zero() {
                return Err(Error::InvalidDerivation(format!(
                    "structure map does not kill {}",
                    source.format(g)
                )));
            }
            if !img.x1.is_zero() {
                return Err(Error::InvalidDerivation(format!(
                    "value on relation {} is {}",
                    source.format(g),
                    target.format(&img.x1)
                )));
            }
        }
        Ok(d)
    }

    /// A derivation of A into A0 itself (structure map the reduction).
    pub fn into_reduction(source: &FpAlgebra, c: Poly<FqElem>, values: Vec<Poly<FqElem>>) -> Result<Self> {
        let structure = (0..source.nvars()).map(|i| source.reduce(&source.var(i))).collect();
        Self::new(source, source.reduced(), structure, c, values)
    }

    pub fn source(&self) -> &FpAlgebra {
        &self.source
    }

    pub fn target(&self) -> &ReducedAlgebra {
        self.uc.d0()
    }

    pub fn uc(&self) -> &UcRing {
        &self.uc
    }

    /// delta(p).
    pub fn c(&self) -> &Poly<FqElem> {
        self.uc.c()
    }

    pub fn structure(&self) -> &[Poly<FqElem>] {
        &self.structure
    }

    pub fn values(&self) -> &[Poly<FqElem>] {
        &self.values
    }

    fn to_hom_apply(&self, a: &Poly<W2Elem>) -> UcElem {
        let images: Vec<UcElem> =
            self.structure.iter().zip(&self.values).map(|(x0, x1)| UcElem { x0: x0.clone(), x1: x1.clone() }).collect();
        let w2 = self.source.base();
        self.source.ambient().substitute(a, &self.uc, &images, |r| self.uc.scalar(w2, r))
    }

    /// delta(a) for a polynomial in the ambient ring of A.
    pub fn apply(&self, a: &Poly<W2Elem>) -> Poly<FqElem> {
        self.to_hom_apply(a).x1
    }

    /// The structure map f(pi_0(a)).
    pub fn structure_apply(&self, a: &Poly<W2Elem>) -> Poly<FqElem> {
        self.to_hom_apply(a).x0
    }
}

/// An R-algebra homomorphism A -> U_c(D0), given on the variables.
#[derive(Clone, Debug)]
pub struct UcHom {
    pub source: FpAlgebra,
    pub uc: UcRing,
    pub images: Vec<UcElem>,
}

impl UcHom {
    pub fn apply(&self, a: &Poly<W2Elem>) -> UcElem {
        let w2 = self.source.base();
        self.source.ambient().substitute(a, &self.uc, &self.images, |r| self.uc.scalar(w2, r))
    }
}

/// a -> (f(pi_0(a)), delta a).
pub fn derivation_to_hom(d: &TotalDerivation) -> UcHom {
    let images = d
        .structure
        .iter()
        .zip(&d.values)
        .map(|(x0, x1)| UcElem { x0: x0.clone(), x1: x1.clone() })
        .collect();
    UcHom { source: d.source.clone(), uc: d.uc.clone(), images }
}

/// Inverse of [`derivation_to_hom`]; fails unless the images respect the relations.
pub fn hom_to_derivation(h: &UcHom) -> Result<TotalDerivation> {
    TotalDerivation::new(
        &h.source,
        h.uc.d0(),
        h.images.iter().map(|u| u.x0.clone()).collect(),
        h.uc.c().clone(),
        h.images.iter().map(|u| u.x1.clone()).collect(),
    )
}

/// Lifts `d` along `g: A -> B` where B is either a polynomial extension
/// A[y1..yk] or a localization A[1/s] (last variable the inverse of s).
///
/// `structure` gives the images of all variables of B in D0 and must extend
/// the structure map of `d`. New polynomial variables get the values in
/// `new_values` (default zero); for a localization the value is forced:
/// delta(s_inv) = -f(s_inv)^(2p) delta(s).
pub fn lift_derivation(
    d: &TotalDerivation,
    g: &AlgebraHom,
    structure: Vec<Poly<FqElem>>,
    new_values: Option<Vec<Poly<FqElem>>>,
) -> Result<TotalDerivation> {
    let a = g.source();
    let b = g.target();
    a.ensure_same(&d.source)?;
    let n = a.nvars();
    let extra = b.nvars().checked_sub(n).ok_or_else(|| Error::UnsupportedMap("target has fewer variables".into()))?;
    for i in 0..n {
        if g.images()[i] != b.var(i) {
            return Err(Error::UnsupportedMap(format!("variable {} is not sent to itself", a.names()[i])));
        }
    }
    let ext_gens: Vec<Poly<W2Elem>> = a.gens().iter().map(|x| a.ambient().extend_vars(x, extra)).collect();
    let bg = b.gens();
    if bg.len() < ext_gens.len() || bg[..ext_gens.len()] != ext_gens[..] {
        return Err(Error::UnsupportedMap("relations of the source are not kept".into()));
    }
    if structure.len() != b.nvars() {
        return Err(Error::InvalidDerivation(format!("expected {} structure images", b.nvars())));
    }
    let t = d.target();
    for i in 0..n {
        if t.nf(&structure[i]) != d.structure[i] {
            return Err(Error::InvalidDerivation(format!(
                "structure map on {} does not extend the given one",
                a.names()[i]
            )));
        }
    }
    let mut values = d.values.clone();
    match bg.len() - ext_gens.len() {
        0 => {
            let nv = new_values.unwrap_or_else(|| vec![Poly::zero(); extra]);
            if nv.len() != extra {
                return Err(Error::InvalidDerivation(format!("expected {extra} new values")));
            }
            values.extend(nv);
        }
        1 if extra == 1 => {
            let s = localization_element(b, &bg[bg.len() - 1], n)?;
            let ds = d.apply(&s);
            let inv = t.nf(&structure[n]);
            let p = t.field().p() as u64;
            values.push(t.neg(&t.mul(&t.pow(&inv, 2 * p), &ds)));
        }
        _ => return Err(Error::UnsupportedMap("neither a polynomial extension nor a localization".into())),
    }
    TotalDerivation::new(b, t, structure, d.c().clone(), values)
}

/// Recovers s (in the ambient ring of A) from a relation s * y - 1 of B,
/// where y is variable `n`.
fn localization_element(b: &FpAlgebra, rel: &Poly<W2Elem>, n: usize) -> Result<Poly<W2Elem>> {
    let w2 = b.base();
    let r = b.ambient();
    let shifted = r.add(rel, &r.one());
    let mut terms = Vec::new();
    for (m, c) in shifted.terms() {
        if m.0[n] != 1 {
            return Err(Error::UnsupportedMap("last relation is not of the form s*y - 1".into()));
        }
        let mut e = m.0.clone();
        e.truncate(n);
        terms.push((crate::algebra::Monomial(e), *c));
    }
    let ar = crate::algebra::PolyRing::new(w2.clone(), n, r.order());
    Ok(ar.from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{Fq, W2};

    #[test]
    fn uc_examples() {
        let k = Fq::prime(3).unwrap();
        let d0 = ReducedAlgebra::polynomial(k.clone(), &[]).unwrap();
        let u = UcRing::with_scalar(&d0, k.elem(2)).unwrap();
        let one = u.one();
        let two = u.add(&one, &one);
        assert_eq!(two, u.elem(d0.from_int(2), d0.from_int(2)));

        let t = ReducedAlgebra::polynomial(k.clone(), &["t"]).unwrap();
        let u0 = UcRing::with_scalar(&t, k.zero()).unwrap();
        let tt = t.var(0);
        let a = u0.elem(tt.clone(), Poly::zero());
        let b = u0.elem(tt.clone(), t.one());
        assert_eq!(u0.mul(&a, &b), u0.elem(t.parse("t^2").unwrap(), t.parse("t^3").unwrap()));
    }

    #[test]
    fn scalar_examples() {
        let w = W2::prime(5).unwrap();
        let k = w.residue_field().clone();
        let d0 = ReducedAlgebra::polynomial(k.clone(), &[]).unwrap();
        let u = UcRing::with_scalar(&d0, k.one()).unwrap();
        assert_eq!(u.scalar(&w, &w.from_int(2)), u.elem(d0.from_int(2), d0.from_int(4)));
        assert_eq!(u.scalar(&w, &w.from_int(5)), u.elem(Poly::zero(), d0.one()));
    }

    #[test]
    fn derivation_example() {
        // A = W2(F3)[x], delta x = t in F3[t], f(x) = t: image of x^2 is (t^2, 2 t^3 t)
        let w = W2::prime(3).unwrap();
        let a = FpAlgebra::polynomial(&w, &["x"]).unwrap();
        let t = ReducedAlgebra::polynomial(w.residue_field().clone(), &["t"]).unwrap();
        let tv = t.var(0);
        let d = TotalDerivation::new(&a, &t, vec![tv.clone()], Poly::zero(), vec![tv.clone()]).unwrap();
        let x2 = a.parse_ambient("x^2").unwrap();
        assert_eq!(d.apply(&x2), t.parse("2*t^4").unwrap());
        let h = derivation_to_hom(&d);
        assert_eq!(h.apply(&x2).x0, t.parse("t^2").unwrap());
    }

    #[test]
    fn localization_lift() {
        let w = W2::prime(3).unwrap();
        let a = FpAlgebra::polynomial(&w, &["x"]).unwrap();
        let loc = a.localize(&a.var(0)).unwrap();
        let b = &loc.algebra;
        let b0 = b.reduced();
        let u = b0.parse("x + x_inv^2").unwrap();
        let d = TotalDerivation::new(&a, b0, vec![b0.var(0)], Poly::zero(), vec![u.clone()]).unwrap();
        let lifted = lift_derivation(&d, &loc.inclusion, vec![b0.var(0), b0.var(1)], None).unwrap();
        let expect = b0.neg(&b0.mul(&u, &b0.parse("x_inv^6").unwrap()));
        assert_eq!(lifted.values()[1], expect);
    }
}
