//! Sparse multivariate polynomials over a coefficient ring.

use std::collections::BTreeMap;

use super::monomial::{Monomial, MonomialOrder};
use crate::ring::CommRing;

/// A polynomial as a map from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly<E> {
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone> Poly<E> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, E)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Largest exponent of each variable.
    pub fn max_exponents(&self, nvars: usize) -> Vec<u32> {
        let mut out = vec![0; nvars];
        for m in self.terms.keys() {
            for (o, e) in out.iter_mut().zip(&m.0) {
                *o = (*o).max(*e);
            }
        }
        out
    }
}

/// Polynomial ring context: coefficient ring, number of variables, order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R> {
    coeff: R,
    nvars: usize,
    order: MonomialOrder,
}

impl<R: CommRing> PolyRing<R> {
    pub fn new(coeff: R, nvars: usize, order: MonomialOrder) -> Self {
        PolyRing { coeff, nvars, order }
    }

    pub fn coeff_ring(&self) -> &R {
        &self.coeff
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn from_terms<I>(&self, terms: I) -> Poly<R::Elem>
    where
        I: IntoIterator<Item = (Monomial, R::Elem)>,
    {
        let mut out = Poly::zero();
        for (m, c) in terms {
            self.add_term(&mut out, m, &c);
        }
        out
    }

    pub fn monomial(&self, m: Monomial, c: R::Elem) -> Poly<R::Elem> {
        let mut out = Poly::zero();
        if !self.coeff.is_zero(&c) {
            out.terms.insert(m, c);
        }
        out
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.monomial(Monomial::one(self.nvars), c)
    }

    pub fn var(&self, i: usize) -> Poly<R::Elem> {
        self.monomial(Monomial::var(self.nvars, i), self.coeff.one())
    }

    /// In-place `p += c * m`.
    pub fn add_term(&self, p: &mut Poly<R::Elem>, m: Monomial, c: &R::Elem) {
        if self.coeff.is_zero(c) {
            return;
        }
        match p.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.coeff.add(existing, c);
                if self.coeff.is_zero(&s) {
                    p.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                p.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_assign(&self, p: &mut Poly<R::Elem>, q: &Poly<R::Elem>) {
        for (m, c) in q.terms() {
            self.add_term(p, m.clone(), c);
        }
    }

    /// In-place `p -= c * m * q`.
    pub fn sub_mul_term(&self, p: &mut Poly<R::Elem>, c: &R::Elem, m: &Monomial, q: &Poly<R::Elem>) {
        let nc = self.coeff.neg(c);
        for (qm, qc) in q.terms() {
            self.add_term(p, qm.mul(m), &self.coeff.mul(&nc, qc));
        }
    }

    pub fn mul_term(&self, p: &Poly<R::Elem>, c: &R::Elem, m: &Monomial) -> Poly<R::Elem> {
        let mut out = Poly::zero();
        for (pm, pc) in p.terms() {
            self.add_term(&mut out, pm.mul(m), &self.coeff.mul(c, pc));
        }
        out
    }

    pub fn scale(&self, p: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.mul_term(p, c, &Monomial::one(self.nvars))
    }

    /// Leading monomial and coefficient under the ring's order.
    pub fn leading_term<'a>(&self, p: &'a Poly<R::Elem>) -> Option<(&'a Monomial, &'a R::Elem)> {
        let order = self.order;
        p.terms().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted from largest to smallest monomial.
    pub fn sorted_terms<'a>(&self, p: &'a Poly<R::Elem>) -> Vec<(&'a Monomial, &'a R::Elem)> {
        let mut v: Vec<_> = p.terms().collect();
        v.sort_by(|a, b| self.order.cmp(b.0, a.0));
        v
    }

    pub fn map_coeffs<S: CommRing>(
        &self,
        target: &PolyRing<S>,
        p: &Poly<R::Elem>,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> Poly<S::Elem> {
        target.from_terms(p.terms().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Substitutes `images[i]` for variable i in the ring `target`, mapping
    /// coefficients with `coeff_map`.
    pub fn substitute<S: CommRing>(
        &self,
        p: &Poly<R::Elem>,
        target: &S,
        images: &[S::Elem],
        coeff_map: impl Fn(&R::Elem) -> S::Elem,
    ) -> S::Elem {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let maxe = p.max_exponents(self.nvars);
        let powers: Vec<Vec<S::Elem>> = images
            .iter()
            .zip(&maxe)
            .map(|(img, &e)| {
                let mut v = Vec::with_capacity(e as usize + 1);
                v.push(target.one());
                for k in 1..=e as usize {
                    let next = target.mul(&v[k - 1], img);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = target.zero();
        for (m, c) in p.terms() {
            let mut t = coeff_map(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = target.mul(&t, &powers[i][e as usize]);
                }
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    /// Formal partial derivative in variable i.
    pub fn derivative(&self, p: &Poly<R::Elem>, i: usize) -> Poly<R::Elem> {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.0[i] -= 1;
            let coeff = self.coeff.mul(&self.coeff.from_int(e as i64), c);
            self.add_term(&mut out, nm, &coeff);
        }
        out
    }

    /// Embeds into a ring with additional trailing variables.
    pub fn extend_vars(&self, p: &Poly<R::Elem>, extra: usize) -> Poly<R::Elem> {
        Poly { terms: p.terms().map(|(m, c)| (m.extend(extra), c.clone())).collect() }
    }

    pub fn format(&self, p: &Poly<R::Elem>, names: &[String], fmt_coeff: impl Fn(&R::Elem) -> String) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let one = self.coeff.one();
        let parts: Vec<String> = self
            .sorted_terms(p)
            .into_iter()
            .map(|(m, c)| {
                if m.is_one() {
                    fmt_coeff(c)
                } else if *c == one {
                    m.format(names)
                } else {
                    format!("{}*{}", fmt_coeff(c), m.format(names))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl<R: CommRing> CommRing for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.coeff.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = big.clone();
        self.add_assign(&mut out, small);
        out
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly { terms: a.terms().map(|(m, c)| (m.clone(), self.coeff.neg(c))).collect() }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = Poly::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                self.add_term(&mut out, ma.mul(mb), &self.coeff.mul(ca, cb));
            }
        }
        out
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.coeff.from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::IntMod;

    #[test]
    fn arithmetic_and_substitution() {
        let r = PolyRing::new(IntMod::new(7), 2, MonomialOrder::GrevLex);
        let x = r.var(0);
        let y = r.var(1);
        let f = r.add(&r.mul(&x, &x), &r.neg(&y)); // x^2 - y
        let g = r.substitute(&f, &IntMod::new(7), &[3, 2], |c| *c);
        assert_eq!(g, 0);
        let lt = r.leading_term(&f).unwrap();
        assert_eq!(lt.0, &Monomial(vec![2, 0]));
        assert_eq!(r.derivative(&f, 0), r.scale(&x, &2));
    }
}
