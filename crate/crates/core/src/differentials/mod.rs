//! The module of total p-differentials of a presented algebra, the maps of
//! the fundamental sequence, pullbacks, and splittings.

mod functional;
mod section;

pub use functional::{find_splitting, solve_linear, FrobeniusLift, Functional, SplittingSearch};
pub use section::SectionMap;

use std::collections::BTreeMap;

use crate::algebra::{AlgebraHom, FpAlgebra, Monomial, Poly, PolyRing, ReducedAlgebra};
use crate::coefficients::{FqElem, W2Elem};
use crate::error::{Error, Result};
use crate::linalg::RowSpace;
use crate::ring::CommRing;

/// An element of Omega^{1,tot}: coefficients on [d p, d x_1, ..., d x_n].
#[derive(Clone, Debug, PartialEq)]
pub struct DiffElem(pub Vec<Poly<FqElem>>);

impl DiffElem {
    pub fn coeffs(&self) -> &[Poly<FqElem>] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

/// Presentation of Omega^{1,tot}_A as an A0-module: generators
/// d p, d x_1, ..., d x_n and one relation d(g) per ideal generator g.
#[derive(Clone, Debug)]
pub struct DiffModule {
    alg: FpAlgebra,
    relations: Vec<DiffElem>,
}

/// A splitting of alpha: a functional with value 1 on d p.
pub type Splitting = Functional;

/// d^tot a in the module `m`.
pub fn dtot_expand(a: &Poly<W2Elem>, m: &DiffModule) -> DiffElem {
    m.dtot(a)
}

pub fn alpha(x: &Poly<FqElem>, m: &DiffModule) -> DiffElem {
    m.alpha(x)
}

pub fn beta(e: &DiffElem, m: &DiffModule) -> Vec<Poly<FqElem>> {
    m.beta(e)
}

pub fn splitting_to_frobenius(m: &DiffModule, h: &Splitting) -> Result<FrobeniusLift> {
    FrobeniusLift::from_splitting(m, h)
}

pub fn frobenius_to_splitting(m: &DiffModule, phi: &FrobeniusLift) -> Result<Splitting> {
    phi.to_splitting(m)
}

/// Omega^{1,tot}_A.
pub fn omega_tot(a: &FpAlgebra) -> Result<DiffModule> {
    if !a.flat_certificate() {
        return Err(Error::NotFlat("no flatness certificate".into()));
    }
    let mut m = DiffModule { alg: a.clone(), relations: vec![] };
    m.relations = a.gens().iter().map(|g| m.dtot(g)).collect();
    Ok(m)
}

impl DiffModule {
    pub fn algebra(&self) -> &FpAlgebra {
        &self.alg
    }

    /// A0.
    pub fn base(&self) -> &ReducedAlgebra {
        self.alg.reduced()
    }

    /// Number of generators, n + 1.
    pub fn rank(&self) -> usize {
        self.alg.nvars() + 1
    }

    pub fn relations(&self) -> &[DiffElem] {
        &self.relations
    }

    /// True when every relation vector vanishes, so the module is free on
    /// the generators.
    pub fn is_free(&self) -> bool {
        self.relations.iter().all(|r| r.is_zero())
    }

    pub fn gen_names(&self) -> Vec<String> {
        std::iter::once("dtot(p)".to_string())
            .chain(self.alg.names().iter().map(|n| format!("dtot({n})")))
            .collect()
    }

    pub fn zero(&self) -> DiffElem {
        DiffElem(vec![Poly::zero(); self.rank()])
    }

    pub fn gen(&self, k: usize) -> DiffElem {
        let mut v = self.zero();
        v.0[k] = self.base().one();
        v
    }

    pub fn add(&self, a: &DiffElem, b: &DiffElem) -> DiffElem {
        let r = self.base();
        DiffElem(a.0.iter().zip(&b.0).map(|(x, y)| r.add(x, y)).collect())
    }

    pub fn sub(&self, a: &DiffElem, b: &DiffElem) -> DiffElem {
        let r = self.base();
        DiffElem(a.0.iter().zip(&b.0).map(|(x, y)| r.sub(x, y)).collect())
    }

    pub fn scale(&self, c: &Poly<FqElem>, a: &DiffElem) -> DiffElem {
        let r = self.base();
        DiffElem(a.0.iter().map(|x| r.mul(c, x)).collect())
    }

    /// d^tot of a polynomial in the ambient ring of A.
    pub fn dtot(&self, a: &Poly<W2Elem>) -> DiffElem {
        let terms: Vec<(Monomial, W2Elem)> = self
            .alg
            .ambient()
            .sorted_terms(a)
            .into_iter()
            .map(|(m, c)| (m.clone(), *c))
            .collect();
        self.dtot_terms(&terms)
    }

    /// d^tot of a sum of terms, folding the sum rule from the left in the
    /// given order.
    pub fn dtot_terms(&self, terms: &[(Monomial, W2Elem)]) -> DiffElem {
        let a0 = self.base();
        let w2 = self.alg.base();
        let r = self.alg.ambient();
        let p = self.alg.p() as u64;
        // sum_k C_p(t_1 + ... + t_(k-1), t_k) = (sum [c]^p M^p - (sum [c] M)^p) / p
        let mut lifted = Poly::zero();
        let mut pure = Poly::zero();
        let mut acc = self.zero();
        for (m, c) in terms {
            let t = w2.teichmuller(c.w0);
            r.add_term(&mut lifted, m.clone(), &t);
            r.add_term(&mut pure, m.pow(p as u32), &w2.pow(&t, p));
            acc = self.add(&acc, &self.dtot_term(m, c));
        }
        let diff = r.sub(&pure, &r.pow(&lifted, p));
        let corr = a0.ring().from_terms(diff.terms().map(|(m, c)| (m.clone(), w2.div_p(c).expect("multinomial coefficients are divisible by p"))));
        acc.0[0] = a0.add(&acc.0[0], &a0.nf(&corr));
        acc
    }

    /// d^tot(c M) = delta(c) M^p d p + c0^p sum_k e_k (M / x_k)^p d x_k.
    fn dtot_term(&self, m: &Monomial, c: &W2Elem) -> DiffElem {
        let a0 = self.base();
        let w2 = self.alg.base();
        let k = self.alg.field();
        let p = self.alg.p();
        let mp = m.pow(p);
        let mut out = self.zero();
        out.0[0] = a0.monomial_times(&mp, w2.delta(c));
        let c0p = k.frobenius(c.w0);
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut mi = mp.clone();
            mi.0[i] -= p;
            out.0[i + 1] = a0.monomial_times(&mi, k.mul(&c0p, &k.from_int(e as i64)));
        }
        out
    }

    /// alpha(x) = x d^tot p.
    pub fn alpha(&self, x: &Poly<FqElem>) -> DiffElem {
        let mut v = self.zero();
        v.0[0] = self.base().nf(x);
        v
    }

    /// beta: drop the d^tot p coordinate, landing in F*Omega^1_{A0}.
    pub fn beta(&self, v: &DiffElem) -> Vec<Poly<FqElem>> {
        v.0[1..].to_vec()
    }

    /// The presentation of F*Omega^1_{A0}: the image of the relations under beta.
    pub fn frob_omega(&self) -> FrobOmega {
        FrobOmega { base: self.base().clone(), relations: self.relations.iter().map(|r| self.beta(r)).collect() }
    }

    /// Sum_k u_k v_k.
    pub fn pair(&self, u: &[Poly<FqElem>], v: &DiffElem) -> Poly<FqElem> {
        let a0 = self.base();
        u.iter().zip(&v.0).fold(a0.zero(), |acc, (x, y)| a0.add(&acc, &a0.mul(x, y)))
    }

    /// Whether `v` lies in the A0-span of the relations, searching
    /// multipliers among standard monomials of degree <= `window`.
    pub fn in_relation_span(&self, v: &DiffElem, window: u32) -> bool {
        if v.is_zero() {
            return true;
        }
        let rows: Vec<Vec<Poly<FqElem>>> = self.relations.iter().map(|r| r.0.clone()).collect();
        vector_in_span(self.base(), &rows, &v.0, window)
    }

    pub fn format(&self, v: &DiffElem) -> String {
        let a0 = self.base();
        let names = self.gen_names();
        let parts: Vec<String> = v
            .0
            .iter()
            .zip(&names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| format!("({})*{}", a0.format(c), n))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// F*Omega^1_{A0}: generators F*dx_i, relations the Jacobian rows of the
/// ideal generators with p-th powered entries.
#[derive(Clone, Debug)]
pub struct FrobOmega {
    pub base: ReducedAlgebra,
    pub relations: Vec<Vec<Poly<FqElem>>>,
}

impl FrobOmega {
    pub fn in_relation_span(&self, v: &[Poly<FqElem>], window: u32) -> bool {
        if v.iter().all(|c| c.is_zero()) {
            return true;
        }
        vector_in_span(&self.base, &self.relations, v, window)
    }
}

/// Is `v` an A0-combination of `rows` with multipliers of degree <= window?
pub(crate) fn vector_in_span(a0: &ReducedAlgebra, rows: &[Vec<Poly<FqElem>>], v: &[Poly<FqElem>], window: u32) -> bool {
    let k = a0.field();
    let basis = a0.staircase(window);
    let mut index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut vecs: Vec<Vec<(usize, FqElem)>> = Vec::new();
    let coords = |poly_vec: &[Poly<FqElem>], index: &mut BTreeMap<(usize, Monomial), usize>| {
        let mut out = Vec::new();
        for (slot, c) in poly_vec.iter().enumerate() {
            for (m, x) in c.terms() {
                let n = index.len();
                let i = *index.entry((slot, m.clone())).or_insert(n);
                out.push((i, *x));
            }
        }
        out
    };
    for r in rows {
        for m in &basis {
            let mono = a0.monomial(m.clone());
            let prod: Vec<Poly<FqElem>> = r.iter().map(|c| a0.mul(c, &mono)).collect();
            vecs.push(coords(&prod, &mut index));
        }
    }
    let target = coords(v, &mut index);
    let dim = index.len();
    let dense = |sparse: &[(usize, FqElem)]| {
        let mut d = vec![k.zero(); dim];
        for (i, x) in sparse {
            d[*i] = k.add(&d[*i], x);
        }
        d
    };
    let mut space = RowSpace::new(k);
    for s in &vecs {
        space.insert(&dense(s));
    }
    space.contains(&dense(&target))
}

/// The pullback Omega_A (x) B0 -> Omega_B along f: A -> B, as the images
/// of the generators.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub hom: AlgebraHom,
    pub source: DiffModule,
    pub target: DiffModule,
    pub columns: Vec<DiffElem>,
}

impl ModuleMap {
    pub fn apply(&self, v: &DiffElem) -> DiffElem {
        let mut acc = self.target.zero();
        for (c, col) in v.0.iter().zip(&self.columns) {
            let fc = self.hom.apply_mod_p(c);
            acc = self.target.add(&acc, &self.target.scale(&fc, col));
        }
        acc
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMap) -> Result<ModuleMap> {
        let hom = self.hom.then(&next.hom)?;
        let columns = self.columns.iter().map(|c| next.apply(c)).collect();
        Ok(ModuleMap { hom, source: self.source.clone(), target: next.target.clone(), columns })
    }
}

/// d^tot a (x) b0 -> b0 d^tot f(a). Each relation of A is checked to land
/// in the relations of B, with an exact certificate from the division of
/// f(g) by the ideal of B.
pub fn pullback(f: &AlgebraHom, ma: &DiffModule, mb: &DiffModule) -> Result<ModuleMap> {
    ma.alg.ensure_same(f.source())?;
    mb.alg.ensure_same(f.target())?;
    let mut columns = vec![mb.gen(0)];
    for img in f.images() {
        columns.push(mb.dtot(img));
    }
    let map = ModuleMap { hom: f.clone(), source: ma.clone(), target: mb.clone(), columns };
    let b = &mb.alg;
    let raw_images: Vec<Poly<W2Elem>> = f.images().to_vec();
    for (g, rel) in ma.alg.gens().iter().zip(&ma.relations) {
        let pushed = map.apply(rel);
        let composite = ma.alg.ambient().substitute(g, b.ambient(), &raw_images, |c| b.ambient().constant(*c));
        let direct = mb.dtot(&composite);
        if pushed != direct {
            return Err(Error::Inconsistent(format!(
                "chain rule fails on relation {}",
                ma.alg.format(g)
            )));
        }
        let cert = mb.ideal_certificate(&composite)?;
        if cert != direct {
            return Err(Error::Inconsistent(format!(
                "image of relation {} is not in the relation module",
                ma.alg.format(g)
            )));
        }
    }
    Ok(map)
}

impl DiffModule {
    /// For e in the ideal of A, writes e = sum Q_j G_j over the Groebner
    /// lifts and returns sum (Q_j mod p)^p d^tot(G_j), which equals d^tot(e)
    /// exactly; errors if e is not in the ideal.
    pub fn ideal_certificate(&self, e: &Poly<W2Elem>) -> Result<DiffElem> {
        let a = &self.alg;
        let a0 = self.base();
        let r = a.ambient();
        let e0 = crate::algebra::reduce_coeffs(a0.ring(), e);
        let (qs, rem) = a0.divide(&e0);
        if !rem.is_zero() {
            return Err(Error::Inconsistent("element is not in the ideal modulo p".into()));
        }
        let mut rest = e.clone();
        for (q, g) in qs.iter().zip(a.gb_lifts()) {
            rest = r.sub(&rest, &r.mul(&crate::algebra::teich_coeffs(r, q), g));
        }
        let w2 = a.base();
        let mut f_terms = Vec::new();
        for (m, c) in rest.terms() {
            f_terms.push((m.clone(), w2.div_p(c).ok_or_else(|| Error::Inconsistent("not divisible by p".into()))?));
        }
        let f0 = a0.ring().from_terms(f_terms);
        let (_, rem1) = a0.divide(&f0);
        if !rem1.is_zero() {
            return Err(Error::Inconsistent("element is not in the ideal".into()));
        }
        // the p * (...) part of each multiplier does not change its reduction
        let p = a.p() as u64;
        let mut acc = self.zero();
        for (q, g) in qs.iter().zip(a.gb_lifts()) {
            if q.is_zero() {
                continue;
            }
            let qp = a0.pow(&a0.nf(q), p);
            acc = self.add(&acc, &self.scale(&qp, &self.dtot(g)));
        }
        Ok(acc)
    }
}

impl ReducedAlgebra {
    /// Normal form of c * m.
    pub fn monomial_times(&self, m: &Monomial, c: FqElem) -> Poly<FqElem> {
        if self.field().is_zero(&c) {
            return Poly::zero();
        }
        self.nf(&self.ring().monomial(m.clone(), c))
    }
}

/// The polynomial ring of the A0 presentation, for callers needing raw terms.
pub fn ambient0(m: &DiffModule) -> &PolyRing<crate::coefficients::Fq> {
    m.base().ring()
}

#[cfg(test)]
mod tests;
