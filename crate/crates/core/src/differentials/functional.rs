//! A0-linear functionals on Omega^{1,tot}, splittings of the fundamental
//! sequence, and Frobenius lifts.

use std::collections::BTreeMap;

use super::{DiffElem, DiffModule};
use crate::algebra::{FpAlgebra, Localization, Monomial, Poly, ReducedAlgebra};
use crate::coefficients::{FqElem, W2Elem};
use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::CommRing;

/// A functional Omega^{1,tot}_A -> A0, given by its values on
/// [d p, d x_1, ..., d x_n]. It is a splitting of alpha when the value on
/// d p is 1, and a section of Hom(F*Omega^1, O) when that value is 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    pub values: Vec<Poly<FqElem>>,
}

impl Functional {
    /// Checks that every relation is sent to zero.
    pub fn new(m: &DiffModule, values: Vec<Poly<FqElem>>) -> Result<Self> {
        if values.len() != m.rank() {
            return Err(Error::Inconsistent(format!("expected {} values, got {}", m.rank(), values.len())));
        }
        let values: Vec<_> = values.iter().map(|v| m.base().nf(v)).collect();
        for (i, r) in m.relations().iter().enumerate() {
            if !m.pair(&values, r).is_zero() {
                return Err(Error::Inconsistent(format!("functional does not vanish on relation {i}")));
            }
        }
        Ok(Functional { values })
    }

    pub fn zero(m: &DiffModule) -> Self {
        Functional { values: vec![Poly::zero(); m.rank()] }
    }

    pub fn is_splitting(&self, m: &DiffModule) -> bool {
        self.values[0] == m.base().one()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn eval(&self, m: &DiffModule, v: &DiffElem) -> Poly<FqElem> {
        m.pair(&self.values, v)
    }

    pub fn add(&self, m: &DiffModule, other: &Functional) -> Functional {
        let r = m.base();
        Functional { values: self.values.iter().zip(&other.values).map(|(a, b)| r.add(a, b)).collect() }
    }

    pub fn sub(&self, m: &DiffModule, other: &Functional) -> Functional {
        let r = m.base();
        Functional { values: self.values.iter().zip(&other.values).map(|(a, b)| r.sub(a, b)).collect() }
    }

    pub fn neg(&self, m: &DiffModule) -> Functional {
        let r = m.base();
        Functional { values: self.values.iter().map(|a| r.neg(a)).collect() }
    }

    /// Values on d x_1, ..., d x_n, i.e. the induced map on F*Omega^1.
    pub fn on_frob_omega(&self, v: &[Poly<FqElem>], m: &DiffModule) -> Poly<FqElem> {
        let r = m.base();
        self.values[1..].iter().zip(v).fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b)))
    }

    pub fn format(&self, m: &DiffModule) -> Vec<String> {
        self.values.iter().map(|v| m.base().format(v)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SplittingSearch {
    Found(Functional),
    /// No splitting with values of degree <= bound.
    Absent { bound: u32 },
}

impl SplittingSearch {
    pub fn found(&self) -> Option<&Functional> {
        match self {
            SplittingSearch::Found(f) => Some(f),
            SplittingSearch::Absent { .. } => None,
        }
    }
}

pub(crate) fn default_bound(a: &FpAlgebra) -> u32 {
    let d = a.gens().iter().map(|g| g.total_degree()).max().unwrap_or(1).max(1);
    2 * a.p() * d + 2
}

/// Searches for h: Omega^{1,tot}_A -> A0 with h(d p) = 1. The values on
/// d x_i range over standard monomials of degree <= bound; without an
/// explicit bound a default is tried and then doubled once.
pub fn find_splitting(m: &DiffModule, bound: Option<u32>) -> Result<SplittingSearch> {
    let bounds = match bound {
        Some(b) => vec![b],
        None => {
            let b = default_bound(m.algebra());
            vec![b, 2 * b]
        }
    };
    let a0 = m.base();
    let n = m.rank() - 1;
    let rows: Vec<Vec<Poly<FqElem>>> = m.relations().iter().map(|r| r.0[1..].to_vec()).collect();
    let rhs: Vec<Poly<FqElem>> = m.relations().iter().map(|r| a0.neg(&r.0[0])).collect();
    for &b in &bounds {
        if let Some(u) = solve_linear(a0, &rows, &rhs, n, b) {
            let mut values = vec![a0.one()];
            values.extend(u);
            return Ok(SplittingSearch::Found(Functional::new(m, values)?));
        }
    }
    Ok(SplittingSearch::Absent { bound: *bounds.last().unwrap() })
}

/// Finds u_1..u_n supported on standard monomials of degree <= window with
/// sum_k rows[l][k] u_k = rhs[l] in A0 for every l.
pub fn solve_linear(
    a0: &ReducedAlgebra,
    rows: &[Vec<Poly<FqElem>>],
    rhs: &[Poly<FqElem>],
    n: usize,
    window: u32,
) -> Option<Vec<Poly<FqElem>>> {
    let k = a0.field();
    let basis = a0.staircase(window);
    let mut index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut columns: Vec<Vec<(usize, FqElem)>> = Vec::new();
    for slot in 0..n {
        for m in &basis {
            let mono = a0.monomial(m.clone());
            let mut col = Vec::new();
            for (l, row) in rows.iter().enumerate() {
                let prod = a0.mul(&row[slot], &mono);
                for (mm, c) in prod.terms() {
                    let len = index.len();
                    let i = *index.entry((l, mm.clone())).or_insert(len);
                    col.push((i, *c));
                }
            }
            columns.push(col);
        }
    }
    let mut target = Vec::new();
    for (l, r) in rhs.iter().enumerate() {
        for (mm, c) in r.terms() {
            let len = index.len();
            let i = *index.entry((l, mm.clone())).or_insert(len);
            target.push((i, *c));
        }
    }
    let neq = index.len();
    let ncols = columns.len();
    let mut a = vec![vec![k.zero(); ncols]; neq];
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col {
            a[*i][j] = k.add(&a[*i][j], c);
        }
    }
    let mut b = vec![k.zero(); neq];
    for (i, c) in target {
        b[i] = k.add(&b[i], &c);
    }
    let x = linalg::solve(k, &a, &b, ncols)?;
    let mut out = Vec::with_capacity(n);
    for slot in 0..n {
        let terms = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), x[slot * basis.len() + i]))
            .filter(|(_, c)| !k.is_zero(c));
        out.push(a0.ring().from_terms(terms));
    }
    Some(out)
}

/// A lift of the absolute Frobenius of A0 to A: a ring endomorphism,
/// Frobenius-semilinear over W2, with phi(x) = x^p mod p.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusLift {
    alg: FpAlgebra,
    images: Vec<Poly<W2Elem>>,
}

impl FrobeniusLift {
    pub fn new(alg: &FpAlgebra, images: Vec<Poly<W2Elem>>) -> Result<Self> {
        if images.len() != alg.nvars() {
            return Err(Error::InvalidLift(format!("expected {} images, got {}", alg.nvars(), images.len())));
        }
        let images: Vec<_> = images.iter().map(|e| alg.nf(e)).collect();
        let p = alg.p() as u64;
        for (i, img) in images.iter().enumerate() {
            let xp = alg.reduced().pow(&alg.reduced().var(i), p);
            if alg.reduce(img) != xp {
                return Err(Error::InvalidLift(format!("image of {} is not {}^p mod p", alg.names()[i], alg.names()[i])));
            }
        }
        let phi = FrobeniusLift { alg: alg.clone(), images };
        for g in alg.gens() {
            if !phi.apply(g).is_zero() {
                return Err(Error::InvalidLift(format!("relation {} is not preserved", alg.format(g))));
            }
        }
        Ok(phi)
    }

    pub fn algebra(&self) -> &FpAlgebra {
        &self.alg
    }

    pub fn images(&self) -> &[Poly<W2Elem>] {
        &self.images
    }

    /// phi of a polynomial in the ambient ring.
    pub fn apply(&self, e: &Poly<W2Elem>) -> Poly<W2Elem> {
        let a = &self.alg;
        let w2 = a.base();
        a.ambient().substitute(e, a, &self.images, |c| a.constant(w2.frobenius(c)))
    }

    /// The splitting h(d^tot x) = (phi(x) - x^p)/p.
    pub fn to_splitting(&self, m: &DiffModule) -> Result<Functional> {
        let a = &self.alg;
        a.ensure_same(m.algebra())?;
        let p = a.p() as u64;
        let mut values = vec![a.reduced().one()];
        for (i, img) in self.images.iter().enumerate() {
            let diff = a.sub(img, &a.pow(&a.var(i), p));
            values.push(a.div_p(&diff).ok_or_else(|| Error::InvalidLift("phi(x) - x^p is not divisible by p".into()))?);
        }
        Functional::new(m, values)
    }

    /// phi(x) = x^p + p h(d^tot x).
    pub fn from_splitting(m: &DiffModule, h: &Functional) -> Result<Self> {
        let a = m.algebra();
        if !h.is_splitting(m) {
            return Err(Error::InvalidLift("functional is not a splitting".into()));
        }
        let p = a.p() as u64;
        let images = (0..a.nvars())
            .map(|i| a.add(&a.pow(&a.var(i), p), &a.times_p(&h.values[i + 1])))
            .collect();
        FrobeniusLift::new(a, images)
    }

    /// The unique extension to A[1/s].
    pub fn localize(&self, loc: &Localization) -> Result<Self> {
        let b = &loc.algebra;
        let w2 = b.base();
        let p = b.p() as u64;
        let mut images: Vec<Poly<W2Elem>> = self.images.iter().map(|e| loc.inclusion.apply(e)).collect();
        let inv = b.var(loc.inv_var);
        let mut partial = images.clone();
        partial.push(b.zero());
        let phi_s = b.ambient().substitute(&loc.s, b, &partial, |c| b.constant(w2.frobenius(c)));
        let w = b
            .div_p(&b.sub(&phi_s, &b.pow(&loc.s, p)))
            .ok_or_else(|| Error::InvalidLift("phi(s) - s^p is not divisible by p".into()))?;
        let corr = b.mul(&b.times_p(&w), &b.pow(&inv, 2 * p));
        images.push(b.sub(&b.pow(&inv, p), &corr));
        FrobeniusLift::new(b, images)
    }

    /// Transports a lift on R to L along an isomorphism with inverse.
    pub fn transport(&self, to_left: &crate::algebra::AlgebraHom, to_right: &crate::algebra::AlgebraHom) -> Result<Self> {
        self.alg.ensure_same(to_left.source())?;
        let images = to_right.images().iter().map(|z| to_left.apply(&self.apply(z))).collect();
        FrobeniusLift::new(to_left.target(), images)
    }

    pub fn format(&self) -> Vec<String> {
        self.images.iter().map(|e| self.alg.format(e)).collect()
    }
}
