//! Finitely presented algebras over W2(F_q) and their reductions mod p.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::groebner::{buchberger, Tracked};
use super::monomial::{monomials_up_to, Monomial, MonomialOrder};
use super::parse::parse_into;
use super::poly::{Poly, PolyRing};
use crate::coefficients::{Fq, FqElem, W2Elem, W2};
use crate::error::{Error, Result};
use crate::ring::CommRing;

/// Division by a monic basis, reducing any reducible term until none is left.
fn divide<R: CommRing>(
    ring: &PolyRing<R>,
    f: &Poly<R::Elem>,
    basis: &[Poly<R::Elem>],
    leads: &[Monomial],
    with_quotients: bool,
) -> (Vec<Poly<R::Elem>>, Poly<R::Elem>) {
    let mut rem = f.clone();
    let mut qs = vec![Poly::zero(); if with_quotients { basis.len() } else { 0 }];
    loop {
        let hit = rem.terms().find_map(|(m, c)| {
            leads.iter().position(|l| l.divides(m)).map(|j| (m.clone(), c.clone(), j))
        });
        let Some((m, c, j)) = hit else { break };
        let q = leads[j].quotient(&m);
        ring.sub_mul_term(&mut rem, &c, &q, &basis[j]);
        if with_quotients {
            ring.add_term(&mut qs[j], q, &c);
        }
    }
    (qs, rem)
}

fn check_names(names: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for n in names {
        let ok = !n.is_empty()
            && n != "p"
            && n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::Parse { column: 0, message: format!("invalid variable name `{n}`") });
        }
        if !seen.insert(n.as_str()) {
            return Err(Error::Parse { column: 0, message: format!("duplicate variable `{n}`") });
        }
    }
    Ok(())
}

struct RedInner {
    ring: PolyRing<Fq>,
    names: Vec<String>,
    gb: Vec<Poly<FqElem>>,
    leads: Vec<Monomial>,
}

/// A quotient F_q[x]/I0 with a reduced Groebner basis. Elements are
/// polynomials in normal form.
#[derive(Clone)]
pub struct ReducedAlgebra(Arc<RedInner>);

impl ReducedAlgebra {
    pub fn new(field: Fq, names: Vec<String>, gens: &[Poly<FqElem>]) -> Result<Self> {
        Self::with_order(field, names, gens, MonomialOrder::default())
    }

    pub fn with_order(field: Fq, names: Vec<String>, gens: &[Poly<FqElem>], order: MonomialOrder) -> Result<Self> {
        check_names(&names)?;
        let ring = PolyRing::new(field, names.len(), order);
        let tracked = gens.iter().map(|g| Tracked { f: g.clone(), lift: None }).collect();
        let gb = buchberger(&ring, None, tracked).into_iter().map(|t| t.f).collect();
        Ok(Self::from_gb(ring, names, gb))
    }

    fn from_gb(ring: PolyRing<Fq>, names: Vec<String>, gb: Vec<Poly<FqElem>>) -> Self {
        let leads = gb.iter().map(|g| ring.leading_term(g).unwrap().0.clone()).collect();
        ReducedAlgebra(Arc::new(RedInner { ring, names, gb, leads }))
    }

    /// The polynomial ring itself.
    pub fn polynomial(field: Fq, names: &[&str]) -> Result<Self> {
        Self::new(field, names.iter().map(|s| s.to_string()).collect(), &[])
    }

    pub fn field(&self) -> &Fq {
        self.0.ring.coeff_ring()
    }

    pub fn ring(&self) -> &PolyRing<Fq> {
        &self.0.ring
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn gb(&self) -> &[Poly<FqElem>] {
        &self.0.gb
    }

    pub fn leads(&self) -> &[Monomial] {
        &self.0.leads
    }

    /// True when the ideal is the unit ideal.
    pub fn is_trivial(&self) -> bool {
        self.0.leads.iter().any(|m| m.is_one())
    }

    pub fn nf(&self, f: &Poly<FqElem>) -> Poly<FqElem> {
        divide(&self.0.ring, f, &self.0.gb, &self.0.leads, false).1
    }

    /// Quotients (aligned with `gb`) and remainder of division.
    pub fn divide(&self, f: &Poly<FqElem>) -> (Vec<Poly<FqElem>>, Poly<FqElem>) {
        divide(&self.0.ring, f, &self.0.gb, &self.0.leads, true)
    }

    pub fn in_staircase(&self, m: &Monomial) -> bool {
        !self.0.leads.iter().any(|l| l.divides(m))
    }

    /// Standard monomials of degree <= `max_deg`; an F_q-basis of the
    /// corresponding filtered piece.
    pub fn staircase(&self, max_deg: u32) -> Vec<Monomial> {
        monomials_up_to(self.nvars(), max_deg).into_iter().filter(|m| self.in_staircase(m)).collect()
    }

    pub fn var(&self, i: usize) -> Poly<FqElem> {
        self.nf(&self.0.ring.var(i))
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn constant(&self, c: FqElem) -> Poly<FqElem> {
        self.nf(&self.0.ring.constant(c))
    }

    pub fn monomial(&self, m: Monomial) -> Poly<FqElem> {
        self.nf(&self.0.ring.monomial(m, self.field().one()))
    }

    pub fn parse(&self, src: &str) -> Result<Poly<FqElem>> {
        let lookup = |n: &str| self.var_index(n).map(|i| self.var(i));
        parse_into(src, self, &lookup, self.zero())
    }

    pub fn format(&self, f: &Poly<FqElem>) -> String {
        let k = self.field();
        self.0.ring.format(f, &self.0.names, |c| k.fmt_elem(*c))
    }

    /// Coordinates of `f` (in normal form) against `basis`; `None` if `f`
    /// has a monomial outside it.
    /// A random element supported on standard monomials of degree <= max_deg.
    pub fn random<G: rand::Rng + ?Sized>(&self, rng: &mut G, max_deg: u32) -> Poly<FqElem> {
        let k = self.field();
        self.ring().from_terms(self.staircase(max_deg).into_iter().map(|m| (m, k.random(rng))))
    }

    pub fn coordinates(&self, f: &Poly<FqElem>, basis: &[Monomial]) -> Option<Vec<FqElem>> {
        let mut out = vec![self.field().zero(); basis.len()];
        for (m, c) in f.terms() {
            let i = basis.iter().position(|b| b == m)?;
            out[i] = *c;
        }
        Some(out)
    }

    /// Inverse of a unit, searched among combinations of standard monomials
    /// of degree <= `window`.
    pub fn inverse(&self, a: &Poly<FqElem>, window: u32) -> Option<Poly<FqElem>> {
        let basis = self.staircase(window);
        let products: Vec<Poly<FqElem>> =
            basis.iter().map(|m| self.mul(a, &self.monomial(m.clone()))).collect();
        let mut rows_monos: Vec<Monomial> = products.iter().flat_map(|p| p.monomials().cloned()).collect();
        rows_monos.push(Monomial::one(self.nvars()));
        rows_monos.sort();
        rows_monos.dedup();
        let k = self.field();
        let a_mat: Vec<Vec<FqElem>> = rows_monos
            .iter()
            .map(|rm| products.iter().map(|p| p.coeff(rm).copied().unwrap_or(k.zero())).collect())
            .collect();
        let one = Monomial::one(self.nvars());
        let b: Vec<FqElem> = rows_monos.iter().map(|rm| if *rm == one { k.one() } else { k.zero() }).collect();
        let x = crate::linalg::solve(k, &a_mat, &b, basis.len())?;
        Some(self.0.ring.from_terms(basis.into_iter().zip(x)))
    }

    pub fn same(&self, other: &ReducedAlgebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.names == other.0.names && self.0.ring == other.0.ring && self.0.gb == other.0.gb)
    }

    pub fn ensure_same(&self, other: &ReducedAlgebra) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch("different reduced algebras".into()))
        }
    }
}

impl PartialEq for ReducedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl fmt::Debug for ReducedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gb: Vec<String> = self.0.gb.iter().map(|g| self.format(g)).collect();
        write!(f, "{:?}[{}]/({})", self.field(), self.0.names.join(","), gb.join(", "))
    }
}

impl CommRing for ReducedAlgebra {
    type Elem = Poly<FqElem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }
    fn one(&self) -> Self::Elem {
        self.nf(&self.0.ring.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.0.ring.add(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.0.ring.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.nf(&self.0.ring.mul(a, b))
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.field().from_int(n))
    }
}

struct AlgInner {
    w2: W2,
    names: Vec<String>,
    wring: PolyRing<W2>,
    gens: Vec<Poly<W2Elem>>,
    red: ReducedAlgebra,
    /// Elements of the ideal reducing to the Groebner basis of `red`.
    lifts: Vec<Poly<W2Elem>>,
    smooth: OnceLock<bool>,
    assume_smooth: bool,
}

/// A finitely presented algebra A = W2(F_q)[x]/I, certified flat over W2 at
/// construction, together with A0 = A/pA.
///
/// Elements are polynomials in the canonical form `lift(n0) + p*lift(n1)`
/// with `n0`, `n1` supported on the staircase of A0.
#[derive(Clone)]
pub struct FpAlgebra(Arc<AlgInner>);

impl FpAlgebra {
    pub fn new(w2: &W2, names: Vec<String>, gens: Vec<Poly<W2Elem>>) -> Result<Self> {
        Self::with_order(w2, names, gens, MonomialOrder::default())
    }

    pub fn with_order(w2: &W2, names: Vec<String>, gens: Vec<Poly<W2Elem>>, order: MonomialOrder) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        let wring = PolyRing::new(w2.clone(), n, order);
        let ring0 = PolyRing::new(w2.residue_field().clone(), n, order);
        let tracked = gens
            .iter()
            .map(|g| Tracked { f: reduce_coeffs(&ring0, g), lift: Some(g.clone()) })
            .collect();
        let basis = buchberger(&ring0, Some(&wring), tracked);
        let (gb, lifts): (Vec<_>, Vec<_>) = basis.into_iter().map(|t| (t.f, t.lift.unwrap())).unzip();
        let red = ReducedAlgebra::from_gb(ring0, names.clone(), gb);
        let alg = FpAlgebra(Arc::new(AlgInner {
            w2: w2.clone(),
            names,
            wring,
            gens,
            red,
            lifts,
            smooth: OnceLock::new(),
            assume_smooth: false,
        }));
        alg.certify_flat()?;
        Ok(alg)
    }

    /// W2(F_q)[names] with no relations.
    pub fn polynomial(w2: &W2, names: &[&str]) -> Result<Self> {
        Self::new(w2, names.iter().map(|s| s.to_string()).collect(), vec![])
    }

    /// Parses the relations in the given variables.
    pub fn parse(w2: &W2, names: &[&str], relations: &[&str]) -> Result<Self> {
        let free = Self::polynomial(w2, names)?;
        let gens = relations.iter().map(|r| free.parse_ambient(r)).collect::<Result<Vec<_>>>()?;
        Self::new(w2, free.names().to_vec(), gens)
    }

    /// Exact flatness test: every generator and every Groebner S-pair of
    /// the lifts has normal form zero. Equivalent to I ∩ pW2[x] = pI.
    fn certify_flat(&self) -> Result<()> {
        let r = &self.0.wring;
        for (i, g) in self.0.gens.iter().enumerate() {
            if !self.nf(g).is_zero() {
                return Err(Error::NotFlat(format!(
                    "relation {} = {} leaves p-torsion {}",
                    i,
                    self.format(g),
                    self.format(&self.nf(g))
                )));
            }
        }
        let leads = self.0.red.leads();
        let one = self.0.w2.one();
        for j in 0..leads.len() {
            for i in 0..j {
                if leads[i].coprime(&leads[j]) {
                    continue;
                }
                let l = leads[i].lcm(&leads[j]);
                let s = r.sub(
                    &r.mul_term(&self.0.lifts[i], &one, &leads[i].quotient(&l)),
                    &r.mul_term(&self.0.lifts[j], &one, &leads[j].quotient(&l)),
                );
                let nf = self.nf(&s);
                if !nf.is_zero() {
                    return Err(Error::NotFlat(format!(
                        "syzygy of basis elements {i} and {j} leaves p-torsion {}",
                        self.format(&nf)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &W2 {
        &self.0.w2
    }

    pub fn field(&self) -> &Fq {
        self.0.w2.residue_field()
    }

    pub fn p(&self) -> u32 {
        self.0.w2.p()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// The ambient polynomial ring W2(F_q)[x].
    pub fn ambient(&self) -> &PolyRing<W2> {
        &self.0.wring
    }

    pub fn gens(&self) -> &[Poly<W2Elem>] {
        &self.0.gens
    }

    /// The mod-p reduction A0.
    pub fn reduced(&self) -> &ReducedAlgebra {
        &self.0.red
    }

    /// Lifts to the ideal of the Groebner basis of A0.
    pub fn gb_lifts(&self) -> &[Poly<W2Elem>] {
        &self.0.lifts
    }

    /// Always true for a constructed algebra; construction fails otherwise.
    pub fn flat_certificate(&self) -> bool {
        true
    }

    /// Canonical normal form.
    pub fn nf(&self, e: &Poly<W2Elem>) -> Poly<W2Elem> {
        let w2 = &self.0.w2;
        let r = &self.0.wring;
        let e0 = reduce_coeffs(self.0.red.ring(), e);
        let (qs, r0) = self.0.red.divide(&e0);
        let mut rest = e.clone();
        for (q, g) in qs.iter().zip(&self.0.lifts) {
            if !q.is_zero() {
                let lq = teich_coeffs(r, q);
                rest = r.sub(&rest, &r.mul(&lq, g));
            }
        }
        rest = r.sub(&rest, &teich_coeffs(r, &r0));
        let f: Poly<FqElem> = self.0.red.ring().from_terms(rest.terms().map(|(m, c)| {
            (m.clone(), w2.div_p(c).expect("remainder is divisible by p"))
        }));
        let r1 = self.0.red.nf(&f);
        let mut out = teich_coeffs(r, &r0);
        for (m, c) in r1.terms() {
            r.add_term(&mut out, m.clone(), &w2.times_p(*c));
        }
        out
    }

    /// pi_0: reduction mod p, in normal form in A0.
    pub fn reduce(&self, e: &Poly<W2Elem>) -> Poly<FqElem> {
        self.0.red.nf(&reduce_coeffs(self.0.red.ring(), e))
    }

    /// Teichmuller lift of a polynomial over F_q.
    pub fn lift(&self, e0: &Poly<FqElem>) -> Poly<W2Elem> {
        self.nf(&teich_coeffs(&self.0.wring, e0))
    }

    /// p * (any lift of e0); independent of the lift.
    pub fn times_p(&self, e0: &Poly<FqElem>) -> Poly<W2Elem> {
        let r = &self.0.wring;
        let w2 = &self.0.w2;
        self.nf(&r.from_terms(e0.terms().map(|(m, c)| (m.clone(), w2.times_p(*c)))))
    }

    /// Exact division by p: `Some(b0)` with e = p * lift(b0) when e lies in pA.
    pub fn div_p(&self, e: &Poly<W2Elem>) -> Option<Poly<FqElem>> {
        let nf = self.nf(e);
        let w2 = &self.0.w2;
        let mut terms = Vec::new();
        for (m, c) in nf.terms() {
            terms.push((m.clone(), w2.div_p(c)?));
        }
        Some(self.0.red.ring().from_terms(terms))
    }

    pub fn var(&self, i: usize) -> Poly<W2Elem> {
        self.nf(&self.0.wring.var(i))
    }

    pub fn constant(&self, c: W2Elem) -> Poly<W2Elem> {
        self.nf(&self.0.wring.constant(c))
    }

    /// Parses into the ambient polynomial ring, without normalizing.
    pub fn parse_ambient(&self, src: &str) -> Result<Poly<W2Elem>> {
        let r = &self.0.wring;
        let lookup = |n: &str| self.var_index(n).map(|i| r.var(i));
        let p = r.from_int(self.p() as i64);
        parse_into(src, r, &lookup, p)
    }

    /// Parses an element of A (normal form).
    pub fn parse_elem(&self, src: &str) -> Result<Poly<W2Elem>> {
        Ok(self.nf(&self.parse_ambient(src)?))
    }

    pub fn format(&self, e: &Poly<W2Elem>) -> String {
        let w2 = &self.0.w2;
        self.0.wring.format(e, &self.0.names, |c| w2.fmt_elem(c))
    }

    pub fn format0(&self, e: &Poly<FqElem>) -> String {
        self.0.red.format(e)
    }

    /// Standard monomials of A0 up to the given degree; lifted, they form a
    /// W2-basis of the corresponding piece of A.
    pub fn staircase(&self, max_deg: u32) -> Vec<Monomial> {
        self.0.red.staircase(max_deg)
    }

    /// Jacobian criterion on A0, assuming the relations cut out a complete
    /// intersection: the ideal plus the maximal minors of the Jacobian of
    /// the relations must be the unit ideal.
    /// A random normal form supported on standard monomials of degree <= max_deg.
    pub fn random<G: rand::Rng + ?Sized>(&self, rng: &mut G, max_deg: u32) -> Poly<W2Elem> {
        let w2 = &self.0.w2;
        self.0.wring.from_terms(self.staircase(max_deg).into_iter().map(|m| (m, w2.random(rng))))
    }

    pub fn is_smooth(&self) -> bool {
        if self.0.assume_smooth {
            return true;
        }
        *self.0.smooth.get_or_init(|| self.jacobian_criterion())
    }

    /// Whether the Jacobian criterion itself passed, ignoring overrides.
    pub fn jacobian_criterion(&self) -> bool {
        let red = &self.0.red;
        if red.is_trivial() {
            return false;
        }
        let ring0 = red.ring();
        let rels: Vec<Poly<FqElem>> = self
            .0
            .gens
            .iter()
            .map(|g| reduce_coeffs(ring0, g))
            .filter(|g| !g.is_zero())
            .collect();
        let r = rels.len();
        let n = self.nvars();
        if r == 0 {
            return true;
        }
        if r > n {
            return false;
        }
        let jac: Vec<Vec<Poly<FqElem>>> =
            rels.iter().map(|g| (0..n).map(|i| ring0.derivative(g, i)).collect()).collect();
        let mut ideal: Vec<Poly<FqElem>> = red.gb().to_vec();
        for cols in combinations(n, r) {
            let sub: Vec<Vec<Poly<FqElem>>> =
                jac.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
            let d = determinant(ring0, &sub);
            if !d.is_zero() {
                ideal.push(d);
            }
        }
        let check = ReducedAlgebra::from_gb(
            ring0.clone(),
            red.names().to_vec(),
            super::groebner::groebner_basis(ring0, &ideal),
        );
        check.is_trivial()
    }

    /// Copy of this algebra that reports itself smooth regardless of the
    /// Jacobian check.
    pub fn assume_smooth(&self) -> Self {
        let i = &self.0;
        FpAlgebra(Arc::new(AlgInner {
            w2: i.w2.clone(),
            names: i.names.clone(),
            wring: i.wring.clone(),
            gens: i.gens.clone(),
            red: i.red.clone(),
            lifts: i.lifts.clone(),
            smooth: OnceLock::new(),
            assume_smooth: true,
        }))
    }

    pub fn same(&self, other: &FpAlgebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.w2 == other.0.w2
                && self.0.names == other.0.names
                && self.0.wring == other.0.wring
                && self.0.gens == other.0.gens)
    }

    pub fn ensure_same(&self, other: &FpAlgebra) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch("different algebras".into()))
        }
    }

    /// A[1/s]: adjoins a fresh variable `s_inv` (or `x_inv` when s is the
    /// variable x) with relation s * s_inv - 1, appended last.
    pub fn localize(&self, s: &Poly<W2Elem>) -> Result<Localization> {
        let s0 = self.reduce(s);
        if s0.is_zero() {
            return Err(Error::DegenerateLocalization(format!("{} vanishes modulo p", self.format(s))));
        }
        let sn = self.nf(s);
        let base_name = match sn.terms().collect::<Vec<_>>().as_slice() {
            [(m, c)] if m.degree() == 1 && **c == self.0.w2.one() => {
                let i = m.0.iter().position(|&e| e == 1).unwrap();
                format!("{}_inv", self.0.names[i])
            }
            _ => "s_inv".to_string(),
        };
        let mut name = base_name.clone();
        let mut k = 1;
        while self.var_index(&name).is_some() {
            name = format!("{base_name}{k}");
            k += 1;
        }
        let mut names = self.0.names.clone();
        names.push(name);
        let r = &self.0.wring;
        let big = PolyRing::new(self.0.w2.clone(), names.len(), r.order());
        let mut gens: Vec<Poly<W2Elem>> = self.0.gens.iter().map(|g| r.extend_vars(g, 1)).collect();
        let s_ext = r.extend_vars(&sn, 1);
        let inv = big.var(names.len() - 1);
        gens.push(big.sub(&big.mul(&s_ext, &inv), &big.one()));
        let b = FpAlgebra::with_order(&self.0.w2, names, gens, r.order())?;
        if b.reduced().is_trivial() {
            return Err(Error::DegenerateLocalization(format!("{} is nilpotent modulo p", self.format(s))));
        }
        let b = if self.0.assume_smooth { b.assume_smooth() } else { b };
        let images = (0..self.nvars()).map(|i| b.var(i)).collect();
        let inclusion = super::hom::AlgebraHom::new(self.clone(), b.clone(), images)?;
        Ok(Localization { algebra: b.clone(), s: s_ext, inv_var: self.nvars(), inclusion })
    }
}

impl PartialEq for FpAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl fmt::Debug for FpAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.0.gens.iter().map(|g| self.format(g)).collect();
        write!(f, "W2({:?})[{}]/({})", self.field(), self.0.names.join(","), gens.join(", "))
    }
}

impl CommRing for FpAlgebra {
    type Elem = Poly<W2Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }
    fn one(&self) -> Self::Elem {
        self.nf(&self.0.wring.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    // staircase-supported polynomials are closed under + and -
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.0.wring.add(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.0.wring.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.nf(&self.0.wring.mul(a, b))
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.0.w2.from_int(n))
    }
}

/// A[1/s] with its structure data.
#[derive(Clone, Debug)]
pub struct Localization {
    pub algebra: FpAlgebra,
    /// s as a polynomial in the variables of A, embedded in the ambient
    /// ring of the localization.
    pub s: Poly<W2Elem>,
    /// Index of the adjoined inverse variable (always the last one).
    pub inv_var: usize,
    /// The canonical map A -> A[1/s].
    pub inclusion: super::hom::AlgebraHom,
}

/// Coefficientwise reduction mod p (no normalization).
pub fn reduce_coeffs(ring0: &PolyRing<Fq>, f: &Poly<W2Elem>) -> Poly<FqElem> {
    ring0.from_terms(f.terms().map(|(m, c)| (m.clone(), c.w0)))
}

/// Coefficientwise Teichmuller lift (no normalization).
pub fn teich_coeffs(wring: &PolyRing<W2>, f: &Poly<FqElem>) -> Poly<W2Elem> {
    let w2 = wring.coeff_ring();
    wring.from_terms(f.terms().map(|(m, c)| (m.clone(), w2.teichmuller(*c))))
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Laplace expansion along the first row.
fn determinant<R: CommRing>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    match m.len() {
        0 => ring.one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = ring.zero();
            for j in 0..n {
                let minor: Vec<Vec<R::Elem>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let t = ring.mul(&m[0][j], &determinant(ring, &minor));
                acc = if j % 2 == 0 { ring.add(&acc, &t) } else { ring.sub(&acc, &t) };
            }
            acc
        }
    }
}
