//! Length-2 p-typical Witt vectors W2(F_q) in Witt coordinates, the universal
//! sum-rule polynomial C_p, and the base total p-derivation on W2.

use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use super::fq::{check_prime, Fq, FqElem};
use crate::error::{Error, Result};
use crate::ring::CommRing;

/// Exact integer coefficients binom(p, j)/p for j = 1..p-1.
///
/// `C_p(X, Y) = (X^p + Y^p - (X+Y)^p)/p = -sum_j binom(p,j)/p X^j Y^(p-j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CpCoeffs {
    p: u64,
    exact: Arc<Vec<BigUint>>,
    /// The same coefficients reduced modulo p^2.
    mod_p2: Arc<Vec<u64>>,
}

impl CpCoeffs {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        let mut exact = Vec::with_capacity(p as usize - 1);
        let mut binom = BigUint::from(1u32);
        for j in 1..p {
            binom = binom * BigUint::from(p - j + 1) / BigUint::from(j);
            exact.push(&binom / BigUint::from(p));
        }
        let p2 = BigUint::from(p * p);
        let mod_p2 = exact
            .iter()
            .map(|c| {
                let r = c % &p2;
                r.to_u64_digits().first().copied().unwrap_or(0)
            })
            .collect();
        Ok(CpCoeffs { p, exact: Arc::new(exact), mod_p2: Arc::new(mod_p2) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// binom(p, j)/p as an exact integer, 1 <= j <= p-1.
    pub fn exact(&self, j: usize) -> &BigUint {
        &self.exact[j - 1]
    }

    pub fn mod_p2(&self, j: usize) -> u64 {
        self.mod_p2[j - 1]
    }

    /// Evaluates C_p(x, y) in any ring of characteristic p or p^2.
    pub fn eval<R: CommRing>(&self, ring: &R, x: &R::Elem, y: &R::Elem) -> R::Elem {
        let p = self.p as usize;
        // x^j for j = 0..p-1 and y^(p-j)
        let mut xp = Vec::with_capacity(p);
        xp.push(ring.one());
        for j in 1..p {
            xp.push(ring.mul(&xp[j - 1], x));
        }
        let mut acc = ring.zero();
        let mut ypow = y.clone(); // y^(p-j) for j = p-1 downwards
        for j in (1..p).rev() {
            let coeff = ring.from_int(self.mod_p2(j) as i64);
            let term = ring.mul(&coeff, &ring.mul(&xp[j], &ypow));
            acc = ring.add(&acc, &term);
            ypow = ring.mul(&ypow, y);
        }
        ring.neg(&acc)
    }
}

/// C_p(x, y) for a prime p; rejects non-primes.
pub fn cp_eval<R: CommRing>(p: u64, ring: &R, x: &R::Elem, y: &R::Elem) -> Result<R::Elem> {
    Ok(CpCoeffs::new(p)?.eval(ring, x, y))
}

/// A Witt vector (w0, w1) of length 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct W2Elem {
    pub w0: FqElem,
    pub w1: FqElem,
}

/// The ring W2(F_q).
#[derive(Clone, Debug)]
pub struct W2 {
    k: Fq,
    cp: CpCoeffs,
}

impl PartialEq for W2 {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
    }
}
impl Eq for W2 {}

impl W2 {
    pub fn new(k: Fq) -> Result<Self> {
        let cp = CpCoeffs::new(k.p() as u64)?;
        Ok(W2 { k, cp })
    }

    /// W2(F_p), identified with Z/p^2.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(Fq::prime(p)?)
    }

    pub fn residue_field(&self) -> &Fq {
        &self.k
    }

    pub fn cp(&self) -> &CpCoeffs {
        &self.cp
    }

    pub fn p(&self) -> u32 {
        self.k.p()
    }

    pub fn elem(&self, w0: FqElem, w1: FqElem) -> W2Elem {
        W2Elem { w0, w1 }
    }

    /// Teichmuller representative (a, 0).
    pub fn teichmuller(&self, a: FqElem) -> W2Elem {
        W2Elem { w0: a, w1: self.k.zero() }
    }

    /// p * (a, *) = (0, a^p).
    pub fn times_p(&self, a: FqElem) -> W2Elem {
        W2Elem { w0: self.k.zero(), w1: self.k.frobenius(a) }
    }

    /// Exact division by p of an element of pW2; `None` when w0 != 0.
    pub fn div_p(&self, a: &W2Elem) -> Option<FqElem> {
        if self.k.is_zero(&a.w0) {
            Some(self.k.pth_root(a.w1))
        } else {
            None
        }
    }

    /// Checks that two W2 contexts agree before combining their elements.
    pub fn ensure_same(&self, other: &W2) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{:?} vs {:?}", self.k, other.k)))
        }
    }

    /// Witt Frobenius (r0^p, r1^p).
    pub fn frobenius(&self, r: &W2Elem) -> W2Elem {
        W2Elem { w0: self.k.frobenius(r.w0), w1: self.k.frobenius(r.w1) }
    }

    /// (phi(r) - r^p)/p, the value of the base p-derivation.
    pub fn delta(&self, r: &W2Elem) -> FqElem {
        let diff = self.sub(&self.frobenius(r), &self.pow(r, self.p() as u64));
        self.div_p(&diff)
            .expect("phi(r) and r^p agree modulo p")
    }

    /// c * (phi(r) - r^p)/p, the value on r of the total p-derivation with
    /// value c on p.
    pub fn base_delta(&self, r: &W2Elem, c: &FqElem) -> FqElem {
        self.k.mul(c, &self.delta(r))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> W2Elem {
        W2Elem { w0: self.k.random(rng), w1: self.k.random(rng) }
    }

    pub fn elements(&self) -> impl Iterator<Item = W2Elem> + '_ {
        self.k
            .elements()
            .flat_map(move |a| self.k.elements().map(move |b| W2Elem { w0: a, w1: b }))
    }

    /// Teichmuller lift of a in [0,p) to an integer mod p^2: a^p mod p^2.
    fn teich_int(&self, a: u64) -> u64 {
        let p2 = (self.p() as u64).pow(2);
        let mut acc = 1u64;
        for _ in 0..self.p() {
            acc = acc * a % p2;
        }
        acc
    }

    /// For elements of W2(F_p): the integer tau(a0) + p*a1 in [0, p^2).
    pub fn to_int(&self, a: &W2Elem) -> Option<u64> {
        if !self.k.is_prime_field_elem(a.w0) || !self.k.is_prime_field_elem(a.w1) {
            return None;
        }
        let p = self.p() as u64;
        Some((self.teich_int(a.w0.raw() as u64) + p * a.w1.raw() as u64) % (p * p))
    }

    pub fn fmt_elem(&self, a: &W2Elem) -> String {
        match self.to_int(a) {
            Some(n) => n.to_string(),
            None => format!("[{}, {}]", self.k.fmt_elem(a.w0), self.k.fmt_elem(a.w1)),
        }
    }
}

impl CommRing for W2 {
    type Elem = W2Elem;

    fn zero(&self) -> W2Elem {
        W2Elem::default()
    }
    fn one(&self) -> W2Elem {
        W2Elem { w0: self.k.one(), w1: self.k.zero() }
    }
    fn is_zero(&self, a: &W2Elem) -> bool {
        self.k.is_zero(&a.w0) && self.k.is_zero(&a.w1)
    }

    fn add(&self, a: &W2Elem, b: &W2Elem) -> W2Elem {
        let k = &self.k;
        let w1 = k.add(&k.add(&a.w1, &b.w1), &self.cp.eval(k, &a.w0, &b.w0));
        W2Elem { w0: k.add(&a.w0, &b.w0), w1 }
    }

    fn neg(&self, a: &W2Elem) -> W2Elem {
        // p odd: (-a0)^p = -a0^p, so C_p(a0, -a0) = 0
        W2Elem { w0: self.k.neg(&a.w0), w1: self.k.neg(&a.w1) }
    }

    fn mul(&self, a: &W2Elem, b: &W2Elem) -> W2Elem {
        let k = &self.k;
        let p = self.p() as u64;
        let a0p = k.pow(&a.w0, p);
        let b0p = k.pow(&b.w0, p);
        W2Elem {
            w0: k.mul(&a.w0, &b.w0),
            w1: k.add(&k.mul(&a0p, &b.w1), &k.mul(&b0p, &a.w1)),
        }
    }

    fn from_int(&self, n: i64) -> W2Elem {
        let p = self.p() as u64;
        let p2 = p * p;
        let v = (n as i128).rem_euclid(p2 as i128) as u64;
        let a0 = v % p;
        let t = self.teich_int(a0);
        let a1 = ((v + p2 - t) % p2) / p;
        W2Elem { w0: self.k.elem(a0 as i64), w1: self.k.elem(a1 as i64) }
    }
}
