//! The finite field F_q, q = p^m, as F_p[t]/(f) for a fixed irreducible f.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::upoly;
use crate::error::{Error, Result};
use crate::ring::CommRing;

/// Largest prime accepted; keeps the exact binomial table small.
pub const MAX_PRIME: u32 = 1021;
const MAX_DEGREE: usize = 16;

/// An element of F_q, encoded as the integer sum of its coefficients
/// `a_i * p^i` in the basis `1, t, ..., t^(m-1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FqElem(pub(crate) u32);

impl FqElem {
    pub fn raw(self) -> u32 {
        self.0
    }
}

#[derive(Debug)]
struct FqInner {
    p: u32,
    m: usize,
    q: u32,
    /// Monic modulus, low degree first, length m + 1.
    modulus: Vec<u32>,
}

#[derive(Clone)]
pub struct Fq(Arc<FqInner>);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.m, self.0.modulus)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if p > MAX_PRIME as u64 {
        return Err(Error::UnsupportedField(format!("p = {p} exceeds {MAX_PRIME}")));
    }
    Ok(())
}

/// Smallest monic irreducible of degree `m`, ordering candidates by the
/// base-p value of their lower coefficients (constant term least significant).
pub fn default_modulus(p: u32, m: usize) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let p64 = p as u64;
    let total = p64.pow(m as u32);
    for code in 0..total {
        let mut f = Vec::with_capacity(m + 1);
        let mut c = code;
        for _ in 0..m {
            f.push(c % p64);
            c /= p64;
        }
        f.push(1);
        if upoly::is_irreducible(&f, p64) {
            return f.into_iter().map(|x| x as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Fq {
    /// F_q with the default modulus.
    pub fn new(p: u32, m: usize) -> Result<Self> {
        check_prime(p as u64)?;
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::UnsupportedField(format!("degree m = {m}")));
        }
        Self::with_modulus(p, default_modulus(p, m))
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// F_q = F_p[t]/(modulus); the modulus is made monic and checked for irreducibility.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        check_prime(p as u64)?;
        let p64 = p as u64;
        let mut f: Vec<u64> = modulus.iter().map(|&c| c as u64 % p64).collect();
        while f.last() == Some(&0) {
            f.pop();
        }
        if f.len() < 2 {
            return Err(Error::UnsupportedField("modulus must have degree >= 1".into()));
        }
        let m = f.len() - 1;
        if m > MAX_DEGREE {
            return Err(Error::UnsupportedField(format!("degree m = {m}")));
        }
        let q = p64.checked_pow(m as u32).filter(|&q| q < (1 << 31)).ok_or_else(|| {
            Error::UnsupportedField(format!("q = {p}^{m} does not fit the element encoding"))
        })?;
        let lead_inv = upoly::inv_mod(f[m], p64);
        for c in f.iter_mut() {
            *c = *c * lead_inv % p64;
        }
        if !upoly::is_irreducible(&f, p64) {
            return Err(Error::ReducibleModulus { p });
        }
        Ok(Fq(Arc::new(FqInner {
            p,
            m,
            q: q as u32,
            modulus: f.into_iter().map(|c| c as u32).collect(),
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn m(&self) -> usize {
        self.0.m
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Element with the given coefficients in the power basis of t.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FqElem {
        let p = self.0.p as u64;
        let mut digits = vec![0u64; self.0.m];
        let mut t_pow = vec![0u64; self.0.m];
        if self.0.m > 0 {
            t_pow[0] = 1;
        }
        // reduce arbitrary-length coefficient vectors through the modulus
        for &c in coeffs.iter() {
            for (d, tp) in digits.iter_mut().zip(&t_pow) {
                *d = (*d + (c as u64 % p) * tp) % p;
            }
            t_pow = self.times_t(&t_pow);
        }
        self.encode(&digits)
    }

    fn times_t(&self, v: &[u64]) -> Vec<u64> {
        let p = self.0.p as u64;
        let m = self.0.m;
        let top = v[m - 1];
        let mut out = vec![0u64; m];
        for i in (1..m).rev() {
            out[i] = v[i - 1];
        }
        for i in 0..m {
            out[i] = (out[i] + p - top * self.0.modulus[i] as u64 % p) % p;
        }
        out
    }

    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        let p = self.0.p;
        let mut v = a.0;
        (0..self.0.m)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[u64]) -> FqElem {
        let p = self.0.p as u64;
        let mut v = 0u64;
        for d in digits.iter().rev() {
            v = v * p + d;
        }
        FqElem(v as u32)
    }

    /// Class of t in F_p[t]/(f); equals 0 when m = 1 and f = t.
    pub fn generator(&self) -> FqElem {
        self.from_coeffs(&[0, 1])
    }

    pub fn elem(&self, n: i64) -> FqElem {
        FqElem((n.rem_euclid(self.0.p as i64)) as u32)
    }

    /// Every element of the field, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.0.q).map(FqElem)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        FqElem(rng.gen_range(0..self.0.q))
    }

    pub fn is_prime_field_elem(&self, a: FqElem) -> bool {
        a.0 < self.0.p
    }

    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            None
        } else if self.0.m == 1 {
            Some(FqElem(upoly::inv_mod(a.0 as u64, self.0.p as u64) as u32))
        } else {
            Some(self.pow(&a, self.0.q as u64 - 2))
        }
    }

    /// Absolute Frobenius x -> x^p.
    pub fn frobenius(&self, a: FqElem) -> FqElem {
        if self.0.m == 1 {
            a
        } else {
            self.pow(&a, self.0.p as u64)
        }
    }

    /// Inverse of the Frobenius: x -> x^(p^(m-1)).
    pub fn pth_root(&self, a: FqElem) -> FqElem {
        let mut r = a;
        for _ in 1..self.0.m {
            r = self.frobenius(r);
        }
        r
    }

    pub fn fmt_elem(&self, a: FqElem) -> String {
        if self.0.m == 1 {
            return a.0.to_string();
        }
        let c = self.coeffs(a);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| match i {
                0 => x.to_string(),
                1 if x == 1 => "t".to_string(),
                1 => format!("{x}*t"),
                _ if x == 1 => format!("t^{i}"),
                _ => format!("{x}*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            format!("({})", terms.join("+"))
        }
    }
}

impl CommRing for Fq {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem(0)
    }
    fn one(&self) -> FqElem {
        FqElem(1)
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.0.p;
        if self.0.m == 1 {
            let s = a.0 + b.0;
            return FqElem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.m {
            let d = (x % p + y % p) % p;
            out += d * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        FqElem(out)
    }

    fn neg(&self, a: &FqElem) -> FqElem {
        let p = self.0.p;
        if self.0.m == 1 {
            return FqElem(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.m {
            let d = (p - x % p) % p;
            out += d * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        FqElem(out)
    }

    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.0.p as u64;
        if self.0.m == 1 {
            return FqElem((a.0 as u64 * b.0 as u64 % p) as u32);
        }
        let m = self.0.m;
        let mut da = [0u64; MAX_DEGREE];
        let mut db = [0u64; MAX_DEGREE];
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        for i in 0..m {
            da[i] = x % p;
            db[i] = y % p;
            x /= p;
            y /= p;
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for deg in (m..2 * m - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for i in 0..m {
                let idx = deg - m + i;
                prod[idx] = (prod[idx] + p - c * self.0.modulus[i] as u64 % p) % p;
            }
        }
        self.encode(&prod[..m])
    }

    fn from_int(&self, n: i64) -> FqElem {
        self.elem(n)
    }
}
