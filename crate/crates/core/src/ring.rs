//! The commutative-ring interface shared by every coefficient and quotient ring.
//!
//! Rings are context objects: elements are plain values and all arithmetic
//! goes through the ring that owns them.

use std::fmt::Debug;

pub trait CommRing {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Image of an integer under the unique ring map from Z.
    fn from_int(&self, n: i64) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = self.one();
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        if n < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Integers modulo `n`, used for comparisons against Z/p^2 and as a test oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntMod {
    pub n: u64,
}

impl IntMod {
    pub fn new(n: u64) -> Self {
        assert!(n > 0, "modulus must be positive");
        IntMod { n }
    }

    pub fn reduce(&self, v: i128) -> u64 {
        v.rem_euclid(self.n as i128) as u64
    }
}

impl CommRing for IntMod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.n
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.n as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.n - a % self.n) % self.n
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.n as u128) as u64
    }
    fn from_int(&self, n: i64) -> u64 {
        self.reduce(n as i128)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_int_matches_direct_reduction() {
        let r = IntMod::new(9);
        struct Slow(IntMod);
        impl CommRing for Slow {
            type Elem = u64;
            fn zero(&self) -> u64 {
                0
            }
            fn one(&self) -> u64 {
                1
            }
            fn add(&self, a: &u64, b: &u64) -> u64 {
                self.0.add(a, b)
            }
            fn neg(&self, a: &u64) -> u64 {
                self.0.neg(a)
            }
            fn mul(&self, a: &u64, b: &u64) -> u64 {
                self.0.mul(a, b)
            }
        }
        let slow = Slow(r);
        for n in -40..40 {
            assert_eq!(slow.from_int(n), r.from_int(n), "n = {n}");
        }
    }

    #[test]
    fn pow_small() {
        let r = IntMod::new(25);
        assert_eq!(r.pow(&2, 5), 7);
        assert_eq!(r.pow(&3, 0), 1);
    }
}
