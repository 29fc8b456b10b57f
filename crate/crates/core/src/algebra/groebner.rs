//! Buchberger's algorithm over F_q, optionally carrying along W2 "shadow"
//! polynomials: every basis element stays paired with an element of the
//! original W2 ideal that reduces to it modulo p.

use super::monomial::Monomial;
use super::poly::{Poly, PolyRing};
use crate::coefficients::{Fq, FqElem, W2Elem, W2};
use crate::ring::CommRing;

#[derive(Clone, Debug)]
pub(crate) struct Tracked {
    pub f: Poly<FqElem>,
    pub lift: Option<Poly<W2Elem>>,
}

struct Ctx<'a> {
    ring: &'a PolyRing<Fq>,
    wring: Option<&'a PolyRing<W2>>,
}

impl Ctx<'_> {
    fn k(&self) -> &Fq {
        self.ring.coeff_ring()
    }

    fn lift_sub_mul(&self, lift: &mut Option<Poly<W2Elem>>, c: FqElem, m: &Monomial, other: &Tracked) {
        if let (Some(w), Some(l), Some(ol)) = (self.wring, lift.as_mut(), other.lift.as_ref()) {
            let tc = w.coeff_ring().teichmuller(c);
            w.sub_mul_term(l, &tc, m, ol);
        }
    }

    fn make_monic(&self, t: &mut Tracked) {
        let Some((_, lc)) = self.ring.leading_term(&t.f) else { return };
        let inv = self.k().inv(*lc).expect("nonzero leading coefficient");
        t.f = self.ring.scale(&t.f, &inv);
        if let (Some(w), Some(l)) = (self.wring, t.lift.as_mut()) {
            *l = w.scale(l, &w.coeff_ring().teichmuller(inv));
        }
    }

    /// Full reduction of `h` by a monic basis.
    fn reduce(&self, h: Tracked, basis: &[Tracked]) -> Tracked {
        let mut rest = h.f;
        let mut lift = h.lift;
        let mut rem = Poly::zero();
        while let Some((m, c)) = self.ring.leading_term(&rest).map(|(m, c)| (m.clone(), *c)) {
            let divisor = basis.iter().find(|b| {
                self.ring.leading_term(&b.f).is_some_and(|(lm, _)| lm.divides(&m))
            });
            match divisor {
                Some(b) => {
                    let (lm, _) = self.ring.leading_term(&b.f).unwrap();
                    let q = lm.quotient(&m);
                    self.ring.sub_mul_term(&mut rest, &c, &q, &b.f);
                    self.lift_sub_mul(&mut lift, c, &q, b);
                }
                None => {
                    let mut single = Poly::zero();
                    self.ring.add_term(&mut single, m.clone(), &c);
                    let neg = self.ring.neg(&single);
                    self.ring.add_assign(&mut rest, &neg);
                    self.ring.add_term(&mut rem, m, &c);
                }
            }
        }
        Tracked { f: rem, lift }
    }

    fn spoly(&self, a: &Tracked, b: &Tracked) -> Tracked {
        let (la, _) = self.ring.leading_term(&a.f).unwrap();
        let (lb, _) = self.ring.leading_term(&b.f).unwrap();
        let l = la.lcm(lb);
        let qa = la.quotient(&l);
        let qb = lb.quotient(&l);
        let one = self.k().one();
        let f = self.ring.sub(
            &self.ring.mul_term(&a.f, &one, &qa),
            &self.ring.mul_term(&b.f, &one, &qb),
        );
        let lift = match (self.wring, &a.lift, &b.lift) {
            (Some(w), Some(al), Some(bl)) => {
                let wone = w.coeff_ring().one();
                Some(w.sub(&w.mul_term(al, &wone, &qa), &w.mul_term(bl, &wone, &qb)))
            }
            _ => None,
        };
        Tracked { f, lift }
    }
}

/// Reduced Groebner basis (monic) of the ideal generated by `gens`.
pub(crate) fn buchberger(
    ring: &PolyRing<Fq>,
    wring: Option<&PolyRing<W2>>,
    gens: Vec<Tracked>,
) -> Vec<Tracked> {
    let ctx = Ctx { ring, wring };
    let mut basis: Vec<Tracked> = Vec::new();
    for g in gens {
        if g.f.is_zero() {
            continue;
        }
        let mut t = g;
        ctx.make_monic(&mut t);
        basis.push(t);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let lm = |t: &Tracked| ring.leading_term(&t.f).map(|(m, _)| m.clone()).unwrap();
    while !pairs.is_empty() {
        // normal selection strategy: smallest lcm first
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = lm(&basis[a.0]).lcm(&lm(&basis[a.1]));
                let lb = lm(&basis[b.0]).lcm(&lm(&basis[b.1]));
                ring.order().cmp(&la, &lb)
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(idx);
        let (li, lj) = (lm(&basis[i]), lm(&basis[j]));
        if li.coprime(&lj) {
            continue;
        }
        // chain criterion: some k with LT(k) | lcm and both (i,k), (j,k) already treated
        let l = li.lcm(&lj);
        let pending = |a: usize, b: usize| pairs.contains(&(a.min(b), a.max(b)));
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && lm(&basis[k]).divides(&l) && !pending(i, k) && !pending(j, k)
        });
        if chain {
            continue;
        }
        let s = ctx.spoly(&basis[i], &basis[j]);
        let mut r = ctx.reduce(s, &basis);
        if r.f.is_zero() {
            continue;
        }
        ctx.make_monic(&mut r);
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pairs.push((k, n));
        }
    }
    // minimal basis
    let lms: Vec<Monomial> = basis.iter().map(lm).collect();
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j && keep[j] && lms[j].divides(&lms[i]) && (lms[j] != lms[i] || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Tracked> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(b, _)| b).collect();
    // interreduce tails
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Tracked> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, t)| t.clone())
            .collect();
        let head = minimal[i].clone();
        let (hm, hc) = ring.leading_term(&head.f).map(|(m, c)| (m.clone(), *c)).unwrap();
        let mut tail = head.f.clone();
        let mut single = Poly::zero();
        ring.add_term(&mut single, hm.clone(), &hc);
        tail = ring.sub(&tail, &single);
        let red = ctx.reduce(Tracked { f: tail, lift: head.lift }, &others);
        let mut f = red.f;
        ring.add_term(&mut f, hm, &hc);
        let mut t = Tracked { f, lift: red.lift };
        ctx.make_monic(&mut t);
        reduced.push(t);
    }
    reduced.sort_by(|a, b| ring.order().cmp(&lm(a), &lm(b)));
    reduced
}

/// Reduced Groebner basis without shadows.
pub fn groebner_basis(ring: &PolyRing<Fq>, gens: &[Poly<FqElem>]) -> Vec<Poly<FqElem>> {
    let tracked = gens.iter().map(|g| Tracked { f: g.clone(), lift: None }).collect();
    buchberger(ring, None, tracked).into_iter().map(|t| t.f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::MonomialOrder;

    #[test]
    fn twisted_cubic_like() {
        let k = Fq::prime(5).unwrap();
        let r = PolyRing::new(k, 3, MonomialOrder::GrevLex);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        // y - x^2, z - x^3
        let g1 = r.sub(&y, &r.mul(&x, &x));
        let g2 = r.sub(&z, &r.mul(&x, &r.mul(&x, &x)));
        let gb = groebner_basis(&r, &[g1, g2]);
        // every generator reduces to zero and S-pairs reduce to zero
        let ctx = Ctx { ring: &r, wring: None };
        let tr: Vec<Tracked> = gb.iter().map(|f| Tracked { f: f.clone(), lift: None }).collect();
        for i in 0..tr.len() {
            for j in 0..i {
                let s = ctx.spoly(&tr[i], &tr[j]);
                assert!(ctx.reduce(s, &tr).f.is_zero());
            }
        }
        assert!(gb.len() >= 3);
    }

    #[test]
    fn unit_ideal() {
        let k = Fq::prime(3).unwrap();
        let r = PolyRing::new(k.clone(), 1, MonomialOrder::GrevLex);
        let x = r.var(0);
        let gb = groebner_basis(&r, &[r.mul(&x, &x), r.sub(&x, &r.one())]);
        assert_eq!(gb, vec![r.one()]);
    }
}
