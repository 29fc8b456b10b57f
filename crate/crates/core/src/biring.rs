//! The biring Q_c = F_p[e, eta] representing U_c: coaddition and
//! comultiplication, counits, antipode, and the points they induce.

use crate::algebra::{MonomialOrder, Poly, PolyRing, ReducedAlgebra};
use crate::coefficients::{CpCoeffs, Fq, FqElem, W2Elem, W2};
use crate::error::{Error, Result};
use crate::ring::CommRing;
use crate::witt_interp::{UcElem, UcRing};

/// Q_c for a scalar c in F_p. Elements are polynomials in (e, eta);
/// elements of Q_c (x) Q_c are polynomials in (e (x) 1, eta (x) 1, 1 (x) e, 1 (x) eta).
#[derive(Clone, Debug)]
pub struct Biring {
    field: Fq,
    c: FqElem,
    ring: PolyRing<Fq>,
    tensor: PolyRing<Fq>,
    cp: CpCoeffs,
    antipode_eta: Poly<FqElem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointOp {
    Add,
    Mul,
}

/// A homomorphism Q_c -> D0, given by the images of e and eta.
#[derive(Clone, Debug)]
pub struct BiringPoint {
    pub target: ReducedAlgebra,
    pub e: Poly<FqElem>,
    pub eta: Poly<FqElem>,
}

impl PartialEq for BiringPoint {
    fn eq(&self, other: &Self) -> bool {
        self.target.same(&other.target) && self.e == other.e && self.eta == other.eta
    }
}

impl Biring {
    pub fn new(p: u32, c: i64) -> Result<Self> {
        let field = Fq::prime(p)?;
        let c = field.from_int(c);
        let ring = PolyRing::new(field.clone(), 2, MonomialOrder::GrevLex);
        let tensor = PolyRing::new(field.clone(), 4, MonomialOrder::GrevLex);
        let cp = CpCoeffs::new(p as u64)?;
        // x + S(x) = 0 forces S(eta) = -eta - c C_p(e, -e)
        let e = ring.var(0);
        let corr = ring.scale(&cp.eval(&ring, &e, &ring.neg(&e)), &c);
        let antipode_eta = ring.sub(&ring.neg(&ring.var(1)), &corr);
        Ok(Biring { field, c, ring, tensor, cp, antipode_eta })
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn c(&self) -> FqElem {
        self.c
    }

    pub fn ring(&self) -> &PolyRing<Fq> {
        &self.ring
    }

    pub fn tensor_ring(&self) -> &PolyRing<Fq> {
        &self.tensor
    }

    pub fn e(&self) -> Poly<FqElem> {
        self.ring.var(0)
    }

    pub fn eta(&self) -> Poly<FqElem> {
        self.ring.var(1)
    }

    pub fn parse(&self, src: &str) -> Result<Poly<FqElem>> {
        let names = ["e", "eta"];
        let lookup = |n: &str| names.iter().position(|m| *m == n).map(|i| self.ring.var(i));
        crate::algebra::parse_into(src, &self.ring, &lookup, self.ring.zero())
    }

    pub fn format(&self, q: &Poly<FqElem>) -> String {
        self.ring.format(q, &["e".into(), "eta".into()], |c| self.field.fmt_elem(*c))
    }

    pub fn format_tensor(&self, q: &Poly<FqElem>) -> String {
        let names = ["e1".to_string(), "eta1".into(), "e2".into(), "eta2".into()];
        self.tensor.format(q, &names, |c| self.field.fmt_elem(*c))
    }

    fn left(&self) -> [Poly<FqElem>; 2] {
        [self.tensor.var(0), self.tensor.var(1)]
    }

    fn right(&self) -> [Poly<FqElem>; 2] {
        [self.tensor.var(2), self.tensor.var(3)]
    }

    fn extend(&self, q: &Poly<FqElem>, images: &[Poly<FqElem>]) -> Poly<FqElem> {
        self.ring.substitute(q, &self.tensor, images, |c| self.tensor.constant(*c))
    }

    /// e -> e1 + e2, eta -> eta1 + eta2 + c C_p(e1, e2), extended multiplicatively.
    pub fn coadd(&self, q: &Poly<FqElem>) -> Poly<FqElem> {
        let t = &self.tensor;
        let [e1, n1] = self.left();
        let [e2, n2] = self.right();
        let corr = t.scale(&self.cp.eval(t, &e1, &e2), &self.c);
        let images = [t.add(&e1, &e2), t.add(&t.add(&n1, &n2), &corr)];
        self.extend(q, &images)
    }

    /// e -> e1 e2, eta -> e1^p eta2 + eta1 e2^p.
    pub fn comul(&self, q: &Poly<FqElem>) -> Poly<FqElem> {
        let t = &self.tensor;
        let p = self.p() as u64;
        let [e1, n1] = self.left();
        let [e2, n2] = self.right();
        let images = [t.mul(&e1, &e2), t.add(&t.mul(&t.pow(&e1, p), &n2), &t.mul(&n1, &t.pow(&e2, p)))];
        self.extend(q, &images)
    }

    /// e -> 0, eta -> 0.
    pub fn additive_counit(&self, q: &Poly<FqElem>) -> FqElem {
        self.ring.substitute(q, &self.field, &[self.field.zero(), self.field.zero()], |c| *c)
    }

    /// e -> 1, eta -> 0.
    pub fn multiplicative_counit(&self, q: &Poly<FqElem>) -> FqElem {
        self.ring.substitute(q, &self.field, &[self.field.one(), self.field.zero()], |c| *c)
    }

    /// e -> -e, eta -> -eta - c C_p(e, -e); the correction vanishes for odd p.
    pub fn antipode(&self, q: &Poly<FqElem>) -> Poly<FqElem> {
        let r = &self.ring;
        r.substitute(q, r, &[r.neg(&self.e()), self.antipode_eta.clone()], |c| r.constant(*c))
    }

    /// f(q) for a point f.
    pub fn evaluate(&self, q: &Poly<FqElem>, f: &BiringPoint) -> Poly<FqElem> {
        let d = &f.target;
        self.ring.substitute(q, d, &[f.e.clone(), f.eta.clone()], |c| d.constant(*c))
    }

    fn evaluate_tensor(&self, q: &Poly<FqElem>, f: &BiringPoint, g: &BiringPoint) -> Poly<FqElem> {
        let d = &f.target;
        let images = [f.e.clone(), f.eta.clone(), g.e.clone(), g.eta.clone()];
        self.tensor.substitute(q, d, &images, |c| d.constant(*c))
    }

    pub fn point(&self, target: &ReducedAlgebra, e: Poly<FqElem>, eta: Poly<FqElem>) -> BiringPoint {
        BiringPoint { target: target.clone(), e: target.nf(&e), eta: target.nf(&eta) }
    }

    pub fn zero_point(&self, target: &ReducedAlgebra) -> BiringPoint {
        self.point(target, Poly::zero(), Poly::zero())
    }

    pub fn unit_point(&self, target: &ReducedAlgebra) -> BiringPoint {
        self.point(target, target.one(), Poly::zero())
    }

    /// The point (f, g) o Delta for Delta the coaddition or comultiplication.
    pub fn point_ops(&self, f: &BiringPoint, g: &BiringPoint, op: PointOp) -> Result<BiringPoint> {
        if !f.target.same(&g.target) {
            return Err(Error::RingMismatch("points have different targets".into()));
        }
        let (de, deta) = match op {
            PointOp::Add => (self.coadd(&self.e()), self.coadd(&self.eta())),
            PointOp::Mul => (self.comul(&self.e()), self.comul(&self.eta())),
        };
        Ok(BiringPoint { target: f.target.clone(), e: self.evaluate_tensor(&de, f, g), eta: self.evaluate_tensor(&deta, f, g) })
    }

    /// f o S.
    pub fn negate(&self, f: &BiringPoint) -> BiringPoint {
        BiringPoint { target: f.target.clone(), e: self.evaluate(&self.antipode(&self.e()), f), eta: self.evaluate(&self.antipode(&self.eta()), f) }
    }

    /// a -> (a mod p, theta_c(a)), the structure map from W2(F_p).
    pub fn beta_structure(&self, w2: &W2, a: &W2Elem, target: &ReducedAlgebra) -> Result<BiringPoint> {
        if w2.residue_field().m() != 1 || w2.p() != self.p() {
            return Err(Error::UnsupportedField("the structure map is defined over Z/p^2".into()));
        }
        let eta = w2.base_delta(a, &self.c);
        Ok(self.point(target, target.constant(a.w0), target.constant(eta)))
    }

    /// f -> (f(e), f(eta)) in U_c(D0).
    pub fn to_uc(&self, f: &BiringPoint) -> Result<(UcRing, UcElem)> {
        let uc = UcRing::with_scalar(&f.target, self.c)?;
        let x = uc.elem(f.e.clone(), f.eta.clone());
        Ok((uc, x))
    }
}

#[cfg(test)]
mod tests {
    use rand_chacha::ChaCha8Rng;
    use rand::SeedableRng;

    use super::*;

    fn t4() -> ReducedAlgebra {
        let k = Fq::prime(3).unwrap();
        let r = ReducedAlgebra::polynomial(k.clone(), &["t"]).unwrap();
        ReducedAlgebra::new(k, vec!["t".into()], &[r.parse("t^4").unwrap()]).unwrap()
    }

    fn random_point(q: &Biring, d: &ReducedAlgebra, rng: &mut ChaCha8Rng) -> BiringPoint {
        let k = d.field();
        let basis = d.staircase(8);
        let mut pick = || d.ring().from_terms(basis.iter().map(|m| (m.clone(), k.random(rng))));
        let (e, eta) = (pick(), pick());
        q.point(d, e, eta)
    }

    #[test]
    fn coproduct_examples() {
        let q = Biring::new(3, 1).unwrap();
        assert_eq!(q.format_tensor(&q.coadd(&q.e())), q.format_tensor(&q.tensor.add(&q.tensor.var(0), &q.tensor.var(2))));
        assert_eq!(q.comul(&q.e()), q.tensor.mul(&q.tensor.var(0), &q.tensor.var(2)));
        let t = &q.tensor;
        let want = t.sub(
            &t.add(&t.var(1), &t.var(3)),
            &t.add(&t.mul(&t.pow(&t.var(0), 2), &t.var(2)), &t.mul(&t.var(0), &t.pow(&t.var(2), 2))),
        );
        assert_eq!(q.coadd(&q.eta()), want);
        assert_eq!(q.antipode(&q.eta()), q.ring.neg(&q.eta()));
        assert_eq!(q.multiplicative_counit(&q.parse("e^2 + eta").unwrap()), q.field.one());
    }

    #[test]
    fn points_match_uc() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = t4();
        for c in 0..3 {
            let q = Biring::new(3, c).unwrap();
            for _ in 0..50 {
                let f = random_point(&q, &d, &mut rng);
                let g = random_point(&q, &d, &mut rng);
                let (uc, x) = q.to_uc(&f).unwrap();
                let (_, y) = q.to_uc(&g).unwrap();
                let s = q.to_uc(&q.point_ops(&f, &g, PointOp::Add).unwrap()).unwrap().1;
                assert_eq!(s, uc.add(&x, &y));
                let m = q.to_uc(&q.point_ops(&f, &g, PointOp::Mul).unwrap()).unwrap().1;
                assert_eq!(m, uc.mul(&x, &y));
                assert_eq!(q.point_ops(&f, &q.zero_point(&d), PointOp::Add).unwrap(), f);
                assert_eq!(q.point_ops(&f, &q.unit_point(&d), PointOp::Mul).unwrap(), f);
                assert_eq!(q.point_ops(&f, &q.negate(&f), PointOp::Add).unwrap(), q.zero_point(&d));
            }
        }
    }

    #[test]
    fn structure_map() {
        let w2 = W2::prime(3).unwrap();
        let q = Biring::new(3, 1).unwrap();
        let d = ReducedAlgebra::polynomial(Fq::prime(3).unwrap(), &[]).unwrap();
        let p = w2.from_int(3);
        assert_eq!(q.beta_structure(&w2, &p, &d).unwrap(), q.point(&d, Poly::zero(), d.one()));
        assert_eq!(q.beta_structure(&w2, &w2.one(), &d).unwrap(), q.unit_point(&d));
        for a in w2.elements() {
            for b in w2.elements() {
                let fa = q.beta_structure(&w2, &a, &d).unwrap();
                let fb = q.beta_structure(&w2, &b, &d).unwrap();
                let sum = q.beta_structure(&w2, &w2.add(&a, &b), &d).unwrap();
                assert_eq!(q.point_ops(&fa, &fb, PointOp::Add).unwrap(), sum);
                let prod = q.beta_structure(&w2, &w2.mul(&a, &b), &d).unwrap();
                assert_eq!(q.point_ops(&fa, &fb, PointOp::Mul).unwrap(), prod);
            }
        }
    }
}
