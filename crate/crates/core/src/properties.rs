//! Randomized property suites over the library's invariants, driven by a
//! seed so runs are reproducible.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FpAlgebra, ReducedAlgebra};
use crate::biring::{Biring, PointOp};
use crate::cech::{catalog, CechClass, Sheaf};
use crate::coefficients::{CpCoeffs, Fq, W2};
use crate::differentials::{find_splitting, omega_tot, FrobeniusLift, Functional};
use crate::error::Result;
use crate::ring::CommRing;
use crate::witt_interp::UcRing;

#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl PropertyReport {
    fn new(name: &str) -> Self {
        PropertyReport { name: name.to_string(), cases: 0, failures: vec![] }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 10 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every suite with `samples` random cases each.
pub fn run_all(seed: u64, samples: usize) -> Result<Vec<PropertyReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(vec![
        uc_ring_axioms(&mut rng, samples)?,
        uc_witt_endpoint(&mut rng, samples)?,
        dtot_rules(&mut rng, samples)?,
        splitting_round_trips(&mut rng, samples)?,
        biring_points(&mut rng, samples)?,
        cech_complex(&mut rng, samples)?,
    ])
}

fn truncated(p: u32, n: u32) -> Result<ReducedAlgebra> {
    let k = Fq::prime(p)?;
    let r = ReducedAlgebra::polynomial(k.clone(), &["t"])?;
    ReducedAlgebra::new(k, vec!["t".into()], &[r.parse(&format!("t^{n}"))?])
}

/// Commutative-ring axioms of U_c(F_3[t]/(t^4)) for c = 0, 1, 2, t, and
/// rescaling as a ring map.
pub fn uc_ring_axioms(rng: &mut ChaCha8Rng, samples: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("U_c ring axioms and rescaling");
    let d = truncated(3, 4)?;
    for c in ["0", "1", "2", "t"] {
        let uc = UcRing::new(&d, d.parse(c)?)?;
        for _ in 0..samples {
            let mut el = || uc.elem(d.random(rng, 3), d.random(rng, 3));
            let (a, b, x) = (el(), el(), el());
            let ok = uc.add(&uc.add(&a, &b), &x) == uc.add(&a, &uc.add(&b, &x))
                && uc.mul(&uc.mul(&a, &b), &x) == uc.mul(&a, &uc.mul(&b, &x))
                && uc.add(&a, &b) == uc.add(&b, &a)
                && uc.mul(&a, &b) == uc.mul(&b, &a)
                && uc.mul(&a, &uc.add(&b, &x)) == uc.add(&uc.mul(&a, &b), &uc.mul(&a, &x))
                && uc.add(&a, &uc.neg(&a)) == uc.zero()
                && uc.mul(&a, &uc.one()) == a;
            rep.check(ok, || format!("c = {c}: axioms fail at {a:?}, {b:?}, {x:?}"));
            let e = d.random(rng, 3);
            let target = uc.rescale(&e);
            let h = |v: &crate::witt_interp::UcElem| uc.rescale_elem(&e, v);
            let ok = h(&uc.add(&a, &b)) == target.add(&h(&a), &h(&b)) && h(&uc.mul(&a, &b)) == target.mul(&h(&a), &h(&b));
            rep.check(ok, || format!("c = {c}: rescaling by {e:?} is not multiplicative or additive"));
        }
    }
    Ok(rep)
}

/// U_1(F_p) against integer arithmetic mod p^2, p = 3, 5.
pub fn uc_witt_endpoint(rng: &mut ChaCha8Rng, samples: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("U_1 equals W_2 on prime fields");
    for p in [3u32, 5] {
        let w2 = W2::prime(p)?;
        let d = ReducedAlgebra::polynomial(Fq::prime(p)?, &[])?;
        let uc = UcRing::with_scalar(&d, d.field().one())?;
        let all: Vec<_> = w2.elements().collect();
        for _ in 0..samples {
            let a = all[rand::Rng::gen_range(rng, 0..all.len())];
            let b = all[rand::Rng::gen_range(rng, 0..all.len())];
            let ua = uc.elem(d.constant(a.w0), d.constant(a.w1));
            let ub = uc.elem(d.constant(b.w0), d.constant(b.w1));
            let s = w2.add(&a, &b);
            let m = w2.mul(&a, &b);
            let ok = uc.add(&ua, &ub) == uc.elem(d.constant(s.w0), d.constant(s.w1))
                && uc.mul(&ua, &ub) == uc.elem(d.constant(m.w0), d.constant(m.w1));
            rep.check(ok, || format!("p = {p}: {a:?}, {b:?}"));
        }
    }
    Ok(rep)
}

/// Sum, product and constant rules of d^tot, and order independence, on
/// the curve y^2 = x^3 - x.
pub fn dtot_rules(rng: &mut ChaCha8Rng, samples: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("d^tot expansion rules");
    let w2 = W2::prime(3)?;
    let a = FpAlgebra::parse(&w2, &["x", "y"], &["y^2 - x^3 + x"])?;
    let m = omega_tot(&a)?;
    let a0 = m.base();
    let cp = CpCoeffs::new(3)?;
    let r = a.ambient();
    for _ in 0..samples {
        let f = a.random(rng, 3);
        let g = a.random(rng, 3);
        let (f0, g0) = (a.reduce(&f), a.reduce(&g));
        let sum = m.add(&m.add(&m.dtot(&f), &m.dtot(&g)), &m.alpha(&cp.eval(a0, &f0, &g0)));
        rep.check(m.dtot(&r.add(&f, &g)) == sum, || format!("sum rule fails for {} and {}", a.format(&f), a.format(&g)));
        let prod = m.add(&m.scale(&a0.pow(&g0, 3), &m.dtot(&f)), &m.scale(&a0.pow(&f0, 3), &m.dtot(&g)));
        rep.check(m.dtot(&r.mul(&f, &g)) == prod, || format!("product rule fails for {} and {}", a.format(&f), a.format(&g)));
        let c = w2.random(rng);
        let want = m.alpha(&a0.constant(w2.delta(&c)));
        rep.check(m.dtot(&r.constant(c)) == want, || format!("constant rule fails for {c:?}"));
        let mut terms: Vec<_> = f.terms().map(|(mm, c)| (mm.clone(), *c)).collect();
        let forward = m.dtot_terms(&terms);
        terms.reverse();
        rep.check(m.dtot_terms(&terms) == forward, || format!("order dependence for {}", a.format(&f)));
    }
    Ok(rep)
}

/// h -> phi_h -> h on the affine line and on G_m.
pub fn splitting_round_trips(rng: &mut ChaCha8Rng, samples: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("splitting and Frobenius lift round trips");
    let w2 = W2::prime(3)?;
    for (names, rels) in [(vec!["x"], vec![]), (vec!["x", "x_inv"], vec!["x*x_inv - 1"])] {
        let a = FpAlgebra::parse(&w2, &names, &rels)?;
        let m = omega_tot(&a)?;
        let a0 = m.base();
        let h0 = find_splitting(&m, None)?.found().cloned();
        let Some(h0) = h0 else {
            rep.check(false, || format!("no splitting on {a:?}"));
            continue;
        };
        for _ in 0..samples {
            // move h0 along a functional vanishing on the relations
            let t = a0.random(rng, 3);
            let mut values = vec![a0.zero(), t.clone()];
            if names.len() == 2 {
                let inv = a0.var(1);
                values.push(a0.neg(&a0.mul(&a0.pow(&inv, 6), &t)));
            }
            let h = Functional::new(&m, values).map(|t| h0.add(&m, &t));
            let ok = match h {
                Ok(h) => FrobeniusLift::from_splitting(&m, &h).and_then(|phi| phi.to_splitting(&m)).map(|h2| h2 == h).unwrap_or(false),
                Err(_) => false,
            };
            rep.check(ok, || format!("round trip fails on {a:?} with t = {}", a0.format(&t)));
        }
    }
    Ok(rep)
}

/// Biring points against U_c, and associativity of the induced operations.
pub fn biring_points(rng: &mut ChaCha8Rng, samples: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("biring points represent U_c");
    let d = truncated(3, 4)?;
    for c in 0..3 {
        let q = Biring::new(3, c)?;
        for _ in 0..samples {
            let mut pt = || q.point(&d, d.random(rng, 3), d.random(rng, 3));
            let (f, g, h) = (pt(), pt(), pt());
            let (uc, x) = q.to_uc(&f)?;
            let y = q.to_uc(&g)?.1;
            let add = q.point_ops(&f, &g, PointOp::Add)?;
            let mul = q.point_ops(&f, &g, PointOp::Mul)?;
            rep.check(q.to_uc(&add)?.1 == uc.add(&x, &y) && q.to_uc(&mul)?.1 == uc.mul(&x, &y), || {
                format!("c = {c}: evaluation does not transport the operations")
            });
            let l = q.point_ops(&add, &h, PointOp::Add)?;
            let r = q.point_ops(&f, &q.point_ops(&g, &h, PointOp::Add)?, PointOp::Add)?;
            let lm = q.point_ops(&mul, &h, PointOp::Mul)?;
            let rm = q.point_ops(&f, &q.point_ops(&g, &h, PointOp::Mul)?, PointOp::Mul)?;
            rep.check(l == r && lm == rm, || format!("c = {c}: coassociativity fails"));
            rep.check(q.point_ops(&f, &q.negate(&f), PointOp::Add)? == q.zero_point(&d), || {
                format!("c = {c}: antipode fails")
            });
        }
    }
    Ok(rep)
}

/// d1 d0 = 0 on the three-chart projective line.
pub fn cech_complex(rng: &mut ChaCha8Rng, samples: usize) -> Result<PropertyReport> {
    let mut rep = PropertyReport::new("Cech complex d1 d0 = 0");
    let s = catalog::projective_line_three(&W2::prime(3)?)?;
    for _ in 0..samples.min(20) {
        for sheaf in [Sheaf::Structure, Sheaf::FrobTangent] {
            let mut t = CechClass::zero(&s, sheaf, 0);
            for (k, c) in s.charts.iter().enumerate() {
                for v in t.values[k].iter_mut() {
                    *v = c.module.base().random(rng, 4);
                }
            }
            let ok = t.coboundary(&s)?.is_cocycle(&s) == Some(true);
            rep.check(ok, || format!("{sheaf:?}: d1 d0 t != 0"));
        }
    }
    Ok(rep)
}
