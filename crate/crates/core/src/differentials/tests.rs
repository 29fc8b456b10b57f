use rand_chacha::ChaCha8Rng;
use rand::{Rng, SeedableRng};

use super::*;
use crate::algebra::{AlgebraHom, FpAlgebra, Monomial, Poly};
use crate::coefficients::{W2Elem, W2};
use crate::witt_interp::TotalDerivation;

fn random_poly(a: &FpAlgebra, rng: &mut ChaCha8Rng, max_deg: u32, nterms: usize) -> Poly<W2Elem> {
    let r = a.ambient();
    let mut out = Poly::zero();
    for _ in 0..nterms {
        let mut e = vec![0u32; a.nvars()];
        let mut budget = rng.gen_range(0..=max_deg);
        while budget > 0 {
            e[rng.gen_range(0..a.nvars())] += 1;
            budget -= 1;
        }
        r.add_term(&mut out, Monomial(e), &a.base().random(rng));
    }
    out
}

fn genus_one() -> FpAlgebra {
    FpAlgebra::parse(&W2::prime(3).unwrap(), &["x", "y"], &["y^2 - x^3 + x"]).unwrap()
}

#[test]
fn monomial_examples() {
    let w2 = W2::prime(3).unwrap();
    let a = FpAlgebra::polynomial(&w2, &["x"]).unwrap();
    let m = omega_tot(&a).unwrap();
    let d = m.dtot(&a.parse_ambient("x^2").unwrap());
    assert!(d.0[0].is_zero());
    assert_eq!(d.0[1], m.base().parse("2*x^3").unwrap());

    let w2 = W2::prime(5).unwrap();
    let a = FpAlgebra::polynomial(&w2, &["x"]).unwrap();
    let m = omega_tot(&a).unwrap();
    let d = m.dtot(&a.parse_ambient("2*x").unwrap());
    assert_eq!(d.0[0], m.base().parse("4*x^5").unwrap());
    assert_eq!(d.0[1], m.base().parse("2").unwrap());
}

#[test]
fn relation_examples() {
    let w2 = W2::prime(3).unwrap();
    let a = FpAlgebra::parse(&w2, &["x", "y"], &["x*y - 1"]).unwrap();
    let m = omega_tot(&a).unwrap();
    let r = &m.relations()[0];
    assert!(r.0[0].is_zero());
    assert_eq!(r.0[1], m.base().parse("y^3").unwrap());
    assert_eq!(r.0[2], m.base().parse("x^3").unwrap());

    let a = FpAlgebra::parse(&w2, &["x"], &["x^2 - p"]).unwrap();
    let m = omega_tot(&a).unwrap();
    let r = &m.relations()[0];
    assert_eq!(r.0[0], m.base().parse("-1").unwrap());
    assert!(r.0[1].is_zero());
    assert!(matches!(find_splitting(&m, None).unwrap(), SplittingSearch::Absent { .. }));
}

#[test]
fn order_independence_and_product_rule() {
    let a = genus_one();
    let m = omega_tot(&a).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let f = random_poly(&a, &mut rng, 4, 6);
        let g = random_poly(&a, &mut rng, 4, 6);
        let mut terms: Vec<(Monomial, W2Elem)> = f.terms().map(|(m, c)| (m.clone(), *c)).collect();
        let d1 = m.dtot_terms(&terms);
        terms.reverse();
        assert_eq!(m.dtot_terms(&terms), d1);
        let mid = terms.len() / 2;
        terms.swap(0, mid);
        assert_eq!(m.dtot_terms(&terms), d1);

        let r = a.ambient();
        let p = a.p() as u64;
        let fg = m.dtot(&r.mul(&f, &g));
        let f0 = a.reduce(&f);
        let g0 = a.reduce(&g);
        let a0 = m.base();
        let rhs = m.add(&m.scale(&a0.pow(&g0, p), &m.dtot(&f)), &m.scale(&a0.pow(&f0, p), &m.dtot(&g)));
        assert_eq!(fg, rhs);
    }
}

#[test]
fn sum_correction_matches_witt_oracle() {
    // d(sum t_k) - sum d(t_k) = (sum [t_k]^p - (sum [t_k])^p)/p on Teichmuller lifts
    let a = genus_one();
    let m = omega_tot(&a).unwrap();
    let r = a.ambient();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let p = a.p() as u64;
    for _ in 0..10 {
        let f = random_poly(&a, &mut rng, 3, 5);
        let mut separate = m.zero();
        let mut sum_p = Poly::zero();
        let mut sum = Poly::zero();
        for (mono, c) in f.terms() {
            separate = m.add(&separate, &m.dtot(&r.monomial(mono.clone(), *c)));
            let t = r.monomial(mono.clone(), a.base().teichmuller(c.w0));
            sum_p = r.add(&sum_p, &r.pow(&t, p));
            sum = r.add(&sum, &t);
        }
        let corr = a.div_p(&r.sub(&sum_p, &r.pow(&sum, p))).unwrap();
        let total = m.dtot(&f);
        let diff = m.sub(&total, &separate);
        assert_eq!(diff.0[0], m.base().nf(&corr));
        assert!(diff.0[1..].iter().all(|c| c.is_zero()));
    }
}

#[test]
fn expansion_matches_uc_evaluation() {
    let w2 = W2::prime(3).unwrap();
    let a = FpAlgebra::polynomial(&w2, &["x", "y"]).unwrap();
    let m = omega_tot(&a).unwrap();
    let a0 = m.base();
    let c = a0.parse("x + 1").unwrap();
    let values = vec![a0.parse("y^2").unwrap(), a0.parse("x - y").unwrap()];
    let d = TotalDerivation::into_reduction(&a, c.clone(), values.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let f = random_poly(&a, &mut rng, 4, 5);
        let e = m.dtot(&f);
        let mut h = vec![c.clone()];
        h.extend(values.iter().cloned());
        assert_eq!(m.pair(&h, &e), d.apply(&f));
    }
}

#[test]
fn splitting_and_lift_round_trip() {
    let a = genus_one();
    let m = omega_tot(&a).unwrap();
    let h = find_splitting(&m, None).unwrap().found().unwrap().clone();
    let phi = FrobeniusLift::from_splitting(&m, &h).unwrap();
    assert_eq!(phi.to_splitting(&m).unwrap(), h);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let p = a.p() as u64;
    for _ in 0..10 {
        let f = random_poly(&a, &mut rng, 4, 4);
        let lhs = a.div_p(&a.sub(&phi.apply(&f), &a.pow(&a.nf(&f), p))).unwrap();
        assert_eq!(lhs, h.eval(&m, &m.dtot(&f)));
    }
}

#[test]
fn standard_lift_on_polynomial_ring() {
    let w2 = W2::new(crate::coefficients::Fq::new(3, 2).unwrap()).unwrap();
    let a = FpAlgebra::polynomial(&w2, &["x"]).unwrap();
    let m = omega_tot(&a).unwrap();
    let phi = FrobeniusLift::new(&a, vec![a.parse_ambient("x^3").unwrap()]).unwrap();
    let h = phi.to_splitting(&m).unwrap();
    assert!(h.values[1].is_zero());
    // semilinear: phi(g x) = phi(g) x^3 for a non-prime constant g
    let g = w2.teichmuller(w2.residue_field().generator());
    let e = a.ambient().monomial(Monomial(vec![1]), g);
    let want = a.ambient().monomial(Monomial(vec![3]), w2.frobenius(&g));
    assert_eq!(phi.apply(&e), a.nf(&want));
    assert!(FrobeniusLift::new(&a, vec![a.parse_ambient("x^3 + x").unwrap()]).is_err());
}

#[test]
fn pullback_and_transport() {
    let w2 = W2::prime(3).unwrap();
    let a = FpAlgebra::polynomial(&w2, &["x"]).unwrap();
    let b = FpAlgebra::polynomial(&w2, &["y"]).unwrap();
    let la = a.localize(&a.parse_ambient("x").unwrap()).unwrap();
    let lb = b.localize(&b.parse_ambient("y").unwrap()).unwrap();
    let l = &la.algebra;
    let r = &lb.algebra;
    let to_left = AlgebraHom::parse(r, l, &["x_inv", "x"]).unwrap();
    let to_right = AlgebraHom::parse(l, r, &["y_inv", "y"]).unwrap();
    let ml = omega_tot(l).unwrap();
    let mr = omega_tot(r).unwrap();
    let pb = pullback(&to_left, &mr, &ml).unwrap();
    // d(y) pulls back to d(x_inv) = -x_inv^6 d x
    let dy = pb.apply(&mr.gen(1));
    assert_eq!(ml.sub(&dy, &ml.gen(2)).0[2], Poly::zero());
    assert!(ml.in_relation_span(&ml.sub(&dy, &ml.scale(&ml.base().parse("-x_inv^6").unwrap(), &ml.gen(1))), 12));

    let ma = omega_tot(&a).unwrap();
    let mb = omega_tot(&b).unwrap();
    let phi_b = FrobeniusLift::new(&b, vec![b.parse_ambient("y^3 + p*y").unwrap()]).unwrap();
    let hb = phi_b.to_splitting(&mb).unwrap();
    let res = SectionMap::localization(&mb, &mr, &lb).unwrap();
    let tr = SectionMap::transport(&mr, &ml, &to_left, &to_right).unwrap();
    let via_sections = res.then(&tr).apply(&hb);
    let via_lifts = phi_b.localize(&lb).unwrap().transport(&to_left, &to_right).unwrap().to_splitting(&ml).unwrap();
    assert_eq!(via_sections, via_lifts);
    assert_eq!(tr.apply(&res.apply(&hb)), via_lifts);

    let phi_a = FrobeniusLift::new(&a, vec![a.parse_ambient("x^3").unwrap()]).unwrap();
    let ha = phi_a.to_splitting(&ma).unwrap();
    let ext = SectionMap::localization(&ma, &ml, &la).unwrap().apply(&ha);
    assert_eq!(ext, phi_a.localize(&la).unwrap().to_splitting(&ml).unwrap());
}

#[test]
fn frob_omega_presentation() {
    let a = genus_one();
    let m = omega_tot(&a).unwrap();
    let f = m.frob_omega();
    // (-3x^2 + 1)^3 = 1 and (2y)^3 = 2y^3
    assert_eq!(f.relations[0][0], m.base().one());
    assert_eq!(f.relations[0][1], m.base().parse("2*y^3").unwrap());
    assert!(f.in_relation_span(&[m.base().parse("x").unwrap(), m.base().parse("2*x*y^3").unwrap()], 4));
}
