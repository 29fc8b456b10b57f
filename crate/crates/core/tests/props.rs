use proptest::prelude::*;

use totdiff::algebra::{FpAlgebra, Poly, ReducedAlgebra};
use totdiff::coefficients::{Fq, FqElem, W2};
use totdiff::differentials::omega_tot;
use totdiff::witt_interp::UcRing;
use totdiff::CommRing;

fn truncated(n: u32) -> ReducedAlgebra {
    let k = Fq::prime(3).unwrap();
    let r = ReducedAlgebra::polynomial(k.clone(), &["t"]).unwrap();
    ReducedAlgebra::new(k, vec!["t".into()], &[r.parse(&format!("t^{n}")).unwrap()]).unwrap()
}

fn from_digits(d: &ReducedAlgebra, digits: &[i64]) -> Poly<FqElem> {
    digits.iter().enumerate().fold(d.zero(), |acc, (i, c)| {
        let c = d.constant(d.field().from_int(*c));
        let term = if i == 0 { c } else { d.mul(&c, &d.pow(&d.var(0), i as u64)) };
        d.add(&acc, &term)
    })
}

fn digits() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..3, 4)
}

proptest! {
    #[test]
    fn uc_distributes(a in digits(), b in digits(), x in digits(), y in digits(), z in digits(), w in digits(), c in digits()) {
        let d = truncated(4);
        let uc = UcRing::new(&d, from_digits(&d, &c)).unwrap();
        let e1 = uc.elem(from_digits(&d, &a), from_digits(&d, &b));
        let e2 = uc.elem(from_digits(&d, &x), from_digits(&d, &y));
        let e3 = uc.elem(from_digits(&d, &z), from_digits(&d, &w));
        prop_assert_eq!(uc.mul(&e1, &uc.add(&e2, &e3)), uc.add(&uc.mul(&e1, &e2), &uc.mul(&e1, &e3)));
        prop_assert_eq!(uc.add(&uc.add(&e1, &e2), &e3), uc.add(&e1, &uc.add(&e2, &e3)));
    }

    #[test]
    fn dtot_product_rule(f in prop::collection::vec((0u32..4, 0u32..4, 0i64..9), 1..5),
                         g in prop::collection::vec((0u32..4, 0u32..4, 0i64..9), 1..5)) {
        let w2 = W2::prime(3).unwrap();
        let a = FpAlgebra::polynomial(&w2, &["x", "y"]).unwrap();
        let m = omega_tot(&a).unwrap();
        let r = a.ambient();
        let build = |terms: &[(u32, u32, i64)]| terms.iter().fold(r.zero(), |acc, (i, j, c)| {
            let mono = r.mul(&r.pow(&r.var(0), *i as u64), &r.pow(&r.var(1), *j as u64));
            r.add(&acc, &r.mul(&r.from_int(*c), &mono))
        });
        let (f, g) = (build(&f), build(&g));
        let (f0, g0) = (a.reduce(&f), a.reduce(&g));
        let a0 = m.base();
        let want = m.add(&m.scale(&a0.pow(&g0, 3), &m.dtot(&f)), &m.scale(&a0.pow(&f0, 3), &m.dtot(&g)));
        prop_assert_eq!(m.dtot(&r.mul(&f, &g)), want);
    }
}
