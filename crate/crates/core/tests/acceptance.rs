//! One line per acceptance criterion. Oracles here are computed
//! independently of the library: integers mod p^2, ghost components over
//! Z[t]/(t^3), and explicit lift formulas.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use totdiff::algebra::{FpAlgebra, Poly, ReducedAlgebra};
use totdiff::biring::{Biring, PointOp};
use totdiff::cech::{self, catalog, CechClass, GlobalLift, GluedScheme};
use totdiff::coefficients::{Fq, W2Elem, W2};
use totdiff::differentials::{find_splitting, omega_tot, FrobeniusLift, Functional, SplittingSearch};
use totdiff::witt_interp::{UcElem, UcRing};
use totdiff::CommRing;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: totdiff::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// (x^p + y^p - (x + y)^p)/p over the integers, truncated polynomials in t
/// with i128 coefficients.
fn cp_int(p: u64, x: &[i128], y: &[i128], n: usize) -> Vec<i128> {
    let mut out = vec![0i128; n];
    for j in 1..p {
        let c = (binom(p, j) / p) as i128;
        let term = tmul(&tpow(x, j, n), &tpow(y, p - j, n), n);
        for (o, t) in out.iter_mut().zip(term) {
            *o -= c * t;
        }
    }
    out
}

fn tmul(a: &[i128], b: &[i128], n: usize) -> Vec<i128> {
    let mut out = vec![0i128; n];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < n {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn tpow(a: &[i128], e: u64, n: usize) -> Vec<i128> {
    let mut acc = vec![0i128; n];
    acc[0] = 1;
    for _ in 0..e {
        acc = tmul(&acc, a, n);
    }
    acc
}

fn to_poly(d: &ReducedAlgebra, v: &[i128], p: i128) -> Poly<totdiff::coefficients::FqElem> {
    let k = d.field();
    v.iter().enumerate().fold(d.zero(), |acc, (i, c)| {
        let c = d.constant(k.from_int(c.rem_euclid(p) as i64));
        let term = if i == 0 { c } else { d.mul(&c, &d.pow(&d.var(0), i as u64)) };
        d.add(&acc, &term)
    })
}

fn truncated(p: u32, n: u32) -> ReducedAlgebra {
    let k = Fq::prime(p).unwrap();
    let r = ReducedAlgebra::polynomial(k.clone(), &["t"]).unwrap();
    ReducedAlgebra::new(k, vec!["t".into()], &[r.parse(&format!("t^{n}")).unwrap()]).unwrap()
}

fn point_elements(d: &ReducedAlgebra, p: u32, n: usize) -> Vec<Poly<totdiff::coefficients::FqElem>> {
    let mut out = vec![];
    for code in 0..(p as usize).pow(n as u32) {
        let digits: Vec<i128> = (0..n).map(|i| ((code / (p as usize).pow(i as u32)) % p as usize) as i128).collect();
        out.push(to_poly(d, &digits, p as i128));
    }
    out
}

/// Witt vector with F_p coordinates as an integer mod p^2: [a0] + p a1.
fn witt_to_int(p: i64, a: &W2Elem) -> i64 {
    let a0 = a.w0.raw() as i64;
    let a1 = a.w1.raw() as i64;
    let p2 = p * p;
    let teich = (0..p).fold(1i64, |acc, _| acc * a0 % p2);
    (teich + p * a1) % p2
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for p in [3u32, 5] {
        let pi = p as i64;
        let w2 = W2::prime(p).unwrap();
        let fp = ReducedAlgebra::polynomial(Fq::prime(p).unwrap(), &[]).unwrap();
        let u1 = lib(UcRing::with_scalar(&fp, fp.field().one()))?;
        for a in w2.elements() {
            for b in w2.elements() {
                let ua = u1.elem(fp.constant(a.w0), fp.constant(a.w1));
                let ub = u1.elem(fp.constant(b.w0), fp.constant(b.w1));
                let (ia, ib) = (witt_to_int(pi, &a), witt_to_int(pi, &b));
                let s = u1.add(&ua, &ub);
                let m = u1.mul(&ua, &ub);
                let back = |x: &UcElem| {
                    let e = w2.elem(fp.field().from_int(const_of(&x.x0)), fp.field().from_int(const_of(&x.x1)));
                    witt_to_int(pi, &e)
                };
                ensure(back(&s) == (ia + ib) % (pi * pi), || format!("p={p}: U_1 sum of {ia} and {ib}"))?;
                ensure(back(&m) == (ia * ib) % (pi * pi), || format!("p={p}: U_1 product of {ia} and {ib}"))?;
            }
        }
        // W2(F_p[t]/(t^3)) through ghost components over Z[t]/(t^3)
        let d = truncated(p, 3);
        let u1 = lib(UcRing::with_scalar(&d, d.field().one()))?;
        let pp = p as i128;
        for _ in 0..1000 {
            let mut r = || (0..3).map(|_| rng.gen_range(0..pp)).collect::<Vec<i128>>();
            let (a0, a1, b0, b1) = (r(), r(), r(), r());
            let cp = cp_int(p as u64, &a0, &b0, 3);
            let s1: Vec<i128> = (0..3).map(|i| a1[i] + b1[i] + cp[i]).collect();
            let s0: Vec<i128> = (0..3).map(|i| a0[i] + b0[i]).collect();
            let m0 = tmul(&a0, &b0, 3);
            let m1: Vec<i128> = {
                let x = tmul(&tpow(&a0, p as u64, 3), &b1, 3);
                let y = tmul(&tpow(&b0, p as u64, 3), &a1, 3);
                (0..3).map(|i| x[i] + y[i]).collect()
            };
            let ua = u1.elem(to_poly(&d, &a0, pp), to_poly(&d, &a1, pp));
            let ub = u1.elem(to_poly(&d, &b0, pp), to_poly(&d, &b1, pp));
            ensure(u1.add(&ua, &ub) == u1.elem(to_poly(&d, &s0, pp), to_poly(&d, &s1, pp)), || format!("p={p}: sum over F_p[t]/(t^3)"))?;
            ensure(u1.mul(&ua, &ub) == u1.elem(to_poly(&d, &m0, pp), to_poly(&d, &m1, pp)), || format!("p={p}: product over F_p[t]/(t^3)"))?;
        }
        // U_0: I^2 = 0 and p I = 0, exhaustively
        for d in [ReducedAlgebra::polynomial(Fq::prime(p).unwrap(), &[]).unwrap(), truncated(p, 3)] {
            let u0 = lib(UcRing::with_scalar(&d, d.field().zero()))?;
            let elems = point_elements(&d, p, d.staircase(10).len());
            for x in &elems {
                let ix = u0.elem(d.zero(), x.clone());
                let px = (0..p).fold(u0.zero(), |acc, _| u0.add(&acc, &ix));
                ensure(px == u0.zero(), || format!("p={p}: p I != 0"))?;
                for y in &elems {
                    let iy = u0.elem(d.zero(), y.clone());
                    ensure(u0.mul(&ix, &iy) == u0.zero(), || format!("p={p}: I^2 != 0"))?;
                }
            }
        }
    }
    Ok(())
}

fn const_of(x: &Poly<totdiff::coefficients::FqElem>) -> i64 {
    x.terms().next().map(|(_, c)| c.raw() as i64).unwrap_or(0)
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let small = truncated(3, 3);
    let big = truncated(3, 6);
    let configs = [(&small, "0"), (&small, "1"), (&small, "2"), (&big, "t")];
    for (d, c) in configs {
        let uc = lib(UcRing::new(d, lib(d.parse(c))?))?;
        for _ in 0..1000 {
            let mut el = || uc.elem(d.random(&mut rng, 5), d.random(&mut rng, 5));
            let (a, b, x) = (el(), el(), el());
            ensure(uc.add(&uc.add(&a, &b), &x) == uc.add(&a, &uc.add(&b, &x)), || format!("c={c}: additive associativity"))?;
            ensure(uc.mul(&uc.mul(&a, &b), &x) == uc.mul(&a, &uc.mul(&b, &x)), || format!("c={c}: multiplicative associativity"))?;
            ensure(uc.add(&a, &b) == uc.add(&b, &a) && uc.mul(&a, &b) == uc.mul(&b, &a), || format!("c={c}: commutativity"))?;
            ensure(uc.mul(&a, &uc.add(&b, &x)) == uc.add(&uc.mul(&a, &b), &uc.mul(&a, &x)), || format!("c={c}: distributivity"))?;
            ensure(uc.add(&a, &uc.zero()) == a && uc.mul(&a, &uc.one()) == a, || format!("c={c}: identities"))?;
            ensure(uc.add(&a, &uc.neg(&a)) == uc.zero(), || format!("c={c}: negation"))?;
            let e = d.random(&mut rng, 5);
            let target = uc.rescale(&e);
            let h = |v: &UcElem| uc.rescale_elem(&e, v);
            ensure(h(&uc.add(&a, &b)) == target.add(&h(&a), &h(&b)), || format!("c={c}: rescale additive"))?;
            ensure(h(&uc.mul(&a, &b)) == target.mul(&h(&a), &h(&b)), || format!("c={c}: rescale multiplicative"))?;
            ensure(h(&uc.one()) == target.one(), || format!("c={c}: rescale unital"))?;
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for p in [3u32, 5] {
        let w2 = W2::prime(p).unwrap();
        for n in 0..=3usize {
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let a = lib(FpAlgebra::polynomial(&w2, &refs))?;
            let m = lib(omega_tot(&a))?;
            ensure(m.rank() == n + 1 && m.relations().is_empty() && m.is_free(), || format!("p={p}, n={n}: not free of rank n+1"))?;
        }
        let a = lib(FpAlgebra::polynomial(&w2, &["x", "y"]))?;
        let m = lib(omega_tot(&a))?;
        let a0 = m.base();
        let r = a.ambient();
        let pp = p as u64;
        for _ in 0..1000 {
            let deg = if p == 3 { 3 } else { 2 };
            let f = a.random(&mut rng, deg);
            let g = a.random(&mut rng, deg);
            let (f0, g0) = (a.reduce(&f), a.reduce(&g));
            // sum rule with an independently expanded C_p
            let mut cp = a0.zero();
            for j in 1..pp {
                let c = a0.constant(a0.field().from_int(-((binom(pp, j) / pp) as i64)));
                cp = a0.add(&cp, &a0.mul(&c, &a0.mul(&a0.pow(&f0, j), &a0.pow(&g0, pp - j))));
            }
            let want = m.add(&m.add(&m.dtot(&f), &m.dtot(&g)), &m.alpha(&cp));
            ensure(m.dtot(&r.add(&f, &g)) == want, || format!("p={p}: sum rule"))?;
            let want = m.add(&m.scale(&a0.pow(&g0, pp), &m.dtot(&f)), &m.scale(&a0.pow(&f0, pp), &m.dtot(&g)));
            ensure(m.dtot(&r.mul(&f, &g)) == want, || format!("p={p}: product rule"))?;
            // constant rule: (phi(c) - c^p)/p on integers mod p^2
            let c = w2.random(&mut rng);
            let ic = witt_to_int(p as i64, &c);
            let p2 = (p * p) as i64;
            let cpow = (0..p).fold(1i64, |acc, _| acc * ic % p2);
            let delta = ((ic - cpow).rem_euclid(p2) / p as i64) as i64;
            ensure(m.dtot(&r.constant(c)) == m.alpha(&a0.constant(a0.field().from_int(delta))), || format!("p={p}: constant rule"))?;
        }
    }
    Ok(())
}

fn round_trips(a: &FpAlgebra, phis: &[Vec<&str>]) -> Outcome {
    let m = lib(omega_tot(a))?;
    let h0 = match lib(find_splitting(&m, None))? {
        SplittingSearch::Found(h) => h,
        SplittingSearch::Absent { .. } => return Err(format!("{a:?}: no splitting")),
    };
    let phi0 = lib(FrobeniusLift::from_splitting(&m, &h0))?;
    ensure(lib(phi0.to_splitting(&m))? == h0, || "h -> phi -> h".into())?;
    for imgs in phis {
        let images: Vec<_> = imgs.iter().map(|s| a.parse_ambient(s)).collect::<totdiff::Result<_>>().map_err(|e| e.to_string())?;
        let phi = lib(FrobeniusLift::new(a, images))?;
        let h = lib(phi.to_splitting(&m))?;
        let back = lib(FrobeniusLift::from_splitting(&m, &h))?;
        ensure(back == phi, || format!("phi -> h -> phi for {imgs:?}"))?;
        let h2 = lib(back.to_splitting(&m))?;
        ensure(h2 == h, || format!("h -> phi -> h for {imgs:?}"))?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let w2 = W2::prime(3).unwrap();
    let a1 = lib(FpAlgebra::polynomial(&w2, &["x"]))?;
    round_trips(&a1, &[vec!["x^3"], vec!["x^3 + p*x"], vec!["x^3 + p*(x^2 + 2)"], vec!["x^3 + p*x^7"]])?;
    let gm = lib(FpAlgebra::parse(&w2, &["x", "x_inv"], &["x*x_inv - 1"]))?;
    // phi(x) = x^3 + p g, phi(1/x) = x_inv^3 - p g x_inv^6
    round_trips(
        &gm,
        &[
            vec!["x^3", "x_inv^3"],
            vec!["x^3 + p*x", "x_inv^3 - p*x*x_inv^6"],
            vec!["x^3 + p*(x^2 + x_inv)", "x_inv^3 - p*(x^2 + x_inv)*x_inv^6"],
        ],
    )?;
    let nilp = lib(FpAlgebra::parse(&w2, &["x"], &["x^2 - p"]))?;
    let m = lib(omega_tot(&nilp))?;
    // the relation reads -1 * dtot(p) + 2x^3 * dtot(x) with x^3 = 0, so h(dtot p) = 0
    let rel = &m.relations()[0];
    ensure(rel.0[0] == m.base().from_int(-1) && rel.0[1].is_zero(), || "relation of x^2 - p".into())?;
    ensure(matches!(lib(find_splitting(&m, None))?, SplittingSearch::Absent { .. }), || "x^2 - p must have no splitting".into())?;
    ensure(FrobeniusLift::new(&nilp, vec![lib(nilp.parse_ambient("x^3"))?]).is_err(), || "x -> x^3 is not a lift on x^2 - p".into())
}

fn criterion_5() -> Outcome {
    let w2 = W2::prime(3).unwrap();
    let s = lib(catalog::affine_space(&w2, 1))?;
    let a = &s.charts[0].algebra;
    let m = &s.charts[0].module;
    let a0 = m.base();
    let h = lib(find_splitting(m, None))?.found().cloned().ok_or("no splitting")?;
    let GlobalLift::Found { lifts, torsor_basis, .. } = lib(cech::global_frobenius_lift(&s, None, None))? else {
        return Err("no global lift on the affine line".into());
    };
    let h2 = lib(lifts[0].to_splitting(m))?;
    let diff = h.sub(m, &h2);
    ensure(diff.values[0].is_zero(), || "difference of lifts does not vanish on dtot p".into())?;
    ensure(lib(Functional::new(m, diff.values.clone())).is_ok(), || "difference is not a functional".into())?;
    ensure(!torsor_basis.is_empty(), || "no torsor directions".into())?;
    let phi = lib(FrobeniusLift::from_splitting(m, &h))?;
    let basis = a0.staircase(4);
    for code in 0..3usize.pow(basis.len() as u32) {
        let t = basis.iter().enumerate().fold(a0.zero(), |acc, (i, mono)| {
            let c = (code / 3usize.pow(i as u32)) % 3;
            a0.add(&acc, &a0.mul(&a0.from_int(c as i64), &a0.monomial(mono.clone())))
        });
        let moved = h.add(m, &lib(Functional::new(m, vec![a0.zero(), t.clone()]))?);
        let psi = lib(FrobeniusLift::from_splitting(m, &moved))?;
        let want = a.add(&phi.images()[0], &a.times_p(&t));
        ensure(psi.images()[0] == want, || format!("moved lift for t = {}", a0.format(&t)))?;
    }
    Ok(())
}

/// Lifts from the chart splittings moved by chart functionals t_i.
fn perturbed_lifts(s: &GluedScheme, h: &[Functional], t: &[&str]) -> Result<Vec<FrobeniusLift>, String> {
    let mut out = vec![];
    for (k, c) in s.charts.iter().enumerate() {
        let m = &c.module;
        let a0 = m.base();
        let n = c.algebra.nvars();
        let mut free: Vec<_> = (0..n).map(|_| a0.zero()).collect();
        let w = lib(a0.parse(t[k]))?;
        match m.relations().first() {
            // (-r_y w, r_x w) pairs to zero with the relation (r_p, r_x, r_y)
            Some(rel) => {
                free[0] = a0.neg(&a0.mul(&rel.0[2], &w));
                free[1] = a0.mul(&rel.0[1], &w);
            }
            None => free[0] = w,
        }
        let mut vals = vec![a0.zero()];
        vals.extend(free);
        let tf = lib(Functional::new(m, vals))?;
        out.push(lib(FrobeniusLift::from_splitting(m, &h[k].add(m, &tf)))?);
    }
    Ok(out)
}

fn check_witness(s: &GluedScheme, d: &cech::Decision, target: &CechClass) -> Outcome {
    let w = d.witness.as_ref().ok_or("missing witness")?;
    ensure(lib(w.coboundary(s))? == *target, || "witness does not bound the difference".into())
}

fn criterion_6(verdicts: &mut Vec<(String, GluedScheme, CechClass, bool, u32)>) -> Outcome {
    let w2 = W2::prime(3).unwrap();
    let p1 = lib(catalog::projective_line(&w2))?;
    let kappa = lib(cech::kodaira_spencer(&p1, None))?;
    let h = lib(cech::chart_splittings(&p1, None))?;
    let lifts = perturbed_lifts(&p1, &h, &["x^2", "y + 1"])?;
    let di = lib(cech::deligne_illusie(&p1, &lifts))?;
    ensure(kappa.is_zero(), || "kappa on P^1".into())?;
    let d = lib(cech::classes_equal_up_to_sign(&p1, &kappa, &di, -1, None))?;
    ensure(d.holds, || "P^1: kappa = -h".into())?;
    check_witness(&p1, &d, &lib(kappa.add(&p1, &di))?)?;
    verdicts.push(("P^1 kappa + h".into(), p1.clone(), lib(kappa.add(&p1, &di))?, d.holds, d.window));

    let g = lib(catalog::genus_one(&w2))?;
    let h = lib(cech::chart_splittings(&g, None))?;
    let kappa = lib(cech::kodaira_spencer_from(&g, &h))?;
    let lifts = perturbed_lifts(&g, &h, &["x + y", "u^2"])?;
    let di = lib(cech::deligne_illusie(&g, &lifts))?;
    let d = lib(cech::classes_equal_up_to_sign(&g, &kappa, &di, -1, None))?;
    ensure(d.holds, || "genus one: kappa = -h".into())?;
    let sum = lib(kappa.add(&g, &di))?;
    ensure(!sum.is_zero(), || "perturbed lifts should give a nonzero coboundary".into())?;
    check_witness(&g, &d, &sum)?;
    verdicts.push(("genus one kappa + h".into(), g.clone(), sum, d.holds, d.window));
    let k = lib(cech::is_coboundary(&g, &kappa, None))?;
    ensure(!k.holds, || "genus one: kappa should be nonzero".into())?;
    verdicts.push(("genus one kappa".into(), g.clone(), kappa.clone(), k.holds, k.window));
    let plus = lib(cech::classes_equal_up_to_sign(&g, &kappa, &di, 1, None))?;
    ensure(!plus.holds, || "genus one: kappa = +h must fail".into())?;
    verdicts.push(("genus one kappa - h".into(), g.clone(), lib(kappa.sub(&g, &di))?, plus.holds, plus.window));
    Ok(())
}

fn criterion_7(verdicts: &mut Vec<(String, GluedScheme, CechClass, bool, u32)>) -> Outcome {
    let w2 = W2::prime(3).unwrap();
    let g = lib(catalog::genus_one(&w2))?;
    let h = lib(cech::chart_splittings(&g, None))?;
    let kappa = lib(cech::kodaira_spencer_from(&g, &h))?;
    let omega = lib(catalog::invariant_differential(&g))?;
    // for p = 3 the invariant differential is -F*dy and -F*dv
    let a0 = g.charts[0].module.base();
    ensure(omega.per_chart[0] == vec![a0.zero(), a0.from_int(-1)], || "invariant differential on the affine chart".into())?;
    let cup = lib(cech::cup_with(&g, &kappa, &omega))?;
    let sig = cech::sigma_lift_slot0(&g, &omega, &h);
    let gm = lib(cech::gauss_manin(&g, &omega, &sig, &h, None))?;
    ensure(gm == cup, || "sigma lifts: cocycles differ".into())?;
    let other: Vec<_> = ["x*y + 1", "v"].iter().zip(&g.charts).map(|(s, c)| c.module.base().parse(s).unwrap()).collect();
    let gm2 = lib(cech::gauss_manin(&g, &omega, &other, &h, None))?;
    let d = lib(cech::classes_equal_up_to_sign(&g, &gm2, &cup, 1, None))?;
    ensure(d.holds, || "arbitrary lifts: classes differ".into())?;
    check_witness(&g, &d, &lib(gm2.sub(&g, &cup))?)?;
    verdicts.push(("genus one gm - cup".into(), g.clone(), lib(gm2.sub(&g, &cup))?, d.holds, d.window));
    let nz = lib(cech::is_coboundary(&g, &cup, None))?;
    ensure(!nz.holds, || "cup product with the invariant differential should be nonzero".into())?;
    verdicts.push(("genus one cup".into(), g.clone(), cup, nz.holds, nz.window));

    let p1 = lib(catalog::projective_line(&w2))?;
    let h = lib(cech::chart_splittings(&p1, None))?;
    let kappa = lib(cech::kodaira_spencer_from(&p1, &h))?;
    let zero = cech::GlobalForm::zero(&p1);
    let cup = lib(cech::cup_with(&p1, &kappa, &zero))?;
    let sig = cech::sigma_lift_slot0(&p1, &zero, &h);
    ensure(lib(cech::gauss_manin(&p1, &zero, &sig, &h, None))? == cup, || "P^1: sigma lifts".into())?;
    let other = vec![lib(p1.charts[0].module.base().parse("x^2"))?, lib(p1.charts[1].module.base().parse("y + 2"))?];
    let gm = lib(cech::gauss_manin(&p1, &zero, &other, &h, None))?;
    let d = lib(cech::classes_equal_up_to_sign(&p1, &gm, &cup, 1, None))?;
    ensure(d.holds, || "P^1: arbitrary lifts".into())?;
    verdicts.push(("P^1 gm - cup".into(), p1.clone(), lib(gm.sub(&p1, &cup))?, d.holds, d.window));
    // F*dx on one chart only is not global
    let bad = lib(cech::GlobalForm::parse(&p1, &[vec!["1"], vec!["0"]]))?;
    ensure(bad.verify(&p1, 10).is_err(), || "F*dx should not be a global section".into())
}

fn criterion_8(verdicts: &mut Vec<(String, GluedScheme, CechClass, bool, u32)>) -> Outcome {
    let w2 = W2::prime(3).unwrap();
    let found = [
        ("P^1", lib(catalog::projective_line(&w2))?),
        ("three-chart P^1", lib(catalog::projective_line_three(&w2))?),
        ("A^1", lib(catalog::affine_space(&w2, 1))?),
        ("A^2", lib(catalog::affine_space(&w2, 2))?),
        ("G_m", lib(catalog::multiplicative_group(&w2))?),
    ];
    for (name, s) in found {
        let kappa = lib(cech::kodaira_spencer(&s, None))?;
        let d = lib(cech::is_coboundary(&s, &kappa, None))?;
        ensure(d.holds, || format!("{name}: kappa should be a coboundary"))?;
        verdicts.push((format!("{name} kappa"), s.clone(), kappa, d.holds, d.window));
        let GlobalLift::Found { lifts, .. } = lib(cech::global_frobenius_lift(&s, None, None))? else {
            return Err(format!("{name}: no global lift"));
        };
        lib(cech::check_compatible(&s, &lifts))?;
    }
    let g = lib(catalog::genus_one(&w2))?;
    let kappa = lib(cech::kodaira_spencer(&g, None))?;
    ensure(!lib(cech::is_coboundary(&g, &kappa, None))?.holds, || "genus one: kappa".into())?;
    match lib(cech::global_frobenius_lift(&g, None, None))? {
        GlobalLift::Absent { window, stabilized, .. } => {
            ensure(window == 2 * cech::default_window(&g) && stabilized, || "genus one: Absent at the doubled window".into())
        }
        GlobalLift::Found { .. } => Err("genus one: a global lift must not exist".into()),
    }
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let f3 = ReducedAlgebra::polynomial(Fq::prime(3).unwrap(), &[]).unwrap();
    let t4 = truncated(3, 4);
    for c in 0..3i64 {
        let q = lib(Biring::new(3, c))?;
        let check = |f: &totdiff::biring::BiringPoint, g: &totdiff::biring::BiringPoint| -> Outcome {
            let (uc, x) = lib(q.to_uc(f))?;
            let y = lib(q.to_uc(g))?.1;
            ensure(lib(q.to_uc(&lib(q.point_ops(f, g, PointOp::Add))?))?.1 == uc.add(&x, &y), || format!("c={c}: add"))?;
            ensure(lib(q.to_uc(&lib(q.point_ops(f, g, PointOp::Mul))?))?.1 == uc.mul(&x, &y), || format!("c={c}: mul"))
        };
        let elems = point_elements(&f3, 3, 1);
        let pts: Vec<_> = elems.iter().flat_map(|e| elems.iter().map(|n| q.point(&f3, e.clone(), n.clone()))).collect();
        for f in &pts {
            for g in &pts {
                check(f, g)?;
            }
        }
        for _ in 0..500 {
            let f = q.point(&t4, t4.random(&mut rng, 3), t4.random(&mut rng, 3));
            let g = q.point(&t4, t4.random(&mut rng, 3), t4.random(&mut rng, 3));
            check(&f, &g)?;
        }
    }
    // beta is a ring map from Z/9, checked against integer arithmetic
    let w2 = W2::prime(3).unwrap();
    let q = lib(Biring::new(3, 1))?;
    let of_int = |n: i64| w2.from_int(n);
    for a in 0..9i64 {
        for b in 0..9i64 {
            let fa = lib(q.beta_structure(&w2, &of_int(a), &f3))?;
            let fb = lib(q.beta_structure(&w2, &of_int(b), &f3))?;
            ensure(lib(q.point_ops(&fa, &fb, PointOp::Add))? == lib(q.beta_structure(&w2, &of_int((a + b) % 9), &f3))?, || format!("beta({a}+{b})"))?;
            ensure(lib(q.point_ops(&fa, &fb, PointOp::Mul))? == lib(q.beta_structure(&w2, &of_int(a * b % 9), &f3))?, || format!("beta({a}*{b})"))?;
        }
    }
    let p = lib(q.beta_structure(&w2, &of_int(3), &f3))?;
    ensure(p == q.point(&f3, f3.zero(), f3.one()), || "beta(p) = (0, c)".into())
}

fn criterion_10(verdicts: &[(String, GluedScheme, CechClass, bool, u32)]) -> Outcome {
    ensure(!verdicts.is_empty(), || "no verdicts recorded".into())?;
    for (name, s, k, holds, window) in verdicts {
        let again = lib(cech::is_coboundary(s, k, Some(window + 2)))?;
        ensure(again.holds == *holds, || format!("{name}: verdict flips at window {}", window + 2))?;
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let suite = Instant::now();
    let mut verdicts = vec![];
    let mut results: Vec<(usize, &str, Outcome, Duration, Duration)> = vec![];
    let mut run = |n: usize, name: &'static str, limit: u64, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = f();
        let el = start.elapsed();
        let line = match &out {
            Ok(()) if el <= Duration::from_secs(limit) => format!("criterion {n:>2}: PASS  {name} ({:.2}s < {limit}s)", el.as_secs_f64()),
            Ok(()) => format!("criterion {n:>2}: FAIL  {name} (too slow: {:.2}s > {limit}s)", el.as_secs_f64()),
            Err(e) => format!("criterion {n:>2}: FAIL  {name} ({e})"),
        };
        writeln!(std::io::stdout(), "{line}").unwrap();
        results.push((n, name, out, el, Duration::from_secs(limit)));
    };
    run(1, "Witt interpolation endpoints", 5, &mut criterion_1);
    run(2, "U_c ring axioms and rescaling", 10, &mut criterion_2);
    run(3, "free Omega of affine space and d^tot rules", 10, &mut criterion_3);
    run(4, "splitting <-> Frobenius lift bijection", 10, &mut criterion_4);
    run(5, "torsor of lifts on the affine line", 10, &mut criterion_5);
    run(6, "kappa = -h", 60, &mut || criterion_6(&mut verdicts));
    run(7, "Gauss-Manin = cup with kappa", 60, &mut || criterion_7(&mut verdicts));
    run(8, "obstruction consistency", 120, &mut || criterion_8(&mut verdicts));
    run(9, "biring represents U_c", 5, &mut criterion_9);
    let total = suite.elapsed();
    let start = Instant::now();
    let out = criterion_10(&verdicts);
    let el = start.elapsed();
    let all = total + el;
    let line = match &out {
        Ok(()) if all <= Duration::from_secs(240) => format!("criterion 10: PASS  window stability (suite {:.2}s < 240s)", all.as_secs_f64()),
        Ok(()) => format!("criterion 10: FAIL  window stability (suite too slow: {:.2}s)", all.as_secs_f64()),
        Err(e) => format!("criterion 10: FAIL  window stability ({e})"),
    };
    writeln!(std::io::stdout(), "{line}").unwrap();
    let failed: Vec<usize> = results
        .iter()
        .filter(|(_, _, o, el, lim)| o.is_err() || el > lim)
        .map(|(n, ..)| *n)
        .chain(if out.is_ok() && all <= Duration::from_secs(240) { None } else { Some(10) })
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
