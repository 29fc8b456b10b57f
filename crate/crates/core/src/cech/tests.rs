use super::catalog::*;
use crate::algebra::FpAlgebra;
use crate::error::Error;
use crate::ring::CommRing;
use super::*;
use crate::coefficients::W2;
use crate::differentials::FrobeniusLift;

fn w3() -> W2 {
    W2::prime(3).unwrap()
}

#[test]
fn gluing_checks() {
    let w2 = w3();
    assert!(glue_check(&projective_line(&w2).unwrap()).unwrap().passed());
    assert!(glue_check(&genus_one(&w2).unwrap()).unwrap().passed());
    assert!(glue_check(&projective_line_three(&w2).unwrap()).unwrap().passed());

    let charts = vec![
        Chart::new("x", FpAlgebra::polynomial(&w2, &["x"]).unwrap()).unwrap(),
        Chart::new("y", FpAlgebra::polynomial(&w2, &["y"]).unwrap()).unwrap(),
    ];
    let o = Overlap::parse(&charts, (0, 1), "x", "y", &["x", "x_inv"], &["y_inv", "y"]).unwrap();
    let broken = GluedScheme::new(&w2, charts, vec![o]).unwrap();
    assert!(matches!(glue_check(&broken), Err(Error::Gluing(_))));
}

#[test]
fn projective_line_classes_vanish() {
    let w2 = w3();
    let s = projective_line(&w2).unwrap();
    let kappa = kodaira_spencer(&s, None).unwrap();
    assert!(kappa.is_zero());
    let lifts: Vec<FrobeniusLift> = s
        .charts
        .iter()
        .map(|c| FrobeniusLift::new(&c.algebra, vec![c.algebra.pow(&c.algebra.var(0), 3)]).unwrap())
        .collect();
    assert!(deligne_illusie(&s, &lifts).unwrap().is_zero());
    match global_frobenius_lift(&s, None, None).unwrap() {
        GlobalLift::Found { lifts, torsor_basis, .. } => {
            assert_eq!(lifts[0].format(), vec!["x^3"]);
            assert_eq!(lifts[1].format(), vec!["y^3"]);
            // H^0(P^1, F*T) = H^0(O(2p)) has dimension 2p + 1
            assert_eq!(torsor_basis.len(), 7);
        }
        GlobalLift::Absent { .. } => panic!("P^1 has a Frobenius lift"),
    }
}

#[test]
fn three_chart_cocycles() {
    let w2 = w3();
    let s = projective_line_three(&w2).unwrap();
    let kappa = kodaira_spencer(&s, None).unwrap();
    assert_eq!(kappa.is_cocycle(&s), Some(true));
    let mut t = CechClass::zero(&s, Sheaf::FrobTangent, 0);
    t.values[1][0] = s.charts[1].module.base().parse("y^2 + 1").unwrap();
    t.values[2][0] = s.charts[2].module.base().parse("z").unwrap();
    let dt = t.coboundary(&s).unwrap();
    assert_eq!(dt.is_cocycle(&s), Some(true));
    let mut f = CechClass::zero(&s, Sheaf::Structure, 0);
    f.values[0][0] = s.charts[0].module.base().parse("x^2").unwrap();
    assert_eq!(f.coboundary(&s).unwrap().is_cocycle(&s), Some(true));
    let w = solve_coboundary(&s, &dt, 6).unwrap().unwrap();
    assert_eq!(w.coboundary(&s).unwrap(), dt);
}

#[test]
fn genus_one_classes() {
    let w2 = w3();
    let s = genus_one(&w2).unwrap();
    let h = chart_splittings(&s, None).unwrap();
    let kappa = kodaira_spencer_from(&s, &h).unwrap();
    assert!(!is_coboundary(&s, &kappa, None).unwrap().holds);

    let lifts: Vec<FrobeniusLift> =
        s.charts.iter().zip(&h).map(|(c, u)| FrobeniusLift::from_splitting(&c.module, u).unwrap()).collect();
    let di = deligne_illusie(&s, &lifts).unwrap();
    assert_eq!(di, kappa.neg(&s));
    let minus = classes_equal_up_to_sign(&s, &kappa, &di, -1, None).unwrap();
    assert!(minus.holds && minus.stabilized);
    let plus = classes_equal_up_to_sign(&s, &kappa, &di, 1, None).unwrap();
    assert!(!plus.holds);

    let omega = invariant_differential(&s).unwrap();
    let cup = cup_with(&s, &kappa, &omega).unwrap();
    let sig = sigma_lift_slot0(&s, &omega, &h);
    let gm = gauss_manin(&s, &omega, &sig, &h, None).unwrap();
    assert_eq!(gm, cup);
    let zeros = vec![crate::algebra::Poly::zero(); 2];
    let gm0 = gauss_manin(&s, &omega, &zeros, &h, None).unwrap();
    assert!(classes_equal_up_to_sign(&s, &gm0, &cup, 1, None).unwrap().holds);
    assert!(!is_coboundary(&s, &cup, None).unwrap().holds);

    assert!(matches!(global_frobenius_lift(&s, None, None).unwrap(), GlobalLift::Absent { chart: None, .. }));
}
