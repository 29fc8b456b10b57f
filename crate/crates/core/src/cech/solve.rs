//! Coboundary membership and global sections by linear algebra over F_q in
//! a degree window on the charts.

use std::collections::BTreeMap;

use super::classes::{CechClass, Decision, Sheaf};
use super::GluedScheme;
use crate::algebra::{Monomial, Poly};
use crate::coefficients::FqElem;
use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::CommRing;

/// 2 p (max relation degree) + 4.
pub fn default_window(s: &GluedScheme) -> u32 {
    2 * s.p() * s.max_relation_degree() + 4
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Relation { chart: usize, rel: usize, mono: Monomial },
    Overlap { overlap: usize, slot: usize, mono: Monomial },
}

struct System {
    /// (chart, slot, monomial); slot is 0 for the structure sheaf.
    unknowns: Vec<(usize, usize, Monomial)>,
    columns: Vec<Vec<(usize, FqElem)>>,
    index: BTreeMap<Key, usize>,
}

impl System {
    fn key(&mut self, k: Key) -> usize {
        let n = self.index.len();
        *self.index.entry(k).or_insert(n)
    }
}

/// The linear map t -> (chart relation constraints, d0 t) on 0-cochains
/// supported on standard monomials of degree <= window.
fn build(s: &GluedScheme, sheaf: Sheaf, window: u32) -> System {
    let mut sys = System { unknowns: vec![], columns: vec![], index: BTreeMap::new() };
    for (ci, chart) in s.charts.iter().enumerate() {
        let a0 = chart.module.base();
        let slots: Vec<usize> = match sheaf {
            Sheaf::Structure => vec![0],
            Sheaf::FrobTangent => (1..chart.module.rank()).collect(),
        };
        for m in a0.staircase(window) {
            let mono = a0.monomial(m.clone());
            for &z in &slots {
                let mut col: Vec<(usize, FqElem)> = Vec::new();
                if sheaf == Sheaf::FrobTangent {
                    for (l, r) in chart.module.relations().iter().enumerate() {
                        for (mm, c) in a0.mul(&r.0[z], &mono).terms() {
                            let i = sys.key(Key::Relation { chart: ci, rel: l, mono: mm.clone() });
                            col.push((i, *c));
                        }
                    }
                }
                for (oi, o) in s.overlaps.iter().enumerate() {
                    let (map, sign) = if o.i == ci {
                        (&o.res_i, -1)
                    } else if o.j == ci {
                        (&o.res_j, 1)
                    } else {
                        continue;
                    };
                    let l0 = o.ml.base();
                    let k = l0.field();
                    let image = map.apply_fn(&mono);
                    let entries: Vec<(usize, Poly<FqElem>)> = match sheaf {
                        Sheaf::Structure => vec![(0, image)],
                        Sheaf::FrobTangent => {
                            (1..o.ml.rank()).map(|zz| (zz, l0.mul(&map.matrix[zz][z], &image))).collect()
                        }
                    };
                    for (zz, v) in entries {
                        for (mm, c) in v.terms() {
                            let i = sys.key(Key::Overlap { overlap: oi, slot: zz, mono: mm.clone() });
                            let c = if sign < 0 { k.neg(c) } else { *c };
                            col.push((i, c));
                        }
                    }
                }
                sys.unknowns.push((ci, z, m.clone()));
                sys.columns.push(col);
            }
        }
    }
    sys
}

fn dense(s: &GluedScheme, sys: &System) -> Vec<Vec<FqElem>> {
    let k = s.w2.residue_field();
    let mut a = vec![vec![k.zero(); sys.columns.len()]; sys.index.len()];
    for (j, col) in sys.columns.iter().enumerate() {
        for (i, c) in col {
            a[*i][j] = k.add(&a[*i][j], c);
        }
    }
    a
}

fn cochain(s: &GluedScheme, sheaf: Sheaf, sys: &System, x: &[FqElem]) -> CechClass {
    let k = s.w2.residue_field();
    let mut values: Vec<Vec<Poly<FqElem>>> = s
        .charts
        .iter()
        .map(|c| match sheaf {
            Sheaf::Structure => vec![Poly::zero()],
            Sheaf::FrobTangent => vec![Poly::zero(); c.module.rank() - 1],
        })
        .collect();
    for ((ci, z, m), c) in sys.unknowns.iter().zip(x) {
        if k.is_zero(c) {
            continue;
        }
        let ring = s.charts[*ci].module.base().ring();
        let slot = if sheaf == Sheaf::Structure { 0 } else { z - 1 };
        ring.add_term(&mut values[*ci][slot], m.clone(), c);
    }
    CechClass { sheaf, degree: 0, values }
}

/// A 0-cochain t (vanishing on chart relations) with d0 t = k, using chart
/// monomials of degree <= window.
pub fn solve_coboundary(s: &GluedScheme, k: &CechClass, window: u32) -> Result<Option<CechClass>> {
    if k.degree != 1 || k.values.len() != s.overlaps.len() {
        return Err(Error::Incomparable("expected a 1-cochain on the scheme's overlaps".into()));
    }
    let mut sys = build(s, k.sheaf, window);
    let f = s.w2.residue_field();
    let mut rhs_sparse = Vec::new();
    for (oi, v) in k.values.iter().enumerate() {
        for (pos, poly) in v.iter().enumerate() {
            let slot = if k.sheaf == Sheaf::Structure { 0 } else { pos + 1 };
            for (mm, c) in poly.terms() {
                let i = sys.key(Key::Overlap { overlap: oi, slot, mono: mm.clone() });
                rhs_sparse.push((i, *c));
            }
        }
    }
    let a = dense(s, &sys);
    let mut b = vec![f.zero(); sys.index.len()];
    for (i, c) in rhs_sparse {
        b[i] = f.add(&b[i], &c);
    }
    Ok(linalg::solve(f, &a, &b, sys.columns.len()).map(|x| cochain(s, k.sheaf, &sys, &x)))
}

/// A basis of the global sections supported in the window: 0-cochains
/// with d0 t = 0.
pub fn global_sections(s: &GluedScheme, sheaf: Sheaf, window: u32) -> Vec<CechClass> {
    let sys = build(s, sheaf, window);
    let a = dense(s, &sys);
    linalg::nullspace(s.w2.residue_field(), &a, sys.columns.len())
        .iter()
        .map(|x| cochain(s, sheaf, &sys, x))
        .collect()
}

/// Decides whether k is a coboundary. Without an explicit window the
/// default is tried and then doubled; the verdict is then recomputed at
/// window + 2 to report stabilization.
pub fn is_coboundary(s: &GluedScheme, k: &CechClass, window: Option<u32>) -> Result<Decision> {
    let windows = match window {
        Some(w) => vec![w],
        None => {
            let w = default_window(s);
            vec![w, 2 * w]
        }
    };
    let mut last = None;
    for &w in &windows {
        let t = solve_coboundary(s, k, w)?;
        let found = t.is_some();
        last = Some((w, t));
        if found {
            break;
        }
    }
    let (w, witness) = last.unwrap();
    let holds = witness.is_some();
    let again = if holds { true } else { solve_coboundary(s, k, w + 2)?.is_some() };
    Ok(Decision { holds, witness, window: w, stabilized: again == holds })
}
