//! Schemes glued from at most three affine charts over W2(F_q), and Cech
//! computations of the Kodaira-Spencer, Deligne-Illusie and Gauss-Manin
//! classes in a degree window.

pub mod catalog;
mod classes;
mod solve;

pub use classes::{
    chart_splittings, check_compatible, classes_equal_up_to_sign, cup_with, deligne_illusie, gauss_manin,
    global_frobenius_lift, kodaira_spencer, kodaira_spencer_from, sigma_lift_slot0, CechClass, Decision, GlobalForm,
    GlobalLift, Sheaf,
};
pub use solve::{default_window, global_sections, is_coboundary, solve_coboundary};

use crate::algebra::{AlgebraHom, FpAlgebra, Localization, Poly};
use crate::coefficients::{W2Elem, W2};
use crate::differentials::{omega_tot, pullback, DiffModule, ModuleMap, SectionMap};
use crate::error::{Error, Result};
use crate::ring::CommRing;

/// An affine chart together with its module of total differentials.
#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    pub algebra: FpAlgebra,
    pub module: DiffModule,
}

impl Chart {
    pub fn new(name: &str, algebra: FpAlgebra) -> Result<Self> {
        let module = omega_tot(&algebra)?;
        Ok(Chart { name: name.to_string(), algebra, module })
    }
}

/// The overlap of charts i < j, presented as L = A_i[1/s] and R = A_j[1/s']
/// with mutually inverse transitions.
#[derive(Clone, Debug)]
pub struct Overlap {
    pub i: usize,
    pub j: usize,
    pub left: Localization,
    pub right: Localization,
    /// R -> L.
    pub to_left: AlgebraHom,
    /// L -> R.
    pub to_right: AlgebraHom,
    pub ml: DiffModule,
    pub mr: DiffModule,
    /// Functionals on chart i restricted to L.
    pub res_i: SectionMap,
    /// Functionals on chart j carried to L.
    pub res_j: SectionMap,
    /// Omega of chart i into Omega_L.
    pub push_i: ModuleMap,
    /// Omega of chart j into Omega_L.
    pub push_j: ModuleMap,
}

impl Overlap {
    pub fn new(
        charts: &[Chart],
        (i, j): (usize, usize),
        s_left: &Poly<W2Elem>,
        s_right: &Poly<W2Elem>,
        to_left: &[Poly<W2Elem>],
        to_right: &[Poly<W2Elem>],
    ) -> Result<Self> {
        if i >= j || j >= charts.len() {
            return Err(Error::Gluing(format!("overlap ({i},{j}) must have i < j < {}", charts.len())));
        }
        let left = charts[i].algebra.localize(s_left)?;
        let right = charts[j].algebra.localize(s_right)?;
        let to_left = AlgebraHom::new(right.algebra.clone(), left.algebra.clone(), to_left.to_vec())
            .map_err(|e| Error::Gluing(format!("transition ({i},{j}) into chart {i}: {e}")))?;
        let to_right = AlgebraHom::new(left.algebra.clone(), right.algebra.clone(), to_right.to_vec())
            .map_err(|e| Error::Gluing(format!("transition ({i},{j}) into chart {j}: {e}")))?;
        Self::from_parts(charts, (i, j), left, right, to_left, to_right)
    }

    /// Parses localizing elements in the chart variables and transition
    /// images in the variables of the target overlap ring.
    pub fn parse(
        charts: &[Chart],
        (i, j): (usize, usize),
        s_left: &str,
        s_right: &str,
        to_left: &[&str],
        to_right: &[&str],
    ) -> Result<Self> {
        if i >= j || j >= charts.len() {
            return Err(Error::Gluing(format!("overlap ({i},{j}) must have i < j < {}", charts.len())));
        }
        let sl = charts[i].algebra.parse_ambient(s_left)?;
        let sr = charts[j].algebra.parse_ambient(s_right)?;
        let left = charts[i].algebra.localize(&sl)?;
        let right = charts[j].algebra.localize(&sr)?;
        let tl: Vec<Poly<W2Elem>> = to_left.iter().map(|s| left.algebra.parse_ambient(s)).collect::<Result<_>>()?;
        let tr: Vec<Poly<W2Elem>> = to_right.iter().map(|s| right.algebra.parse_ambient(s)).collect::<Result<_>>()?;
        Self::new(charts, (i, j), &sl, &sr, &tl, &tr)
    }

    fn from_parts(
        charts: &[Chart],
        (i, j): (usize, usize),
        left: Localization,
        right: Localization,
        to_left: AlgebraHom,
        to_right: AlgebraHom,
    ) -> Result<Self> {
        let ml = omega_tot(&left.algebra)?;
        let mr = omega_tot(&right.algebra)?;
        let gl = |e: Error| Error::Gluing(format!("overlap ({i},{j}): {e}"));
        let res_i = SectionMap::localization(&charts[i].module, &ml, &left).map_err(gl)?;
        let loc_j = SectionMap::localization(&charts[j].module, &mr, &right).map_err(gl)?;
        let tr = SectionMap::transport(&mr, &ml, &to_left, &to_right).map_err(gl)?;
        let res_j = loc_j.then(&tr);
        let push_i = pullback(&left.inclusion, &charts[i].module, &ml).map_err(gl)?;
        let push_r = pullback(&right.inclusion, &charts[j].module, &mr).map_err(gl)?;
        let push_j = push_r.then(&pullback(&to_left, &mr, &ml).map_err(gl)?).map_err(gl)?;
        Ok(Overlap { i, j, left, right, to_left, to_right, ml, mr, res_i, res_j, push_i, push_j })
    }

    pub fn left_ring(&self) -> &FpAlgebra {
        &self.left.algebra
    }
}

/// Triple-overlap data for a three-chart cover: T_k = A_k[1/t_k] for each
/// chart, with isomorphisms between T_k and T_0.
#[derive(Clone, Debug)]
pub struct TripleData {
    pub rings: Vec<Localization>,
    pub modules: Vec<DiffModule>,
    /// T_k -> T_0 for k = 0, 1, 2 (identity for k = 0).
    pub to_first: Vec<AlgebraHom>,
    /// T_0 -> T_k.
    pub from_first: Vec<AlgebraHom>,
    /// Functionals on T_k carried to T_0.
    pub transport: Vec<SectionMap>,
    /// For each overlap (in scheme order), L_ij -> T_i.
    pub pair_maps: Vec<AlgebraHom>,
    pub pair_sections: Vec<SectionMap>,
}

/// A separated scheme over W2(F_q) glued from at most three smooth charts.
#[derive(Clone, Debug)]
pub struct GluedScheme {
    pub w2: W2,
    pub charts: Vec<Chart>,
    pub overlaps: Vec<Overlap>,
    pub triple: Option<TripleData>,
}

impl GluedScheme {
    /// Every pair of charts must have an overlap.
    pub fn new(w2: &W2, charts: Vec<Chart>, overlaps: Vec<Overlap>) -> Result<Self> {
        if charts.is_empty() || charts.len() > 3 {
            return Err(Error::Gluing(format!("{} charts; between 1 and 3 are supported", charts.len())));
        }
        for c in &charts {
            w2.ensure_same(c.algebra.base())?;
        }
        let mut overlaps = overlaps;
        overlaps.sort_by_key(|o| (o.i, o.j));
        let n = charts.len();
        let want: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let have: Vec<(usize, usize)> = overlaps.iter().map(|o| (o.i, o.j)).collect();
        if want != have {
            return Err(Error::Gluing(format!("expected overlaps {want:?}, got {have:?}")));
        }
        Ok(GluedScheme { w2: w2.clone(), charts, overlaps, triple: None })
    }

    /// Attaches triple-overlap data; `t` are the localizing elements in
    /// each chart, `to_first[k]` / `from_first[k]` the images for the
    /// isomorphisms T_k -> T_0 and T_0 -> T_k (k = 1, 2).
    pub fn with_triple(mut self, t: &[&str], to_first: &[Vec<&str>], from_first: &[Vec<&str>]) -> Result<Self> {
        if self.charts.len() != 3 || t.len() != 3 || to_first.len() != 2 || from_first.len() != 2 {
            return Err(Error::Gluing("triple data needs three charts".into()));
        }
        let mut rings = Vec::new();
        for (k, src) in t.iter().enumerate() {
            let a = &self.charts[k].algebra;
            rings.push(a.localize(&a.parse_ambient(src)?)?);
        }
        let modules: Vec<DiffModule> = rings.iter().map(|r| omega_tot(&r.algebra)).collect::<Result<_>>()?;
        let t0 = &rings[0].algebra;
        let mut tf = vec![AlgebraHom::identity(t0)];
        let mut ff = vec![AlgebraHom::identity(t0)];
        for k in 1..3 {
            let tk = &rings[k].algebra;
            let imgs: Vec<&str> = to_first[k - 1].clone();
            tf.push(AlgebraHom::parse(tk, t0, &imgs).map_err(|e| Error::Gluing(format!("T_{k} -> T_0: {e}")))?);
            let imgs: Vec<&str> = from_first[k - 1].clone();
            ff.push(AlgebraHom::parse(t0, tk, &imgs).map_err(|e| Error::Gluing(format!("T_0 -> T_{k}: {e}")))?);
        }
        let transport: Vec<SectionMap> = (0..3)
            .map(|k| SectionMap::transport(&modules[k], &modules[0], &tf[k], &ff[k]))
            .collect::<Result<_>>()?;
        let mut pair_maps = Vec::new();
        let mut pair_sections = Vec::new();
        for o in &self.overlaps {
            let tl = &rings[o.i];
            let l = &o.left;
            let mut images: Vec<Poly<W2Elem>> = (0..l.inv_var).map(|v| tl.algebra.var(v)).collect();
            let s = tl.algebra.nf(&l.s);
            let inv = hensel_inverse(&tl.algebra, &s)
                .ok_or_else(|| Error::Gluing(format!("overlap ({},{}) localizing element is not a unit on the triple overlap", o.i, o.j)))?;
            images.push(inv);
            let hom = AlgebraHom::new(l.algebra.clone(), tl.algebra.clone(), images)?;
            pair_sections.push(SectionMap::extend(&o.ml, &modules[o.i], &hom, tl)?);
            pair_maps.push(hom);
        }
        self.triple = Some(TripleData { rings, modules, to_first: tf, from_first: ff, transport, pair_maps, pair_sections });
        Ok(self)
    }

    pub fn base(&self) -> &W2 {
        &self.w2
    }

    pub fn p(&self) -> u32 {
        self.w2.p()
    }

    pub fn max_relation_degree(&self) -> u32 {
        self.charts
            .iter()
            .flat_map(|c| c.algebra.gens().iter().map(|g| g.total_degree()))
            .max()
            .unwrap_or(1)
            .max(1)
    }

    pub(crate) fn require_smooth(&self) -> Result<()> {
        for (k, c) in self.charts.iter().enumerate() {
            if !c.algebra.is_smooth() {
                return Err(Error::NotSmooth(format!("{k} ({})", c.name)));
            }
        }
        Ok(())
    }
}

/// Inverse of s in A, found modulo p in a degree window and lifted by one
/// Newton step b = b0 (2 - s b0).
pub(crate) fn hensel_inverse(a: &FpAlgebra, s: &Poly<W2Elem>) -> Option<Poly<W2Elem>> {
    let s0 = a.reduce(s);
    let window = 4 * (s0.total_degree() + 1) * a.p();
    let b0 = a.lift(&a.reduced().inverse(&s0, window)?);
    let two = a.from_int(2);
    let b = a.mul(&b0, &a.sub(&two, &a.mul(s, &b0)));
    (a.mul(s, &b) == a.one()).then_some(b)
}

/// Outcome of the gluing checks.
#[derive(Clone, Debug, Default)]
pub struct GlueReport {
    pub checks: Vec<(String, bool)>,
}

impl GlueReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Checks that transitions are mutually inverse, that they induce
/// isomorphisms of Omega^{1,tot} on overlaps, that charts are smooth, and the
/// cocycle condition on the triple overlap. The first failure is an error.
pub fn glue_check(s: &GluedScheme) -> Result<GlueReport> {
    let mut report = GlueReport::default();
    let check = |name: String, ok: bool, report: &mut GlueReport| -> Result<()> {
        report.checks.push((name.clone(), ok));
        if ok {
            Ok(())
        } else {
            Err(Error::Gluing(name))
        }
    };
    for (k, c) in s.charts.iter().enumerate() {
        check(format!("chart {k} ({}) is smooth", c.name), c.algebra.is_smooth(), &mut report)?;
    }
    let window = 2 * s.p() * s.max_relation_degree() + 4;
    for o in &s.overlaps {
        let (i, j) = (o.i, o.j);
        let lr = o.to_right.then(&o.to_left)?;
        let id_l = AlgebraHom::identity(&o.left.algebra);
        check(format!("({i},{j}): transition composite on chart {i} side is the identity"), lr.agrees_with(&id_l), &mut report)?;
        let rl = o.to_left.then(&o.to_right)?;
        let id_r = AlgebraHom::identity(&o.right.algebra);
        check(format!("({i},{j}): transition composite on chart {j} side is the identity"), rl.agrees_with(&id_r), &mut report)?;
        let a = pullback(&o.to_left, &o.mr, &o.ml)?;
        let b = pullback(&o.to_right, &o.ml, &o.mr)?;
        let ab = b.then(&a)?;
        let ok = (0..o.ml.rank()).all(|k| o.ml.in_relation_span(&o.ml.sub(&ab.columns[k], &o.ml.gen(k)), window));
        check(format!("({i},{j}): transitions induce an isomorphism of total differentials"), ok, &mut report)?;
    }
    if let Some(t) = &s.triple {
        for (o, pm) in s.overlaps.iter().zip(&t.pair_maps) {
            let tj = &t.rings[o.j];
            let mut ok = true;
            for v in 0..s.charts[o.j].algebra.nvars() {
                let y = o.right.inclusion.apply(&s.charts[o.j].algebra.var(v));
                let via_i = t.to_first[o.i].apply(&pm.apply(&o.to_left.apply(&y)));
                let direct = t.to_first[o.j].apply(&tj.inclusion.apply(&s.charts[o.j].algebra.var(v)));
                ok &= via_i == direct;
            }
            check(format!("({},{}): transition agrees with the triple overlap", o.i, o.j), ok, &mut report)?;
        }
        for k in 1..3 {
            let rt = t.from_first[k].then(&t.to_first[k])?;
            check(
                format!("triple overlap isomorphism for chart {k} is invertible"),
                rt.agrees_with(&AlgebraHom::identity(&t.rings[0].algebra)),
                &mut report,
            )?;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
