//! Cech cochains and the classes kappa, h, the Gauss-Manin map and the cup
//! product with kappa.

use super::solve::{default_window, global_sections, is_coboundary};
use super::GluedScheme;
use crate::algebra::{Poly, ReducedAlgebra};
use crate::coefficients::FqElem;
use crate::differentials::{find_splitting, DiffElem, FrobeniusLift, Functional};
use crate::error::{Error, Result};
use crate::ring::CommRing;

/// The sheaf a cochain takes values in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sheaf {
    /// O, one function per chart or overlap.
    Structure,
    /// Hom(F*Omega^1, O), values on the generators F*dx_k of each ring.
    FrobTangent,
}

/// A Cech cochain: per chart (degree 0) or per overlap i < j (degree 1, the
/// value on (j, i) being the negative). Values live in the chart ring or the
/// overlap ring A_i[1/s].
#[derive(Clone, Debug, PartialEq)]
pub struct CechClass {
    pub sheaf: Sheaf,
    pub degree: u8,
    pub values: Vec<Vec<Poly<FqElem>>>,
}

impl CechClass {
    pub fn zero(s: &GluedScheme, sheaf: Sheaf, degree: u8) -> Self {
        let values = if degree == 0 {
            s.charts.iter().map(|c| vec![Poly::zero(); width(sheaf, c.module.rank())]).collect()
        } else {
            s.overlaps.iter().map(|o| vec![Poly::zero(); width(sheaf, o.ml.rank())]).collect()
        };
        CechClass { sheaf, degree, values }
    }

    fn ring<'a>(&self, s: &'a GluedScheme, idx: usize) -> &'a ReducedAlgebra {
        if self.degree == 0 {
            s.charts[idx].module.base()
        } else {
            s.overlaps[idx].ml.base()
        }
    }

    fn check(&self, other: &CechClass) -> Result<()> {
        if self.sheaf != other.sheaf || self.degree != other.degree || self.values.len() != other.values.len() {
            return Err(Error::Incomparable("different sheaf, degree or cover".into()));
        }
        Ok(())
    }

    pub fn add(&self, s: &GluedScheme, other: &CechClass) -> Result<CechClass> {
        self.check(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (a, b))| {
                let r = self.ring(s, i);
                a.iter().zip(b).map(|(x, y)| r.add(x, y)).collect()
            })
            .collect();
        Ok(CechClass { sheaf: self.sheaf, degree: self.degree, values })
    }

    pub fn neg(&self, s: &GluedScheme) -> CechClass {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let r = self.ring(s, i);
                a.iter().map(|x| r.neg(x)).collect()
            })
            .collect();
        CechClass { sheaf: self.sheaf, degree: self.degree, values }
    }

    pub fn sub(&self, s: &GluedScheme, other: &CechClass) -> Result<CechClass> {
        self.add(s, &other.neg(s))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|x| x.is_zero()))
    }

    /// d0 t, (d0 t)_ij = t_j - t_i on the overlap.
    pub fn coboundary(&self, s: &GluedScheme) -> Result<CechClass> {
        if self.degree != 0 {
            return Err(Error::Incomparable("coboundary of a 1-cochain".into()));
        }
        let values = s
            .overlaps
            .iter()
            .map(|o| {
                let l0 = o.ml.base();
                match self.sheaf {
                    Sheaf::Structure => {
                        vec![l0.sub(&o.res_j.apply_fn(&self.values[o.j][0]), &o.res_i.apply_fn(&self.values[o.i][0]))]
                    }
                    Sheaf::FrobTangent => {
                        let ti = o.res_i.apply(&tangent(&self.values[o.i]));
                        let tj = o.res_j.apply(&tangent(&self.values[o.j]));
                        tj.sub(&o.ml, &ti).values[1..].to_vec()
                    }
                }
            })
            .collect();
        Ok(CechClass { sheaf: self.sheaf, degree: 1, values })
    }

    /// On a three-chart cover with triple data: whether k_12 - k_02 + k_01
    /// vanishes on the triple overlap. `None` without triple data.
    pub fn is_cocycle(&self, s: &GluedScheme) -> Option<bool> {
        let t = s.triple.as_ref()?;
        let m0 = &t.modules[0];
        let to_t0 = |idx: usize| -> Vec<Poly<FqElem>> {
            let o = &s.overlaps[idx];
            let pair = &t.pair_sections[idx];
            let tr = &t.transport[o.i];
            match self.sheaf {
                Sheaf::Structure => vec![tr.apply_fn(&pair.apply_fn(&self.values[idx][0]))],
                Sheaf::FrobTangent => tr.apply(&pair.apply(&tangent(&self.values[idx]))).values[1..].to_vec(),
            }
        };
        let (k01, k02, k12) = (to_t0(0), to_t0(1), to_t0(2));
        let r = m0.base();
        Some(k01.iter().zip(&k02).zip(&k12).all(|((a, b), c)| r.add(&r.sub(c, b), a).is_zero()))
    }

    pub fn format(&self, s: &GluedScheme) -> Vec<Vec<String>> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| v.iter().map(|x| self.ring(s, i).format(x)).collect())
            .collect()
    }
}

fn width(sheaf: Sheaf, rank: usize) -> usize {
    match sheaf {
        Sheaf::Structure => 1,
        Sheaf::FrobTangent => rank - 1,
    }
}

fn tangent(values: &[Poly<FqElem>]) -> Functional {
    let mut v = vec![Poly::zero()];
    v.extend(values.iter().cloned());
    Functional { values: v }
}

/// Result of a coboundary search.
#[derive(Clone, Debug)]
pub struct Decision {
    pub holds: bool,
    /// A 0-cochain t with d0 t equal to the tested cocycle.
    pub witness: Option<CechClass>,
    pub window: u32,
    /// Whether the verdict is unchanged at window + 2.
    pub stabilized: bool,
}

/// Splittings on every chart, or the first chart without one.
pub fn chart_splittings(s: &GluedScheme, bound: Option<u32>) -> Result<Vec<Functional>> {
    s.require_smooth()?;
    s.charts
        .iter()
        .enumerate()
        .map(|(k, c)| match find_splitting(&c.module, bound)? {
            crate::differentials::SplittingSearch::Found(h) => Ok(h),
            crate::differentials::SplittingSearch::Absent { bound } => Err(Error::ChartObstructed { chart: k, bound }),
        })
        .collect()
}

/// kappa from chart splittings h_i: s_ij = sigma_i - sigma_j, whose value on
/// F*dz is h_j(d z) - h_i(d z) on the overlap.
pub fn kodaira_spencer_from(s: &GluedScheme, splittings: &[Functional]) -> Result<CechClass> {
    let values = s
        .overlaps
        .iter()
        .map(|o| {
            let hi = o.res_i.apply(&splittings[o.i]);
            let hj = o.res_j.apply(&splittings[o.j]);
            hj.sub(&o.ml, &hi).values[1..].to_vec()
        })
        .collect();
    Ok(CechClass { sheaf: Sheaf::FrobTangent, degree: 1, values })
}

/// The Kodaira-Spencer cocycle from splittings found at `bound`.
pub fn kodaira_spencer(s: &GluedScheme, bound: Option<u32>) -> Result<CechClass> {
    let h = chart_splittings(s, bound)?;
    kodaira_spencer_from(s, &h)
}

/// h_ij with (phi_i - phi_j)(z) = p h_ij(F*dz) on the overlap generators.
pub fn deligne_illusie(s: &GluedScheme, lifts: &[FrobeniusLift]) -> Result<CechClass> {
    if lifts.len() != s.charts.len() {
        return Err(Error::InvalidLift(format!("{} lifts for {} charts", lifts.len(), s.charts.len())));
    }
    for (phi, c) in lifts.iter().zip(&s.charts) {
        c.algebra.ensure_same(phi.algebra())?;
    }
    let mut values = Vec::new();
    for o in &s.overlaps {
        let l = &o.left.algebra;
        let phi_i = lifts[o.i].localize(&o.left)?;
        let phi_j = lifts[o.j].localize(&o.right)?.transport(&o.to_left, &o.to_right)?;
        let mut h = vec![Poly::zero()];
        for (a, b) in phi_i.images().iter().zip(phi_j.images()) {
            let d = l.div_p(&l.sub(a, b)).ok_or_else(|| {
                Error::InvalidLift(format!("({},{}): difference of lifts is not divisible by p", o.i, o.j))
            })?;
            h.push(d);
        }
        let h = Functional::new(&o.ml, h).map_err(|_| {
            Error::InvalidLift(format!("({},{}): difference of lifts does not factor through d", o.i, o.j))
        })?;
        values.push(h.values[1..].to_vec());
    }
    Ok(CechClass { sheaf: Sheaf::FrobTangent, degree: 1, values })
}

/// Whether k1 = sign * k2 modulo coboundaries, with a witness t satisfying
/// d0 t = k1 - sign * k2.
pub fn classes_equal_up_to_sign(
    s: &GluedScheme,
    k1: &CechClass,
    k2: &CechClass,
    sign: i8,
    window: Option<u32>,
) -> Result<Decision> {
    let d = if sign < 0 { k1.add(s, k2)? } else { k1.sub(s, k2)? };
    is_coboundary(s, &d, window)
}

/// A global section of F*Omega^1: per chart, coefficients on F*dx_k.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalForm {
    pub per_chart: Vec<Vec<Poly<FqElem>>>,
}

impl GlobalForm {
    pub fn zero(s: &GluedScheme) -> Self {
        GlobalForm { per_chart: s.charts.iter().map(|c| vec![Poly::zero(); c.algebra.nvars()]).collect() }
    }

    pub fn parse(s: &GluedScheme, per_chart: &[Vec<&str>]) -> Result<Self> {
        if per_chart.len() != s.charts.len() {
            return Err(Error::NotGlobalSection(format!("{} charts given, {} expected", per_chart.len(), s.charts.len())));
        }
        let mut out = Vec::new();
        for (c, v) in s.charts.iter().zip(per_chart) {
            if v.len() != c.algebra.nvars() {
                return Err(Error::NotGlobalSection(format!("chart {} needs {} coefficients", c.name, c.algebra.nvars())));
            }
            out.push(v.iter().map(|e| c.module.base().parse(e)).collect::<Result<Vec<_>>>()?);
        }
        Ok(GlobalForm { per_chart: out })
    }

    fn lift(&self, s: &GluedScheme, chart: usize, slot0: &Poly<FqElem>) -> DiffElem {
        let mut v = vec![slot0.clone()];
        v.extend(self.per_chart[chart].iter().map(|c| s.charts[chart].module.base().nf(c)));
        DiffElem(v)
    }

    /// Checks agreement on every overlap modulo the relations of F*Omega^1.
    pub fn verify(&self, s: &GluedScheme, window: u32) -> Result<()> {
        for o in &s.overlaps {
            let zi = self.lift(s, o.i, &Poly::zero());
            let zj = self.lift(s, o.j, &Poly::zero());
            let wi = o.ml.beta(&o.push_i.apply(&zi));
            let wj = o.ml.beta(&o.push_j.apply(&zj));
            let l0 = o.ml.base();
            let diff: Vec<Poly<FqElem>> = wi.iter().zip(&wj).map(|(a, b)| l0.sub(a, b)).collect();
            if !o.ml.frob_omega().in_relation_span(&diff, window) {
                return Err(Error::NotGlobalSection(format!("charts {} and {} disagree on their overlap", o.i, o.j)));
            }
        }
        Ok(())
    }
}

/// The d^tot p coordinates making the chart lifts equal sigma_i(omega_i):
/// -h_i(omega_i).
pub fn sigma_lift_slot0(s: &GluedScheme, omega: &GlobalForm, splittings: &[Functional]) -> Vec<Poly<FqElem>> {
    s.charts
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let a0 = c.module.base();
            a0.neg(&splittings[k].on_frob_omega(&omega.per_chart[k], &c.module))
        })
        .collect()
}

/// g_ij = alpha^{-1}(w_i - w_j) for chart lifts w_i of omega with the given
/// d^tot p coordinates, read off with the restriction of h_i.
pub fn gauss_manin(
    s: &GluedScheme,
    omega: &GlobalForm,
    slot0: &[Poly<FqElem>],
    splittings: &[Functional],
    window: Option<u32>,
) -> Result<CechClass> {
    omega.verify(s, window.unwrap_or_else(|| default_window(s)))?;
    let values = s
        .overlaps
        .iter()
        .map(|o| {
            let wi = o.push_i.apply(&omega.lift(s, o.i, &slot0[o.i]));
            let wj = o.push_j.apply(&omega.lift(s, o.j, &slot0[o.j]));
            let hi = o.res_i.apply(&splittings[o.i]);
            vec![hi.eval(&o.ml, &o.ml.sub(&wi, &wj))]
        })
        .collect();
    Ok(CechClass { sheaf: Sheaf::Structure, degree: 1, values })
}

/// (kappa cup omega)_ij = s_ij(omega_i).
pub fn cup_with(s: &GluedScheme, kappa: &CechClass, omega: &GlobalForm) -> Result<CechClass> {
    if kappa.sheaf != Sheaf::FrobTangent || kappa.degree != 1 {
        return Err(Error::Incomparable("cup product needs a 1-cochain in Hom(F*Omega^1, O)".into()));
    }
    let values = s
        .overlaps
        .iter()
        .zip(&kappa.values)
        .map(|(o, k)| {
            let wi = o.ml.beta(&o.push_i.apply(&omega.lift(s, o.i, &Poly::zero())));
            let l0 = o.ml.base();
            vec![k.iter().zip(&wi).fold(l0.zero(), |acc, (a, b)| l0.add(&acc, &l0.mul(a, b)))]
        })
        .collect();
    Ok(CechClass { sheaf: Sheaf::Structure, degree: 1, values })
}

/// Outcome of the search for a global Frobenius lift.
#[derive(Clone, Debug)]
pub enum GlobalLift {
    Found {
        lifts: Vec<FrobeniusLift>,
        /// Global sections of Hom(F*Omega^1, O) in the window: the directions
        /// in which the lift can be moved.
        torsor_basis: Vec<CechClass>,
        window: u32,
    },
    Absent {
        window: u32,
        stabilized: bool,
        /// Set when some chart has no splitting at all.
        chart: Option<usize>,
    },
}

/// Corrects chart splittings by a 0-cochain t with d0 t = -kappa, so that the
/// resulting chart lifts agree on overlaps.
pub fn global_frobenius_lift(s: &GluedScheme, bound: Option<u32>, window: Option<u32>) -> Result<GlobalLift> {
    let h = match chart_splittings(s, bound) {
        Ok(h) => h,
        Err(Error::ChartObstructed { chart, bound }) => {
            return Ok(GlobalLift::Absent { window: bound, stabilized: true, chart: Some(chart) })
        }
        Err(e) => return Err(e),
    };
    let kappa = kodaira_spencer_from(s, &h)?;
    let dec = is_coboundary(s, &kappa.neg(s), window)?;
    let Some(t) = dec.witness else {
        return Ok(GlobalLift::Absent { window: dec.window, stabilized: dec.stabilized, chart: None });
    };
    let mut lifts = Vec::new();
    for (k, c) in s.charts.iter().enumerate() {
        let u = h[k].add(&c.module, &tangent(&t.values[k]));
        let u = Functional::new(&c.module, u.values)?;
        lifts.push(FrobeniusLift::from_splitting(&c.module, &u)?);
    }
    check_compatible(s, &lifts)?;
    let torsor_basis = global_sections(s, Sheaf::FrobTangent, dec.window);
    Ok(GlobalLift::Found { lifts, torsor_basis, window: dec.window })
}

/// Errors unless the chart lifts agree on every overlap.
pub fn check_compatible(s: &GluedScheme, lifts: &[FrobeniusLift]) -> Result<()> {
    for o in &s.overlaps {
        let a = lifts[o.i].localize(&o.left)?;
        let b = lifts[o.j].localize(&o.right)?.transport(&o.to_left, &o.to_right)?;
        if a != b {
            return Err(Error::Inconsistent(format!("lifts disagree on overlap ({},{})", o.i, o.j)));
        }
    }
    Ok(())
}
