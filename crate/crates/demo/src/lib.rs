//! WebAssembly entry points for the static page in `www/`. Every function
//! returns a JSON document; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use totdiff::algebra::{FpAlgebra, ReducedAlgebra};
use totdiff::coefficients::{Fq, W2};
use totdiff::differentials::{find_splitting, omega_tot, FrobeniusLift, SplittingSearch};
use totdiff::witt_interp::UcRing;
use totdiff::CommRing;

fn finish(r: Result<Value, totdiff::Error>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn split_list(s: &str) -> Vec<&str> {
    s.split([',', ';', '\n']).map(str::trim).filter(|x| !x.is_empty()).collect()
}

fn algebra(p: u32, vars: &str, relations: &str) -> Result<FpAlgebra, totdiff::Error> {
    let w2 = W2::prime(p)?;
    FpAlgebra::parse(&w2, &split_list(vars), &split_list(relations))
}

/// Addition and multiplication tables of U_c(F_p), elements listed as
/// pairs (x0, x1) in lexicographic order.
#[wasm_bindgen]
pub fn uc_tables(p: u32, c: u32) -> String {
    finish((|| {
        if p > 7 {
            return Err(totdiff::Error::UnsupportedField(format!("tables are limited to p <= 7, got {p}")));
        }
        let fp = ReducedAlgebra::polynomial(Fq::prime(p)?, &[])?;
        let uc = UcRing::with_scalar(&fp, fp.field().from_int(c as i64))?;
        let consts: Vec<_> = (0..p as i64).map(|a| fp.constant(fp.field().from_int(a))).collect();
        let elems: Vec<_> = consts.iter().flat_map(|a| consts.iter().map(move |b| (a.clone(), b.clone()))).collect();
        let index = |e: &totdiff::witt_interp::UcElem| elems.iter().position(|(a, b)| *a == e.x0 && *b == e.x1).unwrap();
        let table = |op: &dyn Fn(&_, &_) -> totdiff::witt_interp::UcElem| -> Vec<Vec<usize>> {
            elems
                .iter()
                .map(|(a0, a1)| {
                    let x = uc.elem(a0.clone(), a1.clone());
                    elems.iter().map(|(b0, b1)| index(&op(&x, &uc.elem(b0.clone(), b1.clone())))).collect()
                })
                .collect()
        };
        let labels: Vec<String> = elems.iter().map(|(a, b)| format!("({},{})", fp.format(a), fp.format(b))).collect();
        Ok(json!({
            "p": p,
            "c": c % p,
            "elements": labels,
            "add": table(&|x, y| uc.add(x, y)),
            "mul": table(&|x, y| uc.mul(x, y)),
        }))
    })())
}

/// The presentation of the module of total p-differentials of
/// W2(F_p)[vars]/(relations).
#[wasm_bindgen]
pub fn omega_presentation(p: u32, vars: &str, relations: &str) -> String {
    finish((|| {
        let a = algebra(p, vars, relations)?;
        let m = omega_tot(&a)?;
        let rels: Vec<String> = m.relations().iter().map(|r| m.format(r)).collect();
        let status = if m.is_free() {
            format!("free, rank {}", m.rank())
        } else {
            format!("{} generators, {} relations", m.rank(), rels.len())
        };
        Ok(json!({ "generators": m.gen_names(), "relations": rels, "free": m.is_free(), "status": status }))
    })())
}

/// Searches for a splitting of d^tot p and the Frobenius lift it defines.
/// A `degree_bound` of 0 uses the default bound.
#[wasm_bindgen]
pub fn frobenius_lift(p: u32, vars: &str, relations: &str, degree_bound: u32) -> String {
    finish((|| {
        let a = algebra(p, vars, relations)?;
        let m = omega_tot(&a)?;
        let bound = (degree_bound > 0).then_some(degree_bound);
        match find_splitting(&m, bound)? {
            SplittingSearch::Found(h) => {
                let phi = FrobeniusLift::from_splitting(&m, &h)?;
                let images: Vec<Value> = a
                    .names()
                    .iter()
                    .zip(phi.format())
                    .map(|(v, img)| json!({ "var": v, "image": img }))
                    .collect();
                Ok(json!({ "status": "found", "images": images, "splitting": h.format(&m), "generators": m.gen_names() }))
            }
            SplittingSearch::Absent { bound } => Ok(json!({ "status": "absent", "bound": bound })),
        }
    })())
}
