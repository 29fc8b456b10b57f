//! The subcommands. Each produces a human-readable text, a JSON document
//! and an exit code.

use std::fmt::Write;

use serde_json::{json, Value};

use totdiff::cech::{self, glue_check, CechClass, Decision, GlobalLift, GluedScheme, Sheaf};
use totdiff::differentials::{find_splitting, FrobeniusLift, Functional, SplittingSearch};
use totdiff::properties;
use totdiff::Error;

use crate::job::InputError;

pub const OK: i32 = 0;
pub const FAILURE: i32 = 1;
pub const NEGATIVE: i32 = 2;

pub const COMMANDS: [&str; 7] = ["omega", "lift", "kappa", "di", "compare", "gm", "axioms"];

pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Settings {
    pub degree_bound: Option<u32>,
    pub window: Option<u32>,
}

fn lib<T>(r: totdiff::Result<T>) -> Result<T, InputError> {
    r.map_err(|e| InputError::plain(e.to_string()))
}

fn class_json(s: &GluedScheme, k: &CechClass) -> Value {
    let table = k.format(s);
    let entries: Vec<Value> = if k.degree == 0 {
        s.charts.iter().zip(table).map(|(c, v)| json!({ "chart": c.name, "coefficients": v })).collect()
    } else {
        s.overlaps.iter().zip(table).map(|(o, v)| json!({ "overlap": [o.i, o.j], "coefficients": v })).collect()
    };
    Value::Array(entries)
}

fn sheaf_name(k: &CechClass) -> &'static str {
    match k.sheaf {
        Sheaf::Structure => "O",
        Sheaf::FrobTangent => "Hom(F*Omega^1, O)",
    }
}

fn write_class(out: &mut String, s: &GluedScheme, label: &str, k: &CechClass) {
    let _ = writeln!(out, "{label} (degree {} cochain in {}):", k.degree, sheaf_name(k));
    for (idx, v) in k.format(s).iter().enumerate() {
        let at = if k.degree == 0 {
            s.charts[idx].name.clone()
        } else {
            format!("({},{})", s.overlaps[idx].i, s.overlaps[idx].j)
        };
        let _ = writeln!(out, "  {at}: [{}]", v.join(", "));
    }
}

fn write_decision(out: &mut String, s: &GluedScheme, what: &str, d: &Decision) {
    let stab = if d.stabilized { "stable at window + 2" } else { "NOT stable at window + 2" };
    let _ = writeln!(out, "{what}: {} (window {}, {stab})", d.holds, d.window);
    if let Some(w) = &d.witness {
        write_class(out, s, "witness", w);
    }
}

fn decision_json(s: &GluedScheme, d: &Decision) -> (Value, Value, Value) {
    (json!(d.holds), d.witness.as_ref().map_or(Value::Null, |w| class_json(s, w)), json!(d.window))
}

fn glued(s: &GluedScheme) -> Result<(), InputError> {
    lib(glue_check(s)).map(|_| ())
}

pub fn run(command: &str, s: Option<&GluedScheme>, omega: Option<cech::GlobalForm>, set: Settings, seed: u64, samples: usize) -> Result<Report, InputError> {
    if command == "axioms" {
        return axioms(seed, samples);
    }
    let s = s.ok_or_else(|| InputError::plain(format!("`{command}` needs a job file (--input)")))?;
    match command {
        "omega" => Ok(omega_report(s)),
        "lift" => lift(s, set),
        "kappa" => kappa(s, set),
        "di" => di(s, set),
        "compare" => compare(s, set),
        "gm" => gm(s, omega, set),
        other => Err(InputError::plain(format!("unknown command `{other}`; expected one of {}", COMMANDS.join(", ")))),
    }
}

fn omega_report(s: &GluedScheme) -> Report {
    let mut text = String::new();
    let mut charts = vec![];
    for c in &s.charts {
        let m = &c.module;
        let rels: Vec<String> = m.relations().iter().map(|r| m.format(r)).collect();
        let status = if m.is_free() {
            format!("free, rank {}", m.rank())
        } else {
            format!("{} generators, {} relations", m.rank(), rels.len())
        };
        let _ = writeln!(text, "chart {}: {}", c.name, presentation(s, c));
        let _ = writeln!(text, "  generators: {}", m.gen_names().join(", "));
        for r in &rels {
            let _ = writeln!(text, "  relation: {r} = 0");
        }
        let _ = writeln!(text, "  {status}");
        charts.push(json!({
            "chart": c.name,
            "generators": m.gen_names(),
            "relations": rels,
            "free": m.is_free(),
            "rank": m.rank(),
            "status": status,
        }));
    }
    Report { text, json: json!({ "command": "omega", "charts": charts }), code: OK }
}

fn presentation(s: &GluedScheme, c: &cech::Chart) -> String {
    let k = s.base().residue_field();
    let rels: Vec<String> = c.algebra.gens().iter().map(|g| c.algebra.format(g)).collect();
    let ring = format!("W2(F_{})[{}]", k.q(), c.algebra.names().join(", "));
    if rels.is_empty() {
        ring
    } else {
        format!("{ring}/({})", rels.join(", "))
    }
}

fn lift_json(s: &GluedScheme, lifts: &[FrobeniusLift]) -> Value {
    s.charts
        .iter()
        .zip(lifts)
        .map(|(c, l)| {
            let images: serde_json::Map<String, Value> =
                c.algebra.names().iter().cloned().zip(l.format().into_iter().map(Value::String)).collect();
            let splitting = l.to_splitting(&c.module).map(|h| h.format(&c.module)).unwrap_or_default();
            json!({ "chart": c.name, "images": images, "splitting": splitting })
        })
        .collect()
}

fn lift(s: &GluedScheme, set: Settings) -> Result<Report, InputError> {
    let mut text = String::new();
    // a chart without a splitting answers the question before any gluing checks
    for (k, c) in s.charts.iter().enumerate() {
        if let SplittingSearch::Absent { bound } = lib(find_splitting(&c.module, set.degree_bound))? {
            let _ = writeln!(text, "Absent: chart {} has no splitting within degree bound {bound}", c.name);
            let json = json!({ "command": "lift", "status": "absent", "chart": k, "window": bound, "stabilized": true });
            return Ok(Report { text, json, code: NEGATIVE });
        }
    }
    glued(s)?;
    match lib(cech::global_frobenius_lift(s, set.degree_bound, set.window))? {
        GlobalLift::Found { lifts, torsor_basis, window } => {
            let _ = writeln!(text, "Frobenius lift found (window {window})");
            for (c, l) in s.charts.iter().zip(&lifts) {
                for (v, img) in c.algebra.names().iter().zip(l.format()) {
                    let _ = writeln!(text, "  {}: {v} -> {img}", c.name);
                }
            }
            let _ = writeln!(text, "torsor directions in the window: {}", torsor_basis.len());
            let json = json!({
                "command": "lift",
                "status": "found",
                "lifts": lift_json(s, &lifts),
                "torsor_dimension": torsor_basis.len(),
                "window": window,
                "stabilized": true,
            });
            Ok(Report { text, json, code: OK })
        }
        GlobalLift::Absent { window, stabilized, chart } => {
            match chart {
                Some(k) => {
                    let _ = writeln!(text, "Absent: chart {} has no splitting within degree bound {window}", s.charts[k].name);
                }
                None => {
                    let _ = writeln!(text, "Absent: the Kodaira-Spencer class is not a coboundary (window {window})");
                }
            }
            let json = json!({
                "command": "lift",
                "status": "absent",
                "chart": chart,
                "window": window,
                "stabilized": stabilized,
            });
            Ok(Report { text, json, code: NEGATIVE })
        }
    }
}

/// Chart splittings, or an Absent report naming the obstructed chart.
fn splittings(s: &GluedScheme, set: Settings, command: &str) -> Result<Result<Vec<Functional>, Report>, InputError> {
    match cech::chart_splittings(s, set.degree_bound) {
        Ok(h) => Ok(Ok(h)),
        Err(Error::ChartObstructed { chart, bound }) => {
            let text = format!("Absent: chart {} has no splitting within degree bound {bound}\n", s.charts[chart].name);
            let json = json!({ "command": command, "status": "absent", "chart": chart, "window": bound, "stabilized": true });
            Ok(Err(Report { text, json, code: NEGATIVE }))
        }
        Err(e) => Err(InputError::plain(e.to_string())),
    }
}

fn class_report(s: &GluedScheme, command: &str, label: &str, k: &CechClass, set: Settings) -> Result<Report, InputError> {
    let d = lib(cech::is_coboundary(s, k, set.window))?;
    let mut text = String::new();
    write_class(&mut text, s, label, k);
    write_decision(&mut text, s, "coboundary", &d);
    let (holds, witness, window) = decision_json(s, &d);
    let json = json!({
        "command": command,
        "class_coefficients": class_json(s, k),
        "coboundary": holds,
        "witness": witness,
        "window": window,
        "stabilized": d.stabilized,
    });
    Ok(Report { text, json, code: if d.holds { OK } else { NEGATIVE } })
}

fn kappa(s: &GluedScheme, set: Settings) -> Result<Report, InputError> {
    glued(s)?;
    let h = match splittings(s, set, "kappa")? {
        Ok(h) => h,
        Err(r) => return Ok(r),
    };
    let k = lib(cech::kodaira_spencer_from(s, &h))?;
    class_report(s, "kappa", "kappa", &k, set)
}

fn chart_lifts(s: &GluedScheme, h: &[Functional]) -> Result<Vec<FrobeniusLift>, InputError> {
    s.charts.iter().zip(h).map(|(c, h)| lib(FrobeniusLift::from_splitting(&c.module, h))).collect()
}

fn di(s: &GluedScheme, set: Settings) -> Result<Report, InputError> {
    glued(s)?;
    let h = match splittings(s, set, "di")? {
        Ok(h) => h,
        Err(r) => return Ok(r),
    };
    let k = lib(cech::deligne_illusie(s, &chart_lifts(s, &h)?))?;
    class_report(s, "di", "Deligne-Illusie class h", &k, set)
}

fn compare(s: &GluedScheme, set: Settings) -> Result<Report, InputError> {
    glued(s)?;
    let h = match splittings(s, set, "compare")? {
        Ok(h) => h,
        Err(r) => return Ok(r),
    };
    let kappa = lib(cech::kodaira_spencer_from(s, &h))?;
    let di = lib(cech::deligne_illusie(s, &chart_lifts(s, &h)?))?;
    let d = lib(cech::classes_equal_up_to_sign(s, &kappa, &di, -1, set.window))?;
    let mut text = String::new();
    write_class(&mut text, s, "kappa", &kappa);
    write_class(&mut text, s, "h", &di);
    write_decision(&mut text, s, "kappa = -h", &d);
    let plus = if lib(cech::is_coboundary(s, &kappa, set.window))?.holds {
        Value::Null
    } else {
        let plus = lib(cech::classes_equal_up_to_sign(s, &kappa, &di, 1, set.window))?;
        let _ = writeln!(text, "kappa = +h: {}", plus.holds);
        json!(plus.holds)
    };
    let (holds, witness, window) = decision_json(s, &d);
    let json = json!({
        "command": "compare",
        "verdict": holds,
        "plus_sign_verdict": plus,
        "class_coefficients": { "kappa": class_json(s, &kappa), "h": class_json(s, &di) },
        "witness": witness,
        "window": window,
        "stabilized": d.stabilized,
    });
    Ok(Report { text, json, code: if d.holds { OK } else { NEGATIVE } })
}

fn gm(s: &GluedScheme, omega: Option<cech::GlobalForm>, set: Settings) -> Result<Report, InputError> {
    glued(s)?;
    let omega = omega.ok_or_else(|| InputError::plain("`gm` needs options.omega, the coefficients of a global section of F*Omega^1 on each chart"))?;
    let h = match splittings(s, set, "gm")? {
        Ok(h) => h,
        Err(r) => return Ok(r),
    };
    let kappa = lib(cech::kodaira_spencer_from(s, &h))?;
    let slot0 = cech::sigma_lift_slot0(s, &omega, &h);
    let g = lib(cech::gauss_manin(s, &omega, &slot0, &h, set.window))?;
    let cup = lib(cech::cup_with(s, &kappa, &omega))?;
    let exact = g == cup;
    let d = lib(cech::classes_equal_up_to_sign(s, &g, &cup, 1, set.window))?;
    let zero = lib(cech::is_coboundary(s, &g, set.window))?;
    let mut text = String::new();
    write_class(&mut text, s, "Gauss-Manin image", &g);
    write_class(&mut text, s, "cup with kappa", &cup);
    let _ = writeln!(text, "equal as cocycles: {exact}");
    write_decision(&mut text, s, "equal in cohomology", &d);
    let _ = writeln!(text, "class is zero: {}", zero.holds);
    let (holds, witness, window) = decision_json(s, &d);
    let json = json!({
        "command": "gm",
        "verdict": holds,
        "exact_agreement": exact,
        "class_is_zero": zero.holds,
        "class_coefficients": class_json(s, &g),
        "cup_coefficients": class_json(s, &cup),
        "witness": witness,
        "window": window,
        "stabilized": d.stabilized,
    });
    Ok(Report { text, json, code: if d.holds { OK } else { NEGATIVE } })
}

fn axioms(seed: u64, samples: usize) -> Result<Report, InputError> {
    let reports = lib(properties::run_all(seed, samples))?;
    let mut text = String::new();
    let mut suites = vec![];
    for r in &reports {
        let status = if r.passed() { "ok" } else { "FAILED" };
        let _ = writeln!(text, "{:<42} {:>6} cases  {status}", r.name, r.cases);
        for f in &r.failures {
            let _ = writeln!(text, "    {f}");
        }
        suites.push(json!({ "suite": r.name, "cases": r.cases, "failures": r.failures }));
    }
    let passed = reports.iter().all(|r| r.passed());
    let json = json!({ "command": "axioms", "seed": seed, "passed": passed, "suites": suites });
    Ok(Report { text, json, code: if passed { OK } else { FAILURE } })
}
