//! Job files: TOML documents describing a glued scheme and the command to run.

use std::fmt;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use totdiff::algebra::{FpAlgebra, Poly};
use totdiff::cech::{Chart, GlobalForm, GluedScheme, Overlap};
use totdiff::coefficients::{Fq, FqElem, W2Elem, W2};
use totdiff::Error;

type Text = Spanned<String>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub m: usize,
    /// Coefficients of the defining polynomial of F_q, constant term first.
    pub modulus: Option<Vec<u32>>,
    pub command: Option<String>,
    #[serde(default)]
    pub charts: Vec<ChartSpec>,
    #[serde(default)]
    pub overlaps: Vec<OverlapSpec>,
    pub triple: Option<TripleSpec>,
    #[serde(default)]
    pub options: Options,
}

fn one() -> usize {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub name: Option<String>,
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<Text>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverlapSpec {
    pub charts: [usize; 2],
    /// The element inverted in each of the two charts.
    pub localize: [Text; 2],
    /// Images of the variables of the second overlap ring in the first.
    pub to_left: Vec<Text>,
    /// Images of the variables of the first overlap ring in the second.
    pub to_right: Vec<Text>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleSpec {
    pub localize: Vec<Text>,
    pub to_first: Vec<Vec<Text>>,
    pub from_first: Vec<Vec<Text>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub degree_bound: Option<u32>,
    pub window: Option<u32>,
    /// A global section of F*Omega^1: per chart, the coefficients of F*dx_k.
    pub omega: Option<Vec<Vec<Text>>>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

/// An input error, positioned in the job file when possible.
#[derive(Debug)]
pub struct InputError {
    pub at: Option<(usize, usize)>,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.at {
            Some((line, col)) => write!(f, "line {line}, column {col}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for InputError {}

impl InputError {
    pub fn plain(message: impl Into<String>) -> Self {
        InputError { at: None, message: message.into() }
    }
}

/// 1-based line and column of a byte offset.
fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, col)
}

pub fn parse(src: &str) -> Result<JobSpec, InputError> {
    toml::from_str(src).map_err(|e| InputError {
        at: e.span().map(|s| position(src, s.start)),
        message: e.message().to_string(),
    })
}

/// Resolves library errors against the source text they came from.
struct Locator<'a> {
    src: &'a str,
}

impl Locator<'_> {
    fn at(&self, t: &Text, err: Error) -> InputError {
        let span: Range<usize> = t.span();
        // skip the opening quote
        let body = span.start + 1;
        let offset = match &err {
            Error::Parse { column, .. } if *column > 0 => body + column - 1,
            Error::UnknownVariable(name) => body + find_word(t.get_ref(), name).unwrap_or(0),
            _ => span.start,
        };
        let message = match err {
            Error::Parse { message, .. } => format!("parse error: {message}"),
            other => other.to_string(),
        };
        InputError { at: Some(position(self.src, offset)), message }
    }

    fn ambient(&self, a: &FpAlgebra, t: &Text) -> Result<Poly<W2Elem>, InputError> {
        a.parse_ambient(t.get_ref()).map_err(|e| self.at(t, e))
    }
}

fn find_word(s: &str, word: &str) -> Option<usize> {
    let is_ident = |c: char| c.is_ascii_alphanumeric() || c == '_';
    s.match_indices(word).map(|(i, _)| i).find(|&i| {
        let before = s[..i].chars().next_back().map_or(true, |c| !is_ident(c));
        let after = s[i + word.len()..].chars().next().map_or(true, |c| !is_ident(c));
        before && after
    })
}

fn semantic(e: Error) -> InputError {
    InputError::plain(e.to_string())
}

pub fn coefficient_ring(job: &JobSpec) -> Result<W2, InputError> {
    let k = match &job.modulus {
        Some(m) => Fq::with_modulus(job.p, m.clone()),
        None => Fq::new(job.p, job.m),
    }
    .map_err(semantic)?;
    if job.modulus.is_some() && k.m() != job.m {
        return Err(InputError::plain(format!("modulus has degree {} but m = {}", k.m(), job.m)));
    }
    W2::new(k).map_err(semantic)
}

/// Builds and checks the scheme described by the job.
pub fn build(job: &JobSpec, src: &str) -> Result<GluedScheme, InputError> {
    let loc = Locator { src };
    let w2 = coefficient_ring(job)?;
    if job.charts.is_empty() {
        return Err(InputError::plain("the job declares no charts"));
    }
    let mut charts = Vec::new();
    for (k, c) in job.charts.iter().enumerate() {
        let names: Vec<&str> = c.vars.iter().map(|s| s.as_str()).collect();
        let free = FpAlgebra::polynomial(&w2, &names).map_err(semantic)?;
        let rels = c.relations.iter().map(|r| loc.ambient(&free, r)).collect::<Result<Vec<_>, _>>()?;
        let alg = FpAlgebra::new(&w2, c.vars.clone(), rels).map_err(|e| match c.relations.first() {
            Some(r) => loc.at(r, e),
            None => semantic(e),
        })?;
        let name = c.name.clone().unwrap_or_else(|| format!("chart{k}"));
        charts.push(Chart::new(&name, alg).map_err(semantic)?);
    }
    let mut overlaps = Vec::new();
    for o in &job.overlaps {
        let [i, j] = o.charts;
        if i >= j || j >= charts.len() {
            return Err(InputError::plain(format!("overlap {:?} must list chart indices i < j < {}", o.charts, charts.len())));
        }
        let sl = loc.ambient(&charts[i].algebra, &o.localize[0])?;
        let sr = loc.ambient(&charts[j].algebra, &o.localize[1])?;
        let left = charts[i].algebra.localize(&sl).map_err(|e| loc.at(&o.localize[0], e))?;
        let right = charts[j].algebra.localize(&sr).map_err(|e| loc.at(&o.localize[1], e))?;
        let tl = o.to_left.iter().map(|t| loc.ambient(&left.algebra, t)).collect::<Result<Vec<_>, _>>()?;
        let tr = o.to_right.iter().map(|t| loc.ambient(&right.algebra, t)).collect::<Result<Vec<_>, _>>()?;
        overlaps.push(Overlap::new(&charts, (i, j), &sl, &sr, &tl, &tr).map_err(semantic)?);
    }
    let mut s = GluedScheme::new(&w2, charts, overlaps).map_err(semantic)?;
    if let Some(t) = &job.triple {
        if s.charts.len() != 3 || t.localize.len() != 3 || t.to_first.len() != 2 || t.from_first.len() != 2 {
            return Err(InputError::plain("triple data needs three charts, three localizing elements and two maps each way"));
        }
        let mut rings = Vec::new();
        for (k, e) in t.localize.iter().enumerate() {
            let a = &s.charts[k].algebra;
            let x = loc.ambient(a, e)?;
            rings.push(a.localize(&x).map_err(|err| loc.at(e, err))?.algebra);
        }
        for k in 1..3 {
            for e in &t.to_first[k - 1] {
                loc.ambient(&rings[0], e)?;
            }
            for e in &t.from_first[k - 1] {
                loc.ambient(&rings[k], e)?;
            }
        }
        let to_first: Vec<Vec<&str>> = t.to_first.iter().map(|v| strs(v)).collect();
        let from_first: Vec<Vec<&str>> = t.from_first.iter().map(|v| strs(v)).collect();
        s = s.with_triple(&strs(&t.localize), &to_first, &from_first).map_err(semantic)?;
    }
    Ok(s)
}

fn strs(v: &[Text]) -> Vec<&str> {
    v.iter().map(|x| x.get_ref().as_str()).collect()
}

/// The global form given in the options, if any.
pub fn global_form(job: &JobSpec, src: &str, s: &GluedScheme) -> Result<Option<GlobalForm>, InputError> {
    let Some(rows) = &job.options.omega else {
        return Ok(None);
    };
    let loc = Locator { src };
    if rows.len() != s.charts.len() {
        return Err(InputError::plain(format!("omega lists {} charts, the scheme has {}", rows.len(), s.charts.len())));
    }
    let mut per_chart = Vec::new();
    for (c, row) in s.charts.iter().zip(rows) {
        if row.len() != c.algebra.nvars() {
            return Err(InputError::plain(format!("omega on chart {} needs {} coefficients", c.name, c.algebra.nvars())));
        }
        let a0 = c.module.base();
        let v: Vec<Poly<FqElem>> = row.iter().map(|t| a0.parse(t.get_ref()).map_err(|e| loc.at(t, e))).collect::<Result<_, _>>()?;
        per_chart.push(v);
    }
    Ok(Some(GlobalForm { per_chart }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let src = "a\nbc\n";
        assert_eq!(position(src, 0), (1, 1));
        assert_eq!(position(src, 3), (2, 2));
    }

    #[test]
    fn words_match_whole_identifiers() {
        assert_eq!(find_word("x_inv + x", "x"), Some(8));
        assert_eq!(find_word("y", "x"), None);
    }
}
