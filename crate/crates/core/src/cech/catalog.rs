//! Example schemes: the projective line with two or three charts, affine
//! space, the multiplicative group, and the curve y^2 = x^3 - x.

use super::{Chart, GlobalForm, GluedScheme, Overlap};
use crate::algebra::FpAlgebra;
use crate::coefficients::W2;
use crate::differentials::solve_linear;
use crate::error::{Error, Result};
use crate::ring::CommRing;

/// P^1 with charts x and y = 1/x.
pub fn projective_line(w2: &W2) -> Result<GluedScheme> {
    let charts = vec![
        Chart::new("x", FpAlgebra::polynomial(w2, &["x"])?)?,
        Chart::new("y", FpAlgebra::polynomial(w2, &["y"])?)?,
    ];
    let o = Overlap::parse(&charts, (0, 1), "x", "y", &["x_inv", "x"], &["y_inv", "y"])?;
    GluedScheme::new(w2, charts, vec![o])
}

/// P^1 with charts x, y = 1/x and z = 1/(x - 1), with triple-overlap data.
pub fn projective_line_three(w2: &W2) -> Result<GluedScheme> {
    let charts = vec![
        Chart::new("x", FpAlgebra::polynomial(w2, &["x"])?)?,
        Chart::new("y", FpAlgebra::polynomial(w2, &["y"])?)?,
        Chart::new("z", FpAlgebra::polynomial(w2, &["z"])?)?,
    ];
    let o01 = Overlap::parse(&charts, (0, 1), "x", "y", &["x_inv", "x"], &["y_inv", "y"])?;
    let o02 = Overlap::parse(&charts, (0, 2), "x - 1", "z", &["s_inv", "x - 1"], &["1 + z_inv", "z"])?;
    let o12 = Overlap::parse(&charts, (1, 2), "y - 1", "z + 1", &["-y*s_inv", "1 - y"], &["z*s_inv", "-z - 1"])?;
    GluedScheme::new(w2, charts, vec![o01, o02, o12])?.with_triple(
        &["x^2 - x", "y^2 - y", "z^2 + z"],
        &[vec!["(x - 1)*s_inv", "-x^3*s_inv"], vec!["x*s_inv", "(x - 1)^3*s_inv"]],
        &[vec!["(y - 1)*s_inv", "-y^3*s_inv"], vec!["(z + 1)^2*s_inv", "z^3*s_inv"]],
    )
}

/// Affine n-space, one chart.
pub fn affine_space(w2: &W2, n: usize) -> Result<GluedScheme> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let charts = vec![Chart::new("affine", FpAlgebra::polynomial(w2, &refs)?)?];
    GluedScheme::new(w2, charts, vec![])
}

/// G_m = Spec W2[x, 1/x], one chart.
pub fn multiplicative_group(w2: &W2) -> Result<GluedScheme> {
    let charts = vec![Chart::new("gm", FpAlgebra::parse(w2, &["x", "x_inv"], &["x*x_inv - 1"])?)?];
    GluedScheme::new(w2, charts, vec![])
}

/// The projective curve y^2 = x^3 - x: the affine chart and the chart
/// v^2 = u - u^3 at infinity, u = 1/x, v = y/x^2.
pub fn genus_one(w2: &W2) -> Result<GluedScheme> {
    let charts = vec![
        Chart::new("affine", FpAlgebra::parse(w2, &["x", "y"], &["y^2 - x^3 + x"])?)?,
        Chart::new("infinity", FpAlgebra::parse(w2, &["u", "v"], &["v^2 - u + u^3"])?)?,
    ];
    let o = Overlap::parse(&charts, (0, 1), "x", "u", &["x_inv", "y*x_inv^2", "x"], &["u_inv", "v*u_inv^2", "u"])?;
    GluedScheme::new(w2, charts, vec![o])
}

/// F* of the invariant differential dx/(2y) = -du/(2v) on `genus_one`,
/// written in each chart as a polynomial combination a dx + b dy.
pub fn invariant_differential(s: &GluedScheme) -> Result<GlobalForm> {
    let p = s.p() as u64;
    let mut per_chart = Vec::new();
    for (k, (c, target)) in s.charts.iter().zip(["1", "-1"]).enumerate() {
        let a0 = c.module.base();
        let g = &c.module.algebra().gens()[0];
        let r0 = a0.ring();
        let g0 = crate::algebra::reduce_coeffs(r0, g);
        // a dx + b dy with a g_y - b g_x = target, where d g = g_x dx + g_y dy
        let gx = a0.nf(&r0.derivative(&g0, 0));
        let gy = a0.nf(&r0.derivative(&g0, 1));
        let rows = vec![vec![gy, a0.neg(&gx)]];
        let rhs = vec![a0.parse(target)?];
        let sol = solve_linear(a0, &rows, &rhs, 2, 4 * s.p())
            .ok_or_else(|| Error::NotGlobalSection(format!("no polynomial expression on chart {k}")))?;
        per_chart.push(sol.iter().map(|x| a0.pow(x, p)).collect());
    }
    Ok(GlobalForm { per_chart })
}
