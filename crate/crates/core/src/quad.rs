//! Numerical integration against the metric area element.
//!
//! One-dimensional composite Gauss–Legendre rules back the curve
//! integrals; on surfaces, [`integrate`] sums `f * sqrt(EG - F^2)` with a
//! tensor Gauss–Legendre rule over rectangles or the symmetric 7-point
//! rule over triangle fans.

use crate::intrinsic::MetricField;
use crate::surfaces::FirstFundamentalForm;
use crate::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> GaussLegendre {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi's initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = nf * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Composite rule over `panels` equal subintervals of `[a, b]`.
    pub fn integrate<F>(&self, a: f64, b: f64, panels: usize, mut f: F) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let panels = panels.max(1);
        let h = (b - a) / panels as f64;
        let mut total = 0.0;
        for k in 0..panels {
            let lo = a + h * k as f64;
            let mid = lo + 0.5 * h;
            let mut s = 0.0;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                s += w * f(mid + 0.5 * h * x)?;
            }
            total += 0.5 * h * s;
        }
        Ok(total)
    }
}

/// Default one-dimensional rule: 8-point Gauss–Legendre on 8 panels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompositeRule {
    pub points: usize,
    pub panels: usize,
}

impl Default for CompositeRule {
    fn default() -> Self {
        CompositeRule { points: 8, panels: 8 }
    }
}

impl CompositeRule {
    pub fn integrate<F>(&self, a: f64, b: f64, f: F) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        GaussLegendre::new(self.points).integrate(a, b, self.panels, f)
    }
}

/// Integration domain in parameter space.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Rect { u: (f64, f64), v: (f64, f64) },
    TriFan(Vec<[[f64; 2]; 3]>),
}

fn signed_area(t: &[[f64; 2]; 3]) -> f64 {
    let [a, b, c] = t;
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
}

impl Region {
    pub fn rect(u: (f64, f64), v: (f64, f64)) -> Result<Region> {
        if !(u.0 < u.1 && v.0 < v.1) {
            return Err(Error::InvalidInput(format!("empty rectangle {u:?} x {v:?}")));
        }
        Ok(Region::Rect { u, v })
    }

    /// Triangles are used with their orientation: a clockwise triangle
    /// contributes with negative sign.
    pub fn tri_fan(triangles: Vec<[[f64; 2]; 3]>) -> Result<Region> {
        if triangles.is_empty() {
            return Err(Error::InvalidInput("triangle fan is empty".into()));
        }
        if triangles.iter().any(|t| signed_area(t) == 0.0) {
            return Err(Error::InvalidInput("degenerate triangle in fan".into()));
        }
        Ok(Region::TriFan(triangles))
    }

    /// Fan from the vertex centroid of a closed polygon. Zero-area pieces
    /// are dropped.
    pub fn polygon_fan(polygon: &[[f64; 2]]) -> Result<Region> {
        if polygon.len() < 3 {
            return Err(Error::InvalidInput("polygon needs at least three vertices".into()));
        }
        let n = polygon.len() as f64;
        let c = polygon.iter().fold([0.0, 0.0], |acc, p| [acc[0] + p[0] / n, acc[1] + p[1] / n]);
        let tris: Vec<_> = (0..polygon.len())
            .map(|i| [c, polygon[i], polygon[(i + 1) % polygon.len()]])
            .filter(|t| signed_area(t) != 0.0)
            .collect();
        Region::tri_fan(tris)
    }

    /// Splits a rectangle at `u = at`.
    pub fn split_u(&self, at: f64) -> Option<(Region, Region)> {
        match *self {
            Region::Rect { u, v } if u.0 < at && at < u.1 => {
                Some((Region::Rect { u: (u.0, at), v }, Region::Rect { u: (at, u.1), v }))
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// `|I(order) - I(order / 2)|`.
    pub error_estimate: f64,
}

/// A metric sample handed to the integrand.
#[derive(Debug, Clone, Copy)]
pub struct MetricSample {
    pub u: f64,
    pub v: f64,
    pub metric: FirstFundamentalForm,
}

// Symmetric 7-point rule on the reference triangle (degree 5).
fn seven_point_rule() -> [([f64; 3], f64); 7] {
    let s15 = 15f64.sqrt();
    let a = (6.0 - s15) / 21.0;
    let b = (6.0 + s15) / 21.0;
    let wa = (155.0 - s15) / 1200.0;
    let wb = (155.0 + s15) / 1200.0;
    [
        ([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], 9.0 / 40.0),
        ([a, a, 1.0 - 2.0 * a], wa),
        ([a, 1.0 - 2.0 * a, a], wa),
        ([1.0 - 2.0 * a, a, a], wa),
        ([b, b, 1.0 - 2.0 * b], wb),
        ([b, 1.0 - 2.0 * b, b], wb),
        ([1.0 - 2.0 * b, b, b], wb),
    ]
}

fn area_weighted<F>(metric: &MetricField, field: &F, u: f64, v: f64) -> Result<f64>
where
    F: Fn(&MetricSample) -> Result<f64>,
{
    let m = metric.at(u, v)?;
    let det = m.det();
    if det <= crate::EPS_REG {
        return Err(Error::DegenerateMetric { u, v, det });
    }
    Ok(field(&MetricSample { u, v, metric: m })? * det.sqrt())
}

fn rect_rule<F>(metric: &MetricField, field: &F, u: (f64, f64), v: (f64, f64), n: usize) -> Result<f64>
where
    F: Fn(&MetricSample) -> Result<f64>,
{
    let rule = GaussLegendre::new(n);
    let (hu, hv) = (0.5 * (u.1 - u.0), 0.5 * (v.1 - v.0));
    let (mu, mv) = (0.5 * (u.0 + u.1), 0.5 * (v.0 + v.1));
    let mut total = 0.0;
    for (xu, wu) in rule.nodes.iter().zip(&rule.weights) {
        let mut row = 0.0;
        for (xv, wv) in rule.nodes.iter().zip(&rule.weights) {
            row += wv * area_weighted(metric, field, mu + hu * xu, mv + hv * xv)?;
        }
        total += wu * row;
    }
    Ok(total * hu * hv)
}

fn fan_rule<F>(metric: &MetricField, field: &F, tris: &[[[f64; 2]; 3]], level: usize) -> Result<f64>
where
    F: Fn(&MetricSample) -> Result<f64>,
{
    let rule = seven_point_rule();
    let mut total = 0.0;
    for t in tris {
        let k = level.max(1);
        let kf = k as f64;
        // barycentric to parameter space
        let at = |l: [f64; 3]| {
            [
                l[0] * t[0][0] + l[1] * t[1][0] + l[2] * t[2][0],
                l[0] * t[0][1] + l[1] * t[1][1] + l[2] * t[2][1],
            ]
        };
        let sub_area = signed_area(t) / (kf * kf);
        let mut emit = |corners: [[f64; 3]; 3]| -> Result<()> {
            let mut s = 0.0;
            for (bary, w) in &rule {
                let l = [0, 1, 2].map(|j| {
                    bary[0] * corners[0][j] + bary[1] * corners[1][j] + bary[2] * corners[2][j]
                });
                let x = at(l);
                s += w * area_weighted(metric, field, x[0], x[1])?;
            }
            total += s * sub_area;
            Ok(())
        };
        // Uniform subdivision into k^2 triangles of equal area.
        for i in 0..k {
            for j in 0..(k - i) {
                let b = |i: usize, j: usize| {
                    let (a1, a2) = (i as f64 / kf, j as f64 / kf);
                    [1.0 - a1 - a2, a1, a2]
                };
                emit([b(i, j), b(i + 1, j), b(i, j + 1)])?;
                if i + j + 1 < k {
                    emit([b(i + 1, j), b(i + 1, j + 1), b(i, j + 1)])?;
                }
            }
        }
    }
    Ok(total)
}

fn centroid_rule<F>(metric: &MetricField, field: &F, tris: &[[[f64; 2]; 3]]) -> Result<f64>
where
    F: Fn(&MetricSample) -> Result<f64>,
{
    let mut total = 0.0;
    for t in tris {
        let cu = (t[0][0] + t[1][0] + t[2][0]) / 3.0;
        let cv = (t[0][1] + t[1][1] + t[2][1]) / 3.0;
        total += signed_area(t) * area_weighted(metric, field, cu, cv)?;
    }
    Ok(total)
}

/// Integrates `field * sqrt(EG - F^2)` over `region`.
///
/// For rectangles `order` is the number of Gauss–Legendre nodes per axis;
/// for triangle fans it is the subdivision level of every triangle.
pub fn integrate<F>(metric: &MetricField, field: F, region: &Region, order: usize) -> Result<Integral>
where
    F: Fn(&MetricSample) -> Result<f64>,
{
    let order = order.max(1);
    match region {
        Region::Rect { u, v } => {
            let value = rect_rule(metric, &field, *u, *v, order)?;
            let coarse = rect_rule(metric, &field, *u, *v, (order / 2).max(1))?;
            Ok(Integral { value, error_estimate: (value - coarse).abs() })
        }
        Region::TriFan(tris) => {
            let value = fan_rule(metric, &field, tris, order)?;
            let coarse = if order >= 2 {
                fan_rule(metric, &field, tris, order / 2)?
            } else {
                centroid_rule(metric, &field, tris)?
            };
            Ok(Integral { value, error_estimate: (value - coarse).abs() })
        }
    }
}

/// Total curvature `∫∫ κ dσ` with κ from the formula egregia.
pub fn total_curvature(metric: &MetricField, region: &Region, order: usize) -> Result<Integral> {
    integrate(metric, |s| crate::intrinsic::egregia_from_jets(&s.metric, s.u, s.v), region, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn flat() -> MetricField {
        MetricField::parse("1,0,1", &Default::default()).unwrap()
    }

    #[test]
    fn legendre_rule_is_exact_to_degree_2n_minus_1() {
        for n in 1..=12 {
            let rule = GaussLegendre::new(n);
            assert!((rule.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            for deg in 0..(2 * n) {
                let exact = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
                let got: f64 = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(x, w)| w * x.powi(deg as i32))
                    .sum();
                assert!((got - exact).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn composite_rule_integrates_sine() {
        let v = CompositeRule::default().integrate(0.0, PI, |x| Ok(x.sin())).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn flat_rectangle_area() {
        let r = Region::rect((0.0, 2.0), (0.0, 3.0)).unwrap();
        let i = integrate(&flat(), |_| Ok(1.0), &r, 4).unwrap();
        assert!((i.value - 6.0).abs() < 1e-13);
        assert!(i.error_estimate < 1e-13);
    }

    #[test]
    fn rectangle_additivity() {
        let m = MetricField::parse("1,0,sin(u)^2", &Default::default()).unwrap();
        let r = Region::rect((0.2, 2.5), (0.0, 1.0)).unwrap();
        let (a, b) = r.split_u(1.1).unwrap();
        let f = |s: &MetricSample| Ok(s.u.cos() * s.v + 1.0);
        let whole = integrate(&m, f, &r, 24).unwrap().value;
        let parts = integrate(&m, f, &a, 24).unwrap().value + integrate(&m, f, &b, 24).unwrap().value;
        assert!((whole - parts).abs() < 1e-10);
    }

    #[test]
    fn fan_matches_rectangle() {
        let m = MetricField::parse("1,0,sin(u)^2", &Default::default()).unwrap();
        let square = [[0.5, 0.0], [1.5, 0.0], [1.5, 1.0], [0.5, 1.0]];
        let fan = Region::polygon_fan(&square).unwrap();
        let rect = Region::rect((0.5, 1.5), (0.0, 1.0)).unwrap();
        let f = |s: &MetricSample| Ok(s.v * s.v + 1.0);
        let a = integrate(&m, f, &fan, 4).unwrap();
        let b = integrate(&m, f, &rect, 16).unwrap();
        assert!((a.value - b.value).abs() < 1e-10, "{a:?} {b:?}");
        // clockwise polygons integrate with negative sign
        let mut cw = square;
        cw.reverse();
        let c = integrate(&m, f, &Region::polygon_fan(&cw).unwrap(), 4).unwrap();
        assert!((c.value + a.value).abs() < 1e-12);
    }

    #[test]
    fn order_convergence_on_smooth_integrand() {
        let m = MetricField::parse("1,0,exp(2*u)", &Default::default()).unwrap();
        let r = Region::rect((0.0, 1.0), (0.0, 2.0)).unwrap();
        let f = |s: &MetricSample| Ok((s.u * s.v).sin());
        let reference = integrate(&m, f, &r, 40).unwrap().value;
        let errs: Vec<f64> = [2, 4, 8]
            .iter()
            .map(|&n| (integrate(&m, f, &r, n).unwrap().value - reference).abs())
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
        let i8 = integrate(&m, f, &r, 8).unwrap();
        let i16 = integrate(&m, f, &r, 16).unwrap();
        assert!((i16.value - i8.value).abs() <= i8.error_estimate);
    }

    #[test]
    fn degenerate_metric_inside_region_is_reported() {
        let m = MetricField::parse("1,0,u^2", &Default::default()).unwrap();
        // u = 0 is a GL node of an odd rule on a symmetric interval
        let r = Region::rect((-1.0, 1.0), (0.0, 1.0)).unwrap();
        assert!(matches!(
            integrate(&m, |_| Ok(1.0), &r, 3),
            Err(Error::DegenerateMetric { .. })
        ));
    }

    #[test]
    fn region_validation() {
        assert!(Region::rect((1.0, 0.0), (0.0, 1.0)).is_err());
        assert!(Region::tri_fan(vec![[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]]).is_err());
        assert!(Region::tri_fan(vec![]).is_err());
    }
}
