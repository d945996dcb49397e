//! Extrinsic geometry of surfaces in three-space.
//!
//! A surface is given as a graph `z = f(x, y)`, a parametrization
//! `(x, y, z)(p, q)`, or a level set `W(x, y, z) = 0`. Each form has its
//! own Gaussian curvature formula; parametric surfaces additionally
//! provide the first fundamental form with derivatives, principal
//! curvatures, and the Gauss map area quotient.
//!
//! Orientation: the parametric normal is `x_p × x_q`, the graph normal
//! has positive third component. Principal curvatures are eigenvalues of
//! the differential of the unit normal, so a sphere with outward normal
//! has positive principal curvatures.

use std::collections::HashMap;

use crate::expr::{parse_with_constants, Bindings, Expr, Var};
use crate::jets::{BiJet, Dual2, Real, TriJet};
use crate::{Error, Result, EPS_REG};

pub(crate) type Vec3 = [f64; 3];

pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn parse_in(text: &str, constants: &HashMap<String, f64>, allowed: &[Var], what: &str) -> Result<Expr> {
    let e = parse_with_constants(text, constants)?;
    if !e.uses_only(allowed) {
        let names: Vec<_> = allowed.iter().map(|v| v.name()).collect();
        return Err(Error::InvalidInput(format!(
            "{what} '{text}' may only use the variables {}",
            names.join(", ")
        )));
    }
    Ok(e)
}

const CHART: [Var; 4] = [Var::P, Var::Q, Var::U, Var::V];

/// Unnormalized normal `(A, B, C)`, its length and the unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalData {
    pub abc: Vec3,
    pub length: f64,
    pub unit: Vec3,
}

impl NormalData {
    fn from_abc(abc: Vec3, p: f64, q: f64) -> Result<NormalData> {
        let length = norm(abc);
        if !(length > EPS_REG) {
            return Err(Error::DegenerateParametrization { p, q });
        }
        Ok(NormalData { abc, length, unit: abc.map(|c| c / length) })
    }
}

/// The metric coefficients `E, F, G` as jets in the chart coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstFundamentalForm {
    pub e: BiJet,
    pub f: BiJet,
    pub g: BiJet,
}

impl FirstFundamentalForm {
    pub fn constant(e: f64, f: f64, g: f64) -> Self {
        FirstFundamentalForm { e: BiJet::constant(e), f: BiJet::constant(f), g: BiJet::constant(g) }
    }

    /// `EG - F^2`.
    pub fn det(&self) -> f64 {
        self.e.v * self.g.v - self.f.v * self.f.v
    }

    pub fn values(&self) -> Vec3 {
        [self.e.v, self.f.v, self.g.v]
    }

    /// Metric inner product of two coordinate vectors.
    pub fn inner(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        self.e.v * a[0] * b[0] + self.f.v * (a[0] * b[1] + a[1] * b[0]) + self.g.v * a[1] * b[1]
    }

    pub fn is_positive_definite(&self) -> bool {
        self.e.v > 0.0 && self.det() > EPS_REG
    }
}

/// Gauss's auxiliary quantities `m, m', m''` and `n, n', n''`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricScalars {
    pub m: Vec3,
    pub n: Vec3,
}

impl MetricScalars {
    /// From the first partials of `E, F, G`.
    pub fn from_form(ff: &FirstFundamentalForm) -> MetricScalars {
        let (e, f, g) = (ff.e, ff.f, ff.g);
        MetricScalars {
            m: [0.5 * e.du, 0.5 * e.dv, f.dv - 0.5 * g.du],
            n: [f.du - 0.5 * e.dv, 0.5 * g.du, 0.5 * g.dv],
        }
    }
}

/// `D, D', D''` together with `m, n` computed from the embedding and from
/// the metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondOrderScalars {
    pub d: Vec3,
    pub embedded: MetricScalars,
    pub from_metric: MetricScalars,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalCurvatures {
    pub k_min: f64,
    pub k_max: f64,
    /// Metric-unit directions in chart coordinates; `None` at umbilics.
    pub dir_min: Option<[f64; 2]>,
    pub dir_max: Option<[f64; 2]>,
}

impl PrincipalCurvatures {
    pub fn mean(&self) -> f64 {
        0.5 * (self.k_min + self.k_max)
    }

    pub fn gaussian(&self) -> f64 {
        self.k_min * self.k_max
    }

    pub fn is_umbilic(&self) -> bool {
        self.dir_min.is_none()
    }
}

/// Curvature of the normal section at angle `theta` from the principal
/// direction of `k_at_min_dir`.
pub fn euler_normal_section(k_at_min_dir: f64, k_at_max_dir: f64, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    k_at_min_dir * c * c + k_at_max_dir * s * s
}

/// Curvature of an oblique section whose plane makes angle `omega` with
/// the normal plane.
pub fn meusnier(k_normal_section: f64, omega: f64) -> Result<f64> {
    let s = omega.sin();
    if s <= EPS_REG {
        return Err(Error::DegenerateAngle);
    }
    Ok(k_normal_section / s)
}

/// `z = f(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSurface {
    pub f: Expr,
}

impl GraphSurface {
    pub fn new(f: Expr) -> Result<GraphSurface> {
        if !f.uses_only(&[Var::X, Var::Y]) {
            return Err(Error::InvalidInput("a graph surface is a function of x and y".into()));
        }
        Ok(GraphSurface { f })
    }

    pub fn parse(text: &str, constants: &HashMap<String, f64>) -> Result<GraphSurface> {
        Ok(GraphSurface { f: parse_in(text, constants, &[Var::X, Var::Y], "graph")? })
    }

    fn jet(&self, x: f64, y: f64) -> Result<BiJet> {
        Ok(self.f.eval(&Bindings::xy(BiJet::var_u(x), BiJet::var_v(y)))?)
    }

    pub fn point(&self, x: f64, y: f64) -> Result<Vec3> {
        Ok([x, y, self.jet(x, y)?.v])
    }

    pub fn normal(&self, x: f64, y: f64) -> Result<NormalData> {
        let j = self.jet(x, y)?;
        NormalData::from_abc([-j.du, -j.dv, 1.0], x, y)
    }

    /// `(TV - U^2) / (1 + t^2 + u^2)^2`.
    pub fn gauss_curvature(&self, x: f64, y: f64) -> Result<f64> {
        let j = self.jet(x, y)?;
        let w = 1.0 + j.du * j.du + j.dv * j.dv;
        Ok((j.duu * j.dvv - j.duv * j.duv) / (w * w))
    }

    /// The same surface as `(p, q, f(p, q))`.
    pub fn to_parametric(&self) -> ParametricSurface {
        let f = self.f.rename_vars(|v| if v == Var::X { Var::P } else { Var::Q });
        ParametricSurface { coords: [Expr::var(Var::P), Expr::var(Var::Q), f] }
    }
}

/// `(x, y, z)` as functions of the chart `(p, q)`; `u, v` are accepted as
/// synonyms.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricSurface {
    pub coords: [Expr; 3],
}

impl ParametricSurface {
    pub fn new(coords: [Expr; 3]) -> Result<ParametricSurface> {
        if coords.iter().any(|c| !c.uses_only(&CHART)) {
            return Err(Error::InvalidInput("a parametric surface is a function of p, q (or u, v)".into()));
        }
        Ok(ParametricSurface { coords })
    }

    pub fn parse(texts: [&str; 3], constants: &HashMap<String, f64>) -> Result<ParametricSurface> {
        let mut out = Vec::with_capacity(3);
        for t in texts {
            out.push(parse_in(t, constants, &CHART, "coordinate")?);
        }
        let [x, y, z]: [Expr; 3] = out.try_into().expect("three coordinates");
        Ok(ParametricSurface { coords: [x, y, z] })
    }

    fn eval<T: Real>(&self, b: &Bindings<T>) -> Result<[T; 3]> {
        let [x, y, z] = &self.coords;
        Ok([x.eval(b)?, y.eval(b)?, z.eval(b)?])
    }

    pub fn point(&self, p: f64, q: f64) -> Result<Vec3> {
        self.eval(&Bindings::chart(p, q))
    }

    /// Position with first and second partials in `(p, q)`.
    pub fn jets(&self, p: f64, q: f64) -> Result<[BiJet; 3]> {
        self.eval(&Bindings::chart(BiJet::var_u(p), BiJet::var_v(q)))
    }

    /// Tangent vectors `x_p, x_q`.
    pub fn tangents(&self, p: f64, q: f64) -> Result<(Vec3, Vec3)> {
        let j = self.jets(p, q)?;
        Ok((j.map(|c| c.du), j.map(|c| c.dv)))
    }

    pub fn normal(&self, p: f64, q: f64) -> Result<NormalData> {
        let (xp, xq) = self.tangents(p, q)?;
        NormalData::from_abc(cross(xp, xq), p, q)
    }

    /// `E, F, G` with first and second partials, obtained by
    /// differentiating the embedding to third order.
    pub fn first_fundamental_form(&self, p: f64, q: f64) -> Result<FirstFundamentalForm> {
        let [sp, sq] = Dual2::<BiJet>::seed_pq(p, q);
        let b = Bindings::chart(sp, sq);
        let x = self.eval(&b)?;
        let xp = x.map(|c| c.dp);
        let xq = x.map(|c| c.dq);
        let dot3 = |a: [BiJet; 3], b: [BiJet; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let ff = FirstFundamentalForm { e: dot3(xp, xp), f: dot3(xp, xq), g: dot3(xq, xq) };
        if !ff.is_positive_definite() {
            return Err(Error::DegenerateParametrization { p, q });
        }
        Ok(ff)
    }

    pub fn second_order_scalars(&self, p: f64, q: f64) -> Result<SecondOrderScalars> {
        let j = self.jets(p, q)?;
        let normal = self.normal(p, q)?;
        let xp = j.map(|c| c.du);
        let xq = j.map(|c| c.dv);
        let xpp = j.map(|c| c.duu);
        let xpq = j.map(|c| c.duv);
        let xqq = j.map(|c| c.dvv);
        let d = [dot(normal.abc, xpp), dot(normal.abc, xpq), dot(normal.abc, xqq)];
        let embedded = MetricScalars {
            m: [dot(xp, xpp), dot(xp, xpq), dot(xp, xqq)],
            n: [dot(xq, xpp), dot(xq, xpq), dot(xq, xqq)],
        };
        let from_metric = MetricScalars::from_form(&self.first_fundamental_form(p, q)?);
        Ok(SecondOrderScalars { d, embedded, from_metric })
    }

    // D, D', D'' and |N|^2, from second-order jets only.
    fn d_family(&self, p: f64, q: f64) -> Result<(Vec3, NormalData, [f64; 3])> {
        let j = self.jets(p, q)?;
        let xp = j.map(|c| c.du);
        let xq = j.map(|c| c.dv);
        let normal = NormalData::from_abc(cross(xp, xq), p, q)?;
        let d = [
            dot(normal.abc, j.map(|c| c.duu)),
            dot(normal.abc, j.map(|c| c.duv)),
            dot(normal.abc, j.map(|c| c.dvv)),
        ];
        Ok((d, normal, [dot(xp, xp), dot(xp, xq), dot(xq, xq)]))
    }

    /// `(DD'' - D'^2) / (A^2 + B^2 + C^2)^2`.
    pub fn gauss_curvature(&self, p: f64, q: f64) -> Result<f64> {
        let (d, normal, _) = self.d_family(p, q)?;
        let l2 = normal.length * normal.length;
        Ok((d[0] * d[2] - d[1] * d[1]) / (l2 * l2))
    }

    /// Mean curvature from the two fundamental forms.
    pub fn mean_curvature(&self, p: f64, q: f64) -> Result<f64> {
        let (d, normal, [e, f, g]) = self.d_family(p, q)?;
        let [l, m, n] = d.map(|x| -x / normal.length);
        Ok((e * n - 2.0 * f * m + g * l) / (2.0 * (e * g - f * f)))
    }

    pub fn principal_curvatures(&self, p: f64, q: f64) -> Result<PrincipalCurvatures> {
        let (d, normal, [e, f, g]) = self.d_family(p, q)?;
        let [l, m, n] = d.map(|x| -x / normal.length);
        let det = e * g - f * f;
        // Shape operator I^-1 II'; its eigenvalue gap is computed directly
        // so that umbilics do not suffer the cancellation in H^2 - K.
        let s11 = (g * l - f * m) / det;
        let s12 = (g * m - f * n) / det;
        let s21 = (e * m - f * l) / det;
        let s22 = (e * n - f * m) / det;
        let h = 0.5 * (s11 + s22);
        let disc = 0.5 * ((s11 - s22).powi(2) + 4.0 * s12 * s21).max(0.0).sqrt();
        let (k_min, k_max) = (h - disc, h + disc);
        if (k_max - k_min).abs() <= 1e-8 * (1.0 + k_max.abs()) {
            return Ok(PrincipalCurvatures { k_min, k_max, dir_min: None, dir_max: None });
        }
        let direction = |kappa: f64| {
            let (a, b, c) = (l - kappa * e, m - kappa * f, n - kappa * g);
            let first = [-b, a];
            let second = [c, -b];
            let mut w =
                if first[0].hypot(first[1]) >= second[0].hypot(second[1]) { first } else { second };
            let len = (e * w[0] * w[0] + 2.0 * f * w[0] * w[1] + g * w[1] * w[1]).sqrt();
            if w[0] < 0.0 || (w[0] == 0.0 && w[1] < 0.0) {
                w = [-w[0], -w[1]];
            }
            [w[0] / len, w[1] / len]
        };
        Ok(PrincipalCurvatures {
            k_min,
            k_max,
            dir_min: Some(direction(k_min)),
            dir_max: Some(direction(k_max)),
        })
    }

    /// Signed area of the Gauss image of a `fan`-triangle disc of radius
    /// `eps` in the chart, over the area of the disc's embedded triangles.
    pub fn gauss_map_quotient(&self, p: f64, q: f64, eps: f64, fan: usize) -> Result<f64> {
        if !(eps > 0.0) || fan < 3 {
            return Err(Error::InvalidInput("fan needs eps > 0 and at least three triangles".into()));
        }
        let centre = self.point(p, q)?;
        let n0 = self.normal(p, q)?.unit;
        let rim: Vec<(Vec3, Vec3)> = (0..fan)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / fan as f64;
                let (pk, qk) = (p + eps * a.cos(), q + eps * a.sin());
                Ok((self.point(pk, qk)?, self.normal(pk, qk)?.unit))
            })
            .collect::<Result<_>>()?;
        let (mut image, mut area) = (0.0, 0.0);
        for k in 0..fan {
            let (x1, n1) = rim[k];
            let (x2, n2) = rim[(k + 1) % fan];
            let flat = cross(sub(x1, centre), sub(x2, centre));
            area += 0.5 * norm(flat);
            let orientation = dot(flat, n0).signum();
            let sign = dot(n0, cross(n1, n2)).signum() * orientation;
            image += sign * spherical_area(n0, n1, n2);
        }
        if !(area > 0.0) {
            return Err(Error::DegenerateParametrization { p, q });
        }
        Ok(image / area)
    }
}

fn arc(a: Vec3, b: Vec3) -> f64 {
    norm(cross(a, b)).atan2(dot(a, b))
}

/// Unsigned area of a spherical triangle by l'Huilier's theorem.
pub fn spherical_area(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    let (x, y, z) = (arc(b, c), arc(a, c), arc(a, b));
    let s = 0.5 * (x + y + z);
    let t = (0.5 * s).tan()
        * (0.5 * (s - x)).tan().max(0.0)
        * (0.5 * (s - y)).tan().max(0.0)
        * (0.5 * (s - z)).tan().max(0.0);
    4.0 * t.max(0.0).sqrt().atan()
}

/// `W(x, y, z) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImplicitSurface {
    pub w: Expr,
}

impl ImplicitSurface {
    pub fn new(w: Expr) -> Result<ImplicitSurface> {
        if !w.uses_only(&[Var::X, Var::Y, Var::Z]) {
            return Err(Error::InvalidInput("an implicit surface is a function of x, y, z".into()));
        }
        Ok(ImplicitSurface { w })
    }

    pub fn parse(text: &str, constants: &HashMap<String, f64>) -> Result<ImplicitSurface> {
        Ok(ImplicitSurface { w: parse_in(text, constants, &[Var::X, Var::Y, Var::Z], "level set")? })
    }

    /// The jet of `W`, after checking that the point lies on a regular
    /// part of the level set.
    fn jet_on_surface(&self, x: f64, y: f64, z: f64) -> Result<TriJet> {
        let [jx, jy, jz] = TriJet::vars(x, y, z);
        let w: TriJet = self.w.eval(&Bindings::xyz(jx, jy, jz))?;
        let grad = norm([w.dx, w.dy, w.dz]);
        if w.v.abs() > 1e-9 * (1.0 + grad) {
            return Err(Error::NotOnSurface { residual: w.v.abs() });
        }
        if grad <= EPS_REG {
            return Err(Error::SingularGradient);
        }
        Ok(w)
    }

    /// Unit normal along the gradient.
    pub fn normal(&self, x: f64, y: f64, z: f64) -> Result<NormalData> {
        let w = self.jet_on_surface(x, y, z)?;
        let abc = [w.dx, w.dy, w.dz];
        let length = norm(abc);
        Ok(NormalData { abc, length, unit: abc.map(|c| c / length) })
    }

    pub fn gauss_curvature(&self, x: f64, y: f64, z: f64) -> Result<f64> {
        let w = self.jet_on_surface(x, y, z)?;
        let (p, q, r) = (w.dx, w.dy, w.dz);
        let (p1, q1, r1) = (w.dxx, w.dyy, w.dzz);
        let (p2, q2, r2) = (w.dyz, w.dxz, w.dxy);
        let num = p * p * (q1 * r1 - p2 * p2)
            + q * q * (p1 * r1 - q2 * q2)
            + r * r * (p1 * q1 - r2 * r2)
            + 2.0 * q * r * (q2 * r2 - p1 * p2)
            + 2.0 * p * r * (p2 * r2 - q1 * q2)
            + 2.0 * p * q * (p2 * q2 - r1 * r2);
        let g2 = p * p + q * q + r * r;
        Ok(num / (g2 * g2))
    }
}

/// A surface in any of the three representations.
#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceDef {
    Graph(GraphSurface),
    Parametric(ParametricSurface),
    Implicit(ImplicitSurface),
}

impl SurfaceDef {
    /// Parametric view where one exists: graphs convert, level sets do not.
    pub fn as_parametric(&self) -> Option<ParametricSurface> {
        match self {
            SurfaceDef::Graph(g) => Some(g.to_parametric()),
            SurfaceDef::Parametric(p) => Some(p.clone()),
            SurfaceDef::Implicit(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::fd;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

    fn consts(pairs: &[(&str, f64)]) -> HashMap<String, f64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn sphere(r: f64) -> ParametricSurface {
        ParametricSurface::parse(
            ["R*sin(p)*cos(q)", "R*sin(p)*sin(q)", "R*cos(p)"],
            &consts(&[("R", r)]),
        )
        .unwrap()
    }

    fn plane() -> ParametricSurface {
        ParametricSurface::parse(["p", "q", "0"], &HashMap::new()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn graph_normals() {
        let none = HashMap::new();
        let n = GraphSurface::parse("3", &none).unwrap().normal(0.4, 2.0).unwrap();
        assert_eq!(n.unit, [0.0, 0.0, 1.0]);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let n = GraphSurface::parse("x", &none).unwrap().normal(0.0, 0.0).unwrap();
        assert!(close(n.unit[0], -s, 1e-15) && n.unit[1] == 0.0 && close(n.unit[2], s, 1e-15));
        let par = GraphSurface::parse("(x^2+y^2)/2", &none).unwrap();
        let n = par.normal(1.0, 0.0).unwrap().unit;
        assert!(close(n[0], -s, 1e-15) && close(n[2], s, 1e-15));
        // orthogonal to the coordinate tangents (1, 0, z_x) and (0, 1, z_y)
        let zx = fd::bi(|x, y| (x * x + y * y) / 2.0, [1.0, 0.0], 1e-5);
        assert!(dot(n, [1.0, 0.0, zx.du]).abs() < 1e-9);
        assert!(dot(n, [0.0, 1.0, zx.dv]).abs() < 1e-9);
    }

    #[test]
    fn parametric_normals() {
        assert_eq!(plane().normal(0.3, -1.0).unwrap().unit, [0.0, 0.0, 1.0]);
        let s = sphere(2.0);
        for &(p, q) in &[(0.4, 0.1), (1.2, 2.0), (2.9, -1.0)] {
            let n = s.normal(p, q).unwrap();
            let x = s.point(p, q).unwrap();
            for i in 0..3 {
                assert!(close(n.unit[i], x[i] / 2.0, 1e-12));
            }
            let (xp, xq) = s.tangents(p, q).unwrap();
            assert!(dot(n.unit, xp).abs() < 1e-12 && dot(n.unit, xq).abs() < 1e-12);
            assert!((dot(n.unit, n.unit) - 1.0).abs() < 1e-12);
        }
        let g = GraphSurface::parse("sin(x)*y + x^2", &HashMap::new()).unwrap();
        for &(x, y) in &[(0.2, 0.7), (-1.0, 0.5)] {
            let a = g.normal(x, y).unwrap().unit;
            let b = g.to_parametric().normal(x, y).unwrap().unit;
            for i in 0..3 {
                assert!(close(a[i], b[i], 1e-12));
            }
        }
    }

    #[test]
    fn degenerate_parametrization() {
        assert!(matches!(sphere(1.0).normal(0.0, 0.3), Err(Error::DegenerateParametrization { .. })));
        let line = ParametricSurface::parse(["p+q", "p+q", "0"], &HashMap::new()).unwrap();
        assert!(matches!(
            line.first_fundamental_form(0.0, 0.0),
            Err(Error::DegenerateParametrization { .. })
        ));
    }

    #[test]
    fn first_fundamental_forms() {
        let ff = plane().first_fundamental_form(1.0, 2.0).unwrap();
        assert_eq!(ff.values(), [1.0, 0.0, 1.0]);
        let cyl = ParametricSurface::parse(["cos(q)", "sin(q)", "p"], &HashMap::new()).unwrap();
        for q in [0.0, 1.0, 4.0] {
            let v = cyl.first_fundamental_form(0.5, q).unwrap().values();
            assert!(close(v[0], 1.0, 1e-15) && close(v[1], 0.0, 1e-15) && close(v[2], 1.0, 1e-15));
        }
        // sphere metric and its partials against differences of the closed form
        let r = 2.0;
        let s = sphere(r);
        let (p, q) = (0.9, 0.4);
        let ff = s.first_fundamental_form(p, q).unwrap();
        let oracle = fd::bi(|p, _| r * r * p.sin().powi(2), [p, q], 1e-4);
        assert!(close(ff.e.v, r * r, 1e-12) && ff.f.v.abs() < 1e-12);
        assert!(close(ff.g.v, oracle.v, 1e-12));
        assert!(close(ff.g.du, oracle.du, 1e-7));
        assert!(close(ff.g.duu, oracle.duu, 1e-5));
        assert!(ff.g.dv.abs() < 1e-12 && ff.e.duu.abs() < 1e-12);
    }

    #[test]
    fn metric_partials_match_differences_of_the_embedding() {
        let torus = ParametricSurface::parse(
            ["(2+cos(p))*cos(q)", "(2+cos(p))*sin(q)", "sin(p)+0.3*q*p"],
            &HashMap::new(),
        )
        .unwrap();
        let at = [0.7, 1.3];
        let ff = torus.first_fundamental_form(at[0], at[1]).unwrap();
        let value = |which: usize| {
            let t = torus.clone();
            move |p: f64, q: f64| t.first_fundamental_form(p, q).unwrap().values()[which]
        };
        for (which, jet) in [(0, ff.e), (1, ff.f), (2, ff.g)] {
            let o = fd::bi(value(which), at, 1e-4);
            for (a, b) in jet.first().iter().zip(o.first()) {
                assert!((a - b).abs() <= 1e-7 * b.abs().max(1.0));
            }
            for (a, b) in jet.second().iter().zip(o.second()) {
                assert!((a - b).abs() <= 1e-4 * b.abs().max(1.0));
            }
        }
    }

    #[test]
    fn second_order_scalars_two_ways() {
        let s = plane().second_order_scalars(0.2, 0.3).unwrap();
        assert_eq!(s.d, [0.0; 3]);
        assert_eq!(s.embedded.m, [0.0; 3]);
        assert_eq!(s.from_metric.n, [0.0; 3]);
        let s = sphere(1.0).second_order_scalars(FRAC_PI_2, 0.4).unwrap();
        assert!(s.from_metric.n[1].abs() < 1e-15);
        let cyl = ParametricSurface::parse(["cos(q)", "sin(q)", "p"], &HashMap::new()).unwrap();
        assert_eq!(cyl.second_order_scalars(0.3, 0.8).unwrap().d[0], 0.0);
        let odd = ParametricSurface::parse(
            ["p*cos(q)", "exp(p)*sin(q)", "p*q + q^3"],
            &HashMap::new(),
        )
        .unwrap();
        for &(p, q) in &[(0.3, 0.2), (1.1, -0.7)] {
            let s = odd.second_order_scalars(p, q).unwrap();
            for i in 0..3 {
                assert!(close(s.embedded.m[i], s.from_metric.m[i], 1e-9));
                assert!(close(s.embedded.n[i], s.from_metric.n[i], 1e-9));
            }
        }
    }

    #[test]
    fn graph_curvature_examples() {
        let none = HashMap::new();
        let plane = GraphSurface::parse("1 + 2*x - 3*y", &none).unwrap();
        assert_eq!(plane.gauss_curvature(0.5, 0.5).unwrap(), 0.0);
        let par = GraphSurface::parse("(x^2+y^2)/2", &none).unwrap();
        assert!(close(par.gauss_curvature(0.0, 0.0).unwrap(), 1.0, 1e-15));
        let monkey = GraphSurface::parse("x^3 - 3*x*y^2", &none).unwrap();
        assert_eq!(monkey.gauss_curvature(0.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn implicit_curvature_examples() {
        let c = consts(&[("R", 2.0)]);
        let s = ImplicitSurface::parse("x^2+y^2+z^2-R^2", &c).unwrap();
        assert!(close(s.gauss_curvature(0.0, 0.0, 2.0).unwrap(), 0.25, 1e-15));
        let z = ImplicitSurface::parse("z", &c).unwrap();
        assert_eq!(z.gauss_curvature(1.0, 2.0, 0.0).unwrap(), 0.0);
        let cyl = ImplicitSurface::parse("x^2+y^2-R^2", &c).unwrap();
        assert_eq!(cyl.gauss_curvature(2.0, 0.0, 5.0).unwrap(), 0.0);
        assert!(matches!(s.gauss_curvature(0.0, 0.0, 1.0), Err(Error::NotOnSurface { .. })));
        let cone = ImplicitSurface::parse("x^2+y^2-z^2", &c).unwrap();
        assert_eq!(cone.gauss_curvature(0.0, 0.0, 0.0), Err(Error::SingularGradient));
    }

    #[test]
    fn implicit_curvature_is_scale_invariant() {
        let c = consts(&[("a", 2.0), ("b", 1.5), ("c", 1.0)]);
        let base = "x^2/a^2 + y^2/b^2 + z^2/c^2 - 1";
        let w = ImplicitSurface::parse(base, &c).unwrap();
        let (x, y) = (0.8, 0.5);
        let z = (1.0 - x * x / 4.0 - y * y / 2.25f64).sqrt();
        let k = w.gauss_curvature(x, y, z).unwrap();
        // closed form for the ellipsoid
        let s = x * x / 16.0 + y * y / 1.5f64.powi(4) + z * z;
        assert!(close(k, 1.0 / (4.0 * 2.25 * s * s), 1e-12));
        for lambda in [-2.0, 0.5, 10.0] {
            let scaled = ImplicitSurface::parse(&format!("{lambda:?}*({base})"), &c).unwrap();
            assert!(close(scaled.gauss_curvature(x, y, z).unwrap(), k, 1e-10));
        }
        // relabeling coordinates
        let swapped =
            ImplicitSurface::parse("z^2/a^2 + x^2/b^2 + y^2/c^2 - 1", &c).unwrap();
        assert!(close(swapped.gauss_curvature(y, z, x).unwrap(), k, 1e-12));
    }

    #[test]
    fn parametric_curvature_examples() {
        assert_eq!(plane().gauss_curvature(0.1, 0.2).unwrap(), 0.0);
        let s = sphere(2.0);
        for &(p, q) in &[(0.3, 0.0), (1.0, 1.0), (2.5, 5.0)] {
            assert!(close(s.gauss_curvature(p, q).unwrap(), 0.25, 1e-14));
        }
        let torus = ParametricSurface::parse(
            ["(Rmaj+r*cos(p))*cos(q)", "(Rmaj+r*cos(p))*sin(q)", "r*sin(p)"],
            &consts(&[("Rmaj", 2.0), ("r", 1.0)]),
        )
        .unwrap();
        assert!(close(torus.gauss_curvature(0.0, 0.7).unwrap(), 1.0 / 3.0, 1e-14));
    }

    #[test]
    fn principal_curvature_examples() {
        let pc = plane().principal_curvatures(0.0, 0.0).unwrap();
        assert_eq!((pc.k_min, pc.k_max), (0.0, 0.0));
        let pc = sphere(2.0).principal_curvatures(1.0, 0.5).unwrap();
        assert!(close(pc.k_min, 0.5, 1e-12) && close(pc.k_max, 0.5, 1e-12));
        assert!(pc.is_umbilic());
        let cyl = ParametricSurface::parse(
            ["R*cos(p/R)", "R*sin(p/R)", "q"],
            &consts(&[("R", 2.0)]),
        )
        .unwrap();
        let pc = cyl.principal_curvatures(0.3, 0.1).unwrap();
        assert!(close(pc.k_min, 0.0, 1e-14) && close(pc.k_max, 0.5, 1e-14));
        let dmin = pc.dir_min.unwrap();
        assert!(dmin[0].abs() < 1e-14 && close(dmin[1], 1.0, 1e-14));
    }

    #[test]
    fn principal_directions_are_orthonormal() {
        let torus = ParametricSurface::parse(
            ["(2+cos(p))*cos(q)", "(2+cos(p))*sin(q)", "sin(p)"],
            &HashMap::new(),
        )
        .unwrap();
        let skew = ParametricSurface::parse(["p + 0.3*q", "q", "p*q + p^2"], &HashMap::new()).unwrap();
        for s in [torus, skew] {
            for &(p, q) in &[(0.4, 0.2), (2.0, 1.0)] {
                let pc = s.principal_curvatures(p, q).unwrap();
                let ff = s.first_fundamental_form(p, q).unwrap();
                let (a, b) = (pc.dir_min.unwrap(), pc.dir_max.unwrap());
                assert!(ff.inner(a, b).abs() < 1e-12);
                assert!(close(ff.inner(a, a), 1.0, 1e-12));
                assert!(close(pc.gaussian(), s.gauss_curvature(p, q).unwrap(), 1e-9));
                assert!(close(pc.mean(), s.mean_curvature(p, q).unwrap(), 1e-9));
                assert!(pc.k_min <= pc.k_max);
            }
        }
    }

    #[test]
    fn euler_and_meusnier() {
        assert_eq!(euler_normal_section(3.0, -1.0, 0.0), 3.0);
        assert!(close(euler_normal_section(3.0, -1.0, FRAC_PI_2), -1.0, 1e-15));
        for t in [0.0, 0.3, 1.0, 2.0, -4.0] {
            assert!(close(euler_normal_section(0.7, 0.7, t), 0.7, 1e-15));
        }
        assert_eq!(meusnier(0.8, FRAC_PI_2).unwrap(), 0.8);
        assert!(close(meusnier(1.0, FRAC_PI_6).unwrap(), 2.0, 1e-14));
        assert_eq!(meusnier(1.0, 0.0), Err(Error::DegenerateAngle));
    }

    #[test]
    fn gauss_map_quotient_examples() {
        assert_eq!(plane().gauss_map_quotient(0.3, 0.3, 1e-2, 12).unwrap(), 0.0);
        let k = sphere(2.0).gauss_map_quotient(1.0, 0.5, 1e-2, 12).unwrap();
        assert!(close(k, 0.25, 5e-3), "{k}");
        let saddle = GraphSurface::parse("x*y", &HashMap::new()).unwrap().to_parametric();
        let k = saddle.gauss_map_quotient(0.0, 0.0, 1e-2, 12).unwrap();
        assert!(close(k, -1.0, 5e-2), "{k}");
    }

    #[test]
    fn spherical_area_of_octant() {
        let a = spherical_area([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]);
        assert!(close(a, FRAC_PI_2, 1e-14));
    }
}
