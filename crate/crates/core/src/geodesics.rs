//! Geodesics of a metric field.
//!
//! Paths are integrated with classical fixed-step RK4 on the geodesic
//! equations `u'' + Γ^u_ij u'^i u'^j = 0`, started at unit metric speed so
//! that the integration parameter is arc length. Two-point problems are
//! solved by shooting on the initial direction angle, and geodesic
//! triangles compare their angle excess with the integral of curvature
//! over the enclosed region.

use crate::intrinsic::{egregia_from_jets, MetricField};
use crate::quad::{integrate, Region};
use crate::surfaces::{FirstFundamentalForm, ParametricSurface};
use crate::{Error, Result};

/// Position and velocity in the chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicState {
    pub u: f64,
    pub v: f64,
    pub pu: f64,
    pub pv: f64,
}

impl GeodesicState {
    pub fn new(u: f64, v: f64, pu: f64, pv: f64) -> Self {
        GeodesicState { u, v, pu, pv }
    }

    pub fn position(&self) -> [f64; 2] {
        [self.u, self.v]
    }

    pub fn velocity(&self) -> [f64; 2] {
        [self.pu, self.pv]
    }

    fn reversed(self) -> Self {
        GeodesicState { pu: -self.pu, pv: -self.pv, ..self }
    }

    fn axpy(self, h: f64, d: [f64; 4]) -> Self {
        GeodesicState::new(self.u + h * d[0], self.v + h * d[1], self.pu + h * d[2], self.pv + h * d[3])
    }
}

/// Connection coefficients: `first[k]` and `second[k]` hold `Γ^u` and
/// `Γ^v` for the index pairs `uu, uv, vv`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Christoffel {
    pub first: [f64; 3],
    pub second: [f64; 3],
}

impl Christoffel {
    pub fn from_form(ff: &FirstFundamentalForm) -> Christoffel {
        let (e, f, g) = (ff.e, ff.f, ff.g);
        let two_det = 2.0 * ff.det();
        Christoffel {
            first: [
                (g.v * e.du - 2.0 * f.v * f.du + f.v * e.dv) / two_det,
                (g.v * e.dv - f.v * g.du) / two_det,
                (2.0 * g.v * f.dv - g.v * g.du - f.v * g.dv) / two_det,
            ],
            second: [
                (2.0 * e.v * f.du - e.v * e.dv - f.v * e.du) / two_det,
                (e.v * g.du - f.v * e.dv) / two_det,
                (e.v * g.dv - 2.0 * f.v * f.dv + f.v * g.du) / two_det,
            ],
        }
    }

    fn acceleration(&self, pu: f64, pv: f64) -> [f64; 2] {
        let q = |c: &[f64; 3]| -(c[0] * pu * pu + 2.0 * c[1] * pu * pv + c[2] * pv * pv);
        [q(&self.first), q(&self.second)]
    }
}

fn rhs(metric: &MetricField, s: GeodesicState) -> Result<[f64; 4]> {
    let ff = metric.definite_at(s.u, s.v)?;
    let [au, av] = Christoffel::from_form(&ff).acceleration(s.pu, s.pv);
    Ok([s.pu, s.pv, au, av])
}

fn rk4(metric: &MetricField, s: GeodesicState, h: f64) -> Result<GeodesicState> {
    let k1 = rhs(metric, s)?;
    let k2 = rhs(metric, s.axpy(0.5 * h, k1))?;
    let k3 = rhs(metric, s.axpy(0.5 * h, k2))?;
    let k4 = rhs(metric, s.axpy(h, k3))?;
    let mut d = [0.0; 4];
    for i in 0..4 {
        d[i] = (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
    }
    Ok(s.axpy(h, d))
}

fn speed_sq(metric: &MetricField, s: &GeodesicState) -> Result<f64> {
    Ok(metric.definite_at(s.u, s.v)?.inner(s.velocity(), s.velocity()))
}

/// Samples of a unit-speed geodesic at arc lengths `i * step`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub states: Vec<GeodesicState>,
    pub step: f64,
    /// Largest `|g(γ', γ') - 1|` over the samples.
    pub energy_drift: f64,
}

impl GeodesicPath {
    pub fn start(&self) -> GeodesicState {
        self.states[0]
    }

    pub fn end(&self) -> GeodesicState {
        *self.states.last().expect("paths have at least one state")
    }

    pub fn length(&self) -> f64 {
        self.step * (self.states.len() - 1) as f64
    }

    pub fn arclength(&self, i: usize) -> f64 {
        self.step * i as f64
    }
}

const MAX_DRIFT: f64 = 1e-4;

/// Rescales the start velocity to unit metric speed.
pub fn normalized_start(metric: &MetricField, start: GeodesicState) -> Result<GeodesicState> {
    let s2 = speed_sq(metric, &start)?;
    if !(s2 > 0.0) {
        return Err(Error::InvalidInput("initial direction must be nonzero".into()));
    }
    let k = s2.sqrt().recip();
    Ok(GeodesicState { pu: start.pu * k, pv: start.pv * k, ..start })
}

/// Integrates the geodesic through `start` (direction only; the speed is
/// normalized) over arc length `length` with steps close to `step`.
pub fn integrate_geodesic(
    metric: &MetricField,
    start: GeodesicState,
    length: f64,
    step: f64,
) -> Result<GeodesicPath> {
    if !(step > 0.0) || !(length >= 0.0) || !length.is_finite() {
        return Err(Error::InvalidInput(format!("need step > 0 and length >= 0, got {step}, {length}")));
    }
    let n = ((length / step) - 1e-9).ceil().max(1.0) as usize;
    let h = length / n as f64;
    let mut s = normalized_start(metric, start)?;
    let mut states = Vec::with_capacity(n + 1);
    states.push(s);
    let mut drift: f64 = 0.0;
    for _ in 0..n {
        s = rk4(metric, s, h)?;
        drift = drift.max((speed_sq(metric, &s)? - 1.0).abs());
        if drift > MAX_DRIFT {
            return Err(Error::StepTooLarge { drift });
        }
        states.push(s);
    }
    Ok(GeodesicPath { states, step: h, energy_drift: drift })
}

/// Reverse traversal of `path`, integrated afresh from its end.
pub fn integrate_back(metric: &MetricField, path: &GeodesicPath) -> Result<GeodesicPath> {
    integrate_geodesic(metric, path.end().reversed(), path.length(), path.step)
}

/// Largest deviation of `r sin θ` from its initial value along `path`,
/// where `r` is the distance from the z axis and `θ` the angle with the
/// meridian `q = const`.
///
/// The surface must be a surface of revolution about the z axis with `q`
/// as the rotation angle; this is checked at every sample.
pub fn clairaut_drift(surface: &ParametricSurface, path: &GeodesicPath) -> Result<f64> {
    let mut first = None;
    let mut drift: f64 = 0.0;
    for s in &path.states {
        let jets = surface.jets(s.u, s.v)?;
        let [x, y, z] = jets;
        let r2 = x.v * x.v + y.v * y.v;
        let dr2_dq = 2.0 * (x.v * x.dv + y.v * y.dv);
        let ff = surface.first_fundamental_form(s.u, s.v)?;
        let tol = 1e-9 * (1.0 + r2);
        if dr2_dq.abs() > tol || z.dv.abs() > 1e-9 || (ff.g.v - r2).abs() > tol || ff.f.v.abs() > tol {
            return Err(Error::NotRevolution(format!(
                "rotation about the z axis is not the q coordinate at ({}, {})",
                s.u, s.v
            )));
        }
        let speed = ff.inner(s.velocity(), s.velocity()).sqrt();
        let sin_theta = ff.det().sqrt() * s.pv / (ff.e.v.sqrt() * speed);
        let value = r2.sqrt() * sin_theta;
        let c = *first.get_or_insert(value);
        drift = drift.max((value - c).abs());
    }
    Ok(drift)
}

/// Settings for the shooting method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shooting {
    /// Required endpoint accuracy in the chart.
    pub tol: f64,
    pub max_iterations: usize,
    /// Integration step for the final path; trial shots use at most this.
    pub step: f64,
}

impl Default for Shooting {
    fn default() -> Self {
        Shooting { tol: 1e-6, max_iterations: 50, step: 1e-3 }
    }
}

// Orthonormal frame of the metric at a point, as coordinate vectors.
fn orthonormal_frame(ff: &FirstFundamentalForm) -> ([f64; 2], [f64; 2]) {
    let e = ff.e.v;
    let e1 = [1.0 / e.sqrt(), 0.0];
    // g(e2, ∂u) = 0 and unit length
    let raw = [-ff.f.v, e];
    let len = ff.inner(raw, raw).sqrt();
    (e1, [raw[0] / len, raw[1] / len])
}

struct Shot {
    miss: f64,
    distance: f64,
    length: f64,
}

struct Shooter<'a> {
    metric: &'a MetricField,
    a: [f64; 2],
    b: [f64; 2],
    frame: ([f64; 2], [f64; 2]),
    horizon: f64,
    step: f64,
}

impl Shooter<'_> {
    fn direction(&self, theta: f64) -> [f64; 2] {
        let (e1, e2) = self.frame;
        let (s, c) = theta.sin_cos();
        [c * e1[0] + s * e2[0], c * e1[1] + s * e2[1]]
    }

    fn distance_sq(&self, s: &GeodesicState) -> f64 {
        (s.u - self.b[0]).powi(2) + (s.v - self.b[1]).powi(2)
    }

    fn shoot(&self, theta: f64) -> Result<Shot> {
        let w = self.direction(theta);
        let start = GeodesicState::new(self.a[0], self.a[1], w[0], w[1]);
        let n = (self.horizon / self.step).ceil() as usize;
        let mut s = start;
        let mut best = (self.distance_sq(&s), 0usize, s);
        for i in 1..=n {
            s = match rk4(self.metric, s, self.step) {
                Ok(next) => next,
                // the shot left the chart; keep the closest approach so far
                Err(Error::DegenerateMetric { .. }) | Err(Error::Eval(_)) => break,
                Err(e) => return Err(e),
            };
            let d = self.distance_sq(&s);
            if d < best.0 {
                best = (d, i, s);
            }
        }
        // Newton on (γ(σ) - b) · γ'(σ) = 0 near the best sample.
        let (_, idx, base) = best;
        let mut sigma = 0.0;
        let mut here = base;
        for _ in 0..8 {
            let acc = rhs(self.metric, here)?;
            let d = [here.u - self.b[0], here.v - self.b[1]];
            let f = d[0] * here.pu + d[1] * here.pv;
            let df = here.pu * here.pu + here.pv * here.pv + d[0] * acc[2] + d[1] * acc[3];
            if df <= 0.0 {
                break;
            }
            let delta = (-f / df).clamp(-self.step, self.step);
            sigma += delta;
            here = rk4(self.metric, base, sigma)?;
            if delta.abs() < 1e-15 {
                break;
            }
        }
        let d = [self.b[0] - here.u, self.b[1] - here.v];
        let cross = here.pu * d[1] - here.pv * d[0];
        let distance = d[0].hypot(d[1]);
        Ok(Shot {
            miss: if cross < 0.0 { -distance } else { distance },
            distance,
            length: self.step * idx as f64 + sigma,
        })
    }
}

/// Geodesic from `a` to `b`, found by secant iteration on the initial
/// angle in a metric-orthonormal frame at `a`.
pub fn connect_geodesic(metric: &MetricField, a: [f64; 2], b: [f64; 2], opts: Shooting) -> Result<GeodesicPath> {
    let ffa = metric.definite_at(a[0], a[1])?;
    metric.definite_at(b[0], b[1])?;
    let chord = [b[0] - a[0], b[1] - a[1]];
    if chord == [0.0, 0.0] {
        return Err(Error::InvalidInput("geodesic endpoints coincide".into()));
    }
    let frame = orthonormal_frame(&ffa);
    let theta0 = ffa.inner(chord, frame.1).atan2(ffa.inner(chord, frame.0));
    let mid = metric.definite_at(0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]));
    let ffb = metric.definite_at(b[0], b[1])?;
    let mut estimate = ffa.inner(chord, chord).sqrt().max(ffb.inner(chord, chord).sqrt());
    if let Ok(m) = mid {
        estimate = estimate.max(m.inner(chord, chord).sqrt());
    }
    let shooter = Shooter {
        metric,
        a,
        b,
        frame,
        horizon: 2.5 * estimate,
        step: opts.step.min(estimate / 400.0),
    };
    let (lo, hi) = (theta0 - std::f64::consts::FRAC_PI_3, theta0 + std::f64::consts::FRAC_PI_3);

    let mut t_prev = theta0;
    let mut s_prev = shooter.shoot(t_prev)?;
    let mut t_cur = theta0 + 1e-3;
    let mut s_cur = shooter.shoot(t_cur)?;
    let mut best = if s_cur.distance < s_prev.distance { (t_cur, s_cur.distance) } else { (t_prev, s_prev.distance) };
    let mut converged = s_prev.distance <= 0.1 * opts.tol;
    if converged {
        t_cur = t_prev;
        s_cur = shooter.shoot(t_cur)?;
    }
    let mut iterations = 0;
    while !converged {
        iterations += 1;
        if iterations > opts.max_iterations {
            return Err(Error::NoConvergence { iterations: opts.max_iterations, best_residual: best.1 });
        }
        let slope = (s_cur.miss - s_prev.miss) / (t_cur - t_prev);
        let next = if slope.is_finite() && slope != 0.0 {
            (t_cur - s_cur.miss / slope).clamp(lo, hi)
        } else {
            0.5 * (t_cur + best.0)
        };
        if next == t_cur {
            return Err(Error::NoConvergence { iterations, best_residual: best.1 });
        }
        t_prev = t_cur;
        s_prev = s_cur;
        t_cur = next;
        s_cur = shooter.shoot(t_cur)?;
        if s_cur.distance < best.1 {
            best = (t_cur, s_cur.distance);
        }
        converged = s_cur.distance <= 0.1 * opts.tol;
    }

    // A vanishing sensitivity of the miss to the angle means b is
    // conjugate to a: the family of geodesics refocuses there and the
    // shooting solution is not isolated.
    let dt = 1e-4;
    let slope = (shooter.shoot(t_cur + dt)?.miss - shooter.shoot(t_cur - dt)?.miss) / (2.0 * dt);
    if slope.abs() < 1e-4 * s_cur.length {
        return Err(Error::NoConvergence { iterations, best_residual: s_cur.distance });
    }

    let w = shooter.direction(t_cur);
    let start = GeodesicState::new(a[0], a[1], w[0], w[1]);
    let path = integrate_geodesic(metric, start, s_cur.length, opts.step)?;
    let end = path.end();
    let residual = (end.u - b[0]).hypot(end.v - b[1]);
    if residual > opts.tol {
        return Err(Error::NoConvergence { iterations, best_residual: residual });
    }
    Ok(path)
}

/// A geodesic triangle and both sides of the angle-excess law.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicTriangle {
    pub vertices: [[f64; 2]; 3],
    /// Sides `AB`, `BC`, `CA`.
    pub sides: [GeodesicPath; 3],
    /// Interior angles at `A`, `B`, `C`.
    pub angles: [f64; 3],
    pub excess: f64,
    /// `∫∫ κ dσ` over the enclosed region.
    pub integral: f64,
    pub integral_error: f64,
}

fn metric_angle(ff: &FirstFundamentalForm, a: [f64; 2], b: [f64; 2]) -> f64 {
    let cross = (a[0] * b[1] - a[1] * b[0]).abs() * ff.det().sqrt();
    cross.atan2(ff.inner(a, b))
}

fn neg(w: [f64; 2]) -> [f64; 2] {
    [-w[0], -w[1]]
}

fn segments_cross(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2]) -> bool {
    let orient = |a: [f64; 2], b: [f64; 2], c: [f64; 2]| {
        (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    };
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

// Bounding-box prefilter keeps the pairwise test affordable.
fn polylines_cross(a: &[[f64; 2]], b: &[[f64; 2]], skip: impl Fn(usize, usize) -> bool) -> bool {
    for i in 0..a.len() - 1 {
        let (p1, p2) = (a[i], a[i + 1]);
        let (xmin, xmax) = (p1[0].min(p2[0]), p1[0].max(p2[0]));
        let (ymin, ymax) = (p1[1].min(p2[1]), p1[1].max(p2[1]));
        for j in 0..b.len() - 1 {
            let (q1, q2) = (b[j], b[j + 1]);
            if q1[0].max(q2[0]) < xmin || q1[0].min(q2[0]) > xmax || q1[1].max(q2[1]) < ymin || q1[1].min(q2[1]) > ymax {
                continue;
            }
            if !skip(i, j) && segments_cross(p1, p2, q1, q2) {
                return true;
            }
        }
    }
    false
}

/// Builds the geodesic triangle `ABC` and evaluates its angle excess and
/// total curvature. The region integral uses the given triangle-fan
/// subdivision `order`.
pub fn triangle_excess(
    metric: &MetricField,
    vertices: [[f64; 2]; 3],
    opts: Shooting,
    order: usize,
) -> Result<GeodesicTriangle> {
    let [a, b, c] = vertices;
    let ab = connect_geodesic(metric, a, b, opts)?;
    let bc = connect_geodesic(metric, b, c, opts)?;
    let ca = connect_geodesic(metric, c, a, opts)?;

    let lines: Vec<Vec<[f64; 2]>> = [&ab, &bc, &ca]
        .iter()
        .map(|p| p.states.iter().map(|s| s.position()).collect())
        .collect();
    // Sides meet only at shared vertices: the last segment of one side
    // touches the first segment of the next.
    let (n0, n1, n2) = (lines[0].len() - 2, lines[1].len() - 2, lines[2].len() - 2);
    if polylines_cross(&lines[0], &lines[1], |i, j| i == n0 && j == 0)
        || polylines_cross(&lines[1], &lines[2], |i, j| i == n1 && j == 0)
        || polylines_cross(&lines[2], &lines[0], |i, j| i == n2 && j == 0)
    {
        return Err(Error::RegionNotSimple);
    }

    let fa = metric.definite_at(a[0], a[1])?;
    let fb = metric.definite_at(b[0], b[1])?;
    let fc = metric.definite_at(c[0], c[1])?;
    let angles = [
        metric_angle(&fa, ab.start().velocity(), neg(ca.end().velocity())),
        metric_angle(&fb, bc.start().velocity(), neg(ab.end().velocity())),
        metric_angle(&fc, ca.start().velocity(), neg(bc.end().velocity())),
    ];
    let excess = angles.iter().sum::<f64>() - std::f64::consts::PI;

    let mut polygon = Vec::new();
    for line in &lines {
        polygon.extend_from_slice(&line[..line.len() - 1]);
    }
    let signed_area: f64 = (0..polygon.len())
        .map(|i| {
            let (p, q) = (polygon[i], polygon[(i + 1) % polygon.len()]);
            p[0] * q[1] - q[0] * p[1]
        })
        .sum();
    let region = Region::polygon_fan(&polygon)?;
    let total = integrate(metric, |s| egregia_from_jets(&s.metric, s.u, s.v), &region, order)?;
    let integral = if signed_area < 0.0 { -total.value } else { total.value };

    Ok(GeodesicTriangle {
        vertices,
        sides: [ab, bc, ca],
        angles,
        excess,
        integral,
        integral_error: total.error_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn metric(text: &str) -> MetricField {
        MetricField::parse(text, &HashMap::new()).unwrap()
    }

    fn sphere_surface() -> ParametricSurface {
        ParametricSurface::parse(["sin(p)*cos(q)", "sin(p)*sin(q)", "cos(p)"], &HashMap::new()).unwrap()
    }

    fn torus_surface() -> ParametricSurface {
        ParametricSurface::parse(
            ["(2+cos(p))*cos(q)", "(2+cos(p))*sin(q)", "sin(p)"],
            &HashMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn christoffel_symbols_of_the_sphere() {
        let ff = metric("1,0,sin(u)^2").at(1.0, 0.0).unwrap();
        let c = Christoffel::from_form(&ff);
        let (s, co) = 1f64.sin_cos();
        assert!((c.first[2] + s * co).abs() < 1e-15);
        assert!((c.second[1] - co / s).abs() < 1e-15);
        assert_eq!([c.first[0], c.first[1], c.second[0], c.second[2]], [0.0; 4]);
    }

    #[test]
    fn flat_geodesics_are_lines() {
        let m = metric("1,0,1");
        let path = integrate_geodesic(&m, GeodesicState::new(1.0, 2.0, 3.0, 4.0), 5.0, 0.1).unwrap();
        let end = path.end();
        assert!((end.u - 4.0).abs() < 1e-13 && (end.v - 6.0).abs() < 1e-13);
        assert!((path.length() - 5.0).abs() < 1e-13);
    }

    #[test]
    fn equator_is_a_geodesic() {
        let m = metric("1,0,sin(u)^2");
        let path = integrate_geodesic(&m, GeodesicState::new(FRAC_PI_2, 0.0, 0.0, 1.0), PI, 1e-3).unwrap();
        assert!(path.states.iter().all(|s| (s.u - FRAC_PI_2).abs() < 1e-12));
        assert!(path.energy_drift <= 1e-8);
        assert!((path.end().v - PI).abs() < 1e-10);
    }

    #[test]
    fn sphere_geodesics_are_great_circles() {
        let m = metric("1,0,sin(u)^2");
        let s = sphere_surface();
        let path = integrate_geodesic(&m, GeodesicState::new(1.0, 0.3, 0.4, 0.9), 3.0, 1e-3).unwrap();
        let pts: Vec<_> = path.states.iter().map(|st| s.point(st.u, st.v).unwrap()).collect();
        // plane through the origin spanned by the start position and velocity
        let (xp, xq) = s.tangents(1.0, 0.3).unwrap();
        let w0 = path.start();
        let vel = [0, 1, 2].map(|i| xp[i] * w0.pu + xq[i] * w0.pv);
        let normal = crate::surfaces::cross(pts[0], vel);
        let ln = crate::surfaces::norm(normal);
        for p in &pts {
            assert!((crate::surfaces::dot(*p, normal) / ln).abs() < 1e-6);
        }
    }

    #[test]
    fn energy_is_conserved_and_paths_reverse() {
        for (text, start) in [
            ("1,0,sin(u)^2", GeodesicState::new(1.0, 0.2, 1.0, 0.5)),
            ("1,0,exp(2*u)", GeodesicState::new(0.0, 0.0, 0.3, 1.0)),
            ("4/(1-u^2-v^2)^2, 0, 4/(1-u^2-v^2)^2", GeodesicState::new(0.1, 0.0, 0.2, 1.0)),
        ] {
            let m = metric(text);
            let fwd = integrate_geodesic(&m, start, 2.0, 1e-3).unwrap();
            assert!(fwd.energy_drift <= 2e-7, "{text}: {}", fwd.energy_drift);
            let back = integrate_back(&m, &fwd).unwrap();
            let e = back.end();
            assert!((e.u - start.u).hypot(e.v - start.v) < 1e-6, "{text}");
        }
    }

    #[test]
    fn degenerate_metric_and_large_steps() {
        let m = metric("1,0,u^2");
        let r = integrate_geodesic(&m, GeodesicState::new(1.0, 0.0, -1.0, 0.0), 2.0, 0.01);
        assert!(matches!(r, Err(Error::DegenerateMetric { .. })));
        let hyp = metric("1,0,exp(2*u)");
        let r = integrate_geodesic(&hyp, GeodesicState::new(0.0, 0.0, 0.1, 1.0), 12.0, 1.5);
        assert!(matches!(r, Err(Error::StepTooLarge { .. })), "{r:?}");
    }

    #[test]
    fn clairaut_examples() {
        let s = sphere_surface();
        let m = MetricField::induced(s.clone());
        let equator = integrate_geodesic(&m, GeodesicState::new(FRAC_PI_2, 0.0, 0.0, 1.0), 3.0, 1e-3).unwrap();
        assert!(clairaut_drift(&s, &equator).unwrap() <= 1e-9);
        let meridian = integrate_geodesic(&m, GeodesicState::new(0.5, 1.0, 1.0, 0.0), 2.0, 1e-3).unwrap();
        assert!(clairaut_drift(&s, &meridian).unwrap() <= 1e-9);
        let t = torus_surface();
        let mt = MetricField::induced(t.clone());
        let path = integrate_geodesic(&mt, GeodesicState::new(0.3, 0.0, 1.0, 0.4), 10.0, 1e-3).unwrap();
        assert!(clairaut_drift(&t, &path).unwrap() <= 1e-5);
        let skew = ParametricSurface::parse(["p", "q", "p*q"], &HashMap::new()).unwrap();
        let mk = MetricField::induced(skew.clone());
        let path = integrate_geodesic(&mk, GeodesicState::new(0.3, 0.0, 1.0, 0.4), 0.5, 1e-2).unwrap();
        assert!(matches!(clairaut_drift(&skew, &path), Err(Error::NotRevolution(_))));
    }

    #[test]
    fn connecting_points() {
        let flat = metric("1,0,1");
        let p = connect_geodesic(&flat, [0.0, 0.0], [1.0, 2.0], Shooting::default()).unwrap();
        for (i, s) in p.states.iter().enumerate() {
            let t = p.arclength(i) / 5f64.sqrt();
            assert!((s.u - t).abs() < 1e-9 && (s.v - 2.0 * t).abs() < 1e-9);
        }
        let sph = metric("1,0,sin(u)^2");
        let p = connect_geodesic(&sph, [FRAC_PI_2, 0.0], [FRAC_PI_2, 0.5], Shooting::default()).unwrap();
        assert!(p.states.iter().all(|s| (s.u - FRAC_PI_2).abs() < 1e-8));
        assert!((p.length() - 0.5).abs() < 1e-6);
        let r = connect_geodesic(&sph, [FRAC_PI_2, 0.0], [FRAC_PI_2, PI], Shooting::default());
        assert!(matches!(r, Err(Error::NoConvergence { .. })), "{r:?}");
    }

    #[test]
    fn flat_triangle_has_no_excess() {
        let t = triangle_excess(&metric("1,0,1"), [[0.0, 0.0], [1.0, 0.0], [0.3, 0.8]], Shooting::default(), 1)
            .unwrap();
        assert!(t.excess.abs() < 1e-10 && t.integral.abs() < 1e-10, "{} {}", t.excess, t.integral);
    }

    #[test]
    fn small_sphere_triangle() {
        let m = metric("1,0,sin(u)^2");
        let t = triangle_excess(&m, [[1.0, 0.0], [1.0, 0.1], [1.08, 0.05]], Shooting::default(), 1).unwrap();
        assert!(t.excess > 0.0);
        assert!((t.excess - t.integral).abs() <= 0.02 * t.integral.abs(), "{} {}", t.excess, t.integral);
    }

    #[test]
    fn crossing_sides_are_rejected() {
        let cross = |a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]| segments_cross(a, b, c, d);
        assert!(cross([0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]));
        assert!(!cross([0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [2.0, 1.0]));
    }
}
