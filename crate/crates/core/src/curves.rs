//! Plane curves as graphs `y = f(x)`, parametrizations `(x(t), y(t))`
//! and level sets `W(x, y) = 0`.
//!
//! The normal is always the tangent rotated by `+π/2`, so signed
//! curvature is positive when the curve turns left. Level sets have no
//! preferred direction of travel; their curvature is reported as a
//! magnitude together with the side of the gradient on which the centre
//! of curvature lies.

use std::collections::HashMap;

use crate::expr::{parse_with_constants, Bindings, Expr, Var};
use crate::jets::{BiJet, UniJet};
use crate::quad::CompositeRule;
use crate::{Error, Result, EPS_REG};

pub type Point = [f64; 2];

fn parse_in(text: &str, constants: &HashMap<String, f64>, var: &[Var], what: &str) -> Result<Expr> {
    let e = parse_with_constants(text, constants)?;
    if !e.uses_only(var) {
        let names: Vec<_> = var.iter().map(|v| v.name()).collect();
        return Err(Error::InvalidInput(format!("{what} '{text}' may only use {}", names.join(", "))));
    }
    Ok(e)
}

/// Unit tangent and unit normal; `normal` is `tangent` turned by `+π/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitFrame {
    pub tangent: Point,
    pub normal: Point,
}

impl UnitFrame {
    fn from_direction(dx: f64, dy: f64) -> UnitFrame {
        let len = dx.hypot(dy);
        let t = [dx / len, dy / len];
        UnitFrame { tangent: t, normal: [-t[1], t[0]] }
    }
}

/// How the sign of a [`SignedCurvature`] is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Positive values turn towards the `+π/2` normal.
    LeftNormal,
    /// Level set: the value is a magnitude and the centre of curvature
    /// lies on the side opposite to the gradient.
    AgainstGradient,
    /// Level set: the centre of curvature lies on the gradient side.
    AlongGradient,
    /// Level set with vanishing curvature.
    Straight,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedCurvature {
    pub value: f64,
    pub orientation: Orientation,
}

impl SignedCurvature {
    fn left(value: f64) -> Self {
        SignedCurvature { value, orientation: Orientation::LeftNormal }
    }

    pub fn magnitude(&self) -> f64 {
        self.value.abs()
    }
}

/// Point, frame and signed curvature at one location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub point: Point,
    pub frame: UnitFrame,
    /// Signed with respect to `frame.normal`.
    pub kappa: f64,
}

impl CurveSample {
    pub fn osculating_circle(&self) -> Result<(Point, f64)> {
        if self.kappa.abs() <= EPS_REG {
            return Err(Error::ZeroCurvature);
        }
        let [nx, ny] = self.frame.normal;
        let centre = [self.point[0] + nx / self.kappa, self.point[1] + ny / self.kappa];
        Ok((centre, 1.0 / self.kappa.abs()))
    }
}

/// `y = f(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphCurve {
    pub f: Expr,
}

impl GraphCurve {
    pub fn parse(text: &str, constants: &HashMap<String, f64>) -> Result<GraphCurve> {
        Ok(GraphCurve { f: parse_in(text, constants, &[Var::X], "graph")? })
    }

    fn jet(&self, x: f64) -> Result<UniJet> {
        Ok(self.f.eval(&Bindings::new().with(Var::X, UniJet::var(x)))?)
    }

    pub fn frame(&self, x: f64) -> Result<UnitFrame> {
        Ok(UnitFrame::from_direction(1.0, self.jet(x)?.d1))
    }

    /// `f'' / (1 + f'^2)^{3/2}`.
    pub fn curvature(&self, x: f64) -> Result<SignedCurvature> {
        let j = self.jet(x)?;
        Ok(SignedCurvature::left(j.d2 / (1.0 + j.d1 * j.d1).powf(1.5)))
    }

    pub fn sample(&self, x: f64) -> Result<CurveSample> {
        let j = self.jet(x)?;
        Ok(CurveSample {
            point: [x, j.v],
            frame: UnitFrame::from_direction(1.0, j.d1),
            kappa: j.d2 / (1.0 + j.d1 * j.d1).powf(1.5),
        })
    }

    /// `∫ sqrt(1 + f'^2) dx` from `x1` to `x2`.
    pub fn arc_length(&self, x1: f64, x2: f64, rule: CompositeRule) -> Result<f64> {
        if !(x1 <= x2) {
            return Err(Error::InvalidInput(format!("arc length needs x1 <= x2, got {x1} > {x2}")));
        }
        rule.integrate(x1, x2, |x| {
            let d = self.jet(x)?.d1;
            Ok((1.0 + d * d).sqrt())
        })
    }
}

/// `(x(t), y(t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricCurve {
    pub x: Expr,
    pub y: Expr,
}

impl ParametricCurve {
    pub fn parse(x: &str, y: &str, constants: &HashMap<String, f64>) -> Result<ParametricCurve> {
        Ok(ParametricCurve {
            x: parse_in(x, constants, &[Var::T], "coordinate")?,
            y: parse_in(y, constants, &[Var::T], "coordinate")?,
        })
    }

    fn jets(&self, t: f64) -> Result<(UniJet, UniJet)> {
        let b = Bindings::new().with(Var::T, UniJet::var(t));
        Ok((self.x.eval(&b)?, self.y.eval(&b)?))
    }

    pub fn point(&self, t: f64) -> Result<Point> {
        let b = Bindings::new().with(Var::T, t);
        Ok([self.x.eval(&b)?, self.y.eval(&b)?])
    }

    fn regular_jets(&self, t: f64) -> Result<(UniJet, UniJet, f64)> {
        let (x, y) = self.jets(t)?;
        let speed_sq = x.d1 * x.d1 + y.d1 * y.d1;
        if speed_sq < EPS_REG * EPS_REG {
            return Err(Error::SingularPoint { speed_sq });
        }
        Ok((x, y, speed_sq))
    }

    pub fn speed(&self, t: f64) -> Result<f64> {
        Ok(self.regular_jets(t)?.2.sqrt())
    }

    pub fn frame(&self, t: f64) -> Result<UnitFrame> {
        let (x, y, _) = self.regular_jets(t)?;
        Ok(UnitFrame::from_direction(x.d1, y.d1))
    }

    /// `(x'y'' - y'x'') / (x'^2 + y'^2)^{3/2}`.
    pub fn curvature(&self, t: f64) -> Result<SignedCurvature> {
        let (x, y, s2) = self.regular_jets(t)?;
        Ok(SignedCurvature::left((x.d1 * y.d2 - y.d1 * x.d2) / s2.powf(1.5)))
    }

    pub fn sample(&self, t: f64) -> Result<CurveSample> {
        let (x, y, s2) = self.regular_jets(t)?;
        Ok(CurveSample {
            point: [x.v, y.v],
            frame: UnitFrame::from_direction(x.d1, y.d1),
            kappa: (x.d1 * y.d2 - y.d1 * x.d2) / s2.powf(1.5),
        })
    }

    pub fn arc_length(&self, t0: f64, t1: f64, rule: CompositeRule) -> Result<f64> {
        rule.integrate(t0, t1, |t| self.speed(t))
    }

    /// Table of arc length against parameter at `samples` evenly spaced
    /// parameter values.
    pub fn arclength_reparametrize(&self, t0: f64, t1: f64, samples: usize) -> Result<ArcLengthTable> {
        if !(t0 < t1) || samples < 2 {
            return Err(Error::InvalidInput("reparametrization needs t0 < t1 and two samples".into()));
        }
        let rule = CompositeRule::default();
        let mut rows = Vec::with_capacity(samples);
        let mut s = 0.0;
        let mut prev = t0;
        for i in 0..samples {
            let t = if i + 1 == samples { t1 } else { t0 + (t1 - t0) * i as f64 / (samples - 1) as f64 };
            if i > 0 {
                s += self.arc_length(prev, t, rule)?;
            }
            rows.push(ArcLengthRow { s, t, speed: self.speed(t)? });
            prev = t;
        }
        Ok(ArcLengthTable { curve: self.clone(), rows })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcLengthRow {
    pub s: f64,
    pub t: f64,
    /// `ds/dt`.
    pub speed: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArcLengthTable {
    curve: ParametricCurve,
    pub rows: Vec<ArcLengthRow>,
}

impl ArcLengthTable {
    pub fn total(&self) -> f64 {
        self.rows.last().map_or(0.0, |r| r.s)
    }

    /// Parameter value at arc length `s`, by Newton's method from the
    /// nearest tabulated row.
    pub fn t_at(&self, s: f64) -> Result<f64> {
        let idx = self.rows.partition_point(|r| r.s <= s).saturating_sub(1);
        let row = self.rows[idx];
        let rule = CompositeRule::default();
        let mut t = row.t;
        for _ in 0..50 {
            let err = row.s + self.curve.arc_length(row.t, t, rule)? - s;
            let step = err / self.curve.speed(t)?;
            t -= step;
            if step.abs() <= 1e-15 * (1.0 + t.abs()) {
                break;
            }
        }
        Ok(t)
    }

    /// Position at arc length `s`.
    pub fn point_at(&self, s: f64) -> Result<Point> {
        self.curve.point(self.t_at(s)?)
    }
}

/// `W(x, y) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImplicitCurve {
    pub w: Expr,
}

impl ImplicitCurve {
    pub fn parse(text: &str, constants: &HashMap<String, f64>) -> Result<ImplicitCurve> {
        Ok(ImplicitCurve { w: parse_in(text, constants, &[Var::X, Var::Y], "level set")? })
    }

    fn jet_on_curve(&self, x: f64, y: f64) -> Result<BiJet> {
        let w: BiJet = self.w.eval(&Bindings::xy(BiJet::var_u(x), BiJet::var_v(y)))?;
        let grad = w.du.hypot(w.dv);
        if w.v.abs() > 1e-9 * (1.0 + grad) {
            return Err(Error::NotOnCurve { residual: w.v.abs() });
        }
        if grad <= EPS_REG {
            return Err(Error::SingularGradient);
        }
        Ok(w)
    }

    fn numerator(w: &BiJet) -> f64 {
        w.duu * w.dv * w.dv - 2.0 * w.duv * w.du * w.dv + w.dvv * w.du * w.du
    }

    /// Frame whose normal is the unit gradient.
    pub fn frame(&self, x: f64, y: f64) -> Result<UnitFrame> {
        let w = self.jet_on_curve(x, y)?;
        Ok(UnitFrame::from_direction(w.dv, -w.du))
    }

    pub fn curvature(&self, x: f64, y: f64) -> Result<SignedCurvature> {
        let w = self.jet_on_curve(x, y)?;
        let num = Self::numerator(&w);
        let value = num.abs() / w.du.hypot(w.dv).powi(3);
        let orientation = if value <= EPS_REG {
            Orientation::Straight
        } else if num > 0.0 {
            Orientation::AgainstGradient
        } else {
            Orientation::AlongGradient
        };
        Ok(SignedCurvature { value, orientation })
    }

    pub fn sample(&self, x: f64, y: f64) -> Result<CurveSample> {
        let w = self.jet_on_curve(x, y)?;
        let g = w.du.hypot(w.dv);
        Ok(CurveSample {
            point: [x, y],
            frame: UnitFrame::from_direction(w.dv, -w.du),
            kappa: -Self::numerator(&w) / g.powi(3),
        })
    }
}

/// A plane curve in any of the three representations.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveDef {
    Graph(GraphCurve),
    Parametric(ParametricCurve),
    Implicit(ImplicitCurve),
}

/// Inverse circumradius of three points.
pub fn menger_curvature(p1: Point, p2: Point, p3: Point) -> Result<f64> {
    let d = |a: Point, b: Point| (a[0] - b[0]).hypot(a[1] - b[1]);
    let (a, b, c) = (d(p1, p2), d(p1, p3), d(p2, p3));
    if a == 0.0 || b == 0.0 || c == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    let twice_area = ((p2[0] - p1[0]) * (p3[1] - p1[1]) - (p3[0] - p1[0]) * (p2[1] - p1[1])).abs();
    Ok(2.0 * twice_area / (a * b * c))
}
