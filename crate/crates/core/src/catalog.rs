//! Named curves, surfaces and metrics with their parameters, safe
//! sampling ranges and, where known, closed-form curvature.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::curves::{CurveDef, GraphCurve, ImplicitCurve, ParametricCurve};
use crate::expr::{parse_with_constants, Expr};
use crate::intrinsic::MetricField;
use crate::surfaces::{GraphSurface, ImplicitSurface, ParametricSurface, SurfaceDef};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Curve,
    Surface,
    Metric,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Curve => "curve",
            Kind::Surface => "surface",
            Kind::Metric => "metric",
        }
    }
}

/// One textual representation of a catalog member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Form {
    CurveGraph(&'static str),
    CurveParametric(&'static str, &'static str),
    CurveImplicit(&'static str),
    SurfaceGraph(&'static str),
    SurfaceParametric([&'static str; 3]),
    SurfaceImplicit(&'static str),
    Metric([&'static str; 3]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: Kind,
    pub description: &'static str,
    /// Named constants and their defaults.
    pub params: &'static [(&'static str, f64)],
    /// The first form is the primary one used for grid evaluation.
    pub forms: &'static [Form],
    /// Sampling range of the primary form: one interval for curves, two
    /// for surfaces and metrics.
    pub range: &'static [(f64, f64)],
    /// Whole chart of a closed surface, for total-curvature integrals.
    pub chart: Option<[(f64, f64); 2]>,
    /// Closed-form curvature in the primary form's variables.
    pub kappa: Option<&'static str>,
    /// Surface of revolution about the z axis with `q` as the angle.
    pub revolution: bool,
}

const TAU: f64 = 2.0 * PI;

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "circle",
        kind: Kind::Curve,
        description: "circle of radius R about the origin",
        params: &[("R", 1.0)],
        forms: &[
            Form::CurveParametric("R*cos(t)", "R*sin(t)"),
            Form::CurveGraph("sqrt(R^2-x^2)"),
            Form::CurveImplicit("x^2+y^2-R^2"),
        ],
        range: &[(0.0, TAU)],
        chart: None,
        kappa: Some("1/R"),
        revolution: false,
    },
    CatalogEntry {
        name: "circle2",
        kind: Kind::Curve,
        description: "circle of radius 2",
        params: &[],
        forms: &[
            Form::CurveParametric("2*cos(t)", "2*sin(t)"),
            Form::CurveGraph("sqrt(4-x^2)"),
            Form::CurveImplicit("x^2+y^2-4"),
        ],
        range: &[(0.0, TAU)],
        chart: None,
        kappa: Some("0.5"),
        revolution: false,
    },
    CatalogEntry {
        name: "ellipse",
        kind: Kind::Curve,
        description: "ellipse with semi-axes a and b",
        params: &[("a", 2.0), ("b", 1.0)],
        forms: &[
            Form::CurveParametric("a*cos(t)", "b*sin(t)"),
            Form::CurveGraph("b*sqrt(1-x^2/a^2)"),
            Form::CurveImplicit("x^2/a^2+y^2/b^2-1"),
        ],
        range: &[(0.0, TAU)],
        chart: None,
        kappa: Some("a*b/(a^2*sin(t)^2+b^2*cos(t)^2)^1.5"),
        revolution: false,
    },
    CatalogEntry {
        name: "parabola",
        kind: Kind::Curve,
        description: "parabola y = x^2",
        params: &[],
        forms: &[
            Form::CurveGraph("x^2"),
            Form::CurveParametric("t", "t^2"),
            Form::CurveImplicit("y-x^2"),
        ],
        range: &[(-1.0, 1.0)],
        chart: None,
        kappa: Some("2/(1+4*x^2)^1.5"),
        revolution: false,
    },
    CatalogEntry {
        name: "line",
        kind: Kind::Curve,
        description: "straight line y = 2x + 1",
        params: &[],
        forms: &[
            Form::CurveGraph("2*x+1"),
            Form::CurveParametric("t", "2*t+1"),
            Form::CurveImplicit("2*x-y+1"),
        ],
        range: &[(-1.0, 1.0)],
        chart: None,
        kappa: Some("0"),
        revolution: false,
    },
    CatalogEntry {
        name: "plane",
        kind: Kind::Surface,
        description: "the plane z = 0",
        params: &[],
        forms: &[Form::SurfaceParametric(["p", "q", "0"]), Form::SurfaceGraph("0"), Form::SurfaceImplicit("z")],
        range: &[(-1.0, 1.0), (-1.0, 1.0)],
        chart: None,
        kappa: Some("0"),
        revolution: false,
    },
    CatalogEntry {
        name: "sphere",
        kind: Kind::Surface,
        description: "sphere of radius R, colatitude p and longitude q",
        params: &[("R", 1.0)],
        forms: &[
            Form::SurfaceParametric(["R*sin(p)*cos(q)", "R*sin(p)*sin(q)", "R*cos(p)"]),
            Form::SurfaceGraph("sqrt(R^2-x^2-y^2)"),
            Form::SurfaceImplicit("x^2+y^2+z^2-R^2"),
        ],
        range: &[(0.1, PI - 0.1), (0.0, TAU)],
        chart: Some([(0.0, PI), (0.0, TAU)]),
        kappa: Some("1/R^2"),
        revolution: true,
    },
    CatalogEntry {
        name: "ellipsoid",
        kind: Kind::Surface,
        description: "ellipsoid with semi-axes a, b, c",
        params: &[("a", 2.0), ("b", 1.5), ("c", 1.0)],
        forms: &[
            Form::SurfaceParametric(["a*sin(p)*cos(q)", "b*sin(p)*sin(q)", "c*cos(p)"]),
            Form::SurfaceGraph("c*sqrt(1-x^2/a^2-y^2/b^2)"),
            Form::SurfaceImplicit("x^2/a^2+y^2/b^2+z^2/c^2-1"),
        ],
        range: &[(0.1, PI - 0.1), (0.0, TAU)],
        chart: Some([(0.0, PI), (0.0, TAU)]),
        kappa: Some(
            "1/(a^2*b^2*c^2*((sin(p)*cos(q))^2/a^2+(sin(p)*sin(q))^2/b^2+cos(p)^2/c^2)^2)",
        ),
        revolution: false,
    },
    CatalogEntry {
        name: "cylinder",
        kind: Kind::Surface,
        description: "cylinder of radius R, arc length p around the axis and height q",
        params: &[("R", 1.0)],
        forms: &[
            Form::SurfaceParametric(["R*cos(p/R)", "R*sin(p/R)", "q"]),
            Form::SurfaceImplicit("x^2+y^2-R^2"),
        ],
        range: &[(0.0, TAU), (-1.0, 1.0)],
        chart: None,
        kappa: Some("0"),
        revolution: false,
    },
    CatalogEntry {
        name: "cone",
        kind: Kind::Surface,
        description: "cone with opening ratio c, distance p from the apex and angle q",
        params: &[("c", 0.5)],
        forms: &[Form::SurfaceParametric(["c*p*cos(q)", "c*p*sin(q)", "p*sqrt(1-c^2)"])],
        range: &[(0.1, 2.0), (0.0, TAU)],
        chart: None,
        kappa: Some("0"),
        revolution: true,
    },
    CatalogEntry {
        name: "torus",
        kind: Kind::Surface,
        description: "torus with centre-line radius Rmaj and tube radius r",
        params: &[("Rmaj", 2.0), ("r", 1.0)],
        forms: &[Form::SurfaceParametric([
            "(Rmaj+r*cos(p))*cos(q)",
            "(Rmaj+r*cos(p))*sin(q)",
            "r*sin(p)",
        ])],
        range: &[(0.0, TAU), (0.0, TAU)],
        chart: Some([(0.0, TAU), (0.0, TAU)]),
        kappa: Some("cos(p)/(r*(Rmaj+r*cos(p)))"),
        revolution: true,
    },
    CatalogEntry {
        name: "paraboloid",
        kind: Kind::Surface,
        description: "paraboloid z = (x^2 + y^2)/2",
        params: &[],
        forms: &[Form::SurfaceGraph("(x^2+y^2)/2"), Form::SurfaceImplicit("z-(x^2+y^2)/2")],
        range: &[(-1.0, 1.0), (-1.0, 1.0)],
        chart: None,
        kappa: Some("1/(1+x^2+y^2)^2"),
        revolution: false,
    },
    CatalogEntry {
        name: "saddle",
        kind: Kind::Surface,
        description: "saddle z = xy",
        params: &[],
        forms: &[Form::SurfaceGraph("x*y"), Form::SurfaceImplicit("z-x*y")],
        range: &[(-1.0, 1.0), (-1.0, 1.0)],
        chart: None,
        kappa: Some("-1/(1+x^2+y^2)^2"),
        revolution: false,
    },
    CatalogEntry {
        name: "monkey_saddle",
        kind: Kind::Surface,
        description: "monkey saddle z = x^3 - 3xy^2",
        params: &[],
        forms: &[Form::SurfaceGraph("x^3-3*x*y^2"), Form::SurfaceImplicit("z-x^3+3*x*y^2")],
        range: &[(-1.0, 1.0), (-1.0, 1.0)],
        chart: None,
        kappa: Some("-36*(x^2+y^2)/(1+9*(x^2+y^2)^2)^2"),
        revolution: false,
    },
    CatalogEntry {
        name: "catenoid",
        kind: Kind::Surface,
        description: "catenoid, isometric to the helicoid",
        params: &[],
        forms: &[Form::SurfaceParametric(["cosh(p)*cos(q)", "cosh(p)*sin(q)", "p"])],
        range: &[(-1.0, 1.0), (0.0, TAU)],
        chart: None,
        kappa: Some("-1/cosh(p)^4"),
        revolution: true,
    },
    CatalogEntry {
        name: "helicoid",
        kind: Kind::Surface,
        description: "helicoid, isometric to the catenoid",
        params: &[],
        forms: &[Form::SurfaceParametric(["sinh(p)*cos(q)", "sinh(p)*sin(q)", "q"])],
        range: &[(-1.0, 1.0), (0.0, TAU)],
        chart: None,
        kappa: Some("-1/cosh(p)^4"),
        revolution: false,
    },
    CatalogEntry {
        name: "flat",
        kind: Kind::Metric,
        description: "Euclidean metric du^2 + dv^2",
        params: &[],
        forms: &[Form::Metric(["1", "0", "1"])],
        range: &[(-1.0, 1.0), (-1.0, 1.0)],
        chart: None,
        kappa: Some("0"),
        revolution: false,
    },
    CatalogEntry {
        name: "sphere_metric",
        kind: Kind::Metric,
        description: "round metric of the sphere of radius R in colatitude and longitude",
        params: &[("R", 1.0)],
        forms: &[Form::Metric(["R^2", "0", "R^2*sin(u)^2"])],
        range: &[(0.1, PI - 0.1), (0.0, TAU)],
        chart: Some([(0.0, PI), (0.0, TAU)]),
        kappa: Some("1/R^2"),
        revolution: false,
    },
    CatalogEntry {
        name: "hyperbolic_disk",
        kind: Kind::Metric,
        description: "Poincare disk, curvature -1",
        params: &[],
        forms: &[Form::Metric(["4/(1-u^2-v^2)^2", "0", "4/(1-u^2-v^2)^2"])],
        range: &[(-0.5, 0.5), (-0.5, 0.5)],
        chart: None,
        kappa: Some("-1"),
        revolution: false,
    },
    CatalogEntry {
        name: "hyperbolic_exp",
        kind: Kind::Metric,
        description: "du^2 + exp(2u) dv^2, curvature -1",
        params: &[],
        forms: &[Form::Metric(["1", "0", "exp(2*u)"])],
        range: &[(-1.0, 1.0), (-1.0, 1.0)],
        chart: None,
        kappa: Some("-1"),
        revolution: false,
    },
    CatalogEntry {
        name: "cone_metric",
        kind: Kind::Metric,
        description: "du^2 + c^2 u^2 dv^2, flat away from the apex",
        params: &[("c", 0.5)],
        forms: &[Form::Metric(["1", "0", "c^2*u^2"])],
        range: &[(0.1, 2.0), (0.0, TAU)],
        chart: None,
        kappa: Some("0"),
        revolution: false,
    },
    CatalogEntry {
        name: "stereographic_sphere",
        kind: Kind::Metric,
        description: "sphere of radius R in stereographic coordinates",
        params: &[("R", 1.0)],
        forms: &[Form::Metric([
            "(2*R^2/(R^2+u^2+v^2))^2",
            "0",
            "(2*R^2/(R^2+u^2+v^2))^2",
        ])],
        range: &[(-1.0, 1.0), (-1.0, 1.0)],
        chart: None,
        kappa: Some("1/R^2"),
        revolution: false,
    },
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn lookup(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown catalog entry '{name}'")))
}

impl CatalogEntry {
    /// Defaults overridden by `overrides`; names the entry does not
    /// declare are ignored.
    pub fn constants(&self, overrides: &HashMap<String, f64>) -> HashMap<String, f64> {
        self.params
            .iter()
            .map(|&(k, d)| (k.to_string(), overrides.get(k).copied().unwrap_or(d)))
            .collect()
    }

    pub fn curve_forms(&self, consts: &HashMap<String, f64>) -> Result<Vec<CurveDef>> {
        self.forms
            .iter()
            .filter_map(|f| match *f {
                Form::CurveGraph(t) => Some(GraphCurve::parse(t, consts).map(CurveDef::Graph)),
                Form::CurveParametric(x, y) => {
                    Some(ParametricCurve::parse(x, y, consts).map(CurveDef::Parametric))
                }
                Form::CurveImplicit(w) => Some(ImplicitCurve::parse(w, consts).map(CurveDef::Implicit)),
                _ => None,
            })
            .collect()
    }

    pub fn surface_forms(&self, consts: &HashMap<String, f64>) -> Result<Vec<SurfaceDef>> {
        self.forms
            .iter()
            .filter_map(|f| match *f {
                Form::SurfaceGraph(t) => Some(GraphSurface::parse(t, consts).map(SurfaceDef::Graph)),
                Form::SurfaceParametric(c) => {
                    Some(ParametricSurface::parse(c, consts).map(SurfaceDef::Parametric))
                }
                Form::SurfaceImplicit(w) => {
                    Some(ImplicitSurface::parse(w, consts).map(SurfaceDef::Implicit))
                }
                _ => None,
            })
            .collect()
    }

    /// The primary surface, in parametric form.
    pub fn parametric(&self, consts: &HashMap<String, f64>) -> Result<ParametricSurface> {
        self.surface_forms(consts)?
            .first()
            .and_then(SurfaceDef::as_parametric)
            .ok_or_else(|| Error::InvalidInput(format!("'{}' is not a surface", self.name)))
    }

    /// Metric entries directly; surface entries through their induced
    /// metric.
    pub fn metric(&self, consts: &HashMap<String, f64>) -> Result<MetricField> {
        match self.forms.first() {
            Some(Form::Metric([e, f, g])) => MetricField::explicit(
                parse_with_constants(e, consts)?,
                parse_with_constants(f, consts)?,
                parse_with_constants(g, consts)?,
            ),
            _ if self.kind == Kind::Surface => Ok(MetricField::induced(self.parametric(consts)?)),
            _ => Err(Error::InvalidInput(format!("'{}' defines no metric", self.name))),
        }
    }

    pub fn kappa_expr(&self, consts: &HashMap<String, f64>) -> Result<Option<Expr>> {
        self.kappa.map(|k| parse_with_constants(k, consts).map_err(Error::from)).transpose()
    }
}
