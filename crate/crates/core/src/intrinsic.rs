//! Curvature from the metric alone.
//!
//! [`MetricField`] supplies `E, F, G` with first and second partials,
//! either from user expressions in `(u, v)` or induced by a parametric
//! surface. On top of it sit the formula egregia, the flatness residual,
//! the curvature formulas for isothermal and geodesic polar coordinates,
//! and the isometry and egregium checks for surface pairs.

use std::collections::HashMap;

use crate::expr::{parse_list, parse_with_constants, Bindings, Expr, Var};
use crate::grid::Grid;
use crate::jets::{BiJet, JetError, Real};
use crate::surfaces::{FirstFundamentalForm, MetricScalars, ParametricSurface};
use crate::{Error, Result, EPS_REG};

const CHART: [Var; 4] = [Var::U, Var::V, Var::P, Var::Q];

/// Source of metric coefficients over a chart.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricField {
    Explicit { e: Expr, f: Expr, g: Expr },
    Induced(ParametricSurface),
}

impl MetricField {
    pub fn explicit(e: Expr, f: Expr, g: Expr) -> Result<MetricField> {
        if [&e, &f, &g].iter().any(|x| !x.uses_only(&CHART)) {
            return Err(Error::InvalidInput("metric coefficients are functions of u, v (or p, q)".into()));
        }
        Ok(MetricField::Explicit { e, f, g })
    }

    /// Parses `"E,F,G"`.
    pub fn parse(text: &str, constants: &HashMap<String, f64>) -> Result<MetricField> {
        let mut parts = parse_list(text, 3, constants)?.into_iter();
        let (e, f, g) = (parts.next().unwrap(), parts.next().unwrap(), parts.next().unwrap());
        MetricField::explicit(e, f, g)
    }

    /// `λ^2 (du^2 + dv^2)`.
    pub fn conformal(lambda: &Expr) -> MetricField {
        let sq = |e: &Expr| -> Expr {
            parse_with_constants(&format!("({e})^2"), &HashMap::new()).expect("valid square")
        };
        MetricField::Explicit { e: sq(lambda), f: Expr::constant(0.0), g: sq(lambda) }
    }

    /// `dp^2 + G dq^2`.
    pub fn geodesic_polar(g: &Expr) -> MetricField {
        MetricField::Explicit { e: Expr::constant(1.0), f: Expr::constant(0.0), g: g.clone() }
    }

    pub fn induced(surface: ParametricSurface) -> MetricField {
        MetricField::Induced(surface)
    }

    /// Coefficients as jets at `(u, v)`; positive definiteness is checked
    /// by the consumers.
    pub fn at(&self, u: f64, v: f64) -> Result<FirstFundamentalForm> {
        match self {
            MetricField::Explicit { e, f, g } => {
                let b = Bindings::chart(BiJet::var_u(u), BiJet::var_v(v));
                Ok(FirstFundamentalForm { e: e.eval(&b)?, f: f.eval(&b)?, g: g.eval(&b)? })
            }
            MetricField::Induced(s) => s.first_fundamental_form(u, v),
        }
    }

    /// Coefficients at a point where the metric must be positive definite.
    pub fn definite_at(&self, u: f64, v: f64) -> Result<FirstFundamentalForm> {
        let ff = match self.at(u, v) {
            Err(Error::DegenerateParametrization { .. }) => {
                return Err(Error::DegenerateMetric { u, v, det: 0.0 })
            }
            other => other?,
        };
        if !ff.is_positive_definite() {
            return Err(Error::DegenerateMetric { u, v, det: ff.det() });
        }
        Ok(ff)
    }
}

/// Numerator of the formula egregia, `4 (EG - F^2)^2 κ`.
fn egregia_numerator(ff: &FirstFundamentalForm) -> f64 {
    let (e, f, g) = (ff.e, ff.f, ff.g);
    let delta = ff.det();
    e.v * (e.dv * g.dv - 2.0 * f.du * g.dv + g.du * g.du)
        + f.v
            * (e.du * g.dv - e.dv * g.du - 2.0 * e.dv * f.dv + 4.0 * f.du * f.dv
                - 2.0 * f.du * g.du)
        + g.v * (e.du * g.du - 2.0 * e.du * f.dv + e.dv * e.dv)
        + 2.0 * delta * (-e.dvv + 2.0 * f.duv - g.duu)
}

fn check(ff: &FirstFundamentalForm, u: f64, v: f64) -> Result<f64> {
    let det = ff.det();
    if !(ff.e.v > 0.0 && det > EPS_REG) {
        return Err(Error::DegenerateMetric { u, v, det });
    }
    Ok(det)
}

/// The formula egregia evaluated on already computed jets.
pub fn egregia_from_jets(ff: &FirstFundamentalForm, u: f64, v: f64) -> Result<f64> {
    let det = check(ff, u, v)?;
    Ok(egregia_numerator(ff) / (4.0 * det * det))
}

/// Gaussian curvature through Gauss's auxiliary quantities `m, n`, a
/// second, independently arranged route to the same value.
pub fn curvature_via_auxiliaries(ff: &FirstFundamentalForm, u: f64, v: f64) -> Result<f64> {
    let det = check(ff, u, v)?;
    let MetricScalars { m: [m, m1, m2], n: [n, n1, n2] } = MetricScalars::from_form(ff);
    let second = -0.5 * ff.e.dvv + ff.f.duv - 0.5 * ff.g.duu;
    let top = second * det
        + ff.e.v * (n1 * n1 - n * n2)
        + ff.f.v * (n * m2 - 2.0 * m1 * n1 + m * n2)
        + ff.g.v * (m1 * m1 - m * m2);
    Ok(top / (det * det))
}

pub fn formula_egregia(metric: &MetricField, u: f64, v: f64) -> Result<f64> {
    egregia_from_jets(&metric.definite_at(u, v)?, u, v)
}

/// The flatness criterion's left-hand side; it vanishes exactly where
/// the metric is locally Euclidean.
pub fn flatness_residual(metric: &MetricField, u: f64, v: f64) -> Result<f64> {
    let ff = metric.definite_at(u, v)?;
    let (e, f, g) = (ff.e, ff.f, ff.g);
    Ok(e.v * (e.dv * g.dv - 2.0 * f.du * g.dv + g.du * g.du)
        + f.v * (e.du * g.dv - e.dv * g.du - 2.0 * e.dv * f.dv + 4.0 * f.du * f.dv - 2.0 * f.du * g.du)
        + g.v * (e.du * g.du - 2.0 * e.du * f.dv + e.dv * e.dv)
        + 2.0 * ff.det() * (-e.dvv + 2.0 * f.duv - g.duu))
}

fn domain(msg: &str) -> Error {
    JetError::Domain(msg.to_string()).into()
}

/// `-((log λ)_uu + (log λ)_vv) / λ^2`, for `ds^2 = λ^2 (du^2 + dv^2)`.
pub fn curvature_isothermal(lambda: &Expr, u: f64, v: f64) -> Result<f64> {
    let l: BiJet = lambda.eval(&Bindings::chart(BiJet::var_u(u), BiJet::var_v(v)))?;
    if !(l.v > 0.0) {
        return Err(domain("conformal factor must be positive"));
    }
    let log = l.ln()?;
    Ok(-(log.duu + log.dvv) / (l.v * l.v))
}

/// `-(√G)_pp / √G`, for `ds^2 = dp^2 + G dq^2`.
pub fn curvature_geodesic_polar(g: &Expr, p: f64, q: f64) -> Result<f64> {
    let gj: BiJet = g.eval(&Bindings::chart(BiJet::var_u(p), BiJet::var_v(q)))?;
    if !(gj.v > 0.0) {
        return Err(domain("G must be positive"));
    }
    let root = gj.sqrt()?;
    Ok(-root.duu / root.v)
}

/// Largest coefficient differences between two metrics on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MetricResiduals {
    pub de: f64,
    pub df: f64,
    pub dg: f64,
}

impl MetricResiduals {
    pub fn max(&self) -> f64 {
        self.de.max(self.df).max(self.dg)
    }
}

pub fn verify_isometry(a: &ParametricSurface, b: &ParametricSurface, grid: &Grid) -> Result<MetricResiduals> {
    let mut r = MetricResiduals::default();
    for (u, v) in grid.points() {
        let fa = a.first_fundamental_form(u, v)?.values();
        let fb = b.first_fundamental_form(u, v)?.values();
        r.de = r.de.max((fa[0] - fb[0]).abs());
        r.df = r.df.max((fa[1] - fb[1]).abs());
        r.dg = r.dg.max((fa[2] - fb[2]).abs());
    }
    Ok(r)
}

/// Intrinsic against extrinsic curvature at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureSample {
    pub u: f64,
    pub v: f64,
    pub intrinsic: f64,
    pub extrinsic: f64,
    pub defect: f64,
}

/// Compares the formula egregia on the induced metric with the
/// parametric curvature on a grid.
pub fn compare_curvatures(surface: &ParametricSurface, grid: &Grid) -> Result<Vec<CurvatureSample>> {
    grid.points()
        .map(|(u, v)| {
            let intrinsic = egregia_from_jets(&surface.first_fundamental_form(u, v)?, u, v)?;
            let extrinsic = surface.gauss_curvature(u, v)?;
            Ok(CurvatureSample { u, v, intrinsic, extrinsic, defect: (intrinsic - extrinsic).abs() })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EgregiumRow {
    pub u: f64,
    pub v: f64,
    /// Formula egregia on the first surface's induced metric.
    pub intrinsic: f64,
    pub extrinsic: f64,
    pub intrinsic_other: f64,
    pub extrinsic_other: f64,
    /// Spread of the four values.
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EgregiumReport {
    pub rows: Vec<EgregiumRow>,
    pub residuals: MetricResiduals,
    pub max_defect: f64,
    pub passed: bool,
}

/// Checks that two surfaces sharing a chart are isometric and, if so,
/// that all four curvature evaluations agree pointwise.
pub fn egregium_check(
    a: &ParametricSurface,
    b: &ParametricSurface,
    grid: &Grid,
    tol_metric: f64,
    tol_kappa: f64,
) -> Result<EgregiumReport> {
    if !(tol_metric > 0.0 && tol_kappa > 0.0) {
        return Err(Error::InvalidInput("tolerances must be positive".into()));
    }
    let residuals = verify_isometry(a, b, grid)?;
    if residuals.max() > tol_metric {
        return Err(Error::NotIsometric { de: residuals.de, df: residuals.df, dg: residuals.dg });
    }
    let mut rows = Vec::with_capacity(grid.len());
    for (u, v) in grid.points() {
        let vals = [
            egregia_from_jets(&a.first_fundamental_form(u, v)?, u, v)?,
            a.gauss_curvature(u, v)?,
            egregia_from_jets(&b.first_fundamental_form(u, v)?, u, v)?,
            b.gauss_curvature(u, v)?,
        ];
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        rows.push(EgregiumRow {
            u,
            v,
            intrinsic: vals[0],
            extrinsic: vals[1],
            intrinsic_other: vals[2],
            extrinsic_other: vals[3],
            defect: hi - lo,
        });
    }
    let max_defect = rows.iter().map(|r| r.defect).fold(0.0, f64::max);
    Ok(EgregiumReport { rows, residuals, max_defect, passed: max_defect <= tol_kappa })
}
