use std::f64::consts::PI;
use std::io::Write;

use egregium::catalog::{self, Kind};
use egregium::curves::{CurveDef, CurveSample, GraphCurve, ImplicitCurve, ParametricCurve};
use egregium::expr::{parse_list, Var};
use egregium::geodesics::{clairaut_drift, integrate_geodesic, triangle_excess, GeodesicState, Shooting};
use egregium::grid::{parse_resolution, Grid};
use egregium::intrinsic::{compare_curvatures, egregium_check, flatness_residual, formula_egregia};
use egregium::quad::{total_curvature, Region};
use egregium::table::{render_json, Table, CSV_SCHEMA};
use serde_json::{json, Value};

use crate::input::{self, usage, CliResult};
use crate::{
    CatalogArgs, Chart, Command, CurveArgs, EgregiaArgs, FlatnessArgs, Format, GaussBonnetArgs, GeodesicArgs,
    Output, SurfaceArgs, TriangleArgs,
};

pub fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Curve(a) => curve(a),
        Command::Surface(a) => surface(a),
        Command::Egregia(a) => egregia(a),
        Command::Flatness(a) => flatness(a),
        Command::Gaussbonnet(a) => gauss_bonnet(a),
        Command::Triangle(a) => triangle(a),
        Command::Geodesic(a) => geodesic(a),
        Command::Catalog(a) => list_catalog(a),
    }
}

fn emit_text(out: &Output, text: &str) -> CliResult<()> {
    match &out.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit(out: &Output, table: &Table) -> CliResult<()> {
    let text = match out.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    emit_text(out, &text)
}

fn grid(chart: &Chart, ranges: [(f64, f64); 2]) -> CliResult<Grid> {
    let (nu, nv) = parse_resolution(&chart.grid)?;
    Ok(Grid::new(ranges[0], nu, ranges[1], nv)?)
}

fn curve_row(param: f64, s: &CurveSample) -> Vec<f64> {
    let CurveSample { point, frame, kappa } = s;
    vec![param, point[0], point[1], frame.tangent[0], frame.tangent[1], frame.normal[0], frame.normal[1], *kappa]
}

fn curve(args: CurveArgs) -> CliResult<()> {
    let consts = input::constants(&args.constants)?;
    let given = [args.catalog.is_some(), args.graph.is_some(), args.param.is_some(), args.implicit.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return usage("exactly one of --catalog, --graph, --param, --implicit is required");
    }
    let mut default_range = (-1.0, 1.0);
    let def = if let Some(name) = &args.catalog {
        let entry = input::lookup(name, &[Kind::Curve])?;
        default_range = entry.range[0];
        entry.curve_forms(&entry.constants(&consts))?.remove(0)
    } else if let Some(f) = &args.graph {
        CurveDef::Graph(GraphCurve::parse(f, &consts)?)
    } else if let Some(text) = &args.param {
        let [x, y]: [_; 2] = parse_list(text, 2, &consts)?.try_into().expect("two expressions");
        if !(x.uses_only(&[Var::T]) && y.uses_only(&[Var::T])) {
            return usage("parametric curve coordinates may only use t");
        }
        CurveDef::Parametric(ParametricCurve { x, y })
    } else {
        CurveDef::Implicit(ImplicitCurve::parse(args.implicit.as_deref().unwrap_or_default(), &consts)?)
    };

    // `param` is the abscissa for graphs, t for parametric curves and the
    // point index for level sets.
    let mut table = Table::new(["param", "x", "y", "tx", "ty", "nx", "ny", "kappa"]);
    if let CurveDef::Implicit(c) = &def {
        let Some(text) = &args.points else {
            return usage("--implicit needs --points on the level set");
        };
        for (i, [x, y]) in input::points(text, &consts)?.into_iter().enumerate() {
            table.push(curve_row(i as f64, &c.sample(x, y)?));
        }
    } else {
        let (lo, hi) = args.range.as_deref().map_or(Ok(default_range), |t| input::range(t, &consts))?;
        let axis = egregium::grid::Axis::new(lo, hi, args.n)?;
        for t in axis.values() {
            let sample = match &def {
                CurveDef::Graph(c) => c.sample(t)?,
                CurveDef::Parametric(c) => c.sample(t)?,
                CurveDef::Implicit(_) => unreachable!("handled above"),
            };
            table.push(curve_row(t, &sample));
        }
    }
    emit(&args.out, &table)
}

fn surface(args: SurfaceArgs) -> CliResult<()> {
    let consts = input::constants(&args.constants)?;
    let r = input::surface(&args.source, &consts)?;
    let ranges = input::chart_ranges(&args.chart.range_u, &args.chart.range_v, r.entry, &consts)?;
    let grid = grid(&args.chart, ranges)?;
    let mut table =
        Table::new(["u", "v", "x", "y", "z", "X", "Y", "Z", "E", "F", "G", "kappa", "k_min", "k_max", "mean"]);
    let s = &r.surface;
    for (u, v) in grid.points() {
        let [x, y, z] = s.point(u, v)?;
        let [nx, ny, nz] = s.normal(u, v)?.unit;
        let [e, f, g] = s.first_fundamental_form(u, v)?.values();
        let pc = s.principal_curvatures(u, v)?;
        let kappa = s.gauss_curvature(u, v)?;
        table.push(vec![u, v, x, y, z, nx, ny, nz, e, f, g, kappa, pc.k_min, pc.k_max, pc.mean()]);
    }
    emit(&args.out, &table)
}

fn egregia(args: EgregiaArgs) -> CliResult<()> {
    let consts = input::constants(&args.constants)?;
    if !(args.tol_metric > 0.0 && args.tol_kappa > 0.0) {
        return usage("tolerances must be positive");
    }
    let m = input::metric(&args.source, &consts)?;
    let ranges = input::chart_ranges(&args.chart.range_u, &args.chart.range_v, m.entry, &consts)?;
    let grid = grid(&args.chart, ranges)?;

    if let Some(other) = &args.other {
        let Some(a) = &m.surface else {
            return usage("--other compares two surfaces; the first input is a bare metric");
        };
        let entry = input::lookup(other, &[Kind::Surface])?;
        let b = entry.parametric(&entry.constants(&consts))?;
        let report = egregium_check(a, &b, &grid, args.tol_metric, args.tol_kappa)?;
        let mut table = Table::new(["u", "v", "kappa_intrinsic", "kappa_extrinsic", "kappa_intrinsic_other", "kappa_extrinsic_other", "defect"]);
        for row in &report.rows {
            table.push(vec![row.u, row.v, row.intrinsic, row.extrinsic, row.intrinsic_other, row.extrinsic_other, row.defect]);
        }
        table.summarize("max_metric_residual", report.residuals.max());
        table.summarize("max_defect", report.max_defect);
        table.summarize("verdict", if report.passed { "PASS" } else { "FAIL" });
        return emit(&args.out, &table);
    }

    let mut table;
    if let Some(s) = &m.surface {
        table = Table::new(["u", "v", "kappa_intrinsic", "kappa_extrinsic", "defect"]);
        let mut worst: f64 = 0.0;
        for c in compare_curvatures(s, &grid)? {
            worst = worst.max(c.defect);
            table.push(vec![c.u, c.v, c.intrinsic, c.extrinsic, c.defect]);
        }
        table.summarize("max_defect", worst);
        table.summarize("verdict", if worst <= args.tol_kappa { "PASS" } else { "FAIL" });
    } else {
        table = Table::new(["u", "v", "kappa_intrinsic"]);
        for (u, v) in grid.points() {
            table.push(vec![u, v, formula_egregia(&m.metric, u, v)?]);
        }
    }
    emit(&args.out, &table)
}

fn flatness(args: FlatnessArgs) -> CliResult<()> {
    let consts = input::constants(&args.constants)?;
    if !(args.tol > 0.0) {
        return usage("--tol must be positive");
    }
    let m = input::metric(&args.source, &consts)?;
    let ranges = input::chart_ranges(&args.chart.range_u, &args.chart.range_v, m.entry, &consts)?;
    let grid = grid(&args.chart, ranges)?;
    let mut table = Table::new(["u", "v", "residual"]);
    let mut worst: f64 = 0.0;
    for (u, v) in grid.points() {
        let r = flatness_residual(&m.metric, u, v)?;
        worst = worst.max(r.abs());
        table.push(vec![u, v, r]);
    }
    table.summarize("max_residual", worst);
    table.summarize("tolerance", args.tol);
    table.summarize("verdict", if worst <= args.tol { "FLAT" } else { "NOT FLAT" });
    emit(&args.out, &table)
}

fn gauss_bonnet(args: GaussBonnetArgs) -> CliResult<()> {
    let consts = input::constants(&args.constants)?;
    let m = input::metric(&args.source, &consts)?;
    let chart = m.entry.and_then(|e| e.chart);
    let fallback = |i: usize| chart.map(|c| c[i]).or_else(|| m.entry.and_then(|e| e.range.get(i).copied()));
    let pick = |flag: &Option<String>, i: usize| -> CliResult<(f64, f64)> {
        match (flag, fallback(i)) {
            (Some(t), _) => input::range(t, &consts),
            (None, Some(r)) => Ok(r),
            (None, None) => usage("--range-u and --range-v are required without a catalog entry"),
        }
    };
    let (u, v) = (pick(&args.range_u, 0)?, pick(&args.range_v, 1)?);
    if !(args.cutoff >= 0.0) || 2.0 * args.cutoff >= u.1 - u.0 {
        return usage("--cutoff must be non-negative and smaller than half the first range");
    }
    let region = Region::rect((u.0 + args.cutoff, u.1 - args.cutoff), v)?;
    let total = total_curvature(&m.metric, &region, args.order)?;
    let mut table = Table::new(["total", "error_estimate", "total_over_2pi"]);
    table.push(vec![total.value, total.error_estimate, total.value / (2.0 * PI)]);
    emit(&args.out, &table)
}

fn triangle(args: TriangleArgs) -> CliResult<()> {
    let consts = input::constants(&args.constants)?;
    let m = input::metric(&args.source, &consts)?;
    let vertices = [input::pair(&args.v1, &consts)?, input::pair(&args.v2, &consts)?, input::pair(&args.v3, &consts)?];
    if !(args.tol > 0.0 && args.step > 0.0) {
        return usage("--tol and --step must be positive");
    }
    let opts = Shooting { tol: args.tol, max_iterations: args.max_iterations, step: args.step };
    let t = triangle_excess(&m.metric, vertices, opts, args.order)?;
    let mut table = Table::new(["u", "v", "angle", "side_length"]);
    for i in 0..3 {
        table.push(vec![t.vertices[i][0], t.vertices[i][1], t.angles[i], t.sides[i].length()]);
    }
    table.summarize("angle_sum", t.angles.iter().sum::<f64>());
    table.summarize("excess", t.excess);
    table.summarize("integral", t.integral);
    table.summarize("integral_error", t.integral_error);
    table.summarize("difference", t.excess - t.integral);
    emit(&args.out, &table)
}

fn geodesic(args: GeodesicArgs) -> CliResult<()> {
    let consts = input::constants(&args.constants)?;
    let m = input::metric(&args.source, &consts)?;
    let [u, v] = input::pair(&args.start, &consts)?;
    let [du, dv] = input::pair(&args.dir, &consts)?;
    if args.every == 0 {
        return usage("--every must be at least 1");
    }
    let path = integrate_geodesic(&m.metric, GeodesicState::new(u, v, du, dv), args.length, args.step)?;
    let mut table = Table::new(["s", "u", "v", "du", "dv"]);
    let last = path.states.len() - 1;
    for (i, s) in path.states.iter().enumerate() {
        if i % args.every == 0 || i == last {
            table.push(vec![path.arclength(i), s.u, s.v, s.pu, s.pv]);
        }
    }
    table.summarize("length", path.length());
    table.summarize("energy_drift", path.energy_drift);
    if let (Some(surface), Some(entry)) = (&m.surface, m.entry) {
        if entry.revolution {
            table.summarize("clairaut_drift", clairaut_drift(surface, &path)?);
        }
    }
    emit(&args.out, &table)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn list_catalog(args: CatalogArgs) -> CliResult<()> {
    let entries: Vec<_> =
        catalog::entries().iter().filter(|e| args.kind.as_deref().is_none_or(|k| e.kind.name() == k)).collect();
    let params = |e: &catalog::CatalogEntry| {
        e.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    };
    let text = match args.out.format {
        Format::Csv => {
            let mut s = format!("{CSV_SCHEMA}\nname,kind,params,kappa,description\n");
            for e in &entries {
                let fields = [e.name, e.kind.name(), &params(e), e.kappa.unwrap_or(""), e.description];
                let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
                s.push_str(&line.join(","));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "kind": e.kind.name(),
                        "params": e.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
                        "kappa": e.kappa,
                        "description": e.description,
                    })
                })
                .collect();
            render_json(&json!({ "rows": rows, "summary": { "count": entries.len() } }))
        }
    };
    emit_text(&args.out, &text)
}
