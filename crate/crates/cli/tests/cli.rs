use std::collections::HashMap;
use std::f64::consts::PI;
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn egregium(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_egregium")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
    summary: HashMap<String, String>,
}

impl Csv {
    fn column(&self, name: &str) -> Vec<f64> {
        let i = self.header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[i]).collect()
    }

    fn summary_num(&self, key: &str) -> f64 {
        self.summary[key].parse().unwrap()
    }
}

fn csv(args: &[&str]) -> Csv {
    let run = egregium(args);
    assert_eq!(run.code, 0, "{args:?} failed: {}", run.stderr);
    let mut lines = run.stdout.lines();
    assert_eq!(lines.next(), Some("# egregium-csv v1"));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let mut rows = Vec::new();
    let mut summary = HashMap::new();
    for line in lines {
        if let Some(kv) = line.strip_prefix("# summary ") {
            let (k, v) = kv.split_once('=').unwrap();
            summary.insert(k.to_string(), v.to_string());
        } else {
            rows.push(line.split(',').map(|c| c.parse().unwrap()).collect());
        }
    }
    Csv { header, rows, summary }
}

fn all_near(values: &[f64], target: f64, tol: f64) -> bool {
    !values.is_empty() && values.iter().all(|v| (v - target).abs() <= tol)
}

// Unit-sphere octant vertices (1,0,0), (0,1,0), (0,0,1) rotated off the
// poles, in colatitude/longitude.
const OCTANT: [&str; 3] = [
    "0.6154797086703874,0",
    "1.9913306620788618,-0.8860771237926137",
    "1.9913306620788618,0.8860771237926137",
];

#[test]
fn circle_curvature_is_constant() {
    let t = csv(&["curve", "--catalog", "circle2", "--range", "0:6.28318", "--n", "100"]);
    assert_eq!(t.rows.len(), 100);
    assert!(all_near(&t.column("kappa"), 0.5, 1e-12));
    assert_eq!(t.header, ["param", "x", "y", "tx", "ty", "nx", "ny", "kappa"]);
}

#[test]
fn parabola_vertex_curvature() {
    let t = csv(&["curve", "--graph", "x^2", "--range", "-1:1", "--n", "3"]);
    assert_eq!(t.rows[1][0], 0.0);
    assert_eq!(t.column("kappa")[1], 2.0);
}

#[test]
fn parametric_and_implicit_curves() {
    let t = csv(&["curve", "--param", "R*cos(t), R*sin(t)", "--radius", "4", "--range", "0:pi", "--n", "7"]);
    assert!(all_near(&t.column("kappa"), 0.25, 1e-12));
    let t = csv(&["curve", "--implicit", "x^2+y^2-4", "--points", "2,0;0,-2;-2,0"]);
    assert!(all_near(&t.column("kappa").iter().map(|k| k.abs()).collect::<Vec<_>>(), 0.5, 1e-12));
}

#[test]
fn parse_error_reports_offset() {
    let run = egregium(&["curve", "--graph", "sin("]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("offset 4"), "{}", run.stderr);
}

#[test]
fn sphere_surface_table() {
    let t = csv(&["surface", "--catalog", "sphere", "--radius", "2", "--grid", "10x10"]);
    assert_eq!(t.rows.len(), 100);
    assert_eq!(
        t.header,
        ["u", "v", "x", "y", "z", "X", "Y", "Z", "E", "F", "G", "kappa", "k_min", "k_max", "mean"]
    );
    assert!(all_near(&t.column("kappa"), 0.25, 1e-12));
    assert!(all_near(&t.column("k_min"), 0.5, 1e-9) && all_near(&t.column("k_max"), 0.5, 1e-9));
}

#[test]
fn plane_has_no_curvature() {
    let t = csv(&["surface", "--catalog", "plane", "--grid", "5x5"]);
    for col in ["kappa", "k_min", "k_max"] {
        assert!(t.column(col).iter().all(|&k| k == 0.0), "{col}");
    }
}

#[test]
fn torus_outer_equator() {
    let t = csv(&["surface", "--catalog", "torus", "--Rmaj", "2", "--r", "1", "--grid", "20x20"]);
    let (u, k) = (t.column("u"), t.column("kappa"));
    let outer: Vec<f64> = u.iter().zip(&k).filter(|(u, _)| **u == 0.0).map(|(_, k)| *k).collect();
    assert_eq!(outer.len(), 20);
    assert!(all_near(&outer, 1.0 / 3.0, 1e-12));
}

#[test]
fn surface_rejects_level_sets() {
    assert_eq!(egregium(&["surface", "--implicit", "x^2+y^2+z^2-1"]).code, 2);
}

#[test]
fn egregia_examples() {
    let t = csv(&["egregia", "--catalog", "sphere", "--radius", "2", "--grid", "20x20"]);
    assert!(t.summary_num("max_defect") <= 1e-8);
    assert!(all_near(&t.column("kappa_intrinsic"), 0.25, 1e-9));
    let t = csv(&["egregia", "--metric", "1,0,1", "--grid", "5x5"]);
    assert!(t.column("kappa_intrinsic").iter().all(|&k| k == 0.0));
    let t = csv(&["egregia", "--metric", "1,0,exp(2*u)", "--grid", "5x5"]);
    assert!(all_near(&t.column("kappa_intrinsic"), -1.0, 1e-9));
}

#[test]
fn egregia_compares_isometric_surfaces() {
    let t = csv(&["egregia", "--catalog", "catenoid", "--other", "helicoid", "--grid", "8x8"]);
    assert_eq!(t.summary["verdict"], "PASS");
    assert!(t.summary_num("max_metric_residual") <= 1e-10);
    let run = egregium(&["egregia", "--catalog", "catenoid", "--other", "sphere", "--grid", "4x4"]);
    assert_eq!(run.code, 3, "{}", run.stderr);
}

#[test]
fn flatness_verdicts() {
    for (metric, verdict) in [("cone_metric", "FLAT"), ("flat", "FLAT"), ("sphere_metric", "NOT FLAT")] {
        let t = csv(&["flatness", "--catalog", metric, "--grid", "6x6"]);
        assert_eq!(t.summary["verdict"], verdict, "{metric}");
    }
    let t = csv(&["flatness", "--metric", "1,0,sin(u)^2", "--range-u", "0.5:2", "--range-v", "0:1"]);
    assert!(t.column("residual").iter().all(|&r| r > 0.0));
}

#[test]
fn gauss_bonnet_totals() {
    let sphere = csv(&["gaussbonnet", "--catalog", "sphere"]).column("total")[0];
    assert!((sphere - 4.0 * PI).abs() <= 1e-6);
    let torus = csv(&["gaussbonnet", "--catalog", "torus"]).column("total")[0];
    assert!(torus.abs() <= 1e-6);
    let flat = csv(&["gaussbonnet", "--metric", "1,0,1", "--range-u", "0:2", "--range-v", "0:3"]).column("total")[0];
    assert_eq!(flat, 0.0);
    let cut = csv(&["gaussbonnet", "--catalog", "sphere_metric", "--cutoff", "1e-3"]).column("total")[0];
    assert!((cut - 4.0 * PI).abs() <= 1e-5);
}

#[test]
fn triangle_examples() {
    let mut args = vec!["triangle", "--metric", "1,0,sin(u)^2"];
    for (flag, v) in ["--v1", "--v2", "--v3"].into_iter().zip(OCTANT) {
        args.extend([flag, v]);
    }
    let t = csv(&args);
    assert!((t.summary_num("excess") - PI / 2.0).abs() <= 1e-3);
    assert!((t.summary_num("integral") - PI / 2.0).abs() <= 1e-3);
    assert!(t.summary_num("difference").abs() <= 1e-3);

    let flat = csv(&["triangle", "--catalog", "flat", "--v1", "0,0", "--v2", "1,0", "--v3", "0.3,0.8"]);
    assert!(flat.summary_num("excess").abs() <= 1e-10 && flat.summary_num("integral").abs() <= 1e-10);

    let hyp = csv(&["triangle", "--catalog", "hyperbolic_disk", "--v1", "0,0", "--v2", "0.5,0", "--v3", "0,0.5"]);
    let (e, i) = (hyp.summary_num("excess"), hyp.summary_num("integral"));
    assert!(e < 0.0 && (e - i).abs() <= 1e-3, "{e} vs {i}");
}

#[test]
fn geodesic_on_sphere() {
    let t = csv(&["geodesic", "--catalog", "sphere", "--start", "1,0", "--dir", "1,1", "--length", "10", "--every", "1000"]);
    assert_eq!(t.rows.len(), 11);
    assert!(t.summary_num("clairaut_drift") <= 1e-5);
    assert!(t.summary_num("energy_drift") <= 1e-7);
}

#[test]
fn catalog_listing() {
    let run = egregium(&["catalog", "--format", "json"]);
    assert_eq!(run.code, 0);
    let v: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    let names: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    for n in ["sphere", "torus", "catenoid", "helicoid", "monkey_saddle", "hyperbolic_disk"] {
        assert!(names.contains(&n), "{n}");
    }
    let csv = egregium(&["catalog", "--kind", "curve"]).stdout;
    assert!(csv.lines().skip(2).all(|l| l.contains(",curve,")));
}

#[test]
fn exit_codes() {
    assert_eq!(egregium(&["surface", "--catalog", "no_such_thing"]).code, 2);
    assert_eq!(egregium(&["surface", "--grid", "1x5", "--catalog", "plane"]).code, 2);
    assert_eq!(egregium(&["curve", "--graph", "x^2", "--bogus"]).code, 2);
    assert_eq!(egregium(&["egregia", "--metric", "1,0", "--grid", "3x3"]).code, 2);
    assert_eq!(egregium(&["egregia", "--metric", "1,1,1", "--grid", "3x3"]).code, 3);
    assert_eq!(egregium(&["curve", "--param", "t^3, t^2", "--range", "-1:1", "--n", "3"]).code, 3);
    assert_eq!(egregium(&["--help"]).code, 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["surface", "--catalog", "ellipsoid", "--grid", "7x9", "--format", "json"];
    assert_eq!(egregium(&args).stdout, egregium(&args).stdout);
    let args = ["egregia", "--catalog", "torus", "--grid", "6x6"];
    assert_eq!(egregium(&args).stdout, egregium(&args).stdout);
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        vec!["surface", "--catalog", "saddle", "--grid", "4x4", "--format", "json"],
        vec!["flatness", "--catalog", "sphere_metric", "--grid", "3x3", "--format", "json"],
        vec!["catalog", "--format", "json"],
    ] {
        let text = egregium(&args).stdout;
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    }
}

#[test]
fn csv_round_trips_values() {
    let json = egregium(&["surface", "--catalog", "catenoid", "--grid", "3x3", "--format", "json"]).stdout;
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let from_csv = csv(&["surface", "--catalog", "catenoid", "--grid", "3x3"]).column("kappa");
    let from_json: Vec<f64> = v["rows"].as_array().unwrap().iter().map(|r| r["kappa"].as_f64().unwrap()).collect();
    assert_eq!(from_csv, from_json);
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("egregium-cli-test-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let run = egregium(&["curve", "--catalog", "parabola", "--n", "5", "--output", p]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("# egregium-csv v1\n"));
    assert_eq!(text.lines().count(), 7);
}
