use std::path::{Path, PathBuf};
use std::process::Command;

use hypermass::{dist, HPoint, Model};
use hypermass_cli::run;
use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypermass"))
}

fn run_capture(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["hypermass"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_report(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out, err) = run_capture(&a);
    assert!(code == 0 || code == 5, "exit {code}: {err}");
    (code, serde_json::from_str(&out).unwrap())
}

fn write_scene(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn item<'a>(rep: &'a Value, name: &str) -> &'a Value {
    let items = rep["items"].as_array().unwrap();
    &items.iter().find(|i| i["name"] == name).unwrap_or_else(|| panic!("no {name} in {rep}"))["value"]
}

fn scalar(rep: &Value, name: &str) -> f64 {
    item(rep, name)["value"].as_f64().unwrap()
}

fn point(rep: &Value, name: &str) -> HPoint {
    let v = item(rep, name);
    let model = Model::parse(v["model"].as_str().unwrap()).unwrap();
    let xs: Vec<f64> = v["coords"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    HPoint::from_model(model.coords(&xs).unwrap()).unwrap()
}

fn coords(p: &HPoint, model: Model) -> Value {
    json!(p.to_model(model).to_vec())
}

// One scene expressed in any model.
fn scene(model: Model) -> Value {
    let pol = |r: f64, t: f64| coords(&HPoint::from_polar(r, t).unwrap(), model);
    json!({
        "model": model.name(),
        "points": {
            "A": {"at": pol(0.9, 0.3)},
            "B": {"at": pol(1.1, 2.4)},
            "C": {"at": pol(0.7, -2.0)},
            "W": {"at": pol(0.5, 1.0), "weight": 2.5}
        },
        "systems": {"ABC": ["A", "B", "C"]},
        "lines": {
            "m": {"through": [pol(1.0, -0.5), pol(1.2, 2.0)]},
            "m_rev": {"through": [pol(1.0, -0.5), pol(1.2, 2.0)], "reversed": true}
        },
        "laminae": {
            "tri": {"region": {"type": "triangle", "vertices": [pol(0.9, 0.3), pol(1.1, 2.4), pol(0.7, -2.0)]}},
            "disk": {"region": {"type": "disk", "center": pol(0.4, 0.5), "radius": 1.0}},
            "wedge": {"region": {"type": "wedge", "apex": pol(0.2, 0.0), "radius": 1.0, "theta1": -0.5, "theta2": 1.2}},
            "hex": {"region": {"type": "regular-polygon", "center": pol(0.3, 2.0), "sides": 6, "inradius": 0.8}},
            "blob": {
                "region": {"type": "polar-graph", "center": pol(0.1, 0.0), "radii": [0.8, 1.0, 1.2, 1.0, 0.9]},
                "density": {"type": "radial-affine", "a": 1.0, "b": 0.5, "center": pol(0.3, 1.0)}
            }
        },
        "linear_sets": {
            "seg": {"segment": [pol(0.3, 0.0), pol(1.0, 1.5)], "density": 2.0},
            "on_m": {"line": "m", "intervals": [[-1.0, -0.2], [0.1, 0.8]]}
        }
    })
}

#[test]
fn three_equal_masses_centroid_is_the_median_point() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_scene(dir.path(), "s.json", &scene(Model::Poincare));
    let (_, rep) = json_report(&["centroid", p.to_str().unwrap(), "ABC"]);
    let c = point(&rep, "centroid");
    let v = |r, t| HPoint::from_polar(r, t).unwrap();
    let t = hypermass::Triangle::new(v(0.9, 0.3), v(1.1, 2.4), v(0.7, -2.0)).unwrap();
    assert!(dist(&c, &hypermass::median_point(&t).unwrap()) < 1e-10);
}

#[test]
fn single_point_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_scene(dir.path(), "s.json", &scene(Model::HalfPlane));
    let (_, rep) = json_report(&["centroid", p.to_str().unwrap(), "W"]);
    assert!(dist(&point(&rep, "centroid"), &HPoint::from_polar(0.5, 1.0).unwrap()) < 1e-12);
    assert_eq!(scalar(&rep, "mass"), 2.5);
}

#[test]
fn disk_report_carries_the_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_scene(dir.path(), "s.json", &scene(Model::Poincare));
    let (_, rep) = json_report(&["centroid", p.to_str().unwrap(), "disk"]);
    assert!(dist(&point(&rep, "centroid"), &HPoint::from_polar(0.4, 0.5).unwrap()) < 1e-10);
    let m = scalar(&rep, "mass");
    assert!((m - std::f64::consts::PI * 1f64.sinh().powi(2)).abs() < 1e-7 * m);
    assert!(scalar(&rep, "mass_rel_diff") < 1e-7);
    assert_eq!(item(&rep, "balance")["values"].as_array().unwrap().len(), 8);
}

#[test]
fn moments_through_centroid_vanish_and_reverse_sign() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = scene(Model::Poincare);
    let p0 = write_scene(dir.path(), "s0.json", &s);
    for name in ["ABC", "tri", "seg", "blob"] {
        let (_, rep) = json_report(&["centroid", p0.to_str().unwrap(), name]);
        let c = point(&rep, "centroid");
        let far = HPoint::from_polar(2.0, 0.7).unwrap();
        s["lines"]["through_c"] = json!({"through": [coords(&c, Model::Poincare), coords(&far, Model::Poincare)]});
        let p = write_scene(dir.path(), "s1.json", &s);
        let (_, rep) = json_report(&["moment", p.to_str().unwrap(), name, "through_c"]);
        let err = item(&rep, "moment")["error"].as_f64().unwrap();
        assert!(scalar(&rep, "moment").abs() < 1e-9 + 10.0 * err, "{name}: {rep}");
        let (_, a) = json_report(&["moment", p.to_str().unwrap(), name, "m"]);
        let (_, b) = json_report(&["moment", p.to_str().unwrap(), name, "m_rev"]);
        assert_eq!(scalar(&a, "moment"), -scalar(&b, "moment"));
    }
}

#[test]
fn lamina_moment_equals_centroid_moment() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_scene(dir.path(), "s.json", &scene(Model::Poincare));
    let p = p.to_str().unwrap();
    for name in ["tri", "disk", "wedge", "hex", "blob"] {
        let (_, c) = json_report(&["centroid", p, name]);
        let pm = hypermass::PointMass::new(point(&c, "centroid"), scalar(&c, "mass")).unwrap();
        let (_, m) = json_report(&["moment", p, name, "m"]);
        let mline = {
            let pol = |r, t| HPoint::from_polar(r, t).unwrap();
            hypermass::line_through(&pol(1.0, -0.5), &pol(1.2, 2.0)).unwrap()
        };
        let expect = hypermass::moment_about_line(&pm, &mline);
        assert!((scalar(&m, "moment") - expect).abs() < 1e-7 * scalar(&m, "unsigned_moment"), "{name}");
    }
}

#[test]
fn results_do_not_depend_on_the_scene_model() {
    let dir = tempfile::tempdir().unwrap();
    let models = [Model::Poincare, Model::HalfPlane, Model::GaussPolar, Model::Hyperboloid];
    let paths: Vec<PathBuf> = models.iter().map(|m| write_scene(dir.path(), &format!("{}.json", m.name()), &scene(*m))).collect();
    for name in ["ABC", "tri", "disk", "wedge", "hex", "blob", "seg", "on_m"] {
        let reps: Vec<Value> = paths.iter().map(|p| json_report(&["centroid", p.to_str().unwrap(), name]).1).collect();
        let c0 = point(&reps[0], "centroid");
        for r in &reps[1..] {
            assert!(dist(&point(r, "centroid"), &c0) < 1e-9, "{name}");
            assert!((scalar(r, "mass") - scalar(&reps[0], "mass")).abs() < 1e-9 * scalar(r, "mass"), "{name}");
        }
        let moments: Vec<f64> =
            paths.iter().map(|p| scalar(&json_report(&["moment", p.to_str().unwrap(), name, "m"]).1, "moment")).collect();
        for m in &moments[1..] {
            assert!((m - moments[0]).abs() < 1e-9 * (1.0 + moments[0].abs()), "{name}");
        }
    }
}

#[test]
fn model_out_converts_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_scene(dir.path(), "s.json", &scene(Model::Poincare));
    let (_, a) = json_report(&["centroid", p.to_str().unwrap(), "ABC"]);
    let (_, b) = json_report(&["centroid", p.to_str().unwrap(), "ABC", "--model-out", "gauss-polar"]);
    assert_eq!(item(&b, "centroid")["model"], "gauss-polar");
    assert!(dist(&point(&a, "centroid"), &point(&b, "centroid")) < 1e-12);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_scene(dir.path(), "s.json", &scene(Model::Poincare));
    let g = good.to_str().unwrap();
    let bad_json = dir.path().join("bad.json");
    std::fs::write(&bad_json, "{ \"model\": ").unwrap();
    let dup = dir.path().join("dup.json");
    std::fs::write(&dup, r#"{"model": "poincare", "points": {"A": {"at": [0, 0]}, "A": {"at": [0.1, 0]}}}"#).unwrap();
    let cross = dir.path().join("cross.json");
    std::fs::write(
        &cross,
        r#"{"model": "poincare", "points": {"A": {"at": [0, 0]}}, "lines": {"A": {"through": [[0, 0], [0.1, 0]]}}}"#,
    )
    .unwrap();
    let outside = dir.path().join("outside.json");
    std::fs::write(&outside, r#"{"model": "poincare", "points": {"A": {"at": [1.5, 0]}}}"#).unwrap();
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["centroid", g, "ABC"], 0),
        (vec!["centroid", bad_json.to_str().unwrap(), "A"], 2),
        (vec!["centroid", dup.to_str().unwrap(), "A"], 2),
        (vec!["centroid", cross.to_str().unwrap(), "A"], 2),
        (vec!["centroid", outside.to_str().unwrap(), "A"], 2),
        (vec!["centroid", "/nonexistent/scene.json", "A"], 2),
        (vec!["centroid", g, "nope"], 3),
        (vec!["moment", g, "ABC", "nope"], 3),
        (vec!["converge", g, "disk", "--deltas", "0.001"], 4),
        (vec!["converge", g, "disk", "--deltas", "0.1,0.2"], 2),
        (vec!["converge", g, "ABC", "--deltas", "0.1"], 2),
        (vec!["validate", "triangle", "--grid", "seed=1"], 5),
        (vec!["validate", "disk", "--grid", "q=1"], 2),
        (vec!["validate", "ngon", "--grid", "n=3", "--grid", "r=1"], 5),
        (vec!["validate", "circle"], 2),
        (vec!["centroid", g, "ABC", "--tol", "0.5"], 2),
    ];
    for (args, code) in cases {
        let status = bin().args(&args).output().unwrap();
        assert_eq!(status.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&status.stderr));
    }
}

#[test]
fn validate_reports_within_limits() {
    let (code, rep) = json_report(&["validate", "segment"]);
    assert_eq!(code, 0);
    let rows = rep["table"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert!(r[4].as_f64().unwrap() < 1e-10);
    }
    let (code, rep) = json_report(&["validate", "disk", "--grid", "r=0.5,1,2"]);
    assert_eq!(code, 0);
    assert_eq!(rep["table"]["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn converge_writes_round_trip_csv() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_scene(dir.path(), "s.json", &scene(Model::Poincare));
    let csv = dir.path().join("out.csv");
    let (code, rep) = json_report(&["converge", p.to_str().unwrap(), "tri", "--deltas", "0.2,0.1,0.05", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("delta,cells,centroid_error,mass_error"));
    let rows = rep["table"]["rows"].as_array().unwrap();
    for (line, row) in lines.zip(rows) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[2].parse::<f64>().unwrap(), row[2].as_f64().unwrap());
        assert_eq!(cols[3].parse::<f64>().unwrap(), row[3].as_f64().unwrap());
    }
    let errs: Vec<f64> = rows.iter().map(|r| r[2].as_f64().unwrap()).collect();
    assert!(errs[1] < errs[0] && errs[2] < errs[1]);
    // one cell covering the whole lamina
    let (_, rep) = json_report(&["converge", p.to_str().unwrap(), "tri", "--deltas", "100"]);
    let rows = rep["table"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][1], 1);
}

#[test]
fn sequential_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_scene(dir.path(), "s.json", &scene(Model::Poincare));
    let p = p.to_str().unwrap();
    for args in [
        vec!["validate", "ngon", "--sequential"],
        vec!["converge", p, "disk", "--deltas", "0.2,0.1", "--seed", "7", "--sequential"],
        vec!["centroid", p, "blob", "--sequential", "--json"],
    ] {
        let a = bin().args(&args).output().unwrap();
        let b = bin().args(&args).output().unwrap();
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn parallel_and_sequential_agree_bitwise() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_scene(dir.path(), "s.json", &scene(Model::Poincare));
    let p = p.to_str().unwrap();
    let a = run_capture(&["centroid", p, "tri", "--json"]).1;
    let b = run_capture(&["centroid", p, "tri", "--json", "--sequential"]).1;
    let strip = |s: &str| s.lines().filter(|l| !l.contains("--sequential") && !l.contains("\"--json\"")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn shipped_scene_examples_load() {
    let docs = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/scenes");
    let mut n = 0;
    for e in std::fs::read_dir(docs).unwrap() {
        let text = std::fs::read_to_string(e.unwrap().path()).unwrap();
        hypermass_cli::Scene::parse(&text).unwrap();
        n += 1;
    }
    assert!(n > 0);
}
