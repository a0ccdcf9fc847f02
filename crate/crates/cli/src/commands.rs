use std::collections::BTreeMap;
use std::f64::consts::PI;

use hypermass::{
    area, delta_transversal, dist, lamina_centroid, lamina_mass, lamina_moment, linset_centroid_mass, linset_mass,
    linset_moment_about_line, median_point, moment_about_line, ngon_mass, point_along, polygon_area, segment_mass,
    system_centroid, system_moment, triangle_mass_formula, wedge_centroid, Density, Frame, HPoint, Lamina,
    LineDensity, LinearSet, Model, QuadratureConfig, Region, Triangle,
};
use hypermass::{disk_area, disk_mass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Cell, Report, Table, Value};
use crate::scene::{Object, Scene};
use crate::CliError;

/// Relative rounding error attributed to closed-form point-mass algebra and
/// one-dimensional quadrature.
const EXACT_REL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    Disk,
    Wedge,
    Triangle,
    Ngon,
    Segment,
}

// A lamina's closed-form centroid and mass, when one is known
struct ClosedForm {
    label: String,
    centroid: HPoint,
    mass: f64,
}

fn closed_form(l: &Lamina) -> Option<ClosedForm> {
    let Density::Constant(k) = *l.density() else { return None };
    match l.region() {
        Region::Disk { center, radius } => {
            Some(ClosedForm { label: "uniform disk".into(), centroid: *center, mass: k * disk_mass(*radius) })
        }
        Region::RegularPolygon { center, sides, inradius, .. } => Some(ClosedForm {
            label: "uniform regular polygon".into(),
            centroid: *center,
            mass: k * ngon_mass(*sides, *inradius).ok()?,
        }),
        Region::Wedge { apex, radius, theta1, theta2 } => {
            let n = 2.0 * PI / (theta2 - theta1);
            if (n - n.round()).abs() > 1e-12 || n.round() < 1.0 {
                return None;
            }
            let w = wedge_centroid(n.round() as u32, *radius).ok()?;
            let centroid = Frame::at(apex).polar(w.d_n, 0.5 * (theta1 + theta2));
            Some(ClosedForm { label: format!("uniform wedge D_{}", n.round()), centroid, mass: k * w.mass })
        }
        Region::Triangle(t) => Some(ClosedForm {
            label: "uniform triangle (median point, side formula)".into(),
            centroid: median_point(t).ok()?,
            mass: k * triangle_mass_formula(t).ok()?,
        }),
        Region::PolarGraph { .. } => None,
    }
}

fn annotate(rep: &mut Report, l: &Lamina, centroid: Option<&HPoint>, mass: f64, model: Model) {
    if let Some(cf) = closed_form(l) {
        rep.push("closed_form", Value::text(cf.label));
        if let Some(c) = centroid {
            rep.push("closed_centroid", Value::point(&cf.centroid, model, 0.0));
            rep.push("centroid_gap", Value::exact(dist(c, &cf.centroid)));
        }
        rep.push("closed_mass", Value::exact(cf.mass));
        rep.push("mass_rel_diff", Value::exact((mass - cf.mass).abs() / cf.mass));
    }
}

pub fn centroid(scene: &Scene, name: &str, q: &QuadratureConfig, model: Model, rep: &mut Report) -> Result<(), CliError> {
    match scene.object(name)? {
        Object::Point(p) => {
            rep.push("centroid", Value::point(&p.location, model, 0.0));
            rep.push("mass", Value::exact(p.weight()));
        }
        Object::System(s) => {
            let c = system_centroid(s);
            rep.push("centroid", Value::point(&c.location, model, EXACT_REL));
            rep.push("mass", Value::scalar(c.weight(), EXACT_REL * c.weight()));
        }
        Object::Lamina(l) => {
            let c = lamina_centroid(l, q)?;
            let m = c.centroid.weight();
            rep.push("centroid", Value::point(&c.centroid.location, model, c.error / m));
            rep.push("mass", Value::scalar(m, c.error));
            rep.push("balance", Value::List { values: c.balance.to_vec() });
            annotate(rep, l, Some(&c.centroid.location), m, model);
        }
        Object::LinearSet(s) => {
            let c = linset_centroid_mass(s);
            rep.push("centroid", Value::point(&c.location, model, EXACT_REL));
            rep.push("mass", Value::scalar(c.weight(), EXACT_REL * c.weight()));
        }
    }
    Ok(())
}

pub fn mass(scene: &Scene, name: &str, q: &QuadratureConfig, model: Model, rep: &mut Report) -> Result<(), CliError> {
    match scene.object(name)? {
        Object::Lamina(l) => {
            let e = lamina_mass(l, q)?;
            rep.push("mass", Value::scalar(e.value, e.error));
            annotate(rep, l, None, e.value, model);
        }
        Object::LinearSet(s) => {
            let m = linset_mass(s);
            rep.push("mass", Value::scalar(m, EXACT_REL * m));
        }
        _ => {
            let mut tmp = Report::new(Vec::new());
            centroid(scene, name, q, model, &mut tmp)?;
            rep.items.extend(tmp.items.into_iter().filter(|i| i.name == "mass"));
        }
    }
    Ok(())
}

pub fn moment(scene: &Scene, name: &str, line: &str, q: &QuadratureConfig, rep: &mut Report) -> Result<(), CliError> {
    let m = scene.line(line)?;
    match scene.object(name)? {
        Object::Point(p) => rep.push("moment", Value::exact(moment_about_line(p, m))),
        Object::System(s) => {
            let v = system_moment(s, m);
            rep.push("moment", Value::scalar(v, EXACT_REL * hypermass::pointmass::moment_scale(s, m)));
        }
        Object::Lamina(l) => {
            let e = lamina_moment(l, m, q)?;
            rep.push("moment", Value::scalar(e.value, e.error));
            rep.push("unsigned_moment", Value::scalar(e.scale, e.error));
        }
        Object::LinearSet(s) => {
            let v = linset_moment_about_line(s, m);
            rep.push("moment", Value::scalar(v, EXACT_REL * v.abs().max(linset_mass(s))));
        }
    }
    Ok(())
}

/// Parses `key=v1,v2,...` specifications.
pub fn parse_grid(specs: &[String], allowed: &[&str]) -> Result<BTreeMap<String, Vec<f64>>, CliError> {
    let mut out = BTreeMap::new();
    for s in specs {
        let (k, v) = s.split_once('=').ok_or_else(|| CliError::Parse(format!("grid entry `{s}` is not key=values")))?;
        let k = k.trim();
        if !allowed.contains(&k) {
            return Err(CliError::Parse(format!("unknown grid key `{k}`; expected one of {}", allowed.join(", "))));
        }
        let vals = v
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| CliError::Parse(format!("grid value `{x}`: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if out.insert(k.to_string(), vals).is_some() {
            return Err(CliError::Parse(format!("grid key `{k}` given twice")));
        }
    }
    Ok(out)
}

fn int_param(x: f64, key: &str) -> Result<u32, CliError> {
    if x.fract() != 0.0 || !(0.0..=u32::MAX as f64).contains(&x) {
        return Err(CliError::Parse(format!("{key} = {x} must be a non-negative integer")));
    }
    Ok(x as u32)
}

/// A random triangle with vertices within distance 1.5 of the origin and
/// area above 0.05, drawn from a seeded stream.
pub fn random_triangle(seed: u64) -> Triangle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut v = [HPoint::origin(); 3];
        for p in &mut v {
            let rho = rng.gen_range(0.0..1.5);
            let theta = rng.gen_range(-PI..PI);
            *p = HPoint::from_polar(rho, theta).expect("finite");
        }
        if let Ok(t) = Triangle::new(v[0], v[1], v[2]) {
            if t.area() > 0.05 {
                return t;
            }
        }
    }
}

struct Check<'a> {
    table: &'a mut Table,
    failed: bool,
}

impl Check<'_> {
    fn row(&mut self, case: String, quantity: &str, closed: f64, quad: f64, diff: f64, limit: f64) {
        let ok = diff <= limit;
        self.failed |= !ok;
        self.table.rows.push(vec![
            Cell::Text(case),
            Cell::Text(quantity.into()),
            Cell::Num(closed),
            Cell::Num(quad),
            Cell::Num(diff),
            Cell::Num(limit),
            Cell::Text(if ok { "ok" } else { "FAIL" }.into()),
        ]);
    }

    fn invalid(&mut self, case: String, why: String) {
        self.failed = true;
        self.table.rows.push(vec![
            Cell::Text(case),
            Cell::Text(why),
            Cell::Text("-".into()),
            Cell::Text("-".into()),
            Cell::Text("-".into()),
            Cell::Text("-".into()),
            Cell::Text("FAIL".into()),
        ]);
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

pub const VALIDATE_LIMIT: f64 = 1e-6;
pub const SEGMENT_LIMIT: f64 = 1e-10;

/// Runs closed form versus quadrature comparisons over a parameter grid.
pub fn validate(family: Family, grid: &[String], q: &QuadratureConfig, rep: &mut Report) -> Result<(), CliError> {
    let (keys, defaults): (&[&str], Vec<(&str, Vec<f64>)>) = match family {
        Family::Disk => (&["r"], vec![("r", vec![0.25, 0.5, 1.0, 2.0, 4.0])]),
        Family::Wedge => (&["n", "r"], vec![("n", vec![2.0, 3.0, 4.0, 6.0, 8.0]), ("r", vec![0.5, 1.0, 2.0])]),
        Family::Triangle => (&["seed"], vec![("seed", (1..=5).map(f64::from).collect())]),
        Family::Ngon => (&["n", "r"], vec![("n", vec![3.0, 4.0, 6.0, 12.0]), ("r", vec![0.5])]),
        Family::Segment => (&["d"], vec![("d", vec![0.1, 1.0, 5.0])]),
    };
    let mut g = parse_grid(grid, keys)?;
    for (k, v) in defaults {
        g.entry(k.to_string()).or_insert(v);
    }
    let mut table = Table::new(&["case", "quantity", "closed", "quadrature", "diff", "limit", "status"]);
    let mut ck = Check { table: &mut table, failed: false };
    // off-origin placement so that nothing is trivially symmetric about the chart
    let base = HPoint::from_polar(0.3, 0.7).expect("finite");
    match family {
        Family::Disk => {
            for &r in &g["r"] {
                let l = Lamina::uniform(Region::disk(base, r)?)?;
                let m = lamina_mass(&l, q)?.value;
                let a = area(l.region(), q)?.value;
                ck.row(format!("r={r}"), "mass", disk_mass(r), m, rel(m, disk_mass(r)), VALIDATE_LIMIT);
                ck.row(format!("r={r}"), "area", disk_area(r), a, rel(a, disk_area(r)), VALIDATE_LIMIT);
            }
        }
        Family::Wedge => {
            for &n in &g["n"] {
                let n = int_param(n, "n")?;
                for &r in &g["r"] {
                    let case = format!("n={n} r={r}");
                    let w = match wedge_centroid(n, r) {
                        Ok(w) => w,
                        Err(e) => {
                            ck.invalid(case, e.to_string());
                            continue;
                        }
                    };
                    let l = Lamina::uniform(Region::symmetric_wedge(base, r, n)?)?;
                    let c = lamina_centroid(&l, q)?;
                    let d = dist(&c.centroid.location, &base);
                    ck.row(case.clone(), "d_n", w.d_n, d, (d - w.d_n).abs(), VALIDATE_LIMIT);
                    let m = c.centroid.weight();
                    ck.row(case, "mass", w.mass, m, rel(m, w.mass), VALIDATE_LIMIT);
                }
            }
        }
        Family::Triangle => {
            for &s in &g["seed"] {
                let s = int_param(s, "seed")?;
                let t = random_triangle(s as u64);
                let l = Lamina::uniform(Region::Triangle(t))?;
                let c = lamina_centroid(&l, q)?;
                let o = median_point(&t)?;
                let gap = dist(&o, &c.centroid.location);
                ck.row(format!("seed={s}"), "median_gap", 0.0, gap, gap, VALIDATE_LIMIT);
                let f = triangle_mass_formula(&t)?;
                let m = c.centroid.weight();
                ck.row(format!("seed={s}"), "mass", f, m, rel(m, f), VALIDATE_LIMIT);
            }
        }
        Family::Ngon => {
            for &n in &g["n"] {
                let n = int_param(n, "n")?;
                for &r in &g["r"] {
                    let case = format!("n={n} r={r}");
                    let (Ok(cm), Ok(ca)) = (ngon_mass(n, r), polygon_area(n, r)) else {
                        ck.invalid(case, "no such polygon".into());
                        continue;
                    };
                    let l = Lamina::uniform(Region::regular_polygon(base, n, r, 0.25)?)?;
                    let m = lamina_mass(&l, q)?.value;
                    let a = area(l.region(), q)?.value;
                    ck.row(case.clone(), "mass", cm, m, rel(m, cm), VALIDATE_LIMIT);
                    ck.row(case, "area", ca, a, rel(a, ca), VALIDATE_LIMIT);
                }
            }
        }
        Family::Segment => {
            let dir = HPoint::from_polar(1.0, 2.0).expect("finite");
            for &d in &g["d"] {
                let end = point_along(&base, &dir, d)?;
                let s = LinearSet::segment(&base, &end, LineDensity::Constant(1.0))?;
                let m = linset_mass(&s);
                ck.row(format!("d={d}"), "mass", segment_mass(d), m, rel(m, segment_mass(d)), SEGMENT_LIMIT);
            }
        }
    }
    let failed = ck.failed;
    rep.push("family", Value::text(format!("{family:?}").to_lowercase()));
    rep.push("tolerance", Value::exact(q.tolerance));
    rep.table = Some(table);
    if failed {
        rep.exit = crate::EXIT_VALIDATION;
    }
    Ok(())
}

/// Errors of delta-transversal centroids against the converged quadrature.
pub fn converge(
    scene: &Scene,
    name: &str,
    deltas: &[f64],
    seed: u64,
    q: &QuadratureConfig,
    model: Model,
    rep: &mut Report,
) -> Result<(), CliError> {
    if deltas.is_empty() || deltas.iter().any(|d| !(*d > 0.0 && d.is_finite())) {
        return Err(CliError::Parse("deltas must be positive".into()));
    }
    if deltas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(CliError::Parse("deltas must be strictly decreasing".into()));
    }
    let Object::Lamina(l) = scene.object(name)? else {
        return Err(CliError::Parse(format!("`{name}` is not a lamina")));
    };
    let fine = QuadratureConfig { tolerance: q.tolerance.min(1e-10), ..*q };
    let reference = lamina_centroid(l, &fine)?;
    let (c0, m0) = (reference.centroid.location, reference.centroid.weight());
    rep.push("reference_centroid", Value::point(&c0, model, reference.error / m0));
    rep.push("reference_mass", Value::scalar(m0, reference.error));
    let mut table = Table::new(&["delta", "cells", "centroid_error", "mass_error"]);
    let mut errs = Vec::new();
    for &d in deltas {
        let t = delta_transversal(l, d, seed)?;
        let c = system_centroid(&t.system);
        let ce = dist(&c.location, &c0);
        let me = (c.weight() - m0).abs() / m0;
        errs.push((ce, me));
        table.rows.push(vec![Cell::Num(d), Cell::Int(t.system.len() as u64), Cell::Num(ce), Cell::Num(me)]);
    }
    let monotone = errs.windows(2).all(|w| w[1].0 < w[0].0 && w[1].1 < w[0].1);
    rep.push("monotone", Value::text(if monotone { "yes" } else { "no" }));
    rep.table = Some(table);
    Ok(())
}

