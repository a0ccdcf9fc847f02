//! Acceptance battery: one PASS/FAIL line per criterion.
//!
//! Criteria 5, 6, 7 and 11 cannot be met. The median point is not the
//! centroid of a uniform triangle, so 5, 6 and 11 fail. Criterion 7's grid
//! contains polygons that do not exist. These lines print FAIL with
//! diagnostics; any other failure makes the target fail.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use hypermass::pointmass::moment_scale;
use hypermass::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_FAILURES: [u32; 4] = [5, 6, 7, 11];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn q() -> QuadratureConfig {
    QuadratureConfig::with_tolerance(1e-10)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn random_point(rng: &mut ChaCha8Rng, max_rho: f64) -> HPoint {
    HPoint::from_polar(rng.gen_range(0.0..max_rho), rng.gen_range(-PI..PI)).unwrap()
}

fn random_triangle(rng: &mut ChaCha8Rng, max_rho: f64, min_area: f64) -> Triangle {
    loop {
        let v = [random_point(rng, max_rho), random_point(rng, max_rho), random_point(rng, max_rho)];
        if let Ok(t) = Triangle::new(v[0], v[1], v[2]) {
            if t.area() > min_area && t.angles().iter().all(|a| *a > 0.02) {
                return t;
            }
        }
    }
}

fn base() -> HPoint {
    HPoint::from_polar(0.3, 0.7).unwrap()
}

fn c1_disk_mass() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for r in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let l = Lamina::uniform(Region::disk(base(), r).unwrap()).unwrap();
        worst = worst.max(rel(lamina_mass(&l, &q()).unwrap().value, disk_mass(r)));
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(worst < 1e-6 && secs < 5.0, format!("max rel err {worst:.2e} (< 1e-6), {secs:.2} s (< 5 s)"))
}

fn c2_disk_area() -> Outcome {
    let mut worst: f64 = 0.0;
    for r in [0.25, 0.5, 1.0, 2.0, 4.0] {
        worst = worst.max(rel(area(&Region::disk(base(), r).unwrap(), &q()).unwrap().value, disk_area(r)));
    }
    outcome(worst < 1e-8, format!("max rel err {worst:.2e} (< 1e-8)"))
}

fn c3_wedge() -> Outcome {
    let (mut dd, mut dm, mut closure): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for n in [2, 3, 4, 6, 8] {
        for r in [0.5, 1.0, 2.0] {
            let w = wedge_centroid(n, r).unwrap();
            let l = Lamina::uniform(Region::symmetric_wedge(base(), r, n).unwrap()).unwrap();
            let c = lamina_centroid(&l, &q()).unwrap();
            dd = dd.max((dist(&c.centroid.location, &base()) - w.d_n).abs());
            dm = dm.max(rel(c.centroid.weight(), w.mass));
            closure = closure.max(rel(n as f64 * w.mass * w.d_n.cosh(), disk_mass(r)));
        }
    }
    outcome(
        dd < 1e-6 && dm < 1e-6 && closure < 1e-12,
        format!("d_n err {dd:.2e} (< 1e-6), mass rel err {dm:.2e} (< 1e-6), closure {closure:.2e} (< 1e-12)"),
    )
}

fn c4_wedge_limit() -> Outcome {
    let r = 1e-3;
    let (mut closed, mut quad): (f64, f64) = (0.0, 0.0);
    for n in [2u32, 3, 4, 6] {
        let expect = 2.0 * n as f64 / (3.0 * PI) * (PI / n as f64).sin();
        closed = closed.max((wedge_centroid(n, r).unwrap().d_n / r - expect).abs());
        let l = Lamina::uniform(Region::symmetric_wedge(base(), r, n).unwrap()).unwrap();
        let c = lamina_centroid(&l, &q()).unwrap();
        quad = quad.max((dist(&c.centroid.location, &base()) / r - expect).abs());
    }
    outcome(
        closed < 1e-5 && quad < 1e-5,
        format!("closed form dev {closed:.2e}, quadrature dev {quad:.2e} (< 1e-5)"),
    )
}

fn triangles() -> Vec<Triangle> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    (0..20).map(|_| random_triangle(&mut rng, 1.5, 0.02)).collect()
}

fn c5_triangle_centroid() -> Outcome {
    let start = Instant::now();
    let (mut lam_med, mut lam_sys, mut med_sys): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for t in triangles() {
        let l = Lamina::uniform(Region::Triangle(t)).unwrap();
        let c = lamina_centroid(&l, &q()).unwrap().centroid.location;
        let o = median_point(&t).unwrap();
        let s = system_centroid(&PointMassSystem::new(t.vertices().map(|v| PointMass::new(v, 1.0).unwrap()).to_vec()).unwrap());
        lam_med = lam_med.max(dist(&c, &o));
        lam_sys = lam_sys.max(dist(&c, &s.location));
        med_sys = med_sys.max(dist(&o, &s.location));
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        lam_med < 1e-6 && lam_sys < 1e-6 && med_sys < 1e-6 && secs < 30.0,
        format!(
            "max gaps: lamina-median {lam_med:.2e}, lamina-vertex system {lam_sys:.2e}, median-vertex system {med_sys:.2e} \
             (< 1e-6), {secs:.1} s; the lamina centroid is not the median point"
        ),
    )
}

fn c6_triangle_mass() -> Outcome {
    let (mut at_median, mut at_centroid): (f64, f64) = (0.0, 0.0);
    for t in triangles() {
        let l = Lamina::uniform(Region::Triangle(t)).unwrap();
        let c = lamina_centroid(&l, &q()).unwrap().centroid;
        at_median = at_median.max(rel(triangle_mass_formula(&t).unwrap(), c.weight()));
        at_centroid = at_centroid.max(rel(triangle_mass_about(&t, &c.location), c.weight()));
    }
    outcome(
        at_median < 1e-6,
        format!(
            "max rel err with O = median point {at_median:.2e} (< 1e-6); \
             with O = quadrature centroid {at_centroid:.2e}"
        ),
    )
}

fn c7_polygon() -> Outcome {
    let (mut dm, mut da): (f64, f64) = (0.0, 0.0);
    let mut missing = Vec::new();
    for n in [3u32, 4, 6, 12] {
        for r in [0.5, 1.0] {
            let (Ok(m), Ok(a)) = (ngon_mass(n, r), polygon_area(n, r)) else {
                missing.push(format!("n={n} r={r}"));
                continue;
            };
            let l = Lamina::uniform(Region::regular_polygon(base(), n, r, 0.25).unwrap()).unwrap();
            dm = dm.max(rel(lamina_mass(&l, &q()).unwrap().value, m));
            da = da.max(rel(area(l.region(), &q()).unwrap().value, a));
        }
    }
    let mut detail = format!("mass rel err {dm:.2e}, area rel err {da:.2e} (< 1e-6) on the existing polygons");
    if !missing.is_empty() {
        detail += &format!("; no regular polygon exists for {} (cosh r sin(pi/n) >= 1)", missing.join(", "));
    }
    outcome(dm < 1e-6 && da < 1e-6 && missing.is_empty(), detail)
}

fn c8_segment() -> Outcome {
    let mut worst: f64 = 0.0;
    for d in [0.1, 1.0, 5.0] {
        let end = point_along(&base(), &HPoint::from_polar(1.0, 2.0).unwrap(), d).unwrap();
        let s = LinearSet::segment(&base(), &end, LineDensity::Constant(1.0)).unwrap();
        worst = worst.max(rel(linset_mass(&s), segment_mass(d)));
    }
    outcome(worst < 1e-10, format!("max rel err {worst:.2e} (< 1e-10)"))
}

fn random_pm(rng: &mut ChaCha8Rng) -> PointMass {
    PointMass::new(random_point(rng, 2.0), rng.gen_range(0.1..5.0)).unwrap()
}

fn random_line(rng: &mut ChaCha8Rng) -> DirectedLine {
    DirectedLine::through_heading(&random_point(rng, 2.0), rng.gen_range(-PI..PI))
}

fn c9_point_masses() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut cd, mut wd): (f64, f64) = (0.0, 0.0);
    for _ in 0..1000 {
        let (x, y, z) = (random_pm(&mut rng), random_pm(&mut rng), random_pm(&mut rng));
        let a = combine(&combine(&x, &y), &z);
        let b = combine(&x, &combine(&y, &z));
        let c = combine(&combine(&y, &x), &z);
        cd = cd.max(dist(&a.location, &b.location)).max(dist(&a.location, &c.location));
        wd = wd.max(rel(a.weight(), b.weight())).max(rel(a.weight(), c.weight()));
    }
    let mut add: f64 = 0.0;
    let mut separating = 0;
    for _ in 0..1000 {
        let (x, y, m) = (random_pm(&mut rng), random_pm(&mut rng), random_line(&mut rng));
        let (mx, my) = (moment_about_line(&x, &m), moment_about_line(&y, &m));
        if mx * my < 0.0 {
            separating += 1;
        }
        let mz = moment_about_line(&combine(&x, &y), &m);
        add = add.max((mz - mx - my).abs() / (mx.abs() + my.abs()));
    }
    let mut mass: f64 = 0.0;
    for n in 1..=50 {
        let s = PointMassSystem::new((0..n).map(|_| random_pm(&mut rng)).collect()).unwrap();
        let c = system_centroid(&s);
        mass = mass.max(rel(system_mass_direct(&s, &c.location), c.weight()));
    }
    outcome(
        cd < 1e-10 && wd < 1e-12 && add < 1e-10 && mass < 1e-9 && separating > 0,
        format!(
            "assoc/comm centroid {cd:.2e} (< 1e-10), weight {wd:.2e} (< 1e-12); moment additivity {add:.2e} (< 1e-10, \
             {separating} separating lines); mass formula {mass:.2e} (< 1e-9)"
        ),
    )
}

fn c10_balance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut sys: f64 = 0.0;
    for _ in 0..200 {
        let n = rng.gen_range(2..20);
        let s = PointMassSystem::new((0..n).map(|_| random_pm(&mut rng)).collect()).unwrap();
        let c = system_centroid(&s);
        let m = DirectedLine::through_heading(&c.location, rng.gen_range(-PI..PI));
        sys = sys.max(system_moment(&s, &m).abs() / moment_scale(&s, &m));
    }
    let tol = q().tolerance;
    let mut lam: f64 = 0.0;
    let laminae = [
        Lamina::uniform(Region::Triangle(random_triangle(&mut rng, 1.5, 0.05))).unwrap(),
        Lamina::new(Region::disk(base(), 1.2).unwrap(), Density::RadialAffine { a: 1.0, b: 0.7, center: HPoint::origin() }).unwrap(),
        Lamina::uniform(Region::wedge(base(), 1.0, -0.3, 2.0).unwrap()).unwrap(),
    ];
    for l in &laminae {
        let c = lamina_centroid(l, &q()).unwrap().centroid;
        for _ in 0..5 {
            let m = random_line(&mut rng);
            let e = lamina_moment(l, &m, &q()).unwrap();
            lam = lam.max((e.value - moment_about_line(&c, &m)).abs() / e.scale);
        }
    }
    let (mut ls_through, mut ls_moment): (f64, f64) = (0.0, 0.0);
    for _ in 0..50 {
        let carrier = random_line(&mut rng);
        let s = LinearSet::new(
            carrier,
            vec![(-1.5, -0.4), (0.1, 1.3)],
            LineDensity::callable(|s: f64| 1.0 + 0.5 * s.sin()),
        )
        .unwrap();
        let c = linset_centroid_mass(&s);
        let mag = linset_mass(&s);
        let through = DirectedLine::through_heading(&c.location, rng.gen_range(-PI..PI));
        ls_through = ls_through.max(linset_moment_about_line(&s, &through).abs() / mag);
        let m = random_line(&mut rng);
        ls_moment = ls_moment.max((linset_moment_about_line(&s, &m) - moment_about_line(&c, &m)).abs() / mag);
    }
    outcome(
        sys < 1e-9 && lam < 10.0 * tol && ls_through < 1e-9 && ls_moment < 1e-9,
        format!(
            "system lines through centroid {sys:.2e} (< 1e-9); lamina vs centroid moment {lam:.2e} (< {:.0e}); \
             linear set through centroid {ls_through:.2e}, vs centroid moment {ls_moment:.2e} (< 1e-9)",
            10.0 * tol
        ),
    )
}

fn c11_archimedes() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut worst, mut agree): (f64, f64) = (0.0, 0.0);
    for _ in 0..5 {
        let t = random_triangle(&mut rng, 1.5, 0.05);
        let l = Lamina::uniform(Region::Triangle(t)).unwrap();
        let median = line_through(&t.a, &midpoint(&t.b, &t.c)).unwrap();
        let pencil = Pencil::toward(&line_through(&t.b, &t.c).unwrap());
        let a = archimedes_moment(&l, &pencil, &median, 48).unwrap();
        worst = worst.max(a.value.abs() / a.scale);
        let b = lamina_moment(&l, &median, &q()).unwrap();
        agree = agree.max((a.value - b.value).abs() / b.scale);
    }
    outcome(
        worst < 1e-6,
        format!(
            "max |M_AD| / unsigned moment {worst:.2e} (< 1e-6); slice method agrees with area quadrature to {agree:.2e}, \
             so the moment about the median is genuinely nonzero"
        ),
    )
}

fn c12_transversals() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let laminae = [
        ("triangle", Lamina::uniform(Region::Triangle(random_triangle(&mut rng, 1.5, 0.2))).unwrap()),
        ("disk", Lamina::uniform(Region::disk(base(), 1.0).unwrap()).unwrap()),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, l) in &laminae {
        let reference = lamina_centroid(l, &q()).unwrap().centroid;
        let errs: Vec<(f64, f64)> = [0.2, 0.1, 0.05]
            .iter()
            .map(|&d| {
                let c = system_centroid(&delta_transversal(l, d, 0).unwrap().system);
                (dist(&c.location, &reference.location), rel(c.weight(), reference.weight()))
            })
            .collect();
        let ratios: Vec<(f64, f64)> = errs.windows(2).map(|w| (w[1].0 / w[0].0, w[1].1 / w[0].1)).collect();
        pass &= ratios.iter().all(|(a, b)| *a < 0.75 && *b < 0.75);
        let worst = ratios.iter().fold(0.0f64, |m, (a, b)| m.max(*a).max(*b));
        parts.push(format!("{name} worst ratio {worst:.3}"));
    }
    outcome(pass, format!("{} (< 0.75 per halving)", parts.join(", ")))
}

fn c13_trig() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (mut sines, mut cosines): (f64, f64) = (0.0, 0.0);
    for _ in 0..1000 {
        let t = random_triangle(&mut rng, 2.5, 1e-6);
        sines = sines.max(law_of_sines_residual(&t).unwrap());
        let s = t.sides();
        let a = t.angles();
        for i in 0..3 {
            let c = law_of_cosines(s[(i + 1) % 3], s[(i + 2) % 3], a[i]);
            cosines = cosines.max((c - s[i]).abs() / s[i].max(1.0));
        }
    }
    let (mut ceva, mut menelaus): (f64, f64) = (0.0, 0.0);
    let (mut nc, mut nm) = (0, 0);
    while nc < 200 || nm < 200 {
        let t = random_triangle(&mut rng, 1.5, 0.05);
        let sides = t.side_lines();
        let foot_bc = point_along(&t.b, &t.c, rng.gen_range(0.1..0.9) * dist(&t.b, &t.c)).unwrap();
        let p = point_along(&t.a, &foot_bc, rng.gen_range(0.1..0.9) * dist(&t.a, &foot_bc)).unwrap();
        let foot = |v: &HPoint, side: &DirectedLine| line_through(v, &p).ok().and_then(|l| l.intersection(side));
        if let (Some(fa), Some(fb), Some(fc)) = (foot(&t.a, &sides[0]), foot(&t.b, &sides[1]), foot(&t.c, &sides[2])) {
            if let Ok(v) = ceva_product(&t, &fa, &fb, &fc) {
                ceva = ceva.max((v - 1.0).abs());
                nc += 1;
            }
        }
        let m = DirectedLine::through_heading(&random_point(&mut rng, 1.0), rng.gen_range(-PI..PI));
        if let (Some(x), Some(y), Some(z)) = (m.intersection(&sides[0]), m.intersection(&sides[1]), m.intersection(&sides[2])) {
            if let Ok(v) = menelaus_product(&t, &x, &y, &z) {
                menelaus = menelaus.max((v + 1.0).abs());
                nm += 1;
            }
        }
    }
    outcome(
        sines < 1e-9 && cosines < 1e-9 && ceva < 1e-8 && menelaus < 1e-8,
        format!(
            "sines {sines:.2e}, cosines {cosines:.2e} (< 1e-9); Ceva |P - 1| {ceva:.2e}, Menelaus |P + 1| {menelaus:.2e} \
             (< 1e-8) on {nc} and {nm} constructions"
        ),
    )
}

fn c14_determinism() -> Outcome {
    let scene = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/scenes/basic.json");
    let dir = std::env::temp_dir().join(format!("hypermass-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let scene = scene.to_str().unwrap();
    let runs: Vec<Vec<String>> = vec![
        vec!["validate".into(), "wedge".into(), "--grid".into(), "n=2,3".into(), "--grid".into(), "r=0.5,1".into()],
        vec!["validate".into(), "disk".into()],
        vec!["converge".into(), scene.into(), "tri".into(), "--deltas".into(), "0.2,0.1,0.05".into(), "--seed".into(), "3".into()],
    ];
    let mut same = true;
    let mut bytes = 0;
    for (i, args) in runs.iter().enumerate() {
        let mut outs = Vec::new();
        for _ in 0..2 {
            let csv = dir.join(format!("run{i}.csv"));
            let _ = std::fs::remove_file(&csv);
            let mut a = args.clone();
            a.push("--sequential".into());
            if args[0] == "converge" {
                a.push("--csv".into());
                a.push(csv.to_str().unwrap().into());
            }
            let o = Command::new(env!("CARGO_BIN_EXE_hypermass")).args(&a).output().unwrap();
            let csv_bytes = std::fs::read(&csv).unwrap_or_default();
            bytes += o.stdout.len();
            outs.push((o.status.code(), o.stdout, csv_bytes));
        }
        same &= outs[0] == outs[1] && !outs[0].1.is_empty();
    }
    let _ = std::fs::remove_dir_all(&dir);
    outcome(same, format!("3 commands run twice, {bytes} bytes of output compared"))
}

fn main() {
    type Check = (u32, &'static str, fn() -> Outcome);
    let criteria: [Check; 14] = [
        (1, "disk mass", c1_disk_mass),
        (2, "disk area", c2_disk_area),
        (3, "wedge centroid", c3_wedge),
        (4, "Euclidean wedge limit", c4_wedge_limit),
        (5, "triangle centroid", c5_triangle_centroid),
        (6, "triangle mass", c6_triangle_mass),
        (7, "regular polygon", c7_polygon),
        (8, "segment mass", c8_segment),
        (9, "point-mass algebra", c9_point_masses),
        (10, "balance properties", c10_balance),
        (11, "Archimedes reduction", c11_archimedes),
        (12, "transversal convergence", c12_transversals),
        (13, "triangle identities", c13_trig),
        (14, "CLI determinism", c14_determinism),
    ];
    let mut unexpected = Vec::new();
    for (n, name, f) in criteria {
        let o = f();
        println!("criterion {n:>2} {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass && !KNOWN_FAILURES.contains(&n) {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
