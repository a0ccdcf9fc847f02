//! Laminae: regions carrying a continuous non-negative density.
//!
//! The centroid of a lamina is the normalized first moment
//! `S = int lambda(X) X dA` (hyperboloid coordinates) and its mass is the
//! Minkowski length of `S`; the result is verified afterwards by checking that
//! the lamina balances about eight lines through it.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::minkowski::MVec;
use crate::plane::{DirectedLine, Frame, HPoint};
use crate::pointmass::{combine, PointMass, PointMassSystem};
use crate::quadrature::{integrate, polar_vec, GaussLegendre, PolarChart, QuadratureConfig};
use crate::region::Region;

/// Density of a lamina.
#[derive(Clone)]
pub enum Density {
    Constant(f64),
    /// `a + b cosh d(X, center)`.
    RadialAffine { a: f64, b: f64, center: HPoint },
    /// Any continuous non-negative function.
    Callable(Arc<dyn Fn(&HPoint) -> f64 + Send + Sync>),
}

impl fmt::Debug for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Density::Constant(c) => write!(f, "Constant({c})"),
            Density::RadialAffine { a, b, center } => write!(f, "RadialAffine {{ a: {a}, b: {b}, center: {center:?} }}"),
            Density::Callable(_) => write!(f, "Callable(..)"),
        }
    }
}

impl Density {
    pub fn callable<F: Fn(&HPoint) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        Density::Callable(Arc::new(f))
    }

    pub fn value(&self, p: &HPoint) -> f64 {
        match self {
            Density::Constant(c) => *c,
            Density::RadialAffine { a, b, center } => a + b * (-p.vec().dot(&center.vec())),
            Density::Callable(f) => f(p),
        }
    }

    /// A copy scaled by `k`.
    pub fn scaled(&self, k: f64) -> Density {
        match self {
            Density::Constant(c) => Density::Constant(c * k),
            Density::RadialAffine { a, b, center } => Density::RadialAffine { a: a * k, b: b * k, center: *center },
            Density::Callable(f) => {
                let f = f.clone();
                Density::Callable(Arc::new(move |p| k * f(p)))
            }
        }
    }

    fn local<'a>(&'a self, frame: &Frame) -> LocalDensity<'a> {
        match self {
            Density::Constant(c) => LocalDensity::Constant(*c),
            Density::RadialAffine { a, b, center } => {
                LocalDensity::Radial { a: *a, b: *b, p: frame.to_local(&center.vec()) }
            }
            Density::Callable(f) => LocalDensity::Callable(f.as_ref(), *frame),
        }
    }
}

enum LocalDensity<'a> {
    Constant(f64),
    Radial { a: f64, b: f64, p: MVec },
    Callable(&'a (dyn Fn(&HPoint) -> f64 + Send + Sync), Frame),
}

impl LocalDensity<'_> {
    fn at(&self, x: &MVec) -> f64 {
        match self {
            LocalDensity::Constant(c) => *c,
            LocalDensity::Radial { a, b, p } => a + b * (-x.dot(p)),
            LocalDensity::Callable(f, frame) => f(&frame.point_to_world(&HPoint::from_timelike(*x))),
        }
    }
}

/// A quadrature value with its diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// Magnitude the tolerance was measured against (for moments, the
    /// unsigned moment `int lambda sinh d(X, m) dA`).
    pub scale: f64,
    /// Estimated absolute error.
    pub error: f64,
    /// Number of angular panels used.
    pub panels: usize,
}

/// A region paired with a density.
#[derive(Clone, Debug)]
pub struct Lamina {
    region: Region,
    density: Density,
    chart: PolarChart,
}

impl Lamina {
    /// Validates the region, checks the density for negative values at a grid
    /// of sample points and requires `int lambda dA > 1e-12`.
    pub fn new(region: Region, density: Density) -> Result<Self> {
        region.validate()?;
        if let Density::Constant(c) = density {
            if !(c.is_finite() && c >= 0.0) {
                return Err(Error::InvalidDensity(format!("constant {c} is negative")));
            }
        }
        let chart = region.chart();
        let l = Lamina { region, density, chart };
        l.check_density_samples()?;
        let total = l.density_integral(&QuadratureConfig::default())?;
        if !(total.value > 1e-12) {
            return Err(Error::InvalidDensity(format!("total density {} is not positive", total.value)));
        }
        Ok(l)
    }

    pub fn uniform(region: Region) -> Result<Self> {
        Self::new(region, Density::Constant(1.0))
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn density(&self) -> &Density {
        &self.density
    }

    fn check_density_samples(&self) -> Result<()> {
        let lam = self.density.local(&self.chart.frame);
        let g = GaussLegendre::new(16);
        let mut radial: Vec<f64> = g.nodes.iter().map(|x| 0.5 * (x + 1.0)).collect();
        radial.push(0.0);
        radial.push(1.0);
        for s in &self.chart.sectors {
            for i in 0..=32 {
                let th = s.theta0 + (s.theta1 - s.theta0) * i as f64 / 32.0;
                let r = s.bound.at(th);
                for f in &radial {
                    let v = lam.at(&polar_vec(f * r, th));
                    if !(v.is_finite() && v >= 0.0) {
                        return Err(Error::InvalidDensity(format!("density {v} at a sample point")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `int lambda dA`.
    pub fn density_integral(&self, q: &QuadratureConfig) -> Result<Estimate> {
        let lam = self.density.local(&self.chart.frame);
        let r = integrate(&self.chart, q, |x| [lam.at(x)])?;
        Ok(Estimate { value: r.value[0], scale: r.scale, error: r.error, panels: r.panels })
    }

    fn first_moment(&self, q: &QuadratureConfig) -> Result<(MVec, f64, usize)> {
        let lam = self.density.local(&self.chart.frame);
        let r = integrate(&self.chart, q, |x| {
            let l = lam.at(x);
            [l * x.t, l * x.u, l * x.v]
        })?;
        let [t, u, v] = r.value;
        Ok((self.chart.frame.to_world(&MVec::new(t, u, v)), r.error, r.panels))
    }
}

/// Area of a region.
pub fn area(region: &Region, q: &QuadratureConfig) -> Result<Estimate> {
    region.validate()?;
    let r = integrate(&region.chart(), q, |_| [1.0])?;
    Ok(Estimate { value: r.value[0], scale: r.scale, error: r.error, panels: r.panels })
}

/// Signed moment `int sigma_m(X) lambda(X) sinh d(X, m) dA`.
pub fn lamina_moment(l: &Lamina, m: &DirectedLine, q: &QuadratureConfig) -> Result<Estimate> {
    let n = l.chart.frame.line_to_local(m).normal();
    let lam = l.density.local(&l.chart.frame);
    let r = integrate(&l.chart, q, |x| {
        let w = lam.at(x);
        let s = x.dot(&n);
        [w * s, w * s.abs()]
    })?;
    Ok(Estimate { value: r.value[0], scale: r.value[1], error: r.error, panels: r.panels })
}

/// Centroid of a lamina with its balance diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaminaCentroid {
    /// Location and mass.
    pub centroid: PointMass,
    /// Estimated absolute error of the first-moment integral.
    pub error: f64,
    pub panels: usize,
    /// Relative moments `|M| / unsigned moment` about the lines through the
    /// centroid with headings `k pi / 8`.
    pub balance: [f64; 8],
}

/// Centroid location and mass, checked for balance about eight lines.
pub fn lamina_centroid(l: &Lamina, q: &QuadratureConfig) -> Result<LaminaCentroid> {
    let (s, error, panels) = l.first_moment(q)?;
    if !(-s.norm_sq() > 0.0 && s.t > 0.0) {
        return Err(Error::InvalidDensity("first moment is not timelike".into()));
    }
    let centroid = PointMass::from_momentum(s);
    let mut balance = [0.0; 8];
    for (k, b) in balance.iter_mut().enumerate() {
        let m = DirectedLine::through_heading(&centroid.location, k as f64 * PI / 8.0);
        let e = lamina_moment(l, &m, q)?;
        let residual = e.value.abs() / e.scale;
        if !(residual <= 10.0 * q.tolerance) {
            return Err(Error::BalanceCheckFailed { residual, direction: k });
        }
        *b = residual;
    }
    Ok(LaminaCentroid { centroid, error, panels, balance })
}

/// Mass `int lambda(X) cosh d(X, C) dA` about the centroid `C`.
pub fn lamina_mass(l: &Lamina, q: &QuadratureConfig) -> Result<Estimate> {
    let c = lamina_centroid(l, q)?;
    lamina_mass_about(l, &c.centroid.location, q)
}

/// `int lambda(X) cosh d(X, c) dA` for a given point `c`.
pub fn lamina_mass_about(l: &Lamina, c: &HPoint, q: &QuadratureConfig) -> Result<Estimate> {
    let p = l.chart.frame.to_local(&c.vec());
    let lam = l.density.local(&l.chart.frame);
    let r = integrate(&l.chart, q, |x| [lam.at(x) * (-x.dot(&p))])?;
    Ok(Estimate { value: r.value[0], scale: r.scale, error: r.error, panels: r.panels })
}

/// Default limit on the number of cells of a delta-decomposition.
pub const DEFAULT_CELL_CAP: usize = 10_000_000;
/// Cells with smaller area are merged into a neighbor.
pub const SLIVER_AREA: f64 = 1e-12;

/// Point masses `(X_i, lambda(X_i) area(L_i))` of a delta-decomposition.
#[derive(Clone, Debug)]
pub struct Transversal {
    pub system: PointMassSystem,
    pub delta: f64,
    /// Areas of all cells, in the order their points appear.
    pub cell_areas: Vec<f64>,
}

impl Transversal {
    pub fn total_area(&self) -> f64 {
        crate::minkowski::pairwise_sum_scalar(&self.cell_areas)
    }
}

struct Cell {
    point: MVec,
    area: f64,
    // sector index and (s0, s1, theta0, theta1)
    #[allow(dead_code)]
    param: (usize, [f64; 4]),
}

/// A delta-transversal with the default cell cap.
///
/// Cells are curvilinear rectangles in `(rho / R(theta), theta)` about the
/// region's anchor, each with diameter bounded below `delta`. With `seed = 0`
/// each cell is sampled at its parameter midpoint; any other seed draws one
/// uniform parameter point per cell from a ChaCha8 stream.
pub fn delta_transversal(l: &Lamina, delta: f64, seed: u64) -> Result<Transversal> {
    delta_transversal_with_cap(l, delta, seed, DEFAULT_CELL_CAP)
}

pub fn delta_transversal_with_cap(l: &Lamina, delta: f64, seed: u64, cap: usize) -> Result<Transversal> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidArgument(format!("delta {delta} must be positive")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells = Vec::new();
    if delta >= l.region.diameter() {
        let a = area(&l.region, &QuadratureConfig::default())?.value;
        let point = if seed == 0 { l.chart.frame.to_local(&l.region.anchor().vec()) } else { random_chart_point(l, &mut rng) };
        cells.push(Cell { point, area: a, param: (0, [0.0; 4]) });
    } else {
        build_cells(&l.chart, delta, seed, &mut rng, cap, &mut cells)?;
    }
    let cells = merge_slivers(cells);
    let lam = l.density.local(&l.chart.frame);
    let mut members = Vec::with_capacity(cells.len());
    let mut cell_areas = Vec::with_capacity(cells.len());
    for c in &cells {
        cell_areas.push(c.area);
        let w = lam.at(&c.point) * c.area;
        if w > 0.0 {
            let x = l.chart.frame.point_to_world(&HPoint::from_timelike(c.point));
            members.push(PointMass::new(x, w)?);
        }
    }
    Ok(Transversal { system: PointMassSystem::new(members)?, delta, cell_areas })
}

fn random_chart_point(l: &Lamina, rng: &mut ChaCha8Rng) -> MVec {
    let total: f64 = l.chart.sectors.iter().map(|s| s.theta1 - s.theta0).sum();
    let mut t = rng.gen_range(0.0..total);
    let f: f64 = rng.gen_range(0.0..1.0);
    for s in &l.chart.sectors {
        let w = s.theta1 - s.theta0;
        if t <= w {
            let th = s.theta0 + t;
            return polar_vec(f * s.bound.at(th), th);
        }
        t -= w;
    }
    MVec::new(1.0, 0.0, 0.0)
}

fn build_cells(
    chart: &PolarChart,
    delta: f64,
    seed: u64,
    rng: &mut ChaCha8Rng,
    cap: usize,
    out: &mut Vec<Cell>,
) -> Result<()> {
    let gl = GaussLegendre::new(16);
    for (si, s) in chart.sectors.iter().enumerate() {
        let (_, rmax) = s.bound.range(s.theta0, s.theta1);
        let rings = (2.0 * rmax / delta).floor() as usize + 1;
        let width = s.theta1 - s.theta0;
        for j in 0..rings {
            let s0 = j as f64 / rings as f64;
            let s1 = (j + 1) as f64 / rings as f64;
            let mut k = if j == 0 { 1 } else { ((2.0 * (s1 * rmax).sinh() * width / delta).ceil() as usize).max(1) };
            let diam = |a: f64, b: f64| {
                let (lo, hi) = s.bound.range(a, b);
                let (rlo, rhi) = (s0 * lo, s1 * hi);
                let d = (rhi - rlo) + rhi.sinh() * (b - a);
                if j == 0 {
                    d.min(2.0 * rhi)
                } else {
                    d
                }
            };
            loop {
                let ok = (0..k).all(|i| {
                    let a = s.theta0 + width * i as f64 / k as f64;
                    let b = s.theta0 + width * (i + 1) as f64 / k as f64;
                    diam(a, b) < delta
                });
                if ok {
                    break;
                }
                k = k + k / 4 + 1;
                if out.len() + k > cap {
                    return Err(Error::MeshTooFine { cap });
                }
            }
            if out.len() + k > cap {
                return Err(Error::MeshTooFine { cap });
            }
            for i in 0..k {
                let a = s.theta0 + width * i as f64 / k as f64;
                let b = if i + 1 == k { s.theta1 } else { s.theta0 + width * (i + 1) as f64 / k as f64 };
                // cosh(s1 R) - cosh(s0 R) = 2 sinh((s1 + s0) R / 2) sinh((s1 - s0) R / 2)
                let pieces = ((b - a) / 0.05).ceil().max(1.0) as usize;
                let h = (b - a) / pieces as f64;
                let area: f64 = (0..pieces)
                    .map(|p| {
                        gl.integrate(a + h * p as f64, a + h * (p + 1) as f64, |th| {
                            let r = s.bound.at(th);
                            2.0 * (0.5 * (s1 + s0) * r).sinh() * (0.5 * (s1 - s0) * r).sinh()
                        })
                    })
                    .sum();
                let (fs, th) = if seed == 0 {
                    (0.5 * (s0 + s1), 0.5 * (a + b))
                } else {
                    (rng.gen_range(s0..s1), rng.gen_range(a..b))
                };
                out.push(Cell { point: polar_vec(fs * s.bound.at(th), th), area, param: (si, [s0, s1, a, b]) });
            }
        }
    }
    Ok(())
}

fn merge_slivers(cells: Vec<Cell>) -> Vec<Cell> {
    let mut out: Vec<Cell> = Vec::with_capacity(cells.len());
    let mut carry = 0.0;
    for mut c in cells {
        if c.area < SLIVER_AREA {
            match out.last_mut() {
                Some(prev) => prev.area += c.area,
                None => carry += c.area,
            }
            continue;
        }
        c.area += carry;
        carry = 0.0;
        out.push(c);
    }
    if carry > 0.0 {
        if let Some(prev) = out.last_mut() {
            prev.area += carry;
        }
    }
    out
}

/// Fold the centroids of the parts of a decomposition with `*`.
///
/// The parts carry the lamina's density. They must lie inside the region,
/// must not overlap (checked at sample points) and their areas must add up to
/// the region's area within `1e-8` relative.
pub fn decompose_and_combine(l: &Lamina, parts: &[Region], q: &QuadratureConfig) -> Result<PointMass> {
    if parts.is_empty() {
        return Err(Error::BadDecomposition("no parts".into()));
    }
    let whole = area(&l.region, q)?.value;
    let mut sum = 0.0;
    for p in parts {
        sum += area(p, q)?.value;
    }
    if (sum - whole).abs() > 1e-8 * whole {
        return Err(Error::BadDecomposition(format!("part areas sum to {sum}, region area is {whole}")));
    }
    for (i, p) in parts.iter().enumerate() {
        for x in interior_samples(p) {
            if !l.region.contains(&x) {
                return Err(Error::BadDecomposition(format!("part {i} leaves the region")));
            }
            for (j, o) in parts.iter().enumerate() {
                if i != j && o.contains_with_margin(&x, 1e-9) {
                    return Err(Error::BadDecomposition(format!("parts {i} and {j} overlap")));
                }
            }
        }
    }
    let mut acc: Option<PointMass> = None;
    for p in parts {
        let part = Lamina::new(p.clone(), l.density.clone())?;
        let c = lamina_centroid(&part, q)?.centroid;
        acc = Some(match acc {
            None => c,
            Some(a) => combine(&a, &c),
        });
    }
    Ok(acc.expect("parts is non-empty"))
}

fn interior_samples(r: &Region) -> Vec<HPoint> {
    let chart = r.chart();
    let mut out = Vec::new();
    for s in &chart.sectors {
        for i in 0..8 {
            let th = s.theta0 + (s.theta1 - s.theta0) * (i as f64 + 0.5) / 8.0;
            let rad = s.bound.at(th);
            for f in [0.2, 0.5, 0.8] {
                out.push(chart.frame.point_to_world(&HPoint::from_timelike(polar_vec(f * rad, th))));
            }
        }
    }
    out
}
