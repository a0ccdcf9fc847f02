//! Gauss-Legendre rules and adaptive integration over star-shaped polar charts.
//!
//! A chart is a frame plus angular sectors, each bounded radially by
//! `rho <= R(theta)`. Integration uses `dA = sinh(rho) d rho d theta`, tensor
//! Gauss-Legendre in `(rho, theta)` and bisection of angular panels. Leaf
//! results are reduced with [`pairwise_sum`] in panel order, so sequential and
//! parallel runs give identical bits.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::{pairwise_sum, MVec};
use crate::plane::Frame;

/// Nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            if 2 * i + 1 == n {
                x = 0.0;
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrate `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let h = 0.5 * (b - a);
        let c = 0.5 * (b + a);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(c + h * x);
        }
        s * h
    }
}

// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Settings for two-dimensional quadrature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    /// Gauss-Legendre nodes per radial piece (pieces are at most one unit long).
    pub radial_order: usize,
    /// Gauss-Legendre nodes per angular panel.
    pub angular_order: usize,
    /// Maximum number of panel bisections.
    pub max_depth: u32,
    /// Target error relative to the magnitude of the integral.
    pub tolerance: f64,
    /// Evaluate panels on the rayon thread pool.
    pub parallel: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { radial_order: 16, angular_order: 16, max_depth: 20, tolerance: 1e-8, parallel: true }
    }
}

impl QuadratureConfig {
    pub fn with_tolerance(tolerance: f64) -> Self {
        QuadratureConfig { tolerance, ..Default::default() }
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.radial_order < 2 || self.angular_order < 2 {
            return Err(Error::InvalidConfig("orders must be at least 2".into()));
        }
        if self.radial_order > 256 || self.angular_order > 256 {
            return Err(Error::InvalidConfig("orders above 256 are not supported".into()));
        }
        if !(self.tolerance > 1e-14 && self.tolerance < 1e-2) {
            return Err(Error::InvalidConfig(format!("tolerance {} outside (1e-14, 1e-2)", self.tolerance)));
        }
        if self.max_depth == 0 || self.max_depth > 40 {
            return Err(Error::InvalidConfig(format!("max_depth {} outside 1..=40", self.max_depth)));
        }
        Ok(())
    }
}

/// Radial extent of a sector as a function of the polar angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum RadialBound {
    Constant(f64),
    /// Bounded by the geodesic with this (chart-local) normal.
    Geodesic(MVec),
    /// Linear in `theta` between two samples.
    Linear { theta0: f64, r0: f64, theta1: f64, r1: f64 },
}

impl RadialBound {
    pub(crate) fn at(&self, theta: f64) -> f64 {
        match *self {
            RadialBound::Constant(r) => r,
            RadialBound::Geodesic(n) => {
                let (s, c) = theta.sin_cos();
                let k = (n.t / (n.u * c + n.v * s)).clamp(0.0, 1.0 - 1e-16);
                k.atanh()
            }
            RadialBound::Linear { theta0, r0, theta1, r1 } => r0 + (r1 - r0) * (theta - theta0) / (theta1 - theta0),
        }
    }

    /// Smallest and largest radius over `[a, b]`.
    pub(crate) fn range(&self, a: f64, b: f64) -> (f64, f64) {
        match *self {
            RadialBound::Constant(r) => (r, r),
            RadialBound::Linear { .. } => {
                let (x, y) = (self.at(a), self.at(b));
                (x.min(y), x.max(y))
            }
            RadialBound::Geodesic(n) => {
                // radius grows with the angle away from the foot direction
                let (x, y) = (self.at(a), self.at(b));
                let mut lo = x.min(y);
                let foot = (n.v * n.t.signum()).atan2(n.u * n.t.signum());
                for k in -2..=2 {
                    let f = foot + 2.0 * PI * k as f64;
                    if f > a && f < b {
                        lo = lo.min(self.at(f));
                    }
                }
                (lo, x.max(y))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Sector {
    pub theta0: f64,
    pub theta1: f64,
    pub bound: RadialBound,
}

/// A region written as `rho <= R(theta)` in polar coordinates about a frame.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct PolarChart {
    pub frame: Frame,
    pub sectors: Vec<Sector>,
}

/// Local hyperboloid point with polar coordinates `(rho, theta)`.
pub(crate) fn polar_vec(rho: f64, theta: f64) -> MVec {
    let (s, c) = theta.sin_cos();
    let sh = rho.sinh();
    MVec::new(rho.cosh(), sh * c, sh * s)
}

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Integral<const N: usize> {
    pub value: [f64; N],
    /// Largest component of the initial estimate; tolerances are relative to it.
    pub scale: f64,
    pub error: f64,
    pub panels: usize,
}

struct Rules {
    radial: GaussLegendre,
    angular: GaussLegendre,
}

const INITIAL_PANEL: f64 = PI / 8.0;

/// Integrate `f(X) dA` over the chart; `f` receives chart-local points.
pub(crate) fn integrate<const N: usize, F>(chart: &PolarChart, cfg: &QuadratureConfig, f: F) -> Result<Integral<N>>
where
    F: Fn(&MVec) -> [f64; N] + Sync,
{
    cfg.validate()?;
    let rules = Rules { radial: GaussLegendre::new(cfg.radial_order), angular: GaussLegendre::new(cfg.angular_order) };
    let mut panels = Vec::new();
    for s in &chart.sectors {
        let w = s.theta1 - s.theta0;
        let k = ((w / INITIAL_PANEL).ceil() as usize).max(1);
        for i in 0..k {
            let a = s.theta0 + w * i as f64 / k as f64;
            let b = if i + 1 == k { s.theta1 } else { s.theta0 + w * (i + 1) as f64 / k as f64 };
            panels.push((s.bound, a, b));
        }
    }
    let total_width: f64 = chart.sectors.iter().map(|s| s.theta1 - s.theta0).sum();

    let coarse: Vec<[f64; N]> = map_ordered(cfg.parallel, &panels, |&(bound, a, b)| {
        panel_estimate(&rules, &bound, a, b, 1, &f)
    });
    let initial = pairwise_sum(&coarse);
    let scale = initial.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let target = cfg.tolerance * scale;
    let per_radian = target / total_width;

    let work: Vec<_> = panels.iter().zip(&coarse).collect();
    let refined: Vec<Refined<N>> = map_ordered(cfg.parallel, &work, |&(&(bound, a, b), c)| {
        let mut out = Refined { leaves: Vec::new(), error: 0.0, converged: true };
        refine(&rules, &bound, a, b, *c, 0, cfg.max_depth, per_radian, &f, &mut out);
        out
    });

    let mut leaves = Vec::new();
    let mut error = 0.0;
    let mut converged = true;
    for r in refined {
        leaves.extend(r.leaves);
        error += r.error;
        converged &= r.converged;
    }
    let panels = leaves.len();
    if !converged && error > target {
        return Err(Error::QuadratureNotConverged { error, target, panels });
    }
    Ok(Integral { value: pairwise_sum(&leaves), scale, error, panels })
}

fn map_ordered<T: Sync, R: Send, G: Fn(&T) -> R + Sync + Send>(parallel: bool, items: &[T], g: G) -> Vec<R> {
    if parallel {
        items.par_iter().map(g).collect()
    } else {
        items.iter().map(g).collect()
    }
}

struct Refined<const N: usize> {
    leaves: Vec<[f64; N]>,
    error: f64,
    converged: bool,
}

#[allow(clippy::too_many_arguments)]
fn refine<const N: usize, F>(
    rules: &Rules,
    bound: &RadialBound,
    a: f64,
    b: f64,
    coarse: [f64; N],
    depth: u32,
    max_depth: u32,
    per_radian: f64,
    f: &F,
    out: &mut Refined<N>,
) where
    F: Fn(&MVec) -> [f64; N],
{
    let m = 0.5 * (a + b);
    let l = panel_estimate(rules, bound, a, m, 2, f);
    let r = panel_estimate(rules, bound, m, b, 2, f);
    let mut e = 0.0f64;
    for i in 0..N {
        e = e.max((coarse[i] - l[i] - r[i]).abs());
    }
    if e <= per_radian * (b - a) || depth + 1 >= max_depth {
        if e > per_radian * (b - a) {
            out.converged = false;
        }
        out.leaves.push(l);
        out.leaves.push(r);
        out.error += e;
        return;
    }
    refine(rules, bound, a, m, l, depth + 1, max_depth, per_radian, f, out);
    refine(rules, bound, m, b, r, depth + 1, max_depth, per_radian, f, out);
}

fn panel_estimate<const N: usize, F>(rules: &Rules, bound: &RadialBound, a: f64, b: f64, split: usize, f: &F) -> [f64; N]
where
    F: Fn(&MVec) -> [f64; N],
{
    let mut acc = [0.0; N];
    let ha = 0.5 * (b - a);
    let ca = 0.5 * (b + a);
    for (xa, wa) in rules.angular.nodes.iter().zip(&rules.angular.weights) {
        let theta = ca + ha * xa;
        let (st, ct) = theta.sin_cos();
        let rmax = bound.at(theta);
        if rmax <= 0.0 {
            continue;
        }
        let pieces = split * (rmax.ceil() as usize).max(1);
        let hr = 0.5 * rmax / pieces as f64;
        let mut inner = [0.0; N];
        for p in 0..pieces {
            let cr = hr * (2 * p + 1) as f64;
            for (xr, wr) in rules.radial.nodes.iter().zip(&rules.radial.weights) {
                let rho = cr + hr * xr;
                let sh = rho.sinh();
                let x = MVec::new(rho.cosh(), sh * ct, sh * st);
                let v = f(&x);
                let w = wr * sh;
                for i in 0..N {
                    inner[i] += w * v[i];
                }
            }
        }
        for i in 0..N {
            acc[i] += wa * hr * inner[i];
        }
    }
    for v in acc.iter_mut() {
        *v *= ha;
    }
    acc
}
