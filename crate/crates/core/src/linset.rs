//! Linear sets: mass distributions on a geodesic.
//!
//! Positions on the carrier are signed arclengths measured from the carrier's
//! point nearest the hyperboloid origin, increasing in the direction of travel.
//! Flipping the carrier's orientation negates moments about points.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::plane::{line_through, DirectedLine, HPoint};
use crate::pointmass::PointMass;
use crate::quadrature::GaussLegendre;

/// Density along the carrier, as a function of arclength.
#[derive(Clone)]
pub enum LineDensity {
    Constant(f64),
    Callable(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for LineDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineDensity::Constant(c) => write!(f, "Constant({c})"),
            LineDensity::Callable(_) => write!(f, "Callable(..)"),
        }
    }
}

impl LineDensity {
    pub fn callable<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        LineDensity::Callable(Arc::new(f))
    }

    pub fn at(&self, s: f64) -> f64 {
        match self {
            LineDensity::Constant(c) => *c,
            LineDensity::Callable(f) => f(s),
        }
    }
}

/// A finite union of closed intervals on a directed geodesic, with density.
#[derive(Clone, Debug)]
pub struct LinearSet {
    carrier: DirectedLine,
    intervals: Vec<(f64, f64)>,
    density: LineDensity,
}

const GL_ORDER: usize = 32;

thread_local! {
    static RULE: GaussLegendre = GaussLegendre::new(GL_ORDER);
}

// Gauss-Legendre on [a, b] compared with the two halves; on disagreement
// above 1e-12 (relative) the interval is split into eight pieces.
pub(crate) fn integrate<F: Fn(f64) -> f64>(a: f64, b: f64, f: F) -> f64 {
    if b <= a {
        return 0.0;
    }
    RULE.with(|g| {
        let whole = g.integrate(a, b, &f);
        let m = 0.5 * (a + b);
        let halves = g.integrate(a, m, &f) + g.integrate(m, b, &f);
        let mag = g.integrate(a, m, |s| f(s).abs()) + g.integrate(m, b, |s| f(s).abs());
        if (whole - halves).abs() <= 1e-12 * mag {
            return halves;
        }
        let h = (b - a) / 8.0;
        (0..8).map(|i| g.integrate(a + h * i as f64, a + h * (i + 1) as f64, &f)).sum()
    })
}

impl LinearSet {
    /// Intervals must be sorted, pairwise disjoint and of positive length.
    pub fn new(carrier: DirectedLine, intervals: Vec<(f64, f64)>, density: LineDensity) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidLinearSet("no intervals".into()));
        }
        for (i, &(s, e)) in intervals.iter().enumerate() {
            if !(s.is_finite() && e.is_finite() && s < e) {
                return Err(Error::InvalidLinearSet(format!("interval [{s}, {e}] has no positive length")));
            }
            if i > 0 && intervals[i - 1].1 >= s {
                return Err(Error::InvalidLinearSet("intervals must be sorted and disjoint".into()));
            }
        }
        if let LineDensity::Callable(_) = density {
            for &(s, e) in &intervals {
                for k in 0..=32 {
                    let v = density.at(s + (e - s) * k as f64 / 32.0);
                    if !(v.is_finite() && v >= 0.0) {
                        return Err(Error::InvalidDensity(format!("density {v} on the carrier")));
                    }
                }
            }
        } else if let LineDensity::Constant(c) = density {
            if !(c.is_finite() && c >= 0.0) {
                return Err(Error::InvalidDensity(format!("constant {c} is negative")));
            }
        }
        let l = LinearSet { carrier, intervals, density };
        let total: f64 = l.intervals.iter().map(|&(s, e)| integrate(s, e, |x| l.density.at(x))).sum();
        if !(total > 0.0) {
            return Err(Error::InvalidLinearSet(format!("total density {total} is not positive")));
        }
        Ok(l)
    }

    /// The segment from `a` to `b` on the line through them.
    pub fn segment(a: &HPoint, b: &HPoint, density: LineDensity) -> Result<Self> {
        let carrier = line_through(a, b)?;
        let (s, e) = (carrier.arclength_of(a), carrier.arclength_of(b));
        Self::new(carrier, vec![(s, e)], density)
    }

    pub fn carrier(&self) -> &DirectedLine {
        &self.carrier
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn density(&self) -> &LineDensity {
        &self.density
    }

    /// The point at arclength `s`.
    pub fn point_at(&self, s: f64) -> HPoint {
        self.carrier.at_arclength(s)
    }

    fn hull(&self) -> (f64, f64) {
        (self.intervals[0].0, self.intervals[self.intervals.len() - 1].1)
    }

    /// `int lambda ds`.
    pub fn total_density(&self) -> f64 {
        self.intervals.iter().map(|&(s, e)| integrate(s, e, |x| self.density.at(x))).sum()
    }
}

/// Moment `int sigma_A(X) lambda(X) sinh d(X, A) dX` about the point at
/// arclength `a`; points ahead of `a` count positively.
pub fn linset_moment_about_point(l: &LinearSet, a: f64) -> f64 {
    let f = |s: f64| l.density.at(s) * (s - a).sinh();
    l.intervals
        .iter()
        .map(|&(s, e)| {
            if a > s && a < e {
                integrate(s, a, f) + integrate(a, e, f)
            } else {
                integrate(s, e, f)
            }
        })
        .sum()
}

/// Arclength of the centroid, the zero of the decreasing function `a -> M_a`.
pub fn linset_centroid(l: &LinearSet) -> f64 {
    let (mut lo, mut hi) = l.hull();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if linset_moment_about_point(l, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Mass `int lambda(X) cosh d(X, C) dX`.
pub fn linset_mass(l: &LinearSet) -> f64 {
    let c = linset_centroid(l);
    l.intervals.iter().map(|&(s, e)| integrate(s, e, |x| l.density.at(x) * (x - c).cosh())).sum()
}

/// The centroid as a point-mass.
pub fn linset_centroid_mass(l: &LinearSet) -> PointMass {
    let c = linset_centroid(l);
    let w = l.intervals.iter().map(|&(s, e)| integrate(s, e, |x| l.density.at(x) * (x - c).cosh())).sum();
    PointMass::new(l.point_at(c), w).expect("mass of a linear set is positive")
}

/// Moment `int sigma_m(X) lambda(X) sinh d(X, m) dX` about a directed line.
pub fn linset_moment_about_line(l: &LinearSet, m: &DirectedLine) -> f64 {
    let b = l.carrier.base_point();
    let w = l.carrier.tangent_at(&b);
    let (bn, wn) = (b.vec().dot(&m.normal()), w.dot(&m.normal()));
    l.intervals
        .iter()
        .map(|&(s, e)| integrate(s, e, |x| l.density.at(x) * (x.cosh() * bn + x.sinh() * wn)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::dist;
    use crate::pointmass::{combine, moment_about_line};
    use crate::testutil::*;

    fn axis() -> DirectedLine {
        // the u-axis, travelling toward +u; base point is the origin
        DirectedLine::through_heading(&HPoint::origin(), 0.0)
    }

    fn uniform(intervals: Vec<(f64, f64)>) -> LinearSet {
        LinearSet::new(axis(), intervals, LineDensity::Constant(1.0)).unwrap()
    }

    // midpoint-rule Riemann sums with many cells
    fn riemann<F: Fn(f64) -> f64>(a: f64, b: f64, f: F) -> f64 {
        let n = 200_000;
        let h = (b - a) / n as f64;
        (0..n).map(|i| f(a + h * (i as f64 + 0.5))).sum::<f64>() * h
    }

    #[test]
    fn arclength_is_anchored_at_origin_foot() {
        let l = axis();
        assert!(dist(&l.at_arclength(0.0), &HPoint::origin()) < 1e-15);
        let p = l.at_arclength(1.3);
        assert!((p.vec().u - 1.3f64.sinh()).abs() < 1e-14);
    }

    #[test]
    fn moments_about_points() {
        let d = 1.7;
        let s = uniform(vec![(-d / 2.0, d / 2.0)]);
        assert!(linset_moment_about_point(&s, 0.0).abs() < 1e-15);
        let s = uniform(vec![(0.0, d)]);
        assert!((linset_moment_about_point(&s, 0.0) - (d.cosh() - 1.0)).abs() < 1e-14);
        let lin = LinearSet::new(axis(), vec![(0.0, 1.0)], LineDensity::callable(|s| s)).unwrap();
        // int_0^1 s sinh s ds = cosh 1 - sinh 1
        let exact = 1f64.cosh() - 1f64.sinh();
        assert!((linset_moment_about_point(&lin, 0.0) - exact).abs() < 1e-15);
    }

    #[test]
    fn moment_flips_with_orientation() {
        let a = HPoint::from_polar(0.3, 1.0).unwrap();
        let b = HPoint::from_polar(1.1, -0.4).unwrap();
        let s = LinearSet::segment(&a, &b, LineDensity::Constant(1.0)).unwrap();
        let r = LinearSet::segment(&b, &a, LineDensity::Constant(1.0)).unwrap();
        let p = s.point_at(s.intervals()[0].0 + 0.2);
        let (ms, mr) = (
            linset_moment_about_point(&s, s.carrier().arclength_of(&p)),
            linset_moment_about_point(&r, r.carrier().arclength_of(&p)),
        );
        assert!((ms + mr).abs() < 1e-12);
    }

    #[test]
    fn centroids() {
        let s = uniform(vec![(0.4, 2.6)]);
        assert!((linset_centroid(&s) - 1.5).abs() < 1e-14);
        let s = uniform(vec![(-3.0, -1.0), (1.0, 3.0)]);
        assert!(linset_centroid(&s).abs() < 1e-14);
        // [0,1] u [2,3]: Riemann-sum moment root by bisection
        let s = uniform(vec![(0.0, 1.0), (2.0, 3.0)]);
        let c = linset_centroid(&s);
        let m = |a: f64| riemann(0.0, 1.0, |x| (x - a).sinh()) + riemann(2.0, 3.0, |x| (x - a).sinh());
        let (mut lo, mut hi) = (0.0, 3.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if m(mid) > 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        assert!((c - lo).abs() < 1e-9, "{c} vs {lo}");
        let scale = riemann(0.0, 3.0, |x| x.sinh().abs());
        assert!(linset_moment_about_point(&s, c).abs() < 1e-12 * scale);
    }

    #[test]
    fn masses() {
        for d in [0.1, 1.0, 5.0] {
            let s = uniform(vec![(-0.3, d - 0.3)]);
            assert!((linset_mass(&s) - 2.0 * (d / 2.0).sinh()).abs() < 1e-10);
        }
        for eps in [1e-2, 1e-4] {
            let s = LinearSet::new(axis(), vec![(0.5, 0.5 + eps)], LineDensity::Constant(1.0 / eps)).unwrap();
            assert!((linset_mass(&s) - 1.0).abs() < eps);
        }
        let s = uniform(vec![(0.0, 1.0), (2.0, 3.0)]);
        let c = linset_centroid(&s);
        let oracle = riemann(0.0, 1.0, |x| (x - c).cosh()) + riemann(2.0, 3.0, |x| (x - c).cosh());
        assert!((linset_mass(&s) - oracle).abs() < 1e-9);
    }

    #[test]
    fn line_moments() {
        let mut rng = rng(60);
        let a = HPoint::from_polar(0.8, 0.2).unwrap();
        let b = HPoint::from_polar(1.4, 2.2).unwrap();
        let s = LinearSet::segment(&a, &b, LineDensity::callable(|x| 1.0 + 0.3 * x.sin())).unwrap();
        assert!(linset_moment_about_line(&s, s.carrier()).abs() < 1e-14);
        let pm = linset_centroid_mass(&s);
        // perpendicular to the carrier through the centroid
        let n = s.carrier().tangent_at(&pm.location);
        let perp = DirectedLine::from_normal(n).unwrap();
        assert!(linset_moment_about_line(&s, &perp).abs() < 1e-10);
        for _ in 0..50 {
            let m = random_line(&mut rng, 2.0);
            let got = linset_moment_about_line(&s, &m);
            assert!((got - moment_about_line(&pm, &m)).abs() < 1e-9 * (1.0 + got.abs()));
        }
    }

    #[test]
    fn decomposition_reproduces_centroid() {
        let s = LinearSet::new(axis(), vec![(-1.0, 2.5)], LineDensity::callable(|x| 2.0 + x)).unwrap();
        let whole = linset_centroid_mass(&s);
        let cuts = [-1.0, -0.2, 0.7, 1.1, 2.5];
        let parts: Vec<PointMass> = cuts
            .windows(2)
            .map(|w| {
                let p = LinearSet::new(axis(), vec![(w[0], w[1])], LineDensity::callable(|x| 2.0 + x)).unwrap();
                linset_centroid_mass(&p)
            })
            .collect();
        let folded = parts[1..].iter().fold(parts[0], |acc, p| combine(&acc, p));
        assert!(dist(&folded.location, &whole.location) < 1e-10);
        assert!((folded.weight() - whole.weight()).abs() < 1e-10 * whole.weight());
    }

    #[test]
    fn transversal_convergence() {
        let s = LinearSet::new(axis(), vec![(0.0, 2.0)], LineDensity::callable(|x| 1.0 + x * x)).unwrap();
        let target = linset_centroid_mass(&s);
        let mut prev = f64::INFINITY;
        for n in [4usize, 8, 16, 32] {
            let h = 2.0 / n as f64;
            let pms: Vec<PointMass> = (0..n)
                .map(|i| {
                    let x = h * (i as f64 + 0.5);
                    PointMass::new(s.point_at(x), (1.0 + x * x) * h).unwrap()
                })
                .collect();
            let c = pms[1..].iter().fold(pms[0], |acc, p| combine(&acc, p));
            let e = dist(&c.location, &target.location) + (c.weight() - target.weight()).abs();
            assert!(e < 0.75 * prev);
            prev = e;
        }
    }

    #[test]
    fn invalid_sets() {
        assert!(LinearSet::new(axis(), vec![], LineDensity::Constant(1.0)).is_err());
        assert!(LinearSet::new(axis(), vec![(1.0, 1.0)], LineDensity::Constant(1.0)).is_err());
        assert!(LinearSet::new(axis(), vec![(0.0, 2.0), (1.0, 3.0)], LineDensity::Constant(1.0)).is_err());
        assert!(LinearSet::new(axis(), vec![(0.0, 1.0)], LineDensity::Constant(0.0)).is_err());
        assert!(LinearSet::new(axis(), vec![(0.0, 1.0)], LineDensity::callable(|x| x - 0.5)).is_err());
    }
}
