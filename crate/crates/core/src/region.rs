//! Compact regions of the hyperbolic plane.
//!
//! Every region is star-shaped about an anchor point and is integrated in
//! polar coordinates about that anchor.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::minkowski::MVec;
use crate::plane::{dist, line_through, Frame, HPoint};
use crate::quadrature::{polar_vec, PolarChart, RadialBound, Sector};
use crate::trig::Triangle;

/// A region, as used by a lamina.
///
/// Wedge angles and polygon rotations are measured in the frame at the
/// apex/center obtained by transporting the standard frame from the
/// hyperboloid origin ([`Frame::at`]). A polygon with rotation 0 has a side
/// midpoint on the ray `theta = 0`. Polar-graph radii are samples at
/// `theta_k = -pi + 2 pi k / N`, joined linearly.
#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    Triangle(Triangle),
    Disk { center: HPoint, radius: f64 },
    Wedge { apex: HPoint, radius: f64, theta1: f64, theta2: f64 },
    RegularPolygon { center: HPoint, sides: u32, inradius: f64, rotation: f64 },
    PolarGraph { center: HPoint, radii: Vec<f64> },
}

impl Region {
    pub fn triangle(a: HPoint, b: HPoint, c: HPoint) -> Result<Self> {
        Ok(Region::Triangle(Triangle::new(a, b, c)?))
    }

    pub fn disk(center: HPoint, radius: f64) -> Result<Self> {
        let r = Region::Disk { center, radius };
        r.validate()?;
        Ok(r)
    }

    pub fn wedge(apex: HPoint, radius: f64, theta1: f64, theta2: f64) -> Result<Self> {
        let r = Region::Wedge { apex, radius, theta1, theta2 };
        r.validate()?;
        Ok(r)
    }

    /// The wedge `-pi/n <= theta <= pi/n`, `rho <= r` about `apex`.
    pub fn symmetric_wedge(apex: HPoint, radius: f64, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidWedge("n must be at least 1".into()));
        }
        let h = PI / n as f64;
        Self::wedge(apex, radius, -h, h)
    }

    pub fn regular_polygon(center: HPoint, sides: u32, inradius: f64, rotation: f64) -> Result<Self> {
        let r = Region::RegularPolygon { center, sides, inradius, rotation };
        r.validate()?;
        Ok(r)
    }

    pub fn polar_graph(center: HPoint, radii: Vec<f64>) -> Result<Self> {
        let r = Region::PolarGraph { center, radii };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Region::Triangle(t) => Triangle::new(t.a, t.b, t.c).map(|_| ()),
            Region::Disk { radius, .. } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(Error::InvalidRegion(format!("disk radius {radius} must be positive")));
                }
                Ok(())
            }
            Region::Wedge { radius, theta1, theta2, .. } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(Error::InvalidWedge(format!("radius {radius} must be positive")));
                }
                let w = theta2 - theta1;
                if !(w.is_finite() && w > 0.0 && w <= 2.0 * PI * (1.0 + 1e-15)) {
                    return Err(Error::InvalidWedge(format!("angle window [{theta1}, {theta2}]")));
                }
                Ok(())
            }
            Region::RegularPolygon { sides, inradius, rotation, .. } => {
                let bad = Error::InvalidPolygon { sides: *sides, inradius: *inradius };
                if *sides < 3 || !(inradius.is_finite() && *inradius > 0.0) || !rotation.is_finite() {
                    return Err(bad);
                }
                if inradius.cosh() * (PI / *sides as f64).sin() >= 1.0 {
                    return Err(bad);
                }
                Ok(())
            }
            Region::PolarGraph { radii, .. } => {
                if radii.len() < 3 {
                    return Err(Error::InvalidRegion("polar graph needs at least 3 radii".into()));
                }
                if radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
                    return Err(Error::InvalidRegion("polar graph radii must be positive".into()));
                }
                Ok(())
            }
        }
    }

    /// Interior point about which the region is star-shaped. For a wedge this
    /// is the apex, on the boundary.
    pub fn anchor(&self) -> HPoint {
        match self {
            Region::Triangle(t) => HPoint::from_timelike(t.a.vec() + t.b.vec() + t.c.vec()),
            Region::Disk { center, .. } => *center,
            Region::Wedge { apex, .. } => *apex,
            Region::RegularPolygon { center, .. } => *center,
            Region::PolarGraph { center, .. } => *center,
        }
    }

    /// Corners of polygonal regions, counterclockwise.
    pub fn vertices(&self) -> Vec<HPoint> {
        match self {
            Region::Triangle(t) => {
                if t.is_counterclockwise() {
                    vec![t.a, t.b, t.c]
                } else {
                    vec![t.a, t.c, t.b]
                }
            }
            Region::RegularPolygon { center, sides, inradius, rotation } => {
                let n = *sides as f64;
                let circum = (inradius.tanh() / (PI / n).cos()).atanh();
                let f = Frame::at_with_heading(center, *rotation);
                (0..*sides).map(|k| f.polar(circum, (2 * k + 1) as f64 * PI / n)).collect()
            }
            _ => Vec::new(),
        }
    }

    pub(crate) fn chart(&self) -> PolarChart {
        match self {
            Region::Triangle(t) => {
                let frame = Frame::at(&self.anchor());
                let mut v: Vec<(f64, HPoint)> = [t.a, t.b, t.c]
                    .iter()
                    .map(|p| {
                        let l = frame.point_to_local(p);
                        (l.to_polar().1, l)
                    })
                    .collect();
                v.sort_by(|x, y| x.0.total_cmp(&y.0));
                let sectors = (0..3)
                    .map(|i| {
                        let (a, p) = v[i];
                        let (mut b, q) = v[(i + 1) % 3];
                        if i == 2 {
                            b += 2.0 * PI;
                        }
                        let n = line_through(&p, &q).expect("triangle vertices are distinct").normal();
                        Sector { theta0: a, theta1: b, bound: RadialBound::Geodesic(n) }
                    })
                    .collect();
                PolarChart { frame, sectors }
            }
            Region::Disk { center, radius } => PolarChart {
                frame: Frame::at(center),
                sectors: vec![Sector { theta0: -PI, theta1: PI, bound: RadialBound::Constant(*radius) }],
            },
            Region::Wedge { apex, radius, theta1, theta2 } => PolarChart {
                frame: Frame::at(apex),
                sectors: vec![Sector { theta0: *theta1, theta1: *theta2, bound: RadialBound::Constant(*radius) }],
            },
            Region::RegularPolygon { center, sides, inradius, rotation } => {
                let n = *sides as f64;
                let (sh, ch) = (inradius.sinh(), inradius.cosh());
                let sectors = (0..*sides)
                    .map(|k| {
                        let psi = 2.0 * PI * k as f64 / n;
                        let normal = MVec::new(sh, ch * psi.cos(), ch * psi.sin());
                        Sector { theta0: psi - PI / n, theta1: psi + PI / n, bound: RadialBound::Geodesic(normal) }
                    })
                    .collect();
                PolarChart { frame: Frame::at_with_heading(center, *rotation), sectors }
            }
            Region::PolarGraph { center, radii } => {
                let n = radii.len();
                let step = 2.0 * PI / n as f64;
                let sectors = (0..n)
                    .map(|k| {
                        let theta0 = -PI + step * k as f64;
                        let theta1 = if k + 1 == n { PI } else { -PI + step * (k + 1) as f64 };
                        Sector {
                            theta0,
                            theta1,
                            bound: RadialBound::Linear { theta0, r0: radii[k], theta1, r1: radii[(k + 1) % n] },
                        }
                    })
                    .collect();
                PolarChart { frame: Frame::at(center), sectors }
            }
        }
    }

    /// Whether `p` lies in the region, up to a relative tolerance of `1e-10`.
    pub fn contains(&self, p: &HPoint) -> bool {
        self.contains_with_margin(p, -1e-10)
    }

    /// Whether `p` lies at least `margin` (relative to the radial extent)
    /// inside the region; a negative margin enlarges it.
    pub(crate) fn contains_with_margin(&self, p: &HPoint, margin: f64) -> bool {
        let chart = self.chart();
        let (rho, theta) = chart.frame.polar_of(p);
        for s in &chart.sectors {
            for k in -1..=1 {
                let th = theta + 2.0 * PI * k as f64;
                let eps = 1e-12;
                if th >= s.theta0 - eps && th <= s.theta1 + eps {
                    let th = th.clamp(s.theta0, s.theta1);
                    let r = s.bound.at(th);
                    if rho <= r * (1.0 - margin) - margin.signum() * 1e-12 {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Boundary points: corners and, for curved pieces, `per_piece` samples.
    pub fn boundary_samples(&self, per_piece: usize) -> Vec<HPoint> {
        let chart = self.chart();
        let mut out = Vec::new();
        if let Region::Wedge { apex, .. } = self {
            out.push(*apex);
        }
        for s in &chart.sectors {
            let k = match s.bound {
                RadialBound::Geodesic(_) => 1,
                _ => per_piece.max(1),
            };
            for i in 0..=k {
                let th = s.theta0 + (s.theta1 - s.theta0) * i as f64 / k as f64;
                out.push(chart.frame.point_to_world(&HPoint::from_timelike(polar_vec(s.bound.at(th), th))));
            }
        }
        out
    }

    /// Largest distance between two points of the region.
    pub fn diameter(&self) -> f64 {
        match self {
            Region::Disk { radius, .. } => 2.0 * radius,
            Region::Triangle(_) | Region::RegularPolygon { .. } => max_pairwise(&self.vertices()),
            _ => max_pairwise(&self.boundary_samples(256)),
        }
    }

    /// Boundary as geodesic segments and circular arcs, if it has that form.
    pub(crate) fn boundary_pieces(&self) -> Option<Vec<BoundaryPiece>> {
        match self {
            Region::Triangle(_) | Region::RegularPolygon { .. } => {
                let v = self.vertices();
                Some((0..v.len()).map(|i| BoundaryPiece::Segment(v[i], v[(i + 1) % v.len()])).collect())
            }
            Region::Disk { center, radius } => Some(vec![BoundaryPiece::Arc {
                frame: Frame::at(center),
                radius: *radius,
                theta0: -PI,
                theta1: PI,
            }]),
            Region::Wedge { apex, radius, theta1, theta2 } => {
                let frame = Frame::at(apex);
                let arc = BoundaryPiece::Arc { frame, radius: *radius, theta0: *theta1, theta1: *theta2 };
                if theta2 - theta1 >= 2.0 * PI * (1.0 - 1e-15) {
                    return Some(vec![arc]);
                }
                let (p, q) = (frame.polar(*radius, *theta1), frame.polar(*radius, *theta2));
                Some(vec![BoundaryPiece::Segment(*apex, p), arc, BoundaryPiece::Segment(q, *apex)])
            }
            Region::PolarGraph { .. } => None,
        }
    }

    /// Radius of a ball about the anchor containing the region.
    pub(crate) fn anchor_radius(&self) -> f64 {
        self.chart().sectors.iter().map(|s| s.bound.range(s.theta0, s.theta1).1).fold(0.0, f64::max)
    }
}

/// A piece of a region boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum BoundaryPiece {
    Segment(HPoint, HPoint),
    /// Points at `radius` from `frame.origin` with polar angle in `[theta0, theta1]`.
    Arc { frame: Frame, radius: f64, theta0: f64, theta1: f64 },
}

/// Whether `theta` lies in `[a, b]` modulo `2 pi`, with slack `eps`.
pub(crate) fn angle_in(theta: f64, a: f64, b: f64, eps: f64) -> bool {
    (-1..=1).any(|k| {
        let t = theta + 2.0 * PI * k as f64;
        t >= a - eps && t <= b + eps
    })
}

fn max_pairwise(pts: &[HPoint]) -> f64 {
    let mut m = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            m = m.max(dist(&pts[i], &pts[j]));
        }
    }
    m
}
