//! Points, directed geodesics and coordinate models of the hyperbolic plane.
//!
//! Everything is stored on the upper sheet of the hyperboloid
//! `t^2 - u^2 - v^2 = 1`; the Poincare disk, the upper half-plane and Gauss
//! polar coordinates `(rho, theta)` (metric `d rho^2 + sinh^2 rho d theta^2`)
//! are conversions at the boundary. Polar angles are reported in `(-pi, pi]`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::MVec;

/// Relative tolerance for accepting user-supplied hyperboloid coordinates.
pub const POINT_TOL: f64 = 1e-12;
/// Points closer than this are treated as the same point.
pub const COINCIDENT_TOL: f64 = 1e-12;

/// Wrap an angle into `(-pi, pi]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut a = theta % (2.0 * PI);
    if a <= -PI {
        a += 2.0 * PI;
    } else if a > PI {
        a -= 2.0 * PI;
    }
    a
}

/// A point of the hyperbolic plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HPoint(MVec);

impl HPoint {
    pub fn origin() -> Self {
        HPoint(MVec::new(1.0, 0.0, 0.0))
    }

    /// Build from hyperboloid coordinates, rejecting vectors that are not on
    /// the upper sheet. Accepted input is re-projected onto the sheet.
    pub fn from_hyperboloid(t: f64, u: f64, v: f64) -> Result<Self> {
        let x = MVec::new(t, u, v);
        if !x.is_finite() || t <= 0.0 {
            return Err(Error::InvalidPoint(format!("({t}, {u}, {v}) is not on the upper sheet")));
        }
        let defect = -x.norm_sq() - 1.0;
        if defect.abs() > POINT_TOL * t * t {
            return Err(Error::InvalidPoint(format!(
                "t^2 - u^2 - v^2 - 1 = {defect:e} for ({t}, {u}, {v})"
            )));
        }
        Ok(Self::from_timelike(x))
    }

    /// Normalize a timelike vector onto the upper sheet. The caller guarantees
    /// the vector is timelike.
    pub(crate) fn from_timelike(x: MVec) -> Self {
        let n = (-x.norm_sq()).sqrt();
        let p = x.scale(1.0 / n);
        if p.t < 0.0 {
            HPoint(-p)
        } else {
            HPoint(p)
        }
    }

    pub fn from_poincare(x: f64, y: f64) -> Result<Self> {
        let r2 = x * x + y * y;
        if !(x.is_finite() && y.is_finite()) || r2 >= 1.0 {
            return Err(Error::OutOfDomain {
                model: "poincare",
                detail: format!("|({x}, {y})|^2 = {r2} is not below 1"),
            });
        }
        let d = 1.0 - r2;
        Ok(HPoint(MVec::new((1.0 + r2) / d, 2.0 * x / d, 2.0 * y / d)))
    }

    pub fn from_half_plane(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite()) || y <= 0.0 {
            return Err(Error::OutOfDomain {
                model: "half-plane",
                detail: format!("y = {y} is not positive"),
            });
        }
        let s = x * x + y * y;
        Ok(HPoint(MVec::new((s + 1.0) / (2.0 * y), (s - 1.0) / (2.0 * y), x / y)))
    }

    pub fn from_polar(rho: f64, theta: f64) -> Result<Self> {
        if !(rho.is_finite() && theta.is_finite()) || rho < 0.0 {
            return Err(Error::OutOfDomain {
                model: "gauss-polar",
                detail: format!("rho = {rho} must be finite and non-negative"),
            });
        }
        Ok(Self::polar_unchecked(rho, theta))
    }

    pub(crate) fn polar_unchecked(rho: f64, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let sh = rho.sinh();
        HPoint(MVec::new(rho.cosh(), sh * c, sh * s))
    }

    pub fn from_model(c: ModelCoords) -> Result<Self> {
        match c {
            ModelCoords::Hyperboloid { t, u, v } => Self::from_hyperboloid(t, u, v),
            ModelCoords::Poincare { x, y } => Self::from_poincare(x, y),
            ModelCoords::HalfPlane { x, y } => Self::from_half_plane(x, y),
            ModelCoords::GaussPolar { rho, theta } => Self::from_polar(rho, theta),
        }
    }

    pub fn vec(&self) -> MVec {
        self.0
    }

    pub fn to_poincare(&self) -> (f64, f64) {
        let p = self.0;
        (p.u / (1.0 + p.t), p.v / (1.0 + p.t))
    }

    pub fn to_half_plane(&self) -> (f64, f64) {
        let p = self.0;
        // t - u without cancellation
        let t_minus_u = if p.u > 0.0 { (1.0 + p.v * p.v) / (p.t + p.u) } else { p.t - p.u };
        (p.v / t_minus_u, 1.0 / t_minus_u)
    }

    pub fn to_polar(&self) -> (f64, f64) {
        let p = self.0;
        let r = p.u.hypot(p.v);
        if r == 0.0 {
            return (0.0, 0.0);
        }
        (r.asinh(), wrap_angle(p.v.atan2(p.u)))
    }

    pub fn to_model(&self, model: Model) -> ModelCoords {
        match model {
            Model::Hyperboloid => ModelCoords::Hyperboloid { t: self.0.t, u: self.0.u, v: self.0.v },
            Model::Poincare => {
                let (x, y) = self.to_poincare();
                ModelCoords::Poincare { x, y }
            }
            Model::HalfPlane => {
                let (x, y) = self.to_half_plane();
                ModelCoords::HalfPlane { x, y }
            }
            Model::GaussPolar => {
                let (rho, theta) = self.to_polar();
                ModelCoords::GaussPolar { rho, theta }
            }
        }
    }
}

/// Hyperbolic distance.
///
/// Uses `d = 2 asinh(|a - b| / 2)` with the Minkowski length of the chord,
/// which stays accurate for nearby points where `acosh(-<a, b>)` does not.
pub fn dist(a: &HPoint, b: &HPoint) -> f64 {
    let w = a.0 - b.0;
    let q = w.norm_sq().max(0.0);
    2.0 * (q.sqrt() / 2.0).asinh()
}

/// Unit tangent at `a` pointing toward `b`, together with `dist(a, b)`.
pub(crate) fn unit_tangent(a: &HPoint, b: &HPoint) -> Result<(MVec, f64)> {
    let chord = b.0 - a.0;
    let q = chord.norm_sq().max(0.0);
    let d = 2.0 * (q.sqrt() / 2.0).asinh();
    if d < COINCIDENT_TOL {
        return Err(Error::CoincidentPoints(d));
    }
    // b + <a, b> a, with 1 + <a, b> = -q / 2 taken from the chord
    let w = chord - a.0.scale(q / 2.0);
    let n = w.norm_sq().max(0.0).sqrt();
    Ok((w.scale(1.0 / n), d))
}

/// The point at signed arclength `s` from `a` along the geodesic through `a`
/// and `b`, measured toward `b`.
pub fn point_along(a: &HPoint, b: &HPoint, s: f64) -> Result<HPoint> {
    let (w, _) = unit_tangent(a, b)?;
    // already on the sheet; renormalizing far points only adds cancellation error
    Ok(HPoint(a.0.scale(s.cosh()) + w.scale(s.sinh())))
}

/// Midpoint of the segment `ab`.
pub fn midpoint(a: &HPoint, b: &HPoint) -> HPoint {
    if a == b {
        return *a;
    }
    HPoint::from_timelike(a.0 + b.0)
}

/// An oriented geodesic, represented by its unit spacelike normal.
///
/// Points with positive inner product against the normal lie to the left of
/// the direction of travel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectedLine {
    normal: MVec,
}

impl DirectedLine {
    pub fn from_normal(n: MVec) -> Result<Self> {
        if !n.is_finite() {
            return Err(Error::InvalidLine(format!("{n:?}")));
        }
        let q = n.norm_sq();
        if (q - 1.0).abs() > POINT_TOL * n.max_abs().powi(2).max(1.0) {
            return Err(Error::InvalidLine(format!("Minkowski norm {q} is not 1")));
        }
        Ok(DirectedLine { normal: n.scale(1.0 / q.sqrt()) })
    }

    /// Normalize an arbitrary spacelike vector into a line normal.
    pub(crate) fn from_spacelike(n: MVec) -> Result<Self> {
        let q = n.norm_sq();
        if !(q > 0.0) || !n.is_finite() {
            return Err(Error::InvalidLine(format!("{n:?} is not spacelike")));
        }
        Ok(DirectedLine { normal: n.scale(1.0 / q.sqrt()) })
    }

    /// The geodesic through `a` and `b`, directed from `a` to `b`.
    pub fn through(a: &HPoint, b: &HPoint) -> Result<Self> {
        let (w, _) = unit_tangent(a, b)?;
        Self::from_spacelike(a.0.cross(&w))
    }

    /// The geodesic through `p` leaving it at `heading` radians, measured in
    /// the transported frame at `p` (see [`Frame::at`]).
    pub fn through_heading(p: &HPoint, heading: f64) -> Self {
        let f = Frame::at(p);
        let (s, c) = heading.sin_cos();
        let w = f.e1.scale(c) + f.e2.scale(s);
        DirectedLine { normal: p.0.cross(&w) }.renormalized()
    }

    fn renormalized(self) -> Self {
        let q = self.normal.norm_sq();
        DirectedLine { normal: self.normal.scale(1.0 / q.sqrt()) }
    }

    pub fn normal(&self) -> MVec {
        self.normal
    }

    pub fn reverse(&self) -> Self {
        DirectedLine { normal: -self.normal }
    }

    /// `sigma_m(x) * sinh d(x, m)`.
    pub fn signed_sinh_dist(&self, x: &HPoint) -> f64 {
        x.0.dot(&self.normal)
    }

    /// Side of the line: `+1` left, `-1` right, `0` on the line.
    pub fn side(&self, x: &HPoint) -> i8 {
        let s = self.signed_sinh_dist(x);
        if s.abs() <= POINT_TOL * x.0.t {
            0
        } else if s > 0.0 {
            1
        } else {
            -1
        }
    }

    pub fn dist_to(&self, x: &HPoint) -> f64 {
        self.signed_sinh_dist(x).abs().asinh()
    }

    pub fn foot_of_perpendicular(&self, x: &HPoint) -> HPoint {
        let s = self.signed_sinh_dist(x);
        HPoint::from_timelike(x.0 - self.normal.scale(s))
    }

    /// Unit tangent in the direction of travel at a point of the line.
    pub fn tangent_at(&self, p: &HPoint) -> MVec {
        self.normal.cross(&p.0)
    }

    /// Point of the line nearest the hyperboloid origin.
    pub fn base_point(&self) -> HPoint {
        self.foot_of_perpendicular(&HPoint::origin())
    }

    /// Arclength parametrization from [`Self::base_point`] in the direction of
    /// travel.
    pub fn at_arclength(&self, s: f64) -> HPoint {
        let b = self.base_point();
        let w = self.tangent_at(&b);
        HPoint::from_timelike(b.0.scale(s.cosh()) + w.scale(s.sinh()))
    }

    /// Signed arclength coordinate of (the projection of) `x`.
    pub fn arclength_of(&self, x: &HPoint) -> f64 {
        let b = self.base_point();
        let w = self.tangent_at(&b);
        let f = self.foot_of_perpendicular(x);
        f.0.dot(&w).asinh()
    }

    /// Common point of two lines, if they intersect.
    pub fn intersection(&self, other: &DirectedLine) -> Option<HPoint> {
        let p = self.normal.cross(&other.normal);
        let q = p.norm_sq();
        if !(q < -1e-24) {
            return None;
        }
        Some(HPoint::from_timelike(p))
    }

    /// Null vector of the ideal endpoint reached in the direction of travel.
    pub fn forward_ideal(&self) -> MVec {
        let b = self.base_point();
        b.0 + self.tangent_at(&b)
    }
}

pub fn line_through(a: &HPoint, b: &HPoint) -> Result<DirectedLine> {
    DirectedLine::through(a, b)
}

pub fn signed_sinh_dist(m: &DirectedLine, x: &HPoint) -> f64 {
    m.signed_sinh_dist(x)
}

pub fn foot_of_perpendicular(m: &DirectedLine, x: &HPoint) -> HPoint {
    m.foot_of_perpendicular(x)
}

/// An orthonormal frame at a point: `origin` plus two unit tangent vectors
/// with the orientation of the standard frame at the hyperboloid origin.
///
/// Gauss polar coordinates about `origin` are read in this frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub origin: HPoint,
    pub e1: MVec,
    pub e2: MVec,
}

impl Frame {
    pub fn standard() -> Self {
        Frame {
            origin: HPoint::origin(),
            e1: MVec::new(0.0, 1.0, 0.0),
            e2: MVec::new(0.0, 0.0, 1.0),
        }
    }

    /// Frame at `p` obtained by transporting the standard frame along the
    /// geodesic from the hyperboloid origin.
    pub fn at(p: &HPoint) -> Self {
        let x = p.0;
        let k = 1.0 / (1.0 + x.t);
        let e1 = MVec::new(x.u, 1.0 + x.u * x.u * k, x.u * x.v * k);
        let e2 = MVec::new(x.v, x.u * x.v * k, 1.0 + x.v * x.v * k);
        Frame { origin: *p, e1, e2 }
    }

    /// Transported frame rotated by `heading`.
    pub fn at_with_heading(p: &HPoint, heading: f64) -> Self {
        let f = Self::at(p);
        let (s, c) = heading.sin_cos();
        Frame {
            origin: *p,
            e1: f.e1.scale(c) + f.e2.scale(s),
            e2: f.e2.scale(c) - f.e1.scale(s),
        }
    }

    pub fn to_local(&self, x: &MVec) -> MVec {
        MVec::new(-x.dot(&self.origin.0), x.dot(&self.e1), x.dot(&self.e2))
    }

    pub fn to_world(&self, l: &MVec) -> MVec {
        self.origin.0.scale(l.t) + self.e1.scale(l.u) + self.e2.scale(l.v)
    }

    pub fn point_to_local(&self, p: &HPoint) -> HPoint {
        HPoint::from_timelike(self.to_local(&p.0))
    }

    pub fn point_to_world(&self, p: &HPoint) -> HPoint {
        HPoint::from_timelike(self.to_world(&p.0))
    }

    pub fn line_to_local(&self, m: &DirectedLine) -> DirectedLine {
        DirectedLine { normal: self.to_local(&m.normal) }.renormalized()
    }

    pub fn line_to_world(&self, m: &DirectedLine) -> DirectedLine {
        DirectedLine { normal: self.to_world(&m.normal) }.renormalized()
    }

    /// World point with polar coordinates `(rho, theta)` about this frame.
    pub fn polar(&self, rho: f64, theta: f64) -> HPoint {
        self.point_to_world(&HPoint::polar_unchecked(rho, theta))
    }

    /// Polar coordinates of a world point about this frame.
    pub fn polar_of(&self, p: &HPoint) -> (f64, f64) {
        self.point_to_local(p).to_polar()
    }
}

/// Coordinate model tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Hyperboloid,
    Poincare,
    HalfPlane,
    GaussPolar,
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Hyperboloid => "hyperboloid",
            Model::Poincare => "poincare",
            Model::HalfPlane => "half-plane",
            Model::GaussPolar => "gauss-polar",
        }
    }

    pub fn parse(s: &str) -> Option<Model> {
        match s {
            "hyperboloid" => Some(Model::Hyperboloid),
            "poincare" => Some(Model::Poincare),
            "half-plane" => Some(Model::HalfPlane),
            "gauss-polar" => Some(Model::GaussPolar),
            _ => None,
        }
    }

    /// Number of coordinates a point has in this model.
    pub fn arity(&self) -> usize {
        match self {
            Model::Hyperboloid => 3,
            _ => 2,
        }
    }

    pub fn coords(&self, xs: &[f64]) -> Result<ModelCoords> {
        if xs.len() != self.arity() {
            return Err(Error::OutOfDomain {
                model: self.name(),
                detail: format!("expected {} coordinates, got {}", self.arity(), xs.len()),
            });
        }
        Ok(match self {
            Model::Hyperboloid => ModelCoords::Hyperboloid { t: xs[0], u: xs[1], v: xs[2] },
            Model::Poincare => ModelCoords::Poincare { x: xs[0], y: xs[1] },
            Model::HalfPlane => ModelCoords::HalfPlane { x: xs[0], y: xs[1] },
            Model::GaussPolar => ModelCoords::GaussPolar { rho: xs[0], theta: xs[1] },
        })
    }
}

/// Coordinates of a point in one of the supported models.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModelCoords {
    Hyperboloid { t: f64, u: f64, v: f64 },
    Poincare { x: f64, y: f64 },
    HalfPlane { x: f64, y: f64 },
    GaussPolar { rho: f64, theta: f64 },
}

impl ModelCoords {
    pub fn model(&self) -> Model {
        match self {
            ModelCoords::Hyperboloid { .. } => Model::Hyperboloid,
            ModelCoords::Poincare { .. } => Model::Poincare,
            ModelCoords::HalfPlane { .. } => Model::HalfPlane,
            ModelCoords::GaussPolar { .. } => Model::GaussPolar,
        }
    }

    pub fn to_vec(&self) -> Vec<f64> {
        match *self {
            ModelCoords::Hyperboloid { t, u, v } => vec![t, u, v],
            ModelCoords::Poincare { x, y } | ModelCoords::HalfPlane { x, y } => vec![x, y],
            ModelCoords::GaussPolar { rho, theta } => vec![rho, theta],
        }
    }
}

/// Re-express coordinates in another model.
pub fn convert(p: ModelCoords, target: Model) -> Result<ModelCoords> {
    Ok(HPoint::from_model(p)?.to_model(target))
}

/// A geodesic written in Gauss polar coordinates: either the curve
/// `rho = arcoth(C cos(theta - alpha))` with `C > 1`, or a ray pair
/// `theta = const` through the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GaussGeodesic {
    Curve { c: f64, alpha: f64 },
    Radial { theta: f64 },
}

impl GaussGeodesic {
    pub fn from_line(m: &DirectedLine) -> Self {
        let n = m.normal();
        let r = n.u.hypot(n.v);
        if n.t.abs() <= 1e-15 * r {
            let w = m.tangent_at(&HPoint::origin());
            let theta = wrap_angle(w.v.atan2(w.u));
            return GaussGeodesic::Radial { theta };
        }
        let sgn = n.t.signum();
        GaussGeodesic::Curve { c: r / n.t.abs(), alpha: wrap_angle((sgn * n.v).atan2(sgn * n.u)) }
    }

    /// The geodesic as a directed line. Orientation is not recorded by the
    /// polar form; curves come back with normal `(1, C cos a, C sin a)`.
    pub fn to_line(&self) -> Result<DirectedLine> {
        match *self {
            GaussGeodesic::Curve { c, alpha } => {
                if !(c > 1.0) {
                    return Err(Error::InvalidLine(format!("C = {c} must exceed 1")));
                }
                let (s, co) = alpha.sin_cos();
                DirectedLine::from_spacelike(MVec::new(1.0, c * co, c * s))
            }
            GaussGeodesic::Radial { theta } => {
                let (s, c) = theta.sin_cos();
                DirectedLine::from_spacelike(MVec::new(0.0, -s, c))
            }
        }
    }

    /// Distance from the Gauss origin; `tanh` of it is `1 / C`.
    pub fn distance_from_origin(&self) -> f64 {
        match *self {
            GaussGeodesic::Curve { c, .. } => (1.0 / c).atanh(),
            GaussGeodesic::Radial { .. } => 0.0,
        }
    }

    /// Radius of the curve at polar angle `theta`, if the ray meets it.
    pub fn rho_at(&self, theta: f64) -> Option<f64> {
        match *self {
            GaussGeodesic::Curve { c, alpha } => {
                let k = c * (theta - alpha).cos();
                (k > 1.0).then(|| (1.0 / k).atanh())
            }
            GaussGeodesic::Radial { .. } => None,
        }
    }
}
