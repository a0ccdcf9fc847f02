//! Point-masses, the centroid operation `*`, moments and balance.
//!
//! The centroid of `(X, x)` and `(Y, y)` is computed from the Minkowski sum
//! `x X + y Y`: its direction is the location `Z` and its Minkowski length is
//! the combined weight `x cosh XZ + y cosh YZ`. Folding `*` over a system is
//! therefore a normalized weighted vector sum.

use crate::error::{Error, Result};
use crate::minkowski::MVec;
use crate::plane::{dist, DirectedLine, HPoint};

/// A location with a positive weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointMass {
    pub location: HPoint,
    weight: f64,
}

impl PointMass {
    pub fn new(location: HPoint, weight: f64) -> Result<Self> {
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::NonPositiveWeight(weight));
        }
        Ok(PointMass { location, weight })
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// `weight * location`, the Minkowski vector whose sums realize `*`.
    pub fn momentum(&self) -> MVec {
        self.location.vec().scale(self.weight)
    }

    /// Point-mass represented by a future timelike vector.
    pub(crate) fn from_momentum(s: MVec) -> Self {
        let w = (-s.norm_sq()).max(0.0).sqrt();
        PointMass { location: HPoint::from_timelike(s), weight: w }
    }
}

/// Unsigned moment `x sinh d(X, N)` about a point.
pub fn moment_about_point(pm: &PointMass, n: &HPoint) -> f64 {
    pm.weight * dist(&pm.location, n).sinh()
}

/// Signed moment `sigma_m(X) x sinh d(X, m)` about a directed line.
pub fn moment_about_line(pm: &PointMass, m: &DirectedLine) -> f64 {
    pm.weight * m.signed_sinh_dist(&pm.location)
}

/// The centroid `(X, x) * (Y, y)`.
pub fn combine(p: &PointMass, q: &PointMass) -> PointMass {
    let (x, y) = (p.weight, q.weight);
    let chord = p.location.vec() - q.location.vec();
    // |x X + y Y|^2 = (x + y)^2 + x y |X - Y|^2, free of cancellation
    let weight = ((x + y) * (x + y) + x * y * chord.norm_sq().max(0.0)).sqrt();
    let s = p.momentum() + q.momentum();
    PointMass { location: HPoint::from_timelike(s), weight }
}

/// The external centroid: the balance point on line `XY` outside the segment.
///
/// It exists only when the weight ratio exceeds `e^d`, `d = XY`; for smaller
/// ratios the balancing vector `x X - y Y` is not timelike.
pub fn external_centroid(p: &PointMass, q: &PointMass) -> Result<PointMass> {
    let d = dist(&p.location, &q.location);
    if d < crate::plane::COINCIDENT_TOL {
        return Err(Error::CoincidentPoints(d));
    }
    let (x, y) = (p.weight, q.weight);
    if (x - y).abs() / x.max(y) < 1e-12 {
        return Err(Error::EqualWeights);
    }
    let ratio = x.max(y) / x.min(y);
    if ratio.ln() <= d {
        return Err(Error::NoExternalCentroid { ratio, distance: d });
    }
    let s = p.momentum() - q.momentum();
    let chord = p.location.vec() - q.location.vec();
    // -|x X - y Y|^2 = (x - y)^2 - x y |X - Y|^2
    let w2 = (x - y) * (x - y) - x * y * chord.norm_sq().max(0.0);
    if !(w2 > 0.0) {
        return Err(Error::NoExternalCentroid { ratio, distance: d });
    }
    Ok(PointMass { location: HPoint::from_timelike(s), weight: w2.sqrt() })
}

/// A non-empty, ordered list of point-masses.
#[derive(Clone, Debug, PartialEq)]
pub struct PointMassSystem {
    members: Vec<PointMass>,
}

impl PointMassSystem {
    pub fn new(members: Vec<PointMass>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptySystem);
        }
        Ok(PointMassSystem { members })
    }

    pub fn members(&self) -> &[PointMass] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.members.iter().map(|m| m.weight).sum()
    }
}

/// Left fold of `*` over the system.
pub fn system_centroid(s: &PointMassSystem) -> PointMass {
    let mut it = s.members.iter();
    let first = *it.next().expect("non-empty system");
    it.fold(first, |acc, m| combine(&acc, m))
}

/// `sum x_i cosh d(X_i, c)` for a caller-supplied centroid location `c`.
pub fn system_mass_direct(s: &PointMassSystem, c: &HPoint) -> f64 {
    s.members.iter().map(|m| m.weight * dist(&m.location, c).cosh()).sum()
}

/// Signed moment of the system about a directed line.
pub fn system_moment(s: &PointMassSystem, m: &DirectedLine) -> f64 {
    s.members.iter().map(|pm| moment_about_line(pm, m)).sum()
}

/// `sum x_i cosh d(X_i, m)`, the scale against which balance is judged.
pub fn moment_scale(s: &PointMassSystem, m: &DirectedLine) -> f64 {
    s.members
        .iter()
        .map(|pm| {
            let h = m.signed_sinh_dist(&pm.location);
            pm.weight * (1.0 + h * h).sqrt()
        })
        .sum()
}

/// Whether `|M_m(s)| <= tol * sum x_i cosh d(X_i, m)`.
pub fn is_balanced(s: &PointMassSystem, m: &DirectedLine, tol: f64) -> Result<bool> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("balance tolerance must be positive, got {tol}")));
    }
    Ok(system_moment(s, m).abs() <= tol * moment_scale(s, m))
}

/// A force acting perpendicular to a lever at signed arclength `offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeverForce {
    magnitude: f64,
    pub offset: f64,
}

impl LeverForce {
    pub fn new(magnitude: f64, offset: f64) -> Result<Self> {
        if !(magnitude > 0.0) || !magnitude.is_finite() || !offset.is_finite() {
            return Err(Error::InvalidForce(magnitude));
        }
        Ok(LeverForce { magnitude, offset })
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }
}

/// Pivot offset and magnitude of the resultant of two perpendicular forces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeverResultant {
    pub offset: f64,
    pub magnitude: f64,
}

/// Resultant of two forces on a lever: `F1 sinh c1 = F2 sinh c2` fixes the
/// pivot and `F3 = F1 cosh c1 + F2 cosh c2` the magnitude. This is `*` for
/// point-masses placed on the lever geodesic.
pub fn lever_resultant(f1: &LeverForce, f2: &LeverForce) -> LeverResultant {
    let on_lever = |f: &LeverForce| {
        PointMass::new(HPoint::polar_unchecked(f.offset.abs(), if f.offset < 0.0 { std::f64::consts::PI } else { 0.0 }), f.magnitude)
            .expect("validated magnitude")
    };
    let r = combine(&on_lever(f1), &on_lever(f2));
    LeverResultant { offset: r.location.vec().u.asinh(), magnitude: r.weight }
}
