//! Hyperbolic triangles: the Laws of Sines and Cosines and the signed
//! sinh-ratio products of Ceva and Menelaus.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::plane::{dist, unit_tangent, DirectedLine, HPoint};

/// Triangles with smaller area are rejected.
pub const MIN_TRIANGLE_AREA: f64 = 1e-10;
/// Feet farther than this from their side geodesic are rejected.
pub const FOOT_TOL: f64 = 1e-9;

/// A non-degenerate geodesic triangle `ABC`.
///
/// Side `i` is opposite vertex `i`: side 0 is `BC`, side 1 is `CA`, side 2 is
/// `AB`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triangle {
    pub a: HPoint,
    pub b: HPoint,
    pub c: HPoint,
}

impl Triangle {
    pub fn new(a: HPoint, b: HPoint, c: HPoint) -> Result<Self> {
        let t = Triangle { a, b, c };
        let area = t.area_unchecked();
        if !(area > MIN_TRIANGLE_AREA) {
            return Err(Error::DegenerateTriangle(area));
        }
        Ok(t)
    }

    pub fn vertices(&self) -> [HPoint; 3] {
        [self.a, self.b, self.c]
    }

    pub fn sides(&self) -> [f64; 3] {
        [dist(&self.b, &self.c), dist(&self.c, &self.a), dist(&self.a, &self.b)]
    }

    /// Interior angles at `A`, `B`, `C`.
    pub fn angles(&self) -> [f64; 3] {
        let v = self.vertices();
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = angle_at(&v[i], &v[(i + 1) % 3], &v[(i + 2) % 3]).unwrap_or(0.0);
        }
        out
    }

    fn area_unchecked(&self) -> f64 {
        let v = self.vertices();
        for i in 0..3 {
            if dist(&v[i], &v[(i + 1) % 3]) < crate::plane::COINCIDENT_TOL {
                return 0.0;
            }
        }
        let s: f64 = self.angles().iter().sum();
        PI - s
    }

    /// Area by angle defect.
    pub fn area(&self) -> f64 {
        self.area_unchecked()
    }

    /// Side geodesics, each directed counterclockwise-consistently
    /// (`B -> C`, `C -> A`, `A -> B`).
    pub fn side_lines(&self) -> [DirectedLine; 3] {
        let v = self.vertices();
        let mk = |i: usize| DirectedLine::through(&v[(i + 1) % 3], &v[(i + 2) % 3]).expect("distinct vertices");
        [mk(0), mk(1), mk(2)]
    }

    /// True when the vertices run counterclockwise.
    pub fn is_counterclockwise(&self) -> bool {
        let ab = DirectedLine::through(&self.a, &self.b).expect("distinct vertices");
        ab.signed_sinh_dist(&self.c) > 0.0
    }
}

/// Angle at `vertex` between the geodesics toward `p` and `q`, in `[0, pi]`.
pub fn angle_at(vertex: &HPoint, p: &HPoint, q: &HPoint) -> Result<f64> {
    let (wp, _) = unit_tangent(vertex, p)?;
    let (wq, _) = unit_tangent(vertex, q)?;
    // chord between unit tangents: |wp - wq| = 2 sin(angle / 2)
    let chord = (wp - wq).norm_sq().max(0.0).sqrt();
    Ok(2.0 * (chord / 2.0).min(1.0).asin())
}

/// Side `a` opposite the angle `alpha` enclosed by sides `b` and `c`:
/// `cosh a = cosh b cosh c - cos alpha sinh b sinh c`.
///
/// Evaluated as `cosh a - 1 = 2 sinh^2((b - c)/2) + 2 sin^2(alpha/2) sinh b sinh c`,
/// which is the same expression rearranged to avoid `acosh` near 1.
pub fn law_of_cosines(b: f64, c: f64, alpha: f64) -> f64 {
    let h = ((b - c) / 2.0).sinh();
    let s = (alpha / 2.0).sin();
    let cosh_a_minus_1 = 2.0 * h * h + 2.0 * s * s * b.sinh() * c.sinh();
    2.0 * (cosh_a_minus_1.max(0.0) / 2.0).sqrt().asinh()
}

/// Largest relative spread of the three ratios `sinh(side) / sin(opposite angle)`.
pub fn law_of_sines_residual(t: &Triangle) -> Result<f64> {
    let area = t.area();
    if !(area > MIN_TRIANGLE_AREA) {
        return Err(Error::DegenerateTriangle(area));
    }
    let sides = t.sides();
    let angles = t.angles();
    let r: Vec<f64> = (0..3).map(|i| sides[i].sinh() / angles[i].sin()).collect();
    let top = r.iter().cloned().fold(f64::MIN, f64::max);
    let bottom = r.iter().cloned().fold(f64::MAX, f64::min);
    Ok((top - bottom) / top)
}

/// Signed `sinh UF / sinh FV` for a point `f` on the geodesic `UV`; negative
/// when `f` lies outside the segment.
fn signed_sinh_ratio(u: &HPoint, v: &HPoint, f: &HPoint) -> Result<f64> {
    let line = DirectedLine::through(u, v)?;
    let off = line.dist_to(f);
    if off > FOOT_TOL {
        return Err(Error::FootOffLine(off));
    }
    let (w, d) = unit_tangent(u, v)?;
    let s = f.vec().dot(&w).asinh();
    let num = s.sinh();
    let den = (d - s).sinh();
    if num.abs() < 1e-12 || den.abs() < 1e-12 {
        return Err(Error::DegenerateRatio(format!(
            "point at arclength {s} on a side of length {d} coincides with a vertex"
        )));
    }
    Ok(num / den)
}

/// `(sinh AR / sinh RB)(sinh BP / sinh PC)(sinh CQ / sinh QA)` for `P` on
/// `BC`, `Q` on `CA`, `R` on `AB`, with signed ratios.
fn sinh_ratio_product(t: &Triangle, p: &HPoint, q: &HPoint, r: &HPoint) -> Result<f64> {
    let ar = signed_sinh_ratio(&t.a, &t.b, r)?;
    let bp = signed_sinh_ratio(&t.b, &t.c, p)?;
    let cq = signed_sinh_ratio(&t.c, &t.a, q)?;
    Ok(ar * bp * cq)
}

/// Ceva product; equals `1` exactly when the cevians `AP`, `BQ`, `CR` are
/// concurrent.
pub fn ceva_product(t: &Triangle, p: &HPoint, q: &HPoint, r: &HPoint) -> Result<f64> {
    sinh_ratio_product(t, p, q, r)
}

/// Menelaus product; equals `-1` exactly when `P`, `Q`, `R` are collinear.
pub fn menelaus_product(t: &Triangle, p: &HPoint, q: &HPoint, r: &HPoint) -> Result<f64> {
    sinh_ratio_product(t, p, q, r)
}
