//! Closed-form masses, areas and centroids of uniform shapes with unit
//! density, used as ground truth for the quadrature routines.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::plane::{point_along, DirectedLine, HPoint};
use crate::trig::Triangle;

/// Mass `pi sinh^2 r` of the uniform disk of radius `r`.
pub fn disk_mass(r: f64) -> f64 {
    PI * r.sinh().powi(2)
}

/// Area `4 pi sinh^2(r / 2)` of the disk of radius `r`.
pub fn disk_area(r: f64) -> f64 {
    4.0 * PI * (0.5 * r).sinh().powi(2)
}

/// Centroid distance and mass of the circular wedge `D_n(r)` with opening
/// angle `2 pi / n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WedgeResult {
    /// Distance of the centroid from the apex, along the bisector.
    pub d_n: f64,
    pub mass: f64,
}

// sinh x - x, with a series near zero
fn sinh_minus_x(x: f64) -> f64 {
    if x.abs() < 0.1 {
        let x2 = x * x;
        let mut term = x * x2 / 6.0;
        let mut sum = term;
        for k in (5..=15).step_by(2) {
            term *= x2 / ((k - 1) * k) as f64;
            sum += term;
        }
        sum
    } else {
        x.sinh() - x
    }
}

/// `tanh d_n = (n / pi) sin(pi / n) (sinh 2r - 2r) / (cosh 2r - 1)`, and
/// `mass = (pi sinh^2 r / n) sqrt(1 - tanh^2 d_n)`.
pub fn wedge_centroid(n: u32, r: f64) -> Result<WedgeResult> {
    if n == 0 || !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidWedge(format!("n = {n}, r = {r}")));
    }
    let nf = n as f64;
    // cosh 2r - 1 = 2 sinh^2 r
    let k = (nf / PI) * (PI / nf).sin() * sinh_minus_x(2.0 * r) / (2.0 * r.sinh().powi(2));
    if !(k.abs() < 1.0) {
        return Err(Error::InvalidWedge(format!("tanh d_n = {k} is not below 1")));
    }
    let k = if n == 1 { 0.0 } else { k };
    Ok(WedgeResult { d_n: k.atanh(), mass: PI * r.sinh().powi(2) / nf * (1.0 - k * k).sqrt() })
}

/// Intersection of the medians.
pub fn median_point(t: &Triangle) -> Result<HPoint> {
    let v = t.vertices();
    let mid = |i: usize| -> Result<HPoint> {
        let (p, q) = (&v[(i + 1) % 3], &v[(i + 2) % 3]);
        point_along(p, q, 0.5 * crate::plane::dist(p, q))
    };
    let m: Vec<DirectedLine> = (0..3).map(|i| DirectedLine::through(&v[i], &mid(i)?)).collect::<Result<_>>()?;
    let o = m[0].intersection(&m[1]).ok_or(Error::DegenerateTriangle(t.area()))?;
    let off = m[2].dist_to(&o);
    if off > 1e-10 {
        return Err(Error::DegenerateTriangle(t.area()));
    }
    Ok(o)
}

/// `1/2 sum sinh d(O, side) * len(side)` with `O` the median point.
pub fn triangle_mass_formula(t: &Triangle) -> Result<f64> {
    let o = median_point(t)?;
    Ok(triangle_mass_about(t, &o))
}

/// `1/2 sum sinh d(O, side) * len(side)` for a point `O` inside the triangle.
///
/// This is the integral of `cosh d(X, O)` over the triangle, so it equals the
/// mass exactly when `O` is the centroid and exceeds it otherwise.
pub fn triangle_mass_about(t: &Triangle, o: &HPoint) -> f64 {
    let lens = t.sides();
    t.side_lines()
        .iter()
        .zip(lens)
        .map(|(s, len)| s.signed_sinh_dist(o).abs() * len)
        .sum::<f64>()
        * 0.5
}

/// Side length `a = 2 artanh(tan(pi/n) sinh r)` of the regular `n`-gon with
/// in-radius `r`.
pub fn ngon_side(n: u32, r: f64) -> Result<f64> {
    let bad = Error::InvalidPolygon { sides: n, inradius: r };
    if n < 3 || !(r > 0.0 && r.is_finite()) {
        return Err(bad);
    }
    let nf = n as f64;
    if !(r.cosh() * (PI / nf).sin() < 1.0) {
        return Err(bad);
    }
    Ok(2.0 * ((PI / nf).tan() * r.sinh()).atanh())
}

/// Mass `n a sinh(r) / 2` of the uniform regular `n`-gon with in-radius `r`.
pub fn ngon_mass(n: u32, r: f64) -> Result<f64> {
    Ok(n as f64 * ngon_side(n, r)? * r.sinh() / 2.0)
}

/// Area `(n - 2) pi - 2 n beta` of the regular `n`-gon with in-radius `r`,
/// where `beta = arccos(cosh r sin(pi / n))` is half the interior angle.
pub fn polygon_area(n: u32, r: f64) -> Result<f64> {
    ngon_side(n, r)?;
    let nf = n as f64;
    let beta = (r.cosh() * (PI / nf).sin()).acos();
    Ok((nf - 2.0) * PI - 2.0 * nf * beta)
}

/// Mass `2 sinh(d / 2)` of the uniform segment of length `d`.
pub fn segment_mass(d: f64) -> f64 {
    2.0 * (0.5 * d).sinh()
}
