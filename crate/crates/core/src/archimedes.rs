//! Moments of a lamina computed slice by slice along a pencil of
//! asymptotically parallel geodesics.
//!
//! The pencil's ideal point `(cos phi, sin phi)` on the boundary of the
//! Poincare disk is moved to infinity of the upper half-plane by the rotation
//! by `-phi` about the hyperboloid origin; the pencil then consists of the
//! vertical lines `x = a`. With `y = e^s` along a slice, `dA = (dx / y) ds`, so
//! each slice is a linear set with density `lambda / y` and the lamina moment
//! is the integral of slice moments over `a`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lamina::{Estimate, Lamina};
use crate::linset::{integrate, linset_moment_about_line, LineDensity, LinearSet};
use crate::minkowski::MVec;
use crate::plane::{DirectedLine, Frame, HPoint};
use crate::quadrature::GaussLegendre;
use crate::region::{angle_in, BoundaryPiece, Region};

/// A pencil of geodesics sharing one ideal endpoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pencil {
    phi: f64,
}

impl Pencil {
    /// The pencil through the boundary point at polar angle `phi`.
    pub fn new(phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::InvalidArgument(format!("pencil angle {phi}")));
        }
        Ok(Pencil { phi })
    }

    /// The pencil of lines asymptotically parallel to `m` in its direction of
    /// travel.
    pub fn toward(m: &DirectedLine) -> Self {
        let e = m.forward_ideal();
        Pencil { phi: e.v.atan2(e.u) }
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    fn frame(&self) -> Frame {
        Frame::at_with_heading(&HPoint::origin(), self.phi)
    }

    /// Half-plane abscissa of `p` in the normalized chart.
    pub fn abscissa(&self, p: &HPoint) -> f64 {
        self.frame().point_to_local(p).to_half_plane().0
    }

    /// The pencil line `x = a`, directed upward.
    pub fn line(&self, a: f64) -> DirectedLine {
        let p = HPoint::from_half_plane(a, 1.0).expect("y = 1");
        let q = HPoint::from_half_plane(a, 2.0).expect("y = 2");
        let local = DirectedLine::through(&p, &q).expect("distinct points");
        self.frame().line_to_world(&local)
    }

    // 1 / y as a linear function on the hyperboloid: -<X, l>
    fn inverse_height(&self) -> MVec {
        self.frame().to_world(&MVec::new(1.0, 1.0, 0.0))
    }
}

/// The intersection of the pencil line `x = a` with the region, as a linear
/// set carrying the lamina's density restricted to the line.
pub fn pencil_slice(l: &Lamina, pencil: &Pencil, a: f64) -> Result<Option<LinearSet>> {
    let carrier = pencil.line(a);
    let intervals = slice_intervals(l.region(), &carrier)?;
    if intervals.is_empty() {
        return Ok(None);
    }
    let d = l.density().clone();
    let c = carrier;
    let dens = LineDensity::callable(move |s| d.value(&c.at_arclength(s)));
    LinearSet::new(carrier, intervals, dens).map(Some)
}

/// Lamina moment about `m` by integrating slice moments over the pencil.
///
/// Each interval between consecutive breakpoints of the region's abscissa
/// range is integrated with `slices` Gauss-Legendre nodes after the
/// substitution `a = a0 + (a1 - a0)(1 - cos psi) / 2`, which absorbs the
/// square-root behaviour at tangent slices. The error is the difference to
/// the same rule with half the nodes; the scale is the unsigned moment.
pub fn archimedes_moment(l: &Lamina, pencil: &Pencil, m: &DirectedLine, slices: usize) -> Result<Estimate> {
    if slices < 4 {
        return Err(Error::InvalidArgument("at least 4 slices are needed".into()));
    }
    let breaks = breakpoints(l.region(), pencil);
    let ell = pencil.inverse_height();
    let full = GaussLegendre::new(slices);
    let half = GaussLegendre::new(slices / 2);
    let dens = l.density().clone();
    let n = m.normal();
    // signed and unsigned slice moments
    let slice = |a: f64| -> Result<(f64, f64)> {
        let carrier = pencil.line(a);
        let intervals = slice_intervals(l.region(), &carrier)?;
        if intervals.is_empty() {
            return Ok((0.0, 0.0));
        }
        let d = dens.clone();
        let c = carrier;
        let weight = move |s: f64| {
            let x = c.at_arclength(s);
            d.value(&x) * (-x.vec().dot(&ell))
        };
        let cut = m.intersection(&carrier).map(|x| carrier.arclength_of(&x));
        let mut unsigned = 0.0;
        for &(s, e) in &intervals {
            let mut pieces = vec![(s, e)];
            if let Some(k) = cut.filter(|k| *k > s && *k < e) {
                pieces = vec![(s, k), (k, e)];
            }
            for (s, e) in pieces {
                unsigned += integrate(s, e, |t| weight(t) * carrier.at_arclength(t).vec().dot(&n)).abs();
            }
        }
        let set = LinearSet::new(carrier, intervals, LineDensity::callable(weight))?;
        Ok((linset_moment_about_line(&set, m), unsigned))
    };
    let mut value = 0.0;
    let mut coarse = 0.0;
    let mut scale = 0.0;
    let mut count = 0;
    for w in breaks.windows(2) {
        let (a0, a1) = (w[0], w[1]);
        if a1 - a0 <= 0.0 {
            continue;
        }
        let mut run = |g: &GaussLegendre| -> Result<(f64, f64)> {
            let (mut acc, mut abs) = (0.0, 0.0);
            for (x, wt) in g.nodes.iter().zip(&g.weights) {
                let psi = 0.5 * PI * (x + 1.0);
                let a = a0 + (a1 - a0) * 0.5 * (1.0 - psi.cos());
                let jac = 0.5 * (a1 - a0) * psi.sin() * 0.5 * PI;
                let (v, u) = slice(a)?;
                acc += wt * jac * v;
                abs += wt * jac * u;
                count += 1;
            }
            Ok((acc, abs))
        };
        let (v, u) = run(&full)?;
        value += v;
        scale += u;
        coarse += run(&half)?.0;
    }
    Ok(Estimate { value, scale, error: (value - coarse).abs(), panels: count })
}

// Sorted abscissae at which slice lengths fail to be smooth: corners, arc
// endpoints and the extreme abscissae of arcs.
fn breakpoints(r: &Region, pencil: &Pencil) -> Vec<f64> {
    let mut xs = Vec::new();
    match r.boundary_pieces() {
        Some(pieces) => {
            for p in pieces {
                match p {
                    BoundaryPiece::Segment(a, b) => {
                        xs.push(pencil.abscissa(&a));
                        xs.push(pencil.abscissa(&b));
                    }
                    BoundaryPiece::Arc { frame, radius, theta0, theta1 } => {
                        xs.push(pencil.abscissa(&frame.polar(radius, theta0)));
                        xs.push(pencil.abscissa(&frame.polar(radius, theta1)));
                        // the image circle has center (x0, y0 cosh r) and radius y0 sinh r
                        let (x0, y0) = pencil.frame().point_to_local(&frame.origin).to_half_plane();
                        for sgn in [-1.0, 1.0] {
                            let x = x0 + sgn * y0 * radius.sinh();
                            let local = HPoint::from_half_plane(x, y0 * radius.cosh()).expect("positive height");
                            let p = pencil.frame().point_to_world(&local);
                            let th = frame.polar_of(&p).1;
                            if angle_in(th, theta0, theta1, 1e-12) {
                                xs.push(x);
                            }
                        }
                    }
                }
            }
        }
        None => {
            let samples = r.boundary_samples(64);
            xs.extend(samples.iter().map(|p| pencil.abscissa(p)));
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * (1.0 + a.abs()));
    xs
}

/// Arclength intervals of `carrier` inside the region.
fn slice_intervals(r: &Region, carrier: &DirectedLine) -> Result<Vec<(f64, f64)>> {
    let mut cuts = match r.boundary_pieces() {
        Some(pieces) => {
            let mut cuts = Vec::new();
            for p in &pieces {
                piece_crossings(p, carrier, &mut cuts);
            }
            cuts
        }
        None => return bisect_intervals(r, carrier),
    };
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-13);
    let mut out: Vec<(f64, f64)> = Vec::new();
    for w in cuts.windows(2) {
        let mid = carrier.at_arclength(0.5 * (w[0] + w[1]));
        if r.contains(&mid) {
            match out.last_mut() {
                Some(last) if last.1 == w[0] => last.1 = w[1],
                _ => out.push((w[0], w[1])),
            }
        }
    }
    Ok(out)
}

fn piece_crossings(p: &BoundaryPiece, carrier: &DirectedLine, out: &mut Vec<f64>) {
    match *p {
        BoundaryPiece::Segment(a, b) => {
            let Ok(side) = DirectedLine::through(&a, &b) else { return };
            let x = carrier.normal().cross(&side.normal());
            if !(x.norm_sq() < -1e-24 * x.max_abs().powi(2)) {
                return;
            }
            let x = if x.t < 0.0 { -x } else { x };
            // x = alpha a + beta b with both coefficients non-negative
            let (pa, pb) = (x.dot(&a.vec()), x.dot(&b.vec()));
            let g = a.vec().dot(&b.vec());
            let det = 1.0 - g * g;
            let alpha = -(pa + g * pb) / det;
            let beta = -(pb + g * pa) / det;
            let tol = -1e-12 * (alpha.abs() + beta.abs());
            if alpha >= tol && beta >= tol {
                out.push(carrier.arclength_of(&HPoint::from_timelike(x)));
            }
        }
        BoundaryPiece::Arc { frame, radius, theta0, theta1 } => {
            // cosh d(X(s), c) = P cosh s + Q sinh s with X(s) on the carrier
            let b = carrier.base_point();
            let w = carrier.tangent_at(&b);
            let c = frame.origin.vec();
            let (pp, qq) = (-b.vec().dot(&c), -w.dot(&c));
            let k2 = pp * pp - qq * qq;
            if k2 <= 0.0 {
                return;
            }
            let k = k2.sqrt();
            let ratio = radius.cosh() / k;
            if ratio < 1.0 {
                return;
            }
            let s0 = (qq / pp).atanh();
            let h = ratio.acosh();
            for s in [-s0 - h, -s0 + h] {
                let x = carrier.at_arclength(s);
                let th = frame.polar_of(&x).1;
                if angle_in(th, theta0, theta1, 1e-12) {
                    out.push(s);
                }
            }
        }
    }
}

const BISECT_SAMPLES: usize = 400;

fn bisect_intervals(r: &Region, carrier: &DirectedLine) -> Result<Vec<(f64, f64)>> {
    let anchor = r.anchor();
    let rad = r.anchor_radius() * (1.0 + 1e-9) + 1e-9;
    let b = carrier.base_point();
    let w = carrier.tangent_at(&b);
    let c = anchor.vec();
    let (pp, qq) = (-b.vec().dot(&c), -w.dot(&c));
    let k = (pp * pp - qq * qq).max(0.0).sqrt();
    if k == 0.0 || rad.cosh() < k {
        return Ok(Vec::new());
    }
    let s0 = (qq / pp).atanh();
    let h = (rad.cosh() / k).acosh();
    let (lo, hi) = (-s0 - h, -s0 + h);
    let inside = |s: f64| r.contains(&carrier.at_arclength(s));
    let step = (hi - lo) / BISECT_SAMPLES as f64;
    let mut out = Vec::new();
    let mut prev = inside(lo);
    if prev {
        return Err(Error::SliceExtractionFailed("slice starts inside the region".into()));
    }
    let mut start = 0.0;
    for i in 1..=BISECT_SAMPLES {
        let s = lo + step * i as f64;
        let cur = inside(s);
        if cur != prev {
            let (mut a, mut z) = (s - step, s);
            while z - a > 1e-12 * (1.0 + z.abs()) {
                let mid = 0.5 * (a + z);
                if inside(mid) == prev {
                    a = mid;
                } else {
                    z = mid;
                }
            }
            let edge = 0.5 * (a + z);
            if cur {
                start = edge;
            } else if edge > start {
                out.push((start, edge));
            }
            prev = cur;
        }
    }
    if prev {
        return Err(Error::SliceExtractionFailed("slice ends inside the region".into()));
    }
    Ok(out)
}
