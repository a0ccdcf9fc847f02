//! Vectors of 2+1 Minkowski space.
//!
//! The bilinear form is `<a, b> = -a.t b.t + a.u b.u + a.v b.v`. Points of the
//! hyperbolic plane are future unit timelike vectors, geodesics are the zero
//! sets of unit spacelike normals.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct MVec {
    pub t: f64,
    pub u: f64,
    pub v: f64,
}

impl MVec {
    pub const fn new(t: f64, u: f64, v: f64) -> Self {
        Self { t, u, v }
    }

    #[inline]
    pub fn dot(&self, other: &MVec) -> f64 {
        -self.t * other.t + self.u * other.u + self.v * other.v
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    /// Lorentz cross product `J(a x b)`; orthogonal to both factors under the
    /// Minkowski form.
    #[inline]
    pub fn cross(&self, other: &MVec) -> MVec {
        MVec {
            t: -(self.u * other.v - self.v * other.u),
            u: self.v * other.t - self.t * other.v,
            v: self.t * other.u - self.u * other.t,
        }
    }

    pub fn scale(&self, k: f64) -> MVec {
        MVec::new(self.t * k, self.u * k, self.v * k)
    }

    pub fn max_abs(&self) -> f64 {
        self.t.abs().max(self.u.abs()).max(self.v.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.u.is_finite() && self.v.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.t, self.u, self.v]
    }
}

impl Add for MVec {
    type Output = MVec;
    fn add(self, o: MVec) -> MVec {
        MVec::new(self.t + o.t, self.u + o.u, self.v + o.v)
    }
}

impl Sub for MVec {
    type Output = MVec;
    fn sub(self, o: MVec) -> MVec {
        MVec::new(self.t - o.t, self.u - o.u, self.v - o.v)
    }
}

impl Neg for MVec {
    type Output = MVec;
    fn neg(self) -> MVec {
        MVec::new(-self.t, -self.u, -self.v)
    }
}

impl Mul<f64> for MVec {
    type Output = MVec;
    fn mul(self, k: f64) -> MVec {
        self.scale(k)
    }
}

impl Mul<MVec> for f64 {
    type Output = MVec;
    fn mul(self, v: MVec) -> MVec {
        v.scale(self)
    }
}

/// Sum in a fixed pairwise order so that the result depends only on the order
/// of `items`, never on how they were produced.
pub fn pairwise_sum<const N: usize>(items: &[[f64; N]]) -> [f64; N] {
    match items.len() {
        0 => [0.0; N],
        1 => items[0],
        n => {
            let (l, r) = items.split_at(n / 2);
            let a = pairwise_sum(l);
            let b = pairwise_sum(r);
            let mut out = [0.0; N];
            for i in 0..N {
                out[i] = a[i] + b[i];
            }
            out
        }
    }
}

pub fn pairwise_sum_scalar(items: &[f64]) -> f64 {
    match items.len() {
        0 => 0.0,
        1 => items[0],
        n => {
            let (l, r) = items.split_at(n / 2);
            pairwise_sum_scalar(l) + pairwise_sum_scalar(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_is_orthogonal() {
        let a = MVec::new(2.0, 0.3, -1.1);
        let b = MVec::new(1.5, -0.7, 0.2);
        let c = a.cross(&b);
        assert!(c.dot(&a).abs() < 1e-14);
        assert!(c.dot(&b).abs() < 1e-14);
    }

    #[test]
    fn pairwise_order_is_fixed() {
        let items: Vec<[f64; 1]> = (0..37).map(|i| [1.0 / (i as f64 + 1.0)]).collect();
        let a = pairwise_sum(&items);
        let b = pairwise_sum(&items);
        assert_eq!(a[0].to_bits(), b[0].to_bits());
        let plain: f64 = items.iter().map(|x| x[0]).sum();
        assert!((a[0] - plain).abs() < 1e-14);
    }
}
