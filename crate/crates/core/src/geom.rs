//! Small planar helpers: vectors, triangle angles and areas, unfolding.

use std::ops::{Add, Mul, Neg, Sub};

use crate::Real;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Vec2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn polar(r: T, angle: T) -> Self {
        Self::new(r * angle.cos(), r * angle.sin())
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn angle(self) -> T {
        self.y.atan2(self.x)
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn lerp(self, o: Self, t: T) -> Self {
        self + (o - self) * t
    }
}

impl<T: Real> Add for Vec2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Real> Sub for Vec2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Real> Mul<T> for Vec2<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

impl<T: Real> Neg for Vec2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// Angle opposite to side `c` in a triangle with sides `a`, `b`, `c`.
pub fn corner_angle<T: Real>(a: T, b: T, c: T) -> T {
    ((a * a + b * b - c * c) / (T::two() * a * b)).acos_clamped()
}

/// Heron's formula in Kahan's numerically stable arrangement. Returns zero for
/// side triples that violate the triangle inequality.
pub fn triangle_area<T: Real>(a: T, b: T, c: T) -> T {
    let mut s = [a, b, c];
    s.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    let [a, b, c] = s;
    let p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    if p <= T::zero() {
        T::zero()
    } else {
        p.sqrt() / T::lit(4.0)
    }
}

/// Places the apex of a triangle over the directed base `p -> q`.
///
/// `dp` and `dq` are the distances from the apex to `p` and `q`. The apex is
/// put to the left of the base when `left` is true.
pub fn place_apex<T: Real>(p: Vec2<T>, q: Vec2<T>, dp: T, dq: T, left: bool) -> Vec2<T> {
    let e = q - p;
    let l = e.norm();
    let u = e * (T::one() / l);
    let x = (dp * dp - dq * dq + l * l) / (T::two() * l);
    let y = (dp * dp - x * x).max(T::zero()).sqrt();
    let n = u.perp();
    if left {
        p + u * x + n * y
    } else {
        p + u * x - n * y
    }
}

/// Canonical layout of a triangle with sides `l01`, `l12`, `l20`: corner 0 at
/// the origin, corner 1 on the positive x axis, corner 2 above.
pub fn layout<T: Real>(l01: T, l12: T, l20: T) -> [Vec2<T>; 3] {
    let p0 = Vec2::zero();
    let p1 = Vec2::new(l01, T::zero());
    let p2 = place_apex(p0, p1, l20, l12, true);
    [p0, p1, p2]
}

/// Parameter `t` along `a -> b` where the line through `s` in direction `d` meets it.
/// Returns `None` for parallel lines.
pub fn line_param<T: Real>(s: Vec2<T>, d: Vec2<T>, a: Vec2<T>, b: Vec2<T>) -> Option<(T, T)> {
    let e = b - a;
    let den = d.cross(e);
    if den == T::zero() {
        return None;
    }
    let w = a - s;
    let t = d.cross(w) / -den;
    let r = w.cross(e) / den;
    Some((t, r))
}

/// Distance from `p` to the segment `a b`.
pub fn point_segment_distance<T: Real>(p: Vec2<T>, a: Vec2<T>, b: Vec2<T>) -> T {
    let e = b - a;
    let len2 = e.dot(e);
    if len2 == T::zero() {
        return (p - a).norm();
    }
    let t = ((p - a).dot(e) / len2).max(T::zero()).min(T::one());
    (p - a.lerp(b, t)).norm()
}
