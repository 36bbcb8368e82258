// Copyright 2026 The lbplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Planar primitives: points, axis-aligned segments and the distance and
//! intersection predicates built on them.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// Tolerance used when merging adjacent cover intervals.
pub const MERGE_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    #[inline]
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, other: Point, u: f64) -> Point {
        self + (other - self) * u
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Axis {
    #[inline]
    pub fn direction(self) -> Point {
        match self {
            Axis::Horizontal => Point::new(1.0, 0.0),
            Axis::Vertical => Point::new(0.0, 1.0),
        }
    }
}

/// A closed axis-aligned segment `origin + u * length * axis`, `u ∈ [0, 1]`.
///
/// Zero length is allowed and stands for a single point (the start and goal
/// vertices of the lower-bounding graph).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisSegment {
    pub origin: Point,
    pub axis: Axis,
    pub length: f64,
}

impl AxisSegment {
    pub fn new(origin: Point, axis: Axis, length: f64) -> Self {
        debug_assert!(length >= 0.0);
        Self {
            origin,
            axis,
            length,
        }
    }

    pub fn point(p: Point) -> Self {
        Self::new(p, Axis::Horizontal, 0.0)
    }

    #[inline]
    pub fn is_point(&self) -> bool {
        self.length == 0.0
    }

    #[inline]
    pub fn end(&self) -> Point {
        self.origin + self.axis.direction() * self.length
    }

    #[inline]
    pub fn at(&self, u: f64) -> Point {
        self.origin + self.axis.direction() * (u * self.length)
    }

    /// Extent along x as a closed range.
    #[inline]
    fn x_range(&self) -> (f64, f64) {
        match self.axis {
            Axis::Horizontal => (self.origin.x, self.origin.x + self.length),
            Axis::Vertical => (self.origin.x, self.origin.x),
        }
    }

    #[inline]
    fn y_range(&self) -> (f64, f64) {
        match self.axis {
            Axis::Horizontal => (self.origin.y, self.origin.y),
            Axis::Vertical => (self.origin.y, self.origin.y + self.length),
        }
    }
}

/// Closed parameter interval `[lo, hi] ⊆ [0, 1]` along an [`AxisSegment`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoverInterval {
    pub lo: f64,
    pub hi: f64,
}

impl CoverInterval {
    /// Clips `[lo, hi]` to `[0, 1]`, returning `None` when nothing is left.
    pub fn clipped(lo: f64, hi: f64) -> Option<Self> {
        let lo = lo.max(0.0);
        let hi = hi.min(1.0);
        (lo <= hi).then_some(Self { lo, hi })
    }
}

#[inline]
fn range_gap(a: (f64, f64), b: (f64, f64)) -> f64 {
    (b.0 - a.1).max(a.0 - b.1).max(0.0)
}

/// Exact minimum Euclidean distance between two closed axis-aligned segments.
///
/// Axis-aligned segments are degenerate boxes, so the distance separates into
/// the gaps between their x and y extents.
pub fn min_distance(a: &AxisSegment, b: &AxisSegment) -> f64 {
    let gx = range_gap(a.x_range(), b.x_range());
    let gy = range_gap(a.y_range(), b.y_range());
    if gx == 0.0 {
        gy
    } else if gy == 0.0 {
        gx
    } else {
        gx.hypot(gy)
    }
}

/// Distance from `p` to the closed segment `a..b`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return p.dist(a);
    }
    let u = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    p.dist(a + ab * u)
}

/// Twice the signed area of the triangle `a, b, c`.
#[inline]
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(p: Point, a: Point, b: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Whether the closed segments `p1..p2` and `q1..q2` share at least one point.
pub fn segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(p1, q1, q2))
        || (d2 == 0.0 && on_segment(p2, q1, q2))
        || (d3 == 0.0 && on_segment(q1, p1, p2))
        || (d4 == 0.0 && on_segment(q2, p1, p2))
}

/// Whether the segments cross transversally at a point interior to both.
/// Touching at an endpoint or running collinear does not count.
pub fn segments_cross_properly(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Minimum distance between two general closed segments.
pub fn segment_distance(p1: Point, p2: Point, q1: Point, q2: Point) -> f64 {
    if segments_intersect(p1, p2, q1, q2) {
        return 0.0;
    }
    point_segment_distance(p1, q1, q2)
        .min(point_segment_distance(p2, q1, q2))
        .min(point_segment_distance(q1, p1, p2))
        .min(point_segment_distance(q2, p1, p2))
}
