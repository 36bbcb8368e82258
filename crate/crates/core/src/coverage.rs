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

//! Scene-level predicates: which part of a segment an obstacle covers,
//! whether a point is inside the obstacle union, and sampled collision checks
//! for a moving point.
//!
//! Every shape is a closed point set. Shapes can additionally be *eroded* by a
//! margin `delta`, keeping only points whose `delta`-neighbourhood lies in the
//! shape; this is what certifies coverage over a time window rather than an
//! instant.

use crate::geometry::{
    orient, point_segment_distance, segments_intersect, AxisSegment, CoverInterval, Point,
    MERGE_EPS,
};
use crate::scenario::{Obstacle, Scenario, Shape};

/// Absolute tolerance for "point lies on a bar".
const ON_BAR_EPS: f64 = 1e-12;

/// An obstacle frozen at one instant, optionally eroded by `delta`.
#[derive(Clone, Copy, Debug)]
pub struct PlacedObstacle<'a> {
    pub shape: &'a Shape,
    pub translation: Point,
    pub delta: f64,
}

impl<'a> PlacedObstacle<'a> {
    pub fn at(obstacle: &'a Obstacle, t: f64) -> Self {
        Self {
            shape: &obstacle.shape,
            translation: obstacle.trajectory.translation_at(t),
            delta: 0.0,
        }
    }

    pub fn eroded(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    /// Closed parameter interval of `seg` lying inside this (eroded) shape.
    pub fn cover_interval(&self, seg: &AxisSegment) -> Option<CoverInterval> {
        if seg.is_point() {
            return self.contains(seg.origin).then_some(CoverInterval { lo: 0.0, hi: 1.0 });
        }
        let dir = seg.axis.direction();
        let len = seg.length;
        match self.shape {
            Shape::Disc { radius } => {
                let r = radius - self.delta;
                if r < 0.0 {
                    return None;
                }
                let rel = self.translation - seg.origin;
                let b = dir.dot(rel);
                let disc = b * b - (rel.norm_sq() - r * r);
                if disc < 0.0 {
                    return None;
                }
                let root = disc.sqrt();
                CoverInterval::clipped((b - root) / len, (b + root) / len)
            }
            Shape::ConvexPolygon { vertices } => {
                let (mut lo, mut hi) = (0.0f64, 1.0f64);
                for (a, b) in polygon_edges(vertices) {
                    let e = b - a;
                    let a = a + self.translation;
                    let normal = Point::new(e.y, -e.x) * (1.0 / e.norm());
                    // inside: normal·(p - a) <= -delta
                    let c0 = normal.dot(seg.origin - a) + self.delta;
                    let c1 = normal.dot(dir) * len;
                    if c1 == 0.0 {
                        if c0 > 0.0 {
                            return None;
                        }
                    } else {
                        let u = -c0 / c1;
                        if c1 > 0.0 {
                            hi = hi.min(u);
                        } else {
                            lo = lo.max(u);
                        }
                    }
                    if lo > hi {
                        return None;
                    }
                }
                Some(CoverInterval { lo, hi })
            }
            Shape::Bar { a, b } => {
                if self.delta > 0.0 {
                    return None;
                }
                let (a, b) = (*a + self.translation, *b + self.translation);
                let (p, q) = (seg.origin, seg.end());
                let scale = a.dist(b).max(1.0);
                if orient(a, b, p).abs() > ON_BAR_EPS * scale
                    || orient(a, b, q).abs() > ON_BAR_EPS * scale
                {
                    return None;
                }
                // project bar endpoints onto the segment's parameter
                let ua = (a - p).dot(dir) / len;
                let ub = (b - p).dot(dir) / len;
                CoverInterval::clipped(ua.min(ub), ua.max(ub))
            }
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.signed_clearance(p) <= 0.0
    }

    /// Euclidean distance from `p` to the (uneroded) shape; zero inside.
    pub fn distance(&self, p: Point) -> f64 {
        let q = p - self.translation;
        match self.shape {
            Shape::Disc { radius } => (q.norm() - radius).max(0.0),
            Shape::ConvexPolygon { vertices } => {
                if polygon_edges(vertices).all(|(a, b)| orient(a, b, q) >= 0.0) {
                    0.0
                } else {
                    polygon_edges(vertices)
                        .map(|(a, b)| point_segment_distance(q, a, b))
                        .fold(f64::INFINITY, f64::min)
                }
            }
            Shape::Bar { a, b } => point_segment_distance(q, *a, *b),
        }
    }

    /// Non-positive exactly when `p` is in the closed eroded shape.
    fn signed_clearance(&self, p: Point) -> f64 {
        let q = p - self.translation;
        match self.shape {
            Shape::Disc { radius } => q.norm() - (radius - self.delta),
            Shape::ConvexPolygon { vertices } => polygon_edges(vertices)
                .map(|(a, b)| {
                    let e = b - a;
                    Point::new(e.y, -e.x).dot(q - a) / e.norm() + self.delta
                })
                .fold(f64::NEG_INFINITY, f64::max),
            Shape::Bar { a, b } => {
                if self.delta > 0.0 {
                    return f64::INFINITY;
                }
                let d = point_segment_distance(q, *a, *b);
                if d <= ON_BAR_EPS {
                    0.0
                } else {
                    d
                }
            }
        }
    }
}

fn polygon_edges(vertices: &[Point]) -> impl Iterator<Item = (Point, Point)> + '_ {
    let n = vertices.len();
    (0..n).map(move |i| (vertices[i], vertices[(i + 1) % n]))
}

/// Parameter interval of `seg` covered by `obstacle` at time `t`. Convex
/// shapes cover at most one interval, so the list has length zero or one.
pub fn shape_cover_interval(seg: &AxisSegment, obstacle: &Obstacle, t: f64) -> Vec<CoverInterval> {
    PlacedObstacle::at(obstacle, t)
        .cover_interval(seg)
        .into_iter()
        .collect()
}

/// Whether the union of closed intervals covers `[0, 1]`, treating gaps up to
/// [`MERGE_EPS`] as closed.
pub fn intervals_cover_unit(mut intervals: Vec<CoverInterval>) -> bool {
    intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut reach = 0.0;
    for iv in intervals {
        if iv.lo > reach + MERGE_EPS {
            return false;
        }
        reach = f64::max(reach, iv.hi);
        if reach >= 1.0 - MERGE_EPS {
            return true;
        }
    }
    false
}

/// Whether the placed obstacles jointly cover the whole of `seg`.
pub fn covered_by(seg: &AxisSegment, placed: &[PlacedObstacle<'_>]) -> bool {
    if seg.is_point() {
        return placed.iter().any(|o| o.contains(seg.origin));
    }
    let mut parts = Vec::new();
    for o in placed {
        if let Some(iv) = o.cover_interval(seg) {
            if iv.lo <= MERGE_EPS && iv.hi >= 1.0 - MERGE_EPS {
                return true;
            }
            parts.push(iv);
        }
    }
    intervals_cover_unit(parts)
}

/// Whether `seg` lies entirely inside the obstacle union at time `t`.
pub fn segment_covered(seg: &AxisSegment, scenario: &Scenario, t: f64) -> bool {
    let placed: Vec<_> = scenario
        .obstacles
        .iter()
        .map(|o| PlacedObstacle::at(o, t))
        .collect();
    covered_by(seg, &placed)
}

/// Whether `p` lies in some closed obstacle at time `t`.
pub fn point_in_union(p: Point, scenario: &Scenario, t: f64) -> bool {
    scenario
        .obstacles
        .iter()
        .any(|o| PlacedObstacle::at(o, t).contains(p))
}

/// Sampled collision check for straight motion from `(p1, t1)` to `(p2, t2)`.
///
/// Instants are sampled at a step no larger than `dt_check` with both
/// endpoints included. Between consecutive samples the robot's displacement
/// relative to each bar is also tested against the bar, so zero-width bars
/// cannot be tunnelled through.
pub fn moving_point_collides(
    p1: Point,
    t1: f64,
    p2: Point,
    t2: f64,
    scenario: &Scenario,
    dt_check: f64,
) -> bool {
    let span = t2 - t1;
    let steps = if span > 0.0 {
        (span / dt_check).ceil().max(1.0) as usize
    } else {
        0
    };
    let sample = |i: usize| -> (f64, Point) {
        if steps == 0 {
            return (t1, p1);
        }
        let u = i as f64 / steps as f64;
        let t = if i == steps { t2 } else { t1 + span * u };
        let p = if i == steps { p2 } else { p1.lerp(p2, u) };
        (t, p)
    };
    let mut prev: Option<(f64, Point)> = None;
    for i in 0..=steps {
        let (t, p) = sample(i);
        for o in &scenario.obstacles {
            let placed = PlacedObstacle::at(o, t);
            if placed.contains(p) {
                return true;
            }
            if let (Shape::Bar { a, b }, Some((tp, pp))) = (&o.shape, prev) {
                // relative motion in the bar's body frame
                let r0 = pp - o.trajectory.translation_at(tp);
                let r1 = p - placed.translation;
                if segments_intersect(r0, r1, *a, *b) {
                    return true;
                }
            }
        }
        prev = Some((t, p));
    }
    false
}
