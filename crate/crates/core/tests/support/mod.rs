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

//! Reference implementations used to cross-check the library. They share no
//! code with the paths they check beyond the scenario and graph geometry.

#![allow(dead_code)]

use lbplan_core::coverage::point_in_union;
use lbplan_core::geometry::{point_segment_distance, segment_distance, AxisSegment, Axis, Point};
use lbplan_core::graph::{LbpGraph, VertexId};
use lbplan_core::reachability::{Interval, IntervalTable};
use lbplan_core::scenario::{Obstacle, Scenario, Shape, Trajectory, Waypoint};
use rand::Rng;
use std::collections::BTreeSet;

const GEOM_EPS: f64 = 1e-12;

pub fn corridor(obstacles: Vec<Obstacle>) -> Scenario {
    Scenario {
        id: None,
        workspace_size: 1.0,
        horizon: 100.0,
        v_max: 0.03,
        start: Point::new(0.0, 0.5),
        goal: Point::new(1.0, 0.5),
        obstacles,
    }
}

/// Closed cell boxes `(x0, y0, x1, y1)` computed directly from the grid size.
fn cell_boxes(n: usize, l: f64) -> Vec<(f64, f64, f64, f64)> {
    let w = l / n as f64;
    let mut out = Vec::new();
    for row in 0..n {
        for col in 0..n {
            out.push((col as f64 * w, row as f64 * w, (col + 1) as f64 * w, (row + 1) as f64 * w));
        }
    }
    out
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= GEOM_EPS
}

fn in_box(p: Point, b: (f64, f64, f64, f64)) -> bool {
    p.x >= b.0 - GEOM_EPS && p.x <= b.2 + GEOM_EPS && p.y >= b.1 - GEOM_EPS && p.y <= b.3 + GEOM_EPS
}

/// Side of box `b` that the sub-segment lies on: 0 bottom, 1 right, 2 top,
/// 3 left.
fn side_of(seg: &AxisSegment, b: (f64, f64, f64, f64)) -> Option<u8> {
    if !(in_box(seg.origin, b) && in_box(seg.end(), b)) {
        return None;
    }
    match seg.axis {
        Axis::Horizontal if near(seg.origin.y, b.1) => Some(0),
        Axis::Horizontal if near(seg.origin.y, b.3) => Some(2),
        Axis::Vertical if near(seg.origin.x, b.2) => Some(1),
        Axis::Vertical if near(seg.origin.x, b.0) => Some(3),
        _ => None,
    }
}

/// Adjacency rebuilt from geometry: two vertices are joined when a cell box
/// contains both, and sub-segments lie on different sides of that box.
pub fn brute_force_adjacency(g: &LbpGraph, l: f64) -> Vec<BTreeSet<VertexId>> {
    let boxes = cell_boxes(g.n(), l);
    let nv = g.num_vertices();
    let special = |v: VertexId| v == g.start() || v == g.goal();
    let mut adj = vec![BTreeSet::new(); nv];
    for u in 0..nv {
        for v in u + 1..nv {
            let (su, sv) = (g.sub_segment(u), g.sub_segment(v));
            let joined = boxes.iter().any(|&b| match (special(u), special(v)) {
                (true, true) => in_box(su.origin, b) && in_box(sv.origin, b),
                (true, false) => in_box(su.origin, b) && side_of(&sv, b).is_some(),
                (false, true) => in_box(sv.origin, b) && side_of(&su, b).is_some(),
                (false, false) => matches!((side_of(&su, b), side_of(&sv, b)), (Some(a), Some(c)) if a != c),
            });
            if joined {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    adj
}

/// Arrival time at a vertex whose reachable intervals are `list` when ready
/// at `ready`, by linear scan.
fn scan_arrival(list: &[Interval], ready: f64, horizon: f64) -> Option<f64> {
    for iv in list {
        if ready <= iv.hi {
            let arrival = if iv.lo > ready { iv.lo } else { ready };
            return (arrival <= horizon).then_some(arrival);
        }
    }
    None
}

/// Exhaustive depth-first enumeration of start-goal walks, pruning a branch
/// only when it reaches a vertex no earlier than a previous branch did.
pub fn exhaustive_earliest_arrival(
    g: &LbpGraph,
    adj: &[BTreeSet<VertexId>],
    table: &IntervalTable,
    horizon: f64,
) -> Option<f64> {
    let s = g.start();
    let s_list = table.intervals(s);
    if s_list.first().is_none_or(|iv| iv.lo > 0.0) {
        return None;
    }
    let mut best = vec![f64::INFINITY; g.num_vertices()];
    fn dfs(
        v: VertexId,
        t: f64,
        g: &LbpGraph,
        adj: &[BTreeSet<VertexId>],
        table: &IntervalTable,
        horizon: f64,
        best: &mut [f64],
    ) {
        if t >= best[v] {
            return;
        }
        best[v] = t;
        if v == g.goal() {
            return;
        }
        for &u in &adj[v] {
            let d = segment_distance(
                g.sub_segment(v).origin,
                g.sub_segment(v).end(),
                g.sub_segment(u).origin,
                g.sub_segment(u).end(),
            );
            if let Some(a) = scan_arrival(table.intervals(u), t + d / g.v_max(), horizon) {
                dfs(u, a, g, adj, table, horizon, best);
            }
        }
    }
    dfs(s, 0.0, g, adj, table, horizon, &mut best);
    best[g.goal()].is_finite().then(|| best[g.goal()])
}

/// Up to `max` sorted disjoint intervals inside `[0, horizon]`.
pub fn random_intervals(rng: &mut impl Rng, max: usize, horizon: f64) -> Vec<Interval> {
    let count = rng.gen_range(0..=max);
    let mut cuts: Vec<f64> = (0..2 * count).map(|_| rng.gen_range(0.0..horizon)).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut out: Vec<Interval> = cuts
        .chunks_exact(2)
        .map(|c| Interval::new(c[0], c[1]))
        .collect();
    out.dedup_by(|b, a| b.lo <= a.hi);
    if rng.gen_bool(0.3) {
        if let Some(first) = out.first_mut() {
            first.lo = 0.0;
        }
    }
    out
}

fn maybe_on_grid(rng: &mut impl Rng, n: usize) -> f64 {
    if rng.gen_bool(0.3) {
        rng.gen_range(0..=n) as f64 / n as f64
    } else {
        rng.gen_range(0.0..=1.0)
    }
}

/// A small graph with random start, goal and reachable intervals.
pub fn random_small_instance(rng: &mut impl Rng) -> (Scenario, LbpGraph, IntervalTable) {
    let n = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=2);
    let horizon = 60.0;
    let mut scenario = corridor(vec![]);
    scenario.horizon = horizon;
    scenario.v_max = 0.03;
    scenario.start = Point::new(maybe_on_grid(rng, n), maybe_on_grid(rng, n));
    scenario.goal = Point::new(maybe_on_grid(rng, n), maybe_on_grid(rng, n));
    let g = LbpGraph::build(&scenario, n, k).unwrap();
    let mut lists: Vec<Vec<Interval>> = (0..g.num_line_segments() + 2)
        .map(|_| random_intervals(rng, 3, horizon))
        .collect();
    // the start must be free at time zero for a search to begin
    let start_list = &mut lists[g.num_line_segments()];
    if rng.gen_bool(0.9) {
        *start_list = vec![Interval::new(0.0, horizon)];
    }
    let table = IntervalTable::from_lists(&g, horizon, lists).unwrap();
    (scenario, g, table)
}

/// Distance from `p` to the boundary of obstacle `o` at time `t`.
fn boundary_distance(p: Point, o: &Obstacle, t: f64) -> f64 {
    let q = p - o.trajectory.translation_at(t);
    match &o.shape {
        Shape::Disc { radius } => (q.norm() - radius).abs(),
        Shape::ConvexPolygon { vertices } => (0..vertices.len())
            .map(|i| point_segment_distance(q, vertices[i], vertices[(i + 1) % vertices.len()]))
            .fold(f64::INFINITY, f64::min),
        Shape::Bar { a, b } => point_segment_distance(q, *a, *b),
    }
}

/// Sampling verdict on whether `seg` lies inside the obstacle union at `t`,
/// or `None` when some sample is within one sample spacing of a boundary.
pub fn sampled_coverage(seg: &AxisSegment, scenario: &Scenario, t: f64, samples: usize) -> Option<bool> {
    let spacing = seg.length / (samples - 1) as f64;
    let mut all = true;
    for i in 0..samples {
        let p = seg.at(i as f64 / (samples - 1) as f64);
        if scenario.obstacles.iter().any(|o| boundary_distance(p, o, t) <= spacing) {
            return None;
        }
        all &= point_in_union(p, scenario, t);
    }
    Some(all)
}

fn random_motion(rng: &mut impl Rng, horizon: f64) -> Trajectory {
    let p0 = Point::new(rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9));
    if rng.gen_bool(0.3) {
        return Trajectory::fixed(p0);
    }
    let p1 = Point::new(rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9));
    Trajectory::new(vec![
        Waypoint { t: 0.0, translation: p0 },
        Waypoint { t: horizon, translation: p1 },
    ])
}

/// Discs, convex polygons and bars with random straight-line motions.
pub fn random_coverage_scene(rng: &mut impl Rng) -> Scenario {
    let mut s = corridor(vec![]);
    s.horizon = 10.0;
    let count = rng.gen_range(1..=4);
    for _ in 0..count {
        let trajectory = random_motion(rng, s.horizon);
        let shape = match rng.gen_range(0..3) {
            0 => Shape::Disc { radius: rng.gen_range(0.05..0.5) },
            1 => {
                let sides = rng.gen_range(3..=7);
                let r = rng.gen_range(0.1..0.6);
                let phase = rng.gen_range(0.0..std::f64::consts::TAU);
                Shape::ConvexPolygon {
                    vertices: (0..sides)
                        .map(|i| {
                            let a = phase + std::f64::consts::TAU * i as f64 / sides as f64;
                            Point::new(r * a.cos(), r * a.sin())
                        })
                        .collect(),
                }
            }
            _ => Shape::Bar {
                a: Point::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)),
                b: Point::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)),
            },
        };
        s.obstacles.push(Obstacle { shape, trajectory });
    }
    s
}

/// Axis-aligned segment inside the unit square.
pub fn random_axis_segment(rng: &mut impl Rng) -> AxisSegment {
    let axis = if rng.gen_bool(0.5) { Axis::Horizontal } else { Axis::Vertical };
    let length = rng.gen_range(0.02..0.4);
    let a = rng.gen_range(0.0..1.0 - length);
    let b = rng.gen_range(0.0..1.0);
    let origin = match axis {
        Axis::Horizontal => Point::new(a, b),
        Axis::Vertical => Point::new(b, a),
    };
    AxisSegment::new(origin, axis, length)
}
