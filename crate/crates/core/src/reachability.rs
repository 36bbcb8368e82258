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

//! Reachable time intervals for graph vertices and safe intervals for the
//! feasibility grid.
//!
//! A line segment is non-reachable while the obstacle union contains all of
//! it. Time is split into slabs of width `dt`; a slab is marked covered only
//! when the segment is covered by the obstacles *eroded by how far each can
//! travel within half the slab*, evaluated at the slab center. Such a slab is
//! covered at every instant inside it, so the computed non-reachable set is a
//! subset of the true one and the resulting graph stays a relaxation. A
//! maximal run of covered slabs `[a, b]` becomes the open non-reachable
//! interval `(a, b)`; the closed complement is the reachable set. Coarser
//! slabs are unions of finer ones, so halving `dt` can only grow the
//! non-reachable set.

use crate::coverage::{covered_by, PlacedObstacle};
use crate::error::{Error, Result};
use crate::geometry::{AxisSegment, Point};
use crate::graph::{LbpGraph, LineSegmentId, VertexId};
use crate::scenario::Scenario;
use rayon::prelude::*;
use std::fmt::Write as _;

/// Closed time interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

fn check_sorted_disjoint(list: &[Interval], horizon: f64) -> bool {
    list.iter().all(|iv| 0.0 <= iv.lo && iv.lo <= iv.hi && iv.hi <= horizon)
        && list.windows(2).all(|w| w[0].hi < w[1].lo)
}

/// Reachable intervals per line segment, plus the start and goal points.
/// All sub-segments of a line segment share one list.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalTable {
    k: usize,
    num_line_segments: usize,
    horizon: f64,
    dt: f64,
    lists: Vec<Vec<Interval>>,
}

impl IntervalTable {
    /// Builds a table from explicit lists: one per line segment, followed by
    /// the start's and the goal's.
    pub fn from_lists(g: &LbpGraph, horizon: f64, lists: Vec<Vec<Interval>>) -> Result<Self> {
        if lists.len() != g.num_line_segments() + 2 {
            return Err(Error::invalid(
                "lists",
                format!(
                    "expected {} interval lists, got {}",
                    g.num_line_segments() + 2,
                    lists.len()
                ),
            ));
        }
        if let Some(i) = lists.iter().position(|l| !check_sorted_disjoint(l, horizon)) {
            return Err(Error::invalid(
                format!("lists[{i}]"),
                "intervals must be sorted, disjoint and inside [0, T]",
            ));
        }
        Ok(Self {
            k: g.k(),
            num_line_segments: g.num_line_segments(),
            horizon,
            dt: 0.0,
            lists,
        })
    }

    /// Every vertex reachable over the whole horizon.
    pub fn unconstrained(g: &LbpGraph, horizon: f64) -> Self {
        Self {
            k: g.k(),
            num_line_segments: g.num_line_segments(),
            horizon,
            dt: 0.0,
            lists: vec![vec![Interval::new(0.0, horizon)]; g.num_line_segments() + 2],
        }
    }

    #[inline]
    fn key(&self, v: VertexId) -> usize {
        let sub_segments = self.num_line_segments * self.k;
        if v < sub_segments {
            v / self.k
        } else {
            self.num_line_segments + (v - sub_segments)
        }
    }

    pub fn intervals(&self, v: VertexId) -> &[Interval] {
        &self.lists[self.key(v)]
    }

    pub fn line_segment_intervals(&self, ls: LineSegmentId) -> &[Interval] {
        &self.lists[ls]
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// Slab width used to compute the table, zero for hand-built tables.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn total_intervals(&self) -> usize {
        self.lists.iter().map(Vec::len).sum()
    }

    /// CSV `line_segment_id,t_start,t_end`; the start and goal rows use the
    /// ids `start` and `goal`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("line_segment_id,t_start,t_end\n");
        for (i, list) in self.lists.iter().enumerate() {
            let id = match i.checked_sub(self.num_line_segments) {
                None => i.to_string(),
                Some(0) => "start".into(),
                Some(_) => "goal".into(),
            };
            for iv in list {
                let _ = writeln!(out, "{id},{},{}", iv.lo, iv.hi);
            }
        }
        out
    }
}

/// First interval of `v` whose end is not before `t_ready`, with the arrival
/// time `max(start, t_ready)`. `None` when no such interval admits arrival
/// within the horizon.
pub fn first_interval_reaching(
    table: &IntervalTable,
    v: VertexId,
    t_ready: f64,
) -> Option<(usize, f64)> {
    let list = table.intervals(v);
    let j = list.partition_point(|iv| iv.hi < t_ready);
    let iv = list.get(j)?;
    let arrival = iv.lo.max(t_ready);
    (arrival <= table.horizon).then_some((j, arrival))
}

/// Default slab width: a twentieth of a cell crossing at the fastest
/// obstacle's speed, and never more than `T / 10^4`.
pub fn default_dt(scenario: &Scenario, cell_size: f64) -> f64 {
    let cap = scenario.horizon / 1e4;
    let v = scenario.max_obstacle_speed();
    if v > 0.0 {
        (0.05 * cell_size / v).min(cap)
    } else {
        cap
    }
}

/// Time slabs `[i·dt, min((i+1)·dt, T)]` covering `[0, T]`.
pub fn time_slabs(horizon: f64, dt: f64) -> Vec<Interval> {
    let count = (horizon / dt).ceil().max(1.0) as usize;
    (0..count)
        .map(|i| {
            let lo = i as f64 * dt;
            let hi = if i + 1 == count {
                horizon
            } else {
                ((i + 1) as f64 * dt).min(horizon)
            };
            Interval::new(lo, hi)
        })
        .filter(|iv| iv.lo < iv.hi)
        .collect()
}

/// Obstacles placed at each slab's center, eroded by the distance each can
/// travel in half the slab.
fn certified_placements<'a>(scenario: &'a Scenario, slabs: &[Interval]) -> Vec<Vec<PlacedObstacle<'a>>> {
    slabs
        .par_iter()
        .map(|slab| {
            let mid = 0.5 * (slab.lo + slab.hi);
            let half = 0.5 * (slab.hi - slab.lo);
            scenario
                .obstacles
                .iter()
                .map(|o| {
                    let speed = o.trajectory.max_speed_between(slab.lo, slab.hi);
                    PlacedObstacle::at(o, mid).eroded(speed * half)
                })
                .collect()
        })
        .collect()
}

/// Reachable intervals from a per-slab coverage flag sequence.
fn reachable_from_flags(slabs: &[Interval], covered: impl Iterator<Item = bool>, horizon: f64) -> Vec<Interval> {
    let mut out = Vec::new();
    let mut cursor = 0.0;
    let mut run_start: Option<f64> = None;
    for (slab, c) in slabs.iter().zip(covered) {
        match (c, run_start) {
            (true, None) => run_start = Some(slab.lo),
            (false, Some(a)) => {
                out.push(Interval::new(cursor, a));
                cursor = slab.lo;
                run_start = None;
            }
            _ => {}
        }
    }
    if let Some(a) = run_start {
        out.push(Interval::new(cursor, a));
        cursor = horizon;
    }
    out.push(Interval::new(cursor, horizon));
    out
}

fn segment_reachability(
    seg: &AxisSegment,
    slabs: &[Interval],
    placements: &[Vec<PlacedObstacle<'_>>],
    horizon: f64,
) -> Vec<Interval> {
    reachable_from_flags(
        slabs,
        placements.iter().map(|placed| covered_by(seg, placed)),
        horizon,
    )
}

/// Reachable intervals of every line segment and of the start and goal.
///
/// Line segments are evaluated in parallel. When no obstacle moves, a single
/// evaluation stands for the whole horizon.
pub fn compute_reachable_intervals(g: &LbpGraph, scenario: &Scenario, dt: f64) -> Result<IntervalTable> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::invalid("dt", "slab width must be positive"));
    }
    let horizon = scenario.horizon;
    let slabs = if scenario.has_moving_obstacles() {
        time_slabs(horizon, dt)
    } else {
        vec![Interval::new(0.0, horizon)]
    };
    let placements = certified_placements(scenario, &slabs);
    let segments: Vec<AxisSegment> = (0..g.num_line_segments())
        .map(|ls| g.line_segment(ls))
        .chain([AxisSegment::point(scenario.start), AxisSegment::point(scenario.goal)])
        .collect();
    let lists = segments
        .par_iter()
        .map(|seg| segment_reachability(seg, &slabs, &placements, horizon))
        .collect();
    Ok(IntervalTable {
        k: g.k(),
        num_line_segments: g.num_line_segments(),
        horizon,
        dt,
        lists,
    })
}

/// Safe intervals of the centers of a `grid_n × grid_n` grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SafeIntervalGrid {
    pub grid_n: usize,
    pub cell_size: f64,
    pub dt: f64,
    lists: Vec<Vec<Interval>>,
}

impl SafeIntervalGrid {
    pub fn center(&self, cell: usize) -> Point {
        let (row, col) = (cell / self.grid_n, cell % self.grid_n);
        Point::new(
            (col as f64 + 0.5) * self.cell_size,
            (row as f64 + 0.5) * self.cell_size,
        )
    }

    pub fn cell_at(&self, p: Point) -> usize {
        let idx = |v: f64| ((v / self.cell_size).floor().max(0.0) as usize).min(self.grid_n - 1);
        idx(p.y) * self.grid_n + idx(p.x)
    }

    pub fn intervals(&self, cell: usize) -> &[Interval] {
        &self.lists[cell]
    }

    pub fn num_cells(&self) -> usize {
        self.grid_n * self.grid_n
    }
}

/// Safe intervals for each grid-cell center.
///
/// A sample instant is unsafe when the center is within `inflation` of an
/// obstacle, with each obstacle further inflated by the distance it can move
/// in one `dt`. A maximal run of safe samples `t_i..t_j` becomes
/// `[t_i + dt, t_j - dt]`, keeping `0` or `T` when the run touches them.
pub fn compute_safe_intervals_grid(
    grid_n: usize,
    scenario: &Scenario,
    dt: f64,
    inflation: f64,
) -> Result<SafeIntervalGrid> {
    if grid_n == 0 {
        return Err(Error::invalid("grid_n", "grid needs at least one cell"));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::invalid("dt", "sampling step must be positive"));
    }
    if inflation.is_nan() || inflation < 0.0 {
        return Err(Error::invalid("inflation", "inflation must be non-negative"));
    }
    let horizon = scenario.horizon;
    let steps = (horizon / dt).ceil().max(1.0) as usize;
    let sample_t = |i: usize| if i == steps { horizon } else { i as f64 * dt };
    let placements: Vec<Vec<(PlacedObstacle<'_>, f64)>> = (0..=steps)
        .into_par_iter()
        .map(|i| {
            let t = sample_t(i);
            scenario
                .obstacles
                .iter()
                .map(|o| {
                    let drift = o.trajectory.max_speed_between(t - dt, t + dt) * dt;
                    (PlacedObstacle::at(o, t), inflation + drift)
                })
                .collect()
        })
        .collect();
    let cell_size = scenario.workspace_size / grid_n as f64;
    let mut grid = SafeIntervalGrid {
        grid_n,
        cell_size,
        dt,
        lists: Vec::new(),
    };
    grid.lists = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|cell| {
            let c = grid.center(cell);
            let safe: Vec<bool> = placements
                .iter()
                .map(|placed| placed.iter().all(|(o, margin)| o.distance(c) > *margin))
                .collect();
            let mut out = Vec::new();
            let mut i = 0;
            while i <= steps {
                if !safe[i] {
                    i += 1;
                    continue;
                }
                let mut j = i;
                while j < steps && safe[j + 1] {
                    j += 1;
                }
                let lo = if i == 0 { 0.0 } else { sample_t(i) + dt };
                let hi = if j == steps { horizon } else { sample_t(j) - dt };
                if lo <= hi {
                    out.push(Interval::new(lo, hi));
                }
                i = j + 1;
            }
            out
        })
        .collect();
    Ok(grid)
}
