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

//! Earliest-arrival best-first search over the discretized graph.
//!
//! `g(v)` is the earliest time the robot can be at `v`. Moving along an edge
//! to `u` is allowed when `u` has a reachable interval ending no earlier than
//! `g(v) + cost`; arrival is then clamped up to that interval's start, the
//! difference being spent waiting at `v`. Edges themselves are never checked
//! against obstacles and the robot may wait at a vertex indefinitely.

use crate::graph::{CellId, LbpGraph, Neighbor, VertexId};
use crate::reachability::{first_interval_reaching, IntervalTable};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

/// Admissible heuristics. Only the zero heuristic is guaranteed to never
/// overestimate the graph's cost-to-go.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Heuristic {
    #[default]
    Zero,
}

impl Heuristic {
    #[inline]
    fn eval(self, _v: VertexId) -> f64 {
        match self {
            Heuristic::Zero => 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOptions {
    /// Forbid a successor edge from traversing the cell its parent edge
    /// traversed. Never applied when expanding the start.
    pub expansion_constraint: bool,
    pub heuristic: Heuristic,
    /// Record the f-value of every non-stale pop in `SearchStats::pop_trace`.
    pub record_pops: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            expansion_constraint: true,
            heuristic: Heuristic::Zero,
            record_pops: false,
        }
    }
}

impl SearchOptions {
    pub fn with_constraint(expansion_constraint: bool) -> Self {
        Self {
            expansion_constraint,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Solved,
    NoPath,
}

/// One visited vertex. `wait` is spent at `vertex` before leaving for the
/// next step; it is zero on the last step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PathStep {
    pub vertex: VertexId,
    pub arrival: f64,
    pub wait: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SearchStats {
    pub expansions: usize,
    pub generated: usize,
    #[serde(skip)]
    pub wall_time: Duration,
    #[serde(skip)]
    pub pop_trace: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchResult {
    pub status: SearchStatus,
    /// Arrival time at the goal; `None` when unsolved.
    pub cost: Option<f64>,
    pub path: Vec<PathStep>,
    pub stats: SearchStats,
}

/// Per-vertex labels after a search.
#[derive(Clone, Debug)]
pub struct SearchState {
    pub g: Vec<f64>,
    pub parent: Vec<Option<VertexId>>,
    /// Cell traversed by the edge from `parent[v]` to `v`.
    pub parent_cell: Vec<Option<CellId>>,
}

impl SearchState {
    fn new(num_vertices: usize) -> Self {
        Self {
            g: vec![f64::INFINITY; num_vertices],
            parent: vec![None; num_vertices],
            parent_cell: vec![None; num_vertices],
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct OpenEntry {
    f: f64,
    g: f64,
    v: VertexId,
}

impl PartialEq for OpenEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for OpenEntry {}

impl PartialOrd for OpenEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OpenEntry {
    /// Max-heap order: the greatest entry has the smallest f, then the
    /// largest g, then the smallest id.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then(self.g.total_cmp(&other.g))
            .then(other.v.cmp(&self.v))
    }
}

/// Arrival time at `u` when leaving `v` (reached at `g_v`) along an edge of
/// cost `cost_vu`, or `None` if `u` cannot be reached within the horizon.
pub fn earliest_reach(u: VertexId, g_v: f64, cost_vu: f64, table: &IntervalTable) -> Option<f64> {
    first_interval_reaching(table, u, g_v + cost_vu).map(|(_, arrival)| arrival)
}

/// Edges out of `v` that may be generated given the cell of its parent edge.
pub fn constrained_neighbors(
    g: &LbpGraph,
    v: VertexId,
    parent_cell: Option<CellId>,
    opts: &SearchOptions,
) -> Vec<Neighbor> {
    let mut out = g.neighbors(v);
    if let Some(c) = active_filter(g, v, parent_cell, opts) {
        out.retain(|nb| nb.cell != c);
    }
    out
}

#[inline]
fn active_filter(
    g: &LbpGraph,
    v: VertexId,
    parent_cell: Option<CellId>,
    opts: &SearchOptions,
) -> Option<CellId> {
    if opts.expansion_constraint && v != g.start() {
        parent_cell
    } else {
        None
    }
}

/// Runs the search from the start at time 0 to the goal.
pub fn solve(g: &LbpGraph, table: &IntervalTable, opts: &SearchOptions) -> SearchResult {
    let (result, _) = solve_with_state(g, table, opts);
    result
}

/// [`solve`], also returning the final labels.
pub fn solve_with_state(
    g: &LbpGraph,
    table: &IntervalTable,
    opts: &SearchOptions,
) -> (SearchResult, SearchState) {
    let started = Instant::now();
    let (s, d) = (g.start(), g.goal());
    let mut state = SearchState::new(g.num_vertices());
    let mut stats = SearchStats::default();
    let mut open = BinaryHeap::new();

    let start_free = table.intervals(s).first().is_some_and(|iv| iv.lo == 0.0);
    if start_free {
        state.g[s] = 0.0;
        open.push(OpenEntry {
            f: opts.heuristic.eval(s),
            g: 0.0,
            v: s,
        });
    }

    let mut solved = false;
    while let Some(entry) = open.pop() {
        let v = entry.v;
        if entry.g > state.g[v] {
            continue;
        }
        if opts.record_pops {
            stats.pop_trace.push(entry.f);
        }
        if v == d {
            solved = true;
            break;
        }
        stats.expansions += 1;
        let g_v = state.g[v];
        let skip_cell = active_filter(g, v, state.parent_cell[v], opts);
        g.for_each_neighbor(v, |nb| {
            if Some(nb.cell) == skip_cell {
                return;
            }
            let Some(arrival) = earliest_reach(nb.vertex, g_v, nb.cost, table) else {
                return;
            };
            if arrival < state.g[nb.vertex] {
                state.g[nb.vertex] = arrival;
                state.parent[nb.vertex] = Some(v);
                state.parent_cell[nb.vertex] = Some(nb.cell);
                stats.generated += 1;
                open.push(OpenEntry {
                    f: arrival + opts.heuristic.eval(nb.vertex),
                    g: arrival,
                    v: nb.vertex,
                });
            }
        });
    }

    let (status, cost, path) = if solved {
        (SearchStatus::Solved, Some(state.g[d]), reconstruct(g, &state, d))
    } else {
        (SearchStatus::NoPath, None, Vec::new())
    };
    stats.wall_time = started.elapsed();
    (
        SearchResult {
            status,
            cost,
            path,
            stats,
        },
        state,
    )
}

/// Follows parent pointers back from `target` and derives the waits.
pub fn reconstruct(g: &LbpGraph, state: &SearchState, target: VertexId) -> Vec<PathStep> {
    let mut vertices = vec![target];
    let mut cur = target;
    while let Some(p) = state.parent[cur] {
        vertices.push(p);
        cur = p;
    }
    vertices.reverse();
    let mut path: Vec<PathStep> = vertices
        .iter()
        .map(|&v| PathStep {
            vertex: v,
            arrival: state.g[v],
            wait: 0.0,
        })
        .collect();
    for i in 0..path.len().saturating_sub(1) {
        let (a, b) = (path[i], path[i + 1]);
        let cost = g
            .edge_cost(a.vertex, b.vertex)
            .expect("parent pointers follow graph edges");
        path[i].wait = (b.arrival - a.arrival - cost).max(0.0);
    }
    path
}
