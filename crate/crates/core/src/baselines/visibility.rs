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

//! Shortest paths among the static obstacles, ignoring everything that moves.
//! Removing obstacles only enlarges the feasible set, so the result bounds
//! the optimum from below.

use crate::error::{Error, Result};
use crate::geometry::{segments_cross_properly, Point};
use crate::scenario::{Scenario, Shape};
use petgraph::algo::astar;
use petgraph::graph::{NodeIndex, UnGraph};

/// Sides of the polygon inscribed in each static disc. An inscribed polygon
/// is contained in its disc, so the bound stays valid.
pub const DISC_SIDES: usize = 32;

/// Relative tolerance for "strictly inside a polygon".
const INTERIOR_EPS: f64 = 1e-12;

enum Blocker {
    Bar(Point, Point),
    /// Counter-clockwise vertices.
    Polygon(Vec<Point>),
}

impl Blocker {
    fn blocks(&self, p: Point, q: Point) -> bool {
        match self {
            Blocker::Bar(a, b) => segments_cross_properly(p, q, *a, *b),
            Blocker::Polygon(vs) => passes_through_interior(p, q, vs),
        }
    }
}

/// Whether segment `pq` spends positive length strictly inside the convex
/// polygon `vs`. Running along an edge or touching a vertex does not count.
fn passes_through_interior(p: Point, q: Point, vs: &[Point]) -> bool {
    let n = vs.len();
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let edges = || (0..n).map(|i| (vs[i], vs[(i + 1) % n]));
    for (a, b) in edges() {
        let e = b - a;
        let c0 = e.cross(p - a);
        let c1 = e.cross(q - p);
        if c1 == 0.0 {
            if c0 <= 0.0 {
                return false;
            }
        } else if c1 > 0.0 {
            lo = lo.max(-c0 / c1);
        } else {
            hi = hi.min(-c0 / c1);
        }
        if lo >= hi {
            return false;
        }
    }
    let m = p.lerp(q, 0.5 * (lo + hi));
    let scale = p.dist(q).max(1.0);
    edges().all(|(a, b)| {
        let e = b - a;
        e.cross(m - a) / e.norm() > INTERIOR_EPS * scale
    })
}

/// Visibility graph over the start, the goal and the corners of static
/// obstacles, with Euclidean edge weights.
pub struct VisibilityGraph {
    pub graph: UnGraph<Point, f64>,
    pub start: NodeIndex,
    pub goal: NodeIndex,
}

impl VisibilityGraph {
    pub fn build(scenario: &Scenario) -> Self {
        let mut nodes = vec![scenario.start, scenario.goal];
        let mut blockers = Vec::new();
        for o in scenario.obstacles.iter().filter(|o| o.trajectory.is_static()) {
            let at = o.trajectory.translation_at(0.0);
            match &o.shape {
                Shape::Bar { a, b } => {
                    blockers.push(Blocker::Bar(*a + at, *b + at));
                    nodes.extend([*a + at, *b + at]);
                }
                Shape::ConvexPolygon { vertices } => {
                    let vs: Vec<Point> = vertices.iter().map(|v| *v + at).collect();
                    nodes.extend(&vs);
                    blockers.push(Blocker::Polygon(vs));
                }
                Shape::Disc { radius } => {
                    let vs: Vec<Point> = (0..DISC_SIDES)
                        .map(|i| {
                            let a = std::f64::consts::TAU * i as f64 / DISC_SIDES as f64;
                            at + Point::new(a.cos(), a.sin()) * *radius
                        })
                        .collect();
                    nodes.extend(&vs);
                    blockers.push(Blocker::Polygon(vs));
                }
            }
        }
        let mut graph = UnGraph::with_capacity(nodes.len(), 0);
        let ids: Vec<NodeIndex> = nodes.iter().map(|&p| graph.add_node(p)).collect();
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                let (p, q) = (nodes[i], nodes[j]);
                if !blockers.iter().any(|b| b.blocks(p, q)) {
                    graph.add_edge(ids[i], ids[j], p.dist(q));
                }
            }
        }
        Self {
            graph,
            start: ids[0],
            goal: ids[1],
        }
    }

    /// Shortest start-goal polyline and its length.
    pub fn shortest_path(&self) -> Option<(f64, Vec<Point>)> {
        let goal = self.graph[self.goal];
        astar(
            &self.graph,
            self.start,
            |n| n == self.goal,
            |e| *e.weight(),
            |n| self.graph[n].dist(goal),
        )
        .map(|(len, path)| (len, path.into_iter().map(|n| self.graph[n]).collect()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaselineBound {
    /// Travel time in seconds.
    pub cost: f64,
    pub path: Vec<Point>,
}

/// Static-obstacle lower bound. Fails with [`Error::Unbounded`] when the
/// static obstacles separate the start from the goal.
pub fn baseline_lower_bound(scenario: &Scenario) -> Result<BaselineBound> {
    let (len, path) = VisibilityGraph::build(scenario)
        .shortest_path()
        .ok_or(Error::Unbounded)?;
    Ok(BaselineBound {
        cost: len / scenario.v_max,
        path,
    })
}
