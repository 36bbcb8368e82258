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

//! The bi-level discretization: an `n × n` grid of square cells whose
//! boundary line segments are split into `k` sub-segments each. Every
//! sub-segment is a vertex; two vertices are joined when they bound a common
//! cell and lie on different line segments. Edge costs are the minimum
//! travel time between the two closed sub-segments.
//!
//! Vertex ids are dense. Horizontal line segments come first, row by row
//! (`row * n + col`, rows `0..=n`), then vertical ones (`row * (n + 1) + col`,
//! cols `0..=n`). Within a line segment the `k` sub-segments are numbered by
//! increasing coordinate. The start and goal follow as the last two ids.
//!
//! Edges are not materialized: all cells are translates of each other, so a
//! single `4k × 4k` cost template plus index arithmetic describes every cell.

use crate::error::{Error, Result};
use crate::geometry::{min_distance, Axis, AxisSegment, Point};
use crate::scenario::Scenario;
use arrayvec::ArrayVec;
use std::fmt::Write as _;

pub type VertexId = usize;
pub type CellId = usize;
pub type LineSegmentId = usize;

/// Default cap on the vertex count accepted by [`LbpGraph::build`].
pub const DEFAULT_MAX_VERTICES: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    SubSegment,
    Start,
    Goal,
}

/// Cell boundary sides, in template order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Bottom = 0,
    Right = 1,
    Top = 2,
    Left = 3,
}

const SIDES: [Side; 4] = [Side::Bottom, Side::Right, Side::Top, Side::Left];

#[derive(Clone, Debug, PartialEq)]
pub struct VertexInfo {
    pub kind: VertexKind,
    pub sub_segment: AxisSegment,
    /// `None` for the start and goal points.
    pub line_segment: Option<LineSegmentId>,
    pub cells: Vec<CellId>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Neighbor {
    pub vertex: VertexId,
    /// Travel time in seconds.
    pub cost: f64,
    /// The cell the edge traverses.
    pub cell: CellId,
}

#[derive(Clone, Debug)]
pub struct LbpGraph {
    n: usize,
    k: usize,
    workspace_size: f64,
    v_max: f64,
    num_line_segments: usize,
    /// `template[a * 4k + b]`: cost between local sub-segments `a` and `b`.
    template: Vec<f64>,
    start: Point,
    goal: Point,
    start_cells: Vec<CellId>,
    goal_cells: Vec<CellId>,
}

impl LbpGraph {
    pub fn build(scenario: &Scenario, n: usize, k: usize) -> Result<Self> {
        Self::build_with_cap(scenario, n, k, DEFAULT_MAX_VERTICES)
    }

    pub fn build_with_cap(scenario: &Scenario, n: usize, k: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n", "need at least one cell per side"));
        }
        if k == 0 {
            return Err(Error::invalid("k", "need at least one sub-segment per line segment"));
        }
        let requested = n
            .checked_mul(n + 1)
            .and_then(|x| x.checked_mul(2 * k))
            .and_then(|x| x.checked_add(2))
            .unwrap_or(usize::MAX);
        if requested > cap {
            return Err(Error::Resource { requested, cap });
        }
        let mut g = LbpGraph {
            n,
            k,
            workspace_size: scenario.workspace_size,
            v_max: scenario.v_max,
            num_line_segments: 2 * n * (n + 1),
            template: Vec::new(),
            start: scenario.start,
            goal: scenario.goal,
            start_cells: Vec::new(),
            goal_cells: Vec::new(),
        };
        g.start_cells = g.cells_containing(scenario.start);
        g.goal_cells = g.cells_containing(scenario.goal);
        g.template = g.build_template();
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Cell side length.
    pub fn cell_size(&self) -> f64 {
        self.workspace_size / self.n as f64
    }

    pub fn v_max(&self) -> f64 {
        self.v_max
    }

    pub fn num_line_segments(&self) -> usize {
        self.num_line_segments
    }

    pub fn num_cells(&self) -> usize {
        self.n * self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.num_line_segments * self.k + 2
    }

    pub fn start(&self) -> VertexId {
        self.num_line_segments * self.k
    }

    pub fn goal(&self) -> VertexId {
        self.start() + 1
    }

    pub fn start_cells(&self) -> &[CellId] {
        &self.start_cells
    }

    pub fn goal_cells(&self) -> &[CellId] {
        &self.goal_cells
    }

    /// Grid coordinate of line index `i ∈ 0..=n`.
    #[inline]
    fn coord(&self, i: usize) -> f64 {
        if i == self.n {
            self.workspace_size
        } else {
            self.workspace_size * i as f64 / self.n as f64
        }
    }

    /// Offset of the `m`-th sub-segment boundary, `m ∈ 0..=k`, in a cell of size `w`.
    #[inline]
    fn frac(&self, m: usize, w: f64) -> f64 {
        if m == self.k {
            w
        } else {
            w * m as f64 / self.k as f64
        }
    }

    fn cells_containing(&self, p: Point) -> Vec<CellId> {
        let axis_cells = |v: f64| -> ArrayVec<usize, 3> {
            let mut out = ArrayVec::new();
            let scaled = v / self.workspace_size * self.n as f64;
            let i = (scaled.floor().max(0.0) as usize).min(self.n - 1);
            // a point on a grid line belongs to the cells on both sides
            if i > 0 && self.coord(i) == v {
                out.push(i - 1);
            }
            out.push(i);
            if i + 1 < self.n && self.coord(i + 1) == v {
                out.push(i + 1);
            }
            out
        };
        let xs = axis_cells(p.x);
        let ys = axis_cells(p.y);
        let mut cells = Vec::new();
        for &j in ys.as_slice() {
            for &i in xs.as_slice() {
                cells.push(j * self.n + i);
            }
        }
        cells.sort_unstable();
        cells
    }

    fn local_sub_segment(&self, side: Side, m: usize) -> AxisSegment {
        let w = self.cell_size();
        let (a, b) = (self.frac(m, w), self.frac(m + 1, w));
        match side {
            Side::Bottom => AxisSegment::new(Point::new(a, 0.0), Axis::Horizontal, b - a),
            Side::Top => AxisSegment::new(Point::new(a, w), Axis::Horizontal, b - a),
            Side::Left => AxisSegment::new(Point::new(0.0, a), Axis::Vertical, b - a),
            Side::Right => AxisSegment::new(Point::new(w, a), Axis::Vertical, b - a),
        }
    }

    fn build_template(&self) -> Vec<f64> {
        let span = 4 * self.k;
        let mut t = vec![f64::NAN; span * span];
        for sa in SIDES {
            for ma in 0..self.k {
                let a = self.local_sub_segment(sa, ma);
                for sb in SIDES {
                    if sa == sb {
                        continue;
                    }
                    for mb in 0..self.k {
                        let b = self.local_sub_segment(sb, mb);
                        t[(sa as usize * self.k + ma) * span + sb as usize * self.k + mb] =
                            min_distance(&a, &b) / self.v_max;
                    }
                }
            }
        }
        t
    }

    fn horizontal_ls(&self, row: usize, col: usize) -> LineSegmentId {
        row * self.n + col
    }

    fn vertical_ls(&self, row: usize, col: usize) -> LineSegmentId {
        self.n * (self.n + 1) + row * (self.n + 1) + col
    }

    /// Line segment on `side` of `cell`.
    fn cell_side_ls(&self, cell: CellId, side: Side) -> LineSegmentId {
        let (row, col) = (cell / self.n, cell % self.n);
        match side {
            Side::Bottom => self.horizontal_ls(row, col),
            Side::Top => self.horizontal_ls(row + 1, col),
            Side::Left => self.vertical_ls(row, col),
            Side::Right => self.vertical_ls(row, col + 1),
        }
    }

    /// Cells adjacent to a line segment, each with the side the segment forms.
    fn line_segment_cells(&self, ls: LineSegmentId) -> ArrayVec<(CellId, Side), 2> {
        let n = self.n;
        let mut out = ArrayVec::new();
        if ls < n * (n + 1) {
            let (row, col) = (ls / n, ls % n);
            if row > 0 {
                out.push(((row - 1) * n + col, Side::Top));
            }
            if row < n {
                out.push((row * n + col, Side::Bottom));
            }
        } else {
            let r = ls - n * (n + 1);
            let (row, col) = (r / (n + 1), r % (n + 1));
            if col > 0 {
                out.push((row * n + col - 1, Side::Right));
            }
            if col < n {
                out.push((row * n + col, Side::Left));
            }
        }
        out
    }

    /// Closed line segment geometry.
    pub fn line_segment(&self, ls: LineSegmentId) -> AxisSegment {
        let n = self.n;
        if ls < n * (n + 1) {
            let (row, col) = (ls / n, ls % n);
            let x0 = self.coord(col);
            AxisSegment::new(
                Point::new(x0, self.coord(row)),
                Axis::Horizontal,
                self.coord(col + 1) - x0,
            )
        } else {
            let r = ls - n * (n + 1);
            let (row, col) = (r / (n + 1), r % (n + 1));
            let y0 = self.coord(row);
            AxisSegment::new(
                Point::new(self.coord(col), y0),
                Axis::Vertical,
                self.coord(row + 1) - y0,
            )
        }
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        if v == self.start() {
            VertexKind::Start
        } else if v == self.goal() {
            VertexKind::Goal
        } else {
            assert!(v < self.start(), "vertex {v} out of range");
            VertexKind::SubSegment
        }
    }

    pub fn line_segment_of(&self, v: VertexId) -> Option<LineSegmentId> {
        (v < self.start()).then(|| v / self.k)
    }

    /// Closed sub-segment of `v` (a single point for start and goal).
    pub fn sub_segment(&self, v: VertexId) -> AxisSegment {
        match self.kind(v) {
            VertexKind::Start => AxisSegment::point(self.start),
            VertexKind::Goal => AxisSegment::point(self.goal),
            VertexKind::SubSegment => {
                let ls = self.line_segment(v / self.k);
                let m = v % self.k;
                let (a, b) = (self.frac(m, ls.length), self.frac(m + 1, ls.length));
                AxisSegment::new(ls.origin + ls.axis.direction() * a, ls.axis, b - a)
            }
        }
    }

    pub fn cells_of(&self, v: VertexId) -> Vec<CellId> {
        match self.kind(v) {
            VertexKind::Start => self.start_cells.clone(),
            VertexKind::Goal => self.goal_cells.clone(),
            VertexKind::SubSegment => self
                .line_segment_cells(v / self.k)
                .as_slice()
                .iter()
                .map(|&(c, _)| c)
                .collect(),
        }
    }

    pub fn vertex(&self, v: VertexId) -> VertexInfo {
        VertexInfo {
            kind: self.kind(v),
            sub_segment: self.sub_segment(v),
            line_segment: self.line_segment_of(v),
            cells: self.cells_of(v),
        }
    }

    /// The `4k` sub-segment vertices bounding `cell`, in template order.
    pub fn cell_vertices(&self, cell: CellId) -> Vec<VertexId> {
        SIDES
            .iter()
            .flat_map(|&side| {
                let base = self.cell_side_ls(cell, side) * self.k;
                base..base + self.k
            })
            .collect()
    }

    fn point_cost(&self, p: Point, v: VertexId) -> f64 {
        min_distance(&AxisSegment::point(p), &self.sub_segment(v)) / self.v_max
    }

    fn direct_cost(&self) -> f64 {
        self.start.dist(self.goal) / self.v_max
    }

    /// Visits every edge incident to `v` as `(neighbor, cost, cell)`.
    ///
    /// An edge appears once per cell it can traverse; only edges touching the
    /// start or goal can traverse more than one cell.
    pub fn for_each_neighbor(&self, v: VertexId, mut visit: impl FnMut(Neighbor)) {
        let k = self.k;
        let (s, d) = (self.start(), self.goal());
        if v == s || v == d {
            let (here, cells, other, other_cells) = if v == s {
                (self.start, &self.start_cells, d, &self.goal_cells)
            } else {
                (self.goal, &self.goal_cells, s, &self.start_cells)
            };
            for &cell in cells {
                for u in self.cell_vertices(cell) {
                    visit(Neighbor {
                        vertex: u,
                        cost: self.point_cost(here, u),
                        cell,
                    });
                }
                if other_cells.contains(&cell) {
                    visit(Neighbor {
                        vertex: other,
                        cost: self.direct_cost(),
                        cell,
                    });
                }
            }
            return;
        }
        let ls = v / k;
        let m = v % k;
        let span = 4 * k;
        for &(cell, side) in self.line_segment_cells(ls).as_slice() {
            let row = (side as usize * k + m) * span;
            for other in SIDES {
                if other == side {
                    continue;
                }
                let base = self.cell_side_ls(cell, other) * k;
                let tbase = row + other as usize * k;
                for mm in 0..k {
                    visit(Neighbor {
                        vertex: base + mm,
                        cost: self.template[tbase + mm],
                        cell,
                    });
                }
            }
            if self.start_cells.contains(&cell) {
                visit(Neighbor {
                    vertex: s,
                    cost: self.point_cost(self.start, v),
                    cell,
                });
            }
            if self.goal_cells.contains(&cell) {
                visit(Neighbor {
                    vertex: d,
                    cost: self.point_cost(self.goal, v),
                    cell,
                });
            }
        }
    }

    /// All edges incident to `v`, sorted by neighbor id then cell id.
    pub fn neighbors(&self, v: VertexId) -> Vec<Neighbor> {
        let mut out = Vec::new();
        self.neighbors_into(v, &mut out);
        out
    }

    pub fn neighbors_into(&self, v: VertexId, out: &mut Vec<Neighbor>) {
        out.clear();
        self.for_each_neighbor(v, |nb| out.push(nb));
        out.sort_unstable_by_key(|nb| (nb.vertex, nb.cell));
    }

    /// The cell an edge traverses (the lowest id when several qualify).
    pub fn cell_of_edge(&self, u: VertexId, v: VertexId) -> Result<CellId> {
        let mut found = None;
        self.for_each_neighbor(u, |nb| {
            if nb.vertex == v {
                found = Some(found.map_or(nb.cell, |c: CellId| c.min(nb.cell)));
            }
        });
        found.ok_or(Error::NotAnEdge { u, v })
    }

    pub fn edge_cost(&self, u: VertexId, v: VertexId) -> Result<f64> {
        let mut found = None;
        self.for_each_neighbor(u, |nb| {
            if nb.vertex == v {
                found = Some(nb.cost);
            }
        });
        found.ok_or(Error::NotAnEdge { u, v })
    }

    /// CSV dump `u,v,cost,cell` listing each undirected edge once per cell.
    pub fn edges_csv(&self) -> String {
        let mut out = String::from("u,v,cost,cell\n");
        for u in 0..self.num_vertices() {
            for nb in self.neighbors(u) {
                if u < nb.vertex {
                    let _ = writeln!(out, "{},{},{},{}", u, nb.vertex, nb.cost, nb.cell);
                }
            }
        }
        out
    }
}
