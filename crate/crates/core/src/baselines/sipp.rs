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

//! Safe-interval planning on an 8-connected grid of cell centers.
//!
//! A center is treated as safe while every obstacle stays farther than half
//! a cell diagonal from it. During a move the robot is within that distance
//! of the cell it leaves for the first half of the move and of the cell it
//! enters for the second half, so a move is certified when the source is
//! safe until the midpoint and the target is safe from the midpoint on.

use super::validate::validate_trajectory;
use crate::coverage::moving_point_collides;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::reachability::{compute_safe_intervals_grid, SafeIntervalGrid};
use crate::scenario::{RobotTrajectory, Scenario};
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SippParams {
    pub grid_n: usize,
    /// Sampling step of the safe-interval construction.
    pub dt: f64,
    /// Sampling step of the explicit start and goal leg checks.
    pub dt_check: f64,
}

impl Default for SippParams {
    fn default() -> Self {
        Self {
            grid_n: 40,
            dt: 0.05,
            dt_check: super::DEFAULT_DT_CHECK,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridPlan {
    pub trajectory: RobotTrajectory,
    /// Grid cells visited, in order.
    pub cells: Vec<usize>,
    pub expansions: usize,
}

impl GridPlan {
    pub fn cost(&self) -> f64 {
        self.trajectory.total_cost()
    }
}

type State = (usize, usize);

#[derive(Clone, Copy, Debug)]
struct Entry {
    f: f64,
    g: f64,
    state: State,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then(self.g.total_cmp(&other.g))
            .then(other.state.cmp(&self.state))
    }
}

/// How a state was first reached: predecessor and departure time from it.
#[derive(Clone, Copy, Debug)]
struct Link {
    from: State,
    depart: f64,
}

fn octile(grid_n: usize, a: usize, b: usize) -> f64 {
    let (ar, ac) = ((a / grid_n) as f64, (a % grid_n) as f64);
    let (br, bc) = ((b / grid_n) as f64, (b % grid_n) as f64);
    let (dx, dy) = ((ac - bc).abs(), (ar - br).abs());
    dx.max(dy) + (2f64.sqrt() - 1.0) * dx.min(dy)
}

/// Plans a feasible trajectory, or `Ok(None)` when none is found within the
/// horizon. Returned trajectories always pass [`validate_trajectory`].
pub fn sipp_plan(scenario: &Scenario, params: &SippParams) -> Result<Option<GridPlan>> {
    let n = params.grid_n;
    if n < 2 {
        return Err(Error::invalid("grid_n", "grid needs at least 2 cells per side"));
    }
    let w = scenario.workspace_size / n as f64;
    let inflation = w * 2f64.sqrt() / 2.0;
    let grid = compute_safe_intervals_grid(n, scenario, params.dt, inflation)?;
    let v = scenario.v_max;
    let (s, d) = (scenario.start, scenario.goal);
    let start_cell = grid.cell_at(s);
    let goal_cell = grid.cell_at(d);
    let start_leg = s.dist(grid.center(start_cell)) / v;
    let goal_leg = d.dist(grid.center(goal_cell)) / v;

    let Some(first) = grid.intervals(start_cell).first().copied() else {
        return Ok(None);
    };
    if first.lo > 0.0
        || first.hi < start_leg
        || moving_point_collides(s, 0.0, grid.center(start_cell), start_leg, scenario, params.dt_check)
    {
        return Ok(None);
    }

    let h = |cell: usize| octile(n, cell, goal_cell) * w / v + goal_leg;
    let mut best: HashMap<State, f64> = HashMap::new();
    let mut links: HashMap<State, Link> = HashMap::new();
    let mut open = BinaryHeap::new();
    let root = (start_cell, 0);
    best.insert(root, start_leg);
    open.push(Entry {
        f: start_leg + h(start_cell),
        g: start_leg,
        state: root,
    });
    let mut expansions = 0;

    while let Some(Entry { g: t, state, .. }) = open.pop() {
        if t > best[&state] {
            continue;
        }
        let (cell, i) = state;
        let here = grid.intervals(cell)[i];
        if cell == goal_cell && t + goal_leg <= here.hi.min(scenario.horizon) {
            let center = grid.center(cell);
            if !moving_point_collides(center, t, d, t + goal_leg, scenario, params.dt_check) {
                let plan = assemble(scenario, &grid, &links, state, t, start_leg, goal_leg, expansions);
                if validate_trajectory(scenario, &plan.trajectory, params.dt_check) {
                    return Ok(Some(plan));
                }
            }
        }
        expansions += 1;
        let (row, col) = ((cell / n) as isize, (cell % n) as isize);
        for dr in -1isize..=1 {
            for dc in -1isize..=1 {
                let (r, c) = (row + dr, col + dc);
                if (dr, dc) == (0, 0) || r < 0 || c < 0 || r >= n as isize || c >= n as isize {
                    continue;
                }
                let next = r as usize * n + c as usize;
                let m = if dr != 0 && dc != 0 { 2f64.sqrt() * w / v } else { w / v };
                for (j, iv) in grid.intervals(next).iter().enumerate() {
                    let depart = t.max(iv.lo - 0.5 * m);
                    if depart + 0.5 * m > here.hi {
                        break;
                    }
                    let arrival = depart + m;
                    if arrival > iv.hi || arrival > scenario.horizon {
                        continue;
                    }
                    let key = (next, j);
                    if arrival < best.get(&key).copied().unwrap_or(f64::INFINITY) {
                        best.insert(key, arrival);
                        links.insert(key, Link { from: state, depart });
                        open.push(Entry {
                            f: arrival + h(next),
                            g: arrival,
                            state: key,
                        });
                    }
                }
            }
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    scenario: &Scenario,
    grid: &SafeIntervalGrid,
    links: &HashMap<State, Link>,
    last: State,
    last_arrival: f64,
    start_leg: f64,
    goal_leg: f64,
    expansions: usize,
) -> GridPlan {
    let mut chain = Vec::new();
    let mut cur = last;
    while let Some(link) = links.get(&cur) {
        chain.push((cur, Some(link.depart)));
        cur = link.from;
    }
    chain.push((cur, None));
    chain.reverse();
    // chain[i] = (state, departure time from the previous state)
    let mut traj = RobotTrajectory::default();
    traj.push(0.0, scenario.start);
    let mut at = start_leg;
    let first_center: Point = grid.center(chain[0].0 .0);
    traj.push(at, first_center);
    let mut cells = vec![chain[0].0 .0];
    for pair in chain.windows(2) {
        let (from, _) = pair[0];
        let (to, depart) = pair[1];
        let depart = depart.expect("every non-root state has a link");
        if depart > at {
            traj.push(depart, grid.center(from.0));
        }
        let w = grid.cell_size;
        let diagonal = from.0 % grid.grid_n != to.0 % grid.grid_n && from.0 / grid.grid_n != to.0 / grid.grid_n;
        let m = if diagonal { 2f64.sqrt() * w } else { w } / scenario.v_max;
        at = depart + m;
        traj.push(at, grid.center(to.0));
        cells.push(to.0);
    }
    debug_assert!((at - last_arrival).abs() < 1e-9);
    traj.push(last_arrival + goal_leg, scenario.goal);
    GridPlan {
        trajectory: traj,
        cells,
        expansions,
    }
}
