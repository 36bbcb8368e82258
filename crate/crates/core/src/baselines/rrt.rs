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

//! Space-time rapidly-exploring random tree. Motions run at full speed;
//! occasional pure waits let the tree let obstacles pass.

use super::validate::validate_trajectory;
use crate::coverage::moving_point_collides;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::scenario::{RobotTrajectory, Scenario};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RrtParams {
    /// Longest spatial extension.
    pub step: f64,
    pub max_iters: usize,
    /// Probability of sampling the goal instead of a uniform point.
    pub goal_bias: f64,
    /// Probability of extending by a pure wait of `step / v_max`.
    pub wait_probability: f64,
    pub dt_check: f64,
}

impl Default for RrtParams {
    fn default() -> Self {
        Self {
            step: 0.05,
            max_iters: 20_000,
            goal_bias: 0.05,
            wait_probability: 0.1,
            dt_check: super::DEFAULT_DT_CHECK,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreePlan {
    pub trajectory: RobotTrajectory,
    pub iterations: usize,
    pub nodes: usize,
}

impl TreePlan {
    pub fn cost(&self) -> f64 {
        self.trajectory.total_cost()
    }
}

#[derive(Clone, Copy, Debug)]
struct Node {
    p: Point,
    t: f64,
    parent: Option<usize>,
}

// Linear scan; trees stay under max_iters nodes so this dominates only at
// the largest budgets.
// TODO: switch to a k-d tree once max_iters above 1e5 is needed.
fn nearest(nodes: &[Node], q: Point) -> usize {
    let mut best = (f64::INFINITY, 0);
    for (i, node) in nodes.iter().enumerate() {
        let d = node.p.dist(q);
        if d < best.0 {
            best = (d, i);
        }
    }
    best.1
}

fn trace(nodes: &[Node], mut i: usize, goal: Point, t_goal: f64) -> RobotTrajectory {
    let mut rev = vec![(t_goal, goal)];
    loop {
        rev.push((nodes[i].t, nodes[i].p));
        match nodes[i].parent {
            Some(p) => i = p,
            None => break,
        }
    }
    let mut traj = RobotTrajectory::default();
    for (t, p) in rev.into_iter().rev() {
        traj.push(t, p);
    }
    traj
}

/// Grows a tree from the start at time 0. Identical seeds give identical
/// results. `Ok(None)` when the iteration budget runs out.
pub fn rrt_plan(scenario: &Scenario, seed: u64, params: &RrtParams) -> Result<Option<TreePlan>> {
    let valid = params.step > 0.0
        && params.max_iters > 0
        && (0.0..=1.0).contains(&params.goal_bias)
        && (0.0..=1.0).contains(&params.wait_probability)
        && params.dt_check > 0.0;
    if !valid {
        return Err(Error::invalid("params", "step, iterations and check step must be positive; probabilities in [0, 1]"));
    }
    let (s, d, v, l) = (scenario.start, scenario.goal, scenario.v_max, scenario.workspace_size);
    let check = |p1: Point, t1: f64, p2: Point, t2: f64| {
        !moving_point_collides(p1, t1, p2, t2, scenario, params.dt_check)
    };
    if !check(s, 0.0, s, 0.0) {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = vec![Node { p: s, t: 0.0, parent: None }];
    let wait = params.step / v;

    for iter in 1..=params.max_iters {
        let target = if rng.gen_bool(params.goal_bias) {
            d
        } else {
            Point::new(rng.gen_range(0.0..=l), rng.gen_range(0.0..=l))
        };
        let from = nearest(&nodes, target);
        let base = nodes[from];
        let (q, t) = if rng.gen_bool(params.wait_probability) {
            (base.p, base.t + wait)
        } else {
            let dist = base.p.dist(target);
            if dist <= 0.0 {
                continue;
            }
            let q = base.p.lerp(target, (params.step / dist).min(1.0));
            (q, base.t + base.p.dist(q) / v)
        };
        if t > scenario.horizon || !check(base.p, base.t, q, t) {
            continue;
        }
        nodes.push(Node { p: q, t, parent: Some(from) });
        let idx = nodes.len() - 1;
        let gap = q.dist(d);
        if gap <= params.step {
            let t_goal = t + gap / v;
            if t_goal <= scenario.horizon && (gap == 0.0 || check(q, t, d, t_goal)) {
                let mut trajectory = trace(&nodes, idx, d, t_goal);
                if gap == 0.0 {
                    trajectory.samples.pop();
                }
                if validate_trajectory(scenario, &trajectory, params.dt_check) {
                    return Ok(Some(TreePlan {
                        trajectory,
                        iterations: iter,
                        nodes: nodes.len(),
                    }));
                }
            }
        }
    }
    Ok(None)
}
