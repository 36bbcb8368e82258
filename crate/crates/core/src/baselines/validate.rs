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

use crate::coverage::moving_point_collides;
use crate::scenario::{RobotTrajectory, Scenario};

/// Collision sampling step used when callers have no better choice.
pub const DEFAULT_DT_CHECK: f64 = 0.01;

/// Endpoint tolerance for matching the start and goal.
const ENDPOINT_TOL: f64 = 1e-9;

/// Whether `traj` starts at the start at time 0, ends at the goal within the
/// horizon, respects the speed bound and avoids every closed obstacle at
/// each sampled instant.
pub fn validate_trajectory(scenario: &Scenario, traj: &RobotTrajectory, dt_check: f64) -> bool {
    let (Some(first), Some(last)) = (traj.samples.first(), traj.samples.last()) else {
        return false;
    };
    if first.t != 0.0
        || first.p.dist(scenario.start) > ENDPOINT_TOL
        || last.p.dist(scenario.goal) > ENDPOINT_TOL
        || last.t > scenario.horizon
    {
        return false;
    }
    if !traj.samples.iter().all(|s| s.t.is_finite() && scenario.contains(s.p)) {
        return false;
    }
    if !traj.respects_speed(scenario.v_max) {
        return false;
    }
    if traj.samples.len() == 1 {
        return !moving_point_collides(first.p, 0.0, first.p, 0.0, scenario, dt_check);
    }
    traj.samples
        .windows(2)
        .all(|w| !moving_point_collides(w[0].p, w[0].t, w[1].p, w[1].t, scenario, dt_check))
}
