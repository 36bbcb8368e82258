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

//! Certified lower bounds for minimum-time point-robot planning among moving
//! obstacles, plus the feasible planners used to bracket them.

pub mod baselines;
pub mod coverage;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod harness;
pub mod reachability;
pub mod scenario;
pub mod search;

pub use error::{Error, Result};
pub use geometry::{Axis, AxisSegment, Point};
pub use harness::{preset_scenario, Preset};
pub use graph::{LbpGraph, Neighbor, VertexId};
pub use reachability::{compute_reachable_intervals, default_dt, Interval, IntervalTable};
pub use scenario::{load_scenario, Obstacle, RobotTrajectory, Scenario, Shape, Trajectory, Waypoint};
pub use search::{solve, SearchOptions, SearchResult, SearchStatus};
