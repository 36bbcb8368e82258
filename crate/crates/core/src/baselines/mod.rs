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

//! Comparison planners: a static-obstacle lower bound and two feasible
//! planners whose trajectories give upper bounds.

mod rrt;
mod sipp;
mod validate;
mod visibility;

pub use rrt::{rrt_plan, RrtParams, TreePlan};
pub use sipp::{sipp_plan, GridPlan, SippParams};
pub use validate::{validate_trajectory, DEFAULT_DT_CHECK};
pub use visibility::{baseline_lower_bound, BaselineBound, VisibilityGraph, DISC_SIDES};
