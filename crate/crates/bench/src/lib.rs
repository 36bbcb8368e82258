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

//! Shared fixtures for the criterion benches.

use lbplan_core::{default_dt, compute_reachable_intervals, preset_scenario, IntervalTable, LbpGraph, Preset, Scenario};

/// Scenes the benches run on, with a short label each.
pub fn scenes() -> Vec<(&'static str, Scenario)> {
    [("exp1", Preset::Exp1), ("exp2", Preset::Exp2), ("exp3", Preset::Exp3)]
        .into_iter()
        .map(|(name, p)| (name, preset_scenario(p, 3).expect("preset builds")))
        .collect()
}

/// Graph plus interval table for one (n, k), built with the default slab width.
pub fn prepared(scenario: &Scenario, n: usize, k: usize) -> (LbpGraph, IntervalTable) {
    let graph = LbpGraph::build(scenario, n, k).expect("graph builds");
    let dt = default_dt(scenario, graph.cell_size());
    let table = compute_reachable_intervals(&graph, scenario, dt).expect("intervals build");
    (graph, table)
}
