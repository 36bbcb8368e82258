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

//! Benchmark scenes and the drivers that bracket the optimum between the
//! graph lower bound and the feasible planners.

use crate::baselines::{
    baseline_lower_bound, rrt_plan, sipp_plan, validate_trajectory, RrtParams, SippParams,
};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::LbpGraph;
use crate::reachability::{compute_reachable_intervals, default_dt};
use crate::scenario::{
    generate_random_scenario, Obstacle, RandomScenarioParams, Scenario, Shape, Trajectory,
    Waypoint,
};
use crate::search::{solve, SearchOptions, SearchResult};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

/// Tolerance of the lower-vs-upper guardrail.
pub const BOUND_TOL: f64 = 1e-9;

/// Speed of the disc in the crossing scene.
pub const EXP2_DISC_SPEED: f64 = 0.01;

/// Offset of each bar tip past the corridor's center line in the two-bar
/// scene; chosen so the static shortest path takes 37.16 s.
pub const EXP3_BAR_OVERLAP: f64 = 0.121183;

pub const EXP3_DISCS: usize = 10;
pub const EXP3_DISC_RADIUS: f64 = 0.15;
pub const EXP3_LEG_DURATION: f64 = 50.0;
pub const EXP3_MAX_DISC_SPEED: f64 = 0.015;
/// A seed for which both feasible planners succeed on the two-bar scene.
pub const EXP3_DEFAULT_SEED: u64 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// Two static bars, the corridor bends over both tips.
    Exp1,
    /// One disc sliding from the center toward the start.
    Exp2,
    /// Two staggered static bars plus seeded wandering discs.
    Exp3,
    /// Seeded wandering discs only.
    Random,
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp1" => Ok(Preset::Exp1),
            "exp2" => Ok(Preset::Exp2),
            "exp3" => Ok(Preset::Exp3),
            "random" => Ok(Preset::Random),
            other => Err(Error::invalid(
                "preset",
                format!("unknown preset `{other}` (expected exp1, exp2, exp3 or random)"),
            )),
        }
    }
}

fn corridor(id: &str, obstacles: Vec<Obstacle>) -> Scenario {
    let p = RandomScenarioParams::default();
    Scenario {
        id: Some(id.to_string()),
        workspace_size: p.workspace_size,
        horizon: p.horizon,
        v_max: p.v_max,
        start: p.start,
        goal: p.goal,
        obstacles,
    }
}

fn vertical_bar(x: f64, y0: f64, y1: f64) -> Obstacle {
    Obstacle {
        shape: Shape::Bar {
            a: Point::new(0.0, 0.0),
            b: Point::new(0.0, y1 - y0),
        },
        trajectory: Trajectory::fixed(Point::new(x, y0)),
    }
}

/// Optimal arrival time of the two-bar scene: over both bar tips.
pub fn exp1_optimum() -> f64 {
    (0.4 * 2f64.sqrt() + 0.6) / 0.03
}

/// Builds a benchmark scene. `seed` only affects `Exp3` and `Random`.
pub fn preset_scenario(preset: Preset, seed: u64) -> Result<Scenario> {
    let scenario = match preset {
        Preset::Exp1 => corridor("exp1", vec![vertical_bar(0.2, 0.0, 0.7), vertical_bar(0.8, 0.0, 0.7)]),
        Preset::Exp2 => {
            let travel = 0.5 / EXP2_DISC_SPEED;
            let mut waypoints = vec![
                Waypoint { t: 0.0, translation: Point::new(0.5, 0.5) },
                Waypoint { t: travel, translation: Point::new(0.0, 0.5) },
            ];
            if travel < 100.0 {
                waypoints.push(Waypoint { t: 100.0, translation: Point::new(0.0, 0.5) });
            }
            let disc = Obstacle {
                shape: Shape::Disc { radius: 0.25 },
                trajectory: Trajectory::new(waypoints),
            };
            corridor("exp2", vec![disc])
        }
        Preset::Exp3 => {
            let h = EXP3_BAR_OVERLAP;
            let params = RandomScenarioParams {
                leg_duration: EXP3_LEG_DURATION,
                max_obstacle_speed: EXP3_MAX_DISC_SPEED,
                ..RandomScenarioParams::default()
            };
            let discs = generate_random_scenario(seed, EXP3_DISCS, EXP3_DISC_RADIUS, &params)?;
            let mut obstacles = vec![vertical_bar(0.3, 0.0, 0.5 + h), vertical_bar(0.7, 0.5 - h, 1.0)];
            obstacles.extend(discs.obstacles);
            corridor(&format!("exp3-{seed}"), obstacles)
        }
        Preset::Random => generate_random_scenario(seed, 5, 0.1, &RandomScenarioParams::default())?,
    };
    scenario.validate()?;
    Ok(scenario)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerBoundRun {
    pub n: usize,
    pub k: usize,
    pub dt: f64,
    pub expansion_constraint: bool,
    pub result: SearchResult,
    #[serde(skip)]
    pub interval_time: Duration,
}

impl LowerBoundRun {
    pub fn cost(&self) -> Option<f64> {
        self.result.cost
    }
}

/// Builds the graph and its reachable intervals and runs the search. `dt`
/// defaults to [`default_dt`].
pub fn lower_bound(
    scenario: &Scenario,
    n: usize,
    k: usize,
    dt: Option<f64>,
    opts: &SearchOptions,
) -> Result<LowerBoundRun> {
    let g = LbpGraph::build(scenario, n, k)?;
    let dt = dt.unwrap_or_else(|| default_dt(scenario, g.cell_size()));
    let started = Instant::now();
    let table = compute_reachable_intervals(&g, scenario, dt)?;
    let interval_time = started.elapsed();
    Ok(LowerBoundRun {
        n,
        k,
        dt,
        expansion_constraint: opts.expansion_constraint,
        result: solve(&g, &table, opts),
        interval_time,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub k: usize,
    /// `None` when the search found no path or the run failed.
    pub cost: Option<f64>,
    pub expansions: usize,
    pub wall_ms: f64,
}

/// Lower bounds over every `(n, k)` pair, sorted and deduplicated. Cells run
/// concurrently; a failing cell becomes a `no_path` row.
pub fn sweep(
    scenario: &Scenario,
    ns: &[usize],
    ks: &[usize],
    dt: Option<f64>,
    opts: &SearchOptions,
) -> Vec<SweepRow> {
    let mut cells: Vec<(usize, usize)> = ns
        .iter()
        .flat_map(|&n| ks.iter().map(move |&k| (n, k)))
        .collect();
    cells.sort_unstable();
    cells.dedup();
    cells
        .par_iter()
        .map(|&(n, k)| {
            let started = Instant::now();
            let run = lower_bound(scenario, n, k, dt, opts);
            let wall_ms = started.elapsed().as_secs_f64() * 1e3;
            match run {
                Ok(run) => SweepRow {
                    n,
                    k,
                    cost: run.cost(),
                    expansions: run.result.stats.expansions,
                    wall_ms,
                },
                Err(_) => SweepRow {
                    n,
                    k,
                    cost: None,
                    expansions: 0,
                    wall_ms,
                },
            }
        })
        .collect()
}

/// CSV `n,k,cost,expansions,wall_ms`; unsolved cells print `no_path`.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("n,k,cost,expansions,wall_ms\n");
    for r in rows {
        let cost = r.cost.map_or_else(|| "no_path".to_string(), |c| c.to_string());
        let _ = writeln!(out, "{},{},{},{},{:.3}", r.n, r.k, cost, r.expansions, r.wall_ms);
    }
    out
}

/// Suboptimality estimate `(upper - lower) / lower`, defined only when
/// `upper >= lower > 0`.
pub fn gap(upper: f64, lower: f64) -> Option<f64> {
    (lower > 0.0 && upper >= lower && upper.is_finite()).then(|| (upper - lower) / lower)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportConfig {
    pub n: usize,
    pub k: usize,
    pub dt: Option<f64>,
    pub sipp: SippParams,
    pub rrt: RrtParams,
    pub rrt_seeds: Vec<u64>,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self {
            n: 20,
            k: 25,
            dt: None,
            sipp: SippParams::default(),
            rrt: RrtParams::default(),
            rrt_seeds: vec![0, 1, 2],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerEntry {
    pub source: String,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub dt: Option<f64>,
    pub expansion_constraint: Option<bool>,
    pub cost: Option<f64>,
    pub expansions: Option<usize>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UpperEntry {
    pub source: String,
    pub seed: Option<u64>,
    pub cost: Option<f64>,
    pub valid: bool,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapEntry {
    pub upper: String,
    pub lower: String,
    pub gap: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub scenario_id: Option<String>,
    pub lower_bounds: Vec<LowerEntry>,
    pub upper_bounds: Vec<UpperEntry>,
    pub gaps: Vec<GapEntry>,
    pub best_lower: Option<f64>,
    /// `gap(sipp, lb_astar)` with the constrained search.
    pub headline_gap_lb_astar: Option<f64>,
    pub headline_gap_baseline: Option<f64>,
    /// Planner failures; the report is still produced.
    pub failures: Vec<String>,
}

impl BoundReport {
    pub fn lower(&self, source: &str) -> Option<f64> {
        self.lower_bounds.iter().find(|l| l.source == source)?.cost
    }

    pub fn upper(&self, source: &str) -> Option<f64> {
        self.upper_bounds.iter().find(|u| u.source == source && u.valid)?.cost
    }

    pub fn gap(&self, upper: &str, lower: &str) -> Option<f64> {
        self.gaps
            .iter()
            .find(|g| g.upper == upper && g.lower == lower)?
            .gap
    }

    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let fmt = |c: Option<f64>| c.map_or_else(|| "none".to_string(), |c| format!("{c:.4}"));
        let mut out = String::new();
        let _ = writeln!(out, "scenario: {}", self.scenario_id.as_deref().unwrap_or("-"));
        for l in &self.lower_bounds {
            let _ = writeln!(out, "lower {:<14} {}", l.source, fmt(l.cost));
        }
        for u in &self.upper_bounds {
            let _ = writeln!(out, "upper {:<14} {}{}", u.source, fmt(u.cost), if u.valid { "" } else { " (invalid)" });
        }
        for g in &self.gaps {
            let pct = g.gap.map_or_else(|| "n/a".to_string(), |x| format!("{:.2}%", 100.0 * x));
            let _ = writeln!(out, "gap   {} vs {}: {}", g.upper, g.lower, pct);
        }
        for f in &self.failures {
            let _ = writeln!(out, "failure: {f}");
        }
        out
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Runs every bound and checks that no lower bound exceeds a validated
/// upper bound, returning [`Error::BoundViolation`] otherwise.
pub fn report(scenario: &Scenario, cfg: &ReportConfig) -> Result<BoundReport> {
    let mut failures = Vec::new();
    let mut lower = Vec::new();

    let started = Instant::now();
    let baseline = match baseline_lower_bound(scenario) {
        Ok(b) => Some(b.cost),
        Err(e) => {
            failures.push(format!("baseline: {e}"));
            None
        }
    };
    lower.push(LowerEntry {
        source: "baseline".into(),
        n: None,
        k: None,
        dt: None,
        expansion_constraint: None,
        cost: baseline,
        expansions: None,
        wall_ms: ms(started.elapsed()),
    });

    for constraint in [true, false] {
        let source = if constraint { "lb_astar" } else { "lb_astar_off" };
        let started = Instant::now();
        let run = lower_bound(scenario, cfg.n, cfg.k, cfg.dt, &SearchOptions::with_constraint(constraint));
        let wall_ms = ms(started.elapsed());
        match run {
            Ok(run) => lower.push(LowerEntry {
                source: source.into(),
                n: Some(cfg.n),
                k: Some(cfg.k),
                dt: Some(run.dt),
                expansion_constraint: Some(constraint),
                // an unsolved relaxation certifies infeasibility
                cost: Some(run.cost().unwrap_or(f64::INFINITY)),
                expansions: Some(run.result.stats.expansions),
                wall_ms,
            }),
            Err(e) => failures.push(format!("{source}: {e}")),
        }
    }

    let mut upper = Vec::new();
    let started = Instant::now();
    match sipp_plan(scenario, &cfg.sipp) {
        Ok(plan) => {
            let valid = plan
                .as_ref()
                .is_some_and(|p| validate_trajectory(scenario, &p.trajectory, cfg.sipp.dt_check));
            if plan.is_none() {
                failures.push("sipp: no plan".into());
            }
            upper.push(UpperEntry {
                source: "sipp".into(),
                seed: None,
                cost: plan.map(|p| p.cost()),
                valid,
                wall_ms: ms(started.elapsed()),
            });
        }
        Err(e) => failures.push(format!("sipp: {e}")),
    }
    for &seed in &cfg.rrt_seeds {
        let started = Instant::now();
        let source = format!("rrt_{seed}");
        match rrt_plan(scenario, seed, &cfg.rrt) {
            Ok(plan) => {
                let valid = plan
                    .as_ref()
                    .is_some_and(|p| validate_trajectory(scenario, &p.trajectory, cfg.rrt.dt_check));
                if plan.is_none() {
                    failures.push(format!("{source}: no plan"));
                }
                upper.push(UpperEntry {
                    source,
                    seed: Some(seed),
                    cost: plan.map(|p| p.cost()),
                    valid,
                    wall_ms: ms(started.elapsed()),
                });
            }
            Err(e) => failures.push(format!("{source}: {e}")),
        }
    }

    for l in &lower {
        for u in upper.iter().filter(|u| u.valid) {
            if let (Some(lc), Some(uc)) = (l.cost, u.cost) {
                if lc > uc + BOUND_TOL {
                    return Err(Error::BoundViolation {
                        lower: lc,
                        upper: uc,
                        source_pair: format!("{} vs {}", l.source, u.source),
                    });
                }
            }
        }
    }

    let mut gaps = Vec::new();
    for u in upper.iter().filter(|u| u.valid) {
        for l in &lower {
            gaps.push(GapEntry {
                upper: u.source.clone(),
                lower: l.source.clone(),
                gap: match (u.cost, l.cost) {
                    (Some(uc), Some(lc)) => gap(uc, lc),
                    _ => None,
                },
            });
        }
    }
    let best_lower = lower
        .iter()
        .filter_map(|l| l.cost)
        .fold(None, |acc: Option<f64>, c| Some(acc.map_or(c, |a| a.max(c))));
    let mut out = BoundReport {
        scenario_id: scenario.id.clone(),
        lower_bounds: lower,
        upper_bounds: upper,
        gaps,
        best_lower,
        headline_gap_lb_astar: None,
        headline_gap_baseline: None,
        failures,
    };
    out.headline_gap_lb_astar = out.gap("sipp", "lb_astar");
    out.headline_gap_baseline = out.gap("sipp", "baseline");
    Ok(out)
}
