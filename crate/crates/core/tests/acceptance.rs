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

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod support;

use lbplan_core::baselines::{
    baseline_lower_bound, rrt_plan, sipp_plan, validate_trajectory, RrtParams, SippParams,
};
use lbplan_core::coverage::segment_covered;
use lbplan_core::graph::LbpGraph;
use lbplan_core::harness::{
    exp1_optimum, gap, lower_bound, preset_scenario, report, ReportConfig, Preset,
    EXP3_BAR_OVERLAP, EXP3_DEFAULT_SEED,
};
use lbplan_core::reachability::{default_dt, first_interval_reaching, Interval, IntervalTable};
use lbplan_core::scenario::Scenario;
use lbplan_core::search::{earliest_reach, reconstruct, solve, solve_with_state, SearchOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;
use support::*;

/// Tolerance for the exact-ratio criterion.
const RATIO_TOL: f64 = 1e-6;
/// Tolerance for every lower-vs-upper and monotonicity comparison.
const BOUND_TOL: f64 = 1e-9;
/// Tolerance for comparing search results with the exhaustive oracle.
const ORACLE_TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn lb(s: &Scenario, n: usize, k: usize, dt: Option<f64>, on: bool) -> f64 {
    lower_bound(s, n, k, dt, &SearchOptions::with_constraint(on))
        .expect("valid graph parameters")
        .cost()
        .unwrap_or(f64::INFINITY)
}

fn exp1_exact_ratio() -> Outcome {
    let s = preset_scenario(Preset::Exp1, 0).unwrap();
    let c_star = exp1_optimum();
    let mut worst = 0.0f64;
    let mut constrained = Vec::new();
    for k in [10, 20, 30, 40, 50] {
        let expected = (k as f64 - 1.0) / k as f64;
        let ratio = lb(&s, 10, k, None, false) / c_star;
        worst = worst.max((ratio - expected).abs());
        constrained.push(format!("{:.6}", lb(&s, 10, k, None, true) / c_star));
    }
    outcome(
        worst <= RATIO_TOL,
        format!(
            "max |ratio - (k-1)/k| = {worst:.2e} (unconstrained); constrained ratios {}",
            constrained.join(" ")
        ),
    )
}

fn graph_size_identity() -> Outcome {
    let s = corridor(vec![]);
    let mut failures = Vec::new();
    let mut max_ratio = 0.0f64;
    for n in 1..=20usize {
        for k in 1..=10usize {
            let g = LbpGraph::build(&s, n, k).unwrap();
            // count distinct line segments from cell sides
            let mut sides = std::collections::BTreeSet::new();
            for row in 0..n {
                for col in 0..n {
                    sides.insert(('h', row, col));
                    sides.insert(('h', row + 1, col));
                    sides.insert(('v', row, col));
                    sides.insert(('v', row, col + 1));
                }
            }
            let counted = sides.len() * k + 2;
            if g.num_vertices() != 2 * k * (n * n + n) + 2 || g.num_vertices() != counted {
                failures.push(format!("|V| at n={n} k={k}"));
            }
            for v in 0..g.start() {
                let moves = g.neighbors(v).iter().filter(|nb| nb.vertex < g.start()).count();
                max_ratio = max_ratio.max(moves as f64 / k as f64);
                if moves > 6 * k {
                    failures.push(format!("degree {moves} > 6k at n={n} k={k} v={v}"));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{} failures; max move degree / k = {max_ratio}", failures.len()),
    )
}

struct Upper {
    source: String,
    cost: f64,
}

fn validated_uppers(s: &Scenario) -> Vec<Upper> {
    let mut out = Vec::new();
    let sipp = SippParams::default();
    if let Some(p) = sipp_plan(s, &sipp).unwrap() {
        if validate_trajectory(s, &p.trajectory, sipp.dt_check) {
            out.push(Upper {
                source: "sipp".into(),
                cost: p.cost(),
            });
        }
    }
    let rrt = RrtParams::default();
    for seed in [0, 1] {
        if let Some(p) = rrt_plan(s, seed, &rrt).unwrap() {
            if validate_trajectory(s, &p.trajectory, rrt.dt_check) {
                out.push(Upper {
                    source: format!("rrt{seed}"),
                    cost: p.cost(),
                });
            }
        }
    }
    out
}

fn lower_bound_sandwich() -> Outcome {
    let mut scenes: Vec<Scenario> = (0..20).map(|seed| preset_scenario(Preset::Random, seed).unwrap()).collect();
    scenes.push(preset_scenario(Preset::Exp1, 0).unwrap());
    scenes.push(preset_scenario(Preset::Exp2, 0).unwrap());
    scenes.push(preset_scenario(Preset::Exp3, EXP3_DEFAULT_SEED).unwrap());
    let mut comparisons = 0;
    let mut violations = Vec::new();
    let mut bracketed = 0;
    for s in &scenes {
        let uppers = validated_uppers(s);
        if !uppers.is_empty() {
            bracketed += 1;
        }
        let mut lowers = Vec::new();
        for (n, k) in [(5, 5), (10, 10), (20, 5)] {
            let dt = default_dt(s, 1.0 / n as f64);
            for dt in [dt, 2.0 * dt] {
                for on in [true, false] {
                    lowers.push((format!("n={n} k={k} dt={dt} on={on}"), lb(s, n, k, Some(dt), on)));
                }
            }
        }
        for (name, l) in &lowers {
            for u in &uppers {
                comparisons += 1;
                if *l > u.cost + BOUND_TOL {
                    violations.push(format!("{:?} {name} = {l} > {} = {}", s.id, u.source, u.cost));
                }
            }
        }
    }
    let detail = format!(
        "{} scenes ({bracketed} with validated plans), {comparisons} comparisons, {} violations{}",
        scenes.len(),
        violations.len(),
        violations.first().map_or(String::new(), |v| format!("; first: {v}"))
    );
    outcome(violations.is_empty() && bracketed > 0, detail)
}

fn graph_optimality_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut mismatches = Vec::new();
    let mut solved = 0;
    let instances = 60;
    for i in 0..instances {
        let (s, g, table) = random_small_instance(&mut rng);
        let adj = brute_force_adjacency(&g, s.workspace_size);
        for (v, expected) in adj.iter().enumerate() {
            let mut ids: Vec<_> = g.neighbors(v).iter().map(|nb| nb.vertex).collect();
            ids.dedup();
            if ids != expected.iter().copied().collect::<Vec<_>>() {
                mismatches.push(format!("instance {i}: adjacency of {v}"));
            }
        }
        let oracle = exhaustive_earliest_arrival(&g, &adj, &table, s.horizon);
        let found = solve(&g, &table, &SearchOptions::with_constraint(false)).cost;
        let agree = match (oracle, found) {
            (None, None) => true,
            (Some(a), Some(b)) => (a - b).abs() <= ORACLE_TOL,
            _ => false,
        };
        solved += usize::from(found.is_some());
        if !agree {
            mismatches.push(format!("instance {i}: oracle {oracle:?} vs search {found:?}"));
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "{instances} instances ({solved} solvable), {} mismatches{}",
            mismatches.len(),
            mismatches.first().map_or(String::new(), |m| format!("; first: {m}"))
        ),
    )
}

fn refinement_monotonicity() -> Outcome {
    let mut scenes = vec![
        preset_scenario(Preset::Exp1, 0).unwrap(),
        preset_scenario(Preset::Exp2, 0).unwrap(),
        preset_scenario(Preset::Exp3, EXP3_DEFAULT_SEED).unwrap(),
    ];
    scenes.extend((0..3).map(|seed| preset_scenario(Preset::Random, seed).unwrap()));
    let mut violations = Vec::new();
    let mut checks = 0;
    for s in &scenes {
        for on in [true, false] {
            for (n, k) in [(5, 2), (5, 5), (10, 3)] {
                let chain = [lb(s, n, k, None, on), lb(s, n, 2 * k, None, on), lb(s, n, 4 * k, None, on)];
                checks += 2;
                if chain[0] > chain[1] + BOUND_TOL || chain[1] > chain[2] + BOUND_TOL {
                    violations.push(format!("{:?} on={on} n={n} k={k}: {chain:?}", s.id));
                }
            }
            let (n, k) = (10, 5);
            let dt = default_dt(s, 1.0 / n as f64);
            let chain = [lb(s, n, k, Some(dt), on), lb(s, n, k, Some(2.0 * dt), on), lb(s, n, k, Some(4.0 * dt), on)];
            checks += 2;
            if chain[1] > chain[0] + BOUND_TOL || chain[2] > chain[1] + BOUND_TOL {
                violations.push(format!("{:?} on={on} dt chain {chain:?}", s.id));
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "{checks} checks, {} violations{}",
            violations.len(),
            violations.first().map_or(String::new(), |v| format!("; first: {v}"))
        ),
    )
}

fn earliest_reach_suite() -> Outcome {
    let s = corridor(vec![]);
    let g = LbpGraph::build(&s, 1, 1).unwrap();
    let t_end = s.horizon;
    let mut lists = vec![vec![Interval::new(0.0, t_end)]; g.num_line_segments() + 2];
    lists[1] = vec![Interval::new(0.0, 2.0), Interval::new(3.0, t_end)];
    lists[2] = vec![Interval::new(0.0, 2.0)];
    let table = IntervalTable::from_lists(&g, t_end, lists).unwrap();
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    check("t_ready 1.5 -> (0, 1.5)", first_interval_reaching(&table, 1, 1.5) == Some((0, 1.5)));
    check("t_ready 2.5 -> (1, 3)", first_interval_reaching(&table, 1, 2.5) == Some((1, 3.0)));
    check("past last interval", first_interval_reaching(&table, 2, 2.5).is_none());
    check("unconstrained 5 + 1", earliest_reach(0, 5.0, 1.0, &table) == Some(6.0));
    check("wait then move", earliest_reach(1, 2.0, 0.5, &table) == Some(3.0));
    check("too late", earliest_reach(2, 2.0, 0.5, &table).is_none());

    // the waiting case on a real search: the goal opens at 40
    let mut lists = vec![vec![Interval::new(0.0, t_end)]; g.num_line_segments() + 2];
    lists[g.num_line_segments() + 1] = vec![Interval::new(40.0, t_end)];
    let table = IntervalTable::from_lists(&g, t_end, lists).unwrap();
    let (result, state) = solve_with_state(&g, &table, &SearchOptions::default());
    let path = reconstruct(&g, &state, g.goal());
    check("search waits for the goal", result.cost == Some(40.0));
    let waited: f64 = path.iter().map(|p| p.wait).sum();
    let moved: f64 = path
        .windows(2)
        .map(|w| g.edge_cost(w[0].vertex, w[1].vertex).unwrap())
        .sum();
    check("cost = waits + moves", (waited + moved - 40.0).abs() < 1e-12);
    outcome(failures.is_empty(), format!("{} failing cases {failures:?}", failures.len()))
}

fn moving_disc_scene() -> Outcome {
    let s = preset_scenario(Preset::Exp2, 0).unwrap();
    let straight = 1.0 / 0.03;
    let base = baseline_lower_bound(&s).unwrap().cost;
    let a = (base - straight).abs() < 1e-12;
    let on = lb(&s, 20, 25, None, true);
    let off = lb(&s, 20, 25, None, false);
    let b = on > straight;
    let ns = [5, 10, 20];
    let ks = [5, 10, 25];
    let grid: Vec<Vec<f64>> = ns.iter().map(|&n| ks.iter().map(|&k| lb(&s, n, k, None, true)).collect()).collect();
    let c = (0..ns.len()).all(|i| (1..ks.len()).all(|j| grid[i][j - 1] <= grid[i][j] + BOUND_TOL))
        && (0..ks.len()).all(|j| (1..ns.len()).all(|i| grid[i - 1][j] <= grid[i][j] + BOUND_TOL));
    let d = on >= off - BOUND_TOL;
    let sipp = sipp_plan(&s, &SippParams::default()).unwrap();
    let sipp_cost = sipp
        .filter(|p| validate_trajectory(&s, &p.trajectory, SippParams::default().dt_check))
        .map(|p| p.cost());
    let (gap_lb, gap_base) = match sipp_cost {
        Some(cost) => (gap(cost, on), gap(cost, base)),
        None => (None, None),
    };
    let e = matches!((gap_lb, gap_base), (Some(x), Some(y)) if x < y);
    let rrt_costs: Vec<f64> = (0..20)
        .filter_map(|seed| rrt_plan(&s, seed, &RrtParams::default()).unwrap())
        .filter(|p| validate_trajectory(&s, &p.trajectory, RrtParams::default().dt_check))
        .map(|p| p.cost())
        .collect();
    let above = sipp_cost.map_or(0, |c| rrt_costs.iter().filter(|&&r| r >= c).count());
    let fmt_grid = grid
        .iter()
        .map(|row| row.iter().map(|c| format!("{c:.2}")).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(" / ");
    outcome(
        a && b && c && d && e,
        format!(
            "(a) baseline {base:.4} {a}; (b) lb {on:.4} {b}; (c) grid [{fmt_grid}] {c}; (d) on {on:.4} >= off {off:.4} {d}; \
             (e) sipp {sipp_cost:?} gap {gap_lb:?} < {gap_base:?} {e}; rrt >= sipp on {above}/{} seeds",
            rrt_costs.len()
        ),
    )
}

fn bars_and_discs_scene() -> Outcome {
    let s = preset_scenario(Preset::Exp3, EXP3_DEFAULT_SEED).unwrap();
    let h = EXP3_BAR_OVERLAP;
    let over_tips = (2.0 * (0.09 + h * h).sqrt() + (0.16 + 4.0 * h * h).sqrt()) / s.v_max;
    let base = baseline_lower_bound(&s).unwrap().cost;
    let base_ok = (base - over_tips).abs() < 1e-9;
    let mut rows = Vec::new();
    for (n, k) in [(5, 5), (10, 10), (20, 25)] {
        rows.push((n, k, lb(&s, n, k, None, true)));
    }
    let largest = rows.last().unwrap().2;
    let exceeds = largest > base && largest.is_finite();
    let report = report(&s, &ReportConfig::default());
    let report_ok = report.is_ok();
    let summary = match &report {
        Ok(r) => format!(
            "report ok, sipp gap {:?} vs baseline gap {:?}",
            r.headline_gap_lb_astar, r.headline_gap_baseline
        ),
        Err(e) => format!("report failed: {e}"),
    };
    outcome(
        base_ok && exceeds && report_ok,
        format!(
            "baseline {base:.4} vs tips {over_tips:.4}; lb {}; {summary}",
            rows.iter().map(|(n, k, c)| format!("({n},{k})={c:.3}")).collect::<Vec<_>>().join(" ")
        ),
    )
}

fn coverage_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0fe);
    let mut accepted = 0;
    let mut covered = 0;
    let mut attempts = 0;
    let mut disagreements = Vec::new();
    while accepted < 200 && attempts < 200_000 {
        attempts += 1;
        let scene = random_coverage_scene(&mut rng);
        let seg = random_axis_segment(&mut rng);
        let t = rng.gen_range(0.0..=scene.horizon);
        let Some(expected) = sampled_coverage(&seg, &scene, t, 1000) else {
            continue;
        };
        accepted += 1;
        covered += usize::from(expected);
        if segment_covered(&seg, &scene, t) != expected {
            disagreements.push(format!("{seg:?} at t={t}: oracle {expected}"));
        }
    }
    outcome(
        accepted == 200 && disagreements.is_empty() && covered > 0,
        format!(
            "{accepted} triples ({covered} covered) from {attempts} draws, {} disagreements",
            disagreements.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("exact ratio on the two-bar scene", exp1_exact_ratio),
        ("graph size identity and degree bound", graph_size_identity),
        ("lower bounds below validated plans", lower_bound_sandwich),
        ("search matches exhaustive oracle", graph_optimality_oracle),
        ("refinement and dt monotonicity", refinement_monotonicity),
        ("earliest-reach cases", earliest_reach_suite),
        ("single moving disc scene", moving_disc_scene),
        ("staggered bars with moving discs", bars_and_discs_scene),
        ("coverage matches sampling oracle", coverage_oracle),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        failed += usize::from(!result.pass);
        println!(
            "criterion {}: {} {name} [{:.1}s] {}",
            i + 1,
            if result.pass { "PASS" } else { "FAIL" },
            started.elapsed().as_secs_f64(),
            result.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
