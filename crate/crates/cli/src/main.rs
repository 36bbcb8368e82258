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

//! `lbplan`: generate scenes, compute lower bounds, run the feasible
//! planners and report optimality gaps.
//!
//! Exit codes: 0 solved, 2 no path, 3 input error, 4 invariant violation.

use clap::{Args, Parser, Subcommand, ValueEnum};
use lbplan_core::baselines::{
    baseline_lower_bound, rrt_plan, sipp_plan, RrtParams, SippParams,
};
use lbplan_core::harness::{
    lower_bound, preset_scenario, report, sweep, sweep_csv, BoundReport, Preset, ReportConfig,
};
use lbplan_core::graph::{LbpGraph, VertexKind};
use lbplan_core::scenario::{load_scenario, RobotTrajectory, Scenario};
use lbplan_core::search::{SearchOptions, SearchResult};
use lbplan_core::Error;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_NO_PATH: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_INVARIANT: u8 = 4;

#[derive(Parser)]
#[command(name = "lbplan", version, about = "Certified lower bounds for time-optimal planning among moving obstacles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PresetArg {
    Exp1,
    Exp2,
    Exp3,
    Random,
}

impl From<PresetArg> for Preset {
    fn from(p: PresetArg) -> Self {
        match p {
            PresetArg::Exp1 => Preset::Exp1,
            PresetArg::Exp2 => Preset::Exp2,
            PresetArg::Exp3 => Preset::Exp3,
            PresetArg::Random => Preset::Random,
        }
    }
}

#[derive(Args)]
struct ScenarioArg {
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
}

#[derive(Args)]
struct SearchArgs {
    /// Time-slab width for reachable intervals; defaults to a value derived
    /// from the cell size and the fastest obstacle.
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long, value_enum, default_value = "on")]
    expansion_constraint: Switch,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions::with_constraint(self.expansion_constraint == Switch::On)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a benchmark scenario.
    Generate {
        #[arg(long, value_enum)]
        preset: PresetArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower bound from the discretized graph search.
    Lowerbound {
        #[command(flatten)]
        scenario: ScenarioArg,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 25)]
        k: usize,
        #[command(flatten)]
        search: SearchArgs,
        /// Write the vertex path as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Lower bounds over a grid of (n, k); CSV `n,k,cost,expansions,wall_ms`.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArg,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shortest path among static obstacles only.
    Baseline {
        #[command(flatten)]
        scenario: ScenarioArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Safe-interval grid planner.
    Sipp {
        #[command(flatten)]
        scenario: ScenarioArg,
        #[arg(long, default_value_t = 40)]
        grid_n: usize,
        #[arg(long, default_value_t = 0.05)]
        dt: f64,
        /// Write the trajectory as CSV `t,x,y`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Space-time random tree planner.
    Rrt {
        #[command(flatten)]
        scenario: ScenarioArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20_000)]
        max_iters: usize,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// All bounds plus optimality-gap estimates.
    Report {
        #[command(flatten)]
        scenario: ScenarioArg,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 25)]
        k: usize,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long, default_value_t = 40)]
        grid_n: usize,
        /// First RRT seed; three consecutive seeds are run.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BoundViolation { .. } => EXIT_INVARIANT,
            Error::Unbounded => EXIT_NO_PATH,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read_scenario(path: &Path) -> Result<Scenario, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    Ok(load_scenario(&bytes)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure {
            code: EXIT_INPUT,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn status_code(solved: bool) -> u8 {
    if solved {
        0
    } else {
        EXIT_NO_PATH
    }
}

fn fmt_cost(c: Option<f64>) -> String {
    c.map_or_else(|| "no_path".to_string(), |c| c.to_string())
}

/// CSV `vertex,x0,y0,x1,y1,arrival,wait`; the endpoints are the closed
/// sub-segment the robot crosses, a single point for start and goal.
fn path_csv(graph: &LbpGraph, result: &SearchResult) -> String {
    let mut out = String::from("vertex,x0,y0,x1,y1,arrival,wait\n");
    for st in &result.path {
        let id = match graph.kind(st.vertex) {
            VertexKind::Start => "start".to_string(),
            VertexKind::Goal => "goal".to_string(),
            VertexKind::SubSegment => st.vertex.to_string(),
        };
        let seg = graph.sub_segment(st.vertex);
        let (a, b) = (seg.origin, seg.end());
        out.push_str(&format!(
            "{id},{},{},{},{},{},{}\n",
            a.x, a.y, b.x, b.y, st.arrival, st.wait
        ));
    }
    out
}

fn plan_output(
    planner: &str,
    trajectory: Option<&RobotTrajectory>,
    format: Format,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let cost = trajectory.map(RobotTrajectory::total_cost);
    match format {
        Format::Csv => println!("planner,cost\n{planner},{}", fmt_cost(cost)),
        Format::Json => println!("{}", json!({ "planner": planner, "cost": cost })),
    }
    if let (Some(t), Some(path)) = (trajectory, out) {
        emit(Some(path), &t.to_csv())?;
    }
    Ok(status_code(trajectory.is_some()))
}

fn report_csv(r: &BoundReport) -> String {
    let mut out = String::from("kind,source,cost\n");
    let cost = |c: Option<f64>| fmt_cost(c);
    for l in &r.lower_bounds {
        out.push_str(&format!("lower,{},{}\n", l.source, cost(l.cost)));
    }
    for u in &r.upper_bounds {
        let tag = if u.valid { "upper" } else { "upper_invalid" };
        out.push_str(&format!("{tag},{},{}\n", u.source, cost(u.cost)));
    }
    for g in &r.gaps {
        let gap = g.gap.map_or_else(|| "none".to_string(), |x| x.to_string());
        out.push_str(&format!("gap,{}/{},{gap}\n", g.upper, g.lower));
    }
    out
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Generate { preset, seed, out } => {
            let s = preset_scenario(preset.into(), seed)?;
            emit(out.as_deref(), &(s.to_json() + "\n"))?;
            Ok(0)
        }
        Command::Lowerbound {
            scenario,
            n,
            k,
            search,
            out,
            format,
        } => {
            let s = read_scenario(&scenario.scenario)?;
            let run = lower_bound(&s, n, k, search.dt, &search.options())?;
            let r = &run.result;
            let wall_ms = r.stats.wall_time.as_secs_f64() * 1e3 + run.interval_time.as_secs_f64() * 1e3;
            match format {
                Format::Csv => println!(
                    "n,k,dt,expansion_constraint,cost,expansions,generated,wall_ms\n{n},{k},{},{},{},{},{},{wall_ms:.3}",
                    run.dt,
                    run.expansion_constraint,
                    fmt_cost(r.cost),
                    r.stats.expansions,
                    r.stats.generated,
                ),
                Format::Json => println!(
                    "{}",
                    json!({
                        "n": n, "k": k, "dt": run.dt,
                        "expansion_constraint": run.expansion_constraint,
                        "status": r.status, "cost": r.cost,
                        "expansions": r.stats.expansions,
                        "generated": r.stats.generated,
                        "wall_ms": wall_ms,
                        "path": r.path,
                    })
                ),
            }
            if let Some(path) = out {
                let graph = LbpGraph::build(&s, n, k)?;
                emit(Some(&path), &path_csv(&graph, r))?;
            }
            Ok(status_code(r.cost.is_some()))
        }
        Command::Sweep {
            scenario,
            n,
            k,
            search,
            out,
        } => {
            if n.iter().chain(&k).any(|&x| x == 0) {
                return Err(Failure {
                    code: EXIT_INPUT,
                    message: "n and k values must be positive".into(),
                });
            }
            let s = read_scenario(&scenario.scenario)?;
            let rows = sweep(&s, &n, &k, search.dt, &search.options());
            emit(out.as_deref(), &sweep_csv(&rows))?;
            Ok(0)
        }
        Command::Baseline { scenario, format } => {
            let s = read_scenario(&scenario.scenario)?;
            let b = baseline_lower_bound(&s)?;
            match format {
                Format::Csv => println!("baseline\n{}", b.cost),
                Format::Json => println!("{}", json!({ "baseline": b.cost, "path": b.path })),
            }
            Ok(0)
        }
        Command::Sipp {
            scenario,
            grid_n,
            dt,
            out,
            format,
        } => {
            let s = read_scenario(&scenario.scenario)?;
            let params = SippParams {
                grid_n,
                dt,
                ..SippParams::default()
            };
            let plan = sipp_plan(&s, &params)?;
            plan_output("sipp", plan.as_ref().map(|p| &p.trajectory), format, out.as_deref())
        }
        Command::Rrt {
            scenario,
            seed,
            max_iters,
            step,
            out,
            format,
        } => {
            let s = read_scenario(&scenario.scenario)?;
            let params = RrtParams {
                max_iters,
                step,
                ..RrtParams::default()
            };
            let plan = rrt_plan(&s, seed, &params)?;
            plan_output("rrt", plan.as_ref().map(|p| &p.trajectory), format, out.as_deref())
        }
        Command::Report {
            scenario,
            n,
            k,
            dt,
            grid_n,
            seed,
            format,
            out,
        } => {
            let s = read_scenario(&scenario.scenario)?;
            let cfg = ReportConfig {
                n,
                k,
                dt,
                sipp: SippParams {
                    grid_n,
                    ..SippParams::default()
                },
                rrt_seeds: (seed..seed + 3).collect(),
                ..ReportConfig::default()
            };
            let r = report(&s, &cfg)?;
            eprint!("{}", r.to_text());
            let text = match format {
                Format::Csv => report_csv(&r),
                Format::Json => serde_json::to_string_pretty(&r).expect("report serializes") + "\n",
            };
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
