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

//! The continuous problem instance: workspace, robot limits, obstacles with
//! known translational trajectories, and the JSON document format.

use crate::error::{Error, Result};
use crate::geometry::Point;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Speed-bound slack applied when checking robot trajectories.
pub const SPEED_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    Disc { radius: f64 },
    /// Counter-clockwise vertices in the body frame.
    ConvexPolygon { vertices: Vec<Point> },
    /// Zero-width segment in the body frame.
    Bar { a: Point, b: Point },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Waypoint {
    pub t: f64,
    pub translation: Point,
}

impl From<[f64; 3]> for Waypoint {
    fn from([t, x, y]: [f64; 3]) -> Self {
        Waypoint {
            t,
            translation: Point::new(x, y),
        }
    }
}

impl From<Waypoint> for [f64; 3] {
    fn from(w: Waypoint) -> Self {
        [w.t, w.translation.x, w.translation.y]
    }
}

/// Piecewise-linear translation, constant before the first and after the
/// last waypoint.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    waypoints: Vec<Waypoint>,
}

impl Trajectory {
    pub fn new(waypoints: Vec<Waypoint>) -> Self {
        Self { waypoints }
    }

    pub fn fixed(translation: Point) -> Self {
        Self::new(vec![Waypoint { t: 0.0, translation }])
    }

    pub fn waypoints(&self) -> &[Waypoint] {
        &self.waypoints
    }

    /// Translation at `t` with `t` checked against `[0, horizon]`.
    pub fn pose_at(&self, t: f64, horizon: f64) -> Result<Point> {
        if !(0.0..=horizon).contains(&t) {
            return Err(Error::Domain { t, horizon });
        }
        Ok(self.translation_at(t))
    }

    /// Unchecked translation lookup used on hot paths.
    #[inline]
    pub fn translation_at(&self, t: f64) -> Point {
        let w = &self.waypoints;
        if w.len() == 1 || t <= w[0].t {
            return w[0].translation;
        }
        let last = w[w.len() - 1];
        if t >= last.t {
            return last.translation;
        }
        // first waypoint with time > t; guaranteed in 1..len
        let i = w.partition_point(|wp| wp.t <= t);
        let (a, b) = (w[i - 1], w[i]);
        let u = (t - a.t) / (b.t - a.t);
        a.translation.lerp(b.translation, u)
    }

    /// Largest speed attained anywhere in `[t0, t1]`.
    pub fn max_speed_between(&self, t0: f64, t1: f64) -> f64 {
        let w = &self.waypoints;
        if w.len() < 2 {
            return 0.0;
        }
        let first = w.partition_point(|wp| wp.t <= t0).max(1);
        let mut best = 0.0f64;
        for i in first..w.len() {
            if w[i - 1].t >= t1 {
                break;
            }
            let dt = w[i].t - w[i - 1].t;
            best = best.max(w[i].translation.dist(w[i - 1].translation) / dt);
        }
        best
    }

    pub fn max_speed(&self) -> f64 {
        self.max_speed_between(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn is_static(&self) -> bool {
        let p0 = self.waypoints[0].translation;
        self.waypoints.iter().all(|w| w.translation == p0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ObstacleDoc", into = "ObstacleDoc")]
pub struct Obstacle {
    pub shape: Shape,
    pub trajectory: Trajectory,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase", deny_unknown_fields)]
enum ObstacleDoc {
    Disc {
        radius: f64,
        waypoints: Vec<[f64; 3]>,
    },
    Polygon {
        vertices: Vec<Point>,
        waypoints: Vec<[f64; 3]>,
    },
    Bar {
        a: Point,
        b: Point,
        waypoints: Vec<[f64; 3]>,
    },
}

impl TryFrom<ObstacleDoc> for Obstacle {
    type Error = String;

    fn try_from(doc: ObstacleDoc) -> Result<Self, String> {
        let (shape, waypoints) = match doc {
            ObstacleDoc::Disc { radius, waypoints } => (Shape::Disc { radius }, waypoints),
            ObstacleDoc::Polygon {
                vertices,
                waypoints,
            } => (Shape::ConvexPolygon { vertices }, waypoints),
            ObstacleDoc::Bar { a, b, waypoints } => (Shape::Bar { a, b }, waypoints),
        };
        if waypoints.is_empty() {
            return Err("an obstacle needs at least one waypoint".into());
        }
        Ok(Obstacle {
            shape,
            trajectory: Trajectory::new(waypoints.into_iter().map(Waypoint::from).collect()),
        })
    }
}

impl From<Obstacle> for ObstacleDoc {
    fn from(o: Obstacle) -> Self {
        let waypoints = o.trajectory.waypoints.into_iter().map(<[f64; 3]>::from).collect();
        match o.shape {
            Shape::Disc { radius } => ObstacleDoc::Disc { radius, waypoints },
            Shape::ConvexPolygon { vertices } => ObstacleDoc::Polygon {
                vertices,
                waypoints,
            },
            Shape::Bar { a, b } => ObstacleDoc::Bar { a, b, waypoints },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(rename = "L")]
    pub workspace_size: f64,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub v_max: f64,
    pub start: Point,
    pub goal: Point,
    pub obstacles: Vec<Obstacle>,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        let pos = |v: f64| v.is_finite() && v > 0.0;
        if !pos(self.workspace_size) {
            return Err(Error::invalid("L", "workspace size must be positive"));
        }
        if !pos(self.horizon) {
            return Err(Error::invalid("T", "horizon must be positive"));
        }
        if !pos(self.v_max) {
            return Err(Error::invalid("v_max", "maximum speed must be positive"));
        }
        for (name, p) in [("start", self.start), ("goal", self.goal)] {
            if !self.contains(p) {
                return Err(Error::invalid(name, "point lies outside the workspace"));
            }
        }
        for (i, o) in self.obstacles.iter().enumerate() {
            validate_obstacle(o, self.horizon).map_err(|(field, reason)| {
                Error::invalid(format!("obstacles[{i}].{field}"), reason)
            })?;
        }
        Ok(())
    }

    pub fn contains(&self, p: Point) -> bool {
        p.is_finite()
            && (0.0..=self.workspace_size).contains(&p.x)
            && (0.0..=self.workspace_size).contains(&p.y)
    }

    /// Translation of obstacle `index` at time `t`.
    pub fn pose_at(&self, index: usize, t: f64) -> Result<Point> {
        self.obstacles[index].trajectory.pose_at(t, self.horizon)
    }

    pub fn max_obstacle_speed(&self) -> f64 {
        self.obstacles
            .iter()
            .map(|o| o.trajectory.max_speed())
            .fold(0.0, f64::max)
    }

    pub fn has_moving_obstacles(&self) -> bool {
        self.obstacles.iter().any(|o| !o.trajectory.is_static())
    }

    /// Straight-line travel time from start to goal.
    pub fn straight_line_cost(&self) -> f64 {
        self.start.dist(self.goal) / self.v_max
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }
}

fn validate_obstacle(o: &Obstacle, horizon: f64) -> std::result::Result<(), (&'static str, String)> {
    match &o.shape {
        Shape::Disc { radius } => {
            if !(radius.is_finite() && *radius > 0.0) {
                return Err(("radius", "disc radius must be positive".into()));
            }
        }
        Shape::ConvexPolygon { vertices } => {
            if vertices.len() < 3 {
                return Err(("vertices", "a polygon needs at least three vertices".into()));
            }
            if !vertices.iter().all(|v| v.is_finite()) {
                return Err(("vertices", "non-finite vertex".into()));
            }
            let n = vertices.len();
            for i in 0..n {
                let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
                if (b - a).cross(c - b) <= 0.0 {
                    return Err((
                        "vertices",
                        format!("polygon is not strictly convex counter-clockwise at vertex {}", (i + 1) % n),
                    ));
                }
            }
        }
        Shape::Bar { a, b } => {
            if !(a.is_finite() && b.is_finite()) || a == b {
                return Err(("b", "bar endpoints must be finite and distinct".into()));
            }
        }
    }
    let w = o.trajectory.waypoints();
    if w.is_empty() {
        return Err(("waypoints", "at least one waypoint is required".into()));
    }
    if w[0].t != 0.0 {
        return Err(("waypoints[0]", "the first waypoint must be at t = 0".into()));
    }
    for (i, wp) in w.iter().enumerate() {
        if !(wp.t.is_finite() && wp.translation.is_finite()) {
            return Err(("waypoints", format!("waypoint {i} is not finite")));
        }
        if i > 0 && wp.t <= w[i - 1].t {
            return Err(("waypoints", format!("waypoint {i} time is not strictly increasing")));
        }
    }
    if w.len() > 1 && w[w.len() - 1].t < horizon {
        return Err((
            "waypoints",
            "the last waypoint must be at or beyond the horizon T".into(),
        ));
    }
    Ok(())
}

/// Parses and validates a scenario document.
pub fn load_scenario(text: &[u8]) -> Result<Scenario> {
    let scenario: Scenario = serde_json::from_slice(text)?;
    scenario.validate()?;
    Ok(scenario)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomScenarioParams {
    pub workspace_size: f64,
    pub horizon: f64,
    pub v_max: f64,
    pub start: Point,
    pub goal: Point,
    /// Upper bound on each obstacle's speed.
    pub max_obstacle_speed: f64,
    /// Time between successive obstacle waypoints.
    pub leg_duration: f64,
}

impl Default for RandomScenarioParams {
    fn default() -> Self {
        Self {
            workspace_size: 1.0,
            horizon: 100.0,
            v_max: 0.03,
            start: Point::new(0.0, 0.5),
            goal: Point::new(1.0, 0.5),
            max_obstacle_speed: 0.01,
            leg_duration: 10.0,
        }
    }
}

/// Discs of the given radius that all start at the workspace center and wander
/// along seeded random piecewise-linear trajectories, keeping their centers at
/// least one radius from the border.
pub fn generate_random_scenario(
    seed: u64,
    num_obstacles: usize,
    radius: f64,
    params: &RandomScenarioParams,
) -> Result<Scenario> {
    let l = params.workspace_size;
    if !(radius > 0.0 && 2.0 * radius < l) {
        return Err(Error::invalid("radius", "disc must fit inside the workspace"));
    }
    if !(params.leg_duration > 0.0 && params.max_obstacle_speed >= 0.0) {
        return Err(Error::invalid(
            "params",
            "leg duration must be positive and obstacle speed non-negative",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = Point::new(l / 2.0, l / 2.0);
    let mut obstacles = Vec::with_capacity(num_obstacles);
    for _ in 0..num_obstacles {
        let mut waypoints = vec![Waypoint {
            t: 0.0,
            translation: center,
        }];
        let mut here = center;
        let mut t = 0.0;
        while t < params.horizon {
            t += params.leg_duration;
            let heading = rng.gen_range(0.0..std::f64::consts::TAU);
            let speed = params.max_obstacle_speed * rng.gen_range(0.3..=1.0);
            let step = speed * params.leg_duration;
            let target = here + Point::new(heading.cos(), heading.sin()) * step;
            here = Point::new(
                target.x.clamp(radius, l - radius),
                target.y.clamp(radius, l - radius),
            );
            waypoints.push(Waypoint { t, translation: here });
        }
        obstacles.push(Obstacle {
            shape: Shape::Disc { radius },
            trajectory: Trajectory::new(waypoints),
        });
    }
    let scenario = Scenario {
        id: Some(format!("random-{seed}")),
        workspace_size: l,
        horizon: params.horizon,
        v_max: params.v_max,
        start: params.start,
        goal: params.goal,
        obstacles,
    };
    scenario.validate()?;
    Ok(scenario)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimedPoint {
    pub t: f64,
    pub p: Point,
}

/// Piecewise-linear robot motion through timed samples.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RobotTrajectory {
    pub samples: Vec<TimedPoint>,
}

impl RobotTrajectory {
    pub fn new(samples: Vec<TimedPoint>) -> Self {
        Self { samples }
    }

    /// Arrival time at the last sample.
    pub fn total_cost(&self) -> f64 {
        self.samples.last().map_or(f64::INFINITY, |s| s.t)
    }

    pub fn push(&mut self, t: f64, p: Point) {
        self.samples.push(TimedPoint { t, p });
    }

    /// Speed bound and non-decreasing time check, ignoring collisions.
    pub fn respects_speed(&self, v_max: f64) -> bool {
        self.samples.windows(2).all(|w| {
            let dt = w[1].t - w[0].t;
            let dist = w[0].p.dist(w[1].p);
            dt >= 0.0 && dist <= (v_max + SPEED_TOL) * dt + 1e-12
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,y\n");
        for s in &self.samples {
            let _ = writeln!(out, "{},{},{}", s.t, s.p.x, s.p.y);
        }
        out
    }
}
