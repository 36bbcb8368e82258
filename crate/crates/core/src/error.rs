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

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to parse scenario: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("invalid value at `{path}`: {reason}")]
    Invalid { path: String, reason: String },

    #[error("time {t} is outside the horizon [0, {horizon}]")]
    Domain { t: f64, horizon: f64 },

    #[error("graph with {requested} vertices exceeds the cap of {cap}")]
    Resource { requested: usize, cap: usize },

    #[error("vertices {u} and {v} are not joined by an edge")]
    NotAnEdge { u: usize, v: usize },

    #[error("start and goal are disconnected among the static obstacles")]
    Unbounded,

    #[error("lower bound {lower} exceeds validated upper bound {upper} ({source_pair})")]
    BoundViolation {
        lower: f64,
        upper: f64,
        source_pair: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            path: path.into(),
            reason: reason.into(),
        }
    }
}
