// Copyright 2026 The DRA Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>

#include "cli/config.h"

namespace dra::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

// Each command writes its primary output to `out` and diagnostics to `err`,
// and returns the process exit code. ConfigError propagates to the caller.

// phi on a quantile grid, reserve, alpha-hat, Rev(D^n) and f(n, D) for
// n = 1, 2, 3, as JSON.
int cmd_dist(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

// One auction with the first strategy; JSON outcome, transcript and audit.
int cmd_run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

// Revenue estimate per strategy, as CSV.
int cmd_estimate(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

// Adaptive reserve deviation swept over thresholds: stratified estimate and
// quadrature per row, as CSV. The summary line goes to `err`.
int cmd_attack(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

// Invariant suite; one PASS/FAIL line per check. Exit 1 if any fails.
int cmd_verify(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dra::cli
