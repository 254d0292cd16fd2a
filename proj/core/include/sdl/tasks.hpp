// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sdl/config.hpp"

namespace sdl {

inline constexpr const char* kVersion = "0.1.0";

/// Exit statuses surfaced by the CLI. Validation problems are the caller's
/// fault; solver failures carry diagnostics in the manifest.
enum class RunStatus { Ok = 0, ValidationError = 2, SolverError = 3 };

struct RunManifest {
  RunStatus status = RunStatus::Ok;
  bool passed = true;  // task-level checks
  std::string output_dir;
  std::vector<std::pair<std::string, std::string>> entries;  // config echo, tolerances, results
};

/// Executes one experiment config (tasks: spectrum, optimize-density,
/// optimize-steklov, harmonic-solve, gl-continuation, verify). Writes CSV and
/// checkpoint outputs plus the manifest into the config's output directory.
RunManifest run_experiment(const Config& config);

/// Runs every `.cfg` config in the directory independently; one failure does
/// not abort the sweep. Aggregates a long-format cross-run CSV in sweep_out.
std::vector<RunManifest> run_sweep(const std::string& config_dir, const std::string& sweep_out);

}  // namespace sdl
