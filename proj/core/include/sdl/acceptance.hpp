// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sdl {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the verification suite, printing one pass/fail line per criterion to
/// `log`. With fast = true the long optimization criteria are skipped and the
/// certificate sweep shrinks; every executed check keeps its full tolerance.
std::vector<CriterionResult> run_acceptance(bool fast, std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace sdl
