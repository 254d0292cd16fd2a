// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdl {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Key-value configuration with nested sections. File syntax:
///   # comment
///   task = spectrum
///   [domain]
///   builder = icosphere
/// Section headers prefix the keys that follow ("domain.builder"). Values are
/// plain strings until queried.
class Config {
 public:
  Config() = default;
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& name = "<string>");

  bool has(const std::string& key) const { return kv_.count(key) > 0; }
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int_or(const std::string& key, int fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;  // comma separated

  void set(const std::string& key, const std::string& value) { kv_[key] = value; }

  /// Throws ConfigError if any present key is not in the allowed set.
  void require_known_keys(const std::set<std::string>& allowed) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }
  const std::string& name() const { return name_; }

 private:
  std::map<std::string, std::string> kv_;
  std::string name_;
};

}  // namespace sdl
