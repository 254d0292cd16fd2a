// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace sdl {

/// Formats doubles with a fixed %.12g so reruns with the same inputs produce
/// byte-identical files.
std::string format_double(double x);

/// Minimal CSV writer: fixed column set, deterministic float formatting.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns,
            const std::vector<std::string>& header_comments = {});
  ~CsvWriter();
  void row(const std::vector<std::string>& cells);
  void row_doubles(const std::vector<double>& cells);
  void close();

 private:
  struct Impl;
  Impl* impl_;
};

/// Key = value text block (same syntax as Config, no sections). Used for
/// manifests, summaries and sidecar metadata. Written atomically (temp + rename).
void save_kv(const std::string& path, const std::vector<std::pair<std::string, std::string>>& kv,
             const std::string& header_comment = "");

/// Scalar checkpoint: `#` header lines then one value per line.
void save_scalar_field(const std::string& path, const Eigen::VectorXd& values,
                       const std::vector<std::pair<std::string, std::string>>& meta);
Eigen::VectorXd load_scalar_field(const std::string& path);

/// Map checkpoint: `#` header lines (target_dim, on_sphere, producer, epsilon
/// when applicable) then vertex-major rows with k+1 columns.
void save_map_checkpoint(const std::string& path, const Eigen::MatrixXd& values,
                         const std::vector<std::pair<std::string, std::string>>& meta);
Eigen::MatrixXd load_map_checkpoint(const std::string& path);

}  // namespace sdl
