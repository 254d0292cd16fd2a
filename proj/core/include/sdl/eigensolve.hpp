// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <stdexcept>
#include <string>

#include "sdl/mesh.hpp"

namespace sdl {

struct EigOptions {
  int count = 6;               // requested lowest eigenpairs
  double tol = 1e-10;          // relative residual target per pair
  int max_iterations = 1000;
  int dense_threshold = 1200;  // problem size at or below which the dense path runs
  enum class Backend { Auto, Dense, Iterative };
  Backend backend = Backend::Auto;
  int block_extra = 8;         // subspace columns beyond `count`
  std::uint64_t seed = 0x5d15eedULL;
};

struct EigenSolveError : std::runtime_error {
  explicit EigenSolveError(const std::string& what, double res = -1.0)
      : std::runtime_error(what), residual(res) {}
  double residual;
};

struct EigPairs {
  Eigen::VectorXd values;     // ascending
  Eigen::MatrixXd vectors;    // columns, orthonormal in the pencil's right-hand inner product
  Eigen::VectorXd residuals;  // relative, per pair
  int iterations = 0;
  std::string backend;        // "dense" or "iterative"
};

/// Lowest eigenpairs of A f = nu diag(b) f with b > 0 elementwise, A sparse
/// symmetric (possibly indefinite). Vectors are diag(b)-orthonormal.
EigPairs lowest_pairs(const SpMat& A, const Eigen::VectorXd& b, const EigOptions& opts = {});

/// Lowest eigenpairs of K f = lambda diag(w) f with w >= 0, w not identically
/// zero (degenerate weights allowed) and K PSD with constants in its kernel.
/// Solved through the SPD-shifted pencil (K + diag(w)) f = (lambda + 1) diag(w) f,
/// so eigenvectors of finite lambda are K-harmonic on the zero set of w.
/// Vectors are diag(w)-orthonormal.
EigPairs lowest_weighted(const SpMat& K, const Eigen::VectorXd& w, const EigOptions& opts = {});

/// Dense-pencil variant of lowest_weighted for small dense PSD forms
/// (the Dirichlet-to-Neumann block). A must be PSD with A + diag(w) SPD.
EigPairs lowest_weighted_dense(const Eigen::MatrixXd& A, const Eigen::VectorXd& w,
                               const EigOptions& opts = {});

}  // namespace sdl
