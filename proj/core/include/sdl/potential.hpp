// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace sdl {

/// Ginzburg-Landau relaxation parameters for the unit-sphere target S^k.
/// The penalty W is radial: W(a) = (|a|-1)^2 on the tube ||a|-1| <= delta0/2,
/// W(a) = |a|^2 outside |a| >= r_out, with quintic Hermite blends (value and
/// first two derivatives matched) on the two transition shells. The blends are
/// monotone and stay inside [delta0^2/4, r_out^2].
struct GLConfig {
  double epsilon = 0.1;  // relaxation parameter
  double delta0 = 0.5;   // tube radius, in (0, 1)
  double r_out = 2.0;    // outer radius, >= 1 + delta0

  double flat_radius() const { return 1.0 - delta0; }  // W constant below this
  void validate() const {
    if (!(delta0 > 0.0 && delta0 < 1.0)) throw std::invalid_argument("GLConfig: delta0 must be in (0,1)");
    if (!(r_out >= 1.0 + delta0)) throw std::invalid_argument("GLConfig: r_out must be >= 1 + delta0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("GLConfig: epsilon must be positive");
  }
};

struct RadialW {
  double value = 0.0;
  double derivative = 0.0;  // dW/dr
};

/// W and dW/dr as a function of the radius r = |a| >= 0.
RadialW potential_w_radial(double r, const GLConfig& cfg);

struct WEval {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

/// W(a) and its exact gradient; rotation invariant, smooth at a = 0 (the flat
/// interior region makes the gradient vanish there).
WEval potential_W(const Eigen::VectorXd& a, const GLConfig& cfg);

}  // namespace sdl
