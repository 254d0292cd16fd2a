// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#include "sdl/potential.hpp"

#include <cmath>

namespace sdl {

namespace {

// Quintic Hermite on [x0, x1]: matches value and first two derivatives at both
// ends. Returns value and derivative at x.
struct Hermite {
  double x0, x1;
  double f0, d0, s0;  // value, first, second derivative at x0
  double f1, d1, s1;

  RadialW eval(double x) const {
    const double h = x1 - x0;
    const double t = (x - x0) / h;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double H0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
    const double H1 = t - 6 * t3 + 8 * t4 - 3 * t5;
    const double H2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
    const double H3 = 10 * t3 - 15 * t4 + 6 * t5;
    const double H4 = -4 * t3 + 7 * t4 - 3 * t5;
    const double H5 = 0.5 * t3 - t4 + 0.5 * t5;
    const double dH0 = (-30 * t2 + 60 * t3 - 30 * t4) / h;
    const double dH1 = (1 - 18 * t2 + 32 * t3 - 15 * t4) / h;
    const double dH2 = (t - 4.5 * t2 + 6 * t3 - 2.5 * t4) / h;
    const double dH3 = (30 * t2 - 60 * t3 + 30 * t4) / h;
    const double dH4 = (-12 * t2 + 28 * t3 - 15 * t4) / h;
    const double dH5 = (1.5 * t2 - 4 * t3 + 2.5 * t4) / h;
    RadialW w;
    w.value = f0 * H0 + d0 * h * H1 + s0 * h * h * H2 + f1 * H3 + d1 * h * H4 + s1 * h * h * H5;
    w.derivative =
        f0 * dH0 + d0 * h * dH1 + s0 * h * h * dH2 + f1 * dH3 + d1 * h * dH4 + s1 * h * h * dH5;
    return w;
  }
};

}  // namespace

RadialW potential_w_radial(double r, const GLConfig& cfg) {
  cfg.validate();
  const double d0 = cfg.delta0;
  const double r_flat = cfg.flat_radius();       // 1 - delta0
  const double tube_lo = 1.0 - d0 / 2.0;
  const double tube_hi = 1.0 + d0 / 2.0;

  if (r >= tube_lo && r <= tube_hi) return {(r - 1.0) * (r - 1.0), 2.0 * (r - 1.0)};
  if (r <= r_flat) return {d0 * d0, 0.0};  // flat interior keeps W smooth at the origin
  if (r < tube_lo) {
    Hermite inner{r_flat, tube_lo, d0 * d0, 0.0, 0.0, d0 * d0 / 4.0, -d0, 2.0};
    return inner.eval(r);
  }
  if (r >= cfg.r_out) return {r * r, 2.0 * r};
  Hermite outer{tube_hi, cfg.r_out, d0 * d0 / 4.0, d0, 2.0,
                cfg.r_out * cfg.r_out, 2.0 * cfg.r_out, 2.0};
  return outer.eval(r);
}

WEval potential_W(const Eigen::VectorXd& a, const GLConfig& cfg) {
  const double r = a.norm();
  const RadialW w = potential_w_radial(r, cfg);
  WEval out;
  out.value = w.value;
  if (r > 0.0)
    out.gradient = (w.derivative / r) * a;
  else
    out.gradient = Eigen::VectorXd::Zero(a.size());  // flat region: exact zero gradient
  return out;
}

}  // namespace sdl
