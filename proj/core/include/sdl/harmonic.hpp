// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "sdl/eigensolve.hpp"
#include "sdl/mesh.hpp"
#include "sdl/potential.hpp"

namespace sdl {

/// Vertex-indexed map into R^{k+1}. on_sphere means every row has unit norm
/// (checked to 1e-12); Ginzburg-Landau iterates keep on_sphere = false.
struct SphereMap {
  Eigen::MatrixXd values;  // vertex_count x (k+1)
  bool on_sphere = false;

  int target_dim() const { return static_cast<int>(values.cols()) - 1; }
  void check(const DiscreteManifold& man) const;
};

/// Row-normalizes u and returns it as an on-sphere map.
SphereMap project_to_sphere(const VectorField& u);

/// E_eps(u) = dirichlet_energy(u) + sum_i m_i W(u_i) / eps^2.
double gl_energy(const DiscreteManifold& man, const VectorField& u, const GLConfig& cfg);

/// M-gradient of gl_energy: rows M^{-1}(K u) + DW(u_i)/eps^2.
VectorField gl_gradient(const DiscreteManifold& man, const VectorField& u, const GLConfig& cfg);

struct DescentResult {
  VectorField u;
  bool converged = false;
  bool diverged = false;  // energy increase persisted below the step floor
  int iterations = 0;
  double residual = 0.0;  // max_i |gradient row i|
  double energy = 0.0;
};

/// Damped gradient descent with backtracking line search on gl_energy.
/// Accepted steps never increase the energy. Stops when the M-infinity norm
/// of the gradient drops below tol.
DescentResult gl_descent(const DiscreteManifold& man, const VectorField& u0, const GLConfig& cfg,
                         double tol, int max_iterations);

struct ContinuationStage {
  double epsilon = 0.0;
  int iterations = 0;
  double dirichlet = 0.0;
  double potential_term = 0.0;  // sum_i m_i W(u_i)/eps^2, reported so callers can watch it vanish
  double residual = 0.0;
};

struct ContinuationResult {
  SphereMap map;  // final iterate projected to the sphere
  std::vector<ContinuationStage> trace;
};

/// Chains gl_descent across a strictly decreasing epsilon schedule,
/// warm-starting each stage, then projects to the sphere.
ContinuationResult gl_continuation(const DiscreteManifold& man, const VectorField& u0,
                                   const std::vector<double>& epsilon_schedule,
                                   GLConfig cfg, double tol, int max_iterations_per_stage = 4000);

struct FlowResult {
  SphereMap map;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // normalized tangential residual, see harmonic_residual
  double energy = 0.0;
};

/// Projected gradient iteration u <- normalize_rows(u - tau M^{-1} K u) with
/// line search on the Dirichlet energy; converges to discrete harmonic maps.
FlowResult harmonic_flow(const DiscreteManifold& man, const SphereMap& u0, double tol,
                         int max_iterations);

/// || M^{-1} K u - diag(e(u)) u ||_M / ||e(u)||_M; zero iff the discrete
/// harmonic-map equation Delta u = |du|^2 u holds.
double harmonic_residual(const DiscreteManifold& man, const SphereMap& u);

/// Discrete stress-energy pairing: the left side of the stationarity identity
/// int (1/2)|du|^2 div(X) - <du* du, DX> dv, assembled element-wise for a
/// piecewise-linear vertex vector field X (ambient components). Diagnostic.
double stress_defect(const DiscreteManifold& man, const SphereMap& u, const VectorField& X);

/// E''(u)(v, v) = sum_c v_c^T K v_c - sum_i m_i e(u)_i |v_i|^2 for a
/// tangential variation (v_i orthogonal to u_i, checked to 1e-10).
double second_variation_apply(const DiscreteManifold& man, const SphereMap& u,
                              const VectorField& v);

/// Deterministic per-vertex orthonormal tangent frames (k columns per vertex).
std::vector<Eigen::MatrixXd> tangent_frames(const SphereMap& u);

/// The second-variation form assembled on the tangential subspace in the
/// given frames: (N*k) x (N*k) sparse symmetric.
SpMat second_variation_form(const DiscreteManifold& man, const SphereMap& u,
                            const std::vector<Eigen::MatrixXd>& frames);

struct IndexReport {
  int negative_count = 0;
  int null_count = 0;
  double zero_tol = 0.0;
  std::vector<double> smallest_eigenvalues;
};

/// Morse index ind_E(u): negative/zero eigenvalue counts of E'' on tangential
/// fields against the M-inner product.
IndexReport morse_index(const DiscreteManifold& man, const SphereMap& u, double zero_tol,
                        const EigOptions& opts = {});

/// Spectral index ind_S(u): counts for the pencil (K - diag(m_i e(u)_i)) f = nu M f.
IndexReport spectral_index(const DiscreteManifold& man, const SphereMap& u, double zero_tol,
                           const EigOptions& opts = {});

struct IndexRelationReport {
  IndexReport base_morse, base_spectral;
  IndexReport embedded_morse, embedded_spectral;
  int formula_index = 0;       // ind_E(u) + (k'-k) * ind_S(u)
  bool composition_exact = false;  // embedded_morse.negative_count == formula_index
  bool spectral_invariant = false; // ind_S unchanged by the embedding
  bool quotient_bound = false;     // ind_S(u) >= ind_E(u)/(k+1)
};

/// Checks ind_S(u) >= ind_E(u)/(k+1) and the composition rule for the totally
/// geodesic embedding S^k into S^{k'} (zero-padding the map).
IndexRelationReport check_index_relations(const DiscreteManifold& man, const SphereMap& u,
                                          int k_prime, double zero_tol,
                                          const EigOptions& opts = {});

struct Lemma33Report {
  int local_index = 0;  // ind_E(u; masked region)
  int p = 0;            // from ind_E(u; Omega) = k - 2 - p
  bool vacuous = false; // p <= 0
  int violations = 0;
  double max_ratio = 0.0;  // max over test functions of LHS/RHS
};

/// Tests (p/(p+3)) sum m_i e_i psi_i^2 <= psi^T K psi for test functions
/// supported in the masked region; the local index is computed by restricting
/// the second-variation form to tangential fields vanishing outside the mask.
Lemma33Report lemma33_check(const DiscreteManifold& man, const SphereMap& u,
                            const std::vector<bool>& region_mask,
                            const std::vector<ScalarField>& psi_samples, double slack,
                            double zero_tol, const EigOptions& opts = {});

struct MonotonicityRow {
  double radius = 0.0;
  double value = 0.0;  // r^{2-n} * sum_{dist < r} m_i e_eps(u)_i
};

struct MonotonicityReport {
  std::vector<MonotonicityRow> rows;
  double fitted_c = 0.0;  // smallest C >= 0 making e^{C r^2} * value nondecreasing
};

/// Scaled local Ginzburg-Landau energy over graph-distance balls. Reporting
/// only; the continuum almost-monotonicity appears as a soft trend.
MonotonicityReport monotonicity_diagnostic(const DiscreteManifold& man, const VectorField& u_eps,
                                           const GLConfig& cfg, int center_vertex,
                                           const std::vector<double>& radii);

/// Signed image-area degree estimate for maps from 2-d surface meshes to S^2.
int sphere_map_degree(const DiscreteManifold& man, const SphereMap& u);

}  // namespace sdl
