// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sdl/harmonic.hpp"
#include "sdl/spectral.hpp"

namespace sdl {

struct OptimizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OptimizeParams {
  double eta = 0.5;            // damping, halved whenever the functional drops
  int max_iters = 150;
  double tol = 1e-6;           // relative density change at which to stop
  double floor_rel = 1e-8;     // density floor relative to its mean
  double group_rel_gap = 0.5;  // eigenvalue capture width for the map eigenspace
  int ambient_dim = -1;        // requested target k; map padded to k+1 columns (-1 = group size)
  int patience = 12;           // stop after this many non-improving iterates
  bool center = true;          // Moebius-center the eigenfunction map each iterate
  std::uint64_t seed = 20260810ULL;
  EigOptions eig;
};

struct OptimizeIterate {
  double functional = 0.0;   // F_1 (or G_1)
  double gap = 0.0;          // next eigenvalue minus lambda_1
  double density_change = 0.0;
  int map_rank = 0;
};

struct OptimizeTrace {
  std::vector<OptimizeIterate> iterations;  // accepted steps only
  SphereMap final_map;
  bool converged = false;
};

/// Damped fixed-point iteration for max lambda_1(beta) * int beta:
/// normalize beta, take the lambda_1 eigenspace, build the normalized
/// eigenfunction map, Moebius-center it, and mix beta toward e(map)/lambda_1.
std::pair<DensityField, OptimizeTrace> maximize_F1(const DiscreteManifold& man,
                                                   const DensityField& beta0,
                                                   const OptimizeParams& params = {});

struct CriticalityReport {
  double r1 = 0.0;          // || lambda beta - e(u) || / || e(u) ||  (M-weighted)
  double r2 = 0.0;          // unit sum-of-squares recombination residual
  int spectral_index = 0;   // of the recovered map
  double nu_m = 0.0;        // potential variant: nu_m(V), 1-based
  double nu_m1 = 0.0;       // potential variant: nu_{m+1}(V)
  bool interior_of_Pm = false;  // potential variant: nu_{m+1} > zero_tol, deformation V + t admissible
  SphereMap map;
};

/// Fixed-point relation check for a density (the necessary criticality
/// condition lambda_m(beta) beta = e(u) with u built from the eigenspace).
CriticalityReport criticality_check_density(const DiscreteManifold& man, const DensityField& beta,
                                            int m, double group_rel_gap = 0.02,
                                            const EigOptions& opts = {});

/// Same for a potential: expects nu_{m+1}(V) ~ 0 and V = e(u).
CriticalityReport criticality_check_potential(const DiscreteManifold& man,
                                              const PotentialField& V, int m,
                                              double group_rel_gap = 0.02,
                                              const EigOptions& opts = {});

struct MobiusParam {
  Eigen::VectorXd y;  // |y| < 1
};

/// Conformal automorphism G_y(x) = ((1-|y|^2)/|x+y|^2)(x+y) + y of the unit
/// sphere; G_0 = id, G_{-y} inverts G_y. |x| must be 1 to 1e-8.
Eigen::VectorXd mobius_apply(const MobiusParam& y, const Eigen::VectorXd& x);

/// Row-wise mobius_apply.
Eigen::MatrixXd mobius_apply_rows(const MobiusParam& y, const Eigen::MatrixXd& X);

struct BalanceResult {
  MobiusParam y;
  double defect = 0.0;  // |sum_i w_i G_y(x_i)| / sum_i w_i
  int iterations = 0;
  bool converged = false;
};

/// Finds y with the weighted center of mass of G_y(points) balanced to tol.
/// Damped defect-descent with step halving; bisection along the current center
/// direction as the guaranteed-progress fallback.
BalanceResult balance_points(const Eigen::MatrixXd& points, const Eigen::VectorXd& weights,
                             double tol = 1e-8, int max_iterations = 300);

/// balance_points on the manifold's vertices (which must lie on the unit sphere).
BalanceResult hersch_balance(const DiscreteManifold& man, const Eigen::VectorXd& weights,
                             double tol = 1e-8, int max_iterations = 300);

struct CertifiedBound {
  double bound = 0.0;  // 2 E(G_y o incl) = sum_a of coordinate Dirichlet energies
  MobiusParam y;
  double balance_defect = 0.0;
};

/// Hersch certificate on sphere meshes: lambda_1(beta) int beta <= bound, and
/// bound stays within discretization tolerance of 8 pi.
CertifiedBound certify_upper_bound_sphere(const DiscreteManifold& man, const DensityField& beta);

/// Steklov counterpart of maximize_F1 on manifolds with boundary: sigma_1
/// eigenspace of the Dirichlet-to-Neumann pencil, boundary-normalized map,
/// rho <- |d_n u| / sigma_1. The returned density and the final map's rows are
/// boundary-indexed / harmonically extended respectively.
std::pair<DensityField, OptimizeTrace> maximize_steklov_density(const DiscreteManifold& man,
                                                                const DensityField& rho0,
                                                                const OptimizeParams& params = {});

struct FreeBoundaryReport {
  double interior_defect = 0.0;   // relative norm of the interior rows of K u
  double normality_defect = 0.0;  // max_i |d_n u_i - |d_n u_i| u_i| / max_i |d_n u_i|
  double nu2 = 0.0;               // nu_2(|d_n u| ds)
  int boundary_index = 0;         // negative count of the boundary pencil
  double zero_tol = 0.0;
};

/// Diagnostics of the free-boundary harmonic-map conditions for a map into the
/// unit ball with unit-norm boundary rows.
FreeBoundaryReport free_boundary_check(const DiscreteManifold& man, const VectorField& u,
                                       double tol, const EigOptions& opts = {});

/// Effective target dimension: numerical rank of the vertex-by-ambient map
/// matrix at the given relative singular-value cutoff.
int stabilization_probe(const SphereMap& map, double svd_tol);

struct Recombination {
  Eigen::MatrixXd map;        // vertex x rank, before row normalization
  double unit_residual = 0.0; // max_i | |row_i|^2 - 1 |
  int rank = 0;
};

/// Least-squares solve for a symmetric PSD coefficient matrix Q with
/// Phi(x)^T Q Phi(x) ~ 1, factored to map coordinates. Mirrors the
/// eigenfunction construction used by the criticality results.
Recombination unit_norm_recombination(const DiscreteManifold& man, const Eigen::MatrixXd& basis);

}  // namespace sdl
