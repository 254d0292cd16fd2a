// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <string>
#include <vector>

#include "sdl/eigensolve.hpp"
#include "sdl/mesh.hpp"

namespace sdl {

/// Nonnegative per-vertex density beta (beta not identically zero). For the
/// Steklov problems the values are indexed along man.boundary instead.
struct DensityField {
  ScalarField values;
};

/// Signed per-vertex potential V. No sign restriction.
struct PotentialField {
  ScalarField values;
};

struct SpectrumResult {
  Eigen::VectorXd eigenvalues;          // ascending, with multiplicity
  Eigen::MatrixXd eigenvectors;         // columns, orthonormal in the pencil's right-hand product
  std::vector<int> multiplicity_group;  // group id per eigenvalue
  Eigen::VectorXd residuals;
  std::string problem_tag;
  double zero_tol = 0.0;  // tolerance used to classify zero modes
};

/// Group ids for eigenvalues whose relative gap is below rel_gap.
std::vector<int> multiplicity_groups(const Eigen::VectorXd& values, double rel_gap = 1e-6);

double total_mass(const DiscreteManifold& man, const DensityField& beta);

/// First count+1 eigenpairs (lambda_0 = 0 included) of K f = lambda M_beta f,
/// M_beta = diag(m_i beta_i). Degenerate beta handled per lowest_weighted.
SpectrumResult weighted_laplace_spectrum(const DiscreteManifold& man, const DensityField& beta,
                                         int count, const EigOptions& opts = {});

/// First count eigenpairs of (K - M_V) f = nu M f, M_V = diag(m_i V_i).
SpectrumResult schrodinger_spectrum(const DiscreteManifold& man, const PotentialField& V,
                                    int count, const EigOptions& opts = {});

struct NegativeCount {
  int negative = 0;   // eigenvalues nu < -zero_tol
  int near_zero = 0;  // |nu| <= zero_tol, reported for scrutiny
};

/// N(V): number of negative Schrodinger eigenvalues.
NegativeCount count_negative(const DiscreteManifold& man, const PotentialField& V,
                             double zero_tol, const EigOptions& opts = {});

/// True iff nu_{m+1}(V) >= -zero_tol (1-based eigenvalue indexing), i.e. V lies
/// in the discrete P_m.
bool membership_Pm(const DiscreteManifold& man, const PotentialField& V, int m,
                   double zero_tol, const EigOptions& opts = {});

/// Dirichlet-to-Neumann block: DtN = K_BB - K_BI K_II^{-1} K_IB.
struct DtnOperator {
  Eigen::MatrixXd matrix;     // nb x nb on boundary traces, ordered as man.boundary
  std::vector<int> boundary;  // copy of man.boundary
};
DtnOperator build_dtn(const DiscreteManifold& man);

/// Componentwise harmonic extension of boundary values (rows ordered as
/// man.boundary) to the full vertex set.
Eigen::MatrixXd harmonic_extension(const DiscreteManifold& man,
                                   const Eigen::MatrixXd& boundary_values);

/// Steklov spectrum with boundary density rho (indexed along man.boundary):
/// DtN f = sigma S_rho f, S_rho = diag(s_i rho_i). sigma_0 = 0 with constant
/// eigenfunction. Returns count+1 pairs including sigma_0.
SpectrumResult steklov_spectrum(const DiscreteManifold& man, const DensityField& rho,
                                int count, const EigOptions& opts = {});

/// Robin-type boundary potential (variational form nu_m(v ds_g)): eigenpairs
/// of (K - S_v) f = nu M f where S_v places s_i v_i on boundary vertices.
/// Note: the boundary condition this discretizes is d_n u = v u; the value v
/// enters the boundary term of the quadratic form, not the eigenvalue.
SpectrumResult boundary_schrodinger_spectrum(const DiscreteManifold& man,
                                             const PotentialField& v, int count,
                                             const EigOptions& opts = {});

/// F_m(beta) = lambda_m(beta) * int beta dv. Scale invariant.
double functional_Fm(const DiscreteManifold& man, const DensityField& beta, int m,
                     const EigOptions& opts = {});

/// G_m(rho) = sigma_m(rho) * int_{boundary} rho ds. Scale invariant.
double functional_Gm(const DiscreteManifold& man, const DensityField& rho, int m,
                     const EigOptions& opts = {});

/// First-order eigenvalue perturbation form A(W)[phi, psi] = -sum_i m_i W_i phi_i psi_i
/// on an M-orthonormal eigenspace basis (columns). Orthonormality checked to 1e-6.
Eigen::MatrixXd eigenvalue_perturbation_form(const DiscreteManifold& man,
                                             const Eigen::MatrixXd& eigenspace,
                                             const ScalarField& W);

/// Zero-mode classification tolerance: 10x a mesh-dependent discretization
/// error estimate from the beta = 1 calibration run (first nonzero eigenvalue
/// times squared mesh scale, or the numerical spread of its multiplet if larger).
double calibrate_zero_tol(const DiscreteManifold& man, const EigOptions& opts = {});

/// Same calibration against the rho = 1 Steklov run (boundary problems).
double calibrate_zero_tol_boundary(const DiscreteManifold& man, const EigOptions& opts = {});

/// Writes the spectrum CSV (index, eigenvalue, multiplicity_group, residual)
/// with a leading `#` header comment carrying the problem tag and tolerances.
void save_spectrum_csv(const SpectrumResult& spec, const std::string& path);

/// Optional eigenvector matrix file: vertex-major text, one row per vertex.
void save_eigenvectors(const SpectrumResult& spec, const std::string& path);

}  // namespace sdl
