// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#include "sdl/spectral.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sdl/runio.hpp"

namespace sdl {

std::vector<int> multiplicity_groups(const Eigen::VectorXd& values, double rel_gap) {
  std::vector<int> group(values.size(), 0);
  if (values.size() == 0) return group;
  const double scale_max = values.cwiseAbs().maxCoeff();
  int g = 0;
  for (int i = 1; i < values.size(); ++i) {
    const double local = std::max({std::abs(values[i]), std::abs(values[i - 1]),
                                   1e-8 * scale_max});
    if (values[i] - values[i - 1] > rel_gap * local) ++g;
    group[i] = g;
  }
  return group;
}

double total_mass(const DiscreteManifold& man, const DensityField& beta) {
  return man.mass.dot(beta.values);
}

namespace {

void check_density(const DiscreteManifold& man, const DensityField& beta) {
  if (beta.values.size() != man.vertex_count())
    throw std::invalid_argument("density field size does not match vertex count");
  if ((beta.values.array() < 0.0).any())
    throw std::invalid_argument("density must be nonnegative");
  if (!(man.mass.dot(beta.values) > 0.0))
    throw std::invalid_argument("density must not vanish identically");
}

void check_boundary_field(const DiscreteManifold& man, const ScalarField& f, const char* what) {
  if (!man.has_boundary()) throw std::invalid_argument(std::string(what) + ": manifold has no boundary");
  if (f.size() != static_cast<Eigen::Index>(man.boundary.size()))
    throw std::invalid_argument(std::string(what) + ": field size does not match boundary size");
}

SpectrumResult pack(EigPairs pairs, std::string tag, double zero_tol) {
  SpectrumResult out;
  out.eigenvalues = std::move(pairs.values);
  out.eigenvectors = std::move(pairs.vectors);
  out.residuals = std::move(pairs.residuals);
  out.multiplicity_group = multiplicity_groups(out.eigenvalues);
  out.problem_tag = std::move(tag);
  out.zero_tol = zero_tol;
  return out;
}

}  // namespace

SpectrumResult weighted_laplace_spectrum(const DiscreteManifold& man, const DensityField& beta,
                                         int count, const EigOptions& opts) {
  check_density(man, beta);
  if (count < 1) throw std::invalid_argument("weighted_laplace_spectrum: count must be >= 1");
  EigOptions o = opts;
  o.count = count + 1;  // lambda_0 = 0 included
  Eigen::VectorXd w = man.mass.cwiseProduct(beta.values);
  return pack(lowest_weighted(man.stiffness, w, o), "weighted_laplace " + man.tag, 0.0);
}

SpectrumResult schrodinger_spectrum(const DiscreteManifold& man, const PotentialField& V,
                                    int count, const EigOptions& opts) {
  if (V.values.size() != man.vertex_count())
    throw std::invalid_argument("schrodinger_spectrum: potential size mismatch");
  if (count < 1) throw std::invalid_argument("schrodinger_spectrum: count must be >= 1");
  EigOptions o = opts;
  o.count = count;
  SpMat A = man.stiffness;
  for (int i = 0; i < man.vertex_count(); ++i)
    A.coeffRef(i, i) -= man.mass[i] * V.values[i];
  A.makeCompressed();
  return pack(lowest_pairs(A, man.mass, o), "schrodinger " + man.tag, 0.0);
}

NegativeCount count_negative(const DiscreteManifold& man, const PotentialField& V,
                             double zero_tol, const EigOptions& opts) {
  if (!(zero_tol > 0.0)) throw std::invalid_argument("count_negative: zero_tol must be positive");
  const int n = man.vertex_count();
  int count = std::min(n, std::max(8, opts.count));
  for (;;) {
    SpectrumResult spec = schrodinger_spectrum(man, V, count, opts);
    if (spec.eigenvalues[spec.eigenvalues.size() - 1] > zero_tol || count >= n) {
      NegativeCount out;
      for (int i = 0; i < spec.eigenvalues.size(); ++i) {
        if (spec.eigenvalues[i] < -zero_tol) ++out.negative;
        else if (std::abs(spec.eigenvalues[i]) <= zero_tol) ++out.near_zero;
      }
      return out;
    }
    count = std::min(n, 2 * count);
  }
}

bool membership_Pm(const DiscreteManifold& man, const PotentialField& V, int m,
                   double zero_tol, const EigOptions& opts) {
  if (m < 1) throw std::invalid_argument("membership_Pm: m must be >= 1");
  SpectrumResult spec = schrodinger_spectrum(man, V, m + 1, opts);
  return spec.eigenvalues[m] >= -zero_tol;  // nu_{m+1} in 1-based counting
}

DtnOperator build_dtn(const DiscreteManifold& man) {
  if (!man.has_boundary()) throw std::invalid_argument("build_dtn: manifold has no boundary");
  const int n = man.vertex_count();
  const int nb = static_cast<int>(man.boundary.size());
  std::vector<int> where(n, -1);  // >=0: boundary slot, -1: interior
  for (int t = 0; t < nb; ++t) where[man.boundary[t]] = t;
  std::vector<int> interior;
  interior.reserve(n - nb);
  for (int i = 0; i < n; ++i)
    if (where[i] < 0) interior.push_back(i);
  const int ni = static_cast<int>(interior.size());
  std::vector<int> islot(n, -1);
  for (int t = 0; t < ni; ++t) islot[interior[t]] = t;

  std::vector<Eigen::Triplet<double>> tii;
  Eigen::MatrixXd Kib = Eigen::MatrixXd::Zero(ni, nb);
  Eigen::MatrixXd Kbb = Eigen::MatrixXd::Zero(nb, nb);
  for (int k = 0; k < man.stiffness.outerSize(); ++k)
    for (SpMat::InnerIterator it(man.stiffness, k); it; ++it) {
      const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
      const bool rb = where[r] >= 0, cb = where[c] >= 0;
      if (!rb && !cb) tii.emplace_back(islot[r], islot[c], it.value());
      else if (!rb && cb) Kib(islot[r], where[c]) += it.value();
      else if (rb && cb) Kbb(where[r], where[c]) += it.value();
    }
  SpMat Kii(ni, ni);
  Kii.setFromTriplets(tii.begin(), tii.end());
  Eigen::SimplicialLLT<SpMat> llt(Kii);
  if (llt.info() != Eigen::Success)
    throw EigenSolveError("build_dtn: interior stiffness block is singular");

  DtnOperator dtn;
  dtn.boundary = man.boundary;
  dtn.matrix = Kbb - Kib.transpose() * llt.solve(Kib);
  dtn.matrix = 0.5 * (dtn.matrix + dtn.matrix.transpose()).eval();
  return dtn;
}

Eigen::MatrixXd harmonic_extension(const DiscreteManifold& man,
                                   const Eigen::MatrixXd& boundary_values) {
  if (!man.has_boundary()) throw std::invalid_argument("harmonic_extension: no boundary");
  const int n = man.vertex_count();
  const int nb = static_cast<int>(man.boundary.size());
  if (boundary_values.rows() != nb)
    throw std::invalid_argument("harmonic_extension: boundary row count mismatch");
  std::vector<int> where(n, -1);
  for (int t = 0; t < nb; ++t) where[man.boundary[t]] = t;
  std::vector<int> interior;
  for (int i = 0; i < n; ++i)
    if (where[i] < 0) interior.push_back(i);
  const int ni = static_cast<int>(interior.size());
  std::vector<int> islot(n, -1);
  for (int t = 0; t < ni; ++t) islot[interior[t]] = t;

  std::vector<Eigen::Triplet<double>> tii;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(ni, boundary_values.cols());
  for (int k = 0; k < man.stiffness.outerSize(); ++k)
    for (SpMat::InnerIterator it(man.stiffness, k); it; ++it) {
      const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
      if (where[r] >= 0) continue;
      if (where[c] < 0) tii.emplace_back(islot[r], islot[c], it.value());
      else rhs.row(islot[r]) -= it.value() * boundary_values.row(where[c]);
    }
  SpMat Kii(ni, ni);
  Kii.setFromTriplets(tii.begin(), tii.end());
  Eigen::SimplicialLLT<SpMat> llt(Kii);
  if (llt.info() != Eigen::Success)
    throw EigenSolveError("harmonic_extension: interior stiffness block is singular");
  Eigen::MatrixXd ui = llt.solve(rhs);

  Eigen::MatrixXd full(n, boundary_values.cols());
  for (int i = 0; i < n; ++i)
    full.row(i) = where[i] >= 0 ? boundary_values.row(where[i]) : ui.row(islot[i]);
  return full;
}

SpectrumResult steklov_spectrum(const DiscreteManifold& man, const DensityField& rho,
                                int count, const EigOptions& opts) {
  check_boundary_field(man, rho.values, "steklov_spectrum");
  if ((rho.values.array() < 0.0).any())
    throw std::invalid_argument("steklov_spectrum: rho must be nonnegative");
  if (!(man.boundary_mass.dot(rho.values) > 0.0))
    throw std::invalid_argument("steklov_spectrum: rho must not vanish identically");
  if (count < 1) throw std::invalid_argument("steklov_spectrum: count must be >= 1");
  DtnOperator dtn = build_dtn(man);
  EigOptions o = opts;
  o.count = count + 1;  // sigma_0 = 0 included
  Eigen::VectorXd w = man.boundary_mass.cwiseProduct(rho.values);
  return pack(lowest_weighted_dense(dtn.matrix, w, o), "steklov " + man.tag, 0.0);
}

SpectrumResult boundary_schrodinger_spectrum(const DiscreteManifold& man,
                                             const PotentialField& v, int count,
                                             const EigOptions& opts) {
  check_boundary_field(man, v.values, "boundary_schrodinger_spectrum");
  if (count < 1) throw std::invalid_argument("boundary_schrodinger_spectrum: count must be >= 1");
  EigOptions o = opts;
  o.count = count;
  SpMat A = man.stiffness;
  for (size_t t = 0; t < man.boundary.size(); ++t) {
    const int i = man.boundary[t];
    A.coeffRef(i, i) -= man.boundary_mass[static_cast<Eigen::Index>(t)] *
                        v.values[static_cast<Eigen::Index>(t)];
  }
  A.makeCompressed();
  return pack(lowest_pairs(A, man.mass, o), "boundary_schrodinger " + man.tag, 0.0);
}

double functional_Fm(const DiscreteManifold& man, const DensityField& beta, int m,
                     const EigOptions& opts) {
  if (m < 1) throw std::invalid_argument("functional_Fm: m must be >= 1");
  SpectrumResult spec = weighted_laplace_spectrum(man, beta, m, opts);
  return spec.eigenvalues[m] * total_mass(man, beta);
}

double functional_Gm(const DiscreteManifold& man, const DensityField& rho, int m,
                     const EigOptions& opts) {
  if (m < 1) throw std::invalid_argument("functional_Gm: m must be >= 1");
  SpectrumResult spec = steklov_spectrum(man, rho, m, opts);
  return spec.eigenvalues[m] * man.boundary_mass.dot(rho.values);
}

Eigen::MatrixXd eigenvalue_perturbation_form(const DiscreteManifold& man,
                                             const Eigen::MatrixXd& eigenspace,
                                             const ScalarField& W) {
  if (eigenspace.rows() != man.vertex_count() || W.size() != man.vertex_count())
    throw std::invalid_argument("eigenvalue_perturbation_form: size mismatch");
  const int d = static_cast<int>(eigenspace.cols());
  // Orthonormality in the M inner product, checked to 1e-6.
  Eigen::MatrixXd G = eigenspace.transpose() * man.mass.asDiagonal() * eigenspace;
  if ((G - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-6)
    throw std::invalid_argument("eigenvalue_perturbation_form: eigenspace not M-orthonormal");
  Eigen::VectorXd mw = man.mass.cwiseProduct(W);
  return -(eigenspace.transpose() * mw.asDiagonal() * eigenspace);
}

namespace {

double calibrated_tol(double lambda_ref, double spread, double scale_sq) {
  return 10.0 * std::max(spread, lambda_ref * scale_sq);
}

}  // namespace

double calibrate_zero_tol(const DiscreteManifold& man, const EigOptions& opts) {
  DensityField one{Eigen::VectorXd::Ones(man.vertex_count())};
  SpectrumResult spec = weighted_laplace_spectrum(man, one, 4, opts);
  const double lam1 = spec.eigenvalues[1];
  std::vector<int> grp = multiplicity_groups(spec.eigenvalues, 0.05);
  double lo = lam1, hi = lam1;
  for (int i = 1; i < spec.eigenvalues.size(); ++i)
    if (grp[i] == grp[1]) {
      lo = std::min(lo, spec.eigenvalues[i]);
      hi = std::max(hi, spec.eigenvalues[i]);
    }
  const double h = man.mesh_scale();
  return calibrated_tol(lam1, hi - lo, h * h);
}

double calibrate_zero_tol_boundary(const DiscreteManifold& man, const EigOptions& opts) {
  DensityField one{Eigen::VectorXd::Ones(static_cast<Eigen::Index>(man.boundary.size()))};
  SpectrumResult spec = steklov_spectrum(man, one, 3, opts);
  const double sig1 = spec.eigenvalues[1];
  std::vector<int> grp = multiplicity_groups(spec.eigenvalues, 0.05);
  double lo = sig1, hi = sig1;
  for (int i = 1; i < spec.eigenvalues.size(); ++i)
    if (grp[i] == grp[1]) {
      lo = std::min(lo, spec.eigenvalues[i]);
      hi = std::max(hi, spec.eigenvalues[i]);
    }
  const double hb = 2.0 * man.boundary_mass.mean();  // boundary edge length scale
  return calibrated_tol(sig1, hi - lo, hb * hb);
}

void save_spectrum_csv(const SpectrumResult& spec, const std::string& path) {
  std::ostringstream tagline;
  tagline << "problem = " << spec.problem_tag << " zero_tol = " << format_double(spec.zero_tol);
  CsvWriter csv(path, {"index", "eigenvalue", "multiplicity_group", "residual"},
                {tagline.str()});
  for (int i = 0; i < spec.eigenvalues.size(); ++i)
    csv.row({std::to_string(i), format_double(spec.eigenvalues[i]),
             std::to_string(spec.multiplicity_group[i]), format_double(spec.residuals[i])});
}

void save_eigenvectors(const SpectrumResult& spec, const std::string& path) {
  save_map_checkpoint(path, spec.eigenvectors,
                      {{"content", "eigenvectors (vertex-major, one eigenvector per column)"},
                       {"problem", spec.problem_tag}});
}

}  // namespace sdl
