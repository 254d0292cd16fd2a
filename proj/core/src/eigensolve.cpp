// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#include "sdl/eigensolve.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>

#include "sdl/rng.hpp"

namespace sdl {

namespace {

// Relative residuals of A f = nu B f with diagonal B.
Eigen::VectorXd pencil_residuals(const SpMat& A, const Eigen::VectorXd& b,
                                 const Eigen::VectorXd& values, const Eigen::MatrixXd& vectors) {
  Eigen::VectorXd res(values.size());
  for (int j = 0; j < values.size(); ++j) {
    Eigen::VectorXd Af = A * vectors.col(j);
    Eigen::VectorXd Bf = b.cwiseProduct(vectors.col(j));
    res[j] =
        (Af - values[j] * Bf).norm() / (Af.norm() + std::abs(values[j]) * Bf.norm() + 1e-300);
  }
  return res;
}

struct TopPairs {
  Eigen::VectorXd mu;  // descending
  Eigen::MatrixXd x;   // S-orthonormal columns
  int iterations = 0;
  bool converged = false;
  double worst_residual = 0.0;
};

// Subspace iteration for the top eigenpairs of S^{-1} diag(t): S sparse SPD
// (prefactored), t >= 0. The operator is self-adjoint in the S inner product;
// Rayleigh-Ritz solves the projected pencil (X^T diag(t) X, X^T S X) each sweep
// and convergence is judged by the relative residual of the leading block.
TopPairs subspace_top(const Eigen::SimplicialLLT<SpMat>& S_factor, const SpMat& S,
                      const Eigen::VectorXd& t, int count, const EigOptions& opts) {
  const int n = static_cast<int>(t.size());
  const int p = std::min(n, count + opts.block_extra);
  Rng rng(opts.seed);
  Eigen::MatrixXd X = rng.normal_matrix(n, p);
  X.col(0).setOnes();  // constants are exact eigenvectors of the stiffness pencils

  TopPairs out;
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (it > 0) X = S_factor.solve(t.asDiagonal() * X);

    Eigen::MatrixXd SX = S * X;
    Eigen::MatrixXd G = X.transpose() * SX;
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (G + G.transpose()));
    if (llt.info() != Eigen::Success) {
      Rng r2(opts.seed + 17 * (it + 1));
      X += (1e-10 * std::sqrt(G.diagonal().maxCoeff() / n)) * r2.normal_matrix(n, p);
      SX = S * X;
      G = X.transpose() * SX;
      llt.compute(0.5 * (G + G.transpose()));
      if (llt.info() != Eigen::Success)
        throw EigenSolveError("subspace iteration: Gram factorization failed");
    }
    Eigen::MatrixXd U = llt.matrixU();
    X = U.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(X);
    SX = U.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(SX);

    Eigen::MatrixXd TX = t.asDiagonal() * X;
    Eigen::MatrixXd P = X.transpose() * TX;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (P + P.transpose()));
    if (es.info() != Eigen::Success)
      throw EigenSolveError("subspace iteration: projected eigensolve failed");
    Eigen::VectorXd mu = es.eigenvalues().reverse();
    Eigen::MatrixXd C = es.eigenvectors().rowwise().reverse();
    X = X * C;
    SX = SX * C;
    TX = TX * C;
    out.iterations = it + 1;
    out.mu = mu;

    const int lead = std::min(count, p);
    double worst = 0.0;
    for (int j = 0; j < lead; ++j) {
      const double r = (TX.col(j) - mu[j] * SX.col(j)).norm() /
                       (TX.col(j).norm() + std::abs(mu[j]) * SX.col(j).norm() + 1e-300);
      worst = std::max(worst, r);
    }
    out.worst_residual = worst;
    if (worst < opts.tol && it > 0) {
      out.x = X;
      out.converged = true;
      return out;
    }
    if (p == n && it >= 2) {  // full space: Ritz is exact, stop at the floor
      out.x = X;
      out.converged = worst < 1e-8;
      return out;
    }
  }
  out.x = X;
  return out;
}

bool use_dense(int n, const EigOptions& opts) {
  if (opts.backend == EigOptions::Backend::Dense) return true;
  if (opts.backend == EigOptions::Backend::Iterative) return false;
  return n <= opts.dense_threshold;
}

}  // namespace

EigPairs lowest_pairs(const SpMat& A, const Eigen::VectorXd& b, const EigOptions& opts) {
  const int n = static_cast<int>(b.size());
  if (A.rows() != n || A.cols() != n) throw std::invalid_argument("lowest_pairs: size mismatch");
  if ((b.array() <= 0.0).any()) throw std::invalid_argument("lowest_pairs: b must be positive");
  const int count = std::min(opts.count, n);

  const Eigen::VectorXd dinv = b.cwiseSqrt().cwiseInverse();
  EigPairs out;

  if (use_dense(n, opts)) {
    Eigen::MatrixXd C = dinv.asDiagonal() * Eigen::MatrixXd(A) * dinv.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (C + C.transpose()));
    if (es.info() != Eigen::Success) throw EigenSolveError("dense eigensolver failed");
    out.values = es.eigenvalues().head(count);
    out.vectors = dinv.asDiagonal() * es.eigenvectors().leftCols(count);
    out.backend = "dense";
    out.iterations = 1;
  } else {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(A.nonZeros());
    for (int k = 0; k < A.outerSize(); ++k)
      for (SpMat::InnerIterator itr(A, k); itr; ++itr)
        trip.emplace_back(itr.row(), itr.col(), itr.value() * dinv[itr.row()] * dinv[itr.col()]);
    SpMat C(n, n);
    C.setFromTriplets(trip.begin(), trip.end());

    // Shift strictly below the spectrum (Gershgorin bound) so C - sigma I is SPD.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), offsum = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < C.outerSize(); ++k)
      for (SpMat::InnerIterator itr(C, k); itr; ++itr) {
        if (itr.row() == itr.col())
          diag[itr.row()] += itr.value();
        else
          offsum[itr.row()] += std::abs(itr.value());
      }
    const double lower = (diag - offsum).minCoeff();
    const double scale = std::max(1.0, diag.cwiseAbs().maxCoeff() + offsum.maxCoeff());
    const double sigma = lower - 1e-3 * scale;

    SpMat S = C;
    for (int i = 0; i < n; ++i) S.coeffRef(i, i) -= sigma;
    S.makeCompressed();
    Eigen::SimplicialLLT<SpMat> llt(S);
    if (llt.info() != Eigen::Success)
      throw EigenSolveError("lowest_pairs: shifted factorization failed");

    TopPairs top = subspace_top(llt, S, Eigen::VectorXd::Ones(n), count, opts);
    if (!top.converged)
      throw EigenSolveError("lowest_pairs: subspace iteration did not converge",
                            top.worst_residual);
    out.values.resize(count);
    out.vectors.resize(n, count);
    for (int j = 0; j < count; ++j) {
      out.values[j] = sigma + 1.0 / top.mu[j];
      out.vectors.col(j) = dinv.asDiagonal() * top.x.col(j);
      const double nb = std::sqrt(out.vectors.col(j).dot(b.cwiseProduct(out.vectors.col(j))));
      out.vectors.col(j) /= nb;
    }
    out.iterations = top.iterations;
    out.backend = "iterative";
  }
  out.residuals = pencil_residuals(A, b, out.values, out.vectors);
  return out;
}

namespace {

EigPairs weighted_from_shifted(const Eigen::VectorXd& mu, const Eigen::MatrixXd& x,
                               const SpMat& K, const Eigen::VectorXd& w, int count,
                               const std::string& backend, int iterations) {
  // mu: descending eigenvalues of the pencil (diag(w), K + diag(w)); lambda = 1/mu - 1.
  int usable = 0;
  for (int j = 0; j < mu.size(); ++j)
    if (mu[j] > 1e-12) ++usable;
  if (usable < count)
    throw EigenSolveError(
        "weighted pencil: requested more finite eigenvalues than the weight support carries");

  EigPairs out;
  out.values.resize(count);
  out.vectors.resize(x.rows(), count);
  for (int j = 0; j < count; ++j) {
    double lambda = 1.0 / mu[j] - 1.0;
    if (lambda < 0.0 && lambda > -1e-9) lambda = 0.0;  // snap roundoff at the kernel
    out.values[j] = lambda;
    out.vectors.col(j) = x.col(j);
    const double nb = std::sqrt(x.col(j).dot(w.cwiseProduct(x.col(j))));
    if (nb > 0.0) out.vectors.col(j) /= nb;
  }
  out.backend = backend;
  out.iterations = iterations;
  out.residuals = pencil_residuals(K, w, out.values, out.vectors);
  return out;
}

}  // namespace

EigPairs lowest_weighted(const SpMat& K, const Eigen::VectorXd& w, const EigOptions& opts) {
  const int n = static_cast<int>(w.size());
  if (K.rows() != n || K.cols() != n) throw std::invalid_argument("lowest_weighted: size mismatch");
  if ((w.array() < 0.0).any())
    throw std::invalid_argument("lowest_weighted: w must be nonnegative");
  if (!(w.sum() > 0.0))
    throw std::invalid_argument("lowest_weighted: w must not vanish identically");
  const int count = std::min(opts.count, n);

  SpMat S = K;
  for (int i = 0; i < n; ++i) S.coeffRef(i, i) += w[i];
  S.makeCompressed();

  if (use_dense(n, opts)) {
    Eigen::MatrixXd Sd(S);
    Eigen::MatrixXd Wd = Eigen::MatrixXd::Zero(n, n);
    Wd.diagonal() = w;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Wd, Sd);
    if (es.info() != Eigen::Success) throw EigenSolveError("dense weighted eigensolver failed");
    Eigen::VectorXd mu(n);
    Eigen::MatrixXd x(n, n);
    for (int j = 0; j < n; ++j) {
      mu[j] = es.eigenvalues()[n - 1 - j];
      x.col(j) = es.eigenvectors().col(n - 1 - j);
    }
    return weighted_from_shifted(mu, x, K, w, count, "dense", 1);
  }

  Eigen::SimplicialLLT<SpMat> llt(S);
  if (llt.info() != Eigen::Success)
    throw EigenSolveError("lowest_weighted: K + diag(w) factorization failed (disconnected mesh?)");
  TopPairs top = subspace_top(llt, S, w, count, opts);
  if (!top.converged)
    throw EigenSolveError("lowest_weighted: subspace iteration did not converge",
                          top.worst_residual);
  return weighted_from_shifted(top.mu, top.x, K, w, count, "iterative", top.iterations);
}

EigPairs lowest_weighted_dense(const Eigen::MatrixXd& A, const Eigen::VectorXd& w,
                               const EigOptions& opts) {
  const int n = static_cast<int>(w.size());
  if (A.rows() != n || A.cols() != n)
    throw std::invalid_argument("lowest_weighted_dense: size mismatch");
  const int count = std::min(opts.count, n);
  Eigen::MatrixXd S = 0.5 * (A + A.transpose());
  S.diagonal() += w;
  Eigen::MatrixXd Wd = Eigen::MatrixXd::Zero(n, n);
  Wd.diagonal() = w;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Wd, S);
  if (es.info() != Eigen::Success)
    throw EigenSolveError("lowest_weighted_dense: eigensolver failed");
  Eigen::VectorXd mu(n);
  Eigen::MatrixXd x(n, n);
  for (int j = 0; j < n; ++j) {
    mu[j] = es.eigenvalues()[n - 1 - j];
    x.col(j) = es.eigenvectors().col(n - 1 - j);
  }
  SpMat As = A.sparseView();
  return weighted_from_shifted(mu, x, As, w, count, "dense", 1);
}

}  // namespace sdl
