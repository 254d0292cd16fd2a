// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <string>
#include <vector>

namespace sdl {

using ScalarField = Eigen::VectorXd;  // one real per vertex
using VectorField = Eigen::MatrixXd;  // one (k+1)-vector per vertex (row i = value at vertex i)
using SpMat = Eigen::SparseMatrix<double>;

/// A cell with piecewise-constant gradient: a triangle on surface meshes, a
/// grid cell (base corner + one neighbor per axis) on flat tori, a segment in
/// 1-d. `grad` maps the stacked vertex values to the gradient in the element
/// frame, so volume * |grad * u|^2 integrates |du|^2 over the element and
/// sum_el volume * grad^T grad reassembles the stiffness form exactly.
struct Element {
  std::vector<int> verts;
  double volume = 0.0;
  Eigen::MatrixXd grad;   // dim x verts.size()
  Eigen::MatrixXd frame;  // ambient_dim x dim, orthonormal columns
};

/// Discrete stand-in for a Riemannian domain (M^n, g): mesh, Dirichlet
/// (stiffness) form, lumped mass, optional boundary structure.
struct DiscreteManifold {
  int dim = 0;                    // intrinsic dimension n in {1,2,3}
  Eigen::MatrixXd positions;      // vertex_count x ambient_dim
  SpMat stiffness;                // K: symmetric, PSD, K*1 = 0
  Eigen::VectorXd mass;           // m_i > 0, sum m_i = Vol(M, g)
  std::vector<int> boundary;      // boundary vertex ids, ordered around the boundary
  Eigen::VectorXd boundary_mass;  // s_i aligned with `boundary`
  std::vector<Element> elements;
  std::string tag;                // builder name + parameters, reproducible
  double scale = 0.0;             // representative element diameter

  int vertex_count() const { return static_cast<int>(positions.rows()); }
  int ambient_dim() const { return static_cast<int>(positions.cols()); }
  bool has_boundary() const { return !boundary.empty(); }
  double volume() const { return mass.sum(); }
  double mesh_scale() const { return scale; }
  bool is_boundary_vertex(int v) const;
  /// Index into `boundary`/`boundary_mass` for vertex v, or -1.
  int boundary_index(int v) const;
};

/// Periodic uniform grid on a flat torus with the given side lengths,
/// `resolution` grid points per axis. Second-order finite differences.
DiscreteManifold build_flat_torus(const std::vector<double>& side_lengths, int resolution);

/// Subdivided icosahedron projected to the unit sphere, cotangent stiffness,
/// one-third triangle-area lumped mass. subdivisions in [1, 7].
DiscreteManifold build_icosphere(int subdivisions);

/// Triangulated unit disk: center vertex plus rings j/R with 6j vertices.
/// Boundary vertices are listed in order around the circle with half-edge
/// lumped boundary mass.
DiscreteManifold build_disk_mesh(int radial_resolution);

/// (1/2) sum_c u_c^T K u_c. Zero iff u is constant per connected component.
double dirichlet_energy(const DiscreteManifold& man, const VectorField& u);

/// Per-vertex energy density e_i >= 0 with sum_i m_i e_i = 2 * dirichlet_energy
/// exactly: element energies are distributed to vertices by equal volume shares.
ScalarField energy_density(const DiscreteManifold& man, const VectorField& u);

/// Writes `<path_base>.off` (OFF-style text: header, counts, vertex
/// coordinates, element vertex lists) and `<path_base>.meta` (builder tag and
/// parameters as key = value lines). Lossless for positions and connectivity.
void save_mesh(const DiscreteManifold& man, const std::string& path_base);

/// Rebuilds the manifold from the sidecar's builder tag and verifies that the
/// OFF payload matches bit-for-bit (round-trip check). Throws on mismatch.
DiscreteManifold load_mesh(const std::string& path_base);

}  // namespace sdl
