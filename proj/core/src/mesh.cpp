// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#include "sdl/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "sdl/runio.hpp"

namespace sdl {

namespace {

SpMat assemble_stiffness(int n, const std::vector<Element>& elements) {
  std::vector<Eigen::Triplet<double>> trip;
  for (const Element& el : elements) {
    const int nv = static_cast<int>(el.verts.size());
    Eigen::MatrixXd local = el.volume * el.grad.transpose() * el.grad;  // nv x nv
    for (int a = 0; a < nv; ++a)
      for (int b = 0; b < nv; ++b)
        if (local(a, b) != 0.0) trip.emplace_back(el.verts[a], el.verts[b], local(a, b));
  }
  SpMat K(n, n);
  K.setFromTriplets(trip.begin(), trip.end());
  K.makeCompressed();
  return K;
}

Eigen::VectorXd lumped_mass_from_elements(int n, const std::vector<Element>& elements) {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(n);
  for (const Element& el : elements) {
    const double share = el.volume / static_cast<double>(el.verts.size());
    for (int v : el.verts) m[v] += share;
  }
  return m;
}

double element_diameter(const DiscreteManifold& man, const Element& el) {
  double d = 0.0;
  for (size_t a = 0; a < el.verts.size(); ++a)
    for (size_t b = a + 1; b < el.verts.size(); ++b)
      d = std::max(d, (man.positions.row(el.verts[a]) - man.positions.row(el.verts[b])).norm());
  return d;
}

void finalize(DiscreteManifold& man) {
  man.stiffness = assemble_stiffness(man.vertex_count(), man.elements);
  man.mass = lumped_mass_from_elements(man.vertex_count(), man.elements);
  double s = 0.0;
  for (const Element& el : man.elements) s += element_diameter(man, el);
  man.scale = man.elements.empty() ? 0.0 : s / static_cast<double>(man.elements.size());
}

Element triangle_element(const Eigen::MatrixXd& positions, int a, int b, int c) {
  Element el;
  el.verts = {a, b, c};
  Eigen::Vector3d p0 = positions.row(a), p1 = positions.row(b), p2 = positions.row(c);
  Eigen::Vector3d e1 = p1 - p0, e2 = p2 - p0;
  Eigen::Vector3d nrm = e1.cross(e2);
  const double area = 0.5 * nrm.norm();
  if (!(area > 0.0)) throw std::runtime_error("degenerate triangle in mesh");
  el.volume = area;
  Eigen::Vector3d t1 = e1.normalized();
  Eigen::Vector3d t2 = (e2 - e2.dot(t1) * t1).normalized();
  el.frame.resize(3, 2);
  el.frame.col(0) = t1;
  el.frame.col(1) = t2;
  Eigen::Matrix2d B;  // edge matrix in frame coordinates
  B << e1.dot(t1), e2.dot(t1), e1.dot(t2), e2.dot(t2);
  Eigen::Matrix<double, 2, 3> D;
  D << -1, 1, 0, -1, 0, 1;
  el.grad = B.transpose().inverse() * D;  // 2 x 3
  return el;
}

Element triangle_element_2d(const Eigen::MatrixXd& positions, int a, int b, int c) {
  Element el;
  el.verts = {a, b, c};
  Eigen::Vector2d p0 = positions.row(a), p1 = positions.row(b), p2 = positions.row(c);
  Eigen::Matrix2d B;
  B.col(0) = p1 - p0;
  B.col(1) = p2 - p0;
  const double det = B.determinant();
  if (!(std::abs(det) > 0.0)) throw std::runtime_error("degenerate triangle in mesh");
  el.volume = 0.5 * std::abs(det);
  el.frame = Eigen::Matrix2d::Identity();
  Eigen::Matrix<double, 2, 3> D;
  D << -1, 1, 0, -1, 0, 1;
  el.grad = B.transpose().inverse() * D;
  return el;
}

}  // namespace

bool DiscreteManifold::is_boundary_vertex(int v) const { return boundary_index(v) >= 0; }

int DiscreteManifold::boundary_index(int v) const {
  for (size_t i = 0; i < boundary.size(); ++i)
    if (boundary[i] == v) return static_cast<int>(i);
  return -1;
}

DiscreteManifold build_flat_torus(const std::vector<double>& side_lengths, int resolution) {
  const int n = static_cast<int>(side_lengths.size());
  if (n < 1 || n > 3) throw std::invalid_argument("build_flat_torus: dimension must be 1..3");
  if (resolution < 4) throw std::invalid_argument("build_flat_torus: resolution must be >= 4");
  for (double L : side_lengths)
    if (!(L > 0.0)) throw std::invalid_argument("build_flat_torus: side lengths must be positive");

  const int r = resolution;
  int nv = 1;
  for (int a = 0; a < n; ++a) nv *= r;

  std::vector<double> h(n);
  double cell_vol = 1.0;
  for (int a = 0; a < n; ++a) {
    h[a] = side_lengths[a] / r;
    cell_vol *= h[a];
  }

  DiscreteManifold man;
  man.dim = n;
  man.positions.resize(nv, n);
  auto vid = [&](const std::array<int, 3>& c) {
    int id = 0;
    for (int a = n - 1; a >= 0; --a) id = id * r + ((c[a] % r + r) % r);
    return id;
  };
  {
    std::array<int, 3> c = {0, 0, 0};
    for (int id = 0; id < nv; ++id) {
      int rest = id;
      for (int a = 0; a < n; ++a) {
        c[a] = rest % r;
        rest /= r;
      }
      for (int a = 0; a < n; ++a) man.positions(id, a) = c[a] * h[a];
    }
  }

  // One element per cell: base corner plus its n axis neighbors; the forward
  // differences from the base corner integrate |du|^2 once per edge.
  man.elements.reserve(nv);
  std::array<int, 3> c = {0, 0, 0};
  for (int id = 0; id < nv; ++id) {
    int rest = id;
    for (int a = 0; a < n; ++a) {
      c[a] = rest % r;
      rest /= r;
    }
    Element el;
    el.volume = cell_vol;
    el.verts.resize(n + 1);
    el.verts[0] = id;
    for (int a = 0; a < n; ++a) {
      std::array<int, 3> cn = c;
      cn[a] += 1;
      el.verts[a + 1] = vid(cn);
    }
    el.grad = Eigen::MatrixXd::Zero(n, n + 1);
    for (int a = 0; a < n; ++a) {
      el.grad(a, 0) -= 1.0 / h[a];
      el.grad(a, a + 1) += 1.0 / h[a];
    }
    el.frame = Eigen::MatrixXd::Identity(n, n);
    man.elements.push_back(std::move(el));
  }

  std::ostringstream tag;
  tag << "flat_torus n=" << n << " resolution=" << r << " sides=";
  for (int a = 0; a < n; ++a) tag << (a ? "," : "") << format_double(side_lengths[a]);
  man.tag = tag.str();
  finalize(man);
  return man;
}

DiscreteManifold build_icosphere(int subdivisions) {
  if (subdivisions < 1 || subdivisions > 7)
    throw std::invalid_argument("build_icosphere: subdivisions must be in [1, 7]");

  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> verts = {
      {-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Eigen::Vector3d m = (verts[a] + verts[b]).normalized();
      verts.push_back(m);
      int id = static_cast<int>(verts.size()) - 1;
      midpoint[key] = id;
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (auto [a, b, c] : faces) {
      int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
      next.push_back({a, ab, ca});
      next.push_back({b, bc, ab});
      next.push_back({c, ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  DiscreteManifold man;
  man.dim = 2;
  man.positions.resize(static_cast<int>(verts.size()), 3);
  for (size_t i = 0; i < verts.size(); ++i) man.positions.row(static_cast<int>(i)) = verts[i];
  man.elements.reserve(faces.size());
  for (auto [a, b, c] : faces) man.elements.push_back(triangle_element(man.positions, a, b, c));
  man.tag = "icosphere subdivisions=" + std::to_string(subdivisions);
  finalize(man);
  return man;
}

DiscreteManifold build_disk_mesh(int radial_resolution) {
  if (radial_resolution < 3)
    throw std::invalid_argument("build_disk_mesh: radial_resolution must be >= 3");
  const int R = radial_resolution;
  const double pi = std::numbers::pi;

  DiscreteManifold man;
  man.dim = 2;
  std::vector<Eigen::Vector2d> verts;
  verts.emplace_back(0.0, 0.0);
  std::vector<int> ring_start(R + 1, 0);
  for (int j = 1; j <= R; ++j) {
    ring_start[j] = static_cast<int>(verts.size());
    const int nj = 6 * j;
    for (int t = 0; t < nj; ++t) {
      const double ang = 2.0 * pi * t / nj;
      verts.emplace_back((double(j) / R) * std::cos(ang), (double(j) / R) * std::sin(ang));
    }
  }
  man.positions.resize(static_cast<int>(verts.size()), 2);
  for (size_t i = 0; i < verts.size(); ++i) man.positions.row(static_cast<int>(i)) = verts[i];

  std::vector<std::array<int, 3>> faces;
  for (int t = 0; t < 6; ++t)
    faces.push_back({0, ring_start[1] + t, ring_start[1] + (t + 1) % 6});
  for (int j = 1; j < R; ++j) {
    const int ni = 6 * j, no = 6 * (j + 1);
    const int si = ring_start[j], so = ring_start[j + 1];
    int ti = 0, to = 0;
    while (ti < ni || to < no) {
      const double ai = ti < ni ? (ti + 0.5) / ni : 2.0;
      const double ao = to < no ? (to + 0.5) / no : 2.0;
      if (ao <= ai) {
        faces.push_back({so + to % no, so + (to + 1) % no, si + ti % ni});
        ++to;
      } else {
        faces.push_back({si + ti % ni, so + to % no, si + (ti + 1) % ni});
        ++ti;
      }
    }
  }
  man.elements.reserve(faces.size());
  for (auto [a, b, c] : faces) man.elements.push_back(triangle_element_2d(man.positions, a, b, c));

  const int nb = 6 * R;
  man.boundary.resize(nb);
  for (int t = 0; t < nb; ++t) man.boundary[t] = ring_start[R] + t;
  man.boundary_mass = Eigen::VectorXd::Zero(nb);
  for (int t = 0; t < nb; ++t) {
    const int u = man.boundary[t], v = man.boundary[(t + 1) % nb];
    const double len = (man.positions.row(u) - man.positions.row(v)).norm();
    man.boundary_mass[t] += 0.5 * len;
    man.boundary_mass[(t + 1) % nb] += 0.5 * len;
  }

  man.tag = "disk radial_resolution=" + std::to_string(R);
  finalize(man);
  return man;
}

double dirichlet_energy(const DiscreteManifold& man, const VectorField& u) {
  if (u.rows() != man.vertex_count())
    throw std::invalid_argument("dirichlet_energy: field size does not match vertex count");
  double e = 0.0;
  for (int c = 0; c < u.cols(); ++c) e += u.col(c).dot(man.stiffness * u.col(c));
  return 0.5 * e;
}

ScalarField energy_density(const DiscreteManifold& man, const VectorField& u) {
  if (u.rows() != man.vertex_count())
    throw std::invalid_argument("energy_density: field size does not match vertex count");
  ScalarField acc = ScalarField::Zero(man.vertex_count());
  Eigen::MatrixXd local;
  for (const Element& el : man.elements) {
    const int nv = static_cast<int>(el.verts.size());
    local.resize(nv, u.cols());
    for (int a = 0; a < nv; ++a) local.row(a) = u.row(el.verts[a]);
    const double e_el = el.volume * (el.grad * local).squaredNorm();
    const double share = e_el / nv;
    for (int v : el.verts) acc[v] += share;
  }
  return acc.array() / man.mass.array();
}

namespace {

std::string builder_meta(const DiscreteManifold& man) { return man.tag; }

DiscreteManifold rebuild_from_tag(const std::string& tag) {
  std::istringstream in(tag);
  std::string name;
  in >> name;
  std::map<std::string, std::string> args;
  std::string kvtok;
  while (in >> kvtok) {
    auto eq = kvtok.find('=');
    if (eq == std::string::npos) throw std::runtime_error("mesh metadata: bad builder tag: " + tag);
    args[kvtok.substr(0, eq)] = kvtok.substr(eq + 1);
  }
  if (name == "icosphere") return build_icosphere(std::stoi(args.at("subdivisions")));
  if (name == "disk") return build_disk_mesh(std::stoi(args.at("radial_resolution")));
  if (name == "flat_torus") {
    std::vector<double> sides;
    std::istringstream ss(args.at("sides"));
    std::string tok;
    while (std::getline(ss, tok, ',')) sides.push_back(std::stod(tok));
    return build_flat_torus(sides, std::stoi(args.at("resolution")));
  }
  throw std::runtime_error("mesh metadata: unknown builder: " + name);
}

std::string off_payload(const DiscreteManifold& man) {
  std::ostringstream out;
  out << "OFF\n" << man.vertex_count() << " " << man.elements.size() << " 0\n";
  for (int i = 0; i < man.vertex_count(); ++i) {
    for (int c = 0; c < man.ambient_dim(); ++c) {
      if (c) out << " ";
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", man.positions(i, c));
      out << buf;
    }
    out << "\n";
  }
  for (const Element& el : man.elements) {
    out << el.verts.size();
    for (int v : el.verts) out << " " << v;
    out << "\n";
  }
  return out.str();
}

}  // namespace

void save_mesh(const DiscreteManifold& man, const std::string& path_base) {
  {
    std::ofstream off(path_base + ".off", std::ios::binary);
    if (!off) throw std::runtime_error("save_mesh: cannot open " + path_base + ".off");
    off << off_payload(man);
  }
  save_kv(path_base + ".meta",
          {{"format", "sdl-mesh-1"},
           {"builder", builder_meta(man)},
           {"ambient_dim", std::to_string(man.ambient_dim())},
           {"dim", std::to_string(man.dim)}},
          "mesh sidecar metadata");
}

DiscreteManifold load_mesh(const std::string& path_base) {
  std::ifstream meta(path_base + ".meta");
  if (!meta) throw std::runtime_error("load_mesh: missing sidecar " + path_base + ".meta");
  std::string line, builder;
  while (std::getline(meta, line)) {
    auto eq = line.find('=');
    if (line.empty() || line[0] == '#' || eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    if (trim(line.substr(0, eq)) == "builder") builder = trim(line.substr(eq + 1));
  }
  if (builder.empty()) throw std::runtime_error("load_mesh: sidecar has no builder tag");
  DiscreteManifold man = rebuild_from_tag(builder);

  std::ifstream off(path_base + ".off", std::ios::binary);
  if (!off) throw std::runtime_error("load_mesh: missing " + path_base + ".off");
  std::stringstream buf;
  buf << off.rdbuf();
  if (buf.str() != off_payload(man))
    throw std::runtime_error("load_mesh: OFF payload does not round-trip for " + path_base);
  return man;
}

}  // namespace sdl
