// Copyright (C) 2026 the sdl authors
// SPDX-License-Identifier: Apache-2.0
#include "sdl/runio.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sdl {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct CsvWriter::Impl {
  std::ofstream out;
  size_t ncols = 0;
  std::string path;
};

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::string>& header_comments)
    : impl_(new Impl) {
  impl_->path = path;
  impl_->out.open(path, std::ios::binary);
  if (!impl_->out) {
    delete impl_;
    throw std::runtime_error("CsvWriter: cannot open " + path);
  }
  impl_->ncols = columns.size();
  for (const auto& c : header_comments) impl_->out << "# " << c << "\n";
  for (size_t i = 0; i < columns.size(); ++i)
    impl_->out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() {
  close();
  delete impl_;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != impl_->ncols)
    throw std::runtime_error("CsvWriter: wrong cell count for " + impl_->path);
  for (size_t i = 0; i < cells.size(); ++i)
    impl_->out << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

void CsvWriter::row_doubles(const std::vector<double>& cells) {
  std::vector<std::string> s;
  s.reserve(cells.size());
  for (double x : cells) s.push_back(format_double(x));
  row(s);
}

void CsvWriter::close() {
  if (impl_->out.is_open()) impl_->out.close();
}

void save_kv(const std::string& path, const std::vector<std::pair<std::string, std::string>>& kv,
             const std::string& header_comment) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("save_kv: cannot open " + tmp);
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
  }
  std::filesystem::rename(tmp, path);
}

void save_scalar_field(const std::string& path, const Eigen::VectorXd& values,
                       const std::vector<std::pair<std::string, std::string>>& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_scalar_field: cannot open " + path);
  for (const auto& [k, v] : meta) out << "# " << k << " = " << v << "\n";
  out << "# count = " << values.size() << "\n";
  for (Eigen::Index i = 0; i < values.size(); ++i) out << format_double(values[i]) << "\n";
}

Eigen::VectorXd load_scalar_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_scalar_field: cannot open " + path);
  std::vector<double> vals;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    vals.push_back(std::stod(line));
  }
  return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

void save_map_checkpoint(const std::string& path, const Eigen::MatrixXd& values,
                         const std::vector<std::pair<std::string, std::string>>& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_map_checkpoint: cannot open " + path);
  for (const auto& [k, v] : meta) out << "# " << k << " = " << v << "\n";
  out << "# rows = " << values.rows() << "\n# cols = " << values.cols() << "\n";
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j)
      out << format_double(values(i, j)) << (j + 1 < values.cols() ? " " : "\n");
  }
}

Eigen::MatrixXd load_map_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_map_checkpoint: cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::vector<double> row;
    double x;
    while (ss >> x) row.push_back(x);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) return {};
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::runtime_error("load_map_checkpoint: ragged rows in " + path);
    for (size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

}  // namespace sdl
