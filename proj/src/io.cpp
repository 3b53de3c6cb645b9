// Copyright 2026 The rsr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rsr/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rsr/errors.hpp"

namespace rsr {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc()) throw InternalError("to_chars failed");
  return std::string(buf, res.ptr);
}

namespace {

std::string next_token(std::istream& in, const char* what) {
  std::string tok;
  if (!(in >> tok)) {
    throw IoError(std::string("unexpected end of input while reading ") + what);
  }
  return tok;
}

double parse_double(const std::string& tok) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw IoError("malformed number '" + tok + "'");
  }
  return v;
}

long parse_int(const std::string& tok) {
  long v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    throw IoError("malformed integer '" + tok + "'");
  }
  return v;
}

int read_count(std::istream& in, const char* what) {
  const long v = parse_int(next_token(in, what));
  if (v < 0 || v > 1'000'000'000L) {
    throw IoError(std::string("invalid ") + what + " " + std::to_string(v));
  }
  return static_cast<int>(v);
}

void write_row(std::ostream& out, const Eigen::MatrixXd& a, Eigen::Index r) {
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    if (c) out << ' ';
    out << format_double(a(r, c));
  }
  out << '\n';
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

}  // namespace

void write_matrix(std::ostream& out, const Eigen::MatrixXd& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (Eigen::Index r = 0; r < a.rows(); ++r) write_row(out, a, r);
}

Eigen::MatrixXd read_matrix(std::istream& in) {
  const int n = read_count(in, "row count");
  const int m = read_count(in, "column count");
  Eigen::MatrixXd a(n, m);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < m; ++c) a(r, c) = parse_double(next_token(in, "matrix entry"));
  }
  return a;
}

void write_labeled(std::ostream& out, const LabeledInstance& instance) {
  write_matrix(out, instance.points.matrix());
  out << instance.d << ' ' << instance.inliers.size() << '\n';
  for (std::size_t i = 0; i < instance.inliers.size(); ++i) {
    if (i) out << ' ';
    out << instance.inliers[i] + 1;
  }
  out << '\n';
  const Eigen::MatrixXd rows = instance.subspace_basis.transpose();
  for (Eigen::Index r = 0; r < rows.rows(); ++r) write_row(out, rows, r);
}

InstanceFile read_instance(std::istream& in) {
  InstanceFile f;
  f.matrix = read_matrix(in);
  std::string tok;
  if (!(in >> tok)) return f;
  LabelTrailer t;
  t.d = static_cast<int>(parse_int(tok));
  const int k = read_count(in, "inlier count");
  if (t.d < 0) throw IoError("negative subspace dimension");
  for (int i = 0; i < k; ++i) {
    const long idx = parse_int(next_token(in, "inlier index"));
    if (idx < 1 || idx > f.matrix.cols()) {
      throw IoError("inlier index " + std::to_string(idx) + " out of range");
    }
    t.inliers.push_back(static_cast<int>(idx - 1));
  }
  std::sort(t.inliers.begin(), t.inliers.end());
  if (std::adjacent_find(t.inliers.begin(), t.inliers.end()) != t.inliers.end()) {
    throw IoError("repeated inlier index");
  }
  t.basis.resize(f.matrix.rows(), t.d);
  for (int c = 0; c < t.d; ++c) {
    for (Eigen::Index r = 0; r < f.matrix.rows(); ++r) {
      t.basis(r, c) = parse_double(next_token(in, "basis entry"));
    }
  }
  if (in >> tok) throw IoError("trailing data after instance");
  f.labels = std::move(t);
  return f;
}

LabeledInstance to_labeled(const InstanceFile& file, const Tolerances& tol) {
  if (!file.labels) throw IoError("instance file has no label trailer");
  const LabelTrailer& t = *file.labels;
  LabeledInstance inst{PointSet(file.matrix, tol), t.d, t.basis, t.inliers, 0.0};
  for (int i : t.inliers) {
    const Eigen::VectorXd u = file.matrix.col(i);
    const double un = u.norm();
    if (un > 0.0) {
      inst.noise_scale =
          std::max(inst.noise_scale, distance_to_span(u, t.basis) / un);
    }
  }
  return inst;
}

void write_graph(std::ostream& out, const RegularGraph& graph) {
  out << graph.vertex_count() << ' ' << graph.degree() << ' '
      << graph.edges().size() << '\n';
  for (const auto& [i, j] : graph.edges()) out << i + 1 << ' ' << j + 1 << '\n';
}

RegularGraph read_graph(std::istream& in) {
  const int v = read_count(in, "vertex count");
  const int degree = read_count(in, "degree");
  const int e = read_count(in, "edge count");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(e));
  for (int k = 0; k < e; ++k) {
    const long i = parse_int(next_token(in, "edge endpoint"));
    const long j = parse_int(next_token(in, "edge endpoint"));
    if (i < 1 || j < 1 || i > v || j > v) {
      throw IoError("edge endpoint out of range on edge " + std::to_string(k + 1));
    }
    edges.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1));
  }
  std::string tok;
  if (in >> tok) throw IoError("trailing data after edge list");
  return RegularGraph(v, degree, std::move(edges));
}

void write_sidecar(std::ostream& out, const ReductionInstance& instance) {
  for (std::size_t p = 0; p < instance.edge_of_point.size(); ++p) {
    const auto& [i, j] = instance.edge_of_point[p];
    const auto& [alpha, beta] = instance.coefficients[p];
    out << p + 1 << ' ' << i + 1 << ' ' << j + 1 << ' ' << format_double(alpha)
        << ' ' << format_double(beta) << '\n';
  }
}

Eigen::VectorXd read_vector(std::istream& in) {
  std::vector<double> values;
  std::string tok;
  while (in >> tok) values.push_back(parse_double(tok));
  return Eigen::Map<Eigen::VectorXd>(values.data(),
                                     static_cast<Eigen::Index>(values.size()));
}

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << format_double(v(i));
  }
  out << '\n';
}

Eigen::MatrixXd read_matrix_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_matrix(in);
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_instance(in);
}

RegularGraph read_graph_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_graph(in);
}

Eigen::VectorXd read_vector_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_vector(in);
}

namespace {

nlohmann::json one_based(const IndexSet& s) {
  nlohmann::json a = nlohmann::json::array();
  for (int i : s) a.push_back(i + 1);
  return a;
}

nlohmann::json row_major(const Eigen::MatrixXd& m) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(m(r, c));
  }
  return a;
}

nlohmann::json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

nlohmann::json to_json(const RecoveryResult& result) {
  return {{"inliers", one_based(result.inliers)},
          {"subspace_dim", result.subspace_basis.cols()},
          {"subspace_basis", row_major(result.subspace_basis)},
          {"iterations", result.iterations},
          {"method", to_string(result.method)}};
}

nlohmann::json to_json(const MembershipAnswer& answer) {
  return {{"inside", answer.inside},
          {"min_value", answer.min_value},
          {"certificate", one_based(answer.certificate)},
          {"certificate_kind", to_string(answer.kind)}};
}

nlohmann::json to_json(const BartheSolution& solution) {
  std::vector<double> t(solution.t.data(), solution.t.data() + solution.t.size());
  nlohmann::json j = {{"t", t},
                      {"value", finite_or_null(solution.value)},
                      {"R", row_major(solution.transform)},
                      {"residual_inf_norm", finite_or_null(solution.residual_norm)},
                      {"status", to_string(solution.status)},
                      {"iterations", solution.iterations}};
  if (!solution.outside_reason.empty()) j["outside_reason"] = solution.outside_reason;
  if (solution.membership) j["membership"] = to_json(*solution.membership);
  if (solution.pairwise_support) j["pairwise_support"] = *solution.pairwise_support;
  return j;
}

nlohmann::json to_json(const Tolerances& tol) {
  return {{"rank_scale", tol.rank_scale},
          {"member", tol.member},
          {"support", tol.support},
          {"kernel_residual", tol.kernel_residual},
          {"membership", tol.membership}};
}

}  // namespace rsr
