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

#ifndef RSR_IO_HPP_
#define RSR_IO_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "rsr/instance.hpp"
#include "rsr/matroid.hpp"
#include "rsr/radial.hpp"
#include "rsr/sse.hpp"

namespace rsr {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// Shared matrix text format: "n m" followed by n rows of m values.
void write_matrix(std::ostream& out, const Eigen::MatrixXd& a);
Eigen::MatrixXd read_matrix(std::istream& in);

struct LabelTrailer {
  int d = 0;
  IndexSet inliers;  // 0-based in memory, 1-based on disk
  Eigen::MatrixXd basis;  // n x d
};

struct InstanceFile {
  Eigen::MatrixXd matrix;
  std::optional<LabelTrailer> labels;
};

void write_labeled(std::ostream& out, const LabeledInstance& instance);
InstanceFile read_instance(std::istream& in);

// Rebuilds a LabeledInstance; noise_scale is the largest relative distance
// of a listed inlier from the stored subspace.
LabeledInstance to_labeled(const InstanceFile& file, const Tolerances& tol = {});

// Graph format: "V Delta E" then one 1-based "i j" pair per line.
void write_graph(std::ostream& out, const RegularGraph& graph);
RegularGraph read_graph(std::istream& in);

// One "point_index i j alpha beta" line per point, all indices 1-based.
void write_sidecar(std::ostream& out, const ReductionInstance& instance);

// Whitespace-separated values.
Eigen::VectorXd read_vector(std::istream& in);
void write_vector(std::ostream& out, const Eigen::VectorXd& v);

// File wrappers; failures to open raise IoError.
Eigen::MatrixXd read_matrix_file(const std::string& path);
InstanceFile read_instance_file(const std::string& path);
RegularGraph read_graph_file(const std::string& path);
Eigen::VectorXd read_vector_file(const std::string& path);

nlohmann::json to_json(const RecoveryResult& result);
nlohmann::json to_json(const MembershipAnswer& answer);
nlohmann::json to_json(const BartheSolution& solution);
nlohmann::json to_json(const Tolerances& tol);

}  // namespace rsr

#endif  // RSR_IO_HPP_
