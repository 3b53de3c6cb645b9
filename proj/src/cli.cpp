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

#include "rsr/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rsr/derandomized.hpp"
#include "rsr/errors.hpp"
#include "rsr/io.hpp"
#include "rsr/randomized.hpp"

namespace rsr {

namespace {

using nlohmann::json;

constexpr std::uint64_t kFallbackSeed = 1;

struct Common {
  Tolerances tol;
  unsigned long long budget = kDefaultEnumerationBudget;
  std::optional<std::uint64_t> seed;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("RSR_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw ArgumentError("RSR_SEED must be an unsigned integer");
    return v;
  }
  return kFallbackSeed;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed (default: $RSR_SEED, else 1)");
  cmd->add_option("--rank-scale", c.tol.rank_scale,
                  "numerical rank cutoff is sigma_max * max(r, c) * eps * this")
      ->capture_default_str();
  cmd->add_option("--member-tol", c.tol.member,
                  "relative distance for a point to count as in the span")
      ->capture_default_str();
  cmd->add_option("--support-tol", c.tol.support,
                  "kernel entries below this times the max entry are dropped")
      ->capture_default_str();
  cmd->add_option("--kernel-tol", c.tol.kernel_residual,
                  "accepted relative residual of a kernel vector")
      ->capture_default_str();
  cmd->add_option("--membership-tol", c.tol.membership,
                  "slack for polytope membership decisions")
      ->capture_default_str();
  cmd->add_option("--budget", c.budget, "max subsets any enumeration may visit")
      ->capture_default_str();
}

std::string join(const std::vector<std::string>& args) {
  std::string s = "rsr";
  for (const auto& a : args) s += " " + a;
  return s;
}

std::map<std::string, MembershipMode> mode_map() {
  return {{"auto", MembershipMode::automatic},
          {"exhaustive", MembershipMode::exhaustive},
          {"minnorm", MembershipMode::minnorm}};
}

// Error classes to exit codes.
int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ArgumentError*>(&e)) return kExitUsage;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const TimeoutError*>(&e)) return kExitTimeout;
  if (dynamic_cast<const StuckError*>(&e)) return kExitTimeout;
  if (dynamic_cast<const GapViolationError*>(&e)) return kExitTimeout;
  return kExitNumerical;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Robust subspace recovery and radial isotropy tools", "rsr"};
  app.require_subcommand(1);

  Common common;

  // gen
  CLI::App* gen = app.add_subcommand("gen", "generate a planted or reduction instance");
  PlantedParams planted;
  std::string out_path;
  std::string graph_path;
  gen->add_option("--n", planted.n, "ambient dimension");
  gen->add_option("--d", planted.d, "subspace dimension");
  gen->add_option("--m", planted.m, "number of points");
  gen->add_option("--inliers", planted.inliers, "number of inliers");
  gen->add_option("--noise", planted.noise_scale, "relative inlier noise")
      ->capture_default_str();
  gen->add_option("--sse-graph", graph_path,
                  "build the reduction instance of a regular graph file");
  gen->add_option("-o,--out", out_path, "output file (default: standard output)");
  add_common(gen, common);

  // recover
  CLI::App* rec = app.add_subcommand("recover", "recover the inlier subspace");
  std::string method = "random";
  std::string instance_path;
  long max_iter = 0;
  std::optional<double> c2;
  std::optional<int> d_flag;
  std::string mode_name = "auto";
  rec->add_option("--method", method, "random | random-det | derand")
      ->check(CLI::IsMember({"random", "random-det", "derand"}))
      ->capture_default_str();
  rec->add_option("--max-iter", max_iter, "sampling rounds (0: 100 * 2 n^2 m)")
      ->capture_default_str();
  rec->add_option("--C2", c2, "determinant threshold C^2 for random-det");
  rec->add_option("--d", d_flag, "subspace dimension (default: file trailer)");
  rec->add_option("--mode", mode_name, "membership oracle for derand")
      ->check(CLI::IsMember({"auto", "exhaustive", "minnorm"}))
      ->capture_default_str();
  rec->add_option("instance", instance_path, "instance file")->required();
  add_common(rec, common);

  // membership
  CLI::App* mem = app.add_subcommand("membership", "polytope membership of a vector");
  bool uniform = false;
  std::string x_path;
  std::string polytope_name = "basis";
  mem->add_flag("--uniform", uniform, "query x = (n/m) 1");
  mem->add_option("--x", x_path, "query vector file");
  mem->add_option("--polytope", polytope_name, "basis | independent")
      ->check(CLI::IsMember({"basis", "independent"}))
      ->capture_default_str();
  mem->add_option("--mode", mode_name, "auto | exhaustive | minnorm")
      ->check(CLI::IsMember({"auto", "exhaustive", "minnorm"}))
      ->capture_default_str();
  mem->add_option("instance", instance_path, "matrix file")->required();
  add_common(mem, common);

  // rip
  CLI::App* rip = app.add_subcommand("rip", "radial isotropic position");
  std::string c_spec = "uniform";
  BartheOptions bopt;
  double alpha = 0.1;
  bool no_precheck = false;
  bool no_box = false;
  rip->add_option("--c", c_spec, "'uniform' or a coefficient file")->capture_default_str();
  rip->add_option("--tol", bopt.tolerance, "gradient tolerance")->capture_default_str();
  rip->add_option("--alpha", alpha, "dilation margin for the effective bounds")
      ->capture_default_str();
  rip->add_option("--max-iter", bopt.max_iterations, "Newton iterations")
      ->capture_default_str();
  rip->add_option("--mode", mode_name, "membership oracle for the precheck")
      ->check(CLI::IsMember({"auto", "exhaustive", "minnorm"}))
      ->capture_default_str();
  rip->add_flag("--no-precheck", no_precheck, "skip the membership precheck");
  rip->add_flag("--no-box", no_box, "do not bound t by the effective norm bound");
  rip->add_option("instance", instance_path, "matrix file")->required();
  add_common(rip, common);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  json report;
  report["command"] = join(args);
  int code = kExitOk;
  try {
    const std::uint64_t seed = resolve_seed(common.seed);
    report["seed"] = seed;
    report["tolerances"] = to_json(common.tol);
    report["budget"] = common.budget;
    const MembershipMode mode = mode_map().at(mode_name);

    if (*gen) {
      planted.seed = seed;
      json result;
      if (!graph_path.empty()) {
        if (out_path.empty()) throw ArgumentError("--sse-graph needs -o");
        const RegularGraph g = read_graph_file(graph_path);
        const ReductionInstance inst = reduce_sse_to_inlier(g, seed);
        std::ofstream f(out_path);
        std::ofstream map(out_path + ".map");
        if (!f || !map) throw IoError("cannot write '" + out_path + "'");
        write_matrix(f, inst.points);
        write_sidecar(map, inst);
        if (!f || !map) throw IoError("write to '" + out_path + "' failed");
        result = {{"file", out_path}, {"sidecar", out_path + ".map"},
                  {"n", inst.points.rows()}, {"m", inst.points.cols()}};
      } else {
        const LabeledInstance inst = generate_planted(planted, common.tol);
        if (out_path.empty()) {
          write_labeled(out, inst);
          err << "seed " << seed << '\n';
          return kExitOk;
        }
        std::ofstream f(out_path);
        if (!f) throw IoError("cannot write '" + out_path + "'");
        write_labeled(f, inst);
        if (!f) throw IoError("write to '" + out_path + "' failed");
        result = {{"file", out_path}, {"n", planted.n}, {"d", planted.d},
                  {"m", planted.m}, {"inliers", planted.inliers}};
      }
      report["result"] = result;
    } else if (*rec) {
      const InstanceFile file = read_instance_file(instance_path);
      const PointSet points(file.matrix, common.tol);
      try {
        RecoveryResult r;
        json extra;
        if (method == "random") {
          r = randomized_find(points, seed, max_iter, common.tol);
        } else if (method == "random-det") {
          int d = 0;
          if (d_flag) {
            d = *d_flag;
          } else if (file.labels) {
            d = file.labels->d;
          } else {
            throw ArgumentError("random-det needs --d or a labeled instance");
          }
          if (!c2) throw ArgumentError("random-det needs --C2");
          r = randomized_find_noisy(points, d, NoiseGapConfig{*c2}, seed, max_iter);
        } else {
          const DerandomizedOutput o = derandomized_find(points, mode, common.tol);
          r = o.result;
          json removed = json::array();
          for (const PeelStep& s : o.trace.steps) removed.push_back(s.removed_index + 1);
          extra = {{"removed", removed},
                   {"final_set", o.trace.final_set},
                   {"membership_calls", o.trace.membership_calls}};
          for (auto& v : extra["final_set"]) v = v.get<int>() + 1;
        }
        report["result"] = to_json(r);
        report["result"]["status"] = "recovered";
        if (!extra.is_null()) report["result"]["trace"] = extra;
      } catch (const TimeoutError& e) {
        report["result"] = {{"status", "timeout"}, {"iterations", e.iterations()}};
        throw;
      } catch (const StuckError&) {
        report["result"] = {{"status", "stuck"}};
        throw;
      }
    } else if (*mem) {
      const InstanceFile file = read_instance_file(instance_path);
      const PointSet points(file.matrix, common.tol);
      if (uniform == !x_path.empty()) {
        throw ArgumentError("give exactly one of --uniform and --x");
      }
      const Eigen::VectorXd x = uniform ? uniform_coefficients(points)
                                        : read_vector_file(x_path);
      if (x.size() != points.size()) {
        throw ArgumentError("query vector has " + std::to_string(x.size()) +
                            " entries, expected " + std::to_string(points.size()));
      }
      const Polytope poly =
          polytope_name == "basis" ? Polytope::basis : Polytope::independent_set;
      const MembershipAnswer a =
          polytope_membership(points, MembershipQuery{x, poly}, mode, common.tol);
      report["result"] = to_json(a);
    } else if (*rip) {
      const InstanceFile file = read_instance_file(instance_path);
      PointSet points(file.matrix, common.tol);
      Eigen::VectorXd c = c_spec == "uniform" ? uniform_coefficients(points)
                                              : read_vector_file(c_spec);
      if (c.size() != points.size()) {
        throw ArgumentError("coefficient vector has the wrong length");
      }
      std::optional<EffectiveBounds> bounds;
      try {
        bounds = effective_bounds(points, alpha, common.tol, common.budget);
      } catch (const BudgetError& e) {
        err << "effective bounds skipped: " << e.what() << '\n';
      }
      bopt.membership_precheck = !no_precheck;
      bopt.membership_mode = mode;
      bopt.enforce_box = !no_box;
      const BartheProblem problem(std::move(points), std::move(c));
      const BartheSolution s = solve_barthe(problem, bounds, bopt, common.tol);
      report["result"] = to_json(s);
      if (bounds) {
        report["result"]["bounds"] = {{"alpha", bounds->alpha},
                                      {"min_basis_det", bounds->min_basis_det},
                                      {"value_bound", bounds->value_bound},
                                      {"norm_bound", bounds->norm_bound}};
      }
      if (s.status == BartheStatus::outside_polytope) code = kExitOutside;
      if (s.status == BartheStatus::iteration_cap) code = kExitIterationCap;
    }
  } catch (const std::exception& e) {
    code = exit_code_for(e);
    report["error"] = e.what();
    err << "error: " << e.what() << '\n';
  }
  report["exit_code"] = code;
  report["wall_time_ms"] = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  out << report.dump(2) << '\n';
  return code;
}

}  // namespace rsr
