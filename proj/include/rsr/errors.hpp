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

#ifndef RSR_ERRORS_HPP_
#define RSR_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace rsr {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter outside its documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration would exceed its configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// A DependenceWitness that does not satisfy its invariants.
class WitnessError : public Error {
 public:
  using Error::Error;
};

// A sampling loop ran out of iterations without finding a dependent set.
class TimeoutError : public Error {
 public:
  TimeoutError(const std::string& what, long iterations)
      : Error(what), iterations_(iterations) {}
  long iterations() const { return iterations_; }

 private:
  long iterations_;
};

// The determinant-gap threshold does not separate the instance.
class GapViolationError : public Error {
 public:
  using Error::Error;
};

// Peeling found no removable element; the preconditions do not hold.
class StuckError : public Error {
 public:
  using Error::Error;
};

// Minimum-norm-point iteration cap exceeded. Carries the best set found and
// the certified lower bound on the minimum.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<int> best_set,
                   double best_value, double lower_bound)
      : Error(what),
        best_set_(std::move(best_set)),
        best_value_(best_value),
        lower_bound_(lower_bound) {}
  const std::vector<int>& best_set() const { return best_set_; }
  double best_value() const { return best_value_; }
  double lower_bound() const { return lower_bound_; }

 private:
  std::vector<int> best_set_;
  double best_value_;
  double lower_bound_;
};

// A weighted Gram matrix could not be factored.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double scale)
      : Error(what), scale_(scale) {}
  double scale() const { return scale_; }

 private:
  double scale_;
};

// Some transformed point is numerically zero.
class DegenerateDirectionError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rsr

#endif  // RSR_ERRORS_HPP_
