#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace rhop {

/// Rows n0..n1 of a Jacobi operator: a_n on the diagonal, b_n off it.
struct JacobiSegment {
  int n0 = 0;
  int n1 = -1;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> residual;                  // larger residual of the n and n+1 solves
  std::vector<std::optional<std::string>> error; // per-index failure, a and b are NaN there
  std::vector<std::string> warnings;
  int ppi = 0;
  double circle_ratio = 0.0;
  double max_residual = 0.0;
  double max_jump = 0.0;
  double wall_seconds = 0.0;

  std::size_t size() const { return a.size(); }
  bool ok() const {
    return std::none_of(error.begin(), error.end(), [](const auto& e) { return e.has_value(); });
  }
};

}  // namespace rhop
