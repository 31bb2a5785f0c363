#pragma once

// Reference recurrence coefficients from a discretized weight: per-band
// Gauss rules followed by Lanczos with full reorthogonalization.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rhop/cheb.hpp"
#include "rhop/errors.hpp"
#include "rhop/jacobi.hpp"
#include "rhop/weight.hpp"

namespace rhop {

struct DiscreteMeasure {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }
};

inline DiscreteMeasure discretize(const WeightSpec& spec, std::size_t m_per_band) {
  if (m_per_band < 1) throw DomainError("discretize: need at least one node per band");
  DiscreteMeasure dm;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    auto r = gauss_cheb_rule(spec.kinds[j], spec.bands[j], m_per_band, [&](double x) { return spec.h[j].real(x); });
    // Rules come out in decreasing node order.
    std::vector<std::size_t> idx(r.nodes.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return r.nodes[a] < r.nodes[b]; });
    for (std::size_t i : idx) {
      if (!(r.weights[i] > 0.0)) throw WeightError("discretize: nonpositive quadrature weight");
      dm.nodes.push_back(r.nodes[i]);
      dm.weights.push_back(r.weights[i]);
    }
  }
  return dm;
}

/// Leading N rows of the Jacobi matrix of a discrete measure.
inline JacobiSegment tridiagonalize(const DiscreteMeasure& dm, std::size_t N) {
  const auto M = static_cast<Eigen::Index>(dm.size());
  if (N == 0 || static_cast<Eigen::Index>(N) >= M) {
    throw DomainError("tridiagonalize: need 0 < N < number of nodes");
  }
  const auto start = std::chrono::steady_clock::now();
  const Eigen::Map<const Eigen::VectorXd> x(dm.nodes.data(), M);
  Eigen::MatrixXd Q(M, static_cast<Eigen::Index>(N) + 1);
  Eigen::VectorXd q(M);
  for (Eigen::Index i = 0; i < M; ++i) q(i) = std::sqrt(dm.weights[static_cast<std::size_t>(i)]);
  q /= q.norm();
  Q.col(0) = q;

  JacobiSegment seg;
  seg.n0 = 0;
  seg.n1 = static_cast<int>(N) - 1;
  for (std::size_t k = 0; k < N; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    Eigen::VectorXd v = x.cwiseProduct(Q.col(kk));
    const double a = Q.col(kk).dot(v);
    v -= a * Q.col(kk);
    if (k > 0) v -= seg.b.back() * Q.col(kk - 1);
    for (int pass = 0; pass < 2; ++pass) {
      const auto basis = Q.leftCols(kk + 1);
      v -= basis * (basis.transpose() * v);
    }
    const double b = v.norm();
    if (b < 1e-14) throw ConvergenceError("tridiagonalize: breakdown at k = " + std::to_string(k));
    Q.col(kk + 1) = v / b;
    seg.a.push_back(a);
    seg.b.push_back(b);
    seg.residual.push_back(0.0);
    seg.error.emplace_back();
  }
  seg.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return seg;
}

struct OracleResult {
  JacobiSegment segment;
  std::size_t m_per_band = 0;
  double change = 0.0;  // entrywise difference between the last two levels
};

inline constexpr std::size_t kOracleMaxNodes = std::size_t{1} << 15;

/// Doubles the nodes per band until two successive segments agree within tol.
inline OracleResult adaptive_oracle(const WeightSpec& spec, std::size_t N, double tol = 1e-13) {
  if (!(tol >= 1e-13)) throw DomainError("adaptive_oracle: tol must be at least 1e-13");
  std::size_t m = std::max<std::size_t>(2 * N, 16);
  JacobiSegment prev = tridiagonalize(discretize(spec, m), N);
  while (2 * m <= kOracleMaxNodes) {
    JacobiSegment cur = tridiagonalize(discretize(spec, 2 * m), N);
    double diff = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      diff = std::max({diff, std::abs(cur.a[k] - prev.a[k]), std::abs(cur.b[k] - prev.b[k])});
    }
    m *= 2;
    if (diff <= tol) return {std::move(cur), m, diff};
    prev = std::move(cur);
  }
  throw ConvergenceError("adaptive_oracle: no agreement to " + std::to_string(tol) + " within " +
                         std::to_string(kOracleMaxNodes) + " nodes per band");
}

}  // namespace rhop
