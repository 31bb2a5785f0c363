#pragma once

// Chebyshev polynomial families, mapped intervals, cosine transforms and
// the singular-weight quadrature rules shared by the rest of the library.
//
// Normalization conventions (every downstream constant depends on these):
//
//   kind  exponents (alpha, beta)   normalized weight on [-1, 1]
//   T     (-1, -1)                  1 / (pi sqrt(1-x) sqrt(1+x))
//   U     ( 1,  1)                  (2/pi) sqrt(1-x) sqrt(1+x)
//   V     ( 1, -1)                  (1/pi) sqrt(1+x) / sqrt(1-x)
//   W     (-1,  1)                  (1/pi) sqrt(1-x) / sqrt(1+x)
//
// Each weight has unit mass.  The T family is orthonormal only after the
// rescaling T_0 = 1, T_k = sqrt(2) cos(k acos x) for k > 0; U, V, W are the
// classical polynomials (already orthonormal for the weights above).
//
// The exponent pair (alpha, beta) refers to the unnormalized factor
// (sqrt(x - a))^alpha (sqrt(b - x))^beta used to describe weights on [a, b].

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rhop/errors.hpp"

namespace rhop {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt2 = std::numbers::sqrt2;
inline constexpr cplx I{0.0, 1.0};

/// Closed real interval [a, b] with a < b.
struct Interval {
  double a = -1.0;
  double b = 1.0;

  Interval() = default;
  Interval(double left, double right) : a(left), b(right) {
    if (!(std::isfinite(left) && std::isfinite(right)) || !(left < right)) {
      throw DomainError("Interval requires finite a < b, got [" + std::to_string(left) + ", " +
                        std::to_string(right) + "]");
    }
  }

  double length() const { return b - a; }
  double mid() const { return 0.5 * (a + b); }

  /// Affine map [a, b] -> [-1, 1].
  template <typename T>
  T to_unit(T x) const {
    return (2.0 / (b - a)) * (x - mid());
  }
  /// Affine map [-1, 1] -> [a, b].
  template <typename T>
  T from_unit(T t) const {
    return mid() + 0.5 * (b - a) * t;
  }

  bool contains(double x) const { return a <= x && x <= b; }
  bool operator==(const Interval&) const = default;
};

enum class ChebKind { T, U, V, W };

/// Endpoint exponents (alpha, beta) of a kind.
constexpr std::pair<int, int> exponents(ChebKind kind) {
  switch (kind) {
    case ChebKind::T: return {-1, -1};
    case ChebKind::U: return {1, 1};
    case ChebKind::V: return {1, -1};
    case ChebKind::W: return {-1, 1};
  }
  return {0, 0};
}

inline ChebKind kind_from_exponents(int alpha, int beta) {
  if (alpha == -1 && beta == -1) return ChebKind::T;
  if (alpha == 1 && beta == 1) return ChebKind::U;
  if (alpha == 1 && beta == -1) return ChebKind::V;
  if (alpha == -1 && beta == 1) return ChebKind::W;
  throw DomainError("endpoint exponents must lie in {-1, 1}");
}

/// Kind whose exponents are the negation of the given kind's.
constexpr ChebKind dual_kind(ChebKind kind) {
  switch (kind) {
    case ChebKind::T: return ChebKind::U;
    case ChebKind::U: return ChebKind::T;
    case ChebKind::V: return ChebKind::W;
    case ChebKind::W: return ChebKind::V;
  }
  return kind;
}

inline char kind_letter(ChebKind kind) {
  switch (kind) {
    case ChebKind::T: return 'T';
    case ChebKind::U: return 'U';
    case ChebKind::V: return 'V';
    case ChebKind::W: return 'W';
  }
  return '?';
}

inline ChebKind kind_from_letter(char c) {
  switch (c) {
    case 'T': return ChebKind::T;
    case 'U': return ChebKind::U;
    case 'V': return ChebKind::V;
    case 'W': return ChebKind::W;
    default: throw DomainError(std::string("unknown Chebyshev kind '") + c + "'");
  }
}

namespace detail {
inline constexpr double kDomainSlack = 1e-12;
}

/// Normalized Chebyshev polynomial of the given kind and degree at x in [-1, 1].
inline double cheb_eval(ChebKind kind, int k, double x) {
  if (k < 0) throw DomainError("cheb_eval: negative degree");
  if (!(std::abs(x) <= 1.0 + detail::kDomainSlack)) {
    throw DomainError("cheb_eval: x = " + std::to_string(x) + " outside [-1, 1]");
  }
  if (k == 0) return 1.0;
  double p0 = 1.0;
  double p1 = 0.0;
  switch (kind) {
    case ChebKind::T: p1 = x; break;
    case ChebKind::U: p1 = 2.0 * x; break;
    case ChebKind::V: p1 = 2.0 * x - 1.0; break;
    case ChebKind::W: p1 = 2.0 * x + 1.0; break;
  }
  for (int j = 1; j < k; ++j) {
    const double p2 = 2.0 * x * p1 - p0;
    p0 = p1;
    p1 = p2;
  }
  return kind == ChebKind::T ? sqrt2 * p1 : p1;
}

/// Unit-mass weight of a kind, mapped to an interval (density in x).
inline double normalized_weight(ChebKind kind, const Interval& iv, double x) {
  const double L = iv.length();
  const double sa = std::sqrt(std::max(0.0, x - iv.a));
  const double sb = std::sqrt(std::max(0.0, iv.b - x));
  switch (kind) {
    case ChebKind::T: return 1.0 / (pi * sa * sb);
    case ChebKind::U: return (2.0 / pi) * (4.0 / (L * L)) * sa * sb;
    case ChebKind::V: return 2.0 / (pi * L) * sa / sb;
    case ChebKind::W: return 2.0 / (pi * L) * sb / sa;
  }
  return 0.0;
}

/// Roots of T_m on [-1, 1], ordered from right to left.
inline std::vector<double> cheb_roots(std::size_t m) {
  std::vector<double> x(m);
  for (std::size_t k = 0; k < m; ++k) {
    x[k] = std::cos((2.0 * static_cast<double>(k) + 1.0) * pi / (2.0 * static_cast<double>(m)));
  }
  return x;
}

/// Roots of T_m mapped into an interval.
inline std::vector<double> cheb_roots(std::size_t m, const Interval& iv) {
  auto x = cheb_roots(m);
  for (auto& v : x) v = iv.from_unit(v);
  return x;
}

/// Truncated series sum_k c_k P_k(M^{-1}(x)) in one of the normalized families.
struct ChebSeries {
  ChebKind kind = ChebKind::T;
  Interval interval;
  std::vector<cplx> coeffs;

  cplx operator()(double x) const {
    const double t = interval.to_unit(x);
    if (!(std::abs(t) <= 1.0 + detail::kDomainSlack)) {
      throw DomainError("ChebSeries: evaluation point outside interval");
    }
    const std::size_t n = coeffs.size();
    if (n == 0) return 0.0;
    // Clenshaw on the raw (un-normalized) recurrence p_{k+1} = 2 t p_k - p_{k-1}.
    std::vector<cplx> c(coeffs.begin(), coeffs.end());
    if (kind == ChebKind::T) {
      for (std::size_t k = 1; k < n; ++k) c[k] *= sqrt2;
    }
    cplx b1 = 0.0;
    cplx b2 = 0.0;
    for (std::size_t k = n; k-- > 1;) {
      const cplx b0 = c[k] + 2.0 * t * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    double p1 = 0.0;
    switch (kind) {
      case ChebKind::T: p1 = t; break;
      case ChebKind::U: p1 = 2.0 * t; break;
      case ChebKind::V: p1 = 2.0 * t - 1.0; break;
      case ChebKind::W: p1 = 2.0 * t + 1.0; break;
    }
    // sum_k c_k p_k = c_0 p_0 + b1 p_1 - b2 p_0 (p_0 = 1).
    return c[0] + b1 * p1 - b2;
  }

  /// Drop trailing coefficients once `run` consecutive ones fall below
  /// rel_tol times the largest coefficient.
  void truncate(double rel_tol = 1e-15, std::size_t run = 3) {
    double big = 0.0;
    for (const auto& c : coeffs) big = std::max(big, std::abs(c));
    if (big == 0.0) {
      coeffs.assign(1, 0.0);
      return;
    }
    std::size_t small = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (std::abs(coeffs[k]) < rel_tol * big) {
        if (++small == run) {
          coeffs.resize(k + 1 - run);
          if (coeffs.empty()) coeffs.assign(1, 0.0);
          return;
        }
      } else {
        small = 0;
      }
    }
  }
};

/// Cosine transform of samples taken at the m mapped T-roots (ordering of
/// cheb_roots).  Returns the degree-(m-1) normalized-T interpolant.
/// Direct O(m^2) product.
inline ChebSeries dct_coeffs(std::span<const cplx> samples, const Interval& iv = {}) {
  const std::size_t m = samples.size();
  if (m == 0) throw DomainError("dct_coeffs: no samples");
  ChebSeries s{ChebKind::T, iv, std::vector<cplx>(m)};
  const double md = static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double theta = (2.0 * static_cast<double>(k) + 1.0) * pi / (2.0 * md);
      acc += samples[k] * std::cos(static_cast<double>(j) * theta);
    }
    s.coeffs[j] = (j == 0 ? 1.0 / md : sqrt2 / md) * acc;
  }
  return s;
}

inline ChebSeries dct_coeffs(std::span<const double> samples, const Interval& iv = {}) {
  std::vector<cplx> c(samples.begin(), samples.end());
  return dct_coeffs(std::span<const cplx>(c), iv);
}

using ComplexFn = std::function<cplx(double)>;

/// Normalized-T series of a function analytic on the closed interval.  The
/// sample count doubles from 32 until the tail is resolved; the series is
/// then truncated at rel_tol (3 consecutive small coefficients).
inline ChebSeries adaptive_cheb_series(const ComplexFn& f, const Interval& iv,
                                       double rel_tol = 1e-15, std::size_t max_m = 4096) {
  for (std::size_t m = 32; m <= max_m; m *= 2) {
    const auto x = cheb_roots(m, iv);
    std::vector<cplx> fx(m);
    for (std::size_t k = 0; k < m; ++k) fx[k] = f(x[k]);
    ChebSeries s = dct_coeffs(std::span<const cplx>(fx), iv);
    const std::size_t full = s.coeffs.size();
    s.truncate(rel_tol);
    // Resolved only if truncation happened well before the end.
    if (s.coeffs.size() + 8 < full) return s;
  }
  throw ConvergenceError("adaptive_cheb_series: coefficients did not decay within " +
                         std::to_string(max_m) + " samples");
}

struct BandIntegralOptions {
  std::size_t m_start = 16;
  std::size_t m_cap = 4096;
  double rel_tol = 1e-13;
};

/// Integral of f(s) / (pi sqrt(s - a) sqrt(b - s)) over [a, b], i.e. the
/// zeroth normalized-T coefficient of f.  f must be smooth on the closed
/// interval.  Gauss-Chebyshev sums with doubling until two successive values
/// agree to rel_tol (relative to the sample magnitude).
inline cplx band_integral(const ComplexFn& f, const Interval& iv, const BandIntegralOptions& opt = {}) {
  auto rule = [&](std::size_t m, double& scale) {
    const auto x = cheb_roots(m, iv);
    cplx acc = 0.0;
    scale = 0.0;
    for (double xk : x) {
      const cplx v = f(xk);
      acc += v;
      scale = std::max(scale, std::abs(v));
    }
    return acc / static_cast<double>(m);
  };
  double scale = 0.0;
  cplx prev = rule(opt.m_start, scale);
  for (std::size_t m = 2 * opt.m_start; m <= opt.m_cap; m *= 2) {
    double s2 = 0.0;
    const cplx cur = rule(m, s2);
    scale = std::max(scale, s2);
    if (std::abs(cur - prev) <= opt.rel_tol * std::max(std::abs(cur), scale)) return cur;
    prev = cur;
  }
  throw ConvergenceError("band_integral: no stabilization up to m = " + std::to_string(opt.m_cap));
}

/// Nodes and weights of a discrete measure.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

using RealFn = std::function<double(double)>;

/// m-point Gauss rule for the unnormalized weight
///   h(x) (sqrt(x - a))^alpha (sqrt(b - x))^beta  on [a, b],
/// with (alpha, beta) the exponents of `kind`.  Exact for polynomials of
/// degree <= 2m - 1 when h == 1.
inline QuadratureRule gauss_cheb_rule(ChebKind kind, const Interval& iv, std::size_t m, const RealFn& h) {
  if (m == 0) throw DomainError("gauss_cheb_rule: m must be positive");
  QuadratureRule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  const double md = static_cast<double>(m);
  const double half = 0.5 * iv.length();
  for (std::size_t i = 0; i < m; ++i) {
    const double k = static_cast<double>(i) + 1.0;
    double t = 0.0;
    double w = 0.0;
    switch (kind) {
      case ChebKind::T:
        t = std::cos((2.0 * k - 1.0) * pi / (2.0 * md));
        w = pi / md;
        break;
      case ChebKind::U: {
        const double th = k * pi / (md + 1.0);
        t = std::cos(th);
        w = pi / (md + 1.0) * std::sin(th) * std::sin(th) * half * half;
        break;
      }
      case ChebKind::V:
        t = std::cos((k - 0.5) * pi / (md + 0.5));
        w = 2.0 * pi / (2.0 * md + 1.0) * (1.0 + t) * half;
        break;
      case ChebKind::W:
        t = std::cos(k * pi / (md + 0.5));
        w = 2.0 * pi / (2.0 * md + 1.0) * (1.0 - t) * half;
        break;
    }
    const double x = iv.from_unit(t);
    const double hx = h(x);
    if (!(hx > 0.0) || !std::isfinite(hx)) {
      throw WeightError("gauss_cheb_rule: scaling function not positive at x = " + std::to_string(x));
    }
    r.nodes[i] = x;
    r.weights[i] = w * hx;
  }
  return r;
}

}  // namespace rhop
