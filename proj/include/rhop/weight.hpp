#pragma once

// Weights of the form  w_j(x) = h_j(x) (sqrt(x - a_j))^alpha_j (sqrt(b_j - x))^beta_j
// on a union of disjoint bands, with h_j drawn from a small family of
// analytic presets that can be evaluated anywhere in the complex plane.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "rhop/cauchy.hpp"
#include "rhop/cheb.hpp"
#include "rhop/errors.hpp"

namespace rhop {

namespace factor {
struct One {};
/// exp(c z)
struct ExpScale {
  double c = 0.0;
};
/// sum_k coeffs[k] z^k
struct Poly {
  std::vector<double> coeffs;
};
/// num(z) / den(z), ascending coefficients
struct Rational {
  std::vector<double> num;
  std::vector<double> den;
};
/// sum_k coef_k exp(rate_k z)
struct ExpSum {
  std::vector<std::pair<double, double>> terms;  // (coef, rate)
};
}  // namespace factor

using ScalingFactor = std::variant<factor::One, factor::ExpScale, factor::Poly, factor::Rational, factor::ExpSum>;

namespace detail {
inline cplx horner(const std::vector<double>& c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}
}  // namespace detail

/// Product of preset factors.  An empty product is h == 1.
struct ScalingFunction {
  std::vector<ScalingFactor> factors;

  ScalingFunction() = default;
  explicit ScalingFunction(std::vector<ScalingFactor> f) : factors(std::move(f)) {}

  cplx operator()(cplx z) const {
    cplx v = 1.0;
    for (const auto& f : factors) {
      v *= std::visit(
          [&](const auto& p) -> cplx {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, factor::One>) {
              return 1.0;
            } else if constexpr (std::is_same_v<P, factor::ExpScale>) {
              return std::exp(p.c * z);
            } else if constexpr (std::is_same_v<P, factor::Poly>) {
              return detail::horner(p.coeffs, z);
            } else if constexpr (std::is_same_v<P, factor::Rational>) {
              return detail::horner(p.num, z) / detail::horner(p.den, z);
            } else {
              cplx s = 0.0;
              for (const auto& [c, r] : p.terms) s += c * std::exp(r * z);
              return s;
            }
          },
          f);
    }
    return v;
  }

  double real(double x) const { return (*this)(cplx(x, 0.0)).real(); }

  /// Factor values that can vanish (polynomials, numerators, denominators and
  /// exponential sums); used to check that h and 1/h are analytic on a disk.
  bool has_zero_risk() const {
    for (const auto& f : factors) {
      if (!std::holds_alternative<factor::One>(f) && !std::holds_alternative<factor::ExpScale>(f)) return true;
    }
    return false;
  }

  ScalingFunction times(ScalingFactor f) const {
    ScalingFunction out = *this;
    out.factors.push_back(std::move(f));
    return out;
  }
};

/// The weight: bands, endpoint exponents (through the kind) and scaling functions.
struct WeightSpec {
  std::vector<Interval> bands;
  std::vector<ChebKind> kinds;
  std::vector<ScalingFunction> h;

  WeightSpec() = default;
  WeightSpec(std::vector<Interval> b, std::vector<ChebKind> k, std::vector<ScalingFunction> hs = {})
      : bands(std::move(b)), kinds(std::move(k)), h(std::move(hs)) {
    if (h.empty()) h.assign(bands.size(), ScalingFunction{});
    validate();
  }

  std::size_t size() const { return bands.size(); }
  int genus() const { return static_cast<int>(bands.size()) - 1; }

  void validate() const {
    if (bands.empty()) throw DomainError("WeightSpec: at least one band required");
    if (kinds.size() != bands.size() || h.size() != bands.size()) {
      throw DomainError("WeightSpec: bands, kinds and h must have equal length");
    }
    for (std::size_t j = 0; j + 1 < bands.size(); ++j) {
      if (!(bands[j].b < bands[j + 1].a)) {
        throw DomainError("WeightSpec: bands must be disjoint and increasing");
      }
    }
    for (std::size_t j = 0; j < bands.size(); ++j) {
      const auto& iv = bands[j];
      for (int i = 0; i <= 256; ++i) {
        const double x = iv.a + iv.length() * i / 256.0;
        const cplx v = h[j](x);
        if (!(v.real() > 0.0) || !std::isfinite(v.real()) || std::abs(v.imag()) > 1e-12 * std::abs(v.real())) {
          throw WeightError("WeightSpec: h_" + std::to_string(j + 1) + " is not positive at x = " +
                            std::to_string(x));
        }
      }
    }
  }

  /// Unnormalized weight of band j, continued off the band with principal
  /// branches.  On the real axis outside the band, `side` selects the limit
  /// from above (Plus, also used for Off) or below.
  cplx w(std::size_t j, cplx z, Side side = Side::Off) const {
    const auto& iv = bands[j];
    const auto [alpha, beta] = exponents(kinds[j]);
    cplx sa;
    cplx sb;
    if (z.imag() == 0.0) {
      const double x = z.real();
      const double up = side == Side::Minus ? -1.0 : 1.0;
      sa = x >= iv.a ? cplx(std::sqrt(x - iv.a)) : cplx(0.0, up * std::sqrt(iv.a - x));
      sb = x <= iv.b ? cplx(std::sqrt(iv.b - x)) : cplx(0.0, -up * std::sqrt(x - iv.b));
    } else {
      sa = std::sqrt(z - iv.a);
      sb = std::sqrt(iv.b - z);
    }
    cplx v = h[j](z);
    v *= alpha > 0 ? sa : 1.0 / sa;
    v *= beta > 0 ? sb : 1.0 / sb;
    return v;
  }

  /// Real weight on band j.
  double w_real(std::size_t j, double x) const { return w(j, cplx(x, 0.0)).real(); }

  /// Same bands and kinds with every h_j multiplied by exp(t x).
  WeightSpec scaled_exp(double t) const {
    WeightSpec out = *this;
    if (t != 0.0) {
      for (auto& hj : out.h) hj = hj.times(factor::ExpScale{t});
    }
    return out;
  }
};

}  // namespace rhop
