#pragma once

// Exterior Green's function g with pole at infinity for a union of bands:
// g' = Q_g / R, with Q_g fixed by vanishing gap integrals, g evaluated in
// closed form through inverse-Joukowsky powers on every band.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "rhop/cauchy.hpp"
#include "rhop/cheb.hpp"
#include "rhop/errors.hpp"
#include "rhop/weight.hpp"

namespace rhop {

/// R(z) = prod_j sqrt(z - a_j) sqrt(z - b_j), cut on the bands, ~ z^{g+1}.
/// On a gap R is continuous and real; there the side is irrelevant.
inline cplx eval_R(const std::vector<Interval>& bands, cplx z, Side side = Side::Off) {
  cplx r = 1.0;
  for (const auto& iv : bands) r *= sqrt_cut(z, iv, side);
  return r;
}

inline cplx eval_R(const WeightSpec& spec, cplx z, Side side = Side::Off) { return eval_R(spec.bands, z, side); }

/// R_+(s) / (sqrt(s - c) sqrt(d - s)) for real s in (c, d), where [c, d] is a
/// band or a gap.  The endpoint singularities are divided out analytically,
/// which leaves a function smooth on the closed interval.
inline cplx reduced_R(const std::vector<Interval>& bands, double s, double c, double d) {
  cplx r = I;
  for (const auto& iv : bands) {
    for (double e : {iv.a, iv.b}) {
      if (e == c || e == d) continue;
      const double x = s - e;
      r *= x >= 0.0 ? cplx(std::sqrt(x)) : cplx(0.0, std::sqrt(-x));
    }
  }
  return r;
}

/// Gaps (b_j, a_{j+1}) of a band list.
inline std::vector<Interval> gaps_of(const std::vector<Interval>& bands) {
  std::vector<Interval> g;
  for (std::size_t j = 0; j + 1 < bands.size(); ++j) g.emplace_back(bands[j].b, bands[j + 1].a);
  return g;
}

/// int_{[c,d]} f(s) / R_+(s) ds for f smooth on [c, d].
inline cplx integral_over_R(const std::vector<Interval>& bands, const Interval& iv, const ComplexFn& f,
                            const BandIntegralOptions& opt = {}) {
  return pi * band_integral([&](double s) { return f(s) / reduced_R(bands, s, iv.a, iv.b); }, iv, opt);
}

/// Coefficients h_0..h_{g-1} of the monic Q_g with vanishing gap integrals of Q_g / R.
inline std::vector<double> solve_Q(const std::vector<Interval>& bands) {
  const int g = static_cast<int>(bands.size()) - 1;
  if (g <= 0) return {};
  const auto gaps = gaps_of(bands);
  Eigen::MatrixXcd A(g, g);
  Eigen::VectorXcd rhs(g);
  for (int l = 0; l < g; ++l) {
    for (int k = 0; k <= g; ++k) {
      const cplx v = integral_over_R(bands, gaps[l], [k](double s) { return cplx(std::pow(s, k)); });
      if (k < g) {
        A(l, k) = v;
      } else {
        rhs(l) = -v;
      }
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  if (!(std::abs(lu.determinant()) > 0.0)) throw SingularSystemError("solve_Q: singular gap system");
  const Eigen::VectorXcd h = lu.solve(rhs);
  std::vector<double> out(g);
  for (int k = 0; k < g; ++k) out[k] = h(k).real();
  return out;
}

inline std::vector<double> solve_Q(const WeightSpec& spec) { return solve_Q(spec.bands); }

/// Everything needed to evaluate g.
struct GreenData {
  std::vector<Interval> bands;
  std::vector<double> q_coeffs;          // Q_g(z) = z^g + sum_k q_k z^k
  std::vector<ChebSeries> band_series;   // alpha_{j,k}
  std::vector<cplx> deltas;              // jump g_+ - g_- on each gap
  cplx cap_const = 1.0;                  // lim e^{g(z)} / z
  cplx g1 = 0.0;                         // 1/z coefficient of g
  cplx phi_a1 = 0.0;                     // Phi(a_1), J_1(a_1) taken as -1

  int genus() const { return static_cast<int>(bands.size()) - 1; }

  cplx Q(cplx z) const {
    cplx acc = 1.0;
    for (auto it = q_coeffs.rbegin(); it != q_coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
  }
};

namespace detail {

// log J for J = J_+^{-1}(t).  J is real negative exactly when t is real and
// t < -1; the branch there follows the side (Plus and Off take the upper limit).
inline cplx log_joukowsky(cplx j, cplx t, Side side) {
  if (t.imag() == 0.0 && t.real() <= -1.0) {
    const double m = std::log(std::abs(j));
    return side == Side::Minus ? cplx(m, pi) : cplx(m, -pi);
  }
  return std::log(j);
}

// sum_j [ -alpha_{j,0} log J_j - sqrt2 sum_{k>=1} alpha_{j,k} J_j^k / k ]
inline cplx eval_phi(const GreenData& d, cplx z, Side side, bool left_endpoint_fix = false) {
  cplx total = 0.0;
  for (std::size_t j = 0; j < d.bands.size(); ++j) {
    const auto& iv = d.bands[j];
    const auto& c = d.band_series[j].coeffs;
    const cplx t = iv.to_unit(z);
    const bool cut = z.imag() == 0.0 && z.real() > iv.a && z.real() < iv.b;
    cplx J;
    cplx logJ;
    if (left_endpoint_fix && j == 0) {
      J = -1.0;
      logJ = cplx(0.0, side == Side::Minus ? pi : -pi);
    } else {
      J = joukowsky_inv(cplx(t.real(), t.imag()), cut ? side : Side::Off);
      logJ = log_joukowsky(J, t, side);
    }
    cplx acc = -c[0] * logJ;
    cplx p = 1.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
      p *= J;
      acc -= sqrt2 * c[k] * p / static_cast<double>(k);
    }
    total += acc;
  }
  return total;
}

}  // namespace detail

inline GreenData build_green(const std::vector<Interval>& bands) {
  if (bands.empty()) throw DomainError("build_green: no bands");
  GreenData d;
  d.bands = bands;
  d.q_coeffs = solve_Q(bands);
  const int g = d.genus();

  for (int j = 0; j <= g; ++j) {
    const auto& iv = bands[j];
    auto s = adaptive_cheb_series(
        [&](double x) { return I * d.Q(x) / reduced_R(bands, x, iv.a, iv.b); }, iv);
    d.band_series.push_back(std::move(s));
  }

  // Jump across gap l: -2 sum_{k>l} int_{band k} (g')_+ ds.
  std::vector<cplx> band_mass(g + 1);
  for (int j = 0; j <= g; ++j) {
    band_mass[j] = integral_over_R(bands, bands[j], [&](double s) { return d.Q(s); });
  }
  for (int l = 0; l < g; ++l) {
    cplx acc = 0.0;
    for (int k = l + 1; k <= g; ++k) acc += band_mass[k];
    d.deltas.push_back(-2.0 * acc);
  }

  d.phi_a1 = detail::eval_phi(d, cplx(bands[0].a, 0.0), Side::Plus, true);
  cplx logc = -d.phi_a1.real();
  cplx g1 = 0.0;
  for (int j = 0; j <= g; ++j) {
    const auto& iv = bands[j];
    const auto& c = d.band_series[j].coeffs;
    logc += c[0] * std::log(4.0 / iv.length());
    const cplx c1 = c.size() > 1 ? c[1] : cplx(0.0);
    g1 -= c[0] * iv.mid() + c1 * iv.length() / (2.0 * sqrt2);
  }
  d.cap_const = std::exp(logc);
  d.g1 = g1;
  return d;
}

inline GreenData build_green(const WeightSpec& spec) { return build_green(spec.bands); }

/// g(z) = Phi(z) - Re Phi(a_1).  For real z the side picks the limit from
/// above or below; Off on the real axis means the upper limit.
inline cplx eval_g(const GreenData& d, cplx z, Side side = Side::Off) {
  if (z.imag() == 0.0) {
    for (const auto& iv : d.bands) {
      if (side == Side::Off && z.real() > iv.a && z.real() < iv.b) {
        throw DomainError("eval_g: point on a band needs Side::Plus or Side::Minus");
      }
    }
    z = cplx(z.real(), 0.0);
  }
  return detail::eval_phi(d, z, side) - d.phi_a1.real();
}

/// g'(z) = Q_g(z) / R(z).
inline cplx eval_gprime(const GreenData& d, cplx z, Side side = Side::Off) {
  return d.Q(z) / eval_R(d.bands, z, side);
}

}  // namespace rhop
