#pragma once

// Auxiliary function h_n that removes the constant jumps e^{n Delta} of g on
// the gaps:
//   h_n(z) = R(z) ( sum_j A_j C_band_j[1/R_+](z) + sum_l nu_l C_gap_l[1/R](z) ),
// with the real constants A_j chosen so that h_n(z) = O(1/z).

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "rhop/cauchy.hpp"
#include "rhop/cheb.hpp"
#include "rhop/errors.hpp"
#include "rhop/green.hpp"

namespace rhop {

struct HSystem {
  std::vector<Interval> bands;
  std::vector<Interval> gaps;
  Eigen::MatrixXcd matrix;       // (g+1) x (g+1): row k, column j = int_{band j} s^k / R_+
  std::vector<cplx> band_top;    // int_{band j} s^{g+1} / R_+
  Eigen::MatrixXcd gap_moments;  // (g+2) x g: row k, column l = int_{gap l} s^k / R
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
  std::vector<ChebSeries> band_beta;  // T-coefficients of 1/reduced_R on each band
  std::vector<ChebSeries> gap_beta;   // same on each gap
  double kappa = pi;                  // calibrated density prefactor

  int genus() const { return static_cast<int>(bands.size()) - 1; }
};

struct AuxData {
  int n = 0;
  std::vector<double> A;
  std::vector<cplx> nu;
  cplx h1 = 0.0;
};

/// x reduced into (-pi, pi].
inline double wrap_angle(double x) {
  double r = std::remainder(x, 2.0 * pi);
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

namespace detail {

inline cplx series_cauchy(const ChebSeries& s, double kappa, cplx z, Side side) {
  const int K = static_cast<int>(s.coeffs.size()) - 1;
  const auto c = cauchy_cheb_all(ChebKind::T, K, s.interval, z, side);
  cplx acc = 0.0;
  for (int k = K; k >= 0; --k) acc += s.coeffs[k] * c[k];
  return kappa * acc;
}

}  // namespace detail

inline HSystem build_hsystem(const std::vector<Interval>& bands) {
  HSystem hs;
  hs.bands = bands;
  hs.gaps = gaps_of(bands);
  const int g = hs.genus();
  auto pw = [](int k) { return [k](double s) { return cplx(std::pow(s, k)); }; };

  hs.matrix.resize(g + 1, g + 1);
  hs.band_top.resize(g + 1);
  for (int j = 0; j <= g; ++j) {
    for (int k = 0; k <= g; ++k) hs.matrix(k, j) = integral_over_R(bands, bands[j], pw(k));
    hs.band_top[j] = integral_over_R(bands, bands[j], pw(g + 1));
  }
  hs.gap_moments.resize(g + 2, g);
  for (int l = 0; l < g; ++l) {
    for (int k = 0; k <= g + 1; ++k) hs.gap_moments(k, l) = integral_over_R(bands, hs.gaps[l], pw(k));
  }
  hs.lu.compute(hs.matrix);
  if (!(std::abs(hs.lu.determinant()) > 0.0) || hs.lu.rcond() < 1e-14) {
    throw SingularSystemError("build_hsystem: H matrix is numerically singular");
  }

  auto inv_reduced = [&](const Interval& iv) {
    return adaptive_cheb_series([&](double s) { return 1.0 / reduced_R(bands, s, iv.a, iv.b); }, iv);
  };
  for (const auto& iv : bands) hs.band_beta.push_back(inv_reduced(iv));
  for (const auto& iv : hs.gaps) hs.gap_beta.push_back(inv_reduced(iv));

  // Calibrate the prefactor from the Plemelj jump at one interior point of
  // the first band against the directly evaluated 1/R_+.
  const Interval& b0 = bands[0];
  const double x0 = b0.from_unit(0.3);
  const cplx jump = detail::series_cauchy(hs.band_beta[0], 1.0, x0, Side::Plus) -
                    detail::series_cauchy(hs.band_beta[0], 1.0, x0, Side::Minus);
  const cplx direct = 1.0 / eval_R(bands, x0, Side::Plus);
  const cplx ratio = direct / jump;
  if (std::abs(ratio.imag()) > 1e-9 * std::abs(ratio) || std::abs(ratio.real() / pi - 1.0) > 1e-9) {
    throw Error("build_hsystem: density prefactor calibration failed");
  }
  hs.kappa = ratio.real();
  return hs;
}

inline HSystem build_hsystem(const GreenData& green) { return build_hsystem(green.bands); }

inline AuxData solve_aux(const HSystem& hs, const GreenData& green, int n) {
  if (n < 0) throw DomainError("solve_aux: negative index");
  const int g = hs.genus();
  AuxData a;
  a.n = n;
  a.nu.resize(g);
  for (int l = 0; l < g; ++l) {
    a.nu[l] = cplx(0.0, n == 0 ? 0.0 : wrap_angle(static_cast<double>(n) * green.deltas[l].imag()));
  }
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(g + 1);
  for (int k = 0; k <= g; ++k) {
    for (int l = 0; l < g; ++l) rhs(k) -= a.nu[l] * hs.gap_moments(k, l);
  }
  const Eigen::VectorXcd A = hs.lu.solve(rhs);
  a.A.resize(g + 1);
  cplx top = 0.0;
  for (int j = 0; j <= g; ++j) {
    a.A[j] = A(j).real();
    top += a.A[j] * hs.band_top[j];
  }
  for (int l = 0; l < g; ++l) top += a.nu[l] * hs.gap_moments(g + 1, l);
  a.h1 = -top / (2.0 * pi * I);
  return a;
}

/// R(z) C_band_j[1/R_+](z): the n-independent factor multiplying A_j.
inline cplx h_band_part(const HSystem& hs, std::size_t j, cplx z, Side side = Side::Off) {
  return eval_R(hs.bands, z, side) * detail::series_cauchy(hs.band_beta[j], hs.kappa, z, side);
}

/// R(z) C_gap_l[1/R](z): the n-independent factor multiplying nu_l.
inline cplx h_gap_part(const HSystem& hs, std::size_t l, cplx z, Side side = Side::Off) {
  return eval_R(hs.bands, z, side) * detail::series_cauchy(hs.gap_beta[l], hs.kappa, z, side);
}

/// Off on the real axis means the limit from above, as for g.
inline cplx eval_h(const HSystem& hs, const AuxData& a, cplx z, Side side = Side::Off) {
  if (side == Side::Off && z.imag() == 0.0) side = Side::Plus;
  cplx acc = 0.0;
  for (std::size_t j = 0; j < a.A.size(); ++j) {
    if (a.A[j] != 0.0) acc += a.A[j] * h_band_part(hs, j, z, side);
  }
  for (std::size_t l = 0; l < a.nu.size(); ++l) {
    if (a.nu[l] != 0.0) acc += a.nu[l] * h_gap_part(hs, l, z, side);
  }
  return acc;
}

}  // namespace rhop
