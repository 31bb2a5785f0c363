#pragma once

// Closed-form Cauchy transforms C[f](z) = (2 pi i)^{-1} int f(s)/(s - z) ds of
// the mapped Chebyshev families against their unit-mass weights, together
// with the square-root and inverse-Joukowsky building blocks.

#include <cmath>
#include <complex>
#include <vector>

#include "rhop/cheb.hpp"
#include "rhop/errors.hpp"

namespace rhop {

/// Which limit to take when z sits on a cut.  Plus is the limit from the
/// upper half-plane, Minus from the lower.  Off means z is not on the cut.
///
/// The side only matters for real z strictly inside the cut interval; at any
/// other point the functions below are continuous and the side is ignored.
enum class Side { Plus, Minus, Off };

namespace detail {

// Strip a negative zero imaginary part so that principal branches see the
// upper half-plane limit on the real axis.
inline cplx canon(cplx z) {
  if (z.imag() == 0.0) return {z.real(), 0.0};
  return z;
}

inline bool on_cut(cplx z, const Interval& iv) {
  return z.imag() == 0.0 && z.real() > iv.a && z.real() < iv.b;
}

inline void require_side(cplx z, const Interval& iv, Side side, const char* who) {
  if (side == Side::Off && on_cut(z, iv)) {
    throw DomainError(std::string(who) + ": point on the cut needs Side::Plus or Side::Minus");
  }
}

}  // namespace detail

/// sqrt(z - a) sqrt(z - b) with principal branches: cut exactly on [a, b],
/// asymptotic to z at infinity.  Zero at the endpoints.
inline cplx sqrt_cut(cplx z, const Interval& iv, Side side = Side::Off) {
  detail::require_side(z, iv, side, "sqrt_cut");
  if (detail::on_cut(z, iv)) {
    const double x = z.real();
    const double m = std::sqrt(x - iv.a) * std::sqrt(iv.b - x);
    return side == Side::Plus ? cplx(0.0, m) : cplx(0.0, -m);
  }
  z = detail::canon(z);
  if (z == cplx(iv.a) || z == cplx(iv.b)) return 0.0;
  return std::sqrt(z - iv.a) * std::sqrt(z - iv.b);
}

/// Right inverse of the Joukowsky map, z - sqrt(z - 1) sqrt(z + 1), mapping
/// the slit plane into the unit disk.  Computed as 1 / (z + sqrt(...)) to
/// avoid cancellation for large |z|.
inline cplx joukowsky_inv(cplx z, Side side = Side::Off) {
  static const Interval unit{-1.0, 1.0};
  detail::require_side(z, unit, side, "joukowsky_inv");
  if (detail::on_cut(z, unit)) {
    const double x = z.real();
    const double s = std::sqrt((1.0 - x) * (1.0 + x));
    return side == Side::Plus ? cplx(x, -s) : cplx(x, s);
  }
  z = detail::canon(z);
  if (z == cplx(1.0)) return 1.0;
  if (z == cplx(-1.0)) return -1.0;
  return 1.0 / (z + sqrt_cut(z, unit));
}

namespace detail {

// Pieces shared by all degrees: the degree-0 transform and J = J_+^{-1}(M^{-1}(z)).
struct KernelBase {
  cplx c0;
  cplx j;
  double tscale;  // extra factor for degrees k >= 1 (sqrt 2 for T, 1 otherwise)
};

inline KernelBase kernel_base(ChebKind kind, const Interval& iv, cplx z, Side side) {
  require_side(z, iv, side, "cauchy_cheb");
  const bool cut = on_cut(z, iv);
  const Side s = cut ? side : Side::Off;
  z = canon(z);
  const double L = iv.length();
  const bool at_a = !cut && z == cplx(iv.a);
  const bool at_b = !cut && z == cplx(iv.b);
  const cplx t = iv.to_unit(z);
  KernelBase kb{};
  kb.tscale = 1.0;
  kb.j = at_a ? cplx(-1.0) : at_b ? cplx(1.0) : joukowsky_inv(t, s);

  // Boundary values of sqrt(z - a) and sqrt(z - b) for the V/W ratios.
  cplx ra;
  cplx rb;
  if (cut) {
    const double x = z.real();
    ra = std::sqrt(x - iv.a);
    rb = (s == Side::Plus ? cplx(0.0, 1.0) : cplx(0.0, -1.0)) * std::sqrt(iv.b - x);
  } else {
    ra = std::sqrt(z - iv.a);
    rb = std::sqrt(z - iv.b);
  }

  switch (kind) {
    case ChebKind::T: {
      if (at_a || at_b) throw UnboundedError("cauchy_cheb: T kernel is unbounded at an endpoint");
      kb.c0 = I / (2.0 * pi * sqrt_cut(z, iv, s));
      kb.tscale = sqrt2;
      break;
    }
    case ChebKind::U:
      kb.c0 = (I / pi) * (2.0 / L) * kb.j;
      break;
    case ChebKind::V:
      // -1 + sqrt(z-a)/sqrt(z-b) = L / (sqrt(z-b) (sqrt(z-a) + sqrt(z-b)))
      if (at_b) throw UnboundedError("cauchy_cheb: V kernel is unbounded at the right endpoint");
      kb.c0 = (I / (2.0 * pi)) * (2.0 / L) * (L / (rb * (ra + rb)));
      break;
    case ChebKind::W:
      // 1 - sqrt(z-b)/sqrt(z-a) = L / (sqrt(z-a) (sqrt(z-a) + sqrt(z-b)))
      if (at_a) throw UnboundedError("cauchy_cheb: W kernel is unbounded at the left endpoint");
      kb.c0 = (I / (2.0 * pi)) * (2.0 / L) * (L / (ra * (ra + rb)));
      break;
  }
  return kb;
}

}  // namespace detail

/// C[p_k w](z) for the degree-k polynomial of `kind` mapped to `iv`, against
/// the unit-mass weight of that kind on `iv`.
inline cplx cauchy_cheb(ChebKind kind, int k, const Interval& iv, cplx z, Side side = Side::Off) {
  if (k < 0) throw DomainError("cauchy_cheb: negative degree");
  const auto kb = detail::kernel_base(kind, iv, z, side);
  if (k == 0) return kb.c0;
  return kb.tscale * kb.c0 * std::pow(kb.j, k);
}

/// Degrees 0..kmax at one point.
inline std::vector<cplx> cauchy_cheb_all(ChebKind kind, int kmax, const Interval& iv, cplx z,
                                         Side side = Side::Off) {
  if (kmax < 0) return {};
  const auto kb = detail::kernel_base(kind, iv, z, side);
  std::vector<cplx> out(static_cast<std::size_t>(kmax) + 1);
  out[0] = kb.c0;
  cplx v = kb.tscale * kb.c0;
  for (int k = 1; k <= kmax; ++k) {
    v *= kb.j;
    out[static_cast<std::size_t>(k)] = v;
  }
  return out;
}

/// Coefficient of 1/z in the expansion of cauchy_cheb at infinity.
inline cplx cauchy_first_order(ChebKind /*kind*/, int k, const Interval& /*iv*/) {
  if (k < 0) throw DomainError("cauchy_first_order: negative degree");
  return k == 0 ? I / (2.0 * pi) : cplx(0.0);
}

}  // namespace rhop
