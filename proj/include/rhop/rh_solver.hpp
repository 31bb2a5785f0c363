#pragma once

// Collocation solvers for Riemann-Hilbert problems on circles and intervals.
//
// The unknown is written as Phi = I + C u with u expanded in a Laurent basis
// zeta^k, zeta = (z - q)/r, on every circle and in Chebyshev-Cauchy kernels
// C[p_k w] on every band.  Circles are counterclockwise (the + side is the
// interior) and bands run left to right.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rhop/aux_fun.hpp"
#include "rhop/cauchy.hpp"
#include "rhop/cheb.hpp"
#include "rhop/errors.hpp"
#include "rhop/green.hpp"
#include "rhop/weight.hpp"

namespace rhop {

struct Circle {
  cplx center;
  double radius = 1.0;
  int N = 0;  // 2N + 1 points, Laurent degrees -N..N

  std::size_t count() const { return 2 * static_cast<std::size_t>(N) + 1; }
  cplx point(double theta) const { return center + radius * std::exp(I * theta); }
  cplx zeta(cplx z) const { return (z - center) / radius; }

  std::vector<cplx> collocation() const {
    std::vector<cplx> z(count());
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = point(2.0 * pi * k / static_cast<double>(count()));
    return z;
  }
  /// Midpoints between consecutive collocation angles.
  std::vector<cplx> interleaved() const {
    std::vector<cplx> z(count());
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = point(2.0 * pi * (k + 0.5) / static_cast<double>(count()));
    return z;
  }
};

struct BandContour {
  Interval iv;
  int L = 0;  // 2L + 1 points, degrees 0..2L

  std::size_t count() const { return 2 * static_cast<std::size_t>(L) + 1; }
  std::vector<double> collocation() const { return cheb_roots(count(), iv); }
  /// Chebyshev extrema strictly inside, which interleave the roots.
  std::vector<double> interleaved() const {
    const std::size_t m = count();
    std::vector<double> x(m - 1);
    for (std::size_t k = 1; k < m; ++k) x[k - 1] = iv.from_unit(std::cos(pi * k / static_cast<double>(m)));
    return x;
  }
};

struct ContourSet {
  std::vector<Circle> circles;
  std::vector<BandContour> bands;
};

/// Smallest admissible radius factor: circle diameter 5/4 of the band length.
inline constexpr double kRadiusFactor = 0.625;
/// Default relative enlargement over the smallest radius.
inline constexpr double kRadiusMargin = 0.1;

namespace detail {

// Winding number of f around a circle, from 1024 samples.
inline int winding_number(const std::function<cplx(cplx)>& f, const Circle& c) {
  const int m = 1024;
  double total = 0.0;
  cplx prev = f(c.point(0.0));
  for (int k = 1; k <= m; ++k) {
    const cplx cur = f(c.point(2.0 * pi * k / m));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * pi)));
}

inline void check_nonvanishing(const ScalingFunction& h, const Circle& c, std::size_t j) {
  auto fail = [&](const std::string& why) {
    throw WeightError("h_" + std::to_string(j + 1) + " " + why + " on the disk of radius " +
                      std::to_string(c.radius) + " around band " + std::to_string(j + 1));
  };
  // Pointwise samples over the closed disk.
  for (int ring = 0; ring <= 16; ++ring) {
    const double rr = c.radius * ring / 16.0;
    for (int k = 0; k < 256; ++k) {
      const cplx v = h(c.center + rr * std::exp(I * (2.0 * pi * k / 256.0)));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) fail("has a pole");
      if (std::abs(v) < 1e-300) fail("vanishes");
      if (ring == 0) break;
    }
  }
  // Zero and pole counts of every factor that can vanish.
  for (const auto& f : h.factors) {
    std::vector<std::function<cplx(cplx)>> parts;
    if (const auto* p = std::get_if<factor::Poly>(&f)) {
      parts.emplace_back([p](cplx z) { return detail::horner(p->coeffs, z); });
    } else if (const auto* r = std::get_if<factor::Rational>(&f)) {
      parts.emplace_back([r](cplx z) { return detail::horner(r->num, z); });
      parts.emplace_back([r](cplx z) { return detail::horner(r->den, z); });
    } else if (const auto* e = std::get_if<factor::ExpSum>(&f)) {
      parts.emplace_back([e](cplx z) {
        cplx s = 0.0;
        for (const auto& [cf, rate] : e->terms) s += cf * std::exp(rate * z);
        return s;
      });
    }
    for (const auto& part : parts) {
      if (winding_number(part, c) != 0) fail("has a zero or pole");
    }
  }
}

}  // namespace detail

/// One circle per band, centered at the band midpoint.  The radius is
/// (5/8)(b - a)(1 + margin), reduced where needed to keep circles apart but
/// never below (5/8)(b - a).  Explicit radii must still enclose their band.
inline ContourSet build_contours(const WeightSpec& spec, int ppi, double ratio,
                                 const std::vector<double>& radii = {}, double margin = kRadiusMargin) {
  if (ppi < 2) throw DomainError("build_contours: ppi must be at least 2");
  if (!(ratio > 0.0)) throw DomainError("build_contours: circle ratio must be positive");
  if (!(margin >= 0.0)) throw DomainError("build_contours: radius margin must be nonnegative");
  if (!radii.empty() && radii.size() != spec.size()) {
    throw DomainError("build_contours: one radius per band required");
  }
  const std::size_t nb = spec.size();
  std::vector<double> rmin(nb);
  std::vector<double> r(nb);
  for (std::size_t j = 0; j < nb; ++j) {
    rmin[j] = kRadiusFactor * spec.bands[j].length();
    r[j] = rmin[j] * (1.0 + margin);
  }
  if (radii.empty()) {
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t k = 0; k < nb; ++k) {
        if (k == j) continue;
        const double free = std::abs(spec.bands[j].mid() - spec.bands[k].mid()) - rmin[j] - rmin[k];
        r[j] = std::min(r[j], rmin[j] + 0.45 * std::max(free, 0.0));
      }
    }
  } else {
    r = radii;
  }

  ContourSet cs;
  const int L = ppi / 2;
  const int N = std::max(1, static_cast<int>(std::lround(ratio * ppi / 2.0)));
  for (std::size_t j = 0; j < nb; ++j) {
    const auto& iv = spec.bands[j];
    if (!(r[j] > 0.5 * iv.length())) {
      throw GeometryError("circle " + std::to_string(j + 1) + " does not enclose its band");
    }
    cs.circles.push_back(Circle{cplx(iv.mid(), 0.0), r[j], N});
    cs.bands.push_back(BandContour{iv, L});
  }
  for (std::size_t j = 0; j < nb; ++j) {
    const auto& cj = cs.circles[j];
    for (std::size_t k = 0; k < nb; ++k) {
      if (k == j) continue;
      const auto& ck = cs.circles[k];
      if (std::abs(cj.center - ck.center) <= cj.radius + ck.radius) {
        throw GeometryError("circles " + std::to_string(j + 1) + " and " + std::to_string(k + 1) + " intersect");
      }
      const auto& bk = spec.bands[k];
      const double dist = std::max({bk.a - cj.center.real(), cj.center.real() - bk.b, 0.0});
      if (dist <= cj.radius) {
        throw GeometryError("circle " + std::to_string(j + 1) + " meets band " + std::to_string(k + 1));
      }
    }
    detail::check_nonvanishing(spec.h[j], cj, j);
  }
  return cs;
}

/// Systems with a reciprocal condition estimate below this are singular.
inline constexpr double kSingularRcond = 5e-32;
/// Below this the solve is reported as ill-conditioned.
inline constexpr double kIllConditioned = 1e-14;

struct ResidualReport {
  double max_residual = 0.0;  // max jump defect at off-collocation points, relative to the jump terms
  double rcond = 0.0;         // reciprocal condition estimate of the collocation matrix
};

// ---------------------------------------------------------------------------
// Scalar problems

/// Phi = 1 + C u on a single circle with Phi_+ = Phi_- f.
struct ScalarCircleSolution {
  Circle circle;
  std::vector<cplx> coeffs;  // c_{-N}..c_N
  ResidualReport report;

  cplx c(int k) const { return coeffs[static_cast<std::size_t>(k + circle.N)]; }

  /// Boundary value from inside (Plus) or outside (Minus), or the value off the circle.
  cplx operator()(cplx z, Side side = Side::Off) const {
    const cplx zt = circle.zeta(z);
    const bool inside = side == Side::Plus || (side == Side::Off && std::abs(zt) < 1.0);
    cplx acc = 0.0;
    if (inside) {
      cplx p = 1.0;
      for (int k = 0; k <= circle.N; ++k, p *= zt) acc += c(k) * p;
    } else {
      const cplx iz = 1.0 / zt;
      cplx p = iz;
      for (int k = -1; k >= -circle.N; --k, p *= iz) acc -= c(k) * p;
    }
    return 1.0 + acc;
  }
};

inline ScalarCircleSolution solve_scalar_circle(const std::function<cplx(cplx)>& f, const Circle& circle) {
  const auto z = circle.collocation();
  const int N = circle.N;
  const auto m = static_cast<Eigen::Index>(circle.count());
  Eigen::MatrixXcd A(m, m);
  Eigen::VectorXcd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const cplx zt = circle.zeta(z[i]);
    const cplx fi = f(z[i]);
    for (int k = -N; k <= N; ++k) {
      const cplx p = std::pow(zt, k);
      A(i, k + N) = k >= 0 ? p : fi * p;
    }
    rhs(i) = fi - 1.0;
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  ScalarCircleSolution s{circle, {}, {}};
  s.report.rcond = lu.rcond();
  if (!(s.report.rcond > kSingularRcond)) throw SingularSystemError("solve_scalar_circle: singular collocation system");
  const Eigen::VectorXcd c = lu.solve(rhs);
  s.coeffs.assign(c.data(), c.data() + m);
  const std::size_t q = 4 * circle.count();
  for (std::size_t k = 0; k < q; ++k) {
    const cplx zr = circle.point(2.0 * pi * (k + 0.5) / static_cast<double>(q));
    s.report.max_residual = std::max(s.report.max_residual, std::abs(s(zr, Side::Plus) - s(zr, Side::Minus) * f(zr)));
  }
  return s;
}

/// Phi = 1 + C u on a single interval with Phi_+ = Phi_- f, u in the kind's basis.
struct ScalarIntervalSolution {
  BandContour band;
  ChebKind kind = ChebKind::T;
  std::vector<cplx> coeffs;  // d_0..d_{2L}
  ResidualReport report;

  cplx operator()(cplx z, Side side = Side::Off) const {
    const auto c = cauchy_cheb_all(kind, static_cast<int>(coeffs.size()) - 1, band.iv, z, side);
    cplx acc = 1.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) acc += coeffs[k] * c[k];
    return acc;
  }
};

inline ScalarIntervalSolution solve_scalar_interval(const std::function<cplx(double)>& f, const Interval& iv,
                                                    ChebKind basis, int L) {
  const BandContour band{iv, L};
  const auto x = band.collocation();
  const auto m = static_cast<Eigen::Index>(band.count());
  const int K = 2 * L;
  Eigen::MatrixXcd A(m, m);
  Eigen::VectorXcd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto cp = cauchy_cheb_all(basis, K, iv, x[i], Side::Plus);
    const auto cm = cauchy_cheb_all(basis, K, iv, x[i], Side::Minus);
    const cplx fi = f(x[i]);
    for (int k = 0; k <= K; ++k) A(i, k) = cp[k] - fi * cm[k];
    rhs(i) = fi - 1.0;
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  ScalarIntervalSolution s{band, basis, {}, {}};
  s.report.rcond = lu.rcond();
  if (!(s.report.rcond > kSingularRcond)) throw SingularSystemError("solve_scalar_interval: singular collocation system");
  const Eigen::VectorXcd d = lu.solve(rhs);
  s.coeffs.assign(d.data(), d.data() + m);
  for (double xr : band.interleaved()) {
    s.report.max_residual =
        std::max(s.report.max_residual, std::abs(s(xr, Side::Plus) - s(xr, Side::Minus) * f(xr)));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Matrix problem for the orthogonal polynomial jumps

using Mat2 = std::array<std::array<cplx, 2>, 2>;

inline Mat2 identity2() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

/// Solution of the 2x2 problem: per row r and column m, coefficients over all
/// pieces (bands first, then circles) in the layout of the discretization.
struct RHSolution {
  std::array<std::array<std::vector<cplx>, 2>, 2> u;
  ResidualReport report;
};

/// n-independent discretization data: contour points, basis Cauchy values at
/// collocation and residual points, and the pieces of g and h there.
class RHGeometry {
 public:
  struct PointSet {
    std::vector<cplx> z;
    std::vector<int> piece;    // index into pieces (bands 0..g, circles g+1..2g+1)
    std::vector<Side> side;    // Plus for real points on circles, Plus for bands
    std::array<Eigen::MatrixXcd, 2> Cp;  // column-m basis, + boundary values
    std::array<Eigen::MatrixXcd, 2> Cm;  // column-m basis, - boundary values
    std::vector<cplx> gval;              // g at circle points
    Eigen::MatrixXcd X;                  // R C_band_j[1/R_+] (points x bands)
    Eigen::MatrixXcd Y;                  // R C_gap_l[1/R] (points x gaps)
  };

  RHGeometry(const WeightSpec& spec, ContourSet contours, std::shared_ptr<const GreenData> green,
             std::shared_ptr<const HSystem> hsys)
      : contours_(std::move(contours)), green_(std::move(green)), hsys_(std::move(hsys)), kinds_(spec.kinds) {
    const std::size_t nb = contours_.bands.size();
    offset_.resize(2 * nb + 1, 0);
    for (std::size_t p = 0; p < 2 * nb; ++p) offset_[p + 1] = offset_[p] + piece_size(p);
    colloc_ = make_points(false);
    resid_ = make_points(true);
  }

  const ContourSet& contours() const { return contours_; }
  const GreenData& green() const { return *green_; }
  const HSystem& hsys() const { return *hsys_; }
  std::size_t bands() const { return contours_.bands.size(); }
  std::size_t unknowns() const { return offset_.back(); }
  std::size_t offset(std::size_t piece) const { return offset_[piece]; }
  const PointSet& collocation() const { return colloc_; }
  const PointSet& residual() const { return resid_; }
  const std::vector<ChebKind>& kinds() const { return kinds_; }

  /// Basis kind on band j for column m: column 1 uses the dual exponents.
  ChebKind basis_kind(std::size_t j, int m) const { return m == 0 ? dual_kind(kinds_[j]) : kinds_[j]; }

  bool is_band(std::size_t piece) const { return piece < bands(); }

  /// Values of every column-m basis function at an arbitrary point off all contours.
  Eigen::VectorXcd basis_at(cplx z, int m) const {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(unknowns()));
    fill_row(v.data(), z, static_cast<std::size_t>(-1), m, true);
    return v;
  }

 private:
  std::size_t piece_size(std::size_t p) const {
    const std::size_t nb = contours_.bands.size();
    return p < nb ? contours_.bands[p].count() : contours_.circles[p - nb].count();
  }

  // Basis values of all pieces at z for column m.  `own` is the piece z lies
  // on (its boundary value is taken from side `plus`), or -1.
  void fill_row(cplx* out, cplx z, std::size_t own, int m, bool plus) const {
    const std::size_t nb = bands();
    for (std::size_t p = 0; p < 2 * nb; ++p) {
      cplx* o = out + offset_[p];
      if (p < nb) {
        const auto& bc = contours_.bands[p];
        const Side s = p == own ? (plus ? Side::Plus : Side::Minus) : Side::Off;
        const auto v = cauchy_cheb_all(basis_kind(p, m), 2 * bc.L, bc.iv, z, s);
        std::copy(v.begin(), v.end(), o);
      } else {
        const auto& c = contours_.circles[p - nb];
        const int N = c.N;
        const cplx zt = c.zeta(z);
        const bool inside = p == own ? plus : std::abs(zt) < 1.0;
        for (int k = -N; k <= N; ++k) o[k + N] = 0.0;
        if (inside) {
          cplx pw = 1.0;
          for (int k = 0; k <= N; ++k, pw *= zt) o[k + N] = pw;
        } else {
          const cplx iz = 1.0 / zt;
          cplx pw = iz;
          for (int k = -1; k >= -N; --k, pw *= iz) o[k + N] = -pw;
        }
      }
    }
  }

  PointSet make_points(bool interleaved) const {
    PointSet ps;
    const std::size_t nb = bands();
    for (std::size_t j = 0; j < nb; ++j) {
      const auto& bc = contours_.bands[j];
      for (double x : interleaved ? bc.interleaved() : bc.collocation()) {
        ps.z.emplace_back(x, 0.0);
        ps.piece.push_back(static_cast<int>(j));
        ps.side.push_back(Side::Plus);
      }
    }
    for (std::size_t j = 0; j < nb; ++j) {
      const auto& c = contours_.circles[j];
      for (cplx z : interleaved ? c.interleaved() : c.collocation()) {
        // Points on the real axis take the limit from above.
        if (std::abs(z.imag()) < 1e-14 * c.radius) z = cplx(z.real(), 0.0);
        ps.z.push_back(z);
        ps.piece.push_back(static_cast<int>(nb + j));
        ps.side.push_back(z.imag() == 0.0 ? Side::Plus : Side::Off);
      }
    }
    const auto np = static_cast<Eigen::Index>(ps.z.size());
    const auto nu = static_cast<Eigen::Index>(unknowns());
    const int g = green_->genus();
    ps.X.resize(np, g + 1);
    ps.Y.resize(np, g);
    ps.gval.assign(ps.z.size(), 0.0);
    for (int m = 0; m < 2; ++m) {
      ps.Cp[m].resize(np, nu);
      ps.Cm[m].resize(np, nu);
    }
    Eigen::Matrix<cplx, Eigen::Dynamic, 1> row(nu);
    for (Eigen::Index i = 0; i < np; ++i) {
      const auto own = static_cast<std::size_t>(ps.piece[i]);
      for (int m = 0; m < 2; ++m) {
        fill_row(row.data(), ps.z[i], own, m, true);
        ps.Cp[m].row(i) = row.transpose();
        fill_row(row.data(), ps.z[i], own, m, false);
        ps.Cm[m].row(i) = row.transpose();
      }
      if (own >= nb) {
        ps.gval[i] = eval_g(*green_, ps.z[i], ps.side[i]);
        for (int j = 0; j <= g; ++j) ps.X(i, j) = h_band_part(*hsys_, j, ps.z[i], ps.side[i]);
        for (int l = 0; l < g; ++l) ps.Y(i, l) = h_gap_part(*hsys_, l, ps.z[i], ps.side[i]);
      }
    }
    return ps;
  }

  ContourSet contours_;
  std::shared_ptr<const GreenData> green_;
  std::shared_ptr<const HSystem> hsys_;
  std::vector<ChebKind> kinds_;
  std::vector<std::size_t> offset_;
  PointSet colloc_;
  PointSet resid_;
};

/// Jump matrices of the final problem at every point of a point set, for one
/// index n.  Upper circle halves (and real crossings) carry
/// (2,1) = -e^{2h - 2ng}/w, lower halves +e^{2h - 2ng}/w; bands carry
/// [[0, w e^{-A}], [-e^{A}/w, 0]].
struct JumpAssembly {
  std::vector<Mat2> F;

  static JumpAssembly build(const RHGeometry& geo, const RHGeometry::PointSet& ps, const std::vector<cplx>& wvals,
                            const AuxData& aux) {
    JumpAssembly ja;
    ja.F.resize(ps.z.size());
    const std::size_t nb = geo.bands();
    const double n = static_cast<double>(aux.n);
    for (std::size_t i = 0; i < ps.z.size(); ++i) {
      const auto p = static_cast<std::size_t>(ps.piece[i]);
      Mat2 F = identity2();
      if (p < nb) {
        const double A = aux.A[p];
        F[0][0] = 0.0;
        F[1][1] = 0.0;
        F[0][1] = wvals[i] * std::exp(-A);
        F[1][0] = -std::exp(A) / wvals[i];
      } else {
        cplx h = 0.0;
        for (std::size_t j = 0; j < aux.A.size(); ++j) h += aux.A[j] * ps.X(static_cast<Eigen::Index>(i), j);
        for (std::size_t l = 0; l < aux.nu.size(); ++l) h += aux.nu[l] * ps.Y(static_cast<Eigen::Index>(i), l);
        const double sign = ps.z[i].imag() >= 0.0 ? -1.0 : 1.0;
        F[1][0] = sign * std::exp(2.0 * h - 2.0 * n * ps.gval[i]) / wvals[i];
      }
      ja.F[i] = F;
    }
    return ja;
  }
};

/// Weight values at the points of a set (band points: the real weight; circle
/// points: the continued weight of that circle's band).
inline std::vector<cplx> weight_values(const WeightSpec& spec, const RHGeometry& geo,
                                       const RHGeometry::PointSet& ps) {
  std::vector<cplx> w(ps.z.size());
  const std::size_t nb = geo.bands();
  for (std::size_t i = 0; i < ps.z.size(); ++i) {
    const auto p = static_cast<std::size_t>(ps.piece[i]);
    const std::size_t j = p < nb ? p : p - nb;
    w[i] = spec.w(j, ps.z[i], Side::Plus);
  }
  return w;
}

/// Assemble, factor once and solve both rows.
inline RHSolution solve_matrix_rhp(const RHGeometry& geo, const JumpAssembly& colloc_jumps,
                                   const JumpAssembly& resid_jumps) {
  const auto& ps = geo.collocation();
  const auto P = static_cast<Eigen::Index>(geo.unknowns());
  Eigen::MatrixXcd A(2 * P, 2 * P);
  for (int m = 0; m < 2; ++m) {
    for (int mp = 0; mp < 2; ++mp) {
      auto blk = A.block(m * P, mp * P, P, P);
      Eigen::VectorXcd f(P);
      for (Eigen::Index i = 0; i < P; ++i) f(i) = colloc_jumps.F[i][mp][m];
      blk.noalias() = -(f.asDiagonal() * ps.Cm[mp]);
      if (m == mp) blk += ps.Cp[m];
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  RHSolution sol;
  sol.report.rcond = lu.rcond();
  if (!(sol.report.rcond > kSingularRcond)) throw SingularSystemError("solve_matrix_rhp: singular collocation system");
  for (int r = 0; r < 2; ++r) {
    Eigen::VectorXcd rhs(2 * P);
    for (int m = 0; m < 2; ++m) {
      for (Eigen::Index i = 0; i < P; ++i) rhs(m * P + i) = colloc_jumps.F[i][r][m] - (r == m ? 1.0 : 0.0);
    }
    const Eigen::VectorXcd u = lu.solve(rhs);
    for (int m = 0; m < 2; ++m) sol.u[r][m].assign(u.data() + m * P, u.data() + (m + 1) * P);
  }

  // Jump defect at the interleaved points.
  const auto& rs = geo.residual();
  const auto Q = static_cast<Eigen::Index>(rs.z.size());
  double worst = 0.0;
  for (int r = 0; r < 2; ++r) {
    std::array<Eigen::VectorXcd, 2> plus;
    std::array<Eigen::VectorXcd, 2> minus;
    for (int m = 0; m < 2; ++m) {
      const Eigen::Map<const Eigen::VectorXcd> u(sol.u[r][m].data(), P);
      plus[m] = rs.Cp[m] * u;
      minus[m] = rs.Cm[m] * u;
      plus[m].array() += (r == m ? 1.0 : 0.0);
      minus[m].array() += (r == m ? 1.0 : 0.0);
    }
    for (Eigen::Index i = 0; i < Q; ++i) {
      const auto& F = resid_jumps.F[i];
      for (int m = 0; m < 2; ++m) {
        const cplx t0 = minus[0](i) * F[0][m];
        const cplx t1 = minus[1](i) * F[1][m];
        const double scale = 1.0 + std::abs(t0) + std::abs(t1);
        worst = std::max(worst, std::abs(plus[m](i) - t0 - t1) / scale);
      }
    }
  }
  sol.report.max_residual = worst;
  return sol;
}

/// Coefficient of 1/z of the solution at infinity.
inline Mat2 first_order(const RHGeometry& geo, const RHSolution& sol) {
  Mat2 out{};
  const std::size_t nb = geo.bands();
  for (int r = 0; r < 2; ++r) {
    for (int m = 0; m < 2; ++m) {
      const auto& u = sol.u[r][m];
      if (u.empty()) continue;
      cplx acc = 0.0;
      for (std::size_t j = 0; j < nb; ++j) {
        acc += I / (2.0 * pi) * u[geo.offset(j)];
        const auto& c = geo.contours().circles[j];
        acc -= c.radius * u[geo.offset(nb + j) + static_cast<std::size_t>(c.N - 1)];
      }
      out[r][m] = acc;
    }
  }
  return out;
}

/// The solution matrix at a point off every contour.
inline Mat2 evaluate(const RHGeometry& geo, const RHSolution& sol, cplx z) {
  Mat2 out = identity2();
  const auto P = static_cast<Eigen::Index>(geo.unknowns());
  for (int m = 0; m < 2; ++m) {
    const Eigen::VectorXcd b = geo.basis_at(z, m);
    for (int r = 0; r < 2; ++r) {
      const Eigen::Map<const Eigen::VectorXcd> u(sol.u[r][m].data(), P);
      out[r][m] += (b.transpose() * u)(0);
    }
  }
  return out;
}

}  // namespace rhop
