#pragma once

// End-to-end computations on top of the RH solver: recurrence coefficients,
// weighted Cauchy transforms of the orthonormal polynomials, Toda evolution
// of the Jacobi operator and the p_j-series of 1/x.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rhop/aux_fun.hpp"
#include "rhop/cheb.hpp"
#include "rhop/errors.hpp"
#include "rhop/green.hpp"
#include "rhop/jacobi.hpp"
#include "rhop/rh_solver.hpp"
#include "rhop/weight.hpp"

namespace rhop {

struct Resolution {
  int ppi = 16;
  double circle_ratio = 10.0;
  std::vector<double> circle_radii;  // empty: defaults
  double radius_margin = kRadiusMargin;
};

/// Imaginary parts above this are reported, above kImagError they fail the index.
inline constexpr double kImagWarn = 1e-9;
inline constexpr double kImagError = 1e-6;
/// Circle jumps above this lose digits to cancellation.
inline constexpr double kJumpWarn = 1e7;

/// One solved problem for index n.
struct NSolve {
  int n = 0;
  AuxData aux;
  Mat2 S1{};
  ResidualReport report;
  double max_jump = 0.0;   // max |F21| over circle points
  std::vector<Mat2> probes;  // solution at requested points
};

class Engine {
 public:
  explicit Engine(const WeightSpec& spec, Resolution res = {}) : spec_(spec), res_(std::move(res)) {
    green_ = std::make_shared<const GreenData>(build_green(spec_));
    hsys_ = std::make_shared<const HSystem>(build_hsystem(*green_));
    auto contours = build_contours(spec_, res_.ppi, res_.circle_ratio, res_.circle_radii, res_.radius_margin);
    geo_ = std::make_shared<const RHGeometry>(spec_, std::move(contours), green_, hsys_);
    refresh_weights();
  }

  /// Same bands, kinds and contours with a different scaling function.
  Engine with_weight(const WeightSpec& spec) const {
    if (spec.bands != spec_.bands || spec.kinds != spec_.kinds) {
      throw DomainError("Engine::with_weight: bands and kinds must match");
    }
    for (std::size_t j = 0; j < spec.size(); ++j) detail::check_nonvanishing(spec.h[j], geo_->contours().circles[j], j);
    Engine e(*this);
    e.spec_ = spec;
    e.refresh_weights();
    return e;
  }

  const WeightSpec& spec() const { return spec_; }
  const Resolution& resolution() const { return res_; }
  const GreenData& green() const { return *green_; }
  const HSystem& hsys() const { return *hsys_; }
  const RHGeometry& geometry() const { return *geo_; }

  AuxData aux(int n) const { return solve_aux(*hsys_, *green_, n); }

  NSolve solve(int n, const std::vector<cplx>& probes = {}) const {
    NSolve s;
    s.n = n;
    s.aux = aux(n);
    const auto cj = JumpAssembly::build(*geo_, geo_->collocation(), wcol_, s.aux);
    const auto rj = JumpAssembly::build(*geo_, geo_->residual(), wres_, s.aux);
    const std::size_t nb = geo_->bands();
    for (std::size_t i = 0; i < cj.F.size(); ++i) {
      if (static_cast<std::size_t>(geo_->collocation().piece[i]) >= nb) {
        s.max_jump = std::max(s.max_jump, std::abs(cj.F[i][1][0]));
      }
    }
    const auto sol = solve_matrix_rhp(*geo_, cj, rj);
    s.S1 = first_order(*geo_, sol);
    s.report = sol.report;
    for (cplx z : probes) s.probes.push_back(evaluate(*geo_, sol, z));
    return s;
  }

  /// True when z is outside every circle and off the real bands.
  bool outside_disks(cplx z) const {
    for (const auto& c : geo_->contours().circles) {
      if (std::abs(z - c.center) <= c.radius) return false;
    }
    return true;
  }

 private:
  void refresh_weights() {
    wcol_ = weight_values(spec_, *geo_, geo_->collocation());
    wres_ = weight_values(spec_, *geo_, geo_->residual());
  }

  WeightSpec spec_;
  Resolution res_;
  std::shared_ptr<const GreenData> green_;
  std::shared_ptr<const HSystem> hsys_;
  std::shared_ptr<const RHGeometry> geo_;
  std::vector<cplx> wcol_;
  std::vector<cplx> wres_;
};

namespace detail {

// Run body(i) for i in [0, count) on up to `threads` workers.  Exceptions are
// the body's responsibility.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Real part of v after the imaginary-part policy.
inline double realify(cplx v, const char* what, int n, std::vector<std::string>& warnings) {
  const double im = std::abs(v.imag());
  const double scale = std::max(1.0, std::abs(v.real()));
  if (im > kImagError * scale) {
    throw Error(std::string(what) + " has imaginary part " + fmt_g(v.imag()));
  }
  if (im > kImagWarn * scale) {
    warnings.push_back("n=" + std::to_string(n) + ": " + what + " imaginary part " + fmt_g(v.imag()));
  }
  return v.real();
}

struct Pair {
  double a = 0.0;
  double b = 0.0;
};

inline Pair extract_pair(const GreenData& green, const NSolve& s0, const NSolve& s1,
                         std::vector<std::string>& warnings) {
  const cplx a = s0.S1[0][0] - s1.S1[0][0] - s0.aux.h1 + s1.aux.h1 - green.g1;
  const cplx b2 = s1.S1[0][1] * s1.S1[1][0];
  Pair p;
  p.a = realify(a, "a", s0.n, warnings);
  const double b2r = realify(b2, "b^2", s0.n, warnings);
  if (!(b2r > 0.0)) throw Error("b^2 = " + std::to_string(b2r) + " is not positive (under-resolved)");
  p.b = std::sqrt(b2r);
  return p;
}

}  // namespace detail

/// (a_n, b_n) from the solves for n and n + 1.
inline std::pair<double, double> recurrence_pair(const Engine& eng, int n) {
  if (n < 0) throw DomainError("recurrence_pair: negative index");
  std::vector<std::string> warnings;
  const auto p = detail::extract_pair(eng.green(), eng.solve(n), eng.solve(n + 1), warnings);
  return {p.a, p.b};
}

/// Coefficients n0..n1, one RH solve per index in [n0, n1 + 1].
inline JacobiSegment recurrence_range(const Engine& eng, int n0, int n1, unsigned threads = 0) {
  if (n0 < 0 || n1 < n0) throw DomainError("recurrence_range: need 0 <= n0 <= n1");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t count = static_cast<std::size_t>(n1 - n0) + 1;
  std::vector<std::optional<NSolve>> solves(count + 1);
  std::vector<std::string> solve_error(count + 1);
  detail::parallel_for(count + 1, threads, [&](std::size_t i) {
    try {
      solves[i] = eng.solve(n0 + static_cast<int>(i));
    } catch (const std::exception& e) {
      solve_error[i] = e.what();
    }
  });

  JacobiSegment seg;
  seg.n0 = n0;
  seg.n1 = n1;
  seg.ppi = eng.resolution().ppi;
  seg.circle_ratio = eng.resolution().circle_ratio;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < count; ++i) {
    const int n = n0 + static_cast<int>(i);
    double a = nan;
    double b = nan;
    double res = nan;
    std::optional<std::string> err;
    if (!solves[i] || !solves[i + 1]) {
      err = "solve failed: " + (solves[i] ? solve_error[i + 1] : solve_error[i]);
    } else {
      try {
        const auto p = detail::extract_pair(eng.green(), *solves[i], *solves[i + 1], seg.warnings);
        a = p.a;
        b = p.b;
        res = std::max(solves[i]->report.max_residual, solves[i + 1]->report.max_residual);
        seg.max_residual = std::max(seg.max_residual, res);
      } catch (const std::exception& e) {
        err = e.what();
      }
    }
    if (err) seg.warnings.push_back("n=" + std::to_string(n) + ": " + *err);
    seg.a.push_back(a);
    seg.b.push_back(b);
    seg.residual.push_back(res);
    seg.error.push_back(err);
  }
  double worst_rcond = 1.0;
  for (const auto& s : solves) {
    if (!s) continue;
    seg.max_jump = std::max(seg.max_jump, s->max_jump);
    worst_rcond = std::min(worst_rcond, s->report.rcond);
  }
  if (seg.max_jump > kJumpWarn) {
    seg.warnings.push_back("circle jumps reach " + detail::fmt_g(seg.max_jump) + "; precision loss likely");
  }
  if (worst_rcond < kIllConditioned) {
    seg.warnings.push_back("collocation system ill-conditioned (rcond " + detail::fmt_g(worst_rcond) + ")");
  }
  seg.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return seg;
}

namespace detail {

inline void require_probe_point(const Engine& eng, cplx z) {
  if (!eng.outside_disks(z)) {
    throw DomainError("cauchy_pn: evaluation point lies inside a contour circle");
  }
}

}  // namespace detail

/// C[p_j w](z) for j = 0..n with p_0 = 1 and p_j = pi_j / (b_0 ... b_{j-1}).
inline std::vector<cplx> cauchy_pn_all(const Engine& eng, int n, cplx z, unsigned threads = 0) {
  if (n < 0) throw DomainError("cauchy_pn: negative index");
  detail::require_probe_point(eng, z);
  std::vector<std::optional<NSolve>> solves(static_cast<std::size_t>(n) + 1);
  std::vector<std::string> err(solves.size());
  detail::parallel_for(solves.size(), threads, [&](std::size_t i) {
    try {
      solves[i] = eng.solve(static_cast<int>(i), {z});
    } catch (const std::exception& e) {
      err[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < solves.size(); ++i) {
    if (!solves[i]) throw Error("cauchy_pn: solve for n=" + std::to_string(i) + " failed: " + err[i]);
  }
  const auto& gd = eng.green();
  const cplx g = eval_g(gd, z);
  const cplx logc = std::log(gd.cap_const);
  std::vector<cplx> out;
  cplx logscale = 0.0;  // -sum_{j<k} (log b_j + log c) - k g(z)
  std::vector<std::string> warnings;
  for (int k = 0; k <= n; ++k) {
    const auto& s = *solves[static_cast<std::size_t>(k)];
    const cplx h = eval_h(eng.hsys(), s.aux, z);
    out.push_back(s.probes[0][0][1] * std::exp(h + logscale));
    if (k < n) {
      const auto p = detail::extract_pair(gd, s, *solves[static_cast<std::size_t>(k) + 1], warnings);
      logscale -= std::log(p.b) + logc + g;
    }
  }
  return out;
}

inline cplx cauchy_pn(const Engine& eng, int n, cplx z) { return cauchy_pn_all(eng, n, z).back(); }

/// Mass of the weight from per-band Gauss rules.
inline double weight_mass(const WeightSpec& spec, std::size_t m = 128) {
  double eta = 0.0;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const auto r = gauss_cheb_rule(spec.kinds[j], spec.bands[j], m, [&](double x) { return spec.h[j].real(x); });
    for (double w : r.weights) eta += w;
  }
  return eta;
}

struct RecipResult {
  std::vector<double> coeffs;      // c_0..c_{N-1}
  std::vector<double> max_error;   // max grid error of the partial sums with 1..N terms
  std::vector<double> reference;   // exp(-N Re g(0))
  double rate = 0.0;               // Re g(0)
};

/// p_j-series of 1/x on the bands, errors measured on a grid of step `step`.
inline RecipResult recip_approx(const Engine& eng, int N, double step = 0.01, unsigned threads = 0) {
  if (N < 1) throw DomainError("recip_approx: need N >= 1");
  const auto& spec = eng.spec();
  for (const auto& iv : spec.bands) {
    if (iv.contains(0.0)) throw DomainError("recip_approx: 0 lies on a band");
  }
  if (!eng.outside_disks(0.0)) throw DomainError("recip_approx: 0 lies inside a contour circle");

  const double eta = weight_mass(spec);
  const auto cp = cauchy_pn_all(eng, N - 1, 0.0, threads);
  const auto seg = recurrence_range(eng, 0, std::max(0, N - 2), threads);
  if (!seg.ok()) throw Error("recip_approx: recurrence coefficients failed");

  RecipResult out;
  std::vector<std::string> warnings;
  for (int j = 0; j < N; ++j) {
    out.coeffs.push_back(detail::realify(2.0 * pi * I * cp[static_cast<std::size_t>(j)] / eta, "c", j, warnings));
  }

  std::vector<double> grid;
  for (const auto& iv : spec.bands) {
    const int m = std::max(1, static_cast<int>(std::lround(iv.length() / step)));
    for (int i = 0; i <= m; ++i) grid.push_back(iv.a + iv.length() * i / m);
  }
  std::vector<double> err(static_cast<std::size_t>(N), 0.0);
  for (double x : grid) {
    double pprev = 0.0;
    double p = 1.0;
    double sum = 0.0;
    for (int j = 0; j < N; ++j) {
      sum += out.coeffs[static_cast<std::size_t>(j)] * p;
      err[static_cast<std::size_t>(j)] = std::max(err[static_cast<std::size_t>(j)], std::abs(1.0 / x - sum));
      if (j + 1 < N) {
        const double bj = seg.b[static_cast<std::size_t>(j)];
        const double bm = j > 0 ? seg.b[static_cast<std::size_t>(j) - 1] : 0.0;
        const double pn = ((x - seg.a[static_cast<std::size_t>(j)]) * p - bm * pprev) / bj;
        pprev = p;
        p = pn;
      }
    }
  }
  out.max_error = err;
  out.rate = eval_g(eng.green(), 0.0).real();
  for (int k = 1; k <= N; ++k) out.reference.push_back(std::exp(-k * out.rate));
  return out;
}

struct TodaTrajectory {
  std::vector<double> times;
  std::vector<JacobiSegment> segments;
  std::vector<std::string> warnings;
};

/// Coefficients n0..n1 of the Jacobi operator of e^{tx} w(x) at each time.
inline TodaTrajectory toda_evolve(const Engine& eng, int n0, int n1, const std::vector<double>& times,
                                  unsigned threads = 0) {
  TodaTrajectory tr;
  for (double t : times) {
    if (!std::isfinite(t)) throw DomainError("toda_evolve: non-finite time");
    const Engine et = t == 0.0 ? eng : eng.with_weight(eng.spec().scaled_exp(t));
    auto seg = recurrence_range(et, n0, n1, threads);
    for (const auto& w : seg.warnings) tr.warnings.push_back("t=" + std::to_string(t) + ": " + w);
    tr.times.push_back(t);
    tr.segments.push_back(std::move(seg));
  }
  return tr;
}

inline TodaTrajectory toda_evolve(const WeightSpec& spec, int k, const std::vector<double>& times,
                                  const Resolution& res = {}, unsigned threads = 0) {
  return toda_evolve(Engine(spec, res), 0, k - 1, times, threads);
}

}  // namespace rhop
