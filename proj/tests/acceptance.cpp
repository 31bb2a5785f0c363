// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rhop/rhop.hpp"

using namespace rhop;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

std::string g3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double median_time(int reps, F&& f) {
  std::vector<double> ts;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    ts.push_back(seconds_since(t0));
  }
  std::sort(ts.begin(), ts.end());
  return ts[ts.size() / 2];
}

double max_diff(const JacobiSegment& x, const JacobiSegment& y, std::size_t count) {
  double d = 0.0;
  for (std::size_t i = 0; i < count; ++i) d = std::max({d, std::abs(x.a[i] - y.a[i]), std::abs(x.b[i] - y.b[i])});
  return d;
}

struct Fit {
  double slope = 0.0;
  double r2 = 0.0;
  std::size_t used = 0;
};

// Least squares for log(y) against x, skipping y <= floor.
Fit log_fit(const std::vector<double>& x, const std::vector<double>& y, double floor) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] > floor) {
      xs.push_back(x[i]);
      ys.push_back(std::log(y[i]));
    }
  }
  Fit f;
  f.used = xs.size();
  if (xs.size() < 3) return f;
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  f.slope = sxy / sxx;
  f.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

ScalingFunction modified_h() {
  return ScalingFunction{{factor::ExpSum{{{1.0, 1.0}, {1.0, 0.0}}}, factor::Rational{{1.0}, {4.0, 0.0, 1.0}}}};
}

WeightSpec modified_u() { return WeightSpec({Interval(-1, 1)}, {ChebKind::U}, {modified_h()}); }

WeightSpec all_kind(const std::vector<Interval>& bands, ChebKind k) {
  return WeightSpec(bands, std::vector<ChebKind>(bands.size(), k));
}

// ---------------------------------------------------------------------------

Verdict classical() {
  Verdict v;
  double worst = 0.0;
  for (ChebKind k : {ChebKind::T, ChebKind::U, ChebKind::V, ChebKind::W}) {
    const Engine e(WeightSpec({Interval(-1, 1)}, {k}));
    const auto seg = recurrence_range(e, 0, 20);
    for (int n = 0; n <= 20; ++n) {
      double a = 0.0;
      if (n == 0 && k == ChebKind::V) a = 0.5;
      if (n == 0 && k == ChebKind::W) a = -0.5;
      const double b = (n == 0 && k == ChebKind::T) ? 1.0 / std::sqrt(2.0) : 0.5;
      worst = std::max({worst, std::abs(seg.a[n] - a), std::abs(seg.b[n] - b)});
    }
  }
  v.require(worst <= 1e-11, "max error " + g3(worst) + " <= 1e-11");
  return v;
}

Verdict modified_single() {
  Verdict v;
  const auto spec = modified_u();
  const auto seg = recurrence_range(Engine(spec), 0, 50);
  std::vector<double> j, da, db;
  for (int n = 0; n <= 50; ++n) {
    j.push_back(n);
    da.push_back(std::abs(seg.a[n]));
    db.push_back(std::abs(seg.b[n] - 0.5));
  }
  // Values at the rounding floor carry no decay information.
  const double floor = 1e-14;
  const auto fa = log_fit(j, da, floor);
  const auto fb = log_fit(j, db, floor);
  v.require(fa.slope < 0 && fa.r2 > 0.99,
            "|a_j| slope " + g3(fa.slope) + " R2 " + g3(fa.r2) + " over " + std::to_string(fa.used) + " pts");
  v.require(fb.slope < 0 && fb.r2 > 0.99,
            "|b_j-1/2| slope " + g3(fb.slope) + " R2 " + g3(fb.r2) + " over " + std::to_string(fb.used) + " pts");

  const auto ref = adaptive_oracle(spec, 51).segment;
  std::vector<double> errs;
  for (int ppi : {2, 4, 8, 16}) {
    Resolution res;
    res.ppi = ppi;
    errs.push_back(max_diff(recurrence_range(Engine(spec, res), 0, 50), ref, 51));
  }
  v.require(errs.back() <= 1e-9, "oracle error at 16 ppi " + g3(errs.back()) + " <= 1e-9");
  bool mono = true;
  for (std::size_t i = 1; i < errs.size(); ++i) mono = mono && errs[i] < errs[i - 1];
  v.require(mono, "errors over ppi 2,4,8,16: " + g3(errs[0]) + " " + g3(errs[1]) + " " + g3(errs[2]) + " " + g3(errs[3]));
  return v;
}

Verdict oracle_agreement(const WeightSpec& spec, double tol) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const auto seg = recurrence_range(Engine(spec), 0, 50);
  const double t_rh = seconds_since(t0);
  const auto ref = adaptive_oracle(spec, 51).segment;
  const double d = max_diff(seg, ref, 51);
  v.require(seg.ok() && d <= tol, "max |oracle - rh| " + g3(d) + " <= " + g3(tol) + " (rh " + g3(t_rh) + " s)");
  return v;
}

Verdict symmetric() {
  Verdict v;
  const auto seg = recurrence_range(Engine(all_kind({Interval(-3, -2), Interval(2, 3)}, ChebKind::T)), 0, 50);
  double amax = 0.0;
  for (double a : seg.a) amax = std::max(amax, std::abs(a));
  v.require(amax <= 1e-9, "max |a_j| " + g3(amax) + " <= 1e-9");
  const double lo = std::min(seg.b[49], seg.b[50]);
  const double hi = std::max(seg.b[49], seg.b[50]);
  v.require(std::abs(lo - 0.5) <= 1e-5 && std::abs(hi - 2.5) <= 1e-5,
            "b_49,b_50 gaps " + g3(std::abs(lo - 0.5)) + " " + g3(std::abs(hi - 2.5)) + " <= 1e-5");
  return v;
}

Verdict random_access() {
  Verdict v;
  const Engine e(modified_u());
  const auto [a, b] = recurrence_pair(e, 1000);
  v.require(std::abs(a) <= 1e-8 && std::abs(b - 0.5) <= 1e-8,
            "|a_1000| " + g3(std::abs(a)) + ", |b_1000-1/2| " + g3(std::abs(b - 0.5)));
  const double t1000 = median_time(5, [&] { recurrence_pair(e, 1000); });
  const double t10 = median_time(5, [&] { recurrence_pair(e, 10); });
  v.require(t1000 <= 2.0 * t10, "time n=1000 " + g3(t1000) + " s vs n=10 " + g3(t10) + " s");
  return v;
}

Verdict linear_scaling() {
  Verdict v;
  const Engine e(WeightSpec({Interval(-1, 1)}, {ChebKind::U}, {modified_h()}));
  std::vector<double> ts;
  for (int N : {50, 100, 200}) ts.push_back(median_time(3, [&] { recurrence_range(e, 0, N - 1, 1); }));
  const double r1 = ts[1] / ts[0];
  const double r2 = ts[2] / ts[1];
  v.require(std::abs(r1 / 2.0 - 1.0) <= 0.3 && std::abs(r2 / 2.0 - 1.0) <= 0.3,
            "times " + g3(ts[0]) + " " + g3(ts[1]) + " " + g3(ts[2]) + " s, ratios " + g3(r1) + " " + g3(r2));
  return v;
}

Verdict properties() {
  Verdict v;
  const ChebKind kinds[] = {ChebKind::T, ChebKind::U, ChebKind::V, ChebKind::W};

  double plemelj = 0.0;
  double recur = 0.0;
  const Interval iv(0.1, 1.1);
  for (auto kind : kinds) {
    for (int k = 0; k <= 8; ++k) {
      for (double t : {-0.97, -0.5, 0.01, 0.6, 0.95}) {
        const double x = iv.from_unit(t);
        const cplx jump = cauchy_cheb(kind, k, iv, x, Side::Plus) - cauchy_cheb(kind, k, iv, x, Side::Minus);
        const double dens = cheb_eval(kind, k, t) * normalized_weight(kind, iv, x);
        plemelj = std::max(plemelj, std::abs(jump - dens) / std::max(1.0, std::abs(dens)));
      }
    }
    const double half = 0.5 * iv.length();
    for (cplx z : {cplx(0.4, 0.3), cplx(-1.0, -2.0), cplx(40.0, 1.0)}) {
      const auto c = cauchy_cheb_all(kind, 12, iv, z);
      for (int k = 2; k < 12; ++k) {
        const cplx lhs = (z - iv.mid()) * c[k];
        const cplx rhs = 0.5 * half * (c[k + 1] + c[k - 1]);
        recur = std::max(recur, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
      }
    }
  }
  v.require(plemelj <= 1e-11, "Plemelj " + g3(plemelj));
  v.require(recur <= 1e-12, "Cauchy recurrence " + g3(recur));

  const std::vector<std::vector<Interval>> sets = {
      {Interval(-1, 1)},
      {Interval(-1.8, -1), Interval(2, 3)},
      {Interval(-3, -2), Interval(2, 3)},
      {Interval(-3.2, -2.2), Interval(0.1, 1.1), Interval(2, 3), Interval(3.5, 4)},
  };
  double gband = 0.0, ggap = 0.0, gcircle = INFINITY, hjump = 0.0, amax = 0.0, rows = 0.0;
  for (const auto& bands : sets) {
    const auto gd = build_green(bands);
    const auto hs = build_hsystem(gd);
    const auto gaps = gaps_of(bands);
    for (const auto& b : bands) {
      for (double t : {-0.95, -0.4, 0.1, 0.77}) {
        const double x = b.from_unit(t);
        const cplx gp = eval_g(gd, x, Side::Plus);
        const cplx gm = eval_g(gd, x, Side::Minus);
        gband = std::max({gband, std::abs(gp.real()), std::abs(gp + gm)});
      }
    }
    for (std::size_t l = 0; l < gaps.size(); ++l) {
      for (double t : {-0.9, 0.0, 0.6}) {
        const double x = gaps[l].from_unit(t);
        const cplx jump = eval_g(gd, x, Side::Plus) - eval_g(gd, x, Side::Minus);
        ggap = std::max({ggap, std::abs(jump - gd.deltas[l]), std::abs(gd.deltas[l].real())});
      }
    }
    const auto cs = build_contours(all_kind(bands, ChebKind::T), 16, 10.0);
    for (const auto& c : cs.circles) {
      for (int k = 0; k < 64; ++k) gcircle = std::min(gcircle, eval_g(gd, c.point(2.0 * pi * (k + 0.25) / 64.0)).real());
    }
    const int g = hs.genus();
    for (int k = 0; k <= g; ++k) {
      cplx s = 0.0;
      for (int j = 0; j <= g; ++j) s += hs.matrix(k, j);
      rows = std::max(rows, k < g ? std::abs(s) : std::abs(std::abs(s) - pi));
    }
    for (int n = 0; n <= 1000; ++n) {
      const auto a = solve_aux(hs, gd, n);
      for (double x : a.A) amax = std::max(amax, std::abs(x));
      if (n % 97 != 1) continue;
      for (std::size_t j = 0; j < bands.size(); ++j) {
        const double x = bands[j].from_unit(0.3);
        const cplx s = eval_h(hs, a, x, Side::Plus) + eval_h(hs, a, x, Side::Minus);
        hjump = std::max(hjump, std::abs(s - a.A[j]));
      }
      for (std::size_t l = 0; l < gaps.size(); ++l) {
        const double x = gaps[l].from_unit(-0.2);
        const cplx d = eval_h(hs, a, x, Side::Plus) - eval_h(hs, a, x, Side::Minus);
        hjump = std::max(hjump, std::abs(d - a.nu[l]));
      }
    }
  }
  v.require(gband <= 1e-11 && ggap <= 1e-11 && gcircle > 0.0,
            "g band " + g3(gband) + ", gap " + g3(ggap) + ", min Re g on circles " + g3(gcircle));
  v.require(hjump <= 1e-11 && amax < 20.0, "h jumps " + g3(hjump) + ", max|A| n<=1000 " + g3(amax));
  v.require(rows <= 1e-11, "H row sums " + g3(rows));

  double resid = 0.0;
  for (const auto& spec : {modified_u(), all_kind(sets[1], ChebKind::T), all_kind(sets[2], ChebKind::T)}) {
    const Engine e(spec);
    for (int n : {0, 1, 5, 20}) resid = std::max(resid, e.solve(n).report.max_residual);
  }
  v.require(resid <= 1e-10, "off-collocation residual (1 and 2 bands) " + g3(resid));

  std::vector<double> rs;
  for (int ppi : {2, 4, 8}) {
    Resolution res;
    res.ppi = ppi;
    rs.push_back(Engine(modified_u(), res).solve(3).report.max_residual);
  }
  v.require(rs[1] < 0.1 * rs[0] && rs[2] < 0.1 * rs[1],
            "residual at ppi 2,4,8: " + g3(rs[0]) + " " + g3(rs[1]) + " " + g3(rs[2]));
  return v;
}

Verdict toda() {
  Verdict v;
  const WeightSpec spec({Interval(-1, 1)}, {ChebKind::U});
  const Engine e(spec);
  const auto tr0 = toda_evolve(e, 0, 10, {0.0});
  const auto seg0 = recurrence_range(e, 0, 10);
  v.require(tr0.segments[0].a == seg0.a && tr0.segments[0].b == seg0.b, "t=0 identical");

  double omax = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    const auto tr = toda_evolve(e, 0, 10, {t});
    omax = std::max(omax, max_diff(tr.segments[0], adaptive_oracle(spec.scaled_exp(t), 11).segment, 11));
  }
  v.require(omax <= 1e-8, "oracle at t=0.5,1,2 " + g3(omax));

  // The commutator flow X' = [B, X] is solved by the Jacobi operators of e^{2tx} w.
  const double dt = 1e-3;
  double ra = 0.0, rb = 0.0;
  for (double t : {0.25, 0.5, 1.0, 1.5, 2.0 - dt}) {
    const auto tr = toda_evolve(e, 0, 11, {2.0 * (t - dt), 2.0 * t, 2.0 * (t + dt)});
    const auto& m = tr.segments[0];
    const auto& c = tr.segments[1];
    const auto& p = tr.segments[2];
    for (int k = 0; k <= 10; ++k) {
      const double adot = (p.a[k] - m.a[k]) / (2 * dt);
      const double bdot = (p.b[k] - m.b[k]) / (2 * dt);
      const double bk1 = k > 0 ? c.b[k - 1] : 0.0;
      ra = std::max(ra, std::abs(adot - 2.0 * (c.b[k] * c.b[k] - bk1 * bk1)));
      rb = std::max(rb, std::abs(bdot - c.b[k] * (c.a[k + 1] - c.a[k])));
    }
  }
  v.require(ra <= 1e-4 && rb <= 1e-4, "ODE residuals a " + g3(ra) + ", b " + g3(rb));
  return v;
}

Verdict reciprocal() {
  Verdict v;
  const auto fast = recip_approx(Engine(all_kind({Interval(1, 2.3), Interval(3, 4), Interval(4.5, 6.1)}, ChebKind::T)), 40);
  const auto slow = recip_approx(Engine(all_kind({Interval(-4, -3), Interval(-2, -1), Interval(2, 3)}, ChebKind::T)), 40);
  std::vector<double> n, e;
  for (int k = 5; k <= 40; ++k) {
    n.push_back(k);
    e.push_back(fast.max_error[k - 1]);
  }
  // Errors at the double-precision floor are excluded from the fit.
  const auto f = log_fit(n, e, 1e-13);
  const double rel = std::abs(f.slope / -fast.rate - 1.0);
  v.require(rel <= 0.2, "slope " + g3(f.slope) + " vs -Re g(0) " + g3(-fast.rate) + " (" + std::to_string(f.used) +
                            " pts, rel " + g3(rel) + ")");
  bool slower = true;
  for (int k = 5; k <= 40; ++k) slower = slower && slow.max_error[k - 1] > fast.max_error[k - 1];
  v.require(slower, "0-in-gap error larger at every N (N=40: " + g3(slow.max_error[39]) + " vs " +
                        g3(fast.max_error[39]) + ")");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria = {
      {1, classical},
      {2, modified_single},
      {3, [] { return oracle_agreement(all_kind({Interval(-1.8, -1), Interval(2, 3)}, ChebKind::T), 1e-8); }},
      {4, symmetric},
      {5,
       [] {
         return oracle_agreement(WeightSpec({Interval(-3.2, -2.2), Interval(0.1, 1.1), Interval(2, 3), Interval(3.5, 4)},
                                            {ChebKind::T, ChebKind::U, ChebKind::V, ChebKind::W}),
                                 1e-7);
       }},
      {6, random_access},
      {7, linear_scaling},
      {8, properties},
      {9, toda},
      {10, reciprocal},
  };
  int failed = 0;
  for (const auto& [k, run] : criteria) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      v = run();
    } catch (const std::exception& ex) {
      v.pass = false;
      v.detail = std::string("exception: ") + ex.what();
    }
    if (!v.pass) ++failed;
    std::printf("criterion %d: %s  %s  (%.1f s)\n", k, v.pass ? "PASS" : "FAIL", v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
