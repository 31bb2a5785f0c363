// rhop_cli: recurrence coefficients, Toda trajectories, 1/x expansions and
// oracle tables for a JSON weight spec.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rhop/rhop.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV sink: a file when --out is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw rhop::ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }
  void line(const std::string& s) { out() << s << '\n'; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct Common {
  std::string config;
  std::string out;
  std::optional<int> ppi;
  std::optional<double> ratio;
  unsigned threads = 0;
};

rhop::ConfigDocument load(const Common& c) {
  auto cfg = rhop::load_config(c.config);
  if (c.ppi) {
    if (*c.ppi < 2) throw rhop::ConfigError("--ppi must be at least 2");
    cfg.resolution.ppi = *c.ppi;
  }
  if (c.ratio) {
    if (!(*c.ratio > 0.0)) throw rhop::ConfigError("--circle-ratio must be positive");
    cfg.resolution.circle_ratio = *c.ratio;
  }
  return cfg;
}

void header(Sink& s, const rhop::ConfigDocument& cfg, const std::string& method) {
  s.line("# method=" + method);
  s.line("# ppi=" + std::to_string(cfg.resolution.ppi) + " circle_ratio=" + num(cfg.resolution.circle_ratio));
}

int finish_warnings(Sink& s, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) {
    s.line("# warning: " + w);
    std::cerr << "warning: " << w << '\n';
  }
  return kExitOk;
}

int cmd_coeffs(const Common& c, int n0, int n1) {
  const auto cfg = load(c);
  if (n0 < 0 || n1 < n0) throw rhop::ConfigError("need 0 <= --n0 <= --n1");
  const rhop::Engine eng(cfg.spec, cfg.resolution);
  const auto seg = rhop::recurrence_range(eng, n0, n1, c.threads);
  Sink s(c.out);
  header(s, cfg, "rh");
  s.line("n,a,b,residual");
  for (std::size_t i = 0; i < seg.size(); ++i) {
    const int n = n0 + static_cast<int>(i);
    if (seg.error[i]) {
      s.line(std::to_string(n) + ",,," + *seg.error[i]);
    } else {
      s.line(std::to_string(n) + "," + num(seg.a[i]) + "," + num(seg.b[i]) + "," + num(seg.residual[i]));
    }
  }
  finish_warnings(s, seg.warnings);
  return seg.ok() ? kExitOk : kExitNumeric;
}

int cmd_toda(const Common& c, double t0, double t1, int steps, int n0, int n1) {
  const auto cfg = load(c);
  if (steps < 1) throw rhop::ConfigError("--steps must be at least 1");
  if (n0 < 0 || n1 < n0) throw rhop::ConfigError("need 0 <= --n0 <= --n1 (or --k >= 1)");
  std::vector<double> times;
  for (int i = 0; i < steps; ++i) times.push_back(steps == 1 ? t0 : t0 + (t1 - t0) * i / (steps - 1));
  const rhop::Engine eng(cfg.spec, cfg.resolution);
  const auto tr = rhop::toda_evolve(eng, n0, n1, times, c.threads);
  Sink s(c.out);
  header(s, cfg, "rh");
  s.line("t,n,a,b");
  bool ok = true;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const auto& seg = tr.segments[k];
    for (std::size_t i = 0; i < seg.size(); ++i) {
      const std::string n = std::to_string(n0 + static_cast<int>(i));
      if (seg.error[i]) {
        ok = false;
        s.line(num(tr.times[k]) + "," + n + ",," + *seg.error[i]);
      } else {
        s.line(num(tr.times[k]) + "," + n + "," + num(seg.a[i]) + "," + num(seg.b[i]));
      }
    }
  }
  finish_warnings(s, tr.warnings);
  return ok ? kExitOk : kExitNumeric;
}

int cmd_recip(const Common& c, int nmax) {
  const auto cfg = load(c);
  if (nmax < 1) throw rhop::ConfigError("--nmax must be at least 1");
  for (const auto& iv : cfg.spec.bands) {
    if (iv.contains(0.0)) throw rhop::ConfigError("0 lies on the support; the 1/x expansion is undefined");
  }
  const rhop::Engine eng(cfg.spec, cfg.resolution);
  if (!eng.outside_disks(0.0)) throw rhop::ConfigError("0 lies inside a contour circle");
  const auto r = rhop::recip_approx(eng, nmax, 0.01, c.threads);
  Sink s(c.out);
  header(s, cfg, "rh");
  s.line("# re_g0=" + num(r.rate));
  s.line("N,max_error,reference_rate");
  for (int k = 1; k <= nmax; ++k) {
    s.line(std::to_string(k) + "," + num(r.max_error[k - 1]) + "," + num(r.reference[k - 1]));
  }
  return kExitOk;
}

int cmd_oracle(const Common& c, int nmax, double tol) {
  const auto cfg = rhop::load_config(c.config);
  if (nmax < 1) throw rhop::ConfigError("--nmax must be at least 1");
  if (!(tol >= 1e-13)) {
    std::cerr << "error: tolerance " << tol << " is below the achievable floor 1e-13; no convergence\n";
    return kExitNumeric;
  }
  const auto res = rhop::adaptive_oracle(cfg.spec, static_cast<std::size_t>(nmax), tol);
  Sink s(c.out);
  s.line("# method=oracle");
  s.line("# m_per_band=" + std::to_string(res.m_per_band));
  s.line("n,a,b,residual");
  const auto& seg = res.segment;
  for (std::size_t i = 0; i < seg.size(); ++i) {
    s.line(std::to_string(i) + "," + num(seg.a[i]) + "," + num(seg.b[i]) + "," + num(res.change));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal polynomials on several intervals via Riemann-Hilbert problems"};
  app.require_subcommand(1);

  Common c;
  auto common = [&](CLI::App* sub) {
    sub->add_option("config", c.config, "JSON weight spec")->required();
    sub->add_option("--out", c.out, "CSV output path (default stdout)");
    sub->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  };
  auto resolution = [&](CLI::App* sub) {
    sub->add_option("--ppi", c.ppi, "collocation points per interval (default 16)");
    sub->add_option("--circle-ratio", c.ratio, "circle to interval point ratio (default 10)");
  };

  int n0 = 0;
  int n1 = 20;
  auto* coeffs = app.add_subcommand("coeffs", "recurrence coefficients a_n, b_n for n0..n1");
  common(coeffs);
  resolution(coeffs);
  coeffs->add_option("--n0", n0, "first index");
  coeffs->add_option("--n1", n1, "last index");

  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 11;
  int k = 10;
  std::optional<int> tn0;
  std::optional<int> tn1;
  auto* toda = app.add_subcommand("toda", "Toda lattice evolution of the first k coefficients");
  common(toda);
  resolution(toda);
  toda->add_option("--t0", t0, "start time");
  toda->add_option("--t1", t1, "end time");
  toda->add_option("--steps", steps, "number of time samples");
  toda->add_option("--k", k, "coefficient count (indices 0..k-1)");
  toda->add_option("--n0", tn0, "first index (overrides --k)");
  toda->add_option("--n1", tn1, "last index (overrides --k)");

  int nmax = 40;
  auto* recip = app.add_subcommand("recip", "max error of the p_j-series of 1/x");
  common(recip);
  resolution(recip);
  recip->add_option("--nmax", nmax, "largest number of terms");

  int onmax = 51;
  double tol = 1e-13;
  auto* oracle = app.add_subcommand("oracle", "reference coefficients by quadrature and Lanczos");
  common(oracle);
  oracle->add_option("--nmax", onmax, "number of coefficient pairs");
  oracle->add_option("--tol", tol, "self-convergence tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*coeffs) return cmd_coeffs(c, n0, n1);
    if (*toda) {
      const int a = tn0.value_or(0);
      const int b = tn1.value_or(tn0 ? a + k - 1 : k - 1);
      return cmd_toda(c, t0, t1, steps, a, b);
    }
    if (*recip) return cmd_recip(c, nmax);
    if (*oracle) return cmd_oracle(c, onmax, tol);
  } catch (const rhop::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const rhop::GeometryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const rhop::WeightError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const rhop::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
