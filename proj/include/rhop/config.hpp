#pragma once

// JSON weight-spec documents.
//
// {
//   "intervals": [[a1, b1], [a2, b2], ...],
//   "kinds": ["T", "U", ...] or [[alpha, beta], ...],
//   "h": [ {"type": "one"}, {"type": "exp_scale", "c": 1.0},
//          {"type": "poly", "coeffs": [...]},
//          {"type": "rational", "num": [...], "den": [...]},
//          {"type": "exp_sum", "terms": [[coef, rate], ...]},
//          {"type": "product", "factors": [ ... ]} ],
//   "resolution": {"ppi": 16, "circle_ratio": 10},
//   "circle_radii": [r1, r2, ...]
// }
//
// Polynomial coefficients are ascending.  "h" and "resolution" are optional.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rhop/cheb.hpp"
#include "rhop/errors.hpp"
#include "rhop/pipeline.hpp"
#include "rhop/weight.hpp"

namespace rhop {

using json = nlohmann::json;

struct ConfigDocument {
  WeightSpec spec;
  Resolution resolution;
};

namespace detail {

[[noreturn]] inline void config_fail(const std::string& field, const std::string& why) {
  throw ConfigError("config field '" + field + "': " + why);
}

inline double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) config_fail(field, "expected a number");
  return j.get<double>();
}

inline std::vector<double> get_numbers(const json& j, const std::string& field) {
  if (!j.is_array()) config_fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

inline void parse_factor(const json& j, const std::string& field, std::vector<ScalingFactor>& out) {
  if (!j.is_object()) config_fail(field, "expected an object");
  if (!j.contains("type") || !j["type"].is_string()) config_fail(field + ".type", "missing or not a string");
  const auto type = j["type"].get<std::string>();
  auto need = [&](const char* key) -> const json& {
    if (!j.contains(key)) config_fail(field + "." + key, "missing");
    return j[key];
  };
  if (type == "one") {
    out.emplace_back(factor::One{});
  } else if (type == "exp_scale") {
    out.emplace_back(factor::ExpScale{get_number(need("c"), field + ".c")});
  } else if (type == "poly") {
    auto c = get_numbers(need("coeffs"), field + ".coeffs");
    if (c.empty()) config_fail(field + ".coeffs", "empty polynomial");
    out.emplace_back(factor::Poly{std::move(c)});
  } else if (type == "rational") {
    auto num = get_numbers(need("num"), field + ".num");
    auto den = get_numbers(need("den"), field + ".den");
    if (num.empty() || den.empty()) config_fail(field, "empty numerator or denominator");
    out.emplace_back(factor::Rational{std::move(num), std::move(den)});
  } else if (type == "exp_sum") {
    const json& t = need("terms");
    if (!t.is_array() || t.empty()) config_fail(field + ".terms", "expected a nonempty array of [coef, rate]");
    factor::ExpSum e;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto pr = get_numbers(t[i], field + ".terms[" + std::to_string(i) + "]");
      if (pr.size() != 2) config_fail(field + ".terms[" + std::to_string(i) + "]", "expected [coef, rate]");
      e.terms.emplace_back(pr[0], pr[1]);
    }
    out.emplace_back(std::move(e));
  } else if (type == "product") {
    const json& f = need("factors");
    if (!f.is_array()) config_fail(field + ".factors", "expected an array");
    for (std::size_t i = 0; i < f.size(); ++i) parse_factor(f[i], field + ".factors[" + std::to_string(i) + "]", out);
  } else {
    config_fail(field + ".type", "unknown type '" + type + "'");
  }
}

inline json factor_to_json(const ScalingFactor& f) {
  return std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, factor::One>) {
          return {{"type", "one"}};
        } else if constexpr (std::is_same_v<P, factor::ExpScale>) {
          return {{"type", "exp_scale"}, {"c", p.c}};
        } else if constexpr (std::is_same_v<P, factor::Poly>) {
          return {{"type", "poly"}, {"coeffs", p.coeffs}};
        } else if constexpr (std::is_same_v<P, factor::Rational>) {
          return {{"type", "rational"}, {"num", p.num}, {"den", p.den}};
        } else {
          json terms = json::array();
          for (const auto& [c, r] : p.terms) terms.push_back({c, r});
          return {{"type", "exp_sum"}, {"terms", terms}};
        }
      },
      f);
}

}  // namespace detail

inline ConfigDocument parse_config(const json& doc) {
  using detail::config_fail;
  if (!doc.is_object()) config_fail("<root>", "expected an object");
  if (!doc.contains("intervals")) config_fail("intervals", "missing");
  if (!doc.contains("kinds")) config_fail("kinds", "missing");
  const json& iv = doc["intervals"];
  const json& kd = doc["kinds"];
  if (!iv.is_array() || iv.empty()) config_fail("intervals", "expected a nonempty array of [a, b]");
  if (!kd.is_array()) config_fail("kinds", "expected an array");
  if (kd.size() != iv.size()) config_fail("kinds", "length differs from intervals");

  std::vector<Interval> bands;
  std::vector<ChebKind> kinds;
  for (std::size_t i = 0; i < iv.size(); ++i) {
    const std::string f = "intervals[" + std::to_string(i) + "]";
    const auto ab = detail::get_numbers(iv[i], f);
    if (ab.size() != 2) config_fail(f, "expected [a, b]");
    try {
      bands.emplace_back(ab[0], ab[1]);
    } catch (const DomainError& e) {
      config_fail(f, e.what());
    }
  }
  for (std::size_t i = 0; i < kd.size(); ++i) {
    const std::string f = "kinds[" + std::to_string(i) + "]";
    try {
      if (kd[i].is_string()) {
        const auto s = kd[i].get<std::string>();
        if (s.size() != 1) config_fail(f, "expected one of T, U, V, W");
        kinds.push_back(kind_from_letter(s[0]));
      } else {
        const auto ab = detail::get_numbers(kd[i], f);
        if (ab.size() != 2) config_fail(f, "expected [alpha, beta]");
        if (ab[0] != std::round(ab[0]) || ab[1] != std::round(ab[1])) config_fail(f, "exponents must be +-1");
        kinds.push_back(kind_from_exponents(static_cast<int>(ab[0]), static_cast<int>(ab[1])));
      }
    } catch (const DomainError& e) {
      config_fail(f, e.what());
    }
  }

  std::vector<ScalingFunction> hs(bands.size());
  if (doc.contains("h")) {
    const json& h = doc["h"];
    if (!h.is_array() || h.size() != bands.size()) config_fail("h", "expected one entry per interval");
    for (std::size_t i = 0; i < h.size(); ++i) {
      std::vector<ScalingFactor> fs;
      detail::parse_factor(h[i], "h[" + std::to_string(i) + "]", fs);
      hs[i] = ScalingFunction(std::move(fs));
    }
  }

  ConfigDocument cfg;
  if (doc.contains("resolution")) {
    const json& r = doc["resolution"];
    if (!r.is_object()) config_fail("resolution", "expected an object");
    if (r.contains("ppi")) {
      const double p = detail::get_number(r["ppi"], "resolution.ppi");
      if (p != std::round(p) || p < 2) config_fail("resolution.ppi", "expected an integer >= 2");
      cfg.resolution.ppi = static_cast<int>(p);
    }
    if (r.contains("circle_ratio")) {
      cfg.resolution.circle_ratio = detail::get_number(r["circle_ratio"], "resolution.circle_ratio");
      if (!(cfg.resolution.circle_ratio > 0.0)) config_fail("resolution.circle_ratio", "must be positive");
    }
  }
  if (doc.contains("circle_radii")) {
    cfg.resolution.circle_radii = detail::get_numbers(doc["circle_radii"], "circle_radii");
    if (cfg.resolution.circle_radii.size() != bands.size()) config_fail("circle_radii", "expected one radius per interval");
  }

  try {
    cfg.spec = WeightSpec(std::move(bands), std::move(kinds), std::move(hs));
  } catch (const WeightError& e) {
    config_fail("h", e.what());
  } catch (const DomainError& e) {
    config_fail("intervals", e.what());
  }
  return cfg;
}

inline ConfigDocument parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

inline ConfigDocument load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

inline json to_json(const ConfigDocument& cfg) {
  json doc;
  json iv = json::array();
  json kd = json::array();
  json hs = json::array();
  for (std::size_t j = 0; j < cfg.spec.size(); ++j) {
    iv.push_back({cfg.spec.bands[j].a, cfg.spec.bands[j].b});
    kd.push_back(std::string(1, kind_letter(cfg.spec.kinds[j])));
    const auto& f = cfg.spec.h[j].factors;
    if (f.empty()) {
      hs.push_back({{"type", "one"}});
    } else if (f.size() == 1) {
      hs.push_back(detail::factor_to_json(f[0]));
    } else {
      json parts = json::array();
      for (const auto& p : f) parts.push_back(detail::factor_to_json(p));
      hs.push_back({{"type", "product"}, {"factors", parts}});
    }
  }
  doc["intervals"] = iv;
  doc["kinds"] = kd;
  doc["h"] = hs;
  doc["resolution"] = {{"ppi", cfg.resolution.ppi}, {"circle_ratio", cfg.resolution.circle_ratio}};
  if (!cfg.resolution.circle_radii.empty()) doc["circle_radii"] = cfg.resolution.circle_radii;
  return doc;
}

}  // namespace rhop
