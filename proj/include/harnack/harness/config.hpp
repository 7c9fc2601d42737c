#pragma once

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "harnack/concentration/sampler.hpp"
#include "harnack/error.hpp"
#include "harnack/geometry/weight.hpp"
#include "harnack/topology/cube_sphere.hpp"

namespace harnack {

enum class DiscardMode { exclude, pessimistic };

inline std::string_view to_string(DiscardMode m) { return m == DiscardMode::exclude ? "exclude" : "pessimistic"; }

/// Flat `key = value` experiment description.
///
///   experiment    run id, [A-Za-z0-9_.-]+                      (required)
///   weight        fubini-study | perturbed | toric-radial      (fubini-study)
///   weight_params comma list: perturbed amp,cx,cy,cz,radius;
///                 toric-radial dip,center,width                (empty)
///   degrees       comma list, each in 1..10                    (required)
///   sampler       gaussian | uniform | rademacher              (gaussian)
///   a             maximality slack, > 0                        (0.1)
///   trials        per degree, >= 1                             (required)
///   max_depth     subdivision limit, 4..20                     (14)
///   quad_order    Gram quadrature order, 0 = per-degree default (0)
///   seed          unsigned 64-bit                              (0)
///   output_dir    run directory                                (runs/<experiment>)
///   workers       threads, >= 1; never changes results        (1)
///   discard_mode  exclude | pessimistic                        (exclude)
///
/// '#' starts a comment.  Unknown or repeated keys are errors.
struct ExperimentConfig {
  std::string experiment;
  std::string weight = "fubini-study";
  std::vector<double> weight_params;
  std::vector<int> degrees;
  std::string sampler = "gaussian";
  double a = 0.1;
  std::uint64_t trials = 0;
  int max_depth = 14;
  int quad_order = 0;
  std::uint64_t seed = 0;
  std::string output_dir;
  int workers = 1;
  DiscardMode discard_mode = DiscardMode::exclude;

  Weight make_weight() const { return Weight::from_spec(weight, weight_params); }
  SubGaussianSampler make_sampler() const { return SubGaussianSampler::from_name(sampler); }

  bool operator==(const ExperimentConfig&) const = default;
};

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> k{"experiment", "weight",    "weight_params", "degrees",    "sampler",
                                          "a",          "trials",    "max_depth",     "quad_order", "seed",
                                          "output_dir", "workers",   "discard_mode"};
  return k;
}

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(x))
    throw config_error("key '" + key + "': '" + v + "' is not a finite number");
  return x;
}

inline std::int64_t parse_int(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  long long x = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno == ERANGE) throw config_error("key '" + key + "': '" + v + "' is not an integer");
  return x;
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  if (v.empty() || v[0] == '-') throw config_error("key '" + key + "': '" + v + "' is not a nonnegative integer");
  unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (*end != '\0' || errno == ERANGE) throw config_error("key '" + key + "': '" + v + "' is not a nonnegative integer");
  return x;
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace detail

/// Throws config_error on any violated constraint.
inline void validate(const ExperimentConfig& c) {
  if (c.experiment.empty()) throw config_error("missing key 'experiment'");
  for (char ch : c.experiment)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.'))
      throw config_error("experiment id may only contain letters, digits, '_', '-', '.'");
  if (c.degrees.empty()) throw config_error("missing key 'degrees'");
  std::set<int> seen;
  for (int n : c.degrees) {
    if (n < 1 || n > 10) throw config_error("degree " + std::to_string(n) + " outside 1..10");
    if (!seen.insert(n).second) throw config_error("degree " + std::to_string(n) + " listed twice");
  }
  if (!(c.a > 0.0)) throw config_error("a must be > 0");
  if (c.trials < 1) throw config_error("trials must be >= 1");
  if (c.max_depth < 4 || c.max_depth > SphereCell::kMaxDepth)
    throw config_error("max_depth must lie in 4.." + std::to_string(SphereCell::kMaxDepth));
  if (c.quad_order < 0) throw config_error("quad_order must be >= 0");
  if (c.workers < 1) throw config_error("workers must be >= 1");
  if (c.output_dir.empty()) throw config_error("output_dir must not be empty");
  c.make_weight();
  c.make_sampler();
}

inline ExperimentConfig parse_config(std::istream& is) {
  ExperimentConfig c;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  bool have_trials = false;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string body = detail::trim(line);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) throw config_error("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = detail::trim(body.substr(0, eq));
    std::string val = detail::trim(body.substr(eq + 1));
    if (!seen.insert(key).second) throw config_error("line " + std::to_string(lineno) + ": key '" + key + "' repeated");
    if (key == "experiment") {
      c.experiment = val;
    } else if (key == "weight") {
      c.weight = val;
    } else if (key == "weight_params") {
      c.weight_params.clear();
      for (auto& s : detail::split_list(val)) c.weight_params.push_back(detail::parse_double(key, s));
    } else if (key == "degrees") {
      c.degrees.clear();
      for (auto& s : detail::split_list(val)) c.degrees.push_back(static_cast<int>(detail::parse_int(key, s)));
    } else if (key == "sampler") {
      c.sampler = val;
    } else if (key == "a") {
      c.a = detail::parse_double(key, val);
    } else if (key == "trials") {
      c.trials = detail::parse_uint(key, val);
      have_trials = true;
    } else if (key == "max_depth") {
      c.max_depth = static_cast<int>(detail::parse_int(key, val));
    } else if (key == "quad_order") {
      c.quad_order = static_cast<int>(detail::parse_int(key, val));
    } else if (key == "seed") {
      c.seed = detail::parse_uint(key, val);
    } else if (key == "output_dir") {
      c.output_dir = val;
    } else if (key == "workers") {
      c.workers = static_cast<int>(detail::parse_int(key, val));
    } else if (key == "discard_mode") {
      if (val == "exclude") c.discard_mode = DiscardMode::exclude;
      else if (val == "pessimistic") c.discard_mode = DiscardMode::pessimistic;
      else throw config_error("discard_mode must be 'exclude' or 'pessimistic'");
    } else {
      throw config_error("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_trials) throw config_error("missing key 'trials'");
  if (c.output_dir.empty() && !c.experiment.empty()) c.output_dir = "runs/" + c.experiment;
  validate(c);
  return c;
}

inline ExperimentConfig parse_config(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw config_error("cannot open config file '" + path + "'");
  return parse_config(f);
}

/// Canonical text form; parse_config(to_text(c)) == c.
inline std::string to_text(const ExperimentConfig& c) {
  std::ostringstream os;
  auto list = [](const auto& v, auto fmt) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
    return s;
  };
  os << "experiment = " << c.experiment << '\n';
  os << "weight = " << c.weight << '\n';
  os << "weight_params = " << list(c.weight_params, detail::format_double) << '\n';
  os << "degrees = " << list(c.degrees, [](int n) { return std::to_string(n); }) << '\n';
  os << "sampler = " << c.sampler << '\n';
  os << "a = " << detail::format_double(c.a) << '\n';
  os << "trials = " << c.trials << '\n';
  os << "max_depth = " << c.max_depth << '\n';
  os << "quad_order = " << c.quad_order << '\n';
  os << "seed = " << c.seed << '\n';
  os << "output_dir = " << c.output_dir << '\n';
  os << "workers = " << c.workers << '\n';
  os << "discard_mode = " << to_string(c.discard_mode) << '\n';
  return os.str();
}

}  // namespace harnack
