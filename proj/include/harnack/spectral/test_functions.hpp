#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "harnack/error.hpp"
#include "harnack/geometry/projective_point.hpp"
#include "harnack/geometry/weight.hpp"

namespace harnack {

/// A bounded real function on P^2, evaluated on homogeneous representatives.
struct TestFunction {
  std::string id;
  std::function<double(const Homogeneous&)> f;
  double sup = 1.0;  // sup |f| over P^2

  double operator()(const Homogeneous& x) const { return f(x); }
};

inline TestFunction constant_function(double c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "const:%g", c);
  return {buf, [c](const Homogeneous&) { return c; }, std::abs(c)};
}

/// |X_k|^2 / |X|^2.
inline TestFunction coordinate_function(int k) {
  if (k < 0 || k > 2) throw config_error("coordinate index must be 0, 1 or 2");
  static const char* names[] = {"coord-x", "coord-y", "coord-z"};
  return {names[k], [k](const Homogeneous& x) { return std::norm(x[k]) / norm_sq(x); }, 1.0};
}

/// Smooth bump of Fubini-Study radius `radius` (in sin d) around `center`.
inline TestFunction bump_function(const Homogeneous& center, double radius, std::string id = "bump") {
  if (!(radius > 0.0)) throw config_error("bump radius must be > 0");
  return {std::move(id),
          [center, r2 = radius * radius](const Homogeneous& x) {
            return smooth_bump((1.0 - cos2_distance(x, center)) / r2);
          },
          1.0};
}

/// The fixed dictionary used by the mass and Toeplitz experiments: the
/// constant 1, a coordinate function, and a bump centered where the weight's
/// curvature feature sits.
inline std::vector<TestFunction> test_dictionary(const Weight& w) {
  return {constant_function(1.0), coordinate_function(0), bump_function(w.feature_center(), 0.7)};
}

inline TestFunction test_function_by_id(const std::string& id, const Weight& w) {
  for (auto& f : test_dictionary(w))
    if (f.id == id) return f;
  if (id == "coord-y") return coordinate_function(1);
  if (id == "coord-z") return coordinate_function(2);
  if (id.rfind("const:", 0) == 0) {
    try {
      return constant_function(std::stod(id.substr(6)));
    } catch (const std::exception&) {
    }
  }
  throw config_error("unknown test function '" + id + "' (one of const:1, coord-x, coord-y, coord-z, bump, const:<c>)");
}

}  // namespace harnack
