#pragma once

#include <cmath>

#include "harnack/error.hpp"
#include "harnack/topology/count.hpp"

namespace harnack {

/// Genus of a smooth plane curve of degree n: (n - 1)(n - 2) / 2.
inline int genus(int n) {
  if (n < 1) throw config_error("degree must be >= 1");
  return (n - 1) * (n - 2) / 2;
}

/// Harnack-Klein bound on the number of real components: genus + 1.
inline int harnack_bound(int n) { return genus(n) + 1; }

struct MaximalityVerdict {
  bool in_M = false;
  double threshold = 0.0;  // g + 1 - a n
  int deficit = 0;         // g + 1 - b0
};

/// Membership in M_a^n = { b0 >= g + 1 - a n }.  Refuses uncertified reports.
inline MaximalityVerdict classify_maximality(const TopologyReport& r, double a) {
  if (!r.certified) throw certification_error("maximality needs a certified topology report");
  if (!(a > 0.0)) throw config_error("maximality slack a must be > 0");
  MaximalityVerdict v;
  v.threshold = harnack_bound(r.degree) - a * r.degree;
  v.in_M = r.b0 >= v.threshold;
  v.deficit = harnack_bound(r.degree) - r.b0;
  return v;
}

}  // namespace harnack
