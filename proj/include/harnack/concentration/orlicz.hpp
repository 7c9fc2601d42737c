#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "harnack/concentration/sampler.hpp"
#include "harnack/error.hpp"
#include "harnack/geometry/quadrature.hpp"

namespace harnack {

inline constexpr std::uint64_t kOrliczTag = 0x0a11c2;
inline constexpr std::size_t kDrawBlock = 4096;

/// Draw i of a (seed, tag) sequence comes from block i / kDrawBlock, so long
/// sequences are reproducible and can be split across workers.
template <class F>
void for_each_draw(const SubGaussianSampler& s, std::size_t count, std::uint64_t seed, std::uint64_t tag, F&& f) {
  for (std::size_t b = 0; b * kDrawBlock < count; ++b) {
    Stream g = make_stream(seed, b, tag);
    std::size_t end = std::min(count, (b + 1) * kDrawBlock);
    for (std::size_t i = b * kDrawBlock; i < end; ++i) f(s(g));
  }
}

struct OrliczEstimate {
  double value = 0.0;             // max_p p^-1/2 (E|X|^p)^1/p
  int argmax = 1;
  std::vector<double> by_p;       // index p - 1
  bool unresolved = false;        // the maximizer is p_max
  std::string warning;
};

inline OrliczEstimate orlicz_norm_estimate(const SubGaussianSampler& s, int p_max, std::size_t trials,
                                           std::uint64_t seed = 0) {
  if (p_max < 8) throw config_error("orlicz estimate needs p_max >= 8");
  if (trials < 100000) throw config_error("orlicz estimate needs >= 1e5 trials");
  std::vector<CompensatedSum> mom(p_max);
  for_each_draw(s, trials, seed, kOrliczTag, [&](double x) {
    double a = std::abs(x), pw = 1.0;
    for (int p = 0; p < p_max; ++p) {
      pw *= a;
      mom[p].add(pw);
    }
  });
  OrliczEstimate e;
  for (int p = 1; p <= p_max; ++p) {
    double v = std::pow(mom[p - 1].value() / trials, 1.0 / p) / std::sqrt(double(p));
    e.by_p.push_back(v);
    if (v > e.value) {
      e.value = v;
      e.argmax = p;
    }
  }
  if (e.argmax == p_max) {
    e.unresolved = true;
    e.warning = "supremum attained at p_max = " + std::to_string(p_max) + "; increase p_max";
  }
  return e;
}

}  // namespace harnack
