#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "harnack/error.hpp"

namespace harnack {

/// Independent, reproducible random stream for a (seed, trial, tag) triple.
/// Trials never share state, so any scheduling of trials over workers
/// produces identical draws.
using Stream = std::mt19937_64;

inline Stream make_stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t tag = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32),
                    0x9e3779b9u};
  return Stream(seq);
}

enum class SamplerKind { gaussian, uniform_scaled, rademacher };

/// Mean-zero, unit-variance sub-Gaussian coefficient law.
class SubGaussianSampler {
 public:
  explicit SubGaussianSampler(SamplerKind k = SamplerKind::gaussian) : kind_(k) {}

  static SubGaussianSampler from_name(std::string_view name) {
    if (name == "gaussian") return SubGaussianSampler(SamplerKind::gaussian);
    if (name == "uniform" || name == "uniform-scaled")
      return SubGaussianSampler(SamplerKind::uniform_scaled);
    if (name == "rademacher") return SubGaussianSampler(SamplerKind::rademacher);
    throw config_error("unknown sampler '" + std::string(name) + "'");
  }

  SamplerKind kind() const { return kind_; }

  std::string_view name() const {
    switch (kind_) {
      case SamplerKind::gaussian: return "gaussian";
      case SamplerKind::uniform_scaled: return "uniform";
      case SamplerKind::rademacher: return "rademacher";
    }
    return "?";
  }

  double variance() const { return 1.0; }

  /// False for laws with atoms; such coefficients give singular real curves
  /// with positive probability.
  bool absolutely_continuous() const { return kind_ != SamplerKind::rademacher; }

  double operator()(Stream& g) const {
    switch (kind_) {
      case SamplerKind::gaussian: {
        std::normal_distribution<double> d(0.0, 1.0);
        return d(g);
      }
      case SamplerKind::uniform_scaled: {
        // uniform on [-sqrt 3, sqrt 3]
        double u = double(g() >> 11) * 0x1.0p-53;
        return std::sqrt(3.0) * (2.0 * u - 1.0);
      }
      case SamplerKind::rademacher:
        return (g() >> 63) ? 1.0 : -1.0;
    }
    return 0.0;
  }

 private:
  SamplerKind kind_;
};

}  // namespace harnack
