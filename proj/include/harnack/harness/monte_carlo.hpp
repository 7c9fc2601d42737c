#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "harnack/ensemble/orthonormal_basis.hpp"
#include "harnack/ensemble/section.hpp"
#include "harnack/harness/config.hpp"
#include "harnack/parallel.hpp"
#include "harnack/topology/count.hpp"
#include "harnack/topology/maximality.hpp"

namespace harnack {

inline constexpr double kMaxDiscardRate = 0.2;
inline constexpr std::size_t kMcChunk = 256;

/// Wilson score interval for k successes in n trials at z (1.96 = 95%).
struct Interval95 {
  double lo = 0.0, hi = 1.0;
  bool operator==(const Interval95&) const = default;
};

inline Interval95 wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054) {
  if (n == 0) return {0.0, 1.0};
  double p = double(k) / n, z2 = z * z, nn = double(n);
  double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
  double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  Interval95 w{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  // guard rounding at the ends so the interval always contains p
  w.lo = std::min(w.lo, p);
  w.hi = std::max(w.hi, p);
  return w;
}

/// One degree of the maximality experiment.  All counts are exact integers.
struct DegreeRow {
  int n = 0;
  std::uint64_t trials = 0;  // attempted (fewer than configured when aborted)
  std::uint64_t certified = 0;
  std::uint64_t discarded = 0;
  std::uint64_t b0_sum = 0;
  int max_b0 = 0;
  int genus = 0;
  double threshold = 0.0;        // g + 1 - a n
  std::uint64_t members = 0;     // certified samples in M_a^n
  std::uint64_t maximal = 0;     // certified samples with b0 = g + 1
  std::map<int, std::uint64_t> histogram;  // b0 -> count
  bool aborted = false;

  double discard_rate() const { return trials ? double(discarded) / trials : 0.0; }
  double mean_b0() const { return certified ? double(b0_sum) / certified : NAN; }
  /// Excluding uncertified samples from numerator and denominator.
  double freq_member() const { return certified ? double(members) / certified : NAN; }
  Interval95 member_interval() const { return wilson_interval(members, certified); }
  /// Uncertified samples counted as members (upper bracket).
  double freq_member_pessimistic() const { return trials ? double(members + discarded) / trials : NAN; }
  Interval95 pessimistic_interval() const { return wilson_interval(members + discarded, trials); }
  double freq_maximal() const { return certified ? double(maximal) / certified : NAN; }
  Interval95 maximal_interval() const { return wilson_interval(maximal, certified); }

  double frequency(DiscardMode m) const { return m == DiscardMode::exclude ? freq_member() : freq_member_pessimistic(); }
  Interval95 interval(DiscardMode m) const {
    return m == DiscardMode::exclude ? member_interval() : pessimistic_interval();
  }

  bool operator==(const DegreeRow&) const = default;
};

struct RunRecord {
  ExperimentConfig config;
  std::vector<DegreeRow> rows;
  double wall_time = 0.0;  // seconds; not part of the record's identity
  std::string version = HARNACK_VERSION;

  bool any_aborted() const {
    for (const auto& r : rows)
      if (r.aborted) return true;
    return false;
  }
};

/// Record identity: everything except wall time and worker count.
inline bool same_content(const RunRecord& x, const RunRecord& y) {
  ExperimentConfig a = x.config, b = y.config;
  a.workers = b.workers = 1;
  return a == b && x.rows == y.rows && x.version == y.version;
}

/// Trial outcome; b0 < 0 marks an uncertified sample.
struct TrialOutcome {
  int b0 = -1;
};

inline TrialOutcome run_trial(const OrthonormalBasis& onb, const SubGaussianSampler& s, const ExperimentConfig& cfg,
                              std::uint64_t trial) {
  auto smp = sample_section(onb, s, cfg.seed, trial);
  auto rep = count_components(smp, onb, cfg.max_depth);
  return {rep.certified ? rep.b0 : -1};
}

/// Runs one degree: trials in fixed chunks, the abort test applied after each
/// chunk, so the outcome does not depend on the worker count.
inline DegreeRow run_degree(const ExperimentConfig& cfg, int n) {
  const Weight w = cfg.make_weight();
  const SubGaussianSampler s = cfg.make_sampler();
  std::shared_ptr<const QuadratureRule> rule;
  if (cfg.quad_order > 0) rule = std::make_shared<const QuadratureRule>(build_quadrature(cfg.quad_order));
  const OrthonormalBasis onb = make_orthonormal_basis(n, w, rule);

  DegreeRow row;
  row.n = n;
  row.genus = genus(n);
  row.threshold = harnack_bound(n) - cfg.a * n;
  const std::uint64_t budget = static_cast<std::uint64_t>(std::floor(kMaxDiscardRate * cfg.trials));
  std::vector<TrialOutcome> out;
  for (std::uint64_t start = 0; start < cfg.trials; start += kMcChunk) {
    std::uint64_t len = std::min<std::uint64_t>(kMcChunk, cfg.trials - start);
    out.assign(len, {});
    parallel_for(len, cfg.workers, [&](std::size_t i) { out[i] = run_trial(onb, s, cfg, start + i); });
    for (const auto& o : out) {
      ++row.trials;
      if (o.b0 < 0) {
        ++row.discarded;
        continue;
      }
      ++row.certified;
      row.b0_sum += o.b0;
      row.max_b0 = std::max(row.max_b0, o.b0);
      ++row.histogram[o.b0];
      if (o.b0 >= row.threshold) ++row.members;
      if (o.b0 == harnack_bound(n)) ++row.maximal;
    }
    if (row.discarded > budget) {
      row.aborted = true;
      break;
    }
  }
  return row;
}

/// Optional per-degree checkpoint hooks for resumable runs.
struct Checkpointer {
  std::function<bool(int n, DegreeRow& row)> load;  // true if degree n was restored
  std::function<void(const DegreeRow& row)> save;
};

inline RunRecord estimate_maximal_probability(const ExperimentConfig& cfg, const Checkpointer* ck = nullptr) {
  validate(cfg);
  auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.config = cfg;
  for (int n : cfg.degrees) {
    DegreeRow row;
    if (!(ck && ck->load && ck->load(n, row))) {
      row = run_degree(cfg, n);
      if (ck && ck->save) ck->save(row);
    }
    rec.rows.push_back(std::move(row));
  }
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace harnack
