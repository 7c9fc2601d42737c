#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "harnack/harness/monte_carlo.hpp"

namespace harnack {

enum class Trend { non_increasing, increasing, inconclusive };

inline std::string_view to_string(Trend t) {
  switch (t) {
    case Trend::non_increasing: return "non-increasing";
    case Trend::increasing: return "increasing";
    case Trend::inconclusive: return "inconclusive";
  }
  return "?";
}

enum class PairTrend { decreasing, degenerate, increasing, ambiguous };

inline std::string_view to_string(PairTrend t) {
  switch (t) {
    case PairTrend::decreasing: return "decreasing";
    case PairTrend::degenerate: return "degenerate";
    case PairTrend::increasing: return "increasing";
    case PairTrend::ambiguous: return "ambiguous";
  }
  return "?";
}

struct TrendPair {
  int n_from = 0, n_to = 0;
  PairTrend verdict = PairTrend::ambiguous;
  double log_diff = NAN;  // log f(n_to) - log f(n_from); -inf / nan when a frequency is 0
};

struct TrendReport {
  Trend verdict = Trend::inconclusive;
  std::vector<TrendPair> pairs;
  std::string reason;
};

struct TrendOptions {
  std::size_t min_degrees = 3;
  std::uint64_t min_certified = 1000;
  DiscardMode mode = DiscardMode::exclude;
};

/// Consecutive degrees are compared by their Wilson 95% intervals: separated
/// intervals decide a direction, two frequencies both exactly 0 (or both 1)
/// are a degenerate tie, anything else is ambiguous.  One increasing pair
/// makes the record increasing; all pairs decreasing or degenerate make it
/// non-increasing; otherwise inconclusive.
inline TrendReport rarity_trend(const RunRecord& rec, const TrendOptions& opt = {}) {
  TrendReport rep;
  if (rec.rows.size() < opt.min_degrees) {
    rep.reason = "record covers " + std::to_string(rec.rows.size()) + " degrees, need " +
                 std::to_string(opt.min_degrees);
    return rep;
  }
  for (std::size_t i = 1; i < rec.rows.size(); ++i)
    if (rec.rows[i].n <= rec.rows[i - 1].n) {
      rep.reason = "degrees are not increasing";
      return rep;
    }
  for (const auto& r : rec.rows) {
    if (r.aborted) {
      rep.reason = "degree " + std::to_string(r.n) + " was aborted";
      return rep;
    }
    if (r.certified < opt.min_certified) {
      rep.reason = "degree " + std::to_string(r.n) + " has " + std::to_string(r.certified) + " certified samples, need " +
                   std::to_string(opt.min_certified);
      return rep;
    }
  }
  bool any_increasing = false, all_settled = true;
  for (std::size_t i = 1; i < rec.rows.size(); ++i) {
    const auto& a = rec.rows[i - 1];
    const auto& b = rec.rows[i];
    double fa = a.frequency(opt.mode), fb = b.frequency(opt.mode);
    auto ia = a.interval(opt.mode), ib = b.interval(opt.mode);
    TrendPair p{a.n, b.n, PairTrend::ambiguous, std::log(fb) - std::log(fa)};
    if ((fa == 0.0 && fb == 0.0) || (fa == 1.0 && fb == 1.0)) p.verdict = PairTrend::degenerate;
    else if (ib.hi < ia.lo) p.verdict = PairTrend::decreasing;
    else if (ib.lo > ia.hi) p.verdict = PairTrend::increasing;
    if (fa == 0.0 && fb == 0.0) p.log_diff = NAN;
    any_increasing = any_increasing || p.verdict == PairTrend::increasing;
    all_settled = all_settled && (p.verdict == PairTrend::decreasing || p.verdict == PairTrend::degenerate);
    rep.pairs.push_back(p);
  }
  if (any_increasing) {
    rep.verdict = Trend::increasing;
    rep.reason = "an increase is significant at 95%";
  } else if (all_settled) {
    rep.verdict = Trend::non_increasing;
  } else {
    rep.verdict = Trend::inconclusive;
    rep.reason = "overlapping intervals";
  }
  return rep;
}

}  // namespace harnack
