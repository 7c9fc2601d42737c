// One PASS/FAIL line per acceptance criterion.  Exit status is the number of
// failed criteria.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "chi_square.hpp"
#include "corpus.hpp"
#include "envelope_oracle.hpp"
#include "harnack/concentration/hanson_wright.hpp"
#include "harnack/concentration/orlicz.hpp"
#include "harnack/ensemble/section.hpp"
#include "harnack/harness/config.hpp"
#include "harnack/harness/monte_carlo.hpp"
#include "harnack/harness/persist.hpp"
#include "harnack/harness/trend.hpp"
#include "harnack/parallel.hpp"
#include "harnack/spectral/bergman.hpp"
#include "harnack/spectral/envelope.hpp"
#include "harnack/spectral/mass.hpp"
#include "harnack/spectral/test_functions.hpp"
#include "harnack/spectral/toeplitz.hpp"
#include "harnack/topology/count.hpp"
#include "harnack/topology/grid_oracle.hpp"
#include "harnack/topology/maximality.hpp"

using namespace harnack;
namespace fs = std::filesystem;

namespace {

// tolerances
constexpr double kDensityTol = 1e-6;
constexpr double kToeplitzTol = 1e-8;
constexpr double kEnvelopeTol = 1e-8;
constexpr double kConvexTol = 1e-10;
constexpr double kIdempotentTol = 1e-12;
constexpr double kSigmas = 3.0;
constexpr int kOracleRows = 2048;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Weight perturbed_weight() { return Weight::perturbed(1.0, ProjectivePoint::real(1, 1, 1), 0.9); }
Weight mild_weight() { return Weight::perturbed(0.05, ProjectivePoint::real(1, 1, 1), 0.9); }

Outcome density() {
  Outcome o;
  double worst = 0;
  for (const Weight& w : {Weight::fubini_study(), perturbed_weight()})
    for (int n = 1; n <= 6; ++n) {
      auto onb = make_orthonormal_basis(n, w);
      double err = std::abs(density_check(onb, *onb.rule, false).residual());
      worst = std::max(worst, err);
      if (!(err < kDensityTol)) fail(o, fmt("%s n=%d residual %.3g", std::string(to_string(w.kind())).c_str(), n, err));
    }
  if (o.pass) o.detail = fmt("max |integral - d_n| = %.3g over 2 weights, n=1..6", worst);
  return o;
}

Outcome toeplitz() {
  Outcome o;
  double trace_err = 0, norm_excess = -std::numeric_limits<double>::infinity();
  for (const Weight& w : {Weight::fubini_study(), perturbed_weight()})
    for (int n = 1; n <= 6; ++n) {
      auto onb = make_orthonormal_basis(n, w);
      for (const auto& phi : test_dictionary(w)) {
        auto t = toeplitz_matrix(onb, phi);
        double te = std::abs(t.trace - weighted_bergman_mass(onb, phi, *onb.rule));
        double ne = t.operator_norm - phi.sup;
        trace_err = std::max(trace_err, te);
        norm_excess = std::max(norm_excess, ne);
        if (!(te < kToeplitzTol)) fail(o, fmt("%s n=%d trace error %.3g", phi.id.c_str(), n, te));
        if (!(ne <= kToeplitzTol)) fail(o, fmt("%s n=%d norm exceeds sup by %.3g", phi.id.c_str(), n, ne));
      }
    }
  if (o.pass) o.detail = fmt("max trace error %.3g, max(||T|| - sup) = %.3g", trace_err, norm_excess);
  return o;
}

ExperimentConfig mc_config(const std::string& name, const std::string& degrees, int trials, int seed, int workers) {
  std::ostringstream s;
  s << "experiment = " << name << "\ndegrees = " << degrees << "\ntrials = " << trials << "\nseed = " << seed
    << "\na = 0.1\nworkers = " << workers << "\n";
  return parse_config(s.str());
}

Outcome harnack_klein(int workers) {
  Outcome o;
  auto rec = estimate_maximal_probability(mc_config("harnack-klein", "2,3,4,5", 2700, 31, workers));
  std::uint64_t certified = 0;
  for (const auto& r : rec.rows) {
    certified += r.certified;
    if (r.max_b0 > harnack_bound(r.n)) fail(o, fmt("n=%d max b0 %d > g+1 = %d", r.n, r.max_b0, harnack_bound(r.n)));
    for (const auto& [b0, count] : r.histogram)
      if (b0 > harnack_bound(r.n) && count > 0) fail(o, fmt("n=%d histogram has b0=%d", r.n, b0));
  }
  if (certified < 10000) fail(o, fmt("only %llu certified samples", (unsigned long long)certified));
  if (o.pass) o.detail = fmt("%llu certified samples over n=2..5, no violation", (unsigned long long)certified);
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  auto curves = corpus::classical_curves();
  int checked = 0;
  for (const auto& c : curves) {
    MonomialBasis basis(c.poly.degree());
    auto mono = c.poly.coefficients();
    auto rep = count_components(basis, mono, 14);
    auto g = grid_oracle(basis, mono, kOracleRows);
    if (!rep.certified) fail(o, c.name + ": not certified");
    else if (rep.b0 != g.b0) fail(o, fmt("%s: certified %d, oracle %d", c.name.c_str(), rep.b0, g.b0));
    else if (rep.b0 != c.b0) fail(o, fmt("%s: b0 %d, classical %d", c.name.c_str(), rep.b0, c.b0));
    ++checked;
  }
  if (checked < 12) fail(o, "corpus has fewer than 12 curves");
  if (o.pass) o.detail = fmt("%d curves, certified b0 equals grid oracle and classical count", checked);
  return o;
}

Outcome rarity(int workers) {
  Outcome o;
  auto rec = estimate_maximal_probability(mc_config("rarity", "3,4,5", 1200, 57, workers));
  for (const auto& r : rec.rows)
    if (r.certified < 1000) fail(o, fmt("n=%d has %llu certified", r.n, (unsigned long long)r.certified));
  auto tr = rarity_trend(rec, {3, 1000, DiscardMode::exclude});
  std::string freqs;
  for (const auto& r : rec.rows) freqs += fmt(" n=%d:%.4f", r.n, r.freq_member());
  if (tr.verdict == Trend::increasing) fail(o, "verdict increasing;" + freqs);
  if (o.pass) o.detail = "verdict " + std::string(to_string(tr.verdict)) + ";" + freqs;
  return o;
}

Outcome norm_tail(int workers) {
  Outcome o;
  const std::size_t trials = 100000;
  std::string info;
  for (const char* name : {"gaussian", "uniform"}) {
    auto s = SubGaussianSampler::from_name(name);
    for (int n = 1; n <= 4; ++n) {
      auto onb = make_orthonormal_basis(n, Weight::fubini_study());
      auto r = norm_tail_experiment(onb, s, trials, 11, workers);
      double f = r.tail.frequency();
      if (f > r.bound) fail(o, fmt("%s n=%d frequency %.3g > %.3g", name, n, f, r.bound));
      if (std::string(name) == "gaussian") {
        int d = r.dimension;
        double p = oracle::chi_square_sf(d, double(d) * d);
        double se = std::sqrt(p * (1 - p) / trials);
        if (std::abs(f - p) > kSigmas * se) fail(o, fmt("gaussian n=%d frequency %.4g, chi-square %.4g", n, f, p));
        if (n == 1) info = fmt("n=1 gaussian %.4f vs chi-square %.4f vs bound %.4f", f, p, r.bound);
      }
    }
  }
  if (o.pass) o.detail = info + "; all below d e^-d";
  return o;
}

Outcome hanson_wright(int workers) {
  Outcome o;
  const std::size_t trials = 100000;
  auto g = SubGaussianSampler::from_name("gaussian");
  // identity: chi^2_5; diag(1,1,2,2): chi^2_2 + 2 chi^2_2
  Eigen::MatrixXd id5 = Eigen::MatrixXd::Identity(5, 5);
  Eigen::MatrixXd pair = Eigen::Vector4d(1, 1, 2, 2).asDiagonal();
  std::vector<double> ts{1, 2, 4, 8};
  auto a = empirical_quadratic_tails(g, id5, ts, trials, 3, workers);
  auto b = empirical_quadratic_tails(g, pair, ts, trials, 4, workers);
  double worst = 0;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    for (auto [tail, p] : {std::pair{a[j], oracle::chi_square_two_sided(5, ts[j])},
                           std::pair{b[j], oracle::paired_two_sided(1, 2, ts[j])}}) {
      double se = std::sqrt(p * (1 - p) / trials);
      worst = std::max(worst, std::abs(tail.frequency() - p) / se);
      if (std::abs(tail.frequency() - p) > kSigmas * se)
        fail(o, fmt("t=%g frequency %.4g, oracle %.4g", ts[j], tail.frequency(), p));
    }
  }
  std::string chats;
  auto cases = default_hw_cases();
  for (const char* name : {"gaussian", "uniform", "rademacher"}) {
    auto s = SubGaussianSampler::from_name(name);
    double k = orlicz_norm_estimate(s, 12, trials, 1000).value;
    auto cal = calibrate_hw_constant(s, k, cases, trials, 1000, workers);
    auto rows = validate_hw_constant(s, cal, cases, trials, 2000, workers);
    for (const auto& r : rows)
      if (!r.holds) fail(o, fmt("%s %s t=%g: %.4g > bound %.4g", name, r.id.c_str(), r.t, r.tail.frequency(), r.bound));
    chats += fmt(" %s c=%.3f", name, cal.c_hat);
  }
  if (o.pass) o.detail = fmt("chi-square max deviation %.2f SE; frozen", worst) + chats + " hold on validation";
  return o;
}

Outcome envelope() {
  Outcome o;
  struct Case {
    const char* name;
    Weight w;
  };
  std::vector<Case> cases{{"fubini-study", Weight::fubini_study()},
                          {"shallow dip", Weight::toric_radial(0.02, 0.0, 1.5)},
                          {"dip at 0", Weight::toric_radial(0.3, 0.0, 0.5)},
                          {"dip at 1", Weight::toric_radial(0.5, 1.0, 0.4)},
                          {"dip at -1", Weight::toric_radial(0.2, -1.0, 0.3)}};
  double worst = 0;
  int dipped = 0;
  for (const auto& c : cases) {
    auto grid = toric_profile_grid(c.w, -4.0, 4.0, 161);
    auto env = equilibrium_envelope_toric(grid.t, grid.profile);
    auto ref = oracle::envelope_oracle(grid.t, grid.profile, 0.0, 1.0);
    for (std::size_t i = 0; i < env.size(); ++i) {
      double e = std::abs(env.envelope[i] - ref[i]);
      worst = std::max(worst, e);
      if (!(e <= kEnvelopeTol)) fail(o, fmt("%s node %zu: %.3g from oracle", c.name, i, e));
      if (env.envelope[i] > env.profile[i]) fail(o, fmt("%s node %zu above the profile", c.name, i));
    }
    if (min_second_difference(env) < -kConvexTol) fail(o, std::string(c.name) + ": not convex");
    auto again = equilibrium_envelope_toric(env.t, env.envelope);
    for (std::size_t i = 0; i < env.size(); ++i)
      if (std::abs(again.envelope[i] - env.envelope[i]) > kIdempotentTol)
        fail(o, std::string(c.name) + ": not idempotent");
    if (env.contact_count() < env.size()) ++dipped;
  }
  if (dipped != 3) fail(o, fmt("%d profiles leave the envelope, expected 3", dipped));
  if (o.pass) o.detail = fmt("5 profiles (%d dipped), max oracle deviation %.3g", dipped, worst);
  return o;
}

Outcome mass() {
  Outcome o;
  const Weight w = mild_weight();
  auto sampler = SubGaussianSampler::from_name("gaussian");
  const int trials = 10000;
  std::string sds;
  for (const auto& phi : test_dictionary(w)) {
    double prev = std::numeric_limits<double>::infinity();
    for (int n : {2, 4, 6}) {
      auto onb = make_orthonormal_basis(n, w);
      auto t = toeplitz_matrix(onb, phi);
      double sum = 0, sq = 0;
      for (int k = 0; k < trials; ++k) {
        double m = mass_functional(sample_section(onb, sampler, 1, k), t);
        sum += m;
        sq += m * m;
      }
      double mean = sum / trials;
      double sd = std::sqrt((sq - trials * mean * mean) / (trials - 1));
      double expect = weighted_bergman_mass(onb, phi, *onb.rule) / onb.dimension();
      if (std::abs(mean - expect) > kSigmas * sd / std::sqrt(double(trials)))
        fail(o, fmt("%s n=%d mean %.5g, expected %.5g", phi.id.c_str(), n, mean, expect));
      if (!(sd < prev)) fail(o, fmt("%s n=%d sd %.4g not below %.4g", phi.id.c_str(), n, sd, prev));
      prev = sd;
      if (phi.id == "bump") sds += fmt(" %.4f", sd);
    }
  }
  if (o.pass) o.detail = "means within 3 SE; bump sd n=2,4,6:" + sds;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  Outcome o;
  fs::path root = fs::temp_directory_path() / ("harnack-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  std::string first;
  for (int workers : {1, 3, 8}) {
    auto cfg = mc_config("determinism", "2,3,4", 600, 5, workers);
    auto rec = estimate_maximal_probability(cfg);
    fs::path dir = root / ("w" + std::to_string(workers));
    persist_run(rec, dir.string(), false);
    std::string table = slurp(dir / "table.csv");
    if (table.empty()) fail(o, "empty table.csv");
    if (first.empty()) first = table;
    else if (table != first) fail(o, fmt("table.csv differs at %d workers", workers));
  }
  fs::remove_all(root);
  if (o.pass) o.detail = fmt("table.csv identical for 1, 3, 8 workers (%zu bytes)", first.size());
  return o;
}

}  // namespace

int main() {
  const int workers = std::max(2, default_workers());
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "dimensional density", 60, density},
      {2, "toeplitz identities", 120, toeplitz},
      {3, "harnack-klein bound", 1800, [&] { return harnack_klein(workers); }},
      {4, "topology oracle agreement", 300, oracle_agreement},
      {5, "maximality rarity trend", 3600, [&] { return rarity(workers); }},
      {6, "norm tail", 120, [&] { return norm_tail(workers); }},
      {7, "hanson-wright", 300, [&] { return hanson_wright(workers); }},
      {8, "envelope", 60, envelope},
      {9, "mass concentration", 600, mass},
      {10, "determinism", 300, determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > c.limit_s) fail(o, fmt("took %.0f s, limit %.0f s", secs, c.limit_s));
    std::printf("criterion %2d %-26s %s  (%.1f s)  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs,
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", int(all.size()) - failed, all.size());
  return failed;
}
