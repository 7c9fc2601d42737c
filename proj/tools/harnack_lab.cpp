#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "harnack/concentration/diagnostics.hpp"
#include "harnack/concentration/hanson_wright.hpp"
#include "harnack/concentration/orlicz.hpp"
#include "harnack/ensemble/orthonormal_basis.hpp"
#include "harnack/geometry/curvature.hpp"
#include "harnack/harness/config.hpp"
#include "harnack/harness/monte_carlo.hpp"
#include "harnack/harness/persist.hpp"
#include "harnack/harness/trend.hpp"
#include "harnack/spectral/bergman.hpp"
#include "harnack/spectral/envelope.hpp"
#include "harnack/spectral/test_functions.hpp"
#include "harnack/spectral/toeplitz.hpp"
#include "harnack/topology/count.hpp"
#include "harnack/topology/grid_oracle.hpp"
#include "harnack/topology/maximality.hpp"

using namespace harnack;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCertification = 3;

std::string num(double v) { return detail::format_double(v); }

std::vector<double> parse_doubles(const std::string& s, const char* what) {
  std::vector<double> out;
  for (auto& item : detail::split_list(s)) out.push_back(detail::parse_double(what, item));
  return out;
}

std::vector<int> parse_ints(const std::string& s, const char* what) {
  std::vector<int> out;
  for (auto& item : detail::split_list(s)) out.push_back(static_cast<int>(detail::parse_int(what, item)));
  if (out.empty()) throw config_error(std::string(what) + " list is empty");
  return out;
}

// "x:y:z;x:y:z" real points
std::vector<ProjectivePoint> parse_points(const std::string& s) {
  std::vector<ProjectivePoint> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::replace(item.begin(), item.end(), ':', ',');
    auto c = parse_doubles(item, "point");
    if (c.size() != 3) throw config_error("points are x:y:z triples separated by ';'");
    if (c[0] == 0 && c[1] == 0 && c[2] == 0) throw config_error("point (0:0:0) is not projective");
    out.push_back(ProjectivePoint::real(c[0], c[1], c[2]));
  }
  return out;
}

struct WeightArgs {
  std::string kind = "fubini-study";
  std::string params;
  Weight make() const { return Weight::from_spec(kind, parse_doubles(params, "weight params")); }
};

void add_weight_options(CLI::App* app, WeightArgs& w) {
  app->add_option("--weight", w.kind, "fubini-study | perturbed | toric-radial")->capture_default_str();
  app->add_option("--params", w.params, "weight parameters, comma separated (perturbed: amp,cx,cy,cz,radius; "
                                        "toric-radial: dip,center,width)");
}

// Coefficient file: one monomial per line, "a b c value" for value x^a y^b z^c;
// '#' starts a comment.  All exponent triples must have the same sum.
std::pair<MonomialBasis, std::vector<double>> read_coefficients(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw config_error("cannot open coefficient file '" + path + "'");
  std::vector<std::pair<Exponent, double>> terms;
  std::string line;
  int deg = -1, lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    auto h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    if (detail::trim(line).empty()) continue;
    std::istringstream ls(line);
    Exponent e{};
    double v = 0;
    std::string extra;
    if (!(ls >> e.a >> e.b >> e.c >> v) || (ls >> extra))
      throw config_error("line " + std::to_string(lineno) + ": expected 'a b c value'");
    if (e.a < 0 || e.b < 0 || e.c < 0) throw config_error("line " + std::to_string(lineno) + ": negative exponent");
    int d = e.a + e.b + e.c;
    if (deg < 0) deg = d;
    if (d != deg) throw config_error("line " + std::to_string(lineno) + ": polynomial is not homogeneous");
    terms.emplace_back(e, v);
  }
  if (deg < 1 || deg > 10) throw config_error("coefficient file must describe a polynomial of degree 1..10");
  MonomialBasis basis(deg);
  std::vector<double> mono(basis.size(), 0.0);
  for (const auto& [e, v] : terms) mono[basis.index_of(e)] += v;
  return {basis, mono};
}

// mc maximal
int run_mc(const std::string& config_path, bool force, int workers, bool resume) {
  ExperimentConfig cfg = load_config(config_path);
  if (workers > 0) cfg.workers = workers;
  if (fs::exists(cfg.output_dir) && !force)
    throw config_error("run directory '" + cfg.output_dir + "' exists; use --force to overwrite");
  Checkpointer ck = make_checkpointer(cfg);
  if (!resume) clear_checkpoints(cfg);
  RunRecord rec = estimate_maximal_probability(cfg, &ck);
  persist_run(rec, cfg.output_dir, force);
  clear_checkpoints(cfg);
  std::cout << table_csv(rec);
  auto trend = rarity_trend(rec, {3, 1000, cfg.discard_mode});
  std::cerr << "trend: " << to_string(trend.verdict);
  if (!trend.reason.empty()) std::cerr << " (" << trend.reason << ")";
  std::cerr << "\nwrote " << cfg.output_dir << "/{run.json,table.csv,config.echo}\n";
  for (const auto& r : rec.rows)
    if (r.aborted) {
      std::cerr << "degree " << r.n << " aborted: discard rate " << r.discard_rate() << " exceeds "
                << kMaxDiscardRate << " at max_depth " << cfg.max_depth << "\n";
    }
  return rec.any_aborted() ? kExitCertification : 0;
}

// topology count
int run_topology(const std::string& path, int max_depth, bool oracle, int nlat) {
  auto [basis, mono] = read_coefficients(path);
  auto rep = count_components(basis, mono, max_depth);
  std::cout << "degree,b0,certified,genus,harnack_bound,max_depth,unresolved_cells,leaves,sphere_components,"
               "pseudolines,min_gradient";
  if (oracle) std::cout << ",oracle_b0,oracle_match";
  std::cout << "\n"
            << rep.degree << ',' << rep.b0 << ',' << (rep.certified ? 1 : 0) << ',' << genus(rep.degree) << ','
            << harnack_bound(rep.degree) << ',' << rep.max_depth << ',' << rep.unresolved_cells << ',' << rep.leaves
            << ',' << rep.sphere_components << ',' << rep.pseudolines << ',' << num(rep.min_gradient);
  if (oracle) {
    auto g = grid_oracle(basis, mono, nlat);
    std::cout << ',' << g.b0 << ',' << (g.b0 == rep.b0 ? 1 : 0);
  }
  std::cout << "\n";
  if (!rep.certified) {
    std::cerr << "not certified: " << rep.diagnostic << "\n";
    return kExitCertification;
  }
  return 0;
}

const char* kSpectralHeader = "n,id,value,reference,residual";

// spectral bergman
int run_bergman(const WeightArgs& wa, const std::string& degrees, int order, const std::string& points) {
  Weight w = wa.make();
  auto pts = points.empty() ? std::vector<ProjectivePoint>{} : parse_points(points);
  std::cout << kSpectralHeader << "\n";
  for (int n : parse_ints(degrees, "degrees")) {
    std::shared_ptr<const QuadratureRule> rule;
    if (order > 0) rule = std::make_shared<const QuadratureRule>(build_quadrature(order));
    auto onb = make_orthonormal_basis(n, w, rule);
    auto c = density_check(onb, *onb.rule);
    double d = onb.dimension();
    std::cout << n << ",integral," << num(c.value) << ',' << num(d) << ',' << num(c.value - d) << "\n";
    std::cout << n << ",integral@" << c.refined_order << ',' << num(c.refined_value) << ',' << num(d) << ','
              << num(c.refined_value - d) << "\n";
    if (c.under_resolved)
      std::cerr << "n=" << n << ": order doubling moves the integral by " << c.value - c.refined_value
                << " (> 1e-8); quadrature under-resolved\n";
    auto prof = bergman_density_profile(onb, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& x = pts[i].unit();
      char id[96];
      std::snprintf(id, sizeof id, "k/d@%.6g:%.6g:%.6g", x[0].real(), x[1].real(), x[2].real());
      double ref = curvature_density(w, pts[i]);
      std::cout << n << ',' << id << ',' << num(prof.normalized[i]) << ',' << num(ref) << ','
                << num(prof.normalized[i] - ref) << "\n";
    }
  }
  return 0;
}

// spectral toeplitz
int run_toeplitz(const WeightArgs& wa, const std::string& degrees, const std::string& functions) {
  Weight w = wa.make();
  std::vector<TestFunction> phis;
  if (functions.empty()) phis = test_dictionary(w);
  else
    for (auto& id : detail::split_list(functions)) phis.push_back(test_function_by_id(id, w));
  std::cout << kSpectralHeader << "\n";
  for (int n : parse_ints(degrees, "degrees")) {
    auto onb = make_orthonormal_basis(n, w);
    for (const auto& phi : phis) {
      auto t = toeplitz_matrix(onb, phi);
      double mass = weighted_bergman_mass(onb, phi, *onb.rule);
      double sup = node_sup(phi, *onb.rule);
      double hs2 = t.hs_norm * t.hs_norm / onb.dimension();
      std::cout << n << ',' << phi.id << ":trace," << num(t.trace) << ',' << num(mass) << ',' << num(t.trace - mass)
                << "\n";
      std::cout << n << ',' << phi.id << ":opnorm," << num(t.operator_norm) << ',' << num(sup) << ','
                << num(t.operator_norm - sup) << "\n";
      std::cout << n << ',' << phi.id << ":hs2/d," << num(hs2) << ",nan,nan\n";
    }
  }
  return 0;
}

// spectral envelope
int run_envelope(const WeightArgs& wa, double t_lo, double t_hi, int points, double s_lo, double s_hi) {
  Weight w = wa.make();
  auto grid = toric_profile_grid(w, t_lo, t_hi, points);
  auto env = equilibrium_envelope_toric(grid.t, grid.profile, s_lo, s_hi);
  auto sup = equilibrium_support(w, env);
  std::cout << kSpectralHeader << ",class\n";
  for (std::size_t i = 0; i < env.size(); ++i)
    std::cout << i << ',' << "t=" << num(env.t[i]) << ',' << num(env.envelope[i]) << ',' << num(env.profile[i]) << ','
              << num(env.envelope[i] - env.profile[i]) << ',' << to_string(sup.classes[i]) << "\n";
  std::cerr << "contact nodes " << env.contact_count() << "/" << env.size() << "; support runs:";
  for (auto [a, b] : sup.support) std::cerr << " [" << a << ", " << b << "]";
  std::cerr << "\n";
  return 0;
}

// "identity:N" | "diag:a,b,..." | "ones:N"
Eigen::MatrixXd parse_matrix(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw config_error("matrix is identity:N, diag:a,b,... or ones:N");
  std::string kind = s.substr(0, colon), arg = s.substr(colon + 1);
  if (kind == "identity" || kind == "ones") {
    auto n = detail::parse_int("matrix size", arg);
    if (n < 1 || n > 1000) throw config_error("matrix size must lie in 1..1000");
    if (kind == "identity") return Eigen::MatrixXd::Identity(n, n);
    return Eigen::MatrixXd::Ones(n, n);
  }
  if (kind == "diag") {
    auto d = parse_doubles(arg, "diagonal");
    if (d.empty()) throw config_error("diagonal is empty");
    return Eigen::Map<Eigen::VectorXd>(d.data(), d.size()).asDiagonal().toDenseMatrix();
  }
  throw config_error("unknown matrix kind '" + kind + "'");
}

const char* kConcHeader = "sampler,size,level,frequency,bound,trials";

// conc hw: calibrate c on one seed, validate on the next
int run_hw(const std::string& sampler, std::size_t trials, std::uint64_t seed, int workers) {
  auto s = SubGaussianSampler::from_name(sampler);
  auto cases = default_hw_cases();
  double k = orlicz_norm_estimate(s, 12, std::max<std::size_t>(trials, 100000), seed).value;
  auto cal = calibrate_hw_constant(s, k, cases, trials, seed, workers);
  auto rows = validate_hw_constant(s, cal, cases, trials, seed + 1, workers);
  std::cout << kConcHeader << ",case,c,holds\n";
  bool ok = true;
  for (std::size_t i = 0, r = 0; i < cases.size(); ++i)
    for (std::size_t j = 0; j < cases[i].ts.size(); ++j, ++r) {
      const auto& v = rows[r];
      std::cout << sampler << ',' << cases[i].a.rows() << ',' << num(v.t) << ',' << num(v.tail.frequency()) << ','
                << num(v.bound) << ',' << trials << ',' << v.id << ',' << num(cal.c_hat) << ','
                << (v.holds ? 1 : 0) << "\n";
      ok = ok && v.holds;
    }
  std::cerr << sampler << ": K = " << k << ", fitted c = " << cal.c_hat << ", validation "
            << (ok ? "holds" : "FAILS") << "\n";
  return 0;
}

// conc tails
int run_tails(const std::string& kind, const std::string& sampler, const std::string& matrix, const std::string& levels,
              const std::string& degrees, const std::string& function, std::size_t trials, std::uint64_t seed,
              double k, double c, int workers) {
  auto s = SubGaussianSampler::from_name(sampler);
  std::cout << kConcHeader << "\n";
  if (kind == "quadratic") {
    Eigen::MatrixXd a = parse_matrix(matrix);
    auto ts = parse_doubles(levels, "levels");
    if (ts.empty()) throw config_error("--levels is empty");
    auto tails = empirical_quadratic_tails(s, a, ts, trials, seed, workers);
    for (std::size_t j = 0; j < ts.size(); ++j)
      std::cout << sampler << ',' << a.rows() << ',' << num(ts[j]) << ',' << num(tails[j].frequency()) << ','
                << num(hw_bound(make_concentration_problem(a, k, c, ts[j]))) << ',' << trials << "\n";
  } else if (kind == "norm") {
    for (int n : parse_ints(degrees, "degrees")) {
      auto onb = make_orthonormal_basis(n, Weight::fubini_study());
      auto r = norm_tail_experiment(onb, s, trials, seed, workers);
      std::cout << sampler << ',' << n << ',' << r.dimension << ',' << num(r.tail.frequency()) << ',' << num(r.bound)
                << ',' << trials << "\n";
    }
  } else if (kind == "toeplitz") {
    auto eps = parse_doubles(levels, "levels");
    if (eps.empty()) throw config_error("--levels is empty");
    const Weight w = Weight::fubini_study();
    for (int n : parse_ints(degrees, "degrees")) {
      auto onb = make_orthonormal_basis(n, w);
      auto t = toeplitz_matrix(onb, test_function_by_id(function, w));
      for (double e : eps) {
        auto r = toeplitz_concentration_experiment(onb, t, s, e, trials, seed, k, c, workers);
        std::cout << sampler << ',' << n << ',' << num(e) << ',' << num(r.tail.frequency()) << ',' << num(r.bound)
                  << ',' << trials << "\n";
      }
    }
  } else {
    throw config_error("--kind must be quadratic, norm or toeplitz");
  }
  return 0;
}

// conc orlicz
int run_orlicz(const std::string& sampler, int p_max, std::size_t trials, std::uint64_t seed) {
  auto s = SubGaussianSampler::from_name(sampler);
  auto e = orlicz_norm_estimate(s, p_max, trials, seed);
  std::cout << "sampler,p,estimate,trials\n";
  for (int p = 1; p <= p_max; ++p)
    std::cout << sampler << ',' << p << ',' << num(e.by_p[p - 1]) << ',' << trials << "\n";
  std::cout << sampler << ",sup," << num(e.value) << ',' << trials << "\n";
  if (e.unresolved) std::cerr << "warning: " << e.warning << "\n";
  return 0;
}

// ensemble gram
int run_gram(const WeightArgs& wa, int n, int order, const std::string& method, const std::string& out) {
  OrthoMethod m;
  if (method == "cholesky") m = OrthoMethod::cholesky;
  else if (method == "eigen") m = OrthoMethod::eigen;
  else throw config_error("--method must be cholesky or eigen");
  std::shared_ptr<const QuadratureRule> rule;
  if (order > 0) rule = std::make_shared<const QuadratureRule>(build_quadrature(order));
  auto onb = make_orthonormal_basis(n, wa.make(), rule, m);
  if (out.empty() || out == "-") {
    write_gram(std::cout, onb);
  } else {
    std::ofstream f(out);
    if (!f) throw config_error("cannot write '" + out + "'");
    write_gram(f, onb);
  }
  std::cerr << "degree " << n << ", dimension " << onb.dimension() << ", condition " << onb.condition << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random real sections of O(n) on P^2: Monte Carlo, certified topology, spectral and "
               "concentration experiments"};
  app.set_version_flag("--version", std::string(HARNACK_VERSION));
  app.require_subcommand(1);
  int rc = 0;

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo experiments");
  mc->require_subcommand(1);
  auto* maximal = mc->add_subcommand("maximal", "estimate Prob(M_a^n) per degree; writes run.json, table.csv, "
                                                "config.echo into output_dir (table.csv also on stdout)");
  std::string config_path;
  bool force = false, no_resume = false;
  int workers = 0;
  maximal->add_option("--config", config_path, "key = value config file")->required();
  maximal->add_flag("--force", force, "overwrite an existing run directory");
  maximal->add_option("--workers", workers, "threads (overrides the config; results do not depend on it)")
      ->check(CLI::PositiveNumber);
  maximal->add_flag("--no-resume", no_resume, "ignore per-degree checkpoints from an interrupted run");
  maximal->callback([&] { rc = run_mc(config_path, force, workers, !no_resume); });

  // topology
  auto* topo = app.add_subcommand("topology", "certified curve topology");
  topo->require_subcommand(1);
  auto* count = topo->add_subcommand("count", "certified b0 of the real zero curve of a ternary form; CSV columns "
                                              "degree,b0,certified,genus,harnack_bound,max_depth,unresolved_cells,"
                                              "leaves,sphere_components,pseudolines,min_gradient[,oracle_b0,"
                                              "oracle_match]");
  std::string coef_path;
  int max_depth = 14, nlat = 2048;
  bool oracle = false;
  count->add_option("coefficients", coef_path, "file with lines 'a b c value' for value x^a y^b z^c")->required();
  count->add_option("--max-depth", max_depth, "subdivision depth limit (4..20)")->capture_default_str();
  count->add_flag("--oracle", oracle, "also run the dense-grid flood-fill oracle");
  count->add_option("--nlat", nlat, "oracle latitude rows")->capture_default_str();
  count->callback([&] { rc = run_topology(coef_path, max_depth, oracle, nlat); });

  // spectral
  auto* spec = app.add_subcommand("spectral", "Bergman, Toeplitz and envelope tables (CSV n,id,value,reference,"
                                              "residual)");
  spec->require_subcommand(1);
  WeightArgs bw, tw, ew;
  std::string bdeg = "1,2,3,4,5,6", tdeg = "1,2,3,4,5,6", points, functions;
  int border = 0;
  auto* berg = spec->add_subcommand("bergman", "integral of k_n against d_n (id 'integral' at the rule order and "
                                               "'integral@<order>' at the doubled order), and k_n/d_n at --points "
                                               "against the curvature density relative to Fubini-Study");
  add_weight_options(berg, bw);
  berg->add_option("--degrees", bdeg, "comma list")->capture_default_str();
  berg->add_option("--order", border, "quadrature order (0 = 2n + 8)");
  berg->add_option("--points", points, "real points x:y:z;x:y:z");
  berg->callback([&] { rc = run_bergman(bw, bdeg, border, points); });

  auto* toep = spec->add_subcommand("toeplitz", "per test function: '<phi>:trace' Tr T vs integral of phi k_n, "
                                                "'<phi>:opnorm' ||T|| vs sup|phi|, '<phi>:hs2/d' ||T||_HS^2 / d_n");
  add_weight_options(toep, tw);
  toep->add_option("--degrees", tdeg, "comma list")->capture_default_str();
  toep->add_option("--functions", functions, "comma list of const:<c>, coord-x, coord-y, coord-z, bump "
                                             "(default: const:1,coord-x,bump)");
  toep->callback([&] { rc = run_toeplitz(tw, tdeg, functions); });

  auto* envl = spec->add_subcommand("envelope", "toric slice envelope: n = node index, id = t, value = envelope, "
                                                "reference = profile, class = contact-positive | contact-only | "
                                                "outside");
  ew.kind = "toric-radial";
  ew.params = "0.3,0,0.5";
  double t_lo = -4, t_hi = 4, s_lo = 0, s_hi = 1;
  int env_points = 161;
  add_weight_options(envl, ew);
  envl->add_option("--tmin", t_lo)->capture_default_str();
  envl->add_option("--tmax", t_hi)->capture_default_str();
  envl->add_option("--points", env_points)->capture_default_str();
  envl->add_option("--slope-lo", s_lo, "boundary slope, in [0,1]")->capture_default_str();
  envl->add_option("--slope-hi", s_hi, "boundary slope, in [0,1]")->capture_default_str();
  envl->callback([&] { rc = run_envelope(ew, t_lo, t_hi, env_points, s_lo, s_hi); });

  // conc
  auto* conc = app.add_subcommand("conc", "concentration experiments (CSV sampler,size,level,frequency,bound,"
                                          "trials)");
  conc->require_subcommand(1);
  std::string sampler = "gaussian", kind = "quadratic", matrix = "identity:2", levels = "1,2,4", cdeg = "1,2,3,4",
              function = "const:1";
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  double kk = 1.0, cc = 1.0;
  int p_max = 12, cworkers = 1;
  auto* hw = conc->add_subcommand("hw", "fit c on one seed, check the frozen bound on the next; extra columns "
                                        "case,c,holds");
  hw->add_option("--sampler", sampler)->capture_default_str();
  hw->add_option("--trials", trials)->capture_default_str();
  hw->add_option("--seed", seed)->capture_default_str();
  hw->add_option("--workers", cworkers)->check(CLI::PositiveNumber);
  hw->callback([&] { rc = run_hw(sampler, trials, seed, cworkers); });

  auto* tails = conc->add_subcommand("tails", "quadratic: |X^T A X - Tr A| > t (size N); norm: ||s||_n > d_n "
                                              "(size n, level d_n); toeplitz: |(s^T T s - Tr T)/d_n| > eps "
                                              "(size n)");
  tails->add_option("--kind", kind, "quadratic | norm | toeplitz")->capture_default_str();
  tails->add_option("--sampler", sampler)->capture_default_str();
  tails->add_option("--matrix", matrix, "identity:N | diag:a,b,... | ones:N")->capture_default_str();
  tails->add_option("--levels", levels, "t values (quadratic) or eps values (toeplitz)")->capture_default_str();
  tails->add_option("--degrees", cdeg)->capture_default_str();
  tails->add_option("--function", function, "test function for --kind toeplitz")->capture_default_str();
  tails->add_option("--trials", trials)->capture_default_str();
  tails->add_option("--seed", seed)->capture_default_str();
  tails->add_option("--K", kk, "psi_2 bound used in the displayed bound")->capture_default_str();
  tails->add_option("--c", cc, "constant used in the displayed bound")->capture_default_str();
  tails->add_option("--workers", cworkers)->check(CLI::PositiveNumber);
  tails->callback(
      [&] { rc = run_tails(kind, sampler, matrix, levels, cdeg, function, trials, seed, kk, cc, cworkers); });

  auto* orl = conc->add_subcommand("orlicz", "p^-1/2 (E|X|^p)^1/p for p = 1..p_max and their max");
  orl->add_option("--sampler", sampler)->capture_default_str();
  orl->add_option("--p-max", p_max)->capture_default_str();
  orl->add_option("--trials", trials)->capture_default_str();
  orl->add_option("--seed", seed)->capture_default_str();
  orl->callback([&] { rc = run_orlicz(sampler, p_max, trials, seed); });

  // ensemble
  auto* ens = app.add_subcommand("ensemble", "orthonormal bases");
  ens->require_subcommand(1);
  auto* gram = ens->add_subcommand("gram", "export the Gram matrix and change of basis (harnack-gram v1 text)");
  WeightArgs gw;
  int gdeg = 2, gorder = 0;
  std::string method = "cholesky", out;
  add_weight_options(gram, gw);
  gram->add_option("--degree", gdeg)->capture_default_str();
  gram->add_option("--order", gorder, "quadrature order (0 = 2n + 8)");
  gram->add_option("--method", method, "cholesky | eigen")->capture_default_str();
  gram->add_option("--out", out, "output file (default stdout)");
  gram->callback([&] { rc = run_gram(gw, gdeg, gorder, method, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const certification_error& e) {
    std::cerr << "certification error: " << e.what() << "\n";
    return kExitCertification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
