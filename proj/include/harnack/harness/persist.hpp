#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "harnack/error.hpp"
#include "harnack/harness/config.hpp"
#include "harnack/harness/monte_carlo.hpp"
#include "json.hpp"

namespace harnack {

namespace fs = std::filesystem;

inline const char* kTableHeader =
    "n,trials,certified,discarded,discard_rate,mean_b0,max_b0,genus,threshold,"
    "freq_member,member_lo,member_hi,freq_member_pessimistic,pessimistic_lo,pessimistic_hi,"
    "freq_maximal,maximal_lo,maximal_hi,aborted";

/// Per-degree CSV, LF line ends, 17 significant digits.  Holds no timing, so
/// equal records give byte-identical tables.
inline std::string table_csv(const RunRecord& rec) {
  std::string out = std::string(kTableHeader) + "\n";
  auto f = [](double v) { return detail::format_double(v); };
  for (const auto& r : rec.rows) {
    auto m = r.member_interval(), p = r.pessimistic_interval(), x = r.maximal_interval();
    out += std::to_string(r.n) + ',' + std::to_string(r.trials) + ',' + std::to_string(r.certified) + ',' +
           std::to_string(r.discarded) + ',' + f(r.discard_rate()) + ',' + f(r.mean_b0()) + ',' +
           std::to_string(r.max_b0) + ',' + std::to_string(r.genus) + ',' + f(r.threshold) + ',' +
           f(r.freq_member()) + ',' + f(m.lo) + ',' + f(m.hi) + ',' + f(r.freq_member_pessimistic()) + ',' +
           f(p.lo) + ',' + f(p.hi) + ',' + f(r.freq_maximal()) + ',' + f(x.lo) + ',' + f(x.hi) + ',' +
           (r.aborted ? "1" : "0") + '\n';
  }
  return out;
}

inline nlohmann::json row_to_json(const DegreeRow& r) {
  nlohmann::json h = nlohmann::json::object();
  for (const auto& [b0, k] : r.histogram) h[std::to_string(b0)] = k;
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  return {{"n", r.n},
          {"trials", r.trials},
          {"certified", r.certified},
          {"discarded", r.discarded},
          {"b0_sum", r.b0_sum},
          {"max_b0", r.max_b0},
          {"genus", r.genus},
          {"threshold", r.threshold},
          {"members", r.members},
          {"maximal", r.maximal},
          {"histogram", h},
          {"aborted", r.aborted},
          {"mean_b0", num(r.mean_b0())},
          {"freq_member", num(r.freq_member())},
          {"member_interval", {r.member_interval().lo, r.member_interval().hi}},
          {"freq_member_pessimistic", num(r.freq_member_pessimistic())},
          {"freq_maximal", num(r.freq_maximal())}};
}

inline DegreeRow row_from_json(const nlohmann::json& j) {
  DegreeRow r;
  try {
    r.n = j.at("n").get<int>();
    r.trials = j.at("trials").get<std::uint64_t>();
    r.certified = j.at("certified").get<std::uint64_t>();
    r.discarded = j.at("discarded").get<std::uint64_t>();
    r.b0_sum = j.at("b0_sum").get<std::uint64_t>();
    r.max_b0 = j.at("max_b0").get<int>();
    r.genus = j.at("genus").get<int>();
    r.threshold = j.at("threshold").get<double>();
    r.members = j.at("members").get<std::uint64_t>();
    r.maximal = j.at("maximal").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("histogram").items()) r.histogram[std::stoi(k)] = v.get<std::uint64_t>();
    r.aborted = j.at("aborted").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("malformed degree row: ") + e.what());
  }
  if (r.certified + r.discarded != r.trials) throw config_error("degree row: certified + discarded != trials");
  return r;
}

inline nlohmann::json record_to_json(const RunRecord& rec) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rec.rows) rows.push_back(row_to_json(r));
  return {{"format", "harnack-run 1"},
          {"version", rec.version},
          {"config", to_text(rec.config)},
          {"rows", rows},
          {"wall_time_seconds", rec.wall_time}};
}

inline RunRecord record_from_json(const nlohmann::json& j) {
  RunRecord rec;
  try {
    if (j.at("format").get<std::string>() != "harnack-run 1") throw config_error("not a harnack-run 1 record");
    rec.version = j.at("version").get<std::string>();
    rec.config = parse_config(j.at("config").get<std::string>());
    for (const auto& r : j.at("rows")) rec.rows.push_back(row_from_json(r));
    rec.wall_time = j.at("wall_time_seconds").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("malformed run record: ") + e.what());
  }
  return rec;
}

namespace detail {
inline void write_file(const fs::path& p, const std::string& body) {
  std::ofstream f(p, std::ios::binary);
  f << body;
  f.close();
  if (!f) throw std::runtime_error("cannot write " + p.string());
}

inline std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw config_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}
}  // namespace detail

/// Writes run.json, table.csv and config.echo into `dir` atomically: the files
/// go to a sibling temporary directory that is renamed into place.  The parent
/// of `dir` must exist; an existing `dir` is replaced only with `force`.
inline std::vector<fs::path> persist_run(const RunRecord& rec, const fs::path& dir, bool force = false) {
  fs::path target = dir.lexically_normal();
  if (target.filename().empty()) target = target.parent_path();
  fs::path parent = target.parent_path().empty() ? fs::path(".") : target.parent_path();
  if (!fs::is_directory(parent)) throw config_error("output directory's parent '" + parent.string() + "' does not exist");
  if (fs::exists(target) && !force)
    throw config_error("run directory '" + target.string() + "' exists; use --force to overwrite");

  std::random_device rd;
  fs::path tmp = parent / (target.filename().string() + ".tmp-" + std::to_string(rd()));
  fs::create_directory(tmp);
  try {
    detail::write_file(tmp / "run.json", record_to_json(rec).dump(2) + "\n");
    detail::write_file(tmp / "table.csv", table_csv(rec));
    detail::write_file(tmp / "config.echo", to_text(rec.config));
    if (fs::exists(target)) fs::remove_all(target);
    fs::rename(tmp, target);
  } catch (...) {
    std::error_code ec;
    fs::remove_all(tmp, ec);
    throw;
  }
  return {target / "run.json", target / "table.csv", target / "config.echo"};
}

inline RunRecord load_run(const fs::path& dir) {
  auto j = nlohmann::json::parse(detail::read_file(dir / "run.json"), nullptr, false);
  if (j.is_discarded()) throw config_error("run.json is not valid JSON");
  RunRecord rec = record_from_json(j);
  if (parse_config(detail::read_file(dir / "config.echo")) != rec.config)
    throw config_error("config.echo does not match run.json");
  return rec;
}

/// Checkpoints in `<output_dir>.partial/degree-<n>.json`, each tagged with the
/// config text (worker count ignored); a file written for a different config
/// is ignored.
inline fs::path checkpoint_dir(const ExperimentConfig& cfg) {
  fs::path d = fs::path(cfg.output_dir).lexically_normal();
  if (d.filename().empty()) d = d.parent_path();
  return d.parent_path() / (d.filename().string() + ".partial");
}

inline Checkpointer make_checkpointer(const ExperimentConfig& cfg) {
  ExperimentConfig key = cfg;
  key.workers = 1;
  const std::string tag = to_text(key);
  const fs::path dir = checkpoint_dir(cfg);
  Checkpointer ck;
  ck.load = [dir, tag](int n, DegreeRow& row) {
    fs::path p = dir / ("degree-" + std::to_string(n) + ".json");
    if (!fs::exists(p)) return false;
    auto j = nlohmann::json::parse(detail::read_file(p), nullptr, false);
    if (j.is_discarded() || !j.contains("config") || j["config"] != tag || !j.contains("row")) return false;
    row = row_from_json(j["row"]);
    return row.n == n;
  };
  ck.save = [dir, tag](const DegreeRow& row) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) return;  // checkpoints are best effort
    fs::path p = dir / ("degree-" + std::to_string(row.n) + ".json");
    fs::path tmp = p;
    tmp += ".tmp";
    nlohmann::json j{{"config", tag}, {"row", row_to_json(row)}};
    detail::write_file(tmp, j.dump() + "\n");
    fs::rename(tmp, p, ec);
  };
  return ck;
}

inline void clear_checkpoints(const ExperimentConfig& cfg) {
  std::error_code ec;
  fs::remove_all(checkpoint_dir(cfg), ec);
}

}  // namespace harnack
