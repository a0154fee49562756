#pragma once

// CSV tables, the run manifest, and the analytic-vs-measured validation rows.
// Every number goes through format_real, so output bytes depend only on the
// values, never on the locale.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "vodmesh/analytic.hpp"
#include "vodmesh/config_io.hpp"
#include "vodmesh/engine.hpp"
#include "vodmesh/numfmt.hpp"
#include "vodmesh/path_search.hpp"

namespace vodmesh {

inline constexpr const char* kToolVersion = "0.1.0";

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// CSV tables
// ---------------------------------------------------------------------------

namespace detail {

inline std::string csv_row(std::initializer_list<std::string> cells) {
  std::string s;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) s += ',';
    s += c;
    first = false;
  }
  return s + "\n";
}

inline std::string u64(std::uint64_t v) { return std::to_string(v); }

}  // namespace detail

inline std::string requests_csv(const MetricsReport& r) {
  std::string out = "t,cumulative_requests\n";
  for (const auto& [t, n] : r.cumulative_requests) out += detail::csv_row({format_real(t), detail::u64(n)});
  return out;
}

inline std::string throughput_csv(const MetricsReport& r) {
  std::string out = "t,kbps,cluster_size\n";
  for (const auto& s : r.throughput)
    out += detail::csv_row({format_real(s.time), format_real(s.kbps), std::to_string(s.cluster_size)});
  return out;
}

// Partition 0 is the class-wide blocking probability; partitions 1..k give the
// fraction of probes that found that partition full.
inline std::string blocking_csv(const MetricsReport& r) {
  std::string out = "class,partition,measured\n";
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    const auto& m = r.classes[c];
    if (m.arrivals == 0) continue;
    out += detail::csv_row({std::to_string(c), "0",
                            format_real(static_cast<double>(m.blocked) / static_cast<double>(m.arrivals))});
    for (std::size_t j = 0; j < r.partitions[c].size(); ++j)
      out += detail::csv_row({std::to_string(c), std::to_string(j + 1), format_real(r.partitions[c][j].blocking())});
  }
  return out;
}

// hop_count 0 counts searches that ended NotFound.
inline std::string hops_csv(const HopHistogram& h) {
  std::string out = "adjacency_size,hop_count,frequency\n";
  for (const auto& [size, hist] : h)
    for (const auto& [hop, n] : hist)
      out += detail::csv_row({std::to_string(size), std::to_string(hop), detail::u64(n)});
  return out;
}

inline HopHistogram sweep_histogram(const std::vector<SweepSize>& sweep) {
  HopHistogram h;
  for (const auto& s : sweep) h[s.adjacency_size] = s.histogram;
  return h;
}

inline std::string hops_summary_csv(const std::vector<SweepSize>& sweep) {
  std::string out = "adjacency_size,trials,found,mean_hops,variance_hops\n";
  for (const auto& s : sweep)
    out += detail::csv_row({std::to_string(s.adjacency_size), detail::u64(s.trials), detail::u64(s.found),
                            format_real(s.mean_hops), format_real(s.variance_hops)});
  return out;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class RowStatus { Pass, Fail, Info };

inline const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Pass: return "pass";
    case RowStatus::Fail: return "fail";
    case RowStatus::Info: return "info";
  }
  return "?";
}

inline constexpr double kDeviationFloor = 1e-12;

struct ValidationRow {
  std::string quantity;
  double analytic = 0.0;
  double measured = 0.0;
  double deviation = 0.0;
  double tolerance = 0.0;
  RowStatus status = RowStatus::Info;
};

inline double relative_deviation(double analytic, double measured) {
  return std::abs(measured - analytic) / std::max(std::abs(analytic), kDeviationFloor);
}

// Info rows are reported but never fail the table.
inline ValidationRow make_row(std::string quantity, double analytic, double measured, double tolerance,
                              bool gated = true) {
  ValidationRow r{std::move(quantity), analytic, measured, relative_deviation(analytic, measured), tolerance,
                  RowStatus::Info};
  if (gated) r.status = r.deviation <= tolerance ? RowStatus::Pass : RowStatus::Fail;
  return r;
}

inline bool all_pass(const std::vector<ValidationRow>& rows) {
  for (const auto& r : rows)
    if (r.status == RowStatus::Fail) return false;
  return true;
}

inline std::string validation_csv(const std::vector<ValidationRow>& rows) {
  std::string out = "quantity,analytic,measured,deviation,tolerance,status\n";
  for (const auto& r : rows)
    out += detail::csv_row({r.quantity, format_real(r.analytic), format_real(r.measured), format_real(r.deviation),
                            format_real(r.tolerance), to_string(r.status)});
  return out;
}

struct ValidationOptions {
  double stochastic_tolerance = 0.10;
};

// (a) engine blocking in a single-partition loss system vs Erlang-B
inline ValidationRow validate_erlang(const SimConfig& config, const ValidationOptions& opt) {
  const SimConfig c = erlang_calibration(config, config.validate_erlang_load, config.validate_arrivals);
  const auto r = run(c);
  return make_row("erlang_blocking", analytic::erlang_b(c.validate_erlang_load, c.ports_per_partition),
                  r.blocking_probability(), opt.stochastic_tolerance);
}

// (b) tier capacity with P(0) = everything delivered to the proxies and
// C_1 = what the peer level just below them served, walking down toward the
// archive; the remainder is compared with what the archive actually served.
// All in stream equivalents. Reported, not gated.
inline ValidationRow validate_tier_volume(const SimConfig& config, const MetricsReport& r,
                                          const ValidationOptions& opt) {
  const double unit = config.avg_bitrate_kbps * config.sim_time;
  auto served = [&](int level) { return r.level_source_kbit[static_cast<std::size_t>(level)] / unit; };
  const int top = config.levels - 1;
  analytic::TierCapacityParams p;
  for (int l = 0; l < top; ++l) p.archive_streaming += served(l);
  p.level1_sharing = served(top - 1);
  p.share_fraction = config.share_fraction;
  p.levels = top - 1;
  return make_row("tier_archive_remainder", analytic::tier_capacity_closed(p), served(0), opt.stochastic_tolerance,
                  false);
}

// (c) fraction of random queries where the heuristic agrees with the oracle
inline ValidationRow validate_search_oracle(const World& world) {
  const auto& c = world.config;
  Rng rng = make_rng(c.seed, 0x6f7263);
  const auto proxies = world.topology.proxies();
  std::uniform_int_distribution<std::size_t> pick_proxy(0, proxies.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_chunk(0, world.catalog.total_chunks() - 1);
  const SessionWindow window{0.0, c.session_window};
  const int max_depth = detail::max_search_depth(window, c.query_latency);
  int agree = 0;
  for (int t = 0; t < c.validate_trials; ++t) {
    const Adjacency adj = sample_adjacency(world.topology, c.adjacency_size, rng);
    const NodeId origin = proxies[pick_proxy(rng)];
    const ChunkKey key = world.catalog.key(pick_chunk(rng));
    const auto view = world.view(adj);
    const auto outcome = heuristic_path_search(view, {key, origin}, window, c.query_latency);
    const auto oracle = bfs_distance_oracle(view, origin, world.placement.holders(key));
    const bool reachable = oracle && *oracle <= max_depth;
    if (const auto* f = std::get_if<Found>(&outcome))
      agree += reachable && f->hop_count == *oracle;
    else
      agree += !reachable;
  }
  return make_row("search_oracle_agreement", 1.0, static_cast<double>(agree) / c.validate_trials, 0.0);
}

// (d) enumerated E|Σ ε_i x_i| within the Khintchine bounds, x drawn from the
// topology's link capacities
inline ValidationRow validate_khintchine(const World& world) {
  const auto& c = world.config;
  Rng rng = make_rng(c.seed, 0x6b6869);
  const auto links = world.topology.links();
  std::uniform_int_distribution<std::size_t> pick_link(0, links.size() - 1);
  std::uniform_int_distribution<int> pick_n(1, 16);
  int inside = 0;
  for (int t = 0; t < c.validate_trials; ++t) {
    std::vector<double> x(static_cast<std::size_t>(pick_n(rng)));
    for (auto& v : x) v = links[pick_link(rng)].kbps;
    const double m = analytic::rademacher_mean_abs(x);
    const auto b = analytic::khintchine_bounds(x, 1.0);
    const double slack = 1e-12 * b.upper;
    inside += m >= b.lower - slack && m <= b.upper + slack;
  }
  return make_row("khintchine_containment", 1.0, static_cast<double>(inside) / c.validate_trials, 0.0);
}

inline std::vector<ValidationRow> validate_all(const SimConfig& config, const ValidationOptions& opt = {}) {
  const World world = build_world(config);
  const auto r = run(world);
  return {validate_erlang(config, opt), validate_tier_volume(config, r, opt), validate_search_oracle(world),
          validate_khintchine(world)};
}

// ---------------------------------------------------------------------------
// Manifest and file output
// ---------------------------------------------------------------------------

inline std::string utc_timestamp(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunManifest {
  std::string command;
  SimConfig config;
  std::chrono::system_clock::time_point started;
  std::chrono::system_clock::time_point finished;
  std::vector<std::string> outputs;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["tool"] = "vodmesh";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["seed"] = config.seed;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : config_items(config)) cfg[k] = v;
    j["config"] = cfg;
    j["started_at"] = utc_timestamp(started);
    j["finished_at"] = utc_timestamp(finished);
    j["outputs"] = outputs;
    for (const auto& [k, v] : extra.items()) j[k] = v;
    return j;
  }
};

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw OutputError("cannot write " + path.string());
  f << text;
  if (!f.flush()) throw OutputError("cannot write " + path.string());
}

inline void ensure_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw OutputError("cannot create output directory " + dir.string());
}

// Writes each (name, content) under `dir` and a manifest.json naming them.
inline void write_outputs(const std::filesystem::path& dir, RunManifest manifest,
                          const std::vector<std::pair<std::string, std::string>>& files) {
  ensure_output_dir(dir);
  for (const auto& [name, text] : files) {
    write_text_file(dir / name, text);
    manifest.outputs.push_back(name);
  }
  manifest.finished = std::chrono::system_clock::now();
  write_text_file(dir / "manifest.json", manifest.to_json().dump(2) + "\n");
}

}  // namespace vodmesh
