// vodmesh command-line front end.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 validation failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vodmesh/vodmesh.hpp"

namespace {

using namespace vodmesh;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "key=value configuration file");
  cmd->add_option("--set", c.overrides, "override one key, e.g. --set seed=7 (repeatable)");
}

SimConfig load_config(const Common& c) {
  std::string text;
  if (!c.config_path.empty()) {
    std::ifstream f(c.config_path, std::ios::binary);
    if (!f) throw InvalidConfig("cannot read config file " + c.config_path);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  return parse_config(text, c.overrides);
}

void print_value(const std::string& label, double v) { std::cout << label << " " << format_sig6(v) << "\n"; }

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(detail::parse_number<double>(item));
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

std::vector<int> parse_sizes(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(detail::parse_number<int>(item));
  if (out.empty()) throw InvalidArgument("empty size list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multitier hybrid P2P video-on-demand simulator and analytic models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // analytic
  auto* analytic_cmd = app.add_subcommand("analytic", "evaluate a closed-form model");
  analytic_cmd->require_subcommand(1);

  double load = 0, rho = 0, p0 = 0, c1 = 0, lambda = 0.5, p = 1, disk = 120000, playback = 600;
  int ports = 0, level = 0, n = 0, k = 0, threshold = 200;
  std::string xs;

  auto* erlang = analytic_cmd->add_subcommand("erlang", "Erlang-B blocking probability");
  erlang->add_option("--load", load, "offered load in Erlangs")->required();
  erlang->add_option("--ports", ports, "number of ports")->required();

  auto* capacity = analytic_cmd->add_subcommand("capacity", "streaming capacity left at a tier level");
  capacity->add_option("--p0", p0, "archive streaming capacity P(0)")->required();
  capacity->add_option("--c1", c1, "level-1 sharing capacity")->required();
  capacity->add_option("--lambda", lambda, "share fraction in (0, 1)")->required();
  capacity->add_option("--level", level, "level l >= 0")->required();

  auto* active = analytic_cmd->add_subcommand("active-peers", "probability more than k of n peers are active");
  active->add_option("--n", n, "peer count")->required();
  active->add_option("--k", k, "threshold")->required();
  active->add_option("--rho", rho, "activity probability")->required();

  auto* khint = analytic_cmd->add_subcommand("khintchine", "Rademacher moment and Khintchine bounds");
  khint->add_option("--x", xs, "comma-separated values")->required();
  khint->add_option("--p", p, "moment order >= 1");

  auto* admission = analytic_cmd->add_subcommand("admission", "concurrent stream limit");
  admission->add_option("--disk", disk, "disk bandwidth in kbps");
  admission->add_option("--playback", playback, "playback rate in kbps");
  admission->add_option("--threshold", threshold, "configured threshold");

  // topology
  Common topo_common;
  std::string topo_format = "dot", topo_out;
  auto* topology = app.add_subcommand("topology", "build the hybrid topology and export it");
  add_common(topology, topo_common);
  topology->add_option("--format", topo_format, "dot or json");
  topology->add_option("--out", topo_out, "output file (default stdout)");

  // search
  Common search_common;
  unsigned asset = 0, index = 0, proxy = 0;
  auto* search = app.add_subcommand("search", "run one heuristic search from a proxy");
  add_common(search, search_common);
  search->add_option("--asset", asset, "asset id");
  search->add_option("--index", index, "chunk index within the asset");
  search->add_option("--proxy", proxy, "proxy ordinal");

  // run
  Common run_common;
  std::string run_out = "out";
  auto* run_cmd = app.add_subcommand("run", "simulate and write CSV outputs");
  add_common(run_cmd, run_common);
  run_cmd->add_option("--out", run_out, "output directory");

  // sweep
  Common sweep_common;
  std::string sweep_out = "out", sweep_sizes = "1,2,3,4,5,6";
  int sweep_trials = 0;
  auto* sweep = app.add_subcommand("sweep", "hop-count histograms across adjacency sizes");
  add_common(sweep, sweep_common);
  sweep->add_option("--sizes", sweep_sizes, "comma-separated adjacency sizes");
  sweep->add_option("--trials", sweep_trials, "searches per size (default: sweep_trials)");
  sweep->add_option("--out", sweep_out, "output directory");

  // validate
  Common val_common;
  std::string val_out = "out";
  double tolerance = 0.10;
  auto* validate_cmd = app.add_subcommand("validate", "compare simulation against the analytic models");
  add_common(validate_cmd, val_common);
  validate_cmd->add_option("--tolerance", tolerance, "relative tolerance for stochastic rows");
  validate_cmd->add_option("--out", val_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*analytic_cmd) {
      if (*erlang) print_value("blocking", analytic::erlang_b(load, ports));
      if (*capacity) {
        analytic::TierCapacityParams tp;
        tp.archive_streaming = p0;
        tp.level1_sharing = c1;
        tp.share_fraction = lambda;
        tp.levels = level;
        print_value("capacity", analytic::tier_capacity_closed(tp));
      }
      if (*active) print_value("probability", analytic::active_peer_tail(n, k, rho));
      if (*khint) {
        const auto x = parse_list(xs);
        const auto b = analytic::khintchine_bounds(x, p);
        print_value("moment", analytic::rademacher_moment(x, p));
        print_value("lower", b.lower);
        print_value("upper", b.upper);
        print_value("norm2", analytic::p_norm(x, 2.0));
      }
      if (*admission) {
        analytic::AdmissionPolicy policy{disk, threshold};
        print_value("limit", analytic::admission_limit(policy, playback));
      }
      return 0;
    }

    if (*topology) {
      const SimConfig c = load_config(topo_common);
      const World w = build_world(c);
      const std::string text = export_topology(w.topology, parse_topology_format(topo_format), w.clusters.clusters);
      if (topo_out.empty())
        std::cout << text;
      else
        write_text_file(topo_out, text);
      return 0;
    }

    if (*search) {
      const SimConfig c = load_config(search_common);
      const World w = build_world(c);
      const auto proxies = w.topology.proxies();
      if (proxy >= proxies.size()) throw InvalidArgument("proxy ordinal out of range");
      Rng rng = make_rng(c.seed, 0x736561);
      const Adjacency adj = sample_adjacency(w.topology, c.adjacency_size, rng);
      const auto outcome = heuristic_path_search(w.view(adj), {{asset, index}, proxies[proxy]},
                                                 {0.0, c.session_window}, c.query_latency);
      if (const auto* f = std::get_if<Found>(&outcome)) {
        std::cout << "found hops=" << f->hop_count << " source=" << f->source << " elapsed=" << format_real(f->elapsed)
                  << " path=";
        for (std::size_t i = 0; i < f->path.size(); ++i) std::cout << (i ? "," : "") << f->path[i];
        std::cout << "\n";
      } else {
        std::cout << "not_found elapsed=" << format_real(std::get<NotFound>(outcome).elapsed) << "\n";
      }
      return 0;
    }

    if (*run_cmd) {
      RunManifest m{"run", load_config(run_common), std::chrono::system_clock::now(), {}, {}};
      const auto r = run(m.config);
      ensure_output_dir(run_out);
      write_outputs(run_out, m,
                    {{"requests.csv", requests_csv(r)},
                     {"throughput.csv", throughput_csv(r)},
                     {"blocking.csv", blocking_csv(r)},
                     {"hops.csv", hops_csv(r.hops)}});
      const auto t = r.totals();
      std::cout << "arrivals " << t.arrivals << "\nblocked " << t.blocked << "\nsearches " << r.searches
                << "\nthroughput_per_viewer_kbps " << format_sig6(r.throughput_per_viewer_kbps()) << "\n";
      return 0;
    }

    if (*sweep) {
      RunManifest m{"sweep", load_config(sweep_common), std::chrono::system_clock::now(), {}, {}};
      const int trials = sweep_trials > 0 ? sweep_trials : m.config.sweep_trials;
      const auto sizes = parse_sizes(sweep_sizes);
      const World w = build_world(m.config);
      const auto result = sweep_adjacency(w, sizes, trials);
      m.extra["trials"] = trials;
      m.extra["sizes"] = sizes;
      write_outputs(sweep_out, m,
                    {{"hops.csv", hops_csv(sweep_histogram(result))}, {"hops_summary.csv", hops_summary_csv(result)}});
      for (const auto& s : result)
        std::cout << "size " << s.adjacency_size << " mean_hops " << format_sig6(s.mean_hops) << " variance "
                  << format_sig6(s.variance_hops) << "\n";
      return 0;
    }

    if (*validate_cmd) {
      if (!(tolerance >= 0.0)) throw InvalidArgument("tolerance must be >= 0");
      RunManifest m{"validate", load_config(val_common), std::chrono::system_clock::now(), {}, {}};
      const auto rows = validate_all(m.config, {tolerance});
      m.extra["tolerance"] = tolerance;
      write_outputs(val_out, m, {{"validation.csv", validation_csv(rows)}});
      for (const auto& r : rows)
        std::cout << r.quantity << " analytic=" << format_sig6(r.analytic) << " measured=" << format_sig6(r.measured)
                  << " deviation=" << format_sig6(r.deviation) << " " << to_string(r.status) << "\n";
      return all_pass(rows) ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
