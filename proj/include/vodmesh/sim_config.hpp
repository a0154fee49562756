#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vodmesh/errors.hpp"
#include "vodmesh/topology.hpp"

namespace vodmesh {

enum class HoldingMode { Exponential, Fixed };
enum class PlacementProfile { Uniform, Tiered };

// Defaults reproduce the published simulation table; everything after the
// first block is a modelling parameter the table leaves open.
struct SimConfig {
  // Table values.
  int ports_per_partition = 10;
  int partition_count = 20;
  double port_access_time = 120.0;  // s
  int levels = 15;
  int peers_per_level = 4;
  double frame_rate = 30.0;
  int gop_length = 30;
  double link_min_kbps = 400.0;
  double link_max_kbps = 800.0;
  int viewers_min = 20;
  int viewers_max = 40;
  double sim_time = 480.0;  // s

  // Architecture.
  int proxy_count = 4;
  int archive_count = 1;
  int billing_count = 1;
  double storage_link_kbps = 800.0;
  double intermediate_link_kbps = 600.0;
  double viewer_link_kbps = 400.0;
  double link_jitter_kbps = 0.0;
  int adjacency_size = 3;

  // Workload. Rates are per viewer; a proxy with v viewers sees v * rate.
  std::vector<double> class_rates{0.05, 0.05};
  double playback_kbps = 600.0;
  HoldingMode holding = HoldingMode::Exponential;
  double popularity_exponent = 0.8;

  // Content.
  int asset_count = 20;
  double asset_duration = 300.0;  // s
  double avg_bitrate_kbps = 600.0;
  PlacementProfile placement = PlacementProfile::Tiered;
  double share_fraction = 0.7;
  double level1_fraction = 0.9;
  int cache_capacity = 120;  // chunks
  double cache_half_life = 60.0;

  // Admission control.
  double disk_bandwidth_kbps = 120000.0;
  int admission_threshold = 200;

  // Timing.
  double query_latency = 0.010;
  double propagation_delay = 0.010;
  double session_window = 1.0;
  double throughput_bucket = 1.0;

  // Experiment sizes.
  int sweep_trials = 10000;
  double validate_erlang_load = 5.0;
  int validate_arrivals = 50000;
  int validate_trials = 1000;

  std::uint64_t seed = 1;

  bool operator==(const SimConfig&) const = default;
};

inline void validate(const SimConfig& c) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw InvalidConfig(what);
  };
  require(c.ports_per_partition >= 1, "ports_per_partition must be >= 1");
  require(c.partition_count >= 1, "partition_count must be >= 1");
  require(c.port_access_time > 0.0, "port_access_time must be > 0");
  require(c.levels >= 3, "levels must be >= 3");
  require(c.peers_per_level >= 1 && c.peers_per_level <= 63, "peers_per_level must lie in [1, 63]");
  require(c.frame_rate > 0.0, "frame_rate must be > 0");
  require(c.gop_length >= 1, "gop_length must be >= 1");
  require(c.link_min_kbps > 0.0 && c.link_min_kbps <= c.link_max_kbps, "link range must satisfy 0 < min <= max");
  for (double v : {c.storage_link_kbps, c.intermediate_link_kbps, c.viewer_link_kbps})
    require(v >= c.link_min_kbps && v <= c.link_max_kbps, "link capacities must lie in [link_min_kbps, link_max_kbps]");
  require(c.link_jitter_kbps >= 0.0, "link_jitter_kbps must be >= 0");
  require(c.viewers_min >= 1 && c.viewers_min <= c.viewers_max, "viewer range must satisfy 1 <= min <= max");
  require(c.sim_time > 0.0, "sim_time must be > 0");
  require(c.proxy_count >= 1, "proxy_count must be >= 1");
  require(c.archive_count >= 1, "archive_count must be >= 1");
  require(c.billing_count >= 0, "billing_count must be >= 0");
  require(c.adjacency_size >= kMinAdjacency && c.adjacency_size <= kMaxAdjacency, "adjacency_size must lie in [1, 6]");
  require(!c.class_rates.empty(), "class_rates needs at least one class");
  for (double r : c.class_rates) require(r >= 0.0, "class rates must be >= 0");
  require(c.playback_kbps > 0.0, "playback_kbps must be > 0");
  require(c.popularity_exponent >= 0.0, "popularity_exponent must be >= 0");
  require(c.asset_count >= 1, "asset_count must be >= 1");
  require(c.asset_duration > 0.0, "asset_duration must be > 0");
  require(c.avg_bitrate_kbps > 0.0, "avg_bitrate_kbps must be > 0");
  require(c.share_fraction > 0.0 && c.share_fraction < 1.0, "share_fraction must lie in (0, 1)");
  require(c.level1_fraction > 0.0 && c.level1_fraction <= 1.0, "level1_fraction must lie in (0, 1]");
  require(c.cache_capacity >= 1, "cache_capacity must be >= 1");
  require(c.cache_half_life > 0.0, "cache_half_life must be > 0");
  require(c.disk_bandwidth_kbps > 0.0, "disk_bandwidth_kbps must be > 0");
  require(c.admission_threshold >= 1, "admission_threshold must be >= 1");
  require(c.query_latency > 0.0, "query_latency must be > 0");
  require(c.propagation_delay >= 0.0, "propagation_delay must be >= 0");
  require(c.session_window > 0.0, "session_window must be > 0");
  require(c.throughput_bucket > 0.0, "throughput_bucket must be > 0");
  require(c.sweep_trials >= 1, "sweep_trials must be >= 1");
  require(c.validate_erlang_load > 0.0, "validate_erlang_load must be > 0");
  require(c.validate_arrivals >= 1, "validate_arrivals must be >= 1");
  require(c.validate_trials >= 1, "validate_trials must be >= 1");
}

inline HybridConfig hybrid_config(const SimConfig& c) {
  HybridConfig h;
  h.levels = c.levels;
  h.peers_per_level = c.peers_per_level;
  h.proxy_count = c.proxy_count;
  h.archive_count = c.archive_count;
  h.billing_count = c.billing_count;
  h.capacities.storage_kbps = c.storage_link_kbps;
  h.capacities.intermediate_kbps = c.intermediate_link_kbps;
  h.capacities.viewer_kbps = c.viewer_link_kbps;
  h.capacities.jitter_kbps = c.link_jitter_kbps;
  h.seed = c.seed;
  return h;
}

}  // namespace vodmesh
