#pragma once

// Deterministic discrete-event simulation of the proxy/peer/archive system:
// Poisson requests per service class, admission over partitioned proxy ports,
// LRFU cache hits streamed directly, misses located with the heuristic search
// and pulled up the tiers store-and-forward.
//
// A run is single-threaded over one event queue. Independent random streams
// (arrivals, admission, holding, content choice, adjacency) are all derived
// from the configured seed, so (config, seed) fixes every output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <variant>
#include <vector>

#include "vodmesh/analytic.hpp"
#include "vodmesh/content.hpp"
#include "vodmesh/errors.hpp"
#include "vodmesh/path_search.hpp"
#include "vodmesh/rng.hpp"
#include "vodmesh/sim_config.hpp"
#include "vodmesh/topology.hpp"

namespace vodmesh {

// ---------------------------------------------------------------------------
// Events
// ---------------------------------------------------------------------------

enum class EventKind { RequestArrival, PortRelease, SearchComplete, TransferComplete, SessionEnd };

struct Event {
  double time = 0.0;
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::RequestArrival;
  std::uint32_t session = 0;
};

// Min-heap on (time, insertion sequence).
class EventQueue {
 public:
  void push(double time, EventKind kind, std::uint32_t session = 0) {
    heap_.push({time, next_sequence_++, kind, session});
  }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  Event pop() {
    Event e = heap_.top();
    heap_.pop();
    return e;
  }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.time != b.time ? a.time > b.time : a.sequence > b.sequence;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_sequence_ = 0;
};

// ---------------------------------------------------------------------------
// Workload
// ---------------------------------------------------------------------------

struct Arrival {
  double time = 0.0;
  int service_class = 0;
};

// Independent Poisson streams, one per class, merged in time order. Arrivals
// fall in [0, horizon).
inline std::vector<Arrival> generate_arrivals(std::span<const double> rates, double horizon, Rng& rng) {
  if (!(horizon > 0.0)) throw InvalidConfig("arrival horizon must be > 0");
  for (double r : rates)
    if (!(r >= 0.0)) throw InvalidConfig("arrival rates must be >= 0");
  std::vector<Arrival> out;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates[i] == 0.0) continue;
    std::exponential_distribution<double> gap(rates[i]);
    for (double t = gap(rng); t < horizon; t += gap(rng)) out.push_back({t, static_cast<int>(i)});
  }
  std::sort(out.begin(), out.end(), [](const Arrival& a, const Arrival& b) {
    return a.time != b.time ? a.time < b.time : a.service_class < b.service_class;
  });
  return out;
}

// Asset popularity ~ 1 / rank^s.
class ZipfPicker {
 public:
  ZipfPicker(int items, double exponent) {
    std::vector<double> w;
    for (int r = 1; r <= items; ++r) w.push_back(1.0 / std::pow(r, exponent));
    dist_ = std::discrete_distribution<int>(w.begin(), w.end());
  }
  int operator()(Rng& rng) { return dist_(rng); }

 private:
  std::discrete_distribution<int> dist_;
};

// ---------------------------------------------------------------------------
// World: the immutable part of a run
// ---------------------------------------------------------------------------

struct World {
  SimConfig config;
  Topology topology;
  Catalog catalog;
  PlacementMap placement;
  ClusterMap clusters;

  SearchView view(const Adjacency& adj) const { return {topology, adj, clusters, placement}; }
};

inline World build_world(const SimConfig& c) {
  validate(c);
  World w;
  w.config = c;
  w.topology = build_hybrid(hybrid_config(c));
  w.catalog = make_catalog(c.asset_count, c.asset_duration, c.frame_rate, c.gop_length, c.avg_bitrate_kbps);
  w.placement = c.placement == PlacementProfile::Uniform
                    ? place_initial(w.catalog, w.topology, c.share_fraction, c.seed)
                    : place_tiered(w.catalog, w.topology, c.level1_fraction, c.share_fraction, c.seed);
  w.clusters = form_all_clusters(w.topology, w.placement.counts());
  return w;
}

// ---------------------------------------------------------------------------
// Proxy admission
// ---------------------------------------------------------------------------

struct ProxyState {
  NodeId node = 0;
  int viewers = 0;
  analytic::ProxyPortPlan ports;
  ProxyCache cache;
  analytic::AdmissionPolicy policy;
};

struct AdmissionResult {
  std::optional<int> partition;  // set when admitted
  int first_probe = 0;           // partitions probed: first_probe, +1, ... (mod k)
  int probes = 0;                // 0 when the admission threshold refused outright
};

// Sequential search over partitions starting at a uniformly random one; the
// first partition with a free port takes the request.
inline AdmissionResult admit_request(ProxyState& proxy, int service_class, double playback_kbps, Rng& rng) {
  AdmissionResult r;
  const int k = proxy.ports.partition_count();
  if (proxy.ports.busy_ports() >= analytic::admission_limit(proxy.policy, playback_kbps)) return r;
  r.first_probe = std::uniform_int_distribution<int>(0, k - 1)(rng);
  for (int i = 0; i < k; ++i) {
    const int j = (r.first_probe + i) % k;
    ++r.probes;
    if (proxy.ports.has_free_port(j)) {
      proxy.ports.occupy(service_class, j);
      r.partition = j;
      return r;
    }
  }
  return r;
}

// Store-and-forward: Σ size / capacity + hops * propagation.
inline double transfer_time(double chunk_kbit, std::span<const double> link_kbps, double propagation_delay) {
  double t = 0.0;
  for (double c : link_kbps) {
    if (!(c > 0.0)) throw InvalidTopology("zero-capacity link on transfer path");
    t += chunk_kbit / c + propagation_delay;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

struct ClassMetrics {
  std::uint64_t arrivals = 0;
  std::uint64_t admitted = 0;
  std::uint64_t blocked = 0;
  std::uint64_t failed_content = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;

  bool operator==(const ClassMetrics&) const = default;
};

struct PartitionMetrics {
  std::uint64_t probes = 0;
  std::uint64_t full = 0;

  double blocking() const { return probes ? static_cast<double>(full) / static_cast<double>(probes) : 0.0; }
  bool operator==(const PartitionMetrics&) const = default;
};

struct ThroughputSample {
  double time = 0.0;  // bucket start
  double kbps = 0.0;
  int cluster_size = 0;

  bool operator==(const ThroughputSample&) const = default;
};

// Hop histogram keyed by adjacency size, then hop count. Bucket 0 counts
// searches that ended NotFound.
using HopHistogram = std::map<int, std::map<int, std::uint64_t>>;

struct MetricsReport {
  std::vector<ClassMetrics> classes;
  std::vector<std::vector<PartitionMetrics>> partitions;  // [class][partition]
  HopHistogram hops;
  std::vector<std::pair<double, std::uint64_t>> cumulative_requests;
  std::vector<ThroughputSample> throughput;
  std::vector<double> level_volume_kbit;  // received per level
  std::vector<double> level_source_kbit;  // served from each level
  std::uint64_t searches = 0;
  double delivered_kbit = 0.0;
  int total_viewers = 0;
  double sim_time = 0.0;
  double elapsed_wall_s = 0.0;

  ClassMetrics totals() const {
    ClassMetrics t;
    for (const auto& c : classes) {
      t.arrivals += c.arrivals;
      t.admitted += c.admitted;
      t.blocked += c.blocked;
      t.failed_content += c.failed_content;
      t.cache_hits += c.cache_hits;
      t.cache_misses += c.cache_misses;
    }
    return t;
  }

  double blocking_probability() const {
    const auto t = totals();
    return t.arrivals ? static_cast<double>(t.blocked) / static_cast<double>(t.arrivals) : 0.0;
  }

  double throughput_per_viewer_kbps() const {
    return total_viewers > 0 ? delivered_kbit / (sim_time * total_viewers) : 0.0;
  }

  std::uint64_t histogram_mass() const {
    std::uint64_t n = 0;
    for (const auto& [size, h] : hops)
      for (const auto& [hop, count] : h) n += count;
    return n;
  }

  // Everything but wall-clock time.
  bool same_measurements(const MetricsReport& o) const {
    return classes == o.classes && partitions == o.partitions && hops == o.hops &&
           cumulative_requests == o.cumulative_requests && throughput == o.throughput &&
           level_volume_kbit == o.level_volume_kbit &&
           level_source_kbit == o.level_source_kbit && searches == o.searches &&
           delivered_kbit == o.delivered_kbit && total_viewers == o.total_viewers && sim_time == o.sim_time;
  }
};

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

namespace detail {

enum Stream : std::uint64_t {
  kArrivalStream = 0x10,
  kViewerStream = 0x11,
  kAdmissionStream = 0x12,
  kHoldingStream = 0x13,
  kContentStream = 0x14,
  kAdjacencyStream = 0x15,
  kSweepStream = 0x100,
};

class Simulation {
 public:
  explicit Simulation(const World& world) : w_(world), c_(world.config) {
    report_.sim_time = c_.sim_time;
    report_.classes.resize(c_.class_rates.size());
    report_.partitions.assign(c_.class_rates.size(), std::vector<PartitionMetrics>(
                                                         static_cast<std::size_t>(c_.partition_count)));
    report_.level_volume_kbit.assign(static_cast<std::size_t>(c_.levels), 0.0);
    report_.level_source_kbit.assign(static_cast<std::size_t>(c_.levels), 0.0);

    Rng viewer_rng = make_rng(c_.seed, kViewerStream);
    std::uniform_int_distribution<int> viewers(c_.viewers_min, c_.viewers_max);
    for (NodeId p : w_.topology.proxies()) {
      ProxyState s;
      s.node = p;
      s.viewers = viewers(viewer_rng);
      s.ports = analytic::ProxyPortPlan(c_.partition_count, c_.ports_per_partition,
                                        static_cast<int>(c_.class_rates.size()));
      s.cache = ProxyCache(static_cast<std::size_t>(c_.cache_capacity), c_.cache_half_life);
      s.policy = {c_.disk_bandwidth_kbps, c_.admission_threshold};
      report_.total_viewers += s.viewers;
      proxies_.push_back(std::move(s));
    }
    for (const auto& p : proxies_) cluster_sizes_.push_back(p.viewers);
    std::sort(cluster_sizes_.begin(), cluster_sizes_.end());
    cluster_sizes_.erase(std::unique(cluster_sizes_.begin(), cluster_sizes_.end()), cluster_sizes_.end());
    buckets_ = static_cast<std::size_t>(std::ceil(c_.sim_time / c_.throughput_bucket - 1e-9));
    bucket_kbit_.assign(buckets_ * cluster_sizes_.size(), 0.0);
  }

  MetricsReport run() {
    const auto wall_start = std::chrono::steady_clock::now();
    schedule_arrivals();
    queue_.push(c_.sim_time, EventKind::SessionEnd);
    while (!queue_.empty()) {
      const Event e = queue_.pop();
      if (e.kind == EventKind::SessionEnd) {
        finish(e.time);
        break;
      }
      switch (e.kind) {
        case EventKind::RequestArrival: on_arrival(e); break;
        case EventKind::PortRelease: on_release(e); break;
        case EventKind::SearchComplete: on_search_complete(e); break;
        case EventKind::TransferComplete: on_transfer_complete(e); break;
        case EventKind::SessionEnd: break;
      }
    }
    emit_throughput();
    report_.elapsed_wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return std::move(report_);
  }

 private:
  struct Session {
    int proxy = 0;
    int service_class = 0;
    int partition = -1;
    ChunkKey chunk;
    double ready_at = -1.0;
    bool released = false;
    std::optional<Found> found;
  };

  void schedule_arrivals() {
    // Each proxy gets its own Poisson streams; sessions are numbered in the
    // merged time order so the event queue sees a stable insertion order.
    struct Tagged {
      Arrival a;
      int proxy;
    };
    std::vector<Tagged> all;
    for (std::size_t p = 0; p < proxies_.size(); ++p) {
      Rng rng = make_rng(c_.seed, kArrivalStream + 0x1000 * (p + 1));
      std::vector<double> rates;
      for (double r : c_.class_rates) rates.push_back(r * proxies_[p].viewers);
      for (const auto& a : generate_arrivals(rates, c_.sim_time, rng)) all.push_back({a, static_cast<int>(p)});
    }
    std::stable_sort(all.begin(), all.end(), [](const Tagged& x, const Tagged& y) { return x.a.time < y.a.time; });
    sessions_.reserve(all.size());
    for (const auto& t : all) {
      Session s;
      s.proxy = t.proxy;
      s.service_class = t.a.service_class;
      sessions_.push_back(s);
      queue_.push(t.a.time, EventKind::RequestArrival, static_cast<std::uint32_t>(sessions_.size() - 1));
    }
  }

  double stream_kbps() const { return std::min(c_.playback_kbps, c_.viewer_link_kbps); }

  ChunkKey pick_chunk(int service_class) {
    const auto asset = static_cast<std::uint32_t>(zipf_(content_rng_));
    if (service_class == 0) return {asset, 0};
    std::uniform_int_distribution<std::uint32_t> offset(0, static_cast<std::uint32_t>(w_.catalog.chunk_count(asset) - 1));
    return {asset, offset(content_rng_)};
  }

  void on_arrival(const Event& e) {
    Session& s = sessions_[e.session];
    ProxyState& proxy = proxies_[static_cast<std::size_t>(s.proxy)];
    auto& cls = report_.classes[static_cast<std::size_t>(s.service_class)];
    ++cls.arrivals;
    ++arrivals_;
    report_.cumulative_requests.emplace_back(e.time, arrivals_);

    const auto r = admit_request(proxy, s.service_class, c_.playback_kbps, admission_rng_);
    auto& parts = report_.partitions[static_cast<std::size_t>(s.service_class)];
    for (int i = 0; i < r.probes; ++i) {
      auto& pm = parts[static_cast<std::size_t>((r.first_probe + i) % c_.partition_count)];
      ++pm.probes;
      if (!r.partition || i + 1 < r.probes) ++pm.full;
    }
    if (!r.partition) {
      ++cls.blocked;
      return;
    }
    ++cls.admitted;
    s.partition = *r.partition;

    const double hold = c_.holding == HoldingMode::Fixed ? c_.port_access_time : holding_(holding_rng_);
    if (e.time + hold < c_.sim_time) queue_.push(e.time + hold, EventKind::PortRelease, e.session);

    s.chunk = pick_chunk(s.service_class);
    if (proxy.cache.lookup(s.chunk, e.time)) {
      ++cls.cache_hits;
      s.ready_at = e.time;
      return;
    }
    ++cls.cache_misses;
    ++report_.searches;
    const Adjacency adj = sample_adjacency(w_.topology, c_.adjacency_size, adjacency_rng_);
    const auto outcome = heuristic_path_search(w_.view(adj), {s.chunk, proxy.node}, {e.time, c_.session_window},
                                               c_.query_latency);
    auto& hist = report_.hops[c_.adjacency_size];
    if (const auto* f = std::get_if<Found>(&outcome)) {
      ++hist[f->hop_count];
      s.found = *f;
      schedule(e.time + f->elapsed, EventKind::SearchComplete, e.session);
    } else {
      ++hist[0];
      ++cls.failed_content;
      schedule(e.time + std::get<NotFound>(outcome).elapsed, EventKind::SearchComplete, e.session);
    }
  }

  void on_search_complete(const Event& e) {
    Session& s = sessions_[e.session];
    if (!s.found) {
      release(s);
      return;
    }
    const auto links = transfer_links(w_.topology, proxies_[static_cast<std::size_t>(s.proxy)].node, *s.found,
                                      c_.intermediate_link_kbps);
    const double size = w_.catalog.chunk(s.chunk).size_kbit;
    schedule(e.time + transfer_time(size, links, c_.propagation_delay), EventKind::TransferComplete, e.session);
  }

  void on_transfer_complete(const Event& e) {
    Session& s = sessions_[e.session];
    ProxyState& proxy = proxies_[static_cast<std::size_t>(s.proxy)];
    proxy.cache.admit(s.chunk, e.time);
    const double size = w_.catalog.chunk(s.chunk).size_kbit;
    // Every node after the source on the way up receives the chunk once.
    const auto& path = s.found->path;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      report_.level_volume_kbit[static_cast<std::size_t>(w_.topology.node(path[i]).level)] += size;
    report_.level_volume_kbit[static_cast<std::size_t>(w_.topology.top_level())] += size;
    report_.level_source_kbit[static_cast<std::size_t>(w_.topology.node(s.found->source).level)] += size;
    if (!s.released) s.ready_at = e.time;
  }

  void on_release(const Event& e) {
    Session& s = sessions_[e.session];
    if (s.released) return;
    if (s.ready_at >= 0.0) credit(s, s.ready_at, e.time);
    release(s);
  }

  void release(Session& s) {
    if (s.released) return;
    proxies_[static_cast<std::size_t>(s.proxy)].ports.release(s.service_class, s.partition);
    s.released = true;
  }

  void finish(double now) {
    for (auto& s : sessions_)
      if (s.partition >= 0 && !s.released && s.ready_at >= 0.0) credit(s, s.ready_at, now);
  }

  void schedule(double t, EventKind kind, std::uint32_t session) {
    if (t < c_.sim_time) queue_.push(t, kind, session);
  }

  void credit(const Session& s, double from, double to) {
    if (!(to > from)) return;
    const double rate = stream_kbps();
    report_.delivered_kbit += rate * (to - from);
    const auto size_idx = static_cast<std::size_t>(
        std::lower_bound(cluster_sizes_.begin(), cluster_sizes_.end(),
                         proxies_[static_cast<std::size_t>(s.proxy)].viewers) -
        cluster_sizes_.begin());
    const double w = c_.throughput_bucket;
    auto b = static_cast<std::size_t>(from / w);
    for (; b < buckets_; ++b) {
      const double lo = std::max(from, b * w);
      const double hi = std::min(to, (b + 1) * w);
      if (hi <= lo) break;
      bucket_kbit_[b * cluster_sizes_.size() + size_idx] += rate * (hi - lo);
    }
  }

  void emit_throughput() {
    if (arrivals_ == 0) return;
    for (std::size_t b = 0; b < buckets_; ++b)
      for (std::size_t i = 0; i < cluster_sizes_.size(); ++i)
        report_.throughput.push_back({static_cast<double>(b) * c_.throughput_bucket,
                                      bucket_kbit_[b * cluster_sizes_.size() + i] / c_.throughput_bucket,
                                      cluster_sizes_[i]});
  }

  const World& w_;
  const SimConfig& c_;
  MetricsReport report_;
  EventQueue queue_;
  std::vector<ProxyState> proxies_;
  std::vector<Session> sessions_;
  std::vector<int> cluster_sizes_;
  std::size_t buckets_ = 0;
  std::vector<double> bucket_kbit_;
  std::uint64_t arrivals_ = 0;

  Rng admission_rng_ = make_rng(c_.seed, kAdmissionStream);
  Rng holding_rng_ = make_rng(c_.seed, kHoldingStream);
  Rng content_rng_ = make_rng(c_.seed, kContentStream);
  Rng adjacency_rng_ = make_rng(c_.seed, kAdjacencyStream);
  std::exponential_distribution<double> holding_{1.0 / c_.port_access_time};
  ZipfPicker zipf_{c_.asset_count, c_.popularity_exponent};
};

}  // namespace detail

inline MetricsReport run(const World& world) { return detail::Simulation(world).run(); }

inline MetricsReport run(const SimConfig& config) {
  validate(config);
  const World world = build_world(config);
  return run(world);
}

// ---------------------------------------------------------------------------
// Adjacency sweep
// ---------------------------------------------------------------------------

struct SweepSize {
  int adjacency_size = 0;
  std::map<int, std::uint64_t> histogram;  // hop -> count, 0 = NotFound
  std::uint64_t trials = 0;
  std::uint64_t found = 0;
  double mean_hops = 0.0;      // over Found outcomes
  double variance_hops = 0.0;  // population variance over Found outcomes

  bool operator==(const SweepSize&) const = default;
};

inline SweepSize sweep_one_size(const World& world, int size, int trials) {
  if (size < kMinAdjacency || size > kMaxAdjacency) throw InvalidArgument("adjacency size must lie in [1, 6]");
  const auto& c = world.config;
  Rng rng = make_rng(c.seed, detail::kSweepStream + static_cast<std::uint64_t>(size));
  ZipfPicker zipf(c.asset_count, c.popularity_exponent);
  const auto proxies = world.topology.proxies();
  std::uniform_int_distribution<std::size_t> pick_proxy(0, proxies.size() - 1);

  SweepSize out;
  out.adjacency_size = size;
  double sum = 0.0, sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Adjacency adj = sample_adjacency(world.topology, size, rng);
    const NodeId origin = proxies[pick_proxy(rng)];
    const auto asset = static_cast<std::uint32_t>(zipf(rng));
    std::uniform_int_distribution<std::uint32_t> offset(0, static_cast<std::uint32_t>(world.catalog.chunk_count(asset) - 1));
    const ChunkKey chunk{asset, offset(rng)};
    const auto outcome = heuristic_path_search(world.view(adj), {chunk, origin}, {0.0, c.session_window}, c.query_latency);
    ++out.trials;
    if (const auto* f = std::get_if<Found>(&outcome)) {
      ++out.histogram[f->hop_count];
      ++out.found;
      sum += f->hop_count;
      sum_sq += static_cast<double>(f->hop_count) * f->hop_count;
    } else {
      ++out.histogram[0];
    }
  }
  if (out.found) {
    out.mean_hops = sum / static_cast<double>(out.found);
    out.variance_hops = std::max(0.0, sum_sq / static_cast<double>(out.found) - out.mean_hops * out.mean_hops);
  }
  return out;
}

// Sizes run concurrently; each has its own derived random stream, so the
// result does not depend on scheduling.
inline std::vector<SweepSize> sweep_adjacency(const World& world, const std::vector<int>& sizes, int trials) {
  if (trials < 1) throw InvalidArgument("sweep needs at least one trial");
  for (int s : sizes)
    if (s < kMinAdjacency || s > kMaxAdjacency) throw InvalidArgument("adjacency sizes must lie in [1, 6]");
  std::vector<std::future<SweepSize>> jobs;
  for (int s : sizes) jobs.push_back(std::async(std::launch::async, sweep_one_size, std::cref(world), s, trials));
  std::vector<SweepSize> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

// Bursty start: ~200 cumulative requests by t = 0.36 s across all proxies.
inline SimConfig burst_preset() {
  SimConfig c;
  c.viewers_min = c.viewers_max = 30;
  c.sim_time = 1.0;
  const double total_rate = 200.0 / 0.36;
  const double per_viewer = total_rate / (c.proxy_count * c.viewers_min);
  c.class_rates = {per_viewer / 2.0, per_viewer / 2.0};
  return c;
}

// Single class, one partition, exponential holding: an M/M/C/C loss system
// at `load` Erlangs with enough horizon for ~`arrivals` requests. Content is
// placed densely so failed searches (which free ports early) are negligible.
inline SimConfig erlang_calibration(const SimConfig& base, double load, int arrivals) {
  SimConfig c = base;
  c.partition_count = 1;
  c.proxy_count = 1;
  c.viewers_min = c.viewers_max = 1;
  c.holding = HoldingMode::Exponential;
  const double rate = load / c.port_access_time;
  c.class_rates = {rate};
  c.sim_time = 1.05 * arrivals / rate;
  c.admission_threshold = std::max(c.admission_threshold, c.ports_per_partition);
  c.disk_bandwidth_kbps = std::max(c.disk_bandwidth_kbps, c.playback_kbps * c.ports_per_partition);
  c.placement = PlacementProfile::Uniform;
  c.share_fraction = 0.9;
  c.adjacency_size = kMaxAdjacency;
  return c;
}

}  // namespace vodmesh
