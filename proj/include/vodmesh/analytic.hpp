#pragma once

// Closed-form blocking, tier-capacity and active-peer models for the hybrid
// P2P/mesh VoD architecture. Everything here is a pure function.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vodmesh/errors.hpp"

namespace vodmesh::analytic {

// ---------------------------------------------------------------------------
// Proxy-side types
// ---------------------------------------------------------------------------

// One class of viewer requests offered to a proxy.
struct ServiceClass {
  double arrival_rate = 0.0;   // requests / s
  double holding_time = 120.0; // s a port stays occupied
  double playback_kbps = 600.0;
};

inline void check(const ServiceClass& c) {
  if (!(c.arrival_rate >= 0.0)) throw InvalidArgument("service class: arrival rate must be >= 0");
  if (!(c.holding_time > 0.0)) throw InvalidArgument("service class: holding time must be > 0");
  if (!(c.playback_kbps > 0.0)) throw InvalidArgument("service class: playback rate must be > 0");
}

// Disk-bandwidth admission control: at most min(floor(R_d / R_p), eta)
// concurrent streams.
struct AdmissionPolicy {
  double disk_bandwidth_kbps = 120000.0;
  int threshold = 200;
};

// Partitioned proxy ports. `class_occupancy[i][j]` is the number of ports of
// partition j held by class i.
class ProxyPortPlan {
 public:
  ProxyPortPlan() = default;
  ProxyPortPlan(int partitions, int ports_per_partition, int classes)
      : capacity_(static_cast<std::size_t>(partitions), ports_per_partition),
        occupancy_(static_cast<std::size_t>(partitions), 0),
        class_occupancy_(static_cast<std::size_t>(classes),
                         std::vector<int>(static_cast<std::size_t>(partitions), 0)) {
    if (partitions < 1) throw InvalidArgument("port plan: need at least one partition");
    if (ports_per_partition < 1) throw InvalidArgument("port plan: partition capacity must be >= 1");
    if (classes < 1) throw InvalidArgument("port plan: need at least one class");
    total_ports_ = partitions * ports_per_partition;
  }

  int total_ports() const { return total_ports_; }
  int partition_count() const { return static_cast<int>(capacity_.size()); }
  int class_count() const { return static_cast<int>(class_occupancy_.size()); }
  int capacity(int j) const { return capacity_.at(static_cast<std::size_t>(j)); }
  int occupancy(int j) const { return occupancy_.at(static_cast<std::size_t>(j)); }
  int class_occupancy(int cls, int j) const {
    return class_occupancy_.at(static_cast<std::size_t>(cls)).at(static_cast<std::size_t>(j));
  }
  bool has_free_port(int j) const { return occupancy(j) < capacity(j); }
  int busy_ports() const { return std::accumulate(occupancy_.begin(), occupancy_.end(), 0); }

  // Guarded increment; throws instead of exceeding C_j.
  void occupy(int cls, int j) {
    if (!has_free_port(j)) throw InvalidArgument("port plan: partition " + std::to_string(j) + " is full");
    ++occupancy_[static_cast<std::size_t>(j)];
    ++class_occupancy_.at(static_cast<std::size_t>(cls))[static_cast<std::size_t>(j)];
  }

  void release(int cls, int j) {
    auto& q = class_occupancy_.at(static_cast<std::size_t>(cls)).at(static_cast<std::size_t>(j));
    if (q == 0) throw InvalidArgument("port plan: release without matching occupy");
    --q;
    --occupancy_[static_cast<std::size_t>(j)];
  }

  // Σ C_j <= C, 0 <= Q_j <= C_j, Q_j = Σ_i Q_i^j.
  bool invariants_hold() const {
    if (std::accumulate(capacity_.begin(), capacity_.end(), 0) > total_ports_) return false;
    for (std::size_t j = 0; j < capacity_.size(); ++j) {
      if (occupancy_[j] < 0 || occupancy_[j] > capacity_[j]) return false;
      int sum = 0;
      for (const auto& row : class_occupancy_) sum += row[j];
      if (sum != occupancy_[j]) return false;
    }
    return true;
  }

 private:
  int total_ports_ = 0;
  std::vector<int> capacity_;
  std::vector<int> occupancy_;
  std::vector<std::vector<int>> class_occupancy_;
};

// ---------------------------------------------------------------------------
// Blocking approximations
// ---------------------------------------------------------------------------

inline int admission_limit(const AdmissionPolicy& policy, double playback_kbps) {
  if (!(playback_kbps > 0.0)) throw InvalidArgument("admission_limit: playback rate must be > 0");
  if (!(policy.disk_bandwidth_kbps > 0.0)) throw InvalidArgument("admission_limit: disk bandwidth must be > 0");
  if (policy.threshold < 1) throw InvalidArgument("admission_limit: threshold must be >= 1");
  const double ratio = std::floor(policy.disk_bandwidth_kbps / playback_kbps);
  return static_cast<int>(std::min<double>(ratio, policy.threshold));
}

// E_n = (1/T_n) Σ λ_i h_i, in Erlangs.
inline double offered_load(std::span<const ServiceClass> classes, double busy_horizon) {
  if (!(busy_horizon > 0.0)) throw InvalidArgument("offered_load: busy horizon must be > 0");
  double sum = 0.0;
  for (const auto& c : classes) {
    check(c);
    sum += c.arrival_rate * c.holding_time;
  }
  return sum / busy_horizon;
}

// Erlang-B via B(0) = 1, B(c) = E B(c-1) / (c + E B(c-1)).
inline double erlang_b(double load, int ports) {
  if (!(load >= 0.0)) throw InvalidArgument("erlang_b: offered load must be >= 0");
  if (ports < 0) throw InvalidArgument("erlang_b: port count must be >= 0");
  double b = 1.0;
  for (int c = 1; c <= ports; ++c) b = load * b / (c + load * b);
  return b;
}

// Probability that the sequential partition search first succeeds at
// partition j: (1 - 1/k)^(j-1) (1/k) (C_j - Q_j) / C_j.
inline double free_port_discovery_prob(int partition_index, int partition_count, int capacity,
                                       int occupancy) {
  if (partition_index < 1) throw InvalidArgument("free_port_discovery_prob: j must be >= 1");
  if (partition_count < 1) throw InvalidArgument("free_port_discovery_prob: k must be >= 1");
  if (capacity < 1) throw InvalidArgument("free_port_discovery_prob: C_j must be >= 1");
  if (occupancy < 0 || occupancy > capacity)
    throw InvalidArgument("free_port_discovery_prob: occupancy must lie in [0, C_j]");
  const double inv_k = 1.0 / partition_count;
  return std::pow(1.0 - inv_k, partition_index - 1) * inv_k *
         (static_cast<double>(capacity - occupancy) / capacity);
}

// Product of per-partition Erlang-B terms.
inline double multi_partition_blocking(std::span<const double> loads, std::span<const int> capacities) {
  if (loads.size() != capacities.size())
    throw InvalidArgument("multi_partition_blocking: loads and capacities differ in length");
  double p = 1.0;
  for (std::size_t m = 0; m < loads.size(); ++m) p *= erlang_b(loads[m], capacities[m]);
  return p;
}

// ---------------------------------------------------------------------------
// Tier capacity
// ---------------------------------------------------------------------------

// Capacities are in full-stream equivalents; multiply by the average bitrate
// for kbps.
struct TierCapacityParams {
  double archive_streaming = 0.0;  // P(0)
  double level1_sharing = 0.0;     // C_1 = N(1)
  double share_fraction = 0.5;     // λ
  int levels = 0;                  // l
  double equivalent_capacity_kbps = 0.0;  // ψ
};

inline void check(const TierCapacityParams& p) {
  if (!(p.share_fraction > 0.0 && p.share_fraction < 1.0))
    throw InvalidArgument("tier capacity: share fraction must lie in (0, 1)");
  if (!(p.archive_streaming >= 0.0)) throw InvalidArgument("tier capacity: P(0) must be >= 0");
  if (!(p.level1_sharing >= 0.0)) throw InvalidArgument("tier capacity: C_1 must be >= 0");
  if (p.levels < 0) throw InvalidArgument("tier capacity: level must be >= 0");
}

// N(l) = λ^(l-1) C_1
inline double level_sharing_capacity(double level1_sharing, double share_fraction, int level) {
  if (level < 1) throw InvalidArgument("level_sharing_capacity: level must be >= 1");
  if (!(share_fraction > 0.0 && share_fraction < 1.0))
    throw InvalidArgument("level_sharing_capacity: share fraction must lie in (0, 1)");
  return std::pow(share_fraction, level - 1) * level1_sharing;
}

// P(l) = P(l-1) - N(l), N(l) = λ N(l-1).
inline double tier_capacity_iterative(const TierCapacityParams& p) {
  check(p);
  double capacity = p.archive_streaming;
  double sharing = p.level1_sharing;
  for (int l = 1; l <= p.levels; ++l) {
    capacity -= sharing;
    sharing *= p.share_fraction;
  }
  return capacity;
}

// P(l) = P(0) - C_1 (1 - λ^l) / (1 - λ)
inline double tier_capacity_closed(const TierCapacityParams& p) {
  check(p);
  const double lam = p.share_fraction;
  return p.archive_streaming - p.level1_sharing * (1.0 - std::pow(lam, p.levels)) / (1.0 - lam);
}

// ---------------------------------------------------------------------------
// Active peers
// ---------------------------------------------------------------------------

struct ActivePeerLevel {
  int peer_count = 1;      // N_l
  int threshold = 0;       // k^l
  double activity_prob = 0.0;  // ρ
};

// P(more than k^l of N peers active) = Σ_{k=k^l+1}^{N} C(N,k) ρ^k (1-ρ)^(N-k).
inline double active_peer_tail(int peer_count, int threshold, double activity_prob) {
  if (peer_count < 0) throw InvalidArgument("active_peer_tail: N must be >= 0");
  if (threshold < 0 || threshold > peer_count)
    throw InvalidArgument("active_peer_tail: threshold must lie in [0, N]");
  if (!(activity_prob >= 0.0 && activity_prob <= 1.0))
    throw InvalidArgument("active_peer_tail: activity probability must lie in [0, 1]");
  if (activity_prob == 0.0) return 0.0;
  if (activity_prob == 1.0) return threshold < peer_count ? 1.0 : 0.0;

  const double log_p = std::log(activity_prob);
  const double log_q = std::log1p(-activity_prob);
  const double log_n_fact = std::lgamma(peer_count + 1.0);
  double tail = 0.0;
  for (int k = threshold + 1; k <= peer_count; ++k) {
    const double log_term = log_n_fact - std::lgamma(k + 1.0) - std::lgamma(peer_count - k + 1.0) +
                            k * log_p + (peer_count - k) * log_q;
    tail += std::exp(log_term);
  }
  return std::clamp(tail, 0.0, 1.0);
}

inline double multilevel_active_product(std::span<const ActivePeerLevel> levels) {
  if (levels.empty()) throw InvalidArgument("multilevel_active_product: need at least one level");
  if (std::any_of(levels.begin(), levels.end(), [](const ActivePeerLevel& l) { return l.peer_count < 1; }))
    throw InvalidArgument("multilevel_active_product: peer count must be >= 1");
  double p = 1.0;
  for (const auto& l : levels) p *= active_peer_tail(l.peer_count, l.threshold, l.activity_prob);
  return p;
}

// ---------------------------------------------------------------------------
// Transfer-rate bounds
// ---------------------------------------------------------------------------

inline constexpr std::size_t kMaxEnumeratedSigns = 20;

inline double p_norm(std::span<const double> x, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("p_norm: p must be >= 1");
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : x) sum += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(sum, 1.0 / p);
}

namespace detail {

// Enumerates all 2^n sign vectors; the sign of x_0 is pinned to + since
// |Σ ε_i x_i| is invariant under a global flip.
template <typename Fn>
void for_each_signed_sum(std::span<const double> x, Fn&& fn) {
  if (x.size() > kMaxEnumeratedSigns)
    throw SizeLimitError("sign enumeration is capped at " + std::to_string(kMaxEnumeratedSigns) +
                         " terms");
  if (x.empty()) {
    fn(0.0L);
    return;
  }
  const std::size_t free_bits = x.size() - 1;
  const std::uint64_t count = std::uint64_t{1} << free_bits;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    long double sum = x[0];
    for (std::size_t i = 0; i < free_bits; ++i)
      sum += ((mask >> i) & 1U) ? -static_cast<long double>(x[i + 1]) : static_cast<long double>(x[i + 1]);
    fn(sum);
  }
}

}  // namespace detail

// (E |Σ ε_i x_i|^p)^(1/p) over independent Rademacher signs, by enumeration.
inline double rademacher_moment(std::span<const double> x, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("rademacher_moment: p must be >= 1");
  long double acc = 0.0L;
  std::uint64_t n = 0;
  detail::for_each_signed_sum(x, [&](long double s) {
    acc += std::pow(std::abs(s), static_cast<long double>(p));
    ++n;
  });
  return static_cast<double>(std::pow(acc / n, 1.0L / p));
}

// E |Σ ε_i x_i|, by enumeration.
inline double rademacher_mean_abs(std::span<const double> x) { return rademacher_moment(x, 1.0); }

// E Σ z_i x_i for independent fair {0,1} link indicators z_i.
inline double bernoulli_mean_sum(std::span<const double> x) {
  return 0.5 * std::accumulate(x.begin(), x.end(), 0.0);
}

struct KhintchineConstants {
  double lower = 0.0;  // c_p
  double upper = 0.0;  // C_p*
};

// Sharp Khintchine constants for Rademacher sums (Haagerup).
inline KhintchineConstants khintchine_constants(double p) {
  if (!(p >= 1.0)) throw InvalidArgument("khintchine_constants: p must be >= 1");
  const double gamma_term =
      std::sqrt(2.0) * std::pow(std::tgamma((p + 1.0) / 2.0) / std::sqrt(M_PI), 1.0 / p);
  KhintchineConstants k;
  if (p < 2.0) {
    k.lower = std::min(std::pow(2.0, 0.5 - 1.0 / p), gamma_term);
    k.upper = 1.0;
  } else if (p == 2.0) {
    k.lower = k.upper = 1.0;
  } else {
    k.lower = 1.0;
    k.upper = gamma_term;
  }
  return k;
}

struct KhintchineBounds {
  double lower = 0.0;
  double upper = 0.0;
};

inline KhintchineBounds khintchine_bounds(std::span<const double> x, double p) {
  const auto k = khintchine_constants(p);
  const double norm = p_norm(x, 2.0);
  return {k.lower * norm, k.upper * norm};
}

// Max Σ E(X_i) <= ψ
inline bool aggregate_transfer_feasible(std::span<const double> means_kbps, double equivalent_capacity_kbps) {
  const double total = std::accumulate(means_kbps.begin(), means_kbps.end(), 0.0);
  return total <= equivalent_capacity_kbps;
}

}  // namespace vodmesh::analytic
