#pragma once

// Leveled hybrid architecture: archive storage at level 0, peer tiers in
// between, proxy servers on the top level.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "vodmesh/errors.hpp"
#include "vodmesh/rng.hpp"

namespace vodmesh {

using NodeId = std::uint32_t;

enum class NodeKind { ArchiveStorage, Peer, ProxyServer, BillingServer, ViewerCluster };
enum class LinkKind { UnicastDown, ForwardUp, IntraLevel };

inline constexpr int kDownSlots = 4;
inline constexpr int kUpSlots = 3;
inline constexpr int kIntraSlots = 3;
inline constexpr int kPeerSlots = kDownSlots + kUpSlots + kIntraSlots;
inline constexpr int kMinAdjacency = 1;
inline constexpr int kMaxAdjacency = 6;
inline constexpr double kMinLinkKbps = 400.0;
inline constexpr double kMaxLinkKbps = 800.0;

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::ArchiveStorage: return "archive";
    case NodeKind::Peer: return "peer";
    case NodeKind::ProxyServer: return "proxy";
    case NodeKind::BillingServer: return "billing";
    case NodeKind::ViewerCluster: return "viewer";
  }
  return "?";
}

inline const char* to_string(LinkKind k) {
  switch (k) {
    case LinkKind::UnicastDown: return "down";
    case LinkKind::ForwardUp: return "up";
    case LinkKind::IntraLevel: return "intra";
  }
  return "?";
}

// A wired link role owned by a node. Whether the slot is currently in the
// node's adjacency list is tracked by Adjacency, not here.
struct LinkSlot {
  LinkKind kind = LinkKind::IntraLevel;
  std::optional<NodeId> endpoint;
  double capacity_kbps = 600.0;

  bool operator==(const LinkSlot&) const = default;
};

struct Node {
  NodeId id = 0;
  NodeKind kind = NodeKind::Peer;
  int level = 0;
  std::vector<LinkSlot> slots;

  bool operator==(const Node&) const = default;
};

struct Link {
  NodeId from = 0;
  NodeId to = 0;
  LinkKind kind = LinkKind::IntraLevel;
  double kbps = 0.0;
};

// Average capacities: storage side 800, intermediate 600, viewer side 400.
struct LinkCapacityPolicy {
  double storage_kbps = 800.0;
  double intermediate_kbps = 600.0;
  double viewer_kbps = 400.0;
  double jitter_kbps = 0.0;  // uniform ± jitter, clamped to [400, 800]
};

struct HybridConfig {
  int levels = 15;
  int peers_per_level = 4;
  int proxy_count = 4;
  int archive_count = 1;
  int billing_count = 1;
  LinkCapacityPolicy capacities;
  std::uint64_t seed = 1;
};

class Topology {
 public:
  Topology() = default;
  Topology(int levels, std::vector<Node> nodes) : levels_(levels), nodes_(std::move(nodes)) {
    by_level_.assign(static_cast<std::size_t>(levels_), {});
    for (const auto& n : nodes_) {
      if (n.level < 0 || n.level >= levels_) throw InvalidTopology("node level out of range");
      by_level_[static_cast<std::size_t>(n.level)].push_back(n.id);
    }
  }

  int levels() const { return levels_; }
  int top_level() const { return levels_ - 1; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }

  std::vector<NodeId> nodes_at(int level, NodeKind kind) const {
    std::vector<NodeId> out;
    if (level < 0 || level >= levels_) return out;
    for (NodeId id : by_level_[static_cast<std::size_t>(level)])
      if (nodes_[id].kind == kind) out.push_back(id);
    return out;
  }
  std::vector<NodeId> peers_at(int level) const { return nodes_at(level, NodeKind::Peer); }
  std::vector<NodeId> proxies() const { return nodes_at(top_level(), NodeKind::ProxyServer); }

  // One record per wired slot, in (owner id, slot order).
  std::vector<Link> links() const {
    std::vector<Link> out;
    for (const auto& n : nodes_)
      for (const auto& s : n.slots)
        if (s.endpoint) out.push_back({n.id, *s.endpoint, s.kind, s.capacity_kbps});
    return out;
  }

  // Capacity of the wired link between a and b in either direction.
  std::optional<double> link_kbps(NodeId a, NodeId b) const {
    for (const auto& s : nodes_.at(a).slots)
      if (s.endpoint == b) return s.capacity_kbps;
    for (const auto& s : nodes_.at(b).slots)
      if (s.endpoint == a) return s.capacity_kbps;
    return std::nullopt;
  }

  bool operator==(const Topology& o) const { return levels_ == o.levels_ && nodes_ == o.nodes_; }

 private:
  int levels_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::vector<NodeId>> by_level_;
};

// Throws InvalidTopology on the first violated structural rule.
inline void check_invariants(const Topology& t) {
  for (const auto& n : t.nodes()) {
    if (n.kind == NodeKind::ArchiveStorage && n.level != 0) throw InvalidTopology("archive above level 0");
    if (n.kind == NodeKind::ProxyServer && n.level != t.top_level()) throw InvalidTopology("proxy below top level");
    if (n.kind == NodeKind::BillingServer && n.level != 1) throw InvalidTopology("billing server off level 1");
    if (n.kind == NodeKind::Peer) {
      if (static_cast<int>(n.slots.size()) != kPeerSlots) throw InvalidTopology("peer without 10 link slots");
      int down = 0, up = 0, intra = 0;
      for (const auto& s : n.slots) {
        down += s.kind == LinkKind::UnicastDown;
        up += s.kind == LinkKind::ForwardUp;
        intra += s.kind == LinkKind::IntraLevel;
      }
      if (down != kDownSlots || up != kUpSlots || intra != kIntraSlots)
        throw InvalidTopology("peer slot roles are not 4 down / 3 up / 3 intra");
    }
    for (const auto& s : n.slots) {
      if (s.capacity_kbps < kMinLinkKbps || s.capacity_kbps > kMaxLinkKbps)
        throw InvalidTopology("link capacity outside [400, 800] kbps");
      if (!s.endpoint) continue;
      if (*s.endpoint >= t.size()) throw InvalidTopology("link endpoint out of range");
      const auto& other = t.node(*s.endpoint);
      if (n.kind == NodeKind::ProxyServer && other.kind == NodeKind::ProxyServer)
        throw InvalidTopology("proxy-to-proxy link");
      const int delta = other.level - n.level;
      if ((s.kind == LinkKind::UnicastDown && delta != -1) || (s.kind == LinkKind::ForwardUp && delta != 1) ||
          (s.kind == LinkKind::IntraLevel && delta != 0))
        throw InvalidTopology("link orientation does not match its level difference");
    }
  }
}

namespace detail {

inline std::vector<NodeId> sample_sorted(std::vector<NodeId> pool, std::size_t k, Rng& rng) {
  if (pool.size() > k) {
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(k);
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

inline double jittered(double nominal, const LinkCapacityPolicy& p, Rng& rng) {
  if (p.jitter_kbps <= 0.0) return nominal;
  std::uniform_real_distribution<double> d(-p.jitter_kbps, p.jitter_kbps);
  return std::clamp(nominal + d(rng), kMinLinkKbps, kMaxLinkKbps);
}

// Nominal capacity of an unwired slot; also what import uses for empties.
inline double empty_slot_kbps(LinkKind kind, int level, const LinkCapacityPolicy& p) {
  return (kind == LinkKind::UnicastDown && level == 1) ? p.storage_kbps : p.intermediate_kbps;
}

// Filled endpoints first, then empty slots, so slot order is canonical.
inline void push_role(Node& n, LinkKind kind, int count, const std::vector<NodeId>& endpoints,
                      double kbps_filled_nominal, const LinkCapacityPolicy& p, Rng& rng) {
  for (int i = 0; i < count; ++i) {
    LinkSlot s;
    s.kind = kind;
    if (static_cast<std::size_t>(i) < endpoints.size()) {
      s.endpoint = endpoints[static_cast<std::size_t>(i)];
      s.capacity_kbps = jittered(kbps_filled_nominal, p, rng);
    } else {
      s.capacity_kbps = empty_slot_kbps(kind, n.level, p);
    }
    n.slots.push_back(s);
  }
}

}  // namespace detail

inline Topology build_hybrid(const HybridConfig& cfg) {
  if (cfg.levels < 3) throw InvalidConfig("topology needs at least 3 levels");
  if (cfg.peers_per_level < 1 || cfg.peers_per_level > 63)
    throw InvalidConfig("peers_per_level must lie in [1, 63]");
  if (cfg.proxy_count < 1) throw InvalidConfig("proxy_count must be >= 1");
  if (cfg.archive_count < 1) throw InvalidConfig("archive_count must be >= 1");
  if (cfg.billing_count < 0) throw InvalidConfig("billing_count must be >= 0");
  const auto& cap = cfg.capacities;
  for (double v : {cap.storage_kbps, cap.intermediate_kbps, cap.viewer_kbps})
    if (v < kMinLinkKbps || v > kMaxLinkKbps) throw InvalidConfig("link capacities must lie in [400, 800] kbps");

  const int top = cfg.levels - 1;
  std::vector<Node> nodes;
  auto add = [&](NodeKind kind, int level) {
    Node n;
    n.id = static_cast<NodeId>(nodes.size());
    n.kind = kind;
    n.level = level;
    nodes.push_back(n);
    return n.id;
  };

  std::vector<NodeId> archives;
  for (int i = 0; i < cfg.archive_count; ++i) archives.push_back(add(NodeKind::ArchiveStorage, 0));
  std::vector<std::vector<NodeId>> peers(static_cast<std::size_t>(cfg.levels));
  for (int l = 1; l < top; ++l) {
    if (l == 1)
      for (int i = 0; i < cfg.billing_count; ++i) add(NodeKind::BillingServer, 1);
    for (int i = 0; i < cfg.peers_per_level; ++i) peers[static_cast<std::size_t>(l)].push_back(add(NodeKind::Peer, l));
  }
  std::vector<NodeId> proxies;
  for (int i = 0; i < cfg.proxy_count; ++i) proxies.push_back(add(NodeKind::ProxyServer, top));

  Rng rng = make_rng(cfg.seed, 0x70706f);
  for (int l = 1; l < top; ++l) {
    const auto& here = peers[static_cast<std::size_t>(l)];
    const auto& below = l == 1 ? archives : peers[static_cast<std::size_t>(l - 1)];
    const auto& above = l + 1 == top ? proxies : peers[static_cast<std::size_t>(l + 1)];
    const double down_kbps = l == 1 ? cap.storage_kbps : cap.intermediate_kbps;
    for (NodeId id : here) {
      Node& n = nodes[id];
      std::vector<NodeId> siblings;
      for (NodeId o : here)
        if (o != id) siblings.push_back(o);
      detail::push_role(n, LinkKind::UnicastDown, kDownSlots, detail::sample_sorted(below, kDownSlots, rng),
                        down_kbps, cap, rng);
      detail::push_role(n, LinkKind::ForwardUp, kUpSlots, detail::sample_sorted(above, kUpSlots, rng),
                        cap.intermediate_kbps, cap, rng);
      detail::push_role(n, LinkKind::IntraLevel, kIntraSlots, detail::sample_sorted(siblings, kIntraSlots, rng),
                        cap.intermediate_kbps, cap, rng);
    }
  }
  for (NodeId id : proxies) {
    Node& n = nodes[id];
    for (NodeId p : peers[static_cast<std::size_t>(top - 1)])
      n.slots.push_back({LinkKind::UnicastDown, p, detail::jittered(cap.intermediate_kbps, cap, rng)});
  }

  Topology t(cfg.levels, std::move(nodes));
  check_invariants(t);
  return t;
}

// ---------------------------------------------------------------------------
// Adjacency: which slots each node currently uses.
// ---------------------------------------------------------------------------

class Adjacency {
 public:
  Adjacency() = default;

  // Every wired slot active; the static view of the topology.
  static Adjacency all_active(const Topology& t) {
    Adjacency a;
    a.masks_.resize(t.size());
    for (const auto& n : t.nodes())
      a.masks_[n.id] = n.slots.size() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n.slots.size()) - 1U;
    return a;
  }

  bool is_active(NodeId id, std::size_t slot) const { return (masks_.at(id) >> slot) & 1U; }
  std::uint64_t mask(NodeId id) const { return masks_.at(id); }
  void set_mask(NodeId id, std::uint64_t mask) { masks_.at(id) = mask; }
  int active_count(NodeId id) const { return std::popcount(masks_.at(id)); }

  std::vector<std::size_t> active_slots(NodeId id) const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < 64; ++s)
      if (is_active(id, s)) out.push_back(s);
    return out;
  }

  // A wired link is live when either owner has its slot toward the other
  // active.
  bool live(const Topology& t, NodeId a, NodeId b) const {
    return owns_active(t, a, b) || owns_active(t, b, a);
  }

  bool operator==(const Adjacency&) const = default;

 private:
  bool owns_active(const Topology& t, NodeId owner, NodeId other) const {
    const auto& slots = t.node(owner).slots;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (slots[s].endpoint == other && is_active(owner, s)) return true;
    return false;
  }

  std::vector<std::uint64_t> masks_;
};

// Marks exactly `size` of the peer's slots active, drawn uniformly without
// replacement. Returns the chosen slot indices in ascending order.
inline std::vector<std::size_t> select_adjacency(const Topology& t, Adjacency& adj, NodeId node, int size,
                                                 Rng& rng) {
  if (size < kMinAdjacency || size > kMaxAdjacency)
    throw InvalidArgument("adjacency size must lie in [1, 6]");
  const auto& n = t.node(node);
  if (n.kind != NodeKind::Peer) throw InvalidArgument("adjacency is selected by peers only");
  std::vector<std::size_t> idx(n.slots.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < static_cast<std::size_t>(size); ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(static_cast<std::size_t>(size));
  std::sort(idx.begin(), idx.end());
  std::uint64_t mask = 0;
  for (auto s : idx) mask |= std::uint64_t{1} << s;
  adj.set_mask(node, mask);
  return idx;
}

// Fresh adjacency state: every peer draws `size` slots, other nodes keep all
// wired slots.
inline Adjacency sample_adjacency(const Topology& t, int size, Rng& rng) {
  Adjacency adj = Adjacency::all_active(t);
  for (const auto& n : t.nodes())
    if (n.kind == NodeKind::Peer) select_adjacency(t, adj, n.id, size, rng);
  return adj;
}

// ---------------------------------------------------------------------------
// Virtual clusters
// ---------------------------------------------------------------------------

struct VirtualCluster {
  int level = 0;
  NodeId head = 0;
  std::vector<NodeId> members;  // ascending, includes head

  bool operator==(const VirtualCluster&) const = default;
};

// Peers of `level` partitioned by wired intra-level connectivity. The head
// holds the most chunks (`chunk_counts[id]`), lowest id on ties.
inline std::vector<VirtualCluster> form_clusters(const Topology& t, int level,
                                                 std::span<const std::size_t> chunk_counts) {
  const auto peers = t.peers_at(level);
  if (peers.empty()) throw InvalidArgument("level " + std::to_string(level) + " hosts no peers");
  if (chunk_counts.size() < t.size()) throw InvalidArgument("chunk counts must cover every node");

  std::vector<NodeId> comp(t.size(), static_cast<NodeId>(-1));
  std::vector<VirtualCluster> out;
  for (NodeId seed : peers) {
    if (comp[seed] != static_cast<NodeId>(-1)) continue;
    VirtualCluster c;
    c.level = level;
    std::queue<NodeId> q;
    q.push(seed);
    comp[seed] = seed;
    while (!q.empty()) {
      NodeId u = q.front();
      q.pop();
      c.members.push_back(u);
      for (NodeId w : peers) {
        if (comp[w] != static_cast<NodeId>(-1)) continue;
        const auto kbps = t.link_kbps(u, w);
        if (kbps) {
          comp[w] = seed;
          q.push(w);
        }
      }
    }
    std::sort(c.members.begin(), c.members.end());
    c.head = c.members.front();
    for (NodeId m : c.members)
      if (chunk_counts[m] > chunk_counts[c.head]) c.head = m;
    out.push_back(std::move(c));
  }
  return out;
}

// Clusters for every level, plus singleton clusters for archive nodes so the
// search can treat level 0 uniformly.
struct ClusterMap {
  std::vector<VirtualCluster> clusters;
  std::vector<int> cluster_of;  // node id -> index into clusters, -1 if none

  const VirtualCluster& of(NodeId id) const { return clusters.at(static_cast<std::size_t>(cluster_of.at(id))); }
  bool has(NodeId id) const { return cluster_of.at(id) >= 0; }
  bool is_head(NodeId id) const { return has(id) && of(id).head == id; }

  std::vector<NodeId> heads_at(int level) const {
    std::vector<NodeId> out;
    for (const auto& c : clusters)
      if (c.level == level) out.push_back(c.head);
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline ClusterMap form_all_clusters(const Topology& t, std::span<const std::size_t> chunk_counts) {
  ClusterMap m;
  m.cluster_of.assign(t.size(), -1);
  auto add = [&](VirtualCluster c) {
    for (NodeId id : c.members) m.cluster_of[id] = static_cast<int>(m.clusters.size());
    m.clusters.push_back(std::move(c));
  };
  for (NodeId a : t.nodes_at(0, NodeKind::ArchiveStorage)) add({0, a, {a}});
  for (int l = 1; l < t.top_level(); ++l)
    if (!t.peers_at(l).empty())
      for (auto& c : form_clusters(t, l, chunk_counts)) add(std::move(c));
  return m;
}

}  // namespace vodmesh
