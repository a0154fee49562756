#pragma once

// Queue-driven heuristic search from a proxy through virtual-cluster heads,
// level by level toward archive storage.
//
// A head v covers its own holdings and those of cluster members joined to v
// by a live intra-level link. From v the search descends to every head of the
// level below whose cluster shares a live link with v's cluster. Heads are
// enqueued at most once, so the FIFO order is a breadth-first traversal and
// the depth of the first covering head is the hop count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "vodmesh/content.hpp"
#include "vodmesh/errors.hpp"
#include "vodmesh/topology.hpp"

namespace vodmesh {

struct SearchQuery {
  ChunkKey target;
  NodeId origin = 0;
};

struct SessionWindow {
  double start = 0.0;
  double duration = 1.0;
};

struct Found {
  int hop_count = 0;
  NodeId source = 0;
  // Head chain from the level below the proxy down to the covering head,
  // followed by the member that holds the chunk when it is not the head.
  std::vector<NodeId> path;
  double elapsed = 0.0;
};

struct NotFound {
  double elapsed = 0.0;
};

using SearchOutcome = std::variant<Found, NotFound>;

inline constexpr double kDefaultQueryLatency = 0.010;

// Everything a search reads; all of it immutable for the duration of a query.
struct SearchView {
  const Topology& topology;
  const Adjacency& adjacency;
  const ClusterMap& clusters;
  const PlacementMap& placement;
};

namespace detail {

inline int max_search_depth(const SessionWindow& w, double query_latency) {
  if (!(w.duration > 0.0)) throw InvalidArgument("session period must be > 0");
  if (!(query_latency > 0.0)) throw InvalidArgument("query latency must be > 0");
  return static_cast<int>(std::floor(w.duration / query_latency + 1e-9));
}

inline bool clusters_linked(const SearchView& s, const std::vector<NodeId>& upper,
                            const std::vector<NodeId>& lower) {
  for (NodeId a : upper)
    for (NodeId b : lower)
      if (s.adjacency.live(s.topology, a, b)) return true;
  return false;
}

// Heads of `level` reachable from the member set `from`, ascending id.
inline std::vector<NodeId> heads_below(const SearchView& s, const std::vector<NodeId>& from, int level) {
  std::vector<NodeId> out;
  for (const auto& c : s.clusters.clusters)
    if (c.level == level && clusters_linked(s, from, c.members)) out.push_back(c.head);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline SearchOutcome heuristic_path_search(const SearchView& s, const SearchQuery& q, const SessionWindow& window,
                                           double query_latency = kDefaultQueryLatency) {
  if (q.origin >= s.topology.size() || s.topology.node(q.origin).kind != NodeKind::ProxyServer)
    throw InvalidArgument("search origin must be a proxy server");
  const int max_depth = detail::max_search_depth(window, query_latency);

  struct Visit {
    NodeId head;
    int depth;
    int parent;  // index into visits, -1 for seeds
  };
  std::vector<Visit> visits;
  std::deque<int> queue;
  std::set<NodeId> seen;
  auto enqueue = [&](NodeId head, int depth, int parent) {
    if (!seen.insert(head).second) return;
    visits.push_back({head, depth, parent});
    queue.push_back(static_cast<int>(visits.size()) - 1);
  };
  auto found = [&](int at, NodeId source) {
    Found f;
    f.hop_count = visits[static_cast<std::size_t>(at)].depth;
    f.source = source;
    for (int i = at; i >= 0; i = visits[static_cast<std::size_t>(i)].parent)
      f.path.push_back(visits[static_cast<std::size_t>(i)].head);
    std::reverse(f.path.begin(), f.path.end());
    if (source != f.path.back()) f.path.push_back(source);
    f.elapsed = f.hop_count * query_latency;
    return f;
  };

  for (NodeId h : detail::heads_below(s, {q.origin}, s.topology.top_level() - 1)) enqueue(h, 1, -1);

  while (!queue.empty()) {
    const int at = queue.front();
    queue.pop_front();
    const Visit v = visits[static_cast<std::size_t>(at)];
    if (v.depth > max_depth) break;
    if (s.placement.holds(v.head, q.target)) return found(at, v.head);
    const auto& cluster = s.clusters.of(v.head);
    for (NodeId w : cluster.members)
      if (w != v.head && s.adjacency.live(s.topology, v.head, w) && s.placement.holds(w, q.target))
        return found(at, w);
    const int below = s.topology.node(v.head).level - 1;
    if (below >= 0)
      for (NodeId h : detail::heads_below(s, cluster.members, below)) enqueue(h, v.depth + 1, at);
  }
  return NotFound{window.duration};
}

// Shortest hop distance from `origin` to any head covering one of
// `target_nodes`, computed on an explicitly materialized head graph. Returns
// nullopt when no covering head is reachable.
inline std::optional<int> bfs_distance_oracle(const SearchView& s, NodeId origin,
                                              const std::vector<NodeId>& target_nodes) {
  const std::set<NodeId> targets(target_nodes.begin(), target_nodes.end());

  // Vertices: origin plus every cluster head. Edges: live cluster-to-cluster
  // links one level down (origin counts as a one-member cluster).
  std::map<NodeId, std::vector<NodeId>> members;
  members[origin] = {origin};
  for (const auto& c : s.clusters.clusters) members[c.head] = c.members;
  auto level_of = [&](NodeId id) { return s.topology.node(id).level; };

  std::map<NodeId, std::vector<NodeId>> edges;
  for (const auto& [u, mu] : members)
    for (const auto& [v, mv] : members) {
      if (u == v || v == origin || level_of(v) != level_of(u) - 1) continue;
      bool linked = false;
      for (NodeId a : mu)
        for (NodeId b : mv) linked = linked || s.adjacency.live(s.topology, a, b);
      if (linked) edges[u].push_back(v);
    }

  auto covers = [&](NodeId head) {
    if (targets.count(head)) return true;
    for (NodeId w : members[head])
      if (w != head && targets.count(w) && s.adjacency.live(s.topology, head, w)) return true;
    return false;
  };

  std::map<NodeId, int> dist{{origin, 0}};
  std::deque<NodeId> frontier{origin};
  std::optional<int> best;
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop_front();
    if (u != origin && covers(u) && (!best || dist[u] < *best)) best = dist[u];
    for (NodeId v : edges[u])
      if (!dist.count(v)) {
        dist[v] = dist[u] + 1;
        frontier.push_back(v);
      }
  }
  return best;
}

// Links a found chunk crosses on its way up to the proxy: path reversed, then
// the last hop into the origin. Unwired consecutive pairs (cluster-level
// steps) fall back to the intermediate capacity.
inline std::vector<double> transfer_links(const Topology& t, NodeId origin, const Found& f,
                                          double fallback_kbps = 600.0) {
  std::vector<NodeId> chain(f.path.rbegin(), f.path.rend());
  chain.push_back(origin);
  std::vector<double> kbps;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    kbps.push_back(t.link_kbps(chain[i], chain[i + 1]).value_or(fallback_kbps));
  return kbps;
}

}  // namespace vodmesh
