#pragma once

// Video assets cut into GOP-sized chunks, their placement over the tiers, and
// the proxy-side LRFU cache.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vodmesh/errors.hpp"
#include "vodmesh/rng.hpp"
#include "vodmesh/topology.hpp"

namespace vodmesh {

struct VideoAsset {
  std::uint32_t id = 0;
  double duration_s = 0.0;
  double frame_rate = 30.0;
  int gop_length = 30;  // frames
  double avg_bitrate_kbps = 600.0;
};

struct ChunkKey {
  std::uint32_t asset = 0;
  std::uint32_t index = 0;

  auto operator<=>(const ChunkKey&) const = default;
};

struct Chunk {
  std::uint32_t asset = 0;
  std::uint32_t index = 0;
  double size_kbit = 0.0;
  double play_time_s = 0.0;

  ChunkKey key() const { return {asset, index}; }
};

inline void check(const VideoAsset& a) {
  if (!(a.duration_s > 0.0)) throw InvalidArgument("asset duration must be > 0");
  if (!(a.frame_rate > 0.0)) throw InvalidArgument("frame rate must be > 0");
  if (a.gop_length < 1) throw InvalidArgument("GOP length must be >= 1");
  if (!(a.avg_bitrate_kbps > 0.0)) throw InvalidArgument("average bitrate must be > 0");
}

inline std::size_t chunk_count(const VideoAsset& a) {
  check(a);
  const double gops = a.duration_s * a.frame_rate / a.gop_length;
  return static_cast<std::size_t>(std::ceil(gops - 1e-9));
}

// One chunk per GOP; the last one carries the remaining frames.
inline std::vector<Chunk> chunkify(const VideoAsset& a) {
  const std::size_t n = chunk_count(a);
  const double full_play = a.gop_length / a.frame_rate;
  std::vector<Chunk> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Chunk c;
    c.asset = a.id;
    c.index = static_cast<std::uint32_t>(i);
    c.play_time_s = std::min(full_play, a.duration_s - static_cast<double>(i) * full_play);
    c.size_kbit = c.play_time_s * a.avg_bitrate_kbps;
    out.push_back(c);
  }
  return out;
}

// Assets plus a flat numbering of all their chunks.
class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<VideoAsset> assets) : assets_(std::move(assets)) {
    offsets_.push_back(0);
    for (std::size_t i = 0; i < assets_.size(); ++i) {
      if (assets_[i].id != i) throw InvalidArgument("asset ids must be 0..n-1 in order");
      chunks_.push_back(chunkify(assets_[i]));
      offsets_.push_back(offsets_.back() + chunks_.back().size());
    }
  }

  std::size_t asset_count() const { return assets_.size(); }
  const VideoAsset& asset(std::uint32_t id) const { return assets_.at(id); }
  std::size_t chunk_count(std::uint32_t asset) const { return chunks_.at(asset).size(); }
  std::size_t total_chunks() const { return offsets_.back(); }
  const Chunk& chunk(ChunkKey k) const { return chunks_.at(k.asset).at(k.index); }

  std::size_t flat(ChunkKey k) const {
    if (k.asset >= assets_.size() || k.index >= chunks_[k.asset].size())
      throw InvalidArgument("chunk (" + std::to_string(k.asset) + ", " + std::to_string(k.index) +
                            ") is not in the catalog");
    return offsets_[k.asset] + k.index;
  }

  ChunkKey key(std::size_t flat_index) const {
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), flat_index);
    const auto asset = static_cast<std::uint32_t>(std::distance(offsets_.begin(), it) - 1);
    return {asset, static_cast<std::uint32_t>(flat_index - offsets_[asset])};
  }

 private:
  std::vector<VideoAsset> assets_;
  std::vector<std::vector<Chunk>> chunks_;
  std::vector<std::size_t> offsets_;
};

inline Catalog make_catalog(int assets, double duration_s, double frame_rate = 30.0, int gop_length = 30,
                            double avg_bitrate_kbps = 600.0) {
  if (assets < 1) throw InvalidArgument("catalog needs at least one asset");
  std::vector<VideoAsset> v;
  for (int i = 0; i < assets; ++i)
    v.push_back({static_cast<std::uint32_t>(i), duration_s, frame_rate, gop_length, avg_bitrate_kbps});
  return Catalog(std::move(v));
}

// node id -> chunks held there.
class PlacementMap {
 public:
  PlacementMap() = default;
  PlacementMap(const Catalog& catalog, std::size_t node_count)
      : catalog_(std::make_shared<const Catalog>(catalog)), held_(node_count, std::vector<bool>(catalog.total_chunks(), false)),
        counts_(node_count, 0) {}

  const Catalog& catalog() const { return *catalog_; }
  std::size_t node_count() const { return held_.size(); }

  bool holds(NodeId node, ChunkKey k) const { return held_.at(node)[catalog_->flat(k)]; }
  bool holds_flat(NodeId node, std::size_t flat) const { return held_.at(node)[flat]; }
  std::size_t count(NodeId node) const { return counts_.at(node); }
  const std::vector<std::size_t>& counts() const { return counts_; }

  void add(NodeId node, std::size_t flat) {
    auto ref = held_.at(node)[flat];
    if (!ref) {
      ref = true;
      ++counts_[node];
    }
  }

  std::vector<NodeId> holders(ChunkKey k) const {
    const std::size_t f = catalog_->flat(k);
    std::vector<NodeId> out;
    for (std::size_t n = 0; n < held_.size(); ++n)
      if (held_[n][f]) out.push_back(static_cast<NodeId>(n));
    return out;
  }

  // {"<node id>": [[asset, index], ...]} for every node holding something.
  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t n = 0; n < held_.size(); ++n) {
      if (counts_[n] == 0) continue;
      nlohmann::json list = nlohmann::json::array();
      for (std::size_t f = 0; f < held_[n].size(); ++f)
        if (held_[n][f]) {
          const auto k = catalog_->key(f);
          list.push_back({k.asset, k.index});
        }
      j[std::to_string(n)] = std::move(list);
    }
    return j;
  }

  bool operator==(const PlacementMap& o) const { return held_ == o.held_; }

 private:
  std::shared_ptr<const Catalog> catalog_;
  std::vector<std::vector<bool>> held_;
  std::vector<std::size_t> counts_;
};

namespace detail {

inline void place_archives(const Topology& t, PlacementMap& m) {
  for (const auto& n : t.nodes())
    if (n.kind == NodeKind::ArchiveStorage)
      for (std::size_t f = 0; f < m.catalog().total_chunks(); ++f) m.add(n.id, f);
}

}  // namespace detail

// Archives hold everything; each peer holds each chunk independently with
// probability `share_fraction`.
inline PlacementMap place_initial(const Catalog& catalog, const Topology& t, double share_fraction,
                                  std::uint64_t seed) {
  if (!(share_fraction > 0.0 && share_fraction < 1.0))
    throw InvalidConfig("share fraction must lie in (0, 1)");
  PlacementMap m(catalog, t.size());
  detail::place_archives(t, m);
  Rng rng = make_rng(seed, 0x706c61);
  std::bernoulli_distribution coin(share_fraction);
  for (const auto& n : t.nodes())
    if (n.kind == NodeKind::Peer)
      for (std::size_t f = 0; f < catalog.total_chunks(); ++f)
        if (coin(rng)) m.add(n.id, f);
  return m;
}

// Level-decaying placement: a peer at level l holds each chunk with
// probability level1_fraction * λ^(l-1), mirroring N(l) = λ^(l-1) C_1.
inline PlacementMap place_tiered(const Catalog& catalog, const Topology& t, double level1_fraction,
                                 double share_fraction, std::uint64_t seed) {
  if (!(share_fraction > 0.0 && share_fraction < 1.0))
    throw InvalidConfig("share fraction must lie in (0, 1)");
  if (!(level1_fraction > 0.0 && level1_fraction <= 1.0))
    throw InvalidConfig("level-1 fraction must lie in (0, 1]");
  PlacementMap m(catalog, t.size());
  detail::place_archives(t, m);
  Rng rng = make_rng(seed, 0x706c61);
  for (const auto& n : t.nodes()) {
    if (n.kind != NodeKind::Peer) continue;
    std::bernoulli_distribution coin(level1_fraction * std::pow(share_fraction, n.level - 1));
    for (std::size_t f = 0; f < catalog.total_chunks(); ++f)
      if (coin(rng)) m.add(n.id, f);
  }
  return m;
}

// ---------------------------------------------------------------------------
// LRFU proxy cache
// ---------------------------------------------------------------------------

// score(c, t) = Σ_a 2^(-(t - t_a)/H) over past accesses a. Scores are kept in
// log2 form so H -> 0 still orders entries by recency instead of underflowing
// to ties.
class ProxyCache {
 public:
  struct Entry {
    double last_access = 0.0;
    double log2_score = 0.0;  // at last_access
  };

  explicit ProxyCache(std::size_t capacity = 120, double half_life_s = 60.0)
      : capacity_(capacity), half_life_(half_life_s) {
    if (capacity_ < 1) throw InvalidArgument("cache capacity must be >= 1");
    if (!(half_life_ > 0.0)) throw InvalidArgument("cache half-life must be > 0");
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return entries_.size(); }
  double half_life() const { return half_life_; }
  bool contains(ChunkKey k) const { return entries_.count(k) != 0; }

  double log2_score(ChunkKey k, double now) const {
    const auto it = entries_.find(k);
    if (it == entries_.end()) return -std::numeric_limits<double>::infinity();
    return decayed(it->second, now);
  }
  double score(ChunkKey k, double now) const { return std::exp2(log2_score(k, now)); }

  // Hit refreshes the entry as a new access.
  bool lookup(ChunkKey k, double now) {
    const auto it = entries_.find(k);
    if (it == entries_.end()) return false;
    touch(it->second, now);
    return true;
  }

  // Makes `k` resident. When full, evicts the minimum-score entry (older last
  // access, then smaller key, on ties) and returns it.
  std::optional<ChunkKey> admit(ChunkKey k, double now) {
    if (const auto it = entries_.find(k); it != entries_.end()) {
      touch(it->second, now);
      return std::nullopt;
    }
    std::optional<ChunkKey> evicted;
    if (entries_.size() >= capacity_) {
      auto victim = entries_.begin();
      double victim_score = decayed(victim->second, now);
      for (auto it = std::next(entries_.begin()); it != entries_.end(); ++it) {
        const double s = decayed(it->second, now);
        if (s < victim_score || (s == victim_score && it->second.last_access < victim->second.last_access)) {
          victim = it;
          victim_score = s;
        }
      }
      evicted = victim->first;
      entries_.erase(victim);
    }
    entries_.emplace(k, Entry{now, 0.0});
    return evicted;
  }

 private:
  double decayed(const Entry& e, double now) const {
    if (std::isinf(half_life_)) return e.log2_score;
    return e.log2_score - (now - e.last_access) / half_life_;
  }

  void touch(Entry& e, double now) {
    const double prev = decayed(e, now);
    // log2(2^prev + 1)
    e.log2_score = prev < -1000.0 ? 0.0 : std::log2(std::exp2(prev) + 1.0);
    e.last_access = now;
  }

  std::size_t capacity_;
  double half_life_;
  std::map<ChunkKey, Entry> entries_;
};

}  // namespace vodmesh
