#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "vodmesh/content.hpp"

using namespace vodmesh;

namespace {

constexpr ChunkKey A{0, 0}, B{0, 1}, C{0, 2}, D{0, 3};

// Direct LRFU score from the full access history.
struct CacheOracle {
  std::size_t capacity;
  double half_life;
  std::map<ChunkKey, std::vector<double>> history;

  double score(ChunkKey k, double now) const {
    double s = 0.0;
    for (double t : history.at(k)) s += std::exp2(-(now - t) / half_life);
    return s;
  }

  std::optional<ChunkKey> admit(ChunkKey k, double now) {
    if (history.count(k)) {
      history[k].push_back(now);
      return std::nullopt;
    }
    std::optional<ChunkKey> victim;
    if (history.size() >= capacity) {
      for (const auto& [key, times] : history) {
        if (!victim) {
          victim = key;
          continue;
        }
        const double a = score(key, now), b = score(*victim, now);
        if (a < b * (1 - 1e-12) || (std::abs(a - b) <= 1e-12 * b && times.back() < history.at(*victim).back()))
          victim = key;
      }
      history.erase(*victim);
    }
    history[k] = {now};
    return victim;
  }

  bool lookup(ChunkKey k, double now) {
    if (!history.count(k)) return false;
    history[k].push_back(now);
    return true;
  }
};

}  // namespace

TEST(Chunkify, SixtySecondAsset) {
  const auto chunks = chunkify({0, 60.0});
  ASSERT_EQ(chunks.size(), 60u);
  for (const auto& c : chunks) {
    EXPECT_DOUBLE_EQ(c.size_kbit, 600.0);
    EXPECT_DOUBLE_EQ(c.play_time_s, 1.0);
  }
}

TEST(Chunkify, OneSecondAsset) { EXPECT_EQ(chunkify({0, 1.0}).size(), 1u); }

TEST(Chunkify, PartialLastGop) {
  const auto chunks = chunkify({0, 60.5});
  ASSERT_EQ(chunks.size(), 61u);
  EXPECT_NEAR(chunks.back().size_kbit, 300.0, 1e-9);
  double total = 0.0;
  for (const auto& c : chunks) total += c.size_kbit;
  EXPECT_NEAR(total, 60.5 * 600.0, 1e-6);
}

TEST(Chunkify, RejectsInvalidAsset) {
  EXPECT_THROW(chunkify({0, 0.0}), InvalidArgument);
  EXPECT_THROW(chunkify({0, 10.0, 30.0, 0}), InvalidArgument);
}

TEST(Catalog, FlatIndexRoundTrip) {
  const Catalog cat = make_catalog(3, 10.5);
  EXPECT_EQ(cat.total_chunks(), 33u);
  for (std::size_t f = 0; f < cat.total_chunks(); ++f) EXPECT_EQ(cat.flat(cat.key(f)), f);
  EXPECT_THROW(cat.flat({3, 0}), InvalidArgument);
  EXPECT_THROW(cat.flat({0, 11}), InvalidArgument);
}

TEST(Placement, ArchivesHoldEverything) {
  const Topology t = build_hybrid({});
  const Catalog cat = make_catalog(4, 30.0);
  for (double lam : {0.05, 0.5, 0.95}) {
    const auto m = place_initial(cat, t, lam, 3);
    for (NodeId a : t.nodes_at(0, NodeKind::ArchiveStorage)) EXPECT_EQ(m.count(a), cat.total_chunks());
    const auto tiered = place_tiered(cat, t, 0.9, lam, 3);
    for (NodeId a : t.nodes_at(0, NodeKind::ArchiveStorage)) EXPECT_EQ(tiered.count(a), cat.total_chunks());
  }
}

TEST(Placement, BinomialHolding) {
  const Topology t = build_hybrid({});
  const Catalog cat = make_catalog(1, 1000.0);
  ASSERT_EQ(cat.total_chunks(), 1000u);
  const auto m = place_initial(cat, t, 0.5, 8);
  const double sigma = std::sqrt(1000 * 0.25);
  EXPECT_LE(std::abs(static_cast<double>(m.count(t.peers_at(1).front())) - 500.0), 3 * sigma);
  double total = 0.0;
  int peers = 0;
  for (const auto& n : t.nodes())
    if (n.kind == NodeKind::Peer) {
      total += static_cast<double>(m.count(n.id));
      ++peers;
    }
  EXPECT_LE(std::abs(total - 500.0 * peers), 3 * sigma * std::sqrt(peers));
}

TEST(Placement, NonPeersOtherThanArchivesHoldNothing) {
  const Topology t = build_hybrid({});
  const auto m = place_initial(make_catalog(2, 20.0), t, 0.7, 1);
  for (const auto& n : t.nodes())
    if (n.kind == NodeKind::ProxyServer || n.kind == NodeKind::BillingServer) { EXPECT_EQ(m.count(n.id), 0u); }
}

TEST(Placement, DeterministicPerSeed) {
  const Topology t = build_hybrid({});
  const Catalog cat = make_catalog(3, 50.0);
  EXPECT_EQ(place_initial(cat, t, 0.4, 5), place_initial(cat, t, 0.4, 5));
  EXPECT_FALSE(place_initial(cat, t, 0.4, 5) == place_initial(cat, t, 0.4, 6));
  EXPECT_EQ(place_tiered(cat, t, 0.9, 0.7, 5), place_tiered(cat, t, 0.9, 0.7, 5));
}

TEST(Placement, TieredHoldingDecaysWithLevel) {
  const Topology t = build_hybrid({});
  const Catalog cat = make_catalog(10, 300.0);
  const auto m = place_tiered(cat, t, 0.9, 0.7, 2);
  const double n = static_cast<double>(cat.total_chunks());
  for (int l = 1; l <= 13; ++l) {
    const double p = 0.9 * std::pow(0.7, l - 1);
    double held = 0.0;
    for (NodeId id : t.peers_at(l)) held += static_cast<double>(m.count(id));
    const double sigma = std::sqrt(4 * n * p * (1 - p));
    EXPECT_LE(std::abs(held - 4 * n * p), 3 * sigma) << "level " << l;
  }
}

TEST(Placement, RejectsBadFraction) {
  const Topology t = build_hybrid({});
  const Catalog cat = make_catalog(1, 5.0);
  EXPECT_THROW(place_initial(cat, t, 0.0, 1), InvalidConfig);
  EXPECT_THROW(place_initial(cat, t, 1.0, 1), InvalidConfig);
  EXPECT_THROW(place_tiered(cat, t, 1.5, 0.5, 1), InvalidConfig);
}

TEST(Placement, JsonListsHoldings) {
  const Topology t = build_hybrid({});
  const Catalog cat = make_catalog(1, 3.0);
  const auto m = place_initial(cat, t, 0.5, 1);
  const auto j = m.to_json();
  EXPECT_EQ(j.at("0").size(), 3u);
  for (const auto& [node, list] : j.items()) EXPECT_EQ(list.size(), m.count(static_cast<NodeId>(std::stoul(node))));
}

TEST(Cache, EmptyMissThenHit) {
  ProxyCache c(3);
  EXPECT_FALSE(c.lookup(A, 0));
  EXPECT_FALSE(c.admit(A, 0));
  EXPECT_TRUE(c.lookup(A, 1));
}

TEST(Cache, ThreeEntryTrace) {
  ProxyCache c(3, 60);
  c.admit(A, 0);
  c.admit(B, 1);
  c.admit(C, 2);
  EXPECT_EQ(c.admit(D, 3), A);
  EXPECT_FALSE(c.lookup(A, 4));
  EXPECT_TRUE(c.lookup(B, 4));
  EXPECT_EQ(c.size(), 3u);
}

TEST(Cache, FrequencyProtectsEntry) {
  ProxyCache c(2, 60);
  c.admit(A, 0);
  c.admit(B, 0);
  EXPECT_TRUE(c.lookup(A, 59));
  // A accessed at 0 and 59, B only at 0
  EXPECT_NEAR(c.score(A, 60), std::exp2(-1.0) + std::exp2(-1.0 / 60), 1e-12);
  EXPECT_NEAR(c.score(B, 60), std::exp2(-1.0), 1e-12);
  EXPECT_EQ(c.admit(C, 60), B);
}

TEST(Cache, CapacityOneEvictsOnlyEntry) {
  ProxyCache c(1);
  c.admit(A, 0);
  EXPECT_EQ(c.admit(B, 0), A);
  EXPECT_FALSE(c.contains(A));
}

TEST(Cache, TinyHalfLifeIsLru) {
  ProxyCache c(2, 1e-6);
  for (int t = 0; t <= 5; ++t) c.admit(A, t);
  c.admit(B, 10);
  EXPECT_EQ(c.admit(C, 11), A);
}

TEST(Cache, InfiniteHalfLifeIsLfu) {
  ProxyCache c(2, std::numeric_limits<double>::infinity());
  for (int t = 0; t <= 2; ++t) c.admit(A, t);
  c.admit(B, 100);
  EXPECT_TRUE(c.lookup(B, 200));
  EXPECT_EQ(c.admit(C, 300), B);
}

TEST(Cache, MatchesDirectScoreOracle) {
  Rng rng(31);
  std::uniform_int_distribution<std::uint32_t> key(0, 11);
  std::uniform_real_distribution<double> gap(0.0, 40.0);
  std::uniform_int_distribution<int> op(0, 1);
  for (int run = 0; run < 20; ++run) {
    ProxyCache cache(5, 60);
    CacheOracle oracle{5, 60, {}};
    double now = 0.0;
    for (int i = 0; i < 300; ++i) {
      now += gap(rng);
      const ChunkKey k{0, key(rng)};
      if (op(rng)) {
        ASSERT_EQ(cache.lookup(k, now), oracle.lookup(k, now));
      } else {
        ASSERT_EQ(cache.admit(k, now), oracle.admit(k, now));
      }
      ASSERT_LE(cache.size(), cache.capacity());
      for (const auto& [hk, times] : oracle.history) ASSERT_NEAR(cache.score(hk, now), oracle.score(hk, now), 1e-9);
    }
  }
}

TEST(Cache, RejectsBadParameters) {
  EXPECT_THROW(ProxyCache(0), InvalidArgument);
  EXPECT_THROW(ProxyCache(4, 0.0), InvalidArgument);
}
