#include <gtest/gtest.h>

#include <variant>

#include "vodmesh/path_search.hpp"

using namespace vodmesh;

namespace {

// archive(0) - peer(1) - ... - peer(levels-2) - proxy, one node per level.
Topology chain(int levels) {
  HybridConfig c;
  c.levels = levels;
  c.peers_per_level = 1;
  c.proxy_count = 1;
  c.billing_count = 0;
  return build_hybrid(c);
}

struct Fixture {
  Topology topology;
  Catalog catalog;
  PlacementMap placement;
  Adjacency adjacency;
  ClusterMap clusters;

  Fixture(Topology t, PlacementMap p, Adjacency a)
      : topology(std::move(t)), catalog(p.catalog()), placement(std::move(p)), adjacency(std::move(a)) {
    clusters = form_all_clusters(topology, placement.counts());
  }
  SearchView view() const { return {topology, adjacency, clusters, placement}; }
};

Fixture chain_with_holder(int levels, std::vector<NodeId> holders) {
  Topology t = chain(levels);
  PlacementMap p(make_catalog(1, 2.0), t.size());
  for (NodeId h : holders) p.add(h, 0);
  Adjacency a = Adjacency::all_active(t);
  return Fixture(std::move(t), std::move(p), std::move(a));
}

constexpr ChunkKey kTarget{0, 0};

// Random small instance: peers per level, proxies, placement density and
// adjacency size all drawn from `rng`.
Fixture random_instance(Rng& rng, int max_levels) {
  HybridConfig c;
  c.levels = std::uniform_int_distribution<int>(3, max_levels)(rng);
  c.peers_per_level = std::uniform_int_distribution<int>(1, 6)(rng);
  c.proxy_count = std::uniform_int_distribution<int>(1, 3)(rng);
  c.archive_count = std::uniform_int_distribution<int>(1, 2)(rng);
  c.seed = rng();
  Topology t = build_hybrid(c);
  const double share = std::uniform_real_distribution<double>(0.02, 0.6)(rng);
  PlacementMap p = place_initial(make_catalog(2, 4.0), t, share, rng());
  const int size = std::uniform_int_distribution<int>(1, 6)(rng);
  Adjacency a = sample_adjacency(t, size, rng);
  return Fixture(std::move(t), std::move(p), std::move(a));
}

}  // namespace

TEST(HeuristicSearch, FirstHeadHolds) {
  auto f = chain_with_holder(6, {4});
  const NodeId proxy = f.topology.proxies().front();
  const auto r = heuristic_path_search(f.view(), {kTarget, proxy}, {0, 1});
  ASSERT_TRUE(std::holds_alternative<Found>(r));
  EXPECT_EQ(std::get<Found>(r).hop_count, 1);
  EXPECT_EQ(std::get<Found>(r).source, 4u);
  EXPECT_DOUBLE_EQ(std::get<Found>(r).elapsed, kDefaultQueryLatency);
}

TEST(HeuristicSearch, ChainDepthIsHopCount) {
  for (int d = 1; d <= 6; ++d) {
    const int levels = 8;
    const NodeId holder = static_cast<NodeId>(levels - 1 - d);
    auto f = chain_with_holder(levels, {holder});
    const auto r = heuristic_path_search(f.view(), {kTarget, f.topology.proxies().front()}, {0, 1});
    ASSERT_TRUE(std::holds_alternative<Found>(r)) << d;
    const auto& found = std::get<Found>(r);
    EXPECT_EQ(found.hop_count, d);
    EXPECT_EQ(found.path.size(), static_cast<std::size_t>(d));
    EXPECT_EQ(found.path.back(), holder);
  }
}

TEST(HeuristicSearch, HeldByNobody) {
  auto f = chain_with_holder(6, {});
  const auto r = heuristic_path_search(f.view(), {kTarget, f.topology.proxies().front()}, {3.0, 0.5});
  ASSERT_TRUE(std::holds_alternative<NotFound>(r));
  EXPECT_EQ(std::get<NotFound>(r).elapsed, 0.5);
}

TEST(HeuristicSearch, WindowBoundsDepth) {
  auto f = chain_with_holder(8, {4});  // 3 levels below the proxy
  const NodeId proxy = f.topology.proxies().front();
  EXPECT_TRUE(std::holds_alternative<NotFound>(heuristic_path_search(f.view(), {kTarget, proxy}, {0, 0.025}, 0.01)));
  EXPECT_TRUE(std::holds_alternative<Found>(heuristic_path_search(f.view(), {kTarget, proxy}, {0, 0.03}, 0.01)));
}

TEST(HeuristicSearch, DeadLinkStopsDescent) {
  auto f = chain_with_holder(6, {1});
  // Cut 4 <-> 3 from both ends: 3 goes silent, 4 drops its first down slot.
  f.adjacency.set_mask(3, 0);
  f.adjacency.set_mask(4, f.adjacency.mask(4) & ~std::uint64_t{1});
  const auto r = heuristic_path_search(f.view(), {kTarget, f.topology.proxies().front()}, {0, 1});
  EXPECT_TRUE(std::holds_alternative<NotFound>(r));
  EXPECT_FALSE(bfs_distance_oracle(f.view(), f.topology.proxies().front(), {1}));
}

TEST(HeuristicSearch, OriginMustBeProxy) {
  auto f = chain_with_holder(5, {1});
  EXPECT_THROW(heuristic_path_search(f.view(), {kTarget, 2}, {0, 1}), InvalidArgument);
  EXPECT_THROW(heuristic_path_search(f.view(), {kTarget, f.topology.proxies().front()}, {0, 0}), InvalidArgument);
}

TEST(HeuristicSearch, IntraClusterMemberFound) {
  // Default topology, level 13 fully interconnected; only a non-head member holds.
  Topology t = build_hybrid({});
  PlacementMap p(make_catalog(1, 2.0), t.size());
  const auto peers = t.peers_at(13);
  p.add(peers[0], 1);  // makes peers[0] the head
  p.add(peers[2], 0);
  Fixture f(std::move(t), std::move(p), Adjacency());
  f.adjacency = Adjacency::all_active(f.topology);
  const auto r = heuristic_path_search(f.view(), {kTarget, f.topology.proxies().front()}, {0, 1});
  ASSERT_TRUE(std::holds_alternative<Found>(r));
  const auto& found = std::get<Found>(r);
  EXPECT_EQ(found.hop_count, 1);
  EXPECT_EQ(found.source, peers[2]);
  EXPECT_EQ(found.path, (std::vector<NodeId>{peers[0], peers[2]}));
}

TEST(BfsOracle, AdjacentAndDisconnected) {
  auto f = chain_with_holder(5, {3});
  const NodeId proxy = f.topology.proxies().front();
  EXPECT_EQ(bfs_distance_oracle(f.view(), proxy, {3}), 1);
  EXPECT_EQ(bfs_distance_oracle(f.view(), proxy, {1}), 3);
  for (const auto& n : f.topology.nodes()) f.adjacency.set_mask(n.id, 0);
  EXPECT_FALSE(bfs_distance_oracle(f.view(), proxy, {3}));
}

TEST(BfsOracle, AgreesWithSearchOnRandomInstances) {
  Rng rng(555);
  int found = 0, not_found = 0;
  for (int i = 0; i < 1000; ++i) {
    const Fixture f = random_instance(rng, 5);
    const auto proxies = f.topology.proxies();
    const NodeId origin = proxies[std::uniform_int_distribution<std::size_t>(0, proxies.size() - 1)(rng)];
    const ChunkKey key = f.catalog.key(std::uniform_int_distribution<std::size_t>(0, f.catalog.total_chunks() - 1)(rng));
    const double latency = 0.01;
    const SessionWindow w{0.0, std::uniform_int_distribution<int>(1, 5)(rng) * latency};
    const auto r = heuristic_path_search(f.view(), {key, origin}, w, latency);
    const auto oracle = bfs_distance_oracle(f.view(), origin, f.placement.holders(key));
    const int max_depth = static_cast<int>(std::floor(w.duration / latency + 1e-9));
    if (const auto* hit = std::get_if<Found>(&r)) {
      ++found;
      ASSERT_TRUE(oracle) << i;
      ASSERT_EQ(hit->hop_count, *oracle) << i;
      ASSERT_GE(hit->hop_count, 1);
      ASSERT_TRUE(f.placement.holds(hit->source, key));
    } else {
      ++not_found;
      ASSERT_TRUE(!oracle || *oracle > max_depth) << i;
      ASSERT_EQ(std::get<NotFound>(r).elapsed, w.duration);
    }
  }
  EXPECT_GT(found, 100);
  EXPECT_GT(not_found, 10);
}

TEST(HeuristicSearch, PathDescendsOneLevelPerHop) {
  Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    const Fixture f = random_instance(rng, 8);
    const ChunkKey key{1, 2};
    const NodeId origin = f.topology.proxies().front();
    const auto r = heuristic_path_search(f.view(), {key, origin}, {0, 1});
    if (const auto* hit = std::get_if<Found>(&r)) {
      const int heads = hit->hop_count;
      ASSERT_GE(hit->path.size(), static_cast<std::size_t>(heads));
      for (int h = 0; h < heads; ++h)
        ASSERT_EQ(f.topology.node(hit->path[static_cast<std::size_t>(h)]).level, f.topology.top_level() - 1 - h);
      ASSERT_EQ(hit->path.back(), hit->source);
      ASSERT_NEAR(hit->elapsed, heads * kDefaultQueryLatency, 1e-12);
    }
  }
}

TEST(HeuristicSearch, Deterministic) {
  Rng a(4), b(4);
  const Fixture f = random_instance(a, 8);
  const Fixture g = random_instance(b, 8);
  const ChunkKey key{0, 1};
  const auto r1 = heuristic_path_search(f.view(), {key, f.topology.proxies().front()}, {0, 1});
  const auto r2 = heuristic_path_search(g.view(), {key, g.topology.proxies().front()}, {0, 1});
  ASSERT_EQ(r1.index(), r2.index());
  if (r1.index() == 0) {
    EXPECT_EQ(std::get<Found>(r1).path, std::get<Found>(r2).path);
    EXPECT_EQ(std::get<Found>(r1).hop_count, std::get<Found>(r2).hop_count);
  }
}

TEST(TransferLinks, ChainCapacities) {
  auto f = chain_with_holder(5, {1});
  const NodeId proxy = f.topology.proxies().front();
  const auto r = heuristic_path_search(f.view(), {kTarget, proxy}, {0, 1});
  ASSERT_TRUE(std::holds_alternative<Found>(r));
  const auto links = transfer_links(f.topology, proxy, std::get<Found>(r));
  EXPECT_EQ(links, (std::vector<double>{600, 600, 600}));
}
