#include <gtest/gtest.h>

#include <cmath>

#include "vodmesh/engine.hpp"

using namespace vodmesh;

namespace {

SimConfig small_config() {
  SimConfig c;
  c.sim_time = 120.0;
  c.levels = 8;
  c.asset_count = 5;
  c.asset_duration = 60.0;
  return c;
}

}  // namespace

TEST(EventQueue, OrdersByTimeThenInsertion) {
  EventQueue q;
  q.push(2.0, EventKind::PortRelease, 1);
  q.push(1.0, EventKind::RequestArrival, 2);
  q.push(2.0, EventKind::SearchComplete, 3);
  q.push(1.0, EventKind::TransferComplete, 4);
  std::vector<std::uint32_t> order;
  while (!q.empty()) order.push_back(q.pop().session);
  EXPECT_EQ(order, (std::vector<std::uint32_t>{2, 4, 1, 3}));
}

TEST(Arrivals, ZeroRateIsEmpty) {
  Rng rng(1);
  std::vector<double> rates{0.0};
  EXPECT_TRUE(generate_arrivals(rates, 480, rng).empty());
}

TEST(Arrivals, PoissonCount) {
  Rng rng(2);
  std::vector<double> rates{10.0};
  const auto a = generate_arrivals(rates, 480, rng);
  EXPECT_LE(std::abs(static_cast<double>(a.size()) - 4800.0), 3 * std::sqrt(4800.0));
  for (std::size_t i = 1; i < a.size(); ++i) ASSERT_LE(a[i - 1].time, a[i].time);
  EXPECT_LT(a.back().time, 480.0);
}

TEST(Arrivals, ClassesMergeInOrder) {
  Rng rng(3);
  std::vector<double> rates{1.0, 3.0};
  const auto a = generate_arrivals(rates, 1000, rng);
  int c1 = 0;
  for (const auto& x : a) c1 += x.service_class == 1;
  const double n1 = 3000.0, n0 = 1000.0;
  EXPECT_LE(std::abs(c1 - n1), 3 * std::sqrt(n1));
  EXPECT_LE(std::abs(static_cast<double>(a.size() - c1) - n0), 3 * std::sqrt(n0));
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end(), [](auto& x, auto& y) { return x.time < y.time; }));
}

TEST(Arrivals, RejectsNegativeRate) {
  Rng rng(1);
  std::vector<double> rates{1.0, -0.5};
  EXPECT_THROW(generate_arrivals(rates, 10, rng), InvalidConfig);
}

TEST(Arrivals, BurstPresetReachesTwoHundred) {
  const auto r = run(burst_preset());
  std::uint64_t by = 0;
  for (const auto& [t, n] : r.cumulative_requests)
    if (t <= 0.36) by = n;
  EXPECT_LE(std::abs(static_cast<double>(by) - 200.0), 3 * std::sqrt(200.0));
}

TEST(Admission, FirstRequestAdmitted) {
  ProxyState p;
  p.ports = analytic::ProxyPortPlan(20, 10, 2);
  Rng rng(1);
  const auto r = admit_request(p, 0, 600, rng);
  ASSERT_TRUE(r.partition);
  EXPECT_EQ(p.ports.occupancy(*r.partition), 1);
  EXPECT_EQ(r.probes, 1);
}

TEST(Admission, ElevenArrivalsOnTenPorts) {
  ProxyState p;
  p.ports = analytic::ProxyPortPlan(1, 10, 1);
  Rng rng(1);
  int blocked = 0;
  for (int i = 0; i < 11; ++i) blocked += !admit_request(p, 0, 600, rng).partition;
  EXPECT_EQ(blocked, 1);
  EXPECT_EQ(p.ports.occupancy(0), 10);
}

TEST(Admission, ThresholdRefusesWithoutProbing) {
  ProxyState p;
  p.ports = analytic::ProxyPortPlan(4, 10, 1);
  p.policy = {120000, 3};
  Rng rng(1);
  for (int i = 0; i < 3; ++i) ASSERT_TRUE(admit_request(p, 0, 600, rng).partition);
  const auto r = admit_request(p, 0, 600, rng);
  EXPECT_FALSE(r.partition);
  EXPECT_EQ(r.probes, 0);
}

TEST(Admission, SequentialProbeWrapsAround) {
  ProxyState p;
  p.ports = analytic::ProxyPortPlan(3, 1, 1);
  Rng rng(9);
  for (int i = 0; i < 3; ++i) ASSERT_TRUE(admit_request(p, 0, 600, rng).partition);
  const auto r = admit_request(p, 0, 600, rng);
  EXPECT_FALSE(r.partition);
  EXPECT_EQ(r.probes, 3);
  EXPECT_TRUE(p.ports.invariants_hold());
}

TEST(TransferTime, WorkedValues) {
  std::vector<double> one{600}, fast{800}, two{800, 600}, none{}, broken{600, 0};
  EXPECT_NEAR(transfer_time(600, one, 0.01), 1.01, 1e-12);
  EXPECT_NEAR(transfer_time(600, fast, 0.01), 0.76, 1e-12);
  EXPECT_NEAR(transfer_time(600, two, 0.01), 1.77, 1e-12);
  EXPECT_EQ(transfer_time(600, none, 0.01), 0.0);
  EXPECT_THROW(transfer_time(600, broken, 0.01), InvalidTopology);
}

TEST(Run, ZeroRatesGiveEmptyReport) {
  SimConfig c = small_config();
  c.class_rates = {0.0, 0.0};
  const auto r = run(c);
  EXPECT_EQ(r.totals().arrivals, 0u);
  EXPECT_TRUE(r.cumulative_requests.empty());
  EXPECT_TRUE(r.throughput.empty());
  EXPECT_TRUE(r.hops.empty());
}

TEST(Run, Conservation) {
  for (std::uint64_t seed : {1, 2, 3}) {
    SimConfig c = small_config();
    c.seed = seed;
    const auto r = run(c);
    for (const auto& m : r.classes) {
      EXPECT_EQ(m.arrivals, m.admitted + m.blocked);
      EXPECT_EQ(m.admitted, m.cache_hits + m.cache_misses);
      EXPECT_LE(m.failed_content, m.cache_misses);
    }
    const auto t = r.totals();
    EXPECT_GT(t.arrivals, 0u);
    EXPECT_EQ(r.histogram_mass(), r.searches);
    EXPECT_EQ(r.searches, t.cache_misses);
    EXPECT_EQ(r.cumulative_requests.size(), t.arrivals);
    // Each completed transfer is counted once at its source and once at the top.
    double served = 0.0;
    for (double v : r.level_source_kbit) served += v;
    EXPECT_NEAR(served, r.level_volume_kbit.back(), 1e-6);
  }
}

TEST(Run, ProbeCountsMatchAdmissions) {
  const auto r = run(small_config());
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    std::uint64_t probes = 0, full = 0;
    for (const auto& p : r.partitions[c]) {
      probes += p.probes;
      full += p.full;
    }
    EXPECT_EQ(probes - full, r.classes[c].admitted);
  }
}

TEST(Run, DeterministicPerSeed) {
  const SimConfig c = small_config();
  EXPECT_TRUE(run(c).same_measurements(run(c)));
  SimConfig d = c;
  d.seed = 2;
  EXPECT_FALSE(run(c).same_measurements(run(d)));
}

TEST(Run, RejectsInvalidConfigBeforeStart) {
  SimConfig c = small_config();
  c.adjacency_size = 7;
  EXPECT_THROW(run(c), InvalidConfig);
  c = small_config();
  c.class_rates = {-1.0};
  EXPECT_THROW(run(c), InvalidConfig);
}

TEST(Run, FailedSearchesCountedWithoutVolume) {
  SimConfig c = small_config();
  c.session_window = 0.01;  // one level deep
  c.placement = PlacementProfile::Uniform;
  c.share_fraction = 0.02;
  const auto r = run(c);
  const auto t = r.totals();
  EXPECT_GT(t.failed_content, 0u);
  EXPECT_EQ(r.hops.at(c.adjacency_size).at(0), t.failed_content);
}

TEST(Run, CacheHitsMoveNoVolume) {
  SimConfig c = small_config();
  c.asset_count = 1;
  c.asset_duration = 1.0;  // one chunk: after the first fetch everything hits
  c.class_rates = {0.05};
  const auto r = run(c);
  const auto t = r.totals();
  // Misses are the requests that arrive before their proxy's first fill lands.
  EXPECT_GT(t.cache_hits, 0u);
  EXPECT_LT(t.cache_misses * 10, t.admitted);
  const double fetched = r.level_volume_kbit.back() / 600.0;
  EXPECT_EQ(fetched, std::round(fetched));
  EXPECT_GE(fetched, c.proxy_count);
  EXPECT_LE(fetched, static_cast<double>(t.cache_misses - t.failed_content));
}

TEST(Run, FixedHoldingModeRuns) {
  SimConfig c = small_config();
  c.holding = HoldingMode::Fixed;
  const auto r = run(c);
  EXPECT_GT(r.totals().admitted, 0u);
}

TEST(Run, ThroughputBucketsCoverHorizon) {
  SimConfig c = small_config();
  c.viewers_min = c.viewers_max = 25;
  const auto r = run(c);
  ASSERT_EQ(r.throughput.size(), 120u);
  double kbit = 0.0;
  for (const auto& s : r.throughput) {
    EXPECT_EQ(s.cluster_size, 25);
    EXPECT_GE(s.kbps, 0.0);
    kbit += s.kbps * c.throughput_bucket;
  }
  EXPECT_NEAR(kbit, r.delivered_kbit, 1e-6 * std::max(1.0, r.delivered_kbit));
}

TEST(Run, ErlangConvergence) {
  const SimConfig c = erlang_calibration(SimConfig{}, 5.0, 200000);
  const auto r = run(c);
  EXPECT_GE(r.totals().arrivals, 200000u);
  const double expected = analytic::erlang_b(5.0, 10);
  EXPECT_LE(std::abs(r.blocking_probability() - expected) / expected, 0.10);
}

TEST(Sweep, CountsAndDeterminism) {
  SimConfig c;
  c.levels = 10;
  const World w = build_world(c);
  const auto a = sweep_adjacency(w, {1, 3, 6}, 500);
  const auto b = sweep_adjacency(w, {1, 3, 6}, 500);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 3u);
  for (const auto& s : a) {
    std::uint64_t mass = 0;
    for (const auto& [hop, n] : s.histogram) mass += n;
    EXPECT_EQ(mass, 500u);
    EXPECT_EQ(s.trials, 500u);
    EXPECT_EQ(s.found, 500u - (s.histogram.count(0) ? s.histogram.at(0) : 0));
  }
}

TEST(Sweep, SizeResultIndependentOfCompanions) {
  const World w = build_world(SimConfig{});
  EXPECT_EQ(sweep_adjacency(w, {2}, 300).front(), sweep_adjacency(w, {5, 2}, 300).back());
}

TEST(Sweep, RejectsBadSizes) {
  const World w = build_world(SimConfig{});
  EXPECT_THROW(sweep_adjacency(w, {0}, 10), InvalidArgument);
  EXPECT_THROW(sweep_adjacency(w, {7}, 10), InvalidArgument);
  EXPECT_THROW(sweep_adjacency(w, {1}, 0), InvalidArgument);
}
