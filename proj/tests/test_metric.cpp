#include <gtest/gtest.h>

#include <algorithm>

#include "aorrt/core/random.hpp"
#include "aorrt/metric/nn_index.hpp"

using namespace aorrt;

namespace {

NodeId linear_nearest(const std::vector<std::pair<NodeId, AugmentedState>>& pts, const AugmentedState& q,
                      const MetricWeights& w) {
  NodeId best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (const auto& [id, y] : pts) {
    const double d = squared_dist(y, q, w);
    if (d < bd || (d == bd && id < best)) {
      bd = d;
      best = id;
    }
  }
  return best;
}

}  // namespace

TEST(Dist, Identity) {
  const AugmentedState a{State{1.0, 2.0}, 3.0};
  EXPECT_EQ(dist(a, a, {1.0, 1.0}), 0.0);
}

TEST(Dist, ThreeFourTwelveThirteen) {
  EXPECT_DOUBLE_EQ(dist({State{0.0, 0.0}, 0.0}, {State{3.0, 4.0}, 12.0}, {1.0, 1.0}), 13.0);
}

TEST(Dist, ZeroCostWeightIgnoresCost) {
  EXPECT_DOUBLE_EQ(dist({State{0.0, 0.0}, 0.0}, {State{3.0, 4.0}, 99.0}, {4.0, 0.0}), 10.0);
}

TEST(Dist, WeightValidation) {
  EXPECT_THROW((MetricWeights{0.0, 0.0}.validate()), ParameterError);
  EXPECT_THROW((MetricWeights{-1.0, 1.0}.validate()), ParameterError);
  EXPECT_NO_THROW((MetricWeights{0.0, 1.0}.validate()));
  EXPECT_THROW(dist({State{0.0}, 0.0}, {State{0.0, 0.0}, 0.0}, {1.0, 1.0}), ParameterError);
}

TEST(NnIndex, TieGoesToLowerId) {
  NnIndex idx(1);
  idx.insert(7, {State{1.0}, 0.0});
  idx.insert(3, {State{-1.0}, 0.0});
  EXPECT_EQ(idx.nearest({State{0.0}, 0.0}, {1.0, 1.0}), 3u);
}

TEST(NnIndex, DuplicateIdThrows) {
  NnIndex idx(2);
  idx.insert(1, {State{0.0, 0.0}, 0.0});
  EXPECT_THROW(idx.insert(1, {State{1.0, 1.0}, 0.0}), ParameterError);
  EXPECT_THROW(idx.insert(2, {State{1.0}, 0.0}), ParameterError);
}

TEST(NnIndex, SingleEntryAndExactHit) {
  NnIndex idx(2);
  idx.insert(5, {State{9.0, 9.0}, 1.0});
  EXPECT_EQ(idx.nearest({State{-3.0, 0.0}, 40.0}, {1.0, 1.0}), 5u);
  idx.insert(6, {State{1.0, 1.0}, 2.0});
  EXPECT_EQ(idx.nearest({State{1.0, 1.0}, 2.0}, {1.0, 1.0}), 6u);
}

TEST(NnIndex, EmptyQueryThrows) {
  NnIndex idx(2);
  EXPECT_THROW(idx.nearest({State{0.0, 0.0}, 0.0}, {1.0, 1.0}), ParameterError);
}

TEST(NnIndex, AgreesWithLinearScan) {
  RandomStream rng(11);
  NnIndex idx(3);
  std::vector<std::pair<NodeId, AugmentedState>> pts;
  for (NodeId i = 0; i < 10000; ++i) {
    const AugmentedState y{State{rng.uniform(0, 10), rng.uniform(0, 10), rng.uniform(-2, 2)}, rng.uniform(0, 30)};
    idx.insert(i, y);
    pts.push_back({i, y});
  }
  for (const MetricWeights w : {MetricWeights{1.0, 1.0}, MetricWeights{1.0, 0.2}, MetricWeights{1.0, 0.0}}) {
    for (int q = 0; q < 1000; ++q) {
      const AugmentedState y{State{rng.uniform(-1, 11), rng.uniform(-1, 11), rng.uniform(-3, 3)}, rng.uniform(0, 35)};
      ASSERT_EQ(idx.nearest(y, w), linear_nearest(pts, y, w));
    }
  }
}

TEST(NnIndex, RemoveAboveCost) {
  NnIndex idx(1);
  idx.insert(0, {State{0.0}, 0.0});
  idx.insert(1, {State{1.0}, 5.0});
  idx.insert(2, {State{2.0}, 9.0});
  EXPECT_EQ(idx.remove_above_cost(9.0), 0u);
  EXPECT_EQ(idx.remove_above_cost(4.0), 2u);
  EXPECT_EQ(idx.size(), 1u);
  EXPECT_FALSE(idx.contains(1));
  EXPECT_EQ(idx.nearest({State{2.0}, 9.0}, {1.0, 1.0}), 0u);
}

TEST(NnIndex, RemovalMatchesRebuiltIndex) {
  RandomStream rng(12);
  for (int round = 0; round < 20; ++round) {
    NnIndex idx(2);
    std::vector<std::pair<NodeId, AugmentedState>> pts;
    for (NodeId i = 0; i < 800; ++i) {
      const AugmentedState y{State{rng.uniform(0, 1), rng.uniform(0, 1)}, rng.uniform(0, 10)};
      idx.insert(i, y);
      pts.push_back({i, y});
    }
    const double thr = rng.uniform(0, 10);
    const std::size_t removed = idx.remove_above_cost(thr);
    std::vector<std::pair<NodeId, AugmentedState>> kept;
    std::vector<NodeId> kept_ids;
    for (const auto& p : pts) {
      if (p.second.c <= thr) {
        kept.push_back(p);
        kept_ids.push_back(p.first);
      }
    }
    ASSERT_EQ(removed, pts.size() - kept.size());
    std::vector<NodeId> live = idx.live_ids();
    std::sort(live.begin(), live.end());
    ASSERT_EQ(live, kept_ids);
    if (kept.empty()) continue;
    for (int q = 0; q < 100; ++q) {
      const AugmentedState y{State{rng.uniform(0, 1), rng.uniform(0, 1)}, rng.uniform(0, 10)};
      ASSERT_EQ(idx.nearest(y, {1.0, 0.5}), linear_nearest(kept, y, {1.0, 0.5}));
    }
  }
}

TEST(NnIndex, WithinVisitsExactlyTheBall) {
  RandomStream rng(13);
  NnIndex idx(2);
  std::vector<std::pair<NodeId, AugmentedState>> pts;
  for (NodeId i = 0; i < 2000; ++i) {
    const AugmentedState y{State{rng.uniform(0, 1), rng.uniform(0, 1)}, rng.uniform(0, 1)};
    idx.insert(i, y);
    pts.push_back({i, y});
  }
  const AugmentedState q{State{0.5, 0.5}, 0.5};
  std::vector<NodeId> got, want;
  idx.within(q, 0.2, {1.0, 1.0}, [&](NodeId id, double) { got.push_back(id); });
  for (const auto& [id, y] : pts) {
    if (squared_dist(y, q, {1.0, 1.0}) <= 0.04) want.push_back(id);
  }
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, want);
  EXPECT_FALSE(want.empty());
}

TEST(NnIndex, EraseAndReinsertionOrder) {
  NnIndex idx(1);
  for (NodeId i = 0; i < 100; ++i) idx.insert(i, {State{static_cast<double>(i)}, 0.0});
  EXPECT_TRUE(idx.erase(50));
  EXPECT_FALSE(idx.erase(50));
  EXPECT_EQ(idx.nearest({State{50.0}, 0.0}, {1.0, 1.0}), 49u);
  EXPECT_EQ(idx.size(), 99u);
}
