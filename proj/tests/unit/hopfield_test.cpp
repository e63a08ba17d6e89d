#include "spcluster/hopfield.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "spcluster/paper_fixture.hpp"
#include "test_helpers.hpp"

namespace spcluster {
namespace {

using testing_support::to_connection;
using testing_support::to_oracle;

BipolarState state(std::initializer_list<int> v) {
  std::vector<std::int8_t> x;
  for (int c : v) x.push_back(static_cast<std::int8_t>(c));
  return BipolarState(x);
}

ConnectionMatrix learned_reference() { return hebbian_learn(fixture::representatives()); }

TEST(Bipolar, FromBinary) {
  const std::vector<Bit> zeros{0, 0, 0};
  EXPECT_EQ(bipolar_from_binary(zeros), state({-1, -1, -1}));
  const std::vector<Bit> mixed{1, 0, 1};
  EXPECT_EQ(bipolar_from_binary(mixed), state({1, -1, 1}));
}

TEST(Bipolar, ExhaustiveRoundTrip) {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::uint64_t idx = 0; idx < (1U << n); ++idx) {
      std::vector<Bit> bits(n);
      for (std::size_t j = 0; j < n; ++j) bits[j] = (idx >> j) & 1U;
      const auto s = bipolar_from_binary(bits);
      ASSERT_EQ(binary_from_bipolar(s), bits);
      ASSERT_EQ(s.index(), idx);
    }
  }
}

TEST(Bipolar, RejectsInvalidComponents) {
  EXPECT_THROW(BipolarState(std::vector<std::int8_t>{1, 0}), InvalidArgument);
  const std::vector<Bit> bad{0, 2};
  EXPECT_THROW(bipolar_from_binary(bad), InvalidArgument);
}

TEST(Hebbian, ReferenceVectorsAgreeWithPrintedMatrixOffTheTypos) {
  const auto w = learned_reference();
  const auto& printed = fixture::printed_matrix();
  std::vector<std::pair<std::size_t, std::size_t>> differ;
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = 0; j < 10; ++j) {
      if (w(i, j) != printed(i, j)) differ.emplace_back(i, j);
    }
  }
  // The only disagreements are where the printed matrix contradicts itself.
  EXPECT_EQ(differ, fixture::printed_asymmetries());
  EXPECT_EQ(differ, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 4}, {0, 7}}));
  for (auto [i, j] : differ) EXPECT_EQ(w(i, j), printed(j, i));
}

TEST(Hebbian, MatchesNaiveOracleOnReference) {
  std::vector<std::vector<int>> reps;
  for (const auto& r : fixture::representatives()) reps.emplace_back(r.begin(), r.end());
  EXPECT_EQ(to_oracle(learned_reference()), oracle::hebb(reps));
}

TEST(Hebbian, SinglePatternAllOnes) {
  const std::vector<std::vector<Bit>> p{{1, 1, 1}};
  const auto w = hebbian_learn(p);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(w(i, j), i == j ? 0 : 1);
  }
}

TEST(Hebbian, RandomPatternsMatchOracle) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    const auto pats = oracle::random_bits(2, 6, rng);
    const auto w = hebbian_learn(pats);
    ASSERT_EQ(to_oracle(w), oracle::hebb(pats));
    ASSERT_NO_THROW(check_convergent(w));
  }
}

TEST(Hebbian, EntryBoundsAndParity) {
  std::mt19937_64 rng(5);
  for (std::size_t m = 1; m <= 7; ++m) {
    const auto w = hebbian_learn(oracle::random_bits(m, 9, rng));
    for (std::size_t i = 0; i < 9; ++i) {
      for (std::size_t j = 0; j < 9; ++j) {
        if (i == j) continue;
        EXPECT_LE(std::abs(w(i, j)), static_cast<int>(m));
        EXPECT_EQ((w(i, j) - static_cast<int>(m)) % 2, 0);
      }
    }
  }
}

TEST(Hebbian, RejectsBadInput) {
  const std::vector<std::vector<Bit>> none;
  EXPECT_THROW(hebbian_learn(none), InvalidArgument);
  const std::vector<std::vector<Bit>> ragged{{1, 0}, {1}};
  EXPECT_THROW(hebbian_learn(ragged), LengthMismatch);
}

TEST(LocalField, ZeroMatrix) {
  const ConnectionMatrix w(4);
  const auto s = state({1, -1, 1, 1});
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(local_field(s, w, i), 0);
}

TEST(LocalField, SignAgreesAtReferenceFixedPoint) {
  const auto w = learned_reference();
  const auto p3 = bipolar_from_binary(fixture::printed_fixed_points()[2]);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(local_field(p3, w, i) >= 0 ? 1 : -1, p3[i]);
}

TEST(LocalField, RandomMatchesOracle) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    const auto m = oracle::random_symmetric(7, 5, rng);
    const auto w = to_connection(m);
    const std::uint64_t s = rng() & 0x7F;
    for (std::size_t i = 0; i < 7; ++i) ASSERT_EQ(local_field(BipolarState::from_index(s, 7), w, i), oracle::field(m, s, i));
  }
}

TEST(Sweep, FixedPointIsUnchanged) {
  const auto w = learned_reference();
  for (const auto& p : fixture::printed_fixed_points()) {
    const auto s = bipolar_from_binary(p);
    const auto r = sweep(s, w);
    EXPECT_FALSE(r.changed);
    EXPECT_EQ(r.state, s);
  }
}

TEST(Sweep, HandTraceTwoNeurons) {
  const ConnectionMatrix w(2, {0, 1, 1, 0});
  const auto r = sweep(state({-1, 1}), w);
  EXPECT_TRUE(r.changed);
  EXPECT_EQ(r.state, state({1, 1}));
}

TEST(Sweep, UsesUpdatedEarlierComponents) {
  // x0 flips to +1 first; x1 then sees +1 from x0. A synchronous update
  // would have used the old x0 = -1 and produced -1.
  const ConnectionMatrix v(3, {0, 0, 0, 1, 0, 0, 0, 0, 0});
  // x0 field 0 -> +1; x1 field = x0 = +1 -> +1; x2 field 0 -> +1.
  EXPECT_EQ(sweep(state({-1, -1, -1}), v).state, state({1, 1, 1}));
}

TEST(Converge, AllReferenceStartsConverge) {
  const auto w = learned_reference();
  for (std::uint64_t idx = 0; idx < 1024; ++idx) {
    const auto r = converge(BipolarState::from_index(idx, 10), w);
    ASSERT_TRUE(r.converged) << idx;
    ASSERT_FALSE(sweep(r.fixed_point, w).changed);
  }
}

TEST(Converge, FixedPointStartTakesOneSweep) {
  const auto w = learned_reference();
  for (const auto& p : fixture::printed_fixed_points()) {
    const auto r = converge(bipolar_from_binary(p), w);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.sweeps_used, 1U);
    EXPECT_EQ(binary_from_bipolar(r.fixed_point), p);
  }
}

TEST(Converge, ZeroMatrixGoesToAllPlus) {
  const ConnectionMatrix w(5);
  const auto r = converge(state({-1, 1, -1, -1, 1}), w);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.fixed_point, state({1, 1, 1, 1, 1}));
  EXPECT_EQ(r.sweeps_used, 2U);
}

TEST(Converge, ValidatesMatrix) {
  EXPECT_THROW(converge(state({1, 1}), ConnectionMatrix(2, {0, 1, 2, 0})), NotSymmetric);
  EXPECT_THROW(converge(state({1, 1}), ConnectionMatrix(2, {1, 0, 0, 0})), NonzeroDiagonal);
  EXPECT_THROW(converge(state({1, 1}), ConnectionMatrix(2), 0), InvalidArgument);
  EXPECT_THROW(converge(state({1, 1, 1}), ConnectionMatrix(2)), LengthMismatch);
}

TEST(Converge, BudgetExhaustionIsReported) {
  const ConnectionMatrix w(3);
  const auto r = converge(state({-1, -1, -1}), w, 1);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.sweeps_used, 1U);
}

TEST(Converge, ReconvergingIsANoOp) {
  const auto w = learned_reference();
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 100; ++rep) {
    const auto first = converge(BipolarState::from_index(rng() & 1023, 10), w);
    const auto again = converge(first.fixed_point, w);
    EXPECT_EQ(again.fixed_point, first.fixed_point);
    EXPECT_EQ(again.sweeps_used, 1U);
  }
}

TEST(Energy, Examples) {
  EXPECT_EQ(energy(state({1, -1, 1}), ConnectionMatrix(3)), 0.0);
  EXPECT_EQ(energy(state({1, 1}), ConnectionMatrix(2, {0, 1, 1, 0})), -1.0);
}

TEST(Energy, MatchesOracle) {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 50; ++rep) {
    const auto m = oracle::random_symmetric(6, 4, rng);
    const std::uint64_t s = rng() & 63;
    EXPECT_DOUBLE_EQ(energy(BipolarState::from_index(s, 6), to_connection(m)), oracle::energy(m, s));
  }
}

TEST(Energy, NonIncreasingAlongReferenceTrajectories) {
  const auto w = learned_reference();
  for (std::uint64_t idx = 0; idx < 1024; ++idx) {
    double last = energy(BipolarState::from_index(idx, 10), w);
    converge(BipolarState::from_index(idx, 10), w, kDefaultMaxSweeps, [&](std::size_t, const BipolarState& s) {
      const double e = energy(s, w);
      ASSERT_LE(e, last);
      last = e;
    });
  }
}

TEST(EnumerateFixedPoints, ReferenceNetworkHasExactlyThePrintedFour) {
  const auto fps = enumerate_fixed_points(learned_reference());
  std::vector<std::uint64_t> idx;
  for (const auto& p : fps) idx.push_back(p.index());
  EXPECT_EQ(idx, std::vector<std::uint64_t>(fixture::kEnumeratedFixedPointIndices.begin(),
                                            fixture::kEnumeratedFixedPointIndices.end()));
  for (const auto& p : fixture::printed_fixed_points()) {
    EXPECT_NE(std::find(fps.begin(), fps.end(), bipolar_from_binary(p)), fps.end());
  }
  // The verbatim printed matrix has the same fixed points.
  EXPECT_EQ(enumerate_fixed_points(fixture::printed_matrix()), fps);
}

TEST(EnumerateFixedPoints, ZeroMatrix) {
  const auto fps = enumerate_fixed_points(ConnectionMatrix(6));
  ASSERT_EQ(fps.size(), 1U);
  EXPECT_EQ(fps.front().index(), 63U);
}

TEST(EnumerateFixedPoints, StoredSinglePatternIsFixed) {
  std::mt19937_64 rng(23);
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto pat = oracle::random_bits(1, n, rng);
    const auto fps = enumerate_fixed_points(hebbian_learn(pat));
    const std::vector<Bit> bits(pat[0].begin(), pat[0].end());
    EXPECT_NE(std::find(fps.begin(), fps.end(), bipolar_from_binary(bits)), fps.end());
  }
}

TEST(EnumerateFixedPoints, MatchesOracleAndIsWorkerIndependent) {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 20; ++rep) {
    const auto m = oracle::random_symmetric(9, 3, rng);
    const auto serial = enumerate_fixed_points(to_connection(m), 1);
    const auto parallel = enumerate_fixed_points(to_connection(m), 4);
    EXPECT_EQ(serial, parallel);
    std::vector<std::uint64_t> idx;
    for (const auto& p : serial) idx.push_back(p.index());
    EXPECT_EQ(idx, oracle::fixed_points(m));
  }
}

TEST(EnumerateFixedPoints, RejectsLargeDimension) {
  EXPECT_THROW(enumerate_fixed_points(ConnectionMatrix(21)), TooLarge);
}

TEST(BasinMap, FixedPointsMapToThemselves) {
  const auto w = learned_reference();
  const auto map = basin_map(w);
  for (const auto& p : enumerate_fixed_points(w)) EXPECT_EQ(map[p.index()], p.index());
}

TEST(BasinMap, ReferencePartitionsAllStatesIntoFourBasins) {
  const auto map = basin_map(learned_reference());
  EXPECT_EQ(map.basin.size(), 1024U);
  EXPECT_EQ(map.attractors(), std::vector<std::uint64_t>(fixture::kEnumeratedFixedPointIndices.begin(),
                                                         fixture::kEnumeratedFixedPointIndices.end()));
}

TEST(BasinMap, MatchesTrajectoryTableOracle) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const auto m = oracle::random_symmetric(8, 4, rng);
    EXPECT_EQ(basin_map(to_connection(m), kDefaultMaxSweeps, 3).basin, oracle::trajectory_table_basins(m));
  }
  EXPECT_EQ(basin_map(learned_reference()).basin, oracle::trajectory_table_basins(to_oracle(learned_reference())));
}

TEST(BasinMap, RejectsLargeDimensionAndInvalidMatrix) {
  EXPECT_THROW(basin_map(ConnectionMatrix(17)), TooLarge);
  EXPECT_THROW(basin_map(ConnectionMatrix(2, {0, 1, -1, 0})), NotSymmetric);
}

TEST(FixedPoints, ComplementSymmetryWhenFieldsNonzero) {
  std::mt19937_64 rng(37);
  for (int rep = 0; rep < 30; ++rep) {
    const auto w = to_connection(oracle::random_symmetric(8, 5, rng));
    const auto fps = enumerate_fixed_points(w);
    for (const auto& p : fps) {
      bool nonzero = true;
      for (std::size_t i = 0; i < 8; ++i) nonzero = nonzero && local_field(p, w, i) != 0;
      if (nonzero) {
        EXPECT_NE(std::find(fps.begin(), fps.end(), p.complement()), fps.end());
      }
    }
  }
  const auto& p = fixture::printed_fixed_points();
  EXPECT_EQ(bipolar_from_binary(p[0]).complement(), bipolar_from_binary(p[2]));
  EXPECT_EQ(bipolar_from_binary(p[1]).complement(), bipolar_from_binary(p[3]));
}

}  // namespace
}  // namespace spcluster
