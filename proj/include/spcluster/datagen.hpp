#pragma once

// Synthetic S-P charts. Cell (i, j) is correct with probability
// logistic(ability_i - difficulty_j), then flipped with probability `noise`.
// Abilities and difficulties are normal draws re-centred so their sample
// means equal the profile means exactly.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "spcluster/errors.hpp"
#include "spcluster/spchart.hpp"

namespace spcluster {

struct GenSpec {
  ChartType chart_type = ChartType::Test;
  std::size_t students = 100;
  std::size_t problems = 10;
  std::uint64_t seed = 0;
  double noise = 0.0;
};

struct TypeProfile {
  double ability_mean;
  double ability_sd;
  double difficulty_mean;
  double difficulty_sd;
};

// Test: symmetric around a 50% rate. Drill/PreTest: ability shifted by +/-2,
// which puts the mean rate near 0.80 / 0.20 before noise.
inline constexpr TypeProfile kTestProfile{0.0, 1.0, 0.0, 0.8};
inline constexpr TypeProfile kDrillProfile{2.0, 0.8, 0.0, 0.8};
inline constexpr TypeProfile kPreTestProfile{-2.0, 0.8, 0.0, 0.8};

inline constexpr TypeProfile profile_for(ChartType t) noexcept {
  switch (t) {
    case ChartType::Drill: return kDrillProfile;
    case ChartType::PreTest: return kPreTestProfile;
    case ChartType::Test: break;
  }
  return kTestProfile;
}

namespace detail {

template <typename Rng>
std::vector<double> centred_normals(std::size_t count, double mean, double sd, Rng& rng) {
  std::normal_distribution<double> dist(0.0, sd);
  std::vector<double> v(count);
  for (auto& x : v) x = dist(rng);
  const double shift = mean - std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(count);
  for (auto& x : v) x += shift;
  return v;
}

}  // namespace detail

inline void validate(const GenSpec& spec) {
  if (spec.students < 1) throw InvalidArgument("students must be at least 1");
  if (spec.problems < 1) throw InvalidArgument("problems must be at least 1");
  if (!(spec.noise >= 0.0 && spec.noise <= 0.5)) throw InvalidArgument("noise must lie in [0, 0.5]");
}

inline SPChart generate_chart(const GenSpec& spec) {
  validate(spec);
  const TypeProfile p = profile_for(spec.chart_type);
  std::mt19937_64 rng(spec.seed);
  const auto ability = detail::centred_normals(spec.students, p.ability_mean, p.ability_sd, rng);
  const auto difficulty = detail::centred_normals(spec.problems, p.difficulty_mean, p.difficulty_sd, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::vector<Bit>> matrix(spec.students, std::vector<Bit>(spec.problems));
  for (std::size_t i = 0; i < spec.students; ++i) {
    for (std::size_t j = 0; j < spec.problems; ++j) {
      const double prob = 1.0 / (1.0 + std::exp(difficulty[j] - ability[i]));
      Bit bit = unit(rng) < prob ? 1 : 0;
      if (unit(rng) < spec.noise) bit ^= 1;
      matrix[i][j] = bit;
    }
  }
  return SPChart::from_matrix(matrix);
}

}  // namespace spcluster
