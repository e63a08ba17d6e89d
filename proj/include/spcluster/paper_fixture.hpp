#pragma once

// Reference network from the published experiment: four representative score
// vectors (students S32, S40, S58, S63), the connection matrix printed for
// them, and the four fixed points printed for that matrix.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spcluster/hopfield.hpp"
#include "spcluster/spchart.hpp"

namespace spcluster::fixture {

inline constexpr std::size_t kProblems = 10;

inline const std::vector<std::string>& representative_ids() {
  static const std::vector<std::string> ids{"S32", "S40", "S58", "S63"};
  return ids;
}

inline const std::vector<std::vector<Bit>>& representatives() {
  static const std::vector<std::vector<Bit>> reps{
      {1, 0, 1, 0, 0, 0, 0, 1, 1, 1},
      {0, 0, 0, 1, 1, 0, 1, 0, 1, 0},
      {0, 1, 0, 1, 1, 1, 1, 1, 1, 1},
      {0, 0, 1, 0, 0, 1, 0, 0, 0, 0},
  };
  return reps;
}

/// The matrix exactly as printed. Note it is not symmetric: row 1 carries
/// w_15 = 2 and w_18 = -2 while column 1 carries w_51 = -2 and w_81 = 2.
inline const ConnectionMatrix& printed_matrix() {
  static const ConnectionMatrix w(kProblems, {
       0,  0,  2, -2,  2, -2, -2, -2,  0,  2,
       0,  0, -2,  2,  2,  2,  2,  2,  0,  2,
       2, -2,  0, -4, -4,  0, -4,  0, -2,  0,
      -2,  2, -4,  0,  4,  0,  4,  0,  2,  0,
      -2,  2, -4,  4,  0,  0,  4,  0,  2,  0,
      -2,  2,  0,  0,  0,  0,  0,  0, -2,  0,
      -2,  2, -4,  4,  4,  0,  0,  0,  2,  0,
       2,  2,  0,  0,  0,  0,  0,  0,  2,  4,
       0,  0, -2,  2,  2, -2,  2,  2,  0,  2,
       2,  2,  0,  0,  0,  0,  0,  4,  2,  0,
  });
  return w;
}

/// Printed entries (0-based) that disagree with their own mirror entry.
inline std::vector<std::pair<std::size_t, std::size_t>> printed_asymmetries() {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto& w = printed_matrix();
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w(i, j) != w(j, i)) out.emplace_back(i, j);
    }
  }
  return out;
}

inline const std::vector<std::vector<Bit>>& printed_fixed_points() {
  static const std::vector<std::vector<Bit>> p{
      {1, 0, 1, 0, 0, 0, 0, 0, 0, 0},
      {1, 0, 1, 0, 0, 0, 0, 1, 0, 1},
      {0, 1, 0, 1, 1, 1, 1, 1, 1, 1},
      {0, 1, 0, 1, 1, 1, 1, 0, 1, 0},
  };
  return p;
}

/// Exhaustive enumeration over all 2^10 states of the learned network finds
/// exactly the printed points (and nothing else); recorded as state indices.
inline constexpr std::array<std::uint64_t, 4> kEnumeratedFixedPointIndices{
    0b0000000101,  // 1010000000
    0b0101111010,  // 0101111010
    0b1010000101,  // 1010000101
    0b1111111010,  // 0101111111
};

struct EntryMismatch {
  std::size_t row;
  std::size_t col;
  std::int32_t learned;
  std::int32_t printed;
  /// The printed matrix disagrees with itself here and `learned` equals the
  /// printed mirror entry (col, row).
  bool printed_erratum;
};

struct FixtureCheck {
  ConnectionMatrix learned;
  std::vector<EntryMismatch> mismatches;
  std::vector<BipolarState> fixed_points;
  std::vector<std::vector<Bit>> missing_fixed_points;

  /// Exact equality with the printed matrix, all entries.
  bool exact_match() const noexcept { return mismatches.empty(); }

  /// Passes when every disagreement is a printed erratum and every printed
  /// fixed point is a fixed point of the learned network.
  bool ok() const noexcept {
    for (const auto& m : mismatches) {
      if (!m.printed_erratum) return false;
    }
    return missing_fixed_points.empty();
  }
};

/// Learns W from `reps` and compares it, and its fixed points, with the
/// printed reference values.
inline FixtureCheck check_fixture(const std::vector<std::vector<Bit>>& reps) {
  FixtureCheck check{hebbian_learn(reps), {}, {}, {}};
  const auto& printed = printed_matrix();
  if (check.learned.size() != printed.size()) throw LengthMismatch(printed.size(), check.learned.size());
  for (std::size_t i = 0; i < printed.size(); ++i) {
    for (std::size_t j = 0; j < printed.size(); ++j) {
      const auto got = check.learned(i, j);
      if (got == printed(i, j)) continue;
      const bool erratum = printed(i, j) != printed(j, i) && got == printed(j, i);
      check.mismatches.push_back({i, j, got, printed(i, j), erratum});
    }
  }
  check.fixed_points = enumerate_fixed_points(check.learned);
  for (const auto& p : printed_fixed_points()) {
    const auto s = BipolarState::from_binary(p);
    if (std::find(check.fixed_points.begin(), check.fixed_points.end(), s) == check.fixed_points.end()) {
      check.missing_fixed_points.push_back(p);
    }
  }
  return check;
}

}  // namespace spcluster::fixture
