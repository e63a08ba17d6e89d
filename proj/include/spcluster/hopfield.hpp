#pragma once

// Discrete-time recurrent network with signum neurons and cyclic asynchronous
// updates. Components are updated in ascending order; each update sees the
// components already updated in the same sweep. sgn(0) = +1 everywhere.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <ranges>
#include <span>
#include <vector>

#include "spcluster/errors.hpp"
#include "spcluster/parallel.hpp"
#include "spcluster/spchart.hpp"

namespace spcluster {

/// Network state with every component in {-1, +1}.
class BipolarState {
 public:
  BipolarState() = default;

  explicit BipolarState(std::vector<std::int8_t> values) : x_(std::move(values)) {
    for (auto v : x_) {
      if (v != 1 && v != -1) throw InvalidArgument("bipolar component must be -1 or +1");
    }
  }

  /// Maps bit d to 2d - 1.
  static BipolarState from_binary(std::span<const Bit> bits) {
    BipolarState s;
    s.x_.reserve(bits.size());
    for (Bit b : bits) {
      if (b > 1) throw InvalidArgument("binary component must be 0 or 1");
      s.x_.push_back(b ? std::int8_t{1} : std::int8_t{-1});
    }
    return s;
  }

  /// Bit j of `index` set means component j is +1.
  static BipolarState from_index(std::uint64_t index, std::size_t n) {
    BipolarState s;
    s.x_.resize(n);
    for (std::size_t j = 0; j < n; ++j) s.x_[j] = ((index >> j) & 1U) ? 1 : -1;
    return s;
  }

  std::uint64_t index() const noexcept {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
      if (x_[j] > 0) idx |= std::uint64_t{1} << j;
    }
    return idx;
  }

  std::vector<Bit> to_binary() const {
    std::vector<Bit> bits(x_.size());
    for (std::size_t j = 0; j < x_.size(); ++j) bits[j] = x_[j] > 0 ? 1 : 0;
    return bits;
  }

  BipolarState complement() const {
    BipolarState s = *this;
    for (auto& v : s.x_) v = static_cast<std::int8_t>(-v);
    return s;
  }

  std::size_t size() const noexcept { return x_.size(); }
  int operator[](std::size_t j) const noexcept { return x_[j]; }
  void set(std::size_t j, int value) noexcept { x_[j] = value >= 0 ? 1 : -1; }
  std::span<const std::int8_t> values() const noexcept { return x_; }

  friend bool operator==(const BipolarState&, const BipolarState&) = default;
  friend auto operator<=>(const BipolarState&, const BipolarState&) = default;

 private:
  std::vector<std::int8_t> x_;
};

inline BipolarState bipolar_from_binary(std::span<const Bit> bits) {
  return BipolarState::from_binary(bits);
}

inline std::vector<Bit> binary_from_bipolar(const BipolarState& s) { return s.to_binary(); }

/// Dense N x N integer connection matrix, row-major.
template <std::signed_integral Weight>
class BasicConnectionMatrix {
 public:
  using weight_type = Weight;

  BasicConnectionMatrix() = default;
  explicit BasicConnectionMatrix(std::size_t n) : n_(n), w_(n * n, Weight{0}) {}

  BasicConnectionMatrix(std::size_t n, std::vector<Weight> row_major) : n_(n), w_(std::move(row_major)) {
    if (w_.size() != n * n) throw LengthMismatch(n * n, w_.size());
  }

  std::size_t size() const noexcept { return n_; }
  Weight operator()(std::size_t i, std::size_t j) const noexcept { return w_[i * n_ + j]; }
  Weight& operator()(std::size_t i, std::size_t j) noexcept { return w_[i * n_ + j]; }
  std::span<const Weight> row(std::size_t i) const noexcept { return {w_.data() + i * n_, n_}; }
  std::span<const Weight> data() const noexcept { return w_; }

  friend bool operator==(const BasicConnectionMatrix&, const BasicConnectionMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Weight> w_;
};

using ConnectionMatrix = BasicConnectionMatrix<std::int32_t>;

/// Throws unless w_ij = w_ji and w_ii = 0; the conditions under which every
/// trajectory ends in a fixed point.
template <std::signed_integral Weight>
void check_convergent(const BasicConnectionMatrix<Weight>& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w(i, i) != 0) throw NonzeroDiagonal(i);
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w(i, j) != w(j, i)) throw NotSymmetric(i, j);
    }
  }
}

/// Correlation (Hebbian) learning: w_ij = sum_l (2r_li - 1)(2r_lj - 1), w_ii = 0.
template <typename Patterns>
  requires std::ranges::input_range<Patterns>
ConnectionMatrix hebbian_learn(const Patterns& patterns) {
  auto it = std::ranges::begin(patterns);
  if (it == std::ranges::end(patterns)) throw InvalidArgument("hebbian_learn needs at least one pattern");
  const std::size_t n = std::ranges::size(*it);
  ConnectionMatrix w(n);
  std::vector<int> b(n);
  for (const auto& pattern : patterns) {
    if (std::ranges::size(pattern) != n) throw LengthMismatch(n, std::ranges::size(pattern));
    std::size_t j = 0;
    for (auto bit : pattern) {
      const int v = static_cast<int>(bit);
      if (v != 0 && v != 1) throw InvalidArgument("pattern component must be 0 or 1");
      b[j++] = 2 * v - 1;
    }
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (r != c) w(r, c) += b[r] * b[c];
      }
    }
  }
  return w;
}

/// sum_k w_ik x_k.
template <std::signed_integral Weight>
std::int64_t local_field(const BipolarState& state, const BasicConnectionMatrix<Weight>& w, std::size_t i) {
  const auto row = w.row(i);
  const auto x = state.values();
  std::int64_t h = 0;
  for (std::size_t k = 0; k < row.size(); ++k) h += static_cast<std::int64_t>(row[k]) * x[k];
  return h;
}

/// -1/2 sum_ij w_ij x_i x_j.
template <std::signed_integral Weight>
double energy(const BipolarState& state, const BasicConnectionMatrix<Weight>& w) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += local_field(state, w, i) * state[i];
  return -0.5 * static_cast<double>(sum);
}

struct NoObserver {
  void operator()(std::size_t, const BipolarState&) const noexcept {}
};

struct SweepResult {
  BipolarState state;
  bool changed = false;
};

/// One full period: components j = 0..N-1 updated in order, in place.
/// `on_update(j, state)` is called after each single-component update.
template <std::signed_integral Weight, typename Observer = NoObserver>
bool sweep_in_place(BipolarState& state, const BasicConnectionMatrix<Weight>& w, Observer&& on_update = {}) {
  if (state.size() != w.size()) throw LengthMismatch(w.size(), state.size());
  bool changed = false;
  for (std::size_t j = 0; j < state.size(); ++j) {
    const int next = local_field(state, w, j) >= 0 ? 1 : -1;
    if (next != state[j]) {
      state.set(j, next);
      changed = true;
    }
    on_update(j, state);
  }
  return changed;
}

template <std::signed_integral Weight>
SweepResult sweep(BipolarState state, const BasicConnectionMatrix<Weight>& w) {
  const bool changed = sweep_in_place(state, w);
  return {std::move(state), changed};
}

struct ConvergenceResult {
  BipolarState fixed_point;
  std::size_t sweeps_used = 0;
  bool converged = false;
};

inline constexpr std::size_t kDefaultMaxSweeps = 1000;

namespace detail {

template <std::signed_integral Weight, typename Observer>
ConvergenceResult converge_unchecked(BipolarState state, const BasicConnectionMatrix<Weight>& w,
                                     std::size_t max_sweeps, Observer&& on_update) {
  for (std::size_t s = 1; s <= max_sweeps; ++s) {
    if (!sweep_in_place(state, w, on_update)) return {std::move(state), s, true};
  }
  return {std::move(state), max_sweeps, false};
}

}  // namespace detail

/// Sweeps until a sweep flips nothing or the budget runs out. The confirming
/// sweep is counted, so a fixed-point start reports one sweep.
template <std::signed_integral Weight, typename Observer = NoObserver>
ConvergenceResult converge(BipolarState state0, const BasicConnectionMatrix<Weight>& w,
                           std::size_t max_sweeps = kDefaultMaxSweeps, Observer&& on_update = {}) {
  if (max_sweeps == 0) throw InvalidArgument("max_sweeps must be at least 1");
  check_convergent(w);
  if (state0.size() != w.size()) throw LengthMismatch(w.size(), state0.size());
  return detail::converge_unchecked(std::move(state0), w, max_sweeps, on_update);
}

inline constexpr std::size_t kMaxEnumerateDimension = 20;
inline constexpr std::size_t kMaxBasinDimension = 16;

/// Every state left unchanged by a sweep, ordered by state index.
template <std::signed_integral Weight>
std::vector<BipolarState> enumerate_fixed_points(const BasicConnectionMatrix<Weight>& w, unsigned workers = 1) {
  const std::size_t n = w.size();
  if (n > kMaxEnumerateDimension) throw TooLarge(n, kMaxEnumerateDimension);
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<std::uint8_t> fixed(count, 0);
  parallel_for(count, workers, [&](std::size_t idx) {
    auto s = BipolarState::from_index(idx, n);
    fixed[idx] = sweep_in_place(s, w) ? 0 : 1;
  });
  std::vector<BipolarState> out;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    if (fixed[idx]) out.push_back(BipolarState::from_index(idx, n));
  }
  return out;
}

/// Terminal fixed point of every state, indexed by state index. Entry
/// `basin[s]` is the state index of the fixed point reached from s.
struct BasinMap {
  std::size_t dimension = 0;
  std::vector<std::uint64_t> basin;

  std::uint64_t operator[](std::uint64_t state) const { return basin.at(state); }

  /// Distinct terminal fixed points, ascending.
  std::vector<std::uint64_t> attractors() const {
    std::vector<std::uint64_t> a(basin.begin(), basin.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
  }
};

template <std::signed_integral Weight>
BasinMap basin_map(const BasicConnectionMatrix<Weight>& w, std::size_t max_sweeps = kDefaultMaxSweeps,
                   unsigned workers = 1) {
  const std::size_t n = w.size();
  if (n > kMaxBasinDimension) throw TooLarge(n, kMaxBasinDimension);
  check_convergent(w);
  const std::uint64_t count = std::uint64_t{1} << n;
  BasinMap map{n, std::vector<std::uint64_t>(count)};
  std::vector<std::uint8_t> failed(count, 0);
  parallel_for(count, workers, [&](std::size_t idx) {
    auto r = detail::converge_unchecked(BipolarState::from_index(idx, n), w, max_sweeps, NoObserver{});
    map.basin[idx] = r.fixed_point.index();
    failed[idx] = r.converged ? 0 : 1;
  });
  const auto bad = std::find(failed.begin(), failed.end(), std::uint8_t{1});
  if (bad != failed.end()) throw ConvergenceFailure(static_cast<std::size_t>(bad - failed.begin()));
  return map;
}

}  // namespace spcluster
