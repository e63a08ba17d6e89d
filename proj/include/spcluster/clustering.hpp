#pragma once

// Basin-of-attraction clustering of S-P charts.
//
//   1. pick M representative students at random
//   2. learn W from their score vectors (Hebbian)
//   3. run the network from every student's score vector; students whose
//      trajectories end in the same fixed point form one cluster
//   4. score the clustering with f1 (size uniformity) and f2 (worst
//      average caution index)
//
// run_trials repeats 1-4 with independently seeded draws and keeps the best.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "spcluster/errors.hpp"
#include "spcluster/hopfield.hpp"
#include "spcluster/parallel.hpp"
#include "spcluster/spchart.hpp"

namespace spcluster {

struct Cluster {
  std::vector<std::size_t> member_indices;
  /// Binary image of the attracting fixed point; empty for baseline clusters.
  std::optional<std::vector<Bit>> fixed_point;
  double gamma = 0.0;

  std::size_t size() const noexcept { return member_indices.size(); }

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct Clustering {
  std::vector<Cluster> clusters;
  std::vector<std::size_t> representatives;
  std::size_t student_count = 0;
  /// Sweeps each student's trajectory took; empty for the score baseline.
  std::vector<std::size_t> sweeps_used;

  friend bool operator==(const Clustering&, const Clustering&) = default;
};

/// Builds a cluster over the given chart rows and computes its gamma against
/// the cluster's own correct rates.
inline Cluster make_cluster(const SPChart& chart, std::vector<std::size_t> members,
                            std::optional<std::vector<Bit>> fixed_point = std::nullopt) {
  const double gamma = average_caution(chart.select_rows(members));
  return {std::move(members), std::move(fixed_point), gamma};
}

/// M distinct student indices drawn uniformly without replacement.
template <std::uniform_random_bit_generator Rng>
std::vector<std::size_t> select_representatives(const SPChart& chart, std::size_t m, Rng& rng) {
  const std::size_t l = chart.students();
  if (m < 1 || m > l) throw MTooLarge(m, l);
  std::vector<std::size_t> pool(l);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t k = 0; k < m; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, l - 1);
    std::swap(pool[k], pool[pick(rng)]);
  }
  pool.resize(m);
  return pool;
}

/// Clusters students by the fixed point their trajectory reaches under the
/// network learned from the representatives. Clusters appear in order of first
/// discovery scanning students 0..L-1.
inline Clustering rnn_cluster(const SPChart& chart, std::span<const std::size_t> rep_indices,
                              std::size_t max_sweeps = kDefaultMaxSweeps) {
  if (rep_indices.empty()) throw MTooLarge(0, chart.students());
  std::vector<std::vector<Bit>> patterns;
  patterns.reserve(rep_indices.size());
  for (std::size_t r : rep_indices) patterns.push_back(chart.row(r).bits);
  const ConnectionMatrix w = hebbian_learn(patterns);
  check_convergent(w);

  std::vector<std::vector<std::size_t>> members;
  std::vector<BipolarState> points;
  std::unordered_map<std::uint64_t, std::size_t> slot_of;
  std::vector<std::size_t> sweeps(chart.students());
  for (std::size_t i = 0; i < chart.students(); ++i) {
    auto r = detail::converge_unchecked(bipolar_from_binary(chart.row(i).bits), w, max_sweeps, NoObserver{});
    if (!r.converged) throw ConvergenceFailure(i);
    sweeps[i] = r.sweeps_used;
    // Index keys are exact for N <= 64; wider charts fall back to a scan.
    std::size_t slot = points.size();
    if (chart.problems() <= 64) {
      auto [it, inserted] = slot_of.try_emplace(r.fixed_point.index(), points.size());
      slot = it->second;
    } else {
      slot = static_cast<std::size_t>(std::find(points.begin(), points.end(), r.fixed_point) - points.begin());
    }
    if (slot == points.size()) {
      points.push_back(r.fixed_point);
      members.emplace_back();
    }
    members[slot].push_back(i);
  }

  Clustering c;
  c.student_count = chart.students();
  c.representatives.assign(rep_indices.begin(), rep_indices.end());
  c.sweeps_used = std::move(sweeps);
  c.clusters.reserve(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    c.clusters.push_back(make_cluster(chart, std::move(members[k]), points[k].to_binary()));
  }
  return c;
}

/// (L/M - L_M) / (L/M), with L_M the M-th largest cluster size (0 if fewer
/// than M clusters).
inline double f1_from_sizes(std::span<const std::size_t> sizes, std::size_t students, std::size_t m) {
  if (m < 1) throw InvalidArgument("f1 needs M >= 1");
  if (students < 1) throw InvalidArgument("f1 needs at least one student");
  std::vector<std::size_t> sorted(sizes.begin(), sizes.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double desired = static_cast<double>(students) / static_cast<double>(m);
  const double mth = sorted.size() >= m ? static_cast<double>(sorted[m - 1]) : 0.0;
  return (desired - mth) / desired;
}

inline double f1(const Clustering& c, std::size_t m) {
  std::vector<std::size_t> sizes;
  sizes.reserve(c.clusters.size());
  for (const auto& cl : c.clusters) sizes.push_back(cl.size());
  return f1_from_sizes(sizes, c.student_count, m);
}

/// Largest per-cluster average caution index.
inline double f2_from_gammas(std::span<const double> gammas) {
  if (gammas.empty()) throw EmptyClustering();
  return *std::max_element(gammas.begin(), gammas.end());
}

inline double f2(const Clustering& c) {
  std::vector<double> gammas;
  gammas.reserve(c.clusters.size());
  for (const auto& cl : c.clusters) gammas.push_back(cl.gamma);
  return f2_from_gammas(gammas);
}

/// Students sorted by total score (ties by index) and cut into M contiguous
/// groups; the first L mod M groups get one extra student.
inline Clustering score_baseline(const SPChart& chart, std::size_t m) {
  const std::size_t l = chart.students();
  if (m < 1 || m > l) throw MTooLarge(m, l);
  std::vector<std::size_t> order(l);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return chart.row(a).score() > chart.row(b).score(); });
  Clustering c;
  c.student_count = l;
  std::size_t pos = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t size = l / m + (k < l % m ? 1 : 0);
    c.clusters.push_back(make_cluster(chart, {order.begin() + pos, order.begin() + pos + size}));
    pos += size;
  }
  return c;
}

enum class Objective {
  F2ThenF1,  ///< minimise f2, break ties on f1
  F1ThenF2,
};

struct TrialOptions {
  std::size_t trials = 10000;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
  Objective objective = Objective::F2ThenF1;
  std::size_t max_sweeps = kDefaultMaxSweeps;
};

struct TrialReport {
  Clustering clustering;
  double f1 = 0.0;
  double f2 = 0.0;
  std::uint64_t seed = 0;
  std::size_t trial_index = 0;
  std::map<std::size_t, std::size_t> sweeps_histogram;

  friend bool operator==(const TrialReport&, const TrialReport&) = default;
};

struct TrialSummary {
  std::size_t trial_index = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  double f1 = 0.0;
  double f2 = 0.0;
  std::size_t cluster_count = 0;

  friend bool operator==(const TrialSummary&, const TrialSummary&) = default;
};

struct TrialRun {
  TrialReport best;
  std::vector<TrialSummary> summaries;
};

/// SplitMix64 finaliser over (master_seed, trial); depends only on the pair.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) noexcept {
  std::uint64_t z = master_seed + (trial + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// One complete select/learn/cluster/score pass.
inline TrialReport run_trial(const SPChart& chart, std::size_t m, std::uint64_t seed, std::size_t trial_index,
                             std::size_t max_sweeps = kDefaultMaxSweeps) {
  std::mt19937_64 rng(seed);
  const auto reps = select_representatives(chart, m, rng);
  TrialReport report;
  report.clustering = rnn_cluster(chart, reps, max_sweeps);
  report.f1 = f1(report.clustering, m);
  report.f2 = f2(report.clustering);
  report.seed = seed;
  report.trial_index = trial_index;
  for (std::size_t s : report.clustering.sweeps_used) ++report.sweeps_histogram[s];
  return report;
}

/// True when `a` is strictly preferred over `b`.
inline bool better(const TrialSummary& a, const TrialSummary& b, Objective objective) {
  const double a1 = objective == Objective::F2ThenF1 ? a.f2 : a.f1;
  const double b1 = objective == Objective::F2ThenF1 ? b.f2 : b.f1;
  if (a1 != b1) return a1 < b1;
  const double a2 = objective == Objective::F2ThenF1 ? a.f1 : a.f2;
  const double b2 = objective == Objective::F2ThenF1 ? b.f1 : b.f2;
  if (a2 != b2) return a2 < b2;
  return a.trial_index < b.trial_index;
}

/// Runs independent trials and returns the best one plus a summary per trial.
/// Trial t draws from trial_seed(master_seed, t), so results do not depend on
/// the worker count. Failed trials are recorded, not fatal.
inline TrialRun run_trials(const SPChart& chart, std::size_t m, const TrialOptions& options) {
  if (options.trials < 1) throw InvalidArgument("trials must be at least 1");
  if (m < 1 || m > chart.students()) throw MTooLarge(m, chart.students());

  std::vector<TrialSummary> summaries(options.trials);
  parallel_for(options.trials, options.workers, [&](std::size_t t) {
    auto& s = summaries[t];
    s.trial_index = t;
    s.seed = trial_seed(options.master_seed, t);
    try {
      const auto r = run_trial(chart, m, s.seed, t, options.max_sweeps);
      s.f1 = r.f1;
      s.f2 = r.f2;
      s.cluster_count = r.clustering.clusters.size();
    } catch (const Error& e) {
      s.failed = true;
      s.error = e.what();
    }
  });

  const TrialSummary* best = nullptr;
  for (const auto& s : summaries) {
    if (s.failed) continue;
    if (best == nullptr || better(s, *best, options.objective)) best = &s;
  }
  if (best == nullptr) throw AllTrialsFailed(options.trials);

  // Re-running the winner is cheaper than keeping every clustering in memory.
  return {run_trial(chart, m, best->seed, best->trial_index, options.max_sweeps), std::move(summaries)};
}

}  // namespace spcluster
