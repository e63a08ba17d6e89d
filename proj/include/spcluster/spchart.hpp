#pragma once

// Student-problem (S-P) charts: L x N binary answer matrices with labels,
// their score-ordered rearrangement, S-/P-curves, chart-type classification
// and the caution index.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "spcluster/errors.hpp"

namespace spcluster {

using Bit = std::uint8_t;

/// One student's answers: bit j is 1 when problem j was answered correctly.
struct ScoreVector {
  std::vector<Bit> bits;
  std::string student_id;

  std::size_t score() const noexcept {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), Bit{1}));
  }

  friend bool operator==(const ScoreVector&, const ScoreVector&) = default;
};

/// Validated L x N binary matrix plus student and problem labels.
class SPChart {
 public:
  SPChart(std::vector<ScoreVector> rows, std::vector<std::string> problem_ids)
      : rows_(std::move(rows)), problem_ids_(std::move(problem_ids)) {
    if (rows_.empty() || problem_ids_.empty()) throw EmptyInput();
    const std::size_t n = problem_ids_.size();
    std::unordered_set<std::string_view> seen;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto& row = rows_[i];
      if (row.bits.size() != n) throw RaggedRows(n, row.bits.size());
      for (std::size_t j = 0; j < n; ++j) {
        if (row.bits[j] > 1) throw NonBinaryCell(i + 1, j + 1, std::to_string(row.bits[j]));
      }
      if (!seen.insert(row.student_id).second) throw DuplicateLabel(row.student_id);
    }
    seen.clear();
    for (const auto& id : problem_ids_) {
      if (!seen.insert(id).second) throw DuplicateLabel(id);
    }
  }

  /// Unlabelled matrix; students become S1..SL and problems P1..PN.
  static SPChart from_matrix(const std::vector<std::vector<Bit>>& matrix) {
    std::vector<ScoreVector> rows;
    rows.reserve(matrix.size());
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      rows.push_back({matrix[i], "S" + std::to_string(i + 1)});
    }
    const std::size_t n = matrix.empty() ? 0 : matrix.front().size();
    return SPChart(std::move(rows), default_problem_ids(n));
  }

  static std::vector<std::string> default_problem_ids(std::size_t n) {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t j = 0; j < n; ++j) ids.push_back("P" + std::to_string(j + 1));
    return ids;
  }

  std::size_t students() const noexcept { return rows_.size(); }
  std::size_t problems() const noexcept { return problem_ids_.size(); }

  const std::vector<ScoreVector>& rows() const noexcept { return rows_; }
  const ScoreVector& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<std::string>& problem_ids() const noexcept { return problem_ids_; }

  Bit at(std::size_t i, std::size_t j) const { return rows_.at(i).bits.at(j); }

  std::vector<std::string> student_ids() const {
    std::vector<std::string> ids;
    ids.reserve(rows_.size());
    for (const auto& r : rows_) ids.push_back(r.student_id);
    return ids;
  }

  /// Sub-chart of the given rows, in the given order, same problems.
  SPChart select_rows(std::span<const std::size_t> indices) const {
    std::vector<ScoreVector> picked;
    picked.reserve(indices.size());
    for (std::size_t i : indices) picked.push_back(rows_.at(i));
    return SPChart(std::move(picked), problem_ids_);
  }

  std::size_t total() const noexcept {
    std::size_t sum = 0;
    for (const auto& r : rows_) sum += r.score();
    return sum;
  }

  friend bool operator==(const SPChart&, const SPChart&) = default;

 private:
  std::vector<ScoreVector> rows_;
  std::vector<std::string> problem_ids_;
};

enum class ChartType { Test, Drill, PreTest };

inline std::string_view to_string(ChartType t) noexcept {
  switch (t) {
    case ChartType::Test: return "Test";
    case ChartType::Drill: return "Drill";
    case ChartType::PreTest: return "PreTest";
  }
  return "?";
}

/// Chart rearranged so that S(i) and P(j) are non-increasing.
/// row_perm[k] is the original index of rearranged row k (likewise col_perm).
struct RearrangedChart {
  SPChart chart;
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
  std::vector<std::size_t> s_totals;
  std::vector<std::size_t> p_totals;
};

namespace detail {

inline std::string_view trim(std::string_view s) noexcept {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

inline bool is_integer(std::string_view s) noexcept {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline std::vector<std::size_t> column_totals(const SPChart& chart) {
  std::vector<std::size_t> p(chart.problems(), 0);
  for (const auto& r : chart.rows()) {
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += r.bits[j];
  }
  return p;
}

}  // namespace detail

/// Parses CSV: optional header of problem labels, optional leading column of
/// student labels, remaining cells `0` or `1`. Quoted fields are not supported.
inline SPChart parse_chart(std::string_view text) {
  std::vector<std::vector<std::string_view>> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = detail::trim(text.substr(start, end - start));
    if (!line.empty()) lines.push_back(detail::split_cells(line));
    start = end + 1;
  }
  if (lines.empty()) throw EmptyInput();

  // A leading non-integer cell alone is a student label, not a header.
  const auto& first = lines.front();
  const bool is_header = first.size() == 1 ? !detail::is_integer(first.front())
                                           : std::any_of(first.begin() + 1, first.end(), [](std::string_view c) {
                                               return !detail::is_integer(c);
                                             });
  std::vector<std::string_view> header;
  if (is_header) {
    header = std::move(lines.front());
    lines.erase(lines.begin());
  }
  if (lines.empty()) throw EmptyInput();

  const std::size_t width = lines.front().size();
  bool labelled = !detail::is_integer(lines.front().front());
  if (!header.empty() && width == header.size() + 1) labelled = true;
  const std::size_t n = labelled ? width - 1 : width;
  if (n == 0) throw EmptyInput();

  std::vector<std::string> problem_ids;
  if (header.empty()) {
    problem_ids = SPChart::default_problem_ids(n);
  } else {
    // A corner cell above the label column is dropped.
    const std::size_t skip = labelled && header.size() == n + 1 ? 1 : 0;
    if (header.size() - skip != n) throw RaggedRows(n, header.size() - skip);
    for (std::size_t j = skip; j < header.size(); ++j) problem_ids.emplace_back(header[j]);
  }

  std::vector<ScoreVector> rows;
  rows.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& cells = lines[i];
    if (cells.size() != width) throw RaggedRows(n, cells.size() - (labelled ? 1 : 0));
    ScoreVector row;
    row.student_id = labelled ? std::string(cells.front()) : "S" + std::to_string(i + 1);
    row.bits.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto cell = cells[j + (labelled ? 1 : 0)];
      if (cell != "0" && cell != "1") throw NonBinaryCell(i + 1, j + 1, std::string(cell));
      row.bits.push_back(cell == "1" ? 1 : 0);
    }
    rows.push_back(std::move(row));
  }
  return SPChart(std::move(rows), std::move(problem_ids));
}

inline SPChart parse_chart(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_chart(std::string_view(buffer.str()));
}

/// Canonical CSV: header `student,<problem ids>` then one labelled row per student.
inline void write_chart(std::ostream& out, const SPChart& chart) {
  out << "student";
  for (const auto& id : chart.problem_ids()) out << ',' << id;
  out << '\n';
  for (const auto& row : chart.rows()) {
    out << row.student_id;
    for (Bit b : row.bits) out << ',' << static_cast<int>(b);
    out << '\n';
  }
}

inline std::string to_csv(const SPChart& chart) {
  std::ostringstream out;
  write_chart(out, chart);
  return out.str();
}

/// Sorts students by total score and problems by total correct, both
/// descending; ties keep their original order.
inline RearrangedChart rearrange(const SPChart& chart) {
  const std::size_t l = chart.students();
  const std::size_t n = chart.problems();

  std::vector<std::size_t> row_perm(l);
  std::iota(row_perm.begin(), row_perm.end(), std::size_t{0});
  std::vector<std::size_t> scores(l);
  for (std::size_t i = 0; i < l; ++i) scores[i] = chart.row(i).score();
  std::stable_sort(row_perm.begin(), row_perm.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  const auto totals = detail::column_totals(chart);
  std::vector<std::size_t> col_perm(n);
  std::iota(col_perm.begin(), col_perm.end(), std::size_t{0});
  std::stable_sort(col_perm.begin(), col_perm.end(),
                   [&](std::size_t a, std::size_t b) { return totals[a] > totals[b]; });

  std::vector<ScoreVector> rows;
  rows.reserve(l);
  for (std::size_t k : row_perm) {
    const auto& src = chart.row(k);
    ScoreVector r{std::vector<Bit>(n), src.student_id};
    for (std::size_t j = 0; j < n; ++j) r.bits[j] = src.bits[col_perm[j]];
    rows.push_back(std::move(r));
  }
  std::vector<std::string> problem_ids;
  problem_ids.reserve(n);
  for (std::size_t j : col_perm) problem_ids.push_back(chart.problem_ids()[j]);

  std::vector<std::size_t> s_totals(l);
  for (std::size_t k = 0; k < l; ++k) s_totals[k] = scores[row_perm[k]];
  std::vector<std::size_t> p_totals(n);
  for (std::size_t j = 0; j < n; ++j) p_totals[j] = totals[col_perm[j]];

  return {SPChart(std::move(rows), std::move(problem_ids)), std::move(row_perm),
          std::move(col_perm), std::move(s_totals), std::move(p_totals)};
}

/// S-curve points (i, S(i)) and P-curve points (P(j), j), 1-based positions.
struct Curves {
  std::vector<std::pair<std::size_t, std::size_t>> s_curve;
  std::vector<std::pair<std::size_t, std::size_t>> p_curve;
};

inline Curves curves(const RearrangedChart& rc) {
  Curves c;
  c.s_curve.reserve(rc.s_totals.size());
  for (std::size_t i = 0; i < rc.s_totals.size(); ++i) c.s_curve.emplace_back(i + 1, rc.s_totals[i]);
  c.p_curve.reserve(rc.p_totals.size());
  for (std::size_t j = 0; j < rc.p_totals.size(); ++j) c.p_curve.emplace_back(rc.p_totals[j], j + 1);
  return c;
}

/// Per-problem correct-answer rate, column sum over L.
inline std::vector<double> correct_rates(const SPChart& chart) {
  const auto totals = detail::column_totals(chart);
  std::vector<double> rates(totals.size());
  const auto l = static_cast<double>(chart.students());
  for (std::size_t j = 0; j < totals.size(); ++j) rates[j] = static_cast<double>(totals[j]) / l;
  return rates;
}

struct ChartThresholds {
  double drill = 0.65;
  double pretest = 0.35;
};

inline double mean_rate(const SPChart& chart) {
  return static_cast<double>(chart.total()) /
         static_cast<double>(chart.students() * chart.problems());
}

inline ChartType classify_type(const SPChart& chart, ChartThresholds thresholds = {}) {
  const double m = mean_rate(chart);
  if (m >= thresholds.drill) return ChartType::Drill;
  if (m <= thresholds.pretest) return ChartType::PreTest;
  return ChartType::Test;
}

/// Mean absolute deviation of a student's answers from the per-problem rates.
inline double caution_index(std::span<const Bit> bits, std::span<const double> rates) {
  if (bits.size() != rates.size()) throw LengthMismatch(rates.size(), bits.size());
  if (bits.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < bits.size(); ++j) sum += std::abs(static_cast<double>(bits[j]) - rates[j]);
  return sum / static_cast<double>(bits.size());
}

inline double caution_index(const ScoreVector& row, std::span<const double> rates) {
  return caution_index(std::span<const Bit>(row.bits), rates);
}

/// Average caution index of a chart against its own correct rates.
inline double average_caution(const SPChart& chart) {
  const auto rates = correct_rates(chart);
  double sum = 0.0;
  for (const auto& r : chart.rows()) sum += caution_index(r, rates);
  return sum / static_cast<double>(chart.students());
}

}  // namespace spcluster
