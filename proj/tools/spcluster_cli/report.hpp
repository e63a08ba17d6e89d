#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "spcluster/clustering.hpp"
#include "spcluster/spchart.hpp"

namespace spcluster::cli {

inline constexpr std::string_view kFormatVersion = "1";

struct ReportCluster {
  std::size_t size = 0;
  double gamma = 0.0;
  std::optional<std::string> fixed_point;  // 0/1 string, absent for the baseline
  std::string chart_type;
  std::vector<std::string> members;

  friend bool operator==(const ReportCluster&, const ReportCluster&) = default;
};

struct ReportParameters {
  std::size_t clusters = 0;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> objective;
  std::optional<std::size_t> max_sweeps;
  double drill_threshold = 0.65;
  double pretest_threshold = 0.35;

  friend bool operator==(const ReportParameters&, const ReportParameters&) = default;
};

struct ReportBest {
  std::optional<std::size_t> trial_index;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> representatives;
  double f1 = 0.0;
  double f2 = 0.0;
  std::vector<ReportCluster> clusters;
  std::map<std::size_t, std::size_t> sweeps_histogram;

  friend bool operator==(const ReportBest&, const ReportBest&) = default;
};

struct ReportTrialRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  double f1 = 0.0;
  double f2 = 0.0;
  std::size_t cluster_count = 0;

  friend bool operator==(const ReportTrialRow&, const ReportTrialRow&) = default;
};

/// Everything needed to reproduce and compare one clustering run.
struct ReportDocument {
  std::string format_version{kFormatVersion};
  std::string command;
  std::string input_digest;
  ReportParameters parameters;
  std::size_t students = 0;
  std::size_t problems = 0;
  double average_caution = 0.0;
  std::string chart_type;
  ReportBest best;
  std::vector<ReportTrialRow> trials;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

void to_json(nlohmann::json& j, const ReportCluster& c);
void from_json(const nlohmann::json& j, ReportCluster& c);
void to_json(nlohmann::json& j, const ReportParameters& p);
void from_json(const nlohmann::json& j, ReportParameters& p);
void to_json(nlohmann::json& j, const ReportBest& b);
void from_json(const nlohmann::json& j, ReportBest& b);
void to_json(nlohmann::json& j, const ReportTrialRow& t);
void from_json(const nlohmann::json& j, ReportTrialRow& t);
void to_json(nlohmann::json& j, const ReportDocument& d);
void from_json(const nlohmann::json& j, ReportDocument& d);

std::string serialize(const ReportDocument& doc);
ReportDocument parse_report(std::string_view text);

/// "sha256:<hex>" over the raw input bytes.
std::string content_digest(std::string_view bytes);

std::string bits_string(const std::vector<Bit>& bits);

/// Fills the chart-level and best-trial sections from a clustering.
ReportDocument make_report(std::string command, const SPChart& chart, std::string_view input_bytes,
                           const Clustering& clustering, std::size_t m, ChartThresholds thresholds);

}  // namespace spcluster::cli
