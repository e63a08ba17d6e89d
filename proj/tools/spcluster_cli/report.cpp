#include "report.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

#include <fmt/format.h>

namespace spcluster::cli {

namespace {

template <typename T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    v.reset();
  } else {
    v = it->get<T>();
  }
}

}  // namespace

void to_json(nlohmann::json& j, const ReportCluster& c) {
  j = nlohmann::json{{"size", c.size}, {"gamma", c.gamma}, {"chart_type", c.chart_type}, {"members", c.members}};
  put_optional(j, "fixed_point", c.fixed_point);
}

void from_json(const nlohmann::json& j, ReportCluster& c) {
  j.at("size").get_to(c.size);
  j.at("gamma").get_to(c.gamma);
  j.at("chart_type").get_to(c.chart_type);
  j.at("members").get_to(c.members);
  get_optional(j, "fixed_point", c.fixed_point);
}

void to_json(nlohmann::json& j, const ReportParameters& p) {
  j = nlohmann::json{{"clusters", p.clusters},
                     {"drill_threshold", p.drill_threshold},
                     {"pretest_threshold", p.pretest_threshold}};
  put_optional(j, "trials", p.trials);
  put_optional(j, "seed", p.seed);
  put_optional(j, "objective", p.objective);
  put_optional(j, "max_sweeps", p.max_sweeps);
}

void from_json(const nlohmann::json& j, ReportParameters& p) {
  j.at("clusters").get_to(p.clusters);
  j.at("drill_threshold").get_to(p.drill_threshold);
  j.at("pretest_threshold").get_to(p.pretest_threshold);
  get_optional(j, "trials", p.trials);
  get_optional(j, "seed", p.seed);
  get_optional(j, "objective", p.objective);
  get_optional(j, "max_sweeps", p.max_sweeps);
}

void to_json(nlohmann::json& j, const ReportBest& b) {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [sweeps, count] : b.sweeps_histogram) hist[std::to_string(sweeps)] = count;
  j = nlohmann::json{{"representatives", b.representatives},
                     {"f1", b.f1},
                     {"f2", b.f2},
                     {"clusters", b.clusters},
                     {"sweeps_histogram", hist}};
  put_optional(j, "trial_index", b.trial_index);
  put_optional(j, "seed", b.seed);
}

void from_json(const nlohmann::json& j, ReportBest& b) {
  j.at("representatives").get_to(b.representatives);
  j.at("f1").get_to(b.f1);
  j.at("f2").get_to(b.f2);
  j.at("clusters").get_to(b.clusters);
  b.sweeps_histogram.clear();
  for (const auto& [key, value] : j.at("sweeps_histogram").items()) {
    b.sweeps_histogram[std::stoul(key)] = value.get<std::size_t>();
  }
  get_optional(j, "trial_index", b.trial_index);
  get_optional(j, "seed", b.seed);
}

void to_json(nlohmann::json& j, const ReportTrialRow& t) {
  j = nlohmann::json{{"trial", t.trial},         {"seed", t.seed}, {"failed", t.failed},
                     {"f1", t.f1},               {"f2", t.f2},     {"cluster_count", t.cluster_count}};
  if (t.failed) j["error"] = t.error;
}

void from_json(const nlohmann::json& j, ReportTrialRow& t) {
  j.at("trial").get_to(t.trial);
  j.at("seed").get_to(t.seed);
  j.at("failed").get_to(t.failed);
  j.at("f1").get_to(t.f1);
  j.at("f2").get_to(t.f2);
  j.at("cluster_count").get_to(t.cluster_count);
  t.error = j.value("error", std::string{});
}

void to_json(nlohmann::json& j, const ReportDocument& d) {
  j = nlohmann::json{{"format_version", d.format_version},
                     {"command", d.command},
                     {"input_digest", d.input_digest},
                     {"parameters", d.parameters},
                     {"chart",
                      {{"students", d.students},
                       {"problems", d.problems},
                       {"average_caution", d.average_caution},
                       {"chart_type", d.chart_type}}},
                     {"best", d.best},
                     {"trials", d.trials}};
}

void from_json(const nlohmann::json& j, ReportDocument& d) {
  j.at("format_version").get_to(d.format_version);
  j.at("command").get_to(d.command);
  j.at("input_digest").get_to(d.input_digest);
  j.at("parameters").get_to(d.parameters);
  const auto& chart = j.at("chart");
  chart.at("students").get_to(d.students);
  chart.at("problems").get_to(d.problems);
  chart.at("average_caution").get_to(d.average_caution);
  chart.at("chart_type").get_to(d.chart_type);
  j.at("best").get_to(d.best);
  j.at("trials").get_to(d.trials);
}

std::string serialize(const ReportDocument& doc) { return nlohmann::json(doc).dump(2) + "\n"; }

ReportDocument parse_report(std::string_view text) { return nlohmann::json::parse(text).get<ReportDocument>(); }

std::string content_digest(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", md[i]);
  return out;
}

std::string bits_string(const std::vector<Bit>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (Bit b : bits) s.push_back(b ? '1' : '0');
  return s;
}

ReportDocument make_report(std::string command, const SPChart& chart, std::string_view input_bytes,
                           const Clustering& clustering, std::size_t m, ChartThresholds thresholds) {
  ReportDocument doc;
  doc.command = std::move(command);
  doc.input_digest = content_digest(input_bytes);
  doc.parameters.clusters = m;
  doc.parameters.drill_threshold = thresholds.drill;
  doc.parameters.pretest_threshold = thresholds.pretest;
  doc.students = chart.students();
  doc.problems = chart.problems();
  doc.average_caution = average_caution(chart);
  doc.chart_type = std::string(to_string(classify_type(chart, thresholds)));

  doc.best.f1 = f1(clustering, m);
  doc.best.f2 = f2(clustering);
  for (std::size_t r : clustering.representatives) doc.best.representatives.push_back(chart.row(r).student_id);
  for (std::size_t s : clustering.sweeps_used) ++doc.best.sweeps_histogram[s];
  for (const auto& cl : clustering.clusters) {
    ReportCluster rc;
    rc.size = cl.size();
    rc.gamma = cl.gamma;
    if (cl.fixed_point) rc.fixed_point = bits_string(*cl.fixed_point);
    rc.chart_type = std::string(to_string(classify_type(chart.select_rows(cl.member_indices), thresholds)));
    for (std::size_t i : cl.member_indices) rc.members.push_back(chart.row(i).student_id);
    doc.best.clusters.push_back(std::move(rc));
  }
  return doc;
}

}  // namespace spcluster::cli
