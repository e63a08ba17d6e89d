#include "commands.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "render.hpp"
#include "report.hpp"
#include "spcluster/spcluster.hpp"

namespace spcluster::cli {

namespace {

/// Failure that maps to a specific exit code; the message names the flag.
struct CommandError {
  int code;
  std::string message;
};

struct ChartInput {
  std::string bytes;
  SPChart chart;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError{kExitInvalidParameters, fmt::format("--input: cannot read '{}'", path)};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view content, const char* flag) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CommandError{kExitInvalidParameters, fmt::format("{}: cannot write '{}'", flag, path)};
  out << content;
}

ChartInput load_chart(const std::string& path) {
  std::string bytes = read_file(path);
  try {
    SPChart chart = parse_chart(std::string_view(bytes));
    return {std::move(bytes), std::move(chart)};
  } catch (const ParseError& e) {
    throw CommandError{kExitParseError, fmt::format("--input '{}': {}", path, e.what())};
  }
}

void check_clusters(std::size_t m, const SPChart& chart) {
  if (m < 1 || m > chart.students()) {
    throw CommandError{kExitInvalidParameters,
                       fmt::format("--clusters: must be between 1 and {} (students), got {}", chart.students(), m)};
  }
}

ChartThresholds check_thresholds(double drill, double pretest) {
  if (!(pretest >= 0.0 && pretest < drill && drill <= 1.0)) {
    throw CommandError{kExitInvalidParameters,
                       "--pretest-threshold/--drill-threshold: need 0 <= pretest < drill <= 1"};
  }
  return {drill, pretest};
}

void print_summary(std::ostream& out, const ReportDocument& doc) {
  const auto& clusters = doc.best.clusters;
  std::string names = fmt::format("{:<12}", "Cluster");
  std::string sizes = fmt::format("{:<12}", "# students");
  std::string gammas = fmt::format("{:<12}", "Caution");
  std::string types = fmt::format("{:<12}", "Type");
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    names += fmt::format(" {:>8}", fmt::format("C{}", k + 1));
    sizes += fmt::format(" {:>8}", clusters[k].size);
    gammas += fmt::format(" {:>8.3f}", clusters[k].gamma);
    types += fmt::format(" {:>8}", clusters[k].chart_type);
  }
  out << names << '\n' << sizes << '\n' << gammas << '\n' << types << '\n';
  out << fmt::format("f1(C) = {:.3f}, f2(C) = {:.3f}; whole chart: {} students, caution {:.3f}, type {}\n",
                     doc.best.f1, doc.best.f2, doc.students, doc.average_caution, doc.chart_type);
  if (doc.best.trial_index && doc.parameters.trials) {
    out << fmt::format("best of {} trials: trial {} (representatives {})\n", *doc.parameters.trials,
                       *doc.best.trial_index, fmt::join(doc.best.representatives, " "));
  }
}

void emit_charts(const std::string& dir, const SPChart& chart, const Clustering& clustering) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw CommandError{kExitInvalidParameters, fmt::format("--emit-charts: cannot create '{}'", dir)};
  for (std::size_t k = 0; k < clustering.clusters.size(); ++k) {
    const auto rc = rearrange(chart.select_rows(clustering.clusters[k].member_indices));
    const auto base = (std::filesystem::path(dir) / fmt::format("cluster_{}", k + 1)).string();
    write_file(base + ".csv", to_csv(rc.chart), "--emit-charts");
    write_file(base + ".svg", render_svg(rc), "--emit-charts");
  }
}

struct ClusterFlags {
  std::string input;
  std::string output;
  std::string emit_dir;
  std::size_t clusters = 4;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string objective = "f2";
  std::size_t max_sweeps = kDefaultMaxSweeps;
  double drill = 0.65;
  double pretest = 0.35;
};

int cmd_cluster(const ClusterFlags& f, std::ostream& out) {
  const auto thresholds = check_thresholds(f.drill, f.pretest);
  const auto in = load_chart(f.input);
  check_clusters(f.clusters, in.chart);
  if (f.trials < 1) throw CommandError{kExitInvalidParameters, "--trials: must be at least 1"};
  if (f.max_sweeps < 1) throw CommandError{kExitInvalidParameters, "--max-sweeps: must be at least 1"};

  TrialOptions options;
  options.trials = f.trials;
  options.master_seed = f.seed;
  options.workers = f.workers == 0 ? default_workers() : f.workers;
  options.objective = f.objective == "f1" ? Objective::F1ThenF2 : Objective::F2ThenF1;
  options.max_sweeps = f.max_sweeps;

  TrialRun run;
  try {
    run = run_trials(in.chart, f.clusters, options);
  } catch (const AllTrialsFailed& e) {
    throw CommandError{kExitAllTrialsFailed, e.what()};
  }

  auto doc = make_report("cluster", in.chart, in.bytes, run.best.clustering, f.clusters, thresholds);
  doc.parameters.trials = f.trials;
  doc.parameters.seed = f.seed;
  doc.parameters.objective = f.objective;
  doc.parameters.max_sweeps = f.max_sweeps;
  doc.best.trial_index = run.best.trial_index;
  doc.best.seed = run.best.seed;
  doc.trials.reserve(run.summaries.size());
  for (const auto& s : run.summaries) {
    doc.trials.push_back({s.trial_index, s.seed, s.failed, s.error, s.f1, s.f2, s.cluster_count});
  }

  write_file(f.output, serialize(doc), "--output");
  if (!f.emit_dir.empty()) emit_charts(f.emit_dir, in.chart, run.best.clustering);
  print_summary(out, doc);
  return kExitOk;
}

struct BaselineFlags {
  std::string input;
  std::string output;
  std::size_t clusters = 4;
  double drill = 0.65;
  double pretest = 0.35;
};

int cmd_baseline(const BaselineFlags& f, std::ostream& out) {
  const auto thresholds = check_thresholds(f.drill, f.pretest);
  const auto in = load_chart(f.input);
  check_clusters(f.clusters, in.chart);
  const auto clustering = score_baseline(in.chart, f.clusters);
  const auto doc = make_report("baseline", in.chart, in.bytes, clustering, f.clusters, thresholds);
  write_file(f.output, serialize(doc), "--output");
  print_summary(out, doc);
  return kExitOk;
}

struct InspectFlags {
  std::string input;
  std::string format = "txt";
  std::string output;
  double drill = 0.65;
  double pretest = 0.35;
};

int cmd_inspect(const InspectFlags& f, std::ostream& out) {
  const auto thresholds = check_thresholds(f.drill, f.pretest);
  const auto in = load_chart(f.input);
  const auto rc = rearrange(in.chart);
  const std::string rendering = f.format == "svg" ? render_svg(rc) : render_text(rc);
  if (f.output.empty()) {
    out << rendering;
  } else {
    write_file(f.output, rendering, "--output");
  }
  out << fmt::format("S(i): {}\n", fmt::join(rc.s_totals, " "));
  out << fmt::format("P(j): {}\n", fmt::join(rc.p_totals, " "));
  out << fmt::format("type: {}\n", to_string(classify_type(in.chart, thresholds)));
  out << fmt::format("average caution: {:.3f}\n", average_caution(in.chart));
  return kExitOk;
}

struct GenerateFlags {
  std::string type = "test";
  std::size_t students = 100;
  std::size_t problems = 10;
  std::uint64_t seed = 0;
  double noise = 0.0;
  std::string output;
};

int cmd_generate(const GenerateFlags& f, std::ostream& out) {
  GenSpec spec;
  if (f.type == "test") {
    spec.chart_type = ChartType::Test;
  } else if (f.type == "drill") {
    spec.chart_type = ChartType::Drill;
  } else {
    spec.chart_type = ChartType::PreTest;
  }
  spec.students = f.students;
  spec.problems = f.problems;
  spec.seed = f.seed;
  spec.noise = f.noise;
  SPChart chart = [&] {
    try {
      return generate_chart(spec);
    } catch (const InvalidArgument& e) {
      throw CommandError{kExitInvalidParameters, fmt::format("--students/--problems/--noise: {}", e.what())};
    }
  }();
  const auto csv = to_csv(chart);
  if (f.output.empty()) {
    out << csv;
  } else {
    write_file(f.output, csv, "--output");
  }
  return kExitOk;
}

struct FixtureFlags {
  std::vector<std::size_t> flip_bit;
};

int cmd_fixture(const FixtureFlags& f, std::ostream& out) {
  auto reps = fixture::representatives();
  if (!f.flip_bit.empty()) {
    if (f.flip_bit.size() != 2 || f.flip_bit[0] < 1 || f.flip_bit[0] > reps.size() || f.flip_bit[1] < 1 ||
        f.flip_bit[1] > fixture::kProblems) {
      throw CommandError{kExitInvalidParameters, "--flip-bit: expected VECTOR,BIT within 1..4,1..10"};
    }
    reps[f.flip_bit[0] - 1][f.flip_bit[1] - 1] ^= 1;
  }

  out << "representatives:\n";
  for (std::size_t l = 0; l < reps.size(); ++l) {
    out << fmt::format("  {} {}\n", fixture::representative_ids()[l], bits_string(reps[l]));
  }
  const auto check = fixture::check_fixture(reps);
  out << "learned W:\n";
  for (std::size_t i = 0; i < check.learned.size(); ++i) {
    out << fmt::format("  {}\n", fmt::join(check.learned.row(i), " "));
  }

  const std::size_t total = check.learned.size() * check.learned.size();
  out << fmt::format("W vs printed matrix: {}/{} entries equal\n", total - check.mismatches.size(), total);
  for (const auto& m : check.mismatches) {
    out << fmt::format("  ({},{}): learned {}, printed {}{}\n", m.row + 1, m.col + 1, m.learned, m.printed,
                       m.printed_erratum ? fmt::format(" [printed matrix asymmetric here; mirror ({},{}) = {}]",
                                                       m.col + 1, m.row + 1, m.learned)
                                         : std::string(" [MISMATCH]"));
  }

  out << fmt::format("fixed points ({} of 1024 states):\n", check.fixed_points.size());
  for (const auto& p : check.fixed_points) out << fmt::format("  {}\n", bits_string(p.to_binary()));
  for (const auto& p : fixture::printed_fixed_points()) {
    const bool found = std::find(check.missing_fixed_points.begin(), check.missing_fixed_points.end(), p) ==
                       check.missing_fixed_points.end();
    out << fmt::format("printed fixed point {}: {}\n", bits_string(p), found ? "present" : "MISSING");
  }

  out << (check.ok() ? "fixture check: PASS\n" : "fixture check: FAIL\n");
  return check.ok() ? kExitOk : kExitFixtureFailed;
}

void add_threshold_flags(CLI::App* cmd, double& drill, double& pretest) {
  cmd->add_option("--drill-threshold", drill, "Mean rate at or above which a chart is Drill type")
      ->capture_default_str();
  cmd->add_option("--pretest-threshold", pretest, "Mean rate at or below which a chart is PreTest type")
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cluster S-P charts by the basins of attraction of a recurrent network", "spcluster"};
  app.require_subcommand(1);

  ClusterFlags cluster;
  auto* c = app.add_subcommand("cluster", "Random-restart network clustering of a chart");
  c->add_option("--input", cluster.input, "Chart CSV")->required();
  c->add_option("--clusters,-M", cluster.clusters, "Number of representatives M")->capture_default_str();
  c->add_option("--trials", cluster.trials, "Independent trials")->capture_default_str();
  c->add_option("--seed", cluster.seed, "Master seed")->capture_default_str();
  c->add_option("--output", cluster.output, "JSON report path")->required();
  c->add_option("--emit-charts", cluster.emit_dir, "Directory for per-cluster CSV and SVG charts");
  c->add_option("--workers", cluster.workers, "Worker threads (0: SPCLUSTER_WORKERS or all cores)")
      ->capture_default_str();
  c->add_option("--objective", cluster.objective, "Primary selection criterion")
      ->check(CLI::IsMember({"f1", "f2"}))
      ->capture_default_str();
  c->add_option("--max-sweeps", cluster.max_sweeps, "Sweep budget per trajectory")->capture_default_str();
  add_threshold_flags(c, cluster.drill, cluster.pretest);

  BaselineFlags baseline;
  auto* b = app.add_subcommand("baseline", "Equal-size clustering by total score");
  b->add_option("--input", baseline.input, "Chart CSV")->required();
  b->add_option("--clusters,-M", baseline.clusters, "Number of groups")->capture_default_str();
  b->add_option("--output", baseline.output, "JSON report path")->required();
  add_threshold_flags(b, baseline.drill, baseline.pretest);

  InspectFlags inspect;
  auto* i = app.add_subcommand("inspect", "Render the rearranged chart with S- and P-curves");
  i->add_option("--input", inspect.input, "Chart CSV")->required();
  i->add_option("--format", inspect.format, "Rendering format")
      ->check(CLI::IsMember({"txt", "svg"}))
      ->capture_default_str();
  i->add_option("--output", inspect.output, "Rendering path (default: standard output)");
  add_threshold_flags(i, inspect.drill, inspect.pretest);

  GenerateFlags generate;
  auto* g = app.add_subcommand("generate", "Write a synthetic chart");
  g->add_option("--type", generate.type, "Chart type")
      ->check(CLI::IsMember({"test", "drill", "pretest"}))
      ->capture_default_str();
  g->add_option("--students", generate.students, "Number of students L")->capture_default_str();
  g->add_option("--problems", generate.problems, "Number of problems N")->capture_default_str();
  g->add_option("--seed", generate.seed, "Seed")->capture_default_str();
  g->add_option("--noise", generate.noise, "Cell flip probability in [0, 0.5]")->capture_default_str();
  g->add_option("--output", generate.output, "CSV path (default: standard output)");

  FixtureFlags fixture_flags;
  auto* x = app.add_subcommand("fixture", "Check the built-in reference network");
  x->add_option("--flip-bit", fixture_flags.flip_bit, "Flip bit VECTOR,BIT (1-based) of the representatives")
      ->delimiter(',')
      ->expected(2);

  std::vector<char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalidParameters;
  }

  try {
    if (c->parsed()) return cmd_cluster(cluster, out);
    if (b->parsed()) return cmd_baseline(baseline, out);
    if (i->parsed()) return cmd_inspect(inspect, out);
    if (g->parsed()) return cmd_generate(generate, out);
    return cmd_fixture(fixture_flags, out);
  } catch (const CommandError& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidParameters;
  }
}

}  // namespace spcluster::cli
