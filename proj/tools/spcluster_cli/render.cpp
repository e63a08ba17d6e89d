#include "render.hpp"

#include <algorithm>
#include <cstddef>
#include <string_view>

#include <fmt/format.h>

namespace spcluster::cli {

namespace {

void rtrim_append(std::string& out, std::string line) {
  line.erase(line.find_last_not_of(' ') + 1);
  out += line;
  out += '\n';
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_text(const RearrangedChart& rc) {
  const auto& chart = rc.chart;
  const std::size_t l = chart.students();
  const std::size_t n = chart.problems();

  std::size_t lw = 1;
  for (const auto& r : chart.rows()) lw = std::max(lw, r.student_id.size());
  std::size_t cw = std::to_string(l).size();
  for (const auto& id : chart.problem_ids()) cw = std::max(cw, id.size());

  auto boundary = [&](std::size_t k) {
    std::string line(lw, ' ');
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      const bool mark = rc.p_totals[j] == k;
      any = any || mark;
      line += ' ';
      line += std::string(cw, mark ? '-' : ' ');
    }
    return any ? line : std::string{};
  };

  std::string out;
  std::string header(lw, ' ');
  for (const auto& id : chart.problem_ids()) header += fmt::format(" {:>{}}", id, cw);
  rtrim_append(out, header);

  if (auto b = boundary(0); !b.empty()) rtrim_append(out, b);
  for (std::size_t i = 0; i < l; ++i) {
    const auto& row = chart.row(i);
    std::string line = fmt::format("{:<{}}", row.student_id, lw);
    for (std::size_t j = 0; j < n; ++j) {
      line += rc.s_totals[i] == j ? '|' : ' ';
      line += fmt::format("{:>{}}", static_cast<int>(row.bits[j]), cw);
    }
    line += rc.s_totals[i] == n ? '|' : ' ';
    line += fmt::format(" S={}", rc.s_totals[i]);
    rtrim_append(out, line);
    if (auto b = boundary(i + 1); !b.empty()) rtrim_append(out, b);
  }

  std::string footer = fmt::format("{:<{}}", "P", lw);
  for (std::size_t j = 0; j < n; ++j) footer += fmt::format(" {:>{}}", rc.p_totals[j], cw);
  rtrim_append(out, footer);
  return out;
}

std::string render_svg(const RearrangedChart& rc) {
  constexpr int kCell = 16;
  constexpr int kLeft = 48;
  constexpr int kTop = 24;
  const auto& chart = rc.chart;
  const std::size_t l = chart.students();
  const std::size_t n = chart.problems();
  const int width = kLeft + static_cast<int>(n) * kCell + 8;
  const int height = kTop + static_cast<int>(l) * kCell + 8;

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n", width,
      height, width, height);
  out += "<style>text{font-family:monospace;font-size:10px}</style>\n";
  for (std::size_t j = 0; j < n; ++j) {
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                       kLeft + static_cast<int>(j) * kCell + kCell / 2, kTop - 6, xml_escape(chart.problem_ids()[j]));
  }
  for (std::size_t i = 0; i < l; ++i) {
    const int y = kTop + static_cast<int>(i) * kCell;
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", kLeft - 4, y + kCell - 4,
                       xml_escape(chart.row(i).student_id));
    for (std::size_t j = 0; j < n; ++j) {
      out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"#bbb\"/>\n",
                         kLeft + static_cast<int>(j) * kCell, y, kCell, kCell,
                         chart.row(i).bits[j] ? "#444" : "#fff");
    }
  }

  std::string s_points;
  for (std::size_t i = 0; i < l; ++i) {
    const int x = kLeft + static_cast<int>(rc.s_totals[i]) * kCell;
    const int y = kTop + static_cast<int>(i) * kCell;
    s_points += fmt::format("{},{} {},{} ", x, y, x, y + kCell);
  }
  std::string p_points;
  for (std::size_t j = 0; j < n; ++j) {
    const int x = kLeft + static_cast<int>(j) * kCell;
    const int y = kTop + static_cast<int>(rc.p_totals[j]) * kCell;
    p_points += fmt::format("{},{} {},{} ", x, y, x + kCell, y);
  }
  s_points.pop_back();
  p_points.pop_back();
  out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"#d22\" stroke-width=\"2\"/>\n", s_points);
  out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"#22d\" stroke-width=\"2\"/>\n", p_points);
  out += "</svg>\n";
  return out;
}

}  // namespace spcluster::cli
