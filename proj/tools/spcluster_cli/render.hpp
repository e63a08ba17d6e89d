#pragma once

#include <string>

#include "spcluster/spchart.hpp"

namespace spcluster::cli {

/// Text grid of the rearranged chart. In row i a `|` follows the first S(i)
/// cells (the S-curve step); a line of `-` under column j sits below row P(j)
/// (the P-curve step).
std::string render_text(const RearrangedChart& rc);

/// Filled cells for correct answers, S-curve in red, P-curve in blue.
std::string render_svg(const RearrangedChart& rc);

}  // namespace spcluster::cli
