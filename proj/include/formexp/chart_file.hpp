#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "formexp/geometry.hpp"

namespace formexp {

// Chart file grammar (line oriented, '#' starts a comment):
//
//   [coordinates]        one "name degree" per line, in chart order
//   [christoffel]        "i j k = poly": Gamma^k_{ij}, i/j/k given as
//                        coordinate names or 1-based indices, poly over base
//                        coordinates; absent entries are zero
//   [truncation]         "Q = n", "P = n", "B = n" (defaults 4, 2, 3)
//   [flags]              "torsion_free = true|false" (default false)
struct ChartFile {
  ChartPtr chart;
  Connection connection;
};

// `max_weight` overrides Q from the file.
ChartFile parse_chart_file(std::string_view text, std::optional<int> max_weight = std::nullopt);
ChartFile load_chart_file(const std::string& path, std::optional<int> max_weight = std::nullopt);
std::string format_chart_file(const ChartFile& file);

}  // namespace formexp
