#pragma once

#include <string>

#include "formexp/chart_file.hpp"
#include "formexp/expression.hpp"
#include "formexp/tensors.hpp"

namespace testing {

inline formexp::ChartFile chart(const std::string& name, std::optional<int> q = std::nullopt) {
  return formexp::load_chart_file(std::string(FORMEXP_CHART_DIR) + "/" + name + ".chart", q);
}

inline formexp::ChartPtr coords(std::vector<formexp::Coordinate> c, int q = 4) {
  return formexp::Chart::make(std::move(c), formexp::Truncation{q, 2, 3});
}

inline formexp::GradedPoly P(const formexp::ChartPtr& c, const std::string& text) { return formexp::parse_poly(c, text); }
inline formexp::SymTensor S(const formexp::ChartPtr& c, const std::string& text) { return formexp::parse_sym(c, text); }
inline formexp::DiffOp Op(const formexp::ChartPtr& c, const std::string& text) { return formexp::parse_diffop(c, text); }

// Charts used across the test files, all with torsion-free connections.
inline const char* const kTorsionFreeCharts[] = {"flat1", "e1", "curved2", "mixed", "odd2", "deg2"};

}  // namespace testing
