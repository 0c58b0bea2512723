#include "formexp/chart.hpp"

#include <set>
#include <stdexcept>

namespace formexp {

namespace {

std::string fiber_name(const std::string& base) {
  if (!base.empty() && base[0] == 'x') return "y" + base.substr(1);
  return "y_" + base;
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(s[0])) return false;
  for (char c : s)
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  return true;
}

}  // namespace

Chart::Chart(std::vector<Coordinate> coords, Truncation trunc)
    : coords_(std::move(coords)), trunc_(trunc), n_(static_cast<int>(coords_.size())) {
  if (n_ < 1 || n_ > kMaxCoordinates)
    throw std::invalid_argument("a chart needs between 1 and " + std::to_string(kMaxCoordinates) + " coordinates");
  if (trunc_.max_sym_weight < 1 || trunc_.max_form_degree < 2 || trunc_.max_base_degree < 1)
    throw std::invalid_argument("truncation needs Q >= 1, P >= 2, B >= 1");
  degrees_.resize(static_cast<std::size_t>(4 * n_));
  names_.resize(static_cast<std::size_t>(4 * n_));
  std::set<std::string> seen;
  for (int i = 0; i < n_; ++i) {
    const auto& c = coords_[static_cast<std::size_t>(i)];
    if (!valid_identifier(c.name)) throw std::invalid_argument("bad coordinate name '" + c.name + "'");
    int d = c.degree;
    const int gs[4] = {generator(GenKind::Base, i), generator(GenKind::Fiber, i), generator(GenKind::Form, i),
                       generator(GenKind::Sym, i)};
    const int ds[4] = {d, d, d + 1, -d};
    const std::string ns[4] = {c.name, fiber_name(c.name), "d" + c.name, "s[" + c.name + "]"};
    for (int b = 0; b < 4; ++b) {
      degrees_[static_cast<std::size_t>(gs[b])] = ds[b];
      names_[static_cast<std::size_t>(gs[b])] = ns[b];
      if (ds[b] % 2 != 0) odd_mask_ |= 1u << gs[b];
      if (!seen.insert(ns[b]).second) throw std::invalid_argument("generator name clash on '" + ns[b] + "'");
    }
  }
}

std::shared_ptr<const Chart> Chart::make(std::vector<Coordinate> coords, Truncation trunc) {
  return std::make_shared<const Chart>(std::move(coords), trunc);
}

std::uint32_t Chart::block_mask(GenKind kind) const {
  std::uint32_t m = (1u << n_) - 1u;
  return m << (static_cast<int>(kind) * n_);
}

std::optional<int> Chart::find(std::string_view name) const {
  for (int g = 0; g < 4 * n_; ++g)
    if (names_[static_cast<std::size_t>(g)] == name) return g;
  return std::nullopt;
}

std::optional<int> Chart::find_coordinate(std::string_view name) const {
  for (int i = 0; i < n_; ++i)
    if (coords_[static_cast<std::size_t>(i)].name == name) return i;
  return std::nullopt;
}

bool Chart::compatible(const Chart& other) const {
  if (this == &other) return true;
  if (n_ != other.n_) return false;
  for (int i = 0; i < n_; ++i) {
    const auto& a = coords_[static_cast<std::size_t>(i)];
    const auto& b = other.coords_[static_cast<std::size_t>(i)];
    if (a.name != b.name || a.degree != b.degree) return false;
  }
  return true;
}

ChartPtr with_truncation(const ChartPtr& chart, Truncation trunc) {
  return Chart::make(chart->coordinates(), trunc);
}

}  // namespace formexp
