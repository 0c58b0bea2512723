#include "formexp/multiindex.hpp"

#include <stdexcept>

namespace formexp {

MultiIndex::MultiIndex(std::initializer_list<int> entries) : n(static_cast<int>(entries.size())) {
  if (n > kMaxCoordinates) throw std::invalid_argument("multi-index too long");
  int k = 0;
  for (int e : entries) {
    if (e < 0 || e > 255) throw std::invalid_argument("multi-index entry out of range");
    v[static_cast<std::size_t>(k++)] = static_cast<std::uint8_t>(e);
  }
}

MultiIndex MultiIndex::unit(int dim, int k) {
  if (k < 0 || k >= dim) throw std::invalid_argument("unit index out of range");
  MultiIndex e(dim);
  e.at(k) = 1;
  return e;
}

int MultiIndex::weight() const {
  int w = 0;
  for (int k = 0; k < n; ++k) w += v[static_cast<std::size_t>(k)];
  return w;
}

Rational MultiIndex::factorial() const {
  Rational f = 1;
  for (int k = 0; k < n; ++k) f *= formexp::factorial(v[static_cast<std::size_t>(k)]);
  return f;
}

MultiIndex MultiIndex::upto(int k) const {
  MultiIndex r(n);
  for (int i = 0; i < n && i < k; ++i) r.at(i) = v[static_cast<std::size_t>(i)];
  return r;
}

MultiIndex MultiIndex::below(int k) const { return upto(k - 1); }

MultiIndex MultiIndex::above(int k) const {
  MultiIndex r(n);
  for (int i = k; i < n; ++i) r.at(i) = v[static_cast<std::size_t>(i)];
  return r;
}

MultiIndex operator+(MultiIndex a, const MultiIndex& b) {
  if (a.n != b.n) throw std::invalid_argument("multi-index length mismatch");
  for (int k = 0; k < a.n; ++k) a.at(k) = static_cast<std::uint8_t>(a[k] + b[k]);
  return a;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (int k = 0; k < n; ++k) {
    if (k) s += ",";
    s += std::to_string(v[static_cast<std::size_t>(k)]);
  }
  return s + ")";
}

namespace {

void fill(const Chart& chart, int k, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  int n = chart.dim();
  if (k == n - 1) {
    if (remaining > 1 && chart.coordinate_degree(k) % 2 != 0) return;
    cur.at(k) = static_cast<std::uint8_t>(remaining);
    out.push_back(cur);
    return;
  }
  int cap = chart.coordinate_degree(k) % 2 != 0 ? std::min(remaining, 1) : remaining;
  for (int e = cap; e >= 0; --e) {
    cur.at(k) = static_cast<std::uint8_t>(e);
    fill(chart, k + 1, remaining - e, cur, out);
  }
  cur.at(k) = 0;
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_weight(const Chart& chart, int weight) {
  std::vector<MultiIndex> out;
  MultiIndex cur(chart.dim());
  fill(chart, 0, weight, cur, out);
  return out;
}

}  // namespace formexp
