#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "formexp/chart.hpp"
#include "formexp/rational.hpp"

namespace formexp {

struct MultiIndex {
  std::array<std::uint8_t, kMaxCoordinates> v{};
  int n = 0;

  MultiIndex() = default;
  explicit MultiIndex(int dim) : n(dim) {}
  MultiIndex(std::initializer_list<int> entries);

  static MultiIndex unit(int dim, int k);  // e_k, 0-based k

  int operator[](int k) const { return v[static_cast<std::size_t>(k)]; }
  std::uint8_t& at(int k) { return v[static_cast<std::size_t>(k)]; }
  int weight() const;  // |I|
  Rational factorial() const;  // I!
  // Keep components with 1-based index <= k, < k, > k.
  MultiIndex upto(int k) const;
  MultiIndex below(int k) const;
  MultiIndex above(int k) const;
  friend MultiIndex operator+(MultiIndex a, const MultiIndex& b);
  std::string to_string() const;  // "(2,0)"
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

// All multi-indices of the given weight; entries of odd coordinates stay <= 1.
std::vector<MultiIndex> multi_indices_of_weight(const Chart& chart, int weight);

}  // namespace formexp
