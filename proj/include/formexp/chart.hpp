#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace formexp {

inline constexpr int kMaxCoordinates = 6;
inline constexpr int kMaxGenerators = 4 * kMaxCoordinates;

// Generator blocks in canonical order. Sym generators s_i stand for the
// derivations d/dx_i inside symmetric tensors and differential operators.
enum class GenKind : std::uint8_t { Base = 0, Fiber = 1, Form = 2, Sym = 3 };

struct Coordinate {
  std::string name;
  int degree = 0;
};

struct Truncation {
  int max_sym_weight = 4;   // Q
  int max_form_degree = 2;  // P
  int max_base_degree = 3;  // B, bounds random inputs only
};

class Chart {
 public:
  Chart(std::vector<Coordinate> coords, Truncation trunc);

  static std::shared_ptr<const Chart> make(std::vector<Coordinate> coords, Truncation trunc = {});

  int dim() const { return n_; }
  const std::vector<Coordinate>& coordinates() const { return coords_; }
  const Coordinate& coordinate(int i) const { return coords_.at(static_cast<std::size_t>(i)); }
  int coordinate_degree(int i) const { return coords_[static_cast<std::size_t>(i)].degree; }
  const Truncation& truncation() const { return trunc_; }

  int generator_count() const { return 4 * n_; }
  int generator(GenKind kind, int i) const { return static_cast<int>(kind) * n_ + i; }
  GenKind kind_of(int g) const { return static_cast<GenKind>(g / n_); }
  int coord_of(int g) const { return g % n_; }
  int degree(int g) const { return degrees_[static_cast<std::size_t>(g)]; }
  bool odd(int g) const { return (odd_mask_ >> g) & 1u; }
  std::uint32_t odd_mask() const { return odd_mask_; }
  std::uint32_t block_mask(GenKind kind) const;
  const std::string& name(int g) const { return names_[static_cast<std::size_t>(g)]; }
  std::optional<int> find(std::string_view name) const;
  std::optional<int> find_coordinate(std::string_view name) const;

  // Same coordinate list (truncation may differ).
  bool compatible(const Chart& other) const;

 private:
  std::vector<Coordinate> coords_;
  Truncation trunc_;
  int n_;
  std::vector<int> degrees_;
  std::vector<std::string> names_;
  std::uint32_t odd_mask_ = 0;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr with_truncation(const ChartPtr& chart, Truncation trunc);

}  // namespace formexp
