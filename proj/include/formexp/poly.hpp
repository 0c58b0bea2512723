#pragma once

#include <array>
#include <climits>
#include <compare>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "formexp/chart.hpp"
#include "formexp/rational.hpp"

namespace formexp {

// Exponents over the chart's generators. The monomial stands for the product
// of its generators taken in canonical (index) order.
struct Monomial {
  std::array<std::uint8_t, kMaxGenerators> exp{};

  int operator[](int g) const { return exp[static_cast<std::size_t>(g)]; }
  std::uint8_t& at(int g) { return exp[static_cast<std::size_t>(g)]; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

int monomial_degree(const Chart& chart, const Monomial& m);
int block_weight(const Chart& chart, const Monomial& m, GenKind kind);
std::uint32_t odd_support(const Chart& chart, const Monomial& m);
bool is_unit(const Monomial& m);

// a*b = sign * out; returns 0 when an odd generator repeats.
int multiply_monomials(const Chart& chart, const Monomial& a, const Monomial& b, Monomial& out);

// Keeps monomials whose exponent sum over `mask` is at most `max`.
struct Cutoff {
  std::uint32_t mask = 0;
  int max = INT_MAX;
  bool keeps(const Monomial& m) const;
  static Cutoff none() { return {}; }
};

struct Degree {
  enum class Kind { Zero, Homogeneous, Heterogeneous } kind = Kind::Zero;
  int value = 0;
  bool homogeneous() const { return kind == Kind::Homogeneous; }
  friend bool operator==(const Degree&, const Degree&) = default;
};

class GradedPoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  GradedPoly() = default;
  explicit GradedPoly(ChartPtr chart) : chart_(std::move(chart)) {}

  static GradedPoly constant(ChartPtr chart, const Rational& c);
  static GradedPoly generator(ChartPtr chart, int g, int power = 1);
  static GradedPoly term(ChartPtr chart, const Monomial& m, const Rational& c);

  const ChartPtr& chart() const { return chart_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const { return coefficient(Monomial{}); }

  void add_term(const Monomial& m, const Rational& c);
  Degree degree() const;
  // Largest exponent sum over a block, or -1 for zero.
  int max_block_weight(GenKind kind) const;
  int min_block_weight(GenKind kind) const;

  template <class Pred>
  GradedPoly filter(Pred keep) const {
    GradedPoly r(chart_);
    for (const auto& [m, c] : terms_)
      if (keep(m)) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }
  GradedPoly truncated(const Cutoff& cut) const {
    return filter([&](const Monomial& m) { return cut.keeps(m); });
  }

  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  GradedPoly& operator*=(const Rational& c);
  GradedPoly operator-() const;
  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
  friend GradedPoly operator*(const Rational& c, GradedPoly a) { return a *= c; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
  friend bool operator==(const GradedPoly& a, const GradedPoly& b);

 private:
  void adopt(const GradedPoly& o);

  ChartPtr chart_;
  TermMap terms_;
};

const ChartPtr& common_chart(const GradedPoly& a, const GradedPoly& b);

// Serial reference product.
GradedPoly multiply(const GradedPoly& a, const GradedPoly& b, const Cutoff& cut = Cutoff::none());
// OpenMP product over the terms of `a`; equal to multiply().
GradedPoly multiply_parallel(const GradedPoly& a, const GradedPoly& b, const Cutoff& cut = Cutoff::none());

GradedPoly power(const GradedPoly& a, int e);

// Left derivative by generator g: a graded derivation of degree -|g| that
// acts from the left, so d_g(m) carries (-1)^{|g| * (degree of the part of m before g)}.
GradedPoly partial_generator(int g, const GradedPoly& f);
// d/dx_i on base coordinates.
GradedPoly partial_left(int i, const GradedPoly& f);

// Derivation of the whole algebra determined by its values on generators:
// D(f) = sum_g D(g) * d_g(f).
struct Derivation {
  std::vector<std::pair<int, GradedPoly>> images;
  GradedPoly apply(const GradedPoly& f, const Cutoff& cut = Cutoff::none()) const;
};

std::map<int, GradedPoly> homogeneous_components(const GradedPoly& f);

}  // namespace formexp
