#pragma once

#include <map>
#include <string>
#include <string_view>

#include "formexp/multiindex.hpp"
#include "formexp/poly.hpp"

namespace formexp {

// Largest weight/order a symmetric tensor or operator may reach: Q + 1, one
// step above the truncation so that X * pbw(S) stays representable for
// weight(S) <= Q.
int operator_cap(const Chart& chart);

MultiIndex sym_part(const Chart& chart, const Monomial& m);
Monomial sym_monomial(const Chart& chart, const MultiIndex& k);

// Sum over K of (base coefficient) * s^K, with s^K the canonical word
// s_1^{k_1} ... s_n^{k_n}.
std::map<MultiIndex, GradedPoly> split_by_sym(const GradedPoly& p);

// Element of Gamma(S T): polynomial in base and sym generators.
class SymTensor {
 public:
  SymTensor() = default;
  explicit SymTensor(GradedPoly p);

  static SymTensor zero(ChartPtr chart) { return SymTensor(GradedPoly(std::move(chart))); }
  static SymTensor function(GradedPoly f);
  static SymTensor basis(ChartPtr chart, const MultiIndex& k);  // s^K, canonical order
  static SymTensor coordinate_field(ChartPtr chart, int i);     // s_i

  const GradedPoly& poly() const { return p_; }
  const ChartPtr& chart() const { return p_.chart(); }
  bool is_zero() const { return p_.is_zero(); }
  int weight() const { return p_.max_block_weight(GenKind::Sym); }
  SymTensor component(int w) const;
  std::map<MultiIndex, GradedPoly> split() const { return split_by_sym(p_); }
  std::string to_string() const;

  SymTensor& operator+=(const SymTensor& o) { p_ += o.p_; return *this; }
  SymTensor& operator-=(const SymTensor& o) { p_ -= o.p_; return *this; }
  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  SymTensor operator-() const { return SymTensor(-p_); }
  friend SymTensor operator*(const Rational& c, const SymTensor& s) { return SymTensor(s.p_ * c); }
  friend SymTensor operator*(const GradedPoly& f, const SymTensor& s);
  friend bool operator==(const SymTensor& a, const SymTensor& b) { return a.p_ == b.p_; }

 private:
  GradedPoly p_;
};

// Symmetric product, checked against the weight cap.
SymTensor sym_product(const SymTensor& a, const SymTensor& b);
// Reversed word s_n^{i_n} ... s_1^{i_1} as a signed canonical monomial.
SymTensor reversed_word(ChartPtr chart, const MultiIndex& k);

// Normal-ordered differential operator sum_K f_K d^K, stored with the sym
// generators standing for the derivations d/dx_i.
class DiffOp {
 public:
  DiffOp() = default;
  explicit DiffOp(GradedPoly p);

  static DiffOp zero(ChartPtr chart) { return DiffOp(GradedPoly(std::move(chart))); }
  static DiffOp function(GradedPoly f);
  static DiffOp partial(ChartPtr chart, int i);
  static DiffOp basis(ChartPtr chart, const MultiIndex& k);

  const GradedPoly& poly() const { return p_; }
  const ChartPtr& chart() const { return p_.chart(); }
  bool is_zero() const { return p_.is_zero(); }
  int order() const { return p_.max_block_weight(GenKind::Sym); }
  std::map<MultiIndex, GradedPoly> split() const { return split_by_sym(p_); }
  std::string to_string() const;

  DiffOp& operator+=(const DiffOp& o) { p_ += o.p_; return *this; }
  DiffOp& operator-=(const DiffOp& o) { p_ -= o.p_; return *this; }
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  DiffOp operator-() const { return DiffOp(-p_); }
  friend DiffOp operator*(const Rational& c, const DiffOp& d) { return DiffOp(d.p_ * c); }
  // Left multiplication by a function.
  friend DiffOp operator*(const GradedPoly& f, const DiffOp& d);
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.p_ == b.p_; }

 private:
  GradedPoly p_;
};

// d/dx_i composed on the left: d_i o D.
DiffOp partial_then(int i, const DiffOp& d);
DiffOp compose(const DiffOp& a, const DiffOp& b);
GradedPoly apply(const DiffOp& d, const GradedPoly& f);

// Order, or nullopt for the zero operator.
std::optional<int> filtration_order(const DiffOp& d);
// Top-order part read as a symmetric tensor.
SymTensor gr_leading(const DiffOp& d);

SymTensor parse_sym(const ChartPtr& chart, std::string_view text);
DiffOp parse_diffop(const ChartPtr& chart, std::string_view text);

void check_cap(const Chart& chart, int weight, const char* what);

}  // namespace formexp
