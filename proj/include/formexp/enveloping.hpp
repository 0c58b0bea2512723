#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "formexp/geometry.hpp"
#include "formexp/tensors.hpp"

namespace formexp {

// Symmetrization 1/n! sum_sigma e X_{sigma(1)} ... X_{sigma(n)} of a word of
// homogeneous vector fields, composed as differential operators.
DiffOp sym_word(std::span<const VectorField> word);
// Left-coefficient-linear symmetrization of a symmetric tensor.
DiffOp sym_map(const SymTensor& s);

// Element of the k-fold tensor power over functions, of either symmetric
// tensors or differential operators. Coefficients are pushed into the first
// factor: a term (keys, c) means (c s^{K_1}) (x) s^{K_2} (x) ... with
// constant-coefficient right factors.
class TensorPower {
 public:
  enum class Kind { Sym, Diff };
  TensorPower(ChartPtr chart, int arity, Kind kind) : chart_(std::move(chart)), arity_(arity), kind_(kind) {}

  const ChartPtr& chart() const { return chart_; }
  int arity() const { return arity_; }
  Kind kind() const { return kind_; }
  const std::map<std::vector<MultiIndex>, GradedPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const std::vector<MultiIndex>& keys, const GradedPoly& coefficient);
  // Adds c_1 w_1 (x) c_2 w_2 (x) ... pushing each coefficient leftwards with its
  // Koszul sign; factors are given as polynomials in base and sym generators.
  void add_factors(std::span<const GradedPoly> factors);
  std::string to_string() const;

  TensorPower& operator+=(const TensorPower& o);
  TensorPower& operator-=(const TensorPower& o);
  friend bool operator==(const TensorPower& a, const TensorPower& b);

 private:
  ChartPtr chart_;
  int arity_;
  Kind kind_;
  std::map<std::vector<MultiIndex>, GradedPoly> terms_;
};

using TensorSquare = TensorPower;

TensorSquare comult_sym(const SymTensor& s);
TensorSquare comult_env(const DiffOp& d);

// (Delta (x) id) and (id (x) Delta) on a tensor square; the coproduct used is
// the shuffle coproduct on the factor's representation.
TensorPower comult_left(const TensorSquare& t);
TensorPower comult_right(const TensorSquare& t);
// Weight-zero projection in the given slot (counit).
TensorPower counit_slot(const TensorSquare& t, int slot);

// Applies a left-C^inf-linear, degree-0 map to each factor and renormalizes.
// For symmetric-tensor input, f receives s^K and may return either kind.
TensorPower map_factors(const TensorPower& t, const std::function<GradedPoly(const MultiIndex&)>& f,
                        TensorPower::Kind result_kind);

// (X (x) 1 + 1 (x) X) * t for a vector field X acting by composition on a
// tensor square of differential operators.
TensorSquare coproduct_act(const VectorField& x, const TensorSquare& t);

// Duality pairing of Gamma(S T) with fiber polynomials.
GradedPoly pairing(const SymTensor& s, const GradedPoly& fiber_poly);

}  // namespace formexp
