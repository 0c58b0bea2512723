#pragma once

#include <vector>

#include "formexp/poly.hpp"
#include "formexp/tensors.hpp"

namespace formexp {

// X = sum_i f^i d/dx_i with base-only components.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(ChartPtr chart);
  VectorField(ChartPtr chart, std::vector<GradedPoly> components);

  static VectorField coordinate(ChartPtr chart, int i);

  const ChartPtr& chart() const { return chart_; }
  const GradedPoly& operator[](int i) const { return comps_[static_cast<std::size_t>(i)]; }
  const std::vector<GradedPoly>& components() const { return comps_; }
  bool is_zero() const;
  // Total degree of f^i d_i, shared by all terms when homogeneous.
  Degree degree() const;
  // Splits into homogeneous pieces keyed by degree.
  std::map<int, VectorField> homogeneous_parts() const;

  SymTensor as_sym() const;
  DiffOp as_diffop() const;
  std::string to_string() const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  VectorField operator-() const;
  friend VectorField operator*(const Rational& c, VectorField x);
  // Left multiplication by a function: (fX)^i = f * X^i.
  friend VectorField operator*(const GradedPoly& f, const VectorField& x);
  friend bool operator==(const VectorField& a, const VectorField& b);

 private:
  ChartPtr chart_;
  std::vector<GradedPoly> comps_;
};

VectorField vector_field_from_sym(const SymTensor& s);

GradedPoly vf_apply(const VectorField& x, const GradedPoly& f);
VectorField lie_bracket(const VectorField& x, const VectorField& y);

// Christoffel symbols: nabla_{d_i} d_j = sum_k gamma(i, j, k) d_k.
class Connection {
 public:
  Connection() = default;
  // Validates the degree of every symbol; with `torsion_free` set, also
  // requires the graded symmetry that characterizes vanishing torsion.
  Connection(ChartPtr chart, std::vector<GradedPoly> symbols, bool torsion_free);

  static Connection flat(ChartPtr chart);
  static std::vector<GradedPoly> empty_table(const ChartPtr& chart);
  static std::size_t slot(int n, int i, int j, int k) {
    return static_cast<std::size_t>((i * n + j) * n + k);
  }

  const ChartPtr& chart() const { return chart_; }
  const GradedPoly& gamma(int i, int j, int k) const { return symbols_[slot(chart_->dim(), i, j, k)]; }
  bool torsion_free() const { return torsion_free_; }
  bool symbols_symmetric() const;

 private:
  ChartPtr chart_;
  std::vector<GradedPoly> symbols_;
  bool torsion_free_ = false;
};

VectorField cov_deriv(const Connection& c, const VectorField& x, const VectorField& y);
VectorField torsion(const Connection& c, const VectorField& x, const VectorField& y);
VectorField curvature(const Connection& c, const VectorField& x, const VectorField& y, const VectorField& z);

// nabla_X on symmetric tensors, a derivation of the symmetric product.
SymTensor nabla_sym(const Connection& c, const VectorField& x, const SymTensor& s);

}  // namespace formexp
