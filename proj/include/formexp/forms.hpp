#pragma once

#include <string>
#include <vector>

#include "formexp/multiindex.hpp"
#include "formexp/poly.hpp"

namespace formexp {

// Sections of Omega(M, S^ T^v): polynomials in base, fiber and form generators.
using FormSection = GradedPoly;

inline int form_degree(const Chart& chart, const Monomial& m) { return block_weight(chart, m, GenKind::Form); }
inline int fiber_weight(const Chart& chart, const Monomial& m) { return block_weight(chart, m, GenKind::Fiber); }

// Quotient by filtration weight p + q > max.
Cutoff weight_cutoff(const Chart& chart, int max);
// Fiber weight q <= max.
Cutoff fiber_cutoff(const Chart& chart, int max);

FormSection parse_form(const ChartPtr& chart, std::string_view text);

// sum_k comps[k] d/dy_k with form-valued coefficients; acts on sections as a
// derivation of the fiber variables.
class FiberVectorField {
 public:
  FiberVectorField() = default;
  explicit FiberVectorField(ChartPtr chart);
  FiberVectorField(ChartPtr chart, std::vector<FormSection> comps);

  const ChartPtr& chart() const { return chart_; }
  const FormSection& operator[](int k) const { return comps_[static_cast<std::size_t>(k)]; }
  FormSection& at(int k) { return comps_.at(static_cast<std::size_t>(k)); }
  const std::vector<FormSection>& components() const { return comps_; }
  bool is_zero() const;
  FormSection apply(const FormSection& w, const Cutoff& cut = Cutoff::none()) const;

  FiberVectorField operator-() const;
  friend FiberVectorField operator+(FiberVectorField a, const FiberVectorField& b);
  friend bool operator==(const FiberVectorField& a, const FiberVectorField& b) { return a.comps_ == b.comps_; }

 private:
  ChartPtr chart_;
  std::vector<FormSection> comps_;
};

// Coefficient records A^i_{J,k} of sum dx_i y^J d/dy_k, one line each, ordered
// by i, then J, then k: "A[i=1,J=(2,0),k=2] = <poly>".
struct FiberRecord {
  int i;
  MultiIndex j;
  int k;
  GradedPoly coefficient;
};
std::vector<FiberRecord> fiber_records(const FiberVectorField& a);
std::string format_records(const std::vector<FiberRecord>& records);

}  // namespace formexp
