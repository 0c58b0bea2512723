#pragma once

#include <vector>

#include "formexp/forms.hpp"
#include "formexp/geometry.hpp"
#include "formexp/pbw.hpp"

namespace formexp {

// delta = sum_i dx_i d/dy_i, a derivation of degree +1.
FormSection delta_op(const FormSection& w);
// delta^{-1} = 1/(p+q) sum_i y_i d/d(dx_i) on each (p, q) component; zero on (0, 0).
FormSection delta_inv_op(const FormSection& w);
// sum_i y_i d/d(dx_i) without the 1/(p+q) normalization.
FormSection kappa_op(const FormSection& w);
// i_X = sum_l X^l d/d(dx_l), of degree |X| - 1.
FormSection interior_product(const VectorField& x, const FormSection& w);
// Projection to the (0, 0) component.
GradedPoly sigma_aug(const FormSection& w);
FormSection iota_incl(const GradedPoly& f);

// Covariant differential of the connection induced on the dual of S T, with
// nabla_{d_i} y_k = -sum_j (-1)^{|x_j|(|x_k|+1)} Gamma^k_{ij} y_j.
Derivation dnabla_derivation(const Connection& c);
FormSection dnabla_form(const Connection& c, const FormSection& w, const Cutoff& cut = Cutoff::none());
FormSection a_action(const FiberVectorField& a, const FormSection& w, const Cutoff& cut = Cutoff::none());

// A with delta^{-1} A = 0 and D = -delta + d_nabla + A flat. All section
// operators work in the quotient by filtration weight p + q > Q.
class FedosovData {
 public:
  static FedosovData build(const Connection& c);

  const Connection& connection() const { return conn_; }
  const ChartPtr& chart() const { return conn_.chart(); }
  const FiberVectorField& A() const { return a_; }
  int weight_bound() const { return bound_; }
  int iterations() const { return iterations_; }
  Cutoff cutoff() const;

  FormSection truncate(const FormSection& w) const;
  FormSection D(const FormSection& w) const;
  // The perturbation d_nabla + A.
  FormSection perturbation(const FormSection& w) const;
  // D(D(g)) for every generator g; all zero when D is flat.
  std::vector<FormSection> d2_residuals() const;

 private:
  FedosovData(Connection c, FiberVectorField a, int iterations);

  Connection conn_;
  FiberVectorField a_;
  int bound_;
  int iterations_;
  Derivation d_;
  Derivation partial_;
};

inline FedosovData fedosov_A(const Connection& c) { return FedosovData::build(c); }
inline FormSection D_apply(const FedosovData& data, const FormSection& w) { return data.D(w); }

// sum_{|I| <= Q} 1/I! y^I pbw(rev d^I)(f)
FormSection tau_pbw(const PbwContext& ctx, const GradedPoly& f);
// sum_n (delta^{-1}(d_nabla + A))^n i(f)
FormSection tau_series(const FedosovData& data, const GradedPoly& f);
// sum_n (delta^{-1}(d_nabla + A))^n delta^{-1}
FormSection homotopy_h(const FedosovData& data, const FormSection& w);

}  // namespace formexp
