#pragma once

#include <cstdint>
#include <random>

#include "formexp/forms.hpp"
#include "formexp/geometry.hpp"
#include "formexp/tensors.hpp"

namespace formexp {

// Seeded generator of test inputs. Base exponents stay within the chart's B,
// coefficients are small rationals.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}
  // Independent stream for sample `index` of a run seeded with `seed`.
  static RandomSource stream(std::uint64_t seed, std::uint64_t index);

  int uniform(int lo, int hi);  // inclusive
  Rational coefficient();

  // Random base monomial with total exponent <= max_degree.
  Monomial base_monomial(const Chart& chart, int max_degree);
  GradedPoly function(const ChartPtr& chart, int max_terms);
  // Homogeneous function of the given degree; zero when none is found.
  GradedPoly homogeneous_function(const ChartPtr& chart, int degree, int max_terms);
  // Homogeneous vector field of the given degree (may be zero).
  VectorField homogeneous_field(const ChartPtr& chart, int degree, int max_terms);
  MultiIndex multi_index(const Chart& chart, int weight);
  // sum of f_K s^K with weight(K) in [min_weight, max_weight].
  SymTensor sym_tensor(const ChartPtr& chart, int min_weight, int max_weight, int max_terms);
  // Fiber polynomial with function coefficients, fiber weight <= max_weight.
  GradedPoly fiber_poly(const ChartPtr& chart, int max_weight, int max_terms);
  // Section of form degree p with fiber weight <= max_q.
  FormSection section(const ChartPtr& chart, int p, int max_q, int max_terms);

 private:
  std::mt19937_64 rng_;
};

}  // namespace formexp
