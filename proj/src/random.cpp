#include "formexp/random.hpp"

namespace formexp {

RandomSource RandomSource::stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  RandomSource r(0);
  r.rng_.seed(seq);
  return r;
}

int RandomSource::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Rational RandomSource::coefficient() {
  static const int nums[] = {1, -1, 2, -2, 3, -3, 1, -1, 5, -4};
  static const int dens[] = {1, 1, 1, 2, 3, 1, 2, 1, 4, 1};
  Rational c(nums[uniform(0, 9)], dens[uniform(0, 9)]);
  c.canonicalize();
  return c;
}

Monomial RandomSource::base_monomial(const Chart& chart, int max_degree) {
  Monomial m;
  int budget = uniform(0, max_degree);
  for (int step = 0; step < budget; ++step) {
    int g = chart.generator(GenKind::Base, uniform(0, chart.dim() - 1));
    if (chart.odd(g) && m[g] >= 1) continue;
    m.at(g) += 1;
  }
  return m;
}

GradedPoly RandomSource::function(const ChartPtr& chart, int max_terms) {
  GradedPoly f(chart);
  int terms = uniform(1, max_terms);
  for (int t = 0; t < terms; ++t) f.add_term(base_monomial(*chart, chart->truncation().max_base_degree), coefficient());
  return f;
}

GradedPoly RandomSource::homogeneous_function(const ChartPtr& chart, int degree, int max_terms) {
  GradedPoly f(chart);
  int terms = uniform(1, max_terms);
  for (int attempt = 0; attempt < 40 * max_terms && terms > 0; ++attempt) {
    Monomial m = base_monomial(*chart, chart->truncation().max_base_degree);
    if (monomial_degree(*chart, m) != degree) continue;
    f.add_term(m, coefficient());
    --terms;
  }
  return f;
}

VectorField RandomSource::homogeneous_field(const ChartPtr& chart, int degree, int max_terms) {
  std::vector<GradedPoly> comps(static_cast<std::size_t>(chart->dim()), GradedPoly(chart));
  int terms = uniform(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    int i = uniform(0, chart->dim() - 1);
    comps[static_cast<std::size_t>(i)] += homogeneous_function(chart, degree + chart->coordinate_degree(i), 1);
  }
  return VectorField(chart, std::move(comps));
}

MultiIndex RandomSource::multi_index(const Chart& chart, int weight) {
  auto all = multi_indices_of_weight(chart, weight);
  if (all.empty()) return MultiIndex(chart.dim());
  return all[static_cast<std::size_t>(uniform(0, static_cast<int>(all.size()) - 1))];
}

SymTensor RandomSource::sym_tensor(const ChartPtr& chart, int min_weight, int max_weight, int max_terms) {
  GradedPoly p(chart);
  int terms = uniform(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    int w = uniform(min_weight, max_weight);
    auto all = multi_indices_of_weight(*chart, w);
    if (all.empty()) continue;
    MultiIndex k = all[static_cast<std::size_t>(uniform(0, static_cast<int>(all.size()) - 1))];
    Monomial m = base_monomial(*chart, chart->truncation().max_base_degree);
    Monomial s = sym_monomial(*chart, k);
    for (int g = 0; g < chart->generator_count(); ++g) m.at(g) = static_cast<std::uint8_t>(m[g] + s[g]);
    p.add_term(m, coefficient());
  }
  return SymTensor(std::move(p));
}

GradedPoly RandomSource::fiber_poly(const ChartPtr& chart, int max_weight, int max_terms) {
  GradedPoly p(chart);
  int terms = uniform(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    MultiIndex j = multi_index(*chart, uniform(0, max_weight));
    Monomial m = base_monomial(*chart, chart->truncation().max_base_degree);
    for (int i = 0; i < chart->dim(); ++i) m.at(chart->generator(GenKind::Fiber, i)) = static_cast<std::uint8_t>(j[i]);
    p.add_term(m, coefficient());
  }
  return p;
}

FormSection RandomSource::section(const ChartPtr& chart, int p, int max_q, int max_terms) {
  FormSection w(chart);
  int terms = uniform(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    MultiIndex j = multi_index(*chart, uniform(0, max_q));
    Monomial m = base_monomial(*chart, chart->truncation().max_base_degree);
    for (int i = 0; i < chart->dim(); ++i) m.at(chart->generator(GenKind::Fiber, i)) = static_cast<std::uint8_t>(j[i]);
    // dx_i is odd exactly when x_i is even, and then appears at most once.
    int placed = 0;
    for (int attempt = 0; attempt < 20 * (p + 1) && placed < p; ++attempt) {
      int g = chart->generator(GenKind::Form, uniform(0, chart->dim() - 1));
      if (chart->odd(g) && m[g] >= 1) continue;
      m.at(g) += 1;
      ++placed;
    }
    if (placed == p) w.add_term(m, coefficient());
  }
  return w;
}

}  // namespace formexp
