#pragma once

// Independent references for flat sections: plain substitution for the zero
// connection, and Taylor coefficients along geodesics for even charts.

#include <map>
#include <vector>

#include "formexp/fedosov.hpp"

namespace oracles {

using namespace formexp;

// Commutative polynomials in x_1..x_n, v_1..v_n, used to run the geodesic
// spray d/dt = v.d_x - Gamma(v, v).d_v on jets of f(gamma(t)).
using Jet = std::map<std::vector<int>, Rational>;

inline Jet jet_from(const GradedPoly& f, int n) {
  Jet r;
  for (const auto& [m, c] : f.terms()) {
    std::vector<int> e(static_cast<std::size_t>(2 * n), 0);
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = m[i];
    r[e] += c;
  }
  return r;
}

inline void add(Jet& a, const std::vector<int>& e, const Rational& c) {
  Rational& slot = a[e];
  slot += c;
  if (slot == 0) a.erase(e);
}

inline Jet spray(const Jet& g, const std::vector<Jet>& gamma_vv, int n) {
  Jet r;
  for (const auto& [e, c] : g) {
    for (int i = 0; i < n; ++i) {
      if (e[static_cast<std::size_t>(i)] == 0) continue;
      auto e2 = e;
      e2[static_cast<std::size_t>(i)] -= 1;
      e2[static_cast<std::size_t>(n + i)] += 1;
      add(r, e2, c * e[static_cast<std::size_t>(i)]);
    }
    for (int k = 0; k < n; ++k) {
      int p = e[static_cast<std::size_t>(n + k)];
      if (p == 0) continue;
      for (const auto& [ge, gc] : gamma_vv[static_cast<std::size_t>(k)]) {
        auto e2 = e;
        e2[static_cast<std::size_t>(n + k)] -= 1;
        for (std::size_t t = 0; t < e2.size(); ++t) e2[t] += ge[t];
        add(r, e2, -c * gc * p);
      }
    }
  }
  return r;
}

// Taylor expansion of f along geodesics, with v read as the fiber variable y.
inline FormSection geodesic_taylor(const Connection& conn, const GradedPoly& f) {
  const ChartPtr& c = conn.chart();
  int n = c->dim(), q = c->truncation().max_sym_weight;
  std::vector<Jet> gamma_vv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (const auto& [e0, coeff] : jet_from(conn.gamma(i, j, k), n)) {
          auto e = e0;
          e[static_cast<std::size_t>(n + i)] += 1;
          e[static_cast<std::size_t>(n + j)] += 1;
          add(gamma_vv[static_cast<std::size_t>(k)], e, coeff);
        }
  FormSection out(c);
  Jet g = jet_from(f, n);
  Rational fact(1);
  for (int order = 0; order <= q; ++order) {
    if (order > 0) {
      g = spray(g, gamma_vv, n);
      fact *= order;
    }
    for (const auto& [e, coeff] : g) {
      Monomial m;
      for (int i = 0; i < n; ++i) {
        m.at(i) = static_cast<std::uint8_t>(e[static_cast<std::size_t>(i)]);
        m.at(n + i) = static_cast<std::uint8_t>(e[static_cast<std::size_t>(n + i)]);
      }
      out.add_term(m, coeff / fact);
    }
  }
  return out;
}

// f(x + y) by substituting each base generator, truncated to fiber weight Q.
inline FormSection shifted(const GradedPoly& f) {
  const ChartPtr& c = f.chart();
  int n = c->dim();
  FormSection out(c);
  for (const auto& [m, coeff] : f.terms()) {
    FormSection prod = GradedPoly::constant(c, coeff);
    for (int i = 0; i < n; ++i)
      for (int e = 0; e < m[i]; ++e)
        prod = prod * (GradedPoly::generator(c, c->generator(GenKind::Base, i)) +
                       GradedPoly::generator(c, c->generator(GenKind::Fiber, i)));
    out += prod;
  }
  return out.truncated(fiber_cutoff(*c, c->truncation().max_sym_weight));
}

}  // namespace oracles
