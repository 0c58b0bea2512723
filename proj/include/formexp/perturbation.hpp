#pragma once

#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "formexp/errors.hpp"

namespace formexp {

// Elements need is_zero(), +, - and ==.
template <class V>
concept ComplexElement = requires(const V& a, const V& b) {
  { a.is_zero() } -> std::convertible_to<bool>;
  { a + b } -> std::convertible_to<V>;
  { a - b } -> std::convertible_to<V>;
  { a == b } -> std::convertible_to<bool>;
};

// Contraction of (N, dN) onto (M, dM) with
//   sigma tau = id,  tau sigma - id = h dN + dN h,
//   sigma h = 0,  h tau = 0,  h h = 0.
template <ComplexElement N, ComplexElement M>
struct Contraction {
  std::function<N(const N&)> dN;
  std::function<M(const M&)> dM;
  std::function<M(const N&)> sigma;
  std::function<N(const M&)> tau;
  std::function<N(const N&)> h;
};

namespace detail {

// sum_{k >= 0} f^k(x); f must be nilpotent on x within `bound` steps.
template <class V, class F>
V geometric(V x, const F& f, int bound) {
  V total = x;
  for (int k = 0; !x.is_zero(); ++k) {
    if (k >= bound)
      throw InternalError("perturbation series did not stabilize within " + std::to_string(bound) + " terms");
    x = f(x);
    total = total + x;
  }
  return total;
}

}  // namespace detail

// Perturbation of dN by `partial`; the new differential on N is dN + partial.
// `bound` caps the number of terms in every series, which is finite when
// partial raises a filtration that h does not lower.
template <ComplexElement N, ComplexElement M>
struct PerturbedContraction {
  Contraction<N, M> contraction;  // dN + partial, dM + theta
  std::function<M(const M&)> theta;
};

// Optional filtration probe: partial must strictly raise `weight` on every
// nonzero probe (homogeneous elements).
template <ComplexElement N>
struct FiltrationProbe {
  std::function<int(const N&)> weight;
  std::vector<N> probes;
};

template <ComplexElement N, ComplexElement M>
PerturbedContraction<N, M> perturb_contraction(const Contraction<N, M>& c, std::function<N(const N&)> partial, int bound,
                                               const FiltrationProbe<N>& probe = {}) {
  if (probe.weight)
    for (const N& x : probe.probes) {
      N px = partial(x);
      if (!x.is_zero() && !px.is_zero() && probe.weight(px) <= probe.weight(x))
        throw std::invalid_argument("perturbation does not raise the filtration weight");
    }
  auto hp = [h = c.h, partial](const N& x) { return h(partial(x)); };
  auto ph = [h = c.h, partial](const N& x) { return partial(h(x)); };
  PerturbedContraction<N, M> r;
  r.contraction.dN = [dN = c.dN, partial](const N& x) { return dN(x) + partial(x); };
  // sigma' = sum sigma (partial h)^k
  r.contraction.sigma = [sigma = c.sigma, ph, bound](const N& x) { return sigma(detail::geometric(x, ph, bound)); };
  // tau' = sum (h partial)^k tau
  r.contraction.tau = [tau = c.tau, hp, bound](const M& m) { return detail::geometric(tau(m), hp, bound); };
  // h' = sum (h partial)^k h
  r.contraction.h = [h = c.h, hp, bound](const N& x) { return detail::geometric(h(x), hp, bound); };
  // theta = sum sigma partial (h partial)^k tau
  r.theta = [sigma = c.sigma, tau = c.tau, partial, hp, bound](const M& m) {
    return sigma(partial(detail::geometric(tau(m), hp, bound)));
  };
  r.contraction.dM = [dM = c.dM, theta = r.theta](const M& m) { return dM(m) + theta(m); };
  return r;
}

struct IdentityCheck {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct ContractionReport {
  std::vector<IdentityCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  // One "IDENTITY <name> PASS|FAIL [witness]" line per identity.
  std::string to_string() const {
    std::ostringstream os;
    for (const auto& c : checks) {
      os << "IDENTITY " << c.name << (c.pass ? " PASS" : " FAIL");
      if (!c.pass && !c.witness.empty()) os << ' ' << c.witness;
      os << '\n';
    }
    return os.str();
  }
};

// Checks the contraction identities and the chain-map conditions on samples.
// `describe` renders a failing sample for the witness field.
template <ComplexElement N, ComplexElement M>
ContractionReport check_contraction(const Contraction<N, M>& c, const std::vector<N>& ns, const std::vector<M>& ms,
                                    std::function<std::string(std::size_t)> describe_n = {},
                                    std::function<std::string(std::size_t)> describe_m = {}) {
  ContractionReport report;
  auto run = [&](const std::string& name, auto&& samples, auto&& holds, const auto& describe) {
    IdentityCheck chk{name, true, {}};
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (holds(samples[i])) continue;
      chk.pass = false;
      chk.witness = "sample " + std::to_string(i);
      if (describe) chk.witness += ": " + describe(i);
      break;
    }
    report.checks.push_back(chk);
  };
  run("sigma_tau", ms, [&](const M& m) { return c.sigma(c.tau(m)) == m; }, describe_m);
  run("tau_sigma_homotopy", ns,
      [&](const N& x) { return c.tau(c.sigma(x)) - x == c.h(c.dN(x)) + c.dN(c.h(x)); }, describe_n);
  run("sigma_h", ns, [&](const N& x) { return c.sigma(c.h(x)).is_zero(); }, describe_n);
  run("h_tau", ms, [&](const M& m) { return c.h(c.tau(m)).is_zero(); }, describe_m);
  run("h_h", ns, [&](const N& x) { return c.h(c.h(x)).is_zero(); }, describe_n);
  run("dN_squared", ns, [&](const N& x) { return c.dN(c.dN(x)).is_zero(); }, describe_n);
  run("dM_squared", ms, [&](const M& m) { return c.dM(c.dM(m)).is_zero(); }, describe_m);
  run("sigma_chain_map", ns, [&](const N& x) { return c.sigma(c.dN(x)) == c.dM(c.sigma(x)); }, describe_n);
  run("tau_chain_map", ms, [&](const M& m) { return c.dN(c.tau(m)) == c.tau(c.dM(m)); }, describe_m);
  return report;
}

}  // namespace formexp
