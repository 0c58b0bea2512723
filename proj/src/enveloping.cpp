#include "formexp/enveloping.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "formexp/errors.hpp"
#include "formexp/expression.hpp"
#include "formexp/koszul.hpp"

namespace formexp {

namespace {

int sign(int parity) { return parity % 2 != 0 ? -1 : 1; }

GradedPoly twist(const GradedPoly& g, int d) {
  if (d % 2 == 0 || g.is_zero()) return g;
  GradedPoly r(g.chart());
  for (const auto& [m, c] : g.terms()) r.add_term(m, monomial_degree(*g.chart(), m) % 2 != 0 ? Rational(-c) : c);
  return r;
}

// Coordinate indices of the canonical word s^K, with repetition.
std::vector<int> word_of(const MultiIndex& k) {
  std::vector<int> w;
  for (int i = 0; i < k.n; ++i)
    for (int e = 0; e < k[i]; ++e) w.push_back(i);
  return w;
}

int sym_word_degree(const Chart& chart, const MultiIndex& k) {
  int d = 0;
  for (int i = 0; i < k.n; ++i) d -= k[i] * chart.coordinate_degree(i);
  return d;
}

// Shuffle coproduct of the constant word s^K: (K1, K2) -> signed multiplicity.
std::map<std::pair<MultiIndex, MultiIndex>, int> shuffle_coproduct(const Chart& chart, const MultiIndex& k) {
  std::vector<int> w = word_of(k);
  const int len = static_cast<int>(w.size());
  std::vector<int> degrees;
  for (int i : w) degrees.push_back(-chart.coordinate_degree(i));
  std::map<std::pair<MultiIndex, MultiIndex>, int> out;
  for (unsigned mask = 0; mask < (1u << len); ++mask) {
    std::vector<int> perm;
    MultiIndex left(k.n), right(k.n);
    for (int p = 0; p < len; ++p)
      if ((mask >> p) & 1u) {
        perm.push_back(p);
        left.at(w[static_cast<std::size_t>(p)]) += 1;
      }
    for (int p = 0; p < len; ++p)
      if (!((mask >> p) & 1u)) {
        perm.push_back(p);
        right.at(w[static_cast<std::size_t>(p)]) += 1;
      }
    out[{left, right}] += koszul_sign(perm, degrees);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

TensorSquare comult_poly(const GradedPoly& p, TensorPower::Kind kind) {
  TensorSquare t(p.chart(), 2, kind);
  if (p.is_zero()) return t;
  const Chart& chart = *p.chart();
  for (const auto& [k, coef] : split_by_sym(p))
    for (const auto& [keys, mult] : shuffle_coproduct(chart, k)) t.add({keys.first, keys.second}, coef * Rational(mult));
  return t;
}

}  // namespace

DiffOp sym_word(std::span<const VectorField> word) {
  if (word.empty()) throw std::invalid_argument("sym_word needs a chart; use sym_map for scalars");
  const ChartPtr& chart = word.front().chart();
  const int n = static_cast<int>(word.size());
  std::vector<int> degrees;
  for (const auto& x : word) {
    Degree d = x.degree();
    if (d.kind == Degree::Kind::Heterogeneous) throw std::invalid_argument("sym_word needs homogeneous vector fields");
    if (d.kind == Degree::Kind::Zero) return DiffOp::zero(chart);
    degrees.push_back(d.value);
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  DiffOp total = DiffOp::zero(chart);
  do {
    DiffOp term = DiffOp::function(GradedPoly::constant(chart, 1));
    for (int p : perm) term = compose(term, word[static_cast<std::size_t>(p)].as_diffop());
    total += Rational(koszul_sign(perm, degrees)) * term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Rational(1, 1) / factorial(n) * total;
}

DiffOp sym_map(const SymTensor& s) {
  const ChartPtr& chart = s.chart();
  if (!chart) return DiffOp();
  DiffOp total = DiffOp::zero(chart);
  for (const auto& [k, coef] : s.split()) {
    std::vector<VectorField> word;
    for (int i : word_of(k)) word.push_back(VectorField::coordinate(chart, i));
    DiffOp w = word.empty() ? DiffOp::function(GradedPoly::constant(chart, 1)) : sym_word(word);
    total += coef * w;
  }
  return total;
}

void TensorPower::add(const std::vector<MultiIndex>& keys, const GradedPoly& coefficient) {
  if (static_cast<int>(keys.size()) != arity_) throw std::invalid_argument("tensor arity mismatch");
  if (coefficient.is_zero()) return;
  auto it = terms_.try_emplace(keys, GradedPoly(chart_)).first;
  it->second += coefficient;
  if (it->second.is_zero()) terms_.erase(it);
}

void TensorPower::add_factors(std::span<const GradedPoly> factors) {
  if (static_cast<int>(factors.size()) != arity_) throw std::invalid_argument("tensor arity mismatch");
  std::vector<std::map<MultiIndex, GradedPoly>> parts;
  for (const auto& f : factors) {
    if (f.is_zero()) return;
    parts.push_back(split_by_sym(f));
  }
  const Chart& chart = *chart_;
  std::vector<MultiIndex> keys(static_cast<std::size_t>(arity_));
  // Walk all choices; `lead` holds c_1 s^{K_1} with later coefficients pushed in
  // from the right.
  std::function<void(int, const GradedPoly&, int)> walk = [&](int slot, const GradedPoly& lead, int middle_degree) {
    if (slot == arity_) {
      auto split = split_by_sym(lead);
      for (const auto& [k, c] : split) {
        keys[0] = k;
        add(keys, c);
      }
      return;
    }
    for (const auto& [k, c] : parts[static_cast<std::size_t>(slot)]) {
      keys[static_cast<std::size_t>(slot)] = k;
      // u (x) w (x) (c v) = (-1)^{|c||w|} (u c) (x) w (x) v
      GradedPoly moved = lead * twist(c, middle_degree);
      walk(slot + 1, moved, middle_degree + sym_word_degree(chart, k));
    }
  };
  for (const auto& [k, c] : parts[0]) walk(1, c * GradedPoly::term(chart_, sym_monomial(chart, k), 1), 0);
}

std::string TensorPower::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool diff = kind_ == Kind::Diff;
  for (const auto& [keys, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string first = format_operator(c * GradedPoly::term(chart_, sym_monomial(*chart_, keys[0]), 1), diff);
    out += "(" + first + ")";
    for (std::size_t s = 1; s < keys.size(); ++s)
      out += " (x) " + format_monomial(*chart_, sym_monomial(*chart_, keys[s]), diff);
  }
  return out;
}

TensorPower& TensorPower::operator+=(const TensorPower& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

TensorPower& TensorPower::operator-=(const TensorPower& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

bool operator==(const TensorPower& a, const TensorPower& b) {
  return a.arity_ == b.arity_ && a.terms_ == b.terms_;
}

TensorSquare comult_sym(const SymTensor& s) { return comult_poly(s.poly(), TensorPower::Kind::Sym); }
TensorSquare comult_env(const DiffOp& d) { return comult_poly(d.poly(), TensorPower::Kind::Diff); }

TensorPower comult_left(const TensorSquare& t) {
  TensorPower r(t.chart(), 3, t.kind());
  for (const auto& [keys, c] : t.terms())
    for (const auto& [split, mult] : shuffle_coproduct(*t.chart(), keys[0]))
      r.add({split.first, split.second, keys[1]}, c * Rational(mult));
  return r;
}

TensorPower comult_right(const TensorSquare& t) {
  TensorPower r(t.chart(), 3, t.kind());
  for (const auto& [keys, c] : t.terms())
    for (const auto& [split, mult] : shuffle_coproduct(*t.chart(), keys[1]))
      r.add({keys[0], split.first, split.second}, c * Rational(mult));
  return r;
}

TensorPower counit_slot(const TensorSquare& t, int slot) {
  TensorPower r(t.chart(), 1, t.kind());
  for (const auto& [keys, c] : t.terms()) {
    if (keys[static_cast<std::size_t>(slot)].weight() != 0) continue;
    r.add({keys[static_cast<std::size_t>(1 - slot)]}, c);
  }
  return r;
}

TensorPower map_factors(const TensorPower& t, const std::function<GradedPoly(const MultiIndex&)>& f,
                        TensorPower::Kind result_kind) {
  TensorPower r(t.chart(), t.arity(), result_kind);
  for (const auto& [keys, c] : t.terms()) {
    std::vector<GradedPoly> factors;
    for (std::size_t s = 0; s < keys.size(); ++s) factors.push_back(s == 0 ? c * f(keys[s]) : f(keys[s]));
    r.add_factors(factors);
  }
  return r;
}

TensorSquare coproduct_act(const VectorField& x, const TensorSquare& t) {
  if (t.arity() != 2 || t.kind() != TensorPower::Kind::Diff)
    throw std::invalid_argument("coproduct_act needs a tensor square of operators");
  const ChartPtr& chart = t.chart();
  TensorSquare r(chart, 2, TensorPower::Kind::Diff);
  for (const auto& [dx, xp] : x.homogeneous_parts()) {
    DiffOp op = xp.as_diffop();
    for (const auto& [keys, c] : t.terms()) {
      DiffOp a(c * DiffOp::basis(chart, keys[0]).poly());
      DiffOp b = DiffOp::basis(chart, keys[1]);
      std::vector<GradedPoly> f1{compose(op, a).poly(), b.poly()};
      r.add_factors(f1);
      for (const auto& [da, ap] : homogeneous_components(a.poly())) {
        std::vector<GradedPoly> f2{ap * Rational(sign(dx * da)), compose(op, b).poly()};
        r.add_factors(f2);
      }
    }
  }
  return r;
}

namespace {

// <s^K, y^K> by summing over matchings of the two words.
Rational basis_pairing(const Chart& chart, const MultiIndex& k) {
  std::vector<int> w = word_of(k);
  const int p = static_cast<int>(w.size());
  std::vector<int> degrees;
  for (int i : w) degrees.push_back(-chart.coordinate_degree(i));
  for (int i : w) degrees.push_back(chart.coordinate_degree(i));
  std::vector<int> sigma(static_cast<std::size_t>(p));
  std::iota(sigma.begin(), sigma.end(), 0);
  Rational total = 0;
  do {
    bool match = true;
    for (int a = 0; a < p && match; ++a) match = w[static_cast<std::size_t>(a)] == w[static_cast<std::size_t>(sigma[static_cast<std::size_t>(a)])];
    if (!match) continue;
    std::vector<int> perm;
    for (int a = 0; a < p; ++a) {
      perm.push_back(a);
      perm.push_back(p + sigma[static_cast<std::size_t>(a)]);
    }
    total += koszul_sign(perm, degrees);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

}  // namespace

GradedPoly pairing(const SymTensor& s, const GradedPoly& fiber_poly) {
  const ChartPtr& chart = common_chart(s.poly(), fiber_poly);
  GradedPoly r(chart);
  if (s.is_zero() || fiber_poly.is_zero()) return r;
  std::uint32_t base = chart->block_mask(GenKind::Base);
  std::uint32_t fiber = chart->block_mask(GenKind::Fiber);
  std::map<MultiIndex, GradedPoly> by_fiber;
  for (const auto& [m, c] : fiber_poly.terms()) {
    MultiIndex j(chart->dim());
    Monomial rest;
    for (int g = 0; g < chart->generator_count(); ++g) {
      if (!m[g]) continue;
      if ((fiber >> g) & 1u) {
        j.at(chart->coord_of(g)) = static_cast<std::uint8_t>(m[g]);
      } else if ((base >> g) & 1u) {
        rest.at(g) = static_cast<std::uint8_t>(m[g]);
      } else {
        throw std::invalid_argument("pairing needs a fiber polynomial");
      }
    }
    by_fiber.try_emplace(j, GradedPoly(chart)).first->second.add_term(rest, c);
  }
  for (const auto& [k, f] : s.split()) {
    auto it = by_fiber.find(k);
    if (it == by_fiber.end()) continue;
    Rational b = basis_pairing(*chart, k);
    if (b == 0) continue;
    r += f * twist(it->second, sym_word_degree(*chart, k)) * b;
  }
  return r;
}

}  // namespace formexp
