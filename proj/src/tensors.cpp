#include "formexp/tensors.hpp"

#include <functional>
#include <stdexcept>

#include "formexp/errors.hpp"
#include "formexp/expression.hpp"

namespace formexp {

namespace {

bool only_blocks(const GradedPoly& p, std::uint32_t kinds) {
  if (p.is_zero()) return true;
  const Chart& chart = *p.chart();
  std::uint32_t allowed = 0;
  for (int k = 0; k < 4; ++k)
    if ((kinds >> k) & 1u) allowed |= chart.block_mask(static_cast<GenKind>(k));
  for (const auto& [m, c] : p.terms())
    for (int g = 0; g < chart.generator_count(); ++g)
      if (m[g] && !((allowed >> g) & 1u)) return false;
  return true;
}

constexpr std::uint32_t kOperatorKinds = kind_bit(GenKind::Base) | kind_bit(GenKind::Sym);

}  // namespace

int operator_cap(const Chart& chart) { return chart.truncation().max_sym_weight + 1; }

void check_cap(const Chart& chart, int weight, const char* what) {
  if (weight > operator_cap(chart))
    throw TruncationOverflow(std::string(what) + " of weight " + std::to_string(weight) + " exceeds the cap " +
                             std::to_string(operator_cap(chart)));
}

MultiIndex sym_part(const Chart& chart, const Monomial& m) {
  MultiIndex k(chart.dim());
  for (int i = 0; i < chart.dim(); ++i) k.at(i) = static_cast<std::uint8_t>(m[chart.generator(GenKind::Sym, i)]);
  return k;
}

Monomial sym_monomial(const Chart& chart, const MultiIndex& k) {
  Monomial m;
  for (int i = 0; i < chart.dim(); ++i) m.at(chart.generator(GenKind::Sym, i)) = static_cast<std::uint8_t>(k[i]);
  return m;
}

std::map<MultiIndex, GradedPoly> split_by_sym(const GradedPoly& p) {
  std::map<MultiIndex, GradedPoly> out;
  if (p.is_zero()) return out;
  const Chart& chart = *p.chart();
  for (const auto& [m, c] : p.terms()) {
    MultiIndex k = sym_part(chart, m);
    Monomial rest = m;
    for (int i = 0; i < chart.dim(); ++i) rest.at(chart.generator(GenKind::Sym, i)) = 0;
    out.try_emplace(k, GradedPoly(p.chart())).first->second.add_term(rest, c);
  }
  return out;
}

SymTensor::SymTensor(GradedPoly p) : p_(std::move(p)) {
  if (!only_blocks(p_, kOperatorKinds)) throw std::invalid_argument("symmetric tensor with fiber or form generators");
  if (p_.chart()) check_cap(*p_.chart(), weight(), "symmetric tensor");
}

SymTensor SymTensor::function(GradedPoly f) { return SymTensor(std::move(f)); }

SymTensor SymTensor::basis(ChartPtr chart, const MultiIndex& k) {
  for (int i = 0; i < chart->dim(); ++i)
    if (k[i] > 1 && chart->coordinate_degree(i) % 2 != 0) return zero(chart);
  auto m = sym_monomial(*chart, k);
  return SymTensor(GradedPoly::term(std::move(chart), m, 1));
}

SymTensor SymTensor::coordinate_field(ChartPtr chart, int i) {
  return basis(chart, MultiIndex::unit(chart->dim(), i));
}

SymTensor SymTensor::component(int w) const {
  if (!p_.chart()) return *this;
  const Chart& chart = *p_.chart();
  return SymTensor(p_.filter([&](const Monomial& m) { return block_weight(chart, m, GenKind::Sym) == w; }));
}

std::string SymTensor::to_string() const { return p_.chart() ? format_operator(p_, false) : "0"; }

SymTensor operator*(const GradedPoly& f, const SymTensor& s) { return SymTensor(f * s.p_); }

SymTensor sym_product(const SymTensor& a, const SymTensor& b) {
  GradedPoly p = a.poly() * b.poly();
  return SymTensor(std::move(p));
}

SymTensor reversed_word(ChartPtr chart, const MultiIndex& k) {
  GradedPoly p = GradedPoly::constant(chart, 1);
  for (int i = chart->dim() - 1; i >= 0; --i)
    p = p * GradedPoly::generator(chart, chart->generator(GenKind::Sym, i), k[i]);
  return SymTensor(std::move(p));
}

DiffOp::DiffOp(GradedPoly p) : p_(std::move(p)) {
  if (!only_blocks(p_, kOperatorKinds)) throw std::invalid_argument("differential operator with fiber or form generators");
  if (p_.chart()) check_cap(*p_.chart(), order(), "differential operator");
}

DiffOp DiffOp::function(GradedPoly f) { return DiffOp(std::move(f)); }

DiffOp DiffOp::partial(ChartPtr chart, int i) {
  int g = chart->generator(GenKind::Sym, i);
  return DiffOp(GradedPoly::generator(std::move(chart), g));
}

DiffOp DiffOp::basis(ChartPtr chart, const MultiIndex& k) { return DiffOp(SymTensor::basis(std::move(chart), k).poly()); }

std::string DiffOp::to_string() const { return p_.chart() ? format_operator(p_, true) : "0"; }

DiffOp operator*(const GradedPoly& f, const DiffOp& d) { return DiffOp(f * d.p_); }

// d_i o (c x^a d^M) = d_i(c x^a) d^M + (-1)^{|x_i| |x^a|} c x^a d_i d^M. In the
// stored polynomial model the first term is the left derivative by x_i and the
// second is the graded product s_i * (x^a s^M).
DiffOp partial_then(int i, const DiffOp& d) {
  if (d.is_zero()) return d;
  const ChartPtr& chart = d.chart();
  GradedPoly r = partial_generator(chart->generator(GenKind::Base, i), d.poly());
  r += GradedPoly::generator(chart, chart->generator(GenKind::Sym, i)) * d.poly();
  return DiffOp(std::move(r));
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
  const ChartPtr& chart = common_chart(a.poly(), b.poly());
  if (a.is_zero() || b.is_zero()) return DiffOp::zero(chart);
  if (a.order() + b.order() > operator_cap(*chart))
    throw TruncationOverflow("composition of order " + std::to_string(a.order() + b.order()) + " exceeds the cap");
  // d^K o b, built from the leftmost derivation: d^K = d_f o d^{K - e_f}.
  std::map<MultiIndex, DiffOp> left;
  std::function<const DiffOp&(const MultiIndex&)> derived = [&](const MultiIndex& k) -> const DiffOp& {
    auto it = left.find(k);
    if (it != left.end()) return it->second;
    if (k.weight() == 0) return left.emplace(k, b).first->second;
    int f = 0;
    while (k[f] == 0) ++f;
    MultiIndex rest = k;
    rest.at(f) -= 1;
    DiffOp v = partial_then(f, derived(rest));
    return left.emplace(k, std::move(v)).first->second;
  };
  GradedPoly r(chart);
  for (const auto& [k, coef] : a.split()) r += coef * derived(k).poly();
  return DiffOp(std::move(r));
}

GradedPoly apply(const DiffOp& d, const GradedPoly& f) {
  const ChartPtr& chart = common_chart(d.poly(), f);
  GradedPoly r(chart);
  if (d.is_zero() || f.is_zero()) return r;
  std::map<MultiIndex, GradedPoly> memo;
  std::function<const GradedPoly&(const MultiIndex&)> derived = [&](const MultiIndex& k) -> const GradedPoly& {
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    if (k.weight() == 0) return memo.emplace(k, f).first->second;
    int first = 0;
    while (k[first] == 0) ++first;
    MultiIndex rest = k;
    rest.at(first) -= 1;
    GradedPoly v = partial_left(first, derived(rest));
    return memo.emplace(k, std::move(v)).first->second;
  };
  for (const auto& [k, coef] : d.split()) r += coef * derived(k);
  return r;
}

std::optional<int> filtration_order(const DiffOp& d) {
  if (d.is_zero()) return std::nullopt;
  return d.order();
}

SymTensor gr_leading(const DiffOp& d) {
  if (d.is_zero()) return SymTensor(d.poly());
  const Chart& chart = *d.chart();
  int top = d.order();
  return SymTensor(d.poly().filter([&](const Monomial& m) { return block_weight(chart, m, GenKind::Sym) == top; }));
}

SymTensor parse_sym(const ChartPtr& chart, std::string_view text) {
  return SymTensor(parse_poly(chart, text, kOperatorKinds));
}

namespace {

struct DiffOpOps {
  ChartPtr chart;
  DiffOp number(const Rational& r) { return DiffOp(GradedPoly::constant(chart, r)); }
  DiffOp atom(const std::string& name, std::size_t pos) {
    if (name.size() > 3 && name.rfind("d[", 0) == 0 && name.back() == ']') {
      auto i = chart->find_coordinate(name.substr(2, name.size() - 3));
      if (!i) throw ParseError("unknown coordinate in '" + name + "'", pos);
      return DiffOp::partial(chart, *i);
    }
    auto g = chart->find(name);
    if (!g || chart->kind_of(*g) != GenKind::Base)
      throw ParseError("'" + name + "' is not a coordinate or derivation", pos);
    return DiffOp(GradedPoly::generator(chart, *g));
  }
  DiffOp mul(const DiffOp& a, const DiffOp& b) { return compose(a, b); }
  DiffOp add(const DiffOp& a, const DiffOp& b) { return a + b; }
  DiffOp neg(const DiffOp& a) { return -a; }
};

}  // namespace

DiffOp parse_diffop(const ChartPtr& chart, std::string_view text) {
  Expr e = parse_expression(text);
  DiffOpOps ops{chart};
  return evaluate<DiffOp>(e, ops);
}

}  // namespace formexp
