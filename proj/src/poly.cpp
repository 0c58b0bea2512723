#include "formexp/poly.hpp"

#include <omp.h>

#include <bit>

#include "formexp/errors.hpp"

namespace formexp {

int monomial_degree(const Chart& chart, const Monomial& m) {
  int d = 0;
  for (int g = 0; g < chart.generator_count(); ++g) d += m[g] * chart.degree(g);
  return d;
}

int block_weight(const Chart& chart, const Monomial& m, GenKind kind) {
  int w = 0;
  int first = chart.generator(kind, 0);
  for (int i = 0; i < chart.dim(); ++i) w += m[first + i];
  return w;
}

std::uint32_t odd_support(const Chart& chart, const Monomial& m) {
  std::uint32_t s = 0;
  std::uint32_t odd = chart.odd_mask();
  while (odd) {
    int g = std::countr_zero(odd);
    odd &= odd - 1;
    if (m[g]) s |= 1u << g;
  }
  return s;
}

bool is_unit(const Monomial& m) { return m == Monomial{}; }

int multiply_monomials(const Chart& chart, const Monomial& a, const Monomial& b, Monomial& out) {
  std::uint32_t oa = odd_support(chart, a);
  std::uint32_t ob = odd_support(chart, b);
  if (oa & ob) return 0;
  int swaps = 0;
  while (ob) {
    int g = std::countr_zero(ob);
    ob &= ob - 1;
    std::uint32_t above = g >= 31 ? 0u : ~((2u << g) - 1u);
    swaps += std::popcount(oa & above);
  }
  for (int g = 0; g < chart.generator_count(); ++g) out.at(g) = static_cast<std::uint8_t>(a[g] + b[g]);
  return (swaps & 1) ? -1 : 1;
}

bool Cutoff::keeps(const Monomial& m) const {
  if (max == INT_MAX) return true;
  int w = 0;
  std::uint32_t bits = mask;
  while (bits) {
    int g = std::countr_zero(bits);
    bits &= bits - 1;
    w += m[g];
  }
  return w <= max;
}

GradedPoly GradedPoly::constant(ChartPtr chart, const Rational& c) {
  GradedPoly p(std::move(chart));
  p.add_term(Monomial{}, c);
  return p;
}

GradedPoly GradedPoly::generator(ChartPtr chart, int g, int power) {
  GradedPoly p(chart);
  if (power < 0 || g < 0 || g >= chart->generator_count()) throw std::invalid_argument("bad generator power");
  if (power >= 2 && chart->odd(g)) return p;
  Monomial m;
  m.at(g) = static_cast<std::uint8_t>(power);
  p.add_term(m, 1);
  return p;
}

GradedPoly GradedPoly::term(ChartPtr chart, const Monomial& m, const Rational& c) {
  GradedPoly p(std::move(chart));
  p.add_term(m, c);
  return p;
}

Rational GradedPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Degree GradedPoly::degree() const {
  if (terms_.empty()) return {};
  Degree d{Degree::Kind::Homogeneous, monomial_degree(*chart_, terms_.begin()->first)};
  for (const auto& [m, c] : terms_)
    if (monomial_degree(*chart_, m) != d.value) return {Degree::Kind::Heterogeneous, 0};
  return d;
}

int GradedPoly::max_block_weight(GenKind kind) const {
  int w = -1;
  for (const auto& [m, c] : terms_) w = std::max(w, block_weight(*chart_, m, kind));
  return w;
}

int GradedPoly::min_block_weight(GenKind kind) const {
  int w = INT_MAX;
  for (const auto& [m, c] : terms_) w = std::min(w, block_weight(*chart_, m, kind));
  return terms_.empty() ? -1 : w;
}

void GradedPoly::adopt(const GradedPoly& o) {
  if (!o.chart_) return;
  if (!chart_) {
    chart_ = o.chart_;
  } else if (chart_ != o.chart_ && !chart_->compatible(*o.chart_)) {
    throw ChartMismatch();
  }
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  adopt(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  adopt(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

bool operator==(const GradedPoly& a, const GradedPoly& b) {
  if (a.chart_ && b.chart_ && a.chart_ != b.chart_ && !a.chart_->compatible(*b.chart_)) throw ChartMismatch();
  return a.terms_ == b.terms_;
}

const ChartPtr& common_chart(const GradedPoly& a, const GradedPoly& b) {
  if (!a.chart()) return b.chart();
  if (!b.chart()) return a.chart();
  if (a.chart() != b.chart() && !a.chart()->compatible(*b.chart())) throw ChartMismatch();
  return a.chart();
}

namespace {

void accumulate_products(const Chart& chart, const Monomial& ma, const Rational& ca, const GradedPoly& b,
                         const Cutoff& cut, GradedPoly& out) {
  Monomial prod;
  for (const auto& [mb, cb] : b.terms()) {
    int s = multiply_monomials(chart, ma, mb, prod);
    if (s == 0 || !cut.keeps(prod)) continue;
    Rational v = ca * cb;
    if (s < 0) v = -v;
    out.add_term(prod, v);
  }
}

constexpr std::size_t kParallelThreshold = 1u << 14;

}  // namespace

GradedPoly multiply(const GradedPoly& a, const GradedPoly& b, const Cutoff& cut) {
  const ChartPtr& chart = common_chart(a, b);
  GradedPoly r(chart);
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [ma, ca] : a.terms()) accumulate_products(*chart, ma, ca, b, cut, r);
  return r;
}

GradedPoly multiply_parallel(const GradedPoly& a, const GradedPoly& b, const Cutoff& cut) {
  const ChartPtr& chart = common_chart(a, b);
  GradedPoly r(chart);
  if (a.is_zero() || b.is_zero()) return r;
  std::vector<std::pair<Monomial, Rational>> left(a.terms().begin(), a.terms().end());
  const long count = static_cast<long>(left.size());
  int threads = omp_get_max_threads();
  std::vector<GradedPoly> partial(static_cast<std::size_t>(threads), GradedPoly(chart));
#pragma omp parallel for schedule(dynamic, 4)
  for (long t = 0; t < count; ++t) {
    auto& mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
    accumulate_products(*chart, left[static_cast<std::size_t>(t)].first, left[static_cast<std::size_t>(t)].second, b,
                        cut, mine);
  }
  for (const auto& p : partial) r += p;
  return r;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
  if (a.size() * b.size() >= kParallelThreshold && !omp_in_parallel() && omp_get_max_threads() > 1)
    return multiply_parallel(a, b);
  return multiply(a, b);
}

GradedPoly power(const GradedPoly& a, int e) {
  if (e < 0) throw std::invalid_argument("negative power");
  if (!a.chart()) {
    if (e == 0) throw std::invalid_argument("power of a chartless zero");
    return a;
  }
  GradedPoly r = GradedPoly::constant(a.chart(), 1);
  for (int k = 0; k < e; ++k) r = r * a;
  return r;
}

GradedPoly partial_generator(int g, const GradedPoly& f) {
  GradedPoly r(f.chart());
  if (f.is_zero()) return r;
  const Chart& chart = *f.chart();
  if (g < 0 || g >= chart.generator_count()) throw std::invalid_argument("generator index out of range");
  bool odd = chart.odd(g);
  std::uint32_t before = (1u << g) - 1u;
  for (const auto& [m, c] : f.terms()) {
    int e = m[g];
    if (e == 0) continue;
    Monomial d = m;
    d.at(g) = static_cast<std::uint8_t>(e - 1);
    Rational v = c * e;
    if (odd && (std::popcount(odd_support(chart, m) & before) & 1)) v = -v;
    r.add_term(d, v);
  }
  return r;
}

GradedPoly partial_left(int i, const GradedPoly& f) {
  if (!f.chart()) return f;
  if (i < 0 || i >= f.chart()->dim()) throw std::invalid_argument("coordinate index out of range");
  return partial_generator(f.chart()->generator(GenKind::Base, i), f);
}

GradedPoly Derivation::apply(const GradedPoly& f, const Cutoff& cut) const {
  GradedPoly r(f.chart());
  for (const auto& [g, value] : images) {
    if (value.is_zero()) continue;
    GradedPoly d = partial_generator(g, f);
    if (d.is_zero()) continue;
    r += multiply(value, d, cut);
  }
  return r;
}

std::map<int, GradedPoly> homogeneous_components(const GradedPoly& f) {
  std::map<int, GradedPoly> out;
  for (const auto& [m, c] : f.terms()) {
    int d = monomial_degree(*f.chart(), m);
    auto it = out.try_emplace(d, GradedPoly(f.chart())).first;
    it->second.add_term(m, c);
  }
  return out;
}

}  // namespace formexp
