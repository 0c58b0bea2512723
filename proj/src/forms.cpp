#include "formexp/forms.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

#include "formexp/errors.hpp"
#include "formexp/expression.hpp"

namespace formexp {

Cutoff weight_cutoff(const Chart& chart, int max) {
  return {chart.block_mask(GenKind::Fiber) | chart.block_mask(GenKind::Form), max};
}

Cutoff fiber_cutoff(const Chart& chart, int max) { return {chart.block_mask(GenKind::Fiber), max}; }

FormSection parse_form(const ChartPtr& chart, std::string_view text) {
  return parse_poly(chart, text, kind_bit(GenKind::Base) | kind_bit(GenKind::Fiber) | kind_bit(GenKind::Form));
}

FiberVectorField::FiberVectorField(ChartPtr chart) : chart_(std::move(chart)) {
  comps_.assign(static_cast<std::size_t>(chart_->dim()), FormSection(chart_));
}

FiberVectorField::FiberVectorField(ChartPtr chart, std::vector<FormSection> comps)
    : chart_(std::move(chart)), comps_(std::move(comps)) {
  if (static_cast<int>(comps_.size()) != chart_->dim()) throw std::invalid_argument("fiber vector field needs n components");
  for (auto& c : comps_)
    if (!c.chart()) c = FormSection(chart_);
}

bool FiberVectorField::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

FormSection FiberVectorField::apply(const FormSection& w, const Cutoff& cut) const {
  Derivation d;
  for (int k = 0; k < chart_->dim(); ++k)
    if (!comps_[static_cast<std::size_t>(k)].is_zero())
      d.images.emplace_back(chart_->generator(GenKind::Fiber, k), comps_[static_cast<std::size_t>(k)]);
  FormSection r = d.apply(w, cut);
  if (!r.chart()) r = FormSection(chart_);
  return r;
}

FiberVectorField FiberVectorField::operator-() const {
  FiberVectorField r = *this;
  for (auto& c : r.comps_) c = -c;
  return r;
}

FiberVectorField operator+(FiberVectorField a, const FiberVectorField& b) {
  for (std::size_t k = 0; k < a.comps_.size(); ++k) a.comps_[k] += b.comps_[k];
  return a;
}

std::vector<FiberRecord> fiber_records(const FiberVectorField& a) {
  const Chart& chart = *a.chart();
  int n = chart.dim();
  std::map<std::tuple<int, MultiIndex, int>, GradedPoly> table;
  for (int k = 0; k < n; ++k)
    for (const auto& [m, c] : a[k].terms()) {
      if (form_degree(chart, m) != 1) throw std::invalid_argument("records need a fiber-vector-valued one-form");
      int i = 0;
      while (!m[chart.generator(GenKind::Form, i)]) ++i;
      MultiIndex j(n);
      Monomial base;
      int qdeg = 0;
      for (int t = 0; t < n; ++t) {
        j.at(t) = static_cast<std::uint8_t>(m[chart.generator(GenKind::Fiber, t)]);
        qdeg += j[t] * chart.coordinate_degree(t);
        base.at(chart.generator(GenKind::Base, t)) = static_cast<std::uint8_t>(m[chart.generator(GenKind::Base, t)]);
      }
      // c x^a y^J dx_i = (-1)^{|dx_i||y^J|} c x^a dx_i y^J
      Rational v = ((1 + chart.coordinate_degree(i)) * qdeg) % 2 != 0 ? Rational(-c) : c;
      table.try_emplace({i, j, k}, GradedPoly(a.chart())).first->second.add_term(base, v);
    }
  std::vector<FiberRecord> out;
  for (auto& [key, coef] : table)
    if (!coef.is_zero()) out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), coef});
  return out;
}

std::string format_records(const std::vector<FiberRecord>& records) {
  std::string out;
  for (const auto& r : records)
    out += "A[i=" + std::to_string(r.i + 1) + ",J=" + r.j.to_string() + ",k=" + std::to_string(r.k + 1) +
           "] = " + format_poly(r.coefficient) + "\n";
  return out;
}

}  // namespace formexp
