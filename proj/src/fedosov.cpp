#include "formexp/fedosov.hpp"

#include <stdexcept>

#include "formexp/errors.hpp"

namespace formexp {

namespace {

int sign(int parity) { return parity % 2 != 0 ? -1 : 1; }

GradedPoly gen(const ChartPtr& chart, GenKind kind, int i) {
  return GradedPoly::generator(chart, chart->generator(kind, i));
}

// Repeats `step` until the term vanishes; the weight bound keeps it finite.
template <class Step>
FormSection series(FormSection term, Step step, int max_terms) {
  FormSection total = term;
  for (int n = 0; !term.is_zero(); ++n) {
    if (n > max_terms) throw InternalError("series did not terminate within the weight bound");
    term = step(term);
    total += term;
  }
  return total;
}

}  // namespace

FormSection delta_op(const FormSection& w) {
  if (w.is_zero()) return w;
  const ChartPtr& chart = w.chart();
  Derivation d;
  for (int i = 0; i < chart->dim(); ++i) d.images.emplace_back(chart->generator(GenKind::Fiber, i), gen(chart, GenKind::Form, i));
  return d.apply(w);
}

FormSection kappa_op(const FormSection& w) {
  if (w.is_zero()) return w;
  const ChartPtr& chart = w.chart();
  Derivation kappa;
  for (int i = 0; i < chart->dim(); ++i)
    kappa.images.emplace_back(chart->generator(GenKind::Form, i), gen(chart, GenKind::Fiber, i));
  FormSection r = kappa.apply(w);
  return r.chart() ? r : FormSection(chart);
}

FormSection interior_product(const VectorField& x, const FormSection& w) {
  const ChartPtr& chart = x.chart();
  FormSection r(chart);
  if (w.is_zero()) return r;
  for (int l = 0; l < chart->dim(); ++l)
    if (!x[l].is_zero()) r += x[l] * partial_generator(chart->generator(GenKind::Form, l), w);
  return r;
}

FormSection delta_inv_op(const FormSection& w) {
  if (w.is_zero()) return w;
  const ChartPtr& chart = w.chart();
  FormSection k = kappa_op(w);
  // kappa preserves p + q, so each output monomial carries its input weight.
  FormSection r(chart);
  for (const auto& [m, c] : k.terms()) {
    int pq = form_degree(*chart, m) + fiber_weight(*chart, m);
    r.add_term(m, c / pq);
  }
  return r;
}

GradedPoly sigma_aug(const FormSection& w) {
  if (w.is_zero()) return w;
  const Chart& chart = *w.chart();
  return w.filter([&](const Monomial& m) { return form_degree(chart, m) == 0 && fiber_weight(chart, m) == 0; });
}

FormSection iota_incl(const GradedPoly& f) {
  if (f.is_zero()) return f;
  const Chart& chart = *f.chart();
  for (const auto& [m, c] : f.terms())
    if (form_degree(chart, m) || fiber_weight(chart, m) || block_weight(chart, m, GenKind::Sym))
      throw std::invalid_argument("iota_incl needs a function");
  return f;
}

Derivation dnabla_derivation(const Connection& c) {
  const ChartPtr& chart = c.chart();
  const int n = chart->dim();
  Derivation d;
  for (int j = 0; j < n; ++j) d.images.emplace_back(chart->generator(GenKind::Base, j), gen(chart, GenKind::Form, j));
  for (int k = 0; k < n; ++k) {
    GradedPoly img(chart);
    int dk = chart->coordinate_degree(k);
    for (int i = 0; i < n; ++i) {
      GradedPoly nabla_y(chart);
      for (int j = 0; j < n; ++j) {
        const GradedPoly& g = c.gamma(i, j, k);
        if (g.is_zero()) continue;
        int dj = chart->coordinate_degree(j);
        nabla_y -= g * gen(chart, GenKind::Fiber, j) * Rational(sign(dj * (dk + 1)));
      }
      if (!nabla_y.is_zero()) img += gen(chart, GenKind::Form, i) * nabla_y;
    }
    if (!img.is_zero()) d.images.emplace_back(chart->generator(GenKind::Fiber, k), std::move(img));
  }
  return d;
}

FormSection dnabla_form(const Connection& c, const FormSection& w, const Cutoff& cut) {
  FormSection r = dnabla_derivation(c).apply(w, cut);
  if (!r.chart()) r = FormSection(c.chart());
  return r;
}

FormSection a_action(const FiberVectorField& a, const FormSection& w, const Cutoff& cut) { return a.apply(w, cut); }

FedosovData::FedosovData(Connection c, FiberVectorField a, int iterations)
    : conn_(std::move(c)), a_(std::move(a)), bound_(conn_.chart()->truncation().max_sym_weight), iterations_(iterations) {
  const ChartPtr& chart = conn_.chart();
  Derivation dn = dnabla_derivation(conn_);
  partial_ = dn;
  for (int k = 0; k < chart->dim(); ++k) {
    if (a_[k].is_zero()) continue;
    int g = chart->generator(GenKind::Fiber, k);
    bool found = false;
    for (auto& [h, img] : partial_.images)
      if (h == g) {
        img += a_[k];
        found = true;
      }
    if (!found) partial_.images.emplace_back(g, a_[k]);
  }
  d_ = partial_;
  for (int k = 0; k < chart->dim(); ++k) {
    int g = chart->generator(GenKind::Fiber, k);
    bool found = false;
    for (auto& [h, img] : d_.images)
      if (h == g) {
        img -= gen(chart, GenKind::Form, k);
        found = true;
      }
    if (!found) d_.images.emplace_back(g, -gen(chart, GenKind::Form, k));
  }
}

// A_k = delta^{-1}((d_nabla + A)^2 y_k), iterated from A = 0. Each pass fixes
// one more fiber weight, so the fixed point is reached after at most Q passes.
FedosovData FedosovData::build(const Connection& c) {
  if (!c.torsion_free()) throw PreconditionError("the Fedosov construction requires a torsion-free connection");
  const ChartPtr& chart = c.chart();
  const int q = chart->truncation().max_sym_weight;
  const int n = chart->dim();
  Cutoff cut = fiber_cutoff(*chart, q);
  FiberVectorField a(chart);
  for (int pass = 1; pass <= q + 2; ++pass) {
    FedosovData cur(c, a, pass);
    FiberVectorField next(chart);
    for (int k = 0; k < n; ++k) {
      FormSection y = gen(chart, GenKind::Fiber, k);
      FormSection sq = cur.partial_.apply(cur.partial_.apply(y, cut), cut);
      next.at(k) = delta_inv_op(sq).truncated(cut);
    }
    if (next == a) return cur;
    a = std::move(next);
  }
  throw InternalError("Fedosov iteration did not reach a fixed point");
}

Cutoff FedosovData::cutoff() const { return weight_cutoff(*conn_.chart(), bound_); }

FormSection FedosovData::truncate(const FormSection& w) const {
  if (w.is_zero()) return FormSection(chart());
  return w.truncated(cutoff());
}

FormSection FedosovData::D(const FormSection& w) const {
  FormSection r = d_.apply(truncate(w), cutoff());
  return r.chart() ? r : FormSection(chart());
}

FormSection FedosovData::perturbation(const FormSection& w) const {
  FormSection r = partial_.apply(truncate(w), cutoff());
  return r.chart() ? r : FormSection(chart());
}

std::vector<FormSection> FedosovData::d2_residuals() const {
  std::vector<FormSection> out;
  const ChartPtr& ch = chart();
  for (GenKind kind : {GenKind::Base, GenKind::Fiber, GenKind::Form})
    for (int i = 0; i < ch->dim(); ++i) out.push_back(D(D(gen(ch, kind, i))));
  return out;
}

FormSection tau_pbw(const PbwContext& ctx, const GradedPoly& f) {
  const ChartPtr& chart = ctx.chart();
  const int q = chart->truncation().max_sym_weight;
  FormSection total(chart);
  iota_incl(f);
  for (int w = 0; w <= q; ++w)
    for (const auto& idx : multi_indices_of_weight(*chart, w)) {
      SymTensor word = reversed_word(chart, idx);
      if (word.is_zero()) continue;
      GradedPoly value = apply(pbw_map(ctx, word), f);
      if (value.is_zero()) continue;
      GradedPoly yi = GradedPoly::constant(chart, 1);
      for (int i = 0; i < chart->dim(); ++i) yi = yi * GradedPoly::generator(chart, chart->generator(GenKind::Fiber, i), idx[i]);
      total += yi * value * (Rational(1) / idx.factorial());
    }
  return total;
}

FormSection tau_series(const FedosovData& data, const GradedPoly& f) {
  auto step = [&](const FormSection& t) { return delta_inv_op(data.perturbation(t)); };
  return series(data.truncate(iota_incl(f)), step, data.weight_bound() + 1);
}

FormSection homotopy_h(const FedosovData& data, const FormSection& w) {
  auto step = [&](const FormSection& t) { return delta_inv_op(data.perturbation(t)); };
  return series(delta_inv_op(data.truncate(w)), step, data.weight_bound() + 1);
}

}  // namespace formexp
