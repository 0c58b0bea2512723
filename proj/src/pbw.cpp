#include "formexp/pbw.hpp"

#include <mutex>
#include <stdexcept>

#include "formexp/enveloping.hpp"
#include "formexp/errors.hpp"

namespace formexp {

namespace {

int sign(int parity) { return parity % 2 != 0 ? -1 : 1; }

void require_torsion_free(const Connection& c, const char* what) {
  if (!c.torsion_free()) throw PreconditionError(std::string(what) + " requires a torsion-free connection");
}

}  // namespace

PbwContext::PbwContext(Connection connection) : conn_(std::move(connection)) {
  if (!conn_.chart()) throw std::invalid_argument("connection without a chart");
}

std::size_t PbwContext::cached() const {
  std::shared_lock lock(mu_);
  return table_.size();
}

const DiffOp& PbwContext::store(const MultiIndex& k, DiffOp value) const {
  std::unique_lock lock(mu_);
  return table_.try_emplace(k, std::move(value)).first->second;
}

const DiffOp& PbwContext::basis(const MultiIndex& k) const {
  {
    std::shared_lock lock(mu_);
    auto it = table_.find(k);
    if (it != table_.end()) return it->second;
  }
  check_cap(*chart(), k.weight(), "formal exponential of a word");
  return store(k, compute(k));
}

// pbw(X_0 ... X_n) = 1/(n+1) sum_k e_k { X_k pbw(X^{k}) - pbw(nabla_{X_k} X^{k}) }
// for the coordinate word of s^K. Equal letters give equal terms, so each
// coordinate i contributes K_i times.
DiffOp PbwContext::compute(const MultiIndex& k) const {
  const ChartPtr& ch = chart();
  int w = k.weight();
  if (w <= 1) return DiffOp::basis(ch, k);
  DiffOp total = DiffOp::zero(ch);
  int before = 0;  // sum of |d_j| over letters left of coordinate i
  for (int i = 0; i < ch->dim(); ++i) {
    if (k[i] == 0) continue;
    int di = -ch->coordinate_degree(i);
    MultiIndex rest = k;
    rest.at(i) -= 1;
    DiffOp term = partial_then(i, basis(rest));
    SymTensor moved = nabla_sym(conn_, VectorField::coordinate(ch, i), SymTensor::basis(ch, rest));
    term -= pbw_map(*this, moved);
    total += Rational(sign(di * before) * k[i]) * term;
    before += k[i] * di;
  }
  return Rational(1, w) * total;
}

void PbwContext::prebuild_serial(int max_weight) const {
  for (int w = 0; w <= max_weight; ++w)
    for (const auto& k : multi_indices_of_weight(*chart(), w)) basis(k);
}

void PbwContext::prebuild_parallel(int max_weight) const {
  check_cap(*chart(), max_weight, "formal exponential table");
  for (int w = 0; w <= max_weight; ++w) {
    auto words = multi_indices_of_weight(*chart(), w);
    const long count = static_cast<long>(words.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long t = 0; t < count; ++t) basis(words[static_cast<std::size_t>(t)]);
  }
}

DiffOp pbw_map(const PbwContext& ctx, const SymTensor& s) {
  if (s.is_zero()) return DiffOp::zero(ctx.chart());
  GradedPoly r(ctx.chart());
  for (const auto& [k, coef] : s.split()) r += coef * ctx.basis(k).poly();
  return DiffOp(std::move(r));
}

SymTensor pbw_inv(const PbwContext& ctx, const DiffOp& d) {
  SymTensor result = SymTensor::zero(ctx.chart());
  DiffOp rest = d;
  int guard = operator_cap(*ctx.chart()) + 2;
  while (!rest.is_zero()) {
    if (guard-- == 0) throw InternalError("symbol peeling did not terminate");
    SymTensor lead = gr_leading(rest);
    int before = rest.order();
    result += lead;
    rest -= pbw_map(ctx, lead);
    if (!rest.is_zero() && rest.order() >= before) throw InternalError("formal exponential does not preserve symbols");
  }
  return result;
}

DiffOp pbw_word(const PbwContext& ctx, std::span<const VectorField> word) {
  const ChartPtr& ch = ctx.chart();
  const int len = static_cast<int>(word.size());
  if (len == 0) return DiffOp::function(GradedPoly::constant(ch, 1));
  std::vector<int> deg;
  for (const auto& x : word) {
    Degree d = x.degree();
    if (d.kind == Degree::Kind::Zero) return DiffOp::zero(ch);
    if (d.kind == Degree::Kind::Heterogeneous) throw std::invalid_argument("pbw_word needs homogeneous vector fields");
    deg.push_back(d.value);
  }
  if (len == 1) return word[0].as_diffop();
  check_cap(*ch, len, "formal exponential of a word");
  DiffOp total = DiffOp::zero(ch);
  int before_k = 0;
  for (int k = 0; k < len; ++k) {
    std::vector<VectorField> rest;
    for (int j = 0; j < len; ++j)
      if (j != k) rest.push_back(word[static_cast<std::size_t>(j)]);
    DiffOp term = compose(word[static_cast<std::size_t>(k)].as_diffop(), pbw_word(ctx, rest));
    // nabla_{X_k} acts on the remaining word as a derivation.
    int before_m = 0;
    for (std::size_t m = 0; m < rest.size(); ++m) {
      VectorField moved = cov_deriv(ctx.connection(), word[static_cast<std::size_t>(k)], rest[m]);
      if (!moved.is_zero()) {
        std::vector<VectorField> replaced = rest;
        replaced[m] = moved;
        term -= Rational(sign(deg[static_cast<std::size_t>(k)] * before_m)) * pbw_word(ctx, replaced);
      }
      before_m += rest[m].degree().value;
    }
    total += Rational(sign(deg[static_cast<std::size_t>(k)] * before_k)) * term;
    before_k += deg[static_cast<std::size_t>(k)];
  }
  return Rational(1, len) * total;
}

SymTensor lightning_nabla(const PbwContext& ctx, const VectorField& x, const SymTensor& s) {
  if (s.is_zero()) return SymTensor::zero(ctx.chart());
  return pbw_inv(ctx, compose(x.as_diffop(), pbw_map(ctx, s)));
}

SymTensor theta_form(const PbwContext& ctx, const VectorField& x, const SymTensor& s) {
  require_torsion_free(ctx.connection(), "theta_form");
  SymTensor r = lightning_nabla(ctx, x, s);
  if (!s.is_zero()) r -= sym_product(x.as_sym(), s);
  r -= nabla_sym(ctx.connection(), x, s);
  return r;
}

// i_{d_l} Xi(y_k) = sum_I 1/I! y^I (-1)^{|rev d^I| |d_l|} < i_{d_l} Theta(rev d^I), y_k >
FiberVectorField xi_form(const PbwContext& ctx) {
  require_torsion_free(ctx.connection(), "xi_form");
  const ChartPtr& ch = ctx.chart();
  const int n = ch->dim();
  const int q = ch->truncation().max_sym_weight;
  FiberVectorField xi(ch);
  for (int l = 0; l < n; ++l) {
    VectorField dl = VectorField::coordinate(ch, l);
    GradedPoly dxl = GradedPoly::generator(ch, ch->generator(GenKind::Form, l));
    for (int w = 0; w <= q; ++w)
      for (const auto& idx : multi_indices_of_weight(*ch, w)) {
        SymTensor word = reversed_word(ch, idx);
        if (word.is_zero()) continue;
        SymTensor theta = theta_form(ctx, dl, word);
        int word_degree = 0;
        for (int i = 0; i < n; ++i) word_degree -= idx[i] * ch->coordinate_degree(i);
        Rational c = Rational(sign(word_degree * ch->coordinate_degree(l))) / idx.factorial();
        GradedPoly yi = GradedPoly::constant(ch, 1);
        for (int i = 0; i < n; ++i) yi = yi * GradedPoly::generator(ch, ch->generator(GenKind::Fiber, i), idx[i]);
        for (int k = 0; k < n; ++k) {
          GradedPoly pair = pairing(theta, GradedPoly::generator(ch, ch->generator(GenKind::Fiber, k)));
          if (!pair.is_zero()) xi.at(k) += dxl * (yi * pair) * c;
        }
      }
  }
  return xi;
}

}  // namespace formexp
