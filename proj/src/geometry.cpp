#include "formexp/geometry.hpp"

#include <stdexcept>

#include "formexp/errors.hpp"
#include "formexp/expression.hpp"

namespace formexp {

namespace {

// sum over terms c m of (-1)^{d |m|} c m
GradedPoly twist(const GradedPoly& g, int d) {
  if (d % 2 == 0 || g.is_zero()) return g;
  GradedPoly r(g.chart());
  for (const auto& [m, c] : g.terms()) r.add_term(m, monomial_degree(*g.chart(), m) % 2 != 0 ? Rational(-c) : c);
  return r;
}

int sign(int parity) { return parity % 2 != 0 ? -1 : 1; }

void require_same(const ChartPtr& a, const ChartPtr& b) {
  if (a != b && !a->compatible(*b)) throw ChartMismatch();
}

}  // namespace

VectorField::VectorField(ChartPtr chart) : chart_(std::move(chart)) {
  comps_.assign(static_cast<std::size_t>(chart_->dim()), GradedPoly(chart_));
}

VectorField::VectorField(ChartPtr chart, std::vector<GradedPoly> components)
    : chart_(std::move(chart)), comps_(std::move(components)) {
  if (static_cast<int>(comps_.size()) != chart_->dim()) throw std::invalid_argument("vector field needs n components");
  std::uint32_t base = chart_->block_mask(GenKind::Base);
  for (auto& f : comps_) {
    if (!f.chart()) f = GradedPoly(chart_);
    require_same(chart_, f.chart());
    for (const auto& [m, c] : f.terms())
      for (int g = 0; g < chart_->generator_count(); ++g)
        if (m[g] && !((base >> g) & 1u)) throw std::invalid_argument("vector field components must be functions");
  }
}

VectorField VectorField::coordinate(ChartPtr chart, int i) {
  VectorField x(chart);
  x.comps_.at(static_cast<std::size_t>(i)) = GradedPoly::constant(chart, 1);
  return x;
}

bool VectorField::is_zero() const {
  for (const auto& f : comps_)
    if (!f.is_zero()) return false;
  return true;
}

Degree VectorField::degree() const {
  Degree d;
  for (int i = 0; i < static_cast<int>(comps_.size()); ++i) {
    for (const auto& [m, c] : comps_[static_cast<std::size_t>(i)].terms()) {
      int v = monomial_degree(*chart_, m) - chart_->coordinate_degree(i);
      if (d.kind == Degree::Kind::Zero) {
        d = {Degree::Kind::Homogeneous, v};
      } else if (d.value != v) {
        return {Degree::Kind::Heterogeneous, 0};
      }
    }
  }
  return d;
}

std::map<int, VectorField> VectorField::homogeneous_parts() const {
  std::map<int, VectorField> out;
  for (int i = 0; i < static_cast<int>(comps_.size()); ++i)
    for (const auto& [m, c] : comps_[static_cast<std::size_t>(i)].terms()) {
      int v = monomial_degree(*chart_, m) - chart_->coordinate_degree(i);
      auto it = out.try_emplace(v, VectorField(chart_)).first;
      it->second.comps_[static_cast<std::size_t>(i)].add_term(m, c);
    }
  return out;
}

SymTensor VectorField::as_sym() const {
  GradedPoly p(chart_);
  for (int i = 0; i < chart_->dim(); ++i)
    p += comps_[static_cast<std::size_t>(i)] * GradedPoly::generator(chart_, chart_->generator(GenKind::Sym, i));
  return SymTensor(std::move(p));
}

DiffOp VectorField::as_diffop() const { return DiffOp(as_sym().poly()); }

std::string VectorField::to_string() const { return format_operator(as_sym().poly(), true); }

VectorField& VectorField::operator+=(const VectorField& o) {
  require_same(chart_, o.chart_);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  require_same(chart_, o.chart_);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
  return *this;
}

VectorField VectorField::operator-() const {
  VectorField r = *this;
  for (auto& f : r.comps_) f = -f;
  return r;
}

VectorField operator*(const Rational& c, VectorField x) {
  for (auto& f : x.comps_) f *= c;
  return x;
}

VectorField operator*(const GradedPoly& f, const VectorField& x) {
  VectorField r = x;
  for (auto& g : r.comps_) g = f * g;
  return r;
}

bool operator==(const VectorField& a, const VectorField& b) {
  require_same(a.chart_, b.chart_);
  return a.comps_ == b.comps_;
}

VectorField vector_field_from_sym(const SymTensor& s) {
  VectorField x(s.chart());
  std::vector<GradedPoly> comps = x.components();
  for (const auto& [k, coef] : s.split()) {
    if (k.weight() != 1) throw std::invalid_argument("symmetric tensor is not of weight one");
    int i = 0;
    while (k[i] == 0) ++i;
    comps[static_cast<std::size_t>(i)] += coef;
  }
  return VectorField(s.chart(), std::move(comps));
}

GradedPoly vf_apply(const VectorField& x, const GradedPoly& f) {
  require_same(x.chart(), common_chart(f, GradedPoly(x.chart())));
  GradedPoly r(x.chart());
  for (int i = 0; i < x.chart()->dim(); ++i)
    if (!x[i].is_zero()) r += x[i] * partial_left(i, f);
  return r;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same(x.chart(), y.chart());
  const ChartPtr& chart = x.chart();
  VectorField r(chart);
  for (const auto& [dx, xp] : x.homogeneous_parts())
    for (const auto& [dy, yp] : y.homogeneous_parts()) {
      std::vector<GradedPoly> comps;
      for (int k = 0; k < chart->dim(); ++k) {
        GradedPoly c = vf_apply(xp, yp[k]);
        c -= vf_apply(yp, xp[k]) * Rational(sign(dx * dy));
        comps.push_back(std::move(c));
      }
      r += VectorField(chart, std::move(comps));
    }
  return r;
}

Connection::Connection(ChartPtr chart, std::vector<GradedPoly> symbols, bool torsion_free)
    : chart_(std::move(chart)), symbols_(std::move(symbols)), torsion_free_(torsion_free) {
  int n = chart_->dim();
  if (symbols_.size() != static_cast<std::size_t>(n * n * n)) throw std::invalid_argument("Christoffel table has wrong size");
  std::uint32_t base = chart_->block_mask(GenKind::Base);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        GradedPoly& g = symbols_[slot(n, i, j, k)];
        if (!g.chart()) g = GradedPoly(chart_);
        require_same(chart_, g.chart());
        if (g.is_zero()) continue;
        for (const auto& [m, c] : g.terms())
          for (int q = 0; q < chart_->generator_count(); ++q)
            if (m[q] && !((base >> q) & 1u)) throw std::invalid_argument("Christoffel symbols must be functions");
        int want = chart_->coordinate_degree(k) - chart_->coordinate_degree(i) - chart_->coordinate_degree(j);
        Degree d = g.degree();
        if (!d.homogeneous() || d.value != want)
          throw std::invalid_argument("Christoffel symbol (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                      std::to_string(k + 1) + ") must be homogeneous of degree " + std::to_string(want));
      }
  if (torsion_free_ && !symbols_symmetric())
    throw std::invalid_argument("connection flagged torsion-free has non-symmetric Christoffel symbols");
}

Connection Connection::flat(ChartPtr chart) {
  auto table = empty_table(chart);
  return Connection(std::move(chart), std::move(table), true);
}

std::vector<GradedPoly> Connection::empty_table(const ChartPtr& chart) {
  int n = chart->dim();
  return std::vector<GradedPoly>(static_cast<std::size_t>(n * n * n), GradedPoly(chart));
}

bool Connection::symbols_symmetric() const {
  int n = chart_->dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Rational s = sign(chart_->coordinate_degree(i) * chart_->coordinate_degree(j));
        if (!(gamma(i, j, k) == gamma(j, i, k) * s)) return false;
      }
  return true;
}

VectorField cov_deriv(const Connection& c, const VectorField& x, const VectorField& y) {
  require_same(c.chart(), x.chart());
  require_same(c.chart(), y.chart());
  const ChartPtr& chart = c.chart();
  int n = chart->dim();
  std::vector<GradedPoly> out(static_cast<std::size_t>(n), GradedPoly(chart));
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    int di = chart->coordinate_degree(i);
    // nabla_{d_i} Y = sum_j d_i(g^j) d_j + (-1)^{d_i |g^j|} g^j Gamma^k_{ij} d_k
    std::vector<GradedPoly> part(static_cast<std::size_t>(n), GradedPoly(chart));
    for (int j = 0; j < n; ++j) {
      const GradedPoly& g = y[j];
      if (g.is_zero()) continue;
      part[static_cast<std::size_t>(j)] += partial_left(i, g);
      GradedPoly tg = twist(g, di);
      for (int k = 0; k < n; ++k)
        if (!c.gamma(i, j, k).is_zero()) part[static_cast<std::size_t>(k)] += tg * c.gamma(i, j, k);
    }
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] += x[i] * part[static_cast<std::size_t>(k)];
  }
  return VectorField(chart, std::move(out));
}

VectorField torsion(const Connection& c, const VectorField& x, const VectorField& y) {
  VectorField r(c.chart());
  for (const auto& [dx, xp] : x.homogeneous_parts())
    for (const auto& [dy, yp] : y.homogeneous_parts()) {
      r += cov_deriv(c, xp, yp);
      r -= Rational(sign(dx * dy)) * cov_deriv(c, yp, xp);
      r -= lie_bracket(xp, yp);
    }
  return r;
}

VectorField curvature(const Connection& c, const VectorField& x, const VectorField& y, const VectorField& z) {
  VectorField r(c.chart());
  for (const auto& [dx, xp] : x.homogeneous_parts())
    for (const auto& [dy, yp] : y.homogeneous_parts()) {
      VectorField t = cov_deriv(c, xp, cov_deriv(c, yp, z));
      t -= Rational(sign(dx * dy)) * cov_deriv(c, yp, cov_deriv(c, xp, z));
      t -= cov_deriv(c, lie_bracket(xp, yp), z);
      r += Rational(sign(dy - 1)) * t;
    }
  return r;
}

SymTensor nabla_sym(const Connection& c, const VectorField& x, const SymTensor& s) {
  require_same(c.chart(), x.chart());
  const ChartPtr& chart = c.chart();
  int n = chart->dim();
  if (s.is_zero()) return SymTensor::zero(chart);
  require_same(chart, s.chart());
  GradedPoly r(chart);
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    // nabla_{d_i} acts as the derivation x_j -> delta_ij, s_j -> sum_k Gamma^k_{ij} s_k.
    Derivation d;
    d.images.emplace_back(chart->generator(GenKind::Base, i), GradedPoly::constant(chart, 1));
    for (int j = 0; j < n; ++j) {
      GradedPoly img(chart);
      for (int k = 0; k < n; ++k)
        if (!c.gamma(i, j, k).is_zero())
          img += c.gamma(i, j, k) * GradedPoly::generator(chart, chart->generator(GenKind::Sym, k));
      if (!img.is_zero()) d.images.emplace_back(chart->generator(GenKind::Sym, j), std::move(img));
    }
    r += x[i] * d.apply(s.poly());
  }
  return SymTensor(std::move(r));
}

}  // namespace formexp
