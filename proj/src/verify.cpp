#include "formexp/verify.hpp"

#include <functional>
#include <sstream>

#include "formexp/enveloping.hpp"
#include "formexp/errors.hpp"
#include "formexp/expression.hpp"
#include "formexp/koszul.hpp"
#include "formexp/perturbation.hpp"
#include "formexp/random.hpp"

namespace formexp {

namespace {

using Witness = std::optional<std::string>;
using Status = CheckResult::Status;

int sign(int parity) { return parity % 2 != 0 ? -1 : 1; }

std::uint64_t name_seed(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  return seed ^ h;
}

// Runs f on `n` independent random streams in parallel; the reported witness
// is the failing sample with the smallest index, so output is deterministic.
template <class F>
CheckResult sampled(const std::string& name, int n, std::uint64_t seed, F f) {
  std::vector<Witness> witness(static_cast<std::size_t>(n));
  const std::uint64_t s = name_seed(seed, name);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    RandomSource rng = RandomSource::stream(s, static_cast<std::uint64_t>(i));
    try {
      witness[static_cast<std::size_t>(i)] = f(rng);
    } catch (const std::exception& e) {
      witness[static_cast<std::size_t>(i)] = std::string("exception: ") + e.what();
    }
  }
  CheckResult r{name, Status::Pass, n, {}};
  for (int i = 0; i < n; ++i)
    if (const auto& w = witness[static_cast<std::size_t>(i)]) {
      r.status = Status::Fail;
      r.detail = "sample " + std::to_string(i) + ": " + *w;
      break;
    }
  return r;
}

std::optional<CheckResult> needs_torsion_free(const VerifyContext& v, const std::string& name) {
  if (v.connection().torsion_free()) return std::nullopt;
  return CheckResult{name, Status::Skipped, 0, "connection is not flagged torsion-free"};
}

int degree_of(const VectorField& x) {
  Degree d = x.degree();
  return d.homogeneous() ? d.value : 0;
}

GradedPoly one(const ChartPtr& chart) { return GradedPoly::constant(chart, 1); }

GradedPoly fiber_monomial(const ChartPtr& chart, const MultiIndex& j) {
  GradedPoly r = one(chart);
  for (int i = 0; i < chart->dim(); ++i)
    if (j[i]) r = r * GradedPoly::generator(chart, chart->generator(GenKind::Fiber, i), j[i]);
  return r;
}

// A random homogeneous vector field; degree drawn so that some component fits.
VectorField random_field(RandomSource& rng, const ChartPtr& chart) {
  int i = rng.uniform(0, chart->dim() - 1);
  Monomial m = rng.base_monomial(*chart, chart->truncation().max_base_degree);
  int deg = monomial_degree(*chart, m) - chart->coordinate_degree(i);
  std::vector<GradedPoly> comps(static_cast<std::size_t>(chart->dim()), GradedPoly(chart));
  comps[static_cast<std::size_t>(i)] = GradedPoly::term(chart, m, rng.coefficient());
  VectorField x(chart, std::move(comps));
  return x + rng.homogeneous_field(chart, deg, 2);
}

std::vector<VectorField> random_word(RandomSource& rng, const ChartPtr& chart, int len) {
  std::vector<VectorField> word;
  bool coordinate = rng.uniform(0, 1) == 0;
  for (int a = 0; a < len; ++a)
    word.push_back(coordinate ? VectorField::coordinate(chart, rng.uniform(0, chart->dim() - 1)) : random_field(rng, chart));
  return word;
}

SymTensor sym_of(const ChartPtr& chart, const std::vector<const VectorField*>& xs) {
  SymTensor s = SymTensor::function(one(chart));
  for (const VectorField* x : xs) s = sym_product(s, x->as_sym());
  return s;
}

DiffOp comp_of(const ChartPtr& chart, const std::vector<const VectorField*>& xs) {
  DiffOp d = DiffOp::function(one(chart));
  for (const VectorField* x : xs) d = compose(d, x->as_diffop());
  return d;
}

struct Expansion {
  SymTensor sym;        // X_0 . ... . X_n
  DiffOp composite;     // X_0 ... X_n
  SymTensor sym_corr;   // sum eps X.^.^. (nabla_{X_j} X_k), symmetric
  DiffOp comp_corr;     // same, composed
};

Expansion expansion(const Connection& c, const std::vector<VectorField>& word) {
  const ChartPtr& chart = c.chart();
  const int len = static_cast<int>(word.size());
  std::vector<int> deg;
  std::vector<const VectorField*> all;
  for (const auto& x : word) {
    deg.push_back(degree_of(x));
    all.push_back(&x);
  }
  Expansion e{sym_of(chart, all), comp_of(chart, all), SymTensor::zero(chart), DiffOp::zero(chart)};
  for (int j = 0; j < len; ++j)
    for (int k = j + 1; k < len; ++k) {
      std::vector<int> perm;
      std::vector<const VectorField*> rest;
      for (int a = 0; a < len; ++a)
        if (a != j && a != k) {
          perm.push_back(a);
          rest.push_back(&word[static_cast<std::size_t>(a)]);
        }
      perm.push_back(j);
      perm.push_back(k);
      Rational eps(koszul_sign(perm, deg));
      VectorField nab = cov_deriv(c, word[static_cast<std::size_t>(j)], word[static_cast<std::size_t>(k)]);
      rest.push_back(&nab);
      e.sym_corr += eps * sym_of(chart, rest);
      e.comp_corr += eps * comp_of(chart, rest);
    }
  return e;
}

std::string word_string(const std::vector<VectorField>& word) {
  std::string s;
  for (const auto& x : word) s += (s.empty() ? "" : " , ") + x.to_string();
  return "[" + s + "]";
}

// Minimum of p + q over the monomials of a nonzero section.
int min_filtration_weight(const FormSection& w) {
  int best = INT_MAX;
  for (const auto& [m, c] : w.terms())
    best = std::min(best, form_degree(*w.chart(), m) + fiber_weight(*w.chart(), m));
  return best;
}

FormSection random_section(RandomSource& rng, const FedosovData& data, int p) {
  return data.truncate(rng.section(data.chart(), p, data.weight_bound(), 3));
}

Contraction<FormSection, GradedPoly> delta_contraction(const ChartPtr& chart) {
  Contraction<FormSection, GradedPoly> c;
  c.dN = [](const FormSection& w) { return -delta_op(w); };
  c.dM = [chart](const GradedPoly&) { return GradedPoly(chart); };
  c.sigma = [](const FormSection& w) { return sigma_aug(w); };
  c.tau = [](const GradedPoly& f) { return iota_incl(f); };
  c.h = [](const FormSection& w) { return delta_inv_op(w); };
  return c;
}

std::string failures(const ContractionReport& r) {
  std::string s;
  for (const auto& c : r.checks)
    if (!c.pass) s += (s.empty() ? "" : "; ") + c.name + " (" + c.witness + ")";
  return s;
}

}  // namespace

VerifyContext::VerifyContext(Connection c) : ctx_(PbwContext::make(std::move(c))) {}

const FedosovData& VerifyContext::fedosov() const {
  if (!fedosov_) fedosov_ = FedosovData::build(connection());
  return *fedosov_;
}

CheckResult check_comultiplicative(const VerifyContext& v, const VerifyOptions& o) {
  const ChartPtr& chart = v.chart();
  int w = std::min(o.max_weight, chart->truncation().max_sym_weight);
  return sampled("comultiplicative", o.samples, o.seed, [&](RandomSource& rng) -> Witness {
    SymTensor s = rng.sym_tensor(chart, 0, w, 4);
    TensorSquare lhs = comult_env(pbw_map(v.pbw(), s));
    TensorSquare rhs = map_factors(
        comult_sym(s), [&](const MultiIndex& k) { return v.pbw().basis(k).poly(); }, TensorPower::Kind::Diff);
    if (lhs == rhs) return std::nullopt;
    return "S = " + s.to_string();
  });
}

CheckResult check_pbw_roundtrip(const VerifyContext& v) {
  const ChartPtr& chart = v.chart();
  CheckResult r{"pbw_roundtrip", Status::Pass, 0, {}};
  for (int w = 0; w <= chart->truncation().max_sym_weight && r.passed(); ++w)
    for (const auto& k : multi_indices_of_weight(*chart, w)) {
      ++r.cases;
      SymTensor s = SymTensor::basis(chart, k);
      DiffOp d = DiffOp::basis(chart, k);
      if (pbw_inv(v.pbw(), pbw_map(v.pbw(), s)) != s) {
        r = {r.name, Status::Fail, r.cases, "pbw_inv(pbw(" + s.to_string() + ")) differs"};
        break;
      }
      if (pbw_map(v.pbw(), pbw_inv(v.pbw(), d)) != d) {
        r = {r.name, Status::Fail, r.cases, "pbw(pbw_inv(" + d.to_string() + ")) differs"};
        break;
      }
    }
  return r;
}

CheckResult check_symbol(const VerifyContext& v, const VerifyOptions& o) {
  const ChartPtr& chart = v.chart();
  int wmax = std::min(o.max_weight, chart->truncation().max_sym_weight);
  return sampled("symbol", o.samples, o.seed, [&](RandomSource& rng) -> Witness {
    int w = rng.uniform(0, wmax);
    SymTensor s = rng.sym_tensor(chart, w, w, 3);
    if (s.is_zero() || gr_leading(pbw_map(v.pbw(), s)) == s) return std::nullopt;
    return "S = " + s.to_string();
  });
}

CheckResult check_pbw_expansion(const VerifyContext& v, const VerifyOptions& o) {
  if (auto skip = needs_torsion_free(v, "pbw_expansion")) return *skip;
  const ChartPtr& chart = v.chart();
  int wmax = std::min(o.max_weight, chart->truncation().max_sym_weight);
  return sampled("pbw_expansion", o.samples, o.seed, [&](RandomSource& rng) -> Witness {
    int len = rng.uniform(2, std::max(2, wmax));
    auto word = random_word(rng, chart, len);
    Expansion e = expansion(v.connection(), word);
    DiffOp diff = pbw_map(v.pbw(), e.sym) - (e.composite - e.comp_corr);
    auto ord = filtration_order(diff);
    if (!ord || *ord <= len - 2) return std::nullopt;
    return "word " + word_string(word) + " leaves order " + std::to_string(*ord);
  });
}

CheckResult check_pbw_inverse_expansion(const VerifyContext& v, const VerifyOptions& o) {
  if (auto skip = needs_torsion_free(v, "pbw_inverse_expansion")) return *skip;
  const ChartPtr& chart = v.chart();
  int wmax = std::min(o.max_weight, chart->truncation().max_sym_weight);
  return sampled("pbw_inverse_expansion", o.samples, o.seed, [&](RandomSource& rng) -> Witness {
    int len = rng.uniform(2, std::max(2, wmax));
    auto word = random_word(rng, chart, len);
    Expansion e = expansion(v.connection(), word);
    SymTensor diff = pbw_inv(v.pbw(), e.composite) - (e.sym + e.sym_corr);
    if (diff.weight() <= len - 2) return std::nullopt;
    return "word " + word_string(word) + " leaves weight " + std::to_string(diff.weight());
  });
}

CheckResult check_lightning_flat(const VerifyContext& v, const VerifyOptions& o) {
  const ChartPtr& chart = v.chart();
  const int n = chart->dim();
  const int top = chart->truncation().max_sym_weight - 1;
  const PbwContext& ctx = v.pbw();
  auto bracket = [&](const VectorField& x, const VectorField& y, const SymTensor& s) {
    SymTensor r = lightning_nabla(ctx, x, lightning_nabla(ctx, y, s)) -
                  Rational(sign(degree_of(x) * degree_of(y))) * lightning_nabla(ctx, y, lightning_nabla(ctx, x, s));
    VectorField xy = lie_bracket(x, y);
    if (!xy.is_zero()) r -= lightning_nabla(ctx, xy, s);
    return r;
  };
  CheckResult r{"lightning_flat", Status::Pass, 0, {}};
  for (int w = 0; w <= top && r.passed(); ++w)
    for (const auto& k : multi_indices_of_weight(*chart, w)) {
      SymTensor s = SymTensor::basis(chart, k);
      for (int i = 0; i < n && r.passed(); ++i)
        for (int j = 0; j < n; ++j) {
          ++r.cases;
          if (!bracket(VectorField::coordinate(chart, i), VectorField::coordinate(chart, j), s).is_zero()) {
            r.status = Status::Fail;
            r.detail = "R(d" + std::to_string(i + 1) + ", d" + std::to_string(j + 1) + ") on " + s.to_string();
            break;
          }
        }
    }
  if (!r.passed() || top < 0) return r;
  CheckResult s = sampled("lightning_flat", o.samples, o.seed, [&](RandomSource& rng) -> Witness {
    VectorField x = random_field(rng, chart), y = random_field(rng, chart);
    SymTensor t = rng.sym_tensor(chart, 0, top, 3);
    if (bracket(x, y, t).is_zero()) return std::nullopt;
    return "X = " + x.to_string() + ", Y = " + y.to_string() + ", S = " + t.to_string();
  });
  s.cases += r.cases;
  return s;
}

CheckResult check_xi_is_minus_a(const VerifyContext& v) {
  if (auto skip = needs_torsion_free(v, "xi_is_minus_a")) return *skip;
  FiberVectorField xi = xi_form(v.pbw());
  const FiberVectorField& a = v.fedosov().A();
  FiberVectorField sum = xi + a;
  auto recs = fiber_records(sum);
  CheckResult r{"xi_is_minus_a", Status::Pass, static_cast<int>(fiber_records(a).size() + fiber_records(xi).size()), {}};
  if (!recs.empty()) {
    r.status = Status::Fail;
    r.detail = "Xi + A has " + std::to_string(recs.size()) + " nonzero records, first " +
               format_records({recs.front()});
    if (!r.detail.empty() && r.detail.back() == '\n') r.detail.pop_back();
  }
  return r;
}

CheckResult check_d_squared(const VerifyContext& v) {
  if (auto skip = needs_torsion_free(v, "d_squared")) return *skip;
  const FedosovData& data = v.fedosov();
  auto res = data.d2_residuals();
  CheckResult r{"d_squared", Status::Pass, static_cast<int>(res.size()), {}};
  for (std::size_t g = 0; g < res.size(); ++g)
    if (!res[g].is_zero()) {
      r.status = Status::Fail;
      r.detail = "D(D(generator " + std::to_string(g) + ")) = " + format_poly(res[g]);
      break;
    }
  return r;
}

CheckResult check_normalization(const VerifyContext& v) {
  if (auto skip = needs_torsion_free(v, "normalization")) return *skip;
  FiberVectorField xi = xi_form(v.pbw());
  const FiberVectorField& a = v.fedosov().A();
  CheckResult r{"normalization", Status::Pass, 2 * v.chart()->dim(), {}};
  for (int k = 0; k < v.chart()->dim(); ++k) {
    if (!delta_inv_op(xi[k]).is_zero()) r = {r.name, Status::Fail, r.cases, "delta^-1 Xi(y" + std::to_string(k + 1) + ") != 0"};
    if (!delta_inv_op(a[k]).is_zero()) r = {r.name, Status::Fail, r.cases, "delta^-1 A(y" + std::to_string(k + 1) + ") != 0"};
  }
  return r;
}

CheckResult check_tau_routes(const VerifyContext& v, const VerifyOptions& o) {
  if (auto skip = needs_torsion_free(v, "tau_routes")) return *skip;
  const FedosovData& data = v.fedosov();
  return sampled("tau_routes", o.samples, o.seed, [&](RandomSource& rng) -> Witness {
    GradedPoly f = rng.function(v.chart(), 3);
    if (tau_pbw(v.pbw(), f) == tau_series(data, f)) return std::nullopt;
    return "f = " + format_poly(f);
  });
}

CheckResult check_tau_properties(const VerifyContext& v, const VerifyOptions& o) {
  if (auto skip = needs_torsion_free(v, "tau_properties")) return *skip;
  const FedosovData& data = v.fedosov();
  const Cutoff fiber = fiber_cutoff(*v.chart(), data.weight_bound());
  return sampled("tau_properties", o.samples, o.seed, [&](RandomSource& rng) -> Witness {
    GradedPoly f = rng.function(v.chart(), 3), g = rng.function(v.chart(), 3);
    FormSection tf = tau_pbw(v.pbw(), f), tg = tau_pbw(v.pbw(), g);
    if (!(sigma_aug(tf) == f)) return "sigma tau f != f for f = " + format_poly(f);
    if (!data.D(tf).is_zero()) return "D tau f != 0 for f = " + format_poly(f);
    if (!(tau_pbw(v.pbw(), f * g) == multiply(tf, tg, fiber)))
      return "tau(fg) != tau(f) tau(g) for f = " + format_poly(f) + ", g = " + format_poly(g);
    return std::nullopt;
  });
}

CheckResult check_resolution(const VerifyContext& v, const VerifyOptions& o) {
  if (auto skip = needs_torsion_free(v, "resolution")) return *skip;
  const FedosovData& data = v.fedosov();
  return sampled("resolution", o.samples, o.seed, [&](RandomSource& rng) -> Witness {
    int p = rng.uniform(0, 2);
    if (p == 0) {
      FormSection w = random_section(rng, data, 0);
      FormSection lhs = tau_series(data, sigma_aug(w)) - w;
      FormSection rhs = homotopy_h(data, data.D(w)) + data.D(homotopy_h(data, w));
      if (lhs == rhs) return std::nullopt;
      return "homotopy identity fails on 0-form " + format_poly(w);
    }
    FormSection eta = random_section(rng, data, p - 1);
    FormSection w = data.D(eta);
    if (!data.D(w).is_zero()) return "D omega != 0 for eta = " + format_poly(eta);
    if (!sigma_aug(w).is_zero()) return "sigma omega != 0 for eta = " + format_poly(eta);
    if ((w + data.D(homotopy_h(data, w))).is_zero()) return std::nullopt;
    return "omega != -D h omega for omega = " + format_poly(w);
  });
}

CheckResult check_fedosov_contraction(const VerifyContext& v, const VerifyOptions& o) {
  if (auto skip = needs_torsion_free(v, "fedosov_contraction")) return *skip;
  const FedosovData& data = v.fedosov();
  const ChartPtr chart = v.chart();
  Contraction<FormSection, GradedPoly> c;
  c.dN = [&](const FormSection& w) { return data.D(w); };
  c.dM = [chart](const GradedPoly&) { return GradedPoly(chart); };
  c.sigma = [](const FormSection& w) { return sigma_aug(w); };
  c.tau = [&](const GradedPoly& f) { return tau_series(data, f); };
  c.h = [&](const FormSection& w) { return homotopy_h(data, w); };
  RandomSource rng = RandomSource::stream(name_seed(o.seed, "fedosov_contraction"), 0);
  std::vector<FormSection> ns;
  std::vector<GradedPoly> ms;
  for (int i = 0; i < o.samples; ++i) {
    ns.push_back(random_section(rng, data, i % 3));
    ms.push_back(rng.function(chart, 3));
  }
  auto report = check_contraction<FormSection, GradedPoly>(
      c, ns, ms, [&](std::size_t i) { return format_poly(ns[i]); }, [&](std::size_t i) { return format_poly(ms[i]); });
  CheckResult r{"fedosov_contraction", Status::Pass, 2 * o.samples, {}};
  if (!report.all_pass()) {
    r.status = Status::Fail;
    r.detail = failures(report);
  }
  return r;
}

CheckResult check_delta_contraction(const VerifyContext& v, const VerifyOptions& o) {
  const ChartPtr chart = v.chart();
  const int q = chart->truncation().max_sym_weight;
  RandomSource rng = RandomSource::stream(name_seed(o.seed, "delta_contraction"), 0);
  std::vector<FormSection> ns;
  std::vector<GradedPoly> ms;
  const Cutoff cut = weight_cutoff(*chart, q);
  for (int i = 0; i < o.samples; ++i) {
    ns.push_back(rng.section(chart, i % 3, q, 3).truncated(cut));
    ms.push_back(rng.function(chart, 3));
  }
  auto c = delta_contraction(chart);
  auto report = check_contraction<FormSection, GradedPoly>(c, ns, ms);
  CheckResult r{"delta_contraction", Status::Pass, 2 * o.samples, {}};
  if (!report.all_pass()) {
    r.status = Status::Fail;
    r.detail = failures(report);
    return r;
  }
  // Without the 1/(p+q) factor the homotopy identity must break.
  auto broken = c;
  broken.h = [](const FormSection& w) { return kappa_op(w); };
  auto bad = check_contraction<FormSection, GradedPoly>(broken, ns, ms);
  for (const auto& chk : bad.checks)
    if (chk.name == "tau_sigma_homotopy" && chk.pass) {
      r.status = Status::Fail;
      r.detail = "unnormalized homotopy was not detected";
    }
  return r;
}

CheckResult check_perturbed_contraction(const VerifyContext& v, const VerifyOptions& o) {
  if (auto skip = needs_torsion_free(v, "perturbed_contraction")) return *skip;
  const FedosovData& data = v.fedosov();
  const ChartPtr chart = v.chart();
  FiltrationProbe<FormSection> probe;
  probe.weight = min_filtration_weight;
  RandomSource rng = RandomSource::stream(name_seed(o.seed, "perturbed_contraction"), 0);
  std::vector<FormSection> ns;
  std::vector<GradedPoly> ms;
  for (int i = 0; i < o.samples; ++i) {
    ns.push_back(random_section(rng, data, i % 3));
    ms.push_back(rng.function(chart, 3));
    for (const auto& [m, c] : ns.back().terms()) probe.probes.push_back(GradedPoly::term(chart, m, c));
  }
  auto pc = perturb_contraction<FormSection, GradedPoly>(
      delta_contraction(chart), [&](const FormSection& w) { return data.perturbation(w); }, data.weight_bound() + 2,
      probe);
  CheckResult r{"perturbed_contraction", Status::Pass, 2 * o.samples, {}};
  auto fail = [&](std::string why) {
    if (r.passed()) r = {r.name, Status::Fail, r.cases, std::move(why)};
  };
  for (const auto& f : ms) {
    FormSection t = pc.contraction.tau(f);
    if (!(t == tau_series(data, f))) fail("perturbed tau differs from the series for f = " + format_poly(f));
    if (!(t == tau_pbw(v.pbw(), f))) fail("perturbed tau differs from tau_pbw for f = " + format_poly(f));
    if (!pc.theta(f).is_zero()) fail("theta != 0 for f = " + format_poly(f));
  }
  for (const auto& w : ns) {
    if (!(pc.contraction.sigma(w) == sigma_aug(w))) fail("perturbed sigma differs on " + format_poly(w));
    if (!(pc.contraction.h(w) == homotopy_h(data, w))) fail("perturbed h differs on " + format_poly(w));
    if (!(pc.contraction.dN(w) == data.D(w))) fail("perturbed differential differs from D on " + format_poly(w));
  }
  auto report = check_contraction<FormSection, GradedPoly>(pc.contraction, ns, ms);
  if (!report.all_pass()) fail(failures(report));
  return r;
}

CheckResult check_dnabla_curvature(const VerifyContext& v, const VerifyOptions& o) {
  const Connection& conn = v.connection();
  const ChartPtr& chart = v.chart();
  const int n = chart->dim();
  const int wmax = std::min(3, chart->truncation().max_sym_weight);
  // C(d_a, d_b) = [nabla_a, nabla_b] on S T as a derivation, from the curvature tensor.
  std::vector<Derivation> comm(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Derivation& d = comm[static_cast<std::size_t>(a * n + b)];
      Rational pre(sign(chart->coordinate_degree(b) + 1));
      for (int m = 0; m < n; ++m) {
        VectorField r = curvature(conn, VectorField::coordinate(chart, a), VectorField::coordinate(chart, b),
                                  VectorField::coordinate(chart, m));
        if (!r.is_zero()) d.images.emplace_back(chart->generator(GenKind::Sym, m), r.as_sym().poly() * pre);
      }
    }
  return sampled("dnabla_curvature", o.samples, o.seed, [&](RandomSource& rng) -> Witness {
    GradedPoly s = rng.fiber_poly(chart, wmax, 3);
    FormSection lhs = dnabla_form(conn, dnabla_form(conn, s));
    FormSection rhs(chart);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const Derivation& c = comm[static_cast<std::size_t>(a * n + b)];
        if (c.images.empty()) continue;
        int da = chart->coordinate_degree(a), db = chart->coordinate_degree(b);
        GradedPoly dual(chart);
        for (int w = 0; w <= wmax; ++w)
          for (const auto& idx : multi_indices_of_weight(*chart, w)) {
            SymTensor word = reversed_word(chart, idx);
            GradedPoly cw = c.apply(word.poly());
            if (cw.is_zero()) continue;
            int wdeg = 0;
            for (int i = 0; i < n; ++i) wdeg += idx[i] * chart->coordinate_degree(i);
            GradedPoly pr = pairing(SymTensor(cw), s);
            if (pr.is_zero()) continue;
            dual -= fiber_monomial(chart, idx) * pr * (Rational(sign((da + db) * wdeg)) / idx.factorial());
          }
        if (dual.is_zero()) continue;
        GradedPoly forms = GradedPoly::generator(chart, chart->generator(GenKind::Form, a)) *
                           GradedPoly::generator(chart, chart->generator(GenKind::Form, b));
        rhs += forms * dual * (Rational(sign(da * (1 + db))) / 2);
      }
    if (lhs == rhs) return std::nullopt;
    return "section " + format_poly(s);
  });
}

CheckResult check_pairing_interior(const VerifyContext& v, const VerifyOptions& o) {
  const ChartPtr& chart = v.chart();
  const int wmax = std::min(o.max_weight, chart->truncation().max_sym_weight);
  return sampled("pairing_interior", o.samples, o.seed, [&](RandomSource& rng) -> Witness {
    VectorField x = random_field(rng, chart);
    int w = rng.uniform(0, wmax - 1);
    MultiIndex k = rng.multi_index(*chart, w);
    Monomial m = rng.base_monomial(*chart, chart->truncation().max_base_degree);
    SymTensor s = GradedPoly::term(chart, m, rng.coefficient()) * SymTensor::basis(chart, k);
    GradedPoly fib = rng.fiber_poly(chart, w + 1, 3);
    if (x.is_zero() || s.is_zero()) return std::nullopt;
    Degree ds = s.poly().degree();
    GradedPoly lhs = pairing(s, interior_product(x, delta_op(fib)));
    GradedPoly rhs = pairing(sym_product(x.as_sym(), s), fib) * Rational(sign(ds.value * degree_of(x)));
    if (lhs == rhs) return std::nullopt;
    return "X = " + x.to_string() + ", S = " + s.to_string() + ", sigma = " + format_poly(fib);
  });
}

CheckResult check_pairing_basis(const VerifyContext& v) {
  const ChartPtr& chart = v.chart();
  CheckResult r{"pairing_basis", Status::Pass, 0, {}};
  for (int w = 0; w <= chart->truncation().max_sym_weight; ++w) {
    auto idx = multi_indices_of_weight(*chart, w);
    for (const auto& i : idx)
      for (const auto& j : idx) {
        ++r.cases;
        GradedPoly got = pairing(reversed_word(chart, i), fiber_monomial(chart, j));
        GradedPoly want = i == j ? GradedPoly::constant(chart, i.factorial()) : GradedPoly(chart);
        if (!(got == want) && r.passed()) {
          r.status = Status::Fail;
          r.detail = "<rev d^" + i.to_string() + ", y^" + j.to_string() + "> = " + format_poly(got);
        }
      }
  }
  return r;
}

bool known_suite(std::string_view suite) {
  for (auto s : {"all", "vavin", "jasmin", "jasmine", "bastille", "trocadero", "hpl", "pairing"})
    if (suite == s) return true;
  return false;
}

std::vector<CheckResult> run_suite(const VerifyContext& v, std::string_view suite, const VerifyOptions& o) {
  if (!known_suite(suite)) throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
  bool all = suite == "all";
  std::vector<CheckResult> out;
  auto run = [&](CheckResult r) { out.push_back(std::move(r)); };
  auto guarded = [&](const std::string& name, const std::function<CheckResult()>& f) {
    try {
      run(f());
    } catch (const PreconditionError& e) {
      run({name, Status::Skipped, 0, e.what()});
    } catch (const std::exception& e) {
      run({name, Status::Fail, 0, std::string("exception: ") + e.what()});
    }
  };
  if (all || suite == "vavin") {
    guarded("comultiplicative", [&] { return check_comultiplicative(v, o); });
    guarded("pbw_roundtrip", [&] { return check_pbw_roundtrip(v); });
  }
  if (all || suite == "jasmin" || suite == "jasmine") {
    guarded("symbol", [&] { return check_symbol(v, o); });
    guarded("pbw_expansion", [&] { return check_pbw_expansion(v, o); });
    guarded("pbw_inverse_expansion", [&] { return check_pbw_inverse_expansion(v, o); });
  }
  if (all || suite == "bastille") {
    guarded("lightning_flat", [&] { return check_lightning_flat(v, o); });
    guarded("xi_is_minus_a", [&] { return check_xi_is_minus_a(v); });
    guarded("d_squared", [&] { return check_d_squared(v); });
    guarded("normalization", [&] { return check_normalization(v); });
  }
  if (all || suite == "trocadero") {
    guarded("tau_routes", [&] { return check_tau_routes(v, o); });
    guarded("tau_properties", [&] { return check_tau_properties(v, o); });
    guarded("resolution", [&] { return check_resolution(v, o); });
    guarded("fedosov_contraction", [&] { return check_fedosov_contraction(v, o); });
  }
  if (all || suite == "hpl") {
    guarded("delta_contraction", [&] { return check_delta_contraction(v, o); });
    guarded("perturbed_contraction", [&] { return check_perturbed_contraction(v, o); });
  }
  if (all || suite == "pairing") {
    guarded("dnabla_curvature", [&] { return check_dnabla_curvature(v, o); });
    guarded("pairing_interior", [&] { return check_pairing_interior(v, o); });
    guarded("pairing_basis", [&] { return check_pairing_basis(v); });
  }
  return out;
}

std::string format_report(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << "CHECK " << r.name;
    switch (r.status) {
      case Status::Pass: os << " PASS cases=" << r.cases; break;
      case Status::Fail: os << " FAIL cases=" << r.cases << " witness: " << r.detail; break;
      case Status::Skipped: os << " SKIPPED reason: " << r.detail; break;
    }
    os << '\n';
  }
  return os.str();
}

bool report_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (r.status == Status::Fail) return false;
  return true;
}

}  // namespace formexp
