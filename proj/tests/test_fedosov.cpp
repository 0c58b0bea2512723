#include <doctest.h>

#include "formexp/errors.hpp"
#include "formexp/fedosov.hpp"
#include "formexp/random.hpp"
#include "formexp/verify.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace formexp;
using testing::P;

namespace {

FormSection F(const ChartPtr& c, const std::string& text) { return parse_form(c, text); }

}  // namespace

TEST_CASE("delta and its partial inverse on examples") {
  auto c = testing::coords({{"x", 0}}, 4);
  CHECK(delta_op(F(c, "y^2")) == F(c, "2*dx*y"));
  CHECK(delta_op(F(c, "dx*y")).is_zero());
  CHECK(delta_op(F(c, "x^3")).is_zero());
  CHECK(delta_inv_op(F(c, "dx*y")) == F(c, "1/2*y^2"));
  CHECK(delta_inv_op(F(c, "dx")) == F(c, "y"));
  CHECK(delta_inv_op(F(c, "x + y^2")).is_zero());
  CHECK(kappa_op(F(c, "dx*y")) == F(c, "y^2"));
  CHECK(sigma_aug(F(c, "x^2 + y + dx + 3")) == P(c, "x^2 + 3"));
  CHECK(iota_incl(P(c, "x")) == F(c, "x"));
}

TEST_CASE("delta contraction identities on random sections") {
  for (auto coords : std::vector<std::vector<Coordinate>>{
           {{"x", 0}}, {{"x1", 0}, {"x2", 0}}, {{"x", 0}, {"t", 1}}, {{"x", 0}, {"t", 1}, {"u", 2}}, {{"t", -1}, {"u", 2}}}) {
    auto c = testing::coords(coords, 4);
    RandomSource rng(51);
    for (int trial = 0; trial < 40; ++trial) {
      FormSection w = rng.section(c, rng.uniform(0, 2), 4, 4);
      CHECK(delta_op(delta_op(w)).is_zero());
      CHECK(delta_inv_op(delta_inv_op(w)).is_zero());
      CHECK(delta_op(delta_inv_op(w)) + delta_inv_op(delta_op(w)) == w - iota_incl(sigma_aug(w)));
    }
  }
}

TEST_CASE("covariant differential on examples") {
  auto f = testing::chart("flat1");
  auto c = f.chart;
  CHECK(dnabla_form(f.connection, F(c, "x*y")) == F(c, "dx*y"));
  CHECK(dnabla_form(f.connection, F(c, "y^3")).is_zero());
  auto e1 = testing::chart("e1");
  CHECK(dnabla_form(e1.connection, F(e1.chart, "y")) == F(e1.chart, "-x*dx*y"));
  CHECK(dnabla_form(e1.connection, F(e1.chart, "x")) == F(e1.chart, "dx"));
}

TEST_CASE("fiber vector fields act as derivations") {
  auto c = testing::coords({{"x", 0}}, 5);
  FiberVectorField a(c, {F(c, "dx*y^2")});
  CHECK(a_action(a, F(c, "y")) == F(c, "dx*y^2"));
  CHECK(a_action(a, F(c, "y*y")) == F(c, "2*dx*y^3"));
  CHECK(a_action(a, F(c, "x")).is_zero());
}

TEST_CASE("fedosov data on flat and curved charts") {
  for (const char* name : {"flat1", "e1"}) {
    auto d = FedosovData::build(testing::chart(name).connection);
    CHECK(d.A().is_zero());
    for (const auto& r : d.d2_residuals()) CHECK(r.is_zero());
  }
  auto c2 = testing::chart("curved2", 3);
  auto d = FedosovData::build(c2.connection);
  auto recs = fiber_records(d.A());
  REQUIRE(recs.size() == 2);
  CHECK(format_records(recs) == "A[i=1,J=(1,1),k=2] = -1/3\nA[i=2,J=(2,0),k=2] = 1/3\n");
  CHECK_THROWS_AS(FedosovData::build(testing::chart("torsionful").connection), PreconditionError);
}

TEST_CASE("fedosov differential is flat and normalized on every chart") {
  for (const char* name : testing::kTorsionFreeCharts) {
    CAPTURE(name);
    auto d = FedosovData::build(testing::chart(name, 4).connection);
    for (const auto& r : d.d2_residuals()) CHECK(r.is_zero());
    for (const auto& comp : d.A().components()) {
      CHECK(delta_inv_op(comp).is_zero());
      for (const auto& [m, coeff] : comp.terms()) {
        CHECK(form_degree(*d.chart(), m) == 1);
        CHECK(fiber_weight(*d.chart(), m) >= 2);
      }
    }
  }
}

TEST_CASE("flat sections of the zero connection are the Taylor expansion") {
  auto fl = testing::chart("flat1", 5);
  auto d = FedosovData::build(fl.connection);
  auto c = fl.chart;
  CHECK(tau_series(d, P(c, "x^2")) == F(c, "x^2 + 2*x*y + y^2"));
  CHECK(d.D(F(c, "x + y")).is_zero());
  CHECK(d.D(F(c, "y")) == F(c, "-dx"));
  CHECK(d.D(tau_series(d, P(c, "x"))).is_zero());

  auto odd = testing::coords({{"x", 0}, {"t", 1}, {"u", 2}, {"r", -1}}, 4);
  auto conn = Connection::flat(odd);
  PbwContext ctx(conn);
  auto data = FedosovData::build(conn);
  RandomSource rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    GradedPoly f = rng.function(odd, 4);
    FormSection want = oracles::shifted(f);
    CHECK(tau_pbw(ctx, f) == want);
    CHECK(tau_series(data, f) == want);
  }
}

TEST_CASE("flat sections follow geodesics on even charts") {
  auto e1 = testing::chart("e1", 5);
  PbwContext ctx(e1.connection);
  auto c = e1.chart;
  CHECK(tau_pbw(ctx, P(c, "x^2")) ==
        F(c, "x^2 + 2*x*y + (1 - x^2)*y^2 + (-4/3*x + 2/3*x^3)*y^3 + (-1/3 + 3/2*x^2 - 1/2*x^4)*y^4 + "
             "(13/15*x - 8/5*x^3 + 2/5*x^5)*y^5"));
  for (const char* name : {"e1", "curved2"}) {
    auto cf = testing::chart(name, 5);
    PbwContext pc(cf.connection);
    auto data = FedosovData::build(cf.connection);
    RandomSource rng(53);
    for (int trial = 0; trial < 20; ++trial) {
      GradedPoly f = rng.function(cf.chart, 3);
      FormSection want = oracles::geodesic_taylor(cf.connection, f);
      CHECK(tau_pbw(pc, f) == want);
      CHECK(tau_series(data, f) == want);
    }
  }
}

TEST_CASE("homotopy and flat sections on every chart") {
  VerifyOptions o;
  o.samples = 20;
  for (const char* name : testing::kTorsionFreeCharts) {
    CAPTURE(name);
    VerifyContext v(testing::chart(name, 4).connection);
    for (auto r : {check_xi_is_minus_a(v), check_d_squared(v), check_normalization(v), check_tau_routes(v, o),
                   check_tau_properties(v, o), check_resolution(v, o), check_fedosov_contraction(v, o),
                   check_delta_contraction(v, o), check_dnabla_curvature(v, o), check_pairing_interior(v, o)}) {
      CAPTURE(r.name);
      CAPTURE(r.detail);
      CHECK(r.passed());
    }
  }
}

TEST_CASE("homotopy satisfies its side conditions") {
  auto cf = testing::chart("mixed", 4);
  auto d = FedosovData::build(cf.connection);
  RandomSource rng(54);
  for (int trial = 0; trial < 20; ++trial) {
    FormSection w = d.truncate(rng.section(cf.chart, rng.uniform(0, 2), 4, 4));
    CHECK(homotopy_h(d, homotopy_h(d, w)).is_zero());
    CHECK(sigma_aug(homotopy_h(d, w)).is_zero());
    GradedPoly f = rng.function(cf.chart, 3);
    CHECK(homotopy_h(d, tau_series(d, f)).is_zero());
  }
}
