#include <doctest.h>

#include "formexp/geometry.hpp"
#include "formexp/random.hpp"
#include "support.hpp"

using namespace formexp;
using testing::P;

namespace {

VectorField field(const ChartPtr& c, std::vector<std::string> comps) {
  std::vector<GradedPoly> v;
  for (const auto& s : comps) v.push_back(P(c, s));
  return VectorField(c, std::move(v));
}

VectorField d(const ChartPtr& c, int i) { return VectorField::coordinate(c, i); }

int deg(const VectorField& x) { return x.degree().homogeneous() ? x.degree().value : 0; }
int sgn(int p) { return p % 2 ? -1 : 1; }

// Homogeneous field with a nonzero component when possible.
VectorField random_field(RandomSource& rng, const ChartPtr& c) {
  int i = rng.uniform(0, c->dim() - 1);
  Monomial m = rng.base_monomial(*c, 2);
  int degree = monomial_degree(*c, m) - c->coordinate_degree(i);
  return VectorField(c, [&] {
           std::vector<GradedPoly> v(static_cast<std::size_t>(c->dim()), GradedPoly(c));
           v[static_cast<std::size_t>(i)] = GradedPoly::term(c, m, rng.coefficient());
           return v;
         }()) +
         rng.homogeneous_field(c, degree, 2);
}

}  // namespace

TEST_CASE("vector fields act as derivations") {
  auto c = testing::coords({{"x", 0}, {"theta", 1}, {"phi", 1}});
  CHECK(vf_apply(field(c, {"x", "0", "0"}), P(c, "x^2")) == P(c, "2*x^2"));
  CHECK(vf_apply(d(c, 1), P(c, "x*theta")) == P(c, "x"));
  CHECK(vf_apply(d(c, 1), P(c, "theta*phi")) == P(c, "phi"));
  CHECK(vf_apply(d(c, 2), P(c, "theta*phi")) == P(c, "-theta"));
}

TEST_CASE("lie brackets") {
  auto c = testing::coords({{"x", 0}, {"theta", 1}});
  CHECK(lie_bracket(d(c, 0), field(c, {"x", "0"})) == d(c, 0));
  CHECK(lie_bracket(field(c, {"x", "0"}), field(c, {"x^2", "0"})) == field(c, {"x^2", "0"}));
  CHECK(lie_bracket(d(c, 1), d(c, 1)).is_zero());
  // [theta d_theta, theta d_theta] = 0 but [d_theta, theta d_theta] = d_theta
  CHECK(lie_bracket(d(c, 1), field(c, {"0", "theta"})) == d(c, 1));
}

TEST_CASE("lie bracket antisymmetry and Jacobi on random fields") {
  auto c = testing::coords({{"x", 0}, {"t", 1}, {"u", 2}});
  RandomSource rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    VectorField x = random_field(rng, c), y = random_field(rng, c), z = random_field(rng, c);
    int a = deg(x), b = deg(y), e = deg(z);
    CHECK(lie_bracket(x, y) == Rational(-sgn(a * b)) * lie_bracket(y, x));
    VectorField jac = Rational(sgn(a * e)) * lie_bracket(x, lie_bracket(y, z)) +
                      Rational(sgn(b * a)) * lie_bracket(y, lie_bracket(z, x)) +
                      Rational(sgn(e * b)) * lie_bracket(z, lie_bracket(x, y));
    CHECK(jac.is_zero());
    GradedPoly f = rng.function(c, 3);
    // [X, Y] acts as the graded commutator
    CHECK(vf_apply(lie_bracket(x, y), f) ==
          vf_apply(x, vf_apply(y, f)) - Rational(sgn(a * b)) * vf_apply(y, vf_apply(x, f)));
  }
}

TEST_CASE("covariant derivative examples") {
  auto flat = testing::coords({{"x", 0}});
  Connection zero = Connection::flat(flat);
  CHECK(cov_deriv(zero, d(flat, 0), field(flat, {"x^3"})) == field(flat, {"3*x^2"}));
  auto e1 = testing::chart("e1");
  CHECK(cov_deriv(e1.connection, d(e1.chart, 0), d(e1.chart, 0)) == field(e1.chart, {"x"}));
  CHECK(cov_deriv(e1.connection, field(e1.chart, {"x"}), d(e1.chart, 0)) == field(e1.chart, {"x^2"}));
}

TEST_CASE("torsion examples") {
  auto tf = testing::chart("torsionful");
  CHECK(torsion(tf.connection, d(tf.chart, 0), d(tf.chart, 1)) == d(tf.chart, 0));
  auto c = testing::coords({{"x", 0}, {"theta", 1}});
  CHECK(torsion(Connection::flat(c), d(c, 1), d(c, 1)).is_zero());
  for (const char* name : testing::kTorsionFreeCharts) {
    auto f = testing::chart(name);
    for (int i = 0; i < f.chart->dim(); ++i)
      for (int j = 0; j < f.chart->dim(); ++j) CHECK(torsion(f.connection, d(f.chart, i), d(f.chart, j)).is_zero());
  }
}

TEST_CASE("curvature examples") {
  auto c2 = testing::chart("curved2");
  CHECK(curvature(c2.connection, d(c2.chart, 0), d(c2.chart, 1), d(c2.chart, 0)) == d(c2.chart, 1));
  auto e1 = testing::chart("e1");
  CHECK(curvature(e1.connection, d(e1.chart, 0), d(e1.chart, 0), d(e1.chart, 0)).is_zero());
  auto f = testing::chart("flat1");
  CHECK(curvature(f.connection, field(f.chart, {"x"}), d(f.chart, 0), field(f.chart, {"x^2"})).is_zero());
}

TEST_CASE("torsion and curvature are tensorial and graded antisymmetric") {
  for (const char* name : {"mixed", "odd2", "deg2", "torsionful"}) {
    auto cf = testing::chart(name);
    auto c = cf.chart;
    RandomSource rng(22);
    for (int trial = 0; trial < 25; ++trial) {
      VectorField x = random_field(rng, c), y = random_field(rng, c), z = random_field(rng, c);
      GradedPoly f = rng.homogeneous_function(c, rng.uniform(0, 2), 2);
      if (f.is_zero()) f = P(c, c->coordinate(0).name + " + 1");
      int a = deg(x), b = deg(y), e = f.degree().value;
      CHECK(torsion(cf.connection, f * x, y) == f * torsion(cf.connection, x, y));
      CHECK(torsion(cf.connection, x, f * y) == Rational(sgn(e * a)) * (f * torsion(cf.connection, x, y)));
      CHECK(torsion(cf.connection, x, y) == Rational(-sgn(a * b)) * torsion(cf.connection, y, x));
      CHECK(curvature(cf.connection, f * x, y, z) == f * curvature(cf.connection, x, y, z));
      VectorField nab = cov_deriv(cf.connection, x, y);
      if (!nab.is_zero()) CHECK(nab.degree().value == a + b);
      // Leibniz in the second slot
      CHECK(cov_deriv(cf.connection, x, f * y) ==
            vf_apply(x, f) * y + Rational(sgn(a * e)) * (f * cov_deriv(cf.connection, x, y)));
    }
  }
}

TEST_CASE("torsion-free flag and symmetric symbols characterize each other") {
  auto c = testing::coords({{"x", 0}, {"theta", 1}});
  auto table = Connection::empty_table(c);
  table[Connection::slot(2, 0, 1, 1)] = P(c, "x");
  CHECK_THROWS_AS(Connection(c, table, true), std::invalid_argument);
  Connection loose(c, table, false);
  CHECK_FALSE(loose.symbols_symmetric());
  CHECK_FALSE(torsion(loose, d(c, 0), d(c, 1)).is_zero());
  table[Connection::slot(2, 1, 0, 1)] = P(c, "x");
  Connection sym(c, table, true);
  CHECK(sym.symbols_symmetric());
  CHECK(torsion(sym, d(c, 0), d(c, 1)).is_zero());
  // odd-odd symbols are graded antisymmetric under swap
  auto c3 = testing::coords({{"x", 0}, {"t1", 1}, {"t2", 1}, {"u", 2}});
  auto t3 = Connection::empty_table(c3);
  t3[Connection::slot(4, 1, 2, 3)] = P(c3, "1");
  t3[Connection::slot(4, 2, 1, 3)] = P(c3, "-1");
  Connection odd(c3, t3, true);
  CHECK(torsion(odd, d(c3, 1), d(c3, 2)).is_zero());
}

TEST_CASE("christoffel symbols must have the right degree") {
  auto c = testing::coords({{"x", 0}, {"theta", 1}});
  auto table = Connection::empty_table(c);
  table[Connection::slot(2, 0, 0, 1)] = P(c, "x");
  CHECK_THROWS_AS(Connection(c, table, false), std::invalid_argument);
}

TEST_CASE("covariant derivative on symmetric tensors") {
  auto f = testing::chart("flat1");
  auto e1 = testing::chart("e1");
  CHECK(nabla_sym(f.connection, d(f.chart, 0), testing::S(f.chart, "x^3")) == testing::S(f.chart, "3*x^2"));
  CHECK(nabla_sym(e1.connection, d(e1.chart, 0), testing::S(e1.chart, "s[x]^2")) ==
        testing::S(e1.chart, "2*x*s[x]^2"));
  CHECK(nabla_sym(f.connection, d(f.chart, 0), testing::S(f.chart, "x*s[x]^2")) == testing::S(f.chart, "s[x]^2"));
  auto m = testing::chart("deg2");
  RandomSource rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    VectorField x = random_field(rng, m.chart), y = random_field(rng, m.chart);
    CHECK(nabla_sym(m.connection, x, y.as_sym()) == cov_deriv(m.connection, x, y).as_sym());
  }
}
