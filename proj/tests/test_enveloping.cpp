#include <doctest.h>

#include "formexp/enveloping.hpp"
#include "formexp/errors.hpp"
#include "formexp/random.hpp"
#include "support.hpp"

using namespace formexp;
using testing::Op;
using testing::P;
using testing::S;

namespace {

ChartPtr xt() { return testing::coords({{"x", 0}, {"theta", 1}}); }

MultiIndex mi(std::initializer_list<int> v) { return MultiIndex(v); }

DiffOp random_op(RandomSource& rng, const ChartPtr& c, int max_order) {
  return DiffOp(rng.sym_tensor(c, 0, max_order, 4).poly());
}

}  // namespace

TEST_CASE("applying differential operators") {
  auto c = xt();
  CHECK(apply(Op(c, "x*d[x]"), P(c, "x^2")) == P(c, "2*x^2"));
  CHECK(apply(Op(c, "d[x]^2"), P(c, "x^3")) == P(c, "6*x"));
  CHECK(apply(Op(c, "d[theta]*d[x]"), P(c, "x*theta")) == P(c, "1"));
}

TEST_CASE("composition normal-orders by the graded Leibniz rule") {
  auto c = xt();
  CHECK(Op(c, "d[x]*x") == Op(c, "x*d[x] + 1"));
  CHECK(Op(c, "d[theta]*theta") == Op(c, "1 - theta*d[theta]"));
  CHECK(Op(c, "d[x]^2*x") == Op(c, "x*d[x]^2 + 2*d[x]"));
  CHECK(Op(c, "d[theta]*d[theta]").is_zero());
  CHECK(Op(c, "d[theta]*d[x]") == Op(c, "d[x]*d[theta]"));
}

TEST_CASE("composition overflow is an error") {
  auto c = testing::coords({{"x", 0}}, 2);
  CHECK_THROWS_AS(Op(c, "d[x]^2*d[x]^2"), TruncationOverflow);
  CHECK_NOTHROW(Op(c, "d[x]^2*d[x]"));
}

TEST_CASE("composition is associative and compatible with application") {
  auto c = testing::coords({{"x", 0}, {"t", 1}, {"u", 2}}, 6);
  RandomSource rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    DiffOp a = random_op(rng, c, 2), b = random_op(rng, c, 2), e = random_op(rng, c, 2);
    CHECK(compose(compose(a, b), e) == compose(a, compose(b, e)));
    GradedPoly f = rng.function(c, 4);
    CHECK(apply(compose(a, b), f) == apply(a, apply(b, f)));
  }
}

TEST_CASE("filtration order and symbols") {
  auto c = xt();
  DiffOp a = Op(c, "x*d[x]^2 + d[x]");
  CHECK(filtration_order(a) == 2);
  CHECK(gr_leading(a) == S(c, "x*s[x]^2"));
  CHECK(filtration_order(Op(c, "x^2")) == 0);
  CHECK(gr_leading(Op(c, "x^2")) == S(c, "x^2"));
  CHECK(filtration_order(Op(c, "d[theta]*d[x]")) == 2);
  CHECK(gr_leading(Op(c, "d[theta]*d[x]")) == S(c, "s[x]*s[theta]"));
  CHECK_FALSE(filtration_order(DiffOp::zero(c)).has_value());
}

TEST_CASE("symmetrization examples") {
  auto c = xt();
  std::vector<VectorField> one{VectorField(c, {P(c, "x"), P(c, "theta")})};
  CHECK(sym_word(one) == one[0].as_diffop());
  std::vector<VectorField> two{VectorField::coordinate(c, 0), VectorField(c, {P(c, "x"), P(c, "0")})};
  CHECK(sym_word(two) == Op(c, "x*d[x]^2 + 1/2*d[x]"));
  CHECK(sym_map(S(c, "s[theta]^2")).is_zero());
  CHECK(sym_map(S(c, "x*s[x]^2")) == Op(c, "x*d[x]^2"));
}

TEST_CASE("symbol of the symmetrization is the identity") {
  auto c = testing::coords({{"x", 0}, {"t", 1}, {"u", 2}}, 5);
  RandomSource rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    int w = rng.uniform(0, 4);
    SymTensor s = rng.sym_tensor(c, w, w, 3);
    if (s.is_zero()) continue;
    CHECK(gr_leading(sym_map(s)) == s);
  }
}

TEST_CASE("shuffle coproduct on symmetric tensors") {
  auto c = testing::coords({{"x", 0}, {"t1", 1}, {"t2", 1}});
  TensorSquare unit(c, 2, TensorPower::Kind::Sym);
  unit.add({mi({0, 0, 0}), mi({0, 0, 0})}, P(c, "1"));
  CHECK(comult_sym(S(c, "1")) == unit);

  TensorSquare x(c, 2, TensorPower::Kind::Sym);
  x.add({mi({0, 0, 0}), mi({1, 0, 0})}, P(c, "1"));
  x.add({mi({1, 0, 0}), mi({0, 0, 0})}, P(c, "1"));
  CHECK(comult_sym(S(c, "s[x]")) == x);

  TensorSquare xy(c, 2, TensorPower::Kind::Sym);
  xy.add({mi({0, 0, 0}), mi({1, 1, 0})}, P(c, "1"));
  xy.add({mi({1, 1, 0}), mi({0, 0, 0})}, P(c, "1"));
  xy.add({mi({1, 0, 0}), mi({0, 1, 0})}, P(c, "1"));
  xy.add({mi({0, 1, 0}), mi({1, 0, 0})}, P(c, "1"));
  CHECK(comult_sym(S(c, "s[x]*s[t1]")) == xy);

  // two odd letters pick up a sign when exchanged
  TensorSquare tt(c, 2, TensorPower::Kind::Sym);
  tt.add({mi({0, 0, 0}), mi({0, 1, 1})}, P(c, "1"));
  tt.add({mi({0, 1, 1}), mi({0, 0, 0})}, P(c, "1"));
  tt.add({mi({0, 1, 0}), mi({0, 0, 1})}, P(c, "1"));
  tt.add({mi({0, 0, 1}), mi({0, 1, 0})}, P(c, "-1"));
  CHECK(comult_sym(S(c, "s[t1]*s[t2]")) == tt);
}

TEST_CASE("coproduct of differential operators") {
  auto c = testing::coords({{"x1", 0}, {"x2", 0}});
  TensorSquare f(c, 2, TensorPower::Kind::Diff);
  f.add({mi({0, 0}), mi({0, 0})}, P(c, "x1^2"));
  CHECK(comult_env(Op(c, "x1^2")) == f);
  TensorSquare xy(c, 2, TensorPower::Kind::Diff);
  xy.add({mi({0, 0}), mi({1, 1})}, P(c, "1"));
  xy.add({mi({1, 1}), mi({0, 0})}, P(c, "1"));
  xy.add({mi({1, 0}), mi({0, 1})}, P(c, "1"));
  xy.add({mi({0, 1}), mi({1, 0})}, P(c, "1"));
  CHECK(comult_env(Op(c, "d[x1]*d[x2]")) == xy);
}

TEST_CASE("coefficients are pushed into the first factor with their sign") {
  auto c = xt();
  TensorSquare t(c, 2, TensorPower::Kind::Sym);
  std::vector<GradedPoly> factors{P(c, "s[theta]"), P(c, "theta*s[theta]")};
  t.add_factors(factors);
  TensorSquare want(c, 2, TensorPower::Kind::Sym);
  want.add({mi({0, 1}), mi({0, 1})}, P(c, "-theta"));
  CHECK(t == want);
}

TEST_CASE("coassociativity and counit on both coalgebras") {
  auto c = testing::coords({{"x", 0}, {"t1", 1}, {"t2", 1}, {"u", 2}}, 5);
  RandomSource rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    SymTensor s = rng.sym_tensor(c, 0, 4, 3);
    TensorSquare ds = comult_sym(s);
    CHECK(comult_left(ds) == comult_right(ds));
    TensorPower left(c, 1, TensorPower::Kind::Sym), right(c, 1, TensorPower::Kind::Sym);
    for (const auto& [k, coeff] : s.split()) {
      left.add({k}, coeff);
      right.add({k}, coeff);
    }
    CHECK(counit_slot(ds, 0) == left);
    CHECK(counit_slot(ds, 1) == right);
    DiffOp d(s.poly());
    TensorSquare dd = comult_env(d);
    CHECK(comult_left(dd) == comult_right(dd));
  }
}

TEST_CASE("coproduct is multiplicative for left multiplication by vector fields") {
  auto c = testing::coords({{"x", 0}, {"t", 1}, {"u", 2}}, 5);
  RandomSource rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    int i = rng.uniform(0, 2);
    Monomial m = rng.base_monomial(*c, 2);
    std::vector<GradedPoly> comps(3, GradedPoly(c));
    comps[static_cast<std::size_t>(i)] = GradedPoly::term(c, m, rng.coefficient());
    VectorField x(c, comps);
    DiffOp u(rng.sym_tensor(c, 0, 3, 3).poly());
    CHECK(comult_env(compose(x.as_diffop(), u)) == coproduct_act(x, comult_env(u)));
  }
}

TEST_CASE("duality pairing examples") {
  auto one = testing::coords({{"x", 0}});
  CHECK(pairing(S(one, "s[x]^2"), P(one, "y^2")) == P(one, "2"));
  CHECK(pairing(S(one, "s[x]^2"), P(one, "y")).is_zero());
  auto c = xt();
  CHECK(pairing(S(c, "s[theta]"), P(c, "y_theta")) == P(c, "1"));
  CHECK(pairing(S(c, "x*s[x]"), P(c, "x*y")) == P(c, "x^2"));
}

TEST_CASE("pairing Gram matrix is diagonal with I! entries") {
  auto c = testing::coords({{"x1", 0}, {"t", 1}, {"x2", 0}, {"u", 2}}, 4);
  for (int w = 0; w <= 4; ++w) {
    auto idx = multi_indices_of_weight(*c, w);
    for (const auto& i : idx)
      for (const auto& j : idx) {
        GradedPoly yj = P(c, "1");
        for (int k = 0; k < c->dim(); ++k)
          yj = yj * GradedPoly::generator(c, c->generator(GenKind::Fiber, k), j[k]);
        GradedPoly got = pairing(reversed_word(c, i), yj);
        if (i == j)
          CHECK(got == GradedPoly::constant(c, i.factorial()));
        else
          CHECK(got.is_zero());
      }
  }
}
