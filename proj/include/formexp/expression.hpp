#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "formexp/errors.hpp"
#include "formexp/poly.hpp"

namespace formexp {

// Grammar (whitespace insignificant):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' integer]
//   atom   := integer ['/' integer] | name | name '[' name ']' | '(' expr ')'
struct Expr {
  enum class Kind { Number, Atom, Sum, Product, Power, Negate } kind = Kind::Number;
  Rational number;
  std::string atom;
  std::size_t position = 0;
  int exponent = 1;
  std::vector<Expr> children;
};

Expr parse_expression(std::string_view text);

// Folds an expression into any algebra that provides
// number(Rational), atom(name, position), mul(T, T), add(T, T), neg(T).
template <class T, class Ops>
T evaluate(const Expr& e, Ops& ops) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return ops.number(e.number);
    case Expr::Kind::Atom:
      return ops.atom(e.atom, e.position);
    case Expr::Kind::Negate:
      return ops.neg(evaluate<T>(e.children.front(), ops));
    case Expr::Kind::Sum: {
      T acc = evaluate<T>(e.children.front(), ops);
      for (std::size_t k = 1; k < e.children.size(); ++k) acc = ops.add(acc, evaluate<T>(e.children[k], ops));
      return acc;
    }
    case Expr::Kind::Product: {
      T acc = evaluate<T>(e.children.front(), ops);
      for (std::size_t k = 1; k < e.children.size(); ++k) acc = ops.mul(acc, evaluate<T>(e.children[k], ops));
      return acc;
    }
    case Expr::Kind::Power: {
      T base = evaluate<T>(e.children.front(), ops);
      T acc = ops.number(Rational(1));
      for (int k = 0; k < e.exponent; ++k) acc = ops.mul(acc, base);
      return acc;
    }
  }
  throw ParseError("unreachable expression node", e.position);
}

inline constexpr std::uint32_t kind_bit(GenKind k) { return 1u << static_cast<int>(k); }
inline constexpr std::uint32_t kAllKinds = 0xF;

// Parses a polynomial whose generators belong to the allowed blocks.
GradedPoly parse_poly(const ChartPtr& chart, std::string_view text, std::uint32_t allowed_kinds = kAllKinds);

// Polynomial printing: terms grouped by their non-base part, groups in
// ascending weight; a group with several base terms is parenthesized.
std::string format_poly(const GradedPoly& f);

// Operator printing for polynomials in base and sym generators: groups keyed
// by the sym part in descending weight; sym generators print as s[x], or as
// d[x] when `as_derivations` is set.
std::string format_operator(const GradedPoly& f, bool as_derivations);

std::string format_monomial(const Chart& chart, const Monomial& m, bool as_derivations = false);

}  // namespace formexp
