#include "formexp/expression.hpp"

#include <algorithm>
#include <cctype>

namespace formexp {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  Expr expr() {
    skip();
    Expr sum;
    sum.kind = Expr::Kind::Sum;
    sum.position = pos_;
    bool negate = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      negate = true;
    }
    push_term(sum, negate);
    while (true) {
      if (peek('+')) {
        ++pos_;
        push_term(sum, false);
      } else if (peek('-')) {
        ++pos_;
        push_term(sum, true);
      } else {
        break;
      }
    }
    if (sum.children.size() == 1) return std::move(sum.children.front());
    return sum;
  }

  void push_term(Expr& sum, bool negate) {
    Expr t = term();
    if (negate) {
      Expr n;
      n.kind = Expr::Kind::Negate;
      n.position = t.position;
      n.children.push_back(std::move(t));
      sum.children.push_back(std::move(n));
    } else {
      sum.children.push_back(std::move(t));
    }
  }

  Expr term() {
    Expr prod;
    prod.kind = Expr::Kind::Product;
    skip();
    prod.position = pos_;
    prod.children.push_back(factor());
    while (peek('*')) {
      ++pos_;
      prod.children.push_back(factor());
    }
    if (prod.children.size() == 1) return std::move(prod.children.front());
    return prod;
  }

  Expr factor() {
    Expr a = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t at = pos_;
      mpz_class e = integer();
      if (!e.fits_sint_p() || e > 255) {
        pos_ = at;
        fail("exponent too large");
      }
      Expr p;
      p.kind = Expr::Kind::Power;
      p.position = a.position;
      p.exponent = static_cast<int>(e.get_si());
      p.children.push_back(std::move(a));
      return p;
    }
    return a;
  }

  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Expr atom() {
    skip();
    Expr a;
    a.position = pos_;
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      mpz_class den = 1;
      if (peek('/')) {
        ++pos_;
        std::size_t at = pos_;
        den = integer();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
      }
      a.kind = Expr::Kind::Number;
      a.number = Rational(num, den);
      a.number.canonicalize();
      return a;
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '[') {
        ++pos_;
        skip();
        std::size_t inner = pos_;
        if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected a coordinate name");
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        std::string name(s_.substr(inner, pos_ - inner));
        if (!peek(']')) fail("expected ']'");
        ++pos_;
        a.atom = std::string(s_.substr(start, inner - start - 1)) + "[" + name + "]";
      } else {
        a.atom = std::string(s_.substr(start, pos_ - start));
      }
      a.kind = Expr::Kind::Atom;
      return a;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct PolyOps {
  ChartPtr chart;
  std::uint32_t allowed;
  GradedPoly number(const Rational& r) { return GradedPoly::constant(chart, r); }
  GradedPoly atom(const std::string& name, std::size_t pos) {
    auto g = chart->find(name);
    if (!g) throw ParseError("unknown generator '" + name + "'", pos);
    if (!(allowed & kind_bit(chart->kind_of(*g)))) throw ParseError("generator '" + name + "' not allowed here", pos);
    return GradedPoly::generator(chart, *g);
  }
  GradedPoly mul(const GradedPoly& a, const GradedPoly& b) { return a * b; }
  GradedPoly add(const GradedPoly& a, const GradedPoly& b) { return a + b; }
  GradedPoly neg(const GradedPoly& a) { return -a; }
};

std::string power_text(const std::string& name, int e) {
  return e == 1 ? name : name + "^" + std::to_string(e);
}

std::string generator_text(const Chart& chart, int g, bool as_derivations) {
  if (as_derivations && chart.kind_of(g) == GenKind::Sym) return "d[" + chart.coordinate(chart.coord_of(g)).name + "]";
  return chart.name(g);
}

Monomial split_part(const Chart& chart, const Monomial& m, std::uint32_t mask) {
  Monomial r;
  for (int g = 0; g < chart.generator_count(); ++g)
    if ((mask >> g) & 1u) r.at(g) = m.exp[static_cast<std::size_t>(g)];
  return r;
}

int exponent_sum(const Monomial& m) {
  int s = 0;
  for (auto e : m.exp) s += e;
  return s;
}

// Base polynomial terms in ascending degree, larger leading exponents first.
std::vector<std::pair<Monomial, Rational>> ordered_terms(const std::vector<std::pair<Monomial, Rational>>& terms) {
  auto out = terms;
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int da = exponent_sum(a.first), db = exponent_sum(b.first);
    if (da != db) return da < db;
    return a.first > b.first;
  });
  return out;
}

std::string abs_text(const Rational& c) { return to_string(abs(c)); }

void append_signed(std::string& out, bool negative, const std::string& body) {
  if (out.empty()) {
    out = negative ? "-" + body : body;
  } else {
    out += negative ? " - " : " + ";
    out += body;
  }
}

// A base polynomial printed inline; unit coefficients are omitted.
std::string inline_poly(const Chart& chart, const std::vector<std::pair<Monomial, Rational>>& terms) {
  std::string out;
  for (const auto& [m, c] : ordered_terms(terms)) {
    std::string body;
    if (is_unit(m)) {
      body = abs_text(c);
    } else if (abs(c) == 1) {
      body = format_monomial(chart, m);
    } else {
      body = abs_text(c) + "*" + format_monomial(chart, m);
    }
    append_signed(out, c < 0, body);
  }
  return out.empty() ? "0" : out;
}

using Groups = std::vector<std::pair<Monomial, std::vector<std::pair<Monomial, Rational>>>>;

Groups group_by(const GradedPoly& f, std::uint32_t key_mask) {
  const Chart& chart = *f.chart();
  std::map<Monomial, std::vector<std::pair<Monomial, Rational>>> g;
  for (const auto& [m, c] : f.terms()) {
    Monomial key = split_part(chart, m, key_mask);
    Monomial rest = split_part(chart, m, ~key_mask);
    g[key].emplace_back(rest, c);
  }
  return Groups(g.begin(), g.end());
}

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

GradedPoly parse_poly(const ChartPtr& chart, std::string_view text, std::uint32_t allowed_kinds) {
  Expr e = parse_expression(text);
  PolyOps ops{chart, allowed_kinds};
  return evaluate<GradedPoly>(e, ops);
}

std::string format_monomial(const Chart& chart, const Monomial& m, bool as_derivations) {
  std::string out;
  for (int g = 0; g < chart.generator_count(); ++g) {
    int e = m[g];
    if (!e) continue;
    if (!out.empty()) out += "*";
    out += power_text(generator_text(chart, g, as_derivations), e);
  }
  return out.empty() ? "1" : out;
}

std::string format_poly(const GradedPoly& f) {
  if (f.is_zero()) return "0";
  const Chart& chart = *f.chart();
  std::uint32_t base = chart.block_mask(GenKind::Base);
  Groups groups = group_by(f, ~base);
  std::stable_sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
    int qa = block_weight(chart, a.first, GenKind::Fiber), qb = block_weight(chart, b.first, GenKind::Fiber);
    if (qa != qb) return qa < qb;
    int wa = exponent_sum(a.first), wb = exponent_sum(b.first);
    if (wa != wb) return wa < wb;
    return a.first > b.first;
  });
  std::string out;
  for (const auto& [key, terms] : groups) {
    if (is_unit(key)) {
      std::string body = inline_poly(chart, terms);
      out = out.empty() ? body : out + " + " + body;
      continue;
    }
    std::string k = format_monomial(chart, key);
    if (terms.size() == 1) {
      const auto& [m, c] = terms.front();
      std::string body;
      if (abs(c) != 1) body = abs_text(c) + "*";
      if (!is_unit(m)) body += format_monomial(chart, m) + "*";
      append_signed(out, c < 0, body + k);
    } else {
      append_signed(out, false, "(" + inline_poly(chart, terms) + ")*" + k);
    }
  }
  return out;
}

std::string format_operator(const GradedPoly& f, bool as_derivations) {
  if (f.is_zero()) return "0";
  const Chart& chart = *f.chart();
  std::uint32_t sym = chart.block_mask(GenKind::Sym);
  Groups groups = group_by(f, sym);
  std::stable_sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
    int wa = exponent_sum(a.first), wb = exponent_sum(b.first);
    if (wa != wb) return wa > wb;
    return a.first > b.first;
  });
  std::string out;
  for (const auto& [key, terms] : groups) {
    if (is_unit(key)) {
      std::string body = inline_poly(chart, terms);
      if (out.empty()) {
        out = body;
      } else if (body[0] == '-') {
        out += " - " + body.substr(1);
      } else {
        out += " + " + body;
      }
      continue;
    }
    std::string k = format_monomial(chart, key, as_derivations);
    if (terms.size() == 1) {
      const auto& [m, c] = terms.front();
      std::string body;
      if (is_unit(m)) {
        body = abs(c) == 1 ? k : abs_text(c) + "*" + k;
      } else {
        body = abs_text(c) + "*" + format_monomial(chart, m) + "*" + k;
      }
      append_signed(out, c < 0, body);
    } else {
      append_signed(out, false, "(" + inline_poly(chart, terms) + ")*" + k);
    }
  }
  return out;
}

}  // namespace formexp
