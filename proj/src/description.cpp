#include "valdiv/description.hpp"

#include <algorithm>
#include <cctype>

#include "valdiv/errors.hpp"

namespace valdiv {

// ------------------------------------------------------------------ Expr

Expr::Ptr Expr::num(const Integer& n) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Number;
  e->number = n;
  return e;
}

Expr::Ptr Expr::var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Variable;
  e->name = std::move(name);
  return e;
}

Expr::Ptr Expr::neg(Ptr x) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Neg;
  e->operands = {std::move(x)};
  return e;
}

Expr::Ptr Expr::binary(Kind kind, Ptr l, Ptr r) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->operands = {std::move(l), std::move(r)};
  return e;
}

Expr::Ptr Expr::pow(Ptr base, std::int64_t exponent) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Pow;
  e->exponent = exponent;
  e->operands = {std::move(base)};
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.number != b.number || a.name != b.name || a.exponent != b.exponent ||
      a.operands.size() != b.operands.size())
    return false;
  for (std::size_t k = 0; k < a.operands.size(); ++k)
    if (!(*a.operands[k] == *b.operands[k])) return false;
  return true;
}

namespace {

bool is_sum(const Expr& e) { return e.kind == Expr::Kind::Add || e.kind == Expr::Kind::Sub; }
bool is_product(const Expr& e) { return e.kind == Expr::Kind::Mul || e.kind == Expr::Kind::Div; }
bool is_atom(const Expr& e) { return e.kind == Expr::Kind::Number || e.kind == Expr::Kind::Variable; }

std::string wrap(const Expr& e, bool parens) { return parens ? "(" + e.to_string() + ")" : e.to_string(); }

}  // namespace

std::string Expr::to_string() const {
  switch (kind) {
    case Kind::Number:
      return number.get_str();
    case Kind::Variable:
      return name;
    case Kind::Neg:
      return "-" + wrap(*operands[0], is_sum(*operands[0]) || is_product(*operands[0]));
    case Kind::Add:
      return operands[0]->to_string() + " + " + wrap(*operands[1], is_sum(*operands[1]));
    case Kind::Sub:
      return operands[0]->to_string() + " - " + wrap(*operands[1], is_sum(*operands[1]));
    case Kind::Mul:
    case Kind::Div: {
      const auto& r = *operands[1];
      return wrap(*operands[0], is_sum(*operands[0])) + (kind == Kind::Mul ? "*" : "/") +
             wrap(r, is_sum(r) || is_product(r));
    }
    case Kind::Pow:
      return wrap(*operands[0], !is_atom(*operands[0])) + "^" + std::to_string(exponent);
  }
  return {};
}

// ------------------------------------------------------------------ lexer

namespace {

struct Token {
  enum class Kind { Ident, Int, Symbol, End };
  Kind kind;
  std::string text;
  std::size_t line, column;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    std::size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Kind::Ident, s.substr(i, j - i), line, col});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::Int, s.substr(i, j - i), line, col});
    } else if (std::string("()[]/,=+-*^").find(c) != std::string::npos) {
      j = i + 1;
      out.push_back({Token::Kind::Symbol, std::string(1, c), line, col});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    advance(j - i);
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool at_symbol(const std::string& s) const { return peek().kind == Token::Kind::Symbol && peek().text == s; }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  [[noreturn]] void fail(const std::string& what, const Token& at) const {
    throw ParseError(what + (at.kind == Token::Kind::End ? " at end of input" : " near '" + at.text + "'"), at.line,
                     at.column);
  }

  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  void expect(const std::string& sym) {
    if (!at_symbol(sym)) fail("expected '" + sym + "'", peek());
    next();
  }

  std::string ident() {
    if (peek().kind != Token::Kind::Ident) fail("expected a name", peek());
    return next().text;
  }

  std::int64_t integer() {
    if (peek().kind != Token::Kind::Int) fail("expected an integer", peek());
    const Token& t = next();
    if (t.text.size() > 18) fail("integer too large", t);
    return std::stoll(t.text);
  }

  void expect_key(const std::string& key) {
    const Token& t = peek();
    if (ident() != key) fail("expected '" + key + "'", t);
    expect("=");
  }

  void finish() {
    if (!at_end()) fail("unexpected trailing input", peek());
  }

  // expr := term (('+' | '-') term)*
  Expr::Ptr expr() {
    Expr::Ptr e = term();
    while (at_symbol("+") || at_symbol("-")) {
      const auto kind = next().text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
      e = Expr::binary(kind, e, term());
    }
    return e;
  }

  // term := unary (('*' | '/') unary)*
  Expr::Ptr term() {
    Expr::Ptr e = unary();
    while (at_symbol("*") || at_symbol("/")) {
      const auto kind = next().text == "*" ? Expr::Kind::Mul : Expr::Kind::Div;
      e = Expr::binary(kind, e, unary());
    }
    return e;
  }

  Expr::Ptr unary() {
    if (at_symbol("-")) {
      next();
      return Expr::neg(unary());
    }
    return power();
  }

  Expr::Ptr power() {
    Expr::Ptr base = atom();
    if (!at_symbol("^")) return base;
    next();
    bool negative = false;
    if (at_symbol("-")) {
      next();
      negative = true;
    }
    const std::int64_t e = integer();
    return Expr::pow(base, negative ? -e : e);
  }

  Expr::Ptr atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Int) return Expr::num(Integer(next().text));
    if (t.kind == Token::Kind::Ident) return Expr::var(next().text);
    if (at_symbol("(")) {
      next();
      Expr::Ptr e = expr();
      expect(")");
      return e;
    }
    fail("expected a number, a name or '('", t);
  }

  BaseField base() {
    const Token start = peek();
    const std::string name = ident();
    BaseField b;
    if (name == "Q" || (name.size() > 1 && name[0] == 'F' &&
                        name.find_first_not_of("0123456789", 1) == std::string::npos)) {
      b.kind = BaseField::Kind::Exact;
      try {
        b.field = name == "Q" ? &Field::rational() : &Field::prime(std::stoll(name.substr(1)));
      } catch (const DomainError& e) {
        fail(e.what(), start);
      }
      while (at_symbol("[")) b.field = &extension(*b.field);
    } else if (name == "Qp") {
      b.kind = BaseField::Kind::PAdic;
      expect("(");
      expect_key("p");
      b.p = prime();
      expect(")");
    } else if (name == "closed") {
      b.kind = BaseField::Kind::Closed;
      expect("(");
      expect_key("char");
      b.p = characteristic();
      expect(")");
    } else if (name == "completion") {
      b.kind = BaseField::Kind::Completion;
      expect("(");
      expect_key("p");
      b.p = prime();
      if (at_symbol(",")) {
        next();
        expect_key("cd");
        b.asserted_cd = integer();
      }
      expect(")");
    } else if (name == "decl") {
      b.kind = BaseField::Kind::Declared;
      expect("(");
      for (bool first = true; !at_symbol(")"); first = false) {
        if (!first) expect(",");
        declared_entry(b);
      }
      expect(")");
    } else {
      fail("unknown base '" + name + "'", start);
    }
    return b;
  }

  FieldProfile profile() {
    FieldProfile p;
    p.base = base();
    while (at_symbol("(")) {
      next();
      expect("(");
      const Token t = peek();
      std::string v = ident();
      for (const auto& w : p.variables)
        if (w == v) fail("variable '" + v + "' used twice", t);
      if (p.base.field)
        for (const auto& g : p.base.field->generator_names())
          if (g == v) fail("variable '" + v + "' is a field generator", t);
      p.variables.push_back(std::move(v));
      expect(")");
      expect(")");
    }
    return p;
  }

  AlgebraDescription algebra() {
    AlgebraDescription d;
    const Token start = peek();
    if (ident() != "symbol") fail("expected 'symbol'", start);
    expect("(");
    expect_key("n");
    const Token nt = peek();
    const std::int64_t n = integer();
    if (n < 1 || n > 64) fail("degree out of range", nt);
    d.n = static_cast<int>(n);
    expect(",");
    if (peek().kind == Token::Kind::Ident && peek().text == "omega") {
      expect_key("omega");
      if (peek().kind == Token::Kind::Ident && peek().text == "auto" &&
          peek(1).kind == Token::Kind::Symbol && peek(1).text == ",") {
        next();
      } else {
        d.omega = expr();
      }
      expect(",");
    }
    expect_key("a");
    d.a = expr();
    expect(",");
    expect_key("b");
    d.b = expr();
    expect(")");
    const Token ot = peek();
    if (ident() != "over") fail("expected 'over'", ot);
    d.over = profile();
    return d;
  }

  bool at_algebra() const { return peek().kind == Token::Kind::Ident && peek().text == "symbol"; }

 private:
  std::int64_t prime() {
    const Token t = peek();
    const std::int64_t p = integer();
    if (!is_prime(p)) fail(std::to_string(p) + " is not prime", t);
    return p;
  }

  std::int64_t characteristic() {
    const Token t = peek();
    const std::int64_t p = integer();
    if (p != 0 && !is_prime(p)) fail("characteristic must be 0 or prime", t);
    return p;
  }

  void declared_entry(BaseField& b) {
    const Token t = peek();
    const std::string key = ident();
    expect("=");
    if (key == "char") {
      b.p = characteristic();
      return;
    }
    std::int64_t q = -1;
    if (key == "cdq" || key == "cd_q") {
      q = 0;
    } else if (key.size() > 2 && key.compare(0, 2, "cd") == 0 &&
               key.find_first_not_of("0123456789", 2) == std::string::npos) {
      q = std::stoll(key.substr(2));
      if (!is_prime(q)) fail(std::to_string(q) + " is not prime", t);
    } else {
      fail("unknown key '" + key + "'", t);
    }
    if (b.declared_cd.count(q)) fail("duplicate key '" + key + "'", t);
    if (peek().kind == Token::Kind::Ident && peek().text == "inf") {
      next();
      b.declared_cd[q] = -1;
    } else {
      b.declared_cd[q] = integer();
    }
  }

  const Field& extension(const Field& base) {
    const Token start = peek();
    expect("[");
    const std::string v = ident();
    expect("]");
    expect("/");
    expect("(");
    const Expr::Ptr m = expr();
    expect(")");
    try {
      const TowerElement poly = evaluate(*m, Tower::make(base, {v}));
      if (!poly.is_exact() || poly.start() < 0) fail("modulus must be a polynomial", start);
      std::vector<FieldElement> coeffs(static_cast<std::size_t>(poly.start()), base.zero());
      for (const auto& c : poly.coefficients()) coeffs.push_back(c.scalar());
      return Field::extension(base, coeffs, v);
    } catch (const DomainError& e) {
      fail(e.what(), start);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr::Ptr parse_expression(const std::string& text) {
  Parser p(text);
  auto e = p.expr();
  p.finish();
  return e;
}

TowerElement evaluate(const Expr& e, const Tower& tower) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return tower.constant(tower.base().from_integer(e.number));
    case Expr::Kind::Variable: {
      if (const std::size_t level = tower.level_of(e.name)) return tower.variable(level);
      for (const Field* f = &tower.base(); f->kind() == Field::Kind::Extension; f = &f->base())
        if (f->variable() == e.name) return tower.constant(tower.base().embed(f->generator()));
      throw DomainError("unknown variable '" + e.name + "' in " + tower.to_string());
    }
    case Expr::Kind::Neg:
      return -evaluate(*e.operands[0], tower);
    case Expr::Kind::Add:
      return evaluate(*e.operands[0], tower) + evaluate(*e.operands[1], tower);
    case Expr::Kind::Sub:
      return evaluate(*e.operands[0], tower) - evaluate(*e.operands[1], tower);
    case Expr::Kind::Mul:
      return evaluate(*e.operands[0], tower) * evaluate(*e.operands[1], tower);
    case Expr::Kind::Div: {
      const TowerElement d = evaluate(*e.operands[1], tower);
      if (d.is_exact_zero()) throw DivisionByZero("division by zero in expression");
      return evaluate(*e.operands[0], tower) * d.inv();
    }
    case Expr::Kind::Pow: {
      const TowerElement b = evaluate(*e.operands[0], tower);
      if (e.exponent < 0 && b.is_exact_zero()) throw DivisionByZero("negative power of zero");
      return b.pow(e.exponent);
    }
  }
  throw DomainError("malformed expression");
}

// ------------------------------------------------------------------ algebras

std::string AlgebraDescription::to_string() const {
  std::string s = "symbol(n=" + std::to_string(n);
  if (omega) s += ", omega=" + omega->to_string();
  return s + ", a=" + a->to_string() + ", b=" + b->to_string() + ") over " + over.to_string();
}

bool operator==(const AlgebraDescription& x, const AlgebraDescription& y) {
  const bool omega_eq = (!x.omega && !y.omega) || (x.omega && y.omega && *x.omega == *y.omega);
  return x.n == y.n && omega_eq && *x.a == *y.a && *x.b == *y.b && x.over == y.over;
}

Description parse_description(const std::string& text) {
  Parser p(text);
  Description d;
  if (p.at_algebra()) {
    d = p.algebra();
  } else {
    d = p.profile();
  }
  p.finish();
  return d;
}

FieldProfile parse_profile(const std::string& text) {
  Parser p(text);
  auto r = p.profile();
  p.finish();
  return r;
}

AlgebraDescription parse_algebra(const std::string& text) {
  Parser p(text);
  auto r = p.algebra();
  p.finish();
  return r;
}

std::string to_string(const Description& d) {
  return std::visit([](const auto& x) { return x.to_string(); }, d);
}

const Tower& instantiate(const FieldProfile& profile, std::int64_t precision) {
  if (profile.base.kind != BaseField::Kind::Exact)
    throw DomainError("arithmetic needs an exact base field, not " + profile.to_string());
  return Tower::make(*profile.base.field, profile.variables, precision);
}

SymbolAlgebra::Ptr instantiate(const AlgebraDescription& desc, std::int64_t precision) {
  const Tower& T = instantiate(desc.over, precision);
  const TowerElement a = evaluate(*desc.a, T), b = evaluate(*desc.b, T);
  if (!desc.omega) return SymbolAlgebra::create(T, desc.n, a, b);
  const TowerElement w = evaluate(*desc.omega, Tower::make(T.base(), {}, precision));
  return SymbolAlgebra::create(T, desc.n, w.scalar(), a, b);
}

// ------------------------------------------------------------------ random

namespace {

Expr::Ptr random_expr(std::mt19937_64& rng, const std::vector<std::string>& names, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  switch (pick(rng)) {
    case 0:
      return Expr::num(Integer(static_cast<long>(rng() % 20)));
    case 1:
      if (names.empty()) return Expr::num(Integer(static_cast<long>(rng() % 20)));
      return Expr::var(names[rng() % names.size()]);
    case 2:
      return Expr::neg(random_expr(rng, names, depth - 1));
    case 3:
      return Expr::pow(random_expr(rng, names, depth - 1), static_cast<std::int64_t>(rng() % 7) - 3);
    default: {
      static const Expr::Kind kinds[] = {Expr::Kind::Add, Expr::Kind::Sub, Expr::Kind::Mul, Expr::Kind::Div};
      return Expr::binary(kinds[rng() % 4], random_expr(rng, names, depth - 1), random_expr(rng, names, depth - 1));
    }
  }
}

FieldProfile random_profile(std::mt19937_64& rng) {
  static const std::int64_t primes[] = {2, 3, 5, 7, 11, 13};
  auto prime = [&] { return primes[rng() % 6]; };
  FieldProfile p;
  switch (rng() % 7) {
    case 0:
      p.base.field = &Field::prime(prime());
      break;
    case 1:
      p.base.field = &Field::rational();
      break;
    case 2: {
      const Field& f5 = Field::prime(5);
      p.base.field = &Field::extension(f5, {f5.from_int(2), f5.zero(), f5.one()}, "w");
      break;
    }
    case 3:
      p.base.kind = BaseField::Kind::PAdic;
      p.base.p = prime();
      break;
    case 4:
      p.base.kind = BaseField::Kind::Closed;
      p.base.p = rng() % 2 ? 0 : prime();
      break;
    case 5:
      p.base.kind = BaseField::Kind::Completion;
      p.base.p = prime();
      if (rng() % 2) p.base.asserted_cd = static_cast<std::int64_t>(rng() % 5);
      break;
    default:
      p.base.kind = BaseField::Kind::Declared;
      for (int k = 0; k < 3; ++k)
        if (rng() % 2) p.base.declared_cd[k == 2 ? 0 : prime()] = static_cast<std::int64_t>(rng() % 5) - 1;
      if (rng() % 2) p.base.p = prime();
      break;
  }
  static const char* pool[] = {"x", "y", "z", "t", "u", "s"};
  std::vector<std::string> avail(pool, pool + 6);
  std::shuffle(avail.begin(), avail.end(), rng);
  p.variables.assign(avail.begin(), avail.begin() + static_cast<long>(rng() % 4));
  return p;
}

}  // namespace

Description random_description(std::mt19937_64& rng) {
  FieldProfile p = random_profile(rng);
  if (rng() % 2) return p;
  std::vector<std::string> names = p.variables;
  if (p.base.field)
    for (const auto& g : p.base.field->generator_names()) names.push_back(g);
  AlgebraDescription d;
  d.n = 1 + static_cast<int>(rng() % 5);
  if (rng() % 2) d.omega = random_expr(rng, {}, 2);
  d.a = random_expr(rng, names, 3);
  d.b = random_expr(rng, names, 3);
  d.over = std::move(p);
  return d;
}

}  // namespace valdiv
