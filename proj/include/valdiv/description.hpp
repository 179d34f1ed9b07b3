#pragma once

// Text descriptions of fields and algebras.
//
//   profile   := base tower
//   base      := Q | F<p> ("[" var "]/(" expr ")")*      exact fields
//              | Qp(p=7) | closed(char=p) | completion(p=7[, cd=3])
//              | decl(cd2=1, cdq=1, char=0)             declared cd_q table
//   tower     := ("((" var "))")*                       innermost first
//   algebra   := symbol(n=4[, omega=2], a=expr, b=expr) over profile
//   expr      := integers and variables under + - * / ^ and parentheses
//
// Printing is canonical: parsing a printed description gives it back.

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "valdiv/profile.hpp"
#include "valdiv/symbol_algebra.hpp"

namespace valdiv {

struct Expr {
  enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow };
  using Ptr = std::shared_ptr<const Expr>;

  Kind kind = Kind::Number;
  Integer number;
  std::string name;
  std::int64_t exponent = 0;
  std::vector<Ptr> operands;

  static Ptr num(const Integer& n);
  static Ptr var(std::string name);
  static Ptr neg(Ptr x);
  static Ptr binary(Kind kind, Ptr l, Ptr r);
  static Ptr pow(Ptr base, std::int64_t e);

  std::string to_string() const;
};

bool operator==(const Expr& a, const Expr& b);
Expr::Ptr parse_expression(const std::string& text);
/// Evaluates with tower variables and base-field generators bound by name.
TowerElement evaluate(const Expr& e, const Tower& tower);

struct AlgebraDescription {
  int n = 2;
  /// nullopt: the smallest primitive n-th root of unity.
  Expr::Ptr omega;
  Expr::Ptr a;
  Expr::Ptr b;
  FieldProfile over;

  std::string to_string() const;
  friend bool operator==(const AlgebraDescription& x, const AlgebraDescription& y);
};

using Description = std::variant<FieldProfile, AlgebraDescription>;

/// Throws ParseError with the line and column of the offending token.
Description parse_description(const std::string& text);
FieldProfile parse_profile(const std::string& text);
AlgebraDescription parse_algebra(const std::string& text);
std::string to_string(const Description& d);

/// The tower of an exact profile.
const Tower& instantiate(const FieldProfile& profile, std::int64_t precision = Tower::kDefaultPrecision);
SymbolAlgebra::Ptr instantiate(const AlgebraDescription& desc, std::int64_t precision = Tower::kDefaultPrecision);

/// Random well-formed descriptions for round-trip testing.
Description random_description(std::mt19937_64& rng);

}  // namespace valdiv
