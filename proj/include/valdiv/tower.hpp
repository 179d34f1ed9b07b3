#pragma once

// Iterated Laurent series fields K((x_1))((x_2))...((x_m)) with truncation
// tracking. An element of level L is a Laurent series in x_L whose
// coefficients have level L-1; level 0 is the coefficient field K.
//
// Each series node stores the exponent of its first stored coefficient and
// an absolute precision: terms of exponent >= precision are unknown. Exact
// elements (finite Laurent polynomials) carry kExact and never lose
// information. The valuation lives in Z^m, coordinate 0 being the exponent
// of the outermost variable x_m.

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "valdiv/field.hpp"
#include "valdiv/lattice.hpp"

namespace valdiv {

class TowerElement;

class Tower {
 public:
  static constexpr std::int64_t kDefaultPrecision = 32;

  /// `variables` innermost first: {"x", "y"} is K((x))((y)).
  static const Tower& make(const Field& base, std::vector<std::string> variables,
                           std::int64_t precision = kDefaultPrecision);

  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  const Field& base() const noexcept { return *base_; }
  std::size_t height() const noexcept { return variables_.size(); }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  /// Relative number of terms kept by inversion and square roots, per level.
  std::int64_t precision() const noexcept { return precision_; }
  const Tower& with_precision(std::int64_t precision) const;

  /// Level (1-based, innermost = 1) of a variable, or 0 if unknown.
  std::size_t level_of(const std::string& variable) const;

  TowerElement zero() const;
  TowerElement one() const;
  TowerElement from_int(std::int64_t n) const;
  TowerElement constant(const FieldElement& c) const;
  /// The variable x_level.
  TowerElement variable(std::size_t level) const;
  /// c * prod x^e with exponents listed outermost first.
  TowerElement monomial(const FieldElement& c, const std::vector<std::int64_t>& exponents) const;
  /// Inexact zero O(x_level^precision), lifted to the top level.
  TowerElement big_o(std::size_t level, std::int64_t precision) const;

  /// Sparse random Laurent polynomial with `terms` monomials whose
  /// exponents lie in [lo, hi] at every level.
  TowerElement random_polynomial(std::mt19937_64& rng, int terms, std::int64_t lo,
                                 std::int64_t hi) const;
  /// Random element of valuation 0 (nonzero residue plus higher terms).
  TowerElement random_unit(std::mt19937_64& rng, int terms) const;

  /// "F5((x))((y))".
  std::string to_string() const;

 private:
  Tower() = default;
  const Field* base_ = nullptr;
  std::vector<std::string> variables_;
  std::int64_t precision_ = kDefaultPrecision;
  std::string descriptor_;
};

class TowerElement {
 public:
  static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();

  TowerElement() = default;

  const Tower& tower() const;
  bool valid() const noexcept { return tower_ != nullptr; }
  std::size_t level() const noexcept { return level_; }

  // Node access (level >= 1).
  std::int64_t start() const noexcept { return val_; }
  std::int64_t precision() const noexcept { return prec_; }
  const std::vector<TowerElement>& coefficients() const noexcept { return coeffs_; }
  /// Coefficient of x_level^e; throws PrecisionExhausted past the precision.
  TowerElement coefficient(std::int64_t e) const;
  // Level 0 access.
  const FieldElement& scalar() const;

  bool is_exact() const;
  bool is_exact_zero() const;
  /// Some stored coefficient is a nonzero field element.
  bool is_certified_nonzero() const;
  /// No certified nonzero coefficient: equal to zero as far as known.
  bool is_zero_to_precision() const { return !is_certified_nonzero(); }

  /// Lex valuation, outermost exponent first; nullopt for exact zero.
  /// Throws PrecisionExhausted when the leading term is not certified.
  std::optional<std::vector<std::int64_t>> valuation() const;
  QVector valuation_vector() const;
  /// Certified test v(x) > bound; throws PrecisionExhausted if undecided.
  bool valuation_exceeds(const QVector& bound) const;
  /// Iterated constant term; requires v(x) >= 0.
  FieldElement residue() const;
  /// Leading iterated coefficient.
  FieldElement leading_coefficient() const;

  TowerElement operator-() const;
  friend TowerElement operator+(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator-(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator*(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator*(const FieldElement& c, const TowerElement& a);
  TowerElement& operator+=(const TowerElement& b) { return *this = *this + b; }
  TowerElement& operator-=(const TowerElement& b) { return *this = *this - b; }
  TowerElement& operator*=(const TowerElement& b) { return *this = *this * b; }
  /// Structural equality after lifting to a common level (exact elements:
  /// mathematical equality).
  friend bool operator==(const TowerElement& a, const TowerElement& b);

  TowerElement inv() const;
  TowerElement pow(std::int64_t e) const;
  /// Lift to a higher level as a constant coefficient.
  TowerElement lifted(std::size_t level) const;
  /// Drops terms of exponent >= p at this level.
  TowerElement truncated(std::int64_t p) const;

  /// Square root of a unit (valuation 0), to working precision.
  std::optional<TowerElement> unit_square_root() const;

  /// Series literal, e.g. "2 + t + O(t^32)".
  std::string to_string() const;

 private:
  friend class Tower;
  friend TowerElement make_node(const Tower&, std::size_t, std::int64_t, std::vector<TowerElement>,
                                std::int64_t);
  friend TowerElement make_scalar(const Tower&, FieldElement);

  const Tower* tower_ = nullptr;
  std::size_t level_ = 0;
  FieldElement scalar_;
  std::int64_t val_ = 0;
  std::int64_t prec_ = kExact;
  std::vector<TowerElement> coeffs_;
};

/// True iff the residue is a square (Hensel); requires a unit and odd
/// residue characteristic.
bool unit_is_square(const TowerElement& u);

/// Tower descriptor "F5((x))((y))" parsing helper used by the CLI grammar.
std::string tower_suffix(const std::vector<std::string>& variables);

}  // namespace valdiv
