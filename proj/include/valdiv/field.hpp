#pragma once

// Exact coefficient fields: Q, F_p and simple extensions K[w]/(m(w)) of
// those, nested at most twice. Field descriptors are interned for the
// lifetime of the process, so elements hold a plain pointer to their field.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace valdiv {

class Field;

class FieldElement {
 public:
  FieldElement() = default;

  const Field& field() const;
  bool valid() const noexcept { return field_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& other);
  FieldElement& operator-=(const FieldElement& other);
  FieldElement& operator*=(const FieldElement& other);
  FieldElement& operator/=(const FieldElement& other);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  FieldElement inv() const;
  FieldElement pow(std::int64_t e) const;
  FieldElement pow(const mpz_class& e) const;

  /// Residue in [0, p) for prime fields.
  std::int64_t residue() const;
  const mpq_class& rational() const;
  /// Coordinates over the base field, low degree first, length = degree.
  const std::vector<FieldElement>& coordinates() const;

  /// Polynomial notation in the field's generators, e.g. "w^2 + 2*w + 1".
  std::string to_string() const;
  /// Same without blanks; used inside descriptors.
  std::string to_compact_string() const;

 private:
  friend class Field;
  using Rep = std::variant<std::int64_t, mpq_class, std::vector<FieldElement>>;
  FieldElement(const Field* field, Rep rep) : field_(field), rep_(std::move(rep)) {}

  const Field* field_ = nullptr;
  Rep rep_;
};

class Field {
 public:
  enum class Kind { Rational, Prime, Extension };

  static const Field& rational();
  static const Field& prime(std::int64_t p);
  /// base[variable]/(modulus); `modulus` lists base coefficients low degree
  /// first and must be monic of degree >= 1. Irreducibility is checked
  /// exhaustively over finite bases up to degree 4 and trusted over Q.
  static const Field& extension(const Field& base, std::vector<FieldElement> modulus,
                                const std::string& variable);

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  Kind kind() const noexcept { return kind_; }
  std::int64_t characteristic() const noexcept { return characteristic_; }
  const Field& base() const;
  const Field& prime_field() const;
  /// Number of extension layers above the prime field.
  int depth() const noexcept { return depth_; }
  int degree() const noexcept { return static_cast<int>(modulus_.empty() ? 1 : modulus_.size() - 1); }
  int absolute_degree() const noexcept { return absolute_degree_; }
  const std::vector<FieldElement>& modulus() const noexcept { return modulus_; }
  const std::string& variable() const noexcept { return variable_; }
  bool is_finite() const noexcept { return characteristic_ != 0; }
  /// |K| for finite fields when it fits in 64 bits.
  std::optional<std::uint64_t> order() const;
  bool irreducibility_verified() const noexcept { return irreducibility_verified_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(std::int64_t n) const;
  FieldElement from_integer(const mpz_class& n) const;
  /// Rationals map into any field whose characteristic does not divide the
  /// denominator.
  FieldElement from_rational(const mpq_class& q) const;
  /// Embeds an element of base() (or of any field below it).
  FieldElement embed(const FieldElement& x) const;
  /// The adjoined root of the modulus.
  FieldElement generator() const;
  /// Element with the given base coordinates (padded/reduced as needed).
  FieldElement from_coordinates(std::vector<FieldElement> coords) const;

  /// Bijection [0, |K|) -> K for finite fields; index 0 is zero, 1 is one.
  FieldElement element_at(std::uint64_t index) const;
  std::uint64_t index_of(const FieldElement& x) const;

  FieldElement random_element(std::mt19937_64& rng) const;
  FieldElement random_nonzero(std::mt19937_64& rng) const;

  /// Descriptor grammar: "Q", "F5", "F7[w]/(w^2+w+3)".
  std::string to_string() const;

  /// Names of all adjoined generators, innermost first.
  std::vector<std::string> generator_names() const;

 private:
  Field() = default;
  friend class FieldElement;

  FieldElement reduce(std::vector<FieldElement> poly) const;

  Kind kind_ = Kind::Rational;
  std::int64_t characteristic_ = 0;
  const Field* base_ = nullptr;
  int depth_ = 0;
  int absolute_degree_ = 1;
  std::vector<FieldElement> modulus_;
  std::string variable_;
  bool irreducibility_verified_ = true;
  std::string descriptor_;
};

/// Primitive n-th root of unity. Over prime fields and finite extensions the
/// smallest one in element_at() order is returned; over Q the generator of
/// the cyclotomic field Q[z]/(Phi_n) (or -1 for n = 2). Throws DomainError if
/// the characteristic divides n or no root exists in the field.
FieldElement primitive_root_of_unity(const Field& field, std::int64_t n);

/// Multiplicative order of a nonzero element, searched up to `limit`.
std::optional<std::int64_t> multiplicative_order(const FieldElement& x, std::int64_t limit);

/// Throws DomainError in characteristic 2 and for extensions of Q.
bool is_square(const FieldElement& x);
/// Square root when one exists (same support as is_square).
std::optional<FieldElement> square_root(const FieldElement& x);

/// Integer coefficients of the n-th cyclotomic polynomial, low degree first.
std::vector<mpz_class> cyclotomic_coefficients(std::int64_t n);

}  // namespace valdiv
