#pragma once

// Twisted Laurent series E((t, sigma)) over a commutative coefficient field
// E with a finite-order automorphism sigma, multiplied by t*d = sigma(d)*t.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "valdiv/field.hpp"

namespace valdiv {

class FieldAutomorphism {
 public:
  static FieldAutomorphism identity(const Field& field);
  /// x -> x^p on a finite field.
  static FieldAutomorphism frobenius(const Field& field);
  /// Fixes the base field and sends the generator to `image`, which must be
  /// another root of the modulus.
  static FieldAutomorphism from_generator_image(const FieldElement& image);
  /// Swaps the two roots of a quadratic modulus.
  static FieldAutomorphism quadratic_conjugation(const Field& field);

  const Field& field() const noexcept { return *field_; }
  FieldElement apply(const FieldElement& x) const;
  /// sigma^k, k may be negative.
  FieldElement apply_power(const FieldElement& x, std::int64_t k) const;
  int order() const noexcept { return order_; }
  bool power_is_identity(std::int64_t k) const { return k % order_ == 0; }
  std::string to_string() const;

 private:
  enum class Kind { Identity, Frobenius, GeneratorImage };
  FieldAutomorphism(const Field& field, Kind kind, FieldElement image);
  int compute_order() const;

  const Field* field_;
  Kind kind_;
  FieldElement image_;
  int order_ = 1;
};

class TwistedSeries {
 public:
  static constexpr std::int64_t kExact = INT64_MAX;

  TwistedSeries(const FieldAutomorphism& sigma, std::int64_t start, std::vector<FieldElement> coeffs,
                std::int64_t precision = kExact, std::string variable = "t");

  static TwistedSeries zero(const FieldAutomorphism& sigma);
  static TwistedSeries constant(const FieldAutomorphism& sigma, const FieldElement& c);
  /// c * t^e.
  static TwistedSeries monomial(const FieldAutomorphism& sigma, const FieldElement& c, std::int64_t e);

  const FieldAutomorphism& automorphism() const noexcept { return sigma_; }
  std::int64_t start() const noexcept { return val_; }
  std::int64_t precision() const noexcept { return prec_; }
  const std::vector<FieldElement>& coefficients() const noexcept { return coeffs_; }
  FieldElement coefficient(std::int64_t e) const;

  bool is_exact_zero() const { return coeffs_.empty() && prec_ == kExact; }
  /// min(supp(z)); nullopt stands for the infinite value of z = 0.
  std::optional<std::int64_t> valuation() const;

  TwistedSeries operator-() const;
  friend TwistedSeries operator+(const TwistedSeries& a, const TwistedSeries& b);
  friend TwistedSeries operator-(const TwistedSeries& a, const TwistedSeries& b);
  friend TwistedSeries operator*(const TwistedSeries& a, const TwistedSeries& b);
  friend bool operator==(const TwistedSeries& a, const TwistedSeries& b);

  /// Inverse of a monomial d*t^e: sigma^{-e}(d^{-1}) t^{-e}.
  TwistedSeries inv() const;

  std::string to_string() const;

 private:
  void normalize();
  FieldAutomorphism sigma_;
  std::int64_t val_;
  std::vector<FieldElement> coeffs_;
  std::int64_t prec_;
  std::string variable_;
};

/// x = a*t^m; requires sigma^m = id and a fixed by sigma.
TwistedSeries central_indeterminate(const FieldAutomorphism& sigma, const FieldElement& a, std::int64_t m);

/// Membership in the center k((t^m)), k the fixed field of sigma, m = ord(sigma).
bool in_center(const TwistedSeries& z);

/// Coordinates of z in the basis {w^r t^s : r < [E:base], s < m} over the
/// center k((t^m)); k must be the base field of E and m = ord(sigma).
std::map<std::pair<int, int>, TwistedSeries> decompose_over_center(const TwistedSeries& z);

TwistedSeries random_twisted(const FieldAutomorphism& sigma, std::mt19937_64& rng, int terms,
                             std::int64_t lo, std::int64_t hi);

}  // namespace valdiv
