#pragma once

// Dense univariate polynomials over an exact field.

#include <string>
#include <utility>
#include <vector>

#include "valdiv/field.hpp"

namespace valdiv {

class Polynomial {
 public:
  Polynomial(const Field& field, std::vector<FieldElement> coeffs = {});

  static Polynomial monomial(const FieldElement& c, int degree);
  static Polynomial x(const Field& field);

  const Field& field() const noexcept { return *field_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<FieldElement>& coefficients() const noexcept { return coeffs_; }
  FieldElement coefficient(int k) const;
  FieldElement leading() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const FieldElement& c, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
  Polynomial monic() const;
  FieldElement eval(const FieldElement& x) const;
  Polynomial derivative() const;

  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();
  const Field* field_;
  std::vector<FieldElement> coeffs_;
};

/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

}  // namespace valdiv
