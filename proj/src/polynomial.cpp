#include "valdiv/polynomial.hpp"

#include "valdiv/errors.hpp"

namespace valdiv {

Polynomial::Polynomial(const Field& field, std::vector<FieldElement> coeffs)
    : field_(&field), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c = field.embed(c);
  trim();
}

Polynomial Polynomial::monomial(const FieldElement& c, int degree) {
  std::vector<FieldElement> v(degree + 1, c.field().zero());
  v[degree] = c;
  return Polynomial(c.field(), std::move(v));
}

Polynomial Polynomial::x(const Field& field) { return monomial(field.one(), 1); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement Polynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) return field_->zero();
  return coeffs_[k];
}

FieldElement Polynomial::leading() const {
  if (is_zero()) throw DomainError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (&a.field() != &b.field()) throw DomainError("polynomial field mismatch");
  std::vector<FieldElement> r(std::max(a.coeffs_.size(), b.coeffs_.size()), a.field().zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
  return Polynomial(a.field(), std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (&a.field() != &b.field()) throw DomainError("polynomial field mismatch");
  if (a.is_zero() || b.is_zero()) return Polynomial(a.field());
  std::vector<FieldElement> r(a.coeffs_.size() + b.coeffs_.size() - 1, a.field().zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(a.field(), std::move(r));
}

Polynomial operator*(const FieldElement& c, const Polynomial& p) {
  Polynomial r = p;
  for (auto& x : r.coeffs_) x = p.field().embed(c) * x;
  r.trim();
  return r;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
  std::vector<FieldElement> rem = coeffs_;
  const int dd = d.degree();
  if (degree() < dd) return {Polynomial(*field_), *this};
  std::vector<FieldElement> q(degree() - dd + 1, field_->zero());
  const FieldElement lead_inv = d.leading().inv();
  for (int k = degree(); k >= dd; --k) {
    if (rem[k].is_zero()) continue;
    const FieldElement c = rem[k] * lead_inv;
    q[k - dd] = c;
    for (int i = 0; i <= dd; ++i) rem[k - dd + i] -= c * d.coeffs_[i];
  }
  return {Polynomial(*field_, std::move(q)), Polynomial(*field_, std::move(rem))};
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return leading().inv() * *this;
}

FieldElement Polynomial::eval(const FieldElement& x) const {
  FieldElement acc = field_->zero();
  const FieldElement y = field_->embed(x);
  for (int k = degree(); k >= 0; --k) acc = acc * y + coeffs_[k];
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<FieldElement> r;
  for (int k = 1; k <= degree(); ++k) r.push_back(field_->from_int(k) * coeffs_[k]);
  return Polynomial(*field_, std::move(r));
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const FieldElement& c = coeffs_[k];
    if (c.is_zero()) continue;
    std::string term;
    std::string cs = c.to_string();
    if (k == 0) {
      term = cs;
    } else {
      std::string mono = k == 1 ? var : var + "^" + std::to_string(k);
      if (c.is_one()) {
        term = mono;
      } else if ((-c).is_one()) {
        term = "-" + mono;
      } else {
        if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
        term = cs + "*" + mono;
      }
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace valdiv
