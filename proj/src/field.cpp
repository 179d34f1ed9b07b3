#include "valdiv/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "valdiv/errors.hpp"
#include "valdiv/lattice.hpp"

namespace valdiv {

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, std::unique_ptr<Field>>& registry() {
  static std::map<std::string, std::unique_ptr<Field>> r;
  return r;
}

std::int64_t mod_norm(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  return mod_norm(t, p);
}

// Polynomials over a field as coefficient vectors, low degree first.
using PolyVec = std::vector<FieldElement>;

void trim(PolyVec& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int poly_degree(const PolyVec& p) { return static_cast<int>(p.size()) - 1; }

std::pair<PolyVec, PolyVec> poly_divmod(PolyVec a, const PolyVec& b) {
  trim(a);
  const int db = poly_degree(b);
  if (db < 0) throw DivisionByZero("polynomial division by zero");
  const FieldElement lead_inv = b.back().inv();
  PolyVec q;
  if (poly_degree(a) >= db) q.assign(a.size() - b.size() + 1, b.front().field().zero());
  while (poly_degree(a) >= db) {
    const int shift = poly_degree(a) - db;
    FieldElement c = a.back() * lead_inv;
    for (int i = 0; i <= db; ++i) a[shift + i] -= c * b[i];
    q[shift] = c;
    a.pop_back();
    trim(a);
  }
  return {q, a};
}

PolyVec poly_mul(const PolyVec& a, const PolyVec& b, const Field& f) {
  if (a.empty() || b.empty()) return {};
  PolyVec r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

PolyVec poly_sub(PolyVec a, const PolyVec& b, const Field& f) {
  if (a.size() < b.size()) a.resize(b.size(), f.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

std::string format_polynomial(const PolyVec& coeffs, const std::string& var) {
  std::string out;
  for (int k = poly_degree(coeffs); k >= 0; --k) {
    const FieldElement& c = coeffs[k];
    if (c.is_zero()) continue;
    std::string term;
    if (k == 0) {
      term = c.to_string();
    } else {
      std::string mono = k == 1 ? var : var + "^" + std::to_string(k);
      if (c.is_one()) {
        term = mono;
      } else {
        std::string cs = c.to_string();
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
  return out.empty() ? "0" : out;
}

bool divides_exactly(const PolyVec& divisor, const PolyVec& p) {
  return poly_divmod(p, divisor).second.empty();
}

// Exhaustive factor search; only called for finite bases with small degree.
bool has_proper_factor(const Field& base, const PolyVec& modulus) {
  const int d = poly_degree(modulus);
  const std::uint64_t s = *base.order();
  for (int k = 1; k <= d / 2; ++k) {
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) count *= s;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      PolyVec cand(k + 1, base.zero());
      std::uint64_t rest = idx;
      for (int i = 0; i < k; ++i) {
        cand[i] = base.element_at(rest % s);
        rest /= s;
      }
      cand[k] = base.one();
      if (divides_exactly(cand, modulus)) return true;
    }
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------- FieldElement

const Field& FieldElement::field() const {
  if (!field_) throw DomainError("uninitialized field element");
  return *field_;
}

bool FieldElement::is_zero() const {
  switch (field().kind()) {
    case Field::Kind::Prime:
      return std::get<std::int64_t>(rep_) == 0;
    case Field::Kind::Rational:
      return std::get<mpq_class>(rep_) == 0;
    case Field::Kind::Extension:
      for (const auto& c : std::get<std::vector<FieldElement>>(rep_)) {
        if (!c.is_zero()) return false;
      }
      return true;
  }
  return false;
}

bool FieldElement::is_one() const { return *this == field().one(); }

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.field_ == b.field_ && a.rep_ == b.rep_;
}

static void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (&a.field() != &b.field()) {
    throw DomainError("field mismatch: " + a.field().to_string() + " vs " + b.field().to_string());
  }
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  switch (field().kind()) {
    case Field::Kind::Prime: {
      auto& v = std::get<std::int64_t>(r.rep_);
      v = v == 0 ? 0 : field_->characteristic() - v;
      break;
    }
    case Field::Kind::Rational:
      std::get<mpq_class>(r.rep_) = -std::get<mpq_class>(r.rep_);
      break;
    case Field::Kind::Extension:
      for (auto& c : std::get<std::vector<FieldElement>>(r.rep_)) c = -c;
      break;
  }
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& other) {
  require_same_field(*this, other);
  switch (field_->kind()) {
    case Field::Kind::Prime: {
      auto& v = std::get<std::int64_t>(rep_);
      v += std::get<std::int64_t>(other.rep_);
      if (v >= field_->characteristic()) v -= field_->characteristic();
      break;
    }
    case Field::Kind::Rational:
      std::get<mpq_class>(rep_) += std::get<mpq_class>(other.rep_);
      break;
    case Field::Kind::Extension: {
      auto& v = std::get<std::vector<FieldElement>>(rep_);
      const auto& w = std::get<std::vector<FieldElement>>(other.rep_);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
      break;
    }
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other) { return *this += -other; }

FieldElement& FieldElement::operator*=(const FieldElement& other) {
  require_same_field(*this, other);
  switch (field_->kind()) {
    case Field::Kind::Prime: {
      auto& v = std::get<std::int64_t>(rep_);
      v = mod_mul(v, std::get<std::int64_t>(other.rep_), field_->characteristic());
      break;
    }
    case Field::Kind::Rational:
      std::get<mpq_class>(rep_) *= std::get<mpq_class>(other.rep_);
      break;
    case Field::Kind::Extension: {
      const auto& v = std::get<std::vector<FieldElement>>(rep_);
      const auto& w = std::get<std::vector<FieldElement>>(other.rep_);
      *this = field_->reduce(poly_mul(v, w, field_->base()));
      break;
    }
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& other) { return *this *= other.inv(); }

FieldElement FieldElement::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in " + field().to_string());
  switch (field_->kind()) {
    case Field::Kind::Prime:
      return FieldElement(field_, mod_inv(std::get<std::int64_t>(rep_), field_->characteristic()));
    case Field::Kind::Rational:
      return FieldElement(field_, mpq_class(1 / std::get<mpq_class>(rep_)));
    case Field::Kind::Extension: {
      const Field& base = field_->base();
      PolyVec r0 = field_->modulus();
      PolyVec r1 = std::get<std::vector<FieldElement>>(rep_);
      trim(r1);
      PolyVec s0, s1{base.one()};
      while (!r1.empty()) {
        auto [q, r] = poly_divmod(r0, r1);
        PolyVec s2 = poly_sub(s0, poly_mul(q, s1, base), base);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
      }
      if (poly_degree(r0) != 0) {
        throw DomainError("modulus of " + field_->to_string() + " is reducible");
      }
      const FieldElement c = r0[0].inv();
      for (auto& x : s0) x *= c;
      return field_->reduce(std::move(s0));
    }
  }
  return *this;
}

FieldElement FieldElement::pow(std::int64_t e) const {
  if (e < 0) return inv().pow(-e);
  FieldElement result = field().one();
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

FieldElement FieldElement::pow(const mpz_class& e) const {
  if (e < 0) return inv().pow(mpz_class(-e));
  if (e.fits_slong_p()) return pow(static_cast<std::int64_t>(e.get_si()));
  FieldElement result = field().one();
  FieldElement base = *this;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) result *= base;
    base *= base;
  }
  return result;
}

std::int64_t FieldElement::residue() const {
  if (field().kind() != Field::Kind::Prime) throw DomainError("residue() on non-prime field");
  return std::get<std::int64_t>(rep_);
}

const mpq_class& FieldElement::rational() const {
  if (field().kind() != Field::Kind::Rational) throw DomainError("rational() on non-rational field");
  return std::get<mpq_class>(rep_);
}

const std::vector<FieldElement>& FieldElement::coordinates() const {
  if (field().kind() != Field::Kind::Extension) throw DomainError("coordinates() on a prime field");
  return std::get<std::vector<FieldElement>>(rep_);
}

std::string FieldElement::to_string() const {
  switch (field().kind()) {
    case Field::Kind::Prime:
      return std::to_string(std::get<std::int64_t>(rep_));
    case Field::Kind::Rational:
      return std::get<mpq_class>(rep_).get_str();
    case Field::Kind::Extension:
      return format_polynomial(std::get<std::vector<FieldElement>>(rep_), field_->variable());
  }
  return {};
}

std::string FieldElement::to_compact_string() const {
  std::string s = to_string();
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

// ----------------------------------------------------------------------- Field

const Field& Field::rational() {
  std::lock_guard lock(registry_mutex());
  auto& slot = registry()["Q"];
  if (!slot) {
    slot.reset(new Field());
    slot->kind_ = Kind::Rational;
    slot->descriptor_ = "Q";
  }
  return *slot;
}

const Field& Field::prime(std::int64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (p >= (std::int64_t{1} << 62)) throw DomainError("prime too large");
  const std::string key = "F" + std::to_string(p);
  std::lock_guard lock(registry_mutex());
  auto& slot = registry()[key];
  if (!slot) {
    slot.reset(new Field());
    slot->kind_ = Kind::Prime;
    slot->characteristic_ = p;
    slot->descriptor_ = key;
  }
  return *slot;
}

const Field& Field::extension(const Field& base, std::vector<FieldElement> modulus,
                              const std::string& variable) {
  if (base.depth() >= 2) throw DomainError("extension towers are limited to depth 2");
  for (auto& c : modulus) c = base.embed(c);
  trim(modulus);
  if (poly_degree(modulus) < 1) throw DomainError("modulus must have degree >= 1");
  if (!modulus.back().is_one()) throw DomainError("modulus must be monic");
  if (variable.empty()) throw DomainError("extension variable name is empty");
  for (const auto& g : base.generator_names()) {
    if (g == variable) throw DomainError("variable '" + variable + "' already used in " + base.to_string());
  }
  const std::string key =
      base.to_string() + "[" + variable + "]/(" + [&] {
        std::string s = format_polynomial(modulus, variable);
        s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
        return s;
      }() + ")";
  {
    std::lock_guard lock(registry_mutex());
    auto it = registry().find(key);
    if (it != registry().end()) return *it->second;
  }
  bool verified = false;
  const int d = poly_degree(modulus);
  if (base.is_finite() && d <= 4 && base.order() && *base.order() <= 10000) {
    if (has_proper_factor(base, modulus)) {
      throw DomainError("modulus of " + key + " is reducible");
    }
    verified = true;
  } else if (d == 1) {
    verified = true;
  }
  auto field = std::unique_ptr<Field>(new Field());
  field->kind_ = Kind::Extension;
  field->characteristic_ = base.characteristic();
  field->base_ = &base;
  field->depth_ = base.depth() + 1;
  field->absolute_degree_ = base.absolute_degree() * d;
  field->modulus_ = std::move(modulus);
  field->variable_ = variable;
  field->irreducibility_verified_ = verified;
  field->descriptor_ = key;
  std::lock_guard lock(registry_mutex());
  auto& slot = registry()[key];
  if (!slot) slot = std::move(field);
  return *slot;
}

const Field& Field::base() const {
  if (!base_) throw DomainError(to_string() + " has no base field");
  return *base_;
}

const Field& Field::prime_field() const { return base_ ? base_->prime_field() : *this; }

std::optional<std::uint64_t> Field::order() const {
  if (!is_finite()) return std::nullopt;
  mpz_class o;
  mpz_ui_pow_ui(o.get_mpz_t(), static_cast<unsigned long>(characteristic_),
                static_cast<unsigned long>(absolute_degree_));
  if (!o.fits_ulong_p()) return std::nullopt;
  return o.get_ui();
}

FieldElement Field::zero() const { return from_int(0); }

FieldElement Field::one() const { return from_int(1); }

FieldElement Field::from_int(std::int64_t n) const { return from_integer(mpz_class(static_cast<long>(n))); }

FieldElement Field::from_integer(const mpz_class& n) const {
  switch (kind_) {
    case Kind::Prime: {
      mpz_class r;
      mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(characteristic_));
      return FieldElement(this, static_cast<std::int64_t>(r.get_si()));
    }
    case Kind::Rational:
      return FieldElement(this, mpq_class(n));
    case Kind::Extension: {
      std::vector<FieldElement> c(degree(), base_->zero());
      c[0] = base_->from_integer(n);
      return FieldElement(this, std::move(c));
    }
  }
  return {};
}

FieldElement Field::from_rational(const mpq_class& q) const {
  if (kind_ == Kind::Rational) return FieldElement(this, q);
  FieldElement den = from_integer(q.get_den());
  if (den.is_zero()) {
    throw DomainError("denominator " + q.get_den().get_str() + " vanishes in " + to_string());
  }
  return from_integer(q.get_num()) / den;
}

FieldElement Field::embed(const FieldElement& x) const {
  if (&x.field() == this) return x;
  if (kind_ != Kind::Extension) {
    throw DomainError("cannot embed " + x.field().to_string() + " into " + to_string());
  }
  std::vector<FieldElement> c(degree(), base_->zero());
  c[0] = base_->embed(x);
  return FieldElement(this, std::move(c));
}

FieldElement Field::generator() const {
  if (kind_ != Kind::Extension) throw DomainError(to_string() + " has no generator");
  std::vector<FieldElement> c(degree(), base_->zero());
  if (degree() == 1) return reduce({base_->zero(), base_->one()});
  c[1] = base_->one();
  return FieldElement(this, std::move(c));
}

FieldElement Field::from_coordinates(std::vector<FieldElement> coords) const {
  if (kind_ != Kind::Extension) {
    if (coords.size() != 1) throw DomainError("from_coordinates: expected one coordinate");
    return embed(coords.front());
  }
  for (auto& c : coords) c = base_->embed(c);
  return reduce(std::move(coords));
}

FieldElement Field::reduce(std::vector<FieldElement> poly) const {
  const int d = degree();
  for (int k = static_cast<int>(poly.size()) - 1; k >= d; --k) {
    if (poly[k].is_zero()) continue;
    const FieldElement c = poly[k];
    for (int i = 0; i <= d; ++i) poly[k - d + i] -= c * modulus_[i];
  }
  poly.resize(d, base_->zero());
  return FieldElement(this, std::move(poly));
}

FieldElement Field::element_at(std::uint64_t index) const {
  auto size = order();
  if (!size) throw DomainError("element_at: " + to_string() + " is not a small finite field");
  if (index >= *size) throw DomainError("element_at: index out of range");
  if (kind_ == Kind::Prime) return FieldElement(this, static_cast<std::int64_t>(index));
  const std::uint64_t s = *base_->order();
  std::vector<FieldElement> c;
  for (int i = 0; i < degree(); ++i) {
    c.push_back(base_->element_at(index % s));
    index /= s;
  }
  return FieldElement(this, std::move(c));
}

std::uint64_t Field::index_of(const FieldElement& x) const {
  if (&x.field() != this) throw DomainError("index_of: field mismatch");
  if (kind_ == Kind::Prime) return static_cast<std::uint64_t>(x.residue());
  if (kind_ == Kind::Rational) throw DomainError("index_of: Q is infinite");
  const std::uint64_t s = *base_->order();
  std::uint64_t idx = 0;
  const auto& c = x.coordinates();
  for (int i = degree() - 1; i >= 0; --i) idx = idx * s + base_->index_of(c[i]);
  return idx;
}

FieldElement Field::random_element(std::mt19937_64& rng) const {
  switch (kind_) {
    case Kind::Prime: {
      std::uniform_int_distribution<std::int64_t> d(0, characteristic_ - 1);
      return FieldElement(this, d(rng));
    }
    case Kind::Rational: {
      std::uniform_int_distribution<long> num(-9, 9);
      std::uniform_int_distribution<long> den(1, 6);
      mpq_class q(num(rng), den(rng));
      q.canonicalize();
      return FieldElement(this, q);
    }
    case Kind::Extension: {
      std::vector<FieldElement> c;
      for (int i = 0; i < degree(); ++i) c.push_back(base_->random_element(rng));
      return FieldElement(this, std::move(c));
    }
  }
  return {};
}

FieldElement Field::random_nonzero(std::mt19937_64& rng) const {
  while (true) {
    FieldElement x = random_element(rng);
    if (!x.is_zero()) return x;
  }
}

std::string Field::to_string() const { return descriptor_; }

std::vector<std::string> Field::generator_names() const {
  std::vector<std::string> names = base_ ? base_->generator_names() : std::vector<std::string>{};
  if (kind_ == Kind::Extension) names.push_back(variable_);
  return names;
}

// ------------------------------------------------------------- free functions

std::vector<mpz_class> cyclotomic_coefficients(std::int64_t n) {
  if (n < 1) throw DomainError("cyclotomic polynomial index must be positive");
  // X^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<mpz_class> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto phi = cyclotomic_coefficients(d);
    const std::size_t dq = p.size() - phi.size();
    std::vector<mpz_class> q(dq + 1, 0);
    for (std::size_t k = p.size(); k-- > phi.size() - 1;) {
      const mpz_class c = p[k];  // phi is monic
      const std::size_t shift = k - (phi.size() - 1);
      q[shift] = c;
      for (std::size_t i = 0; i < phi.size(); ++i) p[shift + i] -= c * phi[i];
    }
    p = std::move(q);
  }
  return p;
}

std::optional<std::int64_t> multiplicative_order(const FieldElement& x, std::int64_t limit) {
  if (x.is_zero()) return std::nullopt;
  FieldElement acc = x;
  for (std::int64_t k = 1; k <= limit; ++k) {
    if (acc.is_one()) return k;
    acc *= x;
  }
  return std::nullopt;
}

namespace {

bool has_exact_order(const FieldElement& x, std::int64_t n) {
  if (!x.pow(n).is_one()) return false;
  std::int64_t m = n;
  for (std::int64_t r = 2; r * r <= m; ++r) {
    if (m % r != 0) continue;
    if (x.pow(n / r).is_one()) return false;
    while (m % r == 0) m /= r;
  }
  if (m > 1 && x.pow(n / m).is_one()) return false;
  return true;
}

// Flat rational coordinates (length absolute_degree) to an element.
FieldElement from_flat(const Field& f, const std::vector<mpq_class>& flat, std::size_t& pos) {
  if (f.kind() != Field::Kind::Extension) return f.from_rational(flat[pos++]);
  std::vector<FieldElement> c;
  for (int i = 0; i < f.degree(); ++i) c.push_back(from_flat(f.base(), flat, pos));
  return f.from_coordinates(std::move(c));
}

}  // namespace

FieldElement primitive_root_of_unity(const Field& field, std::int64_t n) {
  if (n < 1) throw DomainError("root of unity order must be positive");
  if (n == 1) return field.one();
  if (field.characteristic() != 0 && n % field.characteristic() == 0) {
    throw DomainError("characteristic " + std::to_string(field.characteristic()) + " divides " +
                      std::to_string(n));
  }
  if (field.kind() == Field::Kind::Rational) {
    if (n == 2) return field.from_int(-1);
    std::vector<FieldElement> modulus;
    for (const auto& c : cyclotomic_coefficients(n)) modulus.push_back(field.from_integer(c));
    return Field::extension(field, std::move(modulus), "z").generator();
  }
  if (field.is_finite()) {
    auto size = field.order();
    if (!size) throw DomainError("field too large for root-of-unity search");
    if ((*size - 1) % static_cast<std::uint64_t>(n) != 0) {
      throw DomainError("no primitive " + std::to_string(n) + "-th root of unity in " +
                        field.to_string());
    }
    if (field.kind() == Field::Kind::Extension && *size > 10000) {
      throw DomainError("root-of-unity search limited to fields of size 10^4");
    }
    for (std::uint64_t i = 1; i < *size; ++i) {
      FieldElement x = field.element_at(i);
      if (has_exact_order(x, n)) return x;
    }
    throw VerificationFailure("cyclic group has no element of order " + std::to_string(n));
  }
  // Number field: small candidates with coordinates in {0, +-1/2, +-1}.
  const int d = field.absolute_degree();
  const std::vector<mpq_class> digits{mpq_class(0), mpq_class(1), mpq_class(-1), mpq_class(1, 2),
                                      mpq_class(-1, 2)};
  std::uint64_t total = 1;
  for (int i = 0; i < d && total <= 10000; ++i) total *= digits.size();
  total = std::min<std::uint64_t>(total, 10000);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::vector<mpq_class> flat;
    std::uint64_t rest = idx;
    for (int i = 0; i < d; ++i) {
      flat.push_back(digits[rest % digits.size()]);
      rest /= digits.size();
    }
    std::size_t pos = 0;
    FieldElement x = from_flat(field, flat, pos);
    if (has_exact_order(x, n)) return x;
  }
  throw DomainError("no primitive " + std::to_string(n) + "-th root of unity found in " +
                    field.to_string());
}

bool is_square(const FieldElement& x) {
  const Field& f = x.field();
  if (f.characteristic() == 2) throw DomainError("is_square: characteristic 2 is not supported");
  if (f.kind() == Field::Kind::Rational) {
    const mpq_class& q = x.rational();
    if (q < 0) return false;
    return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
  }
  if (!f.is_finite()) throw DomainError("is_square: unsupported over " + f.to_string());
  if (x.is_zero()) return true;
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(f.characteristic()),
                static_cast<unsigned long>(f.absolute_degree()));
  return x.pow(mpz_class((q - 1) / 2)).is_one();
}

std::optional<FieldElement> square_root(const FieldElement& x) {
  if (!is_square(x)) return std::nullopt;
  const Field& f = x.field();
  if (f.kind() == Field::Kind::Rational) {
    mpz_class num, den;
    mpz_sqrt(num.get_mpz_t(), x.rational().get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), x.rational().get_den_mpz_t());
    return f.from_rational(mpq_class(num, den));
  }
  if (x.is_zero()) return x;
  // Tonelli-Shanks in a finite field of odd order.
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(f.characteristic()),
                static_cast<unsigned long>(f.absolute_degree()));
  mpz_class odd = q - 1;
  unsigned long s = 0;
  while (mpz_even_p(odd.get_mpz_t())) {
    odd /= 2;
    ++s;
  }
  FieldElement z;
  if (auto size = f.order()) {
    for (std::uint64_t i = 2; i < *size; ++i) {
      FieldElement c = f.element_at(i);
      if (!is_square(c)) {
        z = c;
        break;
      }
    }
  } else {
    std::mt19937_64 rng(12345);
    do {
      z = f.random_nonzero(rng);
    } while (is_square(z));
  }
  unsigned long m = s;
  FieldElement c = z.pow(odd);
  FieldElement t = x.pow(odd);
  FieldElement r = x.pow(mpz_class((odd + 1) / 2));
  while (!t.is_one()) {
    unsigned long i = 0;
    FieldElement tt = t;
    while (!tt.is_one()) {
      tt *= tt;
      ++i;
    }
    FieldElement b = c;
    for (unsigned long k = 0; k + i + 1 < m; ++k) b *= b;
    m = i;
    c = b * b;
    t *= c;
    r *= b;
  }
  return r;
}

}  // namespace valdiv
