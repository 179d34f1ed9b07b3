#include "valdiv/twisted.hpp"

#include <algorithm>

#include "valdiv/errors.hpp"

namespace valdiv {

namespace {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a == TwistedSeries::kExact || b == TwistedSeries::kExact) return TwistedSeries::kExact;
  return a + b;
}

std::vector<FieldElement> tower_generators(const Field& f) {
  std::vector<FieldElement> gens;
  const Field* cur = &f;
  while (cur->kind() == Field::Kind::Extension) {
    gens.push_back(f.embed(cur->generator()));
    cur = &cur->base();
  }
  return gens;
}

}  // namespace

FieldAutomorphism::FieldAutomorphism(const Field& field, Kind kind, FieldElement image)
    : field_(&field), kind_(kind), image_(std::move(image)) {
  order_ = compute_order();
}

FieldAutomorphism FieldAutomorphism::identity(const Field& field) {
  return FieldAutomorphism(field, Kind::Identity, {});
}

FieldAutomorphism FieldAutomorphism::frobenius(const Field& field) {
  if (!field.is_finite()) throw DomainError("Frobenius needs a finite field");
  return FieldAutomorphism(field, Kind::Frobenius, {});
}

FieldAutomorphism FieldAutomorphism::from_generator_image(const FieldElement& image) {
  const Field& f = image.field();
  if (f.kind() != Field::Kind::Extension) throw DomainError("generator image needs an extension field");
  FieldElement acc = f.zero();
  const auto& m = f.modulus();
  for (int k = static_cast<int>(m.size()) - 1; k >= 0; --k) acc = acc * image + f.embed(m[k]);
  if (!acc.is_zero()) throw DomainError("image is not a root of the modulus of " + f.to_string());
  return FieldAutomorphism(f, Kind::GeneratorImage, image);
}

FieldAutomorphism FieldAutomorphism::quadratic_conjugation(const Field& field) {
  if (field.kind() != Field::Kind::Extension || field.degree() != 2) {
    throw DomainError("conjugation needs a quadratic extension");
  }
  const FieldElement m1 = field.embed(field.modulus()[1]);
  return from_generator_image(-m1 - field.generator());
}

FieldElement FieldAutomorphism::apply(const FieldElement& x) const {
  const FieldElement y = field_->embed(x);
  switch (kind_) {
    case Kind::Identity:
      return y;
    case Kind::Frobenius:
      return y.pow(field_->characteristic());
    case Kind::GeneratorImage: {
      const auto& c = y.coordinates();
      FieldElement acc = field_->zero();
      for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * image_ + field_->embed(c[k]);
      return acc;
    }
  }
  return y;
}

FieldElement FieldAutomorphism::apply_power(const FieldElement& x, std::int64_t k) const {
  std::int64_t r = k % order_;
  if (r < 0) r += order_;
  FieldElement y = field_->embed(x);
  for (std::int64_t i = 0; i < r; ++i) y = apply(y);
  return y;
}

int FieldAutomorphism::compute_order() const {
  const auto gens = tower_generators(*field_);
  std::vector<FieldElement> cur = gens;
  for (int k = 1; k <= 4096; ++k) {
    for (auto& g : cur) g = apply(g);
    if (cur == gens) return k;
  }
  throw DomainError("automorphism order exceeds the search bound");
}

std::string FieldAutomorphism::to_string() const {
  switch (kind_) {
    case Kind::Identity:
      return "id";
    case Kind::Frobenius:
      return "frobenius";
    case Kind::GeneratorImage:
      return field_->variable() + " -> " + image_.to_string();
  }
  return {};
}

// --------------------------------------------------------------- TwistedSeries

TwistedSeries::TwistedSeries(const FieldAutomorphism& sigma, std::int64_t start,
                             std::vector<FieldElement> coeffs, std::int64_t precision,
                             std::string variable)
    : sigma_(sigma), val_(start), coeffs_(std::move(coeffs)), prec_(precision), variable_(std::move(variable)) {
  for (auto& c : coeffs_) c = sigma_.field().embed(c);
  normalize();
}

void TwistedSeries::normalize() {
  if (prec_ != kExact) {
    const std::int64_t keep = std::max<std::int64_t>(0, prec_ - val_);
    if (static_cast<std::int64_t>(coeffs_.size()) > keep) coeffs_.resize(keep);
  }
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
  val_ += static_cast<std::int64_t>(lead);
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  if (coeffs_.empty()) val_ = 0;
}

TwistedSeries TwistedSeries::zero(const FieldAutomorphism& sigma) { return TwistedSeries(sigma, 0, {}); }

TwistedSeries TwistedSeries::constant(const FieldAutomorphism& sigma, const FieldElement& c) {
  return TwistedSeries(sigma, 0, {c});
}

TwistedSeries TwistedSeries::monomial(const FieldAutomorphism& sigma, const FieldElement& c, std::int64_t e) {
  return TwistedSeries(sigma, e, {c});
}

FieldElement TwistedSeries::coefficient(std::int64_t e) const {
  if (e >= prec_) throw PrecisionExhausted("twisted coefficient beyond the precision");
  const std::int64_t idx = e - val_;
  if (idx < 0 || idx >= static_cast<std::int64_t>(coeffs_.size())) return sigma_.field().zero();
  return coeffs_[idx];
}

std::optional<std::int64_t> TwistedSeries::valuation() const {
  if (is_exact_zero()) return std::nullopt;
  if (coeffs_.empty()) throw PrecisionExhausted("twisted series has no certified term");
  return val_;
}

TwistedSeries TwistedSeries::operator-() const {
  TwistedSeries r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

static void require_same_ring(const TwistedSeries& a, const TwistedSeries& b) {
  if (&a.automorphism().field() != &b.automorphism().field() ||
      a.automorphism().to_string() != b.automorphism().to_string()) {
    throw DomainError("twisted series over different rings");
  }
}

TwistedSeries operator+(const TwistedSeries& a, const TwistedSeries& b) {
  require_same_ring(a, b);
  const std::int64_t prec = std::min(a.prec_, b.prec_);
  if (a.coeffs_.empty()) return TwistedSeries(a.sigma_, b.val_, b.coeffs_, prec, a.variable_);
  if (b.coeffs_.empty()) return TwistedSeries(a.sigma_, a.val_, a.coeffs_, prec, a.variable_);
  const std::int64_t lo = std::min(a.val_, b.val_);
  const std::int64_t hi = std::max(a.val_ + static_cast<std::int64_t>(a.coeffs_.size()),
                                   b.val_ + static_cast<std::int64_t>(b.coeffs_.size()));
  std::vector<FieldElement> c(static_cast<std::size_t>(hi - lo), a.sigma_.field().zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[a.val_ - lo + static_cast<std::int64_t>(i)] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[b.val_ - lo + static_cast<std::int64_t>(i)] += b.coeffs_[i];
  return TwistedSeries(a.sigma_, lo, std::move(c), prec, a.variable_);
}

TwistedSeries operator-(const TwistedSeries& a, const TwistedSeries& b) { return a + (-b); }

TwistedSeries operator*(const TwistedSeries& a, const TwistedSeries& b) {
  require_same_ring(a, b);
  if (a.is_exact_zero() || b.is_exact_zero()) return TwistedSeries::zero(a.sigma_);
  auto lb = [](const TwistedSeries& x) { return x.coeffs_.empty() ? x.prec_ : x.val_; };
  const std::int64_t prec = std::min(sat_add(a.prec_, lb(b)), sat_add(b.prec_, lb(a)));
  if (a.coeffs_.empty() || b.coeffs_.empty()) return TwistedSeries(a.sigma_, 0, {}, prec, a.variable_);
  std::vector<FieldElement> c(a.coeffs_.size() + b.coeffs_.size() - 1, a.sigma_.field().zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    const std::int64_t e = a.val_ + static_cast<std::int64_t>(i);
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      c[i + j] += a.coeffs_[i] * a.sigma_.apply_power(b.coeffs_[j], e);
    }
  }
  return TwistedSeries(a.sigma_, a.val_ + b.val_, std::move(c), prec, a.variable_);
}

bool operator==(const TwistedSeries& a, const TwistedSeries& b) {
  return &a.sigma_.field() == &b.sigma_.field() && a.val_ == b.val_ && a.prec_ == b.prec_ &&
         a.coeffs_ == b.coeffs_;
}

TwistedSeries TwistedSeries::inv() const {
  if (is_exact_zero()) throw DivisionByZero("inverse of zero twisted series");
  if (coeffs_.size() != 1 || prec_ != kExact) {
    throw DomainError("twisted inverse is implemented for exact monomials only");
  }
  // (d t^e)^{-1} = t^{-e} d^{-1} = sigma^{-e}(d^{-1}) t^{-e}
  return monomial(sigma_, sigma_.apply_power(coeffs_[0].inv(), -val_), -val_);
}

std::string TwistedSeries::to_string() const {
  std::string out;
  auto append = [&out](const std::string& term) {
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  };
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const FieldElement& c = coeffs_[i];
    if (c.is_zero()) continue;
    const std::int64_t e = val_ + static_cast<std::int64_t>(i);
    std::string cs = c.to_string();
    if (e == 0) {
      append(cs);
      continue;
    }
    const std::string mono = e == 1 ? variable_ : variable_ + "^" + std::to_string(e);
    if (c.is_one()) {
      append(mono);
    } else {
      if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
      append(cs + "*" + mono);
    }
  }
  if (prec_ != kExact) append("O(" + variable_ + "^" + std::to_string(prec_) + ")");
  return out.empty() ? "0" : out;
}

TwistedSeries central_indeterminate(const FieldAutomorphism& sigma, const FieldElement& a, std::int64_t m) {
  if (m < 1) throw DomainError("central_indeterminate: m must be positive");
  if (!sigma.power_is_identity(m)) {
    throw DomainError("sigma^" + std::to_string(m) + " is not the identity");
  }
  if (!(sigma.apply(a) == sigma.field().embed(a)) || a.is_zero()) {
    throw DomainError("central_indeterminate: a must be a nonzero fixed element");
  }
  return TwistedSeries::monomial(sigma, a, m);
}

bool in_center(const TwistedSeries& z) {
  const auto& sigma = z.automorphism();
  const int m = sigma.order();
  for (std::size_t i = 0; i < z.coefficients().size(); ++i) {
    const FieldElement& c = z.coefficients()[i];
    if (c.is_zero()) continue;
    const std::int64_t e = z.start() + static_cast<std::int64_t>(i);
    if (e % m != 0) return false;
    if (!(sigma.apply(c) == c)) return false;
  }
  return true;
}

std::map<std::pair<int, int>, TwistedSeries> decompose_over_center(const TwistedSeries& z) {
  const auto& sigma = z.automorphism();
  const Field& e_field = sigma.field();
  if (e_field.kind() != Field::Kind::Extension) throw DomainError("decompose_over_center needs an extension");
  const int d = e_field.degree();
  const int m = sigma.order();
  std::map<std::pair<int, int>, std::vector<std::pair<std::int64_t, FieldElement>>> terms;
  for (std::size_t i = 0; i < z.coefficients().size(); ++i) {
    const FieldElement& c = z.coefficients()[i];
    if (c.is_zero()) continue;
    const std::int64_t e = z.start() + static_cast<std::int64_t>(i);
    const int s = static_cast<int>(((e % m) + m) % m);
    const auto& coords = c.coordinates();
    for (int r = 0; r < d; ++r) {
      if (!coords[r].is_zero()) terms[{r, s}].emplace_back(e - s, e_field.embed(coords[r]));
    }
  }
  std::map<std::pair<int, int>, TwistedSeries> out;
  for (int r = 0; r < d; ++r) {
    for (int s = 0; s < m; ++s) {
      TwistedSeries acc = TwistedSeries::zero(sigma);
      for (const auto& [e, c] : terms[{r, s}]) acc = acc + TwistedSeries::monomial(sigma, c, e);
      out.emplace(std::make_pair(r, s), acc);
    }
  }
  return out;
}

TwistedSeries random_twisted(const FieldAutomorphism& sigma, std::mt19937_64& rng, int terms,
                             std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> exp(lo, hi);
  TwistedSeries z = TwistedSeries::zero(sigma);
  for (int k = 0; k < terms; ++k) {
    z = z + TwistedSeries::monomial(sigma, sigma.field().random_nonzero(rng), exp(rng));
  }
  return z;
}

}  // namespace valdiv
