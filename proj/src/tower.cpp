#include "valdiv/tower.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "valdiv/errors.hpp"

namespace valdiv {

namespace {

constexpr std::int64_t kExact = TowerElement::kExact;

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a == kExact || b == kExact) return kExact;
  return a + b;
}

std::mutex& tower_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, std::unique_ptr<Tower>>& tower_registry() {
  static std::map<std::string, std::unique_ptr<Tower>> r;
  return r;
}

}  // namespace

TowerElement make_scalar(const Tower& tower, FieldElement c) {
  TowerElement x;
  x.tower_ = &tower;
  x.level_ = 0;
  x.scalar_ = tower.base().embed(c);
  return x;
}

TowerElement make_node(const Tower& tower, std::size_t level, std::int64_t val,
                       std::vector<TowerElement> coeffs, std::int64_t prec) {
  if (prec != kExact) {
    const std::int64_t keep = std::max<std::int64_t>(0, prec - val);
    if (static_cast<std::int64_t>(coeffs.size()) > keep) coeffs.resize(keep);
  }
  std::size_t lead = 0;
  while (lead < coeffs.size() && coeffs[lead].is_exact_zero()) ++lead;
  if (lead > 0) {
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
    val += static_cast<std::int64_t>(lead);
  }
  while (!coeffs.empty() && coeffs.back().is_exact_zero()) coeffs.pop_back();
  if (coeffs.empty()) val = 0;
  TowerElement x;
  x.tower_ = &tower;
  x.level_ = level;
  x.val_ = val;
  x.prec_ = prec;
  x.coeffs_ = std::move(coeffs);
  return x;
}

namespace {

TowerElement zero_at(const Tower& tower, std::size_t level) {
  if (level == 0) return make_scalar(tower, tower.base().zero());
  return make_node(tower, level, 0, {}, kExact);
}

// Smallest exponent that may carry a nonzero term.
std::int64_t lower_bound(const TowerElement& x) {
  return x.coefficients().empty() ? x.precision() : x.start();
}

TowerElement coefficient_or_zero(const TowerElement& x, std::int64_t e) {
  const std::int64_t idx = e - x.start();
  if (!x.coefficients().empty() && idx >= 0 && idx < static_cast<std::int64_t>(x.coefficients().size())) {
    return x.coefficients()[idx];
  }
  return zero_at(x.tower(), x.level() - 1);
}

bool is_exact_one(const TowerElement& x) {
  if (x.level() == 0) return x.scalar().is_one();
  return x.precision() == kExact && x.start() == 0 && x.coefficients().size() == 1 &&
         is_exact_one(x.coefficients()[0]);
}

bool is_exact_minus_one(const TowerElement& x) {
  if (x.level() == 0) return (-x.scalar()).is_one();
  return x.precision() == kExact && x.start() == 0 && x.coefficients().size() == 1 &&
         is_exact_minus_one(x.coefficients()[0]);
}

void require_same_tower(const TowerElement& a, const TowerElement& b) {
  if (&a.tower() != &b.tower()) {
    throw DomainError("tower mismatch: " + a.tower().to_string() + " vs " + b.tower().to_string());
  }
}

}  // namespace

// ----------------------------------------------------------------------- Tower

const Tower& Tower::make(const Field& base, std::vector<std::string> variables,
                         std::int64_t precision) {
  if (precision < 1) throw DomainError("precision must be at least 1");
  auto names = base.generator_names();
  for (const auto& v : variables) {
    if (v.empty()) throw DomainError("empty variable name");
    if (std::find(names.begin(), names.end(), v) != names.end()) {
      throw DomainError("variable '" + v + "' is used twice");
    }
    names.push_back(v);
  }
  const std::string descriptor = base.to_string() + tower_suffix(variables);
  const std::string key = descriptor + "#" + std::to_string(precision);
  std::lock_guard lock(tower_mutex());
  auto& slot = tower_registry()[key];
  if (!slot) {
    slot.reset(new Tower());
    slot->base_ = &base;
    slot->variables_ = std::move(variables);
    slot->precision_ = precision;
    slot->descriptor_ = descriptor;
  }
  return *slot;
}

const Tower& Tower::with_precision(std::int64_t precision) const {
  return make(*base_, variables_, precision);
}

std::size_t Tower::level_of(const std::string& variable) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i] == variable) return i + 1;
  }
  return 0;
}

TowerElement Tower::zero() const { return zero_at(*this, 0).lifted(height()); }

TowerElement Tower::one() const { return constant(base_->one()); }

TowerElement Tower::from_int(std::int64_t n) const { return constant(base_->from_int(n)); }

TowerElement Tower::constant(const FieldElement& c) const {
  return make_scalar(*this, c).lifted(height());
}

TowerElement Tower::variable(std::size_t level) const {
  if (level < 1 || level > height()) throw DomainError("variable level out of range");
  TowerElement x = make_node(*this, level, 1, {make_scalar(*this, base_->one()).lifted(level - 1)}, kExact);
  return x.lifted(height());
}

TowerElement Tower::monomial(const FieldElement& c, const std::vector<std::int64_t>& exponents) const {
  if (exponents.size() != height()) throw DomainError("monomial exponent count mismatch");
  TowerElement x = make_scalar(*this, c);
  for (std::size_t level = 1; level <= height(); ++level) {
    x = make_node(*this, level, exponents[height() - level], {x}, kExact);
  }
  return x;
}

TowerElement Tower::big_o(std::size_t level, std::int64_t precision) const {
  if (level < 1 || level > height()) throw DomainError("big-O level out of range");
  return make_node(*this, level, 0, {}, precision).lifted(height());
}

TowerElement Tower::random_polynomial(std::mt19937_64& rng, int terms, std::int64_t lo,
                                      std::int64_t hi) const {
  std::uniform_int_distribution<std::int64_t> exp(lo, hi);
  TowerElement x = zero();
  for (int k = 0; k < terms; ++k) {
    std::vector<std::int64_t> e(height());
    for (auto& v : e) v = exp(rng);
    x += monomial(base_->random_nonzero(rng), e);
  }
  return x;
}

TowerElement Tower::random_unit(std::mt19937_64& rng, int terms) const {
  TowerElement x = constant(base_->random_nonzero(rng));
  if (height() == 0) return x;
  std::uniform_int_distribution<std::int64_t> exp(-2, 3);
  const QVector zero_vec(height(), 0);
  for (int k = 1; k < terms; ++k) {
    std::vector<std::int64_t> e(height());
    QVector q(height());
    for (std::size_t i = 0; i < height(); ++i) {
      e[i] = exp(rng);
      q[i] = static_cast<long>(e[i]);
    }
    if (lex_compare(q, zero_vec) <= 0) continue;
    x += monomial(base_->random_nonzero(rng), e);
  }
  return x;
}

std::string Tower::to_string() const { return descriptor_; }

std::string tower_suffix(const std::vector<std::string>& variables) {
  std::string s;
  for (const auto& v : variables) s += "((" + v + "))";
  return s;
}

// ---------------------------------------------------------------- TowerElement

const Tower& TowerElement::tower() const {
  if (!tower_) throw DomainError("uninitialized series element");
  return *tower_;
}

TowerElement TowerElement::coefficient(std::int64_t e) const {
  if (level_ == 0) throw DomainError("coefficient() on a field element");
  if (e >= prec_) throw PrecisionExhausted("coefficient of exponent " + std::to_string(e) + " is beyond the precision");
  return coefficient_or_zero(*this, e);
}

const FieldElement& TowerElement::scalar() const {
  if (level_ != 0) throw DomainError("scalar() on a series node");
  return scalar_;
}

bool TowerElement::is_exact() const {
  if (level_ == 0) return true;
  if (prec_ != kExact) return false;
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const TowerElement& c) { return c.is_exact(); });
}

bool TowerElement::is_exact_zero() const {
  if (level_ == 0) return scalar_.is_zero();
  return coeffs_.empty() && prec_ == kExact;
}

bool TowerElement::is_certified_nonzero() const {
  if (level_ == 0) return !scalar_.is_zero();
  return std::any_of(coeffs_.begin(), coeffs_.end(),
                     [](const TowerElement& c) { return c.is_certified_nonzero(); });
}

std::optional<std::vector<std::int64_t>> TowerElement::valuation() const {
  if (is_exact_zero()) return std::nullopt;
  if (level_ == 0) return std::vector<std::int64_t>{};
  if (coeffs_.empty()) {
    throw PrecisionExhausted("no certified term below O(" + tower().variables()[level_ - 1] + "^" +
                             std::to_string(prec_) + ")");
  }
  auto inner = coeffs_.front().valuation();
  std::vector<std::int64_t> v{val_};
  v.insert(v.end(), inner->begin(), inner->end());
  return v;
}

QVector TowerElement::valuation_vector() const {
  auto v = valuation();
  if (!v) throw DomainError("valuation of zero is infinite");
  QVector q;
  for (auto e : *v) q.emplace_back(static_cast<long>(e));
  return q;
}

bool TowerElement::valuation_exceeds(const QVector& bound) const {
  if (bound.size() != level_) throw DomainError("valuation bound has the wrong length");
  if (level_ == 0) return scalar_.is_zero();
  if (is_exact_zero()) return true;
  const Rational& b0 = bound.front();
  const QVector rest(bound.begin() + 1, bound.end());
  for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
    const Rational e(static_cast<long>(val_ + static_cast<std::int64_t>(idx)));
    if (e > b0) return true;
    const TowerElement& c = coeffs_[idx];
    if (e < b0) {
      if (c.is_exact_zero()) continue;
      if (c.is_certified_nonzero()) return false;
      throw PrecisionExhausted("valuation comparison undecided at working precision");
    }
    return c.valuation_exceeds(rest);
  }
  if (prec_ == kExact) return true;
  if (Rational(static_cast<long>(prec_)) > b0) return true;
  throw PrecisionExhausted("valuation comparison undecided at working precision");
}

FieldElement TowerElement::residue() const {
  if (level_ == 0) return scalar_;
  if (!coeffs_.empty() && val_ < 0) {
    if (coeffs_.front().is_certified_nonzero()) {
      throw DomainError("residue of an element of negative valuation");
    }
    throw PrecisionExhausted("sign of the valuation is undecided");
  }
  return coefficient(0).residue();
}

FieldElement TowerElement::leading_coefficient() const {
  if (level_ == 0) {
    if (scalar_.is_zero()) throw DomainError("leading coefficient of zero");
    return scalar_;
  }
  if (is_exact_zero()) throw DomainError("leading coefficient of zero");
  if (coeffs_.empty()) throw PrecisionExhausted("leading term is not certified");
  return coeffs_.front().leading_coefficient();
}

TowerElement TowerElement::lifted(std::size_t level) const {
  if (level < level_) throw DomainError("cannot lower the level of a series");
  TowerElement x = *this;
  while (x.level_ < level) x = make_node(*x.tower_, x.level_ + 1, 0, {x}, kExact);
  return x;
}

TowerElement TowerElement::truncated(std::int64_t p) const {
  if (level_ == 0) return *this;
  return make_node(*tower_, level_, val_, coeffs_, std::min(prec_, p));
}

TowerElement TowerElement::operator-() const {
  if (level_ == 0) return make_scalar(*tower_, -scalar_);
  std::vector<TowerElement> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(-x);
  return make_node(*tower_, level_, val_, std::move(c), prec_);
}

TowerElement operator+(const TowerElement& a0, const TowerElement& b0) {
  require_same_tower(a0, b0);
  const std::size_t level = std::max(a0.level_, b0.level_);
  const TowerElement a = a0.lifted(level);
  const TowerElement b = b0.lifted(level);
  const Tower& tower = *a.tower_;
  if (level == 0) return make_scalar(tower, a.scalar_ + b.scalar_);
  const std::int64_t prec = std::min(a.prec_, b.prec_);
  if (a.coeffs_.empty() && b.coeffs_.empty()) return make_node(tower, level, 0, {}, prec);
  const std::int64_t lo = std::min(lower_bound(a), lower_bound(b));
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  for (const TowerElement* x : {&a, &b}) {
    if (!x->coeffs_.empty()) hi = std::max(hi, x->val_ + static_cast<std::int64_t>(x->coeffs_.size()));
  }
  hi = std::min(hi, prec);
  std::vector<TowerElement> c;
  if (hi > lo) c.reserve(static_cast<std::size_t>(hi - lo));
  for (std::int64_t e = lo; e < hi; ++e) c.push_back(coefficient_or_zero(a, e) + coefficient_or_zero(b, e));
  return make_node(tower, level, lo, std::move(c), prec);
}

TowerElement operator-(const TowerElement& a, const TowerElement& b) { return a + (-b); }

TowerElement operator*(const TowerElement& a0, const TowerElement& b0) {
  require_same_tower(a0, b0);
  const std::size_t level = std::max(a0.level_, b0.level_);
  const Tower& tower = *a0.tower_;
  if (level == 0) return make_scalar(tower, a0.scalar_ * b0.scalar_);
  if (a0.is_exact_zero() || b0.is_exact_zero()) return zero_at(tower, level);
  // A lower-level factor is a constant: scale coefficientwise.
  if (a0.level_ < level || b0.level_ < level) {
    const TowerElement& small = a0.level_ < level ? a0 : b0;
    const TowerElement& big = a0.level_ < level ? b0 : a0;
    std::vector<TowerElement> c;
    c.reserve(big.coeffs_.size());
    for (const auto& x : big.coeffs_) c.push_back(small * x);
    std::int64_t prec = big.prec_;
    return make_node(tower, level, big.val_, std::move(c), prec);
  }
  const TowerElement& a = a0;
  const TowerElement& b = b0;
  const std::int64_t prec =
      std::min(sat_add(a.prec_, lower_bound(b)), sat_add(b.prec_, lower_bound(a)));
  if (a.coeffs_.empty() || b.coeffs_.empty()) return make_node(tower, level, 0, {}, prec);
  const std::int64_t val = a.val_ + b.val_;
  std::size_t size = a.coeffs_.size() + b.coeffs_.size() - 1;
  if (prec != kExact) size = std::min<std::size_t>(size, static_cast<std::size_t>(std::max<std::int64_t>(0, prec - val)));
  std::vector<TowerElement> c(size, zero_at(tower, level - 1));
  for (std::size_t i = 0; i < a.coeffs_.size() && i < size; ++i) {
    if (a.coeffs_[i].is_exact_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size() && i + j < size; ++j) {
      if (b.coeffs_[j].is_exact_zero()) continue;
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return make_node(tower, level, val, std::move(c), prec);
}

TowerElement operator*(const FieldElement& s, const TowerElement& a) {
  return make_scalar(a.tower(), s) * a;
}

bool operator==(const TowerElement& a0, const TowerElement& b0) {
  if (a0.tower_ != b0.tower_) return false;
  const std::size_t level = std::max(a0.level_, b0.level_);
  const TowerElement a = a0.lifted(level);
  const TowerElement b = b0.lifted(level);
  if (level == 0) return a.scalar_ == b.scalar_;
  return a.val_ == b.val_ && a.prec_ == b.prec_ && a.coeffs_ == b.coeffs_;
}

TowerElement TowerElement::inv() const {
  const Tower& tw = tower();
  if (level_ == 0) return make_scalar(tw, scalar_.inv());
  if (is_exact_zero()) throw DivisionByZero("inverse of zero series");
  if (coeffs_.empty() || !coeffs_.front().is_certified_nonzero()) {
    throw PrecisionExhausted("leading term of the divisor is not certified");
  }
  const TowerElement u = coeffs_.front().inv();
  if (prec_ == kExact && coeffs_.size() == 1) return make_node(tw, level_, -val_, {u}, kExact);
  std::int64_t rel = tw.precision();
  if (prec_ != kExact) rel = std::min(rel, prec_ - val_);
  std::vector<TowerElement> r;
  r.reserve(static_cast<std::size_t>(rel));
  r.push_back(u);
  for (std::int64_t k = 1; k < rel; ++k) {
    TowerElement s = zero_at(tw, level_ - 1);
    for (std::int64_t j = 1; j <= k; ++j) {
      if (j >= static_cast<std::int64_t>(coeffs_.size())) break;
      if (coeffs_[j].is_exact_zero()) continue;
      s += coeffs_[j] * r[k - j];
    }
    r.push_back(-(u * s));
  }
  return make_node(tw, level_, -val_, std::move(r), -val_ + rel);
}

TowerElement TowerElement::pow(std::int64_t e) const {
  if (e < 0) return inv().pow(-e);
  TowerElement result = make_scalar(tower(), tower().base().one()).lifted(level_);
  TowerElement base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::optional<TowerElement> TowerElement::unit_square_root() const {
  const Tower& tw = tower();
  if (tw.base().characteristic() == 2) throw DomainError("square roots in characteristic 2 are not supported");
  if (level_ == 0) {
    if (scalar_.is_zero()) throw DomainError("square root of a non-unit");
    auto s = square_root(scalar_);
    if (!s) return std::nullopt;
    return make_scalar(tw, *s);
  }
  if (coeffs_.empty() || val_ != 0) throw DomainError("square root of a non-unit");
  auto s0 = coeffs_.front().unit_square_root();
  if (!s0) return std::nullopt;
  if (prec_ == kExact && coeffs_.size() == 1) return make_node(tw, level_, 0, {*s0}, kExact);
  std::int64_t rel = tw.precision();
  if (prec_ != kExact) rel = std::min(rel, prec_);
  const TowerElement half_inv = (tw.base().from_int(2) * *s0).inv();
  std::vector<TowerElement> s{*s0};
  for (std::int64_t k = 1; k < rel; ++k) {
    TowerElement t = coefficient_or_zero(*this, k);
    for (std::int64_t i = 1; i < k; ++i) t -= s[i] * s[k - i];
    s.push_back(t * half_inv);
  }
  return make_node(tw, level_, 0, std::move(s), rel);
}

std::string TowerElement::to_string() const {
  if (level_ == 0) return scalar_.to_string();
  const std::string& var = tower().variables()[level_ - 1];
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
  for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
    const TowerElement& c = coeffs_[idx];
    if (c.is_exact_zero()) continue;
    const std::int64_t e = val_ + static_cast<std::int64_t>(idx);
    std::string cs = c.to_string();
    const bool compound = cs.find(' ') != std::string::npos;
    if (e == 0) {
      append(compound && !out.empty() ? "(" + cs + ")" : cs);
      continue;
    }
    const std::string mono = e == 1 ? var : var + "^" + std::to_string(e);
    if (is_exact_one(c)) {
      append(mono);
    } else if (is_exact_minus_one(c)) {
      append("-" + mono);
    } else {
      append((compound ? "(" + cs + ")" : cs) + "*" + mono);
    }
  }
  if (prec_ != kExact) append("O(" + var + "^" + std::to_string(prec_) + ")");
  return out.empty() ? "0" : out;
}

bool unit_is_square(const TowerElement& u) {
  if (u.tower().base().characteristic() == 2) throw DomainError("unit_is_square: characteristic 2");
  auto v = u.valuation();
  if (!v || std::any_of(v->begin(), v->end(), [](std::int64_t e) { return e != 0; })) {
    throw DomainError("unit_is_square: argument is not a unit");
  }
  return is_square(u.residue());
}

}  // namespace valdiv
