#include "valdiv/symbol_algebra.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "dense_poly.hpp"
#include "valdiv/errors.hpp"

namespace valdiv {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t n) { return ((x % n) + n) % n; }

std::string basis_name(int k, int l) {
  std::string s;
  auto part = [&](const char* g, int e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += g;
    if (e > 1) s += "^" + std::to_string(e);
  };
  part("i", k);
  part("j", l);
  return s;
}

void require_same(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.algebra_ptr() != y.algebra_ptr()) throw DomainError("elements of different algebras");
}

}  // namespace

// ---------------------------------------------------------------------------
// SymbolAlgebra

SymbolAlgebra::Ptr SymbolAlgebra::create(const Tower& tower, int n, const FieldElement& omega,
                                          const TowerElement& a, const TowerElement& b) {
  if (n < 1) throw DomainError("symbol algebra degree must be positive");
  const Field& k = tower.base();
  if (&omega.field() != &k) throw DomainError("omega must lie in the coefficient field " + k.to_string());
  if (k.characteristic() != 0 && n % k.characteristic() == 0)
    throw DomainError("residue characteristic divides the degree");
  if (!omega.pow(n).is_one()) throw DomainError("omega is not an n-th root of unity");
  for (int m = 1; m < n; ++m)
    if (omega.pow(m).is_one()) throw DomainError("omega is not a primitive n-th root of unity");
  if (&a.tower() != &tower || &b.tower() != &tower) throw DomainError("a and b must lie in the base tower");
  if (a.is_zero_to_precision() || b.is_zero_to_precision()) throw DomainError("a and b must be nonzero");

  std::shared_ptr<SymbolAlgebra> alg(new SymbolAlgebra());
  alg->tower_ = &tower;
  alg->n_ = n;
  alg->omega_ = omega;
  alg->a_ = a;
  alg->b_ = b;
  for (int m = 0; m < n; ++m) alg->omega_powers_.push_back(omega.pow(m));
  if (!splitting_relations_hold(*alg)) throw VerificationFailure("splitting representation relations fail");
  return alg;
}

SymbolAlgebra::Ptr SymbolAlgebra::create(const Tower& tower, int n, const TowerElement& a,
                                          const TowerElement& b) {
  return create(tower, n, primitive_root_of_unity(tower.base(), n), a, b);
}

const FieldElement& SymbolAlgebra::omega_power(std::int64_t k) const {
  return omega_powers_[static_cast<std::size_t>(mod(k, n_))];
}

AlgebraElement SymbolAlgebra::zero() const {
  return AlgebraElement(shared_from_this(), std::vector<TowerElement>(n_ * n_, tower_->zero()));
}

AlgebraElement SymbolAlgebra::scalar(const TowerElement& f) const {
  AlgebraElement e = zero();
  e.c_[0] = f.lifted(tower_->height());
  return e;
}

AlgebraElement SymbolAlgebra::one() const { return scalar(tower_->one()); }

AlgebraElement SymbolAlgebra::basis(int k, int l) const {
  if (k < 0 || l < 0 || k >= n_ || l >= n_) throw DomainError("basis index out of range");
  AlgebraElement e = zero();
  e.c_[k * n_ + l] = tower_->one();
  return e;
}

AlgebraElement SymbolAlgebra::i() const { return n_ == 1 ? scalar(a_) : basis(1, 0); }
AlgebraElement SymbolAlgebra::j() const { return n_ == 1 ? scalar(b_) : basis(0, 1); }

AlgebraElement SymbolAlgebra::element(std::vector<TowerElement> coeffs) const {
  if (coeffs.size() != static_cast<std::size_t>(n_ * n_)) throw DomainError("expected n^2 coefficients");
  for (auto& c : coeffs) {
    if (&c.tower() != tower_) throw DomainError("coefficient outside the base tower");
    c = c.lifted(tower_->height());
  }
  return AlgebraElement(shared_from_this(), std::move(coeffs));
}

AlgebraElement SymbolAlgebra::random_element(std::mt19937_64& rng, int terms, std::int64_t lo,
                                             std::int64_t hi) const {
  AlgebraElement e = zero();
  std::bernoulli_distribution coin(0.5);
  for (auto& c : e.c_)
    if (coin(rng)) c = tower_->random_polynomial(rng, terms, lo, hi);
  return e;
}

AlgebraElement SymbolAlgebra::random_monomial(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) const {
  std::uniform_int_distribution<std::int64_t> ex(lo, hi);
  std::uniform_int_distribution<int> idx(0, n_ - 1);
  std::vector<std::int64_t> exps(tower_->height());
  for (auto& x : exps) x = ex(rng);
  const TowerElement f = tower_->monomial(tower_->base().random_nonzero(rng), exps);
  return f * basis(idx(rng), idx(rng));
}

std::string SymbolAlgebra::to_string() const {
  std::ostringstream os;
  os << "symbol(n=" << n_ << ", omega=" << omega_.to_string() << ", a=" << a_.to_string()
     << ", b=" << b_.to_string() << ") over " << tower_->to_string();
  return os.str();
}

SymbolAlgebra::Ptr SymbolAlgebra::mutated() const {
  std::shared_ptr<SymbolAlgebra> alg(new SymbolAlgebra(*this));
  alg->mutant_ = true;
  return alg;
}

// ---------------------------------------------------------------------------
// AlgebraElement

const SymbolAlgebra& AlgebraElement::algebra() const {
  if (!alg_) throw DomainError("uninitialized algebra element");
  return *alg_;
}

const TowerElement& AlgebraElement::coefficient(int k, int l) const {
  const int n = algebra().degree();
  if (k < 0 || l < 0 || k >= n || l >= n) throw DomainError("basis index out of range");
  return c_[k * n + l];
}

bool AlgebraElement::is_exact_zero() const {
  for (const auto& c : c_)
    if (!c.is_exact_zero()) return false;
  return true;
}

bool AlgebraElement::is_zero_to_precision() const {
  for (const auto& c : c_)
    if (!c.is_zero_to_precision()) return false;
  return true;
}

bool AlgebraElement::is_central() const {
  for (std::size_t m = 1; m < c_.size(); ++m)
    if (!c_[m].is_zero_to_precision()) return false;
  return true;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
  require_same(x, y);
  AlgebraElement r = x;
  for (std::size_t m = 0; m < r.c_.size(); ++m) r.c_[m] = r.c_[m] + y.c_[m];
  return r;
}

AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
  require_same(x, y);
  AlgebraElement r = x;
  for (std::size_t m = 0; m < r.c_.size(); ++m) r.c_[m] = r.c_[m] - y.c_[m];
  return r;
}

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
  require_same(x, y);
  const SymbolAlgebra& A = x.algebra();
  const int n = A.n_;
  AlgebraElement r = A.zero();
  // (c i^k j^l)(d i^k' j^l') = c d omega^{l k'} i^{k+k'} j^{l+l'}
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const TowerElement& c = x.c_[k * n + l];
      if (c.is_exact_zero()) continue;
      for (int k2 = 0; k2 < n; ++k2) {
        for (int l2 = 0; l2 < n; ++l2) {
          const TowerElement& d = y.c_[k2 * n + l2];
          if (d.is_exact_zero()) continue;
          const std::int64_t twist = A.mutant_ ? 2 * l * k2 : l * k2;
          TowerElement term = A.omega_power(twist) * (c * d);
          int kk = k + k2, ll = l + l2;
          if (kk >= n) {
            kk -= n;
            term = term * A.a_;
          }
          if (ll >= n) {
            ll -= n;
            term = term * A.b_;
          }
          r.c_[kk * n + ll] += term;
        }
      }
    }
  }
  return r;
}

AlgebraElement operator*(const TowerElement& f, const AlgebraElement& x) {
  AlgebraElement r = x;
  const TowerElement g = f.lifted(x.algebra().tower().height());
  for (auto& c : r.c_)
    if (!c.is_exact_zero()) c = g * c;
  return r;
}

bool operator==(const AlgebraElement& x, const AlgebraElement& y) {
  return x.alg_ == y.alg_ && x.c_ == y.c_;
}

AlgebraElement AlgebraElement::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  AlgebraElement result = algebra().one();
  AlgebraElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

AlgebraElement AlgebraElement::inverse() const {
  const SymbolAlgebra& A = algebra();
  const auto p = prd(*this);
  const int n = A.degree();
  if (p[0].is_exact_zero()) throw DivisionByZero("element has reduced norm zero");
  // e * (e^{n-1} + p_{n-1} e^{n-2} + ... + p_1) = -p_0
  AlgebraElement acc = A.one();
  for (int k = n - 1; k >= 1; --k) acc = acc * *this + A.scalar(p[k]);
  return (-p[0]).inv() * acc;
}

std::string AlgebraElement::to_string() const {
  const int n = algebra().degree();
  const TowerElement one = algebra().tower().one();
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
  // 1, i, j, i*j, i^2, ...: by total degree, then higher powers of i first
  for (int total = 0; total <= 2 * (n - 1); ++total) {
    for (int k = std::min(total, n - 1); k >= 0 && total - k < n; --k) {
      const int l = total - k;
      const TowerElement& c = c_[k * n + l];
      if (c.is_exact_zero()) continue;
      const std::string b = basis_name(k, l);
      const std::string cs = c.to_string();
      const bool compound = cs.find(' ') != std::string::npos;
      if (b.empty()) {
        append(cs);
      } else if (c == one) {
        append(b);
      } else if (c == -one) {
        append("-" + b);
      } else {
        append((compound ? "(" + cs + ")" : cs) + "*" + b);
      }
    }
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Kummer ring F[alpha]/(alpha^n - a)

bool KummerElement::is_exact_zero() const {
  for (const auto& c : c_)
    if (!c.is_exact_zero()) return false;
  return true;
}

bool KummerElement::is_alpha_free() const {
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (!c_[k].is_zero_to_precision()) return false;
  return true;
}

KummerElement operator+(const KummerElement& x, const KummerElement& y) {
  KummerElement r = x;
  for (std::size_t k = 0; k < r.c_.size(); ++k)
    if (!y.c_[k].is_exact_zero()) r.c_[k] = r.c_[k] + y.c_[k];
  return r;
}

KummerElement operator-(const KummerElement& x, const KummerElement& y) {
  KummerElement r = x;
  for (std::size_t k = 0; k < r.c_.size(); ++k)
    if (!y.c_[k].is_exact_zero()) r.c_[k] = r.c_[k] - y.c_[k];
  return r;
}

KummerElement operator*(const KummerElement& x, const KummerElement& y) {
  const std::size_t n = x.c_.size();
  std::vector<TowerElement> r(n, x.alg_->tower().zero());
  std::vector<TowerElement> wrapped(n, x.alg_->tower().zero());
  bool any_wrap = false;
  for (std::size_t p = 0; p < n; ++p) {
    if (x.c_[p].is_exact_zero()) continue;
    for (std::size_t q = 0; q < n; ++q) {
      if (y.c_[q].is_exact_zero()) continue;
      const TowerElement t = x.c_[p] * y.c_[q];
      if (p + q < n) {
        r[p + q] += t;
      } else {
        wrapped[p + q - n] += t;
        any_wrap = true;
      }
    }
  }
  if (any_wrap) {
    for (std::size_t k = 0; k < n; ++k)
      if (!wrapped[k].is_exact_zero()) r[k] += x.alg_->a() * wrapped[k];
  }
  return KummerElement(x.alg_, std::move(r));
}

// ---------------------------------------------------------------------------
// Splitting representation and reduced invariants

namespace {

KummerElement kummer_constant(const SymbolAlgebra& A, const TowerElement& f) {
  std::vector<TowerElement> c(A.degree(), A.tower().zero());
  c[0] = f;
  return KummerElement(&A, std::move(c));
}

TowerElement alpha_free_part(const KummerElement& x, const char* what) {
  if (!x.is_alpha_free()) throw VerificationFailure(std::string(what) + " is not in the base field");
  return x.coordinates()[0];
}

}  // namespace

Matrix<KummerElement> splitting_rep(const AlgebraElement& e) {
  const SymbolAlgebra& A = e.algebra();
  const int n = A.degree();
  const TowerElement zero = A.tower().zero();
  Matrix<KummerElement> m(n, n, kummer_constant(A, zero));
  // rho(i^k j^l)[r][s] = omega^{rk} alpha^k (b if s < r), s = r + l mod n
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      const int l = static_cast<int>(mod(s - r, n));
      std::vector<TowerElement> c(n, zero);
      for (int k = 0; k < n; ++k) {
        const TowerElement& coef = e.coefficient(k, l);
        if (coef.is_exact_zero()) continue;
        TowerElement t = A.omega_power(static_cast<std::int64_t>(r) * k) * coef;
        if (s < r) t = t * A.b();
        c[k] = t;
      }
      m(r, s) = KummerElement(&A, std::move(c));
    }
  }
  return m;
}

bool splitting_relations_hold(const SymbolAlgebra& A) {
  const int n = A.degree();
  if (n == 1) return true;
  const auto zero = kummer_constant(A, A.tower().zero());
  const auto one = kummer_constant(A, A.tower().one());
  const auto I = splitting_rep(A.i());
  const auto J = splitting_rep(A.j());
  auto power = [&](const Matrix<KummerElement>& x) {
    Matrix<KummerElement> r = Matrix<KummerElement>::identity(n, zero, one);
    for (int k = 0; k < n; ++k) r = r * x;
    return r;
  };
  const auto id = Matrix<KummerElement>::identity(n, zero, one);
  const auto omega = kummer_constant(A, A.tower().constant(A.omega()));
  return power(I) == kummer_constant(A, A.a()) * id && power(J) == kummer_constant(A, A.b()) * id &&
         J * I == omega * (I * J);
}

namespace {

using detail::DensePoly;

struct DenseKummer {
  std::vector<DensePoly> c;
  const DensePoly* a;
};

DenseKummer operator+(const DenseKummer& x, const DenseKummer& y) {
  DenseKummer r = x;
  for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] = r.c[k] + y.c[k];
  return r;
}

DenseKummer operator-(const DenseKummer& x, const DenseKummer& y) {
  DenseKummer r = x;
  for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] = r.c[k] - y.c[k];
  return r;
}

DenseKummer operator*(const DenseKummer& x, const DenseKummer& y) {
  const std::size_t n = x.c.size();
  const DensePoly zero = detail::dense_zero(x.a->p, x.a->lo.size());
  std::vector<DensePoly> r(n, zero), wrapped(n, zero);
  bool any_wrap = false;
  for (std::size_t p = 0; p < n; ++p) {
    if (x.c[p].is_zero()) continue;
    for (std::size_t q = 0; q < n; ++q) {
      if (y.c[q].is_zero()) continue;
      if (p + q < n) {
        r[p + q] = r[p + q] + x.c[p] * y.c[q];
      } else {
        wrapped[p + q - n] = wrapped[p + q - n] + x.c[p] * y.c[q];
        any_wrap = true;
      }
    }
  }
  if (any_wrap)
    for (std::size_t k = 0; k < n; ++k)
      if (!wrapped[k].is_zero()) r[k] = r[k] + *x.a * wrapped[k];
  return DenseKummer{std::move(r), x.a};
}

/// Same characteristic polynomial computed on dense residue arrays; only for
/// exact elements over prime fields.
std::optional<std::vector<TowerElement>> prd_dense(const AlgebraElement& e) {
  const SymbolAlgebra& A = e.algebra();
  const int n = A.degree();
  const auto a = detail::to_dense(A.a());
  const auto b = detail::to_dense(A.b());
  if (!a || !b) return std::nullopt;
  std::vector<DensePoly> coef;
  for (const auto& c : e.coefficients()) {
    auto d = detail::to_dense(c);
    if (!d) return std::nullopt;
    coef.push_back(std::move(*d));
  }
  const std::int64_t p = a->p;
  const std::size_t m = A.tower().height();
  const DensePoly zero = detail::dense_zero(p, m);
  auto constant = [&](std::int64_t v) {
    DensePoly r = zero;
    r.ext.assign(m, 1);
    r.c = {((v % p) + p) % p};
    return r;
  };
  const DenseKummer kzero{std::vector<DensePoly>(n, zero), &*a};
  DenseKummer kone = kzero;
  kone.c[0] = constant(1);
  Matrix<DenseKummer> M(n, n, kzero);
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      const int l = static_cast<int>(mod(s - r, n));
      DenseKummer entry = kzero;
      for (int k = 0; k < n; ++k) {
        const DensePoly& c = coef[k * n + l];
        if (c.is_zero()) continue;
        DensePoly t = constant(A.omega_power(static_cast<std::int64_t>(r) * k).residue()) * c;
        if (s < r) t = t * *b;
        entry.c[k] = std::move(t);
      }
      M(r, s) = std::move(entry);
    }
  }
  const auto cp = charpoly(M, kzero, kone);
  std::vector<TowerElement> out;
  for (const auto& x : cp) {
    for (std::size_t k = 1; k < x.c.size(); ++k)
      if (!x.c[k].is_zero()) throw VerificationFailure("reduced characteristic polynomial is not in the base field");
    out.push_back(detail::from_dense(x.c[0], A.tower()));
  }
  return out;
}

}  // namespace

std::vector<TowerElement> prd_generic(const AlgebraElement& e) {
  const SymbolAlgebra& A = e.algebra();
  const auto cp = charpoly(splitting_rep(e), kummer_constant(A, A.tower().zero()),
                           kummer_constant(A, A.tower().one()));
  std::vector<TowerElement> out;
  for (const auto& c : cp) out.push_back(alpha_free_part(c, "reduced characteristic polynomial"));
  return out;
}

std::vector<TowerElement> prd(const AlgebraElement& e) {
  if (auto fast = prd_dense(e)) return *fast;
  return prd_generic(e);
}

TowerElement nrd(const AlgebraElement& e) {
  const auto p = prd(e);
  return e.algebra().degree() % 2 == 0 ? p[0] : -p[0];
}

TowerElement trd(const AlgebraElement& e) {
  const auto p = prd(e);
  return -p[p.size() - 2];
}

AlgebraElement evaluate_polynomial(const std::vector<TowerElement>& p, const AlgebraElement& e) {
  const SymbolAlgebra& A = e.algebra();
  AlgebraElement acc = A.zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * e + A.scalar(*it);
  return acc;
}

Matrix<TowerElement> left_regular_matrix(const AlgebraElement& e) {
  const SymbolAlgebra& A = e.algebra();
  const int n = A.degree();
  const std::size_t N = static_cast<std::size_t>(n * n);
  Matrix<TowerElement> m(N, N, A.tower().zero());
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const auto col = e * A.basis(k, l);
      for (std::size_t r = 0; r < N; ++r) m(r, k * n + l) = col.coefficients()[r];
    }
  }
  return m;
}

std::optional<AlgebraElement> inverse_by_linear_solve(const AlgebraElement& e) {
  const SymbolAlgebra& A = e.algebra();
  const TowerElement zero = A.tower().zero();
  const TowerElement one = A.tower().one();
  const auto L = left_regular_matrix(e);
  const TowerElement det = det_berkowitz(L, zero, one);
  if (det.is_exact_zero()) return std::nullopt;
  const TowerElement det_inv = det.inv();
  // Solve L x = coordinates of 1 by Cramer's rule.
  const std::size_t N = L.rows();
  std::vector<TowerElement> x(N, zero);
  for (std::size_t c = 0; c < N; ++c) {
    Matrix<TowerElement> M = L;
    for (std::size_t r = 0; r < N; ++r) M(r, c) = r == 0 ? one : zero;
    const TowerElement d = det_berkowitz(M, zero, one);
    if (!d.is_exact_zero()) x[c] = d * det_inv;
  }
  return A.element(std::move(x));
}

QVector v_D(const AlgebraElement& e) {
  const TowerElement N = nrd(e);
  if (N.is_exact_zero()) throw DomainError("v_D of an element with zero reduced norm");
  QVector v = N.valuation_vector();
  for (auto& x : v) x /= e.algebra().degree();
  return v;
}

Lattice value_group(const SymbolAlgebra& alg) {
  const std::size_t m = alg.tower().height();
  std::vector<QVector> gens;
  for (std::size_t k = 0; k < m; ++k) {
    QVector u(m, 0);
    u[k] = 1;
    gens.push_back(u);
  }
  gens.push_back(v_D(alg.i()));
  gens.push_back(v_D(alg.j()));
  return Lattice(m, gens);
}

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::False: return "false";
    case Tristate::True: return "true";
    default: return "unknown";
  }
}

std::string RamificationReport::class_name() const {
  std::string s = is_tame ? "tame " : "";
  if (dimension == 1) return s + "trivial";
  if (is_totally_ramified) return s + "totally ramified";
  if (is_semiramified) return s + "semiramified";
  if (is_inertial) return s + "inertial";
  if (is_division == Tristate::False) return "split";
  return s + "mixed";
}

namespace {

bool even_valuation(const TowerElement& f) {
  for (const auto& x : f.valuation_vector())
    if (mpz_class(x.get_num()) % 2 != 0 || x.get_den() != 1) return false;
  return true;
}

/// Quaternion division test from leading coefficients and valuation parities.
std::pair<Tristate, std::string> quaternion_division(const SymbolAlgebra& A) {
  const TowerElement& a = A.a();
  const TowerElement& b = A.b();
  const bool ea = even_valuation(a), eb = even_valuation(b);
  const FieldElement la = a.leading_coefficient(), lb = b.leading_coefficient();
  const Field& k = A.tower().base();
  auto nonsquare = [&](const FieldElement& x, const char* why) -> std::pair<Tristate, std::string> {
    try {
      return {is_square(x) ? Tristate::False : Tristate::True, why};
    } catch (const DomainError&) {
      return {Tristate::Unknown, "square classes of the residue field are not computable"};
    }
  };
  if (ea && eb) {
    if (k.is_finite()) return {Tristate::False, "unramified quaternion algebra over a finite residue field"};
    if (k.kind() == Field::Kind::Rational)
      return {rational_quaternion_is_division(la.rational(), lb.rational()) ? Tristate::True : Tristate::False,
              "Hilbert symbols of the residue quaternion algebra"};
    return {Tristate::Unknown, "residue quaternion algebra over a number field"};
  }
  if (ea) return nonsquare(la, "unit slot residue is a non-square");
  if (eb) return nonsquare(lb, "unit slot residue is a non-square");
  // v(a) = v(b) mod 2: (a, b) = (a, -ab) with -ab of even value.
  return nonsquare(-(la * lb), "residue of -ab is a non-square");
}

}  // namespace

RamificationReport classify(const SymbolAlgebra& alg) {
  RamificationReport r;
  const int n = alg.degree();
  const std::size_t m = alg.tower().height();
  r.dimension = n * n;
  r.value_group = value_group(alg);
  const Lattice gamma_f = Lattice::standard(m);
  if (!r.value_group.contains(gamma_f)) throw VerificationFailure("value group does not contain Gamma_F");
  r.grade_quotient = quotient(r.value_group, gamma_f);
  r.index = r.grade_quotient.order();
  r.defect = 1;
  r.residue_characteristic = alg.tower().base().characteristic();
  if (Integer(r.dimension) % r.index != 0) throw VerificationFailure("fundamental inequality violated");
  r.residue_degree = Integer(r.dimension) / r.index;
  if (r.residue_degree * r.index * r.defect != r.dimension) throw VerificationFailure("inconsistent report");
  r.is_defectless = true;
  r.is_tame = r.residue_characteristic == 0 || n % r.residue_characteristic != 0;

  if (n == 1) {
    r.is_division = Tristate::True;
    r.division_reason = "degree one";
  } else if (r.index == r.dimension) {
    r.is_division = Tristate::True;
    r.division_reason = "totally ramified: the values of i and j are independent modulo Gamma_F";
  } else if (n == 2) {
    std::tie(r.is_division, r.division_reason) = quaternion_division(alg);
  } else {
    r.is_division = Tristate::Unknown;
    r.division_reason = "no division criterion for this ramification pattern";
  }
  r.is_totally_ramified = r.index == r.dimension;
  r.is_semiramified = r.is_division == Tristate::True && r.index == n && r.residue_degree == n;
  r.is_inertial = r.is_division == Tristate::True && r.index == 1;
  if (r.is_totally_ramified && (r.residue_degree != 1 || r.defect != 1))
    throw VerificationFailure("totally ramified report with nontrivial residue degree");
  return r;
}

void to_json(nlohmann::json& j, const RamificationReport& r) {
  j = nlohmann::json{
      {"dimension", r.dimension},
      {"index", integer_to_json(r.index)},
      {"residue_degree", integer_to_json(r.residue_degree)},
      {"defect", integer_to_json(r.defect)},
      {"residue_characteristic", r.residue_characteristic},
      {"flags",
       {{"defectless", r.is_defectless},
        {"tame", r.is_tame},
        {"totally_ramified", r.is_totally_ramified},
        {"semiramified", r.is_semiramified},
        {"inertial", r.is_inertial}}},
      {"class", r.class_name()},
      {"value_group", r.value_group},
      {"grade_quotient", r.grade_quotient},
  };
  if (r.is_division == Tristate::Unknown) {
    j["is_division"] = "unknown";
  } else {
    j["is_division"] = r.is_division == Tristate::True;
  }
  j["division_reason"] = r.division_reason;
}

bool quaternion_is_division(const TowerElement& u, const TowerElement& t) {
  const auto vu = u.valuation();
  if (!vu) throw DomainError("u must be a unit");
  for (auto x : *vu)
    if (x != 0) throw DomainError("u must be a unit");
  if (t.is_exact_zero()) throw DomainError("t must be nonzero");
  if (even_valuation(t)) throw DomainError("v(t) must lie outside 2*Gamma_F");
  return !unit_is_square(u);
}

// ---------------------------------------------------------------------------
// Hilbert symbols over Q

namespace {

/// Square-free integer in the square class of q.
mpz_class square_free_part(const mpq_class& q, std::vector<mpz_class>& primes) {
  mpz_class x = q.get_num() * q.get_den();
  const int sign = sgn(x);
  x = abs(x);
  mpz_class out = 1;
  for (mpz_class p = 2; p * p <= x; ++p) {
    if (p > 1000000) throw DomainError("rational too large to factor");
    int e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    if (e % 2) out *= p;
    if (e) primes.push_back(p);
  }
  if (x > 1) {
    out *= x;
    primes.push_back(x);
  }
  return sign * out;
}

int legendre(const mpz_class& a, const mpz_class& p) { return mpz_legendre(a.get_mpz_t(), p.get_mpz_t()); }

int hilbert_symbol(mpz_class a, mpz_class b, const mpz_class& p) {
  int alpha = 0, beta = 0;
  while (a % p == 0) {
    a /= p;
    ++alpha;
  }
  while (b % p == 0) {
    b /= p;
    ++beta;
  }
  if (p == 2) {
    auto eps = [](const mpz_class& u) -> int {
      mpz_class r = ((u % 4) + 4) % 4;
      return r == 3 ? 1 : 0;
    };
    auto omg = [](const mpz_class& u) -> int {
      mpz_class r = ((u % 8) + 8) % 8;
      return (r == 3 || r == 5) ? 1 : 0;
    };
    const int e = eps(a) * eps(b) + alpha * omg(b) + beta * omg(a);
    return e % 2 ? -1 : 1;
  }
  const mpz_class half = (p - 1) / 2;
  int s = (alpha * beta % 2 == 1 && half % 2 == 1) ? -1 : 1;
  if (beta % 2) s *= legendre(a, p);
  if (alpha % 2) s *= legendre(b, p);
  return s;
}

}  // namespace

bool rational_quaternion_is_division(const mpq_class& a, const mpq_class& b) {
  if (a == 0 || b == 0) throw DomainError("quaternion slots must be nonzero");
  std::vector<mpz_class> primes{2};
  const mpz_class sa = square_free_part(a, primes);
  const mpz_class sb = square_free_part(b, primes);
  if (sa < 0 && sb < 0) return true;
  for (const auto& p : primes)
    if (hilbert_symbol(sa, sb, p) == -1) return true;
  return false;
}

}  // namespace valdiv
