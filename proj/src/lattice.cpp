#include "valdiv/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "valdiv/errors.hpp"

namespace valdiv {

namespace {

void require_same_rank(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DomainError("ambient rank mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

void axpy_row(std::vector<Integer>& target, const Integer& s, const std::vector<Integer>& src) {
  if (s == 0) return;
  for (std::size_t c = 0; c < target.size(); ++c) target[c] += s * src[c];
}

std::size_t pivot_column(const std::vector<Integer>& row) {
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (row[c] != 0) return c;
  }
  return row.size();
}

}  // namespace

std::strong_ordering lex_compare(const QVector& v, const QVector& w) {
  require_same_rank(v.size(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < w[i]) return std::strong_ordering::less;
    if (v[i] > w[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

QVector operator+(const QVector& v, const QVector& w) {
  require_same_rank(v.size(), w.size());
  QVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] + w[i];
  return r;
}

QVector operator-(const QVector& v, const QVector& w) {
  require_same_rank(v.size(), w.size());
  QVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] - w[i];
  return r;
}

QVector operator*(const Rational& s, const QVector& v) {
  QVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

std::string to_string(const QVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i].get_str();
  }
  os << ')';
  return os.str();
}

ZMatrix hermite_normal_form(ZMatrix a) {
  if (a.empty()) return a;
  const std::size_t cols = a.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    // Euclid on column `col` among rows >= row until a single nonzero remains.
    while (true) {
      std::size_t best = a.size();
      for (std::size_t r = row; r < a.size(); ++r) {
        if (a[r][col] == 0) continue;
        if (best == a.size() || abs(a[r][col]) < abs(a[best][col])) best = r;
      }
      if (best == a.size()) break;
      std::swap(a[row], a[best]);
      bool done = true;
      for (std::size_t r = row + 1; r < a.size(); ++r) {
        if (a[r][col] == 0) continue;
        Integer q = floor_div(a[r][col], a[row][col]);
        axpy_row(a[r], -q, a[row]);
        if (a[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (a[row][col] == 0) continue;
    if (a[row][col] < 0) {
      for (auto& x : a[row]) x = -x;
    }
    for (std::size_t r = 0; r < row; ++r) {
      Integer q = floor_div(a[r][col], a[row][col]);
      axpy_row(a[r], -q, a[row]);
    }
    ++row;
  }
  a.resize(row);
  return a;
}

std::vector<Integer> smith_diagonal(ZMatrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw DomainError("smith_diagonal: matrix is not square");
  }
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = n, pc = n;
      for (std::size_t r = t; r < n; ++r) {
        for (std::size_t c = t; c < n; ++c) {
          if (m[r][c] == 0) continue;
          if (pr == n || abs(m[r][c]) < abs(m[pr][pc])) {
            pr = r;
            pc = c;
          }
        }
      }
      if (pr == n) break;
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t r = t + 1; r < n; ++r) {
        if (m[r][t] == 0) continue;
        Integer q = floor_div(m[r][t], m[t][t]);
        axpy_row(m[r], -q, m[t]);
        if (m[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (m[t][c] == 0) continue;
        Integer q = floor_div(m[t][c], m[t][t]);
        for (std::size_t r = 0; r < n; ++r) m[r][c] -= q * m[r][t];
        if (m[t][c] != 0) clean = false;
      }
      if (!clean) continue;
      // The pivot must divide the rest of the block; otherwise fold a
      // violating row into row t and go again.
      std::size_t bad = n;
      for (std::size_t r = t + 1; r < n && bad == n; ++r) {
        for (std::size_t c = t + 1; c < n; ++c) {
          if (m[r][c] % m[t][t] != 0) {
            bad = r;
            break;
          }
        }
      }
      if (bad == n) break;
      axpy_row(m[t], Integer(1), m[bad]);
    }
  }
  std::vector<Integer> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = abs(m[i][i]);
  // Enforce the divisibility chain (zeros sort last).
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i] == 0 && d[j] != 0) {
        std::swap(d[i], d[j]);
        continue;
      }
      if (d[j] == 0) continue;
      Integer g = gcd(d[i], d[j]);
      Integer l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  }
  return d;
}

Lattice::Lattice(std::size_t ambient_rank, std::vector<QVector> generators)
    : ambient_rank_(ambient_rank), generators_(std::move(generators)), denominator_(1) {
  for (const auto& g : generators_) require_same_rank(g.size(), ambient_rank_);
  Integer d = 1;
  for (const auto& g : generators_) {
    for (const auto& x : g) d = lcm(d, x.get_den());
  }
  ZMatrix rows;
  rows.reserve(generators_.size());
  for (const auto& g : generators_) {
    std::vector<Integer> row(ambient_rank_);
    for (std::size_t c = 0; c < ambient_rank_; ++c) {
      Rational scaled = g[c] * Rational(d);
      scaled.canonicalize();
      row[c] = scaled.get_num();
    }
    rows.push_back(std::move(row));
  }
  rows = hermite_normal_form(std::move(rows));
  Integer content = d;
  for (const auto& row : rows) {
    for (const auto& x : row) content = gcd(content, x);
  }
  if (content > 1) {
    d /= content;
    for (auto& row : rows) {
      for (auto& x : row) x /= content;
    }
  }
  denominator_ = rows.empty() ? Integer(1) : d;
  rows_ = std::move(rows);
}

Lattice Lattice::trivial(std::size_t ambient_rank) { return Lattice(ambient_rank, {}); }

Lattice Lattice::standard(std::size_t ambient_rank) { return scaled_standard(ambient_rank, 1); }

Lattice Lattice::scaled_standard(std::size_t ambient_rank, const Integer& n) {
  if (n <= 0) throw DomainError("scaled_standard: n must be positive");
  std::vector<QVector> gens;
  for (std::size_t i = 0; i < ambient_rank; ++i) {
    QVector v(ambient_rank, Rational(0));
    v[i] = Rational(Integer(1), n);
    v[i].canonicalize();
    gens.push_back(std::move(v));
  }
  return Lattice(ambient_rank, std::move(gens));
}

std::vector<QVector> Lattice::basis() const {
  std::vector<QVector> out;
  for (const auto& row : rows_) {
    QVector v(ambient_rank_);
    for (std::size_t c = 0; c < ambient_rank_; ++c) {
      v[c] = Rational(row[c], denominator_);
      v[c].canonicalize();
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<Integer>> Lattice::coordinates(const QVector& v) const {
  require_same_rank(v.size(), ambient_rank_);
  // Work with w = d*v; rows_ are in echelon form, so forward substitution on
  // the pivot columns determines the only candidate coefficients.
  QVector w(ambient_rank_);
  for (std::size_t c = 0; c < ambient_rank_; ++c) w[c] = v[c] * Rational(denominator_);
  std::vector<Integer> coeffs;
  coeffs.reserve(rows_.size());
  for (const auto& row : rows_) {
    const std::size_t pc = pivot_column(row);
    Rational q = w[pc] / Rational(row[pc]);
    if (q.get_den() != 1) return std::nullopt;
    const Integer qi = q.get_num();
    for (std::size_t c = 0; c < ambient_rank_; ++c) w[c] -= Rational(qi * row[c]);
    coeffs.push_back(qi);
  }
  for (const auto& x : w) {
    if (x != 0) return std::nullopt;
  }
  return coeffs;
}

bool Lattice::contains(const QVector& v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& other) const {
  require_same_rank(other.ambient_rank_, ambient_rank_);
  return std::all_of(other.generators_.begin(), other.generators_.end(),
                     [&](const QVector& g) { return contains(g); });
}

Lattice Lattice::canonicalize() const { return Lattice(ambient_rank_, basis()); }

Lattice Lattice::scaled(const Rational& factor) const {
  std::vector<QVector> gens;
  for (const auto& g : generators_) gens.push_back(factor * g);
  return Lattice(ambient_rank_, std::move(gens));
}

std::string Lattice::to_string() const {
  std::ostringstream os;
  os << "<";
  auto b = basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) os << ", ";
    os << valdiv::to_string(b[i]);
  }
  os << "> in Q^" << ambient_rank_;
  return os.str();
}

Integer QuotientStructure::order() const {
  Integer o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

std::size_t QuotientStructure::p_rank(const Integer& p) const {
  return static_cast<std::size_t>(std::count_if(invariant_factors.begin(), invariant_factors.end(),
                                                [&](const Integer& d) { return d % p == 0; }));
}

std::string QuotientStructure::to_string() const {
  if (invariant_factors.empty()) return "trivial";
  std::ostringstream os;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    if (i) os << " x ";
    os << "Z/" << invariant_factors[i].get_str();
  }
  return os.str();
}

std::size_t rational_rank(const Lattice& lattice) { return lattice.rank(); }

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::size_t q_rank(const Lattice& lattice, std::int64_t q) {
  if (!is_prime(q)) throw DomainError("q_rank: " + std::to_string(q) + " is not prime");
  QuotientStructure s = quotient(lattice, lattice.scaled(Rational(q)));
  return s.p_rank(Integer(q));
}

QuotientStructure quotient(const Lattice& big, const Lattice& small) {
  require_same_rank(big.ambient_rank(), small.ambient_rank());
  if (big.rank() != small.rank()) {
    throw DomainError("quotient: infinite index (rational ranks " + std::to_string(big.rank()) +
                      " and " + std::to_string(small.rank()) + ")");
  }
  ZMatrix change;
  for (const auto& v : small.basis()) {
    auto c = big.coordinates(v);
    if (!c) throw DomainError("quotient: " + to_string(v) + " is not in the larger lattice");
    change.push_back(std::move(*c));
  }
  QuotientStructure out;
  for (auto& d : smith_diagonal(std::move(change))) {
    if (d == 0) throw VerificationFailure("quotient: singular change of basis");
    if (d != 1) out.invariant_factors.push_back(d);
  }
  return out;
}

std::size_t torsion_rank(const QuotientStructure& q) { return q.invariant_factors.size(); }

bool is_cyclic(const QuotientStructure& q) { return torsion_rank(q) <= 1; }

std::vector<Lattice> convex_chain(const Lattice& lattice) {
  const std::size_t r = lattice.ambient_rank();
  std::vector<Lattice> chain;
  for (std::size_t i = 0; i <= r; ++i) {
    // Echelon rows whose pivot is at column >= i span the intersection.
    std::vector<QVector> gens;
    auto basis = lattice.basis();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (pivot_column(lattice.integer_rows()[k]) >= i) gens.push_back(basis[k]);
    }
    Lattice sub(r, std::move(gens));
    if (chain.empty() || !(chain.back() == sub)) chain.push_back(std::move(sub));
  }
  return chain;
}

std::size_t order_rank(const Lattice& lattice) { return convex_chain(lattice).size() - 1; }

Lattice sum(const Lattice& a, const Lattice& b) {
  require_same_rank(a.ambient_rank(), b.ambient_rank());
  std::vector<QVector> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Lattice(a.ambient_rank(), std::move(gens));
}

nlohmann::json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(j.get<long>());
}

void to_json(nlohmann::json& j, const Lattice& lattice) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : lattice.integer_rows()) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(integer_to_json(x));
    rows.push_back(std::move(r));
  }
  j = nlohmann::json{{"ambient_rank", lattice.ambient_rank()},
                     {"denominator", integer_to_json(lattice.denominator())},
                     {"integer_rows", std::move(rows)}};
}

Lattice lattice_from_json(const nlohmann::json& j) {
  const auto r = j.at("ambient_rank").get<std::size_t>();
  const Integer d = integer_from_json(j.at("denominator"));
  if (d <= 0) throw DomainError("lattice json: denominator must be positive");
  std::vector<QVector> gens;
  for (const auto& row : j.at("integer_rows")) {
    if (row.size() != r) throw DomainError("lattice json: row length differs from ambient_rank");
    QVector v(r);
    for (std::size_t c = 0; c < r; ++c) {
      v[c] = Rational(integer_from_json(row[c]), d);
      v[c].canonicalize();
    }
    gens.push_back(std::move(v));
  }
  return Lattice(r, std::move(gens));
}

void to_json(nlohmann::json& j, const QuotientStructure& q) {
  nlohmann::json f = nlohmann::json::array();
  for (const auto& d : q.invariant_factors) f.push_back(integer_to_json(d));
  j = nlohmann::json{{"invariant_factors", std::move(f)}, {"order", integer_to_json(q.order())}};
}

}  // namespace valdiv
