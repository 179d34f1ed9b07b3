#pragma once

// Symbol algebras (a, b)_{omega, n} over a Laurent tower F: generated by i, j
// with i^n = a, j^n = b and j*i = omega*i*j. Elements are kept in the normal
// form sum c_{kl} i^k j^l, 0 <= k, l < n.
//
// The reduced norm, trace and characteristic polynomial come from the
// splitting representation over L = F[alpha]/(alpha^n - a):
//   i -> diag(alpha, omega*alpha, ..., omega^{n-1}*alpha),
//   j -> cyclic shift with a single entry b in the wrap-around position.

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "valdiv/lattice.hpp"
#include "valdiv/matrix.hpp"
#include "valdiv/tower.hpp"

namespace valdiv {

class AlgebraElement;

class SymbolAlgebra : public std::enable_shared_from_this<SymbolAlgebra> {
 public:
  using Ptr = std::shared_ptr<const SymbolAlgebra>;

  static Ptr create(const Tower& tower, int n, const FieldElement& omega, const TowerElement& a,
                    const TowerElement& b);
  /// omega = primitive_root_of_unity(base, n).
  static Ptr create(const Tower& tower, int n, const TowerElement& a, const TowerElement& b);

  const Tower& tower() const noexcept { return *tower_; }
  int degree() const noexcept { return n_; }
  const FieldElement& omega() const noexcept { return omega_; }
  const TowerElement& a() const noexcept { return a_; }
  const TowerElement& b() const noexcept { return b_; }
  /// omega^k for any integer k.
  const FieldElement& omega_power(std::int64_t k) const;

  AlgebraElement zero() const;
  AlgebraElement one() const;
  AlgebraElement scalar(const TowerElement& f) const;
  AlgebraElement i() const;
  AlgebraElement j() const;
  /// i^k j^l for 0 <= k, l < n.
  AlgebraElement basis(int k, int l) const;
  /// Coefficients indexed k*n + l.
  AlgebraElement element(std::vector<TowerElement> coeffs) const;

  /// Each coefficient nonzero with probability 1/2, a sparse random Laurent
  /// polynomial with `terms` monomials and exponents in [lo, hi].
  AlgebraElement random_element(std::mt19937_64& rng, int terms = 2, std::int64_t lo = -1,
                                std::int64_t hi = 2) const;
  /// f * i^k j^l with f a random monomial.
  AlgebraElement random_monomial(std::mt19937_64& rng, std::int64_t lo = -2, std::int64_t hi = 2) const;

  /// "symbol(n=2, omega=4, a=2, b=t) over F5((t))".
  std::string to_string() const;

  /// Deliberately breaks j*i = omega*i*j (uses omega^2); for mutation tests.
  Ptr mutated() const;

 private:
  SymbolAlgebra() = default;
  const Tower* tower_ = nullptr;
  int n_ = 0;
  FieldElement omega_;
  TowerElement a_;
  TowerElement b_;
  std::vector<FieldElement> omega_powers_;
  bool mutant_ = false;
  friend class AlgebraElement;
  friend AlgebraElement operator*(const AlgebraElement&, const AlgebraElement&);
};

class AlgebraElement {
 public:
  AlgebraElement() = default;

  const SymbolAlgebra& algebra() const;
  const SymbolAlgebra::Ptr& algebra_ptr() const noexcept { return alg_; }
  const TowerElement& coefficient(int k, int l) const;
  const std::vector<TowerElement>& coefficients() const noexcept { return c_; }

  bool is_exact_zero() const;
  bool is_zero_to_precision() const;
  /// Only the i^0 j^0 coefficient can be nonzero.
  bool is_central() const;

  AlgebraElement operator-() const;
  friend AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y);
  friend AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y);
  friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y);
  friend AlgebraElement operator*(const TowerElement& f, const AlgebraElement& x);
  friend bool operator==(const AlgebraElement& x, const AlgebraElement& y);

  AlgebraElement pow(std::int64_t e) const;
  /// Cayley-Hamilton inverse; throws DivisionByZero when nrd is exactly 0.
  AlgebraElement inverse() const;

  std::string to_string() const;

 private:
  friend class SymbolAlgebra;
  AlgebraElement(SymbolAlgebra::Ptr alg, std::vector<TowerElement> c) : alg_(std::move(alg)), c_(std::move(c)) {}
  SymbolAlgebra::Ptr alg_;
  std::vector<TowerElement> c_;
};

/// Element of L = F[alpha]/(alpha^n - a), coordinates low degree first.
class KummerElement {
 public:
  KummerElement(const SymbolAlgebra* alg, std::vector<TowerElement> c) : alg_(alg), c_(std::move(c)) {}
  const std::vector<TowerElement>& coordinates() const noexcept { return c_; }
  bool is_exact_zero() const;
  /// Coordinates beyond the constant term vanish to precision.
  bool is_alpha_free() const;

  friend KummerElement operator+(const KummerElement& x, const KummerElement& y);
  friend KummerElement operator-(const KummerElement& x, const KummerElement& y);
  friend KummerElement operator*(const KummerElement& x, const KummerElement& y);
  friend bool operator==(const KummerElement& x, const KummerElement& y) { return x.c_ == y.c_; }

 private:
  const SymbolAlgebra* alg_;
  std::vector<TowerElement> c_;
};

Matrix<KummerElement> splitting_rep(const AlgebraElement& e);
/// The three defining relations hold for the images of i and j.
bool splitting_relations_hold(const SymbolAlgebra& alg);

TowerElement nrd(const AlgebraElement& e);
TowerElement trd(const AlgebraElement& e);
/// Reduced characteristic polynomial, low degree first, monic of degree n.
std::vector<TowerElement> prd(const AlgebraElement& e);
/// prd without the dense fast path for exact elements over prime fields.
std::vector<TowerElement> prd_generic(const AlgebraElement& e);
/// sum_k p_k e^k.
AlgebraElement evaluate_polynomial(const std::vector<TowerElement>& p, const AlgebraElement& e);

/// Matrix of y -> e*y on the basis i^k j^l (column m = coefficients of e*basis_m).
Matrix<TowerElement> left_regular_matrix(const AlgebraElement& e);
/// Inverse by Cramer's rule on the left-regular matrix; nullopt when that
/// matrix is exactly singular.
std::optional<AlgebraElement> inverse_by_linear_solve(const AlgebraElement& e);

/// v_D(e) = v(nrd(e)) / n.
QVector v_D(const AlgebraElement& e);
/// Lattice generated by Z^m, v_D(i) and v_D(j).
Lattice value_group(const SymbolAlgebra& alg);

enum class Tristate { False, True, Unknown };
std::string to_string(Tristate t);

struct RamificationReport {
  int dimension = 0;
  Lattice value_group{0, {}};
  QuotientStructure grade_quotient;
  Integer index;
  Integer residue_degree;
  Integer defect;
  std::int64_t residue_characteristic = 0;
  bool is_defectless = false;
  bool is_totally_ramified = false;
  bool is_semiramified = false;
  bool is_tame = false;
  bool is_inertial = false;
  Tristate is_division = Tristate::Unknown;
  std::string division_reason;

  /// "tame totally ramified", "semiramified", ...
  std::string class_name() const;
};

RamificationReport classify(const SymbolAlgebra& alg);
void to_json(nlohmann::json& j, const RamificationReport& r);

/// Division test for (u, t) with u a unit and v(t) outside 2*Gamma_F:
/// division iff u is not a square.
bool quaternion_is_division(const TowerElement& u, const TowerElement& t);

/// Hilbert-symbol test for quaternion algebras (a, b) over Q.
bool rational_quaternion_is_division(const mpq_class& a, const mpq_class& b);

}  // namespace valdiv
