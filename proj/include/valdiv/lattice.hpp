#pragma once

// Finitely generated subgroups of Q^r with the lexicographic order.
//
// Coordinate 0 is the most significant one. Every lattice carries a
// canonical form: the smallest positive integer d with d*L inside Z^r and
// the row Hermite normal form of d*L. Two lattices are equal iff their
// canonical forms agree.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace valdiv {

using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;
using ZMatrix = std::vector<std::vector<Integer>>;

/// Lexicographic comparison, coordinate 0 most significant.
std::strong_ordering lex_compare(const QVector& v, const QVector& w);

QVector operator+(const QVector& v, const QVector& w);
QVector operator-(const QVector& v, const QVector& w);
QVector operator*(const Rational& s, const QVector& v);
std::string to_string(const QVector& v);

/// Row Hermite normal form; zero rows are dropped. Pivots are positive and
/// entries above a pivot lie in [0, pivot).
ZMatrix hermite_normal_form(ZMatrix rows);

/// Diagonal of the Smith normal form of a square integer matrix, with
/// nonnegative entries in divisibility order.
std::vector<Integer> smith_diagonal(ZMatrix m);

class Lattice {
 public:
  Lattice(std::size_t ambient_rank, std::vector<QVector> generators);

  static Lattice trivial(std::size_t ambient_rank);
  static Lattice standard(std::size_t ambient_rank);
  /// (1/n) Z^r.
  static Lattice scaled_standard(std::size_t ambient_rank, const Integer& n);

  std::size_t ambient_rank() const noexcept { return ambient_rank_; }
  const std::vector<QVector>& generators() const noexcept { return generators_; }

  const Integer& denominator() const noexcept { return denominator_; }
  const ZMatrix& integer_rows() const noexcept { return rows_; }
  /// Canonical basis, rows of integer_rows() divided by denominator().
  std::vector<QVector> basis() const;

  std::size_t rank() const noexcept { return rows_.size(); }
  bool contains(const QVector& v) const;
  bool contains(const Lattice& other) const;

  /// Integer coordinates of v in the canonical basis, if v is a member.
  std::optional<std::vector<Integer>> coordinates(const QVector& v) const;

  Lattice canonicalize() const;
  Lattice scaled(const Rational& factor) const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.denominator_ == b.denominator_ &&
           a.rows_ == b.rows_;
  }

  std::string to_string() const;

 private:
  std::size_t ambient_rank_;
  std::vector<QVector> generators_;
  Integer denominator_;
  ZMatrix rows_;
};

/// Finite abelian group given by invariant factors d1 | d2 | ... (each >= 2).
struct QuotientStructure {
  std::vector<Integer> invariant_factors;

  Integer order() const;
  /// dim over F_p of Q/pQ.
  std::size_t p_rank(const Integer& p) const;
  friend bool operator==(const QuotientStructure&, const QuotientStructure&) = default;
  std::string to_string() const;
};

std::size_t rational_rank(const Lattice& lattice);
/// dim over F_q of L/qL, computed from the Smith form of the inclusion qL -> L.
std::size_t q_rank(const Lattice& lattice, std::int64_t q);
/// big/small; requires small inside big with equal rational rank.
QuotientStructure quotient(const Lattice& big, const Lattice& small);
std::size_t torsion_rank(const QuotientStructure& q);
bool is_cyclic(const QuotientStructure& q);
/// L ∩ ({0}^i x Q^(r-i)) for i = 0..r, consecutive duplicates removed.
std::vector<Lattice> convex_chain(const Lattice& lattice);
/// Number of proper convex subgroups.
std::size_t order_rank(const Lattice& lattice);
Lattice sum(const Lattice& a, const Lattice& b);

bool is_prime(std::int64_t n);

void to_json(nlohmann::json& j, const Lattice& lattice);
Lattice lattice_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const QuotientStructure& q);
nlohmann::json integer_to_json(const Integer& z);
Integer integer_from_json(const nlohmann::json& j);

}  // namespace valdiv
