#pragma once

// The associated graded ring gr(D) of the valuation filtration, viewed
// through leading images: a homogeneous element is a grade gamma together
// with a representative of value gamma, and two of them agree when their
// difference has strictly larger value.

#include <optional>
#include <string>

#include "valdiv/symbol_algebra.hpp"
#include "valdiv/twisted.hpp"

namespace valdiv {

class HomogeneousElement {
 public:
  HomogeneousElement(QVector grade, AlgebraElement representative)
      : grade_(std::move(grade)), rep_(std::move(representative)) {}

  const QVector& grade() const noexcept { return grade_; }
  const AlgebraElement& representative() const noexcept { return rep_; }

  /// Throws PrecisionExhausted when the difference vanishes to precision
  /// without being exactly zero.
  friend bool operator==(const HomogeneousElement& x, const HomogeneousElement& y);

  /// "[grade=(0,1/4)] i + O(>grade)".
  std::string to_string() const;

 private:
  QVector grade_;
  AlgebraElement rep_;
};

/// Leading image of a nonzero element.
HomogeneousElement tilde(const AlgebraElement& e);
HomogeneousElement homog_mul(const HomogeneousElement& x, const HomogeneousElement& y);
/// Inverse class of grade -gamma, verified against tilde(1).
HomogeneousElement homog_inverse(const HomogeneousElement& x);

struct GradedAlgebraView {
  SymbolAlgebra::Ptr algebra;
  Lattice grade_group{0, {}};
  Integer zero_component_degree;
  Integer index;

  /// v_D(e) >= 0.
  bool in_valuation_ring(const AlgebraElement& e) const;
  /// v_D(e) > 0.
  bool in_maximal_ideal(const AlgebraElement& e) const;
};

GradedAlgebraView graded_view(const SymbolAlgebra::Ptr& alg);
/// [gr(D) : gr(F)] = [D-bar : F-bar] * |Gamma_D : Gamma_F|.
Integer graded_dimension(const GradedAlgebraView& view);

/// Some f * i^k j^l with v_D = gamma, f a monomial of the base tower.
std::optional<AlgebraElement> monomial_representative(const SymbolAlgebra& alg, const QVector& gamma);

/// theta(gamma)(x-bar) = class of d x d^{-1} in D_0 for a monomial d of value
/// gamma; x must have value 0. Throws DomainError when gamma has no monomial
/// representative.
HomogeneousElement theta(const SymbolAlgebra& alg, const QVector& gamma, const AlgebraElement& x);

/// theta(k)(w) for the twisted series ring: residue of t^k w t^{-k}.
FieldElement theta_twisted(const FieldAutomorphism& sigma, std::int64_t k, const FieldElement& w);

/// v(nrd(rep)) = n * grade.
bool nrd_grade_check(const HomogeneousElement& h);

}  // namespace valdiv
