#pragma once

// Norm-one elements, commutators and constructive commutator decompositions
// (Hilbert 90 inside a cyclic subfield combined with a Skolem-Noether
// conjugator), the kappa map on pairs of grades, the zeta quantity and the
// SK_1 verdict engine.

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "valdiv/profile.hpp"
#include "valdiv/symbol_algebra.hpp"
#include "valdiv/twisted.hpp"

namespace valdiv {

struct NormOneElement {
  AlgebraElement element;
  /// The computed reduced norm; nrd - 1 vanishes to its precision.
  TowerElement reduced_norm;
  bool exact = false;
};

/// Throws VerificationFailure when nrd(e) != 1 and PrecisionExhausted when
/// the working precision cannot decide.
NormOneElement certify_norm_one(const AlgebraElement& e);

/// x y x^{-1} y^{-1}.
NormOneElement commutator(const AlgebraElement& x, const AlgebraElement& y);

/// [d_gamma, d_delta] for monomial representatives of the two grades.
NormOneElement kappa(const SymbolAlgebra& alg, const QVector& gamma, const QVector& delta);

struct CommutatorWitness {
  std::vector<std::pair<AlgebraElement, AlgebraElement>> factors;
  AlgebraElement target;
  bool verified = false;
};

/// Multiplies the commutators back together and compares with the target to
/// certified precision.
bool verify_witness(const CommutatorWitness& w);
nlohmann::json witness_json(const CommutatorWitness& w);

/// c with a = c * sigma(c)^{-1} in a cyclic field extension; requires the
/// norm of a to be 1. b = 1 is tried first, then up to 16 random b.
FieldElement hilbert90_decompose(const FieldElement& a, const FieldAutomorphism& sigma, std::mt19937_64& rng);

using AlgebraMap = std::function<AlgebraElement(const AlgebraElement&)>;

/// Inside the algebra: sigma acts with order m on the subfield F(g)
/// containing a, whose elements are sums of r_k g^k, k < m. The returned c
/// is invertible and satisfies a * sigma(c) = c.
AlgebraElement hilbert90_decompose(const AlgebraElement& a, const AlgebraElement& g, const AlgebraMap& sigma,
                                   int m, std::mt19937_64& rng);
/// Same with sigma(y) = x y x^{-1}.
AlgebraElement hilbert90_decompose(const AlgebraElement& a, const AlgebraElement& g, const AlgebraElement& x,
                                   int m, std::mt19937_64& rng);

/// Every coefficient of e vanishes to certified precision beyond value 0.
bool vanishes(const AlgebraElement& e);

/// Invertible x with x k x^{-1} = target, from the nullspace of
/// x -> x k - target x.
AlgebraElement skolem_noether_conjugator(const AlgebraElement& k, const AlgebraElement& target,
                                         std::mt19937_64& rng);

/// Writes a norm-one element as a product of commutators: central powers of
/// omega as powers of [i, j]; otherwise a single [c, x] from Hilbert 90 in
/// F(a) (degree 2) or in F(i), F(j) (higher degree).
CommutatorWitness decompose_norm_one(const NormOneElement& a, std::mt19937_64& rng);

/// A random norm-one element of a shape decompose_norm_one handles:
/// c (x c x^{-1})^{-1} with c in F(i) or F(j) and x the other generator,
/// or, in degree 2, a random commutator.
AlgebraElement random_norm_one(const SymbolAlgebra& alg, std::mt19937_64& rng);

struct DiagramContext {
  Integer degree;
  /// ind(D_0) and [Z(D_0) : F_0], when the residue data determine them.
  std::optional<Integer> residue_index;
  std::optional<Integer> residue_center_degree;
  /// ind(D) / (ind(D_0) * [Z(D_0) : F_0]).
  std::optional<Integer> zeta;
  /// |Gal(Z(D_0) / F_0)|.
  std::optional<Integer> galois_order;
  QuotientStructure grade_quotient;
  std::string note;
};

DiagramContext compute_zeta(const RamificationReport& report);
void to_json(nlohmann::json& j, const DiagramContext& c);

struct Verdict {
  enum class Conclusion { Trivial, Unknown, NotApplicable };
  Conclusion conclusion = Conclusion::Unknown;
  /// Every sufficient condition that fires, the cases of the cd_q = 3
  /// theorem first: "case-1", "case-2-semiramified", "case-2-totally-ramified",
  /// "square-free-index", "cd-at-most-2".
  std::vector<std::string> cases;
  /// cases.front(), or empty.
  std::string theorem_case;
  std::string reasoning;
  std::int64_t q = 0;
  std::int64_t r_q = 0;
  CdValue cd_q;
  std::string algebra_class;
};

std::string to_string(Verdict::Conclusion c);
Verdict verdict(const FieldProfile& profile, const RamificationReport& report, std::int64_t q);
void to_json(nlohmann::json& j, const Verdict& v);

}  // namespace valdiv
