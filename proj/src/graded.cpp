#include "valdiv/graded.hpp"

#include "valdiv/errors.hpp"

namespace valdiv {

namespace {

QVector scaled(const QVector& v, const Rational& s) {
  QVector r = v;
  for (auto& x : r) x *= s;
  return r;
}

}  // namespace

bool operator==(const HomogeneousElement& x, const HomogeneousElement& y) {
  if (x.rep_.algebra_ptr() != y.rep_.algebra_ptr()) throw DomainError("homogeneous elements of different algebras");
  if (x.grade_ != y.grade_) return false;
  const AlgebraElement diff = x.rep_ - y.rep_;
  if (diff.is_exact_zero()) return true;
  const TowerElement N = nrd(diff);
  if (N.is_exact_zero()) throw DomainError("difference is a zero divisor; the valuation is undefined");
  return N.valuation_exceeds(scaled(x.grade_, x.rep_.algebra().degree()));
}

std::string HomogeneousElement::to_string() const {
  return "[grade=" + valdiv::to_string(grade_) + "] " + rep_.to_string() + " + O(>grade)";
}

HomogeneousElement tilde(const AlgebraElement& e) {
  if (e.is_zero_to_precision()) throw DomainError("leading image of zero");
  return HomogeneousElement(v_D(e), e);
}

HomogeneousElement homog_mul(const HomogeneousElement& x, const HomogeneousElement& y) {
  return HomogeneousElement(x.grade() + y.grade(), x.representative() * y.representative());
}

HomogeneousElement homog_inverse(const HomogeneousElement& x) {
  HomogeneousElement inv(scaled(x.grade(), -1), x.representative().inverse());
  const auto one = tilde(x.representative().algebra().one());
  if (!(homog_mul(x, inv) == one) || !(homog_mul(inv, x) == one))
    throw VerificationFailure("homogeneous inverse does not verify");
  return inv;
}

bool GradedAlgebraView::in_valuation_ring(const AlgebraElement& e) const {
  if (e.is_exact_zero()) return true;
  const QVector v = v_D(e);
  return lex_compare(v, QVector(v.size(), 0)) >= 0;
}

bool GradedAlgebraView::in_maximal_ideal(const AlgebraElement& e) const {
  if (e.is_exact_zero()) return true;
  const QVector v = v_D(e);
  return lex_compare(v, QVector(v.size(), 0)) > 0;
}

GradedAlgebraView graded_view(const SymbolAlgebra::Ptr& alg) {
  const auto report = classify(*alg);
  GradedAlgebraView view;
  view.algebra = alg;
  view.grade_group = report.value_group;
  view.zero_component_degree = report.residue_degree;
  view.index = report.index;
  return view;
}

Integer graded_dimension(const GradedAlgebraView& view) { return view.zero_component_degree * view.index; }

std::optional<AlgebraElement> monomial_representative(const SymbolAlgebra& alg, const QVector& gamma) {
  const int n = alg.degree();
  const std::size_t m = alg.tower().height();
  if (gamma.size() != m) throw DomainError("grade has the wrong number of coordinates");
  const QVector vi = v_D(alg.i()), vj = v_D(alg.j());
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      QVector rest = gamma - (scaled(vi, k) + scaled(vj, l));
      for (auto& r : rest) r.canonicalize();
      std::vector<std::int64_t> exps(m);
      bool integral = true;
      for (std::size_t d = 0; d < m && integral; ++d) {
        if (rest[d].get_den() != 1 || !rest[d].get_num().fits_slong_p()) {
          integral = false;
        } else {
          exps[d] = rest[d].get_num().get_si();
        }
      }
      if (!integral) continue;
      const TowerElement f = alg.tower().monomial(alg.tower().base().one(), exps);
      return f * alg.basis(k, l);
    }
  }
  return std::nullopt;
}

HomogeneousElement theta(const SymbolAlgebra& alg, const QVector& gamma, const AlgebraElement& x) {
  const auto d = monomial_representative(alg, gamma);
  if (!d) throw DomainError("no representative of grade " + to_string(gamma));
  const QVector v = v_D(x);
  if (v != QVector(v.size(), 0)) throw DomainError("theta needs an element of value 0");
  return HomogeneousElement(v, *d * x * d->inverse());
}

FieldElement theta_twisted(const FieldAutomorphism& sigma, std::int64_t k, const FieldElement& w) {
  const auto t = TwistedSeries::monomial(sigma, sigma.field().one(), k);
  const auto conj = t * TwistedSeries::constant(sigma, w) * t.inv();
  return conj.coefficient(0);
}

bool nrd_grade_check(const HomogeneousElement& h) {
  const TowerElement N = nrd(h.representative());
  if (N.is_exact_zero()) return false;
  return N.valuation_vector() == scaled(h.grade(), h.representative().algebra().degree());
}

}  // namespace valdiv
