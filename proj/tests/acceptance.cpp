#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "valdiv/description.hpp"
#include "valdiv/errors.hpp"
#include "valdiv/graded.hpp"
#include "valdiv/sk1.hpp"
#include "valdiv/twisted.hpp"

using namespace valdiv;

namespace {

/// Collects failed checks; the first few messages are kept for the report.
struct Outcome {
  int checks = 0;
  int failures = 0;
  std::string first_failure;
  std::string detail;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<void(Outcome&)> body;
};

std::vector<TowerElement> quaternion_coords(const AlgebraElement& e) {
  return {e.coefficient(0, 0), e.coefficient(1, 0), e.coefficient(0, 1), e.coefficient(1, 1)};
}

std::vector<TowerElement> quaternion_conj(const std::vector<TowerElement>& c) { return {c[0], -c[1], -c[2], -c[3]}; }

bool lex_less(const QVector& a, const QVector& b) { return lex_compare(a, b) < 0; }

/// r * y^N with N chosen so that the value of the result exceeds gamma.
AlgebraElement higher_than(const SymbolAlgebra& A, std::mt19937_64& rng, const QVector& gamma) {
  AlgebraElement r = A.random_element(rng);
  while (r.is_exact_zero()) r = A.random_element(rng);
  const QVector v = v_D(r);
  const mpq_class gap = gamma[0] - v[0];
  mpz_class up;
  mpz_cdiv_q(up.get_mpz_t(), gap.get_num_mpz_t(), gap.get_den_mpz_t());
  std::vector<std::int64_t> exps(A.tower().height(), 0);
  exps[0] = up.get_si() + 1;
  return A.tower().monomial(A.tower().base().one(), exps) * r;
}

void corpus_classification(Outcome& out, int n, std::int64_t p) {
  const auto A = corpus::xy_symbol(n, p);
  const auto r = classify(*A);
  const Rational step(1, n);
  const Lattice expected(2, {QVector{step, 0}, QVector{0, step}});
  out.check(r.index == n * n, "index != n^2");
  out.check(r.value_group == expected, "value group != (1/n)Z^2");
  out.check(r.residue_degree == 1, "residue degree != 1");
  out.check(r.defect == 1, "defect != 1");
  out.check(r.is_tame && r.is_totally_ramified, "not tame totally ramified");
  out.check(r.class_name() == "tame totally ramified", "class name " + r.class_name());
  out.detail = "Gamma_D = (1/" + std::to_string(n) + ")Z^2, index " + std::to_string(n * n);
}

void cd_calculator(Outcome& out) {
  for (std::int64_t q : {2, 3, 5, 7}) {
    out.check(parse_profile("decl(cd_q=1)((x))((y))").cd(q) == CdValue::finite(3), "decl(cd_q=1)((x))((y))");
    out.check(parse_profile("decl(cd_q=2)((t))").cd(q) == CdValue::finite(3), "decl(cd_q=2)((t))");
  }
  out.detail = "cd_q = 3 for both profiles, q in {2, 3, 5, 7}";
}

void verdict_engine(Outcome& out) {
  const auto desc = parse_algebra("symbol(n=3, omega=2, a=x, b=y) over F7((x))((y))");
  const auto report = classify(*instantiate(desc));
  const auto v = verdict(desc.over, report, 3);
  out.check(v.conclusion == Verdict::Conclusion::Trivial, "example 3 is not Trivial");
  out.check(v.theorem_case == "case-1", "example 3 cites " + v.theorem_case);
  out.check(v.r_q == 2, "example 3 r_q != 2");
  const auto decl = parse_profile("decl(cd2=1)((x))((y))");
  const auto v4 = verdict(decl, classify(*corpus::xy_symbol(4, 5)), 2);
  out.check(v4.conclusion == Verdict::Conclusion::Trivial && v4.theorem_case == "case-1", "degree 4 over decl");

  RamificationReport boundary;
  boundary.dimension = 16;
  boundary.index = 1;
  boundary.residue_degree = 16;
  boundary.defect = 1;
  boundary.is_division = Tristate::True;
  const auto b = verdict(parse_profile("decl(cd2=3)"), boundary, 2);
  out.check(b.r_q == 0, "boundary r_q != 0");
  out.check(b.conclusion == Verdict::Conclusion::Unknown, "boundary is " + to_string(b.conclusion));
  out.detail = "example 3: " + to_string(v.conclusion) + "/" + v.theorem_case + "; boundary: " +
               to_string(b.conclusion);
}

void norm_engine(Outcome& out) {
  std::mt19937_64 rng(4);
  int pairs = 0;
  for (const auto& [name, A] : corpus::full_corpus()) {
    for (int k = 0; k < 500; ++k, ++pairs) {
      const auto x = A->random_element(rng), y = A->random_element(rng);
      out.check(nrd(x * y) == nrd(x) * nrd(y), "nrd multiplicativity in " + name);
    }
  }
  for (const auto& A : {corpus::quaternion_ft(5, 2), corpus::hamilton()}) {
    for (int k = 0; k < 200; ++k) {
      const auto e = A->random_element(rng, 3, -2, 2);
      out.check(nrd(e) == oracle::quaternion_norm_form(quaternion_coords(e), A->a(), A->b()),
                "closed norm form in " + A->to_string());
    }
  }
  for (const auto& A : {corpus::quaternion_ft(5, 2), corpus::hamilton(), corpus::xy_symbol(2, 3)}) {
    const auto& T = A->tower();
    for (int k = 0; k < 30; ++k) {
      const auto e = A->random_element(rng);
      out.check(oracle::laplace_det(left_regular_matrix(e), T.zero(), T.one()) == nrd(e).pow(2),
                "det != nrd^2 in " + A->to_string());
    }
  }
  const auto C = corpus::xy_symbol(3, 7);
  for (int k = 0; k < 10; ++k) {
    const auto e = C->random_element(rng, 1, -1, 1);
    out.check(det_berkowitz(left_regular_matrix(e), C->tower().zero(), C->tower().one()) == nrd(e).pow(3),
              "det != nrd^3");
  }
  out.detail = std::to_string(pairs) + " pairs, 400 norm-form checks, 100 determinant checks";
}

void valuation(Outcome& out) {
  std::mt19937_64 rng(5);
  const auto algebras = corpus::full_corpus();
  int pairs = 0;
  while (pairs < 2000) {
    const auto& [name, A] = algebras[static_cast<std::size_t>(pairs) % algebras.size()];
    const auto x = A->random_element(rng), y = A->random_element(rng);
    if (x.is_exact_zero() || y.is_exact_zero()) continue;
    ++pairs;
    out.check(v_D(x * y) == v_D(x) + v_D(y), "v_D(xy) != v_D(x) + v_D(y) in " + name);
    const auto s = x + y;
    if (!s.is_exact_zero())
      out.check(!lex_less(v_D(s), std::min(v_D(x), v_D(y), lex_less)), "ultrametric inequality in " + name);
    const auto f = A->tower().random_polynomial(rng, 2, -2, 2);
    if (!f.is_exact_zero()) out.check(v_D(A->scalar(f)) == f.valuation_vector(), "v_D on F in " + name);
  }
  out.detail = std::to_string(pairs) + " pairs";
}

void witnesses(Outcome& out) {
  std::mt19937_64 rng(6);
  std::ostringstream detail;
  for (const auto& A : {corpus::hamilton(), corpus::quaternion_ft(5, 2)}) {
    int ok = 0;
    const int total = 100;
    for (int k = 0; k < total; ++k) {
      const auto target = random_norm_one(*A, rng);
      try {
        const auto w = decompose_norm_one(certify_norm_one(target), rng);
        const bool checked = w.verified && verify_witness(w);
        out.check(checked, "returned witness does not multiply back in " + A->to_string());
        if (checked && A->tower().height() == 0) {
          // Hand-written product table: c x c^{-1} x^{-1} N(c) N(x) = target N(c) N(x).
          TowerElement scale = A->tower().one();
          auto lhs = quaternion_coords(A->one());
          for (const auto& [c, x] : w.factors) {
            const auto u = A->a(), t = A->b();
            auto cc = quaternion_coords(c), xc = quaternion_coords(x);
            lhs = oracle::quaternion_product(lhs, cc, u, t);
            lhs = oracle::quaternion_product(lhs, xc, u, t);
            lhs = oracle::quaternion_product(lhs, quaternion_conj(cc), u, t);
            lhs = oracle::quaternion_product(lhs, quaternion_conj(xc), u, t);
            scale = scale * nrd(c) * nrd(x);
          }
          const auto rhs = quaternion_coords(target);
          bool same = true;
          for (int d = 0; d < 4; ++d) same = same && lhs[static_cast<std::size_t>(d)] == scale * rhs[d];
          out.check(same, "product-table recheck failed");
        }
        if (checked) ++ok;
      } catch (const Error&) {
        // Counted against the success rate only.
      }
    }
    out.check(ok * 100 >= 99 * total, "success rate below 99% in " + A->to_string());
    detail << A->to_string() << ": " << ok << "/" << total << "; ";
  }
  out.detail = detail.str();
}

void kappa_map(Outcome& out) {
  std::mt19937_64 rng(7);
  for (const auto& [name, A] : corpus::symbol_corpus()) {
    const int n = A->degree();
    const auto vi = v_D(A->i()), vj = v_D(A->j());
    const auto k = kappa(*A, vi, vj);
    out.check(k.element.is_central(), "kappa not central in " + name);
    const FieldElement z = k.element.coefficient(0, 0).residue();
    out.check(multiplicative_order(z, 1000) == n, "kappa not a primitive root in " + name);
    out.check(k.element == A->scalar(A->tower().constant(z)), "kappa not a root of unity times 1 in " + name);
    out.check(nrd(k.element) == A->tower().one(), "nrd(kappa) != 1 in " + name);
    out.check(v_D(k.element) == QVector(2, 0), "kappa grade != 0 in " + name);
    std::uniform_int_distribution<int> coef(-3, 3);
    const Rational step(1, n);
    for (int trial = 0; trial < 20; ++trial) {
      const QVector g{step * coef(rng), step * coef(rng)};
      const QVector h{step * coef(rng), step * coef(rng)};
      const QVector f{Rational(coef(rng)), Rational(coef(rng))};
      out.check(kappa(*A, g, g).element == A->one(), "kappa(g, g) != 1 in " + name);
      out.check(kappa(*A, g, f).element == A->one(), "kappa(g, Gamma_F) != 1 in " + name);
      out.check(kappa(*A, f, g).element == A->one(), "kappa(Gamma_F, g) != 1 in " + name);
      out.check(kappa(*A, g, h).element * kappa(*A, h, g).element == A->one(), "kappa not alternating in " + name);
    }
  }
  out.detail = "kappa(i, j) = omega^-1 of order n on the three corpus symbol algebras";
}

void lattice_suite(Outcome& out) {
  std::mt19937_64 rng(8);
  int compared = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = gen::random_lattice_pair(rng, 4);
    const Lattice small(p.ambient_rank, p.small_basis), big(p.ambient_rank, p.big_generators);
    out.check(big.contains(small), "small not contained in big");
    const auto q = quotient(big, small);
    out.check(torsion_rank(q) <= rational_rank(small), "trk > rr");
    for (std::int64_t prime : {2, 3, 5}) {
      const auto rq = q_rank(small, prime);
      if (rq == 0) out.check(big == small, "r_q = 0 but big != small");
      if (rq == 1) out.check(is_cyclic(q), "r_q = 1 but quotient not cyclic");
    }
    const auto brute = oracle::quotient_by_enumeration(p.big_generators, p.small_basis, 64);
    if (q.order() <= 64) {
      out.check(brute.has_value() && *brute == q.invariant_factors, "SNF disagrees with enumeration");
      ++compared;
    } else {
      out.check(!brute.has_value(), "enumeration found a small group the SNF calls large");
    }
  }
  out.detail = "1000 pairs, " + std::to_string(compared) + " quotients enumerated";
}

void hensel(Outcome& out) {
  std::mt19937_64 rng(9);
  int roots = 0;
  for (std::int64_t p : {3, 5, 7, 11}) {
    const Tower& P = Tower::make(Field::prime(p), {"t"});
    const auto squares = oracle::squares_mod(p);
    for (int k = 0; k < 200; ++k) {
      const auto u = P.random_unit(rng, 5);
      const bool expected = squares[static_cast<std::size_t>(u.residue().residue())];
      out.check(unit_is_square(u) == expected, "square test disagrees over F" + std::to_string(p));
      const auto s = u.unit_square_root();
      out.check(s.has_value() == expected, "square root presence over F" + std::to_string(p));
      if (s) {
        ++roots;
        out.check((*s * *s - u).is_zero_to_precision(), "square root witness fails");
      }
    }
  }
  out.detail = "800 units, " + std::to_string(roots) + " square roots verified";
}

void twisted(Outcome& out) {
  std::mt19937_64 rng(10);
  const Field& f3 = Field::prime(3);
  const Field& E = Field::extension(f3, {f3.one(), f3.zero(), f3.one()}, "w");
  const auto sigma = FieldAutomorphism::frobenius(E);
  const auto t = TwistedSeries::monomial(sigma, E.one(), 1);
  for (std::uint64_t idx = 0; idx < 9; ++idx) {
    const FieldElement d = E.element_at(idx);
    out.check(t * TwistedSeries::constant(sigma, d) == TwistedSeries::constant(sigma, sigma.apply(d)) * t,
              "t d != sigma(d) t");
  }
  const auto x = central_indeterminate(sigma, E.one(), 2);
  out.check(x == TwistedSeries::monomial(sigma, E.one(), 2), "central indeterminate is not t^2");
  for (int k = 0; k < 200; ++k) {
    const auto z = random_twisted(sigma, rng, 4, -3, 3);
    out.check(x * z == z * x, "t^2 does not commute");
  }
  std::uniform_int_distribution<int> e(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::map<std::pair<int, int>, TwistedSeries> coeffs;
    TwistedSeries z = TwistedSeries::zero(sigma);
    bool any = false;
    for (int r = 0; r < 2; ++r) {
      for (int s = 0; s < 2; ++s) {
        TwistedSeries c = TwistedSeries::zero(sigma);
        for (int k = 0; k < 2; ++k) c = c + TwistedSeries::monomial(sigma, E.embed(f3.random_element(rng)), 2 * e(rng));
        any = any || !c.is_exact_zero();
        coeffs.emplace(std::make_pair(r, s), c);
        z = z + c * TwistedSeries::monomial(sigma, E.generator().pow(r), s);
      }
    }
    out.check(decompose_over_center(z) == coeffs, "combination of 1, w, t, wt does not decompose back");
    out.check(z.is_exact_zero() == !any, "nontrivial relation among 1, w, t, wt");
  }
  const int m = sigma.order();
  const auto basis = decompose_over_center(TwistedSeries::monomial(sigma, E.generator(), 1));
  out.check(static_cast<int>(basis.size()) == m * m, "dimension over the center != (m deg D)^2");
  out.detail = "sigma of order " + std::to_string(m) + ", degree over the center 2";
}

void graded_suite(Outcome& out) {
  std::mt19937_64 rng(11);
  int perturbations = 0, inversions = 0;
  const auto algebras = corpus::full_corpus();
  while (perturbations < 100) {
    for (const auto& [name, A] : algebras) {
      if (A->tower().height() == 0 || perturbations >= 100) continue;
      const auto x = A->random_monomial(rng), y = A->random_monomial(rng);
      const auto hx = tilde(x), hy = tilde(y);
      const auto prod = homog_mul(hx, hy);
      out.check(prod.grade() == hx.grade() + hy.grade(), "grades not additive in " + name);
      out.check(prod.grade() == v_D(x * y), "grade of product != v_D in " + name);
      const HomogeneousElement px(hx.grade(), x + higher_than(*A, rng, hx.grade()));
      const HomogeneousElement py(hy.grade(), y + higher_than(*A, rng, hy.grade()));
      out.check(px == hx, "perturbation changes the leading image in " + name);
      out.check(homog_mul(px, py) == prod, "perturbation changes the product in " + name);
      ++perturbations;
    }
  }
  while (inversions < 200) {
    for (const auto& [name, A] : algebras) {
      if (inversions >= 200) continue;
      const auto e = A->degree() > 2 ? A->random_monomial(rng) : A->random_element(rng);
      if (e.is_exact_zero()) continue;
      const auto h = tilde(e);
      const auto inv = homog_inverse(h);
      QVector neg = h.grade();
      for (auto& c : neg) c = -c;
      out.check(inv.grade() == neg, "inverse grade in " + name);
      out.check(homog_mul(h, inv) == tilde(A->one()), "h h^{-1} != 1 in " + name);
      ++inversions;
    }
  }
  for (const auto& [name, A] : algebras) {
    out.check(nrd_grade_check(tilde(A->i() * A->j())), "nrd grade law on ij in " + name);
    for (int k = 0; k < 40; ++k) out.check(nrd_grade_check(tilde(A->random_monomial(rng))), "nrd grade law in " + name);
  }
  const Field& f3 = Field::prime(3);
  const Field& E = Field::extension(f3, {f3.one(), f3.zero(), f3.one()}, "w");
  const auto sigma = FieldAutomorphism::frobenius(E);
  for (std::uint64_t idx = 0; idx < 9; ++idx) {
    const FieldElement w = E.element_at(idx);
    out.check(theta_twisted(sigma, 1, w) == w.pow(3), "theta(v(t)) is not Frobenius");
  }
  out.detail = std::to_string(perturbations) + " perturbations, " + std::to_string(inversions) + " inversions";
}

}  // namespace

int main() {
  std::vector<Criterion> criteria;
  int id = 1;
  for (const auto& [n, p] : std::vector<std::pair<int, std::int64_t>>{{2, 3}, {3, 7}, {4, 5}}) {
    criteria.push_back({id, "corpus classification n=" + std::to_string(n) + " over F" + std::to_string(p) +
                                "((x))((y))",
                        5.0, [n = n, p = p](Outcome& o) { corpus_classification(o, n, p); }});
  }
  criteria.push_back({2, "cd calculator", 1.0, cd_calculator});
  criteria.push_back({3, "verdict engine", 5.0, verdict_engine});
  criteria.push_back({4, "norm engine", 60.0, norm_engine});
  criteria.push_back({5, "valuation", 30.0, valuation});
  criteria.push_back({6, "commutator witnesses", 120.0, witnesses});
  criteria.push_back({7, "kappa map", 30.0, kappa_map});
  criteria.push_back({8, "lattice suite", 60.0, lattice_suite});
  criteria.push_back({9, "Hensel square test", 30.0, hensel});
  criteria.push_back({10, "twisted Laurent series", 30.0, twisted});
  criteria.push_back({11, "graded suite", 60.0, graded_suite});

  // Criterion 1 has three algebras; it passes only if all three do.
  std::map<int, bool> passed;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool ok = out.failures == 0 && in_time;
    passed.emplace(c.id, true);
    passed[c.id] = passed[c.id] && ok;
    std::printf("%s  criterion %d: %s  (%.2f s, limit %.0f s, %d checks", ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                secs, c.limit_seconds, out.checks);
    if (out.failures > 0) std::printf(", %d failed, first: %s", out.failures, out.first_failure.c_str());
    if (!in_time) std::printf(", over time");
    std::printf(")  %s\n", out.detail.c_str());
    std::fflush(stdout);
  }
  int failed = 0;
  for (const auto& [k, ok] : passed) failed += ok ? 0 : 1;
  std::printf("%d of %zu criteria passed\n", static_cast<int>(passed.size()) - failed, passed.size());
  return failed == 0 ? 0 : 1;
}
