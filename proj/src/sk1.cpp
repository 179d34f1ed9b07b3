#include "valdiv/sk1.hpp"

#include "valdiv/errors.hpp"
#include "valdiv/graded.hpp"

namespace valdiv {

namespace {

constexpr int kRetries = 16;

bool tower_vanishes(const TowerElement& x) {
  if (x.is_exact_zero()) return true;
  if (x.is_certified_nonzero()) return false;
  if (x.tower().height() == 0) return false;
  try {
    return x.valuation_exceeds(QVector(x.tower().height(), 0));
  } catch (const PrecisionExhausted&) {
    return false;
  }
}

AlgebraElement random_in_subfield(const AlgebraElement& g, int m, std::mt19937_64& rng) {
  const auto& A = g.algebra();
  const auto& T = A.tower();
  AlgebraElement b = A.zero(), power = A.one();
  for (int k = 0; k < m; ++k) {
    b = b + T.constant(T.base().random_element(rng)) * power;
    power = power * g;
  }
  return b;
}

/// Row-reduced form of the rows without division: each pivot row r has
/// entry pivots[r] in column pivot_cols[r] and zeros in the other pivot columns.
struct Echelon {
  Matrix<TowerElement> rows;
  std::vector<std::size_t> pivot_rows, pivot_cols;
};

Echelon fraction_free_reduce(Matrix<TowerElement> M) {
  Echelon e{M, {}, {}};
  const std::size_t nr = M.rows(), nc = M.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = nr;
    for (std::size_t s = r; s < nr; ++s) {
      if (M(s, c).is_certified_nonzero()) {
        piv = s;
        break;
      }
    }
    if (piv == nr) continue;
    if (piv != r)
      for (std::size_t k = 0; k < nc; ++k) std::swap(M(piv, k), M(r, k));
    const TowerElement p = M(r, c);
    for (std::size_t s = 0; s < nr; ++s) {
      if (s == r || M(s, c).is_zero_to_precision()) continue;
      const TowerElement f = M(s, c);
      for (std::size_t k = 0; k < nc; ++k) M(s, k) = p * M(s, k) - f * M(r, k);
    }
    e.pivot_rows.push_back(r);
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.rows = std::move(M);
  return e;
}

std::vector<std::vector<TowerElement>> nullspace(const Matrix<TowerElement>& M, const Tower& T) {
  const Echelon e = fraction_free_reduce(M);
  const std::size_t nc = M.cols();
  std::vector<bool> is_pivot(nc, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  TowerElement P = T.one();
  for (std::size_t r = 0; r < e.pivot_rows.size(); ++r) P *= e.rows(e.pivot_rows[r], e.pivot_cols[r]);
  std::vector<std::vector<TowerElement>> basis;
  for (std::size_t f = 0; f < nc; ++f) {
    if (is_pivot[f]) continue;
    std::vector<TowerElement> x(nc, T.zero());
    x[f] = P;
    for (std::size_t r = 0; r < e.pivot_rows.size(); ++r) {
      TowerElement others = T.one();
      for (std::size_t s = 0; s < e.pivot_rows.size(); ++s)
        if (s != r) others *= e.rows(e.pivot_rows[s], e.pivot_cols[s]);
      x[e.pivot_cols[r]] = -(e.rows(e.pivot_rows[r], f) * others);
    }
    // Scale the free coordinate to 1 when that keeps the vector exact.
    if (P.is_exact()) {
      const TowerElement Pinv = P.inv();
      if (Pinv.is_exact())
        for (auto& v : x) v = v * Pinv;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

/// nrd(x) has a certified leading term, so x^{-1} is computable.
bool certified_invertible(const AlgebraElement& x) {
  const TowerElement N = nrd(x);
  if (!N.is_certified_nonzero()) return false;
  try {
    N.valuation();
    return true;
  } catch (const PrecisionExhausted&) {
    return false;
  }
}

}  // namespace

bool vanishes(const AlgebraElement& e) {
  for (const auto& c : e.coefficients())
    if (!tower_vanishes(c)) return false;
  return true;
}

NormOneElement certify_norm_one(const AlgebraElement& e) {
  const TowerElement N = nrd(e);
  const TowerElement d = N - e.algebra().tower().one();
  if (d.is_exact_zero()) return {e, N, true};
  if (d.is_certified_nonzero()) throw VerificationFailure("reduced norm is " + N.to_string() + ", not 1");
  if (!tower_vanishes(d)) throw PrecisionExhausted("reduced norm undecided at working precision");
  return {e, N, false};
}

NormOneElement commutator(const AlgebraElement& x, const AlgebraElement& y) {
  return certify_norm_one(x * y * x.inverse() * y.inverse());
}

NormOneElement kappa(const SymbolAlgebra& alg, const QVector& gamma, const QVector& delta) {
  const auto dg = monomial_representative(alg, gamma);
  const auto dd = monomial_representative(alg, delta);
  if (!dg || !dd) throw DomainError("no representative of the given grade");
  return commutator(*dg, *dd);
}

bool verify_witness(const CommutatorWitness& w) {
  AlgebraElement prod = w.target.algebra().one();
  for (const auto& [x, y] : w.factors) prod = prod * x * y * x.inverse() * y.inverse();
  return vanishes(prod - w.target);
}

nlohmann::json witness_json(const CommutatorWitness& w) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& [x, y] : w.factors) factors.push_back({{"x", x.to_string()}, {"y", y.to_string()}});
  return {{"target", w.target.to_string()}, {"commutators", factors}, {"verified", w.verified}};
}

FieldElement hilbert90_decompose(const FieldElement& a, const FieldAutomorphism& sigma, std::mt19937_64& rng) {
  const int m = sigma.order();
  FieldElement norm = a.field().one();
  for (int t = 0; t < m; ++t) norm *= sigma.apply_power(a, t);
  if (!norm.is_one()) throw DomainError("element does not have norm 1");
  for (int attempt = 0; attempt <= kRetries; ++attempt) {
    const FieldElement b = attempt == 0 ? a.field().one() : a.field().random_element(rng);
    FieldElement c = a.field().zero(), prefix = a.field().one();
    for (int t = 0; t < m; ++t) {
      c += prefix * sigma.apply_power(b, t);
      prefix *= sigma.apply_power(a, t);
    }
    if (c.is_zero()) continue;
    if (!(a * sigma.apply(c) == c)) throw VerificationFailure("Hilbert 90 element does not verify");
    return c;
  }
  throw RetriesExhausted("no nonzero Hilbert 90 element found");
}

AlgebraElement hilbert90_decompose(const AlgebraElement& a, const AlgebraElement& g, const AlgebraMap& sigma,
                                   int m, std::mt19937_64& rng) {
  const auto& A = a.algebra();
  AlgebraElement norm = A.one(), s = a;
  for (int t = 0; t < m; ++t) {
    norm = norm * s;
    s = sigma(s);
  }
  if (!vanishes(norm - A.one())) throw DomainError("element does not have norm 1 in its subfield");
  // b = g - sigma(g) keeps full relative precision when a is close to a scalar.
  const AlgebraElement pure = g - sigma(g);
  for (int attempt = -1; attempt <= kRetries; ++attempt) {
    if (attempt == 0 && pure.is_exact_zero()) continue;
    const AlgebraElement b = attempt < 0 ? A.one() : attempt == 0 ? pure : random_in_subfield(g, m, rng);
    AlgebraElement c = A.zero(), prefix = A.one(), sb = b, sa = a;
    for (int t = 0; t < m; ++t) {
      c = c + prefix * sb;
      prefix = prefix * sa;
      sb = sigma(sb);
      sa = sigma(sa);
    }
    if (!certified_invertible(c)) continue;
    if (!vanishes(a * sigma(c) - c)) continue;
    return c;
  }
  throw RetriesExhausted("no invertible Hilbert 90 element found");
}

AlgebraElement hilbert90_decompose(const AlgebraElement& a, const AlgebraElement& g, const AlgebraElement& x,
                                   int m, std::mt19937_64& rng) {
  const AlgebraElement xinv = x.inverse();
  return hilbert90_decompose(a, g, [&](const AlgebraElement& y) { return x * y * xinv; }, m, rng);
}

AlgebraElement skolem_noether_conjugator(const AlgebraElement& k, const AlgebraElement& target,
                                         std::mt19937_64& rng) {
  const auto& A = k.algebra();
  const auto pk = prd(k), pt = prd(target);
  for (std::size_t d = 0; d < pk.size(); ++d)
    if (!tower_vanishes(pk[d] - pt[d]) && !(pk[d] - pt[d]).is_exact_zero())
      throw DomainError("elements have different reduced characteristic polynomials");
  if ((k - target).is_exact_zero()) return A.one();
  const int n = A.degree();
  const std::size_t N = static_cast<std::size_t>(n) * n;
  const Tower& T = A.tower();
  Matrix<TowerElement> M(N, N, T.zero());
  for (std::size_t col = 0; col < N; ++col) {
    const auto e = A.basis(static_cast<int>(col) / n, static_cast<int>(col) % n);
    const auto image = e * k - target * e;
    for (std::size_t row = 0; row < N; ++row) M(row, col) = image.coefficients()[row];
  }
  const auto basis = nullspace(M, T);
  if (basis.empty()) throw RetriesExhausted("the conjugation equation has no nonzero solution");
  auto accept = [&](const AlgebraElement& x) { return certified_invertible(x) && vanishes(x * k - target * x); };
  for (const auto& v : basis) {
    const auto x = A.element(v);
    if (accept(x)) return x;
  }
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    std::vector<TowerElement> v(N, T.zero());
    for (const auto& b : basis) {
      const TowerElement r = T.from_int(coef(rng));
      for (std::size_t d = 0; d < N; ++d) v[d] += r * b[d];
    }
    const auto x = A.element(v);
    if (accept(x)) return x;
  }
  throw RetriesExhausted("no invertible conjugator among the sampled solutions");
}

CommutatorWitness decompose_norm_one(const NormOneElement& a, std::mt19937_64& rng) {
  const AlgebraElement& e = a.element;
  const auto& A = e.algebra();
  const Tower& T = A.tower();
  const int n = A.degree();
  CommutatorWitness w;
  w.target = e;
  auto vanish_except = [&](auto keep) {
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        if (!keep(k, l) && !tower_vanishes(e.coefficient(k, l))) return false;
    return true;
  };
  if (vanishes(e - A.one())) {
    w.verified = true;
    return w;
  }
  if (vanish_except([](int k, int l) { return k == 0 && l == 0; })) {
    // [i, j] = omega^{-1}, so omega^k is the (n - k)-th power.
    for (int k = 1; k < n; ++k) {
      if (!vanishes(e - A.scalar(T.constant(A.omega_power(k))))) continue;
      for (int r = 0; r < n - k; ++r) w.factors.emplace_back(A.i(), A.j());
      w.verified = verify_witness(w);
      if (!w.verified) throw VerificationFailure("central witness does not verify");
      return w;
    }
    throw DomainError("central norm-one element is not a power of omega");
  }
  AlgebraElement c, x;
  if (n == 2) {
    const AlgebraMap conj = [](const AlgebraElement& y) { return y.algebra().scalar(trd(y)) - y; };
    x = skolem_noether_conjugator(e, conj(e), rng);
    c = hilbert90_decompose(e, e, conj, 2, rng);
  } else if (vanish_except([](int, int l) { return l == 0; })) {
    x = skolem_noether_conjugator(A.i(), T.constant(A.omega()) * A.i(), rng);
    c = hilbert90_decompose(e, A.i(), x, n, rng);
  } else if (vanish_except([](int k, int) { return k == 0; })) {
    x = skolem_noether_conjugator(A.j(), T.constant(A.omega_power(-1)) * A.j(), rng);
    c = hilbert90_decompose(e, A.j(), x, n, rng);
  } else {
    throw DomainError("unsupported: element outside F(i) and F(j) in degree > 2");
  }
  w.factors.emplace_back(c, x);
  w.verified = verify_witness(w);
  if (!w.verified) throw VerificationFailure("commutator witness does not verify");
  return w;
}

AlgebraElement random_norm_one(const SymbolAlgebra& alg, std::mt19937_64& rng) {
  const Tower& T = alg.tower();
  const int n = alg.degree();
  // Over towers of height >= 2, inverting a general element loses too much
  // precision; c is then a constant times a 1-unit.
  const bool deep = T.height() >= 2;
  while (true) {
    const auto pick = rng() % (n == 2 && !deep ? 3 : 2);
    if (pick == 2) {
      const auto x = alg.random_element(rng), y = alg.random_element(rng);
      if (nrd(x).is_zero_to_precision() || nrd(y).is_zero_to_precision()) continue;
      return commutator(x, y).element;
    }
    const auto g = pick == 0 ? alg.i() : alg.j();
    const auto x = pick == 0 ? alg.j() : alg.i();
    AlgebraElement c = alg.zero(), power = alg.one();
    for (int k = 0; k < n; ++k) {
      TowerElement r = T.random_polynomial(rng, 2, 0, 2);
      if (deep && k == 0) r = T.constant(T.base().random_element(rng)) + T.variable(1) * r;
      c = c + r * power;
      power = power * g;
    }
    if (nrd(c).is_zero_to_precision()) continue;
    return c * (x * c * x.inverse()).inverse();
  }
}

DiagramContext compute_zeta(const RamificationReport& report) {
  DiagramContext ctx;
  Integer n;
  mpz_sqrt(n.get_mpz_t(), Integer(report.dimension).get_mpz_t());
  ctx.degree = n;
  ctx.grade_quotient = report.grade_quotient;
  if (report.dimension == 1) {
    ctx.residue_index = 1;
    ctx.residue_center_degree = 1;
  } else if (report.is_totally_ramified) {
    ctx.residue_index = 1;
    ctx.residue_center_degree = 1;
    ctx.note = "residue algebra equals the residue field";
  } else if (report.is_semiramified) {
    ctx.residue_index = 1;
    ctx.residue_center_degree = n;
    ctx.note = "residue algebra is a field of degree n";
  } else if (report.is_inertial) {
    ctx.residue_index = n;
    ctx.residue_center_degree = 1;
    ctx.note = "residue algebra is central of degree n";
  } else {
    ctx.note = "residue data do not determine ind(D_0) and [Z(D_0):F_0]";
    return ctx;
  }
  ctx.galois_order = *ctx.residue_center_degree;
  ctx.zeta = n / (*ctx.residue_index * *ctx.residue_center_degree);
  return ctx;
}

void to_json(nlohmann::json& j, const DiagramContext& c) {
  auto opt = [](const std::optional<Integer>& z) { return z ? integer_to_json(*z) : nlohmann::json("unknown"); };
  j = {{"degree", integer_to_json(c.degree)},
       {"residue_index", opt(c.residue_index)},
       {"residue_center_degree", opt(c.residue_center_degree)},
       {"zeta", opt(c.zeta)},
       {"galois_order", opt(c.galois_order)},
       {"grade_quotient", c.grade_quotient},
       {"note", c.note}};
}

std::string to_string(Verdict::Conclusion c) {
  switch (c) {
    case Verdict::Conclusion::Trivial:
      return "Trivial";
    case Verdict::Conclusion::Unknown:
      return "Unknown";
    case Verdict::Conclusion::NotApplicable:
      break;
  }
  return "NotApplicable";
}

namespace {

bool is_square_free(std::int64_t n) {
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

bool is_power_of(std::int64_t n, std::int64_t q) {
  if (n < q) return false;
  while (n % q == 0) n /= q;
  return n == 1;
}

}  // namespace

Verdict verdict(const FieldProfile& profile, const RamificationReport& report, std::int64_t q) {
  if (q < 2 || !is_prime(q)) throw DomainError("q must be prime");
  Integer nz;
  mpz_sqrt(nz.get_mpz_t(), Integer(report.dimension).get_mpz_t());
  if (nz * nz != report.dimension || !nz.fits_slong_p()) throw DomainError("dimension is not a square");
  const std::int64_t n = nz.get_si();
  Verdict v;
  v.q = q;
  v.r_q = profile.r_q(q);
  v.cd_q = profile.cd(q);
  v.algebra_class = report.class_name();
  const CdValue& cd = v.cd_q;
  std::vector<std::string> reasons;

  // Hypotheses shared by the cd-based criteria.
  std::string failed;
  const std::int64_t pbar = profile.residue_characteristic();
  const CdValue rcd = profile.residue_cd(q);
  if (!is_power_of(n, q)) {
    failed = "the degree is not a power of q";
  } else if (pbar != 0 && pbar == q) {
    failed = "q equals the residue characteristic";
  } else if (!rcd.is_finite() && rcd.kind != CdValue::Kind::AtMost) {
    failed = "the residue field has no finite cd_q";
  }
  const bool hypotheses = failed.empty();
  const bool cd3 = hypotheses && cd.is_finite() && cd.value == 3;
  if (cd3) {
    if (v.r_q >= 1 && v.r_q <= 3) {
      v.cases.push_back("case-1");
      reasons.push_back("cd_q(F) = 3 with 1 <= r_q <= 3");
    } else if (v.r_q == 0 && report.is_semiramified) {
      v.cases.push_back("case-2-semiramified");
      reasons.push_back("cd_q(F) = 3, r_q = 0 and D is semiramified");
    } else if (v.r_q == 0 && report.is_totally_ramified) {
      v.cases.push_back("case-2-totally-ramified");
      reasons.push_back("cd_q(F) = 3, r_q = 0 and D is totally ramified");
    }
  }
  if (is_square_free(n)) {
    v.cases.push_back("square-free-index");
    reasons.push_back("the index is square-free");
  }
  if (hypotheses && (cd.kind == CdValue::Kind::Finite || cd.kind == CdValue::Kind::AtMost) && cd.value <= 2) {
    v.cases.push_back("cd-at-most-2");
    reasons.push_back("q-primary index over a field with cd_q <= 2");
  }

  std::string why;
  if (!v.cases.empty()) {
    v.conclusion = Verdict::Conclusion::Trivial;
    v.theorem_case = v.cases.front();
    for (std::size_t k = 0; k < reasons.size(); ++k) why += (k ? "; " : "") + reasons[k];
  } else if (cd3) {
    v.conclusion = Verdict::Conclusion::Unknown;
    why = "no sufficient condition applies";
  } else {
    v.conclusion = Verdict::Conclusion::NotApplicable;
    if (!hypotheses) {
      why = failed;
    } else if (cd.kind == CdValue::Kind::AtMost) {
      why = "cd_q(F) is only bounded; an exact value of 3 must be asserted";
    } else {
      why = "cd_q(F) is not 3";
    }
  }
  v.reasoning = why + " (degree " + std::to_string(n) + ", r_q = " + std::to_string(v.r_q) +
                ", cd_q(F) = " + cd.to_string() + ", class " + v.algebra_class + ")";
  return v;
}

void to_json(nlohmann::json& j, const Verdict& v) {
  j = {{"conclusion", to_string(v.conclusion)},
       {"case", v.theorem_case},
       {"all_cases", v.cases},
       {"reasoning", v.reasoning},
       {"q", v.q},
       {"r_q", v.r_q},
       {"cd_q", v.cd_q.to_string()},
       {"class", v.algebra_class}};
}

}  // namespace valdiv
