#include "valdiv/examples.hpp"

#include <functional>
#include <random>
#include <string>

#include "valdiv/description.hpp"
#include "valdiv/errors.hpp"
#include "valdiv/graded.hpp"
#include "valdiv/sk1.hpp"
#include "valdiv/twisted.hpp"

namespace valdiv {

namespace {

using json = nlohmann::json;

/// Report for an algebra of the given degree when only the profile is known.
RamificationReport degree_only_report(int n) {
  RamificationReport r;
  r.dimension = n * n;
  r.index = 1;
  r.residue_degree = n * n;
  r.defect = 1;
  r.is_division = Tristate::Unknown;
  r.division_reason = "profile only";
  return r;
}

json verdict_json(const Verdict& v) {
  json j;
  to_json(j, v);
  return j;
}

json report_json(const RamificationReport& r) {
  json j;
  to_json(j, r);
  return j;
}

json zeta_json(const RamificationReport& r) {
  json j;
  to_json(j, compute_zeta(r));
  return j;
}

json witness_entry(const AlgebraElement& target, std::mt19937_64& rng) {
  json j{{"element", target.to_string()}};
  try {
    const auto w = decompose_norm_one(certify_norm_one(target), rng);
    j["witness"] = witness_json(w);
    j["verified"] = w.verified;
  } catch (const Error& e) {
    j["witness"] = nullptr;
    j["verified"] = false;
    j["error"] = e.what();
  }
  return j;
}

json example_one() {
  const std::int64_t q = 2;
  const auto bounded = parse_profile("completion(p=7)");
  const auto asserted = parse_profile("completion(p=7, cd=3)");
  const auto report = degree_only_report(4);
  return {{"example", 1},
          {"title", "completion of Q_p(t), p = 7"},
          {"profile", profile_json(bounded, q)},
          {"verdict_degree_4", verdict_json(verdict(bounded, report, q))},
          {"with_cd_asserted",
           {{"profile", profile_json(asserted, q)}, {"verdict_degree_4", verdict_json(verdict(asserted, report, q))}}},
          {"note", "profile level only: no arithmetic over Q_p towers"}};
}

json example_two(std::mt19937_64& rng, std::int64_t precision) {
  const std::int64_t q = 2;
  const auto desc = parse_algebra("symbol(n=2, a=2, b=t) over F5((t))");
  const auto A = instantiate(desc, precision);
  const auto report = classify(*A);
  json witnesses = json::array();
  for (int k = 0; k < 3; ++k) witnesses.push_back(witness_entry(random_norm_one(*A, rng), rng));

  // E((t, sigma)) with E = F9 over k = F3 and sigma the Frobenius.
  const Field& f3 = Field::prime(3);
  const Field& E = Field::extension(f3, {f3.one(), f3.zero(), f3.one()}, "w");
  const auto sigma = FieldAutomorphism::frobenius(E);
  const auto t = TwistedSeries::monomial(sigma, E.one(), 1);
  bool twist = true, central = true;
  const auto x = central_indeterminate(sigma, E.one(), sigma.order());
  for (std::uint64_t idx = 0; idx < 9; ++idx) {
    const auto d = TwistedSeries::constant(sigma, E.element_at(idx));
    twist = twist && t * d == TwistedSeries::constant(sigma, sigma.apply(E.element_at(idx))) * t;
    central = central && x * d == d * x;
  }
  json twisted{{"coefficients", E.to_string()},
               {"automorphism", sigma.to_string()},
               {"order", sigma.order()},
               {"center", "F3((t^" + std::to_string(sigma.order()) + "))"},
               {"degree_over_center", sigma.order()},
               {"t_d_equals_sigma_d_t", twist},
               {"t_m_is_central", central && in_center(x)},
               {"theta_of_t_is_frobenius", theta_twisted(sigma, 1, E.generator()) == sigma.apply(E.generator())}};

  return {{"example", 2},
          {"title", "quaternion algebra (u, t) with u a non-square unit"},
          {"algebra", A->to_string()},
          {"profile", profile_json(desc.over, q)},
          {"division", report.is_division == Tristate::True},
          {"u_is_square", unit_is_square(A->a())},
          {"classification", report_json(report)},
          {"diagram", zeta_json(report)},
          {"verdict", verdict_json(verdict(desc.over, report, q))},
          {"witnesses", witnesses},
          {"twisted_series", twisted}};
}

json symbol_instance(const std::string& text, std::int64_t q, std::int64_t precision) {
  const auto desc = parse_algebra(text);
  const auto A = instantiate(desc, precision);
  const auto report = classify(*A);
  const auto k = kappa(*A, v_D(A->i()), v_D(A->j()));
  return {{"algebra", A->to_string()},
          {"q", q},
          {"r_q", desc.over.r_q(q)},
          {"cd_q", desc.over.cd(q).to_string()},
          {"class", report.class_name()},
          {"index", integer_to_json(report.index)},
          {"value_group", report.value_group},
          {"classification", report_json(report)},
          {"diagram", zeta_json(report)},
          {"kappa_i_j", k.element.to_string()},
          {"verdict", verdict_json(verdict(desc.over, report, q))}};
}

json example_three(std::mt19937_64& rng, std::int64_t precision) {
  json main = symbol_instance("symbol(n=3, omega=2, a=x, b=y) over F7((x))((y))", 3, precision);
  const auto A = instantiate(parse_algebra("symbol(n=3, omega=2, a=x, b=y) over F7((x))((y))"), precision);
  json witnesses = json::array();
  witnesses.push_back(witness_entry(A->scalar(A->tower().constant(A->omega())), rng));
  for (const auto& c : {A->one() + A->i(), A->one() - A->j()}) {
    const auto g = c.coefficient(1, 0).is_exact_zero() ? A->i() : A->j();
    witnesses.push_back(witness_entry(c * (g * c * g.inverse()).inverse(), rng));
  }
  main["witnesses"] = witnesses;
  main["example"] = 3;
  main["title"] = "symbol algebra (x, y)_{omega, n} over k((x))((y)) with cd_q(k) = 1";
  main["further_instances"] = json::array(
      {symbol_instance("symbol(n=4, a=x, b=y) over F5((x))((y))", 2, precision),
       symbol_instance("symbol(n=2, a=x, b=y) over F3((x))((y))", 2, precision)});
  return main;
}

}  // namespace

nlohmann::json run_example(int id, std::uint64_t seed, std::int64_t precision) {
  std::mt19937_64 rng(seed);
  json j;
  switch (id) {
    case 1:
      j = example_one();
      break;
    case 2:
      j = example_two(rng, precision);
      break;
    case 3:
      j = example_three(rng, precision);
      break;
    default:
      throw DomainError("no example " + std::to_string(id) + "; choose 1, 2 or 3");
  }
  j["schema"] = 1;
  return j;
}

// ------------------------------------------------------------------ selftest

namespace {

struct Suite {
  explicit Suite(std::string n) : name(std::move(n)) {}

  std::string name;
  int checks = 0;
  int failures = 0;
  std::vector<std::string> messages;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (messages.size() < 5) messages.push_back(what);
  }

  /// Runs body, counting an exception as a failure.
  void guarded(const std::function<void()>& body, const std::string& what) {
    try {
      body();
    } catch (const Error& e) {
      check(false, what + ": " + e.what());
    }
  }

  json to_json() const {
    return {{"suite", name}, {"checks", checks}, {"failures", failures}, {"messages", messages},
            {"passed", failures == 0}};
  }
};

std::vector<SymbolAlgebra::Ptr> selftest_corpus() {
  std::vector<SymbolAlgebra::Ptr> v;
  for (const char* text : {"symbol(n=2, a=x, b=y) over F3((x))((y))", "symbol(n=3, a=x, b=y) over F7((x))((y))",
                           "symbol(n=2, a=2, b=t) over F5((t))", "symbol(n=2, a=-1, b=-1) over Q"})
    v.push_back(instantiate(parse_algebra(text)));
  return v;
}

Lattice random_overlattice(std::mt19937_64& rng, std::size_t r) {
  std::vector<QVector> gens;
  for (std::size_t k = 0; k < r; ++k) {
    QVector e(r, 0);
    e[k] = 1;
    gens.push_back(e);
  }
  std::uniform_int_distribution<int> den(1, 4), num(-3, 3);
  const int extra = static_cast<int>(rng() % 3);
  for (int k = 0; k < extra; ++k) {
    QVector v(r);
    for (auto& c : v) {
      c = Rational(num(rng), den(rng));
      c.canonicalize();
    }
    gens.push_back(v);
  }
  return Lattice(r, gens);
}

}  // namespace

nlohmann::json selftest(std::uint64_t seed, const SelftestSizes& sizes, bool mutant) {
  std::mt19937_64 rng(seed);
  std::vector<Suite> suites;
  const auto corpus = selftest_corpus();

  Suite norm("norm-multiplicativity");
  {
    std::vector<SymbolAlgebra::Ptr> algs = corpus;
    if (mutant) algs = {corpus[1]->mutated()};
    for (int k = 0; k < sizes.norm_pairs; ++k) {
      const auto& A = algs[static_cast<std::size_t>(k) % algs.size()];
      norm.guarded(
          [&] {
            const auto x = A->random_element(rng), y = A->random_element(rng);
            norm.check(nrd(x * y) == nrd(x) * nrd(y), "nrd(xy) != nrd(x) nrd(y) in " + A->to_string());
          },
          "norm check");
    }
  }
  suites.push_back(norm);

  Suite val("valuation");
  for (int k = 0; k < sizes.valuation_pairs; ++k) {
    const auto& A = corpus[static_cast<std::size_t>(k) % corpus.size()];
    if (A->tower().height() == 0) continue;
    val.guarded(
        [&] {
          const auto x = A->random_monomial(rng), y = A->random_element(rng);
          if (y.is_exact_zero()) return;
          val.check(v_D(x * y) == v_D(x) + v_D(y), "v_D not additive in " + A->to_string());
        },
        "valuation check");
  }
  suites.push_back(val);

  Suite comm("commutators");
  for (int k = 0; k < sizes.commutator_pairs; ++k) {
    const auto& A = corpus[static_cast<std::size_t>(k) % corpus.size()];
    comm.guarded(
        [&] {
          const auto x = A->random_monomial(rng), y = A->random_monomial(rng);
          const auto c = commutator(x, y);
          comm.check(A->tower().height() == 0 || v_D(c.element) == QVector(A->tower().height(), 0),
                     "commutator of nonzero value");
        },
        "commutator");
  }
  suites.push_back(comm);

  Suite wit("witnesses");
  for (int k = 0; k < sizes.witnesses; ++k) {
    const auto& A = corpus[2 + static_cast<std::size_t>(k) % 2];
    wit.guarded(
        [&] {
          const auto w = decompose_norm_one(certify_norm_one(random_norm_one(*A, rng)), rng);
          wit.check(w.verified && verify_witness(w), "witness does not verify in " + A->to_string());
        },
        "decomposition");
  }
  suites.push_back(wit);

  Suite lat("lattice");
  for (int k = 0; k < sizes.lattice_pairs; ++k) {
    const std::size_t r = 1 + rng() % 3;
    const Lattice small = Lattice::standard(r), big = random_overlattice(rng, r);
    lat.guarded(
        [&] {
          const auto Q = quotient(big, small);
          lat.check(torsion_rank(Q) <= rational_rank(small), "torsion rank exceeds rational rank");
          for (std::int64_t q : {2, 3}) {
            const auto rq = q_rank(small, q);
            if (rq == 1) lat.check(Q.p_rank(q) <= 1, "q-part not cyclic for r_q = 1");
          }
          lat.check(big.contains(small), "overlattice does not contain Z^r");
        },
        "lattice");
  }
  suites.push_back(lat);

  Suite desc("descriptions");
  for (int k = 0; k < sizes.descriptions; ++k) {
    desc.guarded(
        [&] {
          const Description d = random_description(rng);
          desc.check(parse_description(to_string(d)) == d, "round trip failed for " + to_string(d));
        },
        "description");
  }
  suites.push_back(desc);

  Suite hensel("hensel");
  for (int k = 0; k < sizes.hensel_units; ++k) {
    const std::int64_t p = std::vector<std::int64_t>{3, 5, 7, 11}[static_cast<std::size_t>(k) % 4];
    const Tower& T = Tower::make(Field::prime(p), {"t"});
    hensel.guarded(
        [&] {
          const auto u = T.random_unit(rng, 4);
          bool residue_square = false;
          for (std::int64_t y = 1; y < p; ++y) residue_square = residue_square || (y * y) % p == u.residue().residue();
          const auto s = u.unit_square_root();
          hensel.check(unit_is_square(u) == residue_square && s.has_value() == residue_square,
                       "square test disagrees with residue squaring");
          if (s) hensel.check((*s * *s - u).is_zero_to_precision(), "square root witness fails");
        },
        "hensel");
  }
  suites.push_back(hensel);

  json out{{"schema", 1}, {"seed", seed}, {"mutant", mutant}};
  json list = json::array();
  bool passed = true;
  int checks = 0;
  for (const auto& s : suites) {
    list.push_back(s.to_json());
    passed = passed && s.failures == 0;
    checks += s.checks;
  }
  out["suites"] = list;
  out["checks"] = checks;
  out["passed"] = passed;
  return out;
}

}  // namespace valdiv
