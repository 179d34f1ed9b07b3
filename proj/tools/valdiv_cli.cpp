#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "valdiv/description.hpp"
#include "valdiv/errors.hpp"
#include "valdiv/examples.hpp"
#include "valdiv/sk1.hpp"

using namespace valdiv;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kInputError = 2;

struct Options {
  std::int64_t precision = 32;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string profile;
  std::string algebra;
  std::int64_t q = 0;
  int degree = 0;
  int count = 10;
  int example = 0;
  int size = -1;
  bool mutant = false;
};

void print_text(const json& j, std::ostream& out, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = j.is_object() ? it.key() : "-";
    const json& v = it.value();
    if (v.is_structured() && !v.empty()) {
      out << indent << key << ":\n";
      print_text(v, out, indent + "  ");
    } else {
      out << indent << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void emit(const json& body, const Options& opt) {
  json j = body;
  j["schema"] = 1;
  if (opt.format == "text")
    print_text(j, std::cout);
  else
    std::cout << j.dump(2) << "\n";
}

/// Smallest prime factor of n.
std::int64_t smallest_prime(std::int64_t n) {
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

int run_cd(const Options& opt) {
  if (opt.q < 2) throw DomainError("--q must be a prime");
  emit(profile_json(parse_profile(opt.profile), opt.q), opt);
  return kOk;
}

int run_classify(const Options& opt) {
  const auto desc = parse_algebra(opt.algebra);
  const auto A = instantiate(desc, opt.precision);
  const auto report = classify(*A);
  json j;
  to_json(j, report);
  json diagram;
  to_json(diagram, compute_zeta(report));
  emit({{"algebra", A->to_string()}, {"classification", j}, {"diagram", diagram}}, opt);
  return kOk;
}

int run_witness(const Options& opt) {
  const auto A = instantiate(parse_algebra(opt.algebra), opt.precision);
  std::mt19937_64 rng(opt.seed);
  json results = json::array();
  bool all = true;
  for (int k = 0; k < opt.count; ++k) {
    const auto target = random_norm_one(*A, rng);
    json r{{"element", target.to_string()}};
    try {
      const auto w = decompose_norm_one(certify_norm_one(target), rng);
      r["witness"] = witness_json(w);
      r["verified"] = w.verified;
      all = all && w.verified;
    } catch (const RetriesExhausted& e) {
      r["witness"] = nullptr;
      r["verified"] = false;
      r["error"] = e.what();
      all = false;
    }
    results.push_back(r);
  }
  emit({{"algebra", A->to_string()}, {"seed", opt.seed}, {"results", results}}, opt);
  return all ? kOk : kVerificationFailure;
}

int run_verdict(const Options& opt) {
  if (opt.profile.empty() && opt.algebra.empty()) throw DomainError("give --profile, --algebra or both");
  RamificationReport report;
  FieldProfile profile;
  json body;
  if (!opt.algebra.empty()) {
    const auto desc = parse_algebra(opt.algebra);
    const auto A = instantiate(desc, opt.precision);
    report = classify(*A);
    profile = opt.profile.empty() ? desc.over : parse_profile(opt.profile);
    body["algebra"] = A->to_string();
  } else {
    if (opt.degree < 1) throw DomainError("--degree is required without --algebra");
    profile = parse_profile(opt.profile);
    report.dimension = opt.degree * opt.degree;
    report.index = 1;
    report.residue_degree = report.dimension;
    report.defect = 1;
    report.is_division = Tristate::Unknown;
  }
  const std::int64_t n = static_cast<std::int64_t>(std::llround(std::sqrt(report.dimension)));
  const std::int64_t q = opt.q != 0 ? opt.q : smallest_prime(n);
  json v;
  to_json(v, verdict(profile, report, q));
  body["profile"] = profile.to_string();
  body["verdict"] = v;
  body["conclusion"] = v["conclusion"];
  body["case"] = v["case"];
  body["reasoning"] = v["reasoning"];
  emit(body, opt);
  return kOk;
}

int run_example_command(const Options& opt) {
  emit(run_example(opt.example, opt.seed, opt.precision), opt);
  return kOk;
}

int run_selftest(const Options& opt) {
  const SelftestSizes sizes = opt.size < 0 ? SelftestSizes{} : SelftestSizes::uniform(opt.size);
  const json j = selftest(opt.seed, sizes, opt.mutant);
  emit(j, opt);
  return j["passed"].get<bool>() ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Valued division algebras over iterated Laurent series fields"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--precision", opt.precision, "Relative precision in terms per variable")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed for randomized commands");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  auto* cd = app.add_subcommand("cd", "cd_q of a field profile");
  cd->add_option("--profile", opt.profile, "Field profile, e.g. decl(cd2=1)((x))((y))")->required();
  cd->add_option("--q", opt.q, "Prime q")->required();

  auto* cls = app.add_subcommand("classify", "Value group, residue data and ramification class");
  cls->add_option("--algebra", opt.algebra, "Symbol algebra description")->required();

  auto* wit = app.add_subcommand("sk1-witness", "Commutator witnesses for random norm-one elements");
  wit->add_option("--algebra", opt.algebra, "Symbol algebra description")->required();
  wit->add_option("--count", opt.count, "Number of elements")->check(CLI::NonNegativeNumber);
  wit->add_option("--seed", opt.seed, "Seed");

  auto* ver = app.add_subcommand("verdict", "SK_1 triviality verdict");
  ver->add_option("--profile", opt.profile, "Field profile; defaults to the base of the algebra");
  ver->add_option("--algebra", opt.algebra, "Symbol algebra description");
  ver->add_option("--q", opt.q, "Prime q; defaults to the smallest prime dividing the degree");
  ver->add_option("--degree", opt.degree, "Degree of a hypothetical algebra when no --algebra is given");

  auto* ex = app.add_subcommand("example", "Worked examples 1, 2, 3");
  ex->add_option("n", opt.example, "Example number")->required();
  ex->add_option("--seed", opt.seed, "Seed");

  auto* st = app.add_subcommand("selftest", "Run the property suites");
  st->add_option("--size", opt.size, "Cases per suite; default sizes when omitted")->check(CLI::NonNegativeNumber);
  st->add_option("--seed", opt.seed, "Seed");
  st->add_flag("--mutant", opt.mutant, "Run the norm suite on a relation-breaking algebra");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*cd) return run_cd(opt);
    if (*cls) return run_classify(opt);
    if (*wit) return run_witness(opt);
    if (*ver) return run_verdict(opt);
    if (*ex) return run_example_command(opt);
    if (*st) return run_selftest(opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DivisionByZero& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return kInputError;
}
