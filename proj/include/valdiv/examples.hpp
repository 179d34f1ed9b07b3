#pragma once

// End-to-end reports for the three worked examples and the self-test runner
// behind the command-line tool.

#include <cstdint>

#include "json.hpp"

namespace valdiv {

/// 1: completion of Q_p(t), profile level only.
/// 2: the quaternion algebra (u, t) over F5((t)) and a twisted series ring.
/// 3: the symbol algebra (x, y)_{omega, n} over F7((x))((y)), n = 3.
nlohmann::json run_example(int id, std::uint64_t seed, std::int64_t precision);

struct SelftestSizes {
  int norm_pairs = 40;
  int valuation_pairs = 40;
  int commutator_pairs = 20;
  int witnesses = 10;
  int lattice_pairs = 100;
  int descriptions = 100;
  int hensel_units = 50;

  /// Every suite with the same count.
  static SelftestSizes uniform(int n) { return {n, n, n, n, n, n, n}; }
};

/// Runs every property suite; "passed" is false if any check failed. With
/// `mutant` the norm suite runs on a relation-breaking algebra and must fail.
nlohmann::json selftest(std::uint64_t seed, const SelftestSizes& sizes, bool mutant = false);

}  // namespace valdiv
