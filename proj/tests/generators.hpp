#pragma once

// Hand-rolled random generators for property tests.

#include <random>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "valdiv/lattice.hpp"

namespace gen {

using valdiv::QVector;
using valdiv::Rational;

inline QVector qv(std::initializer_list<Rational> xs) { return QVector(xs); }

inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

struct LatticePair {
  std::size_t ambient_rank;
  std::vector<QVector> small_basis;  // independent
  std::vector<QVector> big_generators;
};

/// small has an independent random basis; big adds rational combinations of
/// it, so small sits in big with finite index.
inline LatticePair random_lattice_pair(std::mt19937_64& rng, std::size_t max_rank = 4) {
  std::uniform_int_distribution<std::size_t> rank_dist(1, max_rank);
  std::uniform_int_distribution<long> entry(-3, 3);
  std::uniform_int_distribution<long> den(1, 3);
  std::uniform_int_distribution<long> coef(-2, 2);
  std::uniform_int_distribution<long> cden(1, 4);
  std::uniform_int_distribution<int> extra(0, 2);
  LatticePair p;
  p.ambient_rank = rank_dist(rng);
  std::uniform_int_distribution<std::size_t> k_dist(0, p.ambient_rank);
  const std::size_t k = k_dist(rng);
  while (true) {
    p.small_basis.clear();
    for (std::size_t i = 0; i < k; ++i) {
      QVector v(p.ambient_rank);
      const long d = den(rng);
      for (auto& x : v) x = frac(entry(rng), d);
      p.small_basis.push_back(v);
    }
    if (oracle::rational_rank(p.small_basis) == k) break;
  }
  p.big_generators = p.small_basis;
  if (k > 0) {
    const int e = extra(rng);
    for (int t = 0; t < e; ++t) {
      QVector v(p.ambient_rank, 0);
      for (const auto& b : p.small_basis) {
        const Rational c = frac(coef(rng), cden(rng));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * b[i];
      }
      p.big_generators.push_back(v);
    }
  }
  return p;
}

}  // namespace gen
