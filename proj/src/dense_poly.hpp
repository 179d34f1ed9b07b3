#pragma once

// Exact Laurent polynomials over F_p in m variables stored as a dense box of
// residues. Internal fast path for determinant-heavy computations; the
// exponent order matches valuation vectors (outermost variable first).

#include <cstdint>
#include <optional>
#include <vector>

#include "valdiv/tower.hpp"

namespace valdiv::detail {

struct DensePoly {
  std::int64_t p = 0;
  std::vector<std::int64_t> lo;   // lowest exponent per variable
  std::vector<std::int64_t> ext;  // box extent per variable; empty box = zero
  std::vector<std::int64_t> c;    // row-major, last variable fastest

  bool is_zero() const;
};

/// nullopt unless x is exact and the tower base is a prime field.
std::optional<DensePoly> to_dense(const TowerElement& x);
TowerElement from_dense(const DensePoly& x, const Tower& tower);

DensePoly dense_zero(std::int64_t p, std::size_t m);
DensePoly operator+(const DensePoly& a, const DensePoly& b);
DensePoly operator-(const DensePoly& a, const DensePoly& b);
DensePoly operator*(const DensePoly& a, const DensePoly& b);

}  // namespace valdiv::detail
