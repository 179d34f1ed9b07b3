#include "oracles.hpp"

#include <deque>
#include <functional>
#include <numeric>

namespace oracle {

std::size_t rational_rank(const std::vector<QVector>& rows_in) {
  std::vector<QVector> rows = rows_in;
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      const mpq_class f = rows[i][c] / rows[rank][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

namespace {

// Solves x * basis = v over Q; true iff a solution exists and is integral.
bool in_integer_span(const std::vector<QVector>& basis, const QVector& v) {
  const std::size_t k = basis.size();
  const std::size_t r = v.size();
  // Augmented system basis^T x = v^T, r equations in k unknowns.
  std::vector<QVector> a(r, QVector(k + 1));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = basis[j][i];
    a[i][k] = v[i];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < k && row < r; ++c) {
    std::size_t p = row;
    while (p < r && a[p][c] == 0) ++p;
    if (p == r) continue;
    std::swap(a[p], a[row]);
    const mpq_class piv = a[row][c];
    for (auto& x : a[row]) x /= piv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || a[i][c] == 0) continue;
      const mpq_class f = a[i][c];
      for (std::size_t j = 0; j <= k; ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  for (std::size_t i = row; i < r; ++i) {
    if (a[i][k] != 0) return false;
  }
  for (std::size_t i = 0; i < row; ++i) {
    if (a[i][k].get_den() != 1) return false;
  }
  return true;
}

std::vector<std::vector<std::int64_t>> chains_with_product(std::int64_t n) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t rest, std::int64_t prev) {
    if (rest == 1) {
      out.push_back(cur);
      return;
    }
    for (std::int64_t d = std::max<std::int64_t>(prev, 2); d <= rest; ++d) {
      if (rest % d != 0 || d % prev != 0) continue;
      cur.push_back(d);
      rec(rest / d, d);
      cur.pop_back();
    }
  };
  rec(n, 1);
  return out;
}

}  // namespace

std::optional<std::vector<Integer>> quotient_by_enumeration(const std::vector<QVector>& big_gens,
                                                            const std::vector<QVector>& small_basis,
                                                            std::size_t cap) {
  if (big_gens.empty()) return std::vector<Integer>{};
  const std::size_t r = big_gens.front().size();
  auto equivalent = [&](const QVector& x, const QVector& y) {
    QVector d(r);
    for (std::size_t i = 0; i < r; ++i) d[i] = x[i] - y[i];
    return in_integer_span(small_basis, d);
  };
  std::vector<QVector> elems{QVector(r, 0)};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const QVector e = elems[queue.front()];
    queue.pop_front();
    for (const auto& g : big_gens) {
      QVector w(r);
      for (std::size_t i = 0; i < r; ++i) w[i] = e[i] + g[i];
      bool found = false;
      for (const auto& u : elems) {
        if (equivalent(w, u)) {
          found = true;
          break;
        }
      }
      if (found) continue;
      if (elems.size() >= cap) return std::nullopt;
      elems.push_back(w);
      queue.push_back(elems.size() - 1);
    }
  }
  const std::int64_t order = static_cast<std::int64_t>(elems.size());
  // #{g : d g = 0} for each divisor d of the order.
  std::vector<std::pair<std::int64_t, std::int64_t>> counts;
  for (std::int64_t d = 1; d <= order; ++d) {
    if (order % d != 0) continue;
    std::int64_t c = 0;
    for (const auto& g : elems) {
      QVector dg(r);
      for (std::size_t i = 0; i < r; ++i) dg[i] = g[i] * static_cast<long>(d);
      if (in_integer_span(small_basis, dg)) ++c;
    }
    counts.emplace_back(d, c);
  }
  for (const auto& chain : chains_with_product(order)) {
    bool ok = true;
    for (const auto& [d, c] : counts) {
      std::int64_t predicted = 1;
      for (auto f : chain) predicted *= std::gcd(d, f);
      if (predicted != c) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<Integer> out;
      for (auto f : chain) out.emplace_back(static_cast<long>(f));
      return out;
    }
  }
  return std::nullopt;
}

std::size_t min_generators(const std::vector<std::int64_t>& factors) {
  std::int64_t order = 1;
  for (auto f : factors) order *= f;
  const std::size_t k = factors.size();
  std::vector<std::vector<std::int64_t>> elems;
  std::vector<std::int64_t> cur(k, 0);
  for (std::int64_t idx = 0; idx < order; ++idx) {
    std::int64_t rest = idx;
    for (std::size_t i = 0; i < k; ++i) {
      cur[i] = rest % factors[i];
      rest /= factors[i];
    }
    elems.push_back(cur);
  }
  auto index_of = [&](const std::vector<std::int64_t>& v) {
    std::int64_t idx = 0;
    for (std::size_t i = k; i-- > 0;) idx = idx * factors[i] + v[i];
    return idx;
  };
  auto closure_size = [&](const std::vector<std::size_t>& gens) {
    std::vector<bool> seen(static_cast<std::size_t>(order), false);
    std::deque<std::int64_t> q{0};
    seen[0] = true;
    std::int64_t count = 1;
    while (!q.empty()) {
      const auto e = elems[static_cast<std::size_t>(q.front())];
      q.pop_front();
      for (auto g : gens) {
        std::vector<std::int64_t> w(k);
        for (std::size_t i = 0; i < k; ++i) w[i] = (e[i] + elems[g][i]) % factors[i];
        const auto wi = index_of(w);
        if (!seen[static_cast<std::size_t>(wi)]) {
          seen[static_cast<std::size_t>(wi)] = true;
          ++count;
          q.push_back(wi);
        }
      }
    }
    return count;
  };
  for (std::size_t size = 0;; ++size) {
    std::vector<std::size_t> pick(size);
    std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t pos, std::size_t from) {
      if (pos == size) return closure_size(pick) == order;
      for (std::size_t g = from; g < elems.size(); ++g) {
        pick[pos] = g;
        if (search(pos + 1, g + 1)) return true;
      }
      return false;
    };
    if (search(0, 0)) return size;
  }
}

std::vector<bool> squares_mod(std::int64_t p) {
  std::vector<bool> sq(static_cast<std::size_t>(p), false);
  for (std::int64_t x = 0; x < p; ++x) sq[static_cast<std::size_t>((x * x) % p)] = true;
  return sq;
}

}  // namespace oracle

namespace oracle {

using valdiv::TowerElement;

TowerElement quaternion_norm_form(const std::vector<TowerElement>& c, const TowerElement& u, const TowerElement& t) {
  return c[0] * c[0] - u * c[1] * c[1] - t * c[2] * c[2] + u * t * c[3] * c[3];
}

std::vector<TowerElement> quaternion_product(const std::vector<TowerElement>& c, const std::vector<TowerElement>& d,
                                             const TowerElement& u, const TowerElement& t) {
  return {
      c[0] * d[0] + u * c[1] * d[1] + t * c[2] * d[2] - u * t * c[3] * d[3],
      c[0] * d[1] + c[1] * d[0] - t * c[2] * d[3] + t * c[3] * d[2],
      c[0] * d[2] + c[2] * d[0] + u * c[1] * d[3] - u * c[3] * d[1],
      c[0] * d[3] + c[3] * d[0] + c[1] * d[2] - c[2] * d[1],
  };
}

std::size_t unit_pairs_mod(std::int64_t p, std::int64_t u) {
  std::size_t count = 0;
  for (std::int64_t a = 0; a < p; ++a)
    for (std::int64_t b = 0; b < p; ++b)
      if (((a * a - u * b * b) % p + p) % p != 0) ++count;
  return count;
}

}  // namespace oracle

namespace oracle {

bool conic_has_point(std::int64_t a, std::int64_t b, std::int64_t bound) {
  for (std::int64_t x = 0; x <= bound; ++x)
    for (std::int64_t y = -bound; y <= bound; ++y)
      for (std::int64_t z = -bound; z <= bound; ++z)
        if ((x || y || z) && x * x == a * y * y + b * z * z) return true;
  return false;
}

}  // namespace oracle
