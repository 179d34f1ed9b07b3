#include "dense_poly.hpp"

#include <algorithm>

namespace valdiv::detail {

namespace {

struct Term {
  std::vector<std::int64_t> exps;
  std::int64_t value;
};

void collect(const TowerElement& x, std::size_t m, std::vector<std::int64_t>& exps, std::vector<Term>& out) {
  if (x.level() == 0) {
    const std::int64_t v = x.scalar().residue();
    if (v != 0) out.push_back({exps, v});
    return;
  }
  const auto& cs = x.coefficients();
  for (std::size_t idx = 0; idx < cs.size(); ++idx) {
    exps[m - x.level()] = x.start() + static_cast<std::int64_t>(idx);
    collect(cs[idx], m, exps, out);
  }
}

std::vector<std::int64_t> strides(const std::vector<std::int64_t>& ext) {
  std::vector<std::int64_t> s(ext.size(), 1);
  for (std::size_t d = ext.size(); d-- > 1;) s[d - 1] = s[d] * ext[d];
  return s;
}

std::int64_t box_size(const std::vector<std::int64_t>& ext) {
  std::int64_t n = 1;
  for (auto e : ext) n *= e;
  return n;
}

/// Offsets of the nonzero entries of a, re-indexed into a box with strides `target`.
void entries(const DensePoly& a, const std::vector<std::int64_t>& target, std::vector<std::int64_t>& offs,
             std::vector<std::int64_t>& vals) {
  const std::size_t m = a.ext.size();
  std::vector<std::int64_t> idx(m, 0);
  for (std::size_t flat = 0; flat < a.c.size(); ++flat) {
    if (a.c[flat] != 0) {
      std::int64_t o = 0;
      for (std::size_t d = 0; d < m; ++d) o += idx[d] * target[d];
      offs.push_back(o);
      vals.push_back(a.c[flat]);
    }
    for (std::size_t d = m; d-- > 0;) {
      if (++idx[d] < a.ext[d]) break;
      idx[d] = 0;
    }
  }
}

/// Copies a into the box (lo, ext), scaling by `sign`.
void accumulate(const DensePoly& a, const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& ext,
                std::vector<std::int64_t>& c, std::int64_t sign) {
  if (a.is_zero()) return;
  const auto st = strides(ext);
  std::vector<std::int64_t> shift(st.size());
  std::int64_t base = 0;
  for (std::size_t d = 0; d < st.size(); ++d) base += (a.lo[d] - lo[d]) * st[d];
  std::vector<std::int64_t> offs, vals;
  entries(a, st, offs, vals);
  for (std::size_t k = 0; k < offs.size(); ++k) {
    auto& slot = c[static_cast<std::size_t>(base + offs[k])];
    slot = (slot + sign * vals[k]) % a.p;
    if (slot < 0) slot += a.p;
  }
}

DensePoly add_signed(const DensePoly& a, const DensePoly& b, std::int64_t sign) {
  if (b.is_zero()) return a;
  if (a.is_zero() && sign == 1) return b;
  const std::size_t m = std::max(a.lo.size(), b.lo.size());
  DensePoly r;
  r.p = a.p;
  r.lo.resize(m);
  r.ext.resize(m);
  for (std::size_t d = 0; d < m; ++d) {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
    for (const DensePoly* x : {&a, &b}) {
      if (x->is_zero()) continue;
      lo = std::min(lo, x->lo[d]);
      hi = std::max(hi, x->lo[d] + x->ext[d]);
    }
    r.lo[d] = lo;
    r.ext[d] = hi - lo;
  }
  r.c.assign(static_cast<std::size_t>(box_size(r.ext)), 0);
  accumulate(a, r.lo, r.ext, r.c, 1);
  accumulate(b, r.lo, r.ext, r.c, sign);
  return r;
}

}  // namespace

bool DensePoly::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](std::int64_t v) { return v == 0; });
}

std::optional<DensePoly> to_dense(const TowerElement& x) {
  const Tower& tower = x.tower();
  if (tower.base().kind() != Field::Kind::Prime || !x.is_exact()) return std::nullopt;
  const std::size_t m = tower.height();
  const TowerElement top = x.lifted(m);
  std::vector<Term> terms;
  std::vector<std::int64_t> exps(m, 0);
  collect(top, m, exps, terms);
  DensePoly r = dense_zero(tower.base().characteristic(), m);
  if (terms.empty()) return r;
  std::vector<std::int64_t> hi(m);
  r.lo = terms[0].exps;
  hi = terms[0].exps;
  for (const auto& t : terms) {
    for (std::size_t d = 0; d < m; ++d) {
      r.lo[d] = std::min(r.lo[d], t.exps[d]);
      hi[d] = std::max(hi[d], t.exps[d]);
    }
  }
  for (std::size_t d = 0; d < m; ++d) r.ext[d] = hi[d] - r.lo[d] + 1;
  const auto st = strides(r.ext);
  r.c.assign(static_cast<std::size_t>(box_size(r.ext)), 0);
  for (const auto& t : terms) {
    std::int64_t o = 0;
    for (std::size_t d = 0; d < m; ++d) o += (t.exps[d] - r.lo[d]) * st[d];
    r.c[static_cast<std::size_t>(o)] = t.value;
  }
  return r;
}

TowerElement from_dense(const DensePoly& x, const Tower& tower) {
  const std::size_t m = tower.height();
  if (x.is_zero()) return tower.zero();
  const auto st = strides(x.ext);
  const Field& k = tower.base();
  // Sum over the outer exponent of (inner sub-box) * x_level^e.
  auto build = [&](auto&& self, std::size_t d, std::int64_t offset) -> TowerElement {
    if (d == m) return tower.constant(k.from_int(x.c[static_cast<std::size_t>(offset)]));
    TowerElement acc = tower.zero();
    for (std::int64_t e = 0; e < x.ext[d]; ++e) {
      const TowerElement inner = self(self, d + 1, offset + e * st[d]);
      if (inner.is_exact_zero()) continue;
      std::vector<std::int64_t> exps(m, 0);
      exps[d] = x.lo[d] + e;
      acc += inner * tower.monomial(k.one(), exps);
    }
    return acc;
  };
  return build(build, 0, 0);
}

DensePoly dense_zero(std::int64_t p, std::size_t m) {
  DensePoly r;
  r.p = p;
  r.lo.assign(m, 0);
  r.ext.assign(m, 0);
  return r;
}

DensePoly operator+(const DensePoly& a, const DensePoly& b) { return add_signed(a, b, 1); }
DensePoly operator-(const DensePoly& a, const DensePoly& b) { return add_signed(a, b, -1); }

DensePoly operator*(const DensePoly& a, const DensePoly& b) {
  const std::size_t m = a.lo.size();
  if (a.is_zero() || b.is_zero()) return dense_zero(a.p, m);
  DensePoly r;
  r.p = a.p;
  r.lo.resize(m);
  r.ext.resize(m);
  for (std::size_t d = 0; d < m; ++d) {
    r.lo[d] = a.lo[d] + b.lo[d];
    r.ext[d] = a.ext[d] + b.ext[d] - 1;
  }
  const auto st = strides(r.ext);
  std::vector<std::int64_t> oa, va, ob, vb;
  entries(a, st, oa, va);
  entries(b, st, ob, vb);
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(box_size(r.ext)), 0);
  const auto p = static_cast<std::uint64_t>(a.p);
  for (std::size_t i = 0; i < oa.size(); ++i) {
    const auto x = static_cast<std::uint64_t>(va[i]);
    for (std::size_t j = 0; j < ob.size(); ++j) {
      auto& slot = acc[static_cast<std::size_t>(oa[i] + ob[j])];
      slot = (slot + x * static_cast<std::uint64_t>(vb[j])) % p;
    }
  }
  r.c.assign(acc.begin(), acc.end());
  return r;
}

}  // namespace valdiv::detail
