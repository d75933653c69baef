#include "minvec/fp.hpp"

#include <stdexcept>

#include "minvec/modmat.hpp"

namespace minvec::fp {

Poly trim(Poly a, std::int64_t p) {
  for (auto& c : a) c = mod(c, p);
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly mul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) r[i + k] = mod(r[i + k] + a[i] * b[k], p);
  return trim(std::move(r), p);
}

Poly rem(const Poly& a, const Poly& b, std::int64_t p) {
  Poly bb = trim(b, p);
  if (bb.empty()) throw std::domain_error("fp::rem: division by zero polynomial");
  Poly r = trim(a, p);
  const std::int64_t lead_inv = invmod(bb.back(), p);
  while (!r.empty() && r.size() >= bb.size()) {
    const std::int64_t f = mulmod(r.back(), lead_inv, p);
    const std::size_t shift = r.size() - bb.size();
    for (std::size_t i = 0; i < bb.size(); ++i) r[shift + i] = mod(r[shift + i] - f * bb[i], p);
    r = trim(std::move(r), p);
  }
  return r;
}

Poly pow(const Poly& a, int k, std::int64_t p) {
  Poly r{1};
  for (int i = 0; i < k; ++i) r = mul(r, a, p);
  return r;
}

Poly monic_from_index(int d, std::int64_t index, std::int64_t p) {
  Poly g(static_cast<std::size_t>(d + 1), 0);
  for (int i = 0; i < d; ++i) {
    g[static_cast<std::size_t>(i)] = index % p;
    index /= p;
  }
  g[static_cast<std::size_t>(d)] = 1;
  return g;
}

bool is_irreducible(const Poly& f0, std::int64_t p) {
  const Poly f = trim(f0, p);
  const int n = degree(f);
  if (n < 1) return false;
  for (int d = 1; 2 * d <= n; ++d) {
    const std::int64_t count = ipow(p, d);
    for (std::int64_t idx = 0; idx < count; ++idx)
      if (rem(f, monic_from_index(d, idx, p), p).empty()) return false;
  }
  return true;
}

std::optional<std::pair<Poly, int>> irreducible_power(const Poly& f0, std::int64_t p) {
  Poly f = trim(f0, p);
  const int n = degree(f);
  if (n < 1) return std::nullopt;
  const std::int64_t lead_inv = invmod(f.back(), p);
  for (auto& c : f) c = mulmod(c, lead_inv, p);
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const std::int64_t count = ipow(p, d);
    for (std::int64_t idx = 0; idx < count; ++idx) {
      Poly g = monic_from_index(d, idx, p);
      if (pow(g, n / d, p) == f && is_irreducible(g, p)) return std::make_pair(g, n / d);
    }
  }
  return std::nullopt;
}

namespace {

// Reduces rows to echelon form in place and returns the rank.
int echelon(std::vector<Vec>& rows, std::int64_t p) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  int r = 0;
  for (std::size_t c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (mod(rows[static_cast<std::size_t>(i)][c], p) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[static_cast<std::size_t>(r)], rows[static_cast<std::size_t>(piv)]);
    auto& pr = rows[static_cast<std::size_t>(r)];
    const std::int64_t inv = invmod(pr[c], p);
    for (auto& x : pr) x = mulmod(x, inv, p);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r) continue;
      auto& row = rows[static_cast<std::size_t>(i)];
      const std::int64_t f = mod(row[c], p);
      if (f == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) row[k] = mod(row[k] - f * pr[k], p);
    }
    ++r;
  }
  return r;
}

std::int64_t form(const std::vector<Vec>& gram, const Vec& u, const Vec& v, std::int64_t p) {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t k = 0; k < v.size(); ++k) acc = mod(acc + u[i] * gram[i][k] % p * v[k], p);
  }
  return acc;
}

}  // namespace

int rank(std::vector<Vec> rows, std::int64_t p) { return echelon(rows, p); }

bool in_span(const std::vector<Vec>& rows, const Vec& v, std::int64_t p) {
  std::vector<Vec> a = rows;
  const int r0 = echelon(a, p);
  a.push_back(v);
  return echelon(a, p) == r0;
}

SymplecticResult symplectic_reduce(const std::vector<Vec>& gram, std::int64_t p) {
  SymplecticResult out;
  const std::size_t d = gram.size();
  out.alternating = true;
  for (std::size_t i = 0; i < d; ++i) {
    if (mod(gram[i][i], p) != 0) out.alternating = false;
    for (std::size_t k = 0; k < d; ++k)
      if (mod(gram[i][k] + gram[k][i], p) != 0) out.alternating = false;
  }
  out.nondegenerate = rank(gram, p) == static_cast<int>(d);
  if (!out.alternating || !out.nondegenerate) return out;

  std::vector<Vec> pool;
  for (std::size_t i = 0; i < d; ++i) {
    Vec e(d, 0);
    e[i] = 1;
    pool.push_back(e);
  }
  while (!pool.empty()) {
    const Vec u = pool.front();
    pool.erase(pool.begin());
    bool allzero = true;
    for (auto x : u) allzero = allzero && x == 0;
    if (allzero) continue;
    std::size_t partner = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (form(gram, u, pool[i], p) != 0) {
        partner = i;
        break;
      }
    if (partner == pool.size()) {
      out.nondegenerate = false;
      out.isotropic.clear();
      return out;
    }
    Vec w = pool[partner];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(partner));
    const std::int64_t s = invmod(form(gram, u, w, p), p);
    for (auto& x : w) x = mulmod(x, s, p);
    out.isotropic.push_back(u);
    for (auto& v : pool) {
      const std::int64_t a = form(gram, w, v, p);
      const std::int64_t b = form(gram, u, v, p);
      for (std::size_t k = 0; k < d; ++k) v[k] = mod(v[k] + a * u[k] - b * w[k], p);
    }
  }
  return out;
}

}  // namespace minvec::fp
