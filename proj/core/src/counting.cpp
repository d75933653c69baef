#include "minvec/counting.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "minvec/errors.hpp"

namespace minvec::counting {

namespace {

std::uint64_t row_key(const std::int64_t* row, int n, std::int64_t q) {
  std::uint64_t k = 0;
  for (int c = n - 1; c >= 0; --c) k = k * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(mod(row[c], q));
  return k;
}

// Exact determinant by Laplace expansion along the first row.
std::int64_t det_exact(const std::vector<std::int64_t>& a, int n) {
  if (n == 1) return a[0];
  if (n == 2) return a[0] * a[3] - a[1] * a[2];
  std::int64_t d = 0;
  std::vector<std::int64_t> minor(static_cast<std::size_t>((n - 1) * (n - 1)));
  for (int c = 0; c < n; ++c) {
    if (a[static_cast<std::size_t>(c)] == 0) continue;
    std::size_t t = 0;
    for (int r = 1; r < n; ++r)
      for (int k = 0; k < n; ++k)
        if (k != c) minor[t++] = a[static_cast<std::size_t>(r * n + k)];
    const std::int64_t sub = det_exact(minor, n - 1);
    d += (c % 2 ? -1 : 1) * a[static_cast<std::size_t>(c)] * sub;
  }
  return d;
}

std::int64_t det_exact(const ModMat& x) {
  return det_exact(std::vector<std::int64_t>(x.a.begin(), x.a.begin() + x.n * x.n), x.n);
}

// (-1)^(r+c) det of x without row r and column c.
std::int64_t cofactor(const ModMat& x, int r, int c) {
  const int n = x.n;
  if (n == 1) return 1;
  std::vector<std::int64_t> minor;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (i != r && k != c) minor.push_back(x(i, k));
  return ((r + c) % 2 ? -1 : 1) * det_exact(minor, n - 1);
}

ModMat adjugate_exact(const ModMat& x) {
  ModMat a(x.n);
  for (int r = 0; r < x.n; ++r)
    for (int c = 0; c < x.n; ++c) a(c, r) = cofactor(x, r, c);
  return a;
}

bool lex_less(const ModMat& a, const ModMat& b) {
  return std::lexicographical_compare(a.a.begin(), a.a.begin() + a.n * a.n, b.a.begin(), b.a.begin() + b.n * b.n);
}

}  // namespace

Torus Torus::everything(int n) {
  Torus t;
  t.n_ = n;
  return t;
}

Torus Torus::generated(int n, std::int64_t p, int c, const std::vector<ModMat>& gens, std::int64_t budget) {
  Torus t;
  t.n_ = n;
  t.p_ = p;
  t.modulus_ = ipow(p, c);
  t.kind_ = 1;
  const std::int64_t q = t.modulus_;
  const MatCodec codec(n, q);
  for (const auto& g : gens)
    if (mod(det(g, p), p) == 0) throw DatumInvalid("torus generator " + to_string(g) + " is not invertible mod p");
  std::deque<ModMat> queue{ModMat::identity(n)};
  t.elements_.insert(codec.encode(ModMat::identity(n)));
  while (!queue.empty()) {
    const ModMat x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      const ModMat y = mul(x, g, q);
      if (t.elements_.insert(codec.encode(y)).second) {
        if (static_cast<std::int64_t>(t.elements_.size()) > budget)
          throw BudgetExceeded("torus closure exceeds " + std::to_string(budget) + " residues", t.elements_.size());
        queue.push_back(y);
      }
    }
  }
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b)
      if (!(mul(gens[a], gens[b], q) == mul(gens[b], gens[a], q))) t.abelian_ = false;
  t.rows_.resize(static_cast<std::size_t>(n));
  for (const auto key : t.elements_) {
    const ModMat x = codec.decode(key);
    for (int r = 0; r < n; ++r) t.rows_[static_cast<std::size_t>(r)].insert(row_key(&x.a[static_cast<std::size_t>(r * n)], n, q));
  }
  return t;
}

Torus Torus::span(int n, std::int64_t p, int c, const std::vector<ModMat>& basis) {
  Torus t;
  t.n_ = n;
  t.p_ = p;
  t.modulus_ = ipow(p, c);
  t.kind_ = 2;
  const std::int64_t q = t.modulus_;
  for (const auto& b : basis) t.basis_.push_back(reduce(b, q));
  for (std::size_t k = 0; k < t.basis_.size(); ++k) {
    int piv = -1;
    for (int i = 0; i < n * n && piv < 0; ++i) {
      if (t.basis_[k].a[static_cast<std::size_t>(i)] != 1 % q) continue;
      bool clean = true;
      for (std::size_t l = 0; l < t.basis_.size(); ++l)
        if (l != k && t.basis_[l].a[static_cast<std::size_t>(i)] != 0) clean = false;
      if (clean) piv = i;
    }
    if (piv < 0) throw DatumInvalid("torus span basis is not in pivot form at element " + std::to_string(k + 1));
    t.pivots_.push_back(piv);
  }
  auto in_span = [&](const ModMat& x) {
    ModMat r = reduce(x, q);
    for (std::size_t k = 0; k < t.basis_.size(); ++k)
      r = sub(r, scale(t.basis_[k], r.a[static_cast<std::size_t>(t.pivots_[k])], q), q);
    return all_divisible(r, q);
  };
  if (!in_span(ModMat::identity(n))) throw DatumInvalid("torus span does not contain the identity");
  for (const auto& a : t.basis_)
    for (const auto& b : t.basis_) {
      if (!in_span(mul(a, b, q))) throw DatumInvalid("torus span is not closed under products");
      if (!(mul(a, b, q) == mul(b, a, q))) t.abelian_ = false;
    }
  return t;
}

bool Torus::contains(const ModMat& x) const {
  if (kind_ == 0) return true;
  const std::int64_t q = modulus_;
  if (kind_ == 1) return elements_.count(MatCodec(n_, q).encode(reduce(x, q))) > 0;
  if (mod(det(x, p_), p_) == 0) return false;
  ModMat r = reduce(x, q);
  for (std::size_t k = 0; k < basis_.size(); ++k)
    r = sub(r, scale(basis_[k], r.a[static_cast<std::size_t>(pivots_[k])], q), q);
  return all_divisible(r, q);
}

bool Torus::row_allowed(int r, const std::int64_t* row) const {
  if (kind_ != 1) return true;
  return rows_[static_cast<std::size_t>(r)].count(row_key(row, n_, modulus_)) > 0;
}

std::optional<std::int64_t> Torus::size() const {
  if (kind_ == 1) return static_cast<std::int64_t>(elements_.size());
  if (kind_ == 0) return 1;
  return std::nullopt;
}

std::string Torus::kind() const {
  switch (kind_) {
    case 0:
      return "none";
    case 1:
      return "generated";
    default:
      return "span";
  }
}

void validate(const LatticeQuery& q) {
  if (q.n < 1 || q.n > kMaxDim) throw DatumInvalid("n out of range");
  if (q.m <= 0) throw DatumInvalid("m must be positive");
  if (q.B < 0) throw DatumInvalid("B must be non-negative");
  if (!is_prime(q.p)) throw DatumInvalid("p must be prime");
  if (q.frak_c < 0) throw DatumInvalid("c must be non-negative");
  if (std::gcd(q.m, q.p) != 1) throw DatumInvalid("m must be coprime to p");
  if (!q.torus_gens.empty() && !q.torus_span.empty()) throw DatumInvalid("give torus generators or a torus span, not both");
  for (const auto& g : q.torus_gens)
    if (g.n != q.n) throw DatumInvalid("torus generator has the wrong size");
  for (const auto& g : q.torus_span)
    if (g.n != q.n) throw DatumInvalid("torus span element has the wrong size");
  if (q.frak_c > 0 && q.torus_gens.empty() && q.torus_span.empty())
    throw DatumInvalid("c > 0 needs a torus");
}

Torus make_torus(const LatticeQuery& q) {
  validate(q);
  if (q.frak_c == 0) return Torus::everything(q.n);
  if (!q.torus_span.empty()) return Torus::span(q.n, q.p, q.frak_c, q.torus_span);
  return Torus::generated(q.n, q.p, q.frak_c, q.torus_gens);
}

namespace {

class Search {
 public:
  Search(const LatticeQuery& q, const Torus& t, const EnumerateOptions& opt) : q_(q), t_(t), opt_(opt), x_(q.n) {
    const int n = q.n;
    order_ = opt.row_order;
    if (order_.empty()) {
      order_.resize(static_cast<std::size_t>(n));
      std::iota(order_.begin(), order_.end(), 0);
    }
    std::vector<int> check = order_;
    std::sort(check.begin(), check.end());
    for (int i = 0; i < n; ++i)
      if (static_cast<int>(check.size()) != n || check[static_cast<std::size_t>(i)] != i)
        throw std::invalid_argument("row_order must be a permutation of 0..n-1");
    std::vector<std::int64_t> v(static_cast<std::size_t>(n), -q.B);
    while (true) {
      rows_.push_back(v);
      std::size_t k = 0;
      while (k < v.size() && ++v[k] > q.B) v[k++] = -q.B;
      if (k == v.size()) break;
    }
    free_norm2_ = static_cast<long double>(n) * static_cast<long double>(q.B) * static_cast<long double>(q.B);
    m2_ = static_cast<long double>(q.m) * static_cast<long double>(q.m);
  }

  std::vector<ModMat> run() {
    if (q_.n == 1) {
      if (q_.m <= q_.B) {
        ModMat x(1);
        x(0, 0) = q_.m;
        if (t_.contains(x)) out_.push_back(x);
      }
    } else {
      descend(0, 1);
    }
    std::sort(out_.begin(), out_.end(), lex_less);
    return out_;
  }

  std::int64_t nodes() const { return nodes_; }

 private:
  void tick() {
    if (++nodes_ > opt_.budget) {
      long double est = 1;
      for (int i = 0; i < q_.n * q_.n; ++i) est *= static_cast<long double>(2 * q_.B + 1);
      throw BudgetExceeded("enumeration exceeds " + std::to_string(opt_.budget) + " nodes (" +
                               std::to_string(out_.size()) + " matrices found so far)",
                           static_cast<std::uint64_t>(std::min(est, 1.8e19L)), static_cast<std::int64_t>(out_.size()));
    }
  }

  void descend(int level, long double norm_product) {
    const int n = q_.n;
    if (level == n - 1) {
      last_row();
      return;
    }
    const int r = order_[static_cast<std::size_t>(level)];
    for (const auto& row : rows_) {
      tick();
      long double norm2 = 0;
      for (const auto v : row) norm2 += static_cast<long double>(v * v);
      if (norm2 == 0) continue;
      long double bound = norm_product * norm2;
      for (int k = level + 1; k < n; ++k) bound *= free_norm2_;
      if (bound < m2_) continue;
      if (!t_.row_allowed(r, row.data())) continue;
      for (int c = 0; c < n; ++c) x_(r, c) = row[static_cast<std::size_t>(c)];
      descend(level + 1, norm_product * norm2);
    }
  }

  void last_row() {
    const int n = q_.n;
    const int r = order_[static_cast<std::size_t>(n - 1)];
    std::vector<std::int64_t> cof(static_cast<std::size_t>(n));
    int piv = -1;
    for (int c = 0; c < n; ++c) {
      cof[static_cast<std::size_t>(c)] = cofactor(x_, r, c);
      if (cof[static_cast<std::size_t>(c)] != 0) piv = c;
    }
    if (piv < 0) return;
    std::vector<std::int64_t> v(static_cast<std::size_t>(n), -q_.B);
    while (true) {
      tick();
      std::int64_t s = 0;
      for (int c = 0; c < n; ++c)
        if (c != piv) s += v[static_cast<std::size_t>(c)] * cof[static_cast<std::size_t>(c)];
      const std::int64_t rest = q_.m - s;
      const std::int64_t cp = cof[static_cast<std::size_t>(piv)];
      if (rest % cp == 0) {
        const std::int64_t xp = rest / cp;
        if (xp >= -q_.B && xp <= q_.B) {
          v[static_cast<std::size_t>(piv)] = xp;
          for (int c = 0; c < n; ++c) x_(r, c) = v[static_cast<std::size_t>(c)];
          if (t_.contains(x_)) out_.push_back(x_);
          v[static_cast<std::size_t>(piv)] = -q_.B;
        }
      }
      // Odometer over the non-pivot entries.
      int k = 0;
      while (k < n) {
        if (k == piv) {
          ++k;
          continue;
        }
        if (++v[static_cast<std::size_t>(k)] <= q_.B) break;
        v[static_cast<std::size_t>(k)] = -q_.B;
        ++k;
      }
      if (k == n) break;
    }
  }

  const LatticeQuery& q_;
  const Torus& t_;
  const EnumerateOptions& opt_;
  std::vector<int> order_;
  std::vector<std::vector<std::int64_t>> rows_;
  ModMat x_;
  long double free_norm2_ = 0;
  long double m2_ = 0;
  std::int64_t nodes_ = 0;
  std::vector<ModMat> out_;
};

}  // namespace

std::vector<ModMat> enumerate_S(const LatticeQuery& q, const Torus& t, const EnumerateOptions& opt,
                                std::int64_t* nodes) {
  validate(q);
  Search s(q, t, opt);
  auto out = s.run();
  if (nodes) *nodes = s.nodes();
  return out;
}

std::vector<ModMat> brute_force_S(const LatticeQuery& q, const Torus& t) {
  validate(q);
  const int n = q.n;
  ModMat x(n);
  for (int i = 0; i < n * n; ++i) x.a[static_cast<std::size_t>(i)] = -q.B;
  std::vector<ModMat> out;
  while (true) {
    if (det_exact(x) == q.m && t.contains(x)) out.push_back(x);
    int k = 0;
    while (k < n * n && ++x.a[static_cast<std::size_t>(k)] > q.B) x.a[static_cast<std::size_t>(k++)] = -q.B;
    if (k == n * n) break;
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

AbelianVerdict abelian_check(const std::vector<ModMat>& s) {
  AbelianVerdict v;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      ++v.pairs_checked;
      if (!(mul_exact(s[a], s[b]) == mul_exact(s[b], s[a]))) {
        v.abelian = false;
        v.witness = std::make_pair(s[a], s[b]);
        return v;
      }
    }
  return v;
}

Regime regime(const LatticeQuery& q) {
  Regime r;
  BigInt fact = 1;
  for (int i = 2; i < q.n; ++i) fact *= i;
  BigInt A = fact;
  for (int i = 0; i < q.n - 1; ++i) A *= q.B;
  const BigInt n = q.n;
  const BigInt B = q.B;
  const BigInt m = q.m;
  r.rigorous_bound = n * n * n * A * A * B * B + m * m;
  r.proxy = n * m * m * B * B * B * B;
  r.p_power = 1;
  for (int i = 0; i < q.frak_c; ++i) r.p_power *= q.p;
  r.rigorous = r.p_power > r.rigorous_bound;
  r.proxy_holds = r.p_power > r.proxy;
  return r;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t m) {
  std::vector<std::pair<std::int64_t, int>> f;
  for (std::int64_t d = 2; d * d <= m; ++d) {
    int a = 0;
    while (m % d == 0) {
      m /= d;
      ++a;
    }
    if (a) f.emplace_back(d, a);
  }
  if (m > 1) f.emplace_back(m, 1);
  return f;
}

BigInt partition_count(std::int64_t a, int n) {
  if (a < 0 || n < 1) throw std::invalid_argument("partition_count: need a >= 0, n >= 1");
  // C(n+a-1, n-1)
  BigInt r = 1;
  for (int k = 1; k <= n - 1; ++k) {
    r *= a + k;
    r /= k;
  }
  return r;
}

std::int64_t partition_count_oracle(std::int64_t a, int n) {
  if (n == 1) return 1;
  std::int64_t total = 0;
  for (std::int64_t first = 0; first <= a; ++first) total += partition_count_oracle(a - first, n - 1);
  return total;
}

BigInt tau_bound(const std::vector<std::pair<std::int64_t, int>>& factorization, int n) {
  BigInt r = 1;
  for (const auto& [l, a] : factorization) r *= partition_count(a, n);
  return r;
}

std::vector<std::int64_t> fiber_classes(const std::vector<ModMat>& s, std::int64_t m) {
  std::vector<std::size_t> parent(s.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<ModMat> adj;
  for (const auto& g : s) adj.push_back(adjugate_exact(g));
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (all_divisible(mul_exact(adj[a], s[b]), m)) parent[find(a)] = find(b);
  std::vector<std::int64_t> size(s.size(), 0);
  for (std::size_t a = 0; a < s.size(); ++a) ++size[find(a)];
  std::vector<std::int64_t> out;
  for (const auto v : size)
    if (v) out.push_back(v);
  std::sort(out.rbegin(), out.rend());
  return out;
}

CountReport count(const LatticeQuery& q, const EnumerateOptions& opt) {
  CountReport r;
  r.query = q;
  const Torus t = make_torus(q);
  r.torus_kind = t.kind();
  r.matrices = enumerate_S(q, t, opt, &r.nodes);
  r.abelian = abelian_check(r.matrices);
  r.regime = regime(q);
  r.factorization = factorize(q.m);
  r.tau_bound = tau_bound(r.factorization, q.n);
  const auto classes = fiber_classes(r.matrices, q.m);
  r.fiber_classes = static_cast<std::int64_t>(classes.size());
  r.max_fiber = classes.empty() ? 0 : classes.front();
  r.classes_within_tau = BigInt(r.fiber_classes) <= r.tau_bound;
  r.count_within_bound = BigInt(static_cast<std::int64_t>(r.matrices.size())) <= BigInt(r.max_fiber) * r.tau_bound;
  return r;
}

ExponentReport amplifier_exponent(int n) {
  if (n < 2) throw std::invalid_argument("n >= 2 required");
  ExponentReport e;
  e.n = n;
  const std::int64_t n3 = static_cast<std::int64_t>(n) * n * n;
  e.closed_form = make_rational(n - 1, 4) - make_rational(1, 8 * n3);
  // d_pi ~ p^(-c(n^2-n)/2) = C^(-(n-1)/2) with C = p^(nc).
  e.dpi_exponent = make_rational(-(n - 1), 2);
  // L0 ~ p^(frak_c/(2n^2)), frak_c = c/2: p^(c/(4n^2)) = C^(1/(4n^3)).
  e.l0_exponent = make_rational(1, 4 * n3);
  e.assembled = -(e.dpi_exponent + e.l0_exponent) / 2;
  // p^(c(n^2-n)/4 - frak_c/(4n^2)) with frak_c = c/2, divided by nc.
  e.penultimate = make_rational(n * n - n, 4 * n) - make_rational(1, 8 * n3);
  e.flipped = -(e.dpi_exponent - e.l0_exponent) / 2;
  e.assembled_matches = e.assembled == e.closed_form;
  e.penultimate_matches = e.penultimate == e.closed_form;
  e.flipped_matches = e.flipped == e.closed_form;
  e.l0_symbolic = "frak_c/(2n^2)";
  return e;
}

}  // namespace minvec::counting
