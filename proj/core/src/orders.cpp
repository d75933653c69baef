#include "minvec/orders.hpp"

#include <algorithm>
#include <numeric>

#include "minvec/errors.hpp"
#include "minvec/fp.hpp"

namespace minvec::orders {

using padic::MatrixApprox;
using padic::PrecisionCtx;

namespace {

using BigMat = std::vector<BigInt>;

BigMat to_big(const ModMat& x) {
  BigMat r(static_cast<std::size_t>(x.n * x.n));
  for (int i = 0; i < x.n * x.n; ++i) r[static_cast<std::size_t>(i)] = x.a[static_cast<std::size_t>(i)];
  return r;
}

BigMat big_identity(int n) {
  BigMat r(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i * n + i)] = 1;
  return r;
}

BigMat big_mul(const BigMat& x, const BigMat& y, int n) {
  BigMat r(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const BigInt& a = x[static_cast<std::size_t>(i * n + k)];
      if (a == 0) continue;
      for (int c = 0; c < n; ++c) r[static_cast<std::size_t>(i * n + c)] += a * y[static_cast<std::size_t>(k * n + c)];
    }
  return r;
}

BigMat big_pow(const BigMat& x, int k, int n) {
  BigMat r = big_identity(n);
  for (int i = 0; i < k; ++i) r = big_mul(r, x, n);
  return r;
}

BigInt big_ipow(std::int64_t p, int k) {
  BigInt r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

// p^k * x for possibly negative k; the division must be exact.
BigMat big_shift(BigMat x, int k, std::int64_t p) {
  if (k >= 0) {
    const BigInt f = big_ipow(p, k);
    for (auto& v : x) v *= f;
    return x;
  }
  const BigInt f = big_ipow(p, -k);
  for (auto& v : x) {
    if (v % f != 0) throw ConstructionFailure("element expected in O_L is not integral");
    v /= f;
  }
  return x;
}

ModMat big_reduce(const BigMat& x, int n, std::int64_t q) {
  ModMat r(n);
  for (int i = 0; i < n * n; ++i) {
    BigInt v = x[static_cast<std::size_t>(i)] % q;
    if (v < 0) v += q;
    r.a[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(v);
  }
  return r;
}

// Division-free Berkowitz over Z: c[0] = 1, c[k] coefficient of x^(n-k).
std::vector<BigInt> big_charpoly(const BigMat& x, int n) {
  auto at = [&](int r, int c) -> const BigInt& { return x[static_cast<std::size_t>(r * n + c)]; };
  std::vector<BigInt> poly{1};
  for (int k = 1; k <= n; ++k) {
    const int t = k - 1;
    std::vector<BigInt> toeplitz(static_cast<std::size_t>(k + 1), 0);
    toeplitz[0] = 1;
    toeplitz[1] = -at(t, t);
    std::vector<BigInt> v(static_cast<std::size_t>(t));
    for (int r = 0; r < t; ++r) v[static_cast<std::size_t>(r)] = at(r, t);
    for (int i = 1; i <= k - 1; ++i) {
      BigInt dot = 0;
      for (int c = 0; c < t; ++c) dot += at(t, c) * v[static_cast<std::size_t>(c)];
      toeplitz[static_cast<std::size_t>(i + 1)] = -dot;
      std::vector<BigInt> nv(static_cast<std::size_t>(t), 0);
      for (int r = 0; r < t; ++r)
        for (int c = 0; c < t; ++c) nv[static_cast<std::size_t>(r)] += at(r, c) * v[static_cast<std::size_t>(c)];
      v = std::move(nv);
    }
    std::vector<BigInt> next(static_cast<std::size_t>(k + 1), 0);
    for (int r = 0; r <= k; ++r)
      for (int s = 0; s <= std::min(r, k - 1); ++s)
        next[static_cast<std::size_t>(r)] += toeplitz[static_cast<std::size_t>(r - s)] * poly[static_cast<std::size_t>(s)];
    poly = std::move(next);
  }
  return poly;
}

int big_vp(BigInt v, std::int64_t p) {
  int k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

// Characteristic polynomial of p^shift * x reduced mod p, or nullopt when a
// coefficient is not integral.
std::optional<fp::Poly> residue_charpoly(const BigMat& x, int n, int shift, std::int64_t p) {
  const auto cp = big_charpoly(x, n);
  fp::Poly h(static_cast<std::size_t>(n + 1), 0);
  for (int k = 0; k <= n; ++k) {
    BigInt c = cp[static_cast<std::size_t>(k)];
    const int s = shift * k;
    if (c != 0) {
      if (s >= 0) {
        c *= big_ipow(p, s);
      } else {
        const BigInt f = big_ipow(p, -s);
        if (c % f != 0) return std::nullopt;
        c /= f;
      }
    }
    BigInt r = c % p;
    if (r < 0) r += p;
    // coefficient of x^(n-k)
    h[static_cast<std::size_t>(n - k)] = static_cast<std::int64_t>(r);
  }
  return fp::trim(h, p);
}

ModMat elementary(int n, int r, int c) {
  ModMat e(n);
  e(r, c) = 1;
  return e;
}

}  // namespace

HereditaryOrder::HereditaryOrder(int n, int e) : n_(n), e_(e) {
  if (n < 1 || n > kMaxDim) throw DatumInvalid("n must lie in [1, " + std::to_string(kMaxDim) + "]");
  if (e < 1) throw DatumInvalid("e must be positive");
  if (n % e != 0) throw DatumInvalid("e must divide n");
}

bool in_radical_power(const MatrixApprox& x, int i, const HereditaryOrder& o) {
  if (x.dim() != o.n()) throw std::invalid_argument("in_radical_power: dimension mismatch");
  if (x.is_exact_zero()) return true;
  bool undetermined = false;
  for (int r = 0; r < o.n(); ++r)
    for (int c = 0; c < o.n(); ++c) {
      const auto [v, exact] = x.entry_valuation(r, c);
      const int bound = o.min_valuation(r, c, i);
      if (v >= bound) continue;
      if (exact) return false;
      undetermined = true;
    }
  if (undetermined)
    throw PrecisionLoss("in_radical_power: a vanished entry leaves membership in B^" + std::to_string(i) +
                        " undecided");
  return true;
}

bool in_radical_power_mod(const ModMat& x, int i, const HereditaryOrder& o, std::int64_t p, int N) {
  for (int r = 0; r < o.n(); ++r)
    for (int c = 0; c < o.n(); ++c) {
      const int bound = std::clamp(o.min_valuation(r, c, i), 0, N);
      if (bound == 0) continue;
      if (mod(x(r, c), ipow(p, bound)) != 0) return false;
    }
  return true;
}

int v_A(const MatrixApprox& x, const HereditaryOrder& o) {
  if (x.is_exact_zero()) throw Error("v_A is undefined on the zero matrix");
  const int e = o.e();
  std::optional<int> best;
  std::optional<int> vanished;
  for (int r = 0; r < o.n(); ++r)
    for (int c = 0; c < o.n(); ++c) {
      const auto [v, exact] = x.entry_valuation(r, c);
      const int cand = e * v - o.block_of(r) + o.block_of(c);
      auto& slot = exact ? best : vanished;
      if (!slot || cand < *slot) slot = cand;
    }
  if (!best) throw PrecisionLoss("v_A: every entry vanished");
  if (vanished && *vanished < *best) throw PrecisionLoss("v_A: the value depends on entries that vanished");
  return *best;
}

int v_A_exact(const ModMat& x, int scale, const HereditaryOrder& o, std::int64_t p) {
  std::optional<int> best;
  for (int r = 0; r < o.n(); ++r)
    for (int c = 0; c < o.n(); ++c) {
      if (x(r, c) == 0) continue;
      const int cand = o.e() * (vp(x(r, c), p) + scale) - o.block_of(r) + o.block_of(c);
      if (!best || cand < *best) best = cand;
    }
  if (!best) throw Error("v_A is undefined on the zero matrix");
  return *best;
}

ApproximationReport check_approximation(const HereditaryOrder& o, int i, const PrecisionCtx& ctx) {
  ApproximationReport rep;
  rep.i = i;
  rep.lower_exp = static_cast<int>(ceil_div(i - 1, o.e())) + 1;
  rep.upper_exp = static_cast<int>(floor_div(i, o.e()));
  const HereditaryOrder full(o.n(), 1);
  rep.lower_holds = rep.upper_holds = true;
  for (int r = 0; r < o.n(); ++r)
    for (int c = 0; c < o.n(); ++c) {
      const ModMat e = elementary(o.n(), r, c);
      const MatrixApprox low = MatrixApprox::from_exact(e, rep.lower_exp, ctx);
      if (!in_radical_power(low, i, o)) rep.lower_holds = false;
      const MatrixApprox gen = MatrixApprox::from_exact(e, o.min_valuation(r, c, i), ctx);
      if (!in_radical_power(gen, rep.upper_exp, full)) rep.upper_holds = false;
      if (!in_radical_power(gen, rep.lower_exp, full)) rep.lower_strict = true;
      const MatrixApprox up = MatrixApprox::from_exact(e, rep.upper_exp, ctx);
      if (!in_radical_power(up, i, o)) rep.upper_strict = true;
    }
  return rep;
}

FiltrationReport check_filtration(const HereditaryOrder& o, int i, const PrecisionCtx& ctx) {
  FiltrationReport rep;
  rep.periodic = true;
  bool contained = true;
  bool proper = false;
  for (int r = 0; r < o.n(); ++r)
    for (int c = 0; c < o.n(); ++c) {
      const ModMat e = elementary(o.n(), r, c);
      const MatrixApprox gi = MatrixApprox::from_exact(e, o.min_valuation(r, c, i), ctx);
      const MatrixApprox gie = MatrixApprox::from_exact(e, o.min_valuation(r, c, i + o.e()), ctx);
      if (!in_radical_power(gi.shifted(1), i + o.e(), o)) rep.periodic = false;
      if (!in_radical_power(gie.shifted(-1), i, o)) rep.periodic = false;
      const MatrixApprox gi1 = MatrixApprox::from_exact(e, o.min_valuation(r, c, i + 1), ctx);
      if (!in_radical_power(gi1, i, o)) contained = false;
      if (!in_radical_power(gi, i + 1, o)) proper = true;
    }
  rep.strictly_decreasing = contained && proper;
  return rep;
}

FieldCertificate certify_field(const ModMat& unit0, int /*scale*/, std::int64_t p) {
  FieldCertificate cert;
  const int n = unit0.n;
  BigMat u = to_big(unit0);
  for (int step = 0; step <= 2 * n + 4; ++step) {
    cert.steps = step;
    const auto cp = big_charpoly(u, n);
    const BigInt& cn = cp[static_cast<std::size_t>(n)];
    if (cn == 0) {
      cert.reason = "singular (or scalar) matrix: det = 0";
      return cert;
    }
    const int vn = big_vp(cn, p);
    for (int k = 1; k < n; ++k) {
      const BigInt& ck = cp[static_cast<std::size_t>(k)];
      if (ck != 0 && static_cast<std::int64_t>(big_vp(ck, p)) * n < static_cast<std::int64_t>(k) * vn) {
        cert.reason = "Newton polygon has more than one slope";
        return cert;
      }
    }
    const int g = std::gcd(vn, n);
    const int t = vn / g;
    const int eps = n / g;
    const auto h = residue_charpoly(big_pow(u, eps, n), n, -t, p);
    if (!h) {
      cert.reason = "normalised power has non-integral characteristic polynomial";
      return cert;
    }
    const auto gp = fp::irreducible_power(*h, p);
    if (gp && eps * fp::degree(gp->first) == n) {
      cert.certified = true;
      cert.ramification = eps;
      cert.residue_degree = fp::degree(gp->first);
      return cert;
    }
    if (eps == 1 && gp && fp::degree(gp->first) == 1) {
      // single residue root a: pass to u - a p^t, which generates the same field
      const std::int64_t a = mod(-gp->first[0], p);
      const BigInt shift = BigInt(a) * big_ipow(p, t);
      for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i * n + i)] -= shift;
      continue;
    }
    cert.reason = "residue characteristic polynomial is not a power of one irreducible of the right degree";
    return cert;
  }
  cert.reason = "no certificate within the step limit";
  return cert;
}

InductionDatum InductionDatum::make(std::string id, std::int64_t p, const HereditaryOrder& order, const ModMat& unit,
                                    int scale, std::optional<int> declared_j, FieldPolicy policy) {
  if (!is_prime(p)) throw DatumInvalid("p = " + std::to_string(p) + " is not prime");
  if (unit.n != order.n()) throw DatumInvalid("beta must be an n x n matrix");
  bool nonzero = false;
  for (int i = 0; i < unit.n * unit.n; ++i) nonzero = nonzero || unit.a[static_cast<std::size_t>(i)] != 0;
  if (!nonzero) throw DatumInvalid("beta must be nonzero");
  InductionDatum d(std::move(id), p, order, unit, scale);
  const int va = v_A_exact(unit, scale, order, p);
  if (va >= 0) throw DatumInvalid("v_A(beta) = " + std::to_string(va) + " must be negative");
  d.j_ = -va;
  if (declared_j && *declared_j != d.j_)
    throw DatumInvalid("declared j = " + std::to_string(*declared_j) + " but -v_A(beta) = " + std::to_string(d.j_));
  d.field_ = certify_field(unit, scale, p);
  if (policy == FieldPolicy::require) {
    if (!d.field_.certified) throw DatumInvalid("Q_p[beta] is not certified as a field of degree n: " + d.field_.reason);
    if (d.field_.ramification != order.e())
      throw DatumInvalid("e(L/F) = " + std::to_string(d.field_.ramification) + " differs from the order period e = " +
                         std::to_string(order.e()));
  }
  return d;
}

MatrixApprox InductionDatum::beta(const PrecisionCtx& ctx) const { return MatrixApprox::from_exact(unit_, scale_, ctx); }

int InductionDatum::v_L() const {
  const BigInt det = big_charpoly(to_big(unit_), n())[static_cast<std::size_t>(n())];
  if (det == 0) throw DatumInvalid("beta is singular");
  const int v = big_vp(det, p_) + n() * scale_;
  if ((v * e()) % n() != 0) throw DatumInvalid("v_p(det beta) * e / n is not an integer");
  return v * e() / n();
}

bool is_minimal(const InductionDatum& d) {
  const BigInt det = big_charpoly(to_big(d.unit()), d.n())[static_cast<std::size_t>(d.n())];
  if (det == 0) throw DatumInvalid("beta is singular");
  const int v = big_vp(det, d.p()) + d.n() * d.scale();
  if ((v * d.e()) % d.n() == 0) {
    const int vl = v * d.e() / d.n();
    if (std::gcd(vl < 0 ? -vl : vl, d.e()) != 1) return false;
  }
  if (!d.field().certified) throw DatumInvalid("Q_p[beta] is not a field of degree n: " + d.field().reason);
  if (d.field().ramification != d.e()) return false;
  const int vl = d.v_L();
  // y = p^(-v_L) beta^e is a unit of L; its residue must generate k_L.
  const auto h = residue_charpoly(big_pow(to_big(d.unit()), d.e(), d.n()), d.n(), -vl + d.e() * d.scale(), d.p());
  if (!h) return false;
  const auto gp = fp::irreducible_power(*h, d.p());
  return gp && fp::degree(gp->first) == d.n() / d.e() && gp->second == d.e();
}

OLBasis ol_basis(const InductionDatum& d, int digits) {
  OLBasis out;
  const int n = d.n();
  const int e = d.e();
  const int j = d.j();
  const std::int64_t p = d.p();
  const std::int64_t q = ipow(p, digits);
  const BigMat u = to_big(d.unit());
  bool use_uniformizer = d.field().certified && d.field().ramification == e && std::gcd(j, e) == 1;
  if (use_uniformizer) {
    try {
      use_uniformizer = d.v_L() == -j;
    } catch (const DatumInvalid&) {
      use_uniformizer = false;
    }
  }
  if (use_uniformizer) {
    int a = 0;
    while ((a * j + 1) % e != 0) ++a;
    const int b = (1 + a * j) / e;
    const BigMat w = big_shift(big_pow(u, a, n), a * d.scale() + b, p);
    const BigMat y = big_shift(big_pow(u, e, n), j + e * d.scale(), p);
    out.f = n / e;
    out.uniformizer = big_reduce(w, n, q);
    out.from_uniformizer = true;
    BigMat yu = big_identity(n);
    std::vector<BigMat> ys;
    for (int k = 0; k < out.f; ++k) {
      ys.push_back(yu);
      yu = big_mul(yu, y, n);
    }
    for (int v = 0; v <= e; ++v) {
      const BigMat wv = big_pow(w, v, n);
      for (const auto& yk : ys) {
        const ModMat el = big_reduce(big_mul(yk, wv, n), n, q);
        if (v < e) out.basis.push_back(el);
        if (v >= 1) out.prime_ideal.push_back(el);
      }
    }
    return out;
  }
  const BigMat bp = big_shift(u, static_cast<int>(ceil_div(j, e)) + d.scale(), p);
  BigMat acc = big_identity(n);
  for (int k = 0; k < n; ++k) {
    out.basis.push_back(big_reduce(acc, n, q));
    acc = big_mul(acc, bp, n);
  }
  out.f = d.field().certified ? d.field().residue_degree : 0;
  out.uniformizer = ModMat(n);
  return out;
}

namespace {

struct DigitSlot {
  int r;
  int c;
  std::int64_t weight;  // p^position
};

class K0Search {
 public:
  K0Search(const InductionDatum& d, std::int64_t budget) : d_(d), o_(d.order()), p_(d.p()), budget_(budget) {
    const OLBasis ol = ol_basis(d, 1);
    for (const auto& b : ol.basis) span_.push_back(diag_residue(b));
  }

  // Column of block-diagonal entries mod p: the image in A/B.
  fp::Vec diag_residue(const ModMat& x) const {
    fp::Vec v;
    for (int r = 0; r < o_.n(); ++r)
      for (int c = 0; c < o_.n(); ++c)
        if (o_.block_of(r) == o_.block_of(c)) v.push_back(mod(x(r, c), p_));
    return v;
  }

  int lo(int r, int c) const { return std::max(0, o_.min_valuation(r, c, 0)); }
  int hi(int r, int c, int K) const { return std::max(lo(r, c), o_.min_valuation(r, c, K)); }

  bool alpha_in(const ModMat& x, int k) const {
    const ModMat& u = d_.unit();
    const int n = o_.n();
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        __int128 acc = 0;
        for (int t = 0; t < n; ++t) acc += static_cast<__int128>(u(r, t)) * x(t, c) - static_cast<__int128>(x(r, t)) * u(t, c);
        const int need = o_.min_valuation(r, c, k) - d_.scale();
        if (need <= 0) continue;
        const __int128 m = ipow(p_, need);
        if (acc % m != 0) return false;
      }
    return true;
  }

  bool outside_order_span(const ModMat& x) const { return !fp::in_span(span_, diag_residue(x), p_); }

  // New digit slots when passing from A/B^K to A/B^(K+1) (K = 0 gives A/B).
  std::vector<DigitSlot> new_slots(int K) const {
    std::vector<DigitSlot> s;
    for (int r = 0; r < o_.n(); ++r)
      for (int c = 0; c < o_.n(); ++c)
        for (int pos = hi(r, c, K); pos < hi(r, c, K + 1); ++pos) s.push_back({r, c, ipow(p_, pos)});
    return s;
  }

  std::vector<ModMat> lift(const std::vector<ModMat>& base, int K, int k_target, bool first, int partial) {
    const auto slots = new_slots(K);
    const std::int64_t fan = ipow(p_, static_cast<int>(slots.size()));
    const long double est = static_cast<long double>(base.size()) * static_cast<long double>(fan);
    if (est > static_cast<long double>(budget_))
      throw BudgetExceeded("k0 search: lifting to level " + std::to_string(K + 1) + " needs " +
                               std::to_string(static_cast<long long>(est)) + " candidates",
                           static_cast<std::int64_t>(est), partial);
    std::vector<ModMat> out;
    for (const auto& x0 : base)
      for (std::int64_t idx = 0; idx < fan; ++idx) {
        ModMat x = x0;
        std::int64_t t = idx;
        for (const auto& s : slots) {
          x(s.r, s.c) += (t % p_) * s.weight;
          t /= p_;
        }
        ++explored_;
        if (first && !outside_order_span(x)) continue;
        if (alpha_in(x, k_target)) out.push_back(x);
      }
    return out;
  }

  std::int64_t explored() const { return explored_; }

 private:
  const InductionDatum& d_;
  const HereditaryOrder& o_;
  std::int64_t p_;
  std::int64_t budget_;
  std::vector<fp::Vec> span_;
  std::int64_t explored_ = 0;
};

}  // namespace

K0Result k0(const InductionDatum& d, std::optional<int> cap, std::int64_t budget) {
  K0Result res;
  const int j = d.j();
  res.cap = cap.value_or(j + 1);
  if (res.cap <= -j) throw std::invalid_argument("k0: cap must exceed -j");
  K0Search search(d, budget);
  int k = -j + 1;
  // every x in A has alpha(x) in B^(-j)
  std::vector<ModMat> level = search.lift({ModMat(d.n())}, 0, k, true, -j);
  int best = -j;
  while (!level.empty()) {
    best = k;
    if (k >= res.cap) {
      res.saturated = true;
      break;
    }
    level = search.lift(level, k + j, k + 1, false, best);
    ++k;
  }
  res.value = best;
  res.explored = search.explored();
  return res;
}

}  // namespace minvec::orders
