#include "minvec/testfunc.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "minvec/errors.hpp"

namespace minvec::testfunc {

using groups::Arena;
using groups::FiniteSubgroup;
using groups::GroupCharacter;

int parabolic_c(const std::vector<orders::InductionDatum>& data) {
  Rational m = 0;
  for (const auto& d : data) m = std::max(m, d.normalised_depth());
  return static_cast<int>(ceil_of(m));
}

int frak_c(const std::vector<orders::InductionDatum>& data) {
  int best = INT32_MAX;
  for (const auto& d : data) best = std::min(best, static_cast<int>(floor_div((d.j() + 1) / 2, d.e())));
  return best;
}

bool heuristic_inequivalent(const std::vector<orders::InductionDatum>& data) {
  for (std::size_t a = 0; a < data.size(); ++a)
    for (std::size_t b = a + 1; b < data.size(); ++b)
      if (data[a].e() == data[b].e() && data[a].j() == data[b].j()) return false;
  return true;
}

std::string Kpi::id() const {
  std::string s;
  for (const auto& b : blocks_) s += (s.empty() ? "" : "+") + b.datum.id();
  return s;
}

int Kpi::block_of(int r) const { return block_of_row_[static_cast<std::size_t>(r)]; }

int Kpi::entry_exponent(int r, int c) const {
  const int br = block_of(r);
  const int bc = block_of(c);
  if (br == bc) return 0;
  return std::min(br < bc ? upper_ : lower_, arena_.N());
}

BigInt Kpi::order() const {
  BigInt r = 1;
  for (const auto& b : blocks_) r *= static_cast<std::uint64_t>(b.b1().size());
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (block_of(i) != block_of(j))
        for (int t = entry_exponent(i, j); t < arena_.N(); ++t) r *= arena_.p();
  return r;
}

namespace {

ModMat sub_block(const ModMat& x, int off, int size) {
  ModMat s(size);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) s(r, c) = x(off + r, off + c);
  return s;
}

}  // namespace

std::optional<std::int64_t> Kpi::theta(const ModMat& xin) const {
  const ModMat x = reduce(xin, arena_.q());
  for (int r = 0; r < n(); ++r)
    for (int c = 0; c < n(); ++c)
      if (block_of(r) != block_of(c) && x(r, c) % ipow(arena_.p(), entry_exponent(r, c)) != 0) return std::nullopt;
  std::int64_t t = 0;
  for (const auto& b : blocks_) {
    const auto idx = b.b1().index_of(sub_block(x, b.offset, b.size()));
    if (!idx) return std::nullopt;
    t += b.theta_tilde.values[*idx];
  }
  return mod(t, ipow(arena_.p(), level_));
}

ModMat Kpi::sample(std::mt19937_64& rng) const {
  ModMat x(n());
  for (const auto& b : blocks_) {
    std::uniform_int_distribution<std::size_t> pick(0, b.b1().size() - 1);
    const ModMat s = b.b1().element(pick(rng));
    for (int r = 0; r < b.size(); ++r)
      for (int c = 0; c < b.size(); ++c) x(b.offset + r, b.offset + c) = s(r, c);
  }
  for (int r = 0; r < n(); ++r)
    for (int c = 0; c < n(); ++c) {
      if (block_of(r) == block_of(c)) continue;
      const int t = entry_exponent(r, c);
      std::uniform_int_distribution<std::int64_t> digit(0, ipow(arena_.p(), arena_.N() - t) - 1);
      x(r, c) = digit(rng) * ipow(arena_.p(), t);
    }
  return x;
}

Kpi build_Kpi(const std::vector<orders::InductionDatum>& data, const KpiOptions& opt) {
  if (data.empty()) throw DatumInvalid("K_pi needs at least one block");
  const std::int64_t p = data[0].p();
  int n = 0;
  int N = 1;
  for (const auto& d : data) {
    if (d.p() != p) throw DatumInvalid("blocks use different primes");
    if (d.n() < 2) throw DatumInvalid("block " + d.id() + " has size 1: GL_1 blocks have no minimal datum");
    if (!orders::is_minimal(d)) throw DatumInvalid("block " + d.id() + " is not minimal");
    n += d.n();
    N = std::max(N, d.group_precision());
  }
  if (data.size() > 1 && !opt.inequivalent_asserted)
    throw DatumInvalid("inequivalence of the blocks must be asserted (inequivalent = asserted)");

  int c = 0;
  Rational c_value;
  if (data.size() == 1) {
    c_value = data[0].normalised_depth();
    c = static_cast<int>(ceil_of(c_value));
  } else {
    c = opt.c.value_or(parabolic_c(data));
    c_value = c;
    for (const auto& d : data) {
      const Rational gap = d.normalised_depth() - c_value;
      if (gap > opt.band || -gap > opt.band)
        throw DatumInvalid("block " + d.id() + " has c = " + to_string(d.normalised_depth()) + ", outside the band " +
                           to_string(opt.band) + " around c = " + std::to_string(c));
    }
  }
  N = std::max(N, c + 1);

  Kpi k(Arena(p, N, n));
  k.c_ = c;
  k.c_value_ = c_value;
  k.frak_c_ = frak_c(data);
  k.upper_ = (c + 1) / 2;
  k.lower_ = (c + 2) / 2;

  int offset = 0;
  for (const auto& d : data) {
    groups::SubgroupFamily fam = groups::build_subgroups(d, N, opt.budget);
    groups::SimpleCharacter sc = groups::simple_character(d, fam);
    std::optional<groups::PolarizationData> pol;
    GroupCharacter tt = sc.theta;
    std::int64_t count = 1;
    if (fam.j1->size() != fam.h1->size()) {
      pol = groups::heisenberg(d, fam, sc.theta);
      const auto ext = groups::extend_character(*pol->b1, *fam.h1, sc.theta.values, sc.theta.level);
      tt = GroupCharacter{"theta~", pol->b1, sc.theta.level, ext.values};
      count = ext.count;
    }
    KpiBlock b{d, offset, std::move(fam), sc.theta, tt, std::move(pol), count};
    for (int r = 0; r < d.n(); ++r) k.block_of_row_.push_back(static_cast<int>(k.blocks_.size()));
    k.blocks_.push_back(std::move(b));
    offset += d.n();
  }
  for (const auto& b : k.blocks_) k.level_ = std::max(k.level_, b.theta_tilde.level);
  for (auto& b : k.blocks_) b.theta_tilde = b.theta_tilde.at_level(k.level_);

  if (k.single()) {
    k.enumerated_ = std::make_shared<const FiniteSubgroup>(k.blocks_[0].b1().renamed("K_pi"));
  } else if (k.order() <= opt.enumerate_limit) {
    // Odometer over block indices and off-diagonal digits.
    std::vector<std::int64_t> radix;
    for (const auto& b : k.blocks_) radix.push_back(static_cast<std::int64_t>(b.b1().size()));
    std::vector<std::pair<int, int>> offdiag;
    for (int r = 0; r < n; ++r)
      for (int c2 = 0; c2 < n; ++c2)
        if (k.block_of(r) != k.block_of(c2)) {
          offdiag.emplace_back(r, c2);
          radix.push_back(ipow(p, N - k.entry_exponent(r, c2)));
        }
    std::vector<std::int64_t> digit(radix.size(), 0);
    std::vector<std::uint64_t> keys;
    while (true) {
      ModMat x(n);
      for (std::size_t i = 0; i < k.blocks_.size(); ++i) {
        const auto& b = k.blocks_[i];
        const ModMat s = b.b1().element(static_cast<std::size_t>(digit[i]));
        for (int r = 0; r < b.size(); ++r)
          for (int c2 = 0; c2 < b.size(); ++c2) x(b.offset + r, b.offset + c2) = s(r, c2);
      }
      for (std::size_t t = 0; t < offdiag.size(); ++t) {
        const auto [r, c2] = offdiag[t];
        x(r, c2) = digit[k.blocks_.size() + t] * ipow(p, k.entry_exponent(r, c2));
      }
      keys.push_back(k.arena_.key(x));
      std::size_t i = 0;
      while (i < digit.size() && ++digit[i] == radix[i]) digit[i++] = 0;
      if (i == digit.size()) break;
    }
    k.enumerated_ = std::make_shared<const FiniteSubgroup>("K_pi", k.arena_, std::move(keys));
  }
  return k;
}

KpiReport verify_Kpi(const Kpi& k, std::int64_t pair_budget, std::uint64_t seed) {
  KpiReport rep;
  const Arena& a = k.arena();
  const std::int64_t M = ipow(a.p(), k.level());
  auto check = [&](const ModMat& x, const ModMat& y) {
    const ModMat z = a.mul(x, y);
    const auto tz = k.theta(z);
    ++rep.closure_pairs;
    ++rep.multiplicativity_pairs;
    if (!tz) {
      rep.closed = false;
      rep.witness = to_string(x) + " * " + to_string(y) + " leaves K_pi";
      return false;
    }
    if (mod(*tz - *k.theta(x) - *k.theta(y), M) != 0) {
      rep.multiplicative = false;
      rep.witness = "Theta(" + to_string(x) + " * " + to_string(y) + ") != Theta(x) + Theta(y)";
      return false;
    }
    return true;
  };
  rep.closed = rep.multiplicative = true;
  const auto& en = k.enumerated();
  if (en) {
    for (std::size_t i = 0; i < en->size(); ++i) {
      const auto inv = a.inv(en->element(i));
      if (!inv || !k.contains(*inv)) {
        rep.closed = false;
        rep.witness = "inverse of " + to_string(en->element(i)) + " missing";
        return rep;
      }
    }
  }
  const long double sq = en ? static_cast<long double>(en->size()) * static_cast<long double>(en->size()) : 1e30L;
  if (sq <= static_cast<long double>(pair_budget)) {
    rep.closure_exhaustive = rep.multiplicativity_exhaustive = true;
    for (std::size_t i = 0; i < en->size(); ++i)
      for (std::size_t j = 0; j < en->size(); ++j)
        if (!check(en->element(i), en->element(j))) return rep;
    return rep;
  }
  std::mt19937_64 rng(seed);
  for (std::int64_t t = 0; t < pair_budget; ++t) {
    const ModMat x = k.sample(rng);
    const ModMat y = k.sample(rng);
    if (!check(x, y)) return rep;
    if (t < 1000) {
      const auto inv = a.inv(x);
      if (!inv || !k.contains(*inv)) {
        rep.closed = false;
        rep.witness = "inverse of " + to_string(x) + " missing";
        return rep;
      }
    }
  }
  return rep;
}

std::optional<std::int64_t> TestFunction::star(const ModMat& g) const {
  const auto inv = kpi_->arena().inv(reduce(g, kpi_->arena().q()));
  if (!inv) return std::nullopt;
  const auto v = kpi_->theta(*inv);
  if (!v) return std::nullopt;
  return mod(-*v, ipow(kpi_->arena().p(), kpi_->level()));
}

TestFunction make_omega(KpiPtr k) { return TestFunction(std::move(k)); }

namespace {

Rational rational_pow(std::int64_t p, std::int64_t e) {
  BigInt r = 1;
  for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) r *= p;
  return e < 0 ? Rational(BigInt(1), r) : Rational(r);
}

double log_of(const BigInt& v) {
  // log of a big positive integer via its decimal length
  const std::string s = v.str();
  const std::size_t keep = std::min<std::size_t>(s.size(), 17);
  return std::log(std::stod(s.substr(0, keep))) + static_cast<double>(s.size() - keep) * std::log(10.0);
}

}  // namespace

VolumeReport volume(const Kpi& k) {
  VolumeReport v;
  const int n = k.n();
  v.kpi_order = k.order();
  v.k_order = k.arena().gl_order();
  v.d_pi = Rational(v.kpi_order, v.k_order);
  v.target = k.normalised_depth() * (n * n - n) / 2;
  v.bound = n * n;
  const Rational inv = 1 / v.d_pi;
  const BigInt a = boost::multiprecision::numerator(v.target);
  const BigInt b = boost::multiprecision::denominator(v.target);
  const auto bb = static_cast<std::int64_t>(b);
  Rational inv_b = 1;
  for (std::int64_t i = 0; i < bb; ++i) inv_b *= inv;
  const auto aa = static_cast<std::int64_t>(a);
  v.within_bound = inv_b <= rational_pow(k.arena().p(), aa + bb * v.bound) &&
                   inv_b >= rational_pow(k.arena().p(), aa - bb * v.bound);
  const double lp = std::log(static_cast<double>(k.arena().p()));
  v.offset = (log_of(v.k_order) - log_of(v.kpi_order)) / lp - static_cast<double>(aa) / static_cast<double>(bb);
  return v;
}

namespace {

Cyclo expected_value(const Kpi& k, const ModMat& g, std::int64_t order) {
  Cyclo c(k.arena().p(), k.level());
  if (const auto t = k.theta(g)) c.add_root(*t, order);
  return c;
}

}  // namespace

Cyclo convolve_naive(const TestFunction& w, const ModMat& g) {
  const Kpi& k = w.kpi();
  if (!k.enumerated()) throw BudgetExceeded("convolve_naive: K_pi is not enumerated", 0);
  const Arena& a = k.arena();
  const auto h = a.inv(reduce(g, a.q()));
  if (!h) throw std::invalid_argument("convolve_naive: g is not invertible");
  Cyclo acc(a.p(), k.level());
  const auto& en = *k.enumerated();
  for (std::size_t i = 0; i < en.size(); ++i) {
    const ModMat x = en.element(i);
    const auto ty = k.theta(a.mul(*h, x));
    if (ty) acc.add_root(*k.theta(x) - *ty);
  }
  return acc;
}

Cyclo convolve_factorized(const TestFunction& w, const ModMat& g) {
  const Kpi& k = w.kpi();
  const Arena& a = k.arena();
  const std::int64_t q = a.q();
  const std::int64_t M = ipow(a.p(), k.level());
  const int n = k.n();
  const auto hh = a.inv(reduce(g, q));
  if (!hh) throw std::invalid_argument("convolve_factorized: g is not invertible");
  const ModMat& h = *hh;
  Cyclo total(a.p(), k.level());
  total.add_root(0);
  for (const auto& blk : k.blocks()) {
    const int s = blk.size();
    const int off = blk.offset;
    const auto& B = blk.b1();
    // A_x = h[:, block] * x for x in B1.
    std::vector<std::int64_t> A(B.size() * static_cast<std::size_t>(n * s));
    for (std::size_t i = 0; i < B.size(); ++i) {
      const ModMat x = B.element(i);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < s; ++c) {
          __int128 acc = 0;
          for (int t = 0; t < s; ++t) acc += static_cast<__int128>(h(r, off + t)) * x(t, c);
          A[i * static_cast<std::size_t>(n * s) + static_cast<std::size_t>(r * s + c)] = mod(static_cast<std::int64_t>(acc % q), q);
        }
    }
    std::vector<std::pair<int, int>> cells;  // off-block entries (row, col) in this column block
    std::vector<std::int64_t> radix, step;
    for (int r = 0; r < n; ++r) {
      if (k.block_of(r) == k.block_of(off)) continue;
      for (int c = 0; c < s; ++c) {
        cells.emplace_back(r, c);
        const int t = k.entry_exponent(r, off + c);
        radix.push_back(ipow(a.p(), a.N() - t));
        step.push_back(ipow(a.p(), t));
      }
    }
    std::vector<std::int64_t> need(static_cast<std::size_t>(n * s));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < s; ++c) need[static_cast<std::size_t>(r * s + c)] = ipow(a.p(), k.entry_exponent(r, off + c));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(M), 0);
    std::vector<std::int64_t> digit(cells.size(), 0);
    std::vector<std::int64_t> Bv(static_cast<std::size_t>(n * s));
    while (true) {
      std::fill(Bv.begin(), Bv.end(), 0);
      for (std::size_t t = 0; t < cells.size(); ++t) {
        if (!digit[t]) continue;
        const auto [r0, c] = cells[t];
        const std::int64_t v = digit[t] * step[t];
        for (int r = 0; r < n; ++r)
          Bv[static_cast<std::size_t>(r * s + c)] = mod(Bv[static_cast<std::size_t>(r * s + c)] + mulmod(h(r, r0), v, q), q);
      }
      for (std::size_t i = 0; i < B.size(); ++i) {
        const std::int64_t* Ai = &A[i * static_cast<std::size_t>(n * s)];
        bool ok = true;
        for (int r = 0; r < n && ok; ++r) {
          if (r >= off && r < off + s) continue;
          for (int c = 0; c < s; ++c) {
            const auto idx = static_cast<std::size_t>(r * s + c);
            if ((Ai[idx] + Bv[idx]) % q % need[idx] != 0) {
              ok = false;
              break;
            }
          }
        }
        if (!ok) continue;
        ModMat y(s);
        for (int r = 0; r < s; ++r)
          for (int c = 0; c < s; ++c) {
            const auto idx = static_cast<std::size_t>((off + r) * s + c);
            y(r, c) = (Ai[idx] + Bv[idx]) % q;
          }
        const auto yi = B.index_of(y);
        if (!yi) continue;
        ++counts[static_cast<std::size_t>(mod(blk.theta_tilde.values[i] - blk.theta_tilde.values[*yi], M))];
      }
      std::size_t t = 0;
      while (t < digit.size() && ++digit[t] == radix[t]) digit[t++] = 0;
      if (t == digit.size()) break;
    }
    Cyclo col(a.p(), k.level());
    for (std::int64_t t = 0; t < M; ++t)
      if (counts[static_cast<std::size_t>(t)]) col.add_root(t, counts[static_cast<std::size_t>(t)]);
    total = total * col;
  }
  return total;
}

ConvolutionReport convolve_check(const TestFunction& w, const ConvolutionOptions& opt) {
  const Kpi& k = w.kpi();
  const Arena& a = k.arena();
  const std::int64_t M = ipow(a.p(), k.level());
  ConvolutionReport rep;
  const BigInt order_big = k.order();
  rep.d_pi = Rational(order_big, a.gl_order());
  const auto order = static_cast<std::int64_t>(order_big);
  const auto& en = k.enumerated();
  rep.passed = true;
  if (en && static_cast<long double>(en->size()) * static_cast<long double>(en->size()) <=
                static_cast<long double>(opt.pair_limit)) {
    // Every pair (x, y) contributes e(Theta(x) - Theta(y)) to g = x y^-1.
    rep.mode = "pairwise";
    const std::size_t sz = en->size();
    std::vector<ModMat> el(sz), inv(sz);
    std::vector<std::int64_t> th(sz);
    for (std::size_t i = 0; i < sz; ++i) {
      el[i] = en->element(i);
      inv[i] = *a.inv(el[i]);
      th[i] = *k.theta(el[i]);
    }
    std::vector<std::int64_t> bucket(sz * static_cast<std::size_t>(M), 0);
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = 0; j < sz; ++j) {
        const ModMat g = a.mul(el[i], inv[j]);
        const auto gi = en->index_of(g);
        if (!gi) {
          rep.passed = false;
          rep.witness = g;
          rep.detail = "x y^-1 left K_pi";
          return rep;
        }
        ++bucket[*gi * static_cast<std::size_t>(M) + static_cast<std::size_t>(mod(th[i] - th[j], M))];
      }
    for (std::size_t g = 0; g < sz; ++g) {
      Cyclo got(a.p(), k.level());
      for (std::int64_t t = 0; t < M; ++t)
        if (const auto c = bucket[g * static_cast<std::size_t>(M) + static_cast<std::size_t>(t)]) got.add_root(t, c);
      Cyclo want(a.p(), k.level());
      want.add_root(th[g], order);
      ++rep.support_checked;
      if (!(got == want)) {
        rep.passed = false;
        rep.witness = el[g];
        rep.detail = "value " + got.str() + " != |K_pi| e(Theta(g))";
        return rep;
      }
    }
    rep.outside_checked = static_cast<std::int64_t>(a.gl_order() - order_big);
    rep.complete = true;
    rep.detail = "all pairs of K_pi; the sum vanishes off K_pi";
    return rep;
  }

  rep.mode = "factorized";
  std::mt19937_64 rng(opt.seed);
  std::vector<ModMat> points;
  std::uniform_int_distribution<std::int64_t> digit(0, a.q() - 1);
  while (static_cast<std::int64_t>(points.size()) < opt.samples) {
    ModMat g(k.n());
    for (auto& v : g.a) v = 0;
    for (int i = 0; i < k.n() * k.n(); ++i) g.a[static_cast<std::size_t>(i)] = digit(rng);
    if (mod(det(g, a.p()), a.p()) != 0) points.push_back(g);
  }
  std::vector<ModMat> support;
  for (std::int64_t i = 0; i < opt.support_samples; ++i) support.push_back(k.sample(rng));
  for (const auto& x : support) {
    points.push_back(x);
    // Neighbours: break one off-diagonal congruence by a single digit.
    for (int r = 0; r < k.n(); ++r)
      for (int c = 0; c < k.n(); ++c) {
        const int t = k.entry_exponent(r, c);
        if (k.block_of(r) == k.block_of(c) || t == 0) continue;
        ModMat y = x;
        y(r, c) = mod(y(r, c) + ipow(a.p(), t - 1), a.q());
        if (mod(det(y, a.p()), a.p()) != 0) points.push_back(y);
      }
  }
  for (const auto& g : points) {
    const Cyclo got = convolve_factorized(w, g);
    const Cyclo want = expected_value(k, g, order);
    if (k.contains(g))
      ++rep.support_checked;
    else
      ++rep.outside_checked;
    if (!(got == want)) {
      rep.passed = false;
      rep.witness = g;
      rep.detail = "value " + got.str() + " != d_pi omega(g) |K|";
      return rep;
    }
  }
  rep.detail = std::to_string(opt.samples) + " seeded points of GL_n(Z/p^N), " + std::to_string(opt.support_samples) +
               " points of K_pi and their neighbours";
  return rep;
}

ConcentrationReport concentration_check(const TestFunction& w, std::int64_t samples, std::uint64_t seed) {
  const Kpi& k = w.kpi();
  const Arena& a = k.arena();
  ConcentrationReport rep;
  rep.frak_c = k.frak_c();
  rep.vacuous = rep.frak_c == 0;
  const std::int64_t m = ipow(a.p(), rep.frak_c);
  // Residues mod p^frak_c of U_L(1), blockwise.
  std::vector<std::map<std::vector<std::int64_t>, ModMat>> image(k.blocks().size());
  for (std::size_t b = 0; b < k.blocks().size(); ++b) {
    const auto& ul = *k.blocks()[b].family.ul1;
    for (std::size_t i = 0; i < ul.size(); ++i) {
      const ModMat l = ul.element(i);
      std::vector<std::int64_t> key;
      for (int t = 0; t < l.n * l.n; ++t) key.push_back(mod(l.a[static_cast<std::size_t>(t)], m));
      image[b].emplace(std::move(key), l);
    }
  }
  auto witness_for = [&](const ModMat& x) {
    ModMat l = ModMat(k.n());
    for (std::size_t b = 0; b < k.blocks().size(); ++b) {
      const auto& blk = k.blocks()[b];
      std::vector<std::int64_t> key;
      for (int r = 0; r < blk.size(); ++r)
        for (int c = 0; c < blk.size(); ++c) key.push_back(mod(x(blk.offset + r, blk.offset + c), m));
      const auto it = image[b].find(key);
      if (it == image[b].end()) return false;
      for (int r = 0; r < blk.size(); ++r)
        for (int c = 0; c < blk.size(); ++c) l(blk.offset + r, blk.offset + c) = it->second(r, c);
    }
    const auto li = a.inv(l);
    if (!li) return false;
    ModMat y = a.mul(x, *li);
    for (int i = 0; i < k.n(); ++i) y(i, i) -= 1;
    return all_divisible(reduce(y, m), m) || m == 1;
  };
  auto visit = [&](const ModMat& x) {
    ++rep.checked;
    if (!witness_for(x)) {
      rep.passed = false;
      rep.failure = x;
      return false;
    }
    return true;
  };
  rep.passed = true;
  if (const auto& en = k.enumerated()) {
    rep.exhaustive = true;
    for (std::size_t i = 0; i < en->size(); ++i)
      if (!visit(en->element(i))) return rep;
  } else {
    std::mt19937_64 rng(seed);
    for (std::int64_t i = 0; i < samples; ++i)
      if (!visit(k.sample(rng))) return rep;
  }
  rep.detail = rep.vacuous ? "frak_c = 0, the congruence is empty" : "witness l in U_L(1) found for every element";
  return rep;
}

DepthReport depth_report(const Kpi& k) {
  DepthReport d;
  for (const auto& b : k.blocks()) {
    d.depths.push_back(b.datum.j());
    d.d = std::max(d.d, b.datum.j());
  }
  d.c = k.normalised_depth();
  d.frak_c = k.frak_c();
  d.conductor_exponent = d.c * k.n();
  d.d_pi = Rational(k.order(), k.arena().gl_order());
  const Rational gap = Rational(d.frak_c) - d.c / 2;
  d.frak_c_near_half_c = gap <= 1 && gap >= -1;
  return d;
}

}  // namespace minvec::testfunc
