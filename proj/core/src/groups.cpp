#include "minvec/groups.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>
#include <unordered_set>

#include "minvec/errors.hpp"

namespace minvec::groups {

Arena::Arena(std::int64_t p, int N, int n) : p_(p), N_(N), n_(n), q_(ipow(p, N)), codec_(n, ipow(p, N)) {
  if (!is_prime(p)) throw DatumInvalid("arena: p must be prime");
  if (N < 1) throw DatumInvalid("arena: N must be >= 1");
}

BigInt Arena::gl_order() const {
  BigInt r = 1;
  BigInt pn = 1;
  for (int i = 0; i < n_; ++i) pn *= p_;
  BigInt pk = 1;
  for (int k = 0; k < n_; ++k) {
    r *= pn - pk;
    pk *= p_;
  }
  for (int i = 0; i < (N_ - 1) * n_ * n_; ++i) r *= p_;
  return r;
}

FiniteSubgroup::FiniteSubgroup(std::string name, Arena arena, std::vector<std::uint64_t> keys)
    : name_(std::move(name)), arena_(std::move(arena)), keys_(std::move(keys)) {
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

std::optional<std::size_t> FiniteSubgroup::index_of(std::uint64_t key) const {
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - keys_.begin());
}

FiniteSubgroup FiniteSubgroup::renamed(std::string name) const {
  FiniteSubgroup g = *this;
  g.name_ = std::move(name);
  return g;
}

ClosureReport check_closure(const FiniteSubgroup& g, std::int64_t pair_budget, std::uint64_t seed) {
  ClosureReport rep;
  const Arena& a = g.arena();
  rep.closed = true;
  if (!g.contains(a.identity())) {
    rep.closed = false;
    rep.witness = "identity missing";
    return rep;
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto inv = a.inv(g.element(i));
    if (!inv || !g.contains(*inv)) {
      rep.closed = false;
      rep.witness = "inverse of " + to_string(g.element(i)) + " missing";
      return rep;
    }
  }
  const auto n = static_cast<std::int64_t>(g.size());
  auto check_pair = [&](std::size_t x, std::size_t y) {
    ++rep.pairs_checked;
    const ModMat z = a.mul(g.element(x), g.element(y));
    if (!g.contains(z)) {
      rep.closed = false;
      rep.witness = to_string(g.element(x)) + " * " + to_string(g.element(y)) + " not in " + g.name();
    }
    return rep.closed;
  };
  if (n * n <= pair_budget) {
    rep.exhaustive = true;
    for (std::size_t x = 0; x < g.size(); ++x)
      for (std::size_t y = 0; y < g.size(); ++y)
        if (!check_pair(x, y)) return rep;
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  for (std::int64_t t = 0; t < pair_budget; ++t)
    if (!check_pair(pick(rng), pick(rng))) return rep;
  return rep;
}

namespace {

void require_budget(long double size, std::int64_t budget, const std::string& what) {
  if (size > static_cast<long double>(budget))
    throw BudgetExceeded(what + ": " + std::to_string(static_cast<long long>(size)) + " elements exceed the budget of " +
                             std::to_string(budget),
                         static_cast<std::uint64_t>(size));
}

// All Z/p^N-combinations of `span`, shifted by `base`.
std::vector<ModMat> combinations(const Arena& arena, const std::vector<ModMat>& span, const ModMat& base,
                                 std::int64_t budget, const std::string& what) {
  long double total = 1;
  for (std::size_t i = 0; i < span.size(); ++i) total *= static_cast<long double>(arena.q());
  require_budget(total, budget, what);
  std::vector<ModMat> out;
  std::vector<std::int64_t> coef(span.size(), 0);
  const std::int64_t q = arena.q();
  while (true) {
    ModMat x = base;
    for (std::size_t k = 0; k < span.size(); ++k)
      if (coef[k]) x = add(x, scale(span[k], coef[k], q), q);
    out.push_back(reduce(x, q));
    std::size_t k = 0;
    while (k < coef.size() && ++coef[k] == q) coef[k++] = 0;
    if (k == coef.size()) break;
  }
  return out;
}

}  // namespace

FiniteSubgroup filtration_subgroup(const Arena& arena, const orders::HereditaryOrder& o, int i, std::string name,
                                   std::int64_t budget) {
  if (i < 1) throw std::invalid_argument("filtration_subgroup: i must be >= 1");
  const int n = arena.n();
  const int N = arena.N();
  std::vector<int> lowest(static_cast<std::size_t>(n * n));
  long double total = 1;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int b = std::clamp(o.min_valuation(r, c, i), 0, N);
      lowest[static_cast<std::size_t>(r * n + c)] = b;
      for (int t = b; t < N; ++t) total *= static_cast<long double>(arena.p());
    }
  require_budget(total, budget, "U_A(" + std::to_string(i) + ")");
  std::vector<std::uint64_t> keys;
  keys.reserve(static_cast<std::size_t>(total));
  std::vector<std::int64_t> digit(static_cast<std::size_t>(n * n), 0);
  std::vector<std::int64_t> range(static_cast<std::size_t>(n * n));
  for (int k = 0; k < n * n; ++k) range[static_cast<std::size_t>(k)] = ipow(arena.p(), N - lowest[static_cast<std::size_t>(k)]);
  while (true) {
    ModMat x = arena.identity();
    for (int k = 0; k < n * n; ++k)
      x.a[static_cast<std::size_t>(k)] =
          mod(x.a[static_cast<std::size_t>(k)] +
                  digit[static_cast<std::size_t>(k)] * ipow(arena.p(), lowest[static_cast<std::size_t>(k)]),
              arena.q());
    keys.push_back(arena.key(x));
    std::size_t k = 0;
    while (k < digit.size() && ++digit[k] == range[k]) digit[k++] = 0;
    if (k == digit.size()) break;
  }
  return FiniteSubgroup(std::move(name), arena, std::move(keys));
}

FiniteSubgroup one_plus_span(const Arena& arena, const std::vector<ModMat>& span, std::string name,
                             std::int64_t budget) {
  const auto els = combinations(arena, span, arena.identity(), budget, name);
  std::vector<std::uint64_t> keys;
  keys.reserve(els.size());
  for (const auto& x : els) keys.push_back(arena.key(x));
  return FiniteSubgroup(std::move(name), arena, std::move(keys));
}

FiniteSubgroup units_of_span(const Arena& arena, const std::vector<ModMat>& span, std::string name,
                             std::int64_t budget) {
  const auto els = combinations(arena, span, ModMat(arena.n()), budget, name);
  std::vector<std::uint64_t> keys;
  for (const auto& x : els)
    if (mod(det(x, arena.p()), arena.p()) != 0) keys.push_back(arena.key(x));
  return FiniteSubgroup(std::move(name), arena, std::move(keys));
}

FiniteSubgroup product_with_normal(const FiniteSubgroup& a, const FiniteSubgroup& normal, std::string name) {
  const Arena& ar = a.arena();
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> keys;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen.count(a.keys()[i])) continue;
    const ModMat x = a.element(i);
    for (std::size_t k = 0; k < normal.size(); ++k) {
      const std::uint64_t key = ar.key(ar.mul(x, normal.element(k)));
      if (seen.insert(key).second) keys.push_back(key);
    }
  }
  return FiniteSubgroup(std::move(name), ar, std::move(keys));
}

std::int64_t GroupCharacter::modulus() const { return ipow(domain->arena().p(), level); }

std::int64_t GroupCharacter::at(const ModMat& x) const {
  const auto idx = domain->index_of(x);
  if (!idx) throw std::out_of_range("character " + name + ": " + to_string(x) + " is outside " + domain->name());
  return values[*idx];
}

GroupCharacter GroupCharacter::at_level(int new_level) const {
  if (new_level < level) throw std::invalid_argument("at_level: cannot coarsen a character level");
  GroupCharacter r = *this;
  const std::int64_t f = ipow(domain->arena().p(), new_level - level);
  for (auto& v : r.values) v *= f;
  r.level = new_level;
  return r;
}

namespace {

// Right-multiplication table: table[i] = index of element(i) * g.
std::vector<std::uint32_t> right_table(const FiniteSubgroup& G, const ModMat& g) {
  std::vector<std::uint32_t> t(G.size());
  const Arena& a = G.arena();
  for (std::size_t i = 0; i < G.size(); ++i) {
    const auto idx = G.index_of(a.mul(G.element(i), g));
    if (!idx) throw ConstructionFailure(G.name() + " is not closed under multiplication by " + to_string(g));
    t[i] = static_cast<std::uint32_t>(*idx);
  }
  return t;
}

std::vector<char> closure_of(const FiniteSubgroup& G, const std::vector<std::vector<std::uint32_t>>& tables) {
  std::vector<char> in(G.size(), 0);
  const auto id = G.index_of(G.arena().identity());
  if (!id) throw ConstructionFailure(G.name() + " does not contain the identity");
  std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(*id)};
  in[*id] = 1;
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (const auto& t : tables) {
      const auto y = t[x];
      if (!in[y]) {
        in[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return in;
}

}  // namespace

std::vector<ModMat> greedy_generators(const FiniteSubgroup& g, const std::vector<ModMat>& initial) {
  std::vector<ModMat> gens = initial;
  std::vector<std::vector<std::uint32_t>> tables;
  for (const auto& x : gens) tables.push_back(right_table(g, x));
  std::vector<char> in = closure_of(g, tables);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (in[i]) continue;
    gens.push_back(g.element(i));
    tables.push_back(right_table(g, gens.back()));
    in = closure_of(g, tables);
  }
  return gens;
}

ExtensionResult extend_character(const FiniteSubgroup& g, const FiniteSubgroup& s,
                                 const std::vector<std::int64_t>& s_values, int level) {
  const std::int64_t M = ipow(g.arena().p(), level);
  const auto s_gens = greedy_generators(s);
  const auto all_gens = greedy_generators(g, s_gens);
  std::vector<std::vector<std::uint32_t>> tables;
  for (const auto& x : all_gens) tables.push_back(right_table(g, x));
  std::vector<std::int64_t> gen_val(all_gens.size(), 0);
  for (std::size_t k = 0; k < s_gens.size(); ++k) gen_val[k] = mod(s_values[*s.index_of(s_gens[k])], M);
  const std::size_t extra = all_gens.size() - s_gens.size();
  long double work = static_cast<long double>(g.size()) * static_cast<long double>(all_gens.size());
  for (std::size_t k = 0; k < extra; ++k) work *= static_cast<long double>(M);
  require_budget(work, 4'000'000'000LL, "character extension search on " + g.name());

  std::vector<std::size_t> s_in_g(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto idx = g.index_of(s.keys()[i]);
    if (!idx) throw ConstructionFailure(s.name() + " is not contained in " + g.name());
    s_in_g[i] = *idx;
  }
  const auto id = *g.index_of(g.arena().identity());

  ExtensionResult res;
  std::vector<std::int64_t> val(g.size());
  std::vector<std::uint32_t> queue(g.size());
  std::vector<std::int64_t> assign(extra, 0);
  while (true) {
    for (std::size_t k = 0; k < extra; ++k) gen_val[s_gens.size() + k] = assign[k];
    std::fill(val.begin(), val.end(), -1);
    val[id] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = static_cast<std::uint32_t>(id);
    bool ok = true;
    while (ok && head < tail) {
      const auto x = queue[head++];
      for (std::size_t k = 0; k < tables.size(); ++k) {
        const auto y = tables[k][x];
        const std::int64_t v = (val[x] + gen_val[k]) % M;
        if (val[y] < 0) {
          val[y] = v;
          queue[tail++] = y;
        } else if (val[y] != v) {
          ok = false;
          break;
        }
      }
    }
    if (ok && tail != g.size()) throw ConstructionFailure("generators do not generate " + g.name());
    for (std::size_t i = 0; ok && i < s.size(); ++i)
      if (val[s_in_g[i]] != mod(s_values[i], M)) ok = false;
    if (ok) {
      ++res.count;
      if (res.count == 1) {
        res.values = val;
      } else if (std::lexicographical_compare(val.begin(), val.end(), res.values.begin(), res.values.end())) {
        res.alternative = res.values;
        res.values = val;
      } else if (!res.alternative ||
                 std::lexicographical_compare(val.begin(), val.end(), res.alternative->begin(), res.alternative->end())) {
        res.alternative = val;
      }
    }
    std::size_t k = 0;
    while (k < extra && ++assign[k] == M) assign[k++] = 0;
    if (k == extra) break;
  }
  if (res.count == 0) throw ConstructionFailure("no character of " + g.name() + " extends the given character of " + s.name());
  return res;
}

SubgroupFamily build_subgroups(const orders::InductionDatum& d, std::optional<int> N, std::int64_t budget) {
  if (!orders::is_minimal(d)) throw DatumInvalid("datum " + d.id() + " is not minimal");
  const int prec = N.value_or(d.group_precision());
  if (prec < d.group_precision())
    throw std::invalid_argument("build_subgroups: precision below ceil(j/e) + 1 = " + std::to_string(d.group_precision()));
  SubgroupFamily fam{Arena(d.p(), prec, d.n())};
  const auto& o = d.order();
  const int j = d.j();
  fam.h_index = j / 2 + 1;
  fam.j_index = (j + 1) / 2;
  fam.ol = orders::ol_basis(d, prec);
  auto ua = [&](int i) {
    return std::make_shared<const FiniteSubgroup>(
        filtration_subgroup(fam.arena, o, i, "U_A(" + std::to_string(i) + ")", budget));
  };
  fam.ua_h = ua(fam.h_index);
  fam.ua_j = ua(fam.j_index);
  fam.ua_top = ua(j + 1);
  fam.ua_one = ua(1);
  fam.ul1 = std::make_shared<const FiniteSubgroup>(one_plus_span(fam.arena, fam.ol.prime_ideal, "U_L(1)", budget));
  fam.h1 = std::make_shared<const FiniteSubgroup>(product_with_normal(*fam.ul1, *fam.ua_h, "H1"));
  fam.j1 = std::make_shared<const FiniteSubgroup>(product_with_normal(*fam.ul1, *fam.ua_j, "J1"));
  const FiniteSubgroup olstar = units_of_span(fam.arena, fam.ol.basis, "O_L^*", budget);
  fam.jcapk = std::make_shared<const FiniteSubgroup>(product_with_normal(olstar, *fam.ua_j, "J∩K"));
  return fam;
}

int theta_level(const orders::InductionDatum& d, int N) { return std::max(1 - d.scale(), N); }

std::int64_t theta_formula(const orders::InductionDatum& d, const ModMat& x, std::int64_t q) {
  const int base = 1 - d.scale();
  const std::int64_t m = ipow(d.p(), base);
  if (q % m != 0) throw PrecisionLoss("theta_formula: x is known mod " + std::to_string(q) + ", need " + std::to_string(m));
  ModMat u = x;
  for (int i = 0; i < x.n; ++i) u(i, i) -= 1;
  return trace(mul(d.unit(), u, m), m);
}

SimpleCharacter simple_character(const orders::InductionDatum& d, const SubgroupFamily& fam) {
  const int L = theta_level(d, fam.arena.N());
  const std::int64_t lift = ipow(d.p(), L - (1 - d.scale()));
  const auto& S = *fam.ua_h;
  std::vector<std::int64_t> base(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) base[i] = theta_formula(d, S.element(i), fam.arena.q()) * lift;
  const ExtensionResult ext = extend_character(*fam.h1, S, base, L);
  SimpleCharacter sc{GroupCharacter{"theta", fam.h1, L, ext.values}, std::nullopt, ext.count};
  if (ext.alternative) sc.alternative = GroupCharacter{"theta'", fam.h1, L, *ext.alternative};
  return sc;
}

PolarizationData heisenberg(const orders::InductionDatum& d, const SubgroupFamily& fam, const GroupCharacter& theta) {
  const FiniteSubgroup& J = *fam.j1;
  const FiniteSubgroup& H = *fam.h1;
  if (J.size() == H.size()) throw DatumInvalid("J1 = H1 (odd j): take B1 = H1");
  const Arena& a = fam.arena;
  const std::int64_t p = a.p();
  const std::int64_t q = a.q();

  // Label J1/H1 by coordinates over F_p.
  std::vector<std::int64_t> label(J.size(), -1);
  for (const auto k : H.keys()) label[*J.index_of(k)] = 0;
  PolarizationData pol;
  for (std::size_t i = 0; i < J.size(); ++i) {
    if (label[i] >= 0) continue;
    const ModMat v = J.element(i);
    const std::int64_t weight = ipow(p, static_cast<int>(pol.reps.size()));
    pol.reps.push_back(v);
    std::vector<std::size_t> old;
    for (std::size_t t = 0; t < J.size(); ++t)
      if (label[t] >= 0) old.push_back(t);
    ModMat va = a.identity();
    for (std::int64_t c = 1; c < p; ++c) {
      va = a.mul(va, v);
      for (const auto t : old) {
        const std::size_t y = *J.index_of(a.mul(J.element(t), va));
        const std::int64_t lab = label[t] + c * weight;
        if (label[y] >= 0 && label[y] != lab) throw ConstructionFailure("J1/H1 is not elementary abelian");
        label[y] = lab;
      }
    }
    if (!H.contains(a.mul(va, v))) throw ConstructionFailure("J1/H1 is not elementary abelian (v^p not in H1)");
  }
  const std::size_t dim = pol.reps.size();
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) {
      const ModMat c = a.mul(a.mul(pol.reps[x], pol.reps[y]), a.mul(*a.inv(pol.reps[x]), *a.inv(pol.reps[y])));
      if (!H.contains(c)) throw ConstructionFailure("J1/H1 is not abelian");
    }

  const int base = 1 - d.scale();
  const std::int64_t m = ipow(p, base);
  const std::int64_t lift = ipow(p, theta.level - base);
  auto minus_one = [&](const ModMat& x) {
    ModMat u = x;
    for (int i = 0; i < x.n; ++i) u(i, i) = mod(u(i, i) - 1, q);
    return u;
  };
  pol.pairing.assign(dim, fp::Vec(dim, 0));
  pol.commutator_form.assign(dim, fp::Vec(dim, 0));
  pol.raw_form.assign(dim, std::vector<std::int64_t>(dim, 0));
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) {
      const ModMat u = minus_one(pol.reps[x]);
      const ModMat v = minus_one(pol.reps[y]);
      const ModMat uv = mul(u, v, q);
      const ModMat vu = mul(v, u, q);
      const std::int64_t tr = trace(mul(d.unit(), sub(uv, vu, q), m), m);
      if (tr % (m / p) != 0) throw ConstructionFailure("commutator pairing is not F_p-valued");
      pol.pairing[x][y] = tr / (m / p);
      pol.raw_form[x][y] = trace(mul(d.unit(), uv, m), m) * lift;
      const ModMat c = a.mul(a.mul(pol.reps[x], pol.reps[y]), a.mul(*a.inv(pol.reps[x]), *a.inv(pol.reps[y])));
      const std::int64_t t = theta.at(c);
      const std::int64_t unit = theta.modulus() / p;
      if (t % unit != 0) throw ConstructionFailure("theta on commutators is not F_p-valued");
      pol.commutator_form[x][y] = t / unit;
    }
  const fp::SymplecticResult sr = fp::symplectic_reduce(pol.pairing, p);
  pol.alternating = sr.alternating;
  pol.nondegenerate = sr.nondegenerate;
  if (!pol.alternating || !pol.nondegenerate)
    throw ConstructionFailure("Heisenberg pairing on J1/H1 is not alternating and nondegenerate");
  pol.isotropic = sr.isotropic;

  std::vector<std::uint64_t> keys;
  for (std::size_t i = 0; i < J.size(); ++i) {
    fp::Vec coords(dim);
    std::int64_t lab = label[i];
    for (std::size_t k = 0; k < dim; ++k) {
      coords[k] = lab % p;
      lab /= p;
    }
    if (fp::in_span(pol.isotropic, coords, p)) keys.push_back(J.keys()[i]);
  }
  pol.b1 = std::make_shared<const FiniteSubgroup>("B1", a, std::move(keys));
  pol.b1_closure = check_closure(*pol.b1);
  if (!pol.b1_closure.closed) throw ConstructionFailure("B1 is not a group: " + pol.b1_closure.witness);
  return pol;
}

std::vector<Cyclo> induce(const FiniteSubgroup& g, const GroupCharacter& chi) {
  const FiniteSubgroup& h = *chi.domain;
  const Arena& a = g.arena();
  std::vector<char> marked(g.size(), 0);
  std::vector<ModMat> reps;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (marked[i]) continue;
    const ModMat r = g.element(i);
    reps.push_back(r);
    for (std::size_t k = 0; k < h.size(); ++k) {
      const auto idx = g.index_of(a.mul(r, h.element(k)));
      if (!idx) throw ConstructionFailure(h.name() + " is not contained in " + g.name());
      marked[*idx] = 1;
    }
  }
  std::vector<ModMat> rinv;
  for (const auto& r : reps) rinv.push_back(*a.inv(r));
  std::vector<Cyclo> out;
  out.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    Cyclo v(a.p(), chi.level);
    const ModMat x = g.element(i);
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const auto idx = h.index_of(a.mul(a.mul(rinv[k], x), reps[k]));
      if (idx) v.add_root(chi.values[*idx]);
    }
    out.push_back(v);
  }
  return out;
}

std::int64_t inner_product(const FiniteSubgroup& g, const std::vector<Cyclo>& a, const std::vector<Cyclo>& b) {
  if (a.empty()) throw std::invalid_argument("inner_product: empty class functions");
  Cyclo acc(a[0].p(), a[0].level());
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i].conj();
  const auto v = acc.as_integer();
  const auto order = static_cast<std::int64_t>(g.size());
  if (!v || *v % order != 0) throw ConstructionFailure("inner product over " + g.name() + " is not an integer");
  return *v / order;
}

HeisenbergExtension extend_and_induce(const SubgroupFamily& fam, const GroupCharacter& theta,
                                      const PolarizationData& pol) {
  HeisenbergExtension out;
  const FiniteSubgroup& J = *fam.j1;
  const FiniteSubgroup& H = *fam.h1;
  const ExtensionResult ext = extend_character(*pol.b1, H, theta.values, theta.level);
  out.theta_tilde = GroupCharacter{"theta~", pol.b1, theta.level, ext.values};
  out.extension_count = ext.count;
  if (ext.alternative) out.alternative = GroupCharacter{"theta~'", pol.b1, theta.level, *ext.alternative};
  out.eta = induce(J, out.theta_tilde);
  const auto id = *J.index_of(fam.arena.identity());
  const auto d = out.eta[id].as_integer();
  if (!d) throw ConstructionFailure("eta(1) is not an integer");
  out.dim = *d;
  const auto index = static_cast<std::int64_t>(J.size() / H.size());
  out.expected_dim = 1;
  while (out.expected_dim * out.expected_dim < index) ++out.expected_dim;
  out.inner_eta_eta = inner_product(J, out.eta, out.eta);

  out.restriction_is_multiple = true;
  Cyclo mult(fam.arena.p(), theta.level);
  for (std::size_t i = 0; i < H.size(); ++i) {
    Cyclo expect(fam.arena.p(), theta.level);
    expect.add_root(theta.values[i], out.dim);
    const Cyclo& got = out.eta[*J.index_of(H.keys()[i])];
    if (!(got == expect)) out.restriction_is_multiple = false;
    Cyclo th(fam.arena.p(), theta.level);
    th.add_root(-theta.values[i]);
    mult += got * th;
  }
  const auto mv = mult.as_integer();
  if (!mv || *mv % static_cast<std::int64_t>(H.size()) != 0) throw ConstructionFailure("<eta|H1, theta> is not an integer");
  out.multiplicity_theta = *mv / static_cast<std::int64_t>(H.size());
  if (out.alternative) {
    const auto eta_alt = induce(J, *out.alternative);
    out.inner_eta_alt = inner_product(J, out.eta, eta_alt);
  }
  return out;
}

IntertwineResult intertwines(const ModMat& g, const GroupCharacter& theta) {
  const FiniteSubgroup& H = *theta.domain;
  const Arena& a = H.arena();
  const std::int64_t p = a.p();
  const int N = a.N();
  std::int64_t big = p;
  int big_exp = 1;
  while (big <= (std::int64_t{1} << 60) / p) {
    big *= p;
    ++big_exp;
  }
  const std::int64_t dt = det(g, big);
  if (dt == 0) throw PrecisionLoss("intertwines: det g vanishes mod p^" + std::to_string(big_exp));
  const int v = vp(dt, p);
  const std::int64_t Q = ipow(p, N + v);
  const std::int64_t pv = ipow(p, v);
  const std::int64_t unit_inv = invmod(mod(dt / pv, a.q()), a.q());
  const ModMat G = reduce(g, Q);
  const ModMat adj = adjugate(G, Q);
  const int n = a.n();
  const std::int64_t lifts = ipow(pv, n * n);
  IntertwineResult res;
  res.intertwines = true;
  for (std::size_t i = 0; i < H.size(); ++i) {
    const ModMat h = H.element(i);
    for (std::int64_t t = 0; t < lifts; ++t) {
      ModMat x = h;
      std::int64_t rem = t;
      for (int k = 0; k < n * n; ++k) {
        x.a[static_cast<std::size_t>(k)] += (rem % pv) * a.q();
        rem /= pv;
      }
      const ModMat z = mul(mul(G, x, Q), adj, Q);
      if (!all_divisible(z, pv)) continue;
      ModMat y(n);
      for (int k = 0; k < n * n; ++k) y.a[static_cast<std::size_t>(k)] = z.a[static_cast<std::size_t>(k)] / pv;
      y = scale(y, unit_inv, a.q());
      const auto idx = H.index_of(y);
      if (!idx) continue;
      ++res.checked;
      if (mod(theta.values[*idx] - theta.values[i], theta.modulus()) != 0) {
        res.intertwines = false;
        res.witness = h;
        return res;
      }
    }
  }
  return res;
}

std::string dump_subgroup(const FiniteSubgroup& g) {
  std::ostringstream os;
  const Arena& a = g.arena();
  os << "# minvec subgroup v1\n";
  os << "name " << g.name() << "\np " << a.p() << "\nN " << a.N() << "\nn " << a.n() << "\nsize " << g.size() << "\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const ModMat x = g.element(i);
    for (int k = 0; k < a.n() * a.n(); ++k) os << (k ? " " : "") << x.a[static_cast<std::size_t>(k)];
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

std::string dump_character(const GroupCharacter& chi) {
  std::ostringstream os;
  const Arena& a = chi.domain->arena();
  os << "# minvec character v1\n";
  os << "name " << chi.name << "\ndomain " << chi.domain->name() << "\np " << a.p() << "\nN " << a.N() << "\nn "
     << a.n() << "\nlevel " << chi.level << "\nsize " << chi.domain->size() << "\n";
  for (std::size_t i = 0; i < chi.domain->size(); ++i) {
    const ModMat x = chi.domain->element(i);
    for (int k = 0; k < a.n() * a.n(); ++k) os << (k ? " " : "") << x.a[static_cast<std::size_t>(k)];
    os << " : " << mod(chi.values[i], chi.modulus()) << "\n";
  }
  os << "end\n";
  return os.str();
}

}  // namespace minvec::groups
