#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "minvec/errors.hpp"
#include "minvec/groups.hpp"

using namespace minvec;
using namespace minvec::groups;

namespace {

// Every element of GL_n(Z/p^N) satisfying pred, by scanning all matrices.
std::vector<std::uint64_t> scan(const Arena& a, const std::function<bool(const ModMat&)>& pred) {
  std::uint64_t total = 1;
  for (int i = 0; i < a.n() * a.n(); ++i) total *= static_cast<std::uint64_t>(a.q());
  std::vector<std::uint64_t> keys;
  for (std::uint64_t k = 0; k < total; ++k) {
    const ModMat x = a.decode(k);
    if (mod(det(x, a.q()), a.p()) != 0 && pred(x)) keys.push_back(k);
  }
  return keys;
}

ModMat minus_one(ModMat x) {
  for (int i = 0; i < x.n; ++i) x(i, i) -= 1;
  return x;
}

struct Built {
  orders::InductionDatum d;
  SubgroupFamily fam;
  SimpleCharacter sc;
};

Built build(const orders::InductionDatum& d) {
  auto fam = build_subgroups(d);
  auto sc = simple_character(d, fam);
  return {d, std::move(fam), std::move(sc)};
}

const Built& j1() {
  static const Built b = build(test::ramified_j1());
  return b;
}
const Built& unram() {
  static const Built b = build(test::unramified_j2());
  return b;
}

}  // namespace

TEST(Groups, ArenaOrder) {
  EXPECT_EQ(Arena(3, 2, 2).gl_order(), BigInt(3888));
  EXPECT_EQ(Arena(3, 2, 2).gl_order(), BigInt(scan(Arena(3, 2, 2), [](const ModMat&) { return true; }).size()));
  EXPECT_EQ(Arena(2, 1, 3).gl_order(), BigInt(168));
}

TEST(Groups, FiltrationSubgroupsMatchScan) {
  for (int e : {1, 2}) {
    const orders::HereditaryOrder o(2, e);
    const Arena a(3, 2, 2);
    for (int i = 1; i <= 2 * e; ++i) {
      const auto g = filtration_subgroup(a, o, i, "U", 1'000'000);
      const auto oracle = scan(a, [&](const ModMat& x) { return orders::in_radical_power_mod(minus_one(x), i, o, 3, 2); });
      EXPECT_EQ(g.keys(), oracle) << "e=" << e << " i=" << i;
      EXPECT_TRUE(g.contains(a.identity()));
      EXPECT_TRUE(check_closure(g).closed);
    }
  }
  EXPECT_THROW(filtration_subgroup(Arena(3, 3, 2), orders::HereditaryOrder(2, 2), 1, "U", 10), BudgetExceeded);
}

TEST(Groups, FamilyForRamifiedJ1) {
  const auto& f = j1().fam;
  EXPECT_EQ(f.h_index, 1);
  EXPECT_EQ(f.j_index, 1);
  // J1 = H1 for odd j.
  EXPECT_EQ(f.h1->keys(), f.j1->keys());
  EXPECT_EQ(f.h1->size(), 243u);
  EXPECT_EQ(f.jcapk->size(), 486u);
  // H1 = U_L(1) U_A(1) by explicit products.
  std::set<std::uint64_t> prod;
  for (std::size_t i = 0; i < f.ul1->size(); ++i)
    for (std::size_t k = 0; k < f.ua_h->size(); ++k) prod.insert(f.arena.key(f.arena.mul(f.ul1->element(i), f.ua_h->element(k))));
  EXPECT_EQ(std::vector<std::uint64_t>(prod.begin(), prod.end()), f.h1->keys());
  for (const auto& g : {f.h1, f.jcapk, f.ul1, f.ua_top}) {
    EXPECT_TRUE(check_closure(*g).closed) << g->name();
    EXPECT_TRUE(g->contains(f.arena.identity()));
  }
}

TEST(Groups, IndexForUnramifiedJ2) {
  const auto& f = unram().fam;
  EXPECT_EQ(f.j1->size() / f.h1->size(), 9u);
  EXPECT_EQ(f.j1->size() % f.h1->size(), 0u);
  EXPECT_TRUE(check_closure(*f.j1).closed);
}

TEST(Groups, BuildRejectsBadInput) {
  const auto shifted = orders::InductionDatum::make("s", 3, orders::HereditaryOrder(2, 2),
                                                    ModMat::from_rows({{1, 1}, {3, 1}}), -1);
  EXPECT_THROW(build_subgroups(shifted), DatumInvalid);
  EXPECT_THROW(build_subgroups(test::ramified_j3(), 2), std::invalid_argument);
}

TEST(Groups, SimpleCharacterIsMultiplicativeAndTrivialOnTop) {
  for (const Built* b : {&j1(), &unram()}) {
    const auto& th = b->sc.theta;
    const auto& H = *b->fam.h1;
    const auto& a = b->fam.arena;
    EXPECT_EQ(th.at(a.identity()), 0);
    for (std::size_t i = 0; i < H.size(); ++i)
      for (std::size_t k = 0; k < H.size(); ++k) {
        const auto z = H.index_of(a.mul(H.element(i), H.element(k)));
        ASSERT_TRUE(z);
        ASSERT_EQ(mod(th.values[*z] - th.values[i] - th.values[k], th.modulus()), 0);
      }
    for (std::size_t i = 0; i < b->fam.ua_top->size(); ++i) EXPECT_EQ(th.at(b->fam.ua_top->element(i)), 0);
  }
}

TEST(Groups, ThetaFormulaOnCongruenceSubgroup) {
  // psi(Tr(beta u)) = e(Tr(unit u) / p^(1 - scale)).
  const auto& b = j1();
  const std::int64_t m = ipow(3, 1 - b.d.scale());
  const std::int64_t lift = ipow(3, b.sc.theta.level - (1 - b.d.scale()));
  for (std::size_t i = 0; i < b.fam.ua_h->size(); ++i) {
    const ModMat x = b.fam.ua_h->element(i);
    const ModMat u = minus_one(x);
    std::int64_t tr = 0;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) tr += b.d.unit()(r, c) * u(c, r);
    EXPECT_EQ(theta_formula(b.d, x, b.fam.arena.q()), mod(tr, m));
    EXPECT_EQ(mod(b.sc.theta.at(x) - mod(tr, m) * lift, b.sc.theta.modulus()), 0);
  }
  // x = 1 + p E11: Tr(beta p E11) = 0; x = 1 + E12: Tr(beta E12) = beta_21 = 1, psi = e(1/3).
  ModMat x = ModMat::identity(2);
  x(0, 0) = 4;
  EXPECT_EQ(theta_formula(b.d, x, 9), 0);
  ModMat y = ModMat::identity(2);
  y(0, 1) = 1;
  EXPECT_EQ(theta_formula(b.d, y, 9), 3);
}

TEST(Groups, HeisenbergForUnramifiedJ2) {
  const auto& b = unram();
  const auto pol = heisenberg(b.d, b.fam, b.sc.theta);
  EXPECT_EQ(pol.dim(), 2u);
  EXPECT_TRUE(pol.alternating);
  EXPECT_TRUE(pol.nondegenerate);
  EXPECT_EQ(pol.isotropic.size(), 1u);
  for (std::size_t i = 0; i < pol.dim(); ++i) EXPECT_EQ(pol.pairing[i][i], 0);
  EXPECT_EQ(b.fam.j1->size() / pol.b1->size(), 3u);
  EXPECT_EQ(pol.b1->size() / b.fam.h1->size(), 3u);
  EXPECT_TRUE(pol.b1_closure.closed);

  const auto ext = extend_and_induce(b.fam, b.sc.theta, pol);
  EXPECT_EQ(ext.dim, 3);
  EXPECT_EQ(ext.expected_dim, 3);
  EXPECT_EQ(ext.inner_eta_eta, 1);
  EXPECT_TRUE(ext.restriction_is_multiple);
  EXPECT_EQ(ext.multiplicity_theta, 3);
  // Independent check of <eta, eta>: sum |eta(x)|^2 over J1.
  Cyclo total(3, ext.eta.front().level());
  for (const auto& v : ext.eta) total += v * v.conj();
  EXPECT_EQ(total.as_integer(), static_cast<std::int64_t>(b.fam.j1->size()));
  EXPECT_EQ(ext.eta[*b.fam.j1->index_of(b.fam.arena.identity())].as_integer(), 3);
}

TEST(Groups, HeisenbergRejectsOddJ) {
  const auto& b = j1();
  EXPECT_THROW(heisenberg(b.d, b.fam, b.sc.theta), DatumInvalid);
}

TEST(Groups, InducedCharacterOfTrivialCharacter) {
  // Ind from the normal subgroup H1 of J1 of the trivial character: [J1:H1] on H1, 0 off it.
  const auto& f = unram().fam;
  const GroupCharacter triv{"1", f.h1, 1, std::vector<std::int64_t>(f.h1->size(), 0)};
  const auto ind = induce(*f.j1, triv);
  const auto index = static_cast<std::int64_t>(f.j1->size() / f.h1->size());
  for (std::size_t i = 0; i < f.j1->size(); ++i) {
    const bool in = f.h1->contains(f.j1->element(i));
    EXPECT_EQ(ind[i].as_integer(), in ? index : 0);
  }
  EXPECT_EQ(inner_product(*f.j1, ind, ind), index);
}

TEST(Groups, IntertwiningExamples) {
  const auto& b = j1();
  const auto& th = b.sc.theta;
  EXPECT_TRUE(intertwines(ModMat::identity(2), th).intertwines);
  // 1 + Pi is a unit of O_L and Pi itself normalises everything.
  EXPECT_TRUE(intertwines(ModMat::from_rows({{1, 1}, {3, 1}}), th).intertwines);
  EXPECT_TRUE(intertwines(test::pi2(3), th).intertwines);
  EXPECT_FALSE(intertwines(ModMat::from_rows({{1, 0}, {0, 3}}), th).intertwines);
}

TEST(Groups, IntertwiningDichotomyRamifiedJ1) {
  const auto& b = j1();
  const Arena level(3, 2, 2);
  int mismatches = 0, yes = 0;
  for (std::uint64_t k = 0; k < 6561; ++k) {
    const ModMat g = level.decode(k);
    if (mod(det(g, 3), 3) == 0) continue;
    const bool it = intertwines(g, b.sc.theta).intertwines;
    yes += it;
    mismatches += it != b.fam.jcapk->contains(g);
  }
  EXPECT_EQ(mismatches, 0);
  EXPECT_EQ(yes, 486);
}

TEST(Groups, ExtendCharacterCountsAllExtensions) {
  // Characters of Z/9 = <1 + 3E_11 ...>: extend the trivial character of the
  // subgroup U_A(2) to U_A(1) for e = 1, p = 3, N = 2.
  const Arena a(3, 2, 2);
  const orders::HereditaryOrder o(2, 1);
  const auto g = filtration_subgroup(a, o, 1, "U1", 1'000'000);
  const auto s = filtration_subgroup(a, o, 2, "U2", 1'000'000);
  const auto ext = extend_character(g, s, std::vector<std::int64_t>(s.size(), 0), 1);
  // U_A(1)/U_A(2) = (F_3)^4, so 3^4 characters.
  EXPECT_EQ(ext.count, 81);
  EXPECT_TRUE(std::all_of(ext.values.begin(), ext.values.end(), [](std::int64_t v) { return v == 0; }));
  ASSERT_TRUE(ext.alternative);
}

TEST(Groups, DumpsAreCanonical) {
  const auto& f = j1().fam;
  const std::string text = dump_subgroup(*f.ua_top);
  std::ifstream in(std::string(MINVEC_GOLDEN_DIR) + "/n2e2j1p3.U_A2.dump");
  ASSERT_TRUE(in) << "missing golden dump";
  const std::string golden((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text, golden);
  EXPECT_EQ(dump_subgroup(*f.ua_top), text);
  const std::string ch = dump_character(j1().sc.theta);
  EXPECT_EQ(ch.rfind("# minvec character v1", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(ch.begin(), ch.end(), ':')), f.h1->size());
}
