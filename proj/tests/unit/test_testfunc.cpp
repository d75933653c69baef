#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "minvec/errors.hpp"
#include "minvec/io.hpp"
#include "minvec/testfunc.hpp"

using namespace minvec;
using namespace minvec::testfunc;

namespace {

KpiPtr single(const orders::InductionDatum& d) { return std::make_shared<const Kpi>(build_Kpi({d})); }

const KpiPtr& kpi_j1() {
  static const KpiPtr k = single(test::ramified_j1());
  return k;
}
const KpiPtr& kpi_unram() {
  static const KpiPtr k = single(test::unramified_j2());
  return k;
}
const KpiPtr& kpi_parabolic_p2() {
  static const KpiPtr k = [] {
    const auto df = io::read_datum(test::data_path("datums/n4-parabolic-p2.datum"));
    KpiOptions opt;
    opt.inequivalent_asserted = df.inequivalent_asserted;
    return std::make_shared<const Kpi>(build_Kpi(io::to_data(df), opt));
  }();
  return k;
}

ModMat random_matrix(std::mt19937_64& rng, const groups::Arena& a) {
  std::uniform_int_distribution<std::int64_t> d(0, a.q() - 1);
  ModMat m(a.n());
  for (int i = 0; i < a.n() * a.n(); ++i) m.a[static_cast<std::size_t>(i)] = d(rng);
  return m;
}

}  // namespace

TEST(Kpi, SingleBlockIsB1) {
  EXPECT_EQ(kpi_j1()->order(), BigInt(243));
  EXPECT_EQ(kpi_j1()->enumerated()->keys(), kpi_j1()->blocks()[0].family.h1->keys());
  const auto& b = kpi_unram()->blocks()[0];
  ASSERT_TRUE(b.polarization);
  EXPECT_EQ(kpi_unram()->enumerated()->keys(), b.polarization->b1->keys());
  EXPECT_EQ(kpi_unram()->order(), BigInt(2187));
}

TEST(Kpi, ParabolicMembershipMatchesDefinition) {
  const auto& k = *kpi_parabolic_p2();
  EXPECT_EQ(k.c(), 1);
  EXPECT_EQ(k.upper_exponent(), 1);
  EXPECT_EQ(k.lower_exponent(), 1);
  EXPECT_EQ(k.order(), BigInt(262144));
  const auto& a = k.arena();
  std::mt19937_64 rng(4);
  int inside = 0;
  for (int t = 0; t < 20000; ++t) {
    ModMat g = random_matrix(rng, a);
    // Bias half the samples into the candidate shape.
    if (t % 2 == 0) {
      const auto b0 = k.blocks()[0].b1().element(rng() % k.blocks()[0].b1().size());
      const auto b1 = k.blocks()[1].b1().element(rng() % k.blocks()[1].b1().size());
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          if (r / 2 == c / 2) g(r, c) = (r < 2 ? b0 : b1)(r % 2, c % 2);
          else if (t % 4 == 0) g(r, c) = mod(g(r, c) * 2, a.q());
        }
    }
    ModMat blk0(2), blk1(2);
    bool off = true;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        if (r / 2 == c / 2) (r < 2 ? blk0 : blk1)(r % 2, c % 2) = g(r, c);
        else off = off && g(r, c) % 2 == 0;
      }
    const bool expected = off && k.blocks()[0].b1().contains(blk0) && k.blocks()[1].b1().contains(blk1);
    EXPECT_EQ(k.contains(g), expected) << to_string(g);
    inside += expected;
  }
  EXPECT_GT(inside, 1000);
}

TEST(Kpi, BuildRejectsBadData) {
  const auto shifted = orders::InductionDatum::make("s", 3, orders::HereditaryOrder(2, 2),
                                                    ModMat::from_rows({{1, 1}, {3, 1}}), -1);
  EXPECT_THROW(build_Kpi({shifted}), DatumInvalid);
  const auto a = orders::InductionDatum::make("a", 3, orders::HereditaryOrder(2, 2), test::pi2(3), -1);
  const auto b = orders::InductionDatum::make("b", 3, orders::HereditaryOrder(2, 2), ModMat::from_rows({{0, 1}, {6, 0}}), -1);
  EXPECT_THROW(build_Kpi({a, b}), DatumInvalid);  // inequivalence not asserted
  KpiOptions far;
  far.c = 6;
  far.inequivalent_asserted = true;
  EXPECT_THROW(build_Kpi({a, b}, far), DatumInvalid);  // depth band
  EXPECT_THROW(
      {
        const auto one = orders::InductionDatum::make("g1", 3, orders::HereditaryOrder(1, 1), ModMat::identity(1), -1);
        KpiOptions o;
        o.inequivalent_asserted = true;
        build_Kpi({one, one}, o);
      },
      DatumInvalid);
}

TEST(Kpi, ThetaIsMultiplicative) {
  for (const auto& k : {kpi_j1(), kpi_unram()}) {
    const auto r = verify_Kpi(*k, 100'000'000);
    EXPECT_TRUE(r.closed);
    EXPECT_TRUE(r.closure_exhaustive);
    EXPECT_TRUE(r.multiplicative);
    EXPECT_TRUE(r.multiplicativity_exhaustive);
  }
  const auto r = verify_Kpi(*kpi_parabolic_p2(), 200'000, 9);
  EXPECT_TRUE(r.closed);
  EXPECT_TRUE(r.multiplicative);
  EXPECT_FALSE(r.multiplicativity_exhaustive);
}

TEST(Omega, ValuesAndStar) {
  const auto w = make_omega(kpi_j1());
  const auto& k = w.kpi();
  const auto& a = k.arena();
  EXPECT_EQ(w.value(a.identity()), 0);
  EXPECT_FALSE(w.value(ModMat::from_rows({{0, 1}, {1, 0}})));
  const std::int64_t M = ipow(3, k.level());
  for (std::size_t i = 0; i < k.enumerated()->size(); ++i) {
    const ModMat x = k.enumerated()->element(i);
    const auto s = w.star(x);
    ASSERT_TRUE(s);
    EXPECT_EQ(mod(*s + *w.value(*a.inv(x)), M), 0);
  }
}

TEST(Omega, VolumeAndDepth) {
  const auto v1 = volume(*kpi_j1());
  EXPECT_EQ(v1.d_pi, make_rational(1, 16));
  EXPECT_EQ(v1.k_order, BigInt(3888));
  EXPECT_TRUE(v1.within_bound);
  EXPECT_EQ(volume(*kpi_unram()).d_pi, make_rational(1, 144));
  EXPECT_EQ(volume(*single(test::ramified_j3())).d_pi, make_rational(1, 48));
  const auto vp = volume(*kpi_parabolic_p2());
  EXPECT_EQ(vp.d_pi, Rational(BigInt(262144), groups::Arena(2, 2, 4).gl_order()));
  EXPECT_EQ(vp.d_pi, make_rational(1, 5040));
  EXPECT_TRUE(vp.within_bound);

  const auto d1 = depth_report(*kpi_j1());
  EXPECT_EQ(d1.d, 1);
  EXPECT_EQ(d1.c, make_rational(1, 2));
  EXPECT_EQ(d1.conductor_exponent, 1);
  EXPECT_EQ(d1.frak_c, 0);
  EXPECT_TRUE(d1.frak_c_near_half_c);
  const auto dp = depth_report(*kpi_parabolic_p2());
  EXPECT_EQ(dp.c, 1);
  EXPECT_EQ(dp.conductor_exponent, 4);
  EXPECT_EQ(frak_c({test::ramified_j3()}), 1);
  EXPECT_EQ(frak_c({test::unramified_j2()}), 1);
  EXPECT_EQ(frak_c({test::ramified_j1(), test::ramified_j3()}), 0);
}

TEST(Omega, ThetaLineScalar) {
  // sum over K_pi of Theta(x) conj(Theta(x)), divided by |K|, is d_pi.
  const auto& k = *kpi_unram();
  Cyclo s(3, k.level());
  for (std::size_t i = 0; i < k.enumerated()->size(); ++i) {
    const auto t = *k.theta(k.enumerated()->element(i));
    Cyclo z(3, k.level());
    z.add_root(t);
    s += z * z.conj();
  }
  ASSERT_TRUE(s.as_integer());
  EXPECT_EQ(Rational(BigInt(*s.as_integer()), k.arena().gl_order()), volume(k).d_pi);
}

TEST(Omega, ConvolutionAgainstDirectSum) {
  // (omega * omega^*)(g) = |K|^-1 sum_x omega(x) omega^*(x^-1 g) over all of GL_2(Z/9).
  const auto w = make_omega(kpi_j1());
  const auto& a = w.kpi().arena();
  std::vector<ModMat> group;
  for (std::uint64_t key = 0; key < 6561; ++key) {
    const ModMat x = a.decode(key);
    if (mod(det(x, 3), 3) != 0) group.push_back(x);
  }
  ASSERT_EQ(group.size(), 3888u);
  std::vector<ModMat> inv;
  for (const auto& x : group) inv.push_back(*a.inv(x));
  ASSERT_EQ(volume(w.kpi()).d_pi * 3888, 243);
  const int L = w.kpi().level();
  for (std::size_t gi = 0; gi < group.size(); gi += 7) {
    const ModMat& g = group[gi];
    Cyclo s(3, L);
    for (std::size_t xi = 0; xi < group.size(); ++xi) {
      const auto wx = w.value(group[xi]);
      if (!wx) continue;
      const auto ws = w.star(a.mul(inv[xi], g));
      if (ws) s.add_root(*wx + *ws);
    }
    const auto wg = w.value(g);
    Cyclo expect(3, L);
    if (wg) expect.add_root(*wg, 243);  // d_pi |K| = |K_pi|
    EXPECT_EQ(s, expect) << to_string(g);
  }
}

TEST(Omega, ConvolutionNaiveMatchesFactorized) {
  const auto w = make_omega(kpi_parabolic_p2());
  const auto& k = w.kpi();
  std::mt19937_64 rng(8);
  for (int t = 0; t < 12; ++t) {
    const ModMat g = t % 2 ? k.sample(rng) : random_matrix(rng, k.arena());
    if (!k.arena().inv(g)) continue;
    EXPECT_EQ(convolve_naive(w, g), convolve_factorized(w, g)) << to_string(g);
  }
}

TEST(Omega, ConvolutionCheckPasses) {
  for (const auto& k : {kpi_j1(), kpi_unram()}) {
    const auto r = convolve_check(make_omega(k));
    EXPECT_TRUE(r.passed) << r.detail;
    EXPECT_EQ(r.mode, "pairwise");
    EXPECT_TRUE(r.complete);
  }
  ConvolutionOptions o;
  o.samples = 300;
  o.support_samples = 20;
  const auto r = convolve_check(make_omega(kpi_parabolic_p2()), o);
  EXPECT_TRUE(r.passed) << r.detail;
  EXPECT_EQ(r.mode, "factorized");
  EXPECT_EQ(r.d_pi, make_rational(1, 5040));
}

TEST(Omega, Concentration) {
  const auto c1 = concentration_check(make_omega(kpi_j1()));
  EXPECT_TRUE(c1.passed);
  EXPECT_TRUE(c1.vacuous);
  const auto c2 = concentration_check(make_omega(kpi_unram()));
  EXPECT_TRUE(c2.passed);
  EXPECT_FALSE(c2.vacuous);
  EXPECT_TRUE(c2.exhaustive);
  EXPECT_EQ(c2.checked, 2187);
  EXPECT_EQ(c2.frak_c, 1);
}
