#include <gtest/gtest.h>

#include "minvec/cyclo.hpp"
#include "minvec/fp.hpp"

using namespace minvec;

namespace {

bool has_root(const fp::Poly& f, std::int64_t p) {
  for (std::int64_t x = 0; x < p; ++x) {
    std::int64_t v = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) v = (v * x + *it) % p;
    if (v == 0) return true;
  }
  return false;
}

}  // namespace

TEST(Fp, IrreducibilityMatchesRootTestInLowDegree) {
  for (std::int64_t p : {2, 3, 5, 7})
    for (int d = 2; d <= 3; ++d) {
      std::int64_t count = 1;
      for (int i = 0; i < d; ++i) count *= p;
      int irreducible = 0;
      for (std::int64_t k = 0; k < count; ++k) {
        const fp::Poly f = fp::monic_from_index(d, k, p);
        EXPECT_EQ(fp::is_irreducible(f, p), !has_root(f, p));
        irreducible += fp::is_irreducible(f, p);
      }
      // Number of monic irreducibles: (p^2 - p)/2 and (p^3 - p)/3.
      EXPECT_EQ(irreducible, d == 2 ? (p * p - p) / 2 : (p * p * p - p) / 3);
    }
}

TEST(Fp, IrreduciblePower) {
  const fp::Poly g{1, 0, 1};  // x^2 + 1 over F_3
  const auto r = fp::irreducible_power(fp::pow(g, 2, 3), 3);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->first, g);
  EXPECT_EQ(r->second, 2);
  EXPECT_FALSE(fp::irreducible_power(fp::Poly{2, 0, 1}, 3));  // (x-1)(x+1)
}

TEST(Fp, RankAndSymplectic) {
  EXPECT_EQ(fp::rank({{1, 2, 0}, {2, 4, 0}, {0, 0, 1}}, 5), 2);
  EXPECT_TRUE(fp::in_span({{1, 0, 0}, {0, 1, 0}}, {3, 4, 0}, 5));
  EXPECT_FALSE(fp::in_span({{1, 0, 0}, {0, 1, 0}}, {0, 0, 1}, 5));
  // Standard symplectic form of rank 4.
  std::vector<fp::Vec> J{{0, 0, 1, 0}, {0, 0, 0, 1}, {2, 0, 0, 0}, {0, 2, 0, 0}};
  const auto r = fp::symplectic_reduce(J, 3);
  EXPECT_TRUE(r.alternating);
  EXPECT_TRUE(r.nondegenerate);
  ASSERT_EQ(r.isotropic.size(), 2u);
  for (const auto& x : r.isotropic)
    for (const auto& y : r.isotropic) {
      std::int64_t s = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += x[static_cast<std::size_t>(i)] * J[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)];
      EXPECT_EQ(s % 3, 0);
    }
  EXPECT_FALSE(fp::symplectic_reduce({{1, 0}, {0, 0}}, 3).alternating);
  EXPECT_FALSE(fp::symplectic_reduce({{0, 0}, {0, 0}}, 3).nondegenerate);
}

TEST(Cyclo, RootSumsAndCanonicalForm) {
  for (int level = 1; level <= 3; ++level) {
    Cyclo s(3, level);
    for (std::int64_t t = 0; t < s.order(); ++t) s.add_root(t);
    EXPECT_TRUE(s.is_zero());
    EXPECT_EQ(s.as_integer(), 0);
  }
  // 1 + zeta_3 + zeta_3^2 = 0 inside Z[zeta_9].
  Cyclo a(3, 2);
  a.add_root(0);
  a.add_root(3);
  a.add_root(6);
  EXPECT_TRUE(a.is_zero());
  Cyclo b(3, 2);
  b.add_root(1);
  Cyclo c = b * b.conj();
  EXPECT_EQ(c.as_integer(), 1);
  Cyclo d(3, 2);
  d.add_root(2, 5);
  EXPECT_FALSE(d.as_integer());
  EXPECT_EQ(d.canonical(), d.canonical().canonical());
  Cyclo e(3, 2);
  e.add_root(4);
  e.add_root(7);
  Cyclo f(3, 2);
  f.add_root(1, -1);
  EXPECT_EQ(e, f);  // zeta + zeta^4 + zeta^7 = 0
}
