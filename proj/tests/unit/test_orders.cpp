#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "minvec/errors.hpp"
#include "minvec/orders.hpp"

using namespace minvec;
using namespace minvec::orders;

namespace {

using Shape = std::vector<std::vector<int>>;

// The order and its radical as displayed: m x m blocks, O on and above the
// block diagonal of A and p below; the radical moves the diagonal down by one.
Shape displayed(int n, int e, bool radical) {
  const int m = n / e;
  Shape s(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int a = r / m, b = c / m;
      s[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = radical ? (a >= b ? 1 : 0) : (a > b ? 1 : 0);
    }
  return s;
}

// Lattice spanned by p^v(a,b) E_ab times one spanned by p^w(b,c) E_bc.
Shape tropical(const Shape& x, const Shape& y) {
  const auto n = x.size();
  Shape z(n, std::vector<int>(n, 1 << 20));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) z[a][c] = std::min(z[a][c], x[a][b] + y[b][c]);
  return z;
}

// Minimal valuation of B^i entries: tropical powers for 0 <= i < e,
// then B^(i+e) = p B^i.
Shape oracle(int n, int e, int i) {
  const int k = static_cast<int>(floor_div(i, e));
  const int r = i - k * e;
  Shape s = displayed(n, e, false);
  for (int t = 0; t < r; ++t) s = tropical(s, displayed(n, e, true));
  for (auto& row : s)
    for (auto& v : row) v += k;
  return s;
}

}  // namespace

TEST(Orders, ClosedFormMatchesDisplayedShapes) {
  for (int n = 2; n <= 4; ++n)
    for (int e = 1; e <= n; ++e) {
      if (n % e) continue;
      const HereditaryOrder o(n, e);
      EXPECT_EQ(oracle(n, e, 1), displayed(n, e, true));
      for (int i = -2 * e; i <= 2 * e; ++i) {
        const Shape s = oracle(n, e, i);
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) {
            const int v = s[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            EXPECT_EQ(o.min_valuation(r, c, i), v) << n << " " << e << " " << i;
            if (v < 0) continue;
            ModMat x(n);
            x(r, c) = ipow(3, v);
            EXPECT_TRUE(in_radical_power_mod(x, i, o, 3, 8));
            if (v >= 1) {
              x(r, c) = ipow(3, v - 1);
              EXPECT_FALSE(in_radical_power_mod(x, i, o, 3, 8));
            }
          }
      }
    }
}

TEST(Orders, MembershipExamples) {
  const padic::PrecisionCtx ctx(3, 6);
  for (int n = 2; n <= 4; ++n)
    for (int e = 1; e <= n; ++e)
      if (n % e == 0) EXPECT_TRUE(in_radical_power(padic::MatrixApprox::identity(n, ctx), 0, HereditaryOrder(n, e)));
  const HereditaryOrder o(2, 2);
  const auto pi = padic::MatrixApprox::from_exact(test::pi2(3), 0, ctx);
  EXPECT_TRUE(in_radical_power(pi, 1, o));
  EXPECT_FALSE(in_radical_power(pi, 2, o));
  const auto pI = padic::MatrixApprox::identity(2, ctx).shifted(1);
  EXPECT_TRUE(in_radical_power(pI, 2, o));
  EXPECT_FALSE(in_radical_power(pI, 3, o));
}

TEST(Orders, SemiValuationExamples) {
  const padic::PrecisionCtx ctx(3, 8);
  const HereditaryOrder o(2, 2);
  EXPECT_EQ(v_A(padic::MatrixApprox::identity(2, ctx), o), 0);
  EXPECT_EQ(v_A(padic::MatrixApprox::from_exact(test::pi2(3), 0, ctx), o), 1);
  EXPECT_EQ(test::ramified_j1().beta(ctx).scale(), -1);
  EXPECT_EQ(v_A(test::ramified_j1().beta(ctx), o), -1);
  EXPECT_EQ(v_A(test::ramified_j3().beta(ctx), o), -3);
  EXPECT_THROW(v_A(padic::MatrixApprox::exact_zero(2, ctx), o), std::exception);
}

TEST(Orders, SemiValuationIsSuperadditiveAndShiftsUnderPi) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::int64_t> d(-20, 20);
  for (int e : {1, 2}) {
    const HereditaryOrder o(2, e);
    for (int t = 0; t < 2000; ++t) {
      ModMat x(2), y(2);
      for (int i = 0; i < 4; ++i) x.a[static_cast<std::size_t>(i)] = d(rng), y.a[static_cast<std::size_t>(i)] = d(rng);
      const ModMat xy = mul_exact(x, y);
      if (all_divisible(x, 1 << 30) || all_divisible(y, 1 << 30) || all_divisible(xy, 1 << 30)) continue;
      EXPECT_GE(v_A_exact(xy, 0, o, 3), v_A_exact(x, 0, o, 3) + v_A_exact(y, 0, o, 3));
      if (e == 2) EXPECT_EQ(v_A_exact(mul_exact(test::pi2(3), x), 0, o, 3), v_A_exact(x, 0, o, 3) + 1);
    }
  }
}

TEST(Orders, ApproximationAndFiltrationLaws) {
  const padic::PrecisionCtx ctx(3, 10);
  for (int n = 2; n <= 4; ++n)
    for (int e = 1; e <= n; ++e) {
      if (n % e) continue;
      const HereditaryOrder o(n, e);
      for (int i = -2 * e; i <= 2 * e; ++i) {
        EXPECT_TRUE(check_approximation(o, i, ctx).holds()) << n << " " << e << " " << i;
        const auto f = check_filtration(o, i, ctx);
        EXPECT_TRUE(f.periodic);
        EXPECT_TRUE(f.strictly_decreasing);
      }
    }
  const auto a = check_approximation(HereditaryOrder(2, 2), 1, ctx);
  EXPECT_TRUE(a.holds());
  EXPECT_TRUE(a.lower_strict);
  EXPECT_TRUE(a.upper_strict);
  EXPECT_TRUE(check_approximation(HereditaryOrder(4, 2), -3, ctx).holds());
  EXPECT_TRUE(check_approximation(HereditaryOrder(3, 3), 0, ctx).holds());
}

TEST(Orders, FieldCertificate) {
  const auto r = certify_field(test::pi2(3), -1, 3);
  EXPECT_TRUE(r.certified);
  EXPECT_EQ(r.ramification, 2);
  EXPECT_EQ(r.residue_degree, 1);
  const auto u = certify_field(ModMat::from_rows({{0, -1}, {1, 0}}), -2, 3);
  EXPECT_TRUE(u.certified);
  EXPECT_EQ(u.ramification, 1);
  EXPECT_EQ(u.residue_degree, 2);
  // x^2 + 1 splits mod 5.
  EXPECT_FALSE(certify_field(ModMat::from_rows({{0, -1}, {1, 0}}), -2, 5).certified);
  EXPECT_FALSE(certify_field(ModMat::from_rows({{1, 0}, {0, 2}}), -1, 3).certified);
  EXPECT_FALSE(certify_field(ModMat::identity(2), -1, 3).certified);
}

TEST(Orders, DatumConstruction) {
  EXPECT_EQ(test::ramified_j1().j(), 1);
  EXPECT_EQ(test::ramified_j3().j(), 3);
  EXPECT_EQ(test::unramified_j2().j(), 2);
  EXPECT_EQ(test::ramified_j3().normalised_depth(), make_rational(3, 2));
  EXPECT_EQ(test::ramified_j1().group_precision(), 2);
  EXPECT_EQ(test::ramified_j3().group_precision(), 3);
  // Degenerate: F[beta] is not a field.
  EXPECT_THROW(InductionDatum::make("d", 3, HereditaryOrder(2, 2), ModMat::from_rows({{1, 0}, {0, 2}}), -1),
               DatumInvalid);
  // v_A(beta) >= 0 and a wrong declared j.
  EXPECT_THROW(InductionDatum::make("d", 3, HereditaryOrder(2, 2), test::pi2(3), 0), DatumInvalid);
  EXPECT_THROW(InductionDatum::make("d", 3, HereditaryOrder(2, 2), test::pi2(3), -1, 2), DatumInvalid);
  EXPECT_THROW(HereditaryOrder(4, 3), std::exception);
}

TEST(Orders, Minimality) {
  EXPECT_TRUE(is_minimal(test::ramified_j1()));
  EXPECT_TRUE(is_minimal(test::ramified_j3()));
  EXPECT_TRUE(is_minimal(test::unramified_j2()));
  EXPECT_EQ(test::ramified_j1().v_L(), -1);
  const auto pi2 = InductionDatum::make("pi-2", 3, HereditaryOrder(2, 2), ModMat::identity(2), -1, std::nullopt,
                                        InductionDatum::FieldPolicy::defer);
  EXPECT_EQ(pi2.j(), 2);
  EXPECT_FALSE(is_minimal(pi2));
  const auto shifted = InductionDatum::make("shift", 3, HereditaryOrder(2, 2), ModMat::from_rows({{1, 1}, {3, 1}}), -1);
  EXPECT_TRUE(shifted.field().certified);
  EXPECT_FALSE(is_minimal(shifted));
}

TEST(Orders, K0EqualsSemiValuationForMinimalData) {
  for (const auto& d : {test::ramified_j1(), test::ramified_j3(), test::unramified_j2()}) {
    const auto k = k0(d);
    EXPECT_FALSE(k.saturated) << d.id();
    EXPECT_EQ(k.value, -d.j()) << d.id();
  }
  const auto shifted = InductionDatum::make("shift", 3, HereditaryOrder(2, 2), ModMat::from_rows({{1, 1}, {3, 1}}), -1);
  EXPECT_GT(k0(shifted).value, -shifted.j());
  const auto pi2 = InductionDatum::make("pi-2", 3, HereditaryOrder(2, 2), ModMat::identity(2), -1, std::nullopt,
                                        InductionDatum::FieldPolicy::defer);
  const auto k = k0(pi2);
  EXPECT_GT(k.value, -pi2.j());
  EXPECT_THROW(k0(test::ramified_j3(), std::nullopt, 3), BudgetExceeded);
}

TEST(Orders, OLBasisCommutesWithBeta) {
  for (const auto& d : {test::ramified_j1(), test::ramified_j3(), test::unramified_j2()}) {
    const auto b = ol_basis(d, 4);
    const std::int64_t q = ipow(3, 4);
    EXPECT_TRUE(b.from_uniformizer);
    EXPECT_EQ(static_cast<int>(b.basis.size()), d.n());
    EXPECT_EQ(b.f, d.n() / d.e());
    for (const auto& x : b.basis) EXPECT_EQ(mul(x, d.unit(), q), mul(d.unit(), x, q));
  }
}
