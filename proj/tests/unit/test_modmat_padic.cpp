#include <gtest/gtest.h>

#include <random>

#include "minvec/errors.hpp"
#include "minvec/modmat.hpp"
#include "minvec/padic.hpp"

using namespace minvec;
using namespace minvec::padic;

namespace {

// Laplace expansion over the integers.
std::int64_t det_laplace(const ModMat& x) {
  if (x.n == 1) return x(0, 0);
  std::int64_t s = 0;
  for (int c = 0; c < x.n; ++c) {
    ModMat minor(x.n - 1);
    for (int r = 1; r < x.n; ++r)
      for (int k = 0, kk = 0; k < x.n; ++k)
        if (k != c) minor(r - 1, kk++) = x(r, k);
    s += (c % 2 ? -1 : 1) * x(0, c) * det_laplace(minor);
  }
  return s;
}

ModMat random_mat(std::mt19937_64& rng, int n, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> d(lo, hi);
  ModMat m(n);
  for (int i = 0; i < n * n; ++i) m.a[static_cast<std::size_t>(i)] = d(rng);
  return m;
}

// Same scale and unit parts equal to the smaller of the two precisions.
bool agree(const MatrixApprox& a, const MatrixApprox& b) {
  if (a.is_exact_zero() || b.is_exact_zero()) return a.is_exact_zero() == b.is_exact_zero();
  if (a.scale() != b.scale()) return false;
  const int k = std::min(a.precision(), b.precision());
  const std::int64_t q = a.ctx().pow(k);
  return reduce(a.entries(), q) == reduce(b.entries(), q);
}

bool agree(const ScaledResidue& a, const ScaledResidue& b) {
  if (!a.is_unit_form() || !b.is_unit_form()) return a == b;
  const int k = std::min(a.precision(), b.precision());
  return a.valuation() == b.valuation() && mod(a.unit() - b.unit(), a.ctx().pow(k)) == 0;
}

}  // namespace

TEST(ModMat, Basics) {
  EXPECT_EQ(ipow(3, 4), 81);
  EXPECT_EQ(vp(54, 3), 3);
  EXPECT_EQ(mod(-1, 9), 8);
  EXPECT_EQ(mulmod(invmod(5, 27), 5, 27), 1);
  EXPECT_THROW(invmod(3, 27), std::domain_error);
  EXPECT_EQ(to_string(ModMat::from_rows({{0, 1}, {3, 0}})), "[0 1; 3 0]");
}

TEST(ModMat, DeterminantMatchesLaplace) {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 4; ++n)
    for (int t = 0; t < 200; ++t) {
      const ModMat x = random_mat(rng, n, -20, 20);
      const std::int64_t q = 3 * 3 * 3 * 3 * 3;
      EXPECT_EQ(det(x, q), mod(det_laplace(x), q));
      const ModMat xa = mul(reduce(x, q), adjugate(x, q), q);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) EXPECT_EQ(xa(r, c), r == c ? mod(det_laplace(x), q) : 0);
    }
}

TEST(ModMat, CodecIsBijective) {
  const MatCodec codec(2, 9);
  for (std::uint64_t k = 0; k < 6561; ++k) EXPECT_EQ(codec.encode(codec.decode(k)), k);
}

TEST(Padic, TraceDetExamples) {
  const PrecisionCtx ctx(3, 6);
  const auto [t1, d1] = trace_det(MatrixApprox::identity(3, ctx));
  EXPECT_TRUE(agree(t1, ScaledResidue::from_integer(3, ctx)));
  EXPECT_TRUE(agree(d1, ScaledResidue::from_integer(1, ctx)));
  const auto pi = MatrixApprox::from_exact(ModMat::from_rows({{0, 1}, {3, 0}}), 0, ctx);
  const auto [t2, d2] = trace_det(pi);
  EXPECT_TRUE(t2.is_exact_zero() || t2.is_negligible());
  EXPECT_TRUE(agree(d2, ScaledResidue::from_integer(-3, ctx))) << d2.str();
  // beta = p^-1 Pi: det = -p^-1.
  const auto beta = MatrixApprox::from_exact(ModMat::from_rows({{0, 1}, {3, 0}}), -1, ctx);
  const auto [t3, d3] = trace_det(beta);
  EXPECT_FALSE(t3.is_unit_form());
  ASSERT_TRUE(d3.is_unit_form());
  EXPECT_EQ(d3.valuation(), -1);
  EXPECT_EQ(mod(d3.unit() + 1, ctx.pow(d3.precision())), 0);
}

TEST(Padic, ScaledResidueValuationLaw) {
  std::mt19937_64 rng(11);
  for (std::int64_t p : {2, 3, 5}) {
    const PrecisionCtx ctx(p, 8);
    std::uniform_int_distribution<std::int64_t> d(1, 100000);
    for (int t = 0; t < 500; ++t) {
      const auto x = ScaledResidue::from_integer(d(rng), ctx);
      const auto y = ScaledResidue::from_integer(d(rng), ctx);
      EXPECT_EQ((x * y).valuation(), x.valuation() + y.valuation());
      const auto xi = x.inverse();
      EXPECT_EQ(xi.valuation(), -x.valuation());
      const auto one = x * xi;
      EXPECT_EQ(one.valuation(), 0);
      EXPECT_EQ(mod(one.unit() - 1, ctx.pow(one.precision())), 0);
    }
  }
}

TEST(Padic, ExactZeroIsNeverInferred) {
  const PrecisionCtx ctx(3, 2);
  const auto x = ScaledResidue::from_integer(9, ctx);
  const auto y = ScaledResidue::from_integer(-9, ctx);
  const auto z = x + y;
  EXPECT_FALSE(z.is_exact_zero());
  EXPECT_TRUE((x + ScaledResidue::exact_zero(ctx)) == x);
  EXPECT_THROW(ScaledResidue::from_integer(1, ctx) * ScaledResidue::from_integer(1, PrecisionCtx(3, 3)), std::exception);
}

TEST(Padic, RingLawsOnRandomMatrices) {
  std::mt19937_64 rng(5);
  int sums = 0;
  for (std::int64_t p : {2, 3, 5}) {
    const PrecisionCtx ctx(p, 10);
    for (int n = 1; n <= 3; ++n)
      for (int t = 0; t < 60; ++t) {
        auto make = [&] {
          ModMat m = random_mat(rng, n, -9, 9);
          m(0, 0) = 1 + p * m(0, 0);  // a unit entry keeps the exact form nonzero
          return MatrixApprox::from_exact(m, static_cast<int>(rng() % 3) - 1, ctx);
        };
        const auto x = make(), y = make(), z = make();
        EXPECT_TRUE(agree((x * y) * z, x * (y * z)));
        try {
          EXPECT_TRUE(agree(x * (y + z), x * y + x * z));
          EXPECT_TRUE(agree((x + y) * z, x * z + y * z));
          ++sums;
        } catch (const PrecisionLoss&) {
          // y + z cancelled to every available digit
        }
      }
  }
  EXPECT_GT(sums, 500);
}

TEST(Padic, InverseIsInvolution) {
  std::mt19937_64 rng(3);
  int tested = 0;
  // |det| < 6^4 * 24 < p^N below, so no determinant vanishes.
  for (const auto& [p, N] : {std::pair<std::int64_t, int>{2, 20}, {3, 12}, {5, 9}}) {
    const PrecisionCtx ctx(p, N);
    for (int n = 1; n <= 4; ++n)
      for (int t = 0; t < 84;) {
        const ModMat m = random_mat(rng, n, -6, 6);
        if (det_laplace(m) == 0) continue;
        const auto x = MatrixApprox::from_exact(m, 0, ctx);
        const auto xi = mat_inv(x);
        const auto back = mat_inv(xi);
        EXPECT_TRUE(agree(back, x)) << back.str() << " vs " << x.str();
        EXPECT_LE(back.precision(), x.precision());
        EXPECT_TRUE(agree(x * xi, MatrixApprox::identity(n, ctx)));
        ++t;
        ++tested;
      }
  }
  EXPECT_GE(tested, 1000);
}

TEST(Padic, NormalizeThrowsWhenEverythingVanishes) {
  const PrecisionCtx ctx(3, 2);
  ModMat z(2);
  z(0, 0) = 9;
  EXPECT_THROW(MatrixApprox::normalize(z, 0, ctx), PrecisionLoss);
}
