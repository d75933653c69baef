#pragma once

// The group K_pi with its character Theta, the test function omega, exact
// volumes, the convolution identity, torus concentration and depth data.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "minvec/cyclo.hpp"
#include "minvec/groups.hpp"
#include "minvec/orders.hpp"
#include "minvec/rational.hpp"

namespace minvec::testfunc {

struct KpiBlock {
  orders::InductionDatum datum;
  int offset = 0;
  groups::SubgroupFamily family;
  groups::GroupCharacter theta;        // simple character on H1
  groups::GroupCharacter theta_tilde;  // on B1 (= H1 for odd j), at the common level
  std::optional<groups::PolarizationData> polarization;
  std::int64_t extension_count = 1;

  int size() const { return datum.n(); }
  const groups::FiniteSubgroup& b1() const { return *theta_tilde.domain; }
};

struct KpiOptions {
  std::optional<int> c;             // default: ceil(max c_i)
  Rational band = Rational(2);      // |c_i - c| allowed
  bool inequivalent_asserted = false;
  std::int64_t enumerate_limit = 2'000'000;
  std::int64_t budget = 20'000'000;
};

/// K_pi: block-diagonal entries in B_i^1, above-diagonal blocks in
/// p^floor((c+1)/2), below-diagonal in p^ceil((c+1)/2), all mod p^N.
class Kpi {
 public:
  const groups::Arena& arena() const noexcept { return arena_; }
  const std::vector<KpiBlock>& blocks() const noexcept { return blocks_; }
  int n() const noexcept { return arena_.n(); }
  int c() const noexcept { return c_; }
  /// j/e for one block, the integer c otherwise.
  const Rational& normalised_depth() const noexcept { return c_value_; }
  int frak_c() const noexcept { return frak_c_; }
  int upper_exponent() const noexcept { return upper_; }
  int lower_exponent() const noexcept { return lower_; }
  int level() const noexcept { return level_; }
  bool single() const noexcept { return blocks_.size() == 1; }
  std::string id() const;

  /// Block index of row r.
  int block_of(int r) const;
  /// Congruence exponent imposed on entry (r, c) outside the diagonal blocks.
  int entry_exponent(int r, int c) const;
  BigInt order() const;
  /// Explicit element list (always for one block, otherwise when small).
  const groups::SubgroupPtr& enumerated() const noexcept { return enumerated_; }
  bool contains(const ModMat& x) const { return theta(x).has_value(); }
  /// Theta(x) at level(), or nullopt outside K_pi.
  std::optional<std::int64_t> theta(const ModMat& x) const;
  ModMat sample(std::mt19937_64& rng) const;

  friend Kpi build_Kpi(const std::vector<orders::InductionDatum>&, const KpiOptions&);

 private:
  explicit Kpi(groups::Arena a) : arena_(std::move(a)) {}

  groups::Arena arena_;
  std::vector<KpiBlock> blocks_;
  std::vector<int> block_of_row_;
  int c_ = 0;
  Rational c_value_;
  int frak_c_ = 0;
  int upper_ = 0;
  int lower_ = 0;
  int level_ = 1;
  groups::SubgroupPtr enumerated_;
};
using KpiPtr = std::shared_ptr<const Kpi>;

/// Throws DatumInvalid on blocks of size 1, non-minimal blocks, mixed p,
/// depth outside the band, or several blocks without asserted inequivalence.
Kpi build_Kpi(const std::vector<orders::InductionDatum>& data, const KpiOptions& opt = {});

/// ceil(max c_i) for several blocks.
int parabolic_c(const std::vector<orders::InductionDatum>& data);
/// min_i floor(floor((j_i+1)/2) / e_i).
int frak_c(const std::vector<orders::InductionDatum>& data);
/// Distinct (e_i, j_i) for every pair of blocks.
bool heuristic_inequivalent(const std::vector<orders::InductionDatum>& data);

struct KpiReport {
  bool closed = false;
  bool closure_exhaustive = false;
  std::int64_t closure_pairs = 0;
  bool multiplicative = false;
  bool multiplicativity_exhaustive = false;
  std::int64_t multiplicativity_pairs = 0;
  std::string witness;
};
KpiReport verify_Kpi(const Kpi& k, std::int64_t pair_budget = 4'000'000, std::uint64_t seed = 1);

class TestFunction {
 public:
  explicit TestFunction(KpiPtr k) : kpi_(std::move(k)) {}
  const Kpi& kpi() const noexcept { return *kpi_; }
  const KpiPtr& kpi_ptr() const noexcept { return kpi_; }
  /// Exponent of omega(g) at level kpi().level(), nullopt where omega is 0.
  std::optional<std::int64_t> value(const ModMat& g) const { return kpi_->theta(g); }
  /// omega*(g) = conj(omega(g^-1)).
  std::optional<std::int64_t> star(const ModMat& g) const;

 private:
  KpiPtr kpi_;
};
TestFunction make_omega(KpiPtr k);

struct VolumeReport {
  BigInt kpi_order;
  BigInt k_order;  // |GL_n(Z/p^N)|
  Rational d_pi;
  Rational target;  // c (n^2 - n) / 2
  int bound = 0;    // n^2
  bool within_bound = false;
  double offset = 0;  // log_p(1/d_pi) - target, for display
};
VolumeReport volume(const Kpi& k);

struct ConvolutionReport {
  bool passed = false;
  std::string mode;  // "pairwise" or "factorized"
  Rational d_pi;
  std::int64_t support_checked = 0;
  std::int64_t outside_checked = 0;
  bool complete = false;  // every g in GL_n(Z/p^N) accounted for
  std::optional<ModMat> witness;
  std::string detail;
};
struct ConvolutionOptions {
  std::uint64_t seed = 1;
  std::int64_t samples = 10'000;
  std::int64_t support_samples = 100;
  std::int64_t pair_limit = 200'000'000;
};
/// Checks (omega * omega^*)(g) = d_pi omega(g) with exact cyclotomic sums.
ConvolutionReport convolve_check(const TestFunction& w, const ConvolutionOptions& opt = {});
/// |K mod p^N| (omega * omega^*)(g) by direct summation over K_pi.
Cyclo convolve_naive(const TestFunction& w, const ModMat& g);
/// The same value through the column-block factorisation.
Cyclo convolve_factorized(const TestFunction& w, const ModMat& g);

struct ConcentrationReport {
  bool passed = false;
  bool vacuous = false;  // frak_c = 0
  bool exhaustive = false;
  int frak_c = 0;
  std::int64_t checked = 0;
  std::optional<ModMat> failure;
  std::string detail;
};
/// For x in K_pi finds l in U_L(1) with x l^-1 = 1 mod p^frak_c.
ConcentrationReport concentration_check(const TestFunction& w, std::int64_t samples = 10'000, std::uint64_t seed = 1);

struct DepthReport {
  std::vector<int> depths;  // d_i = j_i
  int d = 0;                // max d_i
  Rational c;
  int frak_c = 0;
  Rational conductor_exponent;  // n c
  Rational d_pi;
  bool frak_c_near_half_c = false;  // |frak_c - c/2| <= 1
};
DepthReport depth_report(const Kpi& k);

}  // namespace minvec::testfunc
