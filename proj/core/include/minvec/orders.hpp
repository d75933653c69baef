#pragma once

// Principal hereditary orders in standard block form, their radical
// filtration B^i, the semi-valuation v_A, the constant k0 and minimality.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minvec/modmat.hpp"
#include "minvec/padic.hpp"
#include "minvec/rational.hpp"

namespace minvec::orders {

/// Standard principal order of period e in M_n: e x e blocks of size
/// m = n/e, block (a, b) integral on and above the diagonal, divisible by p
/// below it.
class HereditaryOrder {
 public:
  HereditaryOrder(int n, int e);

  int n() const noexcept { return n_; }
  int e() const noexcept { return e_; }
  int m() const noexcept { return n_ / e_; }
  /// 1-indexed block coordinate of a row or column index.
  int block_of(int idx) const noexcept { return idx / m() + 1; }
  /// Entry (r, c) of an element of B^i has valuation at least this.
  int min_valuation(int r, int c, int i) const noexcept {
    return static_cast<int>(ceil_div(i + block_of(r) - block_of(c), e_));
  }

  friend bool operator==(const HereditaryOrder& a, const HereditaryOrder& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

 private:
  int n_;
  int e_;
};

bool in_radical_power(const padic::MatrixApprox& x, int i, const HereditaryOrder& o);
/// Membership of an integral matrix known mod p^N, as a congruence mod p^N.
bool in_radical_power_mod(const ModMat& x, int i, const HereditaryOrder& o, std::int64_t p, int N);
/// Largest i with x in B^i. Throws on the zero matrix and PrecisionLoss when
/// the answer depends on entries that vanished.
int v_A(const padic::MatrixApprox& x, const HereditaryOrder& o);
/// v_A of p^scale * x for an exact nonzero integer matrix x.
int v_A_exact(const ModMat& x, int scale, const HereditaryOrder& o, std::int64_t p);

struct ApproximationReport {
  int i = 0;
  int lower_exp = 0;  // p^lower_exp M_n(O) in B^i
  int upper_exp = 0;  // B^i in p^upper_exp M_n(O)
  bool lower_holds = false;
  bool upper_holds = false;
  bool lower_strict = false;
  bool upper_strict = false;
  bool holds() const { return lower_holds && upper_holds; }
};

/// p^(ceil((i-1)/e)+1) M_n(O) in B^i in p^floor(i/e) M_n(O), checked on
/// elementary matrices times powers of p.
ApproximationReport check_approximation(const HereditaryOrder& o, int i, const padic::PrecisionCtx& ctx);

struct FiltrationReport {
  bool periodic = false;             // B^(i+e) = p B^i
  bool strictly_decreasing = false;  // B^(i+1) strictly inside B^i
};
FiltrationReport check_filtration(const HereditaryOrder& o, int i, const padic::PrecisionCtx& ctx);

/// Sufficient criterion for Q_p[beta] to be a field of degree n: the Newton
/// polygon of the characteristic polynomial has one slope s = t/eps in
/// lowest terms and p^(-eps s) beta^eps reduces to g^k, g irreducible,
/// eps deg g = n. When it fails with eps = 1 and a single residue root a,
/// beta - a p^s is tried instead (same field).
struct FieldCertificate {
  bool certified = false;
  int ramification = 0;
  int residue_degree = 0;
  int steps = 0;
  std::string reason;
};
FieldCertificate certify_field(const ModMat& unit, int scale, std::int64_t p);

class InductionDatum {
 public:
  enum class FieldPolicy { require, defer };

  /// beta = p^scale * unit with unit an exact integer matrix. Throws
  /// DatumInvalid on shape errors, on v_A(beta) >= 0, on a mismatch with a
  /// declared j, and (policy require) when the field check fails.
  static InductionDatum make(std::string id, std::int64_t p, const HereditaryOrder& order, const ModMat& unit,
                             int scale, std::optional<int> declared_j = std::nullopt,
                             FieldPolicy policy = FieldPolicy::require);

  const std::string& id() const noexcept { return id_; }
  std::int64_t p() const noexcept { return p_; }
  const HereditaryOrder& order() const noexcept { return order_; }
  int n() const noexcept { return order_.n(); }
  int e() const noexcept { return order_.e(); }
  const ModMat& unit() const noexcept { return unit_; }
  int scale() const noexcept { return scale_; }
  int j() const noexcept { return j_; }
  int depth() const noexcept { return j_; }
  Rational normalised_depth() const { return make_rational(j_, order_.e()); }
  const FieldCertificate& field() const noexcept { return field_; }

  padic::MatrixApprox beta(const padic::PrecisionCtx& ctx) const;
  /// ceil(j/e) + 1: theta factors through this level and every group in the
  /// construction contains 1 + p^N M_n(O).
  int group_precision() const { return static_cast<int>(ceil_div(j_, order_.e())) + 1; }
  /// e/n * v_p(det beta); throws DatumInvalid when not an integer.
  int v_L() const;

 private:
  InductionDatum(std::string id, std::int64_t p, HereditaryOrder order, ModMat unit, int scale)
      : id_(std::move(id)), p_(p), order_(order), unit_(unit), scale_(scale) {}

  std::string id_;
  std::int64_t p_;
  HereditaryOrder order_;
  ModMat unit_;
  int scale_;
  int j_ = 0;
  FieldCertificate field_;
};

bool is_minimal(const InductionDatum& d);

/// A Z_p-basis of O_L inside A, reduced mod p^digits. For minimal data the
/// basis is {y^u w^v} with y = p^j beta^e and w = p^b beta^a a uniformiser;
/// otherwise powers of p^ceil(j/e) beta.
struct OLBasis {
  std::vector<ModMat> basis;
  std::vector<ModMat> prime_ideal;  // basis of p_L
  ModMat uniformizer;
  int f = 0;
  bool from_uniformizer = false;
};
OLBasis ol_basis(const InductionDatum& d, int digits);

struct K0Result {
  int value = 0;
  bool saturated = false;  // S_cap nonempty: value is only a lower bound
  int cap = 0;
  std::int64_t explored = 0;
};

/// Largest k such that some x in A, x not in B + O_L, has beta x - x beta in
/// B^k, found by lifting the solution sets level by level.
K0Result k0(const InductionDatum& d, std::optional<int> cap = std::nullopt, std::int64_t budget = 50'000'000);

}  // namespace minvec::orders
