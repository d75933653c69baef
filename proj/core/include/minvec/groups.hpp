#pragma once

// Finite quotients GL_n(Z/p^N), the subgroups U_A(i), U_L(1), H1, J1, J∩K,
// simple characters, the Heisenberg polarization of J1/H1, induced
// characters and intertwining.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minvec/cyclo.hpp"
#include "minvec/fp.hpp"
#include "minvec/modmat.hpp"
#include "minvec/orders.hpp"
#include "minvec/rational.hpp"

namespace minvec::groups {

/// The ambient group GL_n(Z/p^N) with its canonical element encoding.
class Arena {
 public:
  Arena(std::int64_t p, int N, int n);

  std::int64_t p() const noexcept { return p_; }
  int N() const noexcept { return N_; }
  int n() const noexcept { return n_; }
  std::int64_t q() const noexcept { return q_; }

  std::uint64_t key(const ModMat& x) const { return codec_.encode(x); }
  ModMat decode(std::uint64_t k) const { return codec_.decode(k); }
  ModMat mul(const ModMat& x, const ModMat& y) const { return minvec::mul(x, y, q_); }
  std::optional<ModMat> inv(const ModMat& x) const { return inverse(x, q_); }
  ModMat identity() const { return ModMat::identity(n_); }
  /// |GL_n(Z/p^N)|.
  BigInt gl_order() const;

  friend bool operator==(const Arena& a, const Arena& b) { return a.p_ == b.p_ && a.N_ == b.N_ && a.n_ == b.n_; }

 private:
  std::int64_t p_;
  int N_;
  int n_;
  std::int64_t q_;
  MatCodec codec_;
};

/// An explicitly enumerated subgroup, stored as the sorted list of element
/// keys.
class FiniteSubgroup {
 public:
  FiniteSubgroup(std::string name, Arena arena, std::vector<std::uint64_t> keys);

  const std::string& name() const noexcept { return name_; }
  const Arena& arena() const noexcept { return arena_; }
  std::size_t size() const noexcept { return keys_.size(); }
  const std::vector<std::uint64_t>& keys() const noexcept { return keys_; }
  ModMat element(std::size_t i) const { return arena_.decode(keys_[i]); }
  std::optional<std::size_t> index_of(std::uint64_t key) const;
  std::optional<std::size_t> index_of(const ModMat& x) const { return index_of(arena_.key(x)); }
  bool contains(const ModMat& x) const { return index_of(x).has_value(); }
  /// Renamed copy.
  FiniteSubgroup renamed(std::string name) const;

 private:
  std::string name_;
  Arena arena_;
  std::vector<std::uint64_t> keys_;
};
using SubgroupPtr = std::shared_ptr<const FiniteSubgroup>;

struct ClosureReport {
  bool closed = false;
  bool exhaustive = false;
  std::int64_t pairs_checked = 0;
  std::string witness;
};
/// Product and inverse closure, over all pairs when |G|^2 <= pair_budget and
/// over pair_budget seeded random pairs otherwise.
ClosureReport check_closure(const FiniteSubgroup& g, std::int64_t pair_budget = 4'000'000, std::uint64_t seed = 1);

/// U_A(i) = 1 + B^i mod p^N, i >= 1.
FiniteSubgroup filtration_subgroup(const Arena& arena, const orders::HereditaryOrder& o, int i, std::string name,
                                   std::int64_t budget);
/// 1 + (Z_p-span of `span`) mod p^N.
FiniteSubgroup one_plus_span(const Arena& arena, const std::vector<ModMat>& span, std::string name,
                             std::int64_t budget);
/// Invertible elements of the Z_p-span of `span`, mod p^N.
FiniteSubgroup units_of_span(const Arena& arena, const std::vector<ModMat>& span, std::string name,
                             std::int64_t budget);
/// a * normal, for `normal` normalised by `a`.
FiniteSubgroup product_with_normal(const FiniteSubgroup& a, const FiniteSubgroup& normal, std::string name);

/// A character with values e(t / p^level), stored as exponents t aligned
/// with the domain's keys.
struct GroupCharacter {
  std::string name;
  SubgroupPtr domain;
  int level = 1;
  std::vector<std::int64_t> values;

  std::int64_t modulus() const;
  std::int64_t at(const ModMat& x) const;
  std::int64_t at_index(std::size_t i) const { return values[i]; }
  /// Same character with exponents rescaled to a finer level.
  GroupCharacter at_level(int new_level) const;
};

struct ExtensionResult {
  std::vector<std::int64_t> values;  // lexicographically smallest extension
  std::optional<std::vector<std::int64_t>> alternative;  // next smallest
  std::int64_t count = 0;
};
/// All characters of g (values at `level`) restricting to s_values on s,
/// found by assigning exponents to generators of g outside s and checking
/// consistency on every multiplication edge. Throws ConstructionFailure when
/// none exists.
ExtensionResult extend_character(const FiniteSubgroup& g, const FiniteSubgroup& s,
                                 const std::vector<std::int64_t>& s_values, int level);

/// Greedy generating set, scanning candidates in key order and seeded with
/// `initial` (which must lie in g).
std::vector<ModMat> greedy_generators(const FiniteSubgroup& g, const std::vector<ModMat>& initial = {});

struct SubgroupFamily {
  explicit SubgroupFamily(Arena a) : arena(std::move(a)) {}

  Arena arena;
  int h_index = 0;  // floor(j/2) + 1
  int j_index = 0;  // floor((j+1)/2)
  orders::OLBasis ol;
  SubgroupPtr ua_h;    // U_A(floor(j/2)+1)
  SubgroupPtr ua_j;    // U_A(floor((j+1)/2))
  SubgroupPtr ua_top;  // U_A(j+1)
  SubgroupPtr ua_one;  // U_A(1)
  SubgroupPtr ul1;     // U_L(1)
  SubgroupPtr h1;
  SubgroupPtr j1;
  SubgroupPtr jcapk;   // O_L^* U_A(floor((j+1)/2))
};
/// Requires a minimal datum. N defaults to the datum's group precision.
SubgroupFamily build_subgroups(const orders::InductionDatum& d, std::optional<int> N = std::nullopt,
                               std::int64_t budget = 20'000'000);

/// psi(Tr(beta (x - 1))) as an exponent at level 1 - scale(beta).
std::int64_t theta_formula(const orders::InductionDatum& d, const ModMat& x, std::int64_t q);
int theta_level(const orders::InductionDatum& d, int N);

struct SimpleCharacter {
  GroupCharacter theta;
  std::optional<GroupCharacter> alternative;
  std::int64_t extension_count = 0;
};
SimpleCharacter simple_character(const orders::InductionDatum& d, const SubgroupFamily& fam);

struct PolarizationData {
  std::vector<ModMat> reps;                        // lifts of a basis of J1/H1
  std::vector<fp::Vec> pairing;                    // psi(Tr(beta(uv - vu))) over F_p
  std::vector<std::vector<std::int64_t>> raw_form; // psi(Tr(beta u v)) exponents at the theta level
  std::vector<fp::Vec> commutator_form;            // theta([x, y]) over F_p
  bool alternating = false;
  bool nondegenerate = false;
  std::vector<fp::Vec> isotropic;
  SubgroupPtr b1;
  ClosureReport b1_closure;
  std::size_t dim() const { return reps.size(); }
};
/// Throws DatumInvalid when J1 = H1 (odd j): then B1 = H1.
PolarizationData heisenberg(const orders::InductionDatum& d, const SubgroupFamily& fam, const GroupCharacter& theta);

struct HeisenbergExtension {
  GroupCharacter theta_tilde;
  std::optional<GroupCharacter> alternative;
  std::int64_t extension_count = 0;
  std::vector<Cyclo> eta;  // induced character on J1, aligned with J1 keys
  std::int64_t dim = 0;
  std::int64_t expected_dim = 0;  // sqrt([J1 : H1])
  std::int64_t inner_eta_eta = 0;
  bool restriction_is_multiple = false;  // eta|H1 = dim * theta
  std::int64_t multiplicity_theta = 0;   // <eta|H1, theta>
  std::optional<std::int64_t> inner_eta_alt;  // <eta, Ind theta_tilde'>
};
HeisenbergExtension extend_and_induce(const SubgroupFamily& fam, const GroupCharacter& theta,
                                      const PolarizationData& pol);

/// Induced character of a character of a subgroup, evaluated on the whole
/// group g (coset formula).
std::vector<Cyclo> induce(const FiniteSubgroup& g, const GroupCharacter& chi);
/// <a, b> over g, as an exact integer (throws if not integral).
std::int64_t inner_product(const FiniteSubgroup& g, const std::vector<Cyclo>& a, const std::vector<Cyclo>& b);

struct IntertwineResult {
  bool intertwines = false;
  std::int64_t checked = 0;  // elements of H1 (mod p^(N+v)) conjugated into H1
  std::optional<ModMat> witness;
};
/// One-dimensional intertwining: theta(x) = theta(g x g^-1) on H1 ∩ g^-1 H1 g,
/// for an integral g with det g != 0.
IntertwineResult intertwines(const ModMat& g, const GroupCharacter& theta);

/// Canonical dumps: header, one element per line (row-major residues).
std::string dump_subgroup(const FiniteSubgroup& g);
std::string dump_character(const GroupCharacter& chi);

}  // namespace minvec::groups
