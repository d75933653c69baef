#pragma once

// Hecke-return counting: integer matrices of fixed determinant, bounded
// entries and prescribed residue mod p^c in a torus; commutativity, the
// partition bound on the ideal map and the fiber it leaves; exponent
// bookkeeping for the final bound.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "minvec/modmat.hpp"
#include "minvec/rational.hpp"

namespace minvec::counting {

/// Residues mod p^c. Either the group generated by explicit matrices or the
/// units of a Z/p^c-span given by a basis in pivot form (each basis element
/// has an entry equal to 1 where all the others vanish).
class Torus {
 public:
  static Torus everything(int n);
  static Torus generated(int n, std::int64_t p, int c, const std::vector<ModMat>& gens,
                         std::int64_t budget = 5'000'000);
  static Torus span(int n, std::int64_t p, int c, const std::vector<ModMat>& basis);

  std::int64_t modulus() const noexcept { return modulus_; }
  bool contains(const ModMat& x) const;
  /// Row r of some element of the torus reduces to `row`.
  bool row_allowed(int r, const std::int64_t* row) const;
  bool abelian() const noexcept { return abelian_; }
  /// Number of residues (nullopt for span tori, which are not listed).
  std::optional<std::int64_t> size() const;
  std::string kind() const;

 private:
  int n_ = 0;
  std::int64_t p_ = 1;
  std::int64_t modulus_ = 1;
  int kind_ = 0;  // 0 everything, 1 generated, 2 span
  bool abelian_ = true;
  std::unordered_set<std::uint64_t> elements_;
  std::vector<std::unordered_set<std::uint64_t>> rows_;
  std::vector<ModMat> basis_;
  std::vector<int> pivots_;
};

struct LatticeQuery {
  std::string id;
  int n = 2;
  std::int64_t m = 1;
  std::int64_t B = 1;
  std::int64_t p = 3;
  int frak_c = 0;
  std::vector<ModMat> torus_gens;
  std::vector<ModMat> torus_span;
};
/// Throws DatumInvalid on gcd(m, p) != 1, m <= 0, B < 0 or bad torus data.
void validate(const LatticeQuery& q);
Torus make_torus(const LatticeQuery& q);

struct EnumerateOptions {
  std::int64_t budget = 500'000'000;  // search nodes
  std::vector<int> row_order;         // filling order of rows, default 0..n-1
};

struct AbelianVerdict {
  bool abelian = true;
  std::int64_t pairs_checked = 0;
  std::optional<std::pair<ModMat, ModMat>> witness;
};

struct Regime {
  BigInt rigorous_bound;  // n^3 A^2 B^2 + m^2, A = (n-1)! B^(n-1)
  bool rigorous = false;  // p^c > rigorous_bound
  BigInt proxy;           // n m^2 B^4
  bool proxy_holds = false;
  BigInt p_power;
};

struct CountReport {
  LatticeQuery query;
  std::string torus_kind;
  std::vector<ModMat> matrices;  // lexicographic on row-major entries
  std::int64_t nodes = 0;
  AbelianVerdict abelian;
  Regime regime;
  std::vector<std::pair<std::int64_t, int>> factorization;  // m = prod l^a
  BigInt tau_bound;
  std::int64_t fiber_classes = 0;
  std::int64_t max_fiber = 0;
  bool classes_within_tau = false;
  bool count_within_bound = false;  // |S| <= max_fiber * tau_bound
};

std::vector<ModMat> enumerate_S(const LatticeQuery& q, const Torus& t, const EnumerateOptions& opt = {},
                                std::int64_t* nodes = nullptr);
/// Exhaustive (2B+1)^(n^2) scan; the oracle for enumerate_S.
std::vector<ModMat> brute_force_S(const LatticeQuery& q, const Torus& t);
AbelianVerdict abelian_check(const std::vector<ModMat>& s);
Regime regime(const LatticeQuery& q);
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t m);
BigInt partition_count(std::int64_t a, int n);
/// Ordered n-tuples of non-negative integers summing to a, by enumeration.
std::int64_t partition_count_oracle(std::int64_t a, int n);
BigInt tau_bound(const std::vector<std::pair<std::int64_t, int>>& factorization, int n);
/// Classes of gamma1 ~ gamma2 iff gamma1^-1 gamma2 is integral (adj(g1) g2 = 0 mod m),
/// closed transitively. Returns the class sizes.
std::vector<std::int64_t> fiber_classes(const std::vector<ModMat>& s, std::int64_t m);
CountReport count(const LatticeQuery& q, const EnumerateOptions& opt = {});

struct ExponentReport {
  int n = 0;
  Rational closed_form;      // (n-1)/4 - 1/(8n^3)
  Rational dpi_exponent;     // -(n-1)/2 in units of C
  Rational l0_exponent;      // 1/(4n^3) in units of C, from L0 = p^(frak_c/(2n^2)), frak_c = c/2
  Rational assembled;        // -(dpi_exponent + l0_exponent)/2
  Rational penultimate;      // c(n^2-n)/4 - frak_c/(4n^2) at frak_c = c/2, in units of C = p^(nc)
  Rational flipped;          // -(dpi_exponent - l0_exponent)/2, the other sign of the L0 term
  bool assembled_matches = false;
  bool penultimate_matches = false;
  bool flipped_matches = false;
  std::string l0_symbolic;   // "frak_c/(2n^2)"
};
/// Throws std::invalid_argument for n < 2.
ExponentReport amplifier_exponent(int n);

}  // namespace minvec::counting
