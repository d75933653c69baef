#pragma once

// Dense small matrices over Z/q, the element type of every finite quotient
// GL_n(Z/p^N) handled by the library.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace minvec {

inline constexpr int kMaxDim = 6;

std::int64_t ipow(std::int64_t base, int exp);
bool is_prime(std::int64_t v);
/// p-adic valuation of a nonzero integer.
int vp(std::int64_t value, std::int64_t p);
/// Nonnegative residue of a mod q.
constexpr std::int64_t mod(std::int64_t a, std::int64_t q) {
  std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}
std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t q);
/// Inverse of a unit modulo q; throws std::domain_error otherwise.
std::int64_t invmod(std::int64_t a, std::int64_t q);

/// n x n matrix of integers, row-major, n <= kMaxDim. Entries are plain
/// integers; the modulus is supplied by the caller of each operation.
struct ModMat {
  int n = 0;
  std::array<std::int64_t, kMaxDim * kMaxDim> a{};

  ModMat() = default;
  explicit ModMat(int dim);

  std::int64_t& operator()(int r, int c) { return a[static_cast<std::size_t>(r * n + c)]; }
  std::int64_t operator()(int r, int c) const { return a[static_cast<std::size_t>(r * n + c)]; }

  static ModMat identity(int dim);
  /// Rows given as nested initializer data (exact integers).
  static ModMat from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  friend bool operator==(const ModMat& x, const ModMat& y) {
    if (x.n != y.n) return false;
    for (int i = 0; i < x.n * x.n; ++i)
      if (x.a[static_cast<std::size_t>(i)] != y.a[static_cast<std::size_t>(i)]) return false;
    return true;
  }
};

ModMat reduce(const ModMat& x, std::int64_t q);
ModMat add(const ModMat& x, const ModMat& y, std::int64_t q);
ModMat sub(const ModMat& x, const ModMat& y, std::int64_t q);
ModMat mul(const ModMat& x, const ModMat& y, std::int64_t q);
ModMat scale(const ModMat& x, std::int64_t s, std::int64_t q);
/// Exact integer product (no reduction); caller guarantees no overflow.
ModMat mul_exact(const ModMat& x, const ModMat& y);
std::int64_t trace(const ModMat& x, std::int64_t q);

/// Characteristic polynomial det(xI - X) mod q by the division-free
/// Berkowitz recurrence. Returns coefficients c[0..n] with c[0] = 1 and
/// c[k] the coefficient of x^(n-k).
std::vector<std::int64_t> charpoly(const ModMat& x, std::int64_t q);
std::int64_t det(const ModMat& x, std::int64_t q);
/// Adjugate matrix mod q (Cayley-Hamilton on the Berkowitz coefficients).
ModMat adjugate(const ModMat& x, std::int64_t q);
/// Inverse mod q, or nullopt when det is not a unit mod q.
std::optional<ModMat> inverse(const ModMat& x, std::int64_t q);

/// True iff every entry is divisible by d (entries taken as integers).
bool all_divisible(const ModMat& x, std::int64_t d);

std::string to_string(const ModMat& x);

/// Bijective encoding of matrices over Z/q into a 64-bit key (row-major,
/// mixed radix q, first entry least significant). Keys order matrices
/// canonically.
class MatCodec {
 public:
  MatCodec(int n, std::int64_t q);

  int dim() const noexcept { return n_; }
  std::int64_t modulus() const noexcept { return q_; }
  std::uint64_t encode(const ModMat& x) const;
  ModMat decode(std::uint64_t key) const;

 private:
  int n_;
  std::int64_t q_;
};

}  // namespace minvec
