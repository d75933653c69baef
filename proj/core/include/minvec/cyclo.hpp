#pragma once

// Exact elements of Z[zeta_M], M = p^L, as coefficient vectors on the
// powers zeta^0 .. zeta^(M-1).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace minvec {

class Cyclo {
 public:
  Cyclo(std::int64_t p, int level);

  std::int64_t p() const noexcept { return p_; }
  int level() const noexcept { return level_; }
  std::int64_t order() const noexcept { return static_cast<std::int64_t>(c_.size()); }
  const std::vector<std::int64_t>& coefficients() const noexcept { return c_; }

  /// Adds k * zeta^t.
  void add_root(std::int64_t t, std::int64_t k = 1);
  Cyclo& operator+=(const Cyclo& o);
  Cyclo operator*(const Cyclo& o) const;
  Cyclo scaled(std::int64_t k) const;
  /// Complex conjugate: zeta^t -> zeta^(-t).
  Cyclo conj() const;
  /// Rewrites the vector so that every class r + (M/p) Z has a zero
  /// coefficient at its top representative; equal elements then have equal
  /// vectors.
  Cyclo canonical() const;
  /// The rational integer this element equals, if it is one.
  std::optional<std::int64_t> as_integer() const;
  bool is_zero() const;

  friend bool operator==(const Cyclo& a, const Cyclo& b);
  std::string str() const;

 private:
  std::int64_t p_;
  int level_;
  std::vector<std::int64_t> c_;
};

}  // namespace minvec
