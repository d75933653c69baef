#pragma once

// Polynomials and linear algebra over the prime field F_p.

#include <cstdint>
#include <optional>
#include <vector>

namespace minvec::fp {

/// Coefficients, constant term first, reduced mod p with no trailing zeros
/// (the zero polynomial is empty).
using Poly = std::vector<std::int64_t>;
using Vec = std::vector<std::int64_t>;

Poly trim(Poly a, std::int64_t p);
Poly mul(const Poly& a, const Poly& b, std::int64_t p);
/// Remainder of a modulo b (b nonzero).
Poly rem(const Poly& a, const Poly& b, std::int64_t p);
Poly pow(const Poly& a, int k, std::int64_t p);
int degree(const Poly& a);

/// Monic polynomial of degree d with index-th coefficient vector
/// (mixed radix p, constant term least significant).
Poly monic_from_index(int d, std::int64_t index, std::int64_t p);
bool is_irreducible(const Poly& f, std::int64_t p);

/// If f = g^k with g monic irreducible, returns (g, k).
std::optional<std::pair<Poly, int>> irreducible_power(const Poly& f, std::int64_t p);

/// Row echelon helpers; all vectors have the same length.
int rank(std::vector<Vec> rows, std::int64_t p);
bool in_span(const std::vector<Vec>& rows, const Vec& v, std::int64_t p);

struct SymplecticResult {
  bool alternating = false;
  bool nondegenerate = false;
  /// Basis of a maximal isotropic subspace (coordinates in F_p^d).
  std::vector<Vec> isotropic;
};

/// Symplectic Gram-Schmidt on the form with Gram matrix `gram` (d x d).
SymplecticResult symplectic_reduce(const std::vector<Vec>& gram, std::int64_t p);

}  // namespace minvec::fp
