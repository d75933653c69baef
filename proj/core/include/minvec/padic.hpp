#pragma once

// Truncated p-adic scalars and matrices over Q_p.
//
// A value is stored as p^val * unit (scalars) or p^scale * X (matrices)
// where the unit part is known modulo p^prec. Precision only ever shrinks:
// products keep the smaller relative precision, sums the smaller absolute
// precision, and extracting powers of p from a residue consumes digits.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "minvec/modmat.hpp"

namespace minvec::padic {

/// Prime and working precision. Every binary operation requires both
/// operands to share the same context.
class PrecisionCtx {
 public:
  PrecisionCtx(std::int64_t p, int N);

  std::int64_t p() const noexcept { return p_; }
  int N() const noexcept { return N_; }
  /// p^N.
  std::int64_t modulus() const noexcept { return modulus_; }
  std::int64_t pow(int k) const { return ipow(p_, k); }

  friend bool operator==(const PrecisionCtx& a, const PrecisionCtx& b) { return a.p_ == b.p_ && a.N_ == b.N_; }

 private:
  std::int64_t p_;
  int N_;
  std::int64_t modulus_;
};

void require_same_ctx(const PrecisionCtx& a, const PrecisionCtx& b);

/// A p-adic number p^val * unit with the unit known mod p^prec. Two extra
/// states: the exact zero (declared, never inferred) and a negligible value
/// O(p^val) that vanished at the available precision.
class ScaledResidue {
 public:
  static ScaledResidue exact_zero(const PrecisionCtx& ctx);
  static ScaledResidue negligible(int abs_precision, const PrecisionCtx& ctx);
  /// An exact integer, with full precision N on its unit part.
  static ScaledResidue from_integer(std::int64_t v, const PrecisionCtx& ctx);
  /// p^shift * r where r is an integer known modulo p^prec.
  static ScaledResidue from_residue(std::int64_t r, int shift, int prec, const PrecisionCtx& ctx);

  const PrecisionCtx& ctx() const noexcept { return ctx_; }
  bool is_exact_zero() const noexcept { return exact_zero_; }
  bool is_negligible() const noexcept { return negligible_; }
  bool is_unit_form() const noexcept { return !exact_zero_ && !negligible_; }
  /// Valuation (a lower bound for negligible values).
  int valuation() const;
  std::int64_t unit() const noexcept { return unit_; }
  int precision() const noexcept { return prec_; }

  ScaledResidue operator*(const ScaledResidue& o) const;
  ScaledResidue operator+(const ScaledResidue& o) const;
  ScaledResidue operator-() const;
  ScaledResidue operator-(const ScaledResidue& o) const { return *this + (-o); }
  ScaledResidue inverse() const;

  friend bool operator==(const ScaledResidue& a, const ScaledResidue& b);

  std::string str() const;

 private:
  explicit ScaledResidue(const PrecisionCtx& ctx) : ctx_(ctx) {}

  PrecisionCtx ctx_;
  bool exact_zero_ = false;
  bool negligible_ = false;
  int val_ = 0;
  std::int64_t unit_ = 0;
  int prec_ = 0;
};

/// An n x n matrix p^scale * X with X integral, X not divisible by p, and X
/// known modulo p^prec.
class MatrixApprox {
 public:
  /// Entries of `raw` are known mod p^N; extracts the common power of p.
  /// Throws PrecisionLoss when every entry vanishes mod p^N.
  static MatrixApprox normalize(const ModMat& raw, int scale, const PrecisionCtx& ctx);
  /// Entries of `raw` are exact integers; the extracted factor does not
  /// consume precision.
  static MatrixApprox from_exact(const ModMat& raw, int scale, const PrecisionCtx& ctx);
  /// p^scale * unit where `unit` is known mod p^prec and has a p-unit
  /// entry; throws PrecisionLoss otherwise.
  static MatrixApprox from_parts(const ModMat& unit, int scale, int prec, const PrecisionCtx& ctx);
  static MatrixApprox exact_zero(int n, const PrecisionCtx& ctx);
  static MatrixApprox identity(int n, const PrecisionCtx& ctx);

  const PrecisionCtx& ctx() const noexcept { return ctx_; }
  int dim() const noexcept { return n_; }
  bool is_exact_zero() const noexcept { return zero_; }
  int scale() const noexcept { return scale_; }
  int precision() const noexcept { return prec_; }
  /// Unit-part entries, reduced mod p^precision().
  const ModMat& entries() const noexcept { return entries_; }

  /// Valuation of entry (r, c) and whether it is exact (false means the
  /// entry vanished and the value is only a lower bound).
  std::pair<int, bool> entry_valuation(int r, int c) const;

  MatrixApprox operator*(const MatrixApprox& o) const;
  MatrixApprox operator+(const MatrixApprox& o) const;
  MatrixApprox operator-() const;
  MatrixApprox operator-(const MatrixApprox& o) const { return *this + (-o); }
  /// Multiplication by p^k (exact, no precision change).
  MatrixApprox shifted(int k) const;
  MatrixApprox pow(int k) const;

  /// The value as an integral matrix mod q = p^digits. Throws PrecisionLoss
  /// when the value is not integral or not known to that many digits.
  ModMat to_residues(int digits) const;

  friend bool operator==(const MatrixApprox& a, const MatrixApprox& b);

  std::string str() const;

 private:
  MatrixApprox(const PrecisionCtx& ctx, int n) : ctx_(ctx), n_(n) {}

  PrecisionCtx ctx_;
  int n_;
  bool zero_ = false;
  int scale_ = 0;
  int prec_ = 0;
  ModMat entries_;
};

/// Inverse through a Smith form; the relative precision drops by the largest
/// elementary divisor exponent of the unit part.
MatrixApprox mat_inv(const MatrixApprox& m);

/// (trace, determinant).
std::pair<ScaledResidue, ScaledResidue> trace_det(const MatrixApprox& m);

/// Coefficients c_1..c_n of det(xI - m) = x^n + c_1 x^(n-1) + ... + c_n.
std::vector<ScaledResidue> charpoly(const MatrixApprox& m);

}  // namespace minvec::padic
