#include "minvec/padic.hpp"

#include <algorithm>
#include <sstream>

#include "minvec/errors.hpp"

namespace minvec::padic {

PrecisionCtx::PrecisionCtx(std::int64_t p, int N) : p_(p), N_(N), modulus_(0) {
  if (!is_prime(p)) throw DatumInvalid("precision context: p = " + std::to_string(p) + " is not prime");
  if (N < 1) throw DatumInvalid("precision context: N must be >= 1");
  long double m = 1;
  for (int i = 0; i < N; ++i) m *= static_cast<long double>(p);
  if (m >= 2147483648.0L) throw DatumInvalid("precision context: p^N must stay below 2^31");
  modulus_ = ipow(p, N);
}

void require_same_ctx(const PrecisionCtx& a, const PrecisionCtx& b) {
  if (!(a == b)) throw std::invalid_argument("p-adic operands carry different precision contexts");
}

// ---------------------------------------------------------------------------
// ScaledResidue

ScaledResidue ScaledResidue::exact_zero(const PrecisionCtx& ctx) {
  ScaledResidue r(ctx);
  r.exact_zero_ = true;
  return r;
}

ScaledResidue ScaledResidue::negligible(int abs_precision, const PrecisionCtx& ctx) {
  ScaledResidue r(ctx);
  r.negligible_ = true;
  r.val_ = abs_precision;
  return r;
}

ScaledResidue ScaledResidue::from_integer(std::int64_t v, const PrecisionCtx& ctx) {
  if (v == 0) return exact_zero(ctx);
  const int k = vp(v, ctx.p());
  std::int64_t u = v;
  for (int i = 0; i < k; ++i) u /= ctx.p();
  ScaledResidue r(ctx);
  r.val_ = k;
  r.prec_ = ctx.N();
  r.unit_ = mod(u, ctx.modulus());
  return r;
}

ScaledResidue ScaledResidue::from_residue(std::int64_t residue, int shift, int prec, const PrecisionCtx& ctx) {
  const std::int64_t q = ctx.pow(prec);
  residue = mod(residue, q);
  if (residue == 0) return negligible(shift + prec, ctx);
  const int k = vp(residue, ctx.p());
  ScaledResidue r(ctx);
  r.val_ = shift + k;
  r.prec_ = prec - k;
  r.unit_ = mod(residue / ctx.pow(k), ctx.pow(r.prec_));
  return r;
}

int ScaledResidue::valuation() const {
  if (exact_zero_) throw PrecisionLoss("valuation of the exact zero is infinite");
  return val_;
}

ScaledResidue ScaledResidue::operator*(const ScaledResidue& o) const {
  require_same_ctx(ctx_, o.ctx_);
  if (exact_zero_ || o.exact_zero_) return exact_zero(ctx_);
  if (negligible_ || o.negligible_) {
    // O(p^a) * (p^b u) = O(p^(a+b)); O(p^a) * O(p^b) = O(p^(a+b)).
    return negligible(val_ + o.val_, ctx_);
  }
  const int prec = std::min(prec_, o.prec_);
  ScaledResidue r(ctx_);
  r.val_ = val_ + o.val_;
  r.prec_ = prec;
  r.unit_ = mulmod(unit_, o.unit_, ctx_.pow(prec));
  return r;
}

ScaledResidue ScaledResidue::operator+(const ScaledResidue& o) const {
  require_same_ctx(ctx_, o.ctx_);
  if (exact_zero_) return o;
  if (o.exact_zero_) return *this;
  const int abs_a = negligible_ ? val_ : val_ + prec_;
  const int abs_b = o.negligible_ ? o.val_ : o.val_ + o.prec_;
  const int abs = std::min(abs_a, abs_b);
  if (negligible_ && o.negligible_) return negligible(abs, ctx_);
  if (negligible_ || o.negligible_) {
    const ScaledResidue& big = negligible_ ? o : *this;
    if (abs <= big.val_) return negligible(abs, ctx_);
    return from_residue(big.unit_, big.val_, abs - big.val_, ctx_);
  }
  const int low = std::min(val_, o.val_);
  const int digits = abs - low;
  if (digits <= 0) return negligible(abs, ctx_);
  const std::int64_t q = ctx_.pow(digits);
  const std::int64_t a = mulmod(unit_, ctx_.pow(val_ - low), q);
  const std::int64_t b = mulmod(o.unit_, ctx_.pow(o.val_ - low), q);
  return from_residue(a + b, low, digits, ctx_);
}

ScaledResidue ScaledResidue::operator-() const {
  ScaledResidue r = *this;
  if (is_unit_form()) r.unit_ = mod(-unit_, ctx_.pow(prec_));
  return r;
}

ScaledResidue ScaledResidue::inverse() const {
  if (!is_unit_form()) throw PrecisionLoss("cannot invert a zero or negligible p-adic value");
  ScaledResidue r = *this;
  r.val_ = -val_;
  r.unit_ = invmod(unit_, ctx_.pow(prec_));
  return r;
}

bool operator==(const ScaledResidue& a, const ScaledResidue& b) {
  if (!(a.ctx_ == b.ctx_)) return false;
  if (a.exact_zero_ || b.exact_zero_) return a.exact_zero_ == b.exact_zero_;
  if (a.negligible_ != b.negligible_) return false;
  if (a.negligible_) return a.val_ == b.val_;
  return a.val_ == b.val_ && a.prec_ == b.prec_ && a.unit_ == b.unit_;
}

std::string ScaledResidue::str() const {
  std::ostringstream os;
  if (exact_zero_)
    os << "0";
  else if (negligible_)
    os << "O(" << ctx_.p() << "^" << val_ << ")";
  else
    os << ctx_.p() << "^" << val_ << "*" << unit_ << " (mod " << ctx_.p() << "^" << prec_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// MatrixApprox

namespace {

int min_entry_valuation(const ModMat& m, std::int64_t p) {
  int best = -1;
  for (int i = 0; i < m.n * m.n; ++i) {
    const std::int64_t v = m.a[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    const int k = vp(v, p);
    if (best < 0 || k < best) best = k;
  }
  return best;
}

ModMat divide_entries(const ModMat& m, std::int64_t d) {
  ModMat r = m;
  for (int i = 0; i < m.n * m.n; ++i) r.a[static_cast<std::size_t>(i)] /= d;
  return r;
}

}  // namespace

MatrixApprox MatrixApprox::normalize(const ModMat& raw, int scale, const PrecisionCtx& ctx) {
  const ModMat red = reduce(raw, ctx.modulus());
  const int k = min_entry_valuation(red, ctx.p());
  if (k < 0)
    throw PrecisionLoss("normalize: all entries vanish mod " + std::to_string(ctx.p()) + "^" +
                        std::to_string(ctx.N()) + " but the value was not declared zero");
  MatrixApprox m(ctx, raw.n);
  m.scale_ = scale + k;
  m.prec_ = ctx.N() - k;
  m.entries_ = reduce(divide_entries(red, ctx.pow(k)), ctx.pow(m.prec_));
  return m;
}

MatrixApprox MatrixApprox::from_exact(const ModMat& raw, int scale, const PrecisionCtx& ctx) {
  const int k = min_entry_valuation(raw, ctx.p());
  if (k < 0) return exact_zero(raw.n, ctx);
  MatrixApprox m(ctx, raw.n);
  m.scale_ = scale + k;
  m.prec_ = ctx.N();
  m.entries_ = reduce(divide_entries(raw, ctx.pow(k)), ctx.modulus());
  return m;
}

MatrixApprox MatrixApprox::from_parts(const ModMat& unit, int scale, int prec, const PrecisionCtx& ctx) {
  if (prec < 1) throw PrecisionLoss("from_parts: no significant digits");
  MatrixApprox m(ctx, unit.n);
  m.scale_ = scale;
  m.prec_ = prec;
  m.entries_ = reduce(unit, ctx.pow(prec));
  const int k = min_entry_valuation(m.entries_, ctx.p());
  if (k != 0) throw PrecisionLoss("from_parts: unit part has no p-unit entry");
  return m;
}

MatrixApprox MatrixApprox::exact_zero(int n, const PrecisionCtx& ctx) {
  MatrixApprox m(ctx, n);
  m.zero_ = true;
  m.entries_ = ModMat(n);
  return m;
}

MatrixApprox MatrixApprox::identity(int n, const PrecisionCtx& ctx) {
  return from_exact(ModMat::identity(n), 0, ctx);
}

std::pair<int, bool> MatrixApprox::entry_valuation(int r, int c) const {
  if (zero_) return {INT32_MAX, false};
  const std::int64_t v = entries_(r, c);
  if (v == 0) return {scale_ + prec_, false};
  return {scale_ + vp(v, ctx_.p()), true};
}

MatrixApprox MatrixApprox::operator*(const MatrixApprox& o) const {
  require_same_ctx(ctx_, o.ctx_);
  if (zero_ || o.zero_) return exact_zero(n_, ctx_);
  const int prec = std::min(prec_, o.prec_);
  const std::int64_t q = ctx_.pow(prec);
  const ModMat prod = mul(entries_, o.entries_, q);
  const int k = min_entry_valuation(prod, ctx_.p());
  if (k < 0) throw PrecisionLoss("matrix product vanishes at the available precision");
  MatrixApprox m(ctx_, n_);
  m.scale_ = scale_ + o.scale_ + k;
  m.prec_ = prec - k;
  m.entries_ = reduce(divide_entries(prod, ctx_.pow(k)), ctx_.pow(m.prec_));
  return m;
}

MatrixApprox MatrixApprox::operator+(const MatrixApprox& o) const {
  require_same_ctx(ctx_, o.ctx_);
  if (zero_) return o;
  if (o.zero_) return *this;
  const int low = std::min(scale_, o.scale_);
  const int abs = std::min(scale_ + prec_, o.scale_ + o.prec_);
  const int digits = abs - low;
  if (digits <= 0) throw PrecisionLoss("matrix sum: no significant digits left");
  const std::int64_t q = ctx_.pow(digits);
  const ModMat a = minvec::scale(entries_, ctx_.pow(scale_ - low), q);
  const ModMat b = minvec::scale(o.entries_, ctx_.pow(o.scale_ - low), q);
  const ModMat s = add(a, b, q);
  const int k = min_entry_valuation(s, ctx_.p());
  if (k < 0) throw PrecisionLoss("matrix sum vanishes at the available precision");
  MatrixApprox m(ctx_, n_);
  m.scale_ = low + k;
  m.prec_ = digits - k;
  m.entries_ = reduce(divide_entries(s, ctx_.pow(k)), ctx_.pow(m.prec_));
  return m;
}

MatrixApprox MatrixApprox::operator-() const {
  if (zero_) return *this;
  MatrixApprox m = *this;
  m.entries_ = minvec::scale(entries_, -1, ctx_.pow(prec_));
  return m;
}

MatrixApprox MatrixApprox::shifted(int k) const {
  MatrixApprox m = *this;
  if (!zero_) m.scale_ += k;
  return m;
}

MatrixApprox MatrixApprox::pow(int k) const {
  if (k < 0) return mat_inv(*this).pow(-k);
  MatrixApprox acc = identity(n_, ctx_);
  for (int i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

ModMat MatrixApprox::to_residues(int digits) const {
  const std::int64_t q = ctx_.pow(digits);
  if (zero_) return ModMat(n_);
  if (scale_ < 0) throw PrecisionLoss("to_residues: value is not integral (scale " + std::to_string(scale_) + ")");
  if (scale_ >= digits) return ModMat(n_);
  if (scale_ + prec_ < digits)
    throw PrecisionLoss("to_residues: only " + std::to_string(scale_ + prec_) + " digits known, " +
                        std::to_string(digits) + " requested");
  return minvec::scale(entries_, ctx_.pow(scale_), q);
}

bool operator==(const MatrixApprox& a, const MatrixApprox& b) {
  if (!(a.ctx_ == b.ctx_) || a.n_ != b.n_) return false;
  if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
  return a.scale_ == b.scale_ && a.prec_ == b.prec_ && a.entries_ == b.entries_;
}

std::string MatrixApprox::str() const {
  if (zero_) return "0";
  std::ostringstream os;
  os << ctx_.p() << "^" << scale_ << "*" << to_string(entries_) << " (mod " << ctx_.p() << "^" << prec_ << ")";
  return os.str();
}

MatrixApprox mat_inv(const MatrixApprox& m) {
  if (m.is_exact_zero()) throw PrecisionLoss("mat_inv: zero matrix");
  const auto& ctx = m.ctx();
  const std::int64_t p = ctx.p();
  const int prec = m.precision();
  const std::int64_t q = ctx.pow(prec);
  const int n = m.dim();
  // L X R = diag(p^d_t u_t) by unimodular row and column operations, so
  // X^-1 = R diag(p^-d_t u_t^-1) L loses only max d_t digits.
  ModMat a = reduce(m.entries(), q);
  ModMat L = ModMat::identity(n);
  ModMat R = ModMat::identity(n);
  std::vector<int> d(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    int br = -1, bc = -1, bv = prec;
    for (int r = t; r < n; ++r)
      for (int c = t; c < n; ++c)
        if (a(r, c) != 0) {
          const int v = vp(a(r, c), p);
          if (v < bv) bv = v, br = r, bc = c;
        }
    if (br < 0) throw PrecisionLoss("mat_inv: determinant vanishes at the available precision");
    for (int c = 0; c < n; ++c) {
      std::swap(a(t, c), a(br, c));
      std::swap(L(t, c), L(br, c));
    }
    for (int r = 0; r < n; ++r) {
      std::swap(a(r, t), a(r, bc));
      std::swap(R(r, t), R(r, bc));
    }
    const std::int64_t pd = ctx.pow(bv);
    const std::int64_t uinv = invmod(a(t, t) / pd, q);
    for (int r = t + 1; r < n; ++r) {
      const std::int64_t f = mulmod(a(r, t) / pd, uinv, q);
      if (f == 0) continue;
      for (int c = 0; c < n; ++c) {
        a(r, c) = mod(a(r, c) - mulmod(f, a(t, c), q), q);
        L(r, c) = mod(L(r, c) - mulmod(f, L(t, c), q), q);
      }
    }
    for (int c = t + 1; c < n; ++c) {
      const std::int64_t g = mulmod(a(t, c) / pd, uinv, q);
      if (g == 0) continue;
      for (int r = 0; r < n; ++r) {
        a(r, c) = mod(a(r, c) - mulmod(g, a(r, t), q), q);
        R(r, c) = mod(R(r, c) - mulmod(g, R(r, t), q), q);
      }
    }
    d[static_cast<std::size_t>(t)] = bv;
  }
  const int dmax = *std::max_element(d.begin(), d.end());
  ModMat diag(n);
  for (int t = 0; t < n; ++t) {
    const int dt = d[static_cast<std::size_t>(t)];
    diag(t, t) = mulmod(ctx.pow(dmax - dt), invmod(a(t, t) / ctx.pow(dt), q), q);
  }
  const int rel = prec - dmax;
  const std::int64_t qr = ctx.pow(rel);
  const ModMat inv = reduce(mul(mul(R, diag, q), L, q), qr);
  return MatrixApprox::from_parts(inv, -m.scale() - dmax, rel, ctx);
}

std::pair<ScaledResidue, ScaledResidue> trace_det(const MatrixApprox& m) {
  const auto& ctx = m.ctx();
  if (m.is_exact_zero()) return {ScaledResidue::exact_zero(ctx), ScaledResidue::exact_zero(ctx)};
  const int prec = m.precision();
  const std::int64_t q = ctx.pow(prec);
  const ScaledResidue tr = ScaledResidue::from_residue(trace(m.entries(), q), m.scale(), prec, ctx);
  const ScaledResidue dt = ScaledResidue::from_residue(det(m.entries(), q), m.dim() * m.scale(), prec, ctx);
  return {tr, dt};
}

std::vector<ScaledResidue> charpoly(const MatrixApprox& m) {
  const auto& ctx = m.ctx();
  std::vector<ScaledResidue> out;
  if (m.is_exact_zero()) {
    out.assign(static_cast<std::size_t>(m.dim()), ScaledResidue::exact_zero(ctx));
    return out;
  }
  const int prec = m.precision();
  const auto cp = minvec::charpoly(m.entries(), ctx.pow(prec));
  for (int k = 1; k <= m.dim(); ++k)
    out.push_back(ScaledResidue::from_residue(cp[static_cast<std::size_t>(k)], k * m.scale(), prec, ctx));
  return out;
}

}  // namespace minvec::padic
